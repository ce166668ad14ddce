#!/usr/bin/env python3
"""
切断された多圏（multicategory）、置換圏の k-線形写像、関手の多圏 M^E と押し出し F_*

Σ_k の元は 0 始まりの配列表示のタプル π で表し、列への作用は (π·L)[i] = L[π[i]]。
σ* は右作用で、k-射 φ の入力列を σ·inputs(φ) に並べ替える。
k-射の集合は出力アリティが cap を超える Γ を OutsideTruncation として扱う。
"""

import logging
from dataclasses import dataclass, field
from itertools import islice, product as cartesian
from typing import Any, Callable, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import SymmetricGroup

from catforge.biperm import _holds
from catforge.bounds import SIGMA_ARITY_LIMIT, MultiBounds, sample_product, spread
from catforge.errors import BoundsError, ComposabilityError, OutsideTruncation, StructuralError
from catforge.fincat import Id, compose_path, format_id
from catforge.monostruct import (
    MonoidalMap,
    MonoidalStructure,
    nested_permutation,
    tensor_all,
    tensor_all_morphisms,
)
from catforge.report import ValidationReport

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


# --- Σ_k ---------------------------------------------------------------------


def identity_perm(k: int) -> Perm:
    return tuple(range(k))


def _sympy(p: Perm) -> Permutation:
    return Permutation(list(p))


def perm_compose(a: Perm, b: Perm) -> Perm:
    """a∘b（i ↦ a[b[i]]）"""
    if len(a) != len(b):
        raise StructuralError(f"cannot compose permutations of sizes {len(a)} and {len(b)}")
    if len(a) <= 1:
        return tuple(a)
    # sympy の積 p*q は p を先に適用する
    return tuple((_sympy(b) * _sympy(a)).array_form)


def perm_inverse(a: Perm) -> Perm:
    if len(a) <= 1:
        return tuple(a)
    return tuple((~_sympy(a)).array_form)


def all_perms(k: int) -> List[Perm]:
    """Σ_k の全元（配列表示の辞書順）"""
    if k <= 1:
        return [identity_perm(k)]
    return sorted(tuple(p.array_form) for p in SymmetricGroup(k).generate())


def apply_perm(p: Perm, seq: Sequence) -> Tuple:
    """π·L"""
    if len(p) != len(seq):
        raise StructuralError(f"permutation of size {len(p)} applied to {len(seq)} entries")
    return tuple(seq[i] for i in p)


def unapply_perm(p: Perm, seq: Sequence) -> Tuple:
    """π·L = seq となる L"""
    result = [None] * len(seq)
    for i, j in enumerate(p):
        result[j] = seq[i]
    return tuple(result)


def perm_sum(perms: Sequence[Perm]) -> Perm:
    """ブロック対角和 τ₁⊕⋯⊕τ_k"""
    result: List[int] = []
    for tau in perms:
        start = len(result)
        result.extend(start + t for t in tau)
    return tuple(result)


def block_permutation(sigma: Perm, lengths: Sequence[int]) -> Perm:
    """
    ブロック置換 σ_⟨j₁,…,j_k⟩

    Args:
        sigma: ブロックの並べ替え
        lengths: 元のブロックの長さ j₁, …, j_k

    Returns:
        σ_⟨j⟩·(B₁…B_k) = (B_σ(1)…B_σ(k)) となる置換
    """
    if len(sigma) != len(lengths):
        raise StructuralError(f"block permutation: {len(sigma)} blocks, {len(lengths)} lengths")
    starts = [sum(lengths[:r]) for r in range(len(lengths))]
    result: List[int] = []
    for r in sigma:
        result.extend(starts[r] + t for t in range(lengths[r]))
    return tuple(result)


def adjacent_transpositions(sigma: Perm) -> List[int]:
    """
    σ = s_{a₁}∘⋯∘s_{a_m} となる隣接互換の添字列（s_i は i と i+1 を入れ替える）

    Args:
        sigma: 置換

    Returns:
        [a₁, …, a_m]
    """
    current = list(sigma)
    steps = []
    changed = True
    while changed:
        changed = False
        for i in range(len(current) - 1):
            if current[i] > current[i + 1]:
                current[i], current[i + 1] = current[i + 1], current[i]
                steps.append(i)
                changed = True
    return list(reversed(steps))


def transposition(k: int, i: int) -> Perm:
    p = list(range(k))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


# --- 多圏のインターフェース -------------------------------------------------------


class MultiMorphism(NamedTuple):
    """k-射 φ ∈ M(a₁,…,a_k; b)"""

    inputs: Tuple
    output: Id
    data: Any

    @property
    def arity(self) -> int:
        return len(self.inputs)


class MultiCell(NamedTuple):
    """k-射の間の射（豊穣化された多圏でのみ使う）"""

    source: MultiMorphism
    target: MultiMorphism
    data: Any = None


class TruncatedMulticategory:
    """アリティ cap で切断された多圏のインターフェースを表すクラス"""

    name = "M"
    cap: int = 3
    enriched = False

    def __str__(self) -> str:
        return self.name

    def objects(self) -> List[Id]:
        raise NotImplementedError

    def operations(self, inputs: Tuple, output: Id) -> List[MultiMorphism]:
        raise NotImplementedError

    def unit(self, a: Id) -> MultiMorphism:
        raise NotImplementedError

    def act(self, sigma: Perm, phi: MultiMorphism) -> MultiMorphism:
        raise NotImplementedError

    def gamma(self, psi: MultiMorphism, phis: Sequence[MultiMorphism]) -> MultiMorphism:
        raise NotImplementedError

    def is_operation(self, phi: MultiMorphism) -> bool:
        return phi in self.operations(phi.inputs, phi.output)

    def operations_of_arity(self, k: int) -> List[MultiMorphism]:
        result = []
        for inputs in cartesian(self.objects(), repeat=k):
            for b in self.objects():
                result.extend(self.operations(tuple(inputs), b))
        return result

    def cells(self, source: MultiMorphism, target: MultiMorphism) -> List[MultiCell]:
        return [MultiCell(source, target)] if source == target else []

    def _check_profile(self, psi: MultiMorphism, phis: Sequence[MultiMorphism]) -> int:
        """Γ の型検査（出力の総アリティを返す）"""
        if len(phis) != psi.arity:
            raise ComposabilityError(f"{self.name}: Γ needs {psi.arity} arguments, got {len(phis)}")
        for i, (a, phi) in enumerate(zip(psi.inputs, phis)):
            if phi.output != a:
                raise ComposabilityError(
                    f"{self.name}: argument {i} has output {format_id(phi.output)}, expected {format_id(a)}"
                )
        total = sum(phi.arity for phi in phis)
        if total > self.cap:
            raise OutsideTruncation(f"{self.name}: Γ of arity {total} above cap {self.cap}")
        return total


def _split(items: Sequence, lengths: Sequence[int]) -> List[Tuple]:
    blocks, start = [], 0
    for n in lengths:
        blocks.append(tuple(items[start:start + n]))
        start += n
    return blocks


# --- 検査 ------------------------------------------------------------------------


def _ops_table(M: TruncatedMulticategory, sample: Optional[int]) -> Dict[int, List[MultiMorphism]]:
    return {k: spread(M.operations_of_arity(k), sample) for k in range(M.cap + 1)}


def _ops_into(table: Dict[int, List[MultiMorphism]]) -> Dict[Tuple[Id, int], List[MultiMorphism]]:
    result: Dict[Tuple[Id, int], List[MultiMorphism]] = {}
    for k, ops in table.items():
        for op in ops:
            result.setdefault((op.output, k), []).append(op)
    return result


def argument_tuples(
    cap: int, inputs: Sequence[Id], ops_into: Dict, limit: Optional[int]
) -> Iterator[Tuple[MultiMorphism, ...]]:
    """
    出力が inputs に一致し、総アリティが cap 以下となる k-射の組

    Args:
        cap: アリティ上限
        inputs: 各引数の出力
        ops_into: (出力, アリティ) → k-射のリスト
        limit: 上限（アリティの配分ごとに均等に割り当てる）

    Yields:
        k-射のタプル
    """
    vectors = [v for v in cartesian(range(cap + 1), repeat=len(inputs)) if sum(v) <= cap]
    per = None if limit is None else max(1, limit // max(1, len(vectors)))
    for vec in vectors:
        pools = [ops_into.get((b, j), []) for b, j in zip(inputs, vec)]
        if not all(pools):
            continue
        yield from sample_product(pools, per)


def validate_multicat(M: TruncatedMulticategory, bounds: Optional[MultiBounds] = None) -> ValidationReport:
    """
    多圏の公理（Γ の結合律・単位律・2つの同変性・作用）を切断内で検査

    Args:
        M: 多圏
        bounds: 標本の上限

    Returns:
        レポート（multi.assoc, multi.unit.*, multi.equivariance.*, multi.action.*, multi.closed）
    """
    bounds = bounds or MultiBounds(arity=M.cap)
    sample = bounds.sample
    report = ValidationReport(f"multicategory {M.name}", {"cap": M.cap, **bounds.as_bounds()})
    table = _ops_table(M, sample)
    into = _ops_into(table)
    all_ops = [op for k in sorted(table) for op in table[k]]
    inner = None if sample is None else max(2, int(sample ** 0.5) // 2)

    for phi in all_ops:
        k = phi.arity
        inst = (phi,)
        _holds(report, "multi.action.unit", inst, lambda: M.act(identity_perm(k), phi), lambda: phi)
        report.check("multi.member", M.is_operation(phi), inst)
        for sigma in all_perms(k):
            acted = M.act(sigma, phi)
            report.check(
                "multi.action.inputs",
                acted.inputs == apply_perm(sigma, phi.inputs) and acted.output == phi.output,
                (phi, sigma),
            )
        for sigma, tau in islice(sample_product([all_perms(k)] * 2, inner), inner):
            _holds(
                report,
                "multi.action.compose",
                (phi, sigma, tau),
                lambda: M.act(tau, M.act(sigma, phi)),
                lambda: M.act(perm_compose(sigma, tau), phi),
            )
        _holds(report, "multi.unit.left", inst, lambda: M.gamma(M.unit(phi.output), [phi]), lambda: phi)
        _holds(
            report, "multi.unit.right", inst, lambda: M.gamma(phi, [M.unit(a) for a in phi.inputs]), lambda: phi
        )

    # Multi(3), Multi(4) と Γ の閉性
    for psi in all_ops:
        for phis in argument_tuples(M.cap, psi.inputs, into, inner):
            inst = (psi, phis)
            lengths = [phi.arity for phi in phis]
            try:
                composite = M.gamma(psi, phis)
            except OutsideTruncation:
                report.skip("multi.closed")
                continue
            report.check("multi.closed", M.is_operation(composite), inst)
            for sigma in spread(all_perms(psi.arity), inner):
                _holds(
                    report,
                    "multi.equivariance.outer",
                    (psi, phis, sigma),
                    lambda: M.gamma(M.act(sigma, psi), apply_perm(sigma, phis)),
                    lambda: M.act(block_permutation(sigma, lengths), composite),
                )
            taus_pool = [all_perms(n) for n in lengths]
            for taus in sample_product(taus_pool, inner):
                _holds(
                    report,
                    "multi.equivariance.inner",
                    (psi, phis, taus),
                    lambda: M.gamma(psi, [M.act(t, phi) for t, phi in zip(taus, phis)]),
                    lambda: M.act(perm_sum(taus), composite),
                )

    # Multi(1)
    assoc = 0
    for psi in all_ops:
        if sample is not None and assoc >= sample:
            report.note(f"multi.assoc: stopped after {assoc} instances")
            break
        for phis in argument_tuples(M.cap, psi.inputs, into, inner):
            try:
                middle = M.gamma(psi, phis)
            except OutsideTruncation:
                continue
            lengths = [phi.arity for phi in phis]
            for chis in argument_tuples(M.cap, middle.inputs, into, inner):
                groups = _split(chis, lengths)
                assoc += 1
                _holds(
                    report,
                    "multi.assoc",
                    (psi, phis, chis),
                    lambda: M.gamma(middle, chis),
                    lambda: M.gamma(psi, [M.gamma(phi, list(g)) for phi, g in zip(phis, groups)]),
                )

    if M.enriched:
        _check_cells(report, M, all_ops)
    logger.info("multicategory %s: %s", M.name, "valid" if report.ok else "invalid")
    return report


def _check_cells(report: ValidationReport, M: TruncatedMulticategory, ops: List[MultiMorphism]):
    by_arity: Dict[int, List[MultiMorphism]] = {}
    for op in ops:
        by_arity.setdefault(op.arity, []).append(op)
    for k, group in by_arity.items():
        for a, b in cartesian(group, repeat=2):
            if a.inputs != b.inputs or a.output != b.output:
                continue
            cells = M.cells(a, b)
            if a == b:
                report.check("multi.cells.identity", bool(cells), (a,))
            for sigma in all_perms(k):
                moved = M.cells(M.act(sigma, a), M.act(sigma, b))
                report.check("multi.cells.action", len(moved) == len(cells), (a, b, sigma))


# --- 具体的な多圏 ------------------------------------------------------------


class PermutativeMulticategory(TruncatedMulticategory):
    """置換圏 E から E(c₁,…,c_k; d) = E(c₁⊕⋯⊕c_k, d) で作る多圏"""

    def __init__(self, p: MonoidalStructure, cap: int, name: str = ""):
        self.p = p
        self.cap = cap
        self.name = name or f"multi({p.name})"

    def objects(self) -> List[Id]:
        return list(self.p.category.objects())

    def operations(self, inputs: Tuple, output: Id) -> List[MultiMorphism]:
        if len(inputs) > self.cap:
            return []
        try:
            source = tensor_all(self.p, list(inputs))
        except OutsideTruncation:
            return []
        return [MultiMorphism(tuple(inputs), output, f) for f in self.p.category.hom(source, output)]

    def unit(self, a: Id) -> MultiMorphism:
        return MultiMorphism((a,), a, self.p.category.identity(a))

    def act(self, sigma: Perm, phi: MultiMorphism) -> MultiMorphism:
        inputs = apply_perm(sigma, phi.inputs)
        tau = nested_permutation(self.p, list(inputs), perm_inverse(sigma))
        return MultiMorphism(inputs, phi.output, self.p.category.compose(phi.data, tau))

    def gamma(self, psi: MultiMorphism, phis: Sequence[MultiMorphism]) -> MultiMorphism:
        self._check_profile(psi, phis)
        inputs = tuple(a for phi in phis for a in phi.inputs)
        inner = tensor_all_morphisms(self.p, [phi.data for phi in phis])
        return MultiMorphism(inputs, psi.output, self.p.category.compose(psi.data, inner))


def perm_as_multicat(p: MonoidalStructure, cap: int) -> PermutativeMulticategory:
    """置換圏を多圏として見る"""
    return PermutativeMulticategory(p, cap)


SIGMA_OBJECT = "*"


class SigmaMulticategory(TruncatedMulticategory):
    """
    Σ_*（1対象、k-射 = Σ_k）と EΣ_*（任意の2つの k-射の間にただ1つの射）

    Γ(σ; φ₁,…,φ_k) = (φ₁⊕⋯⊕φ_k)∘σ_⟨j⟩、σ*φ = σ⁻¹∘φ。
    """

    def __init__(self, cap: int, enriched: bool = False):
        """
        初期化

        Args:
            cap: アリティ上限
            enriched: EΣ_* として扱うか

        Raises:
            BoundsError: cap が上限を超える場合
        """
        if cap < 0 or cap > SIGMA_ARITY_LIMIT:
            raise BoundsError(f"Σ arity cap must lie in 0..{SIGMA_ARITY_LIMIT}, got {cap}")
        self.cap = cap
        self.enriched = enriched
        self.name = f"{'EΣ' if enriched else 'Σ'}_*[{cap}]"

    def objects(self) -> List[Id]:
        return [SIGMA_OBJECT]

    def element(self, pi: Perm) -> MultiMorphism:
        return MultiMorphism((SIGMA_OBJECT,) * len(pi), SIGMA_OBJECT, tuple(pi))

    def operations(self, inputs: Tuple, output: Id) -> List[MultiMorphism]:
        if output != SIGMA_OBJECT or any(a != SIGMA_OBJECT for a in inputs) or len(inputs) > self.cap:
            return []
        return [self.element(pi) for pi in all_perms(len(inputs))]

    def unit(self, a: Id) -> MultiMorphism:
        return self.element((0,))

    def act(self, sigma: Perm, phi: MultiMorphism) -> MultiMorphism:
        return self.element(perm_compose(perm_inverse(sigma), phi.data))

    def gamma(self, psi: MultiMorphism, phis: Sequence[MultiMorphism]) -> MultiMorphism:
        self._check_profile(psi, phis)
        lengths = [phi.arity for phi in phis]
        return self.element(perm_compose(perm_sum([phi.data for phi in phis]), block_permutation(psi.data, lengths)))

    def cells(self, source: MultiMorphism, target: MultiMorphism) -> List[MultiCell]:
        if not self.enriched:
            return super().cells(source, target)
        if source.arity != target.arity:
            return []
        return [MultiCell(source, target)]


def sigma_multicat(cap: int, enriched: bool = False) -> SigmaMulticategory:
    return SigmaMulticategory(cap, enriched)


class TerminalMulticategory(TruncatedMulticategory):
    """各アリティにただ1つの k-射を持つ多圏"""

    def __init__(self, cap: int):
        self.cap = cap
        self.name = f"terminal[{cap}]"

    def objects(self) -> List[Id]:
        return [SIGMA_OBJECT]

    def operations(self, inputs: Tuple, output: Id) -> List[MultiMorphism]:
        if len(inputs) > self.cap:
            return []
        return [MultiMorphism(tuple(inputs), output, len(inputs))]

    def unit(self, a: Id) -> MultiMorphism:
        return MultiMorphism((a,), a, 1)

    def act(self, sigma: Perm, phi: MultiMorphism) -> MultiMorphism:
        return phi

    def gamma(self, psi: MultiMorphism, phis: Sequence[MultiMorphism]) -> MultiMorphism:
        total = self._check_profile(psi, phis)
        return MultiMorphism((SIGMA_OBJECT,) * total, SIGMA_OBJECT, total)


# --- k-線形写像と ℙ ---------------------------------------------------------------


def _with(xs: Tuple, i: int, value: Id) -> Tuple:
    return xs[:i] + (value,) + xs[i + 1:]


class KLinearMap:
    """置換圏の直積 C₁×⋯×C_k → D への k-線形写像を表すクラス

    対象・射・δ^i を表で保持し、等号は表の一致で判定する。
    δ^i(xs, x′): f(xs) ⊕ f(xs[i:=x′]) → f(xs[i:=x_i⊕x′])。
    """

    def __init__(
        self,
        sources: Tuple[MonoidalStructure, ...],
        target: MonoidalStructure,
        objects: Dict[Tuple, Id],
        morphisms: Dict[Tuple, Id],
        deltas: Dict[Tuple[int, Tuple, Id], Id],
        name: str = "f",
    ):
        self.sources = tuple(sources)
        self.target = target
        self.objects = objects
        self.morphisms = morphisms
        self.deltas = deltas
        self.name = name

    @property
    def arity(self) -> int:
        return len(self.sources)

    def obj(self, xs: Tuple) -> Id:
        try:
            return self.objects[tuple(xs)]
        except KeyError:
            raise StructuralError(f"{self.name}: no value at {format_id(tuple(xs))}") from None

    def mor(self, fs: Tuple) -> Id:
        try:
            return self.morphisms[tuple(fs)]
        except KeyError:
            raise StructuralError(f"{self.name}: no value at morphism {format_id(tuple(fs))}") from None

    def delta(self, i: int, xs: Tuple, x2: Id) -> Id:
        try:
            return self.deltas[(i, tuple(xs), x2)]
        except KeyError:
            raise StructuralError(f"{self.name}: δ^{i} undefined at {format_id((tuple(xs), x2))}") from None

    def _signature(self) -> Tuple:
        return tuple(id(s) for s in self.sources) + (id(self.target),)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KLinearMap):
            return NotImplemented
        return (
            self._signature() == other._signature()
            and self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.deltas == other.deltas
        )

    def __hash__(self) -> int:
        return hash((self._signature(), frozenset(self.objects.items())))

    def __str__(self) -> str:
        return self.name

    __repr__ = __str__


def klinear_from_functions(
    sources: Sequence[MonoidalStructure],
    target: MonoidalStructure,
    on_objects: Callable[[Tuple], Id],
    on_morphisms: Callable[[Tuple], Id],
    on_delta: Callable[[int, Tuple, Id], Id],
    name: str = "f",
) -> KLinearMap:
    """
    関数から k-線形写像の表を作る

    Args:
        sources: C₁, …, C_k
        target: D
        on_objects: 対象の組 → D の対象
        on_morphisms: 射の組 → D の射
        on_delta: (i, 対象の組, x′) → δ^i

    Returns:
        KLinearMap
    """
    sources = tuple(sources)
    object_pools = [s.category.objects() for s in sources]
    objects = {xs: on_objects(xs) for xs in cartesian(*object_pools)}
    morphisms = {fs: on_morphisms(fs) for fs in cartesian(*[s.category.morphisms() for s in sources])}
    deltas = {}
    for i, s in enumerate(sources):
        for xs in cartesian(*object_pools):
            for x2 in s.category.objects():
                deltas[(i, xs, x2)] = on_delta(i, xs, x2)
    return KLinearMap(sources, target, objects, morphisms, deltas, name=name)


def klinear_unit(c: MonoidalStructure) -> KLinearMap:
    """恒等関手（δ = id）"""
    cat = c.category
    return klinear_from_functions(
        (c,),
        c,
        lambda xs: xs[0],
        lambda fs: fs[0],
        lambda i, xs, x2: cat.identity(c.tensor_obj(xs[0], x2)),
        name=f"1_{c.name}",
    )


def klinear_constant(c: MonoidalStructure, x: Id, name: str = "") -> KLinearMap:
    """対象 x を選ぶ 0-線形写像"""
    return KLinearMap((), c, {(): x}, {(): c.category.identity(x)}, {}, name=name or f"const_{format_id(x)}")


def klinear_from_monoidal_map(m: MonoidalMap) -> KLinearMap:
    """lax_* 写像を 1-線形写像として見る（δ⁰ = λ）"""
    f = m.functor
    tcat = m.target.category

    def delta(i: int, xs: Tuple, x2: Id) -> Id:
        if m.kind == "strict":
            return tcat.identity(m.target.tensor_obj(f.obj(xs[0]), f.obj(x2)))
        return m.lam_at(xs[0], x2)

    return klinear_from_functions(
        (m.source,), m.target, lambda xs: f.obj(xs[0]), lambda fs: f.mor(fs[0]), delta, name=m.name
    )


def klinear_act(sigma: Perm, f: KLinearMap) -> KLinearMap:
    """σ*f: 引数を σ で並べ替える"""
    sources = apply_perm(sigma, f.sources)
    return klinear_from_functions(
        sources,
        f.target,
        lambda ys: f.obj(unapply_perm(sigma, ys)),
        lambda gs: f.mor(unapply_perm(sigma, gs)),
        lambda i, ys, y2: f.delta(sigma[i], unapply_perm(sigma, ys), y2),
        name=f"{f.name}·{format_id(sigma)}",
    )


def klinear_gamma(psi: KLinearMap, phis: Sequence[KLinearMap]) -> KLinearMap:
    """
    Γ(ψ; φ₁,…,φ_k)

    δ は δ^i_ψ の後に ψ(…, δ^s_{φ_i}, …) を合成する。

    Args:
        psi: k-線形写像
        phis: 各引数に入る写像

    Returns:
        KLinearMap

    Raises:
        ComposabilityError: φ_i の終域が ψ の i 番目の始域と異なる場合
    """
    if len(phis) != psi.arity:
        raise ComposabilityError(f"Γ: {psi.name} takes {psi.arity} arguments, got {len(phis)}")
    for i, (s, phi) in enumerate(zip(psi.sources, phis)):
        if phi.target is not s:
            raise ComposabilityError(f"Γ: argument {i} of {psi.name} lands in {phi.target.name}, expected {s.name}")
    lengths = [phi.arity for phi in phis]
    sources = tuple(s for phi in phis for s in phi.sources)
    offsets = [(i, t) for i, n in enumerate(lengths) for t in range(n)]

    def args(xs: Tuple) -> Tuple:
        return tuple(phi.obj(block) for phi, block in zip(phis, _split(xs, lengths)))

    def on_morphisms(fs: Tuple) -> Id:
        return psi.mor(tuple(phi.mor(block) for phi, block in zip(phis, _split(fs, lengths))))

    def on_delta(p: int, xs: Tuple, x2: Id) -> Id:
        i, s = offsets[p]
        blocks = _split(xs, lengths)
        a = args(xs)
        moved = phis[i].obj(_with(blocks[i], s, x2))
        outer = psi.delta(i, a, moved)
        inner_mor = tuple(
            phis[i].delta(s, blocks[r], x2) if r == i else psi.sources[r].category.identity(a[r])
            for r in range(len(phis))
        )
        return psi.target.category.compose(psi.mor(inner_mor), outer)

    return klinear_from_functions(
        sources,
        psi.target,
        lambda xs: psi.obj(args(xs)),
        on_morphisms,
        on_delta,
        name=f"Γ({psi.name};{','.join(phi.name for phi in phis)})",
    )


def validate_klinear(f: KLinearMap, sample: Optional[int] = 400) -> ValidationReport:
    """
    k-線形写像の公理を検査

    変数ごとの関手性、零での消滅、δ^i の型・零条件・自然性・結合律・γ との両立、
    異なる変数の δ^i, δ^j の交換。

    Args:
        f: 写像
        sample: 図式ごとのインスタンス上限

    Returns:
        レポート（klinear.*）
    """
    report = ValidationReport(f"k-linear map {f.name}", {"arity": f.arity, "sample": sample or "all"})
    S, T = f.sources, f.target
    tcat = T.category
    obj_pools = [s.category.objects() for s in S]
    mor_pools = [s.category.morphisms() for s in S]
    k = f.arity

    def plus(*mors: Id) -> Id:
        return tensor_all_morphisms(T, list(mors))

    def tid(x: Id) -> Id:
        return tcat.identity(x)

    for xs in sample_product(obj_pools, sample):
        _holds(report, "klinear.functor.identity", xs,
               lambda: f.mor(tuple(s.category.identity(x) for s, x in zip(S, xs))), lambda: tid(f.obj(xs)))
        if any(x == s.unit for s, x in zip(S, xs)):
            report.check("klinear.zero", f.obj(xs) == T.unit, xs, f"value {format_id(f.obj(xs))}")

    for fs in sample_product(mor_pools, sample):
        m = f.mor(fs)
        doms = tuple(s.category.dom(g) for s, g in zip(S, fs))
        cods = tuple(s.category.cod(g) for s, g in zip(S, fs))
        report.check("klinear.functor.typing", tcat.dom(m) == f.obj(doms) and tcat.cod(m) == f.obj(cods), fs)

    pair_pools = [
        [(g, h) for g in s.category.morphisms() for h in s.category.morphisms() if s.category.cod(h) == s.category.dom(g)]
        for s in S
    ]
    for pairs in sample_product(pair_pools, sample):
        gs = tuple(g for g, _ in pairs)
        hs = tuple(h for _, h in pairs)
        _holds(report, "klinear.functor.compose", pairs,
               lambda: f.mor(tuple(s.category.compose(g, h) for s, (g, h) in zip(S, pairs))),
               lambda: tcat.compose(f.mor(gs), f.mor(hs)))

    for i in range(k):
        Si = S[i]
        for xs, x2 in sample_product([list(cartesian(*obj_pools)), Si.category.objects()], sample):
            d = f.delta(i, xs, x2)
            inst = (i, xs, x2)
            moved = _with(xs, i, Si.tensor_obj(xs[i], x2))
            report.check(
                "klinear.delta.typing",
                tcat.dom(d) == T.tensor_obj(f.obj(xs), f.obj(_with(xs, i, x2))) and tcat.cod(d) == f.obj(moved),
                inst,
            )
            if xs[i] == Si.unit or x2 == Si.unit or any(x == s.unit for j, (s, x) in enumerate(zip(S, xs)) if j != i):
                report.check("klinear.delta.zero", d == tcat.identity(tcat.dom(d)), inst, format_id(d))
            _holds(report, "klinear.delta.gamma", inst,
                   lambda: tcat.compose(
                       f.mor(_with(tuple(s.category.identity(x) for s, x in zip(S, xs)), i, Si.gamma(xs[i], x2))), d),
                   lambda: tcat.compose(f.delta(i, _with(xs, i, x2), xs[i]), T.gamma(f.obj(xs), f.obj(_with(xs, i, x2)))))

        for xs, x2, x3 in sample_product([list(cartesian(*obj_pools)), Si.category.objects(), Si.category.objects()], sample):
            _holds(report, "klinear.delta.assoc", (i, xs, x2, x3),
                   lambda: tcat.compose(
                       f.delta(i, _with(xs, i, Si.tensor_obj(xs[i], x2)), x3),
                       plus(f.delta(i, xs, x2), tid(f.obj(_with(xs, i, x3))))),
                   lambda: tcat.compose(
                       f.delta(i, xs, Si.tensor_obj(x2, x3)),
                       plus(tid(f.obj(xs)), f.delta(i, _with(xs, i, x2), x3))))

        for fs, g2 in sample_product([list(cartesian(*mor_pools)), Si.category.morphisms()], sample):
            doms = tuple(s.category.dom(g) for s, g in zip(S, fs))
            cods = tuple(s.category.cod(g) for s, g in zip(S, fs))
            _holds(report, "klinear.delta.natural", (i, fs, g2),
                   lambda: tcat.compose(f.mor(_with(fs, i, Si.tensor_mor(fs[i], g2))),
                                        f.delta(i, doms, Si.category.dom(g2))),
                   lambda: tcat.compose(f.delta(i, cods, Si.category.cod(g2)),
                                        T.tensor_mor(f.mor(fs), f.mor(_with(fs, i, g2)))))

    for i in range(k):
        for j in range(i + 1, k):
            Si, Sj = S[i], S[j]
            pools = [list(cartesian(*obj_pools)), Si.category.objects(), Sj.category.objects()]
            for xs, x2, y2 in sample_product(pools, sample):
                x, y = xs[i], xs[j]
                a = f.obj(xs)
                b = f.obj(_with(xs, j, y2))
                c = f.obj(_with(xs, i, x2))
                _holds(report, "klinear.delta.interchange", (i, j, xs, x2, y2),
                       lambda: compose_path(tcat, [
                           f.delta(j, _with(xs, i, Si.tensor_obj(x, x2)), y2),
                           plus(f.delta(i, xs, x2), f.delta(i, _with(xs, j, y2), x2)),
                           plus(tid(a), T.gamma(b, c), tid(f.obj(_with(_with(xs, i, x2), j, y2)))),
                       ]),
                       lambda: tcat.compose(
                           f.delta(i, _with(xs, j, Sj.tensor_obj(y, y2)), x2),
                           plus(f.delta(j, xs, y2), f.delta(j, _with(xs, i, x2), y2))))
    return report


class KLinearCell(NamedTuple):
    """k-線形写像の間の変換 α: f → g（成分は対象の組ごと）"""

    source: KLinearMap
    target: KLinearMap
    components: Tuple

    def at(self, xs: Tuple) -> Id:
        for key, value in self.components:
            if key == tuple(xs):
                return value
        raise StructuralError(f"cell {self.source.name} → {self.target.name}: no component at {format_id(xs)}")


def _cell(source: KLinearMap, target: KLinearMap, fn: Callable[[Tuple], Id]) -> KLinearCell:
    pools = [s.category.objects() for s in source.sources]
    return KLinearCell(source, target, tuple((xs, fn(xs)) for xs in cartesian(*pools)))


def cell_identity(f: KLinearMap) -> KLinearCell:
    return _cell(f, f, lambda xs: f.target.category.identity(f.obj(xs)))


def cell_compose(second: KLinearCell, first: KLinearCell) -> KLinearCell:
    """縦合成 second∘first"""
    if first.target != second.source:
        raise ComposabilityError(f"cells {second.source.name} and {first.target.name} do not compose")
    cat = first.source.target.category
    return _cell(first.source, second.target, lambda xs: cat.compose(second.at(xs), first.at(xs)))


def cell_act(sigma: Perm, alpha: KLinearCell) -> KLinearCell:
    return _cell(
        klinear_act(sigma, alpha.source),
        klinear_act(sigma, alpha.target),
        lambda ys: alpha.at(unapply_perm(sigma, ys)),
    )


def cell_gamma(beta: KLinearCell, alphas: Sequence[KLinearCell]) -> KLinearCell:
    """横合成 Γ(β; α₁,…,α_k)"""
    lengths = [a.source.arity for a in alphas]
    outer_target = beta.target
    cat = beta.source.target.category

    def component(xs: Tuple) -> Id:
        blocks = _split(xs, lengths)
        targets = tuple(a.target.obj(b) for a, b in zip(alphas, blocks))
        return cat.compose(beta.at(targets), beta.source.mor(tuple(a.at(b) for a, b in zip(alphas, blocks))))

    return _cell(
        klinear_gamma(beta.source, [a.source for a in alphas]),
        klinear_gamma(outer_target, [a.target for a in alphas]),
        component,
    )


def validate_cell(alpha: KLinearCell, sample: Optional[int] = 400) -> ValidationReport:
    """
    k-線形写像の間の変換の公理（自然性・零での恒等・δ との両立）

    Args:
        alpha: 変換
        sample: 上限

    Returns:
        レポート（cell.*）
    """
    f, g = alpha.source, alpha.target
    report = ValidationReport(f"cell {f.name} → {g.name}")
    S, T = f.sources, f.target
    tcat = T.category
    obj_pools = [s.category.objects() for s in S]
    for xs in sample_product(obj_pools, sample):
        a = alpha.at(xs)
        report.check("cell.typing", tcat.dom(a) == f.obj(xs) and tcat.cod(a) == g.obj(xs), xs)
        if any(x == s.unit for s, x in zip(S, xs)):
            report.check("cell.zero", a == tcat.identity(T.unit), xs)
    for fs in sample_product([s.category.morphisms() for s in S], sample):
        doms = tuple(s.category.dom(h) for s, h in zip(S, fs))
        cods = tuple(s.category.cod(h) for s, h in zip(S, fs))
        _holds(report, "cell.natural", fs,
               lambda: tcat.compose(alpha.at(cods), f.mor(fs)), lambda: tcat.compose(g.mor(fs), alpha.at(doms)))
    for i, s in enumerate(S):
        for xs, x2 in sample_product([list(cartesian(*obj_pools)), s.category.objects()], sample):
            _holds(report, "cell.delta", (i, xs, x2),
                   lambda: tcat.compose(alpha.at(_with(xs, i, s.tensor_obj(xs[i], x2))), f.delta(i, xs, x2)),
                   lambda: tcat.compose(g.delta(i, xs, x2), T.tensor_mor(alpha.at(xs), alpha.at(_with(xs, i, x2)))))
    return report


class PMulticategory(TruncatedMulticategory):
    """置換圏を対象、k-線形写像を k-射とする多圏 ℙ（k-射の列挙はしない）"""

    enriched = True

    def __init__(self, cap: int = 3, name: str = "P"):
        self.cap = cap
        self.name = name

    def morphism(self, f: KLinearMap) -> MultiMorphism:
        return MultiMorphism(f.sources, f.target, f)

    def objects(self) -> List[Id]:
        return []

    def operations(self, inputs: Tuple, output: Id) -> List[MultiMorphism]:
        return []

    def is_operation(self, phi: MultiMorphism) -> bool:
        f = phi.data
        return isinstance(f, KLinearMap) and f.sources == tuple(phi.inputs) and f.target is phi.output

    def unit(self, a: Id) -> MultiMorphism:
        return self.morphism(klinear_unit(a))

    def act(self, sigma: Perm, phi: MultiMorphism) -> MultiMorphism:
        return self.morphism(klinear_act(sigma, phi.data))

    def gamma(self, psi: MultiMorphism, phis: Sequence[MultiMorphism]) -> MultiMorphism:
        self._check_profile(psi, phis)
        return self.morphism(klinear_gamma(psi.data, [phi.data for phi in phis]))

    def cells(self, source: MultiMorphism, target: MultiMorphism) -> List[MultiCell]:
        if source == target:
            return [MultiCell(source, target, cell_identity(source.data))]
        return []


class PFragment(PMulticategory):
    """
    生成元から Γ と σ* で閉じた ℙ の有限部分

    閉包は rounds 回まで、k-射の総数 limit までで打ち切る（打ち切りはログに残す）。
    """

    def __init__(
        self,
        generators: Sequence[KLinearMap],
        cap: int = 3,
        rounds: int = 2,
        limit: int = 400,
        name: str = "P-fragment",
    ):
        super().__init__(cap, name)
        objects: List[MonoidalStructure] = []
        for g in generators:
            for s in g.sources + (g.target,):
                if not any(s is o for o in objects):
                    objects.append(s)
        self._objects = objects
        self.generators = list(generators)
        self.truncated = False
        self._ops = self._close(rounds, limit)
        logger.info("%s: %d operations over %d categories", name, len(self._ops), len(objects))

    def _close(self, rounds: int, limit: int) -> List[MultiMorphism]:
        ops: List[MultiMorphism] = []
        seen = set()

        def add(op: MultiMorphism) -> bool:
            if op in seen or op.arity > self.cap:
                return False
            if len(ops) >= limit:
                self.truncated = True
                return False
            seen.add(op)
            ops.append(op)
            return True

        for a in self._objects:
            add(self.unit(a))
        for g in self.generators:
            add(self.morphism(g))
        for _ in range(rounds):
            grew = False
            for op in list(ops):
                for sigma in all_perms(op.arity):
                    grew |= add(self.act(sigma, op))
            table = {}
            for op in ops:
                table.setdefault(op.arity, []).append(op)
            into = _ops_into(table)
            for psi in list(ops):
                for phis in argument_tuples(self.cap, psi.inputs, into, None):
                    try:
                        grew |= add(self.gamma(psi, phis))
                    except OutsideTruncation:
                        continue
            if not grew:
                break
        if self.truncated:
            logger.warning("%s: closure stopped at %d operations", self.name, limit)
        return ops

    def objects(self) -> List[Id]:
        return list(self._objects)

    def operations(self, inputs: Tuple, output: Id) -> List[MultiMorphism]:
        inputs = tuple(inputs)
        return [
            op
            for op in self._ops
            if op.output is output and len(op.inputs) == len(inputs) and all(a is b for a, b in zip(op.inputs, inputs))
        ]

    def operations_of_arity(self, k: int) -> List[MultiMorphism]:
        return [op for op in self._ops if op.arity == k]


# --- M^E ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EFunctor:
    """関手 F: E → M（M の 1-射への対応）"""

    object_map: Tuple[Tuple[Id, Id], ...]
    morphism_map: Tuple[Tuple[Id, MultiMorphism], ...]
    name: str = field(default="F", compare=False)

    def obj(self, c: Id) -> Id:
        for key, value in self.object_map:
            if key == c:
                return value
        raise StructuralError(f"{self.name}: no image for object {format_id(c)}")

    def mor(self, f: Id) -> MultiMorphism:
        for key, value in self.morphism_map:
            if key == f:
                return value
        raise StructuralError(f"{self.name}: no image for morphism {format_id(f)}")

    def __str__(self) -> str:
        return self.name

    __repr__ = __str__


def is_functor(M: TruncatedMulticategory, E: MonoidalStructure, F: EFunctor) -> bool:
    """F が恒等射と合成を保つか"""
    cat = E.category
    for c in cat.objects():
        if F.mor(cat.identity(c)) != M.unit(F.obj(c)):
            return False
    for f in cat.morphisms():
        image = F.mor(f)
        if image.inputs != (F.obj(cat.dom(f)),) or image.output != F.obj(cat.cod(f)):
            return False
    for g, f in cartesian(cat.morphisms(), repeat=2):
        if cat.cod(f) != cat.dom(g):
            continue
        if F.mor(cat.compose(g, f)) != M.gamma(F.mor(g), [F.mor(f)]):
            return False
    return True


def enumerate_functors(M: TruncatedMulticategory, E: MonoidalStructure, limit: int) -> Tuple[List[EFunctor], bool]:
    """
    関手 E → M を決定的な順で列挙

    Args:
        M: 多圏（1-射の圏として使う）
        E: 置換圏
        limit: 列挙の上限

    Returns:
        (関手のリスト, 上限で打ち切ったか)
    """
    cat = E.category
    objects = cat.objects()
    morphisms = cat.morphisms()
    found: List[EFunctor] = []
    for images in cartesian(M.objects(), repeat=len(objects)):
        assign = dict(zip(objects, images))
        pools = []
        for f in morphisms:
            a, b = assign[cat.dom(f)], assign[cat.cod(f)]
            if f == cat.identity(cat.dom(f)):
                pools.append([M.unit(a)])
            else:
                pools.append(M.operations((a,), b))
        for choice in cartesian(*pools):
            F = EFunctor(
                tuple((c, assign[c]) for c in objects),
                tuple(zip(morphisms, choice)),
                name=f"F{len(found)}",
            )
            if is_functor(M, E, F):
                found.append(F)
                if len(found) >= limit:
                    return found, True
    return found, False


class FunctorMulticategory(TruncatedMulticategory):
    """
    M^E: 対象は関手 E → M、k-射は自然性を満たす族 φ_{c₁,…,c_k} ∈ M(F₁c₁,…,F_kc_k; G(c₁⊗⋯⊗c_k))

    k-射の data は (c̄, φ_c̄) の組を E の対象の辞書順に並べたタプル。
    """

    def __init__(
        self,
        M: TruncatedMulticategory,
        E: MonoidalStructure,
        bounds: Optional[MultiBounds] = None,
        functors: Optional[Sequence[EFunctor]] = None,
        name: str = "",
    ):
        """
        初期化

        Args:
            M: 値の多圏
            E: 置換圏
            bounds: アリティ上限・関手の列挙上限・族の標本上限
            functors: 対象として使う関手（省略時は列挙）
        """
        self.M = M
        self.E = E
        self.bounds = bounds or MultiBounds()
        self.cap = min(M.cap, self.bounds.arity)
        self.enriched = False
        self.name = name or f"{M.name}^{E.name}"
        self.truncated = False
        if functors is None:
            functors, self.truncated = enumerate_functors(M, E, self.bounds.functors)
        self._functors = list(functors)
        logger.info("%s: %d functors%s", self.name, len(self._functors), " (truncated)" if self.truncated else "")

    def objects(self) -> List[Id]:
        return list(self._functors)

    def index(self, k: int) -> List[Tuple]:
        return [tuple(t) for t in cartesian(self.E.category.objects(), repeat=k)]

    def family(self, phi: MultiMorphism) -> Dict[Tuple, MultiMorphism]:
        return dict(phi.data)

    def is_natural(self, phi: MultiMorphism, sample: Optional[int] = None) -> bool:
        """Γ(G(⊗f̄); φ_c̄) = Γ(φ_c̄′; F₁f₁,…,F_kf_k)"""
        cat = self.E.category
        fam = self.family(phi)
        G = phi.output
        for fs in sample_product([cat.morphisms()] * phi.arity, sample):
            doms = tuple(cat.dom(f) for f in fs)
            cods = tuple(cat.cod(f) for f in fs)
            lhs = self.M.gamma(G.mor(tensor_all_morphisms(self.E, list(fs))), [fam[doms]])
            rhs = self.M.gamma(fam[cods], [F.mor(f) for F, f in zip(phi.inputs, fs)])
            if lhs != rhs:
                return False
        return True

    def is_operation(self, phi: MultiMorphism) -> bool:
        fam = self.family(phi)
        for cs in self.index(phi.arity):
            op = fam.get(cs)
            if op is None or not self.M.is_operation(op):
                return False
            expected = (tuple(F.obj(c) for F, c in zip(phi.inputs, cs)), phi.output.obj(tensor_all(self.E, list(cs))))
            if (op.inputs, op.output) != expected:
                return False
        return self.is_natural(phi)

    def operations(self, inputs: Tuple, output: Id) -> List[MultiMorphism]:
        k = len(inputs)
        if k > self.cap:
            return []
        cs_list = self.index(k)
        pools = [
            self.M.operations(tuple(F.obj(c) for F, c in zip(inputs, cs)), output.obj(tensor_all(self.E, list(cs))))
            for cs in cs_list
        ]
        if not all(pools):
            return []
        result = []
        for choice in sample_product(pools, self.bounds.sample):
            phi = MultiMorphism(tuple(inputs), output, tuple(zip(cs_list, choice)))
            if self.is_natural(phi):
                result.append(phi)
        return result

    def unit(self, F: Id) -> MultiMorphism:
        return MultiMorphism((F,), F, tuple(((c,), self.M.unit(F.obj(c))) for c in self.E.category.objects()))

    def act(self, sigma: Perm, phi: MultiMorphism) -> MultiMorphism:
        """(σ*φ)_{σ·c̄} = σ*Γ(G(τ_{σ,c̄}); φ_c̄)"""
        fam = self.family(phi)
        G = phi.output
        entries = []
        for ds in self.index(phi.arity):
            cs = unapply_perm(sigma, ds)
            tau = nested_permutation(self.E, list(cs), sigma)
            entries.append((ds, self.M.act(sigma, self.M.gamma(G.mor(tau), [fam[cs]]))))
        return MultiMorphism(apply_perm(sigma, phi.inputs), G, tuple(entries))

    def gamma(self, psi: MultiMorphism, phis: Sequence[MultiMorphism]) -> MultiMorphism:
        """Γ(ψ; φ¹,…,φ^k)_{c̄₁,…,c̄_k} = Γ_M(ψ_{⊗c̄₁,…,⊗c̄_k}; φ¹_{c̄₁},…,φ^k_{c̄_k})"""
        total = self._check_profile(psi, phis)
        lengths = [phi.arity for phi in phis]
        outer = self.family(psi)
        inner = [self.family(phi) for phi in phis]
        entries = []
        for cs in self.index(total):
            blocks = _split(cs, lengths)
            key = tuple(tensor_all(self.E, list(b)) for b in blocks)
            entries.append((cs, self.M.gamma(outer[key], [fam[b] for fam, b in zip(inner, blocks)])))
        inputs = tuple(F for phi in phis for F in phi.inputs)
        return MultiMorphism(inputs, psi.output, tuple(entries))


def functor_multicat(
    M: TruncatedMulticategory,
    E: MonoidalStructure,
    bounds: Optional[MultiBounds] = None,
    functors: Optional[Sequence[EFunctor]] = None,
) -> FunctorMulticategory:
    return FunctorMulticategory(M, E, bounds, functors)


# --- 多関手と押し出し ---------------------------------------------------------------


@dataclass(eq=False)
class Multifunctor:
    """多関手 M₁ → M₂"""

    source: TruncatedMulticategory
    target: TruncatedMulticategory
    on_objects: Callable[[Id], Id]
    on_operations: Callable[[MultiMorphism], MultiMorphism]
    name: str = "f"

    def obj(self, a: Id) -> Id:
        return self.on_objects(a)

    def op(self, phi: MultiMorphism) -> MultiMorphism:
        return self.on_operations(phi)


def identity_multifunctor(M: TruncatedMulticategory) -> Multifunctor:
    return Multifunctor(M, M, lambda a: a, lambda phi: phi, name=f"id_{M.name}")


def collapse_multifunctor(M: TruncatedMulticategory, T: TerminalMulticategory) -> Multifunctor:
    """終多圏への潰し"""
    return Multifunctor(
        M,
        T,
        lambda a: SIGMA_OBJECT,
        lambda phi: MultiMorphism((SIGMA_OBJECT,) * phi.arity, SIGMA_OBJECT, phi.arity),
        name=f"!_{M.name}",
    )


def sigma_inclusion(source: SigmaMulticategory, target: SigmaMulticategory) -> Multifunctor:
    """Σ_* → EΣ_*（k-射は同じ置換）"""
    return Multifunctor(source, target, lambda a: a, lambda phi: target.element(phi.data), name="Σ→EΣ")


def validate_multifunctor(f: Multifunctor, bounds: Optional[MultiBounds] = None) -> ValidationReport:
    """
    多関手の公理（型・単位・σ*・Γ の保存）を切断内で検査

    Args:
        f: 多関手
        bounds: 標本の上限

    Returns:
        レポート（multifunctor.*）
    """
    M = f.source
    bounds = bounds or MultiBounds(arity=M.cap)
    sample = bounds.sample
    report = ValidationReport(f"multifunctor {f.name}", bounds.as_bounds())
    table = _ops_table(M, sample)
    into = _ops_into(table)
    inner = None if sample is None else max(2, int(sample ** 0.5) // 2)
    for a in M.objects():
        _holds(report, "multifunctor.unit", (a,), lambda: f.op(M.unit(a)), lambda: f.target.unit(f.obj(a)))
    for k in sorted(table):
        for phi in table[k]:
            image = f.op(phi)
            report.check(
                "multifunctor.profile",
                image.inputs == tuple(f.obj(a) for a in phi.inputs) and image.output == f.obj(phi.output),
                (phi,),
            )
            for sigma in spread(all_perms(k), inner):
                _holds(report, "multifunctor.action", (phi, sigma),
                       lambda: f.op(M.act(sigma, phi)), lambda: f.target.act(sigma, f.op(phi)))
            for phis in argument_tuples(M.cap, phi.inputs, into, inner):
                _holds(report, "multifunctor.gamma", (phi, phis),
                       lambda: f.op(M.gamma(phi, phis)), lambda: f.target.gamma(f.op(phi), [f.op(p) for p in phis]))
    return report


def pushforward(f: Multifunctor, source: FunctorMulticategory, target: FunctorMulticategory) -> Multifunctor:
    """
    F_*: M₁^E → M₂^E（対象は合成 f∘F、k-射は成分ごとに f を適用）

    Args:
        f: 多関手 M₁ → M₂
        source: M₁^E
        target: M₂^E（同じ E 上）

    Returns:
        Multifunctor

    Raises:
        StructuralError: E が一致しない場合
    """
    if source.E is not target.E or source.M is not f.source or target.M is not f.target:
        raise StructuralError("pushforward: source and target must be functor multicategories over the same E")

    def on_objects(F: EFunctor) -> EFunctor:
        return EFunctor(
            tuple((c, f.obj(a)) for c, a in F.object_map),
            tuple((g, f.op(op)) for g, op in F.morphism_map),
            name=f"{f.name}∘{F.name}",
        )

    def on_operations(phi: MultiMorphism) -> MultiMorphism:
        return MultiMorphism(
            tuple(on_objects(F) for F in phi.inputs),
            on_objects(phi.output),
            tuple((cs, f.op(op)) for cs, op in phi.data),
        )

    return Multifunctor(source, target, on_objects, on_operations, name=f"{f.name}_*")
