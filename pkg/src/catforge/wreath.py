#!/usr/bin/env python3
"""
単射の圏 Inj、関手 (𝒞^op)^*、輪積圏 𝒜 = Inj ∫ (𝒞^op)^* とその置換圏構造 ⊙、
および射影 𝒲: 𝒜 → 𝒞^op

単射は {1,…,n} → {1,…,m} の1始まりの値の列で表す。
"""

import logging
from dataclasses import dataclass
from itertools import permutations, product as cartesian
from typing import List, NamedTuple, Optional, Sequence, Tuple

from catforge.errors import BoundsError, ConstructionError, StructuralError
from catforge.fincat import FinCategory, FunctorData, Id, format_id, opposite, validate_category
from catforge.monostruct import (
    MonoidalMap,
    MonoidalStructure,
    PermutativeStructure,
    nested_permutation,
    tensor_all,
    tensor_all_morphisms,
    validate_monoidal_map,
    validate_permutative,
)
from catforge.report import ValidationReport

logger = logging.getLogger(__name__)


class InjMorphism(NamedTuple):
    """単射 q: {1..n} → {1..m}（values[i-1] = q(i)）"""

    n: int
    m: int
    values: Tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def preimage(self, j: int) -> Optional[int]:
        """q^{-1}(j)（空なら None）"""
        for i, v in enumerate(self.values, start=1):
            if v == j:
                return i
        return None


def make_inj(m: int, values: Sequence[int]) -> InjMorphism:
    """
    値の列から単射を作る

    Args:
        m: 終域の大きさ
        values: q(1), …, q(n)

    Returns:
        InjMorphism

    Raises:
        StructuralError: 範囲外または単射でない場合
    """
    values = tuple(values)
    if len(set(values)) != len(values) or any(v < 1 or v > m for v in values):
        raise StructuralError(f"not an injection into {m}: {values}")
    return InjMorphism(len(values), m, values)


def identity_inj(n: int) -> InjMorphism:
    return InjMorphism(n, n, tuple(range(1, n + 1)))


def compose_inj(p: InjMorphism, q: InjMorphism) -> InjMorphism:
    """p∘q"""
    if q.m != p.n:
        raise StructuralError(f"cannot compose injections {p} after {q}")
    return InjMorphism(q.n, p.m, tuple(p(v) for v in q.values))


def all_injections(n: int, m: int) -> List[InjMorphism]:
    return [InjMorphism(n, m, values) for values in permutations(range(1, m + 1), n)]


def sum_inj(q: InjMorphism, r: InjMorphism) -> InjMorphism:
    """q⊕r: n+n′ → m+m′"""
    return InjMorphism(q.n + r.n, q.m + r.m, q.values + tuple(q.m + v for v in r.values))


def block_swap(n: int, p: int) -> InjMorphism:
    """ξ: n+p → p+n（ξ(i) = i+p, ξ(n+j) = j）"""
    return InjMorphism(n + p, n + p, tuple(i + p for i in range(1, n + 1)) + tuple(range(1, p + 1)))


def q_star(q: InjMorphism, objs: Sequence[Id], unit: Id) -> Tuple[Id, ...]:
    """
    (𝒞^op)^*(q): ū を m 項の組に送る（像の外は単位対象）

    Args:
        q: 単射
        objs: 長さ n の組
        unit: 単位対象 1

    Returns:
        q(i) の位置に u_i、それ以外に 1 を置いた組

    Raises:
        StructuralError: 長さが n と一致しない場合
    """
    if len(objs) != q.n:
        raise StructuralError(f"q_star: expected a {q.n}-tuple, got {len(objs)}")
    result = [unit] * q.m
    for i, u in enumerate(objs, start=1):
        result[q(i) - 1] = u
    return tuple(result)


class WreathMorphism(NamedTuple):
    """𝒜 の射 (q, f̄): ū → v̄（f_j: (q_*ū)_j → v_j は 𝒞^op の射）"""

    source: Tuple
    target: Tuple
    q: InjMorphism
    components: Tuple


@dataclass(eq=False)
class WreathProduct:
    """輪積圏 𝒜 の長さ cap までの切断と、その上の ⊙"""

    base: FinCategory
    base_op: FinCategory
    unit: Id
    cap: int
    category: FinCategory
    structure: PermutativeStructure
    report: ValidationReport


def wreath_identity(base_op: FinCategory, objs: Tuple) -> WreathMorphism:
    return WreathMorphism(
        objs, objs, identity_inj(len(objs)), tuple(base_op.identity(u) for u in objs)
    )


def wreath_compose(base_op: FinCategory, second: WreathMorphism, first: WreathMorphism) -> WreathMorphism:
    """
    second∘first

    h_k = g_k ∘ f_j（k = p(j) のとき）、それ以外は h_k = g_k。

    Args:
        base_op: 𝒞^op
        second: (p, ḡ): v̄ → w̄
        first: (q, f̄): ū → v̄

    Returns:
        WreathMorphism

    Raises:
        StructuralError: first の終域と second の始域が異なる場合
    """
    if first.target != second.source:
        raise StructuralError(
            f"wreath_compose: {format_id(first.target)} != {format_id(second.source)}"
        )
    p = second.q
    components = list(second.components)
    for j, f in enumerate(first.components, start=1):
        k = p(j)
        components[k - 1] = base_op.compose(second.components[k - 1], f)
    return WreathMorphism(first.source, second.target, compose_inj(p, first.q), tuple(components))


def wreath_tensor(first: WreathMorphism, second: WreathMorphism) -> WreathMorphism:
    """(q, f̄)⊙(q′, f̄′) = (q⊕q′, f̄f̄′)"""
    return WreathMorphism(
        first.source + second.source,
        first.target + second.target,
        sum_inj(first.q, second.q),
        first.components + second.components,
    )


def wreath_gamma(base_op: FinCategory, left: Tuple, right: Tuple) -> WreathMorphism:
    """γ_{ū,v̄} = (ξ, 恒等射の組)"""
    return WreathMorphism(
        left + right,
        right + left,
        block_swap(len(left), len(right)),
        tuple(base_op.identity(u) for u in right + left),
    )


def build_wreath(C: FinCategory, cap: int, unit: Optional[Id] = None) -> WreathProduct:
    """
    𝒜 の長さ cap までの切断と ⊙ を構成して検査

    Args:
        C: 基底の亜群
        cap: 組の長さの上限
        unit: C の単位対象（1対象なら省略可）

    Returns:
        WreathProduct（category, structure, report）

    Raises:
        BoundsError: cap < 1
        ConstructionError: C が亜群でない場合
    """
    if cap < 1:
        raise BoundsError(f"wreath cap must be at least 1, got {cap}")
    if unit is None:
        objects = C.objects()
        if len(objects) != 1:
            raise StructuralError("build_wreath: unit object required for a multi-object base")
        unit = objects[0]
    if not C.is_groupoid():
        witness = next(f for f in C.morphisms() if not C.is_iso(f))
        raise ConstructionError(f"{C.name} is not a groupoid", witness=witness)
    Cop = opposite(C)

    objects = [tuple(t) for n in range(cap + 1) for t in cartesian(C.objects(), repeat=n)]
    morphisms = {}
    for source in objects:
        for target in objects:
            if len(target) < len(source):
                continue
            for q in all_injections(len(source), len(target)):
                pushed = q_star(q, source, unit)
                homs = [Cop.hom(pushed[j], target[j]) for j in range(len(target))]
                for comps in cartesian(*homs):
                    morphisms[WreathMorphism(source, target, q, tuple(comps))] = (source, target)
    identity = {o: wreath_identity(Cop, o) for o in objects}
    category = FinCategory.from_composition(
        objects,
        morphisms,
        identity,
        lambda g, f: wreath_compose(Cop, g, f),
        name=f"A({C.name},{cap})",
    )

    tensor_objects = {}
    for x, y in cartesian(objects, repeat=2):
        if len(x) + len(y) <= cap:
            tensor_objects[(x, y)] = x + y
    tensor_morphisms = {}
    for f, g in cartesian(list(morphisms), repeat=2):
        if len(f.target) + len(g.target) <= cap:
            tensor_morphisms[(f, g)] = wreath_tensor(f, g)
    gamma = {(x, y): wreath_gamma(Cop, x, y) for (x, y) in tensor_objects}
    structure = PermutativeStructure(
        category, tensor_objects, tensor_morphisms, (), gamma, name=f"⊙ on {category.name}", truncated=True
    )

    report = ValidationReport(f"wreath {C.name}", {"cap": cap})
    report.merge(validate_category(category), prefix="wreath.")
    report.merge(validate_permutative(structure), prefix="wreath.")
    report.note(f"morphisms with target length above {cap} omitted")
    logger.info("wreath %s cap %d: %d objects, %d morphisms", C.name, cap, len(objects), len(morphisms))
    return WreathProduct(C, Cop, unit, cap, category, structure, report)


def projection_W(
    wreath: WreathProduct, base_op: MonoidalStructure
) -> Tuple[FunctorData, ValidationReport]:
    """
    射影 𝒲: 𝒜 → 𝒞^op

    𝒲(ū) = u₁⊗⋯⊗uₙ、𝒲(q, f̄) = (f₁⊗⋯⊗f_m)∘τ_σ（σ は q の値の昇順に並べる置換）。

    Args:
        wreath: build_wreath の結果
        base_op: 𝒞^op 上の置換圏構造

    Returns:
        (FunctorData 𝒲, strict 写像としてのレポート)

    Raises:
        StructuralError: base_op が 𝒞^op 上の構造でない場合
    """
    if base_op is None or base_op.unit != wreath.unit:
        raise StructuralError("projection_W: permutative structure on the opposite base required")
    cat_op = base_op.category
    A = wreath.category
    object_map = {u: tensor_all(base_op, list(u)) for u in A.objects()}
    morphism_map = {}
    for w in A.morphisms():
        order = sorted(range(len(w.source)), key=lambda i: w.q.values[i])
        tau = nested_permutation(base_op, list(w.source), order)
        morphism_map[w] = cat_op.compose(tensor_all_morphisms(base_op, list(w.components)), tau)
    functor = FunctorData(A, cat_op, object_map, morphism_map, name="W")
    mapping = MonoidalMap(functor, wreath.structure, base_op, "strict", name="W")
    report = validate_monoidal_map(mapping)
    return functor, report
