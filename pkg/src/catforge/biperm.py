#!/usr/bin/env python3
"""
双置換圏・ファイバー双置換圏・ファイバー対称双モノイダル圏のデータと整合性検査

有限表のデータも厳密化の遅延出力も FiberBipermutative の同じ操作で扱い、
(a.1)–(a.5)、(b.1)–(b.10) の図式を具体的な射の等式として評価する。
遅延構成ではインスタンスの足跡が窓に収まるものを全て検査する（bounds.bounded_product）。
"""

import logging
from itertools import product as cartesian
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from catforge.bounds import WindowBudget, bounded_product, product_size, sample_product, spread
from catforge.errors import ComposabilityError, OutsideTruncation, StructuralError
from catforge.fibration import FiberedFunctor, fiber, validate_fibered
from catforge.fincat import Category, FinCategory, Functor, FunctorData, Id, compose_path, format_id
from catforge.monostruct import (
    FunctionalPermutative,
    MonoidalMap,
    MonoidalStructure,
    PermutativeStructure,
    SymMonoidalStructure,
    discrete_from_monoid,
    validate_monoidal_map,
    validate_symmetric_monoidal,
)
from catforge.report import ValidationReport

logger = logging.getLogger(__name__)

class FiberBipermutative:
    """ファイバー双置換圏の操作を表すインターフェース

    ⊗ は全体圏 total 上、⊕ は各ファイバー上の演算。射の ⊕ は同じ基底射の上の射どうしで定義される。
    """

    name = "fibered bipermutative"
    total: Category
    base: Category
    projection: Functor
    mult: MonoidalStructure
    base_mult: MonoidalStructure
    sample: Optional[int] = None

    def base_objects(self) -> List[Id]:
        return self.base.objects()

    def base_morphisms(self) -> List[Id]:
        return self.base.morphisms()

    def objects_over(self, c: Id) -> List[Id]:
        raise NotImplementedError

    def morphisms_over(self, x: Id, f: Id) -> List[Id]:
        """x を始域とし基底射 f の上にある射"""
        raise NotImplementedError

    def lifts_of(self, f: Id) -> List[Id]:
        """基底射 f の上にある射（遅延構成では窓に収まるもの）"""
        raise NotImplementedError

    def zero(self, c: Id) -> Id:
        raise NotImplementedError

    def add_obj(self, x: Id, y: Id) -> Id:
        raise NotImplementedError

    def add_mor(self, g: Id, h: Id) -> Id:
        raise NotImplementedError

    def gamma_add(self, x: Id, y: Id) -> Id:
        raise NotImplementedError

    def zero_mor(self, f: Id) -> Id:
        raise NotImplementedError

    def d_left(self, x: Id, x2: Id, y: Id) -> Id:
        """d^l: (x⊗y)⊕(x′⊗y) → (x⊕x′)⊗y"""
        raise NotImplementedError

    def d_right(self, x: Id, y: Id, y2: Id) -> Id:
        """d^r: (x⊗y)⊕(x⊗y′) → x⊗(y⊕y′)"""
        raise NotImplementedError

    def add_associator(self, x: Id, y: Id, z: Id) -> Id:
        return self.total.identity(self.add_obj(x, self.add_obj(y, z)))

    def add_left_unitor(self, x: Id) -> Id:
        return self.total.identity(x)

    def add_right_unitor(self, x: Id) -> Id:
        return self.total.identity(x)

    def bounds(self) -> Dict:
        return {}

    def instance_budget(self) -> Optional[WindowBudget]:
        """図式のインスタンスを絞る足跡の予算（有限表なら None で全列挙）"""
        return None

    def window_objects(self) -> List[Id]:
        return [x for c in self.base_objects() for x in self.objects_over(c)]

    def morphism_pool(self) -> List[Id]:
        """検査に使う全体圏の射（有限なら全部、遅延構成なら窓に収まるもの）"""
        return [g for f in self.base_morphisms() for g in self.lifts_of(f)]

    def fiber_structure(self, c: Id) -> MonoidalStructure:
        """c 上のファイバーの ⊕ を置換圏構造として見たもの"""
        return FunctionalPermutative(
            self.total,
            self.add_obj,
            self.add_mor,
            self.zero(c),
            self.gamma_add,
            name=f"⊕ over {format_id(c)}",
        )


def _table(doc_rows: Sequence, arity: int, what: str) -> Dict:
    try:
        return {tuple(row[:arity]) if arity > 1 else row[0]: row[arity] for row in doc_rows}
    except (IndexError, TypeError):
        raise StructuralError(f"malformed {what} table") from None


def structure_from_document(
    category: FinCategory, doc: Dict, name: str, symmetric: bool = False
) -> PermutativeStructure:
    """
    圏を与えて "tensor", "unit", "gamma"（と任意の結合子・単位子）からモノイダル構造を作る

    Args:
        category: 台となる圏
        doc: 構造の文書
        name: 表示名
        symmetric: True なら SymMonoidalStructure（省略された結合子・単位子は恒等射）

    Returns:
        PermutativeStructure または SymMonoidalStructure

    Raises:
        StructuralError: 文書の形が不正な場合
    """
    try:
        tensor = doc["tensor"]
        objects = _table(tensor["objects"], 2, "tensor")
        morphisms = _table(tensor["morphisms"], 2, "tensor")
        gamma = _table(doc["gamma"], 2, "gamma")
        unit = doc["unit"]
    except KeyError as e:
        raise StructuralError(f"{name}: missing key {e}") from None
    perm = PermutativeStructure(category, objects, morphisms, unit, gamma, name=name)
    if not symmetric:
        return perm
    sym = SymMonoidalStructure.from_permutative(perm)
    sym.associator_table.update(_table(doc.get("associator", []), 3, "associator"))
    sym.left_unitor_table.update(_table(doc.get("left_unitor", []), 1, "left unitor"))
    sym.right_unitor_table.update(_table(doc.get("right_unitor", []), 1, "right unitor"))
    return sym


class _TableFibered(FiberBipermutative):
    """参照表で与えられるファイバー上の構造（厳密・非厳密の共通部分）"""

    def __init__(
        self,
        fibered: FiberedFunctor,
        mult: MonoidalStructure,
        base_mult: MonoidalStructure,
        fiber_add: Dict[Id, MonoidalStructure],
        d_left: Dict[Tuple[Id, Id, Id], Id],
        d_right: Dict[Tuple[Id, Id, Id], Id],
        cross_add: Optional[Dict[Tuple[Id, Id], Id]] = None,
        zero_lift: Optional[Dict[Id, Id]] = None,
        name: str = "fibered bipermutative",
    ):
        """
        初期化

        Args:
            fibered: ファイバー関手 Λ
            mult: 全体圏の ⊗
            base_mult: 基底圏の ⊗
            fiber_add: 基底対象 c → ファイバー上の ⊕_c
            d_left: (x, x′, y) → d^l
            d_right: (x, y, y′) → d^r
            cross_add: 恒等射でない基底射の上の射の和 (g, g′) → g⊕g′
            zero_lift: 基底射 f → 0_f（恒等射の上は省略可）
            name: 表示名
        """
        self.fibered = fibered
        self.total = fibered.total
        self.base = fibered.base
        self.projection = fibered.projection
        self.mult = mult
        self.base_mult = base_mult
        self.fiber_add = dict(fiber_add)
        self.d_left_table = dict(d_left)
        self.d_right_table = dict(d_right)
        self.cross_add = dict(cross_add or {})
        self.zero_lift = dict(zero_lift or {})
        self.name = name
        self._over: Dict[Id, List[Id]] = {}
        self._lifts: Dict[Id, List[Id]] = {}

    def additive(self, c: Id) -> MonoidalStructure:
        try:
            return self.fiber_add[c]
        except KeyError:
            raise StructuralError(f"{self.name}: no additive structure over {format_id(c)}") from None

    def objects_over(self, c: Id) -> List[Id]:
        if c not in self._over:
            self._over[c] = self.fibered.over(c)
        return self._over[c]

    def morphisms_over(self, x: Id, f: Id) -> List[Id]:
        lam = self.projection
        return [g for g in self.total.out_morphisms(x) if lam.mor(g) == f]

    def lifts_of(self, f: Id) -> List[Id]:
        if f not in self._lifts:
            lam = self.projection
            self._lifts[f] = [g for g in self.total.morphisms() if lam.mor(g) == f]
        return self._lifts[f]

    def morphism_pool(self) -> List[Id]:
        return self.total.morphisms()

    def zero(self, c: Id) -> Id:
        return self.additive(c).unit

    def add_obj(self, x: Id, y: Id) -> Id:
        c = self.projection.obj(x)
        if self.projection.obj(y) != c:
            raise StructuralError(f"{self.name}: {format_id(x)} and {format_id(y)} lie in different fibers")
        return self.additive(c).tensor_obj(x, y)

    def add_mor(self, g: Id, h: Id) -> Id:
        lam = self.projection
        f = lam.mor(g)
        if lam.mor(h) != f:
            raise StructuralError(
                f"{self.name}: {format_id(g)} and {format_id(h)} lie over different base morphisms"
            )
        if (g, h) in self.cross_add:
            return self.cross_add[(g, h)]
        c = self.base.dom(f)
        if f == self.base.identity(c):
            return self.additive(c).tensor_mor(g, h)
        raise StructuralError(f"{self.name}: no sum of {format_id(g)} and {format_id(h)}")

    def gamma_add(self, x: Id, y: Id) -> Id:
        return self.additive(self.projection.obj(x)).gamma(x, y)

    def zero_mor(self, f: Id) -> Id:
        if f in self.zero_lift:
            return self.zero_lift[f]
        c = self.base.dom(f)
        if f == self.base.identity(c):
            return self.total.identity(self.zero(c))
        raise StructuralError(f"{self.name}: no zero lift of {format_id(f)}")

    def d_left(self, x: Id, x2: Id, y: Id) -> Id:
        try:
            return self.d_left_table[(x, x2, y)]
        except KeyError:
            raise StructuralError(f"{self.name}: d^l undefined at {format_id((x, x2, y))}") from None

    def d_right(self, x: Id, y: Id, y2: Id) -> Id:
        try:
            return self.d_right_table[(x, y, y2)]
        except KeyError:
            raise StructuralError(f"{self.name}: d^r undefined at {format_id((x, y, y2))}") from None

    def add_associator(self, x: Id, y: Id, z: Id) -> Id:
        return self.additive(self.projection.obj(x)).associator(x, y, z)

    def add_left_unitor(self, x: Id) -> Id:
        return self.additive(self.projection.obj(x)).left_unitor(x)

    def add_right_unitor(self, x: Id) -> Id:
        return self.additive(self.projection.obj(x)).right_unitor(x)

    @classmethod
    def _parts_from_document(cls, doc: Dict, symmetric: bool) -> Dict:
        try:
            fibered = FiberedFunctor.from_document(doc["fibered"])
            mult = structure_from_document(fibered.total, doc["total_tensor"], "⊗", symmetric)
            base_mult = structure_from_document(fibered.base, doc["base_tensor"], "⊗ base", symmetric)
            fiber_add = {
                c: structure_from_document(fiber(fibered, c), sub, f"⊕_{c}", symmetric)
                for c, sub in doc["fibers"].items()
            }
            d_left = _table(doc["d_left"], 3, "d_left")
            d_right = _table(doc["d_right"], 3, "d_right")
        except KeyError as e:
            raise StructuralError(f"fibered bimonoidal document: missing key {e}") from None
        return {
            "fibered": fibered,
            "mult": mult,
            "base_mult": base_mult,
            "fiber_add": fiber_add,
            "d_left": d_left,
            "d_right": d_right,
            "cross_add": _table(doc.get("cross_add", []), 2, "cross_add"),
            "zero_lift": _table(doc.get("zero_lift", []), 1, "zero_lift"),
        }


class FiberBipermData(_TableFibered):
    """有限表で与えられるファイバー双置換圏（⊗ と各 ⊕_c は置換圏）"""

    @classmethod
    def from_document(cls, doc: Dict, name: str = "fibered bipermutative") -> "FiberBipermData":
        return cls(**cls._parts_from_document(doc, symmetric=False), name=name)


class SymBimonFiberData(_TableFibered):
    """厳密とは限らないファイバー対称双モノイダル圏

    ⊗・⊕_c は SymMonoidalStructure、Λ は strict な写像。d^l, d^r は可逆でなくてよい。
    λ*: 0_c⊗y → 0_{c⊗d} と ρ*: x⊗0_d → 0_{c⊗d} は表で与え、省略時は恒等射（対象が一致する場合）。
    """

    def __init__(
        self,
        *args,
        zero_left: Optional[Dict[Tuple[Id, Id], Id]] = None,
        zero_right: Optional[Dict[Tuple[Id, Id], Id]] = None,
        **kwargs,
    ):
        super().__init__(*args, **kwargs)
        self.zero_left_table = dict(zero_left or {})
        self.zero_right_table = dict(zero_right or {})

    def zero_left(self, c: Id, y: Id) -> Id:
        """λ*: 0_c⊗y → 0_{c⊗Λy}"""
        if (c, y) in self.zero_left_table:
            return self.zero_left_table[(c, y)]
        source = self.mult.tensor_obj(self.zero(c), y)
        if source != self.zero(self.base_mult.tensor_obj(c, self.projection.obj(y))):
            raise StructuralError(f"{self.name}: λ* needed at {format_id((c, y))}")
        return self.total.identity(source)

    def zero_right(self, x: Id, c: Id) -> Id:
        """ρ*: x⊗0_c → 0_{Λx⊗c}"""
        if (x, c) in self.zero_right_table:
            return self.zero_right_table[(x, c)]
        source = self.mult.tensor_obj(x, self.zero(c))
        if source != self.zero(self.base_mult.tensor_obj(self.projection.obj(x), c)):
            raise StructuralError(f"{self.name}: ρ* needed at {format_id((x, c))}")
        return self.total.identity(source)

    @classmethod
    def from_document(cls, doc: Dict, name: str = "fibered symmetric bimonoidal") -> "SymBimonFiberData":
        """
        ファイバー対称双モノイダル文書から構成

        Args:
            doc: "fibered", "total_tensor", "base_tensor", "fibers", "d_left", "d_right"
                と任意の "cross_add", "zero_lift", "zero_left", "zero_right" を持つ辞書

        Returns:
            SymBimonFiberData
        """
        parts = cls._parts_from_document(doc, symmetric=True)
        return cls(
            **parts,
            name=name,
            zero_left=_table(doc.get("zero_left", []), 2, "zero_left"),
            zero_right=_table(doc.get("zero_right", []), 2, "zero_right"),
        )


class BipermData:
    """双置換圏 (⊕, 0, γ^⊕) と (⊗, 1, γ^⊗)、分配則 d^l, d^r"""

    def __init__(
        self,
        category: FinCategory,
        additive: PermutativeStructure,
        multiplicative: PermutativeStructure,
        d_left: Dict[Tuple[Id, Id, Id], Id],
        d_right: Dict[Tuple[Id, Id, Id], Id],
        name: str = "bipermutative",
    ):
        self.category = category
        self.additive = additive
        self.multiplicative = multiplicative
        self.d_left = dict(d_left)
        self.d_right = dict(d_right)
        self.name = name

    def as_fibered(self) -> FiberBipermData:
        """1点圏の上のファイバー双置換圏として見る"""
        base_mult = discrete_from_monoid(["*"], {("*", "*"): "*"}, "*", name="terminal")
        base = base_mult.category
        cat = self.category
        projection = FunctorData(
            cat,
            base,
            {x: "*" for x in cat.objects()},
            {f: base.identity("*") for f in cat.morphisms()},
            name="!",
        )
        fibered = FiberedFunctor(cat, base, projection, name=f"{self.name} over *")
        return FiberBipermData(
            fibered,
            self.multiplicative,
            base_mult,
            {"*": self.additive},
            self.d_left,
            self.d_right,
            name=self.name,
        )

    @classmethod
    def from_document(cls, doc: Dict, name: str = "bipermutative") -> "BipermData":
        """"category", "additive", "multiplicative", "d_left", "d_right" を持つ文書から構成"""
        try:
            category = FinCategory.from_document(doc["category"], name=name)
            additive = structure_from_document(category, doc["additive"], "⊕")
            multiplicative = structure_from_document(category, doc["multiplicative"], "⊗")
            d_left = _table(doc["d_left"], 3, "d_left")
            d_right = _table(doc["d_right"], 3, "d_right")
        except KeyError as e:
            raise StructuralError(f"{name}: missing key {e}") from None
        return cls(category, additive, multiplicative, d_left, d_right, name=name)


def _holds(
    report: ValidationReport, name: str, instance: Tuple, lhs: Callable[[], Id], rhs: Callable[[], Id]
) -> bool:
    """図式の両辺を評価して記録（切断外はスキップ、型の合わない合成は違反）"""
    try:
        left = lhs()
        right = rhs()
    except OutsideTruncation:
        report.skip(name)
        return True
    except ComposabilityError as e:
        return report.check(name, False, instance, f"ill-typed composite: {e.message}")
    if left == right:
        return report.check(name, True, instance)
    return report.check(name, False, instance, f"{format_id(left)} != {format_id(right)}")


def _instances(
    report: ValidationReport,
    name: str,
    groups: List[List[List[Id]]],
    sample: Optional[int],
    budget: Optional[WindowBudget] = None,
):
    """
    基底対象の組ごとのプールからインスタンスを生成

    budget があれば足跡の合計が窓に収まる組を全て、なければ直積の全体を列挙する。
    sample を与えたときだけ決定的に間引き、間引いた数をレポートに残す。
    """
    groups = [g for g in groups if all(g)]
    if not groups:
        return
    if budget is not None:
        found = [item for pools in groups for item in bounded_product(pools, budget.measure, budget.window)]
        if sample is not None and len(found) > sample:
            report.note(f"{name}: {sample} of {len(found)} instances sampled")
            found = spread(found, sample)
        yield from found
        return
    cap = None if sample is None else max(1, sample // len(groups))
    total = sum(product_size(g) for g in groups)
    if cap is not None and total > cap * len(groups):
        checked = sum(min(product_size(g), cap) for g in groups)
        report.note(f"{name}: {checked} of {total} instances sampled")
    for pools in groups:
        yield from sample_product(pools, cap)


def _shape_groups(d: FiberBipermutative, shape: str) -> List[List[List[Id]]]:
    """
    ファイバーの形ごとの対象プール

    Args:
        d: 構造
        shape: 各変数が属する基底対象の記号（例 "aab" は x, x′ が同じファイバー）

    Returns:
        プールのリストのリスト
    """
    letters = sorted(set(shape))
    groups = []
    for combo in cartesian(d.base_objects(), repeat=len(letters)):
        assign = dict(zip(letters, combo))
        groups.append([d.objects_over(assign[ch]) for ch in shape])
    return groups


def _require_typed(
    report: ValidationReport,
    name: str,
    d: FiberBipermutative,
    what: str,
    m: Id,
    source: Id,
    target: Id,
    instance: Tuple,
):
    """射の型を確かめてインスタンスごとに記録（型が違えば図式の失敗ではなく StructuralError）"""
    total = d.total
    if total.dom(m) != source or total.cod(m) != target:
        raise StructuralError(
            f"{d.name}: {what} at {format_id(instance)} is {format_id(total.dom(m))} → "
            f"{format_id(total.cod(m))}, expected {format_id(source)} → {format_id(target)}"
        )
    c = d.projection.obj(source)
    if d.projection.mor(m) != d.base.identity(c):
        raise StructuralError(f"{d.name}: {what} at {format_id(instance)} is not a fiber morphism")
    report.check(name, True, (what,) + tuple(instance))


def check_permutative_window(
    report: ValidationReport,
    prefix: str,
    m: MonoidalStructure,
    objects: List[Id],
    morphisms: List[Id],
    sample: Optional[int],
    budget: Optional[WindowBudget] = None,
):
    """
    置換圏の公理をウィンドウ上で検査（厳密な結合・単位を前提）

    Args:
        report: 記録先
        prefix: 検査名の接頭辞
        m: 構造
        objects: 対象のプール
        morphisms: 射のプール
        sample: 図式ごとのインスタンス上限（None なら間引かない）
        budget: インスタンスの足跡の予算（None なら直積の全体）
    """
    if budget is not None:
        objects, morphisms = budget.restrict(objects), budget.restrict(morphisms)
    cat = m.category
    ident, comp = cat.identity, cat.compose
    tO, tM, gamma = m.tensor_obj, m.tensor_mor, m.gamma
    one = m.unit

    name = prefix + "tensor.identity"
    for x, y in _instances(report, name, [[objects, objects]], sample, budget):
        _holds(report, name, (x, y), lambda: tM(ident(x), ident(y)), lambda: ident(tO(x, y)))

    by_dom: Dict[Id, List[Id]] = {}
    for f in morphisms:
        by_dom.setdefault(cat.dom(f), []).append(f)
    chains = [(f, g) for f in morphisms for g in by_dom.get(cat.cod(f), [])]
    chain_budget = None
    if budget is not None:
        chain_budget = budget.chained()
        chains = chain_budget.restrict(chains)
    name = prefix + "tensor.compose"
    for (f, g), (f2, g2) in _instances(report, name, [[chains, chains]], sample, chain_budget):
        _holds(
            report,
            name,
            (f, g, f2, g2),
            lambda: tM(comp(g, f), comp(g2, f2)),
            lambda: comp(tM(g, g2), tM(f, f2)),
        )

    name = prefix + "assoc.objects"
    for x, y, z in _instances(report, name, [[objects] * 3], sample, budget):
        _holds(report, name, (x, y, z), lambda: tO(tO(x, y), z), lambda: tO(x, tO(y, z)))
    name = prefix + "assoc.morphisms"
    for f, g, h in _instances(report, name, [[morphisms] * 3], sample, budget):
        _holds(report, name, (f, g, h), lambda: tM(tM(f, g), h), lambda: tM(f, tM(g, h)))

    name = prefix + "unit.objects"
    for x in objects:
        _holds(report, name, ("left", x), lambda: tO(one, x), lambda: x)
        _holds(report, name, ("right", x), lambda: tO(x, one), lambda: x)
    name = prefix + "unit.morphisms"
    for f in spread(morphisms, sample):
        _holds(report, name, ("left", f), lambda: tM(ident(one), f), lambda: f)
        _holds(report, name, ("right", f), lambda: tM(f, ident(one)), lambda: f)

    name = prefix + "gamma.involution"
    for x, y in _instances(report, name, [[objects, objects]], sample, budget):
        _holds(report, name, (x, y), lambda: comp(gamma(y, x), gamma(x, y)), lambda: ident(tO(x, y)))
    name = prefix + "gamma.unit"
    for x in objects:
        _holds(report, name, (x,), lambda: gamma(x, one), lambda: ident(x))
    name = prefix + "gamma.hexagon"
    for x, y, z in _instances(report, name, [[objects] * 3], sample, budget):
        _holds(
            report,
            name,
            (x, y, z),
            lambda: gamma(x, tO(y, z)),
            lambda: comp(tM(ident(y), gamma(x, z)), tM(gamma(x, y), ident(z))),
        )
    name = prefix + "gamma.natural"
    for f, g in _instances(report, name, [[morphisms, morphisms]], sample, budget):
        _holds(
            report,
            name,
            (f, g),
            lambda: comp(gamma(cat.cod(f), cat.cod(g)), tM(f, g)),
            lambda: comp(tM(g, f), gamma(cat.dom(f), cat.dom(g))),
        )


def _check_zero_objects(d: FiberBipermutative, report: ValidationReport, name: str, sample: Optional[int]):
    tO, base_tO = d.mult.tensor_obj, d.base_mult.tensor_obj
    for c, e in cartesian(d.base_objects(), repeat=2):
        target = d.zero(base_tO(c, e))
        for x in spread(d.objects_over(c), sample):
            _holds(report, name, ("right", x, e), lambda: tO(x, d.zero(e)), lambda: target)
        for y in spread(d.objects_over(e), sample):
            _holds(report, name, ("left", c, y), lambda: tO(d.zero(c), y), lambda: target)


def check_distributivity(d: FiberBipermutative, report: ValidationReport, prefix: str, sample: Optional[int]):
    """
    分配則の図式 (1)–(5) と d^r 側の対応する図式を検査

    d^l, d^r の型が合わない場合は図式の失敗ではなく StructuralError を送出する。

    Args:
        d: 構造
        report: 記録先
        prefix: "a." または "b."
        sample: 図式ごとのインスタンス上限

    Raises:
        StructuralError: 分配射の始域・終域が期待と異なる場合
    """
    T, M = d.total, d.mult
    budget = d.instance_budget()
    ident, comp = T.identity, T.compose
    tO, tM = M.tensor_obj, M.tensor_mor
    add, addm, ga = d.add_obj, d.add_mor, d.gamma_add
    dl, dr = d.d_left, d.d_right

    name = prefix + "typing"
    for x, x2, y in _instances(report, name, _shape_groups(d, "aab"), sample, budget):
        source, target = add(tO(x, y), tO(x2, y)), tO(add(x, x2), y)
        _require_typed(report, name, d, "d^l", dl(x, x2, y), source, target, (x, x2, y))
    for x, y, y2 in _instances(report, name, _shape_groups(d, "abb"), sample, budget):
        source, target = add(tO(x, y), tO(x, y2)), tO(x, add(y, y2))
        _require_typed(report, name, d, "d^r", dr(x, y, y2), source, target, (x, y, y2))

    _check_zero_objects(d, report, prefix + "zero", sample)

    name = prefix + "1"
    for x, x2, x3, y in _instances(report, name, _shape_groups(d, "aaab"), sample, budget):
        _holds(
            report,
            name,
            ("l", x, x2, x3, y),
            lambda: comp(dl(add(x, x2), x3, y), addm(dl(x, x2, y), ident(tO(x3, y)))),
            lambda: comp(dl(x, add(x2, x3), y), addm(ident(tO(x, y)), dl(x2, x3, y))),
        )
    for x, y, y2, y3 in _instances(report, name, _shape_groups(d, "abbb"), sample, budget):
        _holds(
            report,
            name,
            ("r", x, y, y2, y3),
            lambda: comp(dr(x, y, add(y2, y3)), addm(ident(tO(x, y)), dr(x, y2, y3))),
            lambda: comp(dr(x, add(y, y2), y3), addm(dr(x, y, y2), ident(tO(x, y3)))),
        )

    name = prefix + "2"
    for x, x2, y in _instances(report, name, _shape_groups(d, "aab"), sample, budget):
        _holds(
            report,
            name,
            ("l", x, x2, y),
            lambda: comp(tM(ga(x, x2), ident(y)), dl(x, x2, y)),
            lambda: comp(dl(x2, x, y), ga(tO(x, y), tO(x2, y))),
        )
    for x, y, y2 in _instances(report, name, _shape_groups(d, "abb"), sample, budget):
        _holds(
            report,
            name,
            ("r", x, y, y2),
            lambda: comp(tM(ident(x), ga(y, y2)), dr(x, y, y2)),
            lambda: comp(dr(x, y2, y), ga(tO(x, y), tO(x, y2))),
        )

    name = prefix + "3"
    for x, x2, y, z in _instances(report, name, _shape_groups(d, "aabc"), sample, budget):
        _holds(
            report,
            name,
            ("l", x, x2, y, z),
            lambda: dl(x, x2, tO(y, z)),
            lambda: comp(tM(dl(x, x2, y), ident(z)), dl(tO(x, y), tO(x2, y), z)),
        )
    for x, y, z, z2 in _instances(report, name, _shape_groups(d, "abcc"), sample, budget):
        _holds(
            report,
            name,
            ("r", x, y, z, z2),
            lambda: dr(tO(x, y), z, z2),
            lambda: comp(tM(ident(x), dr(y, z, z2)), dr(x, tO(y, z), tO(y, z2))),
        )

    name = prefix + "4"
    for x, x2, y, y2 in _instances(report, name, _shape_groups(d, "aabb"), sample, budget):

        def middle():
            return addm(ident(tO(x, y)), addm(ga(tO(x, y2), tO(x2, y)), ident(tO(x2, y2))))

        _holds(
            report,
            name,
            (x, x2, y, y2),
            lambda: compose_path(T, [dr(add(x, x2), y, y2), addm(dl(x, x2, y), dl(x, x2, y2)), middle()]),
            lambda: comp(dl(x, x2, add(y, y2)), addm(dr(x, y, y2), dr(x2, y, y2))),
        )

    name = prefix + "5"
    for x, x2, y in _instances(report, name, _shape_groups(d, "aab"), sample, budget):
        _holds(
            report,
            name,
            (x, x2, y),
            lambda: comp(M.gamma(add(x, x2), y), dl(x, x2, y)),
            lambda: comp(dr(y, x, x2), addm(M.gamma(x, y), M.gamma(x2, y))),
        )


def _lift_pairs(d: FiberBipermutative) -> List[Tuple[Id, List[Id]]]:
    return [(f, d.lifts_of(f)) for f in d.base_morphisms()]


def check_naturality(d: FiberBipermutative, report: ValidationReport, name: str, sample: Optional[int]):
    """
    分配射の自然性: g, g′ が f の上、h が f′ の上にあるとき
    ((g⊕g′)⊗h)∘d^l = d^l∘((g⊗h)⊕(g′⊗h)) と d^r 側の対応する等式
    """
    T, M = d.total, d.mult
    budget = d.instance_budget()
    comp, tM = T.compose, M.tensor_mor
    addm, dl, dr = d.add_mor, d.d_left, d.d_right
    dom, cod = T.dom, T.cod
    lifts = [(f, pool) for f, pool in _lift_pairs(d) if pool]
    groups = [[p, p, q] for (_, p), (_, q) in cartesian(lifts, repeat=2)]
    for g, g2, h in _instances(report, name, groups, sample, budget):
        _holds(
            report,
            name,
            ("l", g, g2, h),
            lambda: comp(tM(addm(g, g2), h), dl(dom(g), dom(g2), dom(h))),
            lambda: comp(dl(cod(g), cod(g2), cod(h)), addm(tM(g, h), tM(g2, h))),
        )
        _holds(
            report,
            name,
            ("r", h, g, g2),
            lambda: comp(tM(h, addm(g, g2)), dr(dom(h), dom(g), dom(g2))),
            lambda: comp(dr(cod(h), cod(g), cod(g2)), addm(tM(h, g), tM(h, g2))),
        )


def check_fiber_addition(
    d: FiberBipermutative, report: ValidationReport, names: Dict[str, str], sample: Optional[int]
):
    """
    基底射の上の射の和についての条件

    ⊕ の関手性、結合の四角、γ^⊕ の四角、0_f の単位律、0_f の関手性と 0_id = id。
    結合子・単位子は厳密な構造では恒等射なので、同じ図式が (b.6)–(b.9) にも対称双モノイダルの入力の条件にもなる。

    Args:
        d: 構造
        report: 記録先
        names: 条件名 → 検査名（"functorial", "assoc", "gamma", "unit", "zero_functorial", "zero_identity"）
        sample: 図式ごとのインスタンス上限
    """
    T, base = d.total, d.base
    budget = d.instance_budget()
    comp, ident, dom, cod = T.compose, T.identity, T.dom, T.cod
    addm, ga = d.add_mor, d.gamma_add
    lifts = [(f, pool) for f, pool in _lift_pairs(d) if pool]

    name = names["functorial"]
    squares = []
    for f, pool in lifts:
        for f2 in base.out_morphisms(base.cod(f)):
            for g, g2 in _instances(report, name, [[pool, pool]], None, budget):
                for h in d.morphisms_over(cod(g), f2):
                    for h2 in d.morphisms_over(cod(g2), f2):
                        if budget is None or budget.fits((g, g2, h, h2)):
                            squares.append((g, g2, h, h2))
    if sample is not None and len(squares) > sample:
        report.note(f"{name}: {sample} of {len(squares)} instances sampled")
        squares = spread(squares, sample)
    for g, g2, h, h2 in squares:
        _holds(
            report,
            name,
            (g, g2, h, h2),
            lambda: addm(comp(h, g), comp(h2, g2)),
            lambda: comp(addm(h, h2), addm(g, g2)),
        )

    name = names["assoc"]
    for g, g2, g3 in _instances(report, name, [[p, p, p] for _, p in lifts], sample, budget):
        _holds(
            report,
            name,
            (g, g2, g3),
            lambda: comp(d.add_associator(cod(g), cod(g2), cod(g3)), addm(addm(g, g2), g3)),
            lambda: comp(addm(g, addm(g2, g3)), d.add_associator(dom(g), dom(g2), dom(g3))),
        )

    name = names["gamma"]
    for g, g2 in _instances(report, name, [[p, p] for _, p in lifts], sample, budget):
        _holds(
            report,
            name,
            (g, g2),
            lambda: comp(ga(cod(g), cod(g2)), addm(g, g2)),
            lambda: comp(addm(g2, g), ga(dom(g), dom(g2))),
        )

    name = names["unit"]
    for f, pool in lifts:
        for g in spread(pool, sample):
            _holds(
                report,
                name,
                ("right", g),
                lambda: comp(d.add_right_unitor(cod(g)), addm(g, d.zero_mor(f))),
                lambda: comp(g, d.add_right_unitor(dom(g))),
            )
            _holds(
                report,
                name,
                ("left", g),
                lambda: comp(d.add_left_unitor(cod(g)), addm(d.zero_mor(f), g)),
                lambda: comp(g, d.add_left_unitor(dom(g))),
            )

    name = names["zero_functorial"]
    for f in d.base_morphisms():
        for f2 in base.out_morphisms(base.cod(f)):
            _holds(
                report,
                name,
                (f2, f),
                lambda: d.zero_mor(base.compose(f2, f)),
                lambda: comp(d.zero_mor(f2), d.zero_mor(f)),
            )
    name = names["zero_identity"]
    for c in d.base_objects():
        _holds(report, name, (c,), lambda: d.zero_mor(base.identity(c)), lambda: ident(d.zero(c)))


def check_projection_strict(d: FiberBipermutative, report: ValidationReport, prefix: str, sample: Optional[int]):
    """Λ が ⊗ について strict で、射の和が同じ基底射の上にあるか"""
    lam, M, B = d.projection, d.mult, d.base_mult
    budget = d.instance_budget()
    objects = d.window_objects()
    morphisms = d.morphism_pool()
    name = prefix + "strict.objects"
    _holds(report, name, ("unit",), lambda: lam.obj(M.unit), lambda: B.unit)
    for x, y in _instances(report, name, [[objects, objects]], sample, budget):
        _holds(report, name, (x, y), lambda: lam.obj(M.tensor_obj(x, y)), lambda: B.tensor_obj(lam.obj(x), lam.obj(y)))
    name = prefix + "strict.gamma"
    for x, y in _instances(report, name, [[objects, objects]], sample, budget):
        _holds(report, name, (x, y), lambda: lam.mor(M.gamma(x, y)), lambda: B.gamma(lam.obj(x), lam.obj(y)))
    name = prefix + "strict.morphisms"
    for g, h in _instances(report, name, [[morphisms, morphisms]], sample, budget):
        _holds(report, name, (g, h), lambda: lam.mor(M.tensor_mor(g, h)), lambda: B.tensor_mor(lam.mor(g), lam.mor(h)))
    name = prefix + "strict.sum"
    for f, pool in _lift_pairs(d):
        for g, g2 in _instances(report, name, [[pool, pool]], sample, budget):
            _holds(report, name, (g, g2), lambda: lam.mor(d.add_mor(g, g2)), lambda: f)


def _check_structures(d: FiberBipermutative, report: ValidationReport, prefix: str, sample: Optional[int]):
    budget = d.instance_budget()
    check_permutative_window(report, prefix + "mult.", d.mult, d.window_objects(), d.morphism_pool(), sample, budget)
    for c in d.base_objects():
        ident_c = d.base.identity(c)
        check_permutative_window(
            report,
            prefix + "add.",
            d.fiber_structure(c),
            d.objects_over(c),
            d.lifts_of(ident_c),
            sample,
            budget,
        )


def validate_bipermutative(d: BipermData, sample: Optional[int] = None) -> ValidationReport:
    """
    双置換圏の公理を検査

    ⊕・⊗ の置換圏公理、x⊗0 = 0 = 0⊗x、(a.1)–(a.5) と d^r 側の図式、分配射の自然性。

    Args:
        d: 双置換圏のデータ
        sample: 図式ごとのインスタンス上限（None なら全列挙）

    Returns:
        検査名 "a.1" … "a.5", "a.zero", "a.natural", "a.add.*", "a.mult.*" のレポート

    Raises:
        StructuralError: d^l, d^r の型が合わない場合
    """
    fib = d.as_fibered()
    report = ValidationReport(f"bipermutative {d.name}", {"sample": sample or "all"})
    _check_structures(fib, report, "a.", sample)
    check_distributivity(fib, report, "a.", sample)
    check_naturality(fib, report, "a.natural", sample)
    logger.info("bipermutative %s: ok=%s", d.name, report.ok)
    return report


B_NAMES = {
    "functorial": "b.6",
    "assoc": "b.7",
    "gamma": "b.8",
    "unit": "b.9",
    "zero_functorial": "b.zero_functorial",
    "zero_identity": "b.zero_identity",
}


def validate_fibered_biperm(d: FiberBipermutative, window=None) -> ValidationReport:
    """
    ファイバー双置換圏の条件 (b.1)–(b.10) を検査

    有限表のデータは全列挙、厳密化の出力は足跡が窓に収まるインスタンスを全て検査し、
    使った上限をレポートに記録する。標本を使うのは標本数を指定したときだけ。

    Args:
        d: 構造（FiberBipermData または厳密化の出力）
        window: 標本数を上書きする Window（窓の大きさは d の構成時に決まる）

    Returns:
        検査名 "b.1" … "b.10" と "b.zero", "b.zero_functorial", "b.zero_identity",
        "b.strict.*", "b.mult.*", "b.add.*" のレポート

    Raises:
        StructuralError: d^l, d^r の型が合わない場合
    """
    sample = window.sample if window is not None else d.sample
    bounds = dict(d.bounds())
    bounds["sample"] = sample or "all"
    report = ValidationReport(f"fibered bipermutative {d.name}", bounds)
    if isinstance(d, _TableFibered):
        report.merge(validate_fibered(d.fibered), prefix="b.")
    _check_structures(d, report, "b.", sample)
    check_projection_strict(d, report, "b.", sample)
    check_distributivity(d, report, "b.", sample)
    check_fiber_addition(d, report, B_NAMES, sample)
    check_naturality(d, report, "b.10", sample)
    logger.info("fibered bipermutative %s: ok=%s", d.name, report.ok)
    return report


SYMBIMON_NAMES = {
    "functorial": "symbimon.add_functorial",
    "assoc": "symbimon.assoc_square",
    "gamma": "symbimon.gamma_square",
    "unit": "symbimon.zero_unit",
    "zero_functorial": "symbimon.zero_functorial",
    "zero_identity": "symbimon.zero_identity",
}


def validate_symbimon(d: SymBimonFiberData) -> ValidationReport:
    """
    ファイバー対称双モノイダル圏の入力を検査

    Λ のファイバー性、各構造の対称モノイダル公理、Λ が strict であること、
    分配射と λ*, ρ* の型、射の和の四角（γ^⊕・結合子）、0_f の単位三角形と関手性、分配射の自然性。
    Laplaza 型の残りの整合性は検査しない。

    Args:
        d: 入力データ

    Returns:
        検査名 "symbimon.*" のレポート

    Raises:
        StructuralError: 分配射・λ*・ρ* の型が合わない場合
    """
    report = ValidationReport(f"fibered symmetric bimonoidal {d.name}")
    report.merge(validate_fibered(d.fibered), prefix="symbimon.")
    report.merge(validate_symmetric_monoidal(d.mult), prefix="symbimon.mult.")
    report.merge(validate_symmetric_monoidal(d.base_mult), prefix="symbimon.base.")
    for structure in d.fiber_add.values():
        report.merge(validate_symmetric_monoidal(structure), prefix="symbimon.add.")
    mapping = MonoidalMap(d.projection, d.mult, d.base_mult, "strict", name=d.fibered.name)
    report.merge(validate_monoidal_map(mapping), prefix="symbimon.projection.")

    tO, add = d.mult.tensor_obj, d.add_obj
    name = "symbimon.typing"
    for x, x2, y in _instances(report, name, _shape_groups(d, "aab"), None):
        source, target = add(tO(x, y), tO(x2, y)), tO(add(x, x2), y)
        _require_typed(report, name, d, "d^l", d.d_left(x, x2, y), source, target, (x, x2, y))
    for x, y, y2 in _instances(report, name, _shape_groups(d, "abb"), None):
        source, target = add(tO(x, y), tO(x, y2)), tO(x, add(y, y2))
        _require_typed(report, name, d, "d^r", d.d_right(x, y, y2), source, target, (x, y, y2))
    base_tO = d.base_mult.tensor_obj
    for c, e in cartesian(d.base_objects(), repeat=2):
        target = d.zero(base_tO(c, e))
        for y in d.objects_over(e):
            _require_typed(report, name, d, "λ*", d.zero_left(c, y), tO(d.zero(c), y), target, (c, y))
        for x in d.objects_over(c):
            _require_typed(report, name, d, "ρ*", d.zero_right(x, e), tO(x, d.zero(e)), target, (x, e))

    check_fiber_addition(d, report, SYMBIMON_NAMES, None)
    check_naturality(d, report, "symbimon.natural", None)
    logger.info("fibered symmetric bimonoidal %s: ok=%s", d.name, report.ok)
    return report
