#!/usr/bin/env python3
"""
厳密化

対称モノイダル圏 𝒞 を形式的な列の置換圏 𝒞^s に、ファイバー対称双モノイダル圏 Λ: 𝒟 → 𝒞 を
ファイバー双置換圏 Λ^s: 𝒟^s → 𝒞^s に置き換える。𝒞^s と 𝒟^s は無限なので対象を必要に応じて作り、
検査はウィンドウの上で行う。対象の足跡は列の長さの合計と和の項数、射の足跡は始域と終域の足跡の和で、
図式のインスタンスは変数の足跡の合計がウィンドウに収まるものを全て回す。
"""

import logging
import threading
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from catforge.biperm import (
    BipermData,
    FiberBipermData,
    FiberBipermutative,
    SymBimonFiberData,
    _holds,
    _instances,
    _shape_groups,
    check_permutative_window,
    validate_bipermutative,
    validate_fibered_biperm,
    validate_symbimon,
)
from catforge.bounds import Footprint, Window, WindowBudget, bounded_product, spread
from catforge.errors import ComposabilityError, ConstructionError, StructuralError
from catforge.fibration import choose_pullbacks, fill_in
from catforge.fincat import Category, FunctionalFunctor, Functor, Id, compose_path, format_id, validate_category
from catforge.monostruct import (
    FunctionalPermutative,
    MonoidalStructure,
    merge_iso,
    nested_permutation,
    tensor_all,
)
from catforge.report import ValidationReport

logger = logging.getLogger(__name__)

__all__ = [
    "BipermData",
    "FiberBipermData",
    "SymBimonFiberData",
    "Window",
    "StrictMorphism",
    "StrictTotalObject",
    "StrictTotalMorphism",
    "StrictBase",
    "StrictTotal",
    "strictify_base",
    "strictify_total",
    "validate_strict_base",
    "validate_strictified",
    "validate_bipermutative",
    "validate_fibered_biperm",
    "validate_symbimon",
    "equivalence_check",
    "validate_fibered_morphism",
    "strictification_morphism",
    "unit_section",
    "window_document",
]

FormalTensor = Tuple[Id, ...]


class _Memo:
    """スレッドから共有できるメモ"""

    def __init__(self):
        self._lock = threading.Lock()
        self._values: Dict[Any, Any] = {}

    def get(self, key: Any, compute: Callable[[], Any]) -> Any:
        with self._lock:
            if key in self._values:
                return self._values[key]
        value = compute()
        with self._lock:
            return self._values.setdefault(key, value)


def _invert(cat: Category, m: Id) -> Id:
    inverse = cat.inverse(m)
    if inverse is None:
        raise ConstructionError(f"{cat.name}: expected an isomorphism", witness=m)
    return inverse


class StrictMorphism(NamedTuple):
    """𝒞^s の射（arrow は 𝒞 の射 Φ(source) → Φ(target)）"""

    source: FormalTensor
    target: FormalTensor
    arrow: Id


def base_footprint(item: Id) -> Footprint:
    """𝒞^s の対象（列の長さ）と射（始域と終域の長さの和）の足跡"""
    if isinstance(item, StrictMorphism):
        return len(item.source) + len(item.target), 0
    return len(item), 0


class StrictBaseCategory(Category):
    """形式的な列 c₁⊠⋯⊠cₙ を対象とする圏 𝒞^s（Hom(c̄, d̄) = Hom_𝒞(Φc̄, Φd̄)）"""

    def __init__(self, monoidal: MonoidalStructure, window: Window):
        self.monoidal = monoidal
        self.underlying = monoidal.category
        self.window = window
        self.name = f"{self.underlying.name}^s"
        self._memo = _Memo()

    def evaluate(self, seq: FormalTensor) -> Id:
        """Φ(c̄) = c₁⊗(c₂⊗(⋯⊗cₙ))、Φ(()) = 1"""
        return self._memo.get(("phi", seq), lambda: tensor_all(self.monoidal, list(seq)))

    def objects(self) -> List[Id]:
        return self._memo.get(
            "objects",
            lambda: [
                tuple(t)
                for n in range(self.window.seq + 1)
                for t in cartesian(self.underlying.objects(), repeat=n)
            ],
        )

    def morphisms(self) -> List[Id]:
        objects = self.objects()
        return [m for a in objects for b in objects for m in self.hom(a, b)]

    def hom(self, a: Id, b: Id) -> List[Id]:
        return [StrictMorphism(a, b, f) for f in self.underlying.hom(self.evaluate(a), self.evaluate(b))]

    def _morphism(self, f: Id) -> StrictMorphism:
        if not isinstance(f, StrictMorphism):
            raise StructuralError(f"{self.name}: not a morphism {format_id(f)}")
        return f

    def dom(self, f: Id) -> Id:
        return self._morphism(f).source

    def cod(self, f: Id) -> Id:
        return self._morphism(f).target

    def identity(self, a: Id) -> Id:
        return StrictMorphism(a, a, self.underlying.identity(self.evaluate(a)))

    def compose(self, g: Id, f: Id) -> Id:
        f, g = self._morphism(f), self._morphism(g)
        if f.target != g.source:
            raise ComposabilityError(f"{self.name}: cannot compose {format_id(g)} after {format_id(f)}")
        return StrictMorphism(f.source, g.target, self.underlying.compose(g.arrow, f.arrow))

    def inverse(self, f: Id) -> Optional[Id]:
        f = self._morphism(f)
        arrow = self.underlying.inverse(f.arrow)
        return None if arrow is None else StrictMorphism(f.target, f.source, arrow)

    def has_object(self, a: Id) -> bool:
        return isinstance(a, tuple) and all(self.underlying.has_object(c) for c in a)

    def has_morphism(self, f: Id) -> bool:
        return (
            isinstance(f, StrictMorphism)
            and self.has_object(f.source)
            and self.has_object(f.target)
            and f.arrow in self.underlying.hom(self.evaluate(f.source), self.evaluate(f.target))
        )


class StrictBaseStructure(MonoidalStructure):
    """𝒞^s 上の ⊠（連結）と γ^⊠"""

    def __init__(self, category: StrictBaseCategory):
        self.category = category
        self.unit = ()
        self.name = f"⊠ on {category.name}"
        self._memo = _Memo()

    def merge(self, a: FormalTensor, b: FormalTensor) -> Id:
        """括弧の付け替え Φa⊗Φb → Φ(a⊠b)（𝒞 の射）"""
        m = self.category.monoidal
        return self._memo.get(("merge", a, b), lambda: merge_iso(m, list(a), list(b)))

    def tensor_obj(self, x: Id, y: Id) -> Id:
        return tuple(x) + tuple(y)

    def tensor_mor(self, f: Id, g: Id) -> Id:
        cat = self.category
        f, g = cat._morphism(f), cat._morphism(g)
        C, m = cat.underlying, cat.monoidal
        arrow = compose_path(
            C,
            [
                self.merge(f.target, g.target),
                m.tensor_mor(f.arrow, g.arrow),
                _invert(C, self.merge(f.source, g.source)),
            ],
        )
        return StrictMorphism(f.source + g.source, f.target + g.target, arrow)

    def gamma(self, x: Id, y: Id) -> Id:
        cat = self.category
        C, m = cat.underlying, cat.monoidal
        arrow = compose_path(
            C,
            [self.merge(y, x), m.gamma(cat.evaluate(x), cat.evaluate(y)), _invert(C, self.merge(x, y))],
        )
        return StrictMorphism(x + y, y + x, arrow)


@dataclass(eq=False)
class StrictBase:
    """strictify_base の結果（𝒞^s, ⊠, Φ, Φ′）"""

    monoidal: MonoidalStructure
    window: Window
    category: StrictBaseCategory
    structure: StrictBaseStructure
    evaluate: Functor
    embed: Functor


def strictify_base(M: MonoidalStructure, window: Optional[Window] = None) -> StrictBase:
    """
    対称モノイダル圏を同値な置換圏 𝒞^s に置き換える

    Args:
        M: 𝒞 上の対称モノイダル構造
        window: 検査ウィンドウ（objects() が列挙する列の長さ）

    Returns:
        StrictBase（Φ: 𝒞^s → 𝒞 と Φ′: 𝒞 → 𝒞^s 付き）
    """
    window = window or Window()
    category = StrictBaseCategory(M, window)
    structure = StrictBaseStructure(category)
    C = M.category
    evaluate = FunctionalFunctor(category, C, category.evaluate, lambda f: f.arrow, name="Φ")
    embed = FunctionalFunctor(
        C,
        category,
        lambda c: (c,),
        lambda f: StrictMorphism((C.dom(f),), (C.cod(f),), f),
        name="Φ′",
    )
    logger.debug("strictified base %s (seq ≤ %d)", C.name, window.seq)
    return StrictBase(M, window, category, structure, evaluate, embed)


def validate_strict_base(base: StrictBase) -> ValidationReport:
    """
    𝒞^s の圏の公理と ⊠ の置換圏公理をウィンドウ上で検査

    Args:
        base: strictify_base の結果

    Returns:
        検査名 "strict.category.*", "strict.*" のレポート
    """
    report = ValidationReport(f"strict {base.category.name}", base.window.as_bounds())
    budget = WindowBudget(base.window, base_footprint)
    report.merge(validate_category(base.category, budget), prefix="strict.")
    cat = base.category
    check_permutative_window(
        report, "strict.", base.structure, cat.objects(), cat.morphisms(), base.window.sample, budget
    )
    return report


class StrictTotalObject(NamedTuple):
    """𝒟^s の対象 (c̄, (x̄₁, f₁)⊞⋯⊞(x̄ₘ, fₘ))（f_i: Φ(c̄) → Λ(Δx̄_i) は同型）"""

    base: FormalTensor
    summands: Tuple[Tuple[FormalTensor, Id], ...]


class StrictTotalMorphism(NamedTuple):
    """𝒟^s の射（arrow は 𝒟 の射 Θ(source) → Θ(target)）"""

    source: StrictTotalObject
    target: StrictTotalObject
    arrow: Id


class StrictTotalCategory(Category):
    """𝒟^s（Hom(X, Y) = Hom_𝒟(ΘX, ΘY)）"""

    def __init__(self, owner: "StrictTotal"):
        self.owner = owner
        self.underlying = owner.data.total
        self.name = f"{self.underlying.name}^s"

    def objects(self) -> List[Id]:
        return self.owner.window_objects()

    def morphisms(self) -> List[Id]:
        return [m for x in self.objects() for m in self.out_morphisms(x)]

    def hom(self, a: Id, b: Id) -> List[Id]:
        theta = self.owner.theta
        return [StrictTotalMorphism(a, b, g) for g in self.underlying.hom(theta(a), theta(b))]

    def out_morphisms(self, a: Id) -> List[Id]:
        result = []
        for g in self.underlying.out_morphisms(self.owner.theta(a)):
            for b in self.owner.objects_with_theta(self.underlying.cod(g)):
                result.append(StrictTotalMorphism(a, b, g))
        return result

    def _morphism(self, f: Id) -> StrictTotalMorphism:
        if not isinstance(f, StrictTotalMorphism):
            raise StructuralError(f"{self.name}: not a morphism {format_id(f)}")
        return f

    def dom(self, f: Id) -> Id:
        return self._morphism(f).source

    def cod(self, f: Id) -> Id:
        return self._morphism(f).target

    def identity(self, a: Id) -> Id:
        return StrictTotalMorphism(a, a, self.underlying.identity(self.owner.theta(a)))

    def compose(self, g: Id, f: Id) -> Id:
        f, g = self._morphism(f), self._morphism(g)
        if f.target != g.source:
            raise ComposabilityError(f"{self.name}: cannot compose {format_id(g)} after {format_id(f)}")
        return StrictTotalMorphism(f.source, g.target, self.underlying.compose(g.arrow, f.arrow))

    def inverse(self, f: Id) -> Optional[Id]:
        f = self._morphism(f)
        arrow = self.underlying.inverse(f.arrow)
        return None if arrow is None else StrictTotalMorphism(f.target, f.source, arrow)

    def has_object(self, a: Id) -> bool:
        return self.owner.well_formed(a)

    def has_morphism(self, f: Id) -> bool:
        return (
            isinstance(f, StrictTotalMorphism)
            and self.has_object(f.source)
            and self.has_object(f.target)
            and f.arrow in self.hom(f.source, f.target)
        )


class StrictTotal(FiberBipermutative):
    """strictify_total の結果: ファイバー双置換圏 Λ^s: 𝒟^s → 𝒞^s と Θ, Θ′, Φ, Φ′

    𝒟^s の ⊠・⊞・γ・分配射は、要求されたときに 𝒟 の射として計算してメモする。
    """

    def __init__(self, data: SymBimonFiberData, window: Window):
        """
        初期化

        Args:
            data: 入力のファイバー対称双モノイダル圏
            window: 検査ウィンドウ
        """
        self.data = data
        self.window = window
        self.sample = window.sample
        self.name = f"{data.name}^s"
        self.strict_base = strictify_base(data.base_mult, window)
        self.base = self.strict_base.category
        self.base_mult = self.strict_base.structure
        self.choice = choose_pullbacks(data.fibered)
        self.total = StrictTotalCategory(self)
        C = data.base
        self.unit_object = StrictTotalObject((), (((), C.identity(data.base_mult.unit)),))
        self.mult = FunctionalPermutative(
            self.total, self.tensor_obj, self.tensor_mor, self.unit_object, self.gamma_mult, name=f"⊠ on {self.total.name}"
        )
        self.projection = FunctionalFunctor(self.total, self.base, lambda x: x.base, self._project, name="Λ^s")
        self.theta_functor = FunctionalFunctor(self.total, data.total, self.theta, lambda g: g.arrow, name="Θ")
        self.theta_prime = FunctionalFunctor(data.total, self.total, self.embed_object, self.embed_morphism, name="Θ′")
        self._memo = _Memo()

    # Θ と対象の列挙

    def phi(self, cbar: FormalTensor) -> Id:
        return self.base.evaluate(cbar)

    def delta(self, xs: FormalTensor) -> Id:
        """Δ(x̄) = x₁⊗(⋯⊗x_k)（右入れ子、Δ(()) = 1）"""
        return self._memo.get(("delta", xs), lambda: tensor_all(self.data.mult, list(xs)))

    def term(self, summand: Tuple[FormalTensor, Id]) -> Id:
        xs, f = summand
        return self.choice.pullback(f, self.delta(xs))

    def eta(self, summand: Tuple[FormalTensor, Id]) -> Id:
        xs, f = summand
        return self.choice.lift(f, self.delta(xs))

    def terms(self, x: StrictTotalObject) -> List[Id]:
        return [self.term(s) for s in x.summands]

    def theta(self, x: StrictTotalObject) -> Id:
        """Θ(X) = f₁*Δx̄₁ ⊕ ⋯ ⊕ fₘ*Δx̄ₘ（項がなければ 0_{Φc̄}）"""
        return self._memo.get(
            ("theta", x), lambda: tensor_all(self.data.additive(self.phi(x.base)), self.terms(x))
        )

    def well_formed(self, x: Id) -> bool:
        if not isinstance(x, StrictTotalObject) or not self.base.has_object(x.base):
            return False
        C, lam = self.data.base, self.data.projection
        c = self.phi(x.base)
        for xs, f in x.summands:
            if not all(self.data.total.has_object(v) for v in xs) or not C.has_morphism(f):
                return False
            if C.dom(f) != c or C.cod(f) != lam.obj(self.delta(xs)) or not C.is_iso(f):
                return False
        return True

    def summand_candidates(self, cbar: FormalTensor) -> List[Tuple[FormalTensor, Id]]:
        """c̄ の上の項 (x̄, f)（列 c̄x̄ の長さがウィンドウに収まるもの）"""

        def compute():
            C, lam = self.data.base, self.data.projection
            c = self.phi(cbar)
            result = []
            for n in range(self.window.seq - len(cbar) + 1):
                for xs in cartesian(self.data.total.objects(), repeat=n):
                    target = lam.obj(self.delta(tuple(xs)))
                    for f in C.hom(c, target):
                        if C.is_iso(f):
                            result.append((tuple(xs), f))
            return result

        return self._memo.get(("candidates", cbar), compute)

    def objects_over(self, c: Id) -> List[Id]:
        """c̄ の上の対象で足跡がウィンドウに収まるものすべて（項数の少ない順）"""

        def compute():
            candidates = self.summand_candidates(c)
            room = Window(seq=self.window.seq - len(c), summands=self.window.summands)
            return [
                StrictTotalObject(c, combo)
                for n in range(self.window.summands + 1)
                for combo in bounded_product([candidates] * n, lambda s: (len(s[0]), 1), room)
            ]

        if len(c) > self.window.seq:
            return []
        return self._memo.get(("over", c), compute)

    def window_objects(self) -> List[Id]:
        return self._memo.get("window", super().window_objects)

    def footprint(self, item: Id) -> Footprint:
        """対象は (列の長さの合計, 項数)、射は始域と終域の足跡の和"""
        if isinstance(item, StrictTotalMorphism):
            (l1, s1), (l2, s2) = self.footprint(item.source), self.footprint(item.target)
            return l1 + l2, s1 + s2
        return len(item.base) + sum(len(xs) for xs, _ in item.summands), len(item.summands)

    def instance_budget(self) -> WindowBudget:
        return WindowBudget(self.window, self.footprint)

    def _theta_index(self, cbar: Optional[FormalTensor]) -> Dict[Id, List[Id]]:
        def compute():
            index: Dict[Id, List[Id]] = {}
            pool = self.window_objects() if cbar is None else self.objects_over(cbar)
            for x in pool:
                index.setdefault(self.theta(x), []).append(x)
            return index

        return self._memo.get(("index", cbar), compute)

    def objects_with_theta(self, value: Id) -> List[Id]:
        return self._theta_index(None).get(value, [])

    def morphisms_over(self, x: Id, f: Id) -> List[Id]:
        if f.source != x.base:
            return []
        D, lam = self.data.total, self.data.projection
        index = self._theta_index(f.target)
        result = []
        for g in D.out_morphisms(self.theta(x)):
            if lam.mor(g) != f.arrow:
                continue
            for y in index.get(D.cod(g), []):
                result.append(StrictTotalMorphism(x, y, g))
        return result

    def lifts_of(self, f: Id) -> List[Id]:
        def compute():
            fits = self.window.fits
            return [
                g
                for x in self.objects_over(f.source)
                for g in self.morphisms_over(x, f)
                if fits(self.footprint(g))
            ]

        return self._memo.get(("lifts", f), compute)

    def morphism_pool(self) -> List[Id]:
        return self._memo.get("pool", super().morphism_pool)

    def bounds(self) -> Dict:
        return self.window.as_bounds()

    def _project(self, g: StrictTotalMorphism) -> StrictMorphism:
        return StrictMorphism(g.source.base, g.target.base, self.data.projection.mor(g.arrow))

    # ⊞

    def zero(self, c: Id) -> Id:
        return StrictTotalObject(c, ())

    def add_obj(self, x: Id, y: Id) -> Id:
        if x.base != y.base:
            raise StructuralError(f"{self.name}: {format_id(x.base)} != {format_id(y.base)} in ⊞")
        return StrictTotalObject(x.base, x.summands + y.summands)

    def kappa(self, x: StrictTotalObject, y: StrictTotalObject) -> Id:
        """κ: ΘX⊕ΘY → Θ(X⊞Y)（𝒟 の射）"""
        fib = self.data.additive(self.phi(x.base))
        return self._memo.get(("kappa", x, y), lambda: merge_iso(fib, self.terms(x), self.terms(y)))

    def add_mor(self, g: Id, h: Id) -> Id:
        if self._project(g) != self._project(h):
            raise StructuralError(f"{self.name}: summands lie over different base morphisms")
        D = self.data.total
        arrow = compose_path(
            D,
            [
                self.kappa(g.target, h.target),
                self.data.add_mor(g.arrow, h.arrow),
                _invert(D, self.kappa(g.source, h.source)),
            ],
        )
        return StrictTotalMorphism(self.add_obj(g.source, h.source), self.add_obj(g.target, h.target), arrow)

    def gamma_add(self, x: Id, y: Id) -> Id:
        D = self.data.total
        fib = self.data.additive(self.phi(x.base))
        arrow = compose_path(
            D, [self.kappa(y, x), fib.gamma(self.theta(x), self.theta(y)), _invert(D, self.kappa(x, y))]
        )
        return StrictTotalMorphism(self.add_obj(x, y), self.add_obj(y, x), arrow)

    def zero_mor(self, f: Id) -> Id:
        return StrictTotalMorphism(self.zero(f.source), self.zero(f.target), self.data.zero_mor(f.arrow))

    # ⊠

    def summand_product(
        self, cbar: FormalTensor, dbar: FormalTensor, s: Tuple[FormalTensor, Id], t: Tuple[FormalTensor, Id]
    ) -> Tuple[FormalTensor, Id]:
        """(x̄, f)⊠(ȳ, g) = (x̄ȳ, Λ(付け替え)∘(f⊗g)∘付け替え⁻¹)"""

        def compute():
            (xs, f), (ys, g) = s, t
            C, data = self.data.base, self.data
            arrow = compose_path(
                C,
                [
                    data.projection.mor(merge_iso(data.mult, list(xs), list(ys))),
                    data.base_mult.tensor_mor(f, g),
                    _invert(C, self.base_mult.merge(cbar, dbar)),
                ],
            )
            return (xs + ys, arrow)

        return self._memo.get(("summand", cbar, dbar, s, t), compute)

    def tensor_obj(self, x: Id, y: Id) -> Id:
        """i 優先の項の積（単位 ((), id_1) との積は λ の自然性により元の項に戻る）"""

        def compute():
            summands = tuple(
                self.summand_product(x.base, y.base, s, t) for s in x.summands for t in y.summands
            )
            return StrictTotalObject(x.base + y.base, summands)

        return self._memo.get(("tensor", x, y), compute)

    def _sum_arrows(self, arrows: Sequence[Id]) -> Id:
        result = arrows[-1]
        for a in reversed(arrows[:-1]):
            result = self.data.add_mor(a, result)
        return result

    def _distribute_left(self, terms: List[Id], y: Id, c: Id) -> Id:
        """(a₁⊕⋯⊕aₘ)⊗y → (a₁⊗y)⊕⋯⊕(aₘ⊗y)"""
        D, M = self.data.total, self.data.mult
        head = D.identity(M.tensor_obj(terms[0], y))
        if len(terms) == 1:
            return head
        rest = tensor_all(self.data.additive(c), terms[1:])
        split = _invert(D, self.data.d_left(terms[0], rest, y))
        return D.compose(self.data.add_mor(head, self._distribute_left(terms[1:], y, c)), split)

    def _distribute_right(self, x: Id, terms: List[Id], d: Id) -> Id:
        """x⊗(b₁⊕⋯⊕bₛ) → (x⊗b₁)⊕⋯⊕(x⊗bₛ)"""
        D, M = self.data.total, self.data.mult
        head = D.identity(M.tensor_obj(x, terms[0]))
        if len(terms) == 1:
            return head
        rest = tensor_all(self.data.additive(d), terms[1:])
        split = _invert(D, self.data.d_right(x, terms[0], rest))
        return D.compose(self.data.add_mor(head, self._distribute_right(x, terms[1:], d)), split)

    def _flatten(self, rows: List[List[Id]], c: Id) -> Id:
        """⊕ᵢ(⊕ⱼ tᵢⱼ) → ⊕ᵢⱼ tᵢⱼ（右入れ子の付け替え）"""
        D = self.data.total
        fib = self.data.additive(c)
        first = D.identity(tensor_all(fib, rows[0]))
        if len(rows) == 1:
            return first
        rest = [t for row in rows[1:] for t in row]
        return D.compose(merge_iso(fib, rows[0], rest), self.data.add_mor(first, self._flatten(rows[1:], c)))

    def _term_fill(self, x: StrictTotalObject, y: StrictTotalObject, s, t) -> Id:
        """fᵢ*Δx̄ᵢ ⊗ gⱼ*Δȳⱼ → (fᵢ⊠gⱼ)*Δ(x̄ᵢȳⱼ)（付け替えの上の一意な射）"""
        data, D = self.data, self.data.total
        product = self.summand_product(x.base, y.base, s, t)
        value = D.compose(
            merge_iso(data.mult, list(s[0]), list(t[0])),
            data.mult.tensor_mor(self.eta(s), self.eta(t)),
        )
        return fill_in(
            data.fibered,
            data.mult.tensor_obj(self.term(s), self.term(t)),
            self.term(product),
            self.base_mult.merge(x.base, y.base),
            self.eta(product),
            value,
        )

    def rho(self, x: StrictTotalObject, y: StrictTotalObject) -> Id:
        """ρ: ΘX⊗ΘY → Θ(X⊠Y)（左から分配してから各項を移す）"""
        return self._memo.get(("rho", x, y), lambda: self._compute_rho(x, y))

    def _compute_rho(self, x: StrictTotalObject, y: StrictTotalObject) -> Id:
        data, D = self.data, self.data.total
        c, d = self.phi(x.base), self.phi(y.base)
        merge_c = self.base_mult.merge(x.base, y.base)
        if not x.summands:
            return D.compose(data.zero_mor(merge_c), data.zero_left(c, self.theta(y)))
        if not y.summands:
            return D.compose(data.zero_mor(merge_c), data.zero_right(self.theta(x), d))
        left, right = self.terms(x), self.terms(y)
        cd = data.base_mult.tensor_obj(c, d)
        M = data.mult
        step1 = self._distribute_left(left, self.theta(y), c)
        step2 = self._sum_arrows([self._distribute_right(a, right, d) for a in left])
        step3 = self._flatten([[M.tensor_obj(a, b) for b in right] for a in left], cd)
        step4 = self._sum_arrows([self._term_fill(x, y, s, t) for s in x.summands for t in y.summands])
        return compose_path(D, [step4, step3, step2, step1])

    def tensor_mor(self, f: Id, g: Id) -> Id:
        D = self.data.total
        arrow = compose_path(
            D,
            [
                self.rho(f.target, g.target),
                self.data.mult.tensor_mor(f.arrow, g.arrow),
                _invert(D, self.rho(f.source, g.source)),
            ],
        )
        return StrictTotalMorphism(self.tensor_obj(f.source, g.source), self.tensor_obj(f.target, g.target), arrow)

    def _gamma_single(self, cbar: FormalTensor, dbar: FormalTensor, s, t) -> StrictTotalMorphism:
        """1項どうしの γ: 付け替えた γ_𝒞 の上で Δ(γ)∘η と一致する一意な射"""
        data, D = self.data, self.data.total
        x, y = StrictTotalObject(cbar, (s,)), StrictTotalObject(dbar, (t,))
        source, target = self.tensor_obj(x, y), self.tensor_obj(y, x)
        (xs, _), (ys, _) = s, t
        M = data.mult
        delta_gamma = compose_path(
            D,
            [
                merge_iso(M, list(ys), list(xs)),
                M.gamma(self.delta(xs), self.delta(ys)),
                _invert(D, merge_iso(M, list(xs), list(ys))),
            ],
        )
        (s_xy,) = source.summands
        (s_yx,) = target.summands
        arrow = fill_in(
            data.fibered,
            self.term(s_xy),
            self.term(s_yx),
            self.base_mult.gamma(cbar, dbar).arrow,
            self.eta(s_yx),
            D.compose(delta_gamma, self.eta(s_xy)),
        )
        return StrictTotalMorphism(source, target, arrow)

    def gamma_mult(self, x: Id, y: Id) -> Id:
        """γ^⊠: 各項の γ の和のあと、i 優先の並びを j 優先に並べ替える"""
        return self._memo.get(("gamma", x, y), lambda: self._compute_gamma(x, y))

    def _compute_gamma(self, x: StrictTotalObject, y: StrictTotalObject) -> Id:
        T = self.total
        source, target = self.tensor_obj(x, y), self.tensor_obj(y, x)
        if not source.summands:
            over = self.base_mult.gamma(x.base, y.base)
            return StrictTotalMorphism(source, target, self.data.zero_mor(over.arrow))
        pieces = [self._gamma_single(x.base, y.base, s, t) for s in x.summands for t in y.summands]
        summed = pieces[-1]
        for p in reversed(pieces[:-1]):
            summed = self.add_mor(p, summed)
        m, n = len(x.summands), len(y.summands)
        singles = [p.target for p in pieces]
        perm = [i * n + j for j in range(n) for i in range(m)]
        rearrange = nested_permutation(self.fiber_structure(y.base + x.base), singles, perm)
        return T.compose(rearrange, summed)

    # 分配射

    def d_left(self, x: Id, x2: Id, y: Id) -> Id:
        source = self.add_obj(self.tensor_obj(x, y), self.tensor_obj(x2, y))
        target = self.tensor_obj(self.add_obj(x, x2), y)
        if source != target:
            raise StructuralError(f"{self.name}: d^l source and target differ at {format_id((x, x2, y))}")
        return self.total.identity(source)

    def d_right(self, x: Id, y: Id, y2: Id) -> Id:
        """d^r: 項の並べ替え（γ^⊞ の反復）"""
        source = self.add_obj(self.tensor_obj(x, y), self.tensor_obj(x, y2))
        target = self.tensor_obj(x, self.add_obj(y, y2))
        if not source.summands:
            return self.total.identity(source)
        m, n1, n2 = len(x.summands), len(y.summands), len(y2.summands)
        order = [(i, 0, j) for i in range(m) for j in range(n1)] + [(i, 1, j) for i in range(m) for j in range(n2)]
        position = {key: k for k, key in enumerate(order)}
        perm = [position[(i, side, j)] for i in range(m) for side, n in ((0, n1), (1, n2)) for j in range(n)]
        singles = [StrictTotalObject(source.base, (s,)) for s in source.summands]
        result = nested_permutation(self.fiber_structure(source.base), singles, perm)
        if result.target != target:
            raise StructuralError(f"{self.name}: d^r rearrangement misses {format_id(target)}")
        return result

    # Θ′

    def embed_object(self, x: Id) -> StrictTotalObject:
        """Θ′(x) = ((c), ((x), id_c))（x は c の上）"""
        c = self.data.projection.obj(x)
        return StrictTotalObject((c,), (((x,), self.data.base.identity(c)),))

    def embed_morphism(self, g: Id) -> StrictTotalMorphism:
        D = self.data.total
        return StrictTotalMorphism(self.embed_object(D.dom(g)), self.embed_object(D.cod(g)), g)


def strictify_total(data: SymBimonFiberData, window: Optional[Window] = None) -> StrictTotal:
    """
    ファイバー対称双モノイダル圏を同値なファイバー双置換圏に置き換える

    Args:
        data: 入力（validate_symbimon に通ったもの）
        window: 検査ウィンドウ

    Returns:
        StrictTotal（Λ^s, Θ, Θ′, Φ, Φ′）

    Raises:
        ConstructionError: Λ がファイバー関手でない場合
    """
    window = window or Window()
    result = StrictTotal(data, window)
    logger.info(
        "strictified %s: window seq=%d summands=%d", data.name, window.seq, window.summands
    )
    return result


def validate_strictified(result: StrictTotal) -> ValidationReport:
    """
    厳密化の出力を検査（(b.1)–(b.10) と、d^l がすべて恒等射であること）

    Args:
        result: strictify_total の結果

    Returns:
        レポート
    """
    report = validate_fibered_biperm(result, result.window)
    name = "b.d_left_identity"
    T, tO, add = result.total, result.tensor_obj, result.add_obj
    budget = result.instance_budget()
    for x, x2, y in _instances(report, name, _shape_groups(result, "aab"), result.sample, budget):
        _holds(
            report,
            name,
            (x, x2, y),
            lambda: result.d_left(x, x2, y),
            lambda: T.identity(add(tO(x, y), tO(x2, y))),
        )
    return report


def _check_base_equivalence(base: StrictBase, report: ValidationReport):
    C, cat = base.monoidal.category, base.category
    phi, embed = base.evaluate, base.embed
    name = "equivalence.phi_embed"
    for c in C.objects():
        _holds(report, name, (c,), lambda: phi.obj(embed.obj(c)), lambda: c)
    for f in C.morphisms():
        _holds(report, name, (f,), lambda: phi.mor(embed.mor(f)), lambda: f)

    def unit_iso(seq):
        return StrictMorphism(seq, (cat.evaluate(seq),), C.identity(cat.evaluate(seq)))

    name = "equivalence.embed_phi"
    for seq in cat.objects():
        report.check(name, cat.is_iso(unit_iso(seq)), (seq,), "canonical map is not invertible")
    name = "equivalence.embed_phi_natural"
    for h in cat.morphisms():
        _holds(
            report,
            name,
            (h,),
            lambda: cat.compose(embed.mor(phi.mor(h)), unit_iso(h.source)),
            lambda: cat.compose(unit_iso(h.target), h),
        )


def equivalence_check(result, window: Optional[Window] = None) -> ValidationReport:
    """
    Φ, Φ′（と Θ, Θ′）が圏同値であることをウィンドウ上で検査

    Φ∘Φ′ = Id と Θ∘Θ′ = Id は厳密に、Φ′∘Φ ≅ Id と Θ′∘Θ ≅ Id は標準的な同型とその自然性で、
    さらに Λ^s∘Θ′ = Φ′∘Λ を検査する。

    Args:
        result: strictify_base または strictify_total の結果
        window: 標本の上限を上書きする場合のウィンドウ

    Returns:
        検査名 "equivalence.*" のレポート
    """
    if isinstance(result, StrictBase):
        report = ValidationReport(f"equivalence {result.category.name}", result.window.as_bounds())
        _check_base_equivalence(result, report)
        return report
    window = window or result.window
    sample = window.sample
    report = ValidationReport(f"equivalence {result.name}", window.as_bounds())
    _check_base_equivalence(result.strict_base, report)

    data, T = result.data, result.total
    D = data.total
    theta, embed = result.theta_functor, result.theta_prime
    name = "equivalence.theta_embed"
    for x in D.objects():
        _holds(report, name, (x,), lambda: theta.obj(embed.obj(x)), lambda: x)
    for g in D.morphisms():
        _holds(report, name, (g,), lambda: theta.mor(embed.mor(g)), lambda: g)

    def unit_iso(x):
        return StrictTotalMorphism(x, embed.obj(result.theta(x)), D.identity(result.theta(x)))

    name = "equivalence.embed_theta"
    for x in spread(result.window_objects(), sample):
        report.check(name, T.is_iso(unit_iso(x)), (x,), "canonical map is not invertible")
    name = "equivalence.embed_theta_natural"
    for h in spread(result.morphism_pool(), sample):
        _holds(
            report,
            name,
            (h,),
            lambda: T.compose(embed.mor(theta.mor(h)), unit_iso(h.source)),
            lambda: T.compose(unit_iso(h.target), h),
        )

    name = "equivalence.square"
    base_embed = result.strict_base.embed
    for x in D.objects():
        _holds(report, name, (x,), lambda: result.projection.obj(embed.obj(x)), lambda: base_embed.obj(data.projection.obj(x)))
    for g in D.morphisms():
        _holds(report, name, (g,), lambda: result.projection.mor(embed.mor(g)), lambda: base_embed.mor(data.projection.mor(g)))
    logger.info("equivalence %s: ok=%s", result.name, report.ok)
    return report


def validate_fibered_morphism(
    source: FiberBipermutative,
    target: FiberBipermutative,
    functor: Functor,
    base_functor: Functor,
    mult_lax: Callable[[Id, Id], Id],
    add_lax: Callable[[Id, Id], Id],
    sample: Optional[int] = None,
) -> ValidationReport:
    """
    ファイバー対称双モノイダル圏の射 Θ: 𝒟 → 𝒟′ の条件を検査

    Λ′Θ = φΛ、Θ が ⊗ について lax（構造射 mult_lax）、各ファイバーで ⊕ について lax（構造射 add_lax）。

    Args:
        source: 始域の構造
        target: 終域の構造
        functor: Θ
        base_functor: 基底の間の関手 φ
        mult_lax: (x, y) → Θx⊗Θy → Θ(x⊗y)
        add_lax: (x, x′) → Θx⊕Θx′ → Θ(x⊕x′)
        sample: 図式ごとのインスタンス上限

    Returns:
        検査名 "morphism.*" のレポート
    """
    report = ValidationReport(f"fibered morphism {functor.name}", {**source.bounds(), "sample": sample or "all"})
    F, phi = functor, base_functor
    S, T = source.total, target.total
    SM, TM = source.mult, target.mult
    objects = source.window_objects()
    morphisms = source.morphism_pool()
    budget = source.instance_budget()

    name = "morphism.square"
    for x in spread(objects, sample):
        _holds(report, name, (x,), lambda: target.projection.obj(F.obj(x)), lambda: phi.obj(source.projection.obj(x)))
    for g in spread(morphisms, sample):
        _holds(report, name, (g,), lambda: target.projection.mor(F.mor(g)), lambda: phi.mor(source.projection.mor(g)))

    name = "morphism.mult.unit"
    _holds(report, name, ("unit",), lambda: F.obj(SM.unit), lambda: TM.unit)
    name = "morphism.mult.natural"
    for g, h in _instances(report, name, [[morphisms, morphisms]], sample, budget):
        _holds(
            report,
            name,
            (g, h),
            lambda: T.compose(mult_lax(S.cod(g), S.cod(h)), TM.tensor_mor(F.mor(g), F.mor(h))),
            lambda: T.compose(F.mor(SM.tensor_mor(g, h)), mult_lax(S.dom(g), S.dom(h))),
        )
    name = "morphism.mult.assoc"
    for x, y, z in _instances(report, name, [[objects] * 3], sample, budget):
        _holds(
            report,
            name,
            (x, y, z),
            lambda: compose_path(
                T,
                [
                    mult_lax(x, SM.tensor_obj(y, z)),
                    TM.tensor_mor(T.identity(F.obj(x)), mult_lax(y, z)),
                    TM.associator(F.obj(x), F.obj(y), F.obj(z)),
                ],
            ),
            lambda: T.compose(mult_lax(SM.tensor_obj(x, y), z), TM.tensor_mor(mult_lax(x, y), T.identity(F.obj(z)))),
        )
    name = "morphism.mult.gamma"
    for x, y in _instances(report, name, [[objects, objects]], sample, budget):
        _holds(
            report,
            name,
            (x, y),
            lambda: T.compose(F.mor(SM.gamma(x, y)), mult_lax(x, y)),
            lambda: T.compose(mult_lax(y, x), TM.gamma(F.obj(x), F.obj(y))),
        )

    name = "morphism.add.unit"
    for c in source.base_objects():
        _holds(report, name, (c,), lambda: F.obj(source.zero(c)), lambda: target.zero(phi.obj(c)))
    name = "morphism.add.natural"
    groups = [[pool, pool] for pool in (source.lifts_of(f) for f in source.base_morphisms()) if pool]
    for g, g2 in _instances(report, name, groups, sample, budget):
        _holds(
            report,
            name,
            (g, g2),
            lambda: T.compose(add_lax(S.cod(g), S.cod(g2)), target.add_mor(F.mor(g), F.mor(g2))),
            lambda: T.compose(F.mor(source.add_mor(g, g2)), add_lax(S.dom(g), S.dom(g2))),
        )
    name = "morphism.add.assoc"
    for x, y, z in _instances(report, name, _shape_groups(source, "aaa"), sample, budget):
        _holds(
            report,
            name,
            (x, y, z),
            lambda: compose_path(
                T,
                [
                    add_lax(x, source.add_obj(y, z)),
                    target.add_mor(T.identity(F.obj(x)), add_lax(y, z)),
                    target.add_associator(F.obj(x), F.obj(y), F.obj(z)),
                ],
            ),
            lambda: T.compose(
                add_lax(source.add_obj(x, y), z), target.add_mor(add_lax(x, y), T.identity(F.obj(z)))
            ),
        )
    name = "morphism.add.gamma"
    for x, y in _instances(report, name, _shape_groups(source, "aa"), sample, budget):
        _holds(
            report,
            name,
            (x, y),
            lambda: T.compose(F.mor(source.gamma_add(x, y)), add_lax(x, y)),
            lambda: T.compose(add_lax(y, x), target.gamma_add(F.obj(x), F.obj(y))),
        )
    return report


def strictification_morphism(result: StrictTotal) -> ValidationReport:
    """Θ: 𝒟^s → 𝒟 を構造射 ρ, κ 付きの射として検査"""
    return validate_fibered_morphism(
        result,
        result.data,
        result.theta_functor,
        result.strict_base.evaluate,
        result.rho,
        result.kappa,
        result.sample,
    )


def unit_section(d: FiberBipermutative, source: Category) -> Functor:
    """
    固定した切断 I: source → 𝒟（すべてを ⊗ の単位 1 とその恒等射に送る定数関手）

    Args:
        d: 構造
        source: 始域の圏（𝒞/1 など）

    Returns:
        FunctionalFunctor
    """
    one = d.mult.unit
    ident = d.total.identity(one)
    return FunctionalFunctor(source, d.total, lambda _x: one, lambda _f: ident, name="I")


def window_document(result: StrictTotal, limit: int = 20) -> Dict:
    """
    ウィンドウの概要を文書にする

    Args:
        result: strictify_total の結果
        limit: 列挙する対象の上限

    Returns:
        "bounds", "base_objects", "objects", "sample_objects" を持つ辞書
    """
    objects = result.window_objects()
    return {
        "bounds": result.window.as_bounds(),
        "base_objects": [format_id(c) for c in result.base_objects()],
        "objects": len(objects),
        "sample_objects": [
            {
                "base": format_id(x.base),
                "summands": [[format_id(xs), format_id(f)] for xs, f in x.summands],
                "theta": format_id(result.theta(x)),
            }
            for x in spread(objects, limit)
        ],
    }
