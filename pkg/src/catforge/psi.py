#!/usr/bin/env python3
"""
関手 Ψ: 𝒜 → ℙ とその環データ

ファイバー双置換圏 Λ^s: 𝒟^s → 𝒞^s（strictify_total の結果）から、輪積圏 𝒜 の対象 ū に置換圏 Ψ(ū) を、
射 (q, f̄) に strict 写像 Ψ(q, f̄) を割り当て、⊗_{ū,v̄}, 1, d^l, d^r, μ をそろえる。

Ψ(ū) の対象は行の形式和 Σᵢ sᵢ⊗F_{i1}⊗⋯⊗F_{in}。F_{ij} は u_j の上の1項の対象で、𝒞/u_j の恒等射での
値を表す（ほかの点での値は引き戻しで決まる）。sᵢ は () の上の係数で、ū = () のときは行の値そのもの。
射は評価 ev(F) = Σᵢ sᵢ⊗F_{i1}⊗⋯⊗F_{in} の間の、Φ(ū) の恒等射の上にある 𝒟 の射。
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Tuple

from catforge.biperm import _holds, _instances, check_permutative_window
from catforge.bounds import PsiBounds, sample_product, spread
from catforge.errors import ComposabilityError, StructuralError
from catforge.fibration import fiber, fill_in
from catforge.fincat import Category, FunctionalFunctor, Id, compose_path, format_id
from catforge.monostruct import (
    FunctionalPermutative,
    MonoidalMap,
    MonoidalStructure,
    nested_permutation,
    tensor_all,
    tensor_all_morphisms,
    validate_monoidal_map,
)
from catforge.report import ValidationReport
from catforge.ringdata import RingData, validate_ring_data
from catforge.strictifier import StrictMorphism, StrictTotal, StrictTotalMorphism, StrictTotalObject, _invert, _Memo
from catforge.wreath import WreathMorphism, WreathProduct, build_wreath

logger = logging.getLogger(__name__)

__all__ = [
    "PsiBounds",
    "PsiRow",
    "PsiObject",
    "PsiMorphism",
    "PsiCategory",
    "Psi",
    "PsiBuild",
    "psi_build",
    "validate_psi",
    "unit_fiber_check",
]


class PsiRow(NamedTuple):
    """行 s⊗F₁⊗⋯⊗Fₙ（s は () の上、F_j は (u_j) の上の1項の対象）"""

    scalar: StrictTotalObject
    entries: Tuple[StrictTotalObject, ...]


class PsiObject(NamedTuple):
    """Ψ(ū) の対象（行の形式和、行がなければ 𝕆_ū）"""

    base: Tuple
    rows: Tuple[PsiRow, ...]


class PsiMorphism(NamedTuple):
    """Ψ(ū) の射（arrow は 𝒟 の射 Θ(ev source) → Θ(ev target)）"""

    source: PsiObject
    target: PsiObject
    arrow: Id


class PsiCategory(Category):
    """Ψ(ū)"""

    def __init__(self, owner: "Psi", base: Tuple):
        """
        初期化

        Args:
            owner: Ψ
            base: 𝒜 の対象 ū
        """
        self.owner = owner
        self.base = base
        self.underlying = owner.strict.data.total
        self.name = f"Ψ{format_id(base)}"

    def objects(self) -> List[Id]:
        return self.owner.window(self.base)

    def morphisms(self) -> List[Id]:
        objects = self.objects()
        return [m for a in objects for b in objects for m in self.hom(a, b)]

    def hom(self, a: Id, b: Id) -> List[Id]:
        owner = self.owner
        over = owner.strict.data.base.identity(owner.strict.phi(self.base))
        lam = owner.strict.data.projection
        return [
            PsiMorphism(a, b, g)
            for g in self.underlying.hom(owner.theta(a), owner.theta(b))
            if lam.mor(g) == over
        ]

    def _morphism(self, f: Id) -> PsiMorphism:
        if not isinstance(f, PsiMorphism):
            raise StructuralError(f"{self.name}: not a morphism {format_id(f)}")
        return f

    def dom(self, f: Id) -> Id:
        return self._morphism(f).source

    def cod(self, f: Id) -> Id:
        return self._morphism(f).target

    def identity(self, a: Id) -> Id:
        return PsiMorphism(a, a, self.underlying.identity(self.owner.theta(a)))

    def compose(self, g: Id, f: Id) -> Id:
        f, g = self._morphism(f), self._morphism(g)
        if f.target != g.source:
            raise ComposabilityError(f"{self.name}: cannot compose {format_id(g)} after {format_id(f)}")
        return PsiMorphism(f.source, g.target, self.underlying.compose(g.arrow, f.arrow))

    def inverse(self, f: Id) -> Optional[Id]:
        f = self._morphism(f)
        arrow = self.underlying.inverse(f.arrow)
        return None if arrow is None else PsiMorphism(f.target, f.source, arrow)

    def has_object(self, a: Id) -> bool:
        return isinstance(a, PsiObject) and a.base == self.base and all(
            self.owner.well_formed_row(self.base, row) for row in a.rows
        )

    def has_morphism(self, f: Id) -> bool:
        return (
            isinstance(f, PsiMorphism)
            and self.has_object(f.source)
            and self.has_object(f.target)
            and f in self.hom(f.source, f.target)
        )


class Psi(RingData):
    """Ψ: 𝒜 → ℙ と、その上の ⊗_{ū,v̄}, 1, d^l, d^r, μ を表すクラス

    𝒜 は基底の亜群 C 上の輪積を長さ bounds.length で切断したもの。
    """

    has_mu = True

    def __init__(self, strict: StrictTotal, bounds: Optional[PsiBounds] = None):
        """
        初期化

        Args:
            strict: strictify_total の結果
            bounds: 検査範囲

        Raises:
            ConstructionError: 基底が亜群でない場合
        """
        self.strict = strict
        self.bounds = bounds or PsiBounds()
        data = strict.data
        self.name = f"Ψ({data.name})"
        self.wreath: WreathProduct = build_wreath(data.base, self.bounds.length, data.base_mult.unit)
        self.base = self.wreath.structure
        self.total = strict.total
        self.one = PsiObject((), (PsiRow(strict.unit_object, ()),))
        self._categories: Dict[Tuple, PsiCategory] = {}
        self._structures: Dict[Tuple, MonoidalStructure] = {}
        self._maps: Dict[WreathMorphism, MonoidalMap] = {}
        self._memo = _Memo()
        logger.info(
            "Ψ over %s: %d base objects, length ≤ %d",
            data.name, len(self.wreath.category.objects()), self.bounds.length,
        )

    # 評価

    def ev_row(self, row: PsiRow) -> StrictTotalObject:
        return tensor_all(self.strict.mult, [row.scalar, *row.entries])

    def ev(self, x: PsiObject) -> StrictTotalObject:
        """ev(F) = Σᵢ ev(行ᵢ)（𝒟^s の ū の上の対象）"""
        return StrictTotalObject(
            tuple(x.base), tuple(s for row in x.rows for s in self.ev_row(row).summands)
        )

    def theta(self, x: PsiObject) -> Id:
        return self._memo.get(("theta", x), lambda: self.strict.theta(self.ev(x)))

    def lift(self, g: PsiMorphism) -> StrictTotalMorphism:
        return StrictTotalMorphism(self.ev(g.source), self.ev(g.target), g.arrow)

    def well_formed_row(self, base: Tuple, row: Id) -> bool:
        if not isinstance(row, PsiRow) or len(row.entries) != len(base):
            return False
        pieces = [(row.scalar, ())] + [(e, (u,)) for e, u in zip(row.entries, base)]
        return all(
            self.strict.well_formed(x) and x.base == over and len(x.summands) == 1 for x, over in pieces
        )

    # ウィンドウ

    def singles_over(self, cbar: Tuple) -> List[StrictTotalObject]:
        """c̄ の上の1項の対象（bounds.objects 個まで）"""
        return self._memo.get(
            ("singles", cbar),
            lambda: spread(
                [x for x in self.strict.objects_over(cbar) if len(x.summands) == 1], self.bounds.objects
            ),
        )

    def rows(self, base: Tuple) -> List[PsiRow]:
        def compute():
            if not base:
                return [PsiRow(s, ()) for s in self.singles_over(())]
            pools = [self.singles_over((u,)) for u in base]
            return [
                PsiRow(self.strict.unit_object, tuple(entries))
                for entries in sample_product(pools, self.bounds.objects)
            ]

        return self._memo.get(("rows", base), compute)

    def window(self, base: Tuple) -> List[PsiObject]:
        """行数 bounds.summands までの形式和（1 と、行数ごとに上限をかけた標本）"""

        def compute():
            rows = self.rows(base)
            result = []
            for r in range(self.bounds.summands + 1):
                for combo in sample_product([rows] * r, self.bounds.objects ** 2):
                    result.append(PsiObject(base, tuple(combo)))
            if not base and self.one not in result:
                result.append(self.one)
            return result

        return self._memo.get(("window", base), compute)

    # Ψ(ū) の ⊕

    def category(self, base: Tuple) -> PsiCategory:
        if base not in self._categories:
            self._categories[base] = PsiCategory(self, base)
        return self._categories[base]

    def fiber(self, c: Id) -> MonoidalStructure:
        if c not in self._structures:
            self._structures[c] = FunctionalPermutative(
                self.category(c),
                self.add_obj,
                self.add_mor,
                PsiObject(c, ()),
                self.gamma_add,
                name=f"⊕ on Ψ{format_id(c)}",
            )
        return self._structures[c]

    def objects(self, c: Id) -> List[Id]:
        return self.window(c)

    def add_obj(self, x: PsiObject, y: PsiObject) -> PsiObject:
        if x.base != y.base:
            raise StructuralError(f"{self.name}: {format_id(x.base)} != {format_id(y.base)} in ⊕")
        return PsiObject(x.base, x.rows + y.rows)

    def add_mor(self, g: PsiMorphism, h: PsiMorphism) -> PsiMorphism:
        summed = self.strict.add_mor(self.lift(g), self.lift(h))
        return PsiMorphism(self.add_obj(g.source, h.source), self.add_obj(g.target, h.target), summed.arrow)

    def gamma_add(self, x: PsiObject, y: PsiObject) -> PsiMorphism:
        return PsiMorphism(self.add_obj(x, y), self.add_obj(y, x), self.strict.gamma_add(self.ev(x), self.ev(y)).arrow)

    # Ψ(q, f̄)

    def pullback_entry(self, x: StrictTotalObject, f: Id) -> StrictTotalObject:
        """f*x（f: w → u は C の同型、x = ((u), ((x̄, g),)) なら ((w), ((x̄, g∘f),))）"""
        C = self.strict.data.base
        ((xs, g),) = x.summands
        return StrictTotalObject((C.dom(f),), ((xs, C.compose(g, f)),))

    def unit_entry(self, f: Id) -> StrictTotalObject:
        """f*I（I は 𝒞/1 上の固定した切断で I(id) = 1）"""
        return StrictTotalObject((self.strict.data.base.dom(f),), (((), f),))

    def map_row(self, w: WreathMorphism, row: PsiRow) -> PsiRow:
        entries = []
        for j, f in enumerate(w.components, start=1):
            i = w.q.preimage(j)
            entries.append(self.unit_entry(f) if i is None else self.pullback_entry(row.entries[i - 1], f))
        return PsiRow(row.scalar, tuple(entries))

    def map_object(self, w: WreathMorphism, x: PsiObject) -> PsiObject:
        if x.base != w.source:
            raise StructuralError(f"{self.name}: {format_id(x.base)} is not the source of {format_id(w)}")
        return PsiObject(w.target, tuple(self.map_row(w, row) for row in x.rows))

    def _landing_order(self, w: WreathMorphism) -> Tuple[List[int], List[int]]:
        """像の位置（昇順）と、元の並びへ戻す置換（先頭は係数）"""
        image = sorted(w.q.values)
        perm = [0] + [1 + image.index(w.q(i)) for i in range(1, w.q.n + 1)]
        return image, perm

    def base_comparison(self, w: WreathMorphism) -> StrictMorphism:
        """h_w: v̄ → ū（𝒞^s の射。各成分 f_j を並べて元の位置へ戻す）"""

        def compute():
            S = self.strict.base
            M = self.strict.base_mult
            C = self.strict.data.base
            pieces = [S.identity(())]
            for j, f in enumerate(w.components, start=1):
                i = w.q.preimage(j)
                target = () if i is None else (w.source[i - 1],)
                pieces.append(StrictMorphism((C.dom(f),), target, f))
            image, perm = self._landing_order(w)
            landed = [()] + [(w.source[w.q.preimage(j) - 1],) for j in image]
            return S.compose(nested_permutation(M, landed, perm), tensor_all_morphisms(M, pieces))

        return self._memo.get(("h", w), compute)

    def _entry_arrow(self, source: StrictTotalObject, target: StrictTotalObject, f: Id) -> StrictTotalMorphism:
        """f の上の唯一の射 source → target（η_target∘k = η_source）"""
        strict = self.strict
        ((s,), (t,)) = (source.summands, target.summands)
        k = fill_in(strict.data.fibered, strict.term(s), strict.term(t), f, strict.eta(t), strict.eta(s))
        return StrictTotalMorphism(source, target, k)

    def comparison(self, w: WreathMorphism, x: PsiObject) -> StrictTotalMorphism:
        """κ: ev(Ψ(w)F) → ev(F)（h_w の上の同型。各行を成分ごとに戻して並べ替える）"""

        def compute():
            strict = self.strict
            T, M = strict.total, strict.mult
            if not x.rows:
                return strict.zero_mor(self.base_comparison(w))
            image, perm = self._landing_order(w)
            rows = []
            for row in x.rows:
                pieces = [T.identity(row.scalar)]
                for j, f in enumerate(w.components, start=1):
                    i = w.q.preimage(j)
                    if i is None:
                        pieces.append(self._entry_arrow(self.unit_entry(f), strict.unit_object, f))
                    else:
                        entry = row.entries[i - 1]
                        pieces.append(self._entry_arrow(self.pullback_entry(entry, f), entry, f))
                landed = [row.scalar] + [row.entries[w.q.preimage(j) - 1] for j in image]
                rows.append(T.compose(nested_permutation(M, landed, perm), tensor_all_morphisms(M, pieces)))
            result = rows[-1]
            for r in reversed(rows[:-1]):
                result = strict.add_mor(r, result)
            return result

        return self._memo.get(("kappa", w, x), compute)

    def map_morphism(self, w: WreathMorphism, g: PsiMorphism) -> PsiMorphism:
        """Ψ(w)α = κ_G⁻¹∘α∘κ_F"""
        D = self.strict.data.total
        into, out = self.comparison(w, g.source), self.comparison(w, g.target)
        arrow = compose_path(D, [_invert(D, out.arrow), g.arrow, into.arrow])
        return PsiMorphism(self.map_object(w, g.source), self.map_object(w, g.target), arrow)

    def fmap(self, f: Id) -> MonoidalMap:
        if f not in self._maps:
            functor = FunctionalFunctor(
                self.category(f.source),
                self.category(f.target),
                lambda x: self.map_object(f, x),
                lambda g: self.map_morphism(f, g),
                name=f"Ψ({format_id(f)})",
            )
            self._maps[f] = MonoidalMap(functor, self.fiber(f.source), self.fiber(f.target), "strict", name=functor.name)
        return self._maps[f]

    # ⊗_{ū,v̄}

    def _tensor(self, x: PsiObject, y: PsiObject) -> PsiObject:
        M = self.strict.mult
        return PsiObject(
            tuple(x.base) + tuple(y.base),
            tuple(PsiRow(M.tensor_obj(r.scalar, t.scalar), r.entries + t.entries) for r in x.rows for t in y.rows),
        )

    def tensor_obj(self, c1: Id, c2: Id, x: Id, y: Id) -> Id:
        """F⊗G = Σᵢ Σⱼ (sᵢ⊗tⱼ)⊗F_{i•}⊗G_{j•}（i 優先）"""
        return self._tensor(x, y)

    def lam(self, x: PsiObject, y: PsiObject) -> StrictTotalMorphism:
        """λ: ev(F)⊗ev(G) → ev(F⊗G)（各行で係数 tⱼ を F_{i•} の前へ移す）"""

        def compute():
            strict = self.strict
            T, M = strict.total, strict.mult
            pieces = []
            for r in x.rows:
                for t in y.rows:
                    left = tensor_all(M, list(r.entries))
                    right = tensor_all(M, list(t.entries))
                    pieces.append(
                        tensor_all_morphisms(
                            M, [T.identity(r.scalar), strict.gamma_mult(left, t.scalar), T.identity(right)]
                        )
                    )
            if not pieces:
                return T.identity(strict.zero(tuple(x.base) + tuple(y.base)))
            result = pieces[-1]
            for p in reversed(pieces[:-1]):
                result = strict.add_mor(p, result)
            return result

        return self._memo.get(("lam", x, y), compute)

    def _lam_inverse(self, x: PsiObject, y: PsiObject) -> StrictTotalMorphism:
        return _invert(self.total, self.lam(x, y))

    def tensor_mor(self, c1: Id, c2: Id, g: Id, h: Id) -> Id:
        """α⊗β = λ∘(α⊗β)∘λ⁻¹"""
        strict = self.strict
        arrow = compose_path(
            self.total,
            [
                self.lam(g.target, h.target),
                strict.tensor_mor(self.lift(g), self.lift(h)),
                self._lam_inverse(g.source, h.source),
            ],
        ).arrow
        return PsiMorphism(self._tensor(g.source, h.source), self._tensor(g.target, h.target), arrow)

    def d_left(self, c1: Id, c2: Id, x: Id, x2: Id, y: Id) -> Id:
        """i 優先の並びでは (F⊗G)⊕(F′⊗G) と (F⊕F′)⊗G は同じ対象"""
        source = self.add_obj(self._tensor(x, y), self._tensor(x2, y))
        target = self._tensor(self.add_obj(x, x2), y)
        if source != target:
            raise StructuralError(f"{self.name}: d^l source and target differ at {format_id((x, x2, y))}")
        return self.category(source.base).identity(source)

    def d_right(self, c1: Id, c2: Id, x: Id, y: Id, y2: Id) -> Id:
        """d^r = λ∘d^r_𝒟∘(λ⊕λ)⁻¹"""
        strict = self.strict
        sum_y = self.add_obj(y, y2)
        arrow = compose_path(
            self.total,
            [
                self.lam(x, sum_y),
                strict.d_right(self.ev(x), self.ev(y), self.ev(y2)),
                _invert(self.total, strict.add_mor(self.lam(x, y), self.lam(x, y2))),
            ],
        ).arrow
        source = self.add_obj(self._tensor(x, y), self._tensor(x, y2))
        return PsiMorphism(source, self._tensor(x, sum_y), arrow)

    def mu(self, c1: Id, c2: Id, x: Id, y: Id) -> Id:
        """μ: F⊗G → Ψ(τ_ξ)(G⊗F)（γ^⊠ を λ と κ で挟む）"""
        strict = self.strict
        tau = self.base.gamma(c2, c1)
        swapped = self._tensor(y, x)
        arrow = compose_path(
            self.total,
            [
                _invert(self.total, self.comparison(tau, swapped)),
                self.lam(y, x),
                strict.gamma_mult(self.ev(x), self.ev(y)),
                self._lam_inverse(x, y),
            ],
        ).arrow
        return PsiMorphism(self._tensor(x, y), self.map_object(tau, swapped), arrow)


@dataclass(eq=False)
class PsiBuild:
    """psi_build の結果（Ψ(ū)、ū から出る射の像、レポート）"""

    psi: Psi
    base: Tuple
    structure: MonoidalStructure
    maps: Dict[WreathMorphism, MonoidalMap]
    report: ValidationReport


def psi_build(strict: StrictTotal, base: Tuple, bounds: Optional[PsiBounds] = None, psi: Optional[Psi] = None) -> PsiBuild:
    """
    Ψ(ū) と、ū から出る 𝒜 の射 (q, f̄) の像を構成して検査

    Args:
        strict: strictify_total の結果
        base: 𝒜 の対象 ū
        bounds: 検査範囲
        psi: 構成済みの Ψ（省略時は新しく作る）

    Returns:
        PsiBuild（レポートは psi.sum.*, psi.zero, psi.map.*, ū = () なら psi.unit_fiber.*）

    Raises:
        ConstructionError: 基底が亜群でない場合
        StructuralError: ū が 𝒜 の切断に含まれない場合
    """
    psi = psi or Psi(strict, bounds)
    A = psi.wreath.category
    base = tuple(base)
    if not A.has_object(base):
        raise StructuralError(f"{format_id(base)} is not an object of {A.name}")
    sample = psi.bounds.sample
    structure = psi.fiber(base)
    report = ValidationReport(f"Ψ{format_id(base)} over {strict.data.name}", psi.bounds.as_bounds())
    objects = psi.window(base)
    morphisms = structure.category.morphisms()
    check_permutative_window(report, "psi.sum.", structure, objects, spread(morphisms, sample), sample)
    zero = structure.unit
    for x in objects:
        _holds(report, "psi.zero", ("F⊕𝕆", x), lambda: psi.add_obj(x, zero), lambda: x)
        _holds(report, "psi.zero", ("𝕆⊕F", x), lambda: psi.add_obj(zero, x), lambda: x)
    maps = {}
    for w in A.morphisms():
        if w.source != base:
            continue
        maps[w] = psi.fmap(w)
        report.merge(validate_monoidal_map(maps[w]), prefix="psi.")
    if not base:
        report.merge(unit_fiber_check(psi))
    logger.info("Ψ%s: %d objects, %d maps", format_id(base), len(objects), len(maps))
    return PsiBuild(psi, base, structure, maps, report)


def unit_fiber_check(psi: Psi) -> ValidationReport:
    """
    Ψ(()) と 𝒟 の 1 の上のファイバー 𝒟₁ の比較

    F ↦ Θ(ev F) が忠実充満で、𝒟₁ の各対象 d が 1項の係数 ((d), id_1) の値と同型であることを検査。

    Args:
        psi: Ψ

    Returns:
        レポート（psi.unit_fiber.full, psi.unit_fiber.essential）
    """
    data = psi.strict.data
    C = data.base
    unit = data.base_mult.unit
    sample = psi.bounds.sample
    report = ValidationReport(f"Ψ(()) ≅ {data.total.name}_1", psi.bounds.as_bounds())
    D1 = fiber(data.fibered, unit)
    cat = psi.category(())
    for x, y in _instances(report, "psi.unit_fiber.full", [[psi.window(()), psi.window(())]], sample):
        arrows = [g.arrow for g in cat.hom(x, y)]
        expected = D1.hom(psi.theta(x), psi.theta(y))
        report.check("psi.unit_fiber.full", set(arrows) == set(expected), (x, y), f"{len(arrows)} != {len(expected)}")
    for d in D1.objects():
        scalar = StrictTotalObject((), (((d,), C.identity(unit)),))
        value = psi.theta(PsiObject((), (PsiRow(scalar, ()),)))
        found = any(D1.is_iso(g) for g in D1.hom(value, d))
        report.check("psi.unit_fiber.essential", found, (d,), f"no isomorphism to {format_id(d)}")
    return report


def validate_psi(psi: Psi, sample: Optional[int] = None) -> ValidationReport:
    """
    Ψ の環データとしての検査（(c.1)–(c.14)）と 𝒜 の検査

    Args:
        psi: Ψ
        sample: 図式ごとのインスタンス上限（省略時は bounds.sample）

    Returns:
        レポート
    """
    sample = sample if sample is not None else psi.bounds.sample
    report = ValidationReport(psi.name, psi.bounds.as_bounds())
    report.merge(psi.wreath.report)
    report.merge(validate_ring_data(psi, sample=sample, require_mu=True))
    return report
