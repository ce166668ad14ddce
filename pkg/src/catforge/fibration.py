#!/usr/bin/env python3
"""
ファイバー圏: カルテシアン射・ファイバー性の検査・引き戻しの選択・
Grothendieck 構成とその往復検査
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

from catforge.errors import ConstructionError, StructuralError
from catforge.fincat import (
    Category,
    FinCategory,
    Functor,
    FunctorData,
    Id,
    compose_functors,
    find_isomorphism,
    format_id,
    identity_functor,
    subcategory,
    validate_functor,
)
from catforge.report import ValidationReport

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class FiberedFunctor:
    """射影関手 Λ: 𝒟 → 𝒞"""

    total: Category
    base: Category
    projection: Functor
    groupoid_mode: bool = False
    name: str = "Λ"

    def over(self, c: Id) -> List[Id]:
        """c の上にある対象"""
        return [d for d in self.total.objects() if self.projection.obj(d) == c]

    def require_groupoid(self):
        """基底が亜群であることを要求"""
        if not self.base.is_groupoid():
            witness = next(f for f in self.base.morphisms() if not self.base.is_iso(f))
            raise ConstructionError(f"{self.name}: base is not a groupoid", witness=witness)
        self.groupoid_mode = True

    @classmethod
    def from_document(cls, doc: Dict, name: str = "Λ") -> "FiberedFunctor":
        """"total", "base", "projection" を持つ文書から構成"""
        try:
            total = FinCategory.from_document(doc["total"], name="total")
            base = FinCategory.from_document(doc["base"], name="base")
            projection = FunctorData(
                total,
                base,
                dict(doc["projection"]["objects"]),
                dict(doc["projection"]["morphisms"]),
                name=name,
            )
        except KeyError as e:
            raise StructuralError(f"fibered document: missing key {e}") from None
        return cls(total, base, projection, bool(doc.get("groupoid_mode", False)), name=name)


class CartesianVerdict(NamedTuple):
    """カルテシアン判定の結果（失敗時は (g′, f̃, 持ち上げの個数)）"""

    ok: bool
    witness: Optional[Tuple[Id, Id, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def is_cartesian(fib: FiberedFunctor, g: Id) -> CartesianVerdict:
    """
    g がカルテシアン射かを判定

    Args:
        fib: ファイバー関手
        g: 全体圏の射 d → d′

    Returns:
        CartesianVerdict（失敗時は持ち上げが 0 個か 2 個以上になる (g′, f̃) を証拠に返す）
    """
    total, base, lam = fib.total, fib.base, fib.projection
    d, d2 = total.dom(g), total.cod(g)
    f = lam.mor(g)
    c = base.dom(f)
    for d3 in total.objects():
        for g2 in total.hom(d3, d2):
            target = lam.mor(g2)
            for f3 in base.hom(lam.obj(d3), c):
                if base.composite(f, f3) != target:
                    continue
                count = 0
                for g3 in total.hom(d3, d):
                    if lam.mor(g3) == f3 and total.composite(g, g3) == g2:
                        count += 1
                if count != 1:
                    return CartesianVerdict(False, (g2, f3, count))
    return CartesianVerdict(True)


def _lifts(fib: FiberedFunctor, f: Id, d2: Id) -> List[Id]:
    """f の上にあり終域が d2 の射"""
    total, lam = fib.total, fib.projection
    source = fib.base.dom(f)
    result = []
    for d in fib.over(source):
        for g in total.hom(d, d2):
            if lam.mor(g) == f:
                result.append(g)
    return result


def validate_fibered(fib: FiberedFunctor) -> ValidationReport:
    """
    すべての (f: c→c′, c′ 上の d′) にカルテシアンな持ち上げがあるか検査

    Args:
        fib: ファイバー関手

    Returns:
        レポート（"fibered.lift" の違反が持ち上げのない組）
    """
    report = ValidationReport(f"fibered {fib.name}")
    report.merge(validate_functor(fib.projection), prefix="fibered.")
    base = fib.base
    for f in base.morphisms():
        for d2 in fib.over(base.cod(f)):
            found = any(is_cartesian(fib, g) for g in _lifts(fib, f, d2))
            report.check("fibered.lift", found, (f, d2), "no cartesian lift")
    return report


@dataclass(eq=False)
class PullbackChoice:
    """選択された引き戻し (f, d′) → (f*d′, η)"""

    fibered: FiberedFunctor
    table: Dict[Tuple[Id, Id], Tuple[Id, Id]] = field(default_factory=dict)

    def pullback(self, f: Id, d2: Id) -> Id:
        return self.entry(f, d2)[0]

    def lift(self, f: Id, d2: Id) -> Id:
        return self.entry(f, d2)[1]

    def entry(self, f: Id, d2: Id) -> Tuple[Id, Id]:
        try:
            return self.table[(f, d2)]
        except KeyError:
            raise StructuralError(f"no chosen pullback of {format_id(d2)} along {format_id(f)}") from None


def choose_pullbacks(fib: FiberedFunctor) -> PullbackChoice:
    """
    決定的に引き戻しを選ぶ

    恒等射の上では恒等射を、それ以外では ID の文字列表現が最小のカルテシアン持ち上げを選ぶ。

    Args:
        fib: validate_fibered に通ったファイバー関手

    Returns:
        PullbackChoice

    Raises:
        ConstructionError: 持ち上げが存在しない組がある場合
    """
    base, total = fib.base, fib.total
    choice = PullbackChoice(fib)
    for f in base.morphisms():
        c2 = base.cod(f)
        for d2 in fib.over(c2):
            if f == base.identity(c2):
                choice.table[(f, d2)] = (d2, total.identity(d2))
                continue
            candidates = sorted((g for g in _lifts(fib, f, d2) if is_cartesian(fib, g)), key=format_id)
            if not candidates:
                raise ConstructionError(f"{fib.name} is not fibered", witness=(f, d2))
            eta = candidates[0]
            choice.table[(f, d2)] = (total.dom(eta), eta)
    logger.debug("chose %d pullbacks for %s", len(choice.table), fib.name)
    return choice


def fiber(fib: FiberedFunctor, c: Id) -> FinCategory:
    """
    c 上のファイバー（c 上の対象と id_c 上の射）

    Args:
        fib: ファイバー関手
        c: 基底の対象

    Returns:
        FinCategory

    Raises:
        StructuralError: c が基底の対象でない場合
    """
    if not fib.base.has_object(c):
        raise StructuralError(f"{format_id(c)} is not an object of {fib.base.name}")
    objects = fib.over(c)
    ident = fib.base.identity(c)
    morphisms = [
        g
        for d in objects
        for d2 in objects
        for g in fib.total.hom(d, d2)
        if fib.projection.mor(g) == ident
    ]
    return subcategory(fib.total, objects, morphisms, name=f"{fib.name}^-1({format_id(c)})")


def fill_in(fib: FiberedFunctor, source: Id, target: Id, over: Id, eta: Id, value: Id) -> Id:
    """eta∘k = value となる over の上の k: source → target（一意）"""
    total = fib.total
    found = [
        k
        for k in total.hom(source, target)
        if fib.projection.mor(k) == over and total.composite(eta, k) == value
    ]
    if len(found) != 1:
        raise StructuralError(
            f"fill-in {format_id(source)} → {format_id(target)} is not unique ({len(found)} found)"
        )
    return found[0]


def pullback_functor(choice: PullbackChoice, f: Id) -> FunctorData:
    """
    f: c → c′ に沿った引き戻し関手 f*: 𝒟_{c′} → 𝒟_c

    Args:
        choice: 引き戻しの選択
        f: 基底の射

    Returns:
        FunctorData（射は η₂∘k = h∘η₁ の一意な埋め込み）
    """
    fib = choice.fibered
    base, total = fib.base, fib.total
    c, c2 = base.dom(f), base.cod(f)
    source, target = fiber(fib, c2), fiber(fib, c)
    object_map = {d2: choice.pullback(f, d2) for d2 in source.objects()}
    morphism_map = {}
    for h in source.morphisms():
        d1, d2 = source.dom(h), source.cod(h)
        eta1, eta2 = choice.lift(f, d1), choice.lift(f, d2)
        morphism_map[h] = fill_in(
            fib, object_map[d1], object_map[d2], base.identity(c), eta2, total.compose(h, eta1)
        )
    return FunctorData(source, target, object_map, morphism_map, name=f"{format_id(f)}*")


def pullback_comparison(
    choice: PullbackChoice, f: Id, g: Id
) -> Tuple[Dict[Id, Id], ValidationReport]:
    """
    (g∘f)* と f*g* の比較射（f: c→c′, g: c′→c″）

    Args:
        choice: 引き戻しの選択
        f: 先に適用する基底の射
        g: 後に適用する基底の射

    Returns:
        (d″ → 比較射 k, 同型性のレポート)
    """
    fib = choice.fibered
    base, total = fib.base, fib.total
    gf = base.compose(g, f)
    c = base.dom(f)
    report = ValidationReport(f"pullback comparison {format_id(g)}∘{format_id(f)}")
    components = {}
    for d3 in fib.over(base.cod(g)):
        top = choice.pullback(gf, d3)
        mid = choice.pullback(g, d3)
        bottom = choice.pullback(f, mid)
        eta = total.compose(choice.lift(g, d3), choice.lift(f, mid))
        try:
            k = fill_in(fib, top, bottom, base.identity(c), eta, choice.lift(gf, d3))
        except StructuralError as e:
            report.check("pullback.comparison_exists", False, (g, f, d3), e.message)
            continue
        report.check("pullback.comparison_exists", True, (g, f, d3))
        report.check("pullback.comparison_iso", total.is_iso(k), (g, f, d3), f"k = {format_id(k)}")
        components[d3] = k
    return components, report


def comma_projection(C: FinCategory, u: Id) -> FiberedFunctor:
    """
    コンマ圏の射影 θ_u: 𝒞/u → 𝒞

    対象は u への射、射 (h, f, f′) は f′∘h = f を満たす h。

    Args:
        C: 基底の圏
        u: 対象

    Returns:
        FiberedFunctor
    """
    objects = [f for w in C.objects() for f in C.hom(w, u)]
    morphisms = {}
    for f in objects:
        for f2 in objects:
            for h in C.hom(C.dom(f), C.dom(f2)):
                if C.composite(f2, h) == f:
                    morphisms[(h, f, f2)] = (f, f2)
    identity = {f: (C.identity(C.dom(f)), f, f) for f in objects}

    def compose(second, first):
        return (C.compose(second[0], first[0]), first[1], second[2])

    comma = FinCategory.from_composition(objects, morphisms, identity, compose, name=f"{C.name}/{format_id(u)}")
    theta = FunctorData(
        comma,
        C,
        {f: C.dom(f) for f in objects},
        {m: m[0] for m in morphisms},
        name=f"θ_{format_id(u)}",
    )
    return FiberedFunctor(comma, C, theta, groupoid_mode=C.is_groupoid(), name=theta.name)


def validate_fibered_functor(
    functor: Functor, source: FiberedFunctor, target: FiberedFunctor, over: Functor
) -> ValidationReport:
    """
    ファイバー圏の射（基底の関手 φ の上にあり、カルテシアン射を保つ）か検査

    Args:
        functor: 全体圏の間の関手 F
        source: F の始域側の射影
        target: F の行き先側の射影
        over: 基底の関手 φ

    Returns:
        レポート
    """
    report = ValidationReport(f"fibered functor {functor.name}")
    report.merge(validate_functor(functor), prefix="fibered_functor.")
    lam1, lam2 = source.projection, target.projection
    for d in source.total.objects():
        report.check(
            "fibered_functor.over",
            lam2.obj(functor.obj(d)) == over.obj(lam1.obj(d)),
            d,
            "object not over φ",
        )
    for g in source.total.morphisms():
        report.check(
            "fibered_functor.over",
            lam2.mor(functor.mor(g)) == over.mor(lam1.mor(g)),
            g,
            "morphism not over φ",
        )
        if is_cartesian(source, g):
            verdict = is_cartesian(target, functor.mor(g))
            report.check(
                "fibered_functor.cartesian", verdict.ok, g, f"image not cartesian: {verdict.witness}"
            )
    return report


@dataclass(eq=False)
class IndexedFamily:
    """𝒞^op → Cat の関手 P（各 c に P(c)、各 f: c→d に P(f): P(d) → P(c)）"""

    base: FinCategory
    fibers: Dict[Id, FinCategory]
    transitions: Dict[Id, FunctorData]
    name: str = "P"

    def at(self, c: Id) -> FinCategory:
        try:
            return self.fibers[c]
        except KeyError:
            raise StructuralError(f"{self.name}: no category at {format_id(c)}") from None

    def along(self, f: Id) -> FunctorData:
        try:
            return self.transitions[f]
        except KeyError:
            raise StructuralError(f"{self.name}: no transition along {format_id(f)}") from None

    @classmethod
    def from_document(cls, doc: Dict, name: str = "P") -> "IndexedFamily":
        """"base", "fibers", "transitions" を持つ文書から構成"""
        try:
            base = FinCategory.from_document(doc["base"], name="base")
            fibers = {
                c: FinCategory.from_document(d, name=f"{name}({c})") for c, d in doc["fibers"].items()
            }
            transitions = {}
            for f, t in doc["transitions"].items():
                transitions[f] = FunctorData(
                    fibers[base.cod(f)],
                    fibers[base.dom(f)],
                    dict(t["objects"]),
                    dict(t["morphisms"]),
                    name=f"{name}({f})",
                )
        except KeyError as e:
            raise StructuralError(f"pseudofunctor document: missing key {e}") from None
        return cls(base, fibers, transitions, name=name)


def validate_family(family: IndexedFamily) -> ValidationReport:
    """
    P が 𝒞^op 上の（厳密な）関手か検査

    Args:
        family: 添字付き族

    Returns:
        レポート
    """
    report = ValidationReport(f"family {family.name}")
    base = family.base
    for c in base.objects():
        family.at(c)
    for f in base.morphisms():
        t = family.along(f)
        ok = t.source == family.at(base.cod(f)) and t.target == family.at(base.dom(f))
        report.check("family.typing", ok, f, "transition between the wrong categories")
        if ok:
            report.merge(validate_functor(t), prefix="family.")
    for c in base.objects():
        t = family.along(base.identity(c))
        report.check("family.identity", t == identity_functor(family.at(c)), c, "P(id) is not the identity")
    for f in base.morphisms():
        for g in base.out_morphisms(base.cod(f)):
            gf = base.compose(g, f)
            expected = compose_functors(family.along(f), family.along(g))
            report.check("family.compose", family.along(gf) == expected, (g, f), "P(g∘f) != P(f)P(g)")
    return report


def grothendieck(family: IndexedFamily) -> FiberedFunctor:
    """
    Grothendieck 構成 ∫P → 𝒞

    対象 (x, c)、射 (α, f, y): (x, c) → (y, d)（α: x → P(f)y）、
    合成 (β, g, z)∘(α, f, y) = (P(f)(β)∘α, g∘f, z)。

    Args:
        family: 関手的な族

    Returns:
        FiberedFunctor

    Raises:
        ConstructionError: P が関手的でない場合
    """
    check = validate_family(family)
    if not check.ok:
        raise ConstructionError(f"{family.name} is not functorial", witness=check.failures()[0])
    base = family.base
    objects = [(x, c) for c in base.objects() for x in family.at(c).objects()]
    morphisms = {}
    for f in base.morphisms():
        c, d = base.dom(f), base.cod(f)
        pc, pf = family.at(c), family.along(f)
        for y in family.at(d).objects():
            for x in pc.objects():
                for alpha in pc.hom(x, pf.obj(y)):
                    morphisms[(alpha, f, y)] = ((x, c), (y, d))
    identity = {(x, c): (family.at(c).identity(x), base.identity(c), x) for x, c in objects}

    def compose(second, first):
        beta, g, z = second
        alpha, f, _ = first
        pc = family.at(base.dom(f))
        return (pc.compose(family.along(f).mor(beta), alpha), base.compose(g, f), z)

    total = FinCategory.from_composition(objects, morphisms, identity, compose, name=f"∫{family.name}")
    projection = FunctorData(
        total,
        base,
        {o: o[1] for o in objects},
        {m: m[1] for m in morphisms},
        name=f"π_{family.name}",
    )
    logger.info("grothendieck %s: %d objects, %d morphisms", family.name, len(objects), len(morphisms))
    return FiberedFunctor(total, base, projection, name=projection.name)


def roundtrip_check(family: IndexedFamily) -> ValidationReport:
    """
    Grothendieck 構成の往復検査

    ∫P がファイバー圏であること、ファイバーが P(c) と自然に同型であること、
    選択された引き戻し f* がその同型の下で P(f) と同型であることを確かめる。

    Args:
        family: 関手的な族

    Returns:
        "roundtrip.*" の検査を集めたレポート
    """
    report = ValidationReport(f"roundtrip {family.name}")
    fib = grothendieck(family)
    report.merge(validate_fibered(fib), prefix="roundtrip.")
    choice = choose_pullbacks(fib)
    base = family.base

    canonical = {}
    for c in base.objects():
        fc, pc = fiber(fib, c), family.at(c)
        iso = FunctorData(
            fc,
            pc,
            {o: o[0] for o in fc.objects()},
            {m: m[0] for m in fc.morphisms()},
            name=f"ι_{format_id(c)}",
        )
        canonical[c] = iso
        sub = validate_functor(iso)
        bijective = (
            sorted(map(format_id, iso.object_map.values())) == sorted(map(format_id, pc.objects()))
            and sorted(map(format_id, iso.morphism_map.values())) == sorted(map(format_id, pc.morphisms()))
        )
        report.check("roundtrip.fiber_iso", sub.ok and bijective, c, "canonical map is not an isomorphism")
        report.check("roundtrip.fiber_search", find_isomorphism(fc, pc) is not None, c, "no isomorphism found")

    for f in base.morphisms():
        c = base.dom(f)
        pc, pf = family.at(c), family.along(f)
        star = pullback_functor(choice, f)
        k = {}
        for y in family.at(base.cod(f)).objects():
            eta = choice.lift(f, (y, base.cod(f)))
            k[y] = eta[0]
            report.check("roundtrip.transition_iso", pc.is_iso(eta[0]), (f, y), f"component {format_id(eta[0])}")
        for h in family.at(base.cod(f)).morphisms():
            y1, y2 = family.at(base.cod(f)).dom(h), family.at(base.cod(f)).cod(h)
            image = canonical[c].mor(star.mor((h, base.identity(base.cod(f)), y2)))
            lhs = pc.composite(pf.mor(h), k[y1])
            rhs = pc.composite(k[y2], image)
            report.check("roundtrip.transition_natural", lhs is not None and lhs == rhs, (f, h), f"{format_id(lhs)} != {format_id(rhs)}")
    return report
