#!/usr/bin/env python3
"""
関手 E → ℙ の環データ（⊗_{c₁,c₂}, 1, d^l, d^r, μ）と、条件 (c.1)–(c.14) の検査、
および Σ_* / EΣ_* から ℙ^E への多関手 S の構成と逆方向の取り出し

S_k(1_k)_{c̄} は左入れ子の積 x_{1..k} = ((x₁⊗x₂)⊗⋯)⊗x_k、その δ^i は
d^l の後に d^r⊗id を合成したもの。S_k(σ) = (σ⁻¹)*S_k(1_k)。
"""

import logging
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Dict, List, Optional, Sequence, Tuple

from catforge.biperm import BipermData, _holds, _instances, check_permutative_window
from catforge.bounds import MultiBounds, spread
from catforge.errors import OutsideTruncation, StructuralError
from catforge.fincat import FunctorData, Id, compose_path, format_id
from catforge.monostruct import (
    MonoidalMap,
    MonoidalStructure,
    PermutativeStructure,
    discrete_from_monoid,
    identity_map,
    nested_permutation,
    tensor_all,
    tensor_all_morphisms,
    validate_monoidal_map,
)
from catforge.multicat import (
    EFunctor,
    FunctorMulticategory,
    KLinearCell,
    KLinearMap,
    MultiCell,
    MultiMorphism,
    Multifunctor,
    PMulticategory,
    Perm,
    SigmaMulticategory,
    adjacent_transpositions,
    all_perms,
    cell_act,
    cell_compose,
    cell_gamma,
    cell_identity,
    identity_perm,
    klinear_constant,
    klinear_from_functions,
    klinear_from_monoidal_map,
    klinear_unit,
    perm_compose,
    perm_inverse,
    transposition,
    unapply_perm,
    validate_klinear,
    validate_multifunctor,
)
from catforge.report import ValidationReport

logger = logging.getLogger(__name__)

MODES = ("sigma", "esigma")


class RingData:
    """関手 F: E → ℙ と乗法の環データのインターフェースを表すクラス

    F(c) の ⊕ は F(c) の置換圏構造、⊗_{c₁,c₂}: F(c₁)×F(c₂) → F(c₁⊗c₂)。
    d^l(x, x′, y): (x⊗y)⊕(x′⊗y) → (x⊕x′)⊗y、d^r(x, y, y′): (x⊗y)⊕(x⊗y′) → x⊗(y⊕y′)、
    μ(x, y): x⊗y → F(γ_{c₂,c₁})(y⊗x)。
    """

    name = "ring data"
    base: MonoidalStructure
    one: Id
    has_mu = False

    def base_objects(self) -> List[Id]:
        return self.base.category.objects()

    def base_morphisms(self) -> List[Id]:
        return self.base.category.morphisms()

    def fiber(self, c: Id) -> MonoidalStructure:
        raise NotImplementedError

    def objects(self, c: Id) -> List[Id]:
        return self.fiber(c).category.objects()

    def morphisms(self, c: Id) -> List[Id]:
        return self.fiber(c).category.morphisms()

    def fmap(self, f: Id) -> MonoidalMap:
        raise NotImplementedError

    def tensor_obj(self, c1: Id, c2: Id, x: Id, y: Id) -> Id:
        raise NotImplementedError

    def tensor_mor(self, c1: Id, c2: Id, g: Id, h: Id) -> Id:
        raise NotImplementedError

    def d_left(self, c1: Id, c2: Id, x: Id, x2: Id, y: Id) -> Id:
        raise NotImplementedError

    def d_right(self, c1: Id, c2: Id, x: Id, y: Id, y2: Id) -> Id:
        raise NotImplementedError

    def mu(self, c1: Id, c2: Id, x: Id, y: Id) -> Id:
        raise StructuralError(f"{self.name}: no symmetry μ")


def _get(table: Dict, key: Tuple, what: str, name: str) -> Id:
    try:
        return table[key]
    except KeyError:
        raise StructuralError(f"{name}: {what} undefined at {format_id(key)}") from None


class TableRingData(RingData):
    """参照表で与えられる環データ"""

    def __init__(
        self,
        base: MonoidalStructure,
        fibers: Dict[Id, MonoidalStructure],
        maps: Dict[Id, MonoidalMap],
        tensor_objects: Dict[Tuple, Id],
        tensor_morphisms: Dict[Tuple, Id],
        one: Id,
        d_left: Dict[Tuple, Id],
        d_right: Dict[Tuple, Id],
        mu: Optional[Dict[Tuple, Id]] = None,
        name: str = "ring data",
    ):
        """
        初期化

        Args:
            base: E（置換圏）
            fibers: c → F(c)
            maps: E の射 f → F(f)（strict または lax_star）
            tensor_objects: (c₁, c₂, x, y) → x⊗y
            tensor_morphisms: (c₁, c₂, g, h) → g⊗h
            one: 1 ∈ F(1_E)
            d_left: (c₁, c₂, x, x′, y) → d^l
            d_right: (c₁, c₂, x, y, y′) → d^r
            mu: (c₁, c₂, x, y) → μ（省略可）
        """
        self.base = base
        self.fibers = dict(fibers)
        self.maps = dict(maps)
        self.tensor_objects = dict(tensor_objects)
        self.tensor_morphisms = dict(tensor_morphisms)
        self.one = one
        self.d_left_table = dict(d_left)
        self.d_right_table = dict(d_right)
        self.mu_table = None if mu is None else dict(mu)
        self.has_mu = mu is not None
        self.name = name

    def fiber(self, c: Id) -> MonoidalStructure:
        return _get(self.fibers, c, "fiber", self.name)

    def fmap(self, f: Id) -> MonoidalMap:
        return _get(self.maps, f, "F(f)", self.name)

    def tensor_obj(self, c1: Id, c2: Id, x: Id, y: Id) -> Id:
        return _get(self.tensor_objects, (c1, c2, x, y), "⊗", self.name)

    def tensor_mor(self, c1: Id, c2: Id, g: Id, h: Id) -> Id:
        return _get(self.tensor_morphisms, (c1, c2, g, h), "⊗", self.name)

    def d_left(self, c1: Id, c2: Id, x: Id, x2: Id, y: Id) -> Id:
        return _get(self.d_left_table, (c1, c2, x, x2, y), "d^l", self.name)

    def d_right(self, c1: Id, c2: Id, x: Id, y: Id, y2: Id) -> Id:
        return _get(self.d_right_table, (c1, c2, x, y, y2), "d^r", self.name)

    def mu(self, c1: Id, c2: Id, x: Id, y: Id) -> Id:
        if self.mu_table is None:
            return super().mu(c1, c2, x, y)
        return _get(self.mu_table, (c1, c2, x, y), "μ", self.name)

    def with_one(self, one: Id) -> "TableRingData":
        """1 だけを差し替えたコピー"""
        return TableRingData(
            self.base, self.fibers, self.maps, self.tensor_objects, self.tensor_morphisms, one,
            self.d_left_table, self.d_right_table, self.mu_table, name=self.name,
        )

    @classmethod
    def from_document(cls, doc: Dict, name: str = "ring data") -> "TableRingData":
        """
        環データ文書から構成

        Args:
            doc: "base", "fibers", "maps", "tensor", "one", "d_left", "d_right" と任意の "mu" を持つ辞書

        Returns:
            TableRingData

        Raises:
            StructuralError: 文書の形が不正な場合
        """
        try:
            base = PermutativeStructure.from_document(doc["base"], name=f"{name}.base")
            fibers = {
                c: PermutativeStructure.from_document(fd, name=f"F({c})") for c, fd in doc["fibers"].items()
            }
            maps = {}
            for entry in doc["maps"]:
                f = entry["morphism"]
                src, tgt = fibers[entry["source"]], fibers[entry["target"]]
                functor = FunctorData(
                    src.category,
                    tgt.category,
                    {x: y for x, y in entry["objects"]},
                    {g: h for g, h in entry["morphisms"]},
                    name=f"F({f})",
                )
                kind = entry.get("kind", "strict")
                lam = {(x, y): m for x, y, m in entry.get("lam", [])}
                if lam:
                    maps[f] = MonoidalMap(functor, src, tgt, kind, lam=lam, name=f"F({f})")
                else:
                    maps[f] = _weakened_map(functor, src, tgt, kind, f"F({f})")
            tensor = doc["tensor"]
            tensor_objects = {(c1, c2, x, y): z for c1, c2, x, y, z in tensor["objects"]}
            tensor_morphisms = {(c1, c2, g, h): m for c1, c2, g, h, m in tensor["morphisms"]}
            d_left = {(c1, c2, x, x2, y): m for c1, c2, x, x2, y, m in doc["d_left"]}
            d_right = {(c1, c2, x, y, y2): m for c1, c2, x, y, y2, m in doc["d_right"]}
            mu = None
            if "mu" in doc:
                mu = {(c1, c2, x, y): m for c1, c2, x, y, m in doc["mu"]}
            one = doc["one"]
        except (KeyError, ValueError, TypeError) as e:
            raise StructuralError(f"{name}: malformed ring document ({e})") from None
        return cls(base, fibers, maps, tensor_objects, tensor_morphisms, one, d_left, d_right, mu, name=name)

    def to_document(self) -> Dict:
        maps = []
        for f, m in self.maps.items():
            entry = {
                "morphism": format_id(f),
                "source": format_id(self.base.category.dom(f)),
                "target": format_id(self.base.category.cod(f)),
                "kind": m.kind,
                "objects": [[format_id(x), format_id(m.functor.obj(x))] for x in m.source.category.objects()],
                "morphisms": [[format_id(g), format_id(m.functor.mor(g))] for g in m.source.category.morphisms()],
            }
            if m.kind != "strict":
                entry["lam"] = [
                    [format_id(x), format_id(y), format_id(m.lam_at(x, y))]
                    for x, y in cartesian(m.source.category.objects(), repeat=2)
                ]
            maps.append(entry)
        doc = {
            "kind": "ring",
            "base": self.base.to_document(),
            "fibers": {format_id(c): fib.to_document() for c, fib in self.fibers.items()},
            "maps": maps,
            "tensor": {
                "objects": [[*map(format_id, k), format_id(v)] for k, v in self.tensor_objects.items()],
                "morphisms": [[*map(format_id, k), format_id(v)] for k, v in self.tensor_morphisms.items()],
            },
            "one": format_id(self.one),
            "d_left": [[*map(format_id, k), format_id(v)] for k, v in self.d_left_table.items()],
            "d_right": [[*map(format_id, k), format_id(v)] for k, v in self.d_right_table.items()],
        }
        if self.mu_table is not None:
            doc["mu"] = [[*map(format_id, k), format_id(v)] for k, v in self.mu_table.items()]
        return doc


def _weakened_map(functor: FunctorData, source: MonoidalStructure, target: MonoidalStructure, kind: str, name: str) -> MonoidalMap:
    """λ を省いた写像（strict 以外は λ = id で弱める）"""
    base = MonoidalMap(functor, source, target, "strict", name=name)
    return base if kind == "strict" else base.with_kind(kind)


def constant_ring_data(E: MonoidalStructure, rig: BipermData, with_mu: bool = True, name: str = "") -> TableRingData:
    """
    双置換圏 rig を値とする定値関手 E → ℙ の環データ

    F(c) = rig の ⊕、F(f) = 恒等写像、⊗_{c₁,c₂} = rig の ⊗、μ = γ^⊗。

    Args:
        E: 置換圏
        rig: 双置換圏
        with_mu: μ を含めるか

    Returns:
        TableRingData
    """
    add, mult = rig.additive, rig.multiplicative
    ecat = E.category
    objects = add.category.objects()
    morphisms = add.category.morphisms()
    ident = identity_map(add)
    fibers = {c: add for c in ecat.objects()}
    maps = {f: ident for f in ecat.morphisms()}
    pairs = list(cartesian(ecat.objects(), repeat=2))
    tensor_objects = {(c1, c2, x, y): mult.tensor_obj(x, y) for c1, c2 in pairs for x, y in cartesian(objects, repeat=2)}
    tensor_morphisms = {
        (c1, c2, g, h): mult.tensor_mor(g, h) for c1, c2 in pairs for g, h in cartesian(morphisms, repeat=2)
    }
    d_left = {(c1, c2) + k: v for c1, c2 in pairs for k, v in rig.d_left.items()}
    d_right = {(c1, c2) + k: v for c1, c2 in pairs for k, v in rig.d_right.items()}
    mu = None
    if with_mu:
        mu = {(c1, c2, x, y): mult.gamma(x, y) for c1, c2 in pairs for x, y in cartesian(objects, repeat=2)}
    return TableRingData(
        E, fibers, maps, tensor_objects, tensor_morphisms, mult.unit, d_left, d_right, mu,
        name=name or f"{rig.name} over {E.name}",
    )


def ring_data_from_rig(rig: BipermData, with_mu: bool = True) -> TableRingData:
    """1点の E 上の環データ"""
    E = discrete_from_monoid(["*"], {("*", "*"): "*"}, "*", name="terminal")
    return constant_ring_data(E, rig, with_mu=with_mu, name=rig.name)


# --- 検査 ------------------------------------------------------------------------


def _tau(E: MonoidalStructure, c1: Id, c2: Id) -> Id:
    """τ_{ξ}: c₂⊗c₁ → c₁⊗c₂"""
    return E.gamma(c2, c1)


def validate_ring_data(d: RingData, sample: Optional[int] = 400, require_mu: bool = False) -> ValidationReport:
    """
    環データの条件 (c.1)–(c.10)、μ があれば (c.11)–(c.14) を検査

    Args:
        d: 環データ
        sample: 図式ごとのインスタンス上限
        require_mu: μ を必須とするか（EΣ_* から構成する場合）

    Returns:
        レポート（ring.*, c.1 … c.14）

    Raises:
        StructuralError: require_mu で μ がない場合
    """
    if require_mu and not d.has_mu:
        raise StructuralError(f"{d.name}: μ required for the EΣ construction")
    report = ValidationReport(f"ring data {d.name}", {"sample": sample or "all"})
    E = d.base
    ecat = E.category
    cs = d.base_objects()
    tO, tM, dl, dr = d.tensor_obj, d.tensor_mor, d.d_left, d.d_right
    eT = E.tensor_obj

    def fib(c):
        return d.fiber(c)

    def ident(c, x):
        return fib(c).category.identity(x)

    def plus(c, *mors):
        return tensor_all_morphisms(fib(c), list(mors))

    def comp(c, *chain):
        return compose_path(fib(c).category, list(chain))

    def run(name: str, shape: str, body):
        """shape の各文字は変数が属する基底（例 "aab" は x, x′ が同じファイバー）"""
        used = sorted(set(shape))
        groups = []
        for combo in cartesian(cs, repeat=len(used)):
            assign = dict(zip(used, combo))
            groups.append([[combo]] + [d.objects(assign[ch]) for ch in shape])
        for item in _instances(report, name, groups, sample):
            try:
                body(item[0], *item[1:])
            except OutsideTruncation:
                report.skip(name)

    # 構成要素
    for c in cs:
        check_permutative_window(report, "ring.fiber.", fib(c), d.objects(c), d.morphisms(c), sample)
    for f in d.base_morphisms():
        m = d.fmap(f)
        report.check("ring.map.kind", m.kind in ("strict", "lax_star"), (f,), m.kind)
        report.merge(validate_monoidal_map(m), prefix="ring.")
        report.check(
            "ring.map.typing",
            m.source is fib(ecat.dom(f)) and m.target is fib(ecat.cod(f)),
            (f,),
        )
    _check_functor(d, report, sample)

    def tensor_typing(combo, x, y):
        c1, c2 = combo
        z = tO(c1, c2, x, y)
        report.check("ring.tensor.objects", fib(eT(c1, c2)).category.has_object(z), (c1, c2, x, y))
        _holds(report, "ring.tensor.identity", (c1, c2, x, y),
               lambda: tM(c1, c2, ident(c1, x), ident(c2, y)), lambda: ident(eT(c1, c2), z))

    run("ring.tensor.identity", "ab", tensor_typing)
    for c1, c2 in cartesian(cs, repeat=2):
        try:
            cat12 = fib(eT(c1, c2)).category
        except OutsideTruncation:
            report.skip("ring.tensor.compose")
            continue
        cat1, cat2 = fib(c1).category, fib(c2).category
        pairs1 = spread(_composable(cat1, d.morphisms(c1)), sample)
        pairs2 = spread(_composable(cat2, d.morphisms(c2)), sample)
        for (g2, g1), (h2, h1) in _instances(report, "ring.tensor.compose", [[pairs1, pairs2]], sample):
            _holds(report, "ring.tensor.compose", (c1, c2, g2, g1, h2, h1),
                   lambda: tM(c1, c2, cat1.compose(g2, g1), cat2.compose(h2, h1)),
                   lambda: cat12.compose(tM(c1, c2, g2, h2), tM(c1, c2, g1, h1)))

    # (c.1)
    def c1_left(combo, x, x2, x3, y):
        a, b = combo
        ab = eT(a, b)
        add = fib(a).tensor_obj
        _holds(report, "c.1", ("l", a, b, x, x2, x3, y),
               lambda: comp(ab, dl(a, b, add(x, x2), x3, y), plus(ab, dl(a, b, x, x2, y), ident(ab, tO(a, b, x3, y)))),
               lambda: comp(ab, dl(a, b, x, add(x2, x3), y), plus(ab, ident(ab, tO(a, b, x, y)), dl(a, b, x2, x3, y))))

    def c1_right(combo, x, y, y2, y3):
        a, b = combo
        ab = eT(a, b)
        add = fib(b).tensor_obj
        _holds(report, "c.1", ("r", a, b, x, y, y2, y3),
               lambda: comp(ab, dr(a, b, x, add(y, y2), y3), plus(ab, dr(a, b, x, y, y2), ident(ab, tO(a, b, x, y3)))),
               lambda: comp(ab, dr(a, b, x, y, add(y2, y3)), plus(ab, ident(ab, tO(a, b, x, y)), dr(a, b, x, y2, y3))))

    run("c.1", "aaab", c1_left)
    run("c.1", "abbb", c1_right)

    # (c.2)
    def c2_left(combo, x, x2, y):
        a, b = combo
        ab = eT(a, b)
        _holds(report, "c.2", ("l", a, b, x, x2, y),
               lambda: comp(ab, tM(a, b, fib(a).gamma(x, x2), ident(b, y)), dl(a, b, x, x2, y)),
               lambda: comp(ab, dl(a, b, x2, x, y), fib(ab).gamma(tO(a, b, x, y), tO(a, b, x2, y))))

    def c2_right(combo, x, y, y2):
        a, b = combo
        ab = eT(a, b)
        _holds(report, "c.2", ("r", a, b, x, y, y2),
               lambda: comp(ab, tM(a, b, ident(a, x), fib(b).gamma(y, y2)), dr(a, b, x, y, y2)),
               lambda: comp(ab, dr(a, b, x, y2, y), fib(ab).gamma(tO(a, b, x, y), tO(a, b, x, y2))))

    run("c.2", "aab", c2_left)
    run("c.2", "abb", c2_right)

    # (c.3)
    def c3(combo, x, x2, y, y2):
        a, b = combo
        ab = eT(a, b)
        addA, addB = fib(a).tensor_obj, fib(b).tensor_obj
        xy, xy2, x2y, x2y2 = tO(a, b, x, y), tO(a, b, x, y2), tO(a, b, x2, y), tO(a, b, x2, y2)
        _holds(report, "c.3", (a, b, x, x2, y, y2),
               lambda: comp(ab,
                            dr(a, b, addA(x, x2), y, y2),
                            plus(ab, dl(a, b, x, x2, y), dl(a, b, x, x2, y2)),
                            plus(ab, ident(ab, xy), fib(ab).gamma(xy2, x2y), ident(ab, x2y2))),
               lambda: comp(ab,
                            dl(a, b, x, x2, addB(y, y2)),
                            plus(ab, dr(a, b, x, y, y2), dr(a, b, x2, y, y2))))

    run("c.3", "aabb", c3)

    # (c.4)
    def c4_objects(combo, x, y):
        a, b = combo
        zero_ab = fib(eT(a, b)).unit
        _holds(report, "c.4", ("0y", a, b, y), lambda: tO(a, b, fib(a).unit, y), lambda: zero_ab)
        _holds(report, "c.4", ("x0", a, b, x), lambda: tO(a, b, x, fib(b).unit), lambda: zero_ab)

    def c4_left(combo, x, x2, y):
        a, b = combo
        ab = eT(a, b)
        zero_a = fib(a).unit
        _holds(report, "c.4", ("d^l(x,0,y)", a, b, x, y), lambda: dl(a, b, x, zero_a, y), lambda: ident(ab, tO(a, b, x, y)))
        _holds(report, "c.4", ("d^l(0,x,y)", a, b, x2, y), lambda: dl(a, b, zero_a, x2, y), lambda: ident(ab, tO(a, b, x2, y)))
        _holds(report, "c.4", ("d^l(x,x′,0)", a, b, x, x2), lambda: dl(a, b, x, x2, fib(b).unit),
               lambda: ident(ab, fib(ab).unit))

    def c4_right(combo, x, y, y2):
        a, b = combo
        ab = eT(a, b)
        zero_b = fib(b).unit
        _holds(report, "c.4", ("d^r(x,y,0)", a, b, x, y), lambda: dr(a, b, x, y, zero_b), lambda: ident(ab, tO(a, b, x, y)))
        _holds(report, "c.4", ("d^r(x,0,y)", a, b, x, y2), lambda: dr(a, b, x, zero_b, y2), lambda: ident(ab, tO(a, b, x, y2)))
        _holds(report, "c.4", ("d^r(0,y,y′)", a, b, y, y2), lambda: dr(a, b, fib(a).unit, y, y2),
               lambda: ident(ab, fib(ab).unit))

    run("c.4", "ab", c4_objects)
    run("c.4", "aab", c4_left)
    run("c.4", "abb", c4_right)

    # (c.5), (c.6)
    for f1, f2 in cartesian(d.base_morphisms(), repeat=2):
        a, a2 = ecat.dom(f1), ecat.cod(f1)
        b, b2 = ecat.dom(f2), ecat.cod(f2)
        F1, F2 = d.fmap(f1), d.fmap(f2)
        try:
            F12 = d.fmap(E.tensor_mor(f1, f2))
        except OutsideTruncation:
            report.skip("c.5")
            continue
        ab2 = eT(a2, b2)
        ox, oy = spread(d.objects(a), sample), spread(d.objects(b), sample)
        for x, y in _instances(report, "c.5", [[ox, oy]], sample):
            _holds(report, "c.5", (f1, f2, x, y),
                   lambda: F12.functor.obj(tO(a, b, x, y)),
                   lambda: tO(a2, b2, F1.functor.obj(x), F2.functor.obj(y)))
        mg, mh = spread(d.morphisms(a), sample), spread(d.morphisms(b), sample)
        for g, h in _instances(report, "c.5", [[mg, mh]], sample):
            _holds(report, "c.5", (f1, f2, g, h),
                   lambda: F12.functor.mor(tM(a, b, g, h)),
                   lambda: tM(a2, b2, F1.functor.mor(g), F2.functor.mor(h)))
        for x, x2, y in _instances(report, "c.6", [[ox, ox, oy]], sample):
            fx, fx2, fy = F1.functor.obj(x), F1.functor.obj(x2), F2.functor.obj(y)
            _holds(report, "c.6", ("l", f1, f2, x, x2, y),
                   lambda: comp(ab2, tM(a2, b2, _lam(F1, x, x2), ident(b2, fy)), dl(a2, b2, fx, fx2, fy)),
                   lambda: comp(ab2, F12.functor.mor(dl(a, b, x, x2, y)), _lam(F12, tO(a, b, x, y), tO(a, b, x2, y))))
        for x, y, y2 in _instances(report, "c.6", [[ox, oy, oy]], sample):
            fx, fy, fy2 = F1.functor.obj(x), F2.functor.obj(y), F2.functor.obj(y2)
            _holds(report, "c.6", ("r", f1, f2, x, y, y2),
                   lambda: comp(ab2, tM(a2, b2, ident(a2, fx), _lam(F2, y, y2)), dr(a2, b2, fx, fy, fy2)),
                   lambda: comp(ab2, F12.functor.mor(dr(a, b, x, y, y2)), _lam(F12, tO(a, b, x, y), tO(a, b, x, y2))))

    # (c.7)
    e1 = E.unit
    report.check("c.7", d.one in set(d.objects(e1)), ("1",), f"1 = {format_id(d.one)} is not an object of F(1)")
    for c in cs:
        for x in spread(d.objects(c), sample):
            _holds(report, "c.7", ("1x", c, x), lambda: tO(e1, c, d.one, x), lambda: x)
            _holds(report, "c.7", ("x1", c, x), lambda: tO(c, e1, x, d.one), lambda: x)
        for g in spread(d.morphisms(c), sample):
            one_id = ident(e1, d.one)
            _holds(report, "c.7", ("1g", c, g), lambda: tM(e1, c, one_id, g), lambda: g)
            _holds(report, "c.7", ("g1", c, g), lambda: tM(c, e1, g, one_id), lambda: g)
        for x, x2 in _instances(report, "c.7", [[d.objects(c), d.objects(c)]], sample):
            _holds(report, "c.7", ("d^r", c, x, x2), lambda: dr(e1, c, d.one, x, x2), lambda: ident(c, fib(c).tensor_obj(x, x2)))
            _holds(report, "c.7", ("d^l", c, x, x2), lambda: dl(c, e1, x, x2, d.one), lambda: ident(c, fib(c).tensor_obj(x, x2)))

    # (c.8)
    def c8(combo, x, y, z):
        a, b, c = combo
        _holds(report, "c.8", (a, b, c, x, y, z),
               lambda: tO(eT(a, b), c, tO(a, b, x, y), z), lambda: tO(a, eT(b, c), x, tO(b, c, y, z)))

    run("c.8", "abc", c8)
    for a, b, c in cartesian(cs, repeat=3):
        pools = [spread(d.morphisms(a), sample), spread(d.morphisms(b), sample), spread(d.morphisms(c), sample)]
        for g, h, k in _instances(report, "c.8", [pools], sample):
            _holds(report, "c.8", (a, b, c, g, h, k),
                   lambda: tM(eT(a, b), c, tM(a, b, g, h), k), lambda: tM(a, eT(b, c), g, tM(b, c, h, k)))

    # (c.9)
    def c9_left(combo, x, x2, y, z):
        a, b, c = combo
        abc = eT(eT(a, b), c)
        _holds(report, "c.9", ("l", a, b, c, x, x2, y, z),
               lambda: comp(abc, tM(eT(a, b), c, dl(a, b, x, x2, y), ident(c, z)),
                            dl(eT(a, b), c, tO(a, b, x, y), tO(a, b, x2, y), z)),
               lambda: dl(a, eT(b, c), x, x2, tO(b, c, y, z)))

    def c9_right(combo, x, y, z, z2):
        a, b, c = combo
        abc = eT(eT(a, b), c)
        _holds(report, "c.9", ("r", a, b, c, x, y, z, z2),
               lambda: comp(abc, tM(a, eT(b, c), ident(a, x), dr(b, c, y, z, z2)),
                            dr(a, eT(b, c), x, tO(b, c, y, z), tO(b, c, y, z2))),
               lambda: dr(eT(a, b), c, tO(a, b, x, y), z, z2))

    run("c.9", "aabc", c9_left)
    run("c.9", "abcc", c9_right)

    # (c.10)
    def c10(combo, x, y, y2, z):
        a, b, c = combo
        abc = eT(eT(a, b), c)
        _holds(report, "c.10", (a, b, c, x, y, y2, z),
               lambda: comp(abc, tM(eT(a, b), c, dr(a, b, x, y, y2), ident(c, z)),
                            dl(eT(a, b), c, tO(a, b, x, y), tO(a, b, x, y2), z)),
               lambda: comp(abc, tM(a, eT(b, c), ident(a, x), dl(b, c, y, y2, z)),
                            dr(a, eT(b, c), x, tO(b, c, y, z), tO(b, c, y2, z))))

    run("c.10", "abbc", c10)

    if d.has_mu:
        _check_mu(d, report, run, sample)
    logger.info("ring data %s: %s", d.name, "valid" if report.ok else "invalid")
    return report


def _lam(m: MonoidalMap, x: Id, y: Id) -> Id:
    if m.kind == "strict":
        return m.target.category.identity(m.target.tensor_obj(m.functor.obj(x), m.functor.obj(y)))
    return m.lam_at(x, y)


def _composable(cat, morphisms: Sequence[Id]) -> List[Tuple[Id, Id]]:
    return [(g, f) for f in morphisms for g in morphisms if cat.cod(f) == cat.dom(g)]


def _check_functor(d: RingData, report: ValidationReport, sample: Optional[int]):
    """F(id) = id と F(g∘f) = F(g)∘F(f)（λ の合成を含む）"""
    ecat = d.base.category
    for c in d.base_objects():
        m = d.fmap(ecat.identity(c))
        for x in spread(d.objects(c), sample):
            _holds(report, "ring.functor", ("id", c, x), lambda: m.functor.obj(x), lambda: x)
        for g in spread(d.morphisms(c), sample):
            _holds(report, "ring.functor", ("id", c, g), lambda: m.functor.mor(g), lambda: g)
    for g, f in cartesian(d.base_morphisms(), repeat=2):
        if ecat.cod(f) != ecat.dom(g):
            continue
        Ff, Fg, Fgf = d.fmap(f), d.fmap(g), d.fmap(ecat.compose(g, f))
        tcat = Fg.target.category
        objects = spread(d.objects(ecat.dom(f)), sample)
        for x in objects:
            _holds(report, "ring.functor", (g, f, x), lambda: Fgf.functor.obj(x), lambda: Fg.functor.obj(Ff.functor.obj(x)))
        for h in spread(d.morphisms(ecat.dom(f)), sample):
            _holds(report, "ring.functor", (g, f, h), lambda: Fgf.functor.mor(h), lambda: Fg.functor.mor(Ff.functor.mor(h)))
        for x, y in cartesian(objects, repeat=2):
            _holds(report, "ring.functor", ("λ", g, f, x, y),
                   lambda: _lam(Fgf, x, y),
                   lambda: tcat.compose(Fg.functor.mor(_lam(Ff, x, y)),
                                        _lam(Fg, Ff.functor.obj(x), Ff.functor.obj(y))))


def _check_mu(d: RingData, report: ValidationReport, run, sample: Optional[int]):
    E = d.base
    ecat = E.category
    eT = E.tensor_obj
    tO, tM, dl, dr, mu = d.tensor_obj, d.tensor_mor, d.d_left, d.d_right, d.mu

    def ident(c, x):
        return d.fiber(c).category.identity(x)

    def comp(c, *chain):
        return compose_path(d.fiber(c).category, list(chain))

    # (c.11)
    def c11(combo, x, y):
        a, b = combo
        zero = d.fiber(eT(a, b)).unit
        _holds(report, "c.11", ("x0", a, b, x), lambda: mu(a, b, x, d.fiber(b).unit), lambda: ident(eT(a, b), zero))
        _holds(report, "c.11", ("0y", a, b, y), lambda: mu(a, b, d.fiber(a).unit, y), lambda: ident(eT(a, b), zero))

    run("c.11", "ab", c11)

    # (c.12)
    def c12(combo, x, y):
        a, b = combo
        back = d.fmap(_tau(E, a, b))
        _holds(report, "c.12", (a, b, x, y),
               lambda: comp(eT(a, b), back.functor.mor(mu(b, a, y, x)), mu(a, b, x, y)),
               lambda: ident(eT(a, b), tO(a, b, x, y)))

    run("c.12", "ab", c12)

    # (c.13)
    def c13_left(combo, x, x2, y):
        a, b = combo
        ab = eT(a, b)
        Ft = d.fmap(_tau(E, a, b))
        add = d.fiber(a).tensor_obj
        _holds(report, "c.13", ("l", a, b, x, x2, y),
               lambda: comp(ab, mu(a, b, add(x, x2), y), dl(a, b, x, x2, y)),
               lambda: comp(ab,
                            Ft.functor.mor(dr(b, a, y, x, x2)),
                            _lam(Ft, tO(b, a, y, x), tO(b, a, y, x2)),
                            d.fiber(ab).tensor_mor(mu(a, b, x, y), mu(a, b, x2, y))))

    def c13_right(combo, x, y, y2):
        a, b = combo
        ab = eT(a, b)
        Ft = d.fmap(_tau(E, a, b))
        add = d.fiber(b).tensor_obj
        _holds(report, "c.13", ("r", a, b, x, y, y2),
               lambda: comp(ab, mu(a, b, x, add(y, y2)), dr(a, b, x, y, y2)),
               lambda: comp(ab,
                            Ft.functor.mor(dl(b, a, y, y2, x)),
                            _lam(Ft, tO(b, a, y, x), tO(b, a, y2, x)),
                            d.fiber(ab).tensor_mor(mu(a, b, x, y), mu(a, b, x, y2))))

    run("c.13", "aab", c13_left)
    run("c.13", "abb", c13_right)

    # (c.14)
    def c14(combo, x, y, z):
        a, b, c = combo
        twist = d.fmap(E.tensor_mor(ecat.identity(a), E.gamma(c, b)))
        _holds(report, "c.14", (a, b, c, x, y, z),
               lambda: mu(eT(a, b), c, tO(a, b, x, y), z),
               lambda: comp(eT(eT(a, b), c),
                            twist.functor.mor(tM(eT(a, c), b, mu(a, c, x, z), ident(b, y))),
                            tM(a, eT(b, c), ident(a, x), mu(b, c, y, z))))

    run("c.14", "abc", c14)


# --- 多関手 S -------------------------------------------------------------------


def ring_functor(d: RingData, P: PMulticategory) -> EFunctor:
    """F: E → ℙ（F(f) は λ を δ とする 1-線形写像）"""
    ecat = d.base.category
    return EFunctor(
        tuple((c, d.fiber(c)) for c in ecat.objects()),
        tuple((f, P.morphism(klinear_from_monoidal_map(d.fmap(f)))) for f in ecat.morphisms()),
        name=f"F[{d.name}]",
    )


@dataclass(eq=False)
class MultifunctorBuild:
    """build_multifunctor の結果"""

    source: SigmaMulticategory
    target: FunctorMulticategory
    functor: EFunctor
    multifunctor: Multifunctor
    builder: "RingMultifunctor"
    report: ValidationReport
    extracted: "TableRingData"
    roundtrip: bool


class RingMultifunctor:
    """環データから S: Σ_* (EΣ_*) → ℙ^E を構成するクラス（値はメモ化）"""

    def __init__(self, d: RingData, cap: int, mode: str = "sigma", bounds: Optional[MultiBounds] = None):
        """
        初期化

        Args:
            d: 環データ
            cap: アリティ上限
            mode: "sigma" または "esigma"
            bounds: 標本の上限

        Raises:
            StructuralError: mode が不明、または esigma で μ がない場合
            BoundsError: cap が Σ の上限を超える場合
        """
        if mode not in MODES:
            raise StructuralError(f"unknown multifunctor mode {mode!r}")
        if mode == "esigma" and not d.has_mu:
            raise StructuralError(f"{d.name}: μ required for the EΣ construction")
        self.d = d
        self.mode = mode
        self.bounds = bounds or MultiBounds(arity=cap)
        self.sigma = SigmaMulticategory(cap, enriched=(mode == "esigma"))
        self.P = PMulticategory(cap)
        self.F = ring_functor(d, self.P)
        self.target = FunctorMulticategory(self.P, d.base, self.bounds, functors=[self.F], name=f"P^{d.base.name}")
        self._units: Dict[int, MultiMorphism] = {}
        self._ops: Dict[Perm, MultiMorphism] = {}
        self._cells: Dict[Tuple[Perm, Perm], MultiCell] = {}

    # 対象の積 x_{1..k}
    def _product(self, cs: Sequence[Id], xs: Sequence[Id]) -> Tuple[Id, Id]:
        d, E = self.d, self.d.base
        if not cs:
            return E.unit, d.one
        acc_c, acc_x = cs[0], xs[0]
        for c, x in zip(cs[1:], xs[1:]):
            acc_x = d.tensor_obj(acc_c, c, acc_x, x)
            acc_c = E.tensor_obj(acc_c, c)
        return acc_c, acc_x

    def _product_mor(self, cs: Sequence[Id], fs: Sequence[Id]) -> Id:
        d, E = self.d, self.d.base
        acc_c, acc = cs[0], fs[0]
        for c, g in zip(cs[1:], fs[1:]):
            acc = d.tensor_mor(acc_c, c, acc, g)
            acc_c = E.tensor_obj(acc_c, c)
        return acc

    def delta(self, cs: Tuple, i: int, xs: Tuple, x2: Id) -> Id:
        """S_k(1_k)_{c̄} の δ^i（d^l の後に d^r⊗id）"""
        d, E = self.d, self.d.base
        k = len(cs)
        ci = cs[i]
        if i == 0:
            cR, R = self._product(cs[1:], xs[1:])
            return d.d_left(ci, cR, xs[0], x2, R)
        cL, L = self._product(cs[:i], xs[:i])
        if i == k - 1:
            return d.d_right(cL, ci, L, xs[i], x2)
        cR, R = self._product(cs[i + 1:], xs[i + 1:])
        cLi = E.tensor_obj(cL, ci)
        first = d.d_left(cLi, cR, d.tensor_obj(cL, ci, L, xs[i]), d.tensor_obj(cL, ci, L, x2), R)
        second = d.tensor_mor(cLi, cR, d.d_right(cL, ci, L, xs[i], x2), d.fiber(cR).category.identity(R))
        return d.fiber(E.tensor_obj(cLi, cR)).category.compose(second, first)

    def delta_other_way(self, cs: Tuple, i: int, xs: Tuple, x2: Id) -> Optional[Id]:
        """d^r の後に id⊗d^l（内側の添字でだけ定義）"""
        d, E = self.d, self.d.base
        k = len(cs)
        if i == 0 or i == k - 1:
            return None
        ci = cs[i]
        cL, L = self._product(cs[:i], xs[:i])
        cR, R = self._product(cs[i + 1:], xs[i + 1:])
        ciR = E.tensor_obj(ci, cR)
        first = d.d_right(cL, ciR, L, d.tensor_obj(ci, cR, xs[i], R), d.tensor_obj(ci, cR, x2, R))
        second = d.tensor_mor(cL, ciR, d.fiber(cL).category.identity(L), d.d_left(ci, cR, xs[i], x2, R))
        return d.fiber(E.tensor_obj(cL, ciR)).category.compose(second, first)

    def component(self, cs: Tuple) -> KLinearMap:
        """S_k(1_k)_{c̄}"""
        d, E = self.d, self.d.base
        k = len(cs)
        if k == 0:
            return klinear_constant(d.fiber(E.unit), d.one, name="1")
        if k == 1:
            return klinear_unit(d.fiber(cs[0]))
        target = d.fiber(tensor_all(E, list(cs)))
        return klinear_from_functions(
            [d.fiber(c) for c in cs],
            target,
            lambda xs: self._product(cs, xs)[1],
            lambda fs: self._product_mor(cs, fs),
            lambda i, xs, x2: self.delta(cs, i, xs, x2),
            name=f"x_1..{k}{format_id(cs)}",
        )

    def unit_operation(self, k: int) -> MultiMorphism:
        """S_k(1_k)"""
        if k not in self._units:
            cs_list = self.target.index(k)
            self._units[k] = MultiMorphism(
                (self.F,) * k, self.F, tuple((cs, self.P.morphism(self.component(cs))) for cs in cs_list)
            )
        return self._units[k]

    def operation(self, pi: Perm) -> MultiMorphism:
        """S_k(π) = (π⁻¹)*S_k(1_k)"""
        pi = tuple(pi)
        if pi not in self._ops:
            base = self.unit_operation(len(pi))
            self._ops[pi] = base if pi == identity_perm(len(pi)) else self.target.act(perm_inverse(pi), base)
        return self._ops[pi]

    # EΣ: ℙ^E のセル
    def _cell_family(self, source: MultiMorphism, target: MultiMorphism, cells: Dict[Tuple, KLinearCell]) -> MultiCell:
        return MultiCell(source, target, tuple((cs, cells[cs]) for cs in self.target.index(source.arity)))

    def pe_identity(self, phi: MultiMorphism) -> MultiCell:
        return self._cell_family(phi, phi, {cs: cell_identity(op.data) for cs, op in phi.data})

    def pe_compose(self, second: MultiCell, first: MultiCell) -> MultiCell:
        a, b = dict(first.data), dict(second.data)
        return self._cell_family(first.source, second.target, {cs: cell_compose(b[cs], a[cs]) for cs in a})

    def pe_act(self, sigma: Perm, alpha: MultiCell) -> MultiCell:
        """(σ*α)_{σ·c̄} = σ*Γ(G(τ_{σ,c̄}); α_c̄)"""
        E = self.d.base
        fam = dict(alpha.data)
        G = alpha.source.output
        cells = {}
        for ds in self.target.index(alpha.source.arity):
            cs = unapply_perm(sigma, ds)
            twist = G.mor(nested_permutation(E, list(cs), sigma)).data
            cells[ds] = cell_act(sigma, cell_gamma(cell_identity(twist), [fam[cs]]))
        return self._cell_family(
            self.target.act(sigma, alpha.source), self.target.act(sigma, alpha.target), cells
        )

    def pe_gamma(self, beta: MultiCell, alphas: Sequence[MultiCell]) -> MultiCell:
        E = self.d.base
        lengths = [a.source.arity for a in alphas]
        outer = dict(beta.data)
        inner = [dict(a.data) for a in alphas]
        cells = {}
        total = sum(lengths)
        for cs in self.target.index(total):
            blocks, start = [], 0
            for n in lengths:
                blocks.append(cs[start:start + n])
                start += n
            key = tuple(tensor_all(E, list(b)) for b in blocks)
            cells[cs] = cell_gamma(outer[key], [fam[b] for fam, b in zip(inner, blocks)])
        return self._cell_family(
            self.target.gamma(beta.source, [a.source for a in alphas]),
            self.target.gamma(beta.target, [a.target for a in alphas]),
            cells,
        )

    def transposition_cell(self, k: int, i: int) -> MultiCell:
        """S(1_k → s_i): 成分は id_L ⊗ μ(x_i, x_{i+1}) ⊗ id_R"""
        d, E = self.d, self.d.base
        source = self.unit_operation(k)
        target = self.operation(transposition(k, i))
        src, tgt = dict(source.data), dict(target.data)
        cells = {}
        for cs in self.target.index(k):
            def comp(xs, cs=cs):
                a, b = cs[i], cs[i + 1]
                ab = E.tensor_obj(a, b)
                value = d.mu(a, b, xs[i], xs[i + 1])
                base = ab
                if i > 0:
                    cL, L = self._product(cs[:i], xs[:i])
                    value = d.tensor_mor(cL, ab, d.fiber(cL).category.identity(L), value)
                    base = E.tensor_obj(cL, ab)
                if i + 2 < k:
                    cR, R = self._product(cs[i + 2:], xs[i + 2:])
                    value = d.tensor_mor(base, cR, value, d.fiber(cR).category.identity(R))
                return value

            pools = [d.fiber(c).category.objects() for c in cs]
            cells[cs] = KLinearCell(
                src[cs].data, tgt[cs].data, tuple((xs, comp(xs)) for xs in cartesian(*pools))
            )
        return self._cell_family(source, target, cells)

    def cell(self, pi: Perm, rho: Perm) -> MultiCell:
        """S(π → ρ) = (π⁻¹)*S(1 → π⁻¹∘ρ)、S(1 → s_{a₁}∘⋯∘s_{a_m}) は隣接互換のセルの合成"""
        pi, rho = tuple(pi), tuple(rho)
        key = (pi, rho)
        if key in self._cells:
            return self._cells[key]
        k = len(pi)
        if pi != identity_perm(k):
            result = self.pe_act(perm_inverse(pi), self.cell(identity_perm(k), perm_compose(perm_inverse(pi), rho)))
        else:
            result = self.pe_identity(self.unit_operation(k))
            current = identity_perm(k)
            for a in adjacent_transpositions(rho):
                step = transposition(k, a)
                move = self.transposition_cell(k, a)
                if current != identity_perm(k):
                    move = self.pe_act(perm_inverse(current), move)
                result = self.pe_compose(move, result)
                current = perm_compose(current, step)
        self._cells[key] = result
        return result

    def multifunctor(self) -> Multifunctor:
        return Multifunctor(
            self.sigma,
            self.target,
            lambda a: self.F,
            lambda phi: self.operation(phi.data),
            name=f"S[{self.d.name}]",
        )


def _check_cells(builder: RingMultifunctor, report: ValidationReport, sample: Optional[int]):
    """EΣ のセルの像: 型・恒等・合成・作用・Γ・μ"""
    cap = min(builder.sigma.cap, 3)
    for k in range(cap + 1):
        perms = all_perms(k)
        for pi, rho in cartesian(perms, repeat=2):
            c = builder.cell(pi, rho)
            report.check(
                "S.cells.typing",
                c.source == builder.operation(pi) and c.target == builder.operation(rho),
                (pi, rho),
            )
        for pi in perms:
            _holds(report, "S.cells.identity", (pi,), lambda: builder.cell(pi, pi), lambda: builder.pe_identity(builder.operation(pi)))
        triples = list(cartesian(perms, repeat=3))
        for pi, rho, theta in spread(triples, sample):
            _holds(report, "S.cells.compose", (pi, rho, theta),
                   lambda: builder.pe_compose(builder.cell(rho, theta), builder.cell(pi, rho)),
                   lambda: builder.cell(pi, theta))
        for sigma, pi, rho in spread(triples, sample):
            # σ*(π → ρ) = (σ⁻¹∘π → σ⁻¹∘ρ)
            moved = (perm_compose(perm_inverse(sigma), pi), perm_compose(perm_inverse(sigma), rho))
            _holds(report, "S.cells.action", (sigma, pi, rho),
                   lambda: builder.cell(*moved), lambda: builder.pe_act(sigma, builder.cell(pi, rho)))
    if builder.sigma.cap >= 2:
        xi = (1, 0)
        forward = builder.cell((0, 1), xi)
        back = builder.cell(xi, (0, 1))
        _holds(report, "S.mu_inverse", (xi,),
               lambda: builder.pe_compose(back, forward), lambda: builder.pe_identity(builder.operation((0, 1))))
        d = builder.d
        for cs, alpha in forward.data:
            for xs, value in alpha.components:
                _holds(report, "S.mu", (cs, xs), lambda: value, lambda: d.mu(cs[0], cs[1], xs[0], xs[1]))
    # Γ(1₂ → ξ; 1₁, 1_j) は Γ(1₂; 1₁, 1_j) → Γ(ξ; 1₁, 1_j) のセル
    sig = builder.sigma
    if sig.cap < 2:
        return
    outer = builder.cell((0, 1), (1, 0))
    for j in range(1, sig.cap):
        idj = identity_perm(j)
        lhs_source = sig.gamma(sig.element((0, 1)), [sig.element((0,)), sig.element(idj)]).data
        lhs_target = sig.gamma(sig.element((1, 0)), [sig.element((0,)), sig.element(idj)]).data
        _holds(report, "S.cells.gamma", ((0, 1), (1, 0), j),
               lambda: builder.cell(lhs_source, lhs_target),
               lambda: builder.pe_gamma(outer, [builder.cell((0,), (0,)), builder.cell(idj, idj)]))


def build_multifunctor(
    d: RingData, cap: int = 3, mode: str = "sigma", bounds: Optional[MultiBounds] = None
) -> MultifunctorBuild:
    """
    環データから多関手 S を構成し、Γ・σ* との両立と取り出しの往復を検査

    Args:
        d: 環データ
        cap: アリティ上限
        mode: "sigma" (Σ_*) または "esigma" (EΣ_*)
        bounds: 標本の上限

    Returns:
        MultifunctorBuild（report に multifunctor.*, S.* の検査）

    Raises:
        StructuralError: mode が不明、または esigma で μ がない場合
    """
    bounds = bounds or MultiBounds(arity=cap)
    builder = RingMultifunctor(d, cap, mode, bounds)
    S = builder.multifunctor()
    report = ValidationReport(f"multifunctor S[{d.name}] ({mode})", {"cap": cap, **bounds.as_bounds()})
    report.merge(validate_multifunctor(S, bounds))

    for k in range(cap + 1):
        op = builder.unit_operation(k)
        report.check("S.natural", builder.target.is_natural(op, bounds.sample), (k,))
        for cs, component in op.data:
            if k == 2:
                report.merge(validate_klinear(component.data, bounds.sample), prefix="S.")
            for i in range(1, k - 1):
                pools = [d.objects(c) for c in cs]
                for xs in spread(list(cartesian(*pools)), bounds.sample):
                    for x2 in spread(d.objects(cs[i]), bounds.sample):
                        _holds(report, "S.delta_square", (cs, i, xs, x2),
                               lambda: builder.delta(cs, i, xs, x2),
                               lambda: builder.delta_other_way(cs, i, xs, x2))
    if mode == "esigma":
        _check_cells(builder, report, bounds.sample)

    extracted = extract_ring_data(builder)
    roundtrip = ring_tables(extracted) == ring_tables(d, with_mu=(mode == "esigma"))
    report.check("S.roundtrip", roundtrip, (d.name,), "extracted ring data differs")
    logger.info("multifunctor S[%s] cap %d (%s): %s", d.name, cap, mode, "valid" if report.ok else "invalid")
    return MultifunctorBuild(builder.sigma, builder.target, builder.F, S, builder, report, extracted, roundtrip)


def extract_ring_data(builder: RingMultifunctor) -> TableRingData:
    """
    S から環データを取り出す（⊗ = S₂(1₂)、1 = S₀(1₀)、d^l, d^r = δ¹, δ²、μ = S₂(1₂ → ξ)）

    Args:
        builder: 構成済みの S

    Returns:
        TableRingData
    """
    d, E = builder.d, builder.d.base
    ecat = E.category
    F = builder.F
    fibers = {c: F.obj(c) for c in ecat.objects()}
    maps = {}
    for f in ecat.morphisms():
        g: KLinearMap = F.mor(f).data
        src, tgt = g.sources[0], g.target
        functor = FunctorData(
            src.category,
            tgt.category,
            {x: g.obj((x,)) for x in src.category.objects()},
            {h: g.mor((h,)) for h in src.category.morphisms()},
            name=f"F({format_id(f)})",
        )
        lam = {(x, y): g.delta(0, (x,), y) for x, y in cartesian(src.category.objects(), repeat=2)}
        maps[f] = MonoidalMap(functor, src, tgt, "lax_star", lam=lam, name=functor.name)
    tensor_objects, tensor_morphisms, d_left, d_right = {}, {}, {}, {}
    one = builder.unit_operation(0).data[0][1].data.obj(())
    if builder.sigma.cap >= 2:
        for (c1, c2), op in builder.unit_operation(2).data:
            t: KLinearMap = op.data
            for (x, y), z in t.objects.items():
                tensor_objects[(c1, c2, x, y)] = z
            for (g, h), m in t.morphisms.items():
                tensor_morphisms[(c1, c2, g, h)] = m
            for (i, (x, y), v), m in t.deltas.items():
                if i == 0:
                    d_left[(c1, c2, x, v, y)] = m
                else:
                    d_right[(c1, c2, x, y, v)] = m
    mu = None
    if builder.mode == "esigma" and builder.sigma.cap >= 2:
        mu = {}
        for (c1, c2), alpha in builder.cell((0, 1), (1, 0)).data:
            for (x, y), m in alpha.components:
                mu[(c1, c2, x, y)] = m
    return TableRingData(
        E, fibers, maps, tensor_objects, tensor_morphisms, one, d_left, d_right, mu, name=f"extract({d.name})"
    )


def ring_tables(d: RingData, with_mu: bool = True) -> Dict:
    """環データを比較用の表に展開（厳密写像の λ は恒等射として展開する）"""
    E = d.base
    ecat = E.category
    cs = d.base_objects()
    tables: Dict = {"one": d.one, "maps": {}, "tensor": {}, "tensor_mor": {}, "d_left": {}, "d_right": {}, "mu": {}}
    for f in d.base_morphisms():
        m = d.fmap(f)
        objs = d.objects(ecat.dom(f))
        tables["maps"][f] = (
            tuple((x, m.functor.obj(x)) for x in objs),
            tuple((g, m.functor.mor(g)) for g in d.morphisms(ecat.dom(f))),
            tuple(((x, y), _lam(m, x, y)) for x, y in cartesian(objs, repeat=2)),
        )
    for c1, c2 in cartesian(cs, repeat=2):
        o1, o2 = d.objects(c1), d.objects(c2)
        for x, y in cartesian(o1, o2):
            tables["tensor"][(c1, c2, x, y)] = d.tensor_obj(c1, c2, x, y)
            if with_mu and d.has_mu:
                tables["mu"][(c1, c2, x, y)] = d.mu(c1, c2, x, y)
        for g, h in cartesian(d.morphisms(c1), d.morphisms(c2)):
            tables["tensor_mor"][(c1, c2, g, h)] = d.tensor_mor(c1, c2, g, h)
        for x, x2, y in cartesian(o1, o1, o2):
            tables["d_left"][(c1, c2, x, x2, y)] = d.d_left(c1, c2, x, x2, y)
        for x, y, y2 in cartesian(o1, o2, o2):
            tables["d_right"][(c1, c2, x, y, y2)] = d.d_right(c1, c2, x, y, y2)
    return tables
