#!/usr/bin/env python3
"""
対称モノイダル構造・置換圏構造と、その間の写像（strict / lax_* / lax）

置換圏（permutative category）は結合律と単位律が厳密に成り立つ対称モノイダル圏。
検査はすべて対象・射の組を全列挙して図式を具体化することで行う。
"""

import logging
from dataclasses import dataclass, replace
from itertools import product as cartesian
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from catforge.errors import ConstructionError, OutsideTruncation, StructuralError
from catforge.fincat import (
    Category,
    FinCategory,
    Functor,
    FunctorData,
    Id,
    discrete_category,
    format_id,
    opposite,
    validate_functor,
)
from catforge.report import ValidationReport

logger = logging.getLogger(__name__)

MAP_KINDS = ("strict", "lax_star", "lax")


class MonoidalStructure:
    """(圏, ⊗, 1, γ) のインターフェースを表すクラス

    結合子・単位子は既定で恒等射（置換圏の場合）。
    """

    category: Category
    unit: Id
    name = "monoidal"
    strict = True

    def __str__(self) -> str:
        return self.name

    __repr__ = __str__

    def tensor_obj(self, x: Id, y: Id) -> Id:
        raise NotImplementedError

    def tensor_mor(self, f: Id, g: Id) -> Id:
        raise NotImplementedError

    def gamma(self, x: Id, y: Id) -> Id:
        raise NotImplementedError

    def associator(self, x: Id, y: Id, z: Id) -> Id:
        """(x⊗y)⊗z → x⊗(y⊗z)"""
        return self.category.identity(self.tensor_obj(x, self.tensor_obj(y, z)))

    def left_unitor(self, x: Id) -> Id:
        """1⊗x → x"""
        return self.category.identity(x)

    def right_unitor(self, x: Id) -> Id:
        """x⊗1 → x"""
        return self.category.identity(x)


def _lookup(table: Dict, key: Tuple, what: str, name: str, truncated: bool) -> Id:
    try:
        return table[key]
    except KeyError:
        if truncated:
            raise OutsideTruncation(f"{name}: {what} {format_id(key)} outside truncation") from None
        raise StructuralError(f"{name}: {what} undefined at {format_id(key)}") from None


class PermutativeStructure(MonoidalStructure):
    """参照表で与えられる置換圏構造を表すクラス"""

    def __init__(
        self,
        category: FinCategory,
        tensor_objects: Dict[Tuple[Id, Id], Id],
        tensor_morphisms: Dict[Tuple[Id, Id], Id],
        unit: Id,
        gamma: Dict[Tuple[Id, Id], Id],
        name: str = "permutative",
        truncated: bool = False,
    ):
        """
        初期化

        Args:
            category: 台となる有限圏
            tensor_objects: (x, y) → x⊗y
            tensor_morphisms: (f, g) → f⊗g
            unit: 単位対象 1
            gamma: (x, y) → γ_{x,y}: x⊗y → y⊗x
            name: 表示名
            truncated: 表の欠落を切断として扱うか（False なら構造エラー）
        """
        if not category.has_object(unit):
            raise StructuralError(f"{name}: unit {format_id(unit)} is not an object")
        self.category = category
        self.tensor_objects = dict(tensor_objects)
        self.tensor_morphisms = dict(tensor_morphisms)
        self.unit = unit
        self.gamma_table = dict(gamma)
        self.name = name
        self.truncated = truncated

    def tensor_obj(self, x: Id, y: Id) -> Id:
        return _lookup(self.tensor_objects, (x, y), "tensor", self.name, self.truncated)

    def tensor_mor(self, f: Id, g: Id) -> Id:
        return _lookup(self.tensor_morphisms, (f, g), "tensor", self.name, self.truncated)

    def gamma(self, x: Id, y: Id) -> Id:
        return _lookup(self.gamma_table, (x, y), "gamma", self.name, self.truncated)

    def with_gamma(self, gamma: Dict[Tuple[Id, Id], Id], name: str = "") -> "PermutativeStructure":
        """γ だけを差し替えた構造"""
        return PermutativeStructure(
            self.category,
            self.tensor_objects,
            self.tensor_morphisms,
            self.unit,
            gamma,
            name=name or self.name,
            truncated=self.truncated,
        )

    @classmethod
    def from_document(cls, doc: Dict, name: str = "permutative") -> "PermutativeStructure":
        """
        置換圏文書から構成

        Args:
            doc: "category", "tensor", "unit", "gamma" を持つ辞書

        Returns:
            PermutativeStructure
        """
        try:
            category = FinCategory.from_document(doc["category"], name=name)
            tensor = doc["tensor"]
            objects = {(x, y): z for x, y, z in tensor["objects"]}
            morphisms = {(f, g): h for f, g, h in tensor["morphisms"]}
            gamma = {(x, y): m for x, y, m in doc["gamma"]}
            unit = doc["unit"]
        except (KeyError, ValueError, TypeError) as e:
            raise StructuralError(f"{name}: malformed permutative document ({e})") from None
        return cls(category, objects, morphisms, unit, gamma, name=name)

    def to_document(self) -> Dict:
        return {
            "category": self.category.to_document(),
            "tensor": {
                "objects": [
                    [format_id(x), format_id(y), format_id(z)]
                    for (x, y), z in self.tensor_objects.items()
                ],
                "morphisms": [
                    [format_id(f), format_id(g), format_id(h)]
                    for (f, g), h in self.tensor_morphisms.items()
                ],
            },
            "unit": format_id(self.unit),
            "gamma": [
                [format_id(x), format_id(y), format_id(m)] for (x, y), m in self.gamma_table.items()
            ],
        }


class FunctionalPermutative(MonoidalStructure):
    """関数で与えられる置換圏構造（遅延構成・切断された構成で使う）"""

    def __init__(
        self,
        category: Category,
        tensor_obj: Callable[[Id, Id], Id],
        tensor_mor: Callable[[Id, Id], Id],
        unit: Id,
        gamma: Callable[[Id, Id], Id],
        name: str = "permutative",
    ):
        self.category = category
        self._tensor_obj = tensor_obj
        self._tensor_mor = tensor_mor
        self.unit = unit
        self._gamma = gamma
        self.name = name

    def tensor_obj(self, x: Id, y: Id) -> Id:
        return self._tensor_obj(x, y)

    def tensor_mor(self, f: Id, g: Id) -> Id:
        return self._tensor_mor(f, g)

    def gamma(self, x: Id, y: Id) -> Id:
        return self._gamma(x, y)


class SymMonoidalStructure(PermutativeStructure):
    """結合子・単位子を明示的に持つ（厳密とは限らない）対称モノイダル構造"""

    strict = False

    def __init__(
        self,
        category: FinCategory,
        tensor_objects: Dict[Tuple[Id, Id], Id],
        tensor_morphisms: Dict[Tuple[Id, Id], Id],
        unit: Id,
        gamma: Dict[Tuple[Id, Id], Id],
        associator: Dict[Tuple[Id, Id, Id], Id],
        left_unitor: Dict[Id, Id],
        right_unitor: Dict[Id, Id],
        name: str = "symmetric monoidal",
    ):
        super().__init__(category, tensor_objects, tensor_morphisms, unit, gamma, name=name)
        self.associator_table = dict(associator)
        self.left_unitor_table = dict(left_unitor)
        self.right_unitor_table = dict(right_unitor)

    @classmethod
    def from_permutative(cls, p: PermutativeStructure) -> "SymMonoidalStructure":
        """
        置換圏を恒等な結合子・単位子付きの一様な型に変換

        Args:
            p: 置換圏構造

        Returns:
            SymMonoidalStructure
        """
        cat = p.category
        objects = cat.objects()
        associator = {}
        for x, y, z in cartesian(objects, repeat=3):
            try:
                associator[(x, y, z)] = cat.identity(p.tensor_obj(x, p.tensor_obj(y, z)))
            except (StructuralError, OutsideTruncation):
                continue
        return cls(
            cat,
            p.tensor_objects,
            p.tensor_morphisms,
            p.unit,
            p.gamma_table,
            associator,
            {x: cat.identity(x) for x in objects},
            {x: cat.identity(x) for x in objects},
            name=p.name,
        )

    def associator(self, x: Id, y: Id, z: Id) -> Id:
        return _lookup(self.associator_table, (x, y, z), "associator", self.name, False)

    def left_unitor(self, x: Id) -> Id:
        return _lookup(self.left_unitor_table, x, "left unitor", self.name, False)

    def right_unitor(self, x: Id) -> Id:
        return _lookup(self.right_unitor_table, x, "right unitor", self.name, False)


def _safe(report: ValidationReport, name: str, fn: Callable[[], Any]) -> Any:
    """切断外の値はスキップとして記録し None を返す"""
    try:
        return fn()
    except OutsideTruncation:
        report.skip(name)
        return None


def _composable_pairs(cat: Category) -> List[Tuple[Id, Id]]:
    pairs = []
    for f in cat.morphisms():
        for g in cat.out_morphisms(cat.cod(f)):
            pairs.append((g, f))
    return pairs


def _check_tensor_functor(m: MonoidalStructure, report: ValidationReport):
    cat = m.category
    objects = cat.objects()
    for x, y in cartesian(objects, repeat=2):
        value = _safe(
            report,
            "tensor.identity",
            lambda: (m.tensor_mor(cat.identity(x), cat.identity(y)), m.tensor_obj(x, y)),
        )
        if value is None:
            continue
        fg, xy = value
        report.check("tensor.identity", fg == cat.identity(xy), (x, y), f"id⊗id = {format_id(fg)}")

    for f, g in cartesian(cat.morphisms(), repeat=2):
        value = _safe(
            report,
            "tensor.typing",
            lambda: (
                m.tensor_mor(f, g),
                m.tensor_obj(cat.dom(f), cat.dom(g)),
                m.tensor_obj(cat.cod(f), cat.cod(g)),
            ),
        )
        if value is None:
            continue
        fg, d, c = value
        report.check(
            "tensor.typing",
            cat.has_morphism(fg) and cat.dom(fg) == d and cat.cod(fg) == c,
            (f, g),
            f"{format_id(fg)} has wrong endpoints",
        )

    pairs = _composable_pairs(cat)
    for (g1, f1), (g2, f2) in cartesian(pairs, repeat=2):
        value = _safe(
            report,
            "tensor.compose",
            lambda: (
                m.tensor_mor(cat.compose(g1, f1), cat.compose(g2, f2)),
                cat.compose(m.tensor_mor(g1, g2), m.tensor_mor(f1, f2)),
            ),
        )
        if value is None:
            continue
        lhs, rhs = value
        report.check(
            "tensor.compose",
            lhs == rhs,
            (g1, f1, g2, f2),
            f"{format_id(lhs)} != {format_id(rhs)}",
        )


def _check_gamma_common(m: MonoidalStructure, report: ValidationReport):
    cat = m.category
    objects = cat.objects()
    for x, y in cartesian(objects, repeat=2):
        value = _safe(report, "gamma.typing", lambda: (m.gamma(x, y), m.tensor_obj(x, y), m.tensor_obj(y, x)))
        if value is None:
            continue
        g, xy, yx = value
        ok = cat.has_morphism(g) and cat.dom(g) == xy and cat.cod(g) == yx
        report.check("gamma.typing", ok, (x, y), f"γ = {format_id(g)}")
        if ok:
            report.check("gamma.iso", cat.is_iso(g), (x, y), f"γ = {format_id(g)} not invertible")
        try:
            back = cat.composite(m.gamma(y, x), g)
        except OutsideTruncation:
            report.skip("gamma.involution")
            continue
        report.check(
            "gamma.involution",
            back == cat.identity(xy),
            (x, y),
            f"γ_yx∘γ_xy = {format_id(back)}",
        )

    for f, g in cartesian(cat.morphisms(), repeat=2):
        x, y = cat.dom(f), cat.dom(g)
        x2, y2 = cat.cod(f), cat.cod(g)
        value = _safe(
            report,
            "gamma.natural",
            lambda: (
                cat.composite(m.gamma(x2, y2), m.tensor_mor(f, g)),
                cat.composite(m.tensor_mor(g, f), m.gamma(x, y)),
            ),
        )
        if value is None:
            continue
        lhs, rhs = value
        report.check(
            "gamma.natural",
            lhs is not None and lhs == rhs,
            (f, g),
            f"{format_id(lhs)} != {format_id(rhs)}",
        )


def validate_permutative(p: MonoidalStructure) -> ValidationReport:
    """
    置換圏の公理を全列挙で検査

    Args:
        p: 置換圏構造

    Returns:
        テンソルの関手性・厳密結合律・厳密単位律・γ の3図式の各インスタンスを記録したレポート
    """
    report = ValidationReport(f"permutative {p.name}")
    cat = p.category
    objects = cat.objects()
    morphisms = cat.morphisms()
    _check_tensor_functor(p, report)

    for x, y, z in cartesian(objects, repeat=3):
        value = _safe(
            report,
            "assoc.objects",
            lambda: (p.tensor_obj(p.tensor_obj(x, y), z), p.tensor_obj(x, p.tensor_obj(y, z))),
        )
        if value is not None:
            report.check("assoc.objects", value[0] == value[1], (x, y, z), f"{format_id(value[0])} != {format_id(value[1])}")
    for f, g, h in cartesian(morphisms, repeat=3):
        value = _safe(
            report,
            "assoc.morphisms",
            lambda: (p.tensor_mor(p.tensor_mor(f, g), h), p.tensor_mor(f, p.tensor_mor(g, h))),
        )
        if value is not None:
            report.check("assoc.morphisms", value[0] == value[1], (f, g, h), f"{format_id(value[0])} != {format_id(value[1])}")

    one = p.unit
    id_one = cat.identity(one)
    for x in objects:
        value = _safe(report, "unit.objects", lambda: (p.tensor_obj(x, one), p.tensor_obj(one, x)))
        if value is not None:
            report.check("unit.objects", value == (x, x), (x,), f"x⊗1, 1⊗x = {format_id(value)}")
    for f in morphisms:
        value = _safe(report, "unit.morphisms", lambda: (p.tensor_mor(f, id_one), p.tensor_mor(id_one, f)))
        if value is not None:
            report.check("unit.morphisms", value == (f, f), (f,), f"f⊗id, id⊗f = {format_id(value)}")

    _check_gamma_common(p, report)

    for x in objects:
        value = _safe(report, "gamma.unit", lambda: (p.gamma(x, one), p.gamma(one, x)))
        if value is not None:
            report.check(
                "gamma.unit",
                value == (cat.identity(x), cat.identity(x)),
                (x,),
                f"γ_x1, γ_1x = {format_id(value)}",
            )

    for x, y, z in cartesian(objects, repeat=3):
        value = _safe(
            report,
            "gamma.hexagon",
            lambda: (
                p.gamma(p.tensor_obj(x, y), z),
                cat.composite(
                    p.tensor_mor(p.gamma(x, z), cat.identity(y)),
                    p.tensor_mor(cat.identity(x), p.gamma(y, z)),
                ),
            ),
        )
        if value is not None:
            report.check(
                "gamma.hexagon",
                value[1] is not None and value[0] == value[1],
                (x, y, z),
                f"{format_id(value[0])} != {format_id(value[1])}",
            )
    logger.debug("validated permutative %s: ok=%s", p.name, report.ok)
    return report


def validate_symmetric_monoidal(m: SymMonoidalStructure) -> ValidationReport:
    """
    非厳密な対称モノイダル構造の一貫性図式を検査

    Args:
        m: 対称モノイダル構造

    Returns:
        五角形・三角形・六角形・対称性・自然性のレポート
    """
    report = ValidationReport(f"symmetric monoidal {m.name}")
    cat = m.category
    objects = cat.objects()
    morphisms = cat.morphisms()
    t, c = m.tensor_obj, cat.composite
    _check_tensor_functor(m, report)
    _check_gamma_common(m, report)

    for x, y, z in cartesian(objects, repeat=3):
        a = m.associator(x, y, z)
        ok = (
            cat.dom(a) == t(t(x, y), z)
            and cat.cod(a) == t(x, t(y, z))
        )
        report.check("associator.typing", ok, (x, y, z), f"α = {format_id(a)}")
        report.check("associator.iso", cat.is_iso(a), (x, y, z), f"α = {format_id(a)}")
    for x in objects:
        l, r = m.left_unitor(x), m.right_unitor(x)
        report.check(
            "unitor.typing",
            cat.dom(l) == t(m.unit, x) and cat.cod(l) == x
            and cat.dom(r) == t(x, m.unit) and cat.cod(r) == x,
            (x,),
            f"λ, ρ = {format_id((l, r))}",
        )

    for f, g, h in cartesian(morphisms, repeat=3):
        d = (cat.dom(f), cat.dom(g), cat.dom(h))
        e = (cat.cod(f), cat.cod(g), cat.cod(h))
        lhs = c(m.tensor_mor(f, m.tensor_mor(g, h)), m.associator(*d))
        rhs = c(m.associator(*e), m.tensor_mor(m.tensor_mor(f, g), h))
        report.check("associator.natural", lhs is not None and lhs == rhs, (f, g, h), f"{format_id(lhs)} != {format_id(rhs)}")
    for f in morphisms:
        lhs = c(f, m.left_unitor(cat.dom(f)))
        rhs = c(m.left_unitor(cat.cod(f)), m.tensor_mor(cat.identity(m.unit), f))
        report.check("unitor.natural", lhs == rhs, ("left", f), f"{format_id(lhs)} != {format_id(rhs)}")
        lhs = c(f, m.right_unitor(cat.dom(f)))
        rhs = c(m.right_unitor(cat.cod(f)), m.tensor_mor(f, cat.identity(m.unit)))
        report.check("unitor.natural", lhs == rhs, ("right", f), f"{format_id(lhs)} != {format_id(rhs)}")

    ident = cat.identity
    for w, x, y, z in cartesian(objects, repeat=4):
        # ((w⊗x)⊗y)⊗z → w⊗(x⊗(y⊗z))
        lhs = c(m.associator(w, x, t(y, z)), m.associator(t(w, x), y, z))
        rhs = c(
            m.tensor_mor(ident(w), m.associator(x, y, z)),
            c(m.associator(w, t(x, y), z), m.tensor_mor(m.associator(w, x, y), ident(z))),
        )
        report.check("pentagon", lhs is not None and lhs == rhs, (w, x, y, z), f"{format_id(lhs)} != {format_id(rhs)}")
    for x, y in cartesian(objects, repeat=2):
        lhs = c(m.tensor_mor(ident(x), m.left_unitor(y)), m.associator(x, m.unit, y))
        rhs = m.tensor_mor(m.right_unitor(x), ident(y))
        report.check("triangle", lhs == rhs, (x, y), f"{format_id(lhs)} != {format_id(rhs)}")
    for x, y, z in cartesian(objects, repeat=3):
        lhs = c(m.associator(y, z, x), c(m.gamma(x, t(y, z)), m.associator(x, y, z)))
        rhs = c(
            m.tensor_mor(ident(y), m.gamma(x, z)),
            c(m.associator(y, x, z), m.tensor_mor(m.gamma(x, y), ident(z))),
        )
        report.check("hexagon", lhs is not None and lhs == rhs, (x, y, z), f"{format_id(lhs)} != {format_id(rhs)}")
    return report


def tensor_all(m: MonoidalStructure, objs: Sequence[Id]) -> Id:
    """
    右入れ子のテンソル x1⊗(x2⊗(…⊗xn))（空列は単位対象）

    Args:
        m: モノイダル構造
        objs: 対象の列

    Returns:
        対象
    """
    if not objs:
        return m.unit
    result = objs[-1]
    for x in reversed(objs[:-1]):
        result = m.tensor_obj(x, result)
    return result


def tensor_all_morphisms(m: MonoidalStructure, mors: Sequence[Id]) -> Id:
    """右入れ子の射のテンソル（空列は単位対象の恒等射）"""
    if not mors:
        return m.category.identity(m.unit)
    result = mors[-1]
    for f in reversed(mors[:-1]):
        result = m.tensor_mor(f, result)
    return result


def merge_iso(m: MonoidalStructure, xs: Sequence[Id], ys: Sequence[Id]) -> Id:
    """
    括弧の付け替え同型 Δxs⊗Δys → Δ(xs+ys)

    結合子・単位子を「右へ回す」順で合成する。置換圏では恒等射になる。

    Args:
        m: モノイダル構造
        xs: 左の対象列
        ys: 右の対象列

    Returns:
        同型射
    """
    cat = m.category
    if not xs:
        return m.left_unitor(tensor_all(m, ys))
    if not ys:
        return m.right_unitor(tensor_all(m, xs))
    if len(xs) == 1:
        return cat.identity(m.tensor_obj(xs[0], tensor_all(m, ys)))
    head, rest = xs[0], list(xs[1:])
    step = m.associator(head, tensor_all(m, rest), tensor_all(m, ys))
    inner = merge_iso(m, rest, ys)
    return cat.compose(m.tensor_mor(cat.identity(head), inner), step)


def nested_permutation(m: MonoidalStructure, objs: Sequence[Id], perm: Sequence[int]) -> Id:
    """
    置換圏で ⊗objs → ⊗(objs[perm[0]], …) を隣接互換の γ で組み立てる

    Args:
        m: 置換圏構造（厳密結合）
        objs: 対象の列
        perm: 行き先の i 番目に来る元の位置

    Returns:
        同型射
    """
    cat = m.category
    n = len(objs)
    if sorted(perm) != list(range(n)):
        raise StructuralError(f"not a permutation of {n}: {list(perm)}")
    rank = [0] * n
    for i, j in enumerate(perm):
        rank[j] = i
    current = list(range(n))
    result = cat.identity(tensor_all(m, list(objs)))
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if rank[current[i]] > rank[current[i + 1]]:
                seq = [objs[j] for j in current]
                swap = m.gamma(seq[i], seq[i + 1])
                step = tensor_all_morphisms(
                    m,
                    [cat.identity(x) for x in seq[:i]]
                    + [m.tensor_mor(swap, cat.identity(tensor_all(m, seq[i + 2:])))],
                )
                result = cat.compose(step, result)
                current[i], current[i + 1] = current[i + 1], current[i]
                changed = True
    return result


@dataclass(eq=False)
class MonoidalMap:
    """置換圏の間の写像（strict / lax_star / lax）"""

    functor: Functor
    source: MonoidalStructure
    target: MonoidalStructure
    kind: str = "strict"
    lam: Any = None
    eta: Optional[Id] = None
    name: str = "f"
    unit_triangles: bool = True

    def __post_init__(self):
        if self.kind not in MAP_KINDS:
            raise StructuralError(f"{self.name}: unknown map class {self.kind!r}")

    def lam_at(self, x: Id, y: Id) -> Id:
        """λ_{x,y}: f(x)⊗f(y) → f(x⊗y)"""
        if self.lam is None:
            raise StructuralError(f"{self.name}: λ missing for class {self.kind}")
        if callable(self.lam):
            return self.lam(x, y)
        try:
            return self.lam[(x, y)]
        except KeyError:
            raise StructuralError(f"{self.name}: λ undefined at {format_id((x, y))}") from None

    def with_kind(self, kind: str) -> "MonoidalMap":
        """
        クラスを弱める（strict → lax_star は λ = id、lax_star → lax は η = id）

        Args:
            kind: 新しいクラス

        Returns:
            MonoidalMap
        """
        lam, eta = self.lam, self.eta
        tcat = self.target.category
        if lam is None:
            f = self.functor
            lam = lambda x, y: tcat.identity(self.target.tensor_obj(f.obj(x), f.obj(y)))
        if kind == "lax" and eta is None:
            eta = tcat.identity(self.target.unit)
        return replace(self, kind=kind, lam=lam, eta=eta)


def validate_monoidal_map(m: MonoidalMap, check_functor: bool = True) -> ValidationReport:
    """
    宣言されたクラスの図式を検査

    Args:
        m: 写像
        check_functor: 台の関手の公理も検査するか

    Returns:
        レポート

    Raises:
        StructuralError: lax 系で λ（lax では η も）が欠けている場合
    """
    report = ValidationReport(f"{m.kind} map {m.name}")
    if m.kind != "strict" and m.lam is None:
        raise StructuralError(f"{m.name}: λ missing for class {m.kind}")
    if m.kind == "lax" and m.eta is None:
        raise StructuralError(f"{m.name}: η missing for class lax")
    if check_functor:
        report.merge(validate_functor(m.functor), prefix="map.")
    f, s, t = m.functor, m.source, m.target
    scat, tcat = s.category, t.category
    objects = scat.objects()
    morphisms = scat.morphisms()

    if m.kind in ("strict", "lax_star"):
        report.check("map.unit", f.obj(s.unit) == t.unit, (s.unit,), f"f(1) = {format_id(f.obj(s.unit))}")

    if m.kind == "strict":
        for x, y in cartesian(objects, repeat=2):
            value = _safe(report, "map.tensor_objects", lambda: (f.obj(s.tensor_obj(x, y)), t.tensor_obj(f.obj(x), f.obj(y))))
            if value is not None:
                report.check("map.tensor_objects", value[0] == value[1], (x, y), f"{format_id(value[0])} != {format_id(value[1])}")
            value = _safe(report, "map.gamma", lambda: (f.mor(s.gamma(x, y)), t.gamma(f.obj(x), f.obj(y))))
            if value is not None:
                report.check("map.gamma", value[0] == value[1], (x, y), f"{format_id(value[0])} != {format_id(value[1])}")
        for g, h in cartesian(morphisms, repeat=2):
            value = _safe(report, "map.tensor_morphisms", lambda: (f.mor(s.tensor_mor(g, h)), t.tensor_mor(f.mor(g), f.mor(h))))
            if value is not None:
                report.check("map.tensor_morphisms", value[0] == value[1], (g, h), f"{format_id(value[0])} != {format_id(value[1])}")
        return report

    c = tcat.composite
    lam = m.lam_at
    for x, y in cartesian(objects, repeat=2):
        value = _safe(report, "lambda.typing", lambda: (lam(x, y), t.tensor_obj(f.obj(x), f.obj(y)), f.obj(s.tensor_obj(x, y))))
        if value is None:
            continue
        l, d, e = value
        report.check(
            "lambda.typing",
            tcat.has_morphism(l) and tcat.dom(l) == d and tcat.cod(l) == e,
            (x, y),
            f"λ = {format_id(l)}",
        )

    if m.kind == "lax_star":
        for x in objects:
            value = _safe(report, "lambda.unit", lambda: (lam(s.unit, x), lam(x, s.unit)))
            if value is not None:
                report.check(
                    "lambda.unit",
                    value == (tcat.identity(f.obj(x)), tcat.identity(f.obj(x))),
                    (x,),
                    f"λ_1x, λ_x1 = {format_id(value)}",
                )

    for g, h in cartesian(morphisms, repeat=2):
        x, y = scat.dom(g), scat.dom(h)
        x2, y2 = scat.cod(g), scat.cod(h)
        value = _safe(
            report,
            "lambda.natural",
            lambda: (
                c(f.mor(s.tensor_mor(g, h)), lam(x, y)),
                c(lam(x2, y2), t.tensor_mor(f.mor(g), f.mor(h))),
            ),
        )
        if value is not None:
            report.check("lambda.natural", value[0] is not None and value[0] == value[1], (g, h), f"{format_id(value[0])} != {format_id(value[1])}")

    for x, y, z in cartesian(objects, repeat=3):
        value = _safe(
            report,
            "lambda.assoc",
            lambda: (
                c(lam(x, s.tensor_obj(y, z)), t.tensor_mor(tcat.identity(f.obj(x)), lam(y, z))),
                c(lam(s.tensor_obj(x, y), z), t.tensor_mor(lam(x, y), tcat.identity(f.obj(z)))),
            ),
        )
        if value is not None:
            report.check("lambda.assoc", value[0] is not None and value[0] == value[1], (x, y, z), f"{format_id(value[0])} != {format_id(value[1])}")

    for x, y in cartesian(objects, repeat=2):
        value = _safe(
            report,
            "lambda.gamma",
            lambda: (
                c(f.mor(s.gamma(x, y)), lam(x, y)),
                c(lam(y, x), t.gamma(f.obj(x), f.obj(y))),
            ),
        )
        if value is not None:
            report.check("lambda.gamma", value[0] is not None and value[0] == value[1], (x, y), f"{format_id(value[0])} != {format_id(value[1])}")

    if m.kind == "lax":
        eta = m.eta
        report.check(
            "eta.typing",
            tcat.has_morphism(eta) and tcat.dom(eta) == t.unit and tcat.cod(eta) == f.obj(s.unit),
            (s.unit,),
            f"η = {format_id(eta)}",
        )
        if m.unit_triangles:
            for x in objects:
                fx = f.obj(x)
                value = _safe(
                    report,
                    "eta.unit",
                    lambda: (
                        c(lam(s.unit, x), t.tensor_mor(eta, tcat.identity(fx))),
                        c(lam(x, s.unit), t.tensor_mor(tcat.identity(fx), eta)),
                    ),
                )
                if value is not None:
                    report.check(
                        "eta.unit",
                        value == (tcat.identity(fx), tcat.identity(fx)),
                        (x,),
                        f"unit triangles give {format_id(value)}",
                    )
    return report


def identity_map(p: MonoidalStructure, kind: str = "strict") -> MonoidalMap:
    """恒等写像"""
    cat = p.category
    functor = FunctorData(
        cat, cat, {x: x for x in cat.objects()}, {f: f for f in cat.morphisms()}, name=f"id_{p.name}"
    )
    base = MonoidalMap(functor, p, p, "strict", name=functor.name)
    return base if kind == "strict" else base.with_kind(kind)


def check_monoid_table(elements: Sequence[Id], op: Dict[Tuple[Id, Id], Id], unit: Id):
    members = set(elements)
    if unit not in members:
        raise ConstructionError("unit is not an element", witness=unit)
    for a, b in cartesian(elements, repeat=2):
        if (a, b) not in op:
            raise ConstructionError("operation table is not total", witness=(a, b))
        if op[(a, b)] not in members:
            raise ConstructionError("operation table leaves the element set", witness=(a, b))
    for a in elements:
        if op[(a, unit)] != a or op[(unit, a)] != a:
            raise ConstructionError("unit law fails", witness=a)
    for a, b in cartesian(elements, repeat=2):
        if op[(a, b)] != op[(b, a)]:
            raise ConstructionError("operation is not commutative", witness=(a, b))
    for a, b, c in cartesian(elements, repeat=3):
        if op[(op[(a, b)], c)] != op[(a, op[(b, c)])]:
            raise ConstructionError("operation is not associative", witness=(a, b, c))


def discrete_from_monoid(
    elements: Sequence[Id], op: Dict[Tuple[Id, Id], Id], unit: Id, name: str = "monoid"
) -> PermutativeStructure:
    """
    可換モノイドから離散置換圏を生成

    Args:
        elements: 元（対象になる）
        op: 演算表 (a, b) → a·b
        unit: 単位元
        name: 表示名

    Returns:
        恒等射のみの置換圏（γ は恒等射）

    Raises:
        ConstructionError: 表が全域・単位的・可換・結合的でない場合（証拠付き）
    """
    check_monoid_table(elements, op, unit)
    cat = discrete_category(list(elements), name=name)
    ident = cat.identity
    tensor_objects = {(a, b): op[(a, b)] for a, b in cartesian(elements, repeat=2)}
    tensor_morphisms = {(ident(a), ident(b)): ident(op[(a, b)]) for a, b in cartesian(elements, repeat=2)}
    gamma = {(a, b): ident(op[(a, b)]) for a, b in cartesian(elements, repeat=2)}
    return PermutativeStructure(cat, tensor_objects, tensor_morphisms, unit, gamma, name=name)


def one_object_permutative(cat: FinCategory, name: str = "") -> PermutativeStructure:
    """
    可換群（モノイド）の1対象圏を、射の合成をテンソルとする置換圏にする

    Args:
        cat: 1対象圏

    Returns:
        γ が恒等射の置換圏

    Raises:
        ConstructionError: 1対象でない・可換でない場合
    """
    objects = cat.objects()
    if len(objects) != 1:
        raise ConstructionError("expected a one-object category", witness=objects)
    (o,) = objects
    morphisms = cat.morphisms()
    for f, g in cartesian(morphisms, repeat=2):
        if cat.compose(f, g) != cat.compose(g, f):
            raise ConstructionError("monoid is not commutative", witness=(f, g))
    return PermutativeStructure(
        cat,
        {(o, o): o},
        {(f, g): cat.compose(f, g) for f, g in cartesian(morphisms, repeat=2)},
        o,
        {(o, o): cat.identity(o)},
        name=name or cat.name,
    )


def opposite_permutative(p: PermutativeStructure) -> PermutativeStructure:
    """
    反対圏上の置換圏構造（γ^op_{x,y} = γ_{y,x}）

    Args:
        p: 有限表の置換圏構造

    Returns:
        PermutativeStructure
    """
    return PermutativeStructure(
        opposite(p.category),
        p.tensor_objects,
        p.tensor_morphisms,
        p.unit,
        {(x, y): p.gamma_table[(y, x)] for (x, y) in p.gamma_table if (y, x) in p.gamma_table},
        name=f"op({p.name})",
        truncated=p.truncated,
    )
