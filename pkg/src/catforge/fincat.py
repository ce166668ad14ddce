#!/usr/bin/env python3
"""
有限圏・関手・自然変換のデータモデル

射の等しさは ID の等しさ。構造はすべて全域な参照表で与えられるので、
公理はすべて列挙で判定できる。compose(g, f) は「f の後に g」。
"""

import logging
from dataclasses import dataclass
from itertools import permutations, product as cartesian
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from catforge.bounds import WindowBudget
from catforge.errors import BoundsError, ComposabilityError, OutsideTruncation, StructuralError
from catforge.report import ValidationReport

logger = logging.getLogger(__name__)

Id = Hashable

NERVE_CAP = 6
CATEGORY_KEYS = ("objects", "morphisms", "identity", "compose")


def format_id(x: Any) -> str:
    """ID（入れ子タプル可）を文書用の文字列にする"""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(format_id(y) for y in x) + ")"
    return str(x)


def identity_id(obj: Id) -> str:
    return f"id_{format_id(obj)}"


class Category:
    """圏のインターフェースを表すクラス

    有限表（FinCategory）と遅延構成（厳密化・Ψ）の両方がこれを実装する。
    """

    name = "category"

    def objects(self) -> List[Id]:
        raise NotImplementedError

    def morphisms(self) -> List[Id]:
        raise NotImplementedError

    def hom(self, a: Id, b: Id) -> List[Id]:
        raise NotImplementedError

    def dom(self, f: Id) -> Id:
        raise NotImplementedError

    def cod(self, f: Id) -> Id:
        raise NotImplementedError

    def identity(self, a: Id) -> Id:
        raise NotImplementedError

    def compose(self, g: Id, f: Id) -> Id:
        raise NotImplementedError

    def has_object(self, a: Id) -> bool:
        return a in set(self.objects())

    def has_morphism(self, f: Id) -> bool:
        return f in set(self.morphisms())

    def out_morphisms(self, a: Id) -> List[Id]:
        """a を始域とする射"""
        result = []
        for b in self.objects():
            result.extend(self.hom(a, b))
        return result

    def composite(self, g: Id, f: Id) -> Optional[Id]:
        """合成を試み、定義されていなければ None"""
        try:
            return self.compose(g, f)
        except (StructuralError, OutsideTruncation):
            return None

    def compose_path(self, chain: Sequence[Id]) -> Id:
        """[f1, f2, ..., fn] を f1∘f2∘...∘fn に畳み込む"""
        return compose_path(self, chain)

    def inverse(self, f: Id) -> Optional[Id]:
        """
        逆射を探索

        Args:
            f: 射

        Returns:
            逆射（なければ None）
        """
        a, b = self.dom(f), self.cod(f)
        id_a, id_b = self.identity(a), self.identity(b)
        for g in self.hom(b, a):
            if self.composite(g, f) == id_a and self.composite(f, g) == id_b:
                return g
        return None

    def is_iso(self, f: Id) -> bool:
        return self.inverse(f) is not None

    def is_groupoid(self) -> bool:
        return all(self.is_iso(f) for f in self.morphisms())


class FinCategory(Category):
    """参照表で与えられる有限圏を表すクラス"""

    def __init__(
        self,
        objects: Iterable[Id],
        morphisms: Any,
        identity: Dict[Id, Id],
        composition: Dict[Tuple[Id, Id], Id],
        name: str = "category",
    ):
        """
        初期化

        Args:
            objects: 対象IDの列
            morphisms: 射ID → (始域, 終域) の辞書、または (id, dom, cod) の列
            identity: 対象ID → 恒等射ID
            composition: (g, f) → g∘f
            name: 表示名

        Raises:
            StructuralError: IDが解決できない場合
        """
        self.name = name
        self._objects: List[Id] = list(objects)
        if len(set(self._objects)) != len(self._objects):
            raise StructuralError(f"{name}: duplicate object ids")
        object_set = set(self._objects)

        if isinstance(morphisms, dict):
            entries = [(m, dc[0], dc[1]) for m, dc in morphisms.items()]
        else:
            entries = [tuple(e) for e in morphisms]
        self._morphisms: Dict[Id, Tuple[Id, Id]] = {}
        for m, d, c in entries:
            if m in self._morphisms:
                raise StructuralError(f"{name}: duplicate morphism id {format_id(m)}")
            if d not in object_set or c not in object_set:
                raise StructuralError(
                    f"{name}: morphism {format_id(m)} has unknown endpoint"
                )
            self._morphisms[m] = (d, c)

        self._identity: Dict[Id, Id] = dict(identity)
        for o in self._objects:
            if o not in self._identity:
                raise StructuralError(f"{name}: no identity for object {format_id(o)}")
            if self._identity[o] not in self._morphisms:
                raise StructuralError(
                    f"{name}: identity of {format_id(o)} is not a morphism"
                )
        for o in self._identity:
            if o not in object_set:
                raise StructuralError(f"{name}: identity given for unknown object {format_id(o)}")

        self._composition: Dict[Tuple[Id, Id], Id] = {}
        for (g, f), gf in composition.items():
            for m in (g, f, gf):
                if m not in self._morphisms:
                    raise StructuralError(
                        f"{name}: composition refers to unknown morphism {format_id(m)}"
                    )
            self._composition[(g, f)] = gf

        self._hom: Dict[Tuple[Id, Id], List[Id]] = {}
        self._out: Dict[Id, List[Id]] = {o: [] for o in self._objects}
        for m, (d, c) in self._morphisms.items():
            self._hom.setdefault((d, c), []).append(m)
            self._out[d].append(m)
        self._object_set = object_set
        self._inverse_cache: Dict[Id, Optional[Id]] = {}

    @classmethod
    def from_composition(
        cls,
        objects: Iterable[Id],
        morphisms: Any,
        identity: Dict[Id, Id],
        compose: Callable[[Id, Id], Id],
        name: str = "category",
    ) -> "FinCategory":
        """
        合成関数から合成表を作って有限圏を構成

        Args:
            objects: 対象の列
            morphisms: 射の辞書または列
            identity: 恒等射
            compose: (g, f) → g∘f を返す関数（合成可能な組でのみ呼ばれる）
            name: 表示名

        Returns:
            FinCategory
        """
        if isinstance(morphisms, dict):
            table = dict(morphisms)
        else:
            table = {m: (d, c) for m, d, c in morphisms}
        out: Dict[Id, List[Id]] = {}
        for m, (d, _) in table.items():
            out.setdefault(d, []).append(m)
        composition = {}
        for f, (_, c) in table.items():
            for g in out.get(c, []):
                composition[(g, f)] = compose(g, f)
        return cls(objects, table, identity, composition, name=name)

    def objects(self) -> List[Id]:
        return list(self._objects)

    def morphisms(self) -> List[Id]:
        return list(self._morphisms)

    def hom(self, a: Id, b: Id) -> List[Id]:
        return list(self._hom.get((a, b), []))

    def out_morphisms(self, a: Id) -> List[Id]:
        return list(self._out.get(a, []))

    def has_object(self, a: Id) -> bool:
        return a in self._object_set

    def has_morphism(self, f: Id) -> bool:
        return f in self._morphisms

    def dom(self, f: Id) -> Id:
        try:
            return self._morphisms[f][0]
        except KeyError:
            raise StructuralError(f"{self.name}: unknown morphism {format_id(f)}") from None

    def cod(self, f: Id) -> Id:
        try:
            return self._morphisms[f][1]
        except KeyError:
            raise StructuralError(f"{self.name}: unknown morphism {format_id(f)}") from None

    def identity(self, a: Id) -> Id:
        try:
            return self._identity[a]
        except KeyError:
            raise StructuralError(f"{self.name}: unknown object {format_id(a)}") from None

    def compose(self, g: Id, f: Id) -> Id:
        if self.cod(f) != self.dom(g):
            raise ComposabilityError(
                f"{self.name}: cannot compose {format_id(g)} after {format_id(f)}"
            )
        try:
            return self._composition[(g, f)]
        except KeyError:
            raise StructuralError(
                f"{self.name}: composition of {format_id(g)} after {format_id(f)} undefined"
            ) from None

    def composite(self, g: Id, f: Id) -> Optional[Id]:
        return self._composition.get((g, f))

    def inverse(self, f: Id) -> Optional[Id]:
        if f not in self._inverse_cache:
            self._inverse_cache[f] = super().inverse(f)
        return self._inverse_cache[f]

    @property
    def composition_table(self) -> Dict[Tuple[Id, Id], Id]:
        return dict(self._composition)

    @property
    def identity_table(self) -> Dict[Id, Id]:
        return dict(self._identity)

    @property
    def morphism_table(self) -> Dict[Id, Tuple[Id, Id]]:
        return dict(self._morphisms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self._objects == other._objects
            and self._morphisms == other._morphisms
            and self._identity == other._identity
            and self._composition == other._composition
        )

    def __hash__(self):
        return id(self)

    def __repr__(self) -> str:
        return (
            f"FinCategory({self.name!r}, objects={len(self._objects)}, "
            f"morphisms={len(self._morphisms)})"
        )

    @classmethod
    def from_document(cls, doc: Dict, name: str = "category") -> "FinCategory":
        """
        JSON 圏文書から構成

        Args:
            doc: "objects", "morphisms", "identity", "compose" を持つ辞書
            name: 表示名

        Returns:
            FinCategory

        Raises:
            StructuralError: 未知のキーや欠落がある場合
        """
        unknown = set(doc) - set(CATEGORY_KEYS)
        if unknown:
            raise StructuralError(f"{name}: unknown keys {sorted(unknown)}")
        missing = [k for k in CATEGORY_KEYS if k not in doc]
        if missing:
            raise StructuralError(f"{name}: missing keys {missing}")
        morphisms = [(m["id"], m["dom"], m["cod"]) for m in doc["morphisms"]]
        composition = {}
        for entry in doc["compose"]:
            if len(entry) != 3:
                raise StructuralError(f"{name}: compose entries are [g, f, gf] triples")
            g, f, gf = entry
            composition[(g, f)] = gf
        return cls(doc["objects"], morphisms, doc["identity"], composition, name=name)

    def to_document(self) -> Dict:
        """
        JSON 圏文書に変換（タプルIDは文字列化）

        Returns:
            圏文書の辞書
        """
        names = {}
        for m in self._morphisms:
            names[m] = format_id(m)
        if len(set(names.values())) != len(names):
            raise StructuralError(f"{self.name}: morphism ids collide when formatted")
        return {
            "objects": [format_id(o) for o in self._objects],
            "morphisms": [
                {"id": names[m], "dom": format_id(d), "cod": format_id(c)}
                for m, (d, c) in self._morphisms.items()
            ],
            "identity": {format_id(o): names[i] for o, i in self._identity.items()},
            "compose": [
                [names[g], names[f], names[gf]] for (g, f), gf in self._composition.items()
            ],
        }


def compose_path(cat: Category, chain: Sequence[Id]) -> Id:
    """
    射の列を合成

    Args:
        cat: 圏
        chain: [f1, ..., fn]（fn が最初に適用される）

    Returns:
        f1∘...∘fn

    Raises:
        StructuralError: 空の列
        ComposabilityError: 隣接する射が合成できない場合
    """
    if not chain:
        raise StructuralError("compose_path needs a nonempty chain")
    result = chain[-1]
    for g in reversed(chain[:-1]):
        result = cat.compose(g, result)
    return result


def validate_category(cat: Category, budget: Optional[WindowBudget] = None) -> ValidationReport:
    """
    圏の公理を全列挙で検査

    Args:
        cat: 検査する圏
        budget: 与えたときは足跡の合計が窓に収まる射の列だけを回す（遅延構成の圏）

    Returns:
        恒等射・合成可能性・型付け・単位律・結合律の各インスタンスを記録したレポート
    """
    report = ValidationReport(f"category {cat.name}")
    objects = cat.objects()

    def fits(chain: Tuple) -> bool:
        return budget is None or budget.fits(chain)

    for o in objects:
        i = cat.identity(o)
        report.check(
            "category.identity",
            cat.dom(i) == o and cat.cod(i) == o,
            (o, i),
            "identity has wrong endpoints",
        )

    morphisms = cat.morphisms() if budget is None else budget.restrict(cat.morphisms())
    for f in morphisms:
        for g in cat.out_morphisms(cat.cod(f)):
            if not fits((f, g)):
                continue
            gf = cat.composite(g, f)
            report.check("category.composable", gf is not None, (g, f), "composite missing")
            if gf is None:
                continue
            report.check(
                "category.typing",
                cat.dom(gf) == cat.dom(f) and cat.cod(gf) == cat.cod(g),
                (g, f),
                f"composite {format_id(gf)} has wrong endpoints",
            )

    if isinstance(cat, FinCategory):
        for (g, f) in cat.composition_table:
            report.check(
                "category.composable",
                cat.cod(f) == cat.dom(g),
                (g, f),
                "composite given for a non-composable pair",
            )

    for f in morphisms:
        left = cat.composite(cat.identity(cat.cod(f)), f)
        right = cat.composite(f, cat.identity(cat.dom(f)))
        report.check("category.unit", left == f, ("left", f), f"id∘f = {format_id(left)}")
        report.check("category.unit", right == f, ("right", f), f"f∘id = {format_id(right)}")

    for f in morphisms:
        for g in cat.out_morphisms(cat.cod(f)):
            if not fits((f, g)):
                continue
            gf = cat.composite(g, f)
            if gf is None:
                continue
            for h in cat.out_morphisms(cat.cod(g)):
                if not fits((f, g, h)):
                    continue
                hg = cat.composite(h, g)
                if hg is None:
                    continue
                lhs = cat.composite(h, gf)
                rhs = cat.composite(hg, f)
                report.check(
                    "category.assoc",
                    lhs is not None and lhs == rhs,
                    (h, g, f),
                    f"{format_id(lhs)} != {format_id(rhs)}",
                )
    logger.debug("validated %s: ok=%s", cat.name, report.ok)
    return report


class Functor:
    """関手のインターフェースを表すクラス"""

    source: Category
    target: Category
    name = "F"

    def obj(self, x: Id) -> Id:
        raise NotImplementedError

    def mor(self, f: Id) -> Id:
        raise NotImplementedError


@dataclass(eq=False)
class FunctorData(Functor):
    """対象表と射表で与えられる関手"""

    source: Category
    target: Category
    object_map: Dict[Id, Id]
    morphism_map: Dict[Id, Id]
    name: str = "F"

    def obj(self, x: Id) -> Id:
        try:
            return self.object_map[x]
        except KeyError:
            raise StructuralError(f"{self.name}: no image for object {format_id(x)}") from None

    def mor(self, f: Id) -> Id:
        try:
            return self.morphism_map[f]
        except KeyError:
            raise StructuralError(f"{self.name}: no image for morphism {format_id(f)}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctorData):
            return NotImplemented
        return self.object_map == other.object_map and self.morphism_map == other.morphism_map


class FunctionalFunctor(Functor):
    """関数で与えられる関手（遅延構成の圏の間で使う）"""

    def __init__(
        self,
        source: Category,
        target: Category,
        on_objects: Callable[[Id], Id],
        on_morphisms: Callable[[Id], Id],
        name: str = "F",
    ):
        self.source = source
        self.target = target
        self._on_objects = on_objects
        self._on_morphisms = on_morphisms
        self.name = name

    def obj(self, x: Id) -> Id:
        return self._on_objects(x)

    def mor(self, f: Id) -> Id:
        return self._on_morphisms(f)


def identity_functor(cat: Category) -> FunctorData:
    return FunctorData(
        cat,
        cat,
        {x: x for x in cat.objects()},
        {f: f for f in cat.morphisms()},
        name=f"id_{cat.name}",
    )


def compose_functors(g: Functor, f: Functor, name: str = "") -> FunctorData:
    """G∘F を表に展開して返す"""
    return FunctorData(
        f.source,
        g.target,
        {x: g.obj(f.obj(x)) for x in f.source.objects()},
        {m: g.mor(f.mor(m)) for m in f.source.morphisms()},
        name=name or f"{g.name}∘{f.name}",
    )


def validate_functor(functor: Functor) -> ValidationReport:
    """
    関手の公理を全列挙で検査

    Args:
        functor: 検査する関手

    Returns:
        型付け・恒等射・合成の保存を記録したレポート

    Raises:
        StructuralError: 像が行き先の圏で解決できない場合
    """
    source, target = functor.source, functor.target
    report = ValidationReport(f"functor {functor.name}")
    for x in source.objects():
        if not target.has_object(functor.obj(x)):
            raise StructuralError(
                f"{functor.name}: image of {format_id(x)} is not an object of {target.name}"
            )
    for f in source.morphisms():
        image = functor.mor(f)
        if not target.has_morphism(image):
            raise StructuralError(
                f"{functor.name}: image of {format_id(f)} is not a morphism of {target.name}"
            )
        report.check(
            "functor.typing",
            target.dom(image) == functor.obj(source.dom(f))
            and target.cod(image) == functor.obj(source.cod(f)),
            f,
            "endpoints not preserved",
        )
    for x in source.objects():
        report.check(
            "functor.identity",
            functor.mor(source.identity(x)) == target.identity(functor.obj(x)),
            x,
            f"F(id) = {format_id(functor.mor(source.identity(x)))}",
        )
    for f in source.morphisms():
        for g in source.out_morphisms(source.cod(f)):
            gf = source.composite(g, f)
            if gf is None:
                continue
            rhs = target.composite(functor.mor(g), functor.mor(f))
            report.check(
                "functor.compose",
                functor.mor(gf) == rhs,
                (g, f),
                f"F(g∘f) = {format_id(functor.mor(gf))}, F(g)∘F(f) = {format_id(rhs)}",
            )
    return report


@dataclass(eq=False)
class NatTransData:
    """成分表で与えられる自然変換"""

    source: Functor
    target: Functor
    components: Dict[Id, Id]
    name: str = "alpha"

    def at(self, x: Id) -> Id:
        try:
            return self.components[x]
        except KeyError:
            raise StructuralError(f"{self.name}: no component at {format_id(x)}") from None


def validate_natural(t: NatTransData) -> ValidationReport:
    """
    自然変換の成分の型と自然性の四角形を検査

    Args:
        t: 自然変換

    Returns:
        レポート
    """
    report = ValidationReport(f"natural transformation {t.name}")
    cat = t.source.source
    target = t.source.target
    for x in cat.objects():
        a = t.at(x)
        report.check(
            "natural.typing",
            target.has_morphism(a)
            and target.dom(a) == t.source.obj(x)
            and target.cod(a) == t.target.obj(x),
            x,
            "component has wrong endpoints",
        )
    for f in cat.morphisms():
        x, y = cat.dom(f), cat.cod(f)
        lhs = target.composite(t.target.mor(f), t.at(x))
        rhs = target.composite(t.at(y), t.source.mor(f))
        report.check(
            "natural.square",
            lhs is not None and lhs == rhs,
            f,
            f"G(f)∘a = {format_id(lhs)}, a∘F(f) = {format_id(rhs)}",
        )
    return report


def opposite(cat: FinCategory) -> FinCategory:
    """
    反対圏

    Args:
        cat: 有限圏

    Returns:
        始域と終域を入れ替え、合成を逆にした圏（同じID）
    """
    name = cat.name[3:-1] if cat.name.startswith("op(") and cat.name.endswith(")") else f"op({cat.name})"
    return FinCategory(
        cat.objects(),
        {m: (c, d) for m, (d, c) in cat.morphism_table.items()},
        cat.identity_table,
        {(f, g): gf for (g, f), gf in cat.composition_table.items()},
        name=name,
    )


def product(c1: FinCategory, c2: FinCategory) -> FinCategory:
    """
    直積圏（対象も射も組）

    Args:
        c1: 第1成分
        c2: 第2成分

    Returns:
        成分ごとに合成する有限圏
    """
    objects = [(a, b) for a in c1.objects() for b in c2.objects()]
    morphisms = {
        (f, g): ((c1.dom(f), c2.dom(g)), (c1.cod(f), c2.cod(g)))
        for f in c1.morphisms()
        for g in c2.morphisms()
    }
    identity = {(a, b): (c1.identity(a), c2.identity(b)) for a, b in objects}
    composition = {}
    for (g1, f1), h1 in c1.composition_table.items():
        for (g2, f2), h2 in c2.composition_table.items():
            composition[((g1, g2), (f1, f2))] = (h1, h2)
    return FinCategory(objects, morphisms, identity, composition, name=f"{c1.name}×{c2.name}")


def coproduct(c1: FinCategory, c2: FinCategory) -> FinCategory:
    """直和圏（IDに 0/1 のタグを付ける）"""
    objects = [(0, a) for a in c1.objects()] + [(1, b) for b in c2.objects()]
    morphisms = {}
    identity = {}
    composition = {}
    for tag, cat in ((0, c1), (1, c2)):
        for m, (d, c) in cat.morphism_table.items():
            morphisms[(tag, m)] = ((tag, d), (tag, c))
        for o, i in cat.identity_table.items():
            identity[(tag, o)] = (tag, i)
        for (g, f), gf in cat.composition_table.items():
            composition[((tag, g), (tag, f))] = (tag, gf)
    return FinCategory(objects, morphisms, identity, composition, name=f"{c1.name}+{c2.name}")


def pi0(cat: Category) -> List[List[Id]]:
    """
    連結成分への分割（射の向きは無視）

    Args:
        cat: 圏

    Returns:
        対象のブロックのリスト（圏の対象順で整列）
    """
    order = {o: i for i, o in enumerate(cat.objects())}
    graph = nx.Graph()
    graph.add_nodes_from(order)
    for f in cat.morphisms():
        graph.add_edge(cat.dom(f), cat.cod(f))
    blocks = [sorted(c, key=order.__getitem__) for c in nx.connected_components(graph)]
    blocks.sort(key=lambda block: order[block[0]])
    return blocks


def nerve_count(cat: Category, k: int, cap: int = NERVE_CAP) -> int:
    """
    k-単体（長さ k の合成可能な射の列）の個数

    Args:
        cat: 圏
        k: 列の長さ（0 は対象数）
        cap: k の上限

    Returns:
        個数

    Raises:
        BoundsError: k が上限を超えた場合
    """
    if k < 0 or k > cap:
        raise BoundsError(f"nerve_count: k={k} outside 0..{cap}")
    objects = cat.objects()
    if k == 0:
        return len(objects)
    morphisms = cat.morphisms()
    ending = {o: 0 for o in objects}
    for f in morphisms:
        ending[cat.cod(f)] += 1
    for _ in range(k - 1):
        step = {o: 0 for o in objects}
        for g in morphisms:
            step[cat.cod(g)] += ending[cat.dom(g)]
        ending = step
    return sum(ending.values())


def find_isomorphism(c1: Category, c2: Category, limit: int = 100000) -> Optional[FunctorData]:
    """
    同型関手をバックトラックで探索

    Args:
        c1: 始域
        c2: 行き先
        limit: 試す対象全単射の上限

    Returns:
        同型を与える関手（なければ None）
    """
    obj1, obj2 = c1.objects(), c2.objects()
    if len(obj1) != len(obj2) or len(c1.morphisms()) != len(c2.morphisms()):
        return None

    def hom_profile(cat, a, b):
        return len(cat.hom(a, b))

    tried = 0
    for image in permutations(obj2):
        tried += 1
        if tried > limit:
            logger.warning("find_isomorphism: search limit reached")
            return None
        omap = dict(zip(obj1, image))
        if any(
            hom_profile(c1, a, b) != hom_profile(c2, omap[a], omap[b]) for a in obj1 for b in obj1
        ):
            continue
        found = _match_morphisms(c1, c2, omap)
        if found is not None:
            return FunctorData(c1, c2, omap, found, name=f"iso({c1.name},{c2.name})")
    return None


def _match_morphisms(c1: Category, c2: Category, omap: Dict[Id, Id]) -> Optional[Dict[Id, Id]]:
    pairs = [(a, b) for a in c1.objects() for b in c1.objects() if c1.hom(a, b)]
    mmap: Dict[Id, Id] = {}

    def consistent() -> bool:
        for f, image_f in mmap.items():
            for g in c1.out_morphisms(c1.cod(f)):
                if g not in mmap:
                    continue
                gf = c1.composite(g, f)
                if gf in mmap and mmap[gf] != c2.composite(mmap[g], image_f):
                    return False
        return True

    def assign(index: int) -> bool:
        if index == len(pairs):
            return True
        a, b = pairs[index]
        source = c1.hom(a, b)
        target = c2.hom(omap[a], omap[b])
        for perm in permutations(target):
            trial = dict(zip(source, perm))
            if a == b and trial[c1.identity(a)] != c2.identity(omap[a]):
                continue
            mmap.update(trial)
            if consistent() and assign(index + 1):
                return True
            for m in source:
                mmap.pop(m, None)
        return False

    return dict(mmap) if assign(0) else None


def one_object_category(
    elements: Sequence[Id],
    table: Dict[Tuple[Id, Id], Id],
    unit: Id,
    obj: Id = "*",
    name: str = "monoid",
) -> FinCategory:
    """
    モノイドを1対象圏として表す

    Args:
        elements: 元（射ID）
        table: (g, f) → g∘f
        unit: 単位元
        obj: 唯一の対象
        name: 表示名

    Returns:
        FinCategory
    """
    return FinCategory(
        [obj],
        {e: (obj, obj) for e in elements},
        {obj: unit},
        dict(table),
        name=name,
    )


def discrete_category(objects: Sequence[Id], name: str = "discrete") -> FinCategory:
    """恒等射のみの圏（恒等射のIDは id_<対象>）"""
    identity = {o: identity_id(o) for o in objects}
    return FinCategory(
        objects,
        {identity[o]: (o, o) for o in objects},
        identity,
        {(identity[o], identity[o]): identity[o] for o in objects},
        name=name,
    )


def terminal(name: str = "terminal") -> FinCategory:
    return discrete_category(["*"], name=name)


def arrow_category(a: Id = "a", b: Id = "b", f: Id = "f", name: str = "arrow") -> FinCategory:
    """a → b の射を1本だけ持つ圏"""
    ia, ib = identity_id(a), identity_id(b)
    return FinCategory(
        [a, b],
        {ia: (a, a), ib: (b, b), f: (a, b)},
        {a: ia, b: ib},
        {(ia, ia): ia, (ib, ib): ib, (f, ia): f, (ib, f): f},
        name=name,
    )


def subcategory(
    cat: Category, objects: Sequence[Id], morphisms: Sequence[Id], name: str = "sub"
) -> FinCategory:
    """与えた対象と射に制限した部分圏（閉じていることは呼び出し側が保証）"""
    keep = list(morphisms)
    keep_set = set(keep)
    composition = {}
    for f in keep:
        for g in keep:
            if cat.cod(f) == cat.dom(g):
                gf = cat.composite(g, f)
                if gf in keep_set:
                    composition[(g, f)] = gf
    return FinCategory(
        objects,
        {m: (cat.dom(m), cat.cod(m)) for m in keep},
        {o: cat.identity(o) for o in objects},
        composition,
        name=name,
    )
