#!/usr/bin/env python3
"""
検査用の例の決定的な生成

可換モノイド・双置換圏（リグ）・ファイバー付きの例・擬関手の族・変異させた圏を作る。
文書を返す関数はすべて JSON にそのまま書ける形（ID は文字列）で、CLI の corpus コマンドが使う。
乱数は使わず、同じ呼び出しは常に同じ結果を返す。
"""

import logging
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Callable, Dict, List, Sequence, Tuple

from catforge.biperm import BipermData, SymBimonFiberData
from catforge.bounds import spread
from catforge.errors import StructuralError
from catforge.fibration import IndexedFamily
from catforge.fincat import (
    FinCategory,
    FunctorData,
    Id,
    arrow_category,
    discrete_category,
    format_id,
    identity_id,
    one_object_category,
    terminal,
)
from catforge.monostruct import (
    PermutativeStructure,
    SymMonoidalStructure,
    discrete_from_monoid,
    one_object_permutative,
)
from catforge.multicat import KLinearMap, PFragment, klinear_from_functions
from catforge.ringdata import TableRingData, ring_data_from_rig

logger = logging.getLogger(__name__)

MonoidTable = Tuple[str, List[str], Dict[Tuple[str, str], str], str]


# --- 可換モノイド --------------------------------------------------------------------


def _elements(n: int) -> List[str]:
    return [str(k) for k in range(n)]


def cyclic_table(n: int) -> MonoidTable:
    """Z/n（加法）"""
    elements = _elements(n)
    op = {(a, b): str((int(a) + int(b)) % n) for a, b in cartesian(elements, repeat=2)}
    return f"Z/{n}", elements, op, "0"


def boolean_table(kind: str = "or") -> MonoidTable:
    """{0,1} 上の or（単位 0）または and（単位 1）"""
    if kind == "or":
        return "bool-or", ["0", "1"], {(a, b): str(int(a) | int(b)) for a, b in cartesian("01", repeat=2)}, "0"
    if kind == "and":
        return "bool-and", ["0", "1"], {(a, b): str(int(a) & int(b)) for a, b in cartesian("01", repeat=2)}, "1"
    raise StructuralError(f"unknown boolean monoid {kind!r}")


def truncated_table(n: int) -> MonoidTable:
    """{0,…,n-1} 上の min(a+b, n-1)"""
    elements = _elements(n)
    op = {(a, b): str(min(int(a) + int(b), n - 1)) for a, b in cartesian(elements, repeat=2)}
    return f"trunc{n}", elements, op, "0"


def max_table(n: int) -> MonoidTable:
    """{0,…,n-1} 上の max"""
    elements = _elements(n)
    op = {(a, b): str(max(int(a), int(b))) for a, b in cartesian(elements, repeat=2)}
    return f"max{n}", elements, op, "0"


def klein_table() -> MonoidTable:
    """Z/2×Z/2"""
    elements = ["00", "01", "10", "11"]
    op = {
        (a, b): "".join(str(int(x) ^ int(y)) for x, y in zip(a, b)) for a, b in cartesian(elements, repeat=2)
    }
    return "Z/2xZ/2", elements, op, "00"


def commutative_monoids(max_order: int = 6) -> List[MonoidTable]:
    """
    位数 max_order 以下の可換モノイドの表

    Returns:
        (名前, 元, 演算表, 単位元) のリスト
    """
    tables = [cyclic_table(n) for n in range(1, max_order + 1)]
    tables += [boolean_table("or"), boolean_table("and")]
    tables += [truncated_table(n) for n in range(3, max_order + 1)]
    tables += [max_table(n) for n in range(3, min(max_order, 4) + 1)]
    if max_order >= 4:
        tables.append(klein_table())
    return tables


def monoid_structure(table: MonoidTable) -> PermutativeStructure:
    name, elements, op, unit = table
    return discrete_from_monoid(elements, op, unit, name=name)


def cyclic_monoid(n: int) -> PermutativeStructure:
    return monoid_structure(cyclic_table(n))


def boolean_monoid(kind: str = "or") -> PermutativeStructure:
    return monoid_structure(boolean_table(kind))


# --- 群の圏・super Z/2 --------------------------------------------------------------


def z2_group(name: str = "Z/2") -> FinCategory:
    """1対象圏としての Z/2（射 e, u）"""
    table = {("e", "e"): "e", ("e", "u"): "u", ("u", "e"): "u", ("u", "u"): "e"}
    return one_object_category(["e", "u"], table, "e", obj="*", name=name)


def z2_group_permutative() -> PermutativeStructure:
    return one_object_permutative(z2_group(), name="Z/2 group")


def super_z2() -> PermutativeStructure:
    """
    super Z/2: 対象 {0,1}、各対象の自己同型 {+1,-1}、⊗ は次数の和、γ_{1,1} = -1

    Returns:
        PermutativeStructure
    """
    objects = ["0", "1"]
    sign = {}
    for o in objects:
        sign[identity_id(o)] = (o, 1)
        sign[f"neg_{o}"] = (o, -1)
    by_value = {v: m for m, v in sign.items()}
    cat = FinCategory(
        objects,
        {m: (o, o) for m, (o, _) in sign.items()},
        {o: identity_id(o) for o in objects},
        {(g, f): by_value[(sign[f][0], sign[g][1] * sign[f][1])] for g, f in cartesian(sign, repeat=2) if sign[g][0] == sign[f][0]},
        name="super Z/2",
    )

    def degree(x: str, y: str) -> str:
        return str((int(x) + int(y)) % 2)

    tensor_objects = {(x, y): degree(x, y) for x, y in cartesian(objects, repeat=2)}
    tensor_morphisms = {
        (f, g): by_value[(degree(sign[f][0], sign[g][0]), sign[f][1] * sign[g][1])]
        for f, g in cartesian(sign, repeat=2)
    }
    gamma = {
        (x, y): by_value[(degree(x, y), -1 if x == y == "1" else 1)] for x, y in cartesian(objects, repeat=2)
    }
    return PermutativeStructure(cat, tensor_objects, tensor_morphisms, "0", gamma, name="super Z/2")


def codiscrete_magma(name: str = "codiscrete magma") -> SymMonoidalStructure:
    """
    3対象の余離散圏に、可換だが結合的でない積を載せた対称モノイダル構造

    x⊗x = x、x ≠ y なら x⊗y は残りの1つ。どの2対象の間にも射はちょうど1本なので、
    結合子・単位子・γ は端点で決まる。(a⊗a)⊗b = c、a⊗(a⊗b) = b なので結合子は恒等射でない。

    Args:
        name: 表示名

    Returns:
        SymMonoidalStructure（単位 "a"）
    """
    objects = ["a", "b", "c"]

    def arrow(x: str, y: str) -> str:
        return identity_id(x) if x == y else f"{x}>{y}"

    def op(x: str, y: str) -> str:
        return x if x == y else next(z for z in objects if z not in (x, y))

    ends = {arrow(x, y): (x, y) for x, y in cartesian(objects, repeat=2)}
    cat = FinCategory(
        objects,
        ends,
        {o: identity_id(o) for o in objects},
        {(arrow(y, z), arrow(x, y)): arrow(x, z) for x, y, z in cartesian(objects, repeat=3)},
        name=name,
    )
    unit = "a"
    return SymMonoidalStructure(
        cat,
        {(x, y): op(x, y) for x, y in cartesian(objects, repeat=2)},
        {
            (f, g): arrow(op(ends[f][0], ends[g][0]), op(ends[f][1], ends[g][1]))
            for f, g in cartesian(ends, repeat=2)
        },
        unit,
        {(x, y): arrow(op(x, y), op(y, x)) for x, y in cartesian(objects, repeat=2)},
        {(x, y, z): arrow(op(op(x, y), z), op(x, op(y, z))) for x, y, z in cartesian(objects, repeat=3)},
        {x: arrow(op(unit, x), x) for x in objects},
        {x: arrow(op(x, unit), x) for x in objects},
        name=name,
    )


# --- リグ ----------------------------------------------------------------------------


def rig(
    elements: Sequence[str],
    add: Dict[Tuple[str, str], str],
    zero: str,
    mult: Dict[Tuple[str, str], str],
    one: str,
    name: str,
) -> BipermData:
    """
    可換半環の表から離散双置換圏を作る（d^l, d^r は恒等射）

    Args:
        elements: 元
        add: 加法の表
        zero: 加法の単位元
        mult: 乗法の表
        one: 乗法の単位元
        name: 表示名

    Returns:
        BipermData
    """
    additive = discrete_from_monoid(elements, add, zero, name=f"{name}.add")
    m = discrete_from_monoid(elements, mult, one, name=f"{name}.mult")
    cat = additive.category
    multiplicative = PermutativeStructure(cat, m.tensor_objects, m.tensor_morphisms, one, m.gamma_table, name=m.name)
    ident = cat.identity
    d_left = {
        (x, x2, y): ident(add[(mult[(x, y)], mult[(x2, y)])]) for x, x2, y in cartesian(elements, repeat=3)
    }
    d_right = {
        (x, y, y2): ident(add[(mult[(x, y)], mult[(x, y2)])]) for x, y, y2 in cartesian(elements, repeat=3)
    }
    return BipermData(cat, additive, multiplicative, d_left, d_right, name=name)


def z2_rig() -> BipermData:
    """Z/2（xor, and）"""
    _, elements, xor, _ = cyclic_table(2)
    _, _, conj, _ = boolean_table("and")
    return rig(elements, xor, "0", conj, "1", "Z/2 rig")


def boolean_rig() -> BipermData:
    """ブール半環（or, and）"""
    _, elements, disj, _ = boolean_table("or")
    _, _, conj, _ = boolean_table("and")
    return rig(elements, disj, "0", conj, "1", "boolean rig")


# --- 文書 ----------------------------------------------------------------------------


def structure_document(p: PermutativeStructure) -> Dict:
    """台の圏を除いた構造の文書（"tensor", "unit", "gamma"）"""
    doc = p.to_document()
    doc.pop("category")
    return doc


def _rows(table: Dict[Tuple, Id]) -> List[List[str]]:
    return [[*map(format_id, key), format_id(value)] for key, value in table.items()]


def rig_document(r: BipermData) -> Dict:
    return {
        "kind": "bipermutative",
        "category": r.category.to_document(),
        "additive": structure_document(r.additive),
        "multiplicative": structure_document(r.multiplicative),
        "d_left": _rows(r.d_left),
        "d_right": _rows(r.d_right),
    }


def _terminal_monoid() -> PermutativeStructure:
    return discrete_from_monoid(["*"], {("*", "*"): "*"}, "*", name="terminal")


def _fibered_document(total: FinCategory, base: FinCategory, obj: Callable[[Id], Id], mor: Callable[[Id], Id]) -> Dict:
    return {
        "total": total.to_document(),
        "base": base.to_document(),
        "projection": {
            "objects": {format_id(x): format_id(obj(x)) for x in total.objects()},
            "morphisms": {format_id(g): format_id(mor(g)) for g in total.morphisms()},
        },
    }


def rig_over_terminal_document(r: BipermData) -> Dict:
    """
    リグを1点の上のファイバー対称双モノイダル圏の文書にする

    Args:
        r: 離散リグ

    Returns:
        kind "symbimon" の文書
    """
    base = _terminal_monoid()
    return {
        "kind": "symbimon",
        "fibered": _fibered_document(r.category, base.category, lambda x: "*", lambda g: base.category.identity("*")),
        "total_tensor": structure_document(r.multiplicative),
        "base_tensor": structure_document(base),
        "fibers": {"*": structure_document(r.additive)},
        "d_left": _rows(r.d_left),
        "d_right": _rows(r.d_right),
    }


def graded_z2_document() -> Dict:
    """
    Z/2 次数付きの例: 基底は離散 Z/2（xor）、c の上のファイバーは Z/2 リグ

    対象 "c/a" は次数 c・値 a。(c,a)⊗(d,b) = (c+d, ab)、(c,a)⊕_c(c,b) = (c, a+b)。

    Returns:
        kind "symbimon" の文書
    """
    bits = ["0", "1"]

    def obj(c: str, a: str) -> str:
        return f"{c}/{a}"

    objects = [obj(c, a) for c, a in cartesian(bits, repeat=2)]
    total = discrete_category(objects, name="graded Z/2")
    base = cyclic_monoid(2)
    ident = total.identity

    def parts(x: str) -> Tuple[int, int]:
        c, a = x.split("/")
        return int(c), int(a)

    def times(x: str, y: str) -> str:
        (c, a), (d, b) = parts(x), parts(y)
        return obj(str(c ^ d), str(a & b))

    def plus(x: str, y: str) -> str:
        (c, a), (_, b) = parts(x), parts(y)
        return obj(str(c), str(a ^ b))

    pairs = list(cartesian(objects, repeat=2))
    mult = {
        "tensor": {
            "objects": [[x, y, times(x, y)] for x, y in pairs],
            "morphisms": [[ident(x), ident(y), ident(times(x, y))] for x, y in pairs],
        },
        "unit": obj("0", "1"),
        "gamma": [[x, y, ident(times(x, y))] for x, y in pairs],
    }
    fibers = {}
    for c in bits:
        over = [obj(c, a) for a in bits]
        same = list(cartesian(over, repeat=2))
        fibers[c] = {
            "tensor": {
                "objects": [[x, y, plus(x, y)] for x, y in same],
                "morphisms": [[ident(x), ident(y), ident(plus(x, y))] for x, y in same],
            },
            "unit": obj(c, "0"),
            "gamma": [[x, y, ident(plus(x, y))] for x, y in same],
        }

    def grade(x: str) -> str:
        return x.split("/")[0]

    d_left, d_right = [], []
    for x, x2, y in cartesian(objects, repeat=3):
        if grade(x) == grade(x2):
            d_left.append([x, x2, y, ident(plus(times(x, y), times(x2, y)))])
    for x, y, y2 in cartesian(objects, repeat=3):
        if grade(y) == grade(y2):
            d_right.append([x, y, y2, ident(plus(times(x, y), times(x, y2)))])
    return {
        "kind": "symbimon",
        "fibered": _fibered_document(total, base.category, grade, lambda g: base.category.identity(grade(total.dom(g)))),
        "total_tensor": mult,
        "base_tensor": structure_document(base),
        "fibers": fibers,
        "d_left": d_left,
        "d_right": d_right,
    }


def symbimon(doc: Dict, name: str = "") -> SymBimonFiberData:
    body = {k: v for k, v in doc.items() if k not in ("kind", "name")}
    return SymBimonFiberData.from_document(body, name=name or doc.get("name", "fibered symmetric bimonoidal"))


def z2_fibered() -> SymBimonFiberData:
    """Z/2 リグを1点の上に置いた例"""
    return symbimon(rig_over_terminal_document(z2_rig()), name="Z/2 rig")


def boolean_fibered() -> SymBimonFiberData:
    return symbimon(rig_over_terminal_document(boolean_rig()), name="boolean rig")


def graded_z2() -> SymBimonFiberData:
    return symbimon(graded_z2_document(), name="graded Z/2")


# --- 擬関手の族 ----------------------------------------------------------------------


def iso_pair(name: str = "iso") -> FinCategory:
    """a ≅ b（i: a→b, j: b→a）"""
    table = {
        "id_a": ("a", "a"),
        "id_b": ("b", "b"),
        "i": ("a", "b"),
        "j": ("b", "a"),
    }
    composition = {
        ("id_a", "id_a"): "id_a",
        ("id_b", "id_b"): "id_b",
        ("i", "id_a"): "i",
        ("id_b", "i"): "i",
        ("j", "id_b"): "j",
        ("id_a", "j"): "j",
        ("j", "i"): "id_a",
        ("i", "j"): "id_b",
    }
    return FinCategory(["a", "b"], table, {"a": "id_a", "b": "id_b"}, composition, name=name)


def chain(length: int = 3, name: str = "") -> FinCategory:
    """全順序 0 < 1 < ⋯ < length-1（射 "i<j"）"""
    objects = [str(k) for k in range(length)]

    def arrow(i: int, j: int) -> str:
        return identity_id(str(i)) if i == j else f"{i}<{j}"

    morphisms = {arrow(i, j): (str(i), str(j)) for i in range(length) for j in range(i, length)}
    return FinCategory.from_composition(
        objects,
        morphisms,
        {o: identity_id(o) for o in objects},
        lambda g, f: arrow(int(morphisms[f][0]), int(morphisms[g][1])),
        name=name or f"[{length}]",
    )


def constant_family(base: FinCategory, value: FinCategory, name: str = "") -> IndexedFamily:
    """P(c) = value、P(f) = 恒等関手"""
    fibers = {c: value for c in base.objects()}
    transitions = {
        f: FunctorData(value, value, {x: x for x in value.objects()}, {g: g for g in value.morphisms()}, name=f"P({format_id(f)})")
        for f in base.morphisms()
    }
    return IndexedFamily(base, fibers, transitions, name=name or f"const {value.name} over {base.name}")


def representable_family(base: FinCategory, t: Id, name: str = "") -> IndexedFamily:
    """
    表現可能前層 Hom(−, t) を離散圏の族として

    Args:
        base: 基底圏
        t: 表現する対象

    Returns:
        IndexedFamily（P(f) は f の前合成）
    """
    fibers = {c: discrete_category(base.hom(c, t), name=f"Hom({format_id(c)},{format_id(t)})") for c in base.objects()}
    transitions = {}
    for f in base.morphisms():
        source, target = fibers[base.cod(f)], fibers[base.dom(f)]
        objects = {h: base.compose(h, f) for h in source.objects()}
        morphisms = {identity_id(h): identity_id(objects[h]) for h in source.objects()}
        transitions[f] = FunctorData(source, target, objects, morphisms, name=f"P({format_id(f)})")
    return IndexedFamily(base, fibers, transitions, name=name or f"Hom(-,{format_id(t)}) on {base.name}")


def swap_family() -> IndexedFamily:
    """Z/2 群の上で P(*) = 離散 {0,1}、P(u) = 入れ替え"""
    base = z2_group()
    points = discrete_category(["0", "1"], name="{0,1}")
    swap = {"0": "1", "1": "0"}
    transitions = {
        "e": FunctorData(points, points, {"0": "0", "1": "1"}, {"id_0": "id_0", "id_1": "id_1"}, name="P(e)"),
        "u": FunctorData(points, points, swap, {"id_0": "id_1", "id_1": "id_0"}, name="P(u)"),
    }
    return IndexedFamily(base, {"*": points}, transitions, name="swap action")


def pseudofunctor_families() -> List[IndexedFamily]:
    """
    基底 4 対象以下・ファイバー 3 対象以下の族

    Returns:
        IndexedFamily のリスト
    """
    families = [
        swap_family(),
        constant_family(terminal(), z2_group()),
        constant_family(terminal(), arrow_category()),
        constant_family(arrow_category(), terminal()),
        constant_family(iso_pair(), z2_group()),
        constant_family(chain(3), discrete_category(["p", "q"])),
    ]
    for base in (arrow_category(), z2_group(), iso_pair(), chain(3), chain(4)):
        for t in base.objects():
            family = representable_family(base, t)
            if all(1 <= len(c.objects()) <= 3 for c in family.fibers.values()):
                families.append(family)
    logger.debug("generated %d pseudofunctor families", len(families))
    return families


def family_document(family: IndexedFamily) -> Dict:
    return {
        "kind": "family",
        "base": family.base.to_document(),
        "fibers": {format_id(c): cat.to_document() for c, cat in family.fibers.items()},
        "transitions": {
            format_id(f): {
                "objects": {format_id(x): format_id(t.obj(x)) for x in t.source.objects()},
                "morphisms": {format_id(g): format_id(t.mor(g)) for g in t.source.morphisms()},
            }
            for f, t in family.transitions.items()
        },
    }


# --- 変異させた圏 --------------------------------------------------------------------


@dataclass(frozen=True)
class Mutant:
    """元の圏と、合成表に加えた変更"""

    category: FinCategory
    origin: str
    change: str


def category_oracle(cat: FinCategory) -> bool:
    """
    表を直接なめて圏の公理を判定（validate_category とは独立）

    Args:
        cat: 有限圏

    Returns:
        公理がすべて成り立てば True
    """
    ends = cat.morphism_table
    comp = cat.composition_table
    ident = cat.identity_table
    if any(ends[i] != (o, o) for o, i in ident.items()):
        return False
    for g, f in cartesian(ends, repeat=2):
        composable = ends[f][1] == ends[g][0]
        if composable != ((g, f) in comp):
            return False
        if composable and ends[comp[(g, f)]] != (ends[f][0], ends[g][1]):
            return False
    for f, (a, b) in ends.items():
        if comp[(ident[b], f)] != f or comp[(f, ident[a])] != f:
            return False
    for (g, f), gf in comp.items():
        for h in ends:
            if ends[h][0] == ends[g][1] and comp[(h, gf)] != comp[(comp[(h, g)], f)]:
                return False
    return True


def mutation_seeds() -> List[FinCategory]:
    """変異の元になる妥当な圏（5 対象以下・16 射以下）"""
    seeds = [
        z2_group(),
        one_object_category(["e", "u"], {("e", "e"): "e", ("e", "u"): "u", ("u", "e"): "u", ("u", "u"): "u"}, "e", name="idempotent"),
        cyclic_monoid(3).category,
        iso_pair(),
        arrow_category(),
        chain(3),
        chain(5),
    ]
    _, elements, op, unit = cyclic_table(4)
    seeds.append(one_object_category(elements, op, unit, name="Z/4 group"))
    _, elements, op, unit = max_table(3)
    seeds.append(one_object_category(elements, op, unit, name="max3"))
    return seeds


def _mutants_of(cat: FinCategory) -> List[Mutant]:
    ends = cat.morphism_table
    comp = cat.composition_table
    found = []

    def add(table: Dict, change: str):
        mutated = FinCategory(cat.objects(), ends, cat.identity_table, table, name=f"{cat.name}[{change}]")
        found.append(Mutant(mutated, cat.name, change))

    for k, ((g, f), gf) in enumerate(comp.items()):
        for h in ends:
            if h != gf and ends[h] == ends[gf]:
                add({**comp, (g, f): h}, f"{g}∘{f} := {h}")
        if k % 3 == 0:
            wrong = next((h for h in ends if ends[h] != ends[gf]), None)
            if wrong is not None:
                add({**comp, (g, f): wrong}, f"{g}∘{f} := {wrong} (mistyped)")
            add({key: value for key, value in comp.items() if key != (g, f)}, f"drop {g}∘{f}")
    return found


def mutated_categories(per_seed: int = 10) -> List[Mutant]:
    """
    合成表を1か所だけ書き換えた（または消した）圏と、書き換えていない元の圏

    Args:
        per_seed: 元の圏ごとの変異の最大数

    Returns:
        Mutant のリスト（change が空なら無変更）
    """
    result = []
    for seed in mutation_seeds():
        result.append(Mutant(seed, seed.name, ""))
        result.extend(spread(_mutants_of(seed), per_seed))
    logger.debug("generated %d mutated categories", len(result))
    return result


# --- ℙ の断片・環データ --------------------------------------------------------------


def pfragment_generators() -> List[KLinearMap]:
    """
    離散 Z/2 と or モノイドの上の生成元（Z/2 の乗法と、零写像 Z/2 → or）

    Returns:
        KLinearMap のリスト
    """
    z2 = cyclic_monoid(2)
    disj = boolean_monoid("or")
    ident = z2.category.identity

    def conj(xs: Tuple) -> str:
        return str(int(xs[0]) & int(xs[1]))

    def shifted(i: int, xs: Tuple, x2: str) -> Tuple:
        return xs[:i] + (z2.tensor_obj(xs[i], x2),) + xs[i + 1:]

    mult = klinear_from_functions(
        (z2, z2),
        z2,
        conj,
        lambda fs: ident(conj(tuple(z2.category.dom(f) for f in fs))),
        lambda i, xs, x2: ident(conj(shifted(i, xs, x2))),
        name="mult",
    )
    zero = klinear_from_functions(
        (z2,),
        disj,
        lambda xs: "0",
        lambda fs: disj.category.identity("0"),
        lambda i, xs, x2: disj.category.identity("0"),
        name="zero",
    )
    return [mult, zero]


def pfragment(cap: int = 3, rounds: int = 2, limit: int = 400) -> PFragment:
    return PFragment(pfragment_generators(), cap=cap, rounds=rounds, limit=limit, name="P-fragment(Z/2, or)")


def broken_ring() -> TableRingData:
    """1 を 0 に差し替えた Z/2 の環データ（単位の条件が壊れる）"""
    return ring_data_from_rig(z2_rig()).with_one("0")


def corpus_documents() -> Dict[str, Dict]:
    """
    CLI に渡せる文書一式

    Returns:
        ファイル名の語幹 → 文書
    """
    docs: Dict[str, Dict] = {}
    docs["terminal"] = {"kind": "category", **terminal().to_document()}
    for mutant in mutated_categories():
        if not mutant.change:
            key = f"category-{mutant.origin}"
            docs[_slug(key)] = {"kind": "category", **mutant.category.to_document()}
    for table in commutative_monoids():
        docs[_slug(f"monoid-{table[0]}")] = {"kind": "permutative", **monoid_structure(table).to_document()}
    docs["super-z2"] = {"kind": "permutative", **super_z2().to_document()}
    docs["z2-group"] = {"kind": "permutative", **z2_group_permutative().to_document()}
    docs["rig-z2"] = rig_document(z2_rig())
    docs["rig-boolean"] = rig_document(boolean_rig())
    docs["fibered-z2"] = rig_over_terminal_document(z2_rig())
    docs["fibered-boolean"] = rig_over_terminal_document(boolean_rig())
    docs["fibered-graded-z2"] = graded_z2_document()
    for k, family in enumerate(pseudofunctor_families()):
        docs[f"family-{k:02d}"] = family_document(family)
    docs["ring-z2"] = ring_data_from_rig(z2_rig()).to_document()
    docs["ring-boolean"] = ring_data_from_rig(boolean_rig()).to_document()
    docs["ring-broken"] = broken_ring().to_document()
    return docs


def _slug(text: str) -> str:
    out = []
    for ch in text.lower():
        if ch.isascii() and ch.isalnum():
            out.append(ch)
        elif out and out[-1] != "-":
            out.append("-")
    return "".join(out).strip("-")
