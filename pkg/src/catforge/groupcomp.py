#!/usr/bin/env python3
"""
有限置換亜群の群完備化 𝒟⁻¹𝒟、包含 i、誘導される置換圏構造と K₀ の抽出

射 (a,b) → (c,d) は三つ組 (s, α: a⊕s → c, β: b⊕s → d) の同値類。
(s,α,β) と (s′,α′,β′) は γ: s → s′ で α′∘(id⊕γ) = α, β′∘(id⊕γ) = β となるとき同値とし、
union-find で同値閉包をとる。
"""

import logging
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from catforge.errors import ConstructionError, StructuralError
from catforge.fincat import FinCategory, FunctorData, Id, format_id, pi0, validate_category
from catforge.monostruct import (
    MonoidalMap,
    PermutativeStructure,
    check_monoid_table,
    validate_monoidal_map,
    validate_permutative,
)
from catforge.report import ValidationReport

logger = logging.getLogger(__name__)


class UnionFind:
    """
    互いに素な集合を管理するクラス（代表元は format_id で最小の鍵）

    >>> uf = UnionFind()
    >>> uf.union(1, 2)
    >>> uf.find(2)
    1
    """

    def __init__(self):
        self.parent = {}

    def find(self, x):
        if x not in self.parent:
            self.parent[x] = x
            return x
        if self.parent[x] != x:
            self.parent[x] = self.find(self.parent[x])
        return self.parent[x]

    def union(self, x, y):
        px = self.find(x)
        py = self.find(y)
        self.parent[px] = self.parent[py] = min(px, py, key=format_id)

    def blocks(self) -> Dict:
        """代表元 → 要素のリスト"""
        result: Dict = {}
        for x in self.parent:
            result.setdefault(self.find(x), []).append(x)
        return result


class GCMorphism(NamedTuple):
    """同値類の代表の三つ組 (s, α, β)（始域・終域付き）"""

    source: Tuple[Id, Id]
    target: Tuple[Id, Id]
    s: Id
    alpha: Id
    beta: Id


@dataclass(eq=False)
class GroupCompletionCategory:
    """群完備化の結果"""

    base: FinCategory
    base_structure: PermutativeStructure
    category: FinCategory
    structure: PermutativeStructure
    classes: Dict[GCMorphism, GCMorphism]
    faithful: bool = True
    groupoid: bool = True
    witness: Optional[Tuple] = None
    report: ValidationReport = field(default_factory=lambda: ValidationReport("group completion"))

    @property
    def certified(self) -> bool:
        """群の公理を保証できる前提（亜群かつ a⊕− が忠実）が成り立つか"""
        return self.faithful and self.groupoid

    def canonical(self, triple: GCMorphism) -> GCMorphism:
        try:
            return self.classes[triple]
        except KeyError:
            raise StructuralError(f"unknown triple {format_id(triple)}") from None


@dataclass
class AbelianGroupPresentation:
    """有限アーベル群の乗積表"""

    order: int
    table: List[List[int]]
    identity: int = 0
    labels: List[str] = field(default_factory=list)

    def element_orders(self) -> List[int]:
        """各元の位数（昇順）"""
        orders = []
        for g in range(self.order):
            k, x = 1, g
            while x != self.identity:
                x = self.table[x][g]
                k += 1
            orders.append(k)
        return sorted(orders)

    def to_document(self) -> Dict:
        return {"order": self.order, "table": self.table, "identity": self.identity, "labels": self.labels}


def _faithfulness_witness(D: FinCategory, p: PermutativeStructure) -> Optional[Tuple]:
    """a⊕− が忠実でない (a, f, g) を探す"""
    for a in D.objects():
        for x, y in cartesian(D.objects(), repeat=2):
            seen: Dict[Id, Id] = {}
            for f in D.hom(x, y):
                image = p.tensor_mor(D.identity(a), f)
                if image in seen:
                    return (a, seen[image], f)
                seen[image] = f
    return None


def compose_triples(D: FinCategory, p: PermutativeStructure, second: GCMorphism, first: GCMorphism) -> GCMorphism:
    """(t, α′, β′)∘(s, α, β) = (s⊕t, α′∘(α⊕t), β′∘(β⊕t))（代表の取り方によらず同じ類に落ちる）"""
    t = second.s
    alpha = D.compose(second.alpha, p.tensor_mor(first.alpha, D.identity(t)))
    beta = D.compose(second.beta, p.tensor_mor(first.beta, D.identity(t)))
    return GCMorphism(first.source, second.target, p.tensor_obj(first.s, t), alpha, beta)


def group_complete(D: FinCategory, p: PermutativeStructure) -> GroupCompletionCategory:
    """
    Grayson–Quillen 構成 𝒟⁻¹𝒟

    Args:
        D: 有限亜群
        p: D 上の置換圏構造

    Returns:
        GroupCompletionCategory（前提が崩れていても構成し、certified を下げる）
    """
    if p.category != D:
        raise StructuralError("group_complete: structure is not on the given category")
    objects = D.objects()
    groupoid = D.is_groupoid()
    witness = _faithfulness_witness(D, p)
    if witness is not None:
        logger.warning("a⊕- is not faithful: %s", format_id(witness))
    if not groupoid:
        logger.warning("%s is not a groupoid; group axioms are not certified", D.name)

    pairs = [(a, b) for a in objects for b in objects]
    homs: Dict[Tuple, List[GCMorphism]] = {}
    for (a, b), (c, d) in cartesian(pairs, repeat=2):
        triples = []
        for s in objects:
            for alpha in D.hom(p.tensor_obj(a, s), c):
                for beta in D.hom(p.tensor_obj(b, s), d):
                    triples.append(GCMorphism((a, b), (c, d), s, alpha, beta))
        homs[((a, b), (c, d))] = triples

    uf = UnionFind()
    for triples in homs.values():
        # (s, α, β) から三つ組を引く索引。γ: s → s' ごとに相手が一意に決まる
        by_key = {(t.s, t.alpha, t.beta): t for t in triples}
        for t2 in triples:
            uf.find(t2)
            a, b = t2.source
            for s in objects:
                for gamma in D.hom(s, t2.s):
                    alpha = D.composite(t2.alpha, p.tensor_mor(D.identity(a), gamma))
                    beta = D.composite(t2.beta, p.tensor_mor(D.identity(b), gamma))
                    t = by_key.get((s, alpha, beta))
                    if t is not None:
                        uf.union(t, t2)
    classes = {t: uf.find(t) for triples in homs.values() for t in triples}
    representatives = sorted(set(classes.values()), key=format_id)

    def triple_tensor(left: GCMorphism, right: GCMorphism) -> GCMorphism:
        (a, b), (c, d) = left.source, right.source
        s, t = left.s, right.s
        # a⊕c⊕s⊕t → a⊕s⊕c⊕t
        shuffle_a = p.tensor_mor(D.identity(a), p.tensor_mor(p.gamma(c, s), D.identity(t)))
        shuffle_b = p.tensor_mor(D.identity(b), p.tensor_mor(p.gamma(d, s), D.identity(t)))
        alpha = D.compose(p.tensor_mor(left.alpha, right.alpha), shuffle_a)
        beta = D.compose(p.tensor_mor(left.beta, right.beta), shuffle_b)
        return GCMorphism(
            (p.tensor_obj(a, c), p.tensor_obj(b, d)),
            (p.tensor_obj(left.target[0], right.target[0]), p.tensor_obj(left.target[1], right.target[1])),
            p.tensor_obj(s, t),
            alpha,
            beta,
        )

    zero = p.unit
    identity = {(a, b): classes[GCMorphism((a, b), (a, b), zero, D.identity(a), D.identity(b))] for a, b in pairs}
    category = FinCategory.from_composition(
        pairs,
        {r: (r.source, r.target) for r in representatives},
        identity,
        lambda g, f: classes[compose_triples(D, p, g, f)],
        name=f"{D.name}^-1{D.name}",
    )
    tensor_objects = {
        (x, y): (p.tensor_obj(x[0], y[0]), p.tensor_obj(x[1], y[1])) for x, y in cartesian(pairs, repeat=2)
    }
    tensor_morphisms = {
        (f, g): classes[triple_tensor(f, g)] for f, g in cartesian(representatives, repeat=2)
    }
    gamma = {
        (x, y): classes[
            GCMorphism(tensor_objects[(x, y)], tensor_objects[(y, x)], zero, p.gamma(x[0], y[0]), p.gamma(x[1], y[1]))
        ]
        for x, y in cartesian(pairs, repeat=2)
    }
    structure = PermutativeStructure(
        category, tensor_objects, tensor_morphisms, (zero, zero), gamma, name=f"⊕ on {category.name}"
    )

    report = ValidationReport(f"group completion {D.name}")
    report.check("completion.faithful", witness is None, witness or (), "a⊕- not faithful")
    report.check("completion.groupoid", groupoid, (D.name,), "base is not a groupoid")
    logger.info(
        "group completion of %s: %d objects, %d classes from %d triples",
        D.name,
        len(pairs),
        len(representatives),
        len(classes),
    )
    return GroupCompletionCategory(
        D, p, category, structure, classes, witness is None, groupoid, witness, report
    )


def validate_completion(completion: GroupCompletionCategory) -> ValidationReport:
    """
    𝒟⁻¹𝒟 の圏の公理と ⊕ の置換圏の公理を全列挙で検査

    射の三つ組を全て回すので、K₀ だけが要るときは呼ばない。
    """
    report = ValidationReport(f"group completion {completion.base.name}")
    report.merge(validate_category(completion.category), prefix="completion.")
    report.merge(validate_permutative(completion.structure), prefix="completion.")
    return report


def inclusion(completion: GroupCompletionCategory) -> Tuple[FunctorData, MonoidalMap, ValidationReport]:
    """
    包含 i: 𝒟 → 𝒟⁻¹𝒟（i(a) = (0,a)、λ と η は恒等射）

    Args:
        completion: group_complete の結果

    Returns:
        (関手, lax 写像, lax 写像としての検査レポート)
    """
    D, p = completion.base, completion.base_structure
    C = completion.category
    zero = p.unit
    object_map = {a: (zero, a) for a in D.objects()}
    morphism_map = {
        f: completion.canonical(
            GCMorphism((zero, D.dom(f)), (zero, D.cod(f)), zero, D.identity(zero), f)
        )
        for f in D.morphisms()
    }
    functor = FunctorData(D, C, object_map, morphism_map, name="i")
    lam = {
        (a, b): C.identity((zero, p.tensor_obj(a, b))) for a, b in cartesian(D.objects(), repeat=2)
    }
    mapping = MonoidalMap(
        functor, p, completion.structure, "lax", lam=lam, eta=C.identity((zero, zero)), name="i"
    )
    report = validate_monoidal_map(mapping)
    for (a, b), l in lam.items():
        report.check("lambda.invertible", C.is_iso(l), (a, b), f"λ = {format_id(l)}")
    return functor, mapping, report


def _block_index(blocks: List[List[Id]]) -> Dict[Id, int]:
    return {o: i for i, block in enumerate(blocks) for o in block}


def k0(completion: GroupCompletionCategory) -> AbelianGroupPresentation:
    """
    π₀(𝒟⁻¹𝒟) と ⊕ から誘導される群

    Args:
        completion: group_complete の結果

    Returns:
        AbelianGroupPresentation（0 番目が (0,0) のブロック）

    Raises:
        ConstructionError: 誘導演算が代表に依存する、または逆元がない場合
    """
    C, m = completion.category, completion.structure
    blocks = pi0(C)
    zero = m.unit
    blocks.sort(key=lambda block: (zero not in block, format_id(block[0])))
    index = _block_index(blocks)
    n = len(blocks)
    table: List[List[Optional[int]]] = [[None] * n for _ in range(n)]
    for x, y in cartesian(C.objects(), repeat=2):
        i, j = index[x], index[y]
        k = index[m.tensor_obj(x, y)]
        if table[i][j] is None:
            table[i][j] = k
        elif table[i][j] != k:
            raise ConstructionError("induced operation depends on representatives", witness=(x, y))
    for x in C.objects():
        if index[m.tensor_obj(x, (x[1], x[0]))] != 0:
            raise ConstructionError("(a,b)+(b,a) is not the identity block", witness=x)
    labels = [format_id(block[0]) for block in blocks]
    return AbelianGroupPresentation(n, [list(row) for row in table], 0, labels)


def validate_group(g: AbelianGroupPresentation) -> ValidationReport:
    """
    可換群の公理を全列挙で検査

    Args:
        g: 乗積表

    Returns:
        レポート
    """
    report = ValidationReport("abelian group", {"order": g.order})
    t, e = g.table, g.identity
    elements = range(g.order)
    for a in elements:
        report.check("group.unit", t[a][e] == a and t[e][a] == a, (a,))
        report.check("group.inverse", any(t[a][b] == e for b in elements), (a,))
    for a, b in cartesian(elements, repeat=2):
        report.check("group.commutative", t[a][b] == t[b][a], (a, b))
    for a, b, c in cartesian(elements, repeat=3):
        report.check("group.assoc", t[t[a][b]][c] == t[a][t[b][c]], (a, b, c))
    return report


def grothendieck_group_oracle(
    elements: Sequence[Id], op: Dict[Tuple[Id, Id], Id], unit: Id
) -> AbelianGroupPresentation:
    """
    可換モノイドの Grothendieck 群を直接計算

    (a,b) ~ (c,d) ⇔ ある k で a+d+k = b+c+k。

    Args:
        elements: 元
        op: 演算表
        unit: 単位元

    Returns:
        AbelianGroupPresentation（0 番目が (0,0) の類）
    """
    check_monoid_table(elements, op, unit)
    pairs = [(a, b) for a in elements for b in elements]
    uf = UnionFind()
    for x in pairs:
        uf.find(x)
    for (a, b), (c, d) in cartesian(pairs, repeat=2):
        left, right = op[(a, d)], op[(b, c)]
        if any(op[(left, k)] == op[(right, k)] for k in elements):
            uf.union((a, b), (c, d))
    blocks = sorted(uf.blocks().values(), key=lambda block: ((unit, unit) not in block, format_id(min(block, key=format_id))))
    index = {x: i for i, block in enumerate(blocks) for x in block}
    n = len(blocks)
    table = [[0] * n for _ in range(n)]
    for i, j in cartesian(range(n), repeat=2):
        (a, b), (c, d) = blocks[i][0], blocks[j][0]
        table[i][j] = index[(op[(a, c)], op[(b, d)])]
    labels = [format_id(min(block, key=format_id)) for block in blocks]
    return AbelianGroupPresentation(n, table, 0, labels)


def same_group(g1: AbelianGroupPresentation, g2: AbelianGroupPresentation) -> bool:
    """有限アーベル群は位数の多重集合で同型類が決まる"""
    return g1.order == g2.order and g1.element_orders() == g2.element_orders()


def is_cancellative(elements: Sequence[Id], op: Dict[Tuple[Id, Id], Id]) -> bool:
    """a+c = b+c ⇒ a = b"""
    return all(
        a == b or op[(a, c)] != op[(b, c)] for a, b, c in cartesian(elements, repeat=3)
    )


def inclusion_injective_on_pi0(completion: GroupCompletionCategory) -> bool:
    """i が π₀ 上で単射か"""
    D, zero = completion.base, completion.base_structure.unit
    index = _block_index(pi0(completion.category))
    base_blocks = pi0(D)
    images = [index[(zero, block[0])] for block in base_blocks]
    return len(set(images)) == len(images)
