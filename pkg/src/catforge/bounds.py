#!/usr/bin/env python3
"""
検査ウィンドウと上限の設定

無限の構成（厳密化・輪積・Ψ・M^E）は有限のウィンドウの上で検査する。
ウィンドウ内のインスタンスは全て列挙する。標本数を明示したときだけ決定的に間引き、そのことをレポートに残す。
"""

import logging
import os
from dataclasses import asdict, dataclass
from itertools import product as cartesian
from math import gcd, prod
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from catforge.errors import BoundsError

logger = logging.getLogger(__name__)

ENV_BOUNDS = "CATFORGE_BOUNDS"
DEFAULT_SEQ = 3
DEFAULT_SUMMANDS = 3
DEFAULT_ARITY = 3
SIGMA_ARITY_LIMIT = 4


Footprint = Tuple[int, int]


@dataclass(frozen=True)
class Window:
    """
    厳密化の検査ウィンドウ

    図式のインスタンスの足跡（変数に現れる対象の列の長さの合計と和の項数の合計、
    射は始域と終域の両方を数える）が seq と summands に収まるものを全て検査する。
    sample を与えたときだけ図式ごとに決定的に間引き、そのことをレポートに残す。
    """

    seq: int = DEFAULT_SEQ
    summands: int = DEFAULT_SUMMANDS
    sample: Optional[int] = None

    def __post_init__(self):
        if self.seq < 0 or self.summands < 0:
            raise BoundsError(f"window bounds must be non-negative: {self}")
        if self.sample is not None and self.sample < 1:
            raise BoundsError(f"window sample must be positive, got {self.sample}")

    def fits(self, footprint: Footprint) -> bool:
        return footprint[0] <= self.seq and footprint[1] <= self.summands

    def as_bounds(self) -> Dict:
        return {"seq": self.seq, "summands": self.summands, "sample": self.sample or "all"}


@dataclass(frozen=True)
class WindowBudget:
    """インスタンスの足跡を測る関数とその上限"""

    window: Window
    measure: Callable[[Any], Footprint]

    def footprint(self, items: Sequence[Any]) -> Footprint:
        length = summands = 0
        for item in items:
            l, s = self.measure(item)
            length += l
            summands += s
        return length, summands

    def fits(self, items: Sequence[Any]) -> bool:
        return self.window.fits(self.footprint(items))

    def restrict(self, pool: Sequence[Any]) -> List[Any]:
        """単独で窓に収まる要素"""
        return [item for item in pool if self.window.fits(self.measure(item))]

    def chained(self) -> "WindowBudget":
        """要素の組（合成できる射の対など）を一つの変数として測る"""
        return WindowBudget(self.window, self.footprint)


@dataclass(frozen=True)
class MultiBounds:
    """多圏の切断（アリティ上限・関手の列挙上限・射集合の標本上限）"""

    arity: int = DEFAULT_ARITY
    functors: int = 64
    sample: Optional[int] = 400

    def __post_init__(self):
        if self.arity < 0:
            raise BoundsError(f"arity cap must be non-negative, got {self.arity}")

    def as_bounds(self) -> Dict:
        return {"arity": self.arity, "functors": self.functors, "sample": self.sample or "all"}


@dataclass(frozen=True)
class PsiBounds:
    """Ψ の検査範囲（組の長さ・和の項数・各 F(c) から使う対象数）"""

    length: int = 2
    summands: int = 2
    objects: int = 3
    sample: Optional[int] = 300

    def as_bounds(self) -> Dict:
        return {
            "length": self.length,
            "summands": self.summands,
            "objects": self.objects,
            "sample": self.sample or "all",
        }


def parse_bounds(text: str) -> Dict[str, int]:
    """
    "seq=2,summands=2,arity=3" 形式を読む

    Args:
        text: 環境変数の値

    Returns:
        キー → 整数

    Raises:
        BoundsError: 書式が不正な場合
    """
    result = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise BoundsError(f"{ENV_BOUNDS}: expected key=value, got {part!r}")
        try:
            result[key.strip()] = int(value)
        except ValueError:
            raise BoundsError(f"{ENV_BOUNDS}: {key} is not an integer") from None
    return result


def bounds_from_env() -> Dict[str, int]:
    """環境変数 CATFORGE_BOUNDS の値（未設定なら空）"""
    text = os.environ.get(ENV_BOUNDS, "")
    return parse_bounds(text) if text else {}


def _coprime_stride(total: int, cap: int) -> int:
    stride = max(1, total // cap)
    while gcd(stride, total) != 1:
        stride += 1
    return stride


def sample_product(pools: Sequence[Sequence], cap: Optional[int]) -> Iterator[Tuple]:
    """
    直積の全要素、または cap 個の決定的な標本

    標本は total と互いに素な歩幅で添字を進め、混合基数で復号する。

    Args:
        pools: 各成分の候補
        cap: 上限（None なら全列挙）

    Yields:
        タプル
    """
    sizes = [len(p) for p in pools]
    total = prod(sizes)
    if cap is None or total <= cap:
        yield from cartesian(*pools)
        return
    stride = _coprime_stride(total, cap)
    for k in range(cap):
        index = (k * stride) % total
        item = []
        for pool, size in zip(reversed(pools), reversed(sizes)):
            index, r = divmod(index, size)
            item.append(pool[r])
        yield tuple(reversed(item))


def product_size(pools: Sequence[Sequence]) -> int:
    return prod(len(p) for p in pools)


def spread(items: Sequence, limit: Optional[int]) -> List:
    """等間隔に最大 limit 個を取り出す"""
    if limit is None or len(items) <= limit:
        return list(items)
    step = len(items) / limit
    return [items[int(k * step)] for k in range(limit)]


def describe(bounds: object) -> Dict:
    """dataclass の上限をレポート用の辞書にする"""
    if hasattr(bounds, "as_bounds"):
        return bounds.as_bounds()
    return asdict(bounds)


def bounded_product(
    pools: Sequence[Sequence], measure: Callable[[Any], Footprint], window: Window
) -> Iterator[Tuple]:
    """
    直積のうち足跡の合計が窓に収まる要素を全て列挙

    足跡は非負なので、残りの成分の最小の足跡を足してはみ出す枝はそこで切る。
    各成分は足跡の小さい順（同じなら pools の順）に回す。

    Args:
        pools: 各成分の候補
        measure: 成分の足跡
        window: 上限

    Yields:
        タプル
    """
    sized = [sorted(((item, measure(item)) for item in pool), key=lambda p: p[1]) for pool in pools]
    rest = [(0, 0)] * (len(sized) + 1)
    for depth in reversed(range(len(sized))):
        if not sized[depth]:
            return
        low_l = min(fp[0] for _, fp in sized[depth])
        low_s = min(fp[1] for _, fp in sized[depth])
        rest[depth] = (rest[depth + 1][0] + low_l, rest[depth + 1][1] + low_s)

    def walk(depth: int, length: int, summands: int, prefix: Tuple) -> Iterator[Tuple]:
        if depth == len(sized):
            yield prefix
            return
        after_l, after_s = rest[depth + 1]
        for item, (l, s) in sized[depth]:
            if length + l + after_l > window.seq:
                break
            if summands + s + after_s <= window.summands:
                yield from walk(depth + 1, length + l, summands + s, prefix + (item,))

    yield from walk(0, 0, 0, ())
