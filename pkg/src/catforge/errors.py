#!/usr/bin/env python3
"""
catforge の例外階層

構造的な誤り（IDの未解決・表の欠落）と意味的な構成失敗を区別し、
CLI の終了コードに対応付ける。公理違反は例外ではなく ValidationReport に記録する。
"""

from typing import Any, Optional


class CatforgeError(Exception):
    """catforge の全例外の基底クラス"""

    exit_code = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class StructuralError(CatforgeError):
    """IDの未解決・表の不整合など、意味検査以前の誤り"""

    exit_code = 2


class ComposabilityError(StructuralError):
    """合成できない射の組を合成しようとした"""


class BoundsError(CatforgeError):
    """設定された上限（キャップ・ウィンドウ）を超えた"""

    exit_code = 2


class ConstructionError(CatforgeError):
    """構成の前提が意味的に満たされない（証拠付き）"""

    exit_code = 1

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness

    def __str__(self) -> str:
        if self.witness is None:
            return self.message
        return f"{self.message} (witness: {self.witness!r})"


class OutsideTruncation(Exception):
    """遅延構成の値が切断ウィンドウの外に出た（検査ではスキップとして扱う）"""
