#!/usr/bin/env python3
"""
検査結果レポート

すべての検査器はここで定義する ValidationReport に結果を集める。
出力は行指向で決定的: "# <subject>", "# bounds ...", "CHECK <name> PASS|FAIL <detail>"。
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

logger = logging.getLogger(__name__)


def format_instance(instance: Any) -> str:
    """検査インスタンスを安定した文字列にする"""
    if isinstance(instance, tuple):
        return "(" + ",".join(format_instance(x) for x in instance) + ")"
    if isinstance(instance, str):
        return instance
    return repr(instance)


@dataclass(frozen=True)
class Violation:
    """公理インスタンスの違反1件"""

    check: str
    instance: Tuple
    detail: str = ""

    def describe(self) -> str:
        text = format_instance(self.instance)
        return f"{text}: {self.detail}" if self.detail else text


class ValidationReport:
    """検査名ごとにインスタンス数と違反を集めるクラス"""

    def __init__(self, subject: str, bounds: Optional[Dict[str, Any]] = None):
        """
        初期化

        Args:
            subject: 検査対象の名前（ヘッダーに出る）
            bounds: 検査に使った上限（ヘッダーに記録する）
        """
        self.subject = subject
        self.bounds: Dict[str, Any] = dict(bounds or {})
        self.counts: Dict[str, int] = {}
        self.skipped: Dict[str, int] = {}
        self.violations: List[Violation] = []
        self.notes: List[str] = []

    def _touch(self, name: str):
        if name not in self.counts:
            self.counts[name] = 0
            self.skipped[name] = 0

    def check(self, name: str, passed: bool, instance: Any = (), detail: str = "") -> bool:
        """
        1インスタンスの結果を記録

        Args:
            name: 検査名（例: "category.assoc"）
            passed: インスタンスが成り立ったか
            instance: インスタンスを識別するタプル
            detail: 違反時の説明

        Returns:
            passed をそのまま返す
        """
        self._touch(name)
        self.counts[name] += 1
        if not passed:
            if not isinstance(instance, tuple):
                instance = (instance,)
            self.violations.append(Violation(name, instance, detail))
        return passed

    def skip(self, name: str, count: int = 1):
        """切断の外に出たインスタンスを記録"""
        self._touch(name)
        self.skipped[name] += count

    def note(self, text: str):
        """切断などの注記を追加"""
        if text not in self.notes:
            self.notes.append(text)

    def merge(self, other: "ValidationReport", prefix: str = "") -> "ValidationReport":
        """
        別のレポートを取り込む

        Args:
            other: 取り込むレポート
            prefix: 検査名に付ける接頭辞

        Returns:
            self
        """
        for name in other.counts:
            key = prefix + name
            self._touch(key)
            self.counts[key] += other.counts[name]
            self.skipped[key] += other.skipped[name]
        for v in other.violations:
            self.violations.append(Violation(prefix + v.check, v.instance, v.detail))
        for key, value in other.bounds.items():
            self.bounds.setdefault(key, value)
        for text in other.notes:
            self.note(text)
        return self

    @property
    def ok(self) -> bool:
        return not self.violations

    def failures(self, name: Optional[str] = None) -> List[Violation]:
        """違反の一覧（name 指定時はその検査のみ）"""
        if name is None:
            return list(self.violations)
        return [v for v in self.violations if v.check == name]

    def failed(self, name: str) -> bool:
        return any(v.check == name for v in self.violations)

    def passed(self, name: str) -> bool:
        """name の検査が1件以上実行され、違反がない"""
        return self.counts.get(name, 0) > 0 and not self.failed(name)

    def failed_checks(self) -> List[str]:
        return [name for name in self.counts if self.failed(name)]

    def lines(self) -> List[str]:
        """
        決定的な行形式に整形

        Returns:
            出力行のリスト
        """
        out = [f"# {self.subject}"]
        if self.bounds:
            out.append(
                "# bounds " + " ".join(f"{k}={self.bounds[k]}" for k in sorted(self.bounds))
            )
        for text in self.notes:
            out.append(f"# note {text}")
        for name in self.counts:
            bad = self.failures(name)
            suffix = f" skipped={self.skipped[name]}" if self.skipped[name] else ""
            if bad:
                out.append(
                    f"CHECK {name} FAIL {len(bad)}/{self.counts[name]} {bad[0].describe()}"
                )
            else:
                out.append(f"CHECK {name} PASS {self.counts[name]}{suffix}")
        return out

    def render(self) -> str:
        return "\n".join(self.lines())

    def __repr__(self) -> str:
        return f"ValidationReport({self.subject!r}, ok={self.ok}, checks={len(self.counts)})"
