#!/usr/bin/env python3
"""
catforge のコマンドラインインターフェース

JSON 文書を読み、同梱のスキーマで検査してから各モジュールの検査器・構成器を呼ぶ。
終了コード: 0 = すべての検査が通過、1 = 意味的な違反、2 = 構造・書式の誤り。
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from catforge.biperm import (
    BipermData,
    FiberBipermData,
    SymBimonFiberData,
    structure_from_document,
    validate_bipermutative,
    validate_fibered_biperm,
    validate_symbimon,
)
from catforge.bounds import (
    DEFAULT_ARITY,
    DEFAULT_SEQ,
    DEFAULT_SUMMANDS,
    MultiBounds,
    PsiBounds,
    Window,
    bounds_from_env,
)
from catforge.corpus import corpus_documents
from catforge.errors import CatforgeError, StructuralError
from catforge.fibration import FiberedFunctor, IndexedFamily, roundtrip_check, validate_family, validate_fibered
from catforge.fincat import FinCategory, pi0, validate_category
from catforge.groupcomp import group_complete, inclusion, k0, validate_completion, validate_group
from catforge.monostruct import (
    PermutativeStructure,
    opposite_permutative,
    validate_permutative,
    validate_symmetric_monoidal,
)
from catforge.psi import psi_build, validate_psi
from catforge.report import ValidationReport
from catforge.ringdata import TableRingData, build_multifunctor, validate_ring_data
from catforge.strictifier import (
    equivalence_check,
    strictify_base,
    strictify_total,
    validate_strict_base,
    validate_strictified,
)
from catforge.wreath import build_wreath, projection_W

logger = logging.getLogger(__name__)

COMMANDS = (
    "validate",
    "strictify",
    "wreath",
    "check-ring",
    "build-multifunctor",
    "group-complete",
    "k0",
    "roundtrip",
    "psi",
    "corpus",
)
SECTION_KEYS = ("kind", "name", "include")


def load_schema() -> Dict:
    """同梱の schema.json を読む"""
    text = resources.files("catforge").joinpath("schema.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class Settings:
    """
    検査の上限（フラグ → 環境変数 CATFORGE_BOUNDS → 既定値の順に決まる）

    sample は既定で None（全列挙）。CATFORGE_BOUNDS の sample=k で間引きを選ぶ。
    """

    seq: int = DEFAULT_SEQ
    summands: int = DEFAULT_SUMMANDS
    arity: int = DEFAULT_ARITY
    sample: Optional[int] = None

    @property
    def window(self) -> Window:
        return Window(seq=self.seq, summands=self.summands, sample=self.sample)

    @property
    def multi(self) -> MultiBounds:
        return MultiBounds(arity=self.arity, sample=self.sample)


def resolve_settings(args: argparse.Namespace) -> Settings:
    """
    フラグと環境変数から上限を決める

    Args:
        args: 解析済みの引数

    Returns:
        Settings

    Raises:
        BoundsError: 環境変数の書式が不正な場合
    """
    env = bounds_from_env()
    settings = Settings()
    for key, flag in (("seq", "seq_window"), ("summands", "summand_window"), ("arity", "arity_cap")):
        value = getattr(args, flag, None)
        if value is None:
            value = env.get(key, getattr(settings, key))
        setattr(settings, key, value)
    if "sample" in env:
        settings.sample = env["sample"] or None
    return settings


@dataclass
class Workspace:
    """読み込んだ文書（パスごと）と検査の上限"""

    settings: Settings
    documents: Dict[Path, Dict] = field(default_factory=dict)
    _validator: Optional[Draft202012Validator] = None

    @property
    def validator(self) -> Draft202012Validator:
        if self._validator is None:
            self._validator = Draft202012Validator(load_schema())
        return self._validator

    def load(self, path: Path, loading: Tuple[Path, ...] = ()) -> Dict:
        """
        文書を読み、"include" を解決してスキーマで検査

        "include" は {節の名前: 相対パス} で、参照先の文書本体をその節として取り込む。

        Args:
            path: 文書のパス

        Returns:
            検査済みの文書

        Raises:
            StructuralError: 読めない・JSON でない・循環参照・スキーマ違反の場合
        """
        path = Path(path).resolve()
        if path in self.documents:
            return self.documents[path]
        if path in loading:
            raise StructuralError(f"circular include of {path.name}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                doc = json.load(f)
        except OSError as e:
            raise StructuralError(f"cannot read {path}: {e.strerror}") from None
        except json.JSONDecodeError as e:
            raise StructuralError(f"{path.name}: invalid JSON at line {e.lineno}: {e.msg}") from None
        if not isinstance(doc, dict):
            raise StructuralError(f"{path.name}: top level must be an object")
        for section, ref in doc.pop("include", {}).items():
            other = self.load(path.parent / ref, loading + (path,))
            doc.setdefault(section, body(other))
        error = best_match(self.validator.iter_errors(doc))
        if error is not None:
            where = "/".join(str(p) for p in error.absolute_path) or "<root>"
            raise StructuralError(f"{path.name}: schema violation at {where}: {error.message}")
        self.documents[path] = doc
        logger.debug("loaded %s (%s)", path.name, doc["kind"])
        return doc


def body(doc: Dict) -> Dict:
    """文書から kind / name / include を除いた本体"""
    return {k: v for k, v in doc.items() if k not in SECTION_KEYS}


def _name(doc: Dict, path: Path) -> str:
    return doc.get("name") or path.stem


def _require_kind(doc: Dict, path: Path, *kinds: str):
    if doc["kind"] not in kinds:
        raise StructuralError(f"{path.name}: expected a document of kind {' or '.join(kinds)}, got {doc['kind']}")


def _permutative(doc: Dict, name: str) -> PermutativeStructure:
    category = FinCategory.from_document(doc["category"], name=name)
    symmetric = any(k in doc for k in ("associator", "left_unitor", "right_unitor"))
    return structure_from_document(category, doc, name, symmetric=symmetric)


# --- コマンド ------------------------------------------------------------------------


def _validate(ws: Workspace, path: Path, args: argparse.Namespace) -> List[ValidationReport]:
    doc = ws.load(path)
    kind, name, part = doc["kind"], _name(doc, path), body(doc)
    sample = ws.settings.sample
    if kind == "category":
        return [validate_category(FinCategory.from_document(part, name=name))]
    if kind == "permutative":
        p = _permutative(part, name)
        report = ValidationReport(f"permutative {name}")
        report.merge(validate_category(p.category))
        if p.strict:
            report.merge(validate_permutative(p))
        else:
            report.merge(validate_symmetric_monoidal(p))
        return [report]
    if kind == "bipermutative":
        return [validate_bipermutative(BipermData.from_document(part, name=name), sample)]
    if kind == "fibration":
        return [validate_fibered(FiberedFunctor.from_document(part, name=name))]
    if kind == "fiberbiperm":
        return [validate_fibered_biperm(FiberBipermData.from_document(part, name=name), ws.settings.window)]
    if kind == "symbimon":
        return [validate_symbimon(SymBimonFiberData.from_document(part, name=name))]
    if kind == "family":
        return [validate_family(IndexedFamily.from_document(part, name=name))]
    return [validate_ring_data(TableRingData.from_document(part, name=name), sample)]


def _strictify(ws: Workspace, path: Path, args: argparse.Namespace) -> List[ValidationReport]:
    doc = ws.load(path)
    _require_kind(doc, path, "symbimon", "permutative")
    name, window = _name(doc, path), ws.settings.window
    if doc["kind"] == "permutative":
        base = strictify_base(_permutative(body(doc), name), window)
        return [validate_strict_base(base), equivalence_check(base)]
    result = strictify_total(SymBimonFiberData.from_document(body(doc), name=name), window)
    return [validate_strictified(result), equivalence_check(result)]


def _wreath(ws: Workspace, path: Path, args: argparse.Namespace) -> List[ValidationReport]:
    doc = ws.load(path)
    _require_kind(doc, path, "category", "permutative")
    name, cap = _name(doc, path), ws.settings.seq
    if doc["kind"] == "category":
        wreath = build_wreath(FinCategory.from_document(body(doc), name=name), cap, args.unit)
        return [wreath.report]
    p = _permutative(body(doc), name)
    wreath = build_wreath(p.category, cap, p.unit)
    _, report = projection_W(wreath, opposite_permutative(p))
    return [wreath.report, report]


def _ring(ws: Workspace, path: Path) -> TableRingData:
    doc = ws.load(path)
    _require_kind(doc, path, "ring")
    return TableRingData.from_document(body(doc), name=_name(doc, path))


def _check_ring(ws: Workspace, path: Path, args: argparse.Namespace) -> List[ValidationReport]:
    d = _ring(ws, path)
    return [validate_ring_data(d, ws.settings.sample, require_mu=args.require_mu)]


def _build_multifunctor(ws: Workspace, path: Path, args: argparse.Namespace) -> List[ValidationReport]:
    d = _ring(ws, path)
    build = build_multifunctor(d, cap=ws.settings.arity, mode=args.mode, bounds=ws.settings.multi)
    return [build.report]


def _completion(ws: Workspace, path: Path):
    doc = ws.load(path)
    _require_kind(doc, path, "permutative")
    p = _permutative(body(doc), _name(doc, path))
    return group_complete(p.category, p)


def _group_complete(ws: Workspace, path: Path, args: argparse.Namespace) -> List[ValidationReport]:
    completion = _completion(ws, path)
    _, _, report = inclusion(completion)
    completion.report.note(f"pi0 blocks: {len(pi0(completion.category))}")
    return [completion.report, validate_completion(completion), report]


def _k0(ws: Workspace, path: Path, args: argparse.Namespace) -> List[ValidationReport]:
    group = k0(_completion(ws, path))
    print(json.dumps({"order": group.order, "table": group.table}))
    return [validate_group(group)]


def _roundtrip(ws: Workspace, path: Path, args: argparse.Namespace) -> List[ValidationReport]:
    doc = ws.load(path)
    _require_kind(doc, path, "family")
    return [roundtrip_check(IndexedFamily.from_document(body(doc), name=_name(doc, path)))]


def _psi(ws: Workspace, path: Path, args: argparse.Namespace) -> List[ValidationReport]:
    doc = ws.load(path)
    _require_kind(doc, path, "symbimon")
    data = SymBimonFiberData.from_document(body(doc), name=_name(doc, path))
    strict = strictify_total(data, ws.settings.window)
    bounds = PsiBounds(length=args.length, summands=args.summands)
    base = tuple(s for s in args.base.split(",") if s) if args.base else ()
    build = psi_build(strict, base, bounds)
    reports = [build.report]
    if not args.no_ring:
        reports.append(validate_psi(build.psi, bounds.sample))
    return reports


HANDLERS: Dict[str, Callable[[Workspace, Path, argparse.Namespace], List[ValidationReport]]] = {
    "validate": _validate,
    "strictify": _strictify,
    "wreath": _wreath,
    "check-ring": _check_ring,
    "build-multifunctor": _build_multifunctor,
    "group-complete": _group_complete,
    "k0": _k0,
    "roundtrip": _roundtrip,
    "psi": _psi,
}


def write_corpus(directory: Path) -> List[Path]:
    """
    例の文書一式を directory に書き出す

    Args:
        directory: 出力先（なければ作る）

    Returns:
        書いたファイルのパス
    """
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for stem, doc in corpus_documents().items():
        target = directory / f"{stem}.json"
        with open(target, "w", encoding="utf-8") as f:
            json.dump(doc, f, ensure_ascii=False, indent=2)
            f.write("\n")
        written.append(target)
    return written


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catforge",
        description="有限の圏・置換圏・ファイバー圏の公理検査と構成",
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="デバッグログを表示")
    parser.add_argument("--seq-window", type=int, help=f"列の長さの上限（既定 {DEFAULT_SEQ}）")
    parser.add_argument("--summand-window", type=int, help=f"和の項数の上限（既定 {DEFAULT_SUMMANDS}）")
    parser.add_argument("--arity-cap", type=int, help=f"多圏のアリティ上限（既定 {DEFAULT_ARITY}）")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if name != "corpus":
            p.add_argument("document", type=Path, help="JSON 文書のパス")
        return p

    command("validate", "文書の種類に応じた公理検査")
    command("strictify", "厳密化して出力を検査")
    wreath = command("wreath", "輪積圏の切断を構成して検査")
    wreath.add_argument("--unit", help="基底の単位対象（複数対象の圏のとき）")
    ring = command("check-ring", "環データの条件 c.1–c.14 を検査")
    ring.add_argument("--require-mu", action="store_true", help="μ がなければ違反とする")
    multi = command("build-multifunctor", "環データから多関手を構成")
    multi.add_argument("--mode", choices=("sigma", "esigma"), default="sigma", help="Σ_* または EΣ_*")
    command("group-complete", "群完備化と包含の検査")
    command("k0", "K₀ の乗積表を JSON で出力")
    command("roundtrip", "Grothendieck 構成の往復検査")
    psi = command("psi", "厳密化した入力から Ψ(ū) を構成して検査")
    psi.add_argument("--base", default="", help="ū の成分（カンマ区切り、空なら ()）")
    psi.add_argument("--length", type=int, default=PsiBounds.length, help="組の長さの上限")
    psi.add_argument("--summands", type=int, default=PsiBounds.summands, help="和の項数の上限")
    psi.add_argument("--no-ring", action="store_true", help="環データとしての検査を省く")
    corpus = command("corpus", "例の文書一式を書き出す")
    corpus.add_argument("directory", type=Path, help="出力先ディレクトリ")
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    コマンドを実行して終了コードを返す

    Args:
        argv: 引数（省略時は sys.argv）

    Returns:
        0（通過）、1（違反）、2（構造・書式の誤り）
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "corpus":
            written = write_corpus(args.directory)
            print(f"wrote {len(written)} documents to {args.directory}")
            return 0
        ws = Workspace(resolve_settings(args))
        reports = HANDLERS[args.command](ws, args.document, args)
    except CatforgeError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    ok = True
    for report in reports:
        print(report.render())
        ok &= report.ok
    print(f"# result {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def main():
    """メイン関数"""
    sys.exit(run())


if __name__ == "__main__":
    main()
