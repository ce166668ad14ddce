"""
Unit tests for the command line interface
"""

import json

import pytest

from catforge import cli, corpus
from catforge.bounds import ENV_BOUNDS, Window
from catforge.fincat import arrow_category
from catforge.ringdata import ring_data_from_rig


def write(directory, name, doc):
    path = directory / name
    path.write_text(json.dumps(doc, ensure_ascii=False), encoding="utf-8")
    return path


def category_doc(cat):
    return {"kind": "category", **cat.to_document()}


@pytest.fixture
def docs(tmp_path):
    """コーパスの文書を一時ディレクトリに書き出す"""
    cli.write_corpus(tmp_path)
    return tmp_path


class TestValidateCommand:
    """Test cases for the validate command"""

    def test_valid_category(self, tmp_path, capsys):
        path = write(tmp_path, "z2.json", category_doc(corpus.z2_group()))

        code = cli.run(["validate", str(path)])

        out = capsys.readouterr().out
        assert code == 0
        assert "CHECK category.assoc PASS" in out
        assert out.rstrip().endswith("# result PASS")

    def test_broken_category(self, tmp_path, capsys):
        mutant = next(m for m in corpus.mutated_categories() if m.change.startswith("drop"))
        path = write(tmp_path, "broken.json", category_doc(mutant.category))

        code = cli.run(["validate", str(path)])

        out = capsys.readouterr().out
        assert code == 1
        assert "CHECK category.composable FAIL" in out
        assert "# result FAIL" in out

    @pytest.mark.parametrize(
        "stem", ["super-z2", "rig-z2", "fibered-boolean", "fibered-graded-z2", "family-00", "ring-z2"]
    )
    def test_corpus_documents(self, docs, stem):
        assert cli.run(["validate", str(docs / f"{stem}.json")]) == 0

    def test_output_is_deterministic(self, docs, capsys):
        path = str(docs / "rig-boolean.json")

        cli.run(["validate", path])
        first = capsys.readouterr().out
        cli.run(["validate", path])

        assert capsys.readouterr().out == first


class TestDocumentErrors:
    """Test cases for malformed input, which exits with code 2"""

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")

        assert cli.run(["validate", str(path)]) == 2
        assert "invalid JSON" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert cli.run(["validate", str(tmp_path / "none.json")]) == 2
        assert "cannot read" in capsys.readouterr().err

    def test_schema_violation(self, tmp_path, capsys):
        path = write(tmp_path, "cat.json", {"kind": "category", "objects": ["a"]})

        assert cli.run(["validate", str(path)]) == 2
        assert "schema violation" in capsys.readouterr().err

    def test_unknown_kind(self, tmp_path):
        path = write(tmp_path, "what.json", {"kind": "operad"})

        assert cli.run(["validate", str(path)]) == 2

    def test_wrong_kind_for_command(self, docs, capsys):
        assert cli.run(["check-ring", str(docs / "terminal.json")]) == 2
        assert "expected a document of kind ring" in capsys.readouterr().err

    def test_include(self, tmp_path):
        """Test a permutative document taking its category from another file"""
        doc = corpus.cyclic_monoid(3).to_document()
        write(tmp_path, "cat.json", {"kind": "category", **doc.pop("category")})
        path = write(tmp_path, "z3.json", {"kind": "permutative", "include": {"category": "cat.json"}, **doc})

        assert cli.run(["validate", str(path)]) == 0

    def test_include_cycle(self, tmp_path, capsys):
        write(tmp_path, "a.json", {"kind": "category", "include": {"objects": "b.json"}})
        path = write(tmp_path, "b.json", {"kind": "category", "include": {"objects": "a.json"}})

        assert cli.run(["validate", str(path)]) == 2
        assert "circular include" in capsys.readouterr().err


class TestBounds:
    """Test cases for flags and CATFORGE_BOUNDS"""

    def test_env_sets_window(self, docs, monkeypatch, mocker):
        monkeypatch.setenv(ENV_BOUNDS, "seq=1,summands=1")
        spy = mocker.spy(cli, "strictify_total")

        cli.run(["strictify", str(docs / "fibered-boolean.json")])

        assert spy.call_args.args[1] == Window(seq=1, summands=1)

    def test_flag_overrides_env(self, docs, monkeypatch, mocker):
        monkeypatch.setenv(ENV_BOUNDS, "seq=1,summands=1")
        spy = mocker.spy(cli, "strictify_total")

        cli.run(["--seq-window", "2", "strictify", str(docs / "fibered-boolean.json")])

        assert spy.call_args.args[1] == Window(seq=2, summands=1)

    def test_bad_env(self, docs, monkeypatch, capsys):
        monkeypatch.setenv(ENV_BOUNDS, "seq")

        assert cli.run(["validate", str(docs / "terminal.json")]) == 2
        assert ENV_BOUNDS in capsys.readouterr().err

    def test_bounds_header(self, docs, capsys):
        cli.run(["--seq-window", "1", "--summand-window", "1", "strictify", str(docs / "fibered-z2.json")])

        assert "# bounds " in capsys.readouterr().out

    def test_default_is_exhaustive(self, docs, capsys):
        """Test nothing is sampled unless CATFORGE_BOUNDS asks for it"""
        assert cli.Settings().sample is None

        cli.run(["--seq-window", "1", "--summand-window", "1", "strictify", str(docs / "fibered-z2.json")])

        out = capsys.readouterr().out
        assert "# bounds sample=all seq=1 summands=1" in out
        assert "instances sampled" not in out

    def test_env_opts_into_sampling(self, docs, monkeypatch, mocker):
        monkeypatch.setenv(ENV_BOUNDS, "seq=1,summands=1,sample=5")
        spy = mocker.spy(cli, "strictify_total")

        cli.run(["strictify", str(docs / "fibered-boolean.json")])

        assert spy.call_args.args[1] == Window(seq=1, summands=1, sample=5)


class TestConstructionCommands:
    """Test cases for the commands that build something"""

    def test_strictify_permutative(self, docs):
        assert cli.run(["--seq-window", "2", "strictify", str(docs / "super-z2.json")]) == 0

    def test_wreath(self, docs, tmp_path):
        path = write(tmp_path, "z2.json", category_doc(corpus.z2_group()))

        assert cli.run(["--seq-window", "2", "wreath", str(path)]) == 0
        assert cli.run(["--seq-window", "2", "wreath", str(docs / "z2-group.json")]) == 0

    def test_wreath_needs_groupoid(self, tmp_path, capsys):
        path = write(tmp_path, "arrow.json", category_doc(arrow_category()))

        assert cli.run(["wreath", "--unit", "a", str(path)]) == 1
        assert capsys.readouterr().err.startswith("error:")

    def test_check_ring(self, docs):
        assert cli.run(["check-ring", str(docs / "ring-z2.json")]) == 0
        assert cli.run(["check-ring", str(docs / "ring-broken.json")]) == 1

    def test_require_mu(self, tmp_path):
        doc = ring_data_from_rig(corpus.z2_rig(), with_mu=False).to_document()
        path = write(tmp_path, "ring.json", doc)

        assert cli.run(["check-ring", str(path)]) == 0
        assert cli.run(["check-ring", "--require-mu", str(path)]) == 2

    @pytest.mark.parametrize("mode", ["sigma", "esigma"])
    def test_build_multifunctor(self, docs, mode):
        assert cli.run(["--arity-cap", "2", "build-multifunctor", "--mode", mode, str(docs / "ring-z2.json")]) == 0

    def test_group_complete(self, docs, capsys):
        assert cli.run(["group-complete", str(docs / "monoid-z-3.json")]) == 0
        assert "# note pi0 blocks: 3" in capsys.readouterr().out

    def test_k0(self, docs, capsys):
        code = cli.run(["k0", str(docs / "monoid-z-4.json")])

        first = capsys.readouterr().out.splitlines()[0]
        assert code == 0
        assert json.loads(first)["order"] == 4

    def test_roundtrip(self, docs):
        assert cli.run(["roundtrip", str(docs / "family-01.json")]) == 0

    @pytest.mark.slow
    def test_psi(self, docs):
        args = ["--seq-window", "2", "--summand-window", "2", "psi", "--length", "1", "--summands", "1"]

        assert cli.run(args + [str(docs / "fibered-z2.json")]) == 0
        assert cli.run(args + ["--base", "*", "--no-ring", str(docs / "fibered-z2.json")]) == 0


class TestCorpusCommand:
    """Test cases for the corpus command"""

    def test_writes_every_document(self, tmp_path, capsys):
        code = cli.run(["corpus", str(tmp_path / "out")])

        written = sorted(p.stem for p in (tmp_path / "out").glob("*.json"))
        assert code == 0
        assert written == sorted(corpus.corpus_documents())
        assert f"wrote {len(written)} documents" in capsys.readouterr().out
