import json

import pytest

from pbeauville.cli import EXIT_INDETERMINATE, EXIT_INPUT, EXIT_INVARIANT, EXIT_OK, main
from pbeauville.forge import construct_abelian, construct_pquotient
from pbeauville.pc import format_presentation


@pytest.fixture
def files(tmp_path):
    def write(name, pres_or_text):
        text = pres_or_text if isinstance(pres_or_text, str) else format_presentation(pres_or_text)
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


@pytest.fixture
def results(tmp_path):
    return tmp_path / "results.jsonl"


def run(results, *argv):
    return main(["--results", str(results), *argv])


def records(results):
    return [json.loads(line) for line in results.read_text().splitlines()]


def strip(rec):
    rec = dict(rec)
    rec.pop("volatile")
    return rec


def test_oracle_c5_c5(files, results, capsys):
    path = files("c5.pc", construct_abelian(5, 5))
    assert run(results, "oracle", path) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "beauville" and "S1 =" in out
    (rec,) = records(results)
    assert rec["schema_version"] == 1 and rec["command"] == "oracle"
    assert rec["result"]["decision"] == "beauville-tame"
    assert "witness" in rec["result"]


def test_classify_and_quotient(files, results, tmp_path, capsys):
    path = files("pq55.pc", construct_pquotient((5, 5)))
    assert run(results, "classify", path) == EXIT_OK
    assert "beauville-tame (case X=G\\G1)" in capsys.readouterr().out
    q = tmp_path / "q.pc"
    assert run(results, "quotient", path, "--by", "center", "-o", str(q)) == EXIT_OK
    assert run(results, "classify", str(q)) == EXIT_OK
    assert "beauville-tame" in capsys.readouterr().out
    assert run(results, "quotient", path, "--by", "gamma:3", "-o", str(q)) == EXIT_OK
    assert run(results, "check", str(q)) == EXIT_OK
    assert "order 5^3" in capsys.readouterr().out


def test_quotient_bad_by_value(files, results):
    path = files("pq53.pc", construct_pquotient((5, 3)))
    assert run(results, "quotient", path, "--by", "derived") == EXIT_INPUT
    assert run(results, "quotient", path, "--by", "gamma:x") == EXIT_INPUT


def test_analyze(files, results, capsys):
    path = files("pq54.pc", construct_pquotient((5, 4)))
    assert run(results, "analyze", path) == EXIT_OK
    out = capsys.readouterr().out
    assert "class 4" in out and "mu = 5" in out
    assert records(results)[0]["result"]["profile"]["mu"] == 5


def test_input_errors(files, results, tmp_path):
    bad = files("bad.pc", "p 5\nn 2\npow 3 : 1^1\n")
    assert run(results, "check", bad) == EXIT_INPUT
    assert run(results, "oracle", bad) == EXIT_INPUT
    assert run(results, "oracle", str(tmp_path / "missing.pc")) == EXIT_INPUT
    incons = files("inc.pc", "p 5\nn 3\npow 1 : 2^1\ncomm 2 1 : 3^1\n")
    assert run(results, "check", incons) == EXIT_INPUT
    assert run(results, "analyze", incons) == EXIT_INPUT
    abel = files("c25c5.pc", construct_abelian(25, 5))
    assert run(results, "classify", abel) == EXIT_INPUT


def test_indeterminate_exit(files, results):
    path = files("pq55.pc", construct_pquotient((5, 5)))
    assert run(results, "oracle", path, "--mode", "naive") == EXIT_INDETERMINATE
    small = files("pq53.pc", construct_pquotient((5, 3)))
    assert run(results, "oracle", small, "--budget", "3") == EXIT_INDETERMINATE
    assert records(results)[-1]["result"]["decision"] == "indeterminate"


def test_records_reproducible(files, tmp_path):
    path = files("pq54.pc", construct_pquotient((5, 4)))
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for res in (a, b):
        for cmd in (["check", path], ["analyze", path], ["oracle", path], ["classify", path]):
            assert run(res, *cmd) == EXIT_OK
    ra, rb = records(a), records(b)
    assert [strip(r) for r in ra] == [strip(r) for r in rb]
    assert all(set(r["volatile"]) == {"timestamp", "seconds"} for r in ra)


def test_results_file_is_append_only(files, results):
    path = files("c7.pc", construct_abelian(7, 7))
    run(results, "check", path)
    first = results.read_text()
    run(results, "oracle", path)
    text = results.read_text()
    assert text.startswith(first) and text.endswith("\n")
    assert len(records(results)) == 2


def test_results_disabled(files, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    path = files("c5.pc", construct_abelian(5, 5))
    assert main(["--results", "", "check", path]) == EXIT_OK
    assert not (tmp_path / "results.jsonl").exists()


def test_construct_deterministic_and_merges(tmp_path, results):
    out1, out2 = tmp_path / "c1", tmp_path / "c2"
    for out in (out1, out2):
        assert run(results, "construct", "pquotient", "5", "5", "--outdir", str(out)) == EXIT_OK
        assert run(results, "construct", "abelian", "5", "5", "--outdir", str(out)) == EXIT_OK
        assert run(results, "construct", "metabelian-search", "5", "6", "--outdir", str(out),
                   "--max-children", "3", "--max-emissions", "2", "--seed", "4") == EXIT_OK
    names = sorted(p.name for p in out1.iterdir())
    assert names == sorted(p.name for p in out2.iterdir())
    for name in names:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    manifest = json.loads((out1 / "manifest.json").read_text())
    files_ = [g["file"] for g in manifest["groups"]]
    assert "pquotient-5-5.pc" in files_ and "abelian-5-5.pc" in files_ and len(files_) == 4
    g = next(g for g in manifest["groups"] if g["file"] == "pquotient-5-5.pc")
    assert (g["p"], g["n"]) == (5, 6)


def test_construct_envelope(tmp_path, results):
    assert run(results, "construct", "pquotient", "11", "3", "--outdir", str(tmp_path)) == EXIT_INPUT
    assert run(results, "construct", "abelian", "6", "6", "--outdir", str(tmp_path)) == EXIT_INPUT
    with pytest.raises(SystemExit):
        run(results, "construct", "pquotient", "5", "--outdir", str(tmp_path))


def test_verify_theorem_small_corpus(tmp_path, results, capsys):
    out = tmp_path / "corpus"
    for m in range(2, 6):
        assert run(results, "construct", "pquotient", "5", str(m), "--outdir", str(out)) == EXIT_OK
    run(results, "construct", "pquotient", "3", "4", "--outdir", str(out))
    capsys.readouterr()
    assert run(results, "verify-theorem", str(out)) == EXIT_OK
    table = capsys.readouterr().out
    rows = [line for line in table.splitlines() if line.startswith("pquotient")]
    assert len(rows) == 5
    assert all(line.rstrip().endswith("agree") for line in rows)
    p3 = next(line for line in rows if line.startswith("pquotient-3-4"))
    assert p3.count("not-beauville") == 2


def test_verify_theorem_flags_adjudication(tmp_path, results, capsys):
    out = tmp_path / "corpus"
    assert run(results, "construct", "metabelian-search", "5", "6", "--filter", "g1-pair",
               "--max-emissions", "1", "--outdir", str(out)) == EXIT_OK
    capsys.readouterr()
    assert run(results, "verify-theorem", str(out)) == EXIT_OK
    assert "oracle adjudicated" in capsys.readouterr().out


def test_verify_theorem_inconsistent_file(tmp_path, results, capsys):
    out = tmp_path / "corpus"
    out.mkdir()
    (out / "broken.pc").write_text("p 5\nn 3\npow 1 : 2^1\ncomm 2 1 : 3^1\n")
    assert run(results, "verify-theorem", str(out)) == EXIT_INPUT
    assert "inconsistent presentation" in capsys.readouterr().out


def test_verify_theorem_invariant_exit(tmp_path, results, monkeypatch, capsys):
    import pbeauville.cli as cli
    from pbeauville.harness import verify_group

    def failing(*a, **k):
        row = verify_group(*a, **k)
        row.failures.append("injected")
        return row

    monkeypatch.setattr(cli, "verify_group", failing)
    out = tmp_path / "corpus"
    run(results, "construct", "abelian", "5", "5", "--outdir", str(out))
    assert run(results, "verify-theorem", str(out)) == EXIT_INVARIANT
    assert "FAIL: injected" in capsys.readouterr().out


def test_verify_theorem_tabulates_bad_files(tmp_path, results, capsys):
    out = tmp_path / "corpus"
    run(results, "construct", "abelian", "5", "5", "--outdir", str(out))
    (out / "garbage.pc").write_text("p five\n")
    assert run(results, "verify-theorem", str(out)) == EXIT_INPUT
    table = capsys.readouterr().out
    assert "garbage" in table and "unparsable" in table and "abelian-5-5" in table
