import io
import json

from kervaire.cli import run


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_adem_text():
    code, out, _ = _run("adem", "--j", "3")
    assert code == 0 and "relation holds (empty remainder)" in out
    code, out, _ = _run("adem", "--j", "3", "--start-index", "1")
    assert code == 0 and "relation fails; remainder Sq15 Sq1" in out


def test_machine_output_well_formed():
    code, out, _ = _run("jones-betti", "--format", "machine")
    doc = json.loads(out)
    assert code == 0 and doc["format"] == "kervaire-report/1"
    for c in doc["checks"]:
        assert c["category"] in ("hard", "paper-comparison")
        assert c["status"] in ("pass", "fail", "mismatch")
        assert c["category"] == "paper-comparison" or c["status"] != "mismatch"
    names = [(c["section"], c["name"]) for c in doc["checks"]]
    assert len(names) == len(set(names))


def test_format_before_subcommand():
    code, out, _ = _run("--format", "machine", "sw-flat")
    assert code == 0 and json.loads(out)["metadata"]["command"] == "sw-flat"


def test_deterministic_without_timings():
    a = _run("section5", "--format", "machine")[1]
    b = _run("section5", "--format", "machine")[1]
    assert a == b and "seconds" not in a
    assert "seconds" in _run("section5", "--format", "machine", "--timings")[1]


def test_usage_and_schema_errors(tmp_path):
    assert _run("frobnicate")[0] == 2
    assert _run("arf", str(tmp_path / "missing.yaml"))[0] == 2
    bad = tmp_path / "bad.yaml"
    bad.write_text("kind: quadratic\ngram: [[0, 1], [1, 0]]\nvalues: [1, 7]\n")
    code, _, err = _run("arf", str(bad))
    assert code == 2 and "bad.yaml:3" in err


def test_hard_failure_exit_code(tmp_path):
    deg = tmp_path / "deg.yaml"
    deg.write_text("kind: quadratic\ngram: [[0, 0], [0, 0]]\nvalues: [1, 0]\n")
    assert _run("arf", str(deg))[0] == 1
    assert _run("jones-arf", "--strict")[0] == 1
    assert _run("jones-arf")[0] == 0


def test_file_commands(tmp_path):
    ring = tmp_path / "ring.yaml"
    ring.write_text("kind: ring\ntruncations: [7]\npi: t1\n")
    code, out, _ = _run("gysin", str(ring))
    assert code == 0 and "(1, 0, 0, 0, 0, 0, 0, 1)" in out
    mono = tmp_path / "m.yaml"
    mono.write_text("kind: monodromy\nspheres: [7, 7]\npermutation: [1, 0]\n")
    code, out, _ = _run("wang", str(mono))
    assert code == 0
    q = tmp_path / "q.yaml"
    q.write_text("kind: quadratic\ngram: [[0, 1], [1, 0]]\nvalues: [1, 1]\n")
    code, out, _ = _run("arf", str(q))
    assert code == 0 and "Arf invariant: 1" in out


def test_octonion_small():
    code, out, _ = _run("octonion", "--grid", "3", "--samples", "4")
    assert code == 0 and "0/" not in out.splitlines()[-1][:2]
    assert _run("octonion", "--grid", "1")[0] == 2
