import json

import pytest

from surfkernel.cli import main, run
from surfkernel.jobs import bundled_job_text, load_job, parse_job
from surfkernel.errors import JobParseError
from surfkernel.schreier import build_context, parse_dump


def job_file(tmp_path, **changes):
    data = json.loads(bundled_job_text("s3"))
    data.update(changes)
    path = tmp_path / "job.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_genus():
    assert run(["genus", "--job", "s3"]) == ("8\n", 0, None)
    out, code, _ = run(["genus", "--job", "s3", "--format", "machine"])
    assert json.loads(out) == {"genus": 8} and code == 0


def test_validate_ok_and_failure(tmp_path):
    out, code, _ = run(["validate", "--job", "s3"])
    assert code == 0 and "valid: True" in out
    xi = ["(1,2)", "(1,2)", "(2,3)", "(2,3)", "(1,3)", "(1,3)", "(1,2)", "(1,3,2)"]
    path = job_file(tmp_path, phi={"Xi": xi})
    out, code, diag = run(["validate", "--job", path])
    assert code == 3 and "xi_7" in diag and "x7:False" in out


def test_simplify_reports_counts():
    out, code, _ = run(["simplify", "--job", "s3"])
    assert code == 0
    assert "generators: 16" in out and "relations: 1" in out and "linked: True" in out


def test_present():
    out, code, _ = run(["present", "--job", "s3"])
    assert code == 0 and "generators: 48" in out and "D: x7" in out


def test_machine_dump_is_a_fixed_point():
    out, code, _ = run(["simplify", "--job", "s3", "--format", "machine"])
    assert code == 0
    grp, sig, phi, t = load_job("s3").resolve()
    ctx = build_context(sig, grp, phi, t)
    assert parse_dump(out, ctx).dump() == out


def test_output_is_deterministic():
    for cmd in ("present", "simplify", "homology", "orbit", "adapted"):
        assert run([cmd, "--job", "s3"]) == run([cmd, "--job", "s3"])


def test_homology_and_adapted():
    out, code, _ = run(["homology", "--job", "s3", "--format", "machine"])
    data = json.loads(out)
    assert code == 0 and data["rank"] == 16 and data["representation"]
    out, code, _ = run(["homology", "--job", "s3_genus1", "--format", "machine"])
    data = json.loads(out)
    assert code == 0 and data["rank"] == 28 and data["block_structure"]
    out, code, _ = run(["homology", "--job", "s3", "--rule", "translation"])
    assert code == 0 and "representation: False" in out
    out, code, _ = run(["adapted", "--job", "s3", "--format", "machine"])
    assert code == 0 and json.loads(out)["adapted"] is False


def test_harvey_and_orbit():
    out, code, _ = run(["harvey", "--job", "s3_genus1", "--program", "V1,V2,V4",
                        "--format", "machine"])
    data = json.loads(out)
    assert code == 0 and [s["op"] for s in data["steps"]] == ["V1", "V2", "V4"]
    out, code, diag = run(["harvey", "--job", "s3"])
    assert code == 2 and "program" in diag
    out, code, diag = run(["harvey", "--job", "s3", "--program", "V1"])
    assert code == 3
    out, code, _ = run(["orbit", "--job", "s3_genus1", "--ops", "V1,V2", "--cap", "5",
                        "--format", "machine"])
    data = json.loads(out)
    assert code == 0 and data["size"] <= 5


def test_transversal_option(tmp_path):
    good = tmp_path / "t.json"
    good.write_text(json.dumps({"1": "1", "A": "x1", "B": "x3", "C": "x5", "D": "x7", "E": "x8"}))
    assert run(["simplify", "--job", "s3", "--transversal", str(good)])[1] == 0
    other = tmp_path / "t2.json"
    other.write_text(json.dumps({"1": "1", "A": "x2", "B": "x4", "C": "x6", "D": "x7", "E": "x8"}))
    out, code, _ = run(["simplify", "--job", "s3", "--transversal", str(other)])
    assert code == 0 and "generators: 16" in out
    long = tmp_path / "t3.json"
    long.write_text(json.dumps({"1": "1", "A": "x1", "B": "x3", "C": "x5", "D": "x1 x3", "E": "x8"}))
    assert run(["simplify", "--job", "s3", "--transversal", str(long)])[1] == 3


def test_keep_option(tmp_path):
    path = job_file(tmp_path, options={"keep": ["S[E,x5]", "S[D,x1]"]})
    out, code, _ = run(["simplify", "--job", path])
    assert code == 0 and "S[E,x5]\n" in out and "S[D,x1]\n" in out


def test_parse_errors(tmp_path, capsys):
    assert run(["nonsense", "--job", "s3"])[1] == 2
    assert run(["genus", "--job", "missing.json"])[1] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["genus", "--job", str(bad)])[1] == 2
    path = job_file(tmp_path, colour="red")
    assert run(["genus", "--job", path])[1] == 2
    with pytest.raises(JobParseError):
        parse_job(json.dumps({"group": {}, "signature": {}, "phi": {}, "options": {"speed": 1}}))
    assert main(["genus", "--job", "missing.json"]) == 2
    assert "parse error" in capsys.readouterr().err


def test_inconsistent_genus(tmp_path):
    path = tmp_path / "z2.json"
    path.write_text(json.dumps({"group": {"kind": "cyclic", "order": 2},
                                "signature": {"genus": 0, "periods": [2, 2, 2]},
                                "phi": {"Xi": [1, 1, 1]}}))
    assert run(["genus", "--job", str(path)])[1] == 3
    assert run(["validate", "--job", str(path)])[1] == 3


def test_main_writes_stdout(capsys):
    assert main(["genus", "--job", "s3"]) == 0
    assert capsys.readouterr().out == "8\n"
