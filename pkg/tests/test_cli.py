import json
from pathlib import Path

import pytest

from mixedmult import cli
from mixedmult.errors import InputError
from mixedmult.jobs import COMMANDS, job_schema, parse_job
from mixedmult.multiplicities import Check
from mixedmult.runner import Report

GOLDEN = Path(__file__).parent / "golden"
JOBS = sorted((GOLDEN / "jobs").glob("*.json"))


def run_cli(capsysbinary, *argv):
    code = cli.main(list(argv))
    out = capsysbinary.readouterr()
    return code, out.out, out.err


def write_job(tmp_path, data, name="job.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data), encoding="utf-8")
    return str(p)


# ---------------------------------------------------------------- parse_job


def test_parse_valid_jobs():
    job = parse_job('{"command":"milnor","exponents":[3,3,3]}')
    assert job.command == "milnor"
    job = parse_job({"command": "mixedmult", "ring": {"vars": 2}, "I": "ideal(x1,x2)", "J": ["ideal(x1^2,x1*x2,x2^3)"]})
    assert job.ring.num_vars == 2
    assert len(job.ideals["J"]) == 1


def test_parse_mixedvolume_arity():
    data = {"command": "mixedvolume", "polytopes": [{"dim": 3, "points": [[0, 0, 0], [1, 0, 0]]}, {"dim": 3, "points": [[0, 0, 0], [0, 1, 0]]}]}
    with pytest.raises(InputError, match="3"):
        parse_job(data)


@pytest.mark.parametrize(
    "text,field",
    [
        ('{"command":"nope"}', "command"),
        ('{"command":"milnor"}', "exponents"),
        ('{"command":"mixedmult","ring":{"vars":2},"I":"ideal(x1,x3)","J":["ideal(x1)"]}', "I"),
        ('{"command":"mixedmult","ring":{"vars":2},"I":"ideal(x1,x2)","J":["ideal(x1 +)"]}', "J"),
        ("[1, 2]", "object"),
        ("{", "JSON"),
    ],
)
def test_parse_errors_name_the_field(text, field):
    with pytest.raises(InputError, match=field):
        parse_job(text)


def test_schema_lists_every_command():
    schema = job_schema()
    assert set(schema["properties"]["command"]["enum"]) == set(COMMANDS)


# ---------------------------------------------------------------- reports


def test_milnor_text_report(tmp_path, capsysbinary):
    job = write_job(tmp_path, {"command": "milnor", "exponents": [3, 3, 3]})
    code, out, _ = run_cli(capsysbinary, "milnor", "--job", job, "--format", "text")
    assert code == 0
    assert "μ* = (8, 4, 2, 1)" in out.decode("utf-8")


def test_bernstein_text_report(tmp_path, capsysbinary):
    job = write_job(tmp_path, {"command": "bernstein", "supports": [[[0, 0], [3, 0], [0, 3]], [[0, 0], [2, 0], [0, 2]]]})
    code, out, _ = run_cli(capsysbinary, "bernstein", "--job", job, "--format", "text")
    assert code == 0
    text = out.decode("utf-8")
    assert "bound = 6" in text
    assert "status: pass" in text


def test_stdin_job(monkeypatch, capsysbinary):
    import io
    import sys

    monkeypatch.setattr(sys, "stdin", io.StringIO('{"command":"milnor","exponents":[2,2]}'))
    code, out, _ = run_cli(capsysbinary, "milnor", "--job", "-")
    assert code == 0
    assert json.loads(out)["results"]["milnor"]["mu"] == [1, 1, 1]


@pytest.mark.parametrize("job_file", JOBS, ids=lambda p: p.stem)
def test_golden_reports(job_file, capsysbinary):
    command = json.loads(job_file.read_text(encoding="utf-8"))["command"]
    code, out, _ = run_cli(capsysbinary, command, "--job", str(job_file))
    assert code == 0
    assert out == (GOLDEN / job_file.name).read_bytes()


def test_reports_are_deterministic(capsysbinary):
    job = str(GOLDEN / "jobs" / "rees.json")
    _, first, _ = run_cli(capsysbinary, "rees", "--job", job)
    _, second, _ = run_cli(capsysbinary, "rees", "--job", job)
    assert first == second


def test_every_check_has_an_anchor():
    for job_file in JOBS:
        report = json.loads((GOLDEN / job_file.name).read_text(encoding="utf-8"))
        for c in report["checks"]:
            assert c["anchor"]


# ---------------------------------------------------------------- exit codes


def test_exit_input_error(tmp_path, capsysbinary):
    bad = write_job(tmp_path, {"command": "mixedvolume", "polytopes": [{"dim": 3, "points": [[0, 0, 0]]}]})
    code, out, err = run_cli(capsysbinary, "mixedvolume", "--job", bad)
    assert code == 1 and out == b"" and b"mixedmult" in err


def test_exit_bad_json_and_missing_file(tmp_path, capsysbinary):
    p = tmp_path / "x.json"
    p.write_text("{not json", encoding="utf-8")
    assert run_cli(capsysbinary, "milnor", "--job", str(p))[0] == 1
    assert run_cli(capsysbinary, "milnor", "--job", str(tmp_path / "missing.json"))[0] == 1
    assert run_cli(capsysbinary, "milnor")[0] == 1


def test_exit_command_mismatch(tmp_path, capsysbinary):
    job = write_job(tmp_path, {"command": "milnor", "exponents": [3, 3]})
    assert run_cli(capsysbinary, "rees", "--job", job)[0] == 1


def test_exit_bad_exponents(tmp_path, capsysbinary):
    job = write_job(tmp_path, {"command": "milnor", "exponents": [1, 3]})
    assert run_cli(capsysbinary, "milnor", "--job", job)[0] == 1


def test_exit_inconclusive(tmp_path, capsysbinary):
    job = write_job(tmp_path, {"command": "rees", "ring": {"vars": 3}, "I": "ideal(x1^3*x2, x2^4, x3^2*x1)"})
    code, out, err = run_cli(capsysbinary, "rees", "--job", job, "--box", "1")
    assert code == 2
    detail = json.loads(err)
    assert detail["error"] == "inconclusive fit"
    assert "region" in detail


def test_exit_invariant_failure(tmp_path, capsysbinary, monkeypatch):
    failing = Report("milnor", {}, {}, [Check("forced", "anchor", False, {})], [])
    monkeypatch.setattr(cli, "run", lambda job, opts: failing)
    job = write_job(tmp_path, {"command": "milnor", "exponents": [3, 3]})
    code, out, _ = run_cli(capsysbinary, "milnor", "--job", job)
    assert code == 3
    assert json.loads(out)["status"] == "fail"


def test_oracle_job(tmp_path, capsysbinary):
    job = write_job(tmp_path, {"command": "oracle", "variant": "katz_verma", "args": {"e_front": 3, "e_list": [2], "d": 1}})
    code, out, _ = run_cli(capsysbinary, "oracle", "--job", job)
    assert code == 0
    assert json.loads(out)["results"]["value"] == "5/2"
