"""End-to-end command tests driven through main(argv)."""

import json
from fractions import Fraction
from importlib.resources import files

import pytest

from msdp.cli import (
    ProblemFileError,
    build_parser,
    fmt_value,
    main,
    parse_policy_file,
    parse_problem_dict,
    parse_problem_file,
    spec_to_problem_dict,
)
from msdp.examples import climate_spec

PROBLEMS = files("msdp") / "problems"
CLIMATE = str(PROBLEMS / "climate.json")
SCHEDULING = str(PROBLEMS / "scheduling.json")
STOCH = str(PROBLEMS / "stochastic_climate.json")
POLICY = str(PROBLEMS / "policy_high_low_high.json")


@pytest.fixture
def climate_sum_file(tmp_path):
    doc = spec_to_problem_dict(climate_spec("sum"))
    path = tmp_path / "climate_sum.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_fmt_value():
    assert fmt_value(13) == "13"
    assert fmt_value(Fraction(7, 4)) == "7/4"
    assert fmt_value(Fraction(6, 2)) == "3"
    assert fmt_value(0.1 + 0.2) == "0.3"
    assert fmt_value(1 / 3) == "0.333333333"


@pytest.mark.parametrize("path", [CLIMATE, SCHEDULING, STOCH])
def test_problem_files_round_trip(path):
    spec = parse_problem_file(path)
    doc = spec_to_problem_dict(spec)
    again = parse_problem_dict(doc)
    assert spec_to_problem_dict(again) == doc
    assert again.name == spec.name
    assert again.next == spec.next
    assert again.reward == spec.reward


def test_stoch_weights_parse_exactly():
    spec = parse_problem_file(STOCH)
    mx1 = spec.next_at(0, "Good", "High")
    assert mx1.weights == (Fraction(4, 5), Fraction(1, 5))
    assert spec.reward_at(0, "Good", "Low", "Good") == Fraction(3)


def test_solve_text(capsys):
    assert main(["solve", CLIMATE, "--horizon", "3"]) == 0
    out = capsys.readouterr().out
    assert "problem: climate" in out
    assert "step 0: Good -> Low, Bad -> Low" in out
    assert "val(Good) = 9" in out
    assert "val(Bad) = 3" in out


def test_solve_json_with_both_value_functions(capsys):
    assert main(["solve", STOCH, "--horizon", "3", "--format", "json",
                 "--value-fn", "both"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["problem"] == "stochastic-climate"
    assert doc["policies"] == [{"Good": "Low", "Bad": "Low"}] * 3
    assert doc["values"]["val"] == {"Good": 9, "Bad": "637/125"}
    assert doc["values"]["val"] == doc["values"]["val_prime"]


def test_solve_window_flags(capsys):
    assert main(["solve", CLIMATE, "--step", "2", "--horizon", "1"]) == 0
    out = capsys.readouterr().out
    assert "backward induction from step 2, horizon 1" in out
    assert "val(Good) = 3" in out


def test_verify_exit_zero_when_certified(capsys):
    assert main(["verify", CLIMATE, "--horizon", "2"]) == 0
    out = capsys.readouterr().out
    assert "verdict: backward induction certified at desk scale" in out


def test_verify_exit_one_on_failures(capsys, climate_sum_file):
    assert main(["verify", climate_sum_file, "--horizon", "2"]) == 1
    out = capsys.readouterr().out
    assert "FAIL measPlusSpec" in out
    assert "verdict: backward induction NOT certified" in out


def test_verify_json_byte_identical_between_runs(capsys):
    assert main(["verify", CLIMATE, "--horizon", "2", "--format", "json"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", CLIMATE, "--horizon", "2", "--format", "json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    assert doc["verdict"] == "certified"


def test_trajectories_with_policy_file(capsys):
    assert main(["trajectories", CLIMATE, "--state", "Good",
                 "--policy", POLICY]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == [
        "Good.High -> Good.Low -> Good.High -> Good  sum = 7",
        "Good.High -> Good.Low -> Good.High -> Bad  sum = 5",
        "Good.High -> Bad.Low -> Good.High -> Good  sum = 5",
        "Good.High -> Bad.Low -> Good.High -> Bad  sum = 3",
        "Good.High -> Bad.Low -> Bad.High -> Bad  sum = 1",
        "min total = 1",
    ]


def test_trajectories_optimal_shows_weights(capsys):
    assert main(["trajectories", STOCH, "--horizon", "1", "--state", "Good"]) == 0
    out = capsys.readouterr().out
    assert "Good.Low -> Good  sum = 3  weight = 1" in out
    assert "expected total = 3" in out


def test_trajectories_all_policies(capsys):
    assert main(["trajectories", CLIMATE, "--horizon", "1", "--state", "Bad",
                 "--policy", "all"]) == 0
    out = capsys.readouterr().out
    assert out.count("policy ") == 4


def test_exit_code_two_on_errors(capsys, tmp_path):
    assert main(["solve", str(tmp_path / "nope.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["solve", str(bad)]) == 2
    vs = tmp_path / "version.json"
    vs.write_text(json.dumps({"schema_version": 99}))
    assert main(["solve", str(vs)]) == 2
    assert main(["solve", CLIMATE, "--horizon", "9"]) == 2
    assert main(["trajectories", CLIMATE, "--state", "Fine"]) == 2
    err = capsys.readouterr().err
    assert err.count("error:") == 5


def test_argparse_usage_exit_code():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_seed_env_fallback(monkeypatch):
    monkeypatch.setenv("SDP_SEED", "7")
    args = build_parser().parse_args(["verify", CLIMATE])
    assert args.seed == 7
    args = build_parser().parse_args(["verify", CLIMATE, "--seed", "3"])
    assert args.seed == 3
    monkeypatch.delenv("SDP_SEED")
    assert build_parser().parse_args(["verify", CLIMATE]).seed == 0


def test_policy_file_validation(tmp_path):
    spec = parse_problem_file(CLIMATE)
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"policies": [{"Good": "High"}]}))
    with pytest.raises(ProblemFileError, match="missing state 'Bad'"):
        parse_policy_file(str(missing), spec, 0)
    inadmissible = tmp_path / "inadmissible.json"
    inadmissible.write_text(json.dumps(
        {"policies": [{"Good": "High", "Bad": "Sideways"}]}))
    with pytest.raises(ProblemFileError, match="not admissible"):
        parse_policy_file(str(inadmissible), spec, 0)


def test_problem_file_errors_carry_locations(tmp_path):
    doc = json.loads((files("msdp") / "problems" / "climate.json").read_text())
    del doc["steps"][0]["next"]["Good"]["Low"]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(doc))
    with pytest.raises(Exception, match=r"next missing at \(0, Good, Low\)"):
        parse_problem_file(str(broken))
    doc2 = json.loads((files("msdp") / "problems" / "climate.json").read_text())
    doc2["steps"][0]["reward"]["Good"]["Low"]["Good"] = "1/0"
    broken2 = tmp_path / "broken2.json"
    broken2.write_text(json.dumps(doc2))
    with pytest.raises(ProblemFileError, match="/steps/0/reward/Good/Low/Good"):
        parse_problem_file(str(broken2))
