"""Command-line surface: reports, formats, and exit codes."""

import json
import subprocess
import sys

from tabloids.cli import main

TIE_BALLOTS = {
    "n": 3,
    "shape": [1, 1, 1],
    "ballots": [
        {"ranking": [[1], [2], [3]], "count": 2},
        {"ranking": [[3], [1], [2]], "count": 2},
        {"ranking": [[2], [3], [1]], "count": 1},
    ],
}

WORKED_BALLOTS = {
    "n": 3,
    "shape": [1, 1, 1],
    "ballots": [
        {"ranking": [[1], [2], [3]], "count": 3},
        {"ranking": [[1], [3], [2]], "count": 2},
        {"ranking": [[2], [1], [3]], "count": 4},
        {"ranking": [[2], [3], [1]], "count": 2},
        {"ranking": [[3], [2], [1]], "count": 3},
    ],
}

GLOVE_GAME = {"n": 3, "v": {"3": "1", "5": "1", "7": "1"}}


def write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


def test_tally_borda_worked_example(tmp_path, capsys):
    ballots = write_json(tmp_path / "b.json", WORKED_BALLOTS)
    report = run_json(capsys, "tally", ballots, "--weights-preset", "borda")
    assert report["scores"] == {"1": 14, "2": 18, "3": 10}
    assert report["winners"] == [2]
    assert report["tiers"] == [[2], [1], [3]]
    assert report["voter_total"] == 14
    assert report["n"] == 3


def test_tally_empty_ballots(tmp_path, capsys):
    ballots = write_json(tmp_path / "b.json", {"n": 3, "shape": [1, 1, 1], "ballots": []})
    report = run_json(capsys, "tally", ballots)
    assert report["scores"] == {"1": 0, "2": 0, "3": 0}
    assert report["winners"] == [1, 2, 3]
    assert report["tiers"] == [[1, 2, 3]]


def test_tally_plurality_tie_profile(tmp_path, capsys):
    ballots = write_json(tmp_path / "b.json", TIE_BALLOTS)
    report = run_json(capsys, "tally", ballots, "--weights-preset", "plurality")
    assert report["scores"] == {"1": 2, "2": 1, "3": 2}
    assert report["winners"] == [1, 3]


def test_tally_csv_ballots_and_weights_file(tmp_path, capsys):
    csv_path = tmp_path / "b.csv"
    csv_path.write_text("1>2>3,2\n3>1>2,2\n2>3>1,1\n", encoding="utf-8")
    weights = write_json(tmp_path / "w.json", {"weights": ["1", "1/2", "0"]})
    report = run_json(capsys, "tally", str(csv_path), "--weights", weights)
    assert report["scores"] == {"1": 3, "2": 2, "3": "5/2"}


def test_kemeny_tie(tmp_path, capsys):
    ballots = write_json(tmp_path / "b.json", TIE_BALLOTS)
    report = run_json(capsys, "kemeny", ballots)
    assert report["winners"] == ["1>2>3", "3>1>2"]
    assert report["scores"]["1>2>3"] == 9
    assert report["scores"]["2>1>3"] == 6
    assert report["voter_total"] == 5


def test_family_zero_gamma_universal_tie(tmp_path, capsys):
    ballots = write_json(tmp_path / "b.json", TIE_BALLOTS)
    report = run_json(
        capsys, "family", ballots, "--gamma0", "0", "--gamma1", "0", "--gamma2", "0"
    )
    assert len(report["tiers"]) == 1
    assert len(report["tiers"][0]) == 6


def test_family_at_kemeny_spectrum_matches_kemeny(tmp_path, capsys):
    ballots = write_json(tmp_path / "b.json", TIE_BALLOTS)
    kemeny_report = run_json(capsys, "kemeny", ballots)
    family_report = run_json(
        capsys, "family", ballots, "--gamma0", "9", "--gamma1", "4", "--gamma2", "1"
    )
    shared = ("n", "voter_total", "scores", "winners", "tiers")
    kemeny_payload = json.dumps({k: kemeny_report[k] for k in shared}, sort_keys=True)
    family_payload = json.dumps({k: family_report[k] for k in shared}, sort_keys=True)
    assert kemeny_payload == family_payload


def test_decompose_constant_profile(tmp_path, capsys):
    ballots = write_json(
        tmp_path / "b.json",
        {
            "n": 3,
            "shape": [1, 1, 1],
            "ballots": [
                {"ranking": [[a], [b], [c]], "count": 2}
                for a, b, c in (
                    (1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)
                )
            ],
        },
    )
    report = run_json(capsys, "decompose", ballots)
    assert report["norm2"]["eigen1"] == 0
    assert report["norm2"]["eigen2"] == 0
    assert report["norm2"]["residual"] == 0
    assert report["components"]["eigen0"]["values"] == {str(r): 2 for r in range(6)}


def test_game_solve_shapley(tmp_path, capsys):
    game = write_json(tmp_path / "g.json", GLOVE_GAME)
    report = run_json(capsys, "game-solve", "--game", game)
    assert report["payoffs"] == {"1": "2/3", "2": "1/6", "3": "1/6"}
    assert report["payoff_total"] == 1
    assert report["grand_value"] == 1
    assert report["concept"] == "shapley"


def test_game_solve_with_marginal_file(tmp_path, capsys):
    game = write_json(tmp_path / "g.json", GLOVE_GAME)
    marginal = write_json(tmp_path / "m.json", {"m": ["1/3", "1/6", "1/3"]})
    report = run_json(capsys, "game-solve", "--game", game, "--marginal", marginal)
    assert report["payoffs"] == {"1": "2/3", "2": "1/6", "3": "1/6"}


def test_game_analyze_shapley(tmp_path, capsys):
    coeffs = write_json(tmp_path / "c.json", {"c0": ["0", "0", "1"], "c1": ["1/2", "1/2"]})
    report = run_json(capsys, "game-analyze", "--coeffs", coeffs)
    assert report["efficient"] is True
    assert report["self_dual"] is True
    assert report["marginal"]["exact"] is True
    assert report["marginal"]["m"] == ["1/3", "1/6", "1/3"]


def test_game_analyze_non_marginal(tmp_path, capsys):
    coeffs = write_json(tmp_path / "c.json", {"c0": ["1", "0", "0"], "c1": ["1", "0"]})
    report = run_json(capsys, "game-analyze", "--coeffs", coeffs)
    assert report["efficient"] is False


def test_game_decompose(tmp_path, capsys):
    game = write_json(tmp_path / "g.json", GLOVE_GAME)
    report = run_json(capsys, "game-decompose", "--game", game)
    assert set(report["levels"]) == {"1", "2", "3"}
    for level in report["levels"].values():
        assert level["norm2"]["kernel"] == 0  # n=3 has no kernel at any level


def test_construct_profile_roundtrip(tmp_path, capsys):
    weights = write_json(tmp_path / "w.json", {"weights": ["2", "1", "0"]})
    target = write_json(
        tmp_path / "t.json", {"shape": [1, 2], "values": {"0": "1", "2": "-1"}}
    )
    report = run_json(
        capsys, "construct-profile", "--weights", weights, "--target", target
    )
    assert report["affine_dimension"] == 4
    assert report["scale"] == 1


def test_construct_profile_integer_infeasible(tmp_path, capsys):
    weights = write_json(tmp_path / "w.json", {"weights": ["2", "1", "0"]})
    target = write_json(
        tmp_path / "t.json", {"shape": [1, 2], "values": {"0": "-1", "2": "1"}}
    )
    code, _ = run(
        capsys,
        "construct-profile",
        "--weights",
        weights,
        "--target",
        target,
        "--as-integer-profile",
        "--shift-bound",
        "0",
    )
    assert code == 4


def test_exit_code_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    code, _ = run(capsys, "kemeny", str(bad))
    assert code == 2
    code, _ = run(capsys, "kemeny", str(tmp_path / "missing.json"))
    assert code == 2
    code, _ = run(capsys, "game-analyze")
    assert code == 2


def test_exit_code_shape_mismatch(tmp_path, capsys):
    ballots = write_json(tmp_path / "b.json", TIE_BALLOTS)
    weights = write_json(tmp_path / "w.json", {"weights": ["3", "2", "1", "0"]})
    code, _ = run(capsys, "tally", ballots, "--weights", weights)
    assert code == 3


def test_exit_code_capacity(tmp_path, capsys):
    n = 11
    ballots = write_json(
        tmp_path / "b.json",
        {
            "n": n,
            "shape": [1] * n,
            "ballots": [{"ranking": [[i] for i in range(1, n + 1)], "count": 1}],
        },
    )
    code, _ = run(capsys, "kemeny", ballots)
    assert code == 5


def test_usage_error_exit_code(capsys):
    assert main(["no-such-command"]) == 2
    assert main([]) == 2


def test_output_file_and_determinism(tmp_path, capsys):
    ballots = write_json(tmp_path / "b.json", TIE_BALLOTS)
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["kemeny", ballots, "--output", str(out1), "--seed", "7"]) == 0
    assert main(["kemeny", ballots, "--output", str(out2), "--seed", "7"]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert json.loads(out1.read_text())["seed"] == 7


def test_csv_and_pretty_formats(tmp_path, capsys):
    ballots = write_json(tmp_path / "b.json", WORKED_BALLOTS)
    code, out = run(capsys, "tally", ballots, "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "candidate,score"
    assert "2,18" in out.splitlines()
    code, out = run(capsys, "tally", ballots, "--format", "pretty")
    assert code == 0
    assert "winners: [2]" in out


def test_approx_flag_labels_floats(tmp_path, capsys):
    csv_path = tmp_path / "b.csv"
    csv_path.write_text("1>2>3,1\n", encoding="utf-8")
    weights = write_json(tmp_path / "w.json", {"weights": ["1", "1/3", "0"]})
    report = run_json(capsys, "tally", str(csv_path), "--weights", weights)
    assert "scores_approx" not in report
    report = run_json(capsys, "tally", str(csv_path), "--weights", weights, "--approx")
    assert report["scores_approx"]["2"] == "0.333333333333"
    assert report["scores"]["2"] == "1/3"


def test_console_entry_point(tmp_path):
    ballots = write_json(tmp_path / "b.json", TIE_BALLOTS)
    proc = subprocess.run(
        [sys.executable, "-m", "tabloids", "kemeny", ballots],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["winners"] == ["1>2>3", "3>1>2"]
