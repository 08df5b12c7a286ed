import json

import pytest

from conftest import fixture_path
from netmap.main import main

EUCLIDEAN_DEG2 = "matrix: 2 0 0 1\narc: 0 0 -> 0 0\narc: 2 0 -> 2 0\narc: 0 1 -> 0 1\narc: 2 1 -> 2 1\n"


def run(capsys, *argv):
    exit_code = main(list(argv))
    captured = capsys.readouterr()
    return exit_code, captured.out, captured.err


def test_ed_from_file(capsys):
    exit_code, out, _ = run(capsys, "ed", fixture_path("example_deg10.net"))
    assert exit_code == 0
    assert out.strip() == "(10,1)"


def test_ed_from_matrix_is_row_major(capsys):
    exit_code, out, _ = run(capsys, "ed", "--matrix", "2", "0", "-1", "5")
    assert exit_code == 0
    assert out.strip() == "(10,1)"


def test_ed_without_input(capsys):
    exit_code, _, err = run(capsys, "ed")
    assert exit_code == 1
    assert err.startswith("error[usage]:")


def test_snf_json(capsys):
    exit_code, out, _ = run(capsys, "snf", "--matrix", "6", "0", "0", "1", "--format", "json")
    assert exit_code == 0
    assert json.loads(out) == {"D": [[6, 0], [0, 1]], "Q": [[1, 0], [0, 1]], "R": [[1, 0], [0, 1]]}


@pytest.mark.parametrize("degree, bound", [("2", "96"), ("3", "288"), ("10", "11520")])
def test_index_bound(capsys, degree, bound):
    exit_code, out, _ = run(capsys, "index-bound", "--degree", degree)
    assert exit_code == 0
    assert out.strip() == bound


def test_index_bound_rejects_degree_one(capsys):
    exit_code, _, err = run(capsys, "index-bound", "--degree", "1")
    assert exit_code == 1
    assert "degree must be at least 2" in err


def test_hurwitz_invariant(capsys):
    exit_code, out, _ = run(capsys, "hurwitz-invariant", fixture_path("deg6_shear.net"))
    assert exit_code == 0
    assert out.startswith("(6,1) {")


def test_hurwitz_equal_prints_witness(capsys):
    exit_code, out, _ = run(
        capsys, "hurwitz-equal", fixture_path("deg6_shear.net"), fixture_path("deg6_shear.net"), "--format", "json"
    )
    assert exit_code == 0
    report = json.loads(out)
    assert report["equivalent"] is True
    assert report["witness"]["matrix"][0][0] * report["witness"]["matrix"][1][1] - (
        report["witness"]["matrix"][0][1] * report["witness"]["matrix"][1][0]
    ) == 1


def test_hurwitz_equal_with_different_divisors(capsys):
    exit_code, out, _ = run(
        capsys, "hurwitz-equal", fixture_path("deg6_shear.net"), fixture_path("example_deg10.net")
    )
    assert exit_code == 0
    assert out.strip() == "false"


def test_count_hurwitz(capsys):
    exit_code, out, _ = run(capsys, "count-hurwitz", "--degree", "4", "--format", "json")
    assert exit_code == 0
    report = json.loads(out)
    assert report["count"] == 32
    assert report["by_divisors"] == {"(4,1)": 24, "(2,2)": 8}


def test_enumerate_hurwitz_text(capsys):
    exit_code, out, _ = run(capsys, "enumerate-hurwitz", "--m", "2", "--n", "1")
    assert exit_code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "3 classes for (2,1)"
    assert len(lines) == 4


def test_enumeration_cap(capsys):
    exit_code, _, err = run(capsys, "count-hurwitz", "--degree", "13")
    assert exit_code == 1
    assert "--allow-large" in err


def test_deck(capsys):
    exit_code, out, _ = run(capsys, "deck", fixture_path("deg6_shear.net"))
    assert exit_code == 0
    assert out.startswith("order ")


def test_liftable_text(capsys):
    exit_code, out, _ = run(capsys, "liftable", fixture_path("deg6_shear.net"), "--matrix", "1", "0", "2", "1")
    assert exit_code == 0
    lines = out.strip().splitlines()
    assert lines[:3] == ["liftable: true", "type: parabolic", "pure liftable: true"]
    assert all(line.startswith("lift: ") for line in lines[3:])


def test_not_liftable_is_not_an_error(capsys):
    exit_code, out, _ = run(capsys, "liftable", fixture_path("deg6_shear.net"), "--matrix", "1", "2", "0", "1")
    assert exit_code == 0
    assert out.startswith("liftable: false")


def test_vme_with_slope_file(capsys):
    exit_code, out, _ = run(
        capsys,
        "vme",
        fixture_path("deg6_shear.net"),
        "--matrix", "1", "0", "2", "1",
        "--slopes", fixture_path("deg6_shear_slopes.txt"),
    )
    assert exit_code == 0
    assert out.strip().splitlines() == [
        "linear part: ±[[3,-2],[2,-1]]",
        "sigma: z -> (-z-2)/(2z+3)",
        "value: [[3,-2],[2,-1]] + (0,0)",
    ]


def test_vme_of_non_liftable_element(capsys):
    exit_code, _, err = run(
        capsys,
        "vme",
        fixture_path("deg6_shear.net"),
        "--matrix", "1", "2", "0", "1",
        "--slopes", fixture_path("deg6_shear_slopes.txt"),
    )
    assert exit_code == 4
    assert err.startswith("error[infeasible]:")


def test_vme_needs_slopes_for_non_euclidean_maps(capsys):
    exit_code, _, err = run(capsys, "vme", fixture_path("deg6_shear.net"), "--matrix", "1", "0", "2", "1")
    assert exit_code == 1
    assert "--slopes" in err


def test_vme_on_euclidean_map_without_slopes(tmp_path, capsys):
    path = tmp_path / "euclidean.net"
    path.write_text(EUCLIDEAN_DEG2, encoding="utf-8")
    exit_code, out, _ = run(capsys, "vme", str(path), "--matrix", "1", "0", "2", "1")
    assert exit_code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "linear part: ±[[1,0],[4,1]]"
    assert lines[2:] == ["value: [[1,0],[4,1]] + (0,0)", "value: [[1,0],[4,1]] + (1,0)"]


def test_portrait_text_and_json(capsys):
    exit_code, out, _ = run(capsys, "portrait", fixture_path("example_deg10.net"))
    assert exit_code == 0
    assert out.splitlines()[0] == "degree 10"

    exit_code, out, _ = run(capsys, "portrait", fixture_path("example_deg10.net"), "--format", "json")
    report = json.loads(out)
    assert report["anonymous_critical"] == 16
    assert "dot" not in report


def test_portrait_dot(capsys):
    exit_code, out, _ = run(capsys, "portrait", fixture_path("example_deg10.net"), "--format", "dot")
    assert exit_code == 0
    assert out.startswith("digraph portrait {")


def test_dot_is_only_for_portraits(capsys):
    exit_code, _, err = run(capsys, "ed", fixture_path("example_deg10.net"), "--format", "dot")
    assert exit_code == 1
    assert "portrait" in err


def test_from_portrait_default_and_choices(capsys):
    exit_code, out, _ = run(capsys, "from-portrait", fixture_path("example_deg4_portrait.json"), "--m", "4", "--n", "1")
    assert exit_code == 0
    assert out.splitlines()[:2] == ["matrix: 4 0 1 1", "translation: 4 0"]

    exit_code, out, _ = run(
        capsys,
        "from-portrait",
        fixture_path("example_deg4_portrait.json"),
        "--m", "4", "--n", "1",
        "--choices", fixture_path("example_deg4_choices.json"),
    )
    assert exit_code == 0
    assert out.splitlines()[:2] == ["matrix: 4 0 1 1", "translation: 4 0"]


def test_from_portrait_with_builtin_choices(capsys):
    exit_code, out, _ = run(
        capsys, "from-portrait", fixture_path("example_deg4_portrait.json"), "--m", "4", "--n", "1", "--paper-choices"
    )
    assert exit_code == 0
    assert out.splitlines()[:2] == ["matrix: 4 0 1 1", "translation: 4 0"]


def test_from_portrait_choice_flags_are_exclusive(capsys):
    exit_code, _, err = run(
        capsys,
        "from-portrait",
        fixture_path("example_deg4_portrait.json"),
        "--m", "4", "--n", "1",
        "--paper-choices",
        "--choices", fixture_path("example_deg4_choices.json"),
    )
    assert exit_code == 1
    assert err.startswith("error[usage]:")


def test_from_portrait_with_wrong_divisors(capsys):
    exit_code, _, err = run(capsys, "from-portrait", fixture_path("example_deg4_portrait.json"), "--m", "2", "--n", "2")
    assert exit_code == 4
    assert "not realizable" in err


def test_realizable_report(capsys):
    exit_code, out, _ = run(
        capsys, "realizable", fixture_path("example_deg4_portrait.json"), "--m", "4", "--n", "1"
    )
    assert exit_code == 0
    assert out.strip().splitlines() == [
        "degree: 4",
        "mod 2 divisors: (0,1)",
        "exceptional condition: ok",
        "branch data: {2,2}, {2,2}, {2,1,1}, {2,1,1} (type 2)",
        "realizable with given divisors: true",
    ]


def test_realizable_reports_diagnostics(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"postcritical": [{"id": "a", "weight": 2, "to": "a"}]}), encoding="utf-8")
    exit_code, out, _ = run(capsys, "realizable", str(path))
    assert exit_code == 0
    assert out.startswith("invalid portrait")


def test_count_portraits(capsys):
    exit_code, out, _ = run(capsys, "count-portraits", "--degree", "3")
    assert exit_code == 0
    assert out.strip() == "94"


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.net"
    path.write_text("matrix: 2 0 0 1\narc 0 0 0 0\n", encoding="utf-8")
    exit_code, _, err = run(capsys, "ed", str(path))
    assert exit_code == 2
    assert err.startswith("error[parse]: line 2:")


def test_domain_error_exit_code(tmp_path, capsys):
    path = tmp_path / "orientation.net"
    path.write_text("matrix: 0 1 1 0\n" + "arc: 0 0 -> 0 0\n" * 4, encoding="utf-8")
    exit_code, _, err = run(capsys, "ed", str(path))
    assert exit_code == 3
    assert err.startswith("error[domain]:")


def test_json_errors(capsys):
    exit_code, _, err = run(capsys, "ed", "missing.net", "--format", "json")
    assert exit_code == 1
    payload = json.loads(err.strip().splitlines()[-1])
    assert payload["error"]["category"] == "usage"
    assert "missing.net" in payload["error"]["message"]


def test_unknown_command(capsys):
    exit_code, _, err = run(capsys, "frobnicate")
    assert exit_code == 1
    assert "error[usage]" in err


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert "0.1.0" in capsys.readouterr().out
