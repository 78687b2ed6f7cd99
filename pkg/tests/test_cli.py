"""End-to-end checks of the command line interface.

All commands run in-process through ``main(argv)`` so the tests can
capture stdout precisely and parse the machine output back.
"""

import json
from fractions import Fraction

import pytest

from prioritaire.cli import main
from prioritaire.surd import parse_rational, parse_surd


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_slope_human(capsys):
    code, out, err = run(capsys, "slope", "--", "-1/4")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "bundle   E(-2/5)"
    assert lines[1] == "dyadic   -1/4"
    assert lines[2] == "slope    -2/5"
    assert "rank     5" in lines[3]


def test_slope_json_reparses(capsys):
    code, out, _ = run(capsys, "slope", "--json", "--", "-1/4")
    assert code == 0
    payload = json.loads(out)
    assert payload["label"] == "E(-2/5)"
    assert (payload["rank"], payload["c1"], payload["c2"]) == (5, -2, 4)
    assert parse_rational(payload["slope"]) == Fraction(-2, 5)
    assert parse_rational(payload["delta"]) == Fraction(12, 25)
    # The exact strings must round-trip through the surd parser.
    hw = parse_surd(payload["x_f"]["exact"])
    left = parse_surd(payload["interval"]["left"]["exact"])
    assert (left + hw).compare(Fraction(-2, 5)) == 0
    # x_f solves x^2 - 3x + 1/r^2 = 0.
    assert (hw * hw - hw * 3 + Fraction(1, 25)).compare(0) == 0


def test_slope_invert(capsys):
    code, out, _ = run(capsys, "slope", "--invert", "--json", "--", "-2/5")
    assert code == 0
    assert json.loads(out)["dyadic"] == "-1/4"


def test_frontier_values(capsys):
    code, out, _ = run(capsys, "frontier", "--json", "--", "-1/3")
    assert code == 0
    payload = json.loads(out)
    assert parse_rational(payload["delta"]["exact"]) == Fraction(5, 9)
    dp = parse_surd(payload["delta_prime"]["exact"])
    assert dp.compare(Fraction(1, 18)) > 0  # 1/18 + sqrt(5)/6 > its rational part
    assert payload["owner"]["label"] == "O(0)"
    assert parse_rational(payload["prioritary_bound"]["exact"]) == Fraction(1, 9)


def test_classify_exit_codes(capsys):
    code, out, _ = run(capsys, "classify", "--json", "--", "2", "-1", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["region"] == "semistable_exceptional"
    assert payload["witness"]["label"] == "E(-1/2)"

    code, out, _ = run(capsys, "classify", "--", "2", "-1", "0")
    assert code == 0
    assert out.splitlines()[0] == "region     no_prioritary"


def test_decompose_json_reverifies(capsys):
    code, out, _ = run(capsys, "decompose", "--json", "--", "8", "-4", "11")
    assert code == 0
    payload = json.loads(out)
    assert payload["region"] == "above_delta_prime"
    # c2 is not additive, but (rank, c1, ch2) is; rebuild ch2 per summand.
    total = [Fraction(0)] * 3
    for s in payload["summands"]:
        m, r, c1, c2 = s["multiplicity"], s["rank"], s["c1"], s["c2"]
        ch2 = Fraction(c1 * c1, 2) - c2
        total[0] += m * r
        total[1] += m * c1
        total[2] += m * ch2
    assert total == [8, -4, Fraction(16, 2) - 11]


def test_decompose_no_prioritary_is_answered(capsys):
    code, out, _ = run(capsys, "decompose", "--json", "--", "2", "-1", "0")
    assert code == 0
    payload = json.loads(out)
    assert payload["region"] == "no_prioritary"
    assert payload["summands"] is None
    assert "message" in payload


def test_bad_rank_is_usage_error(capsys):
    code, _, err = run(capsys, "decompose", "--", "0", "0", "1")
    assert code == 1
    assert "rank" in err


def test_argparse_failure_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["slope"])  # missing positional
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 1


def test_series_left_of_o(capsys):
    code, out, _ = run(capsys, "series", "--json", "0", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["side"] == "left"
    assert [m["rank"] for m in payload["members"]] == [1, 1, 2, 5, 13]
    assert all(m["chi"] == 0 for m in payload["members"])


def test_series_of_qstar(capsys):
    code, out, _ = run(capsys, "series", "--json", "--", "-1/2", "1")
    assert code == 0
    labels = [m["label"] for m in json.loads(out)["members"]]
    assert labels == ["O(-3)", "O(-1)"]


def test_series_bad_window(capsys):
    code, _, err = run(capsys, "series", "--from", "3", "0", "1")
    assert code == 1
    assert "exceeds" in err


def test_tile_csv_shape(capsys):
    code, out, _ = run(capsys, "tile", "--depth", "5", "--format", "csv")
    assert code == 0
    lines = out.split("\r\n")
    assert lines[-1] == ""  # trailing CRLF
    assert lines[0] == "level,index,mu_e,delta_e,mu_f,delta_f,mu_g,delta_g"
    assert len(lines) == 65  # header + 63 rows + trailing empty


def test_tile_deterministic(capsys):
    _, svg1, _ = run(capsys, "tile", "--depth", "3")
    _, svg2, _ = run(capsys, "tile", "--depth", "3")
    assert svg1 == svg2
    assert svg1.startswith("<?xml")
    assert 'viewBox="0 0 1000 700"' in svg1
    _, csv1, _ = run(capsys, "tile", "--depth", "3", "--format", "csv")
    _, csv2, _ = run(capsys, "tile", "--depth", "3", "--format", "csv")
    assert csv1 == csv2


def test_tile_depth_cap(capsys):
    code, _, err = run(capsys, "tile", "--depth", "11")
    assert code == 1
    assert "maximum" in err


def test_tile_writes_file(tmp_path, capsys):
    target = tmp_path / "tiles.csv"
    code, out, _ = run(capsys, "tile", "--depth", "1", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    raw = target.read_bytes()
    assert raw.count(b"\r\n") == 4  # header + 3 rows + final terminator


def test_selfcheck_passes(capsys):
    code, out, _ = run(capsys, "selfcheck", "--depth", "3")
    assert code == 0
    assert all(line.startswith("ok") for line in out.splitlines())
