"""CLI subcommands, exit codes and JSON round-trips."""

import json

import pytest

from khtorsion.cli import main
from khtorsion.knotdata import HOPF_2


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table_text(capsys):
    code, out, _ = run(capsys, "table", "--pretzel", "-1,3")
    assert code == 0
    assert "j\\i" in out


def test_table_json_roundtrip(capsys):
    code, out, _ = run(capsys, "table", "--pretzel", "-1,3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload == json.loads(json.dumps(payload))
    assert payload["schema"] == 1
    assert payload["offsets"] == {"p": 3, "n": 1}
    assert all(not entry["torsion"] for entry in payload["table"].values())


def test_table_pd_inline_and_mirror(capsys):
    code, out, _ = run(capsys, "table", "--pd-inline", HOPF_2, "--mirror",
                       "--json")
    assert code == 0
    json.loads(out)


def test_table_size_guard_exit_code(capsys):
    entries = ",".join(["1"] * 19)
    code, _, err = run(capsys, "table", "--pretzel", entries)
    assert code == 4
    assert "guard" in err


def test_table_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "table", "--pd-inline", "X(1,2,3)")
    assert code == 2


def test_certify_monocircular(capsys):
    code, out, _ = run(capsys, "certify", "--monocircular", "3,6",
                       "--mu", "2,2", "--verify-oracle")
    assert code == 0
    assert "(i,j)=(5,7)" in out and "order=2" in out


def test_certify_rejection_exit_code(capsys):
    code, _, err = run(capsys, "certify", "--pretzel", "-1,3", "--mu", "2,2")
    assert code == 3
    assert "height-1" in err


def test_certify_all_even_braid(capsys):
    code, out, _ = run(capsys, "certify", "--braid3", "7,2", "--all-even",
                       "--json")
    assert code == 0
    payload = json.loads(out)
    mus = [tuple(c["mu"]) for c in payload["certificates"]]
    assert mus == [(2, 2), (4, 2), (6, 2)]
    degrees = [c["degrees"]["i"] for c in payload["certificates"]]
    assert degrees == [5, 7, 9]
    assert degrees == [c["degrees"]["h"] for c in payload["certificates"]]


def test_certify_json_roundtrip(capsys):
    code, out, _ = run(capsys, "certify", "--monocircular", "3,6",
                       "--mu", "2,2", "--json")
    payload = json.loads(out)
    cert = payload["certificates"][0]
    assert cert["schema"] == 1
    assert cert["order"] == 2
    assert payload == json.loads(json.dumps(payload))


def test_grid_text_and_json(capsys):
    code, out, _ = run(capsys, "grid", "10", "15")
    assert code == 0
    assert "0,1,0,2,1,3,2,4,3,5,4,5,5,5,5,4,5,4,4,3,3,2,2,1,1" in out
    code, out, _ = run(capsys, "grid", "3", "6", "--json")
    payload = json.loads(out)
    assert payload["counts"] == [0, 1, 0, 1, 1, 2, 1, 1, 1]


def test_bound_pretzel_with_classes(capsys):
    code, out, _ = run(capsys, "bound", "--pretzel", "5,-3,2,3,-2")
    assert code == 0
    assert "at least 1" in out
    assert "4 distinct classes" in out


def test_bound_braid_json(capsys):
    code, out, _ = run(capsys, "bound", "--braid3", "7,2", "--json")
    payload = json.loads(out)
    assert payload["bound"] == 2 and payload["applicable"]


def test_bound_inapplicable_is_report_not_error(capsys):
    code, out, _ = run(capsys, "bound", "--pretzel", "3,2,-2")
    assert code == 0
    assert "not applicable" in out


def test_bound_rational_includes_existence(capsys):
    code, out, _ = run(capsys, "bound", "--rational", "4,2,6", "--json")
    payload = json.loads(out)
    assert payload["bound"] == 5
    assert payload["torsion_exists"]["exists"] is True


def test_pd_file_input(tmp_path, capsys):
    f = tmp_path / "hopf.pd"
    f.write_text(HOPF_2)
    code, out, _ = run(capsys, "table", "--pd", str(f), "--json")
    assert code == 0
    payload = json.loads(out)
    assert all(not e["torsion"] for e in payload["table"].values())


def test_missing_file_exit_code(capsys):
    code, _, err = run(capsys, "table", "--pd", "/nonexistent.pd")
    assert code == 2


def test_ladder_first_order_flag(capsys):
    code, out, _ = run(capsys, "table", "--pretzel", "-1,3",
                       "--order", "ladder-first", "--json")
    assert code == 0
