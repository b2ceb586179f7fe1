"""CLI adapters: output equality with the library, exit codes, JSON."""

from __future__ import annotations

import json

import pytest

from dpda import construct_grid, construct_jcm, serialize_dpda
from dpda.cli import main

from golden import P4_TEXT, Q_LIFTED_P4_TEXT


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_even_q2_prints_reference(capsys):
    code, out, _ = run(capsys, "construct", "--family", "even", "--q", "2")
    assert code == 0
    assert out == P4_TEXT


def test_construct_with_lift(capsys):
    code, out, _ = run(capsys, "construct", "--family", "even", "--q", "2",
                       "--lift", "2")
    assert code == 0
    assert out == Q_LIFTED_P4_TEXT


def test_construct_jcm_json(capsys):
    code, out, _ = run(capsys, "construct", "--family", "jcm",
                       "--k", "4", "--t", "2", "--json")
    assert code == 0
    j = json.loads(out)
    assert (j["k"], j["f"], j["z"], j["s"]) == (4, 12, 6, 12)


def test_construct_matches_library_byte_for_byte(capsys):
    code, out, _ = run(capsys, "construct", "--family", "grid", "--q", "3")
    assert code == 0
    assert out == serialize_dpda(construct_grid(3))


def test_construct_to_file(tmp_path, capsys):
    target = tmp_path / "p4.dpda"
    code, out, _ = run(capsys, "construct", "--family", "even", "--q", "2",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == P4_TEXT


def test_construct_missing_params_is_usage_error(capsys):
    code, _, err = run(capsys, "construct", "--family", "jcm")
    assert code == 2
    assert "requires" in err


def test_validate_ok(tmp_path, capsys):
    f = tmp_path / "p4.dpda"
    f.write_text(P4_TEXT)
    code, out, _ = run(capsys, "validate", str(f), "--optimal")
    assert code == 0
    assert "verdict: valid" in out


def test_validate_json(tmp_path, capsys):
    f = tmp_path / "p4.dpda"
    f.write_text(P4_TEXT)
    code, out, _ = run(capsys, "validate", str(f), "--optimal", "--json")
    assert code == 0
    j = json.loads(out)
    assert j["validation"]["valid"] is True
    assert j["rate_optimality"]["rate_is_minimal"] is True
    assert j["broadcast_counts"] == [1, 1, 1, 1]


def test_validate_detects_invalid(tmp_path, capsys):
    f = tmp_path / "bad.dpda"
    f.write_text(P4_TEXT.replace("S=4", "S=5"))
    code, out, _ = run(capsys, "validate", str(f))
    assert code == 1
    assert "c2: FAIL" in out


def test_validate_optimal_fails_on_suboptimal(tmp_path, capsys):
    f = tmp_path / "jcm.dpda"
    f.write_text(serialize_dpda(construct_jcm(4, 2)))
    # valid and optimal
    assert run(capsys, "validate", str(f), "--optimal")[0] == 0
    # a valid but rate-suboptimal array: split one slot of the jcm array
    text = serialize_dpda(construct_jcm(4, 2)).replace("S=12", "S=13")
    text = text.replace("* 0^0 * 6^0", "* 12^0 * 6^0")
    f.write_text(text)
    assert run(capsys, "validate", str(f))[0] == 0
    assert run(capsys, "validate", str(f), "--optimal")[0] == 1


def test_validate_malformed_file_is_input_error(tmp_path, capsys):
    f = tmp_path / "junk.dpda"
    f.write_text("not an array\n")
    code, _, err = run(capsys, "validate", str(f))
    assert code == 2
    assert "error:" in err


def test_validate_missing_file_is_io_error(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/x.dpda")
    assert code == 2


def test_bounds_case(capsys):
    code, out, _ = run(capsys, "bounds", "--k", "6", "--case", "2/K", "--json")
    assert code == 0
    j = json.loads(out)
    assert j["f_bound"] == 9
    assert j["rate_bound"] == "2"


def test_bounds_from_file(tmp_path, capsys):
    f = tmp_path / "p4.dpda"
    f.write_text(P4_TEXT)
    code, out, _ = run(capsys, "bounds", "--from", str(f), "--json")
    assert code == 0
    j = json.loads(out)
    assert j["meets_rate_bound"] is True and j["meets_f_bound"] is True


def test_bounds_text_table(capsys):
    code, out, _ = run(capsys, "bounds", "--k", "6", "--case", "2/K")
    assert code == 0
    assert "f_bound" in out and "9" in out


def test_simulate_demand(tmp_path, capsys):
    f = tmp_path / "q.dpda"
    f.write_text(Q_LIFTED_P4_TEXT)
    code, out, _ = run(capsys, "simulate", str(f), "--files", "4", "--blocks", "3",
                       "--demand", "0,1,2,3;0,1,0,1", "--json")
    assert code == 0
    j = json.loads(out)
    assert j["success"] is True
    assert j["packets_sent"] == 8
    assert j["rate"] == "1"


def test_simulate_trials(tmp_path, capsys):
    f = tmp_path / "p4.dpda"
    f.write_text(P4_TEXT)
    code, out, _ = run(capsys, "simulate", str(f), "--files", "4", "--blocks", "2",
                       "--trials", "20", "--seed", "5", "--json")
    assert code == 0
    assert json.loads(out)["trials"] == 20


def test_simulate_bad_demand_literal(tmp_path, capsys):
    f = tmp_path / "p4.dpda"
    f.write_text(P4_TEXT)
    code, _, err = run(capsys, "simulate", str(f), "--files", "4", "--blocks", "2",
                       "--demand", "0,1;0,1")
    assert code == 2


def test_search_finds_minimum(capsys):
    code, out, _ = run(capsys, "search", "--k", "4", "--f", "4", "--z", "2",
                       "--max-s", "8", "--json")
    assert code == 0
    j = json.loads(out)
    assert j["minimal_s"] == 4
    assert j["witness"].startswith("DPDA K=4 L'=1 F=4 Z=2 S=4")


def test_search_infeasible_exit_code(capsys):
    code, out, _ = run(capsys, "search", "--k", "3", "--f", "3", "--z", "1",
                       "--max-s", "5")
    assert code == 1
    assert "no array" in out


def test_search_guard_exit_code(capsys):
    code, _, err = run(capsys, "search", "--k", "6", "--f", "9", "--z", "3")
    assert code == 2
    assert "guard" in err


def test_compare(tmp_path, capsys):
    f = tmp_path / "g3.dpda"
    f.write_text(serialize_dpda(construct_grid(3)))
    code, out, _ = run(capsys, "compare", str(f), "--json")
    assert code == 0
    j = json.loads(out)
    assert (j["f_ours"], j["f_jcm"], j["ratio"]) == (9, 30, "3/10")


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_byte_identical_reruns(capsys):
    a = run(capsys, "construct", "--family", "odd", "--q", "2")
    b = run(capsys, "construct", "--family", "odd", "--q", "2")
    assert a == b
