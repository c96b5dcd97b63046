"""Golden tests for the command-line interface, run in-process through ``main``."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from posetcoh.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    args = [str(DATA / a) if (DATA / a).exists() else a for a in argv]
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None, err


def test_check_poset(capsys):
    code, data, _ = run_json(capsys, "check", "diamond.json")
    assert code == 0
    assert data == {"kind": "poset", "elements": 4, "covers": 4, "bottom": "0", "top": "1",
                    "degree": 2, "pure": True}


def test_check_non_functorial_file_fails(capsys):
    code, data, _ = run_json(capsys, "check", "badfunctor.json")
    assert code == 1
    assert data["functorial"] is False
    assert data["violations"] == ["0<1: 0<a<1 != 0<b<1"]


def test_check_arrangement(capsys):
    code, data, _ = run_json(capsys, "check", "coord3.json")
    assert code == 0
    assert data == {"kind": "arrangement", "hyperplanes": 3, "flats": 8, "degree": 3}


def test_check_mackey_file(capsys):
    code, data, _ = run_json(capsys, "check", "gamma1_mackey.json")
    assert code == 0
    assert data["kind"] == "mackey" and data["weak_mackey_violations"] == []


def test_shell_finds_ordering(capsys):
    code, data, _ = run_json(capsys, "shell", "diamond.json")
    assert code == 0
    assert data["ok"] and data["chains_checked"] == 5
    assert data["c_sets"]["b<1"] == ["0"]


def test_shell_fixture_c_sets(capsys):
    code, data, _ = run_json(capsys, "shell", "gamma1")
    assert code == 0
    assert {k: sorted(v) for k, v in data["c_sets"].items() if k.endswith("<top") and k.count("<") == 1} == {
        "a,c<top": [], "a,d<top": ["a"], "b,c<top": ["c"], "b,d<top": ["b", "d"], "c,d<top": ["c", "d"]}


def test_shell_rejects_bad_ordering(capsys):
    code, data, _ = run_json(capsys, "shell", "gamma1", "--ordering", "gamma1_reversed.json")
    assert code == 1
    assert data["ok"] is False
    assert data["violations"] == ["CL1 at a,d<top: d comes after non-member a"]


def test_cohomology_and_oracle_agree(capsys):
    code, coh, _ = run_json(capsys, "cohomology", "b3_constant.json")
    assert code == 0 and coh == {"0": 1, "1": 1, "2": 0}
    code, oracle, _ = run_json(capsys, "oracle", "b3_constant.json")
    assert code == 0 and oracle == coh


def test_homology(capsys):
    code, data, _ = run_json(capsys, "homology", "b3_constant_co.json")
    assert code == 0 and data == {"0": 1, "1": 1, "2": 0}
    _, oracle, _ = run_json(capsys, "oracle", "b3_constant_co.json")
    assert oracle == data


def test_cohomology_on_subposet(capsys):
    code, data, _ = run_json(capsys, "cohomology", "b3_constant.json", "--subposet", "{},{1},{2}")
    assert code == 0 and data == {"0": 2, "1": 0}


def test_cohomology_over_finite_field(capsys):
    code, data, _ = run_json(capsys, "cohomology", "b3_constant.json", "--field", "Fp:5")
    assert code == 0 and data == {"0": 1, "1": 1, "2": 0}


def test_variance_mismatch_is_bad_input(capsys):
    code, out, err = run(capsys, "cohomology", "b3_constant_co.json")
    assert code == 2 and out == ""
    assert "contravariant" in err


def test_non_functorial_input_is_bad_input(capsys):
    code, out, err = run(capsys, "cohomology", "badfunctor.json")
    assert code == 2 and out == ""
    assert "not functorial" in err and "0<1" in err


def test_stability_single_degree(capsys):
    code, data, _ = run_json(capsys, "stability", "b3_constant.json", "--degree", "1")
    assert code == 1
    assert data["ok"] is False and data["computed"] == 1
    code, data, _ = run_json(capsys, "stability", "b3_constant.json", "--degree", "2")
    assert code == 0 and data["ok"] and data["computed"] == 0


def test_stability_all_degrees(capsys):
    code, data, _ = run_json(capsys, "stability", "b3_constant.json")
    assert code == 0
    assert data["vanishing_degrees"] == [2]
    assert data["computed"] == {"0": 1, "1": 1, "2": 0}


def test_costability(capsys):
    code, data, _ = run_json(capsys, "costability", "b3_constant_co.json", "--degree", "2")
    assert code == 0 and data["ok"] and data["chains_checked"] == 6 and data["computed"] == 0


def test_mackey_verify(capsys):
    code, data, _ = run_json(capsys, "mackey", "verify", "gamma1_mackey.json")
    assert code == 0 and data == {"weak_mackey": True, "violations": []}


def test_mackey_quasi_unit_by_degree(capsys):
    code, data, _ = run_json(capsys, "mackey", "quasi-unit", "gamma1_mackey.json", "--degree", "1",
                             "--ordering", "gamma1_ordering.json")
    assert code == 1 and data["failing_chains"] == ["a,d<top"]
    code, data, _ = run_json(capsys, "mackey", "quasi-unit", "gamma1_mackey.json", "--degree", "2")
    assert code == 0 and data["quasi_units"] is True


def test_mackey_quasi_unit_on_subposet(capsys):
    code, data, _ = run_json(capsys, "mackey", "quasi-unit", "boolean2-swap", "--subposet", "{},{1}")
    assert code == 0 and data["quasi_unit"] is True


def test_mackey_quasi_unit_needs_a_target(capsys):
    code, _, err = run(capsys, "mackey", "quasi-unit", "boolean2-swap")
    assert code == 2 and "--subposet" in err


def test_mobius(capsys):
    code, data, _ = run_json(capsys, "mobius", "gamma1", "bottom", "top")
    assert code == 0 and data["mobius"] == -2


def test_mobius_unknown_element(capsys):
    code, _, _ = run(capsys, "mobius", "gamma1", "bottom", "nowhere")
    assert code == 2


def test_atomic(capsys):
    code, data, _ = run_json(capsys, "atomic", "boolean-3", "--at", "{1}", "--dim", "2")
    assert code == 0
    assert data["expected"] == data["cohomology"] == data["homology"] == {"0": 0, "1": 2}


def test_atomseq(capsys):
    code, data, _ = run_json(capsys, "atomseq", "coord3_truncated.json", "--atoms", "h1^h2,h1^h3,h2^h3")
    assert code == 0
    assert data["terms"] == {"H_1(P-top)": 0, "atoms": 3, "H_0(P-A)": 6, "H_0(P-top)": 3}
    assert data["alternating_sum"] == 0 and data["short_exact"] is None


def test_arrangement_table(capsys):
    code, data, _ = run_json(capsys, "arrangement", "table", "coord3.json")
    assert code == 0 and data == {"0": [1, 3, 3], "1": [0, 0, 0]}


def test_arrangement_table_layout(capsys):
    code, out, _ = run(capsys, "arrangement", "table", "coord3.json", "--output", "table")
    assert code == 0
    assert out.splitlines() == ["i\\j  0  1  2", "  0  1  3  3", "  1  0  0  0"]


def test_arrangement_formula(capsys):
    code, data, _ = run_json(capsys, "arrangement", "formula", "coord3.json", "1", "1")
    assert code == 0 and data["formula"] == data["computed"] == 0 and data["match"]


def test_arrangement_lattice(capsys):
    code, data, _ = run_json(capsys, "arrangement", "lattice", "coord-arr-3")
    assert code == 0
    assert data["degree"] == 3 and data["ordering_ok"] and data["basis_first_violations"] == []
    assert data["flats"][data["bottom"]]["mobius_to_top"] == -1


def test_arrangement_lattice_emits_poset(capsys):
    code, data, _ = run_json(capsys, "arrangement", "lattice", "coord3.json", "--emit-poset")
    assert code == 0 and len(data["elements"]) == 8


def test_arrangement_needs_arrangement_fixture(capsys):
    code, _, err = run(capsys, "arrangement", "table", "gamma1")
    assert code == 2 and "not an arrangement" in err


def test_fixture_list_show_assert(capsys):
    code, names, _ = run_json(capsys, "fixture", "list")
    assert code == 0 and "gamma1" in names
    code, shown, _ = run_json(capsys, "fixture", "show", "gamma2")
    assert code == 0 and shown["name"] == "gamma2" and "ordering" in shown
    code, report, _ = run_json(capsys, "fixture", "assert", "gamma1")
    assert code == 0 and report["ok"]


@pytest.mark.parametrize("argv", [
    ["fixture", "show", "nope"],
    ["cohomology", "missing-file.json"],
    ["nonsense"],
    ["stability", "b3_constant.json", "--degree", "x"],
])
def test_bad_input_exit_code(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out == ""


def test_table_output(capsys):
    code, out, _ = run(capsys, "oracle", "b3_constant.json", "--output", "table")
    assert code == 0 and out.splitlines() == ["0  1", "1  1", "2  0"]


@pytest.mark.parametrize("argv", [
    ["shell", "gamma1"],
    ["stability", "b3_constant.json"],
    ["arrangement", "lattice", "coord3.json"],
])
def test_output_is_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_module_entry_point_is_byte_identical_across_runs():
    import subprocess
    import sys

    cmd = [sys.executable, "-m", "posetcoh", "shell", "gamma1"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0].startswith(b"{")
