import json

import pytest

from helpers import reflection_example, stabilized_unknot, trefoil
from linkchi import invariants, seifert
from linkchi.cli import main
from linkchi.ncalg import NCSeries


@pytest.fixture
def trefoil_file(tmp_path):
    path = tmp_path / "trefoil.json"
    path.write_text(seifert.serialize(trefoil()))
    return str(path)


@pytest.fixture
def unknot_file(tmp_path):
    path = tmp_path / "unknot.json"
    path.write_text(seifert.serialize(stabilized_unknot()))
    return str(path)


@pytest.fixture
def refl_file(tmp_path):
    path = tmp_path / "refl.json"
    path.write_text(seifert.serialize(reflection_example()))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- validate ---------------------------------------------------------------


def test_validate_ok(capsys, trefoil_file):
    code, out, _ = run(capsys, ["validate", trefoil_file])
    assert code == 0
    assert out.strip() == "ok"


def test_validate_reports_odd_block(capsys, tmp_path):
    path = tmp_path / "odd.json"
    path.write_text(
        json.dumps(
            {
                "components": 1,
                "block_sizes": [3],
                "entries": [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
            }
        )
    )
    code, out, _ = run(capsys, ["validate", str(path)])
    assert code == 1
    assert "component 1" in out and "odd" in out


def test_validate_malformed_file_exits_2(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ nope")
    code, _, err = run(capsys, ["validate", str(path)])
    assert code == 2
    assert "line" in err


def test_missing_file_exits_2(capsys, tmp_path):
    code, _, err = run(capsys, ["validate", str(tmp_path / "absent.json")])
    assert code == 2
    assert "cannot read" in err


# -- chi ----------------------------------------------------------------------


def test_chi_delta_golden_lines(capsys, trefoil_file):
    code, out, _ = run(capsys, ["chi", trefoil_file, "--f", "delta", "--degree", "4"])
    assert code == 0
    assert out.splitlines() == [
        "1 * x1.x1",
        "-1 * x1.x1.x1",
        "1/2 * x1.x1.x1.x1",
    ]


def test_chi_phi_on_stabilized_unknot_is_empty(capsys, unknot_file):
    code, out, _ = run(capsys, ["chi", unknot_file, "--f", "phi", "--degree", "5"])
    assert code == 0
    assert out == ""


def test_chi_structured_monomial_on_reflection_matrix(capsys, refl_file):
    code, out, _ = run(
        capsys,
        ["chi", refl_file, "--f", "mono:x.z.x.z.x.z.x", "--degree", "4", "--json"],
    )
    assert code == 0
    triples = [tuple(t[:2]) + (tuple(t[2]),) for t in json.loads(out)]
    assert (2, 1, (1, 2, 3, 1)) in triples
    assert (-2, 1, (1, 3, 2, 1)) in triples


def test_chi_phi_signed_values_on_reflection_matrix(capsys, refl_file):
    # with phi's alternating signs the degree-4 coefficients flip
    code, out, _ = run(
        capsys, ["chi", refl_file, "--f", "phi", "--degree", "4", "--json"]
    )
    assert code == 0
    triples = [tuple(t[:2]) + (tuple(t[2]),) for t in json.loads(out)]
    assert (-2, 1, (1, 2, 3, 1)) in triples
    assert (2, 1, (1, 3, 2, 1)) in triples


def test_chi_list_spec(capsys, tmp_path, trefoil_file):
    listing = tmp_path / "series.txt"
    listing.write_text("# a two-term series\n1 x.z\n-1/2 x.z.x.z\n")
    code, out, _ = run(
        capsys, ["chi", trefoil_file, "--f", "list:%s" % listing, "--degree", "2"]
    )
    assert code == 0
    code2, out2, _ = run(capsys, ["chi", trefoil_file, "--f", "delta", "--degree", "2"])
    assert out == out2


def test_chi_bad_f_spec_exits_2(capsys, trefoil_file):
    code, _, err = run(capsys, ["chi", trefoil_file, "--f", "gamma"])
    assert code == 2
    assert "unknown f spec" in err


def test_chi_invalid_matrix_exits_1(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {"components": 1, "block_sizes": [2], "entries": [[0, 0], [0, 0]]}
        )
    )
    code, out, _ = run(capsys, ["chi", str(path), "--f", "delta"])
    assert code == 1
    assert "det" in out


# -- torsion --------------------------------------------------------------------


def test_torsion_output(capsys, trefoil_file):
    code, out, _ = run(capsys, ["torsion", trefoil_file, "--degree", "4"])
    assert code == 0
    assert out.splitlines() == ["1 * 1", "1 * x1^2", "-1 * x1^3", "1 * x1^4"]


def test_torsion_json(capsys, trefoil_file):
    code, out, _ = run(capsys, ["torsion", trefoil_file, "--degree", "3", "--json"])
    assert code == 0
    assert json.loads(out) == [[1, 1, [0]], [1, 1, [2]], [-1, 1, [3]]]


# -- move -----------------------------------------------------------------------


def test_move_count_zero_echoes_canonically(capsys, trefoil_file):
    code, out, _ = run(capsys, ["move", trefoil_file, "--seed", "9", "--count", "0"])
    assert code == 0
    assert out == seifert.serialize(trefoil())


def test_move_output_validates_and_preserves_chi(capsys, trefoil_file):
    code, out, _ = run(capsys, ["move", trefoil_file, "--seed", "4", "--count", "3"])
    assert code == 0
    moved = seifert.parse(out)
    assert seifert.validate(moved) == []
    assert invariants.chi_delta(moved, 5) == invariants.chi_delta(trefoil(), 5)


def test_move_deterministic(capsys, trefoil_file):
    _, first, _ = run(capsys, ["move", trefoil_file, "--seed", "21", "--count", "4"])
    _, second, _ = run(capsys, ["move", trefoil_file, "--seed", "21", "--count", "4"])
    assert first == second


def test_chi_deterministic(capsys, refl_file):
    _, first, _ = run(capsys, ["chi", refl_file, "--f", "phi", "--degree", "4"])
    _, second, _ = run(capsys, ["chi", refl_file, "--f", "phi", "--degree", "4"])
    assert first == second


# -- selfcheck --------------------------------------------------------------------


def test_selfcheck_green(capsys):
    code, out, _ = run(capsys, ["selfcheck", "--seed", "2", "--degree", "3"])
    assert code == 0
    assert "all passed" in out
    suite_lines = [l for l in out.splitlines() if " checks " in l]
    assert len(suite_lines) >= 8


def test_selfcheck_detects_injected_fault(capsys, monkeypatch):
    real = invariants.tr_monomial

    def corrupted(word, A, degree):
        out = real(word, A, degree)
        bump = NCSeries(out.n, out.trunc, {(1,) * min(2, out.trunc): 1})
        return out + bump

    monkeypatch.setattr(invariants, "tr_monomial", corrupted)
    code, out, _ = run(capsys, ["selfcheck", "--seed", "2", "--degree", "3"])
    assert code == 1
    assert "FAIL" in out
