import copy

import mpmath
import pytest

from mixed_tate import hodge
from mixed_tate.periods import PathSpec, li

GRID = [(k, a) for k in range(1, 4) for a in ("1/4", "1/2", "3/4")]


def test_k1_matrix_at_one_half():
    P = hodge.period_matrix_psi(1, "1/2")
    with mpmath.workprec(160):
        assert P[0, 0] == 1 and P[0, 1] == 0
        assert abs(P[1, 0] + mpmath.log(2)) < 1e-30
        assert abs(P[1, 1] - 2j * mpmath.pi) < 1e-30


def test_k2_matrix_at_one_half():
    P = hodge.period_matrix_psi(2, "1/2")
    tpi = 2j * mpmath.pi
    want = [[1, 0, 0], [-mpmath.log(2), tpi, 0], [-li(2, "1/2"), tpi * mpmath.log(0.5), tpi ** 2]]
    for i in range(3):
        for j in range(3):
            assert abs(P[i, j] - want[i][j]) < 1e-14


@pytest.mark.parametrize("k,a", GRID)
def test_psi_matches_closed_form(k, a):
    P = hodge.period_matrix_psi(k, a)
    assert P.max_diff(hodge.expected_matrix(k, a)) < 1e-10
    assert hodge.check_mths(P).ok


@pytest.mark.parametrize("k,a", GRID + [(4, "1/2")])
def test_psi_equals_phi(k, a):
    rep = hodge.compare(k, a)
    assert rep.ok and rep.max_diff < 1e-10 and rep.phi_cocycles


def test_weights_and_metadata():
    P = hodge.period_matrix_psi(3, "1/4")
    assert P.weights == [0, -2, -4, -6]
    doc = P.to_document()
    assert doc["betti_basis"] == ["Z_3", "L_1", "L_2", "L_3"]
    assert doc["derham_basis"] == ["e0", "e-1", "e-2", "e-3"]
    assert len(doc["entries"]) == 4 and all(len(r) == 4 for r in doc["entries"])


def test_mths_detects_perturbed_diagonal():
    P = copy.deepcopy(hodge.period_matrix_psi(2, "1/2"))
    P.entries[1][1] += mpmath.mpf("1e-3")
    rep = hodge.check_mths(P)
    assert not rep.ok and not rep.diagonal_ok and rep.failures


def test_mths_detects_upper_entry():
    P = copy.deepcopy(hodge.period_matrix_psi(2, "1/2"))
    P.entries[0][2] = mpmath.mpc(1)
    assert not hodge.check_mths(P).triangular_ok


@pytest.mark.parametrize("r", range(-2, 4))
def test_tate_matrix(r):
    assert hodge.check_mths(hodge.tate_matrix(r)).ok


def test_tate_tensor():
    K = hodge.kronecker(hodge.tate_matrix(1), hodge.tate_matrix(1))
    with mpmath.workprec(160):
        assert abs(K[0, 0] - (2j * mpmath.pi) ** 2) < 1e-30


@pytest.mark.parametrize("a,b", [("1/2", "1/2"), ("1/4", "1/2")])
def test_tensor(a, b):
    rep = hodge.tensor_check(a, b)
    assert rep.ok and rep.max_diff < 1e-10


@pytest.mark.parametrize("u", ["1/2", "3/4", "1/3"])
def test_regulator(u):
    rep = hodge.regulator_r1(u)
    assert rep.ok and rep.defect == 0 and rep.error < 1e-12


def test_regulator_domain():
    with pytest.raises(ValueError):
        hodge.regulator_r1(1)


def test_other_path_shifts_only_log_entries():
    around = PathSpec("1/2", via=("1j", "-1", "-1j"))
    P = hodge.period_matrix_psi(2, "1/2", path=around)
    Q = hodge.period_matrix_psi(2, "1/2")
    assert abs(P[2, 0] - Q[2, 0]) < 1e-20
    assert abs(P[2, 1] - Q[2, 1]) > 1
    assert hodge.check_mths(P).ok
    assert hodge.compare(2, "1/2", path=around).ok


def test_symbolic_argument_rejected():
    with pytest.raises(Exception):
        hodge.period_matrix_psi(2, "a")
