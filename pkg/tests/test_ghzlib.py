import math

import numpy as np
import pytest

from gravtangle.classify import Verdict, classify_three_qubit
from gravtangle.ghzlib import (
    M_MINUS,
    M_PLUS,
    Which,
    build_recursive,
    check_spatial_symmetry,
    rank2_certificate,
)
from gravtangle.qstate import Equality, PureState, apply_local, global_factor, invert, schmidt_rank, states_equal

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def ket(s):
    return PureState.basis(s)


def test_three_qubit_main_matches_explicit_form():
    mp, mm = PureState(M_PLUS), PureState(M_MINUS)
    expect = ((ket("00") + ket("11")) @ mp + (ket("10") - ket("01")) @ mm) * 0.5
    assert states_equal(build_recursive(3), expect)
    assert classify_three_qubit(expect).verdict is Verdict.GHZ_TYPE


def test_four_qubit_main_matches_explicit_form():
    a = ket("0") @ PureState(np.array([1, 1j])) + ket("1") @ PureState(np.array([1j, 1]))
    b = ket("0") @ PureState(np.array([1j, 1])) + ket("1") @ PureState(np.array([1, 1j]))
    expect = ((ket("00") + ket("11")) @ a + (ket("10") + ket("01")) @ b) * 0.25
    assert states_equal(build_recursive(4), expect)


def test_three_qubit_backup_is_local_rotation_of_main():
    main = build_recursive(3)
    assert states_equal(build_recursive(3, Which.BACKUP), apply_local(main, {3: SX @ (-SZ)}))


@pytest.mark.parametrize("n", range(3, 11))
@pytest.mark.parametrize("which", list(Which))
def test_family_is_normalized_and_orthogonal(n, which):
    psi = build_recursive(n, which)
    assert abs(psi.norm() - 1) < 1e-12
    other = build_recursive(n, Which.BACKUP if which is Which.MAIN else Which.MAIN)
    assert abs(np.vdot(psi.amplitudes, other.amplitudes)) < 1e-12


@pytest.mark.parametrize("n", range(3, 11))
@pytest.mark.parametrize("which", list(Which))
def test_rank2_certificate(n, which):
    cert = rank2_certificate(n, which)
    assert cert.reconstruction_error < 1e-10
    assert cert.site_determinants().min() > 0.1
    u, v = cert.branches()
    assert np.allclose((u + v).amplitudes, build_recursive(n, which).amplitudes, atol=1e-12)


def test_three_qubit_certificate_branches():
    cert = rank2_certificate(3)
    for vec in cert.branch_u[:2] + cert.branch_v[:2]:
        unit = vec / np.linalg.norm(vec)
        # each of the first two sites carries |0> +- i|1>
        assert abs(abs(unit[0]) - 1 / math.sqrt(2)) < 1e-12
        assert abs(abs(unit[1] / unit[0]) - 1) < 1e-12 and abs((unit[1] / unit[0]).real) < 1e-12


@pytest.mark.parametrize("n", range(3, 11))
def test_every_bipartition_has_schmidt_rank_two(n):
    psi = build_recursive(n)
    for k in range(1, n):
        assert schmidt_rank(psi, list(range(1, k + 1))) == 2


@pytest.mark.parametrize("n", range(3, 11))
def test_spatial_symmetry(n):
    assert check_spatial_symmetry(build_recursive(n), Equality.STRICT) == (True, True)
    backup = build_recursive(n, Which.BACKUP)
    if n % 2:
        assert check_spatial_symmetry(backup, Equality.STRICT) == (False, True)
        assert global_factor(backup, invert(backup)) == pytest.approx(-1, abs=1e-12)
        assert check_spatial_symmetry(backup, Equality.RAY) == (True, True)
    else:
        assert check_spatial_symmetry(backup, Equality.STRICT) == (True, True)


def test_too_small():
    with pytest.raises(ValueError):
        build_recursive(2)
