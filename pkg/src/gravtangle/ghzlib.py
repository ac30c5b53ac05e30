"""Recursive GHZ-type families built by prepending Bell-like pairs.

Odd sizes grow from the three-qubit pair (psi^3, psi'^3) via

    psi^n  = (|00>+|11>)/2 psi^{n-2} + (|10>-|01>)/2 psi'^{n-2}
    psi'^n = (|00>+|11>)/2 psi'^{n-2} - (|10>-|01>)/2 psi^{n-2}

and even sizes from (psi^4, psi'^4) via

    psi^n  = (|00>+|11>)/2 psi^{n-2}  + (|10>+|01>)/2 psi'^{n-2}
    psi'^n = (|00>+|11>)/2 psi'^{n-2} + (|10>+|01>)/2 psi^{n-2}
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .qstate import (
    Equality,
    PureState,
    Symmetry,
    apply_lattice_symmetry,
    kron_all,
    states_equal,
)

S2 = np.sqrt(2.0)
KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
M_PLUS = (KET0 + KET1) / S2
M_MINUS = (KET0 - KET1) / S2

PHI_PLUS = PureState.from_dict({"00": 1, "11": 1})  # unnormalized |00>+|11>
SINGLET_ODD = PureState.from_dict({"10": 1, "01": -1})  # |10>-|01>
TRIPLET_EVEN = PureState.from_dict({"10": 1, "01": 1})  # |10>+|01>

K_PLUS = PureState.from_dict({"00": 0.5, "11": 0.5, "01": 0.5j, "10": 0.5j})
K_MINUS = PureState.from_dict({"00": 0.5j, "11": 0.5j, "01": 0.5, "10": 0.5})


class Which(Enum):
    MAIN = "main"
    BACKUP = "backup"


@lru_cache(maxsize=None)
def _pair(n: int) -> tuple[PureState, PureState]:
    if n < 3:
        raise ValueError("recursive GHZ-type states need at least three qubits")
    if n == 3:
        mp, mm = PureState(M_PLUS), PureState(M_MINUS)
        main = 0.5 * (PHI_PLUS @ mp) + 0.5 * (SINGLET_ODD @ mm)
        backup = 0.5 * (PHI_PLUS @ mm) - 0.5 * (SINGLET_ODD @ mp)
    elif n == 4:
        main = 0.5 * (PHI_PLUS @ K_PLUS) + 0.5 * (TRIPLET_EVEN @ K_MINUS)
        backup = 0.5 * (PHI_PLUS @ K_MINUS) + 0.5 * (TRIPLET_EVEN @ K_PLUS)
    else:
        prev, prev_b = _pair(n - 2)
        if n % 2:
            main = 0.5 * (PHI_PLUS @ prev) + 0.5 * (SINGLET_ODD @ prev_b)
            backup = 0.5 * (PHI_PLUS @ prev_b) - 0.5 * (SINGLET_ODD @ prev)
        else:
            main = 0.5 * (PHI_PLUS @ prev) + 0.5 * (TRIPLET_EVEN @ prev_b)
            backup = 0.5 * (PHI_PLUS @ prev_b) + 0.5 * (TRIPLET_EVEN @ prev)
    return main.normalize(), backup.normalize()


def build_recursive(n: int, which: Which = Which.MAIN) -> PureState:
    main, backup = _pair(n)
    return main if which is Which.MAIN else backup


@dataclass(frozen=True)
class Rank2Certificate:
    """psi = u_1 x ... x u_n + v_1 x ... x v_n with independent {u_i, v_i} at each site."""

    branch_u: list[np.ndarray]
    branch_v: list[np.ndarray]
    reconstruction_error: float

    def site_determinants(self) -> np.ndarray:
        """|det[u_i/|u_i|, v_i/|v_i|]| per site."""
        out = []
        for u, v in zip(self.branch_u, self.branch_v):
            m = np.column_stack([u / np.linalg.norm(u), v / np.linalg.norm(v)])
            out.append(abs(np.linalg.det(m)))
        return np.array(out)

    def branches(self) -> tuple[PureState, PureState]:
        return kron_all(self.branch_u), kron_all(self.branch_v)


def _unrolled_sum_branches(n: int) -> tuple[list[np.ndarray], list[np.ndarray], complex, complex]:
    """Site vectors of S+ and S- together with their scalar prefactors.

    Odd n:  S± = psi^n ± i psi'^n.  Each recursion level contributes the block
            ((|00>+|11>) ∓ i(|10>-|01>))/2 = (|0> ∓ i|1>)(|0> ± i|1>)/2 and the
            base is |m+> ± i|m->.
    Even n: S± = psi^n ± psi'^n.  Each level contributes
            ((|00>+|11>) ± (|10>+|01>))/2 = (|0> ± |1>)(|0> ± |1>)/2 and the
            base is k+ ± k- = (1 ± i)/2 (|0> ± |1>)(|0> ± |1>).
    """
    plus, minus = [], []
    if n % 2:
        levels = (n - 3) // 2
        for _ in range(levels):
            plus += [KET0 - 1j * KET1, KET0 + 1j * KET1]
            minus += [KET0 + 1j * KET1, KET0 - 1j * KET1]
        plus += [KET0 - 1j * KET1, KET0 + 1j * KET1, M_PLUS + 1j * M_MINUS]
        minus += [KET0 + 1j * KET1, KET0 - 1j * KET1, M_PLUS - 1j * M_MINUS]
        scale_p = scale_m = 0.5 ** (levels + 1)
    else:
        levels = (n - 4) // 2
        for _ in range(levels + 1):
            plus += [KET0 + KET1, KET0 + KET1]
            minus += [KET0 - KET1, KET0 - KET1]
        plus += [KET0 + KET1, KET0 + KET1]
        minus += [KET0 - KET1, KET0 - KET1]
        scale_p = 0.5 ** (levels + 1) * (1 + 1j) / 2
        scale_m = 0.5 ** (levels + 1) * (1 - 1j) / 2
    return plus, minus, scale_p, scale_m


def rank2_certificate(n: int, which: Which = Which.MAIN) -> Rank2Certificate:
    plus, minus, sp, sm = _unrolled_sum_branches(n)
    # invert S± back into psi and psi'
    if n % 2:
        cu, cv = (0.5, 0.5) if which is Which.MAIN else (0.5 / 1j, -0.5 / 1j)
    else:
        cu, cv = (0.5, 0.5) if which is Which.MAIN else (0.5, -0.5)
    u = [v.copy() for v in plus]
    v = [w.copy() for w in minus]
    u[0] = u[0] * (cu * sp)
    v[0] = v[0] * (cv * sm)
    target = build_recursive(n, which).amplitudes
    recon = kron_all(u).amplitudes + kron_all(v).amplitudes
    cert = Rank2Certificate(u, v, float(np.linalg.norm(target - recon)))
    if cert.reconstruction_error > 1e-10 or cert.site_determinants().min() <= 1e-10:
        raise RuntimeError(f"rank-2 certificate for n={n} ({which.value}) failed validation")
    return cert


def check_spatial_symmetry(
    psi: PureState, mode: Equality = Equality.STRICT, tol: float = 1e-10
) -> tuple[bool, bool]:
    """(invert_ok, turnover_ok): is psi unchanged by bit inversion / qubit reversal?"""
    inv = apply_lattice_symmetry(psi, Symmetry.INVERT)
    to = apply_lattice_symmetry(psi, Symmetry.TURN_OVER)
    return states_equal(psi, inv, mode, tol), states_equal(psi, to, mode, tol)
