"""SLOCC classification of three-qubit states and two-qubit witnesses."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .qstate import PureState, pauli_expectation, schmidt_rank

RANK_RTOL = 1e-10
TANGLE_TOL = 1e-8
PHASE_TOL = 1e-10
TWO_PI = 2 * math.pi


class Verdict(Enum):
    FULLY_SEPARABLE = "FullySeparable"
    BISEPARABLE = "Biseparable"
    GHZ_TYPE = "GHZType"
    W_TYPE = "WType"


class RootKind(Enum):
    DISTINCT = "distinct"
    DOUBLE = "double"
    IDENTICAL = "identically-satisfied"


@dataclass(frozen=True)
class PhasePoint:
    dphi2: float
    dphi3: float

    def __post_init__(self):
        object.__setattr__(self, "dphi2", float(self.dphi2) % TWO_PI)
        object.__setattr__(self, "dphi3", float(self.dphi3) % TWO_PI)

    @property
    def e2(self) -> complex:
        return cmath.exp(1j * self.dphi2)

    @property
    def e3(self) -> complex:
        return cmath.exp(1j * self.dphi3)


@dataclass(frozen=True)
class RangeVectors:
    a: np.ndarray
    b: np.ndarray
    dependent: bool
    zero_vector: bool = False


@dataclass(frozen=True)
class ProductRoots:
    kind: RootKind
    roots: tuple[complex, ...] = ()

    @property
    def multiplicity(self) -> int | None:
        return {RootKind.DISTINCT: 1, RootKind.DOUBLE: 2}.get(self.kind)


@dataclass(frozen=True)
class SLOCCClass:
    verdict: Verdict
    schmidt_ranks: tuple[int, int, int]
    tangle: float
    phase_point: PhasePoint | None = None
    range_dependent: bool | None = None
    roots: ProductRoots | None = None
    notes: list[str] = field(default_factory=list)


def _require_three(psi: PureState):
    if psi.n_qubits != 3:
        raise ValueError(f"expected a three-qubit state, got {psi.n_qubits} qubits")


def range_vectors(psi: PureState, rtol: float = RANK_RTOL) -> RangeVectors:
    """Conditional states of qubits 2,3 given qubit 1 in |0> and |1>."""
    _require_three(psi)
    a = psi.amplitudes[:4].copy()
    b = psi.amplitudes[4:].copy()
    scale = max(np.linalg.norm(a), np.linalg.norm(b))
    if min(np.linalg.norm(a), np.linalg.norm(b)) <= rtol * scale:
        return RangeVectors(a, b, True, zero_vector=True)
    sv = np.linalg.svd(np.vstack([a, b]), compute_uv=False)
    return RangeVectors(a, b, bool(sv[1] < rtol * sv[0]))


def product_root_analysis(p: PhasePoint, tol: float = PHASE_TOL) -> ProductRoots:
    """Solve (1 + e2 x)(e2 + x) = (e2 + e3 x)(e3 + e2 x) for x.

    The difference of the two sides factors exactly as
    (1 - e3) [e2 x^2 + (1 + e3) x + e2], so the common factor is removed
    before solving; expanding first loses all precision as e3 -> 1.
    Distinct roots give two product vectors in the range (GHZ-type); a double
    root would give a W-type state.
    """
    e2, e3 = p.e2, p.e3
    if abs(1 - e3) < tol:
        return ProductRoots(RootKind.IDENTICAL)
    # the leading coefficient e2 has unit modulus, so the bracket is always quadratic
    b = 1 + e3
    disc = b * b - 4 * e2 * e2
    if abs(disc) < tol:
        x = -b / (2 * e2)
        return ProductRoots(RootKind.DOUBLE, (x, x))
    sq = cmath.sqrt(disc)
    return ProductRoots(RootKind.DISTINCT, ((-b + sq) / (2 * e2), (-b - sq) / (2 * e2)))


def w_condition_residual(p: PhasePoint) -> float:
    """|(1 + e3)^2 - 4 e2^2|; zero exactly where the root equation has a double root."""
    return abs((1 + p.e3) ** 2 - 4 * p.e2**2)


def ghz_phase_condition(p: PhasePoint, tol: float = PHASE_TOL) -> bool:
    """Single-qubit marginals maximally mixed, i.e. a GHZ state up to local unitaries."""
    e2, e3 = p.e2, p.e3
    outer = e3 + e3.conjugate() + 2
    inner = e2 + e2.conjugate() + e2 * e3.conjugate() + e3 * e2.conjugate()
    return abs(outer) < tol and abs(inner) < tol


def hyperdeterminant(psi: PureState) -> complex:
    """Cayley hyperdeterminant of the 2x2x2 amplitude tensor."""
    _require_three(psi)
    a = psi.tensor()
    d1 = (a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2 + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
          + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2 + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2)
    d2 = (a[0, 0, 0] * a[1, 1, 1] * a[0, 1, 1] * a[1, 0, 0]
          + a[0, 0, 0] * a[1, 1, 1] * a[1, 0, 1] * a[0, 1, 0]
          + a[0, 0, 0] * a[1, 1, 1] * a[1, 1, 0] * a[0, 0, 1]
          + a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1] * a[0, 1, 0]
          + a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0] * a[0, 0, 1]
          + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1])
    d3 = (a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1]
          + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0])
    return complex(d1 - 2 * d2 + 4 * d3)


def three_tangle(psi: PureState) -> float:
    """4 |Det|, computed on the normalized state."""
    return 4 * abs(hyperdeterminant(psi.normalize()))


def symmetric_phase_point(psi: PureState, tol: float = 1e-9) -> PhasePoint | None:
    """Recover (dphi2, dphi3) if psi has the three-mass symmetric-line form."""
    _require_three(psi)
    v = psi.normalize().amplitudes
    if np.max(np.abs(np.abs(v) - 1 / math.sqrt(8))) > tol:
        return None
    r = v / v[0]
    if abs(r[7] - 1) > tol:
        return None
    if max(abs(r[k] - r[1]) for k in (3, 4, 6)) > tol or abs(r[5] - r[2]) > tol:
        return None
    return PhasePoint(cmath.phase(r[1]), cmath.phase(r[2]))


def classify_three_qubit(psi: PureState) -> SLOCCClass:
    _require_three(psi)
    psi = psi.normalize()
    ranks = tuple(schmidt_rank(psi, [q], RANK_RTOL) for q in (1, 2, 3))
    tangle = three_tangle(psi)
    ones = sum(r == 1 for r in ranks)
    if ones == 3:
        verdict = Verdict.FULLY_SEPARABLE
    elif ones >= 1:
        verdict = Verdict.BISEPARABLE
    elif tangle > TANGLE_TOL:
        verdict = Verdict.GHZ_TYPE
    else:
        verdict = Verdict.W_TYPE

    notes = []
    point = symmetric_phase_point(psi)
    dependent = roots = None
    if point is not None:
        dependent = range_vectors(psi).dependent
        roots = product_root_analysis(point)
        if dependent and verdict in (Verdict.GHZ_TYPE, Verdict.W_TYPE):
            notes.append("range vectors dependent but state is genuinely entangled")
        if roots.kind is RootKind.DISTINCT and verdict is not Verdict.GHZ_TYPE:
            notes.append("distinct product roots but verdict is not GHZ-type")
        if roots.kind is RootKind.DOUBLE and verdict is not Verdict.W_TYPE:
            notes.append("double product root but verdict is not W-type")
    return SLOCCClass(verdict, ranks, tangle, point, dependent, roots, notes)


class Witness(Enum):
    # terms as (coefficient, Pauli word)
    A = ((1, "XZ"), (1, "YY"))
    B = ((1, "II"), (-1, "XX"), (-1, "ZY"), (-1, "YZ"))


def witness_expectation(psi: PureState, witness: Witness) -> float:
    if psi.n_qubits != 2:
        raise ValueError("witnesses act on two qubits")
    return sum(c * pauli_expectation(psi, word) for c, word in witness.value)
