"""Masses on a line, split into |L>=|0> and |R>=|1> branches.

Each branch (bit-string) accumulates the phase ``phi(b) = -V(b) tau / hbar``
where ``V(b)`` is the pairwise gravitational energy of that branch's
configuration. With V < 0 the phases are positive.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Mapping

import numpy as np

from .qstate import PureState

G_NEWTON = 6.67430e-11
HBAR = 1.054571817e-34
C_LIGHT = 2.99792458e8


class Geometry(Enum):
    SYMMETRIC = "symmetric"  # splits orthogonal to the line of masses
    PARALLEL = "parallel"  # splits along the separation axis (two masses only)


class Corrections(Enum):
    NEWTONIAN = "off"
    WITH_CORRECTIONS = "on"


@dataclass(frozen=True)
class SetupParams:
    n_masses: int = 3
    masses: tuple[float, ...] = ()
    d: float = 200e-6
    l: float = 4e-3
    tau: float = 1.0
    G: float = G_NEWTON
    hbar: float = HBAR
    c: float = C_LIGHT
    geometry: Geometry = Geometry.SYMMETRIC
    corrections: Corrections = Corrections.NEWTONIAN

    def __post_init__(self):
        if self.n_masses < 1:
            raise ValueError("n_masses must be positive")
        masses = tuple(float(m) for m in self.masses) or (1e-14,) * self.n_masses
        if len(masses) == 1 and self.n_masses > 1:
            masses = masses * self.n_masses
        if len(masses) != self.n_masses:
            raise ValueError(f"{len(masses)} masses given for n_masses={self.n_masses}")
        object.__setattr__(self, "masses", masses)
        for name in ("d", "l", "G", "hbar", "c"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.tau < 0:
            raise ValueError("tau must be non-negative")
        if any(m <= 0 for m in masses):
            raise ValueError("masses must be strictly positive")
        if self.geometry is Geometry.PARALLEL:
            if self.n_masses != 2:
                raise ValueError("parallel geometry is defined for two masses only")
            if self.l >= self.d:
                raise ValueError("parallel geometry needs l < d")

    @classmethod
    def unit_scale(cls, n_masses: int = 3, d: float = 1.0, l: float = 1.0, **kw) -> "SetupParams":
        """G m^2 tau / hbar = 1 with unit masses, so phases are pure geometry."""
        kw.setdefault("tau", 1.0)
        return cls(n_masses=n_masses, masses=(1.0,) * n_masses, d=d, l=l, G=1.0, hbar=1.0, **kw)

    def with_tau(self, tau: float) -> "SetupParams":
        return replace(self, tau=tau)

    @property
    def equal_masses(self) -> bool:
        return len(set(self.masses)) == 1


def bitstrings(n: int) -> list[str]:
    return [format(k, f"0{n}b") for k in range(2**n)]


def pair_distance(i: int, j: int, bi: int, bj: int, setup: SetupParams) -> float:
    """Distance between the branch components of masses i < j (1-based sites)."""
    if i == j:
        raise ValueError("a mass has no distance to itself")
    if i > j:
        i, j, bi, bj = j, i, bj, bi
    d, l = setup.d, setup.l
    if setup.geometry is Geometry.PARALLEL:
        if setup.n_masses != 2 or (i, j) != (1, 2):
            raise ValueError("parallel geometry is defined for two masses only")
        if l >= d:
            raise ValueError("parallel geometry needs l < d")
        if bi == bj:
            return d
        return d + l if (bi, bj) == (0, 1) else d - l
    sep = (j - i) * d
    return sep if bi == bj else math.hypot(sep, l)


def correction_terms(r: float, m1: float, m2: float, setup: SetupParams) -> tuple[float, float]:
    """Relative general-relativistic and quantum corrections to -G m1 m2 / r."""
    G, c, hbar = setup.G, setup.c, setup.hbar
    gr = 3 * G * (m1 + m2) / (r * c**2)
    quantum = 41 * G * hbar / (10 * math.pi * r**2 * c**3)
    return gr, quantum


def potential_energy(r: float, m1: float, m2: float, setup: SetupParams) -> float:
    if not r > 0:
        raise ValueError("separation must be positive")
    v = -setup.G * m1 * m2 / r
    if setup.corrections is Corrections.WITH_CORRECTIONS:
        gr, quantum = correction_terms(r, m1, m2, setup)
        v *= 1 + gr + quantum
    return v


def branch_energy(b: str, setup: SetupParams) -> float:
    if len(b) != setup.n_masses:
        raise ValueError(f"bit-string {b!r} does not match {setup.n_masses} masses")
    bits = [int(ch) for ch in b]
    m = setup.masses
    terms = [
        potential_energy(pair_distance(i + 1, j + 1, bits[i], bits[j], setup), m[i], m[j], setup)
        for i, j in itertools.combinations(range(len(bits)), 2)
    ]
    # fsum is order independent, so symmetric branches get bit-identical phases
    return math.fsum(terms)


def branch_phase(b: str, setup: SetupParams) -> float:
    return -branch_energy(b, setup) * setup.tau / setup.hbar


def complement(b: str) -> str:
    return b.translate(str.maketrans("01", "10"))


def symmetry_classes(n: int, mirror_only: bool = False) -> list[list[str]]:
    """Orbits of {0,1}^n under bit complement and string reversal.

    With ``mirror_only`` the group is just {id, complement . reversal}, the
    single reflection left when the splits lie along the line of masses.
    Classes are sorted by their lexicographically smallest member, which is
    also the first element of each class.
    """
    if n < 1:
        raise ValueError("n must be positive")
    seen: set[str] = set()
    classes = []
    for b in bitstrings(n):
        if b in seen:
            continue
        mirror = complement(b)[::-1]
        orbit = {b, mirror} if mirror_only else {b, complement(b), b[::-1], mirror}
        seen |= orbit
        classes.append(sorted(orbit))
    return classes


@dataclass(frozen=True)
class PhaseTable:
    n_qubits: int
    classes: list[list[str]]
    phases: list[float] = field(default_factory=list)

    @property
    def class_reps(self) -> list[str]:
        return [c[0] for c in self.classes]

    @property
    def class_of(self) -> dict[str, int]:
        return {b: k for k, cls in enumerate(self.classes) for b in cls}

    def phase(self, b: str) -> float:
        return self.phases[self.class_of[b]]

    def relative_phases(self) -> list[float]:
        """Class phases minus the phase of the class containing 0...0."""
        ref = self.phase("0" * self.n_qubits)
        return [p - ref for p in self.phases]


def _classes_for(setup: SetupParams) -> list[list[str]]:
    return symmetry_classes(setup.n_masses, mirror_only=setup.geometry is Geometry.PARALLEL)


def phase_table(setup: SetupParams, tol: float = 1e-12) -> PhaseTable:
    """Evaluate branch phases and check that each symmetry class shares one phase."""
    if setup.geometry is Geometry.SYMMETRIC and not setup.equal_masses:
        raise ValueError("the symmetric line requires identical masses")
    classes = _classes_for(setup)
    phases = []
    for cls in classes:
        vals = [branch_phase(b, setup) for b in cls]
        ref = vals[0]
        if any(abs(v - ref) > tol * max(1.0, abs(ref)) for v in vals):
            raise RuntimeError(f"branch phases differ inside class {cls}: {vals}")
        phases.append(ref)
    return PhaseTable(setup.n_masses, classes, phases)


def build_final_state(setup: SetupParams) -> tuple[PureState, PhaseTable]:
    table = phase_table(setup)
    n = setup.n_masses
    amps = np.empty(2**n, dtype=complex)
    for cls, ph in zip(table.classes, table.phases):
        for b in cls:
            amps[int(b, 2)] = np.exp(1j * ph)
    return PureState(amps / 2 ** (n / 2)), table


def build_from_phase_vector(n: int, phases: Mapping[str, float]) -> PureState:
    """Uniform-modulus state with an independent phase per basis string."""
    amps = np.empty(2**n, dtype=complex)
    for b in bitstrings(n):
        if b not in phases:
            raise KeyError(f"no phase given for {b}")
        amps[int(b, 2)] = np.exp(1j * phases[b])
    extra = set(phases) - set(bitstrings(n))
    if extra:
        raise ValueError(f"unexpected bit-strings {sorted(extra)}")
    return PureState(amps / 2 ** (n / 2))


def three_qubit_state(dphi2: float, dphi3: float, phi1: float = 0.0) -> PureState:
    """Symmetric-line three-mass state parameterized by its two relative phases."""
    rel = {"000": 0.0, "111": 0.0, "010": dphi3, "101": dphi3}
    phases = {b: phi1 + rel.get(b, dphi2) for b in bitstrings(3)}
    return build_from_phase_vector(3, phases)


def three_qubit_states(dphi2, dphi3) -> np.ndarray:
    """Vectorized amplitudes of :func:`three_qubit_state`, shape ``(..., 8)``."""
    d2 = np.asarray(dphi2, dtype=float)
    d3 = np.asarray(dphi3, dtype=float)
    d2, d3 = np.broadcast_arrays(d2, d3)
    e2 = np.exp(1j * d2)[..., None]
    e3 = np.exp(1j * d3)[..., None]
    mask2 = np.array([0, 1, 0, 1, 1, 0, 1, 0], dtype=bool)
    mask3 = np.array([0, 0, 1, 0, 0, 1, 0, 0], dtype=bool)
    amps = np.where(mask2, e2, np.where(mask3, e3, 1.0 + 0j))
    return amps / np.sqrt(8)


def relative_phases_3(setup: SetupParams) -> tuple[float, float]:
    """(dphi2, dphi3) = (phi(001) - phi(000), phi(010) - phi(000))."""
    if setup.n_masses != 3:
        raise ValueError("needs three masses")
    p0 = branch_phase("000", setup)
    return branch_phase("001", setup) - p0, branch_phase("010", setup) - p0


PSI6_PHASES = {
    "000": 0.0, "001": 0.0, "010": 0.0, "100": 0.0, "111": 0.0,
    "110": -math.pi / 2, "101": math.pi, "011": math.pi / 2,
}
"""Independent branch phases of the modified (unequal-spacing) apparatus giving a W-type state."""
