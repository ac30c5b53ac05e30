"""Dense statevector and density-matrix algebra for a handful of qubits.

Bit convention: qubit 1 is the leftmost (most significant) bit of a basis
index, so ``|b_1 b_2 ... b_n>`` lives at ``int("b_1...b_n", 2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numba
import numpy as np

MAX_QUBITS = 12

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class Symmetry(Enum):
    INVERT = "invert"
    TURN_OVER = "turn_over"


class Equality(Enum):
    STRICT = "strict"
    RAY = "ray"


def _n_from_dim(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if n < 1 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    if n > MAX_QUBITS:
        raise ValueError(f"{n} qubits exceeds the supported maximum of {MAX_QUBITS}")
    return n


@dataclass(frozen=True, eq=False)
class PureState:
    """Amplitude vector over ``n_qubits`` qubits (not necessarily normalized)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        _n_from_dim(amps.size)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @classmethod
    def basis(cls, bits: str) -> "PureState":
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int(bits, 2)] = 1.0
        return cls(amps)

    @classmethod
    def from_dict(cls, terms: dict[str, complex]) -> "PureState":
        """Unnormalized superposition from ``{"010": coeff, ...}``."""
        lengths = {len(k) for k in terms}
        if len(lengths) != 1:
            raise ValueError("all bit-strings must have the same length")
        amps = np.zeros(2 ** lengths.pop(), dtype=complex)
        for bits, c in terms.items():
            amps[int(bits, 2)] += c
        return cls(amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "PureState":
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero vector")
        return PureState(self.amplitudes / nrm)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to ``(2,) * n``, axis k is qubit k+1."""
        return self.amplitudes.reshape((2,) * self.n_qubits)

    def __getitem__(self, bits: str) -> complex:
        return complex(self.amplitudes[int(bits, 2)])

    def __mul__(self, c) -> "PureState":
        return PureState(self.amplitudes * c)

    __rmul__ = __mul__

    def __add__(self, other: "PureState") -> "PureState":
        return PureState(self.amplitudes + other.amplitudes)

    def __sub__(self, other: "PureState") -> "PureState":
        return PureState(self.amplitudes - other.amplitudes)

    def __neg__(self) -> "PureState":
        return PureState(-self.amplitudes)

    def __matmul__(self, other: "PureState") -> "PureState":
        return tensor_product(self, other)

    def __repr__(self) -> str:
        return f"PureState(n_qubits={self.n_qubits})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        _n_from_dim(m.shape[0])
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def n_qubits(self) -> int:
        return self.entries.shape[0].bit_length() - 1

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def __repr__(self) -> str:
        return f"DensityMatrix(n_qubits={self.n_qubits})"


def tensor_product(a: PureState, b: PureState) -> PureState:
    return PureState(np.kron(a.amplitudes, b.amplitudes))


def kron_all(states: Iterable[PureState | np.ndarray]) -> PureState:
    out = np.ones(1, dtype=complex)
    for s in states:
        out = np.kron(out, s.amplitudes if isinstance(s, PureState) else np.asarray(s))
    return PureState(out)


def inner(a: PureState, b: PureState) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("qubit counts differ")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def density_of(psi: PureState) -> DensityMatrix:
    v = psi.amplitudes
    return DensityMatrix(np.outer(v, v.conj()))


def _check_qubits(n: int, qubits: Iterable[int]) -> list[int]:
    qs = sorted(set(qubits))
    for q in qs:
        if not 1 <= q <= n:
            raise IndexError(f"qubit {q} out of range 1..{n}")
    return qs


def partial_transpose(rho: DensityMatrix, subsystem: Iterable[int]) -> DensityMatrix:
    """Transpose the row/column indices of the given (1-based) qubits."""
    n = rho.n_qubits
    qs = _check_qubits(n, subsystem)
    t = rho.entries.reshape((2,) * (2 * n))
    axes = list(range(2 * n))
    for q in qs:
        axes[q - 1], axes[n + q - 1] = axes[n + q - 1], axes[q - 1]
    return DensityMatrix(t.transpose(axes).reshape(2**n, 2**n))


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the kept (1-based) qubits, in ascending order."""
    n = rho.n_qubits
    keep = _check_qubits(n, keep)
    traced = [q for q in range(1, n + 1) if q not in keep]
    t = rho.entries.reshape((2,) * (2 * n))
    # trace out from the highest qubit so remaining axis numbers stay valid
    for q in reversed(traced):
        m = t.ndim // 2
        t = np.trace(t, axis1=q - 1, axis2=m + q - 1)
    d = 2 ** len(keep)
    return DensityMatrix(t.reshape(d, d))


@numba.njit(cache=True)
def _jacobi_sweeps(a, tol, max_sweeps):
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += 2.0 * (a[p, q].real ** 2 + a[p, q].imag ** 2)
        if np.sqrt(off) < tol:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag == 0.0:
                    continue
                ph = g / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = 0.5 * np.arctan2(2.0 * mag, aqq - app)
                c = np.cos(theta)
                s = np.sin(theta)
                # U restricted to (p, q) = [[c, s], [-s conj(ph), c conj(ph)]]
                phc = ph.conjugate()
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * phc * akq
                    a[k, q] = s * akp + c * phc * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * ph * aqk
                    a[q, k] = s * apk + c * ph * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
    return -1


def hermitian_eigenvalues(
    m: DensityMatrix | np.ndarray, tol: float = 1e-12, max_sweeps: int = 100
) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||m||_F)``.
    """
    a = np.array(m.entries if isinstance(m, DensityMatrix) else m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(1.0, float(np.linalg.norm(a)))
    if np.max(np.abs(a - a.conj().T), initial=0.0) > 1e-10 * scale:
        raise ValueError("matrix is not Hermitian")
    a = 0.5 * (a + a.conj().T)
    sweeps = _jacobi_sweeps(a, tol * scale, max_sweeps)
    if sweeps < 0:
        raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")
    return np.sort(np.diag(a).real)


def apply_lattice_symmetry(psi: PureState, kind: Symmetry) -> PureState:
    t = psi.tensor()
    if kind is Symmetry.INVERT:
        out = t[(slice(None, None, -1),) * t.ndim]
    elif kind is Symmetry.TURN_OVER:
        out = t.transpose(tuple(reversed(range(t.ndim))))
    else:
        raise ValueError(f"unknown symmetry {kind!r}")
    return PureState(out.reshape(-1))


def invert(psi: PureState) -> PureState:
    return apply_lattice_symmetry(psi, Symmetry.INVERT)


def turn_over(psi: PureState) -> PureState:
    return apply_lattice_symmetry(psi, Symmetry.TURN_OVER)


def pauli_operator(word: str) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for letter in word:
        try:
            out = np.kron(out, _PAULI[letter])
        except KeyError:
            raise ValueError(f"bad Pauli letter {letter!r}") from None
    return out


def apply_local(psi: PureState, ops: dict[int, np.ndarray]) -> PureState:
    """Apply single-qubit 2x2 matrices keyed by 1-based qubit index."""
    t = psi.tensor()
    for q, op in ops.items():
        _check_qubits(psi.n_qubits, [q])
        t = np.moveaxis(np.tensordot(np.asarray(op, dtype=complex), t, axes=([1], [q - 1])), 0, q - 1)
    return PureState(t.reshape(-1))


def pauli_expectation(psi: PureState, word: str) -> float:
    if len(word) != psi.n_qubits:
        raise ValueError(f"Pauli word of length {len(word)} on {psi.n_qubits} qubits")
    ops = {q + 1: _PAULI[c] for q, c in enumerate(word) if c != "I"}
    for c in word:
        if c not in _PAULI:
            raise ValueError(f"bad Pauli letter {c!r}")
    val = np.vdot(psi.amplitudes, apply_local(psi, ops).amplitudes)
    return float(val.real)


def schmidt_coefficients(psi: PureState, part: Sequence[int]) -> np.ndarray:
    """Singular values of the cut ``part | rest`` (descending)."""
    n = psi.n_qubits
    part = _check_qubits(n, part)
    rest = [q for q in range(1, n + 1) if q not in part]
    t = psi.tensor().transpose([q - 1 for q in part + rest])
    return np.linalg.svd(t.reshape(2 ** len(part), -1), compute_uv=False)


def schmidt_rank(psi: PureState, part: Sequence[int], rtol: float = 1e-10) -> int:
    sv = schmidt_coefficients(psi, part)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


def states_equal(a: PureState, b: PureState, mode: Equality = Equality.STRICT, tol: float = 1e-12) -> bool:
    """Compare amplitudes exactly (STRICT) or up to a global phase (RAY).

    RAY fixes the phase of each vector's largest-magnitude amplitude (taken
    from ``a``) before comparing.
    """
    if a.n_qubits != b.n_qubits:
        return False
    x, y = a.amplitudes, b.amplitudes
    if mode is Equality.RAY:
        k = int(np.argmax(np.abs(x)))
        if abs(y[k]) == 0:
            return bool(np.max(np.abs(x)) <= tol and np.max(np.abs(y)) <= tol)
        x = x * (abs(x[k]) / x[k]) if x[k] != 0 else x
        y = y * (abs(y[k]) / y[k])
    return bool(np.max(np.abs(x - y)) <= tol)


def global_factor(a: PureState, b: PureState) -> complex | None:
    """Scalar c with b = c a, or None if b is not proportional to a."""
    k = int(np.argmax(np.abs(a.amplitudes)))
    if a.amplitudes[k] == 0:
        return None
    c = b.amplitudes[k] / a.amplitudes[k]
    if np.max(np.abs(b.amplitudes - c * a.amplitudes)) > 1e-10:
        return None
    return complex(c)
