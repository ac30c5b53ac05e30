"""Geometric measure of entanglement and tripartite negativity."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import minimize

from .gravity import SetupParams, build_final_state
from .qstate import PureState, density_of, hermitian_eigenvalues, partial_transpose

DEFAULT_SEED = 20231109
SEED_ENV = "GRAVTANGLE_SEED"


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, DEFAULT_SEED))


@dataclass(frozen=True)
class OptimizerOpts:
    n_restarts: int = 64
    seed: int = field(default_factory=default_seed)
    max_iter: int = 500
    tol: float = 1e-12
    grid: int = 64  # coarse (alpha, theta) grid for the symmetric search
    refine: int = 4  # local refinements started from the best grid cells

    def __post_init__(self):
        if self.n_restarts < 1 or self.max_iter < 1 or self.grid < 2:
            raise ValueError("restarts, iterations and grid size must be positive")


@dataclass(frozen=True)
class ProductAnsatz:
    """Qubit i is cos(alpha_i)|0> + exp(i theta_i) sin(alpha_i)|1>."""

    alphas: tuple[float, ...]
    thetas: tuple[float, ...]

    def __post_init__(self):
        if len(self.alphas) != len(self.thetas):
            raise ValueError("need one (alpha, theta) pair per qubit")

    @classmethod
    def symmetric(cls, alpha: float, theta: float, n: int = 3) -> "ProductAnsatz":
        return cls((alpha,) * n, (theta,) * n)

    @classmethod
    def from_vectors(cls, vectors) -> "ProductAnsatz":
        alphas, thetas = [], []
        for v in vectors:
            v = np.asarray(v, dtype=complex)
            v = v / np.linalg.norm(v)
            alphas.append(float(math.atan2(abs(v[1]), abs(v[0]))))
            thetas.append(float((np.angle(v[1]) - np.angle(v[0])) % (2 * math.pi)) if abs(v[1]) > 0 else 0.0)
        return cls(tuple(alphas), tuple(thetas))

    @property
    def n_qubits(self) -> int:
        return len(self.alphas)

    def vectors(self) -> list[np.ndarray]:
        return [np.array([math.cos(a), np.exp(1j * t) * math.sin(a)]) for a, t in zip(self.alphas, self.thetas)]

    def state(self) -> PureState:
        out = np.ones(1, dtype=complex)
        for v in self.vectors():
            out = np.kron(out, v)
        return PureState(out)


@dataclass(frozen=True)
class MeasureResult:
    lambda2: float
    negativity: float
    argmax: ProductAnsatz
    n_restarts_used: int

    @property
    def G(self) -> float:
        """-2 log2(Lambda), in bits."""
        return -math.log2(self.lambda2)


def overlap2(psi: PureState, ansatz: ProductAnsatz) -> float:
    if ansatz.n_qubits != psi.n_qubits:
        raise ValueError("ansatz and state have different qubit counts")
    return float(abs(np.vdot(ansatz.state().amplitudes, psi.amplitudes)) ** 2)


def gm_from_lambda2(lambda2):
    return -np.log2(lambda2)


# -- symmetric search ---------------------------------------------------------

def symmetric_product_amplitudes(alpha, theta, n: int = 3) -> np.ndarray:
    """Amplitudes of (cos a|0> + e^{it} sin a|1>)^{x n}; broadcasts over alpha/theta."""
    alpha, theta = np.broadcast_arrays(np.asarray(alpha, float), np.asarray(theta, float))
    v0 = np.cos(alpha)
    v1 = np.exp(1j * theta) * np.sin(alpha)
    weights = np.array([bin(k).count("1") for k in range(2**n)])
    return v0[..., None] ** (n - weights) * v1[..., None] ** weights


def symmetric_state(dphi3: float) -> PureState:
    """Three-mass state on the symmetric manifold dphi2 = dphi3."""
    amps = np.full(8, np.exp(1j * dphi3))
    amps[0] = amps[7] = 1.0
    return PureState(amps / math.sqrt(8))


def gm_symmetric(dphi3: float, opts: OptimizerOpts | None = None) -> MeasureResult:
    """Maximize |<phi^{x3}|psi>|^2 over the shared-qubit ansatz.

    A coarse grid over alpha in [0, pi/2], theta in [0, 2 pi) seeds Nelder-Mead
    refinements from the ``opts.refine`` best cells.
    """
    opts = opts or OptimizerOpts()
    psi = symmetric_state(dphi3)
    alphas = np.linspace(0, math.pi / 2, opts.grid)
    thetas = np.linspace(0, 2 * math.pi, opts.grid, endpoint=False)
    A, T = np.meshgrid(alphas, thetas, indexing="ij")
    vals = np.abs(symmetric_product_amplitudes(A, T).conj() @ psi.amplitudes) ** 2

    def neg(p):
        return -float(np.abs(symmetric_product_amplitudes(p[0], p[1]).conj() @ psi.amplitudes) ** 2)

    best_val, best_p = -1.0, (0.0, 0.0)
    order = np.argsort(vals.ravel())[::-1][: opts.refine]
    for k in order:
        x0 = (A.ravel()[k], T.ravel()[k])
        res = minimize(neg, x0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-15, "maxiter": 4000})
        if -res.fun > best_val:
            best_val, best_p = -res.fun, tuple(res.x)
    alpha, theta = best_p
    # fold into the canonical chart alpha in [0, pi/2], theta in [0, 2 pi)
    v = np.array([math.cos(alpha), np.exp(1j * theta) * math.sin(alpha)])
    ansatz = ProductAnsatz.from_vectors([v] * 3)
    return MeasureResult(min(best_val, 1.0), negativity_tripartite(psi), ansatz, len(order))


# -- general search: alternating single-site maximization --------------------

def _random_unit_vectors(rng: np.random.Generator, shape) -> np.ndarray:
    v = rng.normal(size=(*shape, 2)) + 1j * rng.normal(size=(*shape, 2))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _site_matrices(psis: np.ndarray, n: int) -> list[np.ndarray]:
    """psi with qubit k moved last, flattened to (B, 2^{n-1}, 2), for each k."""
    t = psis.reshape((psis.shape[0],) + (2,) * n)
    return [np.moveaxis(t, k + 1, -1).reshape(psis.shape[0], -1, 2) for k in range(n)]


def _others_kron(vecs: np.ndarray, k: int) -> np.ndarray:
    """Kronecker product of conj(vecs[:, j]) over j != k, shape (A, 2^{n-1})."""
    w = np.ones((vecs.shape[0], 1), dtype=complex)
    for j in range(vecs.shape[1]):
        if j != k:
            w = (w[:, :, None] * vecs[:, j, None, :].conj()).reshape(vecs.shape[0], -1)
    return w


def alternating_maximization(
    psis: np.ndarray, init: np.ndarray, max_iter: int = 500, tol: float = 1e-12, history: list | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Batched alternating maximization of |<v_1 x ... x v_n|psi>|^2.

    With all sites but k fixed, the best v_k is the normalized contraction of
    psi against the fixed sites, so every update is exact and the overlap
    never decreases.

    psis: (B, 2^n) normalized states. init: (B, R, n, 2) unit vectors.
    Returns (lambda2 (B, R), vectors (B, R, n, 2), sweeps used (B, R)).
    """
    B, R, n, _ = init.shape
    mats = _site_matrices(np.asarray(psis, dtype=complex), n)
    vecs = init.reshape(B * R, n, 2).astype(complex).copy()
    owner = np.repeat(np.arange(B), R)
    val = np.zeros(B * R)
    sweeps = np.zeros(B * R, dtype=int)
    active = np.arange(B * R)
    for it in range(max_iter):
        if active.size == 0:
            break
        v = vecs[active]
        for k in range(n):
            w = _others_kron(v, k)
            u = np.einsum("af,afi->ai", w, mats[k][owner[active]])
            nrm = np.linalg.norm(u, axis=-1)
            safe = nrm > 0
            v[safe, k] = u[safe] / nrm[safe, None]
        new = nrm**2
        prev = val[active]
        if np.any(new < prev - 1e-12):
            raise RuntimeError("alternating maximization decreased the overlap")
        if history is not None:
            full = val.copy()
            full[active] = new
            history.append(full.reshape(B, R))
        vecs[active] = v
        val[active] = new
        sweeps[active] = it + 1
        active = active[(new - prev) >= tol]
    return val.reshape(B, R), vecs.reshape(B, R, n, 2), sweeps.reshape(B, R)


def gm_general_batch(psis, opts: OptimizerOpts | None = None, point_offset: int = 0) -> list[MeasureResult]:
    """gm_general over a batch; point i draws its restarts from rng(seed, offset + i)."""
    opts = opts or OptimizerOpts()
    psis = np.atleast_2d(np.asarray([p.amplitudes if isinstance(p, PureState) else p for p in psis], dtype=complex))
    B, dim = psis.shape
    n = dim.bit_length() - 1
    psis = psis / np.linalg.norm(psis, axis=1, keepdims=True)
    init = np.stack(
        [_random_unit_vectors(np.random.default_rng([opts.seed, point_offset + i]), (opts.n_restarts, n)) for i in range(B)]
    )
    lam, vecs, _ = alternating_maximization(psis, init, opts.max_iter, opts.tol)
    best = np.argmax(lam, axis=1)
    out = []
    for i in range(B):
        psi = PureState(psis[i])
        out.append(
            MeasureResult(
                min(float(lam[i, best[i]]), 1.0),
                negativity_tripartite(psi) if n == 3 else float("nan"),
                ProductAnsatz.from_vectors(vecs[i, best[i]]),
                opts.n_restarts,
            )
        )
    return out


def gm_general(psi: PureState, opts: OptimizerOpts | None = None) -> MeasureResult:
    if psi.n_qubits > 8:
        raise ValueError("geometric measure supported for at most 8 qubits")
    return gm_general_batch([psi], opts)[0]


def lambda2_fit(dphi3):
    """Empirical arctan fit of the symmetric-manifold Lambda^2 curve."""
    x = np.asarray(dphi3, dtype=float)
    return 0.164 * (np.arctan(5.71 * x - 28.68) + np.arctan(-3.79 * x + 4.83)) + 0.98


# -- negativity ---------------------------------------------------------------

def bipartite_negativity(psi: PureState, qubit: int) -> float:
    """-2 x (sum of negative eigenvalues) of rho partially transposed on one qubit."""
    ev = hermitian_eigenvalues(partial_transpose(density_of(psi.normalize()), [qubit]))
    return float(max(0.0, -2 * ev[ev < 0].sum()))


def negativity_tripartite(psi: PureState) -> float:
    if psi.n_qubits != 3:
        raise ValueError("tripartite negativity needs three qubits")
    vals = [bipartite_negativity(psi, q) for q in (1, 2, 3)]
    return float(np.prod(vals) ** (1 / 3))


# -- sweeps -------------------------------------------------------------------

class Measure(Enum):
    GM = "gm"
    LAMBDA2 = "lambda2"
    NEGATIVITY = "negativity"


def tau_sweep(
    setup: SetupParams,
    tau_range: tuple[float, float],
    n_points: int,
    what: Measure = Measure.LAMBDA2,
    opts: OptimizerOpts | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    if not tau_range[1] > tau_range[0]:
        raise ValueError("tau range must be increasing")
    taus = np.linspace(tau_range[0], tau_range[1], n_points)
    states = [build_final_state(setup.with_tau(t))[0] for t in taus]
    if what is Measure.NEGATIVITY:
        return taus, np.array([negativity_tripartite(s) for s in states])
    lam = np.array([r.lambda2 for r in gm_general_batch(states, opts)])
    return taus, (lam if what is Measure.LAMBDA2 else gm_from_lambda2(lam))


def detect_period(taus: np.ndarray, values: np.ndarray, min_lag: float = 0.0) -> float:
    """Dominant period of a uniformly sampled series from its autocorrelation.

    Returns the lag of the highest autocorrelation peak beyond the first zero
    crossing (and beyond ``min_lag``), searching lags up to half the span.
    """
    taus = np.asarray(taus, float)
    x = np.asarray(values, float) - np.mean(values)
    dt = taus[1] - taus[0]
    n = len(x)
    max_k = n // 2
    denom = np.dot(x, x)
    if denom == 0:
        return float("nan")
    ac = np.array([np.dot(x[: n - k], x[k:]) / denom * n / (n - k) for k in range(max_k)])
    below = np.nonzero(ac < 0)[0]
    start = max(int(below[0]) if below.size else 1, int(math.ceil(min_lag / dt)))
    peaks = [k for k in range(max(start, 1), max_k - 1) if ac[k] >= ac[k - 1] and ac[k] >= ac[k + 1]]
    if not peaks:
        return float("nan")
    k = max(peaks, key=lambda j: ac[j])
    # parabolic interpolation around the discrete peak
    y0, y1, y2 = ac[k - 1], ac[k], ac[k + 1]
    den = y0 - 2 * y1 + y2
    shift = 0.5 * (y0 - y2) / den if den != 0 else 0.0
    return float((k + shift) * dt)
