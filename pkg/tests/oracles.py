"""Independent reference computations used by the unit and acceptance tests.

None of these call into the package's numerical kernels.
"""
import math

import numpy as np


def faddeev_leverrier(a):
    """Characteristic polynomial coefficients (highest power first)."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    coeffs = [1.0 + 0j]
    m = np.zeros_like(a)
    eye = np.eye(n)
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * eye
        coeffs.append(-np.trace(a @ m) / k)
    return np.array(coeffs)


def charpoly_eigenvalues(a):
    roots = np.roots(faddeev_leverrier(a))
    return np.sort(roots.real)


def random_hermitian(rng, dim, spread=1.0):
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return spread * (x + x.conj().T) / 2


def abs2_symmetric(alpha, theta, dphi3):
    """|<phi^{x3}|psi>|^2 written out by hand.

    phi = cos a|0> + e^{it} sin a|1>, psi = (|000>+|111> + e^{ix} * rest)/sqrt 8.
    """
    c, s = math.cos(alpha), math.sin(alpha)
    e = complex(math.cos(theta), -math.sin(theta))  # e^{-it}
    ex = complex(math.cos(dphi3), math.sin(dphi3))
    amp = c**3 + s**3 * e**3 + ex * (3 * c * c * s * e + 3 * c * s * s * e * e)
    return abs(amp) ** 2 / 8


def pt_matrix_by_index(rho, n, qubit):
    """Partial transpose via explicit index arithmetic (qubit 1 = most significant bit)."""
    dim = 2**n
    shift = n - qubit
    out = np.empty_like(rho)
    for i in range(dim):
        for j in range(dim):
            bi, bj = (i >> shift) & 1, (j >> shift) & 1
            ii = i ^ ((bi ^ bj) << shift)
            jj = j ^ ((bi ^ bj) << shift)
            out[ii, jj] = rho[i, j]
    return out


def brute_force_lambda2(psi_amps, step=math.pi / 128, chunk=2048):
    """max |<v1 v2 v3|psi>|^2: grid over sites 1 and 2, site 3 optimal in closed form.

    Each grid vector is (cos a, e^{it} sin a) with a in [0, pi/2], t in [0, 2pi).
    """
    t = np.asarray(psi_amps, dtype=complex).reshape(2, 2, 2)
    alphas = np.arange(0, math.pi / 2 + 1e-12, step)
    thetas = np.arange(0, 2 * math.pi - 1e-12, step)
    A, T = np.meshgrid(alphas, thetas, indexing="ij")
    vs = np.stack([np.cos(A).ravel(), (np.exp(1j * T) * np.sin(A)).ravel()], axis=1)
    first = np.einsum("ai,ijk->akj", vs.conj(), t).reshape(-1, 2)  # rows (v1, k), columns j
    best = 0.0
    for lo in range(0, len(vs), chunk):
        block = first @ vs[lo:lo + chunk].conj().T  # (V*2, b)
        p = block.real**2 + block.imag**2
        best = max(best, float((p[0::2] + p[1::2]).max()))
    return best


def random_invertible(rng, max_cond=10.0):
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        if np.linalg.cond(m) < max_cond:
            return m


def local_transform(amps, ops):
    t = np.asarray(amps, dtype=complex).reshape((2,) * len(ops))
    for k, op in enumerate(ops):
        t = np.moveaxis(np.tensordot(op, t, axes=([1], [k])), 0, k)
    v = t.ravel()
    return v / np.linalg.norm(v)


def wootters_concurrence(rho):
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    r = rho @ yy @ rho.conj() @ yy
    lam = np.sqrt(np.clip(np.sort(np.linalg.eigvals(r).real)[::-1], 0, None))
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def ckw_tangle(amps):
    """Three-tangle from the monogamy identity: 4 det rho_1 - C_12^2 - C_13^2."""
    a = np.asarray(amps, dtype=complex)
    t = (a / np.linalg.norm(a)).reshape(2, 2, 2)
    rho1 = np.einsum("ijk,ljk->il", t, t.conj())
    rho12 = np.einsum("ijk,lmk->ijlm", t, t.conj()).reshape(4, 4)
    rho13 = np.einsum("ijk,ljm->iklm", t, t.conj()).reshape(4, 4)
    return 4 * np.linalg.det(rho1).real - wootters_concurrence(rho12) ** 2 - wootters_concurrence(rho13) ** 2


def unit_phase_line(bits, d=1.0, l=1.0):
    """Sum of 1/r over pairs for masses on a line split sideways by l (G = m = tau = hbar = 1)."""
    total = 0.0
    n = len(bits)
    for i in range(n):
        for j in range(i + 1, n):
            r = (j - i) * d if bits[i] == bits[j] else math.sqrt(((j - i) * d) ** 2 + l * l)
            total += 1 / r
    return total
