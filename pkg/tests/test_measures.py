import math

import numpy as np
import pytest

from gravtangle.gravity import SetupParams, three_qubit_state
from gravtangle.measures import (
    DEFAULT_SEED,
    Measure,
    OptimizerOpts,
    ProductAnsatz,
    alternating_maximization,
    bipartite_negativity,
    default_seed,
    detect_period,
    gm_general,
    gm_general_batch,
    gm_symmetric,
    lambda2_fit,
    negativity_tripartite,
    overlap2,
    symmetric_state,
    tau_sweep,
)
from gravtangle.qstate import PureState, density_of, partial_transpose

from oracles import abs2_symmetric, brute_force_lambda2

GHZ = PureState.from_dict({"000": 1, "111": 1}).normalize()


def test_overlap_examples():
    assert overlap2(symmetric_state(0.0), ProductAnsatz.symmetric(math.pi / 4, 0.0)) == pytest.approx(1, abs=1e-12)
    assert overlap2(GHZ, ProductAnsatz((0, 0, 0), (0, 0, 0))) == pytest.approx(0.5, abs=1e-12)


def test_overlap_matches_closed_form():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        a, t, x = rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)
        got = overlap2(symmetric_state(x), ProductAnsatz.symmetric(a, t))
        assert abs(got - abs2_symmetric(a, t, x)) < 1e-12


def test_overlap_size_mismatch():
    with pytest.raises(ValueError):
        overlap2(GHZ, ProductAnsatz.symmetric(0.1, 0.2, n=2))


def test_gm_symmetric_examples():
    res = gm_symmetric(math.pi)
    assert res.lambda2 == pytest.approx(0.5, abs=0.005)
    # the reported maximizer is one of several equivalent ones
    at_reported = overlap2(symmetric_state(math.pi), ProductAnsatz.symmetric(math.pi / 4, math.pi / 2))
    assert at_reported == pytest.approx(res.lambda2, abs=1e-6)
    assert gm_symmetric(math.pi / 2).lambda2 == pytest.approx(0.625, abs=0.005)
    zero = gm_symmetric(0.0)
    assert zero.lambda2 == pytest.approx(1, abs=1e-12) and zero.G == pytest.approx(0, abs=1e-12)


def test_gm_symmetric_is_mirror_symmetric():
    for x in np.linspace(0.2, 3.0, 5):
        assert gm_symmetric(x).lambda2 == pytest.approx(gm_symmetric(2 * math.pi - x).lambda2, abs=1e-9)


def test_gm_general_ghz():
    res = gm_general(GHZ)
    assert res.lambda2 == pytest.approx(0.5, abs=1e-6)
    assert res.G == pytest.approx(1, abs=1e-5)
    assert res.lambda2 == pytest.approx(brute_force_lambda2(GHZ.amplitudes), abs=1e-3)


def test_gm_general_ghz_locus_and_reported_maximizer():
    psi = three_qubit_state(2 * math.pi, math.pi)
    res = gm_general(psi)
    assert res.lambda2 == pytest.approx(0.5, abs=1e-6)
    q = math.pi / 4
    # (|0>+i|1>)(|0>-i|1>)(|0>+i|1>): the minus sign sits on the middle qubit
    reported = ProductAnsatz((q, q, q), (math.pi / 2, 3 * math.pi / 2, math.pi / 2))
    assert overlap2(psi, reported) == pytest.approx(res.lambda2, abs=1e-9)
    swapped = ProductAnsatz((q, q, q), (math.pi / 2, math.pi / 2, 3 * math.pi / 2))
    assert overlap2(psi, swapped) < 1e-12
    # the returned maximizer reproduces the value it claims
    assert overlap2(psi, res.argmax) == pytest.approx(res.lambda2, abs=1e-12)


def test_gm_general_product_state_converges_fast():
    rng = np.random.default_rng(5)
    vecs = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    psi = PureState(np.kron(np.kron(vecs[0], vecs[1]), vecs[2]))
    init = rng.normal(size=(1, 8, 3, 2)) + 1j * rng.normal(size=(1, 8, 3, 2))
    init /= np.linalg.norm(init, axis=-1, keepdims=True)
    lam, _, sweeps = alternating_maximization(psi.amplitudes[None], init, max_iter=500, tol=1e-12)
    assert lam.max() == pytest.approx(1, abs=1e-9)
    assert sweeps.min() <= 3  # one improving sweep, one confirming sweep (plus rounding slack)


def test_alternating_maximization_is_monotone():
    rng = np.random.default_rng(9)
    psis = rng.normal(size=(4, 16)) + 1j * rng.normal(size=(4, 16))
    psis /= np.linalg.norm(psis, axis=1, keepdims=True)
    init = rng.normal(size=(4, 6, 4, 2)) + 1j * rng.normal(size=(4, 6, 4, 2))
    init /= np.linalg.norm(init, axis=-1, keepdims=True)
    hist = []
    alternating_maximization(psis, init, max_iter=200, tol=1e-12, history=hist)
    steps = np.diff(np.stack(hist), axis=0)
    assert steps.min() >= -1e-12


def test_gm_general_matches_brute_force_on_random_state():
    rng = np.random.default_rng(21)
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi = PureState(v).normalize()
    res = gm_general(psi)
    ref = brute_force_lambda2(psi.amplitudes)
    assert res.lambda2 >= ref - 1e-9  # the grid can only under-estimate
    assert res.lambda2 == pytest.approx(ref, abs=1e-3)


def test_gm_is_deterministic_for_a_seed():
    opts = OptimizerOpts(n_restarts=16, seed=123)
    psi = three_qubit_state(1.0, 2.0)
    a, b = gm_general(psi, opts), gm_general(psi, opts)
    assert a.lambda2 == b.lambda2 and a.argmax == b.argmax


def test_batch_matches_single_points():
    opts = OptimizerOpts(n_restarts=16)
    states = [three_qubit_state(x, 2 * x) for x in (0.3, 1.7, 2.9)]
    batch = gm_general_batch(states, opts)
    single = [gm_general_batch([s], opts, point_offset=k)[0] for k, s in enumerate(states)]
    assert [r.lambda2 for r in batch] == [r.lambda2 for r in single]


def test_seed_environment_override(monkeypatch):
    monkeypatch.delenv("GRAVTANGLE_SEED", raising=False)
    assert default_seed() == DEFAULT_SEED
    monkeypatch.setenv("GRAVTANGLE_SEED", "77")
    assert default_seed() == 77 and OptimizerOpts().seed == 77


def test_gm_general_qubit_limit():
    with pytest.raises(ValueError):
        gm_general(PureState.basis("0" * 9))


def test_fit_values():
    assert lambda2_fit(math.pi) == pytest.approx(0.503, abs=1e-3)
    assert lambda2_fit(math.pi / 2) == pytest.approx(0.593, abs=1e-3)
    assert lambda2_fit(0.0) == pytest.approx(0.952, abs=1e-3)


def test_negativity_examples():
    assert negativity_tripartite(GHZ) == pytest.approx(1, abs=1e-9)
    assert negativity_tripartite(PureState.basis("010")) == pytest.approx(0, abs=1e-12)


def test_negativity_matches_dense_eigensolver():
    psi = three_qubit_state(math.pi / 2, math.pi / 2)
    rho = density_of(psi)
    vals = []
    for q in (1, 2, 3):
        ev = np.linalg.eigvalsh(partial_transpose(rho, [q]).entries)
        vals.append(-2 * ev[ev < 0].sum())
        assert bipartite_negativity(psi, q) == pytest.approx(vals[-1], abs=1e-9)
    assert negativity_tripartite(psi) == pytest.approx(np.prod(vals) ** (1 / 3), abs=1e-9)


def test_tau_sweep_starts_separable():
    s = SetupParams(n_masses=3)
    taus, lam = tau_sweep(s, (0.0, 2.0), 3, Measure.LAMBDA2, OptimizerOpts(n_restarts=8))
    _, neg = tau_sweep(s, (0.0, 2.0), 3, Measure.NEGATIVITY)
    assert taus[0] == 0 and lam[0] == pytest.approx(1, abs=1e-12) and neg[0] == pytest.approx(0, abs=1e-12)


def test_tau_sweep_validation():
    s = SetupParams(n_masses=3)
    with pytest.raises(ValueError):
        tau_sweep(s, (1.0, 1.0), 5)
    with pytest.raises(ValueError):
        tau_sweep(s, (0.0, 1.0), 1)


def test_detect_period():
    t = np.linspace(0, 60, 601)
    assert detect_period(t, np.cos(2 * math.pi * t / 17.3) ** 2) == pytest.approx(17.3 / 2, rel=0.01)
    assert detect_period(t, np.sin(2 * math.pi * t / 21.0) + 0.3 * np.sin(6 * math.pi * t / 21.0)) == pytest.approx(
        21.0, rel=0.01)
