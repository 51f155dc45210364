import math

import numpy as np
import pytest

import openqs as oq

SQRT_2PI = math.sqrt(2.0 * math.pi)


def make_params(g, gamma, delta, c1=1.0, c0=0.0):
    omega0 = 10.0
    return oq.JCParams(g, gamma, omega0, omega0 - delta, c1, c0)


def test_linalg_basics():
    sz = np.diag([1.0, -1.0]).astype(complex)
    k = oq.kron(sz, np.eye(2, dtype=complex))
    assert np.allclose(np.diag(k), [1, 1, -1, -1])

    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / math.sqrt(2)
    reduced = oq.partial_trace(np.outer(bell, bell.conj()), 2, 2, "A")
    assert np.allclose(reduced, np.eye(2) / 2)

    w, v = oq.eigh(np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.allclose(w, [-1.0, 1.0])
    assert np.allclose(v.conj().T @ v, np.eye(2), atol=1e-12)

    u = oq.expm(-0.5j * math.pi * sz)
    assert np.allclose(u, np.diag([-1j, 1j]), atol=1e-14)


def test_states():
    plus = np.array([1, 1], dtype=complex) / math.sqrt(2)
    rho = oq.project(plus)
    assert np.allclose(rho, 0.25 * np.full((2, 2), 2.0))
    assert oq.expectation(rho, np.eye(2, dtype=complex)) == pytest.approx(1.0)
    ground = oq.project(np.array([1, 0], dtype=complex))
    excited = oq.project(np.array([0, 1], dtype=complex))
    assert oq.trace_distance(ground, excited) == pytest.approx(1.0)


def test_channel_round_trip_and_dilation():
    choi = oq.random_cptp_choi(2, seed=7)
    kraus = oq.kraus_from_choi(2, choi)
    assert len(kraus) <= 4
    back = oq.choi_from_kraus(2, kraus)
    assert np.max(np.abs(back - choi)) < 1e-10

    report = oq.is_cptp(choi, 2)
    assert report["cp"] and report["tp"]

    dil = oq.dilate(2, choi)
    u = dil["unitary"]
    assert np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) < 1e-10
    rho = oq.random_density(2, seed=3)
    joint = np.kron(rho, np.outer(dil["omega"], dil["omega"].conj()))
    reduced = oq.partial_trace(u @ joint @ u.conj().T, 2, dil["dim_r"], "A")
    assert np.max(np.abs(reduced - oq.apply_channel(2, choi, rho))) < 1e-9


def test_ppt_bell():
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / math.sqrt(2)
    assert oq.ppt_min_eig(oq.project(bell), 2, 2) == pytest.approx(-0.5, abs=1e-12)


def test_gksl_evolution_and_decomposition():
    sm = np.array([[0, 1], [0, 0]], dtype=complex)  # lowers |1> (index 1) to |0>
    h = np.zeros((2, 2), dtype=complex)
    excited = np.diag([0.0, 1.0]).astype(complex)
    rho_t = oq.evolve(h, [(sm, 0.7)], excited, 1.3)
    assert rho_t[1, 1].real == pytest.approx(math.exp(-0.7 * 1.3), abs=1e-10)

    lmat = oq.superop_from_generator(np.diag([1.0, -1.0]).astype(complex), [(sm, 0.5)])
    dec = oq.gksl_decompose(2, lmat)
    assert dec["residual"] < 1e-9
    assert dec["rates"] == pytest.approx([0.5], abs=1e-10)
    assert oq.semigroup_check(h, [(sm, 0.7)], 0.4, 0.9) < 1e-9

    with pytest.raises(oq.NotCompletelyPositiveGeneratorError):
        d = 2
        transpose_superop = np.zeros((4, 4), dtype=complex)
        for j in range(d):
            for i in range(d):
                e = np.zeros((d, d), dtype=complex)
                e[i, j] = 1.0
                transpose_superop[:, j * d + i] = (e.T - e).flatten(order="F")
        oq.gksl_decompose(2, transpose_superop)


def test_two_level_dynamics():
    p = make_params(1.0, 2.0, 0.0)
    assert oq.correlation_f(0.0, p) == pytest.approx(1.0 / SQRT_2PI)
    assert abs(oq.correlation_f_quadrature(1.0, p) - oq.correlation_f(1.0, p)) < 1e-6
    assert oq.c1_exact(1.0, p).real == pytest.approx(0.88994339517344325, abs=1e-12)

    grid = list(oq.uniform_grid(2.0, 1000))
    vol = oq.c1_volterra(grid, p)
    worst = max(abs(v - oq.c1_exact(t, p)) for v, t in zip(vol, grid))
    assert worst < 1e-4

    gamma, shift = oq.rates(1.0, p)
    assert shift == pytest.approx(0.0, abs=1e-12)
    assert gamma == pytest.approx(oq.gamma_resonant(1.0, p), abs=1e-10)

    traj = oq.integrate_master(p, list(oq.uniform_grid(1.0, 500)))
    assert not traj["aborted"]
    final = traj["rho"][-1]
    assert np.max(np.abs(final - oq.rho_interaction(1.0, p))) < 1e-6


def test_discrete_reservoir():
    p = make_params(1.0, 2.0, 0.0)
    res = oq.sample_reservoir(p, 300, 20.0)
    total = sum(c * c for c in res.couplings)
    assert abs(total - 1.0 / SQRT_2PI) <= res.c0_error_bound

    grid = list(oq.uniform_grid(1.0, 2000))
    run = oq.simulate_discrete(res, p, grid)
    assert max(abs(n - 1.0) for n in run["excitation_norm"]) < 1e-8
    worst = max(abs(c - oq.c1_exact(t, p)) for c, t in zip(run["c1"], grid))
    assert worst < 2e-2
