import numpy as np
import pytest

from chaoslab import ensembles as ens
from chaoslab.rng import substreams
from chaoslab.spectral import eigenphases, ks_distance, ratio_statistics

from conftest import mc_band


def test_ginibre_moment_1x1():
    vals = np.array([np.abs(ens.sample_ginibre(1, 1, 0, rng=r)[0, 0]) ** 2
                     for r in substreams(0, 100_000)])
    assert mc_band(vals, 2.0)


def test_ginibre_determinism_and_errors():
    a = ens.sample_ginibre(2, 3, 42)
    b = ens.sample_ginibre(2, 3, 42)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, ens.sample_ginibre(2, 3, 43))
    with pytest.raises(ValueError):
        ens.sample_ginibre(0, 3, 1)


def test_ginibre_singular_values_marchenko_pastur():
    # entries have E|G|^2 = 2, so squared singular values / (2 N) follow
    # the Q = 1 MP law on [0, 4]
    from chaoslab.entanglement import mp_cdf
    N = 64
    xs = []
    for r in substreams(7, 300):
        g = ens.sample_ginibre(N, N, 0, rng=r)
        xs.append(np.linalg.svd(g, compute_uv=False) ** 2 / (2.0 * N))
    assert ks_distance(np.concatenate(xs), lambda v: mp_cdf(1.0, v)) < 0.05


def test_cue_low_moments():
    us = np.stack([ens.sample_cue(8, 0, rng=r) for r in substreams(1, 30_000)])
    assert mc_band(us[:, 0, 1].real, 0.0) and mc_band(us[:, 0, 1].imag, 0.0)
    assert mc_band(np.abs(us[:, 0, 1]) ** 2, 1.0 / 8.0)
    # fourth moment with all indices equal: 2/(N(N+1))
    assert mc_band(np.abs(us[:, 0, 0]) ** 4, 2.0 / (8 * 9))


def test_cue_n1_uniform_phase():
    th = np.array([np.angle(ens.sample_cue(1, 0, rng=r)[0, 0])
                   for r in substreams(2, 20_000)]) % (2 * np.pi)
    assert ks_distance(th, lambda v: v / (2 * np.pi)) < 0.02
    assert np.allclose(np.abs(np.exp(1j * th)), 1.0)


def test_coe_symmetric_and_ratio():
    rs = []
    for r in substreams(3, 10):
        u = ens.sample_coe(500, 0, rng=r)
        assert np.max(np.abs(u - u.T)) < 1e-10
        assert ens.unitarity_residual(u) < 1e-10
        rs.append(ratio_statistics(eigenphases(u))[0])
    assert abs(np.mean(rs) - 0.5359) < 0.01


def test_cue_ratio():
    rs = [ratio_statistics(eigenphases(ens.sample_cue(500, 0, rng=r)))[0]
          for r in substreams(4, 10)]
    assert abs(np.mean(rs) - 0.6027) < 0.01


def _semicircle_cdf(N):
    R = np.sqrt(2.0 * N)

    def cdf(E):
        u = np.clip(E / R, -1.0, 1.0)
        return 0.5 + (u * np.sqrt(1.0 - u ** 2) + np.arcsin(u)) / np.pi
    return cdf


def test_gue_semicircle():
    N = 256
    eigs = np.concatenate([np.linalg.eigvalsh(ens.sample_gue(N, 0, rng=r))
                           for r in substreams(5, 100)])
    assert ks_distance(eigs, _semicircle_cdf(N)) < 0.05


def test_goe_two_level_spacing_surmise():
    from chaoslab.spectral import surmise_cdf
    gaps = np.array([np.diff(np.linalg.eigvalsh(ens.sample_goe(2, 0, rng=r)))[0]
                     for r in substreams(6, 40_000)])
    s = gaps / gaps.mean()
    assert ks_distance(s, lambda v: surmise_cdf(1, v)) < 0.01


def test_hermiticity():
    h = ens.sample_gue(32, 9)
    assert np.array_equal(h, h.conj().T)
    g = ens.sample_goe(32, 9)
    assert np.array_equal(g, g.T)


def test_haar_state_porter_thomas():
    N = 100
    states = np.stack([ens.sample_haar_state(N, 0, rng=r)
                       for r in substreams(8, 10_000)])
    t = np.abs(states) ** 2
    assert np.allclose(t.sum(axis=1), 1.0, atol=1e-12)
    # pooled single-intensity distribution vs N e^{-N t}
    assert ks_distance(t.reshape(-1), lambda v: 1.0 - np.exp(-N * v)) < 0.02
    ipr = (t ** 2).sum(axis=1)
    assert mc_band(ipr, 2.0 / (N + 1))


def test_induced_state_basics():
    rho = ens.sample_induced_state(2, 1, 11)
    assert abs(np.trace(rho @ rho).real - 1.0) < 1e-12      # rank-1: pure
    ens.assert_density_matrix(rho)
    purities = [np.trace(np.linalg.matrix_power(
        ens.sample_induced_state(8, 8, 0, rng=r), 2)).real
        for r in substreams(12, 4000)]
    assert mc_band(purities, 16.0 / 65.0)


def test_induced_state_mp_q1():
    from chaoslab.entanglement import mp_cdf
    N = 64
    xs = np.concatenate([N * np.linalg.eigvalsh(
        ens.sample_induced_state(N, N, 0, rng=r)) for r in substreams(13, 150)])
    assert ks_distance(xs, lambda v: mp_cdf(1.0, v)) < 0.05


def test_haar_left_invariance_under_permutation():
    # statistics of P U and U agree at moment orders 2 and 4
    P = np.eye(8)[np.random.default_rng(0).permutation(8)]
    m2u, m2pu, m4u, m4pu = [], [], [], []
    for r in substreams(14, 8000):
        u = ens.sample_cue(8, 0, rng=r)
        pu = P @ u
        m2u.append(np.abs(u[0, 0]) ** 2)
        m2pu.append(np.abs(pu[0, 0]) ** 2)
        m4u.append(np.abs(u[0, 0]) ** 4)
        m4pu.append(np.abs(pu[0, 0]) ** 4)
    for a, b in ((m2u, m2pu), (m4u, m4pu)):
        a, b = np.asarray(a), np.asarray(b)
        se = np.sqrt(a.var() / a.size + b.var() / b.size)
        assert abs(a.mean() - b.mean()) < 4 * se


def test_weingarten_fourth_moment_table_n3():
    # MC moments of u u u* u* at N=3 against the closed Weingarten form;
    # with 3^8 = 6561 index patterns an exact per-entry 3 sigma gate would
    # produce false alarms, so: all z-scores < 5 and 99% < 3.
    from chaoslab.designs import haar_fourth_moment_tensor
    N, S = 3, 200_000
    acc = np.zeros((N,) * 8, dtype=complex)
    acc2 = np.zeros((N,) * 8)
    chunk = 2000
    done = 0
    for r in substreams(15, S // chunk):
        us = np.stack([ens.sample_cue(N, 0, rng=r) for _ in range(chunk)])
        t = np.einsum("sae,sbf,scg,sdh->abcdefgh", us, us,
                      us.conj(), us.conj(), optimize=True)
        acc += t
        # second moment of the summand, for the per-entry MC error
        t2 = np.einsum("sae,sbf,scg,sdh->abcdefgh", np.abs(us) ** 2,
                       np.abs(us) ** 2, np.abs(us) ** 2, np.abs(us) ** 2,
                       optimize=True)
        acc2 += t2
        done += chunk
    est = acc / done      # index order (i1, i2, i1', i2', j1, j2, j1', j2')
    theory = haar_fourth_moment_tensor(N)
    var = np.maximum(acc2 / done - np.abs(est) ** 2, 1e-12)
    z = np.abs(est - theory) / np.sqrt(var / done)
    assert np.max(z) < 5.0
    assert np.mean(z < 3.0) > 0.99


def test_ensemble_spec_roundtrip_and_substreams():
    spec = ens.EnsembleSpec(ensemble="cue", dim=4, count=3, seed=99)
    again = ens.EnsembleSpec.from_dict(spec.to_dict())
    assert again == spec
    batch1 = ens.sample(spec)
    batch2 = ens.sample(spec)
    for a, b in zip(batch1, batch2):
        assert np.array_equal(a, b)
        assert ens.unitarity_residual(a) < 1e-10
    with pytest.raises(ValueError):
        ens.sample(ens.EnsembleSpec(ensemble="nope", dim=2, count=1, seed=0))
