import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst
from scipy.integrate import quad

from chaoslab import entanglement as ent
from chaoslab.ensembles import sample_cue, sample_haar_state
from chaoslab.rng import substreams

from conftest import mc_band


def test_schmidt_product_and_maximally_entangled():
    a = sample_haar_state(4, 1)
    b = sample_haar_state(4, 2)
    lam = ent.schmidt(np.kron(a, b), 4, 4).eigenvalues
    assert abs(lam[0] - 1.0) < 1e-12 and np.all(lam[1:] < 1e-12)
    bell = np.eye(4).reshape(-1) / 2.0
    lam = ent.schmidt(bell, 4, 4).eigenvalues
    assert np.allclose(lam, 0.25, atol=1e-12)
    with pytest.raises(ValueError):
        ent.schmidt(np.ones(6) / np.sqrt(6), 4, 2)


def test_schmidt_marginal_symmetry():
    psi = sample_haar_state(3 * 7, 3)
    lam_a = ent.schmidt(psi, 3, 7).eigenvalues
    rho_b = np.einsum("ij,ik->jk", psi.reshape(3, 7).conj(), psi.reshape(3, 7))
    lam_b = np.sort(np.linalg.eigvalsh(rho_b))[::-1]
    assert np.allclose(lam_a, lam_b[:3], atol=1e-10)
    assert np.all(lam_b[3:] < 1e-10)


def test_entropies_limits_and_orderings():
    lam = np.array([0.5, 0.3, 0.2])
    rec = ent.entropies(lam, q_list=(0.5, 1 - 1e-4, 1.0, 1 + 1e-4, 2.0, 3.0))
    s_vn = rec["vn"]
    assert abs(rec["renyi"][1 - 1e-4] - s_vn) < 1e-3
    assert abs(rec["renyi"][1 + 1e-4] - s_vn) < 1e-3
    assert abs(rec["tsallis"][1 + 1e-4] - s_vn) < 1e-3
    qs = sorted(rec["renyi"])
    vals = [rec["renyi"][q] for q in qs]
    assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))  # nonincreasing
    uniform = np.full(5, 0.2)
    assert abs(ent.entropies(uniform)["renyi"][2.0] - np.log(5)) < 1e-12
    bell = ent.schmidt(np.eye(4).reshape(-1) / 2.0, 4, 4)
    rec = ent.entropies(bell)
    assert abs(rec["vn"] - np.log(4)) < 1e-12
    assert abs(rec["linear"] - 0.75) < 1e-12


@settings(deadline=None, max_examples=50)
@given(hst.lists(hst.floats(1e-6, 1.0), min_size=2, max_size=12))
def test_renyi_nonincreasing_in_q_property(raw):
    lam = np.asarray(raw) / np.sum(raw)
    rec = ent.entropies(lam, q_list=(0.5, 1.0, 2.0, 3.0))
    vals = [rec["renyi"][q] for q in (0.5, 1.0, 2.0, 3.0)]
    assert all(a >= b - 1e-9 for a, b in zip(vals, vals[1:]))


def test_page_and_lubkin_closed_forms():
    assert abs(ent.page_average(2, 2) - 1.0 / 3.0) < 1e-12
    purity, s_lin = ent.lubkin_average(2, 2)
    assert abs(purity - 0.8) < 1e-12
    assert abs(ent.page_average(64, 64) - (np.log(64) - 0.5)) < 0.02
    assert abs(ent.lubkin_average(8, 8)[0] - 16.0 / 65.0) < 1e-12


def test_page_monte_carlo():
    svn = [ent.schmidt(sample_haar_state(64, 0, rng=r), 8, 8).entropy_vn
           for r in substreams(5, 10_000)]
    assert abs(np.mean(svn) - ent.page_average(8, 8)) < 0.01


def test_mp_density_normalization_and_mean():
    for Q in (1.0, 2.0, 4.0):
        xm, xp = ent.mp_support(Q)
        norm = quad(lambda x: ent.mp_density(Q, x), max(xm, 0), xp,
                    points=[xm, xp], limit=300)[0]
        mean = quad(lambda x: x * ent.mp_density(Q, x), max(xm, 0), xp,
                    points=[xm, xp], limit=300)[0]
        assert abs(norm - 1.0) < 1e-6
        assert abs(mean - 1.0) < 1e-6
    assert ent.mp_density(1.0, np.array([5.0]))[0] == 0.0
    with pytest.raises(ValueError):
        ent.mp_density(0.5, 1.0)


def test_partial_transpose_identities():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
        rho = a @ a.conj().T
        rho /= np.trace(rho).real
        pt = ent.partial_transpose(rho, 3, 4)
        assert np.max(np.abs(ent.partial_transpose(pt, 3, 4) - rho)) < 1e-12
        assert abs(np.trace(pt) - 1.0) < 1e-10
        assert abs(np.trace(pt @ pt) - np.trace(rho @ rho)) < 1e-10
    # product state: spectrum unchanged
    ra = np.diag([0.7, 0.3])
    rb = np.diag([0.6, 0.4])
    rho = np.kron(ra, rb)
    pt = ent.partial_transpose(rho, 2, 2)
    assert np.allclose(np.sort(np.linalg.eigvalsh(pt)),
                       np.sort(np.linalg.eigvalsh(rho)), atol=1e-12)


def test_pt_third_moment():
    assert abs(ent.pt_third_moment_avg(2, 2, 1) - 0.7) < 1e-12
    for perm in ((3, 5, 7), (5, 7, 3), (7, 3, 5)):
        assert abs(ent.pt_third_moment_avg(*perm)
                   - ent.pt_third_moment_avg(3, 5, 7)) < 1e-15


def test_pt_third_moment_monte_carlo():
    vals = []
    for r in substreams(7, 30_000):
        g = r.standard_normal((4, 8)) + 1j * r.standard_normal((4, 8))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        pt = ent.partial_transpose(rho, 2, 2)
        vals.append(np.trace(pt @ pt @ pt).real)
    exact = ent.pt_third_moment_avg(2, 2, 8)
    assert abs(np.mean(vals) - exact) / exact < 0.01


def test_negativity_and_model():
    mu = np.array([0.5, 0.3, 0.2])
    neg, ln = ent.negativity(mu)
    assert neg == 0.0 and abs(ln) < 1e-12
    mu = np.array([-0.1, 0.4, 0.7])
    neg, ln = ent.negativity(mu)
    assert abs(neg - 0.1) < 1e-12 and abs(ln - np.log(1.2)) < 1e-12
    model = ent.pt_semicircle_model(8, 8, 64)
    assert abs(model.radius - 2.0) < 1e-12
    assert model.is_npt and model.npt_threshold == 256
    assert not ent.pt_semicircle_model(8, 8, 1024).is_npt
    assert abs(model.deep_npt_log_negativity
               - np.log(8.0 / (3 * np.pi))) < 1e-12
    # density integrates to 1 and centers at 1
    x = np.linspace(model.center - model.radius, model.center + model.radius,
                    20_001)
    dens = model.density(x)
    assert abs(np.trapezoid(dens, x) - 1.0) < 1e-4
    assert abs(np.trapezoid(x * dens, x) - 1.0) < 1e-4
    assert abs(model.cdf(model.center) - 0.5) < 1e-12


def test_concurrence_special_states():
    bell = np.zeros((4, 4))
    bell[0, 0] = bell[0, 3] = bell[3, 0] = bell[3, 3] = 0.5
    assert abs(ent.concurrence(bell).concurrence - 1.0) < 1e-10
    mm = ent.concurrence(np.eye(4) / 4.0)
    assert abs(mm.pre_concurrence + 0.5) < 1e-12
    assert mm.concurrence == 0.0
    a, b = sample_haar_state(2, 1), sample_haar_state(2, 2)
    prod = np.kron(a, b)
    rec = ent.concurrence(np.outer(prod, prod.conj()))
    assert rec.concurrence < 1e-8
    with pytest.raises(ValueError):
        ent.concurrence(np.eye(3))
    with pytest.raises(ValueError):
        ent.concurrence(np.diag([1.0, 1j, 0, 0]))


def test_concurrence_local_unitary_invariance():
    rng = np.random.default_rng(3)
    g = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    c0 = ent.concurrence(rho).concurrence
    for r in substreams(8, 10):
        u = np.kron(sample_cue(2, 0, rng=r), sample_cue(2, 0, rng=r))
        assert abs(ent.concurrence(u @ rho @ u.conj().T).concurrence - c0) < 1e-8


def test_preconcurrence_statistics_smoke():
    c, p = ent.preconcurrence_statistics(4, 20_000, seed=9)
    assert abs(p - 0.758) < 0.02
    assert np.all(c <= 1.0 + 1e-9)
    with pytest.raises(ValueError):
        ent.preconcurrence_statistics(2, 10, seed=0)


def test_xmin_definition_consistency():
    N3 = 16
    x = ent.xmin_scaled_statistic(N3, 5000, seed=10)
    p_direct = float(np.mean(x < -np.sqrt(N3) / 4.0))
    assert abs(p_direct - ent.npt_probability(N3, 5000, seed=10)) < 1e-12


def test_mp_cdf_consistency():
    for Q in (1.0, 4.0):
        xm, xp = ent.mp_support(Q)
        assert ent.mp_cdf(Q, xm - 0.1) == 0.0
        assert ent.mp_cdf(Q, xp + 0.1) == 1.0
        mid = quad(lambda x: ent.mp_density(Q, x), max(xm, 0),
                   (xm + xp) / 2, points=[xm], limit=300)[0]
        assert abs(ent.mp_cdf(Q, (xm + xp) / 2) - mid) < 1e-4
