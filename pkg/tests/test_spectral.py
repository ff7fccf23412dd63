import numpy as np
import pytest
from scipy.integrate import quad

from chaoslab import spectral as sp
from chaoslab.ensembles import sample_cue
from chaoslab.rng import generator, substreams


def test_eigenphases_identity_and_diag():
    spec = sp.eigenphases(np.eye(4))
    assert np.allclose(spec.phases, 0.0, atol=1e-12)
    spec = sp.eigenphases(np.diag([1.0, 1j, -1.0, -1j]))
    assert np.allclose(spec.phases, [0, np.pi / 2, np.pi, 3 * np.pi / 2],
                       atol=1e-12)


def test_eigenphases_rejects_nonunitary():
    with pytest.raises(ValueError):
        sp.eigenphases(np.diag([1.0, 2.0]))


def test_cue_phase_uniformity():
    from scipy.stats import chisquare
    phases = sp.eigenphases(sample_cue(500, 3)).phases
    counts, _ = np.histogram(phases, bins=10, range=(0, 2 * np.pi))
    assert chisquare(counts).pvalue > 0.01


def test_unfolded_closure_and_picket_fence():
    phases = 2 * np.pi * np.arange(50) / 50
    spec = sp.EigenphaseSpectrum(phases)
    assert np.allclose(spec.spacings, 1.0, atol=1e-9)
    assert abs(spec.spacings.sum() - 50) < 1e-9
    r_mean, r, dropped = sp.ratio_statistics(spec)
    assert np.allclose(r, 1.0) and dropped == 0
    # closure holds for any spectrum
    spec = sp.eigenphases(sample_cue(64, 5))
    assert abs(spec.spacings.sum() - 64) < 1e-9
    assert abs(spec.spacings.mean() - 1.0) < 1e-9


def test_surmise_normalization_and_mean():
    for beta in (1, 2, 4):
        norm = quad(lambda s: sp.wigner_surmise(beta, s), 0, np.inf)[0]
        mean = quad(lambda s: s * sp.wigner_surmise(beta, s), 0, np.inf)[0]
        assert abs(norm - 1.0) < 1e-8 and abs(mean - 1.0) < 1e-8
    norm = quad(sp.poisson_pdf, 0, np.inf)[0]
    mean = quad(lambda s: s * sp.poisson_pdf(s), 0, np.inf)[0]
    assert abs(norm - 1.0) < 1e-8 and abs(mean - 1.0) < 1e-8
    with pytest.raises(ValueError):
        sp.wigner_surmise(3, 1.0)


def test_gue_level_repulsion_prefactor():
    s = 1e-6
    assert abs(sp.wigner_surmise(2, s) / s ** 2 - 32.0 / np.pi ** 2) < 1e-4


def test_ratio_statistics_poisson_synthetic():
    phases = generator(11).random(100_000) * 2 * np.pi
    r_mean, _, _ = sp.ratio_statistics(sp.EigenphaseSpectrum(phases))
    assert abs(r_mean - sp.r_mean_theory("poisson")) < 0.005


def test_ratio_statistics_cue():
    rs = [sp.ratio_statistics(sp.eigenphases(sample_cue(500, 0, rng=r)))[0]
          for r in substreams(12, 12)]
    assert abs(np.mean(rs) - sp.r_mean_theory("gue")) < 0.01


def test_ratio_invariance_under_global_phase():
    U = sample_cue(128, 13)
    r1 = sp.ratio_statistics(sp.eigenphases(U))[0]
    r2 = sp.ratio_statistics(sp.eigenphases(np.exp(0.7j) * U))[0]
    assert abs(r1 - r2) < 1e-9


def test_ratio_drops_degenerate_spacings():
    phases = np.array([0.0, 0.0, 1.0, 2.0, 3.0])
    r_mean, r, dropped = sp.ratio_statistics(sp.EigenphaseSpectrum(phases))
    assert dropped == 2


def test_sff_single_identity_and_n0():
    K = sp.spectral_form_factor([np.eye(16)], n_max=5)
    assert np.allclose(K, 16.0)
    K = sp.spectral_form_factor([sample_cue(16, 0)], n_max=3)
    assert abs(K[0] - 16.0) < 1e-9


def test_sff_dimension_mismatch():
    with pytest.raises(ValueError):
        sp.sff_from_phases([np.zeros(4), np.zeros(5)], 3)


def test_sff_theory_values():
    assert sp.sff_theory("gue", 0.5) == 0.5
    assert sp.sff_theory("gue", 2.0) == 1.0
    assert np.allclose(sp.sff_theory("poisson", [0.3, 1.5]), 1.0)
    goe_left = sp.sff_theory("goe", 1.0 - 1e-13)
    goe_right = sp.sff_theory("goe", 1.0 + 1e-13)
    assert abs(goe_left - goe_right) < 1e-9
    assert abs(sp.sff_theory("goe", 1.0) - (2.0 - np.log(3.0))) < 1e-12


def test_ks_distance_uniform():
    x = generator(14).random(20_000)
    assert sp.ks_distance(x, lambda v: v) < 0.02
