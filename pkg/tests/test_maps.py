from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from chaoslab import maps as mp
from chaoslab.constants import GOLDEN_PHASE
from chaoslab.rng import generator


def test_standard_step_fixed_point_and_free_rotation():
    assert mp.classical_standard_step((0.0, 0.0), 10.0) == (0.0, 0.0)
    q1, p1 = mp.classical_standard_step((0.3, 0.2), 0.0)
    assert np.isclose(q1, 0.5) and np.isclose(p1, 0.2)


@settings(deadline=None, max_examples=200)
@given(hst.floats(0, 1, exclude_max=True), hst.floats(0, 50))
def test_standard_map_area_preserving(q, K):
    assert np.isclose(np.linalg.det(mp.standard_map_jacobian(q, K)), 1.0)


@settings(deadline=None, max_examples=100)
@given(hst.floats(0, 1, exclude_max=True), hst.floats(0, 1, exclude_max=True),
       hst.floats(0, 30))
def test_standard_step_stays_on_torus(q, p, K):
    q1, p1 = mp.classical_standard_step((q, p), K)
    assert 0.0 <= q1 < 1.0 and 0.0 <= p1 < 1.0


def test_lyapunov_matches_chirikov():
    # ln(K/2) + 1/(K^2 - 4): 1.61985 at K = 10, 2.30511 at K = 20
    lam10 = mp.classical_lyapunov(10.0, n_steps=3000, n_traj=50, seed=2)
    assert abs(lam10 - mp.chirikov_lyapunov(10.0)) < 0.02
    lam20 = mp.classical_lyapunov(20.0, n_steps=3000, n_traj=50, seed=3)
    assert abs(lam20 - mp.chirikov_lyapunov(20.0)) < 0.02


def test_baker_lyapunov_exact():
    lam = mp.classical_lyapunov(0.0, n_steps=50, n_traj=5, seed=1,
                                map_kind="baker")
    assert abs(lam - np.log(2.0)) < 1e-12


def test_baker_step_examples():
    q, p = mp.classical_baker_step((1 / 3, 2 / 3))
    assert np.isclose(q, 2 / 3) and np.isclose(p, 1 / 3)
    assert mp.classical_baker_step((0.25, 0.0)) == (0.5, 0.0)


def test_baker_binary_shift_oracle():
    # 20 steps shift the binary expansion of q left one bit per step
    rng = generator(5)
    bits = rng.integers(0, 2, size=50)
    q0 = Fraction(int("".join(map(str, bits)), 2), 2 ** 50)
    q, p = float(q0), 0.0
    frac = q0
    for _ in range(20):
        q, p = mp.classical_baker_step((q, p))
        frac = (2 * frac) % 1
        assert abs(q - float(frac)) < 1e-9


def test_dft_small_and_unitary():
    F = mp.dft_matrix(2, 0.0, 0.0)
    assert np.allclose(F * np.sqrt(2), np.array([[1, 1], [1, -1]]), atol=1e-12)
    F = mp.dft_matrix(128, 0.3, 0.7)
    assert np.max(np.abs(F @ F.conj().T - np.eye(128))) < 1e-12


def test_dft_antiperiodic_parity():
    F = mp.dft_matrix(64, 0.5, 0.5)
    P = mp.parity_operator(64)
    assert np.max(np.abs(F @ P - P @ F)) < 1e-10


def test_standard_map_unitary_and_fft_equivalence():
    params = mp.MapParams(N=256, K=10.0, alpha=0.5, beta=GOLDEN_PHASE)
    U = mp.build_standard_map(params).matrix
    assert np.max(np.abs(U @ U.conj().T - np.eye(256))) < 1e-10
    psi = generator(7).standard_normal(256) + 1j * generator(8).standard_normal(256)
    psi /= np.linalg.norm(psi)
    assert np.max(np.abs(U @ psi - mp.apply_standard_map(psi, params))) < 1e-9
    out = mp.apply_standard_map(psi, params)
    assert abs(np.linalg.norm(out) - 1.0) < 1e-12


def test_repeated_application_norm_drift():
    params = mp.MapParams(N=128, K=8.0, alpha=0.5, beta=0.0)
    psi = mp.coherent_state(128, 0.2, 0.4)
    psi = mp.apply_standard_map(psi, params, steps=2000)
    assert abs(np.linalg.norm(psi) - 1.0) < 1e-8


def test_baker_map_basics():
    # N = 2: U_B = F_2^+ (1_2 (x) F_1); the scalar F_1 at the antiperiodic
    # phases is -i, a global phase, so compare up to phase
    U2 = mp.build_baker_map(2).matrix
    F2d = mp.dft_matrix(2, 0.5, 0.5).conj().T
    phase = U2[0, 0] / F2d[0, 0]
    assert abs(abs(phase) - 1.0) < 1e-12
    assert np.allclose(U2, phase * F2d, atol=1e-12)
    with pytest.raises(ValueError):
        mp.build_baker_map(7)
    U = mp.build_baker_map(2038).matrix
    assert np.max(np.abs(U @ U.conj().T - np.eye(2038))) < 1e-10


def test_baker_fft_equivalence_and_spectrum_circle():
    N = 128
    U = mp.build_baker_map(N).matrix
    psi = generator(9).standard_normal(N) + 1j * generator(10).standard_normal(N)
    psi /= np.linalg.norm(psi)
    assert np.max(np.abs(U @ psi - mp.apply_baker_map(psi))) < 1e-9
    ev = np.linalg.eigvals(U)
    assert np.max(np.abs(np.abs(ev) - 1.0)) < 1e-9


def test_baker_eigenphase_density_uniform():
    from scipy.stats import chisquare
    U = mp.build_baker_map(512).matrix
    phases = np.sort(np.angle(np.linalg.eigvals(U))) % (2 * np.pi)
    counts, _ = np.histogram(phases, bins=10, range=(0, 2 * np.pi))
    assert chisquare(counts).pvalue > 0.001


def test_coherent_state_overlap_law():
    N = 256
    c0 = mp.coherent_state(N, 0.3, 0.7)
    assert abs(np.linalg.norm(c0) - 1.0) < 1e-12
    for dq in (0.02, 0.04, 0.06):
        ov = abs(np.vdot(c0, mp.coherent_state(N, 0.3 + dq, 0.7))) ** 2
        pred = np.exp(-np.pi * N * dq ** 2)
        assert abs(ov - pred) / pred < 0.05


def test_coherent_state_husimi_concentration():
    from chaoslab.states import husimi
    N = 512
    g = husimi(mp.coherent_state(N, 0.3, 0.7))
    qi = (np.arange(N) + 0.5) / N
    d2 = (((qi[:, None] - 0.3 + 0.5) % 1 - 0.5) ** 2
          + ((qi[None, :] - 0.7 + 0.5) % 1 - 0.5) ** 2)
    assert g.W[d2 <= 9.0 / N].sum() >= 0.99


def test_parity_split():
    P = mp.parity_operator(10)
    assert np.allclose(P @ P, np.eye(10))
    U = mp.build_standard_map(mp.MapParams(N=200, K=10.0, alpha=0.5, beta=0.0)).matrix
    even, odd = mp.parity_split(U)
    assert even.shape == (100, 100) and odd.shape == (100, 100)
    for blk in (even, odd):
        assert np.max(np.abs(blk @ blk.conj().T - np.eye(100))) < 1e-8
    with pytest.raises(mp.SymmetryViolationError):
        mp.parity_split(mp.build_standard_map(
            mp.MapParams(N=200, K=10.0, alpha=0.5, beta=GOLDEN_PHASE)).matrix)


def test_husimi_centroid_tracks_classical_orbit():
    # quantum-classical correspondence while the packet is narrow; the
    # coherent-state tracking window is ln(sqrt(N) w)/lambda =~ 2 steps at
    # N = 1024, K = 10 (by t = 3 the packet has stretched to torus scale
    # and the centroid necessarily leaves the point orbit)
    from chaoslab.states import husimi
    N, K, steps = 1024, 10.0, 2
    params = mp.MapParams(N=N, K=K, alpha=0.5, beta=0.0)
    psi = mp.coherent_state(N, 0.6, 0.3)
    point = (0.6, 0.3)
    for _ in range(steps):
        psi = mp.apply_standard_map(psi, params)
        point = mp.classical_standard_step(point, K)
        q, p = husimi(psi).centroid()
        dq = abs((q - point[0] + 0.5) % 1.0 - 0.5)
        dp = abs((p - point[1] + 0.5) % 1.0 - 0.5)
        assert np.hypot(dq, dp) < 2.0 / np.sqrt(N)
