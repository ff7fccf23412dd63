"""State and unitary t-design diagnostics: frame potentials, the 2-design
deviation Delta_2, Haar moment operators and twirls, the fourth-moment
Weingarten oracle, and trajectory ensembles generated by kicked maps."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .maps import MapParams, apply_standard_map, coherent_state
from .rng import generator

__all__ = [
    "StateEnsemble",
    "DesignDiagnostics",
    "symmetric_subspace_dim",
    "frame_potential",
    "delta2",
    "design_diagnostics",
    "trajectory_ensemble",
    "delta2_vs_kick",
    "haar_twirl_1",
    "haar_twirl_2",
    "swap_operator",
    "weingarten_fourth_moment",
    "haar_fourth_moment_tensor",
    "m1_check",
    "unitary_frame_potential",
]


@dataclass
class StateEnsemble:
    """Uniformly weighted collection of normalized pure states (rows)."""

    states: np.ndarray          # M x N complex

    def __post_init__(self):
        self.states = np.atleast_2d(np.asarray(self.states, dtype=complex))
        norms = np.linalg.norm(self.states, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-9):
            self.states = self.states / norms[:, None]

    @property
    def M(self) -> int:
        return self.states.shape[0]

    @property
    def N(self) -> int:
        return self.states.shape[1]


@dataclass
class DesignDiagnostics:
    t: int
    d_t: int
    F_t: float
    F2_off: float | None
    delta2: float | None
    M: int


def symmetric_subspace_dim(N: int, t: int) -> int:
    """d_t = C(N + t - 1, t), the Haar floor of the frame potential is 1/d_t."""
    return comb(N + t - 1, t)


def _overlap_powers(ensemble: StateEnsemble, t: int) -> np.ndarray:
    gram = ensemble.states @ ensemble.states.conj().T
    return np.abs(gram) ** (2 * t)


def frame_potential(ensemble: StateEnsemble, t: int) -> float:
    """F_t = (1/M^2) sum_{a,b} |<psi_a|psi_b>|^{2t}, diagonal included.

    Bounds: 1/d_t <= F_t <= 1, and F_t >= 1/M when M < d_t; the Haar value
    1/d_t is attained exactly by t-designs.
    """
    if ensemble.M < 1:
        raise ValueError("ensemble must be non-empty")
    P = _overlap_powers(ensemble, t)
    return float(P.mean())


def delta2(ensemble: StateEnsemble) -> float:
    """Delta_2 = d_2 F_2^off - 1, with the diagonal a = b terms removed.

    Zero for a perfect 2-design (as M -> infinity); d_2 - 1 for M copies of
    a single state.
    """
    M = ensemble.M
    if M < 2:
        raise ValueError("off-diagonal potential needs at least two states")
    P = _overlap_powers(ensemble, 2)
    f2_off = (P.sum() - np.trace(P)) / (M * (M - 1))
    d2 = symmetric_subspace_dim(ensemble.N, 2)
    return float(d2 * f2_off - 1.0)


def design_diagnostics(ensemble: StateEnsemble, t: int = 2) -> DesignDiagnostics:
    P = _overlap_powers(ensemble, t)
    M = ensemble.M
    ft = float(P.mean())
    f2_off = None
    d2m1 = None
    if t == 2 and M > 1:
        f2_off = float((P.sum() - np.trace(P)) / (M * (M - 1)))
        d2m1 = symmetric_subspace_dim(ensemble.N, 2) * f2_off - 1.0
    return DesignDiagnostics(t=t, d_t=symmetric_subspace_dim(ensemble.N, t),
                             F_t=ft, F2_off=f2_off, delta2=d2m1, M=M)


def trajectory_ensemble(params: MapParams, delta_K: float, M: int,
                        burn_in: int = 10, stride: int = 1,
                        fiducial=None, seed=0,
                        max_iterations: int = 200_000) -> StateEnsemble:
    """Ensemble of map iterates |phi(n)> = U(K_n) |phi(n-1)> with kick
    strengths K_n uniform in [K - dK/2, K + dK/2].

    The first `burn_in` iterates are dropped, then every stride-th state is
    kept until M states are collected.  delta_K = 0 degenerates to a
    deterministic orbit (allowed; the ensemble is then a single trajectory).
    """
    total = burn_in + M * stride
    if total > max_iterations:
        raise ValueError(f"iteration budget exceeded: {total} > {max_iterations}")
    rng = generator(seed)
    psi = (coherent_state(params.N, 1.0 / 3.0, 2.0 / 3.0, alpha=params.alpha)
           if fiducial is None else np.asarray(fiducial, dtype=complex))
    out = np.empty((M, params.N), dtype=complex)
    kept = 0
    for n in range(1, total + 1):
        K_n = params.K + delta_K * (rng.random() - 0.5)
        psi = apply_standard_map(psi, MapParams(params.N, K_n, params.alpha,
                                                params.beta))
        if n > burn_in and (n - burn_in) % stride == 0:
            out[kept] = psi
            kept += 1
            if kept == M:
                break
    return StateEnsemble(states=out)


def delta2_vs_kick(K_values, params_proto: MapParams, delta_K: float = 0.05,
                   M: int | None = None, burn_in: int = 10, stride: int = 1,
                   histories: int = 10, seed=0):
    """Delta_2 against kick strength, with error bars over kick histories.

    Returns (delta2_mean, delta2_std) arrays aligned with K_values.
    """
    M = params_proto.N if M is None else M
    means, stds = [], []
    for i, K in enumerate(K_values):
        p = MapParams(params_proto.N, float(K), params_proto.alpha,
                      params_proto.beta)
        vals = [delta2(trajectory_ensemble(p, delta_K, M, burn_in, stride,
                                           seed=(seed, i, h)))
                for h in range(histories)]
        means.append(np.mean(vals))
        stds.append(np.std(vals))
    return np.asarray(means), np.asarray(stds)


# ---------------------------------------------------------------------------
# Haar moments, twirls, Weingarten

def swap_operator(N: int) -> np.ndarray:
    """Swap on H_N (x) H_N: S |a>|b> = |b>|a>."""
    S = np.zeros((N * N, N * N))
    for a in range(N):
        for b in range(N):
            S[b * N + a, a * N + b] = 1.0
    return S


def haar_twirl_1(X: np.ndarray) -> np.ndarray:
    """Haar average of U X U^+: the depolarizing projection (tr X / N) 1."""
    N = X.shape[0]
    return np.trace(X) / N * np.eye(N)


def haar_twirl_2(X: np.ndarray) -> np.ndarray:
    """Haar average of U^(x)2 X U^+(x)2 for X on the doubled space:

    [ (N tr X - tr(X S)) 1 + (N tr(X S) - tr X) S ] / (N (N^2 - 1))
    """
    dim = X.shape[0]
    N = int(round(np.sqrt(dim)))
    if N * N != dim:
        raise ValueError("twirl2 input must live on H_N (x) H_N")
    S = swap_operator(N)
    trX = np.trace(X)
    trXS = np.trace(X @ S)
    coeff = 1.0 / (N * (N * N - 1.0))
    return coeff * ((N * trX - trXS) * np.eye(dim) + (N * trXS - trX) * S)


def weingarten_fourth_moment(i, ip, j, jp, N: int) -> float:
    """Closed-form Haar fourth moment
    < u_{i1 j1} u_{i2 j2} conj(u_{i1' j1'}) conj(u_{i2' j2'}) >.

    i = (i1, i2), ip = (i1', i2'), j = (j1, j2), jp = (j1', j2').
    Weingarten weights: Wg(e) = 1/(N^2-1), Wg(swap) = -1/(N (N^2-1)).
    """
    (i1, i2), (i1p, i2p) = i, ip
    (j1, j2), (j1p, j2p) = j, jp
    d = lambda a, b: 1.0 if a == b else 0.0
    direct_i = d(i1, i1p) * d(i2, i2p)
    cross_i = d(i1, i2p) * d(i2, i1p)
    direct_j = d(j1, j1p) * d(j2, j2p)
    cross_j = d(j1, j2p) * d(j2, j1p)
    wg_e = 1.0 / (N * N - 1.0)
    wg_s = -1.0 / (N * (N * N - 1.0))
    return (wg_e * (direct_i * direct_j + cross_i * cross_j)
            + wg_s * (direct_i * cross_j + cross_i * direct_j))


def haar_fourth_moment_tensor(N: int) -> np.ndarray:
    """Full tensor of weingarten_fourth_moment over all index patterns,
    indexed [i1, i2, i1p, i2p, j1, j2, j1p, j2p]."""
    d = np.eye(N)
    direct_i = np.einsum("ac,bd->abcd", d, d)
    cross_i = np.einsum("ad,bc->abcd", d, d)
    wg_e = 1.0 / (N * N - 1.0)
    wg_s = -1.0 / (N * (N * N - 1.0))
    return (wg_e * (np.einsum("abcd,efgh->abcdefgh", direct_i, direct_i)
                    + np.einsum("abcd,efgh->abcdefgh", cross_i, cross_i))
            + wg_s * (np.einsum("abcd,efgh->abcdefgh", direct_i, cross_i)
                      + np.einsum("abcd,efgh->abcdefgh", cross_i, direct_i)))


def m1_check(unitaries) -> tuple[np.ndarray, np.ndarray]:
    """Monte-Carlo first moment 'mean of U (x) conj(U)' and its Haar value,
    the projector onto the maximally entangled state |phi+><phi+|."""
    us = list(unitaries)
    N = us[0].shape[0]
    acc = np.zeros((N * N, N * N), dtype=complex)
    for U in us:
        acc += np.kron(U, U.conj())
    acc /= len(us)
    phi = np.eye(N).reshape(-1) / np.sqrt(N)
    return acc, np.outer(phi, phi.conj())


def unitary_frame_potential(unitaries, t: int, mc: bool = False) -> float:
    """t-th unitary frame potential of an ensemble of unitaries.

    mc=False: the exact discrete double sum (1/M^2) sum_{a,b} |tr(U_a^+ U_b)|^{2t},
    diagonal included, which is the definition for a finite weighted ensemble.
    mc=True: unbiased estimator of the Haar-pair integral from independent
    draws, averaging only over a != b.

    Haar value: t! for N >= t; every ensemble sits at or above it.
    """
    us = list(unitaries)
    M = len(us)
    if M < 1:
        raise ValueError("ensemble must be non-empty")
    flat = np.stack([U.reshape(-1) for U in us])
    gram = flat @ flat.conj().T     # gram[a,b] = tr(U_b^+ U_a)
    P = np.abs(gram) ** (2 * t)
    if not mc:
        return float(P.mean())
    if M < 2:
        raise ValueError("mc estimator needs at least two samples")
    return float((P.sum() - np.trace(P)) / (M * (M - 1)))


def haar_unitary_frame_potential(t: int) -> float:
    return float(factorial(t))
