"""Localization and phase-space diagnostics of pure states: participation
ratios, Shannon entropy, Husimi distributions on the torus lattice, Wehrl
entropy, entropy growth along map trajectories, and the Ehrenfest time."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import EULER_GAMMA
from .maps import (MapParams, QuantumMapOperator, apply_baker_map,
                   apply_standard_map)

__all__ = [
    "HusimiGrid",
    "participation",
    "shannon_entropy",
    "husimi",
    "wehrl_entropy",
    "entropy_trajectory",
    "entropy_growth_rate",
    "ehrenfest_time",
    "shannon_mean_complex",
    "shannon_mean_real",
    "wehrl_mean_haar",
]


@dataclass
class HusimiGrid:
    """Coherent-state intensities W[i, j] >= 0 on the N x N lattice
    (q_i, p_j) = ((i+alpha)/N, (j+beta)/N), renormalized to unit total mass."""

    W: np.ndarray
    alpha: float = 0.5
    beta: float = 0.5

    @property
    def N(self) -> int:
        return self.W.shape[0]

    def q_marginal(self) -> np.ndarray:
        return self.W.sum(axis=1)

    def p_marginal(self) -> np.ndarray:
        return self.W.sum(axis=0)

    def centroid(self):
        """Circular means of the marginals, as torus coordinates."""
        N = self.N
        qs = 2.0 * np.pi * (np.arange(N) + self.alpha) / N
        ps = 2.0 * np.pi * (np.arange(N) + self.beta) / N
        q = np.angle(np.sum(self.q_marginal() * np.exp(1j * qs))) / (2.0 * np.pi) % 1.0
        p = np.angle(np.sum(self.p_marginal() * np.exp(1j * ps))) / (2.0 * np.pi) % 1.0
        return q, p


def participation(state) -> tuple[float, float]:
    """(IPR, PR) of the intensity vector; IPR = sum t_j^2, PR = 1/IPR.

    A basis state has IPR = PR = 1; uniform intensities give IPR = 1/N.
    Haar averages: <IPR> = 2/(N+1) complex, 3/(N+2) real.
    """
    t = np.abs(np.asarray(state)) ** 2
    t = t / t.sum()
    ipr = float(np.sum(t * t))
    return ipr, 1.0 / ipr


def shannon_entropy(state) -> float:
    """H = -sum t_j ln t_j in nats, with 0 ln 0 = 0."""
    t = np.abs(np.asarray(state)) ** 2
    t = t / t.sum()
    nz = t[t > 0.0]
    return float(-np.sum(nz * np.log(nz)))


def shannon_mean_complex(N: int) -> float:
    """Large-N Haar mean ln N - (1 - gamma) for complex states."""
    return np.log(N) - (1.0 - EULER_GAMMA)


def shannon_mean_real(N: int) -> float:
    """Large-N mean ln N - (2 - gamma - ln 2) for real random states."""
    return np.log(N) - (2.0 - EULER_GAMMA - np.log(2.0))


def _winding_kernel(N: int, beta: float, nu_max: int = 3) -> np.ndarray:
    """g(x) = sum_nu exp(-pi N (x + nu)^2 - 2 pi i beta nu) on the signed
    offset grid x = d/N, d = -(N-1)..(N-1).

    The winding phase makes g quasiperiodic, g(x+1) = e^{2 pi i beta} g(x),
    which is why the offsets cannot be reduced mod N naively.
    """
    d = np.arange(-(N - 1), N) / N
    g = np.zeros(2 * N - 1, dtype=complex)
    for nu in range(-nu_max, nu_max + 1):
        g += np.exp(-np.pi * N * (d + nu) ** 2 - 2j * np.pi * beta * nu)
    return g


def husimi(state, alpha: float = 0.5, beta: float = 0.5) -> HusimiGrid:
    """Husimi distribution W[i, j] = |<q_i p_j | psi>|^2 on the full N x N
    lattice, computed with one FFT per position row (O(N^2 log N) total).

    The grid is renormalized to unit mass: the 1/N prefactor of the raw
    overlaps does not give a normalized distribution for the periodized
    coherent family, and the Wehrl entropy needs a distribution.
    """
    psi = np.asarray(state, dtype=complex)
    N = psi.size
    g = _winding_kernel(N, beta)
    n = np.arange(N)
    # rows indexed by q_i: Phi[i, n] = psi(n) g((n-i)/N) e^{-2 pi i beta n / N}
    offsets = (n[None, :] - n[:, None]) + (N - 1)   # index into the signed kernel
    Phi = psi[None, :] * g[offsets] * np.exp(-2j * np.pi * beta * n / N)[None, :]
    W = np.abs(np.fft.fft(Phi, axis=1)) ** 2
    return HusimiGrid(W=W / W.sum(), alpha=alpha, beta=beta)


def wehrl_entropy(grid, base: str = "nats") -> float:
    """Entropy of the Husimi mass distribution, in nats or bits.

    Flat grid on N^2 cells gives 2 ln N; a Haar-random state sits near
    2 ln N - (1 - gamma) =~ 2 ln N - 0.4228.
    """
    W = grid.W if isinstance(grid, HusimiGrid) else np.asarray(grid)
    w = W[W > 0.0]
    h = float(-np.sum(w * np.log(w)))
    if base == "bits":
        return h / np.log(2.0)
    if base != "nats":
        raise ValueError("base must be 'nats' or 'bits'")
    return h


def wehrl_mean_haar(N: int) -> float:
    """RMT plateau 2 ln N - (1 - gamma) of the Wehrl entropy, in nats."""
    return 2.0 * np.log(N) - (1.0 - EULER_GAMMA)


def entropy_trajectory(map_op, state0, T: int, measure="wehrl_bits"):
    """measure(U^t state0) for t = 0..T.

    map_op is a QuantumMapOperator (standard/baker use the FFT path) or a
    dense unitary.  measure may be 'wehrl_bits', 'wehrl_nats', 'shannon',
    'ipr', or any callable of the state vector.
    """
    if callable(measure):
        f = measure
    elif measure == "wehrl_bits":
        f = lambda s: wehrl_entropy(husimi(s), base="bits")
    elif measure == "wehrl_nats":
        f = lambda s: wehrl_entropy(husimi(s), base="nats")
    elif measure == "shannon":
        f = shannon_entropy
    elif measure == "ipr":
        f = lambda s: participation(s)[0]
    else:
        raise ValueError(f"unknown measure {measure!r}")

    if isinstance(map_op, QuantumMapOperator) and map_op.kind == "standard":
        step = lambda s: apply_standard_map(s, map_op.params)
    elif isinstance(map_op, QuantumMapOperator) and map_op.kind == "baker":
        step = lambda s: apply_baker_map(s)
    elif isinstance(map_op, QuantumMapOperator):
        step = lambda s: map_op.matrix @ s
    elif isinstance(map_op, MapParams):
        step = lambda s: apply_standard_map(s, map_op)
    else:
        U = np.asarray(map_op)
        step = lambda s: U @ s

    psi = np.asarray(state0, dtype=complex)
    values = [f(psi)]
    for _ in range(T):
        psi = step(psi)
        values.append(f(psi))
    return np.asarray(values)


def entropy_growth_rate(trajectory, t_max: int, t_min: int = 1) -> float:
    """Least-squares slope of an entropy time series on [t_min, t_max].

    The default window starts at t = 1: the t = 0 point is the unpropagated
    initial state and carries the packet-alignment transient, which biases
    the early growth rate low.
    """
    tr = np.asarray(trajectory, dtype=float)
    ts = np.arange(t_min, t_max + 1)
    if ts.size < 2:
        raise ValueError("need at least two points in the fit window")
    return float(np.polyfit(ts, tr[ts], 1)[0])


def ehrenfest_time(N: int, lam: float) -> float:
    """t_E = ln N / lambda, the quantum-classical breakdown scale."""
    if lam <= 0:
        raise ValueError("Lyapunov exponent must be positive")
    return float(np.log(N) / lam)
