"""Classical standard/baker maps and their torus quantizations.

Torus quantization conventions (position lattice q_n = (n + alpha)/N,
momentum lattice p_m = (m + beta)/N, hbar = 1/(2 pi N)):

* Fourier matrix:  (F_N^+)_{nm} = exp[2 pi i (n+alpha)(m+beta)/N] / sqrt(N).
* Quantum standard map:  U_S = F_N^+ D_F F_N D_K  with
      (D_K)_{nn} = exp[ i (N K / 2 pi) cos(2 pi (n+alpha)/N) ]
      (D_F)_{mm} = exp[ -i pi (m+beta)^2 / N ]
  The D_F sign follows the free-rotor form exp(-i p^2 / 2 hbar); the kick
  phase follows exp(-i V(q)/hbar) with V(q) = -(K/4 pi^2) cos(2 pi q).
* Quantum baker map (N even, antiperiodic phases alpha = beta = 1/2):
      U_B = F_N^+ (1_2 (x) F_{N/2}).

Time evolution uses phased FFTs, O(N log N) per step; spectra use the dense
matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict, replace

import numpy as np

from .constants import GOLDEN_PHASE, TOL_PARITY_COMMUTATOR
from .rng import generator

__all__ = [
    "MapParams",
    "CoupledMapParams",
    "QuantumMapOperator",
    "SymmetryViolationError",
    "classical_standard_step",
    "standard_map_jacobian",
    "classical_baker_step",
    "baker_jacobian",
    "classical_lyapunov",
    "chirikov_lyapunov",
    "dft_matrix",
    "apply_dft",
    "build_standard_map",
    "apply_standard_map",
    "build_baker_map",
    "apply_baker_map",
    "coherent_state",
    "parity_operator",
    "parity_split",
]


@dataclass(frozen=True)
class MapParams:
    """Standard-map parameters: Hilbert dimension N, kick strength K,
    boundary phases alpha (position) and beta (momentum) in [0, 1).

    beta = 0 keeps time reversal; alpha in {0, 1/2} (with beta = 0) keeps
    parity.  beta = GOLDEN_PHASE is the conventional symmetry-breaking value.
    """

    N: int
    K: float
    alpha: float = 0.5
    beta: float = 0.0

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        if not (0 <= self.alpha < 1 and 0 <= self.beta < 1):
            raise ValueError("boundary phases must lie in [0, 1)")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CoupledMapParams:
    """Two standard maps of dimension N coupled by a position-position kick
    of strength b; Lambda is the universal transition parameter."""

    N: int
    K1: float
    K2: float
    b: float
    alpha: float = 0.5
    beta: float = GOLDEN_PHASE

    def single(self, which: int) -> MapParams:
        K = self.K1 if which == 1 else self.K2
        return MapParams(N=self.N, K=K, alpha=self.alpha, beta=self.beta)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class QuantumMapOperator:
    """Dense Floquet operator plus the parameters that built it."""

    matrix: np.ndarray
    kind: str                      # "standard" | "baker" | "coupled"
    params: object = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


class SymmetryViolationError(ValueError):
    """Raised when a symmetry-resolved operation is asked of an operator
    that does not commute with the symmetry."""


# ---------------------------------------------------------------------------
# classical maps

def _wrap(x: float) -> float:
    """x mod 1 with the 1.0 rounding edge mapped back to 0.0."""
    y = x % 1.0
    return 0.0 if y >= 1.0 else y


def classical_standard_step(point, K: float):
    """One kick of the classical standard map, momentum updated first:
    p' = p - (K/2pi) sin(2 pi q),  q' = q + p'  (both mod 1)."""
    q, p = point
    p1 = _wrap(p - (K / (2.0 * np.pi)) * np.sin(2.0 * np.pi * q))
    q1 = _wrap(q + p1)
    return q1, p1


def standard_map_jacobian(q, K: float) -> np.ndarray:
    """Tangent map of one standard-map step at position q (det = 1)."""
    c = K * np.cos(2.0 * np.pi * q)
    return np.array([[1.0 - c, 1.0], [-c, 1.0]])


def classical_baker_step(point):
    """Baker map: (2q, p/2) on the left half, (2q-1, (p+1)/2) on the right."""
    q, p = point
    if q < 0.5:
        return 2.0 * q, 0.5 * p
    return 2.0 * q - 1.0, 0.5 * (p + 1.0)


def baker_jacobian(q=None) -> np.ndarray:
    """Constant tangent map diag(2, 1/2) of the baker map."""
    return np.diag([2.0, 0.5])


def classical_lyapunov(K: float, n_steps: int = 2000, n_traj: int = 64,
                       seed=0, map_kind: str = "standard",
                       burn_in: int = 100) -> float:
    """Largest Lyapunov exponent from renormalized tangent-vector products.

    For the standard map with K >> 5 this should approach
    ln(K/2) + 1/(K^2 - 4); the baker map gives exactly ln 2.
    """
    if n_steps < 1 or n_traj < 1:
        raise ValueError("iteration counts must be positive")
    rng = generator(seed)
    total = 0.0
    for _ in range(n_traj):
        q, p = rng.random(), rng.random()
        v = rng.standard_normal(2)
        v /= np.linalg.norm(v)
        acc = 0.0
        for t in range(burn_in + n_steps):
            jac = (standard_map_jacobian(q, K) if map_kind == "standard"
                   else baker_jacobian(q))
            v = jac @ v
            growth = np.linalg.norm(v)
            v /= growth
            if t >= burn_in:
                acc += np.log(growth)
            if map_kind == "standard":
                q, p = classical_standard_step((q, p), K)
            else:
                q, p = classical_baker_step((q, p))
        total += acc / n_steps
    return total / n_traj


def chirikov_lyapunov(K: float) -> float:
    """Large-K closed form ln(K/2) + 1/(K^2 - 4) for the standard map."""
    if K <= 2.0:
        raise ValueError("closed form needs K > 2 (intended for K >> 5)")
    return np.log(K / 2.0) + 1.0 / (K * K - 4.0)


# ---------------------------------------------------------------------------
# torus quantization

def dft_matrix(N: int, alpha: float = 0.0, beta: float = 0.0) -> np.ndarray:
    """F_N with (F_N)_{mn} = exp[-2 pi i (n+alpha)(m+beta)/N] / sqrt(N),
    so that F_N^+ carries position to momentum amplitudes."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    n = np.arange(N) + alpha
    m = np.arange(N) + beta
    return np.exp(-2j * np.pi * np.outer(m, n) / N) / np.sqrt(N)


def apply_dft(psi: np.ndarray, alpha: float, beta: float,
              inverse: bool = False) -> np.ndarray:
    """Phased FFT equal to F_N psi (or F_N^+ psi), O(N log N).

    F_N psi[m] = e^{-2 pi i alpha (m+beta)/N} FFT(psi_n e^{-2 pi i beta n/N})[m] / sqrt(N)
    """
    N = psi.shape[-1]
    n = np.arange(N)
    if not inverse:
        work = psi * np.exp(-2j * np.pi * beta * n / N)
        out = np.fft.fft(work, axis=-1) / np.sqrt(N)
        return out * np.exp(-2j * np.pi * alpha * (n + beta) / N)
    work = psi * np.exp(2j * np.pi * alpha * (n + beta) / N)
    out = np.fft.ifft(work, axis=-1) * np.sqrt(N)
    return out * np.exp(2j * np.pi * beta * n / N)


def _kick_phases(params: MapParams) -> np.ndarray:
    n = np.arange(params.N)
    return np.exp(1j * params.N * params.K / (2.0 * np.pi)
                  * np.cos(2.0 * np.pi * (n + params.alpha) / params.N))


def _free_phases(params: MapParams) -> np.ndarray:
    m = np.arange(params.N)
    return np.exp(-1j * np.pi * (m + params.beta) ** 2 / params.N)


def build_standard_map(params: MapParams) -> QuantumMapOperator:
    """Dense U_S = F_N^+ D_F F_N D_K in the position representation."""
    F = dft_matrix(params.N, params.alpha, params.beta)
    U = F.conj().T @ (_free_phases(params)[:, None] * F) * _kick_phases(params)[None, :]
    return QuantumMapOperator(matrix=U, kind="standard", params=params)


def apply_standard_map(psi: np.ndarray, params: MapParams,
                       steps: int = 1) -> np.ndarray:
    """U_S^steps psi by phased FFTs; matches the dense build to ~1e-9."""
    dk = _kick_phases(params)
    df = _free_phases(params)
    out = np.asarray(psi, dtype=complex)
    for _ in range(steps):
        out = apply_dft(out * dk, params.alpha, params.beta)
        out = apply_dft(out * df, params.alpha, params.beta, inverse=True)
    return out


def build_baker_map(N: int) -> QuantumMapOperator:
    """Dense quantum baker map U_B = F_N^+ (1_2 (x) F_{N/2}), alpha=beta=1/2."""
    if N % 2 != 0:
        raise ValueError(f"baker map needs even N, got {N}")
    F_N = dft_matrix(N, 0.5, 0.5)
    F_half = dft_matrix(N // 2, 0.5, 0.5)
    inner = np.zeros((N, N), dtype=complex)
    h = N // 2
    inner[:h, :h] = F_half
    inner[h:, h:] = F_half
    U = F_N.conj().T @ inner
    params = MapParams(N=N, K=0.0, alpha=0.5, beta=0.5)
    return QuantumMapOperator(matrix=U, kind="baker", params=params)


def apply_baker_map(psi: np.ndarray, steps: int = 1) -> np.ndarray:
    """U_B^steps psi with half- and full-size phased FFTs."""
    N = psi.shape[-1]
    if N % 2 != 0:
        raise ValueError("baker map needs even N")
    h = N // 2
    out = np.asarray(psi, dtype=complex)
    for _ in range(steps):
        work = np.empty_like(out)
        work[..., :h] = apply_dft(out[..., :h], 0.5, 0.5)
        work[..., h:] = apply_dft(out[..., h:], 0.5, 0.5)
        out = apply_dft(work, 0.5, 0.5, inverse=True)
    return out


# ---------------------------------------------------------------------------
# coherent states and parity

def coherent_state(N: int, q0: float, p0: float, alpha: float = 0.5,
                   nu_max: int = 3) -> np.ndarray:
    """Periodized Gaussian wavepacket centered at (q0, p0) on the position
    lattice q_n = (n + alpha)/N, truncated at winding |nu| <= nu_max
    (error < 1e-12 for N >= 16), then normalized.
    """
    n = np.arange(N)
    qn = (n + alpha) / N
    psi = np.zeros(N, dtype=complex)
    for nu in range(-nu_max, nu_max + 1):
        psi += np.exp(-np.pi * N * (qn - q0 + nu) ** 2
                      + 2j * np.pi * N * p0 * (qn + nu))
    return psi / np.linalg.norm(psi)


def parity_operator(N: int) -> np.ndarray:
    """Position reflection (P psi)(n) = psi(N-1-n); P^2 = 1."""
    return np.eye(N)[::-1].copy()


def _parity_basis(N: int):
    """Orthonormal even/odd combinations of e_n and e_{N-1-n}."""
    half = N // 2
    even = np.zeros((N, half + (N % 2)))
    odd = np.zeros((N, half))
    s = 1.0 / np.sqrt(2.0)
    for k in range(half):
        even[k, k] = s
        even[N - 1 - k, k] = s
        odd[k, k] = s
        odd[N - 1 - k, k] = -s
    if N % 2:
        even[half, half] = 1.0
    return even, odd


def parity_split(U: np.ndarray, tol: float = TOL_PARITY_COMMUTATOR):
    """Blocks of U in the +1/-1 eigenspaces of the position reflection.

    Raises SymmetryViolationError if [U, P] exceeds tol (e.g. for boundary
    phases that break parity).  Returned block dimensions sum to N.
    """
    N = U.shape[0]
    P = parity_operator(N)
    residual = float(np.max(np.abs(U @ P - P @ U)))
    if residual > tol:
        raise SymmetryViolationError(
            f"operator does not commute with parity: residual {residual:.3e}")
    even, odd = _parity_basis(N)
    return even.T @ U @ even, odd.T @ U @ odd
