"""Random-matrix ensembles: Ginibre, circular (CUE/COE), Gaussian (GOE/GUE),
Haar pure states, and induced (trace-normalized Wishart) mixed states.

Conventions
-----------
* Ginibre entries have independent real and imaginary parts of unit variance,
  so E|G_ij|^2 = 2.
* GOE: H = (A + A^T)/2 with A real standard normal, i.e. diagonal variance 1,
  off-diagonal 1/2, density ~ exp(-tr H^2 / 2).
* GUE: H = (A + A^+)/2 with A complex Ginibre scaled to E|A_ij|^2 = 1, i.e.
  density ~ exp(-tr H^2).  Both conventions put the semicircle edge at
  sqrt(2N), with mean level density sqrt(2N - E^2)/pi.
* CUE: QR of a Ginibre matrix with the R-diagonal phase correction, which
  makes the output exactly Haar (plain QR is not).
* COE: W W^T with W Haar.

All samplers are pure functions of (shape parameters, seed).
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .constants import TOL_EIG_NEG, TOL_HERMITIAN, TOL_TRACE, TOL_UNITARY
from .rng import generator, substreams

__all__ = [
    "EnsembleSpec",
    "sample",
    "sample_ginibre",
    "sample_cue",
    "sample_coe",
    "sample_gue",
    "sample_goe",
    "sample_haar_state",
    "sample_induced_state",
    "unitarity_residual",
    "assert_unitary",
    "assert_density_matrix",
    "assert_pure_state",
]


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    """i.i.d. standard complex normal: unit variance per real component."""
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def sample_ginibre(rows: int, cols: int, seed, rng=None) -> np.ndarray:
    """Complex Ginibre matrix, E|G_ij|^2 = 2 (variance 1 per component)."""
    if rows < 1 or cols < 1:
        raise ValueError(f"Ginibre dimensions must be >= 1, got ({rows}, {cols})")
    rng = generator(seed) if rng is None else rng
    return _complex_normal(rng, (rows, cols))


def sample_cue(N: int, seed, rng=None) -> np.ndarray:
    """Haar-distributed unitary via phase-corrected QR of a Ginibre matrix."""
    if N < 1:
        raise ValueError(f"CUE dimension must be >= 1, got {N}")
    rng = generator(seed) if rng is None else rng
    q, r = np.linalg.qr(_complex_normal(rng, (N, N)))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sample_coe(N: int, seed, rng=None) -> np.ndarray:
    """COE sample W W^T, a symmetric unitary, with W Haar."""
    w = sample_cue(N, seed, rng=rng)
    return w @ w.T


def sample_goe(N: int, seed, rng=None) -> np.ndarray:
    """GOE sample: real symmetric, density ~ exp(-tr H^2 / 2)."""
    if N < 1:
        raise ValueError(f"GOE dimension must be >= 1, got {N}")
    rng = generator(seed) if rng is None else rng
    a = rng.standard_normal((N, N))
    return (a + a.T) / 2.0


def sample_gue(N: int, seed, rng=None) -> np.ndarray:
    """GUE sample: complex Hermitian, density ~ exp(-tr H^2)."""
    if N < 1:
        raise ValueError(f"GUE dimension must be >= 1, got {N}")
    rng = generator(seed) if rng is None else rng
    a = _complex_normal(rng, (N, N)) / np.sqrt(2.0)
    return (a + a.conj().T) / 2.0


def sample_haar_state(N: int, seed, rng=None) -> np.ndarray:
    """Haar-random pure state: normalized Ginibre column.

    Intensities |z_j|^2 follow the Porter-Thomas law, exponential with mean
    1/N for large N.
    """
    if N < 1:
        raise ValueError(f"state dimension must be >= 1, got {N}")
    rng = generator(seed) if rng is None else rng
    z = _complex_normal(rng, N)
    return z / np.linalg.norm(z)


def sample_haar_state_real(N: int, seed, rng=None) -> np.ndarray:
    """Real random state, uniform on the real normalization sphere."""
    rng = generator(seed) if rng is None else rng
    x = rng.standard_normal(N)
    return x / np.linalg.norm(x)


def sample_induced_state(N: int, K_env: int, seed, rng=None) -> np.ndarray:
    """Induced mixed state rho = G G^+ / tr(G G^+), G Ginibre N x K_env.

    Rank min(N, K_env); K_env = N gives the Hilbert-Schmidt measure.
    """
    g = sample_ginibre(N, K_env, seed, rng=rng)
    w = g @ g.conj().T
    return w / np.trace(w).real


# ---------------------------------------------------------------------------
# validation helpers (type invariants)

def unitarity_residual(U: np.ndarray) -> float:
    N = U.shape[0]
    return float(np.max(np.abs(U @ U.conj().T - np.eye(N))))


def assert_unitary(U: np.ndarray, tol: float = TOL_UNITARY) -> None:
    r = unitarity_residual(U)
    if r > tol:
        raise ValueError(f"matrix is not unitary: residual {r:.3e} > {tol:.0e}")


def assert_pure_state(psi: np.ndarray, tol: float = 1e-12) -> None:
    s = float(np.sum(np.abs(psi) ** 2))
    if abs(s - 1.0) > tol:
        raise ValueError(f"state is not normalized: sum t_j = {s}")


def assert_density_matrix(rho: np.ndarray, tol: float = TOL_HERMITIAN) -> None:
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > max(tol, TOL_TRACE):
        raise ValueError(f"density matrix trace {np.trace(rho).real} != 1")
    w = np.linalg.eigvalsh(rho)
    if w[0] < -TOL_EIG_NEG:
        raise ValueError(f"density matrix has negative eigenvalue {w[0]:.3e}")


# ---------------------------------------------------------------------------
# serializable ensemble specification (external interface)

_SAMPLERS = {
    "ginibre": lambda dim, rng: sample_ginibre(dim, dim, 0, rng=rng),
    "cue": lambda dim, rng: sample_cue(dim, 0, rng=rng),
    "coe": lambda dim, rng: sample_coe(dim, 0, rng=rng),
    "gue": lambda dim, rng: sample_gue(dim, 0, rng=rng),
    "goe": lambda dim, rng: sample_goe(dim, 0, rng=rng),
    "haar_state": lambda dim, rng: sample_haar_state(dim, 0, rng=rng),
    "induced": lambda dim, rng: sample_induced_state(dim, dim, 0, rng=rng),
}


@dataclass
class EnsembleSpec:
    """Config record {ensemble, dim, count, seed} naming a sample batch."""

    ensemble: str
    dim: int
    count: int
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "EnsembleSpec":
        return cls(ensemble=str(d["ensemble"]), dim=int(d["dim"]),
                   count=int(d["count"]), seed=int(d["seed"]))


def sample(spec: EnsembleSpec) -> list[np.ndarray]:
    """Draw spec.count members on independent substreams of spec.seed."""
    if spec.ensemble not in _SAMPLERS:
        raise ValueError(f"unknown ensemble tag {spec.ensemble!r}; "
                         f"known: {sorted(_SAMPLERS)}")
    draw = _SAMPLERS[spec.ensemble]
    return [draw(spec.dim, rng) for rng in substreams(spec.seed, spec.count)]
