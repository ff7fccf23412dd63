"""Bipartite and tripartite entanglement statistics of random states:
Schmidt spectra, entropy families, Page/Lubkin/Marchenko-Pastur reference
laws, partial transpose and negativity, the shifted-semicircle model of the
partial-transpose spectrum, and two-qubit concurrence statistics."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ensembles import sample_ginibre
from .rng import generator, substreams

__all__ = [
    "SchmidtData",
    "PTSpectrum",
    "ConcurrenceData",
    "schmidt",
    "entropies",
    "page_average",
    "lubkin_average",
    "mp_density",
    "mp_cdf",
    "mp_support",
    "partial_transpose",
    "pt_third_moment_avg",
    "negativity",
    "pt_semicircle_model",
    "pt_semicircle_density",
    "concurrence",
    "preconcurrence_statistics",
    "xmin_scaled_statistic",
    "npt_probability",
]


@dataclass
class SchmidtData:
    """Schmidt eigenvalues (descending, summing to 1) with the subsystem
    split that produced them."""

    N1: int
    N2: int
    eigenvalues: np.ndarray

    @property
    def entropy_vn(self) -> float:
        lam = self.eigenvalues[self.eigenvalues > 0.0]
        return float(-np.sum(lam * np.log(lam)))

    @property
    def entropy_linear(self) -> float:
        return float(1.0 - np.sum(self.eigenvalues ** 2))


@dataclass
class PTSpectrum:
    """Partial-transpose eigenvalues with negativity data."""

    dims: tuple
    eigenvalues: np.ndarray     # ascending
    trace_norm: float = field(init=False)
    negativity: float = field(init=False)
    log_negativity: float = field(init=False)

    def __post_init__(self):
        mu = np.sort(np.asarray(self.eigenvalues, dtype=float))
        self.eigenvalues = mu
        self.trace_norm = float(np.sum(np.abs(mu)))
        self.negativity = max(0.0, 0.5 * (self.trace_norm - 1.0))
        self.log_negativity = float(np.log(self.trace_norm)) if self.trace_norm > 0 else 0.0

    @property
    def is_npt(self) -> bool:
        return bool(self.eigenvalues[0] < -1e-10)


@dataclass
class ConcurrenceData:
    """Wootters eigenvalues (descending), pre-concurrence c, and C = max(0, c)."""

    R_eigenvalues: np.ndarray
    pre_concurrence: float
    concurrence: float


def schmidt(state, N1: int, N2: int) -> SchmidtData:
    """Schmidt eigenvalues of a pure state on H_{N1} (x) H_{N2}.

    Reshapes the amplitude vector to the N1 x N2 coefficient matrix and
    takes squared singular values.
    """
    psi = np.asarray(state, dtype=complex).reshape(-1)
    if psi.size != N1 * N2:
        raise ValueError(f"dimension {psi.size} does not factor as {N1} x {N2}")
    A = psi.reshape(N1, N2)
    lam = np.linalg.svd(A, compute_uv=False) ** 2
    lam = lam / lam.sum()
    return SchmidtData(N1=N1, N2=N2, eigenvalues=np.sort(lam)[::-1])


def entropies(data, q_list=(0.5, 1.0, 2.0, 3.0)) -> dict:
    """von Neumann, linear, and Renyi/Tsallis entropies of a Schmidt spectrum.

    S_q^R = ln(tr rho^q)/(1-q) and S_q^T = (1 - tr rho^q)/(q-1); q = 1 means
    the von Neumann value for both.
    """
    lam = data.eigenvalues if isinstance(data, SchmidtData) else np.asarray(data, dtype=float)
    lam = lam[lam > 0.0]
    s_vn = float(-np.sum(lam * np.log(lam)))
    out = {"vn": s_vn, "linear": float(1.0 - np.sum(lam ** 2)),
           "renyi": {}, "tsallis": {}}
    for q in q_list:
        if abs(q - 1.0) < 1e-12:
            out["renyi"][q] = s_vn
            out["tsallis"][q] = s_vn
            continue
        m = float(np.sum(lam ** q))
        out["renyi"][q] = np.log(m) / (1.0 - q)
        out["tsallis"][q] = (1.0 - m) / (q - 1.0)
    return out


def page_average(N1: int, N2: int) -> float:
    """Exact Haar-mean entanglement entropy
    sum_{k=N1+1}^{N1 N2} 1/k - (N1-1)/(2 N2), in nats."""
    ks = np.arange(N1 + 1, N1 * N2 + 1, dtype=float)
    return float(np.sum(1.0 / ks) - (N1 - 1) / (2.0 * N2))


def lubkin_average(N1: int, N2: int) -> tuple[float, float]:
    """(mean purity, mean linear entropy) of Haar reduced states:
    purity (N1+N2)/(1+N1 N2), S_L = (N1-1)(N2-1)/(1+N1 N2)."""
    purity = (N1 + N2) / (1.0 + N1 * N2)
    s_lin = (N1 - 1.0) * (N2 - 1.0) / (1.0 + N1 * N2)
    return purity, s_lin


def mp_support(Q: float) -> tuple[float, float]:
    x_minus = (1.0 + 1.0 / Q) - 2.0 / np.sqrt(Q)
    x_plus = (1.0 + 1.0 / Q) + 2.0 / np.sqrt(Q)
    return x_minus, x_plus


def mp_density(Q: float, x) -> np.ndarray:
    """Marchenko-Pastur density (Q/2pi) sqrt((x+ - x)(x - x-))/x on its
    support, zero outside; Q = 1 reduces to (1/2pi) sqrt((4-x)/x) on [0, 4]."""
    if Q < 1:
        raise ValueError("Q must be >= 1")
    x = np.asarray(x, dtype=float)
    xm, xp = mp_support(Q)
    inside = (x > xm) & (x < xp) & (x > 0)
    out = np.zeros_like(x)
    xi = x[inside]
    out[inside] = Q / (2.0 * np.pi) * np.sqrt((xp - xi) * (xi - xm)) / xi
    return out


def mp_cdf(Q: float, x) -> np.ndarray:
    """Marchenko-Pastur CDF, safe at the square-root (and Q = 1 inverse
    square-root) edges.

    Uses the substitution x = m + r sin(phi) with m, r the support midpoint
    and half-width, under which the integrand is bounded and smooth.
    """
    xm, xp = mp_support(Q)
    m, r = 0.5 * (xp + xm), 0.5 * (xp - xm)
    phi = np.linspace(-np.pi / 2.0, np.pi / 2.0, 20001)
    xg = m + r * np.sin(phi)
    if xm < 1e-12:
        # Q = 1: m = r, and cos^2(phi)/x = (1 - sin(phi))/r exactly
        integrand = Q / (2.0 * np.pi) * r * (1.0 - np.sin(phi))
    else:
        integrand = Q / (2.0 * np.pi) * r ** 2 * np.cos(phi) ** 2 / xg
    cdf = np.concatenate([[0.0], np.cumsum(
        0.5 * (integrand[1:] + integrand[:-1]) * np.diff(phi))])
    cdf /= cdf[-1]
    x = np.asarray(x, dtype=float)
    return np.interp(x, xg, cdf, left=0.0, right=1.0)


def partial_transpose(rho: np.ndarray, N1: int, N2: int) -> np.ndarray:
    """Partial transpose on the second factor:
    <i a| rho^G |j b> = <i b| rho |j a>.  Involutive and trace preserving."""
    if rho.shape != (N1 * N2, N1 * N2):
        raise ValueError("density matrix shape does not match (N1 N2)^2")
    r4 = rho.reshape(N1, N2, N1, N2)
    return np.ascontiguousarray(r4.transpose(0, 3, 2, 1)).reshape(N1 * N2, N1 * N2)


def pt_third_moment_avg(N1: int, N2: int, N3: int) -> float:
    """Induced-ensemble mean of tr (rho^G)^3:
    (N1^2 + N2^2 + N3^2 + 3 N1 N2 N3) / ((N1 N2 N3 + 1)(N1 N2 N3 + 2)),
    symmetric under any permutation of the three dimensions."""
    n = N1 * N2 * N3
    return (N1 ** 2 + N2 ** 2 + N3 ** 2 + 3.0 * n) / ((n + 1.0) * (n + 2.0))


def negativity(mu) -> tuple[float, float]:
    """(negativity, log-negativity) from partial-transpose eigenvalues."""
    mu = np.asarray(mu, dtype=float)
    t1 = float(np.sum(np.abs(mu)))
    return max(0.0, 0.5 * (t1 - 1.0)), float(np.log(t1))


@dataclass
class PTSemicircleModel:
    """Shifted-semicircle surrogate for the partial-transpose spectrum of
    induced states, in rescaled units x = N1 N2 mu.

    The fluctuation part is a GUE matrix whose first two moments are fixed
    by trace and purity conservation under partial transpose; this puts the
    semicircle center at 1 and its radius at R = 2 sqrt(N1 N2 / N3).  The
    lower edge crosses zero (NPT becomes typical) exactly when R > 1, i.e.
    N3 < 4 N1 N2.  Deep in the NPT regime the mean log-negativity is
    ln((8/3pi) sqrt(N1 N2 / N3)).
    """

    N1: int
    N2: int
    N3: int

    @property
    def radius(self) -> float:
        return 2.0 * np.sqrt(self.N1 * self.N2 / self.N3)

    @property
    def center(self) -> float:
        return 1.0

    @property
    def is_npt(self) -> bool:
        return self.N3 < 4 * self.N1 * self.N2

    @property
    def npt_threshold(self) -> int:
        return 4 * self.N1 * self.N2

    @property
    def deep_npt_log_negativity(self) -> float:
        return float(np.log(8.0 / (3.0 * np.pi)
                            * np.sqrt(self.N1 * self.N2 / self.N3)))

    def density(self, x) -> np.ndarray:
        return pt_semicircle_density(self.center, self.radius, x)

    def cdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        u = np.clip((x - self.center) / self.radius, -1.0, 1.0)
        return (0.5 + (u * np.sqrt(1.0 - u ** 2) + np.arcsin(u)) / np.pi)


def pt_semicircle_density(center: float, radius: float, x) -> np.ndarray:
    """Semicircle density (2/pi R^2) sqrt(R^2 - (x - c)^2) on [c-R, c+R]."""
    x = np.asarray(x, dtype=float)
    u = x - center
    inside = np.abs(u) < radius
    out = np.zeros_like(x)
    out[inside] = 2.0 / (np.pi * radius ** 2) * np.sqrt(radius ** 2 - u[inside] ** 2)
    return out


def pt_semicircle_model(N1: int, N2: int, N3: int) -> PTSemicircleModel:
    return PTSemicircleModel(N1=N1, N2=N2, N3=N3)


# ---------------------------------------------------------------------------
# two-qubit concurrence

_SYSY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]])).real
# sigma_y (x) sigma_y is real: [[0,0,0,-1],[0,0,1,0],[0,1,0,0],[-1,0,0,0]]


def _sqrtm_psd(rho: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def concurrence(rho: np.ndarray) -> ConcurrenceData:
    """Wootters concurrence of a two-qubit density matrix (computational
    basis).

    Uses the Hermitian proxy sqrt(rho) rho~ sqrt(rho), whose eigenvalues
    match those of rho rho~ but are guaranteed real and nonnegative.
    """
    if rho.shape != (4, 4):
        raise ValueError("concurrence needs a 4 x 4 density matrix")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-8:
        raise ValueError("density matrix must be Hermitian")
    rho_t = _SYSY @ rho.conj() @ _SYSY
    s = _sqrtm_psd(rho)
    lam = np.linalg.eigvalsh(s @ rho_t @ s)
    lam = np.sqrt(np.clip(lam, 0.0, None))[::-1]
    c = float(lam[0] - lam[1] - lam[2] - lam[3])
    return ConcurrenceData(R_eigenvalues=lam ** 2, pre_concurrence=c,
                           concurrence=max(0.0, c))


def _batched_two_qubit_marginals(N3: int, samples: int,
                                 rng: np.random.Generator) -> np.ndarray:
    """rho_AB for `samples` Haar states of dimension 4 N3 (qubit pair kept)."""
    g = (rng.standard_normal((samples, 4, N3))
         + 1j * rng.standard_normal((samples, 4, N3)))
    rho = g @ g.conj().transpose(0, 2, 1)
    tr = np.trace(rho, axis1=1, axis2=2).real
    return rho / tr[:, None, None]


def _batched_preconcurrence(rho: np.ndarray) -> np.ndarray:
    """Vectorized Wootters pre-concurrence over a stack of 4 x 4 states."""
    rho_t = np.einsum("ij,njk,kl->nil", _SYSY, rho.conj(), _SYSY)
    w, v = np.linalg.eigh(rho)
    w = np.clip(w, 0.0, None)
    s = np.einsum("nij,nj,nkj->nik", v, np.sqrt(w), v.conj())
    lam = np.linalg.eigvalsh(s @ rho_t @ s)
    lam = np.sqrt(np.clip(lam, 0.0, None))   # ascending
    return 2.0 * lam[:, -1] - lam.sum(axis=1)


def preconcurrence_statistics(L: int, samples: int, seed,
                              chunk: int = 20_000):
    """Pre-concurrence sample of qubit pair (1, 2) in Haar states of L
    qubits, plus the entanglement probability P(C > 0).

    By exchange symmetry of the Haar measure the choice of pair is
    immaterial; tracing out the other L-2 qubits leaves an induced 4 x 4
    state with environment dimension N3 = 2^(L-2).

    Returns (c_sample, p_positive).
    """
    if L < 3:
        raise ValueError("need at least 3 qubits")
    N3 = 2 ** (L - 2)
    out = np.empty(samples)
    done = 0
    for rng in substreams(seed, (samples + chunk - 1) // chunk):
        n = min(chunk, samples - done)
        rho = _batched_two_qubit_marginals(N3, n, rng)
        out[done:done + n] = _batched_preconcurrence(rho)
        done += n
    return out, float(np.mean(out > 0.0))


def _batched_pt_min_eig(rho: np.ndarray) -> np.ndarray:
    r4 = rho.reshape(-1, 2, 2, 2, 2)
    pt = r4.transpose(0, 1, 4, 3, 2).reshape(-1, 4, 4)
    return np.linalg.eigvalsh(pt)[:, 0]


def xmin_scaled_statistic(N3: int, samples: int, seed,
                          chunk: int = 20_000) -> np.ndarray:
    """x_min = sqrt(N3) (lambda_min(rho^G_AB) - 1/4) for two-qubit marginals
    of Haar states of dimension 4 N3.

    The distributions collapse onto an N3-independent curve for large N3;
    NPT states are exactly those with x_min < -sqrt(N3)/4.
    """
    out = np.empty(samples)
    done = 0
    for rng in substreams(seed, (samples + chunk - 1) // chunk):
        n = min(chunk, samples - done)
        rho = _batched_two_qubit_marginals(N3, n, rng)
        out[done:done + n] = _batched_pt_min_eig(rho)
        done += n
    return np.sqrt(N3) * (out - 0.25)


def npt_probability(N3: int, samples: int, seed) -> float:
    """Fraction of two-qubit marginals (environment N3) that are NPT."""
    x = xmin_scaled_statistic(N3, samples, seed)
    return float(np.mean(x < -np.sqrt(N3) / 4.0))
