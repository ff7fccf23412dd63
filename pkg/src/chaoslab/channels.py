"""CPTP maps: Kraus/Choi/superoperator/Bloch-affine representations and
conversions, random channels, superoperator spectra and gaps, mixed and
diluted unitary ensembles, the Kesten law, and complementary channels."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import TOL_CHANNEL_ROUNDTRIP
from .ensembles import sample_cue, sample_ginibre
from .rng import generator

__all__ = [
    "KrausSet",
    "ChannelBundle",
    "NotCompletelyPositiveError",
    "kraus_to_superop",
    "superop_to_choi",
    "choi_to_kraus",
    "choi_to_superop",
    "apply_channel",
    "channel_from_kraus",
    "random_channel",
    "random_choi_ginibre",
    "bloch_affine",
    "gell_mann_basis",
    "mixed_unitary_channel",
    "kesten_density",
    "kesten_cdf",
    "kesten_support",
    "diluted_unitary",
    "ring_radii",
    "complementary_channel",
    "rectangular_superop",
    "complementary_spectrum_model",
    "complementary_ring_radii",
    "measured_map_spectrum",
    "superop_spectrum",
    "spectral_gap",
    "invariant_state",
]


class NotCompletelyPositiveError(ValueError):
    """Choi matrix negative beyond tolerance."""


@dataclass
class KrausSet:
    """Kraus operators stacked as ops[i] with sum_i K_i^+ K_i = 1."""

    ops: np.ndarray

    def __post_init__(self):
        self.ops = np.asarray(self.ops, dtype=complex)
        if self.ops.ndim != 3:
            raise ValueError("expected a stack of matrices")

    @property
    def M(self) -> int:
        return self.ops.shape[0]

    @property
    def dims(self) -> tuple[int, int]:
        """(output dim, input dim); square for ordinary channels."""
        return self.ops.shape[1], self.ops.shape[2]

    def tp_residual(self) -> float:
        n_in = self.ops.shape[2]
        acc = np.einsum("mij,mik->jk", self.ops.conj(), self.ops)
        return float(np.max(np.abs(acc - np.eye(n_in))))


@dataclass
class ChannelBundle:
    """A channel with its standard representations and spectral data."""

    kraus: KrausSet
    superop: np.ndarray = field(init=False)
    choi: np.ndarray = field(init=False)
    spectrum: np.ndarray = field(init=False)

    def __post_init__(self):
        self.superop = kraus_to_superop(self.kraus)
        self.choi = superop_to_choi(self.superop)
        self.spectrum = superop_spectrum(self.superop)

    @property
    def N(self) -> int:
        return self.kraus.dims[0]

    @property
    def gap(self) -> float:
        return spectral_gap(self.spectrum)


def _reshuffle(X: np.ndarray) -> np.ndarray:
    """Reshuffle X_{(m,mu),(n,nu)} -> X_{(m,n),(mu,nu)}; an involution that
    carries the superoperator to the Choi matrix and back."""
    d2 = X.shape[0]
    d = int(round(np.sqrt(d2)))
    if d * d != d2 or X.shape != (d2, d2):
        raise ValueError("reshuffle needs a square matrix on a doubled space")
    return np.ascontiguousarray(
        X.reshape(d, d, d, d).transpose(0, 2, 1, 3)).reshape(d2, d2)


def kraus_to_superop(kraus: KrausSet | np.ndarray) -> np.ndarray:
    """Psi = sum_i K_i (x) conj(K_i), acting on row-major vectorized states."""
    ops = kraus.ops if isinstance(kraus, KrausSet) else np.asarray(kraus)
    return sum(np.kron(K, K.conj()) for K in ops)


def superop_to_choi(psi: np.ndarray) -> np.ndarray:
    """Choi (dynamical) matrix D = Psi^R; CP iff D >= 0, TP iff Tr_A D = 1."""
    return _reshuffle(psi)


def choi_to_superop(choi: np.ndarray) -> np.ndarray:
    return _reshuffle(choi)


def choi_to_kraus(choi: np.ndarray, tol: float = 1e-8) -> KrausSet:
    """Kraus operators from the reshaped eigenvectors of the Choi matrix;
    the count equals rank(D).  Raises NotCompletelyPositiveError if D has
    an eigenvalue below -tol."""
    d2 = choi.shape[0]
    N = int(round(np.sqrt(d2)))
    w, v = np.linalg.eigh((choi + choi.conj().T) / 2.0)
    if w[0] < -tol:
        raise NotCompletelyPositiveError(
            f"Choi matrix eigenvalue {w[0]:.3e} below -{tol:.0e}")
    keep = w > tol
    ops = [np.sqrt(wi) * v[:, i].reshape(N, N)
           for i, wi in enumerate(w) if keep[i]]
    return KrausSet(ops=np.stack(ops[::-1]))


def apply_channel(kraus: KrausSet, rho: np.ndarray) -> np.ndarray:
    return np.einsum("mij,jk,mlk->il", kraus.ops, rho, kraus.ops.conj())


def channel_from_kraus(ops) -> ChannelBundle:
    ks = KrausSet(ops=np.stack([np.asarray(K, dtype=complex) for K in ops]))
    return ChannelBundle(kraus=ks)


def superop_spectrum(psi: np.ndarray) -> np.ndarray:
    """Superoperator eigenvalues sorted by decreasing modulus."""
    vals = np.linalg.eigvals(psi)
    return vals[np.argsort(-np.abs(vals))]


def spectral_gap(spectrum: np.ndarray) -> float:
    """a = 1 - |lambda_2|, the convergence rate scale."""
    if spectrum.size < 2:
        return 1.0
    return float(1.0 - np.abs(spectrum[1]))


def invariant_state(psi: np.ndarray) -> np.ndarray:
    """Right eigenvector of the leading eigenvalue, reshaped and normalized
    to a valid state (Hermitized)."""
    vals, vecs = np.linalg.eig(psi)
    lead = np.argmax(np.abs(vals))
    d = int(round(np.sqrt(psi.shape[0])))
    rho = vecs[:, lead].reshape(d, d)
    rho = (rho + rho.conj().T) / 2.0
    return rho / np.trace(rho).real


# ---------------------------------------------------------------------------
# random channels

def random_channel(N: int, M: int, seed, rng=None) -> ChannelBundle:
    """Random CPTP map from the environment form: a Haar V on H_N (x) H_M
    applied to rho (x) |0><0|, environment traced out.

    The Kraus operators are the M system-blocks of V against the |0>
    environment column; M = N^2 gives full Choi rank and the uniform
    (Hilbert-Schmidt) channel measure.
    """
    rng = generator(seed) if rng is None else rng
    V = sample_cue(N * M, 0, rng=rng)
    block = V[:, [n * M for n in range(N)]]          # columns |n, 0>
    ops = block.reshape(N, M, N).transpose(1, 0, 2)  # K_j[m, n] = V[(m,j),(n,0)]
    return ChannelBundle(kraus=KrausSet(ops=ops))


def random_choi_ginibre(N: int, seed, rng=None) -> np.ndarray:
    """Random Choi matrix D = (1 (x) Y^{-1/2}) G G^+ (1 (x) Y^{-1/2}) with
    G a Ginibre matrix of size N^2 and Y = Tr_A G G^+.

    Induces the same (Hilbert-Schmidt) channel measure as the environment
    construction with M = N^2.
    """
    rng = generator(seed) if rng is None else rng
    for _ in range(8):
        G = sample_ginibre(N * N, N * N, 0, rng=rng)
        W = G @ G.conj().T
        Y = W.reshape(N, N, N, N).trace(axis1=0, axis2=2)   # Tr_A
        w, v = np.linalg.eigh(Y)
        if w[0] > 1e-12 * w[-1]:
            break
    else:
        raise RuntimeError("degenerate partial trace; resampling failed")
    y_isqrt = (v / np.sqrt(w)) @ v.conj().T
    left = np.kron(np.eye(N), y_isqrt)
    return left @ W @ left


def gell_mann_basis(N: int) -> np.ndarray:
    """Generalized Gell-Mann generators, orthonormal: tr(L_i L_j) = delta_ij.

    Ordering: symmetric pairs, antisymmetric pairs, then diagonal; N^2 - 1
    traceless matrices (the rescaled identity 1/sqrt(N) completes the basis).
    """
    mats = []
    for j in range(N):
        for k in range(j + 1, N):
            m = np.zeros((N, N), dtype=complex)
            m[j, k] = m[k, j] = 1.0 / np.sqrt(2.0)
            mats.append(m)
            m = np.zeros((N, N), dtype=complex)
            m[j, k] = -1j / np.sqrt(2.0)
            m[k, j] = 1j / np.sqrt(2.0)
            mats.append(m)
    for l in range(1, N):
        m = np.zeros((N, N), dtype=complex)
        m[np.arange(l), np.arange(l)] = 1.0
        m[l, l] = -l
        mats.append(m / np.sqrt(l * (l + 1.0)))
    return np.stack(mats)


def bloch_affine(channel: ChannelBundle | KrausSet) -> tuple[np.ndarray, np.ndarray]:
    """Bloch-affine form (C, kappa): tau' = C tau + kappa in the orthonormal
    Gell-Mann basis.

    C_ij = tr(L_i Psi(L_j)), kappa_i = tr(L_i Psi(1/N)); kappa = 0 for
    unital maps, and spec(Psi) = {1} union spec(C).
    """
    kraus = channel.kraus if isinstance(channel, ChannelBundle) else channel
    N = kraus.dims[0]
    basis = gell_mann_basis(N)
    n_gen = basis.shape[0]
    images = np.stack([apply_channel(kraus, basis[j]) for j in range(n_gen)])
    C = np.einsum("iab,jba->ij", basis, images).real
    kappa = np.einsum("iab,ba->i", basis,
                      apply_channel(kraus, np.eye(N) / N)).real
    return C, kappa


def mixed_unitary_channel(weights, unitaries) -> ChannelBundle:
    """Psi = sum_j p_j U_j (x) conj(U_j): the random-external-field class;
    unital, and completely depolarizing iff the set is a 1-design."""
    p = np.asarray(weights, dtype=float)
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
        raise ValueError("weights must form a probability simplex")
    us = [np.asarray(U, dtype=complex) for U in unitaries]
    if len(us) != p.size:
        raise ValueError("one weight per unitary")
    dims = {U.shape for U in us}
    if len(dims) != 1:
        raise ValueError("unitaries must share a dimension")
    ops = np.stack([np.sqrt(pi) * U for pi, U in zip(p, us)])
    return ChannelBundle(kraus=KrausSet(ops=ops))


# ---------------------------------------------------------------------------
# Kesten law for sums of unitaries

def kesten_support(M: int) -> tuple[float, float]:
    return 0.0, 4.0 * (M - 1.0) / M


def kesten_density(M: int, x) -> np.ndarray:
    """Kesten density for sums of M independent Haar unitaries:

        P_M(x) = sqrt(4 M (M-1) x - M^2 x^2) / (2 pi (M x - x^2))

    on [0, 4(M-1)/M], with unit mean.  The variable x is the squared
    singular value of (V_1 + ... + V_M)/sqrt(M), i.e. M times the squared
    singular values of the channel-normalized mean of the unitaries.
    M = 2 is the arcsine law on [0, 2]; M -> infinity approaches the
    Marchenko-Pastur law on [0, 4].
    """
    if M < 2:
        raise ValueError("Kesten law needs M >= 2")
    x = np.asarray(x, dtype=float)
    lo, hi = kesten_support(M)
    inside = (x > lo) & (x < hi)
    out = np.zeros_like(x)
    xi = x[inside]
    out[inside] = (np.sqrt(4.0 * M * (M - 1.0) * xi - M * M * xi * xi)
                   / (2.0 * np.pi * (M * xi - xi * xi)))
    return out


def kesten_cdf(M: int, x) -> np.ndarray:
    """Kesten CDF via the edge-regular substitution x = m + m sin(phi)."""
    lo, hi = kesten_support(M)
    m = hi / 2.0
    phi = np.linspace(-np.pi / 2.0, np.pi / 2.0, 20001)
    xg = m + m * np.sin(phi)
    # sqrt(x (hi - x)) = m cos(phi); integrand is bounded at both edges
    dens = M * m * m * np.cos(phi) ** 2 / (2.0 * np.pi)
    denom = np.maximum(xg * (M - xg), 1e-300)
    integrand = np.where((xg > 0) & (xg < M), dens / denom, 0.0)
    # limits at the edges (0/0): fill from neighbors
    integrand[0] = integrand[1]
    integrand[-1] = integrand[-2]
    cdf = np.concatenate([[0.0], np.cumsum(
        0.5 * (integrand[1:] + integrand[:-1]) * np.diff(phi))])
    cdf /= cdf[-1]
    return np.interp(np.asarray(x, dtype=float), xg, cdf, left=0.0, right=1.0)


# ---------------------------------------------------------------------------
# diluted unitary channels

def diluted_unitary(p: float, M: int, N: int, seed) -> ChannelBundle:
    """Diluted unitary channel: a fixed Haar unitary mixed with an
    M-operator random noise channel carrying dilution weight p,

        Phi(rho) = (1-p) U rho U^+ + p sum_j K_j rho K_j^+ .

    This weight convention is the one under which the ring radii of
    `ring_radii` (and the quoted disk/ring examples) describe the bulk
    spectrum: the bulk sits near modulus 1-p and the ring closes to a disk
    once the noise dominates, p >= p_c."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("dilution weight p must lie in [0, 1]")
    rng = generator(seed)
    U = sample_cue(N, 0, rng=rng)
    noise = random_channel(N, M, 0, rng=rng)
    ops = np.concatenate([np.sqrt(1.0 - p) * U[None, :, :],
                          np.sqrt(p) * noise.kraus.ops])
    return ChannelBundle(kraus=KrausSet(ops=ops))


def ring_radii(p: float, M: int) -> tuple[float, float, float]:
    """(R_minus, R_plus, p_c) of the diluted-unitary bulk spectrum:
    R_pm = sqrt((1-p)^2 pm p^2/M); the inner radius closes (ring -> disk)
    at p_c = sqrt(M)/(sqrt(M)+1)."""
    r_plus = np.sqrt((1.0 - p) ** 2 + p * p / M)
    inner2 = (1.0 - p) ** 2 - p * p / M
    r_minus = np.sqrt(inner2) if inner2 > 0 else 0.0
    p_c = np.sqrt(M) / (np.sqrt(M) + 1.0)
    return float(r_minus), float(r_plus), float(p_c)


# ---------------------------------------------------------------------------
# complementary channels

def complementary_channel(N: int, M: int, seed, rng=None) -> KrausSet:
    """Complementary map H_N -> H_M of the environment construction: trace
    out the system instead of the environment.

    Kraus operators L_a[b, n] = V[(a, b), (n, 0)], a = 1..N, each M x N.
    """
    rng = generator(seed) if rng is None else rng
    V = sample_cue(N * M, 0, rng=rng)
    block = V[:, [n * M + 0 for n in range(N)]]
    ops = block.reshape(N, M, N)       # L_a[b, n] = V[(a,b),(n,0)]
    return KrausSet(ops=ops)


def rectangular_superop(kraus: KrausSet) -> np.ndarray:
    """sum_i K_i (x) conj(K_i) for dimension-changing Kraus sets: an
    (M_out^2) x (N_in^2) matrix carrying the map on vectorized states."""
    return sum(np.kron(K, K.conj()) for K in kraus.ops)


def complementary_spectrum_model(kraus: KrausSet, seed=0,
                                 rng=None) -> np.ndarray:
    """Spectrum of the square single-ring representative of a
    dimension-changing map.

    A map between spaces of different dimension has a rectangular
    superoperator and no eigenvalues of its own.  Its spectral model is the
    bi-unitarily invariant square matrix carrying the same singular values
    (the induced-Ginibre surrogate): by the single-ring law its eigenvalues
    fill the annulus of `complementary_ring_radii`.
    """
    rng = generator(seed) if rng is None else rng
    psi = rectangular_superop(kraus)
    sv = np.linalg.svd(psi, compute_uv=False)
    n = sv.size
    X = sample_cue(n, 0, rng=rng) @ (sv[:, None] * sample_cue(n, 0, rng=rng))
    vals = np.linalg.eigvals(X)
    return vals[np.argsort(-np.abs(vals))]


def complementary_ring_radii(N: int, M: int) -> tuple[float, float]:
    """(R_minus, R_plus) of the complementary-channel bulk spectrum:

    M >= N:  R_- = sqrt(1/N - N/M^2),  R_+ = 1/sqrt(N)
    M <= N:  R_- = sqrt(N/M^2 - 1/N),  R_+ = sqrt(N)/M

    At M = N the ring closes to a disk.
    """
    if M >= N:
        inner2 = 1.0 / N - N / M ** 2
        return float(np.sqrt(max(inner2, 0.0))), float(1.0 / np.sqrt(N))
    inner2 = N / M ** 2 - 1.0 / N
    return float(np.sqrt(max(inner2, 0.0))), float(np.sqrt(N) / M)


# ---------------------------------------------------------------------------
# measured chaotic maps

def measured_map_spectrum(U: np.ndarray, M_meas: int = 2, seed=0) -> ChannelBundle:
    """Unitary map followed by a random orthogonal-projector measurement.

    The measurement Kraus set is a Haar-rotated partition of the identity
    into M_meas equal-rank (up to remainder) projectors; the channel Kraus
    operators are {P_j U}.  For strongly chaotic U the bulk spectrum fills
    the Girko disk of radius ~ 1/sqrt(M_meas) with gap a = 1 - R.
    """
    N = U.shape[0]
    if M_meas < 1 or M_meas > N:
        raise ValueError("need 1 <= M_meas <= N")
    rng = generator(seed)
    W = sample_cue(N, 0, rng=rng)
    sizes = [N // M_meas + (1 if j < N % M_meas else 0) for j in range(M_meas)]
    ops = []
    start = 0
    for sz in sizes:
        cols = W[:, start:start + sz]
        ops.append(cols @ cols.conj().T @ U)
        start += sz
    return ChannelBundle(kraus=KrausSet(ops=np.stack(ops)))
