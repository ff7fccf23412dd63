"""Eigenphase statistics: unfolding, nearest-neighbor spacings, spacing
ratios, the spectral form factor, and the RMT reference curves."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import (R_MEAN_GOE, R_MEAN_GSE, R_MEAN_GUE, R_MEAN_POISSON)

__all__ = [
    "EigenphaseSpectrum",
    "eigenphases",
    "nns_distribution",
    "ratio_statistics",
    "spectral_form_factor",
    "sff_from_phases",
    "wigner_surmise",
    "poisson_pdf",
    "sff_theory",
    "r_mean_theory",
    "ks_distance",
]

R_MEANS = {
    "poisson": R_MEAN_POISSON,
    "goe": R_MEAN_GOE,
    "gue": R_MEAN_GUE,
    "gse": R_MEAN_GSE,
}


@dataclass
class EigenphaseSpectrum:
    """Sorted eigenphases phi_k in [0, 2pi) with unfolded values
    x_k = N phi_k / 2pi and cyclic spacings (the last spacing wraps around
    the circle, so spacings always sum to N and have unit mean)."""

    phases: np.ndarray
    unfolded: np.ndarray = field(init=False)
    spacings: np.ndarray = field(init=False)

    def __post_init__(self):
        phi = np.sort(np.mod(np.asarray(self.phases, dtype=float), 2.0 * np.pi))
        self.phases = phi
        N = phi.size
        self.unfolded = N * phi / (2.0 * np.pi)
        if N > 1:
            inner = np.diff(self.unfolded)
            wrap = self.unfolded[0] + N - self.unfolded[-1]
            self.spacings = np.append(inner, wrap)
        else:
            self.spacings = np.array([])

    @property
    def N(self) -> int:
        return self.phases.size


def eigenphases(U: np.ndarray, check_tol: float = 1e-8) -> EigenphaseSpectrum:
    """Full sorted eigenphase spectrum of a unitary matrix.

    Raises if any eigenvalue modulus strays from 1 by more than check_tol,
    which catches non-unitary input.
    """
    vals = np.linalg.eigvals(U)
    drift = float(np.max(np.abs(np.abs(vals) - 1.0)))
    if drift > check_tol:
        raise ValueError(f"input is not unitary: |eigenvalue|-1 up to {drift:.3e}")
    return EigenphaseSpectrum(np.angle(vals))


def nns_distribution(spectrum: EigenphaseSpectrum, bins="auto"):
    """Cyclic unfolded spacing sample and histogram (density normalized).

    Histograms use Freedman-Diaconis by default; KS statistics should be
    computed on the raw sample, never on the binned data.
    """
    s = spectrum.spacings
    counts, edges = np.histogram(s, bins=(bins if bins != "auto" else "fd"),
                                 density=True)
    return s, counts, edges


def ratio_statistics(spectrum_or_spacings, zero_tol: float = 1e-12):
    """Consecutive-spacing ratios r_k = min(s_{k+1}/s_k, s_k/s_{k+1}).

    Works cyclically around the spectrum.  Spacings below zero_tol (exact
    degeneracies, e.g. unsplit symmetry sectors) are excluded; the count of
    dropped pairs is reported.

    Returns (r_mean, r_sample, n_dropped).
    """
    if isinstance(spectrum_or_spacings, EigenphaseSpectrum):
        s = spectrum_or_spacings.spacings
    else:
        s = np.asarray(spectrum_or_spacings, dtype=float)
    s_next = np.roll(s, -1)
    good = (s > zero_tol) & (s_next > zero_tol)
    n_dropped = int(s.size - np.count_nonzero(good))
    a, b = s[good], s_next[good]
    r = np.minimum(a / b, b / a)
    if r.size == 0:
        raise ValueError("no nonzero spacing pairs; split degenerate sectors first")
    return float(np.mean(r)), r, n_dropped


def sff_from_phases(phase_sets, n_max: int) -> np.ndarray:
    """K(n) = <|tr U^n|^2> / N for n = 0..n_max from eigenphase sets.

    tr U^n = sum_k exp(i n phi_k); the ensemble average runs over the given
    spectra, which must share a dimension.
    """
    phase_sets = [np.asarray(p, dtype=float) for p in phase_sets]
    if not phase_sets:
        raise ValueError("empty ensemble")
    N = phase_sets[0].size
    if any(p.size != N for p in phase_sets):
        raise ValueError("all spectra must have the same dimension")
    n = np.arange(n_max + 1)
    acc = np.zeros(n_max + 1)
    for phi in phase_sets:
        tr = np.exp(1j * np.outer(n, phi)).sum(axis=1)
        acc += np.abs(tr) ** 2
    return acc / (N * len(phase_sets))


def spectral_form_factor(unitaries, n_max: int) -> np.ndarray:
    """SFF of an ensemble of same-dimension unitaries (see sff_from_phases)."""
    phases = [eigenphases(U).phases for U in unitaries]
    return sff_from_phases(phases, n_max)


# ---------------------------------------------------------------------------
# reference curves

def wigner_surmise(beta_dyson: int, s) -> np.ndarray:
    """Wigner surmise p_beta(s) for beta in {1, 2, 4} (unit mean spacing)."""
    s = np.asarray(s, dtype=float)
    if beta_dyson == 1:
        return (np.pi / 2.0) * s * np.exp(-np.pi * s**2 / 4.0)
    if beta_dyson == 2:
        return (32.0 / np.pi**2) * s**2 * np.exp(-4.0 * s**2 / np.pi)
    if beta_dyson == 4:
        return (2.0**18 / (3.0**6 * np.pi**3)) * s**4 * np.exp(-64.0 * s**2 / (9.0 * np.pi))
    raise ValueError(f"unsupported Dyson index {beta_dyson}; use 1, 2, or 4")


def poisson_pdf(s) -> np.ndarray:
    """Spacing density e^{-s} of the Poisson point process."""
    return np.exp(-np.asarray(s, dtype=float))


def surmise_cdf(beta_dyson: int, s) -> np.ndarray:
    """Closed-form CDFs of the surmises (for KS tests on raw samples)."""
    s = np.asarray(s, dtype=float)
    if beta_dyson == 0:
        return 1.0 - np.exp(-s)
    if beta_dyson == 1:
        return 1.0 - np.exp(-np.pi * s**2 / 4.0)
    if beta_dyson == 2:
        from scipy.special import erf
        a = 2.0 / np.sqrt(np.pi)
        return erf(a * s) - a * 2.0 * s * np.exp(-4.0 * s**2 / np.pi) / np.sqrt(np.pi)
    raise ValueError(f"no CDF implemented for Dyson index {beta_dyson}")


def r_mean_theory(kind: str) -> float:
    """Asymptotic <r> for poisson/goe/gue/gse (exact N=3 closed forms)."""
    try:
        return R_MEANS[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown ensemble kind {kind!r}") from None


def sff_theory(kind: str, tau) -> np.ndarray:
    """RMT spectral form factor K(tau), tau = n/N.

    poisson: 1;  gue: tau then 1;  goe: 2t - t ln(1+2t) then
    2 - t ln((2t+1)/(2t-1)).
    """
    tau = np.asarray(tau, dtype=float)
    kind = kind.lower()
    if kind == "poisson":
        return np.ones_like(tau)
    if kind == "gue":
        return np.where(tau <= 1.0, tau, 1.0)
    if kind == "goe":
        small = 2.0 * tau - tau * np.log1p(2.0 * tau)
        with np.errstate(divide="ignore", invalid="ignore"):
            big = 2.0 - tau * np.log((2.0 * tau + 1.0) / (2.0 * tau - 1.0))
        return np.where(tau <= 1.0, small, big)
    raise ValueError(f"unknown ensemble kind {kind!r}")


def ks_distance(sample, cdf) -> float:
    """Kolmogorov-Smirnov distance between a sample and a CDF callable."""
    x = np.sort(np.asarray(sample, dtype=float))
    n = x.size
    c = np.asarray(cdf(x), dtype=float)
    upper = np.max(np.arange(1, n + 1) / n - c)
    lower = np.max(c - np.arange(0, n) / n)
    return float(max(upper, lower))
