"""Concentration-of-measure demonstrations and bounds: Hoeffding sums, the
fat-equator effect, Levy concentration of entanglement entropy, minimal
output entropy estimation, and the finite-size checks of the subadditivity
inequality chain."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import betainc

from .channels import KrausSet, apply_channel, complementary_channel
from .entanglement import page_average, schmidt
from .rng import generator, substreams

__all__ = [
    "ConcentrationReport",
    "hoeffding_bound",
    "hoeffding_demo",
    "fat_equator",
    "latitude_cdf",
    "levy_entropy_bound",
    "entropy_concentration",
    "von_neumann_entropy",
    "min_output_entropy",
    "bh_inequality_check",
    "holevo_fixed_ensemble",
]


@dataclass
class ConcentrationReport:
    """Empirical deviation frequencies against their analytic upper bounds."""

    dimension: int
    epsilons: np.ndarray
    empirical: np.ndarray
    bound: np.ndarray

    @property
    def all_bounded(self) -> bool:
        return bool(np.all(self.empirical <= self.bound + 1e-12))


def hoeffding_bound(n: int, eps) -> np.ndarray:
    """P(|sum xi_i| / n >= eps) <= 2 exp(-n eps^2 / 2) for fair +-1 coins."""
    return 2.0 * np.exp(-n * np.asarray(eps, dtype=float) ** 2 / 2.0)


def hoeffding_demo(n: int, epsilons, trials: int, seed) -> ConcentrationReport:
    """Empirical deviation frequencies of fair coin sums vs the bound."""
    rng = generator(seed)
    sums = rng.choice([-1.0, 1.0], size=(trials, n)).sum(axis=1)
    eps = np.atleast_1d(np.asarray(epsilons, dtype=float))
    emp = np.array([np.mean(np.abs(sums) / n >= e) for e in eps])
    return ConcentrationReport(dimension=n, epsilons=eps, empirical=emp,
                               bound=hoeffding_bound(n, eps))


def fat_equator(n: int, samples: int, seed):
    """Polar angles of uniform points on the sphere S^n in R^(n+1).

    The latitude density is sin^(n-1)(theta) (normalized), sharply peaked
    at the equator for large n.  Returns (theta_sample, report) where the
    report checks the first-coordinate band bound 2 exp(-n eps^2 / 2).
    """
    rng = generator(seed)
    x = rng.standard_normal((samples, n + 1))
    x /= np.linalg.norm(x, axis=1)[:, None]
    theta = np.arccos(np.clip(x[:, 0], -1.0, 1.0))
    eps = np.array([0.2, 0.3, 0.5])
    emp = np.array([np.mean(np.abs(x[:, 0]) > e) for e in eps])
    report = ConcentrationReport(dimension=n, epsilons=eps, empirical=emp,
                                 bound=hoeffding_bound(n, eps))
    return theta, report


def latitude_cdf(n: int, theta) -> np.ndarray:
    """CDF of the polar angle on S^n: regularized incomplete beta of
    sin^2(theta) (split at the equator)."""
    th = np.asarray(theta, dtype=float)
    s2 = np.sin(th) ** 2
    half = 0.5 * betainc(n / 2.0, 0.5, np.clip(s2, 0.0, 1.0))
    return np.where(th <= np.pi / 2.0, half, 1.0 - half)


def von_neumann_entropy(rho: np.ndarray) -> float:
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)
    w = np.clip(w, 0.0, None)
    w = w[w > 0.0]
    w = w / w.sum()
    return float(-np.sum(w * np.log(w)))


def levy_entropy_bound(N: int, eps) -> np.ndarray:
    """Levy bound for the entanglement entropy of Haar states on H_N (x) H_N:
    P(|S - <S>| >= eps) <= 2 exp(-(N^2 - 1) eps^2 / (8 (pi ln N)^2))."""
    eps = np.asarray(eps, dtype=float)
    return 2.0 * np.exp(-(N * N - 1.0) * eps ** 2
                        / (8.0 * (np.pi * np.log(N)) ** 2))


def entropy_concentration(N: int, samples: int, seed,
                          epsilons=(0.05, 0.1, 0.2, 0.4)):
    """Entanglement entropies of Haar states on H_N (x) H_N against the
    Levy bound around the Page mean.

    Returns (entropy_sample, report); the sample standard deviation shrinks
    with N while the histogram peaks near the Page value.
    """
    ent = np.empty(samples)
    for i, rng in enumerate(substreams(seed, samples)):
        z = rng.standard_normal(N * N) + 1j * rng.standard_normal(N * N)
        z /= np.linalg.norm(z)
        ent[i] = schmidt(z, N, N).entropy_vn
    eps = np.atleast_1d(np.asarray(epsilons, dtype=float))
    mean = ent.mean()
    emp = np.array([np.mean(np.abs(ent - mean) >= e) for e in eps])
    report = ConcentrationReport(dimension=N, epsilons=eps, empirical=emp,
                                 bound=levy_entropy_bound(N, eps))
    return ent, report


# ---------------------------------------------------------------------------
# minimal output entropy

def _to_state(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x)


def _output_entropy(kraus: KrausSet, psi: np.ndarray) -> float:
    rho = apply_channel(kraus, np.outer(psi, psi.conj()))
    return von_neumann_entropy(rho)


def min_output_entropy(kraus: KrausSet, restarts: int = 64, iters: int = 200,
                       seed=0, grad_step: float = 1e-5) -> dict:
    """Multi-start estimate of S_min = min over pure inputs of S(Phi(psi)).

    Projected gradient descent on the input sphere with a central-difference
    numerical gradient (the real and imaginary parts of the amplitudes are
    the coordinates) and backtracking line search.  The estimate is an
    upper bound on the true minimum and is non-increasing in `restarts`.
    """
    n_in = kraus.dims[1]
    best_val, best_state = np.inf, None
    statuses = []
    for rng in substreams(seed, restarts):
        x = rng.standard_normal(n_in) + 1j * rng.standard_normal(n_in)
        psi = _to_state(x)
        val = _output_entropy(kraus, psi)
        step = 0.5
        converged = False
        for _ in range(iters):
            grad = np.empty(n_in, dtype=complex)
            for k in range(n_in):
                e = np.zeros(n_in)
                e[k] = grad_step
                d_re = (_output_entropy(kraus, _to_state(psi + e))
                        - _output_entropy(kraus, _to_state(psi - e)))
                d_im = (_output_entropy(kraus, _to_state(psi + 1j * e))
                        - _output_entropy(kraus, _to_state(psi - 1j * e)))
                grad[k] = (d_re + 1j * d_im) / (2.0 * grad_step)
            gnorm = np.linalg.norm(grad)
            if gnorm < 1e-9:
                converged = True
                break
            moved = False
            while step > 1e-12:
                cand = _to_state(psi - step * grad)
                cand_val = _output_entropy(kraus, cand)
                if cand_val < val - 1e-14:
                    psi, val = cand, cand_val
                    moved = True
                    step *= 1.5
                    break
                step *= 0.5
            if not moved:
                converged = True
                break
        statuses.append(converged)
        if val < best_val:
            best_val, best_state = val, psi
    return {"s_min": float(best_val), "argmin": best_state,
            "converged_fraction": float(np.mean(statuses))}


# ---------------------------------------------------------------------------
# subadditivity inequality chain (finite-size checks)

def _max_entangled(N: int) -> np.ndarray:
    return np.eye(N).reshape(-1) / np.sqrt(N)


def bh_inequality_check(N: int, M: int, samples: int, seed) -> dict:
    """For random conjugate-pair maps Phi (x) conj(Phi) applied to the
    maximally entangled input, test

        (a)  S(sigma) <= 2 ln M - ln(M)/M
        (b)  ||sigma||_inf >= 1/M

    with Phi the complementary map H_N -> H_M (N >> M).  The norm bound is
    an exact theorem; the entropy bound is the leading asymptotic form.
    Returns pass fractions and the sampled values.
    """
    if N < M:
        raise ValueError("the interesting regime is N >> M")
    phi_plus = _max_entangled(N)
    s_vals = np.empty(samples)
    norm_vals = np.empty(samples)
    for i, rng in enumerate(substreams(seed, samples)):
        ks = complementary_channel(N, M, 0, rng=rng)
        L = ks.ops                             # (N, M, N)
        # (Phi (x) conj(Phi)) |phi+><phi+|: Kraus pairs L_a (x) conj(L_b)
        # acting on phi+ give W_ab = L_a L_b^+ / sqrt(N), vectorized.
        W = np.einsum("abn,cdn->acbd", L, L.conj())   # L_a L_c^+ [b,d]
        vecs = W.reshape(N * N, M * M) / np.sqrt(N)
        sigma = vecs.T @ vecs.conj()
        sigma = (sigma + sigma.conj().T) / 2.0
        w = np.linalg.eigvalsh(sigma)
        norm_vals[i] = w[-1]
        wpos = np.clip(w, 0.0, None)
        wpos = wpos / wpos.sum()
        nz = wpos[wpos > 0]
        s_vals[i] = -np.sum(nz * np.log(nz))
    bound = 2.0 * np.log(M) - np.log(M) / M
    return {
        "entropy_bound": bound,
        "entropy_values": s_vals,
        "entropy_pass_fraction": float(np.mean(s_vals <= bound)),
        "norm_values": norm_vals,
        "norm_pass_fraction": float(np.mean(norm_vals >= 1.0 / M - 1e-9)),
    }


def holevo_fixed_ensemble(kraus: KrausSet, states, probs) -> float:
    """Holevo quantity of a fixed input ensemble:
    chi = S(sum_i p_i Phi(rho_i)) - sum_i p_i S(Phi(rho_i)) >= 0.

    Evaluation only; the capacity maximization over ensembles is out of
    scope.
    """
    p = np.asarray(probs, dtype=float)
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-10:
        raise ValueError("probs must form a probability simplex")
    outs = []
    for rho in states:
        rho = np.asarray(rho, dtype=complex)
        if rho.ndim == 1:
            rho = np.outer(rho, rho.conj())
        outs.append(apply_channel(kraus, rho))
    avg = sum(pi * o for pi, o in zip(p, outs))
    chi = von_neumann_entropy(avg) - sum(
        pi * von_neumann_entropy(o) for pi, o in zip(p, outs))
    return float(chi)
