"""Operator Schmidt structure of bipartite unitaries, entangling power and
gate typicality, thermalization of entangling power under local chaos, and
coupled standard maps with their universal transition parameter."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import jv

from .designs import swap_operator
from .ensembles import sample_cue, sample_haar_state
from .maps import (CoupledMapParams, MapParams, QuantumMapOperator,
                   apply_standard_map, build_standard_map, coherent_state)
from .rng import generator, substreams

__all__ = [
    "OperatorSchmidt",
    "EPRecord",
    "realign",
    "op_partial_transpose",
    "operator_entanglements",
    "entangling_power",
    "entangling_power_mc",
    "lu_invariance_check",
    "haar_ep_average",
    "haar_gt_average",
    "haar_E_average",
    "composition_average",
    "thermalization_curve",
    "thermalization_mc",
    "interaction_phase_matrix",
    "ep_of_diagonal_interaction",
    "bessel_ep_estimate",
    "build_coupled_map",
    "coupled_map_stepper",
    "lambda_parameter",
    "entanglement_evolution",
    "markov_renyi2",
    "thermalization_time",
    "perturbative_references",
]

DENSE_DIM_GUARD = 4096     # largest N^2 for dense operator-Schmidt work


@dataclass
class OperatorSchmidt:
    """Operator Schmidt values of U (lam) and U S (mu), each summing to N^2,
    with the linear operator entanglements they induce."""

    N: int
    lam: np.ndarray
    mu: np.ndarray

    @property
    def E_U(self) -> float:
        return 1.0 - float(np.sum(self.lam ** 2)) / self.N ** 4

    @property
    def E_US(self) -> float:
        return 1.0 - float(np.sum(self.mu ** 2)) / self.N ** 4


@dataclass
class EPRecord:
    """Entangling power e_p and gate typicality g_t with their Haar means."""

    N: int
    e_p: float
    g_t: float
    E_U: float
    E_US: float

    @property
    def haar_ep(self) -> float:
        return haar_ep_average(self.N)

    @property
    def haar_gt(self) -> float:
        return 0.5


def realign(U: np.ndarray, N: int) -> np.ndarray:
    """Realignment <ij|U^R|kl> = <ik|U|jl> of an operator on H_N (x) H_N."""
    if U.shape != (N * N, N * N):
        raise ValueError("operator shape does not match N^2")
    return np.ascontiguousarray(
        U.reshape(N, N, N, N).transpose(0, 2, 1, 3)).reshape(N * N, N * N)


def op_partial_transpose(U: np.ndarray, N: int) -> np.ndarray:
    """Partial transpose <ij|U^G|kl> = <il|U|kj> on the second factor."""
    if U.shape != (N * N, N * N):
        raise ValueError("operator shape does not match N^2")
    return np.ascontiguousarray(
        U.reshape(N, N, N, N).transpose(0, 3, 2, 1)).reshape(N * N, N * N)


def operator_entanglements(U: np.ndarray, N: int) -> OperatorSchmidt:
    """Schmidt values of U and U S from the singular values of U^R and U^G.

    For unitary U both sets sum to N^2; E(U) = 0 iff U is a product u (x) v,
    and E(U) is maximal iff U^R is unitary (dual unitarity).
    """
    if N * N > DENSE_DIM_GUARD:
        raise ValueError(f"dense operator-Schmidt limited to N^2 <= {DENSE_DIM_GUARD}")
    lam = np.linalg.svd(realign(U, N), compute_uv=False) ** 2
    mu = np.linalg.svd(op_partial_transpose(U, N), compute_uv=False) ** 2
    total = float(np.sum(lam))
    if abs(total - N * N) > 1e-6 * N * N:
        raise ValueError("Schmidt sum != N^2; input is likely not unitary")
    return OperatorSchmidt(N=N, lam=lam, mu=mu)


def _ep_gt_from_E(E_U: float, E_US: float, N: int) -> tuple[float, float]:
    E_S = 1.0 - 1.0 / N ** 2
    e_p = (E_U + E_US - E_S) / E_S
    g_t = (E_U - E_US + E_S) / (2.0 * E_S)
    return e_p, g_t


def entangling_power(U: np.ndarray, N: int) -> EPRecord:
    """e_p(U) = [E(U) + E(US) - E(S)] / E(S) and
    g_t(U) = [E(U) - E(US) + E(S)] / (2 E(S)).

    e_p is the Haar-product-average linear entanglement generated by U,
    normalized to [0, 1]; it vanishes iff U is local or locally equivalent
    to SWAP.  g_t = 1 singles out the SWAP class.
    """
    os = operator_entanglements(U, N)
    e_p, g_t = _ep_gt_from_E(os.E_U, os.E_US, N)
    return EPRecord(N=N, e_p=e_p, g_t=g_t, E_U=os.E_U, E_US=os.E_US)


def entangling_power_mc(U: np.ndarray, N: int, samples: int = 2000,
                        seed=0) -> float:
    """Direct Monte-Carlo e_p: mean linear entropy of U|a>|b> over Haar
    product inputs, rescaled by (N+1)/(N-1).  Cross-validates the closed
    formula; the formula path is authoritative."""
    acc = 0.0
    for rng in substreams(seed, samples):
        a = sample_haar_state(N, 0, rng=rng)
        b = sample_haar_state(N, 0, rng=rng)
        psi = (U @ np.kron(a, b)).reshape(N, N)
        s = np.linalg.svd(psi, compute_uv=False) ** 2
        acc += 1.0 - float(np.sum(s ** 2))
    return (N + 1.0) / (N - 1.0) * acc / samples


def lu_invariance_check(U: np.ndarray, N: int, trials: int = 10,
                        seed=0, tol: float = 1e-8) -> dict:
    """Verify E, e_p, g_t are invariant under (uA (x) uB) U (vA (x) vB)."""
    base = entangling_power(U, N)
    worst = 0.0
    for rng in substreams(seed, trials):
        locals_ = [sample_cue(N, 0, rng=rng) for _ in range(4)]
        dressed = (np.kron(locals_[0], locals_[1]) @ U
                   @ np.kron(locals_[2], locals_[3]))
        rec = entangling_power(dressed, N)
        worst = max(worst, abs(rec.e_p - base.e_p), abs(rec.g_t - base.g_t),
                    abs(rec.E_U - base.E_U))
    return {"max_deviation": worst, "passed": worst < tol,
            "e_p": base.e_p, "g_t": base.g_t}


def haar_ep_average(N: int) -> float:
    """Haar mean of e_p over U(N^2): (N^2 - 1)/(N^2 + 1)."""
    return (N * N - 1.0) / (N * N + 1.0)


def haar_gt_average(N: int) -> float:
    return 0.5


def haar_E_average(N: int) -> float:
    """Haar mean of E(U) (equals the e_p mean)."""
    return (N * N - 1.0) / (N * N + 1.0)


def composition_average(ep_U: float, ep_V: float, ep_bar: float) -> float:
    """Local-Haar average of e_p[U (uA (x) uB) V]:
    e_p(U) + e_p(V) - e_p(U) e_p(V) / ep_bar.  Same form holds for g_t with
    its Haar mean 1/2."""
    return ep_U + ep_V - ep_U * ep_V / ep_bar


def thermalization_curve(ep_U: float, n, ep_bar: float) -> np.ndarray:
    """ep_bar [1 - (1 - e_p(U)/ep_bar)^n]: exponential approach of the
    locally-averaged entangling power to its Haar value."""
    n = np.asarray(n, dtype=float)
    return ep_bar * (1.0 - (1.0 - ep_U / ep_bar) ** n)


def thermalization_mc(U: np.ndarray, N: int, n_max: int, histories: int = 100,
                      seed=0) -> np.ndarray:
    """Direct e_p(U^(n)) averaged over histories of fresh local unitaries
    each step; index n = 1..n_max."""
    acc = np.zeros(n_max)
    for rng in substreams(seed, histories):
        prod = np.eye(N * N, dtype=complex)
        for n in range(n_max):
            uA = sample_cue(N, 0, rng=rng)
            uB = sample_cue(N, 0, rng=rng)
            prod = np.kron(uA, uB) @ U @ prod
            acc[n] += entangling_power(prod, N).e_p
    return acc / histories


# ---------------------------------------------------------------------------
# coupled standard maps

def interaction_phase_matrix(params: CoupledMapParams) -> np.ndarray:
    """Position-lattice phases d[n, m] = exp[i (N b / 2 pi) cos(2 pi (q_n + q_m))]
    of the coupling kick (the same phase convention as the single-map kick,
    with K -> b)."""
    N = params.N
    q = (np.arange(N) + params.alpha) / N
    return np.exp(1j * N * params.b / (2.0 * np.pi)
                  * np.cos(2.0 * np.pi * (q[:, None] + q[None, :])))


def ep_of_diagonal_interaction(dmat: np.ndarray) -> float:
    """e_p of an interaction diagonal in the product position basis.

    For diagonal U_b, U_b^R is supported on an N x N block whose singular
    values are those of the phase matrix d, and U_b^G is itself diagonal,
    so E(U_b S) is maximal and e_p(U_b) = E(U_b)/E(S).  This avoids any
    N^2 x N^2 dense work.
    """
    N = dmat.shape[0]
    s2 = np.linalg.svd(dmat, compute_uv=False) ** 2
    E_U = 1.0 - float(np.sum(s2 ** 2)) / N ** 4
    return E_U / (1.0 - 1.0 / N ** 2)


def bessel_ep_estimate(N: int, b: float, k_max: int = 60) -> float:
    """Large-N estimate e_p(U_b) =~ 1 - sum_k J_k^4(b N / 2 pi)."""
    theta = b * N / (2.0 * np.pi)
    ks = np.arange(-k_max, k_max + 1)
    return 1.0 - float(np.sum(jv(ks, theta) ** 4))


def lambda_parameter(N: int, b: float) -> float:
    """Universal transition parameter
    Lambda = (N^2 / 4 pi^2) [1 - J_0^2(N b / 2 pi)] =~ N^4 b^2 / 32 pi^4."""
    return N * N / (4.0 * np.pi ** 2) * (1.0 - jv(0, N * b / (2.0 * np.pi)) ** 2)


def build_coupled_map(params: CoupledMapParams) -> QuantumMapOperator:
    """Dense Floquet operator [U_S(K1) (x) U_S(K2)] U_b on H_N (x) H_N.

    Guarded to N^2 <= DENSE_DIM_GUARD; use coupled_map_stepper for larger N.
    """
    if params.N ** 2 > DENSE_DIM_GUARD:
        raise ValueError(f"dense coupled map limited to N^2 <= {DENSE_DIM_GUARD}")
    u1 = build_standard_map(params.single(1)).matrix
    u2 = build_standard_map(params.single(2)).matrix
    ub = np.diag(interaction_phase_matrix(params).reshape(-1))
    U = np.kron(u1, u2) @ ub
    return QuantumMapOperator(matrix=U, kind="coupled", params=params)


def coupled_map_stepper(params: CoupledMapParams):
    """One-step evolver for states stored as N x N coefficient matrices:
    interaction phases elementwise, then FFT-based local maps on each index.
    """
    dmat = interaction_phase_matrix(params)
    p1, p2 = params.single(1), params.single(2)

    def step(Psi: np.ndarray) -> np.ndarray:
        out = Psi * dmat
        out = apply_standard_map(out.T, p1).T    # local map on the row index
        return apply_standard_map(out, p2)       # and on the column index

    return step


def entanglement_evolution(params: CoupledMapParams, T: int,
                           initial: str = "random-product", seed=0,
                           coherent_centers=((0.5, 0.0), (0.5, 0.0))):
    """S_vN(t) and Renyi-2 S_2(t) of the evolving state for t = 0..T.

    initial: 'random-product' (Haar local factors) or 'coherent-product'
    with the given (q, p) centers.

    Returns dict with keys 't', 's_vn', 's2'.
    """
    N = params.N
    rng = generator(seed)
    if initial == "random-product":
        a = sample_haar_state(N, 0, rng=rng)
        b = sample_haar_state(N, 0, rng=rng)
    elif initial == "coherent-product":
        (qa, pa), (qb, pb) = coherent_centers
        a = coherent_state(N, qa, pa, alpha=params.alpha)
        b = coherent_state(N, qb, pb, alpha=params.alpha)
    else:
        raise ValueError(f"unknown initial kind {initial!r}")
    Psi = np.outer(a, b)
    step = coupled_map_stepper(params)
    s_vn, s2 = [], []
    for t in range(T + 1):
        lam = np.linalg.svd(Psi, compute_uv=False) ** 2
        lam = lam[lam > 1e-300]
        lam = lam / lam.sum()
        s_vn.append(float(-np.sum(lam * np.log(lam))))
        s2.append(float(-np.log(np.sum(lam ** 2))))
        if t < T:
            Psi = step(Psi)
    return {"t": np.arange(T + 1), "s_vn": np.asarray(s_vn),
            "s2": np.asarray(s2)}


def markov_renyi2(ep: float, t, N: int) -> np.ndarray:
    """Markov-approximation Renyi-2 curve S_2(t) = -ln[2/N + (1 - e_p)^t]."""
    t = np.asarray(t, dtype=float)
    return -np.log(2.0 / N + (1.0 - ep) ** t)


def thermalization_time(ep: float, N: int) -> float:
    """t* = -ln N / ln(1 - e_p), the Markov saturation scale."""
    return float(-np.log(N) / np.log1p(-ep))


def perturbative_references(Lambda: float, t=None, ensemble: str = "cue") -> dict:
    """Weak-coupling reference values for Lambda << 1 (reference curves only):

    eigenfunction means   <S_L> = pi^(3/2) sqrt(Lambda)/2,
                          <S_vN> = pi^(3/2) sqrt(Lambda);
    quench growth         S_L(t) =~ 4 pi t sqrt(Lambda)  (t = n D sqrt(Lambda));
    quench saturation     5 sqrt(pi/8) sqrt(Lambda) (COE),
                          5 pi^(3/2)/8 sqrt(Lambda) (CUE).
    """
    root = np.sqrt(Lambda)
    sat_const = {"coe": 5.0 * np.sqrt(np.pi / 8.0),
                 "cue": 5.0 * np.pi ** 1.5 / 8.0}[ensemble.lower()]
    out = {
        "eigenfunction_S_L": np.pi ** 1.5 * root / 2.0,
        "eigenfunction_S_vN": np.pi ** 1.5 * root,
        "quench_saturation_S_L": sat_const * root,
    }
    if t is not None:
        out["quench_S_L"] = 4.0 * np.pi * np.asarray(t, dtype=float) * root
    return out
