"""Command-line front end.

Subcommand tree:

    map      spectrum | evolve
    stats    nns | ratio | sff
    state    pr | shannon | wehrl
    design   delta2 | frame
    ent      schmidt | page | mp | pt | concurrence
    opent    ep | thermalize | coupled
    channel  random | mixed | diluted | complementary | kesten | spectrum
    conc     hoeffding | levy | smin | bh
    figure   <id>

Every run writes a manifest (parameters + seed + version) next to its data.
Exit codes: 0 success, 2 invalid arguments, 3 numerical-validation failure.
Data outputs (CSV/JSON) are byte-deterministic for a fixed manifest.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import channels as chn
from . import concentration as conc
from . import designs as dg
from . import entanglement as ent
from . import maps as mp
from . import operator_ent as oe
from . import spectral as sp
from . import states as st
from .channels import NotCompletelyPositiveError
from .constants import GOLDEN_PHASE
from .dataio import (map_config_from_dict, save_matrix_dump, write_csv,
                     write_json, write_manifest)
from .ensembles import EnsembleSpec, sample, sample_cue
from .figures import FIGURES, run_figure
from .maps import SymmetryViolationError
from .rng import substreams

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class NumericalValidationError(RuntimeError):
    pass


def _phase(text: str) -> float:
    """Boundary phase literal: a float, or 'golden' for (sqrt(5)-1)/2."""
    if text == "golden":
        return GOLDEN_PHASE
    v = float(text)
    if not 0.0 <= v < 1.0:
        raise argparse.ArgumentTypeError("phase must lie in [0, 1) or be 'golden'")
    return v


def _pmap(fn, items, workers: int):
    """Order-preserving parallel map (threads; BLAS releases the GIL)."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


_ORCHESTRATION_KEYS = ("func", "command", "subcommand", "out", "workers")


def _emit(args, name: str, summary: dict) -> None:
    out = _outdir(args)
    params = {k: v for k, v in vars(args).items()
              if k not in _ORCHESTRATION_KEYS and v is not None}
    write_manifest(out, name, params, getattr(args, "seed", 0))
    write_json(out / "summary.json", summary)
    print(json.dumps({"command": name, **{
        k: v for k, v in summary.items() if np.isscalar(v) or isinstance(v, str)
    }}, sort_keys=True, default=str))


def _build_map(args) -> np.ndarray:
    if args.map == "baker":
        return mp.build_baker_map(args.N).matrix
    params = mp.MapParams(args.N, args.K, args.alpha, args.beta)
    return mp.build_standard_map(params).matrix


# ---------------------------------------------------------------------------
# map

def cmd_map_spectrum(args):
    out = _outdir(args)
    U = _build_map(args)
    if args.parity:
        blocks = mp.parity_split(U)
        phases = np.concatenate([sp.eigenphases(b, check_tol=1e-6).phases
                                 for b in blocks])
        phases.sort()
    else:
        phases = sp.eigenphases(U).phases
    write_csv(out / "eigenphases.csv", {"phi": phases})
    if args.dump_operator:
        save_matrix_dump(out / "operator.bin", U)
    _emit(args, "map spectrum", {"N": args.N, "n_phases": len(phases)})


def cmd_map_evolve(args):
    out = _outdir(args)
    psi0 = mp.coherent_state(args.N, args.q0, args.p0, alpha=args.alpha)
    if args.map == "baker":
        op = mp.build_baker_map(args.N) if args.N <= 2048 else None
        traj = st.entropy_trajectory(
            op if op is not None else mp.build_baker_map(args.N),
            psi0, args.T, measure=args.measure)
    else:
        params = mp.MapParams(args.N, args.K, args.alpha, args.beta)
        traj = st.entropy_trajectory(params, psi0, args.T, measure=args.measure)
    write_csv(out / "trajectory.csv", {"t": np.arange(args.T + 1),
                                       "value": traj})
    _emit(args, "map evolve", {"measure": args.measure,
                               "final": float(traj[-1])})


# ---------------------------------------------------------------------------
# stats

def cmd_stats_nns(args):
    out = _outdir(args)
    U = _build_map(args)
    if args.parity:
        blocks = mp.parity_split(U)
        s = np.concatenate([sp.eigenphases(b, check_tol=1e-6).spacings
                            for b in blocks])
    else:
        s = sp.eigenphases(U).spacings
    counts, edges = np.histogram(s, bins="fd", density=True)
    centers = 0.5 * (edges[1:] + edges[:-1])
    surmise = {"poisson": lambda v: sp.poisson_pdf(v),
               "goe": lambda v: sp.wigner_surmise(1, v),
               "gue": lambda v: sp.wigner_surmise(2, v)}[args.law](centers)
    write_csv(out / "nns.csv", {"s": centers, "count": counts,
                                "surmise": surmise})
    ks = sp.ks_distance(s, lambda v: sp.surmise_cdf(
        {"poisson": 0, "goe": 1, "gue": 2}[args.law], v))
    _emit(args, "stats nns", {"ks": ks, "law": args.law, "n_spacings": len(s)})


def cmd_stats_ratio(args):
    out = _outdir(args)
    Ks = args.K + np.linspace(-args.K_window / 2, args.K_window / 2,
                              args.samples)

    def one(K):
        a = argparse.Namespace(**{**vars(args), "K": float(K)})
        U = _build_map(a)
        if args.parity:
            return [sp.ratio_statistics(sp.eigenphases(b, check_tol=1e-6))[0]
                    for b in mp.parity_split(U)]
        return [sp.ratio_statistics(sp.eigenphases(U))[0]]

    vals = np.concatenate(_pmap(one, list(Ks), args.workers))
    summary = {"r_mean": float(vals.mean()),
               "r_se": float(vals.std() / np.sqrt(len(vals))),
               "theory": {k: sp.r_mean_theory(k)
                          for k in ("poisson", "goe", "gue")}}
    _emit(args, "stats ratio", {"r_mean": summary["r_mean"],
                                "r_se": summary["r_se"]})
    write_json(_outdir(args) / "ratio.json", summary)


def cmd_stats_sff(args):
    out = _outdir(args)
    Ks = args.K + np.linspace(-args.K_window / 2, args.K_window / 2,
                              args.samples)

    def one(K):
        a = argparse.Namespace(**{**vars(args), "K": float(K)})
        return sp.eigenphases(_build_map(a)).phases

    phases = _pmap(one, list(Ks), args.workers)
    n_max = args.n_max if args.n_max else 2 * args.N
    K_emp = sp.sff_from_phases(phases, n_max)
    n = np.arange(n_max + 1)
    tau = n / args.N
    K_th = sp.sff_theory(args.law, np.where(tau > 0, tau, 1e-9))
    write_csv(out / "sff.csv", {"n": n, "tau": tau, "K_emp": K_emp,
                                "K_theory": K_th})
    _emit(args, "stats sff", {"samples": args.samples, "n_max": n_max})


# ---------------------------------------------------------------------------
# state

def cmd_state_pr(args):
    U = _build_map(args)
    _, vecs = np.linalg.eig(U)
    t = np.abs(vecs) ** 2
    t /= t.sum(axis=0)
    pr = 1.0 / np.sum(t * t, axis=0)
    _emit(args, "state pr", {"pr_over_N_mean": float(pr.mean() / args.N),
                             "ipr_mean": float(np.mean(1.0 / pr))})


def cmd_state_shannon(args):
    vals = [st.shannon_entropy(r.standard_normal(args.N)
                               + 1j * r.standard_normal(args.N))
            for r in substreams(args.seed, args.samples)]
    _emit(args, "state shannon", {
        "mean": float(np.mean(vals)),
        "haar_prediction": st.shannon_mean_complex(args.N)})


def cmd_state_wehrl(args):
    out = _outdir(args)
    psi0 = mp.coherent_state(args.N, args.q0, args.p0)
    op = (mp.build_baker_map(args.N) if args.map == "baker"
          else mp.MapParams(args.N, args.K, args.alpha, args.beta))
    traj = st.entropy_trajectory(op, psi0, args.T, measure="wehrl_bits")
    write_csv(out / "wehrl.csv", {"t": np.arange(args.T + 1), "H_bits": traj})
    _emit(args, "state wehrl", {
        "slope": st.entropy_growth_rate(traj, min(args.T, 8)),
        "plateau_prediction_bits": st.wehrl_mean_haar(args.N) / np.log(2.0)})


# ---------------------------------------------------------------------------
# design

def cmd_design_delta2(args):
    out = _outdir(args)
    Ks = np.asarray([float(k) for k in args.K_list.split(",")])
    proto = mp.MapParams(args.N, 1.0, args.alpha, args.beta)
    mean, std = dg.delta2_vs_kick(Ks, proto, delta_K=args.delta_K, M=args.M,
                                  burn_in=args.burn_in, stride=args.stride,
                                  histories=args.histories, seed=args.seed)
    write_csv(out / "delta2.csv", {"K": Ks, "delta2": mean,
                                   "stderr": std / np.sqrt(args.histories)})
    _emit(args, "design delta2", {"delta2_last": float(mean[-1])})


def cmd_design_frame(args):
    ens = dg.StateEnsemble(np.stack([
        r.standard_normal(args.N) + 1j * r.standard_normal(args.N)
        for r in substreams(args.seed, args.M)]))
    diag = dg.design_diagnostics(ens, t=args.t)
    _emit(args, "design frame", {
        "t": diag.t, "d_t": diag.d_t, "F_t": diag.F_t,
        "F2_off": diag.F2_off, "delta2": diag.delta2, "M": diag.M})


# ---------------------------------------------------------------------------
# ent

def cmd_ent_schmidt(args):
    out = _outdir(args)
    if args.dim != args.N1 * args.N2:
        raise argparse.ArgumentTypeError(
            f"dim {args.dim} does not factor as {args.N1} x {args.N2}")
    lams = []
    for r in substreams(args.seed, args.samples):
        z = r.standard_normal(args.dim) + 1j * r.standard_normal(args.dim)
        lams.append(ent.schmidt(z / np.linalg.norm(z), args.N1, args.N2)
                    .eigenvalues)
    lams = np.stack(lams)
    write_csv(out / "schmidt.csv",
              {f"lambda_{k}": lams[:, k] for k in range(args.N1)})
    _emit(args, "ent schmidt", {"mean_S_vN": float(np.mean(
        [-np.sum(l[l > 0] * np.log(l[l > 0])) for l in lams]))})


def cmd_ent_page(args):
    purity, s_lin = ent.lubkin_average(args.N1, args.N2)
    _emit(args, "ent page", {
        "page_S_vN": ent.page_average(args.N1, args.N2),
        "lubkin_purity": purity, "lubkin_S_L": s_lin})


def cmd_ent_mp(args):
    out = _outdir(args)
    xm, xp = ent.mp_support(args.Q)
    x = np.linspace(max(xm, 1e-4), xp, 400)
    write_csv(out / "mp.csv", {"x": x, "density": ent.mp_density(args.Q, x)})
    _emit(args, "ent mp", {"Q": args.Q, "x_minus": xm, "x_plus": xp})


def cmd_ent_pt(args):
    out = _outdir(args)
    mus = []
    for r in substreams(args.seed, args.samples):
        g = (r.standard_normal((args.N1 * args.N2, args.N3))
             + 1j * r.standard_normal((args.N1 * args.N2, args.N3)))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        mus.append(np.linalg.eigvalsh(
            ent.partial_transpose(rho, args.N1, args.N2)))
    mus = np.concatenate(mus)
    model = ent.pt_semicircle_model(args.N1, args.N2, args.N3)
    write_csv(out / "pt_eigenvalues.csv", {"mu": mus})
    negs = np.array([max(0.0, 0.5 * (np.sum(np.abs(m)) - 1.0))
                     for m in mus.reshape(args.samples, -1)])
    _emit(args, "ent pt", {
        "npt_fraction": float(np.mean(
            mus.reshape(args.samples, -1)[:, 0] < -1e-10)),
        "mean_negativity": float(negs.mean()),
        "model_radius": model.radius,
        "npt_threshold_N3": model.npt_threshold,
        "third_moment_exact": ent.pt_third_moment_avg(args.N1, args.N2,
                                                      args.N3)})


def cmd_ent_concurrence(args):
    out = _outdir(args)
    c, p = ent.preconcurrence_statistics(args.L, args.samples, args.seed)
    counts, edges = np.histogram(c, bins=80, density=True)
    write_csv(out / "preconcurrence.csv",
              {"c": 0.5 * (edges[1:] + edges[:-1]), "count": counts})
    _emit(args, "ent concurrence", {"L": args.L, "P_entangled": p,
                                    "mean_c": float(c.mean())})


# ---------------------------------------------------------------------------
# opent

_GATES = {
    "swap": lambda N: dg.swap_operator(N),
    "cnot": lambda N: np.array([[1, 0, 0, 0], [0, 1, 0, 0],
                                [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex),
}


def cmd_opent_ep(args):
    if args.gate in _GATES:
        U = _GATES[args.gate](args.N)
        if args.gate == "cnot" and args.N != 2:
            raise argparse.ArgumentTypeError("cnot needs --N 2")
    else:
        U = sample_cue(args.N ** 2, args.seed)
    rec = oe.entangling_power(U, args.N)
    _emit(args, "opent ep", {
        "e_p": rec.e_p, "g_t": rec.g_t, "E_U": rec.E_U, "E_US": rec.E_US,
        "haar_ep": rec.haar_ep, "haar_gt": rec.haar_gt})


def cmd_opent_thermalize(args):
    out = _outdir(args)
    U = sample_cue(args.N ** 2, args.seed)
    ep0 = oe.entangling_power(U, args.N).e_p
    ep_bar = oe.haar_ep_average(args.N)
    ns = np.arange(1, args.n_max + 1)
    curve = oe.thermalization_curve(ep0, ns, ep_bar)
    mc = oe.thermalization_mc(U, args.N, args.n_max,
                              histories=args.histories, seed=args.seed)
    write_csv(out / "thermalization.csv", {"n": ns, "theory": curve, "mc": mc})
    _emit(args, "opent thermalize", {"e_p0": ep0, "haar_ep": ep_bar})


def cmd_opent_coupled(args):
    out = _outdir(args)
    cp = mp.CoupledMapParams(N=args.N, K1=args.K, K2=args.K, b=args.b,
                             alpha=args.alpha, beta=args.beta)
    ep = oe.ep_of_diagonal_interaction(oe.interaction_phase_matrix(cp))
    res = oe.entanglement_evolution(cp, args.T, initial=args.initial,
                                    seed=args.seed)
    mk = oe.markov_renyi2(ep, res["t"], args.N)
    write_csv(out / "coupled_entropy.csv",
              {"t": res["t"], "s_vn": res["s_vn"], "s2": res["s2"],
               "markov_s2": mk})
    _emit(args, "opent coupled", {
        "e_p_interaction": ep,
        "lambda_parameter": oe.lambda_parameter(args.N, args.b),
        "s2_final": float(res["s2"][-1])})


# ---------------------------------------------------------------------------
# channel

def _check_cptp(bundle) -> None:
    res = bundle.kraus.tp_residual()
    if res > 1e-9:
        raise NumericalValidationError(f"CPTP residual {res:.3e} exceeds 1e-9")
    w = np.linalg.eigvalsh((bundle.choi + bundle.choi.conj().T) / 2.0)
    if w[0] < -1e-8:
        raise NumericalValidationError(f"Choi eigenvalue {w[0]:.3e} below -1e-8")


def cmd_channel_random(args):
    out = _outdir(args)
    bundle = chn.random_channel(args.N, args.M, args.seed)
    _check_cptp(bundle)
    ev = bundle.spectrum
    write_csv(out / "spectrum.csv", {"re": ev.real, "im": ev.imag})
    _emit(args, "channel random", {"gap": bundle.gap,
                                   "bulk_radius": float(np.abs(ev[1:]).max())})


def cmd_channel_mixed(args):
    out = _outdir(args)
    us = [sample_cue(args.N, (args.seed, i)) for i in range(args.M)]
    w = np.asarray([float(x) for x in args.weights.split(",")]) \
        if args.weights else np.full(args.M, 1.0 / args.M)
    bundle = chn.mixed_unitary_channel(w, us)
    _check_cptp(bundle)
    ev = bundle.spectrum
    write_csv(out / "spectrum.csv", {"re": ev.real, "im": ev.imag})
    _emit(args, "channel mixed", {"gap": bundle.gap})


def cmd_channel_diluted(args):
    out = _outdir(args)
    bundle = chn.diluted_unitary(args.p, args.M, args.N, args.seed)
    _check_cptp(bundle)
    rm, rp, pc = chn.ring_radii(args.p, args.M)
    ev = bundle.spectrum
    write_csv(out / "spectrum.csv", {"re": ev.real, "im": ev.imag})
    mods = np.abs(ev[1:])
    _emit(args, "channel diluted", {
        "R_minus": rm, "R_plus": rp, "p_c": pc,
        "classification": "disk" if args.p >= pc else "ring",
        "fraction_in_ring": float(np.mean((mods >= rm - 0.05)
                                          & (mods <= rp + 0.05)))})


def cmd_channel_complementary(args):
    out = _outdir(args)
    ks = chn.complementary_channel(args.N, args.M, args.seed)
    ev = chn.complementary_spectrum_model(ks, seed=(args.seed, 1))
    rm, rp = chn.complementary_ring_radii(args.N, args.M)
    write_csv(out / "spectrum.csv", {"re": ev.real, "im": ev.imag})
    mods = np.abs(ev)
    _emit(args, "channel complementary", {
        "R_minus": rm, "R_plus": rp,
        "classification": "disk" if rm == 0.0 else "ring",
        "fraction_in_ring": float(np.mean((mods >= rm - 0.05)
                                          & (mods <= rp + 0.05)))})


def cmd_channel_kesten(args):
    out = _outdir(args)
    lo, hi = chn.kesten_support(args.M)
    x = np.linspace(lo + 1e-4, hi - 1e-4, 400)
    write_csv(out / "kesten.csv", {"x": x, "density": chn.kesten_density(args.M, x)})
    summary = {"M": args.M, "support_hi": hi}
    if args.N:
        xs = []
        for r in substreams(args.seed, args.realizations):
            vs = [sample_cue(args.N, 0, rng=r) for _ in range(args.M)]
            xs.append(args.M * np.linalg.svd(sum(vs) / args.M,
                                             compute_uv=False) ** 2)
        xs = np.concatenate(xs)
        summary["ks"] = sp.ks_distance(xs, lambda v: chn.kesten_cdf(args.M, v))
    _emit(args, "channel kesten", summary)


def cmd_channel_spectrum(args):
    out = _outdir(args)
    U = _build_map(args)
    bundle = chn.measured_map_spectrum(U, args.M, seed=args.seed)
    _check_cptp(bundle)
    ev = bundle.spectrum
    write_csv(out / "spectrum.csv", {"re": ev.real, "im": ev.imag})
    _emit(args, "channel spectrum", {
        "gap": bundle.gap, "girko_radius": 1.0 / np.sqrt(args.M)})


# ---------------------------------------------------------------------------
# conc

def cmd_conc_hoeffding(args):
    eps = np.asarray([float(e) for e in args.eps.split(",")])
    rep = conc.hoeffding_demo(args.n, eps, args.trials, args.seed)
    _emit(args, "conc hoeffding", {
        "all_bounded": rep.all_bounded,
        "empirical": rep.empirical.tolist(), "bound": rep.bound.tolist()})


def cmd_conc_levy(args):
    out = _outdir(args)
    s, rep = conc.entropy_concentration(args.N, args.samples, args.seed)
    counts, edges = np.histogram(s, bins=50, density=True)
    write_csv(out / "entropy_hist.csv",
              {"S": 0.5 * (edges[1:] + edges[:-1]), "density": counts})
    _emit(args, "conc levy", {
        "mean": float(s.mean()), "std": float(s.std()),
        "page": ent.page_average(args.N, args.N),
        "all_bounded": rep.all_bounded})


def cmd_conc_smin(args):
    bundle = chn.random_channel(args.N, args.M, args.seed)
    res = conc.min_output_entropy(bundle.kraus, restarts=args.restarts,
                                  iters=args.iters, seed=args.seed)
    _emit(args, "conc smin", {
        "s_min": res["s_min"],
        "converged_fraction": res["converged_fraction"],
        "max_entropy": float(np.log(args.N))})


def cmd_conc_bh(args):
    res = conc.bh_inequality_check(args.N, args.M, args.samples, args.seed)
    _emit(args, "conc bh", {
        "entropy_bound": res["entropy_bound"],
        "entropy_pass_fraction": res["entropy_pass_fraction"],
        "norm_pass_fraction": res["norm_pass_fraction"]})


# ---------------------------------------------------------------------------
# figure

def cmd_figure(args):
    out = _outdir(args)
    overrides = {}
    if args.N is not None:
        overrides["N"] = args.N
    if args.samples is not None:
        overrides["samples"] = args.samples
    summary = run_figure(args.fig_id, out, seed=args.seed,
                         workers=args.workers, **overrides)
    params = {k: v for k, v in vars(args).items()
              if k not in _ORCHESTRATION_KEYS and v is not None}
    write_manifest(out, f"figure {args.fig_id}", params, args.seed)
    print(json.dumps({"figure": args.fig_id, "out": str(out)}))


# ---------------------------------------------------------------------------
# parser assembly

def _add_common(p, N=200):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--N", type=int, default=N)


def _add_map_args(p):
    p.add_argument("--map", choices=("standard", "baker"), default="standard")
    p.add_argument("--K", type=float, default=10.0)
    p.add_argument("--alpha", type=_phase, default=0.5)
    p.add_argument("--beta", type=_phase, default=0.0)
    p.add_argument("--parity", action="store_true",
                   help="split parity sectors before spectral analysis")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="chaoslab",
        description="quantum chaos / random matrix / channel numerics")
    ap.add_argument("--config", default=None,
                    help="JSON file of flag defaults (flat key-value)")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("map").add_subparsers(dest="subcommand", required=True)
    p = g.add_parser("spectrum")
    _add_common(p)
    _add_map_args(p)
    p.add_argument("--dump-operator", action="store_true")
    p.set_defaults(func=cmd_map_spectrum)
    p = g.add_parser("evolve")
    _add_common(p)
    _add_map_args(p)
    p.add_argument("--T", type=int, default=20)
    p.add_argument("--q0", type=float, default=1 / 3)
    p.add_argument("--p0", type=float, default=2 / 3)
    p.add_argument("--measure", default="wehrl_bits")
    p.set_defaults(func=cmd_map_evolve)

    g = sub.add_parser("stats").add_subparsers(dest="subcommand", required=True)
    p = g.add_parser("nns")
    _add_common(p, N=1000)
    _add_map_args(p)
    p.add_argument("--law", choices=("poisson", "goe", "gue"), default="gue")
    p.set_defaults(func=cmd_stats_nns)
    p = g.add_parser("ratio")
    _add_common(p, N=1000)
    _add_map_args(p)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--K-window", type=float, default=0.2, dest="K_window")
    p.set_defaults(func=cmd_stats_ratio)
    p = g.add_parser("sff")
    _add_common(p, N=400)
    _add_map_args(p)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--K-window", type=float, default=0.5, dest="K_window")
    p.add_argument("--law", choices=("poisson", "goe", "gue"), default="gue")
    p.add_argument("--n-max", type=int, default=None, dest="n_max")
    p.set_defaults(func=cmd_stats_sff)

    g = sub.add_parser("state").add_subparsers(dest="subcommand", required=True)
    p = g.add_parser("pr")
    _add_common(p, N=750)
    _add_map_args(p)
    p.set_defaults(func=cmd_state_pr)
    p = g.add_parser("shannon")
    _add_common(p, N=1000)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_state_shannon)
    p = g.add_parser("wehrl")
    _add_common(p, N=510)
    _add_map_args(p)
    p.add_argument("--T", type=int, default=30)
    p.add_argument("--q0", type=float, default=1 / 3)
    p.add_argument("--p0", type=float, default=2 / 3)
    p.set_defaults(func=cmd_state_wehrl)

    g = sub.add_parser("design").add_subparsers(dest="subcommand", required=True)
    p = g.add_parser("delta2")
    _add_common(p, N=128)
    p.add_argument("--K-list", default="0.5,2,5,10", dest="K_list")
    p.add_argument("--alpha", type=_phase, default=0.5)
    p.add_argument("--beta", type=_phase, default=GOLDEN_PHASE)
    p.add_argument("--M", type=int, default=128)
    p.add_argument("--delta-K", type=float, default=0.05, dest="delta_K")
    p.add_argument("--burn-in", type=int, default=10, dest="burn_in")
    p.add_argument("--stride", type=int, default=10)
    p.add_argument("--histories", type=int, default=10)
    p.set_defaults(func=cmd_design_delta2)
    p = g.add_parser("frame")
    _add_common(p, N=16)
    p.add_argument("--M", type=int, default=1000)
    p.add_argument("--t", type=int, default=2)
    p.set_defaults(func=cmd_design_frame)

    g = sub.add_parser("ent").add_subparsers(dest="subcommand", required=True)
    p = g.add_parser("schmidt")
    _add_common(p, N=64)
    p.add_argument("--dim", type=int, default=64)
    p.add_argument("--N1", type=int, default=8)
    p.add_argument("--N2", type=int, default=8)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_ent_schmidt)
    p = g.add_parser("page")
    _add_common(p, N=8)
    p.add_argument("--N1", type=int, default=8)
    p.add_argument("--N2", type=int, default=8)
    p.set_defaults(func=cmd_ent_page)
    p = g.add_parser("mp")
    _add_common(p, N=8)
    p.add_argument("--Q", type=float, default=1.0)
    p.set_defaults(func=cmd_ent_mp)
    p = g.add_parser("pt")
    _add_common(p, N=8)
    p.add_argument("--N1", type=int, default=8)
    p.add_argument("--N2", type=int, default=8)
    p.add_argument("--N3", type=int, default=64)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_ent_pt)
    p = g.add_parser("concurrence")
    _add_common(p, N=16)
    p.add_argument("--L", type=int, default=4)
    p.add_argument("--samples", type=int, default=100_000)
    p.set_defaults(func=cmd_ent_concurrence)

    g = sub.add_parser("opent").add_subparsers(dest="subcommand", required=True)
    p = g.add_parser("ep")
    _add_common(p, N=2)
    p.add_argument("--gate", choices=("swap", "cnot", "cue"), default="cue")
    p.set_defaults(func=cmd_opent_ep)
    p = g.add_parser("thermalize")
    _add_common(p, N=8)
    p.add_argument("--n-max", type=int, default=10, dest="n_max")
    p.add_argument("--histories", type=int, default=100)
    p.set_defaults(func=cmd_opent_thermalize)
    p = g.add_parser("coupled")
    _add_common(p, N=200)
    p.add_argument("--K", type=float, default=10.0)
    p.add_argument("--b", type=float, default=0.01)
    p.add_argument("--alpha", type=_phase, default=0.5)
    p.add_argument("--beta", type=_phase, default=GOLDEN_PHASE)
    p.add_argument("--T", type=int, default=160)
    p.add_argument("--initial", choices=("random-product", "coherent-product"),
                   default="random-product")
    p.set_defaults(func=cmd_opent_coupled)

    g = sub.add_parser("channel").add_subparsers(dest="subcommand", required=True)
    p = g.add_parser("random")
    _add_common(p, N=8)
    p.add_argument("--M", type=int, default=64)
    p.set_defaults(func=cmd_channel_random)
    p = g.add_parser("mixed")
    _add_common(p, N=30)
    p.add_argument("--M", type=int, default=2)
    p.add_argument("--weights", default=None)
    p.set_defaults(func=cmd_channel_mixed)
    p = g.add_parser("diluted")
    _add_common(p, N=50)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--M", type=int, required=True)
    p.set_defaults(func=cmd_channel_diluted)
    p = g.add_parser("complementary")
    _add_common(p, N=14)
    p.add_argument("--M", type=int, default=18)
    p.set_defaults(func=cmd_channel_complementary)
    p = g.add_parser("kesten")
    _add_common(p, N=0)
    p.add_argument("--M", type=int, default=5)
    p.add_argument("--realizations", type=int, default=10)
    p.set_defaults(func=cmd_channel_kesten)
    p = g.add_parser("spectrum")
    _add_common(p, N=64)
    _add_map_args(p)
    p.add_argument("--M", type=int, default=2)
    p.set_defaults(func=cmd_channel_spectrum)

    g = sub.add_parser("conc").add_subparsers(dest="subcommand", required=True)
    p = g.add_parser("hoeffding")
    _add_common(p, N=0)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--eps", default="0.1,0.2,0.3")
    p.add_argument("--trials", type=int, default=100_000)
    p.set_defaults(func=cmd_conc_hoeffding)
    p = g.add_parser("levy")
    _add_common(p, N=8)
    p.add_argument("--samples", type=int, default=1500)
    p.set_defaults(func=cmd_conc_levy)
    p = g.add_parser("smin")
    _add_common(p, N=8)
    p.add_argument("--M", type=int, default=4)
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--iters", type=int, default=120)
    p.set_defaults(func=cmd_conc_smin)
    p = g.add_parser("bh")
    _add_common(p, N=64)
    p.add_argument("--M", type=int, default=4)
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=cmd_conc_bh)

    p = sub.add_parser("figure")
    p.add_argument("fig_id", choices=sorted(FIGURES))
    _add_common(p, N=None)
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(func=cmd_figure)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv):
    """Pull --config out of argv and fold its values in as flag defaults."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2:]
    cfg = json.loads(Path(path).read_text())
    extra = []
    for k, v in cfg.items():
        flag = f"--{k.replace('_', '-')}"
        if flag not in rest and f"--{k}" not in rest:
            extra += ([flag] if isinstance(v, bool) and v
                      else [flag, str(v)] if not isinstance(v, bool) else [])
    return rest + extra


def cli_dispatch(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        argv = _apply_config(ap, argv)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: bad config file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (SymmetryViolationError, NotCompletelyPositiveError,
            NumericalValidationError) as exc:
        print(f"numerical validation failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(cli_dispatch())
