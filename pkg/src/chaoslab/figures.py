"""Figure-class experiments: each function reproduces one figure family at
desk-scale defaults, writing CSV/JSON data plus a deterministic SVG render.

Plots are presentation only; every quantitative claim is in the data files.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from . import channels as ch
from . import concentration as conc
from . import designs as dg
from . import entanglement as ent
from . import maps as mp
from . import operator_ent as oe
from . import spectral as sp
from . import states as st
from .constants import GOLDEN_PHASE
from .dataio import write_csv, write_json
from .rng import substreams

__all__ = ["FIGURES", "run_figure", "DESK_DEFAULTS"]

# Desk-scale defaults where the source experiments used larger dimensions;
# every override is recorded in the manifest of the run that used it.
DESK_DEFAULTS = {
    "fig3-nns": {"N": 2000},
    "fig4-sff": {"N": 400, "samples": 30},
    "fig5-pr": {"N": 300, "K_grid": 16},
    "fig6-wehrl": {"N": 510},
    "fig7-delta2": {"N": 128, "histories": 4},
    "fig8-mp-pt": {"samples": 250},
    "fig9-concurrence": {"samples": 100_000},
    "fig10-xmin": {"samples": 20_000},
    "fig11-coupled-entropy": {"N": 200},
    "fig12-channel-spectra": {"N_diluted": 40},
    "fig13-equator": {"samples": 100_000},
    "fig14-entropy-conc": {"samples": 1500},
}


def _hist(sample, bins=60, density=True):
    counts, edges = np.histogram(sample, bins=bins, density=density)
    centers = 0.5 * (edges[1:] + edges[:-1])
    return centers, counts


def fig3_nns(out: Path, seed=0, N=2000, workers=1):
    """Spacing histograms: near-integrable vs chaotic (both symmetry classes)."""
    panels = {}
    spac = {}
    U = mp.build_standard_map(mp.MapParams(N, 0.5, GOLDEN_PHASE, GOLDEN_PHASE)).matrix
    spac["poisson_K0.5"] = sp.eigenphases(U).spacings
    U = mp.build_standard_map(mp.MapParams(N, 10.0, GOLDEN_PHASE, GOLDEN_PHASE)).matrix
    spac["gue_K10"] = sp.eigenphases(U).spacings
    U = mp.build_standard_map(mp.MapParams(N, 10.0, 0.5, 0.0)).matrix
    ue, uo = mp.parity_split(U)
    spac["goe_K10_parity"] = np.concatenate(
        [sp.eigenphases(b, check_tol=1e-6).spacings for b in (ue, uo)])

    grid = np.linspace(0.0, 4.0, 200)
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.4))
    for label, s in spac.items():
        centers, counts = _hist(s, bins=50)
        write_csv(out / f"nns_{label}.csv", {"s": centers, "density": counts})
        ks = {"poisson_K0.5": sp.ks_distance(s, lambda v: sp.surmise_cdf(0, v)),
              "gue_K10": sp.ks_distance(s, lambda v: sp.surmise_cdf(2, v)),
              "goe_K10_parity": sp.ks_distance(s, lambda v: sp.surmise_cdf(1, v))}[label]
        panels[label] = {"ks_to_matching_law": ks,
                         "r_mean": sp.ratio_statistics(s)[0]}
        ax = axes[0] if label.startswith("poisson") else axes[1]
        ax.plot(centers, counts, drawstyle="steps-mid", label=label)
    axes[0].plot(grid, sp.poisson_pdf(grid), "k--", lw=1, label="poisson")
    axes[1].plot(grid, sp.wigner_surmise(1, grid), "k--", lw=1, label="GOE surmise")
    axes[1].plot(grid, sp.wigner_surmise(2, grid), "k:", lw=1, label="GUE surmise")
    for ax in axes:
        ax.set_xlabel("s")
        ax.set_ylabel("p(s)")
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out / "fig3-nns.svg")
    plt.close(fig)
    return {"N": N, "panels": panels}


def fig4_sff(out: Path, seed=0, N=400, samples=30, workers=1):
    """Spectral form factor over kick windows, near-integrable and chaotic."""
    summary = {}
    n_max = 2 * N
    n = np.arange(n_max + 1)
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.4))
    cases = {"near_integrable": (0.5, "poisson"), "chaotic": (10.0, "gue")}
    for ax, (label, (K0, law)) in zip(axes, cases.items()):
        Ks = K0 + 0.5 * np.linspace(-0.5, 0.5, samples)
        phases = [sp.eigenphases(mp.build_standard_map(
            mp.MapParams(N, float(K), GOLDEN_PHASE, GOLDEN_PHASE)).matrix).phases
            for K in Ks]
        K_emp = sp.sff_from_phases(phases, n_max)
        tau = n / N
        K_th = sp.sff_theory(law, np.where(tau > 0, tau, 1e-9))
        write_csv(out / f"sff_{label}.csv",
                  {"n": n, "tau": tau, "K_emp": K_emp, "K_theory": K_th})
        summary[label] = {"K": K0, "samples": samples}
        ax.loglog(tau[1:], K_emp[1:], lw=0.7, label="empirical")
        ax.loglog(tau[1:], K_th[1:], "k--", lw=1, label=law)
        ax.set_xlabel("tau = n/N")
        ax.set_ylabel("K(tau)")
        ax.set_title(label)
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out / "fig4-sff.svg")
    plt.close(fig)
    return {"N": N, **summary}


def fig5_pr(out: Path, seed=0, N=300, K_grid=16, workers=1):
    """Spectrum-averaged PR/N against kick strength, both symmetry classes."""
    Ks = np.linspace(0.25, 10.0, K_grid)
    rows = {"K": Ks}
    for label, (a, b) in {"tr_symmetric": (0.5, 0.0),
                          "tr_broken": (GOLDEN_PHASE, GOLDEN_PHASE)}.items():
        vals = []
        for K in Ks:
            U = mp.build_standard_map(mp.MapParams(N, float(K), a, b)).matrix
            _, vecs = np.linalg.eig(U)
            t = np.abs(vecs) ** 2
            t /= t.sum(axis=0)
            vals.append(float(np.mean(1.0 / np.sum(t * t, axis=0)) / N))
        rows[f"pr_over_N_{label}"] = np.asarray(vals)
    write_csv(out / "pr_vs_K.csv", rows)
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.plot(Ks, rows["pr_over_N_tr_symmetric"], "o-", ms=3, label="TR symmetric")
    ax.plot(Ks, rows["pr_over_N_tr_broken"], "s-", ms=3, label="TR broken")
    ax.axhline(1 / 3, color="k", ls=":", lw=1)
    ax.axhline(1 / 2, color="k", ls="--", lw=1)
    ax.set_xlabel("K")
    ax.set_ylabel("<PR>/N")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "fig5-pr.svg")
    plt.close(fig)
    return {"N": N,
            "final_tr_symmetric": rows["pr_over_N_tr_symmetric"][-1],
            "final_tr_broken": rows["pr_over_N_tr_broken"][-1]}


def fig6_wehrl(out: Path, seed=0, N=510, workers=1):
    """Wehrl entropy growth for the baker and standard maps."""
    T = int(4 * st.ehrenfest_time(N, np.log(2.0))) + 2
    baker = st.entropy_trajectory(mp.build_baker_map(N),
                                  mp.coherent_state(N, 1 / 3, 2 / 3), T)
    p = mp.MapParams(N, 10.0, 0.5, 0.0)
    T2 = int(4 * st.ehrenfest_time(N, mp.chirikov_lyapunov(10.0))) + 2
    std = st.entropy_trajectory(p, mp.coherent_state(N, 0.0, 0.0), T2)
    write_csv(out / "wehrl_baker.csv", {"t": np.arange(T + 1), "H_bits": baker})
    write_csv(out / "wehrl_standard.csv", {"t": np.arange(T2 + 1), "H_bits": std})
    rmt_bits = st.wehrl_mean_haar(N) / np.log(2.0)
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    ax.plot(np.arange(T + 1), baker, "o-", ms=3, label="baker (1/3, 2/3)")
    ax.plot(np.arange(T2 + 1), std, "s-", ms=3, label="standard K=10 (0,0)")
    ax.axhline(rmt_bits, color="k", ls="--", lw=1, label="2 ln N - 0.423 (bits)")
    ax.axvline(st.ehrenfest_time(N, np.log(2.0)), color="C0", ls=":", lw=1)
    ax.axvline(st.ehrenfest_time(N, mp.chirikov_lyapunov(10.0)), color="C1",
               ls=":", lw=1)
    ax.set_xlabel("t")
    ax.set_ylabel("Wehrl entropy [bits]")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out / "fig6-wehrl.svg")
    plt.close(fig)
    return {"N": N,
            "baker_slope": st.entropy_growth_rate(baker, 8),
            "standard_slope": st.entropy_growth_rate(std, 2),
            "rmt_plateau_bits": rmt_bits}


def fig7_delta2(out: Path, seed=0, N=128, histories=4, workers=1):
    """2-design deviation against kick strength, stride 1 vs stride 10."""
    Ks = np.concatenate([np.linspace(0.25, 2.0, 8), np.linspace(2.5, 10.0, 7)])
    proto = mp.MapParams(N, 1.0, 0.5, GOLDEN_PHASE)
    results = {"K": Ks}
    for stride in (1, 10):
        mean, std = dg.delta2_vs_kick(Ks, proto, delta_K=0.05, M=N,
                                      burn_in=10, stride=stride,
                                      histories=histories, seed=seed)
        results[f"delta2_stride{stride}"] = mean
        results[f"stderr_stride{stride}"] = std / np.sqrt(histories)
    write_csv(out / "delta2_vs_K.csv", results)
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    for stride in (1, 10):
        ax.errorbar(Ks, results[f"delta2_stride{stride}"],
                    results[f"stderr_stride{stride}"], fmt="o-", ms=3,
                    label=f"stride {stride}")
    ax.set_yscale("symlog", linthresh=0.01)
    ax.set_xlabel("K")
    ax.set_ylabel("Delta_2")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "fig7-delta2.svg")
    plt.close(fig)
    return {"N": N, "delta2_K10_stride10": results["delta2_stride10"][-1],
            "delta2_K0.5_stride10": results["delta2_stride10"][0]}


def fig8_mp_pt(out: Path, seed=0, samples=250, workers=1):
    """Induced-state spectrum vs MP law and PT spectrum vs shifted semicircle
    (three qubits + three qubits, ten total)."""
    N1 = N2 = 8
    N3 = 16
    lam_all, pt_all = [], []
    for rng in substreams(seed, samples):
        g = rng.standard_normal((N1 * N2, N3)) + 1j * rng.standard_normal((N1 * N2, N3))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        lam_all.append(np.linalg.eigvalsh(rho))
        pt_all.append(np.linalg.eigvalsh(ent.partial_transpose(rho, N1, N2)))
    lam = np.concatenate(lam_all) * N1 * N2
    ptx = np.concatenate(pt_all) * N1 * N2
    model = ent.pt_semicircle_model(N1, N2, N3)
    cx, cc = _hist(lam, bins=60)
    write_csv(out / "mp_spectrum.csv", {"x": cx, "density": cc})
    px, pc = _hist(ptx, bins=60)
    write_csv(out / "pt_spectrum.csv",
              {"x": px, "density": pc, "semicircle": model.density(px)})
    ks_pt = sp.ks_distance(ptx, model.cdf)
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.4))
    axes[0].plot(cx, cc, drawstyle="steps-mid")
    axes[0].set_title("rho_AB spectrum (rescaled)")
    axes[1].plot(px, pc, drawstyle="steps-mid", label="empirical")
    axes[1].plot(px, model.density(px), "k--", lw=1, label="shifted semicircle")
    axes[1].axvline(0.0, color="r", lw=0.8)
    axes[1].set_title("partial transpose")
    axes[1].legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out / "fig8-mp-pt.svg")
    plt.close(fig)
    return {"N1": N1, "N2": N2, "N3": N3, "pt_ks_to_semicircle": ks_pt,
            "model_radius": model.radius}


def fig9_concurrence(out: Path, seed=0, samples=100_000, workers=1):
    """Pre-concurrence distributions for 4..7-qubit random states."""
    summary = {}
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    for L in (4, 5, 6, 7):
        c, p = ent.preconcurrence_statistics(L, samples, seed=(seed, L))
        cx, cc = _hist(c, bins=80)
        write_csv(out / f"preconcurrence_L{L}.csv", {"c": cx, "density": cc})
        summary[f"P_entangled_L{L}"] = p
        ax.plot(cx, cc, lw=1, label=f"L={L} (P={p:.3g})")
    ax.axvline(0.0, color="k", lw=0.8)
    ax.set_xlabel("pre-concurrence c")
    ax.set_ylabel("density")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out / "fig9-concurrence.svg")
    plt.close(fig)
    return {"samples": samples, **summary}


def fig10_xmin(out: Path, seed=0, samples=20_000, workers=1):
    """Scaled smallest PT eigenvalue collapse and the NPT decay rate."""
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.4))
    for N3 in (64, 256, 1024):
        x = ent.xmin_scaled_statistic(N3, samples, seed=(seed, N3))
        cx, cc = _hist(x, bins=70)
        write_csv(out / f"xmin_N3_{N3}.csv", {"x_min": cx, "density": cc})
        axes[0].plot(cx, cc, lw=1, label=f"N3={N3}")
    axes[0].set_xlabel("x_min")
    axes[0].set_ylabel("density")
    axes[0].legend(fontsize=7)
    N3s = np.array([16, 24, 32])
    counts = {16: max(samples, 100_000), 24: max(samples, 200_000),
              32: max(10 * samples, 500_000)}
    ps = np.array([ent.npt_probability(n3, counts[n3], seed=(seed, 91, n3))
                   for n3 in N3s])
    gamma = -np.polyfit(N3s, np.log(ps), 1)[0]
    write_csv(out / "npt_probability.csv", {"N3": N3s, "P_NPT": ps})
    axes[1].semilogy(N3s, ps, "o-")
    axes[1].set_xlabel("N3")
    axes[1].set_ylabel("P[NPT]")
    axes[1].set_title(f"gamma = {gamma:.3f}")
    fig.tight_layout()
    fig.savefig(out / "fig10-xmin.svg")
    plt.close(fig)
    return {"samples": samples, "gamma": gamma,
            "P_NPT": {int(n): float(p) for n, p in zip(N3s, ps)}}


def fig11_coupled(out: Path, seed=0, N=200, workers=1):
    """Entanglement growth of coupled standard maps with the Markov curve."""
    b = 0.01
    fig, ax = plt.subplots(figsize=(5.6, 3.6))
    summary = {"N": N, "b": b}
    for K in (0.0, 2.0, 10.0):
        cp = mp.CoupledMapParams(N=N, K1=K, K2=K, b=b, alpha=0.5,
                                 beta=GOLDEN_PHASE)
        ep = oe.ep_of_diagonal_interaction(oe.interaction_phase_matrix(cp))
        T = int(3 * oe.thermalization_time(ep, N)) + 2
        res = oe.entanglement_evolution(cp, T, initial="random-product",
                                        seed=seed)
        mk = oe.markov_renyi2(ep, res["t"], N)
        write_csv(out / f"coupled_entropy_K{K:g}.csv",
                  {"t": res["t"], "s_vn": res["s_vn"], "s2": res["s2"],
                   "markov_s2": mk})
        ax.plot(res["t"], res["s2"], lw=1, label=f"S2, K={K:g}")
        if K == 10.0:
            ax.plot(res["t"], mk, "k--", lw=1, label="Markov approx.")
        summary[f"s2_saturation_K{K:g}"] = float(res["s2"][-10:].mean())
    ax.axhline(np.log(N / 2), color="k", ls=":", lw=1, label="ln(N/2)")
    ax.set_xlabel("t")
    ax.set_ylabel("S_2(t)")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out / "fig11-coupled-entropy.svg")
    plt.close(fig)
    return summary


def fig12_channel_spectra(out: Path, seed=0, N_diluted=40, workers=1):
    """Superoperator spectra: mixed-unitary rings, diluted unitary rings,
    and the complementary-channel single-ring model."""
    from .ensembles import sample_cue
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.8))
    # a) mixed unitary, N=30, M=2
    Nmu = 30
    for p, color in ((0.0, "k"), (0.1, "C0"), (0.3, "C3")):
        us = [sample_cue(Nmu, (seed, 1)), sample_cue(Nmu, (seed, 2))]
        bundle = ch.mixed_unitary_channel([1.0 - p, p], us)
        ev = bundle.spectrum[1:]
        write_csv(out / f"mixed_unitary_p{p:g}.csv",
                  {"re": ev.real, "im": ev.imag})
        axes[0].plot(ev.real, ev.imag, ".", ms=2, color=color, label=f"p={p:g}")
    # b) diluted unitary rings
    diluted_summary = {}
    for (p, M), color in (((0.57, 9), "C0"), ((0.71, 23), "C3"),
                          ((0.89, 40), "C1")):
        bundle = ch.diluted_unitary(p, M, N_diluted, seed=(seed, M))
        ev = bundle.spectrum[1:]
        rm, rp_, pc = ch.ring_radii(p, M)
        write_csv(out / f"diluted_p{p:g}_M{M}.csv",
                  {"re": ev.real, "im": ev.imag})
        mods = np.abs(ev)
        diluted_summary[f"p{p:g}_M{M}"] = {
            "R_minus": rm, "R_plus": rp_, "p_c": pc,
            "classification": "disk" if p >= pc else "ring",
            "fraction_in_ring": float(np.mean((mods >= rm - 0.05)
                                              & (mods <= rp_ + 0.05)))}
        axes[1].plot(ev.real, ev.imag, ".", ms=2, color=color,
                     label=f"p={p:g}, M={M}")
        th = np.linspace(0, 2 * np.pi, 200)
        for r in (rm, rp_):
            if r > 0:
                axes[1].plot(r * np.cos(th), r * np.sin(th), color=color, lw=0.6)
    # c) complementary channel model
    Nc, Mc = 14, 18
    ks = ch.complementary_channel(Nc, Mc, seed=(seed, 3))
    ev = ch.complementary_spectrum_model(ks, seed=(seed, 4))
    rm, rp_ = ch.complementary_ring_radii(Nc, Mc)
    write_csv(out / "complementary_14_18.csv", {"re": ev.real, "im": ev.imag})
    axes[2].plot(ev.real, ev.imag, ".", ms=2)
    th = np.linspace(0, 2 * np.pi, 200)
    for r in (rm, rp_):
        axes[2].plot(r * np.cos(th), r * np.sin(th), "k", lw=0.6)
    for ax, title in zip(axes, ("mixed unitary N=30",
                                f"diluted unitary N={N_diluted}",
                                f"complementary {Nc}->{Mc}")):
        ax.set_aspect("equal")
        ax.set_title(title, fontsize=9)
        ax.legend(fontsize=6, loc="upper right")
    fig.tight_layout()
    fig.savefig(out / "fig12-channel-spectra.svg")
    plt.close(fig)
    return {"diluted": diluted_summary,
            "complementary_radii": {"R_minus": rm, "R_plus": rp_}}


def fig13_equator(out: Path, seed=0, samples=100_000, workers=1):
    """Fat-equator latitude densities on S^n for n = 4, 8, 20."""
    grid = np.linspace(0, np.pi, 200)
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    summary = {}
    for n in (4, 8, 20):
        theta, report = conc.fat_equator(n, samples, seed=(seed, n))
        cx, cc = _hist(theta, bins=60)
        dens = np.sin(grid) ** (n - 1)
        dens /= np.trapezoid(dens, grid)
        write_csv(out / f"equator_n{n}.csv", {"theta": cx, "density": cc})
        ks = sp.ks_distance(theta, lambda v: conc.latitude_cdf(n, v))
        summary[f"n{n}"] = {"ks": ks, "band_bound_ok": report.all_bounded}
        ax.plot(cx, cc, lw=1, label=f"n={n} (KS={ks:.3f})")
        ax.plot(grid, dens, "k--", lw=0.6)
    ax.set_xlabel("theta")
    ax.set_ylabel("P(theta)")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out / "fig13-equator.svg")
    plt.close(fig)
    return {"samples": samples, **summary}


def fig14_entropy_conc(out: Path, seed=0, samples=1500, workers=1):
    """Entanglement-entropy concentration for N x N random states."""
    fig, ax = plt.subplots(figsize=(5.2, 3.4))
    summary = {}
    for N in (2, 4, 8, 16):
        s, report = conc.entropy_concentration(N, samples, seed=(seed, N))
        cx, cc = _hist(s, bins=50)
        write_csv(out / f"entropy_conc_N{N}.csv", {"S": cx, "density": cc})
        summary[f"N{N}"] = {"mean": float(s.mean()), "std": float(s.std()),
                            "page": ent.page_average(N, N),
                            "bounds_ok": report.all_bounded}
        ax.plot(cx, cc, lw=1, label=f"N={N}")
        ax.axvline(ent.page_average(N, N), color="k", ls=":", lw=0.5)
    ax.set_xlabel("S")
    ax.set_ylabel("density")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(out / "fig14-entropy-conc.svg")
    plt.close(fig)
    return {"samples": samples, **summary}


FIGURES = {
    "fig3-nns": fig3_nns,
    "fig4-sff": fig4_sff,
    "fig5-pr": fig5_pr,
    "fig6-wehrl": fig6_wehrl,
    "fig7-delta2": fig7_delta2,
    "fig8-mp-pt": fig8_mp_pt,
    "fig9-concurrence": fig9_concurrence,
    "fig10-xmin": fig10_xmin,
    "fig11-coupled-entropy": fig11_coupled,
    "fig12-channel-spectra": fig12_channel_spectra,
    "fig13-equator": fig13_equator,
    "fig14-entropy-conc": fig14_entropy_conc,
}


def run_figure(fig_id: str, out_dir, seed=0, workers=1, **overrides) -> dict:
    if fig_id not in FIGURES:
        raise ValueError(f"unknown figure id {fig_id!r}; known: {sorted(FIGURES)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    kwargs = dict(DESK_DEFAULTS.get(fig_id, {}))
    kwargs.update({k: v for k, v in overrides.items() if v is not None})
    summary = FIGURES[fig_id](out, seed=seed, workers=workers, **kwargs)
    write_json(out / f"{fig_id}-summary.json", summary)
    return summary
