import json

import numpy as np
import pytest

from chaoslab.cli import cli_dispatch


def run(args):
    return cli_dispatch(args)


def test_ratio_command_and_reproducibility(tmp_path):
    d1, d2 = tmp_path / "a", tmp_path / "b"
    argv = ["stats", "ratio", "--map", "standard", "--N", "200", "--K", "10",
            "--beta", "golden", "--alpha", "golden", "--samples", "2",
            "--seed", "7"]
    assert run(argv + ["--out", str(d1)]) == 0
    assert run(argv + ["--out", str(d2)]) == 0
    assert (d1 / "ratio.json").read_bytes() == (d2 / "ratio.json").read_bytes()
    assert (d1 / "manifest.json").read_bytes() == (d2 / "manifest.json").read_bytes()
    r = json.loads((d1 / "ratio.json").read_text())
    assert 0.5 < r["r_mean"] < 0.7


def test_exit_codes(tmp_path):
    # invalid arguments -> 2
    assert run(["stats", "nonsense"]) == 2
    assert run(["ent", "schmidt", "--dim", "6", "--N1", "4", "--N2", "2",
                "--out", str(tmp_path)]) == 2
    # numerical validation failure (parity requested but broken) -> 3
    assert run(["stats", "ratio", "--map", "standard", "--N", "64",
                "--beta", "golden", "--parity", "--samples", "1",
                "--out", str(tmp_path)]) == 3


def test_map_and_nns_commands(tmp_path):
    assert run(["map", "spectrum", "--N", "64", "--K", "5", "--out",
                str(tmp_path / "m"), "--dump-operator"]) == 0
    phases = (tmp_path / "m" / "eigenphases.csv").read_text().splitlines()
    assert len(phases) == 65
    assert (tmp_path / "m" / "operator.bin").stat().st_size == 64 * 64 * 16
    assert run(["stats", "nns", "--N", "200", "--K", "10", "--alpha", "golden",
                "--beta", "golden", "--law", "gue",
                "--out", str(tmp_path / "n")]) == 0
    summary = json.loads((tmp_path / "n" / "summary.json").read_text())
    assert summary["ks"] < 0.2


def test_state_and_design_commands(tmp_path):
    assert run(["state", "pr", "--N", "150", "--K", "10", "--alpha", "golden",
                "--beta", "golden", "--out", str(tmp_path / "pr")]) == 0
    s = json.loads((tmp_path / "pr" / "summary.json").read_text())
    assert 0.3 < s["pr_over_N_mean"] < 0.7
    assert run(["state", "wehrl", "--map", "baker", "--N", "128", "--T", "8",
                "--out", str(tmp_path / "w")]) == 0
    assert run(["design", "frame", "--N", "16", "--M", "200",
                "--out", str(tmp_path / "f")]) == 0
    s = json.loads((tmp_path / "f" / "summary.json").read_text())
    assert s["F_t"] > 1.0 / s["d_t"] - 1e-9
    assert run(["design", "delta2", "--N", "32", "--M", "32",
                "--K-list", "0.5,10", "--histories", "2", "--stride", "2",
                "--out", str(tmp_path / "d")]) == 0


def test_ent_commands(tmp_path):
    assert run(["ent", "page", "--N1", "2", "--N2", "2",
                "--out", str(tmp_path / "p")]) == 0
    s = json.loads((tmp_path / "p" / "summary.json").read_text())
    assert abs(s["page_S_vN"] - 1 / 3) < 1e-12
    assert abs(s["lubkin_purity"] - 0.8) < 1e-12
    assert run(["ent", "mp", "--Q", "2.0", "--out", str(tmp_path / "mp")]) == 0
    assert run(["ent", "pt", "--N1", "2", "--N2", "2", "--N3", "8",
                "--samples", "100", "--out", str(tmp_path / "pt")]) == 0
    assert run(["ent", "concurrence", "--L", "4", "--samples", "5000",
                "--out", str(tmp_path / "c")]) == 0
    s = json.loads((tmp_path / "c" / "summary.json").read_text())
    assert 0.7 < s["P_entangled"] < 0.82
    assert run(["ent", "schmidt", "--dim", "16", "--N1", "4", "--N2", "4",
                "--samples", "20", "--out", str(tmp_path / "s")]) == 0


def test_opent_commands(tmp_path):
    assert run(["opent", "ep", "--gate", "cnot", "--N", "2",
                "--out", str(tmp_path / "e")]) == 0
    s = json.loads((tmp_path / "e" / "summary.json").read_text())
    assert abs(s["e_p"] - 2 / 3) < 1e-9
    assert run(["opent", "ep", "--gate", "cnot", "--N", "3",
                "--out", str(tmp_path / "e2")]) == 2
    assert run(["opent", "thermalize", "--N", "3", "--n-max", "4",
                "--histories", "10", "--out", str(tmp_path / "t")]) == 0
    assert run(["opent", "coupled", "--N", "32", "--K", "10", "--b", "0.05",
                "--T", "10", "--out", str(tmp_path / "cpl")]) == 0


def test_channel_commands(tmp_path):
    assert run(["channel", "random", "--N", "6", "--M", "4",
                "--out", str(tmp_path / "r")]) == 0
    assert run(["channel", "mixed", "--N", "12", "--M", "2",
                "--out", str(tmp_path / "m")]) == 0
    assert run(["channel", "diluted", "--p", "0.89", "--M", "40", "--N", "16",
                "--out", str(tmp_path / "d")]) == 0
    s = json.loads((tmp_path / "d" / "summary.json").read_text())
    assert s["classification"] == "disk"
    assert run(["channel", "complementary", "--N", "8", "--M", "10",
                "--out", str(tmp_path / "c")]) == 0
    assert run(["channel", "kesten", "--M", "3", "--N", "100",
                "--realizations", "3", "--out", str(tmp_path / "k")]) == 0
    assert run(["channel", "spectrum", "--map", "baker", "--N", "32",
                "--M", "2", "--out", str(tmp_path / "s")]) == 0


def test_conc_commands(tmp_path):
    assert run(["conc", "hoeffding", "--n", "100", "--trials", "20000",
                "--out", str(tmp_path / "h")]) == 0
    s = json.loads((tmp_path / "h" / "summary.json").read_text())
    assert s["all_bounded"] is True
    assert run(["conc", "levy", "--N", "4", "--samples", "300",
                "--out", str(tmp_path / "l")]) == 0
    assert run(["conc", "smin", "--N", "4", "--M", "2", "--restarts", "3",
                "--iters", "40", "--out", str(tmp_path / "s")]) == 0
    assert run(["conc", "bh", "--N", "16", "--M", "4", "--samples", "4",
                "--out", str(tmp_path / "b")]) == 0


def test_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"N1": 2, "N2": 2, "out": str(tmp_path / "o")}))
    assert run(["--config", str(cfg), "ent", "page"]) == 0
    s = json.loads((tmp_path / "o" / "summary.json").read_text())
    assert abs(s["page_S_vN"] - 1 / 3) < 1e-12
    assert run(["--config", str(tmp_path / "missing.json"), "ent", "page"]) == 2


def test_figure_command_fast(tmp_path):
    assert run(["figure", "fig13-equator", "--samples", "5000",
                "--out", str(tmp_path / "f13")]) == 0
    assert (tmp_path / "f13" / "fig13-equator.svg").exists()
    assert (tmp_path / "f13" / "fig13-equator-summary.json").exists()
    assert (tmp_path / "f13" / "manifest.json").exists()
    assert run(["figure", "fig14-entropy-conc", "--samples", "150",
                "--out", str(tmp_path / "f14")]) == 0
    assert run(["figure", "not-a-fig", "--out", str(tmp_path)]) == 2
