import json
import math

import numpy as np
import pytest

from ptsignal.cli import main


def run(capsys, *argv, expect=0):
    rc = main(list(argv))
    out = capsys.readouterr()
    assert rc == expect, f"rc={rc}, stderr: {out.err}"
    return out.out


def test_report_at_operating_point(capsys):
    out = run(capsys, "report", "--state", "ghz", "--theta", "0.519",
              "--alpha", "1.4137", "--xi", "1.5708", "--t1", "0.1745")
    d = json.loads(out)
    assert abs(d["p_global"] - 0.786) <= 0.005
    assert d["family"] == "ghz" and d["regime"] == "unbroken"
    assert d["global_nosignaling"] is False


def test_report_xi_zero_local_preservation(capsys):
    out = run(capsys, "report", "--state", "ghz", "--theta", "0.7",
              "--xi", "0", "--alpha", "0.5", "--t1", "0.8")
    d = json.loads(out)
    assert d["local_nosignaling"] is True
    assert d["global_nosignaling"] is False


def test_report_broken_phase_exits_2(capsys):
    rc = main(["report", "--state", "w", "--theta", "1.0", "--phi", "0.7854",
               "--s", "2", "--t", "1", "--tau", "0.5"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "broken" in err


def test_exactly_one_parameterization(capsys):
    # both routes
    rc = main(["report", "--state", "ghz", "--alpha", "0.5", "--t1", "0.3",
               "--s", "0.5", "--t", "1", "--tau", "1"])
    assert rc == 2
    capsys.readouterr()
    # neither route
    rc = main(["report", "--state", "ghz", "--xi", "0.5"])
    assert rc == 2
    capsys.readouterr()
    # half a route
    rc = main(["report", "--state", "ghz", "--alpha", "0.5"])
    assert rc == 2
    capsys.readouterr()
    rc = main(["report", "--state", "ghz", "--s", "0.5", "--t", "1"])
    assert rc == 2


def test_missing_state_exits_2(capsys):
    rc = main(["report", "--alpha", "0.5", "--xi", "0.5", "--t1", "0.5"])
    assert rc == 2


def test_raw_parameterization_matches_effective(capsys):
    alpha, xi, t1 = 0.8, 1.1, 0.45
    out_eff = run(capsys, "report", "--state", "ghz", "--theta", "0.6",
                  "--alpha", str(alpha), "--xi", str(xi), "--t1", str(t1))
    tau = t1 / math.cos(alpha)
    out_raw = run(capsys, "report", "--state", "ghz", "--theta", "0.6",
                  "--r", "0", "--s", str(math.sin(alpha)), "--t", "1",
                  "--xi", str(xi), "--J", "1", "--tau", str(tau))
    a, b = json.loads(out_eff), json.loads(out_raw)
    assert abs(a["p_global"] - b["p_global"]) <= 1e-12


def test_degrees_flag(capsys):
    out_deg = run(capsys, "report", "--state", "ghz", "--theta", "30",
                  "--alpha", "60", "--xi", "90", "--t1", "0.5", "--degrees")
    out_rad = run(capsys, "report", "--state", "ghz",
                  "--theta", str(math.pi / 6), "--alpha", str(math.pi / 3),
                  "--xi", str(math.pi / 2), "--t1", "0.5")
    a, b = json.loads(out_deg), json.loads(out_rad)
    assert abs(a["p_global"] - b["p_global"]) <= 1e-12
    assert abs(a["t1"] - 0.5) <= 1e-15  # evolution length is never rescaled


def test_config_file_with_flag_override(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# operating point\nstate = ghz\ntheta = 0.519\n"
                   "alpha = 1.4137\nxi = 1.5708\nt1 = 0.1745\n")
    d = json.loads(run(capsys, "report", "--config", str(cfg)))
    assert abs(d["p_global"] - 0.786) <= 0.005

    # explicit flag wins over the file value
    d = json.loads(run(capsys, "report", "--config", str(cfg), "--theta", "0"))
    assert abs(d["p_global"] - 0.5) <= 1e-9


def test_config_file_errors(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nonsense_key = 1\n")
    assert main(["report", "--config", str(cfg)]) == 2
    capsys.readouterr()
    cfg.write_text("no equals sign here\n")
    assert main(["report", "--config", str(cfg)]) == 2
    capsys.readouterr()
    assert main(["report", "--config", str(tmp_path / "absent.cfg")]) == 3


def test_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("PT_NOSIGNAL_TOL", "10")
    d = json.loads(run(capsys, "report", "--state", "ghz", "--theta", "0.519",
                       "--alpha", "1.4137", "--xi", "1.5708", "--t1", "0.1745"))
    assert d["tol"] == 10.0
    assert d["local_nosignaling"] is True and d["global_nosignaling"] is True

    monkeypatch.setenv("PT_NOSIGNAL_TOL", "-1")
    assert main(["report", "--state", "ghz", "--theta", "0.5", "--alpha", "1.0",
                 "--xi", "1.0", "--t1", "0.5"]) == 2
    capsys.readouterr()

    monkeypatch.setenv("PT_NOSIGNAL_TOL", "not-a-number")
    assert main(["report", "--state", "ghz", "--theta", "0.5", "--alpha", "1.0",
                 "--xi", "1.0", "--t1", "0.5"]) == 2


def test_hamiltonian_regimes(capsys):
    d = json.loads(run(capsys, "hamiltonian", "--alpha", "0.5", "--xi", "0.7",
                       "--t1", "0.3"))
    assert d["regime"] == "unbroken"
    assert abs(d["alpha"] - 0.5) <= 1e-12
    assert abs(d["parity_angle"] - 0.7) <= 1e-5
    e0, e1 = d["energies"]
    assert abs(e0[0] + math.cos(0.5)) <= 1e-12 and e0[1] == 0.0
    assert abs(e1[0] - math.cos(0.5)) <= 1e-12

    d = json.loads(run(capsys, "hamiltonian", "--s", "2", "--t", "1",
                       "--tau", "0.1", "--xi", "0"))
    assert d["regime"] == "broken" and d["alpha"] is None
    assert abs(d["energies"][0][1]) > 0.5  # conjugate imaginary pair

    d = json.loads(run(capsys, "hamiltonian", "--s", "1", "--t", "1",
                       "--tau", "0.1", "--xi", "0"))
    assert d["regime"] == "exceptional"


def test_evolve_outputs_propagator_and_states(capsys):
    d = json.loads(run(capsys, "evolve", "--state", "bell", "--alpha", "0.3",
                       "--xi", "0.2", "--t1", "0.9"))
    assert abs(d["abs_det_u"] - 1.0) <= 1e-10
    assert len(d["u"]) == 2 and len(d["rho_post"]) == 4
    post = np.array([[complex(re, im) for re, im in row] for row in d["rho_post"]])
    assert abs(np.trace(post) - 1.0) <= 1e-12


def test_custom_state_amplitudes(capsys, tmp_path):
    amps = "0.70710678118654760 0 0 0 0 0 0 0 0 0 0 0 0 0 0.7071067811865476 0"
    d1 = json.loads(run(capsys, "report", "--state", "custom",
                        "--amplitudes", amps,
                        "--alpha", "0.9", "--xi", "1.3", "--t1", "0.7"))
    f = tmp_path / "amps.txt"
    f.write_text(amps.replace(" ", "\n"))
    d2 = json.loads(run(capsys, "report", "--state", "custom",
                        "--amplitudes-file", str(f),
                        "--alpha", "0.9", "--xi", "1.3", "--t1", "0.7"))
    assert d1["p_global"] == d2["p_global"]

    rc = main(["report", "--state", "custom", "--alpha", "0.9", "--xi", "1.3",
               "--t1", "0.7"])
    assert rc == 2


def test_optimize_pinned_surface(capsys):
    d = json.loads(run(capsys, "optimize", "--state", "ghz", "--surface", "xi0",
                       "--theta-fixed", "0"))
    assert abs(d["best_value"] - 0.5) <= 1e-12
    assert d["argmax"]["xi"] == 0.0 and d["argmax"]["theta"] == 0.0
    assert d["evaluations"] > 0 and d["trace"]


def test_optimize_requires_family(capsys):
    assert main(["optimize"]) == 2


def test_profile_csv_to_file_and_stdout(capsys, tmp_path):
    out = tmp_path / "fig1.csv"
    run(capsys, "profile", "--figure", "1", "--n-theta", "17",
        "--output", str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "theta,p_ghz,p_w" and len(lines) == 18

    text = run(capsys, "profile", "--figure", "2", "--n-theta", "17")
    lines = text.splitlines()
    assert lines[0] == "theta,p_max_xi0"
    assert abs(float(lines[1].split(",")[1]) - 0.5) <= 1e-10

    rc = main(["profile", "--figure", "1", "--n-theta", "17",
               "--output", str(tmp_path / "missing_dir" / "x.csv")])
    assert rc == 3
    capsys.readouterr()
    assert main(["profile", "--n-theta", "17"]) == 2  # no figure
    capsys.readouterr()
    assert main(["profile", "--figure", "1", "--n-theta", "15"]) == 2  # too coarse


def test_report_output_file(capsys, tmp_path):
    out = tmp_path / "report.json"
    run(capsys, "report", "--state", "bell", "--alpha", "0.4", "--xi", "0.8",
        "--t1", "0.6", "--output", str(out))
    d = json.loads(out.read_text())
    assert d["family"] == "bell"


def test_verify_single_criterion(capsys):
    out = run(capsys, "verify", "--only", "hermitian-sanity")
    assert out.startswith("PASS [10] hermitian-sanity:")


def test_verify_only_is_repeatable(capsys):
    # listed out of order; results come back in canonical criterion order
    out = run(capsys, "verify", "--only", "hermitian-sanity",
              "--only", "rotated-surface")
    lines = out.splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("PASS [ 5] rotated-surface:")
    assert lines[1].startswith("PASS [10] hermitian-sanity:")


def test_verify_tightened_tolerance_fails(capsys):
    rc = main(["verify", "--only", "propagator-oracle", "--tol", "1e-15"])
    out = capsys.readouterr()
    assert rc == 1
    assert out.out.startswith("FAIL [ 9] propagator-oracle:")
    assert "failed" in out.err


def test_usage_errors(capsys):
    assert main([]) == 2
    capsys.readouterr()
    assert main(["report", "--nonsense"]) == 2
    capsys.readouterr()
    assert main(["verify", "--only", "no-such-slug"]) == 2
