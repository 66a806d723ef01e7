"""Command-line interface.

Subcommands:
  hamiltonian  operator matrix, spectral regime, energies, and parity axis
  evolve       propagator and the state before/after one-sided evolution
  report       full signaling analysis as JSON
  optimize     lattice-plus-simplex search over a state family
  profile      CSV profile curves (figure 1 or 2)
  verify       run the built-in verification suite

The Hamiltonian is given either by raw coefficients (--s --t --tau with
optional --r --J) or by the effective triple (--alpha --t1); --xi is shared
by both routes. Exactly one of the two parameterizations must be used.
--degrees converts the angle flags (theta, phi, x, y, xi, alpha) once at
ingestion; the evolution lengths tau and t1 are never rescaled. --config FILE
reads flat `key = value` lines (# comments allowed) whose keys are the long
flag names; explicit flags take precedence over the file. The default
no-signaling tolerance honors the PT_NOSIGNAL_TOL environment variable.

Exit codes: 0 success, 1 verification failures, 2 invalid parameters or a
broken-symmetry regime where unsupported, 3 file I/O failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .hamiltonian import (
    BrokenPhaseError,
    PTParams,
    alpha_of,
    build_hamiltonian,
    eigensystem,
    find_parity_angle,
    phase_of,
    propagator,
)
from .optimize import optimize_family, write_profile1_csv, write_profile2_csv
from .signaling import (
    DEFAULT_NOSIGNAL_TOL,
    EvolutionScenario,
    analyze,
    evolve_alice,
    report_to_json,
    _matrix_to_json,
)
from .states import FAMILIES, StateSpec, density, make_state, parse_custom_amplitudes
from .verify import CRITERIA, run_criteria

__all__ = ["main", "RunConfig"]

_ANGLE_KEYS = ("theta", "phi", "x", "y", "xi", "alpha")
_GENERAL_KEYS = ("r", "s", "t", "J", "tau")
_CONFIG_TYPES = {
    "r": float, "s": float, "t": float, "xi": float, "J": float, "tau": float,
    "alpha": float, "t1": float, "theta": float, "phi": float, "x": float,
    "y": float, "tol": float, "theta_fixed": float,
    "grid_points": int, "n_theta": int, "figure": int,
}


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation parameters for the analysis commands.

    Built by `RunConfig.from_args`, which enforces that exactly one
    Hamiltonian parameterization was supplied and that the tolerance is
    positive.
    """

    ham: PTParams
    state: StateSpec
    tol: float

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tolerance must be positive, got {self.tol}")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(ham=_resolve_params(args), state=_resolve_state(args),
                   tol=_resolve_tol(args))


def _resolve_params(args) -> PTParams:
    """Build PTParams from exactly one of the two flag sets."""
    general = [k for k in _GENERAL_KEYS if getattr(args, k, None) is not None]
    effective = [k for k in ("alpha", "t1") if getattr(args, k, None) is not None]
    if general and effective:
        raise ValueError(
            "give either the raw coefficients (--s --t --tau) or the effective "
            f"triple (--alpha --t1), not both (got --{' --'.join(general + effective)})")
    xi = args.xi if getattr(args, "xi", None) is not None else 0.0
    if effective:
        if len(effective) < 2:
            raise ValueError("the effective parameterization needs both --alpha and --t1")
        return PTParams.from_effective(args.alpha, xi, args.t1)
    if general:
        missing = [k for k in ("s", "t", "tau") if getattr(args, k) is None]
        if missing:
            raise ValueError(
                f"raw parameterization is missing --{' --'.join(missing)}")
        r = args.r if args.r is not None else 0.0
        j = args.J if args.J is not None else 1.0
        return PTParams(r=r, s=args.s, t=args.t, xi=xi, J=j, tau=args.tau)
    raise ValueError("no Hamiltonian given: use --alpha/--t1 or --s/--t/--tau")


def _resolve_state(args) -> StateSpec:
    if getattr(args, "state", None) is None:
        raise ValueError("--state is required")
    if args.state == "custom":
        if getattr(args, "amplitudes_file", None) is not None:
            with open(args.amplitudes_file) as fh:
                text = fh.read()
        elif getattr(args, "amplitudes", None) is not None:
            text = args.amplitudes
        else:
            raise ValueError("custom states need --amplitudes or --amplitudes-file")
        return StateSpec("custom", amplitudes=parse_custom_amplitudes(text))
    kwargs = {k: getattr(args, k) for k in ("theta", "phi", "x", "y")
              if getattr(args, k, None) is not None}
    return StateSpec(args.state, **kwargs)


def _resolve_tol(args) -> float:
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get("PT_NOSIGNAL_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise ValueError(f"PT_NOSIGNAL_TOL is not a number: {env!r}")
    return DEFAULT_NOSIGNAL_TOL


def _apply_config(args):
    """Fill unset options from a flat key=value file; flags win."""
    path = getattr(args, "config", None)
    if path is None:
        return
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value, got {line!r}")
            key, _, val = line.partition("=")
            key = key.strip().replace("-", "_")
            val = val.strip()
            if not hasattr(args, key) or key in ("config", "func"):
                raise ValueError(f"{path}:{lineno}: unknown option {key!r}")
            if getattr(args, key) is not None:
                continue  # explicit flag wins
            if key == "degrees":
                parsed = val.lower() in ("1", "true", "yes", "on")
            elif key in _CONFIG_TYPES:
                try:
                    parsed = _CONFIG_TYPES[key](val)
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: bad value for {key}: {val!r}")
            else:
                parsed = val
            setattr(args, key, parsed)


def _convert_degrees(args):
    """One-shot angle conversion at ingestion; tau and t1 stay as given."""
    if not getattr(args, "degrees", None):
        return
    for key in _ANGLE_KEYS:
        if getattr(args, key, None) is not None:
            setattr(args, key, float(getattr(args, key)) * np.pi / 180.0)


def _emit(text: str, output):
    if not text.endswith("\n"):
        text += "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", newline="\n") as fh:
            fh.write(text)


def _params_payload(p: PTParams) -> dict:
    return {"r": p.r, "s": p.s, "t": p.t, "xi": p.xi, "J": p.J, "tau": p.tau}


def cmd_hamiltonian(args) -> int:
    params = _resolve_params(args)
    h = build_hamiltonian(params)
    regime = phase_of(params)
    payload = {
        "params": _params_payload(params),
        "regime": regime,
        "matrix": _matrix_to_json(h),
    }
    if regime == "broken":
        vals = sorted(np.linalg.eigvals(h), key=lambda v: (v.real, v.imag))
        payload["alpha"] = None
        payload["t1"] = None
        payload["energies"] = [[v.real, v.imag] for v in vals]
    else:
        alpha = alpha_of(params)
        payload["alpha"] = alpha
        payload["t1"] = params.t1
        if regime == "unbroken":
            eig = eigensystem(params)
            pair = sorted((eig.e_minus, eig.e_plus))
        else:  # coalesced spectrum: both energies equal J*r up to rounding
            ca = np.cos(alpha)
            pair = sorted((params.J * (params.r - params.t * ca),
                           params.J * (params.r + params.t * ca)))
        payload["energies"] = [[pair[0], 0.0], [pair[1], 0.0]]
    payload["parity_angle"] = find_parity_angle(h)
    _emit(json.dumps(payload, indent=2), args.output)
    return 0


def cmd_evolve(args) -> int:
    params = _resolve_params(args)
    spec = _resolve_state(args)
    u = propagator(params)
    rho = density(make_state(spec))
    post = evolve_alice(rho, u, spec.n_parties)
    payload = {
        "params": _params_payload(params),
        "regime": phase_of(params),
        "family": spec.family,
        "u": _matrix_to_json(u),
        "abs_det_u": float(abs(np.linalg.det(u))),
        "rho_pre": _matrix_to_json(rho),
        "rho_post": _matrix_to_json(post),
    }
    _emit(json.dumps(payload, indent=2), args.output)
    return 0


def cmd_report(args) -> int:
    cfg = RunConfig.from_args(args)
    report = analyze(EvolutionScenario(cfg.state, cfg.ham), tol=cfg.tol)
    _emit(report_to_json(report), args.output)
    return 0


def cmd_optimize(args) -> int:
    if args.state is None:
        raise ValueError("--state is required (ghz, w, or rotated-ghz)")
    res = optimize_family(
        args.state,
        grid_points=args.grid_points if args.grid_points is not None else 25,
        tol=args.tol if args.tol is not None else 1e-10,
        surface=args.surface,
        theta_fixed=args.theta_fixed,
    )
    payload = {
        "family": args.state,
        "surface": args.surface,
        "theta_fixed": args.theta_fixed,
        "best_value": res.best_value,
        "argmax": res.argmax,
        "evaluations": res.evaluations,
        "trace": list(res.trace),
    }
    _emit(json.dumps(payload, indent=2), args.output)
    return 0


def cmd_profile(args) -> int:
    if args.figure is None:
        raise ValueError("--figure is required (1 or 2)")
    n = args.n_theta if args.n_theta is not None else 201
    writer = write_profile1_csv if args.figure == 1 else write_profile2_csv
    if args.output is None:
        writer(sys.stdout, n)
    else:
        writer(args.output, n)
    return 0


def cmd_verify(args) -> int:
    tol = args.tol
    if tol is None:
        env = os.environ.get("PT_NOSIGNAL_TOL")
        if env:
            tol = float(env)
    results = run_criteria(only=args.only, tol=tol)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} [{r.number:2d}] {r.slug}: {r.detail}")
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(results)} criteria failed", file=sys.stderr)
        return 1
    return 0


def _add_common(sub):
    sub.add_argument("--config", help="flat key=value option file")
    sub.add_argument("--degrees", action="store_true", default=None,
                     help="interpret angle flags (theta phi x y xi alpha) in degrees")
    sub.add_argument("--output", help="write to this path instead of stdout")


def _add_hamiltonian_flags(sub):
    for key, doc in (("r", "identity coefficient"),
                     ("s", "non-Hermiticity strength"),
                     ("t", "coupling scale"),
                     ("J", "overall energy scale"),
                     ("tau", "physical evolution time (times J)")):
        sub.add_argument(f"--{key}", type=float, help=doc)
    sub.add_argument("--xi", type=float, help="basis orientation angle (both routes)")
    sub.add_argument("--alpha", type=float, help="effective non-Hermiticity angle")
    sub.add_argument("--t1", type=float, help="effective evolution length t*tau*cos(alpha)")


def _add_state_flags(sub):
    sub.add_argument("--state", choices=FAMILIES, help="shared state family")
    sub.add_argument("--theta", type=float, help="primary mixing angle")
    sub.add_argument("--phi", type=float, help="secondary mixing angle (w family)")
    sub.add_argument("--x", type=float, help="local basis rotation polar angle")
    sub.add_argument("--y", type=float, help="local basis rotation azimuthal angle")
    sub.add_argument("--amplitudes",
                     help="custom state: 16 whitespace-separated reals (8 re/im pairs)")
    sub.add_argument("--amplitudes-file", help="file holding the 16 reals")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptsignal",
        description="Local evolution under a PT-symmetric Hamiltonian and the "
                    "signaling it does or does not allow.")
    subs = parser.add_subparsers(dest="command")
    parser.set_defaults(func=None)

    p = subs.add_parser("hamiltonian", help="operator, regime, energies, parity axis")
    _add_hamiltonian_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_hamiltonian)

    p = subs.add_parser("evolve", help="propagator and one-sided evolved state")
    _add_hamiltonian_flags(p)
    _add_state_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_evolve)

    p = subs.add_parser("report", help="full signaling analysis as JSON")
    _add_hamiltonian_flags(p)
    _add_state_flags(p)
    _add_common(p)
    p.add_argument("--tol", type=float,
                   help="no-signaling tolerance (default PT_NOSIGNAL_TOL or 1e-10)")
    p.set_defaults(func=cmd_report)

    p = subs.add_parser("optimize", help="search a family for its best probability")
    p.add_argument("--state", choices=("ghz", "w", "rotated-ghz"),
                   help="family to optimize")
    p.add_argument("--surface", choices=("xi0",),
                   help="restrict to a local-preservation surface")
    p.add_argument("--theta-fixed", type=float, help="pin theta to this value")
    p.add_argument("--grid-points", type=int, help="lattice points per dimension (default 25)")
    p.add_argument("--tol", type=float, help="simplex value tolerance (default 1e-10)")
    _add_common(p)
    p.set_defaults(func=cmd_optimize)

    p = subs.add_parser("profile", help="CSV profile curves")
    p.add_argument("--figure", type=int, choices=(1, 2), help="which profile")
    p.add_argument("--n-theta", type=int,
                   help="points along theta (default 201, minimum 16)")
    _add_common(p)
    p.set_defaults(func=cmd_profile)

    p = subs.add_parser("verify", help="run the verification suite")
    p.add_argument("--only", choices=[slug for slug, _ in CRITERIA],
                   action="append", help="run only this criterion (repeatable)")
    p.add_argument("--tol", type=float,
                   help="override the no-signaling thresholds (default PT_NOSIGNAL_TOL or built-in)")
    p.add_argument("--config", help="flat key=value option file")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code) if exc.code else 0
    if args.func is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        _apply_config(args)
        _convert_degrees(args)
        return args.func(args)
    except BrokenPhaseError as exc:
        print(f"error: broken-symmetry regime: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
