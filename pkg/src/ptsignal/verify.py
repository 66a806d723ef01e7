"""Self-contained verification suite: every quantitative claim the package
makes, checked end to end at fixed tolerances with seeded randomness.

Each criterion is a function returning a CriterionResult; `run_criteria`
executes them in order (optionally filtered by slug) and is what the CLI
`verify` subcommand calls. The draws use fixed seeds so runs are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import PTParams, propagator, propagator_reference
from .linalg import hermitian_eigenvalues
from .optimize import optimize_family, profile_fig1, profile_fig2
from .signaling import (
    EvolutionScenario,
    analyze,
    bell_coefficients,
    bob_reduced_bell_closed_form,
    delta3_w,
    evolve_alice,
    ghz_joint_closed_form,
    lambda3_ghz,
    lambda3_rotated,
    rotated_joint_closed_form,
    w_joint_closed_form,
)
from .states import StateSpec, density, make_state, reduced

__all__ = ["CriterionResult", "CRITERIA", "run_criteria", "FIG2_PEAK_FIXTURE"]

# derived regression fixture: peak of the xi=0 profile at theta = pi/4,
# equal to (1 + sin(a)/(1 + sin(a)^2))/2 at the default alpha ceiling
FIG2_PEAK_FIXTURE = 0.7499808181739902

_NOSIGNAL_TOL = 1e-10


@dataclass(frozen=True)
class CriterionResult:
    number: int
    slug: str
    passed: bool
    detail: str


def _effective_scenario(family, theta, phi, x, y, alpha, xi, t1):
    spec = StateSpec(family, theta=theta, phi=phi, x=x, y=y)
    return EvolutionScenario(spec, PTParams.from_effective(alpha, xi, t1))


def criterion_1_ghz_optimum(tol: float = None) -> CriterionResult:
    """Full search over the two-branch family lands at the reported optimum."""
    del tol
    res = optimize_family("ghz")
    a = res.argmax
    checks = [
        abs(res.best_value - 0.786) <= 0.005,
        abs(a["theta"] - 0.519) <= 0.05,
        abs(a["xi"] - np.pi / 2) <= 0.1,
        abs(a["alpha"] - 9 * np.pi / 20) <= 0.1,
        abs(a["t1"] - np.pi / 18) <= 0.05,
    ]
    detail = (f"best={res.best_value:.6f} at theta={a['theta']:.4f} xi={a['xi']:.4f} "
              f"alpha={a['alpha']:.4f} t1={a['t1']:.4f} ({res.evaluations} evals)")
    return CriterionResult(1, "ghz-optimum", all(checks), detail)


def criterion_2_w_optimum(tol: float = None) -> CriterionResult:
    """Full search over the three-branch family lands at the reported optimum."""
    del tol
    res = optimize_family("w")
    a = res.argmax
    checks = [
        abs(res.best_value - 0.781) <= 0.005,
        abs(a["theta"] - np.pi / 3) <= 0.05,
        abs(a["xi"] - np.pi / 2) <= 0.1,
        abs(a["alpha"] - 2 * np.pi / 5) <= 0.1,
        abs(a["t1"] - 0.3479) <= 0.05,
        abs(a["phi"] - np.pi / 4) <= 0.05,
    ]
    detail = (f"best={res.best_value:.6f} at theta={a['theta']:.4f} xi={a['xi']:.4f} "
              f"alpha={a['alpha']:.4f} t1={a['t1']:.4f} phi={a['phi']:.4f}")
    return CriterionResult(2, "w-optimum", all(checks), detail)


def criterion_3_rotated_optimum(tol: float = None) -> CriterionResult:
    """Search over the rotated family on its preservation surface."""
    del tol
    res = optimize_family("rotated-ghz")
    a = res.argmax
    checks = [
        abs(res.best_value - 0.75) <= 0.005,
        abs(a["t1"] - np.pi / 2) <= 0.05,
        abs(a["alpha"] - 9 * np.pi / 20) <= 0.1,
    ]
    detail = (f"best={res.best_value:.6f} at theta={a['theta']:.4f} "
              f"alpha={a['alpha']:.4f} t1={a['t1']:.4f} (xi pinned {a['xi']:.4f})")
    return CriterionResult(3, "rotated-optimum", all(checks), detail)


def criterion_4_xi0_surface(tol: float = None) -> CriterionResult:
    """xi = 0 preserves both local reduced states for the two-branch family
    while the joint state still shifts, over random general-parameter draws."""
    tol = _NOSIGNAL_TOL if tol is None else tol
    rng = np.random.default_rng(20260819)
    worst_local = 0.0
    d_globals = np.empty(10 ** 4)
    for i in range(10 ** 4):
        theta = rng.uniform(0.0, np.pi / 2)
        r = rng.uniform(-2.0, 2.0)
        t = rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0])
        s = t * rng.uniform(-0.999, 0.999)
        j = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0])
        tau_prime = rng.uniform(0.0, 3.0)
        ham = PTParams(r=r, s=s, t=t, xi=0.0, J=j, tau=j * tau_prime)
        rep = analyze(EvolutionScenario(StateSpec("ghz", theta=theta), ham))
        worst_local = max(worst_local, rep.d_B, rep.d_C)
        d_globals[i] = rep.d_global
    med = float(np.median(d_globals))
    passed = worst_local <= tol and med > 1e-3
    detail = f"max local distance {worst_local:.3e} (<= {tol:.1e}), median joint {med:.3e} (> 1e-3)"
    return CriterionResult(4, "xi0-surface", passed, detail)


def criterion_5_rotated_surface(tol: float = None) -> CriterionResult:
    """y=0, x=xi preserves both local states for the rotated family, and the
    post-evolution local state matches its two-line closed form."""
    tol = _NOSIGNAL_TOL if tol is None else tol
    rng = np.random.default_rng(5)
    worst_local = 0.0
    worst_form = 0.0
    for _ in range(10 ** 3):
        theta = rng.uniform(0.0, np.pi / 2)
        xi = rng.uniform(0.0, np.pi)
        alpha = rng.uniform(0.0, np.pi / 2 - 0.01)
        t1 = rng.uniform(0.0, np.pi)
        rep = analyze(_effective_scenario("rotated-ghz", theta, 0.0, xi, 0.0,
                                          alpha, xi, t1))
        worst_local = max(worst_local, rep.d_B, rep.d_C)
        c2t = np.cos(2 * theta)
        closed = 0.5 * np.array([[1 + c2t * np.cos(xi), c2t * np.sin(xi)],
                                 [c2t * np.sin(xi), 1 - c2t * np.cos(xi)]])
        worst_form = max(worst_form, float(np.abs(rep.rho_post_B - closed).max()))
    passed = worst_local <= tol and worst_form <= tol
    detail = f"max local distance {worst_local:.3e}, closed-form deviation {worst_form:.3e} (<= {tol:.1e})"
    return CriterionResult(5, "rotated-surface", passed, detail)


def criterion_6_w_negative(tol: float = None) -> CriterionResult:
    """No nontrivial parameters preserve the three-branch family locally."""
    del tol
    rng = np.random.default_rng(6)
    worst = np.inf
    for _ in range(10 ** 4):
        theta = rng.uniform(0.05, np.pi / 2 - 0.05)
        phi = rng.uniform(0.05, np.pi / 2 - 0.05)
        xi = rng.uniform(0.05, np.pi - 0.05)
        alpha = rng.uniform(0.05, np.pi / 2 - 0.01)
        t1 = rng.uniform(0.05, np.pi - 0.05)
        rep = analyze(_effective_scenario("w", theta, phi, 0.0, 0.0, alpha, xi, t1))
        worst = min(worst, rep.d_B, rep.d_C)
    passed = worst > 1e-8
    detail = f"min local distance {worst:.3e} (> 1e-8) over nontrivial draws"
    return CriterionResult(6, "w-negative", passed, detail)


def criterion_7_bipartite_iff(tol: float = None) -> CriterionResult:
    """The bipartite remote state moves unless alpha = 0 or the effective
    evolution is trivial (sin t1 = 0); dense closed-form grid plus numeric
    spot checks."""
    del tol
    alphas = np.linspace(0.0, np.pi / 2, 52)[1:-1]
    xis = np.linspace(0.0, np.pi, 50)
    t1s = np.linspace(0.0, np.pi, 52)[1:-1]
    aa, xx, tt = np.meshgrid(alphas, xis, t1s, indexing="ij")
    _, _, b3, _, n2 = bell_coefficients(aa, xx, tt)
    t_term = np.tan(aa) * np.sin(2 * tt) * np.sin(xx)
    d = 2 * np.sqrt(t_term ** 2 + np.abs(b3) ** 2) / n2
    grid_min = float(d.min())

    rng = np.random.default_rng(7)
    worst_match = 0.0
    spot_min = np.inf
    for _ in range(100):
        alpha = float(rng.choice(alphas))
        xi = float(rng.choice(xis))
        t1 = float(rng.choice(t1s))
        rep = analyze(_effective_scenario("bell", 0, 0, 0, 0, alpha, xi, t1))
        idx = (np.searchsorted(alphas, alpha), np.searchsorted(xis, xi),
               np.searchsorted(t1s, t1))
        worst_match = max(worst_match, abs(rep.d_B - d[idx]))
        spot_min = min(spot_min, rep.d_B)
    worst_trivial = 0.0
    for _ in range(40):
        xi = rng.uniform(0, np.pi)
        t1 = rng.uniform(0, np.pi)
        alpha = rng.uniform(0, np.pi / 2 - 0.01)
        rep0 = analyze(_effective_scenario("bell", 0, 0, 0, 0, 0.0, xi, t1))
        rep1 = analyze(_effective_scenario("bell", 0, 0, 0, 0, alpha, xi, 0.0))
        worst_trivial = max(worst_trivial, rep0.d_B, rep1.d_B)
    passed = (grid_min > 1e-8 and worst_trivial <= 1e-12
              and worst_match <= 1e-9 and spot_min > 1e-8)
    detail = (f"grid min distance {grid_min:.3e} (> 1e-8), trivial-plane max "
              f"{worst_trivial:.3e} (<= 1e-12), closed-vs-numeric {worst_match:.3e}")
    return CriterionResult(7, "bipartite-iff", passed, detail)


def criterion_8_closed_forms(tol: float = None) -> CriterionResult:
    """Eigenvalue closed forms and every coefficient reconstruction agree
    with the numeric evolution path at random points."""
    del tol
    rng = np.random.default_rng(8)
    worst_eig = 0.0
    worst_mat = 0.0
    for _ in range(10 ** 4):
        theta = rng.uniform(0.0, np.pi / 2)
        phi = rng.uniform(0.0, np.pi / 2)
        xi = rng.uniform(0.0, np.pi)
        x = rng.uniform(0.0, np.pi)
        y = rng.uniform(0.0, 2 * np.pi)
        alpha = rng.uniform(0.0, np.pi / 2 - 0.01)
        t1 = rng.uniform(0.0, np.pi)
        ham = PTParams.from_effective(alpha, xi, t1)
        u = propagator(ham)

        # bipartite reconstruction
        rho = density(make_state(StateSpec("bell")))
        post = reduced(evolve_alice(rho, u, 2), {1})
        worst_mat = max(worst_mat, float(np.abs(
            post - bob_reduced_bell_closed_form(alpha, t1, xi)).max()))

        # two-branch family
        rho = density(make_state(StateSpec("ghz", theta=theta)))
        post = reduced(evolve_alice(rho, u, 3), {1, 2})
        pre = reduced(rho, {1, 2})
        worst_mat = max(worst_mat, float(np.abs(
            post - ghz_joint_closed_form(theta, alpha, xi, t1)).max()))
        lam_num = float(np.abs(hermitian_eigenvalues(post - pre)).max())
        worst_eig = max(worst_eig, abs(abs(lambda3_ghz(alpha, theta, xi, t1)) - lam_num))

        # three-branch family
        rho = density(make_state(StateSpec("w", theta=theta, phi=phi)))
        post = reduced(evolve_alice(rho, u, 3), {1, 2})
        pre = reduced(rho, {1, 2})
        worst_mat = max(worst_mat, float(np.abs(
            post - w_joint_closed_form(theta, phi, alpha, xi, t1)).max()))
        lam_num = float(np.abs(hermitian_eigenvalues(post - pre)).max())
        worst_eig = max(worst_eig, abs(abs(delta3_w(alpha, theta, phi, xi, t1)) - lam_num))

        # rotated family, generic (x, y) for the reconstruction
        rho = density(make_state(StateSpec("rotated-ghz", theta=theta, x=x, y=y)))
        post = reduced(evolve_alice(rho, u, 3), {1, 2})
        worst_mat = max(worst_mat, float(np.abs(
            post - rotated_joint_closed_form(theta, x, y, alpha, xi, t1)).max()))

        # rotated eigenvalue form lives on the y=0, x=xi surface
        rho = density(make_state(StateSpec("rotated-ghz", theta=theta, x=xi, y=0.0)))
        post = reduced(evolve_alice(rho, u, 3), {1, 2})
        pre = reduced(rho, {1, 2})
        lam_num = float(np.abs(hermitian_eigenvalues(post - pre)).max())
        worst_eig = max(worst_eig, abs(
            abs(np.sin(2 * theta)) * lambda3_rotated(alpha, t1) - lam_num))
    passed = worst_eig <= 1e-9 and worst_mat <= 1e-9
    detail = f"eigenvalue deviation {worst_eig:.3e}, reconstruction deviation {worst_mat:.3e} (<= 1e-9)"
    return CriterionResult(8, "closed-forms", passed, detail)


def criterion_9_propagator_oracle(tol: float = None) -> CriterionResult:
    """Closed-form propagator vs the generic matrix exponential, including
    near-exceptional parameters; |det U| = 1 throughout."""
    tol = _NOSIGNAL_TOL if tol is None else tol
    rng = np.random.default_rng(9)
    worst = 0.0
    worst_det = 0.0
    for i in range(10 ** 4):
        r = rng.uniform(-2.0, 2.0)
        t = rng.uniform(0.2, 2.0) * rng.choice([-1.0, 1.0])
        if i % 10 == 0:
            s = t * (1 - 1e-6)  # near-exceptional
        else:
            s = t * rng.uniform(-0.999, 0.999)
        xi = rng.uniform(0.0, 2 * np.pi)
        tau = rng.uniform(0.0, 5.0)
        p = PTParams(r=r, s=s, t=t, xi=xi, J=1.0, tau=tau)
        u = propagator(p)
        worst = max(worst, float(np.abs(u - propagator_reference(p)).max()))
        worst_det = max(worst_det, abs(abs(np.linalg.det(u)) - 1.0))
    passed = worst <= tol and worst_det <= tol
    detail = f"propagator deviation {worst:.3e}, |det|-1 max {worst_det:.3e} (<= {tol:.1e})"
    return CriterionResult(9, "propagator-oracle", passed, detail)


def criterion_10_hermitian_sanity(tol: float = None) -> CriterionResult:
    """s = 0 (a Hermitian Hamiltonian) gives probability 1/2 on every channel
    for every family: unitary evolution cannot signal."""
    tol = _NOSIGNAL_TOL if tol is None else tol
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(500):
        theta = rng.uniform(0.0, np.pi / 2)
        phi = rng.uniform(0.0, np.pi / 2)
        x = rng.uniform(0.0, np.pi)
        y = rng.uniform(0.0, 2 * np.pi)
        xi = rng.uniform(0.0, 2 * np.pi)
        ham = PTParams(r=rng.uniform(-2, 2), s=0.0, t=rng.uniform(0.2, 2.0),
                       xi=xi, J=rng.uniform(0.5, 2.0), tau=rng.uniform(0.0, 5.0))
        for spec in (StateSpec("bell"), StateSpec("ghz", theta=theta),
                     StateSpec("w", theta=theta, phi=phi),
                     StateSpec("rotated-ghz", theta=theta, x=x, y=y)):
            rep = analyze(EvolutionScenario(spec, ham))
            probs = [rep.p_global, rep.p_B] + ([rep.p_C] if rep.p_C is not None else [])
            worst = max(worst, max(abs(p - 0.5) for p in probs))
    passed = worst <= tol
    detail = f"max |p - 1/2| = {worst:.3e} (<= {tol:.1e}) with s = 0"
    return CriterionResult(10, "hermitian-sanity", passed, detail)


def criterion_11_figure_profiles(tol: float = None) -> CriterionResult:
    """Both profile curves have the documented peaks, endpoints, and symmetry;
    the xi=0 curve's peak matches the frozen regression fixture."""
    tol = _NOSIGNAL_TOL if tol is None else tol
    thetas, p_ghz, p_w = profile_fig1(201)
    ig, iw = int(np.argmax(p_ghz)), int(np.argmax(p_w))
    checks = [
        abs(thetas[ig] - 0.519) <= 0.02,
        abs(p_ghz[ig] - 0.786) <= 0.005,
        abs(thetas[iw] - np.pi / 3) <= 0.02,
        abs(p_w[iw] - 0.781) <= 0.005,
    ]
    thetas2, p2 = profile_fig2(41)
    sym = float(np.abs(p2 - p2[::-1]).max())
    peak = float(p2[20])  # theta = pi/4 lattice point
    checks += [
        abs(p2[0] - 0.5) <= tol,
        abs(p2[-1] - 0.5) <= tol,
        sym <= 1e-6,
        abs(peak - FIG2_PEAK_FIXTURE) <= 1e-9,
    ]
    detail = (f"peaks ghz ({thetas[ig]:.4f}, {p_ghz[ig]:.4f}) w ({thetas[iw]:.4f}, "
              f"{p_w[iw]:.4f}); xi0 endpoints ({p2[0]:.3f}, {p2[-1]:.3f}), "
              f"asymmetry {sym:.1e}, peak {peak:.12f}")
    return CriterionResult(11, "figure-profiles", all(checks), detail)


CRITERIA = (
    ("ghz-optimum", criterion_1_ghz_optimum),
    ("w-optimum", criterion_2_w_optimum),
    ("rotated-optimum", criterion_3_rotated_optimum),
    ("xi0-surface", criterion_4_xi0_surface),
    ("rotated-surface", criterion_5_rotated_surface),
    ("w-negative", criterion_6_w_negative),
    ("bipartite-iff", criterion_7_bipartite_iff),
    ("closed-forms", criterion_8_closed_forms),
    ("propagator-oracle", criterion_9_propagator_oracle),
    ("hermitian-sanity", criterion_10_hermitian_sanity),
    ("figure-profiles", criterion_11_figure_profiles),
)


def run_criteria(only=None, tol: float = None):
    """Run the suite and return CriterionResults.

    only restricts the run to one slug (a string) or several (a sequence);
    results keep the canonical criterion order regardless of request order.
    """
    slugs = [slug for slug, _ in CRITERIA]
    if only is None:
        wanted = slugs
    else:
        wanted = [only] if isinstance(only, str) else list(only)
        for item in wanted:
            if item not in slugs:
                raise ValueError(f"unknown criterion {item!r}; choose from {slugs}")
    return [fn(tol=tol) for slug, fn in CRITERIA if slug in wanted]
