import json

import numpy as np
import pytest

from ptsignal.hamiltonian import BrokenPhaseError, PTParams, propagator
from ptsignal.signaling import (
    EvolutionScenario,
    analyze,
    bell_coefficients,
    bob_reduced_bell_closed_form,
    delta3_w,
    evolve_alice,
    ghz_joint_closed_form,
    helstrom,
    lambda3_ghz,
    lambda3_rotated,
    report_from_json,
    report_to_json,
    rotated_joint_closed_form,
    w_joint_closed_form,
)
from ptsignal.states import StateSpec, density, make_state, reduced


def scenario(family, theta=0.0, phi=0.0, x=0.0, y=0.0, *, alpha, xi, t1):
    spec = StateSpec(family, theta=theta, phi=phi, x=x, y=y)
    return EvolutionScenario(spec, PTParams.from_effective(alpha, xi, t1))


def numeric_joint(spec, alpha, xi, t1):
    u = propagator(PTParams.from_effective(alpha, xi, t1))
    rho = density(make_state(spec))
    post = evolve_alice(rho, u, spec.n_parties)
    keep = {1} if spec.n_parties == 2 else {1, 2}
    return reduced(post, keep)


def test_helstrom_basics():
    rho = np.diag([0.5, 0.5]).astype(complex)
    assert np.isclose(helstrom(rho, rho), 0.5)
    a = np.diag([1.0, 0.0]).astype(complex)
    b = np.diag([0.0, 1.0]).astype(complex)
    assert np.isclose(helstrom(a, b), 1.0)
    with pytest.raises(ValueError):
        helstrom(np.eye(2) / 2, np.eye(4) / 4)


def test_evolve_alice_unitary_case():
    u = np.array([[0, 1], [1, 0]], dtype=complex)  # bit flip on Alice
    rho = density(make_state(StateSpec("ghz", theta=0.3)))
    post = evolve_alice(rho, u, 3)
    assert np.isclose(np.trace(post), 1.0)
    # flipping Alice maps |000> to |100>
    assert np.isclose(post[0b100, 0b100].real, np.cos(0.3) ** 2)
    with pytest.raises(ValueError):
        evolve_alice(rho, np.eye(4), 3)
    with pytest.raises(ValueError):
        evolve_alice(rho, u, 2)


def test_bell_closed_form_matches_numeric():
    rng = np.random.default_rng(31)
    for _ in range(50):
        alpha = rng.uniform(0, np.pi / 2 - 0.01)
        xi = rng.uniform(0, np.pi)
        t1 = rng.uniform(0, np.pi)
        closed = bob_reduced_bell_closed_form(alpha, t1, xi)
        post = numeric_joint(StateSpec("bell"), alpha, xi, t1)
        assert np.abs(closed - post).max() <= 1e-10
        assert np.isclose(np.trace(closed), 1.0)


def test_ghz_joint_closed_form_matches_numeric():
    rng = np.random.default_rng(32)
    for _ in range(50):
        theta = rng.uniform(0, np.pi / 2)
        alpha = rng.uniform(0, np.pi / 2 - 0.01)
        xi = rng.uniform(0, np.pi)
        t1 = rng.uniform(0, np.pi)
        closed = ghz_joint_closed_form(theta, alpha, xi, t1)
        post = numeric_joint(StateSpec("ghz", theta=theta), alpha, xi, t1)
        assert np.abs(closed - post).max() <= 1e-10


def test_w_joint_closed_form_matches_numeric():
    rng = np.random.default_rng(33)
    for _ in range(50):
        theta, phi = rng.uniform(0, np.pi / 2, size=2)
        alpha = rng.uniform(0, np.pi / 2 - 0.01)
        xi = rng.uniform(0, np.pi)
        t1 = rng.uniform(0, np.pi)
        closed = w_joint_closed_form(theta, phi, alpha, xi, t1)
        post = numeric_joint(StateSpec("w", theta=theta, phi=phi), alpha, xi, t1)
        assert np.abs(closed - post).max() <= 1e-10


def test_rotated_joint_closed_form_matches_numeric():
    rng = np.random.default_rng(34)
    for _ in range(50):
        theta = rng.uniform(0, np.pi / 2)
        x = rng.uniform(0, np.pi)
        y = rng.uniform(0, 2 * np.pi)
        alpha = rng.uniform(0, np.pi / 2 - 0.01)
        xi = rng.uniform(0, np.pi)
        t1 = rng.uniform(0, np.pi)
        closed = rotated_joint_closed_form(theta, x, y, alpha, xi, t1)
        post = numeric_joint(StateSpec("rotated-ghz", theta=theta, x=x, y=y),
                             alpha, xi, t1)
        assert np.abs(closed - post).max() <= 1e-10


def test_eigenvalue_formulas_match_numeric_spectra():
    rng = np.random.default_rng(35)
    for _ in range(50):
        theta, phi = rng.uniform(0.05, np.pi / 2 - 0.05, size=2)
        alpha = rng.uniform(0.05, np.pi / 2 - 0.05)
        xi = rng.uniform(0, np.pi)
        t1 = rng.uniform(0, np.pi)

        rep = analyze(scenario("ghz", theta=theta, alpha=alpha, xi=xi, t1=t1))
        lam = lambda3_ghz(alpha, theta, xi, t1)
        assert abs(rep.d_global - 2 * abs(lam)) <= 1e-10
        assert abs(rep.p_global - (1 + abs(lam)) / 2) <= 1e-10

        rep = analyze(scenario("w", theta=theta, phi=phi, alpha=alpha, xi=xi, t1=t1))
        dl = delta3_w(alpha, theta, phi, xi, t1)
        assert abs(rep.d_global - 2 * abs(dl)) <= 1e-10

        rep = analyze(scenario("rotated-ghz", theta=theta, x=xi, y=0.0,
                               alpha=alpha, xi=xi, t1=t1))
        lr = abs(np.sin(2 * theta)) * lambda3_rotated(alpha, t1)
        assert abs(rep.d_global - 2 * lr) <= 1e-10


def test_w_eigenvalue_independent_of_phi():
    # the middle-branch split never enters the discrimination probability
    base = None
    for phi in np.linspace(0, np.pi / 2, 7):
        rep = analyze(scenario("w", theta=0.9, phi=phi, alpha=1.0, xi=1.2, t1=0.7))
        if base is None:
            base = rep.d_global
        assert abs(rep.d_global - base) <= 1e-12


def test_twin_identity_between_families():
    # the two tripartite eigenvalues swap under theta -> pi/2 - theta
    for theta in (0.2, 0.5, 1.0, 1.4):
        lam = lambda3_ghz(1.1, np.pi / 2 - theta, 0.8, 0.6)
        dl = delta3_w(1.1, theta, 0.4, 0.8, 0.6)
        assert abs(abs(lam) - abs(dl)) <= 1e-12


def test_xi_zero_preserves_local_states_only():
    rep = analyze(scenario("ghz", theta=0.7, alpha=0.5, xi=0.0, t1=0.8))
    assert rep.local_nosignaling is True
    assert rep.global_nosignaling is False
    assert max(rep.d_B, rep.d_C) <= 1e-12
    assert rep.d_global > 1e-3
    assert np.isclose(rep.p_B, 0.5) and np.isclose(rep.p_C, 0.5)


def test_bell_report_has_no_second_remote_party():
    rep = analyze(scenario("bell", alpha=0.6, xi=0.9, t1=0.5))
    assert rep.p_C is None and rep.d_C is None
    assert rep.rho_pre_C is None and rep.rho_post_C is None
    assert np.array_equal(rep.rho_pre_BC, rep.rho_pre_B)
    assert rep.d_global == rep.d_B


def test_analyze_validation():
    with pytest.raises(ValueError):
        analyze(scenario("ghz", theta=0.5, alpha=0.5, xi=0.5, t1=0.5), tol=0.0)
    with pytest.raises(BrokenPhaseError):
        analyze(EvolutionScenario(StateSpec("ghz", theta=0.5),
                                  PTParams(r=0, s=2.0, t=1.0, xi=0.5, tau=0.3)))


def test_report_json_round_trip():
    rep = analyze(scenario("w", theta=1.0472, phi=0.7854, alpha=1.2566,
                           xi=1.5708, t1=0.3479))
    text = report_to_json(rep)
    back = report_from_json(text)
    assert back.p_global == rep.p_global
    assert back.d_B == rep.d_B and back.d_C == rep.d_C
    assert back.global_nosignaling == rep.global_nosignaling
    assert back.local_nosignaling == rep.local_nosignaling
    assert np.array_equal(back.rho_post_BC, rep.rho_post_BC)
    assert json.loads(report_to_json(back)) == json.loads(text)


def test_report_fields_at_operating_point():
    rep = analyze(scenario("ghz", theta=0.519, alpha=1.4137, xi=1.5708, t1=0.1745))
    assert abs(rep.p_global - 0.786) <= 0.005
    assert rep.lambda_closed is not None
    assert abs(2 * abs(rep.lambda_closed) - rep.d_global) <= 1e-9


def test_bell_coefficient_structure():
    b1, b2, b3, b4, n2 = bell_coefficients(0.8, 1.1, 0.6)
    k = 1 / np.cos(0.8) ** 2 - np.tan(0.8) ** 2 * np.cos(2 * 0.6)
    t_term = np.tan(0.8) * np.sin(2 * 0.6) * np.sin(1.1)
    assert np.isclose(b1, k - t_term)
    assert np.isclose(b2, k + t_term)
    assert np.isclose(b4, np.conj(b3))
    assert np.isclose(n2, b1 + b2)
