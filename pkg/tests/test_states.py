import numpy as np
import pytest

from ptsignal.states import (
    FAMILIES,
    StateSpec,
    density,
    make_state,
    parse_custom_amplitudes,
    reduced,
)


def test_bell_vector():
    v = make_state(StateSpec("bell"))
    assert np.allclose(v, np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_ghz_vector():
    v = make_state(StateSpec("ghz", theta=0.6))
    expected = np.zeros(8, dtype=complex)
    expected[0b000] = np.cos(0.6)
    expected[0b111] = np.sin(0.6)
    assert np.allclose(v, expected)


def test_w_vector():
    v = make_state(StateSpec("w", theta=0.8, phi=0.3))
    expected = np.zeros(8, dtype=complex)
    expected[0b001] = np.sin(0.8) * np.cos(0.3)
    expected[0b010] = np.sin(0.8) * np.sin(0.3)
    expected[0b100] = np.cos(0.8)
    assert np.allclose(v, expected)


def test_rotated_ghz_reduces_to_ghz_at_zero_rotation():
    a = make_state(StateSpec("rotated-ghz", theta=0.42, x=0.0, y=0.0))
    b = make_state(StateSpec("ghz", theta=0.42))
    assert np.allclose(a, b)


def test_rotated_basis_stays_normalized():
    rng = np.random.default_rng(21)
    for _ in range(100):
        spec = StateSpec("rotated-ghz", theta=rng.uniform(0, np.pi / 2),
                         x=rng.uniform(0, np.pi), y=rng.uniform(0, 2 * np.pi))
        v = make_state(spec)
        assert np.isclose(np.linalg.norm(v), 1.0)


def test_all_families_normalized():
    rng = np.random.default_rng(22)
    for _ in range(50):
        th, ph = rng.uniform(0, np.pi / 2, size=2)
        for spec in (StateSpec("bell"), StateSpec("ghz", theta=th),
                     StateSpec("w", theta=th, phi=ph),
                     StateSpec("rotated-ghz", theta=th, x=rng.uniform(0, np.pi),
                               y=rng.uniform(0, 2 * np.pi))):
            assert np.isclose(np.linalg.norm(make_state(spec)), 1.0)


def test_custom_state_normalizes():
    spec = StateSpec("custom", amplitudes=(2, 0, 0, 0, 0, 0, 0, 2j))
    v = make_state(spec)
    assert np.isclose(np.linalg.norm(v), 1.0)
    assert np.allclose(v, np.array([1, 0, 0, 0, 0, 0, 0, 1j]) / np.sqrt(2))


def test_custom_state_validation():
    with pytest.raises(ValueError):
        StateSpec("custom")  # no amplitudes
    with pytest.raises(ValueError):
        make_state(StateSpec("custom", amplitudes=(1, 2, 3)))
    with pytest.raises(ValueError):
        make_state(StateSpec("custom", amplitudes=(0,) * 8))


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        StateSpec("epr")


def test_parse_custom_amplitudes():
    text = "1 0  0 0  0 0  0 0  0 0  0 0  0 0  0 -1"
    amps = parse_custom_amplitudes(text)
    assert amps == (1 + 0j, 0, 0, 0, 0, 0, 0, -1j)
    with pytest.raises(ValueError):
        parse_custom_amplitudes("1 2 3")
    with pytest.raises(ValueError):
        parse_custom_amplitudes(" ".join(["x"] * 16))


def test_n_parties():
    assert StateSpec("bell").n_parties == 2
    for fam in ("ghz", "w", "rotated-ghz"):
        assert StateSpec(fam).n_parties == 3
    assert set(FAMILIES) == {"bell", "ghz", "w", "rotated-ghz", "custom"}


def test_density_is_projector():
    v = make_state(StateSpec("ghz", theta=0.5))
    rho = density(v)
    assert np.allclose(rho, rho.conj().T)
    assert np.isclose(np.trace(rho), 1.0)
    assert np.allclose(rho @ rho, rho)
    with pytest.raises(ValueError):
        density(np.array([1.0, 1.0]))  # not unit norm


def test_reduced_ghz_marginals():
    rho = density(make_state(StateSpec("ghz", theta=0.7)))
    single = reduced(rho, {2})
    assert np.allclose(single, np.diag([np.cos(0.7) ** 2, np.sin(0.7) ** 2]))
    pair = reduced(rho, {1, 2})
    assert pair.shape == (4, 4)
    assert np.isclose(np.trace(pair), 1.0)
    with pytest.raises(ValueError):
        reduced(np.eye(16) / 16, {0})
