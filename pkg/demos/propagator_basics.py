"""Tour of the Hamiltonian family: spectral regimes, the closed-form
propagator against a brute-force matrix exponential, and the parity axis.

Run:  python3 demos/propagator_basics.py
"""

import numpy as np

from ptsignal import (
    PTParams,
    alpha_of,
    build_hamiltonian,
    eigensystem,
    find_parity_angle,
    phase_of,
    propagator,
    propagator_reference,
)

np.set_printoptions(precision=6, suppress=True)


def show(p, label):
    h = build_hamiltonian(p)
    regime = phase_of(p)
    print(f"--- {label}: r={p.r} s={p.s} t={p.t} xi={p.xi} -> {regime}")
    print(h)
    if regime == "unbroken":
        eig = eigensystem(p)
        print(f"alpha = {alpha_of(p):.6f}, energies = ({eig.e_minus:.6f}, {eig.e_plus:.6f})")
    angle = find_parity_angle(h)
    print(f"parity angle = {angle if angle is None else round(angle, 6)}")
    print()


# the non-Hermiticity knob is s/t = sin(alpha); xi rotates the basis
show(PTParams(r=0.2, s=0.0, t=1.0, xi=0.7, tau=0.0), "Hermitian limit (s=0)")
show(PTParams(r=0.2, s=0.6, t=1.0, xi=0.7, tau=0.0), "unbroken phase")
show(PTParams(r=0.2, s=1.0, t=1.0, xi=0.7, tau=0.0), "exceptional point (s=t)")
show(PTParams(r=0.2, s=1.5, t=1.0, xi=0.7, tau=0.0), "broken phase (s>t)")

# closed-form propagator vs the order-20 scaled Taylor exponential
print("closed-form propagator vs matrix-exponential oracle")
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(2000):
    t = rng.uniform(0.2, 2.0)
    p = PTParams(r=rng.uniform(-2, 2), s=t * rng.uniform(-0.999, 0.999), t=t,
                 xi=rng.uniform(0, 2 * np.pi), J=rng.uniform(0.5, 2.0),
                 tau=rng.uniform(0, 5))
    worst = max(worst, np.abs(propagator(p) - propagator_reference(p)).max())
print(f"max entrywise deviation over 2000 draws: {worst:.3e}")

# approaching the exceptional point: U stays finite, |det U| stays 1
print("\napproaching the exceptional point")
for eps in (1e-2, 1e-4, 1e-6, 1e-8, 0.0):
    p = PTParams(r=0.0, s=1.0 - eps, t=1.0, xi=0.3, tau=2.0)
    u = propagator(p)
    dev = np.abs(u - propagator_reference(p)).max()
    print(f"  1 - s/t = {eps:8.0e}: |U|_max = {np.abs(u).max():.6f}, "
          f"|det U| = {abs(np.linalg.det(u)):.12f}, vs oracle {dev:.2e}")

# evolution is non-unitary in the qubit norm even with a real spectrum
p = PTParams.from_effective(alpha=0.9, xi=1.2, t1=0.8)
u = propagator(p)
print("\nnon-unitarity at alpha=0.9 (real spectrum):")
print("U^dag U =")
print(u.conj().T @ u)
