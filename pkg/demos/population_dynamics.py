"""Partial destruction of tunneling, point by point.

All N particles start on the left site (S = +1). At the first magic drive
ratio the population never leaves; at the second, exactly one particle
tunnels and S bottoms out near 0.8; at the third, two particles tunnel
(min S near 0.6). A ratio just a few percent off lets everything through.
"""

import numpy as np

import bhdimer as bh

N = 10
OMEGA = 40.0
TEMPLATE = bh.ModelParams(n=N, v=1.0, g0=0.0, g1=0.0, omega=OMEGA)

psi0 = bh.initial_state_all_left(bh.make_basis(N))

cases = []
for pred in bh.predict_cdt_points(N, 1, v=1.0, omega=OMEGA)[:3]:
    d = bh.find_degeneracies(
        TEMPLATE,
        (pred.g1_over_omega - 0.004, pred.g1_over_omega + 0.004),
        threshold=1e-5 * OMEGA,
    )[0]
    cases.append((f"point {'I' * (pred.i + 1)}", d.g1_over_omega))
cases.append(("off-point", 0.2625))

for label, r in cases:
    params = bh.ModelParams(n=N, v=1.0, g0=0.0, g1=r * OMEGA, omega=OMEGA)
    traj = bh.evolve(psi0, params, t_max=500.0)
    checkpoints = np.searchsorted(traj.times, [0.0, 100.0, 250.0, 500.0])
    samples = "  ".join(
        f"S({traj.times[min(i, traj.times.size - 1)]:.0f}) = "
        f"{traj.s_values[min(i, traj.times.size - 1)]:+.3f}"
        for i in checkpoints
    )
    print(
        f"{label:<10} g1/omega = {r:.6f}: min S = {traj.s_values.min():+.4f}   {samples}"
    )

print()
print("the number of particles allowed through is set by which ladder rung")
print("the Bessel factor cuts: none, one, then two from the initial edge.")
