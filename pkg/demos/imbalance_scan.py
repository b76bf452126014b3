"""Long-time average imbalance across the drive-ratio axis.

A coarse scan shows the background averaging to zero with sharp pillars at
the predicted ratios. A fine scan around the second pillar with a small
static interaction switched on shows the pillar widening: the static term
detunes the resonance and self-traps a neighbourhood of ratios, so the
locking region grows with g0.
"""

import numpy as np

import bhdimer as bh

N = 10
OMEGA = 40.0
TEMPLATE = bh.ModelParams(n=N, v=1.0, g0=0.0, g1=0.0, omega=OMEGA)
T_TOTAL = 5000.0  # shorter than a production run; plateaus already clean

predictions = [
    p.g1_over_omega
    for p in bh.predict_cdt_points(N, 1, v=1.0, omega=OMEGA)
    if p.g1_over_omega <= 0.6
]

coarse = np.round(np.arange(0.05, 0.601, 0.025), 10)
grid = np.unique(np.concatenate([coarse, predictions]))
result = bh.scan_imbalance(TEMPLATE, grid, t_total=T_TOTAL, workers=4)

print(f"coarse scan, t_total = {T_TOTAL:g} (N = {N}, omega = {OMEGA:g}, g0 = 0)")
for r, s in zip(result.grid, result.s_avg):
    near = any(abs(r - p) < 1e-6 for p in predictions)
    bar = "#" * int(round(40 * max(s, 0.0)))
    print(f"  r = {r:.6f}  <<S>> = {s:+.4f}  {bar}{'   <- predicted' if near else ''}")

print()
print("the analytic ratios are high-frequency limits; at finite N the exact")
print("crossing sits ~1e-4 away, so a needle this sharp reads below 1 unless")
print("the ratio is refined first (see find_degeneracies / population demo).")

print()
r2 = predictions[1]
fine = np.round(r2 + np.arange(-8, 9) * 2.5e-3, 10)
print(f"fine scan around r = {r2:.6f} with static interaction switched on")
print("        r      g0/omega=0   1/288     1/144")
columns = []
for g0_ratio in (0.0, 1.0 / 288.0, 1.0 / 144.0):
    res = bh.scan_imbalance(
        TEMPLATE, fine, t_total=T_TOTAL, g0_over_omega=g0_ratio, workers=4
    )
    columns.append(res.s_avg)
for i, r in enumerate(fine):
    print(
        f"  {r:.6f}   {columns[0][i]:+.4f}    {columns[1][i]:+.4f}   {columns[2][i]:+.4f}"
    )

print()
print("g0 = 0 gives a needle; each factor of two in g0 widens the locked band.")
