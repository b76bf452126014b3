"""Where does tunneling switch off?

The modulated interaction rescales each hopping link of the imbalance ladder
by J0[g1*(2m-1)/omega]. Whenever that Bessel factor vanishes on the link
carrying the initial state, the ladder is cut and the population is stuck:
coherent destruction of tunneling, at drive ratios

    g1/omega = x_k / (N - (2i+1)),   J0(x_k) = 0.

This prints the full prediction table for N = 10 and flags the rows whose
high-frequency validity ratio is small enough to trust at omega = 40.
"""

import bhdimer as bh

N = 10
OMEGA = 40.0

preds = bh.predict_cdt_points(N, max_root=2, v=1.0, omega=OMEGA)

print(f"CDT drive ratios for N = {N}, v = 1, omega = {OMEGA}")
print(f"{'i':>3} {'root':>5} {'g1/omega':>12} {'pairs':>6} {'validity':>10}")
for p in preds:
    marker = "  <- well inside the high-frequency regime" if p.validity_ratio < 0.15 else ""
    print(
        f"{p.i:>3} {p.root_index:>5} {p.g1_over_omega:>12.6f} "
        f"{p.expected_pairs:>6} {p.validity_ratio:>10.4f}{marker}"
    )

print()
print("The i-th point detaches the top i+1 rungs of the ladder, so a state")
print("with all particles on one site can only explore those i+1 levels:")
for p in preds[:3]:
    h = bh.effective_hamiltonian(
        bh.ModelParams(n=N, v=1.0, g0=0.0, g1=p.g1_over_omega * OMEGA, omega=OMEGA)
    )
    dec = bh.block_decompose(h)
    sizes = [stop - start for start, stop in dec.blocks]
    print(
        f"  g1/omega = {p.g1_over_omega:.6f}: ladder cut at m = "
        f"{dec.cut_positions}, block sizes {sizes}, "
        f"{dec.expected_pairs} degenerate pair(s) expected"
    )
