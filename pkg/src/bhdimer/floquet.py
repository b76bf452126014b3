"""Floquet operator, quasienergy spectra and degeneracy location.

The one-period propagator is a time-ordered product of midpoint
piecewise-constant exponentials,

    F = prod_{k = M-1 .. 0} exp(-i * H(t_k + dt/2) * dt),  dt = T/M,

starting at t = 0. Quasienergies are eps = -(omega/2pi) * arg(lambda) folded
into (-omega/2, omega/2]. The substep count M is doubled from 32 until the
quasienergies stop moving; convergence is second order in dt. Parity labels
come from re-diagonalizing P inside degenerate quasienergy clusters, which is
what makes opposite-parity level crossings (CDT points) countable.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import model
from .model import OperatorMatrix
from .numerics import ConvergenceError, DEGENERACY_CLUSTER_TOL, eig_unitary, unitary_exp_stack

SUBSTEP_START = 32
SUBSTEP_CAP = 2 ** 16
_CHUNK = 4096


@dataclass(eq=False)
class QuasienergySpectrum:
    """Quasienergies (ascending), parity labels (+1/-1), Floquet states as
    columns, the substep count that converged and the last refinement shift."""

    params: object
    quasienergies: np.ndarray
    parities: np.ndarray
    states: np.ndarray
    substeps_used: int
    convergence_estimate: float


@dataclass(frozen=True)
class DegeneracyPoint:
    """Refined opposite-parity degeneracy: pair_count disjoint (+,-) pairs are
    closer than the threshold at g1_over_omega; involved_parities lists the
    parity content of each degenerate cluster."""

    g1_over_omega: float
    pair_count: int
    min_gap: float
    involved_parities: tuple


def _check_substeps(substeps):
    if not isinstance(substeps, (int, np.integer)) or substeps < 4 or substeps % 2 != 0:
        raise ValueError(f"substeps must be an even integer >= 4, got {substeps!r}")


def _ordered_product(u):
    """u[M-1] @ ... @ u[0] by pairwise reduction (keeps the ordering)."""
    m = u.shape[0]
    while m > 1:
        half = m // 2
        paired = np.matmul(u[1 : 2 * half : 2], u[0 : 2 * half : 2])
        u = np.concatenate([paired, u[2 * half :]], axis=0) if m % 2 else paired
        m = u.shape[0]
    return u[0]


def _propagator_sweep(params, substeps, capture=()):
    """Ordered product of the substep exponentials, chunked to bound memory.

    capture: iterable of substep boundaries j; returns (F, {j: U(0 -> j*dt)}).
    """
    dt = params.period / substeps
    d = params.n + 1
    wanted = sorted(set(int(j) for j in capture))
    captured = {}
    if wanted and wanted[0] == 0:
        captured[0] = np.eye(d, dtype=complex)
        wanted = wanted[1:]
    running = np.eye(d, dtype=complex)
    done = 0
    while done < substeps:
        count = min(_CHUNK, substeps - done)
        mids = (done + np.arange(count) + 0.5) * dt
        h = model.hamiltonian_stack(params, mids)
        u = unitary_exp_stack(h, dt)
        if wanted and wanted[0] <= done + count:
            for k in range(count):
                running = u[k] @ running
                while wanted and wanted[0] == done + k + 1:
                    captured[wanted.pop(0)] = running
        else:
            running = _ordered_product(u) @ running
        done += count
    # [H(t), P] = 0 at every instant, so every partial product commutes with P
    # exactly; long products accumulate parity-odd roundoff (~M*eps), which
    # would contaminate parity labels at near-degeneracies. Project it out.
    # The product also drifts off the unitary manifold by ~M*eps, which a
    # strobed run compounds over ~1e5 periods; snap back to the nearest
    # unitary (polar factor). Both corrections commute with P.
    par = model._raw_ops(params.n)[6]

    def clean(a):
        a = (a + par @ a @ par) / 2.0
        w, _, vh = np.linalg.svd(a)
        return w @ vh

    return clean(running), {j: clean(m) for j, m in captured.items()}


def floquet_operator(params, substeps):
    """One-period time-ordered propagator at a fixed substep count."""
    _check_substeps(substeps)
    f, _ = _propagator_sweep(params, substeps)
    return OperatorMatrix(f, role="unitary")


def fold_quasienergy(e, omega):
    """Fold energies into the first Brillouin zone (-omega/2, omega/2]."""
    e = np.asarray(e, dtype=float)
    f = e - omega * np.floor(e / omega + 0.5)
    f = np.where(f <= -0.5 * omega, f + omega, f)
    return f if f.ndim else float(f)


def _circular_gap(a, b, omega):
    d = np.abs(a - b) % omega
    return np.minimum(d, omega - d)


def _eigenphases(params, f):
    """Quasienergies of a propagator (general eigensolver, ladders only)."""
    lam = np.linalg.eigvals(f)
    eps = -(params.omega / (2.0 * np.pi)) * np.angle(lam)
    return np.sort(fold_quasienergy(eps, params.omega))


def _shift_between(prev, cur, omega):
    """Max circular distance from each current quasienergy to the previous set."""
    d = _circular_gap(cur[:, None], prev[None, :], omega)
    return float(np.max(np.min(d, axis=1)))


def _converged_propagator(params, tol):
    """Substep-doubling ladder; returns (F, substeps, last_shift)."""
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol!r}")
    m = SUBSTEP_START
    f, _ = _propagator_sweep(params, m)
    prev = _eigenphases(params, f)
    shift = math.inf
    while m < SUBSTEP_CAP:
        m *= 2
        f, _ = _propagator_sweep(params, m)
        cur = _eigenphases(params, f)
        shift = _shift_between(prev, cur, params.omega)
        if shift <= tol:
            return f, m, shift
        prev = cur
    raise ConvergenceError(
        f"quasienergies did not converge to {tol:g} at the substep cap {SUBSTEP_CAP}"
        f" (last shift {shift:g})",
        residual=shift,
    )


def converged_substeps(params, tol):
    """Double the substep count from 32 until the quasienergy shift <= tol.

    Returns (substeps, last_shift). Raises ConvergenceError at the 2^16 cap.
    """
    _, m, shift = _converged_propagator(params, tol)
    return m, shift


def _spectrum_from(params, f, parity_tol=1e-6):
    """Quasienergies, parities and states from a one-period propagator."""
    dec = eig_unitary(f)
    vec = dec.vectors
    par_op = model._raw_ops(params.n)[6]
    # inside a degenerate cluster the eigenbasis mixes parity sectors; rotate it
    for idx in dec.clusters:
        idx = list(idx)
        sub = vec[:, idx]
        block = sub.conj().T @ par_op @ sub
        block = (block + block.conj().T) / 2.0
        _, rot = np.linalg.eigh(block)
        vec[:, idx] = sub @ rot
    lam = np.einsum("ij,jk,ki->i", vec.conj().T, f, vec)
    lam /= np.abs(lam)
    eps = fold_quasienergy(-(params.omega / (2.0 * np.pi)) * np.angle(lam), params.omega)
    par_diag = np.real(np.einsum("ij,jk,ki->i", vec.conj().T, par_op, vec))
    parities = np.where(par_diag >= 0.0, 1, -1).astype(int)
    mismatch = np.max(np.linalg.norm(par_op @ vec - vec * parities[None, :].astype(float), axis=0))
    if not mismatch <= parity_tol:
        raise ConvergenceError(f"parity resolution failed (mismatch {mismatch:g})", residual=mismatch)
    order = np.argsort(eps, kind="stable")
    return eps[order], parities[order], vec[:, order]


def quasienergy_spectrum(params, tol=1e-6):
    """Converged quasienergy spectrum with parity labels.

    Substeps double from 32 until the max quasienergy shift between successive
    refinements is <= tol; the 2^16 cap raises ConvergenceError.
    """
    f, m, shift = _converged_propagator(params, tol)
    eps, parities, states = _spectrum_from(params, f)
    return QuasienergySpectrum(
        params=params,
        quasienergies=eps,
        parities=parities,
        states=states,
        substeps_used=m,
        convergence_estimate=shift,
    )


def _with_g1_over_omega(params_template, r):
    import dataclasses

    return dataclasses.replace(params_template, g1=r * params_template.omega)


def scan_spectrum(params_template, g1_over_omega_grid, tol=1e-6, workers=1):
    """Spectra over a strictly increasing, nonnegative g1/omega grid.

    Per-point convergence failures are re-raised with the grid index attached.
    Grid points are independent; workers > 1 evaluates them in a thread pool
    (results are assembled in grid order either way).
    """
    grid = np.asarray(g1_over_omega_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a nonempty 1-d array")
    if np.any(grid < 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing and nonnegative")

    def one(i):
        try:
            return quasienergy_spectrum(_with_g1_over_omega(params_template, grid[i]), tol=tol)
        except ConvergenceError as exc:
            err = ConvergenceError(
                f"grid point {i} (g1/omega = {grid[i]:.12g}): {exc}", residual=exc.residual
            )
            err.grid_index = i
            raise err from exc

    if workers and workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, range(grid.size)))
    return [one(i) for i in range(grid.size)]


def connect_bands(spectra):
    """Band indices tracked through a scan by maximal eigenvector overlap.

    Returns an (n_points, dim) int array; row 0 is 0..dim-1 (ascending
    quasienergy) and subsequent rows carry each band's label along the grid.
    Ties are broken toward the closest quasienergy, so output is deterministic.
    """
    from scipy.optimize import linear_sum_assignment

    n_pts = len(spectra)
    d = spectra[0].states.shape[0]
    labels = np.zeros((n_pts, d), dtype=int)
    labels[0] = np.arange(d)
    for p in range(1, n_pts):
        prev, cur = spectra[p - 1], spectra[p]
        overlap = np.abs(prev.states.conj().T @ cur.states) ** 2
        tie = np.abs(prev.quasienergies[:, None] - cur.quasienergies[None, :])
        row, col = linear_sum_assignment(-overlap + 1e-9 * tie)
        for i, j in zip(row, col):
            labels[p, j] = labels[p - 1, i]
    return labels


def _min_opposite_gap(eps, parities, omega):
    plus = eps[parities > 0]
    minus = eps[parities < 0]
    if plus.size == 0 or minus.size == 0:
        return math.inf
    return float(np.min(_circular_gap(plus[:, None], minus[None, :], omega)))


def _gap_clusters(eps, parities, omega, threshold):
    """Chain sorted quasienergies into clusters with circular gap <= threshold."""
    order = np.argsort(eps)
    se, sp = eps[order], parities[order]
    groups = []
    start = 0
    n = len(se)
    for i in range(1, n + 1):
        if i == n or se[i] - se[i - 1] > threshold:
            groups.append(list(range(start, i)))
            start = i
    if len(groups) > 1 and (se[0] + omega) - se[-1] <= threshold:
        last = groups.pop()
        groups[0] = last + groups[0]
    return [(se[g], sp[g], [int(order[k]) for k in g]) for g in groups]


def _golden_minimize(fun, lo, hi, width):
    """Golden-section minimum of a scalar function, final interval <= width."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    while (b - a) > width:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    return (a + b) / 2.0


def find_degeneracies(
    params_template,
    bracket,
    threshold=None,
    spectrum_tol=None,
    coarse_points=25,
    refine_width=1e-6,
):
    """Locate opposite-parity quasienergy degeneracies in a g1/omega bracket.

    Scans the bracket, golden-section refines every interior local minimum of
    the minimal opposite-parity gap to refine_width, and keeps minima whose
    gap is <= threshold (default 1e-6*omega). An empty list is a valid result.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (0.0 <= lo < hi):
        raise ValueError(f"bracket must satisfy 0 <= lo < hi, got {bracket!r}")
    omega = params_template.omega
    if threshold is None:
        threshold = 1e-6 * omega
    if spectrum_tol is None:
        spectrum_tol = threshold / 10.0

    cache = {}

    def spectrum(r):
        if r not in cache:
            cache[r] = quasienergy_spectrum(_with_g1_over_omega(params_template, r), tol=spectrum_tol)
        return cache[r]

    def gap(r):
        s = spectrum(r)
        return _min_opposite_gap(s.quasienergies, s.parities, omega)

    rs = np.linspace(lo, hi, coarse_points)
    gaps = np.array([gap(r) for r in rs])
    points = []
    for i in range(1, coarse_points - 1):
        if gaps[i] <= gaps[i - 1] and gaps[i] <= gaps[i + 1]:
            if gaps[i] >= gaps[i - 1] and gaps[i] >= gaps[i + 1]:
                continue  # flat plateau, no actual dip
            r_star = _golden_minimize(gap, rs[i - 1], rs[i + 1], refine_width)
            s = spectrum(r_star)
            min_gap = _min_opposite_gap(s.quasienergies, s.parities, omega)
            if min_gap > threshold:
                continue
            clusters = [
                c for c in _gap_clusters(s.quasienergies, s.parities, omega, threshold)
                if len(c[2]) >= 2
            ]
            pair_count = sum(
                min(int(np.sum(par > 0)), int(np.sum(par < 0))) for _, par, _ in clusters
            )
            if pair_count < 1:
                continue
            points.append(
                DegeneracyPoint(
                    g1_over_omega=float(r_star),
                    pair_count=pair_count,
                    min_gap=min_gap,
                    involved_parities=tuple(tuple(int(p) for p in par) for _, par, _ in clusters),
                )
            )
    # adjacent coarse minima can refine to the same crossing; keep one of each
    points.sort(key=lambda p: p.g1_over_omega)
    unique = []
    for p in points:
        if unique and abs(p.g1_over_omega - unique[-1].g1_over_omega) < 10 * refine_width:
            if p.min_gap < unique[-1].min_gap:
                unique[-1] = p
            continue
        unique.append(p)
    return unique
