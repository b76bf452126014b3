"""Dense Hermitian/unitary eigensolvers and Bessel J0 utilities.

Eigendecompositions are LAPACK-backed (numpy.linalg.eigh). Unitary matrices
are diagonalized through the Hermitian pair H+ = (U + U†)/2, H- = (U - U†)/2i:
eigenvectors of H+ are rotated inside each degenerate cluster to diagonalize
the restriction of H-, which separates phases with equal cosine and leaves
orthonormal vectors even at exact degeneracies. Residual degenerate
eigenphase clusters are reported so callers can resolve symmetry labels.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import optimize, special

from .model import OperatorMatrix

# phases closer than this are treated as one degenerate cluster
DEGENERACY_CLUSTER_TOL = 1e-8

_J0_ROOT_MAX = 30


class ConvergenceError(RuntimeError):
    """An iterative kernel failed to converge; carries the achieved residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass(eq=False)
class EigenDecomposition:
    """values[i] belongs to vectors[:, i]; residual = max_i ||A v_i - w_i v_i||.

    clusters lists index tuples of degenerate groups (size >= 2); filled by
    eig_unitary, empty for plain Hermitian problems.
    """

    values: np.ndarray
    vectors: np.ndarray
    residual: float
    clusters: tuple = field(default_factory=tuple)


def _as_array(a):
    return a.entries if isinstance(a, OperatorMatrix) else np.asarray(a, dtype=complex)


def eigh(a, herm_tol=1e-10):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Accepts an OperatorMatrix or a raw array; the array is checked to be
    Hermitian within herm_tol relative to its magnitude.
    """
    m = _as_array(a)
    scale = max(1.0, np.max(np.abs(m)) if m.size else 1.0)
    dev = np.max(np.abs(m - m.conj().T))
    if not dev <= herm_tol * scale:
        raise ValueError(f"matrix is not Hermitian (deviation {dev:g}, scale {scale:g})")
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"Hermitian eigensolver failed: {exc}", residual=np.inf) from exc
    residual = float(np.max(np.abs(m @ v - v * w[None, :]))) if m.size else 0.0
    if not residual <= 1e-8 * scale * m.shape[0]:
        raise ConvergenceError(
            f"Hermitian eigensolver residual {residual:g} exceeds tolerance", residual=residual
        )
    return EigenDecomposition(values=w, vectors=v, residual=residual)


def exp_hermitian(a, s=1.0):
    """Unitary exp(-i*s*A) for Hermitian A, built from the spectral form."""
    dec = eigh(a)
    phases = np.exp(-1j * s * dec.values)
    u = (dec.vectors * phases[None, :]) @ dec.vectors.conj().T
    return OperatorMatrix(u, role="unitary")


def unitary_exp_stack(h_stack, s):
    """exp(-i*s*H_k) for a stack of Hermitian matrices; raw arrays in and out."""
    w, v = np.linalg.eigh(h_stack)
    phases = np.exp(-1j * s * w)
    return np.einsum("kij,kj,klj->kil", v, phases, v.conj())


def _cluster_indices(sorted_vals, tol):
    """Group consecutive entries of an ascending array by gap < tol."""
    groups = []
    start = 0
    for i in range(1, len(sorted_vals) + 1):
        if i == len(sorted_vals) or sorted_vals[i] - sorted_vals[i - 1] >= tol:
            groups.append(tuple(range(start, i)))
            start = i
    return groups


def eig_unitary(u, cluster_tol=DEGENERACY_CLUSTER_TOL):
    """Spectral decomposition of a unitary matrix.

    Returns unit-modulus eigenvalues sorted by phase in (-pi, pi], orthonormal
    eigenvectors, the max residual ||U v - lambda v||, and the remaining
    degenerate eigenphase clusters (phase gap < cluster_tol, wrap-aware).
    """
    m = _as_array(u)
    d = m.shape[0]
    dev = np.max(np.abs(m.conj().T @ m - np.eye(d)))
    if not dev <= 1e-8:
        raise ValueError(f"matrix is not unitary (deviation {dev:g})")
    h_plus = (m + m.conj().T) / 2.0
    h_minus = (m - m.conj().T) / 2.0j
    w, v = np.linalg.eigh(h_plus)
    # split +theta from -theta (same cosine) inside each H+ cluster
    for idx in _cluster_indices(w, cluster_tol):
        if len(idx) < 2:
            continue
        sub = v[:, idx]
        block = sub.conj().T @ h_minus @ sub
        block = (block + block.conj().T) / 2.0
        _, rot = np.linalg.eigh(block)
        v[:, idx] = sub @ rot
    lam = np.einsum("ij,jk,ki->i", v.conj().T, m, v)
    lam = lam / np.abs(lam)
    phases = np.angle(lam)
    order = np.argsort(phases, kind="stable")
    lam, phases, v = lam[order], phases[order], v[:, order]
    residual = float(np.max(np.abs(m @ v - v * lam[None, :])))
    if not residual <= 1e-7:
        raise ConvergenceError(f"unitary diagonalization residual {residual:g}", residual=residual)
    clusters = [g for g in _cluster_indices(phases, cluster_tol) if len(g) >= 2]
    # the phase axis is circular: merge the groups at -pi and +pi if they touch
    if len(clusters) != 1 or len(clusters[0]) != d:
        if d >= 2 and (phases[0] + 2.0 * np.pi) - phases[-1] < cluster_tol:
            first = clusters[0] if clusters and clusters[0][0] == 0 else (0,)
            last = clusters[-1] if clusters and clusters[-1][-1] == d - 1 else (d - 1,)
            if first != last:
                if clusters and clusters[0][0] == 0:
                    clusters = clusters[1:]
                if clusters and clusters[-1][-1] == d - 1:
                    clusters = clusters[:-1]
                clusters.append(tuple(sorted(set(last + first))))
    return EigenDecomposition(values=lam, vectors=v, residual=residual, clusters=tuple(clusters))


def bessel_j0(x):
    """Ordinary Bessel function J0; scalar in, scalar out (arrays pass through)."""
    return special.j0(x)


def j0_root(k):
    """k-th positive root of J0, 1 <= k <= 30.

    Bracketing around the McMahon estimate (roots are ~pi apart) followed by
    Newton polish with J0' = -J1.
    """
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= _J0_ROOT_MAX:
        raise ValueError(f"k must be an integer in [1, {_J0_ROOT_MAX}], got {k!r}")
    beta = (k - 0.25) * np.pi
    x = optimize.brentq(special.j0, beta - 0.5, beta + 0.5, xtol=1e-13)
    for _ in range(2):
        x -= special.j0(x) / (-special.j1(x))
    return float(x)
