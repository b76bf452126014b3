"""High-frequency effective Hamiltonian and CDT point prediction.

Averaging the interaction-rotated Hamiltonian over one drive period leaves

    H_eff = g0*Jz**2 + (v/2) * ( J+ * J0[g1*(2*Jz + 1)/omega] + h.c. )

so each hopping matrix element is rescaled by a Bessel J0 factor that depends
on where on the imbalance ladder it sits. A coupling zero cuts the ladder;
cuts come in mirror pairs (m and 1-m) and detach blocks h_l / h_i / h_r whose
left/right spectra coincide, which is where degenerate opposite-parity
Floquet pairs - coherent destruction of tunneling - come from.
"""

from dataclasses import dataclass

import numpy as np

from .model import OperatorMatrix, make_basis, _raw_ops
from .numerics import bessel_j0, eigh, j0_root


@dataclass(frozen=True, eq=False)
class EffectiveHamiltonian:
    """Time-averaged Hamiltonian; offdiag_couplings[i] links m_values[i] and
    m_values[i] - 1 (the <m-1|H_eff|m> element), so it has dim - 1 entries."""

    params: object
    matrix: OperatorMatrix
    offdiag_couplings: np.ndarray


@dataclass(frozen=True)
class BlockDecomposition:
    """Ladder split at coupling zeros.

    cut_positions : m values whose link to m - 1 is (numerically) cut
    blocks        : list of (start, stop) index ranges into the basis
    expected_pairs: dimension of h_l (= number of degenerate opposite-parity
                    pairs the decomposition predicts), 0 when there is no cut
    """

    cut_positions: tuple
    blocks: tuple
    expected_pairs: int


@dataclass(frozen=True)
class CdtPrediction:
    """One root of the coupling-zero condition J0[g1*(N - (2i+1))/omega] = 0."""

    i: int
    root_index: int
    g1_over_omega: float
    expected_pairs: int
    validity_ratio: float


def effective_hamiltonian(params):
    """Closed-form H_eff: diagonal g0*m**2, hopping rescaled by J0 factors."""
    basis = make_basis(params.n)
    m = basis.m_values
    j = basis.j
    d = basis.dim
    mat = np.zeros((d, d), dtype=complex)
    mat[np.arange(d), np.arange(d)] = params.g0 * m * m
    # coupling between index i (imbalance m_i) and i+1 (m_i - 1)
    mi = m[:-1]
    ladder = np.sqrt(j * (j + 1) - mi * (mi - 1.0))
    couplings = 0.5 * params.v * ladder * bessel_j0(params.g1 * (2.0 * mi - 1.0) / params.omega)
    idx = np.arange(d - 1)
    mat[idx, idx + 1] = couplings
    mat[idx + 1, idx] = couplings
    return EffectiveHamiltonian(
        params=params,
        matrix=OperatorMatrix(mat, role="hermitian"),
        offdiag_couplings=couplings.astype(float),
    )


def effective_hamiltonian_oracle(params, quadrature_points=2048):
    """Brute-force H_eff: average exp(i*A*Jz^2) H0 exp(-i*A*Jz^2) over a period
    with A(t) = (g1/omega)*sin(omega*t), uniform (trapezoidal) quadrature."""
    if quadrature_points < 64:
        raise ValueError(f"quadrature_points must be >= 64, got {quadrature_points}")
    _, _, _, jx, _, jz2, _ = _raw_ops(params.n)
    m2 = np.real(np.diag(jz2))
    h0 = params.v * jx + params.g0 * jz2
    tau = np.linspace(0.0, 2.0 * np.pi, quadrature_points, endpoint=False)
    amp = (params.g1 / params.omega) * np.sin(tau)
    # conjugation by the diagonal unitary is an elementwise phase on h0
    phase = np.exp(1j * amp[:, None] * m2[None, :])
    acc = np.einsum("ki,ij,kj->ij", phase, h0, phase.conj()) / quadrature_points
    acc = (acc + acc.conj().T) / 2.0
    return OperatorMatrix(acc, role="hermitian")


def block_decompose(h_eff, cut_tol=None):
    """Split the ladder wherever |coupling| <= cut_tol (default 1e-6*v).

    No cut -> a single block and expected_pairs = 0. Cuts always arrive in
    mirror pairs (the ladder weight and |J0| argument are symmetric under
    m -> 1-m), giving blocks h_l, h_i, h_r with dim(h_l) degenerate pairs.
    """
    params = h_eff.params
    if cut_tol is None:
        cut_tol = 1e-6 * abs(params.v)
    basis = make_basis(params.n)
    m = basis.m_values
    cuts = [i for i, c in enumerate(h_eff.offdiag_couplings) if abs(c) <= cut_tol]
    cut_positions = tuple(float(m[i]) for i in cuts)
    bounds = [0] + [i + 1 for i in cuts] + [basis.dim]
    blocks = tuple((bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1))
    expected = (blocks[0][1] - blocks[0][0]) if cuts else 0
    return BlockDecomposition(cut_positions=cut_positions, blocks=blocks, expected_pairs=expected)


def block_eigenvalues(h_eff, decomposition=None):
    """Eigenvalues of each detached block, in block order; test/debug helper."""
    if decomposition is None:
        decomposition = block_decompose(h_eff)
    mat = h_eff.matrix.entries
    out = []
    for start, stop in decomposition.blocks:
        out.append(eigh(mat[start:stop, start:stop]).values)
    return out


def predict_cdt_points(n, max_root, v=1.0, omega=1.0):
    """All CDT predictions g1/omega = x_k/(N - (2i+1)) for k <= max_root.

    i runs over 0 <= i <= (N-2)//2 so the Bessel argument stays >= 1 particle.
    v and omega only enter the attached validity_ratio diagnostic.
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    if not isinstance(max_root, (int, np.integer)) or max_root < 1:
        raise ValueError(f"max_root must be an integer >= 1, got {max_root!r}")
    from .model import ModelParams

    preds = []
    for k in range(1, max_root + 1):
        xk = j0_root(k)
        for i in range((n - 2) // 2 + 1):
            r = xk / (n - (2 * i + 1))
            p = ModelParams(n=int(n), v=v, g0=0.0, g1=r * omega, omega=omega)
            preds.append(
                CdtPrediction(
                    i=i,
                    root_index=k,
                    g1_over_omega=r,
                    expected_pairs=i + 1,
                    validity_ratio=validity_ratio(p, i),
                )
            )
    preds.sort(key=lambda p: (p.g1_over_omega, p.i))
    return preds


def validity_ratio(params, i):
    """Size of the residual coupling scale against the averaging scale.

    v_tilde = v*sqrt((N-i)(i+1)) compared with max(omega, sqrt(eps*omega)),
    eps = |g1*(N - (2i+1))|; the high-frequency picture needs this << 1.
    """
    n = params.n
    if not 0 <= i < n / 2.0:
        raise ValueError(f"i must satisfy 0 <= i < N/2, got i={i}, N={n}")
    v_tilde = abs(params.v) * np.sqrt((n - i) * (i + 1.0))
    eps = abs(params.g1 * (n - (2 * i + 1)))
    return float(v_tilde / max(params.omega, np.sqrt(eps * params.omega)))
