"""Two-mode Bose-Hubbard dimer in the Schwinger spin representation.

N bosons on two sites map to a spin j = N/2. The basis is |j, m> with m
descending from j to -j (m = half the population imbalance), so the Hilbert
space dimension is N + 1. Everything is dimensionless with hbar = 1:

    H(t) = v*Jx + g(t)*Jz**2,   g(t) = g0 + g1*cos(omega*t)

v is the inter-site hopping, g the on-site interaction strength.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10

_ROLES = ("hermitian", "unitary", "general")


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless parameters of the driven dimer.

    n     : particle number N >= 1 (Hilbert dimension N + 1)
    v     : hopping amplitude
    g0    : static part of the interaction strength
    g1    : drive amplitude of the interaction strength
    omega : drive angular frequency, > 0
    """

    n: int
    v: float
    g0: float
    g1: float
    omega: float

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"n must be an integer >= 1, got {self.n!r}")
        for name in ("v", "g0", "g1", "omega"):
            x = getattr(self, name)
            if not math.isfinite(x):
                raise ValueError(f"{name} must be finite, got {x!r}")
        if self.omega <= 0:
            raise ValueError(f"omega must be > 0, got {self.omega!r}")

    @property
    def period(self):
        """Drive period T = 2*pi/omega."""
        return 2.0 * math.pi / self.omega

    def g(self, t):
        """Instantaneous interaction strength g(t) = g0 + g1*cos(omega*t)."""
        return self.g0 + self.g1 * np.cos(self.omega * np.asarray(t))


@dataclass(frozen=True, eq=False)
class Basis:
    """|j, m> basis, m descending from j to -j (index 0 is all-left)."""

    n: int
    j: float
    m_values: np.ndarray

    @property
    def dim(self):
        return self.n + 1


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense square operator with a declared role.

    role "hermitian" is checked to 1e-12 and "unitary" to 1e-10 in the max
    entry norm at construction time; violations raise ValueError.
    """

    entries: np.ndarray
    role: str = "general"

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"entries must be a square matrix, got shape {a.shape}")
        object.__setattr__(self, "entries", a)
        if self.role not in _ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        if self.role == "hermitian":
            dev = np.max(np.abs(a - a.conj().T))
            if not dev <= HERMITIAN_TOL:
                raise ValueError(f"matrix is not Hermitian within {HERMITIAN_TOL:g} (deviation {dev:g})")
        elif self.role == "unitary":
            dev = np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0])))
            if not dev <= UNITARY_TOL:
                raise ValueError(f"matrix is not unitary within {UNITARY_TOL:g} (deviation {dev:g})")

    @property
    def dim(self):
        return self.entries.shape[0]


def make_basis(n):
    """Spin basis for N particles: j = N/2, m = j, j-1, ..., -j."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    j = n / 2.0
    m = j - np.arange(n + 1, dtype=float)
    return Basis(n=int(n), j=j, m_values=m)


@lru_cache(maxsize=64)
def _raw_ops(n):
    """Cached raw arrays (m, jz, jplus, jx, jy, jz2, parity) for dimension n+1."""
    j = n / 2.0
    m = j - np.arange(n + 1, dtype=float)
    jz = np.diag(m).astype(complex)
    jp = np.zeros((n + 1, n + 1), dtype=complex)
    for i in range(1, n + 1):
        # <m+1| J+ |m> with m = m_values[i]; the target state sits at index i-1
        mm = m[i]
        jp[i - 1, i] = math.sqrt(j * (j + 1) - mm * (mm + 1))
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    jz2 = np.diag(m * m).astype(complex)
    par = np.fliplr(np.eye(n + 1)).astype(complex)
    return m, jz, jp, jx, jy, jz2, par


def build_jz(basis):
    """Jz, diagonal in the imbalance basis."""
    return OperatorMatrix(_raw_ops(basis.n)[1], role="hermitian")


def build_jplus(basis):
    """Raising operator J+; J- is its conjugate transpose."""
    return OperatorMatrix(_raw_ops(basis.n)[2], role="general")


def build_jx(basis):
    """Jx = (J+ + J-)/2, the hopping operator."""
    return OperatorMatrix(_raw_ops(basis.n)[3], role="hermitian")


def build_jy(basis):
    """Jy = (J+ - J-)/(2i)."""
    return OperatorMatrix(_raw_ops(basis.n)[4], role="hermitian")


def build_parity(basis):
    """Parity P: |m> -> |-m| (site exchange). Hermitian and unitary, P**2 = 1."""
    return OperatorMatrix(_raw_ops(basis.n)[6], role="hermitian")


def hamiltonian_at(params, t):
    """Instantaneous H(t) = v*Jx + g(t)*Jz**2; real symmetric tridiagonal."""
    _, _, _, jx, _, jz2, _ = _raw_ops(params.n)
    g = params.g0 + params.g1 * math.cos(params.omega * t)
    return OperatorMatrix(params.v * jx + g * jz2, role="hermitian")


def hamiltonian_stack(params, times):
    """Raw (len(times), dim, dim) stack of H(t); plumbing for propagators."""
    _, _, _, jx, _, jz2, _ = _raw_ops(params.n)
    times = np.asarray(times, dtype=float)
    g = params.g0 + params.g1 * np.cos(params.omega * times)
    return params.v * jx[None, :, :] + g[:, None, None] * jz2[None, :, :]
