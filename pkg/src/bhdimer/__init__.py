"""Floquet analysis of a two-mode Bose-Hubbard dimer with a periodically
modulated interaction strength: quasienergy spectra, Bessel-zero CDT
predictions and population-imbalance dynamics."""

from .model import (
    Basis,
    ModelParams,
    OperatorMatrix,
    build_jplus,
    build_jx,
    build_jy,
    build_jz,
    build_parity,
    hamiltonian_at,
    make_basis,
)
from .numerics import (
    ConvergenceError,
    DEGENERACY_CLUSTER_TOL,
    EigenDecomposition,
    bessel_j0,
    eig_unitary,
    eigh,
    exp_hermitian,
    j0_root,
)
from .floquet import (
    DegeneracyPoint,
    QuasienergySpectrum,
    connect_bands,
    find_degeneracies,
    floquet_operator,
    fold_quasienergy,
    quasienergy_spectrum,
    scan_spectrum,
)
from .effective import (
    BlockDecomposition,
    CdtPrediction,
    EffectiveHamiltonian,
    block_decompose,
    block_eigenvalues,
    effective_hamiltonian,
    effective_hamiltonian_oracle,
    predict_cdt_points,
    validity_ratio,
)
from .dynamics import (
    OddEvenReport,
    ScanResult,
    Trajectory,
    evolve,
    initial_state_all_left,
    odd_even_experiment,
    scan_imbalance,
    time_average,
)

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "BlockDecomposition",
    "CdtPrediction",
    "ConvergenceError",
    "DEGENERACY_CLUSTER_TOL",
    "DegeneracyPoint",
    "EffectiveHamiltonian",
    "EigenDecomposition",
    "ModelParams",
    "OddEvenReport",
    "OperatorMatrix",
    "QuasienergySpectrum",
    "ScanResult",
    "Trajectory",
    "bessel_j0",
    "block_decompose",
    "block_eigenvalues",
    "build_jplus",
    "build_jx",
    "build_jy",
    "build_jz",
    "build_parity",
    "connect_bands",
    "effective_hamiltonian",
    "effective_hamiltonian_oracle",
    "eig_unitary",
    "eigh",
    "evolve",
    "exp_hermitian",
    "find_degeneracies",
    "floquet_operator",
    "fold_quasienergy",
    "hamiltonian_at",
    "initial_state_all_left",
    "j0_root",
    "make_basis",
    "odd_even_experiment",
    "predict_cdt_points",
    "quasienergy_spectrum",
    "scan_imbalance",
    "scan_spectrum",
    "time_average",
    "validity_ratio",
]
