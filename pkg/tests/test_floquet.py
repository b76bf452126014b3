"""One-period propagator, quasienergy spectra and degeneracy search."""

import numpy as np
import pytest

from bhdimer import (
    ConvergenceError,
    ModelParams,
    build_parity,
    connect_bands,
    eigh,
    exp_hermitian,
    find_degeneracies,
    floquet_operator,
    fold_quasienergy,
    hamiltonian_at,
    make_basis,
    quasienergy_spectrum,
    scan_spectrum,
)
from bhdimer.floquet import converged_substeps


def quasienergies_of(params, substeps):
    """Quasienergies straight from a fixed-substep propagator (no doubling)."""
    lam = np.linalg.eigvals(floquet_operator(params, substeps).entries)
    eps = -(params.omega / (2.0 * np.pi)) * np.angle(lam)
    return np.sort(fold_quasienergy(eps, params.omega))


def max_circular_shift(a, b, omega):
    d = np.abs(a[:, None] - b[None, :]) % omega
    d = np.minimum(d, omega - d)
    return float(np.max(np.min(d, axis=1)))


def test_fold_quasienergy_zone():
    om = 7.0
    es = np.array([-30.0, -3.51, -3.5, 0.0, 3.49, 3.5, 3.51, 40.0])
    f = fold_quasienergy(es, om)
    assert np.all(f > -om / 2.0)
    assert np.all(f <= om / 2.0)
    # folding is idempotent and periodic
    np.testing.assert_allclose(fold_quasienergy(f, om), f, atol=1e-13)
    np.testing.assert_allclose(fold_quasienergy(es + 3 * om, om), f, atol=1e-12)
    assert fold_quasienergy(om / 2.0, om) == pytest.approx(om / 2.0)
    assert fold_quasienergy(-om / 2.0, om) == pytest.approx(om / 2.0)
    assert isinstance(fold_quasienergy(1.0, om), float)


def test_floquet_operator_unitary_and_validated():
    p = ModelParams(n=10, v=1.0, g0=0.1, g1=12.0, omega=40.0)
    f = floquet_operator(p, 256)
    assert f.role == "unitary"
    d = f.dim
    dev = np.max(np.abs(f.entries.conj().T @ f.entries - np.eye(d)))
    assert dev <= 1e-10
    # site-exchange symmetry survives the product
    par = build_parity(make_basis(p.n)).entries
    assert np.max(np.abs(f.entries @ par - par @ f.entries)) <= 1e-12
    for bad in (0, 2, 33, 16.0):
        with pytest.raises(ValueError):
            floquet_operator(p, bad)


def test_static_limit_matches_hamiltonian():
    p = ModelParams(n=8, v=1.0, g0=0.3, g1=0.0, omega=11.0)
    h = hamiltonian_at(p, 0.0)
    f = floquet_operator(p, 64)
    np.testing.assert_allclose(
        f.entries, exp_hermitian(h, p.period).entries, atol=1e-12
    )
    spec = quasienergy_spectrum(p, tol=1e-9)
    expect = np.sort(fold_quasienergy(eigh(h).values, p.omega))
    assert max_circular_shift(spec.quasienergies, expect, p.omega) <= 1e-9


def test_substep_doubling_is_second_order():
    p = ModelParams(n=6, v=1.0, g0=0.0, g1=5.0, omega=10.0)
    e1 = quasienergies_of(p, 64)
    e2 = quasienergies_of(p, 128)
    e3 = quasienergies_of(p, 256)
    s12 = max_circular_shift(e2, e1, p.omega)
    s23 = max_circular_shift(e3, e2, p.omega)
    assert 3.0 <= s12 / s23 <= 5.0


def test_converged_substeps_reports_shift():
    p = ModelParams(n=6, v=1.0, g0=0.0, g1=8.0, omega=20.0)
    m, shift = converged_substeps(p, 1e-6)
    assert m >= 64 and (m & (m - 1)) == 0
    assert 0 <= shift <= 1e-6
    with pytest.raises(ValueError):
        converged_substeps(p, 0.0)


def test_spectrum_is_sorted_labeled_and_in_zone():
    p = ModelParams(n=9, v=1.0, g0=0.05, g1=10.0, omega=30.0)
    spec = quasienergy_spectrum(p, tol=1e-6)
    eps = spec.quasienergies
    assert eps.shape == (10,)
    assert np.all(np.diff(eps) >= 0)
    assert np.all(eps > -15.0) and np.all(eps <= 15.0)
    assert set(np.unique(spec.parities)) <= {-1, 1}
    # states carry definite site-exchange parity
    par = build_parity(make_basis(p.n)).entries
    dev = np.linalg.norm(
        par @ spec.states - spec.states * spec.parities[None, :], axis=0
    )
    assert np.max(dev) <= 1e-6
    # and they reproduce the propagator eigenphases
    f = floquet_operator(p, spec.substeps_used).entries
    lam = np.einsum("ij,jk,ki->i", spec.states.conj().T, f, spec.states)
    eps_back = fold_quasienergy(
        -(p.omega / (2.0 * np.pi)) * np.angle(lam), p.omega
    )
    np.testing.assert_allclose(eps_back, eps, atol=1e-9)


def test_drive_independence_for_single_particle():
    # one particle: Jz^2 is the identity/4, the drive only adds a global
    # phase with zero period average, so quasienergies cannot depend on g1
    v, g0, om = 1.0, 0.7, 13.0
    expect = np.sort(fold_quasienergy(np.array([-v / 2, v / 2]) + g0 / 4.0, om))
    for g1 in (0.0, 3.0, 17.0, 60.0):
        p = ModelParams(n=1, v=v, g0=g0, g1=g1, omega=om)
        spec = quasienergy_spectrum(p, tol=1e-9)
        assert max_circular_shift(spec.quasienergies, expect, om) <= 1e-10


def test_even_n_pinned_zero_and_symmetric_spectrum():
    p = ModelParams(n=10, v=1.0, g0=0.0, g1=0.3 * 40.0, omega=40.0)
    spec = quasienergy_spectrum(p, tol=1e-6)
    eps, par = spec.quasienergies, spec.parities
    # one negative-parity quasienergy is pinned at zero ...
    assert np.min(np.abs(eps[par < 0])) <= 1e-10
    # ... and the rest pair up as +/- mirrors
    np.testing.assert_allclose(np.sort(eps), -np.sort(-eps)[::-1], atol=1e-9)


def test_scan_spectrum_grid_validation_and_determinism():
    p = ModelParams(n=4, v=1.0, g0=0.0, g1=0.0, omega=30.0)
    grid = np.linspace(0.05, 0.25, 5)
    serial = scan_spectrum(p, grid, tol=1e-5)
    threaded = scan_spectrum(p, grid, tol=1e-5, workers=2)
    for a, b in zip(serial, threaded):
        np.testing.assert_allclose(a.quasienergies, b.quasienergies, atol=0)
        np.testing.assert_array_equal(a.parities, b.parities)
    for bad in ([], [0.2, 0.1], [-0.1, 0.2], [[0.1, 0.2]]):
        with pytest.raises(ValueError):
            scan_spectrum(p, bad, tol=1e-5)


def test_connect_bands_returns_permutations():
    p = ModelParams(n=5, v=1.0, g0=0.0, g1=0.0, omega=25.0)
    spectra = scan_spectrum(p, np.linspace(0.05, 0.5, 7), tol=1e-5)
    labels = connect_bands(spectra)
    assert labels.shape == (7, 6)
    np.testing.assert_array_equal(labels[0], np.arange(6))
    for row in labels:
        assert sorted(row.tolist()) == list(range(6))


def test_find_degeneracies_empty_away_from_crossings():
    p = ModelParams(n=10, v=1.0, g0=0.0, g1=0.0, omega=40.0)
    assert find_degeneracies(p, (0.05, 0.10), coarse_points=9) == []
    with pytest.raises(ValueError):
        find_degeneracies(p, (0.3, 0.1))
    with pytest.raises(ValueError):
        find_degeneracies(p, (-0.2, 0.1))


def test_find_degeneracies_locates_first_crossing():
    p = ModelParams(n=4, v=1.0, g0=0.0, g1=0.0, omega=40.0)
    # N = 4 point I: J0 zero on the outermost ladder link
    from bhdimer import j0_root

    r0 = j0_root(1) / 3.0
    points = find_degeneracies(p, (r0 - 0.01, r0 + 0.01), threshold=1e-5 * 40.0)
    assert len(points) == 1
    d = points[0]
    assert abs(d.g1_over_omega - r0) <= 2e-3
    assert d.pair_count == 1
    assert d.min_gap <= 1e-5 * 40.0
