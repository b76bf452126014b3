"""Time-averaged Hamiltonian, ladder cuts and CDT point prediction."""

import numpy as np
import pytest

from bhdimer import (
    ModelParams,
    block_decompose,
    block_eigenvalues,
    build_jx,
    build_jz,
    effective_hamiltonian,
    effective_hamiltonian_oracle,
    eigh,
    j0_root,
    make_basis,
    predict_cdt_points,
    validity_ratio,
)


def random_params(rng):
    n = int(rng.integers(2, 21))
    omega = float(rng.uniform(1.0, 50.0))
    return ModelParams(
        n=n,
        v=float(rng.uniform(0.2, 2.0)) * float(rng.choice([-1.0, 1.0])),
        g0=float(rng.uniform(-0.5, 0.5)),
        g1=float(rng.uniform(-3.0, 3.0)) * omega,
        omega=omega,
    )


def test_closed_form_matches_quadrature():
    rng = np.random.default_rng(23)
    for _ in range(6):
        p = random_params(rng)
        closed = effective_hamiltonian(p).matrix.entries
        averaged = effective_hamiltonian_oracle(p).entries
        assert np.max(np.abs(closed - averaged)) <= 1e-10


def test_quadrature_converges_with_points():
    # strong drive and a tall ladder: the integrand oscillates ~60 rad, so
    # 64 points is under-resolved while 2048 sits at machine precision
    p = ModelParams(n=20, v=1.0, g0=0.2, g1=45.0, omega=15.0)
    closed = effective_hamiltonian(p).matrix.entries
    coarse = np.max(np.abs(closed - effective_hamiltonian_oracle(p, 64).entries))
    fine = np.max(np.abs(closed - effective_hamiltonian_oracle(p, 2048).entries))
    assert coarse > 1e-6
    assert fine <= 1e-10
    with pytest.raises(ValueError):
        effective_hamiltonian_oracle(p, 32)


def test_zero_drive_reduces_to_static_hamiltonian():
    p = ModelParams(n=9, v=1.3, g0=0.4, g1=0.0, omega=7.0)
    basis = make_basis(p.n)
    jx = build_jx(basis).entries
    jz = build_jz(basis).entries
    h = effective_hamiltonian(p)
    np.testing.assert_allclose(h.matrix.entries, p.v * jx + p.g0 * (jz @ jz), atol=1e-14)
    assert np.all(np.abs(h.offdiag_couplings) > 0)


def test_coupling_mirror_symmetry():
    rng = np.random.default_rng(29)
    for _ in range(5):
        p = random_params(rng)
        c = effective_hamiltonian(p).offdiag_couplings
        np.testing.assert_allclose(np.abs(c), np.abs(c[::-1]), atol=1e-13)


def test_block_decompose_no_cut():
    p = ModelParams(n=6, v=1.0, g0=0.0, g1=0.1, omega=40.0)
    dec = block_decompose(effective_hamiltonian(p))
    assert dec.cut_positions == ()
    assert dec.blocks == ((0, 7),)
    assert dec.expected_pairs == 0


@pytest.mark.parametrize("i", [0, 1, 2])
def test_block_decompose_at_cdt_points(i):
    n, omega = 10, 40.0
    r = j0_root(1) / (n - (2 * i + 1))
    p = ModelParams(n=n, v=1.0, g0=0.0, g1=r * omega, omega=omega)
    h = effective_hamiltonian(p)
    dec = block_decompose(h)
    # cuts arrive as the mirror pair m = j - i and m = -(j - i) + 1
    m_cut = n / 2.0 - i
    assert dec.cut_positions == (m_cut, 1.0 - m_cut)
    sizes = [stop - start for start, stop in dec.blocks]
    assert sizes == [i + 1, n - 1 - 2 * i, i + 1]
    assert dec.expected_pairs == i + 1
    # detached edge blocks are mirror images: identical spectra
    left, middle, right = block_eigenvalues(h, dec)
    np.testing.assert_allclose(left, right, atol=1e-12)
    assert middle.size == n - 1 - 2 * i


def test_even_n_zero_mode_of_effective_hamiltonian():
    for n in (4, 6, 10, 14, 20):
        for r in (0.13, 0.3, 0.52):
            p = ModelParams(n=n, v=1.0, g0=0.0, g1=r * 40.0, omega=40.0)
            vals = eigh(effective_hamiltonian(p).matrix).values
            assert np.min(np.abs(vals)) <= 1e-12


def test_predict_cdt_points_first_root_values():
    preds = [p for p in predict_cdt_points(10, 1) if p.root_index == 1]
    assert [p.i for p in preds] == [0, 1, 2, 3, 4]
    x1 = j0_root(1)
    for p in preds:
        denom = 10 - (2 * p.i + 1)
        assert p.g1_over_omega == pytest.approx(x1 / denom, rel=1e-14)
        assert p.expected_pairs == p.i + 1


def test_predict_cdt_points_sorted_and_validated():
    preds = predict_cdt_points(8, 3, v=0.7, omega=25.0)
    rs = [p.g1_over_omega for p in preds]
    assert rs == sorted(rs)
    assert {p.root_index for p in preds} == {1, 2, 3}
    assert all(p.validity_ratio > 0 for p in preds)
    with pytest.raises(ValueError):
        predict_cdt_points(1, 1)
    with pytest.raises(ValueError):
        predict_cdt_points(10, 0)


def test_validity_ratio_formula_and_range():
    p = ModelParams(n=10, v=1.0, g0=0.0, g1=0.3 * 40.0, omega=40.0)
    i = 1
    v_tilde = np.sqrt((10 - i) * (i + 1))
    eps = abs(p.g1 * (10 - (2 * i + 1)))
    expect = v_tilde / max(p.omega, np.sqrt(eps * p.omega))
    assert validity_ratio(p, i) == pytest.approx(expect, rel=1e-14)
    # the high-frequency picture is comfortably valid at omega = 40
    for k in range(3):
        assert validity_ratio(p, k) < 0.25
    with pytest.raises(ValueError):
        validity_ratio(p, 5)
    with pytest.raises(ValueError):
        validity_ratio(p, -1)
