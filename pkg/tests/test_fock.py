import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from dualwell.fock import (EVEN, ODD, build_hamiltonian, diagonal_crossover, diagonal_energy,
                           diagonalize, energy_curves, exact_crossover, mean_field_symmetric_energy,
                           tunneling_element)
from dualwell.modes import DomainError, mode_basis


@pytest.fixture(scope="module")
def basis():
    return mode_basis(10.0)


def test_diagonal_all_in_symmetric_mode(basis):
    N = 100
    for eta in (-4.2, 0.0, 1.3):
        expected = basis.e0 + 0.5 * eta * basis.chi40 * (N - 1) / N
        assert diagonal_energy(basis, N, eta, N) == pytest.approx(expected, rel=1e-14)


def test_diagonal_noninteracting_minimum(basis):
    d = diagonal_energy(basis, 100, 0.0, np.arange(101))
    assert int(np.argmin(d)) == 100
    assert d[100] == pytest.approx(basis.e0)


def test_diagonal_domain(basis):
    with pytest.raises(DomainError):
        diagonal_energy(basis, 10, -1.0, 11)
    with pytest.raises(DomainError):
        tunneling_element(basis, 10, -1.0, 9)


def test_tunneling_two_particles(basis):
    # a0^dag^2 a1^2 |0,2> = sqrt(2*1) sqrt(1*2) |2,0> = 2 |2,0>
    eta = -3.0
    assert tunneling_element(basis, 2, eta, 0) == pytest.approx(0.5 * eta * basis.chi22 / 2 * 2.0)


def test_tunneling_vanishes_without_interaction(basis):
    assert np.all(tunneling_element(basis, 30, 0.0, np.arange(29)) == 0.0)


def test_tunneling_hermitian_pair(basis):
    # reverse element <n0, N-n0| a1^dag^2 a0^2 |n0+2, N-n0-2> from the ladder rules
    N, eta = 12, -2.0
    for n0 in range(N - 1):
        rev = np.sqrt((n0 + 2) * (n0 + 1)) * np.sqrt((N - n0 - 1) * (N - n0))
        assert tunneling_element(basis, N, eta, n0) == pytest.approx(0.5 * eta * basis.chi22 / N * rev)


@pytest.mark.parametrize("N,eta", [(2, -3.0), (3, -1.0), (4, -4.2), (5, 2.0), (6, -2.5)])
def test_hamiltonian_matches_field_expansion(basis, N, eta):
    H = build_hamiltonian(basis, N, eta).dense()
    ref = oracles.fock_hamiltonian_from_field(10.0, N, eta)
    np.testing.assert_allclose(H, ref, atol=1e-11)


def test_parity_structure(basis):
    H = build_hamiltonian(basis, 9, -3.0).dense()
    n = np.arange(10)
    mixed = (n[:, None] + n[None, :]) % 2 == 1
    assert np.all(H[mixed] == 0.0)
    np.testing.assert_array_equal(H, H.T)


@pytest.mark.parametrize("N", range(2, 11))
@pytest.mark.parametrize("eta", [-4.2, -1.0, 0.7])
def test_block_spectra_equal_dense(basis, N, eta):
    dense = np.linalg.eigvalsh(build_hamiltonian(basis, N, eta).dense())
    np.testing.assert_allclose(diagonalize(basis, N, eta).spectrum, dense, atol=1e-10)


def test_n4_against_field_oracle(basis):
    ref = np.linalg.eigvalsh(oracles.fock_hamiltonian_from_field(10.0, 4, -4.2))
    np.testing.assert_allclose(diagonalize(basis, 4, -4.2).spectrum, ref, atol=1e-10)


def test_ground_pair_at_n50(basis):
    res = diagonalize(basis, 50, -4.2)
    even, odd = res.groundPair
    assert even.parity == EVEN and odd.parity == ODD
    assert np.all(even.coeffs[1::2] == 0) and np.all(odd.coeffs[0::2] == 0)
    for s in (even, odd):
        assert np.sum(s.coeffs ** 2) == pytest.approx(1.0, abs=1e-12)
        assert s.energyPerParticle == pytest.approx(5.3391, abs=1e-3)
    assert res.gap / abs(res.ground.energyPerParticle) < 1e-6
    assert res.degenerate


def test_eigenvectors_are_eigenvectors(basis):
    H = build_hamiltonian(basis, 50, -4.2)
    for s in diagonalize(basis, 50, -4.2).groundPair:
        np.testing.assert_allclose(H.apply(s.coeffs), s.energyPerParticle * s.coeffs, atol=1e-12)
        # the package's gauge choice: largest coefficient positive
        assert s.coeffs[np.argmax(np.abs(s.coeffs))] > 0


def test_sign_flip_leaves_energy(basis):
    H = build_hamiltonian(basis, 20, -3.0)
    s = diagonalize(basis, 20, -3.0).groundPair[0]
    assert H.expectation(-s.coeffs) == H.expectation(s.coeffs)


def test_noninteracting_ground(basis):
    res = diagonalize(basis, 40, 0.0)
    even, odd = res.groundPair
    assert even.coeffs[40] == pytest.approx(1.0)
    assert even.energyPerParticle == pytest.approx(basis.e0)
    # odd sector's best is |39, 1>: one quantum of e1 - e0 above, per particle
    assert odd.energyPerParticle - even.energyPerParticle == pytest.approx((basis.e1 - basis.e0) / 40)
    assert not res.degenerate


def test_energy_curves_zero_row(basis):
    cols = energy_curves(basis, 100, [0.0])
    vals = [cols[k][0] for k in ("E_symmetric", "E_diagonal_dual", "E_exact", "E_gpe")]
    assert max(vals) - min(vals) < 1e-10
    assert vals[0] == pytest.approx(basis.e0)


def test_energy_curves_variational_ordering(basis):
    N = 100
    grid = np.arange(0.0, -6.01, -0.25)
    cols = energy_curves(basis, N, grid)
    tol = 1e-12
    assert np.all(cols["E_exact"] <= cols["E_diagonal_dual"] + tol)
    assert np.all(cols["E_diagonal_dual"] <= cols["E_symmetric"] + tol)
    assert np.all(cols["E_gpe"] <= cols["E_symmetric"] + tol)


def test_exact_below_phase_state_of_gpe_optimum(basis):
    # the phase state built on the GPE orbital is a trial state; its energy is the
    # GPE energy plus the 1/N self-pair term, so it bounds the exact ground energy
    from dualwell.gpe import minimize_energy, variational_energy
    N = 100
    for eta in np.arange(0.0, -6.01, -0.25):
        r = minimize_energy(basis, eta)
        quartic_half = variational_energy(basis, 1.0, r.u, r.v) - variational_energy(basis, 0.0, r.u, r.v)
        bound = r.energyPerParticle - eta * quartic_half / N
        assert diagonalize(basis, N, eta).ground.energyPerParticle <= bound + 1e-12


def test_gpe_close_to_exact_at_minus_4_2(basis):
    cols = energy_curves(basis, 100, [-4.2])
    assert abs(cols["E_exact"][0] - cols["E_gpe"][0]) / abs(cols["E_exact"][0]) < 0.01


def test_diagonal_crossover_matches_scan(basis):
    N = 100
    c = diagonal_crossover(basis, N)
    n0 = np.arange(N + 1)
    # grid oracle: does some n0 < N undercut n0 = N on either side of c
    above = diagonal_energy(basis, N, c + 1e-6, n0)
    below = diagonal_energy(basis, N, c - 1e-6, n0)
    assert above[:N].min() > above[N]
    assert below[:N].min() < below[N]


def test_exact_crossover_is_a_crossing(basis):
    c = exact_crossover(basis, 100)
    for eta, sign in ((c + 1e-4, 1), (c - 1e-4, -1)):
        gap = diagonalize(basis, 100, eta).ground.energyPerParticle - mean_field_symmetric_energy(basis, eta)
        assert np.sign(gap) == sign


@settings(max_examples=25, deadline=None)
@given(N=st.integers(2, 40), eta=st.floats(-6, 2))
def test_normalisation_property(N, eta):
    res = diagonalize(mode_basis(10.0), N, eta)
    for s in res.groundPair:
        assert np.sum(s.coeffs ** 2) == pytest.approx(1.0, abs=1e-12)
