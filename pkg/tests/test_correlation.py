"""Density matrices, natural occupations, entropy and closed-form correlation."""

from types import SimpleNamespace

import numpy as np
import pytest

from h2ent.correlation import (MinimalBasisInputs, NaturalOccupations, OPDM,
                               correlation_energy, minimal_basis_corr,
                               minimal_basis_inputs, natural_occupations,
                               one_particle_density, rescale_entropy,
                               von_neumann_entropy)
from h2ent.fci import enumerate_determinants
from test_fci import annihilation_matrix, embed


def ci_state(basis, coefficients):
    return SimpleNamespace(basis=basis,
                           coefficients=np.asarray(coefficients, float))


def brute_force_opdm(basis, coefficients):
    """gamma_pq = <Psi|a+_p a_q|Psi> summed over spin, via dense operators."""
    k = basis.n_orbitals
    ann = [annihilation_matrix(i, 2 * k) for i in range(2 * k)]
    idx = [embed(det, k) for det in basis.determinants]
    x = np.zeros(1 << (2 * k))
    x[idx] = coefficients
    gamma = np.zeros((k, k))
    for p in range(k):
        for q in range(k):
            for sigma in (0, 1):
                op = ann[p + sigma * k].T @ ann[q + sigma * k]
                gamma[p, q] += x @ op @ x
    return gamma


def test_opdm_requires_symmetry():
    with pytest.raises(ValueError):
        OPDM(np.array([[1.0, 0.1], [0.0, 1.0]]))


def test_single_determinant_density():
    basis = enumerate_determinants(2, 1, 1)
    vec = np.zeros(4)
    vec[basis.index()[basis.determinants[0]]] = 1.0
    gamma = one_particle_density(ci_state(basis, vec)).gamma
    assert np.allclose(gamma, np.diag([2.0, 0.0]), atol=1e-15)


def test_two_configuration_density():
    basis = enumerate_determinants(2, 1, 1)
    index = basis.index()
    c1, c2 = np.cos(0.3), np.sin(0.3)
    vec = np.zeros(4)
    from h2ent.fci import Determinant
    vec[index[Determinant(0b01, 0b01)]] = c1
    vec[index[Determinant(0b10, 0b10)]] = c2
    gamma = one_particle_density(ci_state(basis, vec)).gamma
    assert np.allclose(gamma, np.diag([2 * c1 ** 2, 2 * c2 ** 2]), atol=1e-14)


@pytest.mark.parametrize("k,na,nb,seed", [(2, 1, 1, 1), (3, 1, 1, 2), (3, 2, 1, 3)])
def test_density_matches_fock_space_oracle(k, na, nb, seed):
    basis = enumerate_determinants(k, na, nb)
    rng = np.random.default_rng(seed)
    vec = rng.normal(size=basis.size)
    vec /= np.linalg.norm(vec)
    gamma = one_particle_density(ci_state(basis, vec)).gamma
    ref = brute_force_opdm(basis, vec)
    assert np.allclose(gamma, ref, atol=1e-12)
    assert np.trace(gamma) == pytest.approx(na + nb, abs=1e-12)


def test_natural_occupations_descending_and_bounded():
    occ = natural_occupations(OPDM(np.diag([0.3, 1.7])))
    assert np.allclose(occ.n, [1.7, 0.3])
    assert occ.total == pytest.approx(2.0)
    with pytest.raises(ValueError):
        natural_occupations(OPDM(np.diag([2.5, 0.0])))
    with pytest.raises(ValueError):
        natural_occupations(OPDM(np.diag([-0.2, 1.0])))


def test_entropy_reference_values():
    assert von_neumann_entropy(NaturalOccupations(np.array([2.0, 0.0]))) == 0.0
    assert von_neumann_entropy(NaturalOccupations(np.array([1.0, 1.0]))) \
        == pytest.approx(1.0, abs=1e-15)
    expected = -(0.95 * np.log2(0.95) + 0.05 * np.log2(0.05))
    assert von_neumann_entropy(NaturalOccupations(np.array([1.9, 0.1]))) \
        == pytest.approx(expected, abs=1e-15)


def test_correlation_energy_sign_handling():
    assert correlation_energy(-1.0, -1.1) == pytest.approx(0.1)
    assert correlation_energy(-1.0, -1.0) == 0.0
    with pytest.raises(ValueError):
        correlation_energy(-1.1, -1.0)


def test_minimal_basis_closed_form_values():
    # Delta = 0 collapses the closed form to -K12
    inp = MinimalBasisInputs(eps1=0.0, eps2=0.0, j11=1.0, j22=1.0, j12=0.5,
                             k12=0.0)
    delta, corr = minimal_basis_corr(inp)
    assert delta == 0.0 and corr == 0.0
    inp = MinimalBasisInputs(eps1=0.0, eps2=0.0, j11=0.0, j22=0.0, j12=0.0,
                             k12=0.7)
    delta, corr = minimal_basis_corr(inp)
    assert delta == pytest.approx(0.7)
    assert corr == pytest.approx(0.7 - np.sqrt(0.49 + 0.49))
    # a 3-4-5 triangle: Delta = 0.375, K12 = 0.5 gives sqrt term 0.625
    inp = MinimalBasisInputs(eps1=0.0, eps2=0.375, j11=0.0, j22=0.0, j12=0.0,
                             k12=0.5)
    delta, corr = minimal_basis_corr(inp)
    assert delta == pytest.approx(0.875)
    with pytest.raises(ValueError):
        MinimalBasisInputs(np.nan, 0, 0, 0, 0, 0)


def test_minimal_basis_inputs_from_scf(sto3g_curve):
    from h2ent.fci import mo_transform
    rec = sto3g_curve[0][0]
    h, g = mo_transform(rec.ints, rec.scf.mo_coefficients)
    inp = minimal_basis_inputs(rec.scf, h, g)
    assert inp.eps1 == rec.scf.orbital_energies[0]
    assert inp.j11 == g[0, 0, 0, 0]
    assert inp.k12 == g[0, 1, 0, 1]
    assert inp.k12 > 0.0


def test_rescale_entropy():
    s = np.array([0.1, 0.5, 1.0])
    e = np.array([0.01, 0.2, 0.36])
    scaled = rescale_entropy(s, e)
    assert scaled[-1] == pytest.approx(0.36)
    assert np.allclose(scaled, s * 0.36)
    with pytest.raises(ValueError):
        rescale_entropy([], [])
    with pytest.raises(ValueError):
        rescale_entropy([0.1, 0.0], [0.1, 0.2][:1])
    with pytest.raises(ValueError):
        rescale_entropy([0.5, 0.0], [0.1, 0.2])
