"""Electron-correlation measures derived from the CI ground state.

The spin-summed one-particle density matrix, its natural occupations in
[0, 2], the occupation-number von Neumann entropy in bits, the correlation
energy E_HF - E_FCI, the two-orbital closed form for the minimal basis, and
the curve rescaling that anchors the entropy to the correlation energy at the
largest scanned distance.
"""

from dataclasses import dataclass

import numpy as np

from .fci import Determinant, _single_sign


@dataclass(frozen=True)
class OPDM:
    gamma: np.ndarray  # K x K, spin-summed, MO basis

    def __post_init__(self):
        g = self.gamma
        if not np.allclose(g, g.T, atol=1e-12):
            raise ValueError("density matrix must be symmetric")


@dataclass(frozen=True)
class NaturalOccupations:
    n: np.ndarray  # descending, each in [0, 2]

    @property
    def total(self):
        return float(np.sum(self.n))


@dataclass(frozen=True)
class CorrelationReport:
    e_hf: float
    e_fci: float
    e_corr: float
    entropy: float               # bits
    occupations: NaturalOccupations
    rescaled_entropy: float = None  # Hartree, set by curve rescaling


@dataclass(frozen=True)
class MinimalBasisInputs:
    eps1: float
    eps2: float
    j11: float
    j22: float
    j12: float
    k12: float

    def __post_init__(self):
        vals = (self.eps1, self.eps2, self.j11, self.j22, self.j12, self.k12)
        if not all(np.isfinite(vals)):
            raise ValueError("minimal-basis inputs must be finite")


def one_particle_density(ci):
    """Spin-summed gamma_pq = <Psi|a+_p a_q|Psi> from the CI vector."""
    basis = ci.basis
    coef = ci.coefficients
    k = basis.n_orbitals
    index = basis.index()
    gamma = np.zeros((k, k))
    for i, det in enumerate(basis.determinants):
        ci2 = coef[i] ** 2
        for spin, mask in (("a", det.alpha), ("b", det.beta)):
            occ = det.occupied(spin)
            for p in occ:
                gamma[p, p] += ci2
            for p in occ:
                for q in range(k):
                    if mask & (1 << q):
                        continue
                    new_mask = (mask ^ (1 << p)) | (1 << q)
                    other = Determinant(new_mask, det.beta) if spin == "a" \
                        else Determinant(det.alpha, new_mask)
                    j = index.get(other)
                    if j is None:
                        continue
                    gamma[q, p] += _single_sign(mask, p, q) * coef[j] * coef[i]
    return OPDM(0.5 * (gamma + gamma.T))


def natural_occupations(opdm):
    """Descending eigenvalues of the spin-summed density matrix."""
    vals = np.linalg.eigvalsh(opdm.gamma)[::-1]
    if vals.min() < -1e-8 or vals.max() > 2.0 + 1e-8:
        raise ValueError(f"occupations outside [0, 2]: {vals}")
    return NaturalOccupations(np.clip(vals, 0.0, 2.0))


def von_neumann_entropy(occ):
    """S = -sum_k (n_k/2) log2(n_k/2) in bits, with 0 log 0 = 0."""
    x = occ.n / 2.0
    x = x[x > 0.0]
    return float(-np.sum(x * np.log2(x)))


def correlation_energy(e_hf, e_fci):
    """E_corr = E_HF - E_FCI (non-negative by the variational principle)."""
    diff = e_hf - e_fci
    if diff < -1e-9:
        raise ValueError(
            f"E_FCI above E_HF by {-diff:.3e} Hartree; variational violation")
    return diff


def minimal_basis_corr(inputs):
    """Two-orbital closed form: returns (Delta, E_corr_closed).

    E_corr_closed = Delta - sqrt(Delta^2 + K12^2) is non-positive; it is the
    negative of the E_HF - E_FCI convention and is returned unmodified.
    """
    delta = 0.5 * (2.0 * (inputs.eps2 - inputs.eps1)
                   + inputs.j11 + inputs.j22 - 4.0 * inputs.j12 + 2.0 * inputs.k12)
    return delta, delta - np.sqrt(delta ** 2 + inputs.k12 ** 2)


def minimal_basis_inputs(scf_result, h_mo, g_mo):
    """Assemble the two-orbital closed-form inputs from MO quantities."""
    eps = scf_result.orbital_energies
    return MinimalBasisInputs(
        eps1=float(eps[0]), eps2=float(eps[1]),
        j11=float(g_mo[0, 0, 0, 0]), j22=float(g_mo[1, 1, 1, 1]),
        j12=float(g_mo[0, 0, 1, 1]), k12=float(g_mo[0, 1, 0, 1]))


def rescale_entropy(entropies, correlations):
    """Scale the entropy curve so its last point equals the last E_corr.

    Both sequences must be ordered in ascending R; the last point stands in
    for the dissociation limit.
    """
    entropies = np.asarray(entropies, float)
    correlations = np.asarray(correlations, float)
    if len(entropies) != len(correlations) or len(entropies) == 0:
        raise ValueError("curves must be non-empty and equally long")
    if entropies[-1] <= 0.0:
        raise ValueError("entropy at the reference point must be positive")
    return entropies * (correlations[-1] / entropies[-1])
