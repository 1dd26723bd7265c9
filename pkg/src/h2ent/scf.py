"""Restricted Hartree-Fock via Roothaan iteration.

Closed-shell only; the restricted formalism is kept even at dissociation
(no symmetry breaking). Plain fixed-point iteration with a core-Hamiltonian
guess and 0.5 density damping that switches on only if the energy oscillates.
"""

from dataclasses import dataclass

import numpy as np

from .errors import LinearDependenceError
from .molecule import nuclear_repulsion


@dataclass(frozen=True)
class SCFSettings:
    max_iterations: int = 200
    energy_tolerance: float = 1e-10
    density_tolerance: float = 1e-8
    level_shift: float = 0.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.energy_tolerance <= 0 or self.density_tolerance <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class SCFResult:
    mo_coefficients: np.ndarray   # columns are MOs
    orbital_energies: np.ndarray  # ascending, Hartree
    e_hf: float                   # total energy incl. nuclear repulsion
    iterations: int
    converged: bool


def symmetric_orthogonalizer(s):
    """X = S^(-1/2) by eigendecomposition; X^T S X = 1."""
    vals, vecs = np.linalg.eigh(s)
    if vals.min() < 1e-10:
        raise LinearDependenceError(
            f"overlap matrix nearly singular (min eigenvalue {vals.min():.3e})")
    return vecs @ np.diag(vals ** -0.5) @ vecs.T


def density_from_coeffs(c, n_occupied_pairs):
    """Closed-shell density D = 2 C_occ C_occ^T."""
    if n_occupied_pairs > c.shape[1]:
        raise ValueError(
            f"{n_occupied_pairs} occupied pairs do not fit in {c.shape[1]} orbitals")
    occ = c[:, :n_occupied_pairs]
    return 2.0 * occ @ occ.T


def build_fock(hcore, d, eri):
    """F = Hcore + J - K/2 contracted with the AO density."""
    j = np.einsum("ls,mnsl->mn", d, eri)
    k = np.einsum("ls,mlsn->mn", d, eri)
    return hcore + j - 0.5 * k


def run_rhf(ints, mol, settings=SCFSettings(), trace_path=None):
    """Roothaan RHF. Non-convergence is reported via the converged flag."""
    if mol.n_electrons % 2 != 0:
        raise ValueError("restricted HF needs an even electron count")
    n_occ = mol.n_electrons // 2
    hcore = ints.hcore
    x = symmetric_orthogonalizer(ints.overlap)
    e_nuc = nuclear_repulsion(mol) if len(mol.atoms) > 1 else 0.0

    def diagonalize(f):
        fp = x.T @ f @ x
        eps, cp = np.linalg.eigh(fp)
        return eps, x @ cp

    eps, c = diagonalize(hcore)
    d = density_from_coeffs(c, n_occ)
    e_old = 0.0
    energies = []
    damping = False
    damping_since = None
    shift = settings.level_shift
    trace = []
    converged = False
    iterations = 0
    for it in range(1, settings.max_iterations + 1):
        iterations = it
        f = build_fock(hcore, d, ints.eri)
        e_total = 0.5 * np.sum(d * (hcore + f)) + e_nuc
        if shift:
            # shift virtual levels only; the fixed-point density is unchanged
            f = f + shift * (ints.overlap
                             - 0.5 * ints.overlap @ d @ ints.overlap)
        eps, c = diagonalize(f)
        d_new = density_from_coeffs(c, n_occ)
        delta_e = e_total - e_old
        rms_d = np.sqrt(np.mean((d_new - d) ** 2))
        trace.append(f"{it:4d} {e_total:.12f} {delta_e:+.3e} {rms_d:.3e}")
        energies.append(e_total)
        if it > 1 and abs(delta_e) < settings.energy_tolerance \
                and rms_d < settings.density_tolerance:
            converged = True
            d = d_new
            e_old = e_total
            break
        # oscillation over the last 5 iterations turns on simple damping
        if not damping and len(energies) >= 5:
            recent = np.diff(energies[-5:])
            if np.any(recent > 0) and np.any(recent < 0):
                damping = True
                damping_since = it
        # damping alone is marginal near HOMO/LUMO degeneracy; escalate to a
        # small level shift if it has not settled things
        if damping and not shift and it - damping_since >= 20:
            shift = 0.2
        d = 0.5 * (d + d_new) if damping else d_new
        e_old = e_total

    # final energy from the last density for a consistent report
    f = build_fock(hcore, d, ints.eri)
    e_total = 0.5 * np.sum(d * (hcore + f)) + e_nuc
    eps, c = diagonalize(f)
    if trace_path is not None:
        with open(trace_path, "w") as fh:
            fh.write("\n".join(trace) + "\n")
    return SCFResult(mo_coefficients=c, orbital_energies=eps,
                     e_hf=float(e_total), iterations=iterations,
                     converged=converged)
