"""Shared fixtures: dissociation curves computed once per session."""

import time
from dataclasses import dataclass

import numpy as np
import pytest

from h2ent.basis import build_ao_basis, load_basis
from h2ent.correlation import (correlation_energy, natural_occupations,
                               one_particle_density, von_neumann_entropy)
from h2ent.fci import run_fci
from h2ent.integrals import compute_all
from h2ent.molecule import h2
from h2ent.scf import run_rhf


@dataclass(frozen=True)
class PointRecord:
    r: float
    ints: object
    scf: object
    ci: object
    e_hf: float
    e_fci: float
    e_corr: float
    entropy: float
    occupations: np.ndarray


def compute_point(r, basis_name):
    basis = load_basis(basis_name)
    mol = h2(r)
    ints = compute_all(build_ao_basis(mol, basis), mol)
    scf = run_rhf(ints, mol)
    assert scf.converged, f"SCF failed at R={r} ({basis_name})"
    ci = run_fci(ints, scf, mol)
    occ = natural_occupations(one_particle_density(ci))
    return PointRecord(
        r=float(r), ints=ints, scf=scf, ci=ci, e_hf=scf.e_hf, e_fci=ci.e_fci,
        e_corr=correlation_energy(scf.e_hf, ci.e_fci),
        entropy=von_neumann_entropy(occ), occupations=occ.n)


SCAN_GRID = np.linspace(0.7, 10.0, 40)


@pytest.fixture(scope="session")
def sto3g_curve():
    """41 minimal-basis records: the 40-point grid plus R = 20 Bohr."""
    t0 = time.perf_counter()
    records = [compute_point(r, "sto-3g") for r in SCAN_GRID] \
        + [compute_point(20.0, "sto-3g")]
    elapsed = time.perf_counter() - t0
    return records, elapsed


@pytest.fixture(scope="session")
def pol_curve():
    """6-31G** records on the same 40-point grid."""
    t0 = time.perf_counter()
    records = [compute_point(r, "6-31gss") for r in SCAN_GRID]
    elapsed = time.perf_counter() - t0
    return records, elapsed
