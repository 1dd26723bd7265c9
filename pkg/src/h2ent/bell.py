"""CHSH/Bell-inequality machinery for two-spin states.

Spin observables sigma.v, the singlet and product reference states, the
factorized and symmetrized two-spin mean values, CHSH evaluation and its
maximization (spherical grid plus coordinate descent) with the standard
two-qubit closed-form criterion as oracle.
"""

from dataclasses import dataclass

import numpy as np

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

TSIRELSON = 2.0 * np.sqrt(2.0)


def unit_vector(v):
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"vector must have unit norm, |v| = {norm}")
    return v


def spin_observable(v):
    """sigma . v for a unit 3-vector v: a 2x2 Hermitian matrix with eigenvalues +-1."""
    v = unit_vector(v)
    return v[0] * SIGMA_X + v[1] * SIGMA_Y + v[2] * SIGMA_Z


@dataclass(frozen=True)
class TwoQubitState:
    rho: np.ndarray  # 4x4 density matrix

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise ValueError("density matrix must be 4x4")
        if not np.allclose(rho, rho.conj().T, atol=1e-12):
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(rho).real - 1.0) > 1e-12:
            raise ValueError("density matrix must have unit trace")
        if np.linalg.eigvalsh(rho).min() < -1e-10:
            raise ValueError("density matrix must be positive semidefinite")
        object.__setattr__(self, "rho", rho)

    def correlation_tensor(self):
        """T_ij = Tr[rho sigma_i x sigma_j]."""
        t = np.empty((3, 3))
        for i in range(3):
            for j in range(3):
                t[i, j] = np.trace(self.rho @ np.kron(PAULI[i], PAULI[j])).real
        return t


@dataclass(frozen=True)
class MeasurementSettings:
    a: np.ndarray  # first party
    d: np.ndarray  # first party
    b: np.ndarray  # second party
    c: np.ndarray  # second party

    def __post_init__(self):
        for name in "adbc":
            object.__setattr__(self, name, unit_vector(getattr(self, name)))


@dataclass(frozen=True)
class CHSHReport:
    value: float
    settings: MeasurementSettings
    violated: bool

    def __post_init__(self):
        if abs(self.value) > TSIRELSON + 1e-9:
            raise ValueError(f"CHSH value {self.value} beyond the Tsirelson bound")


def singlet():
    """(|01> - |10>)/sqrt(2) as a density matrix."""
    psi = np.zeros(4, dtype=complex)
    psi[1] = 1.0 / np.sqrt(2.0)
    psi[2] = -1.0 / np.sqrt(2.0)
    return TwoQubitState(np.outer(psi, psi.conj()))


def product_updown():
    """|up, down><up, down|: the spin content of the closed-shell determinant."""
    psi = np.zeros(4, dtype=complex)
    psi[1] = 1.0
    return TwoQubitState(np.outer(psi, psi.conj()))


def dissociation_spin_state():
    """Spin factor of the stretched two-configuration state.

    The equal superposition of both doubly-occupied configurations factorizes
    into a symmetric spatial function times the spin singlet, so the reduced
    spin state is exactly the singlet.
    """
    return singlet()


def spatial_factor_norm(overlap_gu=0.0):
    """Norm of the symmetric spatial factor (g(1)g(2) + u(1)u(2))/sqrt(2)
    for normalized orbitals with mutual overlap overlap_gu."""
    return float(np.sqrt(1.0 + overlap_gu ** 2))


def _expect(spinor, direction):
    m = spin_observable(direction)
    return float(np.real(spinor.conj() @ m @ spinor))


def _check_spinor(spinor):
    spinor = np.asarray(spinor, dtype=complex)
    if abs(np.linalg.norm(spinor) - 1.0) > 1e-12:
        raise ValueError("spinor must be normalized")
    return spinor


def mean_product(alpha_spinor, beta_spinor, a, b):
    """Factorized mean value <alpha|sigma.a|alpha><beta|sigma.b|beta>."""
    alpha_spinor = _check_spinor(alpha_spinor)
    beta_spinor = _check_spinor(beta_spinor)
    return _expect(alpha_spinor, a) * _expect(beta_spinor, b)


def mean_symmetrized(alpha_spinor, beta_spinor, a, b):
    """Symmetrized mean value over the two measurement assignments."""
    return 0.5 * (mean_product(alpha_spinor, beta_spinor, a, b)
                  + mean_product(alpha_spinor, beta_spinor, b, a))


def correlation(state, u, w):
    """E(u, w) = Tr[rho (sigma.u x sigma.w)], u on party 1, w on party 2."""
    op = np.kron(spin_observable(u), spin_observable(w))
    return float(np.trace(state.rho @ op).real)


def chsh_value(state, settings):
    """E(a,b) + E(b,d) + E(c,d) - E(a,c); a, d on party 1, b, c on party 2."""
    s = settings
    return (correlation(state, s.a, s.b) + correlation(state, s.d, s.b)
            + correlation(state, s.d, s.c) - correlation(state, s.a, s.c))


def chsh_value_abs(state, settings):
    """|E(a,b) - E(a,c)| + |E(b,d) + E(c,d)| form of the inequality."""
    s = settings
    return (abs(correlation(state, s.a, s.b) - correlation(state, s.a, s.c))
            + abs(correlation(state, s.d, s.b) + correlation(state, s.d, s.c)))


def chsh_max_closed_form(state):
    """2 sqrt(m1 + m2) with m1, m2 the two largest eigenvalues of T^T T."""
    t = state.correlation_tensor()
    m = np.sort(np.linalg.eigvalsh(t.T @ t))
    return float(2.0 * np.sqrt(m[-1] + m[-2]))


def _sph(theta, phi):
    st = np.sin(theta)
    return np.array([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])


def _objective(t, bvec, cvec):
    """max over a, d of the CHSH combination for fixed b, c:
    ||T(b - c)|| + ||T(b + c)||."""
    return np.linalg.norm(t @ (bvec - cvec)) + np.linalg.norm(t @ (bvec + cvec))


def _party1_settings(t, bvec, cvec):
    def normalized(v):
        n = np.linalg.norm(v)
        return v / n if n > 1e-14 else np.array([0.0, 0.0, 1.0])
    return normalized(t @ (bvec - cvec)), normalized(t @ (bvec + cvec))


def chsh_max_grid(state, angular_resolution=1.0):
    """Maximize CHSH over measurement settings.

    Coarse spherical mesh over the second party's pair (b, c) (the first
    party's optimal vectors are closed-form for fixed b, c), followed by
    coordinate descent on the four spherical angles down to well below the
    requested resolution (degrees).
    """
    t = state.correlation_tensor()
    coarse = max(np.radians(angular_resolution), np.radians(12.0))
    thetas = np.arange(0.0, np.pi + 1e-9, coarse)
    phis = np.arange(0.0, 2.0 * np.pi - 1e-9, coarse)
    bgrid = np.array([_sph(th, ph) for th in thetas for ph in phis])
    tb = bgrid @ t.T
    diff = tb[:, None, :] - tb[None, :, :]
    summ = tb[:, None, :] + tb[None, :, :]
    vals = np.linalg.norm(diff, axis=-1) + np.linalg.norm(summ, axis=-1)
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    angles = []
    n_ang = len(phis)
    for idx in (i, j):
        angles.extend([thetas[idx // n_ang], phis[idx % n_ang]])
    angles = np.array(angles)

    def f(ang):
        return _objective(t, _sph(ang[0], ang[1]), _sph(ang[2], ang[3]))

    best = f(angles)
    step = coarse
    for _ in range(200):
        improved = False
        for k in range(4):
            for delta in (step, -step):
                trial = angles.copy()
                trial[k] += delta
                val = f(trial)
                if val > best + 1e-15:
                    best, angles, improved = val, trial, True
        if not improved:
            step *= 0.5
            if step < 1e-8:
                break
    bvec = _sph(angles[0], angles[1])
    cvec = _sph(angles[2], angles[3])
    avec, dvec = _party1_settings(t, bvec, cvec)
    settings = MeasurementSettings(a=avec, d=dvec, b=bvec, c=cvec)
    value = chsh_value(state, settings)
    return CHSHReport(value=value, settings=settings,
                      violated=value > 2.0 + 1e-9)
