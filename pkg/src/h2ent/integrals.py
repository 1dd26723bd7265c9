"""Analytic one- and two-electron integrals over contracted Cartesian Gaussians.

McMurchie-Davidson Hermite expansion with a Boys-function kernel shared by the
nuclear-attraction and electron-repulsion integrals. Everything is in Hartree
atomic units.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import erf, gamma, gammainc

from .basis import BasisFunction

_BOYS_SWITCH = 25.0


def boys_table(mmax, x):
    """Boys functions F_0..F_mmax evaluated at x (array ok), shape (mmax+1, ...)."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.empty((mmax + 1,) + x.shape)
    small = x < _BOYS_SWITCH
    if np.any(small):
        xs = x[small]
        expx = np.exp(-xs)
        # lower incomplete gamma at the highest order, then downward recursion;
        # the two leading Taylor terms take over where x**a would underflow
        a = mmax + 0.5
        with np.errstate(divide="ignore", invalid="ignore"):
            fm = gammainc(a, xs) * gamma(a) / (2.0 * xs ** a)
        tiny = xs < 1e-13
        if np.any(tiny):
            fm[tiny] = 1.0 / (2 * mmax + 1) - xs[tiny] / (2 * mmax + 3)
        col = np.empty((mmax + 1,) + xs.shape)
        col[mmax] = fm
        for m in range(mmax, 0, -1):
            col[m - 1] = (2.0 * xs * col[m] + expx) / (2 * m - 1)
        out[:, small] = col
    if np.any(~small):
        xl = x[~small]
        expx = np.exp(-xl)
        col = np.empty((mmax + 1,) + xl.shape)
        col[0] = 0.5 * np.sqrt(np.pi / xl) * erf(np.sqrt(xl))
        for m in range(mmax):
            col[m + 1] = ((2 * m + 1) * col[m] - expx) / (2.0 * xl)
        out[:, ~small] = col
    return out[:, 0] if scalar else out


def boys(m, x):
    """Boys function F_m(x) = integral of t^(2m) exp(-x t^2) over [0, 1]."""
    if m < 0 or int(m) != m:
        raise ValueError(f"order must be a non-negative integer, got {m}")
    if x < 0:
        raise ValueError(f"argument must be non-negative, got {x}")
    return float(boys_table(int(m), float(x))[int(m)])


def hermite_expansion(i, j, t, q_x, a, b):
    """Hermite expansion coefficient E_t^{ij} for a 1-D Gaussian product.

    q_x is the center separation A_x - B_x; a, b are exponents (scalars or
    aligned arrays).
    """
    p = a + b
    mu = a * b / p
    if t < 0 or t > i + j:
        return np.zeros(np.broadcast(a, b).shape) if np.ndim(a) or np.ndim(b) else 0.0
    if i == j == t == 0:
        return np.exp(-mu * q_x * q_x) * np.ones_like(p)
    if j == 0:
        return (hermite_expansion(i - 1, j, t - 1, q_x, a, b) / (2.0 * p)
                - (mu * q_x / a) * hermite_expansion(i - 1, j, t, q_x, a, b)
                + (t + 1) * hermite_expansion(i - 1, j, t + 1, q_x, a, b))
    return (hermite_expansion(i, j - 1, t - 1, q_x, a, b) / (2.0 * p)
            + (mu * q_x / b) * hermite_expansion(i, j - 1, t, q_x, a, b)
            + (t + 1) * hermite_expansion(i, j - 1, t + 1, q_x, a, b))


def _hermite_coulomb_all(lmax, alpha, xpq, ypq, zpq, fn):
    """All Hermite Coulomb integrals R_{tuv} with t+u+v <= lmax (vectorized).

    Dynamic programming over the total Hermite order: level L holds every
    R^n_{tuv} with t+u+v = L that the next level still needs.
    """
    level = {(n, 0, 0, 0): (-2.0 * alpha) ** n * fn[n] for n in range(lmax + 1)}
    out = {(0, 0, 0): level[(0, 0, 0, 0)]}
    for length in range(1, lmax + 1):
        nxt = {}
        for t in range(length + 1):
            for u in range(length + 1 - t):
                v = length - t - u
                for n in range(lmax + 1 - length):
                    if t > 0:
                        val = xpq * level[(n + 1, t - 1, u, v)]
                        if t > 1:
                            val = val + (t - 1) * level[(n + 1, t - 2, u, v)]
                    elif u > 0:
                        val = ypq * level[(n + 1, t, u - 1, v)]
                        if u > 1:
                            val = val + (u - 1) * level[(n + 1, t, u - 2, v)]
                    else:
                        val = zpq * level[(n + 1, t, u, v - 1)]
                        if v > 1:
                            val = val + (v - 1) * level[(n + 1, t, u, v - 2)]
                    nxt[(n, t, u, v)] = val
                    if n == 0:
                        out[(t, u, v)] = val
        level.update(nxt)
    return out


class _PairTable:
    """Hermite expansion of the charge distribution of one function pair.

    Arrays run over all primitive pairs of the contracted pair; lam maps the
    nonzero Hermite indices (t, u, v) to per-pair coefficients that already
    include contraction weights.
    """

    __slots__ = ("p", "center", "lam", "l_total", "beta")

    def __init__(self, f, g):
        ea, eb = f.exponent_array, g.exponent_array
        ca, cb = f.coefficient_array, g.coefficient_array
        a = np.repeat(ea, len(eb))
        b = np.tile(eb, len(ea))
        coef = np.repeat(ca, len(cb)) * np.tile(cb, len(ca))
        p = a + b
        acoords = f.center_array
        bcoords = g.center_array
        self.p = p
        self.beta = b
        self.center = (a[:, None] * acoords + b[:, None] * bcoords) / p[:, None]
        self.l_total = f.total_angular_momentum + g.total_angular_momentum
        e_dim = []
        for d in range(3):
            i, j = f.powers[d], g.powers[d]
            q_x = acoords[d] - bcoords[d]
            e_dim.append([np.asarray(hermite_expansion(i, j, t, q_x, a, b))
                          for t in range(i + j + 1)])
        lam = {}
        for t, ex in enumerate(e_dim[0]):
            for u, ey in enumerate(e_dim[1]):
                for v, ez in enumerate(e_dim[2]):
                    lam[(t, u, v)] = coef * ex * ey * ez
        self.lam = lam


def overlap(f, g):
    """<f|g> for contracted functions."""
    tb = _PairTable(f, g)
    return float(np.sum((np.pi / tb.p) ** 1.5 * tb.lam[(0, 0, 0)]))


def _overlap_pair_vector(f, g):
    tb = _PairTable(f, g)
    return (np.pi / tb.p) ** 1.5 * tb.lam[(0, 0, 0)]


def kinetic(f, g):
    """-1/2 <f|del^2|g> via exponent-shift relations on overlaps."""
    j1, j2, j3 = g.powers
    beta = _PairTable(f, g).beta
    val = beta * (2 * (j1 + j2 + j3) + 3) * _overlap_pair_vector(f, g)
    for d in range(3):
        raised = list(g.powers)
        raised[d] += 2
        g_up = BasisFunction(g.center, tuple(raised), g.exponents, g.coefficients)
        val = val - 2.0 * beta ** 2 * _overlap_pair_vector(f, g_up)
        if g.powers[d] >= 2:
            lowered = list(g.powers)
            lowered[d] -= 2
            g_dn = BasisFunction(g.center, tuple(lowered), g.exponents, g.coefficients)
            val = val - 0.5 * g.powers[d] * (g.powers[d] - 1) * _overlap_pair_vector(f, g_dn)
    return float(np.sum(val))


def nuclear_attraction(f, g, mol):
    """-sum_A Z_A <f| 1/|r-R_A| |g> over the nuclei of mol."""
    tb = _PairTable(f, g)
    total = 0.0
    for at in mol.atoms:
        pc = tb.center - at.coords
        r2 = np.einsum("qi,qi->q", pc, pc)
        fn = boys_table(tb.l_total, tb.p * r2)
        rts = _hermite_coulomb_all(tb.l_total, tb.p, pc[:, 0], pc[:, 1], pc[:, 2], fn)
        acc = np.zeros_like(tb.p)
        for key, lam in tb.lam.items():
            acc += lam * rts[key]
        total -= at.nuclear_charge * float(np.sum(2.0 * np.pi / tb.p * acc))
    return total


def _eri_pair_tables(bra, ket):
    """(bra|ket) between two Hermite charge distributions."""
    pa = bra.p[:, None]
    pb = ket.p[None, :]
    alpha = pa * pb / (pa + pb)
    pq = bra.center[:, None, :] - ket.center[None, :, :]
    r2 = np.einsum("abi,abi->ab", pq, pq)
    lmax = bra.l_total + ket.l_total
    fn = boys_table(lmax, alpha * r2)
    rts = _hermite_coulomb_all(lmax, alpha, pq[..., 0], pq[..., 1], pq[..., 2], fn)
    acc = np.zeros(alpha.shape)
    for (t, u, v), la in bra.lam.items():
        for (s, w, x), lb in ket.lam.items():
            sign = -1.0 if (s + w + x) % 2 else 1.0
            acc += sign * la[:, None] * lb[None, :] * rts[(t + s, u + w, v + x)]
    pref = 2.0 * np.pi ** 2.5 / (pa * pb * np.sqrt(pa + pb))
    return float(np.sum(pref * acc))


def eri(f, g, h, k):
    """Two-electron repulsion integral (fg|hk) in chemists' notation."""
    return _eri_pair_tables(_PairTable(f, g), _PairTable(h, k))


@dataclass(frozen=True)
class IntegralSet:
    overlap: np.ndarray
    kinetic: np.ndarray
    nuclear: np.ndarray
    eri: np.ndarray

    @property
    def hcore(self):
        return self.kinetic + self.nuclear

    @property
    def n(self):
        return self.overlap.shape[0]

    def dump(self, path):
        """Text dump of the unique integrals, one record per line."""
        n = self.n
        with open(path, "w") as fh:
            for label, mat in (("S", self.overlap), ("T", self.kinetic),
                               ("V", self.nuclear)):
                for i in range(n):
                    for j in range(i + 1):
                        fh.write(f"{label} {i} {j} {mat[i, j]:.17g}\n")
            seen = set()
            for i in range(n):
                for j in range(i + 1):
                    for k in range(n):
                        for l in range(k + 1):
                            if (k, l, i, j) in seen:
                                continue
                            seen.add((i, j, k, l))
                            fh.write(f"ERI {i} {j} {k} {l} {self.eri[i, j, k, l]:.17g}\n")


def compute_all(basis, mol):
    """All one- and two-electron integrals for an AO basis; deterministic."""
    n = basis.n
    funcs = basis.functions
    s = np.zeros((n, n))
    t = np.zeros((n, n))
    v = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            s[i, j] = s[j, i] = overlap(funcs[i], funcs[j])
            t[i, j] = t[j, i] = kinetic(funcs[i], funcs[j])
            v[i, j] = v[j, i] = nuclear_attraction(funcs[i], funcs[j], mol)
    pairs = [(i, j) for i in range(n) for j in range(i + 1)]
    tables = [_PairTable(funcs[i], funcs[j]) for i, j in pairs]
    g = np.zeros((n, n, n, n))
    for a, (i, j) in enumerate(pairs):
        for b in range(a + 1):
            k, l = pairs[b]
            val = _eri_pair_tables(tables[a], tables[b])
            for (p, q) in ((i, j), (j, i)):
                for (r, u) in ((k, l), (l, k)):
                    g[p, q, r, u] = val
                    g[r, u, p, q] = val
    return IntegralSet(overlap=s, kinetic=t, nuclear=v, eri=g)
