"""sl(2) and its polynomial deformation on a spin-j module.

Generators of the deformed algebra are P+ = J+^k, P- = J-^k, P0 = J0/k.
Everything identity-shaped (commutators, Casimir) is verified in exact
rational arithmetic: the squared ladder elements are machine integers and
P0 entries are dyadic rationals, so the residuals returned here are the
residuals of integer identities, not of floating matrix products.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lgamma, sqrt

import numpy as np

from .diffop import DiffOp
from .errors import AssemblyError


@dataclass(frozen=True)
class SpinLabel:
    """Spin j stored as the integer 2j, so half-integers stay exact."""

    twice_j: int

    def __post_init__(self):
        if not isinstance(self.twice_j, (int, np.integer)) or self.twice_j < 0:
            raise ValueError("twice_j must be a non-negative integer")

    @property
    def j(self):
        return self.twice_j / 2.0

    @property
    def dim(self):
        return self.twice_j + 1


@dataclass(frozen=True)
class Sector:
    """Invariant block (p, q, cap_n) of the degree-k deformation."""

    k: int
    p: int
    q: int
    cap_n: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if not (0 <= self.p <= self.k - 1 and 0 <= self.q <= self.k - 1):
            raise ValueError("p, q must lie in [0, k-1]")
        if self.cap_n < 0:
            raise ValueError("cap_n must be non-negative")

    @property
    def dim(self):
        return self.cap_n + 1


@dataclass
class AlgebraRep:
    """Dense matrices of the sl(2) generators and, once extended, the P's."""

    label: SpinLabel
    k: int
    j_plus: np.ndarray
    j_minus: np.ndarray
    j_zero: np.ndarray
    p_plus: np.ndarray = None
    p_minus: np.ndarray = None
    p_zero: np.ndarray = None


@dataclass
class DiffOpRealization:
    """Gauge-transformed single-variable realization of P+, P-, P0.

    Coefficient polynomials are ascending-degree lists, one per derivative
    order 0..k.  No negative powers of x survive the expansion; the x^{-1}
    prefactor of P- cancels because prod(p-i+1) vanishes for p < k.
    """

    sector: Sector
    plus_polys: list
    minus_polys: list
    zero_polys: list
    plus_op: DiffOp = None
    minus_op: DiffOp = None
    zero_op: DiffOp = None

    @property
    def coeff_polys(self):
        return {"plus": self.plus_polys, "minus": self.minus_polys,
                "zero": self.zero_polys}


def build_sl2(label):
    """Matrices of J+, J-, J0 in the lowest-weight basis m = 0..2j."""
    twoj = label.twice_j
    dim = twoj + 1
    j_plus = np.zeros((dim, dim), dtype=complex)
    for m in range(twoj):
        j_plus[m + 1, m] = sqrt((m + 1) * (twoj - m))
    j_minus = j_plus.conj().T.copy()
    j_zero = np.diag(np.arange(dim) - twoj / 2.0).astype(complex)
    return AlgebraRep(label=label, k=1, j_plus=j_plus, j_minus=j_minus,
                      j_zero=j_zero)


def extend_to_plsl2(rep, k):
    """Fill the P matrices: P+- are k-th matrix powers, P0 = J0/k."""
    if k < 1:
        raise ValueError("k must be positive")
    out = AlgebraRep(label=rep.label, k=k, j_plus=rep.j_plus,
                     j_minus=rep.j_minus, j_zero=rep.j_zero)
    out.p_plus = np.linalg.matrix_power(rep.j_plus, k)
    out.p_minus = np.linalg.matrix_power(rep.j_minus, k)
    out.p_zero = rep.j_zero / k
    return out


def phi_poly(k, p0, c):
    """phi^(2k)(p0, c); exact when the arguments are exact."""
    prod_shift = 1
    for i in range(1, k + 1):
        u = k * p0 + k - i
        prod_shift = prod_shift * (c - (u + 1) * u)
    prod_base = 1
    for i in range(1, k + 1):
        prod_base = prod_base * (c - i * (i - 1))
    return -prod_shift + prod_base


def _ladder_in_sq(twoj, k, m):
    """Exact squared element of P+ P- on |m>: prod (m-i+1)(2j-m+i)."""
    out = 1
    for i in range(1, k + 1):
        out *= (m - i + 1) * (twoj - m + i)
    return out


def _ladder_out_sq(twoj, k, m):
    """Exact squared element of P- P+ on |m>: prod (m+i)(2j-m-i+1)."""
    out = 1
    for i in range(1, k + 1):
        out *= (m + i) * (twoj - m - i + 1)
    return out


def commutator_residuals(rep):
    """Max-norm residuals of the deformed commutation relations.

    r1 covers [P0, P+-] = +-P+-, r2 covers [P+, P-] = phi(P0,C) - phi(P0-1,C).
    Both are evaluated entrywise in exact arithmetic (integers and Fractions),
    so a correct construction returns exactly 0.0 regardless of j and k.
    """
    if rep.p_plus is None:
        raise ValueError("rep not extended; call extend_to_plsl2 first")
    twoj = rep.label.twice_j
    k = rep.k
    c = Fraction(twoj * (twoj + 2), 4)
    r1 = 0.0
    r2 = 0.0
    for m in range(twoj + 1):
        p0_m = Fraction(2 * m - twoj, 2 * k)
        if m + k <= twoj:
            p0_up = Fraction(2 * (m + k) - twoj, 2 * k)
            fac = p0_up - p0_m - 1          # exactly 0
            if fac != 0:
                r1 = max(r1, abs(float(fac)) * sqrt(_ladder_out_sq(twoj, k, m)))
        lhs = _ladder_in_sq(twoj, k, m) - _ladder_out_sq(twoj, k, m)
        rhs = phi_poly(k, p0_m, c) - phi_poly(k, p0_m - 1, c)
        diff = lhs - rhs                    # exactly 0
        if diff != 0:
            r2 = max(r2, abs(float(diff)))
    return {"r1": r1, "r2": r2}


def casimir_plsl2(rep):
    """Casimir K = P+P- + phi(P0-1, C), verified exactly against both
    alternate forms; returns the float matrix (a multiple of the identity)."""
    if rep.p_plus is None:
        raise ValueError("rep not extended; call extend_to_plsl2 first")
    twoj = rep.label.twice_j
    k = rep.k
    c = Fraction(twoj * (twoj + 2), 4)
    k_const = 1
    for i in range(1, k + 1):
        k_const = k_const * (c - i * (i - 1))
    for m in range(twoj + 1):
        p0_m = Fraction(2 * m - twoj, 2 * k)
        via_in = _ladder_in_sq(twoj, k, m) + phi_poly(k, p0_m - 1, c)
        via_out = _ladder_out_sq(twoj, k, m) + phi_poly(k, p0_m, c)
        if via_in != via_out or via_in != k_const:
            raise AssemblyError("Casimir identity violated at m=%d" % m)
    return float(k_const) * np.eye(twoj + 1, dtype=complex)


def enumerate_sectors(label, k):
    """Partition of the spin module into degree-k sectors (p, q, cap_n)."""
    twoj = label.twice_j
    sectors = []
    for p in range(min(k - 1, twoj) + 1):
        hits = [q for q in range(k) if (twoj - p - q) % k == 0 and twoj - p - q >= 0]
        if len(hits) != 1:
            raise AssemblyError("q not unique for p=%d, k=%d, 2j=%d" % (p, k, twoj))
        q = hits[0]
        sectors.append(Sector(k=k, p=p, q=q, cap_n=(twoj - p - q) // k))
    if sum(s.cap_n + 1 for s in sectors) != twoj + 1:
        raise AssemblyError("sector dimensions do not sum to 2j+1")
    return sectors


def sector_exact_ops(sector, label):
    """Exact-coefficient DiffOps (plus, minus, zero) for the gauge-transformed
    generators on the sector.  Coefficients are ints and Fractions."""
    twoj = label.twice_j
    k, p = sector.k, sector.p
    plus = DiffOp.identity()
    for i in range(1, k + 1):
        plus = plus * DiffOp.linear_in_xdx(twoj - p - i + 1, -k)
    plus = plus.xshift(1)
    minus = DiffOp.identity()
    for i in range(1, k + 1):
        minus = minus * DiffOp.linear_in_xdx(p - i + 1, k)
    minus = minus.xshift(-1)   # constant term carries prod(p-i+1) = 0
    zero = DiffOp({(1, 1): 1, (0, 0): Fraction(2 * p - twoj, 2 * k)})
    return plus, minus, zero


def diff_realization(sector, label):
    """Coefficient-polynomial form of the single-variable realization."""
    plus, minus, zero = sector_exact_ops(sector, label)
    k = sector.k

    def to_float(polys):
        return [[float(c) for c in poly] for poly in polys]

    return DiffOpRealization(
        sector=sector,
        plus_polys=to_float(plus.coeff_polys(k)),
        minus_polys=to_float(minus.coeff_polys(k)),
        zero_polys=to_float(zero.coeff_polys(k)),
        plus_op=plus, minus_op=minus, zero_op=zero)


def sector_ladder(sector, label):
    """Spin-basis indices m = p + k*t carried by the sector, t = 0..cap_n."""
    return [sector.p + sector.k * t for t in range(sector.cap_n + 1)]


def sector_log_weights(sector, label):
    """log of the norm weights 1/sqrt((p+kt)! (2j-p-kt)!) along the ladder."""
    twoj = label.twice_j
    out = np.empty(sector.cap_n + 1)
    for t, m in enumerate(sector_ladder(sector, label)):
        out[t] = -0.5 * (lgamma(m + 1) + lgamma(twoj - m + 1))
    return out


def normalized_sector_action(op, sector, label):
    """Matrix of a DiffOp on the sector in the orthonormal spin basis.

    The monomial action T[t, m] is rescaled by the norm-weight ratio
    w_m / w_t, which turns the raw polynomial matrix into the one whose
    entries match the spin-basis matrix elements.
    """
    n1 = sector.cap_n + 1
    lw = sector_log_weights(sector, label)
    mat = np.zeros((n1, n1), dtype=complex)
    for m in range(n1):
        for deg, coeff in op.apply_to_monomial(m).items():
            if deg < 0 or deg >= n1:
                if coeff != 0:
                    raise AssemblyError(
                        "action leaves the sector ladder at degree %d" % deg)
                continue
            mat[deg, m] += complex(coeff) * np.exp(lw[m] - lw[deg])
    return mat
