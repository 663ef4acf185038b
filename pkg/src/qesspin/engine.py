"""Quasi-exact spectra from the single-variable differential realization.

A Hamiltonian given as coefficients of P+, P-, powers of kP0 and a constant
becomes an order-k ODE on each sector.  Restricted to polynomials of degree
<= cap_n the ODE is a finite matrix; its eigenvectors are the polynomial
wavefunctions and their roots are the Bethe roots.  The matrix is built in
the orthonormal spin basis (norm weights applied in log space) so Hermitian
Hamiltonians stay Hermitian-conditioned even at large j.
"""

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import atan2, lgamma

import numpy as np

from .algebra import Sector, sector_exact_ops, sector_ladder, sector_log_weights
from .diffop import DiffOp
from .errors import (AssemblyError, CollidingRoots, DegenerateEigenvector,
                     OverflowGuard, SubspaceLeak)


@dataclass
class HamiltonianSpec:
    """H = c_plus P+ + c_minus P- + sum_s c_s (k P0)^s + c_star."""

    k: int
    c_plus: complex = 0.0
    c_minus: complex = 0.0
    c_s: tuple = ()        # coefficient of (k P0)^s at index s-1
    c_star: complex = 0.0


@dataclass
class OdeOperator:
    """Coefficient polynomials of the sector ODE, one list per derivative
    order 0..k, each ascending in x.  parts keeps the (coupling, exact
    operator) pairs so high-precision refinement can rebuild the sector
    matrix without float rounding."""

    sector: Sector
    coeffs: list
    op: DiffOp = None
    parts: tuple = ()


@dataclass
class QesSolution:
    sector: Sector
    energy: complex
    phi_coeffs: np.ndarray
    bethe_roots: np.ndarray
    z_zeros: np.ndarray
    amplitudes: np.ndarray
    bae_residual: float


def assemble_ode(spec, sector, label):
    """Build the sector ODE for a Hamiltonian spec.

    Exact (int/Fraction) coefficients stay exact through the operator
    algebra; float/complex couplings propagate as complex.  Raises
    SubspaceLeak if the assembled operator maps some basis monomial
    outside the sector polynomial space.
    """
    if spec.k != sector.k:
        raise AssemblyError("spec degree %d does not match sector degree %d"
                            % (spec.k, sector.k))
    plus, minus, zero = sector_exact_ops(sector, label)
    k = sector.k
    parts = []
    if spec.c_plus != 0:
        parts.append((spec.c_plus, plus))
    if spec.c_minus != 0:
        parts.append((spec.c_minus, minus))
    if spec.c_s:
        kp0 = zero.scale(k)
        for s, cs in enumerate(spec.c_s, start=1):
            if cs != 0:
                parts.append((cs, kp0.power(s)))
    if spec.c_star != 0:
        parts.append((spec.c_star, DiffOp.identity()))

    # invariance is checked on the exact generator pieces, where the top
    # coefficient cancels identically; float scaling would blur it
    cap = sector.cap_n
    for _, part in parts:
        for m in range(cap + 1):
            for deg, coeff in part.apply_to_monomial(m).items():
                if (deg < 0 or deg > cap) and coeff != 0:
                    raise SubspaceLeak(
                        "operator sends x^%d to degree %d with coefficient %r"
                        % (m, deg, coeff))

    op = DiffOp({})
    for cv, part in parts:
        op = op + part.scale(cv)
    coeffs = [[complex(c) for c in poly] for poly in op.coeff_polys(k)]
    return OdeOperator(sector=sector, coeffs=coeffs, op=op, parts=tuple(parts))


def sector_matrix(ode, label):
    """Matrix of the ODE operator on the sector in the orthonormal basis."""
    sector = ode.sector
    n1 = sector.cap_n + 1
    lw = sector_log_weights(sector, label)
    mat = np.zeros((n1, n1), dtype=complex)
    for m in range(n1):
        for deg, coeff in ode.op.apply_to_monomial(m).items():
            if 0 <= deg < n1:
                mat[deg, m] += complex(coeff) * np.exp(lw[m] - lw[deg])
    return mat


def _fix_phase(vec):
    """Deterministic gauge: largest-modulus entry real positive."""
    piv = int(np.argmax(np.abs(vec)))
    ph = vec[piv]
    if ph != 0:
        vec = vec * (abs(ph) / ph)
    nrm = np.linalg.norm(vec)
    return vec / nrm if nrm > 0 else vec


def _poly_eval(coeffs, x):
    """Horner evaluation, coeffs ascending."""
    acc = 0.0 + 0.0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_deriv(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def quasi_exact_spectrum(spec, sector, label, deg_tol=1e-8):
    """All eigenpairs of the sector block, as QesSolution records.

    Eigenvalue clusters within deg_tol (relative) get their eigenvectors
    re-orthonormalized; a defective cluster (numerically dependent
    eigenvectors that QR cannot fix) raises DegenerateEigenvector.
    Solutions are sorted by (Re E, Im E).  Each solution carries the monic
    polynomial coefficients, its Bethe roots (Newton-polished), the k-th
    root fan of those roots in the z plane, the orthonormal-basis
    amplitudes, and the Bethe-equation residual (NaN when roots collide).
    """
    ode = assemble_ode(spec, sector, label)
    mat = sector_matrix(ode, label)
    lam, vecs = np.linalg.eig(mat)
    order = np.lexsort((lam.imag, lam.real))
    lam = lam[order]
    vecs = vecs[:, order]

    scale = max(1.0, float(np.max(np.abs(lam))) if lam.size else 1.0)
    i = 0
    n = lam.size
    while i < n:
        jx = i + 1
        while jx < n and abs(lam[jx] - lam[jx - 1]) <= deg_tol * scale:
            jx += 1
        if jx - i > 1:
            block = vecs[:, i:jx]
            q, r = np.linalg.qr(block)
            if np.min(np.abs(np.diag(r))) < 1e-10 * np.max(np.abs(block)):
                raise DegenerateEigenvector(
                    "defective eigenvalue cluster near E=%r" % lam[i])
            vecs[:, i:jx] = q
        i = jx

    lw = sector_log_weights(sector, label)
    sols = []
    a_mp = None
    for idx in range(n):
        beta = _fix_phase(vecs[:, idx].copy())
        phi = _monomial_coeffs(beta, lw)
        roots = _polished_roots(phi)

        def residual_of(rts):
            if not rts.size:
                return 0.0
            try:
                return float(np.max(bae_residual_per_root(ode, rts)))
            except CollidingRoots:
                return float("nan")

        res = residual_of(roots)
        # double precision saturates on clustered roots at large j; polish
        # the slow states against the exact matrix at extended precision
        if roots.size and not res <= 1e-9 * max(bae_term_scale(ode, roots), 1e-30):
            if a_mp is None:
                import mpmath as mp
                with mp.workdps(_REFINE_DPS):
                    a_mp = _sector_matrix_exact_mp(ode, mp)
            phi2, roots2 = _refine_solution_mp(ode, complex(lam[idx]), phi,
                                               roots, a_mp)
            res2 = residual_of(roots2)
            if not res2 > res:
                phi, roots, res = phi2, roots2, res2
        zz = _kth_root_fan(roots, sector.k)
        sols.append(QesSolution(sector=sector, energy=complex(lam[idx]),
                                phi_coeffs=phi, bethe_roots=roots, z_zeros=zz,
                                amplitudes=beta, bae_residual=res))
    sols.sort(key=lambda s: (s.energy.real, s.energy.imag))
    return sols


def _monomial_coeffs(beta, lw, trunc=1e-13):
    """Monic monomial coefficients of the wavefunction polynomial.

    The polynomial degree is read off the orthonormal-basis amplitudes,
    which are O(1)-conditioned, not off the monomial coefficients, whose
    norm-weight ratios span many decades at large j and would make any
    fixed cutoff chop genuine leading terms.  Coefficients are then formed
    as log-space ratios against the leading one, so the result is exactly
    monic and safe from overflow through j ~ 200.
    """
    n1 = beta.size
    mags = np.abs(beta)
    cut = trunc * float(np.max(mags))
    deg = 0
    for t in range(n1 - 1, -1, -1):
        if mags[t] > cut:
            deg = t
            break
    coeffs = np.zeros(n1, dtype=complex)
    coeffs[deg] = 1.0
    for t in range(deg):
        if mags[t] <= cut:
            continue
        phase = (beta[t] / mags[t]) * (mags[deg] / beta[deg])
        coeffs[t] = phase * np.exp(np.log(mags[t]) - np.log(mags[deg])
                                   + lw[t] - lw[deg])
    return coeffs


def _polished_roots(phi):
    """Roots of the ascending-coefficient polynomial, polished in place.

    np.roots alone loses several digits on high-degree coefficients with a
    wide dynamic range, so every root gets Aberth-corrected Newton sweeps:
    the plain Newton step divided by (1 - f/f' * sum 1/(r-r_l)) stays
    stable on clustered roots where bare Newton stalls.  Sweeps stop once
    the largest update falls below machine-level relative size.
    """
    deg = phi.size - 1
    while deg > 0 and phi[deg] == 0:
        deg -= 1
    if deg == 0:
        return np.zeros(0, dtype=complex)
    work = list(phi[:deg + 1])
    roots = np.roots(work[::-1]).astype(complex)
    dwork = _poly_deriv(work)
    for _ in range(40):
        moved = 0.0
        for i, r in enumerate(roots):
            fv = _poly_eval(work, r)
            fp = _poly_eval(dwork, r)
            if abs(fp) < 1e-300:
                continue
            newton = fv / fp
            rep = 0.0 + 0.0j
            for l, rl in enumerate(roots):
                if l != i and abs(r - rl) > 1e-300:
                    rep += 1.0 / (r - rl)
            den = 1.0 - newton * rep
            step = newton / den if abs(den) > 1e-12 else newton
            roots[i] = r - step
            moved = max(moved, abs(step) / max(1.0, abs(roots[i])))
        if moved < 1e-15:
            break
    idx = np.lexsort((roots.imag, roots.real))
    return roots[idx]


_REFINE_DPS = 60


def _mp_number(val, mp):
    """Lossless conversion of an exact or double scalar to mpmath."""
    if isinstance(val, Fraction):
        return mp.mpf(val.numerator) / mp.mpf(val.denominator)
    if isinstance(val, complex):
        return mp.mpc(val.real, val.imag)
    return mp.mpf(val)


def _sector_matrix_exact_mp(ode, mp):
    """Monomial-basis sector matrix at the current mpmath precision.

    Rebuilt from the exact operator parts, so the only rounding left is
    the double couplings themselves (converted losslessly)."""
    n1 = ode.sector.cap_n + 1
    a = mp.matrix(n1, n1)
    for cv, part in ode.parts:
        cmp_val = _mp_number(cv, mp)
        for m in range(n1):
            for deg, coeff in part.apply_to_monomial(m).items():
                if 0 <= deg < n1 and coeff != 0:
                    a[deg, m] += cmp_val * _mp_number(coeff, mp)
    return a


def _horner_mp(coeffs, z, mp):
    acc = mp.mpc(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _aberth_mp(coeffs, starts, mp, max_iter=120):
    """Simultaneous Aberth refinement of all roots at current precision.

    coeffs ascending; starts are double-precision estimates.  Exactly
    multiple roots (vanishing derivative) are left where they are."""
    deg = len(coeffs) - 1
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
    roots = [mp.mpc(r.real, r.imag) for r in starts]
    tol = mp.mpf(10) ** (-(mp.mp.dps - 15))
    for _ in range(max_iter):
        moved = mp.mpf(0)
        for i in range(deg):
            z = roots[i]
            f = _horner_mp(coeffs, z, mp)
            fp = _horner_mp(dcoeffs, z, mp)
            if fp == 0:
                continue
            newton = f / fp
            rep = mp.mpc(0)
            for l in range(deg):
                if l != i:
                    dz = z - roots[l]
                    if dz != 0:
                        rep += 1 / dz
            den = 1 - newton * rep
            step = newton / den if abs(den) > mp.mpf("1e-12") else newton
            roots[i] = z - step
            rel = abs(step) / max(mp.mpf(1), abs(roots[i]))
            if rel > moved:
                moved = rel
        if moved < tol:
            break
    return roots


def _refine_solution_mp(ode, energy, phi, starts, a_mp):
    """High-precision polish of one eigenstate's polynomial and roots.

    Bethe-root clusters can be orders of magnitude more sensitive than
    the monomial coefficients that encode them, so double precision
    saturates well above tight residual targets at large j.  This runs
    Rayleigh-quotient inverse iteration on the exact sector matrix and an
    Aberth sweep on the refined coefficients, all at _REFINE_DPS digits,
    then rounds back to double.  Returns (monic coefficients, roots).
    """
    import mpmath as mp

    deg = len(starts)
    with mp.workdps(_REFINE_DPS):
        n1 = ode.sector.cap_n + 1
        lam = mp.mpc(energy.real, energy.imag)
        v = mp.matrix([_mp_number(complex(c), mp) for c in phi])
        scale = max(abs(a_mp[i, jx]) for i in range(n1) for jx in range(n1))
        scale = max(scale, mp.mpf(1))
        target = scale * mp.mpf(10) ** (-(_REFINE_DPS - 12))
        for _ in range(10):
            shifted = a_mp.copy()
            for i in range(n1):
                shifted[i, i] -= lam
            try:
                w = mp.lu_solve(shifted, v)
            except ZeroDivisionError:
                lam += scale * mp.mpf(10) ** (-_REFINE_DPS // 2)
                continue
            w = w / max(abs(x) for x in w)
            aw = a_mp * w
            den = sum(mp.conj(w[i]) * w[i] for i in range(n1))
            lam_new = sum(mp.conj(w[i]) * aw[i] for i in range(n1)) / den
            res = max(abs(aw[i] - lam_new * w[i]) for i in range(n1))
            v, lam = w, lam_new
            if res <= target:
                break
        coeffs = [v[t] / v[deg] for t in range(deg + 1)]
        roots = _aberth_mp(coeffs, starts, mp)
        phi_out = np.zeros(phi.size, dtype=complex)
        for t in range(deg + 1):
            phi_out[t] = complex(coeffs[t])
        roots_out = np.array([complex(r) for r in roots], dtype=complex)
    # rounding 60-digit values to double can leave subnormal dust in a
    # component that is really zero; flush it so downstream trig is safe
    tiny = np.finfo(float).tiny
    re = np.where(np.abs(roots_out.real) < tiny, 0.0, roots_out.real)
    im = np.where(np.abs(roots_out.imag) < tiny, 0.0, roots_out.imag)
    roots_out = re + 1j * im
    idx = np.lexsort((roots_out.imag, roots_out.real))
    return phi_out, roots_out[idx]


def _kth_root_fan(roots, k):
    """All k-th roots in z of each Bethe root x, sorted deterministically."""
    out = []
    for x in roots:
        if x == 0:
            out.extend([0.0 + 0.0j] * k)
            continue
        r = abs(x) ** (1.0 / k)
        # atan2, unlike cmath.phase, accepts subnormal components
        th = atan2(x.imag, x.real)
        for t in range(k):
            out.append(r * cmath.exp(1j * (th + 2 * cmath.pi * t) / k))
    arr = np.array(out, dtype=complex)
    idx = np.lexsort((arr.imag, arr.real))
    return arr[idx]


def bae_residual_per_root(ode, roots):
    """|BAE defect| at each root for the sector ODE.

    The equation at root x_a reads
        sum_{i>=1} P_i(x_a) * i! * e_{i-1}(1/(x_a - x_l), l != a) = 0
    with e_t the elementary symmetric polynomials of the inverse root gaps.
    Raises CollidingRoots when two roots sit closer than 1e-8 relative to
    the root scale, where the inverse gaps are meaningless.
    """
    roots = np.asarray(roots, dtype=complex)
    nr = roots.size
    if nr == 0:
        return np.zeros(0)
    scale = max(1.0, float(np.max(np.abs(roots))))
    out = np.zeros(nr)
    kmax = len(ode.coeffs) - 1
    fact = [1] * (kmax + 1)
    for i in range(1, kmax + 1):
        fact[i] = fact[i - 1] * i
    for a in range(nr):
        gaps = roots[a] - np.delete(roots, a)
        if gaps.size and np.min(np.abs(gaps)) < 1e-8 * scale:
            raise CollidingRoots("roots %d apart by %g" %
                                 (a, float(np.min(np.abs(gaps)))))
        inv = 1.0 / gaps if gaps.size else np.zeros(0, dtype=complex)
        esym = _elementary_symmetric(inv, kmax - 1)
        total = 0.0 + 0.0j
        for i in range(1, kmax + 1):
            pi = _poly_eval(ode.coeffs[i], roots[a])
            total += pi * fact[i] * esym[i - 1]
        out[a] = abs(total)
    return out


def bae_residual(ode, roots):
    """Max BAE defect over the root set (0.0 for an empty set)."""
    per = bae_residual_per_root(ode, roots)
    return float(np.max(per)) if per.size else 0.0


def bae_term_scale(ode, roots):
    """Largest single-term magnitude entering the BAE defect sum.

    The defect is a cancellation between terms of this size, so
    residual / term-scale is the meaningful relative error.
    """
    roots = np.asarray(roots, dtype=complex)
    if roots.size == 0:
        return 0.0
    kmax = len(ode.coeffs) - 1
    fact = [1] * (kmax + 1)
    for i in range(1, kmax + 1):
        fact[i] = fact[i - 1] * i
    worst = 0.0
    for a in range(roots.size):
        gaps = roots[a] - np.delete(roots, a)
        inv = 1.0 / gaps if gaps.size else np.zeros(0, dtype=complex)
        esym = _elementary_symmetric(inv, kmax - 1)
        for i in range(1, kmax + 1):
            pi = _poly_eval(ode.coeffs[i], roots[a])
            worst = max(worst, abs(pi * fact[i] * esym[i - 1]))
    return worst


def _elementary_symmetric(vals, tmax):
    """e_0..e_tmax of the given values, by the one-variable-at-a-time rule."""
    e = np.zeros(tmax + 1, dtype=complex)
    e[0] = 1.0
    for v in vals:
        for t in range(tmax, 0, -1):
            e[t] = e[t] + v * e[t - 1]
    return e


def energy_from_roots(spec, sector, label, roots):
    """Eigenvalue reconstructed from the root sum alone.

    Matching the top coefficient of H phi = E phi for monic phi of degree
    cap_n gives E = c_star + sum_s c_s (k cap_n + p - j)^s
    - c_plus * prod_{i=1..k}(q + k - i + 1) * sum(roots).
    """
    k, p, q, cap = sector.k, sector.p, sector.q, sector.cap_n
    j = label.twice_j / 2.0
    e = complex(spec.c_star)
    base = k * cap + p - j
    for s, cs in enumerate(spec.c_s, start=1):
        e += cs * base ** s
    lift = 1.0
    for i in range(1, k + 1):
        lift *= (q + k - i + 1)
    e -= spec.c_plus * lift * complex(np.sum(roots))
    return e


def normalize_state(solution, label):
    """Unit-norm amplitudes over the full spin module from the z zeros.

    The wavefunction z^p * prod(z - zeta) is expanded, degrees outside the
    sector ladder are checked to be numerically absent (SubspaceLeak
    otherwise) and cleared, and the monomial coefficients are converted to
    orthonormal-basis amplitudes in log space.  Guarded to j <= 200 where
    the log-factorial spread stays within float range.
    """
    twoj = label.twice_j
    if twoj > 400:
        raise OverflowGuard("normalize_state supports twice_j <= 400")
    sector = solution.sector
    poly = np.zeros(1, dtype=complex)
    poly[0] = 1.0
    for zeta in solution.z_zeros:
        poly = np.convolve(poly, np.array([-zeta, 1.0], dtype=complex))
    coeffs = np.zeros(twoj + 1, dtype=complex)
    for d, c in enumerate(poly):
        coeffs[sector.p + d] = c
    top = float(np.max(np.abs(coeffs)))
    for m in range(twoj + 1):
        if (m - sector.p) % sector.k != 0 or m < sector.p:
            if abs(coeffs[m]) > 1e-8 * top:
                raise SubspaceLeak(
                    "reconstructed state has weight %g at off-ladder degree %d"
                    % (abs(coeffs[m]), m))
            coeffs[m] = 0.0
    logmag = np.full(twoj + 1, -np.inf)
    amps = np.zeros(twoj + 1, dtype=complex)
    for m in range(twoj + 1):
        if coeffs[m] != 0:
            logmag[m] = np.log(abs(coeffs[m])) + 0.5 * (
                lgamma(m + 1) + lgamma(twoj - m + 1))
    ref = float(np.max(logmag))
    for m in range(twoj + 1):
        if coeffs[m] != 0:
            amps[m] = (coeffs[m] / abs(coeffs[m])) * np.exp(logmag[m] - ref)
    return _fix_phase(amps)
