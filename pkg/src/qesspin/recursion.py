"""Energy polynomials from the models' three-term recursions.

Expanding the wavefunction in the spin ladder turns each eigenproblem into
a recursion P_{l+2}(E) = (a0 + a1 E) P_l(E) + b P_{l-2}(E) seeded by
P_0 = P_1 = 1.  The first polynomial of each parity chain past index 2j is
"critical": its zeros are exactly the sector energies, and every later
polynomial in the chain is divisible by it.  This gives a spectrum route
that never builds a matrix, used to cross-check the other two.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ComplexZeroWarning, ParamError, Unsupported
from .models import LmgModel, RotorModel, TwoAxisModel


@dataclass
class EnergyPolynomial:
    """Coefficients (ascending in E, scaled to unit max-abs) of P_l."""

    index_l: int
    coeffs: np.ndarray
    parity: str


@dataclass
class CriticalPair:
    p_even_sector: EnergyPolynomial
    p_odd_sector: EnergyPolynomial


def recursion_step(model, label, ell):
    """Step coefficients ((a0, a1), b) at index l, meaning
    P_{l+2} = (a0 + a1 E) P_l + b P_{l-2}."""
    twoj = label.twice_j
    j = twoj / 2.0
    den = (ell + 1) * (ell + 2)
    big = (twoj + 1 - ell) * (twoj + 2 - ell)
    if isinstance(model, LmgModel):
        if model.g == 0:
            raise ParamError("LMG recursion needs g != 0")
        return ((j - ell) * model.delta / (model.g * den),
                1.0 / (model.g * den)), -big / den
    if isinstance(model, RotorModel):
        a, b, c = model.a, model.b, model.c
        num = 2 * ell * (ell - twoj) * (2 * c - a - b) + twoj * (twoj * c + a + b)
        return (-num / ((a - b) * den), 4.0 / ((a - b) * den)), -big / den
    if isinstance(model, TwoAxisModel):
        return (0.0, -2.0j / (model.chi * den)), big / den
    raise Unsupported("no recursion for %r" % type(model).__name__)


def _shift_up(coeffs):
    out = np.zeros(coeffs.size + 1, dtype=complex)
    out[1:] = coeffs
    return out


def generate_polys(model, label, max_index):
    """P_0 .. P_max_index with per-step rescaling.

    Each returned polynomial is scaled to unit max-abs coefficient; the
    common growing factor is carried separately inside the loop so the
    recursion survives large j without overflow.  Zeros and divisibility,
    the two things downstream code reads off these polynomials, do not see
    the scaling.
    """
    store = {
        -2: (np.zeros(1, dtype=complex), -np.inf),
        -1: (np.zeros(1, dtype=complex), -np.inf),
        0: (np.ones(1, dtype=complex), 0.0),
        1: (np.ones(1, dtype=complex), 0.0),
    }
    for ell in range(0, max_index - 1):
        (a0, a1), b = recursion_step(model, label, ell)
        pl, lsl = store[ell]
        pm, lsm = store[ell - 2]
        new = a0 * np.concatenate([pl, [0.0]]) + a1 * _shift_up(pl)
        big = max(lsl, lsm)
        new = new * np.exp(lsl - big)
        pad = np.zeros(new.size, dtype=complex)
        pad[:pm.size] = pm
        new = new + b * pad * np.exp(lsm - big)
        mx = float(np.max(np.abs(new)))
        if mx > 0:
            store[ell + 2] = (new / mx, big + np.log(mx))
        else:
            store[ell + 2] = (new, big)
    out = []
    for ell in range(0, max_index + 1):
        coeffs, _ = store[ell]
        out.append(EnergyPolynomial(index_l=ell, coeffs=coeffs.copy(),
                                    parity="even" if ell % 2 == 0 else "odd"))
    return out


def critical_pair(model, label):
    """The two critical polynomials P_{2j+1}, P_{2j+2}, tagged by chain.

    An even polynomial index belongs to the even ladder, so which of the
    two critical indices is the even-sector one depends on the parity of
    2j.
    """
    twoj = label.twice_j
    polys = generate_polys(model, label, twoj + 2)
    lo, hi = polys[twoj + 1], polys[twoj + 2]
    if (twoj + 2) % 2 == 0:
        return CriticalPair(p_even_sector=hi, p_odd_sector=lo)
    return CriticalPair(p_even_sector=lo, p_odd_sector=hi)


def critical_zeros(poly, cluster_tol=1e-7, realify_tol=1e-7):
    """Polished zeros of an energy polynomial, sorted by (Re, Im).

    Zeros closer than cluster_tol (relative) are snapped to their cluster
    mean so that near-degenerate zeros compare stably.  An imaginary part
    surviving above realify_tol (relative) triggers ComplexZeroWarning;
    smaller ones are dropped as roundoff.
    """
    coeffs = np.asarray(poly.coeffs, dtype=complex)
    if coeffs.size <= 1:
        return np.zeros(0, dtype=complex)
    roots = np.roots(coeffs[::-1]).astype(complex)
    dcoeffs = coeffs[1:] * np.arange(1, coeffs.size)
    # companion-matrix zeros lose digits as the degree grows; Aberth-corrected
    # Newton sweeps (step / (1 - step * sum 1/(r - r_l))) pull them back to
    # machine accuracy and stay stable near clustered zeros
    for _ in range(40):
        moved = 0.0
        for i, r in enumerate(roots):
            fp = np.polyval(dcoeffs[::-1], r)
            if abs(fp) < 1e-300:
                continue
            newton = np.polyval(coeffs[::-1], r) / fp
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
    scale = max(1.0, float(np.max(np.abs(roots))))
    order = np.lexsort((roots.imag, roots.real))
    roots = roots[order]
    i = 0
    while i < roots.size:
        jx = i + 1
        while jx < roots.size and abs(roots[jx] - roots[i]) <= cluster_tol * scale:
            jx += 1
        if jx - i > 1:
            roots[i:jx] = np.mean(roots[i:jx])
        i = jx
    bad = np.abs(roots.imag) > realify_tol * scale
    if np.any(bad):
        warnings.warn("energy polynomial has %d zeros off the real axis"
                      % int(np.sum(bad)), ComplexZeroWarning)
    roots.imag[~bad] = 0.0
    idx = np.lexsort((roots.imag, roots.real))
    return roots[idx]


def generate_polys_exact(model, label, max_index):
    """Exact-rational version of the recursion, for oracle use.

    LMG and rotor recurse directly in E with Fraction coefficients (model
    parameters are taken at their exact binary-float values).  The
    two-axis chain is rewritten in the real variable v = 2E/chi, where the
    recursion becomes Q_{l+2} = (-v Q_l - b Q_{l-2}) / ((l+1)(l+2)) after
    stripping a power of i per degree.  Returns (coeff_lists, var_scale)
    with E = var_scale * (variable); var_scale is chi/2 for the two-axis
    chain and 1 otherwise.
    """
    twoj = label.twice_j
    store = {-2: [Fraction(0)], -1: [Fraction(0)],
             0: [Fraction(1)], 1: [Fraction(1)]}
    if isinstance(model, TwoAxisModel):
        var_scale = model.chi / 2.0

        def step(ell):
            den = (ell + 1) * (ell + 2)
            big = (twoj + 1 - ell) * (twoj + 2 - ell)
            return (Fraction(0), Fraction(-1, den)), Fraction(-big, den)
    elif isinstance(model, LmgModel):
        if model.g == 0:
            raise ParamError("LMG recursion needs g != 0")
        var_scale = 1.0
        dlt, g = Fraction(model.delta), Fraction(model.g)
        jf = Fraction(twoj, 2)

        def step(ell):
            den = (ell + 1) * (ell + 2)
            big = (twoj + 1 - ell) * (twoj + 2 - ell)
            return ((jf - ell) * dlt / (g * den), 1 / (g * den)), Fraction(-big, den)
    elif isinstance(model, RotorModel):
        var_scale = 1.0
        a, b, c = Fraction(model.a), Fraction(model.b), Fraction(model.c)

        def step(ell):
            den = (ell + 1) * (ell + 2)
            big = (twoj + 1 - ell) * (twoj + 2 - ell)
            num = 2 * ell * (ell - twoj) * (2 * c - a - b) + twoj * (twoj * c + a + b)
            return (-num / ((a - b) * den), 4 / ((a - b) * den)), Fraction(-big, den)
    else:
        raise Unsupported("no recursion for %r" % type(model).__name__)
    for ell in range(0, max_index - 1):
        (a0, a1), bb = step(ell)
        pl = store[ell]
        pm = store[ell - 2]
        new = [Fraction(0)] * (len(pl) + 1)
        for t, cv in enumerate(pl):
            new[t] += a0 * cv
            new[t + 1] += a1 * cv
        for t, cv in enumerate(pm):
            new[t] += bb * cv
        store[ell + 2] = new
    return {ell: store[ell] for ell in range(0, max_index + 1)}, var_scale


def critical_spectra(model, label, dps=60):
    """Even/odd sector energies from the critical polynomials, solved at
    extended precision.  Returns {0: even energies, 1: odd energies},
    each sorted ascending.

    The coefficient form of a sector spectrum is exponentially
    ill-conditioned in the degree: the exact coefficients span twenty-odd
    decades by 2j = 20, and rounding them to double already moves some
    zeros by ~1e-4 for generic rotor couplings.  The chain itself is
    benign (normalized double coefficients match the exact ones to
    machine epsilon), so this route recurses in exact rationals and only
    then extracts zeros at dps digits before rounding the energies back.
    """
    import mpmath as mp

    twoj = label.twice_j
    exact, var_scale = generate_polys_exact(model, label, twoj + 2)
    out = {}
    with mp.workdps(dps):
        for index_l in (twoj + 1, twoj + 2):
            coeffs = exact[index_l]
            top = len(coeffs) - 1
            while top > 0 and coeffs[top] == 0:
                top -= 1
            par = 0 if index_l % 2 == 0 else 1
            if top == 0:
                out[par] = np.zeros(0)
                continue
            cs = [mp.mpf(c.numerator) / c.denominator
                  for c in coeffs[:top + 1]]
            zs = mp.polyroots(cs[::-1], maxsteps=200, extraprec=80)
            vals = np.array([complex(z) for z in zs]) * var_scale
            scale = max(1.0, float(np.max(np.abs(vals))))
            bad = np.abs(vals.imag) > 1e-9 * scale
            if np.any(bad):
                warnings.warn("critical polynomial %d has %d zeros off the "
                              "real axis" % (index_l, int(np.sum(bad))),
                              ComplexZeroWarning)
            out[par] = np.sort(vals.real)
    return out


def _poly_divmod(num, den):
    """Long division of ascending-coefficient arrays; returns remainder."""
    num = list(np.asarray(num, dtype=complex))
    den = np.asarray(den, dtype=complex)
    dn = den.size - 1
    lead = den[-1]
    while len(num) - 1 >= dn:
        q = num[-1] / lead
        off = len(num) - 1 - dn
        for t in range(den.size):
            num[off + t] -= q * den[t]
        num.pop()
    return np.array(num, dtype=complex)


def factorization_check(model, label, extra=5):
    """Max relative remainder of P_{crit + 2t} / P_crit over both chains,
    t = 1..extra.  Divisibility of the post-critical polynomials by the
    critical one is what makes the truncation quasi-exact, so this should
    sit at roundoff level."""
    twoj = label.twice_j
    top = twoj + 2 + 2 * extra
    polys = generate_polys(model, label, top)
    worst = 0.0
    for crit_idx in (twoj + 1, twoj + 2):
        den = polys[crit_idx].coeffs
        for t in range(1, extra + 1):
            num = polys[crit_idx + 2 * t].coeffs
            rem = _poly_divmod(num, den)
            nmax = float(np.max(np.abs(num)))
            rmax = float(np.max(np.abs(rem))) if rem.size else 0.0
            if nmax > 0:
                worst = max(worst, rmax / nmax)
    return worst
