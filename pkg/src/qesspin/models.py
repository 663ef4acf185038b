"""The three k=2 model Hamiltonians and their closed-form small-block data.

Each model converts to a generic HamiltonianSpec.  The module also carries
independently transcribed closed forms: the sector ODE coefficients written
out per model (displayed_ode_coeffs), the single-root/energy tables for
blocks of dimension <= 2 (golden_levels), and the per-model Bethe equation
in its reduced form (model_bae_residual).  These exist to cross-check the
generic assembly path, so none of them may call into engine internals.
"""

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import ParamError, Unsupported


@dataclass(frozen=True)
class LmgModel:
    """H = delta J0 + g (J+^2 + J-^2)."""

    delta: float
    g: float

    def to_spec(self, label):
        from .engine import HamiltonianSpec
        return HamiltonianSpec(k=2, c_plus=self.g, c_minus=self.g,
                               c_s=(self.delta,), c_star=0.0)


@dataclass(frozen=True)
class RotorModel:
    """H = a Jx^2 + b Jy^2 + c Jz^2 with a != b."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.a == self.b:
            raise ParamError("rotor requires a != b (a = b is free precession)")

    def to_spec(self, label):
        from .engine import HamiltonianSpec
        j = label.twice_j / 2.0
        return HamiltonianSpec(
            k=2,
            c_plus=(self.a - self.b) / 4.0,
            c_minus=(self.a - self.b) / 4.0,
            c_s=(0.0, (2.0 * self.c - self.a - self.b) / 2.0),
            c_star=(self.a + self.b) / 2.0 * j * (j + 1.0))


@dataclass(frozen=True)
class TwoAxisModel:
    """H = (chi / 2i) (J+^2 - J-^2), the two-axis countertwisting generator."""

    chi: float

    def __post_init__(self):
        if self.chi == 0:
            raise ParamError("two-axis coupling chi must be nonzero")

    def to_spec(self, label):
        from .engine import HamiltonianSpec
        nu = self.chi / (2.0j)
        return HamiltonianSpec(k=2, c_plus=nu, c_minus=-nu)


MODEL_NAMES = {"lmg": LmgModel, "rotor": RotorModel, "two-axis": TwoAxisModel,
               "twoaxis": TwoAxisModel}


def make_model(name, params):
    """Instantiate a model by CLI name from a {field: value} dict."""
    if name not in MODEL_NAMES:
        raise ParamError("unknown model %r (choose from %s)"
                         % (name, ", ".join(sorted(MODEL_NAMES))))
    cls = MODEL_NAMES[name]
    fields = cls.__dataclass_fields__
    unknown = set(params) - set(fields)
    if unknown:
        raise ParamError("unknown parameter(s) %s for model %r"
                         % (", ".join(sorted(unknown)), name))
    missing = set(fields) - set(params)
    if missing:
        raise ParamError("missing parameter(s) %s for model %r"
                         % (", ".join(sorted(missing)), name))
    return cls(**{f: float(params[f]) for f in fields})


def displayed_ode_coeffs(model, label, sector):
    """Sector ODE coefficients written out in closed form per model.

    Returned in the same layout as OdeOperator.coeffs: ascending lists for
    derivative orders 0, 1, 2.  Shared structure: with A = 2j - p,
    P+ -> A(A-1) x + (6-4A) x^2 d + 4 x^3 d^2 and P- -> (4p+2) d + 4 x d^2.
    The two-axis coefficients carry the overall chi/2i so that they match
    the Hermitian operator rather than its rescaled real form.
    """
    twoj = label.twice_j
    p = sector.p
    j = twoj / 2.0
    a_top = twoj - p
    if isinstance(model, LmgModel):
        d, g = model.delta, model.g
        p2 = [0.0, 4.0 * g, 0.0, 4.0 * g]
        p1 = [2.0 * g * (2 * p + 1), 2.0 * d, g * (6.0 - 4.0 * a_top)]
        p0 = [d * (p - j), g * a_top * (a_top - 1)]
    elif isinstance(model, RotorModel):
        a, b, c = model.a, model.b, model.c
        ce = (a - b) / 4.0
        c2 = (2.0 * c - a - b) / 2.0
        beta = p - j
        p2 = [0.0, ce * 4.0, 4.0 * c2, ce * 4.0]
        p1 = [ce * (4 * p + 2), 4.0 * c2 * (1.0 + beta),
              ce * (6.0 - 4.0 * a_top)]
        p0 = [(a + b) / 2.0 * j * (j + 1.0) + c2 * beta * beta,
              ce * a_top * (a_top - 1)]
    elif isinstance(model, TwoAxisModel):
        nu = model.chi / (2.0j)
        p2 = [0.0, -4.0 * nu, 0.0, 4.0 * nu]
        p1 = [-nu * (4 * p + 2), 0.0, nu * (6.0 - 4.0 * a_top)]
        p0 = [0.0, nu * a_top * (a_top - 1)]
    else:
        raise Unsupported("no displayed form for %r" % type(model).__name__)
    return [[complex(v) for v in p0], [complex(v) for v in p1],
            [complex(v) for v in p2]]


@dataclass(frozen=True)
class GoldenLevel:
    """One closed-form eigenpair: sector index p, energy, Bethe roots."""

    p: int
    energy: complex
    roots: tuple


def golden_levels(model, label):
    """Closed-form spectra for blocks of dimension <= 2.

    Covers twice_j in {2, 3} for all three models plus the dimension-2 odd
    block at twice_j = 4 for the two-axis model.  Raises Unsupported
    elsewhere.  Root/energy pairings are self-consistent: each root listed
    solves the Bethe equation and reproduces its listed energy.
    """
    twoj = label.twice_j
    if isinstance(model, LmgModel):
        d, g = model.delta, model.g
        if twoj == 2:
            r = sqrt(d * d + 4.0 * g * g)
            out = [GoldenLevel(1, 0.0, ())]
            if g == 0:
                out += [GoldenLevel(0, -d, ()), GoldenLevel(0, d, (0.0,))]
            else:
                out += [GoldenLevel(0, e, (-2.0 * g / (e + d),))
                        for e in (r, -r)]
            return out
        if twoj == 3:
            r = sqrt(d * d + 12.0 * g * g)
            if g == 0:
                return [GoldenLevel(0, -1.5 * d, ()), GoldenLevel(0, 0.5 * d, (0.0,)),
                        GoldenLevel(1, -0.5 * d, ()), GoldenLevel(1, 1.5 * d, (0.0,))]
            return ([GoldenLevel(0, e, (-2.0 * g / (e + 1.5 * d),))
                     for e in (-0.5 * d + r, -0.5 * d - r)]
                    + [GoldenLevel(1, e, (-6.0 * g / (e + 0.5 * d),))
                       for e in (0.5 * d + r, 0.5 * d - r)])
        if twoj == 4:
            # odd block only; the even block is three-dimensional
            r = sqrt(d * d + 36.0 * g * g)
            if g == 0:
                return [GoldenLevel(1, -d, ()), GoldenLevel(1, d, (0.0,))]
            return [GoldenLevel(1, e, (-6.0 * g / (e + d),)) for e in (r, -r)]
        raise Unsupported("golden LMG table covers twice_j in {2, 3, 4}")
    if isinstance(model, RotorModel):
        a, b, c = model.a, model.b, model.c
        if twoj == 2:
            return [GoldenLevel(0, a + c, (-1.0,)),
                    GoldenLevel(0, b + c, (1.0,)),
                    GoldenLevel(1, a + b, ())]
        if twoj == 3:
            s = sqrt(a * a + b * b + c * c - a * b - b * c - c * a)
            base = 1.25 * (a + b + c)
            return [
                GoldenLevel(0, base - s, ((a + b - 2 * c + 2 * s) / (3.0 * (a - b)),)),
                GoldenLevel(0, base + s, ((a + b - 2 * c - 2 * s) / (3.0 * (a - b)),)),
                GoldenLevel(1, base - s, ((2 * c - a - b + 2 * s) / (a - b),)),
                GoldenLevel(1, base + s, ((2 * c - a - b - 2 * s) / (a - b),)),
            ]
        raise Unsupported("golden rotor table covers twice_j in {2, 3}")
    if isinstance(model, TwoAxisModel):
        x = model.chi
        if twoj == 2:
            return [GoldenLevel(0, x, (-1.0j,)), GoldenLevel(0, -x, (1.0j,)),
                    GoldenLevel(1, 0.0, ())]
        if twoj == 3:
            r3 = sqrt(3.0)
            return [GoldenLevel(0, r3 * x, (-1.0j / r3,)),
                    GoldenLevel(0, -r3 * x, (1.0j / r3,)),
                    GoldenLevel(1, r3 * x, (-1.0j * r3,)),
                    GoldenLevel(1, -r3 * x, (1.0j * r3,))]
        if twoj == 4:
            return [GoldenLevel(1, 3.0 * x, (-1.0j,)),
                    GoldenLevel(1, -3.0 * x, (1.0j,))]
        raise Unsupported("golden two-axis table covers twice_j in {2, 3, 4}")
    raise Unsupported("no golden table for %r" % type(model).__name__)


def model_bae_residual_per_root(model, label, sector, roots):
    """The reduced (order-2-normalized) Bethe defect per root:
    |2 sum_{l != a} 1/(x_a - x_l) + P1(x_a)/P2(x_a)|."""
    coeffs = displayed_ode_coeffs(model, label, sector)
    roots = np.asarray(roots, dtype=complex)
    out = np.zeros(roots.size)
    for i, x in enumerate(roots):
        others = np.delete(roots, i)
        ssum = np.sum(1.0 / (x - others)) if others.size else 0.0
        p1 = _horner(coeffs[1], x)
        p2 = _horner(coeffs[2], x)
        out[i] = abs(2.0 * ssum + p1 / p2)
    return out


def model_bae_residual(model, label, sector, roots):
    per = model_bae_residual_per_root(model, label, sector, roots)
    return float(np.max(per)) if per.size else 0.0


def _horner(coeffs, x):
    acc = 0.0 + 0.0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
