"""Formal differential operators with polynomial coefficients in x.

An operator is stored as a dict mapping (a, b) -> coefficient, standing for
the term  coeff * x^a * (d/dx)^b.  Products are normal-ordered with the rule

    d^b x^c = sum_t  C(b,t) * c(c-1)...(c-t+1) * x^(c-t) d^(b-t),

so products of polynomial-coefficient operators stay in the same form.
Coefficients may be ints, Fractions, floats or complex; arithmetic is exact
whenever the inputs are exact.
"""

from math import comb

from .errors import AssemblyError


def _falling(n, t):
    out = 1
    for i in range(t):
        out *= n - i
    return out


class DiffOp:
    """Normal-ordered sum of x^a d^b terms."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, coeff in terms.items():
                if coeff != 0:
                    self.terms[key] = coeff

    @classmethod
    def identity(cls):
        return cls({(0, 0): 1})

    @classmethod
    def xdx(cls):
        """The Euler operator x d/dx."""
        return cls({(1, 1): 1})

    @classmethod
    def linear_in_xdx(cls, alpha, beta):
        """alpha + beta * x d/dx."""
        return cls({(0, 0): alpha, (1, 1): beta})

    def __add__(self, other):
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            val = out.get(key, 0) + coeff
            if val == 0:
                out.pop(key, None)
            else:
                out[key] = val
        result = DiffOp()
        result.terms = out
        return result

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        if factor == 0:
            return DiffOp()
        result = DiffOp()
        result.terms = {key: factor * coeff for key, coeff in self.terms.items()}
        return result

    def __mul__(self, other):
        """Operator composition self . other (self applied after other)."""
        if not isinstance(other, DiffOp):
            return self.scale(other)
        out = {}
        for (a, b), ca in self.terms.items():
            for (c, e), cb in other.terms.items():
                # x^a d^b x^c d^e with c >= 0
                if c < 0:
                    raise AssemblyError("cannot compose past a negative power of x")
                for t in range(min(b, c) + 1):
                    coeff = ca * cb * comb(b, t) * _falling(c, t)
                    if coeff == 0:
                        continue
                    key = (a + c - t, b - t + e)
                    val = out.get(key, 0) + coeff
                    if val == 0:
                        out.pop(key, None)
                    else:
                        out[key] = val
        result = DiffOp()
        result.terms = out
        return result

    __rmul__ = scale

    def xshift(self, s):
        """Multiply by x^s on the left; s may be negative if every power survives."""
        out = {}
        for (a, b), coeff in self.terms.items():
            if a + s < 0:
                raise AssemblyError(
                    "residual x^%d term with coefficient %r" % (a + s, coeff))
            out[(a + s, b)] = coeff
        result = DiffOp()
        result.terms = out
        return result

    def power(self, n):
        out = DiffOp.identity()
        for _ in range(n):
            out = out * self
        return out

    def astype(self, convert):
        """New operator with every coefficient passed through convert."""
        result = DiffOp()
        result.terms = {key: convert(coeff) for key, coeff in self.terms.items()}
        return result

    def apply_to_monomial(self, n):
        """Coefficients {degree: coeff} of self acting on x^n."""
        out = {}
        for (a, b), coeff in self.terms.items():
            if b > n:
                continue
            val = coeff * _falling(n, b)
            if val == 0:
                continue
            deg = n - b + a
            acc = out.get(deg, 0) + val
            if acc == 0:
                out.pop(deg, None)
            else:
                out[deg] = acc
        return out

    def coeff_polys(self, max_order):
        """Ascending-degree coefficient lists, one per derivative order 0..max_order."""
        polys = [[] for _ in range(max_order + 1)]
        for (a, b), coeff in self.terms.items():
            if b > max_order:
                raise AssemblyError("derivative order %d above requested %d" % (b, max_order))
            poly = polys[b]
            while len(poly) <= a:
                poly.append(0)
            poly[a] = poly[a] + coeff
        for poly in polys:
            if not poly:
                poly.append(0)
        return polys

    def __repr__(self):
        bits = ["%r*x^%d*d^%d" % (c, a, b) for (a, b), c in sorted(self.terms.items())]
        return "DiffOp(" + " + ".join(bits or ["0"]) + ")"
