"""Normal-ordered differential-operator algebra."""

from fractions import Fraction

import numpy as np
import pytest

from qesspin.diffop import DiffOp
from qesspin.errors import AssemblyError


def apply_poly(op, poly):
    """Act on an ascending-coefficient polynomial, returning the same form."""
    out = {}
    for n, c in enumerate(poly):
        if c == 0:
            continue
        for deg, val in op.apply_to_monomial(n).items():
            out[deg] = out.get(deg, 0) + c * val
    top = max(out) if out else 0
    return [out.get(d, 0) for d in range(top + 1)]


def test_canonical_commutator_is_identity():
    d = DiffOp({(0, 1): 1})
    x = DiffOp({(1, 0): 1})
    comm = d * x - x * d
    assert comm.terms == {(0, 0): 1}


def test_composition_matches_sequential_application(rng):
    # (A*B) x^n must equal A(B x^n) for random exact operators
    for _ in range(40):
        a = DiffOp({(int(rng.integers(0, 3)), int(rng.integers(0, 3))):
                    int(rng.integers(-4, 5)) for _ in range(3)})
        b = DiffOp({(int(rng.integers(0, 3)), int(rng.integers(0, 3))):
                    int(rng.integers(-4, 5)) for _ in range(3)})
        for n in range(6):
            lhs = (a * b).apply_to_monomial(n)
            rhs = {}
            for deg, val in b.apply_to_monomial(n).items():
                for deg2, val2 in a.apply_to_monomial(deg).items():
                    acc = rhs.get(deg2, 0) + val * val2
                    if acc == 0:
                        rhs.pop(deg2, None)
                    else:
                        rhs[deg2] = acc
            assert lhs == rhs


def test_power_equals_repeated_product():
    op = DiffOp.linear_in_xdx(3, -2)
    assert (op.power(3)).terms == (op * op * op).terms
    assert op.power(0).terms == DiffOp.identity().terms


def test_xshift_negative_requires_divisibility():
    ok = DiffOp({(1, 0): 2, (2, 1): 1})
    shifted = ok.xshift(-1)
    assert shifted.terms == {(0, 0): 2, (1, 1): 1}
    with pytest.raises(AssemblyError):
        DiffOp({(0, 0): 1}).xshift(-1)


def test_scale_and_subtract():
    op = DiffOp({(1, 1): 2, (0, 0): -1})
    assert (op - op).terms == {}
    assert op.scale(0).terms == {}
    assert op.scale(Fraction(1, 2)).terms == {(1, 1): 1, (0, 0): Fraction(-1, 2)}


def test_astype_exact_to_float():
    op = DiffOp({(2, 1): Fraction(1, 3)})
    fl = op.astype(float)
    assert fl.terms[(2, 1)] == pytest.approx(1 / 3)


def test_coeff_polys_round_trip():
    op = DiffOp({(0, 0): 5, (3, 2): -2, (1, 2): 7})
    polys = op.coeff_polys(2)
    assert polys[0] == [5]
    assert polys[1] == [0]
    assert polys[2] == [0, 7, 0, -2]
    with pytest.raises(AssemblyError):
        op.coeff_polys(1)


def test_polynomial_action_linear():
    op = DiffOp.xdx()
    # Euler operator multiplies x^n by n
    assert apply_poly(op, [4, 3, 2]) == [0, 3, 4]
