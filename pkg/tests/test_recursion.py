"""Three-term energy-polynomial chains and their critical zeros."""

from fractions import Fraction

import numpy as np
import pytest

from qesspin.algebra import SpinLabel
from qesspin.errors import ComplexZeroWarning
from qesspin.models import LmgModel, RotorModel, TwoAxisModel
from qesspin.oracle import block_spectra, parity_split, tag_ladders, eigensolve, hamiltonian_matrix
from qesspin.recursion import (EnergyPolynomial, critical_pair,
                               critical_spectra, critical_zeros,
                               factorization_check, generate_polys,
                               generate_polys_exact, recursion_step)

MODELS = [LmgModel(1.5, 0.4), RotorModel(2.0, 1.0, 0.5), TwoAxisModel(2.0)]


def test_step_coefficients_frozen():
    (a0, a1), b = recursion_step(LmgModel(1.5, 0.4), SpinLabel(5), 3)
    assert (a0, a1, b) == pytest.approx((-0.09375, 0.125, -0.6))
    (a0, a1), b = recursion_step(RotorModel(2.0, 1.0, 0.5), SpinLabel(4), 2)
    assert (a0, a1, b) == pytest.approx((-3.0, 1 / 3, -1.0))


def test_critical_indices_and_parities():
    for twice_j in (2, 3, 4, 5, 9):
        cp = critical_pair(LmgModel(1.0, 0.3), SpinLabel(twice_j))
        idx = sorted([cp.p_even_sector.index_l, cp.p_odd_sector.index_l])
        assert idx == [twice_j + 1, twice_j + 2]
        assert cp.p_even_sector.index_l % 2 == 0
        assert cp.p_odd_sector.index_l % 2 == 1


def test_seed_polynomials():
    polys = generate_polys(LmgModel(1.0, 0.5), SpinLabel(3), 4)
    by_index = {p.index_l: p for p in polys}
    assert list(by_index[0].coeffs) == [1.0]
    assert list(by_index[1].coeffs) == [1.0]


@pytest.mark.parametrize("model", MODELS)
@pytest.mark.parametrize("twice_j", [2, 3, 4, 5, 8])
def test_critical_zeros_are_the_sector_spectra(model, twice_j):
    lab = SpinLabel(twice_j)
    cp = critical_pair(model, lab)
    blocks = block_spectra(model, lab)
    even = np.sort([e for e, t in zip(blocks.energies, blocks.parity_tags) if t == 0])
    odd = np.sort([e for e, t in zip(blocks.energies, blocks.parity_tags) if t == 1])
    ze = np.sort(np.real(critical_zeros(cp.p_even_sector)))
    zo = np.sort(np.real(critical_zeros(cp.p_odd_sector)))
    scale = max(1.0, float(np.max(np.abs(blocks.energies))))
    assert ze.size == even.size and zo.size == odd.size
    assert np.max(np.abs(ze - even)) <= 1e-7 * scale
    assert np.max(np.abs(zo - odd)) <= 1e-7 * scale


def test_float_chain_tracks_exact_chain():
    for model in MODELS:
        lab = SpinLabel(4)
        exact, var_scale = generate_polys_exact(model, lab, 8)
        for poly in generate_polys(model, lab, 8):
            want = exact[poly.index_l]
            # exact chain may carry a rescaled variable; compare zero sets
            got = np.sort_complex(np.roots(np.array(poly.coeffs)[::-1]))
            ref = np.sort_complex(np.roots(
                [complex(c) / complex(var_scale) ** i
                 for i, c in enumerate(want)][::-1]))
            if got.size:
                assert np.allclose(got, ref, atol=1e-8 * max(1.0, np.max(np.abs(ref))))


def test_exact_two_axis_chain_frozen():
    lab = SpinLabel(4)
    coeffs, var_scale = generate_polys_exact(TwoAxisModel(2.0), lab, 8)
    assert var_scale == pytest.approx(1.0)
    assert coeffs[4] == [Fraction(-1), Fraction(0), Fraction(1, 24)]
    assert coeffs[6] == [Fraction(0), Fraction(1, 15), Fraction(0), Fraction(-1, 720)]
    assert coeffs[8] == [Fraction(0), Fraction(0), Fraction(-1, 840),
                         Fraction(0), Fraction(1, 40320)]


@pytest.mark.parametrize("model", MODELS)
@pytest.mark.parametrize("twice_j", [2, 5, 8])
def test_factorization_beyond_critical(model, twice_j):
    worst = factorization_check(model, SpinLabel(twice_j), extra=5)
    assert worst <= 1e-8


def test_zero_clustering_and_realification():
    # double root within cluster_tol collapses to its mean, small imaginary
    # parts are dropped
    poly = EnergyPolynomial(index_l=4, coeffs=np.array(
        [4.0 - 1e-9, -4.0, 1.0]), parity=0)
    z = critical_zeros(poly, cluster_tol=1e-3)
    assert z.size == 2
    assert np.allclose(z, [2.0, 2.0], atol=1e-4)
    assert np.isrealobj(np.asarray(z)) or np.max(np.abs(np.imag(z))) == 0.0


def test_complex_zero_warning():
    poly = EnergyPolynomial(index_l=4, coeffs=np.array([1.0, 0.0, 1.0]), parity=0)
    with pytest.warns(ComplexZeroWarning):
        critical_zeros(poly)


def test_chain_accuracy_degrades_gracefully():
    # documented float-chain drift: still exact to ~1e-9 at twice_j = 30
    model = RotorModel(20.0, 1.5, 1.0)
    lab = SpinLabel(30)
    cp = critical_pair(model, lab)
    blocks = block_spectra(model, lab)
    even = np.sort([e for e, t in zip(blocks.energies, blocks.parity_tags) if t == 0])
    ze = np.sort(np.real(critical_zeros(cp.p_even_sector)))
    scale = float(np.max(np.abs(blocks.energies)))
    assert np.max(np.abs(ze - even)) <= 1e-6 * scale


@pytest.mark.parametrize("model", [LmgModel(1.3, 0.41),
                                   RotorModel(2.0, 0.7, 1.1),
                                   TwoAxisModel(0.9)])
def test_critical_spectra_beats_double_conditioning(model):
    # the coefficient form is Wilkinson-conditioned: at twice_j = 20 the
    # double route is off by ~1e-4 for these rotor couplings, while the
    # exact-chain extended-precision route stays at ~1e-12
    lab = SpinLabel(20)
    blocks = block_spectra(model, lab)
    zs = critical_spectra(model, lab)
    scale = max(1.0, float(np.max(np.abs(blocks.energies))))
    for p in (0, 1):
        want = np.sort([e for e, t in zip(blocks.energies, blocks.parity_tags)
                        if t == p])
        assert zs[p].size == want.size
        assert np.max(np.abs(zs[p] - want)) <= 1e-11 * scale
