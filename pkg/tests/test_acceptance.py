"""End-to-end acceptance gates, one reported line per criterion.

Every gate prints `[criterion N] PASS/FAIL - measured numbers` before its
assertions, so a full run (pytest -s, or the captured output of a failing
gate) reads as a scorecard.  Two gates encode required feature values that
the computed physics does not reproduce (the LMG criticality locations and
the full-block two-axis pairwise degeneracy); they are asserted strictly
anyway and fail visibly, with the companion machinery checks split out so
everything that does hold is still enforced.
"""

import time

import numpy as np

from qesspin.algebra import (SpinLabel, build_sl2, casimir_plsl2,
                             commutator_residuals, enumerate_sectors,
                             extend_to_plsl2)
from qesspin.analysis import full_scan, hellmann_feynman
from qesspin.engine import assemble_ode, bae_term_scale, quasi_exact_spectrum
from qesspin.errors import Unsupported
from qesspin.models import (LmgModel, RotorModel, TwoAxisModel, golden_levels)
from qesspin.oracle import block_spectra, hamiltonian_matrix
from qesspin.recursion import critical_spectra, factorization_check


def report(num, ok, detail):
    print("[criterion %d] %s - %s" % (num, "PASS" if ok else "FAIL", detail))


def engine_by_parity(model, label):
    spec = model.to_spec(label)
    out = {0: [], 1: []}
    for sec in enumerate_sectors(label, spec.k):
        for sol in quasi_exact_spectrum(spec, sec, label):
            out[sec.p % 2].append(sol.energy.real)
    return {p: np.sort(v) for p, v in out.items()}


def oracle_by_parity(model, label):
    res = block_spectra(model, label)
    return {p: np.sort([e for e, t in zip(res.energies, res.parity_tags)
                        if t == p]) for p in (0, 1)}


def spectral_norm(model, label):
    return float(np.max(np.abs(np.linalg.eigvalsh(hamiltonian_matrix(model, label)))))


def test_criterion_1_algebra_identities():
    t0 = time.perf_counter()
    worst_comm = 0.0
    worst_cas = 0.0
    for twice_j in range(1, 51):
        base = build_sl2(SpinLabel(twice_j))
        for k in (1, 2, 3, 4):
            rep = extend_to_plsl2(base, k)
            res = commutator_residuals(rep)
            worst_comm = max(worst_comm, res["r1"], res["r2"])
            kmat = casimir_plsl2(rep)
            dev = np.max(np.abs(kmat - kmat[0, 0] * np.eye(twice_j + 1)))
            worst_cas = max(worst_cas, float(dev))
    elapsed = time.perf_counter() - t0
    ok = worst_comm <= 1e-9 and worst_cas <= 1e-10 and elapsed < 10.0
    report(1, ok, "commutators %.3e (<=1e-9), casimir %.3e (<=1e-10), %.2fs (<10s); "
           "residuals come from exact integer arithmetic" % (worst_comm, worst_cas, elapsed))
    assert worst_comm <= 1e-9
    assert worst_cas <= 1e-10
    assert elapsed < 10.0


def test_criterion_2_golden_closed_forms():
    rng = np.random.default_rng(11)
    t0 = time.perf_counter()
    worst_e = 0.0
    worst_x = 0.0
    checked = 0
    for trial in range(100):
        kind = trial % 3
        if kind == 0:
            model = LmgModel(float(rng.uniform(-3, 3)), float(rng.uniform(0.1, 2.5)))
        elif kind == 1:
            a, b, c = (float(v) for v in rng.uniform(-3, 3, 3))
            if abs(a - b) < 0.05:
                a += 1.0
            model = RotorModel(a, b, c)
        else:
            model = TwoAxisModel(float(rng.uniform(0.1, 3.0)))
        for twice_j in (1, 2, 3, 4):
            lab = SpinLabel(twice_j)
            try:
                gold = golden_levels(model, lab)
            except Unsupported:
                continue
            spec = model.to_spec(lab)
            per_sector = {s.p: quasi_exact_spectrum(spec, s, lab)
                          for s in enumerate_sectors(lab, 2)}
            for gl in gold:
                sols = per_sector[gl.p]
                best = min(sols, key=lambda s: abs(s.energy - gl.energy))
                scale = max(1.0, abs(gl.energy))
                worst_e = max(worst_e, abs(best.energy - gl.energy) / scale)
                want = np.sort_complex(np.array(gl.roots, dtype=complex))
                got = np.sort_complex(best.bethe_roots)
                assert got.size == want.size
                if want.size:
                    xs = max(1.0, float(np.max(np.abs(want))))
                    worst_x = max(worst_x, float(np.max(np.abs(got - want))) / xs)
                checked += 1
    elapsed = time.perf_counter() - t0
    ok = worst_e <= 1e-10 and worst_x <= 1e-10 and elapsed < 5.0
    report(2, ok, "%d levels: energies %.3e, roots %.3e (<=1e-10 rel), %.2fs (<5s)"
           % (checked, worst_e, worst_x, elapsed))
    assert worst_e <= 1e-10
    assert worst_x <= 1e-10
    assert elapsed < 5.0


def test_criterion_3_triple_route_agreement():
    t0 = time.perf_counter()
    models = [LmgModel(1.3, 0.41), RotorModel(2.0, 0.7, 1.1), TwoAxisModel(0.9)]
    worst_triple = 0.0
    for twice_j in (1, 2, 3, 10, 20):
        lab = SpinLabel(twice_j)
        for model in models:
            eng = engine_by_parity(model, lab)
            orc = oracle_by_parity(model, lab)
            rec = critical_spectra(model, lab)
            for p in (0, 1):
                assert eng[p].size == orc[p].size == rec[p].size
                worst_triple = max(worst_triple,
                                   float(np.max(np.abs(eng[p] - orc[p]), initial=0.0)),
                                   float(np.max(np.abs(eng[p] - rec[p]), initial=0.0)),
                                   float(np.max(np.abs(orc[p] - rec[p]), initial=0.0)))
    worst_big = 0.0
    lab = SpinLabel(40)
    for model in models:
        eng = engine_by_parity(model, lab)
        orc = oracle_by_parity(model, lab)
        for p in (0, 1):
            worst_big = max(worst_big, float(np.max(np.abs(eng[p] - orc[p]))))
    elapsed = time.perf_counter() - t0
    ok = worst_triple <= 1e-7 and worst_big <= 1e-8 and elapsed < 60.0
    report(3, ok, "triple %.3e (<=1e-7) at 2j<=20, engine-oracle %.3e (<=1e-8) at 2j=40, %.2fs (<60s)"
           % (worst_triple, worst_big, elapsed))
    assert worst_triple <= 1e-7
    assert worst_big <= 1e-8
    assert elapsed < 60.0


def test_criterion_4_bae_residuals_through_j20():
    worst = 0.0
    where = None
    for twice_j in range(1, 41):
        lab = SpinLabel(twice_j)
        for model in (LmgModel(1.0, 0.45), RotorModel(20.0, 1.5, 1.0),
                      TwoAxisModel(1.1)):
            spec = model.to_spec(lab)
            for sec in enumerate_sectors(lab, 2):
                ode = assemble_ode(spec, sec, lab)
                for sol in quasi_exact_spectrum(spec, sec, lab):
                    if not sol.bethe_roots.size or np.isnan(sol.bae_residual):
                        continue       # rootless or genuinely multiple roots
                    rel = sol.bae_residual / max(1.0, bae_term_scale(ode, sol.bethe_roots))
                    if rel > worst:
                        worst = rel
                        where = (twice_j, type(model).__name__)
    ok = worst <= 1e-6
    report(4, ok, "worst residual/scale %.3e (<=1e-6) at 2j=%s %s" %
           (worst, where[0], where[1]))
    assert worst <= 1e-6


_LMG_SCAN = {}


def lmg_coupled_scan():
    # shared between the location gate and the machinery check; scan once
    if not _LMG_SCAN:
        lab = SpinLabel(40)
        fam = lambda g: LmgModel(10.0 - g, g)
        grid = list(np.linspace(0.5, 3.0, 100))
        t0 = time.perf_counter()
        rows = full_scan(fam, lab, grid, delta=0.01)
        _LMG_SCAN["v"] = (lab, fam, grid, rows, time.perf_counter() - t0)
    return _LMG_SCAN["v"]


def test_criterion_5_lmg_criticality_locations():
    lab, fam, grid, rows, elapsed = lmg_coupled_scan()
    fid = np.array([r.fidelity for r in rows])
    d2 = np.abs([r.d2 for r in rows])
    g_min = grid[int(np.argmin(fid))]
    g_peak = grid[int(np.argmax(d2))]
    crossing = None
    for g, r in zip(grid, rows):
        if r.min_parity_gap < 1e-3 * spectral_norm(fam(g), lab):
            crossing = g
            break
    ok = (abs(g_min - 1.8) <= 0.1 and 1.6 <= g_peak <= 2.0
          and crossing is not None and 1.0 <= crossing <= 2.5)
    report(5, ok, "fidelity min g=%.3f (want 1.8+-0.1), |d2| peak g=%.3f "
           "(want [1.6,2.0]), gap crossing g=%s (want [1.0,2.5]), scan %.1fs"
           % (g_min, g_peak,
              "%.3f" % crossing if crossing is not None else "none", elapsed))
    # the computed transition sits near g ~= 0.15 for these couplings (it
    # clamps to the 0.5 grid edge here); the required windows above do not
    # contain it, so these assertions fail and are meant to stay failing
    # until the required values themselves are revised
    assert abs(g_min - 1.8) <= 0.1
    assert 1.6 <= g_peak <= 2.0
    assert crossing is not None and 1.0 <= crossing <= 2.5


def test_criterion_5_scan_machinery():
    lab, fam, grid, rows, elapsed = lmg_coupled_scan()
    fid = np.array([r.fidelity for r in rows])
    assert elapsed < 120.0
    assert np.all(np.isfinite(fid)) and np.all((fid >= 0) & (fid <= 1 + 1e-12))
    assert np.all(np.isfinite([r.d2 for r in rows]))
    assert np.all(np.isfinite([r.min_parity_gap for r in rows]))
    assert fid.min() < 1.0 - 1e-6      # a genuine dip is measurable
    report(5, True, "machinery: %d points in %.1fs (<120s), columns finite"
           % (len(rows), elapsed))


def test_criterion_6_rotor_criticality():
    lab = SpinLabel(40)
    fam = lambda c: RotorModel(20.0, 1.5, c)
    grid = list(np.linspace(0.5, 3.0, 100))
    rows = full_scan(fam, lab, grid)
    fid = np.array([r.fidelity for r in rows])
    c_min = grid[int(np.argmin(fid))]
    onset = None
    for i in range(len(grid) - 1, -1, -1):
        if rows[i].min_parity_gap < 1e-3 * spectral_norm(fam(grid[i]), lab):
            onset = grid[i]
        else:
            break
    ok = abs(c_min - 1.5) <= 0.1 and onset is not None and 1.0 <= onset <= 2.0
    report(6, ok, "fidelity min c=%.4f (want 1.5+-0.1), degeneracy onset c=%s (want [1.0,2.0])"
           % (c_min, "%.4f" % onset if onset is not None else "none"))
    assert abs(c_min - 1.5) <= 0.1
    assert onset is not None and 1.0 <= onset <= 2.0


def two_axis_even_odd(chi):
    res = block_spectra(TwoAxisModel(chi), SpinLabel(40))
    even = np.sort([e for e, t in zip(res.energies, res.parity_tags) if t == 0])
    odd = np.sort([e for e, t in zip(res.energies, res.parity_tags) if t == 1])
    return even, odd


def test_criterion_7_two_axis_properties():
    lab = SpinLabel(40)
    fam = lambda chi: TwoAxisModel(chi)
    rows = full_scan(fam, lab, list(np.linspace(0.1, 20.0, 50)))
    fid_dev = float(np.max(np.abs(1.0 - np.array([r.fidelity for r in rows]))))

    worst_pair = 0.0
    worst_anti = 0.0
    for chi in (0.1, 1.0, 5.0, 20.0):
        even, odd = two_axis_even_odd(chi)
        n = min(even.size, odd.size)
        worst_pair = max(worst_pair, float(np.max(np.abs(even[:n] - odd[:n]))))
        full = np.sort(np.concatenate([even, odd]))
        worst_anti = max(worst_anti, float(np.max(np.abs(full + full[::-1]))))

    spec = TwoAxisModel(1.0).to_spec(lab)
    worst_re = 0.0
    for sec in enumerate_sectors(lab, 2):
        for sol in quasi_exact_spectrum(spec, sec, lab):
            if sol.bethe_roots.size:
                worst_re = max(worst_re, float(np.max(np.abs(sol.bethe_roots.real))))
    ok = (fid_dev <= 1e-8 and worst_pair <= 1e-8 and worst_re <= 1e-8
          and worst_anti <= 1e-8)
    report(7, ok, "fidelity dev %.3e, pairwise even-odd %.3e, root real part %.3e, "
           "antisymmetry %.3e (all <=1e-8)" % (fid_dev, worst_pair, worst_re, worst_anti))
    # the full even/odd blocks are only edge-degenerate: interior pairs split
    # at the coupling scale, so the pairwise bound fails and stays failing
    assert fid_dev <= 1e-8
    assert worst_re <= 1e-8
    assert worst_anti <= 1e-8
    assert worst_pair <= 1e-8


def test_criterion_7_companion_checks():
    # everything in the two-axis gate except the full-block pairing
    even, odd = two_axis_even_odd(2.0)
    assert abs(even[0] - odd[0]) <= 1e-8          # ground pair really merges
    assert abs(even[-1] - odd[-1]) <= 1e-8
    full = np.sort(np.concatenate([even, odd]))
    assert float(np.max(np.abs(full + full[::-1]))) <= 1e-8
    report(7, True, "companion: ground/top pair degeneracy and antisymmetry hold")


def test_criterion_8_recursion_factorization():
    worst = 0.0
    for twice_j in range(1, 21):
        lab = SpinLabel(twice_j)
        for model in (LmgModel(1.2, 0.5), RotorModel(2.5, 1.0, 0.7),
                      TwoAxisModel(1.3)):
            worst = max(worst, factorization_check(model, lab, extra=5))
    ok = worst <= 1e-8
    report(8, ok, "worst relative division remainder %.3e (<=1e-8)" % worst)
    assert worst <= 1e-8


def test_criterion_9_hellmann_feynman_convergence():
    lab = SpinLabel(20)
    fam = lambda c: RotorModel(4.0, 1.0, c)
    at = 1.3
    hf = hellmann_feynman(fam, lab, at)

    def d1(h):
        ep = float(block_spectra(fam(at + h), lab).energies[0])
        em = float(block_spectra(fam(at - h), lab).energies[0])
        return (ep - em) / (2.0 * h)

    e_coarse = abs(d1(0.08) - hf)
    e_fine = abs(d1(0.04) - hf)
    ratio = e_coarse / e_fine
    ok = abs(ratio - 4.0) <= 0.8
    report(9, ok, "halving-step error ratio %.4f (want 4 +- 0.8)" % ratio)
    assert abs(ratio - 4.0) <= 0.8
