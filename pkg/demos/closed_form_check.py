"""Closed-form doublets against all three spectrum routes.

At small j a handful of levels have closed forms (the model tables in
qesspin.models).  This demo prints them next to the invariant-subspace
engine, the dense Jacobi oracle, and the recursion critical zeros, so the
agreement is visible digit by digit.
"""

import numpy as np

from qesspin.algebra import SpinLabel, enumerate_sectors
from qesspin.engine import quasi_exact_spectrum
from qesspin.errors import Unsupported
from qesspin.models import LmgModel, RotorModel, TwoAxisModel, golden_levels
from qesspin.oracle import block_spectra
from qesspin.recursion import critical_spectra

MODELS = [
    ("lmg", LmgModel(1.7, 0.6)),
    ("rotor", RotorModel(2.4, 1.1, 0.8)),
    ("two-axis", TwoAxisModel(1.2)),
]


def engine_levels(model, label):
    spec = model.to_spec(label)
    out = []
    for sec in enumerate_sectors(label, spec.k):
        for sol in quasi_exact_spectrum(spec, sec, label):
            out.append((sol.energy.real, sec.p % 2))
    out.sort()
    return out


def main():
    for name, model in MODELS:
        for twice_j in (1, 2, 3, 4):
            label = SpinLabel(twice_j)
            try:
                gold = golden_levels(model, label)
            except Unsupported:
                continue
            eng = engine_levels(model, label)
            orc = block_spectra(model, label)
            rec = critical_spectra(model, label)
            rec_all = np.sort(np.concatenate([rec[0], rec[1]]))
            print("%s  2j=%d" % (name, twice_j))
            print("  %-22s %-22s %-22s %-22s" % ("closed form", "engine",
                                                 "oracle", "recursion"))
            for gl in sorted(gold, key=lambda g: g.energy.real):
                e = gl.energy.real
                be = min(eng, key=lambda t: abs(t[0] - e))[0]
                bo = float(orc.energies[np.argmin(np.abs(orc.energies - e))])
                br = float(rec_all[np.argmin(np.abs(rec_all - e))])
                print("  %-22.15g %-22.15g %-22.15g %-22.15g" % (e, be, bo, br))
                worst = max(abs(be - e), abs(bo - e), abs(br - e))
                assert worst <= 1e-9 * max(1.0, abs(e)), worst
            print()
    print("every closed-form level reproduced by all three routes")


if __name__ == "__main__":
    main()
