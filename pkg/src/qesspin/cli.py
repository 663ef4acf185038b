"""Command-line interface: spectra, roots, sphere maps, scans, recursion
tables, and the cross-route verification suite.

Output files are deterministic: fixed row orders, floats at 12 significant
digits, and a JSON metadata line first (comment-prefixed for CSV, under
the "meta" key for JSON).  Exit codes: 0 success, 2 configuration error,
3 verification violation, 4 I/O failure.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .algebra import SpinLabel, enumerate_sectors
from .analysis import constellation, full_scan
from .engine import (assemble_ode, bae_term_scale, energy_from_roots,
                     quasi_exact_spectrum)
from .errors import GridError, ParamError, QesError, Unsupported
from .models import MODEL_NAMES, golden_levels, make_model
from .oracle import (block_spectra, eigensolve, hamiltonian_matrix,
                     tag_ladders)
from .recursion import critical_spectra, generate_polys

_MODEL_FLAGS = ("delta", "g", "a", "b", "c", "chi")
_PARITY_NAME = {0: "even", 1: "odd"}


@dataclass
class RunConfig:
    command: str
    model: str = None
    params: dict = field(default_factory=dict)
    twice_j: int = 0
    sector: str = "all"
    grid: tuple = None          # (param_name, start, stop, count)
    tolerances: dict = field(default_factory=dict)
    output: str = None
    fmt: str = "csv"
    source: str = "engine"
    level: int = None
    variable: str = "z"
    coupled_delta: bool = False
    fid_delta: float = None
    deriv_h: float = None
    pairs: int = 4
    max_index: int = None
    levels: int = 0
    levels_output: str = None


def _fmt(v):
    return "%.12g" % float(v)


def _meta(config, extra=None):
    m = {
        "command": config.command,
        "model": config.model,
        "params": {k: float(v) for k, v in sorted(config.params.items())},
        "twice_j": config.twice_j,
        "sector": config.sector,
        "tolerances": {k: float(v) for k, v in sorted(config.tolerances.items())},
        "version": __version__,
    }
    if config.grid:
        m["grid"] = {"param": config.grid[0], "from": config.grid[1],
                     "to": config.grid[2], "count": config.grid[3]}
    if extra:
        m.update(extra)
    return m


def _emit(config, columns, rows, path=None):
    """Write rows as CSV or JSON with the metadata header."""
    meta = _meta(config)
    target = path if path is not None else config.output
    if config.fmt == "json":
        doc = {"meta": meta,
               "rows": [dict(zip(columns, r)) for r in rows]}
        text = json.dumps(doc, indent=1, sort_keys=False,
                          default=float) + "\n"
    else:
        lines = ["# " + json.dumps(meta, sort_keys=True)]
        lines.append(",".join(columns))
        for r in rows:
            cells = []
            for v in r:
                if isinstance(v, str):
                    cells.append(v)
                elif isinstance(v, (int, np.integer)):
                    cells.append(str(int(v)))
                else:
                    cells.append(_fmt(v))
            lines.append(",".join(cells))
        text = "\n".join(lines) + "\n"
    if target:
        with open(target, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _model(config):
    return make_model(config.model, config.params)


def _sector_wanted(config, p):
    if config.sector == "all":
        return True
    return _PARITY_NAME.get(p) == config.sector


def _engine_levels(config, label):
    """Merged, energy-sorted engine solutions with their sector parity."""
    model = _model(config)
    spec = model.to_spec(label)
    out = []
    for sec in enumerate_sectors(label, spec.k):
        if not _sector_wanted(config, sec.p):
            continue
        for sol in quasi_exact_spectrum(spec, sec, label):
            out.append((sol.energy.real, sec.p, sol))
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def _cmd_spectrum(config):
    label = SpinLabel(config.twice_j)
    rows = []
    if config.source == "engine":
        for i, (e, p, _) in enumerate(_engine_levels(config, label)):
            rows.append((i, e, _PARITY_NAME[p], "engine"))
    elif config.source == "oracle":
        res = tag_ladders(eigensolve(hamiltonian_matrix(_model(config), label)), 2)
        i = 0
        for e, t in zip(res.energies, res.parity_tags):
            if _sector_wanted(config, t):
                rows.append((i, float(e), _PARITY_NAME[t], "oracle"))
                i += 1
    elif config.source == "recursion":
        zs = critical_spectra(_model(config), label)
        pool = []
        for p in (0, 1):
            if not _sector_wanted(config, p):
                continue
            pool.extend((float(z), p) for z in zs[p])
        pool.sort()
        rows = [(i, e, _PARITY_NAME[p], "recursion")
                for i, (e, p) in enumerate(pool)]
    else:
        raise ParamError("unknown source %r" % config.source)
    _emit(config, ["index", "energy", "parity", "source"], rows)
    return 0


def _cmd_roots(config):
    label = SpinLabel(config.twice_j)
    rows = []
    for i, (e, p, sol) in enumerate(_engine_levels(config, label)):
        if config.level is not None and i != config.level:
            continue
        if sol.bethe_roots.size == 0:
            rows.append((i, _PARITY_NAME[p], e, -1, 0.0, 0.0, sol.bae_residual))
        for ridx, r in enumerate(sol.bethe_roots):
            rows.append((i, _PARITY_NAME[p], e, ridx, r.real, r.imag,
                         sol.bae_residual))
    _emit(config, ["level", "parity", "energy", "root_index", "root_re",
                   "root_im", "bae_residual"], rows)
    return 0


def _cmd_sphere(config):
    label = SpinLabel(config.twice_j)
    rows = []
    for i, (e, p, sol) in enumerate(_engine_levels(config, label)):
        if config.level is not None and i != config.level:
            continue
        if config.variable == "x":
            zeros = list(sol.bethe_roots)
        else:
            zeros = [0.0 + 0.0j] * sol.sector.p + list(sol.z_zeros)
        pts = constellation(sol, variable=config.variable)
        for z, pt in zip(zeros, pts):
            z = complex(z)
            rows.append((i, z.real, z.imag, pt.x, pt.y, pt.z))
    _emit(config, ["level", "zero_re", "zero_im", "x", "y", "z"], rows)
    return 0


def _family(config):
    """Parameter -> model callable for scans, honoring --coupled-delta."""
    name, start, stop, count = config.grid
    base = dict(config.params)
    if config.coupled_delta:
        if config.model != "lmg" or name != "g":
            raise ParamError("--coupled-delta applies to LMG scans over g")
        base.setdefault("delta", 10.0)
        delta0 = float(base["delta"])

        def fam(lam):
            return make_model(config.model,
                              {**base, "g": lam, "delta": delta0 - lam})
        return fam

    def fam(lam):
        return make_model(config.model, {**base, name: lam})
    return fam


def _cmd_scan(config):
    label = SpinLabel(config.twice_j)
    name, start, stop, count = config.grid
    if count < 2:
        raise GridError("scan needs --count >= 2")
    grid = list(np.linspace(start, stop, count))
    fam = _family(config)
    rows_data = full_scan(fam, label, grid, delta=config.fid_delta,
                          h=config.deriv_h, pairs=config.pairs)
    rows = [(r.param, r.ground_energy, r.fidelity, r.d1, r.d2,
             r.min_parity_gap) for r in rows_data]
    cols = ["param", "ground_energy", "fidelity", "d1", "d2",
            "min_parity_gap"]
    if config.levels > 0:
        lrows = []
        for lam in grid:
            res = block_spectra(fam(lam), label)
            seen = {0: 0, 1: 0}
            for e, t in zip(res.energies, res.parity_tags):
                if seen[t] < config.levels:
                    lrows.append((lam, seen[t], float(e), _PARITY_NAME[t]))
                    seen[t] += 1
        if config.fmt == "json":
            meta = _meta(config)
            doc = {"meta": meta,
                   "rows": [dict(zip(cols, r)) for r in rows],
                   "levels": [dict(zip(["param", "index", "energy", "parity"], r))
                              for r in lrows]}
            text = json.dumps(doc, indent=1, sort_keys=False, default=float) + "\n"
            if config.output:
                with open(config.output, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        if not config.levels_output:
            raise ParamError("--levels with csv output needs --levels-output")
        _emit(config, ["param", "index", "energy", "parity"], lrows,
              path=config.levels_output)
    _emit(config, cols, rows)
    return 0


def _cmd_recursion(config):
    label = SpinLabel(config.twice_j)
    model = _model(config)
    top = config.max_index if config.max_index is not None else label.twice_j + 2
    top = max(top, label.twice_j + 2)
    polys = generate_polys(model, label, top)
    rows = []
    for poly in polys:
        for idx, cv in enumerate(poly.coeffs):
            rows.append(("coeff", poly.index_l, poly.parity, idx,
                         complex(cv).real, complex(cv).imag))
    zs = critical_spectra(model, label)
    for index_l in (label.twice_j + 1, label.twice_j + 2):
        par = 0 if index_l % 2 == 0 else 1
        for idx, z in enumerate(zs[par]):
            rows.append(("zero", index_l, _PARITY_NAME[par], idx,
                         float(z), 0.0))
    _emit(config, ["kind", "index_l", "parity", "position", "value_re",
                   "value_im"], rows)
    return 0


def _cmd_verify(config):
    label = SpinLabel(config.twice_j)
    model = _model(config)
    spec = model.to_spec(label)
    tol_spec = config.tolerances.get("spectrum", 1e-8)
    tol_bae = config.tolerances.get("bae", 1e-6)
    tol_rec = config.tolerances.get("recursion", 1e-7)
    checks = []

    h = hamiltonian_matrix(model, label)
    herm = float(np.max(np.abs(h - h.conj().T)))
    hscale = max(1.0, float(np.max(np.abs(h))))
    checks.append(("hermiticity", herm, 1e-12 * hscale))

    orc = tag_ladders(eigensolve(h), 2)
    eng = []
    worst_bae = 0.0
    worst_efr = 0.0
    for sec in enumerate_sectors(label, spec.k):
        sols = quasi_exact_spectrum(spec, sec, label)
        ode = assemble_ode(spec, sec, label)
        for sol in sols:
            eng.append((sol.energy.real, sec.p))
            if sol.bethe_roots.size:
                sc = bae_term_scale(ode, sol.bethe_roots)
                if not np.isnan(sol.bae_residual):
                    worst_bae = max(worst_bae, sol.bae_residual / max(1.0, sc))
            if sol.bethe_roots.size == sec.cap_n:
                efr = energy_from_roots(spec, sec, label, sol.bethe_roots)
                worst_efr = max(worst_efr,
                                abs(sol.energy - efr)
                                / max(1.0, abs(sol.energy)))
    eng.sort()
    for p, name in _PARITY_NAME.items():
        ee = np.sort([e for e, t in eng if t == p])
        oo = np.sort([e for e, t in zip(orc.energies, orc.parity_tags)
                      if t == p])
        if ee.size != oo.size:
            checks.append(("level_count_" + name, float(ee.size - oo.size), 0.0))
            continue
        dmax = float(np.max(np.abs(ee - oo))) if ee.size else 0.0
        checks.append(("engine_vs_oracle_" + name, dmax, tol_spec))
    checks.append(("bae_residual", worst_bae, tol_bae))
    checks.append(("energy_from_roots", worst_efr, tol_spec * 10))

    import warnings as _w
    with _w.catch_warnings():
        _w.simplefilter("ignore")
        zs = critical_spectra(model, label)
    worst_rec = 0.0
    count_ok = True
    for p in (0, 1):
        zz = np.sort(np.asarray(zs[p], dtype=float))
        ee = np.sort([e for e, t in eng if t == p])
        if zz.size != ee.size:
            count_ok = False
            continue
        if zz.size:
            sc = max(1.0, float(np.max(np.abs(ee))))
            worst_rec = max(worst_rec, float(np.max(np.abs(zz - ee))) / sc)
    checks.append(("recursion_zero_count", 0.0 if count_ok else 1.0, 0.5))
    checks.append(("engine_vs_recursion", worst_rec, tol_rec))

    try:
        gold = golden_levels(model, label)
    except Unsupported:
        gold = None
    if gold is not None:
        worst_gold = 0.0
        by_p = {}
        for gl in gold:
            by_p.setdefault(gl.p, []).append(gl)
        for p, gls in by_p.items():
            ge = np.sort([complex(g.energy).real for g in gls])
            ee = np.sort([e for e, t in eng if t == p])
            if ge.size != ee.size:
                worst_gold = float("inf")
                continue
            sc = max(1.0, float(np.max(np.abs(ge))) if ge.size else 1.0)
            if ge.size:
                worst_gold = max(worst_gold, float(np.max(np.abs(ge - ee))) / sc)
        checks.append(("golden_levels", worst_gold, 1e-10))

    rows = []
    bad = 0
    for name, value, thr in checks:
        ok = value <= thr
        if not ok:
            bad += 1
        rows.append((name, "pass" if ok else "fail", value, thr))
    _emit(config, ["check", "status", "value", "threshold"], rows)
    return 3 if bad else 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="qesspin",
        description="Quasi-exactly solvable spin models: spectra, Bethe "
                    "roots, sphere maps, scans, and cross-checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, grid=False):
        p.add_argument("--model", required=True,
                       choices=sorted(set(MODEL_NAMES)))
        p.add_argument("--twice-j", type=int, required=True,
                       help="2j as an integer (half-integer spins stay exact)")
        for f in _MODEL_FLAGS:
            p.add_argument("--" + f, type=float, default=None)
        p.add_argument("--sector", choices=["all", "even", "odd"],
                       default="all")
        p.add_argument("--output", default=None)
        p.add_argument("--format", choices=["csv", "json"], default="csv",
                       dest="fmt")

    p = sub.add_parser("spectrum", help="eigenvalues by any of three routes")
    common(p)
    p.add_argument("--source", choices=["engine", "oracle", "recursion"],
                   default="engine")

    p = sub.add_parser("roots", help="Bethe roots and residuals per level")
    common(p)
    p.add_argument("--level", type=int, default=None)

    p = sub.add_parser("sphere", help="stereographic map of wavefunction zeros")
    common(p)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--variable", choices=["z", "x"], default="z")

    p = sub.add_parser("scan", help="parameter scan: fidelity, derivatives, gaps")
    common(p)
    p.add_argument("--param", required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--coupled-delta", action="store_true",
                   help="LMG scans over g: set delta = delta0 - g")
    p.add_argument("--fidelity-delta", type=float, default=None)
    p.add_argument("--derivative-h", type=float, default=None)
    p.add_argument("--pairs", type=int, default=4)
    p.add_argument("--levels", type=int, default=0,
                   help="also record the lowest N levels per parity")
    p.add_argument("--levels-output", default=None)

    p = sub.add_parser("recursion", help="energy polynomials and critical zeros")
    common(p)
    p.add_argument("--max-index", type=int, default=None)

    p = sub.add_parser("verify", help="cross-route invariant suite")
    common(p)
    p.add_argument("--tol-spectrum", type=float, default=1e-8)
    p.add_argument("--tol-bae", type=float, default=1e-6)
    p.add_argument("--tol-recursion", type=float, default=1e-7)

    return ap


def config_from_args(args):
    params = {}
    model = args.model
    want = set(MODEL_NAMES[model].__dataclass_fields__)
    for f in _MODEL_FLAGS:
        v = getattr(args, f, None)
        if v is not None:
            if f not in want:
                raise ParamError("--%s does not apply to model %r" % (f, model))
            params[f] = v
    cfg = RunConfig(command=args.command, model=model, params=params,
                    twice_j=args.twice_j, sector=args.sector,
                    output=args.output, fmt=args.fmt)
    if cfg.twice_j < 0:
        raise ParamError("--twice-j must be non-negative")
    if args.command == "spectrum":
        cfg.source = args.source
    if args.command in ("roots", "sphere"):
        cfg.level = args.level
    if args.command == "sphere":
        cfg.variable = args.variable
    if args.command == "scan":
        cfg.grid = (args.param, args.start, args.stop, args.count)
        cfg.coupled_delta = args.coupled_delta
        cfg.fid_delta = args.fidelity_delta
        cfg.deriv_h = args.derivative_h
        cfg.pairs = args.pairs
        cfg.levels = args.levels
        cfg.levels_output = args.levels_output
        scan_field = args.param
        if scan_field not in want:
            raise ParamError("scan parameter %r is not a field of model %r"
                             % (scan_field, model))
        params.pop(scan_field, None)
        missing = want - set(params) - {scan_field}
        if cfg.coupled_delta:
            missing -= {"delta"}
        if missing:
            raise ParamError("missing parameter flag(s): %s"
                             % ", ".join("--" + f for f in sorted(missing)))
    else:
        missing = want - set(params)
        if missing:
            raise ParamError("missing parameter flag(s): %s"
                             % ", ".join("--" + f for f in sorted(missing)))
    if args.command == "recursion":
        cfg.max_index = args.max_index
    if args.command == "verify":
        cfg.tolerances = {"spectrum": args.tol_spectrum,
                          "bae": args.tol_bae,
                          "recursion": args.tol_recursion}
    return cfg


_RUNNERS = {
    "spectrum": _cmd_spectrum,
    "roots": _cmd_roots,
    "sphere": _cmd_sphere,
    "scan": _cmd_scan,
    "recursion": _cmd_recursion,
    "verify": _cmd_verify,
}


def run(config):
    """Execute a validated RunConfig; returns the process exit code."""
    try:
        return _RUNNERS[config.command](config)
    except (ParamError, GridError, Unsupported) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("i/o error: %s" % exc, file=sys.stderr)
        return 4
    except QesError as exc:
        print("numerical failure: %s" % exc, file=sys.stderr)
        return 3


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:       # argparse exits on usage errors / --help
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
    except ParamError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
