"""Parameter scans and sphere maps of root constellations.

Scans drive a family of model Hamiltonians over a parameter grid and
record, per grid point, the ground energy, the two-point ground-state
fidelity, finite-difference energy derivatives, and the smallest even/odd
level gap.  All spectra come from the dense-matrix route so the scans are
independent of the polynomial engine they are used to probe.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import GridError
from .oracle import block_spectra, hamiltonian_matrix

# relative energy window inside which the even-sector state is preferred
# as "the" ground state (degenerate pairs make the choice gauge-dependent)
TIE_TOL = 1e-6


@dataclass(frozen=True)
class SpherePoint:
    x: float
    y: float
    z: float


def project(z):
    """Inverse stereographic projection of a complex number onto the unit
    sphere; the origin lands on the south pole."""
    z = complex(z)
    r2 = z.real * z.real + z.imag * z.imag
    den = r2 + 1.0
    return SpherePoint(2.0 * z.real / den, 2.0 * z.imag / den,
                       (r2 - 1.0) / den)


def invert(point):
    """Inverse of project, stable near both poles."""
    den = point.x * point.x + point.y * point.y
    if den == 0.0:
        if point.z < 0:
            return 0.0 + 0.0j
        return complex("inf")
    return complex(point.x, point.y) * (1.0 + point.z) / den


def constellation(solution, variable="z"):
    """Sphere points of a solution's zeros.

    By default projects the z-plane zeros plus the p-fold origin zero
    (count p + k * #roots).  variable="x" projects the Bethe roots
    themselves instead, without the origin multiplicity.
    """
    if variable == "x":
        return [project(x) for x in solution.bethe_roots]
    if variable != "z":
        raise ValueError("variable must be 'z' or 'x'")
    pts = [project(0.0)] * solution.sector.p
    pts += [project(z) for z in solution.z_zeros]
    return pts


@dataclass
class ScanRow:
    param: float
    ground_energy: float
    fidelity: float
    d1: float
    d2: float
    min_parity_gap: float


def _check_grid(grid):
    grid = [float(g) for g in grid]
    if len(grid) < 2:
        raise GridError("scan grid needs at least 2 points")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise GridError("scan grid must be strictly increasing")
    return grid


def _ground(result):
    """(energy, state) of the ground level, even sector preferred on ties."""
    energies = result.energies
    e0 = float(energies[0])
    scale = max(1.0, abs(e0))
    pick = 0
    for i, tag in enumerate(result.parity_tags):
        if tag == 0:
            if energies[i] - e0 <= TIE_TOL * scale:
                pick = i
            break
    return e0, result.states[:, pick]


def _parity_gap(result, pairs):
    even = [e for e, t in zip(result.energies, result.parity_tags) if t == 0]
    odd = [e for e, t in zip(result.energies, result.parity_tags) if t == 1]
    gaps = [abs(a - b) for a, b in zip(even[:pairs], odd[:pairs])]
    return min(gaps) if gaps else float("nan")


def _workers():
    env = os.environ.get("QES_SPIN_THREADS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError:
            raise GridError("QES_SPIN_THREADS must be an integer")
    return min(4, os.cpu_count() or 1)


def full_scan(family, label, grid, delta=None, h=None, pairs=4):
    """All scan columns at once; the shared driver behind the three
    public scan operations and the CLI.

    family maps a parameter value to a model instance.  delta defaults to
    half the grid step (fidelity two-point separation), h to 1e-3 of the
    grid span (derivative step).  Grid points are farmed to a worker pool
    sized by QES_SPIN_THREADS; rows come back in grid order regardless.
    """
    grid = _check_grid(grid)
    if delta is None:
        delta = 0.5 * (grid[1] - grid[0])
    if h is None:
        h = 1e-3 * (grid[-1] - grid[0])
    if delta <= 0 or h <= 0:
        raise GridError("delta and h must be positive")

    def work(lam):
        here = block_spectra(family(lam), label)
        e0 = float(here.energies[0])
        # forward overlap F(lam, lam+delta): stays on-grid at the left edge
        _, gm = _ground(here)
        _, gp = _ground(block_spectra(family(lam + delta), label))
        fid = abs(np.vdot(gm, gp))
        em = float(block_spectra(family(lam - h), label).energies[0])
        ep = float(block_spectra(family(lam + h), label).energies[0])
        d1 = (ep - em) / (2.0 * h)
        d2 = (ep - 2.0 * e0 + em) / (h * h)
        return ScanRow(param=lam, ground_energy=e0, fidelity=fid, d1=d1,
                       d2=d2, min_parity_gap=_parity_gap(here, pairs))

    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        return list(pool.map(work, grid))


def fidelity_scan(family, label, grid, delta=None):
    """Ground-state fidelity F(lam) = |<psi0(lam)|psi0(lam+delta)>| along
    the grid."""
    return full_scan(family, label, grid, delta=delta)


def derivative_scan(family, label, grid, h=None):
    """Central-difference dE0 and d2E0 along the grid."""
    return full_scan(family, label, grid, h=h)


def degeneracy_map(family, label, grid, pairs=4):
    """Minimum even/odd gap over the lowest `pairs` level pairs per point."""
    return full_scan(family, label, grid, pairs=pairs)


def hellmann_feynman(family, label, param, side=1e-4):
    """<psi0 | dH/dparam | psi0> with the matrix derivative taken by a
    symmetric difference (exact up to rounding for families affine in the
    parameter, which covers the shipped models)."""
    s = side * max(1.0, abs(param))
    hplus = hamiltonian_matrix(family(param + s), label)
    hminus = hamiltonian_matrix(family(param - s), label)
    dh = (hplus - hminus) / (2.0 * s)
    _, g0 = _ground(block_spectra(family(param), label))
    return float(np.real(np.vdot(g0, dh @ g0)))
