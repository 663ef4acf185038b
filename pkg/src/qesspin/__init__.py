"""Quasi-exactly solvable spin models built on polynomial sl(2) deformations.

The package computes sector decompositions, spectra, Bethe roots, and
energy polynomials for a family of spin Hamiltonians, with three mutually
independent solution routes (invariant-subspace engine, three-term
recursion, dense Hermitian diagonalization) kept separate so they can
verify one another.
"""

__version__ = "0.1.0"

from .algebra import (AlgebraRep, DiffOpRealization, Sector, SpinLabel,
                      build_sl2, casimir_plsl2, commutator_residuals,
                      diff_realization, enumerate_sectors, extend_to_plsl2,
                      phi_poly)
from .analysis import (ScanRow, SpherePoint, constellation, degeneracy_map,
                       derivative_scan, fidelity_scan, full_scan,
                       hellmann_feynman, invert, project)
from .engine import (HamiltonianSpec, OdeOperator, QesSolution, assemble_ode,
                     bae_residual, energy_from_roots, normalize_state,
                     quasi_exact_spectrum)
from .errors import (AssemblyError, CollidingRoots, ComplexZeroWarning,
                     ConvergenceError, DegenerateEigenvector, GridError,
                     MixedParity, NonHermitianInput, OverflowGuard,
                     ParamError, QesError, SubspaceLeak, Unsupported)
from .models import (GoldenLevel, LmgModel, RotorModel, TwoAxisModel,
                     displayed_ode_coeffs, golden_levels, make_model,
                     model_bae_residual)
from .oracle import (SpectrumResult, block_spectra, eigensolve,
                     hamiltonian_matrix, parity_split)
from .recursion import (CriticalPair, EnergyPolynomial, critical_pair,
                        critical_spectra, critical_zeros, factorization_check,
                        generate_polys, recursion_step)
