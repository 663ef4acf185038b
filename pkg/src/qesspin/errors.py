"""Exception types shared across the package."""


class QesError(Exception):
    """Base class for all package errors."""


class AssemblyError(QesError):
    """Operator expansion produced an inconsistent term (e.g. residual 1/x)."""


class SubspaceLeak(QesError):
    """Gauge-transformed operator does not preserve the polynomial subspace."""


class DegenerateEigenvector(QesError):
    """Monic normalization impossible even after in-cluster re-orthogonalization."""


class CollidingRoots(QesError):
    """Bethe roots closer than the simple-pole tolerance; BAE residual undefined."""


class ParamError(QesError):
    """Model parameters violate a structural constraint (a == b, chi == 0, ...)."""


class Unsupported(QesError):
    """Requested closed-form data outside the tabulated range."""


class OverflowGuard(QesError):
    """Log-space intermediate left the representable range."""


class NonHermitianInput(QesError):
    """Matrix handed to the Hermitian eigensolver is not Hermitian."""


class MixedParity(QesError):
    """Eigenvector has weight in both parity classes and cannot be resolved."""


class GridError(QesError):
    """Scan grid is unsorted or otherwise malformed."""


class ConvergenceError(QesError):
    """Iterative eigensolver failed to reach its tolerance."""


class ComplexZeroWarning(UserWarning):
    """Critical-polynomial zero of a Hermitian model has a large imaginary part."""
