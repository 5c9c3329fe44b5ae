"""
Error Types Module

Every failure raised by the library derives from PulseSolverError so the
command line can map it to an exit code in one place.
"""


class PulseSolverError(Exception):
    """Base class for all solver, model and simulator errors."""


# Linear algebra

class NonHermitianInput(PulseSolverError, ValueError):
    """Generator is not Hermitian within tolerance."""


class DimensionMismatch(PulseSolverError, ValueError):
    """Operands have incompatible or unsupported dimensions."""


class ModeUnsupported(PulseSolverError, ValueError):
    """Fidelity mode not defined for this dimension."""


# Model

class DegenerateParams(PulseSolverError, ValueError):
    """Single-qubit parameters are all zero, the oscillation is undefined."""


class WrongCouplingVariant(PulseSolverError, TypeError):
    """Builder called with the other coupling family."""


class KappaUnsupported(PulseSolverError, ValueError):
    """Anisotropic Hamiltonian carries no k terms."""


# SU(2)

class NotUnitary(PulseSolverError, ValueError):
    """Matrix is not unitary within tolerance."""


class NotSpecialUnitary(PulseSolverError, ValueError):
    """Matrix is unitary but its determinant is not 1."""


# Solver

class DegenerateTarget(PulseSolverError, ValueError):
    """Target is diagonal, use solve_diagonal."""


class SignInfeasible(PulseSolverError, ValueError):
    """Fixed tunneling sign cannot be matched by any branch."""


class NoFeasibleP(PulseSolverError, ValueError):
    """No integer P satisfies the identity condition for the requested pulse."""


class ApproximationInvalid(PulseSolverError, ValueError):
    """Delta^2 T^2 too large for the approximate diagonal solution."""


# Simulator

class TimingsIncomplete(PulseSolverError, ValueError):
    """Gate sequence is missing a duration."""


# Command line

class UnitError(PulseSolverError, ValueError):
    """Physical quantity given without a recognised unit."""


class ConfigError(PulseSolverError, ValueError):
    """Malformed config file, solution file or argument combination."""
