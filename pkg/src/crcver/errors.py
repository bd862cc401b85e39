"""Exception types shared across the verification library."""


class CrcverError(Exception):
    """Base class for all library errors."""


class PoleError(CrcverError):
    """Argument sits on (or numerically too close to) a Gamma pole."""


class DomainError(CrcverError):
    """Argument outside the domain of convergence of a series/integral."""


class DivergenceError(DomainError):
    """Series evaluated outside its disk of convergence."""


class ResonanceError(CrcverError):
    """Hypergeometric parameters are integer-resonant; continuation refused."""


class StepFailure(CrcverError):
    """Adaptive ODE stepping stalled near a singular point."""


class BranchError(CrcverError):
    """Inconsistent winding/branch data on a contour."""


class NormalizationError(CrcverError):
    """Pochhammer-contour prefactor (1 - e^{2*pi*i*a}) degenerates."""


class MatchError(CrcverError):
    """A continuation exponent matched no target monomial."""


class SpecializationPole(CrcverError):
    """A sine denominator vanishes at the requested z-specialization."""


class DegenerateChartError(CrcverError):
    """Landau-Ginzburg chart has coincident branch/critical points."""


class ResidueError(CrcverError):
    """Residue circles would overlap singular points."""


class QuadratureError(CrcverError):
    """Contour quadrature failed to reach the requested accuracy."""


class SingularMatrixError(CrcverError):
    """Matrix inversion at a numerically singular point."""


class AsymptoticFitError(CrcverError):
    """Saddle-point/regression coefficients are ill-conditioned."""


class ConfigError(CrcverError):
    """Invalid run configuration."""


class ArityError(CrcverError):
    """Wrong number or shape of CLI arguments for an evaluation."""
