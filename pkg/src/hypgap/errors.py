"""Exception types shared across the package."""


class NumericsError(Exception):
    """Base class for numerical failures (CLI maps these to exit code 3)."""


class GammaPoleError(NumericsError):
    """Gamma function requested at a nonpositive integer."""


class SeriesConvergenceError(NumericsError):
    """Hypergeometric series did not converge (|z| >= 1 or term cap hit)."""


class DomainTooLarge(NumericsError):
    """Evaluation point beyond the configured theta_max cap."""


class BracketFailure(NumericsError):
    """A root/eigenvalue bracket could not be established."""


class InvariantViolation(NumericsError):
    """A mathematically guaranteed ordering failed; indicates a numerics bug."""


class IntegrationOverflow(NumericsError):
    """Shooting trajectory exceeded the blow-up guard."""


class RejectedLambda(ValueError):
    """lambda outside the admissible range (lambda >= lambda_1 has no solutions)."""
