"""Custom exceptions for pyfsonoma.

This module defines the exception hierarchy used throughout the package.
All exceptions inherit from NomaFsoError, making it easy to catch all
package-specific errors.

Exception Hierarchy:
    NomaFsoError (base)
    ├── ValidationError: Invalid arguments or configuration values.
    │   ├── DomainError: Argument outside a function's mathematical domain.
    │   └── ConfigError: Scenario file parse or invariant failures.
    └── NumericalError: A numerical routine could not meet its contract.
        ├── ConvergenceError: Series or quadrature did not converge.
        └── RangeError: Result over- or underflows double precision.

Examples:
    >>> from pyfsonoma.exceptions import ConvergenceError, NomaFsoError
    >>> try:
    ...     p1, p2 = outage_exact(link1, link2, thr, turbulence)
    ... except ConvergenceError as e:
    ...     print(f"Quadrature failed in {e.method}: {e}")
    ... except NomaFsoError as e:
    ...     print(f"Error: {e}")
"""

from __future__ import annotations


class NomaFsoError(Exception):
    """Base exception for all pyfsonoma errors.

    Catching this exception will catch all package-specific errors.

    Attributes:
        message: Human-readable error description.
    """

    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(message)

    def __str__(self) -> str:
        return self.message


class ValidationError(NomaFsoError):
    """Raised when input validation fails.

    This exception is raised when:
    - A dataclass field violates its invariant (e.g. a negative distance)
    - An enum value cannot be parsed from a string
    - A precondition shared by several arguments does not hold

    Attributes:
        message: Human-readable error description.
        parameter: The parameter that failed validation, if available.
        value: The invalid value, if available.
    """

    def __init__(
        self,
        message: str,
        *,
        parameter: str | None = None,
        value: object = None,
    ) -> None:
        self.parameter = parameter
        self.value = value
        super().__init__(message)


class DomainError(ValidationError):
    """Raised when a function is called outside its mathematical domain.

    Examples are ``ln_gamma(0)``, ``bessel_k`` with an integer order, or a
    negative fade passed to ``gg_cdf``.
    """


class ConfigError(ValidationError):
    """Raised when a scenario file cannot be parsed or is invalid.

    All problems found in the file are collected before raising, so that
    a single run reports every offending line.

    Attributes:
        message: Human-readable error description.
        path: The scenario file path, if available.
        problems: Itemised list of problems found.
    """

    def __init__(
        self,
        message: str,
        *,
        path: str | None = None,
        problems: list[str] | None = None,
    ) -> None:
        self.path = path
        self.problems = list(problems) if problems else []
        super().__init__(message)

    def __str__(self) -> str:
        if not self.problems:
            return self.message
        items = "\n".join(f"  - {problem}" for problem in self.problems)
        return f"{self.message}\n{items}"


class NumericalError(NomaFsoError):
    """Raised when a numerical routine cannot deliver its contract.

    Attributes:
        message: Human-readable error description.
        method: Name of the routine that failed, if available.
    """

    def __init__(self, message: str, *, method: str | None = None) -> None:
        self.method = method
        super().__init__(message)


class ConvergenceError(NumericalError):
    """Raised when a series or quadrature fails to reach its tolerance.

    This exception is raised when:
    - A hypergeometric series exhausts ``max_terms``
    - Adaptive quadrature exhausts ``max_subdivisions`` or reports roundoff
    - A continued fraction does not settle

    Attributes:
        message: Human-readable error description.
        method: Name of the routine that failed, if available.
        iterations: Terms or subdivisions used before giving up.
    """

    def __init__(
        self,
        message: str,
        *,
        method: str | None = None,
        iterations: int | None = None,
    ) -> None:
        self.iterations = iterations
        super().__init__(message, method=method)


class RangeError(NumericalError):
    """Raised when a result is not representable in double precision.

    Attributes:
        message: Human-readable error description.
        method: Name of the routine that failed, if available.
        argument: The argument that caused the overflow, if available.
    """

    def __init__(
        self,
        message: str,
        *,
        method: str | None = None,
        argument: float | None = None,
    ) -> None:
        self.argument = argument
        super().__init__(message, method=method)
