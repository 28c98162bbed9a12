"""Adaptive quadrature with package error semantics.

Thin wrapper over ``scipy.integrate.quad`` (QUADPACK adaptive Gauss-Kronrod)
that turns integrator warnings into ConvergenceError instead of Python
warnings, so that callers either get a value within tolerance or an
exception.

Public Functions:
    integrate: Integrate a scalar function over a (semi-)infinite interval.
"""

from __future__ import annotations

import logging
from collections.abc import Callable

from scipy.integrate import quad

from pyfsonoma._types import QuadratureControl
from pyfsonoma.exceptions import ConvergenceError

logger = logging.getLogger(__name__)

# A reported warning is tolerated while the error estimate stays within
# this multiple of the requested tolerance (QUADPACK flags roundoff early).
_ROUNDOFF_SLACK = 1e3


def integrate(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    q: QuadratureControl,
    *,
    method: str,
    abs_tol: float | None = None,
    rel_tol: float | None = None,
) -> tuple[float, float]:
    """Integrate ``func`` over [lower, upper].

    Args:
        func: Scalar integrand.
        lower: Lower limit.
        upper: Upper limit (may be ``math.inf``).
        q: Quadrature control supplying default tolerances and the
            subdivision limit.
        method: Name reported in errors and logs.
        abs_tol: Override for ``q.abs_tol``.
        rel_tol: Override for ``q.rel_tol``.

    Returns:
        Tuple of (value, error estimate).

    Raises:
        ConvergenceError: If QUADPACK reports a failure and its error
            estimate is not acceptably close to the requested tolerance.
    """
    if upper <= lower:
        return 0.0, 0.0

    epsabs = q.abs_tol if abs_tol is None else abs_tol
    epsrel = q.rel_tol if rel_tol is None else rel_tol
    result = quad(
        func,
        lower,
        upper,
        epsabs=epsabs,
        epsrel=epsrel,
        limit=q.max_subdivisions,
        full_output=1,
    )
    value, abserr = float(result[0]), float(result[1])

    # A fourth element is QUADPACK's warning message
    if len(result) > 3:
        info = result[2]
        message = str(result[3]).strip().splitlines()[0]
        tolerance = max(epsabs, epsrel * abs(value))
        if abserr > _ROUNDOFF_SLACK * tolerance:
            raise ConvergenceError(
                f"{method}: quadrature on [{lower:g}, {upper:g}] failed ({message}); "
                f"error estimate {abserr:.3g}",
                method=method,
                iterations=int(info.get("last", q.max_subdivisions)),
            )
        logger.debug(
            "%s: accepted quadrature with warning (%s), error %.3g", method, message, abserr
        )

    return value, abserr
