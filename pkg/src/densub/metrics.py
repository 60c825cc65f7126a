from __future__ import annotations

from .exceptions import GraphValidationError

__all__ = ["relative_error", "qp_error"]


def relative_error(rho_star: float, rho: float) -> float:
    """``(rho_star - rho) / rho_star``, floored at 0 against roundoff."""
    if not rho_star > 0:
        raise GraphValidationError("rho_star must be positive")
    return max(0.0, (rho_star - rho) / rho_star)


def qp_error(current: float, optimum: float) -> float:
    """Excess of a squared-load objective over its optimum, floored at 0.

    Without an exact optimum, pass the smallest final value any solver
    reached.
    """
    return max(0.0, current - optimum)
