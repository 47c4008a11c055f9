"""Shared numerical kernels: quadrature, phase differentiation, crossing search.

All routines are pure functions of their arguments. Integrands and scanned
functions are expected to accept a 1-D numpy array and return an array of the
same shape (numpy-style broadcasting); plain scalar callables are accepted too
and evaluated pointwise as a fallback.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, NoConvergence, ValidationError

COMPOSITE_SIMPSON = "composite-simpson"
GAUSS_LEGENDRE = "gauss-legendre"
_METHODS = (COMPOSITE_SIMPSON, GAUSS_LEGENDRE)

#: Doublings attempted before integrate() gives up.
_MAX_REFINEMENTS = 8

#: Successive-refinement differences at this fraction of the integrand scale
#: are double-precision noise; refining further cannot help.
_NOISE_FLOOR = 1e-14

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QuadratureSpec:
    """Quadrature scheme selector.

    ``panels_or_nodes`` counts panels for the composite Simpson rule (nodes =
    panels + 1, so the default 4000 panels place 4001 nodes) and nodes for the
    Gauss-Legendre rule. It is the *starting* resolution; integrate() doubles
    it until the successive-refinement comparison meets ``rel_tol``.
    """

    method: str = COMPOSITE_SIMPSON
    panels_or_nodes: int = 4000
    rel_tol: float = 1e-9

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValidationError(
                f"quadrature method must be one of {_METHODS}, got {self.method!r}"
            )
        if self.panels_or_nodes < 8:
            raise ValidationError("quadrature panels_or_nodes must be at least 8")
        if self.method == COMPOSITE_SIMPSON and self.panels_or_nodes % 2:
            raise ValidationError("composite-simpson needs an even panel count")
        if not 0.0 < self.rel_tol <= 1e-3:
            raise ValidationError("quadrature rel_tol must lie in (0, 1e-3]")


DEFAULT_QUADRATURE = QuadratureSpec()


def _sample(f: Callable, xs: np.ndarray) -> np.ndarray:
    try:
        fx = np.asarray(f(xs), dtype=float)
    except (TypeError, ValueError):
        fx = np.array([float(f(x)) for x in xs])
    if fx.shape != xs.shape:
        raise DomainError("integrand must map an array of points to like-shaped values")
    if not np.all(np.isfinite(fx)):
        raise DomainError("function returned non-finite values on the interval")
    return fx


@lru_cache(maxsize=32)
def _gauss_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _estimate(f: Callable, a: float, b: float, n: int, method: str) -> tuple[float, float]:
    """One quadrature pass; returns (integral, integrand scale)."""
    if method == COMPOSITE_SIMPSON:
        xs = np.linspace(a, b, n + 1)
        w = np.ones(n + 1)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        w *= (b - a) / (3.0 * n)
    else:
        x, wref = _gauss_rule(n)
        xs = 0.5 * (b - a) * x + 0.5 * (a + b)
        w = 0.5 * (b - a) * wref
    fx = _sample(f, xs)
    scale = (b - a) * float(np.max(np.abs(fx)))
    return float(np.dot(w, fx)), scale


def integrate(
    f: Callable,
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Definite integral of ``f`` over [a, b] to relative tolerance spec.rel_tol.

    The error estimate is the plain difference between successive refinements
    (each pass doubles the resolution), so the quoted tolerance is
    conservative for smooth integrands. Convergence is declared when that
    difference drops below ``rel_tol`` relative to the current value, or below
    the double-precision noise floor of the integrand scale, whichever is
    hit first.

    Raises NoConvergence if the refinement cap is reached, and DomainError for
    an empty interval or a non-finite integrand.
    """
    if not a < b:
        raise DomainError(f"integration interval requires a < b, got [{a}, {b}]")
    n = spec.panels_or_nodes
    prev, _ = _estimate(f, a, b, n, spec.method)
    for _ in range(_MAX_REFINEMENTS):
        n *= 2
        cur, scale = _estimate(f, a, b, n, spec.method)
        err = abs(cur - prev)
        if err <= spec.rel_tol * abs(cur) or err <= _NOISE_FLOOR * scale:
            return cur
        prev = cur
    raise NoConvergence(
        f"quadrature stalled at {n} {spec.method} panels/nodes "
        f"(last refinement changed the value by {err:.3e})"
    )


def differentiate_phase(
    g: Callable[[float], complex],
    e0: float,
    h: float,
    domain: tuple[float, float] | None = None,
) -> float:
    """Central difference of the unwrapped argument of ``g`` at ``e0``.

    The raw difference arg g(e0+h) - arg g(e0-h) is shifted by the multiple of
    2*pi that lands it in (-pi, pi] before dividing by 2h, so branch-cut
    crossings of the principal argument do not corrupt the derivative. The
    result is invariant under scaling ``g`` by any nonzero complex constant.

    ``domain``, when given, bounds where the stencil may sample; a stencil
    point outside it raises DomainError.
    """
    if not h > 0:
        raise DomainError("phase-derivative step h must be positive")
    if domain is not None:
        lo, hi = domain
        if not (lo < e0 - h and e0 + h < hi):
            raise DomainError(
                f"stencil [{e0 - h}, {e0 + h}] leaves the valid domain ({lo}, {hi})"
            )
    gp = complex(g(e0 + h))
    gm = complex(g(e0 - h))
    if gp == 0 or gm == 0:
        raise DomainError("g vanishes at a stencil point; its phase is undefined")
    if not (math.isfinite(abs(gp)) and math.isfinite(abs(gm))):
        raise DomainError("g returned non-finite values at the stencil points")
    delta = math.atan2(gp.imag, gp.real) - math.atan2(gm.imag, gm.real)
    delta -= TWO_PI * math.ceil((delta - math.pi) / TWO_PI)  # wrap into (-pi, pi]
    return delta / (2.0 * h)


def find_first_crossing(
    f: Callable,
    level: float,
    a: float,
    b: float,
    scan_points: int = 4096,
) -> float | None:
    """Smallest x in [a, b] where ``f(x)`` crosses ``level``, or None.

    [a, b] is scanned on a uniform ``scan_points`` grid for the first sign
    change of f - level; that bracket is then bisected down to an absolute
    width of (b - a) * 1e-10. A grid point sitting exactly on the level counts
    as a crossing. None (no crossing anywhere on the grid) is an ordinary
    answer, not an error.
    """
    if not a < b:
        raise DomainError(f"scan interval requires a < b, got [{a}, {b}]")
    if scan_points < 64:
        raise DomainError("scan_points must be at least 64")
    xs = np.linspace(a, b, scan_points)
    residual = _sample(f, xs) - level

    hits = np.flatnonzero(residual == 0.0)
    brackets = np.flatnonzero(residual[:-1] * residual[1:] < 0.0)
    first_hit = int(hits[0]) if hits.size else None
    first_bracket = int(brackets[0]) if brackets.size else None

    if first_hit is not None and (first_bracket is None or first_hit <= first_bracket):
        return float(xs[first_hit])
    if first_bracket is None:
        return None

    lo = float(xs[first_bracket])
    hi = float(xs[first_bracket + 1])
    lo_negative = residual[first_bracket] < 0.0
    tol = (b - a) * 1e-10
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = float(f(mid)) - level
        if fm == 0.0:
            return mid
        if (fm < 0.0) == lo_negative:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
