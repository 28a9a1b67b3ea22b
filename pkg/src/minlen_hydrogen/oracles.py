"""Numerical cross-checks for the closed-form spectrum and wavefunction.

Nothing here reuses the closed-form root or wavefunction derivative on the
path being checked: the quantization condition is solved by bracketing, and
the radial equation is assembled from its own coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .spectrum import BoundState, DomainError, psi, psi_log_derivative, quantization_lhs


class NumericalError(RuntimeError):
    """An iterative method failed to reach its tolerance."""

    def __init__(self, message: str, best_estimate=None, achieved=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.achieved = achieved


# ---------------------------------------------------------------------------
# quantization condition by bracketing


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.f_lo * self.f_hi < 0:
            raise NumericalError(f"[{self.lo}, {self.hi}] does not bracket a sign change")


def _quantization_residual(n: int, beta: float):
    s = math.sqrt(3.0 * beta)

    def f(k):
        return quantization_lhs(k, beta) - n

    def df(k):
        g = k * (1.0 + s * k)
        return -(1.0 + 2.0 * s * k) / (g * g)

    return f, df


def solve_k_numeric(n: int, beta: float, lo: float = 1e-6, hi: float | None = None, ftol: float = 1e-13) -> float:
    """Root of quantization_lhs(k, beta) = n by bisection, then Newton polish."""
    if n < 1:
        raise DomainError("n must be >= 1")
    hi = 10.0 * n if hi is None else hi
    f, df = _quantization_residual(n, beta)
    bracket = RootBracket(lo, hi, f(lo), f(hi))
    a, b, fa = bracket.lo, bracket.hi, bracket.f_lo

    # Coarse bisection down to a relative width where Newton is safe.
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (fa > 0):
            a, fa = mid, fm
        else:
            b = mid
        if b - a < 1e-6 * b:
            break

    k = 0.5 * (a + b)
    for _ in range(50):
        fk = f(k)
        step = fk / df(k)
        k_new = k - step
        if not a <= k_new <= b:
            k_new = 0.5 * (a + b)
        if (f(k_new) > 0) == (fa > 0):
            a = k_new
        else:
            b = k_new
        k = k_new
        if abs(step) <= 4 * np.finfo(float).eps * k and abs(f(k)) < ftol * max(1.0, n):
            break
    if not abs(f(k)) < ftol * max(1.0, n):
        raise NumericalError(f"Newton polish stalled at |f|={abs(f(k)):.3e}", best_estimate=k, achieved=abs(f(k)))
    return k


# ---------------------------------------------------------------------------
# radial equation


def radial_coefficients(state: BoundState, p, *, flip_sign: bool = False):
    """Coefficients (D, Q) of the first-order radial equation D psi' + Q psi = 0.

    D = (1 + 3 beta p^2)(p^2 + k^2)
    Q = (1 + beta p^2)(p^2 + k^2)/p + 2p(1 + 3 beta p^2) + 2i

    ``flip_sign`` negates the constant 2i term; it exists only as a negative
    control for the verification harness.
    """
    beta, k2 = state.beta, state.k**2
    p = np.asarray(p, dtype=float) if np.ndim(p) else float(p)
    p2 = p * p
    big = 1.0 + 3.0 * beta * p2
    d = big * (p2 + k2)
    coulomb = -2j if flip_sign else 2j
    q = (1.0 + beta * p2) * (p2 + k2) / p + 2.0 * p * big + coulomb
    return d, q


def ode_residual(state: BoundState, p, *, flip_sign: bool = False):
    """|D psi' + Q psi| / (|D psi'| + |Q psi|) at ``p`` > 0."""
    if np.any(np.asarray(p) <= 0):
        raise DomainError("radial equation is singular at p <= 0")
    d, q = radial_coefficients(state, p, flip_sign=flip_sign)
    value = psi(state, p)
    term1 = d * psi_log_derivative(state, p) * value
    term2 = q * value
    return np.abs(term1 + term2) / (np.abs(term1) + np.abs(term2))


@dataclass(frozen=True)
class IntegrationReport:
    p_samples: np.ndarray
    numeric_values: np.ndarray
    analytic_values: np.ndarray
    max_relative_error: float
    steps: int


def integrate_ode(state: BoundState, p0: float, p1: float, steps: int, *, flip_sign: bool = False) -> IntegrationReport:
    """Classical RK4 on psi' = -(Q/D) psi from the analytic value at ``p0``."""
    steps = int(steps)
    if steps < 16:
        raise ValueError(f"need at least 16 steps, got {steps}")
    if not 0 < p0 < p1:
        raise DomainError(f"need 0 < p0 < p1, got p0={p0!r}, p1={p1!r}")

    def rhs(p, y):
        d, q = radial_coefficients(state, p, flip_sign=flip_sign)
        if d == 0:
            raise NumericalError(f"coefficient pole at p={p!r}")
        return -(q / d) * y

    grid = np.linspace(p0, p1, steps + 1)
    h = (p1 - p0) / steps
    ys = np.empty(steps + 1, dtype=complex)
    y = complex(psi(state, p0))
    ys[0] = y
    for i in range(steps):
        p = grid[i]
        k1 = rhs(p, y)
        k2 = rhs(p + 0.5 * h, y + 0.5 * h * k1)
        k3 = rhs(p + 0.5 * h, y + 0.5 * h * k2)
        k4 = rhs(p + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        ys[i + 1] = y
    analytic = psi(state, grid)
    err = float(np.max(np.abs(ys - analytic) / np.abs(analytic)))
    return IntegrationReport(grid, ys, analytic, err, steps)


def convergence_order(state: BoundState, p0: float, p1: float, steps=(40, 80, 160)) -> tuple[float, list[float]]:
    """Observed RK4 order from successive step halvings."""
    errs = [integrate_ode(state, p0, p1, s).max_relative_error for s in steps]
    slope, _ = np.polyfit(np.log(steps), np.log(errs), 1)
    return float(-slope), errs


# ---------------------------------------------------------------------------
# quadrature


class QuadratureResult(NamedTuple):
    value: float
    error: float
    evaluations: int


def _simpson(fa, fm, fb, a, b):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10, max_depth: int = 60, min_depth: int = 4) -> QuadratureResult:
    """Adaptive Simpson with Richardson correction, iterative to avoid recursion limits."""
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    evals = 3
    whole = _simpson(fa, fm, fb, a, b)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    total = 0.0
    err_total = 0.0
    while stack:
        a_, b_, fa_, fm_, fb_, s, eps, depth = stack.pop()
        m = 0.5 * (a_ + b_)
        flm, frm = f(0.5 * (a_ + m)), f(0.5 * (m + b_))
        evals += 2
        left = _simpson(fa_, flm, fm_, a_, m)
        right = _simpson(fm_, frm, fb_, m, b_)
        delta = left + right - s
        if depth >= min_depth and abs(delta) <= 15.0 * eps:
            total += left + right + delta / 15.0
            err_total += abs(delta) / 15.0
        elif depth >= max_depth:
            raise NumericalError(
                f"adaptive Simpson exceeded depth {max_depth} near [{a_}, {b_}]",
                best_estimate=total + left + right,
                achieved=err_total + abs(delta) / 15.0,
            )
        else:
            stack.append((m, b_, fm_, frm, fb_, right, 0.5 * eps, depth + 1))
            stack.append((a_, m, fa_, flm, fm_, left, 0.5 * eps, depth + 1))
    return QuadratureResult(total, err_total, evals)


def quadrature(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10) -> QuadratureResult:
    """Integral of ``f`` over [lo, hi]; ``hi = math.inf`` maps p = lo + t/(1-t).

    For the infinite range, ``f`` must decay faster than 1/p^2.
    """
    if math.isinf(hi):

        def g(t):
            if t >= 1.0:
                return 0.0
            u = 1.0 - t
            return f(lo + t / u) / (u * u)

        return adaptive_simpson(g, 0.0, 1.0, tol)
    return adaptive_simpson(f, lo, hi, tol)
