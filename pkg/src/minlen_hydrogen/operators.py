"""Radial momentum-space differential operators for s-waves.

Operators act on caller-supplied ``TestFunction`` triples (f, f', f'') so the
factorization check measures the algebraic O(beta^2) remainder only, without
any discretization error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .units import CONSTANTS

Coeff = Callable[[np.ndarray], np.ndarray]

HBAR = CONSTANTS.atomic.hbar
IHBAR = 1j * HBAR

DEFAULT_GRID = np.logspace(-2.0, 2.0, 200)


class ContractError(ValueError):
    """An operator was used outside its documented contract."""


def _const(value: float) -> Coeff:
    return lambda p: np.full_like(np.asarray(p, dtype=float), value)


@dataclass(frozen=True)
class TestFunction:
    """A function with caller-supplied first and second derivatives."""

    __test__ = False  # not a pytest class

    f: Callable
    df: Callable
    d2f: Callable

    def check_derivatives(self, points: Sequence[float], rel_tol: float = 1e-6) -> float:
        """Worst relative mismatch of the supplied derivatives against central differences.

        Raises ``ContractError`` when it exceeds ``rel_tol``.
        """
        p = np.asarray(points, dtype=float)
        h1 = 1e-5 * np.maximum(np.abs(p), 1e-3)
        h2 = 1e-4 * np.maximum(np.abs(p), 1e-3)
        fd1 = (self.f(p + h1) - self.f(p - h1)) / (2 * h1)
        fd2 = (self.f(p + h2) - 2 * self.f(p) + self.f(p - h2)) / h2**2
        scale1 = np.maximum(np.abs(self.df(p)), np.abs(self.f(p)) / np.maximum(p, 1e-12))
        scale2 = np.maximum(np.abs(self.d2f(p)), scale1 / np.maximum(p, 1e-12))
        err = max(
            float(np.max(np.abs(fd1 - self.df(p)) / scale1)),
            float(np.max(np.abs(fd2 - self.d2f(p)) / scale2)),
        )
        if err > rel_tol:
            raise ContractError(f"supplied derivatives disagree with finite differences: {err:.3e}")
        return err


def gaussian() -> TestFunction:
    """exp(-p^2) and its derivatives."""
    return TestFunction(
        f=lambda p: np.exp(-p * p),
        df=lambda p: -2.0 * p * np.exp(-p * p),
        d2f=lambda p: (4.0 * p * p - 2.0) * np.exp(-p * p),
    )


@dataclass(frozen=True)
class RadialOperator:
    """prefactor * (c2 d^2/dp^2 + c1 d/dp + c0)."""

    c2: Coeff
    c1: Coeff
    c0: Coeff
    prefactor: complex = 1.0

    def coefficients(self, p):
        """Coefficients at ``p`` with the prefactor multiplied in."""
        p = np.asarray(p, dtype=float)
        return (
            self.prefactor * self.c2(p),
            self.prefactor * self.c1(p),
            self.prefactor * self.c0(p),
        )

    def apply(self, fn: TestFunction, p):
        p = np.asarray(p, dtype=float)
        return self.prefactor * (self.c2(p) * fn.d2f(p) + self.c1(p) * fn.df(p) + self.c0(p) * fn.f(p))

    def __sub__(self, other: "RadialOperator") -> "RadialOperator":
        a, b = self.prefactor, other.prefactor
        return RadialOperator(
            c2=lambda p: a * self.c2(p) - b * other.c2(p),
            c1=lambda p: a * self.c1(p) - b * other.c1(p),
            c0=lambda p: a * self.c0(p) - b * other.c0(p),
            prefactor=1.0,
        )


@dataclass(frozen=True)
class FirstOrderOperator:
    """prefactor * (a d/dp + b), with analytic derivatives da, db."""

    a: Coeff
    b: Coeff
    da: Optional[Coeff] = None
    db: Optional[Coeff] = None
    prefactor: complex = 1.0

    def apply(self, fn: TestFunction, p):
        p = np.asarray(p, dtype=float)
        return self.prefactor * (self.a(p) * fn.df(p) + self.b(p) * fn.f(p))


def r2_exact(beta: float, beta_prime: float) -> RadialOperator:
    """Distance squared operator for l = 0, valid for any beta, beta'."""
    s1 = beta + beta_prime
    s2 = 2.0 * beta + beta_prime
    return RadialOperator(
        c2=lambda p: (1.0 + s1 * p * p) ** 2,
        c1=lambda p: (2.0 / p) * (1.0 + s1 * p * p) * (1.0 + s2 * p * p),
        c0=_const(0.0),
        prefactor=IHBAR**2,
    )


def r2_linearized(beta: float) -> RadialOperator:
    """R^2 at beta' = 2 beta, truncated at first order in beta."""
    return RadialOperator(
        c2=lambda p: 1.0 + 6.0 * beta * p * p,
        c1=lambda p: (2.0 / p) * (1.0 + 7.0 * beta * p * p),
        c0=_const(0.0),
        prefactor=IHBAR**2,
    )


def r_hat(beta: float) -> FirstOrderOperator:
    """Square root of ``r2_linearized`` up to O(beta^2)."""
    return FirstOrderOperator(
        a=lambda p: 1.0 + 3.0 * beta * p * p,
        b=lambda p: (1.0 + beta * p * p) / p,
        da=lambda p: 6.0 * beta * p,
        db=lambda p: beta - (1.0 / p) ** 2,  # cancels b*b exactly at beta = 0
        prefactor=IHBAR,
    )


def compose(outer: FirstOrderOperator, inner: FirstOrderOperator) -> RadialOperator:
    """Exact product outer * inner as a second-order operator.

    (A D + B)(a D + b) = A a D^2 + (A a' + A b + B a) D + (A b' + B b)
    """
    if inner.da is None or inner.db is None:
        raise ContractError("compose needs analytic derivatives on the inner operator")
    A, B = outer.a, outer.b
    a, b, da, db = inner.a, inner.b, inner.da, inner.db
    return RadialOperator(
        c2=lambda p: A(p) * a(p),
        c1=lambda p: A(p) * da(p) + A(p) * b(p) + B(p) * a(p),
        c0=lambda p: A(p) * db(p) + B(p) * b(p),
        prefactor=outer.prefactor * inner.prefactor,
    )


def factorization_residual(beta: float, fn: TestFunction | None = None, grid=None) -> float:
    """max over ``grid`` of |(R o R - R^2_linearized) fn|, default fn = exp(-p^2)."""
    fn = gaussian() if fn is None else fn
    p = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    if np.any(p <= 0):
        raise ContractError("grid points must be positive")
    r = r_hat(beta)
    diff = compose(r, r) - r2_linearized(beta)
    return float(np.max(np.abs(diff.apply(fn, p))))


def fitted_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log(y) against log(x)."""
    slope, _ = np.polyfit(np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float)), 1)
    return float(slope)


def residual_scaling(betas=(1e-3, 5e-4, 2.5e-4), fn: TestFunction | None = None, grid=None) -> tuple[float, list[float]]:
    """Fitted exponent of the factorization residual over ``betas``."""
    res = [factorization_residual(b, fn, grid) for b in betas]
    return fitted_exponent(betas, res), res
