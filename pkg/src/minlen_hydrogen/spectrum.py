"""Closed-form s-wave bound states of the deformed Coulomb problem.

All quantities are in atomic units (hbar = m = alpha = 1). The deformation
is the factorizable case beta' = 2 beta, so only ``beta`` is passed around.

The momentum-space wavefunction is

    psi(p) = A (1 + 3 beta p^2)^(1/3) / (p (p^2 + k^2))
             * exp[2 i xi arctan(p sqrt(3 beta)) - 2 i eta arctan(p / k)]

with k = sqrt(-2E). Single-valuedness forces eta - xi to be an integer n,
which is equivalent to 1 / (k (1 + k sqrt(3 beta))) = n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np


class DomainError(ValueError):
    """Input outside the domain where a formula is defined."""


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not math.isfinite(beta) or beta < 0:
        raise DomainError(f"beta must be finite and non-negative, got {beta!r}")
    return beta


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return int(n)


def xi_eta(k: float, beta: float) -> tuple[float, float]:
    """Exponents of the two arctan phases for momentum scale ``k``."""
    beta = _check_beta(beta)
    if not k > 0:
        raise DomainError(f"k must be positive, got {k!r}")
    denom = 1.0 - 3.0 * beta * k * k
    if denom == 0.0:
        raise DomainError(f"1 - 3 beta k^2 vanishes at k={k!r}, beta={beta!r}")
    return math.sqrt(3.0 * beta) / denom, 1.0 / (k * denom)


def quantization_lhs(k: float, beta: float) -> float:
    """1 / (k (1 + k sqrt(3 beta))); equals eta - xi and must be an integer."""
    return 1.0 / (k * (1.0 + k * math.sqrt(3.0 * beta)))


def solve_k_closed_form(n: int, beta: float) -> float:
    """Positive root of sqrt(3 beta) k^2 + k - 1/n = 0.

    Evaluated as 2 / (n (1 + sqrt(1 + 4 sqrt(3 beta) / n))), which is the
    quadratic-formula root without the cancellation in -1 + sqrt(...).
    """
    n = _check_n(n)
    beta = _check_beta(beta)
    if beta == 0.0:
        return 1.0 / n
    root = math.sqrt(1.0 + 4.0 * math.sqrt(3.0 * beta) / n)
    return 2.0 / (n * (1.0 + root))


def energy_exact(n: int, beta: float) -> float:
    """Physical energy branch.

    -(1/(24 beta)) (1 - sqrt(1 + 4 sqrt(3 beta)/n))^2, rewritten as
    -2 / (n^2 (1 + sqrt(1 + 4 sqrt(3 beta)/n))^2) for numerical stability.
    """
    n = _check_n(n)
    beta = _check_beta(beta)
    if beta == 0.0:
        return -0.5 / (n * n)
    root = math.sqrt(1.0 + 4.0 * math.sqrt(3.0 * beta) / n)
    return -2.0 / (n * n * (1.0 + root) ** 2)


def energy_exact_textbook(n: int, beta: float) -> float:
    """Same branch as ``energy_exact`` evaluated literally, without the rewrite."""
    n = _check_n(n)
    beta = _check_beta(beta)
    if beta == 0.0:
        return -0.5 / (n * n)
    root = math.sqrt(1.0 + 4.0 * math.sqrt(3.0 * beta) / n)
    return -((1.0 - root) ** 2) / (24.0 * beta)


def rejected_branch_energy(n: int, beta: float) -> float:
    """The other root E_n^+, which diverges like -1/(6 beta) as beta -> 0. Not physical."""
    n = _check_n(n)
    beta = _check_beta(beta)
    if beta == 0.0:
        raise DomainError("E_n^+ diverges at beta = 0")
    root = math.sqrt(1.0 + 4.0 * math.sqrt(3.0 * beta) / n)
    return -((1.0 + root) ** 2) / (24.0 * beta)


class SeriesTerms(NamedTuple):
    undeformed: float
    sqrt_beta: float
    beta: float

    @property
    def total(self) -> float:
        return self.undeformed + self.sqrt_beta + self.beta


def energy_series_terms(n: int, beta: float) -> SeriesTerms:
    """Signed contributions to E_n up to first order in beta."""
    n = _check_n(n)
    beta = _check_beta(beta)
    return SeriesTerms(
        undeformed=-0.5 / n**2,
        sqrt_beta=math.sqrt(3.0 * beta) / n**3,
        beta=-7.5 * beta / n**4 + 0.0,  # no signed zero at beta = 0
    )


def energy_series(n: int, beta: float) -> float:
    return energy_series_terms(n, beta).total


class RelativeShift(NamedTuple):
    series: float
    exact: float


def relative_shift_1s2s(beta: float) -> RelativeShift:
    """(E_2S - E_1S) / E_1S, truncated series and exact."""
    beta = _check_beta(beta)
    series = -0.75 + math.sqrt(3.0 * beta) / 4.0 - (21.0 / 16.0) * beta
    e1, e2 = energy_exact(1, beta), energy_exact(2, beta)
    return RelativeShift(series=series, exact=(e2 - e1) / e1)


@dataclass(frozen=True)
class BoundState:
    """s-wave state; ``norm_A`` is 0 until ``normalize`` has run."""

    n: int
    beta: float
    k: float
    energy: float
    xi: float
    eta: float
    norm_A: float = 0.0

    def __post_init__(self):
        if not (self.k > 0 and self.energy < 0):
            raise DomainError(f"need k > 0 and E < 0, got k={self.k!r}, E={self.energy!r}")
        if not 1.0 - 3.0 * self.beta * self.k**2 > 0:
            raise DomainError("1 - 3 beta k^2 must be positive for a physical state")

    @property
    def amplitude(self) -> float:
        return self.norm_A if self.norm_A else 1.0


def state_at(k: float, beta: float, n: int = 0) -> BoundState:
    """State with an arbitrary momentum scale ``k`` (not necessarily quantized)."""
    beta = _check_beta(beta)
    xi, eta = xi_eta(k, beta)
    return BoundState(n=n, beta=beta, k=float(k), energy=-0.5 * k * k, xi=xi, eta=eta)


def bound_state(n: int, beta: float) -> BoundState:
    """Quantized state with principal quantum number ``n``."""
    n = _check_n(n)
    return state_at(solve_k_closed_form(n, beta), beta, n)


def _as_positive(p):
    arr = np.asarray(p, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("psi is singular at p <= 0")
    return arr


def psi(state: BoundState, p):
    """Wavefunction value(s) at momentum ``p`` > 0."""
    arr = _as_positive(p)
    beta, k = state.beta, state.k
    s = math.sqrt(3.0 * beta)
    modulus = state.amplitude * np.cbrt(1.0 + 3.0 * beta * arr * arr) / (arr * (arr * arr + k * k))
    phase = 2.0 * state.xi * np.arctan(arr * s) - 2.0 * state.eta * np.arctan(arr / k)
    out = modulus * np.exp(1j * phase)
    return out if np.ndim(p) else complex(out)


def psi_log_derivative(state: BoundState, p):
    """d ln(psi)/dp, differentiated term by term from the closed form."""
    arr = _as_positive(p)
    beta, k = state.beta, state.k
    s = math.sqrt(3.0 * beta)
    q = 1.0 + 3.0 * beta * arr * arr
    out = (
        2.0 * beta * arr / q
        - 1.0 / arr
        - 2.0 * arr / (arr * arr + k * k)
        + 2j * state.xi * s / q
        - 2j * state.eta * k / (arr * arr + k * k)
    )
    return out if np.ndim(p) else complex(out)


def density(state: BoundState, p):
    """|psi|^2 p^2, which stays finite at p = 0."""
    arr = np.asarray(p, dtype=float)
    k2 = state.k**2
    out = state.amplitude**2 * np.cbrt(1.0 + 3.0 * state.beta * arr * arr) ** 2 / (arr * arr + k2) ** 2
    return out if np.ndim(p) else float(out)


def single_valuedness_defect(state: BoundState) -> float:
    """Distance of eta - xi from the nearest integer.

    Shifting both arctans by pi multiplies psi by exp(2 pi i (xi - eta)).
    """
    d = state.eta - state.xi
    return abs(d - round(d))


def quantization_defect(state: BoundState) -> float:
    """|eta - xi - n| for a state that carries its intended ``n``."""
    return abs(state.eta - state.xi - state.n)


def normalize(state: BoundState, measure: str = "undeformed", tol: float = 1e-13) -> BoundState:
    """Fix ``norm_A`` so that the integral of |psi|^2 p^2 over p in [0, inf) is 1.

    ``measure="deformed"`` weights the integrand by 1/(1 + 3 beta p^2) instead.
    """
    from .oracles import quadrature

    unit = replace(state, norm_A=1.0)
    if measure == "undeformed":
        integrand = lambda p: density(unit, p)  # noqa: E731
    elif measure == "deformed":
        integrand = lambda p: density(unit, p) / (1.0 + 3.0 * unit.beta * p * p)  # noqa: E731
    else:
        raise ValueError(f"unknown measure {measure!r}")
    result = quadrature(integrand, 0.0, math.inf, tol=tol)
    return replace(state, norm_A=1.0 / math.sqrt(result.value))
