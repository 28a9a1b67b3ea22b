"""Oracle suite behind the ``verify`` command.

Each check returns a ``Check`` with the measured value, the tolerance it is
held to (a number for upper limits, a ``[lo, hi]`` pair for ranges, or a
``">= x"`` lower limit) and the verdict. Checks never raise on failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import bounds, operators, oracles, spectrum

Tolerance = Union[float, list]

N_RANGE = range(1, 11)
BETA_MATRIX = (0.0, 1e-8, 1e-6, 1e-4)
SERIES_BETAS = (1e-8, 1e-7, 1e-6)
ODE_STATES = [(n, b) for n in (1, 2, 3) for b in (0.0, 1e-6, 1e-4)]
ODE_GRID = np.logspace(-2.0, 2.0, 500)
RK4_P1 = 5.0
RK4_STEPS = 20000
RK4_ORDER_STEPS = (1000, 2000, 4000)


@dataclass(frozen=True)
class Check:
    check_name: str
    measured: float
    tolerance: Tolerance
    passed: bool

    def as_row(self) -> dict:
        return {
            "check_name": self.check_name,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def at_most(name: str, measured: float, tol: float) -> Check:
    return Check(name, float(measured), tol, bool(measured <= tol))


def at_least(name: str, measured: float, floor: float) -> Check:
    return Check(name, float(measured), f">= {floor:g}", bool(measured >= floor))


def within(name: str, measured: float, lo: float, hi: float) -> Check:
    return Check(name, float(measured), [lo, hi], bool(lo <= measured <= hi))


def check_undeformed_limit() -> list[Check]:
    err = max(abs(spectrum.energy_exact(n, 0.0) / (-0.5 / n**2) - 1.0) for n in N_RANGE)
    return [at_most("undeformed_energy_rel_err", err, 1e-12)]


def check_root_agreement() -> list[Check]:
    rel = 0.0
    lhs = 0.0
    for n in N_RANGE:
        for beta in BETA_MATRIX:
            kc = spectrum.solve_k_closed_form(n, beta)
            kn = oracles.solve_k_numeric(n, beta)
            rel = max(rel, abs(kc - kn) / kc)
            lhs = max(lhs, abs(spectrum.quantization_lhs(kc, beta) - n))
    return [
        at_most("closed_form_vs_numeric_k_rel", rel, 1e-11),
        at_most("quantization_lhs_residual", lhs, 1e-12),
    ]


def sqrt_beta_coefficient(n: int, beta: float = 1e-8) -> float:
    """Coefficient of sqrt(beta) in energy_exact, by Richardson extrapolation in t = sqrt(beta)."""
    e0 = spectrum.energy_exact(n, 0.0)
    t = math.sqrt(beta)

    def slope(tt):
        return (spectrum.energy_exact(n, tt * tt) - e0) / tt

    return 2.0 * slope(t / 2.0) - slope(t)


def check_series() -> list[Check]:
    diffs = [abs(spectrum.energy_exact(1, b) - spectrum.energy_series(1, b)) for b in SERIES_BETAS]
    exponent = operators.fitted_exponent(SERIES_BETAS, diffs)
    coef_err = max(
        abs(sqrt_beta_coefficient(n) / (math.sqrt(3.0) / n**3) - 1.0) for n in (1, 2, 3)
    )
    return [
        within("series_remainder_exponent", exponent, 1.4, 1.6),
        at_most("sqrt_beta_coefficient_rel_err", coef_err, 1e-4),
    ]


def check_factorization(beta: float = 1e-3) -> list[Check]:
    betas = (beta, beta / 2.0, beta / 4.0)
    exponent, _ = operators.residual_scaling(betas)
    r = operators.r_hat(beta)
    c = operators.compose(r, r)
    p = operators.DEFAULT_GRID
    _, c1, _ = c.coefficients(p)
    expected = operators.IHBAR**2 * (2.0 / p) * (1.0 + 3.0 * beta * p * p) * (1.0 + 4.0 * beta * p * p)
    c1_err = float(np.max(np.abs(c1 - expected) / np.abs(expected)))
    return [
        within("factorization_residual_exponent", exponent, 1.9, 2.1),
        at_most("composed_c1_rel_err", c1_err, 1e-12),
    ]


def check_ode(flip_sign: bool = False) -> list[Check]:
    worst_res = 0.0
    worst_rk4 = 0.0
    orders = []
    for n, beta in ODE_STATES:
        st = spectrum.bound_state(n, beta)
        worst_res = max(worst_res, float(np.max(oracles.ode_residual(st, ODE_GRID, flip_sign=flip_sign))))
        p0 = 0.05 * st.k
        rep = oracles.integrate_ode(st, p0, RK4_P1, RK4_STEPS, flip_sign=flip_sign)
        worst_rk4 = max(worst_rk4, rep.max_relative_error)
        errs = [
            oracles.integrate_ode(st, p0, RK4_P1, s, flip_sign=flip_sign).max_relative_error
            for s in RK4_ORDER_STEPS
        ]
        orders.append(operators.fitted_exponent(RK4_ORDER_STEPS, errs) * -1.0)
    checks = [
        at_most("ode_residual_max", worst_res, 1e-10),
        at_most("rk4_vs_analytic_rel_err", worst_rk4, 1e-7),
    ]
    lo, hi = min(orders), max(orders)
    bad = lo if abs(lo - 4.0) > abs(hi - 4.0) else hi
    checks.append(within("rk4_convergence_order", bad, 3.8, 4.2))
    return checks


def check_single_valuedness() -> list[Check]:
    worst = 0.0
    weakest_detuned = math.inf
    for n in N_RANGE:
        for beta in BETA_MATRIX:
            st = spectrum.bound_state(n, beta)
            worst = max(worst, spectrum.quantization_defect(st))
            off = spectrum.state_at(st.k * (1.0 + 1e-3), beta, n)
            weakest_detuned = min(weakest_detuned, spectrum.quantization_defect(off))
    return [
        at_most("single_valuedness_defect", worst, 1e-10),
        at_least("detuned_defect", weakest_detuned, 1e-4),
    ]


def check_relative_shift() -> list[Check]:
    series, exact = spectrum.relative_shift_1s2s(1e-6)
    zero = spectrum.relative_shift_1s2s(0.0)
    return [
        at_most("relative_shift_series_vs_exact", abs(series - exact), 1e-7),
        at_most("relative_shift_beta0_err", max(abs(zero.series + 0.75), abs(zero.exact + 0.75)), 0.0),
    ]


def check_bounds() -> list[Check]:
    b1 = bounds.bound_from_1s2s()
    b2 = bounds.bound_from_lamb()
    return [
        within("bound_1s2s_fm", b1.delta_x_min_fm, 3e-9, 6e-9),
        within("bound_lamb_fm", b2.delta_x_min_fm, 7e-7, 1.2e-6),
    ]


def check_normalization() -> list[Check]:
    st = spectrum.normalize(spectrum.bound_state(1, 0.0))
    return [at_most("norm_A_rel_err", abs(st.norm_A / (2.0 / math.sqrt(math.pi)) - 1.0), 1e-8)]


def check_rejected_branch() -> list[Check]:
    betas = (1e-8, 1e-7, 1e-6)
    mags = [abs(spectrum.rejected_branch_energy(1, b)) for b in betas]
    return [within("rejected_branch_loglog_slope", operators.fitted_exponent(betas, mags), -1.05, -0.95)]


def run_all(beta: float = 1e-3, flip_sign: bool = False) -> list[Check]:
    """All checks; ``beta`` sets the largest factorization parameter."""
    suites: list[Callable[[], list[Check]]] = [
        check_undeformed_limit,
        check_root_agreement,
        check_series,
        lambda: check_factorization(beta),
        lambda: check_ode(flip_sign),
        check_single_valuedness,
        check_relative_shift,
        check_bounds,
        check_normalization,
        check_rejected_branch,
    ]
    out: list[Check] = []
    for suite in suites:
        out.extend(suite())
    return out
