import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from minlen_hydrogen.operators import (
    DEFAULT_GRID,
    ContractError,
    FirstOrderOperator,
    TestFunction,
    compose,
    factorization_residual,
    fitted_exponent,
    gaussian,
    r2_exact,
    r2_linearized,
    r_hat,
    residual_scaling,
)

P = np.array([0.05, 0.3, 1.0, 2.0, 7.5, 40.0])


def power(k):
    return TestFunction(
        f=lambda p: p**k,
        df=lambda p: k * p ** (k - 1),
        d2f=lambda p: k * (k - 1) * p ** (k - 2),
    )


def test_gaussian_derivatives_consistent():
    assert gaussian().check_derivatives([0.1, 0.5, 1.0, 2.0]) < 1e-6


def test_wrong_derivative_detected():
    bad = TestFunction(f=np.sin, df=np.sin, d2f=lambda p: -np.sin(p))
    with pytest.raises(ContractError):
        bad.check_derivatives([0.3, 1.0])


def test_r2_exact_undeformed():
    c2, c1, c0 = r2_exact(0.0, 0.0).coefficients(P)
    np.testing.assert_allclose(c2, -1.0)
    np.testing.assert_allclose(c1, -2.0 / P)
    np.testing.assert_array_equal(c0, 0.0)


def test_r2_exact_c2_multiplier():
    c2, _, _ = r2_exact(1e-3, 2e-3).coefficients([1.0])
    assert -c2[0].real == pytest.approx(1.006009, rel=1e-14)


def test_r2_exact_on_p_squared():
    out = r2_exact(0.0, 0.0).apply(power(2), P)
    np.testing.assert_allclose(out, -6.0, rtol=1e-14)


def test_zero_function_maps_to_zero():
    zero = TestFunction(f=lambda p: 0 * p, df=lambda p: 0 * p, d2f=lambda p: 0 * p)
    for op in (r2_exact(0.1, 0.3), r2_linearized(0.1), compose(r_hat(0.1), r_hat(0.1))):
        np.testing.assert_array_equal(op.apply(zero, P), 0)


def test_linearized_equals_exact_at_beta0():
    a = r2_linearized(0.0).coefficients(P)
    b = r2_exact(0.0, 0.0).coefficients(P)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)


@pytest.mark.parametrize("beta", [1e-4, 1e-3, 0.05])
def test_linearized_differs_by_beta_squared_terms(beta):
    ex = r2_exact(beta, 2 * beta).coefficients(P)
    lin = r2_linearized(beta).coefficients(P)
    np.testing.assert_allclose(ex[0] - lin[0], -9 * beta**2 * P**4, rtol=1e-6, atol=1e-15)
    np.testing.assert_allclose(ex[1] - lin[1], -(2 / P) * 12 * beta**2 * P**4, rtol=1e-6, atol=1e-15)


def test_r_hat_examples():
    inv = TestFunction(f=lambda p: 1 / p, df=lambda p: -1 / p**2, d2f=lambda p: 2 / p**3)
    np.testing.assert_allclose(r_hat(0.0).apply(inv, P), 0.0, atol=1e-12)
    np.testing.assert_allclose(r_hat(0.0).apply(power(0), P), 1j / P, rtol=1e-15)
    assert r_hat(1e-3).apply(power(1), 2.0) == pytest.approx(2.016j, rel=1e-14)


def test_compose_undeformed_matches_linearized():
    c = compose(r_hat(0.0), r_hat(0.0)).coefficients(P)
    np.testing.assert_allclose(c[0], -1.0)
    np.testing.assert_allclose(c[1], -2.0 / P)
    np.testing.assert_allclose(c[2], 0.0, atol=1e-12)


def test_compose_requires_derivatives():
    bare = FirstOrderOperator(a=lambda p: p, b=lambda p: p)
    with pytest.raises(ContractError):
        compose(r_hat(0.1), bare)


def _sympy_composition():
    p, b = sp.symbols("p beta", positive=True)
    f = sp.Function("f")(p)
    a_, b_ = 1 + 3 * b * p**2, (1 + b * p**2) / p

    def R(g):
        return sp.I * (a_ * sp.diff(g, p) + b_ * g)

    expr = sp.expand(R(R(f)))
    d2, d1 = sp.diff(f, p, 2), sp.diff(f, p)
    c2 = expr.coeff(d2)
    c1 = sp.expand(expr - c2 * d2).coeff(d1)
    c0 = sp.simplify(sp.expand(expr - c2 * d2 - c1 * d1) / f)
    return p, b, [sp.lambdify((p, b), sp.simplify(c)) for c in (c2, c1, c0)]


SYMPY = _sympy_composition()


@pytest.mark.parametrize("beta", [0.0, 1e-4, 1e-2, 0.3])
def test_compose_matches_symbolic_oracle(beta):
    _, _, funcs = SYMPY
    ours = compose(r_hat(beta), r_hat(beta)).coefficients(P)
    for mine, ref in zip(ours, funcs):
        # c0 cancels terms of size 1/p^2, so rounding is absolute at that scale
        atol = 1e-14 * (1 + 1 / P**2)
        assert np.all(np.abs(mine - np.broadcast_to(ref(P, beta), P.shape)) <= 1e-12 * np.abs(mine) + atol)


@pytest.mark.parametrize("beta", [1e-4, 1e-2])
def test_c1_equals_exact_operator_and_c0_is_4beta2p2(beta):
    c = compose(r_hat(beta), r_hat(beta)).coefficients(P)
    ex = r2_exact(beta, 2 * beta).coefficients(P)
    np.testing.assert_allclose(c[1], ex[1], rtol=1e-12)
    assert np.all(np.abs(c[2] + 4 * beta**2 * P**2) <= 1e-6 * 4 * beta**2 * P**2 + 1e-14 / P**2)


def test_compose_minus_exact_scales_as_beta_squared():
    diffs = []
    betas = [1e-3, 5e-4, 2.5e-4]
    for beta in betas:
        c = compose(r_hat(beta), r_hat(beta)).coefficients([1.5])
        ex = r2_exact(beta, 2 * beta).coefficients([1.5])
        diffs.append(abs(c[0][0] - ex[0][0]) + abs(c[2][0] - ex[2][0]))
    assert fitted_exponent(betas, diffs) == pytest.approx(2.0, abs=0.01)


def test_factorization_residual_beta0():
    assert factorization_residual(0.0) < 1e-14


def test_factorization_residual_halving_ratio():
    ratio = factorization_residual(1e-5) / factorization_residual(5e-6)
    assert ratio == pytest.approx(4.0, rel=1e-4)


def test_factorization_residual_scale():
    fn = gaussian()
    scale = float(np.max(np.abs(r2_linearized(1e-4).apply(fn, DEFAULT_GRID))))
    assert factorization_residual(1e-4, fn) <= 1e-6 * scale


def test_residual_scaling_exponent():
    exponent, _ = residual_scaling()
    assert 1.9 <= exponent <= 2.1


def test_grid_must_be_positive():
    with pytest.raises(ContractError):
        factorization_residual(1e-3, grid=[0.0, 1.0])


@settings(max_examples=50)
@given(
    st.floats(min_value=0.0, max_value=1e-2),
    st.floats(min_value=-5, max_value=5),
    st.floats(min_value=-5, max_value=5),
)
def test_operator_linearity(beta, x, y):
    f = gaussian()
    g = power(3)
    combo = TestFunction(
        f=lambda p: x * f.f(p) + y * g.f(p),
        df=lambda p: x * f.df(p) + y * g.df(p),
        d2f=lambda p: x * f.d2f(p) + y * g.d2f(p),
    )
    for op in (r2_exact(beta, 2 * beta), compose(r_hat(beta), r_hat(beta))):
        lhs = op.apply(combo, P)
        rhs = x * op.apply(f, P) + y * op.apply(g, P)
        scale = np.abs(x * op.apply(f, P)) + np.abs(y * op.apply(g, P)) + 1e-300
        assert np.all(np.abs(lhs - rhs) <= 1e-12 * scale + 1e-300)
