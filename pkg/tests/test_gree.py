"""Tests for the border families, the inner minimization, and the GREE
searches (full, symmetric, and squeezed-thermal routes)."""

import math

import numpy as np
import pytest

from gree import (
    BorderParams,
    NumericalGuardError,
    SymmetricParams,
    ValidationError,
    border_em,
    border_x_prime,
    bosonic_entropy,
    check_physical,
    elementary_transform,
    em_to_cm,
    fold_cross_terms,
    gree,
    gree_symmetric,
    gree_tmst,
    inner_minimize,
    is_separable,
    relative_entropy,
    standard_cm,
    symmetric_cm,
    tmst_cm,
    tmsv_cm,
    xy_strip,
)
from conftest import draw_separable_cm


def border_equality_residual(label, gamma_a, gamma_b, shape, x_prime):
    """Residual of the defining equality for the type I/II x' branch."""
    lhs = (2.0 * gamma_a**2 - 0.5) * (2.0 * gamma_b**2 - 0.5)
    t = x_prime**2 + x_prime**-2
    if label == "I":
        strength = math.sinh(2.0 * shape) ** 2
        rhs = strength * (t * gamma_a * gamma_b + gamma_a**2 + gamma_b**2)
    else:
        strength = math.sin(2.0 * shape) ** 2
        rhs = strength * (t * gamma_a * gamma_b - gamma_a**2 - gamma_b**2)
    return (lhs - rhs) / max(1.0, abs(lhs))


@pytest.mark.parametrize(
    "label, gamma_a, gamma_b, shape",
    [
        ("I", 1.2, 0.9, 0.3),
        ("I", 0.7, 2.1, -0.25),
        ("I", 1.5, 1.5, 0.4),
        ("II", 1.3, 0.8, 0.4),
        ("II", 2.0, 1.1, 1.2),
    ],
)
def test_border_x_prime_satisfies_defining_equality(label, gamma_a, gamma_b, shape):
    x_prime = border_x_prime(label, gamma_a, gamma_b, shape)
    assert x_prime >= 1.0
    assert abs(border_equality_residual(label, gamma_a, gamma_b, shape, x_prime)) < 1e-10


def test_border_x_prime_domain_errors():
    with pytest.raises(ValidationError):
        border_x_prime("III", 1.2, 0.9, 1.0)
    with pytest.raises(ValidationError):
        border_x_prime("I", 0.5, 0.9, 0.3)
    # strong squeezing of near-pure gammas pushes t below 2
    with pytest.raises(NumericalGuardError, match="t ="):
        border_x_prime("I", 0.6, 0.6, 3.0)
    with pytest.raises(NumericalGuardError):
        border_x_prime("I", 1.2, 0.9, 0.0)
    # equal near-pure gammas at full rotation collapse x' onto its open
    # lower bound
    with pytest.raises(NumericalGuardError, match="range"):
        border_x_prime("II", 0.5 + 1e-9, 0.5 + 1e-9, math.pi / 4)


BORDER_POINTS = [
    BorderParams("I", 1.2, 0.9, 0.3, border_x_prime("I", 1.2, 0.9, 0.3)),
    BorderParams("I", 0.7, 2.1, -0.25, border_x_prime("I", 0.7, 2.1, -0.25)),
    BorderParams("II", 1.3, 0.8, 0.4, border_x_prime("II", 1.3, 0.8, 0.4)),
    BorderParams("III", 1.4, 0.9, 1.0, 1.0),
    BorderParams("III", 1.4, 0.9, 2.0, 1.0),
    BorderParams("IV", 1.1, 0.8, 0.0, 1.0),
]


@pytest.mark.parametrize("params", BORDER_POINTS, ids=lambda p: "%s-%g" % (p.label, p.shape))
def test_border_em_sits_on_the_border(params):
    m = border_em(params)
    assert np.allclose(m, m.T)
    assert np.linalg.eigvalsh(m)[0] > 0
    alpha = em_to_cm(m)
    check_physical(alpha)
    separable, residual = is_separable(alpha)
    assert separable
    assert abs(residual) < 1e-8


def test_border_em_rejects_near_pure_gammas():
    with pytest.raises(NumericalGuardError):
        border_em(BorderParams("IV", 0.5, 0.9, 0.0, 1.0))


def stationarity_roots(alpha_sf, m_std):
    """Positive feasible roots of d/dx [P(x) Q(x)] = 0.

    Clearing denominators from the product rule leaves the quartic
    2pq x^4 + (pt + qs) x^3 - (ps + qt) x - 2pq = 0 with p = alpha1 M1,
    q = alpha3 M3, s = 2 alpha2 M2, t = 2 alpha4 M4.
    """
    a1, a2, a3, a4 = alpha_sf
    m1, m2, m3, m4 = m_std
    p, q = a1 * m1, a3 * m3
    s, t = 2.0 * a2 * m2, 2.0 * a4 * m4
    roots = np.roots([2.0 * p * q, p * t + q * s, 0.0, -(p * s + q * t), -2.0 * p * q])
    out = []
    for r in roots:
        if abs(r.imag) > 1e-9 * (1.0 + abs(r)) or r.real <= 0:
            continue
        x = r.real
        pv = p * x + q / x + s
        qv = p / x + q * x + t
        if pv > 0 and qv > 0:
            out.append((math.sqrt(pv * qv), x))
    return sorted(out)


@pytest.mark.parametrize(
    "alpha_sf, source",
    [
        ((1.4, 0.6, 1.1, -0.5), BORDER_POINTS[0]),
        ((2.0, 0.9, 0.8, -0.2), BORDER_POINTS[2]),
        ((0.9, 0.25, 1.6, -0.7), BORDER_POINTS[3]),
        ((1.1, 0.5, 1.1, -0.5), BORDER_POINTS[5]),
    ],
)
def test_inner_minimize_agrees_with_stationarity_roots(alpha_sf, source):
    m1, ms2, m3, ms4 = xy_strip(border_em(source))
    m2, m4 = fold_cross_terms(ms2, ms4)
    state = inner_minimize(alpha_sf, (m1, m2, m3, m4))
    roots = stationarity_roots(alpha_sf, (m1, m2, m3, m4))
    assert roots, "the stationarity quartic lost all feasible roots"
    best_value, best_x = roots[0]
    assert abs(state.half_trace - best_value) < 1e-9 * max(1.0, best_value)
    assert abs(state.x_opt - best_x) < 1e-5 * best_x


def test_inner_minimize_matches_explicit_trace():
    a1, a2, a3, a4 = 1.4, 0.6, 1.1, -0.5
    m1, ms2, m3, ms4 = xy_strip(border_em(BORDER_POINTS[0]))
    m2, m4 = fold_cross_terms(ms2, ms4)
    state = inner_minimize((a1, a2, a3, a4), (m1, m2, m3, m4))
    x, y = state.x_opt, state.y_opt
    s = np.diag(
        [
            math.sqrt(x * y),
            math.sqrt(y / x),
            1.0 / math.sqrt(x * y),
            math.sqrt(x / y),
        ]
    )
    m_std = np.zeros((4, 4))
    m_std[:2, :2] = [[m1, m2], [m2, m3]]
    m_std[2:, 2:] = [[m1, m4], [m4, m3]]
    alpha = standard_cm(a1, a3, a2, -a4)
    half_trace = 0.5 * np.trace(alpha @ s @ m_std @ s.T)
    assert abs(state.half_trace - half_trace) < 1e-12 * max(1.0, half_trace)
    # y is eliminated in closed form, so the trace is stationary in y
    for y_off in (0.999, 1.001):
        s_off = s @ np.diag([math.sqrt(y_off)] * 2 + [1.0 / math.sqrt(y_off)] * 2)
        assert 0.5 * np.trace(alpha @ s_off @ m_std @ s_off.T) >= half_trace


def test_inner_minimize_validation():
    with pytest.raises(ValidationError):
        inner_minimize((1.0, 0.5, -1.0, -0.4), (1.0, -0.5, 1.0, -0.2))
    with pytest.raises(ValidationError):
        inner_minimize((1.0, -0.5, 1.0, 0.4), (1.0, -0.5, 1.0, -0.2))


def test_xy_strip_requires_decorrelated_em():
    m = np.eye(4)
    m[0, 2] = m[2, 0] = 0.2
    with pytest.raises(ValidationError):
        xy_strip(m)


def test_gree_separable_state_returns_zero():
    rng = np.random.default_rng(11)
    alpha = draw_separable_cm(rng)
    res = gree(alpha)
    assert res.value == 0.0
    assert res.label is None and res.params is None
    assert res.diagnostics["separable"] is True
    assert res.diagnostics["rho_border_residual"] >= -1e-12


def test_gree_tmsv_increases_with_squeezing():
    values = [gree(tmsv_cm(r), starts=6).value for r in (0.2, 0.5, 0.8)]
    assert values[0] < values[1] < values[2]
    # the Schmidt entropy bounds the Gaussian measure from below (the
    # closest separable state of a pure state is not Gaussian, so the
    # bound is not tight)
    for r, value in zip((0.2, 0.5, 0.8), values):
        assert value >= bosonic_entropy(math.sinh(r) ** 2) - 1e-4


def test_gree_local_symplectic_invariance():
    alpha = standard_cm(1.2, 0.9, 0.7, 0.6)
    assert not is_separable(alpha)[0]
    s = elementary_transform("general_local", (0.4, -0.3, 0.2, -0.1, 0.5, 0.2))
    res = gree(alpha, starts=12)
    res_moved = gree(s @ alpha @ s.T, starts=12)
    assert abs(res.value - res_moved.value) < 1e-6 * max(1.0, res.value)


def test_gree_value_is_attained_by_best_em():
    alpha = standard_cm(1.2, 0.9, 0.7, 0.6)
    res = gree(alpha, starts=8)
    m = res.best_em
    assert np.allclose(m, m.T)
    sigma = em_to_cm(m)
    separable, residual = is_separable(sigma)
    assert separable
    assert abs(residual) < 1e-8
    assert abs(residual - res.diagnostics["border_residual"]) < 1e-15
    attained = relative_entropy(alpha, m, sigma_kind="em").value
    assert abs(res.value - attained) < 1e-8 * max(1.0, attained)


def test_gree_per_type_minimum_is_the_value():
    alpha = standard_cm(1.2, 0.9, 0.7, 0.6)
    res = gree(alpha, starts=8)
    per_type = res.diagnostics["per_type"]
    assert list(per_type) == [t for t in ("I", "II", "III", "IV") if t in per_type]
    assert math.isclose(min(per_type.values()), res.value, rel_tol=0, abs_tol=1e-12)
    assert per_type[res.label] == min(per_type.values())


def test_gree_same_seed_is_reproducible():
    alpha = standard_cm(1.2, 0.9, 0.7, 0.6)
    first = gree(alpha, starts=6, seed=3)
    second = gree(alpha, starts=6, seed=3)
    assert first.value == second.value
    assert first.label == second.label
    assert first.params == second.params
    assert np.array_equal(first.best_em, second.best_em)


def test_gree_families_restriction():
    alpha = standard_cm(1.2, 0.9, 0.7, 0.6)
    res = gree(alpha, starts=6, families=("III",))
    assert res.label == "III"
    assert set(res.diagnostics["per_type"]) == {"III"}
    with pytest.raises(ValidationError):
        gree(alpha, families=("V",))


def test_gree_symmetric_route_matches_full_search():
    p = SymmetricParams(m=2.0, kq=1.2, kp=1.0)
    alpha = symmetric_cm(p)
    assert not is_separable(alpha)[0]
    res_sym = gree_symmetric(p)
    res_full = gree(alpha, starts=16)
    assert abs(res_sym.value - res_full.value) < 1e-4
    assert res_sym.label == "IV"
    assert abs(res_sym.diagnostics["border_residual"]) < 1e-8
    assert math.isfinite(res_sym.diagnostics["alt_reading_residual"])


def test_gree_tmst_route_agreement_and_balanced_minimizer():
    m, k = 1.5, 0.9
    res_tmst = gree_tmst(m, k)
    res_sym = gree_symmetric(SymmetricParams(m=m, kq=k, kp=k))
    res_full = gree(tmst_cm(m, k), starts=12)
    assert abs(res_tmst.value - res_sym.value) < 1e-8
    assert abs(res_tmst.value - res_full.value) < 1e-4
    # the squeezed-thermal minimizer has equal EM eigenvalues per mode
    assert abs(res_sym.params.gamma_a - res_sym.params.gamma_b) < 1e-6
    assert res_tmst.params.gamma_a == res_tmst.params.gamma_b
    _, residual = is_separable(em_to_cm(res_tmst.best_em))
    assert abs(residual) < 1e-8


def test_gree_separable_routes_return_zero():
    p = SymmetricParams(m=1.6, kq=0.2, kp=0.1)
    assert is_separable(symmetric_cm(p))[0]
    assert gree_symmetric(p).value == 0.0
    assert gree_tmst(1.6, 0.2).value == 0.0
