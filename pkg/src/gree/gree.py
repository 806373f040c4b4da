"""Gaussian relative entropy of entanglement (GREE) of two-mode states.

GREE minimizes S(rho||sigma) over separable Gaussian sigma; the minimum is
attained on the separable/inseparable border, which for two modes is
covered by four families of border exponential matrices (types I-IV).
The outer search runs over each family's two or three parameters; every
candidate is completed by closed-form y-elimination and a 1-D search in
the local squeeze x.  Symmetric states admit a two-variable objective and
two-mode squeezed thermal states a one-variable one; both are provided as
independent routes.
"""

import math
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from .errors import NumericalGuardError, SearchFailureError, ValidationError
from .gaussian import (
    PURITY_EPS,
    SymmetricParams,
    bosonic_entropy,
    check_physical,
    classify,
    cm_to_em,
    em_spectrum,
    em_to_cm,
    is_separable,
    standard_form,
    symmetric_cm,
    symmetric_em,
    symmetric_gammas,
)
from .symplectic import elementary_transform

# search-domain floor on gamma - 1/2 for border states
PURITY_FLOOR_GAP = 1e-7
# x' beyond this is treated as an unreachable border point
X_PRIME_CAP = 1e6
# bracket for the inner minimization over log x
LOG_X_BRACKET = 6.0

_TYPE_ORDER = {"I": 0, "II": 1, "III": 2, "IV": 3}


class BorderParams(NamedTuple):
    """A point in one of the border families.

    shape is r for type I, theta for type II, the kind flag (1.0 or 2.0)
    for type III and 0.0 for type IV; x_prime is derived for types I/II
    and fixed at 1.0 otherwise."""

    label: str
    gamma_a: float
    gamma_b: float
    shape: float
    x_prime: float


class InnerMinState(NamedTuple):
    """Result of the local-squeeze minimization of (1/2) Tr(alpha M):
    alpha_sf = (alpha1..alpha4), m_std = folded (M1..M4)."""

    alpha_sf: Tuple[float, float, float, float]
    m_std: Tuple[float, float, float, float]
    x_opt: float
    y_opt: float
    half_trace: float


class GreeResult(NamedTuple):
    """GREE value (nats) with the best border family, its parameters, the
    minimizing EM in the input frame, and search diagnostics."""

    value: float
    label: Optional[str]
    params: Optional[BorderParams]
    best_em: Optional[np.ndarray]
    diagnostics: dict


def _coth(x: float) -> float:
    return 1.0 / math.tanh(x)


def border_x_prime(label: str, gamma_a: float, gamma_b: float, shape: float) -> float:
    """The derived squeeze x' putting (gamma_a, gamma_b, shape) on the border.

    Solves the type I equality
    (2 gamma_A^2 - 1/2)(2 gamma_B^2 - 1/2)
        = sinh^2(2r) [(x'^2 + x'^-2) gamma_A gamma_B + gamma_A^2 + gamma_B^2]
    (type II: sin^2(2 theta) and a minus sign on the last bracket term) for
    t = x'^2 + x'^-2 and returns the branch x' = sqrt((t + sqrt(t^2-4))/2).

    Args:
        label: "I" or "II".
        gamma_a, gamma_b: border-state symplectic eigenvalues, > 1/2.
        shape: r for type I, theta for type II; must give a nonzero
            squeeze/rotation.

    Raises:
        NumericalGuardError: t < 2 (no border state at these parameters)
            or the type II admissibility range is violated.
    """
    if label not in ("I", "II"):
        raise ValidationError("x' is defined for types I and II only")
    if min(gamma_a, gamma_b) <= 0.5:
        raise ValidationError("border gammas must exceed 1/2")
    lhs = (2.0 * gamma_a**2 - 0.5) * (2.0 * gamma_b**2 - 0.5)
    strength = math.sinh(2.0 * shape) ** 2 if label == "I" else math.sin(2.0 * shape) ** 2
    if strength < 1e-300:
        raise NumericalGuardError("degenerate shape parameter: x' out of domain")
    cross = gamma_a**2 + gamma_b**2
    if label == "I":
        t = (lhs / strength - cross) / (gamma_a * gamma_b)
    else:
        t = (lhs / strength + cross) / (gamma_a * gamma_b)
    if t < 2.0:
        raise NumericalGuardError(
            "no border state at these parameters (t = %.6g < 2)" % t
        )
    x_prime = math.sqrt(0.5 * (t + math.sqrt(t * t - 4.0)))
    if label == "II":
        low = max(math.sqrt(gamma_a / gamma_b), math.sqrt(gamma_b / gamma_a))
        if x_prime <= low:
            raise NumericalGuardError("type II x' range violation")
    return x_prime


def _local_pair(s_q: np.ndarray) -> np.ndarray:
    """Assemble S = S_q (+) (S_q^T)^-1 in qqpp ordering."""
    s = np.zeros((4, 4))
    s[:2, :2] = s_q
    s[2:, 2:] = np.linalg.inv(s_q.T)
    return s


def border_em(params: BorderParams) -> np.ndarray:
    """Exponential matrix of the border state described by params.

    Types I/II congruence-transform Mtilde by X(x') and the two-mode
    squeeze/rotation; types III/IV use the closed-form S_q matrices with
    delta = (gamma_A^2 - 1/4)(gamma_B^2 - 1/4).

    Args:
        params: family point; gammas must be strictly mixed.

    Returns:
        Symmetric positive-definite 4x4 EM whose state lies on the
        separable border.
    """
    ga, gb = params.gamma_a, params.gamma_b
    if min(ga, gb) <= 0.5 + PURITY_EPS:
        raise NumericalGuardError("border gamma too close to 1/2")
    mta, mtb = em_spectrum(np.array([ga, gb]))
    mtilde = np.diag([mta, mtb, mta, mtb])

    if params.label in ("I", "II"):
        if not params.x_prime > 0:
            raise ValidationError("x_prime must be precomputed for types I/II")
        x_op = elementary_transform("local_squeeze_X", params.x_prime)
        if params.label == "I":
            g_op = elementary_transform("two_mode_squeeze_qq", params.shape)
        else:
            g_op = elementary_transform("two_mode_rotation_qq", params.shape)
        m = g_op.T @ x_op @ mtilde @ x_op @ g_op
    elif params.label == "III":
        delta = (ga**2 - 0.25) * (gb**2 - 0.25)
        if int(params.shape) == 1:
            s_q = np.array(
                [
                    [(1.0 + delta / ga**2) ** 0.25, 0.0],
                    [
                        (delta**2 / (ga**2 * (gb**2 + delta))) ** 0.25,
                        (gb**2 / (gb**2 + delta)) ** 0.25,
                    ],
                ]
            )
        elif int(params.shape) == 2:
            s_q = np.array(
                [
                    [
                        (ga**2 / (ga**2 + delta)) ** 0.25,
                        (delta**2 / (gb**2 * (ga**2 + delta))) ** 0.25,
                    ],
                    [0.0, (1.0 + delta / gb**2) ** 0.25],
                ]
            )
        else:
            raise ValidationError("type III kind must be 1 or 2")
        s_inv = np.linalg.inv(_local_pair(s_q))
        m = s_inv.T @ mtilde @ s_inv
    elif params.label == "IV":
        s1 = (4.0 * ga**2 * (4.0 * gb**2 + 1.0) / (4.0 * ga**2 + 1.0)) ** 0.25
        s2 = ((4.0 * gb**2 + 1.0) / (4.0 * gb**2 * (4.0 * ga**2 + 1.0))) ** 0.25
        s_q = np.array([[s1, s2], [s1, -s2]]) / math.sqrt(2.0)
        s_inv = np.linalg.inv(_local_pair(s_q))
        m = s_inv.T @ mtilde @ s_inv
    else:
        raise ValidationError("unknown border type %r" % (params.label,))
    return 0.5 * (m + m.T)


def xy_strip(m: np.ndarray) -> Tuple[float, float, float, float]:
    """Remove the X(x)Y(y) freedom from a q-p decorrelated EM.

    Returns the canonical parameters (M1, Ms2, M3, Ms4) of the EM with
    equal per-mode diagonals in the q and p blocks; the input is
    X(x0)Y(y0)-congruent to that canonical form.

    Args:
        m: symmetric 4x4 EM with vanishing q-p cross block.
    """
    m = np.asarray(m, dtype=float)
    scale = max(1.0, float(np.max(np.abs(m))))
    if m.shape != (4, 4) or float(np.max(np.abs(m - m.T))) > 1e-10 * scale:
        raise ValidationError("expected a symmetric 4x4 EM")
    if float(np.max(np.abs(m[:2, 2:]))) > 1e-10 * scale:
        raise ValidationError("EM has q-p correlations; strip is undefined")
    a1, a2, a3 = m[0, 0], m[0, 1], m[1, 1]
    b1, b2, b3 = m[2, 2], m[2, 3], m[3, 3]
    if min(a1, a3, b1, b3) <= 0:
        raise NumericalGuardError("EM diagonal is not positive")
    m1 = math.sqrt(a1 * b1)
    m3 = math.sqrt(a3 * b3)
    y0 = (a1 * a3 / (b1 * b3)) ** 0.25
    return m1, a2 / y0, m3, b2 * y0


def fold_cross_terms(ms2: float, ms4: float) -> Tuple[float, float]:
    """Sign-fold the canonical off-diagonals:
    M2 = -(|Ms2+Ms4| + |Ms2-Ms4|)/2, M4 = -(|Ms2+Ms4| - |Ms2-Ms4|)/2,
    i.e. M2 = -max(|Ms2|, |Ms4|) and M4 = -sign(Ms2 Ms4) min(|Ms2|, |Ms4|),
    the orientation that minimizes the trace term against a standard-form
    CM with alpha2 > 0 > alpha4."""
    plus = abs(ms2 + ms4)
    minus = abs(ms2 - ms4)
    return -0.5 * (plus + minus), -0.5 * (plus - minus)


def _golden_min(fun, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Golden-section minimum of fun on [lo, hi] with a parabolic polish."""
    ratio = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - ratio * (b - a)
    d = a + ratio * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - ratio * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + ratio * (b - a)
            fd = fun(d)
    u = c if fc < fd else d
    fu = min(fc, fd)
    # one parabolic step through (a, u, b)
    fa, fb = fun(a), fun(b)
    den = (u - a) * (fu - fb) - (u - b) * (fu - fa)
    if abs(den) > 1e-300:
        v = u - 0.5 * ((u - a) ** 2 * (fu - fb) - (u - b) ** 2 * (fu - fa)) / den
        if lo < v < hi and fun(v) < fu:
            return v
    return u


def inner_minimize(
    alpha_sf: Sequence[float], m_std: Sequence[float]
) -> InnerMinState:
    """Minimize (1/2) Tr(alpha M(x, y)) over the local squeezes x, y > 0.

    With P(x) = a1 M1 x + a3 M3 / x + 2 a2 M2 and
    Q(x) = a1 M1 / x + a3 M3 x + 2 a4 M4, the y minimization is closed
    form: min_y (y P + Q/y)/2 = sqrt(P Q) at y = sqrt(Q/P); x is found by
    a bracketed scan plus golden-section on log x in [-6, 6].

    Args:
        alpha_sf: rho's standard-form parameters (a1, a2, a3, a4) with
            a2 > 0 > a4.
        m_std: folded EM parameters (M1, M2, M3, M4).

    Raises:
        NumericalGuardError: a factor under the square root is
            non-positive at the minimizer (invalid M parameters).
    """
    a1, a2, a3, a4 = (float(v) for v in alpha_sf)
    m1, m2, m3, m4 = (float(v) for v in m_std)
    if min(a1, a3) <= 0 or min(m1, m3) <= 0:
        raise ValidationError("diagonal parameters must be positive")
    if not (a2 > 0 > a4):
        raise ValidationError("expected the standard-form signs alpha2 > 0 > alpha4")
    p_c = a1 * m1
    q_c = a3 * m3
    s_c = 2.0 * a2 * m2
    t_c = 2.0 * a4 * m4

    def product(u: float) -> float:
        x = math.exp(u)
        p = p_c * x + q_c / x + s_c
        q = p_c / x + q_c * x + t_c
        if p <= 0.0 or q <= 0.0:
            return math.inf
        return p * q

    # coarse scan guards against the rare multi-valley instance, then a
    # golden-section refinement within the winning cell
    grid = np.linspace(-LOG_X_BRACKET, LOG_X_BRACKET, 25)
    values = [product(u) for u in grid]
    k = int(np.argmin(values))
    if not math.isfinite(values[k]):
        raise NumericalGuardError("trace factors non-positive on the whole bracket")
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    u_opt = _golden_min(product, lo, hi)
    x_opt = math.exp(u_opt)
    p = p_c * x_opt + q_c / x_opt + s_c
    q = p_c / x_opt + q_c * x_opt + t_c
    if p <= 0.0 or q <= 0.0:
        raise NumericalGuardError("trace factor non-positive at the minimizer")
    return InnerMinState(
        alpha_sf=(a1, a2, a3, a4),
        m_std=(m1, m2, m3, m4),
        x_opt=x_opt,
        y_opt=math.sqrt(q / p),
        half_trace=math.sqrt(p * q),
    )


def _standard_em(m1: float, m2: float, m3: float, m4: float) -> np.ndarray:
    out = np.zeros((4, 4))
    out[:2, :2] = [[m1, m2], [m2, m3]]
    out[2:, 2:] = [[m1, m4], [m4, m3]]
    return out


def _squeeze_xy(x: float, y: float) -> np.ndarray:
    return np.diag(
        [
            math.sqrt(x * y),
            math.sqrt(y / x),
            1.0 / math.sqrt(x * y),
            math.sqrt(x / y),
        ]
    )


def _self_term(gammas_rho: np.ndarray) -> float:
    return -float(sum(bosonic_entropy(max(g - 0.5, 0.0)) for g in gammas_rho))


def _neg_log_c(gamma_a: float, gamma_b: float) -> float:
    return 0.5 * (math.log(gamma_a**2 - 0.25) + math.log(gamma_b**2 - 0.25))


def _clamped(value: float) -> float:
    if value < 0.0:
        if value < -1e-10:
            raise NumericalGuardError("GREE came out %.3e < 0" % value)
        return 0.0
    return value


def _separable_result(alpha_rho: np.ndarray, gammas: np.ndarray, residual: float) -> GreeResult:
    try:
        best_em = cm_to_em(alpha_rho) if gammas[-1] > 0.5 + PURITY_EPS else None
    except NumericalGuardError:
        best_em = None
    return GreeResult(
        value=0.0,
        label=None,
        params=None,
        best_em=best_em,
        diagnostics={"separable": True, "rho_border_residual": residual},
    )


def gree(
    alpha_rho: np.ndarray,
    starts: int = 32,
    seed: int = 0,
    families: Optional[Sequence[str]] = None,
    tol: float = 1e-10,
) -> GreeResult:
    """GREE of a two-mode Gaussian state by search over border families.

    Separable input returns 0 immediately.  Otherwise the state is put in
    standard form and, for each family (I, II, III kind 1, III kind 2,
    IV), a multi-start simplex search runs over (gamma_A, gamma_B) plus
    the shape variable where present, each candidate completed by the
    inner x/y minimization.  Ties are broken by type order I < II < III
    < IV, then lexicographic parameters, so runs are reproducible.

    Args:
        alpha_rho: physical two-mode CM.
        starts: simplex starts per family (seeded from a coarse grid).
        seed: RNG seed for the jittered extra starts.
        families: labels to restrict the search to (default all four).
        tol: function tolerance of the simplex refinements.

    Returns:
        GreeResult with the value in nats, the winning family, its
        parameters, the minimizing EM transformed back to the input
        frame, and per-family minima in diagnostics.
    """
    alpha_rho = np.asarray(alpha_rho, dtype=float)
    if families is None:
        selected = ("I", "II", "III", "IV")
    else:
        selected = tuple(families)
        bad = set(selected) - set(_TYPE_ORDER)
        if bad or not selected:
            raise ValidationError("families must be a nonempty subset of I..IV")
    gammas_rho = check_physical(alpha_rho)
    separable, rho_residual = is_separable(alpha_rho)
    if separable:
        return _separable_result(alpha_rho, gammas_rho, rho_residual)

    sf = standard_form(alpha_rho)
    alpha_params = (sf.a, sf.c1, sf.b, -sf.c2)
    self_term = _self_term(gammas_rho)

    def evaluate(label, shape, ua, ub):
        if abs(ua) > 30.0 or abs(ub) > 30.0:
            return math.inf, None
        gap_a, gap_b = math.exp(ua), math.exp(ub)
        if min(gap_a, gap_b) < PURITY_FLOOR_GAP:
            return math.inf, None
        ga, gb = 0.5 + gap_a, 0.5 + gap_b
        try:
            if label in ("I", "II"):
                x_prime = border_x_prime(label, ga, gb, shape)
                if x_prime > X_PRIME_CAP:
                    return math.inf, None
                params = BorderParams(label, ga, gb, float(shape), x_prime)
            else:
                params = BorderParams(label, ga, gb, float(shape), 1.0)
            m_base = border_em(params)
            m1, ms2, m3, ms4 = xy_strip(m_base)
            m2, m4 = fold_cross_terms(ms2, ms4)
            inner = inner_minimize(alpha_params, (m1, m2, m3, m4))
        except (NumericalGuardError, ValidationError):
            return math.inf, None
        value = self_term + _neg_log_c(ga, gb) + inner.half_trace
        return value, (params, inner)

    rng = np.random.default_rng(seed)
    u_anchor = [math.log(max(g - 0.5, 1e-4)) for g in gammas_rho]
    u_grid = [-2.3, -0.7, 0.3, 1.2]
    shape_grid = [0.15, 0.4, 0.8, 1.3]

    family_plan = tuple(
        (label, shape)
        for label, shape in
        (("I", None), ("II", None), ("III", 1.0), ("III", 2.0), ("IV", 0.0))
        if label in selected
    )
    per_type: dict = {}
    best = None  # (value, order, params-tuple, aux)
    total_iters = 0
    nm_options = {"fatol": tol, "xatol": 1e-8, "maxiter": 600}

    for label, fixed_shape in family_plan:
        with_shape = fixed_shape is None

        def fun(v, label=label, fixed=fixed_shape):
            shape = v[2] if fixed is None else fixed
            return evaluate(label, shape, v[0], v[1])[0]

        pool = []
        for ua in u_anchor[:1] + u_grid:
            for ub in u_anchor[1:] + u_grid:
                if with_shape:
                    pool.extend((ua, ub, sh) for sh in shape_grid)
                else:
                    pool.append((ua, ub))
        pool.sort(key=fun)
        seeds = [np.array(p) for p in pool[:starts]]
        while len(seeds) < starts:
            seeds.append(seeds[len(seeds) % len(pool)] + 0.3 * rng.standard_normal(len(pool[0])))

        family_best = (math.inf, None)
        for x0 in seeds:
            with np.errstate(invalid="ignore"):
                res = minimize(fun, x0, method="Nelder-Mead", options=nm_options)
            total_iters += int(res.nit)
            if res.fun < family_best[0]:
                family_best = (float(res.fun), np.asarray(res.x))
        key = label if label != "III" else "III_%d" % int(fixed_shape)
        per_type[key] = family_best[0]
        if family_best[1] is not None and math.isfinite(family_best[0]):
            v = family_best[1]
            shape = v[2] if with_shape else fixed_shape
            value, aux = evaluate(label, shape, v[0], v[1])
            if aux is not None:
                cand = (value, _TYPE_ORDER[label], tuple(aux[0]), aux)
                if best is None or cand[:3] < best[:3]:
                    best = cand

    if "III" in selected:
        per_type["III"] = min(per_type.pop("III_1"), per_type.pop("III_2"))
    per_type = {k: per_type[k] for k in _TYPE_ORDER if k in per_type}
    if best is None:
        raise SearchFailureError(
            "no feasible border candidate in any family; per-type minima %r"
            % (per_type,)
        )

    value, _, _, (params, inner) = best
    m_fold = _standard_em(*inner.m_std)
    xy = _squeeze_xy(inner.x_opt, inner.y_opt)
    m_best_std = xy @ m_fold @ xy
    best_em = sf.local.T @ m_best_std @ sf.local
    _, border_residual = is_separable(em_to_cm(best_em))
    return GreeResult(
        value=_clamped(value),
        label=params.label,
        params=params,
        best_em=best_em,
        diagnostics={
            "separable": False,
            "per_type": per_type,
            "starts": starts,
            "iterations": total_iters,
            "rho_type": classify(sf).label,
            "border_residual": border_residual,
        },
    )


def _symmetric_w(p: SymmetricParams):
    """The two-variable border objective W(log Mt_A, log Mt_B) for a
    symmetric state, and its no-square-root alternative reading."""
    c_a = (p.m + p.kq) * (p.m - p.kp)
    c_b = (p.m - p.kq) * (p.m + p.kp)
    c_c = (p.m - p.kq) * (p.m - p.kp)
    c_t = (p.m + p.kq) * (p.m + p.kp)

    def bracket(ta, tb):
        return (
            c_a * ta * ta
            + c_b * tb * tb
            + c_c * ta * tb * _coth(0.5 * ta) * _coth(0.5 * tb)
            + c_t * ta * tb * math.tanh(0.5 * ta) * math.tanh(0.5 * tb)
        )

    def w(v):
        if abs(v[0]) > 6.0 or abs(v[1]) > 6.0:
            return math.inf
        ta, tb = math.exp(v[0]), math.exp(v[1])
        logs = math.log(2.0 * math.sinh(0.5 * ta)) + math.log(2.0 * math.sinh(0.5 * tb))
        return -logs + 0.5 * math.sqrt(bracket(ta, tb))

    def w_alt(v):
        ta, tb = math.exp(v[0]), math.exp(v[1])
        logs = math.log(2.0 * math.sinh(0.5 * ta)) + math.log(2.0 * math.sinh(0.5 * tb))
        return -logs + 0.5 * bracket(ta, tb)

    return w, w_alt


def _sigma_from_mtilde(ta: float, tb: float) -> SymmetricParams:
    """Symmetric border minimizer parameters from the EM eigenvalues."""
    g_a = _coth(0.5 * ta)
    g_b = _coth(0.5 * tb)
    q = math.sqrt((1.0 + g_a**2) / (1.0 + g_b**2))
    return SymmetricParams(
        m=(g_a**2 + 1.0) / (2.0 * q),
        kq=(g_a**2 - 1.0) / (2.0 * q),
        kp=q * (g_b**2 - 1.0) / 2.0,
    )


def gree_symmetric(p: SymmetricParams, starts: int = 8, seed: int = 0) -> GreeResult:
    """GREE of a symmetric two-mode state by the two-variable border
    objective in (Mt_A, Mt_B); the minimizer is itself symmetric and
    needs no x squeeze (x = 1).

    Args:
        p: symmetric-state parameters (m, kq, kp).
        starts: simplex starts (coarse-grid seeded).
        seed: RNG seed for jittered extra starts.
    """
    alpha = symmetric_cm(p)
    gammas_rho = check_physical(alpha)
    separable, rho_residual = is_separable(alpha)
    if separable:
        return _separable_result(alpha, gammas_rho, rho_residual)

    w, w_alt = _symmetric_w(p)
    rng = np.random.default_rng(seed)
    grid = [-1.5, -0.5, 0.5, 1.5]
    pool = [(ua, ub) for ua in grid for ub in grid]
    if gammas_rho[-1] > 0.5 + PURITY_EPS:
        mt_rho = em_spectrum(gammas_rho)
        pool.insert(0, (math.log(mt_rho[0]), math.log(mt_rho[1])))
    pool.sort(key=w)
    seeds = [np.array(q) for q in pool[:starts]]
    while len(seeds) < starts:
        seeds.append(seeds[len(seeds) % len(pool)] + 0.3 * rng.standard_normal(2))

    best_w, best_v, iters = math.inf, None, 0
    for x0 in seeds:
        with np.errstate(invalid="ignore"):
            res = minimize(w, x0, method="Nelder-Mead",
                           options={"fatol": 1e-12, "xatol": 1e-10, "maxiter": 600})
        iters += int(res.nit)
        if res.fun < best_w:
            best_w, best_v = float(res.fun), np.asarray(res.x)
    if best_v is None or not math.isfinite(best_w):
        raise SearchFailureError("symmetric border search failed")

    ta, tb = math.exp(best_v[0]), math.exp(best_v[1])
    sigma = _sigma_from_mtilde(ta, tb)
    best_em = symmetric_em(sigma)
    gamma_a, gamma_b = symmetric_gammas(sigma)
    value = _clamped(_self_term(gammas_rho) + best_w)
    _, border_residual = is_separable(symmetric_cm(sigma))
    return GreeResult(
        value=value,
        label="IV",
        params=BorderParams("IV", gamma_a, gamma_b, 0.0, 1.0),
        best_em=best_em,
        diagnostics={
            "separable": False,
            "per_type": {"IV": value},
            "starts": starts,
            "iterations": iters,
            "border_residual": border_residual,
            "alt_reading_residual": abs(w_alt(best_v) - best_w),
        },
    )


def gree_tmst(m: float, k: float) -> GreeResult:
    """GREE of a two-mode squeezed thermal state (kq = kp = k) via the
    one-variable objective
    f(Mt) = -2 log(2 sinh(Mt/2))
            + (Mt/2) [(m-k) coth(Mt/2) + (m+k) tanh(Mt/2)].

    Args:
        m, k: TMST parameters; inseparable exactly when m - |k| < 1.
    """
    p = SymmetricParams(m=float(m), kq=float(k), kp=float(k))
    alpha = symmetric_cm(p)
    gammas_rho = check_physical(alpha)
    separable, rho_residual = is_separable(alpha)
    if separable:
        return _separable_result(alpha, gammas_rho, rho_residual)

    lo_c = m - k
    hi_c = m + k

    def f(u):
        t = math.exp(u)
        return (
            -2.0 * math.log(2.0 * math.sinh(0.5 * t))
            + 0.5 * t * (lo_c * _coth(0.5 * t) + hi_c * math.tanh(0.5 * t))
        )

    grid = np.linspace(-6.0, 6.0, 49)
    k_best = int(np.argmin([f(u) for u in grid]))
    u_opt = _golden_min(f, grid[max(k_best - 1, 0)], grid[min(k_best + 1, 48)])
    t_opt = math.exp(u_opt)
    sigma = _sigma_from_mtilde(t_opt, t_opt)
    best_em = symmetric_em(sigma)
    gamma_s = 0.5 * _coth(0.5 * t_opt)
    value = _clamped(_self_term(gammas_rho) + f(u_opt))
    _, border_residual = is_separable(symmetric_cm(sigma))
    return GreeResult(
        value=value,
        label="IV",
        params=BorderParams("IV", gamma_s, gamma_s, 0.0, 1.0),
        best_em=best_em,
        diagnostics={
            "separable": False,
            "per_type": {"IV": value},
            "minimizer_mtilde": t_opt,
            "border_residual": border_residual,
        },
    )
