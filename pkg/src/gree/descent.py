"""Monotone relative-entropy descent over Gaussian sigma.

The descent works on beta = S_sigma^-1 alpha_rho (S_sigma^T)^-1, which is
itself a covariance matrix with the symplectic eigenvalues of alpha_rho.
After aligning gamma_sigma_j with beta_bar_jj = (beta_jj + beta_n+j,n+j)/2
the relative entropy is sum_j g(beta_bar_jj - 1/2) - sum_j g(gamma_rho_j -
1/2), and every further decrease comes from symplectic congruences of
beta: local rotations and squeezes clean up single modes, while two-mode
rotations and squeezes of the first (qq/pp) and second (qp/pq) kinds each
remove one of the four inter-mode couplings.  Iterating pair by pair
drives beta diagonal and sigma into rho; monitoring separability along
the way locates border states that upper-bound the GREE.
"""

import math
from typing import NamedTuple, Optional, Tuple

import numpy as np

from .errors import NumericalGuardError, SearchFailureError, ValidationError
from .gaussian import bosonic_entropy, check_physical, is_separable
from .symplectic import symplectic_eigenvalues, williamson

# convergence and safety knobs for descend()
MAX_ITERS = 10_000
CONVERGENCE_TOL = 1e-12
# rounds of local-squeeze / two-mode-rotation preparation before a squeeze
INNER_ROUNDS = 3
# bisection steps used to localize a border crossing along one transform
BISECT_ITERS = 60
AT_RHO_TOL = 1e-8
# transform parameters below this are dropped as no-ops
PARAM_FLOOR = 1e-15
# couplings below this (relative) do not justify a rotation: the angle of a
# diagonalizing rotation stays O(1) even for noise-level couplings
COUPLING_FLOOR = 1e-14
# slack allowed on the per-step monotonicity of the objective
MONOTONE_SLACK = 1e-12

_UNCERTAINTY_TOL = 1e-9


class DescentState(NamedTuple):
    """One iterate of the descent.

    step_log holds (kind, params, objective after) triples; params is
    (mode, value) for local transforms, (i, j, value) for pair transforms,
    () for the initial alignment and (border value,) for a border
    crossing marker."""

    s_sigma: np.ndarray
    gammas_sigma: np.ndarray
    beta: np.ndarray
    objective: float
    step_log: Tuple


def _g_sum(values: np.ndarray) -> float:
    return float(sum(bosonic_entropy(max(v, 0.0)) for v in values))


def _beta_bar(beta: np.ndarray) -> np.ndarray:
    n = beta.shape[0] // 2
    d = np.diagonal(beta)
    return 0.5 * (d[:n] + d[n:])


def _self_entropy(beta: np.ndarray) -> float:
    return _g_sum(symplectic_eigenvalues(beta) - 0.5)


def _general_objective(beta: np.ndarray, gammas_sigma: np.ndarray) -> float:
    """S(rho||sigma) for arbitrary (not necessarily aligned) gamma_sigma."""
    bar = _beta_bar(beta)
    g = np.asarray(gammas_sigma, dtype=float)
    mt = np.log((2.0 * g + 1.0) / (2.0 * g - 1.0))
    cross = float(np.sum(0.5 * np.log(g * g - 0.25) + bar * mt))
    return -_self_entropy(beta) + cross


def make_state(
    alpha_rho: np.ndarray,
    s_sigma: np.ndarray,
    gammas_sigma,
    step_log: Tuple = (),
) -> DescentState:
    """Assemble a descent state from sigma's symplectic data."""
    alpha_rho = np.asarray(alpha_rho, dtype=float)
    s_sigma = np.asarray(s_sigma, dtype=float)
    gammas_sigma = np.asarray(gammas_sigma, dtype=float)
    if np.any(gammas_sigma <= 0.5):
        raise ValidationError(
            "sigma symplectic eigenvalues must stay above the pure-state bound 1/2"
        )
    s_inv = np.linalg.inv(s_sigma)
    beta = s_inv @ alpha_rho @ s_inv.T
    beta = 0.5 * (beta + beta.T)
    objective = _general_objective(beta, gammas_sigma)
    return DescentState(
        s_sigma=s_sigma,
        gammas_sigma=gammas_sigma,
        beta=beta,
        objective=objective,
        step_log=tuple(step_log),
    )


def initial_state(alpha_rho: np.ndarray, sigma0_em: np.ndarray) -> DescentState:
    """Start from sigma given as an exponential matrix."""
    w = williamson(np.asarray(sigma0_em, dtype=float))
    s_sigma = np.linalg.inv(w.s).T
    gammas = 0.5 / np.tanh(0.5 * w.gammas)
    return make_state(alpha_rho, s_sigma, gammas)


def sigma_cm_of(state: DescentState) -> np.ndarray:
    g = np.concatenate([state.gammas_sigma, state.gammas_sigma])
    return state.s_sigma * g @ state.s_sigma.T


def sigma_em_of(state: DescentState) -> np.ndarray:
    g = np.asarray(state.gammas_sigma, dtype=float)
    if np.any(g <= 0.5):
        raise NumericalGuardError("sigma is on the pure-state boundary")
    mt = np.log((2.0 * g + 1.0) / (2.0 * g - 1.0))
    s_inv = np.linalg.inv(state.s_sigma)
    m = s_inv.T * np.concatenate([mt, mt]) @ s_inv
    return 0.5 * (m + m.T)


def descent_objective(state: DescentState) -> float:
    """Aligned objective sum_j g(beta_bar_jj - 1/2) - S(rho)."""
    bar = _beta_bar(state.beta)
    if np.any(bar < 0.5 - _UNCERTAINTY_TOL):
        raise ValidationError("beta violates the uncertainty bound beta_bar >= 1/2")
    return _g_sum(bar - 0.5) - _self_entropy(state.beta)


def align_gammas(state: DescentState) -> DescentState:
    """Set each gamma_sigma_j to beta_bar_jj; never increases the objective."""
    bar = _beta_bar(state.beta)
    if np.any(bar < 0.5 - _UNCERTAINTY_TOL):
        raise ValidationError("beta violates the uncertainty bound beta_bar >= 1/2")
    objective = _g_sum(bar - 0.5) - _self_entropy(state.beta)
    return DescentState(
        s_sigma=state.s_sigma,
        gammas_sigma=bar,
        beta=state.beta,
        objective=objective,
        step_log=state.step_log + (("align", (), objective),),
    )


# -- elementary transforms (qqpp ordering, mode count n) ---------------------

def _rot(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def _sqz(r: float) -> np.ndarray:
    ch, sh = math.cosh(r), math.sinh(r)
    return np.array([[ch, sh], [sh, ch]])


def transform_matrix(n: int, kind: str, params: Tuple) -> np.ndarray:
    """Elementary descent transform embedded in 2n dimensions."""
    t = np.eye(2 * n)
    if kind == "local_rotation":
        i, theta = params
        idx = [i, n + i]
        t[np.ix_(idx, idx)] = _rot(theta)
    elif kind == "local_squeeze":
        i, s = params
        t[i, i] = s
        t[n + i, n + i] = 1.0 / s
    elif kind == "rotation_qq":
        i, j, theta = params
        t[np.ix_([i, j], [i, j])] = _rot(theta)
        t[np.ix_([n + i, n + j], [n + i, n + j])] = _rot(theta)
    elif kind == "squeeze_qq":
        i, j, r = params
        t[np.ix_([i, j], [i, j])] = _sqz(r)
        t[np.ix_([n + i, n + j], [n + i, n + j])] = _sqz(-r)
    elif kind == "rotation_qp":
        i, j, theta = params
        t[np.ix_([i, n + j], [i, n + j])] = _rot(theta)
        t[np.ix_([n + i, j], [n + i, j])] = _rot(-theta)
    elif kind == "squeeze_qp":
        i, j, r = params
        t[np.ix_([i, n + j], [i, n + j])] = _sqz(r)
        t[np.ix_([n + i, j], [n + i, j])] = _sqz(r)
    else:
        raise ValidationError("unknown transform kind %r" % (kind,))
    return t


def _inverse_params(kind: str, params: Tuple) -> Tuple:
    if kind == "local_squeeze":
        return params[:-1] + (1.0 / params[-1],)
    return params[:-1] + (-params[-1],)


def _apply(state: DescentState, kind: str, params: Tuple) -> DescentState:
    """Congruence-transform beta, update sigma accordingly, realign."""
    n = state.beta.shape[0] // 2
    t = transform_matrix(n, kind, params)
    beta = t @ state.beta @ t.T
    beta = 0.5 * (beta + beta.T)
    s_sigma = state.s_sigma @ transform_matrix(n, kind, _inverse_params(kind, params))
    bar = _beta_bar(beta)
    if np.any(bar < 0.5 - _UNCERTAINTY_TOL):
        raise NumericalGuardError("transform left beta numerically indefinite")
    objective = _g_sum(bar - 0.5) - _self_entropy(beta)
    return DescentState(
        s_sigma=s_sigma,
        gammas_sigma=bar,
        beta=beta,
        objective=objective,
        step_log=state.step_log + ((kind, params, objective),),
    )


def _fold_angle(theta: float) -> float:
    """Reduce a diagonalizing angle to the order-preserving |theta|<=pi/4."""
    if theta > 0.25 * math.pi:
        return theta - 0.5 * math.pi
    if theta < -0.25 * math.pi:
        return theta + 0.5 * math.pi
    return theta


def _prep_local(state: DescentState, i: int) -> DescentState:
    """Zero beta_{i,n+i} and equalize beta_ii = beta_{n+i,n+i}."""
    n = state.beta.shape[0] // 2
    b = state.beta
    if abs(b[i, n + i]) > COUPLING_FLOOR * max(1.0, b[i, i] + b[n + i, n + i]):
        theta = _fold_angle(
            0.5 * math.atan2(2.0 * b[i, n + i], b[i, i] - b[n + i, n + i])
        )
        if abs(theta) > PARAM_FLOOR:
            state = _apply(state, "local_rotation", (i, theta))
    b = state.beta
    if b[i, i] <= 0.0 or b[n + i, n + i] <= 0.0:
        raise NumericalGuardError("transform left beta numerically indefinite")
    s = (b[n + i, n + i] / b[i, i]) ** 0.25
    if abs(s - 1.0) > PARAM_FLOOR:
        state = _apply(state, "local_squeeze", (i, s))
    return state


def _pair_couplings(beta: np.ndarray, i: int, j: int) -> Tuple[float, float, float, float]:
    """(qq/pp symmetric, qq/pp antisymmetric, qp antisymmetric, qp symmetric)."""
    n = beta.shape[0] // 2
    return (
        0.5 * (beta[i, j] + beta[n + i, n + j]),
        0.5 * (beta[i, j] - beta[n + i, n + j]),
        0.5 * (beta[i, n + j] - beta[n + i, j]),
        0.5 * (beta[i, n + j] + beta[n + i, j]),
    )


def _group_pass(state: DescentState, i: int, j: int, second_kind: bool) -> DescentState:
    """Local prep + rotation rounds, then the matching two-mode squeeze."""
    rot_kind = "rotation_qp" if second_kind else "rotation_qq"
    sqz_kind = "squeeze_qp" if second_kind else "squeeze_qq"
    for _ in range(INNER_ROUNDS):
        state = _prep_local(state, i)
        state = _prep_local(state, j)
        sym_qq, _, asym_qp, _ = _pair_couplings(state.beta, i, j)
        c = asym_qp if second_kind else sym_qq
        bar = _beta_bar(state.beta)
        if abs(c) > COUPLING_FLOOR * max(1.0, bar[i] + bar[j]):
            theta = _fold_angle(0.5 * math.atan2(2.0 * c, bar[i] - bar[j]))
            if abs(theta) > PARAM_FLOOR:
                state = _apply(state, rot_kind, (i, j, theta))
    _, asym_qq, _, sym_qp = _pair_couplings(state.beta, i, j)
    c = sym_qp if second_kind else asym_qq
    bar = _beta_bar(state.beta)
    arg = -2.0 * c / (bar[i] + bar[j])
    if abs(arg) >= 1.0:
        raise NumericalGuardError("transform left beta numerically indefinite")
    r = 0.5 * math.atanh(arg)
    if abs(r) > PARAM_FLOOR:
        state = _apply(state, sqz_kind, (i, j, r))
    return state


def descent_step(state: DescentState) -> DescentState:
    """Run one transform group on the pair with the largest coupling.

    Both the first-kind (qq/pp) and the second-kind (qp/pq) group are
    evaluated and the one reaching the lower objective is kept; with no
    inter-mode coupling left, single modes are cleaned up locally, and a
    fully diagonal beta is a fixed point."""
    n = state.beta.shape[0] // 2
    beta = state.beta
    scale = max(1.0, float(np.max(np.abs(beta))))

    best_pair, best_size = None, 0.0
    for i in range(n):
        for j in range(i + 1, n):
            size = max(
                abs(beta[i, j]), abs(beta[n + i, n + j]),
                abs(beta[i, n + j]), abs(beta[n + i, j]),
            )
            if size > best_size:
                best_pair, best_size = (i, j), size
    if best_pair is not None and best_size > 1e-13 * scale:
        i, j = best_pair
        first = _group_pass(state, i, j, second_kind=False)
        second = _group_pass(state, i, j, second_kind=True)
        chosen = second if second.objective < first.objective else first
        if chosen.objective > state.objective + MONOTONE_SLACK:
            raise NumericalGuardError("descent step increased the objective")
        return chosen

    # no pair coupling: local cleanup of the worst mode, if any
    worst, size = None, PARAM_FLOOR * scale
    for i in range(n):
        local = abs(beta[i, n + i]) + abs(beta[i, i] - beta[n + i, n + i])
        if local > size:
            worst, size = i, local
    if worst is None:
        return state
    return _prep_local(state, worst)


def _bisect_crossing(
    state: DescentState, kind: str, params: Tuple, was_separable: bool
) -> DescentState:
    """Bisect one transform's parameter to the separability border."""

    def at(t: float) -> DescentState:
        if kind == "align":
            g = (1.0 - t) * state.gammas_sigma + t * _beta_bar(state.beta)
            obj = _general_objective(state.beta, g)
            return state._replace(
                gammas_sigma=g, objective=obj,
                step_log=state.step_log + (("align", (), obj),),
            )
        if kind == "local_squeeze":
            part = params[:-1] + (params[-1] ** t,)
        else:
            part = params[:-1] + (t * params[-1],)
        return _apply(state, kind, part)

    lo, hi = 0.0, 1.0
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if is_separable(sigma_cm_of(at(mid)))[0] == was_separable:
            lo = mid
        else:
            hi = mid
    t_sep = lo if was_separable else hi
    return at(t_sep)


def descend(
    alpha_rho: np.ndarray, sigma0: np.ndarray, stop: str = "at_rho"
) -> Tuple[DescentState, Optional[np.ndarray]]:
    """Iterate align + descent_step from sigma0 (an exponential matrix).

    With stop="at_rho" the descent runs to convergence and is required to
    end at rho (objective <= 1e-8, beta_bar matching rho's symplectic
    eigenvalues up to mode interchange).  With stop="at_border" every
    separability flip along the way is bisected to the border; the last
    (lowest) border iterate and its exponential matrix are returned, and
    each crossing leaves a ("crossing", (value,), objective) marker in
    the step log."""
    if stop not in ("at_rho", "at_border"):
        raise ValidationError("stop must be 'at_rho' or 'at_border'")
    alpha_rho = np.asarray(alpha_rho, dtype=float)
    gammas_rho = check_physical(alpha_rho)
    monitor = stop == "at_border"
    if monitor and alpha_rho.shape[0] != 4:
        raise ValidationError("border monitoring is defined for two-mode states")

    state = initial_state(alpha_rho, sigma0)
    separable = is_separable(sigma_cm_of(state))[0] if monitor else False
    aligned = align_gammas(state)
    border: Optional[DescentState] = None
    if monitor:
        now = is_separable(sigma_cm_of(aligned))[0]
        if now != separable:
            border = _bisect_crossing(state, "align", (), separable)
            marker = ("crossing", (border.objective,), border.objective)
            border = border._replace(step_log=border.step_log + (marker,))
            aligned = aligned._replace(step_log=aligned.step_log + (marker,))
            separable = now
    state = aligned

    converged = False
    for _ in range(MAX_ITERS):
        before = state
        stepped = descent_step(before)
        if monitor:
            replay = before
            for kind, params, _ in stepped.step_log[len(before.step_log):]:
                nxt = _apply(replay, kind, params)
                now = is_separable(sigma_cm_of(nxt))[0]
                if now != separable:
                    border = _bisect_crossing(replay, kind, params, separable)
                    marker = ("crossing", (border.objective,), border.objective)
                    border = border._replace(step_log=border.step_log + (marker,))
                    stepped = stepped._replace(step_log=stepped.step_log + (marker,))
                    separable = now
                replay = nxt
        if before.objective - stepped.objective < CONVERGENCE_TOL:
            state = stepped
            converged = True
            break
        state = stepped
    if not converged:
        raise SearchFailureError(
            "descent did not converge in %d iterations (objective %.3e after %d transforms)"
            % (MAX_ITERS, state.objective, len(state.step_log))
        )

    if stop == "at_rho":
        bar = np.sort(_beta_bar(state.beta))[::-1]
        if state.objective > AT_RHO_TOL or np.max(np.abs(bar - gammas_rho)) > 1e-6:
            raise SearchFailureError(
                "descent converged away from rho (objective %.3e after %d transforms)"
                % (state.objective, len(state.step_log))
            )
        return state, None
    if border is None:
        return state, None
    return border, sigma_em_of(border)
