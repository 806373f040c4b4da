"""Gaussian-state representations and transforms.

Correlation matrices (CM, second moments with vacuum variance 1/2) and
exponential matrices (EM, the matrix M of rho ~ exp(-1/2 F^T M F)) are plain
real symmetric 2n x 2n arrays in (q1..qn, p1..pn) ordering.  This module
converts between them, evaluates entropies, and provides the two-mode
standard form, classification, and separability tests.
"""

from typing import NamedTuple, Tuple

import numpy as np

from .errors import NumericalGuardError, ValidationError
from .symplectic import (
    WilliamsonResult,
    symplectic_form,
    symplectic_eigenvalues,
    williamson,
)

# gamma_j must exceed 1/2 by at least this much before an EM exists
PURITY_EPS = 1e-9
# physicality slack on the uncertainty bound gamma_j >= 1/2
PHYSICAL_TOL = 1e-10
# a = b test and ratio comparisons in classify
CLASSIFY_TOL = 1e-9


class StandardForm(NamedTuple):
    """Two-mode standard form: alpha_q = [[a, c1], [c1, b]],
    alpha_p = [[a, -c2], [-c2, b]], and the local symplectic with
    standard_cm = local @ alpha @ local.T."""

    a: float
    b: float
    c1: float
    c2: float
    local: np.ndarray


class TypeLabel(NamedTuple):
    """Classification label I/II/III/IV with the diagnostic ratio
    (a/b + b/a) / (c1/c2 + c2/c1)."""

    label: str
    ratio: float


def bosonic_entropy(x: float) -> float:
    """g(x) = (x+1)log(x+1) - x log x in nats, with g(0) = 0.

    Args:
        x: mean occupancy, x >= 0.
    """
    if x < 0:
        raise ValidationError("bosonic entropy needs a non-negative argument")
    if x == 0:
        return 0.0
    return float((x + 1) * np.log1p(x) - x * np.log(x))


def check_physical(alpha: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of alpha after checking gamma_j >= 1/2."""
    gammas = symplectic_eigenvalues(alpha)
    if gammas[-1] < 0.5 - PHYSICAL_TOL:
        raise ValidationError(
            "CM violates the uncertainty relation (min gamma = %.12g)" % gammas[-1]
        )
    return gammas


def von_neumann_entropy(alpha: np.ndarray) -> float:
    """Entropy sum_j g(gamma_j - 1/2) of the state with CM alpha, in nats."""
    gammas = check_physical(alpha)
    return float(sum(bosonic_entropy(max(g - 0.5, 0.0)) for g in gammas))


def em_spectrum(gammas: np.ndarray) -> np.ndarray:
    """EM symplectic eigenvalues log((2 gamma + 1) / (2 gamma - 1))."""
    return np.log((2.0 * gammas + 1.0) / (2.0 * gammas - 1.0))


def gamma_of_em_spectrum(mtilde: np.ndarray) -> np.ndarray:
    """Inverse map: gamma = (1/2) coth(mtilde / 2)."""
    return 0.5 / np.tanh(0.5 * np.asarray(mtilde))


def _commutation_residual(m: np.ndarray, alpha: np.ndarray) -> float:
    delta = symplectic_form(m.shape[0] // 2)
    dinv = -delta
    return float(np.max(np.abs(m @ alpha @ dinv - dinv @ alpha @ m)))


def cm_to_em(alpha: np.ndarray) -> np.ndarray:
    """Exponential matrix M = (S^T)^-1 diag(Mtilde) S^-1 of the CM alpha.

    Mtilde_j = log((2 gamma_j + 1)/(2 gamma_j - 1)) diverges for pure
    directions, so strictly mixed input is required.

    Args:
        alpha: physical CM with all gamma_j >= 1/2 + 1e-9.

    Returns:
        The EM, checked to commute with alpha in the symplectic sense
        (||M alpha Delta^-1 - Delta^-1 alpha M||_max <= 1e-8).
    """
    s, gammas = williamson(alpha)
    if gammas[-1] <= 0.5 + PURITY_EPS:
        raise NumericalGuardError(
            "pure direction: min gamma = %.12g, EM diverges" % gammas[-1]
        )
    mtilde = em_spectrum(gammas)
    s_inv = np.linalg.inv(s)
    m = s_inv.T * np.concatenate([mtilde, mtilde]) @ s_inv
    m = 0.5 * (m + m.T)
    residual = _commutation_residual(m, alpha)
    if residual > 1e-8 * max(1.0, float(np.max(np.abs(m)))):
        raise NumericalGuardError("commutation residual %.3e" % residual)
    return m


def em_to_cm(m: np.ndarray) -> np.ndarray:
    """CM alpha = S diag(1/2 coth(Mtilde/2)) S^T of the EM m.

    Args:
        m: symmetric positive-definite EM.
    """
    w = williamson(m)
    if w.gammas[-1] <= 0:
        raise NumericalGuardError("EM has a non-positive symplectic eigenvalue")
    gam = gamma_of_em_spectrum(w.gammas)
    s = np.linalg.inv(w.s).T  # m = W Mtilde W^T  <=>  M = (S^T)^-1 Mtilde S^-1
    alpha = s * np.concatenate([gam, gam]) @ s.T
    return 0.5 * (alpha + alpha.T)


def normalization_log_c(gammas: np.ndarray) -> float:
    """log of the normalization c = prod 1/sqrt(gamma_j^2 - 1/4).

    Args:
        gammas: symplectic eigenvalues of the state, each > 1/2.
    """
    gammas = np.asarray(gammas, dtype=float)
    if np.any(gammas <= 0.5):
        raise NumericalGuardError("normalization needs all gamma > 1/2")
    return float(-0.5 * np.sum(np.log(gammas**2 - 0.25)))


def _mode_blocks(alpha: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-mode 2x2 blocks A, B and the cross block C in (q_i, p_i) order."""
    idx_a = np.ix_((0, 2), (0, 2))
    idx_b = np.ix_((1, 3), (1, 3))
    idx_c = np.ix_((0, 2), (1, 3))
    return alpha[idx_a], alpha[idx_b], alpha[idx_c]


def _embed_local(block_a: np.ndarray, block_b: np.ndarray) -> np.ndarray:
    """Embed per-mode 2x2 matrices (acting on (q_i, p_i)) into qqpp order."""
    s = np.zeros((4, 4))
    for blk, i in ((block_a, 0), (block_b, 1)):
        s[i, i] = blk[0, 0]
        s[i, i + 2] = blk[0, 1]
        s[i + 2, i] = blk[1, 0]
        s[i + 2, i + 2] = blk[1, 1]
    return s


def _rotation2(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def standard_form(alpha: np.ndarray) -> StandardForm:
    """Reduce a two-mode CM to its local-invariant standard form.

    The explicit local symplectic is built from the per-mode Williamson
    reductions and the rotation pair that diagonalizes the cross block;
    a = sqrt(det A), b = sqrt(det B) and (c1, c2) come from the reduced
    cross block, ordered c1 >= |c2|.  The parameters are checked against
    the local invariants: c1^2 and c2^2 must solve z^2 - s z + (det C)^2
    with s = ((ab)^2 + (det C)^2 - det alpha)/(ab).

    Args:
        alpha: physical two-mode CM.

    Returns:
        StandardForm; the sign convention puts +c1 in alpha_q and -c2 in
        alpha_p, so c2 > 0 exactly when det C < 0.
    """
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (4, 4):
        raise ValidationError("standard form is defined for two-mode CMs")
    check_physical(alpha)
    block_a, block_b, block_c = _mode_blocks(alpha)
    det_a, det_b, det_c = map(np.linalg.det, (block_a, block_b, block_c))
    det_alpha = np.linalg.det(alpha)
    a, b = np.sqrt(det_a), np.sqrt(det_b)
    ab = a * b

    # explicit local symplectic: per-mode Williamson, then the rotation pair
    # from the SVD of the cross block (signs pushed into the second value);
    # the singular values are the well-conditioned source for c1 and |c2|
    # (the invariant solve below amplifies roundoff through a square root
    # whenever the state is close to a product state)
    l_a = np.sqrt(a) * _sqrtm_inv_2x2(block_a)
    l_b = np.sqrt(b) * _sqrtm_inv_2x2(block_b)
    local = _embed_local(l_a, l_b)
    cross = l_a @ block_c @ l_b.T
    u, sigma, vt = np.linalg.svd(cross)
    du, dv = np.linalg.det(u), np.linalg.det(vt.T)
    r1 = u @ np.diag([1.0, du])
    r2 = vt.T @ np.diag([1.0, dv])
    local = _embed_local(r1.T, r2.T) @ local
    c1 = float(sigma[0])
    # alpha_p off-diagonal is -c2, so c2 = -det C / c1 has the sign of -det C
    c2 = float(-du * dv * sigma[1])

    # local-invariant cross-check: c1^2 and c2^2 solve z^2 - s z + (det C)^2
    s = (ab * ab + det_c * det_c - det_alpha) / ab
    s_scale = (ab * ab + det_c * det_c + abs(det_alpha)) / ab
    if abs(c1 * c1 + c2 * c2 - s) > 1e-8 * max(1.0, s_scale):
        raise NumericalGuardError("standard-form parameters break the invariant solve")
    if abs(c1 * abs(c2) - abs(det_c)) > 1e-8 * max(1.0, abs(det_c)):
        raise NumericalGuardError("standard-form parameters break the invariant solve")

    std = local @ alpha @ local.T
    target = standard_cm(a, b, c1, c2)
    if float(np.max(np.abs(std - target))) > 1e-8 * max(1.0, float(np.max(np.abs(target)))):
        raise NumericalGuardError("standard-form reduction residual too large")
    return StandardForm(a=float(a), b=float(b), c1=float(c1), c2=float(c2), local=local)


def _sqrtm_inv_2x2(block: np.ndarray) -> np.ndarray:
    """Inverse square root of a symmetric positive-definite 2x2 matrix."""
    w, v = np.linalg.eigh(block)
    if w[0] <= 0:
        raise ValidationError("mode block is not positive definite")
    return v / np.sqrt(w) @ v.T


def standard_cm(a: float, b: float, c1: float, c2: float) -> np.ndarray:
    """Assemble the standard-form CM from its four parameters."""
    alpha_q = np.array([[a, c1], [c1, b]])
    alpha_p = np.array([[a, -c2], [-c2, b]])
    out = np.zeros((4, 4))
    out[:2, :2] = alpha_q
    out[2:, 2:] = alpha_p
    return out


def classify(sf: StandardForm) -> TypeLabel:
    """Type I/II/III/IV from (a/b + b/a) versus (c1/c2 + c2/c1).

    Args:
        sf: standard form with c1, c2 > 0 (states with a non-positive c are
            separable outright and not classified).
    """
    if sf.c1 <= 0 or sf.c2 <= 0:
        raise ValidationError("classification needs c1, c2 > 0 (state is separable)")
    ratio = (sf.a / sf.b + sf.b / sf.a) / (sf.c1 / sf.c2 + sf.c2 / sf.c1)
    if abs(sf.a - sf.b) <= CLASSIFY_TOL * max(sf.a, sf.b):
        return TypeLabel(label="IV", ratio=float(ratio))
    if ratio > 1.0 + CLASSIFY_TOL:
        return TypeLabel(label="I", ratio=float(ratio))
    if ratio < 1.0 - CLASSIFY_TOL:
        return TypeLabel(label="II", ratio=float(ratio))
    return TypeLabel(label="III", ratio=float(ratio))


def border_residual(sf: StandardForm) -> float:
    """Residual of 4 det(aq ap) = Tr(aq ap) + 2(|e| - e) - 1/4 on the
    standard form (e is the product of the actual off-diagonal entries);
    zero exactly on the separable/inseparable border, positive inside the
    separable set."""
    e_q, e_p = sf.c1, -sf.c2
    prod = e_q * e_p
    det_q = sf.a * sf.b - e_q * e_q
    det_p = sf.a * sf.b - e_p * e_p
    trace = sf.a * sf.a + sf.b * sf.b + 2.0 * prod
    return float(4.0 * det_q * det_p - trace - 2.0 * (abs(prod) - prod) + 0.25)


def is_separable(alpha: np.ndarray) -> Tuple[bool, float]:
    """PPT separability test for a two-mode CM, with the border residual.

    Partial transposition flips the sign of the second mode's momentum;
    the state is separable iff the flipped CM is still physical.

    Returns:
        (verdict, residual) where residual is the standard-form border
        expression, <= 1e-8 in magnitude exactly for border states.
    """
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (4, 4):
        raise ValidationError("separability test is defined for two-mode CMs")
    check_physical(alpha)
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    tilde = flip @ alpha @ flip
    gammas = symplectic_eigenvalues(tilde)
    verdict = bool(gammas[-1] >= 0.5 - PHYSICAL_TOL)
    residual = border_residual(standard_form(alpha))
    return verdict, residual


class SymmetricParams(NamedTuple):
    """Symmetric two-mode state: alpha_q = (1/2)[[m, kq], [kq, m]],
    alpha_p = (1/2)[[m, -kp], [-kp, m]]."""

    m: float
    kq: float
    kp: float


def symmetric_cm(p: SymmetricParams) -> np.ndarray:
    """CM of the symmetric state (vacuum variance 1/2 units)."""
    if not (p.m > 0 and abs(p.kq) < p.m and abs(p.kp) < p.m):
        raise ValidationError("symmetric parameters must satisfy m > 0, |k| < m")
    return 0.5 * standard_cm(p.m, p.m, p.kq, p.kp)


def symmetric_gammas(p: SymmetricParams) -> Tuple[float, float]:
    """Symplectic eigenvalues (1/2)sqrt((m +- kq)(m -+ kp))."""
    ga = 0.5 * np.sqrt((p.m + p.kq) * (p.m - p.kp))
    gb = 0.5 * np.sqrt((p.m - p.kq) * (p.m + p.kp))
    return float(ga), float(gb)


def symmetric_em(p: SymmetricParams) -> np.ndarray:
    """Closed-form EM of a symmetric state.

    Uses S_q = (1/sqrt 2)[[s1, s2], [s1, -s2]] with
    s1 = ((m+kq)/(m-kp))^(1/4), s2 = ((m-kq)/(m+kp))^(1/4) and
    M = (S^T)^-1 diag(Mtilde) S^-1.

    Args:
        p: physical symmetric parameters with both gamma_j > 1/2.
    """
    if not (p.m > 0 and abs(p.kq) < p.m and abs(p.kp) < p.m):
        raise ValidationError("symmetric parameters must satisfy m > 0, |k| < m")
    ga, gb = symmetric_gammas(p)
    if min(ga, gb) <= 0.5 + PURITY_EPS:
        raise NumericalGuardError("pure direction: min gamma = %.12g" % min(ga, gb))
    s1 = ((p.m + p.kq) / (p.m - p.kp)) ** 0.25
    s2 = ((p.m - p.kq) / (p.m + p.kp)) ** 0.25
    mta, mtb = em_spectrum(np.array([ga, gb]))
    # (S^T)^-1 for S = S_q (+) (S_q^T)^-1 is (S_q^T)^-1 (+) S_q, so the EM
    # blocks are M_q = C diag(Mtilde) C^T with C = (S_q^T)^-1, M_p likewise
    half = 0.5  # from the 1/sqrt(2) factors of C and S_q
    m_q = half * np.array(
        [
            [mta / s1**2 + mtb / s2**2, mta / s1**2 - mtb / s2**2],
            [mta / s1**2 - mtb / s2**2, mta / s1**2 + mtb / s2**2],
        ]
    )
    m_p = half * np.array(
        [
            [mta * s1**2 + mtb * s2**2, mta * s1**2 - mtb * s2**2],
            [mta * s1**2 - mtb * s2**2, mta * s1**2 + mtb * s2**2],
        ]
    )
    out = np.zeros((4, 4))
    out[:2, :2] = m_q
    out[2:, 2:] = m_p
    return out


def tmst_cm(m: float, k: float) -> np.ndarray:
    """CM of a two-mode squeezed thermal state (symmetric with kq = kp = k)."""
    return symmetric_cm(SymmetricParams(m=m, kq=k, kp=k))


def tmsv_cm(r: float) -> np.ndarray:
    """CM of the two-mode squeezed vacuum with squeeze parameter r."""
    return tmst_cm(float(np.cosh(2 * r)), float(np.sinh(2 * r)))
