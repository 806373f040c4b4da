"""Brute-force verification oracle in a truncated Fock basis.

States are dense density matrices over per-mode number bases; entropies
are computed by spectral calculus with no Gaussian formulas involved, so
results can be compared against the closed-form path independently.
"""

import warnings
from typing import NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
from scipy.linalg import expm

from .errors import NumericalGuardError, ValidationError

# computed sigma eigenvalues below this are dominated by eigh roundoff and
# are floored before taking the log (dense sigma only; diagonal entries are
# exact and used down to underflow)
SIGMA_FLOOR = 1e-14
# rho mass allowed on floored/dead sigma directions before declaring
# divergence; below this the omitted contribution stays ~1e-5 or smaller
SUPPORT_MASS_TOL = 1e-7
# default ceiling on the top-two-level population of a squeezed mode
DEFECT_TOL = 1e-3


class FockDensity(NamedTuple):
    """Truncated density matrix: dims per mode, rho of size prod(dims),
    and the trace lost to truncation before renormalization."""

    dims: Tuple[int, ...]
    rho: np.ndarray
    trace_deficit: float


def fock_thermal(gamma: float, dim: int) -> FockDensity:
    """Single-mode thermal state with mean occupancy n_bar = gamma - 1/2.

    Args:
        gamma: symplectic eigenvalue, >= 1/2 (1/2 gives the vacuum).
        dim: number of kept Fock levels, >= 2.
    """
    if gamma < 0.5:
        raise ValidationError("thermal state needs gamma >= 1/2")
    if dim < 2:
        raise ValidationError("need at least two Fock levels")
    n_bar = gamma - 0.5
    ratio = n_bar / (n_bar + 1.0)
    weights = ratio ** np.arange(dim) / (n_bar + 1.0)
    total = float(weights.sum())
    return FockDensity(
        dims=(dim,), rho=np.diag(weights / total), trace_deficit=1.0 - total
    )


def fock_product(*states: FockDensity) -> FockDensity:
    """Tensor product of mode states (mode order = argument order)."""
    dims: Tuple[int, ...] = ()
    rho = np.eye(1)
    deficit = 0.0
    for st in states:
        dims = dims + tuple(st.dims)
        rho = np.kron(rho, st.rho)
        deficit = deficit + st.trace_deficit - deficit * st.trace_deficit
    return FockDensity(dims=dims, rho=rho, trace_deficit=deficit)


def mode_populations(state: FockDensity) -> list:
    """Per-mode number populations (marginals of the diagonal)."""
    diag = np.real(np.diagonal(state.rho)).reshape(state.dims)
    out = []
    for axis in range(len(state.dims)):
        other = tuple(k for k in range(len(state.dims)) if k != axis)
        out.append(diag.sum(axis=other) if other else diag.copy())
    return out


def _two_mode_squeeze_unitary(d0: int, d1: int, r: float) -> np.ndarray:
    """exp(r (a0+ a1+ - a0 a1)) truncated to d0 x d1 levels.

    The generator conserves n0 - n1, so it splits into antisymmetric
    tridiagonal chains; each chain exponential is orthogonal, hence the
    assembled matrix is exactly unitary on the kept subspace.
    """
    u = np.zeros((d0 * d1, d0 * d1))
    for diff in range(-(d1 - 1), d0):
        n0 = max(diff, 0)
        m0 = max(-diff, 0)
        length = min(d0 - n0, d1 - m0)
        idx = np.arange(length) * (d1 + 1) + n0 * d1 + m0
        if length == 1:
            u[idx[0], idx[0]] = 1.0
            continue
        k = np.arange(length - 1)
        coup = r * np.sqrt((n0 + k + 1.0) * (m0 + k + 1.0))
        gen = np.zeros((length, length))
        gen[k + 1, k] = coup
        gen[k, k + 1] = -coup
        u[np.ix_(idx, idx)] = expm(gen)
    return u


def _local_squeeze_unitary(d: int, s: float) -> np.ndarray:
    """exp(s (a+^2 - a^2) / 2) truncated to d levels (parity chains)."""
    u = np.zeros((d, d))
    for start in (0, 1):
        idx = np.arange(start, d, 2)
        length = len(idx)
        if length == 1:
            u[idx[0], idx[0]] = 1.0
            continue
        n = idx[:-1].astype(float)
        coup = 0.5 * s * np.sqrt((n + 1.0) * (n + 2.0))
        gen = np.zeros((length, length))
        k = np.arange(length - 1)
        gen[k + 1, k] = coup
        gen[k, k + 1] = -coup
        u[np.ix_(idx, idx)] = expm(gen)
    return u


def fock_apply_squeeze(
    state: FockDensity,
    kind: str,
    r: float,
    modes: Union[int, Sequence[int], None] = None,
    defect_tol: float = DEFECT_TOL,
) -> FockDensity:
    """Conjugate the state by a truncated squeeze unitary.

    Kinds:
      two_mode  exp(r(a+b+ - ab)) on modes (0, 1): the R(r) (+) R(-r)
                symplectic on the quadratures.
      local     exp(s(a+^2 - a^2)/2) on one mode: q -> e^s q, p -> e^-s p,
                i.e. the X(x) squeeze with s = log(x)/2.

    Args:
        state: input density matrix.
        kind: "two_mode" or "local".
        r: squeeze parameter (|r| <= 1 recommended for truncation quality).
        modes: mode pair for two_mode (must be (0, 1)), index for local.
        defect_tol: ceiling on the top-two-level mass of each squeezed
            mode after the transform; exceeding it raises.

    Raises:
        NumericalGuardError: truncation defect above defect_tol.
    """
    if kind == "two_mode":
        if len(state.dims) != 2 or (modes is not None and tuple(modes) != (0, 1)):
            raise ValidationError("two_mode squeeze acts on modes (0, 1)")
        u = _two_mode_squeeze_unitary(state.dims[0], state.dims[1], float(r))
        touched = (0, 1)
    elif kind == "local":
        i = 0 if modes is None else int(modes)
        if not 0 <= i < len(state.dims):
            raise ValidationError("invalid mode index %r" % (modes,))
        u = _local_squeeze_unitary(state.dims[i], float(r))
        left = int(np.prod(state.dims[:i], dtype=int))
        right = int(np.prod(state.dims[i + 1 :], dtype=int))
        u = np.kron(np.kron(np.eye(left), u), np.eye(right))
        touched = (i,)
    else:
        raise ValidationError("unknown squeeze kind %r" % (kind,))

    rho = u @ state.rho @ u.T
    rho = 0.5 * (rho + rho.T)
    out = FockDensity(dims=state.dims, rho=rho, trace_deficit=state.trace_deficit)
    pops = mode_populations(out)
    for i in touched:
        defect = float(pops[i][-2:].sum())
        if defect > defect_tol:
            raise NumericalGuardError(
                "truncation defect %.3e on mode %d (raise dims or lower r)"
                % (defect, i)
            )
    return out


def _is_diagonal(matrix: np.ndarray) -> bool:
    return np.count_nonzero(matrix - np.diag(np.diagonal(matrix))) == 0


def _self_term(rho: np.ndarray) -> float:
    """Tr rho log rho by spectral calculus (0 log 0 = 0)."""
    if _is_diagonal(rho):
        p = np.real(np.diagonal(rho))
    else:
        p = np.linalg.eigvalsh(rho)
    if p[0] < -1e-10:
        raise ValidationError("matrix is not positive semidefinite")
    p = p[p > 1e-18]
    return float(np.sum(p * np.log(p)))


def fock_relative_entropy(rho: FockDensity, sigma: FockDensity) -> float:
    """Tr rho log rho - Tr rho log sigma on the kept subspace, in nats.

    Diagonal sigma uses its exact diagonal down to underflow; dense sigma
    is eigendecomposed and eigenvalues below 1e-14 (eigh noise level) are
    floored before the log.  If rho puts more than 1e-7 of its mass on
    dead/floored directions the value is divergent and +inf is returned
    (with a warning).

    Args:
        rho, sigma: density matrices with matching dims.
    """
    if rho.dims != sigma.dims:
        raise ValidationError("dims mismatch between rho and sigma")
    self_term = _self_term(rho.rho)
    if _is_diagonal(sigma.rho):
        q = np.real(np.diagonal(sigma.rho)).copy()
        masses = np.real(np.diagonal(rho.rho))
        dead = q < 1e-300
    else:
        q, v = np.linalg.eigh(sigma.rho)
        masses = np.einsum("ik,ik->k", v, rho.rho @ v)
        dead = q < SIGMA_FLOOR
        q = np.maximum(q, SIGMA_FLOOR)
    lost = float(masses[dead].sum())
    if lost > SUPPORT_MASS_TOL:
        warnings.warn(
            "rho mass %.3e outside sigma's numerical support; "
            "relative entropy diverges" % lost
        )
        return float("inf")
    keep = ~dead
    cross = float(masses[keep] @ np.log(q[keep]))
    return self_term - cross


def fock_entropy(state: FockDensity) -> float:
    """Von Neumann entropy -Tr rho log rho in nats."""
    return -_self_term(state.rho)


def truncate(state: FockDensity, drop: int) -> FockDensity:
    """Remove the top `drop` levels of every mode and renormalize."""
    new_dims = tuple(d - drop for d in state.dims)
    if min(new_dims) < 2:
        raise ValidationError("truncation would leave fewer than 2 levels")
    n = len(state.dims)
    tensor = state.rho.reshape(state.dims + state.dims)
    sl = tuple(slice(0, d) for d in new_dims)
    tensor = tensor[sl + sl]
    size = int(np.prod(new_dims, dtype=int))
    rho = tensor.reshape(size, size)
    tr = float(np.trace(rho))
    return FockDensity(dims=new_dims, rho=rho / tr, trace_deficit=1.0 - tr)


def fock_truncation_sensitivity(
    rho: FockDensity, sigma: FockDensity, drop: int = 5
) -> float:
    """|value change| of fock_relative_entropy when all dims shrink by drop."""
    full = fock_relative_entropy(rho, sigma)
    small = fock_relative_entropy(truncate(rho, drop), truncate(sigma, drop))
    return abs(full - small)


def fock_schmidt_entropy(r: float, dim: int) -> float:
    """Entanglement entropy of the two-mode squeezed vacuum from its
    Schmidt spectrum lambda_n = tanh(r)^(2n) / cosh(r)^2.

    Args:
        r: squeeze parameter.
        dim: number of Schmidt terms; tanh(r)^(2 dim) must be < 1e-10.
    """
    t2 = np.tanh(r) ** 2
    if t2**dim >= 1e-10:
        raise ValidationError("dim too small for the requested squeeze")
    lam = t2 ** np.arange(dim) / np.cosh(r) ** 2
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log(lam)))


def fock_covariance(state: FockDensity) -> np.ndarray:
    """Quadrature second moments 1/2 <{F_j, F_k}> in (q.., p..) order.

    Means are not subtracted (the states in scope are zero-mean), so for
    a Gaussian input this reproduces its CM.
    """
    dims = state.dims
    n = len(dims)
    ops = []
    for i, d in enumerate(dims):
        a = sp.diags(np.sqrt(np.arange(1, d)), 1)
        q = (a + a.T) / np.sqrt(2.0)
        p = 1j * (a.T - a) / np.sqrt(2.0)
        left = int(np.prod(dims[:i], dtype=int))
        right = int(np.prod(dims[i + 1 :], dtype=int))
        ops.append((i, sp.kron(sp.kron(sp.identity(left), q), sp.identity(right))))
        ops.append((n + i, sp.kron(sp.kron(sp.identity(left), p), sp.identity(right))))
    ops.sort(key=lambda t: t[0])
    mats = [op.tocsr() for _, op in ops]
    prods = [op @ state.rho for op in mats]  # F_k rho, dense
    g = np.empty((2 * n, 2 * n), dtype=complex)
    for j in range(2 * n):
        fj_t = mats[j].T
        for k in range(2 * n):
            # Tr(rho F_j F_k) = Tr((F_k rho) F_j)
            g[j, k] = fj_t.multiply(prods[k]).sum()
    return np.real(0.5 * (g + g.T))
