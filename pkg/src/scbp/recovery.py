"""Basis pursuit and structure-constrained basis pursuit as linear programs.

Both formulations optimise over DCT coefficients ``s`` of the unknown block,
with the effective measurement operator ``A = Phi @ Psi.T`` (rows of ``Phi``
transformed by the DCT).  Variable layout of the emitted programs::

    BP    [ s (n) | t (n) ]
    SCBP  [ s (n) | t (n) | u (m) | alpha (1) ]

where ``|s| <= t`` linearises the l1 norm of ``s`` and ``|A s - b| <= u``
linearises the l1 residual.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.fft

from ._util import as_vector
from .errors import InvalidDimensionError, InvalidInputError
from .lp import LinearProgram, LpStatus, solve_lp
from .structure import StructureEnvelope, envelope_for_length
from .transform import dct_inverse

__all__ = [
    "RecoveryResult",
    "effective_matrix",
    "build_bp_lp",
    "build_scbp_lp",
    "bp_recover",
    "scbp_recover",
]


@dataclass(eq=False)
class RecoveryResult:
    """Outcome of one recovery.

    ``s_hat`` and ``x_hat`` are ``None`` unless ``status`` is optimal; a
    failed solve never masquerades as a zero signal.
    """

    method: str
    status: LpStatus
    s_hat: np.ndarray = None
    x_hat: np.ndarray = None
    alpha: float = None
    objective: float = float("nan")
    residual_l1: float = float("nan")
    iterations: int = 0
    max_violation: float = float("nan")
    lp_z: np.ndarray = field(default=None, repr=False)

    @property
    def ok(self):
        return self.status is LpStatus.OPTIMAL


def effective_matrix(phi):
    """``Phi @ Psi.T``: maps DCT coefficients of a block to its measurements."""
    rows = getattr(phi, "rows", phi)
    return scipy.fft.dct(np.asarray(rows, dtype=float), type=2, norm="ortho", axis=1)


def _measurements(phi, b):
    values = as_vector(getattr(b, "values", b), "b")
    if values.shape[0] != phi.m:
        raise InvalidDimensionError(
            f"{values.shape[0]} measurements do not match sensing matrix with m={phi.m}")
    return values


def build_bp_lp(phi, b):
    """LP for ``min ||s||_1  s.t.  A s = b``."""
    b = _measurements(phi, b)
    A = effective_matrix(phi)
    n = phi.n
    eye = np.eye(n)
    c = np.concatenate([np.zeros(n), np.ones(n)])
    A_ub = np.block([[eye, -eye], [-eye, -eye]])
    b_ub = np.zeros(2 * n)
    A_eq = np.hstack([A, np.zeros((phi.m, n))])
    return LinearProgram(c=c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b)


def _bounds_for(env, n):
    if isinstance(env, StructureEnvelope):
        return envelope_for_length(env, n)
    beta_l, beta_u = env
    beta_l = as_vector(beta_l, "beta_l")
    beta_u = as_vector(beta_u, "beta_u")
    if beta_l.shape[0] != n or beta_u.shape[0] != n:
        raise InvalidDimensionError(
            f"envelope bounds have lengths {beta_l.shape[0]}/{beta_u.shape[0]}, block length is {n}")
    if np.any(beta_l > beta_u):
        raise InvalidInputError("beta_l exceeds beta_u")
    return beta_l, beta_u


def build_scbp_lp(phi, b, env, epsilon, alpha_weight=1.0):
    """LP for ``min ||s||_1 + w alpha`` s.t. ``||A s - b||_1 <= eps`` and
    ``alpha beta_l <= s <= alpha beta_u``, ``alpha >= 0``.

    ``env`` is a :class:`StructureEnvelope` (resampled to the block length) or
    a ``(beta_l, beta_u)`` pair already of length ``n``.
    """
    b = _measurements(phi, b)
    if not epsilon > 0:
        raise InvalidInputError(f"epsilon must be positive, got {epsilon}")
    n, m = phi.n, phi.m
    beta_l, beta_u = _bounds_for(env, n)
    A = effective_matrix(phi)
    eye = np.eye(n)
    zn_m = np.zeros((n, m))
    zm_n = np.zeros((m, n))
    zn1 = np.zeros((n, 1))
    zm1 = np.zeros((m, 1))
    eye_m = np.eye(m)
    A_ub = np.block([
        [eye, -eye, zn_m, zn1],
        [-eye, -eye, zn_m, zn1],
        [A, zm_n, -eye_m, zm1],
        [-A, zm_n, -eye_m, zm1],
        [np.zeros((1, 2 * n)), np.ones((1, m)), np.zeros((1, 1))],
        [-eye, np.zeros((n, n)), zn_m, beta_l[:, None]],
        [eye, np.zeros((n, n)), zn_m, -beta_u[:, None]],
    ])
    b_ub = np.concatenate([np.zeros(2 * n), b, -b, [epsilon], np.zeros(2 * n)])
    c = np.concatenate([np.zeros(n), np.ones(n), np.zeros(m), [alpha_weight]])
    lb = np.full(2 * n + m + 1, -np.inf)
    lb[-1] = 0.0
    return LinearProgram(c=c, A_ub=A_ub, b_ub=b_ub, lb=lb)


def _finish(method, phi, b, sol, n):
    res = RecoveryResult(method=method, status=sol.status, iterations=sol.iterations,
                         max_violation=sol.max_constraint_violation, lp_z=sol.z)
    if not sol.success:
        return res
    s_hat = sol.z[:n].copy()
    res.s_hat = s_hat
    res.x_hat = dct_inverse(s_hat)
    res.objective = sol.objective_value
    res.residual_l1 = float(np.abs(effective_matrix(phi) @ s_hat - b).sum())
    if method == "scbp":
        res.alpha = float(sol.z[-1])
    return res


def bp_recover(phi, b, **solver_opts):
    """Vanilla basis pursuit with exact measurement consistency."""
    values = _measurements(phi, b)
    sol = solve_lp(build_bp_lp(phi, values), **solver_opts)
    return _finish("bp", phi, values, sol, phi.n)


def scbp_recover(phi, b, env, epsilon, alpha_weight=1.0, **solver_opts):
    """Structure-constrained basis pursuit.

    Returns
    -------
    RecoveryResult
        With ``alpha`` set to the optimal envelope scale on success.
    """
    values = _measurements(phi, b)
    lp = build_scbp_lp(phi, values, env, epsilon, alpha_weight=alpha_weight)
    sol = solve_lp(lp, **solver_opts)
    return _finish("scbp", phi, values, sol, phi.n)
