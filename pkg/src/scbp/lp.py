"""Dense linear programming.

:func:`solve_lp` is a primal-dual interior-point method on the homogeneous
self-dual embedding of

.. math::

    \\min_z c^T z \\quad \\text{s.t.}\\quad A_{ub} z \\le b_{ub},\\;
    A_{eq} z = b_{eq},\\; l \\le z \\le u

using Mehrotra predictor-corrector steps.  The embedding yields either an
optimal pair or a Farkas-type certificate, so infeasible and unbounded
problems are reported as such instead of just failing to converge.

:func:`oracle_solve_small` enumerates every vertex of a small polyhedron.  It
shares nothing with the interior-point code and exists to check it.
"""

from dataclasses import dataclass, field
from enum import Enum
import itertools
import logging
import math

import numpy as np
import scipy.linalg

from .errors import InvalidDimensionError, InvalidInputError, UnsupportedSizeError

__all__ = [
    "LpStatus",
    "LinearProgram",
    "LpSolution",
    "solve_lp",
    "oracle_solve_small",
    "FEASIBILITY_TOL",
    "OPTIMALITY_TOL",
    "MAX_ITER",
]

FEASIBILITY_TOL = 1e-6
OPTIMALITY_TOL = 1e-6
MAX_ITER = 500

log = logging.getLogger(__name__)


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    NUMERICAL_FAILURE = "numerical-failure"

    def __str__(self):
        return self.value


def _matrix(a, k, name):
    if a is None:
        return np.zeros((0, k))
    a = np.array(a, dtype=float, ndmin=2)
    if a.size == 0:
        return np.zeros((0, k))
    if a.ndim != 2 or a.shape[1] != k:
        raise InvalidDimensionError(f"{name} must have shape (rows, {k}), got {a.shape}")
    return a


def _rhs(b, rows, name):
    if b is None:
        b = np.zeros(0)
    b = np.atleast_1d(np.array(b, dtype=float))
    if b.ndim != 1 or b.shape[0] != rows:
        raise InvalidDimensionError(f"{name} must have length {rows}, got shape {b.shape}")
    return b


def _bound(v, k, fill, name):
    if v is None:
        return np.full(k, fill)
    v = np.array(v, dtype=float)
    if v.ndim == 0:
        v = np.full(k, float(v))
    if v.shape != (k,):
        raise InvalidDimensionError(f"{name} must have length {k}, got shape {v.shape}")
    return v


@dataclass(eq=False)
class LinearProgram:
    """``min c @ z  s.t.  A_ub @ z <= b_ub, A_eq @ z == b_eq, lb <= z <= ub``.

    Omitted constraint blocks are empty.  Omitted bounds mean the variable is
    free (``lb = -inf``, ``ub = +inf``); a scalar bound is broadcast.
    """

    c: np.ndarray
    A_ub: np.ndarray = None
    b_ub: np.ndarray = None
    A_eq: np.ndarray = None
    b_eq: np.ndarray = None
    lb: np.ndarray = None
    ub: np.ndarray = None

    def __post_init__(self):
        c = np.atleast_1d(np.array(self.c, dtype=float))
        if c.ndim != 1 or c.size == 0:
            raise InvalidInputError("objective must be a non-empty vector")
        k = c.shape[0]
        self.c = c
        self.A_ub = _matrix(self.A_ub, k, "A_ub")
        self.b_ub = _rhs(self.b_ub, self.A_ub.shape[0], "b_ub")
        self.A_eq = _matrix(self.A_eq, k, "A_eq")
        self.b_eq = _rhs(self.b_eq, self.A_eq.shape[0], "b_eq")
        self.lb = _bound(self.lb, k, -np.inf, "lb")
        self.ub = _bound(self.ub, k, np.inf, "ub")
        for name in ("c", "A_ub", "b_ub", "A_eq", "b_eq"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise InvalidInputError(f"{name} has non-finite entries")
        if np.any(np.isnan(self.lb)) or np.any(np.isnan(self.ub)):
            raise InvalidInputError("bounds contain NaN")
        if np.any(self.lb == np.inf) or np.any(self.ub == -np.inf):
            raise InvalidInputError("lower bound +inf or upper bound -inf")

    @property
    def n_vars(self):
        return self.c.shape[0]

    @property
    def n_constraints(self):
        """Constraint rows plus finite bounds."""
        return (self.A_ub.shape[0] + self.A_eq.shape[0]
                + int(np.isfinite(self.lb).sum()) + int(np.isfinite(self.ub).sum()))

    def violations(self, z):
        """Per-constraint violation amounts (all >= 0), concatenated.

        Order: inequality rows, equality rows, lower bounds, upper bounds
        (the last two over all variables, zero where unbounded).
        """
        z = np.asarray(z, dtype=float)
        with np.errstate(invalid="ignore"):
            ub_rows = np.maximum(self.A_ub @ z - self.b_ub, 0.0)
            eq_rows = np.abs(self.A_eq @ z - self.b_eq)
            lo = np.where(np.isfinite(self.lb), np.maximum(self.lb - z, 0.0), 0.0)
            hi = np.where(np.isfinite(self.ub), np.maximum(z - self.ub, 0.0), 0.0)
        return np.concatenate([ub_rows, eq_rows, lo, hi])

    def max_violation(self, z):
        v = self.violations(z)
        if v.size == 0:
            return 0.0
        if np.any(np.isnan(v)):
            return math.inf
        return float(v.max())


@dataclass(eq=False)
class LpSolution:
    z: np.ndarray
    objective_value: float
    status: LpStatus
    iterations: int
    max_constraint_violation: float
    info: dict = field(default_factory=dict)

    @property
    def success(self):
        return self.status is LpStatus.OPTIMAL


# ---------------------------------------------------------------------------
# interior point


class _Reduced:
    """Presolved problem in the form ``min c x, G x + s = h, s >= 0, A x = b``.

    ``G`` is kept as ``[G_rows; -I[lower]; I[upper]]`` without materialising
    the bound rows.
    """

    def __init__(self, c, G, h, lo_idx, lo_val, up_idx, up_val, A, b):
        self.c = c
        self.G = G
        self.h_rows = h
        self.lo_idx = lo_idx
        self.up_idx = up_idx
        self.A = A
        self.b = b
        self.h = np.concatenate([h, -lo_val, up_val])
        self.k = c.shape[0]
        self.q_rows = G.shape[0]
        self.q = self.h.shape[0]
        self.p = A.shape[0]
        self.free_cols = np.ones(self.k, dtype=bool)
        self.free_cols[lo_idx] = False
        self.free_cols[up_idx] = False
        self.free_cols &= ~np.any(G != 0.0, axis=0)

    def G_mul(self, x):
        return np.concatenate([self.G @ x, -x[self.lo_idx], x[self.up_idx]])

    def GT_mul(self, z):
        r = self.G.T @ z[:self.q_rows]
        nlo = self.lo_idx.shape[0]
        r[self.lo_idx] -= z[self.q_rows:self.q_rows + nlo]
        r[self.up_idx] += z[self.q_rows + nlo:]
        return r

    def weighted_gram(self, w):
        """``G.T @ diag(w) @ G``."""
        Gw = self.G * np.sqrt(w[:self.q_rows])[:, None]
        H = Gw.T @ Gw
        nlo = self.lo_idx.shape[0]
        d = np.zeros(self.k)
        d[self.lo_idx] += w[self.q_rows:self.q_rows + nlo]
        d[self.up_idx] += w[self.q_rows + nlo:]
        H[np.diag_indices_from(H)] += d
        return H


class _KKTSolver:
    """Factorisation of ``[[H, A.T], [A, 0]]`` reused for several right-hand sides."""

    def __init__(self, H, A, use_schur, refine=2):
        self.A = A
        self.H = H
        self.refine = refine
        k = H.shape[0]
        p = A.shape[0]
        self.k = k
        self.mode = None
        scale = max(1.0, float(np.max(np.abs(np.diag(H))))) if k else 1.0
        if use_schur:
            try:
                self.L = scipy.linalg.cho_factor(H, lower=True, check_finite=False)
                if p:
                    HinvAT = scipy.linalg.cho_solve(self.L, A.T, check_finite=False)
                    M = A @ HinvAT
                    self.M = self._chol_reg(M)
                self.mode = "schur"
                return
            except (np.linalg.LinAlgError, scipy.linalg.LinAlgError):
                pass
        reg = 1e-13 * scale
        K = np.zeros((k + p, k + p))
        K[:k, :k] = H
        K[:k, :k][np.diag_indices(k)] += reg
        K[:k, k:] = A.T
        K[k:, :k] = A
        K[k:, k:][np.diag_indices(p)] -= reg
        self.K = K
        self.lu = scipy.linalg.lu_factor(K, check_finite=False)
        self.mode = "augmented"

    @staticmethod
    def _chol_reg(M):
        scale = max(1.0, float(np.max(np.abs(np.diag(M)))))
        reg = 0.0
        for _ in range(8):
            try:
                Mr = M.copy()
                Mr[np.diag_indices_from(Mr)] += reg
                return scipy.linalg.cho_factor(Mr, lower=True, check_finite=False)
            except (np.linalg.LinAlgError, scipy.linalg.LinAlgError):
                reg = 1e-14 * scale if reg == 0.0 else reg * 100.0
        raise np.linalg.LinAlgError("Schur complement not positive definite")

    def solve(self, r1, r2):
        dx, dy = self._solve(r1, r2)
        for _ in range(self.refine):
            e1 = r1 - self.H @ dx - self.A.T @ dy
            e2 = r2 - self.A @ dx
            cx, cy = self._solve(e1, e2)
            dx = dx + cx
            dy = dy + cy
        return dx, dy

    def _solve(self, r1, r2):
        if self.mode == "schur":
            u = scipy.linalg.cho_solve(self.L, r1, check_finite=False)
            if self.A.shape[0] == 0:
                return u, np.zeros(0)
            dy = scipy.linalg.cho_solve(self.M, self.A @ u - r2, check_finite=False)
            dx = scipy.linalg.cho_solve(self.L, r1 - self.A.T @ dy, check_finite=False)
            return dx, dy
        rhs = np.concatenate([r1, r2])
        sol = scipy.linalg.lu_solve(self.lu, rhs, check_finite=False)
        return sol[:self.k], sol[self.k:]


def _max_step(v, dv):
    neg = dv < 0
    if not np.any(neg):
        return np.inf
    return float(np.min(-v[neg] / dv[neg]))


def _hsd(prob, tol, max_iter):
    """Run the embedding; returns ``(status, x, y, z, s, iterations, reduced_accuracy)``."""
    k, p, q = prob.k, prob.p, prob.q
    c, A, b, h = prob.c, prob.A, prob.b, prob.h
    x = np.zeros(k)
    y = np.zeros(p)
    s = np.ones(q)
    z = np.ones(q)
    tau = 1.0
    kappa = 1.0
    nb = max(1.0, math.sqrt(float(b @ b + h @ h)))
    nc = max(1.0, float(np.linalg.norm(c)))
    use_schur = not np.any(prob.free_cols)
    step_factor = 0.995
    best = None
    stalls = 0
    no_progress = 0

    for it in range(max_iter + 1):
        Gx = prob.G_mul(x)
        GTz = prob.GT_mul(z)
        r_d = A.T @ y + GTz + c * tau
        r_pe = A @ x - b * tau
        r_pi = Gx + s - h * tau
        cx = float(c @ x)
        byhz = float(b @ y + h @ z)
        r_g = cx + byhz + kappa
        mu = (float(s @ z) + tau * kappa) / (q + 1)

        pres = max(np.linalg.norm(r_pe), np.linalg.norm(r_pi)) / (tau * nb)
        dres = np.linalg.norm(r_d) / (tau * nc)
        pobj = cx / tau
        dobj = -byhz / tau
        relgap = abs(pobj - dobj) / (1.0 + abs(pobj))
        if not (np.isfinite(pres) and np.isfinite(dres) and np.isfinite(relgap)):
            break
        if pres <= tol and dres <= tol and relgap <= tol:
            return LpStatus.OPTIMAL, x / tau, y / tau, z / tau, s / tau, it, False
        quality = max(pres, dres, relgap)
        if best is not None and quality >= best[0]:
            no_progress += 1
            if no_progress >= 15:
                break
        else:
            no_progress = 0
        log.debug("%3d pres=%.2e dres=%.2e gap=%.2e tau=%.2e kappa=%.2e mu=%.2e",
                  it, pres, dres, relgap, tau, kappa, mu)
        if best is None or quality < best[0]:
            best = (quality, x / tau, y / tau, z / tau, s / tau)

        # Farkas certificates
        if byhz < 0:
            pinf = np.linalg.norm(A.T @ y + GTz) / (-byhz)
            if pinf <= tol:
                return LpStatus.INFEASIBLE, x, y, z, s, it, False
        if cx < 0:
            dinf = max(np.linalg.norm(A @ x), np.linalg.norm(Gx + s)) / (-cx)
            if dinf <= tol:
                return LpStatus.UNBOUNDED, x, y, z, s, it, False
        if it == max_iter:
            break

        w = z / s
        try:
            kkt = _KKTSolver(prob.weighted_gram(w), A, use_schur)
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgError, ValueError):
            break
        Wh = w * h
        g1 = -(c - prob.GT_mul(Wh))
        dx1, dy1 = kkt.solve(g1, b)
        e1 = float(c @ dx1 + b @ dy1 + Wh @ prob.G_mul(dx1)) - float(h @ Wh) - kappa / tau

        def direction(eta, r_sz, r_tk):
            q0 = eta * r_pi + r_sz / z
            f1 = -eta * r_d - prob.GT_mul(w * q0)
            f2 = -eta * r_pe
            dx0, dy0 = kkt.solve(f1, f2)
            e0 = float(c @ dx0 + b @ dy0 + Wh @ prob.G_mul(dx0))
            dtau = (-eta * r_g - e0 - float(Wh @ q0) - r_tk / tau) / e1
            dx = dx0 + dtau * dx1
            dy = dy0 + dtau * dy1
            dz = w * (prob.G_mul(dx) - h * dtau + q0)
            ds = (r_sz - s * dz) / z
            dkappa = (r_tk - kappa * dtau) / tau
            return dx, dy, dz, ds, dtau, dkappa

        def step_to_boundary(d):
            _, _, dz, ds, dtau, dkappa = d
            a = min(_max_step(s, ds), _max_step(z, dz),
                    _max_step(np.array([tau]), np.array([dtau])),
                    _max_step(np.array([kappa]), np.array([dkappa])))
            return a

        # predictor
        aff = direction(1.0, -s * z, -tau * kappa)
        a_aff = min(1.0, step_to_boundary(aff))
        _, _, dz_a, ds_a, dtau_a, dk_a = aff
        mu_aff = (float((s + a_aff * ds_a) @ (z + a_aff * dz_a))
                  + (tau + a_aff * dtau_a) * (kappa + a_aff * dk_a)) / (q + 1)
        sigma = min(1.0, max(0.0, (mu_aff / mu) ** 3))

        # corrector
        r_sz = sigma * mu - s * z - ds_a * dz_a
        r_tk = sigma * mu - tau * kappa - dtau_a * dk_a
        d = direction(1.0 - sigma, r_sz, r_tk)
        if not all(np.all(np.isfinite(v)) for v in d[:4]):
            break
        alpha = min(1.0, step_factor * step_to_boundary(d))
        dx, dy, dz, ds, dtau, dkappa = d
        x = x + alpha * dx
        y = y + alpha * dy
        z = z + alpha * dz
        s = s + alpha * ds
        tau = tau + alpha * dtau
        kappa = kappa + alpha * dkappa
        stalls = stalls + 1 if alpha < 1e-8 else 0
        if stalls >= 5 or tau <= 0 or kappa < 0:
            break

    # Reduced-accuracy exit: once z/s spans many decades the normal equations
    # cannot be solved to ``tol`` any more.  The best iterate is still
    # accepted when it meets the public tolerances; the caller re-verifies
    # feasibility on the original rows.
    if best is not None and best[0] <= max(100 * tol, min(FEASIBILITY_TOL, OPTIMALITY_TOL)):
        _, x, y, z, s = best
        return LpStatus.OPTIMAL, x, y, z, s, it, True
    return LpStatus.NUMERICAL_FAILURE, (best[1] if best else x), y, z, s, it, False


def _normalise_rows(M, v):
    nrm = np.linalg.norm(M, axis=1)
    zero = nrm == 0.0
    nrm[zero] = 1.0
    return M / nrm[:, None], v / nrm, zero


def _independent_rows(A, b):
    """Drop linearly dependent equality rows; report whether they were consistent."""
    p = A.shape[0]
    if p == 0:
        return A, b, True
    _, R, piv = scipy.linalg.qr(A.T, pivoting=True, mode="economic")
    d = np.abs(np.diag(R))
    rank = int(np.sum(d > 1e-10 * d[0])) if d.size and d[0] > 0 else 0
    if rank == p:
        return A, b, True
    keep = np.sort(piv[:rank])
    drop = np.sort(piv[rank:])
    coef, *_ = scipy.linalg.lstsq(A[keep].T, A[drop].T)
    implied = coef.T @ b[keep]
    consistent = bool(np.all(np.abs(implied - b[drop]) <= 1e-9 * (1.0 + np.abs(b[drop]))))
    return A[keep], b[keep], consistent


def solve_lp(lp, tol=1e-9, max_iter=MAX_ITER):
    """Solve ``lp`` with the homogeneous self-dual interior-point method.

    Parameters
    ----------
    lp : LinearProgram
    tol : float
        Internal stopping tolerance on scaled primal/dual residuals and the
        relative gap.  The returned point is then re-checked against the
        original constraints with :data:`FEASIBILITY_TOL`.
    max_iter : int

    Returns
    -------
    LpSolution
        ``objective_value`` is ``+inf`` for infeasible problems, ``-inf`` for
        unbounded ones and ``nan`` on numerical failure.  When ``tol`` could
        not be reached but the best iterate meets :data:`FEASIBILITY_TOL`
        and :data:`OPTIMALITY_TOL`, the status is optimal and
        ``info["reduced_accuracy"]`` is set.
    """
    if not isinstance(lp, LinearProgram):
        raise InvalidInputError("solve_lp expects a LinearProgram")
    k = lp.n_vars

    def finish(status, z, iterations, **info):
        z = np.asarray(z, dtype=float)
        viol = lp.max_violation(z)
        if status is LpStatus.OPTIMAL and not viol <= FEASIBILITY_TOL:
            info["rejected_violation"] = viol
            status = LpStatus.NUMERICAL_FAILURE
        if status is LpStatus.OPTIMAL:
            obj = float(lp.c @ z)
        elif status is LpStatus.INFEASIBLE:
            obj = math.inf
        elif status is LpStatus.UNBOUNDED:
            obj = -math.inf
        else:
            obj = math.nan
        return LpSolution(z=z, objective_value=obj, status=status,
                          iterations=iterations, max_constraint_violation=viol, info=info)

    lb, ub = lp.lb, lp.ub
    if np.any(lb > ub):
        return finish(LpStatus.INFEASIBLE, np.where(np.isfinite(lb), lb, 0.0), 0,
                      reason="crossed bounds")

    # fixed variables are substituted out
    fixed = np.isfinite(lb) & (lb == ub)
    z_fixed = np.where(fixed, lb, 0.0)
    keep = ~fixed
    G = lp.A_ub[:, keep]
    h = lp.b_ub - lp.A_ub[:, fixed] @ lb[fixed]
    A = lp.A_eq[:, keep]
    b = lp.b_eq - lp.A_eq[:, fixed] @ lb[fixed]
    c = lp.c[keep]
    lbk, ubk = lb[keep], ub[keep]

    G, h, g_zero = _normalise_rows(G, h)
    A, b, a_zero = _normalise_rows(A, b)
    if np.any(h[g_zero] < -FEASIBILITY_TOL) or np.any(np.abs(b[a_zero]) > FEASIBILITY_TOL):
        z0 = z_fixed.copy()
        return finish(LpStatus.INFEASIBLE, z0, 0, reason="empty row with incompatible rhs")
    G, h = G[~g_zero], h[~g_zero]
    A, b = A[~a_zero], b[~a_zero]
    A, b, consistent = _independent_rows(A, b)
    if not consistent:
        return finish(LpStatus.INFEASIBLE, z_fixed.copy(), 0, reason="inconsistent equalities")

    # columns touched by no constraint at all
    untouched = (~np.any(G != 0.0, axis=0) & ~np.any(A != 0.0, axis=0)
                 & ~np.isfinite(lbk) & ~np.isfinite(ubk))
    ray_cols = untouched & (c != 0.0)
    active = ~untouched

    info = {}
    kk = int(active.sum())
    x_full = np.zeros(c.shape[0])
    if kk == 0:
        status, it = LpStatus.OPTIMAL, 0
    else:
        lo_idx = np.flatnonzero(np.isfinite(lbk[active]))
        up_idx = np.flatnonzero(np.isfinite(ubk[active]))
        prob = _Reduced(c[active], G[:, active], h, lo_idx, lbk[active][lo_idx],
                        up_idx, ubk[active][up_idx], A[:, active], b)
        if prob.q == 0 and prob.p == 0:
            status, xa, it = (LpStatus.UNBOUNDED if np.any(prob.c != 0) else LpStatus.OPTIMAL,
                              np.zeros(kk), 0)
        else:
            status, xa, _, _, _, it, reduced = _hsd(prob, tol, max_iter)
            if reduced:
                info["reduced_accuracy"] = True
        x_full[active] = xa
    if status is LpStatus.OPTIMAL and np.any(ray_cols):
        status = LpStatus.UNBOUNDED
    z = z_fixed.copy()
    z[keep] = x_full
    return finish(status, z, it, **info)


# ---------------------------------------------------------------------------
# vertex enumeration oracle


def oracle_solve_small(lp, max_vars=10, max_subsets=300_000, tol=1e-9):
    """Minimise ``lp`` by checking every vertex of its feasible polyhedron.

    Every choice of ``k - rank(A_eq)`` inequality rows or finite bounds is
    combined with a row basis of the equalities; nonsingular square systems
    give candidate vertices, which are kept when they satisfy all
    constraints to ``tol`` (scaled by ``1 + |rhs|``).

    Only meaningful when the polyhedron has a vertex and the optimum is finite
    (e.g. a bounded feasible region).

    Raises
    ------
    UnsupportedSizeError
        When ``lp`` has more than ``max_vars`` variables or the number of
        candidate subsets exceeds ``max_subsets``.
    """
    k = lp.n_vars
    if k > max_vars:
        raise UnsupportedSizeError(f"{k} variables exceeds oracle limit of {max_vars}")

    rows = [lp.A_ub]
    rhs = [lp.b_ub]
    lo = np.flatnonzero(np.isfinite(lp.lb))
    up = np.flatnonzero(np.isfinite(lp.ub))
    eye = np.eye(k)
    rows += [-eye[lo], eye[up]]
    rhs += [-lp.lb[lo], lp.ub[up]]
    Gi = np.vstack(rows)
    hi = np.concatenate(rhs)

    Ae, be = lp.A_eq, lp.b_eq
    if Ae.shape[0]:
        # row basis of the equalities by pivoted QR on A_eq^T
        _, R, piv = scipy.linalg.qr(Ae.T, pivoting=True, mode="economic")
        d = np.abs(np.diag(R))
        rank = int(np.sum(d > 1e-10 * max(1.0, d[0]))) if d.size else 0
        basis = np.sort(piv[:rank])
        Ab, bb = Ae[basis], be[basis]
    else:
        rank = 0
        Ab, bb = np.zeros((0, k)), np.zeros(0)

    need = k - rank
    nineq = Gi.shape[0]
    if need > nineq:
        raise UnsupportedSizeError("polyhedron has no vertices (too few constraints)")
    count = math.comb(nineq, need)
    if count > max_subsets:
        raise UnsupportedSizeError(f"{count} candidate subsets exceeds limit of {max_subsets}")

    subsets = np.array(list(itertools.combinations(range(nineq), need)), dtype=int)
    if need == 0:
        subsets = np.zeros((1, 0), dtype=int)
    mats = np.concatenate([np.broadcast_to(Ab, (len(subsets),) + Ab.shape), Gi[subsets]], axis=1)
    vecs = np.concatenate([np.broadcast_to(bb, (len(subsets), rank)), hi[subsets]], axis=1)

    sv = np.linalg.svd(mats, compute_uv=False)
    ok = sv[:, -1] > 1e-10 * np.maximum(sv[:, 0], 1e-300)
    best_z = None
    best_obj = math.inf
    if np.any(ok):
        verts = np.linalg.solve(mats[ok], vecs[ok][..., None])[..., 0]
        slack_ub = Gi @ verts.T - hi[:, None]
        feas = np.all(slack_ub <= tol * (1.0 + np.abs(hi))[:, None], axis=0)
        if Ae.shape[0]:
            res_eq = np.abs(Ae @ verts.T - be[:, None])
            feas &= np.all(res_eq <= tol * (1.0 + np.abs(be))[:, None], axis=0)
        if np.any(feas):
            objs = verts[feas] @ lp.c
            i = int(np.argmin(objs))
            best_obj = float(objs[i])
            best_z = verts[feas][i]
    if best_z is None:
        return LpSolution(z=np.full(k, np.nan), objective_value=math.inf,
                          status=LpStatus.INFEASIBLE, iterations=int(count),
                          max_constraint_violation=math.inf)
    return LpSolution(z=best_z, objective_value=best_obj, status=LpStatus.OPTIMAL,
                      iterations=int(count), max_constraint_violation=lp.max_violation(best_z))
