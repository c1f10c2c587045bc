"""Dual norms with explicit extremizers, constructive Hahn-Banach extension
for polyhedral gauges, Minkowski functionals, and polyhedral cone duality.

Linear functionals are represented by coefficient vectors acting through
the bilinear pairing (no conjugation); the Euclidean shortcut converts to
and from inner-product representers where needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from normlab.core import as_vector, inner_product, p_norm, pairing
from normlab.errors import GaugeDominationError, NonAbsorbingError
from normlab.exponents import as_exponent
from normlab.operators import gram_schmidt
from normlab.simplex import feasible_nonnegative_solution, min_of_linear_max


@dataclass(frozen=True)
class LinearFunctional:
    """v -> pairing(v, coeffs) = sum_j coeffs_j v_j."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", as_vector(self.coeffs))

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def __call__(self, v):
        return pairing(as_vector(v), self.coeffs)


def dual_norm(lam, p) -> float:
    """Dual norm of a functional w.r.t. the p-norm: the q-norm of its coefficients."""
    coeffs = lam.coeffs if isinstance(lam, LinearFunctional) else as_vector(lam)
    return p_norm(coeffs, as_exponent(p).conjugate())


def dual_extremizer(w, p) -> np.ndarray:
    """A nonzero v with |pairing(v, w)| = ||w||_q ||v||_p.

    For p > 1 the construction is v_j = conj(w_j) |w_j|^(q-2) (zero where
    w_j = 0); for p = 1 it concentrates on one index of maximal modulus.
    """
    w = as_vector(w)
    p = as_exponent(p)
    a = np.abs(w)
    if not a.any():
        raise ValueError("extremizer needs a nonzero vector")
    v = np.zeros_like(w)
    if p.value == 1.0:
        idx = int(np.argmax(a))
        v[idx] = np.conj(w[idx]) / a[idx]
        return v
    q = p.conjugate()
    nz = a > 0
    if q.is_inf:
        # p = 1 handled above, so q = inf only via p = 1; unreachable.
        raise AssertionError
    v[nz] = np.conj(w[nz]) * a[nz] ** (q.value - 2.0)
    return v


@dataclass(frozen=True)
class MaxLinearGauge:
    """max_i <c_i, v> over finitely many functionals; a sublinear function.

    With ``absolute=True`` the evaluation is max_i |<c_i, v>|, a seminorm.
    Rows are real; these gauges model polyhedral unit balls.
    """

    rows: np.ndarray
    absolute: bool = False

    def __post_init__(self):
        rows = np.atleast_2d(np.asarray(self.rows, dtype=np.float64))
        if rows.size == 0:
            raise ValueError("gauge needs at least one row")
        object.__setattr__(self, "rows", rows)

    @property
    def dim(self) -> int:
        return self.rows.shape[1]

    def effective_rows(self) -> np.ndarray:
        """Rows of the equivalent plain-max gauge (doubling for absolute)."""
        if self.absolute:
            return np.vstack([self.rows, -self.rows])
        return self.rows

    def __call__(self, v) -> float:
        v = np.asarray(v, dtype=np.float64)
        vals = self.rows @ v
        return float(np.abs(vals).max() if self.absolute else vals.max())


def linf_ball_gauge(dim: int) -> MaxLinearGauge:
    """Gauge of the l_inf unit ball: max_j |v_j|."""
    return MaxLinearGauge(np.eye(dim), absolute=True)


def l1_ball_gauge(dim: int) -> MaxLinearGauge:
    """Gauge of the l_1 unit ball: max over all sign patterns of <s, v>."""
    rows = np.array(list(itertools.product((-1.0, 1.0), repeat=dim)))
    return MaxLinearGauge(rows, absolute=False)


def seminorm_from_sublinear(p: MaxLinearGauge) -> MaxLinearGauge:
    """The seminorm max(p(v), p(-v)) as an absolute gauge with rows +-rows(p)."""
    if p.absolute:
        raise ValueError("input is already a seminorm gauge")
    return MaxLinearGauge(np.vstack([p.rows, -p.rows]), absolute=True)


def gauge_value(gauge, v, tol: float) -> float:
    """Minkowski functional of {gauge <= 1} at v, by bisection on the
    membership oracle gauge(v / r) <= 1.

    Uses only membership queries, never the gauge's homogeneity, so it
    doubles as an independent check of direct gauge evaluation.  ``gauge``
    may be any callable; finite max-linear gauges always absorb, and a
    direction whose membership is never reached (possible for custom
    oracles) raises :class:`NonAbsorbingError`.
    """
    v = np.asarray(v, dtype=np.float64)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not np.any(v):
        return 0.0

    def member(r: float) -> bool:
        return gauge(v / r) <= 1.0

    hi = 1.0
    while not member(hi):
        hi *= 2.0
        if hi > 2.0**60:
            raise NonAbsorbingError("membership never reached up to r = 2^60")
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= 0.0 or member(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class PolyhedralCone:
    """All nonnegative combinations of finitely many generators."""

    generators: np.ndarray

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.generators, dtype=np.float64))
        if g.size == 0:
            raise ValueError("cone needs at least one generator")
        object.__setattr__(self, "generators", g)

    @property
    def dim(self) -> int:
        return self.generators.shape[1]


def dual_cone(cone: PolyhedralCone) -> np.ndarray:
    """Constraint rows of the dual cone {lam : <lam, g_i> >= 0 for all i}.

    The generators themselves are exactly those rows, so this returns them
    in constraint form.
    """
    return cone.generators.copy()


def cone_contains(cone: PolyhedralCone, v, tol: float = 1e-9) -> bool:
    """Whether v = sum t_i g_i has a solution with all t_i >= 0.

    Exhaustive active-set search: by the conic Caratheodory property a
    member has a representation supported on a linearly independent subset
    of generators, so every subset is tried with plain least squares.
    Supported for at most 8 generators.
    """
    g = cone.generators
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (cone.dim,):
        raise ValueError("dimension mismatch")
    k = g.shape[0]
    if k > 8:
        raise ValueError("cone_contains supports at most 8 generators")
    scale = max(float(np.abs(v).max()), 1.0)
    if np.abs(v).max() <= tol * scale:
        return True
    for size in range(1, k + 1):
        for subset in itertools.combinations(range(k), size):
            cols = g[list(subset)].T
            t, *_ = np.linalg.lstsq(cols, v, rcond=None)
            if np.all(t >= -tol) and np.abs(cols @ t - v).max() <= tol * scale:
                return True
    return False


def in_dual_cone(constraint_rows: np.ndarray, lam, tol: float = 1e-9) -> bool:
    """Whether lam satisfies every constraint <lam, row> >= -tol."""
    rows = np.atleast_2d(np.asarray(constraint_rows, dtype=np.float64))
    lam = np.asarray(lam, dtype=np.float64)
    return bool(np.all(rows @ lam >= -tol))


def second_dual_contains(cone: PolyhedralCone, v, tol: float = 1e-9) -> bool:
    """Membership of v in the double dual cone, via the separating-functional
    characterization: v lies outside iff some lam with <lam, g_i> >= 0 for
    all generators has <lam, v> = -1.

    That feasibility question is solved exactly as a small LP, giving a
    route to the double dual that is independent of :func:`cone_contains`.
    """
    g = cone.generators
    v = np.asarray(v, dtype=np.float64)
    k, d = g.shape
    # Variables: lam = lp - lm (free split), slacks s for G lam >= 0.
    # Constraints: G lp - G lm - s = 0 ; v.lp - v.lm = -1.
    a_eq = np.zeros((k + 1, 2 * d + k))
    a_eq[:k, :d] = g
    a_eq[:k, d : 2 * d] = -g
    a_eq[:k, 2 * d :] = -np.eye(k)
    a_eq[k, :d] = v
    a_eq[k, d : 2 * d] = -v
    rhs = np.zeros(k + 1)
    rhs[k] = -1.0
    separating = feasible_nonnegative_solution(a_eq, rhs)
    return separating is None


@dataclass(frozen=True)
class HahnBanachExtension:
    """Result of a constructive extension: the functional plus certificates."""

    functional: LinearFunctional
    agreement_residual: float
    domination_certified: bool


def _norm_and_values_to_matrix(basis_w) -> np.ndarray:
    rows = [as_vector(w) for w in basis_w]
    dims = {r.shape[0] for r in rows}
    if len(dims) != 1:
        raise ValueError("basis vectors must share a dimension")
    return np.vstack(rows)


def _inner_program_rows(gauge: MaxLinearGauge, basis: np.ndarray, mu: np.ndarray):
    rows = gauge.effective_rows()
    return rows @ basis.T - mu[None, :], rows


def hahn_banach_extend(
    basis_w, mu_values, gauge: MaxLinearGauge, tol: float = 1e-9
) -> HahnBanachExtension:
    """Extend a dominated functional one dimension at a time.

    ``mu_values`` gives the functional on the (independent) rows of
    ``basis_w``; the gauge must dominate it on that span, which is checked
    exactly through a small LP before the induction starts.  At each step
    the admissible interval [A, B] for the new value is computed by two
    piecewise-linear programs and the midpoint is taken.  The result is
    certified: agreement on the original span by direct evaluation, and
    gauge domination by convex hull membership of the coefficient vector.
    """
    basis = _norm_and_values_to_matrix(basis_w).astype(np.float64)
    mu = np.asarray(mu_values, dtype=np.float64)
    k, n = basis.shape
    if mu.shape != (k,):
        raise ValueError("one value per basis vector required")
    if np.linalg.matrix_rank(basis) < k:
        raise ValueError("basis_w is linearly dependent")

    rows = gauge.effective_rows()
    if rows.shape[1] != n:
        raise ValueError("gauge dimension mismatch")

    # Precondition mu <= gauge on span(W): inf over t of gauge(Wt) - mu.t
    # is 0 when dominated and -inf otherwise (positively homogeneous).
    a0 = rows @ basis.T - mu[None, :]
    val, _ = min_of_linear_max(a0, np.zeros(a0.shape[0]))
    if val == -np.inf:
        raise GaugeDominationError("mu exceeds the gauge on its span")

    cur_basis = basis
    cur_vals = mu
    for z in np.eye(n):
        # Skip directions already inside the current span.
        stacked = np.vstack([cur_basis, z[None, :]])
        if np.linalg.matrix_rank(stacked) == cur_basis.shape[0]:
            continue
        # B = inf_x gauge(x + z) - mu(x), A = sup_x mu(x) - gauge(x - z).
        a_mat = rows @ cur_basis.T - cur_vals[None, :]
        b_plus = rows @ z
        val_b, _ = min_of_linear_max(a_mat, b_plus)
        val_a_neg, _ = min_of_linear_max(a_mat, -b_plus)
        if val_b == -np.inf or val_a_neg == -np.inf:
            raise NonAbsorbingError("inner extension program is unbounded")
        upper = val_b
        lower = -val_a_neg
        alpha = 0.5 * (lower + upper)
        cur_basis = stacked
        cur_vals = np.concatenate([cur_vals, [alpha]])

    coeffs = np.linalg.solve(cur_basis, cur_vals)
    functional = LinearFunctional(coeffs)

    residual = max(
        abs(functional(basis[i]) - mu[i]) for i in range(k)
    )
    certified = _in_convex_hull(rows, coeffs, tol)
    return HahnBanachExtension(functional, float(residual), certified)


def _in_convex_hull(points: np.ndarray, x: np.ndarray, tol: float) -> bool:
    """Whether x is a convex combination of the given points (exact LP)."""
    m, d = points.shape
    a_eq = np.vstack([points.T, np.ones((1, m))])
    rhs = np.concatenate([x, [1.0]])
    lam = feasible_nonnegative_solution(a_eq, rhs)
    if lam is None:
        return False
    recon = points.T @ lam
    return bool(np.abs(recon - x).max() <= max(tol, 1e-9))


def hahn_banach_euclidean(basis_w, mu_values) -> LinearFunctional:
    """Norm-preserving extension for the Euclidean norm via the representer.

    Works for both fields: the extension is v -> <v, w_mu> with w_mu in the
    span of the basis, returned as a pairing functional.  Its dual 2-norm
    equals the norm of the restriction, so the extension adds nothing.
    """
    rows = [as_vector(w) for w in basis_w]
    mu = np.asarray(mu_values)
    basis = np.vstack(rows)
    if len(gram_schmidt(rows)) != len(rows):
        raise ValueError("basis_w is linearly dependent")
    gram = np.array(
        [[inner_product(rows[l], rows[i]) for i in range(len(rows))]
         for l in range(len(rows))]
    )
    dtype = np.result_type(gram.dtype, mu.dtype, np.float64)
    u = np.linalg.solve(np.conj(gram).T.astype(dtype), mu.astype(dtype))
    w_mu = basis.T.astype(dtype) @ np.conj(u)
    return LinearFunctional(np.conj(w_mu))


def complex_functional_from_real_part(phi, sample_basis) -> LinearFunctional:
    """Recover a complex-linear functional from its real part.

    ``phi`` is a real-linear real-valued function on C^n; the unique complex
    functional with that real part is psi(v) = phi(v) - i phi(iv).  The
    coefficient vector is read off on the standard basis of dimension
    ``sample_basis``.
    """
    n = int(sample_basis)
    coeffs = np.empty(n, dtype=np.complex128)
    for j in range(n):
        e = np.zeros(n, dtype=np.complex128)
        e[j] = 1.0
        coeffs[j] = phi(e) - 1j * phi(1j * e)
    return LinearFunctional(coeffs)
