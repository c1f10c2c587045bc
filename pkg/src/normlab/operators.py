"""Matrices as linear maps: operator norms, adjoints, eigensolver, SVD,
Schatten norms, projections, PSD calculus, and Neumann series.

Matrices are 2-d numpy arrays (float64 or complex128).  Everything spectral
routes through :func:`hermitian_eig`, a cyclic Jacobi solver whose hot loop
lives in the kernel backend; numpy's own eigensolvers are used only as
independent oracles in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from normlab import _kernels
from normlab.core import p_norm
from normlab.errors import ConvergenceError, NonHermitianError, NotPSDError
from normlab.exponents import Exponent, as_exponent


def as_matrix(t) -> np.ndarray:
    arr = np.asarray(t)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError("matrix must be 2-d and nonempty")
    if np.iscomplexobj(arr):
        return arr.astype(np.complex128, copy=False)
    return arr.astype(np.float64, copy=False)


def apply(t, v) -> np.ndarray:
    t = as_matrix(t)
    v = np.asarray(v)
    if t.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: {t.shape} @ {v.shape}")
    return t @ v


def adjoint(t) -> np.ndarray:
    """Conjugate transpose (plain transpose in the real case)."""
    return as_matrix(t).conj().T


def trace(t):
    t = as_matrix(t)
    if t.shape[0] != t.shape[1]:
        raise ValueError("trace requires a square matrix")
    s = np.trace(t)
    return complex(s) if np.iscomplexobj(t) else float(s)


def hs_norm(t) -> float:
    """Hilbert-Schmidt (Frobenius) norm: sqrt of the sum of |entries|^2."""
    return float(np.sqrt(np.sum(np.abs(as_matrix(t)) ** 2)))


def hermitian_eig(
    a, tol: float = 1e-12, max_sweeps: int = 60
) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Returns (q, eigs) with q unitary, eigs real sorted descending, and
    a = q @ diag(eigs) @ q* up to tol * ||a||_HS.  Raises
    :class:`NonHermitianError` for non-Hermitian input and
    :class:`ConvergenceError` if ``max_sweeps`` is exhausted.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise NonHermitianError("matrix is not square")
    scale = hs_norm(a)
    if np.abs(a - a.conj().T).max() > 1e-12 * max(scale, 1.0):
        raise NonHermitianError("matrix is not Hermitian within 1e-12")
    was_real = not np.iscomplexobj(a)
    q, eigs, off, sweeps = _kernels.jacobi_hermitian(
        a.astype(np.complex128, copy=False), tol, max_sweeps
    )
    if off > tol * max(scale, np.finfo(float).tiny):
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3e})"
        )
    order = np.argsort(-eigs, kind="stable")
    eigs = eigs[order]
    q = q[:, order]
    if was_real:
        # Real symmetric input keeps the rotations real; drop the zero
        # imaginary part so callers get a real orthogonal basis.
        q = q.real.copy()
    return q, eigs


@dataclass(frozen=True)
class SchmidtDecomposition:
    """T(v) = sum_j values[j] * <v, right[j]> * left[j].

    ``left`` (output directions) and ``right`` (input directions) are
    orthonormal column stacks; ``values`` are nonnegative and descending;
    ``rank`` counts values above the decomposition's rank tolerance.
    """

    left: np.ndarray
    right: np.ndarray
    values: np.ndarray
    rank: int

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.values) @ self.right.conj().T

    def apply(self, v: np.ndarray) -> np.ndarray:
        weights = self.right.conj().T @ v
        return self.left @ (self.values * weights)


def _complete_orthonormal(cols: np.ndarray, m: int, want: int) -> np.ndarray:
    """Extend orthonormal columns to ``want`` columns using standard basis."""
    have = cols.shape[1]
    if have >= want:
        return cols[:, :want]
    out = [cols[:, j] for j in range(have)]
    for j in range(m):
        cand = np.zeros(m, dtype=cols.dtype)
        cand[j] = 1.0
        for u in out:
            cand = cand - np.vdot(u, cand) * u
        nrm = np.linalg.norm(cand)
        if nrm > 1e-8:
            out.append(cand / nrm)
            if len(out) == want:
                break
    return np.column_stack(out)


def schmidt(t, rank_tol: float | None = None) -> SchmidtDecomposition:
    """Schmidt decomposition (SVD) built from the Jacobi eigensolver.

    Diagonalizes adjoint(T) @ T; singular values are square roots of the
    clipped eigenvalues, right vectors the eigenvectors, and left vectors
    T @ u_j / value_j for values above ``rank_tol`` (default
    1e-10 * ||T||_HS), completed to an orthonormal family otherwise.
    """
    t = as_matrix(t)
    m, n = t.shape
    scale = hs_norm(t)
    if rank_tol is None:
        rank_tol = 1e-10 * scale
    gram = adjoint(t) @ t
    gram = (gram + gram.conj().T) / 2.0
    q, eigs = hermitian_eig(gram)
    values = np.sqrt(np.clip(eigs, 0.0, None))
    k = min(m, n)
    values = values[:k]
    right = q[:, :k]
    lead = []
    for j in range(k):
        if values[j] > rank_tol:
            lead.append((t @ right[:, j]) / values[j])
        else:
            break
    if lead:
        # The raw columns lose orthogonality like the squared condition
        # number; a Gram-Schmidt polish restores it at machine precision
        # while moving each column by no more than the prior deviation.
        polished = gram_schmidt(lead, tol=1e-8)
        if len(polished) == len(lead):
            lead = polished
        left = _complete_orthonormal(np.column_stack(lead), m, k)
    else:
        left = _complete_orthonormal(np.zeros((m, 0), dtype=t.dtype), m, k)
    rank = int(np.sum(values > rank_tol))
    return SchmidtDecomposition(left=left, right=right, values=values, rank=rank)


def op_norm_exact(t, p) -> float:
    """Operator norm for p in {1, 2, inf}.

    p=1 is the maximum column absolute sum, p=inf the maximum row absolute
    sum, and p=2 the top singular value from :func:`schmidt`.
    """
    t = as_matrix(t)
    p = as_exponent(p)
    if p.is_inf:
        return float(np.abs(t).sum(axis=1).max())
    if p.value == 1.0:
        return float(np.abs(t).sum(axis=0).max())
    if p.value == 2.0:
        dec = schmidt(t)
        return float(dec.values[0]) if dec.values.size else 0.0
    raise ValueError(f"exact operator norm only for p in {{1, 2, inf}}, got {p}")


def _dual_scale(u: np.ndarray, p: Exponent) -> np.ndarray:
    """conj(u_j) |u_j|^(p-2) with zeros preserved; the p-norm dual map."""
    a = np.abs(u)
    out = np.zeros_like(u)
    nz = a > 0
    out[nz] = np.conj(u[nz]) * a[nz] ** (p.value - 2.0)
    return out


def op_norm_lower(
    t, p, iters: int = 200, seed: int = 0
) -> tuple[float, np.ndarray]:
    """Certified lower bound for the p -> p operator norm, with witness.

    Runs the alternating dual-scaling fixed-point iteration suggested by the
    extremal stationarity conditions, seeded deterministically, and keeps the
    best unit-ratio witness seen.  The returned bound is ||T x||_p / ||x||_p
    for the returned x, hence always a valid lower bound; it is nondecreasing
    in ``iters``.  The standard basis vectors are always tried, which makes
    the bound exact for diagonal matrices and for p in {1, inf}.
    """
    t = as_matrix(t)
    p = as_exponent(p)
    if iters < 1:
        raise ValueError("iters must be >= 1")
    m, n = t.shape
    col_norms = [p_norm(t[:, k], p) for k in range(n)]
    best_k = int(np.argmax(col_norms))
    best = float(col_norms[best_k])
    witness = np.zeros(n, dtype=t.dtype)
    witness[best_k] = 1.0

    if p.is_inf:
        # Row with maximal absolute sum is attained by its phase vector.
        row = int(np.argmax(np.abs(t).sum(axis=1)))
        x = np.ones(n, dtype=t.dtype)
        nz = np.abs(t[row]) > 0
        x[nz] = np.conj(t[row, nz]) / np.abs(t[row, nz])
        ratio = p_norm(t @ x, p) / p_norm(x, p)
        if ratio > best:
            best, witness = float(ratio), x
        return best, witness
    if p.value == 1.0:
        return best, witness

    q = p.conjugate()
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    if np.iscomplexobj(t):
        x = x + 1j * rng.standard_normal(n)
    x = x.astype(t.dtype)
    stalled = 0
    prev_ratio = -np.inf
    for _ in range(iters):
        nx = p_norm(x, p)
        if nx == 0.0:
            break
        x = x / nx
        y = t @ x
        ratio = p_norm(y, p)
        if ratio > best:
            best, witness = float(ratio), x.copy()
        # Successive iterates within 1e-12 several times: fixed point reached.
        if abs(ratio - prev_ratio) < 1e-12 * max(abs(ratio), 1.0):
            stalled += 1
            if stalled >= 8:
                break
        else:
            stalled = 0
        prev_ratio = ratio
        # Stationarity maps: y-side dual scaling, then pull back through
        # the bilinear transpose and rescale with the conjugate exponent.
        z = t.T @ _dual_scale(y, p)
        x_new = _dual_scale(z, q)
        if p_norm(x_new, p) == 0.0:
            break
        x = x_new
    return best, witness


def schur_bound(t, p) -> float:
    """||T||_1^(1/p) * ||T||_inf^(1-1/p); upper bound for the p->p norm."""
    t = as_matrix(t)
    p = as_exponent(p)
    alpha = p.reciprocal
    n1 = op_norm_exact(t, 1)
    ninf = op_norm_exact(t, Exponent(float("inf")))
    if alpha == 0.0:
        return ninf
    if alpha == 1.0:
        return n1
    return n1**alpha * ninf ** (1.0 - alpha)


def schatten_norm(t, p) -> float:
    """p-norm of the singular values; S_1 trace norm, S_2 HS, S_inf operator."""
    dec = schmidt(t)
    if dec.values.size == 0:
        return 0.0
    return p_norm(dec.values, p)


def is_psd(a, tol: float = 1e-10) -> bool:
    """Hermitian with smallest eigenvalue >= -tol."""
    a = as_matrix(a)
    _, eigs = hermitian_eig(a)
    return bool(eigs[-1] >= -tol)


def psd_sqrt(a) -> np.ndarray:
    """The PSD square root B with B @ B = A."""
    a = as_matrix(a)
    q, eigs = hermitian_eig(a)
    scale = max(hs_norm(a), np.finfo(float).tiny)
    if eigs[-1] < -1e-9 * scale:
        raise NotPSDError(f"matrix has negative eigenvalue {eigs[-1]:.3e}")
    root = np.sqrt(np.clip(eigs, 0.0, None))
    return (q * root) @ q.conj().T


def spectral_radius_estimate(t, k: int) -> float:
    """Gelfand-style bound ||T^(2^k)||_2^(1/2^k); >= spectral radius.

    Repeated squaring with per-step rescaling, so no overflow occurs for any
    finite input; nonincreasing in k up to rounding.
    """
    t = as_matrix(t)
    if t.shape[0] != t.shape[1]:
        raise ValueError("square matrix required")
    if k < 0:
        raise ValueError("k must be >= 0")
    if not np.all(np.isfinite(t)):
        raise OverflowError("matrix contains non-finite entries")
    c = t
    log_scale = 0.0
    for _ in range(k):
        s = op_norm_exact(c, 2)
        if s == 0.0:
            return 0.0
        c = (c / s) @ (c / s)
        log_scale = 2.0 * (log_scale + np.log(s))
    final = op_norm_exact(c, 2)
    if final == 0.0:
        return 0.0
    return float(np.exp((np.log(final) + log_scale) / 2.0**k))


def gram_schmidt(vs, tol: float = 1e-10) -> list[np.ndarray]:
    """Orthonormalize a family; near-dependent vectors are dropped.

    Two projection passes per vector keep the family orthonormal to roughly
    machine precision even for ill-conditioned inputs.
    """
    out: list[np.ndarray] = []
    for v in vs:
        v = np.asarray(v).astype(complex if np.iscomplexobj(v) else float)
        w = v.copy()
        for _ in range(2):
            for u in out:
                w = w - np.vdot(u, w) * u
        nrm = np.linalg.norm(w)
        if nrm >= tol:
            out.append(w / nrm)
    return out


def orthogonal_projection(basis_w) -> np.ndarray:
    """Matrix of the orthogonal projection onto the span of ``basis_w``."""
    basis_w = [np.asarray(v) for v in basis_w]
    ortho = gram_schmidt(basis_w)
    if len(ortho) != len(basis_w):
        raise ValueError("basis is linearly dependent")
    q = np.column_stack(ortho)
    return q @ q.conj().T


def neumann_inverse(t, n: int) -> np.ndarray:
    """Partial geometric series sum_{j<=n} T^j approximating (I - T)^(-1).

    Requires ||T||_2 < 1; the residual ||(I-T) S_n - I||_2 is bounded by
    ||T||_2^(n+1).
    """
    t = as_matrix(t)
    if t.shape[0] != t.shape[1]:
        raise ValueError("square matrix required")
    if n < 0:
        raise ValueError("n must be >= 0")
    nrm = op_norm_exact(t, 2)
    if nrm >= 1.0:
        raise ValueError(f"Neumann series needs ||T||_2 < 1, got {nrm:.6g}")
    dim = t.shape[0]
    total = np.eye(dim, dtype=t.dtype)
    power = np.eye(dim, dtype=t.dtype)
    for _ in range(n):
        power = power @ t
        total = total + power
    return total


def sp_duality_report(t, r, p) -> tuple[float, float]:
    """(|tr(R T)|, ||T||_{S_p} ||R||_{S_q}); the first never exceeds the second."""
    t = as_matrix(t)
    r = as_matrix(r)
    if r.shape[1] != t.shape[0] or r.shape[0] != t.shape[1]:
        raise ValueError("shapes must compose to a square product")
    p = as_exponent(p)
    lhs = abs(trace(r @ t))
    rhs = schatten_norm(t, p) * schatten_norm(r, p.conjugate())
    return float(lhs), float(rhs)
