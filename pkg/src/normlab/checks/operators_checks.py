"""Checks for operator norms, the eigensolver, Schatten norms, projections,
PSD calculus, spectral radius, and Neumann series."""

from __future__ import annotations

import numpy as np

from normlab.checks._util import (
    bool_margin,
    margin_eq,
    margin_le,
    pick,
    rand_hermitian,
    rand_matrix,
    rand_vector,
)
from normlab.core import inner_product, p_norm
from normlab.operators import (
    adjoint,
    gram_schmidt,
    hermitian_eig,
    hs_norm,
    is_psd,
    neumann_inverse,
    op_norm_exact,
    op_norm_lower,
    orthogonal_projection,
    psd_sqrt,
    schatten_norm,
    schmidt,
    schur_bound,
    sp_duality_report,
    spectral_radius_estimate,
    trace,
)
from normlab.verify import Check

_MAX_DIM = 16


def _dim(rng, ctx) -> int:
    return int(min(pick(rng, ctx.config.dims), _MAX_DIM))


def _sample_matrix(rng, ctx):
    n = _dim(rng, ctx)
    return {"t": rand_matrix(rng, n, n, bool(rng.integers(2)))}


def _sample_matrix_p(rng, ctx):
    payload = _sample_matrix(rng, ctx)
    payload["p"] = float(pick(rng, ctx.config.p_grid))
    return payload


def _cstar(payload, ctx):
    t = payload["t"]
    lhs = op_norm_exact(adjoint(t) @ t, 2)
    rhs = op_norm_exact(t, 2) ** 2
    return margin_eq(lhs, rhs, 1e-9 * max(rhs, 1.0))


def _adjoint_norm_symmetry(payload, ctx):
    t = payload["t"]
    return margin_eq(
        op_norm_exact(adjoint(t), 1), op_norm_exact(t, float("inf")), 0.0
    )


def _schur_domination(payload, ctx):
    t, p = payload["t"], payload["p"]
    lower, _ = op_norm_lower(t, p, iters=60, seed=1)
    return margin_le(lower, schur_bound(t, p), 1e-10 * max(1.0, lower))


def _trace_vs_trace_norm(payload, ctx):
    t = payload["t"]
    s1 = schatten_norm(t, 1)
    return margin_le(abs(trace(t)), s1, 1e-10 * max(s1, 1.0))


def _schatten_monotone(payload, ctx):
    t = payload["t"]
    finite = sorted(float(p) for p in ctx.config.p_grid)
    worst = np.inf
    for p, q in zip(finite[:-1], finite[1:]):
        np_, nq = schatten_norm(t, p), schatten_norm(t, q)
        worst = min(worst, margin_le(nq, np_, 1e-10 * max(np_, 1.0)))
    return worst


def _schatten_triangle(payload, ctx):
    s, t, p = payload["s"], payload["t"], payload["p"]
    rhs = schatten_norm(s, p) + schatten_norm(t, p)
    return margin_le(schatten_norm(s + t, p), rhs, 1e-9 * max(rhs, 1.0))


def _sample_two_matrices(rng, ctx):
    n = _dim(rng, ctx)
    complex_field = bool(rng.integers(2))
    return {
        "s": rand_matrix(rng, n, n, complex_field),
        "t": rand_matrix(rng, n, n, complex_field),
        "p": float(pick(rng, ctx.config.p_grid)),
    }


def _sample_orthonormal_family(rng, ctx):
    n = _dim(rng, ctx)
    complex_field = bool(rng.integers(2))
    k = int(rng.integers(1, n + 1))
    return {
        "t": rand_matrix(rng, n, n, complex_field),
        "ys": rand_matrix(rng, k, n, complex_field),
        "zs": rand_matrix(rng, k, n, complex_field),
        "p": float(pick(rng, ctx.config.p_grid)),
    }


def _sp_orthonormal_pairs(payload, ctx):
    t, p = payload["t"], payload["p"]
    ys = gram_schmidt(list(payload["ys"]))
    zs = gram_schmidt(list(payload["zs"]))
    k = min(len(ys), len(zs))
    if k == 0:
        return 0.0
    vals = np.array([abs(inner_product(t @ ys[h], zs[h])) for h in range(k)])
    lhs = p_norm(vals, p)
    rhs = schatten_norm(t, p)
    return margin_le(lhs, rhs, 1e-9 * max(rhs, 1.0))


def _sp_column_bound(payload, ctx):
    t = payload["t"]
    p = max(2.0, payload["p"]) if np.isfinite(payload["p"]) else float("inf")
    ys = gram_schmidt(list(payload["ys"]))
    if not ys:
        return 0.0
    norms = np.array([p_norm(t @ y, 2) for y in ys])
    lhs = p_norm(norms, p)
    rhs = schatten_norm(t, p)
    return margin_le(lhs, rhs, 1e-9 * max(rhs, 1.0))


def _trace_norm_attained(payload, ctx):
    t = payload["t"]
    dec = schmidt(t)
    # R = U W^H pairs the Schmidt directions; tr(R T) = sum of values.
    r = dec.right @ dec.left.conj().T
    lhs, _ = sp_duality_report(t, r, 1.0)
    s1 = schatten_norm(t, 1)
    attained = margin_eq(lhs, s1, 1e-9 * max(s1, 1.0))
    contraction = margin_le(schatten_norm(r, float("inf")), 1.0, 1e-9)
    return min(attained, contraction)


def _psd_trace_product(payload, ctx):
    a = adjoint(payload["s"]) @ payload["s"]
    b = adjoint(payload["t"]) @ payload["t"]
    val = trace(a @ b)
    scale = max(abs(trace(a)) * abs(trace(b)), 1.0)
    real_part = val.real if isinstance(val, complex) else val
    imag_part = abs(val.imag) if isinstance(val, complex) else 0.0
    return min(
        margin_le(-real_part, 0.0, 1e-10 * scale),
        margin_le(imag_part, 0.0, 1e-10 * scale),
    )


def _sample_projection(rng, ctx):
    n = max(2, _dim(rng, ctx))
    complex_field = bool(rng.integers(2))
    k = int(rng.integers(1, n))
    basis_full = rand_matrix(rng, n, n, complex_field)
    while abs(np.linalg.det(basis_full)) < 1e-6:
        basis_full = rand_matrix(rng, n, n, complex_field)
    return {"basis_full": basis_full, "k": k}


def _projection_norm(payload, ctx):
    b = payload["basis_full"]
    k = int(payload["k"])
    n = b.shape[0]
    selector = np.zeros((n, n), dtype=b.dtype)
    selector[:k, :k] = np.eye(k)
    p = b @ selector @ np.linalg.inv(b)
    idem = margin_le(
        float(np.abs(p @ p - p).max()), 1e-8 * max(1.0, float(np.abs(p).max()))
    )
    norm_bound = margin_le(1.0 - 1e-12, op_norm_exact(p, 2))
    # The orthogonal projection onto the same range has norm exactly 1 and
    # realizes the distance minimization property.
    q = orthogonal_projection(list(b[:, :k].T))
    ortho = margin_eq(op_norm_exact(q, 2), 1.0, 1e-9)
    return min(idem, norm_bound, ortho)


def _spectral_radius_power(payload, ctx):
    a = payload["a"]
    n_pow = int(payload["n_pow"])
    _, eigs = hermitian_eig(a)
    rad = float(np.abs(eigs).max())
    power = np.linalg.matrix_power(a, n_pow)
    power = (power + adjoint(power)) / 2.0
    _, eigs_n = hermitian_eig(power)
    rad_n = float(np.abs(eigs_n).max())
    scale = max(rad**n_pow, 1e-12)
    ident = margin_eq(rad_n, rad**n_pow, 1e-8 * scale)
    # Gelfand estimate dominates the radius and approaches it.
    est = spectral_radius_estimate(a, 6)
    upper = margin_le(rad, est, 1e-8 * max(rad, 1.0))
    close = margin_eq(est, rad, 1e-6 * max(rad, 1.0))
    return min(ident, upper, close)


def _eig_reconstruction(payload, ctx):
    a = payload["a"]
    q, eigs = hermitian_eig(a)
    scale = max(hs_norm(a), np.finfo(float).tiny)
    recon = margin_le(hs_norm(q @ np.diag(eigs) @ q.conj().T - a), 1e-9 * scale)
    unitary = margin_le(
        float(np.abs(q.conj().T @ q - np.eye(a.shape[0])).max()), 1e-10
    )
    ordered = bool_margin(bool(np.all(np.diff(eigs) <= 1e-15)))
    return min(recon, unitary, ordered)


def _sample_rect(rng, ctx):
    m = _dim(rng, ctx)
    n = _dim(rng, ctx)
    complex_field = bool(rng.integers(2))
    if rng.random() < 0.15:
        d = rand_vector(rng, min(m, n), complex_field)
        t = np.zeros((m, n), dtype=complex if complex_field else float)
        np.fill_diagonal(t, d)
        return {"t": t, "diagonal": True}
    return {"t": rand_matrix(rng, m, n, complex_field), "diagonal": False}


def _schmidt_reconstruction(payload, ctx):
    t = payload["t"]
    dec = schmidt(t)
    scale = max(hs_norm(t), np.finfo(float).tiny)
    recon = margin_le(hs_norm(dec.reconstruct() - t), 1e-9 * scale)
    k = dec.values.size
    gram_r = margin_le(
        float(np.abs(dec.right.conj().T @ dec.right - np.eye(k)).max()), 1e-10
    )
    gram_l = margin_le(
        float(np.abs(dec.left.conj().T @ dec.left - np.eye(k)).max()), 1e-10
    )
    ordered = bool_margin(bool(np.all(np.diff(dec.values) <= 1e-15)))
    out = min(recon, gram_r, gram_l, ordered)
    if payload.get("diagonal"):
        exact = np.sort(np.abs(np.diag(t)))[::-1]
        padded = np.zeros(k)
        padded[: exact.size] = exact
        out = min(out, margin_le(float(np.abs(dec.values - padded).max()), 1e-14))
    return out


def _psd_calculus(payload, ctx):
    t = payload["t"]
    a = adjoint(t) @ t
    ok_psd = bool_margin(is_psd(a, 1e-10 * max(hs_norm(a), 1.0)))
    b = psd_sqrt(a)
    scale = max(hs_norm(a), np.finfo(float).tiny)
    sq = margin_le(hs_norm(b @ b - a), 1e-9 * scale)
    sym = bool_margin(not is_psd(np.diag([1.0, -1.0]), 1e-10))
    return min(ok_psd, sq, sym)


def _neumann(payload, ctx):
    t, n_terms = payload["t"], int(payload["n_terms"])
    nrm = op_norm_exact(t, 2)
    t = t * (payload["target_norm"] / max(nrm, 1e-12))
    nrm = op_norm_exact(t, 2)
    s = neumann_inverse(t, n_terms)
    eye = np.eye(t.shape[0], dtype=t.dtype)
    residual = op_norm_exact((eye - t) @ s - eye, 2)
    return margin_le(residual, nrm ** (n_terms + 1), 1e-12)


def _sample_neumann(rng, ctx):
    n = _dim(rng, ctx)
    return {
        "t": rand_matrix(rng, n, n, bool(rng.integers(2))),
        "n_terms": int(rng.integers(1, 30)),
        "target_norm": float(rng.uniform(0.1, 0.9)),
    }


def _trace_cyclic(payload, ctx):
    a, b = payload["s"], payload["t"]
    lhs, rhs = trace(a @ b), trace(b @ a)
    scale = max(hs_norm(a) * hs_norm(b), 1.0)
    return margin_le(abs(lhs - rhs), 0.0, 1e-12 * scale)


def _hs_identities(payload, ctx):
    t = payload["t"]
    scale = max(hs_norm(t), 1.0)
    m1 = margin_eq(hs_norm(t), hs_norm(adjoint(t)), 1e-13 * scale)
    tr_gram = trace(adjoint(t) @ t)
    tr_val = tr_gram.real if isinstance(tr_gram, complex) else tr_gram
    m2 = margin_eq(hs_norm(t) ** 2, float(tr_val), 1e-12 * scale**2)
    m3 = margin_eq(hs_norm(t), schatten_norm(t, 2), 1e-10 * scale)
    return min(m1, m2, m3)


def _sp_duality(payload, ctx):
    t, r, p = payload["t"], payload["s"], payload["p"]
    lhs, rhs = sp_duality_report(t, r, p)
    return margin_le(lhs, rhs, 1e-10 * max(rhs, 1.0))


def build() -> list[Check]:
    sample_hermitian = lambda rng, ctx: {
        "a": rand_hermitian(rng, _dim(rng, ctx), bool(rng.integers(2)))
    }
    sample_power = lambda rng, ctx: {
        "a": rand_hermitian(rng, _dim(rng, ctx), bool(rng.integers(2))),
        "n_pow": int(rng.integers(1, 5)),
    }
    return [
        Check(
            "operators.cstar_identity", "operators",
            "This is known as the C*-identity",
            _sample_matrix, _cstar,
        ),
        Check(
            "operators.adjoint_norm_symmetry", "operators",
            "||T||_op = ||T*||_op*",
            _sample_matrix, _adjoint_norm_symmetry,
        ),
        Check(
            "operators.schur_domination", "operators",
            "A famous theorem of Schur states that",
            _sample_matrix_p, _schur_domination,
        ),
        Check(
            "operators.trace_vs_trace_norm", "operators",
            "|tr A| <= ||A||_tr",
            _sample_matrix, _trace_vs_trace_norm,
        ),
        Check(
            "operators.schatten_monotonicity", "operators",
            "(sum a_j^q)^{1/q} <= (sum a_j^p)^{1/p} for singular values",
            _sample_matrix, _schatten_monotone,
        ),
        Check(
            "operators.schatten_triangle", "operators",
            "the S_p norm satisfies the triangle inequality",
            _sample_two_matrices, _schatten_triangle,
        ),
        Check(
            "operators.sp_orthonormal_pairs", "operators",
            "(sum |<T(y_h), z_h>|^p)^{1/p} <= (sum |lambda_j|^p)^{1/p}",
            _sample_orthonormal_family, _sp_orthonormal_pairs,
        ),
        Check(
            "operators.sp_column_bound", "operators",
            "(sum ||T(y_h)||_2^p)^{1/p} <= ||T||_{S_p}",
            _sample_orthonormal_family, _sp_column_bound,
        ),
        Check(
            "operators.trace_norm_duality", "operators",
            "it suffices to check that tr(R T) attains the trace norm",
            _sample_matrix, _trace_norm_attained,
        ),
        Check(
            "operators.psd_trace_product", "operators",
            "tr A B >= 0 for every pair of nonnegative self-adjoint",
            _sample_two_matrices, _psd_trace_product,
        ),
        Check(
            "operators.projection_norm", "operators",
            "||P||_op >= 1",
            _sample_projection, _projection_norm,
        ),
        Check(
            "operators.spectral_radius_power", "operators",
            "rad(T^n) = rad(T)^n",
            sample_power, _spectral_radius_power,
        ),
        Check(
            "operators.eig_reconstruction", "operators",
            "there is an orthonormal basis of V consisting of eigenvectors of A",
            sample_hermitian, _eig_reconstruction,
        ),
        Check(
            "operators.schmidt_reconstruction", "operators",
            "A Schmidt decomposition for a linear mapping",
            _sample_rect, _schmidt_reconstruction,
        ),
        Check(
            "operators.psd_calculus", "operators",
            "T*T is self-adjoint and nonnegative; can be expressed as B^2",
            _sample_matrix, _psd_calculus,
        ),
        Check(
            "operators.neumann_tail", "operators",
            "is invertible on V when ||T||_op < 1",
            _sample_neumann, _neumann,
        ),
        Check(
            "operators.trace_cyclic", "operators",
            "tr (A o B) = tr (B o A)",
            _sample_two_matrices, _trace_cyclic,
        ),
        Check(
            "operators.hs_identities", "operators",
            "the Hilbert-Schmidt norms of T and T* are the same",
            _sample_matrix, _hs_identities,
        ),
        Check(
            "operators.sp_duality", "operators",
            "|tr(R o T)| <= ||T||_{S_p} ||R||_{S_q}",
            _sample_two_matrices, _sp_duality,
        ),
    ]
