"""Arnoldi iteration and Lanczos specialization over abstract operator spaces.

The routines only need the vector operations +, -, scalar *, and an inner
product, so they run unchanged over numpy arrays, sparse Majorana-string
operators, and large-N diagram states.  Full reorthogonalization is on by
default: the structural diagnostics (the per-column deviation from a
symmetric tridiagonal matrix) are meaningless under Gram-Schmidt drift.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import FitError, NormalizationError, NumericalContractError


def _inner(a, b):
    if isinstance(a, np.ndarray):
        return complex(np.vdot(a, b))
    return complex(a.inner(b))


def _norm(v):
    return float(np.sqrt(abs(_inner(v, v).real)))


def _axpy(u, c, v):
    """u + c*v; mutates u in place when the vector type supports iaxpy.

    Only ever called on freshly produced residual vectors, never on stored
    basis elements.
    """
    if hasattr(u, "iaxpy"):
        u.iaxpy(c, v)
        return u
    return u + c * v


@dataclass
class HessenbergMatrix:
    """Upper Hessenberg matrix from Arnoldi, plus the achieved basis size.

    h is (n_max+1) x (n_max+1); columns at index >= basis_dim are zero when
    the Krylov space closed early.  Subdiagonal entries are real >= 0 by the
    Arnoldi normalization.
    """

    h: np.ndarray
    basis_dim: int

    def diagonal(self):
        return np.diagonal(self.h)[: self.basis_dim]

    def subdiagonal(self):
        return np.diagonal(self.h, -1)[: self.basis_dim - 1].real


@dataclass
class TridiagonalCoeffs:
    """Krylov chain coefficients a_n (n >= 0) and b_n (n >= 1).

    b[i] holds b_(i+1).  When the coefficients were produced by exact
    arithmetic, b_sq carries the exact squares (the square roots may be
    irrational); otherwise b_sq is simply b**2.
    """

    a: list
    b: list
    b_sq: list = field(default=None)

    def __post_init__(self):
        if self.b_sq is None:
            self.b_sq = [bv * bv for bv in self.b]
        if len(self.a) != len(self.b) + 1:
            raise NumericalContractError(
                f"need |a| = |b| + 1, got {len(self.a)} and {len(self.b)}")

    def a_array(self):
        return np.asarray([complex(x) for x in self.a])

    def b_array(self):
        return np.asarray([complex(x) for x in self.b])


def arnoldi(apply, o0, n_max, reorth=True, breakdown_rtol=1e-10):
    """Arnoldi iteration: returns (HessenbergMatrix, orthonormal basis).

    apply is any linear map on the vector type of o0.  Breakdown (the
    Krylov space closing) is reported through basis_dim, not an error.
    """
    if abs(_norm(o0) - 1.0) > 1e-12:
        raise NormalizationError(f"initial operator has norm {_norm(o0)!r}, expected 1")
    h = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    basis = [o0]
    scale = None
    for k in range(1, n_max + 1):
        u = apply(basis[k - 1])
        if scale is None:
            scale = max(_norm(u), 1e-300)
        coeffs = [_inner(v, u) for v in basis]
        for j, (v, c) in enumerate(zip(basis, coeffs)):
            h[j, k - 1] = c
            u = _axpy(u, -c, v)
        if reorth:
            for j, v in enumerate(basis):
                c = _inner(v, u)
                h[j, k - 1] += c
                u = _axpy(u, -c, v)
        beta = _norm(u)
        if beta < breakdown_rtol * scale:
            return HessenbergMatrix(h=h, basis_dim=k), basis
        h[k, k - 1] = beta
        basis.append(u * (1.0 / beta))
    # one more column of projections so the last diagonal entry is filled
    u = apply(basis[n_max])
    for j, v in enumerate(basis):
        h[j, n_max] = _inner(v, u)
    return HessenbergMatrix(h=h, basis_dim=n_max + 1), basis


def lanczos(apply, o0, n_max, reorth=True, hermiticity_rtol=1e-8,
            breakdown_rtol=1e-10, return_basis=False, last_diagonal=True):
    """Hermitian three-term recurrence; errors out if apply is not Hermitian.

    Non-Hermiticity is detected from the overlap with the (k-1)-th basis
    vector, which for a Hermitian map must equal the previous b (real).
    last_diagonal=False skips the final application of the map, recording
    a_n_max = 0 instead; appropriate for maps that change a conserved
    grading by one, where every diagonal element vanishes identically
    (and where that last application would be by far the most expensive).
    """
    if abs(_norm(o0) - 1.0) > 1e-12:
        raise NormalizationError(f"initial operator has norm {_norm(o0)!r}, expected 1")
    a = []
    b = []
    basis = [o0]
    scale = None
    for k in range(n_max + 1):
        if k == n_max and not last_diagonal:
            a.append(0.0)
            break
        u = apply(basis[k])
        if scale is None:
            scale = max(_norm(u), 1e-300)
        ak = _inner(basis[k], u)
        if abs(ak.imag) > hermiticity_rtol * scale:
            raise NumericalContractError(
                f"non-Hermitian map: a_{k} = {ak} has large imaginary part")
        a.append(ak.real)
        if k > 0:
            back = _inner(basis[k - 1], u)
            if abs(back - b[-1]) > hermiticity_rtol * scale:
                raise NumericalContractError(
                    f"non-Hermitian map: back-coupling {back} != b_{k} = {b[-1]}")
            u = _axpy(u, -b[-1], basis[k - 1])
        u = _axpy(u, -a[-1], basis[k])
        if reorth:
            for v in basis:
                u = _axpy(u, -_inner(v, u), v)
        if k == n_max:
            break
        bk = _norm(u)
        if bk < breakdown_rtol * scale:
            break
        b.append(bk)
        basis.append(u * (1.0 / bk))
    coeffs = TridiagonalCoeffs(a=a, b=b)
    if return_basis:
        return coeffs, basis
    return coeffs


def hessenberg_error(hm: HessenbergMatrix):
    """Per-column deviation from a symmetric tridiagonal matrix.

    eps_n^2 = |h_(n-1,n) - h_(n,n-1)|^2 + sum_(k<n-1) |h_(k,n)|^2, n >= 1.
    """
    h = hm.h
    d = hm.basis_dim
    eps = np.zeros(d - 1)
    for n in range(1, d):
        e2 = abs(h[n - 1, n] - h[n, n - 1]) ** 2
        e2 += float(np.sum(np.abs(h[: n - 1, n]) ** 2))
        eps[n - 1] = np.sqrt(e2)
    return eps


def diagonal_slope_fit(hm: HessenbergMatrix, n_min=1, n_max=None):
    """Least-squares slope of Im h_(n,n) against n over [n_min, n_max].

    Returns (slope, r_squared); divide by mu to estimate the growth
    exponent chi.
    """
    if n_max is None:
        n_max = hm.basis_dim - 1
    n_max = min(n_max, hm.basis_dim - 1)
    ns = np.arange(n_min, n_max + 1)
    if ns.size < 2:
        raise FitError(f"fit window [{n_min}, {n_max}] has fewer than 2 diagonal entries")
    ys = np.imag(np.diagonal(hm.h)[ns])
    slope, intercept = np.polyfit(ns, ys, 1)
    resid = ys - (slope * ns + intercept)
    total = ys - np.mean(ys)
    denom = float(np.dot(total, total))
    r2 = 1.0 if denom == 0.0 else 1.0 - float(np.dot(resid, resid)) / denom
    return float(slope), float(r2)
