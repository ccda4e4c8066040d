"""Contexts (orthonormal bases), context coefficients, and residual structure.

A context is an ordered orthonormal basis, equivalently a complete family of
rank-one projections.  Relative to a context every operator splits into a
diagonal part (the context map) and an off-diagonal part (the residual map);
the Hilbert-Schmidt norm of the residual equals the context coefficient

    c(A) = sqrt(sum_i Var_{phi_i}(A))

which vanishes exactly when A commutes with every basis projection.  The two
solvable residual eigenproblems, dimension two and constant off-diagonal
entries, get closed-form spectra here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, InvariantViolation
from .operators import Operator, VectorState, hermitian_eigen, hs_norm

ORTHO_TOL = 1e-10
COMPLETE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Context:
    """Ordered orthonormal basis of a finite-dimensional complex space."""

    basis: tuple[VectorState, ...]

    def __post_init__(self):
        basis = tuple(self.basis)
        if not basis:
            raise DimensionMismatch("context needs at least one basis vector")
        dim = basis[0].dim
        if any(b.dim != dim for b in basis):
            raise DimensionMismatch("context basis vectors have mixed dimensions")
        if len(basis) != dim:
            raise DimensionMismatch(f"context has {len(basis)} vectors for dimension {dim}")
        rows = np.stack([b.vec for b in basis])
        gram = rows.conj() @ rows.T
        if np.max(np.abs(gram - np.eye(dim))) > ORTHO_TOL:
            raise InvariantViolation("context basis is not orthonormal within tolerance")
        completeness = rows.T @ rows.conj()
        if np.max(np.abs(completeness - np.eye(dim))) > COMPLETE_TOL:
            raise InvariantViolation("context projections do not sum to the identity")
        rows.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_rows", rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> np.ndarray:
        """Basis vectors stacked as rows, shape (dim, dim)."""
        return self._rows

    def vector(self, i: int) -> np.ndarray:
        """i-th basis vector (0-based)."""
        return self.basis[i].vec


def context_from_rows(rows) -> Context:
    arr = np.asarray(rows, dtype=complex)
    return Context(tuple(VectorState(r) for r in arr))


def context_from_columns(cols) -> Context:
    return context_from_rows(np.asarray(cols, dtype=complex).T)


def standard_context(dim: int) -> Context:
    return context_from_rows(np.eye(dim))


def random_context(dim: int, rng: np.random.Generator) -> Context:
    """Haar-like random context: QR of a complex Gaussian matrix, phases fixed."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d.conj() / np.abs(d))
    return context_from_columns(q)


def eigenvector_context(a: Operator) -> Context:
    """Context formed by the eigenvectors of a Hermitian operator."""
    _, v = hermitian_eigen(a)
    return context_from_columns(v)


def _check_op(a: Operator, ctx: Context) -> None:
    if a.dim != ctx.dim:
        raise DimensionMismatch(f"operator dim {a.dim} vs context dim {ctx.dim}")


def _in_context_frame(a: Operator, ctx: Context) -> np.ndarray:
    """Matrix of A in the context basis: entry (i, j) is <phi_i, A phi_j>."""
    rows = ctx.matrix
    return rows.conj() @ a.mat @ rows.T


def context_coefficient(a: Operator, ctx: Context) -> float:
    """sqrt of the summed pure-state variances of A over the context basis.

    Each variance is evaluated in the residual form || A phi - <phi, A phi> phi ||^2,
    which equals the trace form exactly but stays accurate when A is close to
    measurable (the trace form bottoms out at sqrt of machine noise there).
    """
    _check_op(a, ctx)
    rows = ctx.matrix
    images = rows @ a.mat.T  # row i is A phi_i
    means = np.einsum("ij,ij->i", rows.conj(), images)
    residuals = images - means[:, None] * rows
    total = float(np.sum(np.abs(residuals) ** 2))
    return math.sqrt(max(total, 0.0))


def context_map(a: Operator, ctx: Context) -> Operator:
    """Diagonal part of A relative to the context: sum_i <phi_i, A phi_i> |phi_i><phi_i|."""
    _check_op(a, ctx)
    rows = ctx.matrix
    diag = np.einsum("ia,ab,ib->i", rows.conj(), a.mat, rows)
    return Operator((rows.T * diag) @ rows.conj())


def residual_map(a: Operator, ctx: Context) -> Operator:
    """Off-diagonal part of A relative to the context: A minus the context map."""
    return Operator(a.mat - context_map(a, ctx).mat)


def is_measurable(a: Operator, ctx: Context, tol: float = 1e-10) -> bool:
    """True when A commutes with every basis projection of the context.

    Uses the commutator criterion max_i ||A P_i - P_i A|| <= tol, and cross
    checks it against the residual-norm criterion at the coarser scale
    tol * dim; disagreement would indicate a numerical inconsistency.
    """
    _check_op(a, ctx)
    if tol <= 0:
        raise InvariantViolation("tolerance must be positive")
    worst = 0.0
    for b in ctx.basis:
        p = np.outer(b.vec, b.vec.conj())
        worst = max(worst, float(np.linalg.norm(a.mat @ p - p @ a.mat)))
    commutes = worst <= tol
    residual_small = hs_norm(residual_map(a, ctx)) <= tol * ctx.dim
    if commutes and not residual_small:
        raise InvariantViolation("commutation and residual-norm criteria disagree")
    return commutes


def offdiag_uniform(ctx: Context, alpha: complex) -> Operator:
    """Operator with constant entry alpha on every off-diagonal pair of the context.

    alpha * sum_{i != j} |phi_i><phi_j|; normal for every alpha.
    """
    if alpha == 0:
        raise InvariantViolation("alpha must be nonzero")
    rows = ctx.matrix
    total = rows.sum(axis=0)
    full = np.outer(total, total.conj())
    return Operator(alpha * (full - np.eye(ctx.dim)))


# Unit-direction patterns for the eigenvalue -1 eigenvectors of the constant
# off-diagonal operator, in the basis coordinates; normalized at use.
_MINUS_ONE_PATTERNS: dict[int, tuple[tuple[int, ...], ...]] = {
    2: ((1, -1),),
    3: ((1, -1, 0), (1, 1, -2)),
    4: ((1, -1, 0, 0), (0, 0, 1, -1), (1, 1, -1, -1)),
    5: ((1, -1, 0, 0, 0), (0, 0, 1, -1, 0), (1, 1, -1, -1, 0), (1, 1, 1, 1, -4)),
    6: (
        (1, -1, 0, 0, 0, 0),
        (0, 0, 1, -1, 0, 0),
        (0, 0, 0, 0, 1, -1),
        (0, 0, 1, 1, -1, -1),
        (2, 2, -1, -1, -1, -1),
    ),
}


def _paired_difference_basis(n: int) -> list[np.ndarray]:
    """Deterministic orthonormal basis of the orthocomplement of the all-ones direction.

    Blocks of indices are merged pairwise left to right; each merge emits the
    normalized weighted difference of the two block sums, which is orthogonal
    to every block sum and to the total.
    """
    eye = np.eye(n)
    blocks: list[tuple[int, np.ndarray]] = [(1, eye[i]) for i in range(n)]
    out: list[np.ndarray] = []
    while len(blocks) > 1:
        merged: list[tuple[int, np.ndarray]] = []
        i = 0
        while i + 1 < len(blocks):
            (ka, sa), (kb, sb) = blocks[i], blocks[i + 1]
            vec = kb * sa - ka * sb
            out.append(vec / np.linalg.norm(vec))
            merged.append((ka + kb, sa + sb))
            i += 2
        if i < len(blocks):
            merged.append(blocks[i])
        blocks = merged
    return out


def offdiag_uniform_spectrum(n: int) -> list[tuple[float, np.ndarray]]:
    """Full spectrum of the constant off-diagonal operator with alpha = 1.

    Returns ``[(n-1, psi), (-1, v_1), ..., (-1, v_{n-1})]`` in standard
    coordinates, where psi is the normalized all-ones vector and the v_k form
    an orthonormal basis of its orthocomplement.  For n <= 6 the v_k follow
    the documented explicit patterns; larger n uses the paired-difference
    construction.
    """
    if n < 2:
        raise InvariantViolation(f"need dimension >= 2, got {n}")
    psi = np.ones(n) / math.sqrt(n)
    if n in _MINUS_ONE_PATTERNS:
        minus = [np.array(p, dtype=float) for p in _MINUS_ONE_PATTERNS[n]]
        minus = [v / np.linalg.norm(v) for v in minus]
    else:
        minus = _paired_difference_basis(n)
    return [(float(n - 1), psi)] + [(-1.0, v) for v in minus]


def dim2_residual_eigen(
    a: complex, b: complex, ctx: Context
) -> Optional[tuple[tuple[complex, np.ndarray], tuple[complex, np.ndarray]]]:
    """Eigenpairs of a |phi_1><phi_2| + b |phi_2><phi_1| on a two-dimensional space.

    The operator is normal exactly when |a| = |b|; in that case, writing
    a = r e^(i theta) and b = r e^(i phi), the eigenvalues are
    +- r e^(i (theta + phi) / 2) with eigenvectors

        (phi_1 + e^(i (phi - theta) / 2) phi_2) / sqrt(2)
        (-e^(i (theta - phi) / 2) phi_1 + phi_2) / sqrt(2)

    Returns None when |a| != |b| (non-normal case, no orthonormal eigenbasis).
    """
    if ctx.dim != 2:
        raise DimensionMismatch(f"context must have dimension 2, got {ctx.dim}")
    if a == 0 or b == 0:
        raise InvariantViolation("coefficients a and b must be nonzero")
    r = abs(a)
    if abs(r - abs(b)) > 1e-10:
        return None
    theta = cmath.phase(a)
    phi = cmath.phase(b)
    lam1 = r * cmath.exp(1j * (theta + phi) / 2.0)
    p1, p2 = ctx.vector(0), ctx.vector(1)
    v1 = (p1 + cmath.exp(1j * (phi - theta) / 2.0) * p2) / math.sqrt(2.0)
    v2 = (-cmath.exp(1j * (theta - phi) / 2.0) * p1 + p2) / math.sqrt(2.0)
    return (lam1, v1), (-lam1, v2)
