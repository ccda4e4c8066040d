"""Bipartite tensor structure and pure-state entanglement.

A bipartite unit vector is stored through its coefficient matrix C with
psi = sum_ij C[i, j] e_i (x) f_j, using the row-major index convention
(i, j) -> i * dimB + j throughout (matching ``numpy.kron``).  The Schmidt
decomposition is the SVD of C; the squared singular values form a probability
measure whose classical entanglement number is the entanglement number of the
state.

An entanglement triple bundles a probability measure with one context per
factor.  It generates a vector state, its projector, a separable state (the
diagonal part in the product context), and a Hermitian traceless coupling
operator (the off-diagonal part); the Hilbert-Schmidt norm of that operator,
its context coefficient in the product context, and the classical
entanglement number of the measure all coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .contexts import Context, context_coefficient, context_from_rows, random_context
from .errors import DimensionMismatch, InvariantViolation
from .measures import ProbMeasure, entanglement_number
from .operators import DensityState, Operator, hs_norm

COEFF_UNIT_TOL = 1e-10
# Singular values below this are treated as zero for rank decisions.
SCHMIDT_CUTOFF = 1e-12


@dataclass(frozen=True, eq=False)
class BipartiteVectorState:
    """Unit vector on a product space, stored as its dimA x dimB coefficient matrix."""

    coeff: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeff, dtype=complex)
        if c.ndim != 2 or c.size == 0:
            raise DimensionMismatch(f"coefficient matrix must be 2-d, got shape {c.shape}")
        if not (np.all(np.isfinite(c.real)) and np.all(np.isfinite(c.imag))):
            raise InvariantViolation("coefficients must be finite")
        nrm = float(np.linalg.norm(c))
        if abs(nrm - 1.0) > COEFF_UNIT_TOL:
            raise InvariantViolation(f"coefficient matrix has norm {nrm!r}, expected 1")
        c.setflags(write=False)
        object.__setattr__(self, "coeff", c)

    @property
    def dims(self) -> tuple[int, int]:
        return self.coeff.shape

    @property
    def vector(self) -> np.ndarray:
        """The state as a flat vector of length dimA * dimB (row-major)."""
        return self.coeff.reshape(-1)


def bipartite_from_vector(vec, dims: tuple[int, int]) -> BipartiteVectorState:
    v = np.asarray(vec, dtype=complex).reshape(-1)
    da, db = dims
    if da < 1 or db < 1 or da * db != v.size:
        raise DimensionMismatch(f"dims {dims} do not factor vector length {v.size}")
    return BipartiteVectorState(v.reshape(da, db))


@dataclass(frozen=True, eq=False)
class Entanglement:
    """Probability measure plus one context per factor, factors of equal dimension.

    The measure may be shorter than the context dimension; it is zero-padded.
    Mass beyond the context dimension is rejected.
    """

    lam: ProbMeasure
    ctx_a: Context
    ctx_b: Context

    def __post_init__(self):
        if self.ctx_a.dim != self.ctx_b.dim:
            raise DimensionMismatch(
                f"factor contexts differ in dimension: {self.ctx_a.dim} vs {self.ctx_b.dim}"
            )
        n = self.ctx_a.dim
        w = self.lam.weights
        if len(w) > n:
            if np.any(w[n:] > 1e-12):
                raise InvariantViolation(
                    f"measure has mass outside the first {n} atoms"
                )
            w = w[:n] / w[:n].sum()
        elif len(w) < n:
            w = np.concatenate([w, np.zeros(n - len(w))])
        object.__setattr__(self, "lam", ProbMeasure(w))

    @property
    def dim(self) -> int:
        return self.ctx_a.dim


def tensor(a: Operator, b: Operator) -> Operator:
    """Kronecker product with the left factor as the major index."""
    return Operator(np.kron(a.mat, b.mat))


def product_context(ctx_a: Context, ctx_b: Context) -> Context:
    """Context {phi_i (x) psi_j} on the product space, ordered i-major."""
    rows = [np.kron(ra, rb) for ra in ctx_a.matrix for rb in ctx_b.matrix]
    return context_from_rows(np.stack(rows))


def psi_from_entanglement(e: Entanglement) -> BipartiteVectorState:
    """sum_i sqrt(lam_i) phi_i (x) psi_i in computational coordinates."""
    amps = np.sqrt(e.lam.weights)
    coeff = np.einsum("i,ia,ib->ab", amps, e.ctx_a.matrix, e.ctx_b.matrix)
    return BipartiteVectorState(coeff)


def schmidt_coefficients(psi: BipartiteVectorState) -> np.ndarray:
    """Singular values of the coefficient matrix, descending."""
    return np.linalg.svd(psi.coeff, compute_uv=False)


def schmidt_decompose(psi: BipartiteVectorState) -> Entanglement:
    """Schmidt decomposition as an entanglement triple.

    Unequal factor dimensions are handled by zero-padding the smaller factor.
    Phases are fixed by making the first component of largest magnitude of
    each left singular vector real positive, so the output is deterministic;
    the weight measure itself is unique.
    """
    da, db = psi.dims
    n = max(da, db)
    c = np.zeros((n, n), dtype=complex)
    c[:da, :db] = psi.coeff
    u, s, vh = np.linalg.svd(c)
    for k in range(n):
        j = int(np.argmax(np.abs(u[:, k])))
        ph = u[j, k]
        if abs(ph) > 0:
            ph = ph / abs(ph)
            u[:, k] *= ph.conjugate()
            vh[k, :] *= ph
    lam = ProbMeasure(np.maximum(s, 0.0) ** 2 / float(np.sum(s**2)))
    return Entanglement(lam, context_from_rows(u.T), context_from_rows(vh))


def pure_entanglement_number(psi: BipartiteVectorState) -> float:
    """Classical entanglement number of the Schmidt weights: sqrt(1 - sum s_k^4).

    Evaluated through the cross terms sum_{i != j} lam_i lam_j of the Schmidt
    weights, which avoids the cancellation of 1 - sum lam^2 near factorized
    states.
    """
    lam = schmidt_coefficients(psi) ** 2
    total = float(lam.sum())
    if total <= 0.0:
        return 0.0
    cross = float(np.sum(lam * (total - lam)))
    return math.sqrt(max(cross, 0.0)) / total


def is_factorized_state(psi: BipartiteVectorState, tol: float = 1e-10) -> bool:
    """True when the largest Schmidt weight carries all the mass within tol."""
    s = schmidt_coefficients(psi)
    return bool(s[0] ** 2 >= 1.0 - tol)


def separable_state(e: Entanglement) -> DensityState:
    """sum_i lam_i P_{phi_i} (x) P_{psi_i}: the diagonal part of the projector of psi."""
    n = e.dim
    out = np.zeros((n * n, n * n), dtype=complex)
    for i, w in enumerate(e.lam.weights):
        if w == 0.0:
            continue
        t = np.kron(e.ctx_a.vector(i), e.ctx_b.vector(i))
        out += w * np.outer(t, t.conj())
    return DensityState(out, factor_dims=(n, n))


def entanglement_operator(e: Entanglement) -> Operator:
    """sum_{i != j} sqrt(lam_i lam_j) |phi_i (x) psi_i><phi_j (x) psi_j|.

    Hermitian and traceless; adding it to the separable part recovers the
    projector onto the generated vector state.
    """
    n = e.dim
    amps = np.sqrt(e.lam.weights)
    terms = [np.kron(e.ctx_a.vector(i), e.ctx_b.vector(i)) for i in range(n)]
    out = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        if amps[i] == 0.0:
            continue
        for j in range(n):
            if i == j or amps[j] == 0.0:
                continue
            out += amps[i] * amps[j] * np.outer(terms[i], terms[j].conj())
    return Operator(out)


class EntanglementTriple(NamedTuple):
    """The three independently computed entanglement measures of a triple."""

    context_coeff: float
    operator_norm: float
    measure_number: float


def verify_entanglement_triple(e: Entanglement) -> EntanglementTriple:
    """Compute the context coefficient, operator norm, and measure number separately.

    The three values agree mathematically; the caller asserts the tolerance.
    """
    b = entanglement_operator(e)
    d = product_context(e.ctx_a, e.ctx_b)
    return EntanglementTriple(
        context_coeff=context_coefficient(b, d),
        operator_norm=hs_norm(b),
        measure_number=entanglement_number(e.lam),
    )


def dim2_entanglement_spectrum(lam1: float, lam2: float) -> list[tuple[float, np.ndarray]]:
    """Closed-form spectrum of the coupling operator for a two-level pair.

    For weights (lam1, lam2) in the standard contexts, the eigenvalues are
    {0, 0, +sqrt(lam1 lam2), -sqrt(lam1 lam2)}; the zero eigenvectors are the
    factorized cross terms and the nonzero ones the symmetric/antisymmetric
    combinations of the diagonal product vectors.
    """
    if lam1 < -1e-12 or lam2 < -1e-12 or abs(lam1 + lam2 - 1.0) > 1e-12:
        raise InvariantViolation(f"({lam1}, {lam2}) is not a probability pair")
    g = math.sqrt(max(lam1 * lam2, 0.0))
    e00 = np.array([1, 0, 0, 0], dtype=complex)
    e01 = np.array([0, 1, 0, 0], dtype=complex)
    e10 = np.array([0, 0, 1, 0], dtype=complex)
    e11 = np.array([0, 0, 0, 1], dtype=complex)
    plus = (e00 + e11) / math.sqrt(2.0)
    minus = (e00 - e11) / math.sqrt(2.0)
    return [(0.0, e01), (0.0, e10), (g, plus), (-g, minus)]


def maximally_entangled(n: int, ctx_a: Context, ctx_b: Context) -> Entanglement:
    """Entanglement with uniform weights 1/n; attains the bound sqrt((n-1)/n)."""
    if n < 2:
        raise InvariantViolation(f"need n >= 2, got {n}")
    if ctx_a.dim != n or ctx_b.dim != n:
        raise DimensionMismatch("contexts must have dimension n")
    return Entanglement(ProbMeasure(np.full(n, 1.0 / n)), ctx_a, ctx_b)


def symmetric_antisymmetric_basis(ctx: Context) -> Context:
    """Symmetric/antisymmetric product basis on the doubled space.

    Ordering: the n diagonal vectors phi_i (x) phi_i, then the symmetric
    combinations (phi_i (x) phi_j + phi_j (x) phi_i)/sqrt(2) for i < j, then
    the antisymmetric ones.  The first n(n+1)/2 vectors are symmetric and the
    remaining n(n-1)/2 antisymmetric.
    """
    n = ctx.dim
    rows = []
    for i in range(n):
        rows.append(np.kron(ctx.vector(i), ctx.vector(i)))
    for i in range(n):
        for j in range(i + 1, n):
            rows.append(
                (np.kron(ctx.vector(i), ctx.vector(j)) + np.kron(ctx.vector(j), ctx.vector(i)))
                / math.sqrt(2.0)
            )
    for i in range(n):
        for j in range(i + 1, n):
            rows.append(
                (np.kron(ctx.vector(i), ctx.vector(j)) - np.kron(ctx.vector(j), ctx.vector(i)))
                / math.sqrt(2.0)
            )
    return context_from_rows(np.stack(rows))


def random_entanglement(n: int, rng: np.random.Generator) -> Entanglement:
    """Random triple: Dirichlet weights with Haar-like random factor contexts."""
    lam = ProbMeasure(rng.dirichlet(np.ones(n)))
    return Entanglement(lam, random_context(n, rng), random_context(n, rng))
