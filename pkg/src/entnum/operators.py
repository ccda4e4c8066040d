"""Dense complex operators, states, and quantum statistics.

Everything here is desk scale (dimensions up to a few dozen): operators are
dense complex matrices, states are validated at construction, and the
Hilbert-Schmidt inner product tr(A* B) supplies the geometry.  Variance is
computed as E[|A|^2] - |E[A]|^2; the defining mean-square form is kept in the
test suite as a cross check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, InvariantViolation

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
UNIT_TOL = 1e-10
# Eigenvalue gap below which two eigenvalues are treated as a degenerate cluster
# when fixing a deterministic output order.
EIGEN_TIE_TOL = 1e-12


def _as_complex_matrix(raw) -> np.ndarray:
    m = np.asarray(raw, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {m.shape}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise InvariantViolation("matrix entries must be finite")
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix acting on a finite-dimensional space."""

    mat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mat", _as_complex_matrix(self.mat))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True, eq=False)
class VectorState:
    """Unit vector (norm 1 within ``UNIT_TOL``) representing a pure state."""

    vec: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vec, dtype=complex).reshape(-1)
        if v.size == 0:
            raise DimensionMismatch("empty state vector")
        if not (np.all(np.isfinite(v.real)) and np.all(np.isfinite(v.imag))):
            raise InvariantViolation("state vector entries must be finite")
        nrm = float(np.linalg.norm(v))
        if abs(nrm - 1.0) > UNIT_TOL:
            raise InvariantViolation(f"state vector has norm {nrm!r}, expected 1 within {UNIT_TOL}")
        v.setflags(write=False)
        object.__setattr__(self, "vec", v)

    @property
    def dim(self) -> int:
        return self.vec.size


@dataclass(frozen=True, eq=False)
class DensityState:
    """Hermitian, positive semidefinite, trace-one matrix.

    ``factor_dims`` optionally records a bipartite splitting (dimA, dimB) of
    the underlying space; it is required by the mixed-state entanglement
    routines and ignored everywhere else.
    """

    mat: np.ndarray
    factor_dims: Optional[tuple[int, int]] = None

    def __post_init__(self):
        m = _as_complex_matrix(self.mat)
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise InvariantViolation("density matrix is not Hermitian within tolerance")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvariantViolation(f"density matrix has trace {tr!r}, expected 1")
        evals = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
        if float(evals.min()) < -PSD_TOL:
            raise InvariantViolation(f"density matrix has negative eigenvalue {evals.min():.3e}")
        object.__setattr__(self, "mat", m)
        if self.factor_dims is not None:
            da, db = self.factor_dims
            if da < 1 or db < 1 or da * db != m.shape[0]:
                raise DimensionMismatch(
                    f"factor dims {self.factor_dims} do not factor dimension {m.shape[0]}"
                )
            object.__setattr__(self, "factor_dims", (int(da), int(db)))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def identity(dim: int) -> Operator:
    return Operator(np.eye(dim))


def pure_state(phi: VectorState, factor_dims: Optional[tuple[int, int]] = None) -> DensityState:
    """Rank-one projector |phi><phi| as a DensityState."""
    return DensityState(np.outer(phi.vec, phi.vec.conj()), factor_dims=factor_dims)


def _check_dims(a: Operator | DensityState, b: Operator | DensityState) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimension mismatch: {a.dim} vs {b.dim}")


def adjoint(a: Operator) -> Operator:
    """Conjugate transpose."""
    return Operator(a.mat.conj().T)


def hs_inner(a: Operator, b: Operator) -> complex:
    """Hilbert-Schmidt inner product tr(A* B)."""
    _check_dims(a, b)
    return complex(np.vdot(a.mat, b.mat))


def hs_norm(a: Operator) -> float:
    """Hilbert-Schmidt norm sqrt(tr(A* A)); equals the Frobenius norm of the entries."""
    return float(np.linalg.norm(a.mat))


def expectation(rho: DensityState, a: Operator) -> complex:
    """tr(rho A).  Real whenever A is Hermitian."""
    _check_dims(rho, a)
    return complex(np.trace(rho.mat @ a.mat))


def variance(rho: DensityState, a: Operator) -> float:
    """Variance of A in the state rho: tr(rho A* A) - |tr(rho A)|^2.

    The result is mathematically nonnegative; tiny negative round-off
    (within 1e-12 at operator scale) is clamped to zero.
    """
    _check_dims(rho, a)
    second = float(np.real(np.trace(rho.mat @ (a.mat.conj().T @ a.mat))))
    mean = expectation(rho, a)
    raw = second - abs(mean) ** 2
    floor = -1e-12 * max(1.0, hs_norm(a) ** 2)
    if raw < floor:
        raise InvariantViolation(f"variance evaluated to {raw!r}, below numerical floor")
    return max(raw, 0.0)


def variance_zero_witness(rho: DensityState, a: Operator, tol: float = 1e-10) -> Optional[complex]:
    """Constant c with A rho^(1/2) = c rho^(1/2), when the variance vanishes.

    Returns c = tr(rho A) if ``variance(rho, a) <= tol`` and the operator
    identity holds within sqrt(tol) at operator scale; returns None when the
    variance is above tol.
    """
    _check_dims(rho, a)
    if variance(rho, a) > tol:
        return None
    c = expectation(rho, a)
    s = psd_sqrt(rho).mat
    resid = float(np.linalg.norm(a.mat @ s - c * s))
    scale = 1.0 + hs_norm(a)
    if resid > math.sqrt(max(tol, 0.0)) * scale + 1e-9:
        raise InvariantViolation(
            f"witness residual {resid:.3e} inconsistent with vanishing variance"
        )
    return c


def hermitian_eigen(a: Operator, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian operator with a deterministic output order.

    Returns ``(values, vectors)`` with values descending and ``vectors[:, k]``
    the unit eigenvector for ``values[k]``.  Within a degenerate cluster the
    vectors are ordered by the position of their largest-magnitude component,
    and each vector's phase is fixed so that component is real positive.
    """
    m = a.mat
    scale = max(1.0, hs_norm(a))
    if np.max(np.abs(m - m.conj().T)) > tol * scale:
        raise InvariantViolation("operator is not Hermitian within tolerance")
    w, v = np.linalg.eigh((m + m.conj().T) / 2.0)
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    dominant = [int(np.argmax(np.abs(v[:, k]))) for k in range(w.size)]
    # stable reorder inside clusters of equal eigenvalues
    order: list[int] = []
    start = 0
    for k in range(1, w.size + 1):
        if k == w.size or w[start] - w[k] > EIGEN_TIE_TOL * scale:
            cluster = sorted(range(start, k), key=lambda i: (dominant[i], i))
            order.extend(cluster)
            start = k
    w = w[order]
    v = v[:, order]
    for k in range(w.size):
        j = int(np.argmax(np.abs(v[:, k])))
        ph = v[j, k]
        if abs(ph) > 0:
            v[:, k] *= ph.conjugate() / abs(ph)
    return w, v


def psd_sqrt(rho: DensityState) -> Operator:
    """Hermitian PSD square root of a density matrix (eigenvalue clamp at 0)."""
    w, v = hermitian_eigen(Operator(rho.mat))
    w = np.maximum(w, 0.0)
    s = (v * np.sqrt(w)) @ v.conj().T
    return Operator((s + s.conj().T) / 2.0)


def random_operator(dim: int, rng: np.random.Generator, scale: float = 1.0) -> Operator:
    """Complex Gaussian matrix; entries have standard deviation ``scale``."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return Operator(scale * z / math.sqrt(2.0))


def random_vector_state(dim: int, rng: np.random.Generator) -> VectorState:
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return VectorState(z / np.linalg.norm(z))


def random_density(dim: int, rng: np.random.Generator,
                   factor_dims: Optional[tuple[int, int]] = None) -> DensityState:
    """Full-rank random density matrix (Wishart-style G G* / tr)."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return DensityState(m / np.trace(m), factor_dims=factor_dims)
