"""Pointwise tensor operations on fields over a single global flat chart.

Every field is represented by an evaluator `point -> array`.  Fields built
from expressions carry analytic derivatives (order-3 jets); fields only
available numerically fall back to central finite differences with step
`FD_STEP * max(1, |p|)`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, NotPositiveDefinite
from .expressions import ScalarExpression

__all__ = [
    "FD_STEP",
    "MetricField",
    "VectorFieldSpec",
    "TwoFormField",
    "EndomorphismField",
    "AffineAutomorphism",
    "hessian_metric",
    "metric_derivative",
    "lie_derivative_metric",
    "lie_derivative_2form",
    "lie_derivative_endomorphism",
    "exterior_derivative_2form",
    "nijenhuis",
    "pullback_metric",
    "pullback_2form",
    "is_positive_definite",
    "fd_gradient",
    "fd_tensor_derivative",
]

FD_STEP = 1e-5


def _fd_step(p):
    return FD_STEP * max(1.0, float(np.max(np.abs(p))))


def fd_gradient(func, p):
    """Central finite-difference gradient of a scalar evaluator."""
    p = np.asarray(p, dtype=float)
    h = _fd_step(p)
    out = np.zeros(len(p))
    for k in range(len(p)):
        e = np.zeros(len(p))
        e[k] = h
        out[k] = (func(p + e) - func(p - e)) / (2 * h)
    return out


def fd_tensor_derivative(func, p):
    """Central finite-difference derivative D[k, ...] = d_k T_... of a tensor evaluator."""
    p = np.asarray(p, dtype=float)
    h = _fd_step(p)
    rows = []
    for k in range(len(p)):
        e = np.zeros(len(p))
        e[k] = h
        rows.append((np.asarray(func(p + e)) - np.asarray(func(p - e))) / (2 * h))
    return np.stack(rows, axis=0)


@dataclass(frozen=True)
class MetricField:
    """Symmetric 2-tensor field given by an evaluator, optionally with analytic derivative."""

    dim: int
    func: Callable[[np.ndarray], np.ndarray]
    dfunc: Optional[Callable[[np.ndarray], np.ndarray]] = None  # D[k,i,j] = d_k g_ij

    @classmethod
    def from_potential(cls, potential: ScalarExpression):
        n = len(potential.variables)

        def func(p):
            return potential.jet3(p).hessian

        def dfunc(p):
            return potential.jet3(p).third

        return cls(n, func, dfunc)

    @classmethod
    def from_components(cls, components):
        """Explicit component expressions; derivative from the component jets."""
        comps = np.asarray(components, dtype=object)
        n = comps.shape[0]

        def func(p):
            return np.array([[comps[i][j](p) for j in range(n)] for i in range(n)])

        def dfunc(p):
            D = np.zeros((n, n, n))
            for i in range(n):
                for j in range(n):
                    D[:, i, j] = comps[i][j].jet3(p).gradient
            return D

        return cls(n, func, dfunc)

    def __call__(self, p):
        return self.func(np.asarray(p, dtype=float))

    def derivative(self, p, fd=False):
        if self.dfunc is not None and not fd:
            return self.dfunc(np.asarray(p, dtype=float))
        return fd_tensor_derivative(self.func, p)


@dataclass(frozen=True)
class TwoFormField:
    """Antisymmetric 2-form field over an N-dimensional chart."""

    dim: int
    func: Callable[[np.ndarray], np.ndarray]
    dfunc: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __call__(self, p):
        return self.func(np.asarray(p, dtype=float))

    def derivative(self, p, fd=False):
        if self.dfunc is not None and not fd:
            return self.dfunc(np.asarray(p, dtype=float))
        return fd_tensor_derivative(self.func, p)


@dataclass(frozen=True)
class EndomorphismField:
    """(1,1)-tensor field J^i_j; constant fields carry a zero derivative."""

    dim: int
    func: Callable[[np.ndarray], np.ndarray]
    dfunc: Optional[Callable[[np.ndarray], np.ndarray]] = None

    @classmethod
    def constant(cls, matrix):
        matrix = np.asarray(matrix, dtype=float)
        n = matrix.shape[0]
        zero = np.zeros((n, n, n))
        return cls(n, lambda p: matrix, lambda p: zero)

    def __call__(self, p):
        return self.func(np.asarray(p, dtype=float))

    def derivative(self, p, fd=False):
        if self.dfunc is not None and not fd:
            return self.dfunc(np.asarray(p, dtype=float))
        return fd_tensor_derivative(self.func, p)


@dataclass(frozen=True)
class VectorFieldSpec:
    """Vector field from component expressions and/or an affine normal form A x + b."""

    dim: int
    components: Optional[Tuple[ScalarExpression, ...]] = None
    affine: Optional[Tuple[np.ndarray, np.ndarray]] = None  # (A, b)

    @classmethod
    def from_affine(cls, A, b=None):
        A = np.asarray(A, dtype=float)
        b = np.zeros(A.shape[0]) if b is None else np.asarray(b, dtype=float)
        return cls(A.shape[0], None, (A, b))

    @classmethod
    def from_components(cls, components, affine=None):
        comps = tuple(components)
        if affine is not None:
            A = np.asarray(affine[0], dtype=float)
            b = np.asarray(affine[1], dtype=float)
            affine = (A, b)
        return cls(len(comps), comps, affine)

    def value(self, p):
        p = np.asarray(p, dtype=float)
        if self.components is not None:
            return np.array([c(p) for c in self.components])
        A, b = self.affine
        return A @ p + b

    def jacobian(self, p):
        """J[i, k] = d_k xi^i."""
        if self.affine is not None:
            return self.affine[0]
        p = np.asarray(p, dtype=float)
        return np.stack([c.jet3(p).gradient for c in self.components], axis=0)

    def component_hessians(self, p):
        if self.components is None:
            return np.zeros((self.dim, self.dim, self.dim))
        p = np.asarray(p, dtype=float)
        return np.stack([c.jet3(p).hessian for c in self.components], axis=0)

    def is_affine_certified(self, points, tol=1e-10):
        """Affine iff every component Hessian vanishes at the sampled points."""
        for p in points:
            if np.max(np.abs(self.component_hessians(p))) > tol:
                return False
            if self.affine is not None and self.components is not None:
                A, b = self.affine
                if np.max(np.abs(self.value(p) - (A @ np.asarray(p) + b))) > 1e-12:
                    return False
        return True


@dataclass(frozen=True)
class AffineAutomorphism:
    """Invertible affine map x -> A x + b."""

    A: np.ndarray
    b: np.ndarray
    tag: str = ""  # e.g. "full" | "unimodular"

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        b = np.asarray(self.b, dtype=float)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        if abs(np.linalg.det(A)) <= 1e-12:
            raise ValueError("affine automorphism with singular linear part")

    @classmethod
    def linear(cls, A, tag=""):
        A = np.asarray(A, dtype=float)
        return cls(A, np.zeros(A.shape[0]), tag)

    def __call__(self, p):
        return self.A @ np.asarray(p, dtype=float) + self.b


# -- operations ------------------------------------------------------------


def hessian_metric(potential: ScalarExpression, p):
    """Hess(potential) at p."""
    return potential.jet3(p).hessian


def metric_derivative(g: MetricField, p, fd=False):
    """D[k,i,j] = d_k g_ij at p."""
    return g.derivative(p, fd=fd)


def _lie_covariant2(T, DT, v, J):
    """(L_xi T)_ij for a covariant 2-tensor: xi^k d_k T_ij + T_kj d_i xi^k + T_ik d_j xi^k."""
    return np.einsum("k,kij->ij", v, DT) + J.T @ T + T @ J


def lie_derivative_metric(g: MetricField, xi: VectorFieldSpec, p, fd=False):
    p = np.asarray(p, dtype=float)
    return _lie_covariant2(g(p), g.derivative(p, fd=fd), xi.value(p), xi.jacobian(p))


def lie_derivative_2form(omega: TwoFormField, xi: VectorFieldSpec, p, fd=False):
    p = np.asarray(p, dtype=float)
    return _lie_covariant2(
        omega(p), omega.derivative(p, fd=fd), xi.value(p), xi.jacobian(p)
    )


def lie_derivative_endomorphism(J: EndomorphismField, xi: VectorFieldSpec, p, fd=False):
    """(L_xi J)^i_j = xi^k d_k J^i_j - J^k_j d_k xi^i + J^i_k d_j xi^k."""
    p = np.asarray(p, dtype=float)
    Jm = J(p)
    DJ = J.derivative(p, fd=fd)
    X = xi.jacobian(p)
    return np.einsum("k,kij->ij", xi.value(p), DJ) + Jm @ X - X @ Jm


def exterior_derivative_2form(omega: TwoFormField, p, fd=False):
    """(d omega)_{kij} = d_k w_ij - d_i w_kj + d_j w_ki."""
    D = omega.derivative(p, fd=fd)
    return D - np.transpose(D, (1, 0, 2)) + np.transpose(D, (1, 2, 0))


def nijenhuis(J: EndomorphismField, p, fd=False):
    """Nijenhuis tensor N^i_{jk}, antisymmetric in j, k."""
    p = np.asarray(p, dtype=float)
    Jm = J(p)
    D = J.derivative(p, fd=fd)  # D[m,i,j] = d_m J^i_j
    # N(X,Y)^i = J^m_j d_m J^i_k - J^m_k d_m J^i_j - J^i_m (d_j J^m_k - d_k J^m_j)
    t1 = np.einsum("mj,mik->ijk", Jm, D)
    t2 = np.einsum("mk,mij->ijk", Jm, D)
    t3 = np.einsum("im,jmk->ijk", Jm, D)
    t4 = np.einsum("im,kmj->ijk", Jm, D)
    return t1 - t2 - t3 + t4


def pullback_metric(T: AffineAutomorphism, g: MetricField, p):
    """(T^* g)(p) = A^T g(Ap + b) A."""
    image = T(p)
    try:
        gi = g(image)
    except DomainError as exc:
        raise DomainError(f"image point {image} left the domain: {exc}") from exc
    return T.A.T @ gi @ T.A


def pullback_2form(T: AffineAutomorphism, omega: TwoFormField, p):
    return T.A.T @ omega(T(p)) @ T.A


def is_positive_definite(M, tol=1e-10):
    M = np.asarray(M, dtype=float)
    return bool(np.min(np.linalg.eigvalsh(0.5 * (M + M.T))) > tol)


def require_positive_definite(M, p, tol=1e-10):
    if not is_positive_definite(M, tol):
        raise NotPositiveDefinite(np.asarray(p))
