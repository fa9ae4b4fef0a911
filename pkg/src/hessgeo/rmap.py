"""Kahler structure on TM = M x R^n built from a Hessian structure.

With flat base coordinates x and fiber coordinates y, the complex structure
sends d/dx^i to d/dy^i, the lifted metric is block-diagonal (g(x), g(x)), and
the Kahler form is w = g_ij(x) dx^i ^ dy^j.  A selfsimilar base additionally
yields the conformal rescaling w_cK = g(xi, xi)^{-1} w together with the
lifted homothetic field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from .errors import NotAnIsometry
from .report import CheckResult
from .structures import (
    HessianStructure,
    SelfsimilarHessianStructure,
    norm_squared,
)
from .tensors import (
    AffineAutomorphism,
    MetricField,
    TwoFormField,
    VectorFieldSpec,
    exterior_derivative_2form,
    fd_gradient,
    lie_derivative_2form,
    pullback_metric,
)

__all__ = [
    "KahlerLift",
    "LiftedField",
    "ConformalKahlerLift",
    "build_kahler_lift",
    "lift_metric_field",
    "check_kahler",
    "check_potential_identity",
    "check_invariance_psi",
    "check_lemma_xi_items",
    "check_conformal_invariance",
]

FIBER_BOX = (-1.0, 1.0)


def complex_structure_matrix(n):
    """J with J(d/dx^i) = d/dy^i: (X, Y) -> (-Y, X)."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = -np.eye(n)
    J[n:, :n] = np.eye(n)
    return J


def lift_metric_field(g: MetricField):
    """Block lift of any base metric field: g_r = diag(g, g), w = g dx ^ dy."""
    n = g.dim

    def gr(p):
        G = g(p[:n])
        out = np.zeros((2 * n, 2 * n))
        out[:n, :n] = G
        out[n:, n:] = G
        return out

    def om(p):
        G = g(p[:n])
        out = np.zeros((2 * n, 2 * n))
        out[:n, n:] = G
        out[n:, :n] = -G
        return out

    def dgr(p):
        D = g.derivative(p[:n])
        out = np.zeros((2 * n, 2 * n, 2 * n))
        out[:n, :n, :n] = D
        out[:n, n:, n:] = D
        return out

    def dom(p):
        D = g.derivative(p[:n])
        out = np.zeros((2 * n, 2 * n, 2 * n))
        out[:n, :n, n:] = D
        out[:n, n:, :n] = -np.transpose(D, (0, 2, 1))
        return out

    metric = MetricField(2 * n, gr, dgr if g.dfunc is not None else None)
    omega = TwoFormField(2 * n, om, dom if g.dfunc is not None else None)
    return metric, omega


@dataclass(frozen=True)
class KahlerLift:
    base: HessianStructure
    J: np.ndarray
    metric: MetricField  # g_r on M x R^n
    omega: TwoFormField

    @property
    def dim(self):
        return 2 * self.base.dim

    def sample_points(self, count=None, salt=0):
        """Base samples paired with fiber points from the default fiber box."""
        xs = self.base.sample_points(count, salt=salt)
        rng = self.base.rng(salt + 1000)
        lo, hi = FIBER_BOX
        ys = lo + (hi - lo) * rng.random((len(xs), self.base.dim))
        return np.hstack([xs, ys])


def build_kahler_lift(structure: HessianStructure) -> KahlerLift:
    metric, omega = lift_metric_field(structure.metric)
    return KahlerLift(
        base=structure,
        J=complex_structure_matrix(structure.dim),
        metric=metric,
        omega=omega,
    )


@dataclass(frozen=True)
class LiftedField:
    """xi_1 = (xi(x), 0) and xi_2 = (0, xi(y)) for an affine base field."""

    xi1: VectorFieldSpec
    xi2: VectorFieldSpec
    total: VectorFieldSpec

    @classmethod
    def from_affine(cls, A, b, n):
        A = np.asarray(A, dtype=float)
        b = np.asarray(b, dtype=float)
        A1 = np.zeros((2 * n, 2 * n))
        A1[:n, :n] = A
        b1 = np.concatenate([b, np.zeros(n)])
        A2 = np.zeros((2 * n, 2 * n))
        A2[n:, n:] = A
        b2 = np.concatenate([np.zeros(n), b])
        return cls(
            VectorFieldSpec.from_affine(A1, b1),
            VectorFieldSpec.from_affine(A2, b2),
            VectorFieldSpec.from_affine(A1 + A2, b1 + b2),
        )


@dataclass(frozen=True)
class ConformalKahlerLift:
    base: SelfsimilarHessianStructure
    lift: KahlerLift
    fields: LiftedField

    def factor(self, p):
        """Conformal factor f = g(xi, xi)^{-1} pulled back from the base."""
        n = self.base.dim
        return 1.0 / norm_squared(self.base, np.asarray(p)[:n])

    def omega_ck(self):
        lift = self.lift
        n = self.base.dim

        def func(p):
            return self.factor(p) * lift.omega(p)

        def dfunc(p):
            f = self.factor(p)
            grad_norm = self.base.norm_gradient(np.asarray(p)[:n])
            df = np.concatenate([-f * f * grad_norm, np.zeros(n)])
            w = lift.omega(p)
            return f * lift.omega.derivative(p) + np.einsum("k,ij->kij", df, w)

        return TwoFormField(2 * n, func, dfunc)


def build_conformal_lift(structure: SelfsimilarHessianStructure) -> ConformalKahlerLift:
    A, b = structure.xi.affine
    return ConformalKahlerLift(
        base=structure,
        lift=build_kahler_lift(structure.base),
        fields=LiftedField.from_affine(A, b, structure.base.dim),
    )


# -- checks ----------------------------------------------------------------


def check_kahler(lift: KahlerLift, samples=None, tolerance=1e-5, fd=False):
    """Closedness of w (and exact Hermitian block identity of g_r)."""
    points = lift.sample_points(samples)
    residual = 0.0
    for p in points:
        dw = exterior_derivative_2form(lift.omega, p, fd=fd)
        residual = max(residual, float(np.max(np.abs(dw))))
        G = lift.metric(p)
        hermitian = lift.J.T @ G @ lift.J - G
        residual = max(residual, float(np.max(np.abs(hermitian))))
    return CheckResult(
        check_id="kahler_closed",
        claim="d(omega) = 0 and g_r(J., J.) = g_r for the lifted structure",
        residual=residual,
        tolerance=tolerance,
        samples=len(points),
    )


def check_potential_identity(lift: KahlerLift, samples=None, tolerance=1e-8, fd=False):
    """g_r equals the complex Hessian of 4 phi(x) on M x R^n."""
    from .expressions import parse_expression
    from .tensors import fd_tensor_derivative

    base = lift.base
    n = base.dim
    variables = list(base.potential.variables) + [f"y{k + 1}" for k in range(n)]
    lifted_potential = parse_expression(
        f"4.0*({base.potential.serialize()})", variables
    )
    points = lift.sample_points(samples)
    residual = 0.0
    for p in points:
        if fd:
            H = fd_tensor_derivative(
                lambda q: fd_gradient(lifted_potential, q), p
            )
        else:
            H = lifted_potential.jet3(p).hessian
        # Hermitian components 4 * d^2 phi / dz^i dz*^j realified
        h = 0.25 * (H[:n, :n] + H[n:, n:])
        mixed = np.max(np.abs(H[:n, n:]))
        complex_hessian = np.zeros((2 * n, 2 * n))
        complex_hessian[:n, :n] = h
        complex_hessian[n:, n:] = h
        defect = np.max(np.abs(complex_hessian - lift.metric(p)))
        residual = max(residual, float(defect), float(mixed))
    return CheckResult(
        check_id="kahler_potential",
        claim="g_r equals the complex Hessian of 4 pi^* phi",
        residual=residual,
        tolerance=tolerance,
        samples=len(points),
    )


def lift_automorphism(T: AffineAutomorphism, fiber_shift=None):
    """Psi(x, y) = (A x + b, A y + u)."""
    n = T.A.shape[0]
    P = np.zeros((2 * n, 2 * n))
    P[:n, :n] = T.A
    P[n:, n:] = T.A
    u = np.zeros(n) if fiber_shift is None else np.asarray(fiber_shift, dtype=float)
    return AffineAutomorphism(P, np.concatenate([T.b, u]), T.tag)


def _require_isometry(structure, autos, tol=1e-8):
    points = structure.sample_points(10, salt=3)
    for T in autos:
        for p in points:
            g = structure.metric(p)
            defect = np.max(np.abs(pullback_metric(T, structure.metric, p) - g))
            if defect > tol * max(1.0, np.max(np.abs(g))):
                raise NotAnIsometry(
                    f"{T.A.tolist()} changes the base metric (defect {defect:.2e})"
                )


def check_invariance_psi(
    lift: KahlerLift,
    automorphisms: Sequence[AffineAutomorphism],
    fiber_shifts: Sequence[np.ndarray],
    samples=None,
    tolerance=1e-8,
):
    """Invariance of (g_r, J) under lifted automorphisms and fiber shifts."""
    _require_isometry(lift.base, automorphisms)
    points = lift.sample_points(samples)
    shifts = list(fiber_shifts) or [np.zeros(lift.base.dim)]
    residual = 0.0
    for k, T in enumerate(automorphisms):
        lifted = lift_automorphism(T, shifts[k % len(shifts)])
        for p in points:
            G = lift.metric(p)
            defect = np.max(
                np.abs(pullback_metric(lifted, lift.metric, p) - G)
            ) / max(1.0, np.max(np.abs(G)))
            conj = np.linalg.solve(lifted.A, lift.J @ lifted.A) - lift.J
            residual = max(residual, float(defect), float(np.max(np.abs(conj))))
    return CheckResult(
        check_id="psi_invariance",
        claim="(g_r, J) is invariant under lifted isometries with fiber shifts",
        residual=residual,
        tolerance=tolerance,
        samples=len(points) * max(1, len(automorphisms)),
    )


def projected_metric_field(g: MetricField):
    """pi^* g as a degenerate covariant 2-tensor diag(g, 0) on M x R^n."""
    n = g.dim

    def func(p):
        out = np.zeros((2 * n, 2 * n))
        out[:n, :n] = g(p[:n])
        return out

    def dfunc(p):
        out = np.zeros((2 * n, 2 * n, 2 * n))
        out[:n, :n, :n] = g.derivative(p[:n])
        return out

    return TwoFormField(2 * n, func, dfunc if g.dfunc is not None else None)


def check_lemma_xi_items(cl: ConformalKahlerLift, samples=None, tolerance=1e-8, fd=False):
    """L_{xi1} pi*g = 2 pi*g, L_{xi2} pi*g = 0, L_{xi1+xi2} J = 0."""
    pg = projected_metric_field(cl.base.metric)
    points = cl.lift.sample_points(samples)
    J = cl.lift.J
    A_total = cl.fields.total.affine[0]
    residual = 0.0
    for p in points:
        L1 = lie_derivative_2form(pg, cl.fields.xi1, p, fd=fd)
        L2 = lie_derivative_2form(pg, cl.fields.xi2, p, fd=fd)
        residual = max(residual, float(np.max(np.abs(L1 - 2.0 * pg(p)))))
        residual = max(residual, float(np.max(np.abs(L2))))
    # constant J: L_{xi1+xi2} J = [J, A1 + A2]
    residual = max(residual, float(np.max(np.abs(J @ A_total - A_total @ J))))
    return CheckResult(
        check_id="lifted_field_lemma",
        claim="L_{xi1} pi*g = 2 pi*g, L_{xi2} pi*g = 0, L_{xi1+xi2} J = 0",
        residual=residual,
        tolerance=tolerance,
        samples=len(points),
    )


def check_conformal_invariance(
    cl: ConformalKahlerLift,
    samples=None,
    tolerance=1e-6,
    automorphisms=(),
    fiber_shifts=(),
    invariance_tolerance=1e-8,
    fd=False,
):
    """Conformal flow suite: homothety of the norm function, L w_cK = 0,
    psi-invariance of w_cK, and the unscaled negative control L w = 2 w."""
    n = cl.base.dim
    points = cl.lift.sample_points(samples)
    omega_ck = cl.omega_ck()
    X = cl.fields.total
    res_norm = 0.0
    res_wck = 0.0
    res_control = 0.0
    for p in points:
        x = p[:n]
        value = norm_squared(cl.base, x)
        if fd:
            grad = cl.base.norm_gradient(x, fd=True)
        else:
            grad = cl.base.norm_gradient(x)
        lie_norm = float(cl.fields.xi1.value(p)[:n] @ grad)
        res_norm = max(res_norm, abs(lie_norm - 2.0 * value))
        Lw = lie_derivative_2form(omega_ck, X, p, fd=fd)
        res_wck = max(res_wck, float(np.max(np.abs(Lw))))
        w = cl.lift.omega(p)
        Lraw = lie_derivative_2form(cl.lift.omega, X, p, fd=fd)
        res_control = max(res_control, float(np.max(np.abs(Lraw - 2.0 * w))))
    entries = [
        CheckResult(
            check_id="conformal_norm_homothety",
            claim="L_{xi1+xi2} (pi^* g(xi,xi)) = 2 pi^* g(xi,xi)",
            residual=res_norm,
            tolerance=tolerance,
            samples=len(points),
        ),
        CheckResult(
            check_id="conformal_omega_ck_flow",
            claim="L_{xi1+xi2} omega_cK = 0 for omega_cK = g(xi,xi)^{-1} omega",
            residual=res_wck,
            tolerance=tolerance,
            samples=len(points),
        ),
        CheckResult(
            check_id="conformal_omega_negative_control",
            claim="without the conformal factor L_{xi1+xi2} omega = 2 omega exactly",
            residual=res_control,
            tolerance=1e-4,
            samples=len(points),
        ),
    ]
    if automorphisms:
        _require_isometry(cl.base.base, automorphisms)
        shifts = list(fiber_shifts) or [np.zeros(n)]
        res_inv = 0.0
        for k, T in enumerate(automorphisms):
            lifted = lift_automorphism(T, shifts[k % len(shifts)])
            for p in points:
                w = omega_ck(p)
                defect = np.max(
                    np.abs(
                        lifted.A.T @ omega_ck(lifted(p)) @ lifted.A - w
                    )
                ) / max(1.0, np.max(np.abs(w)))
                res_inv = max(res_inv, float(defect))
        entries.append(
            CheckResult(
                check_id="conformal_psi_invariance",
                claim="omega_cK is invariant under lifted unimodular isometries",
                residual=res_inv,
                tolerance=invariance_tolerance,
                samples=len(points) * len(automorphisms),
            )
        )
    return entries


def affine_flow(A, b, t):
    """Time-t flow of the affine field x -> A x + b, via the augmented exponential."""
    n = A.shape[0]
    M = np.zeros((n + 1, n + 1))
    M[:n, :n] = t * np.asarray(A, dtype=float)
    M[:n, n] = t * np.asarray(b, dtype=float)
    E = expm(M)
    return AffineAutomorphism(E[:n, :n], E[:n, n])
