"""Special Kahler structures in flat Darboux coordinates and their
hyper-Kahler lift to T*M.

A holomorphic prepotential F(z1..zm) with Im F'' positive definite generates
the structure: Darboux coordinates are q = (u, v) = (Re z, Re F'(z)), the
metric is the push-forward of Im(F_ij) dz^i dz*^j and the complex structure
is the push-forward of multiplication by sqrt(-1).  Recovering z from q needs
a Newton inversion of Re F'(u + i y) = v in the m unknowns y = Im z (u = Re z
is exact); derivatives of the pushed-forward tensors are available
analytically through implicit differentiation with the third-order jets of F.

On T*M = M x (R^{2m})*, with the flat splitting, the frame is

    g_c = diag(g, g^{-1}),  I1 = diag(I, I^T),  I2 = [[0, -w^{-1}], [w, 0]],
    I3 = I1 I2,   with w = I^T g (constant = lambda * Omega).

The conformal rescaling uses a linear homothetic field xi(q) = A q; its
vertical lift is transported through the w-identification of fibers:
xi_2 = (0, w A w^{-1} p).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    ConfigError,
    NewtonDivergence,
    NotAnIsometry,
    NotPositiveDefinite,
    NotSymplectic,
    SingularMetric,
    TranslationUnsupported,
    UnknownPreset,
)
from .expressions import ScalarExpression, eval_complex, parse_expression
from .report import CheckResult
from .tensors import (
    AffineAutomorphism,
    EndomorphismField,
    MetricField,
    TwoFormField,
    VectorFieldSpec,
    exterior_derivative_2form,
    fd_gradient,
    is_positive_definite,
    lie_derivative_endomorphism,
    lie_derivative_metric,
    metric_derivative,
    nijenhuis,
)

__all__ = [
    "Prepotential",
    "SpecialKahlerStructure",
    "HyperKahlerFrame",
    "ConformalHyperKahler",
    "special_kahler_from_prepotential",
    "special_kahler_preset",
    "SK_PRESET_NAMES",
    "build_hyperkahler",
    "check_special_kahler_axioms",
    "check_hyperkahler",
    "check_invariance_psi_hat",
    "check_conformal_hyperkahler",
]

SK_PRESET_NAMES = ("sk_flat", "sk_cubic", "sk_conic")

NEWTON_TOL = 1e-13
NEWTON_MAX_ITER = 80


def standard_symplectic(m):
    """Omega = du^i ^ dv_i as a matrix: [[0, -Id], [Id, 0]]."""
    Om = np.zeros((2 * m, 2 * m))
    Om[:m, m:] = -np.eye(m)
    Om[m:, :m] = np.eye(m)
    return Om


def _base_complex_structure(m):
    J = np.zeros((2 * m, 2 * m))
    J[:m, m:] = -np.eye(m)
    J[m:, :m] = np.eye(m)
    return J


@dataclass(frozen=True)
class Prepotential:
    """Holomorphic prepotential over z1..zm with Im F'' positive definite."""

    m: int
    F: ScalarExpression
    zbox: np.ndarray  # (2m, 2) bounds, rows = (Re z1..Re zm, Im z1..Im zm)

    def z_from_real(self, w):
        w = np.asarray(w, dtype=float)
        return w[: self.m] + 1j * w[self.m :]

    def jets(self, z):
        return eval_complex(self.F, np.asarray(z, dtype=np.complex128))

    def sample_z(self, count, rng):
        lo, hi = self.zbox[:, 0], self.zbox[:, 1]
        w = lo + (hi - lo) * rng.random((count, 2 * self.m))
        return np.array([self.z_from_real(row) for row in w])

    def center_z(self):
        return self.z_from_real(self.zbox.mean(axis=1))


class SpecialKahlerStructure:
    """Flat Darboux chart q = (u, v), constant Omega, metric g and complex
    structure I evaluated per point; generated from a prepotential or from
    explicit component expressions."""

    def __init__(
        self,
        name,
        m,
        metric: MetricField,
        complex_structure: EndomorphismField,
        sampler: Callable[[int, np.random.Generator], np.ndarray],
        prepotential: Optional[Prepotential] = None,
        potential: Optional[ScalarExpression] = None,
        seed=42,
        samples=100,
    ):
        self.name = name
        self.m = m
        self.dim = 2 * m
        self.Omega = standard_symplectic(m)
        self.metric = metric
        self.complex_structure = complex_structure
        self._sampler = sampler
        self.prepotential = prepotential
        self.potential = potential  # None means "implicit"
        self.seed = seed
        self.samples = samples
        self.omega_scale = None  # lambda with omega = lambda * Omega

    def rng(self, salt=0):
        return np.random.default_rng([self.seed, salt])

    def sample_points(self, count=None, salt=0):
        return self._sampler(count or self.samples, self.rng(salt))

    def g(self, q):
        return self.metric(q)

    def I(self, q):
        return self.complex_structure(q)

    def omega(self, q):
        """w = g(I., .) as a matrix: I^T g."""
        return self.I(q).T @ self.g(q)

    def omega_constant(self):
        """lambda * Omega, with lambda estimated at the first sample."""
        if self.omega_scale is None:
            q = self.sample_points(1, salt=5)[0]
            w = self.omega(q)
            lam = float(np.sum(w * self.Omega) / np.sum(self.Omega * self.Omega))
            self.omega_scale = lam
        return self.omega_scale * self.Omega


# -- prepotential construction ---------------------------------------------


def _newton_invert(prep: Prepotential, q, seed_y=None):
    """Solve Re F'(u + i y) = v for y; returns z = u + i y."""
    m = prep.m
    q = np.asarray(q, dtype=float)
    u, v = q[:m], q[m:]
    y = np.array(prep.center_z().imag if seed_y is None else seed_y, dtype=float)
    scale = max(1.0, float(np.max(np.abs(v))))
    for _ in range(NEWTON_MAX_ITER):
        jets = prep.jets(u + 1j * y)
        r = jets.gradient.real - v
        if np.max(np.abs(r)) < NEWTON_TOL * scale:
            return u + 1j * y
        N = jets.hessian.imag
        try:
            step = np.linalg.solve(N, r)
        except np.linalg.LinAlgError as exc:
            raise NewtonDivergence(q) from exc
        y = y + step
    raise NewtonDivergence(q)


def _tensors_at_z(prep: Prepotential, z):
    """(g, I, dg, dI) in Darboux coordinates at the point with complex coordinate z."""
    m = prep.m
    jets = prep.jets(z)
    F2 = jets.hessian
    F3 = jets.third
    N = F2.imag
    R = F2.real
    J = _base_complex_structure(m)
    T = np.zeros((2 * m, 2 * m))
    T[:m, :m] = np.eye(m)
    T[m:, :m] = R
    T[m:, m:] = -N
    try:
        Tinv = np.linalg.inv(T)
        Ninv = np.linalg.inv(N)
    except np.linalg.LinAlgError as exc:
        raise SingularMetric(f"Im F'' singular at z = {z}") from exc
    G = np.zeros((2 * m, 2 * m))
    G[:m, :m] = N
    G[m:, m:] = N
    g = Tinv.T @ G @ Tinv
    Imat = T @ J @ Tinv
    # implicit differentiation: dz/du = Id + i N^{-1} R, dz/dv = -i N^{-1};
    # stored as dz[k, l] = dz_l / dq_k, hence the transpose
    dz = np.zeros((2 * m, m), dtype=np.complex128)
    dz[:m, :] = np.eye(m) + 1j * (Ninv @ R).T
    dz[m:, :] = -1j * Ninv.T
    dF2 = np.einsum("kl,ijl->kij", dz, F3)  # d_k F_ij over the 2m chart
    dN = dF2.imag
    dR = dF2.real
    dg = np.zeros((2 * m, 2 * m, 2 * m))
    dI = np.zeros((2 * m, 2 * m, 2 * m))
    for k in range(2 * m):
        dT = np.zeros((2 * m, 2 * m))
        dT[m:, :m] = dR[k]
        dT[m:, m:] = -dN[k]
        dTinv = -Tinv @ dT @ Tinv
        dG = np.zeros((2 * m, 2 * m))
        dG[:m, :m] = dN[k]
        dG[m:, m:] = dN[k]
        dg[k] = dTinv.T @ G @ Tinv + Tinv.T @ dG @ Tinv + Tinv.T @ G @ dTinv
        dI[k] = dT @ J @ Tinv + T @ J @ dTinv
    return g, Imat, dg, dI


def special_kahler_from_prepotential(
    prep: Prepotential, name="prepotential", seed=42, samples=100, validate=True
) -> SpecialKahlerStructure:
    m = prep.m

    def q_of_z(z):
        jets = prep.jets(z)
        return np.concatenate([z.real, jets.gradient.real])

    def g_func(q):
        z = _newton_invert(prep, q)
        return _tensors_at_z(prep, z)[0]

    def dg_func(q):
        z = _newton_invert(prep, q)
        return _tensors_at_z(prep, z)[2]

    def I_func(q):
        z = _newton_invert(prep, q)
        return _tensors_at_z(prep, z)[1]

    def dI_func(q):
        z = _newton_invert(prep, q)
        return _tensors_at_z(prep, z)[3]

    def sampler(count, rng):
        return np.array([q_of_z(z) for z in prep.sample_z(count, rng)])

    structure = SpecialKahlerStructure(
        name=name,
        m=m,
        metric=MetricField(2 * m, g_func, dg_func),
        complex_structure=EndomorphismField(2 * m, I_func, dI_func),
        sampler=sampler,
        prepotential=prep,
        potential=None,  # implicit; certified through d(g) symmetry
        seed=seed,
        samples=samples,
    )
    if validate:
        for z in prep.sample_z(25, structure.rng(7)):
            if not is_positive_definite(prep.jets(z).hessian.imag):
                raise NotPositiveDefinite(z, "Im F'' not positive definite")
        for entry in check_special_kahler_axioms(structure, samples=25):
            if not entry.passed:
                raise ConfigError(
                    f"prepotential structure fails {entry.check_id}: "
                    f"residual {entry.residual:.2e}"
                )
    return structure


def special_kahler_from_config(config) -> SpecialKahlerStructure:
    """Direct configuration: explicit I components and potential over q1..q2m."""
    from .structures import Domain

    try:
        dim = int(config["dim"])
        if dim % 2:
            raise ConfigError("dim must be even")
        m = dim // 2
        variables = [f"q{k + 1}" for k in range(dim)]
        if config.get("potential", "implicit") == "implicit":
            raise ConfigError("direct config needs an explicit potential")
        potential = parse_expression(config["potential"], variables)
        I_exprs = [
            [parse_expression(text, variables) for text in row]
            for row in config["I"]
        ]
        inequalities = tuple(
            parse_expression(text, variables) for text in config.get("domain", [])
        )
        box = np.asarray(config["box"], dtype=float)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad special-Kahler config: {exc}") from exc
    domain = Domain(inequalities, box)

    def I_func(q):
        return np.array([[e(q) for e in row] for row in I_exprs])

    def dI_func(q):
        out = np.zeros((dim, dim, dim))
        for i in range(dim):
            for j in range(dim):
                out[:, i, j] = I_exprs[i][j].jet3(q).gradient
        return out

    return SpecialKahlerStructure(
        name=config.get("name", "special_kahler"),
        m=m,
        metric=MetricField.from_potential(potential),
        complex_structure=EndomorphismField(dim, I_func, dI_func),
        sampler=lambda count, rng: domain.sample(count, rng),
        potential=potential,
        seed=int(config.get("seed", 42)),
        samples=int(config.get("samples", 100)),
    )


def prepotential_from_config(config) -> SpecialKahlerStructure:
    """Prepotential configuration {name, m, F, box, seed, samples}."""
    try:
        m = int(config["m"])
        variables = [f"z{k + 1}" for k in range(m)]
        F = parse_expression(config["F"], variables, mode="complex")
        zbox = np.asarray(config["box"], dtype=float)
        if zbox.shape != (2 * m, 2):
            raise ConfigError(f"box must be {2 * m} rows of [lo, hi]")
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad prepotential config: {exc}") from exc
    return special_kahler_from_prepotential(
        Prepotential(m, F, zbox),
        name=config.get("name", "prepotential"),
        seed=int(config.get("seed", 42)),
        samples=int(config.get("samples", 100)),
    )


def special_kahler_preset(name, seed=42, samples=100) -> SpecialKahlerStructure:
    if name == "sk_flat":
        config = {
            "name": name,
            "m": 1,
            "F": "i*z1^2/2",
            "box": [[-1.0, 1.0], [-1.0, 1.0]],
        }
    elif name == "sk_cubic":
        config = {
            "name": name,
            "m": 1,
            "F": "z1^3/6",
            "box": [[-1.0, 1.0], [0.5, 1.5]],
        }
    elif name == "sk_conic":
        # The conic cubic-over-linear prepotential; the i factor places the
        # positive definite branch at z2/z1 ~ 1 (without it det Im F'' <= 0
        # identically).
        config = {
            "name": name,
            "m": 2,
            "F": "i*z2^3/z1",
            "box": [
                [0.9, 1.1],
                [0.9, 1.1],
                [-0.05, 0.05],
                [-0.05, 0.05],
            ],
        }
    else:
        raise UnknownPreset(name)
    config["seed"] = seed
    config["samples"] = samples
    return prepotential_from_config(config)


# -- hyper-Kahler frame ----------------------------------------------------


@dataclass(frozen=True)
class HyperKahlerFrame:
    gc: np.ndarray
    I1: np.ndarray
    I2: np.ndarray
    I3: np.ndarray


def build_hyperkahler(sk: SpecialKahlerStructure, q, p=None) -> HyperKahlerFrame:
    """Frame matrices at (q, p); all tensors are independent of p."""
    n = sk.dim
    g = sk.g(np.asarray(q, dtype=float))
    try:
        ginv = np.linalg.inv(g)
    except np.linalg.LinAlgError as exc:
        raise SingularMetric(f"metric singular at {q}") from exc
    I = sk.I(np.asarray(q, dtype=float))
    w = I.T @ g
    winv = np.linalg.inv(w)
    gc = np.zeros((2 * n, 2 * n))
    gc[:n, :n] = g
    gc[n:, n:] = ginv
    I1 = np.zeros((2 * n, 2 * n))
    I1[:n, :n] = I
    I1[n:, n:] = I.T
    I2 = np.zeros((2 * n, 2 * n))
    I2[:n, n:] = -winv
    I2[n:, :n] = w
    return HyperKahlerFrame(gc, I1, I2, I1 @ I2)


def _frame_fields(sk: SpecialKahlerStructure):
    n = sk.dim

    def gc(pt):
        return build_hyperkahler(sk, pt[:n]).gc

    def I1(pt):
        return build_hyperkahler(sk, pt[:n]).I1

    def I2(pt):
        return build_hyperkahler(sk, pt[:n]).I2

    def I3(pt):
        return build_hyperkahler(sk, pt[:n]).I3

    return gc, (I1, I2, I3)


def _frame_sample_points(sk: SpecialKahlerStructure, count=None, salt=0):
    qs = sk.sample_points(count, salt=salt)
    rng = sk.rng(salt + 2000)
    ps = -1.0 + 2.0 * rng.random((len(qs), sk.dim))
    return np.hstack([qs, ps])


# -- checks ----------------------------------------------------------------


def check_special_kahler_axioms(
    sk: SpecialKahlerStructure, samples=None, tolerance=1e-6
) -> List[CheckResult]:
    points = sk.sample_points(samples)
    n = sk.dim
    res_sq = res_herm = res_nij = res_omega = res_sym = 0.0
    w_const = sk.omega_constant()
    for q in points:
        g = sk.g(q)
        I = sk.I(q)
        res_sq = max(res_sq, float(np.max(np.abs(I @ I + np.eye(n)))))
        res_herm = max(res_herm, float(np.max(np.abs(I.T @ g @ I - g))))
        res_nij = max(
            res_nij, float(np.max(np.abs(nijenhuis(sk.complex_structure, q))))
        )
        res_omega = max(res_omega, float(np.max(np.abs(I.T @ g - w_const))))
        D = metric_derivative(sk.metric, q, fd=sk.metric.dfunc is None)
        res_sym = max(
            res_sym,
            float(np.max(np.abs(D - np.transpose(D, (1, 0, 2))))),
            float(np.max(np.abs(D - np.transpose(D, (2, 1, 0))))),
        )
        if not is_positive_definite(g):
            raise NotPositiveDefinite(q)
    count = len(points)
    return [
        CheckResult("sk_complex_structure", "I(q)^2 = -Id", res_sq, tolerance, count),
        CheckResult("sk_hermitian", "g(I., I.) = g", res_herm, tolerance, count),
        CheckResult(
            "sk_integrable", "Nijenhuis tensor of I vanishes", res_nij, tolerance, count
        ),
        CheckResult(
            "sk_omega_parallel",
            "omega = g(I., .) has constant components lambda * Omega",
            res_omega,
            tolerance,
            count,
        ),
        CheckResult(
            "sk_hessian",
            "d_k g_ij is totally symmetric (g is Hessian for the flat connection)",
            res_sym,
            tolerance,
            count,
        ),
    ]


def check_hyperkahler(
    sk: SpecialKahlerStructure,
    samples=None,
    quaternion_tolerance=1e-8,
    closedness_tolerance=1e-5,
    shift_tolerance=1e-12,
) -> List[CheckResult]:
    n = sk.dim
    points = _frame_sample_points(sk, samples)
    gc_func, I_funcs = _frame_fields(sk)
    res_quat = res_herm = res_closed = res_shift = 0.0
    rng = sk.rng(31)
    for pt in points:
        frame = build_hyperkahler(sk, pt[:n], pt[n:])
        eye = np.eye(2 * n)
        for Ik in (frame.I1, frame.I2, frame.I3):
            res_quat = max(res_quat, float(np.max(np.abs(Ik @ Ik + eye))))
            res_herm = max(
                res_herm, float(np.max(np.abs(Ik.T @ frame.gc @ Ik - frame.gc)))
            )
        res_quat = max(
            res_quat,
            float(np.max(np.abs(frame.I1 @ frame.I2 - frame.I3))),
            float(np.max(np.abs(frame.I2 @ frame.I1 + frame.I3))),
        )
        shift = -1.0 + 2.0 * rng.random(n)
        shifted = np.concatenate([pt[:n], pt[n:] + shift])
        res_shift = max(
            res_shift,
            float(np.max(np.abs(gc_func(shifted) - frame.gc))),
            float(np.max(np.abs(I_funcs[2](shifted) - frame.I3))),
        )
    for pt in points[: min(len(points), 20)]:
        for k, Ik_func in enumerate(I_funcs):
            def w_func(x, Ik_func=Ik_func):
                return Ik_func(x).T @ gc_func(x)

            form = TwoFormField(2 * n, w_func)
            dw = exterior_derivative_2form(form, pt, fd=True)
            res_closed = max(res_closed, float(np.max(np.abs(dw))))
    count = len(points)
    return [
        CheckResult(
            "hk_quaternion",
            "I1, I2, I3 = I1 I2 satisfy the quaternion relations",
            res_quat,
            quaternion_tolerance,
            count,
        ),
        CheckResult(
            "hk_hermitian",
            "g_c is Hermitian for each of I1, I2, I3",
            res_herm,
            quaternion_tolerance,
            count,
        ),
        CheckResult(
            "hk_closed_forms",
            "the three Kahler forms g_c(I_k ., .) are closed on T*M",
            res_closed,
            closedness_tolerance,
            min(count, 20),
        ),
        CheckResult(
            "hk_fiber_shift",
            "the frame is exactly invariant under fiber translations",
            res_shift,
            shift_tolerance,
            count,
        ),
    ]


def lift_cotangent_automorphism(T: AffineAutomorphism, fiber_shift=None):
    """Psi(q, p) = (B q + c, B^{-T} p + u)."""
    n = T.A.shape[0]
    P = np.zeros((2 * n, 2 * n))
    P[:n, :n] = T.A
    P[n:, n:] = np.linalg.inv(T.A).T
    u = np.zeros(n) if fiber_shift is None else np.asarray(fiber_shift, dtype=float)
    return AffineAutomorphism(P, np.concatenate([T.b, u]), T.tag)


def check_invariance_psi_hat(
    sk: SpecialKahlerStructure,
    automorphisms: Sequence[AffineAutomorphism],
    fiber_shifts: Sequence[np.ndarray] = (),
    samples=None,
    tolerance=1e-8,
) -> CheckResult:
    n = sk.dim
    base_points = sk.sample_points(10, salt=3)
    w_const = sk.omega_constant()
    for T in automorphisms:
        for q in base_points:
            image = T(q)
            g = sk.g(q)
            if np.max(np.abs(T.A.T @ sk.g(image) @ T.A - g)) > tolerance * max(
                1.0, np.max(np.abs(g))
            ):
                raise NotAnIsometry(f"linear part {T.A.tolist()} scales the metric")
            if np.max(
                np.abs(np.linalg.solve(T.A, sk.I(image) @ T.A) - sk.I(q))
            ) > tolerance:
                raise NotAnIsometry(
                    f"linear part {T.A.tolist()} does not preserve I"
                )
        if np.max(np.abs(T.A.T @ w_const @ T.A - w_const)) > tolerance:
            raise NotSymplectic(f"linear part {T.A.tolist()} does not preserve omega")
    points = _frame_sample_points(sk, samples)
    gc_func, I_funcs = _frame_fields(sk)
    shifts = list(fiber_shifts) or [np.zeros(n)]
    residual = 0.0
    for k, T in enumerate(automorphisms):
        lifted = lift_cotangent_automorphism(T, shifts[k % len(shifts)])
        for pt in points:
            image = lifted(pt)
            gc = gc_func(pt)
            residual = max(
                residual,
                float(
                    np.max(np.abs(lifted.A.T @ gc_func(image) @ lifted.A - gc))
                    / max(1.0, np.max(np.abs(gc)))
                ),
            )
            for Ik_func in I_funcs:
                conj = np.linalg.solve(lifted.A, Ik_func(image) @ lifted.A)
                residual = max(
                    residual, float(np.max(np.abs(conj - Ik_func(pt))))
                )
    return CheckResult(
        "hk_psi_hat_invariance",
        "the frame is invariant under lifted holomorphic isometries",
        residual,
        tolerance,
        len(points) * max(1, len(automorphisms)),
    )


# -- conformal rescaling ---------------------------------------------------


@dataclass(frozen=True)
class ConformalHyperKahler:
    base: SpecialKahlerStructure
    xi: VectorFieldSpec  # linear: xi(q) = A q

    def __post_init__(self):
        A, b = self.xi.affine
        if np.max(np.abs(b)) > 0:
            raise TranslationUnsupported(
                "homothetic fields with translation are not supported on T*M"
            )

    def vertical_linear_part(self):
        """omega A omega^{-1}: the fiber action transported through omega."""
        A = self.xi.affine[0]
        w = self.base.omega_constant()
        return w @ A @ np.linalg.inv(w)

    def lifted_field(self):
        n = self.base.dim
        A = self.xi.affine[0]
        X = np.zeros((2 * n, 2 * n))
        X[:n, :n] = A
        X[n:, n:] = self.vertical_linear_part()
        return VectorFieldSpec.from_affine(X)

    def norm_squared(self, q):
        v = self.xi.value(q)
        return float(v @ self.base.g(q) @ v)


def check_conformal_hyperkahler(
    chk: ConformalHyperKahler, samples=None, tolerance=1e-5
) -> List[CheckResult]:
    sk = chk.base
    n = sk.dim
    qs = sk.sample_points(samples)
    pts = _frame_sample_points(sk, samples)
    gc_func, I_funcs = _frame_fields(sk)
    X = chk.lifted_field()
    res_base_g = res_base_I = 0.0
    for q in qs:
        L = lie_derivative_metric(sk.metric, chk.xi, q)
        res_base_g = max(res_base_g, float(np.max(np.abs(L - 2.0 * sk.g(q)))))
        LI = lie_derivative_endomorphism(sk.complex_structure, chk.xi, q)
        res_base_I = max(res_base_I, float(np.max(np.abs(LI))))
    res_norm = res_chk = res_ik = res_control = 0.0
    for pt in pts:
        q = pt[:n]
        value = chk.norm_squared(q)
        grad = fd_gradient(chk.norm_squared, q)
        lie_n = float(chk.xi.value(q) @ grad)
        res_norm = max(res_norm, abs(lie_n - 2.0 * value))

        def g_chk(x):
            return gc_func(x) / chk.norm_squared(x[:n])

        field = MetricField(2 * n, g_chk)
        L = lie_derivative_metric(field, X, pt, fd=True)
        res_chk = max(res_chk, float(np.max(np.abs(L))))
        for Ik_func in I_funcs:
            endo = EndomorphismField(2 * n, Ik_func)
            LI = lie_derivative_endomorphism(endo, X, pt, fd=True)
            res_ik = max(res_ik, float(np.max(np.abs(LI))))
        raw = MetricField(2 * n, gc_func)
        Lraw = lie_derivative_metric(raw, X, pt, fd=True)
        res_control = max(
            res_control, float(np.max(np.abs(Lraw - 2.0 * gc_func(pt))))
        )
    count = len(pts)
    return [
        CheckResult(
            "chk_base_homothety", "L_xi g = 2 g on the base", res_base_g, tolerance, len(qs)
        ),
        CheckResult(
            "chk_base_holomorphic", "L_xi I = 0 on the base", res_base_I, tolerance, len(qs)
        ),
        CheckResult(
            "chk_norm_homothety",
            "L_{xi1+xi2} (pi^* g(xi,xi)) = 2 pi^* g(xi,xi)",
            res_norm,
            tolerance,
            count,
        ),
        CheckResult(
            "chk_metric_flow",
            "L_{xi1+xi2} g_chK = 0 for g_chK = g(xi,xi)^{-1} g_c",
            res_chk,
            tolerance,
            count,
        ),
        CheckResult(
            "chk_complex_structures_flow",
            "L_{xi1+xi2} I_k = 0 for k = 1, 2, 3",
            res_ik,
            tolerance,
            count,
        ),
        CheckResult(
            "chk_unscaled_negative_control",
            "without the conformal factor L_{xi1+xi2} g_c = 2 g_c exactly",
            res_control,
            tolerance,
            count,
        ),
    ]
