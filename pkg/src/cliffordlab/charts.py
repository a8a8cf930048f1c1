"""Numerical lab for local multiplication charts around an idempotent.

A chart model is an evaluable map mu: R^n x R^n -> R^n with mu(0,0) = 0.
The lab probes one-sided differentiability at the origin, extracts the two
partial-derivative operators L and R by central differences, forms the
displacement derivative L + R - I, and scans for fixed points of
f(u) = mu(u, u) with damped Newton from a grid of seeds.  For smooth models
with a commuting-idempotent structure L = R =: P is a projection and
(2P - I)^2 = I, which isolates the idempotent; non-smooth models (min-plus)
are flagged before any operator is computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import (
    EvaluationOutsideDomain,
    InternalInconsistency,
    NotDifferentiable,
    WorkbenchError,
)

Polynomial = list  # per coordinate: list of (coeff, exponent tuple of length 2n)


@dataclass
class ChartModel:
    """Local multiplication in chart coordinates, with domain ball radius.

    polynomials, when present, give mu exactly as per-coordinate multivariate
    polynomials in the 2n variables (u, v); derivative checks then have an
    exact symbolic reference."""

    dim: int
    mu: Callable
    radius: float = 1.0
    name: str = "custom"
    polynomials: Optional[list] = None

    def __post_init__(self):
        z = np.zeros(self.dim)
        if float(np.linalg.norm(self.evaluate(z, z))) > 1e-12:
            raise WorkbenchError("mu(0, 0) must vanish")

    def evaluate(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if np.linalg.norm(u) > self.radius + 1e-12 or \
                np.linalg.norm(v) > self.radius + 1e-12:
            raise EvaluationOutsideDomain(
                f"|u|={np.linalg.norm(u):.3g}, |v|={np.linalg.norm(v):.3g} "
                f"exceed radius {self.radius}"
            )
        return np.asarray(self.mu(u, v), dtype=float)

    def squared(self, u) -> np.ndarray:
        return self.evaluate(u, u)


def _poly_eval(terms, w) -> float:
    total = 0.0
    for coeff, exps in terms:
        prod = coeff
        for x, e in zip(w, exps):
            if e:
                prod *= x ** e
        total += prod
    return total


def polynomial_model(dim: int, polynomials, radius: float = 1.0,
                     name: str = "polynomial") -> ChartModel:
    polys = [
        [(float(c), tuple(int(e) for e in exps)) for c, exps in coord]
        for coord in polynomials
    ]
    if len(polys) != dim:
        raise WorkbenchError(f"need {dim} coordinate polynomials")
    for coord in polys:
        for _, exps in coord:
            if len(exps) != 2 * dim:
                raise WorkbenchError("exponent tuples must have length 2*dim")

    def mu(u, v):
        w = np.concatenate([u, v])
        return np.array([_poly_eval(coord, w) for coord in polys])

    return ChartModel(dim=dim, mu=mu, radius=radius, name=name,
                      polynomials=polys)


def additive_model(dim: int = 2, radius: float = 1.0) -> ChartModel:
    """mu(u, v) = u + v: the chart of a group-like (single-idempotent) point."""
    polys = []
    for i in range(dim):
        eu = [0] * (2 * dim)
        ev = [0] * (2 * dim)
        eu[i] = 1
        ev[dim + i] = 1
        polys.append([(1.0, tuple(eu)), (1.0, tuple(ev))])
    m = polynomial_model(dim, polys, radius, name="additive")
    return m


def affine_model(dim: int = 1, radius: float = 1.0) -> ChartModel:
    """mu(u, v) = u + v + u*v coordinatewise; smooth with a second fixed
    point of the squaring map at -1 per coordinate, outside small balls."""
    polys = []
    for i in range(dim):
        eu = [0] * (2 * dim)
        ev = [0] * (2 * dim)
        euv = [0] * (2 * dim)
        eu[i] = 1
        ev[dim + i] = 1
        euv[i] = 1
        euv[dim + i] = 1
        polys.append([(1.0, tuple(eu)), (1.0, tuple(ev)), (1.0, tuple(euv))])
    return polynomial_model(dim, polys, radius, name="affine")


def min_plus_model(radius: float = 1.0) -> ChartModel:
    """mu((e,s),(f,t)) = (min(e,f), s+t): a continuum of idempotents along
    the first axis; not differentiable at the origin."""

    def mu(u, v):
        return np.array([min(u[0], v[0]), u[1] + v[1]])

    return ChartModel(dim=2, mu=mu, radius=radius, name="min-plus")


def discrete_product_model(dim: int = 2, radius: float = 1.0) -> ChartModel:
    """Chart of an isolated idempotent in a product with a discrete factor:
    the first coordinate is killed, the second adds."""

    def mu(u, v):
        out = u + v
        out[0] = 0.0
        return out

    polys = []
    for i in range(dim):
        eu = [0] * (2 * dim)
        ev = [0] * (2 * dim)
        eu[i] = 1
        ev[dim + i] = 1
        if i == 0:
            polys.append([])
        else:
            polys.append([(1.0, tuple(eu)), (1.0, tuple(ev))])
    return polynomial_model(dim, polys, radius, name="discrete-product")


BUILTIN_MODELS = {
    "additive": additive_model,
    "affine": affine_model,
    "min-plus": lambda dim=2, radius=1.0: min_plus_model(radius),
    "discrete-product": discrete_product_model,
}


@dataclass
class ProbeVerdict:
    differentiable: bool
    worst_mismatch: float
    witness_direction: Optional[tuple]
    noise_floor: float


def _default_directions(dim: int):
    dirs = []
    m = 2 * dim
    for i in range(m):
        w = np.zeros(m)
        w[i] = 1.0
        dirs.append(w)
    for i in range(m):
        for j in range(i + 1, m):
            w = np.zeros(m)
            w[i] = 1.0
            w[j] = 1.0
            dirs.append(w)
    return dirs


def differentiability_probe(model: ChartModel, directions=None,
                            steps=None) -> ProbeVerdict:
    """Compare one-sided difference quotients of mu at the origin along a
    spanning direction set, and additivity of the directional derivative
    across direction sums.  Any mismatch beyond 10x the finite-difference
    noise floor fails the probe."""
    n = model.dim
    if directions is None:
        directions = _default_directions(n)
    if steps is None:
        steps = [10.0 ** (-k) for k in range(2, 7)]
    t_min = min(steps)
    noise = max(t_min, 1e-14 / t_min)
    threshold = 10.0 * noise

    def quotient(w, t):
        w = np.asarray(w, dtype=float)
        scale = np.linalg.norm(w)
        tt = t / max(scale, 1.0)
        return model.evaluate(tt * w[:n], tt * w[n:]) / tt

    worst = 0.0
    witness = None
    deriv = {}
    for w in directions:
        q_plus = quotient(w, t_min)
        q_minus = quotient(w, -t_min)
        mismatch = float(np.linalg.norm(q_plus - q_minus))
        deriv[tuple(w)] = 0.5 * (q_plus + q_minus)
        if mismatch > worst:
            worst = mismatch
            witness = tuple(w)
    # additivity of the candidate derivative over direction sums
    base = []
    for i in range(2 * n):
        w = np.zeros(2 * n)
        w[i] = 1.0
        base.append(w)
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            s = base[i] + base[j]
            if tuple(s) not in deriv:
                continue
            gap = float(np.linalg.norm(
                deriv[tuple(s)] - deriv[tuple(base[i])] - deriv[tuple(base[j])]
            ))
            if gap > worst:
                worst = gap
                witness = tuple(s)
    return ProbeVerdict(
        differentiable=worst <= threshold,
        worst_mismatch=worst,
        witness_direction=witness,
        noise_floor=noise,
    )


def _symbolic_parts(model: ChartModel):
    """Exact L and R for polynomial models: linear-term coefficients."""
    n = model.dim
    L = np.zeros((n, n))
    R = np.zeros((n, n))
    for i, coord in enumerate(model.polynomials):
        for coeff, exps in coord:
            if sum(exps) != 1:
                continue
            j = exps.index(1)
            if j < n:
                L[i][j] = coeff
            else:
                R[i][j - n] = coeff
    return L, R


def bilinear_parts(model: ChartModel, step: float = 1e-3):
    """L and R, the partial derivatives of mu at (0,0) in each slot, by
    Richardson-extrapolated central differences.  Polynomial models are
    cross-checked against the exact symbolic derivative (<= 1e-8)."""
    verdict = differentiability_probe(model)
    if not verdict.differentiable:
        raise NotDifferentiable(
            f"probe mismatch {verdict.worst_mismatch:.3g} at "
            f"{verdict.witness_direction}"
        )
    n = model.dim

    def column(slot, j, t):
        w = np.zeros(n)
        w[j] = t
        z = np.zeros(n)
        if slot == 0:
            return (model.evaluate(w, z) - model.evaluate(-w, z)) / (2 * t)
        return (model.evaluate(z, w) - model.evaluate(z, -w)) / (2 * t)

    def matrix(slot):
        cols = []
        for j in range(n):
            d1 = column(slot, j, step)
            d2 = column(slot, j, step / 2)
            cols.append((4 * d2 - d1) / 3)
        return np.column_stack(cols)

    L = matrix(0)
    R = matrix(1)
    if model.polynomials is not None:
        Ls, Rs = _symbolic_parts(model)
        gap = max(float(np.linalg.norm(L - Ls)), float(np.linalg.norm(R - Rs)))
        if gap > 1e-8:
            raise InternalInconsistency(
                f"finite-difference derivative off by {gap:.3g} from symbolic"
            )
    return L, R


@dataclass
class RigidityReport:
    model_name: str
    differentiable_at_origin: bool
    worst_mismatch: float
    L: Optional[np.ndarray]
    R: Optional[np.ndarray]
    L_projection_defect: Optional[float]
    R_projection_defect: Optional[float]
    centrality_defect: Optional[float]
    DH0: Optional[np.ndarray]
    involution_defect: Optional[float]
    DH0_invertible: Optional[bool]
    smallest_singular_value: Optional[float]
    prediction: str
    fixed_points_found: list = field(default_factory=list)
    divergent_seeds: int = 0


def rigidity_report(model: ChartModel, scan_radius: Optional[float] = None,
                    grid_step: float = 0.05, newton_iters: int = 30
                    ) -> RigidityReport:
    """Full dichotomy check: derivative operators, the displacement
    derivative L + R - I with its involution identity, the invertibility
    prediction, and the confirming fixed-point scan."""
    verdict = differentiability_probe(model)
    if scan_radius is None:
        scan_radius = min(0.25, model.radius / 2)
    if not verdict.differentiable:
        points, diverged = fixed_point_scan(
            model, scan_radius, grid_step, newton_iters
        )
        return RigidityReport(
            model_name=model.name,
            differentiable_at_origin=False,
            worst_mismatch=verdict.worst_mismatch,
            L=None, R=None,
            L_projection_defect=None, R_projection_defect=None,
            centrality_defect=None, DH0=None, involution_defect=None,
            DH0_invertible=None, smallest_singular_value=None,
            prediction="not C1 at the idempotent; no prediction",
            fixed_points_found=points,
            divergent_seeds=diverged,
        )
    L, R = bilinear_parts(model)
    n = model.dim
    eye = np.eye(n)
    l_def = float(np.linalg.norm(L @ L - L))
    r_def = float(np.linalg.norm(R @ R - R))
    c_def = float(np.linalg.norm(L - R))
    DH0 = L + R - eye
    inv_def = float(np.linalg.norm(DH0 @ DH0 - eye))
    if l_def <= 1e-8 and r_def <= 1e-8 and c_def <= 1e-8 and inv_def > 1e-6:
        raise InternalInconsistency(
            f"projection passed but involution defect is {inv_def:.3g}"
        )
    smin = float(np.linalg.svd(DH0, compute_uv=False)[-1])
    invertible = smin > 1e-6
    if c_def > 1e-6:
        prediction = "left and right parts differ; out of theorem scope"
    elif invertible:
        prediction = "isolated idempotent"
    else:
        prediction = "displacement derivative singular; no isolation claim"
    points, diverged = fixed_point_scan(model, scan_radius, grid_step,
                                        newton_iters)
    return RigidityReport(
        model_name=model.name,
        differentiable_at_origin=True,
        worst_mismatch=verdict.worst_mismatch,
        L=L, R=R,
        L_projection_defect=l_def,
        R_projection_defect=r_def,
        centrality_defect=c_def,
        DH0=DH0,
        involution_defect=inv_def,
        DH0_invertible=invertible,
        smallest_singular_value=smin,
        prediction=prediction,
        fixed_points_found=points,
        divergent_seeds=diverged,
    )


def fixed_point_scan(model: ChartModel, radius: float, grid_step: float,
                     newton_iters: int = 30, residual_tol: float = 1e-9,
                     dedup_tol: float = 1e-6):
    """Damped Newton on H(u) = mu(u,u) - u from a grid of seeds in the ball.

    Jacobians by central finite differences; singular Jacobians are handled
    by least-squares steps (so continua of fixed points are sampled, not
    fatal).  Returns (sorted fixed points, number of divergent seeds)."""
    if radius > model.radius:
        raise WorkbenchError("scan radius exceeds the model's domain ball")
    n = model.dim

    def H(u):
        return model.squared(u) - u

    def jac(u, h=1e-6):
        cols = []
        for j in range(n):
            step = np.zeros(n)
            step[j] = h
            cols.append((H(u + step) - H(u - step)) / (2 * h))
        return np.column_stack(cols)

    axes = np.arange(-radius, radius + grid_step / 2, grid_step)
    seeds = []
    for idx in np.ndindex(*([len(axes)] * n)):
        u = np.array([axes[i] for i in idx])
        if np.linalg.norm(u) <= radius:
            seeds.append(u)

    found = []
    diverged = 0
    for seed in seeds:
        u = seed.astype(float)
        ok = True
        try:
            r = float(np.linalg.norm(H(u)))
            for _ in range(newton_iters):
                if r < residual_tol:
                    break
                J = jac(u)
                delta, *_ = np.linalg.lstsq(J, -H(u), rcond=None)
                t = 1.0
                for _ in range(12):
                    cand = u + t * delta
                    if np.linalg.norm(cand) > model.radius:
                        t /= 2
                        continue
                    rc = float(np.linalg.norm(H(cand)))
                    if rc < r:
                        u, r = cand, rc
                        break
                    t /= 2
                else:
                    break
                if np.linalg.norm(u) > 4 * radius:
                    ok = False
                    break
        except EvaluationOutsideDomain:
            ok = False
        if not ok:
            diverged += 1
            continue
        if float(np.linalg.norm(H(u))) < residual_tol and \
                np.linalg.norm(u) <= radius + 1e-9:
            if not any(np.linalg.norm(u - np.array(p)) < dedup_tol
                       for p in found):
                found.append(tuple(float(x) for x in u))
    found.sort()
    return found, diverged
