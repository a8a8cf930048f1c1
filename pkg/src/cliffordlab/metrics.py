"""Explicit metrics on strong semilattices of groups.

Three distance functions live here, all over exact rationals:

* the weighted-series metric combining a semilattice metric rho with group
  metrics sampled against dense enumerations (with rigorous truncation
  bounds when the basis series is cut off),
* the isometric-bonding metric rho(e,f) + d_{ef}(phi(s), phi(t)), which
  refuses to run unless every bonding map is an isometry,
* the disjoint-union metric (d_e inside a block, 1 across blocks).

Plus the metric-axiom suite and convergence probes that exercise them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .core import FiniteSemigroup
from .errors import IsometryHypothesisViolated, WorkbenchError
from .order import (
    FinitePoset,
    LazySemilatticeModel,
    is_basis,
    poset_of_semilattice,
    way_below_all,
)
from .semilattice import StrongSemilatticeSpec, group_identity


@dataclass(frozen=True)
class Point:
    """An element (e, g): idempotent index e, local group element g."""

    e: int
    g: int


class PosetEModel:
    """Idempotent-semilattice side of the metric data, given by a finite
    poset and an exact metric matrix rho bounded by 1."""

    def __init__(self, poset: FinitePoset, rho):
        self.poset = poset
        self.rho_matrix = tuple(
            tuple(Fraction(v) for v in row) for row in rho
        )
        n = poset.n
        if len(self.rho_matrix) != n or any(len(r) != n for r in self.rho_matrix):
            raise WorkbenchError("rho matrix shape does not match poset")
        _check_metric_matrix(self.rho_matrix, bound=Fraction(1))
        wb = way_below_all(poset)
        self._wb = wb

    def elements(self):
        return self.poset.elements()

    def le(self, e, f):
        return self.poset.le(e, f)

    def way_below(self, b, e):
        return self._wb.wb(b, e)

    def rho(self, e, f):
        return self.rho_matrix[e][f]

    def minimum(self):
        m = self.poset.minimum()
        if m is None:
            raise WorkbenchError("E-model has no minimum element")
        return m

    def check_basis(self, basis):
        ok, witness = is_basis(self.poset, basis, self._wb)
        return ok, witness

    def a_weight_raw(self, b, e):
        complement = [x for x in self.elements() if not self.way_below(b, x)]
        if not complement:
            raise WorkbenchError(f"complement of the way-up set of {b} is empty")
        return min(self.rho(e, x) for x in complement)


class FlatEModel:
    """E-model over the truncated flat semilattice, with O(1) weights.

    Way-below follows the untruncated flat order (0 << x, x << x), so the
    complement of the way-up set of b != 0 is everything except b and the
    weight a_b(e) is 0 off b and the gap to the nearest other point at b.
    """

    def __init__(self, model: LazySemilatticeModel):
        self.model = model
        pts = model.points
        order = sorted(range(len(pts)), key=lambda i: pts[i])
        gaps = [Fraction(0)] * len(pts)
        for k, i in enumerate(order):
            best = None
            if k > 0:
                best = pts[i] - pts[order[k - 1]]
            if k + 1 < len(order):
                right = pts[order[k + 1]] - pts[i]
                best = right if best is None else min(best, right)
            gaps[i] = best if best is not None else Fraction(0)
        self._gaps = tuple(gaps)

    def elements(self):
        return self.model.elements()

    def le(self, e, f):
        return self.model.le(e, f)

    def way_below(self, b, e):
        return self.model.way_below(b, e)

    def rho(self, e, f):
        return self.model.rho(e, f)

    def minimum(self):
        return 0

    def check_basis(self, basis):
        # B_x subset {0, x} needs x itself to reach sup x
        missing = [x for x in self.elements() if x != 0 and x not in set(basis)]
        if missing:
            return False, missing[0]
        return True, None

    def a_weight_raw(self, b, e):
        return self._gaps[b] if e == b else Fraction(0)


def _check_metric_matrix(m, bound: Optional[Fraction] = None):
    n = len(m)
    for i in range(n):
        if m[i][i] != 0:
            raise WorkbenchError(f"d({i},{i}) != 0")
        for j in range(n):
            if m[i][j] < 0:
                raise WorkbenchError(f"d({i},{j}) < 0")
            if bound is not None and m[i][j] > bound:
                raise WorkbenchError(f"d({i},{j}) > {bound}")
            if m[i][j] != m[j][i]:
                raise WorkbenchError(f"d not symmetric at ({i},{j})")
            if i != j and m[i][j] == 0:
                raise WorkbenchError(f"d({i},{j}) = 0 for distinct points")
            for k in range(n):
                if m[i][k] > m[i][j] + m[j][k]:
                    raise WorkbenchError(f"triangle fails at ({i},{j},{k})")


def discrete_metric(n: int):
    return tuple(
        tuple(Fraction(0) if i == j else Fraction(1) for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class GroupBlock:
    """Per-idempotent metric data: the group, a metric d bounded by 1, a base
    point, and the dense enumeration (for a finite group: every element
    exactly once; the enumeration order is part of the data)."""

    group: FiniteSemigroup
    d: tuple
    base_point: int
    enumeration: tuple[int, ...]


@dataclass
class BowmanMetricData:
    """Everything the series metric consumes.

    basis is the enumerated domain basis b_1, b_2, ... (basis[0] must be the
    minimum, whose weight is identically 1); bonding maps are read off the
    originating spec-style table phi[(e, b)] for b <= e.  With pseudo=True a
    deliberately truncated basis is allowed, producing a pseudo-metric whose
    definiteness failures are themselves of interest.
    """

    emodel: object
    basis: tuple[int, ...]
    blocks: dict
    bonding: dict
    pseudo: bool = False

    def __post_init__(self):
        self.basis = tuple(self.basis)
        if self.basis[0] != self.emodel.minimum():
            raise WorkbenchError("basis enumeration must start at the minimum")
        if len(set(self.basis)) != len(self.basis):
            raise WorkbenchError("basis enumeration repeats an element")
        if not self.pseudo:
            ok, witness = self.emodel.check_basis(self.basis)
            if not ok:
                raise WorkbenchError(f"not a domain basis (fails at {witness})")
        for e, blk in self.blocks.items():
            _check_metric_matrix(blk.d, bound=Fraction(1))
            if sorted(blk.enumeration) != list(blk.group.elements()):
                raise WorkbenchError(f"enumeration at {e} is not the whole group")

    def phi(self, e: int, b: int, g: int) -> int:
        if e == b:
            return g
        return self.bonding[(e, b)][g]

    def points(self):
        return [
            Point(e, g)
            for e in sorted(self.blocks)
            for g in self.blocks[e].group.elements()
        ]


@dataclass(frozen=True)
class BoundedValue:
    """A value plus a rigorous radius containing the untruncated sum."""

    value: Fraction
    tail_bound: Fraction


def a_weight(data: BowmanMetricData, b: int, e: int) -> Fraction:
    """Weight of basis element b at e: distance from e to the complement of
    the way-up set of b; identically 1 at the minimum."""
    if b == data.emodel.minimum():
        return Fraction(1)
    return data.emodel.a_weight_raw(b, e)


def extended_bonding(data: BowmanMetricData, e: int, b: int, g: int) -> int:
    """phi_{e,b}(g) when b <= e; otherwise the constant base point of b."""
    if data.emodel.le(b, e):
        return data.phi(e, b, g)
    return data.blocks[b].base_point


def p_term(data: BowmanMetricData, b: int, p: Point, q: Point) -> Fraction:
    """The per-basis-element comparison term: weight difference plus the
    2^-k-weighted profile difference against the dense enumeration.
    Bounded by 2 since all weights and metrics sit in [0, 1]."""
    ae = a_weight(data, b, p.e)
    af = a_weight(data, b, q.e)
    if ae == 0 and af == 0:
        return Fraction(0)
    blk = data.blocks[b]
    gb = extended_bonding(data, p.e, b, p.g)
    hb = extended_bonding(data, q.e, b, q.g)
    total = abs(ae - af)
    w = Fraction(1)
    for t in blk.enumeration:
        w /= 2
        total += w * abs(ae * blk.d[gb][t] - af * blk.d[hb][t])
    return total


def bowman_distance(data: BowmanMetricData, p: Point, q: Point,
                    truncation: Optional[int] = None) -> BoundedValue:
    """rho(e,f) plus the 2^-j series of comparison terms over the basis.

    With truncation J the tail bound is 2^(1-J) (each term is at most 2);
    with the full finite basis the bound is 0 and the value is exact."""
    J = len(data.basis) if truncation is None else truncation
    if J < 1:
        raise WorkbenchError("truncation must be >= 1")
    value = data.emodel.rho(p.e, q.e)
    w = Fraction(1)
    for j in range(min(J, len(data.basis))):
        w /= 2
        value += w * p_term(data, data.basis[j], p, q)
    tail = Fraction(0) if J >= len(data.basis) else Fraction(2) ** (1 - J)
    return BoundedValue(value=value, tail_bound=tail)


def separation_witness(data: BowmanMetricData, e: int, g: int, h: int):
    """A basis element b way-below e whose bonding map separates g and h,
    or None when the (possibly truncated) basis cannot separate them."""
    for b in data.basis:
        if data.emodel.way_below(b, e) and data.phi(e, b, g) != data.phi(e, b, h):
            return b
    return None


def default_basis_order(emodel) -> tuple[int, ...]:
    """Minimum first, then decreasing way-up-set (weight support) size, ties
    by element index.  Recorded in data files; the 2^-j weights depend on it."""
    m = emodel.minimum()
    rest = [e for e in emodel.elements() if e != m]
    support = {
        e: sum(1 for x in emodel.elements() if emodel.way_below(e, x)) for e in rest
    }
    rest.sort(key=lambda e: (-support[e], e))
    return (m,) + tuple(rest)


def default_enumeration(group: FiniteSemigroup) -> tuple[int, ...]:
    """Identity first, then remaining elements by index."""
    ident = group_identity(group)
    return (ident,) + tuple(x for x in group.elements() if x != ident)


def bowman_data_from_spec(spec: StrongSemilatticeSpec, rho,
                          basis: Optional[tuple] = None,
                          d: Optional[dict] = None,
                          base_points: Optional[dict] = None,
                          enumerations: Optional[dict] = None,
                          pseudo: bool = False) -> BowmanMetricData:
    """Metric data over a strong-semilattice spec: rho on E, per-group
    metrics (default discrete), base points (default identities), and
    enumerations (default identity-first)."""
    emodel = PosetEModel(poset_of_semilattice(spec.E), rho)
    blocks = {}
    for e in spec.E.elements():
        g = spec.groups[e]
        blocks[e] = GroupBlock(
            group=g,
            d=tuple(tuple(Fraction(v) for v in row)
                    for row in (d[e] if d and e in d else discrete_metric(g.n))),
            base_point=(base_points[e] if base_points and e in base_points
                        else group_identity(g)),
            enumeration=(tuple(enumerations[e]) if enumerations and e in enumerations
                         else default_enumeration(g)),
        )
    if basis is None:
        basis = default_basis_order(emodel)
    bonding = {
        (f, e): phi for (f, e), phi in spec.bonding.items() if f != e
    }
    return BowmanMetricData(emodel=emodel, basis=tuple(basis), blocks=blocks,
                            bonding=bonding, pseudo=pseudo)


def flat_bowman_data(model: LazySemilatticeModel, fiber: FiniteSemigroup,
                     bonding_kind: str = "identity",
                     basis: Optional[tuple] = None,
                     base_points: Optional[dict] = None,
                     pseudo: bool = False) -> BowmanMetricData:
    """Metric data on the flat model with a copy of one group at every point
    and either identity or collapse-to-identity bonding into the bottom."""
    emodel = FlatEModel(model)
    ident = group_identity(fiber)
    if bonding_kind == "identity":
        down = tuple(range(fiber.n))
    elif bonding_kind == "collapse":
        down = tuple(ident for _ in fiber.elements())
    else:
        raise WorkbenchError(f"unknown bonding kind {bonding_kind!r}")
    blocks = {
        e: GroupBlock(
            group=fiber,
            d=discrete_metric(fiber.n),
            base_point=(base_points[e] if base_points and e in base_points
                        else ident),
            enumeration=default_enumeration(fiber),
        )
        for e in model.elements()
    }
    bonding = {(e, 0): down for e in model.elements() if e != 0}
    if basis is None:
        basis = tuple(model.elements())
    return BowmanMetricData(emodel=emodel, basis=tuple(basis), blocks=blocks,
                            bonding=bonding, pseudo=pseudo)


@dataclass
class YeagerMetricData:
    """Data for the isometric-bonding metric: a spec, rho on E, and one
    metric per group; every bonding map must be an isometry."""

    spec: StrongSemilatticeSpec
    rho: tuple
    d: dict
    _isometry_checked: bool = field(default=False, repr=False)

    def __post_init__(self):
        self.rho = tuple(tuple(Fraction(v) for v in row) for row in self.rho)
        _check_metric_matrix(self.rho, bound=Fraction(1))
        self.d = {
            e: tuple(tuple(Fraction(v) for v in row) for row in m)
            for e, m in self.d.items()
        }
        for e, m in self.d.items():
            _check_metric_matrix(m, bound=Fraction(1))


def isometry_check(data: YeagerMetricData):
    """Does every bonding map preserve distances?  Returns (True, None) or
    (False, ((f, e), (s, t))) with the collapsing pair."""
    spec = data.spec
    for (f, e), phi in spec.bonding.items():
        if f == e:
            continue
        for s in spec.groups[f].elements():
            for t in spec.groups[f].elements():
                if data.d[e][phi[s]][phi[t]] != data.d[f][s][t]:
                    return False, ((f, e), (s, t))
    data._isometry_checked = True
    return True, None


def yeager_distance(data: YeagerMetricData, p: Point, q: Point) -> Fraction:
    """rho(e,f) + d_{ef}(phi_{e,ef}(s), phi_{f,ef}(t)); refuses to compute
    when some bonding map fails the isometry hypothesis."""
    if not data._isometry_checked:
        ok, witness = isometry_check(data)
        if not ok:
            raise IsometryHypothesisViolated(*witness)
    spec = data.spec
    ef = spec.E.mul(p.e, q.e)
    s = spec.phi(p.e, ef, p.g)
    t = spec.phi(q.e, ef, q.g)
    return data.rho[p.e][q.e] + data.d[ef][s][t]


def disjoint_union_distance(d: dict, p: Point, q: Point) -> Fraction:
    """d_e(s, t) inside one block, 1 across distinct blocks."""
    if p.e == q.e:
        return Fraction(d[p.e][p.g][q.g])
    return Fraction(1)


@dataclass
class MetricReport:
    """Outcome of the axiom suite; empty lists mean a clean pass."""

    negativity: list
    symmetry: list
    identity: list
    triangle: list

    @property
    def passed(self) -> bool:
        return not (self.negativity or self.symmetry or self.identity
                    or self.triangle)


def metric_axiom_suite(dist: Callable, points, tolerance=0) -> MetricReport:
    """Exhaustive metric-axiom check over a finite point set.

    tolerance only loosens the triangle inequality (for float-mode suites);
    everything else is compared exactly."""
    points = list(points)
    report = MetricReport([], [], [], [])
    table = {}
    for p in points:
        for q in points:
            table[(p, q)] = dist(p, q)
    for p in points:
        for q in points:
            v = table[(p, q)]
            if v < 0:
                report.negativity.append((p, q, v))
            if v != table[(q, p)]:
                report.symmetry.append((p, q, v, table[(q, p)]))
            if (v == 0) != (p == q):
                report.identity.append((p, q, v))
    for p in points:
        for q in points:
            for r in points:
                if table[(p, r)] > table[(p, q)] + table[(q, r)] + tolerance:
                    report.triangle.append((p, q, r))
    return report


def convergence_probe(dist: Callable, sequence: Callable, limit,
                      ks, thresholds=()):
    """Evaluate d(x_k, limit) along a schedule of indices.

    Returns (rows, verdicts): rows are (k, distance) pairs; verdicts map each
    threshold to True when every evaluated distance from some k onward sits
    below it."""
    rows = [(k, dist(sequence(k), limit)) for k in ks]
    verdicts = {}
    for thr in thresholds:
        below = [v < thr for _, v in rows]
        first = None
        for i in range(len(below)):
            if all(below[i:]):
                first = rows[i][0]
                break
        verdicts[thr] = first
    return rows, verdicts
