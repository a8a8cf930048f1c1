"""The built-in verification suite: one entry per acceptance-style check,
run over the shipped catalog, with a deterministic machine-readable report.

Each criterion recomputes its expected values through an independent route
(full-summation oracles, definition-based enumerations, exhaustive checks)
rather than trusting the code path it exercises.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import catalog as cat
from .charts import (
    additive_model,
    affine_model,
    bilinear_parts,
    min_plus_model,
    rigidity_report,
    _symbolic_parts,
)
from .core import classify, green_j_classes, pi_and_subgroups
from .metrics import (
    Point,
    a_weight,
    bowman_data_from_spec,
    bowman_distance,
    disjoint_union_distance,
    discrete_metric,
    extended_bonding,
    flat_bowman_data,
    metric_axiom_suite,
    separation_witness,
)
from .order import flat_model, validate_poset, way_below_all, way_below_by_definition
from .semilattice import assemble, decompose, iso_equivalent
from .topology import (
    TopologicalSemigroupModel,
    all_topologies,
    continuity_check,
    mp_check,
    order_graph_closed,
    prop34_equivalences,
)

RANDOM_SEED = 20260823


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float


def _result(number, title, passed, detail, t0):
    return CriterionResult(number, title, passed, detail, time.time() - t0)


def criterion_algebra() -> CriterionResult:
    """Classification soundness over the whole catalog."""
    t0 = time.time()
    failures = []
    instances = cat.semigroup_catalog()
    for name, S in instances.items():
        c = classify(S)  # raises if the two Clifford criteria disagree
        if c.is_inverse:
            inv = c.inverse.inv
            for x in S.elements():
                for y in S.elements():
                    if inv[S.mul(x, y)] != S.mul(inv[y], inv[x]):
                        failures.append(f"{name}: (xy)^-1 != y^-1 x^-1 at ({x},{y})")
            # product characterization of groups, computed independently
            via_e = len(c.idempotents) == 1
            via_product = all(
                S.mul(S.mul(x, y), inv[y]) == x
                for x in S.elements()
                for y in S.elements()
            )
            if not (c.is_group == via_e == via_product):
                failures.append(f"{name}: group criteria disagree")
            if (c.is_left_cancellative or c.is_right_cancellative) and not c.is_group:
                failures.append(f"{name}: cancellative inverse semigroup not a group")
    ok = not failures and len(instances) >= 15
    detail = f"{len(instances)} instances" + (
        "" if not failures else "; " + "; ".join(failures[:3])
    )
    return _result(1, "algebra soundness", ok, detail, t0)


def criterion_round_trip() -> CriterionResult:
    t0 = time.time()
    failures = []
    specs = cat.spec_catalog()
    for name, spec in specs.items():
        A = assemble(spec)
        A2 = assemble(decompose(A.semigroup))
        if iso_equivalent(A.semigroup, A2.semigroup) is None:
            failures.append(f"{name}: round trip not isomorphic")
        _, groups = pi_and_subgroups(A.semigroup)
        if sorted(green_j_classes(A.semigroup)) != sorted(
            tuple(g) for g in groups.values()
        ):
            failures.append(f"{name}: J-classes differ from group fibers")
    return _result(2, "spec round trip", not failures,
                   f"{len(specs)} specs" + ("; " + "; ".join(failures) if failures else ""),
                   t0)


def _poset_family():
    def chain(n):
        return validate_poset([[i <= j for j in range(n)] for i in range(n)])

    def antichain_bottom(k):
        return validate_poset(
            [[i == j or i == 0 for j in range(k + 1)] for i in range(k + 1)]
        )

    def boolean(bits):
        n = 1 << bits
        return validate_poset([[(i & j) == i for j in range(n)] for i in range(n)])

    fam = [chain(n) for n in range(1, 7)]
    fam += [antichain_bottom(k) for k in range(1, 6)]
    fam += [boolean(b) for b in (1, 2)]
    rng = random.Random(RANDOM_SEED)
    for _ in range(50):
        n = rng.randint(1, 6)
        rel = [[i == j for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.4:
                    rel[i][j] = True
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    rel[i][j] = rel[i][j] or (rel[i][k] and rel[k][j])
        fam.append(validate_poset(rel))
    return fam


def criterion_way_below() -> CriterionResult:
    t0 = time.time()
    failures = []
    fam = _poset_family()
    for idx, P in enumerate(fam):
        rel = way_below_all(P)  # also checks the two structural invariants
        for x in P.elements():
            for y in P.elements():
                if rel.wb(x, y) != way_below_by_definition(P, x, y):
                    failures.append(f"poset {idx}: disagreement at ({x},{y})")
    return _result(3, "way-below oracle equivalence", not failures,
                   f"{len(fam)} posets" + ("; " + "; ".join(failures[:3]) if failures else ""),
                   t0)


def criterion_openness() -> CriterionResult:
    t0 = time.time()
    failures = []
    from .core import is_semilattice

    cliffords = {
        name: S
        for name, S in cat.semigroup_catalog().items()
        if S.n <= 4 and classify(S).is_clifford
    }
    pairs = continuous = 0
    for n in (1, 2, 3, 4):
        members = [(name, S) for name, S in cliffords.items() if S.n == n]
        for T in all_topologies(n):
            for name, S in members:
                pairs += 1
                model = TopologicalSemigroupModel(S, T)
                ok, _ = continuity_check(model)
                if not ok:
                    continue
                continuous += 1
                rec = prop34_equivalences(model)
                if not rec.all_equal():
                    failures.append(f"{name}: openness conditions diverge")
                j_open = all(
                    frozenset(c) in T.opens for c in green_j_classes(S)
                )
                if mp_check(model) != j_open:
                    failures.append(f"{name}: MP and open J-classes disagree")
                if is_semilattice(S):
                    closed, hd = order_graph_closed(model)
                    if closed != hd:
                        failures.append(f"{name}: order-graph/Hausdorff disagree")
    return _result(4, "openness equivalence sweep", not failures,
                   f"{pairs} pairs, {continuous} continuous" +
                   ("; " + "; ".join(failures[:3]) if failures else ""),
                   t0)


def two_chain_reference_data(base_points=None):
    """The order-3 reference model: E = {0 < 1}, G_1 = Z2, G_0 trivial,
    rho(0,1) = 1, 0/1-valued group metrics."""
    spec = cat.spec_catalog()["chain2-z2-trivial"]
    return bowman_data_from_spec(spec, [[0, 1], [1, 0]], base_points=base_points)


def oracle_bowman(data, p, q) -> Fraction:
    """Independent full-summation oracle for the series metric: everything
    re-expanded term by term with no shortcuts or cached weights."""
    total = data.emodel.rho(p.e, q.e)
    for j, b in enumerate(data.basis, start=1):
        ae = a_weight(data, b, p.e)
        af = a_weight(data, b, q.e)
        blk = data.blocks[b]
        gb = extended_bonding(data, p.e, b, p.g)
        hb = extended_bonding(data, q.e, b, q.g)
        term = abs(ae - af)
        for k, t in enumerate(blk.enumeration, start=1):
            term += Fraction(1, 2 ** k) * abs(
                ae * blk.d[gb][t] - af * blk.d[hb][t]
            )
        total += Fraction(1, 2 ** j) * term
    return total


def _metric_instances():
    out = {"two-chain": two_chain_reference_data()}
    for N in (3, 5, 8):
        for gname, fiber in (("z2", cat.cyclic_group(2)), ("z3", cat.cyclic_group(3))):
            for kind in ("identity", "collapse"):
                out[f"flat{N}-{gname}-{kind}"] = flat_bowman_data(
                    flat_model(N), fiber, kind
                )
    return out


def criterion_metric_axioms() -> CriterionResult:
    t0 = time.time()
    failures = []
    instances = _metric_instances()
    data = instances["two-chain"]
    pa, pb, pz = Point(1, 0), Point(1, 1), Point(0, 0)
    if bowman_distance(data, pa, pb).value != Fraction(3, 16):
        failures.append("reference d((1,a),(1,b)) != 3/16")
    if bowman_distance(data, pa, pz).value != Fraction(21, 16):
        failures.append("reference d((1,a),(0,z)) != 21/16")
    for name, inst in instances.items():
        points = inst.points()
        dist = {}
        for p in points:
            for q in points:
                v = bowman_distance(inst, p, q).value
                dist[(p, q)] = v
                if oracle_bowman(inst, p, q) != v:
                    failures.append(f"{name}: oracle mismatch at ({p},{q})")
                if not (0 <= v <= 3):
                    failures.append(f"{name}: d out of [0,3] at ({p},{q})")
        rep = metric_axiom_suite(lambda p, q: dist[(p, q)], points)
        if not rep.passed:
            failures.append(f"{name}: metric axioms fail")
        for b in inst.basis:
            for e in inst.emodel.elements():
                for f in inst.emodel.elements():
                    if abs(a_weight(inst, b, e) - a_weight(inst, b, f)) > \
                            inst.emodel.rho(e, f):
                        failures.append(f"{name}: weight not 1-Lipschitz")
    return _result(5, "series metric axioms", not failures,
                   f"{len(instances)} instances" +
                   ("; " + "; ".join(failures[:3]) if failures else ""),
                   t0)


def eta_injective_on_data(data, e):
    """Injectivity of g -> (phi_{e,b}(g)) over the basis elements way-below
    e, straight from the definition."""
    D = [b for b in data.basis if data.emodel.way_below(b, e)]
    seen = {}
    for g in data.blocks[e].group.elements():
        key = tuple(data.phi(e, b, g) for b in D)
        if key in seen:
            return False, (seen[key], g)
        seen[key] = g
    return True, None


def truncated_pseudo_instance():
    """2-chain with Z2 over Z2, collapse bonding, basis cut down to the
    minimum: the bonding tuple map cannot separate the top group."""
    spec = cat.spec_catalog()["chain2-z2-z2-collapse"]
    return bowman_data_from_spec(spec, [[0, 1], [1, 0]], basis=(0,), pseudo=True)


def criterion_separation() -> CriterionResult:
    t0 = time.time()
    failures = []
    checked = 0
    for name, inst in _metric_instances().items():
        for e in inst.emodel.elements():
            injective, _ = eta_injective_on_data(inst, e)
            group = inst.blocks[e].group
            for g in group.elements():
                for h in group.elements():
                    if g >= h:
                        continue
                    checked += 1
                    d = bowman_distance(inst, Point(e, g), Point(e, h)).value
                    if injective:
                        if d <= 0:
                            failures.append(f"{name}: zero distance at e={e}")
                        b = separation_witness(inst, e, g, h)
                        if b is None or not inst.emodel.way_below(b, e):
                            failures.append(f"{name}: no separating witness at e={e}")
                    elif d > 0:
                        failures.append(f"{name}: unexpected separation at e={e}")
    pseudo = truncated_pseudo_instance()
    injective, witness = eta_injective_on_data(pseudo, 1)
    if injective:
        failures.append("pseudo instance: eta unexpectedly injective")
    d = bowman_distance(pseudo, Point(1, 0), Point(1, 1)).value
    if d != 0:
        failures.append("pseudo instance: truncated metric still separates")
    if separation_witness(pseudo, 1, 0, 1) is not None:
        failures.append("pseudo instance: witness should not exist")
    return _result(6, "separation/definiteness linkage", not failures,
                   f"{checked} pairs + pseudo-metric failure" +
                   ("; " + "; ".join(failures[:3]) if failures else ""),
                   t0)


CONVERGENCE_SCHEDULE = (1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000)


def convergence_instance(N: int = 2000):
    return flat_bowman_data(flat_model(N), cat.cyclic_group(2), "identity")


def criterion_convergence() -> CriterionResult:
    t0 = time.time()
    failures = []
    data = convergence_instance()
    limit = Point(0, 0)
    du = {e: discrete_metric(2) for e in data.emodel.elements()}
    for k in CONVERGENCE_SCHEDULE:
        p = Point(k, 0)  # the point 1/k sits at index k
        bv = bowman_distance(data, p, limit)
        j_k = k + 1  # position of 1/k in the basis enumeration (1-based)
        bound = Fraction(1, k) + Fraction(2) ** (1 - j_k + 1)
        if bv.value > bound:
            failures.append(f"k={k}: distance {bv.value} exceeds bound {bound}")
        if disjoint_union_distance(du, p, limit) != 1:
            failures.append(f"k={k}: disjoint-union distance not 1")
    final = bowman_distance(data, Point(2000, 0), limit).value
    if final >= Fraction(1, 1000):
        failures.append(f"k=2000: distance {final} not below 1e-3")
    return _result(7, "convergence dichotomy", not failures,
                   f"schedule of {len(CONVERGENCE_SCHEDULE)} points, "
                   f"d(k=2000) = {float(final):.6e}" +
                   ("; " + "; ".join(failures[:3]) if failures else ""),
                   t0)


def criterion_rigidity() -> CriterionResult:
    t0 = time.time()
    failures = []
    for model in (additive_model(2), affine_model(1)):
        rep = rigidity_report(model, scan_radius=0.25, grid_step=0.01,
                              newton_iters=30)
        if not rep.differentiable_at_origin:
            failures.append(f"{model.name}: probe failed")
            continue
        if rep.smallest_singular_value < 0.9:
            failures.append(f"{model.name}: smallest singular value "
                            f"{rep.smallest_singular_value:.3g}")
        if len(rep.fixed_points_found) != 1:
            failures.append(f"{model.name}: {len(rep.fixed_points_found)} fixed points")
    mp = rigidity_report(min_plus_model(), scan_radius=0.25, grid_step=0.01,
                         newton_iters=30)
    if mp.differentiable_at_origin:
        failures.append("min-plus: not flagged non-differentiable")
    if mp.worst_mismatch < 0.5:
        failures.append(f"min-plus: mismatch {mp.worst_mismatch:.3g} < 0.5")
    axis = [p for p in mp.fixed_points_found if abs(p[1]) < 1e-9]
    if len(axis) < 10:
        failures.append(f"min-plus: only {len(axis)} fixed points on the axis")
    for model in (additive_model(2), affine_model(1), affine_model(2)):
        L, R = bilinear_parts(model)
        Ls, Rs = _symbolic_parts(model)
        gap = max(float(np.linalg.norm(L - Ls)), float(np.linalg.norm(R - Rs)))
        if gap > 1e-6:
            failures.append(f"{model.name}: Jacobian off symbolic by {gap:.3g}")
    return _result(8, "rigidity dichotomy", not failures,
                   "additive/affine isolated, min-plus continuum" +
                   ("; " + "; ".join(failures[:3]) if failures else ""),
                   t0)


def criterion_determinism() -> CriterionResult:
    """Two fresh passes over representative exact computations must agree
    byte for byte (the CLI-level check reruns the whole suite)."""
    t0 = time.time()

    def snapshot():
        data = two_chain_reference_data()
        lines = []
        for p in data.points():
            for q in data.points():
                lines.append(f"{p.e},{p.g}\t{q.e},{q.g}\t"
                             f"{bowman_distance(data, p, q).value}")
        for name, S in cat.semigroup_catalog().items():
            c = classify(S)
            lines.append(f"{name}\t{c.is_inverse}\t{c.is_clifford}\t{c.is_group}")
        return "\n".join(lines)

    same = snapshot() == snapshot()
    return _result(9, "determinism probe", same,
                   "two fresh passes byte-identical" if same else "outputs differ",
                   t0)


CRITERIA = (
    criterion_algebra,
    criterion_round_trip,
    criterion_way_below,
    criterion_openness,
    criterion_metric_axioms,
    criterion_separation,
    criterion_convergence,
    criterion_rigidity,
    criterion_determinism,
)


def run_all() -> list:
    return [fn() for fn in CRITERIA]


def machine_report(results) -> str:
    """Deterministic TSV (no timings): number, title, PASS/FAIL, detail."""
    lines = ["criterion\ttitle\tstatus\tdetail"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.number}\t{r.title}\t{status}\t{r.detail}")
    return "\n".join(lines) + "\n"


def human_report(results) -> str:
    lines = ["verification suite over the built-in catalog", ""]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"  [{status}] {r.number}. {r.title} "
                     f"({r.elapsed:.2f}s) - {r.detail}")
    lines.append("")
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n"
