"""Finite semigroups as Cayley tables: validation, inverse structure,
Clifford classification, maximal subgroups, bonding maps, Green's J-classes,
and detection of semigroups isomorphic to a semilattice-group direct product.

Elements are dense integer indices 0..n-1; labels are display metadata only.
All operations are pure functions over immutable values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import (
    IndexOutOfRange,
    InternalInconsistency,
    NotAssociative,
    NotClifford,
    NotInverse,
    NotSemilattice,
    SearchBudgetExceeded,
)


@dataclass(frozen=True)
class FiniteSemigroup:
    """A semigroup of order n with multiplication table[x][y] = x*y.

    Construct via :func:`validate_semigroup`; the constructor itself does not
    re-check associativity.
    """

    table: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[str, ...]] = None

    @property
    def n(self) -> int:
        return len(self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def elements(self) -> range:
        return range(self.n)

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def relabel(self, labels) -> "FiniteSemigroup":
        labels = tuple(labels)
        if len(labels) != self.n:
            raise IndexOutOfRange(f"expected {self.n} labels, got {len(labels)}")
        return FiniteSemigroup(self.table, labels)


def associativity_witnesses(table) -> list[tuple[int, int, int]]:
    """All triples (x, y, z) with (xy)z != x(yz)."""
    n = len(table)
    bad = []
    for x in range(n):
        for y in range(n):
            xy = table[x][y]
            row = table[xy]
            for z in range(n):
                if row[z] != table[x][table[y][z]]:
                    bad.append((x, y, z))
    return bad


def validate_semigroup(table, labels=None) -> FiniteSemigroup:
    """Check shape, index range, and associativity; return the semigroup.

    Raises IndexOutOfRange for malformed tables and NotAssociative (with the
    full witness list) when some triple fails.
    """
    rows = tuple(tuple(row) for row in table)
    n = len(rows)
    if n == 0:
        raise IndexOutOfRange("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise IndexOutOfRange(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not (0 <= v < n):
                raise IndexOutOfRange(f"table[{i}][{j}] = {v!r} not an index < {n}")
    bad = associativity_witnesses(rows)
    if bad:
        raise NotAssociative(bad)
    if labels is not None:
        labels = tuple(labels)
        if len(labels) != n:
            raise IndexOutOfRange(f"expected {n} labels, got {len(labels)}")
    return FiniteSemigroup(rows, labels)


def idempotents(S: FiniteSemigroup) -> list[int]:
    return [x for x in S.elements() if S.mul(x, x) == x]


def is_commutative(S: FiniteSemigroup) -> bool:
    return all(
        S.mul(x, y) == S.mul(y, x) for x in S.elements() for y in S.elements()
    )


def is_semilattice(S: FiniteSemigroup) -> bool:
    return is_commutative(S) and all(S.mul(x, x) == x for x in S.elements())


@dataclass(frozen=True)
class InverseStructure:
    """The unique-inverse assignment of an inverse semigroup.

    inv[x] is the unique y with xyx = x and yxy = y; pi[x] = x * inv[x].
    """

    inv: tuple[int, ...]
    pi: tuple[int, ...]


def _all_inverses(S: FiniteSemigroup, x: int) -> list[int]:
    return [
        y
        for y in S.elements()
        if S.mul(S.mul(x, y), x) == x and S.mul(S.mul(y, x), y) == y
    ]


def inverse_structure(S: FiniteSemigroup) -> Optional[InverseStructure]:
    """The inverse structure, or None when some element does not have a
    unique inverse (uniqueness is re-verified by full enumeration)."""
    inv = []
    for x in S.elements():
        cands = _all_inverses(S, x)
        if len(cands) != 1:
            return None
        inv.append(cands[0])
    pi = tuple(S.mul(x, inv[x]) for x in S.elements())
    for x in S.elements():
        e = pi[x]
        if S.mul(e, e) != e:
            raise InternalInconsistency(f"pi[{x}] = {e} is not idempotent")
    return InverseStructure(tuple(inv), pi)


@dataclass(frozen=True)
class IdempotentOrder:
    """E(S) with the natural partial order e <= f iff ef = e."""

    idempotents: tuple[int, ...]
    leq: frozenset  # pairs (e, f) of global indices with e <= f

    def le(self, e: int, f: int) -> bool:
        return (e, f) in self.leq


def idempotent_order(S: FiniteSemigroup) -> IdempotentOrder:
    """Compute the natural order on E(S), checking the poset axioms and,
    when idempotents commute, that ef is the meet of {e, f}."""
    E = idempotents(S)
    pairs = set()
    for e in E:
        for f in E:
            if S.mul(e, f) == e:
                pairs.add((e, f))
    for e in E:
        if (e, e) not in pairs:
            raise NotSemilattice(f"order not reflexive at {e}")
    for e, f in pairs:
        if e != f and (f, e) in pairs:
            raise NotSemilattice(f"order not antisymmetric at ({e},{f})")
    for e, f in pairs:
        for g in E:
            if (f, g) in pairs and (e, g) not in pairs:
                raise NotSemilattice(f"order not transitive on ({e},{f},{g})")
    commuting = all(S.mul(e, f) == S.mul(f, e) for e in E for f in E)
    if commuting:
        for e in E:
            for f in E:
                m = S.mul(e, f)
                if m not in E:
                    raise NotSemilattice(f"{e}*{f} = {m} not idempotent")
                if (m, e) not in pairs or (m, f) not in pairs:
                    raise NotSemilattice(f"{e}*{f} not a lower bound")
                for g in E:
                    if (g, e) in pairs and (g, f) in pairs and (g, m) not in pairs:
                        raise NotSemilattice(f"{e}*{f} not greatest lower bound")
    return IdempotentOrder(tuple(sorted(E)), frozenset(pairs))


@dataclass(frozen=True)
class Classification:
    is_inverse: bool
    inverse: Optional[InverseStructure]
    is_clifford: bool
    is_group: bool
    is_left_cancellative: bool
    is_right_cancellative: bool
    idempotents: tuple[int, ...]


def classify(S: FiniteSemigroup) -> Classification:
    """Full structural classification by exhaustive checks.

    The Clifford property is computed twice, as "x x^-1 = x^-1 x for all x"
    and as "all idempotents are central"; disagreement would be an
    implementation bug and raises InternalInconsistency.
    """
    E = tuple(sorted(idempotents(S)))
    inv = inverse_structure(S)
    is_inverse = inv is not None
    if is_inverse:
        via_commuting_pi = all(
            S.mul(x, inv.inv[x]) == S.mul(inv.inv[x], x) for x in S.elements()
        )
        via_central = all(
            S.mul(e, x) == S.mul(x, e) for e in E for x in S.elements()
        )
        if via_commuting_pi != via_central:
            raise InternalInconsistency(
                "the two Clifford criteria disagree: "
                f"x x^-1 = x^-1 x gives {via_commuting_pi}, "
                f"central idempotents give {via_central}"
            )
        is_clifford = via_commuting_pi
    else:
        is_clifford = False
    is_group = is_inverse and len(E) == 1
    left_canc = all(
        len({S.mul(a, x) for x in S.elements()}) == S.n for a in S.elements()
    )
    right_canc = all(
        len({S.mul(x, a) for x in S.elements()}) == S.n for a in S.elements()
    )
    return Classification(
        is_inverse=is_inverse,
        inverse=inv,
        is_clifford=is_clifford,
        is_group=is_group,
        is_left_cancellative=left_canc,
        is_right_cancellative=right_canc,
        idempotents=E,
    )


def pi_and_subgroups(S: FiniteSemigroup):
    """The projection pi(x) = x x^-1 and its fibers, the maximal subgroups.

    Returns (pi, groups) where groups maps each idempotent e to the sorted
    tuple of elements of G_e.  Verifies that pi is a homomorphism and that
    each fiber is a group with identity e.  Raises NotClifford otherwise.
    """
    cls = classify(S)
    if not cls.is_clifford:
        raise NotClifford("pi_and_subgroups requires a Clifford semigroup")
    pi = cls.inverse.pi
    for x in S.elements():
        for y in S.elements():
            if pi[S.mul(x, y)] != S.mul(pi[x], pi[y]):
                raise InternalInconsistency(f"pi not a homomorphism at ({x},{y})")
    groups: dict[int, tuple[int, ...]] = {}
    for e in cls.idempotents:
        fiber = tuple(sorted(x for x in S.elements() if pi[x] == e))
        if e not in fiber:
            raise InternalInconsistency(f"{e} not in its own fiber")
        for x in fiber:
            if pi[S.mul(x, cls.inverse.inv[x])] != e:
                raise InternalInconsistency(f"fiber of {e} not inverse-closed")
            for y in fiber:
                if pi[S.mul(x, y)] != e:
                    raise InternalInconsistency(f"fiber of {e} not product-closed")
        groups[e] = fiber
    covered = sorted(x for fiber in groups.values() for x in fiber)
    if covered != list(S.elements()):
        raise InternalInconsistency("fibers do not partition the carrier")
    return pi, groups


@dataclass(frozen=True)
class CliffordDecomposition:
    """Maximal-subgroup partition plus the extracted bonding-map family.

    bonding[(f, e)] for e <= f maps each x in G_f (global index) to
    e*x in G_e (global index)."""

    groups: dict
    bonding: dict
    order: IdempotentOrder


def bonding_maps(S: FiniteSemigroup, groups=None) -> CliffordDecomposition:
    """Tabulate every bonding map phi_{f,e}(x) = ex and verify: each is a
    group homomorphism, phi_{e,e} = id, and phi_{g,e} = phi_{f,e} o phi_{g,f}
    along all chains e <= f <= g."""
    if groups is None:
        _, groups = pi_and_subgroups(S)
    order = idempotent_order(S)
    bonding: dict[tuple[int, int], dict[int, int]] = {}
    for f in order.idempotents:
        for e in order.idempotents:
            if not order.le(e, f):
                continue
            phi = {}
            for x in groups[f]:
                y = S.mul(e, x)
                if S.mul(x, e) != y:
                    raise InternalInconsistency(
                        f"e*x != x*e for central idempotent {e}, x={x}"
                    )
                if y not in groups[e]:
                    raise InternalInconsistency(
                        f"phi_({f},{e})({x}) = {y} lands outside G_{e}"
                    )
                phi[x] = y
            for x in groups[f]:
                for y in groups[f]:
                    if phi[S.mul(x, y)] != S.mul(phi[x], phi[y]):
                        raise InternalInconsistency(
                            f"phi_({f},{e}) not a homomorphism at ({x},{y})"
                        )
            bonding[(f, e)] = phi
    for e in order.idempotents:
        for x in groups[e]:
            if bonding[(e, e)][x] != x:
                raise InternalInconsistency(f"phi_({e},{e}) not the identity")
    for e in order.idempotents:
        for f in order.idempotents:
            for g in order.idempotents:
                if order.le(e, f) and order.le(f, g):
                    for x in groups[g]:
                        if bonding[(g, e)][x] != bonding[(f, e)][bonding[(g, f)][x]]:
                            raise InternalInconsistency(
                                f"bonding composition fails on chain ({e},{f},{g})"
                            )
    return CliffordDecomposition(groups=groups, bonding=bonding, order=order)


def green_j_classes(S: FiniteSemigroup) -> list[tuple[int, ...]]:
    """Partition by equality of principal two-sided ideals S^1 x S^1.

    Direct O(n^3) ideal-set construction; classes are returned sorted by
    their least element."""
    ideals = []
    for x in S.elements():
        ideal = {x}
        ideal.update(S.mul(s, x) for s in S.elements())
        ideal.update(S.mul(x, t) for t in S.elements())
        for s in S.elements():
            sx = S.mul(s, x)
            ideal.update(S.mul(sx, t) for t in S.elements())
        ideals.append(frozenset(ideal))
    classes: dict[frozenset, list[int]] = {}
    for x, ideal in enumerate(ideals):
        classes.setdefault(ideal, []).append(x)
    return sorted((tuple(sorted(c)) for c in classes.values()), key=lambda c: c[0])


def element_signature(S: FiniteSemigroup, x: int) -> tuple[int, int, bool]:
    """(index, period) of the monogenic subsemigroup of x, plus idempotency.

    Isomorphism-invariant; used for search pruning."""
    seen = {}
    cur = x
    k = 0
    while cur not in seen:
        seen[cur] = k
        cur = S.mul(cur, x)
        k += 1
    first = seen[cur]
    return (first, k - first, S.mul(x, x) == x)


def local_group_table(S: FiniteSemigroup, elements) -> FiniteSemigroup:
    """Reindex a subgroup (given by global indices) to a standalone table."""
    elements = tuple(elements)
    pos = {g: i for i, g in enumerate(elements)}
    table = tuple(
        tuple(pos[S.mul(a, b)] for b in elements) for a in elements
    )
    labels = tuple(S.label(g) for g in elements)
    return FiniteSemigroup(table, labels)


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1):
        self.used += amount
        if self.used > self.limit:
            raise SearchBudgetExceeded(f"search budget {self.limit} exceeded")


def group_isomorphisms(G: FiniteSemigroup, H: FiniteSemigroup, budget: _Budget):
    """Yield all isomorphisms G -> H (as index tuples) by backtracking.

    Prunes on element signatures; assumes both tables are groups."""
    if G.n != H.n:
        return
    sig_g = [element_signature(G, x) for x in G.elements()]
    sig_h = [element_signature(H, x) for x in H.elements()]
    if sorted(sig_g) != sorted(sig_h):
        return
    n = G.n
    mapping = [-1] * n
    used = [False] * n

    def extend(x):
        if x == n:
            yield tuple(mapping)
            return
        for u in range(n):
            if used[u] or sig_h[u] != sig_g[x]:
                continue
            budget.spend()
            mapping[x] = u
            used[u] = True
            ok = True
            for y in range(x + 1):
                v = mapping[y]
                im_xy = mapping[G.mul(x, y)]
                if im_xy != -1 and im_xy != H.mul(u, v):
                    ok = False
                    break
                im_yx = mapping[G.mul(y, x)]
                if im_yx != -1 and im_yx != H.mul(v, u):
                    ok = False
                    break
            if ok:
                # products of earlier pairs landing on x become checkable now
                for a in range(x):
                    for b in range(x):
                        if G.mul(a, b) == x and H.mul(mapping[a], mapping[b]) != u:
                            ok = False
                            break
                    if not ok:
                        break
            if ok:
                yield from extend(x + 1)
            mapping[x] = -1
            used[u] = False

    yield from extend(0)


def is_trivial_clifford(S: FiniteSemigroup, budget: int = 500_000):
    """Search for isomorphisms theta_e: G_e -> G_ref exhibiting every bonding
    map as theta_e^-1 o theta_f, i.e. S as a semilattice-group direct product.

    Returns {e: theta_e} on success (theta_e maps global indices of G_e to
    global indices of the reference group), None when no family exists.
    The search is exhaustive within the budget; exceeding it raises
    SearchBudgetExceeded rather than guessing.
    """
    dec = bonding_maps(S)
    E = dec.order.idempotents
    ref = max(E, key=lambda e: (len(dec.groups[e]), -e))
    if any(len(dec.groups[e]) != len(dec.groups[ref]) for e in E):
        return None
    bud = _Budget(budget)
    locals_ = {e: local_group_table(S, dec.groups[e]) for e in E}
    ref_table = locals_[ref]
    iso_lists = {}
    for e in E:
        isos = list(group_isomorphisms(locals_[e], ref_table, bud))
        if not isos:
            return None
        iso_lists[e] = isos

    order_e = list(E)
    chosen: dict[int, tuple[int, ...]] = {}

    def global_theta(e, iso):
        # iso: local G_e index -> local ref index; lift to global indices
        ge = dec.groups[e]
        gr = dec.groups[ref]
        return {ge[i]: gr[iso[i]] for i in range(len(ge))}

    def compatible(e, th_e, f, th_f):
        # check phi = theta_lo^-1 o theta_hi on the comparable pair
        for lo, hi in ((e, f), (f, e)):
            if not dec.order.le(lo, hi):
                continue
            th_lo = th_e if lo == e else th_f
            th_hi = th_f if lo == e else th_e
            inv_lo = {v: k for k, v in th_lo.items()}
            for x in dec.groups[hi]:
                if dec.bonding[(hi, lo)][x] != inv_lo[th_hi[x]]:
                    return False
        return True

    def search(i):
        if i == len(order_e):
            return {e: dict(chosen[e]) for e in order_e}
        e = order_e[i]
        if e == ref:
            # Fixing theta_ref = id is no loss: the condition is invariant
            # under composing every theta_e with a common automorphism.
            candidates = [tuple(range(len(dec.groups[ref])))]
        else:
            candidates = iso_lists[e]
        for iso in candidates:
            bud.spend()
            th = global_theta(e, iso)
            if all(compatible(e, th, f, chosen[f]) for f in order_e[:i]):
                chosen[e] = th
                out = search(i + 1)
                if out is not None:
                    return out
                del chosen[e]
        return None

    family = search(0)
    if family is None:
        return None
    # A positive answer must mean S is isomorphic to E(S) x G_ref.
    from .semilattice import direct_product, iso_equivalent, semilattice_of_idempotents

    E_table = semilattice_of_idempotents(S)
    prod = direct_product(E_table, ref_table)
    if iso_equivalent(prod.semigroup, S, budget=budget) is None:
        raise InternalInconsistency(
            "trivial-Clifford family found but product not isomorphic to S"
        )
    return family
