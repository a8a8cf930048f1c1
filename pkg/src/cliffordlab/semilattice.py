"""Strong semilattices of groups: validation, assembly into a Cayley table,
decomposition of Clifford semigroups back into spec form, direct products,
injectivity of the bonding-tuple map, and isomorphism search.

A spec consists of a finite semilattice E, one group table per element of E,
and a bonding homomorphism G_f -> G_e for every comparable pair e <= f.
Bonding maps are stored as full lookup tables, never closures, so every law
is exhaustively checkable and specs serialize exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    FiniteSemigroup,
    _Budget,
    bonding_maps,
    classify,
    element_signature,
    idempotents,
    is_semilattice,
    local_group_table,
    validate_semigroup,
)
from .errors import (
    EmptyDirectedSet,
    FunctorLawViolated,
    IndexOutOfRange,
    InternalInconsistency,
    NotClifford,
    NotGroup,
    NotHomomorphism,
    NotSemilattice,
)


@dataclass(frozen=True)
class StrongSemilatticeSpec:
    """Semilattice E, groups G_e, and bonding tables phi[(f, e)] for e <= f.

    Group elements are local indices 0..|G_e|-1; phi[(f, e)][x] is the image
    in G_e of x in G_f.  The pair (e, e) is always present as the identity.
    """

    E: FiniteSemigroup
    groups: dict
    bonding: dict

    def le(self, e: int, f: int) -> bool:
        return self.E.mul(e, f) == e

    def phi(self, f: int, e: int, x: int) -> int:
        return self.bonding[(f, e)][x]


def _check_group(table: FiniteSemigroup, key) -> int:
    """Verify a validated semigroup is a group; return its identity index."""
    ident = None
    for e in table.elements():
        if all(table.mul(e, x) == x and table.mul(x, e) == x for x in table.elements()):
            ident = e
            break
    if ident is None:
        raise NotGroup(key, "no identity element")
    for x in table.elements():
        if not any(table.mul(x, y) == ident and table.mul(y, x) == ident
                   for y in table.elements()):
            raise NotGroup(key, f"element {x} has no inverse")
    return ident


def group_identity(table: FiniteSemigroup) -> int:
    return _check_group(table, "?")


def validate_spec(E, groups, bonding) -> StrongSemilatticeSpec:
    """Check all strong-semilattice laws exhaustively.

    E must be a semilattice; every groups[e] a group; every bonding entry a
    homomorphism with the right domain/codomain; and the family must satisfy
    phi_{e,e} = id and phi_{g,e} = phi_{f,e} o phi_{g,f} on all chains.
    """
    if not isinstance(E, FiniteSemigroup):
        E = validate_semigroup(E)
    if not is_semilattice(E):
        raise NotSemilattice("E is not a commutative idempotent semigroup")
    groups = {int(e): g if isinstance(g, FiniteSemigroup) else validate_semigroup(g)
              for e, g in groups.items()}
    if sorted(groups) != list(E.elements()):
        raise IndexOutOfRange(
            f"groups keyed by {sorted(groups)}, expected 0..{E.n - 1}"
        )
    for e, g in groups.items():
        _check_group(g, e)

    def le(e, f):
        return E.mul(e, f) == e

    full = {}
    for f in E.elements():
        for e in E.elements():
            if not le(e, f):
                continue
            if e == f:
                phi = bonding.get((f, e), tuple(range(groups[e].n)))
            else:
                if (f, e) not in bonding:
                    raise NotHomomorphism((f, e), "missing bonding map")
                phi = bonding[(f, e)]
            phi = tuple(phi[x] for x in range(groups[f].n)) if not isinstance(
                phi, tuple) else phi
            if len(phi) != groups[f].n:
                raise NotHomomorphism((f, e), f"domain size {len(phi)}")
            for x, y in enumerate(phi):
                if not (0 <= y < groups[e].n):
                    raise NotHomomorphism((f, e), f"image {y} outside G_{e}")
            for x in groups[f].elements():
                for y in groups[f].elements():
                    if phi[groups[f].mul(x, y)] != groups[e].mul(phi[x], phi[y]):
                        raise NotHomomorphism((f, e), witness=(x, y))
            full[(f, e)] = phi
    for (f, e) in bonding:
        if not le(e, f):
            raise NotHomomorphism((f, e), "bonding given for incomparable pair")
    for e in E.elements():
        if full[(e, e)] != tuple(range(groups[e].n)):
            raise FunctorLawViolated((e, e), "phi_{e,e} is not the identity")
    for e in E.elements():
        for f in E.elements():
            for g in E.elements():
                if le(e, f) and le(f, g):
                    for x in groups[g].elements():
                        if full[(g, e)][x] != full[(f, e)][full[(g, f)][x]]:
                            raise FunctorLawViolated(
                                (e, f, g), f"composition fails at x={x}"
                            )
    return StrongSemilatticeSpec(E=E, groups=groups, bonding=full)


@dataclass(frozen=True)
class Assembled:
    """A spec's Clifford semigroup with its deterministic carrier layout.

    Elements are numbered block by block in E-index order, then by local
    group index, so assembly is reproducible bit-for-bit.
    """

    semigroup: FiniteSemigroup
    spec: StrongSemilatticeSpec
    offsets: tuple[int, ...]

    def point(self, e: int, g: int) -> int:
        return self.offsets[e] + g

    def locate(self, i: int) -> tuple[int, int]:
        for e in reversed(range(len(self.offsets))):
            if i >= self.offsets[e]:
                return e, i - self.offsets[e]
        raise IndexOutOfRange(f"element {i} outside carrier")

    def block(self, e: int) -> range:
        size = self.spec.groups[e].n
        return range(self.offsets[e], self.offsets[e] + size)


def assemble(spec: StrongSemilatticeSpec) -> Assembled:
    """Build the Cayley table: for s in G_e and t in G_f, the product lives
    in G_{ef} and equals phi_{e,ef}(s) * phi_{f,ef}(t)."""
    E = spec.E
    offsets = []
    total = 0
    for e in E.elements():
        offsets.append(total)
        total += spec.groups[e].n
    offsets = tuple(offsets)

    def point(e, g):
        return offsets[e] + g

    table = [[0] * total for _ in range(total)]
    for e in E.elements():
        for f in E.elements():
            ef = E.mul(e, f)
            Gef = spec.groups[ef]
            for s in spec.groups[e].elements():
                ps = spec.phi(e, ef, s)
                for t in spec.groups[f].elements():
                    pt = spec.phi(f, ef, t)
                    table[point(e, s)][point(f, t)] = point(ef, Gef.mul(ps, pt))
    labels = []
    for e in E.elements():
        g = spec.groups[e]
        for x in g.elements():
            labels.append(f"{E.label(e)}:{g.label(x)}")
    S = validate_semigroup(table, labels)
    if not classify(S).is_clifford:
        raise InternalInconsistency("assembled semigroup is not Clifford")
    return Assembled(semigroup=S, spec=spec, offsets=offsets)


def semilattice_of_idempotents(S: FiniteSemigroup) -> FiniteSemigroup:
    """E(S) as a standalone table over the sorted idempotent list.

    Requires idempotents to be closed under multiplication (true in any
    Clifford semigroup)."""
    E = sorted(idempotents(S))
    pos = {e: i for i, e in enumerate(E)}
    table = []
    for e in E:
        row = []
        for f in E:
            m = S.mul(e, f)
            if m not in pos:
                raise NotSemilattice(f"{e}*{f} = {m} is not idempotent")
            row.append(pos[m])
        table.append(tuple(row))
    return FiniteSemigroup(tuple(table), tuple(S.label(e) for e in E))


def decompose(S: FiniteSemigroup) -> StrongSemilatticeSpec:
    """Extract the strong-semilattice data of a Clifford semigroup: E(S),
    the pi-fibers as groups, and multiplication-by-lower-idempotent as
    bonding.  assemble(decompose(S)) is isomorphic to S."""
    cls = classify(S)
    if not cls.is_clifford:
        raise NotClifford("decompose requires a Clifford semigroup")
    dec = bonding_maps(S)
    E_global = dec.order.idempotents
    pos_e = {e: i for i, e in enumerate(E_global)}
    E = semilattice_of_idempotents(S)
    groups = {}
    elem_pos = {}
    for e in E_global:
        members = dec.groups[e]
        groups[pos_e[e]] = local_group_table(S, members)
        elem_pos[e] = {g: i for i, g in enumerate(members)}
    bonding = {}
    for (f, e), phi in dec.bonding.items():
        if f == e:
            continue
        table = [0] * len(dec.groups[f])
        for x, y in phi.items():
            table[elem_pos[f][x]] = elem_pos[e][y]
        bonding[(pos_e[f], pos_e[e])] = tuple(table)
    return validate_spec(E, groups, bonding)


def direct_product(E: FiniteSemigroup, G: FiniteSemigroup) -> Assembled:
    """The trivial Clifford semigroup E x G with componentwise product,
    realized as the identity-bonding spec over E."""
    if not is_semilattice(E):
        raise NotSemilattice("first factor must be a semilattice")
    _check_group(G, "G")
    groups = {e: G for e in E.elements()}
    ident = tuple(range(G.n))
    bonding = {}
    for f in E.elements():
        for e in E.elements():
            if E.mul(e, f) == e and e != f:
                bonding[(f, e)] = ident
    spec = validate_spec(E, groups, bonding)
    return assemble(spec)


def eta_injectivity(spec: StrongSemilatticeSpec, e: int, D):
    """Is g -> (phi_{e,d}(g))_{d in D} injective on G_e?

    D must be a nonempty set of elements below e.  Returns (True, None) or
    (False, (g, h)) with a colliding pair: exactly the pairs no basis
    element of D can separate."""
    D = sorted(set(D))
    if not D:
        raise EmptyDirectedSet("D must be nonempty")
    for d in D:
        if not spec.le(d, e):
            raise IndexOutOfRange(f"{d} is not below {e}")
    seen = {}
    for g in spec.groups[e].elements():
        key = tuple(spec.phi(e, d, g) for d in D)
        if key in seen:
            return False, (seen[key], g)
        seen[key] = g
    return True, None


def iso_equivalent(S1: FiniteSemigroup, S2: FiniteSemigroup,
                   budget: int = 500_000) -> Optional[tuple[int, ...]]:
    """Find a multiplication-preserving bijection S1 -> S2 by backtracking,
    pruning on monogenic-subsemigroup signatures; None if none exists.

    Exceeding the node budget raises SearchBudgetExceeded."""
    if S1.n != S2.n:
        return None
    sig1 = [element_signature(S1, x) for x in S1.elements()]
    sig2 = [element_signature(S2, x) for x in S2.elements()]
    if sorted(sig1) != sorted(sig2):
        return None
    n = S1.n
    bud = _Budget(budget)
    mapping = [-1] * n
    used = [False] * n

    def extend(x):
        if x == n:
            return tuple(mapping)
        for u in range(n):
            if used[u] or sig2[u] != sig1[x]:
                continue
            bud.spend()
            mapping[x] = u
            used[u] = True
            ok = True
            for y in range(x + 1):
                v = mapping[y]
                im = mapping[S1.mul(x, y)]
                if im != -1 and im != S2.mul(u, v):
                    ok = False
                    break
                im = mapping[S1.mul(y, x)]
                if im != -1 and im != S2.mul(v, u):
                    ok = False
                    break
            if ok:
                # pairs of earlier elements whose product is x become
                # checkable only now
                for a in range(x):
                    for b in range(x):
                        if S1.mul(a, b) == x and \
                                S2.mul(mapping[a], mapping[b]) != u:
                            ok = False
                            break
                    if not ok:
                        break
            if ok:
                out = extend(x + 1)
                if out is not None:
                    return out
            mapping[x] = -1
            used[u] = False
        return None

    return extend(0)
