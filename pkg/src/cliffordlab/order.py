"""Posets, the way-below relation, domain bases, Lawson-style basic sets,
and the truncated flat-semilattice model over exact rationals.

All order data is exact (integers and Fractions) so the metric machinery
downstream never sees rounded inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import FiniteSemigroup, is_semilattice
from .errors import NotSemilattice, TooLarge, WorkbenchError


@dataclass(frozen=True)
class FinitePoset:
    """A partial order on 0..n-1 as a boolean relation matrix."""

    leq: tuple[tuple[bool, ...], ...]

    @property
    def n(self) -> int:
        return len(self.leq)

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def elements(self) -> range:
        return range(self.n)

    def up(self, x: int) -> frozenset:
        return frozenset(y for y in self.elements() if self.le(x, y))

    def down(self, x: int) -> frozenset:
        return frozenset(y for y in self.elements() if self.le(y, x))

    def minimum(self) -> Optional[int]:
        for x in self.elements():
            if all(self.le(x, y) for y in self.elements()):
                return x
        return None

    def upper_bounds(self, subset) -> list[int]:
        return [u for u in self.elements() if all(self.le(x, u) for x in subset)]

    def sup(self, subset) -> Optional[int]:
        """Least upper bound of subset, or None if it does not exist."""
        ubs = self.upper_bounds(subset)
        least = [u for u in ubs if all(self.le(u, v) for v in ubs)]
        return least[0] if least else None

    def is_up_directed(self, subset) -> bool:
        subset = list(subset)
        if not subset:
            return False
        return all(
            any(self.le(x, d) and self.le(y, d) for d in subset)
            for x in subset
            for y in subset
        )


def validate_poset(leq) -> FinitePoset:
    rel = tuple(tuple(bool(v) for v in row) for row in leq)
    n = len(rel)
    if any(len(row) != n for row in rel):
        raise WorkbenchError("leq matrix is not square")
    for x in range(n):
        if not rel[x][x]:
            raise WorkbenchError(f"not reflexive at {x}")
        for y in range(n):
            if x != y and rel[x][y] and rel[y][x]:
                raise WorkbenchError(f"not antisymmetric at ({x},{y})")
            if rel[x][y]:
                for z in range(n):
                    if rel[y][z] and not rel[x][z]:
                        raise WorkbenchError(f"not transitive at ({x},{y},{z})")
    return FinitePoset(rel)


def way_below_by_definition(P: FinitePoset, x: int, y: int) -> bool:
    """x << y by direct enumeration: every nonempty up-directed subset D
    whose sup exists and dominates y must contain some d >= x.

    Exponential in |P|; refuses carriers above 12 elements."""
    if P.n > 12:
        raise TooLarge(f"definition-based way-below limited to 12, got {P.n}")
    elems = list(P.elements())
    for r in range(1, P.n + 1):
        for D in itertools.combinations(elems, r):
            if not P.is_up_directed(D):
                continue
            s = P.sup(D)
            if s is None or not P.le(y, s):
                continue
            if not any(P.le(x, d) for d in D):
                return False
    return True


@dataclass(frozen=True)
class WayBelowRelation:
    rel: tuple[tuple[bool, ...], ...]

    def wb(self, x: int, y: int) -> bool:
        return self.rel[x][y]


def way_below_all(P: FinitePoset) -> WayBelowRelation:
    """The full way-below matrix.  In a finite poset a directed set attains
    its supremum at its maximum element, so << coincides with <=."""
    rel = WayBelowRelation(P.leq)
    _check_way_below_invariants(P, rel)
    return rel


def _check_way_below_invariants(P: FinitePoset, rel: WayBelowRelation):
    for x in P.elements():
        for y in P.elements():
            if rel.wb(x, y) and not P.le(x, y):
                raise WorkbenchError(f"way-below not below at ({x},{y})")
    bottom = P.minimum()
    if bottom is not None:
        for y in P.elements():
            if not rel.wb(bottom, y):
                raise WorkbenchError(f"minimum not way-below {y}")


def is_basis(P: FinitePoset, B, rel: Optional[WayBelowRelation] = None):
    """Is B a domain basis: each B_x = {b in B : b << x} up-directed with
    sup x?  Returns (True, None) or (False, failing_x)."""
    if rel is None:
        rel = way_below_all(P)
    B = sorted(set(B))
    for x in P.elements():
        Bx = [b for b in B if rel.wb(b, x)]
        if not Bx or not P.is_up_directed(Bx) or P.sup(Bx) != x:
            return False, x
    return True, None


def lawson_basic(P: FinitePoset, x: int, F,
                 rel: Optional[WayBelowRelation] = None) -> frozenset:
    """The set (way-up of x) minus the upper set of F."""
    if rel is None:
        rel = way_below_all(P)
    out = {y for y in P.elements() if rel.wb(x, y)}
    for f in F:
        out -= P.up(f)
    return frozenset(out)


def minimum(S: FiniteSemigroup) -> int:
    """The minimum of a finite semilattice: the product of all elements.

    Verified to sit below every element in the natural order."""
    if not is_semilattice(S):
        raise NotSemilattice("minimum requires a semilattice")
    m = 0
    for x in S.elements():
        m = S.mul(m, x)
    for x in S.elements():
        if S.mul(m, x) != m:
            raise NotSemilattice(f"fold result {m} not below {x}")
    return m


def poset_of_semilattice(S: FiniteSemigroup) -> FinitePoset:
    """Natural order x <= y iff xy = x, as a poset on the same indices."""
    if not is_semilattice(S):
        raise NotSemilattice("expected a semilattice")
    rel = tuple(
        tuple(S.mul(x, y) == x for y in S.elements()) for x in S.elements()
    )
    return validate_poset(rel)


@dataclass(frozen=True)
class LazySemilatticeModel:
    """The flat semilattice {0} u {1/n : 1 <= n <= N} with exact rationals.

    meet(x, y) = x if x == y else 0; rho = |x - y|.  Way-below follows the
    flat order of the untruncated space (0 << x and x << x, nothing else),
    so truncations are consistent with the intended infinite model.
    Element i is points[i]; index 0 is the minimum 0, then 1, 1/2, ..., 1/N.
    """

    N: int
    points: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.points)

    def elements(self) -> range:
        return range(self.n)

    def meet(self, i: int, j: int) -> int:
        return i if i == j else 0

    def rho(self, i: int, j: int) -> Fraction:
        return abs(self.points[i] - self.points[j])

    def le(self, i: int, j: int) -> bool:
        return i == 0 or i == j

    def way_below(self, i: int, j: int) -> bool:
        return i == 0 or i == j

    def minimum(self) -> int:
        return 0

    def semigroup(self) -> FiniteSemigroup:
        table = tuple(
            tuple(self.meet(i, j) for j in self.elements()) for i in self.elements()
        )
        labels = tuple(str(p) for p in self.points)
        return FiniteSemigroup(table, labels)


def flat_model(N: int) -> LazySemilatticeModel:
    """The truncation {0, 1, 1/2, ..., 1/N} of the flat semilattice."""
    if N < 1:
        raise WorkbenchError("N must be >= 1")
    points = (Fraction(0),) + tuple(Fraction(1, k) for k in range(1, N + 1))
    return LazySemilatticeModel(N=N, points=points)
