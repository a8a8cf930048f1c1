"""Built-in example catalog: small semigroups of every flavor the workbench
cares about (groups, semilattices, assembled strong semilattices, one
non-Clifford inverse semigroup, non-inverse examples) plus the spec catalog
used by round-trip and metric suites.

Everything is constructed deterministically; catalog order is fixed.
"""

from __future__ import annotations

import itertools

from .core import FiniteSemigroup, validate_semigroup
from .semilattice import (
    StrongSemilatticeSpec,
    assemble,
    direct_product,
    validate_spec,
)


def cyclic_group(n: int) -> FiniteSemigroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = [f"g{i}" for i in range(n)]
    return validate_semigroup(table, labels)


def klein_four() -> FiniteSemigroup:
    table = [[i ^ j for j in range(4)] for i in range(4)]
    return validate_semigroup(table, ["e", "a", "b", "ab"])


def symmetric_group_3() -> FiniteSemigroup:
    perms = sorted(itertools.permutations(range(3)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [
        [pos[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms
    ]
    labels = ["".join(str(x) for x in p) for p in perms]
    return validate_semigroup(table, labels)


def chain_semilattice(n: int) -> FiniteSemigroup:
    """The n-chain 0 < 1 < ... < n-1 under min."""
    table = [[min(i, j) for j in range(n)] for i in range(n)]
    return validate_semigroup(table, [f"e{i}" for i in range(n)])


def diamond_semilattice() -> FiniteSemigroup:
    """Bottom 0, incomparable atoms 1 and 2, top 3; meet of the atoms is 0."""
    meet = {
        (1, 2): 0, (2, 1): 0,
        (1, 3): 1, (3, 1): 1,
        (2, 3): 2, (3, 2): 2,
    }
    table = [
        [meet.get((i, j), min(i, j)) if i != j else i for j in range(4)]
        for i in range(4)
    ]
    return validate_semigroup(table, ["bot", "a", "b", "top"])


def flat_semilattice(atoms: int) -> FiniteSemigroup:
    """Bottom 0 and `atoms` pairwise-incomparable elements; x*y = 0 off the
    diagonal."""
    n = atoms + 1
    table = [[i if i == j else 0 for j in range(n)] for i in range(n)]
    return validate_semigroup(table, ["bot"] + [f"a{i}" for i in range(1, n)])


def left_zero(n: int) -> FiniteSemigroup:
    return validate_semigroup([[i] * n for i in range(n)])


def right_zero(n: int) -> FiniteSemigroup:
    return validate_semigroup([list(range(n)) for _ in range(n)])


def null_semigroup(n: int) -> FiniteSemigroup:
    """xy = 0 for all x, y."""
    return validate_semigroup([[0] * n for _ in range(n)])


def brandt_b2() -> FiniteSemigroup:
    """The five-element Brandt semigroup of 2x2 matrix units with zero:
    inverse but not Clifford (the idempotents e11, e22 are not central)."""
    # elements: 0 -> zero, 1 -> e11, 2 -> e12, 3 -> e21, 4 -> e22
    unit = {1: (0, 0), 2: (0, 1), 3: (1, 0), 4: (1, 1)}
    back = {v: k for k, v in unit.items()}
    table = []
    for x in range(5):
        row = []
        for y in range(5):
            if x == 0 or y == 0:
                row.append(0)
            else:
                (i, j), (k, l) = unit[x], unit[y]
                row.append(back[(i, l)] if j == k else 0)
        table.append(row)
    return validate_semigroup(table, ["0", "e11", "e12", "e21", "e22"])


TRIVIAL_GROUP = cyclic_group(1)


def _mod_bonding(n_from: int, n_to: int) -> tuple[int, ...]:
    return tuple(i % n_to for i in range(n_from))


def _collapse_bonding(n_from: int) -> tuple[int, ...]:
    return tuple(0 for _ in range(n_from))


def spec_catalog() -> dict[str, StrongSemilatticeSpec]:
    """Strong-semilattice specs with |E| <= 5 and |G_e| <= 6."""
    z2, z3, z4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)
    chain2 = chain_semilattice(2)
    chain3 = chain_semilattice(3)
    out = {}
    out["chain2-z2-trivial"] = validate_spec(
        chain2, {0: TRIVIAL_GROUP, 1: z2}, {(1, 0): _collapse_bonding(2)}
    )
    out["chain2-z4-z2-mod"] = validate_spec(
        chain2, {0: z2, 1: z4}, {(1, 0): _mod_bonding(4, 2)}
    )
    out["chain2-z2-z2-identity"] = validate_spec(
        chain2, {0: z2, 1: z2}, {(1, 0): (0, 1)}
    )
    out["chain2-z2-z2-collapse"] = validate_spec(
        chain2, {0: z2, 1: z2}, {(1, 0): _collapse_bonding(2)}
    )
    out["chain3-z4-z4-z2"] = validate_spec(
        chain3,
        {0: z2, 1: z4, 2: z4},
        {
            (2, 1): (0, 1, 2, 3),
            (1, 0): _mod_bonding(4, 2),
            (2, 0): _mod_bonding(4, 2),
        },
    )
    out["diamond-mixed"] = validate_spec(
        diamond_semilattice(),
        {0: z2, 1: z2, 2: TRIVIAL_GROUP, 3: z2},
        {
            (3, 1): _collapse_bonding(2),
            (3, 2): _collapse_bonding(2),
            (1, 0): (0, 1),
            (2, 0): _collapse_bonding(1),
            (3, 0): _collapse_bonding(2),
        },
    )
    out["flat2-z3-z2"] = validate_spec(
        flat_semilattice(2),
        {0: TRIVIAL_GROUP, 1: z3, 2: z2},
        {(1, 0): _collapse_bonding(3), (2, 0): _collapse_bonding(2)},
    )
    out["point-s3"] = validate_spec(
        chain_semilattice(1), {0: symmetric_group_3()}, {}
    )
    out["chain3-all-trivial"] = validate_spec(
        chain3,
        {0: TRIVIAL_GROUP, 1: TRIVIAL_GROUP, 2: TRIVIAL_GROUP},
        {(1, 0): (0,), (2, 0): (0,), (2, 1): (0,)},
    )
    return out


def semigroup_catalog() -> dict[str, FiniteSemigroup]:
    """The built-in Cayley-table catalog (all orders <= 12)."""
    out = {
        "trivial": TRIVIAL_GROUP,
        "z2": cyclic_group(2),
        "z3": cyclic_group(3),
        "z4": cyclic_group(4),
        "z6": cyclic_group(6),
        "klein4": klein_four(),
        "s3": symmetric_group_3(),
        "chain2": chain_semilattice(2),
        "chain3": chain_semilattice(3),
        "diamond": diamond_semilattice(),
        "flat3": flat_semilattice(3),
        "left-zero2": left_zero(2),
        "right-zero2": right_zero(2),
        "null3": null_semigroup(3),
        "brandt-b2": brandt_b2(),
        "chain2-x-z2": direct_product(chain_semilattice(2),
                                      cyclic_group(2)).semigroup,
        "chain2-x-z3": direct_product(chain_semilattice(2),
                                      cyclic_group(3)).semigroup,
    }
    for name, spec in spec_catalog().items():
        out[f"assembled-{name}"] = assemble(spec).semigroup
    return out
