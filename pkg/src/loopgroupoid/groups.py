"""Small catalog of groups and actions used by tests, demos and the CLI."""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .core import (
    FiniteGroup,
    GAction,
    build_action,
    build_group_from_permutations,
    build_group_from_table,
    subgroup,
)


def trivial_group() -> FiniteGroup:
    return build_group_from_table([[0]])


def cyclic(n: int) -> FiniteGroup:
    """ℤ/n with element k labelled k."""
    return build_group_from_table([[(a + b) % n for b in range(n)] for a in range(n)], elements=range(n))


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Element ``(g, h)`` has index ``g·|H| + h``; labels are pairs of factor labels."""
    m = H.order
    pairs = list(product(range(G.order), range(m)))
    table = [[G.table[g1][g2] * m + H.table[h1][h2] for g2, h2 in pairs] for g1, h1 in pairs]
    return build_group_from_table(table, elements=[(G.label(g), H.label(h)) for g, h in pairs])


def klein_four() -> FiniteGroup:
    """ℤ/2 × ℤ/2; index ``2·a1 + a2`` is the pair ``(a1, a2)``."""
    return direct_product(cyclic(2), cyclic(2))


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return build_group_from_permutations(1, [(0,)])
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return build_group_from_permutations(n, gens)


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return build_group_from_permutations(max(n, 1), [tuple(range(max(n, 1)))])
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0  # the 3-cycle (0 1 k)
        gens.append(tuple(p))
    return build_group_from_permutations(n, gens)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n, acting on its vertices."""
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return build_group_from_permutations(n, [rotation, reflection])


def quaternion() -> FiniteGroup:
    """Q₈ via its right regular representation on ±1, ±i, ±j, ±k."""
    # unit quaternions as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    basis = [(s, a) for a in range(4) for s in (1, -1)]
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def qmul(p, q):
        s, a = unit_mul[(p[1], q[1])]
        return (p[0] * q[0] * s, a)

    pos = {q: i for i, q in enumerate(basis)}
    gens = [tuple(pos[qmul(x, g)] for x in basis) for g in [(1, 1), (1, 2)]]
    return build_group_from_permutations(8, gens)


def relabel_group(G: FiniteGroup, perm: Sequence[int]) -> FiniteGroup:
    """The same group with element ``a`` renamed ``perm[a]``."""
    n = G.order
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            table[perm[a]][perm[b]] = perm[G.table[a][b]]
    labels = [None] * n
    for a in range(n):
        labels[perm[a]] = G.label(a)
    return build_group_from_table(table, elements=labels)


# ---------------------------------------------------------------------------
# actions


def trivial_action(G: FiniteGroup, points: int = 1) -> GAction:
    return build_action(G, [tuple(range(points))] * G.order)


def right_translation_action(G: FiniteGroup) -> GAction:
    """``x·g = xg``: free and transitive."""
    n = G.order
    return build_action(G, [tuple(G.table[x][g] for x in range(n)) for g in range(n)])


def conjugation_action(G: FiniteGroup) -> GAction:
    """``x·g = g⁻¹xg``."""
    n = G.order
    return build_action(G, [tuple(G.conj(x, g) for x in range(n)) for g in range(n)])


def natural_action(G: FiniteGroup) -> GAction:
    """A permutation group acting on its points by ``x·p = p[x]``."""
    if G.elements is None or not isinstance(G.elements[0], tuple):
        raise ValueError("natural_action needs a group labelled by permutations")
    degree = len(G.elements[0])
    return build_action(G, [tuple(p[x] for x in range(degree)) for p in G.elements])


def coset_action(G: FiniteGroup, members: Sequence[int]) -> GAction:
    """Right action on the right cosets ``Hx`` of the subgroup on ``members``."""
    H = subgroup(G, members)
    hs = H.elements
    cosets: list[frozenset] = []
    index = {}
    for x in range(G.order):
        if x in index:
            continue
        c = frozenset(G.table[h][x] for h in hs)
        for y in c:
            index[y] = len(cosets)
        cosets.append(c)
    reps = [min(c) for c in cosets]
    table = [tuple(index[G.table[r][g]] for r in reps) for g in range(G.order)]
    return build_action(G, table)


def action_sum(actions: Sequence[GAction]) -> GAction:
    """Disjoint union of actions of one group; points are shifted in order."""
    G = actions[0].group
    if any(A.group != G for A in actions):
        raise ValueError("all actions must be of the same group")
    rows = []
    for g in range(G.order):
        row, off = [], 0
        for A in actions:
            row.extend(off + y for y in A.action[g])
            off += A.points
        rows.append(tuple(row))
    return build_action(G, rows)


def swap_action() -> GAction:
    """ℤ/2 on {0, 1, 2} swapping 0 and 1 and fixing 2."""
    return build_action(cyclic(2), [(0, 1, 2), (1, 0, 2)])


def cycle_action(n: int) -> GAction:
    """ℤ/n rotating an n-cycle."""
    G = cyclic(n)
    return build_action(G, [tuple((x + g) % n for x in range(n)) for g in range(n)])


def all_subgroups(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Every subgroup as a sorted member tuple (by closure of element pairs)."""
    found = set()
    for a, b in product(range(G.order), repeat=2):
        members = {G.identity}
        frontier = [G.identity]
        while frontier:
            z = frontier.pop()
            for g in (a, b):
                w = G.table[z][g]
                if w not in members:
                    members.add(w)
                    frontier.append(w)
        found.add(tuple(sorted(members)))
    return sorted(found, key=lambda s: (len(s), s))


def small_groups() -> dict[str, FiniteGroup]:
    """Named groups of order at most 12 used across the test suite."""
    return {
        "C1": trivial_group(),
        "C2": cyclic(2),
        "C3": cyclic(3),
        "C4": cyclic(4),
        "V4": klein_four(),
        "C5": cyclic(5),
        "C6": cyclic(6),
        "S3": symmetric(3),
        "C7": cyclic(7),
        "C8": cyclic(8),
        "C2xC4": direct_product(cyclic(2), cyclic(4)),
        "C2^3": direct_product(klein_four(), cyclic(2)),
        "D4": dihedral(4),
        "Q8": quaternion(),
        "C9": cyclic(9),
        "C3xC3": direct_product(cyclic(3), cyclic(3)),
        "D5": dihedral(5),
        "C10": cyclic(10),
        "C12": cyclic(12),
        "C2xC6": direct_product(cyclic(2), cyclic(6)),
        "A4": alternating(4),
        "D6": dihedral(6),
    }

