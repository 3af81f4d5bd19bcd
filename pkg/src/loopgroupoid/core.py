"""Finite groups, right actions and finite groupoids as explicit tables.

Conventions used throughout the package:

* ``table[a][b]`` is the product ``a·b`` and means "a then b".  For
  permutation groups ``(p·q)[i] = q[p[i]]``.
* Actions are right actions, ``action[g][x] = x·g`` with
  ``x·(gh) = (x·g)·h``.
* In a groupoid ``compose[(a, b)]`` is defined when ``target[a] == source[b]``
  and the composite runs from ``source[a]`` to ``target[b]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    InvalidAction,
    NoIdentity,
    NoInverse,
    NonAssociative,
    NotLatinSquare,
    OrderCapExceeded,
    ValidationError,
)

DEFAULT_ORDER_CAP = 10080
DEFAULT_POINTS_CAP = 4096
# Above this order associativity is decided by Light's test on a generating
# set instead of the full n^3 sweep.
EXHAUSTIVE_ASSOCIATIVITY_LIMIT = 64


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``elements`` holds optional labels (permutations, tuples, or indices into
    an ambient structure for subgroups and isotropy groups).  Labels take no
    part in equality.
    """

    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    elements: tuple | None = None

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, h: int) -> int:
        """``h⁻¹ g h``."""
        t = self.table
        return t[t[self.inverse[h]][g]][h]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        result = self.identity
        for _ in range(k):
            result = self.table[result][a]
        return result

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, a: int) -> int:
        return self.element_orders[a]

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.element_orders)

    def is_abelian(self) -> bool:
        t = np.asarray(self.table)
        return bool((t == t.T).all())

    def label(self, a: int):
        return a if self.elements is None else self.elements[a]

    def index_of(self, label) -> int:
        if self.elements is None:
            return int(label)
        return self._label_index[label]

    @cached_property
    def _label_index(self):
        return {lab: i for i, lab in enumerate(self.elements)}


def _right_closure(table, gens: Sequence[int], seen: set) -> None:
    queue = deque(seen)
    while queue:
        z = queue.popleft()
        for g in gens:
            w = table[z][g]
            if w not in seen:
                seen.add(w)
                queue.append(w)


def generating_set(table, identity: int) -> list[int]:
    """Greedy generating set: least element not yet reached, repeatedly."""
    n = len(table)
    gens: list[int] = []
    seen = {identity}
    while len(seen) < n:
        g = min(set(range(n)) - seen)
        gens.append(g)
        _right_closure(table, gens, seen)
    return gens


def _find_associativity_violation(t: np.ndarray, identity: int):
    n = t.shape[0]
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT:
        lhs = t[t]  # lhs[a, b, c] = (ab)c
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]  # a(bc)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            return tuple(int(v) for v in bad[0])
        return None
    # Light's test: associativity for all (x, y, g) with g in a generating set
    # of the loop implies associativity everywhere.
    for g in generating_set(t.tolist(), identity):
        lhs = t[:, g][t]
        rhs = t[:, t[:, g]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b = bad[0]
            return int(a), int(b), int(g)
    return None


def _as_index_square(table) -> tuple[tuple[int, ...], ...]:
    try:
        rows = tuple(tuple(int(v) for v in row) for row in table)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"table is not a matrix of integers: {exc}")
    n = len(rows)
    if n == 0:
        raise ValidationError("table is empty")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValidationError(f"table is not square: row {i} has length {len(row)}", witness=i)
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise ValidationError(f"entry ({i}, {j}) = {v} out of range", witness=(i, j))
    return rows


def build_group_from_table(table, elements=None, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Validate a multiplication table and locate identity and inverses.

    Raises ``NoIdentity``, ``NoInverse``, ``NotLatinSquare`` or
    ``NonAssociative`` with the offending element or triple as ``witness``.
    """
    rows = _as_index_square(table)
    n = len(rows)
    if n > cap:
        raise OrderCapExceeded(f"group order {n} exceeds cap {cap}")
    t = np.asarray(rows, dtype=np.int64)
    ar = np.arange(n)

    ids = [e for e in range(n) if (t[e] == ar).all() and (t[:, e] == ar).all()]
    if not ids:
        raise NoIdentity("no two-sided identity element")
    e = ids[0]

    inverse = []
    for a in range(n):
        cands = np.flatnonzero((t[a] == e) & (t[:, a] == e))
        if len(cands) == 0:
            raise NoInverse(f"element {a} has no two-sided inverse", witness=a)
        inverse.append(int(cands[0]))

    for i in range(n):
        if len(set(rows[i])) != n:
            raise NotLatinSquare(f"row {i} repeats an entry", witness=("row", i))
        if len(set(t[:, i].tolist())) != n:
            raise NotLatinSquare(f"column {i} repeats an entry", witness=("column", i))

    bad = _find_associativity_violation(t, e)
    if bad is not None:
        raise NonAssociative(f"(a·b)·c != a·(b·c) for (a, b, c) = {bad}", witness=bad)

    if elements is not None:
        elements = tuple(elements)
        if len(elements) != n:
            raise ValidationError("labels do not match the order of the group")
    return FiniteGroup(rows, e, tuple(inverse), elements)


def _check_permutation(p, degree: int, what: str) -> tuple[int, ...]:
    try:
        p = tuple(int(v) for v in p)
    except (TypeError, ValueError):
        raise ValidationError(f"{what} is not a list of integers", witness=what)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise ValidationError(f"{what} is not a permutation of 0..{degree - 1}", witness=p)
    return p


def build_group_from_permutations(degree: int, generators, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close a set of permutations under composition.

    Elements are numbered in breadth-first discovery order from the identity
    and labelled by their image tuples.  ``OrderCapExceeded`` is raised as
    soon as more than ``cap`` elements have been found.
    """
    if degree < 1:
        raise ValidationError("degree must be positive")
    gens = [_check_permutation(g, degree, f"generator {i}") for i, g in enumerate(generators)]
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        z = queue.popleft()
        for g in gens:
            w = tuple(g[i] for i in z)
            if w not in index:
                index[w] = len(elements)
                elements.append(w)
                if len(elements) > cap:
                    raise OrderCapExceeded(f"generated group exceeds order cap {cap}")
                queue.append(w)
    perms = np.asarray(elements, dtype=np.int64)
    n = len(elements)
    byte_index = {row.tobytes(): i for i, row in enumerate(perms)}
    table = []
    for a in range(n):
        prods = perms[:, perms[a]]  # row b is (a·b)
        table.append(tuple(byte_index[row.tobytes()] for row in prods))
    return build_group_from_table(table, elements=elements, cap=cap)


def subgroup(G: FiniteGroup, members: Sequence[int]) -> FiniteGroup:
    """The subgroup on ``members`` (sorted), labelled by indices into ``G``."""
    members = sorted(set(int(m) for m in members))
    pos = {m: i for i, m in enumerate(members)}
    try:
        table = [[pos[G.table[a][b]] for b in members] for a in members]
    except KeyError:
        raise ValidationError("members are not closed under multiplication")
    return build_group_from_table(table, elements=members)


# ---------------------------------------------------------------------------
# actions


@dataclass(frozen=True)
class GAction:
    """A right action; ``action[g][x] = x·g``."""

    group: FiniteGroup
    points: int
    action: tuple[tuple[int, ...], ...]

    def act(self, x: int, g: int) -> int:
        return self.action[g][x]

    def fixed_points(self, g: int) -> tuple[int, ...]:
        row = self.action[g]
        return tuple(x for x in range(self.points) if row[x] == x)

    def orbits(self) -> list[tuple[int, ...]]:
        seen = [False] * self.points
        out = []
        for x in range(self.points):
            if seen[x]:
                continue
            orbit = sorted({row[x] for row in self.action})
            for y in orbit:
                seen[y] = True
            out.append(tuple(orbit))
        return out


def build_action(group: FiniteGroup, action, cap_points: int = DEFAULT_POINTS_CAP) -> GAction:
    """Validate a full action table (one permutation per group element)."""
    n = group.order
    rows = tuple(tuple(int(v) for v in row) for row in action)
    if len(rows) != n:
        raise InvalidAction(f"expected {n} permutations, got {len(rows)}")
    points = len(rows[0])
    if points < 1:
        raise InvalidAction("an action needs at least one point")
    if points > cap_points:
        raise CapExceeded(f"{points} points exceed cap {cap_points}")
    for g, row in enumerate(rows):
        _check_permutation(row, points, f"action of element {g}")
    a = np.asarray(rows, dtype=np.int64)
    if not (a[group.identity] == np.arange(points)).all():
        raise InvalidAction("the identity does not act trivially", witness=group.identity)
    t = np.asarray(group.table, dtype=np.int64)
    for g in range(n):
        lhs = a[t[g]]  # row h: x·(gh)
        rhs = a[:, a[g]]  # row h: (x·g)·h
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            h, x = (int(v) for v in bad[0])
            raise InvalidAction(
                f"x·(gh) != (x·g)·h for g={g}, h={h}, x={x}", witness=(g, h, x)
            )
    return GAction(group, points, rows)


def action_from_generator_images(
    group: FiniteGroup, points: int, images: Mapping[int, Sequence[int]], cap_points: int = DEFAULT_POINTS_CAP
) -> GAction:
    """Extend images of generating elements to a full right action."""
    if points > cap_points:
        raise CapExceeded(f"{points} points exceed cap {cap_points}")
    imgs = {int(g): _check_permutation(p, points, f"image of {g}") for g, p in images.items()}
    for g in imgs:
        if not 0 <= g < group.order:
            raise InvalidAction(f"element {g} is not in the group", witness=g)
    table: dict[int, tuple[int, ...]] = {group.identity: tuple(range(points))}
    queue = deque([group.identity])
    while queue:
        z = queue.popleft()
        pz = table[z]
        for g, pg in imgs.items():
            w = group.table[z][g]
            pw = tuple(pg[x] for x in pz)
            if w in table:
                if table[w] != pw:
                    raise InvalidAction(
                        f"images are inconsistent at element {w}: not a homomorphism", witness=w
                    )
            else:
                table[w] = pw
                queue.append(w)
    if len(table) != group.order:
        missing = min(set(range(group.order)) - set(table))
        raise InvalidAction(f"given elements do not generate the group (missing {missing})", witness=missing)
    return build_action(group, [table[g] for g in range(group.order)], cap_points)


# ---------------------------------------------------------------------------
# groupoids


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    """A finite groupoid with all structure maps tabulated.

    ``group`` and ``arrow_group_elements`` are constructor metadata: when the
    groupoid is a delooping or an action groupoid they record the group and
    the group element carried by every arrow.
    """

    num_objects: int
    source: tuple[int, ...]
    target: tuple[int, ...]
    identity: tuple[int, ...]
    inverse: tuple[int, ...]
    compose: Mapping[tuple[int, int], int]
    object_labels: tuple | None = None
    arrow_labels: tuple | None = None
    group: FiniteGroup | None = None
    arrow_group_elements: tuple[int, ...] | None = None

    def __post_init__(self):
        n, m = self.num_objects, len(self.source)
        if n < 0:
            raise ValidationError("negative object count")
        if len(self.target) != m or len(self.inverse) != m:
            raise ValidationError("source, target and inverse must have one entry per arrow")
        if len(self.identity) != n:
            raise ValidationError("identity must have one entry per object")
        if any(not 0 <= x < n for x in self.source + self.target):
            raise ValidationError("source/target entry out of range")
        if any(not 0 <= a < m for a in self.identity + self.inverse):
            raise ValidationError("identity/inverse entry out of range")
        for (a, b), c in self.compose.items():
            if not (0 <= a < m and 0 <= b < m and 0 <= c < m):
                raise ValidationError(f"compose entry ({a}, {b}) -> {c} out of range", witness=(a, b))

    @property
    def num_arrows(self) -> int:
        return len(self.source)

    def __eq__(self, other):
        if not isinstance(other, FiniteGroupoid):
            return NotImplemented
        return (
            self.num_objects == other.num_objects
            and self.source == other.source
            and self.target == other.target
            and self.identity == other.identity
            and self.inverse == other.inverse
            and dict(self.compose) == dict(other.compose)
        )

    __hash__ = None

    def __repr__(self):
        return f"FiniteGroupoid(objects={self.num_objects}, arrows={self.num_arrows})"

    def mul(self, a: int, b: int) -> int:
        return self.compose[(a, b)]

    @cached_property
    def arrows_from(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_objects)]
        for a, x in enumerate(self.source):
            out[x].append(a)
        return tuple(tuple(r) for r in out)

    @cached_property
    def hom(self) -> dict[tuple[int, int], tuple[int, ...]]:
        sets: dict[tuple[int, int], list[int]] = {}
        for a in range(self.num_arrows):
            sets.setdefault((self.source[a], self.target[a]), []).append(a)
        return {k: tuple(v) for k, v in sets.items()}

    def loops_at(self, x: int) -> tuple[int, ...]:
        return self.hom.get((x, x), ())


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def summary(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(v.message for v in self.violations[:10])


def validate_groupoid(K: FiniteGroupoid) -> ValidationReport:
    """Check every groupoid axiom exhaustively; violations carry witnesses."""
    out: list[Violation] = []
    s, t, e, inv, comp = K.source, K.target, K.identity, K.inverse, K.compose

    def bad(kind, witness, message):
        out.append(Violation(kind, tuple(witness), message))

    for x in range(K.num_objects):
        if s[e[x]] != x or t[e[x]] != x:
            bad("identity_endpoints", (x,), f"identity arrow of object {x} is not a loop at {x}")

    for (a, b), c in comp.items():
        if t[a] != s[b]:
            bad("compose_not_composable", (a, b), f"compose defined on non-composable pair ({a}, {b})")
            continue
        if s[c] != s[a] or t[c] != t[b]:
            bad("compose_endpoints", (a, b), f"composite of ({a}, {b}) has wrong endpoints")
    for a in range(K.num_arrows):
        for b in K.arrows_from[t[a]]:
            if (a, b) not in comp:
                bad("compose_missing", (a, b), f"composable pair ({a}, {b}) has no composite")

    for a in range(K.num_arrows):
        if comp.get((e[s[a]], a)) != a:
            bad("left_unit", (a,), f"identity is not a left unit for arrow {a}")
        if comp.get((a, e[t[a]])) != a:
            bad("right_unit", (a,), f"identity is not a right unit for arrow {a}")
        i = inv[a]
        if s[i] != t[a] or t[i] != s[a]:
            bad("inverse_endpoints", (a,), f"inverse of arrow {a} has wrong endpoints")
        if comp.get((a, i)) != e[s[a]]:
            bad("right_inverse", (a,), f"a·inverse(a) is not the identity for arrow {a}")
        if comp.get((i, a)) != e[t[a]]:
            bad("left_inverse", (a,), f"inverse(a)·a is not the identity for arrow {a}")

    for (a, b), ab in comp.items():
        if t[a] != s[b]:
            continue
        for c in K.arrows_from[t[b]]:
            bc = comp.get((b, c))
            lhs = comp.get((ab, c))
            rhs = comp.get((a, bc)) if bc is not None else None
            if lhs is None or rhs is None:
                continue  # already reported as a missing composite
            if lhs != rhs:
                bad("associativity", (a, b, c), f"(a·b)·c != a·(b·c) for (a, b, c) = ({a}, {b}, {c})")
    return ValidationReport(tuple(out))


def delooping(G: FiniteGroup) -> FiniteGroupoid:
    """The one-object groupoid whose arrows are the elements of ``G``."""
    n = G.order
    comp = {(a, b): G.table[a][b] for a in range(n) for b in range(n)}
    return FiniteGroupoid(
        num_objects=1,
        source=(0,) * n,
        target=(0,) * n,
        identity=(G.identity,),
        inverse=G.inverse,
        compose=comp,
        object_labels=("*",),
        arrow_labels=tuple(range(n)),
        group=G,
        arrow_group_elements=tuple(range(n)),
    )


def action_groupoid(A: GAction) -> FiniteGroupoid:
    """``[X/G]``: the arrow ``(x, g)`` has index ``x·|G| + g`` and runs x -> x·g."""
    G, n, p = A.group, A.group.order, A.points
    act = A.action
    src, tgt, inv, glab, labels = [], [], [], [], []
    for x in range(p):
        for g in range(n):
            src.append(x)
            tgt.append(act[g][x])
            inv.append(act[g][x] * n + G.inverse[g])
            glab.append(g)
            labels.append((x, g))
    comp = {}
    for x in range(p):
        for g in range(n):
            y = act[g][x]
            for h in range(n):
                comp[(x * n + g, y * n + h)] = x * n + G.table[g][h]
    return FiniteGroupoid(
        num_objects=p,
        source=tuple(src),
        target=tuple(tgt),
        identity=tuple(x * n + G.identity for x in range(p)),
        inverse=tuple(inv),
        compose=comp,
        object_labels=tuple(range(p)),
        arrow_labels=tuple(labels),
        group=G,
        arrow_group_elements=tuple(glab),
    )


def connected_components(K: FiniteGroupoid) -> list[tuple[int, ...]]:
    """Components ordered by least object; objects sorted inside each."""
    parent = list(range(K.num_objects))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(K.num_arrows):
        rx, ry = find(K.source[a]), find(K.target[a])
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in range(K.num_objects):
        groups.setdefault(find(x), []).append(x)
    return sorted((tuple(v) for v in groups.values()), key=lambda c: c[0])


def isotropy(K: FiniteGroupoid, x: int) -> FiniteGroup:
    """The automorphism group of ``x``, labelled by arrow indices of ``K``."""
    if not 0 <= x < K.num_objects:
        raise ValidationError(f"object {x} out of range")
    loops = K.loops_at(x)
    pos = {a: i for i, a in enumerate(loops)}
    table = [[pos[K.compose[(a, b)]] for b in loops] for a in loops]
    return build_group_from_table(table, elements=loops)


class SkeletonEntry(NamedTuple):
    size: int
    isotropy: FiniteGroup
    objects: tuple[int, ...]


def skeleton(K: FiniteGroupoid) -> list[SkeletonEntry]:
    """One entry per component, isotropy at its least object.

    Sorted by component size, then isotropy order, then least object.
    """
    entries = [SkeletonEntry(len(c), isotropy(K, c[0]), c) for c in connected_components(K)]
    entries.sort(key=lambda s: (s.size, s.isotropy.order, s.objects[0]))
    return entries


def disjoint_union(parts: Sequence[FiniteGroupoid]) -> FiniteGroupoid:
    """Index-shifted union; labels become ``(part index, original label)``."""
    src, tgt, ide, inv, obj_lab, arr_lab = [], [], [], [], [], []
    comp = {}
    obj_off = arr_off = 0
    for k, P in enumerate(parts):
        src.extend(x + obj_off for x in P.source)
        tgt.extend(x + obj_off for x in P.target)
        ide.extend(a + arr_off for a in P.identity)
        inv.extend(a + arr_off for a in P.inverse)
        for (a, b), c in P.compose.items():
            comp[(a + arr_off, b + arr_off)] = c + arr_off
        olab = P.object_labels or tuple(range(P.num_objects))
        alab = P.arrow_labels or tuple(range(P.num_arrows))
        obj_lab.extend((k, v) for v in olab)
        arr_lab.extend((k, v) for v in alab)
        obj_off += P.num_objects
        arr_off += P.num_arrows
    return FiniteGroupoid(
        num_objects=obj_off,
        source=tuple(src),
        target=tuple(tgt),
        identity=tuple(ide),
        inverse=tuple(inv),
        compose=comp,
        object_labels=tuple(obj_lab),
        arrow_labels=tuple(arr_lab),
    )


def relabel_groupoid(K: FiniteGroupoid, object_perm: Sequence[int], arrow_perm: Sequence[int]) -> FiniteGroupoid:
    """Rename object ``x`` to ``object_perm[x]`` and arrow ``a`` to ``arrow_perm[a]``."""
    op, ap = list(object_perm), list(arrow_perm)
    if sorted(op) != list(range(K.num_objects)) or sorted(ap) != list(range(K.num_arrows)):
        raise ValidationError("relabelings must be permutations")
    m = K.num_arrows
    src, tgt, inv = [0] * m, [0] * m, [0] * m
    for a in range(m):
        src[ap[a]] = op[K.source[a]]
        tgt[ap[a]] = op[K.target[a]]
        inv[ap[a]] = ap[K.inverse[a]]
    ide = [0] * K.num_objects
    for x in range(K.num_objects):
        ide[op[x]] = ap[K.identity[x]]
    comp = {(ap[a], ap[b]): ap[c] for (a, b), c in K.compose.items()}
    glab = None
    if K.arrow_group_elements is not None:
        glab = [0] * m
        for a in range(m):
            glab[ap[a]] = K.arrow_group_elements[a]
        glab = tuple(glab)
    return FiniteGroupoid(
        K.num_objects, tuple(src), tuple(tgt), tuple(ide), tuple(inv), comp,
        group=K.group, arrow_group_elements=glab,
    )


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class GroupoidMorphism:
    domain: FiniteGroupoid
    codomain: FiniteGroupoid
    object_map: tuple[int, ...]
    arrow_map: tuple[int, ...]


def validate_morphism(F: GroupoidMorphism) -> ValidationReport:
    """Check that ``F`` commutes with source, target, identity, inverse and composition."""
    H, G = F.domain, F.codomain
    f0, f1 = F.object_map, F.arrow_map
    out: list[Violation] = []
    if len(f0) != H.num_objects or len(f1) != H.num_arrows:
        return ValidationReport((Violation("shape", (), "map lengths do not match the domain"),))
    if any(not 0 <= y < G.num_objects for y in f0) or any(not 0 <= b < G.num_arrows for b in f1):
        return ValidationReport((Violation("range", (), "map value outside the codomain"),))
    for a in range(H.num_arrows):
        if G.source[f1[a]] != f0[H.source[a]]:
            out.append(Violation("source", (a,), f"F does not commute with source at arrow {a}"))
        if G.target[f1[a]] != f0[H.target[a]]:
            out.append(Violation("target", (a,), f"F does not commute with target at arrow {a}"))
        if G.inverse[f1[a]] != f1[H.inverse[a]]:
            out.append(Violation("inverse", (a,), f"F does not commute with inverse at arrow {a}"))
    for x in range(H.num_objects):
        if f1[H.identity[x]] != G.identity[f0[x]]:
            out.append(Violation("identity", (x,), f"F does not preserve the identity of object {x}"))
    for (a, b), c in H.compose.items():
        if G.compose.get((f1[a], f1[b])) != f1[c]:
            out.append(Violation("compose", (a, b), f"F does not preserve the composite of ({a}, {b})"))
    return ValidationReport(tuple(out))


def is_isomorphism(F: GroupoidMorphism) -> bool:
    return (
        validate_morphism(F).ok
        and sorted(F.object_map) == list(range(F.codomain.num_objects))
        and sorted(F.arrow_map) == list(range(F.codomain.num_arrows))
    )


def identity_morphism(K: FiniteGroupoid) -> GroupoidMorphism:
    return GroupoidMorphism(K, K, tuple(range(K.num_objects)), tuple(range(K.num_arrows)))


def compose_morphisms(F: GroupoidMorphism, G: GroupoidMorphism) -> GroupoidMorphism:
    """``F`` then ``G``."""
    if F.codomain is not G.domain and F.codomain != G.domain:
        raise ValidationError("morphisms are not composable")
    return GroupoidMorphism(
        F.domain,
        G.codomain,
        tuple(G.object_map[y] for y in F.object_map),
        tuple(G.arrow_map[b] for b in F.arrow_map),
    )
