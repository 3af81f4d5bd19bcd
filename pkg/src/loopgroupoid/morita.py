"""Group isomorphism, Morita morphisms and Morita equivalence certificates.

A finite groupoid is equivalent to the disjoint union of the isotropy groups of
its components, so two finite groupoids are Morita equivalent exactly when
their components can be paired with isomorphic isotropy groups.  That is what
``morita_equivalent`` decides.  ``is_morita_morphism`` checks a given functor
against the cartesian-square definition directly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .core import (
    FiniteGroup,
    FiniteGroupoid,
    GroupoidMorphism,
    SkeletonEntry,
    connected_components,
    isotropy,
    validate_morphism,
)
from .errors import DecisionTimeout, ValidationError

DEFAULT_NODE_CAP = 1_000_000


def is_group_isomorphism(G: FiniteGroup, H: FiniteGroup, phi) -> bool:
    """Exhaustive check that ``phi`` (a sequence, ``phi[g]`` in H) is an isomorphism."""
    n = G.order
    if H.order != n or len(phi) != n or sorted(phi) != list(range(n)):
        return False
    gt, ht = G.table, H.table
    return all(phi[gt[a][b]] == ht[phi[a]][phi[b]] for a in range(n) for b in range(n))


def _minimal_generators(G: FiniteGroup) -> list[int]:
    # Greedy: repeatedly adjoin an element of largest order outside the
    # subgroup generated so far.
    gens: list[int] = []
    reached = {G.identity}
    by_order = sorted(range(G.order), key=lambda a: (-G.element_orders[a], a))
    while len(reached) < G.order:
        g = next(a for a in by_order if a not in reached)
        gens.append(g)
        reached = {G.identity}
        frontier = [G.identity]
        while frontier:
            z = frontier.pop()
            for s in gens:
                w = G.table[z][s]
                if w not in reached:
                    reached.add(w)
                    frontier.append(w)
    return gens


def _words(G: FiniteGroup, gens: list[int]):
    """Spanning tree of the right Cayley graph: (element, parent, generator slot)."""
    tree = [(G.identity, None, None)]
    seen = {G.identity}
    i = 0
    while i < len(tree):
        z = tree[i][0]
        for k, s in enumerate(gens):
            w = G.table[z][s]
            if w not in seen:
                seen.add(w)
                tree.append((w, z, k))
        i += 1
    return tree


def groups_isomorphic(G: FiniteGroup, H: FiniteGroup, node_cap: int = DEFAULT_NODE_CAP):
    """Return an isomorphism ``G -> H`` as a tuple, or ``None``.

    Cheap invariants first (order, element-order multiset, commutativity),
    then backtracking over images of a small generating set of ``G``.
    Raises ``DecisionTimeout`` when more than ``node_cap`` search nodes are
    visited.
    """
    if G.order != H.order:
        return None
    if Counter(G.element_orders) != Counter(H.element_orders):
        return None
    if G.is_abelian() != H.is_abelian():
        return None
    gens = _minimal_generators(G)
    tree = _words(G, gens)
    candidates = [
        [h for h in range(H.order) if H.element_orders[h] == G.element_orders[g]] for g in gens
    ]
    nodes = 0
    images: list[int] = []

    def extend():
        # Define phi along the spanning tree, then check every Cayley edge.
        phi = [None] * G.order
        for z, parent, k in tree:
            phi[z] = H.identity if parent is None else H.table[phi[parent]][images[k]]
        if len(set(phi)) != G.order:
            return None
        for z in range(G.order):
            for k, s in enumerate(gens):
                if phi[G.table[z][s]] != H.table[phi[z]][images[k]]:
                    return None
        return tuple(phi)

    def search(depth):
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise DecisionTimeout(f"isomorphism search exceeded {node_cap} nodes")
        if depth == len(gens):
            return extend()
        for h in candidates[depth]:
            if h in images:
                continue
            images.append(h)
            found = search(depth + 1)
            images.pop()
            if found is not None:
                return found
        return None

    phi = search(0)
    if phi is not None and not is_group_isomorphism(G, H, phi):
        return None
    return phi


# ---------------------------------------------------------------------------
# Morita morphisms


@dataclass(frozen=True)
class MoritaCheck:
    holds: bool
    witnesses: tuple = ()

    def __bool__(self):
        return self.holds


def is_morita_morphism(F: GroupoidMorphism) -> MoritaCheck:
    """Fully faithful (cartesian anchor square) and hitting every component.

    For each pair of domain objects ``(x, y)`` the arrow map must restrict to
    a bijection ``Hom(x, y) -> Hom(F x, F y)``; and every connected component
    of the codomain must contain an image object.
    """
    report = validate_morphism(F)
    if not report.ok:
        return MoritaCheck(False, tuple(("not_a_morphism", v.message) for v in report.violations[:5]))
    H, G = F.domain, F.codomain
    f0, f1 = F.object_map, F.arrow_map
    witnesses = []

    comp_of = {}
    for i, comp in enumerate(connected_components(G)):
        for y in comp:
            comp_of[y] = i
    by_component: dict[int, list[int]] = {}
    for x in range(H.num_objects):
        by_component.setdefault(comp_of[f0[x]], []).append(x)

    for xs in by_component.values():
        for x in xs:
            for y in xs:
                dom = H.hom.get((x, y), ())
                cod = G.hom.get((f0[x], f0[y]), ())
                images = [f1[a] for a in dom]
                if len(set(images)) != len(images):
                    seen = {}
                    for a in dom:
                        if f1[a] in seen:
                            witnesses.append(("not_injective", (x, y), (seen[f1[a]], a)))
                            break
                        seen[f1[a]] = a
                elif len(images) != len(cod):
                    missing = sorted(set(cod) - set(images))
                    witnesses.append(("not_surjective", (x, y), missing[0]))
                if len(witnesses) >= 10:
                    break
    hit = {comp_of[y] for y in f0}
    for i, comp in enumerate(connected_components(G)):
        if i not in hit:
            witnesses.append(("component_missed", comp[0]))
    return MoritaCheck(not witnesses, tuple(witnesses))


# ---------------------------------------------------------------------------
# equivalence


@dataclass(frozen=True)
class ComponentMatch:
    left: SkeletonEntry
    right: SkeletonEntry
    isomorphism: tuple[int, ...]  # left isotropy index -> right isotropy index


@dataclass(frozen=True)
class MoritaCertificate:
    """Pairing of nonempty components with explicit isotropy isomorphisms.

    ``matches`` follow the left groupoid's components in least-object order.
    """

    matches: tuple[ComponentMatch, ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def isotropy_orders(self) -> tuple[int, ...]:
        return tuple(m.left.isotropy.order for m in self.matches)

    def verify(self) -> bool:
        lefts = [m.left.objects for m in self.matches]
        rights = [m.right.objects for m in self.matches]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            return False
        return all(
            is_group_isomorphism(m.left.isotropy, m.right.isotropy, m.isomorphism) for m in self.matches
        )

    def to_dict(self) -> dict:
        return {
            "pairs": [
                {
                    "left_component": list(m.left.objects),
                    "right_component": list(m.right.objects),
                    "isotropy_order": m.left.isotropy.order,
                    "isomorphism": [
                        [m.left.isotropy.label(a), m.right.isotropy.label(b)]
                        for a, b in enumerate(m.isomorphism)
                    ],
                }
                for m in self.matches
            ]
        }


def _entries(K: FiniteGroupoid) -> list[SkeletonEntry]:
    return [SkeletonEntry(len(c), isotropy(K, c[0]), c) for c in connected_components(K)]


def morita_equivalent(K: FiniteGroupoid, L: FiniteGroupoid, node_cap: int = DEFAULT_NODE_CAP):
    """Return a ``MoritaCertificate`` if ``K`` and ``L`` are equivalent, else ``None``."""
    left, right = _entries(K), _entries(L)
    if len(left) != len(right):
        return None
    if sorted(e.isotropy.order for e in left) != sorted(e.isotropy.order for e in right):
        return None
    unused = list(range(len(right)))
    matches = []
    # Isomorphism is an equivalence relation, so greedy pairing is complete.
    for e in left:
        for pos, j in enumerate(unused):
            f = right[j]
            if f.isotropy.order != e.isotropy.order:
                continue
            phi = groups_isomorphic(e.isotropy, f.isotropy, node_cap)
            if phi is not None:
                matches.append(ComponentMatch(e, f, phi))
                del unused[pos]
                break
        else:
            return None
    return MoritaCertificate(tuple(matches))


def skeleton_diff(K: FiniteGroupoid, L: FiniteGroupoid) -> dict:
    """Isotropy invariants present on one side only, for error reports."""

    def invariants(M):
        return Counter(
            (e.isotropy.order, tuple(sorted(Counter(e.isotropy.element_orders).items())))
            for e in _entries(M)
        )

    a, b = invariants(K), invariants(L)
    return {
        "only_left": sorted((o for o in (a - b).elements()), key=repr),
        "only_right": sorted((o for o in (b - a).elements()), key=repr),
    }


def require_morphism(F: GroupoidMorphism) -> None:
    report = validate_morphism(F)
    if not report.ok:
        raise ValidationError(report.summary(), witness=report.violations[0].witness)
