"""Conjugacy classes, inertia groupoids and twisted sectors.

The inertia groupoid ``∧K`` has the loops of ``K`` as objects; an arrow
``(a, v)`` starts at the loop ``a`` and ends at ``v⁻¹·a·v``.  For a group this
is the conjugation action groupoid, and for an action groupoid ``[X/G]`` it
splits, one conjugacy class at a time, into the twisted sectors
``[X^g / C(g)]``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import lcm

from .core import (
    FiniteGroup,
    FiniteGroupoid,
    GAction,
    GroupoidMorphism,
    action_groupoid,
    build_action,
    compose_morphisms,
    disjoint_union,
    identity_morphism,
    is_isomorphism,
    subgroup,
    validate_groupoid,
    validate_morphism,
)
from .errors import EquivalenceFailure, VerificationFailure
from .morita import MoritaCertificate, is_morita_morphism, morita_equivalent, skeleton_diff


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple[int, ...]


@dataclass(frozen=True)
class ConjugacyData:
    """Classes in order of least member, which is also the representative.

    ``conjugator[x]`` is an element ``h`` with ``h⁻¹·rep·h = x`` where ``rep``
    is the representative of the class of ``x``.
    """

    group: FiniteGroup
    classes: tuple[ConjugacyClass, ...]
    centralizers: tuple[FiniteGroup, ...]
    class_index: tuple[int, ...]
    conjugator: tuple[int, ...]

    def __len__(self):
        return len(self.classes)


def centralizer(G: FiniteGroup, g: int) -> FiniteGroup:
    """``C(g) = {h : hg = gh}``, labelled by element indices of ``G``."""
    t = G.table
    return subgroup(G, [h for h in range(G.order) if t[h][g] == t[g][h]])


def conjugacy_classes(G: FiniteGroup) -> ConjugacyData:
    n = G.order
    class_index = [-1] * n
    conjugator = [-1] * n
    classes, cents = [], []
    for g in range(n):
        if class_index[g] >= 0:
            continue
        k = len(classes)
        members = []
        for h in range(n):
            x = G.conj(g, h)
            if class_index[x] < 0:
                class_index[x] = k
                conjugator[x] = h
                members.append(x)
        classes.append(ConjugacyClass(g, tuple(sorted(members))))
        cents.append(centralizer(G, g))
    return ConjugacyData(G, tuple(classes), tuple(cents), tuple(class_index), tuple(conjugator))


# ---------------------------------------------------------------------------
# inertia groupoid


def inertia_groupoid(K: FiniteGroupoid) -> FiniteGroupoid:
    """``∧K``.  Object labels are loops of ``K``; arrow labels are pairs ``(a, v)``."""
    s, t, comp, inv = K.source, K.target, K.compose, K.inverse
    loops = [a for a in range(K.num_arrows) if s[a] == t[a]]
    obj = {a: i for i, a in enumerate(loops)}
    pairs = [(a, v) for a in loops for v in K.arrows_from[s[a]]]
    arr = {p: i for i, p in enumerate(pairs)}

    src, tgt, inverse = [], [], []
    for a, v in pairs:
        b = comp[(comp[(inv[v], a)], v)]
        src.append(obj[a])
        tgt.append(obj[b])
        inverse.append(arr[(b, inv[v])])
    compose = {}
    for i, (a, v) in enumerate(pairs):
        b = loops[tgt[i]]
        for w in K.arrows_from[s[b]]:
            compose[(i, arr[(b, w)])] = arr[(a, comp[(v, w)])]
    return FiniteGroupoid(
        num_objects=len(loops),
        source=tuple(src),
        target=tuple(tgt),
        identity=tuple(arr[(a, K.identity[s[a]])] for a in loops),
        inverse=tuple(inverse),
        compose=compose,
        object_labels=tuple(loops),
        arrow_labels=tuple(pairs),
    )


def inertia_object_index(IK: FiniteGroupoid) -> dict[int, int]:
    return {a: i for i, a in enumerate(IK.object_labels)}


def inertia_arrow_index(IK: FiniteGroupoid) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(IK.arrow_labels)}


# ---------------------------------------------------------------------------
# functors from the delooping of the integers


@dataclass(frozen=True)
class HomZModel:
    """Functors ``Z̄ -> K`` and natural transformations between them.

    A functor is stored as ``(base object, (φ(0), φ(1), ..., φ(p-1)))`` with
    ``p`` the period of ``φ(1)``; a transformation ``φ -> ψ`` as
    ``(φ, ψ, (λ(0), ..., λ(p-1)))``.  ``to_inertia`` sends ``φ`` to the loop
    ``φ(1)`` and ``λ`` to ``(φ(1), λ(0))``.
    """

    groupoid: FiniteGroupoid
    functors: tuple
    transformations: tuple
    to_inertia: GroupoidMorphism

    def verify(self) -> bool:
        return validate_groupoid(self.groupoid).ok and is_isomorphism(self.to_inertia)


def _period(K: FiniteGroupoid, a: int) -> tuple[int, ...]:
    x = K.source[a]
    powers = [K.identity[x]]
    cur = a
    while cur != K.identity[x]:
        powers.append(cur)
        cur = K.compose[(cur, a)]
    return tuple(powers)


def hom_Z_groupoid(K: FiniteGroupoid, IK: FiniteGroupoid | None = None) -> HomZModel:
    """Build ``Hom(Z̄, K)`` from scratch and its comparison map onto ``∧K``."""
    comp = K.compose
    functors = []
    for x in range(K.num_objects):
        for a in K.loops_at(x):
            phi = _period(K, a)
            p = len(phi)
            if all(comp[(phi[i], phi[j])] == phi[(i + j) % p] for i in range(p) for j in range(p)):
                functors.append((x, phi))
    by_base: dict[int, list[int]] = {}
    for i, (x, _) in enumerate(functors):
        by_base.setdefault(x, []).append(i)

    transformations = []
    for i, (x, phi) in enumerate(functors):
        for v in K.arrows_from[x]:
            for j in by_base[K.target[v]]:
                psi = functors[j][1]
                period = lcm(len(phi), len(psi))
                lam = [comp[(phi[n % len(phi)], v)] for n in range(period)]
                if all(comp[(v, psi[n % len(psi)])] == lam[n] for n in range(period)):
                    transformations.append((i, j, tuple(lam[: len(phi)])))

    index = {(i, j, lam[0]): k for k, (i, j, lam) in enumerate(transformations)}
    src = tuple(i for i, _, _ in transformations)
    tgt = tuple(j for _, j, _ in transformations)
    ident = tuple(index[(i, i, K.identity[x])] for i, (x, _) in enumerate(functors))
    inverse = tuple(index[(j, i, K.inverse[lam[0]])] for i, j, lam in transformations)
    out_of: dict[int, list[int]] = {}
    for k, i in enumerate(src):
        out_of.setdefault(i, []).append(k)
    compose = {}
    for k, (i, j, lam) in enumerate(transformations):
        for k2 in out_of.get(j, ()):
            _, l, mu = transformations[k2]
            compose[(k, k2)] = index[(i, l, comp[(lam[0], mu[0])])]
    groupoid = FiniteGroupoid(
        num_objects=len(functors),
        source=src,
        target=tgt,
        identity=ident,
        inverse=inverse,
        compose=compose,
        object_labels=tuple(functors),
        arrow_labels=tuple(transformations),
    )

    if IK is None:
        IK = inertia_groupoid(K)
    obj = inertia_object_index(IK)
    arr = inertia_arrow_index(IK)

    def loop(phi):
        return phi[1 % len(phi)]

    f0 = tuple(obj[loop(phi)] for _, phi in functors)
    f1 = tuple(arr[(loop(functors[i][1]), lam[0])] for i, _, lam in transformations)
    return HomZModel(groupoid, tuple(functors), tuple(transformations), GroupoidMorphism(groupoid, IK, f0, f1))


# ---------------------------------------------------------------------------
# twisted sectors


@dataclass(frozen=True)
class Sector:
    """Twisted sector of one conjugacy class: ``C(g)`` acting on ``X^g``.

    Sector objects are labelled by points ``x``; arrows by ``(x, h)`` with
    ``h`` an element index of the ambient group.
    """

    representative: int
    class_members: tuple[int, ...]
    fixed_points: tuple[int, ...]
    centralizer: FiniteGroup
    groupoid: FiniteGroupoid

    @property
    def empty(self) -> bool:
        return not self.fixed_points


@dataclass(frozen=True)
class SectorDecomposition:
    action: GAction
    conjugacy: ConjugacyData
    sectors: tuple[Sector, ...]

    def union(self) -> FiniteGroupoid:
        return disjoint_union([s.groupoid for s in self.sectors])

    def offsets(self) -> list[tuple[int, int]]:
        out, o, a = [], 0, 0
        for s in self.sectors:
            out.append((o, a))
            o += s.groupoid.num_objects
            a += s.groupoid.num_arrows
        return out


def _empty_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid(0, (), (), (), (), {}, object_labels=(), arrow_labels=())


def twisted_sectors(A: GAction) -> SectorDecomposition:
    G = A.group
    conj = conjugacy_classes(G)
    sectors = []
    for cls, C in zip(conj.classes, conj.centralizers):
        g = cls.representative
        fixed = A.fixed_points(g)
        fixed_set = set(fixed)
        for h in C.elements:
            for x in fixed:
                if A.act(x, h) not in fixed_set:
                    raise VerificationFailure(
                        f"centralizer element {h} moves fixed point {x} of {g} out of X^g",
                        detail=(g, h, x),
                    )
        if fixed:
            pos = {x: i for i, x in enumerate(fixed)}
            rows = [tuple(pos[A.act(x, h)] for x in fixed) for h in C.elements]
            K = action_groupoid(build_action(C, rows))
            K = replace(
                K,
                object_labels=fixed,
                arrow_labels=tuple((fixed[i], C.elements[h]) for i, h in K.arrow_labels),
            )
        else:
            K = _empty_groupoid()
        sectors.append(Sector(g, cls.members, fixed, C, K))
    return SectorDecomposition(A, conj, tuple(sectors))


@dataclass(frozen=True)
class SectorEquivalence:
    """Everything ``verify_sector_equivalence`` checked, with its witnesses."""

    certificate: MoritaCertificate
    inclusion: GroupoidMorphism
    retraction: GroupoidMorphism
    inertia: FiniteGroupoid
    decomposition: SectorDecomposition
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def sector_inclusion(dec: SectorDecomposition, IK: FiniteGroupoid) -> GroupoidMorphism:
    """``⊔ [X^g / C(g)] -> ∧[X/G]``: ``(x, h)`` in sector ``g`` goes to ``((x, g), (x, h))``."""
    n = dec.action.group.order
    obj = inertia_object_index(IK)
    arr = inertia_arrow_index(IK)
    f0, f1 = [], []
    for s in dec.sectors:
        g = s.representative
        for x in s.fixed_points:
            f0.append(obj[x * n + g])
        for x, h in s.groupoid.arrow_labels:
            f1.append(arr[(x * n + g, x * n + h)])
    return GroupoidMorphism(dec.union(), IK, tuple(f0), tuple(f1))


def sector_retraction(dec: SectorDecomposition, IK: FiniteGroupoid) -> GroupoidMorphism:
    """``∧[X/G] -> ⊔ [X^g / C(g)]``, moving every loop to its class representative.

    With ``c(g')`` chosen so that ``c⁻¹ g' c`` is the representative, the loop
    ``(y, g')`` goes to ``y·c(g')`` and the arrow ``((y, g'), (y, u))`` to the
    centralizer element ``c(g')⁻¹ u c(u⁻¹g'u)``.
    """
    A, conj = dec.action, dec.conjugacy
    G, n = A.group, A.group.order
    t = G.table
    offsets = dec.offsets()
    obj_pos = []
    for s in dec.sectors:
        obj_pos.append({x: i for i, x in enumerate(s.fixed_points)})
    local = [{h: i for i, h in enumerate(s.centralizer.elements)} for s in dec.sectors]

    def c(gp):
        return G.inverse[conj.conjugator[gp]]

    f0 = []
    for loop in IK.object_labels:
        y, gp = divmod(loop, n)
        k = conj.class_index[gp]
        f0.append(offsets[k][0] + obj_pos[k][A.act(y, c(gp))])
    f1 = []
    for loop, v in IK.arrow_labels:
        y, gp = divmod(loop, n)
        u = v % n
        k = conj.class_index[gp]
        gpp = G.conj(gp, u)
        h = t[t[G.inverse[c(gp)]][u]][c(gpp)]
        size = dec.sectors[k].centralizer.order
        point = obj_pos[k][A.act(y, c(gp))]
        f1.append(offsets[k][1] + point * size + local[k][h])
    return GroupoidMorphism(IK, dec.union(), tuple(f0), tuple(f1))


def verify_sector_equivalence(A: GAction) -> SectorEquivalence:
    """Compare ``∧[X/G]`` with its twisted sectors in every way available.

    Runs the skeleton decision, checks the sector inclusion and the
    retraction onto the sectors are Morita morphisms, that the retraction
    splits the inclusion, and the two inertia-object counts.  Raises
    ``EquivalenceFailure`` if anything disagrees.
    """
    K = action_groupoid(A)
    IK = inertia_groupoid(K)
    dec = twisted_sectors(A)
    union = dec.union()
    cert = morita_equivalent(IK, union)
    if cert is None:
        raise EquivalenceFailure("inertia groupoid and sector union are not equivalent", skeleton_diff(IK, union))

    inc = sector_inclusion(dec, IK)
    ret = sector_retraction(dec, IK)
    split = compose_morphisms(inc, ret)
    ident = identity_morphism(union)
    counted = sum(len(s.class_members) * len(s.fixed_points) for s in dec.sectors)
    checks = {
        "certificate_verified": cert.verify(),
        "inclusion_is_morphism": validate_morphism(inc).ok,
        "inclusion_injective": len(set(inc.object_map)) == len(inc.object_map)
        and len(set(inc.arrow_map)) == len(inc.arrow_map),
        "inclusion_is_morita": is_morita_morphism(inc).holds,
        "retraction_is_morphism": validate_morphism(ret).ok,
        "retraction_is_morita": is_morita_morphism(ret).holds,
        "retraction_splits_inclusion": split.object_map == ident.object_map and split.arrow_map == ident.arrow_map,
        "inertia_object_count": counted == IK.num_objects,
    }
    result = SectorEquivalence(cert, inc, ret, IK, dec, checks)
    if not result.ok:
        failed = [k for k, v in checks.items() if not v]
        raise EquivalenceFailure(f"sector checks failed: {failed}", {"failed": failed, **skeleton_diff(IK, union)})
    return result
