"""Gerbes on finite groupoids, transgression to the inertia groupoid, and
inner local systems on twisted sectors.

A gerbe here is a ℤ/m-valued 2-cocycle on composable arrow pairs; the
underlying line bundle on a finite arrow set is trivial, so the cocycle is
the whole datum.  Transgression sends it to

    ρ(a, v) = θ(a, v) − θ(v, v⁻¹av)

on the arrow ``(a, v): a → v⁻¹av`` of the inertia groupoid, and ρ is a
groupoid morphism to ℤ/m.  Restricting ρ to loops ``(g, h)`` with ``h`` in
the centralizer of ``g`` gives one character per twisted sector.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

from .cohomology import GroupCocycle2, coboundary
from .core import FiniteGroupoid, GAction, action_groupoid
from .errors import IncompatibleGroup, InvalidCocycle, MorphismViolation, VerificationFailure
from .inertia import conjugacy_classes, inertia_arrow_index, inertia_groupoid, twisted_sectors


@dataclass(frozen=True, eq=False)
class GroupoidGerbe:
    groupoid: FiniteGroupoid
    modulus: int
    values: Mapping[tuple[int, int], int]

    def __post_init__(self):
        m = self.modulus
        if m < 1:
            raise InvalidCocycle("modulus must be positive")
        keys = set(self.groupoid.compose)
        if set(self.values) != keys:
            missing = sorted(keys - set(self.values))
            extra = sorted(set(self.values) - keys)
            raise InvalidCocycle(
                "gerbe values must be given exactly on composable pairs",
                witness={"missing": missing[:5], "not_composable": extra[:5]},
            )
        object.__setattr__(self, "values", {k: int(v) % m for k, v in self.values.items()})

    def __call__(self, a: int, b: int) -> int:
        return self.values[(a, b)]

    def __add__(self, other: "GroupoidGerbe") -> "GroupoidGerbe":
        if other.groupoid is not self.groupoid and other.groupoid != self.groupoid:
            raise ValueError("gerbes on different groupoids")
        if other.modulus != self.modulus:
            raise ValueError("gerbes with different moduli")
        return GroupoidGerbe(self.groupoid, self.modulus, {k: v + other.values[k] for k, v in self.values.items()})

    def with_value(self, pair: tuple[int, int], value: int) -> "GroupoidGerbe":
        vals = dict(self.values)
        vals[pair] = value
        return GroupoidGerbe(self.groupoid, self.modulus, vals)


class GerbeCheck(NamedTuple):
    holds: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self):
        return self.holds


def validate_gerbe(gb: GroupoidGerbe) -> GerbeCheck:
    """Exhaustive check of θ(a,b) + θ(ab,c) = θ(a,bc) + θ(b,c) on composable triples."""
    K, th, m = gb.groupoid, gb.values, gb.modulus
    comp, tgt, out = K.compose, K.target, K.arrows_from
    for (a, b), ab in comp.items():
        tab = th[(a, b)]
        for c in out[tgt[b]]:
            if (tab + th[(ab, c)] - th[(a, comp[(b, c)])] - th[(b, c)]) % m:
                return GerbeCheck(False, (a, b, c))
    return GerbeCheck(True)


def zero_gerbe(K: FiniteGroupoid, m: int) -> GroupoidGerbe:
    return GroupoidGerbe(K, m, {k: 0 for k in K.compose})


def gerbe_coboundary(K: FiniteGroupoid, beta: Sequence[int], m: int) -> GroupoidGerbe:
    """``(δβ)(a, b) = β(a) + β(b) − β(ab)`` for a function β on arrows."""
    return GroupoidGerbe(K, m, {(a, b): beta[a] + beta[b] - beta[c] for (a, b), c in K.compose.items()})


def gerbe_from_group_cocycle(theta: GroupCocycle2, K: FiniteGroupoid) -> GroupoidGerbe:
    """Pull θ back along the arrow labelling of a delooping or action groupoid."""
    if K.group is None or K.arrow_group_elements is None:
        raise IncompatibleGroup("groupoid carries no group labelling on its arrows")
    if K.group != theta.group:
        raise IncompatibleGroup(
            f"cocycle is on a group of order {theta.group.order}, "
            f"groupoid arrows are labelled by a group of order {K.group.order}"
        )
    g = K.arrow_group_elements
    v = theta.values
    gb = GroupoidGerbe(K, theta.modulus, {(a, b): v[g[a]][g[b]] for (a, b) in K.compose})
    check = validate_gerbe(gb)
    if not check:
        raise InvalidCocycle("pulled-back cocycle fails the cocycle identity", witness=check.witness)
    return gb


# ---------------------------------------------------------------------------
# transgression


@dataclass(frozen=True, eq=False)
class Transgression:
    gerbe: GroupoidGerbe
    inertia: FiniteGroupoid
    rho: tuple[int, ...]
    checks: dict = field(default_factory=dict)

    @property
    def modulus(self) -> int:
        return self.gerbe.modulus

    def at(self, a: int, v: int) -> int:
        """ρ on the inertia arrow labelled ``(a, v)``."""
        return self.rho[inertia_arrow_index(self.inertia)[(a, v)]]


def transgress(gb: GroupoidGerbe, check: bool = True) -> Transgression:
    """Build ∧K and ρ; with ``check`` assert the morphism identity on every composable pair."""
    K = gb.groupoid
    th, m = gb.values, gb.modulus
    IK = inertia_groupoid(K)
    loops = IK.object_labels
    rho = []
    for i, (a, v) in enumerate(IK.arrow_labels):
        b = loops[IK.target[i]]  # v⁻¹av
        rho.append((th[(a, v)] - th[(v, b)]) % m)
    rho = tuple(rho)
    T = Transgression(gb, IK, rho, {})
    if check:
        for (i, j), k in IK.compose.items():
            if (rho[i] + rho[j] - rho[k]) % m:
                raise MorphismViolation(
                    "transgression is not a morphism of groupoids",
                    detail={"arrows": (IK.arrow_labels[i], IK.arrow_labels[j]),
                            "values": (rho[i], rho[j], rho[k])},
                )
        for x, e in enumerate(IK.identity):
            if rho[e]:
                raise MorphismViolation("transgression is nonzero on an identity", detail=IK.object_labels[x])
        T.checks["morphism_pairs_checked"] = len(IK.compose)
    return T


def transgression_on_group(theta: GroupCocycle2, g: int, h: int) -> int:
    """ρ(g, h) = θ(g, h) − θ(h, h⁻¹gh) for the delooping."""
    G = theta.group
    return (theta(g, h) - theta(h, G.conj(g, h))) % theta.modulus


# ---------------------------------------------------------------------------
# inner local systems


def root_of_unity(k: int, m: int) -> str:
    """``exp(2πi·k/m)`` in lowest terms; ``1`` for the trivial value."""
    f = Fraction(k % m, m)
    if f == 0:
        return "1"
    return f"exp(2πi·{f.numerator}/{f.denominator})"


@dataclass(frozen=True)
class SectorCharacter:
    """χ_g on C(g), as exponents mod m aligned with ``centralizer``."""

    representative: int
    centralizer: tuple[int, ...]
    values: tuple[int, ...]
    fixed_points: tuple[int, ...]

    @property
    def empty(self) -> bool:
        return not self.fixed_points

    def __call__(self, h: int) -> int:
        return self.values[self.centralizer.index(h)]

    def is_trivial(self) -> bool:
        return not any(self.values)


@dataclass(frozen=True, eq=False)
class InnerLocalSystem:
    cocycle: GroupCocycle2
    action: GAction
    characters: tuple[SectorCharacter, ...]
    checks: dict = field(default_factory=dict)

    @property
    def modulus(self) -> int:
        return self.cocycle.modulus

    def character(self, g: int) -> SectorCharacter:
        for c in self.characters:
            if c.representative == g:
                return c
        raise KeyError(f"{g} is not a class representative")

    def tables(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.values for c in self.characters)

    def to_dict(self, roots: bool = False) -> dict:
        G, m = self.cocycle.group, self.modulus
        out = []
        for c in self.characters:
            entry = {
                "representative": _jsonable(G.label(c.representative)),
                "fixed_points": len(c.fixed_points),
                "empty": c.empty,
                "character": [[_jsonable(G.label(h)), v] for h, v in zip(c.centralizer, c.values)],
                "trivial": c.is_trivial(),
            }
            if roots:
                entry["roots_of_unity"] = [root_of_unity(v, m) for v in c.values]
            out.append(entry)
        return {"modulus": m, "sectors": out, "checks": dict(self.checks)}


def _jsonable(label):
    if isinstance(label, tuple):
        return [_jsonable(x) for x in label]
    return label


def _centralizer_characters(theta: GroupCocycle2, dec) -> list[SectorCharacter]:
    out = []
    for sector in dec.sectors:
        g = sector.representative
        cent = tuple(sector.centralizer.elements)
        vals = tuple(transgression_on_group(theta, g, h) for h in cent)
        out.append(SectorCharacter(g, cent, vals, sector.fixed_points))
    return out


def _check_character(theta: GroupCocycle2, chi: SectorCharacter) -> None:
    G, m = theta.group, theta.modulus
    val = dict(zip(chi.centralizer, chi.values))
    for h1 in chi.centralizer:
        if (val[h1] + val[G.inv(h1)]) % m:
            raise VerificationFailure(
                f"χ_{chi.representative}(h⁻¹) ≠ −χ(h) at h = {h1}", detail=(chi.representative, h1)
            )
        for h2 in chi.centralizer:
            if (val[h1] + val[h2] - val[G.mul(h1, h2)]) % m:
                raise VerificationFailure(
                    f"χ_{chi.representative} is not a homomorphism at ({h1}, {h2})",
                    detail=(chi.representative, h1, h2),
                )


def inner_local_system(
    theta: GroupCocycle2,
    A: GAction,
    verify: bool = True,
    sample: int | None = None,
    seed: int = 0,
) -> InnerLocalSystem:
    """Characters χ_g(h) = ρ(g, h) on C(g) for each class representative g.

    With ``verify`` the characters are checked to be homomorphisms with
    χ(h⁻¹) = −χ(h), and ρ is recomputed on the inertia groupoid of the action
    groupoid, where it must equal χ_g(h) at every fixed point x of g.
    ``sample`` limits that comparison to a seeded random subset of points per
    sector.
    """
    G = A.group
    if theta.group != G:
        raise IncompatibleGroup("cocycle and action are on different groups")
    dec = twisted_sectors(A)
    chars = _centralizer_characters(theta, dec)
    L = InnerLocalSystem(theta, A, tuple(chars), {})
    if not verify:
        return L
    for chi in chars:
        _check_character(theta, chi)
    L.checks["characters_are_homomorphisms"] = True

    gb = gerbe_from_group_cocycle(theta, action_groupoid(A))
    T = transgress(gb)
    idx = inertia_arrow_index(T.inertia)
    n = G.order
    rng = random.Random(seed)
    compared = 0
    for chi in chars:
        points = list(chi.fixed_points)
        if sample is not None and len(points) > sample:
            points = sorted(rng.sample(points, sample))
        for x in points:
            gx = x * n + chi.representative
            for h, v in zip(chi.centralizer, chi.values):
                r = T.rho[idx[(gx, x * n + h)]]
                if r != v:
                    raise VerificationFailure(
                        f"ρ at fixed point {x} differs from χ_{chi.representative}({h})",
                        detail=(x, chi.representative, h, r, v),
                    )
                compared += 1
    L.checks["transgression_morphism_pairs"] = T.checks["morphism_pairs_checked"]
    L.checks["fixed_point_values_compared"] = compared
    return L


class InvarianceCheck(NamedTuple):
    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def verify_coboundary_invariance(theta: GroupCocycle2, beta: Sequence[int], A: GAction) -> InvarianceCheck:
    """Compare the inner local systems of θ and θ + δβ character by character."""
    shifted = theta + coboundary(theta.group, beta, theta.modulus)
    left = inner_local_system(theta, A)
    right = inner_local_system(shifted, A)
    for a, b in zip(left.characters, right.characters):
        for h, u, v in zip(a.centralizer, a.values, b.values):
            if u != v:
                return InvarianceCheck(False, (a.representative, h, u, v))
    return InvarianceCheck(True)


def class_seed_check(theta: GroupCocycle2) -> InvarianceCheck:
    """χ at the class representative is recovered from any class member.

    For ``g' = c⁻¹gc`` and ``h ∈ C(g)``, ρ(g', c⁻¹hc) must equal ρ(g, h).
    """
    G = theta.group
    data = conjugacy_classes(G)
    for cls, C in zip(data.classes, data.centralizers):
        g = cls.representative
        for gp in cls.members:
            c = data.conjugator[gp]
            for h in C.elements:
                seeded = transgression_on_group(theta, gp, G.conj(h, c))
                direct = transgression_on_group(theta, g, h)
                if seeded != direct:
                    return InvarianceCheck(False, (g, gp, h, direct, seeded))
    return InvarianceCheck(True)


def commutator_pairing(theta: GroupCocycle2) -> tuple[tuple[int, ...], ...]:
    """For abelian G, the table ρ(g, h) = θ(g, h) − θ(h, g)."""
    G = theta.group
    if not G.is_abelian():
        raise ValueError("the commutator pairing needs an abelian group")
    m = theta.modulus
    return tuple(tuple((theta(g, h) - theta(h, g)) % m for h in range(G.order)) for g in range(G.order))


def check_pairing(theta: GroupCocycle2) -> InvarianceCheck:
    """Exhaustive: the commutator pairing is alternating and bimultiplicative."""
    G, m = theta.group, theta.modulus
    P = commutator_pairing(theta)
    n = G.order
    for g in range(n):
        if P[g][g]:
            return InvarianceCheck(False, ("alternating", g))
        for h in range(n):
            if (P[g][h] + P[h][g]) % m:
                return InvarianceCheck(False, ("antisymmetric", g, h))
            for k in range(n):
                if (P[g][G.mul(h, k)] - P[g][h] - P[g][k]) % m:
                    return InvarianceCheck(False, ("bilinear", g, h, k))
    return InvarianceCheck(True)
