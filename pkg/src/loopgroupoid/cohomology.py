"""Group 2-cocycles with ℤ/m coefficients and the computation of H²(G, ℤ/m).

Values are additive exponents: the U(1)-valued cocycle is
``exp(2πi·θ(a,b)/m)``.  A 1-cochain is a sequence ``β`` of residues indexed by
group elements, and its coboundary is ``δβ(a,b) = β(a) + β(b) − β(ab)``.

``h2`` works on normalized cochains, which vanish whenever an argument is the
identity.  The kernel of δ² is found by diagonalizing over ℤ/m, and the
quotient by the image of δ¹ by an exact integer Smith normal form.  Each
generator's class order is then re-verified by solving ``δβ = k·γ`` on full
cochains, which is an independent computation.

``discrete_torsion`` gives the image of H²(G, ℤ/m) in H²(G, U(1)).  That
image is what survives once coefficients are widened to the circle: the
classes that are Bockstein images of characters G → U(1) die.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import NamedTuple, Sequence

import numpy as np

from .core import FiniteGroup
from .errors import DimensionCapExceeded, InvalidCocycle, VerificationFailure
from .smith import MAX_MODULUS, IntegerMatrix, diagonalize_mod, smith_normal_form

# Cap on |G|², the number of cochain values in degree two.
DEFAULT_DIMENSION_CAP = 576


@dataclass(frozen=True, eq=False)
class GroupCocycle2:
    """A ℤ/m-valued 2-cochain on a finite group.  Values are stored reduced."""

    group: FiniteGroup
    modulus: int
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n, m = self.group.order, self.modulus
        if not isinstance(m, (int, np.integer)) or not 1 <= m < MAX_MODULUS:
            raise InvalidCocycle(f"modulus must be an integer in [1, 2^31), got {m!r}")
        rows = tuple(tuple(int(v) % m for v in row) for row in self.values)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InvalidCocycle(f"values must be a {n}×{n} table", witness=("shape", len(rows)))
        object.__setattr__(self, "modulus", int(m))
        object.__setattr__(self, "values", rows)

    @classmethod
    def zero(cls, G: FiniteGroup, m: int) -> "GroupCocycle2":
        return cls(G, m, ((0,) * G.order,) * G.order)

    @classmethod
    def from_function(cls, G: FiniteGroup, m: int, f) -> "GroupCocycle2":
        return cls(G, m, tuple(tuple(f(a, b) for b in range(G.order)) for a in range(G.order)))

    def __call__(self, a: int, b: int) -> int:
        return self.values[a][b]

    def __eq__(self, other):
        if not isinstance(other, GroupCocycle2):
            return NotImplemented
        return self.group == other.group and self.modulus == other.modulus and self.values == other.values

    def __hash__(self):
        return hash((self.group, self.modulus, self.values))

    def __repr__(self):
        return f"GroupCocycle2(order={self.group.order}, modulus={self.modulus})"

    def _check_compatible(self, other):
        if self.group != other.group or self.modulus != other.modulus:
            raise ValueError("cocycles live on different groups or moduli")

    def __add__(self, other: "GroupCocycle2") -> "GroupCocycle2":
        self._check_compatible(other)
        return GroupCocycle2(
            self.group,
            self.modulus,
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.values, other.values)),
        )

    def __neg__(self) -> "GroupCocycle2":
        return self.scale(-1)

    def __sub__(self, other: "GroupCocycle2") -> "GroupCocycle2":
        return self + (-other)

    def scale(self, k: int) -> "GroupCocycle2":
        return GroupCocycle2(self.group, self.modulus, tuple(tuple(k * v for v in r) for r in self.values))

    def lift(self, modulus: int) -> "GroupCocycle2":
        """The same U(1)-valued cocycle written with exponents mod ``modulus``."""
        if modulus % self.modulus:
            raise ValueError(f"{self.modulus} does not divide {modulus}")
        k = modulus // self.modulus
        return GroupCocycle2(self.group, modulus, tuple(tuple(k * v for v in r) for r in self.values))

    def is_normalized(self) -> bool:
        e = self.group.identity
        return all(self.values[e][a] == 0 and self.values[a][e] == 0 for a in range(self.group.order))

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64).reshape(self.group.order, self.group.order)


class CocycleCheck(NamedTuple):
    holds: bool
    witness: tuple[int, int, int] | None = None

    def __bool__(self):
        return self.holds


def is_cocycle(theta: GroupCocycle2) -> CocycleCheck:
    """Exhaustive check of θ(a,b) + θ(ab,c) = θ(a,bc) + θ(b,c)."""
    G, m = theta.group, theta.modulus
    n = G.order
    T = np.array(G.table, dtype=np.int64)
    V = theta.as_array()
    chunk = max(1, 4_000_000 // max(1, n * n))
    for a0 in range(0, n, chunk):
        a = np.arange(a0, min(n, a0 + chunk))
        lhs = V[a][:, :, None] + V[T[a]]  # θ(a,b) + θ(ab,c)
        rhs = V[a[:, None, None], T[None, :, :]] + V[None, :, :]  # θ(a,bc) + θ(b,c)
        bad = np.argwhere((lhs - rhs) % m != 0)
        if len(bad):
            i, b, c = (int(v) for v in bad[0])
            return CocycleCheck(False, (int(a[i]), b, c))
    return CocycleCheck(True)


def build_cocycle(G: FiniteGroup, modulus: int, values) -> GroupCocycle2:
    """Construct and validate; raises ``InvalidCocycle`` naming a failing triple."""
    theta = GroupCocycle2(G, modulus, values)
    check = is_cocycle(theta)
    if not check:
        a, b, c = check.witness
        raise InvalidCocycle(
            f"cocycle identity fails at (a, b, c) = ({G.label(a)}, {G.label(b)}, {G.label(c)})",
            witness=check.witness,
        )
    return theta


def coboundary(G: FiniteGroup, beta: Sequence[int], m: int) -> GroupCocycle2:
    if len(beta) != G.order:
        raise ValueError(f"1-cochain needs {G.order} values, got {len(beta)}")
    t = G.table
    return GroupCocycle2(
        G, m, tuple(tuple(beta[a] + beta[b] - beta[t[a][b]] for b in range(G.order)) for a in range(G.order))
    )


class Normalization(NamedTuple):
    cocycle: GroupCocycle2
    beta: tuple[int, ...]


def normalize(theta: GroupCocycle2) -> Normalization:
    """Cohomologous cocycle vanishing on identity slots, with ``θ' = θ − δβ``.

    For a cocycle, θ(e, ·) and θ(·, e) are both the constant θ(e, e), so the
    constant cochain with that value does the job.
    """
    G, m = theta.group, theta.modulus
    c = theta.values[G.identity][G.identity]
    beta = (c,) * G.order
    if c == 0:
        return Normalization(theta, beta)
    return Normalization(theta - coboundary(G, beta, m), beta)


# ---------------------------------------------------------------------------
# matrices on normalized cochains


@dataclass(frozen=True)
class _NormalizedBasis:
    nonidentity: tuple[int, ...]
    position: dict  # element -> column index among nonidentity elements

    @classmethod
    def of(cls, G: FiniteGroup):
        nz = tuple(a for a in range(G.order) if a != G.identity)
        return cls(nz, {a: i for i, a in enumerate(nz)})

    @property
    def k(self) -> int:
        return len(self.nonidentity)

    def pair(self, a: int, b: int) -> int:
        return self.position[a] * self.k + self.position[b]


def _delta1_normalized(G: FiniteGroup, basis: _NormalizedBasis) -> np.ndarray:
    k, pos = basis.k, basis.position
    M = np.zeros((k * k, k), dtype=np.int64)
    for a in basis.nonidentity:
        for b in basis.nonidentity:
            r = basis.pair(a, b)
            M[r, pos[a]] += 1
            M[r, pos[b]] += 1
            ab = G.table[a][b]
            if ab != G.identity:
                M[r, pos[ab]] -= 1
    return M


def _delta2_normalized(G: FiniteGroup, basis: _NormalizedBasis) -> np.ndarray:
    k = basis.k
    if k == 0:
        return np.zeros((0, 0), dtype=np.int64)
    nz = np.array(basis.nonidentity, dtype=np.int64)
    T = np.array(G.table, dtype=np.int64)
    col_of = np.full(G.order, -1, dtype=np.int64)
    col_of[nz] = np.arange(k)
    a, b, c = (x.ravel() for x in np.meshgrid(nz, nz, nz, indexing="ij"))
    rows = np.arange(k**3)
    M = np.zeros((k**3, k * k), dtype=np.int64)

    def add(rows, x, y, sign):
        cx, cy = col_of[x], col_of[y]
        keep = (cx >= 0) & (cy >= 0)
        np.add.at(M, (rows[keep], cx[keep] * k + cy[keep]), sign)

    add(rows, b, c, 1)
    add(rows, T[a, b], c, -1)
    add(rows, a, T[b, c], 1)
    add(rows, a, b, -1)
    return M


def _check_dimension(G: FiniteGroup, cap: int) -> None:
    if G.order**2 > cap:
        raise DimensionCapExceeded(
            f"|G|² = {G.order ** 2} cochain values exceeds the cap of {cap}; raise it explicitly"
        )


def _matvec_mod(M: np.ndarray, v, m: int) -> list[int]:
    # Python ints: entries below m times vectors below m can overflow int64 sums.
    rows = M.tolist()
    v = [int(x) for x in v]
    return [sum(a * b for a, b in zip(r, v) if a and b) % m for r in rows]


@dataclass(frozen=True)
class _Presentation:
    # Z² ≅ ⊕ (t_i ℤ / m ℤ) in y-coordinates y = V_inv·x; written w_i = y_i / t_i ∈ ℤ/g_i.
    # H ≅ ℤ^r / (columns W + diag g) over the active coordinates (g_i > 1);
    # the quotient SNF gives U_q, D_q.
    basis: _NormalizedBasis
    V_inv: np.ndarray
    g: tuple[int, ...]
    t: tuple[int, ...]
    active: tuple[int, ...]
    U_q: IntegerMatrix
    D_q: tuple[int, ...]
    kept: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class CohomologyGroup:
    """H²(G, ℤ/m) as ⊕ ℤ/dᵢ with one explicit generator cocycle per factor."""

    group: FiniteGroup
    modulus: int
    invariant_factors: tuple[int, ...]
    generator_cocycles: tuple[GroupCocycle2, ...]
    checks: dict = field(default_factory=dict, compare=False)
    _presentation: _Presentation | None = field(default=None, repr=False, compare=False)

    @property
    def generators(self) -> tuple[GroupCocycle2, ...]:
        return self.generator_cocycles

    @property
    def size(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def coordinates(self, theta: GroupCocycle2) -> tuple[int, ...]:
        """Coordinates of the class of ``θ`` over the generators (``kᵢ mod dᵢ``)."""
        if theta.group != self.group or theta.modulus != self.modulus:
            raise ValueError("cocycle does not belong to this cohomology group")
        P = self._presentation
        m = self.modulus
        theta = normalize(theta).cocycle
        x = [theta.values[a][b] for a in P.basis.nonidentity for b in P.basis.nonidentity]
        y = _matvec_mod(P.V_inv, x, m) if x else []
        if any(yi % ti for yi, ti in zip(y, P.t)):
            raise InvalidCocycle("not a cocycle: lies outside the kernel of δ²")
        w = [(y[i] // P.t[i]) % P.g[i] for i in P.active]
        z = [sum(u * wi for u, wi in zip(row, w)) for row in P.U_q.entries]
        return tuple(z[j] % P.D_q[j] for j in P.kept)

    def class_of(self, coordinates: Sequence[int]) -> GroupCocycle2:
        out = GroupCocycle2.zero(self.group, self.modulus)
        for k, gamma in zip(coordinates, self.generator_cocycles):
            out = out + gamma.scale(k)
        return out

    def is_trivial(self, theta: GroupCocycle2) -> bool:
        return not any(self.coordinates(theta))

    def to_dict(self) -> dict:
        G = self.group
        return {
            "modulus": self.modulus,
            "invariant_factors": list(self.invariant_factors),
            "generators": [
                {"order": d, "values": [list(r) for r in gamma.values]}
                for d, gamma in zip(self.invariant_factors, self.generator_cocycles)
            ],
            "elements": [_jsonable(G.label(a)) for a in range(G.order)],
            "checks": dict(self.checks),
        }


def _jsonable(label):
    if isinstance(label, tuple):
        return [_jsonable(x) for x in label]
    return label


def cocycle_basis(G: FiniteGroup, m: int, cap: int = DEFAULT_DIMENSION_CAP) -> list[GroupCocycle2]:
    """Normalized cocycles generating Z²(G, ℤ/m) (not modulo coboundaries)."""
    _check_dimension(G, cap)
    basis = _NormalizedBasis.of(G)
    if basis.k == 0:
        return []
    diag = diagonalize_mod(_delta2_normalized(G, basis), m)
    return [_normalized_to_cocycle(G, m, basis, v) for v in diag.kernel_generators()]


def _normalized_to_cocycle(G, m, basis, vec) -> GroupCocycle2:
    n = G.order
    vals = [[0] * n for _ in range(n)]
    for a in basis.nonidentity:
        for b in basis.nonidentity:
            vals[a][b] = int(vec[basis.pair(a, b)])
    return GroupCocycle2(G, m, vals)


def h2(G: FiniteGroup, m: int, cap: int = DEFAULT_DIMENSION_CAP, verify: bool = True) -> CohomologyGroup:
    """Compute H²(G, ℤ/m) with explicit generators.

    With ``verify`` each generator γ of order d is checked to be a cocycle,
    with ``d·γ`` a coboundary and ``k·γ`` not one for ``0 < k < d``.
    """
    if m < 1:
        raise ValueError("modulus must be at least 1")
    _check_dimension(G, cap)
    basis = _NormalizedBasis.of(G)
    k = basis.k
    c = k * k
    if c == 0 or m == 1:
        P = _Presentation(basis, np.zeros((c, c), np.int64), (1,) * c, (m,) * c, (),
                          IntegerMatrix.identity(0), (), ())
        return CohomologyGroup(G, m, (), (), {"generators_verified": True}, P)

    diag = diagonalize_mod(_delta2_normalized(G, basis), m)
    g = diag.annihilators
    t = tuple(m // gi for gi in g)

    # Coordinates with g_i = 1 are zero in ℤ/g_i; only the rest enter the quotient.
    active = tuple(i for i, gi in enumerate(g) if gi > 1)
    ga = [g[i] for i in active]
    r = len(active)
    D1 = _delta1_normalized(G, basis)
    W = []
    for j in range(k):
        y = _matvec_mod(diag.V_inv, D1[:, j], m)
        if any(yi % ti for yi, ti in zip(y, t)):
            raise VerificationFailure("coboundary outside the computed cocycle space", detail=j)
        W.append([(y[i] // t[i]) % g[i] for i in active])
    S = IntegerMatrix.from_rows(
        [[W[j][i] for j in range(k)] + [ga[i] if i == l else 0 for l in range(r)] for i in range(r)],
        k + r,
    )
    snf = smith_normal_form(S, inverses=True)
    D_q = snf.D.diagonal()
    kept = tuple(j for j in range(r) if D_q[j] > 1)

    Va = diag.V[:, list(active)].tolist()
    gens = []
    for j in kept:
        tw = [t[active[i]] * snf.U_inv[i, j] for i in range(r)]
        vec = [sum(vij * x for vij, x in zip(row, tw)) % m for row in Va]
        gens.append(_normalized_to_cocycle(G, m, basis, vec))
    P = _Presentation(basis, diag.V_inv, g, t, active, snf.U, D_q, kept)
    H = CohomologyGroup(G, m, tuple(D_q[j] for j in kept), tuple(gens), {}, P)
    if verify:
        verify_generators(H)
        H.checks["generators_verified"] = True
    return H


def verify_generators(H: CohomologyGroup) -> None:
    """Raise ``VerificationFailure`` unless every generator has exactly its stated order."""
    fs = H.invariant_factors
    if any(b % a for a, b in zip(fs, fs[1:])) or any(H.modulus % d for d in fs):
        raise VerificationFailure("invariant factors do not form a divisibility chain dividing m", detail=fs)
    for i, (d, gamma) in enumerate(zip(fs, H.generator_cocycles)):
        check = is_cocycle(gamma)
        if not check:
            raise VerificationFailure(f"generator {i} is not a cocycle", detail=check.witness)
        if is_coboundary(gamma.scale(d), H.modulus) is None:
            raise VerificationFailure(f"{d}·γ_{i} is not a coboundary", detail=i)
        for q in range(1, d):
            if is_coboundary(gamma.scale(q), H.modulus) is not None:
                raise VerificationFailure(f"{q}·γ_{i} is already a coboundary; expected order {d}", detail=i)


# ---------------------------------------------------------------------------
# coboundary solving on full cochains


@lru_cache(maxsize=32)
def _full_delta1_smith(G: FiniteGroup):
    n = G.order
    rows = []
    for a in range(n):
        for b in range(n):
            r = [0] * n
            r[a] += 1
            r[b] += 1
            r[G.table[a][b]] -= 1
            rows.append(r)
    snf = smith_normal_form(IntegerMatrix.from_rows(rows, n))
    return snf.U.tolist(), snf.D.diagonal(), snf.V.tolist()


def is_coboundary(theta: GroupCocycle2, modulus: int | None = None) -> tuple[int, ...] | None:
    """A 1-cochain β mod ``modulus`` with ``δβ = θ`` there, or ``None``.

    ``θ`` is first rewritten at ``modulus`` (a multiple of its own modulus),
    so the test asks whether the U(1)-valued cocycle bounds a cochain with
    values in the ``modulus``-th roots of unity.
    """
    G = theta.group
    mp = theta.modulus if modulus is None else modulus
    lifted = theta.lift(mp)
    U, d, V = _full_delta1_smith(G)
    n = G.order
    x = [v for row in lifted.values for v in row]
    r = [sum(u * xi for u, xi in zip(row, x) if u and xi) for row in U]
    z = []
    for i, ri in enumerate(r):
        di = d[i] if i < len(d) else 0
        if i >= n:
            if ri % mp:
                return None
            continue
        g = gcd(di, mp)
        if ri % g:
            return None
        step = mp // g
        z.append(((ri // g) * pow(di // g, -1, step)) % step if step > 1 else 0)
    beta = tuple(sum(vij * zj for vij, zj in zip(row, z)) % mp for row in V)
    if coboundary(G, beta, mp) != lifted:
        raise VerificationFailure("coboundary solver produced a wrong witness", detail=beta)
    return beta


def class_trivial_in_U1(theta: GroupCocycle2) -> bool:
    """Whether θ is a coboundary of a circle-valued cochain.

    If θ = δβ for some circle-valued β, then β^m is a character of G, hence
    takes values in μ_|G|, so β itself can be taken μ_{m·|G|}-valued.
    """
    return is_coboundary(theta, theta.modulus * theta.group.order) is not None


# ---------------------------------------------------------------------------
# the image in H²(G, U(1))


def characters(G: FiniteGroup, N: int) -> list[tuple[int, ...]]:
    """Generators of Hom(G, ℤ/N) as value tuples indexed by group elements."""
    basis = _NormalizedBasis.of(G)
    if basis.k == 0:
        return []
    diag = diagonalize_mod(_delta1_normalized(G, basis), N)
    out = []
    for v in diag.kernel_generators():
        phi = [0] * G.order
        for a in basis.nonidentity:
            phi[a] = int(v[basis.position[a]])
        out.append(tuple(phi))
    return out


def bockstein(G: FiniteGroup, phi: Sequence[int], N: int, m: int) -> GroupCocycle2:
    """The ℤ/m cocycle ``δ(φ̃/m)`` attached to a character ``φ: G → ℤ/N``.

    ``φ̃`` lifts φ to representatives in ``[0, N)``; as a U(1)-valued cocycle
    it is the coboundary of an m-th root of ``exp(2πi·φ/N)``.
    """
    t = G.table
    vals = []
    for a in range(G.order):
        row = []
        for b in range(G.order):
            s = phi[a] % N + phi[b] % N - phi[t[a][b]] % N
            if s % N:
                raise ValueError("not a homomorphism")
            row.append(s // N)
        vals.append(row)
    return GroupCocycle2(G, m, vals)


@dataclass(frozen=True, eq=False)
class DiscreteTorsion:
    """The image of H²(G, ℤ/m) in H²(G, U(1)), as ⊕ ℤ/dᵢ with generators."""

    group: FiniteGroup
    modulus: int
    invariant_factors: tuple[int, ...]
    generator_cocycles: tuple[GroupCocycle2, ...]
    cohomology: CohomologyGroup
    bockstein_classes: tuple[GroupCocycle2, ...]
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def generators(self):
        return self.generator_cocycles

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "invariant_factors": list(self.invariant_factors),
            "generators": [
                {"order": d, "values": [list(r) for r in gamma.values]}
                for d, gamma in zip(self.invariant_factors, self.generator_cocycles)
            ],
            "checks": dict(self.checks),
        }


def discrete_torsion(G: FiniteGroup, m: int | None = None, cap: int = DEFAULT_DIMENSION_CAP,
                     verify: bool = True) -> DiscreteTorsion:
    """Classes of H²(G, ℤ/m) that stay nontrivial in H²(G, U(1)); ``m`` defaults to ``|G|``.

    Once ``|G|`` divides ``m`` this is all of H²(G, U(1)).
    """
    m = G.order if m is None else m
    H = h2(G, m, cap=cap, verify=verify)
    N = G.order
    kernel = [bockstein(G, phi, N, m) for phi in characters(G, N)]
    r = len(H.invariant_factors)
    coords = [H.coordinates(theta) for theta in kernel]
    if r == 0:
        return DiscreteTorsion(G, m, (), (), H, tuple(kernel), {"generators_verified": True})
    S = IntegerMatrix.from_rows(
        [[c[i] for c in coords] + [H.invariant_factors[i] if i == l else 0 for l in range(r)] for i in range(r)],
        len(coords) + r,
    )
    snf = smith_normal_form(S, inverses=True, track_left=True)
    D = snf.D.diagonal()
    factors, gens = [], []
    for j in range(r):
        if D[j] > 1:
            factors.append(D[j])
            gens.append(H.class_of([snf.U_inv[i, j] for i in range(r)]))
    T = DiscreteTorsion(G, m, tuple(factors), tuple(gens), H, tuple(kernel), {})
    if verify:
        for i, (d, gamma) in enumerate(zip(factors, gens)):
            if not class_trivial_in_U1(gamma.scale(d)):
                raise VerificationFailure(f"{d}·τ_{i} survives in U(1)", detail=i)
            for q in range(1, d):
                if class_trivial_in_U1(gamma.scale(q)):
                    raise VerificationFailure(f"{q}·τ_{i} dies in U(1); expected order {d}", detail=i)
        for theta in kernel:
            if not class_trivial_in_U1(theta):
                raise VerificationFailure("a Bockstein class survives in U(1)")
        T.checks["generators_verified"] = True
    return T


def torsion_complete(G: FiniteGroup, m: int) -> bool:
    """Whether ℤ/m coefficients already see every class of H²(G, U(1))."""
    if m % G.order == 0:
        return True
    return discrete_torsion(G, m).invariant_factors == discrete_torsion(G, G.order).invariant_factors
