"""One test per acceptance criterion; the terminal summary prints PASS/FAIL lines."""

import itertools
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from acceptance_log import RESULTS
from conftest import GOLDEN
from loopgroupoid.cohomology import (
    GroupCocycle2,
    coboundary,
    cocycle_basis,
    discrete_torsion,
    h2,
    is_coboundary,
)
from loopgroupoid.core import action_groupoid, connected_components, delooping, disjoint_union, isotropy
from loopgroupoid.gerbe import gerbe_from_group_cocycle, inner_local_system, transgress, verify_coboundary_invariance
from loopgroupoid.groups import (
    action_sum,
    all_subgroups,
    conjugation_action,
    coset_action,
    cycle_action,
    cyclic,
    dihedral,
    klein_four,
    quaternion,
    small_groups,
    swap_action,
    symmetric,
    trivial_action,
    trivial_group,
)
from loopgroupoid.inertia import conjugacy_classes, hom_Z_groupoid, inertia_groupoid, verify_sector_equivalence
from loopgroupoid.morita import morita_equivalent
from loopgroupoid.smith import IntegerMatrix, has_divisibility_chain, smith_normal_form
from oracles import brute_coboundary_witness, brute_h2
from test_documents_cli import GOLDEN_JOBS, report_text

LIMIT = 60.0
V4 = klein_four()
KLEIN_THETA = GroupCocycle2.from_function(V4, 2, lambda a, b: (a % 2) * (b // 2))


@contextmanager
def criterion(key, text):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < LIMIT, f"took {elapsed:.1f}s"
    except BaseException as exc:
        RESULTS[key] = ("FAIL", f"{text} [{type(exc).__name__}: {exc}]".replace("\n", " ")[:300])
        raise
    RESULTS[key] = ("PASS", f"{text} ({elapsed:.2f}s)")


def test_criterion_1_inertia_decomposition():
    with criterion(1, "∧Ḡ ≃ ⊔ C̄(g) for ℤ/4, V4, S3, D4, Q8 with matching counts and orders"):
        for G in [cyclic(4), V4, symmetric(3), dihedral(4), quaternion()]:
            data = conjugacy_classes(G)
            IK = inertia_groupoid(delooping(G))
            U = disjoint_union([delooping(C) for C in data.centralizers])
            cert = morita_equivalent(IK, U)
            assert cert is not None and cert.verify()
            comps = connected_components(IK)
            assert len(comps) == len(data)
            assert sorted(isotropy(IK, c[0]).order for c in comps) == sorted(C.order for C in data.centralizers)
            if G.order == 6:
                assert cert.isotropy_orders == (6, 2, 3)


def _random_action(rng):
    groups = [G for G in small_groups().values() if G.order <= 8]
    G = rng.choice(groups)
    subs = all_subgroups(G)
    budget = rng.randint(1, 10)
    parts, used = [], 0
    for _ in range(6):
        H = rng.choice(subs)
        k = G.order // len(H)
        if used + k <= budget:
            parts.append(coset_action(G, H))
            used += k
    return action_sum(parts) if parts else trivial_action(G, rng.randint(1, 10))


def test_criterion_2_hom_z_bijection():
    with criterion(2, "Hom(ℤ̄,K) → ∧K commutes with s, t, e, i, m for 20 random action groupoids"):
        rng = random.Random(2024)
        for _ in range(20):
            A = _random_action(rng)
            assert A.group.order <= 8 and A.points <= 10
            model = hom_Z_groupoid(action_groupoid(A))
            F = model.to_inertia
            H, IK = F.domain, F.codomain
            f0, f1 = F.object_map, F.arrow_map
            assert sorted(f0) == list(range(IK.num_objects))
            assert sorted(f1) == list(range(IK.num_arrows))
            assert all(IK.source[f1[a]] == f0[H.source[a]] for a in range(H.num_arrows))
            assert all(IK.target[f1[a]] == f0[H.target[a]] for a in range(H.num_arrows))
            assert all(IK.inverse[f1[a]] == f1[H.inverse[a]] for a in range(H.num_arrows))
            assert all(IK.identity[f0[x]] == f1[H.identity[x]] for x in range(H.num_objects))
            assert set(H.compose) == {(a, b) for a in range(H.num_arrows) for b in H.arrows_from[H.target[a]]}
            assert all(IK.compose[(f1[a], f1[b])] == f1[c] for (a, b), c in H.compose.items())


def test_criterion_3_twisted_sectors():
    with criterion(3, "sector equivalence for the swap, S3 conjugation and ℤ/4 4-cycle actions"):
        for A in [swap_action(), conjugation_action(symmetric(3)), cycle_action(4)]:
            eq = verify_sector_equivalence(A)
            assert eq.ok
            G = A.group
            counted = sum(len(s.class_members) * len(s.fixed_points) for s in eq.decomposition.sectors)
            loops = sum(1 for x in range(A.points) for g in range(G.order) if A.act(x, g) == x)
            assert counted == loops == eq.inertia.num_objects


ORDER_LE_4 = [trivial_group(), cyclic(2), cyclic(3), cyclic(4), V4]


def test_criterion_4a_oracle_equivalence():
    with criterion("4a", "h2 equals the brute-force oracle on all groups of order ≤ 4 with m ≤ 3"):
        for G in ORDER_LE_4:
            for m in (1, 2, 3):
                assert h2(G, m).invariant_factors == brute_h2(G.table, G.identity, m)[0], (G.order, m)


def test_criterion_4b_cyclic():
    with criterion("4b", "H²(ℤ/n, ℤ/n) has invariant factors [n] for n ≤ 4"):
        for n in (1, 2, 3, 4):
            want = () if n == 1 else (n,)
            assert h2(cyclic(n), n).invariant_factors == want
            assert brute_h2(cyclic(n).table, 0, n)[0] == want


def _full_enumeration_v4_z2():
    # every 4×4 table over ℤ/2, no normalization: |Z²| / |B²|
    T = np.array(V4.table)
    tables = ((np.arange(2**16)[:, None] >> np.arange(16)) & 1).reshape(-1, 4, 4)
    a, b, c = np.meshgrid(range(4), range(4), range(4), indexing="ij")
    lhs = tables[:, a, b] + tables[:, T[a, b], c]
    rhs = tables[:, a, T[b, c]] + tables[:, b, c]
    Z = int((((lhs - rhs) % 2) == 0).all(axis=(1, 2, 3)).sum())
    betas = ((np.arange(16)[:, None] >> np.arange(4)) & 1)
    B = {tuple(((beta[:, None] + beta[None, :] - beta[T]) % 2).ravel()) for beta in betas}
    return Z // len(B)


@pytest.mark.xfail(strict=True, reason="H²(ℤ/2×ℤ/2, ℤ/2) has order 8, not 2; see discrete_torsion")
def test_criterion_4c_klein_literal():
    with criterion("4c", "H²(ℤ/2×ℤ/2, ℤ/2) has invariant factors [2] (as literally stated)"):
        assert _full_enumeration_v4_z2() == 8  # the enumeration the statement prescribes
        assert h2(V4, 2).invariant_factors == (2,)


def test_criterion_4d_klein_torsion_image():
    with criterion("4d", "the image of H²(ℤ/2×ℤ/2, ℤ/2) in H²(ℤ/2×ℤ/2, U(1)) has invariant factors [2]"):
        assert discrete_torsion(V4, 2).invariant_factors == (2,)
        assert h2(V4, 2).invariant_factors == brute_h2(V4.table, 0, 2)[0] == (2, 2, 2)


def test_criterion_5_u1_triviality():
    with criterion(5, "ℤ/2 class dies at modulus 4; V4 generator survives at modulus 8"):
        z2 = GroupCocycle2(cyclic(2), 2, ((0, 0), (0, 1)))
        assert is_coboundary(z2, 2) is None
        beta = is_coboundary(z2, 4)
        assert beta is not None and coboundary(cyclic(2), beta, 4) == z2.lift(4)
        assert is_coboundary(KLEIN_THETA, 8) is None
        assert brute_coboundary_witness(V4.table, KLEIN_THETA.lift(8).values, 8) is None


def test_criterion_6_transgression_morphism():
    with criterion(6, "ρ is a groupoid morphism for 100 random kernel-basis cocycles, |G| ≤ 12"):
        rng = random.Random(6)
        pool = [G for G in small_groups().values() if 1 < G.order <= 12]
        bases = {}
        done = 0
        while done < 100:
            G = pool[done % len(pool)]
            m = rng.choice([2, 3, 4, 6, G.order])
            if (G, m) not in bases:
                bases[(G, m)] = cocycle_basis(G, m)
            theta = GroupCocycle2.zero(G, m)
            for gamma in bases[(G, m)]:
                theta = theta + gamma.scale(rng.randrange(m))
            theta = theta + coboundary(G, [rng.randrange(m) for _ in range(G.order)], m)
            K = delooping(G) if done % 2 else action_groupoid(conjugation_action(G))
            T = transgress(gerbe_from_group_cocycle(theta, K), check=False)
            IK = T.inertia
            assert all((T.rho[i] + T.rho[j] - T.rho[k]) % m == 0 for (i, j), k in IK.compose.items())
            done += 1


def test_criterion_7_inner_local_system():
    with criterion(7, "V4 sector (1,0) carries h ↦ h₂; untwisted trivial; invariant under all 2⁴ coboundaries"):
        A = trivial_action(V4, 1)
        L = inner_local_system(KLEIN_THETA, A)
        chi = L.character(2)
        assert chi.centralizer == tuple(range(4)) and chi.values == (0, 1, 0, 1)
        assert L.character(0).is_trivial()
        for beta in itertools.product(range(2), repeat=4):
            assert verify_coboundary_invariance(KLEIN_THETA, beta, A)


def test_criterion_8_snf_contract():
    with criterion(8, "SNF on 200 random matrices up to 20×20: U·M·V = D, unimodular, divisibility chain"):
        rng = random.Random(8)
        for _ in range(200):
            r, c = rng.randint(1, 20), rng.randint(1, 20)
            M = IntegerMatrix.from_rows([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
            U, D, V = smith_normal_form(M)
            assert (U @ M @ V).tolist() == D.tolist()
            assert U.is_unimodular() and V.is_unimodular()
            assert D.is_diagonal() and has_divisibility_chain(D.diagonal())


def test_criterion_9_cli_golden():
    with criterion(9, "sectors, h2 and local-system reports on S3 and V4 match golden files twice"):
        for name, command, inputs in GOLDEN_JOBS:
            golden = (GOLDEN / f"{name}.json").read_text(encoding="utf-8")
            for _ in range(2):
                code, text = report_text(command, inputs)
                assert code == 0 and text == golden, name

