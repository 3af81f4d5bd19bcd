import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from loopgroupoid.core import (
    EXHAUSTIVE_ASSOCIATIVITY_LIMIT,
    FiniteGroupoid,
    GroupoidMorphism,
    action_from_generator_images,
    action_groupoid,
    build_action,
    build_group_from_permutations,
    build_group_from_table,
    compose_morphisms,
    connected_components,
    delooping,
    disjoint_union,
    identity_morphism,
    is_isomorphism,
    isotropy,
    relabel_groupoid,
    skeleton,
    subgroup,
    validate_groupoid,
    validate_morphism,
)
from loopgroupoid.errors import (
    CapExceeded,
    InvalidAction,
    NoIdentity,
    NoInverse,
    NonAssociative,
    NotLatinSquare,
    OrderCapExceeded,
    ValidationError,
)
from loopgroupoid.groups import (
    conjugation_action,
    cyclic,
    klein_four,
    right_translation_action,
    small_groups,
    swap_action,
    symmetric,
    trivial_action,
)
from oracles import brute_isomorphic

# a non-associative loop of order 5 (identity 0)
LOOP5 = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]


# -- groups ------------------------------------------------------------------


def test_trivial_group_table():
    G = build_group_from_table([[0]])
    assert G.order == 1 and G.identity == 0 and G.inverse == (0,)


def test_z2_table():
    G = build_group_from_table([[0, 1], [1, 0]])
    assert G.order == 2 and G.inverse[1] == 1


def test_z4_row_shift_matches_modular_addition():
    G = build_group_from_table([[(a + b) % 4 for b in range(4)] for a in range(4)])
    assert G.identity == 0 and G.inverse[1] == 3
    assert all(G.mul(a, b) == (a + b) % 4 for a in range(4) for b in range(4))


def test_no_identity():
    with pytest.raises(NoIdentity):
        build_group_from_table([[1, 0], [1, 0]])


def test_no_inverse_names_element():
    # 0 is the identity, but nothing multiplies 2 back to 0
    with pytest.raises(NoInverse) as info:
        build_group_from_table([[0, 1, 2], [1, 0, 2], [2, 2, 2]])
    assert info.value.witness == 2


def test_not_latin_square():
    # identity 0, inverses exist, but row 1 repeats an entry
    with pytest.raises(NotLatinSquare):
        build_group_from_table([[0, 1, 2, 3], [1, 0, 3, 3], [2, 3, 0, 1], [3, 2, 1, 0]])


def test_non_associative_loop_names_triple():
    with pytest.raises(NonAssociative) as info:
        build_group_from_table(LOOP5)
    a, b, c = info.value.witness
    t = LOOP5
    assert t[t[a][b]][c] != t[a][t[b][c]]


def test_light_test_path_detects_large_nonassociative_loop():
    k = 14
    n = 5 * k
    assert n > EXHAUSTIVE_ASSOCIATIVITY_LIMIT
    T = [[LOOP5[a // k][b // k] * k + (a % k + b % k) % k for b in range(n)] for a in range(n)]
    with pytest.raises(NonAssociative) as info:
        build_group_from_table(T)
    a, b, c = info.value.witness
    assert T[T[a][b]][c] != T[a][T[b][c]]


def test_large_group_passes_light_test():
    G = symmetric(5)  # order 120 goes through the generating-set branch
    assert G.order == 120


def test_table_shape_errors():
    with pytest.raises(ValidationError):
        build_group_from_table([[0, 1], [1]])
    with pytest.raises(ValidationError):
        build_group_from_table([[0, 5], [5, 0]])
    with pytest.raises(ValidationError):
        build_group_from_table([])


def test_order_cap_on_table():
    with pytest.raises(OrderCapExceeded):
        build_group_from_table([[(a + b) % 5 for b in range(5)] for a in range(5)], cap=4)


def test_permutation_closure_s3():
    G = build_group_from_permutations(3, [(1, 0, 2), (1, 2, 0)])
    assert G.order == 6
    assert G.elements[0] == (0, 1, 2)


def test_permutation_closure_z2():
    assert build_group_from_permutations(2, [(1, 0)]).order == 2


def test_permutation_closure_klein():
    G = build_group_from_permutations(4, [(1, 0, 3, 2), (2, 3, 0, 1)])
    assert G.order == 4
    assert all(G.mul(a, a) == G.identity for a in range(4))


def test_permutation_cap():
    with pytest.raises(OrderCapExceeded):
        build_group_from_permutations(5, [(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)], cap=100)


def test_bad_permutation():
    with pytest.raises(ValidationError):
        build_group_from_permutations(3, [(0, 0, 1)])


def test_permutation_product_convention():
    # (p·q)[i] = q[p[i]]: p first, then q
    G = symmetric(3)
    for a in range(6):
        for b in range(6):
            p, q = G.elements[a], G.elements[b]
            assert G.elements[G.mul(a, b)] == tuple(q[p[i]] for i in range(3))


def test_catalog_groups_are_groups():
    for name, G in small_groups().items():
        t = np.array(G.table)
        n = G.order
        assert (t[t] == t[np.arange(n)[:, None, None], t[None, :, :]]).all(), name
        assert all(G.mul(a, G.inv(a)) == G.identity for a in range(n))


def test_catalog_pairwise_non_isomorphic_small():
    gs = [G for G in small_groups().values() if G.order <= 6]
    for i, G in enumerate(gs):
        for H in gs[i + 1 :]:
            assert not brute_isomorphic(G.table, H.table)


def test_subgroup_closure_required():
    G = symmetric(3)
    with pytest.raises(ValidationError):
        subgroup(G, [0, 1, 2])


# -- actions -----------------------------------------------------------------


def test_action_identity_must_fix():
    with pytest.raises(InvalidAction):
        build_action(cyclic(2), [(1, 0), (1, 0)])


def test_action_homomorphism_violation_has_witness():
    # ℤ/3 where 1 and 2 act by the same transposition: not an action
    with pytest.raises(InvalidAction) as info:
        build_action(cyclic(3), [(0, 1, 2), (1, 0, 2), (1, 0, 2)])
    assert info.value.witness is not None


def test_action_from_generator_images_matches_full_table():
    G = symmetric(3)
    A = conjugation_action(G)
    B = action_from_generator_images(G, 6, {1: A.action[1], 2: A.action[2]})
    assert B.action == A.action


def test_generator_images_must_generate():
    with pytest.raises(InvalidAction):
        action_from_generator_images(klein_four(), 2, {1: (1, 0)})


def test_generator_images_inconsistent():
    with pytest.raises(InvalidAction):
        action_from_generator_images(cyclic(3), 3, {1: (1, 0, 2)})


def test_points_cap():
    with pytest.raises(CapExceeded):
        build_action(cyclic(1), [tuple(range(10))], cap_points=5)


# -- groupoids ---------------------------------------------------------------


def test_delooping_examples():
    T = delooping(build_group_from_table([[0]]))
    assert (T.num_objects, T.num_arrows) == (1, 1)
    S = delooping(symmetric(3))
    assert (S.num_objects, S.num_arrows) == (1, 6)
    Z2 = delooping(cyclic(2))
    assert Z2.compose[(1, 1)] == Z2.identity[0]
    assert validate_groupoid(S).ok


def test_action_groupoid_examples():
    T = action_groupoid(trivial_action(cyclic(1), 4))
    assert T.num_objects == 4 and all(T.identity[x] == x for x in range(4))
    swap2 = action_groupoid(build_action(cyclic(2), [(0, 1), (1, 0)]))
    assert (swap2.num_objects, swap2.num_arrows, len(connected_components(swap2))) == (2, 4, 1)
    K = action_groupoid(swap_action())
    assert connected_components(K) == [(0, 1), (2,)]
    assert isotropy(K, 0).order == 1 and isotropy(K, 2).order == 2


def test_action_groupoid_composition_rule():
    A = conjugation_action(symmetric(3))
    K = action_groupoid(A)
    G = A.group
    for x in range(A.points):
        for g in range(6):
            y = A.act(x, g)
            for h in range(6):
                assert K.compose[(x * 6 + g, y * 6 + h)] == x * 6 + G.mul(g, h)


def test_every_constructed_groupoid_validates():
    for G in small_groups().values():
        assert validate_groupoid(delooping(G)).ok
        assert validate_groupoid(action_groupoid(conjugation_action(G))).ok
        assert validate_groupoid(action_groupoid(right_translation_action(G))).ok


def _broken(K: FiniteGroupoid, pair, value):
    comp = dict(K.compose)
    comp[pair] = value
    return FiniteGroupoid(K.num_objects, K.source, K.target, K.identity, K.inverse, comp)


def test_validate_reports_broken_associativity():
    K = delooping(cyclic(3))
    # 1·1 = 1 breaks associativity (and the unit laws elsewhere stay intact)
    bad = _broken(K, (1, 1), 1)
    report = validate_groupoid(bad)
    assert not report.ok
    assert "associativity" in report.kinds()
    v = next(v for v in report.violations if v.kind == "associativity")
    a, b, c = v.witness
    assert bad.compose[(bad.compose[(a, b)], c)] != bad.compose[(a, bad.compose[(b, c)])]


def test_validate_reports_missing_composite():
    K = delooping(cyclic(2))
    comp = dict(K.compose)
    del comp[(1, 1)]
    bad = FiniteGroupoid(1, K.source, K.target, K.identity, K.inverse, comp)
    assert "compose_missing" in validate_groupoid(bad).kinds()


def test_validate_reports_noncomposable_entry():
    K = action_groupoid(swap_action())
    comp = dict(K.compose)
    comp[(0, 0 * 2 + 0 + 4)] = 0  # (point 0, e) then (point 2, e): not composable
    bad = FiniteGroupoid(K.num_objects, K.source, K.target, K.identity, K.inverse, comp)
    assert "compose_not_composable" in validate_groupoid(bad).kinds()


def test_validate_reports_bad_inverse():
    K = delooping(cyclic(3))
    bad = FiniteGroupoid(1, K.source, K.target, K.identity, (0, 1, 1), dict(K.compose))
    kinds = validate_groupoid(bad).kinds()
    assert "right_inverse" in kinds and "left_inverse" in kinds


def test_structural_range_errors():
    with pytest.raises(ValidationError):
        FiniteGroupoid(1, (0,), (1,), (0,), (0,), {})


def test_components_examples():
    assert len(connected_components(delooping(symmetric(3)))) == 1
    assert len(connected_components(action_groupoid(trivial_action(cyclic(1), 5)))) == 5
    assert len(connected_components(action_groupoid(swap_action()))) == 2


def test_isotropy_of_delooping_is_the_group():
    G = symmetric(3)
    assert brute_isomorphic(isotropy(delooping(G), 0).table, G.table)


def test_skeleton_examples():
    (entry,) = skeleton(delooping(symmetric(3)))
    assert entry.size == 1 and entry.isotropy.order == 6
    G = klein_four()
    (entry,) = skeleton(action_groupoid(right_translation_action(G)))
    assert entry.size == G.order and entry.isotropy.order == 1
    sk = skeleton(action_groupoid(swap_action()))
    assert [(e.size, e.isotropy.order) for e in sk] == [(1, 2), (2, 1)]


def test_disjoint_union_examples():
    parts = [delooping(cyclic(k)) for k in (1, 2, 3)]
    U = disjoint_union(parts)
    assert len(connected_components(U)) == 3 and validate_groupoid(U).ok
    E = disjoint_union([])
    assert E.num_objects == 0 and E.num_arrows == 0


def test_counts_of_action_groupoid():
    for G in [cyclic(4), symmetric(3)]:
        A = conjugation_action(G)
        K = action_groupoid(A)
        assert K.num_arrows == A.points * G.order and K.num_objects == A.points


# -- morphisms ---------------------------------------------------------------


def test_identity_and_composition_of_morphisms():
    K = action_groupoid(swap_action())
    I = identity_morphism(K)
    assert validate_morphism(I).ok and is_isomorphism(I)
    assert compose_morphisms(I, I).arrow_map == I.arrow_map


def test_morphism_violations_reported():
    K = delooping(cyclic(2))
    F = GroupoidMorphism(K, K, (0,), (1, 1))  # identity sent to the generator
    assert not validate_morphism(F).ok


@st.composite
def relabelings(draw):
    G = draw(st.sampled_from([cyclic(3), symmetric(3), klein_four()]))
    K = action_groupoid(conjugation_action(G))
    operm = draw(st.permutations(range(K.num_objects)))
    aperm = draw(st.permutations(range(K.num_arrows)))
    return K, list(operm), list(aperm)


@given(relabelings())
def test_relabeling_preserves_validity_and_skeleton(data):
    K, operm, aperm = data
    L = relabel_groupoid(K, operm, aperm)
    assert validate_groupoid(L).ok
    sk = lambda M: sorted((e.size, e.isotropy.order) for e in skeleton(M))  # noqa: E731
    assert sk(K) == sk(L)
    assert len(connected_components(K)) == len(connected_components(L))


def test_random_actions_validate():
    rng = random.Random(5)
    for _ in range(10):
        G = rng.choice(list(small_groups().values()))
        A = right_translation_action(G)
        K = action_groupoid(A)
        assert validate_groupoid(K).ok


def test_isotropy_isomorphic_within_components():
    from loopgroupoid.morita import groups_isomorphic

    for G in [symmetric(3), klein_four(), cyclic(4)]:
        K = action_groupoid(conjugation_action(G))
        for comp in connected_components(K):
            base = isotropy(K, comp[0])
            for x in comp[1:]:
                assert groups_isomorphic(base, isotropy(K, x)) is not None


def test_union_of_s3_centralizers():
    from loopgroupoid.inertia import conjugacy_classes

    data = conjugacy_classes(symmetric(3))
    U = disjoint_union([delooping(C) for C in data.centralizers])
    orders = [isotropy(U, comp[0]).order for comp in connected_components(U)]
    assert orders == [6, 2, 3]
