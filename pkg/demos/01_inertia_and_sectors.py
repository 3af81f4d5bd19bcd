"""
Loops in a finite groupoid
==========================

The inertia groupoid of a groupoid K has the loops of K as objects, and an
arrow v carries a loop a to v⁻¹·a·v.  For a group G this is G acting on
itself by conjugation, so its components are the conjugacy classes.
"""

from loopgroupoid import (
    action_groupoid,
    conjugacy_classes,
    connected_components,
    delooping,
    disjoint_union,
    inertia_groupoid,
    isotropy,
    morita_equivalent,
    verify_sector_equivalence,
)
from loopgroupoid.groups import (
    conjugation_action,
    cycle_action,
    klein_four,
    right_translation_action,
    swap_action,
    symmetric,
    trivial_group,
)

# %% S3 as a one-object groupoid and its inertia groupoid
G = symmetric(3)
IK = inertia_groupoid(delooping(G))
print("objects of the inertia groupoid:", IK.num_objects)
print("arrows:", IK.num_arrows)
for comp in connected_components(IK):
    loops = [G.label(IK.object_labels[x]) for x in comp]
    print(f"  component {loops}: isotropy of order {isotropy(IK, comp[0]).order}")

# %% The same data, one centralizer per conjugacy class
data = conjugacy_classes(G)
union = disjoint_union([delooping(C) for C in data.centralizers])
cert = morita_equivalent(IK, union)
print("\nequivalent to the union of centralizers:", cert is not None and cert.verify())
print("isotropy orders along the certificate:", cert.isotropy_orders)

# Each pair comes with an explicit isomorphism of isotropy groups.
for match in cert.matches:
    print("  ", match.left.objects, "->", match.right.objects, "via", match.isomorphism)

# %% Twisted sectors of a global quotient
# For an action of G on X the inertia groupoid of [X/G] splits into one
# sector [X^g / C(g)] per conjugacy class.  Sectors with empty fixed sets
# stay in the list so the shape is indexed by classes.
for name, A in [("swap on 3 points", swap_action()),
                ("S3 by conjugation", conjugation_action(G)),
                ("Z/4 on a 4-cycle", cycle_action(4))]:
    eq = verify_sector_equivalence(A)
    print(f"\n{name}: {A.points} points, inertia groupoid has {eq.inertia.num_objects} objects")
    for s in eq.decomposition.sectors:
        print(f"  g = {A.group.label(s.representative)}: |class| = {len(s.class_members)}, "
              f"|X^g| = {len(s.fixed_points)}, |C(g)| = {s.centralizer.order}")
    print("  checks:", ", ".join(k for k, v in eq.checks.items() if v))

# %% A free action collapses to a point
K = action_groupoid(right_translation_action(klein_four()))
print("\n[V4/V4] ≃ point:", morita_equivalent(K, delooping(trivial_group())) is not None)
