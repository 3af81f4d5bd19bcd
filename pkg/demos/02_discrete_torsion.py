"""
Discrete torsion and inner local systems
========================================

A U(1)-valued 2-cocycle θ on G is modelled by exponents mod m.  The group
H²(G, ℤ/m) is bigger than its image in H²(G, U(1)): some classes become
coboundaries once the cochain may take any circle value.  The image is the
discrete torsion, and each torsion class gives one character per twisted
sector through ρ(g, h) = θ(g, h) − θ(h, h⁻¹gh).
"""

from loopgroupoid import (
    GroupCocycle2,
    class_trivial_in_U1,
    discrete_torsion,
    h2,
    inner_local_system,
    is_coboundary,
)
from loopgroupoid.groups import cyclic, klein_four, small_groups, trivial_action

# %% The smallest example where the two groups differ
V4 = klein_four()
print("H²(V4, Z/2) invariant factors:", h2(V4, 2).invariant_factors)
print("image in H²(V4, U(1)):        ", discrete_torsion(V4, 2).invariant_factors)

# %% A class that dies in U(1)
# On Z/2 the cocycle with θ(g, g) = 1 is not a coboundary mod 2, but it is
# one mod 4: β(g) = i is a square root of -1 with β(g)² = -1 = θ(g, g).
theta = GroupCocycle2(cyclic(2), 2, ((0, 0), (0, 1)))
print("\ncoboundary mod 2:", is_coboundary(theta, 2))
print("coboundary mod 4:", is_coboundary(theta, 4))
print("trivial in U(1): ", class_trivial_in_U1(theta))

# %% Discrete torsion across the catalog (m = |G| sees every class)
print()
for name, G in small_groups().items():
    if G.order <= 12:
        T = discrete_torsion(G)
        print(f"  {name:6s} |G| = {G.order:2d}  H²(G, U(1)) ≅ {T.invariant_factors or 'trivial'}")

# %% The Klein four-group torsion and its characters
# θ((a1, a2), (b1, b2)) = a2·b1, with element (a1, a2) stored at 2·a1 + a2.
torsion = GroupCocycle2.from_function(V4, 2, lambda a, b: (a % 2) * (b // 2))
print("\nsurvives in U(1):", not class_trivial_in_U1(torsion))
L = inner_local_system(torsion, trivial_action(V4, 1))
for chi in L.characters:
    values = {V4.label(h): v for h, v in zip(chi.centralizer, chi.values)}
    print(f"  sector g = {V4.label(chi.representative)}: χ = {values}")
