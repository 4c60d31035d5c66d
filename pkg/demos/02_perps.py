"""Perps between submodules of M and of its dual M* = Hom(M, R)."""

from perpcalc import build_ring, dual_module, free_module, submodule_generated

R = build_ring("zmod 4")
M = free_module(R, 1)
D = dual_module(M)
print("M = Z/4 as a right module; M* is realized as coordinate vectors on the left")
for X in M.lattice():
    Xp = D.perp(X)
    print(f"  X = {X.describe()!s:24} X^perp = {Xp.describe()!s:24} X^perp^perp = {D.perp_dual(Xp).describe()}")

# over the local ring k[x,y]/(x,y)^2 the double perp can be strictly larger
L = build_ring("quot gf2 [x,y]/(x^2,xy,y^2)")
F = free_module(L, 1)
DL = dual_module(F)
X = submodule_generated(F, [L.parse("x")])
print("\nlocal ring, X = (x):")
print("  X^perp      =", DL.perp(X).describe())
print("  X^perp^perp =", DL.perp_dual(DL.perp(X)).describe())
