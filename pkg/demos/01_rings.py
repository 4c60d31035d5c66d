"""Build a few finite rings from text specs and look at them."""

from perpcalc import build_ring, ring_axiom_audit

for spec in ["zmod 6", "gf 2 2 x^2+x+1", "quot gf2 [x,y]/(x^2,xy,y^2)", "tri 2 over gf 2 1"]:
    R = build_ring(spec)
    audit = ring_axiom_audit(R)
    print(f"{R.name:34} order {R.order:3}  commutative={R.commutative}  axioms ok={audit.ok}")

# the upper triangular ring is not commutative; its opposite swaps the products
T = build_ring("tri 2 over gf 2 1")
a, b = next((a, b) for a in range(T.order) for b in range(T.order) if T.mul[a, b] != T.mul[b, a])
op = T.opposite()
print(f"\n{T.format(a)} * {T.format(b)} = {T.format(T.mul[a, b])} in R, "
      f"{op.format(op.mul[a, b])} in R^op")
print("opposite of opposite is the same object:", op.opposite() is T)
