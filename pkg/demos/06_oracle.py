"""Cross-check the fast path against the brute-force oracle."""

from perpcalc import build_ring, free_module
from perpcalc.oracle import cross_check

for spec, n in [("zmod 4", 2), ("tri 2 over gf 2 1", 1), ("quot gf2 [x]/(x^2)", 2)]:
    R = build_ring(spec)
    for side in ("right", "left"):
        rep = cross_check(free_module(R, n, side))
        print(f"{spec:22} R^{n} {side:5}  passed={rep.passed}  checks={sum(rep.checks.values())}")
