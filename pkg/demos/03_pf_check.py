"""Which corpus rings are PF (self-injective and Kasch on both sides)?"""

from perpcalc import build_ring, is_pf

CORPUS = ["zmod 2", "zmod 4", "zmod 6", "zmod 8", "zmod 9", "gf 2 2 x^2+x+1",
          "quot gf2 [x]/(x^2)", "quot gf2 [x,y]/(x^2,xy,y^2)", "tri 2 over gf 2 1"]

for spec in CORPUS:
    rep = is_pf(build_ring(spec))
    flags = rep.flags()
    line = " ".join(f"{k}={'y' if v else 'n'}" for k, v in flags.items() if k != "is_pf")
    print(f"{spec:32} PF={rep.is_pf!s:5}  {line}")
    for w in rep.witnesses[:1]:
        print(f"{'':32} first witness: {w}")
