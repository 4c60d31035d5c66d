"""Evaluate the PF characterization and look for double-perp witnesses."""

from perpcalc import build_ring, find_witness, verify_main_theorem

for spec in ["zmod 8", "quot gf2 [x]/(x^2)", "quot gf2 [x,y]/(x^2,xy,y^2)", "tri 2 over gf 2 1"]:
    R = build_ring(spec)
    th = verify_main_theorem(R)
    verdicts = " ".join(f"({k})={'T' if v else 'F'}" for k, v in th.verdicts.items())
    print(f"{spec:30} {verdicts}  consistent={th.consistent}")
    w = find_witness(R)
    if w is not None:
        d = w.to_dict()
        print(f"{'':30} witness in {d['module']['side']} R^{d['module']['rank']}: "
              f"{d['submodule']} has double perp {d['double_perp']}")
