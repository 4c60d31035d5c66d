"""The three infinite-dimensional examples, by exact truncation."""

from perpcalc.gallery import run_example

for which in ("i", "ii", "iii"):
    rep = run_example(which, q=2, bounds=(8, 16), p_max=4)
    print(f"example ({which}): {rep.title}  ok={rep.ok}")
    for v in rep.verdicts:
        print(f"   [{'pass' if v['holds'] else 'FAIL'}] {v['name']}")
    for note in rep.notes:
        print(f"   note: {note}")
