"""Classify every pair of M11, M12 and M22 and print the survivors.

    python demos/classify_fast_groups.py
"""

import time

from nichols import classify_group
from nichols.report import summarize, survivors_table

for g in ("m11", "m12", "m22"):
    t = time.perf_counter()
    vs = classify_group(g)
    s = summarize(vs)
    print(f"{g.upper()}: {s.pairs} pairs, {s.abelian_infinite} infinite after the abelian stage, "
          f"{s.abelian_negative} negative; {s.negative} left at the end ({time.perf_counter() - t:.1f}s)")
    for r in survivors_table(vs):
        print(f"    j={r['j']:<3} s of order {r['order']:<3} centralizer {r['centralizer']:<12} "
              f"{r['representation']:<28} dim M = {r['dim']}")
