"""Non-abelian families found by the exhaustive search.

For a few classes where every abelian subrack gives a negative braiding, the
search produces a D_p family or a pair of octahedral sextets, and the rack
relations are checked directly.
"""

from nichols.criteria import context
from nichols.permcore import format_cycles
from nichols.rack import dp_violation, iter_dp, iter_o2, o2_violation, verify_type_O

for g, j in [("m11", 10), ("m12", 2), ("m22", 4)]:
    ctx = context(g, j)
    print(f"{g.upper()} j={j}, s = {format_cycles(ctx.s)}")
    dp = next(iter(iter_dp(ctx.G, ctx.s, cent=ctx.cent, registry=ctx.registry)), None)
    if dp is not None:
        print(f"  D_{dp.p} family, relations hold: {dp_violation(dp) is None}")
        for i, x in enumerate(dp.elements):
            print(f"    sigma_{i} = {format_cycles(x)}")
        continue
    fam = next(iter(iter_o2(ctx.G, ctx.s, ctx.inter, ctx.registry)), None)
    if fam is None:
        print("  no family")
        continue
    print(f"  O^(2) pair, relations hold: {o2_violation(fam) is None}, "
          f"both octahedral: {verify_type_O(fam.sigma) is not None and verify_type_O(fam.tau) is not None}")
    for name, six in (("sigma", fam.sigma), ("tau", fam.tau)):
        for i, x in enumerate(six, 1):
            print(f"    {name}_{i} = {format_cycles(x)}")
