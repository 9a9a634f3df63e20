"""M23 and M24: the full sweep plus an independent replay of every certificate.

Takes a few minutes, almost all of it in verification.
"""

import time

from nichols import classify_group, verify_certificate
from nichols.report import markdown, summarize

for g in ("m23", "m24"):
    t = time.perf_counter()
    vs = classify_group(g)
    t1 = time.perf_counter()
    ok = sum(verify_certificate(v) for v in vs if v.certificate is not None)
    s = summarize(vs)
    print(f"{g.upper()}: classified in {t1 - t:.0f}s, {ok} certificates replayed in {time.perf_counter() - t1:.0f}s")
    print(markdown(vs).split("| j | k |")[0])
