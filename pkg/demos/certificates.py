"""What a certificate looks like, and how verification catches a forgery.

Runs on M12: one certificate of each kind is printed in record form, then a
Cartan certificate has one braiding scalar altered and is re-checked.
"""

import dataclasses

from nichols import classify_group, verify_certificate
from nichols.criteria import CartanSubspace, CertificateError
from nichols.cyclo import Cyclotomic
from nichols.records import emit_verdict

vs = classify_group("m12")
shown = set()
for v in vs:
    kind = v.certificate.kind if v.certificate is not None else None
    if kind in shown:
        continue
    shown.add(kind)
    print(emit_verdict(v, 12))

cartan = next(v for v in vs if isinstance(v.certificate, CartanSubspace) and v.degree == 1)
c = cartan.certificate
q = [list(row) for row in c.q]
q[0][1] = q[0][1] * Cyclotomic(-1)
bad = dataclasses.replace(cartan, certificate=dataclasses.replace(c, q=tuple(map(tuple, q))))
print(f"genuine m12 j={cartan.j} k={cartan.k}:", verify_certificate(cartan))
try:
    verify_certificate(bad)
except CertificateError as exc:
    print("tampered:", exc)
