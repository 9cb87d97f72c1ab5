"""APN verdicts: the reference differential count, the fast kernel test,
the trace-surface scans for the L1(x^3)+L2(x^9) family, and the
quick-reject filters.

Run:  python demos/02_apn_testing.py
"""

import time

from apn_forge import apn, linmap, mk_field
from apn_forge.vbf import Form1, power_map

ctx = mk_field(8)

print("x^3 over GF(2^8):")
v = apn.is_apn_naive(power_map(ctx, 3))
print(f"  naive verdict: APN={v.is_apn}")

print("\nx^9 + Tr(x^3) over GF(2^8) as a structured family member:")
form = Form1(linmap.trace_map(ctx), linmap.identity(ctx))
for test in (apn.is_apn_quadratic, apn.is_apn_lemma1, apn.is_apn_tcondition):
    t0 = time.time()
    v = test(form)
    print(f"  {v.method:10s}: APN={v.is_apn}  ({(time.time()-t0)*1e3:.1f} ms)")

print("\na refuted candidate carries a materialized witness:")
bad = Form1(linmap.trace_map(mk_field(6)), linmap.identity(mk_field(6)))
v = apn.is_apn_lemma1(bad)
w = v.witness
print(f"  n=6: APN={v.is_apn}, witness a=0x{w.a:X} b=0x{w.b:X} xs={[hex(x) for x in w.xs]}")
F = bad.realize()
print(f"  re-check: {[hex(F(x ^ w.a) ^ F(x)) for x in w.xs]} all equal b")

print("\nquick-reject filters knock out most of a binary scan before any full test:")
ctx6 = mk_field(6)
counts = {"parity": 0, "nonzero": 0, "beta": 0, "full test": 0}
for mask in range(ctx6.order):
    f = Form1(linmap.from_mask(ctx6, mask), linmap.identity(ctx6))
    if apn.quick_reject_parity(f):
        counts["parity"] += 1
    elif apn.quick_reject_nonzero(f):
        counts["nonzero"] += 1
    elif apn.quick_reject_beta(f):
        counts["beta"] += 1
    else:
        counts["full test"] += 1
print(f"  x^9+L(x^3), binary L at n=6: {counts}")
