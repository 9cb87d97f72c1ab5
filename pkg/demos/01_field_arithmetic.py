"""Field contexts: moduli, discrete-log tables, traces, cubes.

Run:  python demos/01_field_arithmetic.py
"""

from apn_forge import mk_field

ctx = mk_field(6)
print(f"GF(2^6) with modulus 0x{ctx.modulus:X}, primitive element alpha = 0x{ctx.alpha:X}")
print(f"multiplicative order {ctx.mult_order}, cube-coset size k = {ctx.k}")

a = ctx.alpha_pow(11)
b = ctx.alpha_pow(50)
print(f"\nalpha^11 * alpha^50 = alpha^{ctx.dlog(ctx.mul(a, b))}  (log arithmetic)")
print(f"inverse of alpha^11 is alpha^{ctx.dlog(ctx.inv(a))}")

print("\ntrace values are balanced:")
tb = ctx.trace_table()
print(f"  #trace=0: {(tb == 0).sum()}, #trace=1: {(tb == 1).sum()}")

print("\nrelative trace onto GF(2^3) lands in the subfield (y^8 = y):")
for x in (1, a, 0x2F):
    y = ctx.rel_trace(3, x)
    print(f"  Tr^3(0x{x:02X}) = 0x{y:02X}, y^8 = 0x{ctx.pow(y, 8):02X}")

print("\ncubes have three roots each on even dimensions:")
c = ctx.pow(a, 3)
print(f"  cube_roots(alpha^33) = {[hex(r) for r in ctx.cube_roots(ctx.alpha_pow(33))]}")
print(f"  is_cube(alpha) = {ctx.is_cube(ctx.alpha)} (alpha generates, so not a cube)")
