"""Walsh spectra, bent components, and the derivative-sum test.

Run:  python demos/03_spectral_analysis.py
"""

from apn_forge import linmap, mk_field, spectral
from apn_forge.catalog import dillon6
from apn_forge.vbf import Form1, power_map

ctx = mk_field(4)
F = power_map(ctx, 3)

f = F.component(1)
w = spectral.wht(f, ctx)
print("Walsh spectrum of the first component of x^3 over GF(2^4):")
print(" ", list(map(int, w.values)))
print(f"  Parseval holds: {w.parseval_holds()}")

print(f"\nbent components of x^3 at n=4: {spectral.bent_components(F)}"
      f"  (two thirds of {ctx.order - 1} is {2 * (ctx.order - 1) // 3})")

print("\nper-direction derivative sums (equality with 2^(2n+1) <=> APN):")
ok, sums = spectral.apn_sum_check(F)
print(f"  all sums = {sorted(set(sums.values()))}, APN={ok}")

print("\ndim V_lambda histogram for a function that is APN:")
ctx8 = mk_field(8)
form = Form1(linmap.identity(ctx8), linmap.trace_map(ctx8))  # x^3 + Tr(x^9)
prof = spectral.spectral_profile(form.realize())
print(f"  x^3+Tr(x^9) at n=8: gamma = {prof.gamma}, bent = {prof.bent_count}")

print("\nthe Dillon hexanomial shows the bent-count relation is family-specific:")
D = dillon6()
apn_ok, bent, holds = spectral.conjecture_check(D)
print(f"  APN={apn_ok}, bent components={bent}, relation holds={holds} (42 expected for the family)")
