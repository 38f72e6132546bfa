"""Vacation-model closed forms: where mixed service stops helping.

For a single queue with fixed-length server vacations the low-class mean
wait has explicit formulas under gated and mixed service.  The gated curve
is a straight line in the high-class rate; the mixed curve is convex and
starts below it whenever the vacation exceeds 2*rho/(1+rho).  Their crossing
point has a closed form, checked here against direct evaluation.
"""

from priopoll import GATED, MIXED, vacation_crossover, vacation_mean_wait_low

RHO = 0.8

for s in (0.5, 1.0, 10.0, 1e6):
    star = vacation_crossover(RHO, s)
    name = f"S = {s:g}"
    if star is None:
        print(f"{name}: vacation too short, gated is better for any split")
        continue
    print(f"{name}: crossover at lambda_high = {star:.6f} (rho = {RHO})")
    for x in (0.25 * star, star, min(RHO * 0.999, 1.5 * star)):
        g = vacation_mean_wait_low(x, RHO - x, s, GATED)
        m = vacation_mean_wait_low(x, RHO - x, s, MIXED)
        marker = "mixed better" if m < g else ("equal" if m == g else "gated better")
        print(f"   lam_high {x:8.5f}: gated {g:12.4f}  mixed {m:12.4f}  [{marker}]")

print("\nAs S grows the crossover approaches rho: promoting almost all the")
print("traffic still pays off when vacations dominate the cycle.")
