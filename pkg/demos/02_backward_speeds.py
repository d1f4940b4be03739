"""
Backward-orbit speeds and their asymptotic rates
================================================

The total speed v(t) is the hyperbolic distance from the base point to the
backward orbit point at time t < 0.  It splits into an orthogonal part
(progress toward the repelling boundary point) and a tangential part
(sideways drift), and the three satisfy a Pythagorean sandwich

    v_o + v_T - log(2)/2  <=  v  <=  v_o + v_T.

Hyperbolic petals have linear speed with slope |lam|/2; parabolic petals
slow down to logarithmic growth.
"""

import math

from petallab import by_name, dyadic_grid, slope_estimate, speed_series

grid = dyadic_grid(0, 16)

for name, label in (("strip-slit", "upper"),
                    ("sector-parabolic", "main"),
                    ("koebe-elliptic", "main")):
    model = by_name(name)
    petal = model.petal(label)
    series = speed_series(model, petal, petal.base_default, grid)
    print(f"{name}/{label}  (lam = {petal.lam})")
    print("      t            v          v_o          v_T")
    for s in series.samples[::4]:
        print(f"  {s.t:10.0f}  {s.v:11.4f}  {s.v_o:11.4f}  {s.v_T:11.6f}")

    # Fit the tail: hyperbolic petals are linear in t, the parabolic one
    # is linear in log|t| instead.
    if petal.kind == "hyperbolic":
        slope, r2 = slope_estimate(series, mode="linear_in_t")
        print(f"  linear slope {slope:.6f} (target {0.5 * petal.lam}), "
              f"r2 = {r2:.6f}")
    else:
        slope, r2 = slope_estimate(series, mode="linear_in_log")
        print(f"  log-slope {slope:.4f} per log|t|, r2 = {r2:.6f}")

    # Check the sandwich at the deepest sample.
    s = series.samples[-1]
    lo = s.v_o + s.v_T - 0.5 * math.log(2.0)
    hi = s.v_o + s.v_T
    print(f"  sandwich at t = {s.t:.0f}: "
          f"{lo:.4f} <= {s.v:.4f} <= {hi:.4f}")
    print()
