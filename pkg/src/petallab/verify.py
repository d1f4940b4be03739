"""One-shot numerical verification of the laboratory's headline claims.

Each check exercises one measurable statement about the model catalog:
speed growth rates, the orthogonal/tangential decomposition, boundary
diagnostics, distance bounds, and structural consistency of the conformal
machinery.  ``run_all`` returns a list of results with measured numbers in
the detail strings; everything is deterministic given the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from .bounds import bound_ratio_series, gaussian_profile, logrecip_profile
from .hmeasure import Arc, approach_angle
from .hypcore import disk_distance, uhp_distance
from .models import (
    CanonicalDomain,
    KoenigsModel,
    Petal,
    by_name,
    catalog,
    sample_petal_omega,
)
from .semigroup import flow, regularity_gap, repelling_diagnostics
from .speeds import (
    dyadic_grid,
    forward_speed,
    slope_estimate,
    speed_series,
    total_speed,
    tangential_speed,
)

__all__ = ["CheckResult", "run_all", "CHECK_NAMES"]

DEFAULT_SEED = 20260817

_HALF_LOG2 = 0.5 * math.log(2.0)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification check."""

    name: str
    passed: bool
    detail: str


def _hyperbolic_slope_cases() -> List[Tuple[KoenigsModel, Petal, float]]:
    m1 = by_name("strip-slit")
    m3 = by_name("koebe-elliptic")
    out = []
    for model, label in ((m1, "upper"), (m3, "main")):
        petal = model.petal(label)
        out.append((model, petal, 0.5 * petal.lam))
    return out


def _all_petals() -> List[Tuple[KoenigsModel, Petal]]:
    return [(model, petal) for model in catalog() for petal in model.petals]


def _check_total_slopes() -> CheckResult:
    grid = dyadic_grid(4, 16)
    parts = []
    ok = True
    for model, petal, target in _hyperbolic_slope_cases():
        series = speed_series(model, petal, petal.base_default, grid)
        slope, r2 = slope_estimate(series, mode="linear_in_t", component="v")
        good = abs(slope - target) <= 0.1 * abs(target)
        ok = ok and good
        parts.append(
            f"{model.name}/{petal.label}: slope {slope:.6f} vs {target} (r2 {r2:.6f})"
        )
    return CheckResult("total-speed-slopes", ok, "; ".join(parts))


def _check_parabolic_envelope() -> CheckResult:
    model = by_name("sector-parabolic")
    petal = model.petal("main")
    base = petal.base_default
    parts = []
    ok = True
    for mag in (1e3, 1e4, 1e6):
        ratio = total_speed(model, petal, base, -mag) / math.log(mag)
        good = 0.24 <= ratio <= 1.01
        ok = ok and good
        parts.append(f"v/log|t| at -1e{int(math.log10(mag))}: {ratio:.4f}")
    t16 = -(2.0**16)
    linear = total_speed(model, petal, base, t16) / abs(t16)
    ok = ok and linear <= 1e-3
    parts.append(f"v(t)/|t| at -2^16: {linear:.3e}")
    return CheckResult("parabolic-speed-envelope", ok, "; ".join(parts))


def _check_tangential_plateau() -> CheckResult:
    parts = []
    ok = True
    for model, petal in _all_petals():
        base = petal.base_default
        v10 = tangential_speed(model, petal, base, -(2.0**10))
        v16 = tangential_speed(model, petal, base, -(2.0**16))
        if petal.kind == "hyperbolic":
            drift = abs(v16 - v10)
            linear = v16 / 2.0**16
            good = drift <= 0.05 and linear <= 1e-3
            parts.append(
                f"{model.name}/{petal.label}: plateau drift {drift:.2e}, "
                f"v_T/|t| {linear:.1e}"
            )
        else:
            growth = v16 - v10
            good = growth >= 1.0
            parts.append(f"{model.name}/{petal.label}: divergence {growth:.3f} >= 1")
        ok = ok and good
    return CheckResult("tangential-plateau-vs-divergence", ok, "; ".join(parts))


def _check_orthogonal_slopes() -> CheckResult:
    grid = dyadic_grid(4, 16)
    parts = []
    ok = True
    for model, petal, target in _hyperbolic_slope_cases():
        series = speed_series(model, petal, petal.base_default, grid)
        slope, r2 = slope_estimate(series, mode="linear_in_t", component="v_o")
        good = abs(slope - target) <= 0.1 * abs(target)
        ok = ok and good
        parts.append(
            f"{model.name}/{petal.label}: slope {slope:.6f} vs {target} (r2 {r2:.6f})"
        )
    m2 = by_name("sector-parabolic")
    petal = m2.petal("main")
    series = speed_series(m2, petal, petal.base_default, grid)
    slope, _ = slope_estimate(series, mode="linear_in_t", component="v_o")
    good = abs(slope) <= 1e-3
    ok = ok and good
    parts.append(f"{m2.name}/{petal.label}: |slope| {abs(slope):.2e} <= 1e-3")
    return CheckResult("orthogonal-speed-slopes", ok, "; ".join(parts))


def _check_pythagorean_sandwich() -> CheckResult:
    grid = dyadic_grid(0, 16)
    worst_low = math.inf
    worst_high = math.inf
    ok = True
    for model, petal in _all_petals():
        series = speed_series(model, petal, petal.base_default, grid)
        for s in series.samples:
            low_slack = s.v - (s.v_o + s.v_T - _HALF_LOG2)
            high_slack = (s.v_o + s.v_T) - s.v
            worst_low = min(worst_low, low_slack)
            worst_high = min(worst_high, high_slack)
            ok = ok and low_slack >= -1e-9 and high_slack >= -1e-9
    detail = (
        f"min slack above v_o+v_T-log(2)/2: {worst_low:.2e}; "
        f"min slack below v_o+v_T: {worst_high:.2e}"
    )
    return CheckResult("pythagorean-sandwich", ok, detail)


def _check_base_independence(rng: np.random.Generator) -> CheckResult:
    grid = dyadic_grid(0, 16)
    worst = -math.inf
    ok = True
    for model, petal in _all_petals():
        pts = sample_petal_omega(model, petal, 40, rng)
        for z, w in zip(pts[::2], pts[1::2]):
            bound = 2.0 * petal.distance(z, w) + 1e-9
            sz = speed_series(model, petal, z, grid)
            sw = speed_series(model, petal, w, grid)
            for a, b in zip(sz.samples, sw.samples):
                for da in (a.v - b.v, a.v_o - b.v_o, a.v_T - b.v_T):
                    worst = max(worst, abs(da) - bound)
                    ok = ok and abs(da) <= bound
    return CheckResult(
        "base-point-independence",
        ok,
        f"20 pairs per petal; worst excess over 2*d(z,w): {worst:.2e}",
    )


def _check_forward_rates() -> CheckResult:
    parts = []
    m1 = by_name("strip-slit")
    base = m1.petal("upper").base_default
    ts = [2.0**k for k in range(4, 17)]
    vs = [forward_speed(m1, base, t) for t in ts]
    tail = len(ts) // 2
    slope = float(np.polyfit(ts[tail:], vs[tail:], 1)[0])
    ok = abs(slope - 0.5) <= 0.05
    parts.append(f"{m1.name}: forward slope {slope:.6f} vs 0.5")
    m2 = by_name("sector-parabolic")
    base2 = m2.petal("main").base_default
    linear = forward_speed(m2, base2, 2.0**16) / 2.0**16
    good = linear <= 1e-3
    ok = ok and good
    parts.append(f"{m2.name}: v(2^16)/2^16 = {linear:.3e}")
    return CheckResult("forward-speed-rates", ok, "; ".join(parts))


def _check_repelling_diagnostics(rng: np.random.Generator) -> CheckResult:
    parts = []
    ok = True
    for model, petal in _all_petals():
        if petal.kind != "hyperbolic":
            continue
        samples = [
            model.disk_of_omega(w)
            for w in sample_petal_omega(model, petal, 1000, rng)
        ]
        rep = repelling_diagnostics(model, petal, samples)
        est_err = abs(rep.ratio_estimate - (-petal.lam))
        good = (
            rep.min_julia_residual >= -1e-9
            and est_err <= 1e-3
            and rep.min_herglotz_real >= -1e-9
        )
        extra = ""
        if model.name == "koebe-elliptic":
            # Closed-form cross-check: the radial ratio equals z/(1+z).
            sigma = rep.sigma_disk
            worst = 0.0
            for k, ratio in enumerate(rep.ratios, start=4):
                zk = sigma * (1.0 - 2.0**-k)
                worst = max(worst, abs(ratio - zk / (1.0 + zk)))
            good = good and worst <= 1e-9
            extra = f", closed-form gap {worst:.1e}"
        ok = ok and good
        parts.append(
            f"{model.name}/{petal.label}: julia {rep.min_julia_residual:.1e}, "
            f"rate err {est_err:.1e}, herglotz {rep.min_herglotz_real:.1e}{extra}"
        )
    return CheckResult("repelling-point-diagnostics", ok, "; ".join(parts))


def _check_bound_ratios() -> CheckResult:
    parts = []
    logrecip = logrecip_profile()
    grid = [-(10.0**k) for k in range(2, 7)]
    ratios = [r for _, r in bound_ratio_series(logrecip, grid)]
    small = ratios[1] <= 0.02
    decreasing = all(a > b for a, b in zip(ratios, ratios[1:]))
    parts.append(
        f"logrecip upper/t^2 at -1e3: {ratios[1]:.6f} <= 0.02, "
        f"decreasing over five decades: {decreasing}"
    )
    gauss = gaussian_profile()
    (_, gratio), = bound_ratio_series(gauss, [-1e3])
    in_window = 0.249 <= gratio <= 0.2501
    parts.append(f"gaussian lower/t^2 at -1e3: {gratio:.10f} in [0.249, 0.2501]")
    ok = small and decreasing and in_window
    return CheckResult("distance-bound-ratios", ok, "; ".join(parts))


def _check_approach_angles() -> CheckResult:
    parts = []
    a = 1.0 + 0j
    radial = [(1.0 - 2.0**-k) * a for k in range(0, 21)]
    rad = approach_angle(radial, a, Arc(0.0, math.pi / 2))
    ok = (
        not rad.inconclusive
        and abs(rad.theta - math.pi / 2) <= 1e-2
    )
    parts.append(f"radial angle {rad.theta:.6f} vs pi/2 = {math.pi / 2:.6f}")

    model = by_name("strip-slit")
    petal = model.petal("upper")
    sigma = model.disk_sigma(petal).value
    pts = []
    for t in range(-1, -19, -1):
        z = flow(model, petal.base_default, float(t)).disk_z
        if z is None:
            break
        pts.append(z)
    orb = approach_angle(pts, sigma, Arc(math.pi / 2, math.pi))
    good = (
        not orb.inconclusive
        and 0.05 * math.pi < orb.theta < 0.95 * math.pi
    )
    ok = ok and good
    parts.append(
        f"backward-orbit angle {orb.theta:.4f} inside "
        f"({0.05 * math.pi:.4f}, {0.95 * math.pi:.4f})"
    )
    return CheckResult("approach-angles", ok, "; ".join(parts))


def _check_structural(rng: np.random.Generator) -> CheckResult:
    parts = []
    ok = True

    worst_rt = 0.0
    for model in catalog():
        count = 0
        for petal in model.petals:
            n = 1000 // len(model.petals) + 1
            for w in sample_petal_omega(model, petal, n, rng):
                q = model.canonical_of_omega(w)
                back = model.omega_of_canonical(q)
                worst_rt = max(worst_rt, abs(back - w))
                count += 1
        assert count >= 1000
    ok = ok and worst_rt <= 1e-10
    parts.append(f"round-trip error {worst_rt:.1e} <= 1e-10")

    worst_law = 0.0
    for model in catalog():
        for petal in model.petals:
            seeds = [petal.base_default] + sample_petal_omega(model, petal, 5, rng)
            for w in seeds:
                for t, s in ((0.7, 1.3), (0.25, 0.5)):
                    one = model.flow_omega(model.flow_omega(w, t), s)
                    two = model.flow_omega(w, t + s)
                    worst_law = max(worst_law, abs(one - two))
    ok = ok and worst_law <= 1e-9
    parts.append(f"semigroup-law residual {worst_law:.1e} <= 1e-9")

    worst_metric = 0.0
    for model in catalog():
        for petal in model.petals:
            pts = sample_petal_omega(model, petal, 20, rng)
            for z, w in zip(pts[::2], pts[1::2]):
                via_disk = disk_distance(
                    model.disk_of_omega(z), model.disk_of_omega(w)
                )
                qz = model.canonical_of_omega(z)
                qw = model.canonical_of_omega(w)
                if model.canonical_domain is CanonicalDomain.DISK:
                    via_canonical = disk_distance(qz, qw)
                else:
                    via_canonical = uhp_distance(qz, qw)
                worst_metric = max(worst_metric, abs(via_disk - via_canonical))
    ok = ok and worst_metric <= 1e-9
    parts.append(f"cross-domain metric gap {worst_metric:.1e} <= 1e-9")

    grid = [-10.0, -100.0, -1000.0]
    worst_reg = 0.0
    for model, petal in _all_petals():
        gaps = regularity_gap(model, petal, petal.base_default, grid)
        ratio = max(gaps) / gaps[0]
        worst_reg = max(worst_reg, ratio)
    ok = ok and worst_reg <= 2.0
    parts.append(f"regularity-gap growth {worst_reg:.4f} <= 2.0")

    return CheckResult("structural-consistency", ok, "; ".join(parts))


CHECK_NAMES = (
    "total-speed-slopes",
    "parabolic-speed-envelope",
    "tangential-plateau-vs-divergence",
    "orthogonal-speed-slopes",
    "pythagorean-sandwich",
    "base-point-independence",
    "forward-speed-rates",
    "repelling-point-diagnostics",
    "distance-bound-ratios",
    "approach-angles",
    "structural-consistency",
)


def run_all(seed: int = DEFAULT_SEED) -> List[CheckResult]:
    """Run every verification check; deterministic for a fixed seed."""
    rng = np.random.default_rng(seed)
    results = [
        _check_total_slopes(),
        _check_parabolic_envelope(),
        _check_tangential_plateau(),
        _check_orthogonal_slopes(),
        _check_pythagorean_sandwich(),
        _check_base_independence(rng),
        _check_forward_rates(),
        _check_repelling_diagnostics(rng),
        _check_bound_ratios(),
        _check_approach_angles(),
        _check_structural(rng),
    ]
    assert [r.name for r in results] == list(CHECK_NAMES)
    return results
