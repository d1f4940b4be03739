"""Backward-orbit petal speeds, forward-speed baselines, and slope fits.

Every speed is a hyperbolic distance between canonical images of orbit
points, so all computations run on the anchored logarithmic form of
``models.KoenigsModel.uhp_orbit``.  The total speed is the distance from
the base point to the orbit point; the orthogonal and tangential parts
split that motion along and across the geodesic eta that the orbit
chases.  Normalizing eta onto the imaginary axis turns both parts into
closed forms of the log coordinates, which keeps them exact out to
|t| of order 1e8 where the orbit points themselves left float range
long before.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .hypcore import (
    DomainError,
    UhpLogPoint,
    axis_distance,
    uhp_log_distance,
)
from .models import KoenigsModel, Petal
from .semigroup import PetalRequiredError


class EstimationError(ValueError):
    """Slope estimation asked of a grid that cannot support it."""


@dataclass(frozen=True)
class SpeedSample:
    """Total, orthogonal, and tangential speeds at one time."""

    t: float
    v: float
    v_o: float
    v_T: float


@dataclass(frozen=True)
class SpeedSeries:
    """Speed samples of one petal orbit over a time grid."""

    model_name: str
    petal_label: str
    base: complex
    grid: tuple[float, ...]
    samples: tuple[SpeedSample, ...]

    def to_csv(self) -> str:
        """Render as CSV: header t,v,v_o,v_T then one row per sample,
        17 significant digits, newline-terminated."""
        lines = ["t,v,v_o,v_T"]
        for s in self.samples:
            lines.append(",".join("%.17g" % x for x in (s.t, s.v, s.v_o, s.v_T)))
        return "\n".join(lines) + "\n"

    def component(self, name: str) -> list[float]:
        if name not in ("v", "v_o", "v_T"):
            raise KeyError(f"unknown speed component {name!r}")
        return [getattr(s, name) for s in self.samples]


def dyadic_grid(k_min: int = 0, k_max: int = 16) -> list[float]:
    """Backward dyadic grid [-2^k_min, ..., -2^k_max]."""
    if k_max < k_min:
        raise ValueError("k_max must be >= k_min")
    return [-(2.0 ** k) for k in range(k_min, k_max + 1)]


def _require_petal(model: KoenigsModel, petal: Petal, w: complex) -> complex:
    w = complex(w)
    if not (model.contains(w) and petal.contains(w)):
        raise PetalRequiredError(f"{w} is not in petal {petal.label!r} of {model.name}")
    return w


def _log_shifted(p: UhpLogPoint, c: float) -> complex:
    """log(q - c) for q = anchor + e^L, evaluated at the scale of L."""
    a = (0.0 if p.anchor is None else p.anchor) - c
    if a == 0.0:
        return p.L
    scale = max(0.0, p.L.real)
    v = a * math.exp(-scale) + cmath.exp(p.L - scale)
    return scale + cmath.log(v)


def _eta_frame(
    model: KoenigsModel, petal: Petal, p0: UhpLogPoint
) -> Callable[[UhpLogPoint], complex]:
    """Log-coordinate chart in which eta is the positive imaginary axis.

    eta is the geodesic through the base image p0 ending at the petal's
    distinguished boundary point (upper-half-plane coordinates).  The
    returned map sends an orbit log point to log N(q) where N is the
    Moebius normalizer carrying eta onto the imaginary axis.
    """
    sigma = model.uhp_eta_endpoint(petal)
    q0 = p0.value()
    if q0 is None:
        raise DomainError("base point has no finite canonical image")
    if sigma is None:
        # eta is the vertical line through q0; translate it to Re = 0.
        shift = q0.real
        return lambda p: _log_shifted(p, shift)
    if q0.real == sigma:
        return lambda p: _log_shifted(p, sigma)
    # Half-circle geodesic: second foot by reflecting sigma through the
    # center; N(q) = +-(q - sigma)/(q - e) maps it to the axis.
    center = (abs(q0) ** 2 - sigma * sigma) / (2.0 * (q0.real - sigma))
    other = 2.0 * center - sigma
    flip = sigma - other < 0

    def frame(p: UhpLogPoint) -> complex:
        val = _log_shifted(p, sigma) - _log_shifted(p, other)
        if flip:
            val += 1j * math.pi
        # Restore the principal branch; the true imaginary part lies in
        # (0, pi) because N preserves the upper half-plane.
        if val.imag < -0.5:
            val += 2j * math.pi
        elif val.imag > math.pi + 0.5:
            val -= 2j * math.pi
        return val

    return frame


def _split_speeds(frame, p0: UhpLogPoint, p_t: UhpLogPoint) -> tuple[float, float]:
    ln0 = frame(p0)
    ln_t = frame(p_t)
    v_o = 0.5 * abs(ln_t.real - ln0.real)
    v_tan = axis_distance(ln_t.imag)
    return v_o, v_tan


def speed_sample(model: KoenigsModel, petal: Petal, z: complex, t: float) -> SpeedSample:
    """All three speeds of the backward orbit from z at time t <= 0."""
    w0 = _require_petal(model, petal, z)
    if t > 0.0:
        raise DomainError("petal speeds are defined for t <= 0")
    if t == 0.0:
        return SpeedSample(t=0.0, v=0.0, v_o=0.0, v_T=0.0)
    p0 = model.uhp_orbit(w0, 0.0)
    p_t = model.uhp_orbit(w0, t)
    v = uhp_log_distance(p0, p_t)
    v_o, v_tan = _split_speeds(_eta_frame(model, petal, p0), p0, p_t)
    return SpeedSample(t=float(t), v=v, v_o=v_o, v_T=v_tan)


def total_speed(model: KoenigsModel, petal: Petal, z: complex, t: float) -> float:
    """Hyperbolic distance from z to its time-t backward image."""
    return speed_sample(model, petal, z, t).v


def orthogonal_speed(model: KoenigsModel, petal: Petal, z: complex, t: float) -> float:
    """Distance from z to the orbit point's projection on eta."""
    return speed_sample(model, petal, z, t).v_o


def tangential_speed(model: KoenigsModel, petal: Petal, z: complex, t: float) -> float:
    """Distance from the orbit point to the geodesic eta."""
    return speed_sample(model, petal, z, t).v_T


def forward_speed(model: KoenigsModel, z: complex, t: float) -> float:
    """Hyperbolic distance from z to its forward image, any z in Omega."""
    w0 = complex(z)
    if not model.contains(w0):
        raise DomainError(f"{w0} is not in the domain of {model.name}")
    if t < 0.0:
        raise DomainError("forward speed is defined for t >= 0")
    if t == 0.0:
        return 0.0
    return uhp_log_distance(model.uhp_orbit(w0, 0.0), model.uhp_orbit(w0, t))


def speed_series(
    model: KoenigsModel,
    petal: Petal,
    z: complex,
    grid: Optional[Sequence[float]] = None,
) -> SpeedSeries:
    """Sample all three speeds over a strictly decreasing backward grid."""
    w0 = _require_petal(model, petal, z)
    ts = list(dyadic_grid() if grid is None else (float(t) for t in grid))
    if not ts:
        raise ValueError("grid must not be empty")
    if any(t > 0.0 for t in ts):
        raise DomainError("backward series grids must satisfy t <= 0")
    if any(b >= a for a, b in zip(ts, ts[1:])):
        raise ValueError("grid must be strictly decreasing")
    p0 = model.uhp_orbit(w0, 0.0)
    frame = _eta_frame(model, petal, p0)
    samples = []
    for t in ts:
        if t == 0.0:
            samples.append(SpeedSample(t=0.0, v=0.0, v_o=0.0, v_T=0.0))
            continue
        p_t = model.uhp_orbit(w0, t)
        v = uhp_log_distance(p0, p_t)
        v_o, v_tan = _split_speeds(frame, p0, p_t)
        samples.append(SpeedSample(t=t, v=v, v_o=v_o, v_T=v_tan))
    totals = [s.v for s in samples]
    if any(b < a - 1e-12 for a, b in zip(totals, totals[1:])):
        warnings.warn(
            f"total speed is not monotone in |t| for {model.name}/{petal.label}",
            RuntimeWarning,
            stacklevel=2,
        )
    return SpeedSeries(
        model_name=model.name,
        petal_label=petal.label,
        base=w0,
        grid=tuple(ts),
        samples=tuple(samples),
    )


def slope_estimate(
    series: SpeedSeries, mode: str = "linear_in_t", component: str = "v"
) -> tuple[float, float]:
    """Least-squares slope of a speed component over the grid's tail half.

    mode selects the abscissa: "linear_in_t" fits against t,
    "linear_in_log" against log|t|.  Returns (slope, r_squared).
    """
    import numpy as np

    if mode not in ("linear_in_t", "linear_in_log"):
        raise ValueError(f"unknown mode {mode!r}")
    ys_all = series.component(component)
    n = len(series.samples)
    if n < 6:
        raise EstimationError("slope estimation needs at least 6 samples")
    order = sorted(range(n), key=lambda i: abs(series.samples[i].t))
    tail = order[n // 2:]
    ts = [series.samples[i].t for i in tail]
    ys = [ys_all[i] for i in tail]
    if mode == "linear_in_t":
        xs = ts
    else:
        if any(t == 0.0 for t in ts):
            raise EstimationError("log abscissa undefined at t = 0")
        xs = [math.log(abs(t)) for t in ts]
    if max(xs) - min(xs) <= 0.0:
        raise EstimationError("degenerate abscissa: all tail points coincide")
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(np.dot(resid, resid))
    ss_tot = float(np.dot(y - y.mean(), y - y.mean()))
    r2 = 1.0 if ss_tot == 0.0 and ss_res == 0.0 else (
        0.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    )
    return float(slope), r2
