"""Two-sided hyperbolic distance bounds from a boundary-distance profile.

A profile prescribes the euclidean distance ``delta(t)`` from a backward
trajectory to the domain boundary at time ``t <= t0``, together with the
hyperbolic distance ``d0`` already accumulated at ``t0``.  The upper bound
integrates ``1/delta`` along the trajectory; the lower bound is the
separation forced by the thinnest of the two endpoints' boundary gaps.

Profiles carry ``log_delta`` alongside ``delta`` so that bounds remain
computable when ``delta`` itself underflows (the gaussian profile collapses
to float zero already near t = -27 while its logarithm stays exact).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad

from .hypcore import DomainError

__all__ = [
    "BoundaryProfile",
    "logrecip_profile",
    "gaussian_profile",
    "custom_profile",
    "profile_from_table",
    "profile_from_file",
    "upper_bound",
    "lower_bound",
    "bound_ratio_series",
]

# Guard for the lower bound: once log(gap ratio) exceeds this, expanding
# log1p(exp(Y)) around Y avoids forming exp(Y) at all.
_LOG_GUARD = 23.0
# Adaptive quadrature target for profiles without a closed-form integral.
_QUAD_ABS_TOL = 1e-10


@dataclass(frozen=True)
class BoundaryProfile:
    """Boundary-distance profile ``delta`` on ``(-inf, t0]``.

    ``delta`` must be positive for every ``t <= t0``; ``log_delta`` is its
    exact logarithm and is the form the bounds actually consume.
    ``inv_delta_antiderivative``, when present, is a closed-form
    antiderivative of ``1/delta`` used instead of quadrature.
    """

    name: str
    t0: float
    d0: float
    delta: Callable[[float], float] = field(repr=False)
    log_delta: Callable[[float], float] = field(repr=False)
    inv_delta_antiderivative: Optional[Callable[[float], float]] = field(
        default=None, repr=False
    )

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t0) and self.t0 < 0.0):
            raise DomainError(f"profile anchor time must be negative, got {self.t0}")
        if not (math.isfinite(self.d0) and self.d0 >= 0.0):
            raise DomainError(f"anchor distance must be nonnegative, got {self.d0}")
        if not math.isfinite(self.log_delta(self.t0)):
            raise DomainError("profile must have a positive gap at its anchor time")


def logrecip_profile(t0: float = -math.e, d0: float = 1.0) -> BoundaryProfile:
    """Profile ``delta(t) = 1 / log(-t)``, defined for ``t0 <= -e``."""
    if not t0 <= -math.e:
        raise DomainError(f"logrecip profile needs t0 <= -e, got {t0}")

    def delta(t: float) -> float:
        return 1.0 / math.log(-t)

    def log_delta(t: float) -> float:
        return -math.log(math.log(-t))

    def antiderivative(s: float) -> float:
        # integral of 1/delta = log(-s)
        return s * math.log(-s) - s

    return BoundaryProfile(
        name="logrecip",
        t0=float(t0),
        d0=float(d0),
        delta=delta,
        log_delta=log_delta,
        inv_delta_antiderivative=antiderivative,
    )


def gaussian_profile(t0: float = -1.0, d0: float = 1.0) -> BoundaryProfile:
    """Profile ``delta(t) = -t * exp(-t^2)``, defined for ``t0 < 0``."""
    if not t0 < 0.0:
        raise DomainError(f"gaussian profile needs t0 < 0, got {t0}")

    def delta(t: float) -> float:
        return -t * math.exp(-t * t)

    def log_delta(t: float) -> float:
        return math.log(-t) - t * t

    return BoundaryProfile(
        name="gaussian",
        t0=float(t0),
        d0=float(d0),
        delta=delta,
        log_delta=log_delta,
    )


def custom_profile(
    delta: Callable[[float], float],
    t0: float,
    d0: float = 1.0,
    log_delta: Optional[Callable[[float], float]] = None,
    name: str = "custom",
) -> BoundaryProfile:
    """Wrap an arbitrary positive gap function as a profile."""
    if log_delta is None:

        def log_delta(t: float) -> float:
            return math.log(delta(t))

    return BoundaryProfile(
        name=name,
        t0=float(t0),
        d0=float(d0),
        delta=delta,
        log_delta=log_delta,
    )


def profile_from_table(
    rows: Sequence[Tuple[float, float]],
    t0: Optional[float] = None,
    d0: float = 1.0,
) -> BoundaryProfile:
    """Custom profile from ``(t, delta)`` samples, interpolated in log delta."""
    if len(rows) < 2:
        raise DomainError("profile table needs at least two rows")
    pairs = sorted((float(t), float(d)) for t, d in rows)
    ts = np.array([t for t, _ in pairs])
    deltas = np.array([d for _, d in pairs])
    if np.any(np.diff(ts) <= 0.0):
        raise DomainError("profile table times must be distinct")
    if np.any(deltas <= 0.0) or not np.all(np.isfinite(deltas)):
        raise DomainError("profile table gaps must be positive and finite")
    log_deltas = np.log(deltas)
    t_lo, t_hi = float(ts[0]), float(ts[-1])
    if t0 is None:
        t0 = t_hi
    if not t_lo <= t0 <= t_hi:
        raise DomainError(f"anchor time {t0} outside tabulated range [{t_lo}, {t_hi}]")

    def log_delta(t: float) -> float:
        if not t_lo <= t <= t_hi:
            raise DomainError(f"time {t} outside tabulated range [{t_lo}, {t_hi}]")
        return float(np.interp(t, ts, log_deltas))

    def delta(t: float) -> float:
        return math.exp(log_delta(t))

    # 1/delta = exp(-L) with L piecewise linear, so each segment integrates
    # in closed form; accumulate those to get an exact antiderivative.
    def _segment_integral(i: int, s: float) -> float:
        li = log_deltas[i]
        slope = (log_deltas[i + 1] - li) / (ts[i + 1] - ts[i])
        if abs(slope) < 1e-300:
            return math.exp(-li) * (s - ts[i])
        return (math.exp(-li) - math.exp(-(li + slope * (s - ts[i])))) / slope

    cumulative = [0.0]
    for i in range(len(ts) - 1):
        cumulative.append(cumulative[-1] + _segment_integral(i, float(ts[i + 1])))

    def antiderivative(s: float) -> float:
        if not t_lo <= s <= t_hi:
            raise DomainError(f"time {s} outside tabulated range [{t_lo}, {t_hi}]")
        i = min(int(np.searchsorted(ts, s, side="right")) - 1, len(ts) - 2)
        i = max(i, 0)
        return cumulative[i] + _segment_integral(i, s)

    return BoundaryProfile(
        name="custom",
        t0=float(t0),
        d0=float(d0),
        delta=delta,
        log_delta=log_delta,
        inv_delta_antiderivative=antiderivative,
    )


def profile_from_file(
    path: str,
    t0: Optional[float] = None,
    d0: float = 1.0,
) -> BoundaryProfile:
    """Custom profile from a two-column text file of ``t  delta`` rows.

    Blank lines and lines starting with ``#`` are ignored; columns may be
    separated by whitespace or commas.
    """
    rows: List[Tuple[float, float]] = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) != 2:
                raise DomainError(f"{path}:{lineno}: expected two columns, got {raw!r}")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise DomainError(f"{path}:{lineno}: {exc}") from exc
    return profile_from_table(rows, t0=t0, d0=d0)


def _require_in_range(profile: BoundaryProfile, t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t > profile.t0:
        raise DomainError(
            f"bounds are defined for t <= {profile.t0}, got {t}"
        )
    return t


def upper_bound(profile: BoundaryProfile, t: float, method: str = "auto") -> float:
    """Upper distance bound ``d0 + integral_t^{t0} ds / delta(s)``.

    ``method`` selects ``"closed"`` (antiderivative, when the profile has
    one), ``"quadrature"``, or ``"auto"`` (closed form if available).  A gap
    that underflows so hard the integrand overflows yields ``inf``.
    """
    t = _require_in_range(profile, t)
    if t == profile.t0:
        return profile.d0
    if method not in ("auto", "closed", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    anti = profile.inv_delta_antiderivative
    if method == "closed" and anti is None:
        raise ValueError(f"profile {profile.name!r} has no closed-form integral")
    if anti is not None and method != "quadrature":
        try:
            return profile.d0 + (anti(profile.t0) - anti(t))
        except OverflowError:
            return math.inf

    def integrand(s: float) -> float:
        return math.exp(-profile.log_delta(s))

    try:
        value, _ = quad(integrand, t, profile.t0, epsabs=_QUAD_ABS_TOL, limit=200)
    except OverflowError:
        return math.inf
    return profile.d0 + value


def lower_bound(profile: BoundaryProfile, t: float) -> float:
    """Lower distance bound ``log1p(|t - t0| / min gap) / 4 - d0``.

    Evaluated through ``log_delta`` so it survives gaps far below the
    smallest positive float.
    """
    t = _require_in_range(profile, t)
    if t == profile.t0:
        return -profile.d0
    log_gap = min(profile.log_delta(t), profile.log_delta(profile.t0))
    y = math.log(profile.t0 - t) - log_gap
    if y > _LOG_GUARD:
        return 0.25 * (y + math.log1p(math.exp(-y))) - profile.d0
    return 0.25 * math.log1p(math.exp(y)) - profile.d0


def bound_ratio_series(
    profile: BoundaryProfile,
    grid: Sequence[float],
    which: Optional[str] = None,
) -> List[Tuple[float, float]]:
    """Evaluate ``bound(t) / t^2`` over a grid of times below ``t0``.

    ``which`` picks ``"upper"`` or ``"lower"``; by default the gaussian
    profile reports its lower bound (its upper bound is infinite almost
    immediately) and every other profile reports its upper bound.
    """
    if which is None:
        which = "lower" if profile.name == "gaussian" else "upper"
    if which == "upper":
        bound = lambda t: upper_bound(profile, t)
    elif which == "lower":
        bound = lambda t: lower_bound(profile, t)
    else:
        raise ValueError(f"unknown bound kind {which!r}")
    out: List[Tuple[float, float]] = []
    for t in grid:
        t = _require_in_range(profile, float(t))
        out.append((t, bound(t) / (t * t)))
    return out
