"""Model entire functions of small type and growth/type estimation.

The central object is F(z) = cos(sqrt(2 pi z)) * cos(sqrt(-2 pi z)).
Both factors are entire in z because cos(sqrt(w)) is an even power
series in sqrt(w); F has order 1/2 in each factor, real zeros exactly at
+/- pi (2k+1)^2 / 8, and along the imaginary axis grows like
exp(2 sqrt(pi |y| / 2)), slower than exp(t |y|) for every t > 0.  Such
functions separate "zero type" from "bounded" and provide test material
for the growth fitting in type_estimate.

Everything evaluates through doubles, so magnitude-sensitive work is
done in log scale: log_abs_cos avoids overflow past |Im w| ~ 700 by
peeling off the dominant exponential explicitly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyWindow
from .sequences import SeparatedSequence

PI = math.pi
TWO_PI = 2.0 * math.pi

_SERIES_TERMS = 24         # cos(sqrt(w)) partial sum, enough for |w| <= 30
_SERIES_RADIUS = 30.0
_LOG_COS_SWITCH = 40.0     # |Im w| above which the peeled form is used


def _cos_sqrt(w: complex) -> complex:
    """cos(sqrt(w)) as an entire function of w.

    Small |w| uses the even power series sum (-1)^k w^k / (2k)! which has
    no branch at all; larger |w| takes cos of a square root, safe because
    cosine is even so the branch choice cancels.
    """
    w = complex(w)
    if abs(w) <= _SERIES_RADIUS:
        total = complex(1.0)
        term = complex(1.0)
        for k in range(1, _SERIES_TERMS + 1):
            term *= -w / ((2 * k - 1) * (2 * k))
            total += term
        return total
    return cmath.cos(cmath.sqrt(w))


def eval_qcos(z: complex) -> complex:
    """F(z) = cos(sqrt(2 pi z)) cos(sqrt(-2 pi z))."""
    z = complex(z)
    return _cos_sqrt(TWO_PI * z) * _cos_sqrt(-TWO_PI * z)


def qcos_zeros(window) -> np.ndarray:
    """Real zeros of F in the window: +/- pi (2k+1)^2 / 8, sorted."""
    if hasattr(window, "left"):
        lo, hi = float(window.left), float(window.right)
    else:
        lo, hi = float(window[0]), float(window[1])
    if not lo < hi:
        raise ValueError("window must have lo < hi")
    zeros = []
    # positive zeros at pi (2k+1)^2/8 <= hi
    if hi >= PI / 8.0:
        k_max = int(math.floor((math.sqrt(8.0 * hi / PI) - 1.0) / 2.0))
        for k in range(k_max + 1):
            z = PI * (2 * k + 1) ** 2 / 8.0
            if lo <= z <= hi:
                zeros.append(z)
    if lo <= -PI / 8.0:
        k_max = int(math.floor((math.sqrt(-8.0 * lo / PI) - 1.0) / 2.0))
        for k in range(k_max + 1):
            z = -PI * (2 * k + 1) ** 2 / 8.0
            if lo <= z <= hi:
                zeros.append(z)
    return np.asarray(sorted(zeros), dtype=float)


def zero_set_qcos(window) -> SeparatedSequence:
    """Zero set of F in the window as a separated sequence.

    Consecutive same-sign zeros are pi (k+1) apart, so the smallest gap
    is pi/4 (between -pi/8 and pi/8) when both signs are present and pi
    otherwise; the set is always separated.
    """
    zeros = qcos_zeros(window)
    if zeros.size == 0:
        raise EmptyWindow("no zeros of the model function in this window")
    if hasattr(window, "left"):
        win = (float(window.left), float(window.right))
    else:
        win = (float(window[0]), float(window[1]))
    gaps = np.diff(zeros)
    delta = float(gaps.min()) if gaps.size else math.inf
    return SeparatedSequence(zeros, delta, win)


def log_abs_cos(w: complex) -> float:
    """log |cos w|, stable for large |Im w|.

    For v = Im w with |v| >= 40 the dominant half of the cosine is peeled:
    cos w = e^{-i s w} (1 + e^{2 i s w}) / 2 with s = sign(v), where the
    remaining exponential is damped, giving
    log|cos w| = |v| + log|1 + e^{2 i s w}| - log 2.
    """
    w = complex(w)
    v = w.imag
    if abs(v) < _LOG_COS_SWITCH:
        c = cmath.cos(w)
        m = abs(c)
        return math.log(m) if m > 0.0 else -math.inf
    s = 1.0 if v > 0 else -1.0
    rest = 1.0 + cmath.exp(2j * s * w)
    m = abs(rest)
    return abs(v) + (math.log(m) if m > 0.0 else -math.inf) - math.log(2.0)


def log_abs_qcos(z: complex) -> float:
    """log |F(z)| via the two cosine factors, overflow free."""
    z = complex(z)
    w_plus = cmath.sqrt(TWO_PI * z)
    w_minus = cmath.sqrt(-TWO_PI * z)
    return log_abs_cos(w_plus) + log_abs_cos(w_minus)


@dataclass
class TypeEstimate:
    y_values: np.ndarray
    log_moduli: np.ndarray
    fitted_type: float        # slope of log|f(iy)| against y, top half
    fitted_sqrt_coeff: float  # slope against sqrt(y), top half
    y_max: float


def _top_half_slope(x: np.ndarray, y: np.ndarray) -> float:
    n = x.size
    xs, ys = x[n // 2 :], y[n // 2 :]
    keep = np.isfinite(ys)
    xs, ys = xs[keep], ys[keep]
    if xs.size < 2:
        return math.nan
    xm, ym = xs.mean(), ys.mean()
    sxx = float(((xs - xm) ** 2).sum())
    if sxx == 0.0:
        return math.nan
    return float(((xs - xm) * (ys - ym)).sum()) / sxx


def type_estimate(f, y_values, log_modulus=None) -> TypeEstimate:
    """Exponential type fit along the imaginary axis.

    Samples log|f(i y)| on the given ladder and least-squares fits the
    top half (by count) against y (exponential type) and against sqrt(y)
    (order 1/2 coefficient).  Large ladders overflow direct evaluation;
    pass log_modulus to sample in log scale instead.  OverflowError is
    raised, not masked, when direct evaluation leaves double range.
    """
    ys = np.asarray([float(y) for y in y_values], dtype=float)
    if ys.size < 8 or np.any(np.diff(ys) <= 0) or ys[0] <= 0:
        raise ValueError("y_values must be positive and strictly increasing, at least 8")
    logs = np.empty(ys.size, dtype=float)
    for k, y in enumerate(ys):
        if log_modulus is not None:
            logs[k] = float(log_modulus(complex(0.0, y)))
        else:
            val = f(complex(0.0, y))
            m = abs(val)
            if math.isinf(m) or math.isnan(m):
                raise OverflowError(
                    f"|f(iy)| left double range at y={y:g}; supply log_modulus"
                )
            logs[k] = math.log(m) if m > 0.0 else -math.inf
    fitted_type = _top_half_slope(ys, logs)
    fitted_sqrt = _top_half_slope(np.sqrt(ys), logs)
    return TypeEstimate(ys, logs, fitted_type, fitted_sqrt, float(ys[-1]))


@dataclass
class SupReport:
    sup_value: float
    argmax: float


def sup_on_sequence(f, seq: SeparatedSequence) -> SupReport:
    """Largest |f| over the points of a separated sequence."""
    best = -math.inf
    arg = float(seq.points[0])
    for p in seq.points:
        m = abs(f(complex(p)))
        if m > best:
            best = m
            arg = float(p)
    return SupReport(float(best), arg)
