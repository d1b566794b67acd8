"""Interior density by bisection, null-ratio witnesses and regularity.

The interior density of a separated sequence is approached through the
test functions g_a(x) = a*x - n(x): the density is the supremum of the
slopes a for which g_a is almost decreasing.  Membership is monotone in a
(the set where g_{a'} sits below its suffix maximum is contained in the
one for any a >= a', because n(y) - n(x) < a'*(y-x) implies the same for
a), so a bisection on [0, 2/delta] brackets the supremum.  Every trial
records its shortness evidence; the bracket stops refining at the
requested tolerance or at the first Inconclusive verdict.

The classification of the bracket is honest about window resolution: a
window of radius R cannot certify slopes finer than about delta/R, so the
verdict degrades to Inconclusive when the requested tolerance is below
2*delta/R regardless of how clean the bracket looks.

Witness searches walk deterministic geometric ladders (powers of 4 and 2,
each half line and both combined) looking for a disjoint family that is
long while its point-count ratios obey a decreasing cap; such a family
certifies that the sequence fails the counting test and is not a Polya
sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .envelope import (
    INCONCLUSIVE,
    LONG,
    NO,
    SHORT,
    YES,
    Interval,
    IntervalFamily,
    ShortnessReport,
    ShortnessThresholds,
    classify_short_long,
    is_almost_decreasing,
)
from .errors import WindowTooSmall
from .sequences import SeparatedSequence, counting_function, count_in, gamma_line

POLYA = "Polya"
NOT_POLYA = "NotPolya"

TWO_PI = 2.0 * math.pi


@dataclass
class DensityTrial:
    a: float
    verdict: str
    shortness: ShortnessReport


@dataclass
class DensityReport:
    a_lower: float
    a_upper: float
    trials: list[DensityTrial]
    polya_class: str
    gap_lower: float          # 2*pi*a_lower
    gap_upper: float          # companion upper bound 2*pi*a_upper
    radii: list[float]
    a_tolerance: float
    resolution_ok: bool
    delta: float
    n_points: int
    window: tuple[float, float]


def default_radius_ladder(r_max: float, rungs: int = 8) -> list[float]:
    """Doubling ladder ending at r_max."""
    if rungs < 4:
        raise ValueError("need at least 4 rungs")
    return [r_max / 2.0 ** (rungs - 1 - j) for j in range(rungs)]


def interior_density(
    seq: SeparatedSequence,
    radii=None,
    a_tolerance: float = 0.05,
    thresholds: ShortnessThresholds | None = None,
) -> DensityReport:
    """Bracket the interior density of a separated sequence by bisection.

    Parameters
    ----------
    seq : SeparatedSequence
        At least 16 points on a two-sided window.
    radii : array_like, optional
        Radius ladder for the shortness evidence; defaults to 8 doublings
        ending at the largest symmetric radius the window supports.
    a_tolerance : float
        Bracket width at which bisection stops.  The Polya / NotPolya call
        uses 2*a_tolerance as decision margin.
    """
    if len(seq) < 16:
        raise WindowTooSmall("density needs at least 16 points")
    if not a_tolerance > 0:
        raise ValueError("a_tolerance must be positive")
    lo, hi = seq.window
    if not (lo < 0.0 < hi):
        raise WindowTooSmall("density needs a two-sided window around 0")
    r_max = min(-lo, hi)
    if radii is None:
        radii = default_radius_ladder(r_max)
    radii = [float(r) for r in radii]
    if radii[-1] > max(-lo, hi):
        raise WindowTooSmall("radius ladder exceeds the data window")

    counting = counting_function(seq)
    trials: list[DensityTrial] = []

    def verdict_at(a: float) -> str:
        gamma = gamma_line(seq, a, counting)
        verdict, report = is_almost_decreasing(gamma, radii, thresholds)
        trials.append(DensityTrial(a, verdict, report))
        return verdict

    a_max = 2.0 / seq.delta
    a_lower, a_upper = 0.0, a_max

    v = verdict_at(a_max)
    stop = v == INCONCLUSIVE
    if v == YES:
        a_lower = a_max

    while not stop and a_upper - a_lower > a_tolerance:
        mid = 0.5 * (a_lower + a_upper)
        v = verdict_at(mid)
        if v == YES:
            a_lower = mid
        elif v == NO:
            a_upper = mid
        else:
            stop = True

    if all(t.verdict == INCONCLUSIVE for t in trials):
        raise WindowTooSmall("every density trial was inconclusive on this window")

    # a window of radius R cannot separate slopes closer than ~delta/R
    resolution_ok = a_tolerance >= 2.0 * seq.delta / radii[-1]
    if not resolution_ok:
        polya_class = INCONCLUSIVE
    elif a_lower >= 2.0 * a_tolerance:
        polya_class = POLYA
    elif a_upper <= 2.0 * a_tolerance:
        polya_class = NOT_POLYA
    else:
        polya_class = INCONCLUSIVE

    return DensityReport(
        a_lower=a_lower,
        a_upper=a_upper,
        trials=trials,
        polya_class=polya_class,
        gap_lower=TWO_PI * a_lower,
        gap_upper=TWO_PI * a_upper,
        radii=radii,
        a_tolerance=a_tolerance,
        resolution_ok=resolution_ok,
        delta=seq.delta,
        n_points=len(seq),
        window=seq.window,
    )


@dataclass
class WitnessFamily:
    family: IntervalFamily
    ratios: list[float]
    shortness: ShortnessReport
    ladder: str              # which candidate ladder produced the witness


def _geometric_ladders(window, base: int):
    """Candidate interval ladders [base^k, base^{k+1}] contained in the window."""
    lo, hi = window
    pos, neg = [], []
    k = 0
    while base ** (k + 1) <= hi:
        if base**k >= lo:
            pos.append(Interval(float(base**k), float(base ** (k + 1))))
        k += 1
    k = 0
    while -(base ** (k + 1)) >= lo:
        if -(base**k) <= hi:
            neg.append(Interval(float(-(base ** (k + 1))), float(-(base**k))))
        k += 1
    out = []
    if pos:
        out.append((f"pow{base}:positive", pos))
    if neg:
        out.append((f"pow{base}:negative", neg))
    if pos and neg:
        both = sorted(pos + neg, key=lambda iv: iv.dist_to_origin)
        out.append((f"pow{base}:both", both))
    return out


def _greedy_select(candidates, ratios, caps):
    """Greedily pick a subsequence whose k-th ratio obeys caps[k]."""
    picked = []
    for iv, ratio in zip(candidates, ratios):
        slot = len(picked)
        if slot >= len(caps):
            break
        if ratio <= caps[slot]:
            picked.append((iv, ratio))
    return picked


def _witness_from_ladders(seq, caps, accept):
    """Shared ladder walk for the witness searches.

    ``accept`` maps a per-interval ratio to keep/drop.  Returns the first
    candidate family (in a fixed deterministic ladder order) that survives
    the cap filter with at least 4 intervals and classifies Long.
    """
    ladders = []
    for base in (4, 2):
        ladders.extend(_geometric_ladders(seq.window, base))
    for name, intervals in ladders:
        ratios = [count_in(seq, iv) / iv.length for iv in intervals]
        kept = [(iv, r) for iv, r in zip(intervals, ratios) if accept(r)]
        if caps is not None:
            kept = _greedy_select([iv for iv, _ in kept], [r for _, r in kept], caps)
        if len(kept) < 4:
            continue
        ordered = sorted(kept, key=lambda pair: pair[0].left)
        family = IntervalFamily([iv for iv, _ in ordered])
        ladder_radii = sorted(max(abs(iv.left), abs(iv.right)) for iv, _ in kept)
        radii = []
        for r in ladder_radii:
            if not radii or r > radii[-1]:
                radii.append(r)
        if len(radii) < 4:
            continue
        report = classify_short_long(lambda _r: family, radii)
        if report.verdict == LONG:
            # ratios indexed like family.intervals (sorted by left endpoint)
            ratios_in_order = [count_in(seq, iv) / iv.length for iv in family.intervals]
            return WitnessFamily(family, ratios_in_order, report, name)
    return None


def null_ratio_witness(seq: SeparatedSequence, ratio_cap=None) -> WitnessFamily | None:
    """Search for a long family on which point-count ratios fall under a cap.

    ``ratio_cap`` is a positive decreasing array; the k-th selected
    interval must satisfy count/length <= ratio_cap[k].  The default cap is
    harmonic, 1/(k+1), which forces the ratios toward 0.  Returns None when
    no candidate ladder yields such a family (reported as NotFound by the
    CLI).  A witness certifies the sequence is not a Polya sequence.
    """
    if ratio_cap is None:
        ratio_cap = [1.0 / (k + 1) for k in range(64)]
    caps = [float(c) for c in ratio_cap]
    if any(c <= 0 for c in caps) or any(b > a for a, b in zip(caps, caps[1:])):
        raise ValueError("ratio_cap must be positive and decreasing")
    return _witness_from_ladders(seq, caps, accept=lambda r: True)


def regularity_witness_search(seq: SeparatedSequence, a: float, epsilon: float) -> WitnessFamily | None:
    """Search for a long family whose ratios all stay epsilon away from a.

    Such a family refutes a-regularity of the sequence.  Returns None when
    every candidate ladder fails (ratios hug a, or the surviving family is
    short).
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return _witness_from_ladders(seq, None, accept=lambda r: abs(r - a) >= epsilon)


def strong_regularity_integral(seq: SeparatedSequence, a: float, radii) -> list[float]:
    """Integrals of |n(x) - a*x| / (1 + x^2) over [-R, R] in closed form.

    The integrand is piecewise smooth: on each linear piece of n(x) - a*x
    the antiderivative of (s*x + c)/(1 + x^2) is s/2*log(1+x^2) +
    c*arctan(x), and pieces are split at sign changes of the line, so the
    result carries quadrature-free accuracy.
    """
    radii = [float(r) for r in radii]
    if any(r <= 0 for r in radii) or any(b <= a_ for a_, b in zip(radii, radii[1:])):
        raise ValueError("radii must be positive and strictly increasing")
    counting = counting_function(seq)
    gamma = gamma_line(seq, a, counting)  # a*x - n(x); |n - a x| = |gamma|

    def antideriv(s, c, x):
        return 0.5 * s * math.log1p(x * x) + c * math.atan(x)

    def piece_integral(s, c, x0, x1):
        """Integral of |s*x + c|/(1+x^2) over [x0, x1], split at the root."""
        pieces = []
        if s != 0.0:
            root = -c / s
            if x0 < root < x1:
                pieces = [(x0, root), (root, x1)]
        if not pieces:
            pieces = [(x0, x1)]
        total = 0.0
        for u0, u1 in pieces:
            val = antideriv(s, c, u1) - antideriv(s, c, u0)
            mid = 0.5 * (u0 + u1)
            if s * mid + c < 0.0:
                val = -val
            total += val
        return total

    out = []
    for r in radii:
        xs, ys = gamma.grid_on((-r, r))
        total = 0.0
        for j in range(xs.size - 1):
            x0, x1 = float(xs[j]), float(xs[j + 1])
            y0, y1 = float(ys[j]), float(ys[j + 1])
            s = (y1 - y0) / (x1 - x0)
            c = y0 - s * x0
            total += piece_integral(s, c, x0, x1)
        out.append(total)
    return out
