"""Separated real sequences and their continuous counting functions.

A separated sequence is a finite, strictly increasing list of reals with a
positive minimal gap ``delta`` together with the window of the real line the
data is meant to represent.  All density machinery in this package works on
the continuous counting function n(x): the piecewise linear function with a
breakpoint at every sequence point that grows by exactly 1 between
consecutive points and is normalized to n(0) = 0.  When 0 lies outside the
data window the anchor value at 0 is obtained by extrapolating the first or
last segment slope.

Built-in generators cover the desk examples used throughout:

* ``Lattice(step, n_min, n_max)``      points n*step
* ``SymmetricSquares(n_min, n_max)``   points sign(n)*n**2
* ``LogPerturbedLattice(n_min, n_max)`` points n + n/log(|n| + 2)

Sequence files hold one decimal real per line; blank lines and lines whose
first non-space character is ``#`` are ignored; point order is arbitrary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadDataFile,
    DuplicatePoint,
    EmptyRange,
    NotSeparated,
    OutOfWindow,
    SinglePoint,
)


@dataclass
class SeparatedSequence:
    """Strictly increasing points with their minimal gap and data window."""

    points: np.ndarray
    delta: float
    window: tuple[float, float]

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 1 or self.points.size == 0:
            raise EmptyRange("a sequence needs at least one point")
        gaps = np.diff(self.points)
        if np.any(gaps == 0.0):
            raise DuplicatePoint("duplicate point in sequence")
        if np.any(gaps < 0.0):
            raise ValueError("points must be sorted increasingly")
        lo, hi = float(self.window[0]), float(self.window[1])
        if not lo < hi:
            raise ValueError("window must satisfy lo < hi")
        if self.points[0] < lo or self.points[-1] > hi:
            raise OutOfWindow("window does not contain all points")
        self.window = (lo, hi)
        exact = math.inf if gaps.size == 0 else float(gaps.min())
        # delta is the exact minimum consecutive gap, not an estimate
        if not math.isclose(self.delta, exact, rel_tol=1e-12, abs_tol=0.0):
            raise ValueError("delta must equal the minimum consecutive gap")

    def __len__(self):
        return int(self.points.size)


def load_sequence(points, window=None, min_delta=None) -> SeparatedSequence:
    """Sort raw points, compute delta and wrap them in a SeparatedSequence.

    Parameters
    ----------
    points : array_like
        Real numbers in arbitrary order.
    window : (float, float), optional
        Data window; defaults to [min(points), max(points)].
    min_delta : float, optional
        Required minimal gap.  Raises NotSeparated when violated.
    """
    pts = np.sort(np.asarray(points, dtype=float))
    if pts.size == 0:
        raise EmptyRange("no points given")
    if np.any(~np.isfinite(pts)):
        raise ValueError("points must be finite")
    gaps = np.diff(pts)
    if np.any(gaps == 0.0):
        raise DuplicatePoint("duplicate point in input")
    delta = math.inf if gaps.size == 0 else float(gaps.min())
    if min_delta is not None and delta < min_delta:
        raise NotSeparated(f"minimum gap {delta:g} below required {min_delta:g}")
    if window is None:
        if pts.size == 1:
            # a degenerate window carries no information; pad by a unit ball
            window = (float(pts[0]) - 1.0, float(pts[0]) + 1.0)
        else:
            window = (float(pts[0]), float(pts[-1]))
    return SeparatedSequence(pts, delta, (float(window[0]), float(window[1])))


def read_sequence_file(path, window=None, min_delta=None) -> SeparatedSequence:
    """Load a sequence from a text file, one decimal real per line."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                values.append(float(line))
            except ValueError:
                raise BadDataFile(f"{path}:{lineno}: not a decimal real: {line!r}") from None
    if not values:
        raise BadDataFile(f"{path}: no data lines")
    return load_sequence(values, window=window, min_delta=min_delta)


@dataclass(frozen=True)
class Lattice:
    step: float
    n_min: int
    n_max: int


@dataclass(frozen=True)
class SymmetricSquares:
    n_min: int
    n_max: int


@dataclass(frozen=True)
class LogPerturbedLattice:
    n_min: int
    n_max: int


def _index_range(spec):
    if spec.n_min > spec.n_max:
        raise EmptyRange(f"empty index range [{spec.n_min}, {spec.n_max}]")
    return np.arange(spec.n_min, spec.n_max + 1)


def generate(spec) -> SeparatedSequence:
    """Materialize one of the built-in generator specs."""
    if isinstance(spec, Lattice):
        if not spec.step > 0:
            raise ValueError("lattice step must be positive")
        pts = _index_range(spec) * float(spec.step)
    elif isinstance(spec, SymmetricSquares):
        n = _index_range(spec)
        pts = np.unique(np.sign(n) * n.astype(float) ** 2)
    elif isinstance(spec, LogPerturbedLattice):
        n = _index_range(spec).astype(float)
        pts = n + n / np.log(np.abs(n) + 2.0)
    else:
        raise TypeError(f"unknown generator spec {spec!r}")
    return load_sequence(pts)


@dataclass
class PiecewiseLinear:
    """Continuous piecewise linear function with explicit edge slopes.

    Breakpoints ``x`` are strictly increasing; outside [x[0], x[-1]] the
    function continues with ``left_slope`` and ``right_slope``.
    """

    x: np.ndarray
    y: np.ndarray
    left_slope: float
    right_slope: float

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        if self.x.ndim != 1 or self.x.shape != self.y.shape or self.x.size == 0:
            raise ValueError("breakpoint arrays must be equal-length 1d")
        if np.any(np.diff(self.x) <= 0.0):
            raise ValueError("breakpoints must be strictly increasing")

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        out = np.interp(t_arr, self.x, self.y)
        left = t_arr < self.x[0]
        right = t_arr > self.x[-1]
        if np.any(left):
            out = np.where(left, self.y[0] + self.left_slope * (t_arr - self.x[0]), out)
        if np.any(right):
            out = np.where(right, self.y[-1] + self.right_slope * (t_arr - self.x[-1]), out)
        if np.isscalar(t) or np.ndim(t) == 0:
            return float(out)
        return out

    def grid_on(self, window):
        """Breakpoints clipped to a window, with the window ends appended.

        Returns (xs, ys) where xs[0] and xs[-1] are exactly the window ends
        and the interior nodes are the breakpoints strictly inside.
        """
        lo, hi = float(window[0]), float(window[1])
        if not lo < hi:
            raise ValueError("window must satisfy lo < hi")
        inner = self.x[(self.x > lo) & (self.x < hi)]
        xs = np.concatenate(([lo], inner, [hi]))
        ys = np.empty_like(xs)
        ys[0] = self(lo)
        ys[-1] = self(hi)
        if inner.size:
            lo_idx = np.searchsorted(self.x, inner[0])
            ys[1:-1] = self.y[lo_idx : lo_idx + inner.size]
        return xs, ys


def counting_function(seq: SeparatedSequence) -> PiecewiseLinear:
    """Continuous counting function of a sequence, normalized to 0 at 0.

    The function has a breakpoint at every point of the sequence and grows
    by exactly 1 between consecutive points.  Outside the points it
    continues with the slope of the first (resp. last) interior segment,
    which is also how the anchor value at 0 is produced when 0 lies outside
    the point range.
    """
    pts = seq.points
    if pts.size < 2:
        raise SinglePoint("counting function needs at least two points")
    raw = np.arange(pts.size, dtype=float)
    left_slope = 1.0 / (pts[1] - pts[0])
    right_slope = 1.0 / (pts[-1] - pts[-2])
    unanchored = PiecewiseLinear(pts, raw, left_slope, right_slope)
    anchor = unanchored(0.0)
    return PiecewiseLinear(pts, raw - anchor, left_slope, right_slope)


def count_in(seq: SeparatedSequence, interval) -> int:
    """Exact number of sequence points in a closed interval.

    ``interval`` is anything with ``left``/``right`` attributes or a pair.
    Raises OutOfWindow when the query interval leaves the data window.
    """
    if hasattr(interval, "left"):
        left, right = float(interval.left), float(interval.right)
    else:
        left, right = float(interval[0]), float(interval[1])
    lo, hi = seq.window
    if left < lo or right > hi:
        raise OutOfWindow(f"query [{left:g}, {right:g}] exceeds window [{lo:g}, {hi:g}]")
    if left > right:
        raise ValueError("interval must satisfy left <= right")
    i = np.searchsorted(seq.points, left, side="left")
    j = np.searchsorted(seq.points, right, side="right")
    return int(j - i)


def gamma_line(seq: SeparatedSequence, a: float, counting: PiecewiseLinear | None = None) -> PiecewiseLinear:
    """The test function a*x - n(x) as an exact piecewise linear object.

    Breakpoint ordinates are formed directly from the point array so no
    resampling error enters; the a*x term is absorbed into the slopes.
    """
    if counting is None:
        counting = counting_function(seq)
    y = a * counting.x - counting.y
    return PiecewiseLinear(
        counting.x,
        y,
        a - counting.left_slope,
        a - counting.right_slope,
    )
