"""Discrete measures on the lattice, designed spectral gaps and Gram probes.

A finite complex measure mu = sum w_n delta_{lambda_n} has Fourier
transform mu^(x) = sum w_n exp(i x lambda_n).  For integer atoms mu^ is
2*pi periodic, so a measure whose transform vanishes on a prescribed
interval [0, a] (0 < a < 2*pi) can be designed by reading the weights off
the Fourier coefficients of a smooth bump supported inside the complement
arc: the truncated Fourier series of the bump is exactly mu^.  The bump
is either the C-infinity glue exp(-1/t)*exp(-1/(w-t)) or a C^k spline
(t*(w-t))^(k+1); its coefficients are computed by dense periodic
quadrature at 2^12 nodes, and the weight vector is normalized to total
variation 1.

Two independent diagnostics accompany the construction.

* Cauchy transform decay: mu^ vanishes on [-a', a'] iff
  exp(x*y) * sum w_n / (lambda_n - i*y) tends to 0 as y goes to +/- inf
  for every x in [-a', a'].  The quantity is evaluated on both branches
  in log scale so the exponential factor never overflows.

* Gram matrices of exponentials on [0, a]:
  G[m][n] = integral_0^a exp(i (lambda_m - lambda_n) t) dt in closed
  form.  The decay of the smallest eigenvalue along growing centered
  point windows is finite-section evidence about the gap; it is evidence
  only, not a decision procedure, and the probe records both the l1 and
  l2 norms of the minimizing coefficient vectors (the classical problem
  normalizes mass in l1 while eigenvalues minimize in l2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .envelope import INCONCLUSIVE
from .errors import BadGap, NumericalBreakdown, SizeGuard
from .sequences import SeparatedSequence

TWO_PI = 2.0 * math.pi

QUAD_NODES = 4096          # dense periodic quadrature, 2^12 nodes
GRAM_SIZE_CAP = 512        # refuse dense Hermitian solves beyond this


@dataclass
class DiscreteMeasure:
    """Finite complex measure with strictly increasing atom positions."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        self.weights = np.asarray(self.weights, dtype=complex)
        if self.points.ndim != 1 or self.points.shape != self.weights.shape:
            raise ValueError("points and weights must be equal-length 1d arrays")
        if self.points.size == 0:
            raise ValueError("measure needs at least one atom")
        if np.any(np.diff(self.points) <= 0.0):
            raise ValueError("atom positions must be strictly increasing")

    @property
    def total_variation(self) -> float:
        return float(np.abs(self.weights).sum())

    def __len__(self):
        return int(self.points.size)


def measure_to_csv(mu: DiscreteMeasure, path) -> None:
    """Write atoms as CSV with columns point,re,im."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("point,re,im\n")
        for p, w in zip(mu.points, mu.weights):
            fh.write(f"{float(p)!r},{float(w.real)!r},{float(w.imag)!r}\n")


def measure_from_csv(path) -> DiscreteMeasure:
    pts, ws = [], []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            try:
                p = float(parts[0])
            except ValueError:
                continue
            pts.append(p)
            ws.append(complex(float(parts[1]), float(parts[2])))
    order = np.argsort(pts)
    return DiscreteMeasure(np.asarray(pts)[order], np.asarray(ws)[order])


def fourier_transform(mu: DiscreteMeasure, x) -> np.ndarray:
    """mu^(x) = sum w_n exp(i x lambda_n), vectorized over x."""
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    vals = np.exp(1j * np.outer(x_arr, mu.points)) @ mu.weights
    if np.isscalar(x) or np.ndim(x) == 0:
        return complex(vals[0])
    return vals


def modulate(mu: DiscreteMeasure, c: float) -> DiscreteMeasure:
    """Multiply weights by exp(i c lambda_n); shifts the transform by c."""
    return DiscreteMeasure(mu.points.copy(), mu.weights * np.exp(1j * c * mu.points))


def _bump(t, width: float, smoothness) -> np.ndarray:
    """Nonnegative bump on (0, width), zero outside, C^k or C-infinity."""
    t = np.asarray(t, dtype=float)
    inside = (t > 0.0) & (t < width)
    out = np.zeros_like(t)
    ts = t[inside]
    if smoothness == "inf":
        out[inside] = np.exp(-1.0 / ts) * np.exp(-1.0 / (width - ts))
    else:
        k = int(smoothness)
        if k < 0:
            raise ValueError("smoothness must be a nonnegative int or 'inf'")
        out[inside] = (ts * (width - ts)) ** (k + 1)
    return out


def lattice_gap_measure(a: float, n_terms: int, smoothness="inf") -> DiscreteMeasure:
    """Design an integer-atom measure whose transform vanishes on [0, a].

    The bump sits on [a + m, 2*pi - m] with margin m = (2*pi - a)/8; its
    Fourier coefficients for |n| <= n_terms become the weights, so mu^
    equals the truncated series of the bump and is small on the designed
    gap up to the series tail.  Weights are normalized to total variation
    one.

    Parameters
    ----------
    a : float
        Gap length, 0 < a < 2*pi.
    n_terms : int
        Coefficient cutoff, at least 32; the measure has 2*n_terms+1 atoms.
    smoothness : "inf" or int
        Bump regularity; higher smoothness buys faster tail decay.
    """
    if not 0.0 < a < TWO_PI:
        raise BadGap(f"gap length must be in (0, 2*pi), got {a:g}")
    if n_terms < 32:
        raise ValueError("n_terms must be at least 32")
    margin = (TWO_PI - a) / 8.0
    lo = a + margin
    width = (TWO_PI - margin) - lo
    t = TWO_PI * np.arange(QUAD_NODES) / QUAD_NODES
    g = _bump(t - lo, width, smoothness)
    n = np.arange(-n_terms, n_terms + 1)
    # rectangle rule on the full period; spectrally accurate for smooth g
    coeff = np.exp(-1j * np.outer(n, t)) @ g.astype(complex) / QUAD_NODES
    tv = float(np.abs(coeff).sum())
    if tv == 0.0:
        raise ValueError("bump quadrature produced a zero measure")
    return DiscreteMeasure(n.astype(float), coeff / tv)


def symmetric_gap_measure(a_prime: float, n_terms: int, smoothness="inf") -> DiscreteMeasure:
    """Measure with transform vanishing on the symmetric interval [-a', a'].

    Built from the one-sided design with gap [0, 2*a'] and modulated by
    a', which shifts the vanishing interval to be centered at 0.
    """
    mu = lattice_gap_measure(2.0 * a_prime, n_terms, smoothness)
    return modulate(mu, a_prime)


@dataclass
class GapCheck:
    interval: tuple[float, float]
    grid_step: float
    max_abs: float
    argmax: float


def verify_gap(mu: DiscreteMeasure, interval, grid_step: float) -> GapCheck:
    """Maximum of |mu^| on a uniform grid over the interval, with argmax."""
    if hasattr(interval, "left"):
        lo, hi = float(interval.left), float(interval.right)
    else:
        lo, hi = float(interval[0]), float(interval[1])
    if not (lo < hi and grid_step > 0):
        raise ValueError("need lo < hi and a positive grid step")
    count = int(math.floor((hi - lo) / grid_step)) + 1
    xs = lo + grid_step * np.arange(count)
    vals = np.abs(fourier_transform(mu, xs))
    k = int(np.argmax(vals))
    return GapCheck((lo, hi), grid_step, float(vals[k]), float(xs[k]))


@dataclass
class CauchyBranch:
    values: np.ndarray       # exp(sign*x*y) * sum w_n/(lambda_n - sign*i*y)
    log_abs: np.ndarray      # stable log magnitudes, fit input
    rate: float              # least squares slope of log_abs against y, top half


@dataclass
class CauchyDecayReport:
    x: float
    y_values: np.ndarray
    plus: CauchyBranch
    minus: CauchyBranch
    tolerance: float
    verdict: str             # VanishesCompatible | Not


def _cauchy_branch(mu: DiscreteMeasure, x: float, ys: np.ndarray, sign: float) -> CauchyBranch:
    vals = np.empty(ys.size, dtype=complex)
    log_abs = np.empty(ys.size, dtype=float)
    for k, y in enumerate(ys):
        s = np.sum(mu.weights / (mu.points - sign * 1j * y))
        mag = abs(s)
        expo = sign * x * y
        log_abs[k] = expo + (math.log(mag) if mag > 0.0 else -math.inf)
        if expo < 700.0:
            vals[k] = s * math.exp(expo)
        else:
            vals[k] = complex(math.inf, math.inf)  # magnitude tracked in log_abs
    half = ys.size // 2
    finite = np.isfinite(log_abs[half:])
    if finite.sum() >= 2:
        yy = ys[half:][finite]
        ll = log_abs[half:][finite]
        ym, lm = yy.mean(), ll.mean()
        sxx = float(((yy - ym) ** 2).sum())
        rate = float(((yy - ym) * (ll - lm)).sum()) / sxx if sxx > 0 else 0.0
    else:
        rate = -math.inf
    return CauchyBranch(vals, log_abs, rate)


def cauchy_decay(mu: DiscreteMeasure, x: float, y_values, tolerance: float = 1e-6) -> CauchyDecayReport:
    """Evaluate the gap criterion quantity on both Cauchy branches.

    The transform of mu vanishes on an interval containing x in its
    interior exactly when exp(x*y) * integral d mu(t)/(t - i y) tends to 0
    along both y -> +inf and y -> -inf.  Both branches are reported with
    fitted exponential rates; the verdict is VanishesCompatible when both
    terminal magnitudes fall below the tolerance.
    """
    ys = np.asarray([float(y) for y in y_values], dtype=float)
    if ys.size < 4 or np.any(np.diff(ys) <= 0) or ys[0] <= 0:
        raise ValueError("y_values must be positive and strictly increasing, at least 4")
    plus = _cauchy_branch(mu, x, ys, +1.0)
    minus = _cauchy_branch(mu, x, ys, -1.0)
    log_tol = math.log(tolerance)
    ok = plus.log_abs[-1] <= log_tol and minus.log_abs[-1] <= log_tol
    verdict = "VanishesCompatible" if ok else "Not"
    return CauchyDecayReport(x, ys, plus, minus, tolerance, verdict)


def gram_matrix(points, a: float) -> np.ndarray:
    """Gram matrix of exponentials exp(i lambda t) on [0, a], closed form.

    G[m][n] = integral of exp(i (lambda_n - lambda_m) t) over [0, a]
            = (exp(i (lambda_n - lambda_m) a) - 1) / (i (lambda_n - lambda_m))
    off the diagonal and a on it.  Hermitian positive definite for distinct
    points, and oriented so that c* G c equals the L^2[0, a] energy of
    t -> sum c_n exp(i lambda_n t).
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 1 or pts.size == 0:
        raise ValueError("points must be a nonempty 1d array")
    if pts.size > GRAM_SIZE_CAP:
        raise SizeGuard(f"dense Gram matrix limited to {GRAM_SIZE_CAP} points")
    if not a > 0:
        raise ValueError("interval length a must be positive")
    diff = -np.subtract.outer(pts, pts)
    out = np.full(diff.shape, complex(a), dtype=complex)
    off = diff != 0.0
    d = diff[off]
    out[off] = (np.exp(1j * d * a) - 1.0) / (1j * d)
    return out


@dataclass
class GapProbeReport:
    gap_length: float
    sizes: list[int]
    min_eigenvalues: list[float]       # raw eigensolver output
    floored_eigenvalues: list[float]   # raw floored at the backward error scale
    noise_floors: list[float]
    classification: str                # DecaysToZero | BoundedBelow | Inconclusive
    fall_factor: float
    step_ratios: list[float]
    vector_l1: list[float]             # norms of the minimizing eigenvectors
    vector_l2: list[float]
    breakdown: bool = False


def min_gap_residual(seq: SeparatedSequence, a: float, sizes) -> GapProbeReport:
    """Smallest Gram eigenvalue along growing centered point windows.

    For each N the centered window of N points is selected and the
    smallest eigenvalue of the exponential Gram matrix on [0, a] computed
    with a dense Hermitian solver.  Raw eigenvalues below the backward
    error scale N * eps * lambda_max are floored before classification:

    * DecaysToZero   when the final raw eigenvalue sits at or below its
      noise floor (the centered windows are nested, so the exact value is
      nonincreasing by Cauchy interlacing and a terminal machine zero
      certifies the decay), or when the floored values fall by at least
      10x overall with a monotone trend (each step below 1.5x the
      previous value),
    * BoundedBelow   when every value stays within 2x of the initial one,
    * Inconclusive   otherwise.

    The plunge past the time-bandwidth product is superexponential, so on
    coarse size ladders the eigenvalue can be at machine zero already at
    the first window; the terminal-floor rule is what keeps that case out
    of Inconclusive.
    """
    sizes = [int(n) for n in sizes]
    if any(b <= a_ for a_, b in zip(sizes, sizes[1:])) or len(sizes) == 0:
        raise ValueError("sizes must be strictly increasing")
    if sizes[-1] > GRAM_SIZE_CAP:
        raise SizeGuard(f"size {sizes[-1]} beyond dense solver cap {GRAM_SIZE_CAP}")
    if sizes[-1] > len(seq):
        raise ValueError("sizes exceed the number of available points")

    raw, floored, floors, l1s, l2s = [], [], [], [], []
    breakdown = False
    for n in sizes:
        start = (len(seq) - n) // 2
        pts = seq.points[start : start + n]
        g = gram_matrix(pts, a)
        try:
            vals, vecs = np.linalg.eigh(g)
        except np.linalg.LinAlgError:
            breakdown = True
            break
        lam_min = float(vals[0])
        lam_max = float(vals[-1])
        floor = n * np.finfo(float).eps * max(lam_max, 1.0)
        vec = vecs[:, 0]
        raw.append(lam_min)
        floors.append(float(floor))
        floored.append(max(lam_min, float(floor)))
        l1s.append(float(np.abs(vec).sum()))
        l2s.append(float(np.linalg.norm(vec)))

    if breakdown and not raw:
        raise NumericalBreakdown("eigensolver failed on the smallest window")

    ratios = [floored[k + 1] / floored[k] for k in range(len(floored) - 1)]
    fall = floored[0] / floored[-1] if floored[-1] > 0 else math.inf
    if breakdown:
        classification = INCONCLUSIVE
    elif raw[-1] <= floors[-1]:
        classification = "DecaysToZero"
    elif fall >= 10.0 and all(r <= 1.5 for r in ratios):
        classification = "DecaysToZero"
    elif all(0.5 * floored[0] <= v <= 2.0 * floored[0] for v in floored):
        classification = "BoundedBelow"
    else:
        classification = INCONCLUSIVE

    return GapProbeReport(
        gap_length=float(a),
        sizes=sizes[: len(raw)] if breakdown else sizes,
        min_eigenvalues=raw,
        floored_eigenvalues=floored,
        noise_floors=floors,
        classification=classification,
        fall_factor=float(fall),
        step_ratios=ratios,
        vector_l1=l1s,
        vector_l2=l2s,
        breakdown=breakdown,
    )
