"""Command line front end: one subcommand per engine capability.

Each run prints a single JSON object on stdout (or to ``--out``);
``--csv-out`` writes plot-friendly curves next to it.  JSON output is
deterministic: keys are sorted and floats are printed with 17 significant
digits, so identical argv and input files give byte-identical bytes.
Every JSON object embeds the resolved parameter set under ``params``.

Exit codes: 0 definite verdict (and pure construction/dump commands),
2 Inconclusive verdict, 1 computation errors, 64 usage errors (the
generator grammar is printed), 65 unreadable or malformed data files.
"""

from __future__ import annotations

import argparse
import cmath
import math
import sys

import numpy as np

from . import _json
from .density import (
    NOT_POLYA,
    default_radius_ladder,
    interior_density,
    null_ratio_witness,
)
from .envelope import (
    INCONCLUSIVE,
    bm_family,
    classify_short_long,
    family_from_csv,
    family_to_csv,
)
from .errors import (
    BadDataFile,
    BmLabError,
    DuplicatePoint,
    EmptyRange,
    NotSeparated,
    UnknownGenerator,
    WindowTooSmall,
)
from .gap import (
    TWO_PI,
    cauchy_decay,
    lattice_gap_measure,
    measure_to_csv,
    min_gap_residual,
    symmetric_gap_measure,
    verify_gap,
)
from .sequences import (
    Lattice,
    LogPerturbedLattice,
    SymmetricSquares,
    gamma_line,
    generate,
    load_sequence,
    read_sequence_file,
)
from .zerotype import eval_qcos, log_abs_cos, log_abs_qcos, type_estimate

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_DATA = 65

GENERATOR_GRAMMAR = """\
generator grammar:
  lattice:<step>    points n*step for all integers n with |n*step| <= radius
  squares           points sign(n)*n^2 for |n| <= floor(sqrt(radius))
  logperturbed      points n + n/log(|n|+2), kept while |point| <= radius
  file:<path>       text file, one decimal real per line, # comments allowed
Built-in generators require --radius; file sources use it as an optional cut."""


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 64 plus grammar."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        print(GENERATOR_GRAMMAR, file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def parse_generator(spec: str, radius: float | None = None):
    """Materialize a sequence from a generator spec string.

    Grammar: ``lattice:<step>`` | ``squares`` | ``logperturbed`` |
    ``file:<path>``.  The radius bounds the built-in generators (their
    index ranges are derived from it) and is required for them; for file
    sources it optionally cuts the points to [-radius, radius].  The data
    window of a radius-bounded sequence is (-radius, radius).
    """
    name, _, param = spec.partition(":")
    name = name.strip()
    has_param = ":" in spec

    if name == "file":
        if not param:
            raise UnknownGenerator("file generator needs a path: file:<path>")
        base = read_sequence_file(param)
        if radius is None:
            return base
        pts = base.points[np.abs(base.points) <= radius]
        if pts.size == 0:
            raise EmptyRange(f"no points of {param} within radius {radius:g}")
        return load_sequence(pts, window=(-radius, radius))

    if name == "lattice":
        if not param:
            raise UnknownGenerator("lattice generator needs a step: lattice:<step>")
        try:
            step = float(param)
        except ValueError:
            raise UnknownGenerator(f"lattice step is not a number: {param!r}") from None
        if not (math.isfinite(step) and step > 0):
            raise UnknownGenerator(f"lattice step must be positive, got {param}")
        if radius is None:
            raise ValueError("a radius is required to materialize lattice:<step>")
        n_max = int(math.floor(radius / step))
        if n_max < 1:
            raise WindowTooSmall(f"radius {radius:g} is below one lattice step {step:g}")
        pts = generate(Lattice(step, -n_max, n_max)).points
        return load_sequence(pts, window=(-radius, radius))

    if has_param:
        raise UnknownGenerator(f"generator {name!r} takes no parameter")

    if name == "squares":
        if radius is None:
            raise ValueError("a radius is required to materialize squares")
        m = int(math.floor(math.sqrt(radius)))
        if m < 1:
            raise WindowTooSmall(f"radius {radius:g} holds no nonzero square")
        pts = generate(SymmetricSquares(-m, m)).points
        return load_sequence(pts, window=(-radius, radius))

    if name == "logperturbed":
        if radius is None:
            raise ValueError("a radius is required to materialize logperturbed")
        n_max = int(math.floor(radius))
        if n_max < 1:
            raise WindowTooSmall(f"radius {radius:g} holds no perturbed point")
        base = generate(LogPerturbedLattice(-n_max, n_max))
        pts = base.points[np.abs(base.points) <= radius]
        return load_sequence(pts, window=(-radius, radius))

    raise UnknownGenerator(f"unknown generator {spec!r}")


def _seq_spec(parser, args) -> str:
    if args.seq and args.input:
        parser.error("use exactly one of --seq and --input")
    if args.input:
        return f"file:{args.input}"
    if args.seq:
        return args.seq
    parser.error("one of --seq or --input is required")


def _radius_arg(parser, args):
    if not args.radius:
        return None
    r = max(args.radius)
    if not (math.isfinite(r) and r > 0):
        parser.error("--radius must be positive and finite")
    return r


def _evidence_ladder(parser, args):
    """Explicit radius ladder when --radius is repeated, else None."""
    if args.radius and len(args.radius) > 1:
        ladder = sorted(set(args.radius))
        if len(ladder) < 4:
            parser.error("an explicit radius ladder needs at least 4 distinct values")
        return ladder
    return None


def _build_sequence(parser, args):
    spec = _seq_spec(parser, args)
    radius = _radius_arg(parser, args)
    if radius is None and not spec.startswith("file:"):
        parser.error("--radius is required for built-in generators")
    return parse_generator(spec, radius), spec, radius


def _parse_pair(parser, text, flag):
    parts = text.split(",")
    if len(parts) != 2:
        parser.error(f"{flag} expects lo,hi")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        parser.error(f"{flag} expects two numbers, got {text!r}")
    if not lo < hi:
        parser.error(f"{flag} needs lo < hi")
    return lo, hi


def _single_n(parser, args, default):
    if not args.n:
        return default
    if len(args.n) > 1:
        parser.error("--n must be given exactly once for this subcommand")
    return int(args.n[0])


def _y_ladder(parser, args, spacing, min_count=4):
    if not (args.y_min > 0 and args.y_max > args.y_min):
        parser.error("need 0 < --y-min < --y-max")
    if args.y_count < min_count:
        parser.error(f"--y-count must be at least {min_count}")
    if spacing == "log":
        return np.geomspace(args.y_min, args.y_max, args.y_count)
    return np.linspace(args.y_min, args.y_max, args.y_count)


def _emit(args, payload) -> None:
    text = _json.dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _shortness_dict(report):
    return {
        "verdict": report.verdict,
        "model": report.growth_fit.model,
        "coefficient": report.growth_fit.coefficient,
        "r_squared": report.growth_fit.r_squared,
        "radii": report.radii,
        "partial_sums": report.partial_sums,
        "degenerate": report.degenerate,
        "edge_mass": report.edge_mass,
        "boundary_dominated": report.boundary_dominated,
    }


def _density_dict(rep):
    return {
        "a_lower": rep.a_lower,
        "a_upper": rep.a_upper,
        "polya_class": rep.polya_class,
        "gap_lower": rep.gap_lower,
        "gap_upper": rep.gap_upper,
        "radii": rep.radii,
        "a_tolerance": rep.a_tolerance,
        "resolution_ok": rep.resolution_ok,
        "delta": rep.delta,
        "n_points": rep.n_points,
        "window": list(rep.window),
        "trials": [{"a": t.a, "verdict": t.verdict} for t in rep.trials],
    }


def _witness_dict(witness):
    if witness is None:
        return None
    return {
        "ladder": witness.ladder,
        "ratios": witness.ratios,
        "intervals": [
            {"left": iv.left, "right": iv.right} for iv in witness.family.intervals
        ],
        "shortness": _shortness_dict(witness.shortness),
    }


def _density_csv(path, rep) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# trials\na,verdict\n")
        for t in rep.trials:
            fh.write(f"{t.a!r},{t.verdict}\n")
        fh.write("\n# partial_sums\na,radius,partial_sum\n")
        for t in rep.trials:
            for r, s in zip(t.shortness.radii, t.shortness.partial_sums):
                fh.write(f"{t.a!r},{r!r},{s!r}\n")


def _cmd_density(parser, args) -> int:
    seq, spec, radius = _build_sequence(parser, args)
    if not args.tol > 0:
        parser.error("--tol must be positive")
    ladder = _evidence_ladder(parser, args)
    rep = interior_density(seq, radii=ladder, a_tolerance=args.tol)
    payload = {
        "params": {"command": "density", "seq": spec, "radius": radius, "tol": args.tol},
        **_density_dict(rep),
    }
    _emit(args, payload)
    if args.csv_out:
        _density_csv(args.csv_out, rep)
    return EXIT_INCONCLUSIVE if rep.polya_class == INCONCLUSIVE else EXIT_OK


def _cmd_classify(parser, args) -> int:
    seq, spec, radius = _build_sequence(parser, args)
    if not args.tol > 0:
        parser.error("--tol must be positive")
    ladder = _evidence_ladder(parser, args)
    density = interior_density(seq, radii=ladder, a_tolerance=args.tol)
    witness = null_ratio_witness(seq)
    # a long null-ratio family is a certificate, it overrides the bracket
    polya_class = NOT_POLYA if witness is not None else density.polya_class
    payload = {
        "params": {"command": "classify", "seq": spec, "radius": radius, "tol": args.tol},
        "polya_class": polya_class,
        "density": _density_dict(density),
        "witness": _witness_dict(witness),
    }
    _emit(args, payload)
    if args.csv_out:
        with open(args.csv_out, "w", encoding="utf-8") as fh:
            fh.write("# trials\na,verdict\n")
            for t in density.trials:
                fh.write(f"{t.a!r},{t.verdict}\n")
            if witness is not None:
                fh.write("\n# witness\nleft,right,ratio\n")
                for iv, ratio in zip(witness.family.intervals, witness.ratios):
                    fh.write(f"{iv.left!r},{iv.right!r},{ratio!r}\n")
    return EXIT_INCONCLUSIVE if polya_class == INCONCLUSIVE else EXIT_OK


def _cmd_bm(parser, args) -> int:
    seq, spec, radius = _build_sequence(parser, args)
    if args.a is None:
        parser.error("--a is required")
    if args.window:
        window = _parse_pair(parser, args.window, "--window")
    elif radius is not None:
        window = (-radius, radius)
    else:
        window = seq.window
    fam = bm_family(gamma_line(seq, float(args.a)), window)
    payload = {
        "params": {
            "command": "bm",
            "seq": spec,
            "radius": radius,
            "a": args.a,
            "window": list(window),
        },
        "count": len(fam),
        "intervals": [
            {"left": iv.left, "right": iv.right, "flag": flag}
            for iv, flag in zip(fam.intervals, fam.flags)
        ],
    }
    _emit(args, payload)
    if args.csv_out:
        family_to_csv(fam, args.csv_out)
    return EXIT_OK


def _cmd_short(parser, args) -> int:
    fam = family_from_csv(args.family)
    ladder = _evidence_ladder(parser, args)
    if ladder is None:
        if args.radius:
            r_max = args.radius[0]
        elif fam.intervals:
            r_max = max(max(abs(iv.left), abs(iv.right)) for iv in fam.intervals)
        else:
            r_max = 16.0
        ladder = default_radius_ladder(r_max)
    rep = classify_short_long(lambda _r: fam, ladder)
    payload = {
        "params": {"command": "short", "family": args.family, "radii": ladder},
        "count": len(fam),
        **_shortness_dict(rep),
    }
    _emit(args, payload)
    if args.csv_out:
        with open(args.csv_out, "w", encoding="utf-8") as fh:
            fh.write("radius,partial_sum\n")
            for r, s in zip(rep.radii, rep.partial_sums):
                fh.write(f"{r!r},{s!r}\n")
    return EXIT_INCONCLUSIVE if rep.verdict == INCONCLUSIVE else EXIT_OK


def _cmd_gap_probe(parser, args) -> int:
    seq, spec, radius = _build_sequence(parser, args)
    if args.gap is None or not args.gap > 0:
        parser.error("--gap must be positive")
    sizes = sorted(set(int(n) for n in (args.n or (21, 51, 101, 201))))
    if sizes[0] < 1:
        parser.error("--n values must be positive")
    if sizes[-1] > len(seq):
        parser.error(f"--n {sizes[-1]} exceeds the {len(seq)} available points")
    rep = min_gap_residual(seq, args.gap, sizes)
    payload = {
        "params": {
            "command": "gap-probe",
            "seq": spec,
            "radius": radius,
            "gap": args.gap,
            "sizes": sizes,
        },
        "classification": rep.classification,
        "sizes": rep.sizes,
        "min_eigenvalues": rep.min_eigenvalues,
        "floored_eigenvalues": rep.floored_eigenvalues,
        "noise_floors": rep.noise_floors,
        "fall_factor": rep.fall_factor,
        "step_ratios": rep.step_ratios,
        "vector_l1": rep.vector_l1,
        "vector_l2": rep.vector_l2,
        "breakdown": rep.breakdown,
    }
    _emit(args, payload)
    if args.csv_out:
        with open(args.csv_out, "w", encoding="utf-8") as fh:
            fh.write("size,min_eigenvalue,floored,noise_floor,vector_l1,vector_l2\n")
            rows = zip(
                rep.sizes,
                rep.min_eigenvalues,
                rep.floored_eigenvalues,
                rep.noise_floors,
                rep.vector_l1,
                rep.vector_l2,
            )
            for n, lam, fl, nf, l1, l2 in rows:
                fh.write(f"{n},{lam!r},{fl!r},{nf!r},{l1!r},{l2!r}\n")
    return EXIT_INCONCLUSIVE if rep.classification == INCONCLUSIVE else EXIT_OK


def _parse_smoothness(parser, text):
    if text == "inf":
        return "inf"
    try:
        k = int(text)
    except ValueError:
        parser.error(f"--smoothness must be 'inf' or a nonnegative integer, got {text!r}")
    if k < 0:
        parser.error("--smoothness must be nonnegative")
    return k


def _cmd_gap_measure(parser, args) -> int:
    a = args.gap
    if a is None or not 0.0 < a < TWO_PI:
        parser.error("--gap must lie in (0, 2*pi)")
    n = _single_n(parser, args, 256)
    if n < 32:
        parser.error("--n must be at least 32")
    smooth = _parse_smoothness(parser, args.smoothness)
    mu = lattice_gap_measure(a, n, smooth)
    payload = {
        "params": {
            "command": "gap-measure",
            "gap": a,
            "n": n,
            "smoothness": args.smoothness,
            "verify_interval": args.verify_interval,
            "grid_step": args.grid_step,
        },
        "n_atoms": len(mu),
        "total_variation": mu.total_variation,
        "margin": (TWO_PI - a) / 8.0,
    }
    if args.verify_interval:
        lo, hi = _parse_pair(parser, args.verify_interval, "--verify-interval")
        if not args.grid_step > 0:
            parser.error("--grid-step must be positive")
        check = verify_gap(mu, (lo, hi), args.grid_step)
        payload["verify"] = {
            "interval": [lo, hi],
            "grid_step": check.grid_step,
            "max_abs": check.max_abs,
            "argmax": check.argmax,
        }
    _emit(args, payload)
    if args.csv_out:
        measure_to_csv(mu, args.csv_out)
    return EXIT_OK


def _cmd_cauchy(parser, args) -> int:
    a = args.gap
    if a is None or not 0.0 < a < TWO_PI:
        parser.error("--gap must lie in (0, 2*pi)")
    n = _single_n(parser, args, 256)
    if n < 32:
        parser.error("--n must be at least 32")
    if args.x is None:
        parser.error("--x is required")
    if not args.tol > 0:
        parser.error("--tol must be positive")
    ys = _y_ladder(parser, args, "linear")
    mu = symmetric_gap_measure(a / 2.0, n)
    rep = cauchy_decay(mu, args.x, ys, args.tol)
    payload = {
        "params": {
            "command": "cauchy",
            "gap": a,
            "n": n,
            "x": args.x,
            "y_min": args.y_min,
            "y_max": args.y_max,
            "y_count": args.y_count,
            "tol": args.tol,
        },
        "half_gap": a / 2.0,
        "verdict": rep.verdict,
        "x": rep.x,
        "tolerance": rep.tolerance,
        "y_values": rep.y_values,
        "plus": {"rate": rep.plus.rate, "log_abs": rep.plus.log_abs},
        "minus": {"rate": rep.minus.rate, "log_abs": rep.minus.log_abs},
    }
    _emit(args, payload)
    if args.csv_out:
        with open(args.csv_out, "w", encoding="utf-8") as fh:
            fh.write("y,log_abs_plus,log_abs_minus\n")
            for y, lp, lm in zip(rep.y_values, rep.plus.log_abs, rep.minus.log_abs):
                fh.write(f"{y!r},{lp!r},{lm!r}\n")
    return EXIT_OK


def _cmd_ftype(parser, args) -> int:
    ys = _y_ladder(parser, args, "log", min_count=8)
    if args.function == "qcos":
        f, log_modulus = eval_qcos, log_abs_qcos
    else:
        f, log_modulus = cmath.cos, log_abs_cos
    est = type_estimate(f, ys, log_modulus=log_modulus)
    payload = {
        "params": {
            "command": "ftype",
            "function": args.function,
            "y_min": args.y_min,
            "y_max": args.y_max,
            "y_count": args.y_count,
        },
        "fitted_type": est.fitted_type,
        "fitted_sqrt_coeff": est.fitted_sqrt_coeff,
        "y_max": est.y_max,
        "y_values": est.y_values,
        "log_moduli": est.log_moduli,
    }
    _emit(args, payload)
    if args.csv_out:
        with open(args.csv_out, "w", encoding="utf-8") as fh:
            fh.write("y,log_modulus\n")
            for y, lg in zip(est.y_values, est.log_moduli):
                fh.write(f"{y!r},{lg!r}\n")
    return EXIT_OK


def _add_out_flags(p) -> None:
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--csv-out", help="write plot-friendly curves to this CSV file")
    p.add_argument(
        "--json",
        action="store_true",
        help="JSON output (default; the only report format)",
    )


def _add_seq_flags(p) -> None:
    p.add_argument("--seq", help="sequence generator spec; see the grammar below --help")
    p.add_argument("--input", help="sequence file path, same as --seq file:<path>")
    p.add_argument(
        "--radius",
        action="append",
        type=float,
        help="window radius; repeat 4+ times for an explicit evidence ladder",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bm-lab",
        description="Interior density, shortness envelopes and spectral gap probes "
        "for separated real sequences.",
        epilog=GENERATOR_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", help="bracket the interior density by bisection")
    _add_seq_flags(p)
    p.add_argument("--tol", type=float, default=0.05, help="bracket tolerance on a")
    _add_out_flags(p)

    p = sub.add_parser("classify", help="full classification: density bracket plus witness search")
    _add_seq_flags(p)
    p.add_argument("--tol", type=float, default=0.05, help="bracket tolerance on a")
    _add_out_flags(p)

    p = sub.add_parser("bm", help="dump the envelope interval family of a*x - n(x)")
    _add_seq_flags(p)
    p.add_argument("--a", type=float, help="slope of the test line")
    p.add_argument("--window", help="computation window lo,hi (default -radius,radius)")
    _add_out_flags(p)

    p = sub.add_parser("short", help="classify an interval family file as Short or Long")
    p.add_argument("--family", required=True, help="CSV file with left,right[,flag] rows")
    p.add_argument(
        "--radius",
        action="append",
        type=float,
        help="evidence radius; repeat 4+ times for an explicit ladder",
    )
    _add_out_flags(p)

    p = sub.add_parser("gap-probe", help="smallest Gram eigenvalue along growing windows")
    _add_seq_flags(p)
    p.add_argument("--gap", type=float, help="interval length a of the Gram inner product")
    p.add_argument(
        "--n",
        action="append",
        type=int,
        help="window sizes (repeatable); default 21 51 101 201",
    )
    _add_out_flags(p)

    p = sub.add_parser("gap-measure", help="design an integer-atom measure with a spectral gap")
    p.add_argument("--gap", type=float, help="designed gap length a in (0, 2*pi)")
    p.add_argument("--n", action="append", type=int, help="coefficient cutoff N (default 256)")
    p.add_argument("--smoothness", default="inf", help="'inf' or an integer k for a C^k bump")
    p.add_argument("--verify-interval", help="check max |transform| on lo,hi")
    p.add_argument("--grid-step", type=float, default=1e-3, help="verification grid step")
    _add_out_flags(p)

    p = sub.add_parser("cauchy", help="Cauchy transform decay test on a symmetric gap measure")
    p.add_argument("--gap", type=float, help="symmetric gap length; transform vanishes on +-gap/2")
    p.add_argument("--n", action="append", type=int, help="coefficient cutoff N (default 256)")
    p.add_argument("--x", type=float, help="test abscissa of the decay criterion")
    p.add_argument("--y-min", type=float, default=2.0)
    p.add_argument("--y-max", type=float, default=20.0)
    p.add_argument("--y-count", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-6, help="terminal magnitude for VanishesCompatible")
    _add_out_flags(p)

    p = sub.add_parser("ftype", help="exponential type fit along the imaginary axis")
    p.add_argument("--function", choices=("qcos", "cos"), default="qcos")
    p.add_argument("--y-min", type=float, default=10.0)
    p.add_argument("--y-max", type=float, default=1e6)
    p.add_argument("--y-count", type=int, default=64)
    _add_out_flags(p)

    return parser


_HANDLERS = {
    "density": _cmd_density,
    "classify": _cmd_classify,
    "bm": _cmd_bm,
    "short": _cmd_short,
    "gap-probe": _cmd_gap_probe,
    "gap-measure": _cmd_gap_measure,
    "cauchy": _cmd_cauchy,
    "ftype": _cmd_ftype,
}


def run(argv) -> int:
    """Execute one subcommand; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        return handler(parser, args)
    except UnknownGenerator as exc:
        parser.error(str(exc))
    except (OSError, BadDataFile, DuplicatePoint, NotSeparated, EmptyRange) as exc:
        print(f"{parser.prog}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BmLabError as exc:
        print(f"{parser.prog}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
