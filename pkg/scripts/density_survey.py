"""Sweep the interior density bracket across window radii.

Shows how the bisection bracket tightens (or refuses to) as the window
grows, for each built-in generator.  Output is a plain table, one row
per (generator, radius); pipe to a file for plotting.

    python3 scripts/density_survey.py
    python3 scripts/density_survey.py --radii 1e3 1e4 1e5 --tol 0.02
"""

import argparse
import sys
import time

from bmlab import interior_density, null_ratio_witness
from bmlab.cli import parse_generator

GENERATORS = ("lattice:1", "lattice:0.5", "squares", "logperturbed")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radii", nargs="+", type=float,
                    default=[1e2, 1e3, 1e4, 1e5])
    ap.add_argument("--tol", type=float, default=0.05)
    ap.add_argument("--generators", nargs="+", default=list(GENERATORS))
    args = ap.parse_args(argv)

    print(f"{'generator':<14} {'radius':>10} {'n':>8} {'a_lower':>10} "
          f"{'a_upper':>10} {'class':>14} {'witness':>8} {'secs':>6}")
    for spec in args.generators:
        for radius in args.radii:
            t0 = time.time()
            try:
                seq = parse_generator(spec, radius)
                rep = interior_density(seq, a_tolerance=args.tol)
                wit = null_ratio_witness(seq)
            except Exception as exc:  # surface guard trips per row
                print(f"{spec:<14} {radius:>10g} {type(exc).__name__}: {exc}")
                continue
            dt = time.time() - t0
            print(f"{spec:<14} {radius:>10g} {rep.n_points:>8d} "
                  f"{rep.a_lower:>10.5f} {rep.a_upper:>10.5f} "
                  f"{rep.polya_class:>14} {'yes' if wit else 'no':>8} {dt:>6.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
