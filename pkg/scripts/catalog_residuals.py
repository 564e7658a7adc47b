"""Check every catalog profile against its first-order polynomial relation.

For each named wave the profile is differentiated in closed form and pushed
through p(U, U') on a sample grid; the table reports the worst residual, the
boundary behavior, and whether the relation also vanishes symbolically for
the exp-rational profiles.  The PDE residual column substitutes the traveling
profile back into the equation itself.
"""

import argparse
import sys

from algwaves.waves import catalog, make_entry, pde_residual_along_profile, verify_entry


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--entry", help="single catalog entry (default: all)")
    ap.add_argument("--samples", type=int, default=201)
    ap.add_argument("--lo", type=float, default=-10.0)
    ap.add_argument("--hi", type=float, default=10.0)
    ap.add_argument("--tol", type=float, default=1e-8)
    args = ap.parse_args()

    entries = {args.entry: make_entry(args.entry)} if args.entry else catalog()

    print("%-16s %-12s %-12s %-9s %-9s" % ("entry", "relation", "equation",
                                           "boundary", "symbolic"))
    worst = 0.0
    bad = []
    for name, entry in entries.items():
        rep = verify_entry(entry, n=args.samples, lo=args.lo, hi=args.hi)
        pde_res = pde_residual_along_profile(entry)
        sym = "yes" if rep.symbolic_zero else ("-" if entry.exp_rational is None
                                               else "NO")
        bnd = "-" if entry.boundary is None else ("ok" if rep.boundary_ok else "NO")
        print("%-16s %-12.3e %-12.3e %-9s %-9s"
              % (name, rep.max_residual, pde_res, bnd, sym))
        worst = max(worst, rep.max_residual, pde_res)
        if max(rep.max_residual, pde_res) > args.tol or not rep.ok:
            bad.append(name)

    print()
    print("worst residual %.3e over %d samples of [%g, %g]"
          % (worst, args.samples, args.lo, args.hi))
    if bad:
        print("FAILED: %s" % ", ".join(bad))
        return 1
    print("all entries within %.1e" % args.tol)
    return 0


if __name__ == "__main__":
    sys.exit(main())
