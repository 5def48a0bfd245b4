"""Compare computed and closed-form structure sets on a parameter grid and time it."""

from __future__ import annotations

import argparse
import time

from lensstruct import rho, structset


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dmax", type=int, default=10)
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--Kmax", type=int, default=6)
    args = p.parse_args()
    start = time.perf_counter()
    bad = []
    count = 0
    for d in range(2, args.dmax + 1):
        for k in range(1, args.kmax + 1):
            for K in range(1, args.Kmax + 1):
                count += 1
                report = structset.structure_set_lens_even(d, k, K)
                ok_bk, _ = rho.verify_BK_structure(d, k, K)
                if not (report.verified and ok_bk):
                    bad.append((d, k, K, str(report.group), str(report.closed_form)))
    elapsed = time.perf_counter() - start
    print(f"{count} points, {len(bad)} mismatches, {elapsed:.1f}s")
    for row in bad:
        print("  mismatch d=%d k=%d K=%d computed %s closed %s" % row)
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
