"""Print the descending-degree HNF diagonal of the preimage lattice next to its predicted form."""

from __future__ import annotations

import argparse

from lensstruct import rho


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--Kmax", type=int, default=6)
    args = p.parse_args()
    for K in range(1, args.Kmax + 1):
        ok, info = rho.verify_BK_structure(args.d, args.k, K)
        print(f"K={K} index={info['index']} triangular={info['triangular']} ok={ok}")
        print(f"  diagonal {info['diagonal']}")
        print(f"  expected {info['expected']}")


if __name__ == "__main__":
    main()
