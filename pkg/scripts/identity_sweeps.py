#!/usr/bin/env python3
"""Long-form identity sweeps.

Pushes the combinatorial and commutation verifications past the defaults:
ladder recurrences to a configurable height, both power-commutation identities
for both presentation types, and the determinant identities, with timings.
"""

from __future__ import annotations

import argparse
import sys
import time

from skewsmooth.diffusion import (DiffusionType, verify_determinant_identities,
                                  verify_left_commutation, verify_pq_recurrences,
                                  verify_right_commutation)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--ladder-max", type=int, default=40)
    parser.add_argument("--power-max", type=int, default=8)
    parser.add_argument("--samples", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    t = time.perf_counter()
    pq = verify_pq_recurrences(args.ladder_max, args.samples, args.seed)
    print(f"ladder recurrences n <= {args.ladder_max}: "
          f"{'PASS' if pq.all_pass else 'FAIL'} "
          f"({pq.checked} instances, {time.perf_counter() - t:.2f}s)")

    for dtype in (DiffusionType.TYPE1, DiffusionType.TYPE2):
        t = time.perf_counter()
        rep = verify_right_commutation(args.power_max, args.samples, args.seed, dtype)
        print(f"right commutation {dtype.value} n <= {args.power_max}: {rep.status} "
              f"({time.perf_counter() - t:.2f}s)")

    for dtype in (DiffusionType.TYPE1, DiffusionType.TYPE2):
        t = time.perf_counter()
        rep = verify_left_commutation(args.power_max, args.samples, args.seed, dtype)
        line = f"left commutation {dtype.value} n <= {args.power_max}: {rep.status}"
        if rep.counterexample:
            line += (f" (minimal n = {rep.minimal_failing_n}, "
                     f"residual {rep.counterexample['residual']})")
        print(line + f" ({time.perf_counter() - t:.2f}s)")

    t = time.perf_counter()
    dets = verify_determinant_identities(args.samples, args.seed)
    print(f"determinant identities: {'PASS' if dets.all_pass else 'FAIL'} "
          f"({time.perf_counter() - t:.2f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
