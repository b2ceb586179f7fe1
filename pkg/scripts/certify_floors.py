#!/usr/bin/env python3
"""Certify the exact rate floor on tiny instances with the exhaustive oracle.

For every (K, F, Z) whose cell count fits under the search guard, finds the
true minimal slot count S by exhaustion and checks it against the counting
floor S >= F*(F-Z)/Z.  Prints one line per instance; instances where the
true minimum exceeds the floor show where the floor is not tight.

Usage:
  python scripts/certify_floors.py [--max-cells 18]
"""

from __future__ import annotations

import argparse

from dpda import search_min_s, validate
from dpda.bounds import format_table


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-cells", type=int, default=18)
    args = parser.parse_args()

    rows = []
    for k in range(2, args.max_cells // 2 + 1):
        for f in range(2, args.max_cells // k + 1):
            for z in range(1, f + 1):
                res = search_min_s(k, f, z, (f - z) * k,
                                   cells_limit=args.max_cells)
                floor = -(-(f * (f - z)) // z)
                if res.feasible:
                    assert res.minimal_s >= floor, (k, f, z)
                    assert validate(res.witness).valid
                    rows.append([k, f, z, floor, res.minimal_s,
                                 "tight" if res.minimal_s == floor else "gap",
                                 res.nodes_explored])
                else:
                    rows.append([k, f, z, floor, "-", "infeasible",
                                 res.nodes_explored])
    print(format_table(
        ["K", "F", "Z", "floor", "min S", "verdict", "nodes"], rows,
    ), end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
