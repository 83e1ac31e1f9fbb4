"""Censusing seminets: square arrays seen as incidence geometries.

A regular, non-compressible partial Latin square is the coordinate form of
a seminet: points are the filled cells, and each point lies on one row
line, one column line, and one symbol line.  The census enumerates the main
classes of these geometries by point rank, flags which are configurations
(connected, rank >= 4, every line holding >= 2 points), and matches them
against the package's named grids.

Run:  python3 demos/seminet_census.py [--max-rank N]   (N <= 8; default 5)
"""

from __future__ import annotations

import argparse

from plrkit.core import plr_from_text
from plrkit.seminets import census, named_plr, seminet_from_pls


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=5,
                        help="largest point rank to census (3..8)")
    args = parser.parse_args()

    records = census(args.max_rank)
    per_rank: dict[int, int] = {}
    for rec in records:
        per_rank[rec.rank] = per_rank.get(rec.rank, 0) + 1
    print(f"seminet main classes up to point rank {args.max_rank}:")
    for rank in sorted(per_rank):
        configs = sum(1 for r in records
                      if r.rank == rank and r.is_configuration)
        print(f"  rank {rank}: {per_rank[rank]} classes, "
              f"{configs} of them configurations")

    smallest = next(rec for rec in records if rec.is_configuration)
    print(f"\nsmallest configuration (rank {smallest.rank}):")
    print(f"  representative: {smallest.representative.entry_tuples()}")

    grid = named_plr("H")
    seminet = seminet_from_pls(grid)
    print(f"\nthe named grid 'H' is a rank-{len(seminet.points)} seminet "
          f"with {len(seminet.lines)} lines")
    print("\nCLI equivalent:  plrkit seminet-census --max-rank",
          args.max_rank)


if __name__ == "__main__":
    main()
