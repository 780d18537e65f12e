"""Print the away and near reproduction grids with relative sharpness.

    python3 demo/reproduce_tables.py [table ids...]   (default: 1 2 3 4 7)
"""
import sys

import mpmath as mp

from airybounds import tables


def main(ids):
    cfg = tables.Config()
    for tid in ids:
        print(f"table {tid}: {', '.join(tables.TABLE_COLUMNS[tid])}, true error, bound, e_r")
        for row in tables.run_table(tid, cfg):
            print("  ", *row.key, mp.nstr(row.true_error, 12), mp.nstr(row.bound, 12), mp.nstr(row.e_r, 3))


if __name__ == "__main__":
    main([int(a) for a in sys.argv[1:]] or [1, 2, 3, 4, 7])
