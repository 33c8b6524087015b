#!/usr/bin/env python3
"""Time certification and Buchberger runs under each pair-criterion setting; write CSV."""
import argparse
import csv
import sys
import time

from uppermccool import alexinv, modgb


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rows = [["n", "task", "setting", "seconds", "result"]]
    for n in range(3, args.n_max + 1):
        G = alexinv.elements(alexinv.gens_G(n))
        cert, s = timed(modgb.is_groebner, G, stop_at_first=False)
        rows.append([n, "is_groebner(G)", "all pairs", f"{s:.3f}", f"{cert.pairs_checked} pairs"])
        B = alexinv.elements(alexinv.gens_B(n))
        for label, kw in [("product", {}), ("product+chain", {"chain_criterion": True}),
                          ("no criteria", {"product_criterion": False})]:
            gb, s = timed(modgb.buchberger, B, **kw)
            rows.append([n, "buchberger(B)", label, f"{s:.3f}", f"{len(gb)} elements"])

    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    csv.writer(fh).writerows(rows)
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
