#!/usr/bin/env python3
"""Which products g * r_ijk, g a listed generator of J43, fail to vanish in B_4.

Also prints a basis of Ann(B_4) in low degrees and checks it lies in J43.
"""
import argparse

from uppermccool import resonance
from uppermccool.alexinv import groebner_G


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-deg", type=int, default=3)
    args = ap.parse_args()

    G = groebner_G(4)
    cert = resonance.j43_annihilation(G)
    print(f"{len(cert.checks) - len(cert.failures())} of {len(cert.checks)} products vanish in B_4")
    for c in cert.failures():
        print(f"  nonzero: {c.name[:-len(' in im Psi')]}  normal form {c.witness}")
    print()
    for d in range(1, args.max_deg + 1):
        basis = resonance.annihilator_degree(4, d, G)
        print(f"Ann(B_4) in degree {d}: dimension {len(basis)}")
        for p in basis:
            print(f"  {p}")
    print()
    print(resonance.ann_contained_in_J43(args.max_deg, G).render())
    print(resonance.j43_radical(G).render())


if __name__ == "__main__":
    main()
