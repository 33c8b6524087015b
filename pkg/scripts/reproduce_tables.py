#!/usr/bin/env python3
"""Print the tables of results: presentation for n=4, Hilbert series, Chen ranks, resonance."""
import argparse

from uppermccool import alexinv, hilbert, resonance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--k-max", type=int, default=8)
    args = ap.parse_args()

    print("Presentation matrix (transpose) for n=4")
    print(alexinv.psi(4).render())
    print()

    print("Hilbert series of B_n (computed, then closed form)")
    for n in range(3, args.n_max + 1):
        s = hilbert.hilb_fp(alexinv.psi(n))
        tag = "ok" if s == hilbert.closed_hilb_Bn(n) else "MISMATCH"
        print(f"  n={n}: {s}  [{tag}]  {s.expand(8)}")
    print()

    print(f"Chen ranks theta_1..theta_{args.k_max}")
    for n in range(3, args.n_max + 2):
        print(f"  n={n}: {chen_row(n, args.k_max)}")
    c = hilbert.comparison_ranks(4)
    print(f"  theta_4 at n=4: P_4={c['theta4_P']}, Pi_4={c['theta4_Pi']}, upper={c['theta4_upper_mccool']}, "
          f"McCool={c['thetak_mccool']}")
    print()

    print("Resonance components")
    for n in range(3, args.n_max + 1):
        comps = resonance.components(n)
        print(f"  n={n}: " + ", ".join(f"{c.name}(dim {c.dim}, iso {c.isotropy})" for c in comps))
        emb = resonance.embedded_components(n)
        if emb:
            print("        embedded: " + ", ".join(c.name for c in emb))


def chen_row(n, K):
    return " ".join(str(v) for v in hilbert.chen_closed(n, K).theta)


if __name__ == "__main__":
    main()
