#!/usr/bin/env python3
"""Scan Cayley-graph balls around the identity and intersect them with the
derived subgroup.  At radius 4 the intersection is exactly the identity
plus the (2^n - 1)^2 commutators [x,y] with x, y nonidentity.

Usage: python scripts/ball_scan.py [--n 2] [--max-radius 5]
"""

import argparse

from mixdih.group import context, format_element
from mixdih.symmetry import ball_intersect_derived, commutator_square


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--max-radius", type=int, default=5)
    args = ap.parse_args()

    ctx = context(args.n)
    square = commutator_square(ctx)
    print(f"n={args.n}: |S'| = {len(square)} distinct commutators [x,y]")
    for r in range(args.max_radius + 1):
        ball = ball_intersect_derived(ctx, r)
        tag = ""
        if r == 4:
            tag = "  <- {1} u S'" if set(ball[1:]) == set(square) else "  !?"
        print(f"radius {r}: {len(ball)} derived elements{tag}")
    if args.n == 2:
        print("radius-4 commutators:")
        for e in ball_intersect_derived(ctx, 4)[1:]:
            print(" ", format_element(ctx, e))


if __name__ == "__main__":
    main()
