#!/usr/bin/env python3
"""Derive partial quotients of pi - 3 from a rigorous rational enclosure.

pi is evaluated with mpmath at high precision; the decimal string is turned
into exact rationals lo < pi < hi, and only the partial quotients shared by
the expansions of lo - 3 and hi - 3 are emitted.
"""
import argparse
from fractions import Fraction

import mpmath


def cf(fr, limit):
    out = []
    while fr.numerator != 0 and len(out) < limit:
        inv = 1 / fr
        a = inv.numerator // inv.denominator
        out.append(a)
        fr = inv - a
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dps", type=int, default=400)
    ap.add_argument("--count", type=int, default=300)
    args = ap.parse_args()

    mpmath.mp.dps = args.dps + 20
    text = mpmath.nstr(mpmath.pi, args.dps + 10, strip_zeros=False)
    mid = Fraction(text)
    eps = Fraction(1, 10 ** args.dps)
    lo = cf(mid - eps - 3, args.count + 5)
    hi = cf(mid + eps - 3, args.count + 5)
    common = []
    for a, b in zip(lo, hi):
        if a != b:
            break
        common.append(a)
    # the last shared digit of two enclosing endpoints is not yet decided
    common = common[:-1][: args.count]

    print("# Partial quotients of pi - 3 = [a1, a2, ...], one per line.")
    print(f"# provenance: tools/derive_pi_digits.py, mpmath {mpmath.__version__}, "
          f"enclosure |pi - m| <= 10^-{args.dps}, {len(common)} quotients "
          "shared by both enclosure endpoints")
    for a in common:
        print(a)


if __name__ == "__main__":
    main()
