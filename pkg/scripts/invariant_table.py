#!/usr/bin/env python3
"""Print the graded invariants of every nilradical up to a rank bound.

One line per simple type: dimension data, nilpotency class, and the
graded dimension vector that drives identification.
"""

import argparse

from lienil.chevalley import nilradical
from lienil.fingerprint import fingerprint
from lienil.rootsys import all_types, build_root_system


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-rank", type=int, default=8)
    args = ap.parse_args()

    print(f"{'type':<6}{'dim g':>7}{'dim n':>7}{'class':>7}  graded dims")
    for t in all_types(args.max_rank):
        a = nilradical(build_root_system(t))
        fp = fingerprint(a)
        dims = ", ".join(str(d) for d in fp.graded_dims)
        print(f"{str(t):<6}{fp.simple_dim:>7}{fp.nil_dim:>7}"
              f"{fp.nilpotency_class:>7}  ({dims})")


if __name__ == "__main__":
    main()
