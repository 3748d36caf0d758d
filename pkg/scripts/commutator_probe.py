"""Probe [H_L, W] for Heisenberg chains at small N.

Prints the deviation between the commutator and its nested-commutator
expansion, the largest commutator entry, and its norm on the ground state,
a random state and the stretched state.
"""

import argparse

from spinwitness.spinsim import commutator_check
from spinwitness.spins import TwiceSpin


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--spin", type=TwiceSpin.parse, default=TwiceSpin(1))
    ap.add_argument("--n", type=int, nargs="+", default=[3, 4, 5, 6, 8])
    ap.add_argument("--coupling", type=float, default=1.0)
    ap.add_argument("--open", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print("N  identity_dev  max|[H,W]|  E0        <W>_0     |C psi0|  |C rand|  |C stretched|")
    for N in args.n:
        r = commutator_check(args.spin, N, args.coupling, not args.open, args.seed)
        print(f"{N:<2} {r.identity_deviation:11.1e} {r.commutator_max_entry:11.1e} {r.ground_energy:9.4f}"
              f" {r.ground_witness:9.4f} {r.ground_norm:9.1e} {r.random_norm:9.1e} {r.stretched_norm:9.1e}")


if __name__ == "__main__":
    main()
