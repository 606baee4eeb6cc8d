"""Tabulate chi(M, G) against chi_orb([M/G]) for small permutation actions.

For each catalogue group G and each cyclic subgroup K, the coset space G/K is
listed with the number of commuting pairs, the stringy sum and the orbifold
side.  Natural actions of S_n close the table.
"""

from __future__ import annotations

import argparse
import itertools

from eulerstack.orbifold import check_dhvw, coset_space, natural_action
from eulerstack.randgen import group_catalogue


def commuting_pairs(g) -> int:
    return sum(1 for x, y in itertools.product(range(g.order), repeat=2) if g.mul(x, y) == g.mul(y, x))


def rows(max_order: int):
    for name, g in group_catalogue():
        if g.order > max_order:
            continue
        seen = set()
        for x in range(g.order):
            k = g.generated([x])
            if k in seen:
                continue
            seen.add(k)
            rep = check_dhvw(coset_space(g, k))
            yield f"{name}/<{g.labels[x]}>", g.order, g.order // len(k), commuting_pairs(g), rep
    for n in range(1, 5):
        a = natural_action(n)
        yield f"S{n} natural", a.group.order, n, commuting_pairs(a.group), check_dhvw(a)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=12)
    a = ap.parse_args(argv)
    print(f"{'action':<22} {'|G|':>4} {'|M|':>4} {'pairs':>6} {'chi(M,G)':>9} {'chi_orb':>8}")
    bad = 0
    for label, order, size, pairs, rep in rows(a.max_order):
        bad += not rep.ok
        print(f"{label:<22} {order:>4} {size:>4} {pairs:>6} {str(rep.stringy):>9} {str(rep.orbifold):>8}")
    print(f"{'all agree' if not bad else f'{bad} disagreements'}")


if __name__ == "__main__":
    main()
