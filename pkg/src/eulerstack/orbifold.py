"""Finite group actions on finite sets and the string-theory orbifold Euler characteristic.

For a finite group ``G`` acting on a finite set ``M``,

    chi(M, G) = 1/|G| * sum over commuting pairs (g, h) of #{x : gx = hx = x}.

Grouping the sum by orbits turns it into the orbifold Euler characteristic of
the quotient stack ``[M/G]``, whose points are orbits weighted by the number
of conjugacy classes of their stabilizers.  :func:`check_dhvw` computes both.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidGSet, NotASubgroup
from .groupcat import FiniteGroup, direct_product, finite, symmetric, trivial_group
from .strata import StratifiedStack, Stratum, chi_orbifold

__all__ = [
    "FiniteGSet",
    "DHVWReport",
    "stringy_euler",
    "quotient_stack",
    "check_dhvw",
    "orbits",
    "coset_space",
    "disjoint_union",
    "product_gset",
    "trivial_action",
    "natural_action",
]


@dataclass(frozen=True)
class FiniteGSet:
    """``action[g][x]`` is the image of point ``x`` under element ``g``."""

    group: FiniteGroup
    size: int
    action: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(tuple(row) for row in self.action))
        g, n, act = self.group, self.size, self.action
        if len(act) != g.order:
            raise InvalidGSet(f"need one permutation per group element ({g.order}), got {len(act)}")
        for i, row in enumerate(act):
            if sorted(row) != list(range(n)):
                raise InvalidGSet(f"element {g.labels[i]} does not act by a permutation of {n} points")
        if act[g.identity] != tuple(range(n)):
            raise InvalidGSet("the identity does not act trivially")
        for a in range(g.order):
            for b in range(g.order):
                ab = act[g.mul(a, b)]
                ra, rb = act[a], act[b]
                if any(ab[x] != ra[rb[x]] for x in range(n)):
                    raise InvalidGSet(f"action of {g.labels[a]}*{g.labels[b]} is not the composite")

    def fixed(self, x: int) -> list[int]:
        """Stabilizer of ``x`` as a list of element indices."""
        return [g for g in range(self.group.order) if self.action[g][x] == x]


def orbits(a: FiniteGSet) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for x in range(a.size):
        if x in seen:
            continue
        orb = sorted({row[x] for row in a.action})
        seen.update(orb)
        out.append(orb)
    return out


def stringy_euler(a: FiniteGSet) -> Fraction:
    """Brute-force sum over commuting pairs of common fixed points, divided by ``|G|``."""
    g = a.group
    t, act = g.table, a.action
    total = 0
    for x, y in itertools.product(range(g.order), repeat=2):
        if t[x][y] != t[y][x]:
            continue
        ax, ay = act[x], act[y]
        total += sum(1 for p in range(a.size) if ax[p] == p and ay[p] == p)
    out = Fraction(total, g.order)
    assert out.denominator == 1, f"orbifold Euler characteristic {out} is not an integer"
    return out


def quotient_stack(a: FiniteGSet) -> StratifiedStack:
    """``[M/G]``: one point stratum per orbit, carrying the point stabilizer."""
    strata = []
    for orb in orbits(a):
        x = orb[0]
        sub, _ = a.group.subgroup(a.fixed(x))
        strata.append(Stratum(f"o{x}", 1, finite(sub)))
    return StratifiedStack(tuple(strata), name="[M/G]")


@dataclass(frozen=True)
class DHVWReport:
    stringy: Fraction
    orbifold: Fraction

    @property
    def ok(self) -> bool:
        return self.stringy == self.orbifold

    def __bool__(self):
        return self.ok

    def __str__(self):
        rel = "=" if self.ok else "!="
        return f"chi(M,G) = {self.stringy} {rel} chi_orb = {self.orbifold}"


def check_dhvw(a: FiniteGSet) -> DHVWReport:
    q = quotient_stack(a)
    return DHVWReport(stringy_euler(a), chi_orbifold(q.const(1)))


# ---------------------------------------------------------------------------
# Constructions


def trivial_action(g: FiniteGroup, n: int) -> FiniteGSet:
    return FiniteGSet(g, n, tuple(tuple(range(n)) for _ in range(g.order)))


def coset_space(g: FiniteGroup, h) -> FiniteGSet:
    """Left multiplication on the left cosets ``gH``."""
    h = frozenset(h)
    if not g.is_subgroup(h):
        raise NotASubgroup(f"{sorted(h)} is not a subgroup")
    cosets: list[frozenset[int]] = []
    where = {}
    for x in range(g.order):
        if x in where:
            continue
        c = frozenset(g.mul(x, y) for y in h)
        for z in c:
            where[z] = len(cosets)
        cosets.append(c)
    action = tuple(tuple(where[g.mul(a, min(c))] for c in cosets) for a in range(g.order))
    return FiniteGSet(g, len(cosets), action)


def disjoint_union(a: FiniteGSet, b: FiniteGSet) -> FiniteGSet:
    if a.group != b.group:
        raise InvalidGSet("disjoint union needs the same group")
    n = a.size
    action = tuple(ra + tuple(n + y for y in rb) for ra, rb in zip(a.action, b.action))
    return FiniteGSet(a.group, n + b.size, action)


def product_gset(a: FiniteGSet, b: FiniteGSet) -> FiniteGSet:
    """``G x H`` acting on ``M x N`` componentwise; points are ``x * |N| + y``."""
    gh = direct_product(a.group, b.group)
    pairs = list(itertools.product(range(a.group.order), range(b.group.order)))
    ident = (a.group.identity, b.group.identity)
    pairs.remove(ident)
    pairs.insert(0, ident)  # same element order as direct_product
    nb = b.size
    action = tuple(
        tuple(a.action[i][x] * nb + b.action[j][y] for x in range(a.size) for y in range(nb)) for i, j in pairs
    )
    return FiniteGSet(gh, a.size * nb, action)


def natural_action(n: int) -> FiniteGSet:
    """``S_n`` permuting ``{0, ..., n-1}``."""
    ident = tuple(range(n))
    perms = [ident] + sorted(p for p in itertools.permutations(range(n)) if p != ident)
    return FiniteGSet(symmetric(n), n, tuple(perms))


def point_action(g: FiniteGroup | None = None) -> FiniteGSet:
    return trivial_action(g or trivial_group(), 1)


__all__ += ["point_action"]
