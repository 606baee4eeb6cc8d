"""Algebraic groups with exactly computable Euler characteristics.

Two layers live here.  :class:`FiniteGroup` is a finite group given by its
multiplication table, together with the small amount of machinery the rest of
the engine needs (conjugacy classes, subgroups, homomorphisms, double cosets).
:class:`GroupExpr` is a closed symbolic catalogue of affine groups -- finite
groups, tori, unipotent groups, ``GL(n)`` and products -- for which the Euler
characteristic ``e`` and the orbifold weight ``o`` (number of points of the
coarse space of ``[G/Ad(G)]``) are known exactly.

Weight functions ``w`` map groups to ``Q u {oo}``; :func:`weight_value`
evaluates them.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Hashable, Iterable, Mapping, NamedTuple, Sequence, Union

from .errors import (
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotASubgroup,
    NotAssociative,
    NotClosed,
    UndefinedWeight,
    UnsupportedGroup,
)

__all__ = [
    "FiniteGroup",
    "GroupHom",
    "HomCounts",
    "GroupExpr",
    "Trivial",
    "Finite",
    "Torus",
    "Unipotent",
    "GL",
    "Product",
    "Weight",
    "UserTable",
    "INFINITY",
    "finite_group_from_table",
    "conjugacy_classes",
    "double_cosets",
    "hom_kernel_quotient",
    "euler_char_group",
    "orbifold_weight",
    "weight_value",
]


# ---------------------------------------------------------------------------
# Finite groups


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a multiplication table over element indices.

    ``table[i][j]`` is the index of ``labels[i] * labels[j]``.  Use
    :func:`finite_group_from_table` for untrusted input; the constructor only
    checks the shape, since internal builders produce valid tables.
    """

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int = 0

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise NoIdentity("a group needs at least one element")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise NotClosed(f"table must be {n}x{n}")

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.labels, self.table, self.identity))

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"FiniteGroup(order={len(self)})"

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        inv = [None] * self.order
        for a, row in enumerate(self.table):
            for b, ab in enumerate(row):
                if ab == e:
                    inv[a] = b
                    break
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.table[self.table[g][x]][self.inverses[g]]

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(a) for a in range(self.order))

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        """The subgroup generated by ``gens``."""
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        # greedy, preferring elements of large order so the set stays small
        gens: list[int] = []
        span = frozenset([self.identity])
        for a in sorted(range(self.order), key=lambda a: (-self.element_orders[a], a)):
            if a not in span:
                gens.append(a)
                span = self.generated(gens)
                if len(span) == self.order:
                    break
        return tuple(gens)

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if not s or not all(0 <= a < self.order for a in s):
            return False
        # a nonempty subset of a finite group closed under products is a subgroup
        return all(self.table[a][b] in s for a in s for b in s)

    def subgroup(self, subset: Iterable[int]) -> tuple["FiniteGroup", tuple[int, ...]]:
        """Extract a subgroup as a standalone group.

        Returns the group and the embedding (new index -> parent index).  The
        identity is placed first.
        """
        s = set(subset)
        if not self.is_subgroup(s):
            raise NotASubgroup(f"{sorted(s)} is not a subgroup")
        elems = [self.identity] + sorted(s - {self.identity})
        pos = {a: i for i, a in enumerate(elems)}
        table = tuple(tuple(pos[self.table[a][b]] for b in elems) for a in elems)
        return FiniteGroup(tuple(self.labels[a] for a in elems), table, 0), tuple(elems)

    @cached_property
    def classes(self) -> tuple[frozenset[int], ...]:
        seen: set[int] = set()
        out = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = frozenset(self.conj(g, x) for g in range(self.order))
            seen |= cls
            out.append(cls)
        return tuple(out)

    def centralizer_size(self, a: int) -> int:
        t = self.table
        return sum(1 for g in range(self.order) if t[g][a] == t[a][g])


def finite_group_from_table(labels: Sequence, table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Validate a multiplication table and build a :class:`FiniteGroup`.

    Raises the first violated axiom: :class:`NotClosed`,
    :class:`NotAssociative`, :class:`NoIdentity` or :class:`NoInverse`.
    """
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    if n == 0:
        raise NoIdentity("empty group")
    if len(set(labels)) != n:
        raise ValueError("element labels must be distinct")
    if len(table) != n or any(len(row) != n for row in table):
        raise NotClosed(f"table must be {n}x{n}")
    rows = []
    for i, row in enumerate(table):
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise NotClosed(f"product ({i},{j}) = {v!r} is outside the element range")
        rows.append(tuple(row))
    t = tuple(rows)
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            raise NotAssociative(f"({labels[a]}*{labels[b]})*{labels[c]} != {labels[a]}*({labels[b]}*{labels[c]})")
    ident = next(
        (e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))),
        None,
    )
    if ident is None:
        raise NoIdentity("no two-sided identity")
    for a in range(n):
        if not any(t[a][b] == ident and t[b][a] == ident for b in range(n)):
            raise NoInverse(f"{labels[a]} has no inverse")
    return FiniteGroup(labels, t, ident)


def tabulate(elements: Sequence[Hashable], mul: Callable, label: Callable = str) -> FiniteGroup:
    """Build a group from a list of hashable elements closed under ``mul``.

    The first element must be the identity.
    """
    pos = {x: i for i, x in enumerate(elements)}
    table = tuple(tuple(pos[mul(a, b)] for b in elements) for a in elements)
    return FiniteGroup(tuple(label(x) for x in elements), table, 0)


def _perm_mul(p, q):
    # (p*q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def _perm_label(p):
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def perm_group(gens: Sequence[Sequence[int]], degree: int | None = None) -> FiniteGroup:
    """Closure of permutation generators (one-line notation)."""
    gens = [tuple(g) for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    ident = tuple(range(degree))
    elems, seen = [ident], {ident}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = _perm_mul(x, g)
            if y not in seen:
                seen.add(y)
                elems.append(y)
        i += 1
    elems = [ident] + sorted(elems[1:])
    return tabulate(elems, _perm_mul, _perm_label)


def trivial_group() -> FiniteGroup:
    return FiniteGroup(("e",), ((0,),), 0)


def cyclic(n: int) -> FiniteGroup:
    return tabulate(list(range(n)), lambda a, b: (a + b) % n)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order ``2n``."""
    if n <= 2:
        return direct_product(cyclic(2), cyclic(n))
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return perm_group([rot, ref], n)


def symmetric(n: int) -> FiniteGroup:
    return tabulate(
        [tuple(range(n))] + sorted(p for p in itertools.permutations(range(n)) if p != tuple(range(n))),
        _perm_mul,
        _perm_label,
    )


def _parity(p):
    return sum(1 for i in range(len(p)) for j in range(i) if p[j] > p[i]) % 2


def alternating(n: int) -> FiniteGroup:
    ident = tuple(range(n))
    even = sorted(p for p in itertools.permutations(range(n)) if _parity(p) == 0 and p != ident)
    return tabulate([ident] + even, _perm_mul, _perm_label)


def quaternion() -> FiniteGroup:
    # unit quaternions (sign, axis) with axis in 1,i,j,k
    mult = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def mul(a, b):
        s, u = mult[a[1], b[1]]
        return (a[0] * b[0] * s, u)

    elems = [(1, "1")] + [(s, u) for s in (1, -1) for u in "1ijk" if (s, u) != (1, "1")]
    return tabulate(elems, mul, lambda x: ("-" if x[0] < 0 else "") + x[1])


def direct_product(*groups: FiniteGroup) -> FiniteGroup:
    if not groups:
        return trivial_group()
    idx = list(itertools.product(*[range(g.order) for g in groups]))
    ident = tuple(g.identity for g in groups)
    idx.remove(ident)
    idx.insert(0, ident)

    def mul(a, b):
        return tuple(g.table[x][y] for g, x, y in zip(groups, a, b))

    def label(a):
        return "(" + ",".join(g.labels[x] for g, x in zip(groups, a)) + ")"

    return tabulate(idx, mul, label)


def conjugacy_classes(g: FiniteGroup) -> list[frozenset[int]]:
    """Orbits of ``x -> h x h^-1``, ordered by smallest element index."""
    return sorted(g.classes, key=min)


class DoubleCoset(NamedTuple):
    representative: int
    size: int


def double_cosets(g: FiniteGroup, a: Iterable[int], b: Iterable[int]) -> list[DoubleCoset]:
    """Partition ``g`` into double cosets ``A beta B``.

    Each coset is reported by its smallest element index and its size.
    """
    a, b = frozenset(a), frozenset(b)
    for name, s in (("left", a), ("right", b)):
        if not g.is_subgroup(s):
            raise NotASubgroup(f"{name} subset {sorted(s)} is not a subgroup")
    t = g.table
    seen: set[int] = set()
    out = []
    for beta in range(g.order):
        if beta in seen:
            continue
        coset = {t[t[x][beta]][y] for x in a for y in b}
        seen |= coset
        out.append(DoubleCoset(min(coset), len(coset)))
    return out


# ---------------------------------------------------------------------------
# Homomorphisms


class HomCounts(NamedTuple):
    kernel_size: int
    image_size: int
    coset_count: int


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism of finite groups, ``images[i]`` = image of element ``i``."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __post_init__(self):
        s, t, im = self.source, self.target, self.images
        if len(im) != s.order or not all(0 <= y < t.order for y in im):
            raise NotAHomomorphism("image list does not match the source order / target range")
        if im[s.identity] != t.identity:
            raise NotAHomomorphism("identity is not sent to identity")
        for x in range(s.order):
            for y in range(s.order):
                if im[s.table[x][y]] != t.table[im[x]][im[y]]:
                    raise NotAHomomorphism(f"map({s.labels[x]}*{s.labels[y]}) != map(x)*map(y)")

    def __repr__(self):
        return f"GroupHom({self.source.order}->{self.target.order}, {self.images})"

    def __call__(self, x: int) -> int:
        return self.images[x]

    @cached_property
    def kernel(self) -> frozenset[int]:
        e = self.target.identity
        return frozenset(x for x, y in enumerate(self.images) if y == e)

    @cached_property
    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    @property
    def is_injective(self) -> bool:
        return len(self.kernel) == 1

    def then(self, other: "GroupHom") -> "GroupHom":
        """Composite ``other o self``."""
        if other.source != self.target:
            raise NotAHomomorphism("homomorphisms are not composable")
        return GroupHom(self.source, other.target, tuple(other.images[y] for y in self.images))

    @classmethod
    def identity(cls, g: FiniteGroup) -> "GroupHom":
        return cls(g, g, tuple(range(g.order)))

    @classmethod
    def trivial(cls, source: FiniteGroup, target: FiniteGroup) -> "GroupHom":
        return cls(source, target, (target.identity,) * source.order)


def hom_kernel_quotient(h: GroupHom) -> HomCounts:
    """Sizes of ``Ker h``, ``Im h`` and of the coset space ``target / Im h``."""
    k = len(h.kernel)
    i = len(h.image)
    return HomCounts(k, i, h.target.order // i)


def _extend(source: FiniteGroup, target: FiniteGroup, gens, gen_images):
    """Extend generator images to a homomorphism, or return None."""
    images = [None] * source.order
    images[source.identity] = target.identity
    stack = [source.identity]
    st, tt = source.table, target.table
    while stack:
        x = stack.pop()
        fx = images[x]
        for g, fg in zip(gens, gen_images):
            y = st[x][g]
            fy = tt[fx][fg]
            if images[y] is None:
                images[y] = fy
                stack.append(y)
            elif images[y] != fy:
                return None
    return tuple(images)


@lru_cache(maxsize=None)
def all_homs(source: FiniteGroup, target: FiniteGroup) -> tuple[GroupHom, ...]:
    """Every homomorphism ``source -> target``, in a deterministic order."""
    gens = source.generators
    # a generator of order k can only go to an element whose order divides k
    choices = [
        [y for y in range(target.order) if source.element_orders[g] % target.element_orders[y] == 0]
        for g in gens
    ]
    out = []
    for gen_images in itertools.product(*choices):
        images = _extend(source, target, gens, gen_images)
        if images is not None:
            out.append(images)
    # _extend guarantees h(xg) = h(x)h(g) on generators, which forces a homomorphism
    return tuple(_trusted_hom(source, target, im) for im in out)


def _trusted_hom(source, target, images) -> GroupHom:
    h = object.__new__(GroupHom)
    object.__setattr__(h, "source", source)
    object.__setattr__(h, "target", target)
    object.__setattr__(h, "images", tuple(images))
    return h


# ---------------------------------------------------------------------------
# Symbolic catalogue


class GroupExpr:
    """Base class of the symbolic group catalogue."""

    __slots__ = ()


@dataclass(frozen=True)
class Trivial(GroupExpr):
    def __repr__(self):
        return "Trivial()"


@dataclass(frozen=True)
class Finite(GroupExpr):
    group: FiniteGroup

    def __repr__(self):
        return f"Finite(order={self.group.order})"


@dataclass(frozen=True)
class Torus(GroupExpr):
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("torus rank must be non-negative")


@dataclass(frozen=True)
class Unipotent(GroupExpr):
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("unipotent dimension must be non-negative")


@dataclass(frozen=True)
class GL(GroupExpr):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("GL(n) needs n >= 0")


@dataclass(frozen=True)
class Product(GroupExpr):
    factors: tuple[GroupExpr, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a product needs at least one factor")
        object.__setattr__(self, "factors", tuple(self.factors))


TRIVIAL = Trivial()


def torus(rank: int) -> GroupExpr:
    return Torus(rank) if rank else TRIVIAL


def unipotent(dim: int) -> GroupExpr:
    return Unipotent(dim) if dim else TRIVIAL


def gl(n: int) -> GroupExpr:
    return GL(n) if n else TRIVIAL


def finite(g: FiniteGroup) -> GroupExpr:
    return Finite(g) if g.order > 1 else TRIVIAL


def product(*factors: GroupExpr) -> GroupExpr:
    if len(factors) == 1:
        return factors[0]
    return Product(tuple(factors))


def normalize(g: GroupExpr) -> GroupExpr:
    """Rewrite rank/dim-0 groups to :class:`Trivial`, recursively."""
    if isinstance(g, Torus):
        return torus(g.rank)
    if isinstance(g, Unipotent):
        return unipotent(g.dim)
    if isinstance(g, GL):
        return gl(g.n)
    if isinstance(g, Product):
        return Product(tuple(normalize(f) for f in g.factors))
    return g


def finite_view(g: GroupExpr) -> FiniteGroup | None:
    """The finite group underlying ``g``, or None if ``g`` is not finite."""
    if isinstance(g, Trivial):
        return trivial_group()
    if isinstance(g, Finite):
        return g.group
    if isinstance(g, (Torus, Unipotent, GL)):
        return trivial_group() if _dim(g) == 0 else None
    if isinstance(g, Product):
        parts = [finite_view(f) for f in g.factors]
        if any(p is None for p in parts):
            return None
        parts = [p for p in parts if p.order > 1]
        if len(parts) == 1:
            return parts[0]
        return direct_product(*parts) if parts else trivial_group()
    raise TypeError(f"not a group expression: {g!r}")


def _dim(g):
    return getattr(g, "rank", None) or getattr(g, "dim", None) or getattr(g, "n", 0)


def euler_char_group(g: GroupExpr) -> int:
    """``e(G) = chi(G)`` for catalogue groups."""
    if isinstance(g, Trivial):
        return 1
    if isinstance(g, Finite):
        return g.group.order
    if isinstance(g, Torus):
        return 0 if g.rank >= 1 else 1
    if isinstance(g, Unipotent):
        return 1
    if isinstance(g, GL):
        return 0 if g.n >= 1 else 1
    if isinstance(g, Product):
        out = 1
        for f in g.factors:
            out *= euler_char_group(f)
        return out
    raise TypeError(f"not a group expression: {g!r}")


def orbifold_weight(g: GroupExpr) -> int:
    """``o(G)``: naive Euler characteristic of ``[G/Ad(G)]``.

    For finite groups this is the number of conjugacy classes; for abelian
    groups the adjoint action is trivial and ``o = e``.  Non-abelian
    positive-dimensional groups (``GL(n)``, n >= 1) are not supported.
    """
    if isinstance(g, Finite):
        return len(g.group.classes)
    if isinstance(g, GL):
        if g.n >= 1:
            raise UnsupportedGroup(f"o(GL({g.n})) is not computable in this catalogue")
        return 1
    if isinstance(g, (Trivial, Torus, Unipotent)):
        return euler_char_group(g)
    if isinstance(g, Product):
        out = 1
        for f in g.factors:
            out *= orbifold_weight(f)
        return out
    raise TypeError(f"not a group expression: {g!r}")


# ---------------------------------------------------------------------------
# Weight functions


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
ExtRational = Union[Fraction, _Infinity]


def is_infinite(x) -> bool:
    return x is INFINITY


class Weight(enum.Enum):
    NAIVE = "naive"
    E = "e"
    INV_E = "inv-e"
    O = "o"  # noqa: E741

    @classmethod
    def parse(cls, name: str) -> "Weight":
        try:
            return cls(name.lower().replace("_", "-"))
        except ValueError:
            raise ValueError(f"unknown weight {name!r}; expected one of naive, e, inv-e, o") from None


@dataclass(frozen=True)
class UserTable:
    """A weight given by an explicit table keyed on exact group expressions."""

    values: Mapping[GroupExpr, ExtRational] = field(default_factory=dict)

    def __hash__(self):
        return hash(tuple(self.values.items()))


def weight_value(w: Weight | UserTable, g: GroupExpr) -> ExtRational:
    if isinstance(w, UserTable):
        try:
            v = w.values[g]
        except KeyError:
            raise UnsupportedGroup(f"{g!r} is not in the weight table") from None
        return v if v is INFINITY else Fraction(v)
    if w is Weight.NAIVE:
        return Fraction(1)
    if w is Weight.E:
        return Fraction(euler_char_group(g))
    if w is Weight.INV_E:
        e = euler_char_group(g)
        return INFINITY if e == 0 else Fraction(1, e)
    if w is Weight.O:
        return Fraction(orbifold_weight(g))
    raise TypeError(f"not a weight function: {w!r}")


def finite_weight(w, g: GroupExpr, where: str = "") -> Fraction:
    """:func:`weight_value`, converting infinity to :class:`UndefinedWeight`."""
    v = weight_value(w, g)
    if v is INFINITY:
        raise UndefinedWeight(f"weight {w} is infinite on {g!r}" + (f" at {where}" if where else ""), where or None)
    return v
