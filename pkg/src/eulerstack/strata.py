"""Stratified stacks and the constructible functions that live on them.

A :class:`StratifiedStack` is a finite list of strata.  Each stratum records
the Euler characteristic of its coarse point set and a stabilizer group that
is constant along it.  A stack may carry a *remainder*: the unlisted part of a
stack that is only locally of finite type.  Nothing is ever measured on the
remainder; functions just hold a default value there.

Functions are stored densely: a value for every listed stratum, plus the
remainder value ``default`` (forced to 0 when there is no remainder), so a
function is constructible exactly when its default is 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import NotConstructible, NotFiniteType, StackMismatch, UndefinedWeight
from .groupcat import (
    GroupExpr,
    TRIVIAL,
    Weight,
    finite_weight,
    product,
)

__all__ = [
    "Stratum",
    "StratifiedStack",
    "ConstructibleSet",
    "ConstructibleFn",
    "cf_pointwise",
    "chi_naive",
    "chi_naive_weighted",
    "chi_weighted",
    "chi_stack",
    "chi_orbifold",
    "set_ops",
    "product_stack",
    "point",
    "torus_stack",
    "affine_space",
    "projective_space",
]


@dataclass(frozen=True)
class Stratum:
    id: str
    chi: int
    stabilizer: GroupExpr = TRIVIAL

    def __post_init__(self):
        if not isinstance(self.chi, int) or isinstance(self.chi, bool):
            raise TypeError(f"stratum {self.id}: coarse chi must be an integer")


@dataclass(frozen=True)
class StratifiedStack:
    strata: tuple[Stratum, ...]
    has_remainder: bool = False
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "strata", tuple(self.strata))
        ids = [s.id for s in self.strata]
        if len(set(ids)) != len(ids):
            dup = next(i for i in ids if ids.count(i) > 1)
            raise ValueError(f"duplicate stratum id {dup!r}")

    def __repr__(self):
        rem = ", remainder" if self.has_remainder else ""
        tag = f"{self.name}: " if self.name else ""
        return f"StratifiedStack({tag}{len(self.strata)} strata{rem})"

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.strata)

    def __getitem__(self, sid: str) -> Stratum:
        try:
            return self._index[sid]
        except KeyError:
            raise KeyError(f"no stratum {sid!r}") from None

    def __contains__(self, sid) -> bool:
        return sid in self._index

    def __iter__(self):
        return iter(self.strata)

    def __len__(self):
        return len(self.strata)

    @property
    def _index(self) -> dict[str, Stratum]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {s.id: s for s in self.strata}
            object.__setattr__(self, "_idx", idx)
        return idx

    @property
    def is_finite_type(self) -> bool:
        return not self.has_remainder

    # convenience constructors for sets and functions on this stack

    def subset(self, ids: Iterable[str]) -> "ConstructibleSet":
        return ConstructibleSet(self, frozenset(ids))

    def everything(self) -> "ConstructibleSet":
        return ConstructibleSet(self, frozenset(self.ids))

    def fn(self, values: Mapping[str, object] | None = None, default=0) -> "ConstructibleFn":
        return ConstructibleFn(self, values or {}, default)

    def const(self, c=1) -> "ConstructibleFn":
        """The constant function ``c`` (locally constructible if there is a remainder)."""
        return ConstructibleFn(self, {s.id: c for s in self.strata}, c)

    def delta(self, ids: Iterable[str]) -> "ConstructibleFn":
        return ConstructibleSet(self, frozenset(ids)).indicator()


@dataclass(frozen=True)
class ConstructibleSet:
    stack: StratifiedStack
    members: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        missing = [m for m in self.members if m not in self.stack]
        if missing:
            raise KeyError(f"unknown strata {sorted(missing)}")

    def indicator(self) -> "ConstructibleFn":
        return ConstructibleFn(self.stack, {m: 1 for m in self.members}, 0)


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use Fraction or a 'p/q' string")
    return Fraction(x)


class ConstructibleFn:
    """A rational function on a stratified stack, constant on strata.

    ``values`` may omit strata; omitted strata take ``default``.  The stored
    form is dense over the listed strata.  ``default`` is the value on the
    remainder and is forced to 0 on stacks without one.
    """

    __slots__ = ("stack", "values", "default")

    def __init__(self, stack: StratifiedStack, values: Mapping[str, object] | None = None, default=0):
        values = dict(values or {})
        unknown = [k for k in values if k not in stack]
        if unknown:
            raise KeyError(f"values given for unknown strata {sorted(unknown)}")
        d = _q(default)
        self.stack = stack
        self.values = {s.id: _q(values.get(s.id, d)) for s in stack.strata}
        self.default = d if stack.has_remainder else Fraction(0)

    def __call__(self, sid: str) -> Fraction:
        return self.values[sid]

    def __eq__(self, other):
        if not isinstance(other, ConstructibleFn):
            return NotImplemented
        return self.stack == other.stack and self.values == other.values and self.default == other.default

    def __hash__(self):
        return hash((self.stack, tuple(self.values.items()), self.default))

    def __repr__(self):
        vals = ", ".join(f"{k}: {v}" for k, v in self.values.items())
        return f"ConstructibleFn({{{vals}}}, default={self.default})"

    @property
    def is_constructible(self) -> bool:
        return self.default == 0

    @property
    def support(self) -> frozenset[str]:
        return frozenset(k for k, v in self.values.items() if v != 0)

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values.values()) and self.default.denominator == 1

    def map(self, fn: Callable[[str, Fraction], Fraction], default: Fraction | None = None) -> "ConstructibleFn":
        return ConstructibleFn(
            self.stack,
            {k: fn(k, v) for k, v in self.values.items()},
            self.default if default is None else default,
        )

    def __add__(self, other):
        return cf_pointwise("add", self, other)

    def __sub__(self, other):
        return cf_pointwise("sub", self, other)

    def __mul__(self, other):
        if isinstance(other, ConstructibleFn):
            return cf_pointwise("mul", self, other)
        return cf_pointwise("scale", self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return cf_pointwise("scale", self, -1)


def cf_pointwise(op: str, f: ConstructibleFn, g) -> ConstructibleFn:
    """Pointwise ``add``, ``sub``, ``mul`` of two functions, or ``scale`` by a rational.

    Default slots combine pointwise too, so the product of a constructible
    function with anything is constructible.
    """
    if op == "scale":
        c = _q(g)
        return ConstructibleFn(f.stack, {k: c * v for k, v in f.values.items()}, c * f.default)
    if not isinstance(g, ConstructibleFn):
        raise TypeError(f"{op} needs two functions")
    if f.stack != g.stack:
        raise StackMismatch("functions live on different stacks")
    ops = {
        "add": lambda a, b: a + b,
        "sub": lambda a, b: a - b,
        "mul": lambda a, b: a * b,
    }
    try:
        fn = ops[op]
    except KeyError:
        raise ValueError(f"unknown pointwise op {op!r}") from None
    return ConstructibleFn(
        f.stack,
        {k: fn(v, g.values[k]) for k, v in f.values.items()},
        fn(f.default, g.default),
    )


def set_ops(op: str, a: ConstructibleSet, b: ConstructibleSet) -> ConstructibleSet:
    if a.stack != b.stack:
        raise StackMismatch("sets live on different stacks")
    if op == "union":
        m = a.members | b.members
    elif op == "intersect":
        m = a.members & b.members
    elif op == "difference":
        m = a.members - b.members
    else:
        raise ValueError(f"unknown set op {op!r}")
    return ConstructibleSet(a.stack, m)


# ---------------------------------------------------------------------------
# Euler characteristics


def chi_naive(c: ConstructibleSet) -> int:
    """Coarse Euler characteristic of a constructible set (sum over its strata)."""
    return sum(c.stack[m].chi for m in c.members)


def _require_constructible(f: ConstructibleFn):
    if not f.is_constructible:
        raise NotConstructible(
            f"function has default {f.default} on the remainder; its Euler characteristic is not defined"
        )


def chi_naive_weighted(f: ConstructibleFn) -> Fraction:
    """``sum_c c * chi(f^-1(c))``, computed stratum by stratum."""
    _require_constructible(f)
    return sum((v * f.stack[k].chi for k, v in f.values.items()), Fraction(0))


def chi_weighted(f: ConstructibleFn, w=Weight.NAIVE) -> Fraction:
    """Naive Euler characteristic of ``w(stabilizer) * f``.

    Only the support of ``f`` is weighted, so an infinite weight off the
    support is harmless; on the support it raises :class:`UndefinedWeight`.
    """
    _require_constructible(f)
    total = Fraction(0)
    for s in f.stack.strata:
        v = f.values[s.id]
        if v == 0:
            continue
        total += v * finite_weight(w, s.stabilizer, s.id) * s.chi
    return total


def chi_stack(f: ConstructibleFn) -> Fraction:
    return chi_weighted(f, Weight.INV_E)


def chi_orbifold(f: ConstructibleFn) -> Fraction:
    return chi_weighted(f, Weight.O)


def chi_set(c: ConstructibleSet, w=Weight.NAIVE) -> Fraction:
    return chi_weighted(c.indicator(), w)


def weight_fn(stack: StratifiedStack, w) -> ConstructibleFn:
    """``w`` evaluated on every stabilizer, as a function (finite values required)."""
    return ConstructibleFn(stack, {s.id: finite_weight(w, s.stabilizer, s.id) for s in stack.strata}, 0)


# ---------------------------------------------------------------------------
# Products and catalogue spaces


def product_stack(a: StratifiedStack, b: StratifiedStack, sep: str = "|") -> StratifiedStack:
    """Stratum-wise product: Euler characteristics multiply, stabilizers form products."""
    if a.has_remainder or b.has_remainder:
        raise NotFiniteType("products are only formed for stacks of finite type")
    strata = [
        Stratum(f"{s.id}{sep}{t.id}", s.chi * t.chi, product(s.stabilizer, t.stabilizer))
        for s, t in itertools.product(a.strata, b.strata)
    ]
    return StratifiedStack(tuple(strata))


def product_fn(f: ConstructibleFn, g: ConstructibleFn, stack: StratifiedStack, sep: str = "|") -> ConstructibleFn:
    """External product ``(f x g)(s, t) = f(s) g(t)`` on ``stack = product_stack(...)``."""
    vals = {}
    for s in stack.strata:
        i, j = s.id.split(sep, 1)
        vals[s.id] = f(i) * g(j)
    return ConstructibleFn(stack, vals, 0)


# chi(pt) = 1 and chi(K) = 1; everything below is derived from these by
# additivity and multiplicativity.
_CHI_POINT = 1
_CHI_LINE = 1
_CHI_KSTAR = _CHI_LINE - _CHI_POINT  # K = {0} u K^x


def point(stabilizer: GroupExpr = TRIVIAL, sid: str = "pt") -> StratifiedStack:
    return StratifiedStack((Stratum(sid, _CHI_POINT, stabilizer),), name="pt")


def torus_stack(k: int) -> StratifiedStack:
    """``(K^x)^k`` as a single stratum."""
    return StratifiedStack((Stratum(f"T{k}", _CHI_KSTAR**k, TRIVIAL),), name=f"(K^x)^{k}")


def affine_space(m: int) -> StratifiedStack:
    """``K^m`` cut into its ``2^m`` coordinate tori.

    The stratum ``x<S>`` is the set of points whose nonzero coordinates are
    exactly those in ``S``; it is a torus of rank ``|S|``.
    """
    strata = []
    for k in range(m + 1):
        for support in itertools.combinations(range(m), k):
            sid = "x" + "".join(str(i) for i in support) if support else "0"
            strata.append(Stratum(sid, _CHI_KSTAR**k, TRIVIAL))
    return StratifiedStack(tuple(strata), name=f"K^{m}")


def projective_space(m: int) -> StratifiedStack:
    """``KP^m`` as the cell decomposition ``K^0 u K^1 u ... u K^m``."""
    strata = [Stratum(f"A{j}", chi_naive(affine_space(j).everything()), TRIVIAL) for j in range(m + 1)]
    return StratifiedStack(tuple(strata), name=f"KP^{m}")


def quotient_point(g: GroupExpr, sid: str = "pt") -> StratifiedStack:
    """``[pt/G]``."""
    return StratifiedStack((Stratum(sid, _CHI_POINT, g),), name="[pt/G]")


__all__ += ["chi_set", "weight_fn", "product_fn", "quotient_point"]
