"""Seeded random instances for the law suites.

Everything is drawn from one :class:`random.Random`, so a seed fixes the whole
instance.  Morphisms are grown backwards from their target: pick a target
stratum, a fibre Euler characteristic in ``[-3, 3]``, a source stabilizer and
a homomorphism into the target stabilizer, and the source coarse chi follows.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .groupcat import (
    FiniteGroup,
    GroupExpr,
    all_homs,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    euler_char_group,
    finite,
    finite_view,
    gl,
    hom_kernel_quotient,
    product,
    quaternion,
    symmetric,
    torus,
    trivial_group,
    unipotent,
)
from .orbifold import FiniteGSet, coset_space, disjoint_union
from .pushpull import Lean, MapRecord, RemainderRecord, Rich, StackMorphism
from .strata import ConstructibleFn, StratifiedStack, Stratum

FIBER_RANGE = (-3, 3)
MAX_STRATA = 8


@dataclass(frozen=True)
class GenConfig:
    max_strata: int = MAX_STRATA
    fiber_lo: int = FIBER_RANGE[0]
    fiber_hi: int = FIBER_RANGE[1]
    max_group_order: int = 24
    value_range: int = 5


@lru_cache(maxsize=None)
def group_catalogue() -> tuple[tuple[str, FiniteGroup], ...]:
    """Named finite groups of order at most 24."""
    c2 = cyclic(2)
    out = [("C1", trivial_group())]
    out += [(f"C{n}", cyclic(n)) for n in (2, 3, 4, 5, 6, 8)]
    out += [
        ("C2xC2", direct_product(c2, c2)),
        ("S3", symmetric(3)),
        ("D4", dihedral(4)),
        ("Q8", quaternion()),
        ("C2xC4", direct_product(c2, cyclic(4))),
        ("C2^3", direct_product(c2, c2, c2)),
        ("C3xC3", direct_product(cyclic(3), cyclic(3))),
        ("A4", alternating(4)),
        ("D6", dihedral(6)),
        ("C2xS3", direct_product(c2, symmetric(3))),
        ("S4", symmetric(4)),
    ]
    return tuple(out)


def groups_up_to(order: int) -> list[FiniteGroup]:
    return [g for _, g in group_catalogue() if g.order <= order]


@lru_cache(maxsize=None)
def _injective_homs(src: FiniteGroup, tgt: FiniteGroup):
    return tuple(h for h in all_homs(src, tgt) if h.is_injective)


@lru_cache(maxsize=None)
def _noninjective_homs(src: FiniteGroup, tgt: FiniteGroup):
    return tuple(h for h in all_homs(src, tgt) if not h.is_injective)


class Gen:
    """Random instances driven by a single ``random.Random``."""

    def __init__(self, seed, config: GenConfig | None = None):
        self.rng = random.Random(seed)
        self.cfg = config or GenConfig()

    # -- small pieces -------------------------------------------------------

    def group(self, max_order: int | None = None) -> FiniteGroup:
        return self.rng.choice(groups_up_to(max_order or self.cfg.max_group_order))

    def symbolic_group(self, depth: int = 0) -> GroupExpr:
        """Any catalogue expression, finite factors of order at most 24."""
        r = self.rng.random()
        if r < 0.4:
            return finite(self.group())
        if r < 0.55:
            return torus(self.rng.randint(0, 3))
        if r < 0.7:
            return unipotent(self.rng.randint(0, 4))
        if r < 0.8:
            return gl(self.rng.randint(0, 3))
        if depth < 2:
            return product(*(self.symbolic_group(depth + 1) for _ in range(self.rng.randint(1, 3))))
        return finite(self.group())

    def fiber(self) -> int:
        return self.rng.randint(self.cfg.fiber_lo, self.cfg.fiber_hi)

    def value(self) -> Fraction:
        v = self.cfg.value_range
        return Fraction(self.rng.randint(-v, v), self.rng.randint(1, 4))

    def int_value(self) -> Fraction:
        v = self.cfg.value_range
        return Fraction(self.rng.randint(-v, v))

    def n_strata(self, lo: int = 1) -> int:
        return self.rng.randint(lo, self.cfg.max_strata)

    # -- stacks and functions ------------------------------------------------

    def stack(
        self, prefix: str = "s", n: int | None = None, max_order: int | None = None, remainder: bool = False
    ) -> StratifiedStack:
        n = n or self.n_strata()
        strata = tuple(
            Stratum(f"{prefix}{i}", self.rng.randint(-3, 3), finite(self.group(max_order))) for i in range(n)
        )
        return StratifiedStack(strata, remainder, prefix.upper())

    def function(self, stack: StratifiedStack, integral: bool = False, default=None) -> ConstructibleFn:
        pick = self.int_value if integral else self.value
        vals = {s: (pick() if self.rng.random() < 0.8 else Fraction(0)) for s in stack.ids}
        if default is None:
            default = pick() if stack.has_remainder else 0
        return ConstructibleFn(stack, vals, default)

    # -- morphisms -------------------------------------------------------------

    def _hom(self, src: FiniteGroup, tgt: FiniteGroup, kind: str):
        if kind == "injective":
            pool = _injective_homs(src, tgt)
        elif kind == "noninjective":
            pool = _noninjective_homs(src, tgt)
        else:
            pool = all_homs(src, tgt)
        return self.rng.choice(pool) if pool else None

    def _source_group(self, tgt: FiniteGroup, kind: str) -> tuple[FiniteGroup, object]:
        """A source group with a hom of the requested kind into ``tgt``."""
        for _ in range(50):
            if kind == "injective":
                cands = [g for g in groups_up_to(tgt.order) if tgt.order % g.order == 0]
            elif kind == "noninjective":
                cands = [g for g in groups_up_to(self.cfg.max_group_order) if g.order > 1]
            else:
                cands = groups_up_to(self.cfg.max_group_order)
            src = self.rng.choice(cands)
            h = self._hom(src, tgt, kind)
            if h is not None:
                return src, h
        # the trivial group maps injectively anywhere, and everything maps trivially
        if kind == "noninjective":
            src = cyclic(2)
            return src, _noninjective_homs(src, tgt)[0]
        src = trivial_group()
        return src, all_homs(src, tgt)[0]

    def morphism_into(
        self,
        target: StratifiedStack,
        prefix: str = "s",
        n: int | None = None,
        kind: str = "any",
        force_noninjective: bool = False,
        remainder: bool = False,
        remainder_group: FiniteGroup | None = None,
    ) -> StackMorphism:
        """A random Rich morphism onto ``target``.

        ``kind`` is ``"any"`` or ``"injective"`` (representable).  With
        ``force_noninjective`` the first stratum gets a hom with a kernel of
        order at least 2.  The remainder hom lands in ``remainder_group``
        (random if omitted), so that remainders chain along composites.
        """
        n = n or self.n_strata()
        strata, recs = [], {}
        for i in range(n):
            t = self.rng.choice(target.strata)
            tg = finite_view(t.stabilizer)
            k = "noninjective" if (force_noninjective and i == 0) else kind
            src, h = self._source_group(tg, k)
            fib = self.fiber()
            sid = f"{prefix}{i}"
            strata.append(Stratum(sid, fib * t.chi, finite(src)))
            recs[sid] = MapRecord(t.id, fib, Rich(h))
        rem = None
        if remainder:
            tg = remainder_group if remainder_group is not None else self.group()
            src, h = self._source_group(tg, kind)
            rem = RemainderRecord(self.fiber(), Rich(h))
        source = StratifiedStack(tuple(strata), remainder, prefix.upper())
        return StackMorphism(source, target, recs, rem)

    def composable_pair(
        self, kind: str = "any", force_noninjective: bool = False, remainder: bool = False
    ) -> tuple[StackMorphism, StackMorphism]:
        """``(phi: F -> G, psi: G -> H)``, built from ``H`` backwards."""
        H = self.stack("h", remainder=remainder)
        psi = self.morphism_into(H, "g", kind=kind, remainder=remainder)
        rg = psi.remainder.stab.hom.source if remainder else None
        phi = self.morphism_into(
            psi.source, "f", kind=kind, force_noninjective=force_noninjective, remainder=remainder, remainder_group=rg
        )
        return phi, psi

    def lean_morphism(self) -> StackMorphism:
        """A mixed Lean/Rich morphism whose stabilizers all have ``e != 0``.

        Lean strata carry counts read off a random finite hom, with unipotent
        factors (``e = 1``) attached to the stabilizers.
        """
        n_t = self.n_strata()
        t_strata = []
        for i in range(n_t):
            g = finite(self.group())
            if self.rng.random() < 0.5:
                g = product(g, unipotent(self.rng.randint(1, 3)))
            t_strata.append(Stratum(f"t{i}", self.rng.randint(-3, 3), g))
        target = StratifiedStack(tuple(t_strata), name="T")
        strata, recs = [], {}
        for i in range(self.n_strata()):
            t = self.rng.choice(target.strata)
            tg = finite_view(t.stabilizer)
            fib = self.fiber()
            sid = f"s{i}"
            if tg is None:
                # unipotent factor on the target: only lean data makes sense
                tf = next(f for f in t.stabilizer.factors if finite_view(f) is not None)
                src, h = self._source_group(finite_view(tf), "any")
                kq = hom_kernel_quotient(h)
                stab = product(finite(src), unipotent(self.rng.randint(1, 3)))
                strata.append(Stratum(sid, fib * t.chi, stab))
                recs[sid] = MapRecord(t.id, fib, Lean(kq.kernel_size, kq.coset_count))
            else:
                src, h = self._source_group(tg, "any")
                if self.rng.random() < 0.5:
                    kq = hom_kernel_quotient(h)
                    strata.append(Stratum(sid, fib * t.chi, product(finite(src), unipotent(1))))
                    recs[sid] = MapRecord(t.id, fib, Lean(kq.kernel_size, kq.coset_count))
                else:
                    strata.append(Stratum(sid, fib * t.chi, finite(src)))
                    recs[sid] = MapRecord(t.id, fib, Rich(h))
        return StackMorphism(StratifiedStack(tuple(strata), name="S"), target, recs)

    def symbolic_morphism(self) -> StackMorphism:
        """A Lean morphism over arbitrary catalogue stabilizers (for naive laws)."""
        target = StratifiedStack(
            tuple(Stratum(f"t{i}", self.rng.randint(-3, 3), self.symbolic_group()) for i in range(self.n_strata())),
            name="T",
        )
        strata, recs = [], {}
        for i in range(self.n_strata()):
            t = self.rng.choice(target.strata)
            fib = self.fiber()
            g = self.symbolic_group()
            es, et = euler_char_group(g), euler_char_group(t.stabilizer)
            if es == 0 and et == 0:
                lean = Lean(self.rng.randint(-2, 2), self.rng.randint(-2, 2))
            elif es == 0:
                lean = Lean(0, self.rng.randint(-2, 2))
            elif et == 0:
                lean = Lean(self.rng.randint(-2, 2), 0)
            else:
                lean = Lean(es, et)  # any multiple works; this one is the plain ratio
            sid = f"s{i}"
            strata.append(Stratum(sid, fib * t.chi, g))
            recs[sid] = MapRecord(t.id, fib, lean)
        return StackMorphism(StratifiedStack(tuple(strata), name="S"), target, recs)

    # -- squares and G-sets ---------------------------------------------------

    def square_data(self, max_order: int = 16) -> tuple[StackMorphism, StackMorphism]:
        """``(phi: F -> H representable, psi: G -> H)`` with ``|G_y| <= max_order``."""
        H = self.stack("h", n=self.rng.randint(1, 4), max_order=max_order)
        phi = self.morphism_into(H, "f", n=self.rng.randint(1, 4), kind="injective")
        psi = self.morphism_into(H, "g", n=self.rng.randint(1, 4), kind="any")
        return phi, psi

    def gset(self, max_order: int = 24, max_size: int = 12) -> FiniteGSet:
        """A disjoint union of coset spaces ``G/K`` with at most ``max_size`` points."""
        g = self.group(max_order)
        out = None
        size = 0
        for _ in range(self.rng.randint(1, 4)):
            for _ in range(20):
                gens = self.rng.sample(range(g.order), k=min(g.order, self.rng.randint(0, 2)))
                sub = g.generated(gens)
                idx = g.order // len(sub)
                if size + idx <= max_size:
                    break
            else:
                sub = frozenset(range(g.order))
                idx = 1
                if size + idx > max_size:
                    break
            piece = coset_space(g, sub)
            out = piece if out is None else disjoint_union(out, piece)
            size += idx
        return out
