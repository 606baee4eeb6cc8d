"""Morphisms of stratified stacks, pushforwards and pullbacks.

A :class:`StackMorphism` sends each source stratum onto one target stratum.
It is assumed *equifibered*: over every point of the target stratum the fibre
inside the source stratum has the same Euler characteristic ``fiber_chi``, so
``chi(source stratum) = fiber_chi * chi(target stratum)``.  The induced maps
on stabilizer groups are described either numerically (:class:`Lean`: the
Euler characteristics of the kernel and of the coset space of the image) or
by an explicit homomorphism of finite groups (:class:`Rich`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Union

from .errors import (
    InsufficientStabData,
    InvalidMorphism,
    NotConstructible,
    NotFiniteType,
    StackMismatch,
    UndefinedWeight,
    ZeroKernelChi,
)
from .groupcat import (
    INFINITY,
    GroupHom,
    Weight,
    euler_char_group,
    finite_view,
    finite_weight,
    hom_kernel_quotient,
    weight_value,
)
from .strata import ConstructibleFn, StratifiedStack, chi_naive_weighted, chi_weighted

__all__ = [
    "Lean",
    "Rich",
    "StabData",
    "MapRecord",
    "RemainderRecord",
    "StackMorphism",
    "Validation",
    "identity_morphism",
    "validate_morphism",
    "pushforward_naive",
    "pushforward_weighted",
    "pushforward_stack",
    "pushforward_lcf",
    "m_phi",
    "m_phi_fn",
    "compose",
    "pullback",
    "check_conservation",
]


@dataclass(frozen=True)
class Lean:
    """Declared ``chi(Ker)`` and ``chi(Iso(phi x) / phi(Iso x))``."""

    kernel_chi: int = 1
    quotient_chi: int = 1

    @property
    def is_representable(self) -> bool:
        return self.kernel_chi == 1

    def counts(self) -> tuple[int, int]:
        return self.kernel_chi, self.quotient_chi


@dataclass(frozen=True)
class Rich:
    hom: GroupHom

    @property
    def is_representable(self) -> bool:
        return self.hom.is_injective

    def counts(self) -> tuple[int, int]:
        k, _, q = hom_kernel_quotient(self.hom)
        return k, q


StabData = Union[Lean, Rich]


@dataclass(frozen=True)
class MapRecord:
    to: str
    fiber_chi: int
    stab: StabData = Lean()


@dataclass(frozen=True)
class RemainderRecord:
    fiber_chi: int
    stab: StabData = Lean()


@dataclass(frozen=True)
class Validation:
    ok: bool
    stratum: str | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return f"violation at {self.stratum}: {self.reason}" if self.stratum else f"violation: {self.reason}"


@dataclass(frozen=True, eq=False)
class StackMorphism:
    source: StratifiedStack
    target: StratifiedStack
    records: Mapping[str, MapRecord]
    remainder: RemainderRecord | None = None

    def __eq__(self, other):
        if not isinstance(other, StackMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.records) == dict(other.records)
            and self.remainder == other.remainder
        )

    __hash__ = None

    def __repr__(self):
        return f"StackMorphism({self.source!r} -> {self.target!r})"

    def __getitem__(self, sid: str) -> MapRecord:
        return self.records[sid]

    def target_of(self, sid: str) -> str:
        return self.records[sid].to

    @property
    def is_finite_type(self) -> bool:
        """Every source point is accounted for by a listed stratum or the remainder record."""
        return not self.source.has_remainder or self.remainder is not None

    @property
    def is_representable(self) -> bool:
        recs = [r.stab for r in self.records.values()]
        if self.remainder is not None:
            recs.append(self.remainder.stab)
        return all(s.is_representable for s in recs)

    @property
    def is_rich(self) -> bool:
        recs = [r.stab for r in self.records.values()]
        if self.remainder is not None:
            recs.append(self.remainder.stab)
        return all(isinstance(s, Rich) for s in recs)

    @cached_property
    def validation(self) -> Validation:
        return validate_morphism(self)

    def preimage(self, tid: str) -> list[str]:
        return [s for s, r in self.records.items() if r.to == tid]


def validate_morphism(m: StackMorphism) -> Validation:
    """Check every structural invariant of ``m``; never raises."""
    src, tgt = m.source, m.target
    for sid in m.records:
        if sid not in src:
            return Validation(False, sid, "record for a stratum that is not in the source")
    for s in src.strata:
        rec = m.records.get(s.id)
        if rec is None:
            return Validation(False, s.id, "source stratum has no target")
        if rec.to not in tgt:
            return Validation(False, s.id, f"target stratum {rec.to!r} does not exist")
        t = tgt[rec.to]
        if s.chi != rec.fiber_chi * t.chi:
            return Validation(
                False, s.id, f"coarse chi {s.chi} != fiber chi {rec.fiber_chi} * target chi {t.chi}"
            )
        bad = _check_stab(rec.stab, s.stabilizer, t.stabilizer)
        if bad:
            return Validation(False, s.id, bad)
    if m.remainder is not None:
        if not (src.has_remainder and tgt.has_remainder):
            return Validation(False, None, "remainder record needs remainders on both stacks")
        if isinstance(m.remainder.stab, Rich) and not isinstance(m.remainder.stab.hom, GroupHom):
            return Validation(False, None, "remainder stabilizer data is malformed")
    return Validation(True)


def _check_stab(stab, g_src, g_tgt) -> str | None:
    if isinstance(stab, Rich):
        fs, ft = finite_view(g_src), finite_view(g_tgt)
        if fs is None or ft is None:
            return "rich stabilizer data needs finite stabilizers on both sides"
        if stab.hom.source != fs:
            return "homomorphism source is not the source stabilizer"
        if stab.hom.target != ft:
            return "homomorphism target is not the target stabilizer"
        return None
    if isinstance(stab, Lean):
        # chi(G) = chi(K) chi(I) and chi(H) = chi(I) chi(H/I) force k * e(H) = e(G) * q
        k, q = stab.kernel_chi, stab.quotient_chi
        if k * euler_char_group(g_tgt) != euler_char_group(g_src) * q:
            return (
                f"declared kernel chi {k} and quotient chi {q} are inconsistent with "
                f"e(source)={euler_char_group(g_src)}, e(target)={euler_char_group(g_tgt)}"
            )
        return None
    return f"unknown stabilizer data {stab!r}"


def _require_valid(m: StackMorphism):
    v = m.validation
    if not v:
        raise InvalidMorphism(str(v))


def _require_on_source(m: StackMorphism, f: ConstructibleFn):
    if f.stack != m.source:
        raise StackMismatch("function does not live on the morphism's source")


def identity_morphism(stack: StratifiedStack) -> StackMorphism:
    recs = {}
    for s in stack.strata:
        g = finite_view(s.stabilizer)
        stab = Rich(GroupHom.identity(g)) if g is not None else Lean(1, 1)
        recs[s.id] = MapRecord(s.id, 1, stab)
    rem = RemainderRecord(1, Lean(1, 1)) if stack.has_remainder else None
    return StackMorphism(stack, stack, recs, rem)


# ---------------------------------------------------------------------------
# Pushforwards


def _push_values(m: StackMorphism, values: Mapping[str, Fraction]) -> dict[str, Fraction]:
    out = {t: Fraction(0) for t in m.target.ids}
    for sid, v in values.items():
        if v:
            rec = m.records[sid]
            out[rec.to] += v * rec.fiber_chi
    return out


def pushforward_naive(m: StackMorphism, f: ConstructibleFn) -> ConstructibleFn:
    """``(CF^na(phi) f)(t) = chi^na(f . delta_{phi^-1(t)})``."""
    _require_on_source(m, f)
    if not f.is_constructible:
        raise NotConstructible("naive pushforward needs a constructible function (default 0)")
    _require_valid(m)
    return ConstructibleFn(m.target, _push_values(m, f.values), 0)


def pushforward_weighted(m: StackMorphism, f: ConstructibleFn, w=Weight.NAIVE) -> ConstructibleFn:
    """``CF_w(phi) f = w_G^-1 . CF^na(phi)(w_F f)``.

    Undefined if ``w`` is infinite on some source stratum or zero on some
    target stratum.
    """
    _require_on_source(m, f)
    if not f.is_constructible:
        raise NotConstructible("weighted pushforward needs a constructible function (default 0)")
    _require_valid(m)
    w_src = {s.id: finite_weight(w, s.stabilizer, s.id) for s in m.source.strata}
    w_tgt_inv = {}
    for t in m.target.strata:
        v = weight_value(w, t.stabilizer)
        if v == 0:
            raise UndefinedWeight(f"weight {w} vanishes on target stratum {t.id}", t.id)
        w_tgt_inv[t.id] = Fraction(0) if v is INFINITY else 1 / v
    pushed = _push_values(m, {k: v * w_src[k] for k, v in f.values.items()})
    return ConstructibleFn(m.target, {t: v * w_tgt_inv[t] for t, v in pushed.items()}, 0)


def _m_value(stab: StabData, where: str | None) -> Fraction:
    k, q = stab.counts()
    if k == 0:
        raise ZeroKernelChi(f"kernel of the stabilizer map has Euler characteristic 0 at {where}", where)
    return Fraction(q, k)


def m_phi(m: StackMorphism, sid: str) -> Fraction:
    """``chi(Iso(phi x) / phi(Iso x)) / chi(Ker phi_*)`` on stratum ``sid``."""
    return _m_value(m.records[sid].stab, sid)


def m_phi_fn(m: StackMorphism, support: frozenset[str] | None = None) -> dict[str, Fraction]:
    """``m_phi`` on every source stratum (or only on ``support``; other entries are 0)."""
    out = {}
    for sid, rec in m.records.items():
        if support is not None and sid not in support:
            out[sid] = Fraction(0)
        else:
            out[sid] = _m_value(rec.stab, sid)
    return out


def pushforward_stack(m: StackMorphism, f: ConstructibleFn, lenient: bool = False) -> ConstructibleFn:
    """``CF^stk(phi) f = CF^na(phi)(m_phi . f)``.

    By default ``chi(Ker)`` must be nonzero on every source stratum, and on
    the remainder if a remainder record is present.  ``lenient=True`` only
    checks the support of ``f``; it is experimental.
    """
    _require_on_source(m, f)
    if not f.is_constructible:
        raise NotConstructible("stack pushforward needs a constructible function (default 0)")
    _require_valid(m)
    mult = m_phi_fn(m, f.support if lenient else None)
    if not lenient and m.remainder is not None:
        _m_value(m.remainder.stab, "remainder")
    return ConstructibleFn(m.target, _push_values(m, {k: v * mult[k] for k, v in f.values.items()}), 0)


def pushforward_lcf(m: StackMorphism, f: ConstructibleFn, mode: str = "naive") -> ConstructibleFn:
    """Pushforward of a locally constructible function along a finite type morphism.

    Listed strata are handled exactly as in the constructible case; the
    remainder value is carried by the remainder record.
    """
    _require_on_source(m, f)
    _require_valid(m)
    if not m.is_finite_type:
        raise NotFiniteType("source remainder has no image record; the morphism is not of finite type")
    if mode not in ("naive", "stack"):
        raise ValueError(f"unknown LCF pushforward mode {mode!r}")
    vals = dict(f.values)
    default = f.default
    if mode == "stack":
        mult = m_phi_fn(m)
        vals = {k: v * mult[k] for k, v in vals.items()}
        if m.remainder is not None:
            default = default * _m_value(m.remainder.stab, "remainder")
    out_default = default * m.remainder.fiber_chi if m.remainder is not None else Fraction(0)
    return ConstructibleFn(m.target, _push_values(m, vals), out_default)


# ---------------------------------------------------------------------------
# Composition and pullback


def _compose_stab(a: StabData, b: StabData) -> StabData:
    if isinstance(a, Rich) and isinstance(b, Rich):
        return Rich(a.hom.then(b.hom))
    if a.is_representable and b.is_representable:
        # injective maps: G_z / I_{psi phi} fibres over G_z / I_psi with fibre G_y / I_phi
        return Lean(1, a.counts()[1] * b.counts()[1])
    raise InsufficientStabData(
        "cannot compose non-representable lean stabilizer data: chi(I_phi n K_psi) is not recorded"
    )


def compose(m1: StackMorphism, m2: StackMorphism) -> StackMorphism:
    """``m2 o m1``: first ``m1``, then ``m2``."""
    if m1.target != m2.source:
        raise StackMismatch("morphisms are not composable")
    _require_valid(m1)
    _require_valid(m2)
    recs = {}
    for sid, r1 in m1.records.items():
        r2 = m2.records[r1.to]
        recs[sid] = MapRecord(r2.to, r1.fiber_chi * r2.fiber_chi, _compose_stab(r1.stab, r2.stab))
    rem = None
    if m1.remainder is not None and m2.remainder is not None:
        rem = RemainderRecord(
            m1.remainder.fiber_chi * m2.remainder.fiber_chi,
            _compose_stab(m1.remainder.stab, m2.remainder.stab),
        )
    return StackMorphism(m1.source, m2.target, recs, rem)


def pullback(m: StackMorphism, f: ConstructibleFn) -> ConstructibleFn:
    """``phi^* f = f o phi_*``."""
    if f.stack != m.target:
        raise StackMismatch("function does not live on the morphism's target")
    _require_valid(m)
    if not m.is_finite_type:
        raise NotFiniteType("pullback needs a finite type morphism")
    return ConstructibleFn(
        m.source,
        {sid: f(r.to) for sid, r in m.records.items()},
        f.default if m.remainder is not None else 0,
    )


def check_conservation(m: StackMorphism, f: ConstructibleFn, w=Weight.NAIVE) -> bool:
    """``chi_w(S, f) == chi_w(T, CF_w(phi) f)``, compared exactly."""
    if w is Weight.NAIVE:
        return chi_naive_weighted(f) == chi_naive_weighted(pushforward_naive(m, f))
    return chi_weighted(f, w) == chi_weighted(pushforward_weighted(m, f, w), w)
