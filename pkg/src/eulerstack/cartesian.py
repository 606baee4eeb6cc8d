"""Fibre products of stratified stacks with finite stabilizers.

Given ``phi: F -> H`` (representable) and ``psi: G -> H``, the points of
``E = F x_H G`` over a pair ``(z in F, x in G)`` lying over ``y in H`` are
the double cosets ``psi(G_x) \\ G_y / phi(G_z)``, and the stabilizer of the
double coset through ``beta`` is

    {(a, c) in G_x x G_z : psi(a) beta = beta phi(c)}.

Each double coset becomes its own stratum of ``E``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InsufficientStabData,
    InvalidMorphism,
    NonFiniteStabilizer,
    NotFiniteType,
    NotRepresentable,
    StackMismatch,
)
from .groupcat import FiniteGroup, GroupHom, double_cosets, finite, finite_view, tabulate
from .pushpull import (
    MapRecord,
    Rich,
    StackMorphism,
    pullback,
    pushforward_naive,
    pushforward_stack,
    validate_morphism,
)
from .strata import ConstructibleSet, StratifiedStack, Stratum

__all__ = ["CartesianSquare", "CommutationReport", "fiber_product", "verify_commutation"]


@dataclass(frozen=True, eq=False)
class CartesianSquare:
    """``E --eta--> G``, ``E --theta--> F`` over ``phi: F -> H``, ``psi: G -> H``."""

    phi: StackMorphism
    psi: StackMorphism
    E: StratifiedStack
    eta: StackMorphism
    theta: StackMorphism


def _rich_homs(m: StackMorphism, role: str):
    out = {}
    for sid, rec in m.records.items():
        if finite_view(m.source[sid].stabilizer) is None or finite_view(m.target[rec.to].stabilizer) is None:
            raise NonFiniteStabilizer(f"{role}: stratum {sid} has a non-finite stabilizer")
        if not isinstance(rec.stab, Rich):
            raise InsufficientStabData(f"{role}: stratum {sid} needs an explicit stabilizer homomorphism")
        out[sid] = rec.stab.hom
    return out


def _stabilizer_group(gx: FiniteGroup, gz: FiniteGroup, pairs: list[tuple[int, int]]):
    ident = (gx.identity, gz.identity)
    elems = [ident] + sorted(p for p in pairs if p != ident)

    def mul(p, q):
        return (gx.table[p[0]][q[0]], gz.table[p[1]][q[1]])

    def label(p):
        return f"({gx.labels[p[0]]},{gz.labels[p[1]]})"

    return tabulate(elems, mul, label), elems


def fiber_product(phi: StackMorphism, psi: StackMorphism, sep: str = "|") -> CartesianSquare:
    """Construct ``E = F x_H G`` with its projections ``eta: E -> G`` and ``theta: E -> F``."""
    if phi.target != psi.target:
        raise StackMismatch("phi and psi must share a target")
    for role, m in (("phi", phi), ("psi", psi)):
        v = validate_morphism(m)
        if not v:
            raise InvalidMorphism(f"{role}: {v}")
        if m.source.has_remainder or m.target.has_remainder:
            raise NotFiniteType(f"{role}: fibre products are only built over stacks without remainder")
    phi_homs = _rich_homs(phi, "phi")
    psi_homs = _rich_homs(psi, "psi")
    for sid, h in phi_homs.items():
        if not h.is_injective:
            raise NotRepresentable(f"phi is not representable at stratum {sid}")

    F, G, H = phi.source, psi.source, phi.target
    strata, eta_recs, theta_recs = [], {}, {}
    for sf in F.strata:
        t = phi[sf.id].to
        phi_z = phi_homs[sf.id]
        gy, gz = phi_z.target, phi_z.source
        # phi_z is injective, so gamma is recovered from phi_z(gamma)
        phi_inv = {y: c for c, y in enumerate(phi_z.images)}
        for sg in G.strata:
            if psi[sg.id].to != t:
                continue
            psi_x = psi_homs[sg.id]
            gx = psi_x.source
            chi = H[t].chi * phi[sf.id].fiber_chi * psi[sg.id].fiber_chi
            for k, (beta, _size) in enumerate(double_cosets(gy, psi_x.image, phi_z.image)):
                binv = gy.inv(beta)
                pairs = []
                for a in range(gx.order):
                    y = gy.mul(gy.mul(binv, psi_x(a)), beta)
                    c = phi_inv.get(y)
                    if c is not None:
                        pairs.append((a, c))
                grp, elems = _stabilizer_group(gx, gz, pairs)
                stab = finite(grp)
                src = finite_view(stab)
                eid = f"{sf.id}{sep}{sg.id}{sep}{k}"
                strata.append(Stratum(eid, chi, stab))
                eta_recs[eid] = MapRecord(
                    sg.id,
                    phi[sf.id].fiber_chi,
                    Rich(GroupHom(src, gx, tuple(p[0] for p in elems) if grp.order > 1 else (gx.identity,))),
                )
                theta_recs[eid] = MapRecord(
                    sf.id,
                    psi[sg.id].fiber_chi,
                    Rich(GroupHom(src, gz, tuple(p[1] for p in elems) if grp.order > 1 else (gz.identity,))),
                )
    E = StratifiedStack(tuple(strata), name="E")
    eta = StackMorphism(E, G, eta_recs)
    theta = StackMorphism(E, F, theta_recs)
    for role, m in (("eta", eta), ("theta", theta)):
        v = validate_morphism(m)
        assert v, f"constructed {role} is invalid: {v}"
    assert eta.is_representable, "constructed eta is not representable"
    return CartesianSquare(phi, psi, E, eta, theta)


@dataclass(frozen=True)
class CommutationReport:
    left: dict[str, Fraction]
    right: dict[str, Fraction]

    @property
    def ok(self) -> bool:
        return self.left == self.right

    def __bool__(self):
        return self.ok

    def __str__(self):
        rows = [f"  {k}: {self.left[k]} | {self.right[k]}" for k in self.left]
        head = "commutes" if self.ok else "DOES NOT COMMUTE"
        return "\n".join([f"{head} (left: CF(eta) theta^*, right: psi^* CF(phi))", *rows])


def verify_commutation(sq: CartesianSquare, C, naive: bool = False) -> CommutationReport:
    """Compare ``CF(eta)(theta^* delta_C)`` with ``psi^*(CF(phi) delta_C)`` on ``G``.

    ``C`` is a :class:`ConstructibleSet` on ``F`` or an iterable of its
    stratum ids.  With ``naive=True`` both pushforwards are the naive ones,
    for which the square is not expected to commute.
    """
    if not isinstance(C, ConstructibleSet):
        C = sq.phi.source.subset(C)
    if C.stack != sq.phi.source:
        raise StackMismatch("C must be a constructible set on the source of phi")
    push = pushforward_naive if naive else pushforward_stack
    d = C.indicator()
    left = push(sq.eta, pullback(sq.theta, d))
    right = pullback(sq.psi, push(sq.phi, d))
    return CommutationReport(dict(left.values), dict(right.values))
