"""JSON descriptors for groups, stacks, functions, morphisms and G-sets.

Rationals are written as ``"p/q"`` strings in lowest terms (``"p"`` when the
denominator is 1) and read back from strings or integers.  Wherever a stack
is expected, a descriptor may hold either an inline stack object or a path
to a stack file, resolved relative to the file that mentions it.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import DescriptorError, EulerStackError
from .groupcat import (
    GL,
    Finite,
    GroupExpr,
    GroupHom,
    Product,
    Torus,
    Trivial,
    Unipotent,
    finite_group_from_table,
    finite_view,
    normalize,
)
from .orbifold import FiniteGSet
from .pushpull import Lean, MapRecord, RemainderRecord, Rich, StackMorphism
from .strata import ConstructibleFn, StratifiedStack, Stratum

__all__ = [
    "rat_to_str",
    "parse_rat",
    "group_to_json",
    "group_from_json",
    "stack_to_json",
    "stack_from_json",
    "fn_to_json",
    "fn_from_json",
    "morphism_to_json",
    "morphism_from_json",
    "gset_to_json",
    "gset_from_json",
    "load_json",
    "load_stack",
    "load_fn",
    "load_morphism",
    "load_gset",
    "dumps",
]


def rat_to_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rat(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise DescriptorError(f"rational expected as int or 'p/q' string, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise DescriptorError(f"bad rational {x!r}") from None
    raise DescriptorError(f"rational expected, got {x!r}")


def _int(d: dict, key: str, where: str) -> int:
    try:
        v = d[key]
    except KeyError:
        raise DescriptorError(f"{where}: missing {key!r}") from None
    if isinstance(v, bool) or not isinstance(v, int):
        raise DescriptorError(f"{where}: {key!r} must be an integer")
    return v


def _need(d, key, where):
    if not isinstance(d, dict):
        raise DescriptorError(f"{where}: expected an object")
    try:
        return d[key]
    except KeyError:
        raise DescriptorError(f"{where}: missing {key!r}") from None


# ---------------------------------------------------------------------------
# Groups


def group_to_json(g: GroupExpr) -> dict:
    if isinstance(g, Trivial):
        return {"kind": "trivial"}
    if isinstance(g, Finite):
        return {"kind": "finite", "labels": list(g.group.labels), "table": [list(r) for r in g.group.table]}
    if isinstance(g, Torus):
        return {"kind": "torus", "rank": g.rank}
    if isinstance(g, Unipotent):
        return {"kind": "unipotent", "dim": g.dim}
    if isinstance(g, GL):
        return {"kind": "gl", "n": g.n}
    if isinstance(g, Product):
        return {"kind": "product", "factors": [group_to_json(f) for f in g.factors]}
    raise TypeError(f"not a group expression: {g!r}")


def group_from_json(d: Any) -> GroupExpr:
    kind = _need(d, "kind", "group")
    try:
        if kind == "trivial":
            return Trivial()
        if kind == "finite":
            return Finite(finite_group_from_table(_need(d, "labels", "finite group"), _need(d, "table", "finite group")))
        if kind == "torus":
            return normalize(Torus(_int(d, "rank", "torus")))
        if kind == "unipotent":
            return normalize(Unipotent(_int(d, "dim", "unipotent")))
        if kind == "gl":
            return normalize(GL(_int(d, "n", "gl")))
        if kind == "product":
            factors = _need(d, "factors", "product")
            if not isinstance(factors, list) or not factors:
                raise DescriptorError("product: 'factors' must be a non-empty list")
            return Product(tuple(group_from_json(f) for f in factors))
    except EulerStackError:
        raise
    except (ValueError, TypeError) as exc:
        raise DescriptorError(f"group {kind}: {exc}") from None
    raise DescriptorError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------------------
# Stacks and functions


def stack_to_json(s: StratifiedStack) -> dict:
    out: dict[str, Any] = {}
    if s.name:
        out["name"] = s.name
    out["strata"] = [{"id": t.id, "chi": t.chi, "stabilizer": group_to_json(t.stabilizer)} for t in s.strata]
    out["remainder"] = s.has_remainder
    return out


def stack_from_json(d: Any) -> StratifiedStack:
    strata = _need(d, "strata", "stack")
    if not isinstance(strata, list):
        raise DescriptorError("stack: 'strata' must be a list")
    out = []
    for i, e in enumerate(strata):
        sid = _need(e, "id", f"stratum {i}")
        if not isinstance(sid, str):
            raise DescriptorError(f"stratum {i}: id must be a string")
        stab = group_from_json(e["stabilizer"]) if "stabilizer" in e else Trivial()
        out.append(Stratum(sid, _int(e, "chi", f"stratum {sid}"), stab))
    rem = d.get("remainder", False)
    if not isinstance(rem, bool):
        raise DescriptorError("stack: 'remainder' must be true or false")
    try:
        return StratifiedStack(tuple(out), rem, d.get("name"))
    except ValueError as exc:
        raise DescriptorError(f"stack: {exc}") from None


def fn_to_json(f: ConstructibleFn, stack_ref: Any = None) -> dict:
    """``stack_ref`` defaults to the inline stack descriptor."""
    return {
        "stack": stack_to_json(f.stack) if stack_ref is None else stack_ref,
        "values": {k: rat_to_str(v) for k, v in f.values.items()},
        "default": rat_to_str(f.default),
    }


def fn_from_json(d: Any, stack: StratifiedStack | None = None, base: Path | None = None) -> ConstructibleFn:
    if stack is None:
        stack = _resolve_stack(_need(d, "stack", "function"), base)
    values = d.get("values", {}) if isinstance(d, dict) else None
    if not isinstance(values, dict):
        raise DescriptorError("function: 'values' must be an object")
    try:
        return ConstructibleFn(
            stack, {k: parse_rat(v) for k, v in values.items()}, parse_rat(d.get("default", "0"))
        )
    except KeyError as exc:
        raise DescriptorError(f"function: {exc.args[0]}") from None


# ---------------------------------------------------------------------------
# Morphisms


def _stab_to_json(stab) -> dict:
    if isinstance(stab, Lean):
        return {"mode": "lean", "kernel_chi": stab.kernel_chi, "quotient_chi": stab.quotient_chi}
    return {"mode": "rich", "hom": {"images": list(stab.hom.images)}}


def _remainder_stab_to_json(stab) -> dict:
    out = _stab_to_json(stab)
    if isinstance(stab, Rich):
        out["hom"]["source"] = group_to_json(Finite(stab.hom.source))
        out["hom"]["target"] = group_to_json(Finite(stab.hom.target))
    return out


def _stab_from_json(d: Any, g_src: GroupExpr | None, g_tgt: GroupExpr | None, where: str):
    mode = _need(d, "mode", where)
    if mode == "lean":
        return Lean(_int(d, "kernel_chi", where), _int(d, "quotient_chi", where))
    if mode != "rich":
        raise DescriptorError(f"{where}: unknown stab mode {mode!r}")
    hom = _need(d, "hom", where)
    images = _need(hom, "images", where)
    src = group_from_json(hom["source"]) if "source" in hom else g_src
    tgt = group_from_json(hom["target"]) if "target" in hom else g_tgt
    fs = finite_view(src) if src is not None else None
    ft = finite_view(tgt) if tgt is not None else None
    if fs is None or ft is None:
        raise DescriptorError(f"{where}: rich stabilizer data needs finite stabilizer groups")
    try:
        return Rich(GroupHom(fs, ft, tuple(images)))
    except (ValueError, TypeError) as exc:
        raise DescriptorError(f"{where}: {exc}") from None


def morphism_to_json(m: StackMorphism, source_ref: Any = None, target_ref: Any = None) -> dict:
    out = {
        "source": stack_to_json(m.source) if source_ref is None else source_ref,
        "target": stack_to_json(m.target) if target_ref is None else target_ref,
        "map": {
            sid: {"to": r.to, "fiber_chi": r.fiber_chi, "stab": _stab_to_json(r.stab)} for sid, r in m.records.items()
        },
    }
    if m.remainder is not None:
        out["remainder"] = {"fiber_chi": m.remainder.fiber_chi, "stab": _remainder_stab_to_json(m.remainder.stab)}
    return out


def morphism_from_json(d: Any, base: Path | None = None) -> StackMorphism:
    src = _resolve_stack(_need(d, "source", "morphism"), base)
    tgt = _resolve_stack(_need(d, "target", "morphism"), base)
    mp = _need(d, "map", "morphism")
    if not isinstance(mp, dict):
        raise DescriptorError("morphism: 'map' must be an object")
    recs = {}
    for sid, e in mp.items():
        where = f"map[{sid}]"
        to = _need(e, "to", where)
        g_src = src[sid].stabilizer if sid in src else None
        g_tgt = tgt[to].stabilizer if to in tgt else None
        stab = _stab_from_json(e.get("stab", {"mode": "lean", "kernel_chi": 1, "quotient_chi": 1}), g_src, g_tgt, where)
        recs[sid] = MapRecord(to, _int(e, "fiber_chi", where), stab)
    rem = None
    if d.get("remainder") is not None:
        r = d["remainder"]
        stab = _stab_from_json(r.get("stab", {"mode": "lean", "kernel_chi": 1, "quotient_chi": 1}), None, None, "remainder")
        rem = RemainderRecord(_int(r, "fiber_chi", "remainder"), stab)
    return StackMorphism(src, tgt, recs, rem)


# ---------------------------------------------------------------------------
# G-sets


def gset_to_json(a: FiniteGSet) -> dict:
    return {"group": group_to_json(Finite(a.group)), "size": a.size, "action": [list(r) for r in a.action]}


def gset_from_json(d: Any) -> FiniteGSet:
    g = group_from_json(_need(d, "group", "gset"))
    fg = finite_view(g)
    if fg is None:
        raise DescriptorError("gset: the group must be finite")
    try:
        return FiniteGSet(fg, _int(d, "size", "gset"), tuple(tuple(r) for r in _need(d, "action", "gset")))
    except TypeError as exc:
        raise DescriptorError(f"gset: {exc}") from None


# ---------------------------------------------------------------------------
# Files


def load_json(path) -> Any:
    p = Path(path)
    try:
        return json.loads(p.read_text())
    except FileNotFoundError:
        raise DescriptorError(f"{p}: no such file") from None
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{p}: invalid JSON ({exc})") from None


def _resolve_stack(ref: Any, base: Path | None) -> StratifiedStack:
    if isinstance(ref, dict):
        return stack_from_json(ref)
    if isinstance(ref, str):
        p = Path(ref)
        if not p.is_absolute() and base is not None:
            p = base / p
        return load_stack(p)
    raise DescriptorError(f"stack reference must be an object or a path, got {ref!r}")


def load_stack(path) -> StratifiedStack:
    s = stack_from_json(load_json(path))
    if s.name is None:
        s = StratifiedStack(s.strata, s.has_remainder, Path(path).stem)
    return s


def load_fn(path, stack: StratifiedStack | None = None) -> ConstructibleFn:
    p = Path(path)
    return fn_from_json(load_json(p), stack, p.parent)


def load_morphism(path) -> StackMorphism:
    p = Path(path)
    return morphism_from_json(load_json(p), p.parent)


def load_gset(path) -> FiniteGSet:
    return gset_from_json(load_json(path))


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
