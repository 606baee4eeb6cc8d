"""Regenerate the JSON fixtures under data/."""

from __future__ import annotations

import argparse
from pathlib import Path

from eulerstack import descriptors as D
from eulerstack.groupcat import GroupHom, cyclic, direct_product, finite, trivial_group
from eulerstack.orbifold import natural_action, trivial_action
from eulerstack.pushpull import Lean, MapRecord, RemainderRecord, Rich, StackMorphism
from eulerstack.strata import ConstructibleFn, StratifiedStack, Stratum, point, projective_space, quotient_point


def fixtures() -> dict[str, dict]:
    z2 = cyclic(2)
    pt = point()
    bz2 = quotient_point(finite(z2))
    kp2 = projective_space(2)
    kp1 = projective_space(1)

    pt_to_bz2 = StackMorphism(pt, bz2, {"pt": MapRecord("pt", 1, Rich(GroupHom(trivial_group(), z2, (0,))))})
    bz2_to_pt = StackMorphism(bz2, pt, {"pt": MapRecord("pt", 1, Rich(GroupHom(z2, trivial_group(), (0, 0))))})
    kp1_to_pt = StackMorphism(kp1, pt, {sid: MapRecord("pt", 1, Lean()) for sid in kp1.ids})

    # a locally finite type pair for the LCF pushforward
    src = StratifiedStack((Stratum("s0", 2),), True, "X")
    tgt = StratifiedStack((Stratum("t0", 1),), True, "Y")
    lcf_map = StackMorphism(src, tgt, {"s0": MapRecord("t0", 2, Lean())}, RemainderRecord(1, Lean()))
    lcf_fn = ConstructibleFn(src, {"s0": 3}, 1)

    out = {
        "pt": D.stack_to_json(pt),
        "bz2": D.stack_to_json(bz2),
        "kp1": D.stack_to_json(kp1),
        "kp2": D.stack_to_json(kp2),
        "pt-to-bz2": D.morphism_to_json(pt_to_bz2, "pt.json", "bz2.json"),
        "bz2-to-pt": D.morphism_to_json(bz2_to_pt, "bz2.json", "pt.json"),
        "kp1-to-pt": D.morphism_to_json(kp1_to_pt, "kp1.json", "pt.json"),
        "pt-one": D.fn_to_json(pt.const(1), "pt.json"),
        "bz2-one": D.fn_to_json(bz2.const(1), "bz2.json"),
        "kp1-one": D.fn_to_json(kp1.const(1), "kp1.json"),
        "lcf-map": D.morphism_to_json(lcf_map),
        "lcf-fn": D.fn_to_json(lcf_fn),
        "s3-natural": D.gset_to_json(natural_action(3)),
        "v4-point": D.gset_to_json(trivial_action(direct_product(z2, z2), 1)),
        "trivial-5": D.gset_to_json(trivial_action(trivial_group(), 5)),
    }
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    a = ap.parse_args()
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, obj in fixtures().items():
        (out / f"{name}.json").write_text(D.dumps(obj) + "\n")
        print(f"wrote {out / name}.json")


if __name__ == "__main__":
    main()
