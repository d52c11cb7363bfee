"""JSON interchange for fields, groups, families, lifting data and designs.

Round trips are lossless; element encodings are the integers used
throughout the package.  Field descriptors carry the modulus and the
generator coefficient vector so a reader can rebuild identical tables.
"""

from __future__ import annotations

import json
from typing import Any

from .fields import FiniteField, make_field
from .groups import AbelianGroup
from .families import DesignFamily
from .lifting import LiftingData
from .designs import BlockDesign, Resolution

__all__ = [
    "field_to_dict", "field_from_dict",
    "group_to_dict", "group_from_dict",
    "family_to_dict", "family_from_dict",
    "lifting_to_dict", "lifting_from_dict",
    "design_to_dict", "design_from_dict",
    "dump", "load",
]


def field_to_dict(field: FiniteField) -> dict:
    return field.descriptor()


def field_from_dict(d: dict) -> FiniteField:
    fld = make_field(d["p"], d["m"], tuple(d["modulus"]) if d["m"] > 1 else None)
    if fld.descriptor() != d:
        raise ValueError("field descriptor does not match canonical construction")
    return fld


def group_to_dict(group: AbelianGroup) -> dict:
    return group.descriptor()


def group_from_dict(d: dict) -> AbelianGroup:
    if d["type"] == "cyclic":
        return AbelianGroup.cyclic(d["n"])
    if d["type"] == "field":
        return AbelianGroup.additive(field_from_dict(d["field"]))
    if d["type"] == "product":
        return AbelianGroup.product(*(group_from_dict(f) for f in d["factors"]))
    raise ValueError(f"unknown group descriptor type {d['type']!r}")


def family_to_dict(fam: DesignFamily) -> dict:
    out = {
        "kind": fam.kind,
        "group": group_to_dict(fam.group),
        "lambda": fam.lam,
        "blocks": [list(b) for b in fam.blocks],
        "provenance": fam.provenance,
    }
    if fam.subgroup is not None:
        out["subgroup"] = list(fam.subgroup)
    if fam.frame_partition is not None:
        out["framePartition"] = [list(p) for p in fam.frame_partition]
    return out


def family_from_dict(d: dict) -> DesignFamily:
    return DesignFamily(
        kind=d["kind"],
        group=group_from_dict(d["group"]),
        lam=d["lambda"],
        blocks=tuple(tuple(b) for b in d["blocks"]),
        subgroup=tuple(d["subgroup"]) if "subgroup" in d else None,
        frame_partition=tuple(tuple(p) for p in d["framePartition"])
        if "framePartition" in d else None,
        provenance=d.get("provenance", ""),
    )


def lifting_to_dict(data: LiftingData) -> dict:
    return {
        "sdf": family_to_dict(data.sdf),
        "field": field_to_dict(data.field),
        "e": data.e,
        "d": data.d,
        "lambda": data.lam,
        "phi": [list(r) for r in data.phi],
        "partition": [list(p) for p in data.partition],
        "provenance": data.provenance,
    }


def lifting_from_dict(d: dict) -> LiftingData:
    return LiftingData(
        sdf=family_from_dict(d["sdf"]),
        field=field_from_dict(d["field"]),
        e=d["e"],
        d=d["d"],
        lam=d["lambda"],
        phi=tuple(tuple(r) for r in d["phi"]),
        partition=tuple(tuple(p) for p in d["partition"]),
        provenance=d.get("provenance", ""),
    )


def design_to_dict(design: BlockDesign, res: Resolution | None = None) -> dict:
    out = {
        "v": design.v,
        "k": design.k,
        "lambda": design.lam,
        "blocks": [list(b) for b in design.blocks],
        "provenance": design.provenance,
    }
    if res is not None:
        out["resolution"] = [list(c) for c in res.classes]
    return out


def design_from_dict(d: dict) -> tuple[BlockDesign, Resolution | None]:
    design = BlockDesign(d["v"], d["k"], d["lambda"],
                         tuple(tuple(b) for b in d["blocks"]),
                         provenance=d.get("provenance", ""))
    res = Resolution(tuple(tuple(c) for c in d["resolution"])) \
        if "resolution" in d else None
    return design, res


def dump(obj: Any, path) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load(path) -> Any:
    with open(path) as fh:
        return json.load(fh)
