"""Structured text documents (YAML) and human-readable renderings."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import yaml

from .constants import ConstantsReport
from .diagram import CanonicalClass, automorphisms, class_name
from .jgd import serialize
from .linalg import fstr
from .relations import ASpaceBasis, reduce


class _Block(str):
    pass


class _Dumper(yaml.SafeDumper):
    pass


_Dumper.add_representer(_Block, lambda dumper, s: dumper.represent_scalar("tag:yaml.org,2002:str", s, style="|"))


def dump(doc) -> str:
    return yaml.dump(doc, Dumper=_Dumper, sort_keys=False, default_flow_style=False, allow_unicode=True)


def generator_name(cls: CanonicalClass, index: int) -> str:
    return class_name(cls) or f"G{cls.degree}.{index}"


def basis_names(b: ASpaceBasis) -> list[str]:
    return [generator_name(b.generators[j], j) for j in b.basis_columns]


def combination(coords: Sequence[Fraction], names: Sequence[str]) -> str:
    """``4 * [Theta] - 1/2 * [K4]`` style rendering; ``0`` when empty."""
    parts = []
    for c, name in zip(coords, names):
        if not c:
            continue
        mag = fstr(abs(c))
        if not parts:
            parts.append(f"{'-' if c < 0 else ''}{mag} * [{name}]")
        else:
            parts.append(f"{'-' if c < 0 else '+'} {mag} * [{name}]")
    return " ".join(parts) if parts else "0"


def class_entry(cls: CanonicalClass, index: int) -> dict:
    aut = automorphisms(cls.canonical_form)
    return {
        "index": index,
        "name": generator_name(cls, index),
        "as_zero": cls.as_zero,
        "tadpole": cls.has_loops,
        "aut_order": aut.aut_order,
        "jgd": _Block(serialize(cls.canonical_form)),
    }


def classes_document(degree: int, classes: Sequence[CanonicalClass]) -> dict:
    return {
        "degree": degree,
        "count": len(classes),
        "classes": [class_entry(c, i) for i, c in enumerate(classes)],
    }


def basis_document(b: ASpaceBasis) -> dict:
    names = basis_names(b)
    reduction = []
    for j, cls in enumerate(b.generators):
        coords = reduce(cls, b)
        reduction.append({"generator": j, "coordinates": [fstr(c) for c in coords]})
    return {
        "degree": b.degree,
        "dimension": b.dimension,
        "generators": [class_entry(c, j) for j, c in enumerate(b.generators)],
        "basis": [{"generator": j, "name": n} for j, n in zip(b.basis_columns, names)],
        "relations": len(b.relations),
        "rank": len(b.pivots),
        "reduction": reduction,
    }


def constants_document(r: ConstantsReport) -> dict:
    return r.as_dict()
