"""Deterministic JSON file formats.

All files are canonical: sorted keys, compact separators, integer-only
entries, one trailing newline.  parse(serialize(x)) round-trips exactly
and serialize(parse(text)) reproduces the bytes, so fixed seeds give
byte-identical outputs.

* module file:     {p, rank, dim, generators: [flat row-major, one per generator]}
* descriptor file: {p, rank, parts: [[subgroup basis rows], ...]}
* complex file:    {p, rank, terms, differentials, augmentation, tags?, meta}

Complex terms are module bodies ({dim, generators}) or, on input only,
{parts: [...], realize: true} to be realized on load.  Matrix shapes are
implied by the adjacent term dimensions.  meta carries the requested
freeness degree and a sha256 digest of the canonical payload.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .complexes import Complex
from .errors import PermresError
from .groups import Group, Subgroup
from .linalg import Mat
from .modules import Module, ModuleMap
from .permutation import PermutationDescriptor, realize


class FormatError(PermresError):
    """Malformed or inconsistent input file."""


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _flat(mat: Mat) -> list[int]:
    return [int(x) for x in mat.a.reshape(-1)]


def _unflat(p, rows, cols, entries, what) -> Mat:
    if len(entries) != rows * cols:
        raise FormatError(f"{what}: expected {rows * cols} entries, got {len(entries)}")
    for x in entries:
        if not isinstance(x, int) or not 0 <= x < p:
            raise FormatError(f"{what}: entry {x!r} is not a reduced residue mod {p}")
    return Mat(p, np.array(entries, dtype=np.int64).reshape(rows, cols))


# ---------------------------------------------------------------------------
# modules


def module_to_obj(m: Module) -> dict:
    return {
        "p": m.group.p,
        "rank": m.group.rank,
        "dim": m.dim,
        "generators": [_flat(a) for a in m.action],
    }


def _module_body_from_obj(group: Group, obj, what="module") -> Module:
    dim = obj.get("dim")
    gens = obj.get("generators")
    if not isinstance(dim, int) or dim < 0 or not isinstance(gens, list):
        raise FormatError(f"{what}: need integer dim and a generator list")
    if len(gens) != group.rank:
        raise FormatError(f"{what}: expected {group.rank} generators, got {len(gens)}")
    action = tuple(
        _unflat(group.p, dim, dim, g, f"{what} generator {i + 1}")
        for i, g in enumerate(gens)
    )
    return Module(group, action)


def _group_from_obj(obj) -> Group:
    p, rank = obj.get("p"), obj.get("rank")
    if not isinstance(p, int) or not isinstance(rank, int):
        raise FormatError("need integer fields p and rank")
    try:
        return Group(p, rank)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def module_from_obj(obj) -> Module:
    group = _group_from_obj(obj)
    return _module_body_from_obj(group, obj)


# ---------------------------------------------------------------------------
# descriptors


def _part_rows(sub: Subgroup) -> list[list[int]]:
    return [[int(x) for x in row] for row in sub.basis.a]


def _part_from_rows(group: Group, rows, what) -> Subgroup:
    if not isinstance(rows, list):
        raise FormatError(f"{what}: part must be a list of basis rows")
    for row in rows:
        if not isinstance(row, list) or len(row) != group.rank:
            raise FormatError(f"{what}: basis rows must have length {group.rank}")
        for x in row:
            if not isinstance(x, int) or not 0 <= x < group.p:
                raise FormatError(f"{what}: entry {x!r} out of range")
    sub = Subgroup(group, rows)
    if _part_rows(sub) != rows:
        raise FormatError(f"{what}: basis rows are not in reduced row echelon form")
    return sub


def descriptor_to_obj(d: PermutationDescriptor) -> dict:
    return {
        "p": d.group.p,
        "rank": d.group.rank,
        "parts": [_part_rows(part) for part in d.parts],
    }


def descriptor_from_obj(obj) -> PermutationDescriptor:
    group = _group_from_obj(obj)
    parts = obj.get("parts")
    if not isinstance(parts, list):
        raise FormatError("descriptor: need a list of parts")
    subs = tuple(
        _part_from_rows(group, rows, f"part {i + 1}") for i, rows in enumerate(parts)
    )
    return PermutationDescriptor(group, subs)


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class LoadedComplex:
    complex: Complex
    tags: tuple[PermutationDescriptor, ...] | None
    m: int | None
    digest: str | None
    digest_expected: str


def complex_to_obj(c: Complex, m: int | None = None) -> dict:
    group = c.group
    payload = {
        "p": group.p,
        "rank": group.rank,
        "terms": [{"dim": t.dim, "generators": [_flat(a) for a in t.action]} for t in c.terms],
        "differentials": [_flat(d.matrix) for d in c.diffs],
        "augmentation": None
        if c.aug is None
        else {
            "target": {
                "dim": c.aug.target.dim,
                "generators": [_flat(a) for a in c.aug.target.action],
            },
            "matrix": _flat(c.aug.matrix),
        },
    }
    if c.tags is not None:
        payload["tags"] = [
            [_part_rows(part) for part in tag.descriptor.parts] for tag in c.tags
        ]
    payload["meta"] = {"m": m, "digest": _payload_digest(payload)}
    return payload


def _payload_digest(payload: dict) -> str:
    stripped = {k: v for k, v in payload.items() if k != "meta"}
    return hashlib.sha256(canonical_dumps(stripped).encode()).hexdigest()


def complex_from_obj(obj) -> LoadedComplex:
    group = _group_from_obj(obj)
    raw_terms = obj.get("terms")
    if not isinstance(raw_terms, list) or not raw_terms:
        raise FormatError("complex: need a non-empty term list")
    terms = []
    for j, body in enumerate(raw_terms):
        if isinstance(body, dict) and body.get("realize"):
            parts = tuple(
                _part_from_rows(group, rows, f"term {j} part")
                for rows in body.get("parts", [])
            )
            terms.append(realize(PermutationDescriptor(group, parts)).module)
        else:
            terms.append(_module_body_from_obj(group, body, f"term {j}"))
    raw_diffs = obj.get("differentials")
    if not isinstance(raw_diffs, list) or len(raw_diffs) != len(terms) - 1:
        raise FormatError("complex: need one differential per adjacent term pair")
    diffs = tuple(
        ModuleMap(
            terms[j + 1],
            terms[j],
            _unflat(group.p, terms[j].dim, terms[j + 1].dim, d, f"differential {j + 1}"),
        )
        for j, d in enumerate(raw_diffs)
    )
    aug = None
    raw_aug = obj.get("augmentation")
    if raw_aug is not None:
        target = _module_body_from_obj(group, raw_aug.get("target", {}), "augmentation target")
        aug = ModuleMap(
            terms[0],
            target,
            _unflat(
                group.p,
                target.dim,
                terms[0].dim,
                raw_aug.get("matrix", []),
                "augmentation",
            ),
        )
    tags = None
    if obj.get("tags") is not None:
        raw_tags = obj["tags"]
        if not isinstance(raw_tags, list) or len(raw_tags) != len(terms):
            raise FormatError("complex: tags must align with terms")
        tags = tuple(
            PermutationDescriptor(
                group,
                tuple(
                    _part_from_rows(group, rows, f"tag {j} part")
                    for rows in tag_parts
                ),
            )
            for j, tag_parts in enumerate(raw_tags)
        )
    meta = obj.get("meta") or {}
    m = meta.get("m")
    if m is not None and (not isinstance(m, int) or m < 0):
        raise FormatError("meta.m must be a non-negative integer or null")
    return LoadedComplex(
        complex=Complex(tuple(terms), diffs, aug),
        tags=tags,
        m=m,
        digest=meta.get("digest"),
        digest_expected=_payload_digest(obj),
    )


# ---------------------------------------------------------------------------
# files


def detect_kind(obj) -> str:
    if not isinstance(obj, dict):
        raise FormatError("top-level JSON value must be an object")
    if "terms" in obj:
        return "complex"
    if "parts" in obj:
        return "descriptor"
    if "generators" in obj:
        return "module"
    raise FormatError("unrecognized file: expected a module, descriptor, or complex")


def save_obj(path, obj) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_dumps(obj))


def load_obj(path):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from exc
