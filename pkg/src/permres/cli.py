"""Command-line interface.

Verbs: build, verify, omega, tensor, random, info, trim.  Exit codes:
0 = pass, 2 = invalid input, 3 = resource cap exceeded, 4 = internal
assertion failure.  All outputs are canonical JSON, so identical inputs
and seeds reproduce identical bytes.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import config
from .complexes import certify_resolution, free_up_to, tag_complex
from .errors import CapExceeded, InternalError, LiftFailed, PermresError
from .io import (
    FormatError,
    complex_from_obj,
    complex_to_obj,
    descriptor_from_obj,
    descriptor_to_obj,
    detect_kind,
    load_obj,
    module_from_obj,
    module_to_obj,
    save_obj,
)
from .linalg import Mat
from .modules import (
    Module,
    ModuleMap,
    composition_series,
    free_rank,
    omega,
    radical_series,
    validate_module,
)
from .permutation import recognize, tensor_descriptor
from .resolution import good_resolution, trim
from .random_modules import random_module

EXIT_PASS = 0
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4


def _tag_line(parts) -> str:
    """Render a part multiset compactly: '2x{} + 1x{01}'."""
    counts = {}
    order = []
    for part in parts:
        key = repr(part)
        if key not in counts:
            order.append(key)
        counts[key] = counts.get(key, 0) + 1
    return " + ".join(f"{counts[k]}x{k}" for k in order) if order else "(zero)"


def _load_module(path) -> Module:
    mod = module_from_obj(load_obj(path))
    bad = validate_module(mod)
    if bad is not None:
        raise FormatError(bad)
    return mod


def cmd_build(args) -> int:
    mod = _load_module(args.module)
    res = good_resolution(mod, args.m)
    save_obj(args.out, complex_to_obj(res.complex, m=res.m))
    print(f"module: p={mod.group.p} rank={mod.group.rank} dim={mod.dim}")
    print(f"resolution: length {res.complex.top}, free up to degree {res.m}")
    print("term dims: " + " ".join(str(d) for d in res.complex.dims()))
    for j, tag in enumerate(res.complex.tags):
        print(f"degree {j}: dim {res.complex.terms[j].dim}, tag {_tag_line(tag.descriptor.parts)}")
    for line in res.report.lines():
        print(line)
    print(f"VERDICT: {'PASS' if res.report.ok else 'FAIL'}")
    print(f"wrote {args.out}")
    return EXIT_PASS if res.report.ok else EXIT_INTERNAL


def cmd_verify(args) -> int:
    loaded = complex_from_obj(load_obj(args.complex))
    m = args.m if args.m is not None else loaded.m
    report = certify_resolution(loaded.complex, m=m)
    lines = list(report.lines())
    ok = report.ok
    if loaded.tags is not None:
        bad = None
        for j, want in enumerate(loaded.tags):
            try:
                got = recognize(loaded.complex.terms[j]).descriptor
            except PermresError as exc:
                bad = f"degree {j}: {exc}"
                break
            if got != want:
                bad = f"degree {j}: recognized tag differs from the stored tag"
                break
        lines.append(f"tags-vs-file: {'PASS' if bad is None else 'FAIL (' + bad + ')'}")
        ok = ok and bad is None
        if bad is None and m is not None:
            tagged = tag_complex(loaded.complex)
            free_ok = free_up_to(tagged, m)
            lines.append(f"free-up-to-tagged: {'PASS' if free_ok else 'FAIL'} (m = {m})")
            ok = ok and free_ok
    digest_ok = loaded.digest == loaded.digest_expected
    lines.append(f"digest: {'ok' if digest_ok else 'MISMATCH (informational)'}")
    for line in lines:
        print(line)
    print(f"VERDICT: {'PASS' if ok else 'FAIL'}")
    return EXIT_PASS if ok else EXIT_INVALID


def cmd_omega(args) -> int:
    mod = _load_module(args.module)
    current = mod
    for _ in range(args.n):
        current = omega(current)[0]
    save_obj(args.out, module_to_obj(current))
    print(f"omega^{args.n}: dim {current.dim}, free_rank {free_rank(current)}")
    print(f"wrote {args.out}")
    return EXIT_PASS


def cmd_tensor(args) -> int:
    d1 = descriptor_from_obj(load_obj(args.first))
    d2 = descriptor_from_obj(load_obj(args.second))
    out = tensor_descriptor(d1, d2)
    save_obj(args.out, descriptor_to_obj(out))
    print(f"tensor: dim {out.dim}, parts {_tag_line(out.parts)}")
    print(f"wrote {args.out}")
    return EXIT_PASS


def cmd_random(args) -> int:
    mod = random_module(args.p, args.r, args.dim, args.seed)
    save_obj(args.out, module_to_obj(mod))
    bad = validate_module(mod)
    print(f"random module: p={args.p} rank={args.r} dim={mod.dim} seed={args.seed}")
    print(f"validate: {'ok' if bad is None else bad}")
    print(f"wrote {args.out}")
    return EXIT_PASS if bad is None else EXIT_INTERNAL


def cmd_info(args) -> int:
    obj = load_obj(args.file)
    kind = detect_kind(obj)
    if kind == "module":
        mod = module_from_obj(obj)
        bad = validate_module(mod)
        print(f"module file: p={mod.group.p} rank={mod.group.rank} dim={mod.dim}")
        print(f"validate: {'ok' if bad is None else bad}")
        if bad is None:
            print(f"free_rank: {free_rank(mod)}")
            dims = [rows.rows for rows in radical_series(mod)]
            print("radical series dims: " + " ".join(str(d) for d in dims))
            print(f"composition length: {len(composition_series(mod)) - 1}")
    elif kind == "descriptor":
        d = descriptor_from_obj(obj)
        print(f"descriptor file: p={d.group.p} rank={d.group.rank} dim={d.dim}")
        print(f"parts: {_tag_line(d.parts)}")
    else:
        loaded = complex_from_obj(obj)
        c = loaded.complex
        print(f"complex file: p={c.group.p} rank={c.group.rank} length {c.top}")
        print("term dims: " + " ".join(str(d) for d in c.dims()))
        if c.aug is not None:
            print(f"target dim: {c.aug.target.dim}")
        print(f"tagged: {'yes' if loaded.tags is not None else 'no'}")
        print(f"meta m: {loaded.m}")
    return EXIT_PASS


def cmd_trim(args) -> int:
    loaded = complex_from_obj(load_obj(args.complex))
    c = loaded.complex
    if c.aug is None:
        raise FormatError("complex is not augmented")
    group = c.group
    t = args.free_rank
    qdim = t * group.order
    target = c.aug.target
    if qdim > target.dim:
        raise FormatError(
            f"target dim {target.dim} cannot contain a free block of rank {t}"
        )
    split = target.dim - qdim
    for i, a in enumerate(target.action):
        if a.a[:split, split:].any() or a.a[split:, :split].any():
            raise FormatError(
                f"target generator {i + 1} is not block-diagonal for the trailing free block"
            )
    m_mod = Module(group, tuple(Mat(group.p, a.a[:split, :split]) for a in target.action))
    q_mod = Module(group, tuple(Mat(group.p, a.a[split:, split:]) for a in target.action))
    eye = np.eye(target.dim, dtype=np.int64)
    proj_m = ModuleMap(target, m_mod, Mat(group.p, eye[:split]))
    proj_q = ModuleMap(target, q_mod, Mat(group.p, eye[split:]))
    tagged = tag_complex(c)
    out = trim(tagged, proj_m, proj_q)
    save_obj(args.out, complex_to_obj(out, m=loaded.m))
    print(f"trimmed a free block of rank {t} ({qdim} dimensions) off degree 0")
    print("term dims: " + " ".join(str(d) for d in out.dims()))
    print(f"wrote {args.out}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permres",
        description="Finite permutation-module resolutions over elementary abelian p-groups",
    )
    parser.add_argument("--cap-dim", type=int, default=None, help="module dimension cap")
    parser.add_argument("--cap-order", type=int, default=None, help="group order cap")
    parser.add_argument(
        "--trials", type=int, default=None, help="sampling budget for isomorphism probes"
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    b = sub.add_parser("build", help="build a certified resolution of a module")
    b.add_argument("module")
    b.add_argument("--m", type=int, required=True, help="freeness degree")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="re-certify a complex file from scratch")
    v.add_argument("complex")
    v.add_argument("--m", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("omega", help="iterated Heller loop of a module")
    o.add_argument("module")
    o.add_argument("--n", type=int, default=1)
    o.add_argument("--out", required=True)
    o.set_defaults(func=cmd_omega)

    t = sub.add_parser("tensor", help="tensor two permutation descriptors")
    t.add_argument("first")
    t.add_argument("second")
    t.add_argument("--out", required=True)
    t.set_defaults(func=cmd_tensor)

    r = sub.add_parser("random", help="generate a seeded random module")
    r.add_argument("--p", type=int, required=True)
    r.add_argument("--r", type=int, required=True)
    r.add_argument("--dim", type=int, required=True)
    r.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_random)

    i = sub.add_parser("info", help="summarize any permres file")
    i.add_argument("file")
    i.set_defaults(func=cmd_info)

    tr = sub.add_parser("trim", help="remove a trailing free block from the target")
    tr.add_argument("complex")
    tr.add_argument("--free-rank", type=int, required=True)
    tr.add_argument("--out", required=True)
    tr.set_defaults(func=cmd_trim)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap_dim is not None or args.cap_order is not None:
        config.set_caps(dim_cap=args.cap_dim, order_cap=args.cap_order)
    if args.trials is not None:
        config.set_trials(args.trials)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InternalError, LiftFailed) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (PermresError, FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
