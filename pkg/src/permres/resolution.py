"""The resolution engine.

Builds, for any module M over E = (C_p)^r and any m >= 0, a finite
resolution of M by permutation modules that is free up to degree m:

* ``periodic_complex`` -- the 2-periodic coset complexes Q(i) over the
  coordinate hyperplanes, alternating (g - 1) and norm differentials;
* ``trivial_resolution`` -- their tensor product, a resolution of k;
* ``rotate`` -- turns 0 -> L -> M -> N -> 0 into 0 -> ΩN -> L (+) P -> M -> 0
  via the projective cover P of N;
* ``splice`` -- lifts a map between resolved modules and takes the
  mapping cone, resolving the cokernel;
* ``good_resolution`` -- induction along a composition series, splicing
  one resolution per 1-dimensional flag step;
* ``trim`` -- removes a free direct summand of the target from degree 0.

Every certificate on a public output is recomputed from scratch; the
internal pipeline carries only cheap structural assertions and the final
result is certified in full.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import (
    CertReport,
    Complex,
    certify_resolution,
    cone,
    direct_sum_complexes,
    is_resolution,
    lift_chain_map,
    retarget_augmentation,
    single_term_complex,
    tag_complex,
    tensor_complexes,
    truncate,
)
from .errors import InternalError, OddLength, SelectionFailed
from .groups import Group, Subgroup
from .linalg import Mat, hstack, inverse, rank, solve, vstack
from .modules import (
    Cover,
    DirectSum,
    Module,
    ModuleMap,
    ShortExactSequence,
    check_module_map,
    check_ses,
    composition_series,
    direct_sum,
    free_rank,
    identity_map,
    kernel,
    orbit_columns,
    projective_cover,
    ses_from_flag,
    validate_module,
)
from .permutation import PermutationDescriptor, realize, recognize


@dataclass(frozen=True)
class GoodResolution:
    """A fully certified output: exact, fully tagged, free up to degree m."""

    complex: Complex
    m: int
    report: CertReport


def _certified(c: Complex, m: int) -> GoodResolution:
    report = certify_resolution(c, m=m, require_tags=True)
    if not report.ok:
        raise InternalError(f"output fails its own certificate: {report.first_failure()}")
    return GoodResolution(complex=c, m=m, report=report)


# ---------------------------------------------------------------------------
# the periodic complexes Q(i) and the tensor resolution of k


def periodic_complex(group: Group, i: int, ell: int) -> Complex:
    """The length-ell coset complex over the i-th coordinate hyperplane.

    Degrees 0..ell-1 carry k(E/H_i); degree ell carries k, embedded onto
    the norm element (the sum of all cosets).  Differentials alternate
    multiplication by (g - 1) (odd degrees) and by the norm (even),
    where g is the translation of the cosets by e_i; the augmentation
    sends every coset to 1.  ell must be even for exactness.
    """
    if ell < 2 or ell % 2:
        raise OddLength(f"length must be an even integer >= 2, got {ell}")
    if not 1 <= i <= group.rank:
        raise ValueError(f"coordinate index {i} out of range 1..{group.rank}")
    p = group.p
    part = Subgroup.coordinate_hyperplane(group, i)
    coset = realize(PermutationDescriptor(group, (part,))).module
    k = _trivial_one(group)
    g = coset.action[i - 1]
    eye = Mat.identity(p, p)
    gm1 = g - eye
    norm = eye
    power = eye
    for _ in range(p - 1):
        power = power @ g
        norm = norm + power
    ones_col = Mat(p, np.ones((p, 1), dtype=np.int64))
    ones_row = Mat(p, np.ones((1, p), dtype=np.int64))
    terms = [coset] * ell + [k]
    diffs = []
    for j in range(1, ell):
        diffs.append(ModuleMap(coset, coset, gm1 if j % 2 else norm))
    diffs.append(ModuleMap(k, coset, ones_col))
    aug = ModuleMap(coset, k, ones_row)
    c = tag_complex(Complex(tuple(terms), tuple(diffs), aug))
    if not is_resolution(c):
        raise InternalError("periodic complex failed its exactness certificate")
    return c


def _trivial_one(group: Group) -> Module:
    eye = Mat.identity(group.p, 1)
    return Module(group, tuple(eye for _ in range(group.rank)))


def _even_length(m: int) -> int:
    """Smallest even integer >= m + 1: guarantees freeness through degree m."""
    return m + 1 if (m + 1) % 2 == 0 else m + 2


def _trivial_complex(group: Group, m: int) -> Complex:
    ell = _even_length(m)
    c = periodic_complex(group, 1, ell)
    for i in range(2, group.rank + 1):
        c = tensor_complexes(c, periodic_complex(group, i, ell))
    return c


def trivial_resolution(group: Group, m: int) -> GoodResolution:
    """A certified resolution of k, fully tagged and free up to degree m.

    The external tensor product of the periodic complexes Q(1), ..., Q(r),
    all of even length >= m + 1.  Every term in degree n <= m is an
    intersection of all r coordinate hyperplanes, hence free; degree 0 is
    the whole group algebra.
    """
    if m < 0:
        raise ValueError("freeness degree must be >= 0")
    return _certified(_trivial_complex(group, m), m)


# ---------------------------------------------------------------------------
# rotation (projective-cover shift of a short exact sequence)


@dataclass(frozen=True)
class Rotation:
    """0 -> ΩN -> L (+) P -> M -> 0 produced from 0 -> L -> M -> N -> 0."""

    ses: ShortExactSequence
    cover: Cover
    omega_incl: ModuleMap  # ΩN -> P
    middle: DirectSum  # the L (+) P structure maps


def rotate(ses: ShortExactSequence) -> Rotation:
    bad = check_ses(ses)
    if bad is not None:
        raise ValueError(f"input is not short exact: {bad}")
    incl, proj = ses.incl, ses.proj
    mod_l, mod_m, mod_n = incl.source, incl.target, proj.target
    group = mod_m.group
    p = group.p
    cover = projective_cover(mod_n)
    fr = cover.free
    # phi : P -> M covers pi_P through proj, built freely on the generators
    if cover.free_rank:
        gen_cols = [j * group.order for j in range(cover.free_rank)]
        u = solve(proj.matrix, cover.map.matrix.take_cols(gen_cols))
        if u is None:
            raise InternalError("projection admits no preimage of a cover generator")
        phi_mat = hstack(
            [
                Mat(p, orbit_columns(group, mod_m.action, u.a[:, j]))
                for j in range(cover.free_rank)
            ]
        )
    else:
        phi_mat = Mat.zeros(p, mod_m.dim, 0)
    phi = ModuleMap(fr, mod_m, phi_mat)
    if proj.matrix @ phi.matrix != cover.map.matrix:
        raise InternalError("cover lift does not commute with the projection")
    middle = direct_sum(mod_l, fr)
    psi = ModuleMap(middle.module, mod_m, hstack([incl.matrix, phi.matrix]))
    omega_n, kappa = kernel(cover.map)
    corest = solve(incl.matrix, phi.matrix @ kappa.matrix)
    if corest is None:
        raise InternalError("phi does not carry ΩN into L")
    embed = ModuleMap(omega_n, middle.module, vstack([-corest, kappa.matrix]))
    new_ses = ShortExactSequence(incl=embed, proj=psi)
    bad = check_ses(new_ses)
    if bad is not None:
        raise InternalError(f"rotated sequence is not short exact: {bad}")
    return Rotation(ses=new_ses, cover=cover, omega_incl=kappa, middle=middle)


# ---------------------------------------------------------------------------
# splice: resolve the cokernel through a lift and a mapping cone


def splice(
    res_l: Complex,
    res_m: Complex,
    f: ModuleMap,
    quot: ModuleMap,
    certify: bool = True,
) -> Complex:
    """Resolve coker(f) = N from resolutions of L and M.

    ``f : L -> M`` must be injective with ``quot : M -> N`` its cokernel
    (together they are short exact).  ``res_l`` must be free up to the
    top degree of ``res_m``; the chain-map lift exists by projectivity
    and the mapping cone, re-augmented through ``quot``, is exact.
    """
    if res_l.aug is None or res_m.aug is None:
        raise ValueError("both inputs must be augmented")
    if res_l.aug.target != f.source or res_m.aug.target != f.target:
        raise ValueError("resolutions do not resolve the ends of f")
    if quot.source != f.target:
        raise ValueError("quotient map does not start at the target of f")
    if not f.is_injective():
        raise ValueError("f must be injective")
    if not quot.is_surjective():
        raise ValueError("quot must be surjective")
    if not (quot.matrix @ f.matrix).is_zero():
        raise ValueError("quot o f must vanish")
    if f.rank() + quot.rank() != f.target.dim:
        raise ValueError("f and quot are not short exact")
    ell = res_m.top
    lift = lift_chain_map(f, res_l, res_m, ell)
    cn = cone(lift)
    aug = ModuleMap(cn.terms[0], quot.target, quot.matrix @ res_m.aug.matrix)
    if cn.top >= 1 and not (aug.matrix @ cn.diffs[0].matrix).is_zero():
        raise InternalError("spliced augmentation does not kill d_1")
    out = Complex(cn.terms, cn.diffs, aug, cn.tags)
    if certify:
        report = certify_resolution(out)
        if not report.ok:
            raise InternalError(f"splice output not exact: {report.first_failure()}")
    return out


# ---------------------------------------------------------------------------
# the end-to-end construction


def good_resolution(module: Module, m: int) -> GoodResolution:
    """A certified permutation resolution of M, free up to degree m.

    Free modules resolve themselves.  Otherwise, walk a composition
    series 0 = L_0 < ... < L_s = M: start from the tensor resolution of
    k re-augmented onto L_1, and for each further step rotate the flag
    sequence and splice with a freshly truncated tensor resolution of k,
    whose target coincides with the rotation's ΩN by construction.
    """
    if m < 0:
        raise ValueError("freeness degree must be >= 0")
    bad = validate_module(module)
    if bad is not None:
        raise ValueError(f"invalid module: {bad}")
    group = module.group
    cover = projective_cover(module)
    if cover.free.dim == module.dim:
        return _certified(tag_complex(single_term_complex(cover.free, cover.map)), m)
    incls = composition_series(module)
    first = incls[1].source
    if first.dim != 1 or not all(a.is_identity() for a in first.action):
        raise InternalError("first composition factor is not the trivial line")
    res = retarget_augmentation(_trivial_complex(group, m), first)
    for step in range(2, len(incls)):
        ses = ses_from_flag(incls[step - 1], incls[step])
        rot = rotate(ses)
        extra = tag_complex(
            single_term_complex(rot.cover.free, identity_map(rot.cover.free))
        )
        res_m = direct_sum_complexes(res, extra)
        if res_m.aug.target != rot.middle.module:
            raise InternalError("direct-sum augmentation target mismatch")
        ell = res_m.top
        res_omega = truncate(_trivial_complex(group, max(m, ell) + 1), check=False)
        if res_omega.aug.target != rot.ses.incl.source:
            raise InternalError("truncated resolution target differs from ΩN")
        res_omega = retarget_augmentation(res_omega, rot.ses.incl.source)
        res = splice(res_omega, res_m, rot.ses.incl, rot.ses.proj, certify=False)
    return _certified(res, m)


# ---------------------------------------------------------------------------
# trimming a free summand off the resolved module


def trim(res: Complex, proj_m: ModuleMap, proj_q: ModuleMap) -> Complex:
    """From a resolution of M (+) Q with Q free, produce one of M.

    The epimorphism from degree 0 onto Q forces Q to split off a set of
    free parts of the degree-0 term: select them greedily (multi-pass,
    each part accepted when it adds a full p^r to the rank), then cancel
    them against Q, restricting the augmentation and d_1.
    """
    if res.aug is None:
        raise SelectionFailed("input complex is not augmented")
    if res.tags is None:
        raise SelectionFailed("degree-0 term must be tagged")
    target = res.aug.target
    for name, f in (("proj_m", proj_m), ("proj_q", proj_q)):
        if f.source != target:
            raise SelectionFailed(f"{name} does not start at the resolved module")
        bad = check_module_map(f)
        if bad is not None:
            raise SelectionFailed(f"{name}: {bad}")
    group = target.group
    p = group.p
    order = group.order
    q_mod = proj_q.target
    if q_mod.dim % order:
        raise SelectionFailed("Q dimension is not a multiple of the group order")
    t = q_mod.dim // order
    if free_rank(q_mod) != t:
        raise SelectionFailed("Q is not free")
    if rank(vstack([proj_m.matrix, proj_q.matrix])) != target.dim:
        raise SelectionFailed("the two projections do not split the target")
    if t == 0:
        return res
    tag0 = res.tags[0]
    positions = {}
    for pos, (part_idx, rep) in enumerate(tag0.basis_map):
        positions.setdefault(part_idx, []).append((group.element_index(rep), pos))
    free_parts = [
        idx for idx, part in enumerate(tag0.parts) if part.is_trivial()
    ]
    composite = proj_q.matrix @ res.aug.matrix
    selected: list[int] = []
    chosen_cols: list[Mat] = []
    current_rank = 0
    while current_rank < q_mod.dim:
        progressed = False
        for idx in free_parts:
            if idx in selected:
                continue
            cols = [pos for _, pos in sorted(positions[idx])]
            cand = composite.take_cols(cols)
            stacked = hstack(chosen_cols + [cand]) if chosen_cols else cand
            if rank(stacked) == current_rank + order:
                selected.append(idx)
                chosen_cols.append(cand)
                current_rank += order
                progressed = True
        if not progressed:
            raise SelectionFailed("no set of free parts maps isomorphically onto Q")
    w_cols = sorted(
        pos for idx in selected for _, pos in positions[idx]
    )
    keep_cols = [c for c in range(res.terms[0].dim) if c not in set(w_cols)]
    eps_m = proj_m.matrix @ res.aug.matrix
    a = eps_m.take_cols(keep_cols)
    b = eps_m.take_cols(w_cols)
    c_blk = composite.take_cols(keep_cols)
    alpha = composite.take_cols(w_cols)
    alpha_inv = inverse(alpha)
    eps_new = a - b @ alpha_inv @ c_blk
    new_term = Module(
        group,
        tuple(g.take_rows(keep_cols).take_cols(keep_cols) for g in res.terms[0].action),
    )
    new_terms = (new_term,) + res.terms[1:]
    new_diffs = list(res.diffs)
    if res.top >= 1:
        d1 = res.diffs[0].matrix
        # the W-block of the straightened differential vanishes since eps d_1 = 0
        w_block = d1.take_rows(w_cols) + alpha_inv @ c_blk @ d1.take_rows(keep_cols)
        if not w_block.is_zero():
            raise InternalError("free-summand cancellation left a nonzero W-block")
        new_diffs[0] = ModuleMap(res.terms[1], new_term, d1.take_rows(keep_cols))
    aug = ModuleMap(new_term, proj_m.target, eps_new)
    tags = (recognize(new_term),) + res.tags[1:]
    out = Complex(new_terms, tuple(new_diffs), aug, tags)
    report = certify_resolution(out, require_tags=True)
    if not report.ok:
        raise InternalError(f"trimmed complex not exact: {report.first_failure()}")
    return out
