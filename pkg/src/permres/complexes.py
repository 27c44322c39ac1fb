"""Bounded chain complexes of modules, with certification.

Homological indexing: differentials lower degree, d_j : C_j -> C_(j-1),
and an optional augmentation eps : C_0 -> M is treated as the degree-0
boundary for exactness purposes.  Nothing here is ever *assumed* exact:
``certify_resolution`` recomputes d^2 = 0, all homology dimensions, tag
recognition and freeness from scratch.

Sign conventions (the certified statements are sign-independent):

* cone(f)_j = Q_(j-1) (+) P_j with d(q, p) = (-d q, f(q) + d p);
* tensor differential d(a (x) b) = d a (x) b + (-1)^deg(a) a (x) d b.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalError, LiftFailed, NotResolution
from .groups import Group
from .linalg import Mat, permutation_vector, solve, vstack
from .modules import (
    Module,
    ModuleMap,
    check_module_map,
    direct_sum,
    kernel,
    orbit_columns,
    projective_cover,
    tensor,
    trivial_module,
    validate_module,
)
from .permutation import TaggedModule, element_images, is_free_descriptor, recognize


@dataclass(frozen=True)
class Complex:
    """Terms C_0 ... C_n with differentials diffs[j] : C_(j+1) -> C_j."""

    terms: tuple[Module, ...]
    diffs: tuple[ModuleMap, ...]
    aug: ModuleMap | None = None
    tags: tuple[TaggedModule, ...] | None = None

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a complex needs at least one term (use a zero module)")
        if len(self.diffs) != len(self.terms) - 1:
            raise ValueError("need exactly one differential per adjacent pair")
        for j, d in enumerate(self.diffs):
            if d.source != self.terms[j + 1] or d.target != self.terms[j]:
                raise ValueError(f"differential {j + 1} does not match its terms")
        if self.aug is not None and self.aug.source != self.terms[0]:
            raise ValueError("augmentation source must be the degree-0 term")
        if self.tags is not None:
            if len(self.tags) != len(self.terms):
                raise ValueError("tags must align with terms")
            for j, tag in enumerate(self.tags):
                if tag.module != self.terms[j]:
                    raise ValueError(f"tag {j} wraps a different module")

    @property
    def top(self) -> int:
        return len(self.terms) - 1

    @property
    def group(self) -> Group:
        return self.terms[0].group

    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)

    def boundary(self, j: int) -> ModuleMap | None:
        """d_j for j >= 1, the augmentation for j = 0, None out of range."""
        if j == 0:
            return self.aug
        if 1 <= j <= self.top:
            return self.diffs[j - 1]
        return None


@dataclass(frozen=True)
class ChainMap:
    """Degree-wise components f_j : source_j -> target_j (None = zero)."""

    source: Complex
    target: Complex
    components: tuple[ModuleMap | None, ...]
    base: ModuleMap | None = None  # the map of augmentation targets being lifted

    def __post_init__(self):
        if len(self.components) != self.source.top + 1:
            raise ValueError("one component per source degree (None allowed)")
        for j, f in enumerate(self.components):
            if f is None:
                continue
            if f.source != self.source.terms[j]:
                raise ValueError(f"component {j} has the wrong source")
            if j > self.target.top or f.target != self.target.terms[j]:
                raise ValueError(f"component {j} has the wrong target")

    def component_matrix(self, j: int) -> Mat:
        p = self.source.group.p
        if 0 <= j <= self.source.top and self.components[j] is not None:
            return self.components[j].matrix
        rows = self.target.terms[j].dim if j <= self.target.top else 0
        cols = self.source.terms[j].dim if j <= self.source.top else 0
        return Mat.zeros(p, rows, cols)


def check_chain_map(f: ChainMap):
    """None if d f = f d in every degree (augmentations included), else a report."""
    p = f.source.group.p
    if f.base is not None and f.source.aug is not None and f.target.aug is not None:
        lhs = f.target.aug.matrix @ f.component_matrix(0)
        rhs = f.base.matrix @ f.source.aug.matrix
        if lhs != rhs:
            return "chain-map identity fails at degree 0 (augmentations)"
    for j in range(1, f.source.top + 1):
        rows = f.target.terms[j - 1].dim if j - 1 <= f.target.top else 0
        cols = f.source.terms[j].dim
        if j <= f.target.top:
            lhs = f.target.diffs[j - 1].matrix @ f.component_matrix(j)
        else:
            lhs = Mat.zeros(p, rows, cols)
        rhs = f.component_matrix(j - 1) @ f.source.diffs[j - 1].matrix
        if lhs != rhs:
            return f"chain-map identity fails at degree {j}"
    return None


# ---------------------------------------------------------------------------
# basic invariants


def homology_dims(c: Complex) -> list[int]:
    """dim H_j = dim C_j - rank d_j - rank d_(j+1), exact arithmetic."""
    ranks = [0] * (c.top + 2)  # ranks[j] = rank d_j, with d_0 = augmentation
    if c.aug is not None:
        ranks[0] = c.aug.rank()
    for j in range(1, c.top + 1):
        ranks[j] = c.diffs[j - 1].rank()
    return [c.terms[j].dim - ranks[j] - ranks[j + 1] for j in range(c.top + 1)]


def euler_characteristic(c: Complex) -> int:
    return sum((-1) ** j * t.dim for j, t in enumerate(c.terms))


def is_resolution(c: Complex) -> bool:
    """Augmented, exact everywhere, and the augmentation is surjective."""
    if c.aug is None:
        return False
    if c.aug.rank() != c.aug.target.dim:
        return False
    return all(h == 0 for h in homology_dims(c))


def is_free_module(m: Module) -> bool:
    """Free = projective cover is bijective."""
    return projective_cover(m).free.dim == m.dim


def free_up_to(c: Complex, m: int) -> bool:
    """Every term in degrees 0..min(m, top) is free."""
    if m < 0:
        raise ValueError("freeness degree must be >= 0")
    for j in range(0, min(m, c.top) + 1):
        if c.tags is not None:
            if not is_free_descriptor(c.tags[j].descriptor):
                return False
        elif not is_free_module(c.terms[j]):
            return False
    return True


# ---------------------------------------------------------------------------
# builders


def _zero_module(group: Group) -> Module:
    return trivial_module(group, 0)


def _maybe_tags(c: Complex, want: bool) -> Complex:
    if not want:
        return c
    tags = tuple(recognize(t) for t in c.terms)
    return Complex(c.terms, c.diffs, c.aug, tags)


def tag_complex(c: Complex) -> Complex:
    """Attach recognized tags to every term (all must be permutation bases)."""
    return _maybe_tags(c, True)


def single_term_complex(module: Module, aug: ModuleMap | None = None) -> Complex:
    return Complex((module,), (), aug)


def retarget_augmentation(c: Complex, new_target: Module) -> Complex:
    """Swap the augmentation target for a module with identical matrices."""
    if c.aug is None:
        raise ValueError("complex is not augmented")
    old = c.aug.target
    if old.dim != new_target.dim or old.action != new_target.action:
        raise ValueError("new target must have identical action matrices")
    aug = ModuleMap(c.terms[0], new_target, c.aug.matrix)
    return Complex(c.terms, c.diffs, aug, c.tags)


def _assert_d_squared(c: Complex):
    for j in range(2, c.top + 1):
        if not (c.diffs[j - 2].matrix @ c.diffs[j - 1].matrix).is_zero():
            raise InternalError(f"d o d != 0 at degree {j}")
    if c.aug is not None and c.top >= 1:
        if not (c.aug.matrix @ c.diffs[0].matrix).is_zero():
            raise InternalError("augmentation does not kill the image of d_1")


def direct_sum_complexes(a: Complex, b: Complex) -> Complex:
    """Degree-wise direct sum; augmented onto the direct sum of targets."""
    group = a.group
    p = group.p
    n = max(a.top, b.top)
    terms = []
    sums = []
    for j in range(n + 1):
        ta = a.terms[j] if j <= a.top else _zero_module(group)
        tb = b.terms[j] if j <= b.top else _zero_module(group)
        ds = direct_sum(ta, tb)
        sums.append(ds)
        terms.append(ds.module)
    diffs = []
    for j in range(1, n + 1):
        da = a.diffs[j - 1].matrix if j <= a.top else Mat.zeros(p, terms[j - 1].dim, 0)
        rows_a = a.terms[j - 1].dim if j - 1 <= a.top else 0
        cols_a = a.terms[j].dim if j <= a.top else 0
        rows_b = b.terms[j - 1].dim if j - 1 <= b.top else 0
        cols_b = b.terms[j].dim if j <= b.top else 0
        mat = np.zeros((terms[j - 1].dim, terms[j].dim), dtype=np.int64)
        if j <= a.top:
            mat[:rows_a, :cols_a] = a.diffs[j - 1].matrix.a
        if j <= b.top:
            mat[rows_a:, cols_a:] = b.diffs[j - 1].matrix.a
        diffs.append(ModuleMap(terms[j], terms[j - 1], Mat(p, mat)))
    aug = None
    if a.aug is not None and b.aug is not None:
        tgt = direct_sum(a.aug.target, b.aug.target)
        mat = np.zeros((tgt.module.dim, terms[0].dim), dtype=np.int64)
        mat[: a.aug.target.dim, : a.terms[0].dim] = a.aug.matrix.a
        mat[a.aug.target.dim :, a.terms[0].dim :] = b.aug.matrix.a
        aug = ModuleMap(terms[0], tgt.module, Mat(p, mat))
    c = Complex(tuple(terms), tuple(diffs), aug)
    return _maybe_tags(c, a.tags is not None and b.tags is not None)


def cone(f: ChainMap) -> Complex:
    """Mapping cone: cone_j = Q_(j-1) (+) P_j, d(q, p) = (-d q, f(q) + d p)."""
    q, pc = f.source, f.target
    group = q.group
    p = group.p
    n = max(q.top + 1, pc.top)
    terms = []
    for j in range(n + 1):
        tq = q.terms[j - 1] if 1 <= j <= q.top + 1 else _zero_module(group)
        tp = pc.terms[j] if j <= pc.top else _zero_module(group)
        terms.append(direct_sum(tq, tp).module)
    diffs = []
    for j in range(1, n + 1):
        rows_q = q.terms[j - 2].dim if 2 <= j <= q.top + 2 else 0
        rows_p = pc.terms[j - 1].dim if j - 1 <= pc.top else 0
        cols_q = q.terms[j - 1].dim if j - 1 <= q.top else 0
        cols_p = pc.terms[j].dim if j <= pc.top else 0
        mat = np.zeros((rows_q + rows_p, cols_q + cols_p), dtype=np.int64)
        if 2 <= j <= q.top + 1:
            mat[:rows_q, :cols_q] = (-q.diffs[j - 2].matrix.a) % p
        fj = f.component_matrix(j - 1)
        if fj.rows and fj.cols:
            mat[rows_q:, :cols_q] = fj.a
        if 1 <= j <= pc.top:
            mat[rows_q:, cols_q:] = pc.diffs[j - 1].matrix.a
        diffs.append(ModuleMap(terms[j], terms[j - 1], Mat(p, mat)))
    c = Complex(tuple(terms), tuple(diffs))
    _assert_d_squared(c)
    return _maybe_tags(c, q.tags is not None and pc.tags is not None)


def tensor_complexes(a: Complex, b: Complex) -> Complex:
    """Total complex of the double complex, Koszul sign on the left degree.

    (A (x) B)_n = (+)_(i+j=n) A_i (x) B_j with summands in increasing i.
    """
    group = a.group
    p = group.p
    if b.group != group:
        raise ValueError("tensor of complexes over different groups")
    n_total = a.top + b.top

    def summands(n):
        return [(i, n - i) for i in range(max(0, n - b.top), min(n, a.top) + 1)]

    term_modules = {}
    offsets = {}
    terms = []
    for n in range(n_total + 1):
        off = 0
        mods = []
        for i, j in summands(n):
            tm = tensor(a.terms[i], b.terms[j])
            term_modules[i, j] = tm
            offsets[i, j] = off
            off += tm.dim
            mods.append(tm)
        action = tuple(
            Mat(
                p,
                _block_diag_arrays([m.action[g].a for m in mods], off),
            )
            for g in range(group.rank)
        )
        terms.append(Module(group, action))
    diffs = []
    for n in range(1, n_total + 1):
        rows = terms[n - 1].dim
        cols = terms[n].dim
        mat = np.zeros((rows, cols), dtype=np.int64)
        for i, j in summands(n):
            co = offsets[i, j]
            w = term_modules[i, j].dim
            if i >= 1:
                ro = offsets[i - 1, j]
                block = np.kron(a.diffs[i - 1].matrix.a, np.eye(b.terms[j].dim, dtype=np.int64))
                mat[ro : ro + block.shape[0], co : co + w] = block
            if j >= 1:
                ro = offsets[i, j - 1]
                sign = 1 if i % 2 == 0 else p - 1
                block = sign * np.kron(np.eye(a.terms[i].dim, dtype=np.int64), b.diffs[j - 1].matrix.a)
                mat[ro : ro + block.shape[0], co : co + w] = block % p
            del w
        diffs.append(ModuleMap(terms[n], terms[n - 1], Mat(p, mat)))
    aug = None
    if a.aug is not None and b.aug is not None:
        tgt = tensor(a.aug.target, b.aug.target)
        aug = ModuleMap(terms[0], tgt, a.aug.matrix.kron(b.aug.matrix))
    c = Complex(tuple(terms), tuple(diffs), aug)
    _assert_d_squared(c)
    return _maybe_tags(c, a.tags is not None and b.tags is not None)


def _block_diag_arrays(blocks, total):
    out = np.zeros((total, total), dtype=np.int64)
    off = 0
    for blk in blocks:
        k = blk.shape[0]
        out[off : off + k, off : off + k] = blk
        off += k
    return out


def syzygy(c: Complex, j: int) -> Module:
    """The j-th syzygy K_j = ker(d_(j-1)), with d_0 the augmentation (j >= 1).

    Above the top degree the complex is zero, so the syzygy is too.
    """
    if j < 1:
        raise ValueError(f"syzygy index {j} out of range")
    if j - 1 > c.top:
        return _zero_module(c.group)
    b = c.boundary(j - 1)
    if b is None:
        raise ValueError("complex is not augmented")
    return kernel(b)[0]


def truncate(c: Complex, steps: int = 1, check: bool = True) -> Complex:
    """Drop degree 0 and re-augment onto ker(eps): a resolution of the syzygy."""
    for _ in range(steps):
        if c.aug is None:
            raise NotResolution("cannot truncate an unaugmented complex")
        if check and not is_resolution(c):
            raise NotResolution("input complex is not exact")
        k, kappa = kernel(c.aug)
        if c.top == 0:
            if k.dim != 0:
                raise NotResolution("augmentation of a length-0 resolution has a kernel")
            z = _zero_module(c.group)
            c = Complex((z,), (), ModuleMap(z, k, Mat.zeros(c.group.p, 0, 0)))
            continue
        mat = solve(kappa.matrix, c.diffs[0].matrix)
        if mat is None:
            raise NotResolution("image of d_1 is not contained in ker(eps)")
        aug = ModuleMap(c.terms[1], k, mat)
        c = Complex(c.terms[1:], c.diffs[1:], aug, None if c.tags is None else c.tags[1:])
    return c


# ---------------------------------------------------------------------------
# chain-map lifting


def lift_chain_map(f: ModuleMap, q: Complex, pc: Complex, ell: int) -> ChainMap:
    """Lift f through two resolutions: eps_P f_0 = f eps_Q and d f_j = f_(j-1) d.

    Preconditions: q resolves f.source and is free up to ell, pc resolves
    f.target with top degree <= ell.  Components are produced degree by
    degree by the canonical constrained solve; degrees above pc vanish and
    the final compatibility is asserted rather than solved.
    """
    if q.aug is None or pc.aug is None:
        raise LiftFailed("both complexes must be augmented")
    if q.aug.target != f.source or pc.aug.target != f.target:
        raise LiftFailed("augmentation targets do not match the map being lifted")
    if pc.top > ell:
        raise LiftFailed(f"target complex has top degree {pc.top} > ell = {ell}")
    components: list[ModuleMap | None] = []
    prev = f.matrix
    for j in range(q.top + 1):
        dq = q.boundary(j)
        rhs = prev @ dq.matrix
        if j <= pc.top:
            dp = pc.boundary(j)
            tag = q.tags[j] if q.tags is not None else None
            x = _solve_step(q.terms[j], pc.terms[j], dp.matrix, rhs, tag)
            if x is None:
                raise LiftFailed(f"no lift exists at degree {j}")
            components.append(ModuleMap(q.terms[j], pc.terms[j], x))
            prev = x
        else:
            # beyond the target: the compatibility must hold with a zero component
            if not rhs.is_zero():
                raise LiftFailed(f"automatic vanishing fails at degree {j}")
            components.append(None)
            prev = Mat.zeros(q.group.p, 0, q.terms[j].dim)
    return ChainMap(q, pc, tuple(components), base=f)


def _solve_step(src: Module, tgt: Module, d_mat: Mat, rhs: Mat, tag: TaggedModule | None):
    """Canonical X with d X = rhs among module maps src -> tgt."""
    if tag is not None and tag.descriptor.is_free():
        return _solve_step_free(src, tgt, d_mat, rhs, tag)
    return _solve_step_dense(src, tgt, d_mat, rhs)


def _solve_step_free(src: Module, tgt: Module, d_mat: Mat, rhs: Mat, tag: TaggedModule):
    """Free source: solve on the free generators, extend by the action."""
    group = src.group
    p = group.p
    zero_rep = tuple([0] * group.rank)
    bases = [k for k, (_, rep) in enumerate(tag.basis_map) if rep == zero_rep]
    if len(bases) * group.order != src.dim:
        raise InternalError("free tag has the wrong number of generators")
    gen_rhs = rhs.take_cols(bases)
    u = solve(d_mat, gen_rhs)
    if u is None:
        return None
    x = np.zeros((tgt.dim, src.dim), dtype=np.int64)
    perms = [permutation_vector(a) for a in src.action]
    for col, base in enumerate(bases):
        cols = orbit_columns(group, tgt.action, u.a[:, col])
        images = element_images(group, perms, base)
        x[:, images] = cols
    xm = Mat(p, x)
    if d_mat @ xm != rhs:
        raise InternalError("free extension does not satisfy the lifting equation")
    return xm


def _solve_step_dense(src: Module, tgt: Module, d_mat: Mat, rhs: Mat):
    """Joint linear system: X intertwines and d X = rhs (row-major vec)."""
    p = src.group.p
    ds, dt = src.dim, tgt.dim
    if ds == 0 or dt == 0:
        return Mat.zeros(p, dt, ds)
    eye_s = np.eye(ds, dtype=np.int64)
    eye_t = np.eye(dt, dtype=np.int64)
    blocks = [
        Mat(p, np.kron(eye_t, a_s.a.T) - np.kron(a_t.a, eye_s))
        for a_s, a_t in zip(src.action, tgt.action)
    ]
    blocks.append(Mat(p, np.kron(d_mat.a, eye_s)))
    lhs = vstack(blocks)
    target_vec = np.concatenate(
        [np.zeros(ds * dt * src.group.rank, dtype=np.int64), rhs.a.reshape(-1)]
    )
    sol = solve(lhs, Mat(p, target_vec[:, None]))
    if sol is None:
        return None
    return Mat(p, sol.a[:, 0].reshape(dt, ds))


# ---------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class CertReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def first_failure(self):
        for c in self.checks:
            if not c.ok:
                return c
        return None

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "PASS" if c.ok else "FAIL"
            suffix = f" ({c.detail})" if c.detail else ""
            out.append(f"{c.name}: {status}{suffix}")
        return out


def certify_resolution(
    c: Complex,
    m: int | None = None,
    require_tags: bool = False,
) -> CertReport:
    """Recompute every claimed identity of a resolution from scratch."""
    checks = []

    def add(name, ok, detail=""):
        checks.append(CheckResult(name, bool(ok), detail))

    add("augmented", c.aug is not None, "" if c.aug is not None else "no augmentation")

    bad = None
    for j, t in enumerate(c.terms):
        msg = validate_module(t)
        if msg is not None:
            bad = f"degree {j}: {msg}"
            break
    if bad is None and c.aug is not None:
        msg = validate_module(c.aug.target)
        if msg is not None:
            bad = f"target: {msg}"
    add("terms-valid", bad is None, bad or "")

    bad = None
    for j in range(c.top + 1):
        b = c.boundary(j)
        if b is None:
            continue
        msg = check_module_map(b)
        if msg is not None:
            bad = f"degree {j}: {msg}"
            break
    add("maps-intertwine", bad is None, bad or "")

    bad = None
    for j in range(2, c.top + 1):
        if not (c.diffs[j - 2].matrix @ c.diffs[j - 1].matrix).is_zero():
            bad = f"d_{j - 1} o d_{j} != 0"
            break
    if bad is None and c.aug is not None and c.top >= 1:
        if not (c.aug.matrix @ c.diffs[0].matrix).is_zero():
            bad = "eps o d_1 != 0"
    add("d-squared", bad is None, bad or "")

    if c.aug is not None:
        defect = c.aug.target.dim - c.aug.rank()
        hdims = homology_dims(c)
        bad = None
        if defect:
            bad = f"augmentation rank deficit {defect}"
        else:
            for j, h in enumerate(hdims):
                if h:
                    bad = f"dim H_{j} = {h}"
                    break
        add("exact", bad is None, bad or "")
        chi = euler_characteristic(c)
        add(
            "euler-characteristic",
            chi == c.aug.target.dim,
            f"chi = {chi}, target dim = {c.aug.target.dim}",
        )
    else:
        add("exact", False, "no augmentation")

    if c.tags is not None:
        bad = None
        for j, tag in enumerate(c.tags):
            try:
                found = recognize(c.terms[j])
            except Exception as exc:  # NotPermutationBasis carries the details
                bad = f"degree {j}: {exc}"
                break
            if found.descriptor != tag.descriptor:
                bad = f"degree {j}: recognized tag differs"
                break
        add("tags", bad is None, bad or "")
    elif require_tags:
        add("tags", False, "complex is untagged")

    if m is not None:
        ok = free_up_to(c, m)
        add("free-up-to", ok, f"m = {m}")

    return CertReport(tuple(checks))
