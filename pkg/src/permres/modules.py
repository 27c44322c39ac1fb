"""Finite-dimensional modules over elementary abelian p-groups.

A module is given by r commuting generator matrices of multiplicative
order dividing p, acting on column coordinate vectors.  Everything here
is pure and immutable; all submodule bases follow fixed canonical
conventions (rref rows, nullspace columns) so outputs are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import GroupMismatch, InternalError, NotInjective
from .groups import Group
from .linalg import (
    Mat,
    block_diag,
    hstack,
    mat_pow,
    nullspace,
    rank,
    row_space,
    rref,
    solve,
    vstack,
)


@dataclass(frozen=True)
class Module:
    """An E-representation: one generator matrix per standard generator of E."""

    group: Group
    action: tuple[Mat, ...]

    def __post_init__(self):
        if len(self.action) != self.group.rank:
            raise ValueError(
                f"need {self.group.rank} generator matrices, got {len(self.action)}"
            )
        d = self.action[0].rows
        for a in self.action:
            if a.p != self.group.p or a.shape != (d, d):
                raise ValueError("generator matrices must be square, equal size, over F_p")
        config.check_dim_cap(d)

    @property
    def dim(self) -> int:
        return self.action[0].rows

    def __eq__(self, other):
        return (
            isinstance(other, Module)
            and self.group == other.group
            and self.action == other.action
        )

    def __hash__(self):
        return hash((self.group, self.action))

    def __repr__(self):
        return f"Module(p={self.group.p}, rank={self.group.rank}, dim={self.dim})"


@dataclass(frozen=True)
class ModuleMap:
    """A matrix intertwining two module structures (target.dim x source.dim)."""

    source: Module
    target: Module
    matrix: Mat

    def __post_init__(self):
        if self.source.group != self.target.group:
            raise GroupMismatch("module map across different groups")
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError(
                f"map matrix {self.matrix.shape} does not match "
                f"{self.target.dim} x {self.source.dim}"
            )

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        if other.target is not self.source and other.target != self.source:
            raise ValueError("composition mismatch")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix)

    def rank(self) -> int:
        return rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> L -> M -> N -> 0, carried by the inclusion and the projection."""

    incl: ModuleMap
    proj: ModuleMap


def identity_map(m: Module) -> ModuleMap:
    return ModuleMap(m, m, Mat.identity(m.group.p, m.dim))


def zero_map(source: Module, target: Module) -> ModuleMap:
    return ModuleMap(source, target, Mat.zeros(source.group.p, target.dim, source.dim))


def check_module_map(f: ModuleMap):
    """None if f intertwines the two actions, else a report string."""
    for i, (a_s, a_t) in enumerate(zip(f.source.action, f.target.action)):
        if f.matrix @ a_s != a_t @ f.matrix:
            return f"map does not intertwine generator {i + 1}"
    return None


def check_ses(ses: ShortExactSequence):
    """None if the sequence is short exact, else a report string."""
    if ses.incl.target != ses.proj.source:
        return "inclusion target differs from projection source"
    for name, f in (("inclusion", ses.incl), ("projection", ses.proj)):
        bad = check_module_map(f)
        if bad is not None:
            return f"{name}: {bad}"
    if not ses.incl.is_injective():
        return "inclusion is not injective"
    if not ses.proj.is_surjective():
        return "projection is not surjective"
    if not (ses.proj.matrix @ ses.incl.matrix).is_zero():
        return "projection composed with inclusion is nonzero"
    if ses.incl.rank() + ses.proj.rank() != ses.incl.target.dim:
        return "ranks do not add up to the middle dimension"
    return None


# ---------------------------------------------------------------------------
# constructors


def trivial_module(group: Group, n: int) -> Module:
    if n < 0:
        raise ValueError("dimension must be >= 0")
    eye = Mat.identity(group.p, n)
    return Module(group, tuple(eye for _ in range(group.rank)))


def free_module(group: Group, t: int) -> Module:
    """(kE)^t with the group-element basis in lexicographic order per block."""
    if t < 0:
        raise ValueError("rank must be >= 0")
    config.check_dim_cap(t * group.order)
    elements = group.elements()
    order = group.order
    gens = []
    for i in range(1, group.rank + 1):
        e_i = group.generator(i)
        block = np.zeros((order, order), dtype=np.int64)
        for x in elements:
            y = tuple((a + b) % group.p for a, b in zip(x, e_i))
            block[group.element_index(y), group.element_index(x)] = 1
        big = np.kron(np.eye(t, dtype=np.int64), block)
        gens.append(Mat(group.p, big))
    return Module(group, tuple(gens))


def validate_module(m: Module):
    """None if the module invariants hold, else the first failed identity."""
    d = m.dim
    for i, a in enumerate(m.action):
        if a.shape != (d, d):
            return f"generator {i + 1}: not a {d} x {d} matrix"
        if not mat_pow(a, m.group.p).is_identity():
            return f"generator {i + 1}: order does not divide p"
    for i, j in itertools.combinations(range(m.group.rank), 2):
        if m.action[i] @ m.action[j] != m.action[j] @ m.action[i]:
            return f"commutativity i={i + 1} j={j + 1}"
    return None


# ---------------------------------------------------------------------------
# submodules, quotients, kernels


def submodule(m: Module, rows: Mat):
    """Submodule spanned by the given row basis (must be action-invariant).

    rows is canonicalised to rref; returns (S, incl) with incl the column
    embedding S -> m.
    """
    basis = row_space(rows)
    incl = basis.T
    action = []
    for a in m.action:
        x = solve(incl, a @ incl)
        if x is None:
            raise InternalError("row span is not action-invariant")
        action.append(x)
    s = Module(m.group, tuple(action))
    return s, ModuleMap(s, m, incl)


def radical(m: Module):
    """rad M = sum_i image(A_i - I), with its canonical inclusion."""
    rows = _radical_rows(m, Mat.identity(m.group.p, m.dim))
    return submodule(m, rows)


def module_closure(m: Module, rows: Mat) -> Mat:
    """Row basis of the smallest submodule containing the given row span."""
    current = row_space(rows)
    while True:
        bigger = row_space(vstack([current] + [current @ a.T for a in m.action]))
        if bigger.rows == current.rows:
            return bigger
        current = bigger


def _radical_rows(m: Module, rows: Mat) -> Mat:
    """Row basis of sum_i (A_i - I) W for the row-span W."""
    eye = Mat.identity(m.group.p, m.dim)
    stacked = vstack([rows @ (a - eye).T for a in m.action])
    return row_space(stacked)


def radical_series(m: Module) -> list[Mat]:
    """Row bases of M = rad^0 M > rad^1 M > ... > 0 (last entry empty)."""
    chain = [row_space(Mat.identity(m.group.p, m.dim))]
    while chain[-1].rows > 0:
        chain.append(_radical_rows(m, chain[-1]))
    return chain


def quotient(m: Module, incl: ModuleMap):
    """M / image(incl) on the canonical complement basis.

    The quotient coordinates are the non-pivot coordinates of the rref of
    the image; returns (Q, proj).
    """
    if incl.target != m:
        raise ValueError("inclusion does not land in the module")
    if not incl.is_injective():
        raise NotInjective("quotient by a non-injective map")
    p = m.group.p
    d = m.dim
    red, s, pivots = rref(incl.matrix.T)
    basis = red.a[:s]
    free = [c for c in range(d) if c not in set(pivots)]
    # rho reduces modulo the image: subtract pivot-coordinate multiples of basis rows
    sel = np.zeros((s, d), dtype=np.int64)
    for k, c in enumerate(pivots):
        sel[k, c] = 1
    rho = (np.eye(d, dtype=np.int64) - basis.T @ sel) % p
    rows_f = np.zeros((len(free), d), dtype=np.int64)
    for j, f in enumerate(free):
        rows_f[j, f] = 1
    proj_mat = Mat(p, rows_f @ rho % p)
    section = Mat(p, rows_f.T)
    action = tuple(proj_mat @ a @ section for a in m.action)
    q = Module(m.group, action)
    proj = ModuleMap(m, q, proj_mat)
    if not (proj.matrix @ incl.matrix).is_zero():
        raise InternalError("quotient projection does not kill the image")
    return q, proj


def kernel(f: ModuleMap):
    """ker f with the canonical nullspace basis; returns (K, incl)."""
    basis = nullspace(f.matrix)
    action = []
    for a in f.source.action:
        x = solve(basis, a @ basis)
        if x is None:
            raise InternalError("kernel is not action-invariant")
        action.append(x)
    k = Module(f.source.group, tuple(action))
    return k, ModuleMap(k, f.source, basis)


# ---------------------------------------------------------------------------
# sums, tensors, duals, hom


@dataclass(frozen=True)
class DirectSum:
    module: Module
    inj1: ModuleMap
    inj2: ModuleMap
    proj1: ModuleMap
    proj2: ModuleMap


def direct_sum(m: Module, n: Module) -> DirectSum:
    if m.group != n.group:
        raise GroupMismatch("direct sum across different groups")
    p = m.group.p
    action = tuple(block_diag(p, [a, b]) for a, b in zip(m.action, n.action))
    s = Module(m.group, action)
    dm, dn = m.dim, n.dim
    i1 = np.vstack([np.eye(dm, dtype=np.int64), np.zeros((dn, dm), dtype=np.int64)])
    i2 = np.vstack([np.zeros((dm, dn), dtype=np.int64), np.eye(dn, dtype=np.int64)])
    return DirectSum(
        module=s,
        inj1=ModuleMap(m, s, Mat(p, i1)),
        inj2=ModuleMap(n, s, Mat(p, i2)),
        proj1=ModuleMap(s, m, Mat(p, i1.T)),
        proj2=ModuleMap(s, n, Mat(p, i2.T)),
    )


def tensor(m: Module, n: Module) -> Module:
    """Diagonal action; basis index (a, b) -> a * dim(n) + b."""
    if m.group != n.group:
        raise GroupMismatch("tensor across different groups")
    config.check_dim_cap(m.dim * n.dim)
    action = tuple(a.kron(b) for a, b in zip(m.action, n.action))
    return Module(m.group, action)


def dual(m: Module) -> Module:
    """Contragredient: generator i acts by transpose of inverse (= A^(p-1))."""
    action = tuple(mat_pow(a, m.group.p - 1).T for a in m.action)
    return Module(m.group, action)


def hom_space(m: Module, n: Module) -> list[Mat]:
    """Canonical basis of the intertwiners {X : X A_i^M = A_i^N X}."""
    if m.group != n.group:
        raise GroupMismatch("hom across different groups")
    p = m.group.p
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return []
    blocks = []
    eye_m = np.eye(dm, dtype=np.int64)
    eye_n = np.eye(dn, dtype=np.int64)
    for a_m, a_n in zip(m.action, n.action):
        # row-major vec: vec(X A) = (I (x) A^T) vec X, vec(B X) = (B (x) I) vec X
        blocks.append(Mat(p, np.kron(eye_n, a_m.a.T) - np.kron(a_n.a, eye_m)))
    basis = nullspace(vstack(blocks))
    return [Mat(p, basis.a[:, j].reshape(dn, dm)) for j in range(basis.cols)]


# ---------------------------------------------------------------------------
# composition series


def composition_series(m: Module) -> list[ModuleMap]:
    """Inclusions of a full flag 0 = L_0 < L_1 < ... < L_s = M, s = dim M.

    The radical series is refined one canonical basis vector at a time;
    every intermediate subspace between consecutive radical layers is
    automatically a submodule, and every quotient is 1-dimensional.
    """
    p = m.group.p
    chain = radical_series(m)
    flags = [Mat.zeros(p, 0, m.dim)]
    current = flags[0]
    for layer in reversed(chain[:-1]):
        for row in layer.a:
            stacked = Mat(p, np.vstack([current.a, row[None, :]]))
            reduced = row_space(stacked)
            if reduced.rows > current.rows:
                current = reduced
                flags.append(current)
    if current.rows != m.dim:
        raise InternalError("flag does not exhaust the module")
    return [submodule(m, rows)[1] for rows in flags]


def ses_from_flag(incl_small: ModuleMap, incl_big: ModuleMap) -> ShortExactSequence:
    """The sequence 0 -> L_(i-1) -> L_i -> L_i / L_(i-1) -> 0 from two flag steps."""
    if incl_small.target != incl_big.target:
        raise ValueError("flag inclusions must land in the same module")
    core = solve(incl_big.matrix, incl_small.matrix)
    if core is None:
        raise ValueError("first subspace is not contained in the second")
    step = ModuleMap(incl_small.source, incl_big.source, core)
    _, proj = quotient(incl_big.source, step)
    ses = ShortExactSequence(incl=step, proj=proj)
    bad = check_ses(ses)
    if bad is not None:
        raise InternalError(f"flag step is not short exact: {bad}")
    return ses


# ---------------------------------------------------------------------------
# covers, Heller loops, free summands


@dataclass(frozen=True)
class Cover:
    free: Module
    map: ModuleMap
    free_rank: int


def orbit_columns(group: Group, action: tuple[Mat, ...], v: np.ndarray) -> np.ndarray:
    """Columns A^x v for all x in E, in lexicographic element order."""
    d = len(v)
    order = group.order
    out = np.zeros((d, order), dtype=np.int64)
    out[:, 0] = v % group.p
    elements = group.elements()
    for idx in range(1, order):
        x = elements[idx]
        i = next(c for c, val in enumerate(x) if val)
        y = list(x)
        y[i] -= 1
        prev = group.element_index(y)
        out[:, idx] = action[i].a @ out[:, prev] % group.p
    return out


def projective_cover(m: Module) -> Cover:
    """Minimal free module mapping onto M.

    The rank is dim(M / rad M); the j-th free generator maps to the
    canonical lift (standard basis vector at the j-th non-pivot
    coordinate of the rref of rad M).
    """
    rad_rows = _radical_rows(m, Mat.identity(m.group.p, m.dim))
    piv = {int(np.flatnonzero(row)[0]) for row in rad_rows.a}
    free_coords = [c for c in range(m.dim) if c not in piv]
    t = len(free_coords)
    f = free_module(m.group, t)
    cols = []
    for c in free_coords:
        v = np.zeros(m.dim, dtype=np.int64)
        v[c] = 1
        cols.append(orbit_columns(m.group, m.action, v))
    matrix = (
        Mat(m.group.p, np.hstack(cols)) if cols else Mat.zeros(m.group.p, m.dim, 0)
    )
    pi = ModuleMap(f, m, matrix)
    if rank(matrix) != m.dim:
        raise InternalError("projective cover is not surjective")
    return Cover(free=f, map=pi, free_rank=t)


def omega(m: Module):
    """The Heller loop: kernel of the projective cover, with its inclusion."""
    cover = projective_cover(m)
    return kernel(cover.map)


def omega_iter(m: Module, n: int) -> Module:
    for _ in range(n):
        m = omega(m)[0]
    return m


def norm_matrix(m: Module) -> Mat:
    """The norm element sum_{g in E} g acting on M, as one matrix product."""
    p = m.group.p
    result = Mat.identity(p, m.dim)
    for a in m.action:
        acc = Mat.identity(p, m.dim)
        power = Mat.identity(p, m.dim)
        for _ in range(p - 1):
            power = power @ a
            acc = acc + power
        result = result @ acc
    return result


def free_rank(m: Module) -> int:
    """Number of free direct summands = rank of the norm element on M."""
    return rank(norm_matrix(m))


@dataclass(frozen=True)
class StripResult:
    module: Module
    stripped: int
    iso: ModuleMap  # from (module (+) (kE)^stripped) onto the original


def strip_free(m: Module) -> StripResult:
    """Split off all free direct summands: M ~ M' (+) (kE)^t, free_rank(M') = 0.

    While the norm is nonzero, the cyclic submodule generated by a vector
    with nonzero norm image is free of rank 1 and splits off via a
    retraction (the group algebra is self-injective); recurse on the
    retraction kernel.
    """
    group = m.group
    p = group.p
    free_one = free_module(group, 1)
    embeddings = []
    current = m
    incl_current = Mat.identity(p, m.dim)
    while True:
        nu = norm_matrix(current)
        if nu.is_zero():
            break
        j = int(np.flatnonzero(nu.a.any(axis=0))[0])
        v = np.zeros(current.dim, dtype=np.int64)
        v[j] = 1
        phi = Mat(p, orbit_columns(group, current.action, v))
        rho = _retraction(current, free_one, phi)
        embeddings.append(incl_current @ phi)
        k, kappa = kernel(ModuleMap(current, free_one, rho))
        incl_current = incl_current @ kappa.matrix
        current = k
    t = len(embeddings)
    source = direct_sum(current, free_module(group, t)).module if t else current
    iso_mat = hstack([incl_current] + embeddings) if t else incl_current
    if rank(iso_mat) != m.dim or iso_mat.shape != (m.dim, m.dim):
        raise InternalError("free-summand splitting is not an isomorphism")
    return StripResult(module=current, stripped=t, iso=ModuleMap(source, m, iso_mat))


def _retraction(current: Module, free_one: Module, phi: Mat) -> Mat:
    """rho: current -> kE, a module map with rho o phi = identity."""
    basis = hom_space(current, free_one)
    if basis:
        cols = hstack([Mat(current.group.p, (h @ phi).a.reshape(-1, 1)) for h in basis])
        eye = Mat(current.group.p, np.eye(free_one.dim, dtype=np.int64).reshape(-1, 1))
        coeffs = solve(cols, eye)
    else:
        coeffs = None
    if coeffs is None:
        raise InternalError("no retraction onto a free cyclic submodule")
    acc = Mat.zeros(current.group.p, free_one.dim, current.dim)
    for c, h in zip(coeffs.a[:, 0], basis):
        acc = acc + h.scale(int(c))
    return acc


# ---------------------------------------------------------------------------
# isomorphism probing


@dataclass(frozen=True)
class IsoProbe:
    verdict: str  # "iso" | "not_isomorphic" | "inconclusive"
    map: ModuleMap | None


def iso_probe(
    m: Module,
    n: Module,
    trials: int | None = None,
    seed: int = config.DEFAULT_SEED,
) -> IsoProbe:
    """Search the hom space for an invertible intertwiner.

    Exhaustive (hence a proof either way) when the hom space has at most
    16 elements; otherwise seeded random sampling, allowed to give up.
    """
    if trials is None:
        trials = config.trials()
    if m.group != n.group:
        raise GroupMismatch("iso probe across different groups")
    if m.dim != n.dim:
        return IsoProbe("not_isomorphic", None)
    if m.dim == 0:
        return IsoProbe("iso", zero_map(m, n))
    basis = hom_space(m, n)
    if len(basis) != len(hom_space(n, m)):
        return IsoProbe("not_isomorphic", None)
    if not basis:
        return IsoProbe("not_isomorphic", None)
    p = m.group.p
    if p ** len(basis) <= 16:
        for coeffs in itertools.product(range(p), repeat=len(basis)):
            cand = _combine(basis, coeffs)
            if rank(cand) == m.dim:
                return IsoProbe("iso", ModuleMap(m, n, cand))
        return IsoProbe("not_isomorphic", None)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        coeffs = rng.integers(0, p, size=len(basis))
        cand = _combine(basis, coeffs)
        if rank(cand) == m.dim:
            return IsoProbe("iso", ModuleMap(m, n, cand))
    return IsoProbe("inconclusive", None)


def _combine(basis: list[Mat], coeffs) -> Mat:
    acc = Mat.zeros(basis[0].p, basis[0].rows, basis[0].cols)
    for c, h in zip(coeffs, basis):
        if c:
            acc = acc + h.scale(int(c))
    return acc
