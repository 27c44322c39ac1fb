"""Symbolic permutation modules (+)_j k(E/H_j) and their realizations.

A descriptor is a multiset of subgroups, one per transitive summand; its
realization is the explicit module on the coset bases, with generator
e_i permuting cosets by translation.  ``recognize`` goes the other way:
it certifies that every generator matrix is a permutation matrix in the
given basis and reads off the orbit stabilizers.  Coset representatives
are the vectors supported on the non-pivot coordinates of the
subgroup's rref basis, in lexicographic order, so realizations are
bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .errors import GroupMismatch, InternalError, NotPermutationBasis
from .groups import Group, Subgroup
from .linalg import Mat, block_diag, first_non_permutation_row, permutation_vector
from .modules import Module


@dataclass(frozen=True)
class PermutationDescriptor:
    """A multiset of subgroups naming (+)_j k(E/H_j), canonically sorted."""

    group: Group
    parts: tuple[Subgroup, ...]

    def __post_init__(self):
        for part in self.parts:
            if part.group != self.group:
                raise GroupMismatch("descriptor part over a different group")
        object.__setattr__(
            self, "parts", tuple(sorted(self.parts, key=lambda s: s.key))
        )

    @property
    def dim(self) -> int:
        return sum(part.index for part in self.parts)

    def is_free(self) -> bool:
        return all(part.is_trivial() for part in self.parts)

    def multiset(self):
        return tuple(part.key for part in self.parts)

    def __eq__(self, other):
        return (
            isinstance(other, PermutationDescriptor)
            and self.group == other.group
            and self.multiset() == other.multiset()
        )

    def __hash__(self):
        return hash((self.group, self.multiset()))

    def __repr__(self):
        return "[" + " + ".join(repr(p) for p in self.parts) + "]"


def descriptor_dim(d: PermutationDescriptor) -> int:
    return d.dim


def descriptor_eq(d1: PermutationDescriptor, d2: PermutationDescriptor) -> bool:
    return d1 == d2


def is_free_descriptor(d: PermutationDescriptor) -> bool:
    return d.is_free()


@dataclass(frozen=True)
class TaggedModule:
    """A module together with a permutation basis.

    ``parts`` lists the transitive summands in basis order and
    ``basis_map[k] = (part index, coset representative)`` identifies each
    basis vector with a coset of its part.
    """

    module: Module
    parts: tuple[Subgroup, ...]
    basis_map: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def descriptor(self) -> PermutationDescriptor:
        return PermutationDescriptor(self.module.group, self.parts)


def realize_part(group: Group, part: Subgroup):
    """Permutation matrices of the coset action on E/H, plus the rep list."""
    reps = part.coset_reps()
    pos = {rep: i for i, rep in enumerate(reps)}
    n = len(reps)
    mats = []
    for i in range(1, group.rank + 1):
        e_i = group.generator(i)
        a = np.zeros((n, n), dtype=np.int64)
        for rep in reps:
            shifted = part.reduce(tuple((x + y) % group.p for x, y in zip(rep, e_i)))
            a[pos[shifted], pos[rep]] = 1
        mats.append(Mat(group.p, a))
    return mats, reps


def realize(d: PermutationDescriptor) -> TaggedModule:
    """The explicit module on the concatenated coset bases of the parts."""
    group = d.group
    config.check_dim_cap(d.dim)
    blocks = []
    basis_map = []
    for part_idx, part in enumerate(d.parts):
        mats, reps = realize_part(group, part)
        blocks.append(mats)
        basis_map.extend((part_idx, rep) for rep in reps)
    action = tuple(
        block_diag(group.p, [b[i] for b in blocks]) for i in range(group.rank)
    )
    module = Module(group, action)
    return TaggedModule(module=module, parts=d.parts, basis_map=tuple(basis_map))


def recognize(m: Module) -> TaggedModule:
    """Certify the basis-level permutation structure and read off the tag.

    Raises NotPermutationBasis (with the offending generator and row) if
    some generator matrix is not a permutation matrix.  Parts are ordered
    by their smallest basis index; coset representatives are canonical.
    """
    group = m.group
    perms = []
    for i, a in enumerate(m.action):
        sigma = permutation_vector(a)
        if sigma is None:
            raise NotPermutationBasis(i, first_non_permutation_row(a))
        perms.append(sigma)
    d = m.dim
    elements = group.elements()
    visited = np.zeros(d, dtype=bool)
    parts = []
    basis_map = [None] * d
    for start in range(d):
        if visited[start]:
            continue
        part_idx = len(parts)
        # where each group element sends the base point
        translate = element_images(group, perms, start)
        stab_rows = [elements[t] for t in np.flatnonzero(translate == start)]
        stab = Subgroup(group, [list(v) for v in stab_rows])
        orbit = set(int(t) for t in translate)
        if len(orbit) != stab.index:
            raise InternalError(
                f"orbit of index {start} has size {len(orbit)}, expected {stab.index}"
            )
        for v_idx, target in enumerate(translate):
            t = int(target)
            if basis_map[t] is None:
                basis_map[t] = (part_idx, stab.reduce(elements[v_idx]))
            visited[t] = True
        parts.append(stab)
    return TaggedModule(module=m, parts=tuple(parts), basis_map=tuple(basis_map))


def element_images(group: Group, perms, start: int) -> np.ndarray:
    """images[idx(v)] = sigma^v(start), for all v in lexicographic order."""
    elements = group.elements()
    images = np.zeros(group.order, dtype=np.int64)
    images[0] = start
    for idx in range(1, group.order):
        x = elements[idx]
        i = next(c for c, val in enumerate(x) if val)
        y = list(x)
        y[i] -= 1
        images[idx] = perms[i][images[group.element_index(y)]]
    return images


def mackey_tensor(h: Subgroup, k: Subgroup) -> PermutationDescriptor:
    """k(E/H) (x) k(E/K) decomposed: [E : H+K] copies of k(E/(H ∩ K))."""
    if h.group != k.group:
        raise GroupMismatch("Mackey tensor across different groups")
    multiplicity = (h + k).index
    meet = h.intersect(k)
    return PermutationDescriptor(h.group, tuple([meet] * multiplicity))


def tensor_descriptor(
    d1: PermutationDescriptor, d2: PermutationDescriptor
) -> PermutationDescriptor:
    """Multiset union of the Mackey rule over all part pairs."""
    if d1.group != d2.group:
        raise GroupMismatch("tensor of descriptors over different groups")
    parts = []
    for h in d1.parts:
        for k in d2.parts:
            parts.extend(mackey_tensor(h, k).parts)
    return PermutationDescriptor(d1.group, tuple(parts))
