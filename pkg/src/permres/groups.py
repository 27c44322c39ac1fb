"""Elementary abelian groups E = (C_p)^r and their subgroups.

E is identified with the vector space F_p^r written additively, so
subgroups are exactly F_p-subspaces.  Group elements are exponent
vectors, enumerated in lexicographic order; a subgroup is stored by the
reduced row echelon basis of its subspace, which doubles as its
canonical sorting key.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import config
from .errors import GroupMismatch
from .linalg import Mat, check_prime, nullspace, row_space


@dataclass(frozen=True)
class Group:
    """(C_p)^r with the standard generators e_1, ..., e_r."""

    p: int
    rank: int

    def __post_init__(self):
        check_prime(self.p)
        if self.rank < 1:
            raise ValueError("group rank must be >= 1")
        config.check_order_cap(self.p**self.rank)

    @property
    def order(self) -> int:
        return self.p**self.rank

    def elements(self) -> tuple[tuple[int, ...], ...]:
        return _elements(self.p, self.rank)

    def element_index(self, vec) -> int:
        idx = 0
        for v in vec:
            idx = idx * self.p + int(v) % self.p
        return idx

    def generator(self, i: int) -> tuple[int, ...]:
        """The exponent vector of e_i (1-based i)."""
        if not 1 <= i <= self.rank:
            raise ValueError(f"generator index {i} out of range 1..{self.rank}")
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))


@lru_cache(maxsize=None)
def _elements(p, rank):
    return tuple(itertools.product(range(p), repeat=rank))


class Subgroup:
    """A subgroup H <= E, stored as the rref basis of its subspace."""

    __slots__ = ("group", "basis")

    def __init__(self, group: Group, rows):
        basis = row_space(Mat(group.p, rows)) if len(rows) else Mat.zeros(group.p, 0, group.rank)
        if basis.cols != group.rank:
            raise GroupMismatch(f"basis rows must have length {group.rank}")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subgroup is immutable")

    @classmethod
    def trivial(cls, group):
        return cls(group, [])

    @classmethod
    def full(cls, group):
        return cls(group, Mat.identity(group.p, group.rank).a)

    @classmethod
    def coordinate_hyperplane(cls, group, i):
        """span{e_j : j != i} (1-based i): the paper-style coordinate subgroup."""
        rows = [group.generator(j) for j in range(1, group.rank + 1) if j != i]
        return cls(group, rows)

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def index(self) -> int:
        """[E : H] = p^(r - dim H)."""
        return self.group.p ** (self.group.rank - self.dim)

    @property
    def key(self):
        """Canonical sort key: (dim, flattened rref basis)."""
        return (self.dim, tuple(int(x) for x in self.basis.a.reshape(-1)))

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.group == other.group
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.group, self.key))

    def __repr__(self):
        rows = ["".join(str(int(x)) for x in row) for row in self.basis.a]
        return "{" + ",".join(rows) + "}"

    def is_trivial(self):
        return self.dim == 0

    def is_full(self):
        return self.dim == self.group.rank

    def pivots(self):
        return tuple(int(r.tolist().index(1)) for r in self.basis.a) if self.dim else ()

    def free_coords(self):
        """Coordinates complementary to the pivots, in increasing order."""
        piv = set(self.pivots())
        return tuple(c for c in range(self.group.rank) if c not in piv)

    def reduce(self, vec) -> tuple[int, ...]:
        """The canonical coset representative of vec + H (zero on all pivots)."""
        p = self.group.p
        v = [int(x) % p for x in vec]
        for row, c in zip(self.basis.a, self.pivots()):
            f = v[c]
            if f:
                v = [(x - f * int(y)) % p for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def coset_reps(self) -> tuple[tuple[int, ...], ...]:
        """All canonical representatives, lexicographically ordered."""
        p = self.group.p
        free = self.free_coords()
        reps = []
        for values in itertools.product(range(p), repeat=len(free)):
            v = [0] * self.group.rank
            for c, x in zip(free, values):
                v[c] = x
            reps.append(tuple(v))
        return tuple(reps)

    def __add__(self, other):
        """Subspace sum H + K."""
        self._check_group(other)
        rows = list(self.basis.a) + list(other.basis.a)
        return Subgroup(self.group, rows)

    def intersect(self, other):
        """H ∩ K via annihilators: (ann H + ann K) annihilated again."""
        self._check_group(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    def annihilator(self):
        """{v : <h, v> = 0 for all h in H} under the standard bilinear form."""
        return Subgroup(self.group, nullspace(self.basis).a.T)

    def _check_group(self, other):
        if self.group != other.group:
            raise GroupMismatch("subgroups of different groups")


def all_subgroups(group: Group) -> tuple[Subgroup, ...]:
    """Every subgroup of E, sorted by the canonical key.

    Breadth-first closure: repeatedly extend known subspaces by one
    vector.  Fine for the capped group orders.
    """
    elements = group.elements()
    seen = {Subgroup.trivial(group)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for sub in frontier:
            for vec in elements:
                if not sub.contains(vec):
                    bigger = Subgroup(group, list(sub.basis.a) + [list(vec)])
                    if bigger not in seen:
                        seen.add(bigger)
                        nxt.append(bigger)
        frontier = nxt
    return tuple(sorted(seen, key=lambda s: s.key))
