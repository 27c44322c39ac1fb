"""Exact dense linear algebra over prime fields F_p.

Matrices are immutable int64 numpy arrays with every entry reduced to
{0, ..., p-1}.  All arithmetic is exact.  Products are evaluated in
float64 so that BLAS does the work; this is exact as long as
(p-1)^2 * inner_dim stays below 2^53, which holds with a huge margin at
the configured caps, and there is an int64 fallback beyond that.

Conventions (all deterministic, so downstream outputs are golden-testable):

* ``rref`` normalises pivots to 1 and eliminates above and below.
* ``nullspace`` returns the basis read off the rref free variables in
  increasing column order, with the free variable set to 1.
* ``solve`` returns the particular solution with all free variables 0,
  or ``None`` when the system is inconsistent.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, InternalError

_FLOAT_EXACT_BOUND = 2**53


def is_prime(n: int) -> bool:
    """Primality by trial division; n is tiny here (p^r is capped)."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


_prime_cache: set[int] = set()
_inv_tables: dict[int, np.ndarray] = {}


def check_prime(p: int) -> int:
    if p not in _prime_cache:
        if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
            raise ValueError(f"{p!r} is not a prime")
        _prime_cache.add(int(p))
    return int(p)


def _inverse_table(p: int) -> np.ndarray:
    """inv[x] = x^-1 mod p for x in 1..p-1 (index 0 unused)."""
    table = _inv_tables.get(p)
    if table is None:
        table = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)
        _inv_tables[p] = table
    return table


class Mat:
    """An immutable rows x cols matrix over F_p."""

    __slots__ = ("p", "a")

    def __init__(self, p, data):
        p = check_prime(p)
        a = np.array(data, dtype=np.int64)
        if a.ndim != 2:
            raise ValueError(f"expected a 2d array, got shape {a.shape}")
        a %= p
        a.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "a", a)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @staticmethod
    def _wrap(p: int, a: np.ndarray) -> "Mat":
        """Internal fast path: a must already be int64, reduced, and owned."""
        m = object.__new__(Mat)
        a.setflags(write=False)
        object.__setattr__(m, "p", p)
        object.__setattr__(m, "a", a)
        return m

    @classmethod
    def zeros(cls, p, rows, cols):
        return cls._wrap(check_prime(p), np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p, n):
        return cls._wrap(check_prime(p), np.eye(n, dtype=np.int64))

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    @property
    def T(self):
        return Mat._wrap(self.p, self.a.T.copy())

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.p == other.p
            and self.shape == other.shape
            and np.array_equal(self.a, other.a)
        )

    def __hash__(self):
        return hash((self.p, self.shape, self.a.tobytes()))

    def __repr__(self):
        return f"Mat(p={self.p}, {self.a.tolist()})"

    def _check_field(self, other):
        if self.p != other.p:
            raise DimensionMismatch(f"mixed fields F_{self.p} and F_{other.p}")

    def __add__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"add {self.shape} vs {other.shape}")
        return Mat._wrap(self.p, (self.a + other.a) % self.p)

    def __sub__(self, other):
        self._check_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"sub {self.shape} vs {other.shape}")
        return Mat._wrap(self.p, (self.a - other.a) % self.p)

    def __neg__(self):
        return Mat._wrap(self.p, (-self.a) % self.p)

    def scale(self, k: int):
        return Mat._wrap(self.p, (self.a * (int(k) % self.p)) % self.p)

    def __matmul__(self, other):
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"matmul {self.shape} @ {other.shape}")
        return Mat._wrap(self.p, _matmul_mod(self.a, other.a, self.p))

    def kron(self, other):
        self._check_field(other)
        return Mat._wrap(self.p, np.kron(self.a, other.a) % self.p)

    def is_zero(self):
        return not self.a.any()

    def is_identity(self):
        return self.rows == self.cols and np.array_equal(self.a, np.eye(self.rows, dtype=np.int64))

    def take_rows(self, idx):
        return Mat._wrap(self.p, self.a[np.asarray(idx, dtype=np.intp)].copy())

    def take_cols(self, idx):
        return Mat._wrap(self.p, self.a[:, np.asarray(idx, dtype=np.intp)].copy())

    def col(self, j):
        return Mat._wrap(self.p, self.a[:, j : j + 1].copy())


def _matmul_mod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    inner = x.shape[1]
    if inner == 0 or x.shape[0] == 0 or y.shape[1] == 0:
        return np.zeros((x.shape[0], y.shape[1]), dtype=np.int64)
    if (p - 1) * (p - 1) * inner < _FLOAT_EXACT_BOUND:
        prod = x.astype(np.float64) @ y.astype(np.float64)
        return np.rint(prod).astype(np.int64) % p
    # exact but slow; unreachable at the configured caps
    return (x @ y) % p


def mat_pow(m: Mat, e: int) -> Mat:
    if m.rows != m.cols:
        raise DimensionMismatch("matrix power needs a square matrix")
    result = Mat.identity(m.p, m.rows)
    base = m
    e = int(e)
    while e > 0:
        if e & 1:
            result = result @ base
        base = base @ base
        e >>= 1
    return result


def hstack(mats):
    mats = list(mats)
    p = mats[0].p
    for m in mats[1:]:
        if m.p != p or m.rows != mats[0].rows:
            raise DimensionMismatch("hstack needs equal fields and row counts")
    return Mat._wrap(p, np.hstack([m.a for m in mats]))


def vstack(mats):
    mats = list(mats)
    p = mats[0].p
    for m in mats[1:]:
        if m.p != p or m.cols != mats[0].cols:
            raise DimensionMismatch("vstack needs equal fields and column counts")
    return Mat._wrap(p, np.vstack([m.a for m in mats]))


def block_diag(p, mats):
    mats = list(mats)
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in mats:
        if m.p != p:
            raise DimensionMismatch("block_diag over mixed fields")
        out[r : r + m.rows, c : c + m.cols] = m.a
        r += m.rows
        c += m.cols
    return Mat._wrap(p, out)


def _echelon(a: np.ndarray, p: int, reduced: bool):
    """Gaussian elimination; returns (echelon form, pivot column list)."""
    a = np.array(a, dtype=np.int64)
    rows, cols = a.shape
    inv = _inverse_table(p)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i], c:] = a[[i, r], c:]
        v = int(a[r, c])
        if v != 1:
            a[r, c:] = a[r, c:] * int(inv[v]) % p
        if reduced:
            col = a[:, c].copy()
            col[r] = 0
            targets = np.flatnonzero(col)
        else:
            targets = r + 1 + np.flatnonzero(a[r + 1 :, c])
        if targets.size:
            a[targets, c:] = (a[targets, c:] - np.outer(a[targets, c], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Mat):
    """Reduced row echelon form; returns (R, rank, pivot columns)."""
    a, pivots = _echelon(m.a, m.p, reduced=True)
    return Mat._wrap(m.p, a), len(pivots), tuple(pivots)


def rank(m: Mat) -> int:
    return len(_echelon(m.a, m.p, reduced=False)[1])


def row_space(m: Mat) -> Mat:
    """Canonical basis of the row space: nonzero rows of the rref."""
    a, pivots = _echelon(m.a, m.p, reduced=True)
    return Mat._wrap(m.p, a[: len(pivots)].copy())


def nullspace(m: Mat) -> Mat:
    """Columns form the canonical basis of {x : m x = 0}."""
    a, pivots = _echelon(m.a, m.p, reduced=True)
    n = m.cols
    free = [c for c in range(n) if c not in set(pivots)]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        out[f, j] = 1
        for i, c in enumerate(pivots):
            out[c, j] = (-a[i, f]) % m.p
    return Mat._wrap(m.p, out)


def solve(a: Mat, b: Mat):
    """Canonical X with a @ X = b (free variables 0), or None if unsolvable."""
    if a.p != b.p:
        raise DimensionMismatch(f"mixed fields F_{a.p} and F_{b.p}")
    if a.rows != b.rows:
        raise DimensionMismatch(f"solve: {a.rows} rows vs {b.rows} rows")
    n = a.cols
    red, pivots = _echelon(np.hstack([a.a, b.a]), a.p, reduced=True)
    for c in pivots:
        if c >= n:
            return None
    x = np.zeros((n, b.cols), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c, :] = red[i, n:]
    return Mat._wrap(a.p, x)


def inverse(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    x = solve(m, Mat.identity(m.p, m.rows))
    if x is None:
        raise InternalError("matrix expected to be invertible is singular")
    return x


def permutation_vector(m: Mat):
    """sigma with m e_x = e_{sigma[x]} if m is a permutation matrix, else None."""
    a = m.a
    if m.rows != m.cols:
        return None
    if not np.all((a == 0) | (a == 1)):
        return None
    if not (np.all(a.sum(axis=0) == 1) and np.all(a.sum(axis=1) == 1)):
        return None
    return np.argmax(a, axis=0) if m.rows else np.zeros(0, dtype=np.int64)


def first_non_permutation_row(m: Mat):
    """Index of the first row witnessing that m is not a permutation matrix."""
    a = m.a
    if m.rows != m.cols:
        return 0
    bad = np.flatnonzero((a.sum(axis=1) != 1) | ((a != 0) & (a != 1)).any(axis=1))
    if bad.size:
        return int(bad[0])
    bad_col = np.flatnonzero(a.sum(axis=0) != 1)
    if bad_col.size:
        # some row repeats; report the second row hitting that column
        col = int(bad_col[0])
        hits = np.flatnonzero(a[:, col])
        return int(hits[1]) if hits.size > 1 else int(hits[0]) if hits.size else 0
    return None
