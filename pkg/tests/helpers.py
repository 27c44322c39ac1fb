"""Independent brute-force reference routines used as test oracles.

Everything here is pure Python on lists of ints, deliberately sharing no
code with the library, so that expected values in the tests come from a
second implementation path.
"""


def ref_reduce(rows, p):
    """Row-reduce a list of row lists mod p; returns (echelon rows, rank)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c] % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rows, rank


def ref_rank(rows, p):
    return ref_reduce(rows, p)[1]


def ref_matmul(a, b, p):
    n, k = len(a), len(b[0]) if b else 0
    m = len(b)
    return [
        [sum(a[i][t] * b[t][j] for t in range(m)) % p for j in range(k)]
        for i in range(n)
    ]


def ref_mat_pow(a, e, p):
    n = len(a)
    out = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(e):
        out = ref_matmul(out, a, p)
    return out


def ref_span_dim(vectors, p):
    """Dimension of the span of a list of vectors over F_p."""
    return ref_rank(vectors, p)
