"""Exact integer linear algebra for symmetric bilinear forms.

Everything here works on Python ints, so entries may be arbitrarily large.
Matrices are passed around as sequences of rows; results come back as
tuples of tuples (hashable, immutable).
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DegenerateError, RankError, ShapeError

Row = tuple[int, ...]
Matrix = tuple[Row, ...]

__all__ = [
    "GramMatrix",
    "SublatticeSpec",
    "SnfResult",
    "DiscriminantGroup",
    "as_matrix",
    "matmul",
    "transpose",
    "identity",
    "determinant",
    "matrix_rank",
    "is_positive_definite",
    "smith_normal_form",
    "discriminant_group",
    "left_kernel",
    "saturation",
    "gram_from_generators",
    "orthogonal_complement",
    "is_primitive",
    "direct_sum",
    "pairing",
]


def _int(x) -> int:
    if isinstance(x, bool):
        raise ShapeError(f"boolean entry {x!r} is not an integer")
    try:
        return operator.index(x)
    except TypeError:
        raise ShapeError(f"non-integer entry {x!r}") from None


def as_matrix(rows: Iterable[Iterable[int]], ncols: int | None = None) -> Matrix:
    """Coerce to a rectangular tuple-of-tuples of ints.

    ``ncols`` pins the width, which matters for a matrix with no rows.
    """
    out = tuple(tuple(_int(x) for x in row) for row in rows)
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ShapeError(f"ragged matrix, row lengths {sorted(widths)}")
    if ncols is not None and out and len(out[0]) != ncols:
        raise ShapeError(f"expected {ncols} columns, got {len(out[0])}")
    return out


def _ncols(m: Matrix, default: int = 0) -> int:
    return len(m[0]) if m else default


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Matrix, ncols: int | None = None) -> Matrix:
    n = _ncols(m) if ncols is None else ncols
    return tuple(tuple(row[j] for row in m) for j in range(n))


def matmul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    k = _ncols(a, inner or 0)
    if len(b) != k:
        raise ShapeError(f"cannot multiply {len(a)}x{k} by {len(b)}x{_ncols(b)}")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def pairing(a: Matrix, u: Sequence[int], v: Sequence[int]) -> int:
    """u . A . v^T"""
    return sum(u[i] * sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(u)))


@dataclass(frozen=True)
class GramMatrix:
    """Square symmetric integer matrix of a bilinear form. ``dim`` may be 0."""

    entries: Matrix

    def __init__(self, entries: Iterable[Iterable[int]] = ()):
        m = as_matrix(entries)
        n = len(m)
        if m and len(m[0]) != n:
            raise ShapeError(f"Gram matrix must be square, got {n}x{len(m[0])}")
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise ShapeError(f"not symmetric at ({i},{j}): {m[i][j]} != {m[j][i]}")
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def submatrix(self, indices: Sequence[int]) -> GramMatrix:
        return GramMatrix([[self.entries[i][j] for j in indices] for i in indices])

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        return pairing(self.entries, u, v)

    def __repr__(self) -> str:
        return f"GramMatrix({self.tolist()!r})"


def _gram(g) -> GramMatrix:
    return g if isinstance(g, GramMatrix) else GramMatrix(g)


@dataclass(frozen=True)
class SublatticeSpec:
    """Generator rows inside an ambient form."""

    ambient: GramMatrix
    generators: Matrix = field(default=())

    def __init__(self, ambient, generators: Iterable[Iterable[int]] = ()):
        amb = _gram(ambient)
        gens = as_matrix(generators)
        for k, row in enumerate(gens):
            if len(row) != amb.dim:
                raise ShapeError(
                    f"generator {k} has length {len(row)}, ambient rank is {amb.dim}"
                )
        object.__setattr__(self, "ambient", amb)
        object.__setattr__(self, "generators", gens)


@dataclass(frozen=True)
class SnfResult:
    """``left * input * right == d`` with ``left``, ``right`` unimodular."""

    d: Matrix
    left: Matrix
    right: Matrix
    elementary_divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.elementary_divisors if x)


@dataclass(frozen=True)
class DiscriminantGroup:
    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for x in self.invariant_factors:
            out *= x
        return out

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{x}" for x in self.invariant_factors)


def determinant(g) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = [list(r) for r in as_matrix(g)]
    n = len(m)
    if m and len(m[0]) != n:
        raise ShapeError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pkk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pkk - m[i][k] * m[k][j]) // prev
        prev = pkk
    return sign * m[n - 1][n - 1] if n else 1


def is_positive_definite(g) -> bool:
    """Sylvester's criterion on exact leading principal minors."""
    m = _gram(g).entries
    return all(
        determinant([row[:k] for row in m[:k]]) > 0 for k in range(1, len(m) + 1)
    )


def _pick_pivot(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_abs = 0
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            v = row[j]
            if v and (best is None or abs(v) < best_abs):
                best, best_abs = (i, j), abs(v)
    return best


def smith_normal_form(m, ncols: int | None = None) -> SnfResult:
    """Smith normal form with transforms.

    Pivot rule: the nonzero entry of least absolute value in the active
    block, ties to the lowest (row, col). The output is therefore a
    deterministic function of the input.
    """
    mat = as_matrix(m, ncols)
    rows = len(mat)
    cols = _ncols(mat, ncols or 0)
    a = [list(r) for r in mat]
    left = [list(r) for r in identity(rows)]
    right = [list(r) for r in identity(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in right:
            r[dst] += q * r[src]

    t = 0
    while t < min(rows, cols):
        piv = _pick_pivot(a, t)
        if piv is None:
            break
        i, j = piv
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        p = a[t][t]
        clean = True
        for i in range(t + 1, rows):
            q = a[i][t] // p
            if q:
                add_row(i, t, -q)
            if a[i][t]:
                clean = False
        for j in range(t + 1, cols):
            q = a[t][j] // p
            if q:
                add_col(j, t, -q)
            if a[t][j]:
                clean = False
        if not clean:
            continue
        bad = next(
            (i for i in range(t + 1, rows) if any(a[i][j] % p for j in range(t + 1, cols))),
            None,
        )
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if p < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1

    d = tuple(tuple(r) for r in a)
    divisors = tuple(d[k][k] for k in range(min(rows, cols)))
    return SnfResult(
        d=d,
        left=tuple(tuple(r) for r in left),
        right=tuple(tuple(r) for r in right),
        elementary_divisors=divisors,
    )


def matrix_rank(m, ncols: int | None = None) -> int:
    return smith_normal_form(m, ncols).rank


def discriminant_group(g) -> DiscriminantGroup:
    gram = _gram(g)
    snf = smith_normal_form(gram.entries)
    if snf.rank < gram.dim:
        raise DegenerateError(f"form of rank {snf.rank} on a rank-{gram.dim} module")
    return DiscriminantGroup(tuple(x for x in snf.elementary_divisors if x != 1))


def left_kernel(m, nrows: int | None = None) -> Matrix:
    """Basis of {x : x * m == 0} over Z, saturated in Z^nrows.

    Rows ``r..`` of the left SNF transform; they are part of a unimodular
    basis, so the span is primitive.
    """
    mat = as_matrix(m)
    n = len(mat) if nrows is None else nrows
    if not mat or not mat[0]:
        return identity(n)
    snf = smith_normal_form(mat)
    return snf.left[snf.rank:]


def saturation(rows, n: int) -> Matrix:
    """Basis of (Q-span of rows) ∩ Z^n."""
    gens = as_matrix(rows, n)
    if not gens:
        return ()
    ortho = left_kernel(transpose(gens, n), n)
    if not ortho:
        return identity(n)
    return left_kernel(transpose(ortho, n), n)


def gram_from_generators(spec: SublatticeSpec) -> GramMatrix:
    a = spec.ambient.entries
    gens = spec.generators
    n = spec.ambient.dim
    ag = [[sum(a[i][j] * g[j] for j in range(n)) for i in range(n)] for g in gens]
    return GramMatrix(
        [[sum(u[i] * v[i] for i in range(n)) for v in ag] for u in gens]
    )


def orthogonal_complement(spec: SublatticeSpec) -> Matrix:
    """Saturated basis of the vectors pairing to zero with every generator.

    With a degenerate ambient the radical is part of the answer.
    """
    n = spec.ambient.dim
    if not spec.generators:
        return identity(n)
    a = spec.ambient.entries
    # column k of m is A * g_k^T
    m = tuple(
        tuple(sum(a[i][j] * g[j] for j in range(n)) for g in spec.generators)
        for i in range(n)
    )
    return left_kernel(m, n)


def is_primitive(spec: SublatticeSpec) -> bool:
    gens = spec.generators
    if not gens:
        return True
    snf = smith_normal_form(gens, spec.ambient.dim)
    if snf.rank < len(gens):
        raise RankError(f"{len(gens)} generators span a rank-{snf.rank} sublattice")
    return all(x == 1 for x in snf.elementary_divisors)


def direct_sum(g1, g2) -> GramMatrix:
    a, b = _gram(g1), _gram(g2)
    n1, n2 = a.dim, b.dim
    rows = [list(r) + [0] * n2 for r in a.entries]
    rows += [[0] * n1 + list(r) for r in b.entries]
    return GramMatrix(rows)
