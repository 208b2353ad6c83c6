"""Exact integer linear algebra.

Vectors are plain tuples of Python ints. Matrices are :class:`IntMat`, an
immutable row-major container that keeps its shape even when it has no rows
or no columns (a 2x0 matrix is a legitimate map Z^0 -> Z^2).

Everything here is exact: Python ints never overflow, and the rational helpers
use :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple  # tuple[int, ...]


_IDENTITIES: dict = {}


class LatticeError(ValueError):
    """Raised on shape mismatches or non-unimodular input."""


@dataclass(frozen=True)
class IntMat:
    """An immutable integer matrix with an explicit shape."""

    rows: int
    cols: int
    data: tuple = field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise LatticeError("matrix dimensions must be non-negative")
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise LatticeError(
                f"entry layout does not match shape {self.rows}x{self.cols}"
            )

    @classmethod
    def _trusted(cls, rows: int, cols: int, data: tuple) -> "IntMat":
        # internal results whose layout is right by construction skip the check
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "data", data)
        return m

    @classmethod
    def of(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "IntMat":
        """Build from nested rows. ``cols`` is only needed for a 0-row matrix."""
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            if not data:
                raise LatticeError("cannot infer column count of an empty matrix")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMat":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMat":
        if n not in _IDENTITIES:
            _IDENTITIES[n] = cls._trusted(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
        return _IDENTITIES[n]

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMat":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        return cls(
            rows,
            cols,
            tuple(
                tuple(values[i] if i == j and i < len(values) else 0 for j in range(cols))
                for i in range(rows)
            ),
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMat":
        if rows is None:
            if not columns:
                raise LatticeError("cannot infer row count from no columns")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise LatticeError("columns have inconsistent lengths")
        return cls._trusted(rows, len(columns), tuple(tuple(int(c[i]) for c in columns) for i in range(rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> Vec:
        return self.data[i]

    def column(self, j: int) -> Vec:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    @property
    def T(self) -> "IntMat":
        return IntMat(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other):
        if self.rows == 2 and self.cols == 2:
            # the 2x2 case dominates every computation on torus fibres
            (a, b), (c, d) = self.data
            if isinstance(other, IntMat):
                if other.rows == 2 and other.cols == 2:
                    (e, f), (g, h) = other.data
                    return IntMat._trusted(2, 2, ((a * e + b * g, a * f + b * h),
                                                  (c * e + d * g, c * f + d * h)))
            else:
                vec = tuple(other)
                if len(vec) == 2:
                    x, y = vec
                    return (a * x + b * y, c * x + d * y)
        if isinstance(other, IntMat):
            if self.cols != other.rows:
                raise LatticeError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = tuple(zip(*other.data)) if other.rows else ((),) * other.cols
            return IntMat._trusted(
                self.rows,
                other.cols,
                tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in ocols) for r in self.data),
            )
        vec = tuple(other)
        if len(vec) != self.cols:
            raise LatticeError(f"cannot apply {self.shape} matrix to a vector of length {len(vec)}")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.data)

    def __add__(self, other: "IntMat") -> "IntMat":
        if self.shape != other.shape:
            raise LatticeError("shape mismatch in addition")
        return IntMat._trusted(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "IntMat":
        return IntMat._trusted(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.data))

    def __sub__(self, other: "IntMat") -> "IntMat":
        return self + (-other)

    def scale(self, k: int) -> "IntMat":
        return IntMat(self.rows, self.cols, tuple(tuple(k * a for a in r) for r in self.data))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.data for a in r)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.data) + "]"


def hstack(*mats: IntMat) -> IntMat:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise LatticeError("hstack needs equal row counts")
    return IntMat(rows, sum(m.cols for m in mats),
                  tuple(sum((m.data[i] for m in mats), ()) for i in range(rows)))


def block_diag(*mats: IntMat) -> IntMat:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            out[r0 + i][c0:c0 + m.cols] = m.data[i]
        r0 += m.rows
        c0 += m.cols
    return IntMat(rows, cols, tuple(tuple(r) for r in out))


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    """Determinant of the 2x2 matrix with columns ``u`` and ``v``."""
    return u[0] * v[1] - u[1] * v[0]


def vector_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def det(A: IntMat) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise LatticeError(f"determinant of a non-square {A.rows}x{A.cols} matrix")
    n = A.rows
    if n == 0:
        return 1
    if n == 2:
        (a, b), (c, d) = A.data
        return a * d - b * c
    M = [list(r) for r in A.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ A @ right`` is diagonal with entries ``diag`` (zeros padded)."""

    left: IntMat
    diag: tuple
    right: IntMat

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)

    def diagonal_matrix(self) -> IntMat:
        return IntMat.diag(list(self.diag), self.left.rows, self.right.rows)


def _pivot(M: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, len(M)):
        for j in range(t, len(M[0])):
            a = abs(M[i][j])
            if a and (best is None or a < best[0]):
                best = (a, i, j)
    return None if best is None else best[1:]


def smith_normal_form(A: IntMat) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots are chosen by smallest absolute value, ties broken by the lowest
    row-major position, so the transforms are deterministic.
    """
    m, n = A.shape
    M = [list(r) for r in A.data]
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        M[i], M[k] = M[k], M[i]
        L[i], L[k] = L[k], L[i]

    def swap_cols(j, k):
        for row in M:
            row[j], row[k] = row[k], row[j]
        for row in R:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        L[dst] = [a + q * b for a, b in zip(L[dst], L[src])]

    def add_col(dst, src, q):
        for row in M:
            row[dst] += q * row[src]
        for row in R:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            piv = _pivot(M, t)
            if piv is None:
                break
            i, j = piv
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = M[t][t]
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
            if any(M[i][t] for i in range(t + 1, m)) or any(M[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            L[t] = [-a for a in L[t]]
        if _pivot(M, t) is None:
            break

    diag = tuple(M[t][t] for t in range(min(m, n)))
    return SmithDecomposition(
        IntMat(m, m, tuple(tuple(r) for r in L)),
        diag,
        IntMat(n, n, tuple(tuple(r) for r in R)),
    )


def rank(A: IntMat) -> int:
    return smith_normal_form(A).rank


def is_primitive_tuple(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors span a rank-k direct summand of Z^n."""
    if not vectors:
        return True
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise LatticeError("vectors in a tuple must share one dimension")
    k = len(vectors)
    if k > n:
        return False
    diag = smith_normal_form(IntMat.from_columns(vectors, rows=n)).diag
    return len(diag) == k and all(d == 1 for d in diag)


def complete_to_basis(vectors: Sequence[Sequence[int]], n: int | None = None) -> IntMat:
    """Extend a primitive tuple to a basis of Z^n; the inputs are the first columns."""
    if n is None:
        n = len(vectors[0])
    if not is_primitive_tuple(vectors):
        raise LatticeError("only a primitive tuple extends to a basis")
    k = len(vectors)
    if k == 0:
        return IntMat.identity(n)
    snf = smith_normal_form(IntMat.from_columns(vectors, rows=n))
    left_inv = unimodular_inverse(snf.left)
    extra = [left_inv.column(j) for j in range(k, n)]
    return IntMat.from_columns([tuple(v) for v in vectors] + extra, rows=n)


def unimodular_inverse(A: IntMat) -> IntMat:
    d = det(A)
    if abs(d) != 1:
        raise LatticeError(f"matrix is not unimodular (det = {d})")
    n = A.rows
    if n == 2:
        (a, b), (c, e) = A.data
        return IntMat._trusted(2, 2, ((e * d, -b * d), (-c * d, a * d)))
    inv = rational_inverse(A)
    return IntMat(n, n, tuple(tuple(int(x) for x in r) for r in inv))


def rational_inverse(A: IntMat) -> list[list[Fraction]]:
    n = A.rows
    M = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A.data)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise LatticeError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [r[n:] for r in M]


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus cyclic factors Z/d, with d_1 | d_2 | ... and every d > 1."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise LatticeError("free rank must be non-negative")
        if any(d <= 1 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            raise LatticeError(f"torsion {t} is not an invariant-factor chain")

    @classmethod
    def from_cyclic(cls, free_rank: int, orders: Iterable[int]) -> "AbelianGroup":
        """Normalize an arbitrary list of cyclic orders into invariant factors."""
        orders = [abs(o) for o in orders if abs(o) != 1]
        free_rank += sum(1 for o in orders if o == 0)
        orders = [o for o in orders if o]
        diag = smith_normal_form(IntMat.diag(orders)).diag if orders else ()
        return cls(free_rank, tuple(d for d in diag if d > 1))

    def __add__(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_cyclic(self.free_rank + other.free_rank, self.torsion + other.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def cokernel(A: IntMat) -> AbelianGroup:
    """Z^rows / image(A)."""
    snf = smith_normal_form(A)
    return AbelianGroup(A.rows - snf.rank, tuple(d for d in snf.diag if d > 1))


def integer_solve(A: IntMat, b: Sequence[int]) -> Vec | None:
    """Some integer ``x`` with ``A @ x == b``, or ``None`` when there is none."""
    b = tuple(b)
    if len(b) != A.rows:
        raise LatticeError(f"right-hand side has length {len(b)}, expected {A.rows}")
    snf = smith_normal_form(A)
    c = snf.left @ b
    y = [0] * A.cols
    for i, ci in enumerate(c):
        d = snf.diag[i] if i < len(snf.diag) else 0
        if d == 0:
            if ci != 0:
                return None
        elif ci % d:
            return None
        else:
            y[i] = ci // d
    return snf.right @ y


def integer_kernel(A: IntMat) -> list[Vec]:
    """A Z-basis of {x : A x = 0}."""
    snf = smith_normal_form(A)
    return [snf.right.column(j) for j in range(snf.rank, A.cols)]


def rational_kernel(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the null space over Q via reduced row echelon form."""
    M = [[Fraction(x) for x in r] for r in rows]
    ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][free]
        basis.append(v)
    return basis
