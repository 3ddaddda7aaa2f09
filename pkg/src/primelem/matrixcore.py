"""Dense exact matrices over the rationals.

Everything here is exact; there is no floating point. Minimal polynomials
are found from the first linear dependence among vectorized powers
``I, M, M^2, ...`` using an incremental echelon form, so the characteristic
polynomial is never formed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InputError, ShapeError
from .polyring import UniPoly, format_rational, is_separable, parse_rational


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ShapeError("matrices must have at least one row and one column")
        entries = tuple(Fraction(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ShapeError(f"expected {self.rows * self.cols} entries, got {len(entries)}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        if not rows or not rows[0]:
            raise ShapeError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), width, tuple(Fraction(e) for r in rows for e in r))

    @classmethod
    def zeros(cls, rows: int, cols: Optional[int] = None) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence) -> "QMatrix":
        n = len(values)
        out = [Fraction(0)] * (n * n)
        for i, v in enumerate(values):
            out[i * n + i] = Fraction(v)
        return cls(n, n, tuple(out))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_add(self, mat_scale(-1, other))

    def __neg__(self):
        return mat_scale(-1, self)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __mul__(self, scalar):
        if isinstance(scalar, QMatrix):
            return NotImplemented
        return mat_scale(scalar, self)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_rational(e) for e in self.row(i)] for i in range(self.rows)],
        }

    @classmethod
    def from_json(cls, data) -> "QMatrix":
        if not isinstance(data, dict) or "entries" not in data:
            raise InputError("matrix JSON must be an object with 'entries'")
        raw = data["entries"]
        if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
            raise InputError("matrix 'entries' must be a list of rows")
        m = cls.from_rows([[parse_rational(e) for e in r] for r in raw])
        if data.get("rows", m.rows) != m.rows or data.get("cols", m.cols) != m.cols:
            raise ShapeError("declared rows/cols disagree with entries")
        return m

    def __str__(self):
        cells = [[format_rational(e) for e in self.row(i)] for i in range(self.rows)]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def identity(n: int) -> QMatrix:
    return QMatrix.diag([1] * n)


def mat_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    bcols = [b.entries[j::b.cols] for j in range(b.cols)]
    for i in range(a.rows):
        r = a.row(i)
        for col in bcols:
            out.append(sum((x * y for x, y in zip(r, col) if x and y), Fraction(0)))
    return QMatrix(a.rows, b.cols, tuple(out))


def mat_add(a: QMatrix, b: QMatrix) -> QMatrix:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise ShapeError("cannot add matrices of different shapes")
    return QMatrix(a.rows, a.cols, tuple(x + y for x, y in zip(a.entries, b.entries)))


def mat_scale(c, a: QMatrix) -> QMatrix:
    c = Fraction(c)
    return QMatrix(a.rows, a.cols, tuple(c * x for x in a.entries))


def mat_pow(a: QMatrix, e: int) -> QMatrix:
    if not a.is_square:
        raise ShapeError("power of a non-square matrix")
    out = identity(a.rows)
    for _ in range(e):
        out = out @ a
    return out


def poly_eval_matrix(p: UniPoly, m: QMatrix) -> QMatrix:
    """``p(M)`` by Horner's rule."""
    if not m.is_square:
        raise ShapeError("polynomial of a non-square matrix")
    n = m.rows
    acc = QMatrix.zeros(n)
    eye = identity(n)
    for c in reversed(p.coeffs):
        acc = acc @ m + mat_scale(c, eye)
    return acc


def rref(m: QMatrix) -> tuple[QMatrix, int, tuple[int, ...]]:
    """Reduced row echelon form, rank, and pivot columns."""
    a = m.to_rows()
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return QMatrix.from_rows(a), r, tuple(pivots)


def solve_linear(a: QMatrix, b: Sequence) -> Optional[tuple[Fraction, ...]]:
    """One exact solution of ``a v = b``, or ``None`` if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(b) != a.rows:
        raise ShapeError(f"right-hand side has {len(b)} entries, matrix has {a.rows} rows")
    aug = QMatrix(a.rows, a.cols + 1,
                  tuple(x for i in range(a.rows) for x in (*a.row(i), Fraction(b[i]))))
    red, rank, pivots = rref(aug)
    if pivots and pivots[-1] == a.cols:
        return None
    sol = [Fraction(0)] * a.cols
    for r, c in enumerate(pivots):
        sol[c] = red[r, a.cols]
    return tuple(sol)


def inverse(m: QMatrix) -> QMatrix:
    if not m.is_square:
        raise ShapeError("inverse of a non-square matrix")
    n = m.rows
    aug = QMatrix(n, 2 * n, tuple(x for i in range(n)
                                  for x in (*m.row(i), *identity(n).row(i))))
    red, _, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)):
        raise InputError("matrix is singular")
    return QMatrix(n, n, tuple(red[i, n + j] for i in range(n) for j in range(n)))


class Echelon:
    """Incremental echelon basis of a growing set of vectors.

    Optionally tracks, for every stored row, its expression in terms of the
    vectors offered so far; this is what turns a dependence into the
    coefficients of a minimal polynomial.
    """

    def __init__(self, track: bool = False):
        self._rows: list[tuple[int, list[Fraction], Optional[list[Fraction]]]] = []
        self._track = track
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, v: list[Fraction], combo):
        for pivot, row, rcombo in self._rows:
            f = v[pivot]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
                if combo is not None:
                    combo = [x - f * y for x, y in zip(combo, rcombo)]
        return v, combo

    def offer(self, vector: Sequence[Fraction]):
        """Insert ``vector``. Return ``None`` if it was independent.

        If it was dependent, return the coefficient list ``w`` (over all
        vectors offered so far, this one included with coefficient 1) such
        that ``sum(w[i] * v_i) = 0``; without tracking, return ``True``.
        """
        idx = self._count
        self._count += 1
        combo = None
        if self._track:
            combo = [Fraction(0)] * self._count
            combo[idx] = Fraction(1)
            for _, _, rc in self._rows:
                rc.append(Fraction(0))
        v, combo = self._reduce([Fraction(x) for x in vector], combo)
        pivot = next((i for i, x in enumerate(v) if x != 0), None)
        if pivot is None:
            return combo if self._track else True
        inv = 1 / v[pivot]
        v = [x * inv for x in v]
        if combo is not None:
            combo = [x * inv for x in combo]
        self._rows.append((pivot, v, combo))
        return None


def minimal_dependency(vectors: Iterable[Sequence[Fraction]]) -> UniPoly:
    """Monic polynomial from the first linear dependence in ``v0, v1, ...``.

    The vectors are read as ``vec(e**k)``; the result ``p`` is the least
    degree monic polynomial with ``sum(p_k * v_k) = 0``.
    """
    ech = Echelon(track=True)
    for v in vectors:
        dep = ech.offer(v)
        if dep is not None:
            return UniPoly(tuple(dep), "t")
    raise InputError("vector sequence ended before a dependence was found")


def _powers(m: QMatrix) -> Iterator[tuple[Fraction, ...]]:
    p = identity(m.rows)
    while True:
        yield p.entries
        p = p @ m


def min_poly_matrix(m: QMatrix) -> UniPoly:
    """Minimal polynomial of a square matrix, in the variable ``t``."""
    if not m.is_square:
        raise ShapeError("minimal polynomial of a non-square matrix")
    return minimal_dependency(_powers(m))


def is_diagonalizable(m: QMatrix) -> bool:
    """Diagonalizable over the algebraic closure iff the minimal polynomial is separable."""
    return is_separable(min_poly_matrix(m))
