"""Fixture constructors: companion matrices, the block pair rho(f), rho(g),
the 3x3 pair with A^2 = B^2 = AB = 0, random unimodular conjugation, and
random commuting families."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError, ShapeError
from .matrixcore import QMatrix, identity, inverse, mat_mul, poly_eval_matrix
from .polyring import UniPoly, is_separable


def companion(f: UniPoly) -> QMatrix:
    """Companion matrix: ones on the superdiagonal, last row ``-a_0 .. -a_{m-1}``."""
    if f.is_zero or f.degree < 1:
        raise InputError("companion matrix needs a polynomial of degree >= 1")
    if f.leading_coefficient != 1:
        raise InputError(f"companion matrix needs a monic polynomial, got {f}")
    m = f.degree
    rows = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m - 1):
        rows[i][i + 1] = Fraction(1)
    rows[m - 1] = [-c for c in f.coeffs[:m]]
    return QMatrix.from_rows(rows)


@dataclass(frozen=True)
class CounterexampleSpec:
    f: UniPoly
    g: UniPoly
    seed: Optional[int] = None

    def __post_init__(self):
        for name, p in (("f", self.f), ("g", self.g)):
            if p.is_zero or p.degree < 2:
                raise InputError(f"{name} must have degree > 1")
            if p.leading_coefficient != 1:
                raise InputError(f"{name} must be monic")
            if is_separable(p):
                raise InputError(f"{name} = {p} is separable; an inseparable polynomial is required")

    @property
    def n(self) -> int:
        return self.f.degree * self.g.degree

    @classmethod
    def from_json(cls, data) -> "CounterexampleSpec":
        if not isinstance(data, dict) or "f" not in data or "g" not in data:
            raise InputError("counterexample spec must be an object with 'f' and 'g'")
        seed = data.get("seed")
        if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
            raise InputError("seed must be an integer")
        return cls(UniPoly.from_json(data["f"], "x"), UniPoly.from_json(data["g"], "y"), seed)

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "g": self.g.to_json(), "seed": self.seed}


def rho_pair(spec: CounterexampleSpec) -> tuple[QMatrix, QMatrix]:
    """Block matrices rho(f) (k copies of C(f) on the diagonal) and rho(g)
    (block companion of g with m x m identity blocks)."""
    m, k = spec.f.degree, spec.g.degree
    n = m * k
    cf = companion(spec.f)
    rf = [[Fraction(0)] * n for _ in range(n)]
    for blk in range(k):
        for i in range(m):
            for j in range(m):
                rf[blk * m + i][blk * m + j] = cf[i, j]
    rg = [[Fraction(0)] * n for _ in range(n)]
    for blk in range(k - 1):
        for i in range(m):
            rg[blk * m + i][(blk + 1) * m + i] = Fraction(1)
    for j, b in enumerate(spec.g.coeffs[:k]):
        for i in range(m):
            rg[(k - 1) * m + i][j * m + i] = -b
    return QMatrix.from_rows(rf), QMatrix.from_rows(rg)


def frobenius_pair() -> tuple[QMatrix, QMatrix]:
    a = QMatrix.from_rows([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    b = QMatrix.from_rows([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    return a, b


def unimodular_matrix(n: int, rng: random.Random, spread: int = 2) -> QMatrix:
    """``L @ U`` with unit triangular integer factors, so ``det = 1``."""
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    upper = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i > j:
                lower[i][j] = Fraction(rng.randint(-spread, spread))
            elif i < j:
                upper[i][j] = Fraction(rng.randint(-spread, spread))
    return mat_mul(QMatrix.from_rows(lower), QMatrix.from_rows(upper))


def conjugate_all(ms: Sequence[QMatrix], s: QMatrix) -> list[QMatrix]:
    s_inv = inverse(s)
    return [s @ m @ s_inv for m in ms]


def random_conjugate(pair: tuple[QMatrix, QMatrix],
                     seed: int) -> tuple[QMatrix, QMatrix, QMatrix]:
    a, b = pair
    if not (a.is_square and b.is_square and a.rows == b.rows):
        raise ShapeError("conjugation needs two square matrices of the same size")
    s = unimodular_matrix(a.rows, random.Random(seed))
    ca, cb = conjugate_all([a, b], s)
    return ca, cb, s


def random_inseparable_poly(rng: random.Random, degree: int, root_range: int = 3,
                            var: str = "x") -> UniPoly:
    """Monic polynomial with small integer roots and at least one repeated root."""
    if degree < 2:
        raise InputError("an inseparable polynomial has degree >= 2")
    distinct = rng.randint(1, degree - 1)
    roots = rng.sample(range(-root_range, root_range + 1), distinct)
    mults = [1] * distinct
    mults[0] = 2
    for _ in range(degree - sum(mults)):
        mults[rng.randrange(distinct)] += 1
    return UniPoly.from_roots([r for r, m in zip(roots, mults) for _ in range(m)], var)


def random_counterexample(rng: random.Random, max_degree: int = 3) -> CounterexampleSpec:
    f = random_inseparable_poly(rng, rng.randint(2, max_degree), var="x")
    g = random_inseparable_poly(rng, rng.randint(2, max_degree), var="y")
    return CounterexampleSpec(f, g, rng.randint(0, 10**6))


def _block_diag(blocks: Sequence[QMatrix]) -> QMatrix:
    n = sum(b.rows for b in blocks)
    rows = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[off + i][off + j] = b[i, j]
        off += b.rows
    return QMatrix.from_rows(rows)


def random_commuting_family(rng: random.Random, n: int, m: int,
                            allow_defective: bool = True) -> list[QMatrix]:
    """``m`` commuting n x n matrices, at most one of them non-diagonalizable.

    The space is cut into blocks. The possibly defective member acts on each
    block as a polynomial in a companion matrix with small integer roots; the
    other members act on each block as scalars, except on blocks where the
    defective member is itself diagonal, where they may be any diagonal. The
    whole family is then conjugated by a random unimodular matrix.
    """
    sizes = []
    left = n
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    special_blocks = []
    diagonal_block = []
    for s in sizes:
        if allow_defective and s > 1 and rng.random() < 0.7:
            roots = [rng.randint(-3, 3) for _ in range(s)]
            cyc = companion(UniPoly.from_roots(roots))
            p = UniPoly(tuple(Fraction(rng.randint(-2, 2)) for _ in range(rng.randint(1, s))) + (Fraction(1),))
            special_blocks.append(poly_eval_matrix(p, cyc))
            diagonal_block.append(False)
        else:
            special_blocks.append(QMatrix.diag([rng.randint(-4, 4) for _ in range(s)]))
            diagonal_block.append(True)
    special = _block_diag(special_blocks)
    family = []
    for _ in range(m - 1):
        blocks = []
        for s, diag in zip(sizes, diagonal_block):
            if diag:
                blocks.append(QMatrix.diag([rng.randint(-4, 4) for _ in range(s)]))
            else:
                blocks.append(QMatrix.diag([rng.randint(-4, 4)] * s))
        family.append(_block_diag(blocks))
    family.insert(rng.randrange(m), special)
    s = unimodular_matrix(n, rng)
    return conjugate_all(family, s)
