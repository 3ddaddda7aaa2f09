"""Unital subalgebras Q[A1, ..., Am] generated by commuting matrices."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError, ShapeError
from .matrixcore import (
    Echelon,
    QMatrix,
    identity,
    mat_scale,
    min_poly_matrix,
    solve_linear,
)
from .polyring import UniPoly

#: Random coefficients for Monte-Carlo elements are drawn from this range.
COEFF_RANGE = (-10, 10)


@dataclass(frozen=True)
class SpanBasis:
    generator_matrices: tuple[QMatrix, ...]
    basis: tuple[QMatrix, ...]
    exponents: tuple[tuple[int, ...], ...]
    degree_bounds: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _check_square_family(ms: Sequence[QMatrix]) -> int:
    if not ms:
        raise InputError("need at least one matrix")
    n = ms[0].rows
    for m in ms:
        if not m.is_square or m.rows != n:
            raise ShapeError("all matrices must be square of the same size")
    return n


def commute_check(ms: Sequence[QMatrix]) -> bool:
    _check_square_family(ms)
    return all(a @ b == b @ a for a, b in itertools.combinations(ms, 2))


def _require_commuting(ms: Sequence[QMatrix]):
    if not commute_check(ms):
        raise InputError("matrices do not commute")


def span_dimension(ms: Sequence[QMatrix]) -> tuple[int, SpanBasis]:
    """Dimension of Q[A1..Am] from the rank of its monomials ``A^i``, ``i_k < deg mu_k``."""
    _require_commuting(ms)
    n = ms[0].rows
    bounds = tuple(min_poly_matrix(m).degree for m in ms)
    pow_tables = []
    for m, d in zip(ms, bounds):
        table = [identity(n)]
        for _ in range(1, d):
            table.append(table[-1] @ m)
        pow_tables.append(table)
    ech = Echelon()
    basis, exps = [], []
    for e in itertools.product(*(range(d) for d in bounds)):
        prod = identity(n)
        for table, k in zip(pow_tables, e):
            if k:
                prod = prod @ table[k]
        if ech.offer(prod.entries) is None:
            basis.append(prod)
            exps.append(e)
    return len(basis), SpanBasis(tuple(ms), tuple(basis), tuple(exps), bounds)


def express_as_polynomial(target: QMatrix, source: QMatrix) -> Optional[UniPoly]:
    """Polynomial ``p`` with ``p(source) == target``, or ``None`` if none exists.

    ``p`` has degree below ``deg mu_source``; since the powers
    ``I, S, ..., S^(d-1)`` are independent it is unique.
    """
    _check_square_family([target, source])
    d = min_poly_matrix(source).degree
    powers = [identity(source.rows)]
    for _ in range(1, d):
        powers.append(powers[-1] @ source)
    nn = source.rows * source.rows
    system = QMatrix(nn, d, tuple(p.entries[r] for r in range(nn) for p in powers))
    sol = solve_linear(system, target.entries)
    if sol is None:
        return None
    return UniPoly(sol, "t")


def random_element(basis: SpanBasis, rng: random.Random) -> QMatrix:
    lo, hi = COEFF_RANGE
    n = basis.basis[0].rows
    out = QMatrix.zeros(n)
    for b in basis.basis:
        out = out + mat_scale(rng.randint(lo, hi), b)
    return out


def monte_carlo_search(ms: Sequence[QMatrix], trials: int,
                       seed: int) -> tuple[int, Optional[QMatrix]]:
    """Best minimal-polynomial degree over random elements, and its witness.

    Stops early once the degree reaches the algebra's dimension, which is an
    upper bound; the witness is then a primitive element.
    """
    if trials < 1:
        raise InputError("trials must be >= 1")
    dim, basis = span_dimension(ms)
    rng = random.Random(seed)
    best, witness = 0, None
    for _ in range(trials):
        c = random_element(basis, rng)
        d = min_poly_matrix(c).degree
        if d > best:
            best, witness = d, c
        if best == dim:
            break
    return best, witness


def monte_carlo_codim(ms: Sequence[QMatrix], trials: int, seed: int) -> int:
    """Lower bound on codim Q[A1..Am]; exact with probability 1 per trial."""
    return monte_carlo_search(ms, trials, seed)[0]
