import random
from fractions import Fraction

import pytest

from primelem.engine import Verdict, analyze
from primelem.errors import InputError
from primelem.generators import (
    CounterexampleSpec,
    companion,
    frobenius_pair,
    random_conjugate,
    random_counterexample,
    random_inseparable_poly,
    rho_pair,
    unimodular_matrix,
)
from primelem.matrixcore import QMatrix, identity, inverse, min_poly_matrix
from primelem.polyring import UniPoly, is_separable
from primelem.selftest import RHO_F, RHO_G
from primelem.subalgebra import commute_check, span_dimension

M = QMatrix.from_rows
F_EX = UniPoly((2, -3, 0, 1), "x")
G_EX = UniPoly((1, 2, 1), "y")


def det(m):
    # product of pivots of plain elimination, independent of the rref path
    a = [[Fraction(x) for x in m.row(i)] for i in range(m.rows)]
    n, d = m.rows, Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            d = -d
        d *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return d


class TestCompanion:
    def test_example_block(self):
        assert companion(F_EX) == M([[0, 1, 0], [0, 0, 1], [-2, 3, 0]])

    def test_linear(self):
        assert companion(UniPoly((-5, 1))) == M([[5]])

    def test_square(self):
        assert companion(G_EX) == M([[0, 1], [-1, -2]])

    def test_non_monic(self):
        with pytest.raises(InputError):
            companion(UniPoly((1, 2)))

    def test_min_poly_is_input(self):
        rng = random.Random(5)
        for _ in range(50):
            deg = rng.randint(1, 6)
            f = UniPoly(tuple(Fraction(rng.randint(-4, 4), rng.choice((1, 2))) for _ in range(deg)) + (1,), "t")
            assert min_poly_matrix(companion(f)) == f


class TestRhoPair:
    def test_printed_matrices(self):
        a, b = rho_pair(CounterexampleSpec(F_EX, G_EX))
        assert a == M(RHO_F)
        assert b == M(RHO_G)

    def test_x_squared_y_squared(self):
        sq = UniPoly((0, 0, 1))
        a, b = rho_pair(CounterexampleSpec(sq, sq.with_var("y")))
        assert a == M([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
        assert b == M([[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]])

    def test_separable_rejected(self):
        with pytest.raises(InputError):
            CounterexampleSpec(UniPoly((-1, 0, 1)), G_EX)

    def test_degree_one_rejected(self):
        with pytest.raises(InputError):
            CounterexampleSpec(UniPoly((0, 1)), G_EX)

    def test_random_pairs(self):
        rng = random.Random(6)
        for _ in range(15):
            spec = random_counterexample(rng)
            a, b = rho_pair(spec)
            assert commute_check([a, b])
            assert min_poly_matrix(a) == spec.f.with_var("t")
            assert min_poly_matrix(b) == spec.g.with_var("t")
            assert span_dimension([a, b])[0] == spec.n

    def test_random_pairs_classified_absolute(self):
        rng = random.Random(16)
        for _ in range(8):
            spec = random_counterexample(rng)
            a, b, _ = random_conjugate(rho_pair(spec), spec.seed)
            assert analyze([a, b]).verdict is Verdict.NEGATIVE_ABSOLUTE

    def test_spec_json(self):
        spec = CounterexampleSpec.from_json({"f": ["2", "-3", "0", "1"], "g": ["1", "2", "1"], "seed": 3})
        assert spec.f == F_EX and spec.g == G_EX and spec.seed == 3
        assert spec.to_json() == {"f": ["2", "-3", "0", "1"], "g": ["1", "2", "1"], "seed": 3}


class TestFrobeniusPair:
    def test_entries(self):
        a, b = frobenius_pair()
        assert [(i, j) for i in range(3) for j in range(3) if a[i, j]] == [(0, 1)] and a[0, 1] == 1
        assert [(i, j) for i in range(3) for j in range(3) if b[i, j]] == [(0, 2)] and b[0, 2] == 1

    def test_span(self):
        assert span_dimension(frobenius_pair())[0] == 3


class TestConjugation:
    def test_unit_determinant_and_inverse(self):
        rng = random.Random(2)
        for _ in range(30):
            n = rng.randint(1, 6)
            s = unimodular_matrix(n, rng)
            assert abs(det(s)) == 1
            assert inverse(s) @ s == identity(n)

    def test_preserves_invariants(self):
        a, b = rho_pair(CounterexampleSpec(F_EX, G_EX))
        ca, cb, s = random_conjugate((a, b), 123)
        assert commute_check([ca, cb])
        assert min_poly_matrix(ca) == F_EX.with_var("t")
        assert min_poly_matrix(cb) == G_EX.with_var("t")
        assert span_dimension([ca, cb])[0] == 6
        assert s @ a == ca @ s

    def test_identity_conjugation(self):
        a, b = frobenius_pair()
        i3 = identity(3)
        assert (i3 @ a @ inverse(i3), i3 @ b @ inverse(i3)) == (a, b)

    def test_verdict_unchanged(self):
        ca, cb, _ = random_conjugate(rho_pair(CounterexampleSpec(F_EX, G_EX)), 99)
        assert analyze([ca, cb]).verdict is Verdict.NEGATIVE_ABSOLUTE


class TestInseparableSampler:
    def test_always_inseparable(self):
        rng = random.Random(4)
        for _ in range(50):
            d = rng.randint(2, 6)
            f = random_inseparable_poly(rng, d)
            assert f.degree == d and f.leading_coefficient == 1 and not is_separable(f)
