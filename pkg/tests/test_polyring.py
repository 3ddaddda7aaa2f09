import random
from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import gauss_det, sum_multiset, sylvester_rows, sympy_poly, to_fractions
from primelem import polyring
from primelem.errors import (
    ContractViolationError,
    DegenerateInputError,
    InputError,
    InvalidCoefficientError,
)
from primelem.polyring import (
    DEG_ZERO,
    UniPoly,
    derivative,
    divides,
    interpolate,
    is_separable,
    parse_rational,
    poly_divmod,
    poly_gcd,
    resultant,
    squarefree_part,
    values_poly,
)
from strategies import distinct_roots, polys


def P(*coeffs, var="x"):
    return UniPoly(tuple(Fraction(c) for c in coeffs), var)


def T(*coeffs):
    return P(*coeffs, var="t")


class TestUniPoly:
    def test_zero_polynomial(self):
        z = UniPoly(())
        assert z.is_zero and z.degree == DEG_ZERO
        assert UniPoly((0, 0, 0)).coeffs == ()

    def test_degree_is_length_minus_one(self):
        assert P(1, 2, 0, 3).degree == 3
        assert P(1, 2, 0, 0).degree == 1

    def test_arithmetic(self):
        f = P(1, 1)
        assert f * f == P(1, 2, 1)
        assert f ** 3 == P(1, 3, 3, 1)
        assert f - f == UniPoly(())
        assert 2 * f == P(2, 2)
        assert f + 1 == P(2, 1)

    def test_divmod(self):
        q, r = poly_divmod(P(0, 0, 0, 1), P(2, -3, 0, 1))
        assert q == P(1) and r == P(-2, 3)

    def test_divmod_by_zero(self):
        with pytest.raises(DegenerateInputError):
            poly_divmod(P(1), UniPoly(()))

    def test_evaluation_and_compose(self):
        f = P(2, -3, 0, 1)
        assert f(1) == 0 and f(-2) == 0 and f(0) == 2
        assert f.compose(P(1, 1)) == P(0, 0, 3, 1)

    def test_from_roots(self):
        assert UniPoly.from_roots([1, 1, -2]) == P(2, -3, 0, 1)

    @given(polys(max_degree=5), polys(max_degree=3, nonconstant=True))
    def test_division_identity(self, f, g):
        q, r = poly_divmod(f, g)
        assert q * g + r == f
        assert r.is_zero or r.degree < g.degree


class TestJson:
    def test_round_trip(self):
        f = P(2, -3, 0, 1)
        assert f.to_json() == ["2", "-3", "0", "1"]
        assert UniPoly.from_json(["2", "-3", "0", "1"]) == f

    def test_rational_strings(self):
        assert UniPoly.from_json(["1/2", "-3/4"]).coeffs == (Fraction(1, 2), Fraction(-3, 4))
        assert parse_rational("6/4") == Fraction(3, 2)

    @pytest.mark.parametrize("bad", ["1.5", "abc", "1/0", 1.5, True, None])
    def test_inexact_or_malformed_rejected(self, bad):
        with pytest.raises(InputError):
            parse_rational(bad)


class TestGcd:
    def test_examples(self):
        assert poly_gcd(P(1, 2, 1), P(2, 2)) == P(1, 1)
        assert poly_gcd(P(-6, 3), UniPoly(())) == P(-2, 1)
        assert poly_gcd(P(-1, 0, 1), P(-1, 1)) == P(-1, 1)

    def test_first_example_by_division(self):
        g = poly_gcd(P(1, 2, 1), P(2, 2))
        assert divides(g, P(1, 2, 1)) and divides(g, P(2, 2))

    @given(polys(max_degree=4), polys(max_degree=4))
    def test_gcd_divides_both(self, f, g):
        d = poly_gcd(f, g)
        if f.is_zero and g.is_zero:
            assert d.is_zero
            return
        assert d.leading_coefficient == 1
        assert divides(d, f) and divides(d, g)

    @given(distinct_roots(max_size=3), distinct_roots(max_size=3), distinct_roots(max_size=3))
    def test_common_factor_recovered(self, r1, r2, r3):
        common = UniPoly.from_roots(r1)
        f = common * UniPoly.from_roots(r2)
        g = common * UniPoly.from_roots(r3)
        d = poly_gcd(f, g)
        # every common divisor divides the gcd
        assert divides(common, d)
        shared = Counter(r1 + r2) & Counter(r1 + r3)
        assert d == UniPoly.from_roots(list(shared.elements()))

    @given(polys(max_degree=4), polys(max_degree=4))
    def test_matches_sympy(self, f, g):
        if f.is_zero or g.is_zero:
            return
        expected = sympy.gcd(sympy_poly(f.coeffs), sympy_poly(g.coeffs)).monic()
        assert poly_gcd(f, g).coeffs == to_fractions(expected)

    def test_large_coefficients_need_several_primes(self):
        # gcd coefficients far beyond one 61-bit modulus
        rng = random.Random(3)
        common = P(*(Fraction(rng.randint(-10**40, 10**40), rng.randint(1, 10**9)) for _ in range(4)), 1)
        f = common * P(*(rng.randint(-10**30, 10**30) for _ in range(6)), 1)
        g = common * P(*(rng.randint(-10**30, 10**30) for _ in range(5)), 3)
        expected = sympy.gcd(sympy_poly(f.coeffs), sympy_poly(g.coeffs)).monic()
        assert poly_gcd(f, g).coeffs == to_fractions(expected)
        assert divides(common.monic(), poly_gcd(f, g))

    def test_leading_coefficient_divisible_by_first_prime(self):
        p0 = polyring._prime(0)
        f = P(1, 2, 1) * P(0, p0)
        g = P(1, 1) * P(5, p0)
        assert poly_gcd(f, g) == P(1, 1)

    def test_integer_fallback_agrees(self, monkeypatch):
        rng = random.Random(4)
        cases = []
        for _ in range(20):
            c = P(*(rng.randint(-5, 5) for _ in range(rng.randint(1, 3))), 1)
            f = c * P(*(rng.randint(-5, 5) for _ in range(3)), 1)
            g = c * P(*(rng.randint(-5, 5) for _ in range(2)), 2)
            cases.append((f, g, poly_gcd(f, g)))
        monkeypatch.setattr(polyring, "_MODULAR_PRIME_LIMIT", 0)
        for f, g, d in cases:
            assert poly_gcd(f, g) == d

    def test_degree_100_separability(self):
        # 100 distinct integer roots, then one of them doubled
        roots = list(range(-50, 50))
        f = UniPoly.from_roots(roots)
        assert is_separable(f)
        assert not is_separable(f * P(-7, 1))


class TestRationalReconstruction:
    @given(st.fractions(max_denominator=10**6).filter(lambda q: abs(q.numerator) < 10**6))
    def test_round_trip(self, q):
        m = polyring._prime(0) * polyring._prime(1)
        u = q.numerator * pow(q.denominator, -1, m) % m
        assert polyring._rational_reconstruct(u, m) == q

    def test_primes_are_prime(self):
        for i in range(5):
            p = polyring._prime(i)
            assert sympy.isprime(p) and p < 2**61


class TestDerivative:
    def test_examples(self):
        assert derivative(P(2, -3, 0, 1)) == P(-3, 0, 3)
        assert derivative(P(5)).is_zero
        assert derivative(P(1, 2, 1)) == P(2, 2)

    @given(polys(max_degree=6, nonconstant=True))
    def test_degree_drops_by_one(self, f):
        assert derivative(f).degree == f.degree - 1


class TestSeparability:
    def test_examples(self):
        assert not is_separable(P(1, 2, 1))
        assert not is_separable(P(2, -3, 0, 1))
        assert is_separable(P(0, 1))

    @pytest.mark.parametrize("bad", [UniPoly(()), P(7)])
    def test_degenerate(self, bad):
        with pytest.raises(DegenerateInputError):
            is_separable(bad)
        with pytest.raises(DegenerateInputError):
            squarefree_part(bad)

    @given(polys(max_degree=3, nonconstant=True))
    def test_square_is_inseparable(self, f):
        assert not is_separable(f * f)

    @given(distinct_roots(max_size=5))
    def test_distinct_linear_factors_separable(self, roots):
        assert is_separable(UniPoly.from_roots(roots))


class TestSquarefreePart:
    def test_examples(self):
        assert squarefree_part(P(2, -3, 0, 1)) == P(-2, 1, 1)
        assert squarefree_part(P(1, 2, 1)) == P(1, 1)
        assert squarefree_part(P(-2, 0, 1)) == P(-2, 0, 1)
        assert is_separable(P(-2, 0, 1))

    @given(distinct_roots(max_size=4), st.integers(1, 3), st.fractions(1, 5).filter(bool))
    def test_powers_of_squarefree(self, roots, k, scale):
        f = UniPoly.from_roots(roots) * scale
        assert squarefree_part(f ** k) == f.monic()

    @given(st.lists(st.tuples(st.integers(-4, 4), st.integers(1, 3)), min_size=1, max_size=4,
                    unique_by=lambda p: p[0]))
    def test_same_roots_simple(self, pairs):
        f = UniPoly.from_roots([r for r, m in pairs for _ in range(m)])
        s = squarefree_part(f)
        assert s == UniPoly.from_roots([r for r, _ in pairs])
        assert divides(s, f) and is_separable(s)


class TestResultant:
    def test_sign_convention(self):
        # Res = prod(a_i - b_j) for monic inputs: 2 - 3
        assert resultant(P(-2, 1), P(-3, 1)) == -1

    def test_examples(self):
        assert resultant(P(-1, 0, 1), P(-1, 1)) == 0
        assert resultant(P(-2, 0, 1), P(-3, 0, 1)) == 1

    def test_sqrt_example_against_sylvester(self):
        rows = sylvester_rows([-2, 0, 1], [-3, 0, 1])
        assert gauss_det(rows) == 1

    def test_constant_argument(self):
        assert resultant(P(3), P(1, 1, 1)) == 9
        assert resultant(P(3), P(5)) == 1

    def test_zero_rejected(self):
        with pytest.raises(DegenerateInputError):
            resultant(UniPoly(()), P(1, 1))

    @given(polys(max_degree=4, nonconstant=True), polys(max_degree=4, nonconstant=True))
    def test_matches_sylvester_determinant(self, f, g):
        assert resultant(f, g) == gauss_det(sylvester_rows(list(f.coeffs), list(g.coeffs)))

    @given(polys(max_degree=4, nonconstant=True), polys(max_degree=4, nonconstant=True))
    def test_magnitude_matches_sympy(self, f, g):
        # sympy's sign is unreliable (it reports Res(x+1, x^3) = Res(x^3, x+1) = 1),
        # so the exact sign is pinned by the Sylvester oracle above.
        expected = sympy.resultant(sympy_poly(f.coeffs), sympy_poly(g.coeffs))
        expected = Fraction(int(sympy.numer(expected)), int(sympy.denom(expected)))
        assert abs(resultant(f, g)) == abs(expected)

    def test_antisymmetry(self):
        f, g = P(1, 1), P(0, 0, 0, 1)
        assert resultant(f, g) == -1
        assert resultant(g, f) == (-1) ** (1 * 3) * resultant(f, g)

    @given(distinct_roots(max_size=3), distinct_roots(max_size=3))
    def test_root_product_formula(self, ra, rb):
        expected = Fraction(1)
        for a in ra:
            for b in rb:
                expected *= a - b
        assert resultant(UniPoly.from_roots(ra), UniPoly.from_roots(rb)) == expected


class TestInterpolate:
    def test_recovers_polynomial(self):
        f = P(3, 0, -1, 2)
        xs = [Fraction(k) for k in range(4)]
        assert interpolate(xs, [f(x) for x in xs]) == f

    def test_duplicate_nodes(self):
        with pytest.raises(InputError):
            interpolate([Fraction(1), Fraction(1)], [Fraction(0), Fraction(0)])


class TestValuesPoly:
    def test_examples(self):
        assert values_poly(P(-1, 0, 1), P(0, 1), 7) == T(-1, 0, 1)
        assert values_poly(P(0, 1), P(0, 1), 5) == T(0, 1)
        collide = values_poly(P(0, -1, 1), P(0, -1, 1), 1)
        assert collide == UniPoly.from_roots([0, 1, 1, 2], "t")
        assert not is_separable(collide)

    def test_sqrt_sum_is_squarefree(self):
        v = values_poly(P(-2, 0, 1), P(-3, 0, 1), 1)
        assert v == T(1, 0, -10, 0, 1)
        assert is_separable(v)

    def test_zero_coefficient(self):
        with pytest.raises(InvalidCoefficientError):
            values_poly(P(0, 1), P(0, 1), 0)

    def test_non_squarefree_input(self):
        with pytest.raises(ContractViolationError):
            values_poly(P(1, 2, 1), P(0, 1), 1)

    @given(distinct_roots(max_size=3), distinct_roots(max_size=3),
           st.fractions(-4, 4, max_denominator=3).filter(bool))
    def test_roots_match_brute_force(self, ra, rb, c):
        f, g = UniPoly.from_roots(ra), UniPoly.from_roots(rb)
        v = values_poly(f, g, c)
        assert v.degree == f.degree * g.degree
        sums = sum_multiset(ra, rb, c)
        assert v == UniPoly.from_roots(list(sums.elements()), "t")
        assert is_separable(v) == all(m == 1 for m in sums.values())

    @given(polys(max_degree=3, nonconstant=True), polys(max_degree=3, nonconstant=True),
           st.fractions(-3, 3, max_denominator=2).filter(bool))
    def test_degree_law(self, f, g, c):
        f, g = squarefree_part(f), squarefree_part(g)
        assert values_poly(f, g, c).degree == f.degree * g.degree
