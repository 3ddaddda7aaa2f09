"""Exact univariate polynomial arithmetic over the rationals.

Scalars are :class:`fractions.Fraction` values, which are always kept in
lowest terms with a positive denominator. Polynomials are dense and
immutable; coefficient ``i`` multiplies ``x**i``.

Resultant sign convention: for monic ``f`` with roots ``a_i`` and monic
``g`` with roots ``b_j``, ``resultant(f, g) = prod(a_i - b_j)``. In general
``resultant(f, g) = lc(f)**deg(g) * lc(g)**deg(f) * prod(a_i - b_j)``,
which equals the determinant of the Sylvester matrix with the rows of ``f``
on top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence, Union

from .errors import ContractViolationError, DegenerateInputError, InputError, InvalidCoefficientError

Rational = Union[Fraction, int]

#: Degree of the zero polynomial.
DEG_ZERO = -math.inf


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, an integer literal, an int or a Fraction exactly.

    Floats are rejected: nothing in the core may round.
    """
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise InputError(f"not an exact rational literal: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial with rational coefficients, low degree first."""

    coeffs: tuple[Fraction, ...] = ()
    var: str = "x"

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c: Rational, var: str = "x") -> "UniPoly":
        return cls((Fraction(c),), var)

    @classmethod
    def monomial(cls, degree: int, c: Rational = 1, var: str = "x") -> "UniPoly":
        return cls((Fraction(0),) * degree + (Fraction(c),), var)

    @classmethod
    def from_roots(cls, roots: Iterable[Rational], var: str = "x") -> "UniPoly":
        """Monic polynomial ``prod(x - r)`` over ``roots`` (with repetition)."""
        out = cls.constant(1, var)
        for r in roots:
            out = out * cls((-Fraction(r), Fraction(1)), var)
        return out

    # -- basic properties -------------------------------------------------

    @property
    def degree(self):
        """Degree, or :data:`DEG_ZERO` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        lc = self.coeffs[-1]
        return UniPoly(tuple(c / lc for c in self.coeffs), self.var)

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other, self.var)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(tuple(x + y for x, y in zip(a, b)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        other = _coerce(other, self.var)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other, self.var)
        if other is NotImplemented:
            return other
        if self.is_zero or other.is_zero:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(tuple(out), self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InputError("negative exponent")
        result = UniPoly.constant(1, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "UniPoly"):
        return poly_divmod(self, other)

    def __floordiv__(self, other: "UniPoly"):
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "UniPoly"):
        return poly_divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element that mixes with Fraction."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """``self(inner(t))`` as a polynomial in ``inner.var``."""
        acc = UniPoly((), inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    # -- presentation ---------------------------------------------------------

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data, var: str = "x") -> "UniPoly":
        if not isinstance(data, list):
            raise InputError(f"polynomial must be a JSON array, got {type(data).__name__}")
        return cls(tuple(parse_rational(c) for c in data), var)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(value, var):
    if isinstance(value, UniPoly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return UniPoly.constant(value, var)
    return NotImplemented


def poly_divmod(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Quotient and remainder of exact division over the rationals."""
    if g.is_zero:
        raise DegenerateInputError("division by the zero polynomial")
    rem = list(f.coeffs)
    dg = len(g.coeffs) - 1
    lc = g.coeffs[-1]
    if len(rem) - 1 < dg:
        return UniPoly((), f.var), f
    quot = [Fraction(0)] * (len(rem) - dg)
    for k in range(len(rem) - 1, dg - 1, -1):
        q = rem[k] / lc
        if q == 0:
            continue
        quot[k - dg] = q
        for j, c in enumerate(g.coeffs):
            rem[k - dg + j] -= q * c
    return UniPoly(tuple(quot), f.var), UniPoly(tuple(rem[:dg]), f.var)


def divides(d: UniPoly, f: UniPoly) -> bool:
    return poly_divmod(f, d)[1].is_zero


def _primitive(coeffs: list[int]) -> list[int]:
    g = reduce(math.gcd, coeffs, 0)
    return [c // g for c in coeffs] if g > 1 else coeffs


def _prem(a: list[int], b: list[int]) -> tuple[list[int], int]:
    """Integer pseudo-remainder ``r`` and exponent ``e`` with ``lc(b)**e * a = q*b + r``."""
    a = list(a)
    db, lc = len(b) - 1, b[-1]
    e = 0
    while len(a) - 1 >= db and a:
        q, shift = a[-1], len(a) - 1 - db
        a = [lc * x for x in a]
        e += 1
        for j, c in enumerate(b):
            a[shift + j] -= q * c
        while a and a[-1] == 0:
            a.pop()
    return a, e


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for ``n < 3.3e24``."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_PRIMES: list[int] = []


def _prime(i: int) -> int:
    """The ``i``-th prime below ``2**61``, counting down."""
    cand = _PRIMES[-1] - 2 if _PRIMES else 2**61 - 1
    while len(_PRIMES) <= i:
        if _is_prime(cand):
            _PRIMES.append(cand)
        cand -= 2
    return _PRIMES[i]


def _gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic gcd of two integer polynomials reduced modulo the prime ``p``."""
    a = [x % p for x in a]
    b = [x % p for x in b]
    for v in (a, b):
        while v and v[-1] == 0:
            v.pop()
    while b:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        while len(a) - 1 >= db:
            q = a[-1] * inv % p
            shift = len(a) - 1 - db
            for j, c in enumerate(b):
                a[shift + j] = (a[shift + j] - q * c) % p
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _rational_reconstruct(u: int, m: int) -> Optional[Fraction]:
    """The fraction ``n/d`` with ``n = d*u (mod m)`` and ``|n|, d <= sqrt(m/2)``, if any."""
    bound = math.isqrt(m // 2)
    r0, r1, s0, s1 = m, u % m, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def _gcd_prs(a: list[int], b: list[int]) -> list[int]:
    """Euclid on integer primitive parts."""
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _primitive(_prem(a, b)[0])
    return a


_MODULAR_PRIME_LIMIT = 200


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic greatest common divisor; ``gcd(0, 0) = 0``.

    Computed modulo word-sized primes: a prime not dividing either leading
    coefficient bounds the true degree from above, so a constant image
    proves coprimality. Otherwise images of the least degree seen are
    combined by CRT and rational reconstruction, and a candidate is only
    returned once it divides both inputs exactly. If that has not happened
    after a fixed number of primes, Euclid over the integers finishes the job.
    """
    if f.is_zero or g.is_zero:
        return (g if f.is_zero else f).monic()
    a = _integer_coeffs(f)[0]
    b = _integer_coeffs(g)[0]
    lc_a, lc_b = a[-1], b[-1]
    best_deg, modulus, residues, last = None, 1, [], None
    for i in range(_MODULAR_PRIME_LIMIT):
        p = _prime(i)
        if lc_a % p == 0 or lc_b % p == 0:
            continue
        image = _gcd_mod(a, b, p)
        deg = len(image) - 1
        if deg == 0:
            return UniPoly.constant(1, f.var)
        if best_deg is not None and deg > best_deg:
            continue
        if best_deg is None or deg < best_deg:
            best_deg, modulus, residues, last = deg, 1, [0] * deg, None
        # CRT on the non-leading coefficients of the monic images
        inv = pow(modulus, -1, p)
        residues = [r + modulus * ((x - r) * inv % p) for r, x in zip(residues, image)]
        modulus *= p
        cand = [_rational_reconstruct(r, modulus) for r in residues]
        if any(c is None for c in cand):
            continue
        if cand != last:
            last = cand
            continue
        h = UniPoly(tuple(cand) + (Fraction(1),), f.var)
        if divides(h, f) and divides(h, g):
            return h
    return UniPoly(tuple(Fraction(x) for x in _gcd_prs(a, b)), f.var).monic()


def derivative(f: UniPoly) -> UniPoly:
    return UniPoly(tuple(i * c for i, c in enumerate(f.coeffs))[1:], f.var)


def _require_nonconstant(f: UniPoly):
    if f.is_zero or f.degree < 1:
        raise DegenerateInputError(f"expected a nonconstant polynomial, got {f}")


def is_separable(f: UniPoly) -> bool:
    """True iff ``f`` has no repeated root over the algebraic closure."""
    _require_nonconstant(f)
    return poly_gcd(f, derivative(f)).degree == 0


def squarefree_part(f: UniPoly) -> UniPoly:
    """Monic ``f / gcd(f, f')``: same roots as ``f``, each simple."""
    _require_nonconstant(f)
    return poly_divmod(f, poly_gcd(f, derivative(f)))[0].monic()


# -- resultants -------------------------------------------------------------


def _integer_coeffs(f: UniPoly) -> tuple[list[int], int]:
    """Return integer coefficients F and a positive scale d with f = F / d."""
    d = reduce(math.lcm, (c.denominator for c in f.coeffs), 1)
    return [int(c * d) for c in f.coeffs], d


def _sylvester(f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    m, k = len(f) - 1, len(g) - 1
    size = m + k
    rows = []
    hi_f = list(reversed(f))
    hi_g = list(reversed(g))
    for i in range(k):
        rows.append([0] * i + hi_f + [0] * (size - i - m - 1))
    for i in range(m):
        rows.append([0] * i + hi_g + [0] * (size - i - k - 1))
    return rows


def bareiss_determinant(rows: list[list[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def resultant(f: UniPoly, g: UniPoly) -> Fraction:
    """Resultant of two nonzero polynomials (see module docstring for the sign)."""
    if f.is_zero or g.is_zero:
        raise DegenerateInputError("resultant of the zero polynomial")
    F, df = _integer_coeffs(f)
    G, dg = _integer_coeffs(g)
    m, k = len(F) - 1, len(G) - 1
    return _int_resultant(F, G) / (df**k * dg**m)


def _int_resultant(F: list[int], G: list[int]) -> Fraction:
    """Determinant of the Sylvester matrix of integer polynomials.

    The larger one is first pseudo-reduced modulo the smaller, so Bareiss
    only ever sees a Sylvester matrix of size below twice the smaller degree.
    Uses ``Res(F, G) = (-1)**(m*k) * lc(G)**(m - deg R) * Res(G, R)`` with
    ``R = F mod G``.
    """
    m, k = len(F) - 1, len(G) - 1
    if m < k:
        return (-1) ** (m * k) * _int_resultant(G, F)
    if k == 0:
        return Fraction(G[0] ** m)
    P, e = _prem(F, G)
    if not P:
        return Fraction(0)
    lc, r = G[-1], len(P) - 1
    # P = lc**e * R, and Res(G, c*R) = c**k * Res(G, R)
    num = (-1) ** (m * k) * lc ** (m - r) * bareiss_determinant(_sylvester(G, P))
    return Fraction(num, lc ** (e * k))


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction], var: str = "x") -> UniPoly:
    """Unique polynomial of degree < len(xs) through the points (Newton form)."""
    if len(set(xs)) != len(xs):
        raise InputError("interpolation nodes must be distinct")
    coef = [Fraction(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Horner on the Newton form: out = out * (x - xs[i]) + coef[i]
    out: list[Fraction] = []
    for i in range(n - 1, -1, -1):
        xi = Fraction(xs[i])
        nxt = [Fraction(0)] + out
        for j, c in enumerate(out):
            nxt[j] -= xi * c
        nxt[0] += coef[i]
        out = nxt
    return UniPoly(tuple(out), var)


def values_poly(f: UniPoly, g: UniPoly, c: Rational, var: str = "t") -> UniPoly:
    """Monic polynomial whose roots are ``a + c*b`` for roots a of f and b of g.

    Computed as ``Res_x(f(x), g((t - x)/c))`` by evaluating the scalar
    resultant at ``deg f * deg g + 1`` integer nodes and interpolating in
    ``t``; no root is ever extracted. Both inputs must be squarefree. The map
    ``(a, b) -> a + c*b`` is injective on the root grid exactly when the
    result is squarefree.
    """
    c = Fraction(c)
    if c == 0:
        raise InvalidCoefficientError("the coefficient c must be nonzero")
    for h in (f, g):
        _require_nonconstant(h)
        if not is_separable(h):
            raise ContractViolationError(f"values_poly needs squarefree inputs, got {h}")
    return values_poly_unchecked(f, g, c, var)


def values_poly_unchecked(f: UniPoly, g: UniPoly, c: Rational, var: str = "t") -> UniPoly:
    """``values_poly`` without the input checks, for callers that already made them."""
    c = Fraction(c)
    p, q = c.numerator, c.denominator
    F, _ = _integer_coeffs(f)
    G, _ = _integer_coeffs(g)
    m, k = len(F) - 1, len(G) - 1
    # p^k * g((t0 - x) * q / p) = sum_j G_j q^j p^(k-j) (t0 - x)^j, an integer
    # polynomial in x; the constant scalings drop out when the result is made monic.
    scaled = [G[j] * q**j * p ** (k - j) for j in range(k + 1)]
    nodes = list(range(m * k + 1))
    values = []
    for t0 in nodes:
        h = [0] * (k + 1)
        for j, gj in enumerate(scaled):
            if gj:
                for i in range(j + 1):
                    h[i] += gj * math.comb(j, i) * t0 ** (j - i) * (-1) ** i
        values.append(_int_resultant(F, h))
    # a common scale factor does not change the monic result
    denom = reduce(math.lcm, (v.denominator for v in values), 1)
    return _interpolate_consecutive([int(v * denom) for v in values], var).monic()


def _interpolate_consecutive(ys: Sequence[int], var: str) -> UniPoly:
    """Interpolate integer values at ``0, 1, ..., d`` in integer arithmetic.

    Newton's form on consecutive nodes uses forward differences,
    ``P(x) = sum_j (D^j y_0 / j!) x(x-1)...(x-j+1)``; scaling by ``d!`` keeps
    every step integral.
    """
    d = len(ys) - 1
    diffs = list(ys)
    lead = [diffs[0]]
    for j in range(1, d + 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        lead.append(diffs[0])
    fact_d = math.factorial(d)
    out: list[int] = []
    for i in range(d, -1, -1):
        # out = out * (x - i) + lead[i] * d!/i!
        nxt = [0] + out
        for j, c in enumerate(out):
            nxt[j] -= i * c
        nxt[0] += lead[i] * (fact_d // math.factorial(i))
        out = nxt
    return UniPoly(tuple(Fraction(c, fact_d) for c in out), var)
