"""The finite algebra Q[x1..xn] / (f1(x1), ..., fn(xn)).

Because each generator is univariate, a polynomial is reduced by taking
every variable's powers modulo its own generator; the monomials
``x**m`` with ``0 <= m_i < deg f_i`` form a basis.

Two families of operations live here:

* root-free decisions (dimension, codimension, primitive element, linear
  form search) that only use gcd / squarefree / resultant machinery and
  work for arbitrary rational generators;
* grid-explicit operations (Hermite membership, annihilators, the closed
  form minimal polynomial of an injective linear form) that need every
  root rational and take a :class:`GridSpec`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    ContractViolationError,
    InputError,
    InternalError,
    NoPrimitiveElementError,
    SearchExhaustedError,
)
from .matrixcore import minimal_dependency
from .polyring import (
    UniPoly,
    format_rational,
    is_separable,
    parse_rational,
    poly_divmod,
    squarefree_part,
    values_poly_unchecked,
)

Exps = tuple[int, ...]

#: Default number of candidates tried per coordinate by the linear form search.
DEFAULT_SEARCH_BOUND = 64


# -- multivariate polynomials (inputs only) ---------------------------------


@dataclass(frozen=True)
class MPoly:
    """Sparse multivariate polynomial: exponent vector -> rational coefficient."""

    nvars: int
    terms: tuple[tuple[Exps, Fraction], ...] = ()

    def __post_init__(self):
        acc: dict[Exps, Fraction] = {}
        for exps, c in self.terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise InputError(f"term {exps} does not have {self.nvars} exponents")
            if any(e < 0 for e in exps):
                raise InputError(f"negative exponent in {exps}")
            acc[exps] = acc.get(exps, Fraction(0)) + Fraction(c)
        object.__setattr__(self, "terms",
                           tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @classmethod
    def from_dict(cls, nvars: int, coeffs: Mapping[Exps, Fraction]) -> "MPoly":
        return cls(nvars, tuple(coeffs.items()))

    @classmethod
    def constant(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, (((0,) * nvars, Fraction(c)),))

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, ((tuple(e), Fraction(1)),))

    @classmethod
    def from_univariate(cls, f: UniPoly, i: int, nvars: int) -> "MPoly":
        out = []
        for k, c in enumerate(f.coeffs):
            e = [0] * nvars
            e[i] = k
            out.append((tuple(e), c))
        return cls(nvars, tuple(out))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "MPoly"):
        if other.nvars != self.nvars:
            raise InputError("polynomials in different numbers of variables")

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.nvars, other)
        self._check(other)
        return MPoly(self.nvars, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.constant(self.nvars, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = Fraction(other)
            return MPoly(self.nvars, tuple((e, c * v) for e, v in self.terms))
        self._check(other)
        acc: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return MPoly.from_dict(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for exps, c in self.terms:
            term = c
            for x, e in zip(point, exps):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    def derivative_at(self, orders: Sequence[int], point: Sequence) -> Fraction:
        """Mixed partial derivative ``d^orders p`` evaluated at ``point``."""
        total = Fraction(0)
        for exps, c in self.terms:
            term = c
            for x, e, m in zip(point, exps, orders):
                if e < m:
                    term = Fraction(0)
                    break
                term *= math.perm(e, m) * Fraction(x) ** (e - m)
            total += term
        return total

    def to_json(self) -> list[dict]:
        return [{"exps": list(e), "coef": format_rational(c)} for e, c in self.terms]

    @classmethod
    def from_json(cls, data, nvars: Optional[int] = None) -> "MPoly":
        if not isinstance(data, list):
            raise InputError("multivariate polynomial JSON must be a list of terms")
        terms = []
        for t in data:
            if not isinstance(t, dict) or "exps" not in t or "coef" not in t:
                raise InputError(f"bad term {t!r}")
            terms.append((tuple(t["exps"]), parse_rational(t["coef"])))
        if nvars is None:
            if not terms:
                raise InputError("cannot infer the number of variables of an empty polynomial")
            nvars = len(terms[0][0])
        return cls(nvars, tuple(terms))


def compose_univariate(F: UniPoly, p: MPoly) -> MPoly:
    """``F(p)`` as a multivariate polynomial (Horner)."""
    acc = MPoly(p.nvars)
    for c in reversed(F.coeffs):
        acc = acc * p + c
    return acc


# -- the algebra and its elements -------------------------------------------


@dataclass(frozen=True)
class QuotientAlgebra:
    generators: tuple[UniPoly, ...]
    variable_names: tuple[str, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise InputError("an algebra needs at least one generator")
        for f in gens:
            if f.is_zero or f.degree < 1:
                raise InputError(f"generator {f} must be nonconstant")
        names = tuple(self.variable_names) or tuple(f"x{i + 1}" for i in range(len(gens)))
        if len(names) != len(gens):
            raise InputError("one variable name per generator is required")
        object.__setattr__(self, "generators",
                           tuple(f.with_var(v) for f, v in zip(gens, names)))
        object.__setattr__(self, "variable_names", names)

    @property
    def nvars(self) -> int:
        return len(self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.generators)

    def basis(self) -> list[Exps]:
        """Monomial basis exponents in lexicographic order."""
        return list(itertools.product(*(range(d) for d in self.degrees)))

    def to_json(self) -> dict:
        return {"generators": [f.to_json() for f in self.generators],
                "vars": list(self.variable_names)}

    @classmethod
    def from_json(cls, data) -> "QuotientAlgebra":
        if not isinstance(data, dict) or "generators" not in data:
            raise InputError("algebra JSON must be an object with 'generators'")
        gens = data["generators"]
        if not isinstance(gens, list):
            raise InputError("'generators' must be a list")
        names = data.get("vars") or [f"x{i + 1}" for i in range(len(gens))]
        if len(names) != len(gens):
            raise InputError("'vars' and 'generators' differ in length")
        return cls(tuple(UniPoly.from_json(g, v) for g, v in zip(gens, names)), tuple(names))


@dataclass(frozen=True)
class QElem:
    """Residue class, stored on the monomial basis of its algebra."""

    algebra: QuotientAlgebra
    terms: tuple[tuple[Exps, Fraction], ...] = ()

    def __post_init__(self):
        degs = self.algebra.degrees
        clean = []
        for e, c in self.terms:
            e = tuple(e)
            if len(e) != len(degs) or any(not 0 <= a < d for a, d in zip(e, degs)):
                raise InputError(f"exponent {e} is outside the basis box {degs}")
            c = Fraction(c)
            if c:
                clean.append((e, c))
        object.__setattr__(self, "terms", tuple(sorted(clean)))

    @property
    def coefficients(self) -> dict[Exps, Fraction]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def vector(self) -> list[Fraction]:
        c = self.coefficients
        return [c.get(e, Fraction(0)) for e in self.algebra.basis()]

    def lift(self) -> MPoly:
        return MPoly(self.algebra.nvars, self.terms)

    def __add__(self, other):
        return q_add(self, other, self.algebra)

    def __mul__(self, other):
        return q_mul(self, other, self.algebra)

    def __neg__(self):
        return q_scale(-1, self, self.algebra)

    def __sub__(self, other):
        return q_add(self, q_scale(-1, other, self.algebra), self.algebra)


@lru_cache(maxsize=4096)
def _power_residue(f: UniPoly, e: int) -> tuple[Fraction, ...]:
    """Coefficients of ``x**e mod f``, padded to ``deg f`` entries."""
    d = f.degree
    if e < d:
        r = [Fraction(0)] * d
        r[e] = Fraction(1)
        return tuple(r)
    prev = _power_residue(f, e - 1)
    # multiply by x, then fold the overflow coefficient back with f
    shifted = (Fraction(0),) + prev
    top = shifted[d] / f.coeffs[d]
    return tuple(shifted[i] - top * f.coeffs[i] for i in range(d))


def _reduce_terms(terms: Iterable[tuple[Exps, Fraction]], alg: QuotientAlgebra) -> dict[Exps, Fraction]:
    acc: dict[Exps, Fraction] = {}
    gens = alg.generators
    for exps, c in terms:
        factors = []
        for f, e in zip(gens, exps):
            res = _power_residue(f, e)
            factors.append([(k, v) for k, v in enumerate(res) if v])
        for combo in itertools.product(*factors):
            coef = c
            for _, v in combo:
                coef *= v
            key = tuple(k for k, _ in combo)
            acc[key] = acc.get(key, Fraction(0)) + coef
    return acc


def normal_form(p: MPoly, alg: QuotientAlgebra) -> QElem:
    """Unique basis representative of ``p + I``."""
    if p.nvars != alg.nvars:
        raise InputError(f"polynomial has {p.nvars} variables, algebra has {alg.nvars}")
    return QElem(alg, tuple(_reduce_terms(p.terms, alg).items()))


def _same_algebra(alg: QuotientAlgebra, *elems: QElem):
    for e in elems:
        if e.algebra != alg:
            raise InputError("element belongs to a different algebra")


def q_add(a: QElem, b: QElem, alg: QuotientAlgebra) -> QElem:
    _same_algebra(alg, a, b)
    acc = dict(a.terms)
    for e, c in b.terms:
        acc[e] = acc.get(e, Fraction(0)) + c
    return QElem(alg, tuple(acc.items()))


def q_scale(c, a: QElem, alg: QuotientAlgebra) -> QElem:
    _same_algebra(alg, a)
    c = Fraction(c)
    return QElem(alg, tuple((e, c * v) for e, v in a.terms))


def q_mul(a: QElem, b: QElem, alg: QuotientAlgebra) -> QElem:
    _same_algebra(alg, a, b)
    products = ((tuple(x + y for x, y in zip(e1, e2)), c1 * c2)
                for e1, c1 in a.terms for e2, c2 in b.terms)
    return QElem(alg, tuple(_reduce_terms(products, alg).items()))


def q_one(alg: QuotientAlgebra) -> QElem:
    return QElem(alg, (((0,) * alg.nvars, Fraction(1)),))


def q_variable(alg: QuotientAlgebra, i: int) -> QElem:
    return normal_form(MPoly.variable(alg.nvars, i), alg)


def q_eval_poly(F: UniPoly, e: QElem, alg: QuotientAlgebra) -> QElem:
    """``F(e)`` computed inside the algebra."""
    acc = QElem(alg)
    one = q_one(alg)
    for c in reversed(F.coeffs):
        acc = q_add(q_mul(acc, e, alg), q_scale(c, one, alg), alg)
    return acc


# -- dimensions and the primitive element decision -----------------------


def dim_quotient(alg: QuotientAlgebra) -> int:
    return math.prod(alg.degrees)


def codim_quotient(alg: QuotientAlgebra) -> int:
    """Largest degree of a minimal polynomial of an element, computed root-free.

    With ``s_j`` the number of distinct roots of ``f_j``, summing the per-point
    exponent ``sum_i nu_i(a_i) - n + 1`` over the root grid axis by axis gives
    ``sum_i deg f_i * prod_{j != i} s_j - (n - 1) * prod_j s_j``.
    """
    n = alg.nvars
    degs = alg.degrees
    s = [squarefree_part(f).degree for f in alg.generators]
    total = sum(degs[i] * math.prod(s[:i] + s[i + 1:]) for i in range(n))
    return total - (n - 1) * math.prod(s)


def inseparable_count(alg: QuotientAlgebra) -> int:
    return sum(1 for f in alg.generators if not is_separable(f))


def has_primitive_element_by_codim(alg: QuotientAlgebra) -> bool:
    return codim_quotient(alg) == dim_quotient(alg)


def has_primitive_element(alg: QuotientAlgebra) -> bool:
    """True iff at most one generator is inseparable.

    The answer is cross-checked against ``codim == dim``; a disagreement is a bug.
    """
    by_count = inseparable_count(alg) <= 1
    if by_count != has_primitive_element_by_codim(alg):
        raise InternalError(f"primitive element routes disagree on {alg}")
    return by_count


def sum_product_identity(ks: Sequence) -> bool:
    """``sum(k) - (n - 1) == prod(k)`` for rationals ``k_i >= 1``.

    Holds exactly when at most one ``k_i`` exceeds 1.
    """
    ks = [Fraction(k) for k in ks]
    if not ks:
        raise InputError("need at least one number")
    if any(k < 1 for k in ks):
        raise InputError("every k_i must be >= 1")
    return sum(ks) - (len(ks) - 1) == math.prod(ks)


# -- linear forms ---------------------------------------------------------


@dataclass(frozen=True)
class LinearForm:
    """``x1 + c2*x2 + ... + cn*xn`` with every coefficient nonzero."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coefficients)
        if not cs or cs[0] != 1:
            raise InputError("a linear form has leading coefficient 1")
        if any(c == 0 for c in cs):
            raise InputError("linear form coefficients must be nonzero")
        object.__setattr__(self, "coefficients", cs)

    def __call__(self, point: Sequence) -> Fraction:
        return sum((c * Fraction(x) for c, x in zip(self.coefficients, point)), Fraction(0))

    def as_mpoly(self) -> MPoly:
        n = len(self.coefficients)
        return MPoly(n, tuple((tuple(int(i == j) for j in range(n)), c)
                              for i, c in enumerate(self.coefficients)))

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coefficients]


def candidate_coefficients(bound: int) -> Iterator[Fraction]:
    """``1, -1, 2, -2, 3, ...``, ``bound`` values in total."""
    for k in range(bound):
        mag = k // 2 + 1
        yield Fraction(mag if k % 2 == 0 else -mag)


def injective_form_search(alg: QuotientAlgebra, bound: int = DEFAULT_SEARCH_BOUND) -> LinearForm:
    """Find a linear form that is injective on the root grid of ``alg``.

    Coordinates are fixed greedily left to right. With ``P`` the values
    polynomial of the partial form chosen so far (its roots are the partial
    form's values on the partial grid), coordinate ``i`` takes the first
    candidate ``c`` for which ``values_poly(P, sqf(f_i), c)`` is squarefree.
    A squarefree fold of degree ``prod s_i`` certifies injectivity.
    """
    if bound < 1:
        raise InputError("search bound must be >= 1")
    parts = [squarefree_part(f).with_var("t") for f in alg.generators]
    acc = parts[0]
    coeffs = [Fraction(1)]
    for i, part in enumerate(parts[1:], start=2):
        for c in candidate_coefficients(bound):
            # acc and part are squarefree by construction
            folded = values_poly_unchecked(acc, part, c)
            if is_separable(folded):
                acc = folded
                coeffs.append(c)
                break
        else:
            raise SearchExhaustedError(
                f"no injective coefficient for variable {i} among {bound} candidates")
    if acc.degree != math.prod(p.degree for p in parts) or not is_separable(acc):
        raise InternalError("final fold does not certify injectivity")
    return LinearForm(tuple(coeffs))


def find_primitive_linear_form(alg: QuotientAlgebra,
                               bound: int = DEFAULT_SEARCH_BOUND) -> LinearForm:
    """Linear form whose residue class is a primitive element of ``alg``."""
    if not has_primitive_element(alg):
        raise NoPrimitiveElementError(
            f"{inseparable_count(alg)} generators are inseparable; no primitive element exists")
    return injective_form_search(alg, bound)


def min_poly_residue(e: QElem, alg: QuotientAlgebra) -> UniPoly:
    """Minimal polynomial of a residue class via Krylov dependence of its powers."""
    _same_algebra(alg, e)

    def powers():
        p = q_one(alg)
        while True:
            yield p.vector()
            p = q_mul(p, e, alg)

    return minimal_dependency(powers())


# -- rational root grids ---------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Per-axis rational roots with multiplicities."""

    axes: tuple[tuple[tuple[Fraction, int], ...], ...]

    def __post_init__(self):
        axes = []
        if not self.axes:
            raise InputError("a grid needs at least one axis")
        for axis in self.axes:
            pts = tuple((Fraction(r), int(m)) for r, m in axis)
            if not pts:
                raise InputError("empty grid axis")
            if any(m < 1 for _, m in pts):
                raise InputError("multiplicities must be >= 1")
            if len({r for r, _ in pts}) != len(pts):
                raise InputError("roots on one axis must be distinct")
            axes.append(pts)
        object.__setattr__(self, "axes", tuple(axes))

    @property
    def nvars(self) -> int:
        return len(self.axes)

    def generators(self) -> tuple[UniPoly, ...]:
        return tuple(UniPoly.from_roots([r for r, m in axis for _ in range(m)], f"x{i + 1}")
                     for i, axis in enumerate(self.axes))

    def algebra(self, variable_names: Sequence[str] = ()) -> QuotientAlgebra:
        return QuotientAlgebra(self.generators(), tuple(variable_names))

    def points(self) -> Iterator[tuple[tuple[Fraction, ...], tuple[int, ...]]]:
        """Every grid point with its multiplicity vector."""
        for combo in itertools.product(*self.axes):
            yield tuple(r for r, _ in combo), tuple(m for _, m in combo)

    def exponent(self, mults: Sequence[int]) -> int:
        """``sum(nu) - n + 1``: the local nilpotency bound at a point."""
        return sum(mults) - len(mults) + 1

    def to_json(self) -> dict:
        return {"axes": [[{"root": format_rational(r), "mult": m} for r, m in axis]
                         for axis in self.axes]}

    @classmethod
    def from_json(cls, data) -> "GridSpec":
        if not isinstance(data, dict) or not isinstance(data.get("axes"), list):
            raise InputError("grid JSON must be an object with an 'axes' list")
        try:
            axes = tuple(tuple((parse_rational(p["root"]), int(p["mult"])) for p in axis)
                         for axis in data["axes"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad grid point: {exc}") from exc
        return cls(axes)


def min_poly_of_injective_form(grid: GridSpec, form: LinearForm) -> UniPoly:
    """Closed form ``prod_a (t - g(a))**(sum nu(a) - n + 1)`` for injective ``g``."""
    if len(form.coefficients) != grid.nvars:
        raise InputError("linear form and grid differ in dimension")
    out = UniPoly.constant(1, "t")
    seen = set()
    for point, mults in grid.points():
        v = form(point)
        if v in seen:
            raise ContractViolationError(f"linear form is not injective on the grid (value {v})")
        seen.add(v)
        out = out * UniPoly((-v, Fraction(1)), "t") ** grid.exponent(mults)
    return out


def hermite_membership(p: MPoly, grid: GridSpec) -> bool:
    """Decide ``p in I`` from derivatives at the grid points.

    ``p`` lies in the ideal iff every mixed partial ``d^m p(a)`` with
    ``0 <= m_i < nu_i(a_i)`` vanishes.
    """
    if p.nvars != grid.nvars:
        raise InputError("polynomial and grid differ in number of variables")
    for point, mults in grid.points():
        for orders in itertools.product(*(range(m) for m in mults)):
            if p.derivative_at(orders, point) != 0:
                return False
    return True


def build_annihilator(p: MPoly, grid: GridSpec) -> UniPoly:
    """``F(t) = prod_a (t - p(a))**(sum nu(a) - n + 1)``, which kills ``p`` modulo I."""
    if p.nvars != grid.nvars:
        raise InputError("polynomial and grid differ in number of variables")
    out = UniPoly.constant(1, "t")
    for point, mults in grid.points():
        out = out * UniPoly((-p(point), Fraction(1)), "t") ** grid.exponent(mults)
    return out


def annihilator_cofactor(p: MPoly, grid: GridSpec) -> UniPoly:
    """The exact quotient of the annihilator by the minimal polynomial of ``p``."""
    alg = grid.algebra()
    F = build_annihilator(p, grid)
    mu = min_poly_residue(normal_form(p, alg), alg)
    q, r = poly_divmod(F, mu)
    if not r.is_zero:
        raise InternalError("minimal polynomial does not divide the annihilator")
    return q
