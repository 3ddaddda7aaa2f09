"""Decide whether commuting matrices are polynomials in one common matrix.

``analyze`` runs, in order:

1. a commutation check;
2. a construction ``C = sum(c_i A_i)`` when at most one minimal polynomial
   is inseparable, from an injective linear form on the root grid of the
   minimal polynomials (or ``C = A_i`` when one member is cyclic and
   already generates the rest); if the coefficient search runs out, the
   randomized step below still looks for a generating element;
3. the two-matrix certificate: both minimal polynomials inseparable with
   ``deg mu_A * deg mu_B = dim Q[A, B]`` rules out every ``C`` in
   ``Q[A, B]``, and every ``C`` at all when that number is also ``n``;
4. random elements of the span: one whose minimal polynomial has degree
   ``dim Q[A1..Am]`` is a common source; when that dimension is ``n`` and
   no sample reaches it, no common source exists unless the random search
   was unlucky;
5. otherwise an explicit UNKNOWN carrying everything computed.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .errors import HypothesisNotMetError, InputError, InternalError, SearchExhaustedError
from .matrixcore import QMatrix, mat_scale, min_poly_matrix, poly_eval_matrix
from .polyring import UniPoly, format_rational, is_separable
from .quotient import DEFAULT_SEARCH_BOUND, QuotientAlgebra, find_primitive_linear_form
from .subalgebra import commute_check, express_as_polynomial, monte_carlo_search, span_dimension


class Verdict(str, enum.Enum):
    CONSTRUCTED = "CONSTRUCTED"
    NEGATIVE_IN_SPAN = "NEGATIVE_IN_SPAN"
    NEGATIVE_ABSOLUTE = "NEGATIVE_ABSOLUTE"
    NEGATIVE_ABSOLUTE_PROBABILISTIC = "NEGATIVE_ABSOLUTE_PROBABILISTIC"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class CommonSource:
    source: QMatrix
    polynomials: tuple[UniPoly, ...]
    coefficients: Optional[tuple] = None
    method: str = "linear_form"

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "coefficients": (None if self.coefficients is None
                             else [format_rational(c) for c in self.coefficients]),
            "C": self.source.to_json(),
            "polynomials": [p.to_json() for p in self.polynomials],
        }


@dataclass(frozen=True)
class NegativeCertificate:
    verdict: Verdict
    deg_mu_a: int
    deg_mu_b: int
    span_dim: int
    n: int

    def to_dict(self) -> dict:
        if self.verdict is Verdict.NEGATIVE_ABSOLUTE:
            grounds = "both minimal polynomials inseparable and deg mu_A * deg mu_B = dim Q[A,B] = n"
        else:
            grounds = "both minimal polynomials inseparable and deg mu_A * deg mu_B = dim Q[A,B]"
        return {
            "kind": self.verdict.value,
            "deg_mu_A": self.deg_mu_a,
            "deg_mu_B": self.deg_mu_b,
            "product": self.deg_mu_a * self.deg_mu_b,
            "span_dimension": self.span_dim,
            "n": self.n,
            "grounds": grounds,
        }


@dataclass
class AnalysisReport:
    verdict: Verdict
    reason: str
    input_summary: dict
    certificate: dict = field(default_factory=dict)
    monte_carlo: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "input_summary": self.input_summary,
            "certificate": self.certificate,
            "monte_carlo": self.monte_carlo,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def verify_common_source(ms: Sequence[QMatrix], c: QMatrix, ps: Sequence[UniPoly]) -> bool:
    return len(ms) == len(ps) and all(poly_eval_matrix(p, c) == a for a, p in zip(ms, ps))


def _express_all(ms: Sequence[QMatrix], c: QMatrix) -> Optional[list[UniPoly]]:
    ps = []
    for a in ms:
        p = express_as_polynomial(a, c)
        if p is None:
            return None
        ps.append(p)
    return ps


def _cyclic_shortcut(ms: Sequence[QMatrix], mus: Sequence[UniPoly]) -> Optional[CommonSource]:
    n = ms[0].rows
    for a, mu in zip(ms, mus):
        if mu.degree == n:
            ps = _express_all(ms, a)
            if ps is not None:
                return CommonSource(a, tuple(ps), None, "cyclic_member")
    return None


def construct_common_source(ms: Sequence[QMatrix],
                            bound: int = DEFAULT_SEARCH_BOUND) -> CommonSource:
    """Build ``C`` and polynomials ``p_i`` with ``p_i(C) = A_i`` for every input.

    Needs commuting inputs with at most one inseparable minimal polynomial.
    When that fails, a member of full degree that generates all others is
    still accepted. Every result is replayed before it is returned.
    """
    if not ms:
        raise InputError("need at least one matrix")
    if not commute_check(ms):
        raise InputError("matrices do not commute")
    mus = [min_poly_matrix(a) for a in ms]
    inseparable = sum(1 for mu in mus if not is_separable(mu))
    if inseparable <= 1:
        alg = QuotientAlgebra(tuple(mus), tuple(f"x{i + 1}" for i in range(len(ms))))
        form = find_primitive_linear_form(alg, bound)
        c = QMatrix.zeros(ms[0].rows)
        for coef, a in zip(form.coefficients, ms):
            c = c + mat_scale(coef, a)
        ps = _express_all(ms, c)
        if ps is None:
            raise InternalError("a matrix is not a polynomial in the constructed source")
        result = CommonSource(c, tuple(ps), form.coefficients, "linear_form")
    else:
        result = _cyclic_shortcut(ms, mus)
        if result is None:
            raise HypothesisNotMetError(
                f"{inseparable} of {len(ms)} minimal polynomials are inseparable")
    if not verify_common_source(ms, result.source, result.polynomials):
        raise InternalError("constructed common source failed verification")
    return result


def negative_certificate(a: QMatrix, b: QMatrix) -> Optional[NegativeCertificate]:
    """Certificate that no common source exists for ``(a, b)``, or ``None``."""
    if not commute_check([a, b]):
        raise InputError("matrices do not commute")
    mu_a, mu_b = min_poly_matrix(a), min_poly_matrix(b)
    if is_separable(mu_a) or is_separable(mu_b):
        return None
    dim, _ = span_dimension([a, b])
    prod = mu_a.degree * mu_b.degree
    if prod != dim:
        return None
    verdict = Verdict.NEGATIVE_ABSOLUTE if dim == a.rows else Verdict.NEGATIVE_IN_SPAN
    return NegativeCertificate(verdict, mu_a.degree, mu_b.degree, dim, a.rows)


_STRENGTH = {Verdict.NEGATIVE_ABSOLUTE: 2, Verdict.NEGATIVE_IN_SPAN: 1}


def analyze(ms: Sequence[QMatrix], trials: int = 100, seed: int = 0,
            bound: int = DEFAULT_SEARCH_BOUND) -> AnalysisReport:
    """Full pipeline; a pure function of ``(ms, trials, seed, bound)``."""
    if not ms:
        raise InputError("need at least one matrix")
    n = ms[0].rows
    if any(not m.is_square or m.rows != n for m in ms):
        raise InputError("all matrices must be square of the same size")
    mus = [min_poly_matrix(a) for a in ms]
    summary = {
        "n": n,
        "m": len(ms),
        "min_polys": [mu.to_json() for mu in mus],
        "separable": [is_separable(mu) for mu in mus],
    }
    if not commute_check(ms):
        return AnalysisReport(Verdict.UNKNOWN, "input error: matrices do not commute", summary)
    dim, _ = span_dimension(ms)
    summary["span_dimension"] = dim

    exhausted = None
    try:
        src = construct_common_source(ms, bound)
        return AnalysisReport(Verdict.CONSTRUCTED,
                              "at most one inseparable minimal polynomial"
                              if src.method == "linear_form"
                              else "a cyclic member generates the family",
                              summary, src.to_dict())
    except HypothesisNotMetError:
        pass
    except SearchExhaustedError as exc:
        # a primitive element still exists; let the random search look for one
        exhausted = f"linear form search exhausted: {exc}"

    # A pair certificate against every C in Q[A_i, A_j] transfers to the family
    # only if the pair already spans it; the absolute form always transfers.
    best = None
    pairs = [] if exhausted else itertools.combinations(range(len(ms)), 2)
    for i, j in pairs:
        cert = negative_certificate(ms[i], ms[j])
        if cert is None:
            continue
        if cert.verdict is Verdict.NEGATIVE_IN_SPAN and cert.span_dim != dim:
            continue
        if best is None or _STRENGTH[cert.verdict] > _STRENGTH[best[2].verdict]:
            best = (i, j, cert)
    if best is not None:
        i, j, cert = best
        payload = {"pair": [i, j], **cert.to_dict()}
        return AnalysisReport(cert.verdict, "two inseparable members span a product-sized algebra",
                              summary, payload)

    observed, witness = monte_carlo_search(ms, trials, seed)
    mc = {"trials": trials, "seed": seed, "observed_codim": observed, "span_dimension": dim}
    if observed == dim and witness is not None:
        ps = _express_all(ms, witness)
        if ps is None or not verify_common_source(ms, witness, ps):
            raise InternalError("a primitive element of the span failed to express the family")
        src = CommonSource(witness, tuple(ps), None, "random_primitive_element")
        reason = "a random element generates the span"
        if exhausted:
            reason = f"{exhausted}; {reason}"
        return AnalysisReport(Verdict.CONSTRUCTED, reason, summary, src.to_dict(), mc)
    if exhausted:
        return AnalysisReport(Verdict.UNKNOWN, exhausted, summary, {}, mc)
    if dim == n:
        return AnalysisReport(
            Verdict.NEGATIVE_ABSOLUTE_PROBABILISTIC,
            "dim Q[A..] = n and no sampled element has a minimal polynomial of degree n; "
            "if the span has no primitive element then no matrix C of any kind exists",
            summary,
            {"span_dimension": dim, "n": n, "observed_codim": observed,
             "grounds": "span of dimension n without a primitive element"},
            mc)
    return AnalysisReport(Verdict.UNKNOWN, "no criterion applies", summary, {}, mc)
