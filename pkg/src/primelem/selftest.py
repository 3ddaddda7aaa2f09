"""Quick checks of the library against the small worked fixtures."""

from __future__ import annotations

from .engine import Verdict, analyze, negative_certificate
from .generators import CounterexampleSpec, frobenius_pair, rho_pair
from .matrixcore import QMatrix
from .polyring import UniPoly
from .quotient import QuotientAlgebra, codim_quotient, dim_quotient, has_primitive_element
from .subalgebra import monte_carlo_codim, span_dimension

RHO_F = [
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [-2, 3, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [0, 0, 0, -2, 3, 0],
]
RHO_G = [
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
    [-1, 0, 0, -2, 0, 0],
    [0, -1, 0, 0, -2, 0],
    [0, 0, -1, 0, 0, -2],
]
F_EX = UniPoly((2, -3, 0, 1), "x")
G_EX = UniPoly((1, 2, 1), "y")


def run_selftest() -> list[tuple[str, bool, str]]:
    results = []

    def check(name, ok, detail=""):
        results.append((name, bool(ok), detail))

    a, b = rho_pair(CounterexampleSpec(F_EX, G_EX))
    check("rho pair matches printed matrices",
          a == QMatrix.from_rows(RHO_F) and b == QMatrix.from_rows(RHO_G))
    report = analyze([a, b])
    check("6x6 pair is NEGATIVE_ABSOLUTE", report.verdict is Verdict.NEGATIVE_ABSOLUTE,
          report.verdict.value)

    fa, fb = frobenius_pair()
    dim, _ = span_dimension([fa, fb])
    check("3x3 pair spans dimension 3", dim == 3, str(dim))
    check("3x3 pair has no product certificate", negative_certificate(fa, fb) is None)
    codim = monte_carlo_codim([fa, fb], 100, 0)
    check("3x3 pair observed codim is 2", codim == 2, str(codim))
    report = analyze([fa, fb], trials=100, seed=7)
    check("3x3 pair is NEGATIVE_ABSOLUTE_PROBABILISTIC",
          report.verdict is Verdict.NEGATIVE_ABSOLUTE_PROBABILISTIC, report.verdict.value)

    alg = QuotientAlgebra((F_EX, G_EX), ("x", "y"))
    check("dim of Q[x,y]/(f,g) is 6", dim_quotient(alg) == 6)
    check("codim of Q[x,y]/(f,g) is 5", codim_quotient(alg) == 5)
    check("Q[x,y]/(f,g) has no primitive element", not has_primitive_element(alg))

    d = analyze([QMatrix.diag([1, 2]), QMatrix.diag([3, 3])])
    check("commuting diagonals are CONSTRUCTED", d.verdict is Verdict.CONSTRUCTED,
          d.verdict.value)
    return results
