"""Command-line front end.

Exit codes for ``analyze``: 0 CONSTRUCTED, 10 NEGATIVE_IN_SPAN,
11 NEGATIVE_ABSOLUTE, 12 NEGATIVE_ABSOLUTE_PROBABILISTIC, 20 UNKNOWN.
Every command exits 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .engine import Verdict, analyze
from .errors import PrimelemError
from .generators import CounterexampleSpec, frobenius_pair, random_conjugate, rho_pair
from .matrixcore import QMatrix
from .quotient import (
    DEFAULT_SEARCH_BOUND,
    GridSpec,
    MPoly,
    QuotientAlgebra,
    build_annihilator,
    codim_quotient,
    dim_quotient,
    find_primitive_linear_form,
    has_primitive_element,
    hermite_membership,
    normal_form,
)

EXIT_CODES = {
    Verdict.CONSTRUCTED: 0,
    Verdict.NEGATIVE_IN_SPAN: 10,
    Verdict.NEGATIVE_ABSOLUTE: 11,
    Verdict.NEGATIVE_ABSOLUTE_PROBABILISTIC: 12,
    Verdict.UNKNOWN: 20,
}
EXIT_INPUT_ERROR = 2


@dataclass(frozen=True)
class CliConfig:
    command: str
    input: Optional[str] = None
    trials: int = 100
    seed: int = 0
    bound: int = DEFAULT_SEARCH_BOUND
    format: str = "json"
    sub: Optional[str] = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("--trials must be >= 1")
        if self.bound < 1:
            raise ValueError("--bound must be >= 1")


def _read_json(path: Optional[str], stdin) -> object:
    if path is None:
        raise ValueError("an input path (or '-' for stdin) is required")
    text = stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return json.loads(text)


def _matrices_from_json(data) -> list[QMatrix]:
    if isinstance(data, dict) and "matrices" in data:
        data = data["matrices"]
    if not isinstance(data, list) or not data:
        raise ValueError("expected {'matrices': [...]} or a non-empty list of matrices")
    return [QMatrix.from_json(m) for m in data]


def _emit(obj, cfg: CliConfig, out, text: Optional[str] = None):
    if cfg.format == "text" and text is not None:
        print(text, file=out)
    else:
        print(json.dumps(obj, indent=2), file=out)


def cmd_analyze(cfg: CliConfig, stdin, out) -> int:
    ms = _matrices_from_json(_read_json(cfg.input, stdin))
    report = analyze(ms, trials=cfg.trials, seed=cfg.seed, bound=cfg.bound)
    lines = [f"verdict: {report.verdict.value}", f"reason: {report.reason}"]
    for k, v in report.input_summary.items():
        lines.append(f"{k}: {v}")
    _emit(report.to_dict(), cfg, out, "\n".join(lines))
    return EXIT_CODES[report.verdict]


def _parse_member_input(data):
    if not isinstance(data, dict) or "grid" not in data or "poly" not in data:
        raise ValueError("expected {'grid': ..., 'poly': [...]}")
    grid = GridSpec.from_json(data["grid"])
    return grid, MPoly.from_json(data["poly"], grid.nvars)


def cmd_quotient(cfg: CliConfig, stdin, out) -> int:
    data = _read_json(cfg.input, stdin)
    sub = cfg.sub
    if sub in ("dim", "codim", "primitive"):
        alg = QuotientAlgebra.from_json(data)
        if sub == "dim":
            result = {"dim": dim_quotient(alg)}
        elif sub == "codim":
            result = {"codim": codim_quotient(alg)}
        else:
            ok = has_primitive_element(alg)
            result = {"primitive": ok}
            if ok:
                result["linear_form"] = find_primitive_linear_form(alg, cfg.bound).to_json()
    elif sub == "member":
        grid, p = _parse_member_input(data)
        result = {"member": hermite_membership(p, grid),
                  "normal_form_zero": normal_form(p, grid.algebra()).is_zero}
    elif sub == "annihilator":
        grid, p = _parse_member_input(data)
        result = {"annihilator": build_annihilator(p, grid).to_json()}
    else:
        raise ValueError(f"unknown quotient subcommand {sub!r}")
    _emit(result, cfg, out, "\n".join(f"{k}: {v}" for k, v in result.items()))
    return 0


def cmd_generate(cfg: CliConfig, stdin, out) -> int:
    if cfg.sub == "frobenius":
        a, b = frobenius_pair()
        result = {"matrices": [a.to_json(), b.to_json()]}
    elif cfg.sub == "counterexample":
        spec = CounterexampleSpec.from_json(_read_json(cfg.input, stdin))
        a, b = rho_pair(spec)
        result = {"matrices": [a.to_json(), b.to_json()]}
        if spec.seed is not None:
            a, b, s = random_conjugate((a, b), spec.seed)
            result = {"matrices": [a.to_json(), b.to_json()], "S": s.to_json()}
    else:
        raise ValueError(f"unknown generator {cfg.sub!r}")
    _emit(result, cfg, out)
    return 0


def cmd_selftest(cfg: CliConfig, stdin, out) -> int:
    from .selftest import run_selftest

    results = run_selftest()
    for name, ok, detail in results:
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}", file=out)
    return 0 if all(ok for _, ok, _ in results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=int, default=DEFAULT_SEARCH_BOUND)
    common.add_argument("--format", choices=["json", "text"], default="json")

    parser = argparse.ArgumentParser(
        prog="primelem",
        description="Primitive elements of Q[x1..xn]/(f1(x1),...,fn(xn)) and common "
                    "source matrices for commuting families.")
    cmds = parser.add_subparsers(dest="command", required=True)

    p = cmds.add_parser("analyze", parents=[common], help="analyze a commuting family")
    p.add_argument("input", help="matrices JSON file, or - for stdin")

    p = cmds.add_parser("quotient", parents=[common], help="quotient algebra queries")
    p.add_argument("sub", choices=["dim", "codim", "primitive", "member", "annihilator"])
    p.add_argument("input", help="algebra or grid/polynomial JSON, or - for stdin")

    p = cmds.add_parser("generate", parents=[common], help="emit fixture matrices")
    p.add_argument("sub", choices=["counterexample", "frobenius"])
    p.add_argument("input", nargs="?", help="counterexample spec JSON, or - for stdin")

    cmds.add_parser("selftest", parents=[common], help="check the built-in fixtures")
    return parser


_COMMANDS = {
    "analyze": cmd_analyze,
    "quotient": cmd_quotient,
    "generate": cmd_generate,
    "selftest": cmd_selftest,
}


def main(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else 0
    try:
        cfg = CliConfig(args.command, getattr(args, "input", None), args.trials, args.seed,
                        args.bound, args.format, getattr(args, "sub", None))
        return _COMMANDS[cfg.command](cfg, stdin, stdout)
    except (ValueError, OSError) as exc:
        # json.JSONDecodeError and InputError are ValueErrors
        print(f"primelem: error: {exc}", file=stderr)
        return EXIT_INPUT_ERROR
    except PrimelemError as exc:
        print(f"primelem: {type(exc).__name__}: {exc}", file=stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
