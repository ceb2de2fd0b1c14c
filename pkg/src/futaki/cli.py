"""Command-line front end.

::

    futaki compute --input spec.json
    futaki expand  --input resolution.json [--depth N]
    futaki cubic   --input cubic.json
    futaki verify  --suite all

Exit codes: 0 success, 1 a verification check failed, 2 bad input,
3 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Mapping, Sequence, TextIO

from .adiabatic import (
    corollary_leading,
    resolution_from_json,
    theorem_expansion,
)
from .characters import Spec, spec_from_json
from .cubics import ResolutionNumbers, cubic_model, instability_report, make_action
from .engine import futaki
from .errors import FutakiError, IncompleteInput, InvalidInput
from .exact import format_rational
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_COMPUTE = 3


class InputError(Exception):
    """Problem with the invocation or its JSON; maps to exit code 2."""


def _load(path: str | None, stdin: TextIO) -> Any:
    if path is None:
        raise InputError("--input is required (use '-' for standard input)")
    try:
        if path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        # floats are never exact; refuse them at parse time
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc


def _reject_float(token: str) -> Any:
    raise InputError(f"floating-point literal {token} is not allowed; use an integer or a \"p/q\" string")


def _spec_from_input(data: Any) -> tuple[Spec, int | None, int]:
    if not isinstance(data, Mapping):
        raise InvalidInput("spec must be a JSON object")
    n = data.get("n") if data.get("kind") != "polytope" else None
    power = data.get("power", 1)
    for name, val in (("n", n), ("power", power)):
        if val is not None and (not isinstance(val, int) or isinstance(val, bool)):
            raise InvalidInput(f"{name} must be an integer")
    if data.get("kind") == "cubic":
        model = cubic_model(str(data.get("model")), data.get("beta"))
        params = data.get("params")
        if not isinstance(params, list):
            raise InvalidInput("cubic spec needs 'params' (a list of integers)")
        spec, _ = make_action(model, params)
        return spec, 3, power
    return spec_from_json(data), n, power


def run_compute(data: Any, depth: int | None) -> dict[str, Any]:
    spec, n, power = _spec_from_input(data)
    return futaki(spec, n, power=power, depth=depth).to_json()


def run_expand(data: Any, depth: int | None) -> dict[str, Any]:
    """The closed-form terms, each labelled with the inputs it used.

    The ``r^0`` and ``r^(1-n)`` terms need only the required fields; the
    ``r^-n`` term also needs ``KX_Lnminus1`` and, at every point, ``Ep_n``
    and ``delta_u_p``. When those are absent the term is reported as ``null``
    together with what is missing, rather than failing the whole request.
    """
    res = resolution_from_json(data)
    n = res.n
    depth = n if depth is None else depth
    if depth < 0:
        raise InvalidInput("--depth must be >= 0")

    missing: list[str] = []
    if res.KX_Lnminus1 is None:
        missing.append("KX_Lnminus1")
    for p in res.points:
        if p.Ep_n is None:
            missing.append(f"{p.label}.Ep_n")
        if p.delta_u_p is None:
            missing.append(f"{p.label}.delta_u_p")

    leading = corollary_leading(res)
    terms: list[dict[str, Any]] = [
        {"exponent": 0, "coefficient": format_rational(res.FXL), "requires": ["FXL"]},
        {
            "exponent": 1 - n,
            "coefficient": format_rational(leading),
            "requires": ["Ln", "u_bar", "u_p", "b_p", "KM_Ep_nminus1"],
        },
    ]
    deep: dict[str, Any] = {
        "exponent": -n,
        "requires": ["Ln", "FXL", "u_bar", "u_p", "b_p", "KX_Lnminus1", "Ep_n", "delta_u_p"],
    }
    if missing:
        deep.update(coefficient=None, missing=missing)
    else:
        deep["coefficient"] = format_rational(theorem_expansion(res)[-n])
    terms.append(deep)
    return {
        "n": n,
        "terms": [t for t in terms if t["exponent"] >= -depth],
        "corollary_leading": format_rational(leading),
        "truncation_order": -min(depth, n),
    }


def run_cubic(data: Any) -> dict[str, Any]:
    if not isinstance(data, Mapping):
        raise InvalidInput("cubic request must be a JSON object")
    if "model" not in data:
        raise InvalidInput("cubic request needs 'model' (F_Delta or F_AB)")
    if "numbers" not in data:
        raise IncompleteInput("cubic request needs 'numbers' keyed by point label")
    model = cubic_model(str(data["model"]), data.get("beta"))
    nums = ResolutionNumbers.from_json(data["numbers"])
    params = data.get("params")
    if params is not None and not isinstance(params, list):
        raise InvalidInput("'params' must be a list of integers")
    if params is not None:
        make_action(model, params)
    report = instability_report(model, nums, params)
    out = report.to_json()
    if model.beta is not None:
        out["beta"] = format_rational(model.beta)
    return out


def run_verify(suite: str) -> tuple[dict[str, Any], bool]:
    checks = run_suite(suite)
    passed = all(c.passed for c in checks)
    return {
        "suite": suite,
        "passed": passed,
        "checks": [c.to_json() for c in checks],
    }, passed


# -- rendering ---------------------------------------------------------------


def _dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _text(obj: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(obj, Mapping):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (Mapping, list)) and val:
                lines.append(f"{pad}{key}:")
                lines.extend(_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (Mapping, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(val: Any) -> str:
    if val is None:
        return "-"
    if isinstance(val, bool):
        return "yes" if val else "no"
    if isinstance(val, (list, dict)):
        return "[]" if isinstance(val, list) else "{}"
    return str(val)


def _verify_text(result: Mapping[str, Any]) -> str:
    lines = []
    for c in result["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        lines.append(f"[{mark}] criterion {c['criterion']}: {c['name']}")
    total = len(result["checks"])
    ok = sum(c["passed"] for c in result["checks"])
    lines.append(f"{ok}/{total} checks passed")
    return "\n".join(lines) + "\n"


def render(obj: Mapping[str, Any], fmt: str, command: str) -> str:
    if fmt == "json":
        return _dump_json(obj)
    if command == "verify":
        return _verify_text(obj)
    return "\n".join(_text(obj)) + "\n"


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="futaki",
        description="Exact Futaki invariants and adiabatic K-instability checks.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("compute", parents=[common], help="Futaki invariant of a spec")
    p.add_argument("--input", metavar="PATH", help="JSON spec file, or '-' for stdin")
    p.add_argument("--depth", type=int, metavar="N", help="expansion terms below k^0")

    p = sub.add_parser("expand", parents=[common], help="adiabatic expansion of F(M, L_r)")
    p.add_argument("--input", metavar="PATH", help="JSON resolution data, or '-' for stdin")
    p.add_argument("--depth", type=int, metavar="N", help="keep terms down to r^-N")

    p = sub.add_parser("cubic", parents=[common], help="instability report for a cubic threefold")
    p.add_argument("--input", metavar="PATH", help="JSON request, or '-' for stdin")

    p = sub.add_parser("verify", parents=[common], help="run built-in verification suites")
    p.add_argument("--suite", default="all", metavar="NAME", help=f"one of {', '.join(SUITES)}")
    return parser


def main(
    argv: Sequence[str] | None = None,
    stdin: TextIO | None = None,
    stdout: TextIO | None = None,
    stderr: TextIO | None = None,
) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors already
        return int(exc.code or 0)

    handlers: dict[str, Callable[[], tuple[dict[str, Any], bool]]] = {
        "compute": lambda: (run_compute(_load(args.input, stdin), args.depth), True),
        "expand": lambda: (run_expand(_load(args.input, stdin), args.depth), True),
        "cubic": lambda: (run_cubic(_load(args.input, stdin)), True),
        "verify": lambda: run_verify(args.suite),
    }
    if args.command == "verify" and args.suite not in SUITES:
        print(f"futaki: unknown suite {args.suite!r}; expected one of {', '.join(SUITES)}", file=stderr)
        return EXIT_INPUT
    if getattr(args, "depth", None) is not None and args.depth < 0:
        print("futaki: --depth must be >= 0", file=stderr)
        return EXIT_INPUT

    try:
        result, ok = handlers[args.command]()
    except (InputError, InvalidInput, IncompleteInput) as exc:
        print(f"futaki: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except FutakiError as exc:
        print(f"futaki: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_COMPUTE
    stdout.write(render(result, args.format, args.command))
    return EXIT_OK if ok else EXIT_CHECK_FAILED


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
