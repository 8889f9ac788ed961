"""Command-line front end: JSON algebra documents in, deterministic reports out.

Exit codes: 0 success, 1 input error, 2 numeric failure, 3 a verdict or
spectrum that is not exactly certified while ``--strict`` is set.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .algebra import (
    Element,
    EvolutionAlgebra,
    annihilator,
    is_nonzero_trivial,
    product,
    unit_of,
)
from .descent import descendants, descent_graph, first_generation, nth_generation
from .errors import DocumentError, InvalidInputError, NumericFailureError
from .exactla import DEFAULT_TOL
from .gscalar import GScalar
from .radical import (
    IdealDescriptor,
    is_modular_ideal_support,
    jacobson_radical,
    maximal_modular_ideals,
)
from .spectra import (
    SemisimplicityVerdict,
    SpectrumResult,
    m_semisimple_check,
    m_spectrum,
    quasi_inverse,
    spectral_radii,
    spectrally_semisimple_check,
    spectrum,
)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_UNDETERMINED = 0, 1, 2, 3
UNCERTAIN_VALUES = {"probably_yes", "probably_no", "undetermined"}


# ------------------------------------------------------------- documents


def _parse_cell(cell: Any, path: str) -> GScalar:
    try:
        if isinstance(cell, bool) or isinstance(cell, float):
            raise InvalidInputError("floating-point and boolean cells are not exact; use a string like \"1/3\"")
        if isinstance(cell, int):
            return GScalar(cell)
        if isinstance(cell, str):
            return GScalar.parse(cell)
        if isinstance(cell, dict):
            extra = set(cell) - {"re", "im"}
            if extra:
                raise InvalidInputError(f"unexpected keys {sorted(extra)}")
            re = _parse_cell(cell.get("re", "0"), path + ".re")
            im = _parse_cell(cell.get("im", "0"), path + ".im")
            if not (re.is_real and im.is_real):
                raise InvalidInputError("re and im must be real")
            return GScalar(re.re, im.re)
    except DocumentError:
        raise
    except InvalidInputError as exc:
        raise DocumentError.at(path, str(exc)) from None
    raise DocumentError.at(path, f"unsupported cell {cell!r}")


def parse_algebra_document(text: str) -> EvolutionAlgebra:
    """Parse ``{"dimension": n, "matrix": [[...]], "labels": [...]}``; ``matrix[k][i]`` is the coefficient of e_(k+1) in e_(i+1)^2."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError.at(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise DocumentError.at("$", "document must be a JSON object")
    n = doc.get("dimension")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError.at("dimension", "must be a positive integer")
    matrix = doc.get("matrix")
    if not isinstance(matrix, list) or len(matrix) != n:
        raise DocumentError.at("matrix", f"expected {n} rows")
    rows = []
    for k, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != n:
            raise DocumentError.at(f"matrix[{k}]", f"expected {n} entries")
        rows.append([_parse_cell(c, f"matrix[{k}][{i}]") for i, c in enumerate(row)])
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
            raise DocumentError.at("labels", f"expected {n} strings")
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict) or not all(isinstance(v, str) for v in metadata.values()):
        raise DocumentError.at("metadata", "must map strings to strings")
    return EvolutionAlgebra.from_matrix(rows, labels)


def dump_algebra_document(A: EvolutionAlgebra, metadata: dict[str, str] | None = None) -> str:
    doc: dict[str, Any] = {
        "dimension": A.n,
        "matrix": [[str(A.matrix[k, i]) for i in range(A.n)] for k in range(A.n)],
    }
    if A.labels is not None:
        doc["labels"] = list(A.labels)
    if metadata:
        doc["metadata"] = dict(metadata)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_element(text: str, n: int) -> Element:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise InvalidInputError(f"element {text!r} has {len(parts)} coordinates, expected {n}")
    return Element(tuple(GScalar.parse(p) for p in parts))


def parse_index_set(text: str) -> frozenset[int]:
    try:
        return frozenset(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise InvalidInputError(f"malformed index list {text!r}") from None


# --------------------------------------------------------------- reports


@dataclass
class Report:
    command: str
    input_digest: str
    results: dict[str, Any] = field(default_factory=dict)
    certainty: str = "exact"
    warnings: list[str] = field(default_factory=list)
    error: str | None = None

    def as_dict(self) -> dict[str, Any]:
        out = {
            "command": self.command,
            "input_digest": self.input_digest,
            "results": self.results,
            "certainty": self.certainty,
            "warnings": self.warnings,
        }
        if self.error is not None:
            out["error"] = self.error
        return _jsonable(out)


def _float(x: float) -> float:
    return float(f"{x:.12g}")


def _jsonable(x: Any) -> Any:
    if isinstance(x, GScalar):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Element):
        return [str(c) for c in x.coeffs]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return _float(x)
    if isinstance(x, complex):
        return {"re": _float(x.real), "im": _float(x.imag)}
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _flatten(prefix: str, x: Any, out: list[str]) -> None:
    if isinstance(x, dict) and x:
        for k in sorted(x):
            _flatten(f"{prefix}.{k}" if prefix else k, x[k], out)
    else:
        out.append(f"{prefix} = {json.dumps(x, sort_keys=True)}")


def emit_report(r: Report | list[Report], fmt: str = "json") -> str:
    if isinstance(r, list):
        if fmt == "json":
            return json.dumps([x.as_dict() for x in r], sort_keys=True, indent=2) + "\n"
        return "\n".join(emit_report(x, fmt) for x in r)
    d = r.as_dict()
    if fmt == "json":
        return json.dumps(d, sort_keys=True, indent=2) + "\n"
    lines: list[str] = []
    _flatten("", d, lines)
    return "\n".join(lines) + "\n"


# -------------------------------------------------------------- commands


def _ideal_json(ideal: IdealDescriptor) -> dict[str, Any]:
    out: dict[str, Any] = {"support": ideal.support, "basis_kind": ideal.basis_kind}
    if ideal.basis_kind == "vector_span":
        out["generators"] = list(ideal.generators)
    if ideal.modular_unit is not None:
        out["modular_unit"] = ideal.modular_unit
    return out


def _verdict_json(v: SemisimplicityVerdict) -> dict[str, Any]:
    out: dict[str, Any] = {
        "value": v.value,
        "witnesses": [
            {"index": w.index, "element": w.element, "eigenvalue": w.eigenvalue, "eigenvalue_exact": w.exact}
            for w in v.witnesses
        ],
    }
    if v.counterexample is not None:
        idx, ideal = v.counterexample
        out["counterexample"] = {"index": idx, "ideal": _ideal_json(ideal)}
    if v.notes:
        out["notes"] = list(v.notes)
    return out


def _spectrum_json(s: SpectrumResult) -> dict[str, Any]:
    out: dict[str, Any] = {
        "exact_points": list(s.exact_points),
        "numeric_points": list(s.numeric_points),
        "contains_zero": s.contains_zero,
        "certainty": s.certainty,
    }
    if s.residual is not None and s.residual.degree >= 1:
        out["residual"] = str(s.residual)
    if s.membership:
        out["candidates"] = [
            {"point": m.point, "in_spectrum": m.in_spectrum, "method": m.method} for m in s.membership
        ]
    return out


def _cmd_classify(A, args, report: Report) -> None:
    rad = jacobson_radical(A)
    m = m_semisimple_check(A, args.trials, args.seed, args.tol)
    s = spectrally_semisimple_check(A, args.trials, args.seed, args.tol)
    report.results = {
        "dimension": A.n,
        "unit": unit_of(A),
        "annihilator": annihilator(A),
        "degenerate": bool(annihilator(A)),
        "nonzero_trivial": is_nonzero_trivial(A),
        "modular_indexes": rad.modular_indexes,
        "radical_support": rad.radical_support,
        "classification": rad.classification,
        "quotient_diag": list(rad.quotient_diag),
        "semisimple": rad.classification == "semisimple",
        "m_semisimple": _verdict_json(m),
        "spectrally_semisimple": _verdict_json(s),
    }
    for name, v in (("m_semisimple", m), ("spectrally_semisimple", s)):
        if v.value in UNCERTAIN_VALUES:
            report.certainty = "probabilistic" if v.value.startswith("probably") else "undetermined"
            report.warnings.append(f"{name} verdict is {v.value}")


def _cmd_radical(A, args, report: Report) -> None:
    rad = jacobson_radical(A)
    report.results = {
        "modular_indexes": rad.modular_indexes,
        "radical_support": rad.radical_support,
        "classification": rad.classification,
        "quotient_diag": list(rad.quotient_diag),
    }


def _cmd_ideals(A, args, report: Report) -> None:
    report.results = {"maximal_modular_ideals": [_ideal_json(m) for m in maximal_modular_ideals(A)]}
    if args.validate_support is not None:
        support = parse_index_set(args.validate_support)
        check = is_modular_ideal_support(A, support)
        report.results["validation"] = {"support": support, "valid": check.valid, "unit": check.unit}


def _cmd_spectrum(A, args, report: Report) -> None:
    a = parse_element(args.element, A.n)
    m = m_spectrum(A, a, args.mode, args.tol)
    report.results = {"element": a, "m_spectrum": _spectrum_json(m)}
    uncertain = [m.certainty]
    if not args.m_only:
        s = spectrum(A, a, args.mode, args.tol, m_result=m)
        report.results["spectrum"] = _spectrum_json(s)
        uncertain.append(s.certainty)
        # points of the m-spectrum that the quasi-inverse test excludes from the spectrum
        report.results["m_only_points"] = [x.point for x in s.membership if not x.in_spectrum]
        if args.mode == "exact":
            radii = spectral_radii(A, a, args.tol)
            report.results["spectral_radii"] = radii._asdict()
    if "numeric" in uncertain:
        report.certainty = "numeric"
        report.warnings.append("all points computed in floating point")
    elif "mixed" in uncertain:
        report.certainty = "mixed"
        report.warnings.append("irrational eigenvalues approximated numerically")


def _cmd_descendants(A, args, report: Report) -> None:
    G = descent_graph(A)
    report.results = {
        "index": args.index,
        "first_generation": first_generation(G, args.index),
        "descendants": descendants(G, args.index),
    }
    if args.generation is not None:
        report.results["generation"] = {
            "m": args.generation,
            "indexes": nth_generation(G, args.index, args.generation),
        }


def _cmd_product(A, args, report: Report) -> None:
    a, b = parse_element(args.a, A.n), parse_element(args.b, A.n)
    report.results = {"a": a, "b": b, "product": product(A, a, b)}


def _cmd_quasi_inverse(A, args, report: Report) -> None:
    a = parse_element(args.element, A.n)
    b = quasi_inverse(A, a)
    report.results = {"element": a, "quasi_invertible": b is not None, "quasi_inverse": b}


COMMANDS = {
    "classify": _cmd_classify,
    "radical": _cmd_radical,
    "ideals": _cmd_ideals,
    "spectrum": _cmd_spectrum,
    "descendants": _cmd_descendants,
    "product": _cmd_product,
    "quasi-inverse": _cmd_quasi_inverse,
}

GLOBAL_DEFAULTS = {"format": "json", "trials": 32, "tol": DEFAULT_TOL, "strict": False}


class _Parser(argparse.ArgumentParser):
    """Usage errors become input errors (exit 1) instead of argparse's exit 2."""

    def error(self, message):
        raise InvalidInputError(f"{self.prog}: {message}")


VALUE_FLAGS = ("--element", "--a", "--b", "--validate-support")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    # "--element -1/2,3" would otherwise read "-1/2,3" as an option
    out, i = [], 0
    argv = list(argv)
    while i < len(argv):
        if argv[i] in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS lets the same flags appear before or after the subcommand
    p = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--format", choices=["json", "text"])
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--strict", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = _Parser(prog="evolkit", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "classify": "unit, degeneracy, radical, quotient and semisimplicity verdicts",
        "radical": "modular indexes and Jacobson radical",
        "ideals": "maximal modular ideals; optionally validate a support",
        "spectrum": "spectrum and m-spectrum of an element",
        "descendants": "descendant sets of an index",
        "product": "product of two elements",
        "quasi-inverse": "quasi-inverse of an element",
    }
    subs = {}
    for name, help_text in specs.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("files", nargs="+", metavar="FILE")
        subs[name] = sp
    subs["ideals"].add_argument("--validate-support", default=None, metavar="I,J,...")
    subs["spectrum"].add_argument("--element", required=True)
    subs["spectrum"].add_argument("--m-only", action="store_true", default=False)
    subs["spectrum"].add_argument("--mode", choices=["exact", "numeric"], default="exact")
    subs["descendants"].add_argument("--index", type=int, required=True)
    subs["descendants"].add_argument("--generation", type=int, default=None)
    subs["product"].add_argument("--a", required=True)
    subs["product"].add_argument("--b", required=True)
    subs["quasi-inverse"].add_argument("--element", required=True)
    return parser


def _resolve_defaults(args: argparse.Namespace) -> None:
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if not hasattr(args, "seed"):
        env = os.environ.get("EVOLKIT_SEED")
        try:
            args.seed = int(env) if env else 0
        except ValueError:
            raise InvalidInputError(f"EVOLKIT_SEED must be an integer, got {env!r}") from None


def _run_file(path: str, args: argparse.Namespace) -> tuple[int, Report]:
    report = Report(args.command, "")
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        report.error = f"cannot read {path}: {exc.strerror}"
        return EXIT_INPUT, report
    report.input_digest = "sha256:" + hashlib.sha256(data).hexdigest()
    try:
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError:
            raise DocumentError.at("$", "input is not UTF-8") from None
        A = parse_algebra_document(text)
        COMMANDS[args.command](A, args, report)
    except InvalidInputError as exc:
        report.error = str(exc)
        return EXIT_INPUT, report
    except NumericFailureError as exc:
        report.error = f"numeric failure: {exc}"
        return EXIT_NUMERIC, report
    if args.strict and report.certainty != "exact":
        return EXIT_UNDETERMINED, report
    return EXIT_OK, report


def _execute(argv: Sequence[str]) -> tuple[int, list[Report], argparse.Namespace]:
    args = build_parser().parse_args(_glue_negative_values(argv))
    _resolve_defaults(args)
    if args.trials < 1:
        raise InvalidInputError("--trials must be at least 1")
    if args.tol <= 0:
        raise InvalidInputError("--tol must be positive")
    code, reports = EXIT_OK, []
    for path in args.files:
        c, r = _run_file(path, args)
        code = max(code, c)
        reports.append(r)
    return code, reports, args


def run(argv: Sequence[str]) -> tuple[int, list[Report]]:
    """Parse ``argv`` and process every FILE in order. Returns the worst exit code."""
    code, reports, _ = _execute(argv)
    return code, reports


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        code, reports, args = _execute(argv)
    except InvalidInputError as exc:
        print(f"evolkit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for r in reports:
        if r.error:
            print(f"evolkit: {r.error}", file=sys.stderr)
    out = reports[0] if len(reports) == 1 else reports
    sys.stdout.write(emit_report(out, args.format))
    return code
