"""Batch command-line front end.

Exit codes: 0 success, 2 user error (unreadable input, parse or validation
failure, failed comparison requested by the user), 3 internal invariant
breach (a result that the algorithm guarantees failed to hold).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, Tuple

from .at_model import DGModule, compute_at_model, validate_module
from .differential import DGAlgebra, validate_sullivan
from .dsl import DslError, emit_machine, emit_report, format_linear, parse
from .graded_algebra import in_lambda_geq2
from .homology_oracle import NotClosedError, cohomology_dims, compare_cohomology, module_homology_dims
from .minimal_model import InternalInvariantError, SullivanValidationError, compute_minimal_model
from .morphisms import check_contraction

EXIT_OK = 0
EXIT_USER = 2
EXIT_INTERNAL = 3


@dataclass(frozen=True)
class RunConfig:
    command: str                 # validate | minimize | at-model | homology | verify
    input_path: str
    max_degree: int = 10
    output_format: str = "report"   # report | machine
    output_path: Optional[str] = None
    against_path: Optional[str] = None


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def run(config: RunConfig) -> Tuple[int, str, str]:
    """Execute one command; returns (exit status, stdout text, stderr text)."""
    if config.max_degree < 1:
        return EXIT_USER, "", "max-degree must be >= 1\n"
    try:
        text = _read(config.input_path)
    except OSError as exc:
        return EXIT_USER, "", f"cannot read {config.input_path}: {exc.strerror}\n"
    try:
        parsed = parse(text)
    except DslError as exc:
        return EXIT_USER, "", f"{config.input_path}: {exc}\n"

    try:
        if config.command == "validate":
            return _cmd_validate(parsed, config)
        if config.command == "minimize":
            return _cmd_minimize(parsed, config)
        if config.command == "at-model":
            return _cmd_at_model(parsed, config)
        if config.command == "homology":
            return _cmd_homology(parsed, config)
        if config.command == "verify":
            return _cmd_verify(parsed, config)
    except SullivanValidationError as exc:
        return EXIT_USER, "", f"{config.input_path}: invalid input:\n{exc}\n"
    except InternalInvariantError as exc:
        return EXIT_INTERNAL, "", f"internal invariant breach: {exc}\n"
    except NotClosedError as exc:
        return EXIT_USER, "", f"{config.input_path}: {exc}\n"
    return EXIT_USER, "", f"unknown command {config.command!r}\n"


def _cmd_validate(parsed, config: RunConfig) -> Tuple[int, str, str]:
    if isinstance(parsed, DGModule):
        problems = validate_module(parsed)
        if problems:
            return EXIT_USER, "", "".join(p + "\n" for p in problems)
        return EXIT_OK, "valid\n", ""
    report = validate_sullivan(parsed)
    if report.ok:
        return EXIT_OK, "valid\n", ""
    return EXIT_USER, "", str(report) + "\n"


def _require_algebra(parsed, what: str):
    if not isinstance(parsed, DGAlgebra):
        raise SullivanValidationError(f"{what} needs an algebra-mode input")


def _cmd_minimize(parsed, config: RunConfig) -> Tuple[int, str, str]:
    _require_algebra(parsed, "minimize")
    contraction = compute_minimal_model(parsed)
    out = emit_machine(contraction) if config.output_format == "machine" \
        else emit_report(contraction)
    return EXIT_OK, out, ""


def _cmd_at_model(parsed, config: RunConfig) -> Tuple[int, str, str]:
    if not isinstance(parsed, DGModule):
        return EXIT_USER, "", "at-model needs a module-mode input\n"
    model = compute_at_model(parsed)
    lines = ["H = {" + ", ".join(parsed.name(h) for h in model.H) + "}"]
    for i in range(len(parsed.generators)):
        lines.append(f"f {parsed.name(i)} = {format_linear(parsed, model.f[i])}")
    for h in model.H:
        lines.append(f"g {parsed.name(h)} = {format_linear(parsed, model.g[h])}")
    for i in range(len(parsed.generators)):
        lines.append(f"phi {parsed.name(i)} = {format_linear(parsed, model.phi[i])}")
    for i, j in model.pairs:
        lines.append(f"pair {parsed.name(i)} {parsed.name(j)}")
    return EXIT_OK, "\n".join(lines) + "\n", ""


def _dims_of(parsed, config: RunConfig):
    if isinstance(parsed, DGModule):
        return module_homology_dims(parsed, config.max_degree)
    return cohomology_dims(parsed, None, config.max_degree)


def _cmd_homology(parsed, config: RunConfig) -> Tuple[int, str, str]:
    dims = _dims_of(parsed, config)
    if config.against_path is None:
        out = "".join(f"H^{p}: {d}\n" for p, d in dims)
        return EXIT_OK, out, ""
    try:
        other_text = _read(config.against_path)
        other = parse(other_text)
    except OSError as exc:
        return EXIT_USER, "", f"cannot read {config.against_path}: {exc.strerror}\n"
    except DslError as exc:
        return EXIT_USER, "", f"{config.against_path}: {exc}\n"
    other_dims = _dims_of(other, config)
    lines = []
    first_mismatch = None
    for (p, da), (_, db) in zip(dims, other_dims):
        mark = "" if da == db else "   <- mismatch"
        if da != db and first_mismatch is None:
            first_mismatch = p
        lines.append(f"H^{p}: {da} vs {db}{mark}")
    if first_mismatch is None:
        lines.append("equal")
        return EXIT_OK, "\n".join(lines) + "\n", ""
    lines.append(f"first mismatch at degree {first_mismatch}")
    return EXIT_USER, "\n".join(lines) + "\n", ""


def _cmd_verify(parsed, config: RunConfig) -> Tuple[int, str, str]:
    _require_algebra(parsed, "verify")
    contraction = compute_minimal_model(parsed)
    lines = [f"minimize: ok ({len(contraction.W)} surviving generators, "
             f"{len(contraction.pairs)} pairs)"]
    ok = True
    report = check_contraction(contraction, config.max_degree)
    for check in report.checks:
        lines.append(f"identity {check}")
        ok = ok and check.ok
    sig = contraction.sig
    minimal = all(
        in_lambda_geq2(sig, contraction.dW.get(w, {}), contraction.W)
        for w in contraction.W)
    lines.append(f"minimality: {'pass' if minimal else 'FAIL'}")
    ok = ok and minimal
    comparison = compare_cohomology(
        (parsed, None), (DGAlgebra(sig, contraction.dW), contraction.W),
        config.max_degree)
    lines.append(f"cohomology match (degree <= {config.max_degree}): "
                 f"{'pass' if comparison.equal else 'FAIL'}")
    if not comparison.equal:
        lines.append(str(comparison))
    ok = ok and comparison.equal
    out = "\n".join(lines) + "\n"
    if ok:
        return EXIT_OK, out, ""
    return EXIT_INTERNAL, out, "verification failed\n"


def _write_output(config: RunConfig, out: str) -> Optional[str]:
    if config.output_path is None or not out:
        return None
    try:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(out)
    except OSError as exc:
        return f"cannot write {config.output_path}: {exc.strerror}\n"
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sulmin",
        description="Minimal models of free graded-commutative DG-algebras "
                    "with certifying contractions.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("validate", "check the ordered-input contract"),
        ("minimize", "compute the minimal model and contraction"),
        ("at-model", "contract a module-mode input onto its homology"),
        ("homology", "degreewise cohomology dimensions"),
        ("verify", "minimize, then check every certificate identity"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input", help="source file")
        p.add_argument("--max-degree", type=int, default=10, metavar="N",
                       help="degree cap for checks and homology (default 10)")
        p.add_argument("--output", metavar="PATH", help="write stdout text to a file")
        if name == "minimize":
            p.add_argument("--format", choices=["report", "machine"],
                           default="report", help="output flavor")
        if name == "homology":
            p.add_argument("--against", metavar="FILE",
                           help="compare against a second input")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command,
        input_path=args.input,
        max_degree=args.max_degree,
        output_format=getattr(args, "format", "report"),
        output_path=args.output,
        against_path=getattr(args, "against", None),
    )
    code, out, err = run(config)
    write_err = _write_output(config, out)
    if config.output_path is None:
        sys.stdout.write(out)
    if write_err:
        err += write_err
        code = code or EXIT_USER
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
