"""Command-line front end: energies, eigenfunction samples, critical polynomials, verification, sweeps.

Exit codes: 0 success, 1 bad input (the message names the parameter), 2 failed verification.
"""

import argparse
import csv
import io
import json
import re
import sys

import numpy as np

from .elliptic import M_MAX, EllipticModulus
from .errors import DomainError
from .lamefun import Branch, build_eigenfunctions, evaluate, select
from .polyfam import FamilyTag, Kind, LameIndex, critical_polynomial
from .spectrum import family_energies
from .verify import check_structure

_LAMBDA_RE = re.compile(r"^\s*(\d+)(?:\s*/\s*(\d+))?\s*$")
_K_TERM = re.compile(r"^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?(?:[eE][+-]?\d+)?)\s*\*?\s*K$")
_VALUE_OPTS = ("--range", "--m-grid")


class UsageError(Exception):
    """Bad command-line input; carries the offending parameter."""

    def __init__(self, param, message):
        super().__init__(f"{param}: {message}")
        self.param = param


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("arguments", message)


# --------------------------------------------------------------------------
# parameter parsing


def parse_lambda(text: str) -> LameIndex:
    """Exact parse of "p" or "p/q" (the value must be an integer or half-integer)."""
    match = _LAMBDA_RE.match(text)
    if not match:
        raise UsageError("--lambda", f"expected an integer or half-integer like 2 or 3/2, got {text!r}")
    num, den = int(match.group(1)), int(match.group(2) or 1)
    if den == 0 or (2 * num) % den != 0:
        raise UsageError("--lambda", f"{text!r} is neither an integer nor a half-integer")
    return LameIndex(2 * num // den)


def parse_m(text, param="--m") -> float:
    try:
        m = float(text)
    except (TypeError, ValueError):
        raise UsageError(param, f"not a number: {text!r}") from None
    if not 0.0 < m <= M_MAX:
        raise UsageError(param, f"m={m!r} must satisfy 0 < m <= 1 - 1e-12")
    return m


def _range_end(token: str, bigK: float) -> float:
    token = token.strip()
    match = _K_TERM.match(token)
    if match:
        coeff = match.group(1)
        factor = -1.0 if coeff == "-" else 1.0 if coeff in ("", "+") else float(coeff)
        return factor * bigK
    return float(token)


def parse_range(text: str, bigK: float):
    """'-2K:2K', '0:4K', '-1.5K:K' or plain numbers '0:3.7'."""
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError("--range", f"expected start:stop, got {text!r}")
    try:
        lo, hi = (_range_end(p, bigK) for p in parts)
    except ValueError:
        raise UsageError("--range", f"cannot parse {text!r}") from None
    if not (np.isfinite(lo) and np.isfinite(hi)) or hi < lo:
        raise UsageError("--range", f"need finite start <= stop, got {text!r}")
    return lo, hi


def parse_m_grid(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("--m-grid", f"expected start:stop:count, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError("--m-grid", f"cannot parse {text!r}") from None
    if count < 1:
        raise UsageError("--m-grid", "count must be at least 1")
    grid = np.linspace(start, stop, count)
    for m in grid:
        parse_m(m, "--m-grid")
    return grid


def _families(idx: LameIndex, family):
    if family is None:
        return idx.families
    try:
        tag = FamilyTag.parse(family)
        idx.check_family(tag)
    except DomainError as exc:
        raise UsageError("--family", str(exc)) from None
    return (tag,)


# --------------------------------------------------------------------------
# output


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, output):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# --------------------------------------------------------------------------
# subcommands


def cmd_energies(args) -> int:
    idx, m = parse_lambda(args.__dict__["lambda"]), parse_m(args.m)
    rows = []
    for family in _families(idx, args.family):
        for i, E in enumerate(family_energies(family, idx, m)):
            rows.append((family.value, i, float(E)))
    if args.format == "json":
        results = [{"family": f, "index": i, "energy": E} for f, i, E in rows]
        text = _json_text({"lambda": str(idx), "m": m, "results": results})
    else:
        text = _csv_text(["E", "family", "index"], [(E, f, i) for f, i, E in rows])
    _emit(text, args.output)
    return 0


def cmd_eigenfunction(args) -> int:
    idx, m = parse_lambda(args.__dict__["lambda"]), parse_m(args.m)
    if args.samples < 2:
        raise UsageError("--samples", f"need at least 2 samples, got {args.samples}")
    family = _families(idx, args.family)[0]
    count = idx.n(family) + 1
    if not 0 <= args.index < count:
        raise UsageError("--index", f"index {args.index} outside 0..{count - 1} for {family.value}, lambda={idx}")
    branch = None
    if idx.kind is Kind.HALF_INTEGER:
        if args.branch not in (1, 2):
            raise UsageError("--branch", f"branch must be 1 or 2, got {args.branch}")
        branch = Branch(args.branch)
    mod = EllipticModulus(m)
    lo, hi = parse_range(args.range, mod.bigK)
    spec = select(build_eigenfunctions(idx, m), family, args.index, branch)
    x = np.linspace(lo, hi, args.samples)
    psi = np.atleast_1d(evaluate(spec, x))
    if args.format == "json":
        samples = [{"x": float(a), "psi": float(b)} for a, b in zip(x, psi)]
        text = _json_text({"lambda": str(idx), "m": m, "spec": spec.describe(), "results": samples})
    else:
        text = _csv_text(["x", "psi"], zip(x, psi))
    _emit(text, args.output)
    return 0


def cmd_critical_poly(args) -> int:
    idx, m = parse_lambda(args.__dict__["lambda"]), parse_m(args.m)
    polys = [(f, critical_polynomial(f, idx, m).coef) for f in _families(idx, args.family)]
    if args.format == "json":
        results = [{"family": f.value, "coefficients": [float(c) for c in coef]} for f, coef in polys]
        text = _json_text({"lambda": str(idx), "m": m, "results": results})
    else:
        rows = [(f.value, k, float(c)) for f, coef in polys for k, c in enumerate(coef)]
        text = _csv_text(["family", "power", "coefficient"], rows)
    _emit(text, args.output)
    return 0


def cmd_verify(args) -> int:
    idx, m = parse_lambda(args.__dict__["lambda"]), parse_m(args.m)
    report = check_structure(idx, m)
    if args.format == "csv":
        rows = [(c.name, c.measured, c.tolerance, c.bound, str(c.passed).lower()) for c in report.checks]
        text = _csv_text(["name", "measured", "tolerance", "bound", "pass"], rows)
    else:
        text = report.to_json() + "\n"
    _emit(text, args.output)
    return 0 if report.overall else 2


def cmd_sweep(args) -> int:
    idx = parse_lambda(args.__dict__["lambda"])
    grid = parse_m_grid(args.m_grid)
    families = _families(idx, args.family)
    rows = []
    for m in grid:
        for family in families:
            for i, E in enumerate(family_energies(family, idx, float(m))):
                rows.append((float(m), family.value, i, float(E)))
    if args.format == "json":
        results = [{"m": m, "family": f, "index": i, "energy": E} for m, f, i, E in rows]
        text = _json_text({"lambda": str(idx), "results": results})
    else:
        text = _csv_text(["m", "family", "index", "E"], rows)
    _emit(text, args.output)
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lamealg", description="Algebraic spectrum and eigenfunctions of the Lame equation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, with_m=True, default_format="csv"):
        p.add_argument("--lambda", required=True, help='lambda as "p" or "p/2"')
        if with_m:
            p.add_argument("--m", required=True, help="parameter m = k^2, 0 < m < 1")
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        p.add_argument("--output", default=None, help="output path (default: stdout)")

    p = sub.add_parser("energies", help="algebraic energies per family")
    common(p)
    p.add_argument("--family", default=None)
    p.set_defaults(func=cmd_energies)

    p = sub.add_parser("eigenfunction", help="sample one eigenfunction on a grid")
    common(p)
    p.add_argument("--family", default=None)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--branch", type=int, default=1, help="1 or 2 (half-integer lambda only)")
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--range", default="-2K:2K", help="interval, may use K, e.g. -2K:2K")
    p.set_defaults(func=cmd_eigenfunction)

    p = sub.add_parser("critical-poly", help="coefficients of the critical polynomial, ascending powers")
    common(p)
    p.add_argument("--family", default=None)
    p.set_defaults(func=cmd_critical_poly)

    p = sub.add_parser("verify", help="run the invariant battery for one (lambda, m)")
    common(p, default_format="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="band-edge energies over a grid of m")
    common(p, with_m=False)
    p.add_argument("--family", default=None)
    p.add_argument("--m-grid", required=True, help="start:stop:count")
    p.set_defaults(func=cmd_sweep)
    return parser


def _join_values(argv):
    """Glue '--range -2K:2K' into '--range=-2K:2K' so argparse does not read it as a flag."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_join_values(argv))
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
