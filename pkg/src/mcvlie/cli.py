"""Command-line front end: JSON in, JSON (or aligned text) out, stable
formatting, deterministic seeds, and documented exit codes (0 ok, 1 input
error, 2 precondition failure, 3 internal invariant breach)."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analysis, convolution, freelie, holonomy
from .arrangement import Arrangement, Line, y_closure
from .errors import InputError, InternalInvariantError, MCVError, PreconditionError
from .exactcore import matrix_to_json, rat, rat_str
from .holonomy import PfaffianSystem


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="mcvlie", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--seed", type=int, default=None)
        return p

    p = add("closure", help="Y-closure of an arrangement")
    p.add_argument("--line", required=True)
    p.add_argument("--input", required=True)

    p = add("check", help="integrability check of a system")
    p.add_argument("--input", required=True)

    p = add("presentation", help="holonomy presentation of an arrangement")
    p.add_argument("--input", required=True)

    p = add("convolve", help="convolution of a system along a line")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--line", required=True)
    p.add_argument("--input", required=True)

    p = add("mc", help="middle convolution of a system along a line")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--line", required=True)
    p.add_argument("--input", required=True)

    p = add("analyze", help="genericity conditions and irreducibility")
    p.add_argument("--input", required=True)

    p = add("compose-check", help="composition-law certification")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--input", required=True)

    p = add("rh-check", help="integer-eigenvalue hypotheses")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--line", required=True)
    p.add_argument("--input", required=True)

    p = add("freelie", help="free Lie algebra checks")
    p.add_argument("mode", choices=("verify",))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)

    return parser


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read input: {exc}") from exc


def _parse_line(text: str) -> Line:
    try:
        return Line.of([rat(x) for x in text.split(",")])
    except (InputError, ValueError) as exc:
        raise InputError(f"bad --line value {text!r}: {exc}") from exc


def _load_arrangement(data) -> Arrangement:
    if isinstance(data, dict) and "arrangement" in data:
        data = data["arrangement"]
    if not isinstance(data, dict) or "hyperplanes" not in data:
        raise InputError("expected an arrangement JSON object")
    return Arrangement.from_json(data)


def _load_system(data) -> PfaffianSystem:
    if not isinstance(data, dict) or "residues" not in data:
        raise InputError("expected a system JSON object with residues")
    return PfaffianSystem.from_json(data)


def _load_matrix_tuple(data):
    from .exactcore import matrix_from_json

    if isinstance(data, dict) and "residues" in data:
        system = _load_system(data)
        return [system.residue(h) for h in system.arrangement.ids()]
    if isinstance(data, dict) and "matrices" in data:
        mats = [matrix_from_json(m) for m in data["matrices"]]
        if not mats:
            raise InputError("matrix tuple is empty")
        return mats
    raise InputError("expected {'matrices': [...]} or a system JSON object")


def _seed(args) -> int:
    env = os.environ.get("MCVLIE_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"bad MCVLIE_SEED {env!r}") from exc
    if args.seed is not None:
        return args.seed
    return analysis.DEFAULT_SEED


# ---------------------------------------------------------------------------
# command bodies: return (payload, exit_code)


def _cmd_closure(args):
    arr = _load_arrangement(_load_json(args.input))
    line = _parse_line(args.line)
    return y_closure(arr, line).to_json(), 0


def _cmd_check(args):
    system = _load_system(_load_json(args.input))
    violations = holonomy.check_integrability(system)
    payload = {
        "ok": not violations,
        "violations": [
            {
                "family": list(v.family),
                "member": v.member,
                "commutator": matrix_to_json(v.commutator),
            }
            for v in violations
        ],
    }
    return payload, 0 if not violations else 2


def _cmd_presentation(args):
    arr = _load_arrangement(_load_json(args.input))
    pres = holonomy.presentation(arr)
    return {
        "generators": list(pres.generators),
        "relation_families": [list(f) for f in pres.relation_families],
    }, 0


def _cmd_convolve(args):
    system = _load_system(_load_json(args.input))
    conv = convolution.haraoka_convolution(system, _parse_line(args.line), rat(args.lam))
    return conv.to_json(), 0


def _cmd_mc(args):
    system = _load_system(_load_json(args.input))
    mid = convolution.haraoka_middle_convolution(
        system, _parse_line(args.line), rat(args.lam)
    )
    return mid.to_json(), 0


def _cmd_analyze(args):
    mats = _load_matrix_tuple(_load_json(args.input))
    report = analysis.check_star_conditions(mats)
    return {
        "stars": report.to_json(),
        "irreducible": analysis.is_irreducible(mats),
    }, 0


def _cmd_compose_check(args):
    mats = _load_matrix_tuple(_load_json(args.input))
    report = analysis.composition_harness(
        mats, rat(args.lam), rat(args.mu), seed=_seed(args)
    )
    return report.to_json(), 0


def _cmd_rh_check(args):
    system = _load_system(_load_json(args.input))
    ok, offenders = analysis.rh_hypotheses(
        system, _parse_line(args.line), rat(args.lam)
    )
    return {
        "pass": ok,
        "offenders": [{"where": w, "integer": m} for w, m in offenders],
    }, 0


def _cmd_freelie(args):
    if args.n < 2:
        raise PreconditionError("--n must be at least 2")
    if args.degree < 1:
        raise PreconditionError("--degree must be at least 1")
    violations = freelie.verify_braid_relations(args.n, args.degree)
    payload = {
        "ok": not violations,
        "violations": [
            {"relation": v.relation, "word": "".join(map(str, v.word))}
            for v in violations
        ],
    }
    return payload, 0 if not violations else 3


_COMMANDS = {
    "closure": _cmd_closure,
    "check": _cmd_check,
    "presentation": _cmd_presentation,
    "convolve": _cmd_convolve,
    "mc": _cmd_mc,
    "analyze": _cmd_analyze,
    "compose-check": _cmd_compose_check,
    "rh-check": _cmd_rh_check,
    "freelie": _cmd_freelie,
}


# ---------------------------------------------------------------------------
# rendering


def _is_matrix(value) -> bool:
    return (
        isinstance(value, list)
        and value
        and all(
            isinstance(row, list) and row and all(isinstance(x, str) for x in row)
            for row in value
        )
    )


def _render_text(value, indent=0) -> str:
    pad = "  " * indent
    if _is_matrix(value):
        width = max(len(x) for row in value for x in row)
        return "\n".join(
            pad + "[ " + "  ".join(x.rjust(width) for x in row) + " ]" for row in value
        )
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            sub = value[key]
            if isinstance(sub, (dict, list)) and sub and not _is_scalar_list(sub):
                lines.append(f"{pad}{key}:")
                lines.append(_render_text(sub, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(sub)}")
        return "\n".join(lines)
    if isinstance(value, list):
        if _is_scalar_list(value):
            return pad + _inline(value)
        return "\n".join(_render_text(v, indent) for v in value)
    return pad + _inline(value)


def _is_scalar_list(value) -> bool:
    return isinstance(value, list) and all(
        not isinstance(v, (dict, list)) for v in value
    )


def _inline(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    if value is None:
        return "null"
    return str(value)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        payload, code = _COMMANDS[args.command](args)
    except InputError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        print(f"mcvlie: input error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        print(f"mcvlie: precondition failed: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        print(f"mcvlie: internal invariant breached: {exc}", file=sys.stderr)
        return 3
    except MCVError as exc:  # future error classes default to input errors
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        return 1
    if args.format == "text":
        print(_render_text(payload))
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
