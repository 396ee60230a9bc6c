"""kmx command-line front end.

Every subcommand prints one deterministic JSON document (sorted keys,
rationals as "p/q" strings, complex scalars as ["re", "im"] pairs).
Exit codes: 0 success, 1 domain error with an {"error": ...} payload,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .affine import LoopElement, bracket, untwisted_basis
from .cartan import Classification, classify, validate_gcm
from .errors import KmxError
from .rootdata import catalog, enumerate_roots
from .scalars import format_rational, parse_rational, parse_scalar
from .unitary import (
    ElementarySpec,
    ExceptionalSpec,
    HermitianSymmetricData,
    LoopParabolicSpec,
    NaturalParabolicSpec,
    finite_algebra,
)
from .verma import GramCertificate, StandardBorelSpec, Verdict, check_unitarizable, gram, weight_spaces
from .weights import fundamental_weights, integrable_spec

__all__ = ["main", "dispatch", "build_parser", "RunConfig", "SCHEMAS", "dumps"]

AFFINE_DEPTH = 3
EXCEPTIONAL_DEPTH = 1
ELEMENTARY_DEPTH = 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    rank: int | None = None
    twist: int | None = None
    depth: int | None = None
    window: int | None = None
    weight: tuple | None = None
    omega: str = "compact"
    output: str | None = None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _int_list(text: str) -> list[Fraction]:
    try:
        return [parse_rational(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad weight list {text!r}: {e}") from None


def _load_json(text_or_path: str):
    """Inline JSON, or @path / a path to a JSON file."""
    src = text_or_path
    if src.startswith("@"):
        src = src[1:]
    elif src.lstrip().startswith(("{", "[")):
        return json.loads(src)
    with open(src, encoding="utf-8") as fh:
        return json.load(fh)


def _family(cfg: RunConfig):
    if cfg.family is None:
        raise UsageError("--family is required")
    return catalog(cfg.family, cfg.rank, cfg.twist)


def _untwisted(cfg: RunConfig):
    R = _family(cfg)
    if R.twist != 1:
        raise UsageError(f"{R.label}: Verma computations need an untwisted family")
    return R


# ----------------------------------------------------------------------
# schemas: each emitted document has a parser back to domain objects


def dump_classification(c: Classification) -> dict:
    return c.to_dict()


def parse_classification(d: dict) -> Classification:
    return Classification(d["kind"], d["family"], parse_rational(d["det"]))


def dump_roots(R, roots) -> dict:
    return {
        "family": R.label,
        "delta": [format_rational(x) for x in R.delta],
        "roots": [
            {
                "coords": [format_rational(x) for x in r.coords],
                "imaginary": r.is_imaginary,
                "mult": r.multiplicity,
            }
            for r in roots
        ],
    }


def parse_roots(d: dict) -> dict:
    return {
        "family": d["family"],
        "delta": tuple(parse_rational(x) for x in d["delta"]),
        "roots": [
            (tuple(parse_rational(x) for x in r["coords"]), bool(r["imaginary"]), int(r["mult"]))
            for r in d["roots"]
        ],
    }


def dump_roots_parsed(p: dict) -> dict:
    return {
        "family": p["family"],
        "delta": [format_rational(x) for x in p["delta"]],
        "roots": [
            {"coords": [format_rational(x) for x in c], "imaginary": im, "mult": m} for c, im, m in p["roots"]
        ],
    }


def parse_weights(d: dict) -> dict:
    return {
        "family": d["family"],
        "mu": tuple(parse_rational(x) for x in d["mu"]),
        "table": tuple(tuple(parse_rational(x) for x in row) for row in d["table"]),
    }


def dump_weights_parsed(p: dict) -> dict:
    return {
        "family": p["family"],
        "mu": [format_rational(x) for x in p["mu"]],
        "table": [[format_rational(x) for x in row] for row in p["table"]],
    }


def parse_certificate(d: dict) -> GramCertificate:
    mat = [[parse_scalar(x) for x in row] for row in d["matrix"]]
    names = list(d["basis"])
    return GramCertificate(tuple(d["weight"]), names, mat, tuple(d["signature"]), names)


def parse_verdict(d: dict) -> Verdict:
    if d["verdict"] == "PSD":
        return Verdict(True, int(d["depth"]))
    if d["verdict"] != "Indefinite":
        raise ValueError(f"unknown verdict {d['verdict']!r}")
    return Verdict(
        False,
        int(d["depth"]),
        tuple(d["weight"]),
        tuple(d["signature"]),
        {k: parse_scalar(v) for k, v in d["witness"].items()},
        parse_scalar(d["norm"]),
    )


def parse_certified(d: dict) -> dict:
    return {
        "certificates": [parse_certificate(c) for c in d["certificates"]],
        "verdict": parse_verdict(d["verdict"]),
    }


def dump_certified(p: dict) -> dict:
    return {"certificates": [c.to_dict() for c in p["certificates"]], "verdict": p["verdict"].to_dict()}


SCHEMAS = {
    # command -> (parser, dumper of the parsed object)
    "classify": (parse_classification, dump_classification),
    "roots": (parse_roots, dump_roots_parsed),
    "weights": (parse_weights, dump_weights_parsed),
    "gram": (lambda d: [parse_certificate(c) for c in d], lambda p: [c.to_dict() for c in p]),
    "unitarize": (parse_verdict, lambda v: v.to_dict()),
    "elementary": (parse_certified, dump_certified),
    "exceptional": (parse_certified, dump_certified),
}


# ----------------------------------------------------------------------
# commands


def cmd_classify(args) -> dict:
    try:
        m = json.loads(args.matrix)
    except json.JSONDecodeError as e:
        raise UsageError(f"--matrix is not JSON: {e}") from None
    return dump_classification(classify(validate_gcm(m)))


def cmd_roots(args, cfg: RunConfig) -> dict:
    R = _family(cfg)
    return dump_roots(R, enumerate_roots(R, args.jmax))


def cmd_weights(args, cfg: RunConfig) -> dict:
    return fundamental_weights(_family(cfg)).to_dict()


def cmd_bracket(args, cfg: RunConfig) -> dict:
    C = untwisted_basis(_untwisted(cfg))
    x = LoopElement.from_dict(C, _load_json(args.x))
    y = LoopElement.from_dict(C, _load_json(args.y))
    return bracket(x, y).to_dict()


def _borel_spec(args, cfg: RunConfig) -> StandardBorelSpec:
    R = _untwisted(cfg)
    if cfg.weight is None:
        raise UsageError("--weight is required")
    if len(cfg.weight) != R.rank + 1:
        raise UsageError(f"{R.label} needs {R.rank + 1} weight values m_0..m_{R.rank}")
    return StandardBorelSpec.for_family(R, cfg.weight, parse_rational(args.d_value), args.order)


def _certificates(spec, depth: int) -> list:
    spaces = weight_spaces(spec, depth)
    return [gram(spec, w, depth, spaces) for w in spaces]


def cmd_gram(args, cfg: RunConfig) -> list:
    spec = _borel_spec(args, cfg)
    return [c.to_dict() for c in _certificates(spec, cfg.depth)]


def cmd_unitarize(args, cfg: RunConfig) -> dict:
    spec = _borel_spec(args, cfg)
    if args.integrable:
        integrable_spec(cfg.weight)
    return check_unitarizable(spec, cfg.depth).to_dict()


def load_elementary(wdoc: dict, pdoc: dict, window: int):
    """w.json: {"type": "A", "rank": 1, "noncompact": 1, "weights": [["-1"], ...]}
    p.json: {"turns": ["0", ...]}, one turn t_i per weight, C_i^k = exp(2 pi i k t_i)."""
    C = finite_algebra(wdoc["type"], int(wdoc["rank"]))
    D = HermitianSymmetricData(C, int(wdoc.get("noncompact", 1)))
    weights = tuple(tuple(parse_rational(x) for x in w) for w in wdoc["weights"])
    turns = tuple(parse_rational(t) for t in pdoc["turns"])
    return NaturalParabolicSpec(C, D, ElementarySpec(weights, turns), window)


def load_moments(doc: dict, n: int, check_toeplitz: bool = True) -> ExceptionalSpec:
    """{"K": 3, "m": {"0": ["1", "0"], "1": ["re", "im"], ...}}"""
    m = {int(k): parse_scalar(v) for k, v in doc["m"].items()}
    K = int(doc["K"]) if "K" in doc else None
    return ExceptionalSpec.make(n, m, K, check_toeplitz)


def _certified(spec, depth: int) -> dict:
    certs = _certificates(spec, depth)
    return dump_certified({"certificates": certs, "verdict": check_unitarizable(spec, depth)})


def cmd_elementary(args, cfg: RunConfig) -> dict:
    spec = load_elementary(_load_json(args.weights), _load_json(args.phases), cfg.window)
    return _certified(spec, cfg.depth)


def cmd_exceptional(args, cfg: RunConfig) -> dict:
    S = load_moments(_load_json(args.moments), args.n, not args.no_toeplitz_check)
    return _certified(LoopParabolicSpec(S, cfg.window), cfg.depth)


# ----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(dumps({"error": "UsageError", "message": message}))
        raise SystemExit(2)


def _add_family(p, weight=False):
    p.add_argument("--family", required=True, help="letter (A..G) or label such as A_1^{(1)}")
    p.add_argument("--rank", type=int)
    p.add_argument("--twist", type=int, choices=(1, 2, 3))
    if weight:
        p.add_argument("--weight", required=True, help="m_0,...,m_l")
        p.add_argument("--d-value", default="0")
        p.add_argument("--depth", type=int, default=AFFINE_DEPTH)
        p.add_argument("--omega", choices=("compact",), default="compact")
        p.add_argument("--order", choices=("default", "alternative"), default="default")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="kmx", description="Affine Kac-Moody algebras and unitarizable highest-weight modules.")
    ap.add_argument("--output", help="write the JSON document to this path")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="classify a generalized Cartan matrix")
    p.add_argument("--matrix", required=True)

    p = sub.add_parser("roots", help="roots up to a delta-degree")
    _add_family(p)
    p.add_argument("--jmax", type=int, default=2)

    p = sub.add_parser("weights", help="fundamental weights and mu_j")
    _add_family(p)

    p = sub.add_parser("bracket", help="bracket of two loop elements")
    _add_family(p)
    p.add_argument("x", help="JSON loop element, or @file")
    p.add_argument("y", help="JSON loop element, or @file")

    p = sub.add_parser("gram", help="Gram matrices of the contravariant form per weight space")
    _add_family(p, weight=True)

    p = sub.add_parser("unitarize", help="certify PSD up to a depth or return a witness")
    _add_family(p, weight=True)
    p.add_argument("--integrable", action="store_true", help="reject weights that are not dominant integral")

    p = sub.add_parser("elementary", help="elementary representation on a loop algebra")
    p.add_argument("--weights", required=True)
    p.add_argument("--phases", required=True)
    p.add_argument("--depth", type=int, default=ELEMENTARY_DEPTH)
    p.add_argument("--window", type=int, default=1)

    p = sub.add_parser("exceptional", help="exceptional representation of loop su(n,1)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--moments", required=True)
    p.add_argument("--depth", type=int, default=EXCEPTIONAL_DEPTH)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--no-toeplitz-check", action="store_true")

    for cmd in (*sub.choices.values(),):
        cmd.add_argument("--output", default=argparse.SUPPRESS, help="write the JSON document to this path")
    return ap


COMMANDS = {
    "roots": cmd_roots,
    "weights": cmd_weights,
    "bracket": cmd_bracket,
    "gram": cmd_gram,
    "unitarize": cmd_unitarize,
    "elementary": cmd_elementary,
    "exceptional": cmd_exceptional,
}


def _config(args) -> RunConfig:
    weight = getattr(args, "weight", None)
    depth = getattr(args, "depth", None)
    if depth is not None and depth < 0:
        raise UsageError("--depth must be non-negative")
    window = getattr(args, "window", None)
    if window is not None and window < 0:
        raise UsageError("--window must be non-negative")
    return RunConfig(
        command=args.command,
        family=getattr(args, "family", None),
        rank=getattr(args, "rank", None),
        twist=getattr(args, "twist", None),
        depth=depth,
        window=window,
        weight=tuple(_int_list(weight)) if weight is not None else None,
        output=args.output,
    )


def _glue_values(argv: list) -> list:
    # "--weight -1,0" would otherwise be read as an option
    out = []
    it = iter(argv)
    for a in it:
        if a in ("--weight", "--d-value"):
            nxt = next(it, None)
            if nxt is not None:
                a = f"{a}={nxt}"
        out.append(a)
    return out


def dispatch(argv=None, stdout=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = _config(args)
        if args.command == "classify":
            doc = cmd_classify(args)
        else:
            doc = COMMANDS[args.command](args, cfg)
    except UsageError as e:
        sys.stderr.write(dumps({"error": "UsageError", "message": str(e)}))
        return 2
    except (KmxError, ValueError, KeyError, OSError, ArithmeticError) as e:
        name = type(e).__name__
        if isinstance(e, json.JSONDecodeError):
            name = "InvalidJSON"
        out.write(dumps({"error": name, "message": str(e.args[0]) if e.args else name}))
        return 1
    text = dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def main(argv=None) -> int:
    return dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
