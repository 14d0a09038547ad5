"""Command-line interface: ``klein-bu <command> ...``.

Exit codes: 0 success, 1 unparsable input, 2 well-formed but mathematically
invalid input, 3 self-test failure.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import kerg, p2, pi1k
from .buc import WitnessStatus, classify, generate_witness, verify_witness
from .errors import NonCommuting, NotInKernel, ParseError
from .p2 import P2Elem
from .pi1k import HomPair, Pi1K
from .selftest import DEFAULT_SEED, SelftestConfig, run_selftest
from .word import FreeWord, format_word, parse_word

EXIT_OK, EXIT_PARSE, EXIT_MATH, EXIT_SELFTEST = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


# -- eval expression language ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\([^()]*\))|(theta\[\s*-?\d+\s*,\s*-?\d+\s*\])|([A-Za-z]\w*(?:\^-?\d+)?|1))")
_THETA = re.compile(r"theta\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")
_OPS = {"mul": 2, "inv": 1, "lsigma": 1, "rho": 1}


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    if not out:
        raise ParseError("empty expression")
    return out


def _is_word_term(tok: str) -> bool:
    return tok not in _OPS and not tok.startswith(("(", "theta["))


def _as_p2(x) -> P2Elem:
    return x if isinstance(x, P2Elem) else p2.iota(x)


def _as_word(x, op: str) -> FreeWord:
    if isinstance(x, P2Elem):
        raise ParseError(f"{op} takes a word, not a P2 element")
    return x


def _parse_expr(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise ParseError("expression ended early")
    tok = tokens[pos]
    if tok.startswith("("):
        if ";" in tok:
            return p2.parse_p2(tok), pos + 1
        return parse_word(tok[1:-1]), pos + 1
    theta = _THETA.fullmatch(tok)
    if theta:
        arg, pos = _parse_expr(tokens, pos + 1)
        return p2.theta(int(theta.group(1)), int(theta.group(2)), _as_word(arg, "theta")), pos
    if tok in _OPS:
        args = []
        pos += 1
        for _ in range(_OPS[tok]):
            arg, pos = _parse_expr(tokens, pos)
            args.append(arg)
        return _apply(tok, args), pos
    end = pos
    while end < len(tokens) and _is_word_term(tokens[end]):
        end += 1
    return parse_word(" ".join(tokens[pos:end])), end


def _apply(op: str, args: list):
    if op == "mul":
        a, b = args
        if isinstance(a, FreeWord) and isinstance(b, FreeWord):
            return a * b
        return _as_p2(a) * _as_p2(b)
    (a,) = args
    if op == "inv":
        return a.inverse()
    if op == "lsigma":
        return p2.l_sigma(_as_p2(a))
    return p2.rho(_as_word(a, "rho"))


def evaluate(text: str):
    """Evaluate a prefix expression; returns a FreeWord or a P2Elem."""
    tokens = _tokenize(text)
    value, pos = _parse_expr(tokens, 0)
    if pos != len(tokens):
        raise ParseError(f"unexpected trailing input: {' '.join(tokens[pos:])}")
    return value


def format_value(x) -> str:
    return str(x) if isinstance(x, P2Elem) else format_word(x)


# -- commands -------------------------------------------------------------------

def _hom_from_args(args) -> HomPair:
    return HomPair(pi1k.parse_pi1k(args.f10), pi1k.parse_pi1k(args.f01))


def _classification(h: HomPair) -> dict:
    nf, conj = pi1k.normalize_hom(h)
    verdict = classify(nf)
    return {
        "type": nf.type_tag,
        "normal_form": nf.as_dict(),
        "conjugator": [conj.m, conj.n],
        "borsuk_ulam": verdict.has_bu,
        "reason": verdict.reason.value,
    }, nf


def _text_value(val) -> str:
    if isinstance(val, bool):
        return str(val).lower()
    if isinstance(val, list):
        return "(" + ",".join(map(str, val)) + ")"
    if val is None:
        return "-"
    return str(val)


def _print_kv(d: dict) -> None:
    for key, val in d.items():
        if key == "normal_form":
            params = ", ".join(f"{k}={v}" for k, v in val.items() if k != "type")
            val = f"Type{val['type']}({params})"
        elif key == "borsuk_ulam":
            key = "bu"
        print(f"{key}={_text_value(val)}")


def cmd_classify(args) -> int:
    result, _ = _classification(_hom_from_args(args))
    if args.json:
        print(json.dumps(result))
    else:
        _print_kv(result)
    return EXIT_OK


def cmd_witness(args) -> int:
    result, nf = _classification(_hom_from_args(args))
    wp = generate_witness(nf)
    verified = False
    if wp.status is WitnessStatus.GENERATED:
        verified = verify_witness(nf.pair(), wp.a, wp.b).ok
    result.update(
        a=None if wp.a is None else str(wp.a),
        b=None if wp.b is None else str(wp.b),
        status=wp.status.value,
        verified=verified,
    )
    if args.json:
        print(json.dumps(result))
    else:
        _print_kv(result)
    return EXIT_OK


def cmd_verify_witness(args) -> int:
    h = _hom_from_args(args)
    report = verify_witness(h, p2.parse_p2(args.a), p2.parse_p2(args.b))
    result = {"cond_i": report.cond_i, "cond_ii": report.cond_ii,
              "cond_iii": report.cond_iii, "ok": report.ok}
    if args.json:
        print(json.dumps(result))
    else:
        _print_kv(result)
    return EXIT_OK


def cmd_rewrite(args) -> int:
    print(kerg.to_b_basis(parse_word(args.word)))
    return EXIT_OK


def cmd_abelianize(args) -> int:
    print(kerg.abelianize_word(parse_word(args.word)).to_json())
    return EXIT_OK


def cmd_eval(args) -> int:
    print(format_value(evaluate(args.expr)))
    return EXIT_OK


def _default_seed() -> int:
    raw = os.environ.get("KLEIN_BU_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"KLEIN_BU_SEED must be an integer, got {raw!r}") from None


def cmd_selftest(args) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    try:
        cfg = SelftestConfig(seed=seed, cases=args.cases)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return run_selftest(cfg)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="klein-bu", description="Braid-group computations for maps T^2 -> K^2.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def hom_command(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--f10", required=True, help="image of (1,0), as '(m,n)'")
        p.add_argument("--f01", required=True, help="image of (0,1), as '(m,n)'")
        p.add_argument("--json", action="store_true")
        p.set_defaults(func=func)
        return p

    hom_command("classify", cmd_classify, "normal form and Borsuk-Ulam verdict")
    hom_command("witness", cmd_witness, "explicit (a, b) for a non-BU class")
    p = hom_command("verify-witness", cmd_verify_witness, "check a candidate (a, b)")
    p.add_argument("--a", required=True, help="'(word; m, n)'")
    p.add_argument("--b", required=True, help="'(word; m, n)'")

    p = sub.add_parser("rewrite", help="write a word of ker g in the basis B[k,l]")
    p.add_argument("word")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("abelianize", help="coefficients of a ker g word, as JSON")
    p.add_argument("word")
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("eval", help="evaluate e.g. 'lsigma (B; 0, 0)' or 'theta[0,1] v'")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("selftest", help="replay the structural identities")
    p.add_argument("--seed", type=int, default=None, help=f"default: $KLEIN_BU_SEED or {DEFAULT_SEED}")
    p.add_argument("--cases", type=int, default=SelftestConfig.cases)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotInKernel as exc:
        g = exc.g_value
        print(f"error: not in ker g, g={g}", file=sys.stderr)
        return EXIT_MATH
    except NonCommuting as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
