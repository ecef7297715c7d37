"""Command-line front end: ``hopfzeta <command> ...``.

Every command prints terms ordered by weight and then lexicographically,
with fixed float formatting, so output is byte-stable for a fixed
configuration.  Usage errors exit with 2, numeric failures with 1.
Options may also come from the environment (``HOPFZETA_PRECISION``,
``HOPFZETA_TOL``, ``HOPFZETA_CACHE``, ``HOPFZETA_FORMAT``); flags win.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import associator as kz
from . import diagrams as dg
from .bell import bell_polynomial, set_partitions
from .lyndon import lyndon_words
from .polylog import NumericError, DivergentWordError, harmonic_sum, polylog, zeta_value
from .series import mp_context
from .shuffle import SHUFFLE, STUFFLE, word_product
from .words import Alphabet, AlphabetError, X, Y, sort_key
from .zetacache import DEFAULT_CACHE, ZetaCache

ENV_PREFIX = "HOPFZETA_"
FORMATS = ("text", "json", "latex")


@dataclass(frozen=True)
class Config:
    precision_bits: int = 128
    default_tol: float = 1e-10
    max_degree: int = 5
    cache_path: str | None = None
    fmt: str = "text"

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision must be at least 64 bits")
        if not self.default_tol > 0:
            raise ValueError("tolerance must be positive")
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")


class UsageError(ValueError):
    pass


def _env(name: str):
    return os.environ.get(ENV_PREFIX + name.upper())


def make_config(ns: argparse.Namespace) -> Config:
    def pick(attr, env, conv, default):
        v = getattr(ns, attr, None)
        if v is not None:
            return v
        e = _env(env)
        if e is not None:
            try:
                return conv(e)
            except ValueError:
                raise UsageError(f"bad value for {ENV_PREFIX}{env.upper()}: {e!r}") from None
        return default

    return Config(
        precision_bits=pick("precision", "precision", int, 128),
        default_tol=pick("tol", "tol", float, 1e-10),
        cache_path=pick("cache", "cache", str, None),
        fmt=pick("format", "format", str, "text"),
    )


# formatting ------------------------------------------------------------------------

def _coef_text(c) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    if isinstance(c, (int, Fraction)):
        return str(c)
    s = str(c)
    return f"({s})" if (" + " in s or " - " in s) else s


def _coef_latex(c) -> str:
    if isinstance(c, kz.Poly):
        return c.to_latex(kz.symbol_latex)
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return rf"{sign}\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def _json_coef(c):
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else c.numerator
    if isinstance(c, int):
        return c
    return str(c)


def render_terms(terms: dict, alphabet: Alphabet, fmt: str) -> str:
    items = sorted(terms.items(), key=lambda kv: sort_key(alphabet)(kv[0]))
    if fmt == "json":
        return json.dumps([{"word": alphabet.format(w), "coef": _json_coef(c)} for w, c in items])
    if fmt == "latex":
        if not items:
            return "0"
        return " + ".join(f"({_coef_latex(c)})\\, {alphabet.latex(w)}" for w, c in items)
    return "\n".join(f"{_coef_text(c)}*{alphabet.format(w)}" for w, c in items)


def _digits(tol: float) -> int:
    return max(6, min(60, int(-math.log10(tol)) + 2))


def _num(ctx, x, tol: float) -> str:
    return ctx.nstr(x, _digits(tol), strip_zeros=False)


# commands ----------------------------------------------------------------------------

def _alphabet(name: str) -> Alphabet:
    return X if name.lower() == "x" else Y


def cmd_product(ns, cfg, kind):
    alphabet = Y if kind is STUFFLE else _alphabet(ns.alphabet)
    u, v = alphabet.parse(ns.u), alphabet.parse(ns.v)
    terms = {w: Fraction(m) for w, m in word_product(u, v, kind).items()}
    return render_terms(terms, alphabet, cfg.fmt)


def cmd_lyndon(ns, cfg):
    alphabet = _alphabet(ns.alphabet)
    ws = lyndon_words(alphabet, ns.max_weight, ns.order, by_weight=True)
    if cfg.fmt == "json":
        return json.dumps([alphabet.format(w) for w in ws])
    if cfg.fmt == "latex":
        return ", ".join(alphabet.latex(w) for w in ws)
    return "\n".join(alphabet.format(w) for w in ws)


def cmd_bell(ns, cfg):
    p = bell_polynomial(ns.n, ns.k)
    if cfg.fmt == "json":
        return json.dumps({"n": ns.n, "k": ns.k, "polynomial": str(p)})
    return p.to_latex() if cfg.fmt == "latex" else str(p)


def cmd_partitions(ns, cfg):
    parts = list(set_partitions(ns.n, ns.k))
    if cfg.fmt == "json":
        return json.dumps([[list(b) for b in p.blocks] for p in parts])
    return "\n".join(str(p) for p in parts)


def _matrix(text: str) -> dg.LabeledDiagram:
    try:
        m = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"diagram must be a JSON matrix like [[1,0],[0,2]]: {exc}") from None
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise UsageError("diagram must be a list of rows")
    return dg.LabeledDiagram(tuple(tuple(r) for r in m))


def _diagram_sum_text(terms: dict, fmt: str) -> str:
    items = sorted(terms.items(), key=lambda kv: (kv[0].rows, kv[0].matrix))
    if fmt == "json":
        return json.dumps([{"diagram": [list(r) for r in d.matrix], "coef": str(c)} for d, c in items])
    return "\n".join(f"{_coef_text(c)}*{d}" for d, c in items)


def cmd_diagram(ns, cfg):
    if ns.op == "product":
        if len(ns.matrices) != 2:
            raise UsageError("diagram product needs two matrices")
        d1, d2 = (_matrix(t) for t in ns.matrices)
        qc = kz.Poly.symbol("qc") if ns.qc is None else Fraction(ns.qc)
        qs = kz.Poly.symbol("qs") if ns.qs is None else Fraction(ns.qs)
        return _diagram_sum_text(dg.product(d1, d2, dg.DeformParams(qc, qs)), cfg.fmt)
    if len(ns.matrices) != 1:
        raise UsageError(f"diagram {ns.op} needs one matrix")
    d = _matrix(ns.matrices[0])
    if ns.op == "mult":
        m = dg.multiplicity(d, ns.method)
        return json.dumps({"diagram": str(d.canonical()), "multiplicity": m}) if cfg.fmt == "json" else str(m)
    if ns.op == "canonical":
        return str(d.canonical())
    # coproduct
    items = sorted(dg.coproduct_bs(d.canonical()).items(), key=lambda kv: (kv[0][0], kv[0][1]))
    if cfg.fmt == "json":
        return json.dumps([{"left": str(a), "right": str(b), "coef": c} for (a, b), c in items])
    return "\n".join(f"{c}*{a} (x) {b}" for (a, b), c in items)


def cmd_li(ns, cfg):
    alphabet = _alphabet(ns.alphabet)
    w = alphabet.parse(ns.word)
    ctx = mp_context(cfg.precision_bits)
    z = ctx.mpmathify(ns.z)
    a = polylog(w, z, cfg.default_tol, alphabet, cfg.precision_bits)
    return _value_out(ctx, a.value, a.bound, cfg, {"word": alphabet.format(w), "z": ns.z})


def _value_out(ctx, value, bound, cfg, extra: dict) -> str:
    tol = cfg.default_tol
    if cfg.fmt == "json":
        return json.dumps({**extra, "value": _num(ctx, value, tol), "error_bound": float(bound), "tol": tol},
                          sort_keys=True)
    return f"{_num(ctx, value, tol)} ± ≤{tol:.0e}"


def cmd_hsum(ns, cfg):
    w = Y.parse(ns.word)
    h = harmonic_sum(w, ns.N)
    if cfg.fmt == "json":
        return json.dumps({"word": Y.format(w), "N": ns.N, "value": str(h)})
    if cfg.fmt == "latex":
        return _coef_latex(h)
    return str(h)


def _cache(cfg) -> ZetaCache:
    return ZetaCache(cfg.cache_path) if cfg.cache_path else DEFAULT_CACHE


def cmd_zeta(ns, cfg):
    w = Y.parse(ns.word)
    a = zeta_value(w, cfg.default_tol, Y, cfg.precision_bits, ns.method, _cache(cfg))
    ctx = mp_context(cfg.precision_bits)
    return _value_out(ctx, a.value, a.bound, cfg, {"word": Y.format(w), "N_used": a.terms})


def cmd_regzeta(ns, cfg):
    alphabet = X if ns.kind == "shuffle" else Y
    w = alphabet.parse(ns.word)
    p = kz.zeta_reg(w, ns.kind)
    if cfg.fmt == "json":
        return json.dumps({"word": alphabet.format(w), "kind": ns.kind, "value": str(p)})
    return p.to_latex(kz.symbol_latex) if cfg.fmt == "latex" else str(p)


def cmd_associator(ns, cfg):
    if ns.degree > cfg.max_degree:
        raise UsageError(f"degree above {cfg.max_degree}")
    s = kz.z_series(ns.series, ns.degree)
    if ns.numeric:
        ctx = mp_context(cfg.precision_bits)
        s = kz.to_numeric(s, min(cfg.default_tol, 1e-15), cfg.precision_bits)
        terms = {w: _num(ctx, c, cfg.default_tol) for w, c in s.items()}
        return render_terms(terms, s.alphabet, cfg.fmt)
    return render_terms(dict(s.items()), s.alphabet, cfg.fmt)


def cmd_relations(ns, cfg):
    rep = kz.bridge_relations(ns.max_weight, tol=min(cfg.default_tol, 1e-8), threshold=ns.threshold,
                              prec=cfg.precision_bits)
    if cfg.fmt == "json":
        return json.dumps([r.to_json() for r in rep.relations])
    if cfg.fmt == "latex":
        return "\n".join(f"{r.relation.to_latex(kz.symbol_latex)} = 0" for r in rep.relations)
    return "\n".join(f"{Y.format(r.word)}: {r.relation} = 0   (residual {r.residual:.1e})" for r in rep.relations)


def cmd_check(ns, cfg):
    from .acceptance import run_all

    only = set(ns.only) if ns.only else None
    results = run_all(only, echo=print)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return failed


# parser --------------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    p.add_argument("--precision", type=int, default=argparse.SUPPRESS, help="working precision in bits")
    p.add_argument("--tol", type=float, default=argparse.SUPPRESS, help="absolute error tolerance")
    p.add_argument("--cache", default=argparse.SUPPRESS, help="zeta cache file (JSON lines)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hopfzeta", parents=[common],
                                     description="Shuffle algebras, diagrams, polyzetas and the KZ associator.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, kind in (("shuffle", SHUFFLE), ("stuffle", STUFFLE)):
        p = sub.add_parser(name, parents=[common], help=f"{name} product of two words")
        p.add_argument("u")
        p.add_argument("v")
        if kind is SHUFFLE:
            p.add_argument("--alphabet", choices=("x", "y"), default="x")
        p.set_defaults(func=lambda ns, cfg, k=kind: cmd_product(ns, cfg, k))

    p = sub.add_parser("lyndon", parents=[common], help="Lyndon words up to a weight")
    p.add_argument("--alphabet", choices=("x", "y"), default="x")
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--order", choices=("natural", "y1_largest"), default="natural")
    p.set_defaults(func=cmd_lyndon)

    p = sub.add_parser("bell", parents=[common], help="(partial) Bell polynomial")
    p.add_argument("n", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("partitions", parents=[common], help="set partitions of {1..n}")
    p.add_argument("n", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("diagram", parents=[common], help="diagram operations")
    p.add_argument("op", choices=("product", "coproduct", "mult", "canonical"))
    p.add_argument("matrices", nargs="+", help="JSON matrices, e.g. [[1,0],[0,2]]")
    p.add_argument("--qc", help="crossing weight (symbolic if omitted)")
    p.add_argument("--qs", help="superposition weight (symbolic if omitted)")
    p.add_argument("--method", choices=("enumerate", "formula"), default="formula")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("li", parents=[common], help="polylogarithm Li_w(z)")
    p.add_argument("word")
    p.add_argument("z")
    p.add_argument("--alphabet", choices=("x", "y"), default="x")
    p.set_defaults(func=cmd_li)

    p = sub.add_parser("hsum", parents=[common], help="harmonic sum H_w(N), exact")
    p.add_argument("word")
    p.add_argument("N", type=int)
    p.set_defaults(func=cmd_hsum)

    p = sub.add_parser("zeta", parents=[common], help="convergent polyzeta value")
    p.add_argument("word", help="Y-word such as 2,1")
    p.add_argument("--method", choices=("holder", "harmonic"), default="holder")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("regzeta", parents=[common], help="regularized zeta character value")
    p.add_argument("word")
    p.add_argument("--kind", choices=("shuffle", "stuffle"), required=True)
    p.set_defaults(func=cmd_regzeta)

    p = sub.add_parser("associator", parents=[common], help="truncated Z/Phi/Psi/B series")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--series", choices=("Phi_KZ", "Z_shuffle", "Z_stuffle", "Psi_KZ", "B", "Bprime"),
                   default="Phi_KZ")
    p.add_argument("--numeric", action="store_true")
    p.set_defaults(func=cmd_associator)

    p = sub.add_parser("relations", parents=[common], help="bridge relations among polyzetas")
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--threshold", type=float, default=1e-6)
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("check", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", type=int, nargs="*")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        cfg = make_config(ns)
        out = ns.func(ns, cfg)
    except (UsageError, AlphabetError, DivergentWordError, ValueError, KeyError) as exc:
        print(f"hopfzeta: error: {exc}", file=sys.stderr)
        return 2
    except (NumericError, ArithmeticError, OSError) as exc:
        print(f"hopfzeta: numeric failure: {exc}", file=sys.stderr)
        return 1
    if ns.command == "check":
        return 1 if out else 0
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
