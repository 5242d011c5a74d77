"""Command-line interface: ``qsym <subcommand> ...``.

Compositions are written with commas (``1,3,2``); the empty composition is
the empty string.  Exit status is 0 on success, 1 on bad input and 2 when
``verify`` finds a failing check.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from . import morphisms, posets, rigidity, schur
from .algebra import (
    Basis,
    BasisMismatch,
    QSymVector,
    convert,
    coproduct,
    parse_vector,
    product,
    render,
)
from .compositions import format_composition, parse_composition

log = logging.getLogger("qsym")

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _comp(text: str):
    try:
        return parse_composition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _basis(text: str) -> Basis:
    try:
        return Basis(text.upper())
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown basis {text!r}; use M, F or S") from None


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif args.format == "dot":
        raise UsageError(f"--format dot is only available for 'poset ... hasse'")
    else:
        print(text)


def cmd_product(args) -> int:
    u = QSymVector.element(args.basis, args.alpha)
    v = QSymVector.element(args.basis, args.beta)
    w = product(u, v)
    _emit(args, render(w), w.to_json())
    return EXIT_OK


def cmd_coproduct(args) -> int:
    t = coproduct(QSymVector.element(args.basis, args.alpha))
    _emit(args, str(t), t.to_json())
    return EXIT_OK


def cmd_convert(args) -> int:
    u = parse_vector(args.expression, args.source)
    w = convert(u, args.target)
    _emit(args, render(w), w.to_json())
    return EXIT_OK


def cmd_poset(args) -> int:
    order = posets.Order(args.order.upper())
    if args.query == "hasse":
        try:
            n = int(args.arg)
        except ValueError:
            raise UsageError(f"hasse needs a maximum weight, got {args.arg!r}") from None
        h = posets.hasse(order, n)
        if args.format == "dot":
            sys.stdout.write(h.to_dot())
        elif args.format == "json":
            print(json.dumps(h.to_json(), indent=2))
        else:
            for a, b in h.edges:
                print(f"{format_composition(a)} < {format_composition(b)}")
        return EXIT_OK
    alpha = parse_composition(args.arg)
    if args.query == "covers":
        found = sorted(posets.up_covers(order, alpha))
    else:
        found = sorted(posets.down_covers(order, alpha))
    labels = [format_composition(c) for c in found]
    _emit(args, "\n".join(labels), {"order": order.value, "query": args.query,
                                     "composition": format_composition(alpha), "result": labels})
    return EXIT_OK


def cmd_ssrct(args) -> int:
    outer, _, inner = args.shape.partition("//")
    shape = schur.SkewReverseShape(parse_composition(outer), parse_composition(inner))
    tableaux = schur.enumerate_ssrct(shape, args.max_entry)
    lines = [" / ".join(" ".join(map(str, row)) for row in t.rows()) for t in tableaux]
    lines.append(f"{len(tableaux)} tableaux")
    _emit(args, "\n".join(lines), [t.to_json() for t in tableaux])
    return EXIT_OK


def cmd_lr(args) -> int:
    c = schur.lr_coefficient(args.alpha, args.beta, args.gamma)
    _emit(args, str(c), {"alpha": format_composition(args.alpha), "beta": format_composition(args.beta),
                         "gamma": format_composition(args.gamma), "coefficient": str(c)})
    return EXIT_OK


def cmd_map(args) -> int:
    w = morphisms.apply(morphisms.get_map(args.name), QSymVector.element(args.basis, args.alpha))
    _emit(args, render(w), w.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.config:
        with open(args.config) as fh:
            config = json.load(fh)
    else:
        config = dict(rigidity.DEFAULT_CONFIG)
    if args.bound is not None:
        config["s_bound"] = args.bound
    report = rigidity.run_all(config)
    if args.format == "json":
        print(report.dumps())
    elif args.format == "dot":
        raise UsageError("--format dot is only available for 'poset ... hasse'")
    else:
        for r in report.results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status}  {r.check_id}  bound={json.dumps(r.bound)}  ({r.elapsed:.1f}s)")
            for line in r.details:
                print(f"      {line}")
        print("all checks passed" if report.passed else "some checks FAILED")
    return EXIT_OK if report.passed else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--dot", dest="format", action="store_const", const="dot",
                        help="shorthand for --format dot")
    common.add_argument("--bound", type=int, help="cap on the S-basis weight")
    common.add_argument("--cache", metavar="DIR", help="basis-matrix cache directory")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="qsym", description="Quasisymmetric functions in the M, F and S bases.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def basis_arg(sp):
        sp.add_argument("-b", "--basis", type=_basis, default=Basis.M)

    sp = sub.add_parser("product", parents=[common], help="product of two basis elements")
    basis_arg(sp)
    sp.add_argument("alpha", type=_comp)
    sp.add_argument("beta", type=_comp)
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("coproduct", parents=[common], help="coproduct of a basis element")
    basis_arg(sp)
    sp.add_argument("alpha", type=_comp)
    sp.set_defaults(func=cmd_coproduct)

    sp = sub.add_parser("convert", parents=[common], help="change basis")
    sp.add_argument("source", type=_basis)
    sp.add_argument("target", type=_basis)
    sp.add_argument("expression", help="a composition or an expression such as '2*M[1,2] - M[3]'")
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("poset", parents=[common], help="query one of the orders C, M, F, Q")
    sp.add_argument("order", choices=("C", "M", "F", "Q", "c", "m", "f", "q"))
    sp.add_argument("query", choices=("covers", "downset", "hasse"))
    sp.add_argument("arg", help="a composition, or the maximum weight for hasse")
    sp.set_defaults(func=cmd_poset)

    sp = sub.add_parser("ssrct", parents=[common], help="list tableaux of a (skew) shape")
    sp.add_argument("shape", help="outer or outer//inner, e.g. 3,4,2,3//1,2")
    sp.add_argument("max_entry", type=int)
    sp.set_defaults(func=cmd_ssrct)

    sp = sub.add_parser("lr", parents=[common], help="coefficient of S_alpha (x) S_beta in Delta S_gamma")
    for name in ("alpha", "beta", "gamma"):
        sp.add_argument(name, type=_comp)
    sp.set_defaults(func=cmd_lr)

    sp = sub.add_parser("map", parents=[common], help="apply identity, rho, psi or omega")
    sp.add_argument("name", choices=sorted(morphisms.MAPS))
    basis_arg(sp)
    sp.add_argument("alpha", type=_comp)
    sp.set_defaults(func=cmd_map)

    sp = sub.add_parser("verify", parents=[common], help="run the verification suite")
    sp.add_argument("--config", metavar="FILE", help="JSON file of per-check bounds")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.cache:
        os.environ["QSYM_CACHE_DIR"] = args.cache
    if args.bound is not None and args.command != "verify":
        if args.bound < 1:
            print("qsym: error: --bound must be positive", file=sys.stderr)
            return EXIT_USAGE
        os.environ["QSYM_MAX_S_WEIGHT"] = str(args.bound)
    try:
        return args.func(args)
    except (ValueError, UsageError, OSError, json.JSONDecodeError) as exc:
        # BasisMismatch and BasisTooLarge are ValueErrors too
        print(f"qsym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
