"""Command-line front end.

Chains and divisors are given either as a path to a JSON file or as inline
JSON. Shapes and profiles are comma lists (``--shape 2,2 --profile 2,0,0``).

Exit codes:
    0  success
    1  usage or input error
    2  ``verify`` found a rank mismatch
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

from . import brill_noether, oracle, tableaux
from .chain import AbstractChain, Chain, TorsionProfile, chain_from_json
from .divisors import ChainDivisor, rank, standard_form, weierstrass_partition
from .partitions import Partition, parse_shape


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; we reserve 2 for mismatches."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# --- input helpers --------------------------------------------------------------

def load_json(text: str, what: str):
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            text, source = fh.read(), text
    else:
        source = "inline"
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} ({source}): malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def load_chain(text: str) -> Chain:
    obj = load_json(text, "chain")
    if not isinstance(obj, dict):
        raise UsageError("chain: expected a JSON object")
    try:
        return chain_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"chain: {exc}")


def load_divisor(text: str) -> ChainDivisor:
    obj = load_json(text, "divisor")
    if not isinstance(obj, dict):
        raise UsageError("divisor: expected a JSON object")
    try:
        return ChainDivisor.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"divisor: {exc}")


def int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.strip("()[] ").split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}")


def shape_arg(text: str) -> Partition:
    try:
        return parse_shape(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def profile_from_args(args) -> TorsionProfile:
    if getattr(args, "chain", None) is not None:
        return load_chain(args.chain).torsion_profile()
    if args.profile is None:
        if args.genus is None:
            raise UsageError("give a chain or --profile/--genus")
        return TorsionProfile.generic(args.genus)
    try:
        return TorsionProfile.from_list(args.profile, args.genus, args.m1)
    except ValueError as exc:
        raise UsageError(str(exc))


def dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


# --- subcommands ------------------------------------------------------------------

def cmd_profile(args):
    p = load_chain(args.chain).torsion_profile()
    text = f"genus {p.g}: m = ({','.join(map(str, p.m))}), m1 = {p.m1}"
    return p.to_json(), text


def cmd_general(args):
    p = profile_from_args(args)
    if args.brute:
        verdict = brill_noether.is_general_bruteforce(p, marked=args.marked)
    elif args.marked:
        verdict = brill_noether.is_general_marked(p)
    else:
        verdict = brill_noether.is_general_unmarked(p)
    obj = verdict.to_json()
    obj["message"] = verdict.describe()
    text = verdict.describe()
    if verdict.witness is not None:
        text += f"\nwitness: {verdict.witness}"
    return obj, text


def cmd_tableaux(args):
    p = profile_from_args(args)
    if args.count:
        n = tableaux.count(args.shape, p, p.g)
        return n, str(n)
    ts = list(tableaux.enumerate(args.shape, p, p.g))
    return [t.to_json() for t in ts], "\n".join(str(t) for t in ts)


def cmd_locus(args):
    chain = load_chain(args.chain)
    p = chain.torsion_profile()
    comps = brill_noether.components(args.shape, p, maximal=args.maximal)
    dim = brill_noether.dimension(args.shape, p)
    obj = {
        "shape": args.shape.to_json(),
        "genus": p.g,
        "dimension": dim,
        "components": [c.to_json() for c in comps],
    }
    lines = [f"{len(comps)} components, dimension {'empty' if dim is None else dim}"]
    for c in comps:
        fixed = " ".join(f"<{z}>_{i}" + (f" mod {mod}" if mod else "") for i, z, mod in c.torus.fixed)
        free = ",".join(map(str, c.torus.free)) or "-"
        lines.append(f"{c.tableau}  dim {c.dim}  fixed {fixed or '-'}  free {free}")
    return obj, "\n".join(lines)


def _with_divisor(args) -> tuple[Chain, ChainDivisor]:
    chain = load_chain(args.chain)
    D = load_divisor(args.divisor)
    return chain, D


def cmd_rank(args):
    chain, D = _with_divisor(args)
    try:
        r = rank(D, chain)
    except ValueError as exc:
        raise UsageError(str(exc))
    return {"rank": r, "degree": D.degree}, str(r)


def cmd_wpartition(args):
    chain, D = _with_divisor(args)
    try:
        lam = weierstrass_partition(D, chain)
    except ValueError as exc:
        raise UsageError(str(exc))
    return {"partition": lam.to_json(), "degree": D.degree}, str(lam)


def cmd_standard_form(args):
    chain, D = _with_divisor(args)
    try:
        sf = standard_form(D, chain)
    except ValueError as exc:
        raise UsageError(str(exc))
    return sf.to_json(), f"xi = ({','.join(map(str, sf.xi))}), degree {sf.degree}"


def cmd_class(args):
    c = brill_noether.expected_class(args.shape, args.genus)
    text = f"{c.coefficient} Theta^{c.theta_power}, expected dimension {c.expected_dim}, {c.syt_count} standard tableaux"
    return c.to_json(), text


def cmd_verify(args):
    chain = load_chain(args.chain)
    if isinstance(chain, AbstractChain):
        raise UsageError("verify needs a metric chain (with cycle lengths)")
    reports = oracle.verify(chain, args.trials, args.seed, min_degree=args.min_degree,
                            max_degree=args.max_degree, threads=args.threads)
    bad = [r for r in reports if not r.match]
    obj = {
        "chain": chain.to_json(),
        "seed": args.seed,
        "trials": args.trials,
        "mismatches": len(bad),
        "reports": [r.to_json() for r in (reports if args.all else bad)],
    }
    lines = [f"{len(reports) - len(bad)}/{len(reports)} trials agree (seed {args.seed})"]
    lines += [dump(r.to_json()) for r in bad]
    return obj, "\n".join(lines), (2 if bad else 0)


COMMANDS: dict[str, Callable] = {
    "profile": cmd_profile,
    "general": cmd_general,
    "tableaux": cmd_tableaux,
    "locus": cmd_locus,
    "rank": cmd_rank,
    "wpartition": cmd_wpartition,
    "standard-form": cmd_standard_form,
    "class": cmd_class,
    "verify": cmd_verify,
}


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="bnchain", description="Brill-Noether loci on chains of cycles.")
    common = ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json", help="output format (default: json)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    def profile_options(p):
        p.add_argument("--profile", type=int_list, help="torsion orders m_2,...,m_g")
        p.add_argument("--genus", type=int)
        p.add_argument("--m1", type=int, default=0, help="first torsion order (default: 0)")

    p = sub.add_parser("profile", parents=[common], help="torsion profile of a chain")
    p.add_argument("chain")

    p = sub.add_parser("general", parents=[common], help="Brill-Noether generality of a torsion profile")
    p.add_argument("chain", nargs="?")
    profile_options(p)
    p.add_argument("--marked", action="store_true", help="generality with the marked point w_g")
    p.add_argument("--brute", action="store_true", help="decide by exhaustive tableau search")

    p = sub.add_parser("tableaux", parents=[common], help="displacement tableaux on a shape")
    p.add_argument("--shape", type=shape_arg, required=True)
    profile_options(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--list", action="store_true", help="list the tableaux (default)")

    p = sub.add_parser("locus", parents=[common], help="torus components and dimension of W^lambda")
    p.add_argument("--shape", type=shape_arg, required=True)
    p.add_argument("chain")
    p.add_argument("--maximal", action="store_true", help="drop tori contained in another component")

    for name, text in [("rank", "rank of a divisor"),
                       ("wpartition", "Weierstrass partition at w_g"),
                       ("standard-form", "standard-form coordinates xi")]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("chain")
        p.add_argument("divisor")

    p = sub.add_parser("class", parents=[common], help="expected class and dimension of W^lambda")
    p.add_argument("--shape", type=shape_arg, required=True)
    p.add_argument("--genus", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="cross-check ranks against the chip-firing oracle")
    p.add_argument("chain")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-degree", type=int, default=-1)
    p.add_argument("--max-degree", type=int, help="default: 2g-2")
    p.add_argument("--threads", type=int, help="worker threads (default: $BNCHAIN_THREADS or 1)")
    p.add_argument("--all", action="store_true", help="include matching trials in the JSON report")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"bnchain {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, IndexError) as exc:
        print(f"bnchain {args.command}: error: {exc}", file=sys.stderr)
        return 1
    obj, text, *rest = result
    print(dump(obj) if args.format == "json" else text)
    return rest[0] if rest else 0


if __name__ == "__main__":
    sys.exit(main())
