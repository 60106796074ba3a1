"""Command-line entry point: ``sumprod {setop,dim,verify,sweep}``.

stdout carries data only; diagnostics go to stderr.  Exit codes: 0 success,
1 internal error, 2 parse/usage error, 3 budget exceeded, 4 empty A*,
5 an assert-mode claim failed, 6 unknown claim.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from . import families, multdim, setalg
from .budget import DEFAULT_MAX_CARD, DEFAULT_MAX_WORK, Budget
from .errors import (
    BudgetExceeded, EmptyStarSet, InvalidSpec, ParamError, ParseError, PremiseViolated, UnknownClaim,
)
from .exactnum import parse_rational
from .inequalities import REGISTRY, ClaimInstance, error_verdict, verify

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_BUDGET, EXIT_EMPTY, EXIT_ASSERT, EXIT_UNKNOWN = 0, 1, 2, 3, 4, 5, 6

SETOPS = ("sumset", "productset", "combo", "diffcombo", "subsetsums", "subsetproducts",
          "distinct_h", "bounded_h", "gproxy")

log = logging.getLogger("sumprod")


@dataclass(frozen=True)
class Config:
    max_card: int = DEFAULT_MAX_CARD
    max_work: int = DEFAULT_MAX_WORK
    threads: int = 1
    format: str = "json"
    seed: int = 0

    @property
    def budget(self) -> Budget:
        return Budget(self.max_card, self.max_work)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def load_set(arg: str) -> setalg.FiniteSet:
    """A set file path, or an inline list such as ``{1,2,3}`` or ``1,2,3``."""
    path = Path(arg)
    if path.is_file():
        return setalg.read_set(path)
    body = arg.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    if body == "":
        return setalg.FiniteSet()
    try:
        return setalg.FiniteSet(parse_rational(t) for t in body.split(","))
    except ParseError:
        raise ParseError(f"{arg!r} is neither a readable file nor an inline set") from None


def load_lattice(arg: str) -> multdim.LatticeSet:
    path = Path(arg)
    if path.is_file():
        return multdim.read_lattice(path)
    return multdim.parse_lattice_text(arg.replace(";", "\n"), "<inline>")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _config(args) -> Config:
    return Config(args.max_card, args.max_work, args.threads, args.format, args.seed)


# -- subcommands -----------------------------------------------------------------

def cmd_setop(args) -> int:
    cfg = _config(args)
    b = cfg.budget
    A = load_set(args.a) if args.a else setalg.FiniteSet()
    B = load_set(args.b) if args.b else setalg.FiniteSet()
    op = args.op
    if op == "gproxy":
        g = setalg.g_proxy(A, b)
        _emit(f"Aplus={g.aplus} Atimes={g.atimes} g={g.g}\n", args.out)
        return EXIT_OK
    if op == "sumset":
        res = setalg.sumset(A, B, b)
    elif op == "productset":
        res = setalg.productset(A, B, b)
    elif op == "combo":
        res = setalg.linear_combo(args.k if args.k is not None else 1, A,
                                  args.l if args.l is not None else 0, B, b)
    elif op == "diffcombo":
        n = args.n if args.n is not None else (args.k if args.k is not None else 1)
        m = args.m if args.m is not None else (args.l if args.l is not None else 1)
        res = setalg.difference_combo(n, m, A, b)
    elif op == "subsetsums":
        res = setalg.subset_sums(A, b)
    elif op == "subsetproducts":
        res = setalg.subset_products(A, b)
    elif op == "distinct_h":
        res = setalg.distinct_h_sums(A, args.h if args.h is not None else 1, b)
    else:
        res = setalg.bounded_simple_sums(A, args.h if args.h is not None else 1, b)
    _emit(setalg.format_set(res), args.out)
    return EXIT_OK


def cmd_dim(args) -> int:
    A = load_set(args.a)
    E = multdim.embed(A)
    lines = [
        f"mult_dim: {E.dim}",
        f"free_rank: {E.free_rank}",
        f"torsion: {str(E.torsion).lower()}",
        f"primes: {' '.join(map(str, E.primes)) or '-'}",
        "coords:",
    ]
    for x, (s, v) in zip(E.elements, E.coords):
        lines.append(f"  {x} -> sign {s}, ({', '.join(map(str, v))})")
    block = {
        "mult_dim": E.dim,
        "free_rank": E.free_rank,
        "torsion": E.torsion,
        "primes": list(E.primes),
        "basis": [list(b) for b in E.basis],
        "coords": [{"element": str(x), "sign": s, "vector": list(v)} for x, (s, v) in zip(E.elements, E.coords)],
    }
    _emit("\n".join(lines) + "\n" + json.dumps(block, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    claim_id = args.claim_pos or args.claim
    if not claim_id:
        raise ParamError("no claim given")
    if claim_id not in REGISTRY:
        raise UnknownClaim(claim_id)
    entry = REGISTRY[claim_id]
    uses = entry.required | entry.optional
    kw = {}
    if args.a:
        kw["A"] = load_set(args.a)
    if args.b:
        kw["B"] = load_set(args.b)
    elif "B" in uses and "A" in kw and not (args.x or args.y):
        kw["B"] = kw["A"]
    if args.x:
        kw["X"] = load_lattice(args.x)
    if args.y:
        kw["Y"] = load_lattice(args.y)
    for name in ("h", "k", "l", "n", "m"):
        if getattr(args, name) is not None:
            kw[name] = getattr(args, name)
    for flag, name in (("alpha", "alpha"), ("epsilon", "epsilon"), ("K", "K_param"), ("C", "C_ratio")):
        if getattr(args, flag) is not None:
            kw[name] = parse_rational(getattr(args, flag))
    if args.assume_large_d:
        kw["assume_large_d"] = True
    inst = ClaimInstance(claim_id, **kw)
    try:
        v = verify(inst, _config(args).budget)
    except (PremiseViolated, AssertionError) as exc:
        v = error_verdict(claim_id, inst.echo(), exc)
    _emit(v.to_json() + "\n", args.out)
    return EXIT_ASSERT if v.failed_assert else EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _config(args)
    try:
        text = Path(args.manifest).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read manifest: {exc}") from None
    specs, claims = families.load_manifest(text, cfg.seed)
    verdicts = families.sweep(specs, claims, cfg.budget, cfg.threads)
    render = families.report_csv if cfg.format == "csv" else families.report_json
    _emit(render(verdicts, timing=args.timing), args.out)
    s = families.summarize(verdicts)
    print(
        f"verdicts={len(verdicts)} assert: {s['assert_holds']} hold, {s['assert_fails']} fail; "
        f"report: {s['report_holds']} hold, {s['report_fails']} fail; errors={s['errors']}",
        file=sys.stderr,
    )
    return EXIT_ASSERT if s["assert_fails"] else EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-card", type=_positive, default=DEFAULT_MAX_CARD)
    common.add_argument("--max-work", type=_positive, default=DEFAULT_MAX_WORK)
    common.add_argument("--threads", type=_positive, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write data here instead of stdout")

    p = argparse.ArgumentParser(prog="sumprod", description="Exact sum-product computations and claim checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("setop", parents=[common], help="set algebra on set files")
    s.add_argument("op", choices=SETOPS)
    s.add_argument("--a")
    s.add_argument("--b")
    for name in ("k", "l", "h", "n", "m"):
        s.add_argument(f"--{name}", type=int)
    s.set_defaults(func=cmd_setop)

    d = sub.add_parser("dim", parents=[common], help="multiplicative dimension and coordinates")
    d.add_argument("--a", required=True)
    d.set_defaults(func=cmd_dim)

    v = sub.add_parser("verify", parents=[common], help="check one claim instance")
    v.add_argument("claim_pos", nargs="?", metavar="CLAIM")
    v.add_argument("--claim")
    v.add_argument("--a")
    v.add_argument("--b")
    v.add_argument("--x", help="lattice set file (or 'x1,x2;y1,y2')")
    v.add_argument("--y")
    for name in ("h", "k", "l", "n", "m"):
        v.add_argument(f"--{name}", type=int)
    v.add_argument("--alpha")
    v.add_argument("--epsilon")
    v.add_argument("--K")
    v.add_argument("--C")
    v.add_argument("--assume-large-d", action="store_true")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("sweep", parents=[common], help="run a manifest of families x claims")
    w.add_argument("manifest")
    w.add_argument("--timing", action="store_true", help="record elapsed_ms (reports stop being byte-reproducible)")
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UnknownClaim as exc:
        print(f"error: unknown claim {exc.args[0]!r}", file=sys.stderr)
        return EXIT_UNKNOWN
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc} (raise --max-card/--max-work)", file=sys.stderr)
        return EXIT_BUDGET
    except EmptyStarSet as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (ParseError, ParamError, InvalidSpec, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
