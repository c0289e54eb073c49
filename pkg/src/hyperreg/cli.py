"""``hyperreg`` command line.

Exit codes: 0 ok, 2 usage or parse error, 3 precondition violation.
Decision commands print YES or NO on the first line, witnesses after.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import formats
from .boolean import BooleanFunction
from .hypergraph import (
    Hypergraph,
    count_k_cliques,
    find_k_clique,
    generate_parity_regular,
    generate_sum_regular,
    random_constant_sets,
    random_hypergraph,
    regularity,
)
from .product import regularize, signed_product
from .reductions import build_reduction, c4_expected_degree, c4_reduce, detect_induced_c4
from .solvers import solve_maxcsp
from .templates import build_template, count_template_cliques, verify_template

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION = 0, 2, 3


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    code: int
    stdout: str
    stderr: str = ""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _load_hgr(path: str):
    return formats.parse_hgr(_read(path))


def _signed(path: str):
    T = _load_hgr(path)
    if not isinstance(T, formats.SignedHypergraph):
        raise ValueError(f"{path} is not a signed hypergraph")
    return T


def cmd_template(args, out):
    T = build_template(args.h, args.k)
    _write(args.o, formats.format_hgr(T))
    print(f"vertices={T.base.n_vertices} edges={len(T.base.edges)} negative={len(T.negative)}", file=out)


def cmd_regularize(args, out):
    G = formats.as_unsigned(_load_hgr(args.i))
    GP, vmap = regularize(Hypergraph.flatten(G), G.h, args.k)
    _write(args.o, formats.format_hgr(GP))
    if args.map:
        _write(args.map, formats.format_product_map(vmap))
    lam = regularity(GP, G.h - 1).lam
    print(f"vertices={GP.n_vertices} edges={len(GP.edges)} lambda={lam}", file=out)


def cmd_verify(args, out):
    if args.what == "regular":
        if args.s is None:
            raise UsageError("verify regular needs --s")
        H = formats.as_unsigned(_load_hgr(args.i))
        rep = regularity(H, args.s)
        if rep.regular:
            print("YES", file=out)
            print(f"lambda={rep.lam}", file=out)
        else:
            tup, count = rep.witness
            print("NO", file=out)
            print(f"witness={' '.join(map(str, tup))} count={count}", file=out)
    elif args.what == "template":
        T = _signed(args.i)
        rep = verify_template(T)
        print("YES" if rep.ok else "NO", file=out)
        print(f"p1_lambda={rep.p1_lambda}", file=out)
        if rep.p1_detail:
            print(f"p1_detail={rep.p1_detail}", file=out)
        print(f"p2_clique={' '.join(map(str, rep.p2_clique)) if rep.p2_clique else None}", file=out)
        print(f"p3_violation={' '.join(map(str, rep.p3_violation)) if rep.p3_violation else None}", file=out)
    else:
        if not (args.i2 and args.i3):
            raise UsageError("verify product needs -i G -i2 T -i3 GP")
        G = formats.as_unsigned(_load_hgr(args.i))
        T = _signed(args.i2)
        GP = formats.as_unsigned(_load_hgr(args.i3))
        expect, _ = signed_product(Hypergraph.flatten(G), T)
        same = expect.part_sizes == GP.part_sizes and expect.edge_set == GP.edge_set
        print("YES" if same else "NO", file=out)
        if same:
            lam = regularity(GP, G.h - 1).lam
            print(f"lambda={lam} expected={(T.k - T.h + 1) * G.n_vertices}", file=out)
        else:
            extra = len(GP.edge_set - expect.edge_set)
            missing = len(expect.edge_set - GP.edge_set)
            print(f"extra_edges={extra} missing_edges={missing}", file=out)


def cmd_clique(args, out):
    H = _load_hgr(args.i)
    if args.count:
        if isinstance(H, formats.SignedHypergraph) and args.template:
            print(count_template_cliques(H), file=out)
        else:
            print(count_k_cliques(formats.as_unsigned(H)), file=out)
        return
    c = find_k_clique(formats.as_unsigned(H))
    if c is None:
        print("NO", file=out)
    else:
        print("YES", file=out)
        print(" ".join(map(str, c)), file=out)


def cmd_gen(args, out):
    if args.kind == "sum-regular":
        zero = True if args.zero_clique else False if args.no_zero else None
        sets = random_constant_sets(args.k, args.n, args.t, args.seed, zero=zero)
        H = generate_sum_regular(args.k, args.n, sets)
    elif args.kind == "parity-regular":
        H = generate_parity_regular(args.k, args.n, args.seed)
    else:
        if not 0 <= args.p <= 1:
            raise ValueError("p must lie in [0, 1]")
        H = random_hypergraph(args.k, args.h, args.n, args.p, args.seed)
    _write(args.o, formats.format_hgr(H))
    print(f"edges={len(H.edges)}", file=out)


def cmd_reduce(args, out):
    G = formats.as_unsigned(_load_hgr(args.i))
    if args.what == "csp":
        if not args.fn_tt:
            raise UsageError("reduce csp needs --fn-tt")
        try:
            phi = BooleanFunction.from_bits(args.fn_tt)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        r = build_reduction(G, phi)
        trailer = [f"tau={r.tau} case={r.case_tag} alpha={r.alpha} beta={r.beta}"]
        _write(args.o, formats.format_csp(r.instance, k=G.k, trailer=trailer))
        print(trailer[0], file=out)
    else:
        C = c4_reduce(G)
        _write(args.o, formats.format_graph(C))
        print(f"vertices={C.n_vertices} degree={c4_expected_degree(G)}", file=out)


def cmd_solve(args, out):
    inst, k = formats.parse_csp(_read(args.i))
    k = args.k if args.k is not None else k
    if k is None:
        raise UsageError("no --k given and the file header has none")
    if not 0 <= k <= inst.n_vars:
        raise ValueError(f"k={k} out of range for {inst.n_vars} variables")
    value, a = solve_maxcsp(inst, k, args.method, args.objective)
    print(f"value={value}", file=out)
    print(f"ones={a}", file=out)


def cmd_c4(args, out):
    G = formats.parse_graph(_read(args.i))
    cyc = detect_induced_c4(G)
    if cyc is None:
        print("NO", file=out)
    else:
        print("YES", file=out)
        print(" ".join(map(str, cyc)), file=out)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="hyperreg", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("template", help="build T(h,k)")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", required=True)
    p.set_defaults(fn=cmd_template)

    p = sub.add_parser("regularize", help="signed product with T(h,k)")
    p.add_argument("-i", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", required=True)
    p.add_argument("--map")
    p.set_defaults(fn=cmd_regularize)

    p = sub.add_parser("verify", help="check regularity, template properties, or a product")
    p.add_argument("what", choices=["regular", "template", "product"])
    p.add_argument("-i", required=True)
    p.add_argument("-i2")
    p.add_argument("-i3")
    p.add_argument("--s", type=int)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("clique", help="find or count k-cliques")
    p.add_argument("-i", required=True)
    p.add_argument("--count", action="store_true")
    p.add_argument("--template", action="store_true", help="also check every clique is diagonal")
    p.set_defaults(fn=cmd_clique)

    p = sub.add_parser("gen", help="instance generators")
    p.add_argument("kind", choices=["sum-regular", "parity-regular", "random"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--zero-clique", action="store_true")
    g.add_argument("--no-zero", action="store_true")
    p.add_argument("-o", required=True)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("reduce", help="hardness or 4-cycle reductions")
    p.add_argument("what", choices=["csp", "c4"])
    p.add_argument("-i", required=True)
    p.add_argument("--fn-tt")
    p.add_argument("-o", required=True)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("solve", help="weight-k maxCSP / minCSP")
    p.add_argument("-i", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--method", choices=["brute", "reduction"], default="reduction")
    p.add_argument("--objective", choices=["max", "min"], default="max")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("c4", help="induced 4-cycle detection")
    p.add_argument("-i", required=True)
    p.set_defaults(fn=cmd_c4)
    return ap


def _check_gen_args(args) -> None:
    if args.cmd != "gen":
        return
    if args.kind == "sum-regular" and args.t is None:
        raise UsageError("gen sum-regular needs --t")
    if args.kind == "random" and args.p is None:
        raise UsageError("gen random needs --p")


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    out, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stderr(err):
            args = build_parser().parse_args(argv)
        _check_gen_args(args)
        args.fn(args, out)
        code = EXIT_OK
    except SystemExit as exc:  # --help
        code = exc.code if isinstance(exc.code, int) else EXIT_OK
    except (UsageError, formats.FormatError) as exc:
        print(f"error: {exc}", file=err)
        code = EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        code = EXIT_PRECONDITION
    return CommandResult(code, out.getvalue(), err.getvalue())


def main(argv: Optional[Sequence[str]] = None) -> int:
    res = run(argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
