"""Line-oriented text formats (UTF-8, ``#`` starts a comment line).

HGR:    ``hgr k=<k> h=<h> parts=<n0,...> signed=<0|1>`` then ``e [+|-] p:i ...``
CSP:    ``csp vars=<n> k=<k>``, ``fn <name> arity=<r> tt=<bits>``, ``ct <name> <v> ...``
graph:  ``graph n=<N>`` then ``e <u> <v>`` with u < v
map:    ``v <p:i> = <g> x <p:i>``
"""

from __future__ import annotations

import io
from typing import Iterable, Optional, TextIO, Union

from .boolean import BooleanFunction
from .csp import Constraint, CspInstance, InvalidInstance
from .hypergraph import KPartiteHypergraph, VertexRef, validate
from .product import ProductVertexMap
from .reductions import SimpleGraph
from .templates import SignedHypergraph


class FormatError(ValueError):
    pass


def _lines(src: Union[str, TextIO]) -> list:
    text = src if isinstance(src, str) else src.read()
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s and not s.startswith("#"):
            out.append((no, s))
    return out


def _kv(tokens, no: int) -> dict:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise FormatError(f"line {no}: expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        if k in out:
            raise FormatError(f"line {no}: repeated key {k!r}")
        out[k] = v
    return out


def _int(s: str, no: int, what: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise FormatError(f"line {no}: bad {what} {s!r}") from None


def _vertex(tok: str, no: int) -> VertexRef:
    p, sep, i = tok.partition(":")
    if not sep:
        raise FormatError(f"line {no}: bad vertex token {tok!r}")
    return VertexRef(_int(p, no, "part"), _int(i, no, "index"))


def _fmt_edge(e) -> str:
    return " ".join(str(v) for v in e)


# HGR


def parse_hgr(src: Union[str, TextIO]) -> Union[KPartiteHypergraph, SignedHypergraph]:
    lines = _lines(src)
    if not lines:
        raise FormatError("empty HGR input")
    no, head = lines[0]
    tokens = head.split()
    if tokens[0] != "hgr":
        raise FormatError(f"line {no}: expected 'hgr' header")
    kv = _kv(tokens[1:], no)
    missing = {"k", "h", "parts"} - set(kv)
    if missing:
        raise FormatError(f"line {no}: header missing {sorted(missing)}")
    k, h = _int(kv["k"], no, "k"), _int(kv["h"], no, "h")
    parts = tuple(_int(x, no, "part size") for x in kv["parts"].split(","))
    signed = kv.get("signed", "0")
    if signed not in ("0", "1"):
        raise FormatError(f"line {no}: signed must be 0 or 1")
    signed = signed == "1"
    if len(parts) != k:
        raise FormatError(f"line {no}: {len(parts)} part sizes for k={k}")
    edges, negative = [], []
    for no, line in lines[1:]:
        tokens = line.split()
        if tokens[0] != "e":
            raise FormatError(f"line {no}: unknown record {tokens[0]!r}")
        tokens = tokens[1:]
        sign = "+"
        if signed:
            if not tokens or tokens[0] not in "+-":
                raise FormatError(f"line {no}: signed edge needs + or -")
            sign, tokens = tokens[0], tokens[1:]
        if len(tokens) != h:
            raise FormatError(f"line {no}: edge has {len(tokens)} vertices, expected {h}")
        e = tuple(_vertex(t, no) for t in tokens)
        if any(a.part >= b.part for a, b in zip(e, e[1:])):
            raise FormatError(f"line {no}: edge parts must be strictly increasing")
        edges.append(e)
        if sign == "-":
            negative.append(e)
    H = KPartiteHypergraph(k, h, parts, tuple(edges))
    report = validate(H)
    if not report.ok:
        raise FormatError("; ".join(report.violations))
    if signed:
        return SignedHypergraph(H, frozenset(negative))
    return H


def format_hgr(H: Union[KPartiteHypergraph, SignedHypergraph]) -> str:
    signed = isinstance(H, SignedHypergraph)
    base = H.base if signed else H
    out = io.StringIO()
    out.write(f"hgr k={base.k} h={base.h} parts={','.join(map(str, base.part_sizes))} signed={int(signed)}\n")
    for e in base.edges:
        if signed:
            out.write(f"e {'-' if e in H.negative else '+'} {_fmt_edge(e)}\n")
        else:
            out.write(f"e {_fmt_edge(e)}\n")
    return out.getvalue()


def as_unsigned(H) -> KPartiteHypergraph:
    return H.base if isinstance(H, SignedHypergraph) else H


# product map


def format_product_map(vmap: ProductVertexMap) -> str:
    out = io.StringIO()
    for u in range(vmap.n_g):
        for p, size in enumerate(vmap.part_sizes):
            for i in range(size):
                out.write(f"v {vmap.forward(u, (p, i))} = {u} x {p}:{i}\n")
    return out.getvalue()


def parse_product_map(src: Union[str, TextIO]) -> dict:
    out = {}
    for no, line in _lines(src):
        t = line.split()
        if len(t) != 6 or t[0] != "v" or t[2] != "=" or t[4] != "x":
            raise FormatError(f"line {no}: bad map line")
        out[_vertex(t[1], no)] = (_int(t[3], no, "vertex"), _vertex(t[5], no))
    return out


# CSP


def parse_csp(src: Union[str, TextIO]) -> tuple:
    """Return (instance, k or None)."""
    lines = _lines(src)
    if not lines:
        raise FormatError("empty CSP input")
    no, head = lines[0]
    tokens = head.split()
    if tokens[0] != "csp":
        raise FormatError(f"line {no}: expected 'csp' header")
    kv = _kv(tokens[1:], no)
    if "vars" not in kv:
        raise FormatError(f"line {no}: header missing vars")
    n = _int(kv["vars"], no, "vars")
    k = _int(kv["k"], no, "k") if "k" in kv else None
    fns, cons = {}, []
    for no, line in lines[1:]:
        t = line.split()
        if t[0] == "fn":
            if len(t) != 4:
                raise FormatError(f"line {no}: expected 'fn <name> arity=<r> tt=<bits>'")
            kv = _kv(t[2:], no)
            bits = kv.get("tt", "")
            if set(bits) - {"0", "1"} or "arity" not in kv:
                raise FormatError(f"line {no}: bad function line")
            try:
                f = BooleanFunction(_int(kv["arity"], no, "arity"), tuple(int(b) for b in bits))
            except ValueError as exc:
                raise FormatError(f"line {no}: {exc}") from None
            if t[1] in fns:
                raise FormatError(f"line {no}: function {t[1]!r} defined twice")
            fns[t[1]] = f
        elif t[0] == "ct":
            if len(t) < 2:
                raise FormatError(f"line {no}: constraint needs a function name")
            cons.append(Constraint(t[1], tuple(_int(v, no, "variable") for v in t[2:])))
        else:
            raise FormatError(f"line {no}: unknown record {t[0]!r}")
    try:
        return CspInstance(n, fns, cons), k
    except InvalidInstance as exc:
        raise FormatError(str(exc)) from None


def format_csp(inst: CspInstance, k: Optional[int] = None, trailer: Iterable[str] = ()) -> str:
    out = io.StringIO()
    out.write(f"csp vars={inst.n_vars}" + (f" k={k}" if k is not None else "") + "\n")
    for name, f in inst.functions.items():
        out.write(f"fn {name} arity={f.arity} tt={f.bits}\n")
    for c in inst.constraints:
        out.write(f"ct {c.fn} {' '.join(map(str, c.vars))}\n")
    for line in trailer:
        out.write(f"# {line}\n")
    return out.getvalue()


def parse_csp_trailer(src: str) -> dict:
    """Read ``# tau=.. case=..`` comment lines back."""
    out = {}
    for line in src.splitlines():
        if line.startswith("# ") and "=" in line:
            for tok in line[2:].split():
                if "=" in tok:
                    k, v = tok.split("=", 1)
                    out[k] = v
    return out


# simple graphs


def parse_graph(src: Union[str, TextIO]) -> SimpleGraph:
    lines = _lines(src)
    if not lines:
        raise FormatError("empty graph input")
    no, head = lines[0]
    t = head.split()
    if t[0] != "graph":
        raise FormatError(f"line {no}: expected 'graph' header")
    kv = _kv(t[1:], no)
    if "n" not in kv:
        raise FormatError(f"line {no}: header missing n")
    N = _int(kv["n"], no, "n")
    edges = []
    seen = set()
    for no, line in lines[1:]:
        t = line.split()
        if t[0] != "e" or len(t) != 3:
            raise FormatError(f"line {no}: expected 'e <u> <v>'")
        u, v = _int(t[1], no, "vertex"), _int(t[2], no, "vertex")
        if not 0 <= u < v < N:
            raise FormatError(f"line {no}: need 0 <= u < v < n")
        if (u, v) in seen:
            raise FormatError(f"line {no}: duplicate edge")
        seen.add((u, v))
        edges.append((u, v))
    return SimpleGraph(N, frozenset(edges))


def format_graph(G: SimpleGraph) -> str:
    out = io.StringIO()
    out.write(f"graph n={G.n_vertices}\n")
    for u, v in sorted(G.edges):
        out.write(f"e {u} {v}\n")
    return out.getvalue()
