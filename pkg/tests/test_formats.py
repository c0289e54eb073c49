import random

import pytest
from hypothesis import given, settings, strategies as st

from hyperreg import formats
from hyperreg.boolean import MAJ3, XOR2
from hyperreg.csp import Constraint, CspInstance
from hyperreg.hypergraph import random_hypergraph
from hyperreg.product import ProductVertexMap
from hyperreg.reductions import SimpleGraph
from hyperreg.templates import build_template


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 5), st.integers(1, 3), st.floats(0, 1), st.integers(0, 10 ** 6))
def test_hgr_round_trip(k, n, p, seed):
    H = random_hypergraph(k, min(3, k - 1), n, p, seed)
    text = formats.format_hgr(H)
    assert formats.parse_hgr(text) == H
    assert formats.format_hgr(formats.parse_hgr(text)) == text


def test_signed_hgr_round_trip():
    T = build_template(2, 3)
    back = formats.parse_hgr(formats.format_hgr(T))
    assert back.base.edge_set == T.base.edge_set and back.negative == T.negative
    assert formats.as_unsigned(back).edge_set == T.base.edge_set


@pytest.mark.parametrize(
    "text",
    [
        "",
        "graph n=3",
        "hgr k=3 h=2",
        "hgr k=3 h=2 parts=2,2",
        "hgr k=3 h=2 parts=2,2,2 signed=2",
        "hgr k=3 h=2 parts=2,2,2\ne 0:0",
        "hgr k=3 h=2 parts=2,2,2\ne 0:0 0:1",
        "hgr k=3 h=2 parts=2,2,2\ne 0:0 1:5",
        "hgr k=3 h=2 parts=2,2,2\ne 0:0 1:x",
        "hgr k=3 h=2 parts=2,2,2\ne 0:0 1:0\ne 0:0 1:0",
        "hgr k=3 h=2 parts=2,2,2 signed=1\ne 0:0 1:0",
        "hgr k=3 h=2 parts=2,2,2\nv 0:0 1:0",
    ],
)
def test_hgr_parse_errors(text):
    with pytest.raises(formats.FormatError):
        formats.parse_hgr(text)


def test_comments_and_blank_lines():
    text = "# header comment\n\nhgr k=3 h=2 parts=1,1,1\n# edge\ne 0:0 2:0\n"
    H = formats.parse_hgr(text)
    assert len(H.edges) == 1


def test_csp_round_trip():
    inst = CspInstance(5, {"maj3": MAJ3, "xor2": XOR2}, [Constraint("maj3", (0, 3, 1)), Constraint("xor2", (4, 2))])
    text = formats.format_csp(inst, k=2, trailer=["tau=7 case=beta_pos"])
    back, k = formats.parse_csp(text)
    assert k == 2 and back == inst
    assert formats.parse_csp_trailer(text) == {"tau": "7", "case": "beta_pos"}
    assert formats.parse_csp(formats.format_csp(inst))[1] is None


@pytest.mark.parametrize(
    "text",
    [
        "",
        "csp k=2",
        "csp vars=3\nfn f arity=2 tt=012",
        "csp vars=3\nfn f arity=2 tt=0110\nfn f arity=2 tt=0110",
        "csp vars=3\nfn f arity=3 tt=0110",
        "csp vars=3\nct g 0 1",
        "csp vars=3\nfn f arity=2 tt=0110\nct f 0 0",
        "csp vars=3\nfn f arity=2 tt=0110\nct f 0 7",
        "csp vars=3\nxx",
    ],
)
def test_csp_parse_errors(text):
    with pytest.raises(formats.FormatError):
        formats.parse_csp(text)


def test_graph_round_trip_and_errors():
    rng = random.Random(0)
    G = SimpleGraph(6, frozenset((u, v) for u in range(6) for v in range(u + 1, 6) if rng.random() < 0.5))
    assert formats.parse_graph(formats.format_graph(G)) == G
    for bad in ["graph", "graph n=3\ne 1 0", "graph n=3\ne 0 1\ne 0 1", "graph n=3\ne 0 3", "graph n=3\nf 0 1"]:
        with pytest.raises(formats.FormatError):
            formats.parse_graph(bad)


def test_product_map_round_trip():
    vmap = ProductVertexMap(2, (3, 3, 3))
    parsed = formats.parse_product_map(formats.format_product_map(vmap))
    assert len(parsed) == 18
    for v, (u, t) in parsed.items():
        assert vmap.backward(v) == (u, t)
    with pytest.raises(formats.FormatError):
        formats.parse_product_map("v 0:0 = 0 y 0:0")
