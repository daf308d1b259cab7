import itertools
import random

import pytest

from gen import random_decorated, random_graph
from lgs.encoders import DecoratedGraph
from lgs.graph import HostGraph
from lgs.oracles import (
    OracleCapExceeded,
    gs_oracle,
    in_language,
    maximal_simulation,
    rlpm_oracle,
    rlsgi_oracle,
    sgi_oracle,
)
from lgs.regex import Lit, parse_regex

LOOP_QUERY = HostGraph.from_edges([("s", "a", "s"), ("s", "b", "t")])


def _brute_sgi(q: HostGraph, h: HostGraph) -> bool:
    qn = sorted(q.nodes)
    for image in itertools.permutations(sorted(h.nodes), len(qn)):
        phi = dict(zip(qn, image))
        if all((phi[e.source], e.label, phi[e.target]) in h.edges for e in q.edges):
            return True
    return False


@pytest.mark.parametrize("seed", range(40))
def test_sgi_oracle_matches_permutations(seed):
    rng = random.Random(seed)
    q = random_graph(rng, rng.randint(1, 3), rng.randint(0, 4), prefix="q")
    h = random_graph(rng, rng.randint(1, 5), rng.randint(0, 10))
    phi = sgi_oracle(q, h)
    assert (phi is not None) == _brute_sgi(q, h)
    if phi is not None:
        assert len(set(phi.values())) == len(phi)
        assert all((phi[e.source], e.label, phi[e.target]) in h.edges for e in q.edges)


def test_gs_loop_query():
    h = HostGraph.from_edges([("x", "a", "x"), ("x", "b", "y")])
    rel = gs_oracle(LOOP_QUERY, h)
    assert rel == {("s", "x"), ("t", "x"), ("t", "y")}
    assert gs_oracle(LOOP_QUERY, HostGraph.from_edges([("x", "a", "x")])) is None


def test_maximal_simulation_is_a_simulation():
    rng = random.Random(3)
    for _ in range(30):
        q, h = random_graph(rng, 3, 4, prefix="q"), random_graph(rng, 4, 8)
        rel = maximal_simulation(q, h)
        for u, x in rel:
            for e in q.out_edges(u):
                assert any(f.label == e.label and (e.target, f.target) in rel for f in h.out_edges(x))


def test_rlpm_two_cycle():
    h = HostGraph.from_edges([("x", "a", "y"), ("y", "b", "x")])
    assert rlpm_oracle(parse_regex("(ab)+"), h)
    assert rlpm_oracle(parse_regex("ba"), h)
    assert not rlpm_oracle(parse_regex("aa"), h)


def test_rlsgi_decorated_query_embedding():
    q = DecoratedGraph.from_labels({
        ("u", "u"): parse_regex("a+"),
        ("v", "u"): parse_regex("bb"),
        ("v", "w"): parse_regex("(a|b)c+"),
        ("u", "w"): parse_regex("b"),
    })
    h = HostGraph.from_edges([
        ("U", "a", "i"), ("i", "a", "U"),
        ("V", "b", "j"), ("j", "b", "U"),
        ("V", "a", "k"), ("k", "c", "k"), ("k", "c", "W"),
        ("U", "b", "W"),
    ])
    phi = rlsgi_oracle(q, h)
    assert phi == {"u": "U", "v": "V", "w": "W"}
    # u -> w needs a single b step; with the b edge moved to i no embedding remains
    h2 = HostGraph(h.alphabet, h.nodes, h.edges - {("U", "b", "W")} | {("i", "b", "W")})
    assert rlsgi_oracle(q, h2) is None


def test_rlsgi_path_avoids_matched_nodes():
    q = DecoratedGraph.from_labels({("u", "v"): parse_regex("aa")}, nodes=["u", "v", "w"])
    h = HostGraph.from_edges([("x", "a", "y"), ("y", "a", "z")])
    # the middle node would have to host w as well as the path
    assert rlsgi_oracle(q, h) is None
    h2 = HostGraph.from_edges([("x", "a", "y"), ("y", "a", "z")], nodes=["t"])
    assert rlsgi_oracle(q, h2) == {"u": "x", "v": "z", "w": "t"}


def test_caps():
    big = HostGraph(nodes=frozenset(f"n{i}" for i in range(70)))
    with pytest.raises(OracleCapExceeded):
        sgi_oracle(LOOP_QUERY, big)
    assert sgi_oracle(LOOP_QUERY, big, caps={"host_nodes": 100}) is None
    with pytest.raises(OracleCapExceeded):
        rlsgi_oracle(random_decorated(random.Random(0), 2, 1, 1), big)


def test_membership_oracle():
    r = parse_regex("(ab)+")
    assert in_language(r, "ab") and in_language(r, "ababab")
    assert not in_language(r, "") and not in_language(r, "aba")
    assert in_language(Lit("a"), "a") and not in_language(parse_regex("a∅"), "a")
