"""Seeded random instance generators shared by the unit and acceptance tests."""

from __future__ import annotations

import itertools
import random

from lgs.algebra import Add, Arrow, Empty, GuestExpr, Mul, Unary
from lgs.encoders import DecoratedGraph
from lgs.graph import Edge, Guest, HostGraph
from lgs.regex import Concat, EmptyLang, Lit, Plus, RegexAst, Union


def random_graph(rng: random.Random, n_nodes: int, n_edges: int, alphabet="ab",
                 prefix="h") -> HostGraph:
    nodes = [f"{prefix}{i}" for i in range(n_nodes)]
    possible = [Edge(s, a, t) for s in nodes for a in alphabet for t in nodes]
    edges = rng.sample(possible, min(n_edges, len(possible))) if nodes else []
    return HostGraph(frozenset(alphabet), frozenset(nodes), frozenset(edges))


def random_choice(rng: random.Random, out: frozenset, allow_nil: float = 0.3) -> frozenset:
    if not out:
        return frozenset([frozenset()]) if rng.random() > 0.1 else frozenset()
    out = sorted(out)
    sets = [set(rng.sample(out, rng.randint(1, len(out)))) for _ in range(rng.randint(1, 3))]
    for e in out:
        if not any(e in s for s in sets):
            rng.choice(sets).add(e)
    family = {frozenset(s) for s in sets}
    if rng.random() < allow_nil:
        family.add(frozenset())
    return frozenset(family)


def random_guest(rng: random.Random, n_nodes: int, n_edges: int, alphabet="ab", *,
                 p_must=0.4, p_unique=0.25, p_exclusive=0.25, prefix="g",
                 trim_alphabet=False) -> Guest:
    g = random_graph(rng, n_nodes, n_edges, alphabet, prefix)
    if trim_alphabet:
        g = HostGraph(frozenset(e.label for e in g.edges), g.nodes, g.edges)
    nodes = sorted(g.nodes)
    pick = lambda p: frozenset(v for v in nodes if rng.random() < p)  # noqa: E731
    return Guest(
        g,
        must=pick(p_must),
        unique=pick(p_unique),
        exclusive=pick(p_exclusive),
        choice={v: random_choice(rng, g.out_edges(v)) for v in nodes},
    )


def random_expr(rng: random.Random, depth: int, names="pqr", labels="ab") -> GuestExpr:
    def unit() -> Unary:
        flags = frozenset(f for f in ("must", "uniq", "excl", "nil") if rng.random() < 0.25)
        return Unary(rng.choice(names), flags)

    if depth == 0 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.05:
            return Empty()
        if roll < 0.45:
            return unit()
        return Arrow(unit(), rng.choice(labels), unit())
    cls = Add if rng.random() < 0.5 else Mul
    return cls(random_expr(rng, depth - 1, names, labels), random_expr(rng, depth - 1, names, labels))


def random_regex(rng: random.Random, depth: int, alphabet="ab", p_empty=0.0) -> RegexAst:
    """Random AST of depth at most ``depth``; a literal has depth 1."""
    if depth <= 1 or rng.random() < 0.3:
        if rng.random() < p_empty:
            return EmptyLang()
        return Lit(rng.choice(alphabet))
    roll = rng.random()
    sub = lambda: random_regex(rng, depth - 1, alphabet, p_empty)  # noqa: E731
    if roll < 0.25:
        return Plus(sub())
    if roll < 0.6:
        return Concat(sub(), sub())
    return Union(sub(), sub())


def all_regexes(depth: int, alphabet="ab", with_empty=True) -> list[RegexAst]:
    """Every AST of depth at most ``depth`` (a literal has depth 1)."""
    level = [Lit(a) for a in alphabet] + ([EmptyLang()] if with_empty else [])
    for _ in range(depth - 1):
        level = (
            level
            + [Plus(r) for r in level]
            + [Concat(x, y) for x, y in itertools.product(level, repeat=2)]
            + [Union(x, y) for x, y in itertools.product(level, repeat=2)]
        )
        level = list(dict.fromkeys(level))
    return level


def all_words(alphabet="ab", max_len=6) -> list[str]:
    return ["".join(w) for n in range(1, max_len + 1) for w in itertools.product(alphabet, repeat=n)]


def random_decorated(rng: random.Random, n_nodes: int, n_edges: int, depth: int,
                     alphabet="ab", self_loops=True) -> DecoratedGraph:
    nodes = [f"v{i}" for i in range(n_nodes)]
    pairs = [(s, t) for s in nodes for t in nodes if self_loops or s != t]
    chosen = rng.sample(pairs, min(n_edges, len(pairs)))
    return DecoratedGraph.from_labels(
        {p: random_regex(rng, depth, alphabet) for p in chosen}, nodes=nodes, alphabet=alphabet
    )
