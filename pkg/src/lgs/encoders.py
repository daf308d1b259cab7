"""Translations of classical matching problems into guests.

* :func:`encode_sgi` -- subgraph isomorphism
* :func:`encode_gs` -- graph simulation
* :func:`encode_rlpm` -- regular-language path matching
* :func:`encode_rlsgi` -- subgraph isomorphism with regular path edges
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from types import MappingProxyType

from .algebra import (
    Arrow,
    GuestExpr,
    Unary,
    add,
    evaluate,
    mul,
    product_of,
    rename,
    sum_of,
    unary,
)
from .graph import EMPTY_GUEST, Guest, HostGraph
from .regex import (
    RegexAst,
    is_empty_language,
    nfa_to_guest,
    normalize_nfa,
    regex_symbols,
    regex_to_nfa,
)

RESERVED = "#"


@dataclass(frozen=True)
class DecoratedGraph:
    """A graph whose edges carry nonempty epsilon-free regular languages."""

    alphabet: frozenset[str]
    nodes: frozenset[str]
    edges: frozenset[tuple[str, str]]
    labeling: Mapping[tuple[str, str], RegexAst]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        object.__setattr__(self, "labeling", MappingProxyType(
            {tuple(e): r for e, r in self.labeling.items()}))
        for s, t in self.edges:
            if s not in self.nodes or t not in self.nodes:
                raise ValueError(f"edge {(s, t)} has an endpoint outside the node set")
            if (s, t) not in self.labeling:
                raise ValueError(f"edge {(s, t)} has no language")
            r = self.labeling[(s, t)]
            if is_empty_language(r):
                raise ValueError(f"edge {(s, t)} is labelled with the empty language")
            stray = regex_symbols(r) - self.alphabet
            if stray:
                raise ValueError(f"edge {(s, t)} uses symbols {sorted(stray)} outside the alphabet")
        if set(self.labeling) - self.edges:
            raise ValueError("labeling mentions edges outside the edge set")

    @classmethod
    def from_labels(cls, labels: Mapping[tuple[str, str], RegexAst],
                    nodes: Iterable[str] = (), alphabet: Iterable[str] = ()) -> DecoratedGraph:
        all_nodes = set(nodes)
        sigma = set(alphabet)
        for (s, t), r in labels.items():
            all_nodes.update((s, t))
            sigma |= regex_symbols(r)
        return cls(frozenset(sigma), frozenset(all_nodes), frozenset(labels), labels)

    def out_degree(self, v: str) -> int:
        return sum(1 for s, _ in self.edges if s == v)


def _query_expr(q: HostGraph, flags: Iterable[str]) -> GuestExpr:
    flags = frozenset(flags)
    units = [
        Unary(v, flags | ({"nil"} if not q.out_edges(v) else set()))
        for v in sorted(q.nodes)
    ]
    # one product of arrows per source node; a single product over all edges
    # would annihilate the choice of any node that is also an arrow target
    per_source = [
        product_of(Arrow(Unary(e.source), e.label, Unary(e.target)) for e in sorted(q.out_edges(v)))
        for v in sorted(q.nodes)
        if q.out_edges(v)
    ]
    return sum_of(units + per_source)


def sgi_expr(q: HostGraph) -> GuestExpr:
    return _query_expr(q, {"must", "uniq", "excl"})


def gs_expr(q: HostGraph) -> GuestExpr:
    return _query_expr(q, {"must"})


def encode_sgi(q: HostGraph) -> Guest:
    """Guest whose LGSs in a host are exactly the embeddings of ``q``.

    Every node is must, unique and exclusive; ``choice(v) = {out(v)}``.
    """
    return evaluate(sgi_expr(q))


def encode_gs(q: HostGraph) -> Guest:
    """Guest with an LGS in a host iff the host simulates ``q``."""
    return evaluate(gs_expr(q))


def encode_rlpm(r: RegexAst, prefix: str = "q") -> Guest:
    """Guest with an LGS in a host iff some host path spells a word of ``r``."""
    if is_empty_language(r):
        raise ValueError("cannot encode the empty language")
    return nfa_to_guest(normalize_nfa(regex_to_nfa(r, prefix), prefix))


def edge_prefix(index: int) -> str:
    return f"e{index}{RESERVED}"


def encode_rlsgi(q: DecoratedGraph, *, merge: str = "mul") -> Guest:
    """Guest for subgraph isomorphism where query edges match host paths.

    Each query edge ``(s, t)`` contributes the path-matching guest of its
    language, with internal states named ``e<i>#<k>``, initial state renamed to
    ``s`` and final state to ``t``. When ``s == t`` the final state is merged
    into ``s`` using ``merge`` (``"mul"`` by default; ``"add"`` is kept for
    comparison and lets ``s`` skip its loop). Edge guests are multiplied and
    each query node is added as a must/unique/exclusive unary, with ``nil``
    when it has no outgoing query edges.
    """
    bad = sorted(v for v in q.nodes if RESERVED in v)
    if bad:
        raise ValueError(f"query node names may not contain {RESERVED!r}: {bad}")
    g = EMPTY_GUEST
    for i, (s, t) in enumerate(sorted(q.edges)):
        r = q.labeling[(s, t)]
        if is_empty_language(r):
            raise ValueError(f"edge {(s, t)} is labelled with the empty language")
        prefix = edge_prefix(i)
        n = normalize_nfa(regex_to_nfa(r, prefix), prefix)
        ge = rename(nfa_to_guest(n), n.initial, s)
        ge = rename(ge, n.final, t, merge=merge if s == t else None)
        g = mul(g, ge)
    for v in sorted(q.nodes):
        flags = {"must", "uniq", "excl"}
        if q.out_degree(v) == 0:
            flags.add("nil")
        g = add(g, unary(v, flags))
    return g


def literal_product_encoding(q: HostGraph, flags: Iterable[str]) -> Guest:
    """Sum of unaries plus a single product over every edge arrow.

    Kept to document why :func:`encode_sgi` groups arrows by source node: as
    the target of one arrow a node has the empty choice family, so the product
    with an arrow leaving it is undefined and this raises
    :class:`lgs.algebra.UndefinedProduct` whenever some node is both a source
    and a target.
    """
    flags = frozenset(flags)
    units = [Unary(v, flags | ({"nil"} if not q.out_edges(v) else set())) for v in sorted(q.nodes)]
    arrows = [Arrow(Unary(e.source), e.label, Unary(e.target)) for e in sorted(q.edges)]
    return evaluate(sum_of(units + ([product_of(arrows)] if arrows else [])))
