"""Labelled directed graphs, guests, and candidate subgraphs of their product."""

from __future__ import annotations

from collections import defaultdict, deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import NamedTuple

Node = str
PairNode = tuple[Node, Node]


class Edge(NamedTuple):
    source: Node
    label: str
    target: Node


class PairEdge(NamedTuple):
    source: PairNode
    label: str
    target: PairNode


ChoiceSet = frozenset  # frozenset[Edge]
ChoiceFamily = frozenset  # frozenset[frozenset[Edge]]


@dataclass(frozen=True)
class HostGraph:
    """A finite labelled directed graph ``(alphabet, nodes, edges)``.

    Edges form a set, so two parallel edges must differ in label.
    """

    alphabet: frozenset[str] = frozenset()
    nodes: frozenset[Node] = frozenset()
    edges: frozenset[Edge] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset(Edge(*e) for e in self.edges))
        for e in self.edges:
            if e.source not in self.nodes or e.target not in self.nodes:
                raise ValueError(f"edge {tuple(e)} has an endpoint outside the node set")
            if e.label not in self.alphabet:
                raise ValueError(f"edge {tuple(e)} uses label {e.label!r} outside the alphabet")

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[Node, str, Node]],
        nodes: Iterable[Node] = (),
        alphabet: Iterable[str] = (),
    ) -> HostGraph:
        """Build a graph, inferring nodes and alphabet from the edges."""
        edges = [Edge(*e) for e in edges]
        all_nodes = set(nodes)
        all_labels = set(alphabet)
        for e in edges:
            all_nodes.update((e.source, e.target))
            all_labels.add(e.label)
        return cls(frozenset(all_labels), frozenset(all_nodes), frozenset(edges))

    def out_edges(self, v: Node) -> frozenset[Edge]:
        return self._out.get(v, frozenset())

    def in_edges(self, v: Node) -> frozenset[Edge]:
        return self._in.get(v, frozenset())

    @property
    def _out(self) -> Mapping[Node, frozenset[Edge]]:
        try:
            return self.__dict__["_out_cache"]
        except KeyError:
            pass
        out: dict[Node, set[Edge]] = defaultdict(set)
        for e in self.edges:
            out[e.source].add(e)
        cache = {v: frozenset(es) for v, es in out.items()}
        object.__setattr__(self, "_out_cache", cache)
        return cache

    @property
    def _in(self) -> Mapping[Node, frozenset[Edge]]:
        try:
            return self.__dict__["_in_cache"]
        except KeyError:
            pass
        inn: dict[Node, set[Edge]] = defaultdict(set)
        for e in self.edges:
            inn[e.target].add(e)
        cache = {v: frozenset(es) for v, es in inn.items()}
        object.__setattr__(self, "_in_cache", cache)
        return cache

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HostGraph):
            return NotImplemented
        return (self.alphabet, self.nodes, self.edges) == (other.alphabet, other.nodes, other.edges)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.nodes, self.edges))


def path_source(path: Iterable[Edge]) -> Node:
    return next(iter(path)).source


def path_label(path: Iterable[Edge]) -> str:
    return "".join(e.label for e in path)


def is_path(path: list[Edge]) -> bool:
    """True if ``path`` is a nonempty sequence of chained edges."""
    if not path:
        return False
    return all(path[i - 1].target == path[i].source for i in range(1, len(path)))


def tensor_product(g1: HostGraph, g2: HostGraph) -> HostGraph:
    """The tensor product: node pairs, with one edge per label-matched edge pair."""
    by_label: dict[str, list[Edge]] = defaultdict(list)
    for e in g2.edges:
        by_label[e.label].append(e)
    edges = [
        Edge((e1.source, e2.source), e1.label, (e1.target, e2.target))
        for e1 in g1.edges
        for e2 in by_label.get(e1.label, ())
    ]
    nodes = frozenset((u, v) for u in g1.nodes for v in g2.nodes)
    return HostGraph(g1.alphabet & g2.alphabet, nodes, frozenset(edges))


def successors(edges: Iterable[tuple]) -> dict:
    succ: dict = defaultdict(set)
    for s, _, t in edges:
        succ[s].add(t)
    return succ


def reachable_from(start, succ: Mapping) -> set:
    """Nodes reachable from ``start`` by a path of length at least one."""
    seen: set = set()
    queue = deque(succ.get(start, ()))
    while queue:
        v = queue.popleft()
        if v in seen:
            continue
        seen.add(v)
        queue.extend(succ.get(v, ()))
    return seen


def reachability(g: HostGraph) -> frozenset[tuple[Node, Node]]:
    """All ``(u, v)`` joined by a nonempty path; ``(u, u)`` only through a cycle."""
    succ = successors(g.edges)
    return frozenset((u, v) for u in g.nodes for v in reachable_from(u, succ))


@dataclass(frozen=True)
class Guest:
    """A host graph decorated with must/unique/exclusive sets and a choice function.

    ``choice`` maps every node to a family of sets of its out-edges whose union
    is exactly the node's out-edges.
    """

    graph: HostGraph
    must: frozenset[Node] = frozenset()
    unique: frozenset[Node] = frozenset()
    exclusive: frozenset[Node] = frozenset()
    choice: Mapping[Node, frozenset[frozenset[Edge]]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("must", "unique", "exclusive"):
            value = frozenset(getattr(self, name))
            object.__setattr__(self, name, value)
            stray = value - self.graph.nodes
            if stray:
                raise ValueError(f"{name} set mentions unknown nodes {sorted(stray)}")
        stray = set(self.choice) - self.graph.nodes
        if stray:
            raise ValueError(f"choice defined on unknown nodes {sorted(stray)}")
        normalized = {}
        for v in self.graph.nodes:
            family = frozenset(
                frozenset(Edge(*e) for e in gamma) for gamma in self.choice.get(v, ())
            )
            covered = frozenset().union(*family) if family else frozenset()
            if covered != self.graph.out_edges(v):
                raise ValueError(
                    f"choice({v!r}) covers {sorted(covered)} but out({v!r}) is "
                    f"{sorted(self.graph.out_edges(v))}"
                )
            normalized[v] = family
        object.__setattr__(self, "choice", MappingProxyType(normalized))

    @property
    def nodes(self) -> frozenset[Node]:
        return self.graph.nodes

    @property
    def edges(self) -> frozenset[Edge]:
        return self.graph.edges

    @property
    def alphabet(self) -> frozenset[str]:
        return self.graph.alphabet

    def out_edges(self, v: Node) -> frozenset[Edge]:
        return self.graph.out_edges(v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Guest):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.must == other.must
            and self.unique == other.unique
            and self.exclusive == other.exclusive
            and dict(self.choice) == dict(other.choice)
        )

    def __hash__(self) -> int:
        return hash((self.graph, self.must, self.unique, self.exclusive,
                     frozenset(self.choice.items())))


EMPTY_GUEST = Guest(HostGraph())


class InvalidCandidate(ValueError):
    """A candidate that is not a subgraph of the guest/host tensor product."""


@dataclass(frozen=True)
class CandidateSubgraph:
    """A set of node pairs and pair edges, meant to be a subgraph of ``G x H``."""

    pair_nodes: frozenset[PairNode] = frozenset()
    pair_edges: frozenset[PairEdge] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "pair_nodes", frozenset(tuple(p) for p in self.pair_nodes))
        object.__setattr__(
            self,
            "pair_edges",
            frozenset(PairEdge(tuple(s), a, tuple(t)) for s, a, t in self.pair_edges),
        )

    def __len__(self) -> int:
        return len(self.pair_nodes) + len(self.pair_edges)

    def issubset(self, other: CandidateSubgraph) -> bool:
        return self.pair_nodes <= other.pair_nodes and self.pair_edges <= other.pair_edges

    def union(self, other: CandidateSubgraph) -> CandidateSubgraph:
        return CandidateSubgraph(
            self.pair_nodes | other.pair_nodes, self.pair_edges | other.pair_edges
        )

    @classmethod
    def from_graph(cls, g: HostGraph) -> CandidateSubgraph:
        return cls(g.nodes, g.edges)


def full_product(guest: Guest, host: HostGraph) -> CandidateSubgraph:
    return CandidateSubgraph.from_graph(tensor_product(guest.graph, host))


def validate_candidate(guest: Guest, host: HostGraph, cand: CandidateSubgraph) -> None:
    """Raise :class:`InvalidCandidate` unless ``cand`` is a subgraph of ``G x H``."""
    for u, h in cand.pair_nodes:
        if u not in guest.nodes or h not in host.nodes:
            raise InvalidCandidate(f"pair {(u, h)} is not a node of the product")
    shared = guest.alphabet & host.alphabet
    for pe in cand.pair_edges:
        (u, h), a, (v, k) = pe
        if pe.source not in cand.pair_nodes or pe.target not in cand.pair_nodes:
            raise InvalidCandidate(f"pair edge {tuple(pe)} has an endpoint outside pair_nodes")
        if a not in shared:
            raise InvalidCandidate(f"pair edge {tuple(pe)} label {a!r} not in both alphabets")
        if Edge(u, a, v) not in guest.edges:
            raise InvalidCandidate(f"pair edge {tuple(pe)} projects to no guest edge")
        if Edge(h, a, k) not in host.edges:
            raise InvalidCandidate(f"pair edge {tuple(pe)} projects to no host edge")
