"""Deciding and witnessing loose graph simulations.

:func:`prune` removes product nodes and edges that cannot belong to any LGS
inside a given subgraph. Without unique or exclusive nodes its fixed point is
the greatest LGS (:func:`greatest_lgs`); otherwise :func:`solve_emptiness`
branches on the remaining unique/exclusive conflicts and prunes again.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections import defaultdict, deque
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor

from .graph import (
    CandidateSubgraph,
    Edge,
    Guest,
    HostGraph,
    PairEdge,
    full_product,
    validate_candidate,
)
from .verify import check_lgs1, check_lgs2, check_lgs3, check_lgs4, check_lgs5, must_reach

log = logging.getLogger(__name__)

DEFAULT_BRUTE_FORCE_CAP = 14


class PreconditionError(ValueError):
    """The guest is outside the fragment an algorithm supports."""


class CapExceeded(ValueError):
    """An exhaustive procedure was asked to run on an instance above its cap."""


class _State:
    """Mutable working copy of a candidate subgraph with adjacency indexes."""

    def __init__(self, cand: CandidateSubgraph):
        self.nodes: set = set(cand.pair_nodes)
        self.out: dict = defaultdict(set)
        self.inc: dict = defaultdict(set)
        for pe in cand.pair_edges:
            self.out[pe.source].add(pe)
            self.inc[pe.target].add(pe)

    def remove_edge(self, pe: PairEdge) -> None:
        self.out[pe.source].discard(pe)
        self.inc[pe.target].discard(pe)

    def remove_node(self, pair) -> None:
        for pe in list(self.out.pop(pair, ())):
            self.inc[pe.target].discard(pe)
        for pe in list(self.inc.pop(pair, ())):
            self.out[pe.source].discard(pe)
        self.nodes.discard(pair)

    def freeze(self) -> CandidateSubgraph:
        edges = frozenset(pe for pair in self.nodes for pe in self.out.get(pair, ()))
        return CandidateSubgraph(frozenset(self.nodes), edges)


def _can_reach(state: _State, must: frozenset) -> dict:
    """For each must node m, the pairs with a nonempty path to some ``(m, _)``."""
    result = {}
    for m in must:
        seen: set = set()
        queue = deque(pe.source for pair in state.nodes if pair[0] == m for pe in state.inc[pair])
        while queue:
            p = queue.popleft()
            if p in seen:
                continue
            seen.add(p)
            queue.extend(pe.source for pe in state.inc[p])
        result[m] = seen
    return result


def prune(guest: Guest, host: HostGraph, start: CandidateSubgraph | None = None) -> CandidateSubgraph:
    """Greatest subgraph of ``start`` closed under the edge and node removal rules.

    Edge rule: drop a pair edge unless some choice set containing its guest
    edge is fully realised at its source pair. Node rule: drop a pair with no
    outgoing edges whose guest node cannot choose the empty set, or a pair
    that cannot reach a must node its guest node reaches. No LGS contained in
    ``start`` loses an element. ``start`` defaults to the full product.
    """
    if start is None:
        start = full_product(guest, host)
    else:
        validate_candidate(guest, host, start)
    state = _State(start)
    reach_g = must_reach(guest)
    changed = True
    while changed:
        changed = False
        can_reach = _can_reach(state, guest.must)
        for pair in sorted(state.nodes):
            if pair not in state.nodes:
                continue
            u = pair[0]
            family = guest.choice[u]
            out = state.out[pair]
            while out:
                realised = {Edge(u, pe.label, pe.target[0]) for pe in out}
                justified = set().union(*(g for g in family if g <= realised))
                doomed = [pe for pe in out if Edge(u, pe.label, pe.target[0]) not in justified]
                if not doomed:
                    break
                for pe in doomed:
                    state.remove_edge(pe)
                changed = True
            if (not out and frozenset() not in family) or any(
                pair not in can_reach[m] for m in reach_g[u]
            ):
                state.remove_node(pair)
                changed = True
    return state.freeze()


def _must_matched(guest: Guest, cand: CandidateSubgraph) -> bool:
    return check_lgs1(guest, HostGraph(), cand).passed


def greatest_lgs(guest: Guest, host: HostGraph) -> CandidateSubgraph | None:
    """The union of all LGSs, or ``None`` when there is none.

    Only defined for guests with empty unique and exclusive sets.
    """
    if guest.unique or guest.exclusive:
        raise PreconditionError(
            "greatest LGS requires empty unique and exclusive sets "
            f"(unique={sorted(guest.unique)}, exclusive={sorted(guest.exclusive)})"
        )
    s = prune(guest, host)
    return s if _must_matched(guest, s) else None


# --- general solver ---------------------------------------------------------


def _restrict(cand: CandidateSubgraph, drop: set) -> CandidateSubgraph:
    nodes = cand.pair_nodes - drop
    edges = frozenset(pe for pe in cand.pair_edges if pe.source in nodes and pe.target in nodes)
    return CandidateSubgraph(nodes, edges)


def _conflict_branches(guest: Guest, cand: CandidateSubgraph) -> list[CandidateSubgraph]:
    """Split ``cand`` on its smallest unique/exclusive conflict.

    Returns no branches when ``cand`` has no conflict. Every LGS inside
    ``cand`` is inside at least one branch, and each branch is strictly smaller.
    """
    partners: dict = defaultdict(set)
    sharers: dict = defaultdict(set)
    for u, h in cand.pair_nodes:
        partners[u].add(h)
        sharers[h].add(u)
    options = []
    for u in sorted(guest.unique):
        hs = sorted(partners[u])
        if len(hs) > 1:
            branches = [{(u, k) for k in hs if k != h} for h in hs]
            options.append((len(hs), 0, u, branches))
    for h in sorted(sharers):
        us = sharers[h]
        if len(us) < 2:
            continue
        for u in sorted(us & guest.exclusive):
            branches = [{(u, h)}, {(w, h) for w in us if w != u}]
            options.append((len(us), 1, (h, u), branches))
    if not options:
        return []
    *_, branches = min(options, key=lambda o: o[:3])
    return [_restrict(cand, drop) for drop in branches]


def _search(guest: Guest, host: HostGraph, cand: CandidateSubgraph) -> CandidateSubgraph | None:
    cand = prune(guest, host, cand)
    if not _must_matched(guest, cand):
        return None
    branches = _conflict_branches(guest, cand)
    if not branches:
        return cand
    for b in branches:
        found = _search(guest, host, b)
        if found is not None:
            return found
    return None


def solver_threads() -> int:
    try:
        return max(0, int(os.environ.get("LGS_THREADS", "0")))
    except ValueError:
        return 0


def solve_emptiness(guest: Guest, host: HostGraph, threads: int | None = None) -> CandidateSubgraph | None:
    """Return an LGS of ``guest`` in ``host``, or ``None`` if there is none.

    Branch and prune: prune the product, give up if a must node is lost,
    otherwise split on a unique or exclusive conflict and recurse. A pruned,
    conflict-free state with every must node matched is an LGS. The witness is
    the first one in the deterministic branch order, whatever ``threads`` is
    (default: ``$LGS_THREADS``, 0 meaning sequential).
    """
    if threads is None:
        threads = solver_threads()
    root = prune(guest, host)
    if not _must_matched(guest, root):
        return None
    branches = _conflict_branches(guest, root)
    if not branches:
        return root
    if threads <= 1:
        for b in branches:
            found = _search(guest, host, b)
            if found is not None:
                return found
        return None
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda b: _search(guest, host, b), branches))
    return next((r for r in results if r is not None), None)


# --- exhaustive reference ---------------------------------------------------


def _powerset(items: list) -> Iterator[tuple]:
    return itertools.chain.from_iterable(
        itertools.combinations(items, k) for k in range(len(items) + 1)
    )


def iter_lgs(guest: Guest, host: HostGraph, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> Iterator[CandidateSubgraph]:
    """Yield every LGS by testing every subgraph of the product.

    Raises :class:`CapExceeded` when the product has more than ``cap`` nodes
    plus edges.
    """
    product = full_product(guest, host)
    size = len(product.pair_nodes) + len(product.pair_edges)
    if size > cap:
        raise CapExceeded(f"product has {size} nodes+edges, cap is {cap}")
    nodes = sorted(product.pair_nodes)
    for chosen in _powerset(nodes):
        chosen_set = frozenset(chosen)
        shell = CandidateSubgraph(chosen_set, frozenset())
        # node-only conditions do not depend on the edges
        if not (check_lgs1(guest, host, shell) and check_lgs2(guest, host, shell)
                and check_lgs3(guest, host, shell)):
            continue
        induced = sorted(pe for pe in product.pair_edges
                         if pe.source in chosen_set and pe.target in chosen_set)
        for edges in _powerset(induced):
            cand = CandidateSubgraph(chosen_set, frozenset(edges))
            if check_lgs4(guest, host, cand) and check_lgs5(guest, host, cand):
                yield cand


def brute_force_lgs(guest: Guest, host: HostGraph, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> list[CandidateSubgraph]:
    """All LGSs of ``guest`` in ``host``; only for tiny products (see ``cap``)."""
    return list(iter_lgs(guest, host, cap))


def brute_force_nonempty(guest: Guest, host: HostGraph, cap: int = DEFAULT_BRUTE_FORCE_CAP) -> bool:
    return next(iter_lgs(guest, host, cap), None) is not None


def union_of(cands) -> CandidateSubgraph:
    out = CandidateSubgraph()
    for c in cands:
        out = out.union(c)
    return out
