"""Direct implementations of the classical matching problems.

These are deliberately independent of guests and LGSs so they can check the
encoders. Path languages are evaluated with a Thompson automaton (with
epsilon moves), not the position automaton used by the encoders.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from collections.abc import Sequence
from functools import lru_cache

from .encoders import DecoratedGraph
from .graph import HostGraph
from .regex import Concat, EmptyLang, Lit, Plus, RegexAst, Union

DEFAULT_CAPS = {"query_nodes": 8, "host_nodes": 64}


class OracleCapExceeded(ValueError):
    pass


def _check_caps(q_nodes: int, h_nodes: int, caps: dict | None) -> None:
    caps = {**DEFAULT_CAPS, **(caps or {})}
    if q_nodes > caps["query_nodes"] or h_nodes > caps["host_nodes"]:
        raise OracleCapExceeded(
            f"instance ({q_nodes} query nodes, {h_nodes} host nodes) exceeds caps {caps}"
        )


def sgi_oracle(q: HostGraph, h: HostGraph, caps: dict | None = None) -> dict | None:
    """Backtracking search for an injective, edge-preserving node map of ``q`` into ``h``.

    Returns the node map, or ``None``.
    """
    _check_caps(len(q.nodes), len(h.nodes), caps)
    order = sorted(q.nodes, key=lambda v: (-len(q.out_edges(v)) - len(q.in_edges(v)), v))
    host_nodes = sorted(h.nodes)
    phi: dict = {}

    def consistent(v, x) -> bool:
        for e in q.out_edges(v):
            if e.target in phi or e.target == v:
                tx = x if e.target == v else phi[e.target]
                if (x, e.label, tx) not in h.edges:
                    return False
        for e in q.in_edges(v):
            if e.source in phi and (phi[e.source], e.label, x) not in h.edges:
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = set(phi.values())
        for x in host_nodes:
            if x not in used and consistent(v, x):
                phi[v] = x
                if extend(i + 1):
                    return True
                del phi[v]
        return False

    return dict(phi) if extend(0) else None


def maximal_simulation(q: HostGraph, h: HostGraph) -> frozenset:
    """Largest relation R such that every query edge out of u is matched from
    every R-partner of u by a same-label host edge to an R-partner of its target."""
    rel = {(u, x) for u in q.nodes for x in h.nodes}
    changed = True
    while changed:
        changed = False
        for u, x in sorted(rel):
            for e in q.out_edges(u):
                if not any(
                    f.label == e.label and (e.target, f.target) in rel for f in h.out_edges(x)
                ):
                    rel.discard((u, x))
                    changed = True
                    break
    return frozenset(rel)


def gs_oracle(q: HostGraph, h: HostGraph, caps: dict | None = None) -> frozenset | None:
    """The maximal graph simulation of ``q`` in ``h``, or ``None`` if none exists."""
    _check_caps(len(q.nodes), len(h.nodes), caps)
    rel = maximal_simulation(q, h)
    matched = {u for u, _ in rel}
    return rel if matched >= q.nodes else None


# --- regular languages ------------------------------------------------------


class Thompson:
    """Epsilon-NFA built by Thompson's construction."""

    def __init__(self, r: RegexAst):
        self.eps: dict[int, set[int]] = defaultdict(set)
        self.moves: dict[int, list[tuple[str, int]]] = defaultdict(list)
        self.count = 0
        self.start, self.accept = self._build(r)

    def _new(self) -> int:
        self.count += 1
        return self.count - 1

    def _build(self, r: RegexAst) -> tuple[int, int]:
        s, t = self._new(), self._new()
        if isinstance(r, EmptyLang):
            pass
        elif isinstance(r, Lit):
            self.moves[s].append((r.symbol, t))
        elif isinstance(r, Concat):
            s1, t1 = self._build(r.left)
            s2, t2 = self._build(r.right)
            self.eps[s].add(s1)
            self.eps[t1].add(s2)
            self.eps[t2].add(t)
        elif isinstance(r, Union):
            for part in (r.left, r.right):
                s1, t1 = self._build(part)
                self.eps[s].add(s1)
                self.eps[t1].add(t)
        elif isinstance(r, Plus):
            s1, t1 = self._build(r.inner)
            self.eps[s].add(s1)
            self.eps[t1].add(s1)
            self.eps[t1].add(t)
        else:
            raise TypeError(r)
        return s, t

    def closure(self, states) -> frozenset[int]:
        stack = list(states)
        seen = set(stack)
        while stack:
            for t in self.eps[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def step(self, states: frozenset[int], a: str) -> frozenset[int]:
        return self.closure(t for s in states for b, t in self.moves[s] if b == a)

    def matches(self, word: Sequence[str]) -> bool:
        cur = self.closure([self.start])
        for a in word:
            cur = self.step(cur, a)
        return self.accept in cur


def _path_exists(r: RegexAst, h: HostGraph, source, target, blocked=frozenset()) -> bool:
    """A host path of length >= 1 from ``source`` to ``target`` spelling a word of ``r``
    whose intermediate nodes avoid ``blocked``. BFS over host x automaton."""
    t = Thompson(r)
    start = t.closure([t.start])
    seen = set()
    queue = deque()
    for e in h.out_edges(source):
        queue.append((e.target, t.step(start, e.label)))
    while queue:
        node, states = queue.popleft()
        if not states:
            continue
        if node == target and t.accept in states:
            return True
        if node in blocked or (node, states) in seen:
            continue
        seen.add((node, states))
        for e in h.out_edges(node):
            queue.append((e.target, t.step(states, e.label)))
    return False


def rlpm_oracle(r: RegexAst, h: HostGraph, caps: dict | None = None) -> bool:
    """Is there a host path whose label is a word of ``r``?"""
    _check_caps(0, len(h.nodes), caps)
    t = Thompson(r)
    start = t.closure([t.start])
    seen = set()
    queue = deque()
    for e in h.edges:
        queue.append((e.target, t.step(start, e.label)))
    while queue:
        node, states = queue.popleft()
        if not states or (node, states) in seen:
            continue
        if t.accept in states:
            return True
        seen.add((node, states))
        for e in h.out_edges(node):
            queue.append((e.target, t.step(states, e.label)))
    return False


def rlsgi_oracle(q: DecoratedGraph, h: HostGraph, caps: dict | None = None) -> dict | None:
    """Enumerate injective node maps; each query edge needs a host path in its
    language whose intermediate nodes avoid the image of the map.

    Returns a satisfying node map, or ``None``.
    """
    _check_caps(len(q.nodes), len(h.nodes), caps)
    qn = sorted(q.nodes)
    for image in itertools.permutations(sorted(h.nodes), len(qn)):
        phi = dict(zip(qn, image))
        blocked = frozenset(image)
        if all(
            _path_exists(q.labeling[(s, t)], h, phi[s], phi[t], blocked)
            for s, t in sorted(q.edges)
        ):
            return phi
    return None


@lru_cache(maxsize=None)
def in_language(r: RegexAst, word: str) -> bool:
    """Recursive membership test straight from the definition of each operator."""
    if isinstance(r, EmptyLang):
        return False
    if isinstance(r, Lit):
        return word == r.symbol
    if isinstance(r, Union):
        return in_language(r.left, word) or in_language(r.right, word)
    if isinstance(r, Concat):
        return any(
            in_language(r.left, word[:i]) and in_language(r.right, word[i:])
            for i in range(1, len(word))
        )
    if isinstance(r, Plus):
        if in_language(r.inner, word):
            return True
        return any(
            in_language(r.inner, word[:i]) and in_language(r, word[i:])
            for i in range(1, len(word))
        )
    raise TypeError(r)
