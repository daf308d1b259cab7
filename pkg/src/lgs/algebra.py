"""Term algebra for building guests: unary guests, arrows, sum, product, renaming.

``add`` and ``mul`` differ only in how they combine the choice families of
nodes present in both operands: ``add`` takes the union of the families,
``mul`` takes pairwise unions of their members.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import reduce
from typing import Union

from .graph import EMPTY_GUEST, Edge, Guest, HostGraph

FLAGS = ("must", "uniq", "excl", "nil")


# --- expression tree -------------------------------------------------------


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Unary:
    name: str
    flags: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "flags", frozenset(self.flags))
        unknown = self.flags - set(FLAGS)
        if unknown:
            raise ValueError(f"unknown flags {sorted(unknown)} on {self.name!r}")


@dataclass(frozen=True)
class Arrow:
    src: Unary
    label: str
    dst: Unary


@dataclass(frozen=True)
class Add:
    left: GuestExpr
    right: GuestExpr


@dataclass(frozen=True)
class Mul:
    left: GuestExpr
    right: GuestExpr


@dataclass(frozen=True)
class Rename:
    inner: GuestExpr
    old: str
    new: str


GuestExpr = Union[Empty, Unary, Arrow, Add, Mul, Rename]


def sum_of(terms: Iterable[GuestExpr]) -> GuestExpr:
    terms = list(terms)
    return reduce(Add, terms) if terms else Empty()


def product_of(terms: Iterable[GuestExpr]) -> GuestExpr:
    terms = list(terms)
    return reduce(Mul, terms) if terms else Empty()


# --- guest constructors ----------------------------------------------------


def _flagged(name: str, flags: frozenset[str], flag: str) -> frozenset[str]:
    return frozenset([name]) if flag in flags else frozenset()


def unary(name: str, flags: Iterable[str] = ()) -> Guest:
    flags = Unary(name, frozenset(flags)).flags
    return Guest(
        HostGraph(frozenset(), frozenset([name]), frozenset()),
        must=_flagged(name, flags, "must"),
        unique=_flagged(name, flags, "uniq"),
        exclusive=_flagged(name, flags, "excl"),
        choice={name: frozenset([frozenset()]) if "nil" in flags else frozenset()},
    )


def arrow(p: Unary, label: str, q: Unary) -> Guest:
    """The single-edge guest ``p --label--> q``; ``p == q`` gives a self-loop."""
    gp, gq = unary(p.name, p.flags), unary(q.name, q.flags)
    e = Edge(p.name, label, q.name)
    single = frozenset([frozenset([e])])
    if p.name == q.name:
        choice = {p.name: gp.choice[p.name] | single | gq.choice[q.name]}
    else:
        choice = {p.name: gp.choice[p.name] | single, q.name: gq.choice[q.name]}
    return Guest(
        HostGraph(frozenset([label]), frozenset([p.name, q.name]), frozenset([e])),
        must=gp.must | gq.must,
        unique=gp.unique | gq.unique,
        exclusive=gp.exclusive | gq.exclusive,
        choice=choice,
    )


class UndefinedProduct(ValueError):
    pass


def _combine(g1: Guest, g2: Guest, both) -> Guest:
    choice = {}
    for x in g1.nodes | g2.nodes:
        if x in g1.nodes and x in g2.nodes:
            choice[x] = both(g1.choice[x], g2.choice[x])
        elif x in g1.nodes:
            choice[x] = g1.choice[x]
        else:
            choice[x] = g2.choice[x]
    return Guest(
        HostGraph(
            g1.alphabet | g2.alphabet, g1.nodes | g2.nodes, g1.edges | g2.edges
        ),
        must=g1.must | g2.must,
        unique=g1.unique | g2.unique,
        exclusive=g1.exclusive | g2.exclusive,
        choice=choice,
    )


def _cross(c1: frozenset, c2: frozenset) -> frozenset:
    return frozenset(a | b for a in c1 for b in c2)


def add(g1: Guest, g2: Guest) -> Guest:
    return _combine(g1, g2, frozenset.union)


def mul(g1: Guest, g2: Guest) -> Guest:
    """Product of two guests; shared nodes get pairwise unions of choice sets.

    The operation is partial: when a shared node has out-edges on one side and
    the empty family on the other, the pairwise unions cannot cover its
    out-edges and the result is not a guest, so :class:`UndefinedProduct` is
    raised.
    """
    for x in sorted(g1.nodes & g2.nodes):
        for a, b in ((g1, g2), (g2, g1)):
            if a.out_edges(x) and not b.choice[x]:
                raise UndefinedProduct(
                    f"product undefined: node {x!r} has out-edges on one side and "
                    "an empty choice family on the other"
                )
    return _combine(g1, g2, _cross)


def _rename_edge(e: Edge, p: str, q: str) -> Edge:
    return Edge(q if e.source == p else e.source, e.label, q if e.target == p else e.target)


def _rename_family(family: frozenset, p: str, q: str) -> frozenset:
    return frozenset(frozenset(_rename_edge(e, p, q) for e in gamma) for gamma in family)


def _rename_set(s: frozenset, p: str, q: str) -> frozenset:
    return frozenset(q if x == p else x for x in s)


def rename(g: Guest, p: str, q: str, *, merge: str | None = None) -> Guest:
    """Rename node ``p`` to ``q``.

    By default ``q`` must be fresh. With ``merge="mul"`` or ``merge="add"`` an
    existing ``q`` absorbs ``p``: edges are rewritten onto ``q``, decorations
    are unioned and the two (rewritten) choice families are combined with the
    product or sum rule respectively.
    """
    if p not in g.nodes:
        raise KeyError(f"cannot rename {p!r}: not a node of the guest")
    if p == q:
        return g
    if q in g.nodes and merge is None:
        raise ValueError(f"cannot rename {p!r} to {q!r}: {q!r} already exists")
    if merge not in (None, "add", "mul"):
        raise ValueError(f"unknown merge mode {merge!r}")
    edges = frozenset(_rename_edge(e, p, q) for e in g.edges)
    choice = {}
    for x in g.nodes:
        if x not in (p, q):
            choice[x] = _rename_family(g.choice[x], p, q)
    moved = _rename_family(g.choice[p], p, q)
    if q in g.nodes:
        kept = _rename_family(g.choice[q], p, q)
        choice[q] = _cross(moved, kept) if merge == "mul" else moved | kept
    else:
        choice[q] = moved
    return Guest(
        HostGraph(g.alphabet, _rename_set(g.nodes, p, q), edges),
        must=_rename_set(g.must, p, q),
        unique=_rename_set(g.unique, p, q),
        exclusive=_rename_set(g.exclusive, p, q),
        choice=choice,
    )


def evaluate(expr: GuestExpr) -> Guest:
    """Fold an expression tree into the guest it denotes."""
    if isinstance(expr, Empty):
        return EMPTY_GUEST
    if isinstance(expr, Unary):
        return unary(expr.name, expr.flags)
    if isinstance(expr, Arrow):
        return arrow(expr.src, expr.label, expr.dst)
    if isinstance(expr, Add):
        return add(evaluate(expr.left), evaluate(expr.right))
    if isinstance(expr, Mul):
        return mul(evaluate(expr.left), evaluate(expr.right))
    if isinstance(expr, Rename):
        return rename(evaluate(expr.inner), expr.old, expr.new)
    raise TypeError(f"not a guest expression: {expr!r}")


# --- normal form -----------------------------------------------------------


def node_flags(g: Guest, v: str) -> frozenset[str]:
    flags = set()
    if v in g.must:
        flags.add("must")
    if v in g.unique:
        flags.add("uniq")
    if v in g.exclusive:
        flags.add("excl")
    if frozenset() in g.choice[v]:
        flags.add("nil")
    return frozenset(flags)


def normal_form(g: Guest) -> GuestExpr:
    """Sum of decorated unaries plus, per node and choice set, a product of arrows.

    The empty choice set is carried by the ``nil`` flag of the unary. Symbols
    of the alphabet that label no edge cannot be expressed by any term and are
    dropped.
    """
    terms: list[GuestExpr] = [Unary(v, node_flags(g, v)) for v in sorted(g.nodes)]
    for v in sorted(g.nodes):
        for gamma in sorted(g.choice[v], key=sorted):
            if gamma:
                terms.append(
                    product_of(Arrow(Unary(e.source), e.label, Unary(e.target)) for e in sorted(gamma))
                )
    return sum_of(terms)


def is_normal_form(expr: GuestExpr) -> bool:
    """True if ``expr`` is a sum of products of elementary terms."""

    def elementary(x: GuestExpr) -> bool:
        return isinstance(x, (Empty, Unary, Arrow))

    def product(x: GuestExpr) -> bool:
        return elementary(x) or (isinstance(x, Mul) and product(x.left) and product(x.right))

    def summation(x: GuestExpr) -> bool:
        return product(x) or (isinstance(x, Add) and summation(x.left) and summation(x.right))

    return summation(expr)


def linear_choice(graph: HostGraph, must: Iterable[str] = ()) -> Guest:
    """Guest over ``graph`` whose choice sets are single out-edges (``{}`` at sinks)."""
    choice = {}
    for v in graph.nodes:
        out = graph.out_edges(v)
        choice[v] = frozenset(frozenset([e]) for e in out) if out else frozenset([frozenset()])
    return Guest(graph, must=frozenset(must), choice=choice)


def full_choice(graph: HostGraph, must: Iterable[str] = (), unique: Iterable[str] = (),
                exclusive: Iterable[str] = ()) -> Guest:
    """Guest over ``graph`` with choice ``{out(v)}`` at every node."""
    choice = {v: frozenset([graph.out_edges(v)]) for v in graph.nodes}
    return Guest(graph, must=frozenset(must), unique=frozenset(unique),
                 exclusive=frozenset(exclusive), choice=choice)
