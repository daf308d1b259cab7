"""Graphviz export for hosts, guests and witnesses.

Guest nodes are annotated with ∃ (must), 𝟙 (unique) and ✕ (exclusive).
Choice sets are listed as comments next to their node, and a node whose
choice family contains the empty set gets a short "corked" stub edge.
"""

from __future__ import annotations

from .graph import CandidateSubgraph, Guest, HostGraph


def _q(x) -> str:
    s = x if isinstance(x, str) else f"({x[0]},{x[1]})"
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def host_to_dot(g: HostGraph, name: str = "host") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {_q(v)};" for v in sorted(g.nodes)]
    lines += [f"  {_q(e.source)} -> {_q(e.target)} [label={_q(e.label)}];" for e in sorted(g.edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def guest_to_dot(g: Guest, name: str = "guest") -> str:
    lines = [f"digraph {name} {{"]
    for v in sorted(g.nodes):
        marks = "".join(sym for sym, s in (("∃", g.must), ("𝟙", g.unique), ("✕", g.exclusive)) if v in s)
        label = f"{v}:{marks}" if marks else v
        lines.append(f"  {_q(v)} [label={_q(label)}];")
        for gamma in sorted(g.choice[v], key=sorted):
            members = ", ".join(f"{e.source}-{e.label}->{e.target}" for e in sorted(gamma))
            lines.append(f"  // choice({v}): {{{members}}}")
        if frozenset() in g.choice[v]:
            cork = _q(f"{v}#cork")
            lines.append(f"  {cork} [shape=point, width=0.05];")
            lines.append(f"  {_q(v)} -> {cork} [arrowhead=tee, style=dashed];")
    lines += [f"  {_q(e.source)} -> {_q(e.target)} [label={_q(e.label)}];" for e in sorted(g.edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def witness_to_dot(w: CandidateSubgraph, name: str = "witness") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {_q(p)};" for p in sorted(w.pair_nodes)]
    lines += [f"  {_q(s)} -> {_q(t)} [label={_q(a)}];" for s, a, t in sorted(w.pair_edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(obj) -> str:
    if isinstance(obj, Guest):
        return guest_to_dot(obj)
    if isinstance(obj, HostGraph):
        return host_to_dot(obj)
    if isinstance(obj, CandidateSubgraph):
        return witness_to_dot(obj)
    raise TypeError(f"cannot render {type(obj).__name__} as DOT")
