"""JSON file formats for hosts, guests, decorated graphs and witnesses.

Every document carries ``"format": "lgs/1"`` and a ``"kind"``; readers accept
documents without them and check them when present. Writers sort every list so
output is byte-stable.

host::

    {"format": "lgs/1", "kind": "host",
     "alphabet": ["a", "b"], "nodes": ["x", "y", "z"],
     "edges": [["x", "a", "z"], ["y", "b", "x"], ["z", "a", "y"]]}

guest, explicit (choice lists edge indices into ``edges``)::

    {"kind": "guest", "alphabet": [...], "nodes": [...], "edges": [...],
     "must": ["m"], "unique": [], "exclusive": [],
     "choice": {"u": [[0], [1]], "m": [[2]], "v": [[]]}}

guest, as an expression (also accepted as a bare DSL text file)::

    {"kind": "guest-expr", "expr": "q{must,nil} + (p{must} -a-> p * p -b-> q)"}

decorated graph::

    {"kind": "decorated-graph", "alphabet": [...], "nodes": [...],
     "edges": [["v", "u", "bb"], ["u", "u", "a+"]]}

witness (also used for any candidate subgraph of a product)::

    {"kind": "witness", "pair_nodes": [["u", "x"], ...],
     "pair_edges": [[["u", "x"], "a", ["u", "z"]], ...]}
"""

from __future__ import annotations

import json
import sys
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from .algebra import evaluate
from .dsl import DslSyntaxError, format_guest_expr, parse_guest_dsl
from .encoders import DecoratedGraph
from .graph import CandidateSubgraph, Edge, Guest, HostGraph
from .regex import RegexSyntaxError, parse_regex, regex_to_text

FORMAT = "lgs/1"
KINDS = ("host", "guest", "guest-expr", "decorated-graph", "witness")


class SchemaError(ValueError):
    """A document does not match its schema; ``path`` locates the problem."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


# --- helpers ----------------------------------------------------------------


def _require(doc: Mapping, key: str, typ: type, path: str, default: Any = ...) -> Any:
    if key not in doc:
        if default is ...:
            raise SchemaError(f"missing key {key!r}", path)
        return default
    value = doc[key]
    if not isinstance(value, typ):
        raise SchemaError(f"{key!r} must be a {typ.__name__}", f"{path}.{key}")
    return value


def _strings(values: list, path: str) -> list[str]:
    for i, v in enumerate(values):
        if not isinstance(v, str):
            raise SchemaError("expected a string", f"{path}[{i}]")
    return values


def _check_manifest(doc: Mapping, allowed: tuple[str, ...]) -> str | None:
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise SchemaError(f"unsupported format {fmt!r} (expected {FORMAT!r})", "$.format")
    kind = doc.get("kind")
    if kind is not None and kind not in allowed:
        raise SchemaError(f"expected kind {' or '.join(allowed)}, got {kind!r}", "$.kind")
    return kind


def _manifest(kind: str) -> dict:
    return {"format": FORMAT, "kind": kind}


def _compact(value: Any) -> str:
    return json.dumps(value, sort_keys=True, ensure_ascii=False)


def dumps(doc: Mapping) -> str:
    """Top-level keys sorted, one list item (or mapping entry) per line."""
    lines = []
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, list) and any(isinstance(v, (list, dict)) for v in value):
            body = ",\n".join(f"    {_compact(v)}" for v in value)
            lines.append(f"  {_compact(key)}: [\n{body}\n  ]")
        elif isinstance(value, dict) and value:
            body = ",\n".join(f"    {_compact(k)}: {_compact(value[k])}" for k in sorted(value))
            lines.append(f"  {_compact(key)}: {{\n{body}\n  }}")
        else:
            lines.append(f"  {_compact(key)}: {_compact(value)}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def load_text(path: str | Path) -> str:
    if str(path) == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def save_text(path: str | Path, text: str) -> None:
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def parse_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    return doc


# --- hosts ------------------------------------------------------------------


def _graph_parts(doc: Mapping, path: str = "$") -> tuple[list[str], list[str], list[Edge]]:
    alphabet = _strings(_require(doc, "alphabet", list, path, []), f"{path}.alphabet")
    nodes = _strings(_require(doc, "nodes", list, path, []), f"{path}.nodes")
    edges = []
    for i, e in enumerate(_require(doc, "edges", list, path, [])):
        where = f"{path}.edges[{i}]"
        if not (isinstance(e, list) and len(e) == 3 and all(isinstance(x, str) for x in e)):
            raise SchemaError("an edge is [source, label, target]", where)
        if e[0] not in nodes or e[2] not in nodes:
            raise SchemaError(f"dangling edge endpoint in {e}", where)
        if e[1] not in alphabet:
            raise SchemaError(f"label {e[1]!r} is not in the alphabet", where)
        edges.append(Edge(*e))
    if len(set(edges)) != len(edges):
        raise SchemaError("duplicate edges", f"{path}.edges")
    return alphabet, nodes, edges


def host_from_dict(doc: Mapping) -> HostGraph:
    _check_manifest(doc, ("host", "guest"))
    alphabet, nodes, edges = _graph_parts(doc)
    return HostGraph(frozenset(alphabet), frozenset(nodes), frozenset(edges))


def host_to_dict(g: HostGraph) -> dict:
    return {
        **_manifest("host"),
        "alphabet": sorted(g.alphabet),
        "nodes": sorted(g.nodes),
        "edges": [list(e) for e in sorted(g.edges)],
    }


def read_host(path: str | Path) -> HostGraph:
    return host_from_dict(parse_json(load_text(path)))


def write_host(path: str | Path, g: HostGraph) -> None:
    save_text(path, dumps(host_to_dict(g)))


# --- guests -----------------------------------------------------------------


def guest_from_dict(doc: Mapping) -> Guest:
    kind = _check_manifest(doc, ("guest", "guest-expr"))
    if "expr" in doc or kind == "guest-expr":
        text = _require(doc, "expr", str, "$")
        try:
            return evaluate(parse_guest_dsl(text))
        except DslSyntaxError as exc:
            raise SchemaError(str(exc), "$.expr") from exc
        except (KeyError, ValueError) as exc:
            raise SchemaError(f"expression does not denote a guest: {exc}", "$.expr") from exc
    alphabet, nodes, edges = _graph_parts(doc)
    sets = {}
    for key in ("must", "unique", "exclusive"):
        members = _strings(_require(doc, key, list, "$", []), f"$.{key}")
        stray = sorted(set(members) - set(nodes))
        if stray:
            raise SchemaError(f"unknown nodes {stray}", f"$.{key}")
        sets[key] = frozenset(members)
    raw_choice = _require(doc, "choice", dict, "$", {})
    choice = {}
    for v, family in raw_choice.items():
        where = f"$.choice.{v}"
        if v not in nodes:
            raise SchemaError("choice given for an unknown node", where)
        if not isinstance(family, list):
            raise SchemaError("a choice family is a list of lists of edge indices", where)
        sets_of_edges = []
        for j, gamma in enumerate(family):
            if not isinstance(gamma, list):
                raise SchemaError("a choice set is a list of edge indices", f"{where}[{j}]")
            members = []
            for idx in gamma:
                if not isinstance(idx, int) or not 0 <= idx < len(edges):
                    raise SchemaError(f"bad edge index {idx!r}", f"{where}[{j}]")
                if edges[idx].source != v:
                    raise SchemaError(f"edge {idx} does not leave {v!r}", f"{where}[{j}]")
                members.append(edges[idx])
            sets_of_edges.append(frozenset(members))
        choice[v] = frozenset(sets_of_edges)
    try:
        return Guest(
            HostGraph(frozenset(alphabet), frozenset(nodes), frozenset(edges)),
            must=sets["must"], unique=sets["unique"], exclusive=sets["exclusive"],
            choice=choice,
        )
    except ValueError as exc:
        raise SchemaError(str(exc), "$.choice") from exc


def guest_to_dict(g: Guest) -> dict:
    edges = sorted(g.edges)
    index = {e: i for i, e in enumerate(edges)}
    return {
        **_manifest("guest"),
        "alphabet": sorted(g.alphabet),
        "nodes": sorted(g.nodes),
        "edges": [list(e) for e in edges],
        "must": sorted(g.must),
        "unique": sorted(g.unique),
        "exclusive": sorted(g.exclusive),
        "choice": {
            v: sorted(sorted(index[e] for e in gamma) for gamma in g.choice[v])
            for v in sorted(g.nodes)
        },
    }


def guest_from_text(text: str) -> Guest:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return guest_from_dict(parse_json(text))
    try:
        return evaluate(parse_guest_dsl(text.strip()))
    except DslSyntaxError as exc:
        raise SchemaError(str(exc)) from exc
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"expression does not denote a guest: {exc}") from exc


def read_guest(path: str | Path) -> Guest:
    return guest_from_text(load_text(path))


def write_guest(path: str | Path, g: Guest) -> None:
    save_text(path, dumps(guest_to_dict(g)))


def guest_expr_to_dict(expr) -> dict:
    return {**_manifest("guest-expr"), "expr": format_guest_expr(expr)}


# --- decorated graphs -------------------------------------------------------


def decorated_from_dict(doc: Mapping) -> DecoratedGraph:
    _check_manifest(doc, ("decorated-graph",))
    alphabet = _strings(_require(doc, "alphabet", list, "$", []), "$.alphabet")
    nodes = _strings(_require(doc, "nodes", list, "$", []), "$.nodes")
    labels = {}
    for i, e in enumerate(_require(doc, "edges", list, "$")):
        where = f"$.edges[{i}]"
        if not (isinstance(e, list) and len(e) == 3 and all(isinstance(x, str) for x in e)):
            raise SchemaError("an edge is [source, target, regex]", where)
        s, t, text = e
        if s not in nodes or t not in nodes:
            raise SchemaError(f"dangling edge endpoint in {e}", where)
        if (s, t) in labels:
            raise SchemaError(f"duplicate edge {(s, t)}", where)
        try:
            labels[(s, t)] = parse_regex(text)
        except RegexSyntaxError as exc:
            raise SchemaError(str(exc), where) from exc
    try:
        return DecoratedGraph(frozenset(alphabet), frozenset(nodes), frozenset(labels), labels)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def decorated_to_dict(q: DecoratedGraph) -> dict:
    return {
        **_manifest("decorated-graph"),
        "alphabet": sorted(q.alphabet),
        "nodes": sorted(q.nodes),
        "edges": [[s, t, regex_to_text(q.labeling[(s, t)])] for s, t in sorted(q.edges)],
    }


def read_decorated(path: str | Path) -> DecoratedGraph:
    return decorated_from_dict(parse_json(load_text(path)))


# --- witnesses --------------------------------------------------------------


def _pair(value, where: str) -> tuple[str, str]:
    if not (isinstance(value, list) and len(value) == 2 and all(isinstance(x, str) for x in value)):
        raise SchemaError("a pair node is [guest node, host node]", where)
    return (value[0], value[1])


def witness_from_dict(doc: Mapping) -> CandidateSubgraph:
    _check_manifest(doc, ("witness",))
    nodes = [_pair(p, f"$.pair_nodes[{i}]")
             for i, p in enumerate(_require(doc, "pair_nodes", list, "$"))]
    edges = []
    for i, pe in enumerate(_require(doc, "pair_edges", list, "$", [])):
        where = f"$.pair_edges[{i}]"
        if not (isinstance(pe, list) and len(pe) == 3 and isinstance(pe[1], str)):
            raise SchemaError("a pair edge is [[u, x], label, [v, y]]", where)
        edges.append((_pair(pe[0], where + "[0]"), pe[1], _pair(pe[2], where + "[2]")))
    return CandidateSubgraph(frozenset(nodes), frozenset(edges))


def witness_to_dict(w: CandidateSubgraph) -> dict:
    return {
        **_manifest("witness"),
        "pair_nodes": [list(p) for p in sorted(w.pair_nodes)],
        "pair_edges": [[list(s), a, list(t)] for s, a, t in sorted(w.pair_edges)],
    }


def read_witness(path: str | Path) -> CandidateSubgraph:
    return witness_from_dict(parse_json(load_text(path)))


def write_witness(path: str | Path, w: CandidateSubgraph) -> None:
    save_text(path, dumps(witness_to_dict(w)))
