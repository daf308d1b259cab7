"""Epsilon-free regular expressions and their automata.

Concrete syntax::

    expr := alt
    alt  := cat ('|' cat)*
    cat  := rep+
    rep  := atom '+'*
    atom := LITERAL | '(' expr ')' | '∅'

where LITERAL is a single alphanumeric character. Whitespace is ignored.
``*`` and ``?`` are rejected: they would admit the empty word.
"""

from __future__ import annotations

from collections import defaultdict, deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from types import MappingProxyType
import typing

from .graph import Guest


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class EmptyLang:
    pass


@dataclass(frozen=True)
class Lit:
    symbol: str


@dataclass(frozen=True)
class Concat:
    left: RegexAst
    right: RegexAst


@dataclass(frozen=True)
class Union:
    left: RegexAst
    right: RegexAst


@dataclass(frozen=True)
class Plus:
    inner: RegexAst


RegexAst = typing.Union[EmptyLang, Lit, Concat, Union, Plus]

EMPTY_SET_TOKENS = ("∅",)
_HINTS = {
    "*": "'*' admits the empty word; rewrite e.g. a*b as b|a+b",
    "?": "'?' admits the empty word; rewrite e.g. ab? as a|ab",
    "ε": "the empty word is not expressible in the epsilon-free fragment",
}


class _RegexParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def fail(self, message: str):
        raise RegexSyntaxError(message, self.text, self.pos)

    def parse(self) -> RegexAst:
        if self.peek() is None:
            self.fail("empty expression")
        r = self.alt()
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()!r}")
        return r

    def alt(self) -> RegexAst:
        r = self.cat()
        while self.peek() == "|":
            self.pos += 1
            r = Union(r, self.cat())
        return r

    def cat(self) -> RegexAst:
        r = self.rep()
        while (c := self.peek()) is not None and c not in "|)":
            r = Concat(r, self.rep())
        return r

    def rep(self) -> RegexAst:
        r = self.atom()
        while self.peek() == "+":
            self.pos += 1
            r = Plus(r)
        return r

    def atom(self) -> RegexAst:
        c = self.peek()
        if c is None:
            self.fail("unexpected end of expression")
        if c in _HINTS:
            self.fail(f"unsupported {c!r} ({_HINTS[c]})")
        if c == "(":
            self.pos += 1
            r = self.alt()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            return r
        if c in EMPTY_SET_TOKENS:
            self.pos += 1
            return EmptyLang()
        if c.isalnum():
            self.pos += 1
            return Lit(c)
        self.fail(f"unexpected {c!r}")


def parse_regex(text: str) -> RegexAst:
    return _RegexParser(text).parse()


def regex_to_text(r: RegexAst) -> str:
    """Print ``r`` in the concrete syntax accepted by :func:`parse_regex`."""

    def go(r: RegexAst, prec: int) -> str:
        # 0 = alternation, 1 = concatenation, 2 = repetition operand
        if isinstance(r, EmptyLang):
            return "∅"
        if isinstance(r, Lit):
            return r.symbol
        if isinstance(r, Union):
            s = f"{go(r.left, 0)}|{go(r.right, 1)}"
            return s if prec == 0 else f"({s})"
        if isinstance(r, Concat):
            s = f"{go(r.left, 1)}{go(r.right, 2)}"
            return s if prec <= 1 else f"({s})"
        if isinstance(r, Plus):
            return f"{go(r.inner, 2)}+"
        raise TypeError(r)

    return go(r, 0)


def simplify(r: RegexAst) -> RegexAst:
    """Propagate the empty language: ``∅·A = ∅``, ``∅|A = A``, ``∅+ = ∅``."""
    if isinstance(r, Concat):
        a, b = simplify(r.left), simplify(r.right)
        if isinstance(a, EmptyLang) or isinstance(b, EmptyLang):
            return EmptyLang()
        return Concat(a, b)
    if isinstance(r, Union):
        a, b = simplify(r.left), simplify(r.right)
        if isinstance(a, EmptyLang):
            return b
        if isinstance(b, EmptyLang):
            return a
        return Union(a, b)
    if isinstance(r, Plus):
        a = simplify(r.inner)
        return a if isinstance(a, EmptyLang) else Plus(a)
    return r


def is_empty_language(r: RegexAst) -> bool:
    return isinstance(simplify(r), EmptyLang)


def regex_symbols(r: RegexAst) -> frozenset[str]:
    if isinstance(r, Lit):
        return frozenset([r.symbol])
    if isinstance(r, (Concat, Union)):
        return regex_symbols(r.left) | regex_symbols(r.right)
    if isinstance(r, Plus):
        return regex_symbols(r.inner)
    return frozenset()


# --- automata --------------------------------------------------------------


@dataclass(frozen=True)
class Nfa:
    """An automaton without epsilon moves; ``transitions[(q, a)]`` is a state set."""

    alphabet: frozenset[str]
    states: frozenset[str]
    transitions: Mapping[tuple[str, str], frozenset[str]]
    initial: str
    finals: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        clean = {k: frozenset(v) for k, v in self.transitions.items() if v}
        object.__setattr__(self, "transitions", MappingProxyType(clean))
        if self.initial not in self.states:
            raise ValueError(f"initial state {self.initial!r} is not a state")
        if not self.finals <= self.states:
            raise ValueError(f"final states {sorted(self.finals - self.states)} are not states")
        for (q, a), targets in clean.items():
            if q not in self.states or not targets <= self.states:
                raise ValueError(f"transition from {q!r} on {a!r} leaves the state set")
            if a not in self.alphabet:
                raise ValueError(f"transition symbol {a!r} outside the alphabet")

    def triples(self) -> list[tuple[str, str, str]]:
        return sorted((q, a, t) for (q, a), ts in self.transitions.items() for t in ts)

    def step(self, states: Iterable[str], a: str) -> frozenset[str]:
        return frozenset(t for q in states for t in self.transitions.get((q, a), ()))

    def has_incoming(self, state: str) -> bool:
        return any(state in ts for ts in self.transitions.values())

    def has_outgoing(self, state: str) -> bool:
        return any(q == state for q, _ in self.transitions)

    def reachable(self, start: str) -> set[str]:
        """States reachable from ``start`` in zero or more steps."""
        succ = defaultdict(set)
        for q, _, t in self.triples():
            succ[q].add(t)
        seen = {start}
        queue = deque([start])
        while queue:
            for t in succ[queue.popleft()]:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        return seen

    def is_empty(self) -> bool:
        return not (self.reachable(self.initial) & self.finals)

    def accepts_empty_word(self) -> bool:
        return self.initial in self.finals


@dataclass(frozen=True)
class NormalizedNfa(Nfa):
    """An NFA with a single final state, nothing entering the initial state and
    nothing leaving the final one."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.finals) != 1:
            raise ValueError("a normalized automaton has exactly one final state")
        if self.has_incoming(self.initial):
            raise ValueError("the initial state of a normalized automaton has incoming transitions")
        if self.has_outgoing(self.final):
            raise ValueError("the final state of a normalized automaton has outgoing transitions")

    @property
    def final(self) -> str:
        return next(iter(self.finals))


def nfa_accepts(n: Nfa, word: Sequence[str]) -> bool:
    """Subset simulation. Raises ``ValueError`` on symbols outside the alphabet."""
    current = frozenset([n.initial])
    for a in word:
        if a not in n.alphabet:
            raise ValueError(f"symbol {a!r} is not in the automaton's alphabet")
        current = n.step(current, a)
        if not current:
            return False
    return bool(current & n.finals)


def _fresh(prefix: str, taken: set[str]) -> str:
    k = 0
    while f"{prefix}{k}" in taken:
        k += 1
    name = f"{prefix}{k}"
    taken.add(name)
    return name


def regex_to_nfa(r: RegexAst, prefix: str = "q", alphabet: Iterable[str] = ()) -> Nfa:
    """Glushkov (position) automaton of ``r``.

    State ``{prefix}0`` is initial and ``{prefix}i`` stands for the i-th symbol
    occurrence. The construction never needs epsilon moves.
    """
    r = simplify(r)
    sigma = frozenset(alphabet) | regex_symbols(r)
    initial = f"{prefix}0"
    if isinstance(r, EmptyLang):
        return Nfa(sigma, frozenset([initial]), {}, initial, frozenset())

    symbol_at: dict[int, str] = {}
    follow: dict[int, set[int]] = defaultdict(set)

    # returns (first, last); epsilon-free terms are never nullable
    def walk(r: RegexAst) -> tuple[set[int], set[int]]:
        if isinstance(r, Lit):
            i = len(symbol_at) + 1
            symbol_at[i] = r.symbol
            return {i}, {i}
        if isinstance(r, Union):
            f1, l1 = walk(r.left)
            f2, l2 = walk(r.right)
            return f1 | f2, l1 | l2
        if isinstance(r, Concat):
            f1, l1 = walk(r.left)
            f2, l2 = walk(r.right)
            for i in l1:
                follow[i] |= f2
            return f1, l2
        if isinstance(r, Plus):
            f, last = walk(r.inner)
            for i in last:
                follow[i] |= f
            return f, last
        raise TypeError(r)

    first, last = walk(r)
    name = {i: f"{prefix}{i}" for i in symbol_at}
    transitions: dict[tuple[str, str], set[str]] = defaultdict(set)
    for j in first:
        transitions[(initial, symbol_at[j])].add(name[j])
    for i, nxt in follow.items():
        for j in nxt:
            transitions[(name[i], symbol_at[j])].add(name[j])
    return Nfa(
        sigma,
        frozenset([initial, *name.values()]),
        transitions,
        initial,
        frozenset(name[i] for i in last),
    )


def normalize_nfa(n: Nfa, prefix: str = "q") -> NormalizedNfa:
    """Same language, one final state, no transition into the initial state and
    none out of the final state.

    Existing initial/final states are reused when they already qualify; fresh
    states are named ``{prefix}<k>``. States that are unreachable or cannot reach
    the final state are dropped.
    """
    if n.accepts_empty_word():
        raise ValueError("automaton accepts the empty word")
    if n.is_empty():
        raise ValueError("automaton accepts no word")
    taken = set(n.states)
    delta: dict[tuple[str, str], set[str]] = defaultdict(set)
    for (q, a), ts in n.transitions.items():
        delta[(q, a)] |= ts

    if len(n.finals) == 1 and not n.has_outgoing(next(iter(n.finals))):
        final = next(iter(n.finals))
    else:
        final = _fresh(prefix, taken)
        for ts in delta.values():
            if ts & n.finals:
                ts.add(final)

    if n.has_incoming(n.initial):
        initial = _fresh(prefix, taken)
        for (q, a), ts in list(delta.items()):
            if q == n.initial:
                delta[(initial, a)] = set(ts)
    else:
        initial = n.initial

    forward = _closure(initial, delta, reverse=False)
    backward = _closure(final, delta, reverse=True)
    keep = forward & backward
    trimmed = {
        (q, a): ts & keep for (q, a), ts in delta.items() if q in keep and ts & keep
    }
    return NormalizedNfa(n.alphabet, frozenset(keep), trimmed, initial, frozenset([final]))


def _closure(start: str, delta: Mapping, reverse: bool) -> set[str]:
    adj: dict[str, set[str]] = defaultdict(set)
    for (q, _), ts in delta.items():
        for t in ts:
            if reverse:
                adj[t].add(q)
            else:
                adj[q].add(t)
    seen = {start}
    queue = deque([start])
    while queue:
        for t in adj[queue.popleft()]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def nfa_to_guest(n: NormalizedNfa) -> Guest:
    """Guest with the automaton's states as nodes and transitions as edges.

    The initial and final states are must nodes, the final state may be left
    with no obligations, and every other choice set is a single transition.
    """
    from .algebra import Unary, add, arrow, unary

    g = add(unary(n.initial, {"must"}), unary(n.final, {"must", "nil"}))
    for q, a, t in n.triples():
        g = add(g, arrow(Unary(q), a, Unary(t)))
    return g


def accepts(r: RegexAst, word: Sequence[str]) -> bool:
    """Word membership through the Glushkov automaton."""
    n = regex_to_nfa(r, alphabet=word)
    return nfa_accepts(n, word)
