import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import all_words, random_regex
from lgs.algebra import Unary, add, arrow, unary
from lgs.oracles import Thompson, in_language
from lgs.regex import (
    Concat,
    EmptyLang,
    Lit,
    Nfa,
    NormalizedNfa,
    Plus,
    RegexSyntaxError,
    Union,
    accepts,
    is_empty_language,
    nfa_accepts,
    nfa_to_guest,
    normalize_nfa,
    parse_regex,
    regex_to_nfa,
    regex_to_text,
)

WORDS = all_words("ab", 6)


def test_parse_ab_plus():
    assert parse_regex("(ab)+") == Plus(Concat(Lit("a"), Lit("b")))


def test_parse_decorated_query_label():
    assert parse_regex("(a|b)c+") == Concat(Union(Lit("a"), Lit("b")), Plus(Lit("c")))


def test_parse_literal_and_precedence():
    assert parse_regex("a") == Lit("a")
    assert parse_regex("ab|c") == Union(Concat(Lit("a"), Lit("b")), Lit("c"))
    assert parse_regex("a++") == Plus(Plus(Lit("a")))
    assert parse_regex("∅") == EmptyLang()


@pytest.mark.parametrize("text, hint", [("a*", "b|a+b"), ("a?", "a|ab"), ("ε", "empty word"),
                                        ("", "empty"), ("(a", "')'"), ("a)", "unexpected")])
def test_parse_errors(text, hint):
    with pytest.raises(RegexSyntaxError, match=re.escape(hint)):
        parse_regex(text)


@given(st.randoms(use_true_random=False))
@settings(max_examples=200, deadline=None)
def test_text_round_trip(rng):
    r = random_regex(rng, 4, "abc", p_empty=0.1)
    assert parse_regex(regex_to_text(r)) == r


def test_empty_language_nfa():
    n = regex_to_nfa(EmptyLang(), alphabet="ab")
    assert n.is_empty() and not any(nfa_accepts(n, w) for w in WORDS)
    assert is_empty_language(Concat(Lit("a"), EmptyLang()))
    assert not is_empty_language(Union(Lit("a"), EmptyLang()))


def test_ab_plus_acceptance():
    r = parse_regex("(ab)+")
    assert accepts(r, "ab") and accepts(r, "abab")
    for w in ["", "a", "aba", "ba"]:
        assert not accepts(r, w)


@given(st.randoms(use_true_random=False))
@settings(max_examples=150, deadline=None)
def test_glushkov_matches_membership(rng):
    r = random_regex(rng, 3)
    n = regex_to_nfa(r, alphabet="ab")
    assert all(nfa_accepts(n, w) == in_language(r, w) for w in WORDS)


def test_thompson_matches_membership():
    rng = random.Random(11)
    for _ in range(50):
        r = random_regex(rng, 4)
        t = Thompson(r)
        assert all(t.matches(w) == in_language(r, w) for w in WORDS)


def test_nfa_rejects_unknown_symbol():
    with pytest.raises(ValueError, match="alphabet"):
        nfa_accepts(regex_to_nfa(Lit("a")), "b")


def test_ab_plus_normal_form_structure():
    n = normalize_nfa(regex_to_nfa(parse_regex("(ab)+")))
    assert len(n.states) == 4 and len(n.triples()) == 4
    assert sorted(n.triples()) == [("q0", "a", "q1"), ("q1", "b", "q2"), ("q1", "b", "q3"), ("q2", "a", "q1")]
    assert (n.initial, n.final) == ("q0", "q3")


def test_normalized_is_idempotent_up_to_language():
    n = normalize_nfa(regex_to_nfa(parse_regex("(ab)+")))
    again = normalize_nfa(n)
    assert again.triples() == n.triples()
    assert all(nfa_accepts(n, w) == nfa_accepts(again, w) for w in WORDS)


def test_single_letter_through_initial_copy():
    # the initial state is re-entered, so it is copied; "a" must stay accepted
    n = Nfa(frozenset("a"), frozenset({"s", "t"}), {("s", "a"): frozenset({"s", "t"})}, "s", frozenset({"t"}))
    m = normalize_nfa(n)
    assert all(nfa_accepts(m, "a" * k) for k in range(1, 6))
    assert not m.has_incoming(m.initial) and not m.has_outgoing(m.final)


def test_normalize_rejects_empty_word_and_empty_language():
    with pytest.raises(ValueError, match="empty word"):
        normalize_nfa(Nfa(frozenset("a"), frozenset({"s"}), {}, "s", frozenset({"s"})))
    with pytest.raises(ValueError, match="no word"):
        normalize_nfa(regex_to_nfa(EmptyLang(), alphabet="a"))


def test_normalized_type_enforces_shape():
    with pytest.raises(ValueError):
        NormalizedNfa(frozenset("a"), frozenset({"s", "f"}), {("s", "a"): frozenset({"s", "f"})},
                      "s", frozenset({"f"}))


def _random_nfa(rng: random.Random) -> Nfa:
    states = [f"s{i}" for i in range(rng.randint(1, 4))]
    transitions = {}
    for q in states:
        for a in "ab":
            ts = frozenset(t for t in states if rng.random() < 0.35)
            if ts:
                transitions[(q, a)] = ts
    finals = frozenset(q for q in states if rng.random() < 0.4) or frozenset([states[-1]])
    return Nfa(frozenset("ab"), frozenset(states), transitions, states[0], finals)


@given(st.randoms(use_true_random=False))
@settings(max_examples=200, deadline=None)
def test_normalization_preserves_language(rng):
    n = _random_nfa(rng)
    if n.accepts_empty_word() or n.is_empty():
        with pytest.raises(ValueError):
            normalize_nfa(n)
        return
    m = normalize_nfa(n, prefix="new")
    assert len(m.finals) == 1
    assert not m.has_incoming(m.initial) and not m.has_outgoing(m.final)
    assert all(nfa_accepts(n, w) == nfa_accepts(m, w) for w in WORDS)


def test_nfa_to_guest_ab_plus():
    n = normalize_nfa(regex_to_nfa(parse_regex("(ab)+")))
    g = nfa_to_guest(n)
    assert g.must == {"q0", "q3"}
    assert g.choice["q3"] == {frozenset()}
    assert not g.unique and not g.exclusive
    assert len(g.edges) == sum(len(ts) for ts in n.transitions.values())


def test_nfa_to_guest_single_transition():
    n = normalize_nfa(regex_to_nfa(Lit("a")))
    expected = add(add(unary("q0", {"must"}), unary("q1", {"must", "nil"})),
                   arrow(Unary("q0"), "a", Unary("q1")))
    assert nfa_to_guest(n) == expected
