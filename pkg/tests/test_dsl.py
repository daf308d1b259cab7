import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import random_expr
from lgs.algebra import Add, Arrow, Empty, Mul, Rename, Unary, add, arrow, evaluate, mul, unary
from lgs.dsl import DslSyntaxError, format_guest_expr, parse_guest_dsl

LOOP_BRANCH = "q{must,nil} + (p{must} -a-> p * p -b-> q)"


def test_loop_branch_expression():
    e = parse_guest_dsl(LOOP_BRANCH)
    assert e == Add(
        Unary("q", frozenset({"must", "nil"})),
        Mul(Arrow(Unary("p", frozenset({"must"})), "a", Unary("p")), Arrow(Unary("p"), "b", Unary("q"))),
    )
    expected = add(unary("q", {"must", "nil"}),
                   mul(arrow(Unary("p", frozenset({"must"})), "a", Unary("p")),
                       arrow(Unary("p"), "b", Unary("q"))))
    assert evaluate(e) == expected


def test_mul_binds_tighter():
    assert parse_guest_dsl("a + b * c") == Add(Unary("a"), Mul(Unary("b"), Unary("c")))
    assert parse_guest_dsl("(a + b) * c") == Mul(Add(Unary("a"), Unary("b")), Unary("c"))


def test_empty_flags_and_empty_guest():
    assert parse_guest_dsl("p{}") == Unary("p")
    assert parse_guest_dsl("()") == Empty()


def test_rename_suffix():
    assert parse_guest_dsl("(p -a-> q)[p/r]") == Rename(Arrow(Unary("p"), "a", Unary("q")), "p", "r")


@pytest.mark.parametrize("text, where", [
    ("p{maybe}", 2),
    ("p -ab-> q", None),
    ("p +", None),
    ("p -a- q", None),
    ("(p", None),
    ("p q", 2),
    ("p#q", 1),
])
def test_syntax_errors_report_position(text, where):
    with pytest.raises(DslSyntaxError) as info:
        parse_guest_dsl(text)
    if where is not None:
        assert info.value.pos == where
    assert "position" in str(info.value)


def test_unknown_flag_message():
    with pytest.raises(DslSyntaxError, match="unknown flag 'maybe'"):
        parse_guest_dsl("p{must,maybe}")


def test_printer_examples():
    assert format_guest_expr(parse_guest_dsl(LOOP_BRANCH)) == LOOP_BRANCH.replace("(p{must}", "p{must}").replace("q)", "q")
    assert format_guest_expr(Mul(Unary("a"), Add(Unary("b"), Unary("c")))) == "a * (b + c)"
    assert format_guest_expr(Rename(Arrow(Unary("p"), "a", Unary("q")), "p", "r")) == "(p -a-> q)[p/r]"


@given(st.randoms(use_true_random=False), st.integers(0, 4))
@settings(max_examples=200, deadline=None)
def test_print_parse_round_trip(rng, depth):
    e = random_expr(rng, depth)
    if rng.random() < 0.3:
        e = Rename(e, "p", "s")
    assert parse_guest_dsl(format_guest_expr(e)) == e
