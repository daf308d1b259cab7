"""Loose graph simulations: guests, encoders, verifier and solvers."""

from .algebra import (
    Add,
    Arrow,
    Empty,
    GuestExpr,
    Mul,
    Rename,
    Unary,
    add,
    arrow,
    evaluate,
    linear_choice,
    mul,
    normal_form,
    rename,
    unary,
)
from .encoders import DecoratedGraph, encode_gs, encode_rlpm, encode_rlsgi, encode_sgi
from .graph import (
    CandidateSubgraph,
    Edge,
    Guest,
    HostGraph,
    InvalidCandidate,
    PairEdge,
    reachability,
    tensor_product,
)
from .regex import NormalizedNfa, Nfa, nfa_accepts, nfa_to_guest, normalize_nfa, parse_regex, regex_to_nfa
from .solver import brute_force_lgs, greatest_lgs, prune, solve_emptiness
from .verify import check_all

__all__ = [
    "Add", "Arrow", "CandidateSubgraph", "DecoratedGraph", "Edge", "Empty", "Guest",
    "GuestExpr", "HostGraph", "InvalidCandidate", "Mul", "Nfa", "NormalizedNfa", "PairEdge",
    "Rename", "Unary", "add", "arrow", "brute_force_lgs", "check_all", "encode_gs",
    "encode_rlpm", "encode_rlsgi", "encode_sgi", "evaluate", "greatest_lgs", "linear_choice",
    "mul", "nfa_accepts", "nfa_to_guest", "normal_form", "normalize_nfa", "parse_regex",
    "prune", "reachability", "regex_to_nfa", "rename", "solve_emptiness", "tensor_product",
    "unary",
]
