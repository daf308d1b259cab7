"""Polynomial checker for the five loose-graph-simulation conditions.

Each ``check_lgsN`` assumes the candidate is a valid subgraph of the product
(see :func:`lgs.graph.validate_candidate`) and reports every violation it
finds, not just the first.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass, field

from .graph import (
    CandidateSubgraph,
    Edge,
    Guest,
    HostGraph,
    reachable_from,
    successors,
    validate_candidate,
)


@dataclass(frozen=True)
class ConditionResult:
    condition: str
    violations: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class VerificationReport:
    results: tuple[ConditionResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self) -> bool:
        return self.passed

    def __getitem__(self, condition: str) -> ConditionResult:
        for r in self.results:
            if r.condition == condition:
                return r
        raise KeyError(condition)

    def failed(self) -> list[ConditionResult]:
        return [r for r in self.results if not r.passed]

    def summary(self) -> str:
        lines = []
        for r in self.results:
            status = "ok" if r.passed else f"FAILED ({len(r.violations)} violations)"
            lines.append(f"{r.condition}: {status}")
            for v in r.violations:
                lines.append(f"  - {v}")
        return "\n".join(lines)


def _partners(cand: CandidateSubgraph) -> dict:
    by_guest: dict = defaultdict(set)
    for u, h in cand.pair_nodes:
        by_guest[u].add(h)
    return by_guest


def check_lgs1(guest: Guest, host: HostGraph, cand: CandidateSubgraph) -> ConditionResult:
    """Every must node is paired with some host node."""
    matched = {u for u, _ in cand.pair_nodes}
    return ConditionResult("LGS1", tuple(sorted(guest.must - matched)))


def check_lgs2(guest: Guest, host: HostGraph, cand: CandidateSubgraph) -> ConditionResult:
    """Every unique node is paired with at most one host node."""
    partners = _partners(cand)
    bad = [(u, tuple(sorted(partners[u]))) for u in sorted(guest.unique) if len(partners[u]) > 1]
    return ConditionResult("LGS2", tuple(bad))


def check_lgs3(guest: Guest, host: HostGraph, cand: CandidateSubgraph) -> ConditionResult:
    """A host node paired with an exclusive node is paired with nothing else.

    Violations are ``(host node, guest nodes sharing it)``.
    """
    by_host: dict = defaultdict(set)
    for u, h in cand.pair_nodes:
        by_host[h].add(u)
    bad = [
        (h, tuple(sorted(us)))
        for h, us in sorted(by_host.items())
        if len(us) > 1 and us & guest.exclusive
    ]
    return ConditionResult("LGS3", tuple(bad))


def realised_edges(cand: CandidateSubgraph) -> dict:
    """Map each pair node to the guest edges realised by its outgoing pair edges."""
    realised: dict = defaultdict(set)
    for (u, h), a, (v, _) in cand.pair_edges:
        realised[(u, h)].add(Edge(u, a, v))
    return realised


def check_lgs4(guest: Guest, host: HostGraph, cand: CandidateSubgraph) -> ConditionResult:
    """Choice condition.

    Each pair ``(u, u')`` must fully realise some set of ``choice(u)``, and each
    pair edge must belong to a fully realised set. Violations are tagged
    ``("node", pair)`` or ``("edge", pair_edge)``.
    """
    realised = realised_edges(cand)
    bad: list = []
    for pair in sorted(cand.pair_nodes):
        have = realised.get(pair, set())
        if not any(gamma <= have for gamma in guest.choice[pair[0]]):
            bad.append(("node", pair))
    for pe in sorted(cand.pair_edges):
        (u, h), a, (v, _k) = pe
        have = realised[(u, h)]
        e = Edge(u, a, v)
        if not any(e in gamma and gamma <= have for gamma in guest.choice[u]):
            bad.append(("edge", tuple(pe)))
    return ConditionResult("LGS4", tuple(bad))


def must_reach(guest: Guest) -> dict:
    """For each guest node, the must nodes it reaches by a nonempty path."""
    succ = successors(guest.edges)
    return {u: reachable_from(u, succ) & guest.must for u in guest.nodes}


def check_lgs5(guest: Guest, host: HostGraph, cand: CandidateSubgraph) -> ConditionResult:
    """Connectivity towards must nodes is preserved.

    Violations are ``(pair, must node)``: the guest reaches the must node from
    ``pair[0]`` but the candidate reaches no pair of that must node.
    """
    reach_g = must_reach(guest)
    succ = successors(cand.pair_edges)
    bad = []
    for pair in sorted(cand.pair_nodes):
        targets = reach_g[pair[0]]
        if not targets:
            continue
        reached = {u for u, _ in reachable_from(pair, succ)}
        bad.extend((pair, m) for m in sorted(targets - reached))
    return ConditionResult("LGS5", tuple(bad))


CHECKS = (check_lgs1, check_lgs2, check_lgs3, check_lgs4, check_lgs5)


def check_all(guest: Guest, host: HostGraph, cand: CandidateSubgraph) -> VerificationReport:
    """Run all five checks.

    Raises :class:`lgs.graph.InvalidCandidate` if ``cand`` is not a subgraph of
    the product; that is a structural error, not a failed condition.
    """
    validate_candidate(guest, host, cand)
    return VerificationReport(tuple(check(guest, host, cand) for check in CHECKS))


def is_lgs(guest: Guest, host: HostGraph, cand: CandidateSubgraph) -> bool:
    return check_all(guest, host, cand).passed


def violated(report: VerificationReport) -> Iterable[str]:
    return [r.condition for r in report.failed()]
