"""
Decision procedures for the two-Galois-point criterion.

Given groups G1, G2 acting on a curve C:

    (a)  C/G1 and C/G2 are rational,
    (b)  G1 and G2 meet only in the identity,
    (c)  P1 + sum_{g in G1} g(P2) = P2 + sum_{h in G2} h(P1) for distinct P1, P2,
    (c') sum_{g in G1} g(Q) = sum_{h in G2} h(Q) for some Q   (two outer points).

Everything here is written against "a group is a collection of callables on
points", so the same code serves Moebius groups on P^1 and automorphism
groups of the Fermat cubic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import UnsupportedGenus
from .projective import Divisor, orbit_sum


@dataclass(frozen=True)
class CondA:
    holds: bool
    justification: str

    def to_json(self):
        return {"holds": self.holds, "justification": self.justification}


@dataclass(frozen=True)
class CondB:
    holds: bool
    size: int
    shared: tuple = ()

    def to_json(self):
        return {
            "holds": self.holds,
            "intersection_size": self.size,
            "shared_nontrivial": [str(g) for g in self.shared],
        }


@dataclass(frozen=True)
class CondC:
    holds: bool
    lhs: Divisor
    rhs: Divisor
    reason: str = ""

    @property
    def divisor(self) -> Divisor | None:
        return self.lhs if self.holds else None

    @property
    def mismatch(self) -> tuple[Divisor, Divisor] | None:
        """(lhs - rhs restricted to excess, rhs - lhs restricted to excess) on failure."""
        if self.holds:
            return None
        diff = self.lhs - self.rhs
        plus = Divisor({P: m for P, m in diff.mult.items() if m > 0})
        minus = Divisor({P: -m for P, m in diff.mult.items() if m < 0})
        return plus, minus

    def to_json(self):
        out = {"holds": self.holds, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()}
        if self.holds:
            out["D"] = self.lhs.to_json()
            out["degree"] = self.lhs.degree
        else:
            plus, minus = self.mismatch
            out["mismatch"] = {"only_lhs": plus.to_json(), "only_rhs": minus.to_json()}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class CriterionReport:
    cond_a: CondA
    cond_b: CondB
    cond_c: CondC
    mode: str = "inner"
    notes: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.cond_a.holds and self.cond_b.holds and self.cond_c.holds

    @property
    def degree_D(self) -> int:
        return self.cond_c.lhs.degree

    def to_json(self):
        return {
            "mode": self.mode,
            "holds": self.holds,
            "cond_a": self.cond_a.to_json(),
            "cond_b": self.cond_b.to_json(),
            "cond_c": self.cond_c.to_json(),
            "degree_D": self.degree_D,
            "notes": list(self.notes),
        }


def check_a(genus: int, G) -> CondA:
    """Rationality of C/G for genus 0 (automatic) or genus 1 (Riemann-Hurwitz).

    For genus 1 the group must expose ``order`` and ``fixed_point_count()``
    for a cyclic group of prime order.
    """
    if genus == 0:
        return CondA(True, "automatic: a quotient of P^1 by a finite group is rational (Lueroth)")
    if genus == 1:
        from .elliptic import quotient_genus

        n = G.order
        r = G.fixed_point_count()
        g = quotient_genus(n, r)
        return CondA(g == 0, f"Riemann-Hurwitz: order {n}, {r} fixed points, quotient genus {g}")
    raise UnsupportedGenus(f"genus {genus} is not supported")


def check_b(G1, G2) -> CondB:
    common = G1.elements & G2.elements
    shared = tuple(sorted((g for g in common if not g.is_identity()), key=lambda g: g.sort_key()))
    return CondB(len(common) == 1, len(common), shared)


def check_c_inner(G1, G2, P1, P2) -> CondC:
    lhs = P1 + orbit_sum(G1, P2)
    rhs = P2 + orbit_sum(G2, P1)
    if P1 == P2:
        return CondC(False, lhs, rhs, reason="P1 = P2; two different points are required")
    return CondC(lhs == rhs, lhs, rhs)


def check_c_outer(G1, G2, Q) -> CondC:
    lhs = orbit_sum(G1, Q)
    rhs = orbit_sum(G2, Q)
    return CondC(lhs == rhs, lhs, rhs)


def search_inner(G1, G2, candidates: Iterable) -> list[tuple]:
    """Every ordered pair (P1, P2), P1 != P2, of candidates satisfying (c).

    Results follow the candidate order, P1 outer loop, P2 inner loop.
    """
    cands = list(candidates)
    # orbit sums depend on one point only; compute each once
    o1 = {P: orbit_sum(G1, P) for P in cands}
    o2 = {P: orbit_sum(G2, P) for P in cands}
    hits = []
    for P1 in cands:
        for P2 in cands:
            if P1 == P2:
                continue
            lhs = P1 + o1[P2]
            if lhs == P2 + o2[P1]:
                hits.append((P1, P2, lhs))
    return hits


def search_outer(G1, G2, candidates: Iterable) -> list[tuple]:
    """Every candidate Q with equal G1- and G2-orbit sums, with that divisor."""
    hits = []
    for Q in candidates:
        d = orbit_sum(G1, Q)
        if d == orbit_sum(G2, Q):
            hits.append((Q, d))
    return hits


def evaluate(genus: int, G1, G2, P1=None, P2=None, *, Q=None, mode: str = "inner") -> CriterionReport:
    """Run (a), (b) and (c) or (c') and collect a report."""
    a1, a2 = check_a(genus, G1), check_a(genus, G2)
    cond_a = CondA(a1.holds and a2.holds, f"G1: {a1.justification}; G2: {a2.justification}")
    cond_b = check_b(G1, G2)
    if mode == "inner":
        cond_c = check_c_inner(G1, G2, P1, P2)
    elif mode == "outer":
        cond_c = check_c_outer(G1, G2, Q)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    report = CriterionReport(cond_a, cond_b, cond_c, mode)
    if cond_c.holds and mode == "inner":
        free = len(set(cond_c.lhs.mult)) == cond_c.lhs.degree
        if free and not (cond_c.lhs.degree == len(G1) + 1 == len(G2) + 1):
            report.notes.append("free orbits but deg D != |G_i| + 1")
    return report
