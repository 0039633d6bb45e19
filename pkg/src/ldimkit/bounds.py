"""Lower-bound machinery: the conflict-graph/Turán route for singleton
orders and the counting bound for multiset lattices, plus the signature
audit that certifies the interval argument on concrete realizers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import ceil, log2

from .errors import ContractError, ParameterError, RangeError
from .posets import MultisetSingletonPoset, SingletonPoset
from .realizers import RealizerFamily, as_family, verify_local_realizer

CERTIFY_SLACK = 1e-9


# ---------------------------------------------------------------- conflict


@dataclass(frozen=True)
class ConflictGraph:
    n: int
    edges: frozenset[tuple[int, int]]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def is_independent(self, vertices) -> bool:
        vs = set(vertices)
        return not any(u in vs and v in vs for u, v in self.edges)


def conflict_graph(family, n: int) -> ConflictGraph:
    """Conflict graph on ground elements 1..n of a singleton order family.

    Each member containing at least two singletons contributes the edge
    joining the two greatest singletons it places (the last two in member
    order).
    """
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    family = as_family(family)
    top = (1 << n) - 1
    edges = set()
    for member in family:
        singles = []
        for eid in member:
            if not 1 <= eid <= top:
                raise RangeError(f"element id {eid} outside [1, {top}]")
            if eid.bit_count() == 1:
                singles.append(eid.bit_length())  # singleton {x} has id 2^(x-1)
        if len(singles) >= 2:
            u, v = singles[-2], singles[-1]
            if u != v:
                edges.add((min(u, v), max(u, v)))
    return ConflictGraph(n, frozenset(edges))


def independent_set(G: ConflictGraph) -> tuple[int, ...]:
    """A maximum independent set (exact branch-and-bound for n <= 20,
    greedy beyond)."""
    adj = {v: set() for v in range(1, G.n + 1)}
    for u, v in G.edges:
        adj[u].add(v)
        adj[v].add(u)

    if G.n > 20:
        chosen: list[int] = []
        alive = set(adj)
        while alive:
            v = min(alive, key=lambda u: (len(adj[u] & alive), u))
            chosen.append(v)
            alive -= adj[v] | {v}
        return tuple(sorted(chosen))

    best: list[int] = []

    def grow(alive: frozenset[int], picked: list[int]) -> None:
        nonlocal best
        if len(picked) + len(alive) <= len(best):
            return
        if not alive:
            if len(picked) > len(best):
                best = list(picked)
            return
        v = max(alive, key=lambda u: (len(adj[u] & alive), -u))
        if adj[v] & alive:
            grow(alive - {v}, picked)  # exclude the branching vertex
        grow(alive - adj[v] - {v}, picked + [v])

    grow(frozenset(adj), [])
    return tuple(sorted(best))


def iter_independent_sets(G: ConflictGraph, max_size: int | None = None):
    """All independent vertex sets (as sorted tuples), smallest first."""
    from itertools import combinations

    limit = G.n if max_size is None else max_size
    for r in range(limit + 1):
        for combo in combinations(range(1, G.n + 1), r):
            if G.is_independent(combo):
                yield combo


def check_ind_freq_claim(n: int, family, independent) -> bool:
    """Check the occurrence claim: for an independent set I of size at most
    n - 2, the complement element [n] \\ I appears in at least |I| members."""
    fam = as_family(family)
    ind = sorted(set(independent))
    if any(not 1 <= v <= n for v in ind):
        raise ParameterError(f"independent set {ind} not within [1, {n}]")
    if len(ind) > n - 2:
        raise ParameterError(
            f"claim applies to sets of size <= n - 2 = {n - 2}, got {len(ind)}")
    P = SingletonPoset(n)
    report = verify_local_realizer(P, fam)
    if not report.accepted:
        raise ContractError("family is not a valid local realizer")
    G = conflict_graph(fam, n)
    if not G.is_independent(ind):
        raise ContractError(f"{ind} is not independent in the conflict graph")
    complement_id = ((1 << n) - 1) ^ sum(1 << (v - 1) for v in ind)
    return fam.occurrences(complement_id) >= len(ind)


# ------------------------------------------------------------------- turan


@dataclass(frozen=True)
class BoundReport:
    n: int
    bound: float
    ceiling: int
    certifying: bool
    m: int | None = None
    c: float | None = None
    size: int | None = None
    ell: float | None = None
    ell_ceiling: int | None = None

    def to_json_dict(self) -> dict:
        out: dict = {"n": self.n}
        if self.m is not None:
            out["m"] = self.m
        if self.c is not None:
            out["c"] = self.c
        if self.size is not None:
            out["size"] = self.size
        out["bound"] = self.bound
        out["ceiling"] = self.ceiling
        out["certifying"] = self.certifying
        if self.ell is not None:
            out["ell"] = self.ell
        if self.ell_ceiling is not None:
            out["ell_ceiling"] = self.ell_ceiling
        return out

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def turan_independence_floor(n: int, realizer_size: int) -> BoundReport:
    """Independence guarantees from a size bound on singleton realizers.

    With c = size / n, Turán applied to the conflict graph guarantees an
    independent set of size at least n / (2(c + 1)); the sharper count over
    edge multiplicities gives ell = n^2 / ((2c + 1) n + 2) + 1.
    """
    if n < 2:
        raise ParameterError(f"need n >= 2, got {n}")
    if realizer_size < 0:
        raise ParameterError(f"need size >= 0, got {realizer_size}")
    c = realizer_size / n
    floor = n / (2 * (c + 1))
    ell = n * n / ((2 * c + 1) * n + 2) + 1
    if ell <= floor:
        raise ContractError(
            f"expected ell > floor, got ell={ell} floor={floor}")  # pragma: no cover
    return BoundReport(
        n=n, bound=floor, ceiling=ceil(floor), certifying=False,
        c=c, size=realizer_size, ell=ell, ell_ceiling=ceil(ell))


# ---------------------------------------------------------------- multiset


def multiset_lower_bound(n: int, m: int) -> BoundReport:
    """Counting lower bound for the local dimension of the multiset lattice:
    (n log2 m - log2 n) / log2(3 n^2 m).  Certifying when it exceeds n - 1,
    i.e. beats the trivial ceiling witnessed by products of chains."""
    if n < 1 or m < 2:
        raise ParameterError(f"need n >= 1 and m >= 2, got n={n}, m={m}")
    bound = (n * log2(m) - log2(n)) / log2(3 * n * n * m)
    certifying = n >= 2 and bound > (n - 1) + CERTIFY_SLACK
    return BoundReport(n=n, m=m, bound=bound, ceiling=ceil(bound),
                       certifying=certifying)


def min_m_certifying(n: int) -> int:
    """Smallest m for which multiset_lower_bound(n, m) is certifying."""
    if n < 2:
        raise ParameterError(f"need n >= 2, got {n}")
    if multiset_lower_bound(n, 2).certifying:
        return 2
    lo, hi = 2, 4
    while not multiset_lower_bound(n, hi).certifying:
        lo, hi = hi, hi * 2
    while hi - lo > 1:  # invariant: lo not certifying, hi certifying
        mid = (lo + hi) // 2
        if multiset_lower_bound(n, mid).certifying:
            hi = mid
        else:
            lo = mid
    return hi


# --------------------------------------------------------------- signature


@dataclass(frozen=True)
class SignatureAuditReport:
    n: int
    m: int
    ok: bool
    interval_count: int
    interval_bound: int
    singleton_count: int
    mplus_count: int
    distinct_signatures: int
    frequency: int

    def to_json_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m, "ok": self.ok,
            "interval_count": self.interval_count,
            "interval_bound": self.interval_bound,
            "singleton_count": self.singleton_count,
            "mplus_count": self.mplus_count,
            "distinct_signatures": self.distinct_signatures,
            "frequency": self.frequency,
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def signature_audit_report(n: int, m: int, family) -> SignatureAuditReport:
    """Audit the interval-signature argument on a verified realizer of the
    multiset singleton order.

    Concatenating the members that touch singleton types, with a separator
    after each member, splits the non-singleton elements into maximal runs
    ("intervals").  Each multi-support element must land in a nonempty,
    pairwise-distinct set of intervals, and the interval count must respect
    k <= 2 * frequency * #singleton-types.
    """
    P = MultisetSingletonPoset(n, m)
    if m ** n > 256:
        raise ParameterError(
            f"signature audit is limited to m^n <= 256, got {m ** n}")
    fam = as_family(family)
    report = verify_local_realizer(P, fam)
    if not report.accepted:
        raise ContractError("family is not a valid local realizer")

    singleton_ids = set(P.singleton_type_ids())
    mplus_ids = list(P.multi_support_ids())

    intervals: list[set[int]] = []
    current: set[int] = set()

    def flush() -> None:
        nonlocal current
        if current:
            intervals.append(current)
            current = set()

    for member in fam:
        if not any(eid in singleton_ids for eid in member):
            continue
        for eid in member:
            if eid in singleton_ids:
                flush()
            else:
                current.add(eid)
        flush()  # separator after the member

    signatures = {}
    for eid in mplus_ids:
        signatures[eid] = tuple(eid in iv for iv in intervals)

    nonzero = all(any(sig) for sig in signatures.values())
    distinct = len(set(signatures.values()))
    interval_bound = 2 * report.frequency * len(singleton_ids)
    ok = (nonzero and distinct == len(mplus_ids)
          and len(intervals) <= interval_bound)
    return SignatureAuditReport(
        n=n, m=m, ok=ok,
        interval_count=len(intervals), interval_bound=interval_bound,
        singleton_count=len(singleton_ids), mplus_count=len(mplus_ids),
        distinct_signatures=distinct, frequency=report.frequency)


def signature_audit(n: int, m: int, family) -> bool:
    return signature_audit_report(n, m, family).ok
