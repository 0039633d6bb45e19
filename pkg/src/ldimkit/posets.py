"""Finite posets with canonical integer element encodings.

Each poset kind fixes a bijection between its ground set and a contiguous
range of integer ids:

* subset-like kinds use bitmasks: bit ``i-1`` of the id is set iff ``i`` is
  in the set, so id 13 = 0b1101 is the set {1, 3, 4};
* multiset kinds use mixed-radix codes: digit ``i-1`` in base ``m`` is the
  multiplicity of ``i``;
* chains and antichains use plain indices.

Ids are either 0-based (kinds containing the empty set / empty multiset) or
1-based (kinds that exclude it).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Sequence

import numpy as np

from .errors import ParameterError, RangeError

# Refuse to materialize comparability matrices above ~1G cells; everything
# this toolkit builds at desk scale stays well below (8191^2 is ~67M).
_MATRIX_CELL_LIMIT = 1 << 30


def id_to_set(eid: int) -> frozenset[int]:
    """Decode a subset bitmask, e.g. 13 -> {1, 3, 4}."""
    if eid < 0:
        raise ParameterError(f"subset id must be non-negative, got {eid}")
    return frozenset(i + 1 for i in range(eid.bit_length()) if eid >> i & 1)


def set_to_id(elems) -> int:
    """Encode a set of positive integers as a bitmask, e.g. {1, 3, 4} -> 13."""
    mask = 0
    for x in elems:
        if x < 1:
            raise ParameterError(f"set elements must be >= 1, got {x}")
        mask |= 1 << (x - 1)
    return mask


@dataclass(frozen=True)
class MultisetElement:
    """A multiset over [n] given by its multiplicity vector."""

    multiplicities: tuple[int, ...]

    @classmethod
    def from_id(cls, eid: int, n: int, m: int) -> "MultisetElement":
        if not 0 <= eid < m**n:
            raise RangeError(f"multiset id {eid} out of range for n={n}, m={m}")
        digits = []
        for _ in range(n):
            digits.append(eid % m)
            eid //= m
        return cls(tuple(digits))

    def to_id(self, m: int) -> int:
        eid = 0
        for digit in reversed(self.multiplicities):
            if not 0 <= digit < m:
                raise ParameterError(f"multiplicity {digit} not in [0, {m})")
            eid = eid * m + digit
        return eid

    def support_size(self) -> int:
        return sum(1 for digit in self.multiplicities if digit > 0)

    def total(self) -> int:
        return sum(self.multiplicities)

    def includes(self, other: "MultisetElement") -> bool:
        """Pointwise multiplicity dominance (multiset inclusion)."""
        return all(a >= b for a, b in zip(self.multiplicities, other.multiplicities))


class Poset:
    """Base class: a finite poset on a contiguous integer id range."""

    kind: str = "abstract"
    ground_size: int = 0
    id_offset: int = 0

    # ------------------------------------------------------------------ ids

    def element_ids(self) -> range:
        return range(self.id_offset, self.id_offset + self.ground_size)

    def check_id(self, a: int) -> None:
        if not self.id_offset <= a < self.id_offset + self.ground_size:
            raise RangeError(f"element id {a} out of range for {self.kind}")

    def index_of(self, a: int) -> int:
        self.check_id(a)
        return a - self.id_offset

    def id_at(self, idx: int) -> int:
        if not 0 <= idx < self.ground_size:
            raise RangeError(f"index {idx} out of range for {self.kind}")
        return idx + self.id_offset

    def indices_of(self, ids: Sequence[int]) -> np.ndarray:
        """Vectorized index_of with range validation."""
        arr = np.asarray(ids, dtype=np.int64)
        if arr.size:
            lo = self.id_offset
            hi = lo + self.ground_size
            bad = (arr < lo) | (arr >= hi)
            if bad.any():
                raise RangeError(
                    f"element id {int(arr[bad][0])} out of range for {self.kind}")
        return arr - self.id_offset

    # ---------------------------------------------------------------- order

    def leq(self, a: int, b: int) -> bool:
        raise NotImplementedError

    def rank_key(self, a: int) -> int:
        """A monotone integer rank: a < b in P implies a strictly smaller rank."""
        raise NotImplementedError

    @cached_property
    def _leq_matrix(self) -> np.ndarray:
        n = self.ground_size
        if n * n > _MATRIX_CELL_LIMIT:
            raise ParameterError(
                f"{self.kind}: comparability matrix would need {n * n} cells")
        mat = self._build_leq_matrix()
        mat.setflags(write=False)
        return mat

    def leq_matrix(self) -> np.ndarray:
        """Read-only boolean matrix M[i, j] = (id_at(i) <= id_at(j))."""
        return self._leq_matrix

    def _build_leq_matrix(self) -> np.ndarray:
        n = self.ground_size
        mat = np.zeros((n, n), dtype=bool)
        for i, a in enumerate(self.element_ids()):
            for j, b in enumerate(self.element_ids()):
                mat[i, j] = self.leq(a, b)
        return mat

    def __repr__(self) -> str:
        return f"<Poset {self.kind} ({self.ground_size} elements)>"


class BooleanLattice(Poset):
    """All subsets of [n] ordered by inclusion; ids are bitmasks."""

    def __init__(self, n: int):
        if n < 1:
            raise ParameterError(f"boolean lattice needs n >= 1, got {n}")
        self.n = n
        self.kind = f"boolean:{n}"
        self.ground_size = 1 << n

    def leq(self, a: int, b: int) -> bool:
        self.check_id(a)
        self.check_id(b)
        return (a | b) == b

    def rank_key(self, a: int) -> int:
        self.check_id(a)
        return a.bit_count()

    def _build_leq_matrix(self) -> np.ndarray:
        ids = np.arange(self.ground_size, dtype=np.uint32)
        return (ids[:, None] | ids[None, :]) == ids[None, :]


class SingletonPoset(Poset):
    """Nonempty subsets of [n]; the only strict relations are
    singleton < set of size >= 2 under inclusion."""

    id_offset = 1

    def __init__(self, n: int):
        if n < 1:
            raise ParameterError(f"singleton poset needs n >= 1, got {n}")
        self.n = n
        self.kind = f"singleton:{n}"
        self.ground_size = (1 << n) - 1

    def leq(self, a: int, b: int) -> bool:
        self.check_id(a)
        self.check_id(b)
        if a == b:
            return True
        return a.bit_count() == 1 and b.bit_count() >= 2 and (a | b) == b

    def rank_key(self, a: int) -> int:
        self.check_id(a)
        return a.bit_count()

    def singleton_ids(self) -> list[int]:
        return [1 << i for i in range(self.n)]

    def _build_leq_matrix(self) -> np.ndarray:
        n_el = self.ground_size
        ids = np.arange(1, n_el + 1, dtype=np.uint32)
        big = np.bitwise_count(ids) >= 2
        mat = np.eye(n_el, dtype=bool)
        for x in range(self.n):
            s = 1 << x
            mat[s - 1] |= ((ids & s) != 0) & big
        return mat


class MultisetLattice(Poset):
    """Multisets over [n] with all multiplicities < m, ordered pointwise."""

    def __init__(self, n: int, m: int):
        if n < 1:
            raise ParameterError(f"multiset lattice needs n >= 1, got {n}")
        if m < 2:
            raise ParameterError(f"multiset lattice needs m >= 2, got {m}")
        self.n = n
        self.m = m
        self.kind = f"multiset:{n}:{m}"
        self.ground_size = m**n

    def digits(self, a: int) -> tuple[int, ...]:
        self.check_id(a)
        return MultisetElement.from_id(a, self.n, self.m).multiplicities

    def leq(self, a: int, b: int) -> bool:
        da, db = self.digits(a), self.digits(b)
        return all(x <= y for x, y in zip(da, db))

    def rank_key(self, a: int) -> int:
        return sum(self.digits(a))

    def _build_leq_matrix(self) -> np.ndarray:
        chain = Chain(self.m).leq_matrix()
        return reduce(np.kron, [chain] * self.n)


class MultisetSingletonPoset(Poset):
    """Nonzero bounded multisets over [n]; A < B only when A has exactly one
    positive multiplicity, B has at least two, and A is pointwise below B."""

    id_offset = 1

    def __init__(self, n: int, m: int):
        if n < 1:
            raise ParameterError(f"multiset singleton poset needs n >= 1, got {n}")
        if m < 2:
            raise ParameterError(f"multiset singleton poset needs m >= 2, got {m}")
        self.n = n
        self.m = m
        self.kind = f"multiset-singleton:{n}:{m}"
        self.ground_size = m**n - 1

    def digits(self, a: int) -> tuple[int, ...]:
        self.check_id(a)
        return MultisetElement.from_id(a, self.n, self.m).multiplicities

    def support_size(self, a: int) -> int:
        return sum(1 for d in self.digits(a) if d > 0)

    def leq(self, a: int, b: int) -> bool:
        da, db = self.digits(a), self.digits(b)
        if a == b:
            return True
        sa = sum(1 for d in da if d > 0)
        sb = sum(1 for d in db if d > 0)
        return sa == 1 and sb >= 2 and all(x <= y for x, y in zip(da, db))

    def rank_key(self, a: int) -> int:
        return sum(self.digits(a))

    def singleton_type_ids(self) -> list[int]:
        """Ids with exactly one positive multiplicity, ascending."""
        return [a for a in self.element_ids() if self.support_size(a) == 1]

    def multi_support_ids(self) -> list[int]:
        """Ids with at least two positive multiplicities, ascending."""
        return [a for a in self.element_ids() if self.support_size(a) >= 2]

    def _build_leq_matrix(self) -> np.ndarray:
        n_el = self.ground_size
        ids = np.arange(1, n_el + 1, dtype=np.int64)
        digs = np.empty((n_el, self.n), dtype=np.int64)
        v = ids.copy()
        for t in range(self.n):
            digs[:, t] = v % self.m
            v //= self.m
        support = (digs > 0).sum(axis=1)
        big = support >= 2
        mat = np.eye(n_el, dtype=bool)
        for i in np.flatnonzero(support == 1):
            mat[i] |= big & (digs >= digs[i]).all(axis=1)
        return mat


class Chain(Poset):
    """A total order on k elements."""

    def __init__(self, k: int):
        if k < 1:
            raise ParameterError(f"chain needs k >= 1, got {k}")
        self.kind = f"chain:{k}"
        self.ground_size = k

    def leq(self, a: int, b: int) -> bool:
        self.check_id(a)
        self.check_id(b)
        return a <= b

    def rank_key(self, a: int) -> int:
        self.check_id(a)
        return a

    def _build_leq_matrix(self) -> np.ndarray:
        ids = np.arange(self.ground_size)
        return ids[:, None] <= ids[None, :]


class Antichain(Poset):
    """k pairwise incomparable elements."""

    def __init__(self, k: int):
        if k < 1:
            raise ParameterError(f"antichain needs k >= 1, got {k}")
        self.kind = f"antichain:{k}"
        self.ground_size = k

    def leq(self, a: int, b: int) -> bool:
        self.check_id(a)
        self.check_id(b)
        return a == b

    def rank_key(self, a: int) -> int:
        self.check_id(a)
        return a

    def _build_leq_matrix(self) -> np.ndarray:
        return np.eye(self.ground_size, dtype=bool)


class ProductPoset(Poset):
    """Componentwise order on pairs, re-encoded into a single id:
    combined id = index_in_P + |P| * index_in_Q (P occupies the low part,
    so products of bitmask/mixed-radix posets concatenate their codes)."""

    def __init__(self, p: Poset, q: Poset):
        self.p = p
        self.q = q
        self.kind = f"product({p.kind},{q.kind})"
        self.ground_size = p.ground_size * q.ground_size

    def split(self, a: int) -> tuple[int, int]:
        """Combined id -> (index in P, index in Q)."""
        self.check_id(a)
        return a % self.p.ground_size, a // self.p.ground_size

    def combine(self, p_index: int, q_index: int) -> int:
        return p_index + self.p.ground_size * q_index

    def leq(self, a: int, b: int) -> bool:
        api, aqi = self.split(a)
        bpi, bqi = self.split(b)
        return (self.p.leq(self.p.id_at(api), self.p.id_at(bpi))
                and self.q.leq(self.q.id_at(aqi), self.q.id_at(bqi)))

    def rank_key(self, a: int) -> int:
        pi, qi = self.split(a)
        return self.p.rank_key(self.p.id_at(pi)) + self.q.rank_key(self.q.id_at(qi))

    def _build_leq_matrix(self) -> np.ndarray:
        # combined index runs P fastest, matching kron's block layout
        return np.kron(self.q.leq_matrix(), self.p.leq_matrix())


def product(p: Poset, q: Poset) -> ProductPoset:
    """The componentwise-ordered product of two posets."""
    return ProductPoset(p, q)


def canonical_linear_extension(p: Poset) -> list[int]:
    """Deterministic total order extending p: sort by (rank_key, id)."""
    return sorted(p.element_ids(), key=lambda a: (p.rank_key(a), a))


def build_poset(spec: str) -> Poset:
    """Build a poset from a spec string.

    Grammar: ``boolean:<n>``, ``singleton:<n>``, ``multiset:<n>:<m>``,
    ``multiset-singleton:<n>:<m>``, ``chain:<k>``, ``antichain:<k>``.
    """
    parts = str(spec).strip().split(":")
    name, raw_args = parts[0], parts[1:]
    try:
        args = [int(s) for s in raw_args]
    except ValueError:
        raise ParameterError(f"non-integer parameter in poset spec {spec!r}") from None
    table = {
        "boolean": (BooleanLattice, 1),
        "singleton": (SingletonPoset, 1),
        "multiset": (MultisetLattice, 2),
        "multiset-singleton": (MultisetSingletonPoset, 2),
        "chain": (Chain, 1),
        "antichain": (Antichain, 1),
    }
    if name not in table:
        raise ParameterError(f"unknown poset kind {name!r} in spec {spec!r}")
    cls, arity = table[name]
    if len(args) != arity:
        raise ParameterError(
            f"poset kind {name!r} takes {arity} parameter(s), got {len(args)}")
    return cls(*args)
