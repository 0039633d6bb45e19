"""SAT encoding of bounded-frequency local realizers, DIMACS I/O, external
solver driving, model decoding, and exact search.

The instance encode(P, k, d) is satisfiable iff P has a local realizer with
at most k partial linear extensions and frequency at most d.  Variables per
order index i in [k]: for each unordered pair {A, B} (canonically oriented
A < B by id) an x variable ("A before B in L_i") and a y variable ("B before
A in L_i"); for each element A a z variable ("A used in L_i").  Lookups
accept either pair orientation, so there are N(N-1)k pair variables plus Nk
usage variables.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import sys
import tempfile
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from pathlib import Path

from .errors import (BoundExceededError, DecodeError, FormatError,
                     ParameterError, SolverEnvironmentError,
                     SolverProtocolError)
from .posets import Poset
from .realizers import RealizerFamily, verify_local_realizer

SOLVER_ENV_VAR = "LDIMKIT_SAT_SOLVER"


class VarMap:
    """Bijection between SAT variables 1..V and their roles.

    Pair block first: for pair index p and order i, variable 2(pk + i - 1) + 1
    is x(A, B, i) and the following even id is y(A, B, i).  Usage block after:
    z(A, i) = N(N-1)k + index(A)*k + i.
    """

    def __init__(self, P: Poset, k: int):
        if k < 1:
            raise ParameterError(f"need k >= 1, got {k}")
        self.P = P
        self.k = k
        self.n = P.ground_size
        self.pair_block = self.n * (self.n - 1) * k
        self.variable_count = self.pair_block + self.n * k

    def _pair_index(self, ai: int, bi: int) -> int:
        # lexicographic rank of (ai, bi) with ai < bi among index pairs
        return ai * (2 * self.n - ai - 1) // 2 + (bi - ai - 1)

    def _check_order(self, i: int) -> None:
        if not 1 <= i <= self.k:
            raise ParameterError(f"order index {i} not in [1, {self.k}]")

    def before(self, a: int, b: int, i: int) -> int:
        """Variable for 'a placed before b in L_i' (either orientation)."""
        self._check_order(i)
        ai, bi = self.P.index_of(a), self.P.index_of(b)
        if ai == bi:
            raise ParameterError(f"pair variables need distinct elements, got {a}")
        if ai < bi:
            return 2 * (self._pair_index(ai, bi) * self.k + i - 1) + 1
        return 2 * (self._pair_index(bi, ai) * self.k + i - 1) + 2

    def x(self, a: int, b: int, i: int) -> int:
        return self.before(a, b, i)

    def y(self, a: int, b: int, i: int) -> int:
        return self.before(b, a, i)

    def z(self, a: int, i: int) -> int:
        self._check_order(i)
        return self.pair_block + self.P.index_of(a) * self.k + i

    def describe(self, var: int) -> tuple[str, int, int | None, int]:
        """(role, A, B or None, i) for a variable id."""
        if not 1 <= var <= self.variable_count:
            raise ParameterError(f"variable {var} not in [1, {self.variable_count}]")
        if var <= self.pair_block:
            t = var - 1
            role = "x" if t % 2 == 0 else "y"
            slot, i = divmod(t // 2, self.k)
            ai, bi = self._pairs[slot]
            return role, self.P.id_at(ai), self.P.id_at(bi), i + 1
        t = var - self.pair_block - 1
        ai, i = divmod(t, self.k)
        return "z", self.P.id_at(ai), None, i + 1

    @property
    def _pairs(self) -> list[tuple[int, int]]:
        cached = getattr(self, "_pairs_cache", None)
        if cached is None:
            cached = list(combinations(range(self.n), 2))
            self._pairs_cache = cached
        return cached

    def iter_entries(self):
        """Yield (role, A, B or None, i, var) for every variable, ascending."""
        for var in range(1, self.variable_count + 1):
            role, a, b, i = self.describe(var)
            yield role, a, b, i, var


@dataclass
class CnfFormula:
    variable_count: int
    clauses: list[list[int]]

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class SolverResult:
    status: str  # "sat" | "unsat" | "unknown"
    model: frozenset[int] | None = None


def encode(P: Poset, k: int, d: int) -> tuple[CnfFormula, VarMap]:
    """Emit the clause families for 'P has a local realizer with at most k
    orders and frequency at most d'."""
    if k < 1 or d < 1:
        raise ParameterError(f"need k >= 1 and d >= 1, got k={k}, d={d}")
    vm = VarMap(P, k)
    ids = list(P.element_ids())
    orders = range(1, k + 1)
    clauses: list[list[int]] = []

    # each used triple is ordered transitively (covers both chain directions,
    # since the reversed triple contributes the mirrored clause)
    for i in orders:
        for a, b, c in permutations(ids, 3):
            clauses.append([
                -vm.z(a, i), -vm.z(b, i), -vm.z(c, i),
                -vm.before(a, b, i), -vm.before(b, c, i), vm.before(a, c, i),
            ])

    # comparable pairs: witnessed at least once, never reversed
    for a, b in combinations(ids, 2):
        if P.leq(a, b):
            lo, hi = a, b
        elif P.leq(b, a):
            lo, hi = b, a
        else:
            continue
        clauses.append([vm.before(lo, hi, i) for i in orders])
        for i in orders:
            clauses.append([-vm.before(hi, lo, i)])

    # incomparable pairs: both orders occur
    for a, b in combinations(ids, 2):
        if not P.leq(a, b) and not P.leq(b, a):
            clauses.append([vm.before(a, b, i) for i in orders])
            clauses.append([vm.before(b, a, i) for i in orders])

    # coupling between pair variables and usage variables
    for a, b in combinations(ids, 2):
        for i in orders:
            x, y = vm.before(a, b, i), vm.before(b, a, i)
            za, zb = vm.z(a, i), vm.z(b, i)
            clauses.extend([
                [-x, za], [-x, zb],
                [-y, za], [-y, zb],
                [-za, -zb, x, y],
                [-x, -y],
            ])

    # frequency cap: no element is used in d+1 distinct orders
    for a in ids:
        for combo in combinations(orders, d + 1):
            clauses.append([-vm.z(a, c) for c in combo])

    # a one-element ground set has no pairs, so require the element directly
    if len(ids) == 1:
        clauses.append([vm.z(ids[0], i) for i in orders])

    return CnfFormula(vm.variable_count, clauses), vm


def expected_clause_count(N: int, n_comparable: int, n_incomparable: int,
                          k: int, d: int) -> int:
    """Closed-form clause total matching encode()."""
    total = k * N * (N - 1) * (N - 2)          # transitivity
    total += n_comparable * (1 + k)            # comparable obligations
    total += 2 * n_incomparable                # incomparable obligations
    total += 3 * N * (N - 1) * k               # coupling (6 per unordered pair)
    total += N * comb(k, d + 1)                # frequency cap
    if N == 1:
        total += 1                             # lone-element coverage
    return total


def _open_sink(sink, opened: list):
    if isinstance(sink, (str, Path)):
        handle = open(sink, "w", encoding="utf-8", newline="\n")
        opened.append(handle)
        return handle
    return sink


def write_dimacs(formula: CnfFormula, varmap: VarMap | None = None,
                 out=None, map_out=None) -> None:
    """Write standard DIMACS CNF to ``out``; if ``map_out`` is given (and a
    varmap supplied), also write one line per variable:
    ``x|y|z <A> <B|-> <i> <varid>``."""
    if out is None:
        raise ParameterError("write_dimacs needs an output path or file object")
    opened: list = []
    try:
        handle = _open_sink(out, opened)
        handle.write(f"p cnf {formula.variable_count} {formula.clause_count}\n")
        for clause in formula.clauses:
            handle.write(" ".join(str(lit) for lit in clause) + " 0\n")
        if map_out is not None:
            if varmap is None:
                raise ParameterError("a VarMap is required to write a map file")
            map_handle = _open_sink(map_out, opened)
            for role, a, b, i, var in varmap.iter_entries():
                b_text = "-" if b is None else str(b)
                map_handle.write(f"{role} {a} {b_text} {i} {var}\n")
    finally:
        for handle in opened:
            handle.close()


def parse_dimacs(source) -> CnfFormula:
    """Read a DIMACS CNF file (path, file object, or text)."""
    if isinstance(source, (str, Path)) and "\n" not in str(source):
        text = Path(source).read_text(encoding="utf-8")
    elif hasattr(source, "read"):
        text = source.read()
    else:
        text = str(source)
    variable_count = None
    declared_clauses = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"bad DIMACS header: {raw!r}")
            variable_count, declared_clauses = int(parts[2]), int(parts[3])
            continue
        for token in line.split():
            lit = int(token)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if variable_count is None:
        raise FormatError("missing DIMACS 'p cnf' header")
    if declared_clauses is not None and declared_clauses != len(clauses):
        raise FormatError(
            f"header declares {declared_clauses} clauses, found {len(clauses)}")
    return CnfFormula(variable_count, clauses)


def parse_model_text(text: str) -> SolverResult | None:
    """Parse solver output in the standard 's'/'v' line format; returns None
    when no status line is present."""
    status = None
    literals: list[int] = []
    saw_values = False
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s ") or line == "s":
            word = line[1:].strip().upper()
            if word == "SATISFIABLE":
                status = "sat"
            elif word == "UNSATISFIABLE":
                status = "unsat"
            else:
                status = "unknown"
        elif line.startswith("v ") or line == "v":
            saw_values = True
            for token in line[1:].split():
                literals.append(int(token))
    if status is None:
        return None
    model = None
    if saw_values:
        model = frozenset(lit for lit in literals if lit > 0)
    if status == "sat" and model is None:
        raise SolverProtocolError("solver reported SAT without 'v' model lines")
    if status != "sat":
        model = None
    return SolverResult(status, model)


def resolve_solver_command(solver_command=None) -> list[str]:
    """Resolve the solver launch vector: explicit argument, then the
    LDIMKIT_SAT_SOLVER environment variable, then the bundled shim."""
    if solver_command is None:
        solver_command = os.environ.get(SOLVER_ENV_VAR) or None
    if solver_command is None:
        return [sys.executable, "-m", "ldimkit.satshim"]
    if isinstance(solver_command, str):
        return shlex.split(solver_command)
    return list(solver_command)


def run_solver(cnf_path, solver_command=None) -> SolverResult:
    """Launch the external solver on a DIMACS file and parse its verdict.

    Accepts 's SATISFIABLE'/'s UNSATISFIABLE' status lines with 'v' model
    lines; exit codes 10/20 stand in when no status line is printed.
    """
    cmd = resolve_solver_command(solver_command) + [str(cnf_path)]
    try:
        proc = subprocess.run(cmd, capture_output=True, text=True, check=False)
    except OSError as exc:
        raise SolverEnvironmentError(
            f"cannot launch solver {cmd[0]!r}: {exc}") from exc
    result = parse_model_text(proc.stdout)
    if result is None:
        if proc.returncode == 10:
            raise SolverProtocolError(
                "solver exited 10 (sat) but printed no model")
        if proc.returncode == 20:
            return SolverResult("unsat")
        stderr_tail = proc.stderr.strip().splitlines()[-1:] or [""]
        raise SolverProtocolError(
            f"unparsable solver output (exit {proc.returncode}): {stderr_tail[0]}")
    return result


def decode_realizer(model, varmap: VarMap, P: Poset,
                    k: int | None = None) -> RealizerFamily:
    """Rebuild the realizer family from the true variables of a model.

    Order i consists of the elements whose z variable is true, sorted by the
    pairwise before-variables; raises DecodeError if those do not induce a
    total order.  Empty orders are dropped.
    """
    model = frozenset(model)
    k = varmap.k if k is None else k
    if k != varmap.k:
        raise ParameterError(f"k={k} does not match the VarMap (k={varmap.k})")
    members = []
    for i in range(1, k + 1):
        used = [a for a in P.element_ids() if varmap.z(a, i) in model]
        ranked = sorted(
            used,
            key=lambda a: -sum(1 for b in used
                               if b != a and varmap.before(a, b, i) in model))
        for p in range(len(ranked)):
            for q in range(p + 1, len(ranked)):
                if varmap.before(ranked[p], ranked[q], i) not in model:
                    raise DecodeError(
                        f"order {i}: before-relation on used elements is not "
                        f"a total order")
        if ranked:
            members.append(tuple(ranked))
    return RealizerFamily(members)


def solve_instance(P: Poset, k: int, d: int, solver_command=None,
                   workdir=None) -> tuple[SolverResult, RealizerFamily | None]:
    """Encode, run the external solver, and decode on sat.

    The decoded family is re-verified before being returned; a family that
    fails verification or exceeds frequency d raises DecodeError, since it
    signals an encoding/solver inconsistency.
    """
    formula, vm = encode(P, k, d)
    with tempfile.TemporaryDirectory(dir=workdir) as tmp:
        cnf_path = Path(tmp) / "instance.cnf"
        write_dimacs(formula, vm, cnf_path)
        result = run_solver(cnf_path, solver_command)
    if result.status != "sat":
        return result, None
    family = decode_realizer(result.model, vm, P)
    report = verify_local_realizer(P, family)
    if not report.accepted:
        raise DecodeError("decoded family fails verification")
    if report.frequency > d:
        raise DecodeError(
            f"decoded family has frequency {report.frequency} > d={d}")
    return result, family


def ldim_certificate(P: Poset, d_max: int | None = None, solver_command=None,
                     workdir=None) -> tuple[int, RealizerFamily]:
    """Least d whose instance is satisfiable, with the decoded witness.

    Uses k = d * ground_size orders, which is always enough: a frequency-d
    realizer has at most d*N element occurrences and every nonempty member
    holds at least one.
    """
    limit = P.ground_size if d_max is None else d_max
    if limit < 1:
        raise ParameterError(f"d_max must be >= 1, got {limit}")
    for d in range(1, limit + 1):
        k = d * P.ground_size
        result, family = solve_instance(P, k, d, solver_command, workdir)
        if result.status == "sat":
            return d, family
        if result.status != "unsat":
            raise SolverProtocolError(
                f"solver returned {result.status!r} for {P.kind}, d={d}")
    raise BoundExceededError(
        f"no local realizer of frequency <= {limit} found for {P.kind}")


def ldim_exact(P: Poset, d_max: int | None = None, solver_command=None,
               workdir=None) -> int:
    """Exact local dimension of a small poset via repeated SAT queries."""
    return ldim_certificate(P, d_max, solver_command, workdir)[0]
