"""Minimal DIMACS solver front-end used when no external SAT solver is
configured.  Reads a CNF file, prints the standard 's'/'v' result lines, and
exits 10/20 like a stock competition solver.

Requires the optional python-sat dependency (``pip install ldimkit[solver]``
or point LDIMKIT_SAT_SOLVER at any DIMACS-speaking solver binary instead).
"""

from __future__ import annotations

import sys


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 1:
        print("usage: python -m ldimkit.satshim <file.cnf>", file=sys.stderr)
        return 2
    try:
        from pysat.formula import CNF
        from pysat.solvers import Solver
    except ImportError:
        print(
            "satshim: python-sat is not installed; run "
            "'pip install python-sat' or set LDIMKIT_SAT_SOLVER to an "
            "external DIMACS solver",
            file=sys.stderr,
        )
        return 3
    try:
        cnf = CNF(from_file=argv[0])
    except OSError as exc:
        print(f"satshim: cannot read {argv[0]}: {exc}", file=sys.stderr)
        return 3
    with Solver(name="m22", bootstrap_with=cnf) as solver:
        if solver.solve():
            model = solver.get_model() or []
            print("s SATISFIABLE")
            print("v " + " ".join(str(lit) for lit in model) + " 0")
            return 10
        print("s UNSATISFIABLE")
        return 20


if __name__ == "__main__":
    sys.exit(main())
