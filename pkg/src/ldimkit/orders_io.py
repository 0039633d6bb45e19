"""Reading and writing orders files.

An orders file holds one partial linear extension per line as decimal
element ids.  Parsing is tolerant: any run of spaces or tabs separates
tokens, blank lines are skipped, and a ``#`` starts a comment.  Emission is
canonical: single spaces, one member per line, trailing newline — so that
emitted bytes are stable under reparse.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .errors import FormatError


def parse_orders_text(text: str) -> list[tuple[int, ...]]:
    """Parse orders-file text into a list of id tuples."""
    rows: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append(tuple(int(token) for token in line.split()))
        except ValueError:
            raise FormatError(
                f"line {lineno}: expected whitespace-separated integers, "
                f"got {raw!r}") from None
    return rows


def emit_orders_text(ples: Iterable[Sequence[int]]) -> str:
    """Render members in canonical single-space form."""
    return "".join(" ".join(str(a) for a in ple) + "\n" for ple in ples)


def read_orders_file(path) -> list[tuple[int, ...]]:
    return parse_orders_text(Path(path).read_text(encoding="utf-8"))


def write_orders_file(path, ples: Iterable[Sequence[int]]) -> None:
    Path(path).write_text(emit_orders_text(ples), encoding="utf-8")
