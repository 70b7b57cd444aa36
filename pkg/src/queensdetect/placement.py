"""N-Queens decimation patterns on a block grid.

A placement is a set of board cells no two of which attack each other. The
detector only probes these cells, so a continual path across the frame is
likely to cross at least one of them.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

from .errors import GridTooSmall, NoSolution, OutOfBounds

Cell = tuple[int, int]


class Kind(str, enum.Enum):
    SINGLE = "single"
    DOUBLE = "double"


@dataclass(frozen=True)
class QueensPlacement:
    n: int
    cells: tuple[Cell, ...]
    kind: Kind = Kind.SINGLE

    def __len__(self) -> int:
        return len(self.cells)

    def columns(self) -> list[int]:
        """Column of each cell, in cell order."""
        return [c for _, c in self.cells]

    def halves(self) -> tuple[tuple[Cell, ...], tuple[Cell, ...]]:
        """Split a double placement into its original and mirrored halves.

        Cells dropped as duplicates are restored in the mirrored half so that
        each half is a full placement. For a single placement the second half
        is empty.
        """
        original = self.cells[: self.n]
        if self.kind is Kind.SINGLE:
            return original, ()
        return original, tuple((r, self.n - 1 - c) for r, c in original)


@dataclass(frozen=True)
class GridCells:
    rows: int
    cols: int
    cells: tuple[Cell, ...]

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)


class Violation(NamedTuple):
    constraint: str  # "row" | "column" | "diagonal" | "anti-diagonal"
    first: Cell
    second: Cell


# Lexicographically first solutions for orders whose search takes longer than
# a second or so in pure Python (n=32 needs close to a minute). Produced by
# _search and checked against it in tests/test_placement.py.
_PRECOMPUTED: dict[int, tuple[int, ...]] = {
    28: (0, 2, 4, 1, 3, 8, 10, 12, 14, 16, 22, 24, 21, 27, 25, 23, 26, 6, 11, 15,
         17, 7, 9, 13, 19, 5, 20, 18),
    29: (0, 2, 4, 1, 3, 8, 10, 12, 14, 5, 19, 23, 25, 20, 28, 26, 24, 27, 7, 11,
         6, 15, 9, 16, 21, 13, 17, 22, 18),
    30: (0, 2, 4, 1, 3, 8, 10, 12, 14, 6, 22, 25, 27, 24, 21, 23, 29, 26, 28, 15,
         11, 9, 7, 5, 17, 19, 16, 13, 20, 18),
    31: (0, 2, 4, 1, 3, 8, 10, 12, 14, 5, 17, 22, 25, 27, 30, 24, 26, 29, 6, 16,
         28, 13, 9, 7, 19, 11, 15, 18, 21, 23, 20),
    32: (0, 2, 4, 1, 3, 8, 10, 12, 14, 5, 17, 23, 25, 29, 24, 30, 27, 31, 26, 28,
         15, 18, 9, 7, 16, 11, 20, 6, 13, 22, 19, 21),
}


def _search(n: int) -> tuple[int, ...] | None:
    """Row-by-row backtracking, smallest free column first.

    Columns and both diagonal families are tracked as bitmasks; the diagonal
    masks are shifted one place per row so bit ``c`` always means "column c
    is attacked along that diagonal in the current row".
    """
    full = (1 << n) - 1
    cols: list[int] = []

    def place(used: int, left: int, right: int) -> bool:
        if used == full:
            return True
        free = full & ~(used | left | right)
        while free:
            bit = free & -free
            free ^= bit
            cols.append(bit.bit_length() - 1)
            if place(used | bit, ((left | bit) << 1) & full, (right | bit) >> 1):
                return True
            cols.pop()
        return False

    return tuple(cols) if place(0, 0, 0) else None


@lru_cache(maxsize=None)
def _first_columns(n: int) -> tuple[int, ...]:
    if n in _PRECOMPUTED:
        return _PRECOMPUTED[n]
    found = _search(n)
    if found is None:
        raise NoSolution(n)
    return found


def solve_first(n: int) -> QueensPlacement:
    """Return the lexicographically first n-queens solution.

    Rows are filled in ascending order and each row takes the smallest column
    that keeps the partial board consistent, so the result is deterministic.

    Raises
    ------
    NoSolution
        For n = 2 and n = 3.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"board order must be a positive integer, got {n!r}")
    cols = _first_columns(n)
    return QueensPlacement(n, tuple(enumerate(cols)), Kind.SINGLE)


def mirror_double(p: QueensPlacement) -> QueensPlacement:
    """Union of ``p`` and its reflection across the vertical centre line."""
    if p.kind is not Kind.SINGLE:
        raise ValueError("mirror_double expects a single placement")
    seen = set(p.cells)
    cells = list(p.cells)
    for r, c in sorted(p.cells):
        m = (r, p.n - 1 - c)
        if m not in seen:
            seen.add(m)
            cells.append(m)
    return QueensPlacement(p.n, tuple(cells), Kind.DOUBLE)


def make_placement(n: int, double: bool = True) -> QueensPlacement:
    p = solve_first(n)
    return mirror_double(p) if double else p


def validate(cells: Sequence[Cell], n: int) -> list[Violation]:
    """List every attacking pair among ``cells`` on an n x n board."""
    for cell in cells:
        r, c = cell
        if not (0 <= r < n and 0 <= c < n):
            raise OutOfBounds(f"cell {cell} outside a {n}x{n} board")
    out = []
    cells = [tuple(c) for c in cells]
    for i, a in enumerate(cells):
        for b in cells[i + 1:]:
            if a[0] == b[0]:
                out.append(Violation("row", a, b))
            if a[1] == b[1]:
                out.append(Violation("column", a, b))
            if a[0] - a[1] == b[0] - b[1]:
                out.append(Violation("diagonal", a, b))
            if a[0] + a[1] == b[0] + b[1]:
                out.append(Violation("anti-diagonal", a, b))
    return out


def map_to_grid(p: QueensPlacement, rows: int, cols: int) -> GridCells:
    """Stretch an n x n placement onto a rows x cols block grid.

    Cell (r, c) goes to (floor(r*rows/n), floor(c*cols/n)). Both maps are
    strictly increasing when rows, cols >= n, so distinct rows stay distinct
    and distinct columns stay distinct. Diagonal spacing is only approximately
    kept on non-square grids.
    """
    if rows < p.n or cols < p.n:
        raise GridTooSmall(f"{rows}x{cols} grid cannot hold an order-{p.n} placement")
    mapped = tuple((r * rows // p.n, c * cols // p.n) for r, c in p.cells)
    return GridCells(rows, cols, mapped)


def grid_placement(rows: int, cols: int, n: int | None = None,
                   double: bool = True) -> GridCells:
    """Placement on a rows x cols grid; ``n`` defaults to min(rows, cols)."""
    if n is None:
        n = min(rows, cols)
    if rows < n or cols < n:
        raise GridTooSmall(f"{rows}x{cols} grid cannot hold an order-{n} placement")
    return map_to_grid(make_placement(n, double), rows, cols)
