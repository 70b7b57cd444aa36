"""Monte-Carlo estimate of how often a straight path across the grid
crosses at least one decimation cell."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch
from .placement import Cell, GridCells

EDGES = ("top", "bottom", "left", "right")


@dataclass(frozen=True)
class Trajectory:
    rows: int
    cols: int
    cells: tuple[Cell, ...]

    def __len__(self):
        return len(self.cells)


@dataclass(frozen=True)
class CoverageReport:
    samples: int
    hits: int
    seed: int

    @property
    def rate(self) -> float:
        return self.hits / self.samples

    def to_dict(self) -> dict:
        return {"samples": self.samples, "hits": self.hits, "rate": self.rate, "seed": self.seed}


def digital_line(start: Cell, end: Cell) -> list[Cell]:
    """8-connected Bresenham line between two cells, endpoints included."""
    r0, c0 = start
    r1, c1 = end
    dr, dc = abs(r1 - r0), -abs(c1 - c0)
    sr = 1 if r1 >= r0 else -1
    sc = 1 if c1 >= c0 else -1
    err = dr + dc
    out = []
    r, c = r0, c0
    while True:
        out.append((r, c))
        if r == r1 and c == c1:
            return out
        e2 = 2 * err
        if e2 >= dc:
            err += dc
            r += sr
        if e2 <= dr:
            err += dr
            c += sc


def traverse_cells(start: Cell, end: Cell) -> list[Cell]:
    """Every cell whose interior the segment between two cell centres enters.

    Crossings are ordered with exact integer arithmetic; a crossing through a
    grid corner steps diagonally and does not pick up the two side cells.
    Consecutive cells are therefore always 8-neighbours, and the result is a
    superset of the cells a thin continuous path actually touches.
    """
    r, c = start
    r1, c1 = end
    nr, nc = abs(r1 - r), abs(c1 - c)
    sr = 1 if r1 >= r else -1
    sc = 1 if c1 >= c else -1
    out = [(r, c)]
    i = j = 0  # boundaries crossed so far in each direction
    while i < nr or j < nc:
        # i-th row boundary at t = (2i+1)/(2nr), j-th col boundary at (2j+1)/(2nc)
        row_t = (2 * i + 1) * nc if i < nr else None
        col_t = (2 * j + 1) * nr if j < nc else None
        if col_t is None or (row_t is not None and row_t < col_t):
            i += 1
            r += sr
        elif row_t is None or col_t < row_t:
            j += 1
            c += sc
        else:
            i += 1
            j += 1
            r += sr
            c += sc
        out.append((r, c))
    return out


RASTERS = {"traverse": traverse_cells, "bresenham": digital_line}


def _edge_cell(rng: np.random.Generator, edge: str, rows: int, cols: int) -> Cell:
    if edge == "top":
        return 0, int(rng.integers(cols))
    if edge == "bottom":
        return rows - 1, int(rng.integers(cols))
    if edge == "left":
        return int(rng.integers(rows)), 0
    return int(rng.integers(rows)), cols - 1


def gen_trajectory(rng: np.random.Generator, rows: int, cols: int,
                   raster: str = "traverse") -> Trajectory:
    """Straight path between boundary cells on two different grid edges.

    ``raster`` picks how the segment becomes cells: ``"traverse"`` keeps every
    cell the segment passes through, ``"bresenham"`` the thinner 8-connected
    digital line.
    """
    if raster not in RASTERS:
        raise ValueError(f"unknown raster {raster!r}; choose from {sorted(RASTERS)}")
    if rows < 2 or cols < 2:
        raise ValueError(f"grid must be at least 2x2, got {rows}x{cols}")
    first, second = rng.choice(len(EDGES), size=2, replace=False)
    a = _edge_cell(rng, EDGES[first], rows, cols)
    b = _edge_cell(rng, EDGES[second], rows, cols)
    return Trajectory(rows, cols, tuple(RASTERS[raster](a, b)))


def is_boundary(cell: Cell, rows: int, cols: int) -> bool:
    r, c = cell
    return r in (0, rows - 1) or c in (0, cols - 1)


def is_continual(cells: Sequence[Cell]) -> bool:
    """Consecutive cells are distinct 8-neighbours."""
    return all(max(abs(a[0] - b[0]), abs(a[1] - b[1])) == 1 for a, b in zip(cells, cells[1:]))


def crosses(t: Trajectory, cells: GridCells) -> bool:
    if (t.rows, t.cols) != (cells.rows, cells.cols):
        raise DimensionMismatch(
            f"trajectory grid {t.rows}x{t.cols} != placement grid {cells.rows}x{cells.cols}")
    return not set(t.cells).isdisjoint(cells.cells)


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator for sample ``index`` of the experiment seeded by ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def coverage_hits(n_samples: int, cells: GridCells, seed: int,
                  raster: str = "traverse") -> np.ndarray:
    """Per-sample crossing flags."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    flags = np.zeros(n_samples, dtype=bool)
    for i in range(n_samples):
        t = gen_trajectory(sample_rng(seed, i), cells.rows, cells.cols, raster)
        flags[i] = crosses(t, cells)
    return flags


def coverage_experiment(n_samples: int, cells: GridCells, seed: int = 0,
                        raster: str = "traverse") -> CoverageReport:
    flags = coverage_hits(n_samples, cells, seed, raster)
    return CoverageReport(n_samples, int(flags.sum()), seed)
