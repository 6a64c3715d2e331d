"""Polar grids on geodesic annuli and disks around the group identity.

Nodes sit at uniformly spaced radii and angles; the angle direction is
periodic.  Annulus grids carry Dirichlet rings at both ends of the radius
range.  Disk grids offset the first node half a cell from the pole so the
innermost finite-volume face has zero length there, closing the pole without
special stencils.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["AnnulusGrid", "DiscreteField"]


@dataclass(frozen=True)
class AnnulusGrid:
    kind: str  # "annulus" or "disk"
    rs: np.ndarray
    thetas: np.ndarray
    hr: float
    htheta: float

    @staticmethod
    def annulus(r0: float, R: float, nr_cells: int, ntheta: int) -> "AnnulusGrid":
        if not (0 < r0 < R):
            raise ValueError("need 0 < r0 < R")
        if nr_cells < 8 or ntheta < 8:
            raise ValueError("grid too coarse; need at least 8 cells each way")
        rs = np.linspace(r0, R, nr_cells + 1)
        thetas = 2.0 * math.pi * np.arange(ntheta) / ntheta
        return AnnulusGrid("annulus", rs, thetas, float(rs[1] - rs[0]), 2.0 * math.pi / ntheta)

    @staticmethod
    def disk(R: float, nr_nodes: int, ntheta: int) -> "AnnulusGrid":
        if R <= 0:
            raise ValueError("disk radius must be positive")
        if nr_nodes < 8 or ntheta < 8:
            raise ValueError("grid too coarse; need at least 8 cells each way")
        h = R / (nr_nodes - 0.5)
        rs = (np.arange(nr_nodes) + 0.5) * h
        thetas = 2.0 * math.pi * np.arange(ntheta) / ntheta
        return AnnulusGrid("disk", rs, thetas, float(h), 2.0 * math.pi / ntheta)

    @property
    def nr(self) -> int:
        return self.rs.size

    @property
    def ntheta(self) -> int:
        return self.thetas.size

    @property
    def r_inner(self) -> float:
        return float(self.rs[0])

    @property
    def r_outer(self) -> float:
        return float(self.rs[-1])

    @property
    def interior_rows(self) -> slice:
        """Rows carrying unknowns: all but the Dirichlet ring(s)."""
        return slice(1, self.nr - 1) if self.kind == "annulus" else slice(0, self.nr - 1)

    def shape(self) -> tuple[int, int]:
        return (self.nr, self.ntheta)

    def max_spacing(self) -> float:
        """Largest metric node spacing (radial step vs. widest angular arc)."""
        return max(self.hr, self.htheta * math.sinh(self.r_outer))


@dataclass
class DiscreteField:
    """Grid values; boundary rings hold the Dirichlet data after a solve."""

    grid: AnnulusGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.grid.shape():
            raise ValueError(f"values shape {values.shape} does not match grid {self.grid.shape()}")
        self.values = values

    def copy(self) -> "DiscreteField":
        return DiscreteField(self.grid, self.values.copy())
