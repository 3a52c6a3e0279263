"""Space-time lattices, weighted sup norms, and square-integrable control fields.

The computational domain is the truncated strip [0, T] x [0, L].  Scalar
fields live on lattice nodes (time index 0..nt, space index 0..nx); control
densities live on space-time cells and are treated as piecewise constant, so
their squared Cameron-Martin norm is the exact integral of the step function.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Grid",
    "WeightParams",
    "Field",
    "Control",
    "make_grid",
    "weighted_sup_norm",
    "cm_norm",
    "project_to_SN",
]


@dataclass(frozen=True)
class Grid:
    """Uniform lattice on [0, T] x [0, L]: nt time steps, nx space cells."""

    T: float
    L: float
    nt: int
    nx: int

    def __post_init__(self):
        if not (np.isfinite(self.T) and self.T > 0):
            raise ValueError(f"final time T must be positive, got {self.T!r}")
        if not (np.isfinite(self.L) and self.L > 0):
            raise ValueError(f"truncation length L must be positive, got {self.L!r}")
        if int(self.nt) != self.nt or self.nt < 1:
            raise ValueError(f"nt must be an integer >= 1, got {self.nt!r}")
        if int(self.nx) != self.nx or self.nx < 2:
            raise ValueError(f"nx must be an integer >= 2, got {self.nx!r}")
        object.__setattr__(self, "T", float(self.T))
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "nt", int(self.nt))
        object.__setattr__(self, "nx", int(self.nx))

    @property
    def dt(self) -> float:
        return self.T / self.nt

    @property
    def dx(self) -> float:
        return self.L / self.nx

    @property
    def stable_explicit(self) -> bool:
        """True when dt <= dx^2/2, the CFL bound for explicit heat stepping."""
        return self.dt <= 0.5 * self.dx**2 * (1.0 + 1e-12)

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.nt + 1)

    def xs(self) -> np.ndarray:
        return np.linspace(0.0, self.L, self.nx + 1)

    def cell_times(self) -> np.ndarray:
        """Midpoints of the nt time cells."""
        return (np.arange(self.nt) + 0.5) * self.dt

    def cell_xs(self) -> np.ndarray:
        """Midpoints of the nx space cells."""
        return (np.arange(self.nx) + 0.5) * self.dx

    def refined(self, tfac: int = 2, xfac: int = 2) -> "Grid":
        return Grid(self.T, self.L, self.nt * tfac, self.nx * xfac)


def make_grid(T: float, L: float, nt: int, nx: int) -> Grid:
    """Build a grid, validating positivity; dt and dx are derived."""
    return Grid(T, L, nt, nx)


@dataclass(frozen=True)
class WeightParams:
    """Exponential spatial weight exp(-r*x) used by the sup norms."""

    r: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.r):
            raise ValueError(f"weight rate r must be finite, got {self.r!r}")

    def decay(self, xs: np.ndarray) -> np.ndarray:
        return np.exp(-self.r * np.asarray(xs, dtype=float))


class Field:
    """Immutable scalar lattice indexed (time 0..nt, space 0..nx)."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid, values):
        arr = np.array(values, dtype=float)
        if arr.shape != (grid.nt + 1, grid.nx + 1):
            raise ValueError(
                f"field shape {arr.shape} does not match grid "
                f"({grid.nt + 1}, {grid.nx + 1})"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("field values must be finite")
        arr.setflags(write=False)
        self.grid = grid
        self.values = arr

    @classmethod
    def zeros(cls, grid: Grid) -> "Field":
        return cls(grid, np.zeros((grid.nt + 1, grid.nx + 1)))

    @classmethod
    def from_function(cls, grid: Grid, fn) -> "Field":
        """Sample fn(t, x) at lattice nodes; fn must broadcast over arrays."""
        tt, xx = np.meshgrid(grid.times(), grid.xs(), indexing="ij")
        return cls(grid, fn(tt, xx))

    def scaled(self, c: float) -> "Field":
        return Field(self.grid, c * self.values)

    def __add__(self, other: "Field") -> "Field":
        if other.grid != self.grid:
            raise ValueError("field grids do not match")
        return Field(self.grid, self.values + other.values)

    def __sub__(self, other: "Field") -> "Field":
        if other.grid != self.grid:
            raise ValueError("field grids do not match")
        return Field(self.grid, self.values - other.values)

    def __repr__(self):
        return f"Field(grid={self.grid!r}, max|.|={np.max(np.abs(self.values)):.3g})"


class Control:
    """Piecewise-constant control density gdot on space-time cells.

    gdot[i, j] is the value on [t_i, t_{i+1}) x [x_j, x_{j+1}); the squared
    Cameron-Martin norm sum(gdot^2)*dt*dx is the exact integral of the step
    function.  Node-based steppers read the cell value at (t_i, x_j), the
    last node reusing the last cell.
    """

    __slots__ = ("grid", "gdot")

    def __init__(self, grid: Grid, gdot):
        arr = np.array(gdot, dtype=float)
        if arr.shape != (grid.nt, grid.nx):
            raise ValueError(
                f"control shape {arr.shape} does not match grid cells "
                f"({grid.nt}, {grid.nx})"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("control values must be finite")
        arr.setflags(write=False)
        self.grid = grid
        self.gdot = arr

    @classmethod
    def zeros(cls, grid: Grid) -> "Control":
        return cls(grid, np.zeros((grid.nt, grid.nx)))

    @classmethod
    def from_function(cls, grid: Grid, fn) -> "Control":
        """Sample fn(t, x) at cell midpoints."""
        tt, xx = np.meshgrid(grid.cell_times(), grid.cell_xs(), indexing="ij")
        return cls(grid, fn(tt, xx))

    def at_nodes(self) -> np.ndarray:
        """(nt, nx+1) view of the step function at lattice nodes."""
        return np.concatenate([self.gdot, self.gdot[:, -1:]], axis=1)

    def scaled(self, c: float) -> "Control":
        return Control(self.grid, c * self.gdot)

    def __add__(self, other: "Control") -> "Control":
        if other.grid != self.grid:
            raise ValueError("control grids do not match")
        return Control(self.grid, self.gdot + other.gdot)

    def __sub__(self, other: "Control") -> "Control":
        if other.grid != self.grid:
            raise ValueError("control grids do not match")
        return Control(self.grid, self.gdot - other.gdot)

    def __repr__(self):
        return f"Control(grid={self.grid!r}, norm={cm_norm(self):.3g})"


def weighted_sup_norm(field: Field, weight: WeightParams = WeightParams(0.0),
                      up_to: int | None = None) -> float:
    """Max of exp(-r*x_j)*|values[i, j]| over i <= up_to and all j.

    With up_to = nt (the default) this is the lattice stand-in for the
    weighted space-time sup norm.
    """
    nt = field.grid.nt
    if up_to is None:
        up_to = nt
    if not 0 <= up_to <= nt:
        raise ValueError(f"up_to must lie in [0, {nt}], got {up_to}")
    decay = weight.decay(field.grid.xs())
    return float(np.max(np.abs(field.values[: up_to + 1]) * decay))


def cm_norm(g: Control) -> float:
    """Cameron-Martin norm sqrt(sum(gdot^2)*dt*dx) of a cell control."""
    return float(np.sqrt(np.sum(g.gdot**2) * g.grid.dt * g.grid.dx))


def project_to_SN(g: Control, N: float) -> Control:
    """Radial projection onto the centered Cameron-Martin ball of radius N."""
    if not (np.isfinite(N) and N > 0):
        raise ValueError(f"ball radius N must be positive, got {N!r}")
    norm = cm_norm(g)
    if norm <= N:
        return g
    return g.scaled(N / norm)
