"""Conservative finite-volume solver for the divergence-form family on
polar grids.

Cell balances integrate div(a(q)/q grad u) + C over the dual cell of each
interior node: radial faces carry sinh(r_face) * K * du/dr * htheta, angular
faces carry K * du/dtheta / sinh(r_node) * hr, with K = a(q)/q evaluated from
the full face gradient.  Residuals are the balances divided by the cell
volume sinh(r) hr htheta, so they approximate the operator pointwise and
vanish at second order for smooth solutions.

Two iterations are provided: damped red-black nonlinear Gauss-Seidel (the
robust default) and Picard linearization with a sparse direct solve per outer
step ("accelerated"), which reaches tight tolerances orders of magnitude
faster on fine grids.  Both terminate on the true nonlinear residual and both
are bitwise deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .grid import AnnulusGrid, DiscreteField
from .laws import FluxLaw
from .radial import NoSolutionError

__all__ = [
    "SolverParams",
    "NotConvergedError",
    "fd_solve",
    "discrete_residual",
    "discrete_residual_masked",
    "discrete_gradient",
]


class NotConvergedError(Exception):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


@dataclass
class SolverParams:
    tol: float = 1e-10
    max_iter: int = 200000
    damping: float = 0.7
    accelerate: bool = False  # Picard linearization + sparse direct solves
    blowup_gradient: float = 1e8
    check_every: int = 20  # Gauss-Seidel residual check cadence


def _theta_roll(u: np.ndarray, shift: int) -> np.ndarray:
    return np.roll(u, -shift, axis=1)


def _radial_derivative(u: np.ndarray, hr: float) -> np.ndarray:
    """du/dr at nodes: central interior, second-order one-sided at end rows."""
    d = np.empty_like(u)
    d[1:-1] = (u[2:] - u[:-2]) / (2.0 * hr)
    d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * hr)
    d[-1] = (3.0 * u[-1] - 4.0 * u[-2] + u[-3]) / (2.0 * hr)
    return d


def _face_coefficients(u: np.ndarray, grid: AnnulusGrid, law: FluxLaw):
    """K = a(q)/q on radial faces (nr-1, ntheta) and angular faces (nr, ntheta)."""
    hr, ht = grid.hr, grid.htheta
    sinh_r = np.sinh(grid.rs)[:, None]
    r_face = grid.rs[:-1] + 0.5 * hr
    sinh_face = np.sinh(r_face)[:, None]

    d_theta = (_theta_roll(u, 1) - _theta_roll(u, -1)) / (2.0 * ht)

    du_r_face = (u[1:] - u[:-1]) / hr
    du_t_face = 0.5 * (d_theta[1:] + d_theta[:-1]) / sinh_face
    q_rad = np.sqrt(du_r_face**2 + du_t_face**2)
    k_rad = law.coefficient(q_rad)

    d_r = _radial_derivative(u, hr)
    du_t_ang = (_theta_roll(u, 1) - u) / (ht * sinh_r)
    du_r_ang = 0.5 * (d_r + _theta_roll(d_r, 1))
    q_ang = np.sqrt(du_r_ang**2 + du_t_ang**2)
    k_ang = law.coefficient(q_ang)

    q_max = max(float(np.nanmax(q_rad, initial=0.0)), float(np.nanmax(q_ang, initial=0.0)))
    return k_rad, k_ang, q_max


def _weights(grid: AnnulusGrid, k_rad: np.ndarray, k_ang: np.ndarray):
    """Stencil weights on interior rows: east, west, north, south, volume."""
    hr, ht = grid.hr, grid.htheta
    rows = grid.interior_rows
    i0, i1 = rows.start, rows.stop
    sinh_r = np.sinh(grid.rs[rows])[:, None]
    r_face = grid.rs[:-1] + 0.5 * hr
    sinh_face = np.sinh(r_face)

    w_e = sinh_face[i0:i1, None] * k_rad[i0:i1] * ht / hr
    if grid.kind == "disk":
        # innermost west face sits at the pole, zero length
        w_w = np.zeros_like(w_e)
        if i1 - i0 > 1:
            w_w[1:] = sinh_face[i0 : i1 - 1, None] * k_rad[i0 : i1 - 1]* ht / hr
    else:
        w_w = sinh_face[i0 - 1 : i1 - 1, None] * k_rad[i0 - 1 : i1 - 1] * ht / hr
    w_n = k_ang[rows] * hr / (ht * sinh_r)
    w_s = _theta_roll(k_ang[rows], -1) * hr / (ht * sinh_r)
    vol = sinh_r * hr * ht
    return w_e, w_w, w_n, w_s, vol


def _balance(u: np.ndarray, grid: AnnulusGrid, law: FluxLaw, C: float):
    k_rad, k_ang, q_max = _face_coefficients(u, grid, law)
    w_e, w_w, w_n, w_s, vol = _weights(grid, k_rad, k_ang)
    rows = grid.interior_rows
    i0, i1 = rows.start, rows.stop
    ui = u[rows]
    u_e = u[i0 + 1 : i1 + 1]
    u_w = u[i0 - 1 : i1 - 1] if i0 >= 1 else np.vstack([np.zeros_like(u[0]), u[i0 : i1 - 1]])
    u_n = _theta_roll(ui, 1)
    u_s = _theta_roll(ui, -1)
    bal = w_e * (u_e - ui) + w_w * (u_w - ui) + w_n * (u_n - ui) + w_s * (u_s - ui) + C * vol
    return bal, vol, q_max


def discrete_residual(field: DiscreteField, law: FluxLaw, C: float) -> np.ndarray:
    """Pointwise residual of the scheme on interior rows (balance / volume)."""
    bal, vol, _ = _balance(field.values, field.grid, law, C)
    return bal / vol


def discrete_residual_masked(values: np.ndarray, grid: AnnulusGrid, law: FluxLaw, C: float):
    """Residual for partially defined values (NaN outside the valid region).

    Returns (residual rows, evaluable mask); a node is evaluable when its full
    3x3 stencil carries finite values.
    """
    with np.errstate(invalid="ignore", divide="ignore"):
        bal, vol, _ = _balance(values, grid, law, C)
        res = bal / vol
    return res, np.isfinite(res)


def discrete_gradient(field: DiscreteField) -> np.ndarray:
    """Metric gradient norm sqrt(u_r^2 + u_theta^2 / sinh^2 r) at every node."""
    u, grid = field.values, field.grid
    d_r = _radial_derivative(u, grid.hr)
    d_t = (_theta_roll(u, 1) - _theta_roll(u, -1)) / (2.0 * grid.htheta)
    sinh_r = np.sinh(grid.rs)[:, None]
    return np.sqrt(d_r**2 + (d_t / sinh_r) ** 2)


def _initial_guess(grid: AnnulusGrid, inner: np.ndarray | None, outer: np.ndarray) -> np.ndarray:
    nr, nt = grid.shape()
    u = np.empty((nr, nt))
    if grid.kind == "annulus":
        lam = ((grid.rs - grid.r_inner) / (grid.r_outer - grid.r_inner))[:, None]
        u[:] = (1.0 - lam) * inner[None, :] + lam * outer[None, :]
    else:
        u[:] = outer[None, :]
    return u


def _apply_boundary(u: np.ndarray, grid: AnnulusGrid, inner, outer) -> None:
    u[-1] = outer
    if grid.kind == "annulus":
        u[0] = inner


def _gs_sweeps(u, grid, law, C, params):
    rows = grid.interior_rows
    i0, i1 = rows.start, rows.stop
    ii, jj = np.meshgrid(np.arange(i0, i1), np.arange(grid.ntheta), indexing="ij")
    color_masks = [((ii + jj) % 2 == c) for c in (0, 1)]
    omega = params.damping

    def neighbor_sum(uc, w_e, w_w, w_n, w_s, vol):
        u_e = uc[i0 + 1 : i1 + 1]
        if i0 >= 1:
            u_w = uc[i0 - 1 : i1 - 1]
        else:
            u_w = np.vstack([np.zeros_like(uc[0]), uc[i0 : i1 - 1]])
        ui = uc[rows]
        num = w_e * u_e + w_w * u_w + w_n * _theta_roll(ui, 1) + w_s * _theta_roll(ui, -1) + C * vol
        den = w_e + w_w + w_n + w_s
        return num / den

    for sweep in range(params.max_iter):
        k_rad, k_ang, q_max = _face_coefficients(u, grid, law, )
        if np.isfinite(law.sup_a) and q_max > params.blowup_gradient:
            raise NoSolutionError(f"gradient blow-up (max face gradient {q_max:.3g})")
        weights = _weights(grid, k_rad, k_ang)
        for mask in color_masks:
            gs = neighbor_sum(u, *weights)
            block = u[rows]
            block[mask] += omega * (gs[mask] - block[mask])
            u[rows] = block
        if sweep % params.check_every == 0 or sweep == params.max_iter - 1:
            bal, vol, _ = _balance(u, grid, law, C)
            res = float(np.max(np.abs(bal / vol)))
            if res <= params.tol:
                return u, res, sweep + 1
    bal, vol, _ = _balance(u, grid, law, C)
    res = float(np.max(np.abs(bal / vol)))
    raise NotConvergedError(f"Gauss-Seidel stalled at residual {res:.3g}", residual=res)


def _picard_iterations(u, grid, law, C, params):
    rows = grid.interior_rows
    i0, i1 = rows.start, rows.stop
    nt = grid.ntheta
    n_rows = i1 - i0
    n_unknown = n_rows * nt
    max_outer = min(params.max_iter, 200)

    for outer in range(max_outer):
        bal, vol, q_max = _balance(u, grid, law, C)
        res = float(np.max(np.abs(bal / vol)))
        if res <= params.tol:
            return u, res, outer
        if np.isfinite(law.sup_a) and q_max > params.blowup_gradient:
            raise NoSolutionError(f"gradient blow-up (max face gradient {q_max:.3g})")

        k_rad, k_ang, _ = _face_coefficients(u, grid, law)
        w_e, w_w, w_n, w_s, vol = _weights(grid, k_rad, k_ang)

        idx = np.arange(n_unknown).reshape(n_rows, nt)
        diag = w_e + w_w + w_n + w_s
        rows_l, cols_l, vals_l = [idx.ravel()], [idx.ravel()], [diag.ravel()]
        rhs = np.full((n_rows, nt), C, dtype=float) * vol

        north = np.roll(idx, -1, axis=1)
        south = np.roll(idx, 1, axis=1)
        rows_l += [idx.ravel(), idx.ravel()]
        cols_l += [north.ravel(), south.ravel()]
        vals_l += [-w_n.ravel(), -w_s.ravel()]

        if n_rows > 1:
            rows_l.append(idx[:-1].ravel())
            cols_l.append(idx[1:].ravel())
            vals_l.append(-w_e[:-1].ravel())
            rows_l.append(idx[1:].ravel())
            cols_l.append(idx[:-1].ravel())
            vals_l.append(-w_w[1:].ravel())
        rhs[-1] += w_e[-1] * u[i1]
        if grid.kind == "annulus":
            rhs[0] += w_w[0] * u[i0 - 1]

        mat = sp.csr_matrix(
            (np.concatenate(vals_l), (np.concatenate(rows_l), np.concatenate(cols_l))),
            shape=(n_unknown, n_unknown),
        )
        sol = spla.spsolve(mat, rhs.ravel()).reshape(n_rows, nt)
        u[rows] = sol
    bal, vol, _ = _balance(u, grid, law, C)
    res = float(np.max(np.abs(bal / vol)))
    raise NotConvergedError(f"Picard iteration stalled at residual {res:.3g}", residual=res)


def fd_solve(
    grid: AnnulusGrid,
    law: FluxLaw,
    C: float,
    inner_data,
    outer_data,
    params: SolverParams | None = None,
) -> DiscreteField:
    """Solve the Dirichlet problem on the grid; returns the discrete field.

    ``inner_data`` / ``outer_data`` are ring values (scalar or length-ntheta);
    disk grids take no inner data.  Raises NotConvergedError past the
    iteration cap and NoSolutionError on gradient blow-up for saturating laws.
    """
    params = params or SolverParams()
    nt = grid.ntheta
    outer = np.broadcast_to(np.asarray(outer_data, dtype=float), (nt,)).copy()
    if grid.kind == "annulus":
        if inner_data is None:
            raise ValueError("annulus grids need inner boundary data")
        inner = np.broadcast_to(np.asarray(inner_data, dtype=float), (nt,)).copy()
    else:
        if inner_data is not None:
            raise ValueError("disk grids take no inner boundary data")
        inner = None

    u = _initial_guess(grid, inner, outer)
    _apply_boundary(u, grid, inner, outer)

    if params.accelerate:
        u, _, _ = _picard_iterations(u, grid, law, C, params)
    else:
        u, _, _ = _gs_sweeps(u, grid, law, C, params)
    return DiscreteField(grid, u)
