"""Verification checks on solved fields: comparison principle, gradient
bound, left-translation invariance, and sphere-sup gradient decay."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import RectBivariateSpline

from ..group import GElem, act, ad_norm_ball_max
from ..halfspace import polar_chart, polar_chart_inv
from .grid import AnnulusGrid, DiscreteField
from .laws import FluxLaw
from .solve2d import discrete_gradient, discrete_residual, discrete_residual_masked

__all__ = [
    "ComparisonReport",
    "GradientBoundReport",
    "TranslateReport",
    "DecayRow",
    "comparison_check",
    "gradient_bound_check",
    "left_translate_check",
    "decay_scan",
]


@dataclass(frozen=True)
class ComparisonReport:
    min_margin: float
    location: tuple[int, int]
    tol: float

    @property
    def passed(self) -> bool:
        return self.min_margin >= -self.tol


def comparison_check(u: DiscreteField, v: DiscreteField, tol: float = 1e-8) -> ComparisonReport:
    """Interior ordering check for two solutions with ordered boundary data.

    Precondition: u <= v on every boundary node; violation of that is a test
    misconfiguration and raises.  Passes when min(v - u) >= -tol over all
    nodes; the report carries the minimum margin and its grid location.
    """
    if u.grid is not v.grid and (u.grid.shape() != v.grid.shape() or u.grid.kind != v.grid.kind):
        raise ValueError("fields live on different grids")
    diff = v.values - u.values
    boundary_rows = [diff.shape[0] - 1] if u.grid.kind == "disk" else [0, diff.shape[0] - 1]
    for row in boundary_rows:
        if np.min(diff[row]) < 0:
            raise ValueError("boundary data are not ordered: comparison check misconfigured")
    flat = int(np.argmin(diff))
    loc = np.unravel_index(flat, diff.shape)
    return ComparisonReport(float(diff[loc]), (int(loc[0]), int(loc[1])), tol)


@dataclass(frozen=True)
class GradientBoundReport:
    g_interior: float
    g_boundary: float
    ball_radius: float
    allowance: float
    single_factor_ratio: float  # not asserted, recorded for inspection

    @property
    def bound(self) -> float:
        return math.exp(2.0 * self.ball_radius) * self.g_boundary + self.allowance

    @property
    def passed(self) -> bool:
        return self.g_interior <= self.bound


def gradient_bound_check(u: DiscreteField, ball_radius: float, allowance: float | None = None) -> GradientBoundReport:
    """Translation-norm gradient bound on a domain inside the ball B_R.

    Asserts the proven product form: the interior gradient max does not exceed
    (max ball adjoint norm)^2 = e^{2R} times the boundary gradient max, up to
    a grid allowance (default 10 h^2).  The single-factor ratio
    g_int / (e^R g_bd) is recorded without being asserted.
    """
    if u.grid.r_outer > ball_radius + 1e-12:
        raise ValueError("grid extends beyond the stated ball")
    if allowance is None:
        allowance = 10.0 * u.grid.max_spacing() ** 2
    grad = discrete_gradient(u)
    rows = u.grid.interior_rows
    g_int = float(np.max(grad[rows]))
    if u.grid.kind == "disk":
        g_bd = float(np.max(grad[-1]))
    else:
        g_bd = float(max(np.max(grad[0]), np.max(grad[-1])))
    single = g_int / (ad_norm_ball_max(ball_radius) * g_bd) if g_bd > 0 else math.inf if g_int > 0 else 0.0
    return GradientBoundReport(g_int, g_bd, ball_radius, float(allowance), float(single))


@dataclass(frozen=True)
class TranslateReport:
    residual_translated: float
    residual_baseline: float
    n_evaluated: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual_translated <= self.tol


def _periodic_spline(grid: AnnulusGrid, values: np.ndarray) -> RectBivariateSpline:
    pad = 3
    thetas = grid.thetas
    two_pi = 2.0 * math.pi
    theta_ext = np.concatenate([thetas[-pad:] - two_pi, thetas, thetas[:pad] + two_pi])
    vals_ext = np.concatenate([values[:, -pad:], values, values[:, :pad]], axis=1)
    return RectBivariateSpline(grid.rs, theta_ext, vals_ext, kx=3, ky=3)


def left_translate_check(
    u: DiscreteField,
    law: FluxLaw,
    C: float,
    z: GElem,
    tol: float | None = None,
    tol_factor: float = 10.0,
) -> TranslateReport:
    """Residual of the left-translated field u_z(x) = u(z.x).

    Grid nodes are mapped through the polar chart, pushed by the isometry z,
    pulled back to polar coordinates, and u is sampled there by bicubic
    interpolation; the discrete residual of the composite is evaluated on
    every interior node whose image and full stencil stay inside the grid.
    The default tolerance is tol_factor times the baseline residual of u
    itself, which absorbs the interpolation-order error.
    """
    grid = u.grid
    rr, tt = np.meshgrid(grid.rs, grid.thetas, indexing="ij")
    xs, ss = polar_chart(rr, tt)
    img_x = z.t[0] + z.s * xs
    img_s = z.s * ss
    r_img, th_img = polar_chart_inv((img_x, img_s))

    margin = 1e-9
    valid = (r_img >= grid.r_inner + margin) & (r_img <= grid.r_outer - margin)
    if not np.any(valid):
        raise ValueError("translated grid misses the domain entirely; z is too large")

    spline = _periodic_spline(grid, u.values)
    translated = np.full(grid.shape(), np.nan)
    translated[valid] = spline.ev(r_img[valid], np.mod(th_img[valid], 2.0 * math.pi))

    res, evaluable = discrete_residual_masked(translated, grid, law, C)
    if not np.any(evaluable):
        raise ValueError("no interior node has a fully valid stencil after translation")
    res_translated = float(np.max(np.abs(res[evaluable])))

    base = discrete_residual(u, law, C)
    res_base = float(np.max(np.abs(base)))
    if tol is None:
        tol = tol_factor * res_base
    return TranslateReport(res_translated, res_base, int(np.sum(evaluable)), float(tol))


@dataclass(frozen=True)
class DecayRow:
    label: str
    radii: list = field(default_factory=list)
    values: list = field(default_factory=list)
    classification: str = ""
    plateau: float = float("nan")


def _classify(values: np.ndarray) -> tuple[str, float]:
    tail = values[-3:]
    first = values[0]
    if np.all(tail <= max(1e-3 * first, 1e-300)):
        return "->0", 0.0
    lo, hi = float(np.min(tail)), float(np.max(tail))
    if hi <= 1.05 * max(lo, 1e-300):
        return "->C>0", float(np.mean(tail))
    return "unbounded/other", float("nan")


def decay_scan(entries, radii) -> list[DecayRow]:
    """Tabulate e^R sup_{S_R} |grad u| and classify the large-R behaviour.

    ``entries`` is a list of (label, callable R -> sup of |grad u| on S_R);
    classification needs at least three radii:  "->0" when the tail drops
    three decades below the first value, "->C>0" when the tail flattens to
    within 5 percent, "unbounded/other" otherwise.
    """
    radii = [float(R) for R in radii]
    if len(radii) < 3:
        raise ValueError("need at least three radii to classify")
    rows = []
    for label, sup_grad in entries:
        vals = np.array([math.exp(R) * float(sup_grad(R)) for R in radii])
        cls, plateau = _classify(vals)
        rows.append(DecayRow(label, radii, [float(v) for v in vals], cls, plateau))
    return rows
