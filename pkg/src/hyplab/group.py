"""Solvable Lie-group structure on hyperbolic space.

Every point p = (t, s) of the half-space model doubles as the isometry
g_p = (horizontal translation by t) o (dilation by s), the unique element of
the dilation-translation group taking (0, ..., 0, 1) to p.  Pulling the
composition of maps back to coordinates gives the group law

    (t, s) * (t', s') = (t + s t', s s'),

for which left translations are hyperbolic isometries.  This module carries
the group operations, conjugation, the adjoint matrices, and the operator
norms of right translations, all in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .halfspace import HPoint, distance

__all__ = [
    "GElem",
    "identity",
    "mul",
    "inv",
    "act",
    "conj",
    "point_of",
    "elem_of",
    "adjoint",
    "ad_norm",
    "right_diff_norm",
    "ad_norm_ball_max",
    "ad_norm_ball_search",
    "ad_norm_ball_max_numeric",
]


@dataclass(frozen=True)
class GElem:
    """Group element (t, s): horizontal shift t in R^{n-1}, dilation s > 0."""

    t: np.ndarray
    s: float

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.t, dtype=float))
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s", float(self.s))
        if not np.all(np.isfinite(t)):
            raise ValueError("non-finite translation part")
        if not (self.s > 0 and math.isfinite(self.s)):
            raise ValueError(f"dilation must be positive and finite, got {self.s}")

    @property
    def n(self) -> int:
        return self.t.size + 1


def identity(n: int = 2) -> GElem:
    return GElem(np.zeros(n - 1), 1.0)


def mul(g: GElem, h: GElem) -> GElem:
    if g.n != h.n:
        raise ValueError("elements of different dimension")
    return GElem(g.t + g.s * h.t, g.s * h.s)


def inv(g: GElem) -> GElem:
    return GElem(-g.t / g.s, 1.0 / g.s)


def point_of(g: GElem) -> HPoint:
    return HPoint(g.t.copy(), g.s)


def elem_of(p: HPoint) -> GElem:
    return GElem(p.x.copy(), p.s)


def act(g: GElem, p: HPoint) -> HPoint:
    """Apply the isometry g (left translation) to a point."""
    if g.n != p.n:
        raise ValueError("dimension mismatch")
    return HPoint(g.t + g.s * p.x, g.s * p.s)


def conj(g: GElem, h: GElem) -> GElem:
    """Conjugation g h g^{-1}; in coordinates (t + s u - w t, w) for h = (u, w)."""
    return mul(mul(g, h), inv(g))


def adjoint(g: GElem) -> np.ndarray:
    """Matrix of the conjugation differential at the neutral element.

    In the coordinate basis of the tangent space at (0, 1) the matrix is
    [[s I, -t], [0, 1]]; a tangent vector (a, b) maps to (s a - b t, b).
    """
    n = g.n
    m = np.zeros((n, n))
    m[: n - 1, : n - 1] = g.s * np.eye(n - 1)
    m[: n - 1, n - 1] = -g.t
    m[n - 1, n - 1] = 1.0
    return m


def _sigma_max(s, tau):
    """Largest singular value of [[s I, -t], [0, 1]] with tau = |t|, vectorized.

    The matrix reduces to the 2x2 block [[s, -tau], [0, 1]] plus s-multiples
    of the identity; the dominant singular value solves
    sigma^4 - (s^2 + tau^2 + 1) sigma^2 + s^2 = 0.  The discriminant is
    factored as ((s-1)^2 + tau^2)((s+1)^2 + tau^2) to avoid cancellation.
    """
    s = np.asarray(s, dtype=float)
    tau = np.asarray(tau, dtype=float)
    q = s * s + tau * tau + 1.0
    disc = ((s - 1.0) ** 2 + tau * tau) * ((s + 1.0) ** 2 + tau * tau)
    return np.sqrt(0.5 * (q + np.sqrt(disc)))


def ad_norm(g: GElem) -> float:
    """Operator norm of the adjoint matrix of g."""
    return float(_sigma_max(g.s, np.linalg.norm(g.t)))


def right_diff_norm(g: GElem, h: GElem) -> float:
    """Operator norm, in the hyperbolic metric, of the right-translation
    differential x -> x*g taken at the point h.

    Right translation is affine in (t, s) coordinates with constant Jacobian
    [[I, t_g], [0, s_g]], so the differential is exact; the metric weights at
    h and at h*g contribute the ratio s_h / s_{hg}, and the result does not
    depend on h.  Its value equals the adjoint norm of g^{-1}, not of g.
    """
    if g.n != h.n:
        raise ValueError("elements of different dimension")
    # Jacobian [[I, t],[0, s]] shares its singular values with the adjoint matrix.
    sigma = _sigma_max(g.s, np.linalg.norm(g.t))
    hg = mul(h, g)
    return float(sigma * h.s / hg.s)


def ad_norm_ball_max(radius: float) -> float:
    """Exact maximum of the adjoint norm over the closed geodesic ball B_R."""
    if radius < 0:
        raise ValueError("ball radius must be nonnegative")
    return math.cosh(radius) + math.sinh(radius)


def ad_norm_ball_search(radius: float, n_shells: int = 100, n_angles: int = 10000):
    """Grid search of the adjoint norm over B_R in the hyperbolic plane.

    The ball is swept by the Euclidean circle parametrization of the spheres
    r = R k / n_shells, k = 1..n_shells.  Returns (max value, maximizer as an
    HPoint); ties resolve to the lexicographically first (shell, angle) pair.
    """
    if radius < 0:
        raise ValueError("ball radius must be nonnegative")
    if radius == 0:
        return 1.0, HPoint(np.zeros(1), 1.0)
    shells = radius * np.arange(1, n_shells + 1) / n_shells
    angles = 2.0 * math.pi * np.arange(n_angles) / n_angles
    sh = np.sinh(shells)[:, None]
    ch = np.cosh(shells)[:, None]
    x = sh * np.cos(angles)[None, :]
    y = ch + sh * np.sin(angles)[None, :]
    sigma = _sigma_max(y, np.abs(x))
    flat = int(np.argmax(sigma))
    i, j = divmod(flat, n_angles)
    return float(sigma[i, j]), HPoint(np.array([x[i, j]]), float(y[i, j]))


def ad_norm_ball_max_numeric(radius: float, n_shells: int = 100, n_angles: int = 10000) -> float:
    return ad_norm_ball_search(radius, n_shells, n_angles)[0]


def left_invariance_defect(g: GElem, p: HPoint, q: HPoint) -> float:
    """|d(g.p, g.q) - d(p, q)|; zero up to roundoff since g acts isometrically."""
    return abs(distance(act(g, p), act(g, q)) - distance(p, q))
