"""hyplab: numerical laboratory for the solvable Lie-group structure of
hyperbolic space, adjoint-norm extremes, and gradient-decay properties of
divergence-form elliptic PDE."""

from . import elliptic, group, halfspace, killing, polarfield

__all__ = ["halfspace", "group", "killing", "polarfield", "elliptic"]
__version__ = "0.1.0"
