"""Validated numerics for ODE trajectories with finite-time singularities.

Rigorous enclosure machinery (interval arithmetic, verified linear algebra,
Taylor/Lohner integration) plus the certificate layer used to prove
existence of connecting orbits through degeneracy-inducing points and to
bound arrival/passage times and wave supports two-sidedly.
"""

from .intervals import Interval, IVector, IMatrix, IntervalError

__all__ = ["Interval", "IVector", "IMatrix", "IntervalError"]

__version__ = "0.1.0"
