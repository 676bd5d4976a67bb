"""Parameterized vector fields, time-scale factors, and the built-in systems.

Built-in systems hard-code exact polynomial/rational Jacobians (they are
low-degree and hand-derivable; no automatic differentiation).  Decimal
constants such as ``a = 0.3`` are carried as tight two-float enclosures of
the exact rationals so every downstream enclosure covers the real system,
not its nearest-float cousin.

Each integrable field also carries a small integer id and a parameter
vector consumed by the compiled integrator kernel; the kernel re-implements
the same polynomials as Taylor recurrences, and the test suite cross-checks
the two evaluations on random boxes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

import numpy as np

from .intervals import Interval, IMatrix, IVector, pow_dyadic

# kernel system ids (must match _kernel.py)
SYS_LINEAR = 0
SYS_CUBIC = 1
SYS_QUINTIC = 2
SYS_CANARD = 3


def interval_from_decimal(text: str | float) -> Interval:
    """Tightest interval containing an exact decimal value."""
    frac = Fraction(str(text))
    x = float(frac)
    if Fraction(x) == frac:
        return Interval(x)
    if Fraction(x) < frac:
        return Interval(x, math.nextafter(x, math.inf))
    return Interval(math.nextafter(x, -math.inf), x)


@dataclass(frozen=True)
class ParamVectorField:
    """Smooth vector field f(x, mu) with containment-correct interval
    extensions of f and its state/parameter Jacobians."""

    name: str
    state_dim: int
    param_dim: int
    eval_fn: Callable[[IVector, IVector], IVector]
    jac_x_fn: Callable[[IVector, IVector], IMatrix]
    jac_mu_fn: Callable[[IVector, IVector], IMatrix]
    sysid: int = -1
    kernel_par_lo: tuple = ()
    kernel_par_hi: tuple = ()

    def eval(self, x: IVector, params: IVector) -> IVector:
        self._check(x, params)
        return self.eval_fn(x, params)

    def jacobian_x(self, x: IVector, params: IVector) -> IMatrix:
        self._check(x, params)
        return self.jac_x_fn(x, params)

    def jacobian_mu(self, x: IVector, params: IVector) -> IMatrix:
        self._check(x, params)
        return self.jac_mu_fn(x, params)

    def _check(self, x, params):
        if len(x) != self.state_dim:
            raise ValueError(f"{self.name}: state dim {len(x)} != {self.state_dim}")
        if len(params) != self.param_dim:
            raise ValueError(f"{self.name}: param dim {len(params)} != {self.param_dim}")

    @property
    def kernel_dim(self) -> int:
        """State dimension of the kernel system (parameters ride along as
        zero-derivative trailing coordinates)."""
        return self.state_dim + self.param_dim


@dataclass(frozen=True)
class TimeScaleFactor:
    """The scalar factor linking the original and desingularized time
    scales, together with a human-readable description of its null set."""

    eval_fn: Callable[[IVector], Interval]
    null_description: str
    # dt/dtau as a function of state: the original-time quadrature integrand
    integrand_fn: Callable[[IVector], Interval] | None = None

    def eval_T(self, x: IVector) -> Interval:
        return self.eval_fn(x)


@dataclass(frozen=True)
class DesingularizedField:
    """A regular field obtained from a singular one by time reparameterization.

    ``base`` is the regular (desingularized) field actually integrated;
    ``origin_field``, when present, is the singular original; ``factor``
    carries the time-scale function.
    """

    base: ParamVectorField
    factor: TimeScaleFactor
    origin_field: ParamVectorField | None = None

    def __getattr__(self, item):
        # delegate the vector-field surface to the regular field
        return getattr(self.base, item)


def desingularize(field: ParamVectorField, T: TimeScaleFactor,
                  origin_field: ParamVectorField | None = None) -> DesingularizedField:
    """Wrap a caller-supplied containment-correct extension of the
    desingularized field together with its factor.  Smoothness of the
    product across the null set of the factor is the caller's mathematical
    responsibility."""
    return DesingularizedField(base=field, factor=T, origin_field=origin_field)


# ---------------------------------------------------------------------------
# built-in systems
# ---------------------------------------------------------------------------


def _as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return interval_from_decimal(x)


def cubic_wave_system(a=("0.3"), m: Fraction = Fraction(3, 4)) -> DesingularizedField:
    """Traveling-wave system with cubic reaction, in the desingularized
    moving frame: phi' = psi, psi' = -c psi - phi (1-phi)(phi-a).

    Parameter: the wave speed c.  The frame factor is phi^(-m).
    """
    ia = _as_interval(a)
    if not (0.0 < ia.lo and ia.hi < 1.0):
        raise ValueError("a must lie in (0,1)")
    one = Interval(1.0)

    def ev(x: IVector, p: IVector) -> IVector:
        phi, psi = x[0], x[1]
        c = p[0]
        return IVector([psi, -(c * psi) - phi * (one - phi) * (phi - ia)])

    def jx(x: IVector, p: IVector) -> IMatrix:
        phi = x[0]
        c = p[0]
        # d/dphi [phi(1-phi)(phi-a)] = -a + 2(1+a) phi - 3 phi^2
        gp = -ia + (one + ia) * 2 * phi - phi.sqr() * 3
        return IMatrix([[Interval(0.0), one], [-gp, -c]])

    def jmu(x: IVector, p: IVector) -> IMatrix:
        return IMatrix([[Interval(0.0)], [-x[1]]])

    base = ParamVectorField(
        name="cubic", state_dim=2, param_dim=1,
        eval_fn=ev, jac_x_fn=jx, jac_mu_fn=jmu,
        sysid=SYS_CUBIC, kernel_par_lo=(ia.lo,), kernel_par_hi=(ia.hi,),
    )

    num, den_log2 = m.numerator, (m.denominator.bit_length() - 1)
    if m.denominator & (m.denominator - 1):
        raise ValueError("wave exponent must have power-of-two denominator")

    def T_of(x: IVector) -> Interval:
        return Interval(1.0) / pow_dyadic(x[0], num, den_log2)

    def integrand(x: IVector) -> Interval:
        return pow_dyadic(x[0], num, den_log2)

    factor = TimeScaleFactor(
        eval_fn=T_of,
        null_description="phi -> +inf (factor phi^(-m); original field degenerates at phi = 0)",
        integrand_fn=integrand,
    )

    def ev_orig(x: IVector, p: IVector) -> IVector:
        f = ev(x, p)
        T = T_of(x)
        return IVector([e * T for e in f])

    origin = ParamVectorField(
        name="cubic-original-frame", state_dim=2, param_dim=1,
        eval_fn=ev_orig, jac_x_fn=None, jac_mu_fn=None,
    )
    return DesingularizedField(base=base, factor=factor, origin_field=origin)


def quintic_wave_system(a=("0.3"), m: Fraction = Fraction(3, 4)) -> DesingularizedField:
    """Traveling-wave system with quintic reaction:
    psi' = -c psi - phi (1-phi^2)(phi^2-a^2); odd symmetry in (phi, psi)."""
    ia = _as_interval(a)
    if not (0.0 < ia.lo and ia.hi < 1.0):
        raise ValueError("a must lie in (0,1)")
    one = Interval(1.0)
    a2 = ia.sqr()

    def ev(x: IVector, p: IVector) -> IVector:
        phi, psi = x[0], x[1]
        c = p[0]
        phi2 = phi.sqr()
        return IVector([psi, -(c * psi) - phi * (one - phi2) * (phi2 - a2)])

    def jx(x: IVector, p: IVector) -> IMatrix:
        phi = x[0]
        c = p[0]
        phi2 = phi.sqr()
        # d/dphi [phi(1-phi^2)(phi^2-a^2)] = -a^2 + 3(1+a^2) phi^2 - 5 phi^4
        gp = -a2 + (one + a2) * 3 * phi2 - phi2.sqr() * 5
        return IMatrix([[Interval(0.0), one], [-gp, -c]])

    def jmu(x: IVector, p: IVector) -> IMatrix:
        return IMatrix([[Interval(0.0)], [-x[1]]])

    base = ParamVectorField(
        name="quintic", state_dim=2, param_dim=1,
        eval_fn=ev, jac_x_fn=jx, jac_mu_fn=jmu,
        sysid=SYS_QUINTIC, kernel_par_lo=(ia.lo,), kernel_par_hi=(ia.hi,),
    )

    num, den_log2 = m.numerator, (m.denominator.bit_length() - 1)

    def T_of(x: IVector) -> Interval:
        return Interval(1.0) / pow_dyadic(x[0], num, den_log2)

    def integrand(x: IVector) -> Interval:
        return pow_dyadic(x[0], num, den_log2)

    factor = TimeScaleFactor(
        eval_fn=T_of,
        null_description="phi -> +inf (factor phi^(-m); original field degenerates at phi = 0)",
        integrand_fn=integrand,
    )
    return DesingularizedField(base=base, factor=factor)


def canard_system(mu=("0.2")) -> dict:
    """Slow dynamics of the autocatalysis model on its critical manifold.

    Returns the reduced field (singular on the fold lines b = +/-1) and the
    desingularized field b' = (1+b^2)^2 (mu(5/2+c) - b),
    c' = (b - c)(1 - b^2), related by dt/dtau = 1 - b^2.
    """
    imu = _as_interval(mu)
    if not (0.0 < imu.lo and imu.hi < 1.0):
        raise ValueError("mu must lie in (0,1)")
    one = Interval(1.0)
    fivehalf = Interval(2.5)

    def ev(x: IVector, p: IVector) -> IVector:
        b, c = x[0], x[1]
        mu_ = p[0]
        b2 = b.sqr()
        quart = (one + b2).sqr()
        return IVector([
            quart * (mu_ * (fivehalf + c) - b),
            (b - c) * (one - b2),
        ])

    def jx(x: IVector, p: IVector) -> IMatrix:
        b, c = x[0], x[1]
        mu_ = p[0]
        b2 = b.sqr()
        opb2 = one + b2
        g = mu_ * (fivehalf + c) - b
        return IMatrix([
            [opb2 * b * 4 * g - opb2.sqr(), mu_ * opb2.sqr()],
            [(one - b2) - (b - c) * 2 * b, -(one - b2)],
        ])

    def jmu(x: IVector, p: IVector) -> IMatrix:
        b, c = x[0], x[1]
        b2 = b.sqr()
        return IMatrix([[(one + b2).sqr() * (fivehalf + c)], [Interval(0.0)]])

    desing_base = ParamVectorField(
        name="canard", state_dim=2, param_dim=1,
        eval_fn=ev, jac_x_fn=jx, jac_mu_fn=jmu,
        sysid=SYS_CANARD, kernel_par_lo=(), kernel_par_hi=(),
    )

    def T_of(x: IVector) -> Interval:
        return one - x[0].sqr()

    factor = TimeScaleFactor(
        eval_fn=T_of,
        null_description="fold lines {b = +1} and {b = -1} (1 - b^2 = 0)",
        integrand_fn=T_of,
    )

    def ev_reduced(x: IVector, p: IVector) -> IVector:
        f = ev(x, p)
        # db/dt = desingularized b' / (1-b^2); dc/dt = b - c exactly
        return IVector([f[0] / T_of(x), x[0] - x[1]])

    reduced = ParamVectorField(
        name="canard-reduced", state_dim=2, param_dim=1,
        eval_fn=ev_reduced, jac_x_fn=None, jac_mu_fn=None,
    )
    desing = DesingularizedField(base=desing_base, factor=factor,
                                 origin_field=reduced)
    return {"reduced": reduced, "desing": desing, "mu": imu}


def linear_field(A, name: str = "linear") -> ParamVectorField:
    """Constant-coefficient test field f(x) = A x (no parameters)."""
    Af = np.asarray(A, dtype=float)
    n = Af.shape[0]
    Ai = IMatrix([[Interval(float(Af[i, j])) for j in range(n)] for i in range(n)])

    def ev(x: IVector, p: IVector) -> IVector:
        return Ai.matvec(x)

    def jx(x: IVector, p: IVector) -> IMatrix:
        return Ai

    def jmu(x: IVector, p: IVector) -> IMatrix:
        return IMatrix([[] for _ in range(n)])

    return ParamVectorField(
        name=name, state_dim=n, param_dim=0,
        eval_fn=ev, jac_x_fn=jx, jac_mu_fn=jmu,
        sysid=SYS_LINEAR,
        kernel_par_lo=tuple(Af.flatten().tolist()),
        kernel_par_hi=tuple(Af.flatten().tolist()),
    )


def linear_desingularized(A, name: str = "linear") -> DesingularizedField:
    """Linear test field wrapped with the identity time factor."""
    base = linear_field(A, name)
    one = TimeScaleFactor(
        eval_fn=lambda x: Interval(1.0),
        null_description="empty (identity factor)",
        integrand_fn=lambda x: Interval(1.0),
    )
    return DesingularizedField(base=base, factor=one)


def by_name(name: str, **kwargs) -> DesingularizedField:
    """Look up a built-in system by its CLI identifier."""
    if name == "cubic":
        return cubic_wave_system(**kwargs)
    if name == "quintic":
        return quintic_wave_system(**kwargs)
    if name == "canard":
        return canard_system(**kwargs)["desing"]
    raise KeyError(f"unknown system {name!r}; available: cubic, quintic, canard")


def known_equilibria(name: str, a: float = 0.3, mu: float = 0.2) -> list[tuple[float, float]]:
    """Float seeds for the equilibria of the built-in desingularized systems."""
    if name == "cubic":
        return [(0.0, 0.0), (a, 0.0), (1.0, 0.0)]
    if name == "quintic":
        return [(0.0, 0.0), (a, 0.0), (-a, 0.0), (1.0, 0.0), (-1.0, 0.0)]
    if name == "canard":
        s = 5 * mu / (2 * (1 - mu))
        return [(1.0, 1.0 / mu - 2.5), (s, s)]
    raise KeyError(name)
