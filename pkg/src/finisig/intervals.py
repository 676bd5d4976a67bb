"""Outward-rounded interval arithmetic on binary64 endpoints.

Every operation returns an interval guaranteed to contain the exact real
result for every choice of reals from the operands.  Rounding is handled by
nudging endpoints to the next representable value after each native float
operation (skipped when the operation is provably exact), which costs at most
2 ULP of over-enclosure per operation.  Elementary functions use monotone
branch endpoint evaluation with a documented 4-ULP outward slack and explicit
treatment of contained extrema; they are checked against a high-precision
oracle in the test suite, not proven bit-optimal.

All values are immutable after construction and every operation is pure, so
intervals, vectors and matrices can be shared freely across threads.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, Union

_INF = math.inf

# Outward slack, in ULPs, applied to libm-based elementary functions whose
# rounding is faithful but not proven correctly rounded.
_LIBM_SLACK = 4

ScalarLike = Union["Interval", int, float]


class IntervalError(ValueError):
    """Domain violation: division through zero, sqrt of a negative box, ..."""


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _down_n(x: float, n: int) -> float:
    for _ in range(n):
        x = math.nextafter(x, -_INF)
    return x


def _up_n(x: float, n: int) -> float:
    for _ in range(n):
        x = math.nextafter(x, _INF)
    return x


def _add_down(x: float, y: float) -> float:
    s = x + y
    if math.isinf(s):
        return s if s < 0 else math.nextafter(_INF, 0.0)
    # exact-sum test: no rounding happened iff both reconstructions hold
    if s - x == y and s - y == x:
        return s
    return _down(s)


def _add_up(x: float, y: float) -> float:
    s = x + y
    if math.isinf(s):
        return s if s > 0 else -math.nextafter(_INF, 0.0)
    if s - x == y and s - y == x:
        return s
    return _up(s)


def _is_pow2(x: float) -> bool:
    # products by 0 and by powers of two are exact (barring over/underflow)
    if x == 0.0:
        return True
    m = math.frexp(x)[0]
    return m == 0.5 or m == -0.5


def _mul_down(x: float, y: float) -> float:
    p = x * y
    if math.isinf(p):
        return p if p < 0 else math.nextafter(_INF, 0.0)
    if (_is_pow2(x) or _is_pow2(y)) and (p != 0.0 or x == 0.0 or y == 0.0):
        return p
    return _down(p)


def _mul_up(x: float, y: float) -> float:
    p = x * y
    if math.isinf(p):
        return p if p > 0 else -math.nextafter(_INF, 0.0)
    if (_is_pow2(x) or _is_pow2(y)) and (p != 0.0 or x == 0.0 or y == 0.0):
        return p
    return _up(p)


def _div_down(x: float, y: float) -> float:
    q = x / y
    if math.isinf(q):
        return q if q < 0 else math.nextafter(_INF, 0.0)
    if _is_pow2(y) and (q != 0.0 or x == 0.0):
        return q
    return _down(q)


def _div_up(x: float, y: float) -> float:
    q = x / y
    if math.isinf(q):
        return q if q > 0 else -math.nextafter(_INF, 0.0)
    if _is_pow2(y) and (q != 0.0 or x == 0.0):
        return q
    return _up(q)


class Interval:
    """Closed interval [lo, hi] of binary64 endpoints.

    The empty interval is an explicit tagged state (``Interval.empty()``);
    arithmetic never produces it silently, and arithmetic on empty
    propagates empty.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        if hi is None:
            hi = lo
        lo = float(lo)
        hi = float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise IntervalError("NaN endpoint")
        if lo > hi:
            raise IntervalError(f"inverted endpoints: lo={lo!r} > hi={hi!r}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty() -> "Interval":
        return _EMPTY

    @staticmethod
    def point(x: float) -> "Interval":
        return Interval(x, x)

    @staticmethod
    def from_midrad(mid: float, rad: float) -> "Interval":
        return Interval(_add_down(mid, -rad), _add_up(mid, rad))

    # -- predicates & scalar views ----------------------------------------

    @property
    def is_empty(self) -> bool:
        # only the tagged empty state has inverted endpoints
        return self.lo > self.hi

    def width(self) -> float:
        """hi − lo, rounded up."""
        if self.is_empty:
            return 0.0
        return _add_up(self.hi, -self.lo)

    def midpoint(self) -> float:
        if self.is_empty:
            raise IntervalError("midpoint of empty interval")
        m = 0.5 * (self.lo + self.hi)
        if not math.isfinite(m):
            m = 0.5 * self.lo + 0.5 * self.hi
        return m if self.lo <= m <= self.hi else self.lo

    def mag(self) -> float:
        """sup |x| over the interval."""
        if self.is_empty:
            return 0.0
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> float:
        """inf |x| over the interval."""
        if self.is_empty:
            return 0.0
        if self.lo > 0.0:
            return self.lo
        if self.hi < 0.0:
            return -self.hi
        return 0.0

    def contains(self, other: ScalarLike) -> bool:
        if isinstance(other, Interval):
            if other.is_empty:
                return True
            if self.is_empty:
                return False
            return self.lo <= other.lo and other.hi <= self.hi
        if self.is_empty:
            return False
        return self.lo <= other <= self.hi

    def interior_contains(self, other: "Interval") -> bool:
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        return self.lo < other.lo and other.hi < self.hi

    def strictly_positive(self) -> bool:
        return not self.is_empty and self.lo > 0.0

    def strictly_negative(self) -> bool:
        return not self.is_empty and self.hi < 0.0

    # -- set operations ----------------------------------------------------

    def hull(self, other: "Interval") -> "Interval":
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersection(self, other: "Interval") -> "Interval":
        if self.is_empty or other.is_empty:
            return _EMPTY
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            return _EMPTY
        return Interval(lo, hi)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(x: ScalarLike) -> "Interval":
        if isinstance(x, Interval):
            return x
        return Interval(float(x), float(x))

    def __add__(self, other: ScalarLike) -> "Interval":
        other = Interval._coerce(other)
        if self.is_empty or other.is_empty:
            return _EMPTY
        return Interval(_add_down(self.lo, other.lo), _add_up(self.hi, other.hi))

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        if self.is_empty:
            return _EMPTY
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: ScalarLike) -> "Interval":
        other = Interval._coerce(other)
        if self.is_empty or other.is_empty:
            return _EMPTY
        return Interval(_add_down(self.lo, -other.hi), _add_up(self.hi, -other.lo))

    def __rsub__(self, other: ScalarLike) -> "Interval":
        return Interval._coerce(other) - self

    def __mul__(self, other: ScalarLike) -> "Interval":
        other = Interval._coerce(other)
        if self.is_empty or other.is_empty:
            return _EMPTY
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(_mul_down(a, c), _mul_down(a, d), _mul_down(b, c), _mul_down(b, d))
        hi = max(_mul_up(a, c), _mul_up(a, d), _mul_up(b, c), _mul_up(b, d))
        return Interval(lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Interval":
        other = Interval._coerce(other)
        if self.is_empty or other.is_empty:
            return _EMPTY
        if other.lo <= 0.0 <= other.hi:
            raise IntervalError(
                f"division by interval containing zero: {other}"
            )
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(_div_down(a, c), _div_down(a, d), _div_down(b, c), _div_down(b, d))
        hi = max(_div_up(a, c), _div_up(a, d), _div_up(b, c), _div_up(b, d))
        return Interval(lo, hi)

    def __rtruediv__(self, other: ScalarLike) -> "Interval":
        return Interval._coerce(other) / self

    def __abs__(self) -> "Interval":
        if self.is_empty:
            return _EMPTY
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return -self
        return Interval(0.0, self.mag())

    def sqr(self) -> "Interval":
        return self.pow_int(2)

    def pow_int(self, n: int) -> "Interval":
        if self.is_empty:
            return _EMPTY
        if n == 0:
            return Interval(1.0, 1.0)
        if n < 0:
            return Interval(1.0, 1.0) / self.pow_int(-n)
        if n == 1:
            return self
        a, b = self.lo, self.hi
        if n % 2 == 1 or a >= 0.0:
            return Interval(_pow_down(a, n), _pow_up(b, n))
        if b <= 0.0:
            return Interval(_pow_down(b, n), _pow_up(a, n))
        return Interval(0.0, max(_pow_up(a, n), _pow_up(b, n)))

    def sqrt(self) -> "Interval":
        if self.is_empty:
            return _EMPTY
        if self.lo < 0.0:
            raise IntervalError(f"sqrt of interval with negative part: {self}")
        # math.sqrt is correctly rounded; 1 ULP outward is enough
        lo = max(0.0, _down(math.sqrt(self.lo)))
        hi = _up(math.sqrt(self.hi))
        return Interval(lo, hi)

    def sqrt_clip(self) -> "Interval":
        """sqrt after truncating the box at 0 (caller-requested clipping)."""
        if self.is_empty:
            return _EMPTY
        if self.hi < 0.0:
            raise IntervalError(f"sqrt_clip of entirely negative interval: {self}")
        lo = max(self.lo, 0.0)
        return Interval(lo, self.hi).sqrt()

    def arctan(self) -> "Interval":
        if self.is_empty:
            return _EMPTY
        return Interval(
            _down_n(math.atan(self.lo), _LIBM_SLACK),
            _up_n(math.atan(self.hi), _LIBM_SLACK),
        )

    def sin(self) -> "Interval":
        if self.is_empty:
            return _EMPTY
        return _sin_enclose(self.lo, self.hi)

    def cos(self) -> "Interval":
        if self.is_empty:
            return _EMPTY
        # cos x = sin(x + pi/2), evaluated directly to avoid the shift error
        return _cos_enclose(self.lo, self.hi)

    def tan(self) -> "Interval":
        if self.is_empty:
            return _EMPTY
        if _crosses_halfpi_grid(self.lo, self.hi, odd=True):
            raise IntervalError(f"tan over interval spanning a pole: {self}")
        return Interval(
            _down_n(math.tan(self.lo), _LIBM_SLACK),
            _up_n(math.tan(self.hi), _LIBM_SLACK),
        )

    # -- comparison / rendering -------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        if self.is_empty and other.is_empty:
            return True
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        if self.is_empty:
            return "Interval.empty()"
        return f"[{self.lo:.17g},{self.hi:.17g}]"

    __str__ = __repr__


_EMPTY = Interval.__new__(Interval)
object.__setattr__(_EMPTY, "lo", _INF)
object.__setattr__(_EMPTY, "hi", -_INF)


def _pow_down(x: float, n: int) -> float:
    r = 1.0
    acc = Interval.point(x)
    for _ in range(n - 1):
        acc = acc * x
    return acc.lo if n > 1 else x


def _pow_up(x: float, n: int) -> float:
    acc = Interval.point(x)
    for _ in range(n - 1):
        acc = acc * x
    return acc.hi if n > 1 else x


# pi enclosure: math.pi underestimates pi by < 1 ULP
_PI = Interval(math.pi, _up(math.pi))
_TWO_PI = _PI * 2
_HALF_PI = _PI * 0.5


def pi_interval() -> Interval:
    return _PI


def _crosses_halfpi_grid(lo: float, hi: float, odd: bool) -> bool:
    """Does [lo,hi] possibly contain (2k+1)*pi/2 (odd) or k*pi (even grid)?"""
    if hi - lo >= _TWO_PI.lo:
        return True
    # candidate integers k with (k + 1/2) pi (odd) or k pi in range
    if odd:
        k_lo = math.floor(lo / _HALF_PI.lo - 1.0)
        k_hi = math.ceil(hi / _HALF_PI.lo + 1.0)
        for k in range(k_lo, k_hi + 1):
            if k % 2 == 0:
                continue
            p = _HALF_PI * k
            if p.hi >= lo and p.lo <= hi:
                return True
        return False
    k_lo = math.floor(lo / _PI.lo - 1.0)
    k_hi = math.ceil(hi / _PI.lo + 1.0)
    for k in range(k_lo, k_hi + 1):
        p = _PI * k
        if p.hi >= lo and p.lo <= hi:
            return True
    return False


def _grid_hit(lo: float, hi: float, offset: Interval, period: Interval) -> bool:
    """Does [lo,hi] possibly contain offset + k*period for some integer k?"""
    if hi - lo >= period.lo:
        return True
    k_lo = math.floor((lo - offset.hi) / period.lo) - 1
    k_hi = math.ceil((hi - offset.lo) / period.lo) + 1
    for k in range(k_lo, k_hi + 1):
        p = offset + period * k
        if p.hi >= lo and p.lo <= hi:
            return True
    return False


def _sin_enclose(lo: float, hi: float) -> Interval:
    vals = [
        _down_n(math.sin(lo), _LIBM_SLACK),
        _up_n(math.sin(lo), _LIBM_SLACK),
        _down_n(math.sin(hi), _LIBM_SLACK),
        _up_n(math.sin(hi), _LIBM_SLACK),
    ]
    out_lo, out_hi = min(vals), max(vals)
    if _grid_hit(lo, hi, _HALF_PI, _TWO_PI):
        out_hi = 1.0
    if _grid_hit(lo, hi, -_HALF_PI, _TWO_PI):
        out_lo = -1.0
    return Interval(max(out_lo, -1.0), min(out_hi, 1.0))


def _cos_enclose(lo: float, hi: float) -> Interval:
    vals = [
        _down_n(math.cos(lo), _LIBM_SLACK),
        _up_n(math.cos(lo), _LIBM_SLACK),
        _down_n(math.cos(hi), _LIBM_SLACK),
        _up_n(math.cos(hi), _LIBM_SLACK),
    ]
    out_lo, out_hi = min(vals), max(vals)
    if _grid_hit(lo, hi, Interval(0.0), _TWO_PI):
        out_hi = 1.0
    if _grid_hit(lo, hi, _PI, _TWO_PI):
        out_lo = -1.0
    return Interval(max(out_lo, -1.0), min(out_hi, 1.0))


def pow_dyadic(x: Interval, num: int, den_log2: int) -> Interval:
    """x**(num / 2**den_log2) for x >= 0, via integer powers and square roots.

    Exp/log-free: x**(3/4) == sqrt(sqrt(x**3)), etc.  Negative boxes are
    rejected; callers clip first when a sign certificate justifies it.
    """
    if x.is_empty:
        return x
    if x.lo < 0.0:
        raise IntervalError(f"dyadic power of interval with negative part: {x}")
    r = x.pow_int(num)
    for _ in range(den_log2):
        r = r.sqrt()
    return r


def dyadic_exponent(m: float) -> tuple[int, int]:
    """Represent m exactly as num / 2**den_log2, or raise."""
    num, den = float(m).as_integer_ratio()
    if den < 1 or den & (den - 1):
        raise IntervalError(f"exponent {m} is not dyadic rational")
    return num, den.bit_length() - 1


def hull(a: Interval, b: Interval) -> Interval:
    return a.hull(b)


def intersection(a: Interval, b: Interval) -> Interval:
    return a.intersection(b)


class IVector:
    """Fixed-length vector of intervals (a box in R^n)."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[ScalarLike]):
        object.__setattr__(
            self, "entries", tuple(Interval._coerce(e) for e in entries)
        )

    def __setattr__(self, name, value):
        raise AttributeError("IVector is immutable")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Interval:
        return self.entries[i]

    @staticmethod
    def zeros(n: int) -> "IVector":
        return IVector([Interval(0.0)] * n)

    def __add__(self, other: "IVector") -> "IVector":
        _same_len(self, other)
        return IVector(a + b for a, b in zip(self, other))

    def __sub__(self, other: "IVector") -> "IVector":
        _same_len(self, other)
        return IVector(a - b for a, b in zip(self, other))

    def __neg__(self) -> "IVector":
        return IVector(-a for a in self)

    def scale(self, s: ScalarLike) -> "IVector":
        return IVector(a * s for a in self)

    def dot(self, other: "IVector") -> Interval:
        _same_len(self, other)
        acc = Interval(0.0)
        for a, b in zip(self, other):
            acc = acc + a * b
        return acc

    def hull(self, other: "IVector") -> "IVector":
        _same_len(self, other)
        return IVector(a.hull(b) for a, b in zip(self, other))

    def contains(self, other: "IVector") -> bool:
        _same_len(self, other)
        return all(a.contains(b) for a, b in zip(self, other))

    def interior_contains(self, other: "IVector") -> bool:
        _same_len(self, other)
        return all(a.interior_contains(b) for a, b in zip(self, other))

    def midpoint(self) -> list[float]:
        return [e.midpoint() for e in self.entries]

    def widths(self) -> list[float]:
        return [e.width() for e in self.entries]

    def norm_sup(self) -> Interval:
        """Enclosure of the sup norm over all point selections."""
        lo = max((e.mig() for e in self.entries), default=0.0)
        hi = max((e.mag() for e in self.entries), default=0.0)
        return Interval(lo, hi)

    def norm2_upper(self) -> float:
        """Valid upper bound of the Euclidean norm."""
        acc = Interval(0.0)
        for e in self.entries:
            m = e.mag()
            acc = acc + Interval(m) * m
        return acc.sqrt().hi

    def norm2_enclosure(self) -> Interval:
        """Enclosure of the Euclidean norm over all point selections."""
        acc_lo = Interval(0.0)
        acc_hi = Interval(0.0)
        for e in self.entries:
            acc_lo = acc_lo + Interval(e.mig()).sqr()
            acc_hi = acc_hi + Interval(e.mag()).sqr()
        return Interval(acc_lo.sqrt().lo, acc_hi.sqrt().hi)

    def __repr__(self) -> str:
        return "IVector(%s)" % ", ".join(map(str, self.entries))


def _same_len(a, b):
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")


class IMatrix:
    """Row-major grid of intervals; products enclose all member products."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[ScalarLike]]):
        rws = tuple(tuple(Interval._coerce(e) for e in row) for row in rows)
        if rws and any(len(r) != len(rws[0]) for r in rws):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rws)

    def __setattr__(self, name, value):
        raise AttributeError("IMatrix is immutable")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij: tuple[int, int]) -> Interval:
        return self.rows[ij[0]][ij[1]]

    @staticmethod
    def identity(n: int) -> "IMatrix":
        return IMatrix(
            [[Interval(1.0) if i == j else Interval(0.0) for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(r: int, c: int) -> "IMatrix":
        return IMatrix([[Interval(0.0)] * c for _ in range(r)])

    def row(self, i: int) -> IVector:
        return IVector(self.rows[i])

    def col(self, j: int) -> IVector:
        return IVector(r[j] for r in self.rows)

    def transpose(self) -> "IMatrix":
        r, c = self.shape
        return IMatrix([[self.rows[i][j] for i in range(r)] for j in range(c)])

    def __add__(self, other: "IMatrix") -> "IMatrix":
        _same_shape(self, other)
        return IMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "IMatrix") -> "IMatrix":
        _same_shape(self, other)
        return IMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def scale(self, s: ScalarLike) -> "IMatrix":
        return IMatrix([[a * s for a in row] for row in self.rows])

    def matvec(self, v: IVector) -> IVector:
        r, c = self.shape
        if len(v) != c:
            raise ValueError(f"shape mismatch: {self.shape} @ {len(v)}")
        return IVector(self.row(i).dot(v) for i in range(r))

    def matmul(self, other: "IMatrix") -> "IMatrix":
        r, k = self.shape
        k2, c = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        cols = [other.col(j) for j in range(c)]
        return IMatrix([[self.row(i).dot(cols[j]) for j in range(c)] for i in range(r)])

    def hull(self, other: "IMatrix") -> "IMatrix":
        _same_shape(self, other)
        return IMatrix(
            [[a.hull(b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def contains(self, other: "IMatrix") -> bool:
        _same_shape(self, other)
        return all(
            a.contains(b) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def midpoint(self) -> list[list[float]]:
        return [[e.midpoint() for e in row] for row in self.rows]

    def norm_sup_upper(self) -> float:
        """Upper bound of the sup (max row sum) operator norm."""
        best = 0.0
        for row in self.rows:
            acc = Interval(0.0)
            for e in row:
                acc = acc + e.mag()
            best = max(best, acc.hi)
        return best

    def norm_one_upper(self) -> float:
        return self.transpose().norm_sup_upper()

    def norm_frobenius_upper(self) -> float:
        acc = Interval(0.0)
        for row in self.rows:
            for e in row:
                acc = acc + Interval(e.mag()).sqr()
        return acc.sqrt().hi

    def norm2_upper(self) -> float:
        """Valid upper bound of the Euclidean operator norm.

        min of the Frobenius bound and sqrt(norm1 * norm_inf).
        """
        a = (Interval(self.norm_one_upper()) * self.norm_sup_upper()).sqrt().hi
        return min(a, self.norm_frobenius_upper())

    def __repr__(self) -> str:
        return "IMatrix(%s)" % "; ".join(
            ", ".join(map(str, row)) for row in self.rows
        )


def _same_shape(a: IMatrix, b: IMatrix):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


def from_float_matrix(m: Sequence[Sequence[float]]) -> IMatrix:
    return IMatrix([[Interval(float(x)) for x in row] for row in m])


def from_float_vector(v: Sequence[float]) -> IVector:
    return IVector([Interval(float(x)) for x in v])
