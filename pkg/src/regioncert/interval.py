"""Real and complex interval arithmetic with outward rounding.

Every operation on ordinary intervals returns a superset of the exact image
set.  Intervals may additionally carry a *dual* tag (Kaucher dual ``I*``):
a dual interval has the same endpoints as ``I`` but only enters the two
cancellation identities

    I - I*  = [0, 0]
    I / I*  = [1, 1]     (0 not in I)

and their mirrored forms.  Any other use of a dual operand raises
:class:`DualMisuse`.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZeroInterval, DualMisuse, PrecisionMismatch
from .precision import DOUBLE, PrecisionContext

__all__ = [
    "RealInterval",
    "ComplexInterval",
    "Empty",
    "EMPTY",
    "real",
    "cplx",
    "mig",
    "mag",
    "contains",
    "intersects",
    "intersect",
    "hull",
    "midpoint",
    "radius",
    "widen",
]


class Empty:
    """The empty set, returned by :func:`intersect` for disjoint inputs."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY"

    def __bool__(self):
        return False


EMPTY = Empty()


def _same_ctx(a, b):
    if a.ctx is not b.ctx:
        raise PrecisionMismatch(f"operands use {a.ctx!r} and {b.ctx!r}")


class RealInterval:
    """Closed interval ``[lo, hi]`` with endpoints native to ``ctx``.

    The constructor does not validate; use :func:`real` or
    :meth:`from_bounds` to build intervals from arbitrary numbers.
    """

    __slots__ = ("lo", "hi", "ctx", "dual")

    def __init__(self, lo, hi, ctx=DOUBLE, dual=False):
        self.lo = lo
        self.hi = hi
        self.ctx = ctx
        self.dual = dual

    # -- construction --------------------------------------------------

    @classmethod
    def from_bounds(cls, lo, hi=None, ctx=DOUBLE):
        """Tightest interval containing the exact numbers ``lo`` and ``hi``."""
        if hi is None:
            hi = lo
        a = ctx.enclose(lo)[0]
        b = ctx.enclose(hi)[1]
        if not a <= b:
            raise ValueError(f"empty or invalid interval [{lo}, {hi}]")
        if a == ctx.inf or b == -ctx.inf:
            raise ValueError("interval must contain a finite number")
        return cls(a, b, ctx)

    @classmethod
    def point(cls, value, ctx=DOUBLE):
        return cls.from_bounds(value, value, ctx)

    @classmethod
    def zero(cls, ctx=DOUBLE):
        return cls(ctx.zero, ctx.zero, ctx)

    @classmethod
    def one(cls, ctx=DOUBLE):
        return cls(ctx.one, ctx.one, ctx)

    def _coerce(self, other):
        if isinstance(other, RealInterval):
            if other.ctx is not self.ctx:
                _same_ctx(self, other)
            return other
        if isinstance(other, ComplexInterval):
            return NotImplemented
        lo, hi = self.ctx.enclose(other)
        return RealInterval(lo, hi, self.ctx)

    # -- inspection ----------------------------------------------------

    def __repr__(self):
        star = "*" if self.dual else ""
        return f"[{self.lo}, {self.hi}]{star}"

    def __eq__(self, other):
        if not isinstance(other, RealInterval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi and self.dual == other.dual

    def __hash__(self):
        return hash((self.lo, self.hi, self.dual))

    def same_endpoints(self, other):
        return self.lo == other.lo and self.hi == other.hi

    @property
    def is_point(self):
        return self.lo == self.hi

    @property
    def is_zero(self):
        return self.lo == 0 and self.hi == 0

    def width(self):
        """Upper bound on ``hi - lo``."""
        return self.ctx.sub_up(self.hi, self.lo)

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def contains(self, x):
        """True if the exact number (or interval) ``x`` lies inside."""
        if isinstance(x, RealInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        fx = _exact(x)
        ctx = self.ctx
        above = self.lo == -ctx.inf or ctx.to_fraction(self.lo) <= fx
        return above and (self.hi == ctx.inf or fx <= ctx.to_fraction(self.hi))

    def __contains__(self, x):
        return self.contains(x)

    def intersects(self, other):
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other):
        lo = self.lo if self.lo >= other.lo else other.lo
        hi = self.hi if self.hi <= other.hi else other.hi
        if lo > hi:
            return EMPTY
        return RealInterval(lo, hi, self.ctx)

    def hull(self, other):
        lo = self.lo if self.lo <= other.lo else other.lo
        hi = self.hi if self.hi >= other.hi else other.hi
        return RealInterval(lo, hi, self.ctx)

    def midpoint(self):
        """A representable point ``m`` with ``[m - r, m + r]`` covering self."""
        ctx = self.ctx
        if self.lo == self.hi:
            return self.lo
        if self.lo == -ctx.inf or self.hi == ctx.inf:
            if self.lo == -ctx.inf and self.hi == ctx.inf:
                return ctx.zero
            return self.hi if self.lo == -ctx.inf else self.lo
        # halving is exact away from underflow
        m = ctx.add_down(ctx.mul_down(self.lo, 0.5), ctx.mul_down(self.hi, 0.5))
        if m < self.lo:
            m = self.lo
        elif m > self.hi:
            m = self.hi
        return m

    def radius(self):
        """Upper bound ``r`` such that ``midpoint() +- r`` encloses self."""
        ctx = self.ctx
        m = self.midpoint()
        a = ctx.sub_up(m, self.lo)
        b = ctx.sub_up(self.hi, m)
        return a if a >= b else b

    def mig(self):
        """Lower bound on the smallest ``|x|`` over the interval."""
        if self.dual:
            raise DualMisuse("mig of a dual interval")
        if self.lo > 0:
            return self.lo
        if self.hi < 0:
            return -self.hi
        return self.ctx.zero

    def mag(self):
        """Upper bound on the largest ``|x|`` over the interval."""
        if self.dual:
            raise DualMisuse("mag of a dual interval")
        a = -self.lo
        return a if a >= self.hi else self.hi

    def star(self):
        """The Kaucher dual ``I*``; ``I.star().star() == I``."""
        return RealInterval(self.lo, self.hi, self.ctx, not self.dual)

    # -- arithmetic ----------------------------------------------------

    def __neg__(self):
        return RealInterval(-self.hi, -self.lo, self.ctx, self.dual)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, RealInterval) or other.ctx is not self.ctx:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if self.dual or other.dual:
            return _kaucher_add(self, other)
        ctx = self.ctx
        return RealInterval(ctx.add_down(self.lo, other.lo), ctx.add_up(self.hi, other.hi), ctx)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RealInterval) or other.ctx is not self.ctx:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if self.dual or other.dual:
            return _kaucher_sub(self, other)
        ctx = self.ctx
        return RealInterval(ctx.sub_down(self.lo, other.hi), ctx.sub_up(self.hi, other.lo), ctx)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if not isinstance(other, RealInterval) or other.ctx is not self.ctx:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if self.dual or other.dual:
            raise DualMisuse("multiplication with a dual interval")
        ctx = self.ctx
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        if (a == 0 and b == 0) or (c == 0 and d == 0):
            return RealInterval(ctx.zero, ctx.zero, ctx)
        if a >= 0:
            if c >= 0:
                return RealInterval(ctx.mul_down(a, c), ctx.mul_up(b, d), ctx)
            if d <= 0:
                return RealInterval(ctx.mul_down(b, c), ctx.mul_up(a, d), ctx)
            return RealInterval(ctx.mul_down(b, c), ctx.mul_up(b, d), ctx)
        if b <= 0:
            if c >= 0:
                return RealInterval(ctx.mul_down(a, d), ctx.mul_up(b, c), ctx)
            if d <= 0:
                return RealInterval(ctx.mul_down(b, d), ctx.mul_up(a, c), ctx)
            return RealInterval(ctx.mul_down(a, d), ctx.mul_up(a, c), ctx)
        if c >= 0:
            return RealInterval(ctx.mul_down(a, d), ctx.mul_up(b, d), ctx)
        if d <= 0:
            return RealInterval(ctx.mul_down(b, c), ctx.mul_up(a, c), ctx)
        lo1 = ctx.mul_down(a, d)
        lo2 = ctx.mul_down(b, c)
        hi1 = ctx.mul_up(a, c)
        hi2 = ctx.mul_up(b, d)
        return RealInterval(lo1 if lo1 <= lo2 else lo2, hi1 if hi1 >= hi2 else hi2, ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RealInterval) or other.ctx is not self.ctx:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        if self.dual or other.dual:
            return _kaucher_div(self, other)
        ctx = self.ctx
        c, d = other.lo, other.hi
        if c <= 0 <= d:
            raise DivisionByZeroInterval(f"division by {other!r}")
        a, b = self.lo, self.hi
        if c > 0:
            if a >= 0:
                return RealInterval(ctx.div_down(a, d), ctx.div_up(b, c), ctx)
            if b <= 0:
                return RealInterval(ctx.div_down(a, c), ctx.div_up(b, d), ctx)
            return RealInterval(ctx.div_down(a, c), ctx.div_up(b, c), ctx)
        if a >= 0:
            return RealInterval(ctx.div_down(b, d), ctx.div_up(a, c), ctx)
        if b <= 0:
            return RealInterval(ctx.div_down(b, c), ctx.div_up(a, d), ctx)
        return RealInterval(ctx.div_down(b, d), ctx.div_up(a, d), ctx)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def sqr(self):
        """Square, tighter than ``self * self`` when 0 is inside."""
        if self.dual:
            raise DualMisuse("square of a dual interval")
        ctx = self.ctx
        a, b = self.lo, self.hi
        if a >= 0:
            return RealInterval(ctx.mul_down(a, a), ctx.mul_up(b, b), ctx)
        if b <= 0:
            return RealInterval(ctx.mul_down(b, b), ctx.mul_up(a, a), ctx)
        m = -a if -a >= b else b
        return RealInterval(ctx.zero, ctx.mul_up(m, m), ctx)

    def __pow__(self, k):
        """Integer power; negative exponents go through the reciprocal."""
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return RealInterval.one(self.ctx) / (self ** (-k))
        if k == 0:
            return RealInterval.one(self.ctx)
        if k % 2 == 0:
            half = self.sqr() if k == 2 else (self ** (k // 2)).sqr()
            return half
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def sqrt(self):
        """Square root of the nonnegative part."""
        if self.dual:
            raise DualMisuse("sqrt of a dual interval")
        if self.hi < 0:
            raise ValueError(f"sqrt of negative interval {self!r}")
        ctx = self.ctx
        return RealInterval(ctx.sqrt_down(self.lo), ctx.sqrt_up(self.hi), ctx)


def _kaucher_add(a, b):
    # I + (-I*) = [0, 0]
    if a.dual != b.dual and a.lo == -b.hi and a.hi == -b.lo:
        return RealInterval.zero(a.ctx)
    raise DualMisuse("no Kaucher rule for this addition")


def _kaucher_sub(a, b):
    if a.dual != b.dual and a.lo == b.lo and a.hi == b.hi:
        return RealInterval.zero(a.ctx)
    raise DualMisuse("no Kaucher rule for this subtraction")


def _kaucher_div(a, b):
    if a.dual != b.dual and a.lo == b.lo and a.hi == b.hi and not (a.lo <= 0 <= a.hi):
        return RealInterval.one(a.ctx)
    raise DualMisuse("no Kaucher rule for this division")


class ComplexInterval:
    """Rectangle ``re + i*im`` of two real intervals."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    @classmethod
    def from_parts(cls, re_lo, re_hi=None, im_lo=0, im_hi=None, ctx=DOUBLE):
        return cls(RealInterval.from_bounds(re_lo, re_hi, ctx), RealInterval.from_bounds(im_lo, im_hi, ctx))

    @classmethod
    def point(cls, z, ctx=DOUBLE):
        """Tightest enclosure of the exact complex number ``z``.

        ``z`` may be a Python complex, a gmpy2 ``mpc``, a real number, or a
        pair ``(re, im)`` of numbers or decimal strings.
        """
        if isinstance(z, tuple):
            re, im = z
        elif isinstance(z, (int, float, Fraction, str)):
            re, im = z, 0
        else:
            re, im = z.real, z.imag
        return cls(RealInterval.point(re, ctx), RealInterval.point(im, ctx))

    @classmethod
    def zero(cls, ctx=DOUBLE):
        return cls(RealInterval.zero(ctx), RealInterval.zero(ctx))

    @classmethod
    def one(cls, ctx=DOUBLE):
        return cls(RealInterval.one(ctx), RealInterval.zero(ctx))

    @property
    def ctx(self):
        return self.re.ctx

    def __repr__(self):
        return f"({self.re!r} + i{self.im!r})"

    def __eq__(self, other):
        if not isinstance(other, ComplexInterval):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    @property
    def dual(self):
        return self.re.dual or self.im.dual

    @property
    def is_point(self):
        return self.re.lo == self.re.hi and self.im.lo == self.im.hi

    @property
    def is_zero(self):
        re, im = self.re, self.im
        return re.lo == 0 and re.hi == 0 and im.lo == 0 and im.hi == 0

    def star(self):
        return ComplexInterval(self.re.star(), self.im.star())

    def _coerce(self, other):
        if isinstance(other, ComplexInterval):
            return other
        if isinstance(other, RealInterval):
            return ComplexInterval(other, RealInterval.zero(other.ctx))
        return ComplexInterval.point(other, self.re.ctx)

    # -- arithmetic ----------------------------------------------------

    def __neg__(self):
        return ComplexInterval(-self.re, -self.im)

    def __add__(self, other):
        if not isinstance(other, ComplexInterval):
            other = self._coerce(other)
        return ComplexInterval(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, ComplexInterval):
            other = self._coerce(other)
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ComplexInterval):
            other = self._coerce(other)
        a, b = self.re, self.im
        c, d = other.re, other.im
        if d.lo == 0 and d.hi == 0 and not d.dual:
            return ComplexInterval(a * c, b * c)
        if b.lo == 0 and b.hi == 0 and not b.dual:
            return ComplexInterval(a * c, a * d)
        return ComplexInterval(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, ComplexInterval):
            other = self._coerce(other)
        if self.dual or other.dual:
            return _kaucher_cdiv(self, other)
        a, b = self.re, self.im
        c, d = other.re, other.im
        if d.lo == 0 and d.hi == 0:
            return ComplexInterval(a / c, b / c)
        denom = c.sqr() + d.sqr()
        if denom.lo <= 0:
            raise DivisionByZeroInterval(f"division by {other!r}")
        return ComplexInterval((a * c + b * d) / denom, (b * c - a * d) / denom)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = ComplexInterval.one(self.re.ctx)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def abs_sqr(self):
        """Enclosure of ``|z|**2`` over the box, as a real interval."""
        return self.re.sqr() + self.im.sqr()

    # -- set operations ------------------------------------------------

    def mig(self):
        ctx = self.re.ctx
        r = self.re.mig()
        i = self.im.mig()
        return ctx.sqrt_down(ctx.add_down(ctx.mul_down(r, r), ctx.mul_down(i, i)))

    def mag(self):
        ctx = self.re.ctx
        r = self.re.mag()
        i = self.im.mag()
        return ctx.sqrt_up(ctx.add_up(ctx.mul_up(r, r), ctx.mul_up(i, i)))

    def mig_sqr(self):
        """Lower bound on ``min |z|**2`` without taking a square root."""
        ctx = self.re.ctx
        r = self.re.mig()
        i = self.im.mig()
        return ctx.add_down(ctx.mul_down(r, r), ctx.mul_down(i, i))

    def mag_sqr(self):
        ctx = self.re.ctx
        r = self.re.mag()
        i = self.im.mag()
        return ctx.add_up(ctx.mul_up(r, r), ctx.mul_up(i, i))

    def contains(self, z):
        if isinstance(z, ComplexInterval):
            return self.re.contains(z.re) and self.im.contains(z.im)
        if isinstance(z, tuple):
            re, im = z
        elif isinstance(z, (int, float, Fraction)):
            re, im = z, 0
        else:
            re, im = z.real, z.imag
        return self.re.contains(re) and self.im.contains(im)

    def __contains__(self, z):
        return self.contains(z)

    def intersects(self, other):
        return self.re.intersects(other.re) and self.im.intersects(other.im)

    def intersect(self, other):
        re = self.re.intersect(other.re)
        im = self.im.intersect(other.im)
        if re is EMPTY or im is EMPTY:
            return EMPTY
        return ComplexInterval(re, im)

    def hull(self, other):
        return ComplexInterval(self.re.hull(other.re), self.im.hull(other.im))

    def midpoint(self):
        """``(re, im)`` midpoint pair of context endpoints."""
        return self.re.midpoint(), self.im.midpoint()

    def radius(self):
        """Upper bound on the Euclidean radius of the rectangle."""
        ctx = self.re.ctx
        r = self.re.radius()
        i = self.im.radius()
        return ctx.sqrt_up(ctx.add_up(ctx.mul_up(r, r), ctx.mul_up(i, i)))


def _kaucher_cdiv(a, b):
    if (
        a.re.dual != b.re.dual
        and a.im.dual != b.im.dual
        and a.re.same_endpoints(b.re)
        and a.im.same_endpoints(b.im)
        and not (a.re.contains_zero() and a.im.contains_zero())
    ):
        return ComplexInterval.one(a.re.ctx)
    raise DualMisuse("no Kaucher rule for this complex division")


# -- functional surface ------------------------------------------------


def real(lo, hi=None, ctx=DOUBLE):
    """Shorthand for :meth:`RealInterval.from_bounds`."""
    return RealInterval.from_bounds(lo, hi, ctx)


def cplx(re, im=0, ctx=DOUBLE):
    """Complex interval from two bounds pairs or numbers.

    ``cplx((1, 2), (0, 0.5))`` is ``[1,2] + i[0,0.5]``; scalar arguments
    give point components.
    """

    def part(x):
        if isinstance(x, RealInterval):
            return x
        if isinstance(x, tuple):
            return RealInterval.from_bounds(x[0], x[1], ctx)
        return RealInterval.point(x, ctx)

    return ComplexInterval(part(re), part(im))


def mig(x):
    return x.mig()


def mag(x):
    return x.mag()


def _exact(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float, str)):
        return Fraction(x)
    n, d = x.as_integer_ratio()
    return Fraction(int(n), int(d))


def contains(box, x):
    return box.contains(x)


def intersects(a, b):
    return a.intersects(b)


def intersect(a, b):
    return a.intersect(b)


def hull(a, b):
    return a.hull(b)


def midpoint(x):
    return x.midpoint()


def radius(x):
    return x.radius()


def widen(p, r, ctx: PrecisionContext = DOUBLE):
    """Box of radius ``r`` around the point ``p`` in every real component.

    ``p`` is a real or complex number (or ``(re, im)`` pair) that is rounded
    to nearest in ``ctx`` first; ``r`` is rounded upward.  The box endpoints
    are rounded outward, so it always contains ``[p - r, p + r]`` in each
    component.
    """
    r_up = ctx.up(r)
    if r_up < 0:
        raise ValueError(f"negative radius {r}")
    if isinstance(p, tuple):
        re, im = p
    elif isinstance(p, (int, float, Fraction, str)):
        re, im = p, 0
    else:
        re, im = p.real, p.imag
    re = re if _is_native(re, ctx) else ctx.nearest(re)
    im = im if _is_native(im, ctx) else ctx.nearest(im)
    return ComplexInterval(
        RealInterval(ctx.sub_down(re, r_up), ctx.add_up(re, r_up), ctx),
        RealInterval(ctx.sub_down(im, r_up), ctx.add_up(im, r_up), ctx),
    )


def _is_native(x, ctx):
    if ctx.mode == "double":
        return isinstance(x, float)
    return type(x) is type(ctx.zero) and x.precision <= ctx.mantissa_bits
