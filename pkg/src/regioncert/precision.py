"""Endpoint arithmetic with directed rounding.

Two backends implement the same small contract: every ``*_down`` function
returns the largest representable number not above the exact result, every
``*_up`` function the smallest representable number not below it.

``DoubleContext`` uses hardware doubles.  Each operation is computed with
round-to-nearest, and an error-free transformation (TwoSum, Dekker's
TwoProduct) recovers the sign of the rounding error, so the result is only
nudged to the neighbouring double when it is actually inexact.  Exact
operations therefore stay exact, which keeps point computations on dyadic
data at zero width.  Outside the range where the transformations are
exact (huge, tiny, or non-finite values) the result is nudged
unconditionally.

``MPFRContext`` wraps a pair of gmpy2 contexts (round down / round up) at a
fixed mantissa size, in the manner of MPFI.
"""

from __future__ import annotations

import contextlib
import functools
import math
import re
from fractions import Fraction

import gmpy2

__all__ = [
    "PrecisionContext",
    "DoubleContext",
    "MPFRContext",
    "DOUBLE",
    "get_context",
    "parse_precision",
    "MIN_BITS",
]

#: Smallest mantissa size accepted by :func:`parse_precision`.
MIN_BITS = 16

_INF = math.inf
_nextafter = math.nextafter

# 2**27 + 1, Veltkamp splitting constant for binary64.
_SPLITTER = 134217729.0
# Operand and result ranges in which TwoSum/TwoProduct are exact.
_SPLIT_MAX = 2.0**995
_HUGE = 2.0**1000
_TINY = 2.0**-900
_DBL_MAX = 1.7976931348623157e308


def _product_error(a, b, p):
    """Exact value of ``a*b - p`` where ``p = fl(a*b)`` (safe range only)."""
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _fraction_to_float(fr, upward):
    f = float(fr)
    if upward:
        if Fraction(f) < fr:
            f = _nextafter(f, _INF)
    elif Fraction(f) > fr:
        f = _nextafter(f, -_INF)
    return f


class PrecisionContext:
    """Common surface of the endpoint backends.

    Attributes:
        mode: ``"double"`` or ``"arbitrary"``.
        mantissa_bits: significand size in bits (53 for doubles).
    """

    mode: str
    mantissa_bits: int
    zero: object
    one: object
    inf: object

    @property
    def spec(self):
        """The command-line spelling of this context."""
        return "double" if self.mode == "double" else f"bits:{self.mantissa_bits}"

    def __repr__(self):
        return f"{type(self).__name__}({self.spec!r})"

    def __reduce__(self):
        return (get_context, (self.spec,))

    def enclose(self, value):
        """Return ``(lo, hi)``, the tightest representable bracket of ``value``.

        ``value`` may be an int, float, Fraction, decimal string, or an
        endpoint of this context.
        """
        if isinstance(value, str):
            return self._enclose_str(value.strip())
        if isinstance(value, float):
            return self._enclose_fraction(Fraction(value)) if not math.isinf(value) else (value, value)
        if isinstance(value, int):
            return self._enclose_int(value)
        if isinstance(value, Fraction):
            return self._enclose_fraction(value)
        return self._enclose_fraction(self.to_fraction(value))

    def down(self, value):
        return self.enclose(value)[0]

    def up(self, value):
        return self.enclose(value)[1]

    def to_float_up(self, x):
        """Smallest double not below endpoint ``x``."""
        if x == _INF or x == -_INF:
            return float(x)
        return _fraction_to_float(self.to_fraction(x), True)

    def to_float_down(self, x):
        if x == _INF or x == -_INF:
            return float(x)
        return _fraction_to_float(self.to_fraction(x), False)

    def is_finite(self, x):
        return x - x == 0


class DoubleContext(PrecisionContext):
    """Hardware binary64 endpoints."""

    mode = "double"
    mantissa_bits = 53
    zero = 0.0
    one = 1.0
    inf = _INF

    # -- conversions ---------------------------------------------------

    def _enclose_fraction(self, fr):
        f = float(fr)
        exact = Fraction(f)
        if exact == fr:
            return f, f
        if exact < fr:
            return f, _nextafter(f, _INF)
        return _nextafter(f, -_INF), f

    def _enclose_int(self, n):
        if -9007199254740992 <= n <= 9007199254740992:
            f = float(n)
            return f, f
        return self._enclose_fraction(Fraction(n))

    def _enclose_str(self, s):
        return self._enclose_fraction(Fraction(s))

    def nearest(self, value):
        """Round-to-nearest conversion (for candidate points, not enclosures)."""
        if isinstance(value, str):
            return float(value)
        return float(value)

    def to_fraction(self, x):
        return Fraction(x)

    def complex_point(self, re, im):
        return complex(self.nearest(re), self.nearest(im))

    def plain(self):
        """Context manager under which plain (non-interval) arithmetic runs."""
        return contextlib.nullcontext()

    # -- directed operations -------------------------------------------

    @staticmethod
    def _inexact(s, finite_inputs, upward):
        # s is inf or nan
        if s != s:
            return _INF if upward else -_INF
        if not finite_inputs:
            return s
        # overflow from finite operands: the exact value is finite
        if s > 0:
            return s if upward else _DBL_MAX
        return -_DBL_MAX if upward else s

    def add_down(self, a, b):
        s = a + b
        if s - s != 0:
            return self._inexact(s, a - a == 0 and b - b == 0, False)
        bb = s - a
        if (a - (s - bb)) + (b - bb) < 0:
            return _nextafter(s, -_INF)
        return s

    def add_up(self, a, b):
        s = a + b
        if s - s != 0:
            return self._inexact(s, a - a == 0 and b - b == 0, True)
        bb = s - a
        if (a - (s - bb)) + (b - bb) > 0:
            return _nextafter(s, _INF)
        return s

    def sub_down(self, a, b):
        return self.add_down(a, -b)

    def sub_up(self, a, b):
        return self.add_up(a, -b)

    def _mul_edge(self, a, b, p, upward):
        if a == 0 or b == 0:
            return 0.0
        if p - p != 0:
            return self._inexact(p, a - a == 0 and b - b == 0, upward)
        if p == 0:
            # underflow to zero of a nonzero product
            negative = (a < 0) != (b < 0)
            if upward:
                return 0.0 if negative else 5e-324
            return -5e-324 if negative else 0.0
        return _nextafter(p, _INF if upward else -_INF)

    # mul_down/mul_up inline the TwoProduct error; they dominate run time.

    def mul_down(self, a, b):
        p = a * b
        if (_TINY < p < _HUGE or -_HUGE < p < -_TINY) and (
            -_SPLIT_MAX < a < _SPLIT_MAX and -_SPLIT_MAX < b < _SPLIT_MAX
        ):
            t = _SPLITTER * a
            ah = t - (t - a)
            al = a - ah
            t = _SPLITTER * b
            bh = t - (t - b)
            bl = b - bh
            if ((ah * bh - p) + ah * bl + al * bh) + al * bl < 0:
                return _nextafter(p, -_INF)
            return p
        return self._mul_edge(a, b, p, False)

    def mul_up(self, a, b):
        p = a * b
        if (_TINY < p < _HUGE or -_HUGE < p < -_TINY) and (
            -_SPLIT_MAX < a < _SPLIT_MAX and -_SPLIT_MAX < b < _SPLIT_MAX
        ):
            t = _SPLITTER * a
            ah = t - (t - a)
            al = a - ah
            t = _SPLITTER * b
            bh = t - (t - b)
            bl = b - bh
            if ((ah * bh - p) + ah * bl + al * bh) + al * bl > 0:
                return _nextafter(p, _INF)
            return p
        return self._mul_edge(a, b, p, True)

    def _div(self, a, b, upward):
        q = a / b
        aq = abs(q)
        aa = abs(a)
        ab = abs(b)
        # q and b are split in TwoProduct, so both must stay below _SPLIT_MAX
        if _TINY < aq < _SPLIT_MAX and _TINY < aa < _HUGE and _TINY < ab < _SPLIT_MAX:
            p = q * b
            r = (a - p) - _product_error(q, b, p)
            if r == 0:
                return q
            # sign of (a/b - q) is sign(r) * sign(b)
            above = (r > 0) == (b > 0)
            if upward:
                return _nextafter(q, _INF) if above else q
            return q if above else _nextafter(q, -_INF)
        if a == 0:
            return 0.0
        if b == _INF or b == -_INF:
            if a - a == 0:
                return 0.0
            return _INF if upward else -_INF
        if q - q != 0:
            return self._inexact(q, a - a == 0, upward)
        if q == 0:
            negative = (a < 0) != (b < 0)
            if upward:
                return 0.0 if negative else 5e-324
            return -5e-324 if negative else 0.0
        return _nextafter(q, _INF if upward else -_INF)

    def div_down(self, a, b):
        return self._div(a, b, False)

    def div_up(self, a, b):
        return self._div(a, b, True)

    def _sqrt(self, x, upward):
        if x <= 0:
            return 0.0
        if x == _INF:
            return _INF
        s = math.sqrt(x)
        if _TINY < x < _HUGE:
            p = s * s
            d = (p - x) + _product_error(s, s, p)  # s*s - x, sign exact
            if d == 0:
                return s
            if upward:
                return s if d > 0 else _nextafter(s, _INF)
            return _nextafter(s, -_INF) if d > 0 else s
        return _nextafter(s, _INF if upward else -_INF)

    def sqrt_down(self, x):
        return self._sqrt(x, False)

    def sqrt_up(self, x):
        return self._sqrt(x, True)


class MPFRContext(PrecisionContext):
    """Arbitrary-precision endpoints at a fixed mantissa size."""

    mode = "arbitrary"

    def __init__(self, bits):
        if bits < 2:
            raise ValueError(f"mantissa bits must be at least 2, got {bits}")
        self.mantissa_bits = bits
        self._down = gmpy2.context(precision=bits, round=gmpy2.RoundDown)
        self._up = gmpy2.context(precision=bits, round=gmpy2.RoundUp)
        self._near = gmpy2.context(precision=bits)
        self.zero = gmpy2.mpfr(0, bits)
        self.one = gmpy2.mpfr(1, bits)
        self.inf = gmpy2.inf()
        # Bound methods of the gmpy2 contexts are the directed operations.
        self.add_down = self._down.add
        self.add_up = self._up.add
        self.sub_down = self._down.sub
        self.sub_up = self._up.sub
        self.mul_down = self._down.mul
        self.mul_up = self._up.mul
        self.div_down = self._down.div
        self.div_up = self._up.div

    def sqrt_down(self, x):
        if x <= 0:
            return self.zero
        return self._down.sqrt(x)

    def sqrt_up(self, x):
        if x <= 0:
            return self.zero
        return self._up.sqrt(x)

    def _enclose_fraction(self, fr):
        return (gmpy2.mpfr(fr, context=self._down), gmpy2.mpfr(fr, context=self._up))

    def _enclose_int(self, n):
        return self._enclose_fraction(Fraction(n))

    def _enclose_str(self, s):
        return (gmpy2.mpfr(s, context=self._down), gmpy2.mpfr(s, context=self._up))

    def nearest(self, value):
        if isinstance(value, Fraction):
            return gmpy2.mpfr(value, context=self._near)
        return gmpy2.mpfr(value, context=self._near)

    def to_fraction(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        # as_integer_ratio is exact; converting through mpfr() would round
        n, d = x.as_integer_ratio()
        return Fraction(int(n), int(d))

    def complex_point(self, re, im):
        return gmpy2.mpc(self.nearest(re), self.nearest(im))

    def plain(self):
        return gmpy2.context(self._near)

    def is_finite(self, x):
        return gmpy2.is_finite(x)


DOUBLE = DoubleContext()


@functools.lru_cache(maxsize=None)
def _mpfr_context(bits):
    return MPFRContext(bits)


def get_context(spec="double"):
    """Return the shared context for ``"double"`` or ``"bits:N"``.

    Contexts are cached so that identity comparison works across calls.
    """
    if isinstance(spec, PrecisionContext):
        return spec
    if isinstance(spec, int):
        return _mpfr_context(spec)
    text = spec.strip().lower()
    if text == "double":
        return DOUBLE
    m = re.fullmatch(r"bits:(\d+)", text)
    if not m:
        raise ValueError(f"precision must be 'double' or 'bits:N', got {spec!r}")
    return _mpfr_context(int(m.group(1)))


def parse_precision(spec):
    """Like :func:`get_context` but enforces ``MIN_BITS`` (CLI validation)."""
    ctx = get_context(spec)
    if ctx.mode == "arbitrary" and ctx.mantissa_bits < MIN_BITS:
        raise ValueError(f"precision below {MIN_BITS} bits is not supported: {spec!r}")
    return ctx
