"""Complex interval vectors and matrices.

Matrices use dense row storage.  ``invert`` goes through an interval LU
factorization whose eliminated entries are cancelled exactly with dual
intervals; all other entries use ordinary interval arithmetic, so the
factors enclose the LU factors of every point matrix in the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, SingularEnclosure
from .interval import ComplexInterval, RealInterval, widen
from .precision import DOUBLE

__all__ = [
    "IntervalVector",
    "IntervalMatrix",
    "LUFactors",
    "matvec",
    "matmul",
    "lu_decompose",
    "solve",
    "invert",
    "frob_mag_norm",
    "vec_mig_norm",
    "vec_mag_norm",
    "vec_radius",
    "box_distance",
    "boxes_intersect",
]


class IntervalVector:
    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = list(entries)

    @classmethod
    def from_points(cls, values, ctx=DOUBLE):
        return cls(ComplexInterval.point(v, ctx) for v in values)

    @classmethod
    def around(cls, point, radius, ctx=DOUBLE):
        """Box of the given radius around ``point`` (see :func:`widen`)."""
        return cls(widen(p, radius, ctx) for p in point)

    @classmethod
    def unit(cls, n, j, ctx=DOUBLE):
        zero = ComplexInterval.zero(ctx)
        one = ComplexInterval.one(ctx)
        return cls(one if i == j else zero for i in range(n))

    @property
    def ctx(self):
        return self.entries[0].ctx

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        return f"IntervalVector({self.entries!r})"

    def __sub__(self, other):
        _check_len(self, other)
        return IntervalVector(a - b for a, b in zip(self.entries, other.entries))

    def __add__(self, other):
        _check_len(self, other)
        return IntervalVector(a + b for a, b in zip(self.entries, other.entries))

    def contains(self, point):
        return len(point) == len(self.entries) and all(e.contains(p) for e, p in zip(self.entries, point))

    def midpoint(self):
        return [e.midpoint() for e in self.entries]

    def prepend_one(self):
        """The vector ``(1, I_1, ..., I_n)``."""
        return IntervalVector([ComplexInterval.one(self.ctx)] + self.entries)


class IntervalMatrix:
    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]

    @classmethod
    def from_points(cls, rows, ctx=DOUBLE):
        return cls([ComplexInterval.point(v, ctx) for v in row] for row in rows)

    @classmethod
    def identity(cls, n, ctx=DOUBLE):
        return cls(IntervalVector.unit(n, i, ctx).entries for i in range(n))

    @classmethod
    def diagonal(cls, entries):
        entries = list(entries)
        n = len(entries)
        zero = ComplexInterval.zero(entries[0].ctx)
        return cls([entries[i] if i == j else zero for j in range(n)] for i in range(n))

    @property
    def shape(self):
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def ctx(self):
        return self.rows[0][0].ctx

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return f"IntervalMatrix({self.rows!r})"

    def column(self, j):
        return IntervalVector(row[j] for row in self.rows)

    def contains(self, point_rows):
        return all(
            e.contains(p) for row, prow in zip(self.rows, point_rows) for e, p in zip(row, prow)
        )

    def scale_columns(self, diag):
        """``self @ diag(d)`` for a sequence ``d`` of complex intervals."""
        return IntervalMatrix([a * d for a, d in zip(row, diag)] for row in self.rows)


@dataclass(frozen=True)
class LUFactors:
    """``P @ N = L @ U`` for every point matrix ``N`` of the source.

    ``permutation[i]`` is the source row that became row ``i``.
    """

    lower: IntervalMatrix
    upper: IntervalMatrix
    permutation: list


def _check_len(a, b):
    if len(a) != len(b):
        raise DimensionMismatch(f"lengths {len(a)} and {len(b)} differ")


def _dot(row, vec, zero):
    acc = None
    for a, x in zip(row, vec):
        if a.is_zero or x.is_zero:
            continue
        t = a * x
        acc = t if acc is None else acc + t
    return zero if acc is None else acc


def matvec(m, v):
    """Enclosure of ``{N x : N in m, x in v}``."""
    nrows, ncols = m.shape
    if ncols != len(v):
        raise DimensionMismatch(f"matrix has {ncols} columns, vector has {len(v)} entries")
    zero = ComplexInterval.zero(v.ctx)
    entries = v.entries
    return IntervalVector(_dot(row, entries, zero) for row in m.rows)


def matmul(a, b):
    n, k = a.shape
    k2, m = b.shape
    if k != k2:
        raise DimensionMismatch(f"cannot multiply {n}x{k} by {k2}x{m}")
    zero = ComplexInterval.zero(a.ctx)
    cols = [[b.rows[r][j] for r in range(k)] for j in range(m)]
    return IntervalMatrix([_dot(row, col, zero) for col in cols] for row in a.rows)


def _select_pivot(a, k):
    best = None
    best_mig = None
    best_mag = None
    for i in range(k, len(a)):
        e = a[i][k]
        g = e.mig_sqr()
        if best is None or g > best_mig or (g == best_mig and e.mag_sqr() < best_mag):
            best, best_mig, best_mag = i, g, e.mag_sqr()
    if not best_mig > 0:
        raise SingularEnclosure(k)
    return best


def lu_decompose(m):
    """Interval LU factorization with partial pivoting.

    The pivot row maximizes the mignitude of the pivot-column entry, ties
    going to the smaller magnitude.  The entry being eliminated is set to
    zero through a dual interval (``a - (a * (p / p*))* = 0``) instead of
    the widened difference ordinary interval arithmetic would give.

    Raises:
        SingularEnclosure: every pivot candidate of some column contains 0.
    """
    n, ncols = m.shape
    if n != ncols:
        raise DimensionMismatch(f"LU needs a square matrix, got {n}x{ncols}")
    ctx = m.ctx
    a = [list(r) for r in m.rows]
    perm = list(range(n))
    zero = ComplexInterval.zero(ctx)
    lower = [[zero] * n for _ in range(n)]
    for k in range(n):
        p = _select_pivot(a, k)
        if p != k:
            a[k], a[p] = a[p], a[k]
            perm[k], perm[p] = perm[p], perm[k]
            lower[k], lower[p] = lower[p], lower[k]
        pivot = a[k][k]
        unit = pivot / pivot.star()
        row_k = a[k]
        for i in range(k + 1, n):
            row = a[i]
            entry = row[k]
            if entry.is_zero:
                continue
            factor = entry / pivot
            lower[i][k] = factor
            row[k] = entry - (entry * unit).star()
            for j in range(k + 1, n):
                u = row_k[j]
                if not u.is_zero:
                    row[j] = row[j] - factor * u
    one = ComplexInterval.one(ctx)
    for i in range(n):
        lower[i][i] = one
    return LUFactors(IntervalMatrix(lower), IntervalMatrix(a), perm)


def solve(factors, b):
    """Enclosure of ``{N^-1 y : N in source, y in b}`` by substitution."""
    lower = factors.lower.rows
    upper = factors.upper.rows
    n = len(lower)
    if len(b) != n:
        raise DimensionMismatch(f"system of size {n}, right-hand side of length {len(b)}")
    y = [b.entries[p] for p in factors.permutation]
    for i in range(1, n):
        row = lower[i]
        acc = y[i]
        for j in range(i):
            yj = y[j]
            lij = row[j]
            if yj.is_zero or lij.is_zero:
                continue
            acc = acc - lij * yj
        y[i] = acc
    x = [None] * n
    for i in range(n - 1, -1, -1):
        row = upper[i]
        acc = y[i]
        for j in range(i + 1, n):
            xj = x[j]
            uij = row[j]
            if xj.is_zero or uij.is_zero:
                continue
            acc = acc - uij * xj
        x[i] = acc / row[i]
    return IntervalVector(x)


def invert(m):
    """Interval matrix containing ``N^-1`` for every point matrix ``N`` in ``m``."""
    factors = lu_decompose(m)
    n = m.shape[0]
    ctx = m.ctx
    cols = [solve(factors, IntervalVector.unit(n, j, ctx)).entries for j in range(n)]
    return IntervalMatrix([cols[j][i] for j in range(n)] for i in range(n))


def frob_mag_norm(m):
    """Upper bound of the Frobenius norm over all point matrices in ``m``.

    Dominates the spectral norm of each of them.
    """
    ctx = m.ctx
    total = ctx.zero
    for row in m.rows:
        for e in row:
            total = ctx.add_up(total, e.mag_sqr())
    return ctx.sqrt_up(total)


def vec_mig_norm(v):
    """Lower bound of ``min ||x||_2`` over the box."""
    ctx = v.ctx
    total = ctx.zero
    for e in v.entries:
        total = ctx.add_down(total, e.mig_sqr())
    return ctx.sqrt_down(total)


def vec_mag_norm(v):
    """Upper bound of ``max ||x||_2`` over the box."""
    ctx = v.ctx
    total = ctx.zero
    for e in v.entries:
        total = ctx.add_up(total, e.mag_sqr())
    return ctx.sqrt_up(total)


def vec_radius(v):
    """Upper bound on the distance from ``v.midpoint()`` to any point of ``v``."""
    ctx = v.ctx
    total = ctx.zero
    for e in v.entries:
        r = e.re.radius()
        i = e.im.radius()
        total = ctx.add_up(total, ctx.add_up(ctx.mul_up(r, r), ctx.mul_up(i, i)))
    return ctx.sqrt_up(total)


def box_distance(a, b):
    """Lower bound on ``min ||x1 - x2||`` for ``x1`` in ``a``, ``x2`` in ``b``."""
    _check_len(a, b)
    return vec_mig_norm(a - b)


def boxes_intersect(a, b):
    _check_len(a, b)
    return all(x.intersects(y) for x, y in zip(a.entries, b.entries))


def real_interval_matrix(rows, ctx=DOUBLE):
    """Matrix of real intervals given as ``(lo, hi)`` pairs or numbers (test helper)."""

    def entry(x):
        if isinstance(x, tuple):
            return ComplexInterval(RealInterval.from_bounds(x[0], x[1], ctx), RealInterval.zero(ctx))
        return ComplexInterval.point(x, ctx)

    return IntervalMatrix([entry(x) for x in row] for row in rows)
