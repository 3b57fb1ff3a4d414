"""Square polynomial systems with interval coefficients.

Coefficients are enclosed in intervals when they are read, so decimal
inputs that are not dyadic never lose rigor.  Evaluation over a box is
term-wise with cached coordinate powers; monomial values are shared
between all polynomials evaluated against the same box.

System file format (``#`` starts a comment, blank lines are ignored)::

    n                      # number of variables = number of polynomials
    t                      # number of terms of f_1
    e_1 ... e_n re im      # one line per term
    ...                    # repeated for f_2 .. f_n

Points file format::

    k                      # number of points
    re im                  # n lines per point
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DimensionMismatch, NonSquareSystem, ParseError, SingularJacobian
from .interval import ComplexInterval, RealInterval
from .linalg import IntervalMatrix, IntervalVector
from .precision import DOUBLE

__all__ = [
    "Polynomial",
    "PolySystem",
    "parse_system",
    "parse_points",
    "format_system",
    "eval_closure",
    "jacobian_closure",
    "bw_norm",
    "delta_matrix",
    "newton_step",
    "Evaluator",
]


class Polynomial:
    """Sparse polynomial ``sum a_nu x^nu`` with complex interval coefficients."""

    __slots__ = ("terms", "nvars", "degree")

    def __init__(self, terms, nvars):
        self.nvars = nvars
        self.terms = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise DimensionMismatch(f"exponent {exps} has {len(exps)} entries, expected {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if coeff.is_zero and not coeff.dual:
                continue
            if exps in self.terms:
                coeff = self.terms[exps] + coeff
            self.terms[exps] = coeff
        self.degree = max((sum(e) for e in self.terms), default=0)

    def __repr__(self):
        return f"Polynomial({self.terms!r}, nvars={self.nvars})"

    def __len__(self):
        return len(self.terms)

    def derivative(self, j):
        """Exact symbolic partial derivative with respect to ``x_j``."""
        out = {}
        for exps, c in self.terms.items():
            e = exps[j]
            if e == 0:
                continue
            new = exps[:j] + (e - 1,) + exps[j + 1 :]
            out[new] = c if e == 1 else c * e
        return Polynomial(out, self.nvars)

    def evaluate(self, box):
        return eval_closure(self, box)

    def coefficient_points(self, ctx):
        """Coefficient midpoints as plain complex numbers of ``ctx``."""
        return [(exps, _mid_point(c, ctx)) for exps, c in self.terms.items()]


class PolySystem:
    """``n`` polynomials in ``n`` variables plus their symbolic Jacobian."""

    def __init__(self, polys, ctx=None):
        polys = list(polys)
        if not polys:
            raise NonSquareSystem("empty system")
        nvars = polys[0].nvars
        if any(p.nvars != nvars for p in polys):
            raise DimensionMismatch("polynomials have different numbers of variables")
        if len(polys) != nvars:
            raise NonSquareSystem(f"{len(polys)} polynomials in {nvars} variables")
        self.polys = polys
        self.nvars = nvars
        self.ctx = ctx if ctx is not None else _infer_ctx(polys)
        self.degrees = [p.degree for p in polys]
        self.maxdeg = max(self.degrees)
        self.jacobian = [[p.derivative(j) for j in range(nvars)] for p in polys]

    def __repr__(self):
        return f"PolySystem(n={self.nvars}, degrees={self.degrees}, ctx={self.ctx!r})"

    def __len__(self):
        return self.nvars

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    @classmethod
    def from_terms(cls, systems, ctx=DOUBLE):
        """Build from ``[{exps: coeff, ...}, ...]`` with exact coefficients.

        Coefficients may be ints, floats, Fractions, complex numbers, decimal
        strings or ``(re, im)`` pairs; each is enclosed tightly in ``ctx``.
        """
        polys = []
        nvars = None
        for terms in systems:
            enclosed = {}
            for exps, c in terms.items():
                nvars = len(exps)
                enclosed[tuple(exps)] = ComplexInterval.point(c, ctx)
            polys.append(enclosed)
        if nvars is None:
            raise NonSquareSystem("system has no terms")
        return cls([Polynomial(t, nvars) for t in polys], ctx)


def _infer_ctx(polys):
    for p in polys:
        for c in p.terms.values():
            return c.ctx
    return DOUBLE


def _mid_point(c, ctx):
    re = c.re.midpoint()
    im = c.im.midpoint()
    if ctx.mode == "double":
        return complex(re, im)
    return ctx.complex_point(re, im)


# -- evaluation ----------------------------------------------------------


class Evaluator:
    """Caches coordinate powers and monomial values for one box."""

    def __init__(self, box):
        self.box = box
        self.ctx = box.ctx
        self.one = ComplexInterval.one(self.ctx)
        self._powers = [[self.one, x] for x in box.entries]
        self._monomials = {}

    def power(self, j, k):
        table = self._powers[j]
        while len(table) <= k:
            table.append(table[-1] * table[1])
        return table[k]

    def monomial(self, exps):
        value = self._monomials.get(exps)
        if value is None:
            value = None
            for j, e in enumerate(exps):
                if e:
                    p = self.power(j, e)
                    value = p if value is None else value * p
            if value is None:
                value = self.one
            self._monomials[exps] = value
        return value

    def poly(self, f):
        acc = None
        for exps, c in f.terms.items():
            if any(exps):
                t = c * self.monomial(exps)
            else:
                t = c
            acc = t if acc is None else acc + t
        if acc is None:
            return ComplexInterval.zero(self.ctx)
        return acc

    def system(self, system):
        return IntervalVector(self.poly(f) for f in system.polys)

    def jacobian(self, system):
        return IntervalMatrix([self.poly(d) for d in row] for row in system.jacobian)


def _check_dims(nvars, box):
    if len(box) != nvars:
        raise DimensionMismatch(f"box has {len(box)} coordinates, system has {nvars} variables")


def eval_closure(f, box, evaluator=None):
    """Interval closure of a polynomial (or system) over ``box``."""
    _check_dims(f.nvars, box)
    ev = evaluator or Evaluator(box)
    if isinstance(f, PolySystem):
        return ev.system(f)
    return ev.poly(f)


def jacobian_closure(system, box, evaluator=None):
    _check_dims(system.nvars, box)
    ev = evaluator or Evaluator(box)
    return ev.jacobian(system)


# -- norms ---------------------------------------------------------------


def bw_norm(system):
    """Upper bound on the Bombieri-Weyl norm of the system.

    Each term of a degree-``d`` polynomial contributes
    ``nu! (d - |nu|)! / d! * |a_nu|^2`` with ``|a_nu|`` bounded by the
    magnitude of its coefficient interval.
    """
    if isinstance(system, PolySystem):
        polys, ctx = system.polys, system.ctx
    else:
        polys = [system]
        ctx = _infer_ctx(polys)
    total = ctx.zero
    for f in polys:
        d = f.degree
        dfact = math.factorial(d)
        for exps, c in f.terms.items():
            weight = Fraction(
                math.prod(math.factorial(e) for e in exps) * math.factorial(d - sum(exps)), dfact
            )
            w = ctx.up(weight)
            total = ctx.add_up(total, ctx.mul_up(w, c.mag_sqr()))
    return ctx.sqrt_up(total)


def delta_matrix(system, box):
    """Diagonal enclosure of ``sqrt(d_i) * ||(1, x)||^(d_i - 1)`` over ``box``."""
    _check_dims(system.nvars, box)
    ctx = box.ctx
    lo = ctx.one
    hi = ctx.one
    for e in box.entries:
        lo = ctx.add_down(lo, e.mig_sqr())
        hi = ctx.add_up(hi, e.mag_sqr())
    norm = RealInterval(lo, hi, ctx).sqrt()
    zero = RealInterval.zero(ctx)
    diag = []
    for d in system.degrees:
        if d == 0:
            diag.append(ComplexInterval(zero, zero))
            continue
        entry = RealInterval.point(d, ctx).sqrt()
        if d != 1:
            entry = entry * norm ** (d - 1)
        diag.append(ComplexInterval(entry, zero))
    return IntervalMatrix.diagonal(diag)


# -- plain Newton ----------------------------------------------------------


def _eval_point(terms, x):
    acc = 0
    for exps, c in terms:
        t = c
        for xj, e in zip(x, exps):
            if e:
                t = t * xj**e
        acc = acc + t
    return acc


def _solve_point(a, b):
    """Gaussian elimination with partial pivoting on plain numbers."""
    n = len(a)
    a = [list(r) + [v] for r, v in zip(a, b)]
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if a[p][k] == 0:
            raise SingularJacobian(f"zero pivot in column {k}")
        a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f != 0:
                for j in range(k, n + 1):
                    a[i][j] = a[i][j] - f * a[k][j]
    x = [0] * n
    for i in range(n - 1, -1, -1):
        s = a[i][n]
        for j in range(i + 1, n):
            s = s - a[i][j] * x[j]
        x[i] = s / a[i][i]
    return x


def newton_step(system, x, ctx=None):
    """One plain-arithmetic Newton iterate ``x - JF(x)^-1 F(x)``.

    Runs at the precision of ``ctx`` (default: the system's) with
    coefficient midpoints.  Not part of the certified path.
    """
    ctx = ctx or system.ctx
    if len(x) != system.nvars:
        raise DimensionMismatch(f"point has {len(x)} coordinates, system has {system.nvars} variables")
    with ctx.plain():
        xs = [ctx.complex_point(z.real, z.imag) if ctx.mode != "double" else complex(z) for z in x]
        fvals = [_eval_point(f.coefficient_points(ctx), xs) for f in system.polys]
        jac = [[_eval_point(d.coefficient_points(ctx), xs) for d in row] for row in system.jacobian]
        dx = _solve_point(jac, fvals)
        return [a - b for a, b in zip(xs, dx)]


# -- parsing ---------------------------------------------------------------


class _Lines:
    """Iterator over ``(line_no, [(col, token), ...])`` of non-empty lines.

    ``eof`` is the line number just past the input, used for errors about
    missing data.
    """

    def __init__(self, text):
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        self._raw = text.splitlines()
        self.eof = len(self._raw) + 1
        self._it = self._scan()

    def _scan(self):
        for lineno, raw in enumerate(self._raw, start=1):
            line = raw.split("#", 1)[0]
            toks = []
            col = 0
            for part in line.split():
                col = raw.index(part, col)
                toks.append((col + 1, part))
                col += len(part)
            if toks:
                yield lineno, toks

    def __iter__(self):
        return self._it

    def __next__(self):
        return next(self._it)


def _int_token(tok, lineno, source, what, minimum=0):
    col, s = tok
    try:
        v = int(s)
    except ValueError:
        raise ParseError(f"expected {what}, got {s!r}", lineno, col, source) from None
    if v < minimum:
        raise ParseError(f"{what} must be at least {minimum}, got {v}", lineno, col, source)
    return v


def _decimal_token(tok, lineno, source):
    col, s = tok
    try:
        Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a decimal number, got {s!r}", lineno, col, source) from None
    return s


def _expect_line(lines, source, what):
    try:
        return next(lines)
    except StopIteration:
        raise ParseError(f"unexpected end of input, expected {what}", lines.eof, 1, source) from None


def parse_system(text, ctx=DOUBLE, source=None):
    """Parse the system file format into a :class:`PolySystem`.

    Raises:
        ParseError: malformed input, with line and column.
        NonSquareSystem: not as many polynomials as variables.
    """
    lines = _Lines(text)
    lineno, toks = _expect_line(lines, source, "variable count")
    if len(toks) != 1:
        raise ParseError("first line must hold only the variable count", lineno, toks[-1][0], source)
    n = _int_token(toks[0], lineno, source, "variable count", 1)
    polys = []
    for _ in range(n):
        lineno, toks = _expect_line(lines, source, "term count")
        if len(toks) != 1:
            raise ParseError("term count line must hold one integer", lineno, toks[-1][0], source)
        t = _int_token(toks[0], lineno, source, "term count")
        terms = {}
        for _ in range(t):
            lineno, toks = _expect_line(lines, source, "term")
            if len(toks) != n + 2:
                raise ParseError(
                    f"term needs {n} exponents and 2 coefficient parts, got {len(toks)} fields",
                    lineno,
                    toks[0][0],
                    source,
                )
            exps = tuple(_int_token(tk, lineno, source, "exponent") for tk in toks[:n])
            re = _decimal_token(toks[n], lineno, source)
            im = _decimal_token(toks[n + 1], lineno, source)
            coeff = ComplexInterval(RealInterval.point(re, ctx), RealInterval.point(im, ctx))
            if exps in terms:
                coeff = terms[exps] + coeff
            terms[exps] = coeff
        polys.append(Polynomial(terms, n))
    for lineno, toks in lines:
        raise NonSquareSystem(
            f"{source or '<input>'}:{lineno}: trailing data after {n} polynomials"
        )
    return PolySystem(polys, ctx)


def parse_points(text, nvars, ctx=DOUBLE, source=None):
    """Parse a points file; coordinates are rounded to nearest in ``ctx``."""
    lines = _Lines(text)
    lineno, toks = _expect_line(lines, source, "point count")
    if len(toks) != 1:
        raise ParseError("first line must hold only the point count", lineno, toks[-1][0], source)
    k = _int_token(toks[0], lineno, source, "point count")
    points = []
    for _ in range(k):
        pt = []
        for _ in range(nvars):
            lineno, toks = _expect_line(lines, source, "coordinate")
            if len(toks) != 2:
                raise ParseError(f"coordinate line needs 're im', got {len(toks)} fields", lineno, toks[0][0], source)
            re = _decimal_token(toks[0], lineno, source)
            im = _decimal_token(toks[1], lineno, source)
            pt.append(ctx.complex_point(re, im))
        points.append(pt)
    for lineno, toks in lines:
        raise ParseError(f"trailing data after {k} points", lineno, toks[0][0], source)
    return points


def format_system(terms_list):
    """Render ``[{exps: (re, im)}, ...]`` in the system file format."""
    n = len(terms_list)
    out = [str(n)]
    for terms in terms_list:
        out.append(str(len(terms)))
        for exps, c in terms.items():
            if isinstance(c, tuple):
                re, im = c
            else:
                c = complex(c)
                re, im = c.real, c.imag
            out.append(" ".join(str(e) for e in exps) + f" {_fmt(re)} {_fmt(im)}")
    return "\n".join(out) + "\n"


def _fmt(x):
    if isinstance(x, float):
        return repr(x)
    return str(x)
