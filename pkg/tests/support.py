"""Oracles and generators shared by the test modules.

Everything here is deliberately independent of the package's interval
code: exact values use ``gmpy2.mpq`` rationals (complex numbers are pairs
of them) and high-precision Newton runs on mpmath.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import mpmath
from gmpy2 import mpq

from regioncert import ComplexInterval, IntervalMatrix, IntervalVector, RealInterval
from regioncert.precision import DOUBLE

# -- exact complex rationals ------------------------------------------------

ZERO = (mpq(0), mpq(0))
ONE = (mpq(1), mpq(0))


def q(x):
    """Exact rational of a float, int, Fraction, decimal string or mpfr."""
    if isinstance(x, str):
        f = Fraction(x)
        return mpq(f.numerator, f.denominator)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        return mpq(x)
    if isinstance(x, int):
        return mpq(x)
    n, d = x.as_integer_ratio()
    return mpq(int(n), int(d))


def cq(z):
    if isinstance(z, tuple):
        return (q(z[0]), q(z[1]))
    if isinstance(z, complex):
        return (q(z.real), q(z.imag))
    if isinstance(z, (int, float, Fraction, str)):
        return (q(z), mpq(0))
    return (q(z.real), q(z.imag))


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def csub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cdiv(a, b):
    d = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d)


def cabs_sqr(a):
    return a[0] * a[0] + a[1] * a[1]


def cpow(a, k):
    out = ONE
    for _ in range(k):
        out = cmul(out, a)
    return out


# -- containment checks against exact values -------------------------------


class Bounds:
    """Exact endpoints of a real interval, converted once."""

    __slots__ = ("lo", "hi")

    def __init__(self, iv):
        self.lo = q(iv.lo)
        self.hi = q(iv.hi)

    def __contains__(self, x):
        return self.lo <= x <= self.hi


class CBounds:
    __slots__ = ("re", "im")

    def __init__(self, civ):
        self.re = Bounds(civ.re)
        self.im = Bounds(civ.im)

    def __contains__(self, z):
        return z[0] in self.re and z[1] in self.im


def sample_real(rng, iv):
    """Exact rational point of the real interval ``iv`` (endpoints included)."""
    lo, hi = q(iv.lo), q(iv.hi)
    u = rng.random()
    if u < 0.1:
        return lo
    if u < 0.2:
        return hi
    t = mpq(rng.getrandbits(30), 1 << 30)
    return lo + (hi - lo) * t


def sample_complex(rng, civ):
    return (sample_real(rng, civ.re), sample_real(rng, civ.im))


def sample_vector(rng, box):
    return [sample_complex(rng, e) for e in box.entries]


def sample_matrix(rng, m):
    return [[sample_complex(rng, e) for e in row] for row in m.rows]


# -- random intervals ---------------------------------------------------------


def random_float(rng, scale_exp=(-6, 6)):
    """Float with random sign and a magnitude spread over many decades."""
    e = rng.uniform(*scale_exp)
    v = 10.0**e * rng.choice((-1.0, 1.0))
    if rng.random() < 0.2:
        v = float(round(v * 8) / 8)  # dyadic, often exact arithmetic
    return v


def random_real_interval(rng, ctx=DOUBLE, allow_zero=True):
    mid = random_float(rng)
    u = rng.random()
    if u < 0.2:
        rad = 0.0
    elif u < 0.3 and allow_zero:
        rad = abs(mid) * rng.uniform(1.0, 3.0)  # straddles zero
    else:
        rad = abs(mid) * 10.0 ** rng.uniform(-15, -0.5)
    lo, hi = mid - rad, mid + rad
    if lo > hi:
        lo, hi = hi, lo
    if ctx is DOUBLE:
        return RealInterval(lo, hi, ctx)
    return RealInterval(ctx.down(lo), ctx.up(hi), ctx)


def random_complex_interval(rng, ctx=DOUBLE, allow_zero=True):
    re = random_real_interval(rng, ctx, allow_zero)
    im = random_real_interval(rng, ctx, allow_zero) if rng.random() < 0.8 else RealInterval.zero(ctx)
    return ComplexInterval(re, im)


def small_box(rng, centre, radius_exp=(-12, -3), ctx=DOUBLE):
    """Random interval box around a point with componentwise radii."""
    out = []
    for z in centre:
        z = complex(z)
        rr = 10.0 ** rng.uniform(*radius_exp)
        ri = 10.0 ** rng.uniform(*radius_exp)
        re = RealInterval(ctx.down(z.real - rr), ctx.up(z.real + rr), ctx)
        im = RealInterval(ctx.down(z.imag - ri), ctx.up(z.imag + ri), ctx)
        out.append(ComplexInterval(re, im))
    return IntervalVector(out)


def well_conditioned_matrix(rng, n):
    """Diagonally dominant random complex matrix (as Python complexes)."""
    rows = []
    for i in range(n):
        row = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
        row[i] += complex(n + 1, 0) * rng.choice((-1, 1))
        rows.append(row)
    return rows


def interval_matrix_around(rng, rows, rad, ctx=DOUBLE):
    out = []
    for row in rows:
        r = []
        for z in row:
            a = rad * rng.random()
            b = rad * rng.random()
            r.append(
                ComplexInterval(
                    RealInterval(ctx.down(z.real - a), ctx.up(z.real + a), ctx),
                    RealInterval(ctx.down(z.imag - b), ctx.up(z.imag + b), ctx),
                )
            )
        out.append(r)
    return IntervalMatrix(out)


# -- exact linear algebra -----------------------------------------------------


def exact_matvec(a, x):
    out = []
    for row in a:
        acc = ZERO
        for aij, xj in zip(row, x):
            acc = cadd(acc, cmul(aij, xj))
        out.append(acc)
    return out


def exact_solve(a, b):
    """Gauss-Jordan over exact complex rationals; ``None`` if singular."""
    n = len(a)
    m = [list(r) + [bi] for r, bi in zip(a, b)]
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != ZERO), None)
        if p is None:
            return None
        m[k], m[p] = m[p], m[k]
        inv = cdiv(ONE, m[k][k])
        m[k] = [cmul(v, inv) for v in m[k]]
        for i in range(n):
            if i != k and m[i][k] != ZERO:
                f = m[i][k]
                m[i] = [csub(v, cmul(f, w)) for v, w in zip(m[i], m[k])]
    return [m[i][n] for i in range(n)]


def exact_inverse(a):
    n = len(a)
    m = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(a)]
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != ZERO), None)
        if p is None:
            return None
        m[k], m[p] = m[p], m[k]
        inv = cdiv(ONE, m[k][k])
        m[k] = [cmul(v, inv) for v in m[k]]
        for i in range(n):
            if i != k and m[i][k] != ZERO:
                f = m[i][k]
                m[i] = [csub(v, cmul(f, w)) for v, w in zip(m[i], m[k])]
    return [r[n:] for r in m]


# -- exact polynomials ---------------------------------------------------------


def exact_eval(terms, x):
    """``terms`` maps exponent tuples to exact complex coefficients."""
    acc = ZERO
    for exps, c in terms.items():
        t = c
        for xj, e in zip(x, exps):
            if e:
                t = cmul(t, cpow(xj, e))
        acc = cadd(acc, t)
    return acc


def poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(i + j for i, j in zip(ea, eb))
            out[e] = cadd(out.get(e, ZERO), cmul(ca, cb))
    return {e: c for e, c in out.items() if c != ZERO}


def random_dyadic(rng, bits=4, lo=-2.0, hi=2.0):
    scale = 1 << bits
    return mpq(rng.randint(int(lo * scale), int(hi * scale)), scale)


def to_coeff(c):
    """Exact complex rational as a package coefficient ``(Fraction, Fraction)``."""
    return (Fraction(int(c[0].numerator), int(c[0].denominator)), Fraction(int(c[1].numerator), int(c[1].denominator)))


def product_system(rng, n, factors=2):
    """Random square system whose polynomials are products of linear forms.

    Every choice of one factor per polynomial gives a linear system, so all
    ``factors**n`` candidate roots are known exactly.  Coefficients are
    small complex dyadics.  Returns ``(terms_list, roots)`` with exact
    complex-rational roots (duplicate or singular choices dropped).
    """
    forms = []
    for _ in range(n):
        fs = []
        for _ in range(factors):
            const = (random_dyadic(rng), random_dyadic(rng))
            coeffs = [(random_dyadic(rng), random_dyadic(rng)) for _ in range(n)]
            fs.append((const, coeffs))
        forms.append(fs)
    terms_list = []
    for fs in forms:
        prod = {(0,) * n: ONE}
        for const, coeffs in fs:
            lin = {(0,) * n: const}
            for j, c in enumerate(coeffs):
                if c != ZERO:
                    e = [0] * n
                    e[j] = 1
                    lin[tuple(e)] = c
            prod = poly_mul(prod, lin)
        terms_list.append(prod)
    roots = []
    for choice in range_product(factors, n):
        a = [forms[i][choice[i]][1] for i in range(n)]
        b = [(-forms[i][choice[i]][0][0], -forms[i][choice[i]][0][1]) for i in range(n)]
        x = exact_solve(a, b)
        if x is not None and x not in roots:
            roots.append(x)
    return terms_list, roots


def range_product(k, n):
    if n == 0:
        yield ()
        return
    for rest in range_product(k, n - 1):
        for i in range(k):
            yield rest + (i,)


def exact_jacobian_terms(terms_list):
    n = len(terms_list)
    jac = []
    for terms in terms_list:
        row = []
        for j in range(n):
            d = {}
            for exps, c in terms.items():
                e = exps[j]
                if e:
                    new = exps[:j] + (e - 1,) + exps[j + 1 :]
                    d[new] = cadd(d.get(new, ZERO), cmul(c, (mpq(e), mpq(0))))
            row.append(d)
        jac.append(row)
    return jac


def max_root_separation_ok(roots, tol=0.05):
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            d = sum(float(cabs_sqr(csub(a, b))) for a, b in zip(roots[i], roots[j]))
            if math.sqrt(d) < tol:
                return False
    return True


def jacobian_ok(terms_list, root, min_sv=0.05):
    """Smallest singular value of the Jacobian at ``root`` is comfortably positive."""
    import numpy as np

    jac = exact_jacobian_terms(terms_list)
    m = np.array([[complex(float(v[0]), float(v[1])) for v in (exact_eval(d, root) for d in row)] for row in jac])
    return np.linalg.svd(m, compute_uv=False)[-1] > min_sv


def to_complex(z):
    return complex(float(z[0]), float(z[1]))


def terms_as_coeffs(terms_list):
    return [{e: to_coeff(c) for e, c in terms.items()} for terms in terms_list]


# -- independent cyclic-n and high-precision Newton ---------------------------


def cyclic_exact(n):
    """Cyclic-n with exact coefficients, written out independently."""
    polys = []
    for length in range(1, n):
        terms = {}
        for start in range(n):
            e = [0] * n
            for k in range(length):
                e[(start + k) % n] += 1
            terms[tuple(e)] = ONE
        polys.append(terms)
    polys.append({tuple([1] * n): ONE, tuple([0] * n): (mpq(-1), mpq(0))})
    return polys


def _mp_terms(terms):
    return [(exps, mpmath.mpc(mpmath.mpf(int(c[0].numerator)) / int(c[0].denominator),
                              mpmath.mpf(int(c[1].numerator)) / int(c[1].denominator)))
            for exps, c in terms.items()]


def _mp_eval(terms, x):
    acc = mpmath.mpc(0)
    for exps, c in terms:
        t = c
        for xj, e in zip(x, exps):
            if e:
                t *= xj**e
        acc += t
    return acc


def _mp_point(z):
    if isinstance(z, tuple):
        return mpmath.mpc(mpmath.mpf(int(z[0].numerator)) / int(z[0].denominator),
                          mpmath.mpf(int(z[1].numerator)) / int(z[1].denominator))
    return mpmath.mpc(z.real, z.imag)


def mp_newton(terms_list, start, prec=320, max_iter=80):
    """High-precision Newton iteration.

    Returns ``(limit, steps)`` where ``steps`` lists successive step norms,
    or ``(None, steps)`` when the iteration fails to converge.
    """
    n = len(terms_list)
    with mpmath.workprec(prec):
        fs = [_mp_terms(t) for t in terms_list]
        jac = [[_mp_terms(d) for d in row] for row in exact_jacobian_terms(terms_list)]
        x = [_mp_point(z) for z in start]
        steps = []
        tiny = mpmath.mpf(2) ** (-(prec - 20))
        for _ in range(max_iter):
            fv = mpmath.matrix([_mp_eval(f, x) for f in fs])
            jm = mpmath.matrix([[_mp_eval(d, x) for d in row] for row in jac])
            try:
                dx = mpmath.lu_solve(jm, fv)
            except ZeroDivisionError:
                return None, steps
            x = [x[i] - dx[i] for i in range(n)]
            s = mpmath.norm(dx)
            steps.append(s)
            if s < tiny * (1 + mpmath.norm(mpmath.matrix(x))):
                return x, steps
        return None, steps


def mp_distance(x, y):
    return float(mpmath.sqrt(sum(abs(a - b) ** 2 for a, b in zip(x, y))))


def exact_point_distance(x, y):
    """Euclidean distance between an mpmath point and an exact point."""
    return float(mpmath.sqrt(sum(abs(a - mpmath.mpc(float(b[0]), float(b[1]))) ** 2 for a, b in zip(x, y))))


def rng_for(name):
    """Deterministic per-test random stream."""
    return random.Random(name)


def dyadic_plu_matrix(rng, n, complex_entries=True):
    """Point matrix ``P^T L U`` whose pivoted elimination is exact in binary64.

    ``L`` is unit lower triangular with entries of modulus below 1 (so
    partial pivoting reproduces ``P``), ``U`` has power-of-two diagonal and
    quarter-integer entries.  Returns exact complex rationals.
    """

    def small():
        re = mpq(rng.randint(-2, 2), 4)
        im = mpq(rng.randint(-2, 2), 4) if complex_entries else mpq(0)
        return (re, im)

    low = [[ONE if i == j else (small() if j < i else ZERO) for j in range(n)] for i in range(n)]
    up = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < i:
                row.append(ZERO)
            elif j == i:
                row.append((mpq(rng.choice((-1, 1)) * 2 ** rng.randint(-1, 2)), mpq(0)))
            else:
                row.append((mpq(rng.randint(-8, 8), 4), mpq(rng.randint(-8, 8), 4) if complex_entries else mpq(0)))
        up.append(row)
    lu = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = ZERO
            for k in range(n):
                acc = cadd(acc, cmul(low[i][k], up[k][j]))
            lu[i][j] = acc
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [None] * n
    for i, p in enumerate(perm):
        rows[p] = lu[i]
    return rows


def as_point_rows(rows):
    """Exact complex rationals to Python complexes (exact for dyadics)."""
    return [[complex(float(a), float(b)) for a, b in row] for row in rows]


# -- fraction-free exact linear algebra over Gaussian integers -----------------


def _scale_to_gaussian_ints(rows):
    """Scale exact complex dyadic rows by one power of two to integer pairs."""
    den = 1
    for row in rows:
        for a, b in row:
            den = max(den, int(a.denominator), int(b.denominator))
    out = [[(int(a * den), int(b * den)) for a, b in row] for row in rows]
    return out, den


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gdiv_exact(a, p):
    n2 = p[0] * p[0] + p[1] * p[1]
    re = a[0] * p[0] + a[1] * p[1]
    im = a[1] * p[0] - a[0] * p[1]
    qr, rr = divmod(re, n2)
    qi, ri = divmod(im, n2)
    assert rr == 0 and ri == 0, "fraction-free step was not exact"
    return (qr, qi)


def fraction_free_jordan(aug, n):
    """Bareiss-style Gauss-Jordan on an ``n`` x ``(n + k)`` Gaussian-integer matrix.

    Returns ``(d, right)`` with ``A^{-1} B = right / d``, or ``None`` when
    ``A`` is singular.
    """
    m = [list(r) for r in aug]
    prev = (1, 0)
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != (0, 0)), None)
        if p is None:
            return None
        m[k], m[p] = m[p], m[k]
        piv = m[k][k]
        for i in range(n):
            if i == k:
                continue
            f = m[i][k]
            row_i, row_k = m[i], m[k]
            m[i] = [
                _gdiv_exact(
                    (piv[0] * x[0] - piv[1] * x[1] - f[0] * y[0] + f[1] * y[1],
                     piv[0] * x[1] + piv[1] * x[0] - f[0] * y[1] - f[1] * y[0]),
                    prev,
                )
                for x, y in zip(row_i, row_k)
            ]
        prev = piv
    return prev, [r[n:] for r in m]


class ScaledComplex:
    """Exact complex value ``(re + i im) / den`` with integer parts, ``den > 0``."""

    __slots__ = ("re", "im", "den")

    def __init__(self, num, d, scale=1):
        # num / d * scale  ==  num * conj(d) * scale / |d|^2
        c = _gmul(num, (d[0], -d[1]))
        self.re = c[0] * scale
        self.im = c[1] * scale
        self.den = d[0] * d[0] + d[1] * d[1]

    def within(self, bounds):
        den = self.den
        return (bounds.re.lo * den <= self.re <= bounds.re.hi * den
                and bounds.im.lo * den <= self.im <= bounds.im.hi * den)


def ff_inverse(rows):
    """Exact inverse of complex-dyadic rows as a matrix of ``ScaledComplex``."""
    n = len(rows)
    ints, den = _scale_to_gaussian_ints(rows)
    aug = [r + [(1, 0) if i == j else (0, 0) for j in range(n)] for i, r in enumerate(ints)]
    res = fraction_free_jordan(aug, n)
    if res is None:
        return None
    d, right = res
    return [[ScaledComplex(v, d, den) for v in row] for row in right]


def ff_solve(rows, rhs):
    """Exact solution of ``A x = b`` as a list of ``ScaledComplex``."""
    n = len(rows)
    ints, _ = _scale_to_gaussian_ints([list(r) + [b] for r, b in zip(rows, rhs)])
    res = fraction_free_jordan(ints, n)
    if res is None:
        return None
    d, right = res
    return [ScaledComplex(row[0], d) for row in right]
