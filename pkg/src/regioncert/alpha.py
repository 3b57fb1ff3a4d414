"""Alpha-theory certificates over interval boxes.

For a box ``I`` the functions here upper-bound

    beta(F, I)  = max over x in I of ||JF(x)^-1 F(x)||
    gamma(F, I) <= mu(F, I) * D^(3/2) / (2 * mig||(1, I)||)
    mu(F, I)    = max(1, ||F|| * ||JF(I)^-1 Delta_F(I)||)

with ``||F||`` the Bombieri-Weyl norm and the operator norm bounded by the
Frobenius norm of entry magnitudes.  ``alpha = beta * gamma`` below
``(13 - 3 sqrt(17)) / 4`` certifies every point of the box as an
approximate zero of one common associated solution; below ``0.03`` it also
yields a uniqueness ball of radius ``1 / (20 gamma)``.

A box whose Jacobian enclosure cannot be inverted gets infinite bounds and
is reported as singular rather than raising.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import DivisionByZeroInterval, SingularEnclosure
from .linalg import (
    IntervalVector,
    box_distance,
    boxes_intersect,
    frob_mag_norm,
    invert,
    matvec,
    vec_mag_norm,
    vec_mig_norm,
    vec_radius,
)
from .polysys import Evaluator, bw_norm, delta_matrix

__all__ = [
    "CertResult",
    "PairVerdict",
    "Clustering",
    "alpha_threshold",
    "uniqueness_threshold",
    "beta_bound",
    "mu_bound",
    "gamma_bound",
    "certify_box",
    "certify_point",
    "certify_boxes",
    "classify_pair",
    "cluster_solutions",
]


def alpha_threshold(ctx):
    """``(13 - 3 sqrt(17)) / 4`` rounded down in ``ctx``."""
    root17 = ctx.sqrt_up(ctx.up(17))
    return ctx.div_down(ctx.sub_down(ctx.down(13), ctx.mul_up(ctx.up(3), root17)), ctx.up(4))


def uniqueness_threshold(ctx):
    """``0.03`` rounded down in ``ctx``."""
    return ctx.down("0.03")


@dataclass(frozen=True)
class CertResult:
    """Per-box certificate.

    All bounds are endpoints of the box's precision context.  ``center``
    and ``solution_radius`` describe a ball that contains the associated
    solution whenever ``certified`` holds.
    """

    alpha_up: object
    beta_up: object
    gamma_up: object
    mu_up: object
    certified: bool
    singular: bool
    uniqueness_radius: Optional[object] = None
    solution_radius: Optional[object] = None
    center: list = field(default_factory=list, repr=False)


class PairVerdict(enum.Enum):
    SAME = "same"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Clustering:
    """Partition of box indices by shared associated solution.

    ``clusters`` lists index groups ordered by their smallest member;
    ``verdicts[i][j]`` is the pair verdict (``SAME`` on the diagonal).
    """

    clusters: list
    verdicts: list


def _singular(ctx):
    inf = ctx.inf
    return CertResult(inf, inf, inf, inf, certified=False, singular=True)


def _interval_pieces(system, box):
    """Shared work: inverse Jacobian enclosure and the box evaluator."""
    ev = Evaluator(box)
    jac = ev.jacobian(system)
    try:
        jinv = invert(jac)
    except (SingularEnclosure, DivisionByZeroInterval):
        return ev, None
    return ev, jinv


def _beta(system, ev, jinv):
    return vec_mag_norm(matvec(jinv, ev.system(system)))


def _mu(system, box, jinv):
    ctx = box.ctx
    diag = delta_matrix(system, box)
    scaled = jinv.scale_columns([diag.rows[i][i] for i in range(system.nvars)])
    m = ctx.mul_up(bw_norm(system), frob_mag_norm(scaled))
    return m if m > ctx.one else ctx.one


def _gamma(system, box, mu):
    ctx = box.ctx
    d = system.maxdeg
    d32 = ctx.sqrt_up(ctx.up(d**3))
    lower = vec_mig_norm(box.prepend_one())
    assert lower >= 1, "mig-norm of (1, I) is at least 1"
    return ctx.div_up(ctx.mul_up(mu, d32), ctx.mul_down(ctx.down(2), lower))


def beta_bound(system, box):
    """Upper bound on the Newton step length over ``box`` (inf if singular)."""
    ev, jinv = _interval_pieces(system, box)
    if jinv is None:
        return box.ctx.inf
    return _beta(system, ev, jinv)


def mu_bound(system, box):
    _, jinv = _interval_pieces(system, box)
    if jinv is None:
        return box.ctx.inf
    return _mu(system, box, jinv)


def gamma_bound(system, box):
    _, jinv = _interval_pieces(system, box)
    if jinv is None:
        return box.ctx.inf
    return _gamma(system, box, _mu(system, box, jinv))


def certify_box(system, box):
    """Compute the certificate for every point of ``box`` at once."""
    ctx = box.ctx
    ev, jinv = _interval_pieces(system, box)
    if jinv is None:
        return _singular(ctx)
    beta = _beta(system, ev, jinv)
    mu = _mu(system, box, jinv)
    gamma = _gamma(system, box, mu)
    alpha = ctx.mul_up(beta, gamma)
    certified = alpha < alpha_threshold(ctx)
    unique = None
    if alpha < uniqueness_threshold(ctx):
        unique = ctx.div_down(ctx.one, ctx.mul_up(ctx.up(20), gamma))
    solution_radius = ctx.add_up(ctx.mul_up(ctx.up(2), beta), vec_radius(box))
    return CertResult(
        alpha_up=alpha,
        beta_up=beta,
        gamma_up=gamma,
        mu_up=mu,
        certified=certified,
        singular=False,
        uniqueness_radius=unique,
        solution_radius=solution_radius,
        center=box.midpoint(),
    )


def certify_point(system, point, radius=0, ctx=None):
    """Certify the box of ``radius`` around ``point``."""
    ctx = ctx or system.ctx
    return certify_box(system, IntervalVector.around(point, radius, ctx))


def _certify_star(args):
    return certify_box(*args)


def certify_boxes(system, boxes, jobs=1):
    """Certify many boxes; results come back in input order."""
    boxes = list(boxes)
    if jobs <= 1 or len(boxes) < 2:
        return [certify_box(system, b) for b in boxes]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_certify_star, [(system, b) for b in boxes], chunksize=max(1, len(boxes) // (4 * jobs))))


def classify_pair(system, box1, box2, r1, r2):
    """Decide whether two certified boxes share their associated solution.

    Both boxes must be certified, otherwise nothing can be said.
    """
    if not (r1.certified and r2.certified):
        return PairVerdict.UNKNOWN
    if boxes_intersect(box1, box2):
        return PairVerdict.SAME
    ctx = box1.ctx
    two = ctx.up(2)
    limit = ctx.add_up(ctx.mul_up(two, r1.beta_up), ctx.mul_up(two, r2.beta_up))
    if box_distance(box1, box2) > limit:
        return PairVerdict.DISTINCT
    return PairVerdict.UNKNOWN


def cluster_solutions(system, boxes, results):
    """Union-find over ``SAME`` verdicts of all pairs."""
    boxes = list(boxes)
    k = len(boxes)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    verdicts = [[PairVerdict.UNKNOWN] * k for _ in range(k)]
    for i in range(k):
        verdicts[i][i] = PairVerdict.SAME if results[i].certified else PairVerdict.UNKNOWN
        for j in range(i + 1, k):
            v = classify_pair(system, boxes[i], boxes[j], results[i], results[j])
            verdicts[i][j] = verdicts[j][i] = v
            if v is PairVerdict.SAME:
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    clusters = sorted(groups.values(), key=lambda g: g[0])
    return Clustering(clusters, verdicts)
