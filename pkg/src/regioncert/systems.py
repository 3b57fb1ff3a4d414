"""Benchmark systems and access to the bundled data files."""

from __future__ import annotations

from importlib import resources

from .polysys import PolySystem, parse_points, parse_system
from .precision import DOUBLE

__all__ = ["cyclic_terms", "cyclic", "data_path", "load_fixture"]


def cyclic_terms(n):
    """Term dictionaries of the cyclic-n system.

    ``f_l = sum_j prod_{k=j}^{j+l-1} x_{k mod n}`` for ``l < n`` and
    ``f_n = x_1 ... x_n - 1``.
    """
    polys = []
    for length in range(1, n):
        terms = {}
        for j in range(n):
            exps = [0] * n
            for k in range(j, j + length):
                exps[k % n] += 1
            terms[tuple(exps)] = 1
        polys.append(terms)
    polys.append({(1,) * n: 1, (0,) * n: -1})
    return polys


def cyclic(n, ctx=DOUBLE):
    return PolySystem.from_terms(cyclic_terms(n), ctx)


def data_path(name):
    """Filesystem path of a bundled data file (``cyclic6.sys`` etc.)."""
    return resources.files("regioncert") / "data" / name


def load_fixture(system_name, points_name=None, ctx=DOUBLE):
    """Parse a bundled system and optionally a bundled points file."""
    system = parse_system(data_path(system_name).read_text(), ctx, source=system_name)
    if points_name is None:
        return system
    points = parse_points(data_path(points_name).read_text(), system.nvars, ctx, source=points_name)
    return system, points
