"""Exact lattice width of 4-simplices, with certificates.

The width of a simplex is the least spread (max - min) of an integer
functional over its vertices, minimized over nonzero functionals of the
dual lattice.  For the standard simplex the vertex values are
``0, y1, y2, y3, y4``, so a functional of spread ``W`` has every
``|y_i| <= W``: searching the box of radius ``W`` is complete.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .exactalg import dual_membership, inverse_with_denominator
from .simplexcore import CyclicSimplexSpec, GeneralSimplex


@dataclass(frozen=True)
class WidthCertificate:
    functional: tuple[int, ...]
    vertex_values: tuple[int, ...]
    optimal: bool

    def __post_init__(self):
        if not any(self.functional):
            raise ValueError("functional must be nonzero")

    @property
    def width(self) -> int:
        return max(self.vertex_values) - min(self.vertex_values)

    def as_dict(self) -> dict:
        return {"width": self.width, "functional": list(self.functional),
                "vertex_values": list(self.vertex_values), "optimal": self.optimal}


def standard_values(y: Sequence[int]) -> tuple[int, ...]:
    return (0, *map(int, y))


def spread(values: Sequence[int]) -> int:
    return max(values) - min(values)


def _sign_normalize(y: Sequence[int]) -> tuple[int, ...]:
    first = next(x for x in y if x)
    return tuple(y) if first > 0 else tuple(-x for x in y)


@lru_cache(maxsize=None)
def _shell(w: int) -> np.ndarray:
    """All y with spread of (0, y) exactly w and first nonzero entry positive, lex-sorted."""
    r = np.arange(-w, w + 1)
    grid = np.stack(np.meshgrid(r, r, r, r, indexing="ij"), axis=-1).reshape(-1, 4)
    vals = np.concatenate([np.zeros((len(grid), 1), dtype=grid.dtype), grid], axis=1)
    keep = vals.max(axis=1) - vals.min(axis=1) == w
    nz = grid != 0
    first = grid[np.arange(len(grid)), nz.argmax(axis=1)]
    keep &= nz.any(axis=1) & (first > 0)
    # meshgrid with ij indexing is already lexicographic
    return grid[keep].astype(np.int64)


def width(spec: CyclicSimplexSpec) -> WidthCertificate:
    """Optimal width certificate for the standard simplex of ``spec``.

    Upper bound: a coordinate functional e_i in the dual (spread 1), else
    ``N * e1`` (spread N).  Box radii are tried in increasing order up to
    that bound; the first radius with a dual vector is the width, and ties
    go to the lexicographically smallest functional with positive leading
    entry.
    """
    n, a = spec.N, spec.a
    lat = spec.lattice()
    upper = next(((1, tuple(int(i == j) for j in range(4))) for i in range(4) if a[i] == 0),
                 (n, (n, 0, 0, 0)))
    best = upper[1]
    a_vec = np.array(a, dtype=np.int64)
    for w in range(1, upper[0] + 1):
        cand = _shell(w)
        hits = cand[(cand @ a_vec) % n == 0]
        if len(hits):
            best = tuple(int(x) for x in hits[0])
            break
    cert = WidthCertificate(best, standard_values(best), optimal=True)
    if not dual_membership(lat, cert.functional):
        raise AssertionError(f"certificate {best} is not in the dual lattice")
    return cert


def width_general(s: GeneralSimplex) -> WidthCertificate:
    """Width over the standard dual ``Z^4`` of a simplex with integer vertices.

    Searches in value coordinates: with ``E`` the edge matrix from vertex 0,
    the values ``z = E y`` on the other vertices determine ``y = E^-1 z``,
    which must be integral.  For a fixed ``(z1, z2, z3)`` the fourth value is
    confined to within ``W`` of the window spanned by ``0, z1, z2, z3``.
    """
    edges = s.edges(0)
    inv, d = inverse_with_denominator(edges)
    # a coordinate functional has spread at most twice the largest edge entry
    limit = 2 * max(abs(x) for row in edges for x in row)
    w = 1
    while True:
        found = []
        for z3 in itertools.product(range(-w, w + 1), repeat=3):
            lo = max(0, *z3) - w
            hi = min(0, *z3) + w
            for z4 in range(lo, hi + 1):
                z = (*z3, z4)
                vals = (0, *z)
                if spread(vals) != w:
                    continue
                num = [sum(r * x for r, x in zip(row, z)) for row in inv]
                if all(x % d == 0 for x in num):
                    found.append(_sign_normalize([x // d for x in num]))
        if found:
            y = min(found)
            values = tuple(sum(a * b for a, b in zip(y, v)) for v in s.vertices)
            cert = WidthCertificate(y, values, optimal=True)
            if cert.width != w:
                raise AssertionError("recomputed spread disagrees with search radius")
            return cert
        w += 1
        if w > limit:
            raise AssertionError("width search passed a coordinate functional's spread")


def functional_from_relation(q: Sequence[int], relation: Sequence[int], j: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Integer functional on the ``j``-th projection of ``q`` (1-based) from a relation.

    The relation is first shifted so its ``j``-th entry vanishes: kept when
    that entry is 0, replaced by ``2 - r`` when it is 2, by ``r - 1`` when it
    is 1.  Dropping entry ``j`` gives ``y`` with ``y . projected(q) == 0``.
    Returns ``(y, vertex_values)`` on the standard simplex.
    """
    q = tuple(q)
    r = tuple(relation)
    if len(q) != 5 or len(r) != 5 or not 1 <= j <= 5:
        raise ValueError("need a quintuple, a 5-term relation and 1 <= j <= 5")
    if any(c not in (0, 1, 2) for c in r):
        raise ValueError(f"relation coefficients must be 0, 1 or 2: {r}")
    if sum(q) != 0 or sum(x * c for x, c in zip(q, r)) != 0:
        raise ValueError(f"{r} is not a relation of the zero-sum quintuple {q}")
    pivot = r[j - 1]
    if pivot == 2:
        r = tuple(2 - c for c in r)
    elif pivot == 1:
        r = tuple(c - 1 for c in r)
    y = r[:j - 1] + r[j:]
    return y, standard_values(y)
