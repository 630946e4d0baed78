"""Exact integer linear algebra and finite-index superlattices of Z^d.

Matrices are plain lists of lists of Python ints, so every operation is
exact; there is no fixed-width arithmetic anywhere in this module.

Hermite normal form convention (row style, ``U @ m == H``): ``H`` is in
upper row echelon form, every pivot is positive and every entry above a
pivot lies in ``[0, pivot)``.  Rows below the rank are zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Sequence

Matrix = list[list[int]]
Vector = tuple[int, ...]


class RankError(ValueError):
    """Raised when a full-rank matrix was required."""


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse_with_denominator(m: Sequence[Sequence[int]]) -> tuple[Matrix, int]:
    """Return ``(num, d)`` with ``m^-1 == num / d`` and ``d == |det m| > 0``."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise RankError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    d = abs(det(m))
    return [[int(x * d) for x in row[n:]] for row in aug], d


def _row_combine(rows: Matrix, i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j)
    ri, rj = rows[i], rows[j]
    rows[i] = [a * x + b * y for x, y in zip(ri, rj)]
    rows[j] = [c * x + d * y for x, y in zip(ri, rj)]


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form of a full-column-rank integer matrix.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ m == H``.

    >>> hermite_normal_form([[2, 0], [1, 1]])[0]
    [[1, 1], [0, 2]]
    """
    h = [list(map(int, row)) for row in m]
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = identity(rows)
    r = 0
    for c in range(cols):
        for i in range(r + 1, rows):
            if h[i][c] == 0:
                continue
            x, y = h[r][c], h[i][c]
            g, s, t = _xgcd(x, y)
            # det [[s, t], [-y/g, x/g]] == 1
            _row_combine(h, r, i, s, t, -y // g, x // g)
            _row_combine(u, r, i, s, t, -y // g, x // g)
        if r >= rows or h[r][c] == 0:
            raise RankError("hermite_normal_form needs full column rank")
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        p = h[r][c]
        for i in range(r):
            q = h[i][c] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``(S, U, V)`` with ``U @ m @ V == S``.

    ``S`` is diagonal with non-negative entries, each dividing the next;
    zero diagonal entries come last.
    """
    s = [list(map(int, row)) for row in m]
    nr = len(s)
    nc = len(s[0]) if nr else 0
    u = identity(nr)
    v = identity(nc)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(nr, nc)):
        while True:
            nz = [(abs(s[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if s[i][j]]
            if not nz:
                return s, u, v
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = s[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = s[i][t] // p
                if q:
                    s[i] = [x - q * y for x, y in zip(s[i], s[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                dirty |= s[i][t] != 0
            for j in range(t + 1, nc):
                q = s[t][j] // p
                if q:
                    for row in s:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                dirty |= s[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if s[i][j] % p), None)
            if bad is None:
                break
            # pull the offending row in so the next pass lowers the pivot
            i = bad[0]
            s[t] = [x + y for x, y in zip(s[t], s[i])]
            u[t] = [x + y for x, y in zip(u[t], u[i])]
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return s, u, v


def lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


@dataclass(frozen=True)
class GroupStructure:
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        f = self.invariant_factors
        if any(m < 2 for m in f) or any(b % a for a, b in zip(f, f[1:])):
            raise ValueError(f"not an invariant factor chain: {f}")

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def __str__(self) -> str:
        return "trivial" if not self.invariant_factors else \
            "(" + ",".join(map(str, self.invariant_factors)) + ")"


@dataclass(frozen=True)
class SuperLattice:
    """A lattice ``D`` with ``Z^d <= D <= (1/M) Z^d``.

    ``generators`` are numerator vectors over ``denominator`` (each entry
    reduced into ``[0, M)``), kept in the order given.  ``basis`` is the
    Hermite basis of ``M*D``; equality only looks at ``(dim, M, basis)``.
    """

    dim: int
    denominator: int
    basis: tuple[Vector, ...]
    generators: tuple[Vector, ...] = field(compare=False)

    @classmethod
    def from_numerators(cls, dim: int, denominator: int,
                        numerators: Iterable[Sequence[int]] = ()) -> "SuperLattice":
        if denominator < 1:
            raise ValueError("denominator must be positive")
        nums = [tuple(int(x) % denominator for x in g) for g in numerators]
        if any(len(g) != dim for g in nums):
            raise ValueError(f"generators must have length {dim}")
        nums = [g for g in nums if any(g)]
        shrink = math.gcd(denominator, *(x for g in nums for x in g))
        m = denominator // shrink
        nums = tuple(tuple(x // shrink for x in g) for g in nums)
        return cls._build(dim, m, nums)

    @classmethod
    def _build(cls, dim: int, m: int, nums: tuple[Vector, ...]) -> "SuperLattice":
        stacked = [[m * int(i == j) for j in range(dim)] for i in range(dim)] + [list(g) for g in nums]
        h, _ = hermite_normal_form(stacked)
        return cls(dim, m, tuple(tuple(r) for r in h[:dim]), nums)

    @classmethod
    def from_rational(cls, dim: int, gens: Iterable[Sequence[Fraction | int]]) -> "SuperLattice":
        fracs = [[Fraction(x) % 1 for x in g] for g in gens]
        if any(len(g) != dim for g in fracs):
            raise ValueError(f"generators must have length {dim}")
        fracs = [g for g in fracs if any(g)]
        m = lcm(*(x.denominator for g in fracs for x in g))
        nums = tuple(tuple(int(x * m) for x in g) for g in fracs)
        return cls._build(dim, m, nums)

    @property
    def index(self) -> int:
        return self.denominator ** self.dim // math.prod(self.basis[i][i] for i in range(self.dim))


def group_structure(lat: SuperLattice) -> GroupStructure:
    """Invariant factors of ``D / Z^d``."""
    d, m = lat.dim, lat.denominator
    inv, den = inverse_with_denominator(lat.basis)
    # rows of m*I written in the Hermite basis of m*D; integral by construction
    rel = [[m * x // den for x in row] for row in inv]
    s, _, _ = smith_normal_form(rel)
    return GroupStructure(tuple(s[i][i] for i in range(d) if s[i][i] > 1))


def _generator_cosets(lat: SuperLattice) -> list[Vector]:
    # Subgroup grown generator by generator; the first generator's exponent
    # varies fastest.  Exponents that revisit a coset are cut off.
    m = lat.denominator
    cosets = [tuple([0] * lat.dim)]
    seen = {cosets[0]}
    for g in lat.generators:
        layer = cosets
        grown = list(cosets)
        while True:
            layer = [tuple((x + y) % m for x, y in zip(c, g)) for c in layer]
            if layer[0] in seen:
                break
            grown.extend(layer)
            seen.update(layer)
        cosets = grown
    return cosets


def coset_numerators(lat: SuperLattice) -> list[Vector]:
    """Coset representatives of ``D / Z^d`` as numerator vectors over ``M``."""
    cosets = _generator_cosets(lat)
    if len(cosets) != lat.index:
        raise AssertionError("coset enumeration disagrees with the lattice index")
    return cosets


def coset_representatives(lat: SuperLattice) -> Iterator[tuple[Fraction, ...]]:
    """One vector with coordinates in ``[0, 1)`` per coset, zero first."""
    m = lat.denominator
    for c in coset_numerators(lat):
        yield tuple(Fraction(x, m) for x in c)


def dual_membership(lat: SuperLattice, y: Sequence[int]) -> bool:
    """True iff ``y . g`` is an integer for every ``g`` in ``D``."""
    m = lat.denominator
    return all(sum(a * b for a, b in zip(y, g)) % m == 0 for g in lat.generators)
