"""Lattice simplices in dimension 4: standard form, emptiness, canonical form.

A cyclic simplex is stored in standard form: the simplex conv(0, e1..e4)
in the lattice ``D = Z^4 + Z*(1/N)(a1, a2, a3, a4)``.  It is empty exactly
when every nonzero coset representative of ``D/Z^4`` has coordinate sum
strictly greater than 1 (points on the boundary count as lattice points).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from sympy import isprime

from .exactalg import (
    GroupStructure,
    SuperLattice,
    coset_numerators,
    det,
    group_structure,
    inverse_with_denominator,
)


class DegenerateSimplexError(ValueError):
    pass


@dataclass(frozen=True)
class GeneralSimplex:
    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vs = tuple(tuple(int(x) for x in v) for v in self.vertices)
        if len(vs) != 5 or any(len(v) != 4 for v in vs):
            raise ValueError("a 4-simplex needs five vertices in Z^4")
        object.__setattr__(self, "vertices", vs)
        if self.determinant == 0:
            raise DegenerateSimplexError("vertices are affinely dependent")

    def edges(self, pivot: int = 0) -> list[list[int]]:
        o = self.vertices[pivot]
        return [[x - y for x, y in zip(v, o)]
                for i, v in enumerate(self.vertices) if i != pivot]

    @property
    def determinant(self) -> int:
        return abs(det(self.edges()))

    @classmethod
    def parse(cls, text: str) -> "GeneralSimplex":
        """Five lines of four integers; ``#`` starts a comment."""
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append(tuple(int(tok) for tok in line.split()))
        return cls(tuple(rows))

    @classmethod
    def read(cls, path: str | Path) -> "GeneralSimplex":
        return cls.parse(Path(path).read_text())


@dataclass(frozen=True)
class CyclicSimplexSpec:
    N: int
    a: tuple[int, int, int, int]

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        a = tuple(int(x) % self.N for x in self.a)
        if len(a) != 4:
            raise ValueError("need four generator residues")
        if math.gcd(self.N, *a) != 1:
            raise ValueError(f"gcd(a1..a4, N) must be 1, got {math.gcd(self.N, *a)}")
        object.__setattr__(self, "a", a)

    def lattice(self) -> SuperLattice:
        return SuperLattice.from_numerators(4, self.N, [self.a])

    def point(self, k: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(k * x % self.N, self.N) for x in self.a)

    def __str__(self) -> str:
        return f"N={self.N} a=({','.join(map(str, self.a))})"


@dataclass(frozen=True)
class NonCyclicQuotient:
    """Standard-form result when ``D/D'`` is not cyclic."""

    lattice: SuperLattice
    group: GroupStructure


@dataclass(frozen=True)
class EmptinessResult:
    empty: bool
    k: int | None = None
    point: tuple[Fraction, ...] | None = None

    def __bool__(self) -> bool:
        return self.empty


@dataclass(frozen=True)
class CanonicalForm:
    N: int
    tuple5: tuple[int, int, int, int, int]

    def spec(self) -> CyclicSimplexSpec:
        return CyclicSimplexSpec(self.N, self.tuple5[:4])

    def __str__(self) -> str:
        return f"N={self.N} ({','.join(map(str, self.tuple5))})"


def units(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [u for u in range(1, n) if math.gcd(u, n) == 1]


def to_standard_form(s: GeneralSimplex, pivot: int = 0) -> CyclicSimplexSpec | NonCyclicQuotient:
    """Move ``s`` to the standard simplex over the lattice its edges span.

    The pivot vertex goes to the origin and the remaining vertices, in
    order, to e1..e4.  In those coordinates ``Z^4`` becomes the lattice
    spanned by the rows of the inverse edge matrix.
    """
    if not 0 <= pivot < 5:
        raise ValueError("pivot must be a vertex index 0..4")
    inv, n = inverse_with_denominator(s.edges(pivot))
    lat = SuperLattice.from_numerators(4, n, inv)
    group = group_structure(lat)
    if not group.is_cyclic:
        return NonCyclicQuotient(lat, group)
    if group.order == 1:
        return CyclicSimplexSpec(1, (0, 0, 0, 0))
    order = group.order
    m = lat.denominator
    for g in lat.generators:
        if m // math.gcd(m, *g) == order:
            return CyclicSimplexSpec(order, tuple(x * order // m for x in g))
    # no single inverse row generates; combine them as the coset walk does
    for c in coset_numerators(lat):
        if m // math.gcd(m, *c) == order:
            return CyclicSimplexSpec(order, tuple(x * order // m for x in c))
    raise AssertionError("cyclic group without a generator")


def is_empty(spec: CyclicSimplexSpec) -> EmptinessResult:
    """Scan the multiples k*a/N in increasing k; the first one inside wins."""
    n, a = spec.N, spec.a
    for k in range(1, n):
        if sum(k * x % n for x in a) <= n:
            return EmptinessResult(False, k, spec.point(k))
    return EmptinessResult(True)


def is_empty_general(lat: SuperLattice) -> EmptinessResult:
    """Emptiness of the standard simplex over any finite-index superlattice.

    Works in any dimension.  ``k`` in the result is the position of the
    witness in the coset enumeration order.
    """
    m = lat.denominator
    for k, c in enumerate(coset_numerators(lat)):
        if k and sum(c) <= m:
            return EmptinessResult(False, k, tuple(Fraction(x, m) for x in c))
    return EmptinessResult(True)


def extend5(N: int, a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(x % N for x in a)
    return a + ((-sum(a)) % N,)


def canonical_tuple(N: int, t5: Sequence[int]) -> tuple[int, ...]:
    return min(tuple(sorted(u * x % N for x in t5)) for u in units(N))


def canonical_form(spec: CyclicSimplexSpec) -> CanonicalForm:
    return CanonicalForm(spec.N, canonical_tuple(spec.N, extend5(spec.N, spec.a)))


def dim5_counterexample(p: int, a: int, b: int) -> SuperLattice:
    """``Z^5 + Z(1/p)(1,-1,0,0,a) + Z(1/p)(0,0,1,-1,b)``: non-cyclic yet empty."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if a % p == 0 or b % p == 0:
        raise ValueError("p must divide neither a nor b")
    return SuperLattice.from_numerators(5, p, [(1, -1, 0, 0, a), (0, 0, 1, -1, b)])
