"""Digit sums over Z_p and the minima m(F) over subspaces of Z_p^n.

For ``x`` in ``Z_p`` the digit ``s(x)`` is its representative in
``{0, ..., p-1}``; ``s`` of a vector is the sum of its digits and ``m(F)``
is the least digit sum of a nonzero vector of ``F``.  The ``verify_*``
functions compare brute-force minima against the closed-form line and
plane bounds for every subspace of the given dimension.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

import numpy as np
from sympy import isprime


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True)
class FpVector:
    p: int
    entries: tuple[int, ...]

    def __post_init__(self):
        _check_prime(self.p)
        object.__setattr__(self, "entries", tuple(int(x) % self.p for x in self.entries))


@dataclass(frozen=True)
class FpSubspace:
    """Subspace of ``Z_p^n`` held by its reduced row echelon basis."""

    p: int
    n: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, p: int, vectors: Sequence[Sequence[int]]) -> "FpSubspace":
        _check_prime(p)
        rows = [[int(x) % p for x in v] for v in vectors]
        n = len(rows[0]) if rows else 0
        return cls(p, n, tuple(tuple(r) for r in _rref(rows, p)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def elements(self) -> np.ndarray:
        """All p**dim elements, zero first, as an int array."""
        coeffs = np.array(list(itertools.product(range(self.p), repeat=self.dim)), dtype=np.int64)
        if not self.dim:
            return np.zeros((1, self.n), dtype=np.int64)
        return coeffs @ np.array(self.basis, dtype=np.int64) % self.p


def _rref(rows: list[list[int]], p: int) -> list[list[int]]:
    rows = [r[:] for r in rows]
    out = []
    col = 0
    n = len(rows[0]) if rows else 0
    while rows and col < n:
        piv = next((r for r in rows if r[col]), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        inv = pow(piv[col], -1, p)
        piv = [x * inv % p for x in piv]
        rows = [[(x - r[col] * y) % p for x, y in zip(r, piv)] for r in rows]
        out = [[(x - r[col] * y) % p for x, y in zip(r, piv)] for r in out]
        out.append(piv)
        rows = [r for r in rows if any(r)]
        col += 1
    return out


def digit_sum(v: FpVector | Sequence[int], p: int | None = None) -> int:
    if isinstance(v, FpVector):
        return sum(v.entries)
    return sum(int(x) % p for x in v)


def m_of_subspace(F: FpSubspace) -> tuple[int, FpVector]:
    """Brute-force minimum of the digit sum over the nonzero elements of ``F``."""
    if F.dim == 0:
        raise ValueError("m is undefined for the zero subspace")
    els = F.elements()[1:]
    sums = els.sum(axis=1)
    i = int(sums.argmin())
    return int(sums[i]), FpVector(F.p, tuple(int(x) for x in els[i]))


def m_of_line(p: int, direction: Sequence[int]) -> int:
    """Minimum over the p-1 nonzero multiples of one direction vector."""
    return min(sum(c * x % p for x in direction) for c in range(1, p))


def echelon_subspaces(p: int, n: int, k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Each k-dimensional subspace of Z_p^n once, as its RREF basis."""
    for pivots in itertools.combinations(range(n), k):
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), x in zip(free, vals):
                rows[i][c] = x
            yield tuple(tuple(r) for r in rows)


def gaussian_binomial(n: int, k: int, p: int) -> int:
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


@dataclass
class LemmaReport:
    lemma: int
    prime: int
    subspaces_checked: int = 0
    failures: int = 0
    cases: dict[str, int] = field(default_factory=dict)
    max_m: int = 0
    witness: list[list[int]] | None = None
    failure_examples: list[dict] = field(default_factory=list)
    overlapping_cases: int = 0

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d

    def _fail(self, basis, m, case):
        self.failures += 1
        if len(self.failure_examples) < 5:
            self.failure_examples.append({"basis": [list(b) for b in basis], "m": m, "case": case})

    def _observe(self, basis, m):
        self.subspaces_checked += 1
        if self.witness is None or m > self.max_m:
            self.max_m = m
            self.witness = [list(b) for b in basis]


def verify_lemma1(p: int) -> LemmaReport:
    """Lines of Z_p^3: m = p+1 when abc != 0 and (a+b)(a+c)(b+c) = 0, else m <= p."""
    _check_prime(p)
    rep = LemmaReport(1, p)
    for (d,) in echelon_subspaces(p, 3, 1):
        a, b, c = d
        m = m_of_line(p, d)
        rep._observe((d,), m)
        if a * b * c % p and (a + b) * (a + c) * (b + c) % p == 0:
            case = "exact p+1"
            good = m == p + 1
        else:
            case = "at most p"
            good = m <= p
        rep.cases[case] = rep.cases.get(case, 0) + 1
        if not good:
            rep._fail((d,), m, case)
    return rep


def verify_lemma2(p: int) -> LemmaReport:
    """Lines of Z_p^2, p odd: m = p if a+b = 0; (p+1)/2 if (a+2b)(b+2a) = 0; else <= (p-1)/2.

    Cases are applied first-match-wins; lines satisfying both equality
    predicates are tallied in ``overlapping_cases``.
    """
    _check_prime(p)
    if p == 2:
        raise ValueError("the two-dimensional line bound needs an odd prime")
    rep = LemmaReport(2, p)
    for (d,) in echelon_subspaces(p, 2, 1):
        a, b = d
        m = m_of_line(p, d)
        rep._observe((d,), m)
        first = (a + b) % p == 0
        second = (a + 2 * b) * (b + 2 * a) % p == 0
        if first and second:
            rep.overlapping_cases += 1
        if first:
            case, good = "exact p", m == p
        elif second:
            case, good = "exact (p+1)/2", m == (p + 1) // 2
        else:
            case, good = "at most (p-1)/2", m <= (p - 1) // 2
        rep.cases[case] = rep.cases.get(case, 0) + 1
        if not good:
            rep._fail((d,), m, case)
    return rep


def plane_minima(p: int) -> Iterator[tuple[tuple[tuple[int, ...], ...], int]]:
    """``(basis, m(P))`` for every plane P of Z_p^4."""
    coeffs = np.array(list(itertools.product(range(p), repeat=2))[1:], dtype=np.int64)
    for basis in echelon_subspaces(p, 4, 2):
        els = coeffs @ np.array(basis, dtype=np.int64) % p
        yield basis, int(els.sum(axis=1).min())


def verify_lemma3(p: int) -> LemmaReport:
    """Planes of Z_p^4: m(P) <= p."""
    _check_prime(p)
    rep = LemmaReport(3, p)
    for basis, m in plane_minima(p):
        rep._observe(basis, m)
        if m > p:
            rep._fail(basis, m, "at most p")
    rep.cases["at most p"] = rep.subspaces_checked
    return rep


VERIFIERS = {1: verify_lemma1, 2: verify_lemma2, 3: verify_lemma3}
