"""Stable quintuples, their projections to cyclic 4-simplices, and width bounds.

A zero-sum quintuple ``q`` and a projection index ``j`` give the cyclic
simplex generated by ``(k/n) * q`` with coordinate ``j`` dropped.  Any
relation ``r`` of ``q`` with coefficients in {0, 1, 2} yields, via
:func:`functional_from_relation`, a dual functional of spread at most 2.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterator, Sequence

from sympy import isprime

from .exactalg import SuperLattice, dual_membership, group_structure
from .fpdigits import echelon_subspaces, verify_lemma3
from .simplexcore import CyclicSimplexSpec, is_empty, is_empty_general, units
from .widthcalc import WidthCertificate, functional_from_relation, spread, width

PARAMETRIC_RELATIONS = {
    "i": ((1, 1, 0, 0, 0),),
    "ii": ((2, 1, 0, 0, 0), (0, 0, 2, 1, 0)),
}


@dataclass(frozen=True)
class Quintuple:
    entries: tuple[int, ...]
    relations: tuple[tuple[int, ...], ...]
    ident: str = ""


@dataclass
class QuintupleReport:
    entries: list[int]
    sum_zero: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.sum_zero and not self.failures


def verify_quintuple(q: Quintuple) -> QuintupleReport:
    rep = QuintupleReport(list(q.entries), sum(q.entries) == 0)
    if len(q.entries) != 5:
        rep.failures.append("quintuple must have five entries")
    if not q.relations:
        rep.failures.append("no relations listed")
    for r in q.relations:
        if len(r) != 5 or any(c not in (0, 1, 2) for c in r):
            rep.failures.append(f"{r}: coefficients outside {{0,1,2}}")
        dot = sum(a * b for a, b in zip(q.entries, r))
        if dot:
            rep.failures.append(f"{r}: dot product {dot} != 0")
    return rep


def parse_table(text: str) -> list[Quintuple]:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, tail = line.partition("|")
        entries = tuple(int(x) for x in head.split())
        rels = tuple(tuple(int(x) for x in r.split(",")) for r in tail.split(";") if r.strip())
        rows.append(Quintuple(entries, rels, f"T{len(rows) + 1}"))
    return rows


@lru_cache(maxsize=1)
def load_table() -> tuple[Quintuple, ...]:
    text = resources.files("simplexlab").joinpath("data/mmm_table.txt").read_text()
    rows = parse_table(text)
    bad = [(q.ident, verify_quintuple(q).failures) for q in rows if not verify_quintuple(q).ok]
    if bad or len(rows) != 29:
        raise RuntimeError(f"quintuple table failed validation: {len(rows)} rows, {bad}")
    return tuple(rows)


def table_row(ident: str) -> Quintuple:
    return next(q for q in load_table() if q.ident == ident)


@dataclass(frozen=True)
class FamilyInstance:
    source: str  # "T1".."T29", "i" or "ii"
    j: int
    params: tuple[int, ...]  # (k, n) for table rows; (x, y[, z], n) for parametric ones
    vector: tuple[int, ...]  # the integer 5-vector before projection
    spec: CyclicSimplexSpec

    def label(self) -> str:
        if self.source.startswith("T"):
            k, n = self.params
            return f"{self.source}:j={self.j}:k={k}"
        names = "xyz"[: len(self.params) - 1]
        return f"{self.source}:j={self.j}:" + ",".join(f"{c}={v}" for c, v in zip(names, self.params))


def _project(vector: Sequence[int], j: int) -> tuple[int, ...]:
    if not 1 <= j <= 5:
        raise ValueError("projection index j must be in 1..5")
    return tuple(vector[:j - 1]) + tuple(vector[j:])


def _spec_from(projected: Sequence[int], n: int) -> CyclicSimplexSpec:
    gen = tuple(x % n for x in projected)
    if math.gcd(n, *gen) != 1:
        raise ValueError(f"degenerate generator {gen} mod {n}")
    return CyclicSimplexSpec(n, gen)


def instantiate(q: Quintuple, j: int, k: int, n: int) -> FamilyInstance:
    if n < 1:
        raise ValueError("n must be positive")
    if math.gcd(k, n) != 1:
        raise ValueError(f"k={k} and n={n} are not coprime")
    spec = _spec_from([k * x for x in _project(q.entries, j)], n)
    return FamilyInstance(q.ident, j, (k, n), tuple(q.entries), spec)


def parametric_vector(tag: str, params: Sequence[int]) -> tuple[int, ...]:
    if tag == "i":
        x, y, z = params
        return (x, -x, y, z, -y - z)
    if tag == "ii":
        x, y = params
        return (x, -2 * x, y, -2 * y, x + y)
    raise ValueError(f"unknown family {tag!r}")


def family_parametric(tag: str, params: Sequence[int], n: int, j: int) -> FamilyInstance:
    """Numerators ``params`` over the common denominator ``n``."""
    vec = parametric_vector(tag, params)
    spec = _spec_from(_project(vec, j), n)
    return FamilyInstance(tag, j, (*params, n), vec, spec)


def _relations_of(inst: FamilyInstance) -> tuple[tuple[int, ...], ...]:
    if inst.source in PARAMETRIC_RELATIONS:
        return PARAMETRIC_RELATIONS[inst.source]
    return table_row(inst.source).relations


def certify_instance(inst: FamilyInstance) -> WidthCertificate:
    """Width bound from the quintuple's relations (not necessarily optimal).

    Takes the first listed relation whose transformed functional has the
    smallest spread.
    """
    best = None
    for r in _relations_of(inst):
        y, values = functional_from_relation(inst.vector, r, inst.j)
        if best is None or spread(values) < spread(best[1]):
            best = (y, values)
    y, values = best
    cert = WidthCertificate(tuple(y), tuple(values), optimal=False)
    if not dual_membership(inst.spec.lattice(), y):
        raise AssertionError(f"{inst.label()}: functional {y} is not dual")
    return cert


def table_instances(n: int, table: Sequence[Quintuple] | None = None) -> Iterator[FamilyInstance]:
    """Every nondegenerate table instance with denominator ``n``: rows x j x k in units(n)."""
    for q in table or load_table():
        for j in range(1, 6):
            for k in units(n):
                try:
                    yield instantiate(q, j, k, n)
                except ValueError:
                    continue


@dataclass
class NoncyclicReport:
    prime: int
    planes_checked: int = 0
    empty_found: int = 0
    noncyclic_groups: int = 0
    witness_failures: int = 0
    lemma3_failures: int = 0
    empty_examples: list[list[list[int]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.empty_found == 0 and self.witness_failures == 0
                and self.lemma3_failures == 0 and self.noncyclic_groups == self.planes_checked)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def search_noncyclic_terminal(p: int) -> NoncyclicReport:
    """Every Z_p x Z_p extension ``Z^4 + (1/p) P`` must contain a non-vertex point.

    The witness ``A = p * point`` is checked to have nonnegative integer
    coordinates summing to at most ``p``.  The plane-minimum bound is
    re-run on the same prime so both sides of the argument are reported.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    rep = NoncyclicReport(p)
    for basis in echelon_subspaces(p, 4, 2):
        lat = SuperLattice.from_numerators(4, p, basis)
        rep.planes_checked += 1
        if group_structure(lat).invariant_factors == (p, p):
            rep.noncyclic_groups += 1
        res = is_empty_general(lat)
        if res.empty:
            rep.empty_found += 1
            if len(rep.empty_examples) < 5:
                rep.empty_examples.append([list(b) for b in basis])
            continue
        A = [x * p for x in res.point]
        if not all(x.denominator == 1 and x >= 0 for x in A) or sum(A) > p:
            rep.witness_failures += 1
    rep.lemma3_failures = verify_lemma3(p).failures
    return rep


@dataclass
class SweepReport:
    n_max: int
    instances: int = 0
    empty: int = 0
    width_histogram: dict[int, int] = field(default_factory=dict)
    certificate_violations: list[str] = field(default_factory=list)
    admissible_n: dict[str, list[int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.certificate_violations

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        return d


def sweep_table(n_max: int, table: Sequence[Quintuple] | None = None) -> SweepReport:
    """Optimal width vs. relation certificate for every empty table instance with n <= n_max."""
    rep = SweepReport(n_max)
    widths: dict[CyclicSimplexSpec, int] = {}
    for n in range(1, n_max + 1):
        for inst in table_instances(n, table):
            rep.instances += 1
            if not is_empty(inst.spec):
                continue
            rep.empty += 1
            ns = rep.admissible_n.setdefault(inst.source, [])
            if not ns or ns[-1] != n:
                ns.append(n)
            w = widths.get(inst.spec)
            if w is None:
                w = widths[inst.spec] = width(inst.spec).width
            rep.width_histogram[w] = rep.width_histogram.get(w, 0) + 1
            bound = certify_instance(inst).width
            if not w <= bound <= 2:
                rep.certificate_violations.append(f"{inst.label()} n={n}: width {w}, certificate {bound}")
    return rep
