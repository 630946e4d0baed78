"""Determinant-bounded census of empty cyclic 4-simplices.

Classes are keyed by canonical form.  Since emptiness and the gcd
condition only depend on the multiset of the five residues
``(a1, a2, a3, a4, -(a1+a2+a3+a4))``, the scan walks sorted 5-tuples with
zero sum mod N and keeps a tuple only when it is its own canonical form.
"""

from __future__ import annotations

import csv
import itertools
import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .mmmfamilies import family_parametric, table_instances
from .simplexcore import CanonicalForm, CyclicSimplexSpec, canonical_form, canonical_tuple, is_empty
from .widthcalc import width

log = logging.getLogger(__name__)

DEFAULT_MAX_DET = 150
CSV_COLUMNS = ["N", "a1", "a2", "a3", "a4", "a5", "width", "y1", "y2", "y3", "y4", "family"]


def max_det_budget() -> int:
    return int(os.environ.get("SIMPLEXLAB_MAX_DET", DEFAULT_MAX_DET))


@dataclass(frozen=True)
class SurveyRecord:
    form: CanonicalForm
    width: int
    functional: tuple[int, int, int, int]
    family: str = ""

    def row(self) -> list:
        return [self.form.N, *self.form.tuple5, self.width, *self.functional, self.family]

    @classmethod
    def from_row(cls, row: dict) -> "SurveyRecord":
        form = CanonicalForm(int(row["N"]), tuple(int(row[f"a{i}"]) for i in range(1, 6)))
        y = tuple(int(row[f"y{i}"]) for i in range(1, 5))
        return cls(form, int(row["width"]), y, row["family"])


def _sorted_zero_sum_tuples(n: int) -> np.ndarray:
    """Nondecreasing 5-tuples in [0, n) with sum divisible by n."""
    if n == 1:
        return np.zeros((1, 5), dtype=np.int64)
    trip = np.array(list(itertools.combinations_with_replacement(range(n), 3)), dtype=np.int64)
    parts = []
    s3 = trip.sum(axis=1)
    for a4 in range(n):
        sel = trip[:, 2] <= a4
        a5 = (-(s3[sel] + a4)) % n
        ok = a5 >= a4
        t = trip[sel][ok]
        parts.append(np.column_stack([t, np.full(len(t), a4), a5[ok]]))
    return np.concatenate(parts)


def _filter_empty(n: int, cand: np.ndarray) -> np.ndarray:
    # five-coordinate criterion: the residues of k*t sum to at least 2n for every k
    for k in range(1, n):
        if not len(cand):
            break
        cand = cand[(k * cand % n).sum(axis=1) >= 2 * n]
    return cand


def enumerate_empty(n: int) -> list[CanonicalForm]:
    """Every canonical class of empty cyclic simplices with determinant ``n``, sorted."""
    if n < 1:
        raise ValueError("N must be positive")
    cand = _sorted_zero_sum_tuples(n)
    g = np.gcd.reduce(np.column_stack([cand, np.full(len(cand), n)]), axis=1)
    cand = _filter_empty(n, cand[g == 1])
    out = []
    for t in map(tuple, cand.tolist()):
        if canonical_tuple(n, t) != t:
            continue
        spec = CyclicSimplexSpec(n, t[:4])
        if not is_empty(spec):
            raise AssertionError(f"vectorized scan and is_empty disagree on {spec}")
        out.append(CanonicalForm(n, t))
    return sorted(out, key=lambda f: f.tuple5)


def enumerate_empty_bruteforce(n: int) -> list[CanonicalForm]:
    """Scan all of [0, n)^4; the slow reference for :func:`enumerate_empty`."""
    found = set()
    for a in itertools.product(range(n), repeat=4):
        if math.gcd(n, *a) != 1:
            continue
        spec = CyclicSimplexSpec(n, a)
        if is_empty(spec):
            found.add(canonical_form(spec))
    return sorted(found, key=lambda f: f.tuple5)


def family_index(n: int) -> dict[tuple[int, ...], str]:
    """Canonical tuple -> label for every table instance with denominator ``n``."""
    index: dict[tuple[int, ...], str] = {}
    for inst in table_instances(n):
        index.setdefault(canonical_form(inst.spec).tuple5, inst.label())
    return index


def match_parametric(form: CanonicalForm) -> str:
    """Label of a family (i)/(ii) instance with this canonical form, or ''."""
    n, t = form.N, form.tuple5
    for p, q in itertools.combinations(range(5), 2):
        if (t[p] + t[q]) % n == 0:
            rest = [t[i] for i in range(5) if i not in (p, q)]
            return family_parametric("i", (t[p], rest[0], rest[1]), n, 5).label()
    for p, q, r, s in itertools.permutations(range(5), 4):
        if (t[q] + 2 * t[p]) % n == 0 and (t[s] + 2 * t[r]) % n == 0:
            return family_parametric("ii", (t[p], t[r]), n, 5).label()
    return ""


def survey_determinant(n: int) -> list[SurveyRecord]:
    index = family_index(n)
    records = []
    for form in enumerate_empty(n):
        cert = width(form.spec())
        family = match_parametric(form) or index.get(form.tuple5, "")
        records.append(SurveyRecord(form, cert.width, cert.functional, family))
    return records


@dataclass
class SurveySummary:
    n_max: int
    completed_through: int
    partial: bool
    histogram: dict[int, dict[int, int]]
    totals: dict[int, int]
    classes: int
    runtime_s: float

    def as_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "completed_through": self.completed_through,
            "partial": self.partial,
            "classes": self.classes,
            "totals": {str(w): c for w, c in sorted(self.totals.items())},
            "histogram": {str(n): {str(w): c for w, c in sorted(h.items())}
                          for n, h in sorted(self.histogram.items())},
            "runtime_s": round(self.runtime_s, 3),
        }


def summary_path(out: Path) -> Path:
    return out.with_suffix(".json")


def read_records(path: str | Path) -> list[SurveyRecord]:
    with open(path, newline="") as fh:
        return [SurveyRecord.from_row(r) for r in csv.DictReader(fh)]


def write_records(path: str | Path, records: list[SurveyRecord]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow(r.row())


def summarize(records: list[SurveyRecord], n_max: int, completed: int, runtime: float) -> SurveySummary:
    hist: dict[int, dict[int, int]] = {n: {} for n in range(1, completed + 1)}
    totals: dict[int, int] = {}
    for r in records:
        h = hist.setdefault(r.form.N, {})
        h[r.width] = h.get(r.width, 0) + 1
        totals[r.width] = totals.get(r.width, 0) + 1
    return SurveySummary(n_max, completed, completed < n_max, hist, totals, len(records), runtime)


def survey(n_max: int, out: str | Path | None = None, jobs: int | None = None,
           resume: bool = False, budget: int | None = None) -> tuple[SurveySummary, list[SurveyRecord]]:
    """Census for every determinant up to ``n_max``.

    Determinants above the budget are skipped and the summary is marked
    partial.  With ``resume``, determinants already recorded as complete in
    an existing summary next to ``out`` are loaded instead of recomputed.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    start = time.perf_counter()
    budget = max_det_budget() if budget is None else budget
    limit = min(n_max, budget)
    if limit < n_max:
        log.warning("determinants above %d exceed the budget; survey will be partial", budget)
    out = Path(out) if out is not None else None
    if out is not None and out.parent and not out.parent.exists():
        raise FileNotFoundError(f"output directory {out.parent} does not exist")

    records: list[SurveyRecord] = []
    done = 0
    if resume and out is not None and out.exists() and summary_path(out).exists():
        done = min(json.loads(summary_path(out).read_text())["completed_through"], limit)
        records = [r for r in read_records(out) if r.form.N <= done]

    todo = list(range(done + 1, limit + 1))
    jobs = jobs or os.cpu_count() or 1
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            # largest determinants first so the long tasks start early
            chunks = dict(zip(todo[::-1], pool.map(survey_determinant, todo[::-1])))
        for n in todo:
            records.extend(chunks[n])
    else:
        for n in todo:
            records.extend(survey_determinant(n))
            log.debug("N=%d done, %d classes so far", n, len(records))
    records.sort(key=lambda r: (r.form.N, r.form.tuple5))
    summary = summarize(records, n_max, limit, time.perf_counter() - start)
    if out is not None:
        write_records(out, records)
        summary_path(out).write_text(json.dumps(summary.as_dict(), indent=2) + "\n")
    return summary, records
