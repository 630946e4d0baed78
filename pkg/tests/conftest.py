import itertools
import random
from fractions import Fraction

import pytest

from simplexlab.exactalg import det, inverse_with_denominator, matmul
from simplexlab.simplexcore import CyclicSimplexSpec, GeneralSimplex

VERTEX65_SIMPLEX = ((0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (6, 14, 17, 65))

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def vertex65():
    return GeneralSimplex(VERTEX65_SIMPLEX)


def cofactor_det(m):
    """Laplace expansion; independent of the library's Bareiss routine."""
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)))


def random_unimodular(rng: random.Random, n: int = 4, steps: int = 12):
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
        if rng.random() < 0.3:
            u[i], u[j] = u[j], u[i]
    assert abs(det(u)) == 1
    return u


def realize(spec: CyclicSimplexSpec) -> GeneralSimplex:
    """Integer vertices in Z^4 for the standard simplex of ``spec``.

    A basis B of D (rows) has Z^4 = Z^4 B, so the simplex vertices 0, e_i
    have coordinates given by the rows of B^-1, an integer matrix.
    """
    lat = spec.lattice()
    # B = basis / M, so B^-1 = M * basis^-1
    inv, d = inverse_with_denominator(lat.basis)
    rows = [[x * lat.denominator // d for x in row] for row in inv]
    return GeneralSimplex(((0, 0, 0, 0), *map(tuple, rows)))


def transform(s: GeneralSimplex, u, shift=(0, 0, 0, 0), order=None) -> GeneralSimplex:
    vs = [tuple(x + t for x, t in zip(row, shift)) for row in matmul(s.vertices, u)]
    if order is not None:
        vs = [vs[i] for i in order]
    return GeneralSimplex(tuple(vs))


def lattice_points_bruteforce(s: GeneralSimplex):
    """Integer points of the closed simplex, by barycentric test over the bounding box."""
    vs = s.vertices
    lo = [min(v[i] for v in vs) for i in range(4)]
    hi = [max(v[i] for v in vs) for i in range(4)]
    edges = [[x - y for x, y in zip(v, vs[0])] for v in vs[1:]]
    inv, d = inverse_with_denominator(edges)  # rows: edges^-1 * d
    pts = []
    for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        rel = [xi - oi for xi, oi in zip(x, vs[0])]
        # barycentric coords c with rel = c @ edges  =>  c = rel @ edges^-1
        c = [Fraction(sum(rel[k] * inv[k][j] for k in range(4)), d) for j in range(4)]
        if all(ci >= 0 for ci in c) and sum(c) <= 1:
            pts.append(x)
    return pts


def is_empty_bruteforce(s: GeneralSimplex) -> bool:
    return len(lattice_points_bruteforce(s)) == 5
