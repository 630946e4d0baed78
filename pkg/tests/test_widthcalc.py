import itertools
import math
import random

import pytest

from conftest import random_unimodular, realize, transform
from simplexlab.exactalg import dual_membership
from simplexlab.mmmfamilies import load_table
from simplexlab.simplexcore import CyclicSimplexSpec, GeneralSimplex, is_empty, to_standard_form, units
from simplexlab.widthcalc import functional_from_relation, spread, width, width_general


def brute_width(spec, radius=4):
    """Minimum spread over the box; exact whenever the result is <= radius."""
    best = None
    for y in itertools.product(range(-radius, radius + 1), repeat=4):
        if any(y) and sum(a * b for a, b in zip(y, spec.a)) % spec.N == 0:
            w = spread((0, *y))
            best = w if best is None else min(best, w)
    return best


def test_width_unimodular():
    cert = width(CyclicSimplexSpec(1, (0, 0, 0, 0)))
    assert cert.width == 1 and cert.optimal
    assert sum(map(abs, cert.functional)) == 1


def test_width_n5():
    cert = width(CyclicSimplexSpec(5, (1, 2, 3, 4)))
    assert cert.width == 1
    # (1,0,0,1) is a width-1 certificate too; the tie-break picks the lex-smallest one
    lat = CyclicSimplexSpec(5, (1, 2, 3, 4)).lattice()
    assert dual_membership(lat, (1, 0, 0, 1)) and spread((0, 1, 0, 0, 1)) == 1
    assert cert.functional == (0, 1, 1, 0)


def test_width_vertex65(vertex65):
    # the vertex (6,14,17,65) is stated to give width 4, but (0,1,3,-1) has spread 3:
    # values 0, 0, 1, 3 and 14 + 51 - 65 = 0
    assert spread([sum(a * b for a, b in zip((0, 1, 3, -1), v)) for v in vertex65.vertices]) == 3
    assert width_general(vertex65).width == 3
    assert width(to_standard_form(vertex65)).width == 3
    assert brute_width(to_standard_form(vertex65), radius=3) == 3


def test_width_general_unimodular():
    s = GeneralSimplex(((0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    assert width_general(s).width == 1


@pytest.mark.parametrize("n", range(1, 24))
def test_width_matches_bruteforce(n):
    rng = random.Random(n)
    for _ in range(8):
        a = [rng.randrange(n) for _ in range(4)]
        if math.gcd(n, *a) != 1:
            continue
        spec = CyclicSimplexSpec(n, a)
        cert = width(spec)
        assert cert.width == brute_width(spec, radius=max(4, cert.width))
        assert dual_membership(spec.lattice(), cert.functional)
        assert cert.width == spread(cert.vertex_values) >= 1


def test_width_tie_break_is_lex_smallest():
    spec = CyclicSimplexSpec(13, (1, 3, 9, 5))
    cert = width(spec)
    box = range(-cert.width, cert.width + 1)
    optima = [y for y in itertools.product(box, repeat=4)
              if any(y) and next(x for x in y if x) > 0
              and sum(a * b for a, b in zip(y, spec.a)) % 13 == 0 and spread((0, *y)) == cert.width]
    assert cert.functional == min(optima)


def test_width_general_matches_standard_form():
    rng = random.Random(21)
    done = 0
    while done < 25:
        n = rng.randint(2, 100)
        a = [rng.randrange(n) for _ in range(4)]
        if math.gcd(n, *a) != 1:
            continue
        spec = CyclicSimplexSpec(n, a)
        s = transform(realize(spec), random_unimodular(rng), [rng.randint(-3, 3) for _ in range(4)])
        assert width_general(s).width == width(to_standard_form(s)).width == width(spec).width
        done += 1


@pytest.mark.parametrize("n", [7, 30, 53, 101, 180])
def test_width_unit_scaling_invariance(n):
    rng = random.Random(n)
    for _ in range(3):
        a = [rng.randrange(n) for _ in range(4)]
        if math.gcd(n, *a) != 1:
            continue
        w = width(CyclicSimplexSpec(n, a)).width
        assert all(width(CyclicSimplexSpec(n, [u * x for x in a])).width == w for u in units(n))


def test_functional_from_relation_examples():
    y, values = functional_from_relation((9, 1, -2, -3, -5), (0, 2, 1, 0, 0), 5)
    assert y == (0, 2, 1, 0) and values == (0, 0, 2, 1, 0)
    x, yy, z = 3, 5, 7
    y, values = functional_from_relation((x, -x, yy, z, -yy - z), (1, 1, 0, 0, 0), 5)
    assert y == (1, 1, 0, 0) and spread(values) == 1
    y, values = functional_from_relation((12, 3, -4, -5, -6), (0, 2, 0, 0, 1), 5)
    assert y == (-1, 1, -1, -1) and values == (0, -1, 1, -1, -1)
    assert -12 + 3 + 4 + 5 == 0


def test_functional_from_relation_entry_two():
    # entry 2 at j=2: 2 - r = (2,0,1,2,2); drop j -> (2,1,2,2)
    y, values = functional_from_relation((9, 1, -2, -3, -5), (0, 2, 1, 0, 0), 2)
    assert y == (2, 1, 2, 2)
    assert sum(a * b for a, b in zip(y, (9, -2, -3, -5))) == 0
    assert set(values) <= {0, 1, 2}


def test_functional_from_relation_rejects_non_relations():
    with pytest.raises(ValueError):
        functional_from_relation((1, 1, 1, 1, -4), (1, 0, 0, 0, 1), 5)
    with pytest.raises(ValueError):
        functional_from_relation((9, 1, -2, -3, -5), (0, 3, 0, 0, 0), 5)


def test_functional_from_relation_whole_table():
    for q in load_table():
        for r in q.relations:
            for j in range(1, 6):
                y, values = functional_from_relation(q.entries, r, j)
                proj = q.entries[:j - 1] + q.entries[j:]
                assert sum(a * b for a, b in zip(y, proj)) == 0
                assert spread(values) <= 2
                assert set(values) <= {0, 1, 2} or set(values) <= {-1, 0, 1}


def test_empty_table_instances_have_small_width():
    q = load_table()[0]
    for n in range(2, 40):
        for k in units(n):
            a = [k * x % n for x in q.entries[:4]]
            if math.gcd(n, *a) != 1:
                continue
            spec = CyclicSimplexSpec(n, a)
            if is_empty(spec):
                assert width(spec).width <= 2
