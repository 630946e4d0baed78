import math

import pytest

from simplexlab.exactalg import dual_membership
from simplexlab.fpdigits import verify_lemma3
from simplexlab.mmmfamilies import (
    Quintuple,
    certify_instance,
    family_parametric,
    instantiate,
    load_table,
    parse_table,
    search_noncyclic_terminal,
    sweep_table,
    table_row,
    verify_quintuple,
)
from simplexlab.simplexcore import CyclicSimplexSpec, canonical_form, is_empty, units
from simplexlab.widthcalc import width


def test_table_rows():
    table = load_table()
    assert len(table) == 29
    assert table[0].entries == (9, 1, -2, -3, -5) and len(table[0].relations) == 3
    assert table[0].relations == ((0, 2, 1, 0, 0), (1, 1, 0, 0, 2), (2, 0, 1, 2, 2))
    assert table[7].entries == (15, 4, -5, -6, -8)
    assert table[7].relations == ((0, 2, 0, 0, 1), (2, 0, 2, 2, 1))
    assert table[-1].entries == (15, 10, 6, -1, -30)
    assert table[-1].relations == ((0, 2, 2, 2, 1), (2, 0, 0, 0, 1))
    assert len({q.entries for q in table}) == 29


def test_verify_all_rows():
    for q in load_table():
        rep = verify_quintuple(q)
        assert rep.ok, (q.ident, rep.failures)
    assert 2 * 3 - 6 == 0 and 9 + 1 - 10 == 0


def test_verify_negative_control():
    rep = verify_quintuple(Quintuple((1, 1, 1, 1, -4), ((1, 0, 0, 0, 1),)))
    assert not rep.ok and rep.sum_zero
    assert "-3" in rep.failures[0]
    assert not verify_quintuple(Quintuple((1, 1, 1, 1, -3), ((0, 0, 0, 0, 0),))).ok
    assert not verify_quintuple(Quintuple((1, -1, 0, 0, 0), ((3, 3, 0, 0, 0),))).ok


def test_parse_table_format():
    rows = parse_table("# comment\n9 1 -2 -3 -5 | 0,2,1,0,0 ; 1,1,0,0,2\n\n")
    assert rows == [Quintuple((9, 1, -2, -3, -5), ((0, 2, 1, 0, 0), (1, 1, 0, 0, 2)), "T1")]


def test_instantiate_examples():
    q = table_row("T1")
    assert instantiate(q, 5, 1, 7).spec == CyclicSimplexSpec(7, (2, 1, 5, 4))
    assert instantiate(q, 1, 1, 7).spec == CyclicSimplexSpec(7, (1, 5, 4, 2))
    assert instantiate(q, 5, 1, 3).spec == CyclicSimplexSpec(3, (0, 1, 1, 0))
    assert instantiate(q, 5, 2, 7).spec == CyclicSimplexSpec(7, (4, 2, 3, 1))


def test_instantiate_rejections():
    q = table_row("T1")
    with pytest.raises(ValueError):
        instantiate(q, 5, 2, 4)  # k, n not coprime
    with pytest.raises(ValueError):
        instantiate(Quintuple((2, 2, 4, -4, -4), ((0, 0, 0, 0, 0),)), 5, 1, 2)  # degenerate
    with pytest.raises(ValueError):
        instantiate(q, 6, 1, 7)


def test_instances_are_unit_equivalent():
    # changing k is multiplication by a unit, so the canonical form is unchanged
    q = table_row("T8")
    for n in (7, 11, 19, 30):
        forms = {canonical_form(instantiate(q, 3, k, n).spec) for k in units(n)}
        assert len(forms) == 1


def test_parametric_examples():
    inst = family_parametric("i", (1, 2, 3), 5, 2)
    assert inst.vector == (1, -1, 2, 3, -5)
    assert inst.spec == CyclicSimplexSpec(5, (1, 2, 3, 0))
    inst = family_parametric("i", (1, 2, 3), 5, 5)
    assert inst.spec == CyclicSimplexSpec(5, (1, 4, 2, 3))
    cert = certify_instance(inst)
    assert cert.functional == (1, 1, 0, 0) and cert.width == 1
    inst = family_parametric("ii", (1, 3), 7, 5)
    assert inst.vector == (1, -2, 3, -6, 4)
    assert inst.spec == CyclicSimplexSpec(7, (1, 5, 3, 1))
    with pytest.raises(ValueError):
        family_parametric("iii", (1, 2), 5, 5)
    with pytest.raises(ValueError):
        family_parametric("i", (2, 4, 6), 4, 5)


def test_certify_examples():
    cert = certify_instance(instantiate(table_row("T1"), 5, 1, 7))
    assert cert.functional == (0, 2, 1, 0) and cert.width == 2 and not cert.optimal
    cert = certify_instance(instantiate(table_row("T8"), 4, 1, 11))
    assert cert.functional == (0, 2, 0, 1)
    assert cert.vertex_values == (0, 0, 2, 0, 1)
    for x, y, z, n in ((1, 2, 3, 5), (2, 5, 1, 9), (3, 1, 4, 13)):
        cert = certify_instance(family_parametric("i", (x, y, z), n, 5))
        assert cert.functional == (1, 1, 0, 0) and cert.width == 1


def test_family_ii_certificate_uses_listed_relation():
    for x, y, n in ((1, 3, 7), (2, 5, 11), (1, 4, 13)):
        inst = family_parametric("ii", (x, y), n, 5)
        cert = certify_instance(inst)
        assert cert.width <= 2
        assert dual_membership(inst.spec.lattice(), cert.functional)


@pytest.mark.parametrize("ident", ["T1", "T8", "T15", "T29"])
def test_empty_instances_respect_certificate(ident):
    q = table_row(ident)
    for n in range(2, 101, 3):
        for j in range(1, 6):
            try:
                inst = instantiate(q, j, 1, n)
            except ValueError:
                continue
            if is_empty(inst.spec):
                assert width(inst.spec).width <= certify_instance(inst).width <= 2


def test_parametric_empty_instances_have_width_at_most_two():
    for n in range(2, 40):
        for x in range(1, n):
            for tag, params in (("i", (x, 1, 2)), ("ii", (1, x))):
                try:
                    inst = family_parametric(tag, params, n, 5)
                except ValueError:
                    continue
                if is_empty(inst.spec):
                    assert width(inst.spec).width <= certify_instance(inst).width <= 2


def test_sweep_small():
    rep = sweep_table(20)
    assert rep.ok and rep.empty > 0
    assert set(rep.width_histogram) <= {1, 2}
    assert rep.instances > rep.empty
    assert all(ns == sorted(ns) and ns[-1] <= 20 for ns in rep.admissible_n.values())
    assert rep.as_dict()["ok"]


@pytest.mark.parametrize("p,planes", [(2, 35), (3, 130), (5, 806)])
def test_noncyclic_search(p, planes):
    rep = search_noncyclic_terminal(p)
    assert rep.planes_checked == planes
    assert rep.empty_found == 0 and rep.witness_failures == 0
    assert rep.noncyclic_groups == planes
    assert rep.ok == verify_lemma3(p).ok == True  # noqa: E712


def test_noncyclic_rejects_composite():
    with pytest.raises(ValueError):
        search_noncyclic_terminal(6)


def test_table_instances_are_nondegenerate():
    for n in (6, 12, 30):
        for q in load_table()[:5]:
            for j in range(1, 6):
                try:
                    inst = instantiate(q, j, 1, n)
                except ValueError:
                    gen = [x % n for x in q.entries[:j - 1] + q.entries[j:]]
                    assert math.gcd(n, *gen) != 1
                    continue
                assert inst.spec.N == n
