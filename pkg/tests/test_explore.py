import itertools
import json

import pytest

import oracles as O
from commcert.errors import SpecFormatError, UnknownStructure
from commcert.explore import (
    additive_closure,
    brute_report,
    char2_lie_ideal_check,
    commutativity_report,
    commutator_set,
    field_ring,
    gf4_ring,
    ideal_closure,
    matrix_ring,
    nil_index,
    pair_product_set,
    parse_finite_ring,
    radical_power_check,
    xi_exact,
    zmod_ring,
)


def _oracle_m2f2_tables():
    els = list(itertools.product(range(2), repeat=4))
    idx = {e: t for t, e in enumerate(els)}

    def madd(x, y):
        return tuple((a + b) % 2 for a, b in zip(x, y))

    def mmul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % 2, (a * f + b * h) % 2,
                (c * e + d * g) % 2, (c * f + d * h) % 2)

    add = [[idx[madd(x, y)] for y in els] for x in els]
    mul = [[idx[mmul(x, y)] for y in els] for x in els]
    return add, mul


def test_matrix_ring_agrees_with_oracle_tables():
    ring = parse_finite_ring("M2(F2)")
    assert ring.size == 16
    add, mul = _oracle_m2f2_tables()
    assert len(O.table_commutators(add, mul, 16)) == len(commutator_set(ring))
    assert len(O.table_pair_products(add, mul, 16)) == len(pair_product_set(ring))
    assert O.table_xi(add, mul, 16) == xi_exact(ring).xi == 1
    assert not ring.is_commutative()
    assert ring.is_semiprime()


def test_oracle_tables_round_trip_through_the_file_loader(tmp_path):
    add, mul = _oracle_m2f2_tables()
    path = tmp_path / "m2f2.json"
    path.write_text(json.dumps({"add": add, "mul": mul}))
    ring = parse_finite_ring(f"tables:{path}")
    assert ring.size == 16
    report = brute_report(ring)
    native = brute_report(parse_finite_ring("M2(F2)"))
    for key in ("size", "commutative", "semiprime", "unital",
                "commutator_set_size", "pair_product_set_size", "xi"):
        assert report[key] == native[key], key


def test_exact_invariant_values():
    assert xi_exact(parse_finite_ring("M2(F2)")).xi == 1
    assert xi_exact(parse_finite_ring("M2(F2)")).steps == (16,)
    assert xi_exact(parse_finite_ring("M2(Z4)")).xi == 1
    sat = xi_exact(parse_finite_ring("U2(F2)"))
    assert sat.xi is None and sat.stabilized_at is not None
    z6 = xi_exact(zmod_ring(6))
    assert z6.xi is None
    assert len(commutator_set(parse_finite_ring("U2(F2)"))) == 2
    assert len(commutator_set(zmod_ring(6))) == 1  # just zero


def test_saturation_respects_the_cap():
    ring = parse_finite_ring("U2(F2)")
    sat = xi_exact(ring, cap=3)
    assert sat.xi is None and sat.cap == 3


def test_commutativity_reports_on_the_standard_examples():
    z6 = commutativity_report(zmod_ring(6))
    assert z6.commutative and z6.semiprime and z6.equivalence_holds
    m2f2 = commutativity_report(parse_finite_ring("M2(F2)"))
    assert m2f2.semiprime and not m2f2.commutative
    assert not m2f2.commutators_central
    assert not m2f2.commutators_commute
    assert m2f2.equivalence_holds  # all four conditions false together
    m2z4 = commutativity_report(parse_finite_ring("M2(Z4)"))
    assert not m2z4.semiprime and m2z4.equivalence_holds is None
    u2 = commutativity_report(parse_finite_ring("U2(F2)"))
    assert not u2.semiprime
    assert u2.commutators_commute  # [R,R] = {0, e12} commutes elementwise
    assert u2.commutator_ideal_nil and u2.nil_implication_holds
    u3 = commutativity_report(parse_finite_ring("U3(F2)"))
    assert not u3.semiprime
    assert u3.commutators_commute_with_pairs  # (3) holds here
    assert not u3.commutators_commute         # but (4) fails: not semiprime
    assert u3.commutator_ideal_nil and u3.nil_implication_holds


def test_char2_lie_ideal_checks():
    for q in (2, 4):
        rep = char2_lie_ideal_check(q)
        assert rep.field_size == q
        assert rep.lie_ideal          # bracketing with anything stays inside
        assert rep.brackets_vanish    # the family is commutative under brackets
        assert rep.not_central        # yet it is not central
        assert rep.control_central    # while true scalars are central
    with pytest.raises(UnknownStructure):
        char2_lie_ideal_check(3)


def test_radical_power_checks():
    u2 = radical_power_check(parse_finite_ring("U2(F2)"))
    assert u2.max_power == 2
    m2 = radical_power_check(parse_finite_ring("M2(F2)"))
    assert m2.max_power == 1


def test_nil_index_and_ideal_closure():
    u2 = parse_finite_ring("U2(F2)")
    # find e12 = the nonzero commutator
    comm = commutator_set(u2)
    nonzero = [i for i in comm.indices() if i != u2.zero]
    assert len(nonzero) == 1
    e12 = nonzero[0]
    assert nil_index(u2, e12) == 2
    assert nil_index(u2, u2.zero) == 1
    assert nil_index(u2, u2.one) is None
    ideal = ideal_closure(u2, comm)
    assert len(ideal) == 2  # {0, e12} is already the commutator ideal
    closure = additive_closure(comm)
    assert len(closure) == 2


def test_field_and_base_parsers():
    assert parse_finite_ring("Z6").size == 6
    assert parse_finite_ring("F5").size == 5
    assert parse_finite_ring("F4").size == 4
    assert parse_finite_ring("M2(Z4)").size == 256
    assert parse_finite_ring("U3(F2)").size == 64
    assert field_ring(7).label == "F7"
    gf4 = gf4_ring()
    w = gf4.names.index("w")
    w1 = gf4.names.index("w+1")
    assert gf4.mul[w][w] == w1       # w^2 = w + 1
    assert gf4.mul[w][w1] == gf4.one  # w * (w+1) = 1
    with pytest.raises(UnknownStructure):
        parse_finite_ring("F6")
    with pytest.raises(UnknownStructure):
        parse_finite_ring("M9(F2)")  # table would be astronomically large
    with pytest.raises((SpecFormatError, UnknownStructure)):
        parse_finite_ring("noise")


def test_table_validation_rejects_broken_operations(tmp_path):
    add = [[0, 1], [1, 0]]
    # constant multiplication violates distributivity: 1*(1+1) = 1 but 1*1 + 1*1 = 0
    broken = [[1, 1], [1, 1]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"add": add, "mul": broken}))
    with pytest.raises(SpecFormatError):
        parse_finite_ring(f"tables:{path}")
    path.write_text(json.dumps({"add": add}))  # missing mul
    with pytest.raises(SpecFormatError):
        parse_finite_ring(f"tables:{path}")
    path.write_text(json.dumps({"add": add, "mul": [[0, 1], [1]]}))  # ragged
    with pytest.raises(SpecFormatError):
        parse_finite_ring(f"tables:{path}")
    path.write_text(json.dumps({"add": add, "mul": [[0, 9], [1, 0]]}))  # bad index
    with pytest.raises(SpecFormatError):
        parse_finite_ring(f"tables:{path}")


def test_commutative_matrix_entries_guard():
    with pytest.raises(UnknownStructure):
        matrix_ring(3, field_ring(3))  # 3^9 elements: over the size guard


def test_brute_report_shapes():
    rep = brute_report(parse_finite_ring("M2(F2)"), cap=4)
    assert rep == {
        "ring": "M2(F2)",
        "size": 16,
        "unital": True,
        "commutative": False,
        "semiprime": True,
        "commutator_set_size": 8,
        "pair_product_set_size": 16,
        "xi": 1,
        "saturation_sizes": [16],
        "xi_cap": 4,
    }
