"""End-to-end acceptance checks, one per headline guarantee.

Each check prints a single PASS/FAIL line with its wall-clock time and
enforces a pinned runtime budget next to its exact mathematical claims.
"""

import random
import time
from contextlib import contextmanager

from commcert import z23 as D
from commcert.cert import verify
from commcert.explore import (
    char2_lie_ideal_check,
    commutativity_report,
    parse_finite_ring,
    radical_power_check,
    xi_exact,
)
from commcert.freealg import identity_suite
from commcert.matrices import DirectSum, DirectSumSpace, Matrix, MatrixSpace, Scalar
from commcert.mdecomp import decompose, quaternion_decompose
from commcert.rewrite import UnitExpansion, unit_witness_for, xi3_decompose
from commcert.rings import GF, INTEGERS, QUATERNIONS, RATIONALS, Zmod, polynomials_over
from commcert.witness import witness_triple


@contextmanager
def criterion(label: str, budget: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"FAIL  {label}  ({time.perf_counter() - start:.2f}s, budget {budget:g}s)")
        raise
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        print(f"FAIL  {label}  ({elapsed:.2f}s over the {budget:g}s budget)")
        raise AssertionError(f"{label}: took {elapsed:.2f}s, budget is {budget:g}s")
    print(f"PASS  {label}  ({elapsed:.2f}s, budget {budget:g}s)")


def test_every_matrix_is_a_sum_of_two_pair_products():
    rings = [INTEGERS, RATIONALS, Zmod(6), GF(5), polynomials_over(RATIONALS)]
    with criterion("two pair products cover M_n over five coefficient rings", 10.0):
        rng = random.Random(20260816)
        for ring in rings:
            for n in range(2, 7):
                for _ in range(500):
                    a = Matrix.random(ring, n, rng, 10**6)
                    cert = decompose(a)
                    result = verify(cert)
                    assert result.valid, result.reason
                    assert cert.pair_count() <= 2 and cert.single_count() == 0


def test_shift_witness_triples_validate_across_sizes():
    with criterion("witness triples pass all four invariants for sizes 2..12", 1.0):
        for n in range(2, 13):
            t = witness_triple(n)
            t.validate()
            for w in (t.u, t.v, t.w):
                assert w.value == w.recompute()
            assert t.bracket_uv == t.u.value * t.v.value - t.v.value * t.u.value
            assert t.bracket_uv.det().value in (1, -1)
            assert t.v.value * t.w.value == t.v.value
            vw = t.v.value * t.w.value
            assert t.s * (t.u.value * vw - vw * t.u.value) == t.s.one_like()


def test_unit_bracket_gives_three_term_certificates():
    spaces = [
        DirectSumSpace((MatrixSpace(INTEGERS, 2), MatrixSpace(INTEGERS, 3))),
        MatrixSpace(RATIONALS, 5),
    ]
    with criterion("unit-bracket witnesses give three-term certificates", 5.0):
        rng = random.Random(3)
        for space in spaces:
            witness = unit_witness_for(space)
            for _ in range(200):
                a = space.random(rng)
                cert = xi3_decompose(a, witness)
                result = verify(cert)
                assert result.valid, result.reason
                assert cert.pair_count() <= 3 and cert.single_count() == 0


def test_unit_expansions_give_twelve_terms_per_row():
    m3 = MatrixSpace(RATIONALS, 3)
    w1 = unit_witness_for(m3)
    one_row = UnitExpansion(((w1.s, w1.u, w1.v, w1.w, m3.one()),))

    ds = DirectSumSpace((MatrixSpace(INTEGERS, 2), MatrixSpace(INTEGERS, 3)))
    w2 = unit_witness_for(ds)
    left = DirectSum([Matrix.identity(INTEGERS, 2), Matrix.zeros(INTEGERS, 3)])
    right = DirectSum([Matrix.zeros(INTEGERS, 2), Matrix.identity(INTEGERS, 3)])
    two_rows = UnitExpansion(
        ((w2.s, w2.u, w2.v, w2.w, left), (w2.s, w2.u, w2.v, w2.w, right))
    )

    from commcert.rewrite import unit_expansion_decompose

    with criterion("unit expansions give at most twelve pairs per row", 5.0):
        rng = random.Random(4)
        for space, expansion, depth in ((m3, one_row, 1), (ds, two_rows, 2)):
            for _ in range(100):
                a = space.random(rng)
                cert = unit_expansion_decompose(a, expansion)
                result = verify(cert)
                assert result.valid, result.reason
                assert cert.pair_count() <= 12 * depth
                assert cert.single_count() == 0


def test_smallest_matrix_field_has_invariant_one():
    with criterion("saturation finds invariant 1 over the 16-element matrix ring", 1.0):
        assert xi_exact(parse_finite_ring("M2(F2)")).xi == 1
        assert xi_exact(parse_finite_ring("M2(Z4)")).xi <= 2


def test_quaternions_split_into_at_most_two_pairs():
    with criterion("rational quaternions need at most two pair products", 1.0):
        rng = random.Random(6)
        for _ in range(200):
            d = Scalar(QUATERNIONS, QUATERNIONS.random(rng))
            cert = quaternion_decompose(d)
            result = verify(cert)
            assert result.valid, result.reason
            assert cert.pair_count() <= 2 and cert.single_count() == 0
        # the worked unit example keeps its stated raw term values 0 and 1
        one = Scalar(QUATERNIONS, QUATERNIONS.one)
        worked = quaternion_decompose(one, keep_zero_terms=True)
        values = [t.value() for t in worked.terms]
        assert len(values) == 2
        assert values[0].is_zero()
        assert values[1] == one.one_like()


def test_dimension_drop_unit_identity_and_six_term_certificates():
    with criterion("dimension-drop unit identity is exact and elements need six pairs", 5.0):
        report = D.unit_identity_report()
        assert all(report["exact"].values()), report["exact"]
        assert all(report["pairs"].values()), report["pairs"]
        assert report["max_grid_residual"] <= 1e-12
        assert max(D.grid_residuals(101)) <= 1e-12
        rng = random.Random(7)
        for _ in range(20):
            g = D.random_admissible(rng)
            cert = D.decompose(g)
            result = verify(cert)
            assert result.valid, result.reason
            assert cert.pair_count() <= 6 and cert.single_count() == 0


def test_free_algebra_identity_suite_reduces_to_zero():
    with criterion("free-algebra identity suite reduces every identity to zero", 1.0):
        rows = identity_suite()
        assert len(rows) == 8
        assert all(row.passed for row in rows)


def test_finite_ring_commutativity_and_radical_reports():
    labels = ("Z6", "M2(F2)", "M2(Z4)", "U2(F2)", "U3(F2)")
    with criterion("finite-ring commutativity, Lie-ideal, and radical checks", 10.0):
        for label in labels:
            rep = commutativity_report(parse_finite_ring(label))
            if rep.semiprime:
                assert rep.equivalence_holds is True
            assert rep.nil_implication_holds
        for q in (2, 4):
            lie = char2_lie_ideal_check(q)
            assert lie.lie_ideal and lie.brackets_vanish
            assert lie.not_central and lie.control_central
        assert radical_power_check(parse_finite_ring("U2(F2)")).max_power == 2
        assert radical_power_check(parse_finite_ring("M2(F2)")).max_power == 1
