from fractions import Fraction

import pytest

from qsteiner.exactq import choose2
from qsteiner.identities import (
    NonTerminatingSeries,
    PreconditionError,
    VanishingDenominator,
    check_3phi2_transformation,
    check_alternating_column_sum,
    check_double_sum_reduction,
    check_eigenvalue_kernel_sum,
    check_pochhammer_suite,
    check_product_expansion,
    check_q_binomial_theorem,
    check_shifted_sum_transform,
    check_shifted_sum_transform_diagonal,
    check_triple_sum_closed_form,
    check_triple_sum_weighted_form,
    check_upper_negation,
    eval_3phi2,
    kernel_sum_valuation,
    run_identity_sweep,
)


def test_3phi2_truncates_at_unit_parameter():
    # an upper parameter q^0 = 1 kills every term after the first
    assert eval_3phi2((0, 3, 2), (1, 1), 1, 2) == 1
    assert eval_3phi2((0, -5, 2), (1, 1), 1, 3) == 1


def test_3phi2_zero_order_termination():
    assert eval_3phi2((-0, 2, 2), (1, 1), 1, 2) == 1


def test_3phi2_small_value_by_hand():
    # one nontrivial term: 3phi2 with upper (q^-1, q, q), lower (q, q), z=q
    # term at l=1: (1-q^-1)(1-q)^2 / ((1-q)^2 (1-q)) * q = (1-q^-1)q/(1-q)
    q = 2
    val = eval_3phi2((-1, 1, 1), (1, 1), 1, q)
    expected = 1 + Fraction(1, 2) * 2 / Fraction(-1)
    assert val == expected == 0


def test_3phi2_rejections():
    with pytest.raises(NonTerminatingSeries):
        eval_3phi2((1, 2, 3), (1, 1), 1, 2)
    with pytest.raises(VanishingDenominator):
        eval_3phi2((-3, 1, 1), (-1, 2), 1, 2)


def test_transformation_trivial_and_derived_cases():
    assert check_3phi2_transformation(0, 1, 1, 2, 2, 2).equal
    rep = check_3phi2_transformation(1, 1, 1, 2, 2, 2)
    assert rep.equal
    rep = check_3phi2_transformation(2, 1, 2, 3, 4, 3)
    assert rep.equal


def test_pochhammer_suite_at_4_2():
    reports = check_pochhammer_suite(4, 2, 2)
    names = {r.identity_name for r in reports}
    assert "binom_from_pochhammer" in names
    assert all(r.equal for r in reports)
    binom = next(r for r in reports if r.identity_name == "binom_from_pochhammer")
    assert binom.lhs == 35


def test_pochhammer_suite_degenerate_diagonal():
    # n = k: the difference identity degenerates to (q;q)_0 = 1
    for q in (2, 3):
        reports = check_pochhammer_suite(3, 3, q)
        diff = next(r for r in reports if r.identity_name == "pochhammer_difference")
        assert diff.lhs == 1 and diff.equal


def test_upper_negation_at_negative_one():
    rep = check_upper_negation(-1, 1, 2)
    assert rep.lhs == rep.rhs == Fraction(-1, 2)


def test_q_binomial_theorem_examples():
    assert check_q_binomial_theorem(0, Fraction(5), Fraction(7), 2).equal
    rep = check_q_binomial_theorem(2, Fraction(1), Fraction(1), 2)
    assert rep.equal and rep.lhs == 6
    rep = check_q_binomial_theorem(3, Fraction(-1), Fraction(1), 2)
    assert rep.equal and rep.lhs == 0


def test_product_expansion_examples():
    # h = p: single term, both sides [x h]
    for rep in check_product_expansion(3, 5, 2, 2, 2):
        assert rep.equal
    reports = check_product_expansion(1, 2, 0, 1, 2)
    assert all(r.equal for r in reports)
    assert all(r.lhs == 1 for r in reports)
    assert all(r.equal for r in check_product_expansion(2, 5, 1, 2, 3))
    with pytest.raises(PreconditionError):
        check_product_expansion(1, 2, 2, 1, 2)


def test_alternating_column_sum_examples():
    rep = check_alternating_column_sum(5, 0, 2)
    assert rep.lhs == rep.rhs == 1
    rep = check_alternating_column_sum(1, 1, 2)
    assert rep.equal and rep.lhs == 0
    rep = check_alternating_column_sum(2, 1, 2)
    assert rep.equal and rep.lhs == -2  # 1 - 3 and 4 * (-1/2)


def test_shifted_sum_transform_examples():
    rep = check_shifted_sum_transform(5, 2, 3, 0, 1, 2)
    assert rep.equal  # u = 0: single s = 0 term each side
    assert check_shifted_sum_transform(6, 2, 3, 1, 1, 2).equal
    assert check_shifted_sum_transform(8, 3, 4, 2, 2, 3).equal
    with pytest.raises(PreconditionError):
        check_shifted_sum_transform(3, 5, 2, 1, 1, 2)  # r > n + 1
    with pytest.raises(VanishingDenominator):
        check_shifted_sum_transform(8, 0, 3, 2, 2, 2)  # [r-i+s s] vanishes


def test_shifted_sum_transform_diagonal_examples():
    assert check_shifted_sum_transform_diagonal(6, 2, 3, 0, 2).equal
    assert check_shifted_sum_transform_diagonal(6, 2, 3, 1, 2).equal
    assert check_shifted_sum_transform_diagonal(8, 3, 4, 2, 3).equal


def test_double_sum_reduction_examples():
    rep = check_double_sum_reduction(6, 2, 3, 0, 2)
    assert rep.equal and rep.lhs == 1
    assert check_double_sum_reduction(6, 2, 3, 1, 2).equal
    assert check_double_sum_reduction(8, 3, 4, 2, 2).equal


def test_triple_sum_closed_form_examples():
    rep = check_triple_sum_closed_form(4, 2, 2, 0, 2)
    q, r, k = 2, 2, 2
    assert rep.equal and rep.lhs == Fraction(q ** choose2(r), q ** (r * k))
    assert check_triple_sum_closed_form(4, 2, 2, 1, 2).equal
    assert check_triple_sum_closed_form(7, 3, 2, 2, 2).equal


def test_triple_sum_weighted_form_examples():
    assert check_triple_sum_weighted_form(4, 2, 2, 0, 2).equal
    assert check_triple_sum_weighted_form(4, 2, 2, 1, 2).equal
    assert check_triple_sum_weighted_form(7, 3, 3, 2, 3).equal


def test_kernel_sum_examples():
    rep = check_eigenvalue_kernel_sum(4, 2, 1, 1, 2)
    assert rep.equal and rep.lhs == 1
    assert check_eigenvalue_kernel_sum(6, 2, 1, 1, 3).equal
    # t = 0: empty sum on the left, nonzero right side -> documented inequality
    rep = check_eigenvalue_kernel_sum(6, 3, 0, 1, 2)
    assert rep.lhs == 0 and not rep.equal
    with pytest.raises(PreconditionError):
        check_eigenvalue_kernel_sum(6, 3, 1, 0, 2)


def test_kernel_sum_equality_window():
    # equal exactly for 1 <= r <= t on the nontrivial grid
    for q in (2, 3):
        for n in range(4, 9):
            for k in range(2, n // 2 + 1):
                for t in range(1, k):
                    for r in range(1, k + 1):
                        rep = check_eigenvalue_kernel_sum(n, k, t, r, q)
                        assert rep.equal == (r <= t), (n, k, t, r, q)


def test_kernel_sum_valuation_outside_window():
    for q in (2, 3):
        for n in range(4, 9):
            for k in range(2, n // 2 + 1):
                for t in range(1, k):
                    for r in range(t + 1, k + 1):
                        assert kernel_sum_valuation(n, k, t, r, q) == choose2(t)


def test_small_sweep_all_equal():
    summary = run_identity_sweep(qs=(2, 3), max_n=5)
    assert summary.ok
    assert summary.failed == 0
    assert summary.checked > 1000
    assert summary.skipped > 0  # vanishing denominators are recorded, not failed


def test_sweep_reports_stream_deterministically():
    rows1: list[tuple] = []
    rows2: list[tuple] = []
    run_identity_sweep(
        qs=(2,), max_n=3,
        on_report=lambda r: rows1.append((r.identity_name, tuple(r.parameters.items()), r.lhs, r.rhs)),
    )
    run_identity_sweep(
        qs=(2,), max_n=3,
        on_report=lambda r: rows2.append((r.identity_name, tuple(r.parameters.items()), r.lhs, r.rhs)),
    )
    assert rows1 == rows2


def test_empty_sweep():
    summary = run_identity_sweep(qs=(2,), max_n=0)
    assert summary.checked == 0 and summary.ok
