import itertools
from fractions import Fraction

import pytest

from qsteiner.exactq import gauss_binom, q_pow
from qsteiner.grassmann import (
    SchemeInstance,
    eberlein_eigenvalue,
    eigenspace_multiplicity,
    eisfeld_eigenvalue,
    verify_spectrum,
)
from qsteiner.linalg import ExactMatrix, mat_mul


def test_eberlein_examples():
    for x in range(4):
        assert eberlein_eigenvalue(8, 3, 2, 0, x) == 1
    assert eberlein_eigenvalue(4, 2, 2, 2, 1) == -4
    assert eberlein_eigenvalue(4, 2, 2, 2, 2) == 2


def test_eisfeld_examples():
    assert eisfeld_eigenvalue(4, 2, 2, 1, 0) == 18
    assert eisfeld_eigenvalue(4, 2, 2, 2, 1) == -4
    for r in range(3):
        assert eisfeld_eigenvalue(4, 2, 2, 0, r) == 1
    with pytest.raises(ValueError):
        eisfeld_eigenvalue(4, 2, 2, 3, 0)
    with pytest.raises(ValueError):
        eisfeld_eigenvalue(4, 2, 2, 1, 3)


def test_multiplicity_examples():
    assert eigenspace_multiplicity(4, 0, 2) == 1
    assert eigenspace_multiplicity(4, 1, 2) == 14
    assert eigenspace_multiplicity(4, 2, 2) == 20


def test_eigenvalue_formulas_agree_on_grid():
    for q in (2, 3, 4, 5):
        for n in range(1, 11):
            for k in range(n // 2 + 1):
                for i in range(k + 1):
                    for r in range(min(k, n - k) + 1):
                        assert eisfeld_eigenvalue(n, k, q, i, r) == eberlein_eigenvalue(
                            n, k, q, i, r
                        ), (n, k, q, i, r)


def test_valency_is_r0_eigenvalue_and_row_sum():
    scheme = SchemeInstance(4, 2, 2)
    for i in range(3):
        valency = eisfeld_eigenvalue(4, 2, 2, i, 0)
        assert valency == q_pow(i * i, 2) * gauss_binom(2, i, 2) * gauss_binom(2, i, 2)
        assert set(scheme.adjacency_matrix(i).row_sums()) == {valency}


def test_adjacency_basics():
    scheme = SchemeInstance(4, 2, 2)
    assert scheme.adjacency_matrix(0) == ExactMatrix.identity(35)
    assert set(scheme.adjacency_matrix(1).row_sums()) == {18}
    assert set(scheme.adjacency_matrix(2).row_sums()) == {16}
    total = scheme.adjacency_matrix(0) + scheme.adjacency_matrix(1) + scheme.adjacency_matrix(2)
    assert total == ExactMatrix.filled(35, 35, 1)
    for i in range(3):
        a = scheme.adjacency_matrix(i)
        assert all(
            a.data[x][y] == a.data[y][x] for x in range(35) for y in range(35)
        )
    with pytest.raises(ValueError):
        scheme.adjacency_matrix(3)


def test_scheme_guard():
    with pytest.raises(ValueError):
        SchemeInstance(8, 4, 2)  # [8 4]_2 = 200787 > 2000


def test_verify_spectrum_small_instance():
    report = verify_spectrum(SchemeInstance(4, 2, 2))
    assert report.ok
    assert report.multiplicities == [1, 14, 20]
    rel2 = report.relations[2]
    by_value = {c.value: c for c in rel2.rank_checks}
    assert by_value[Fraction(2)].rank == 15
    assert by_value[Fraction(2)].expected_rank == 15
    # trace identity: 1*16 + 14*(-4) + 20*2 = 0
    assert sum(m * v for _, v, m in rel2.eigenvalues) == 0
    rel0 = report.relations[0]
    assert len(rel0.rank_checks) == 1 and rel0.rank_checks[0].rank == 0


def test_association_scheme_closure_structure_constants():
    scheme = SchemeInstance(4, 2, 2)
    size = scheme.size
    for i, j in itertools.product(range(3), repeat=2):
        prod = mat_mul(scheme.adjacency_matrix(i), scheme.adjacency_matrix(j))
        per_relation: dict[int, set] = {}
        for x in range(size):
            for y in range(size):
                per_relation.setdefault(scheme.relation_index(x, y), set()).add(
                    prod.data[x][y]
                )
        # product is constant on every relation class: lies in the span of A_m
        assert all(len(vals) == 1 for vals in per_relation.values()), (i, j)


def test_spectrum_report_serialization():
    report = verify_spectrum(SchemeInstance(4, 2, 2))
    d = report.to_dict()
    assert d["ok"] is True
    assert d["size"] == 35
    assert len(d["relations"]) == 3
    assert d["relations"][1]["eigenvalues"][0] == {
        "r": 0,
        "value": "18",
        "multiplicity": 1,
    }
