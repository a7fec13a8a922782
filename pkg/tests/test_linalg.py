import random
from fractions import Fraction

import numpy as np
import pytest

from linalg import Echelon, QuotientSpace, hilbert_function_dense, kernel_basis, nullity, rank, rank_mod_p
from polyring import Field, PolyRing, parse_poly

QQ = Field()


def test_echelon_reports_dependencies():
    ech = Echelon(QQ)
    assert ech.add({"a": 1, "b": 2}, tag=0) is None
    assert ech.add({"b": 1}, tag=1) is None
    rel = ech.add({"a": 3, "b": 4}, tag=2)
    # 3*v0 - 2*v1 = (3, 4)
    assert rel == {2: 1, 0: -3, 1: 2}
    assert ech.rank == 2
    assert ech.contains({"a": Fraction(1, 2), "b": 7})


def test_kernel_basis_one_relation_per_dependent_row():
    rows = [{0: 1, 1: 1}, {0: 2, 1: 2}, {1: 1}, {0: 1}]
    ker = kernel_basis(rows, QQ)
    assert len(ker) == 2
    for rel in ker:
        total = {}
        for i, c in rel.items():
            for k, a in rows[i].items():
                total[k] = total.get(k, 0) + c * a
        assert all(v == 0 for v in total.values())


def test_quotient_space_coordinates():
    qs = QuotientSpace(QQ, [{"x": 1}], [{"x": 1}, {"y": 1}, {"x": 5, "y": 2}])
    assert qs.dim == 1
    assert qs.coords({"x": 9, "y": 3}) == [3]


def test_rank_over_prime_field_matches_numpy_path():
    F = Field(5)
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {1: 1}]
    assert rank(rows, F) == 2
    assert rank(rows, QQ) == 2
    assert nullity(rows, 2, F) == 0
    assert rank_mod_p(np.array([[1, 2], [3, 6]]), 7) == 1
    assert rank_mod_p(np.array([[1, 2], [3, 1]]), 5) == 1
    assert rank([], QQ) == 0


@pytest.mark.parametrize("gens, expected", [
    (["x^2", "y^2"], [1, 2, 1, 0]),
    (["x*y", "x^2", "y^2"], [1, 2, 0, 0]),
    (["x^2 - y^2", "x*y"], [1, 2, 1, 0]),
])
def test_dense_hilbert_function(gens, expected):
    R = PolyRing(["x", "y"])
    assert hilbert_function_dense(R, [parse_poly(g, R) for g in gens], 3) == expected


@pytest.mark.parametrize("p", [32003, 4294967311, 2 ** 61 - 1])
def test_modular_rank_is_exact_for_large_primes(p):
    rng = random.Random(7)
    fld = Field(p)
    for _ in range(20):
        u = [rng.randrange(1, p) for _ in range(4)]
        v = [rng.randrange(1, p) for _ in range(4)]
        w = [(a + 7 * b) % p for a, b in zip(u, v)]
        assert rank_mod_p([u, v, w], p) == 2
        rows = [dict(enumerate(x)) for x in (u, v, w)]
        assert rank(rows, fld) == 2
