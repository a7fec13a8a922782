import pytest

import catalog
from core import INFINITE, InvalidInput, RunConfig
from cotangent import (AUTHORITATIVE, Method, artinian_oracle, artinian_oracle_all, ls_truncation,
                       oracle_applies, t0_artinian, t1, t1_grading, t2, t2_full_relations, tangent_report,
                       tjurina_number)
from polyring import Field, parse_poly


def test_truncation_of_the_square_of_the_maximal_ideal():
    lst = ls_truncation(catalog.artinian_Zr(3))
    info = lst.to_dict()
    assert info["generators"] == 6
    assert info["relations"] == 8
    assert info["koszul"] == 15
    assert info["degrees"] == [2] * 6


def test_truncation_rejects_the_unit_ideal(make_ideal):
    with pytest.raises(InvalidInput):
        ls_truncation(make_ideal(["x"], ["x + 1"]))


@pytest.mark.parametrize("build, dims", [
    (lambda: catalog.artinian_Zr(3), {0: 9, 1: 15, 2: 18}),
    (lambda: catalog.fat_point(3), {0: 7, 1: 7, 2: 0}),
])
def test_point_schemes_engine_and_oracle(build, dims):
    I = build()
    lst = ls_truncation(I)
    assert t0_artinian(I, lst) == dims[0]
    assert t1(I, lst)[1] == dims[1]
    assert t2(I, lst)[1] == dims[2]
    res = artinian_oracle_all(I)
    assert [res.total(i) for i in (0, 1, 2)] == [dims[0], dims[1], dims[2]]


@pytest.mark.slow
def test_fat_point_four_obstructions():
    I = catalog.fat_point(4)
    assert t2(I)[1] == 10
    assert artinian_oracle(I, 2) == 10


@pytest.mark.parametrize("parts, d1, d2", [
    ((1, 1), 1, 0),
    ((1, 1, 1), 3, 0),
    ((2,), 2, 0),
])
def test_small_curves(parts, d1, d2):
    I = catalog.rational_partition_curve(parts)
    lst = ls_truncation(I)
    assert t1(I, lst)[1] == d1
    assert t2(I, lst)[1] == d2


@pytest.mark.slow
def test_wedge_of_a_cusp_and_two_lines():
    I = catalog.rational_partition_curve((2, 1, 1))
    assert t2(I)[1] == 6


def test_full_relation_module_is_at_least_the_koszul_quotient():
    I = catalog.artinian_Zr(2)
    lst = ls_truncation(I)
    assert t2_full_relations(I, lst)[1] >= t2(I, lst)[1]


def test_gradings_sum_to_the_dimension():
    I = catalog.artinian_Zr(3)
    res = t1(I)
    assert sum(t1_grading(I, res).values()) == 15


def test_tjurina_number_of_simple_singularities(make_ideal):
    R = make_ideal(["x", "y"], []).ring
    assert tjurina_number(parse_poly("x^3 - y^2", R)) == 2
    assert tjurina_number(parse_poly("x^5 + y^2", R)) == 4
    assert tjurina_number(parse_poly("x*y", R)) == 1


def test_oracle_applies_only_to_standard_graded_artinian_quotients(make_ideal):
    assert oracle_applies(catalog.artinian_Zr(3))
    assert not oracle_applies(catalog.monomial_curve_Y(3))
    assert not oracle_applies(make_ideal(["x", "y"], ["x^2", "y^2 - x"]))
    with pytest.raises(InvalidInput):
        artinian_oracle(catalog.artinian_Zr(2), 3)


def test_report_cross_checks_engine_oracle_and_formula(cfg):
    I = catalog.artinian_Zr(3)
    rep = tangent_report(I, [0, 1, 2], "artinian-zr(3)", {0: 9, 1: 15, 2: 18}, cfg)
    assert rep.status == "OK"
    for i, v in {0: 9, 1: 15, 2: 18}.items():
        assert rep.value(i, Method.ENGINE) == v
        assert rep.value(i, Method.ORACLE) == v
        assert rep.value(i, Method.FORMULA) == v
    doc = rep.to_dict()
    assert doc["schema"] == "tangent-report/1"
    assert "seconds" not in doc["dims"][0]


def test_report_flags_a_disagreement(cfg):
    rep = tangent_report(catalog.artinian_Zr(3), [1], "artinian-zr(3)", {1: 14}, cfg)
    assert rep.status == "FAILED"
    assert rep.disagreements() == [1]


def test_experimental_values_never_decide_the_status(cfg):
    rep = tangent_report(catalog.fat_point(3), [3], "fat-point(3)", {3: (999, "EXPERIMENTAL")}, cfg)
    assert Method.EXPERIMENTAL not in AUTHORITATIVE
    assert rep.status == "OK"
    assert all(e.method == Method.EXPERIMENTAL for e in rep.entries)


def test_non_isolated_singularity_reports_infinity(make_ideal):
    rep = tangent_report(make_ideal(["x", "y", "z"], ["x*y"]), [1], "plane pair", None, RunConfig(oracle=False))
    assert rep.value(1) == INFINITE
    assert rep.to_dict()["dims"][0]["value"] == "INFINITE"
    assert any("not isolated" in n for n in rep.notes)


def test_report_rejects_unknown_indices(cfg):
    with pytest.raises(InvalidInput):
        tangent_report(catalog.artinian_Zr(2), [4], cfg=cfg)


def test_report_certifies_every_basis_it_computes(cfg, monkeypatch):
    import groebner

    calls = []
    real = groebner.check_groebner

    def counting(gb):
        calls.append(gb.rank)
        return real(gb)

    monkeypatch.setattr(groebner, "check_groebner", counting)
    rep = tangent_report(catalog.fat_point(3), [1, 2], "fat-point(3)", {1: 7, 2: 0}, cfg)
    assert rep.status == "OK"
    assert calls
    assert any(r > 1 for r in calls)


def test_oracle_over_a_prime_above_the_machine_word():
    I = catalog.artinian_Zr(3).with_field(Field(4294967311))
    res = artinian_oracle_all(I)
    assert [res.total(i) for i in (0, 1, 2)] == [9, 15, 18]


@pytest.mark.slow
@pytest.mark.parametrize("r", [4, 5, 6])
def test_square_of_the_maximal_ideal_engine_and_oracle(r):
    I = catalog.artinian_Zr(r)
    dims = [r * r, (r - 1) * r * (r + 2) // 2, r * (r + 1) * (2 * r * r - 2 * r - 3) // 6]
    lst = ls_truncation(I)
    assert [t0_artinian(I, lst), t1(I, lst)[1], t2(I, lst)[1]] == dims
    res = artinian_oracle_all(I)
    assert [res.total(i) for i in (0, 1, 2)] == dims


def _rational_curve_dims(parts):
    n, r = sum(parts), len(parts)
    return n * (n - 1) - r, n * (n - 1) * (n - 3) // 2


@pytest.mark.parametrize("parts", catalog.partitions(3))
def test_rational_partition_curves_of_embedding_dimension_three(parts):
    I = catalog.rational_partition_curve(parts)
    lst = ls_truncation(I)
    assert (t1(I, lst)[1], t2(I, lst)[1]) == _rational_curve_dims(parts)


@pytest.mark.slow
@pytest.mark.parametrize("parts", [p for n in (4, 5, 6) for p in catalog.partitions(n)])
def test_rational_partition_curves(parts):
    I = catalog.rational_partition_curve(parts)
    lst = ls_truncation(I)
    assert (t1(I, lst)[1], t2(I, lst)[1]) == _rational_curve_dims(parts)


@pytest.mark.slow
@pytest.mark.parametrize("n", [4, 5, 6])
def test_monomial_elliptic_curves(n):
    I = catalog.elliptic_partition_monomial(n)
    lst = ls_truncation(I)
    assert t1(I, lst)[1] == n * (n + 1) // 2
    assert t2(I, lst)[1] == n * (n + 1) * (n - 4) // 6


@pytest.mark.slow
@pytest.mark.parametrize("parts", [(2, 2, 1), (3, 1, 1), (2, 1, 1, 1), (3, 2, 1), (2, 2, 2), (4, 1, 1)])
def test_elliptic_curves_in_general_position(parts):
    n, r = sum(parts) - 1, len(parts)
    I = catalog.elliptic_partition_general(parts, seed=1)
    assert I.provenance["delta"] == n + 1
    assert I.provenance["intersection"] == 2
    assert t1(I)[1] == n * (n + 1) // 2 - r + 1


@pytest.mark.slow
@pytest.mark.parametrize("n", [4, 5, 6])
def test_cone_over_the_rational_normal_curve(n):
    assert t2(catalog.cone_over_rnc(n))[1] == (n - 1) * (n - 3)
