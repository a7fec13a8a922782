import pytest

import catalog
import groebner
from core import INFINITE, InvalidInput, RunConfig, VerificationFailed, job_clock
from groebner import (IdealPresentation, TrackedBasis, _apply, buchberger, certify, check_groebner, eliminate,
                      hilbert_function, intersect, kernel_of_ring_map, minimal_free_resolution,
                      minimal_ideal_generators, standard_basis)
from linalg import hilbert_function_dense
from polyring import Field, FreeElement, ModuleOrder, MonomialOrder, PolyRing, format_poly, parse_poly


def vecs(ring, texts):
    return [FreeElement.from_polys([parse_poly(t, ring)]) for t in texts]


def test_buchberger_certifies_and_reduces(xyz):
    gb = buchberger(vecs(xyz, ["x^2 + y", "x*y"]), ModuleOrder(MonomialOrder("grevlex", xyz.weights)))
    assert check_groebner(gb)
    assert certify(gb) is gb
    # y^2 = y*(x^2 + y) - x*(x*y)
    assert gb.contains(parse_poly("y^2", xyz))
    nf = gb.normal_form(parse_poly("x^3 + z", xyz))
    assert gb.normal_form(nf.components()[0]) == nf


def test_reduced_basis_does_not_depend_on_generator_order(xyz):
    order = ModuleOrder(MonomialOrder("grevlex", xyz.weights))
    a = buchberger(vecs(xyz, ["x^2 - y*z", "x*y - z^2", "y^2 - x*z"]), order)
    b = buchberger(vecs(xyz, ["y^2 - x*z", "x*y - z^2", "x^2 - y*z"]), order)
    assert sorted(map(format_poly, a.polys())) == sorted(map(format_poly, b.polys()))


def test_membership_and_same_ideal(make_ideal):
    I = make_ideal(["x", "y"], ["x^2", "x*y", "y^2"])
    J = make_ideal(["x", "y"], ["x^2 + x*y", "x*y", "y^2 - x*y"])
    assert I.contains(parse_poly("x^3 - 2*x*y^2", I.ring))
    assert not I.contains(parse_poly("x", I.ring))
    assert I.same_ideal(J)
    assert I.is_proper()
    assert not make_ideal(["x"], ["x", "x + 1"]).is_proper()


@pytest.mark.parametrize("build, dim", [
    (lambda: catalog.artinian_Zr(3), 4),
    (lambda: catalog.fat_point(3), 5),
    (lambda: catalog.fat_point(4), 6),
    (lambda: catalog.monomial_curve_Y(3), INFINITE),
])
def test_quotient_dimension(build, dim):
    assert build().quotient_dimension() == dim


def test_quotient_dimension_agrees_over_a_prime_field():
    I = catalog.fat_point(3)
    assert I.with_field(Field(32003)).quotient_dimension() == I.quotient_dimension()


@pytest.mark.slow
@pytest.mark.parametrize("d", catalog.default_catalog(), ids=lambda d: d.label)
def test_catalog_dimensions_agree_over_a_prime_field(d, cfg, prime_cfg):
    I = catalog.build(d, cfg)
    J = catalog.build(d, prime_cfg)
    assert J.ring.field.p == prime_cfg.field
    assert hilbert_function(J.gb(), 8) == hilbert_function(I.gb(), 8)
    assert J.quotient_dimension() == I.quotient_dimension()


def test_standard_basis_of_an_artinian_quotient():
    basis = standard_basis(catalog.artinian_Zr(2).gb())
    assert [e for _, e in basis] == [(0, 0), (0, 1), (1, 0)]
    with pytest.raises(InvalidInput):
        standard_basis(catalog.monomial_curve_Y(2).gb())


@pytest.mark.parametrize("build", [
    lambda: catalog.artinian_Zr(3),
    lambda: catalog.fat_point(3),
    lambda: catalog.cone_over_rnc(3),
    lambda: catalog.rational_partition_curve((2, 1, 1)),
    lambda: catalog.monomial_curve_Y(3),
])
def test_hilbert_function_matches_dense_linear_algebra(build):
    I = build()
    assert hilbert_function(I.gb(), 8) == hilbert_function_dense(I.ring, I.generators, 8)


def test_syzygies_compose_to_zero_and_lift(make_ideal):
    I = make_ideal(["x", "y", "z"], ["x*y", "x*z", "y*z"])
    gens = [FreeElement.from_polys([g]) for g in I.generators]
    tb = TrackedBasis(gens, [0])
    syz = tb.syzygies()
    assert len(syz) >= 2
    for s in syz:
        assert _apply(gens, s).is_zero()
    target = FreeElement.from_polys([parse_poly("x^2*y + y^2*z", I.ring)])
    coeffs = tb.lift(target)
    total = sum((c * g for c, g in zip(coeffs, I.generators)), I.ring.zero())
    assert total == target.components()[0]
    with pytest.raises(InvalidInput):
        tb.lift(FreeElement.from_polys([parse_poly("x", I.ring)]))


def test_kernel_of_ring_map_gives_the_cusp():
    t = PolyRing(["t"]).var(0)
    I = kernel_of_ring_map([t ** 2, t ** 3], ["x", "y"])
    assert I.ring.weights == (2, 3)
    ref = IdealPresentation(I.ring, [parse_poly("x^3 - y^2", I.ring)])
    assert I.same_ideal(ref)
    assert I.provenance["parametrization"] == ["t^2", "t^3"]


def test_kernel_of_ring_map_rejects_constant_terms():
    T = PolyRing(["t"])
    with pytest.raises(InvalidInput):
        kernel_of_ring_map([T.var(0) + 1])


def test_intersection_of_coordinate_ideals(make_ideal):
    I = make_ideal(["x", "y"], ["x"])
    J = make_ideal(["x", "y"], ["y"])
    K = intersect(I, J)
    assert K.same_ideal(make_ideal(["x", "y"], ["x*y"]))


def test_elimination(make_ideal):
    I = make_ideal(["t", "x", "y"], ["x - t^2", "y - t^3"])
    E = eliminate(I, ["x", "y"])
    assert E.ring.names == ("x", "y")
    assert E.same_ideal(IdealPresentation(E.ring, [parse_poly("x^3 - y^2", E.ring)]))


def test_minimal_generators_drop_redundant_ones():
    gens = minimal_ideal_generators(catalog.fat_point(3))
    assert len(gens) == 5
    assert all(g.degree() == 2 for g in gens)


@pytest.mark.parametrize("build, ranks", [
    (lambda: catalog.fat_point(3), [1, 5, 5, 1]),
    (lambda: catalog.monomial_curve_Y(3), [1, 3, 2]),
    (lambda: catalog.cone_over_rnc(3), [1, 3, 2]),
])
def test_minimal_free_resolution_ranks(build, ranks):
    assert minimal_free_resolution(build(), 6).ranks == ranks


@pytest.mark.slow
def test_fat_point_four_resolution_matches_closed_form():
    res = minimal_free_resolution(catalog.fat_point(4), 6)
    assert res.ranks == [1, 9, 16, 9, 1]
    assert res.ranks == catalog.fat_point_betti_formula(4)
    assert res.betti()[4] == {6: 1}


def test_resolution_needs_homogeneous_input(make_ideal):
    with pytest.raises(InvalidInput):
        minimal_free_resolution(make_ideal(["x", "y"], ["x^2 - y"]), 3)


def test_document_round_trip_keeps_the_ideal():
    I = catalog.fat_point(3)
    back = IdealPresentation.from_dict(I.to_dict())
    assert back.same_ideal(I)
    assert back.provenance == I.provenance
    with pytest.raises(InvalidInput):
        IdealPresentation.from_dict({"schema": "other/1"})


def test_bases_are_certified_only_inside_a_certifying_job(xyz, monkeypatch):
    calls = []
    real = groebner.check_groebner

    def counting(gb):
        calls.append(len(gb))
        return real(gb)

    monkeypatch.setattr(groebner, "check_groebner", counting)
    gens = vecs(xyz, ["x^2 - y*z", "x*y - z^2"])
    order = ModuleOrder(MonomialOrder("grevlex", xyz.weights))
    buchberger(gens, order)
    assert calls == []
    with job_clock(RunConfig(certify=False)):
        buchberger(gens, order)
    assert calls == []
    with job_clock(RunConfig()):
        buchberger(gens, order)
        TrackedBasis(gens, [0])
    assert len(calls) == 2


def test_a_basis_failing_the_certificate_is_rejected(xyz, monkeypatch):
    monkeypatch.setattr(groebner, "check_groebner", lambda gb: False)
    with job_clock(RunConfig()):
        with pytest.raises(VerificationFailed):
            buchberger(vecs(xyz, ["x*y"]), ModuleOrder(MonomialOrder("grevlex", xyz.weights)))
