import logging

import pytest

import catalog
from catalog import Family, SingularityDescriptor
from core import INFINITE, ConstructionFailed, InvalidInput, VerificationFailed
from groebner import minimal_free_resolution
from polyring import PolyRing


def test_partitions():
    assert catalog.partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(catalog.partitions(6)) == 11
    with pytest.raises(InvalidInput):
        catalog.partitions(0)


def test_descriptor_normalizes_and_validates():
    d = SingularityDescriptor("rational-partition", (1, 2, 1))
    assert d.params == (2, 1, 1)
    assert d.label == "rational-partition(2,1,1)"
    assert d.embdim == 4 and d.branches == 3
    assert SingularityDescriptor(Family.ELLIPTIC_PARTITION_GENERAL, (2, 2)).embdim == 3
    assert SingularityDescriptor(Family.CONE_RNC, (4,)).embdim == 5
    for family, params in [("fat-point", (1,)), ("elliptic-general", (3,)), ("elliptic-general", (2, 1)),
                           ("artinian-zr", (2, 3)), ("cone-rnc", (0,))]:
        with pytest.raises(InvalidInput):
            SingularityDescriptor(family, params)


def test_descriptor_from_command_line_values():
    assert SingularityDescriptor.from_args("fat-point", r=4).params == (4,)
    assert SingularityDescriptor.from_args("cone-rnc", n=5).params == (5,)
    assert SingularityDescriptor.from_args("artinian-zr", n=3).params == (3,)
    with pytest.raises(InvalidInput):
        SingularityDescriptor.from_args("rational-partition")
    with pytest.raises(InvalidInput):
        SingularityDescriptor.from_args("no-such-family", r=3)


def test_monomial_curve_generators():
    I = catalog.monomial_curve_Y(3)
    assert I.ring.weights == (3, 4, 5)
    assert len(I.generators) == 3
    assert I.is_homogeneous()


def test_partition_curve_matches_the_intersection_of_its_branches():
    I = catalog.rational_partition_curve((2, 1))
    assert I.same_ideal(catalog.wedge_by_intersection((2, 1)))


def test_monomial_elliptic_curve_is_the_semigroup_kernel():
    I = catalog.elliptic_partition_monomial(3)
    assert I.ring.weights == (4, 5, 6)
    assert I.is_homogeneous()
    assert I.provenance["family"] == "elliptic-monomial"


@pytest.mark.parametrize("branches_fn, delta", [
    (lambda: catalog.partition_branches((2,)), 1),
    (lambda: catalog.partition_branches((3,)), 2),
    (lambda: catalog.partition_branches((4,)), 3),
    (lambda: catalog.partition_branches((2, 1)), 2),
    (lambda: catalog.partition_branches((1, 1, 1)), 2),
])
def test_delta_invariant(branches_fn, delta):
    assert catalog.delta_invariant(branches_fn()) == delta


def test_delta_invariant_rejects_a_branch_off_the_origin():
    t = PolyRing(["t"]).var(0)
    with pytest.raises(InvalidInput):
        catalog.delta_invariant([[t + 1, t]])


@pytest.mark.parametrize("n", [3, 4])
def test_cone_section_delta_by_branches_and_hilbert_function(n):
    sec = catalog.rnc_cone_section(n)
    assert sec.delta_branches == sec.delta_hilbert == n - 1
    assert sec.ideal.ring.ngens == n


def test_intersection_number_of_the_axes(make_ideal):
    I = make_ideal(["x", "y"], ["y"])
    J = make_ideal(["x", "y"], ["x"])
    assert catalog.intersection_number(I, J) == 1
    with pytest.raises(InvalidInput):
        catalog.intersection_number(I, I)


@pytest.mark.parametrize("gens, gaps, t", [
    ((2, 3), [1], 1),
    ((3, 4, 5), [1, 2], 2),
    ((4, 5, 6, 7), [1, 2, 3], 3),
    ((4, 5, 6), [1, 2, 3, 7], 1),
])
def test_semigroup_gaps_and_type(gens, gaps, t):
    assert catalog.semigroup_gaps(gens) == gaps
    assert catalog.cm_type_semigroup(gens) == t


def test_semigroup_needs_coprime_generators():
    with pytest.raises(InvalidInput):
        catalog.semigroup_gaps((2, 4))


def test_cm_type_of_wedges():
    assert catalog.cm_type_wedge((2, 1)) == 2
    assert catalog.cm_type_wedge((1, 1, 1)) == 2
    assert catalog.cm_type_wedge((3,)) == 2


@pytest.mark.parametrize("params, delta, mu, t, e", [
    ((3,), 2, 4, 2, 5),
    ((2, 1), 2, 3, 2, 4),
    ((1, 1, 1, 1), 3, 3, 3, 5),
])
def test_rational_invariants(params, delta, mu, t, e):
    inv = catalog.invariants(SingularityDescriptor(Family.RATIONAL_PARTITION, params))
    assert (inv.delta, inv.milnor, inv.cm_type, inv.smoothing) == (delta, mu, t, e)


@pytest.mark.parametrize("parts", [p for n in range(3, 7) for p in catalog.partitions(n)])
def test_rational_invariants_for_every_partition(parts):
    n, r = sum(parts), len(parts)
    inv = catalog.invariants(SingularityDescriptor(Family.RATIONAL_PARTITION, parts))
    assert (inv.delta, inv.milnor, inv.cm_type) == (n - 1, 2 * n - r - 1, n - 1)
    assert inv.cm_type_source == "computed"


def test_monomial_elliptic_invariants():
    inv = catalog.invariants(SingularityDescriptor(Family.ELLIPTIC_PARTITION_MONOMIAL, (4,)))
    assert inv.delta == 5
    assert inv.milnor == 10
    assert inv.cm_type == 1
    assert inv.semigroup == [5, 6, 7, 8]
    expected = catalog.expected(SingularityDescriptor(Family.ELLIPTIC_PARTITION_MONOMIAL, (4,)))
    assert expected["e"] == inv.smoothing


def test_invariants_are_for_curves_only():
    with pytest.raises(InvalidInput):
        catalog.invariants(SingularityDescriptor(Family.FAT_POINT, (3,)))


def test_milnor_relation_is_enforced():
    with pytest.raises(VerificationFailed):
        catalog.CurveInvariants(delta=2, branches=1, milnor=3, cm_type=1, embdim=2)


@pytest.mark.slow
def test_elliptic_general_position_is_certified():
    I = catalog.elliptic_partition_general((2, 2), seed=1)
    assert I.provenance["delta"] == 4
    assert I.provenance["intersection"] == 2
    assert I.quotient_dimension() == INFINITE


def test_fat_point_closed_forms():
    assert catalog.fat_point_betti_formula(3) == [1, 5, 5, 1]
    assert catalog.fat_point_betti_formula(4) == [1, 9, 16, 9, 1]
    counts = catalog.fat_point_quadric_counts(3)
    assert counts["computed_generators"] == 5
    assert counts["computed_quadrics"] == 5
    assert counts["betti_b1"] == 5


@pytest.mark.parametrize("n", [2, 3, 4, 5, pytest.param(6, marks=pytest.mark.slow)])
def test_eagon_northcott_ranks(n):
    en = catalog.eagon_northcott_for(catalog.cone_over_rnc(n))
    assert en.ranks == [catalog.ENComplex.expected_rank(n, i) for i in range(n)]
    assert len(en.minors()) == n * (n - 1) // 2


def test_eagon_northcott_matches_the_minimal_resolution():
    I = catalog.cone_over_rnc(4)
    assert minimal_free_resolution(I, 6).ranks == catalog.eagon_northcott_for(I).ranks == [1, 6, 8, 3]


def test_eagon_northcott_needs_a_determinantal_ideal():
    with pytest.raises(InvalidInput):
        catalog.eagon_northcott_for(catalog.fat_point(3))


def test_expected_values_come_from_closed_forms():
    assert catalog.expected_tangent(SingularityDescriptor(Family.ARTINIAN_ZR, (3,))) == {0: 9, 1: 15, 2: 18}
    assert catalog.expected_tangent(SingularityDescriptor(Family.FAT_POINT, (4,)))[2] == 10
    assert catalog.expected_tangent(SingularityDescriptor(Family.CONE_RNC, (4,))) == {2: 3}
    # below the stated range nothing is claimed
    assert catalog.expected_tangent(SingularityDescriptor(Family.ARTINIAN_ZR, (2,))) == {}


def test_build_honours_the_field(prime_cfg):
    I = catalog.build(SingularityDescriptor(Family.FAT_POINT, (3,)), prime_cfg)
    assert I.ring.field.p == prime_cfg.field
    assert I.provenance["seed"] == 1


def test_manifest_is_sorted_and_labelled(cfg):
    m = catalog.catalog_manifest(cfg)
    assert m["schema"] == "catalog/1"
    labels = [e["label"] for e in m["entries"]]
    assert labels[0].startswith("rational-partition")
    assert "fat-point(3)" in labels
    assert len(labels) == len(set(labels))


def test_eagon_northcott_ranks_for_six_columns():
    assert [catalog.ENComplex.expected_rank(6, i) for i in range(6)] == [1, 15, 40, 45, 24, 5]


@pytest.mark.slow
def test_elliptic_general_invariants_take_the_type_from_gorenstein():
    inv = catalog.invariants(SingularityDescriptor(Family.ELLIPTIC_PARTITION_GENERAL, (2, 2, 1)))
    assert (inv.delta, inv.branches, inv.milnor) == (5, 3, 8)
    assert inv.cm_type == 1
    assert inv.to_dict()["t_source"] == "gorenstein"


def test_retries_log_only_seeds_that_are_tried(monkeypatch, caplog):
    def failing(parts, seed, fld):
        raise ConstructionFailed(f"seed {seed} rejected")

    monkeypatch.setattr(catalog, "_elliptic_general_once", failing)
    caplog.set_level(logging.INFO, logger="catalog")
    with pytest.raises(ConstructionFailed):
        catalog.elliptic_partition_general((2, 2), seed=1, retries=2)
    retried = [rec.getMessage() for rec in caplog.records if "retry seed=" in rec.getMessage()]
    assert [m.split("seed=")[1].split(":")[0] for m in retried] == ["2", "3"]
