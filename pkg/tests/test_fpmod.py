import pytest

import catalog
from core import InvalidInput
from fpmod import (FPModule, ModuleMap, Support, annihilated_by, cokernel, grading_histogram, homology,
                   kernel_over_quotient, support_is_origin_only)
from polyring import FreeElement


def times_x(I):
    """Multiplication by the first variable on B = R/I."""
    B = FPModule.free(I, [0])
    x = I.ring.var(0)
    return B, ModuleMap(B, B, [FreeElement.from_polys([x])])


def test_kernel_and_cokernel_of_multiplication(make_ideal):
    I = make_ideal(["x"], ["x^2"])
    B, m = times_x(I)
    assert B.dimension() == 2
    assert kernel_over_quotient(m).dimension() == 1
    assert cokernel(m).dimension() == 1


def test_homology_of_an_exact_complex(make_ideal):
    B, m = times_x(make_ideal(["x"], ["x^2"]))
    assert homology(B, m, m).dimension() == 0


def test_homology_rejects_a_non_complex(make_ideal):
    B, m = times_x(make_ideal(["x"], ["x^3"]))
    with pytest.raises(InvalidInput, match="not a complex"):
        homology(B, m, m)


def test_map_check_catches_ill_defined_maps(make_ideal):
    over = make_ideal(["x"], [])
    x = over.ring.var(0)
    source = FPModule(over, 1, [FreeElement.from_polys([x])], [0])
    target = FPModule.free(over, [0])
    m = ModuleMap(source, target, [FreeElement.basis(over.ring, 1, 0)])
    assert not m.is_well_defined()
    with pytest.raises(InvalidInput):
        m.check()


def test_grading_histogram():
    M = FPModule.free(catalog.artinian_Zr(2), [0])
    assert grading_histogram(M) == {0: 1, 1: 2}
    shifted = FPModule.free(catalog.artinian_Zr(2), [-1])
    assert shifted.histogram() == {-1: 1, 0: 2}


def test_grading_histogram_needs_finite_length():
    M = FPModule.free(catalog.monomial_curve_Y(2), [0])
    with pytest.raises(InvalidInput):
        grading_histogram(M)


def test_annihilation(make_ideal):
    I = make_ideal(["x", "y"], ["x^2", "y^2"])
    M = FPModule.free(I, [0])
    x, y = I.ring.gens()
    assert annihilated_by(M, x * x)
    assert not annihilated_by(M, x * y)


@pytest.mark.parametrize("names, gens, expected", [
    (["x", "y"], ["x^2", "y^2"], Support.ORIGIN),
    (["x"], ["x^2 - x"], Support.ELSEWHERE),
    (["x", "y"], ["x*y"], Support.ELSEWHERE),
])
def test_support(make_ideal, names, gens, expected):
    M = FPModule.free(make_ideal(names, gens), [0])
    assert support_is_origin_only(M) == expected


def test_zero_module(make_ideal):
    Z = FPModule.zero(make_ideal(["x"], ["x^2"]))
    assert Z.is_zero()
    assert Z.histogram() == {}
    assert support_is_origin_only(Z) == Support.ORIGIN


def test_document_reports_dimension(make_ideal):
    B, m = times_x(make_ideal(["x"], ["x^2"]))
    doc = cokernel(m).to_dict()
    assert doc["schema"] == "fp-module/1"
    assert doc["dimension"] == 1
    assert doc["ring"]["field"] == "QQ"
