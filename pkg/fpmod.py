"""
Finitely presented modules over B = R/I, always stored as data over R:
M = R^gens / (relations + I * R^gens), graded by gen_degrees when everything is homogeneous.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence

from core import INFINITE, InvalidInput, dim_value
from groebner import (GroebnerBasis, IdealPresentation, TrackedBasis, _Engine,
                      _quotient_basis, standard_monomial_dimension, standard_monomials_at,
                      submodule_basis, _finite_at)
from polyring import FreeElement, ModuleOrder, MonomialOrder, Poly, format_poly, wdeg

log = logging.getLogger(__name__)


class Support(str, Enum):
    ORIGIN = "ORIGIN"
    ELSEWHERE = "ELSEWHERE"
    INDETERMINATE = "INDETERMINATE"


@dataclass
class FPModule:
    over: IdealPresentation
    gens: int
    relations: List[FreeElement]
    gen_degrees: List[int]
    _gb: Optional[GroebnerBasis] = field(default=None, repr=False, compare=False)

    SCHEMA = "fp-module/1"

    def __post_init__(self):
        if len(self.gen_degrees) != self.gens:
            raise InvalidInput("one degree per generator expected")
        for r in self.relations:
            if r.rank != self.gens or r.ring != self.ring:
                raise InvalidInput("relation outside the covering free module")
        self.relations = [r for r in self.relations if r.terms]

    @property
    def ring(self):
        return self.over.ring

    @classmethod
    def free(cls, over: IdealPresentation, degrees: Sequence[int]) -> "FPModule":
        return cls(over, len(degrees), [], list(degrees))

    @classmethod
    def zero(cls, over: IdealPresentation) -> "FPModule":
        return cls(over, 0, [], [])

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            ring = self.ring
            if self.gens == 0:
                order = ModuleOrder(MonomialOrder("grevlex", ring.weights))
                self._gb = GroebnerBasis(ring, 0, order, [], [])
            else:
                self._gb = submodule_basis(self.relations, self.gen_degrees, self.over,
                                           rank=self.gens, ring=ring)
        return self._gb

    def basis_vector(self, i: int) -> FreeElement:
        return FreeElement.basis(self.ring, self.gens, i)

    def is_graded(self) -> bool:
        return self.over.is_homogeneous() and all(
            r.is_homogeneous(self.gen_degrees) for r in self.relations)

    def contains(self, v: FreeElement) -> bool:
        """v lies in the relation submodule (v is zero in M)."""
        if self.gens == 0:
            return True
        return self.gb().contains(v)

    def dimension(self):
        return finite_length_dimension(self)

    def histogram(self) -> Dict[int, int]:
        return grading_histogram(self)

    def is_zero(self) -> bool:
        return self.dimension() == 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "schema": self.SCHEMA,
            "ring": {"variables": list(self.ring.names), "weights": list(self.ring.weights),
                     "field": self.ring.field.name},
            "ideal": [format_poly(g) for g in self.over.generators],
            "gens": self.gens,
            "gen_degrees": list(self.gen_degrees),
            "relations": [[format_poly(p) for p in r.components()] for r in self.relations],
            "dimension": dim_value(self.dimension()),
        }


@dataclass
class ModuleMap:
    """columns[i] is the image of the i-th source generator in the target's covering module."""
    source: FPModule
    target: FPModule
    columns: List[FreeElement]

    def __post_init__(self):
        if len(self.columns) != self.source.gens:
            raise InvalidInput("one column per source generator expected")
        for c in self.columns:
            if c.rank != self.target.gens:
                raise InvalidInput("column outside the target's covering module")

    def apply(self, v: FreeElement) -> FreeElement:
        out = FreeElement(self.target.ring, self.target.gens, {})
        for i, p in enumerate(v.components()):
            if p.terms:
                out = out + self.columns[i].mul_poly(p)
        return out

    def is_well_defined(self) -> bool:
        return all(self.target.contains(self.apply(r)) for r in self.source.relations)

    def check(self) -> "ModuleMap":
        if not self.is_well_defined():
            raise InvalidInput("map does not send source relations into target relations")
        return self


def subquotient(over: IdealPresentation, rank: int, shifts: Sequence[int],
                gens: Sequence[FreeElement], rels: Sequence[FreeElement]) -> FPModule:
    """Presentation of (<gens> + N) / N inside (R/I)^rank, N = <rels> + I * R^rank."""
    ring = over.ring
    order = ModuleOrder(MonomialOrder("grevlex", ring.weights), shifts, "top")
    quot = _quotient_basis(over, ring, order.mono)
    eng = _Engine(ring, rank, order, quot, "subquotient")
    for r in rels:
        if r.terms:
            h = eng.reduce(r.terms)
            if h:
                eng.insert(h)
    eng.run()
    kept: List[FreeElement] = []
    for g in sorted((g for g in gens if g.terms), key=lambda g: g.degree(shifts)):
        if eng.add(g.terms):
            kept.append(g)
    if not kept:
        return FPModule.zero(over)
    degrees = [g.degree(shifts) for g in kept]
    tb = TrackedBasis(kept + [r for r in rels if r.terms], shifts, over, rank=rank, ring=ring,
                      what="subquotient relations")
    a = len(kept)
    relations = []
    for s in tb.syzygies():
        proj = {(p, e): c for (p, e), c in s.terms.items() if p < a}
        if proj:
            relations.append(FreeElement(ring, a, proj))
    return FPModule(over, a, relations, degrees)


def kernel_generators(m: ModuleMap) -> List[FreeElement]:
    """Generators (in the source's covering module) of the preimage of the target relations."""
    src, tgt = m.source, m.target
    ring = src.ring
    if src.gens == 0:
        return []
    s = src.gens
    cols = list(m.columns) + list(tgt.relations)
    if tgt.gens == 0:
        return [src.basis_vector(i) for i in range(s)]
    tb = TrackedBasis(cols, tgt.gen_degrees, src.over, rank=tgt.gens, ring=ring, what="kernel")
    out = []
    for v in tb.syzygies():
        proj = {(p, e): c for (p, e), c in v.terms.items() if p < s}
        if proj:
            out.append(FreeElement(ring, s, proj))
    return out


def kernel_over_quotient(m: ModuleMap) -> FPModule:
    src = m.source
    if src.gens == 0:
        return FPModule.zero(src.over)
    return subquotient(src.over, src.gens, src.gen_degrees, kernel_generators(m), src.relations)


def cokernel(m: ModuleMap) -> FPModule:
    tgt = m.target
    return subquotient(tgt.over, tgt.gens, tgt.gen_degrees,
                       [tgt.basis_vector(i) for i in range(tgt.gens)],
                       list(tgt.relations) + list(m.columns))


def homology(at: FPModule, left: ModuleMap, right: ModuleMap) -> FPModule:
    """ker(right) / im(left) at the module `at`."""
    if left.target is not at or right.source is not at:
        if left.target.gens != at.gens or right.source.gens != at.gens:
            raise InvalidInput("maps do not meet at the given module")
    for c in left.columns:
        if not right.target.contains(right.apply(c)):
            raise InvalidInput("not a complex: composition is nonzero over B")
    return subquotient(at.over, at.gens, at.gen_degrees, kernel_generators(right),
                       list(at.relations) + list(left.columns))


def finite_length_dimension(M: FPModule):
    if M.gens == 0:
        return 0
    return standard_monomial_dimension(M.gb())


def grading_histogram(M: FPModule) -> Dict[int, int]:
    """{degree: dimension} of a finite-length graded module."""
    if M.gens == 0:
        return {}
    if not M.is_graded():
        raise InvalidInput("grading histogram of a non-graded module")
    gb = M.gb()
    n = M.ring.ngens
    w = M.ring.weights
    out: Dict[int, int] = {}
    for pos in range(M.gens):
        leads = gb.leads_at(pos)
        if not _finite_at(leads, n):
            raise InvalidInput("module is not of finite length")
        for e in standard_monomials_at(leads, n):
            d = wdeg(e, w) + M.gen_degrees[pos]
            out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


def annihilated_by(M: FPModule, f: Poly) -> bool:
    if f.ring != M.ring:
        raise InvalidInput("annihilator test across rings")
    return all(M.contains(M.basis_vector(i).mul_poly(f)) for i in range(M.gens))


def support_is_origin_only(M: FPModule, bound: int = 512) -> Support:
    """ORIGIN iff every variable to the power dim(M) kills M; a finite module supported at
    the origin only has length dim(M), so failing that power means other support points."""
    D = finite_length_dimension(M)
    if D == 0:
        return Support.ORIGIN
    if D == INFINITE or (isinstance(D, float) and math.isinf(D)):
        return Support.ELSEWHERE
    if D > bound:
        return Support.INDETERMINATE
    ring = M.ring
    for j in range(ring.ngens):
        if not annihilated_by(M, ring.var(j) ** int(D)):
            return Support.ELSEWHERE
    return Support.ORIGIN
