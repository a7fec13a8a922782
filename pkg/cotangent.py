"""
Tangent cohomology of B = R/I.

T0, T1 and T2 come from the Lichtenbaum-Schlessinger truncation: generators f_1..f_k of I,
their relations s_1..s_m (a minimal generating set of the syzygies when I is homogeneous),
the relations among relations and the lifts of the trivial (Koszul) relations
f_a e_b - f_b e_a. Dualizing into B gives

    B^n --J--> B^k --S1^T--> B^m --[S2|C]^T--> B^(q+K)

with T0 = ker J, T1 = ker S1^T / im J and T2 = ker [S2|C]^T / im S1^T.
Degree conventions: a generator of Hom(E, B) dual to a basis element of degree d sits in
degree -d, so homogeneous maps of degree e land in degree e.

The dense oracle recomputes the same dimensions degree by degree for standard graded
Artinian algebras using nothing but linear algebra over the base field.
"""
import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from core import INFINITE, InvalidInput, RunConfig, VerificationFailed, dim_value, job_clock
from fpmod import (FPModule, ModuleMap, annihilated_by, grading_histogram, homology,
                   kernel_over_quotient)
from groebner import (IdealPresentation, TrackedBasis, _apply, minimal_free_resolution,
                      minimal_generators, minimal_ideal_generators)
from linalg import Echelon, QuotientSpace, kernel_basis, rank
from polyring import FreeElement, Poly, PolyRing, dot, mono_mul, monomials_of_degree

log = logging.getLogger(__name__)


def _is_finite(d) -> bool:
    return not (isinstance(d, float) and math.isinf(d))


def _transpose(vectors: Sequence[FreeElement], rank_: int, ring: PolyRing) -> List[FreeElement]:
    """Columns of the transposed matrix: entry l of column p is component p of vectors[l]."""
    cols: List[Dict] = [{} for _ in range(rank_)]
    for l, v in enumerate(vectors):
        for (p, e), c in v.terms.items():
            cols[p][(l, e)] = c
    return [FreeElement(ring, len(vectors), d) for d in cols]


# =========================
# The truncated cotangent complex
# =========================
@dataclass
class LSTruncation:
    ideal: IdealPresentation
    generators: List[Poly]
    degrees: List[int]
    relations: List[FreeElement]
    relation_degrees: List[int]
    second: List[FreeElement]
    second_degrees: List[int]
    koszul_pairs: List[Tuple[int, int]]
    koszul: List[FreeElement]
    koszul_lifts: List[FreeElement]

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def m(self) -> int:
        return len(self.relations)

    # ---- Hom(-, B) of the terms, as free B-modules
    @cached_property
    def derivations(self) -> FPModule:
        return FPModule.free(self.ideal, [-w for w in self.ring.weights])

    @cached_property
    def hom_generators(self) -> FPModule:
        return FPModule.free(self.ideal, [-d for d in self.degrees])

    @cached_property
    def hom_relations(self) -> FPModule:
        return FPModule.free(self.ideal, [-d for d in self.relation_degrees])

    def hom_obstructions(self, koszul: bool = True) -> FPModule:
        degs = [-d for d in self.second_degrees]
        if koszul:
            degs += [-(self.degrees[a] + self.degrees[b]) for a, b in self.koszul_pairs]
        return FPModule.free(self.ideal, degs)

    # ---- dual differentials
    @cached_property
    def jacobian(self) -> ModuleMap:
        ring = self.ring
        cols = [FreeElement.from_polys([f.derivative(j) for f in self.generators], ring=ring)
                for j in range(ring.ngens)]
        return ModuleMap(self.derivations, self.hom_generators, cols)

    @cached_property
    def relation_map(self) -> ModuleMap:
        return ModuleMap(self.hom_generators, self.hom_relations,
                         _transpose(self.relations, self.k, self.ring))

    def obstruction_map(self, koszul: bool = True) -> ModuleMap:
        vecs = list(self.second) + (list(self.koszul_lifts) if koszul else [])
        return ModuleMap(self.hom_relations, self.hom_obstructions(koszul),
                         _transpose(vecs, self.m, self.ring))

    def to_dict(self) -> Dict[str, object]:
        return {"generators": self.k, "relations": self.m, "second": len(self.second),
                "koszul": len(self.koszul), "degrees": list(self.degrees),
                "relation_degrees": list(self.relation_degrees)}


def ls_truncation(I: IdealPresentation) -> LSTruncation:
    if not I.is_proper():
        raise InvalidInput("unit ideal: the quotient ring is zero")
    ring = I.ring
    norm = ring.field.norm
    homogeneous = I.is_homogeneous()
    gens = minimal_ideal_generators(I) if homogeneous else list(I.generators)
    degrees = [g.degree() for g in gens]
    k = len(gens)

    relations: List[FreeElement] = []
    if k:
        relations = TrackedBasis([FreeElement.from_polys([g]) for g in gens], [0],
                                 what="relations").syzygies()
        if homogeneous:
            relations = minimal_generators(relations, degrees)
    rel_degrees = [r.degree(degrees) for r in relations]

    pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
    koszul = []
    for a, b in pairs:
        t = {(b, e): c for e, c in gens[a].terms.items()}
        t.update({(a, e): norm(-c) for e, c in gens[b].terms.items()})
        koszul.append(FreeElement(ring, k, t))

    second: List[FreeElement] = []
    lifts: List[FreeElement] = []
    if relations:
        tb = TrackedBasis(relations, degrees, what="second syzygies")
        second = tb.syzygies()
        if homogeneous:
            second = minimal_generators(second, rel_degrees)
        for kz in koszul:
            try:
                coeffs = tb.lift(kz)
            except InvalidInput as exc:
                raise VerificationFailed("a Koszul relation is not a relation") from exc
            lifts.append(FreeElement.from_polys(coeffs, ring=ring))
    elif koszul:
        raise VerificationFailed("Koszul relations without a relation module")
    second_degrees = [s.degree(rel_degrees) for s in second]

    # compositions vanish over R
    for r in relations:
        if dot(r.components(), gens).terms:
            raise VerificationFailed("relation does not vanish on the generators")
    for s in second:
        if _apply(relations, s).terms:
            raise VerificationFailed("second syzygy does not vanish on the relations")
    for kz, c in zip(koszul, lifts):
        if _apply(relations, c) != kz:
            raise VerificationFailed("Koszul lift does not reproduce the Koszul relation")

    log.info("[cotangent] truncation: %d generators, %d relations, %d second syzygies, %d Koszul",
             k, len(relations), len(second), len(koszul))
    return LSTruncation(I, gens, degrees, relations, rel_degrees, second, second_degrees,
                        pairs, koszul, lifts)


# =========================
# T^i through the engine
# =========================
def t1(I: IdealPresentation, lst: Optional[LSTruncation] = None) -> Tuple[FPModule, object]:
    lst = lst or ls_truncation(I)
    if lst.k == 0:
        M = FPModule.zero(I)
    else:
        M = homology(lst.hom_generators, lst.jacobian, lst.relation_map)
    return M, M.dimension()


def t2(I: IdealPresentation, lst: Optional[LSTruncation] = None) -> Tuple[FPModule, object]:
    lst = lst or ls_truncation(I)
    if lst.m == 0:
        M = FPModule.zero(I)
    else:
        M = homology(lst.hom_relations, lst.relation_map, lst.obstruction_map(koszul=True))
    return M, M.dimension()


def t2_full_relations(I: IdealPresentation, lst: Optional[LSTruncation] = None) -> Tuple[FPModule, object]:
    """Cokernel of Hom(E1 (x) B, B) -> Hom(relations, B), without the Koszul quotient."""
    lst = lst or ls_truncation(I)
    if lst.m == 0:
        M = FPModule.zero(I)
    else:
        M = homology(lst.hom_relations, lst.relation_map, lst.obstruction_map(koszul=False))
    return M, M.dimension()


def t0_artinian(I: IdealPresentation, lst: Optional[LSTruncation] = None):
    if not _is_finite(I.quotient_dimension()):
        raise InvalidInput("T0 is only computed for Artinian quotients")
    lst = lst or ls_truncation(I)
    return kernel_over_quotient(lst.jacobian).dimension()


def _graded_hist(I: IdealPresentation, M: FPModule) -> Dict[int, int]:
    if not I.is_homogeneous():
        raise InvalidInput("grading of a non-homogeneous ideal")
    return grading_histogram(M)


def t1_grading(I: IdealPresentation, result: Optional[Tuple[FPModule, object]] = None) -> Dict[int, int]:
    return _graded_hist(I, (result or t1(I))[0])


def t2_grading(I: IdealPresentation, result: Optional[Tuple[FPModule, object]] = None) -> Dict[int, int]:
    return _graded_hist(I, (result or t2(I))[0])


def t3_experimental(I: IdealPresentation) -> Tuple[FPModule, object]:
    """
    Homology at Hom(E3, B) of the dualized minimal resolution: Hom(E2, B) -> Hom(E3, B) -> Hom(E4, B).
    Not the genuine third cotangent cohomology; reported as EXPERIMENTAL only.
    """
    if I.is_zero():
        return FPModule.zero(I), 0
    ring = I.ring
    res = minimal_free_resolution(I, 4)
    if len(res.maps) < 3:
        return FPModule.zero(I), 0
    homs = [FPModule.free(I, [-d for d in degs]) for degs in res.degrees]

    def dual(i: int) -> ModuleMap:
        cols = _transpose(res.maps[i - 1], res.ranks[i - 1], ring)
        return ModuleMap(homs[i - 1], homs[i], cols)

    left = dual(3)
    if len(res.maps) >= 4:
        right = dual(4)
    else:
        zero = FPModule.zero(I)
        right = ModuleMap(homs[3], zero, [FreeElement(ring, 0, {}) for _ in range(homs[3].gens)])
    M = homology(homs[3], left, right)
    return M, M.dimension()


def tjurina_number(f: Poly):
    """dim R/(f, df/dx_1, ..., df/dx_n) for a hypersurface germ."""
    ring = f.ring
    gens = [f] + [f.derivative(j) for j in range(ring.ngens)]
    return IdealPresentation(ring, gens).quotient_dimension()


# =========================
# Dense oracle
# =========================
@dataclass
class OracleResult:
    t0: Dict[int, int]
    t1: Dict[int, int]
    t2: Dict[int, int]

    def total(self, i: int) -> int:
        return sum((self.t0, self.t1, self.t2)[i].values())

    def histogram(self, i: int) -> Dict[int, int]:
        return {e: v for e, v in sorted((self.t0, self.t1, self.t2)[i].items()) if v}


class _DenseOracle:
    def __init__(self, I: IdealPresentation, max_top: int = 64):
        ring = I.ring
        if any(w != 1 for w in ring.weights):
            raise InvalidInput("the dense oracle needs the standard grading")
        if not I.is_homogeneous():
            raise InvalidInput("the dense oracle needs a homogeneous ideal")
        self.ring = ring
        self.field = ring.field
        self.n = ring.ngens
        self.w = ring.weights
        self.gens = self._minimal([g for g in I.generators])
        self.degrees = [g.degree() for g in self.gens]
        self.B: List[QuotientSpace] = []
        d = 0
        while True:
            if d > max_top:
                raise InvalidInput(f"non-Artinian input: quotient nonzero beyond degree {max_top}")
            mons = monomials_of_degree(self.w, d)
            qs = QuotientSpace(self.field, self._ideal_rows(self.gens, d), [{m: 1} for m in mons])
            if qs.dim == 0:
                break
            self.B.append(qs)
            d += 1
        if not self.B:
            raise InvalidInput("unit ideal: the quotient ring is zero")
        self.s = len(self.B) - 1
        self.basis = [[next(iter(row)) for row in qs.basis] for qs in self.B]
        self._coords: Dict[tuple, Dict[int, object]] = {}
        self._rels: Dict[int, List[Dict]] = {}
        self._W: Dict[int, QuotientSpace] = {}
        self.rel_top = self._relation_top()
        log.debug("[cotangent] oracle: top degree %d, relations generated up to degree %d",
                  self.s, self.rel_top)

    # ---- setup
    def _ideal_rows(self, gens: Sequence[Poly], d: int) -> List[Dict]:
        rows = []
        for f in gens:
            for m in monomials_of_degree(self.w, d - f.degree()):
                rows.append({mono_mul(e, m): c for e, c in f.terms.items()})
        return rows

    def _minimal(self, gens: Sequence[Poly]) -> List[Poly]:
        kept: List[Poly] = []
        for g in sorted(gens, key=lambda p: p.degree()):
            ech = Echelon(self.field)
            for r in self._ideal_rows(kept, g.degree()):
                ech.add(r)
            if not ech.contains(g.terms):
                kept.append(g)
        return kept

    def dim_b(self, d: int) -> int:
        return self.B[d].dim if 0 <= d <= self.s else 0

    def coords(self, m: tuple) -> Dict[int, object]:
        c = self._coords.get(m)
        if c is None:
            d = sum(m)
            if d > self.s:
                c = {}
            else:
                c = {i: a for i, a in enumerate(self.B[d].coords({m: 1})) if a}
            self._coords[m] = c
        return c

    def times(self, terms: Mapping[tuple, object], d: int, idx: int) -> Dict[int, object]:
        """Coordinates of (polynomial terms) * (basis element idx of B_d)."""
        norm = self.field.norm
        m = self.basis[d][idx]
        acc: Dict[int, object] = {}
        for e, c in terms.items():
            for i, a in self.coords(mono_mul(e, m)).items():
                acc[i] = norm(acc.get(i, 0) + c * a)
        return {i: a for i, a in acc.items() if a}

    def relations(self, d: int) -> List[Dict]:
        """Basis of the degree-d relations among the generators, keyed (i, monomial)."""
        if d not in self._rels:
            cols = [(i, m) for i, f in enumerate(self.gens)
                    for m in monomials_of_degree(self.w, d - self.degrees[i])]
            images = [{mono_mul(e, m): c for e, c in self.gens[i].terms.items()} for i, m in cols]
            self._rels[d] = [{cols[t]: c for t, c in rel.items()}
                             for rel in kernel_basis(images, self.field)]
        return self._rels[d]

    def koszul(self, d: int) -> List[Dict]:
        norm = self.field.norm
        rows = []
        k = len(self.gens)
        for a in range(k):
            for b in range(a + 1, k):
                for m in monomials_of_degree(self.w, d - self.degrees[a] - self.degrees[b]):
                    row = {(b, mono_mul(e, m)): c for e, c in self.gens[a].terms.items()}
                    row.update({(a, mono_mul(e, m)): norm(-c) for e, c in self.gens[b].terms.items()})
                    rows.append(row)
        return rows

    @staticmethod
    def _shift(v: Mapping, j: int) -> Dict:
        out = {}
        for (i, m), c in v.items():
            e = list(m)
            e[j] += 1
            out[(i, tuple(e))] = c
        return out

    def _relation_top(self) -> int:
        """Largest degree of a minimal relation (relations are generated in degree <= s + 2)."""
        top = 0
        if len(self.gens) < 2:
            return top
        for d in range(min(self.degrees) + 1, self.s + 3):
            rels = self.relations(d)
            if not rels:
                continue
            lower = [self._shift(r, j) for r in self.relations(d - 1) for j in range(self.n)]
            if rank(lower, self.field) < len(rels):
                top = d
        return top

    def W(self, d: int) -> QuotientSpace:
        """Degree-d piece of relations modulo Koszul relations."""
        if d not in self._W:
            self._W[d] = QuotientSpace(self.field, self.koszul(d), self.relations(d))
        return self._W[d]

    # ---- Hom spaces, one internal degree at a time
    def _solve(self, rows: Dict[tuple, Dict[int, object]], unknowns: int) -> int:
        return unknowns - rank([r for r in rows.values() if r], self.field)

    @staticmethod
    def _acc(rows: Dict, key, col: int, coef, norm) -> None:
        r = rows.setdefault(key, {})
        v = norm(r.get(col, 0) + coef)
        if v:
            r[col] = v
        else:
            r.pop(col, None)

    def derivations(self, e: int) -> int:
        norm = self.field.norm
        cols = {}
        for j in range(self.n):
            for c in range(self.dim_b(1 + e)):
                cols[(j, c)] = len(cols)
        if not cols:
            return 0
        rows: Dict[tuple, Dict[int, object]] = {}
        for i, f in enumerate(self.gens):
            for j in range(self.n):
                df = f.derivative(j).terms
                if not df:
                    continue
                for c in range(self.dim_b(1 + e)):
                    for cc, a in self.times(df, 1 + e, c).items():
                        self._acc(rows, (i, cc), cols[(j, c)], a, norm)
        return self._solve(rows, len(cols))

    def hom_ideal(self, e: int) -> int:
        norm = self.field.norm
        cols = {}
        for i, di in enumerate(self.degrees):
            for c in range(self.dim_b(di + e)):
                cols[(i, c)] = len(cols)
        if not cols:
            return 0
        rows: Dict[tuple, Dict[int, object]] = {}
        for d in range(self.rel_top + 1):
            if not 0 <= d + e <= self.s:
                continue
            for ri, r in enumerate(self.relations(d)):
                for (i, m), a in r.items():
                    src = self.degrees[i] + e
                    for c in range(self.dim_b(src)):
                        for cc, b in self.times({m: a}, src, c).items():
                            self._acc(rows, (d, ri, cc), cols[(i, c)], b, norm)
        return self._solve(rows, len(cols))

    def hom_obstructions(self, e: int) -> int:
        if not self.rel_top:
            return 0
        norm = self.field.norm
        lo = min(self.degrees) + 1
        hi = self.s - e
        cols = {}
        for d in range(max(lo, -e), hi + 1):
            for k in range(self.W(d).dim):
                for c in range(self.dim_b(d + e)):
                    cols[(d, k, c)] = len(cols)
        if not cols:
            return 0
        rows: Dict[tuple, Dict[int, object]] = {}
        for d in range(max(lo, -e - 1), hi):
            Wd = self.W(d)
            if not Wd.dim:
                continue
            Wn = self.W(d + 1)
            for k, w in enumerate(Wd.basis):
                for j in range(self.n):
                    xw = self._shift(w, j)
                    for kk, a in enumerate(Wn.coords(xw)):
                        if not a:
                            continue
                        for cc in range(self.dim_b(d + 1 + e)):
                            self._acc(rows, (d, k, j, cc), cols[(d + 1, kk, cc)], a, norm)
                    if d + e >= 0:
                        xj = {tuple(1 if t == j else 0 for t in range(self.n)): 1}
                        for c in range(self.dim_b(d + e)):
                            for cc, b in self.times(xj, d + e, c).items():
                                self._acc(rows, (d, k, j, cc), cols[(d, k, c)], norm(-b), norm)
        return self._solve(rows, len(cols))

    # ---- assembled
    def result(self, upto: int = 2) -> OracleResult:
        s = self.s
        t0 = {e: self.derivations(e) for e in range(-1, s)}
        t1_: Dict[int, int] = {}
        t2_: Dict[int, int] = {}
        hom_i: Dict[int, int] = {}
        if upto >= 1:
            lo = min([-max(self.degrees, default=0), -1])
            for e in range(lo, s + 1):
                hom_i[e] = self.hom_ideal(e)
                der = t0.get(e, 0)
                t1_[e] = hom_i[e] - (self.n * self.dim_b(1 + e) - der)
        if upto >= 2:
            for e in range(-self.rel_top, s + 1):
                if e not in hom_i:
                    hom_i[e] = self.hom_ideal(e)
                free = sum(self.dim_b(d + e) for d in self.degrees)
                t2_[e] = self.hom_obstructions(e) - (free - hom_i[e])
        for name, table in (("T1", t1_), ("T2", t2_)):
            if any(v < 0 for v in table.values()):
                raise VerificationFailed(f"dense oracle produced a negative {name} dimension")
        return OracleResult(t0, t1_, t2_)


def artinian_oracle_all(I: IdealPresentation, upto: int = 2) -> OracleResult:
    return _DenseOracle(I).result(upto)


def artinian_oracle(I: IdealPresentation, i: int) -> int:
    if i not in (0, 1, 2):
        raise InvalidInput("the dense oracle covers T0, T1 and T2")
    return artinian_oracle_all(I, max(i, 0)).total(i)


def oracle_applies(I: IdealPresentation) -> bool:
    return (all(w == 1 for w in I.ring.weights) and I.is_homogeneous() and I.is_proper()
            and _is_finite(I.quotient_dimension()))


# =========================
# Reports
# =========================
class Method(str, Enum):
    ENGINE = "ENGINE"
    ORACLE = "ORACLE"
    LADDER = "LADDER"
    FORMULA = "FORMULA"
    ENGINE_FULL_E2 = "ENGINE_FULL_E2"
    EXPERIMENTAL = "EXPERIMENTAL"


AUTHORITATIVE = {Method.ENGINE, Method.ORACLE, Method.LADDER, Method.FORMULA}


@dataclass
class DimensionEntry:
    index: int
    value: object
    method: Method
    seconds: Optional[float] = None

    def to_dict(self, timings: bool = False) -> Dict[str, object]:
        d = {"i": self.index, "value": dim_value(self.value), "method": self.method.value}
        if timings and self.seconds is not None:
            d["seconds"] = round(self.seconds, 3)
        return d


@dataclass
class TangentReport:
    descriptor: str
    field: str
    entries: List[DimensionEntry] = field(default_factory=list)
    grading: Dict[str, Dict[int, int]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    config: Dict[str, object] = field(default_factory=dict)

    SCHEMA = "tangent-report/1"

    def add(self, i: int, value, method: Method, seconds: Optional[float] = None) -> None:
        self.entries.append(DimensionEntry(i, value, method, seconds))

    def values(self, i: int) -> Dict[str, object]:
        return {e.method.value: e.value for e in self.entries if e.index == i}

    def value(self, i: int, method: Union[Method, str] = Method.ENGINE):
        return self.values(i).get(Method(method).value)

    def disagreements(self) -> List[int]:
        bad = []
        for i in sorted({e.index for e in self.entries}):
            vals = {dim_value(e.value) for e in self.entries if e.index == i and e.method in AUTHORITATIVE}
            if len(vals) > 1:
                bad.append(i)
        return bad

    @property
    def status(self) -> str:
        return "FAILED" if self.disagreements() else "OK"

    def to_dict(self) -> Dict[str, object]:
        timings = bool(self.config.get("timings"))
        return {
            "schema": self.SCHEMA,
            "descriptor": self.descriptor,
            "field": self.field,
            "status": self.status,
            "dims": [e.to_dict(timings) for e in self.entries],
            "grading": {k: {str(d): v for d, v in h.items()} for k, h in self.grading.items()},
            "notes": list(self.notes),
            "config": self.config,
        }


def tangent_report(I: IdealPresentation, indices: Sequence[int] = (1, 2), descriptor: Optional[str] = None,
                   expected: Optional[Mapping[int, object]] = None,
                   cfg: Optional[RunConfig] = None) -> TangentReport:
    """
    Compute the requested T^i by the engine, cross-check with the dense oracle when it applies
    and with expected values (int for FORMULA, or (value, method) pairs).
    """
    cfg = cfg or RunConfig()
    for i in indices:
        if i not in (0, 1, 2, 3):
            raise InvalidInput(f"tangent index {i} is not one of 0, 1, 2, 3")
    rep = TangentReport(descriptor or "ideal", I.ring.field.name, config=cfg.to_dict())
    with job_clock(cfg):
        artinian = _is_finite(I.quotient_dimension())
        graded = I.is_homogeneous()
        lst: Optional[LSTruncation] = None

        def clock():
            return time.perf_counter()

        for i in sorted(set(indices)):
            t = clock()
            if i == 0:
                if not artinian:
                    rep.notes.append("T0 skipped: the quotient is not Artinian")
                    continue
                lst = lst or ls_truncation(I)
                rep.add(0, t0_artinian(I, lst), Method.ENGINE, clock() - t)
            elif i in (1, 2):
                lst = lst or ls_truncation(I)
                M, d = (t1 if i == 1 else t2)(I, lst)
                rep.add(i, d, Method.ENGINE, clock() - t)
                if not _is_finite(d):
                    rep.notes.append(f"T{i} is infinite: the singularity is not isolated")
                elif graded:
                    rep.grading[f"T{i}/ENGINE"] = grading_histogram(M)
                if i == 2:
                    t = clock()
                    _, dfull = t2_full_relations(I, lst)
                    rep.add(2, dfull, Method.ENGINE_FULL_E2, clock() - t)
                    if dim_value(dfull) != dim_value(d):
                        rep.notes.append(f"T2 with the full relation module differs: {dim_value(dfull)}")
            else:
                M, d = t3_experimental(I)
                rep.add(3, d, Method.EXPERIMENTAL, clock() - t)
                if _is_finite(d) and d:
                    killed = all(annihilated_by(M, v) for v in I.ring.gens())
                    rep.notes.append("experimental T3 is " + ("" if killed else "not ")
                                     + "annihilated by the maximal ideal")

        wanted = [i for i in indices if i in (0, 1, 2)]
        if cfg.oracle and wanted and oracle_applies(I):
            t = clock()
            res = artinian_oracle_all(I, max(wanted))
            dt = clock() - t
            for i in sorted(set(wanted)):
                rep.add(i, res.total(i), Method.ORACLE, dt)
                rep.grading[f"T{i}/ORACLE"] = res.histogram(i)

    for i, v in sorted((expected or {}).items()):
        if isinstance(v, tuple):
            rep.add(i, v[0], Method(v[1]))
        else:
            rep.add(i, v, Method.FORMULA)
    if rep.status != "OK":
        log.warning("[cotangent] %s: methods disagree at T%s", rep.descriptor, rep.disagreements())
    return rep
