"""
Singularity models as explicit ideals, curve invariants and the Eagon-Northcott complex.

Families: rational partition curves Y(m_1,...,m_r), elliptic partition curves (monomial and in
general position), the Artinian point schemes Z_r = m^2 and Gorenstein fat points A_r, and the
cone over the rational normal curve of degree n as the computable quotient surface singularity.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from core import (INFINITE, ConstructionFailed, InvalidInput, RunConfig, VerificationFailed,
                  check_deadline)
from groebner import (IdealPresentation, _apply, hilbert_function, ideal_sum, intersect,
                      kernel_of_ring_map, minimal_ideal_generators)
from linalg import Echelon
from polyring import Field, FreeElement, Poly, PolyRing, apply_ring_map

log = logging.getLogger(__name__)


# =========================
# Descriptors
# =========================
class Family(str, Enum):
    RATIONAL_PARTITION = "rational-partition"
    ELLIPTIC_PARTITION_MONOMIAL = "elliptic-monomial"
    ELLIPTIC_PARTITION_GENERAL = "elliptic-general"
    ARTINIAN_ZR = "artinian-zr"
    FAT_POINT = "fat-point"
    CONE_RNC = "cone-rnc"


FAMILY_ORDER = {f: i for i, f in enumerate(Family)}
CURVE_FAMILIES = {Family.RATIONAL_PARTITION, Family.ELLIPTIC_PARTITION_MONOMIAL,
                  Family.ELLIPTIC_PARTITION_GENERAL}


@dataclass(frozen=True)
class SingularityDescriptor:
    family: Family
    params: Tuple[int, ...]
    seed: int = 1

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        fam, p = self.family, self.params
        if not p or any(x < 1 for x in p):
            raise InvalidInput(f"{fam.value}: parameters must be positive integers")
        if fam in (Family.RATIONAL_PARTITION, Family.ELLIPTIC_PARTITION_GENERAL):
            if list(p) != sorted(p, reverse=True):
                object.__setattr__(self, "params", tuple(sorted(p, reverse=True)))
        elif len(p) != 1:
            raise InvalidInput(f"{fam.value} takes a single integer parameter")
        if fam == Family.ELLIPTIC_PARTITION_GENERAL:
            if len(p) < 2 or sum(p) - 1 < 3:
                raise InvalidInput("elliptic-general needs r >= 2 parts and embedding dimension sum - 1 >= 3")
        if fam == Family.ELLIPTIC_PARTITION_MONOMIAL and p[0] < 2:
            raise InvalidInput("elliptic-monomial needs n >= 2")
        if fam == Family.FAT_POINT and p[0] < 2:
            raise InvalidInput("fat-point needs r >= 2")
        if fam == Family.CONE_RNC and p[0] < 2:
            raise InvalidInput("cone-rnc needs n >= 2")

    @property
    def embdim(self) -> int:
        fam, p = self.family, self.params
        if fam == Family.RATIONAL_PARTITION:
            return sum(p)
        if fam == Family.ELLIPTIC_PARTITION_GENERAL:
            return sum(p) - 1
        if fam == Family.CONE_RNC:
            return p[0] + 1
        return p[0]

    @property
    def branches(self) -> int:
        if self.family in (Family.RATIONAL_PARTITION, Family.ELLIPTIC_PARTITION_GENERAL):
            return len(self.params)
        return 1

    @property
    def label(self) -> str:
        return f"{self.family.value}({','.join(str(x) for x in self.params)})"

    def key(self) -> tuple:
        return (FAMILY_ORDER[self.family], len(self.params), self.params, self.seed)

    def to_dict(self) -> Dict[str, object]:
        return {"family": self.family.value, "params": list(self.params), "seed": self.seed,
                "embdim": self.embdim}

    @classmethod
    def from_args(cls, family: str, parts: Optional[Sequence[int]] = None, r: Optional[int] = None,
                  n: Optional[int] = None, seed: int = 1) -> "SingularityDescriptor":
        try:
            fam = Family(family)
        except ValueError:
            raise InvalidInput(f"unknown family {family!r}; expected one of "
                               f"{', '.join(f.value for f in Family)}") from None
        if fam in (Family.RATIONAL_PARTITION, Family.ELLIPTIC_PARTITION_GENERAL):
            if not parts:
                raise InvalidInput(f"{fam.value} needs --parts")
            return cls(fam, tuple(parts), seed)
        point = fam in (Family.ARTINIAN_ZR, Family.FAT_POINT)
        value = (r if point else n)
        if value is None:
            value = n if point else r
        if value is None:
            raise InvalidInput(f"{fam.value} needs --{'r' if point else 'n'}")
        return cls(fam, (value,), seed)


@dataclass
class CurveInvariants:
    delta: int
    branches: int
    milnor: int
    cm_type: int
    embdim: int
    semigroup: Optional[List[int]] = None
    smoothing: Optional[int] = None
    # "computed", or "gorenstein" when t = 1 follows from the curve being minimally elliptic
    cm_type_source: str = "computed"

    def __post_init__(self):
        if self.milnor != 2 * self.delta - self.branches + 1:
            raise VerificationFailed(
                f"Milnor number {self.milnor} != 2*delta - r + 1 = {2 * self.delta - self.branches + 1}")

    def to_dict(self) -> Dict[str, object]:
        return {"delta": self.delta, "r": self.branches, "mu": self.milnor, "t": self.cm_type,
                "embdim": self.embdim, "semigroup": self.semigroup, "e": self.smoothing,
                "t_source": self.cm_type_source}


# =========================
# Rings and small helpers
# =========================
def _ring(names: Sequence[str], weights: Optional[Sequence[int]] = None, fld: Optional[Field] = None) -> PolyRing:
    return PolyRing(list(names), weights, fld or Field(0))


def _minor(a: Poly, b: Poly, c: Poly, d: Poly) -> Poly:
    return a * d - b * c


def _tring(fld: Optional[Field] = None) -> PolyRing:
    return PolyRing(["t"], None, fld or Field(0))


def partitions(n: int) -> List[Tuple[int, ...]]:
    """All partitions of n, parts in non-increasing order, largest first."""
    out: List[Tuple[int, ...]] = []

    def rec(left: int, cap: int, acc: List[int]):
        if left == 0:
            out.append(tuple(acc))
            return
        for p in range(min(left, cap), 0, -1):
            rec(left - p, p, acc + [p])

    if n < 1:
        raise InvalidInput("partitions of a positive integer only")
    rec(n, n, [])
    return out


# =========================
# Curves
# =========================
def _block_minors(zs: Sequence[Poly]) -> List[Poly]:
    m = len(zs)
    if m < 2:
        return []
    top = list(zs)
    bottom = list(zs[1:]) + [zs[0] * zs[0]]
    out = []
    for i, j in combinations(range(m), 2):
        g = _minor(top[i], top[j], bottom[i], bottom[j])
        if g.terms:
            out.append(g)
    return out


def monomial_curve_Y(m: int, fld: Optional[Field] = None) -> IdealPresentation:
    if m < 1:
        raise InvalidInput("Y(m) needs m >= 1")
    ring = _ring([f"z{i + 1}" for i in range(m)], list(range(m, 2 * m)), fld)
    prov = {"family": Family.RATIONAL_PARTITION.value, "params": [m]}
    return IdealPresentation(ring, _block_minors(ring.gens()), "grevlex", prov)


def monomial_curve_parametrization(m: int, fld: Optional[Field] = None) -> List[Poly]:
    t = _tring(fld).var(0)
    return [t ** k for k in range(m, 2 * m)]


def _partition_names(parts: Sequence[int]) -> List[str]:
    if len(parts) == 1:
        return [f"z{i + 1}" for i in range(parts[0])]
    return [f"z{b + 1}_{k + 1}" for b, p in enumerate(parts) for k in range(p)]


def _partition_generators(ring: PolyRing, parts: Sequence[int], offset: int = 0) -> List[Poly]:
    xs = ring.gens()
    blocks = []
    pos = offset
    for p in parts:
        blocks.append(xs[pos:pos + p])
        pos += p
    gens: List[Poly] = []
    for blk in blocks:
        gens.extend(_block_minors(blk))
    for a, b in combinations(range(len(blocks)), 2):
        for u in blocks[a]:
            for v in blocks[b]:
                gens.append(u * v)
    return gens


def rational_partition_curve(parts: Sequence[int], fld: Optional[Field] = None) -> IdealPresentation:
    parts = tuple(int(p) for p in parts)
    if not parts or any(p < 1 for p in parts):
        raise InvalidInput("partition entries must be >= 1")
    weights = [w for p in parts for w in range(p, 2 * p)]
    ring = _ring(_partition_names(parts), weights, fld)
    prov = {"family": Family.RATIONAL_PARTITION.value, "params": list(parts)}
    return IdealPresentation(ring, _partition_generators(ring, parts), "grevlex", prov)


def partition_branches(parts: Sequence[int], fld: Optional[Field] = None) -> List[List[Poly]]:
    """Parametrizations of the branches of Y(parts), one coordinate block per branch."""
    tr = _tring(fld)
    t = tr.var(0)
    n = sum(parts)
    out = []
    pos = 0
    for p in parts:
        coords = [tr.zero() for _ in range(n)]
        for k in range(p):
            coords[pos + k] = t ** (p + k)
        out.append(coords)
        pos += p
    return out


def wedge_by_intersection(parts: Sequence[int], fld: Optional[Field] = None) -> IdealPresentation:
    """Y(parts) as the intersection of its branch ideals placed in coordinate subspaces."""
    ref = rational_partition_curve(parts, fld)
    ring = ref.ring
    xs = ring.gens()
    ideals = []
    pos = 0
    for p in parts:
        inside = set(range(pos, pos + p))
        gens = _block_minors(xs[pos:pos + p]) + [xs[i] for i in range(ring.ngens) if i not in inside]
        ideals.append(IdealPresentation(ring, gens))
        pos += p
    if len(ideals) == 1:
        return ideals[0]
    return intersect(*ideals)


def elliptic_partition_monomial(n: int, fld: Optional[Field] = None) -> IdealPresentation:
    if n < 2:
        raise InvalidInput("elliptic partition curves need n >= 2")
    t = _tring(fld).var(0)
    images = [t ** k for k in range(n + 1, 2 * n + 1)]
    I = kernel_of_ring_map(images, [f"z{i + 1}" for i in range(n)], list(range(n + 1, 2 * n + 1)))
    I.provenance = {"family": Family.ELLIPTIC_PARTITION_MONOMIAL.value, "params": [n],
                    "parametrization": I.provenance.get("parametrization")}
    return I


def _vandermonde(rows: int, cols: int, seed: int) -> List[List[int]]:
    return [[(seed + i + 2) ** (k + 1) for k in range(cols)] for i in range(rows)]


def _elliptic_general_once(parts: Tuple[int, ...], seed: int, fld: Optional[Field]):
    head, p = parts[:-1], parts[-1]
    n0 = sum(head)
    n = n0 + p - 1
    names = _partition_names(head) if len(head) > 1 else [f"z{i + 1}" for i in range(n0)]
    names = names + [f"w{k}" for k in range(1, p)]
    ring = _ring(names, None, fld)
    xs = ring.gens()
    prime = _partition_generators(ring, head) + xs[n0:]
    I_prime = IdealPresentation(ring, prime)

    tr = _tring(fld)
    t = tr.var(0)
    L = _vandermonde(n0, p, seed)
    last = [sum((t ** (p + k) * L[i][k] for k in range(p)), tr.zero()) for i in range(n0)]
    last += [t ** (p + k) for k in range(1, p)]
    I_last = kernel_of_ring_map(last, names, [1] * n)

    branches = [b + [tr.zero()] * (p - 1) for b in partition_branches(head, fld)] + [last]
    delta = delta_invariant(branches)
    if delta != n + 1:
        raise ConstructionFailed(f"delta certificate failed: delta = {delta}, expected {n + 1}")
    inter = intersection_number(I_prime, I_last)
    if inter != 2:
        raise ConstructionFailed(f"intersection certificate failed: i(Y', Y_r) = {inter}, expected 2")
    I = intersect(I_prime, I_last)
    I.provenance = {"family": Family.ELLIPTIC_PARTITION_GENERAL.value, "params": list(parts),
                    "seed": seed, "delta": delta, "intersection": inter}
    return I, branches


def elliptic_partition_general(parts: Sequence[int], seed: int = 1, retries: int = 8,
                               fld: Optional[Field] = None) -> IdealPresentation:
    """
    Y' = Y(p_1) v ... v Y(p_(r-1)) in coordinate blocks, and Y(p_r) embedded through a seeded
    Vandermonde map whose tangent direction meets every block outside its osculating hyperplane.
    Accepted only when delta = n + 1 and i(Y', Y_r) = 2.
    """
    parts = tuple(sorted((int(x) for x in parts), reverse=True))
    if len(parts) < 2 or sum(parts) - 1 < 3:
        raise InvalidInput("elliptic-general needs r >= 2 parts and embedding dimension >= 3")
    last_err: Optional[Exception] = None
    for attempt in range(retries + 1):
        s = seed + attempt
        try:
            I, _ = _elliptic_general_once(parts, s, fld)
            if attempt:
                log.info("[catalog] elliptic-general%s accepted after %d retries (seed=%d)",
                         parts, attempt, s)
            I.provenance["retries"] = attempt
            return I
        except ConstructionFailed as exc:
            last_err = exc
            if attempt < retries:
                log.info("[catalog] retry seed=%d: %s", s + 1, exc)
    raise ConstructionFailed(f"elliptic-general{parts}: no certified construction after "
                             f"{retries} retries ({last_err})")


def elliptic_general_branches(parts: Sequence[int], seed: int = 1,
                              fld: Optional[Field] = None) -> List[List[Poly]]:
    parts = tuple(sorted((int(x) for x in parts), reverse=True))
    return _elliptic_general_once(parts, seed, fld)[1]


# =========================
# Points and cones
# =========================
def artinian_Zr(r: int, fld: Optional[Field] = None) -> IdealPresentation:
    if r < 1:
        raise InvalidInput("Z_r needs r >= 1")
    ring = _ring([f"x{i + 1}" for i in range(r)], None, fld)
    xs = ring.gens()
    gens = [xs[i] * xs[j] for i in range(r) for j in range(i, r)]
    return IdealPresentation(ring, gens, "grevlex", {"family": Family.ARTINIAN_ZR.value, "params": [r]})


def fat_point(r: int, fld: Optional[Field] = None) -> IdealPresentation:
    if r < 2:
        raise InvalidInput("fat points need r >= 2")
    ring = _ring([f"x{i + 1}" for i in range(r)], None, fld)
    xs = ring.gens()
    gens = [xs[i] * xs[j] for i, j in combinations(range(r), 2)]
    gens += [xs[i] * xs[i] - xs[j] * xs[j] for i, j in combinations(range(r), 2)]
    gens += [x ** 3 for x in xs]
    return IdealPresentation(ring, gens, "grevlex", {"family": Family.FAT_POINT.value, "params": [r]})


def fat_point_betti_formula(r: int) -> List[int]:
    out = [1]
    for i in range(1, r):
        b = Fraction(i * (r - i), r + 1) * math.comb(r + 2, i + 1)
        if b.denominator != 1:
            raise VerificationFailed(f"fat point Betti formula not integral at r={r}, i={i}")
        out.append(int(b))
    out.append(1)
    return out


def fat_point_quadric_counts(r: int) -> Dict[str, int]:
    """Minimal quadric count next to the two closed expressions (reported, not adjudicated)."""
    gens = minimal_ideal_generators(fat_point(r))
    return {"computed_quadrics": sum(1 for g in gens if g.degree() == 2),
            "computed_generators": len(gens),
            "betti_b1": fat_point_betti_formula(r)[1],
            "half_r_minus_1_r_minus_2": (r - 1) * (r - 2) // 2}


def _hankel(ring: PolyRing, n: int) -> Tuple[List[Poly], List[Poly]]:
    zs = ring.gens()
    return zs[:n], zs[1:n + 1]


def cone_over_rnc(n: int, fld: Optional[Field] = None) -> IdealPresentation:
    if n < 2:
        raise InvalidInput("the cone over the rational normal curve needs n >= 2")
    ring = _ring([f"z{i}" for i in range(n + 1)], None, fld)
    top, bottom = _hankel(ring, n)
    gens = [_minor(top[i], top[j], bottom[i], bottom[j]) for i, j in combinations(range(n), 2)]
    return IdealPresentation(ring, gens, "grevlex", {"family": Family.CONE_RNC.value, "params": [n]})


@dataclass
class SectionResult:
    n: int
    seed: int
    roots: List[int]
    form: List[object]
    ideal: IdealPresentation
    branches: List[List[Poly]]
    delta_branches: int
    delta_hilbert: int

    def to_dict(self) -> Dict[str, object]:
        return {"n": self.n, "seed": self.seed, "roots": self.roots,
                "form": [str(c) for c in self.form], "ideal": self.ideal.to_dict(),
                "delta_branches": self.delta_branches, "delta_hilbert": self.delta_hilbert}


def rnc_cone_section(n: int, seed: int = 1, fld: Optional[Field] = None) -> SectionResult:
    """
    Cut cone_over_rnc(n) by the hyperplane whose binary form prod (t - l_j s) has the distinct
    nonzero roots l_j = seed + j; the section is n lines through the origin of C^n.
    """
    if n < 2:
        raise InvalidInput("rnc_cone_section needs n >= 2")
    fld = fld or Field(0)
    roots = [seed + j for j in range(1, n + 1)]
    if fld.p and len({fld.norm(l) for l in roots} - {0}) < n:
        raise InvalidInput("section roots collide in this characteristic")
    # coefficients of prod (t - l s) in the basis s^(n-i) t^i, monic in t^n
    coeffs = [1]
    for l in roots:
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= l * c
        coeffs = nxt
    form = [fld.norm(c) for c in coeffs]
    cone = cone_over_rnc(n, fld)
    big = cone.ring
    small = _ring([f"z{i}" for i in range(n)], None, fld)
    zs = small.gens()
    z_last = sum((zs[i] * (-form[i]) for i in range(n)), small.zero())
    images = zs + [z_last]
    gens = [apply_ring_map(g, images) for g in cone.generators]
    J = IdealPresentation(small, gens, "grevlex",
                          {"family": "cone-rnc-section", "params": [n], "seed": seed, "roots": roots})
    tr = _tring(fld)
    t = tr.var(0)
    branches = [[t * fld.norm(l ** i) for i in range(n)] for l in roots]
    d_br = delta_invariant(branches)
    d_hf = delta_from_hilbert(J, len(roots))
    if d_br != d_hf:
        raise VerificationFailed(f"section delta disagrees: branches {d_br}, Hilbert function {d_hf}")
    return SectionResult(n, seed, roots, form, J, branches, d_br, d_hf)


# =========================
# Eagon-Northcott
# =========================
@dataclass
class ENComplex:
    f: List[Poly]
    g: List[Poly]
    bases: List[List[tuple]]
    maps: List[List[FreeElement]]

    @property
    def n(self) -> int:
        return len(self.f)

    @property
    def ranks(self) -> List[int]:
        return [len(b) for b in self.bases]

    @staticmethod
    def expected_rank(n: int, i: int) -> int:
        return 1 if i == 0 else i * math.comb(n, i + 1)

    def check(self) -> "ENComplex":
        for i, r in enumerate(self.ranks):
            if r != self.expected_rank(self.n, i):
                raise VerificationFailed(f"Eagon-Northcott term {i} has rank {r}")
        for i in range(1, len(self.maps)):
            for c in self.maps[i]:
                if _apply(self.maps[i - 1], c).terms:
                    raise VerificationFailed(f"Eagon-Northcott maps d{i} d{i + 1} do not compose to zero")
        return self

    def minors(self) -> List[Poly]:
        return [c.components()[0] for c in self.maps[0]] if self.maps else []


def eagon_northcott(f: Sequence[Poly], g: Sequence[Poly]) -> ENComplex:
    """
    Terms E_i = D_(i-1)(G*) (x) Lambda^(i+1) F, basis (alpha, J): y1^(alpha) y2^(i-1-alpha) (x) e_J.
    The differential contracts y1 against the row f and y2 against the row g.
    """
    f, g = list(f), list(g)
    n = len(f)
    if n != len(g) or n < 2:
        raise InvalidInput("Eagon-Northcott needs two rows of equal length n >= 2")
    ring = f[0].ring
    for p in f + g:
        if p.ring != ring:
            raise InvalidInput("matrix entries live in different rings")
    bases: List[List[tuple]] = [[()]]
    for i in range(1, n):
        bases.append([(a, J) for J in combinations(range(n), i + 1) for a in range(i - 1, -1, -1)])
    maps: List[List[FreeElement]] = []
    d1 = []
    for (_, (a, b)) in bases[1]:
        d1.append(FreeElement.from_polys([_minor(f[a], f[b], g[a], g[b])]))
    maps.append(d1)
    for i in range(2, n):
        index = {bv: k for k, bv in enumerate(bases[i - 1])}
        cols = []
        for alpha, J in bases[i]:
            beta = i - 1 - alpha
            v = FreeElement(ring, len(bases[i - 1]), {})
            for k, j in enumerate(J):
                rest = J[:k] + J[k + 1:]
                sign = 1 if k % 2 == 0 else -1
                if alpha > 0:
                    pos = index[(alpha - 1, rest)]
                    v = v + FreeElement.basis(ring, v.rank, pos).mul_poly(f[j] * sign)
                if beta > 0:
                    pos = index[(alpha, rest)]
                    v = v + FreeElement.basis(ring, v.rank, pos).mul_poly(g[j] * sign)
            cols.append(v)
        maps.append(cols)
    return ENComplex(f, g, bases, maps).check()


def eagon_northcott_for(I: IdealPresentation) -> ENComplex:
    """Eagon-Northcott complex of the Hankel matrix of a cone-rnc ideal or the block matrix of Y(m)."""
    fam = I.provenance.get("family")
    ring = I.ring
    if fam == Family.CONE_RNC.value:
        n = ring.ngens - 1
        top, bottom = _hankel(ring, n)
        return eagon_northcott(top, bottom)
    params = I.provenance.get("params") or []
    if fam == Family.RATIONAL_PARTITION.value and len(params) == 1 and params[0] >= 2:
        zs = ring.gens()
        return eagon_northcott(zs, zs[1:] + [zs[0] * zs[0]])
    raise InvalidInput("no determinantal presentation recorded for this ideal")


# =========================
# Invariants
# =========================
def _series_mul(a: Dict[int, object], b: Dict[int, object], N: int, norm) -> Dict[int, object]:
    out: Dict[int, object] = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i + j
            if k < N:
                out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in ((k, norm(v)) for k, v in out.items()) if v}


def _subalgebra_codim(series: List[List[Dict[int, object]]], N: int, fld: Field) -> int:
    """dim (prod k[t]/t^N) / (image of k[z] mod t^N), by closing span{1} under each z_i."""
    norm = fld.norm
    r = len(series)
    nv = len(series[0])
    ech = Echelon(fld)
    one = {(b, 0): 1 for b in range(r)} if N > 0 else {}
    queue = []
    if one and ech.add(one) is None:
        queue.append(one)
    while queue:
        check_deadline("delta invariant")
        v = queue.pop()
        per_branch: Dict[int, Dict[int, object]] = {}
        for (b, k), c in v.items():
            per_branch.setdefault(b, {})[k] = c
        for i in range(nv):
            w: Dict[tuple, object] = {}
            for b, s in per_branch.items():
                for k, c in _series_mul(s, series[b][i], N, norm).items():
                    w[(b, k)] = c
            if w and ech.add(w) is None:
                queue.append(w)
    return r * N - ech.rank


def delta_invariant(branches: Sequence[Sequence[Poly]], max_order: int = 400) -> int:
    """
    Codimension of the coordinate subalgebra in the product of the branch rings, truncated at
    t^N for growing N until the value is stable over a window of length 2*delta + 2.
    """
    branches = [list(b) for b in branches]
    if not branches or not branches[0]:
        raise InvalidInput("delta invariant of no branches")
    nv = len(branches[0])
    tring = branches[0][0].ring
    if tring.ngens != 1:
        raise InvalidInput("branch parametrizations must be polynomials in one variable")
    for b in branches:
        if len(b) != nv:
            raise InvalidInput("branches live in different ambient spaces")
        for p in b:
            if p.ring != tring:
                raise InvalidInput("branch parametrizations live in different rings")
            if p.constant_term():
                raise InvalidInput("branches must pass through the origin")
        if all(p.is_zero() for p in b):
            raise InvalidInput("a branch maps to the origin")
    series = [[{e[0]: c for e, c in p.terms.items()} for p in b] for b in branches]
    prev, since = None, 0
    for N in range(1, max_order + 1):
        d = _subalgebra_codim(series, N, tring.field)
        if d != prev:
            prev, since = d, N
        if N - since >= 2 * d + 2:
            return d
    raise VerificationFailed(f"delta invariant did not stabilize below order {max_order}")


def delta_from_hilbert(I: IdealPresentation, branches: int, max_degree: Optional[int] = None) -> int:
    """delta = sum_d (r - H(d)) for a reduced homogeneous curve of r lines (H reaches r and stays)."""
    if not I.is_homogeneous() or any(w != 1 for w in I.ring.weights):
        raise InvalidInput("Hilbert-function delta needs a standard graded ideal")
    upto = max_degree or 4 * branches + 4
    H = hilbert_function(I.gb(), upto)
    total = 0
    for d, h in enumerate(H):
        if h == branches:
            return total
        if h > branches:
            raise VerificationFailed(f"Hilbert function exceeds the number of lines at degree {d}")
        total += branches - h
    raise VerificationFailed("Hilbert function did not reach the number of lines")


def intersection_number(I1: IdealPresentation, I2: IdealPresentation) -> int:
    d = ideal_sum(I1, I2).quotient_dimension()
    if d == INFINITE:
        raise InvalidInput("the curves share a component: intersection number is infinite")
    return int(d)


def _semigroup_members(gens: Sequence[int]) -> Tuple[List[bool], int]:
    bound = min(gens) * max(gens) + max(gens) + 1
    inS = [False] * (bound + 1)
    inS[0] = True
    for x in range(1, bound + 1):
        inS[x] = any(x >= a and inS[x - a] for a in gens)
    return inS, bound


def semigroup_gaps(gens: Sequence[int]) -> List[int]:
    gens = sorted(set(int(a) for a in gens if a > 0))
    if not gens or reduce(math.gcd, gens) != 1:
        raise InvalidInput("numerical semigroup generators must have gcd 1")
    inS, bound = _semigroup_members(gens)
    return [x for x in range(1, bound + 1) if not inS[x]]


def cm_type_semigroup(gens: Sequence[int]) -> int:
    """Number of pseudo-Frobenius numbers of the numerical semigroup."""
    gens = sorted(set(int(a) for a in gens if a > 0))
    gaps = semigroup_gaps(gens)
    inS, bound = _semigroup_members(gens)

    def member(x: int) -> bool:
        return x > bound or inS[x]

    return sum(1 for g in gaps if all(member(g + s) for s in gens))


def cm_type_wedge(parts: Sequence[int]) -> int:
    """t = sum t_i + (r - 1), with t_i = 0 for smooth branches."""
    ts = [0 if m == 1 else cm_type_semigroup(range(m, 2 * m)) for m in parts]
    return sum(ts) + len(parts) - 1


def smoothing_dimension(d: SingularityDescriptor) -> int:
    inv = invariants(d)
    return int(inv.smoothing)


def invariants(d: SingularityDescriptor, fld: Optional[Field] = None) -> CurveInvariants:
    fam, p = d.family, d.params
    if fam == Family.RATIONAL_PARTITION:
        m, r = sum(p), len(p)
        delta = delta_invariant(partition_branches(p, fld))
        if delta != m - 1:
            raise VerificationFailed(f"delta of {d.label} is {delta}, expected {m - 1}")
        t = cm_type_wedge(p)
        semi = list(range(m, 2 * m)) if r == 1 else None
        mu = 2 * delta - r + 1
        return CurveInvariants(delta, r, mu, t, m, semi, 3 * (m - 1) - r)
    if fam == Family.ELLIPTIC_PARTITION_MONOMIAL:
        n = p[0]
        semi = list(range(n + 1, 2 * n + 1))
        delta = len(semigroup_gaps(semi))
        t = cm_type_semigroup(semi)
        mu = 2 * delta
        return CurveInvariants(delta, 1, mu, t, n, semi, mu + t - 1)
    if fam == Family.ELLIPTIC_PARTITION_GENERAL:
        n, r = sum(p) - 1, len(p)
        I = elliptic_partition_general(p, d.seed, fld=fld)
        delta = int(I.provenance["delta"])
        mu = 2 * delta - r + 1
        # minimally elliptic curves are Gorenstein; t is not recomputed from the ideal
        return CurveInvariants(delta, r, mu, 1, n, None, mu, cm_type_source="gorenstein")
    raise InvalidInput(f"invariants are defined for curve families, not {fam.value}")


# =========================
# Catalog
# =========================
def build(d: SingularityDescriptor, cfg: Optional[RunConfig] = None) -> IdealPresentation:
    cfg = cfg or RunConfig()
    fam, p = d.family, d.params
    if fam == Family.RATIONAL_PARTITION:
        I = rational_partition_curve(p)
    elif fam == Family.ELLIPTIC_PARTITION_MONOMIAL:
        I = elliptic_partition_monomial(p[0])
    elif fam == Family.ELLIPTIC_PARTITION_GENERAL:
        I = elliptic_partition_general(p, d.seed, cfg.retries)
    elif fam == Family.ARTINIAN_ZR:
        I = artinian_Zr(p[0])
    elif fam == Family.FAT_POINT:
        I = fat_point(p[0])
    else:
        I = cone_over_rnc(p[0])
    I.provenance.setdefault("seed", d.seed)
    if cfg.field:
        I = I.with_field(Field(cfg.field))
    return I


def expected(d: SingularityDescriptor) -> Dict[str, int]:
    """Closed-form invariants the catalog entry is checked against (only in-range values)."""
    from ladder import Context, LadderFamily, closed_form_or_none
    fam, p = d.family, d.params
    out: Dict[str, int] = {}

    def put(name, value):
        if value is not None:
            out[name] = value

    if fam == Family.RATIONAL_PARTITION:
        n, r = sum(p), len(p)
        put("T1", closed_form_or_none(LadderFamily.RATIONAL, n, 1, Context.CURVE, r))
        put("T2", closed_form_or_none(LadderFamily.RATIONAL, n, 2, Context.CURVE, r))
        out.update(delta=n - 1, mu=2 * n - r - 1, t=n - 1, e=3 * (n - 1) - r)
    elif fam in (Family.ELLIPTIC_PARTITION_MONOMIAL, Family.ELLIPTIC_PARTITION_GENERAL):
        n, r = d.embdim, d.branches
        put("T1", closed_form_or_none(LadderFamily.ELLIPTIC, n, 1, Context.CURVE, r))
        put("T2", closed_form_or_none(LadderFamily.ELLIPTIC, n, 2, Context.CURVE, r))
        out.update(delta=n + 1, mu=2 * (n + 1) - r + 1, t=1, e=2 * n + 3 - r)
    elif fam in (Family.ARTINIAN_ZR, Family.FAT_POINT):
        lf = LadderFamily.RATIONAL if fam == Family.ARTINIAN_ZR else LadderFamily.ELLIPTIC
        for i in (0, 1, 2):
            put(f"T{i}", closed_form_or_none(lf, p[0], i, Context.POINT))
        out["length"] = p[0] + 1 if fam == Family.ARTINIAN_ZR else p[0] + 2
    else:
        put("T2", closed_form_or_none(LadderFamily.RATIONAL, p[0], 2, Context.SURFACE))
    return out


def expected_tangent(d: SingularityDescriptor) -> Dict[int, int]:
    return {int(k[1:]): v for k, v in expected(d).items() if k.startswith("T")}


def default_catalog(seed: int = 1) -> List[SingularityDescriptor]:
    out: List[SingularityDescriptor] = []
    for n in range(3, 7):
        out.extend(SingularityDescriptor(Family.RATIONAL_PARTITION, parts, seed) for parts in partitions(n))
    for n in range(4, 7):
        out.append(SingularityDescriptor(Family.ELLIPTIC_PARTITION_MONOMIAL, (n,), seed))
    for parts in [(2, 2, 1), (3, 1, 1), (2, 1, 1, 1), (3, 2, 1), (2, 2, 2), (4, 1, 1)]:
        out.append(SingularityDescriptor(Family.ELLIPTIC_PARTITION_GENERAL, parts, seed))
    for r in range(3, 7):
        out.append(SingularityDescriptor(Family.ARTINIAN_ZR, (r,), seed))
        out.append(SingularityDescriptor(Family.FAT_POINT, (r,), seed))
    for n in range(4, 7):
        out.append(SingularityDescriptor(Family.CONE_RNC, (n,), seed))
    return sorted(out, key=SingularityDescriptor.key)


def catalog_manifest(cfg: Optional[RunConfig] = None) -> Dict[str, object]:
    cfg = cfg or RunConfig()
    entries = []
    for d in default_catalog(cfg.seed):
        e = d.to_dict()
        e["label"] = d.label
        e["expected"] = expected(d)
        entries.append(e)
    return {"schema": "catalog/1", "field": cfg.field_name(), "seed": cfg.seed, "entries": entries}
