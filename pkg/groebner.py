"""
Buchberger engine for ideals and submodules of free modules over a weighted polynomial ring,
optionally modulo an ideal I acting on every position (submodules of (R/I)^r).

Pair handling follows the usual normal strategy (smallest lcm first, by degree) with the
Gebauer-Moeller criteria; the product criterion is used where it is valid (ideals, and pairs
against the quotient ideal). Everything else in this module is built on top of `_Engine`:
syzygies, lifting, elimination, intersections, kernels of ring maps, Hilbert functions,
minimal generators and minimal free resolutions.
"""
import heapq
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from core import (INFINITE, InvalidInput, ResourceCapExceeded, VerificationFailed,
                  certify_bases, check_deadline, degree_cap)
from polyring import (Exp, FreeElement, ModuleOrder, MonomialOrder, Poly, PolyRing,
                      coprime, divides, mono_div, mono_lcm, mono_mul,
                      parse_poly, format_poly, wdeg)

log = logging.getLogger(__name__)

Term = Tuple[int, Exp]
Vec = Dict[Term, object]


# =========================
# Engine
# =========================
class _Engine:
    """Mutable state of a single Buchberger run."""

    def __init__(self, ring: PolyRing, rank: int, order: ModuleOrder,
                 quotient: Sequence[Tuple[Exp, Dict[Exp, object]]] = (), what: str = "groebner"):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.norm = ring.field.norm
        self.inv = ring.field.inv
        self.quot = list(quotient)
        self.what = what
        self.elems: List[Vec] = []
        self.leads: List[Term] = []
        self.by_pos: Dict[int, List[int]] = {}
        self.heap: list = []
        self.live: Dict[int, tuple] = {}
        self._pair_id = 0
        self._ops = 0
        self.max_degree = 0
        self.pairs_done = 0
        self.cap = degree_cap()
        self._nkeys: Dict[Term, tuple] = {}

    # ---- order helpers
    def nkey(self, t: Term) -> tuple:
        k = self._nkeys.get(t)
        if k is None:
            k = tuple(-x for x in self.order.key(*t))
            self._nkeys[t] = k
        return k

    def lead_of(self, v: Vec) -> Term:
        return min(v, key=self.nkey)

    # ---- reduction
    def _find(self, t: Term, skip: int = -1):
        pos, e = t
        for le, q in self.quot:
            s = mono_div(e, le)
            if s is not None:
                return s, None, q, pos
        for i in self.by_pos.get(pos, ()):
            if i == skip:
                continue
            s = mono_div(e, self.leads[i][1])
            if s is not None:
                return s, i, None, pos
        return None

    def _sub(self, v: Vec, heap: list, c, s: Exp, i: Optional[int], q, pos: int) -> None:
        norm = self.norm
        nk = self.nkey
        if i is not None:
            items = ((p, mono_mul(e, s), a) for (p, e), a in self.elems[i].items())
        else:
            items = ((pos, mono_mul(e, s), a) for e, a in q.items())
        for p, e, a in items:
            k = (p, e)
            old = v.get(k)
            nv = norm((old or 0) - c * a)
            if nv:
                if old is None:
                    heapq.heappush(heap, (nk(k), k))
                v[k] = nv
            elif old is not None:
                del v[k]

    def reduce(self, vec: Vec, skip: int = -1) -> Vec:
        """Full normal form of vec against the current elements and the quotient."""
        v = dict(vec)
        heap = [(self.nkey(k), k) for k in v]
        heapq.heapify(heap)
        rem: Vec = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = v.get(t)
            if c is None:
                continue
            self._ops += 1
            if self._ops % 2000 == 0:
                check_deadline(self.what)
            r = self._find(t, skip)
            if r is None:
                rem[t] = c
                del v[t]
                continue
            s, i, q, pos = r
            self._sub(v, heap, c, s, i, q, pos)
        return rem

    def monic(self, v: Vec) -> Vec:
        c = v[self.lead_of(v)]
        if c == 1:
            return v
        ci = self.inv(c)
        norm = self.norm
        return {k: norm(a * ci) for k, a in v.items()}

    # ---- pairs
    def _push(self, i: int, j, pos: int, L: Exp) -> None:
        deg = self.order.degree(pos, L)
        pid = self._pair_id
        self._pair_id += 1
        self.live[pid] = (i, j, pos, L)
        heapq.heappush(self.heap, ((deg,) + self.order.key(pos, L), pid))

    def insert(self, v: Vec) -> int:
        """Add a reduced nonzero vector and update the pair set (Gebauer-Moeller)."""
        v = self.monic(v)
        n = len(self.elems)
        pos, m = self.lead_of(v)
        # chain criterion on old explicit pairs
        dead = []
        for pid, (i, j, p, L) in self.live.items():
            if j < 0 or p != pos or not divides(m, L):
                continue
            if mono_lcm(self.leads[i][1], m) != L and mono_lcm(self.leads[j][1], m) != L:
                dead.append(pid)
        for pid in dead:
            del self.live[pid]
        # new explicit pairs at the same position
        groups: Dict[Exp, List[int]] = {}
        for i in self.by_pos.get(pos, ()):
            groups.setdefault(mono_lcm(self.leads[i][1], m), []).append(i)
        kept: List[Exp] = []
        for L in sorted(groups, key=lambda x: self.order.key(pos, x)):
            if any(divides(L_, L) for L_ in kept):
                continue
            kept.append(L)
            if self.rank == 1 and any(coprime(self.leads[i][1], m) for i in groups[L]):
                continue
            self._push(min(groups[L]), n, pos, L)
        # pairs against the quotient ideal
        for qi, (le, _) in enumerate(self.quot):
            if not coprime(le, m):
                self._push(n, -1 - qi, pos, mono_lcm(le, m))
        self.elems.append(v)
        self.leads.append((pos, m))
        self.by_pos.setdefault(pos, []).append(n)
        return n

    def spair(self, i: int, j: int, pos: int, L: Exp) -> Vec:
        v: Vec = {}
        heap: list = []
        s = mono_div(L, self.leads[i][1])
        self._sub(v, heap, self.norm(-1), s, i, None, pos)
        if j >= 0:
            s2 = mono_div(L, self.leads[j][1])
            self._sub(v, heap, 1, s2, j, None, pos)
        else:
            le, q = self.quot[-1 - j]
            self._sub(v, heap, 1, mono_div(L, le), None, q, pos)
        return v

    def run(self) -> None:
        while self.heap:
            _, pid = heapq.heappop(self.heap)
            pair = self.live.pop(pid, None)
            if pair is None:
                continue
            i, j, pos, L = pair
            deg = self.order.degree(pos, L)
            if deg > self.cap:
                raise ResourceCapExceeded(
                    f"degree cap {self.cap} exceeded in {self.what} (pair degree {deg})")
            self.max_degree = max(self.max_degree, deg)
            self.pairs_done += 1
            h = self.reduce(self.spair(i, j, pos, L))
            if h:
                self.insert(h)
        check_deadline(self.what)

    def add(self, vec: Vec) -> bool:
        """Reduce, insert if new, and complete. Returns False for members."""
        h = self.reduce(vec)
        if not h:
            return False
        self.insert(h)
        self.run()
        return True

    # ---- finalization
    def reduced_elements(self) -> List[Vec]:
        order = lambda n: self.order.key(*self.leads[n])
        kept: List[int] = []
        for n in sorted(range(len(self.elems)), key=order):
            pos, m = self.leads[n]
            if any(self.leads[k][0] == pos and divides(self.leads[k][1], m) for k in kept):
                continue
            kept.append(n)
        # restrict reducers to the minimal basis
        self.by_pos = {}
        for n in kept:
            self.by_pos.setdefault(self.leads[n][0], []).append(n)
        out = []
        for n in kept:
            v = self.reduce(self.elems[n], skip=n)
            out.append(self.monic(v))
        for n, v in zip(kept, out):
            self.elems[n] = v
        return out


def _quotient_basis(quotient, ring: PolyRing, mono: MonomialOrder):
    """(lead, terms) pairs of the reduced basis of the quotient ideal under mono."""
    if quotient is None:
        return []
    if isinstance(quotient, GroebnerBasis):
        if quotient.order.mono != mono or quotient.rank != 1:
            raise InvalidInput("quotient basis computed under another order")
        return [(b.lead_exp(), b.poly_terms()) for b in quotient.basis]
    if isinstance(quotient, IdealPresentation):
        if quotient.ring != ring:
            raise InvalidInput("quotient ideal lives in another ring")
        if quotient.mono_order() == mono:
            return _quotient_basis(quotient.gb(), ring, mono)
        gens = quotient.generators
    else:
        gens = list(quotient)
    gens = [g for g in gens if g.terms]
    if not gens:
        return []
    for g in gens:
        if g.ring != ring:
            raise InvalidInput("quotient ideal lives in another ring")
    gb = buchberger([FreeElement.from_polys([g]) for g in gens], ModuleOrder(mono))
    return [(b.lead_exp(), b.poly_terms()) for b in gb.basis]
# =========================
# Groebner bases
# =========================
@dataclass
class GBElement:
    vec: FreeElement
    lead: Term

    def lead_exp(self) -> Exp:
        return self.lead[1]

    def poly_terms(self) -> Dict[Exp, object]:
        return {e: c for (p, e), c in self.vec.terms.items()}


class GroebnerBasis:
    """Reduced Groebner basis of a submodule of R^rank (modulo quotient I on every position)."""

    def __init__(self, ring: PolyRing, rank: int, order: ModuleOrder, basis: List[GBElement],
                 quotient: Sequence[Tuple[Exp, Dict[Exp, object]]] = (), reduced: bool = True):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.basis = basis
        self.quotient = list(quotient)
        self.reduced = reduced
        self._engine: Optional[_Engine] = None

    @property
    def elements(self) -> List[FreeElement]:
        return [b.vec for b in self.basis]

    def polys(self) -> List[Poly]:
        """Rank-1 view."""
        return [b.vec.components()[0] for b in self.basis]

    def leads(self) -> List[Term]:
        return [b.lead for b in self.basis]

    def leads_at(self, pos: int) -> List[Exp]:
        out = [b.lead[1] for b in self.basis if b.lead[0] == pos]
        out.extend(le for le, _ in self.quotient)
        return out

    def engine(self) -> _Engine:
        if self._engine is None:
            eng = _Engine(self.ring, self.rank, self.order, self.quotient, "normal form")
            for b in self.basis:
                n = len(eng.elems)
                eng.elems.append(dict(b.vec.terms))
                eng.leads.append(b.lead)
                eng.by_pos.setdefault(b.lead[0], []).append(n)
            self._engine = eng
        return self._engine

    def reduce_vec(self, v: Vec) -> Vec:
        return self.engine().reduce(v)

    def normal_form(self, v) -> FreeElement:
        if isinstance(v, Poly):
            v = FreeElement.from_polys([v])
        if v.ring != self.ring or v.rank != self.rank:
            raise InvalidInput("normal form of an element of another free module")
        return FreeElement(self.ring, self.rank, self.reduce_vec(v.terms))

    def contains(self, v) -> bool:
        return self.normal_form(v).is_zero()

    def is_unit(self) -> bool:
        z = self.ring.zero_exp()
        return self.rank == 1 and (any(b.lead == (0, z) for b in self.basis)
                                   or any(le == z for le, _ in self.quotient))

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"GroebnerBasis({len(self.basis)} elements, rank {self.rank})"


def buchberger(gens: Sequence[FreeElement], order: ModuleOrder, quotient=None,
               what: str = "groebner") -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by gens (plus quotient * R^rank)."""
    gens = list(gens)
    if not gens:
        raise InvalidInput("buchberger needs at least one generator (it fixes ring and rank)")
    ring, rank = gens[0].ring, gens[0].rank
    for g in gens:
        if g.ring != ring or g.rank != rank:
            raise InvalidInput("generators must share ring and rank")
    quot = _quotient_basis(quotient, ring, order.mono)
    eng = _Engine(ring, rank, order, quot, what)
    for g in sorted((g for g in gens if g.terms), key=lambda g: g.degree(order.shifts)):
        h = eng.reduce(g.terms)
        if h:
            eng.insert(h)
    eng.run()
    red = eng.reduced_elements()
    basis = [GBElement(FreeElement(ring, rank, v), eng.lead_of(v)) for v in red]
    gb = GroebnerBasis(ring, rank, order, basis, quot)
    log.debug("[groebner] %s: %d elements, %d pairs, max degree %d",
              what, len(basis), eng.pairs_done, eng.max_degree)
    if certify_bases():
        certify(gb)
    return gb


def normal_form(f, gb: GroebnerBasis) -> FreeElement:
    return gb.normal_form(f)


def check_groebner(gb: GroebnerBasis) -> bool:
    """Every S-pair (among elements, and against the quotient) reduces to zero."""
    eng = gb.engine()
    n = len(gb.basis)
    for a in range(n):
        pa, ea = gb.basis[a].lead
        for b in range(a + 1, n):
            pb, eb = gb.basis[b].lead
            if pa != pb:
                continue
            if eng.reduce(eng.spair(a, b, pa, mono_lcm(ea, eb))):
                return False
        for qi, (le, _) in enumerate(gb.quotient):
            if coprime(le, ea):
                continue
            if eng.reduce(eng.spair(a, -1 - qi, pa, mono_lcm(le, ea))):
                return False
    return True


def certify(gb: GroebnerBasis) -> GroebnerBasis:
    if not check_groebner(gb):
        raise VerificationFailed("Groebner basis failed the S-pair certificate")
    return gb


# =========================
# Syzygies and lifting
# =========================
class TrackedBasis:
    """
    Groebner basis of {(g_i | e_i)} in R^(r+k) under a position elimination order: the
    elements supported on the last k positions generate the syzygies of g_1..g_k
    (over R/I when a quotient is given), and reducing (v | 0) lifts v onto the g_i.
    """

    def __init__(self, gens: Sequence[FreeElement], shifts: Sequence[int] = (), quotient=None,
                 mono: Optional[MonomialOrder] = None, rank: Optional[int] = None,
                 ring: Optional[PolyRing] = None, what: str = "syzygies"):
        gens = list(gens)
        if not gens and (rank is None or ring is None):
            raise InvalidInput("tracked basis of no generators needs ring and rank")
        self.ring = ring or gens[0].ring
        self.r = rank if rank is not None else gens[0].rank
        self.k = len(gens)
        self.mono = mono or MonomialOrder("grevlex", self.ring.weights)
        self.shifts = tuple(shifts) + (0,) * max(0, self.r - len(shifts))
        self.gen_degrees = [g.degree(self.shifts) if g.terms else 0 for g in gens]
        total = self.shifts + tuple(self.gen_degrees)
        order = ModuleOrder(self.mono, total, "top", elim_rank=self.r)
        z = self.ring.zero_exp()
        vecs = []
        for i, g in enumerate(gens):
            if g.ring != self.ring or g.rank != self.r:
                raise InvalidInput("generators must share ring and rank")
            v = dict(g.terms)
            v[(self.r + i, z)] = 1
            vecs.append(FreeElement(self.ring, self.r + self.k, v))
        self.gb = buchberger(vecs, order, quotient, what) if vecs else None

    def syzygies(self) -> List[FreeElement]:
        if self.gb is None:
            return []
        out = []
        for b in self.gb.basis:
            if b.lead[0] >= self.r:
                out.append(FreeElement(self.ring, self.k,
                                       {(p - self.r, e): c for (p, e), c in b.vec.terms.items()}))
        return out

    def lift(self, v: FreeElement) -> List[Poly]:
        """Coefficients c with v = sum c_i g_i; InvalidInput when v is not in the span."""
        if self.gb is None:
            if v.terms:
                raise InvalidInput("vector is not in the submodule")
            return []
        rem = self.gb.reduce_vec(dict(v.terms))
        if any(p < self.r for p, _ in rem):
            raise InvalidInput("vector is not in the submodule")
        norm = self.ring.field.norm
        comps: List[Dict[Exp, object]] = [{} for _ in range(self.k)]
        for (p, e), c in rem.items():
            comps[p - self.r][e] = norm(-c)
        return [Poly(self.ring, d) for d in comps]


def syzygies(gens: Sequence[FreeElement], shifts: Sequence[int] = (), quotient=None) -> List[FreeElement]:
    """Generators of the kernel of R^k -> R^r (or over R/I) sending e_i to gens[i]."""
    return TrackedBasis(gens, shifts, quotient).syzygies()


def lift(v: FreeElement, gens: Sequence[FreeElement], shifts: Sequence[int] = (), quotient=None) -> List[Poly]:
    return TrackedBasis(gens, shifts, quotient).lift(v)


def submodule_basis(gens: Sequence[FreeElement], shifts: Sequence[int] = (), quotient=None,
                    rank: Optional[int] = None, ring: Optional[PolyRing] = None) -> GroebnerBasis:
    """Groebner basis of <gens> + quotient * R^rank under graded term-over-position."""
    gens = [g for g in gens if g.terms]
    if gens:
        ring, rank = gens[0].ring, gens[0].rank
    elif rank is None or ring is None:
        raise InvalidInput("empty submodule needs ring and rank")
    order = ModuleOrder(MonomialOrder("grevlex", ring.weights), shifts, "top")
    if not gens:
        return GroebnerBasis(ring, rank, order, [], _quotient_basis(quotient, ring, order.mono))
    return buchberger(gens, order, quotient, "submodule")
# =========================
# Ideals
# =========================
@dataclass
class IdealPresentation:
    ring: PolyRing
    generators: List[Poly]
    order: str = "grevlex"
    provenance: Dict[str, object] = field(default_factory=dict)
    _gb: Optional[GroebnerBasis] = field(default=None, repr=False, compare=False)

    SCHEMA = "singularity-ideal/1"

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring:
                raise InvalidInput("generator outside the ideal's ring")
        self.generators = [g for g in self.generators if g.terms]

    def mono_order(self) -> MonomialOrder:
        return MonomialOrder.parse(self.order, self.ring.weights)

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            if not self.generators:
                self._gb = GroebnerBasis(self.ring, 1, ModuleOrder(self.mono_order()), [])
            else:
                self._gb = buchberger([FreeElement.from_polys([g]) for g in self.generators],
                                      ModuleOrder(self.mono_order()), what="ideal basis")
        return self._gb

    def gb_polys(self) -> List[Poly]:
        return self.gb().polys()

    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_proper(self) -> bool:
        return not self.gb().is_unit()

    def contains(self, f: Poly) -> bool:
        if f.ring != self.ring:
            raise InvalidInput("membership test across rings")
        if not self.generators:
            return f.is_zero()
        return self.gb().contains(f)

    def same_ideal(self, other: "IdealPresentation") -> bool:
        return (all(other.contains(g) for g in self.generators)
                and all(self.contains(g) for g in other.generators))

    def quotient_dimension(self):
        return standard_monomial_dimension(self.gb())

    def with_field(self, fld) -> "IdealPresentation":
        ring = self.ring.with_field(fld)
        gens = []
        for g in self.generators:
            terms = {}
            for e, c in g.terms.items():
                if fld.p and hasattr(c, "denominator") and c.denominator % fld.p == 0:
                    raise InvalidInput(f"coefficient {c} has a denominator divisible by {fld.p}")
                terms[e] = fld.norm(c)
            gens.append(Poly(ring, terms))
        prov = dict(self.provenance)
        prov["field"] = fld.name
        return IdealPresentation(ring, gens, self.order, prov)

    def to_dict(self) -> Dict[str, object]:
        return {
            "schema": self.SCHEMA,
            "ring": {"variables": list(self.ring.names), "weights": list(self.ring.weights),
                     "field": self.ring.field.name},
            "generators": [format_poly(g) for g in self.generators],
            "order": self.order,
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "IdealPresentation":
        from polyring import Field
        if not isinstance(data, dict) or data.get("schema") != cls.SCHEMA:
            raise InvalidInput(f"expected an ideal document with schema {cls.SCHEMA}")
        try:
            r = data["ring"]
            fname = str(r.get("field", "QQ"))
            p = 0 if fname == "QQ" else int(fname[3:-1])
            ring = PolyRing(r["variables"], r.get("weights"), Field(p))
            gens = [parse_poly(s, ring) for s in data.get("generators", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed ideal document: {exc}") from exc
        return cls(ring, gens, str(data.get("order", "grevlex")), dict(data.get("provenance") or {}))

    def __repr__(self):
        return f"IdealPresentation({self.ring.names}: {[format_poly(g) for g in self.generators]})"


def ideal_sum(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    if I.ring != J.ring:
        raise InvalidInput("sum of ideals in different rings")
    return IdealPresentation(I.ring, I.generators + J.generators, I.order)


# =========================
# Standard monomials
# =========================
def _finite_at(leads: Sequence[Exp], nvars: int) -> bool:
    zero = (0,) * nvars
    if zero in leads:
        return True
    for j in range(nvars):
        if not any(e[j] > 0 and sum(e) == e[j] for e in leads):
            return False
    return True


def standard_monomials_at(leads: Sequence[Exp], nvars: int, max_degree: Optional[int] = None,
                          weights: Optional[Sequence[int]] = None) -> Iterable[Exp]:
    """Monomials not divisible by any lead, each exactly once (nondecreasing variable walk)."""
    stack = [((0,) * nvars, 0)]
    while stack:
        e, start = stack.pop()
        if any(divides(le, e) for le in leads):
            continue
        if max_degree is not None and wdeg(e, weights) > max_degree:
            continue
        yield e
        for j in range(start, nvars):
            f = list(e)
            f[j] += 1
            stack.append((tuple(f), j))


def standard_monomial_dimension(gb: GroebnerBasis):
    """Number of standard monomials in every position, or INFINITE."""
    n = gb.ring.ngens
    total = 0
    for pos in range(gb.rank):
        leads = gb.leads_at(pos)
        if not _finite_at(leads, n):
            return INFINITE
        total += sum(1 for _ in standard_monomials_at(leads, n))
    return total


def standard_basis(gb: GroebnerBasis) -> List[Term]:
    """All standard terms (pos, exp) of a finite quotient, sorted."""
    n = gb.ring.ngens
    out = []
    for pos in range(gb.rank):
        leads = gb.leads_at(pos)
        if not _finite_at(leads, n):
            raise InvalidInput("quotient is not finite dimensional")
        out.extend((pos, e) for e in standard_monomials_at(leads, n))
    return sorted(out)


def hilbert_function(gb: GroebnerBasis, upto: int) -> List[int]:
    """dim of the degree-d piece (shifted degrees for modules), d = 0..upto."""
    w = gb.ring.weights
    out = [0] * (upto + 1)
    for pos in range(gb.rank):
        sh = gb.order.shift(pos)
        for e in standard_monomials_at(gb.leads_at(pos), gb.ring.ngens, upto - sh, w):
            d = wdeg(e, w) + sh
            if 0 <= d <= upto:
                out[d] += 1
    return out


# =========================
# Elimination, intersection, kernels
# =========================
def eliminate(I: IdealPresentation, keep: Sequence[str]) -> IdealPresentation:
    """I intersected with the subring in the kept variables (block elimination order)."""
    ring = I.ring
    keep_idx = [ring.index(nm) for nm in keep]
    if len(set(keep_idx)) != len(keep_idx):
        raise InvalidInput("duplicate kept variables")
    keep_idx = sorted(keep_idx)
    drop_idx = [i for i in range(ring.ngens) if i not in keep_idx]
    sub = PolyRing([ring.names[i] for i in keep_idx], [ring.weights[i] for i in keep_idx], ring.field)
    if not I.generators:
        return IdealPresentation(sub, [], "grevlex", dict(I.provenance))
    perm = drop_idx + keep_idx
    pring = PolyRing([ring.names[i] for i in perm], [ring.weights[i] for i in perm], ring.field)
    gens = [Poly(pring, {tuple(e[i] for i in perm): c for e, c in g.terms.items()})
            for g in I.generators]
    k = len(drop_idx)
    order = ModuleOrder(MonomialOrder("elim", pring.weights, k))
    gb = buchberger([FreeElement.from_polys([g]) for g in gens], order, what="elimination")
    out = []
    for g in gb.polys():
        if all(not any(e[:k]) for e in g.terms):
            out.append(Poly(sub, {e[k:]: c for e, c in g.terms.items()}))
    return IdealPresentation(sub, out, "grevlex", dict(I.provenance))


def intersect(*ideals: IdealPresentation) -> IdealPresentation:
    """Intersection through the kernel of R -> R/I + R/J (position elimination)."""
    if not ideals:
        raise InvalidInput("intersection of no ideals")
    res = ideals[0]
    for J in ideals[1:]:
        res = _intersect2(res, J)
    return res


def _intersect2(I: IdealPresentation, J: IdealPresentation) -> IdealPresentation:
    ring = I.ring
    if J.ring != ring:
        raise InvalidInput("intersection of ideals in different rings")
    if not I.generators or not J.generators:
        return IdealPresentation(ring, [], I.order)
    z = ring.zero_exp()
    vecs = [FreeElement(ring, 3, {(0, z): 1, (1, z): 1, (2, z): 1})]
    for f in I.generators:
        vecs.append(FreeElement(ring, 3, {(0, e): c for e, c in f.terms.items()}))
    for g in J.generators:
        vecs.append(FreeElement(ring, 3, {(1, e): c for e, c in g.terms.items()}))
    order = ModuleOrder(MonomialOrder("grevlex", ring.weights), (0, 0, 0), "top", elim_rank=2)
    gb = buchberger(vecs, order, what="intersection")
    out = []
    for b in gb.basis:
        if b.lead[0] == 2:
            out.append(Poly(ring, {e: c for (p, e), c in b.vec.terms.items()}))
    return IdealPresentation(ring, out, I.order)


def kernel_of_ring_map(images: Sequence[Poly], names: Optional[Sequence[str]] = None,
                       weights: Optional[Sequence[int]] = None) -> IdealPresentation:
    """Ideal of the curve germ t -> (images) by eliminating t from the graph ideal."""
    images = list(images)
    if not images:
        raise InvalidInput("ring map without images")
    tring = images[0].ring
    if tring.ngens != 1:
        raise InvalidInput("images must be polynomials in one variable")
    for g in images:
        if g.ring != tring:
            raise InvalidInput("images live in different rings")
        if g.constant_term():
            raise InvalidInput(f"image {format_poly(g)} has a nonzero constant term")
    names = list(names) if names else [f"z{i + 1}" for i in range(len(images))]
    if weights is None:
        weights = [g.degree() if g.terms else 1 for g in images]
    tname = tring.names[0]
    if tname in names:
        tname = "t_"
    big = PolyRing([tname] + names, [1] + list(weights), tring.field)
    gens = []
    for i, g in enumerate(images):
        v = {(0,) + tuple(1 if j == i else 0 for j in range(len(images))): 1}
        h = Poly(big, v)
        h = h - Poly(big, {(e[0],) + (0,) * len(images): c for e, c in g.terms.items()})
        gens.append(h)
    res = eliminate(IdealPresentation(big, gens), names)
    res.provenance = {"parametrization": [format_poly(g) for g in images]}
    return res


# =========================
# Minimal generators and resolutions
# =========================
def minimal_generators(gens: Sequence[FreeElement], shifts: Sequence[int] = (), quotient=None,
                       rank: Optional[int] = None, ring: Optional[PolyRing] = None) -> List[FreeElement]:
    """Minimal homogeneous generating set (degree-sorted incremental Buchberger)."""
    gens = [g for g in gens if g.terms]
    if not gens:
        return []
    ring = gens[0].ring
    rank = gens[0].rank
    for g in gens:
        if not g.is_homogeneous(shifts):
            raise InvalidInput("minimal generators need homogeneous input")
    order = ModuleOrder(MonomialOrder("grevlex", ring.weights), shifts, "top")
    quot = _quotient_basis(quotient, ring, order.mono)
    eng = _Engine(ring, rank, order, quot, "minimal generators")
    kept = []
    for g in sorted(gens, key=lambda g: g.degree(shifts)):
        if eng.add(g.terms):
            kept.append(g)
    return kept


def minimal_ideal_generators(I: IdealPresentation) -> List[Poly]:
    vecs = minimal_generators([FreeElement.from_polys([g]) for g in I.generators])
    return [v.components()[0] for v in vecs]


@dataclass
class Resolution:
    """maps[i] has the columns of e_(i+1): elements of R^(rank_i) with shifts degrees[i]."""
    ring: PolyRing
    maps: List[List[FreeElement]]
    degrees: List[List[int]]

    @property
    def ranks(self) -> List[int]:
        return [len(d) for d in self.degrees]

    def betti(self) -> Dict[int, Dict[int, int]]:
        table: Dict[int, Dict[int, int]] = {}
        for i, degs in enumerate(self.degrees):
            row: Dict[int, int] = {}
            for d in degs:
                row[d] = row.get(d, 0) + 1
            table[i] = dict(sorted(row.items()))
        return table

    def to_dict(self) -> Dict[str, object]:
        return {"ranks": self.ranks,
                "betti": {str(i): {str(d): n for d, n in row.items()} for i, row in self.betti().items()}}


def betti_table(res: Resolution) -> Dict[int, Dict[int, int]]:
    return res.betti()


def _apply(col_images: Sequence[FreeElement], v: FreeElement) -> FreeElement:
    """Image of v under the map e_i -> col_images[i]."""
    ring = col_images[0].ring
    out = FreeElement(ring, col_images[0].rank, {})
    for i, p in enumerate(v.components()):
        if p.terms:
            out = out + col_images[i].mul_poly(p)
    return out


def minimal_free_resolution(I: IdealPresentation, length: int) -> Resolution:
    if not I.is_homogeneous():
        raise InvalidInput("minimal free resolution needs a homogeneous ideal")
    ring = I.ring
    degrees = [[0]]
    maps: List[List[FreeElement]] = []
    cols = minimal_generators([FreeElement.from_polys([g]) for g in I.generators])
    shifts = [0]
    step = 0
    while cols and step < length:
        cols = sorted(cols, key=lambda c: c.degree(shifts))
        maps.append(cols)
        new_shifts = [c.degree(shifts) for c in cols]
        degrees.append(new_shifts)
        step += 1
        if step >= length:
            break
        syz = TrackedBasis(cols, shifts, what="resolution").syzygies()
        cols = minimal_generators(syz, new_shifts)
        shifts = new_shifts
    res = Resolution(ring, maps, degrees)
    _check_resolution(res)
    log.debug("[groebner] resolution ranks %s", res.ranks)
    return res


def _check_resolution(res: Resolution) -> None:
    z = res.ring.zero_exp()
    for i in range(len(res.maps)):
        for c in res.maps[i]:
            if i > 0 and any(e == z for _, e in c.terms):
                raise VerificationFailed("resolution map has a unit entry")
        if i + 1 < len(res.maps):
            for c in res.maps[i + 1]:
                if _apply(res.maps[i], c).terms:
                    raise VerificationFailed("resolution maps do not compose to zero")
