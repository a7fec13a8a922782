"""
Exact linear algebra for the dense oracles.

Sparse rows are dicts key -> coefficient over a polyring.Field. Over GF(p) plain rank
questions go through numpy (int64 elimination; p < 2^31 keeps products in range).
"""
import heapq
import logging
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from polyring import Field, Poly, PolyRing, monomials_of_degree, mono_mul, wdeg

log = logging.getLogger(__name__)

Row = Dict[Hashable, object]


class Echelon:
    """
    Incremental echelon form. Every stored row has its pivot (smallest key) normalized to 1
    and no other key below the pivot. Rows remember the tagged inputs they are made of.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: Dict[Hashable, Tuple[Row, Dict[Hashable, object]]] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Row) -> Tuple[Row, Dict[Hashable, object]]:
        """Residual of v and the tagged combination that was subtracted."""
        norm = self.field.norm
        v = dict(v)
        used: Dict[Hashable, object] = {}
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c or k not in self.rows:
                continue
            row, combo = self.rows[k]
            for kk, a in row.items():
                nv = norm(v.get(kk, 0) - c * a)
                if nv:
                    if kk not in v:
                        heapq.heappush(heap, kk)
                    v[kk] = nv
                else:
                    v.pop(kk, None)
            for t, a in combo.items():
                nv = norm(used.get(t, 0) + c * a)
                if nv:
                    used[t] = nv
                else:
                    used.pop(t, None)
        return v, used

    def add(self, v: Row, tag: Hashable = None) -> Optional[Dict[Hashable, object]]:
        """
        Insert v. Returns None when v was independent, otherwise the relation
        {tag: 1, other tags: -coefficients} expressing the dependency.
        """
        norm = self.field.norm
        res, used = self.reduce(v)
        if not res:
            if tag is None:
                return {}
            rel = {tag: 1}
            for t, a in used.items():
                rel[t] = norm(-a)
            return rel
        piv = min(res)
        ci = self.field.inv(res[piv])
        row = {k: norm(a * ci) for k, a in res.items()}
        combo: Dict[Hashable, object] = {}
        if tag is not None:
            combo[tag] = ci
        for t, a in used.items():
            nv = norm(-a * ci)
            if nv:
                combo[t] = norm(combo.get(t, 0) + nv) if t in combo else nv
        self.rows[piv] = (row, combo)
        return None

    def contains(self, v: Row) -> bool:
        return not self.reduce(v)[0]


class QuotientSpace:
    """Complement basis of span(sub) inside span(sub + full), with coordinates mod sub."""

    def __init__(self, field: Field, sub: Sequence[Row], full: Sequence[Row]):
        self.field = field
        self.ech = Echelon(field)
        for v in sub:
            self.ech.add(v)
        self.basis: List[Row] = []
        for v in full:
            if self.ech.add(v, tag=len(self.basis)) is None:
                self.basis.append(v)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v: Row) -> List[object]:
        res, used = self.ech.reduce(v)
        assert not res, "vector outside the ambient span"
        return [used.get(i, 0) for i in range(len(self.basis))]


def kernel_basis(images: Sequence[Row], field: Field) -> List[Dict[int, object]]:
    """Basis of {c : sum c_i images[i] = 0}, one relation per dependent input."""
    ech = Echelon(field)
    out = []
    for i, v in enumerate(images):
        rel = ech.add(v, tag=i)
        if rel is not None:
            out.append(rel)
    return out


def _dtype_mod(p: int):
    # products of two residues must stay below 2**63
    return np.int64 if p * p < 2 ** 63 else object


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = np.array(mat, dtype=_dtype_mod(p)) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        below = np.nonzero(a[r + 1:, c])[0] + r + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        r += 1
    return r


def rank(rows: Sequence[Row], field: Field) -> int:
    rows = [r for r in rows if r]
    if not rows:
        return 0
    if field.p:
        keys = sorted({k for r in rows for k in r})
        idx = {k: i for i, k in enumerate(keys)}
        mat = np.zeros((len(rows), len(keys)), dtype=_dtype_mod(field.p))
        for i, r in enumerate(rows):
            for k, c in r.items():
                mat[i, idx[k]] = int(c)
        return rank_mod_p(mat, field.p)
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    return ech.rank


def nullity(rows: Sequence[Row], unknowns: int, field: Field) -> int:
    """dim of the solution space of the homogeneous system given by rows."""
    return unknowns - rank(rows, field)


def hilbert_function_dense(ring: PolyRing, gens: Sequence[Poly], upto: int) -> List[int]:
    """dim (R/I)_d by spanning I_d with monomial multiples of homogeneous generators."""
    out = []
    w = ring.weights
    for d in range(upto + 1):
        mons = monomials_of_degree(w, d)
        rows = []
        for g in gens:
            gd = g.degree()
            if gd > d or not g.terms:
                continue
            for m in monomials_of_degree(w, d - gd):
                rows.append({mono_mul(e, m): c for e, c in g.terms.items()})
        out.append(len(mons) - rank(rows, ring.field))
    return out
