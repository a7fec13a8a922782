"""
Exact scalars, weighted polynomial rings, monomial orders and free-module elements.

Exponent vectors are plain tuples; a polynomial is a dict exponent -> nonzero coefficient.
Coefficients live in QQ (int or Fraction, canonical: integral values are stored as int)
or in GF(p) (ints in [0, p)). The two modes never mix inside one ring.
"""
import re
import logging
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from core import InvalidInput

log = logging.getLogger(__name__)

Exp = Tuple[int, ...]


# =========================
# Scalars
# =========================
class Field:
    __slots__ = ("p",)

    def __init__(self, characteristic: int = 0):
        self.p = int(characteristic)

    @property
    def name(self) -> str:
        return "QQ" if not self.p else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return self.name

    def __call__(self, value):
        if isinstance(value, str):
            value = Fraction(value.strip())
        return self.norm(value)

    def norm(self, c):
        p = self.p
        if p:
            if isinstance(c, Fraction):
                return (c.numerator * pow(c.denominator, -1, p)) % p
            return int(c) % p
        if isinstance(c, Fraction):
            return c.numerator if c.denominator == 1 else c
        return int(c)

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(c), -1, self.p)
        return self.norm(Fraction(1) / Fraction(c))

    def div(self, a, b):
        return self.norm(a * self.inv(b))


# =========================
# Monomials
# =========================
def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exp, b: Exp) -> Optional[Exp]:
    """a / b if b divides a, else None."""
    out = []
    for x, y in zip(a, b):
        if y > x:
            return None
        out.append(x - y)
    return tuple(out)


def divides(b: Exp, a: Exp) -> bool:
    for x, y in zip(a, b):
        if y > x:
            return False
    return True


def mono_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def coprime(a: Exp, b: Exp) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def wdeg(exp: Exp, weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(exp, weights))


def monomials_of_degree(weights: Sequence[int], d: int) -> List[Exp]:
    """All exponent vectors of weighted degree d, in a fixed (lex-descending) order."""
    n = len(weights)
    out: List[Exp] = []
    if d < 0:
        return out
    if n == 0:
        return [()] if d == 0 else out

    def rec(i: int, left: int, acc: List[int]):
        if i == n - 1:
            if left % weights[i] == 0:
                out.append(tuple(acc + [left // weights[i]]))
            return
        for e in range(left // weights[i], -1, -1):
            rec(i + 1, left - e * weights[i], acc + [e])

    rec(0, d, [])
    return out


# =========================
# Monomial orders
# =========================
class MonomialOrder:
    """
    kind: 'grevlex' (weighted degree, then reverse lex), 'lex', or 'elim' (block order:
    the first `block` variables are eliminated, each block graded reverse lex).
    key(exp) is increasing in the order.
    """

    def __init__(self, kind: str, weights: Sequence[int], block: int = 0):
        if kind not in {"grevlex", "lex", "elim"}:
            raise InvalidInput(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.weights = tuple(weights)
        self.block = int(block)
        w = self.weights
        k = self.block
        if kind == "grevlex":
            def key(e):
                return (sum(a * b for a, b in zip(e, w)),) + tuple(-x for x in reversed(e))
        elif kind == "lex":
            def key(e):
                return e
        else:
            def key(e):
                h, t = e[:k], e[k:]
                return ((sum(a * b for a, b in zip(h, w)),) + tuple(-x for x in reversed(h))
                        + (sum(a * b for a, b in zip(t, w[k:])),) + tuple(-x for x in reversed(t)))
        self.key = key

    @property
    def graded(self) -> bool:
        return self.kind == "grevlex"

    @property
    def name(self) -> str:
        return f"elim:{self.block}" if self.kind == "elim" else self.kind

    @classmethod
    def parse(cls, desc: str, weights: Sequence[int]) -> "MonomialOrder":
        if desc.startswith("elim:"):
            return cls("elim", weights, int(desc.split(":", 1)[1]))
        return cls(desc, weights)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.weights, self.block) == (
            other.kind, other.weights, other.block)

    def __hash__(self):
        return hash((self.kind, self.weights, self.block))

    def __repr__(self):
        return f"MonomialOrder({self.name})"


class ModuleOrder:
    """
    Order on terms (pos, exp) of a free module.
    style 'top': term over position, with a shifted degree prefix for graded orders;
    style 'pot': position over term.
    Positions below elim_rank dominate every position at or above it.
    Lower position index wins ties.
    """

    def __init__(self, mono: MonomialOrder, shifts: Sequence[int] = (), style: str = "top",
                 elim_rank: int = 0):
        self.mono = mono
        self.shifts = tuple(shifts)
        self.style = style
        self.elim_rank = int(elim_rank)
        self._cache: Dict[Tuple[int, Exp], tuple] = {}

    def shift(self, pos: int) -> int:
        return self.shifts[pos] if pos < len(self.shifts) else 0

    def key(self, pos: int, exp: Exp) -> tuple:
        t = (pos, exp)
        k = self._cache.get(t)
        if k is not None:
            return k
        mk = self.mono.key(exp)
        if self.style == "pot":
            k = (-pos,) + mk
        elif self.mono.graded:
            k = (wdeg(exp, self.mono.weights) + self.shift(pos),) + mk + (-pos,)
        else:
            k = mk + (-pos,)
        if self.elim_rank:
            k = (pos < self.elim_rank,) + k
        if len(self._cache) < 2_000_000:
            self._cache[t] = k
        return k

    def degree(self, pos: int, exp: Exp) -> int:
        return wdeg(exp, self.mono.weights) + self.shift(pos)


# =========================
# Rings and polynomials
# =========================
class PolyRing:
    def __init__(self, names: Sequence[str], weights: Optional[Sequence[int]] = None,
                 field: Optional[Field] = None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise InvalidInput(f"duplicate variable names in {self.names}")
        for nm in self.names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                raise InvalidInput(f"invalid variable name {nm!r}")
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.names)
        if len(self.weights) != len(self.names) or any(w <= 0 for w in self.weights):
            raise InvalidInput("weights must be positive, one per variable")
        self.field = field or Field(0)
        self._index = {nm: i for i, nm in enumerate(self.names)}

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def ring_id(self):
        return (self.names, self.weights, self.field.p)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.ring_id == self.ring_id

    def __hash__(self):
        return hash(self.ring_id)

    def __repr__(self):
        return f"PolyRing({','.join(self.names)}; w={self.weights}; {self.field.name})"

    def index(self, name: str) -> int:
        if name not in self._index:
            raise InvalidInput(f"unknown variable {name!r}")
        return self._index[name]

    def order(self, kind: str = "grevlex") -> MonomialOrder:
        return MonomialOrder.parse(kind, self.weights)

    def zero_exp(self) -> Exp:
        return (0,) * self.ngens

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field.norm(c)
        return Poly(self, {self.zero_exp(): c} if c else {})

    def var(self, i) -> "Poly":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.ngens
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> List["Poly"]:
        return [self.var(i) for i in range(self.ngens)]

    def monomial(self, exp: Exp, c=1) -> "Poly":
        c = self.field.norm(c)
        return Poly(self, {tuple(exp): c} if c else {})

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.names, self.weights, field)

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Optional[Dict[Exp, object]] = None):
        self.ring = ring
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    # ---- structure
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def copy(self) -> "Poly":
        return Poly(self.ring, dict(self.terms))

    def degree(self) -> int:
        if not self.terms:
            return -1
        w = self.ring.weights
        return max(wdeg(e, w) for e in self.terms)

    def min_degree(self) -> int:
        w = self.ring.weights
        return min(wdeg(e, w) for e in self.terms) if self.terms else -1

    def is_homogeneous(self) -> bool:
        w = self.ring.weights
        return len({wdeg(e, w) for e in self.terms}) <= 1

    def constant_term(self):
        return self.terms.get(self.ring.zero_exp(), 0)

    def variables(self) -> List[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    # ---- arithmetic
    def _check(self, other: "Poly"):
        if other.ring != self.ring:
            raise InvalidInput(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.norm
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.norm
        return Poly(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.norm
        out: Dict[Exp, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, {e: norm(c) for e, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InvalidInput("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Poly":
        norm = self.ring.field.norm
        c = norm(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {e: norm(v * c) for e, v in self.terms.items()})

    def mul_term(self, exp: Exp, c=1) -> "Poly":
        norm = self.ring.field.norm
        return Poly(self.ring, {mono_mul(e, exp): norm(v * c) for e, v in self.terms.items()})

    def derivative(self, j: int) -> "Poly":
        norm = self.ring.field.norm
        out = {}
        for e, c in self.terms.items():
            if e[j]:
                d = list(e)
                d[j] -= 1
                v = norm(c * e[j])
                if v:
                    out[tuple(d)] = v
        return Poly(self.ring, out)

    def homogeneous_part(self, d: int) -> "Poly":
        w = self.ring.weights
        return Poly(self.ring, {e: c for e, c in self.terms.items() if wdeg(e, w) == d})

    # ---- order-dependent
    def lead(self, order: MonomialOrder) -> Tuple[Exp, object]:
        return leading_term(self, order)

    def monic(self, order: MonomialOrder) -> "Poly":
        if not self.terms:
            return self
        _, c = leading_term(self, order)
        return self.scale(self.ring.field.inv(c))

    # ---- comparison / display
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return isinstance(other, Poly) and other.ring == self.ring and other.terms == self.terms

    __hash__ = None

    def __repr__(self):
        return format_poly(self)

    __str__ = __repr__


# =========================
# Operations
# =========================
def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if a.ring != b.ring:
        raise InvalidInput(f"ring mismatch: {a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InvalidInput(f"unknown operation {op!r}")


def leading_term(f: Poly, order: MonomialOrder) -> Tuple[Exp, object]:
    """Maximal term of f under order; ties cannot occur since orders are total."""
    if not f.terms:
        raise InvalidInput("leading term of the zero polynomial")
    e = max(f.terms, key=order.key)
    return e, f.terms[e]


def apply_ring_map(f: Poly, images: Sequence[Poly]) -> Poly:
    """Substitute images[i] for the i-th variable of f's ring."""
    if len(images) != f.ring.ngens:
        raise InvalidInput(f"ring map needs {f.ring.ngens} images, got {len(images)}")
    if not images:
        return f
    target = images[0].ring
    for g in images:
        if g.ring != target:
            raise InvalidInput("ring map images live in different rings")
    powers: Dict[Tuple[int, int], Poly] = {}

    def pw(i: int, k: int) -> Poly:
        if (i, k) not in powers:
            powers[(i, k)] = images[i] ** k
        return powers[(i, k)]

    out = target.zero()
    for e, c in sorted(f.terms.items()):
        t = target.const(c)
        for i, k in enumerate(e):
            if k:
                t = t * pw(i, k)
        out = out + t
    return out


# =========================
# Text syntax
# =========================
_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse `coef*x1^a*x2^b + ...`; coef may be an integer or a fraction a/b."""
    s = str(text).strip()
    if not s:
        raise InvalidInput("empty polynomial text")
    if s[0] not in "+-":
        s = "+" + s
    parts = _TERM_SPLIT.split(s)
    # parts: ['', sign, term, sign, term, ...]
    if parts[0].strip():
        raise InvalidInput(f"cannot parse polynomial {text!r}")
    norm = ring.field.norm
    out: Dict[Exp, object] = {}
    for sign, term in zip(parts[1::2], parts[2::2]):
        term = term.strip()
        if not term:
            raise InvalidInput(f"dangling sign in {text!r}")
        coef = Fraction(1)
        exp = [0] * ring.ngens
        for factor in term.split("*"):
            factor = factor.strip()
            if not factor:
                raise InvalidInput(f"empty factor in {text!r}")
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coef *= Fraction(factor)
                continue
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(\^(\d+))?", factor)
            if not m:
                raise InvalidInput(f"cannot parse factor {factor!r} in {text!r}")
            exp[ring.index(m.group(1))] += int(m.group(3) or 1)
        if sign == "-":
            coef = -coef
        e = tuple(exp)
        out[e] = norm(out.get(e, 0) + norm(coef))
    return Poly(ring, out)


def _format_coef(c, field: Field) -> str:
    if field.p:
        return str(int(c))
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: Poly) -> str:
    """Deterministic printing, terms in descending weighted grevlex order."""
    if not f.terms:
        return "0"
    ring = f.ring
    order = MonomialOrder("grevlex", ring.weights)
    pieces = []
    for e in sorted(f.terms, key=order.key, reverse=True):
        c = f.terms[e]
        neg = False
        if not ring.field.p and c < 0:
            neg, c = True, -c
        mono = "*".join(
            ring.names[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
        cs = _format_coef(c, ring.field)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces)


# =========================
# Free modules
# =========================
Term = Tuple[int, Exp]


class FreeElement:
    """Element of R^rank as a dict (pos, exp) -> coefficient."""
    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring: PolyRing, rank: int, terms: Optional[Dict[Term, object]] = None):
        self.ring = ring
        self.rank = int(rank)
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def from_polys(cls, polys: Sequence[Poly], ring: Optional[PolyRing] = None) -> "FreeElement":
        if not polys and ring is None:
            raise InvalidInput("empty component list needs an explicit ring")
        ring = ring or polys[0].ring
        terms = {}
        for pos, p in enumerate(polys):
            if p.ring != ring:
                raise InvalidInput("components of a free element must share one ring")
            for e, c in p.terms.items():
                terms[(pos, e)] = c
        return cls(ring, len(polys), terms)

    @classmethod
    def basis(cls, ring: PolyRing, rank: int, pos: int) -> "FreeElement":
        return cls(ring, rank, {(pos, ring.zero_exp()): 1})

    def components(self) -> List[Poly]:
        comps: List[Dict[Exp, object]] = [{} for _ in range(self.rank)]
        for (pos, e), c in self.terms.items():
            comps[pos][e] = c
        return [Poly(self.ring, d) for d in comps]

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "FreeElement"):
        if other.ring != self.ring or other.rank != self.rank:
            raise InvalidInput("free elements of different ring or rank")

    def __add__(self, other: "FreeElement") -> "FreeElement":
        self._check(other)
        norm = self.ring.field.norm
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = norm(out.get(k, 0) + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return FreeElement(self.ring, self.rank, out)

    def __neg__(self):
        norm = self.ring.field.norm
        return FreeElement(self.ring, self.rank, {k: norm(-c) for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def mul_poly(self, f: Poly) -> "FreeElement":
        norm = self.ring.field.norm
        out: Dict[Term, object] = {}
        for (pos, e1), c1 in self.terms.items():
            for e2, c2 in f.terms.items():
                k = (pos, mono_mul(e1, e2))
                out[k] = out.get(k, 0) + c1 * c2
        return FreeElement(self.ring, self.rank, {k: norm(c) for k, c in out.items()})

    def scale(self, c) -> "FreeElement":
        norm = self.ring.field.norm
        return FreeElement(self.ring, self.rank, {k: norm(v * c) for k, v in self.terms.items()})

    def lead(self, order: ModuleOrder) -> Tuple[Term, object]:
        if not self.terms:
            raise InvalidInput("leading term of the zero vector")
        k = max(self.terms, key=lambda t: order.key(*t))
        return k, self.terms[k]

    def degree(self, shifts: Sequence[int] = ()) -> int:
        w = self.ring.weights
        return max((wdeg(e, w) + (shifts[p] if p < len(shifts) else 0) for p, e in self.terms),
                   default=-1)

    def is_homogeneous(self, shifts: Sequence[int] = ()) -> bool:
        w = self.ring.weights
        return len({wdeg(e, w) + (shifts[p] if p < len(shifts) else 0) for p, e in self.terms}) <= 1

    def __eq__(self, other):
        return (isinstance(other, FreeElement) and other.ring == self.ring
                and other.rank == self.rank and other.terms == self.terms)

    __hash__ = None

    def __repr__(self):
        return "(" + ", ".join(format_poly(p) for p in self.components()) + ")"


def dot(row: Sequence[Poly], col: Sequence[Poly]) -> Poly:
    if len(row) != len(col):
        raise InvalidInput("dot product of sequences of different length")
    if not row:
        raise InvalidInput("empty dot product")
    out = row[0].ring.zero()
    for a, b in zip(row, col):
        if a.terms and b.terms:
            out = out + a * b
    return out
