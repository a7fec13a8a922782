"""
Hypersurface-section ladder: dim T^i_X / f T^i_X from the curve section Y = X cut by f,

    T^2_X/f = T^1_Y - e_f,     T^i_X/f = T^(i-1)_Y - T^(i-1)_X/f   (i >= 3),

the closed-form tables for surfaces, curves and point schemes, and the family verification that
puts ladder arithmetic, closed forms and engine dimensions side by side.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction as F
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core import (INFINITE, InvalidInput, ResourceCapExceeded, RunConfig, VerificationFailed,
                  job_clock, run_parallel)

log = logging.getLogger(__name__)

# ===== Config =====
PARTITION_ENGINE_MAX_N = 5
LADDER_TOP = 4


class LadderFamily(str, Enum):
    RATIONAL = "rational"
    ELLIPTIC = "elliptic"


class Context(str, Enum):
    SURFACE = "surface"
    CURVE = "curve"
    POINT = "point"


class Status(str, Enum):
    OK = "OK"
    FAILED = "FAILED"
    REFUSED = "REFUSED"


class OutOfRange(InvalidInput):
    """A closed form asked for outside the range where it is known to hold."""


class LadderInconsistency(VerificationFailed):
    pass


# =========================
# Closed forms
# =========================
# (family, context, i) -> (smallest n, formula(n, r))
_FORMULAS: Dict[Tuple[LadderFamily, Context, int], Tuple[int, Callable[[int, Optional[int]], F]]] = {
    (LadderFamily.RATIONAL, Context.SURFACE, 2): (3, lambda n, r: F((n - 1) * (n - 3))),
    (LadderFamily.RATIONAL, Context.SURFACE, 3): (4, lambda n, r: F((n - 1) * (n - 2) * (n - 3), 2)),
    (LadderFamily.RATIONAL, Context.SURFACE, 4): (
        4, lambda n, r: F((n - 1) * (n - 2) * (2 * n * n - 8 * n + 9), 6)),
    (LadderFamily.ELLIPTIC, Context.SURFACE, 2): (4, lambda n, r: F((n + 1) * (n - 4), 2)),
    (LadderFamily.ELLIPTIC, Context.SURFACE, 3): (4, lambda n, r: F((n + 1) * (n - 3) * (n - 4), 6)),
    (LadderFamily.ELLIPTIC, Context.SURFACE, 4): (
        4, lambda n, r: F((n + 1) * (n - 4) * (n - 3) * (n - 2), 12)),
    (LadderFamily.RATIONAL, Context.CURVE, 1): (3, lambda n, r: F(n * (n - 1) - r)),
    (LadderFamily.RATIONAL, Context.CURVE, 2): (3, lambda n, r: F(n * (n - 1) * (n - 3), 2)),
    (LadderFamily.RATIONAL, Context.CURVE, 3): (4, lambda n, r: F(n * (n - 1) * (n - 2) * (2 * n - 5), 6)),
    (LadderFamily.ELLIPTIC, Context.CURVE, 1): (4, lambda n, r: F(n * (n + 1), 2) - r + 1),
    (LadderFamily.ELLIPTIC, Context.CURVE, 2): (4, lambda n, r: F(n * (n + 1) * (n - 4), 6)),
    (LadderFamily.ELLIPTIC, Context.CURVE, 3): (4, lambda n, r: F(n * (n + 1) * (n - 3) * (n - 4), 12)),
    # Z_r = m^2 and the Gorenstein fat point A_r
    (LadderFamily.RATIONAL, Context.POINT, 0): (3, lambda n, r: F(n * n)),
    (LadderFamily.RATIONAL, Context.POINT, 1): (3, lambda n, r: F((n - 1) * n * (n + 2), 2)),
    (LadderFamily.RATIONAL, Context.POINT, 2): (3, lambda n, r: F(n * (n + 1) * (2 * n * n - 2 * n - 3), 6)),
    (LadderFamily.ELLIPTIC, Context.POINT, 0): (3, lambda n, r: F(n * n + n + 2, 2)),
    (LadderFamily.ELLIPTIC, Context.POINT, 1): (3, lambda n, r: F(n * (n - 1) * (n + 4), 6)),
    (LadderFamily.ELLIPTIC, Context.POINT, 2): (3, lambda n, r: F(n * (n + 1) * (n + 2) * (n - 3), 12)),
}

_NEEDS_R = {(LadderFamily.RATIONAL, Context.CURVE, 1)}


def closed_form(family, n: int, i: int, context, r: Optional[int] = None) -> int:
    """
    Closed-form dimension. For surfaces n + 1 is the embedding dimension, for curves n is,
    and for point schemes n is r. Values outside the covered range raise OutOfRange.
    """
    family, context = LadderFamily(family), Context(context)
    key = (family, context, int(i))
    if key not in _FORMULAS:
        raise OutOfRange(f"no closed form for {family.value} {context.value} T{i}")
    lo, fn = _FORMULAS[key]
    if n < lo:
        raise OutOfRange(f"{family.value} {context.value} T{i} is stated for n >= {lo}, got n = {n}")
    if r is None:
        if key in _NEEDS_R:
            raise InvalidInput("the rational curve T1 formula needs the number of branches r")
        r = 1
    v = fn(n, r)
    if v.denominator != 1 or v < 0:
        raise VerificationFailed(f"closed form {key} at n={n} is not a non-negative integer: {v}")
    return int(v)


def closed_form_or_none(family, n: int, i: int, context, r: Optional[int] = None) -> Optional[int]:
    try:
        return closed_form(family, n, i, context, r)
    except OutOfRange:
        return None


# =========================
# Ladder arithmetic
# =========================
def ladder_base(curve_t1: int, e_f: int) -> int:
    v = int(curve_t1) - int(e_f)
    if v < 0:
        raise LadderInconsistency(f"T1_Y = {curve_t1} is smaller than e_f = {e_f}")
    return v


def ladder_step(curve_dim_prev: int, surface_dim_prev: int) -> int:
    v = int(curve_dim_prev) - int(surface_dim_prev)
    if v < 0:
        raise LadderInconsistency(f"curve dimension {curve_dim_prev} is smaller than the surface "
                                  f"dimension {surface_dim_prev} one step down")
    return v


@dataclass
class LadderInput:
    family: LadderFamily
    n: int
    curve_dims: Dict[int, int]
    e_f: Optional[int] = None
    base2: Optional[int] = None

    def __post_init__(self):
        self.family = LadderFamily(self.family)
        idx = sorted(self.curve_dims)
        if not idx or idx != list(range(1, len(idx) + 1)):
            raise InvalidInput(f"curve dimensions must be indexed 1..k, got {idx}")
        vals = list(self.curve_dims.values()) + [v for v in (self.e_f, self.base2) if v is not None]
        if any(int(v) < 0 for v in vals):
            raise InvalidInput("ladder inputs must be non-negative")
        if self.e_f is None and self.base2 is None:
            raise InvalidInput("ladder needs e_f or base2")


def run_ladder(inp: LadderInput, top: int = LADDER_TOP) -> Dict[int, int]:
    """{i: dim T^i_X / f T^i_X} for 2 <= i <= top, as far as the curve dimensions reach."""
    out = {2: inp.base2 if inp.base2 is not None else ladder_base(inp.curve_dims[1], inp.e_f)}
    for i in range(3, top + 1):
        if i - 1 not in inp.curve_dims:
            break
        out[i] = ladder_step(inp.curve_dims[i - 1], out[i - 1])
    return out


def telescoped(i: int, curve_dims: Dict[int, int], e_f: int) -> int:
    """T^i_X/f = sum_(j<i) (-1)^(i-1-j) T^j_Y + (-1)^(i-1) e_f."""
    if i < 2:
        raise InvalidInput("the ladder starts at i = 2")
    total = sum((-1) ** (i - 1 - j) * int(curve_dims[j]) for j in range(1, i))
    return total + (-1) ** (i - 1) * int(e_f)


def elliptic_base2_derived(n: int, curve_t1: Optional[int] = None) -> int:
    """T^1_Y - (mu + t - 1) for the monomial elliptic partition curve (mu = 2n + 2, t = 1)."""
    if n < 2:
        raise InvalidInput("elliptic partition curves need n >= 2")
    t1 = curve_t1 if curve_t1 is not None else closed_form(LadderFamily.ELLIPTIC, n, 1, Context.CURVE)
    return ladder_base(t1, 2 * n + 2)


def partition_independence(n: int, cfg: Optional[RunConfig] = None, engine: bool = False) -> Dict[Tuple[int, ...], int]:
    """ladder_base over every partition of n; curve T1 from the engine when asked."""
    from catalog import Family, SingularityDescriptor, partitions
    out = {}
    memo: Dict = {}
    for parts in partitions(n):
        r = len(parts)
        if engine:
            t1 = _engine_dim(SingularityDescriptor(Family.RATIONAL_PARTITION, parts), 1, cfg, memo)
        else:
            t1 = n * (n - 1) - r
        out[parts] = ladder_base(t1, 3 * (n - 1) - r)
    return out


# =========================
# Engine access
# =========================
def _engine_dim(desc, i: int, cfg: Optional[RunConfig], memo: Dict) -> int:
    from catalog import build
    from cotangent import ls_truncation, t0_artinian, t1, t2
    key = (desc, i)
    if key in memo:
        return memo[key]
    cfg = cfg or RunConfig()
    if (desc, "I") not in memo:
        memo[(desc, "I")] = build(desc, cfg)
    I = memo[(desc, "I")]
    if (desc, "lst") not in memo:
        memo[(desc, "lst")] = ls_truncation(I)
    lst = memo[(desc, "lst")]
    if i == 0:
        v = t0_artinian(I, lst)
    elif i == 1:
        v = t1(I, lst)[1]
    elif i == 2:
        v = t2(I, lst)[1]
    else:
        raise InvalidInput(f"engine dimension T{i} is not part of the ladder inputs")
    if v == INFINITE:
        raise VerificationFailed(f"{desc.label}: T{i} is infinite")
    memo[key] = int(v)
    log.debug("[ladder] engine %s T%d = %d", desc.label, i, memo[key])
    return memo[key]


def _point_descriptor(family: LadderFamily, r: int):
    from catalog import Family, SingularityDescriptor
    fam = Family.ARTINIAN_ZR if family == LadderFamily.RATIONAL else Family.FAT_POINT
    return SingularityDescriptor(fam, (r,))


def _curve_descriptor(family: LadderFamily, n: int):
    from catalog import Family, SingularityDescriptor
    if family == LadderFamily.RATIONAL:
        return SingularityDescriptor(Family.RATIONAL_PARTITION, (1,) * n)
    return SingularityDescriptor(Family.ELLIPTIC_PARTITION_MONOMIAL, (n,))


def _cone_descriptor(n: int):
    from catalog import Family, SingularityDescriptor
    return SingularityDescriptor(Family.CONE_RNC, (n,))


def _curve_r(family: LadderFamily, n: int) -> int:
    return n if family == LadderFamily.RATIONAL else 1


# =========================
# Reports
# =========================
@dataclass
class LadderRow:
    family: str
    n: int
    context: str
    i: int
    quantity: str
    ladder: Optional[int] = None
    formula: Optional[int] = None
    engine: Optional[int] = None
    status: Status = Status.OK
    note: str = ""

    def settle(self) -> "LadderRow":
        if self.status != Status.OK:
            return self
        vals = {v for v in (self.ladder, self.formula, self.engine) if v is not None}
        if len(vals) > 1:
            self.status = Status.FAILED
            self.note = (self.note + "; " if self.note else "") + (
                f"disagreement: ladder={self.ladder} formula={self.formula} engine={self.engine}")
        return self

    def to_dict(self) -> Dict[str, object]:
        return {"family": self.family, "n": self.n, "context": self.context, "i": self.i,
                "quantity": self.quantity, "ladder": self.ladder, "formula": self.formula,
                "engine": self.engine if self.engine is not None else "ABSENT",
                "status": self.status.value, "note": self.note}


@dataclass
class LadderReport:
    family: LadderFamily
    n: int
    rows: List[LadderRow] = field(default_factory=list)
    capped: bool = False
    config: Dict[str, object] = field(default_factory=dict)

    SCHEMA = "ladder-report/1"

    @property
    def status(self) -> Status:
        if any(r.status == Status.FAILED for r in self.rows):
            return Status.FAILED
        return Status.OK

    @property
    def exit_code(self) -> int:
        if any(r.status == Status.FAILED and "disagreement" in r.note for r in self.rows):
            return VerificationFailed.exit_code
        if self.capped:
            return ResourceCapExceeded.exit_code
        return VerificationFailed.exit_code if self.status == Status.FAILED else 0

    def to_dict(self) -> Dict[str, object]:
        return {"schema": self.SCHEMA, "family": self.family.value, "n": self.n,
                "status": self.status.value, "rows": [r.to_dict() for r in self.rows],
                "config": self.config}


class _Collector:
    """Engine calls that turn caps and failures into row notes instead of aborting the report."""

    def __init__(self, report: LadderReport, cfg: RunConfig):
        self.report = report
        self.cfg = cfg
        self.memo: Dict = {}

    def engine(self, desc, i: int, row: LadderRow) -> Optional[int]:
        try:
            return _engine_dim(desc, i, self.cfg, self.memo)
        except ResourceCapExceeded as exc:
            self.report.capped = True
            row.status = Status.FAILED
            row.note = f"engine: {exc}"
        except VerificationFailed as exc:
            row.status = Status.FAILED
            row.note = f"engine: {exc}"
        return None


def _formula_row(family, n, context, i, quantity, r=None) -> LadderRow:
    row = LadderRow(family.value, n, context.value, i, quantity)
    try:
        row.formula = closed_form(family, n, i, context, r)
    except OutOfRange as exc:
        row.status = Status.REFUSED
        row.note = str(exc)
    return row


def curve_bridge(family, n: int, cfg: Optional[RunConfig] = None,
                 curve_t2: Optional[int] = None, memo: Optional[Dict] = None) -> Dict[int, Optional[int]]:
    """
    Curve dimensions through the point scheme of embedding dimension n - 1:
    rational  T2_Y = T1(Z) - T0(Z) and T3_Y = T2(Z) - T2_Y;
    elliptic  T3_Y = T2(A) - T2_Y.
    Point dimensions come from the engine when n - 1 <= engine_max_n, otherwise from closed forms.
    """
    family = LadderFamily(family)
    cfg = cfg or RunConfig()
    memo = {} if memo is None else memo
    r = n - 1
    pdims: Dict[int, Optional[int]] = {}
    for i in (0, 1, 2):
        if r <= cfg.engine_max_n and r >= 1:
            pdims[i] = _engine_dim(_point_descriptor(family, r), i, cfg, memo)
        else:
            pdims[i] = closed_form_or_none(family, r, i, Context.POINT)
    out: Dict[int, Optional[int]] = {}
    if family == LadderFamily.RATIONAL:
        if pdims[1] is not None and pdims[0] is not None:
            out[2] = ladder_step(pdims[1], pdims[0])
        t2y = curve_t2 if curve_t2 is not None else out.get(2)
        if pdims[2] is not None and t2y is not None:
            out[3] = ladder_step(pdims[2], t2y)
    else:
        t2y = curve_t2 if curve_t2 is not None else closed_form_or_none(family, n, 2, Context.CURVE)
        if pdims[2] is not None and t2y is not None:
            out[3] = ladder_step(pdims[2], t2y)
    return out


def verify_one(family, n: int, cfg: Optional[RunConfig] = None) -> LadderReport:
    family = LadderFamily(family)
    cfg = cfg or RunConfig()
    rep = LadderReport(family, n, config=cfg.to_dict())
    col = _Collector(rep, cfg)
    use_engine = n <= cfg.engine_max_n
    r = _curve_r(family, n)
    curve = _curve_descriptor(family, n)
    with job_clock(cfg):
        # --- curve side
        c: Dict[int, Optional[int]] = {}
        for i in (1, 2):
            row = _formula_row(family, n, Context.CURVE, i, f"dim T{i}_Y ({curve.label})", r)
            if use_engine:
                row.engine = col.engine(curve, i, row)
            c[i] = row.engine if row.engine is not None else row.formula
            rep.rows.append(row)
        row3 = _formula_row(family, n, Context.CURVE, 3, f"dim T3_Y ({curve.label}) via point bridge", r)
        try:
            bridge = curve_bridge(family, n, cfg, c.get(2), col.memo)
        except ResourceCapExceeded as exc:
            rep.capped = True
            bridge = {}
            row3.status, row3.note = Status.FAILED, f"engine: {exc}"
        except VerificationFailed as exc:
            bridge = {}
            row3.status, row3.note = Status.FAILED, f"bridge: {exc}"
        if family == LadderFamily.RATIONAL and 2 in bridge:
            rep.rows[1].ladder = bridge[2]
        row3.ladder = bridge.get(3)
        if row3.status == Status.REFUSED:
            row3.ladder = None
        c[3] = row3.ladder if row3.ladder is not None else row3.formula
        rep.rows.append(row3)

        # --- surface side
        srows = {i: _formula_row(family, n, Context.SURFACE, i, f"dim T{i}_X/mT{i}_X") for i in (2, 3, 4)}
        e_f = 3 * (n - 1) - r if family == LadderFamily.RATIONAL else None
        base2 = None
        if family == LadderFamily.ELLIPTIC:
            base2 = srows[2].formula
            if c.get(1) is not None and n >= 2:
                try:
                    srows[2].ladder = elliptic_base2_derived(n, c[1])
                except LadderInconsistency as exc:
                    srows[2].status, srows[2].note = Status.FAILED, str(exc)
                srows[2].note = srows[2].note or "base from the closed form; ladder column is T1_Y - (mu + t - 1)"
        dims = {i: v for i, v in c.items() if v is not None}
        dims = {i: dims[i] for i in range(1, 4) if all(j in dims for j in range(1, i + 1))}
        ladder: Dict[int, int] = {}
        if dims and (e_f is not None or base2 is not None):
            try:
                ladder = run_ladder(LadderInput(family, n, dims, e_f, base2))
            except LadderInconsistency as exc:
                for i in (2, 3, 4):
                    if srows[i].status == Status.OK:
                        srows[i].status, srows[i].note = Status.FAILED, str(exc)
        for i in (2, 3, 4):
            row = srows[i]
            if row.status == Status.REFUSED:
                continue
            if i in ladder and not (family == LadderFamily.ELLIPTIC and i == 2):
                row.ladder = ladder[i]
                if e_f is not None and telescoped(i, dims, e_f) != ladder[i]:
                    row.status = Status.FAILED
                    row.note = "telescoped sum differs from the stepwise ladder"
        if family == LadderFamily.RATIONAL and use_engine and srows[2].status == Status.OK:
            srows[2].engine = _cone_t2(col, n, srows[2])
        if family == LadderFamily.RATIONAL and srows[2].status == Status.OK:
            try:
                vals = set(partition_independence(
                    n, cfg, engine=use_engine and n <= PARTITION_ENGINE_MAX_N).values())
            except ResourceCapExceeded as exc:
                rep.capped = True
                vals = set()
                srows[2].status, srows[2].note = Status.FAILED, f"engine: {exc}"
            if len(vals) > 1:
                srows[2].status = Status.FAILED
                srows[2].note = f"ladder base depends on the partition: {sorted(vals)}"
        rep.rows.extend(srows[i] for i in (2, 3, 4))
    for row in rep.rows:
        row.settle()
    log.info("[ladder] %s n=%d: %s", family.value, n, rep.status.value)
    return rep


def _cone_t2(col: _Collector, n: int, row: LadderRow) -> Optional[int]:
    """Engine T2 of the cone, plus the check that every matrix entry annihilates it."""
    from catalog import build
    from cotangent import t2
    from fpmod import annihilated_by
    desc = _cone_descriptor(n)
    v = col.engine(desc, 2, row)
    if v is None:
        return None
    I = col.memo.get((desc, "I")) or build(desc, col.cfg)
    M, _ = t2(I, col.memo.get((desc, "lst")))
    killed = all(annihilated_by(M, z) for z in I.ring.gens())
    row.note = "T2 annihilated by the maximal ideal" if killed else "T2 NOT annihilated by the maximal ideal"
    if not killed:
        row.status = Status.FAILED
    return v


def verify_family(family, n_values: Sequence[int], cfg: Optional[RunConfig] = None) -> List[LadderReport]:
    cfg = cfg or RunConfig()
    family = LadderFamily(family)
    ns = sorted(set(int(n) for n in n_values))
    if not ns or ns[0] < 2:
        raise InvalidInput("verify needs n >= 2")
    reports = run_parallel(verify_one, [(family, n, cfg) for n in ns], cfg.jobs)
    return sorted(reports, key=lambda rep: rep.n)


def parse_n_range(text: str) -> List[int]:
    """'4..6', '4-6', '3,5,7' or '5'."""
    s = str(text).strip()
    try:
        for sep in ("..", "-"):
            if sep in s:
                a, b = s.split(sep, 1)
                lo, hi = int(a), int(b)
                if lo > hi:
                    raise InvalidInput(f"empty range {text!r}")
                return list(range(lo, hi + 1))
        return sorted({int(x) for x in s.split(",") if x.strip()})
    except ValueError:
        raise InvalidInput(f"cannot read n range {text!r}") from None
