# core.py
import os
import json
import math
import time
import uuid
import logging
import contextlib
import contextvars
from dataclasses import dataclass, asdict
from enum import Enum
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

# =========================
# Config
# =========================
DEFAULT_PRIME = 32003
DEFAULT_DEGREE_CAP = 200
DEFAULT_TIME_CAP = 900.0
DEFAULT_ENGINE_MAX_N = 6
DEFAULT_RETRIES = 8

INFINITE = math.inf

log = logging.getLogger(__name__)


# ---- Errors (exit codes are read by cli.main)
class LadderError(Exception):
    exit_code = 1


class InvalidInput(LadderError):
    exit_code = 2


class ResourceCapExceeded(LadderError):
    exit_code = 3


class VerificationFailed(LadderError):
    exit_code = 4


class ConstructionFailed(VerificationFailed):
    pass


def safe_int(x, default=0) -> int:
    try:
        if x is None:
            return default
        return int(float(x))
    except Exception:
        return default


def safe_float(x, default=0.0) -> float:
    try:
        if x is None:
            return default
        return float(x)
    except Exception:
        return default


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


def parse_field(text) -> int:
    """'rational' / 'QQ' / '0' -> 0, otherwise an odd prime."""
    s = str(text).strip().lower()
    if s in {"rational", "qq", "q", "0", ""}:
        return 0
    p = safe_int(s, -1)
    if p <= 2 or not is_prime(p):
        raise InvalidInput(f"field must be 'rational' or a prime p > 2, got {text!r}")
    return p


@dataclass
class RunConfig:
    field: int = 0
    order: str = "grevlex"
    degree_cap: int = DEFAULT_DEGREE_CAP
    time_cap: float = DEFAULT_TIME_CAP
    seed: int = 1
    jobs: int = 1
    format: str = "json"
    engine_max_n: int = DEFAULT_ENGINE_MAX_N
    retries: int = DEFAULT_RETRIES
    certify: bool = True
    oracle: bool = True
    timings: bool = False

    def __post_init__(self):
        if self.field and (self.field <= 2 or not is_prime(self.field)):
            raise InvalidInput(f"prime field requires a prime p > 2, got {self.field}")
        if self.order not in {"grevlex", "lex"}:
            raise InvalidInput(f"unknown monomial order {self.order!r}")
        if self.degree_cap <= 0 or self.time_cap <= 0:
            raise InvalidInput("degree and time caps must be positive")
        if self.jobs < 1:
            raise InvalidInput("jobs must be at least 1")
        if self.format not in {"json", "csv", "table"}:
            raise InvalidInput(f"unknown output format {self.format!r}")

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        # environment overrides cover caps only
        env = {}
        if os.environ.get("LADDER_DEGREE_CAP"):
            env["degree_cap"] = safe_int(os.environ["LADDER_DEGREE_CAP"], DEFAULT_DEGREE_CAP)
        if os.environ.get("LADDER_TIME_CAP"):
            env["time_cap"] = safe_float(os.environ["LADDER_TIME_CAP"], DEFAULT_TIME_CAP)
        env.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**env)

    def field_obj(self):
        from polyring import Field
        return Field(self.field)

    def field_name(self) -> str:
        return "QQ" if not self.field else f"GF({self.field})"

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        d["field"] = self.field_name()
        return d


# ---- Job clock
_deadline: contextvars.ContextVar[Optional[float]] = contextvars.ContextVar("deadline", default=None)
_degree_cap: contextvars.ContextVar[int] = contextvars.ContextVar("degree_cap", default=DEFAULT_DEGREE_CAP)
_certify: contextvars.ContextVar[bool] = contextvars.ContextVar("certify", default=False)


@contextlib.contextmanager
def job_clock(cfg: Optional[RunConfig]):
    """Install a per-job deadline; nested clocks keep the earlier deadline."""
    if cfg is None:
        yield
        return
    new = time.monotonic() + float(cfg.time_cap)
    cur = _deadline.get()
    token = _deadline.set(new if cur is None else min(cur, new))
    cap_token = _degree_cap.set(int(cfg.degree_cap))
    cert_token = _certify.set(bool(cfg.certify))
    try:
        yield
    finally:
        _certify.reset(cert_token)
        _degree_cap.reset(cap_token)
        _deadline.reset(token)


def degree_cap() -> int:
    return _degree_cap.get()


def certify_bases() -> bool:
    """True inside a job clock whose config asks for the S-pair certificate."""
    return _certify.get()


def check_deadline(what: str = "computation") -> None:
    d = _deadline.get()
    if d is not None and time.monotonic() > d:
        raise ResourceCapExceeded(f"time cap exceeded during {what}")


# ---- Logging
def setup_logging(verbosity: int = 0) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="[%(name)s] %(message)s", force=True)


# ---- JSON helpers
def read_json(path: str, default):
    if not os.path.exists(path):
        return default
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = f.read().strip()
            if not raw:
                return default
            return json.loads(raw)
    except (json.JSONDecodeError, OSError):
        return default


def write_json_atomic(path: str, data) -> None:
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    tmp = f"{path}.tmp.{uuid.uuid4().hex}"
    with open(tmp, "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=2, default=_json_safe)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)


def dumps(data) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True, default=_json_safe)


def _json_safe(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, float) and math.isinf(obj):
        return "INFINITE"
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        v = float(obj)
        if v != v or v in (float("inf"), float("-inf")):
            return None
        return v
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return str(obj)


def dim_value(d):
    """JSON-friendly dimension: int or the string 'INFINITE'."""
    if d is None:
        return None
    if isinstance(d, float) and math.isinf(d):
        return "INFINITE"
    return int(d)


# ---- Batch runner
def run_parallel(fn: Callable, jobs_args: Sequence[tuple], jobs: int = 1) -> List[Any]:
    """fn(*args) for every args tuple; results in input order whatever the completion order."""
    jobs_args = list(jobs_args)
    if jobs <= 1 or len(jobs_args) <= 1:
        return [fn(*a) for a in jobs_args]
    with ProcessPoolExecutor(max_workers=min(jobs, len(jobs_args))) as pool:
        futures = [pool.submit(fn, *a) for a in jobs_args]
        return [f.result() for f in futures]
