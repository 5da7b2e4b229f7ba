"""Range surveys of order statistics, with chunked parallel execution.

A survey walks a range of moduli (all integers, primes, or prime pairs),
applies one exceedance predicate per item, and accumulates counts plus a
histogram of the normalized statistic log(quantity)/log(n) in 21 bins of
width 0.05 over [0, 1.05].  Results form a commutative monoid over disjoint
ranges, so a survey can be split into chunks, evaluated by any number of
workers, checkpointed, and resumed, with bit-identical output throughout.

Survey kinds:

    ord-n            coprime_order(e, n)          >  n^t   over n
    shifted-prime    coprime_order(e, p-1)        >= p^t   over primes p
    rsa-pair         coprime_order(e, lcm(p-1,l-1)) >= (pl)^t over p < l < 2p
    lambda-n         coprime_order(e, lambda(n))  >  n^t   over n
    one-minus-delta  same, with t = 1 - sqrt(log log n / log n)
    lambda-lambda    lambda(lambda(n)) > n / exp((log log n)^3)
    high-factor      some prime q | p-1 with q > p^0.677, over primes p
    class-counts     L/M/H class tallies over primes p

with t = 1/2 + eps(n) by default, or a fixed exponent override.

The factor cache is a binary file (magic "OSFC", version byte, then
length-prefixed entries); every entry is revalidated on load and lookup
misses fall through to arith.factorize, so a cache can only speed a survey
up, never change it.  Checkpoints are JSON carrying a config digest, the
completed chunk list, and the partially merged result.
"""

from __future__ import annotations

import bisect
import decimal
import functools
import hashlib
import json
import math
import os
import random
import struct
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import Factorization, factorize, lcm, primes_in_range
from .classify import DEFAULT_EPSILON, EpsilonFn, classify_order_value, power_compare
from .orders import carmichael_lambda, coprime_order

ORD_N = "ord-n"
SHIFTED_PRIME = "shifted-prime"
RSA_PAIR = "rsa-pair"
LAMBDA_N = "lambda-n"
LAMBDA_LAMBDA = "lambda-lambda"
HIGH_FACTOR = "high-factor"
ONE_MINUS_DELTA = "one-minus-delta"
CLASS_COUNTS = "class-counts"

KINDS = (ORD_N, SHIFTED_PRIME, RSA_PAIR, LAMBDA_N, LAMBDA_LAMBDA,
         HIGH_FACTOR, ONE_MINUS_DELTA, CLASS_COUNTS)

_PRIME_KINDS = (SHIFTED_PRIME, HIGH_FACTOR, CLASS_COUNTS)
_NO_OVERRIDE_KINDS = (LAMBDA_LAMBDA, ONE_MINUS_DELTA, CLASS_COUNTS)

N_BINS = 21  # 0.05-wide statistic bins covering [0, 1.05]

DEFAULT_SEED = 123456789
DEFAULT_RSA_SAMPLE = 1_000_000
RSA_FULL_ENUM_LIMIT = 10_000_000

_GUARD_REL = 1e-9
_DECIMAL_PREC = 50


class CacheError(Exception):
    """The factor cache file is corrupt or has an unknown version."""


class CheckpointError(Exception):
    """The checkpoint file is corrupt or belongs to another survey."""


@dataclass(frozen=True)
class SurveyConfig:
    kind: str
    x_max: int
    e: int = 2
    epsilon: EpsilonFn = DEFAULT_EPSILON
    exponent_override: float | None = None
    chunk: int = 10_000
    x_min: int | None = None
    seed: int = DEFAULT_SEED
    sample_size: int = DEFAULT_RSA_SAMPLE

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown survey kind {self.kind!r}")
        if self.e < 2:
            raise ValueError(f"base must be >= 2, got {self.e}")
        if self.chunk < 1:
            raise ValueError(f"chunk must be >= 1, got {self.chunk}")
        if self.exponent_override is not None and self.kind in _NO_OVERRIDE_KINDS:
            raise ValueError(f"--exponent conflicts with kind {self.kind}")
        if self.x_max < self.low():
            raise ValueError(
                f"empty range: x_max = {self.x_max} is below the survey floor "
                f"{self.low()} for kind {self.kind}")

    def low(self) -> int:
        """Lowest surveyed value.  Integer kinds with an epsilon threshold
        start at 16 (so log log n > 1); a fixed exponent drops the floor
        to 2, as do the prime-indexed kinds."""
        if self.x_min is not None:
            return max(self.x_min, 2)
        if self.kind in (ORD_N, LAMBDA_N, ONE_MINUS_DELTA) and self.exponent_override is None:
            return 16
        return 2

    def threshold_exponent(self, x: int) -> tuple[float, Fraction | None]:
        if self.exponent_override is not None:
            return float(self.exponent_override), Fraction(str(self.exponent_override))
        if self.kind == ONE_MINUS_DELTA:
            return 1.0 - math.sqrt(math.log(math.log(x)) / math.log(x)), None
        if self.kind == HIGH_FACTOR:
            return 0.677, Fraction(677, 1000)
        return self.epsilon.exponent(x)


@dataclass
class SurveyResult:
    config: SurveyConfig
    total: int = 0
    exceed: int = 0
    histogram: list[int] = field(default_factory=lambda: [0] * N_BINS)
    class_counts: dict[str, int] | None = None
    sampled: bool = False
    elapsed: float = 0.0

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.exceed, self.total) if self.total else Fraction(0)

    def to_dict(self) -> dict:
        cfg = self.config
        return {
            "schema": 1,
            "kind": cfg.kind,
            "e": cfg.e,
            "x_max": cfg.x_max,
            "x_min": cfg.low(),
            "epsilon_cap": cfg.epsilon.cap,
            "exponent": cfg.exponent_override,
            "seed": cfg.seed if cfg.kind == RSA_PAIR else None,
            "sample_size": cfg.sample_size if cfg.kind == RSA_PAIR else None,
            "sampled": self.sampled,
            "total": self.total,
            "exceed": self.exceed,
            "fraction": f"{self.exceed}/{self.total}" if self.total else "0/0",
            "class_counts": dict(self.class_counts) if self.class_counts else None,
            "histogram": list(self.histogram),
        }


def empty_result(config: SurveyConfig) -> SurveyResult:
    counts = {"L": 0, "M": 0, "H": 0} if config.kind == CLASS_COUNTS else None
    return SurveyResult(config=config, class_counts=counts)


def merge_results(a: SurveyResult, b: SurveyResult) -> SurveyResult:
    """Combine results from disjoint ranges (associative, commutative)."""
    if a.config != b.config:
        raise ValueError("cannot merge results from different configs")
    counts = None
    if a.class_counts is not None:
        counts = {k: a.class_counts[k] + b.class_counts[k] for k in a.class_counts}
    return SurveyResult(
        config=a.config,
        total=a.total + b.total,
        exceed=a.exceed + b.exceed,
        histogram=[x + y for x, y in zip(a.histogram, b.histogram)],
        class_counts=counts,
        sampled=a.sampled or b.sampled,
        elapsed=a.elapsed + b.elapsed,
    )


# ---------------------------------------------------------------------------
# statistic binning

def _decimal_ctx() -> decimal.Context:
    return decimal.Context(prec=_DECIMAL_PREC)


def log_ratio_bin(q: int, n: int) -> int:
    """Bin index of log(q)/log(n) in the fixed 0.05-wide grid.

    Values on a bin edge (possible: q and n can be exact powers) go to the
    right bin; anything within 1e-9 of an edge is re-decided exactly or in
    50-digit decimal so binning never depends on libm rounding.
    """
    if q <= 1:
        return 0
    u = math.log(q) / math.log(n) * 20.0
    nearest = round(u)
    if abs(u - nearest) > _GUARD_REL * max(abs(u), 1.0):
        b = math.floor(u)
    elif 0 <= nearest <= 2 * N_BINS and q**20 == n**nearest:
        b = nearest
    else:
        ctx = _decimal_ctx()
        ud = ctx.multiply(
            ctx.divide(ctx.ln(decimal.Decimal(q)), ctx.ln(decimal.Decimal(n))),
            decimal.Decimal(20),
        )
        b = int(ud.to_integral_value(rounding=decimal.ROUND_FLOOR))
    return min(max(b, 0), N_BINS - 1)


def _deficiency_bin(n: int, lamlam: int) -> int | None:
    """Bin of log(n/lamlam) / ((log log n)^2 * log log log n); None while
    the denominator is not positive (n <= 15)."""
    ll = math.log(math.log(n)) if n >= 3 else -1.0
    if ll <= 1.0:
        return None
    denom = ll * ll * math.log(ll)
    u = (math.log(n) - math.log(lamlam)) / denom * 20.0
    nearest = round(u)
    if abs(u - nearest) <= _GUARD_REL * max(abs(u), 1.0):
        ctx = _decimal_ctx()
        lnn = ctx.ln(decimal.Decimal(n))
        lnln = ctx.ln(lnn)
        denom_d = ctx.multiply(ctx.multiply(lnln, lnln), ctx.ln(lnln))
        num_d = ctx.subtract(lnn, ctx.ln(decimal.Decimal(lamlam)))
        ud = ctx.multiply(ctx.divide(num_d, denom_d), decimal.Decimal(20))
        b = int(ud.to_integral_value(rounding=decimal.ROUND_FLOOR))
    else:
        b = math.floor(u)
    return min(max(b, 0), N_BINS - 1)


def _lamlam_exceeds(lamlam: int, n: int) -> bool:
    """lambda(lambda(n)) > n / exp((log log n)^3), guarded like the rest."""
    t = n * math.exp(-math.log(math.log(n)) ** 3)
    if abs(lamlam - t) > _GUARD_REL * max(t, 1.0):
        return lamlam > t
    ctx = _decimal_ctx()
    lnln = ctx.ln(ctx.ln(decimal.Decimal(n)))
    rhs = ctx.multiply(decimal.Decimal(n), ctx.exp(-ctx.power(lnln, decimal.Decimal(3))))
    return decimal.Decimal(lamlam) > rhs


# ---------------------------------------------------------------------------
# per-item evaluation

def evaluate_item(cfg: SurveyConfig, item, factorizer) -> tuple[bool, int | None, str | None]:
    """Evaluate one survey item: (exceeds, histogram bin, class label).

    The item is an integer for all kinds except rsa-pair, where it is the
    prime pair (p, l).  This is the single place every exceed decision is
    made, so any count is reproducible item by item.
    """
    kind = cfg.kind
    e = cfg.e
    if kind == ORD_N:
        o = coprime_order(e, item, factorizer)
        t, exact = cfg.threshold_exponent(item)
        return power_compare(o, item, t, exact) > 0, log_ratio_bin(o, item), None
    if kind in (LAMBDA_N, ONE_MINUS_DELTA):
        lam = carmichael_lambda(factorizer(item))
        o = coprime_order(e, lam, factorizer)
        t, exact = cfg.threshold_exponent(item)
        return power_compare(o, item, t, exact) > 0, log_ratio_bin(o, item), None
    if kind == LAMBDA_LAMBDA:
        lam = carmichael_lambda(factorizer(item))
        lamlam = carmichael_lambda(factorizer(lam))
        return _lamlam_exceeds(lamlam, item), _deficiency_bin(item, lamlam), None
    if kind == SHIFTED_PRIME:
        o = coprime_order(e, item - 1, factorizer)
        t, exact = cfg.threshold_exponent(item)
        return power_compare(o, item, t, exact) >= 0, log_ratio_bin(o, item), None
    if kind == HIGH_FACTOR:
        f = factorizer(item - 1)
        q = f.factors[-1][0] if f.factors else 1
        t, exact = cfg.threshold_exponent(item)
        return power_compare(q, item, t, exact) > 0, log_ratio_bin(q, item), None
    if kind == CLASS_COUNTS:
        o = coprime_order(e, item, factorizer)
        label = classify_order_value(o, item, cfg.epsilon)
        return label == "H", log_ratio_bin(o, item), label
    if kind == RSA_PAIR:
        p, l = item
        lam_pl = lcm(p - 1, l - 1)
        o = coprime_order(e, lam_pl, factorizer)
        x = p * l
        t, exact = cfg.threshold_exponent(x)
        return power_compare(o, x, t, exact) >= 0, log_ratio_bin(o, x), None
    raise ValueError(f"unknown survey kind {kind!r}")


# ---------------------------------------------------------------------------
# rsa pair indexing

@functools.lru_cache(maxsize=4)
def _rsa_index(x_max: int) -> tuple[list[int], list[int]]:
    """(primes <= x_max, cumulative pair counts): cum[i] pairs have their
    larger prime among primes[:i].  A pair is p < l < 2p."""
    primes = primes_in_range(2, x_max + 1)
    cum = [0]
    for i, l in enumerate(primes):
        left = bisect.bisect_right(primes, l // 2)
        cum.append(cum[-1] + max(0, i - left))
    return primes, cum


def rsa_pair_count(x_max: int) -> int:
    _, cum = _rsa_index(x_max)
    return cum[-1]


def _rsa_pair_at(primes: list[int], cum: list[int], t: int) -> tuple[int, int]:
    i = bisect.bisect_right(cum, t) - 1
    l = primes[i]
    left = bisect.bisect_right(primes, l // 2)
    return primes[left + (t - cum[i])], l


@functools.lru_cache(maxsize=4)
def _rsa_sample_indices(x_max: int, sample_size: int, seed: int) -> tuple[int, ...] | None:
    """Sorted global pair indices to evaluate, or None for full enumeration."""
    total = rsa_pair_count(x_max)
    if total <= RSA_FULL_ENUM_LIMIT and total <= sample_size:
        return None
    k = min(sample_size, total)
    rng = random.Random(seed)
    return tuple(sorted(rng.sample(range(total), k)))


# ---------------------------------------------------------------------------
# chunked execution

def plan_chunks(cfg: SurveyConfig) -> list[tuple[int, int]]:
    """Half-open chunk ranges covering [low, x_max]."""
    low = cfg.low()
    return [(lo, min(lo + cfg.chunk, cfg.x_max + 1))
            for lo in range(low, cfg.x_max + 1, cfg.chunk)]


def _chunk_items(cfg: SurveyConfig, lo: int, hi: int):
    if cfg.kind in _PRIME_KINDS:
        return primes_in_range(lo, hi)
    if cfg.kind == RSA_PAIR:
        primes, cum = _rsa_index(cfg.x_max)
        sample = _rsa_sample_indices(cfg.x_max, cfg.sample_size, cfg.seed)
        if sample is None:
            out = []
            for i in range(bisect.bisect_left(primes, lo), bisect.bisect_left(primes, hi)):
                l = primes[i]
                left = bisect.bisect_right(primes, l // 2)
                out.extend((primes[j], l) for j in range(left, i))
            return out
        i_lo = bisect.bisect_left(primes, lo)
        i_hi = bisect.bisect_left(primes, hi)
        t_lo, t_hi = cum[i_lo], cum[i_hi]
        a = bisect.bisect_left(sample, t_lo)
        b = bisect.bisect_left(sample, t_hi)
        return [_rsa_pair_at(primes, cum, t) for t in sample[a:b]]
    return range(lo, hi)


def evaluate_chunk(cfg: SurveyConfig, lo: int, hi: int, factorizer=None) -> SurveyResult:
    """Evaluate all items of the survey whose index falls in [lo, hi)."""
    fac = factorizer or FactorCache().factorize
    result = empty_result(cfg)
    if cfg.kind == RSA_PAIR:
        result.sampled = _rsa_sample_indices(cfg.x_max, cfg.sample_size, cfg.seed) is not None
    for item in _chunk_items(cfg, lo, hi):
        try:
            exceeds, stat_bin, label = evaluate_item(cfg, item, fac)
        except OverflowError as exc:
            raise OverflowError(f"survey item {item} overflowed: {exc}") from exc
        result.total += 1
        if exceeds:
            result.exceed += 1
        if stat_bin is not None:
            result.histogram[stat_bin] += 1
        if label is not None:
            result.class_counts[label] += 1
    return result


_PROCESS_CACHE: "FactorCache | None" = None


def _eval_worker(args) -> SurveyResult:
    cfg, lo, hi = args
    fac = _PROCESS_CACHE.factorize if _PROCESS_CACHE is not None else None
    return evaluate_chunk(cfg, lo, hi, fac)


def config_digest(cfg: SurveyConfig) -> str:
    payload = {
        "kind": cfg.kind, "e": cfg.e, "x_max": cfg.x_max, "x_min": cfg.low(),
        "epsilon_cap": cfg.epsilon.cap, "epsilon_form": cfg.epsilon.form,
        "exponent": cfg.exponent_override, "chunk": cfg.chunk,
        "seed": cfg.seed, "sample_size": cfg.sample_size,
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _save_checkpoint(path: str, cfg: SurveyConfig, done: list[tuple[int, int]],
                     partial: SurveyResult) -> None:
    doc = {
        "schema": 1,
        "config_sha256": config_digest(cfg),
        "done": [list(c) for c in done],
        "partial": {
            "total": partial.total,
            "exceed": partial.exceed,
            "histogram": list(partial.histogram),
            "class_counts": partial.class_counts,
            "sampled": partial.sampled,
        },
    }
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
    os.replace(tmp, path)


def _load_checkpoint(path: str, cfg: SurveyConfig) -> tuple[list[tuple[int, int]], SurveyResult]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise CheckpointError(f"checkpoint {path} is not valid JSON: {exc}") from exc
    if doc.get("schema") != 1:
        raise CheckpointError(f"checkpoint {path} has unknown schema {doc.get('schema')!r}")
    if doc.get("config_sha256") != config_digest(cfg):
        raise CheckpointError(f"checkpoint {path} belongs to a different survey config")
    try:
        done = [(int(lo), int(hi)) for lo, hi in doc["done"]]
        p = doc["partial"]
        partial = SurveyResult(
            config=cfg, total=int(p["total"]), exceed=int(p["exceed"]),
            histogram=[int(x) for x in p["histogram"]],
            class_counts=p["class_counts"], sampled=bool(p["sampled"]),
        )
        if len(partial.histogram) != N_BINS:
            raise ValueError("bad histogram length")
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"checkpoint {path} is corrupt: {exc}") from exc
    return done, partial


def run_survey(cfg: SurveyConfig, workers: int = 1, checkpoint: str | None = None,
               cache: "FactorCache | None" = None) -> SurveyResult:
    """Run the configured survey over chunks; the result is a pure function
    of cfg, identical for any worker count, chunking, or resume history."""
    global _PROCESS_CACHE
    t0 = time.perf_counter()
    chunks = plan_chunks(cfg)
    if checkpoint and os.path.exists(checkpoint):
        done, result = _load_checkpoint(checkpoint, cfg)
    else:
        done, result = [], empty_result(cfg)
    done_set = set(done)
    todo = [c for c in chunks if c not in done_set]

    if workers <= 1 or len(todo) <= 1:
        fac = cache.factorize if cache is not None else None
        for lo, hi in todo:
            result = merge_results(result, evaluate_chunk(cfg, lo, hi, fac))
            done.append((lo, hi))
            if checkpoint:
                _save_checkpoint(checkpoint, cfg, done, result)
    else:
        _PROCESS_CACHE = cache
        try:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for (lo, hi), part in zip(todo, pool.map(_eval_worker,
                                                         [(cfg, lo, hi) for lo, hi in todo])):
                    result = merge_results(result, part)
                    done.append((lo, hi))
                    if checkpoint:
                        _save_checkpoint(checkpoint, cfg, done, result)
        finally:
            _PROCESS_CACHE = None
    result.elapsed = time.perf_counter() - t0
    return result


def _survey_of_kind(cfg: SurveyConfig, kind: str) -> SurveyResult:
    if cfg.kind != kind:
        raise ValueError(f"config kind {cfg.kind!r} does not match {kind!r}")
    return run_survey(cfg)


def survey_ord_n(cfg: SurveyConfig) -> SurveyResult:
    return _survey_of_kind(cfg, ORD_N)


def survey_shifted_prime(cfg: SurveyConfig) -> SurveyResult:
    return _survey_of_kind(cfg, SHIFTED_PRIME)


def survey_rsa_pair(cfg: SurveyConfig) -> SurveyResult:
    return _survey_of_kind(cfg, RSA_PAIR)


def survey_lambda_n(cfg: SurveyConfig) -> SurveyResult:
    if cfg.kind not in (LAMBDA_N, ONE_MINUS_DELTA):
        raise ValueError(f"config kind {cfg.kind!r} is not a lambda survey")
    return run_survey(cfg)


def survey_lambda_lambda(cfg: SurveyConfig) -> SurveyResult:
    return _survey_of_kind(cfg, LAMBDA_LAMBDA)


def survey_high_factor(cfg: SurveyConfig) -> SurveyResult:
    return _survey_of_kind(cfg, HIGH_FACTOR)


def survey_class_counts(cfg: SurveyConfig) -> SurveyResult:
    return _survey_of_kind(cfg, CLASS_COUNTS)


# ---------------------------------------------------------------------------
# factor cache

_CACHE_MAGIC = b"OSFC"
_CACHE_VERSION = 1


class FactorCache:
    """In-memory factorization map with a versioned binary file format.

    Misses fall through to arith.factorize and are remembered; reads are
    safe from any number of workers (the map is only grown, never mutated
    in place), and persistence is an explicit save().
    """

    def __init__(self, entries: dict[int, Factorization] | None = None):
        self._map: dict[int, Factorization] = dict(entries or {})

    def __len__(self) -> int:
        return len(self._map)

    def __contains__(self, n: int) -> bool:
        return n in self._map

    def factorize(self, n: int) -> Factorization:
        f = self._map.get(n)
        if f is None:
            f = factorize(n)
            self._map[n] = f
        return f

    def save(self, path: str) -> None:
        tmp = f"{path}.tmp"
        with open(tmp, "wb") as fh:
            fh.write(_CACHE_MAGIC)
            fh.write(struct.pack("<BQ", _CACHE_VERSION, len(self._map)))
            for value in sorted(self._map):
                factors = self._map[value].factors
                fh.write(struct.pack("<QB", value, len(factors)))
                for p, a in factors:
                    fh.write(struct.pack("<QB", p, a))
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str) -> "FactorCache":
        with open(path, "rb") as fh:
            blob = fh.read()
        if blob[:4] != _CACHE_MAGIC:
            raise CacheError(f"{path}: bad magic, not a factor cache")
        try:
            version, count = struct.unpack_from("<BQ", blob, 4)
        except struct.error as exc:
            raise CacheError(f"{path}: truncated header") from exc
        if version != _CACHE_VERSION:
            raise CacheError(f"{path}: unknown cache version {version}")
        offset = 13
        entries: dict[int, Factorization] = {}
        try:
            for _ in range(count):
                value, k = struct.unpack_from("<QB", blob, offset)
                offset += 9
                factors = []
                for _ in range(k):
                    p, a = struct.unpack_from("<QB", blob, offset)
                    offset += 9
                    factors.append((p, a))
                entries[value] = Factorization(value, tuple(factors))
        except (struct.error, ValueError) as exc:
            raise CacheError(f"{path}: corrupt entry: {exc}") from exc
        if offset != len(blob):
            raise CacheError(f"{path}: trailing garbage after {count} entries")
        return cls(entries)

    @classmethod
    def load_or_new(cls, path: str) -> "FactorCache":
        if os.path.exists(path):
            return cls.load(path)
        return cls()
