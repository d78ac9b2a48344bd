"""Segmented factorization sieve and interval counting over (x, x+y].

Counting {n : f(n) = k} in a window only needs prime squares: a prime
dividing n exactly once contributes g(1) = 1, so the counting kernel marks
multiples of p^2 for p <= sqrt(x+y), extracts exact exponents, and
multiplies table values into an int64 accumulator per offset.  Leftover
cofactors after sieving to sqrt(x+y) are prime and never affect f.

Windows are processed in chunks of at most DEFAULT_CHUNK offsets so the
working arrays stay cache- and memory-friendly.  Chunk boundaries depend
only on (x, y); counts are exact integers combined in fixed chunk order,
so results never depend on chunking or worker count.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .bounds import bound_breakdown
from .density import DEFAULT_BOUND, DensityResult, enumerate_rfull, local_density
from .factor import (
    MAX_N,
    Factorization,
    eval_rule,
    introot,
    primes_upto,
)
from .rules import ExponentRule

DEFAULT_CHUNK = 8_000_000

_SLOW_CHUNK = 100_000


def _check_window(x: int, y: int) -> None:
    if x < 0:
        raise ValueError(f"window base must be >= 0, got {x}")
    if y < 1:
        raise ValueError(f"window length must be >= 1, got {y}")
    if x + y >= MAX_N:
        raise ValueError("window end must stay below 2**63")


def _chunks(x: int, y: int, cap: int = DEFAULT_CHUNK) -> list[tuple[int, int]]:
    out = []
    done = 0
    while done < y:
        step = min(cap, y - done)
        out.append((x + done, step))
        done += step
    return out


@dataclass
class SieveSegment:
    """Per-offset partial factorizations for the integers in (base, base+length].

    `factors[i]` holds the primes p <= sqrt(base+length) dividing
    base+1+i with their exact exponents; `cofactors[i]` is the unfactored
    remainder, which is 1 or a prime above the sieving limit.
    """

    base: int
    length: int
    factors: list[Factorization]
    cofactors: list[int]

    def value_at(self, offset: int) -> int:
        return self.base + 1 + offset

    def factorization_at(self, offset: int) -> Factorization:
        fact = self.factors[offset]
        c = self.cofactors[offset]
        return fact + ((c, 1),) if c > 1 else fact


def sieve_segment(x: int, y: int) -> SieveSegment:
    """Factor every integer in (x, x+y] by sieving primes up to sqrt(x+y)."""
    _check_window(x, y)
    lists: list[list[tuple[int, int]]] = [[] for _ in range(y)]
    remain = list(range(x + 1, x + y + 1))
    for p in primes_upto(isqrt(x + y)):
        start = (x // p + 1) * p
        for idx in range(start - x - 1, y, p):
            m = remain[idx]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            remain[idx] = m
            lists[idx].append((p, e))
    return SieveSegment(x, y, [tuple(f) for f in lists], remain)


@lru_cache(maxsize=None)
def _int64_safe(rule: ExponentRule) -> bool:
    # g(alpha) <= 2^alpha for all alpha forces f(n) <= n < 2**63, so the
    # int64 product accumulator cannot overflow.  Holds for every built-in
    # family; exotic custom tables fall back to exact Python integers.
    return all(v <= 1 << a for a, v in enumerate(rule.values))


def _fvalues_chunk(rule: ExponentRule, x: int, y: int) -> np.ndarray:
    """int64 array of f(x+1), ..., f(x+y); requires an int64-safe rule."""
    n0 = x + 1
    fval = np.ones(y, dtype=np.int64)
    gtab = np.array(rule.values, dtype=np.int64)
    for p in primes_upto(isqrt(x + y)):
        p2 = p * p
        start = (x // p2 + 1) * p2
        if start > x + y:
            continue
        idx = np.arange(start - n0, y, p2, dtype=np.int64)
        m = np.arange(start // p2, start // p2 + idx.size, dtype=np.int64)
        e = np.full(idx.size, 2, dtype=np.int64)
        live = m % p == 0
        while live.any():
            sel = np.nonzero(live)[0]
            m[sel] //= p
            e[sel] += 1
            live[sel] = m[sel] % p == 0
        fval[idx] *= gtab[e]
    return fval


def _counts_chunk(rule: ExponentRule, x: int, y: int) -> dict[int, int]:
    if _int64_safe(rule):
        values, counts = np.unique(_fvalues_chunk(rule, x, y), return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}
    out: dict[int, int] = {}
    for cx, cy in _chunks(x, y, _SLOW_CHUNK):
        seg = sieve_segment(cx, cy)
        for fact in seg.factors:
            v = eval_rule(rule, fact)
            out[v] = out.get(v, 0) + 1
    return out


def _count_task(task) -> int:
    rule, k, x, y = task
    if _int64_safe(rule):
        if k >= MAX_N:
            return 0
        return int(np.count_nonzero(_fvalues_chunk(rule, x, y) == k))
    return _counts_chunk(rule, x, y).get(k, 0)


def _profile_task(task) -> dict[int, int]:
    rule, x, y = task
    return _counts_chunk(rule, x, y)


def _run_tasks(tasks, worker, workers: int):
    if workers > 1 and len(tasks) > 1:
        with multiprocessing.Pool(min(workers, len(tasks))) as pool:
            return pool.map(worker, tasks)
    return [worker(t) for t in tasks]


def count_value(rule: ExponentRule, k: int, x: int, y: int, workers: int = 1) -> int:
    """#{n in (x, x+y] : f(n) = k}, by segmented sieve.

    The sieved exponents alone determine f; prime cofactors above
    sqrt(x+y) contribute g(1) = 1 and are never materialized.
    """
    _check_window(x, y)
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    tasks = [(rule, k, cx, cy) for cx, cy in _chunks(x, y)]
    return sum(_run_tasks(tasks, _count_task, workers))


def value_counts(rule: ExponentRule, x: int, y: int, workers: int = 1) -> dict[int, int]:
    """Counts of every f value attained in (x, x+y], keyed by value."""
    _check_window(x, y)
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    tasks = [(rule, cx, cy) for cx, cy in _chunks(x, y)]
    merged: dict[int, int] = {}
    for part in _run_tasks(tasks, _profile_task, workers):
        for v, c in part.items():
            merged[v] = merged.get(v, 0) + c
    return dict(sorted(merged.items()))


def count_r_free(x: int, y: int, r: int) -> int:
    """#{n in (x, x+y] : n is r-free}, by marking multiples of p^r."""
    _check_window(x, y)
    if r < 2:
        raise ValueError(f"count_r_free requires r >= 2, got {r}")
    total = 0
    for cx, cy in _chunks(x, y):
        marked = np.zeros(cy, dtype=bool)
        for p in primes_upto(introot(cx + cy, r)):
            q = p**r
            start = (cx // q + 1) * q
            if start > cx + cy:
                continue
            marked[start - cx - 1 :: q] = True
        total += cy - int(np.count_nonzero(marked))
    return total


def _count_rfull_divisors_above(fact: Factorization, r: int, lower: int) -> int:
    # Count divisors d > lower of n whose every prime exponent is >= r;
    # only primes with exponent >= r in n can appear in such a d.
    usable = [(p, a) for p, a in fact if a >= r]
    count = 0

    def descend(i: int, value: int) -> None:
        nonlocal count
        if i == len(usable):
            if value > lower:
                count += 1
            return
        p, a = usable[i]
        descend(i + 1, value)
        power = p**r
        for _ in range(r, a + 1):
            descend(i + 1, value * power)
            power *= p
    descend(0, 1)
    return count


def rfull_multiples_sum(x: int, y: int, r: int, method: str = "rfull") -> int:
    """Sum over r-full n in (2Y, 2X] of the count of multiples of n in (X, X+Y].

    Two independent evaluation paths: "rfull" enumerates the r-full n and
    sums floor differences; "divisors" counts, for each m in (X, X+Y], its
    r-full divisors above 2Y.  Both are exact and must agree.
    """
    if not 0 < y < x:
        raise ValueError(f"rfull_multiples_sum requires 0 < Y < X, got X={x}, Y={y}")
    if method == "rfull":
        total = 0
        for n in enumerate_rfull(r, 2 * x):
            if n <= 2 * y:
                continue
            total += (x + y) // n - x // n
        return total
    if method == "divisors":
        seg = sieve_segment(x, y)
        return sum(
            _count_rfull_divisors_above(seg.factorization_at(off), r, 2 * y)
            for off in range(y)
        )
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class IntervalReport:
    """Observed vs. predicted count over one window, with error-bound terms."""

    rule: str
    k: int
    r: int
    x: int
    y: int
    count: int
    density: float
    main_term: float
    abs_error: float
    term_main: float
    term_mid: float
    term_tail: float
    admissible: bool

    def to_record(self) -> dict:
        return {
            "rule": self.rule,
            "k": self.k,
            "r": self.r,
            "x": self.x,
            "y": self.y,
            "count": self.count,
            "density": self.density,
            "main_term": self.main_term,
            "abs_error": self.abs_error,
            "term_main": self.term_main,
            "term_mid": self.term_mid,
            "term_tail": self.term_tail,
            "admissible": self.admissible,
        }


def admissible_window(r: int, x: int, y: int, eps: float) -> bool:
    """Whether x^(1/(2r+1) + eps) <= y <= 4^(-2 r^2) * x."""
    if x < 1:
        return False
    return x ** (1.0 / (2 * r + 1) + eps) <= y <= x * 4.0 ** (-2 * r * r)


def interval_report(rule: ExponentRule, k: int, x: int, y: int, eps: float = 0.01,
                    bound: int = DEFAULT_BOUND, workers: int = 1,
                    density_result: DensityResult | None = None) -> IntervalReport:
    """Count f(n) = k over (x, x+y] and compare against density * y.

    The three bound components are reported without the x^eps factor; eps
    only enters the admissibility flag.  Requires y < x so the error terms
    are defined.
    """
    _check_window(x, y)
    parts = bound_breakdown(rule.r, x, y)
    d = density_result if density_result is not None else local_density(rule, k, bound)
    count = count_value(rule, k, x, y, workers=workers)
    main = d.density * y
    return IntervalReport(
        rule=rule.name,
        k=k,
        r=rule.r,
        x=x,
        y=y,
        count=count,
        density=d.density,
        main_term=main,
        abs_error=abs(count - main),
        term_main=parts.term_main,
        term_mid=parts.term_mid,
        term_tail=parts.term_tail,
        admissible=admissible_window(rule.r, x, y, eps),
    )
