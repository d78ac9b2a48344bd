"""R-full numbers, the generalized Dedekind psi weight, and local densities.

The density of {n : f(n) = k} is (1/zeta(r)) times the sum, over r-full b
with f(b) = k, of 1/psi(b), where psi(b) = b * prod_{p|b}(1 + 1/p + ... +
1/p^(r-1)) generalizes the Dedekind psi function.  A second evaluation path
sums the r-full-supported convolution weights h(n)/n and divides by
zeta(r); the two paths must agree within the truncation tails.

Truncation tails are estimated by a geometric extrapolation of the first
out-of-range block (bound, 2^r * bound]: r-full counts grow like X^(1/r),
so successive doubling blocks of the reciprocal series shrink by roughly
2^(1/r - 1).  The estimate is a heuristic uncertainty, not a proof-grade
bound.

Series are accumulated with math.fsum (exactly rounded), so round-off is
far below the 1e-12 budget even at the default truncation 10^9.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import fsum

from .bounds import zeta
from .factor import (
    Factorization,
    eval_rule,
    introot,
    is_r_full,
    primes_upto,
    rfull_weights_up_to,
)
from .rules import ExponentRule

DEFAULT_BOUND = 10**9

RFullTerms = list[tuple[int, Factorization]]


def rfull_factorizations(r: int, limit: int) -> RFullTerms:
    """All r-full n <= limit with their factorizations, ascending.

    Assembled recursively from prime powers p^e, e >= r, over primes
    p <= limit^(1/r); each r-full number is produced exactly once.
    """
    if r < 2:
        raise ValueError(f"rfull_factorizations requires r >= 2, got {r}")
    if limit < 1:
        raise ValueError(f"rfull_factorizations requires limit >= 1, got {limit}")
    primes = primes_upto(introot(limit, r))
    out: RFullTerms = [(1, ())]
    parts: list[tuple[int, int]] = []

    def descend(start: int, value: int) -> None:
        for i in range(start, len(primes)):
            p = primes[i]
            power = p**r
            if value * power > limit:
                break
            e = r
            while value * power <= limit:
                parts.append((p, e))
                out.append((value * power, tuple(parts)))
                descend(i + 1, value * power)
                parts.pop()
                power *= p
                e += 1

    descend(0, 1)
    out.sort()
    return out


def enumerate_rfull(r: int, limit: int):
    """Yield every r-full n <= limit in ascending order (1 included)."""
    for n, _ in rfull_factorizations(r, limit):
        yield n


@dataclass(frozen=True)
class RFullDecomposition:
    """n = parts[0]^r * parts[1]^(r+1) * ... * parts[r-1]^(2r-1).

    parts[1..r-1] have squarefree product and are pairwise coprime; this
    pins the decomposition uniquely.
    """

    r: int
    parts: tuple[int, ...]

    def recompose(self) -> int:
        n = 1
        for j, a in enumerate(self.parts):
            n *= a ** (self.r + j)
        return n


def decompose_rfull(fact: Factorization, r: int) -> RFullDecomposition:
    """Split an r-full factorization into the unique power decomposition.

    A prime with exponent alpha = r*q + s goes into parts[s] once when
    s >= 1 (with p^(q-1) left for parts[0]) and contributes p^q to parts[0]
    when s = 0; the round-trip identity then holds by construction.
    """
    if r < 2:
        raise ValueError(f"decompose_rfull requires r >= 2, got {r}")
    if not is_r_full(fact, r):
        raise ValueError("decompose_rfull requires an r-full factorization")
    parts = [1] * r
    for p, alpha in fact:
        q, s = divmod(alpha, r)
        if s == 0:
            parts[0] *= p**q
        else:
            parts[0] *= p ** (q - 1)
            parts[s] *= p
    return RFullDecomposition(r, tuple(parts))


def dedekind_psi(fact: Factorization, r: int) -> Fraction:
    """b * prod_{p | b} (1 + 1/p + ... + 1/p^(r-1)) as an exact rational."""
    if r < 2:
        raise ValueError(f"dedekind_psi requires r >= 2, got {r}")
    out = Fraction(1)
    for p, alpha in fact:
        out *= Fraction(p) ** alpha * Fraction(p**r - 1, p ** (r - 1) * (p - 1))
    return out


def tail_geometric_factor(r: int) -> float:
    """Geometric-series factor applied to the first out-of-range block."""
    return 1.0 / (1.0 - 2.0 ** (1.0 / r - 1.0))


@dataclass(frozen=True)
class DensityResult:
    """Truncated density series for one (rule, k)."""

    rule: str
    k: int
    r: int
    bound: int
    partial_sum: float
    tail_estimate: float
    zeta_r: float
    density: float

    def to_record(self) -> dict:
        return {
            "rule": self.rule,
            "k": self.k,
            "r": self.r,
            "B": self.bound,
            "partial_sum": self.partial_sum,
            "tail_estimate": self.tail_estimate,
            "zeta_r": self.zeta_r,
            "density": self.density,
        }


def _check_series_args(k: int, bound: int) -> None:
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if bound < 1:
        raise ValueError(f"truncation bound must be >= 1, got {bound}")


def _reciprocal(psi: Fraction) -> float:
    # 1/psi with a single correctly-rounded division.
    return psi.denominator / psi.numerator


def local_density(rule: ExponentRule, k: int, bound: int = DEFAULT_BOUND, *,
                  terms: RFullTerms | None = None) -> DensityResult:
    """Density of {n : f(n) = k} from the truncated reciprocal-psi series.

    An unattained k yields density 0 (never an error).  When supplied,
    `terms` must hold the r-full factorizations up to 2^r * bound.
    """
    _check_series_args(k, bound)
    r = rule.r
    if terms is None:
        terms = rfull_factorizations(r, (1 << r) * bound)
    head = []
    block = []
    for n, fact in terms:
        if n <= bound:
            if eval_rule(rule, fact) == k:
                head.append(_reciprocal(dedekind_psi(fact, r)))
        else:
            block.append(_reciprocal(dedekind_psi(fact, r)))
    partial = fsum(head)
    tail = tail_geometric_factor(r) * fsum(block)
    z = zeta(r)
    return DensityResult(rule.name, k, r, bound, partial, tail, z, partial / z)


def density_profile(rule: ExponentRule, bound: int, k_max: int, *,
                    terms: RFullTerms | None = None) -> dict[int, DensityResult]:
    """local_density for every k <= k_max in a single enumeration pass."""
    _check_series_args(k_max, bound)
    r = rule.r
    if terms is None:
        terms = rfull_factorizations(r, (1 << r) * bound)
    heads: dict[int, list[float]] = {k: [] for k in range(1, k_max + 1)}
    block = []
    for n, fact in terms:
        if n <= bound:
            v = eval_rule(rule, fact)
            if v <= k_max:
                heads[v].append(_reciprocal(dedekind_psi(fact, r)))
        else:
            block.append(_reciprocal(dedekind_psi(fact, r)))
    tail = tail_geometric_factor(r) * fsum(block)
    z = zeta(r)
    return {
        k: DensityResult(rule.name, k, r, bound, fsum(vals), tail, z, fsum(vals) / z)
        for k, vals in heads.items()
    }


def weight_harmonic_sum(rule: ExponentRule, k: int, bound: int, *,
                        terms: RFullTerms | None = None) -> float:
    """Sum of h(n)/n over r-full n <= bound: the second density path numerator.

    Dividing by zeta(r) gives the density again, up to both truncation tails.
    """
    _check_series_args(k, bound)
    if terms is None:
        terms = rfull_factorizations(rule.r, bound)
    vals = []
    for n, fact in terms:
        if n > bound:
            break
        h = rfull_weights_up_to(rule, fact, k).get(k, 0)
        if h:
            vals.append(h / n)
    return fsum(vals)


def weight_harmonic_tail(rule: ExponentRule, k: int, bound: int, *,
                         terms: RFullTerms | None = None) -> float:
    """Geometric tail estimate for the h(n)/n series beyond the bound.

    Mirrors the density tail: |h(n)|/n summed over the first out-of-range
    block (bound, 2^r * bound], scaled by the geometric factor.
    """
    _check_series_args(k, bound)
    r = rule.r
    if terms is None:
        terms = rfull_factorizations(r, (1 << r) * bound)
    vals = []
    for n, fact in terms:
        if n <= bound:
            continue
        h = rfull_weights_up_to(rule, fact, k).get(k, 0)
        if h:
            vals.append(abs(h) / n)
    return tail_geometric_factor(r) * fsum(vals)


def weight_harmonic_profile(rule: ExponentRule, bound: int, k_max: int, *,
                            terms: RFullTerms | None = None) -> dict[int, tuple[float, float]]:
    """(harmonic sum, tail estimate) for every k <= k_max in one pass."""
    _check_series_args(k_max, bound)
    r = rule.r
    if terms is None:
        terms = rfull_factorizations(r, (1 << r) * bound)
    heads: dict[int, list[float]] = {k: [] for k in range(1, k_max + 1)}
    tails: dict[int, list[float]] = {k: [] for k in range(1, k_max + 1)}
    for n, fact in terms:
        weights = rfull_weights_up_to(rule, fact, k_max)
        if not weights:
            continue
        target = heads if n <= bound else tails
        for k, h in weights.items():
            target[k].append((h if n <= bound else abs(h)) / n)
    factor = tail_geometric_factor(r)
    return {k: (fsum(heads[k]), factor * fsum(tails[k])) for k in range(1, k_max + 1)}


def weight_partial_sum(rule: ExponentRule, k: int, kappa: float, x: int, *,
                       terms: RFullTerms | None = None) -> float:
    """Exact partial sum of |h(n)| / n^kappa over r-full n <= x."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    if x < 2:
        raise ValueError(f"weight_partial_sum requires x >= 2, got {x}")
    if terms is None:
        terms = rfull_factorizations(rule.r, x)
    vals = []
    for n, fact in terms:
        if n > x:
            break
        h = rfull_weights_up_to(rule, fact, k).get(k, 0)
        if h:
            vals.append(abs(h) if kappa == 0 else abs(h) * n ** (-float(kappa)))
    return fsum(vals)
