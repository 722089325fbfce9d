"""Symmetric-group combinatorics: aspherical sets, m-regular partitions, supports."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DomainError, InvariantViolation


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        p = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in p) or list(p) != sorted(p, reverse=True):
            raise DomainError(f"not a partition: {self.parts}")
        object.__setattr__(self, "parts", p)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def multiplicities(self) -> dict:
        out: dict = {}
        for x in self.parts:
            out[x] = out.get(x, 0) + 1
        return out

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class AsphericalSet:
    n: int
    values: tuple

    def __post_init__(self):
        for v in self.values:
            if not (-1 < v < 0) or v.denominator > self.n:
                raise InvariantViolation(f"{v} cannot belong to an aspherical set for n={self.n}")


def _need(n, lo=2):
    if n < lo:
        raise DomainError(f"n must be at least {lo}")


def partitions(n: int):
    """All partitions of n in descending lexicographic order."""
    if n == 0:
        yield Partition(())
        return

    def rec(rest, largest):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, largest), 0, -1):
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for p in rec(n, n):
        yield Partition(p)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) from Euler's pentagonal recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def q_set(n: int) -> AsphericalSet:
    """Rationals in (-1, 0) with denominator at most n."""
    _need(n)
    vals = {Fraction(-r, m) for m in range(2, n + 1) for r in range(1, m) if gcd(r, m) == 1}
    return AsphericalSet(n, tuple(sorted(vals)))


def fda_sn(n: int, full: bool = False) -> list[Fraction]:
    """{r/n : -n < r < 0, gcd(r, n) = 1}; every member already lies in (-1, 0)."""
    _need(n)
    vals = sorted(Fraction(r, n) for r in range(-n + 1, 0) if gcd(r, n) == 1)
    return vals if full else [v for v in vals if -1 < v < 0]


@lru_cache(maxsize=None)
def _sigma(n: int) -> frozenset:
    out = set(fda_sn(n))
    for lam in partitions(n):
        if lam.parts == (n,):
            continue
        for k in set(lam.parts):
            if k >= 2:
                out |= _sigma(k)
    return frozenset(out)


def sigma_recursive(n: int) -> AsphericalSet:
    """Aspherical set of S_n built from FDA of S_n and of every Young subgroup factor."""
    _need(n)
    return AsphericalSet(n, tuple(sorted(_sigma(n))))


def _check_m(n, m):
    if not 2 <= m <= n:
        raise DomainError(f"m must satisfy 2 <= m <= n (got m={m}, n={n})")


def is_aspherical(lam: Partition, m: int) -> bool:
    """True when some part of lam occurs at least m times (lam not m-regular)."""
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    _check_m(lam.size, m)
    return any(k >= m for k in lam.multiplicities().values())


def m_regular_brute(n: int, m: int) -> int:
    return sum(1 for lam in partitions(n) if all(k < m for k in lam.multiplicities().values()))


def _euler_phi_series(step: int, order: int) -> list[int]:
    """Coefficients of prod_{k>=1} (1 - q^(step*k)) up to q^order."""
    s = [0] * (order + 1)
    s[0] = 1
    k = 1
    while step * k <= order:
        e = step * k
        for i in range(order, e - 1, -1):
            s[i] -= s[i - e]
        k += 1
    return s


def m_regular_series(m: int, order: int) -> list[int]:
    """Coefficients of phi(q^m)/phi(q) up to q^order."""
    num = _euler_phi_series(m, order)
    den = _euler_phi_series(1, order)
    out = [0] * (order + 1)
    for i in range(order + 1):  # den[0] == 1
        out[i] = num[i] - sum(den[j] * out[i - j] for j in range(1, i + 1))
    return out


def parts_not_divisible_count(n: int, m: int) -> int:
    """Monomials of weight n in a_1, a_2, ... (a_i of weight i) using only i not divisible by m."""
    ways = [1] + [0] * n
    for i in range(1, n + 1):
        if i % m:
            for t in range(i, n + 1):
                ways[t] += ways[t - i]
    return ways[n]


def count_aspherical(n: int, m: int) -> int:
    """Partitions of n that are not m-regular, computed two ways."""
    _check_m(n, m)
    brute = sum(1 for lam in partitions(n) if is_aspherical(lam, m))
    series = partition_count(n) - m_regular_series(m, n)[n]
    if brute != series:
        raise InvariantViolation(f"brute force {brute} != series {series} for n={n}, m={m}")
    return brute


def support_count(n: int, m: int) -> int:
    _check_m(n, m)
    return n // m + 1


@dataclass(frozen=True)
class BnParameter:
    m: int
    l: int
    sign: int
    c: Fraction
    aspherical: bool


def em_bn_parameters(n: int) -> list[BnParameter]:
    """c = 1/(2(m - l +- 1)) for each factorisation m*l = n."""
    _need(n)
    out = []
    for m in range(1, n + 1):
        if n % m:
            continue
        l = n // m
        for sign in (1, -1):
            k = m - l + sign
            if k == 0:
                continue
            out.append(BnParameter(m, l, sign, Fraction(1, 2 * k), k > 0 and l > 1))
    return out
