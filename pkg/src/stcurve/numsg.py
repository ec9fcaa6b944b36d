"""Numerical semigroups with three generators.

Membership is decided with a boolean dynamic-programming table that is grown
until ``min(l, m, n)`` consecutive members appear; past that point every
integer is a member, so the table also yields the gaps and the conductor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd

from .errors import NotMember, NotNumerical, ZeroGenerator


@dataclass(frozen=True)
class GapData:
    gaps: tuple[int, ...]
    frobenius: int
    conductor: int


@dataclass(frozen=True)
class NumericalSemigroup:
    """The semigroup <l, m, n>; ``d`` is gcd(l, m)."""

    l: int
    m: int
    n: int

    @property
    def d(self) -> int:
        return gcd(self.l, self.m)

    @property
    def generators(self) -> tuple[int, int, int]:
        return (self.l, self.m, self.n)

    @cached_property
    def _table(self) -> tuple[bool, ...]:
        # table[k] for 0 <= k < conductor; everything beyond is a member
        gens = self.generators
        run_needed = min(gens)
        table = [True]
        run = 1
        k = 0
        while run < run_needed:
            k += 1
            member = any(k >= g and table[k - g] for g in gens)
            table.append(member)
            run = run + 1 if member else 0
        # trailing run of members belongs to the "everything is in" region
        conductor = len(table) - run
        return tuple(table[:conductor])

    @property
    def conductor(self) -> int:
        return len(self._table)

    def __contains__(self, k: int) -> bool:
        return contains(self, k)


def make_semigroup(l: int, m: int, n: int) -> NumericalSemigroup:
    for g in (l, m, n):
        if not isinstance(g, int) or isinstance(g, bool):
            raise TypeError(f"generators must be integers, got {g!r}")
        if g == 0:
            raise ZeroGenerator("generators must be positive, got 0")
        if g < 0:
            raise ZeroGenerator(f"generators must be positive, got {g}")
    if gcd(gcd(l, m), n) != 1:
        raise NotNumerical(f"gcd({l}, {m}, {n}) = {gcd(gcd(l, m), n)} != 1")
    return NumericalSemigroup(l, m, n)


def contains(S: NumericalSemigroup, k: int) -> bool:
    if k < 0:
        return False
    table = S._table
    return k >= len(table) or table[k]


def gap_data(S: NumericalSemigroup) -> GapData:
    gaps = tuple(k for k, member in enumerate(S._table) if not member)
    frobenius = gaps[-1] if gaps else -1
    return GapData(gaps=gaps, frobenius=frobenius, conductor=frobenius + 1)


def apery_set(S: NumericalSemigroup, w: int) -> list[int]:
    """Least element of S in each residue class modulo ``w``, indexed by residue."""
    if w <= 0 or not contains(S, w):
        raise NotMember(f"{w} is not a nonzero element of <{S.l},{S.m},{S.n}>")
    result: list[int | None] = [None] * w
    missing = w
    k = 0
    while missing:
        r = k % w
        if result[r] is None and contains(S, k):
            result[r] = k
            missing -= 1
        k += 1
    return result  # type: ignore[return-value]


def factorize(S: NumericalSemigroup, k: int, min_x: int = 0) -> tuple[int, int, int] | None:
    """A representation k = alpha*l + beta*m + gamma*n with alpha >= min_x, or None.

    Ties are broken reverse-lexicographically: least gamma, then least beta,
    so the x-exponent is as large as possible. For <4,5,7> and k = 12 this
    gives (3, 0, 0) rather than (0, 1, 1).
    """
    return _factorize(S.l, S.m, S.n, k, min_x)


@lru_cache(maxsize=65536)
def _factorize(l: int, m: int, n: int, k: int, min_x: int) -> tuple[int, int, int] | None:
    rest0 = k - min_x * l
    if rest0 < 0:
        return None
    for gamma in range(rest0 // n + 1):
        rest = rest0 - gamma * n
        for beta in range(rest // m + 1):
            r = rest - beta * m
            if r % l == 0:
                return (min_x + r // l, beta, gamma)
    return None


def representations(value: int, weights: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All exponent vectors e >= 0 with sum(e_i * w_i) == value, in lexicographic order."""
    out: list[tuple[int, ...]] = []
    last = len(weights) - 1

    def rec(i: int, rest: int, prefix: tuple[int, ...]) -> None:
        w = weights[i]
        if i == last:
            if rest % w == 0:
                out.append(prefix + (rest // w,))
            return
        for e in range(rest // w + 1):
            rec(i + 1, rest - e * w, prefix + (e,))

    if weights:
        rec(0, value, ())
    return out
