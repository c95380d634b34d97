"""Closed-form count of charm bracelets (Titsworth's formula)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .combinatorics import units

__all__ = ["repetition_order", "cycle_count", "cycle_count_table", "count_charm_bracelets"]


def repetition_order(j: int, L: int, cap: int | None = None) -> int:
    """Smallest m >= 1 with 1 + j + ... + j**(m-1) == 0 (mod L)."""
    if L < 1:
        raise ValueError(f"L must be positive, got {L}")
    if cap is None:
        cap = L * L
    total = 0
    power = 1 % L
    for m in range(1, cap + 1):
        total = (total + power) % L
        if total == 0:
            return m
        power = (power * j) % L
    raise ArithmeticError(f"no repetition order for j={j}, L={L} within {cap} steps")


def cycle_count(j: int, t: int, n: int) -> int:
    """Number of cycles of the index map ``u -> j*u + t`` on Z_n."""
    if gcd(j, n) != 1:
        raise ValueError(f"j={j} is not a unit mod {n}")
    total = Fraction(0)
    for u in range(n):
        L = n // gcd(n, u * (j - 1) + t)
        total += Fraction(1, repetition_order(j % n, L, cap=n * L))
    if total.denominator != 1:
        raise ArithmeticError(f"cycle count for j={j}, t={t}, n={n} is not integral: {total}")
    return int(total)


def cycle_count_table(n: int) -> dict[tuple[int, int], int]:
    """``{(j, t): c(j, t)}`` over units j and shifts t of Z_n."""
    js = units(n) if n > 1 else [1]
    return {(j, t): cycle_count(j, t, n) for j in js for t in range(n)}


def count_charm_bracelets(n: int, k: int) -> int:
    """CB(n, k): number of k-ary charm bracelets of length n, exactly."""
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    if n == 1:
        # the unit sum is empty at n=1; every symbol is its own class
        return k
    js = units(n)
    total = sum(k ** cycle_count(j, t, n) for j in js for t in range(n))
    group_order = n * len(js)
    q, r = divmod(total, group_order)
    if r:
        raise ArithmeticError(f"orbit sum {total} not divisible by {group_order}")
    return q
