"""Necklaces, bracelets and charm bracelets over k-ary strings.

Strings are plain tuples of ints in ``range(k)``; index ``j`` of a
length-``n`` string is read as an element of Z_n.  All generators are
visitor based: they call ``visitor(s)`` once per representative, in
increasing lexicographic order, and return how many were visited.  A
visitor may raise to abort the walk.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable, Sequence

__all__ = [
    "AffineMap",
    "units",
    "least_rotation",
    "necklace_of",
    "affine_image",
    "reverse",
    "is_necklace",
    "is_charm",
    "is_bracelet",
    "generate_necklaces",
    "generate_bracelets",
    "generate_charm_bracelets",
    "generate_fixed_content",
    "format_string",
    "parse_string",
    "MODES",
]

MODES = ("necklace", "bracelet", "charm")

Visitor = Callable[[tuple], object]


def units(n: int) -> list[int]:
    """Residues ``1 <= d < n`` coprime to ``n``, ascending (empty for n=1)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return [d for d in range(1, n) if gcd(d, n) == 1]


@dataclass(frozen=True)
class AffineMap:
    """The index map ``j -> shift + multiplier*j (mod n)``.

    Applying it to a string gathers: ``b_j = a_{(shift + multiplier*j) mod n}``.
    """

    shift: int
    multiplier: int

    def __call__(self, alpha: Sequence[int]) -> tuple:
        n = len(alpha)
        if gcd(self.multiplier, n) != 1:
            raise ValueError(f"multiplier {self.multiplier} is not a unit mod {n}")
        return tuple(alpha[(self.shift + self.multiplier * j) % n] for j in range(n))

    def compose(self, other: "AffineMap", n: int) -> "AffineMap":
        """Map equal to applying ``other`` first, then ``self``."""
        # self(other(x))_j = other(x)_{a+dj} = x_{a' + d'(a+dj)}
        return AffineMap(
            (other.shift + other.multiplier * self.shift) % n,
            (other.multiplier * self.multiplier) % n,
        )


def least_rotation(beta: Sequence[int]) -> int:
    """Start index of the lexicographically least rotation of ``beta``.

    Linear-time scan over the doubled string.  For periodic strings the
    smallest such index is returned.
    """
    n = len(beta)
    if n == 0:
        raise ValueError("empty string has no rotations")
    # 1-indexed doubled copy; b[0] is never read
    b = [None]
    b.extend(beta)
    b.extend(beta)
    t = j = p = 1
    while True:
        t += p * ((j - t) // p)
        j = t + 1
        p = 1
        while j <= 2 * n and b[j - p] <= b[j]:
            if b[j - p] < b[j]:
                p = j - t + 1
            j += 1
        if p * ((j - t) // p) >= n:
            return t - 1


def necklace_of(beta: Sequence[int]) -> tuple:
    """The necklace representative (least rotation) of ``beta``."""
    t = least_rotation(beta)
    beta = tuple(beta)
    return beta[t:] + beta[:t]


def affine_image(d: int, alpha: Sequence[int]) -> tuple:
    """Decimate ``alpha`` by the unit ``d``: ``b_j = a_{d*j mod n}``."""
    n = len(alpha)
    if gcd(d, n) != 1:
        raise ValueError(f"{d} is not invertible mod {n}")
    return tuple(alpha[(d * j) % n] for j in range(n))


def reverse(alpha: Sequence[int]) -> tuple:
    return tuple(reversed(alpha))


def is_necklace(alpha: Sequence[int]) -> bool:
    return least_rotation(alpha) == 0


def _rotation_less(beta: Sequence[int], t: int, alpha: Sequence[int]) -> bool:
    # is rotation of beta starting at t strictly less than alpha
    n = len(alpha)
    for i in range(n):
        x = beta[(t + i) % n]
        y = alpha[i]
        if x != y:
            return x < y
    return False


def is_charm(alpha: Sequence[int]) -> bool:
    """True iff the necklace ``alpha`` is least in its charm-bracelet class."""
    assert is_necklace(alpha), "is_charm expects a necklace"
    n = len(alpha)
    for d in units(n):
        if d == 1:
            continue
        beta = tuple(alpha[(d * j) % n] for j in range(n))
        if _rotation_less(beta, least_rotation(beta), alpha):
            return False
    return True


def is_bracelet(alpha: Sequence[int]) -> bool:
    """True iff the necklace ``alpha`` is least among its rotations and reflections."""
    beta = tuple(reversed(alpha))
    return not _rotation_less(beta, least_rotation(beta), alpha)


_MODE_TESTS = {
    "necklace": None,
    "bracelet": is_bracelet,
    "charm": is_charm,
}


def _mode_test(mode: str):
    try:
        return _MODE_TESTS[mode]
    except KeyError:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}") from None


def _walk(n: int, k: int, accept, visitor: Visitor) -> int:
    # FKM prenecklace recursion; a[1..n] holds the string, a[0] = 0
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    a = [0] * (n + 1)
    count = 0

    def gen(t: int, p: int) -> None:
        nonlocal count
        if t > n:
            if n % p == 0:
                s = tuple(a[1:])
                if accept is None or accept(s):
                    visitor(s)
                    count += 1
            return
        for i in range(a[t - p], k):
            a[t] = i
            gen(t + 1, p if i == a[t - p] else t)

    gen(1, 1)
    return count


def generate_necklaces(n: int, k: int, visitor: Visitor) -> int:
    """Visit every k-ary necklace of length n in lexicographic order."""
    return _walk(n, k, None, visitor)


def generate_bracelets(n: int, k: int, visitor: Visitor) -> int:
    return _walk(n, k, is_bracelet, visitor)


def generate_charm_bracelets(n: int, k: int, visitor: Visitor) -> int:
    """Visit every k-ary charm bracelet of length n, O(n^3) amortized each."""
    return _walk(n, k, is_charm, visitor)


def generate_fixed_content(
    n: int,
    content: Sequence[int],
    mode: str,
    visitor: Visitor,
    filter: Callable[[tuple], bool] | None = None,
) -> int:
    """Visit representatives of ``mode`` whose symbol ``i`` occurs ``content[i]`` times.

    The prenecklace recursion is pruned by the remaining symbol budget,
    so only prefixes that can still reach the requested content are
    explored.  ``filter`` runs on each finished representative before it
    is visited; rejected strings are not counted.
    """
    content = [int(c) for c in content]
    if any(c < 0 for c in content):
        raise ValueError(f"negative count in content {content}")
    if sum(content) != n:
        raise ValueError(f"content {content} does not sum to n={n}")
    if n < 1:
        raise ValueError("n must be positive")
    test = _mode_test(mode)
    k = len(content)
    remaining = list(content)
    first = next(i for i, c in enumerate(content) if c > 0)
    a = [0] * (n + 1)
    a[0] = first
    count = 0

    def gen(t: int, p: int) -> None:
        nonlocal count
        if t > n:
            if n % p:
                return
            s = tuple(a[1:])
            if test is not None and not test(s):
                return
            if filter is not None and not filter(s):
                return
            visitor(s)
            count += 1
            return
        # a necklace must open with its smallest symbol
        stop = first + 1 if t == 1 else k
        for i in range(a[t - p], stop):
            if not remaining[i]:
                continue
            a[t] = i
            remaining[i] -= 1
            gen(t + 1, p if i == a[t - p] else t)
            remaining[i] += 1

    gen(1, 1)
    return count


def format_string(s: Iterable[int], k: int) -> str:
    """Digits run together for k <= 10, otherwise comma separated."""
    if k <= 10:
        return "".join(str(x) for x in s)
    return ",".join(str(x) for x in s)


def parse_string(text: str, k: int | None = None) -> tuple:
    """Inverse of :func:`format_string`; pass ``k`` when it may exceed 10."""
    text = text.strip()
    if "," in text or (k is not None and k > 10):
        return tuple(int(x) for x in text.split(","))
    return tuple(int(c) for c in text)
