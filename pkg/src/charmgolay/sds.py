"""Supplementary difference sets and equivalence of periodic Golay pairs.

Two pairs are equivalent when one maps to the other by independent
cyclic shifts of A and B, independent reversals of A and B, and a
decimation ``x_i -> x_{k*i mod v}`` applied to both with the same unit
``k``.  Negation and swapping A with B are opt-in via ``extended=True``.
"""
from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from itertools import product
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np

from .combinatorics import least_rotation, units
from .sequences import is_periodic_golay_pair, to_signs

log = logging.getLogger(__name__)

__all__ = [
    "SupplementaryDifferenceSet",
    "PairTransform",
    "difference_counts",
    "verify_sds",
    "sds_to_pair",
    "pair_to_sds",
    "is_periodic_golay_sds",
    "apply_transform",
    "iter_transforms",
    "canonical_form",
    "are_equivalent",
    "parse_listing",
    "load_sds68",
    "read_sds_file",
    "write_sds_file",
    "format_sds",
]

Pair = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class SupplementaryDifferenceSet:
    v: int
    X: tuple[int, ...]
    Y: tuple[int, ...]
    lam: int
    label: str = field(default="", compare=False)

    def __post_init__(self):
        X = tuple(sorted(int(x) for x in self.X))
        Y = tuple(sorted(int(y) for y in self.Y))
        for name, block in (("X", X), ("Y", Y)):
            if len(set(block)) != len(block):
                raise ValueError(f"block {name} has repeated elements")
            if block and not (0 <= block[0] and block[-1] < self.v):
                raise ValueError(f"block {name} is not contained in Z_{self.v}")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def r(self) -> int:
        return len(self.X)

    @property
    def s(self) -> int:
        return len(self.Y)

    @property
    def params(self) -> tuple[int, int, int, int]:
        return self.v, self.r, self.s, self.lam

    def counting_identity_holds(self) -> bool:
        return self.r * (self.r - 1) + self.s * (self.s - 1) == self.lam * (self.v - 1)


def difference_counts(v: int, *blocks: Iterable[int]) -> np.ndarray:
    """``out[g]`` = number of ordered pairs within a block with difference g mod v."""
    out = np.zeros(v, dtype=np.int64)
    for block in blocks:
        block = np.asarray(list(block), dtype=np.int64)
        if block.size:
            diffs = (block[:, None] - block[None, :]) % v
            out += np.bincount(diffs.ravel(), minlength=v)
    return out


def verify_sds(sds: SupplementaryDifferenceSet) -> bool:
    counts = difference_counts(sds.v, sds.X, sds.Y)
    return bool(np.all(counts[1:] == sds.lam))


def is_periodic_golay_sds(sds: SupplementaryDifferenceSet) -> bool:
    return sds.v == 2 * (sds.r + sds.s - sds.lam)


def sds_to_pair(sds: SupplementaryDifferenceSet) -> Pair:
    """-1 on block positions, +1 elsewhere."""
    def seq(block):
        members = set(block)
        return tuple(-1 if j in members else 1 for j in range(sds.v))

    return seq(sds.X), seq(sds.Y)


def pair_to_sds(pair, lam: int | None = None) -> SupplementaryDifferenceSet:
    """Inverse of :func:`sds_to_pair`; ``lam`` defaults to the value forced by counting."""
    a, b = (tuple(int(x) for x in s) for s in pair)
    v = len(a)
    X = tuple(j for j, x in enumerate(a) if x == -1)
    Y = tuple(j for j, y in enumerate(b) if y == -1)
    if lam is None:
        num = len(X) * (len(X) - 1) + len(Y) * (len(Y) - 1)
        if v < 2 or num % (v - 1):
            raise ValueError("block sizes admit no constant difference count")
        lam = num // (v - 1)
    return SupplementaryDifferenceSet(v, X, Y, lam)


@dataclass(frozen=True)
class PairTransform:
    """Decimate both by ``multiplier``, then reverse, then shift each sequence.

    Applied to ``(A, B)``: ``A'_i = A''_{(i + shift_a) mod v}`` where
    ``A''`` is the decimated and optionally reversed A.  ``negate`` and
    ``swap`` belong to the extended group only.
    """

    shift_a: int = 0
    shift_b: int = 0
    reverse_a: bool = False
    reverse_b: bool = False
    multiplier: int = 1
    negate_a: bool = False
    negate_b: bool = False
    swap: bool = False

    def index_maps(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """Source index of each output position, for A and B (ignoring swap)."""
        i = np.arange(v)
        maps = []
        for shift, rev in ((self.shift_a, self.reverse_a), (self.shift_b, self.reverse_b)):
            j = (i + shift) % v
            if rev:
                j = (-j) % v
            maps.append((self.multiplier * j) % v)
        return maps[0], maps[1]


def apply_transform(t: PairTransform, pair) -> Pair:
    a = np.asarray(pair[0], dtype=np.int64)
    b = np.asarray(pair[1], dtype=np.int64)
    v = len(a)
    if gcd(t.multiplier, v) != 1:
        raise ValueError(f"multiplier {t.multiplier} is not a unit mod {v}")
    if t.swap:
        a, b = b, a
    ia, ib = t.index_maps(v)
    a = a[ia] * (-1 if t.negate_a else 1)
    b = b[ib] * (-1 if t.negate_b else 1)
    return tuple(int(x) for x in a), tuple(int(x) for x in b)


def iter_transforms(v: int, extended: bool = False) -> Iterator[PairTransform]:
    """Every element of the transform group at length v (size 4*v*v*phi(v))."""
    ks = units(v) if v > 1 else [1]
    flags = (False, True)
    extra = product(flags, flags, flags) if extended else [(False, False, False)]
    for negate_a, negate_b, swap in extra:
        for k in ks:
            for ra, rb in product(flags, flags):
                for sa in range(v):
                    for sb in range(v):
                        yield PairTransform(sa, sb, ra, rb, k, negate_a, negate_b, swap)


def _bracelet_rep(x: tuple) -> tuple:
    best = None
    for cand in (x, x[::-1]):
        t = least_rotation(cand)
        rot = cand[t:] + cand[:t]
        if best is None or rot < best:
            best = rot
    return best


def canonical_form(pair, extended: bool = False) -> Pair:
    """Least pair in the orbit, comparing A then B with -1 < +1.

    Shifts and reversals act on A and B independently, so for a fixed
    multiplier the least pair is (bracelet of A, bracelet of B); the
    minimum over multipliers (and, if extended, negations and swap)
    finishes the job in O(v * phi(v)) instead of scanning the orbit.
    """
    a = tuple(int(x) for x in pair[0])
    b = tuple(int(x) for x in pair[1])
    v = len(a)
    if len(b) != v:
        raise ValueError("pair members differ in length")
    bases = [(a, b)]
    if extended:
        bases = []
        for x, y in ((a, b), (b, a)):
            for sx, sy in product((1, -1), repeat=2):
                bases.append((tuple(sx * e for e in x), tuple(sy * e for e in y)))
    best = None
    for x, y in bases:
        for k in units(v) if v > 1 else [1]:
            xk = tuple(x[(k * j) % v] for j in range(v))
            yk = tuple(y[(k * j) % v] for j in range(v))
            cand = (_bracelet_rep(xk), _bracelet_rep(yk))
            if best is None or cand < best:
                best = cand
    return best


def are_equivalent(pair1, pair2, extended: bool = False) -> bool:
    if len(pair1[0]) != len(pair2[0]):
        raise ValueError("pairs have different lengths")
    return canonical_form(pair1, extended) == canonical_form(pair2, extended)


def pair_signs(pair) -> tuple[str, str]:
    return to_signs(pair[0]), to_signs(pair[1])


# --- file formats -----------------------------------------------------------

_ENTRY = re.compile(r"(?m)^\s*(\d+)\)")
_TOKEN = re.compile(r"\[|\]|\d+")


def parse_listing(text: str, v: int = 68, lam: int = 26, sizes: Sequence[int] = (31, 29)) -> list[SupplementaryDifferenceSet]:
    """Parse a numbered listing of ``n) [[X...], [Y...]]`` entries.

    Brackets only separate groups of numbers; which group is X and which
    is Y is decided by the expected block sizes, so entries whose
    delimiters are misplaced still parse.
    """
    marks = list(_ENTRY.finditer(text))
    out = []
    for m, nxt in zip(marks, marks[1:] + [None]):
        body = text[m.end(): nxt.start() if nxt else len(text)]
        groups, cur = [], []
        for tok in _TOKEN.findall(body):
            if tok in "[]":
                if cur:
                    groups.append(cur)
                    cur = []
            else:
                cur.append(int(tok))
        if cur:
            groups.append(cur)
        if len(groups) != 2:
            raise ValueError(f"entry {m.group(1)}: expected 2 blocks, found {len(groups)}")
        if sorted(len(g) for g in groups) == sorted(sizes) and sizes[0] != sizes[1]:
            X, Y = sorted(groups, key=lambda g: len(g) != sizes[0])
        else:
            # sizes do not identify the blocks; keep listing order
            log.warning("entry %s: block sizes %s, expected %s", m.group(1), [len(g) for g in groups], list(sizes))
            X, Y = groups
        out.append(SupplementaryDifferenceSet(v, tuple(X), tuple(Y), lam, label=m.group(1)))
    return out


def load_sds68() -> list[SupplementaryDifferenceSet]:
    """The 29 published (68; 31, 29; 26) solutions, in listing order."""
    text = resources.files("charmgolay.data").joinpath("sds68.txt").read_text()
    return parse_listing(text)


def format_sds(sds: SupplementaryDifferenceSet) -> str:
    lines = []
    if sds.label:
        lines.append(f"label: {sds.label}")
    lines += [
        f"v: {sds.v}",
        f"lambda: {sds.lam}",
        "X: " + ",".join(map(str, sds.X)),
        "Y: " + ",".join(map(str, sds.Y)),
    ]
    return "\n".join(lines) + "\n"


def write_sds_file(path, items: Iterable[SupplementaryDifferenceSet]) -> None:
    with open(path, "w") as fh:
        fh.write("\n".join(format_sds(s) for s in items))


def read_sds_file(path) -> list[SupplementaryDifferenceSet]:
    """Records of ``key: value`` lines separated by blank lines; ``#`` starts a comment."""
    with open(path) as fh:
        text = fh.read()
    out = []
    for chunk in re.split(r"\n\s*\n", text):
        rec = {}
        for line in chunk.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition(":")
            if not sep:
                raise ValueError(f"malformed line {line!r}")
            rec[key.strip().lower()] = value.strip()
        if not rec:
            continue
        missing = {"v", "lambda", "x", "y"} - rec.keys()
        if missing:
            raise ValueError(f"SDS record missing fields {sorted(missing)}")

        def block(s):
            return tuple(int(x) for x in s.replace(" ", "").split(",") if x)

        out.append(SupplementaryDifferenceSet(
            int(rec["v"]), block(rec["x"]), block(rec["y"]), int(rec["lambda"]), label=rec.get("label", ""),
        ))
    return out


def multiset_of_differences(v: int, block: Iterable[int]) -> Counter:
    """Difference multiset of one block, for debugging and reports."""
    block = list(block)
    return Counter((x - y) % v for x in block for y in block if x != y)
