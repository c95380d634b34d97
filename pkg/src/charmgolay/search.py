"""Compression-based search for periodic Golay pairs.

Stage 1 writes PSD-filtered compressed candidates to disk: charm
bracelets for A, bracelets for B, both with fixed content over the
alphabet ``{0, +2, -2}``.  Stage 2 joins the two candidate files on
complementary PAF profiles.  Stage 3 lifts each matching compressed pair
back to +-1 sequences of full length and keeps the verified pairs.
Only 2-compression is supported by the lift.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from math import isqrt
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .combinatorics import generate_fixed_content
from .sds import canonical_form
from .sequences import (
    dft_matrix,
    format_ternary,
    is_periodic_golay_pair,
    paf,
    psd,
    psd_tolerance,
    to_signs,
)

log = logging.getLogger(__name__)

__all__ = [
    "TERNARY",
    "SearchConfig",
    "CandidateRecord",
    "StageLimitExceeded",
    "LiftTooLarge",
    "row_sum_splits",
    "signed_row_sum_splits",
    "content_from",
    "zero_splits",
    "stage1_candidates",
    "read_candidates",
    "stage2_match",
    "lift_candidates",
    "stage3_lift",
    "run_search",
    "SearchReport",
]

# generation symbol i stands for TERNARY[i]; order 0 < +2 < -2
TERNARY = (0, 2, -2)


class StageLimitExceeded(RuntimeError):
    pass


class LiftTooLarge(ValueError):
    pass


@dataclass
class SearchConfig:
    v: int
    m: int = 2
    split: tuple[int, int] | None = None
    zeros: tuple[int, int] | None = None
    tol: float = 1e-6
    max_candidates: int = 10**7
    lift_cap: int = 26
    candidate_dir: str | None = None
    normalized_splits: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.v < 1:
            raise ValueError(f"v must be positive, got {self.v}")
        if self.m != 2:
            raise ValueError("only 2-compression is supported by the lift stage")
        if self.v % self.m:
            raise ValueError(f"compression factor {self.m} does not divide v={self.v}")
        if self.split is not None:
            a, b = self.split = tuple(self.split)
            if a * a + b * b != 2 * self.v:
                raise ValueError(f"row sums {self.split} violate a^2 + b^2 = 2v = {2 * self.v}")
        if self.zeros is not None:
            za, zb = self.zeros = tuple(self.zeros)
            if za < 0 or zb < 0 or za + zb != self.d:
                raise ValueError(f"zero split {self.zeros} must be nonnegative and sum to {self.d}")

    @property
    def d(self) -> int:
        return self.v // self.m

    @property
    def psd_bound(self) -> float:
        return 2 * self.v + psd_tolerance(self.v, self.tol)

    @classmethod
    def from_mapping(cls, data: dict) -> "SearchConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class CandidateRecord:
    sequence: tuple[int, ...]
    paf: tuple[int, ...]
    psd_max: float

    def to_line(self) -> str:
        return f"{format_ternary(self.sequence)}\t{','.join(map(str, self.paf))}\t{self.psd_max:.9g}\n"

    @classmethod
    def from_line(cls, line: str) -> "CandidateRecord":
        seq, prof, pmax = line.rstrip("\n").split("\t")
        return cls(
            tuple(int(x) for x in seq.split(",")),
            tuple(int(x) for x in prof.split(",")),
            float(pmax),
        )


def row_sum_splits(v: int) -> list[tuple[int, int]]:
    """All ``0 <= a <= b`` with ``a*a + b*b == 2*v``."""
    if v < 1:
        raise ValueError(f"v must be positive, got {v}")
    out = []
    for a in range(isqrt(v) + 1):
        rest = 2 * v - a * a
        b = isqrt(rest)
        if b * b == rest and a <= b:
            out.append((a, b))
    return out


def signed_row_sum_splits(v: int) -> list[tuple[int, int]]:
    """Every ordered, signed ``(a, b)`` with ``a*a + b*b == 2*v``, sorted."""
    out = set()
    for a, b in row_sum_splits(v):
        for x, y in ((a, b), (b, a)):
            for sx in (1, -1):
                for sy in (1, -1):
                    out.add((sx * x, sy * y))
    return sorted(out)


def content_from(d: int, z: int, rowsum: int) -> tuple[int, int, int] | None:
    """Content ``(zeros, #(+2), #(-2))`` of a compressed sequence, or None if infeasible."""
    if not 0 <= z <= d:
        raise ValueError(f"zero count {z} outside [0, {d}]")
    if rowsum % 2:
        return None
    diff = rowsum // 2
    total = d - z
    if (total + diff) % 2:
        return None
    p = (total + diff) // 2
    q = total - p
    if p < 0 or q < 0:
        return None
    return (z, p, q)


def zero_splits(d: int, a: int, b: int) -> list[tuple[int, int]]:
    """Feasible ``(z_A, z_B)`` with ``z_A + z_B == d`` for row sums a, b."""
    return [
        (za, d - za)
        for za in range(d + 1)
        if content_from(d, za, a) is not None and content_from(d, d - za, b) is not None
    ]


def _psd_filter(bound: float):
    def accept(seq: Sequence[int]) -> bool:
        return float(psd(seq).max()) <= bound

    return accept


def stage1_candidates(config: SearchConfig, side: str, content: Sequence[int], path) -> dict:
    """Generate, filter and persist one side's compressed candidates.

    Side ``"A"`` uses charm bracelets, side ``"B"`` bracelets.  Raises
    :class:`StageLimitExceeded` once more than ``config.max_candidates``
    records would be written; records written so far stay on disk.
    """
    if side not in ("A", "B"):
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    mode = "charm" if side == "A" else "bracelet"
    bound = config.psd_bound
    stats = {"generated": 0, "psd_discarded": 0, "written": 0}

    def keep(symbols: tuple) -> bool:
        stats["generated"] += 1
        seq = np.array([TERNARY[i] for i in symbols], dtype=np.int64)
        spectrum = psd(seq)
        if float(spectrum.max()) > bound:
            stats["psd_discarded"] += 1
            return False
        keep.last = (seq, spectrum)
        return True

    with open(path, "w") as fh:

        def visit(symbols: tuple) -> None:
            if stats["written"] >= config.max_candidates:
                raise StageLimitExceeded(
                    f"side {side}: more than {config.max_candidates} candidates for content "
                    f"{tuple(content)} at d={config.d}; output {path} truncated"
                )
            seq, spectrum = keep.last
            rec = CandidateRecord(tuple(int(x) for x in seq), tuple(int(x) for x in paf(seq)), float(spectrum.max()))
            fh.write(rec.to_line())
            stats["written"] += 1

        generate_fixed_content(config.d, content, mode, visit, filter=keep)
    return stats


def read_candidates(path) -> Iterator[CandidateRecord]:
    with open(path) as fh:
        for line in fh:
            if line.strip():
                yield CandidateRecord.from_line(line)


def stage2_match(file_a, file_b, v: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield compressed pairs whose PAFs cancel off zero and sum to 2v at zero.

    B records are indexed by their negated off-peak PAF so each A record
    is matched by a single lookup.
    """
    index: dict[tuple, list] = defaultdict(list)
    for rec in read_candidates(file_b):
        index[tuple(-x for x in rec.paf[1:])].append(rec)
    for rec in read_candidates(file_a):
        for other in index.get(tuple(rec.paf[1:]), ()):
            if rec.paf[0] + other.paf[0] == 2 * v:
                yield rec.sequence, other.sequence


def lift_candidates(compressed: Sequence[int], v: int, bound: float, chunk: int = 1 << 15) -> np.ndarray:
    """All +-1 lifts of a 2-compressed sequence whose PSD stays within ``bound``.

    +2 lifts to (+1, +1), -2 to (-1, -1) at positions (i, i + d); each 0
    lifts to either (+1, -1) or (-1, +1).  Returns one lift per row.
    """
    c = np.asarray(compressed, dtype=np.int64)
    d = len(c)
    if 2 * d != v:
        raise ValueError(f"compressed length {d} is not v/2 for v={v}")
    if not np.all(np.isin(c, TERNARY)):
        raise ValueError("compressed entries must lie in {0, 2, -2}")
    base = np.empty(v, dtype=np.int8)
    base[:d] = c // 2
    base[d:] = c // 2
    free = np.nonzero(c == 0)[0]
    z = len(free)
    W = dft_matrix(v)
    keep = []
    total = 1 << z
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = ((codes[:, None] >> np.arange(z)) & 1).astype(np.int8)
        signs = 1 - 2 * bits
        rows = np.repeat(base[None, :], len(codes), axis=0)
        rows[:, free] = signs
        rows[:, free + d] = -signs
        spec = rows.astype(np.float64) @ W
        power = spec.real ** 2 + spec.imag ** 2
        keep.append(rows[power.max(axis=1) <= bound])
    return np.concatenate(keep) if keep else np.empty((0, v), dtype=np.int8)


def stage3_lift(a_c: Sequence[int], b_c: Sequence[int], v: int, tol: float = 1e-6, lift_cap: int = 26):
    """Full-length periodic Golay pairs whose 2-compressions are ``(a_c, b_c)``.

    Returns ``(pairs, stats)``; pairs are sorted tuples of +-1 tuples.
    """
    za = sum(1 for x in a_c if x == 0)
    zb = sum(1 for x in b_c if x == 0)
    if max(za, zb) > lift_cap:
        raise LiftTooLarge(
            f"lifting needs 2^{za} + 2^{zb} candidates (about {(2**za + 2**zb):.3g}); cap is 2^{lift_cap}"
        )
    bound = 2 * v + psd_tolerance(v, tol)
    lifts_a = lift_candidates(a_c, v, bound)
    lifts_b = lift_candidates(b_c, v, bound)
    stats = {
        "lifts": 2**za + 2**zb,
        "lift_survivors": len(lifts_a) + len(lifts_b),
    }
    index: dict[bytes, list[int]] = defaultdict(list)
    paf_b = paf(lifts_b) if len(lifts_b) else np.empty((0, v), dtype=np.int64)
    for row, prof in enumerate(paf_b):
        index[(-prof[1:]).tobytes()].append(row)
    pairs = set()
    paf_a = paf(lifts_a) if len(lifts_a) else np.empty((0, v), dtype=np.int64)
    for row, prof in enumerate(paf_a):
        for other in index.get(prof[1:].tobytes(), ()):
            a = lifts_a[row]
            b = lifts_b[other]
            if is_periodic_golay_pair(a, b):
                pairs.add((tuple(int(x) for x in a), tuple(int(x) for x in b)))
    stats["verified"] = len(pairs)
    return sorted(pairs), stats


@dataclass
class SearchReport:
    v: int
    m: int
    pairs: list = field(default_factory=list)
    splits: list = field(default_factory=list)
    totals: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "v": self.v,
            "m": self.m,
            "pairs_found": len(self.pairs),
            "pairs": [{"A": to_signs(a), "B": to_signs(b)} for a, b in self.pairs],
            "totals": self.totals,
            "splits": self.splits,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


_COUNTERS = ("generated", "psd_discarded", "written", "matched", "lifts", "lift_survivors", "verified")


def _run_split(config: SearchConfig, a: int, b: int, za: int, zb: int, workdir: str) -> dict:
    content_a = content_from(config.d, za, a)
    content_b = content_from(config.d, zb, b)
    tag = f"v{config.v}_a{a}_b{b}_za{za}_zb{zb}"
    file_a = os.path.join(workdir, f"{tag}_A.cand")
    file_b = os.path.join(workdir, f"{tag}_B.cand")
    sa = stage1_candidates(config, "A", content_a, file_a)
    sb = stage1_candidates(config, "B", content_b, file_b)
    counters = dict.fromkeys(_COUNTERS, 0)
    for key in ("generated", "psd_discarded", "written"):
        counters[key] = sa[key] + sb[key]
    pairs = set()
    for a_c, b_c in stage2_match(file_a, file_b, config.v):
        counters["matched"] += 1
        found, st = stage3_lift(a_c, b_c, config.v, config.tol, config.lift_cap)
        counters["lifts"] += st["lifts"]
        counters["lift_survivors"] += st["lift_survivors"]
        counters["verified"] += st["verified"]
        pairs.update(found)
    return {
        "split": [a, b],
        "zeros": [za, zb],
        "content_A": list(content_a),
        "content_B": list(content_b),
        "counters": counters,
        "pairs": sorted(pairs),
    }


def run_search(config: SearchConfig) -> SearchReport:
    """Run all three stages over every feasible row-sum and zero split.

    Found pairs are deduplicated by canonical form and reported in
    sorted order, so the report does not depend on ``config.threads``.
    """
    start = time.perf_counter()
    if config.split is not None:
        splits = [config.split]
    elif config.normalized_splits:
        splits = row_sum_splits(config.v)
    else:
        splits = signed_row_sum_splits(config.v)
    tasks = []
    for a, b in splits:
        zs = zero_splits(config.d, a, b)
        if config.zeros is not None:
            zs = [z for z in zs if z == config.zeros]
        tasks.extend((a, b, za, zb) for za, zb in zs)

    with tempfile.TemporaryDirectory() as scratch:
        workdir = config.candidate_dir or scratch
        Path(workdir).mkdir(parents=True, exist_ok=True)
        if config.threads > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(config.threads) as pool:
                futures = [pool.submit(_run_split, config, *t, workdir) for t in tasks]
                results = [f.result() for f in futures]
        else:
            results = []
            for t in tasks:
                log.info("split a=%d b=%d zeros=(%d, %d)", *t)
                results.append(_run_split(config, *t, workdir))

    canon = {}
    totals = dict.fromkeys(_COUNTERS, 0)
    for res in results:
        for key in _COUNTERS:
            totals[key] += res["counters"][key]
        for pair in res.pop("pairs"):
            canon.setdefault(canonical_form(pair), pair)
    pairs = sorted(canon)
    totals["distinct_classes"] = len(pairs)
    return SearchReport(config.v, config.m, pairs, results, totals, time.perf_counter() - start)
