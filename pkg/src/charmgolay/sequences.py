"""Periodic autocorrelation, power spectral density and compression.

``paf`` and ``psd`` accept a single sequence or a 2-D array of sequences
(one per row) and work along the last axis.  PAF is exact integer
arithmetic; PSD is a direct DFT in double precision.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

__all__ = [
    "paf",
    "psd",
    "dft_matrix",
    "is_golay_pair",
    "is_periodic_golay_pair",
    "compress",
    "is_golay_number",
    "psd_tolerance",
    "to_signs",
    "from_signs",
    "format_ternary",
    "parse_ternary",
    "parse_sequence",
]


def paf(a) -> np.ndarray:
    """``out[..., s] = sum_i a[i] * a[(i + s) % v]``."""
    a = np.asarray(a, dtype=np.int64)
    v = a.shape[-1]
    return np.stack([(a * np.roll(a, -s, axis=-1)).sum(axis=-1) for s in range(v)], axis=-1)


@lru_cache(maxsize=32)
def dft_matrix(v: int) -> np.ndarray:
    """``W[k, s] = exp(2*pi*i*k*s / v)``."""
    ks = np.arange(v)
    return np.exp(2j * np.pi * np.outer(ks, ks) / v)


def psd(a) -> np.ndarray:
    """``out[..., s] = |sum_k a[k] w**(k*s)|**2`` with ``w = exp(2*pi*i/v)``."""
    a = np.asarray(a, dtype=np.float64)
    spectrum = a @ dft_matrix(a.shape[-1])
    return spectrum.real ** 2 + spectrum.imag ** 2


def psd_tolerance(v: int, tol: float = 1e-6) -> float:
    """Absolute slack for PSD comparisons at length v."""
    return tol * v


def _check_pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"sequences must be 1-D of equal length, got {a.shape} and {b.shape}")
    return a, b


def is_golay_pair(a, b) -> bool:
    """Aperiodic autocorrelations of ``a`` and ``b`` cancel at every nonzero shift."""
    a, b = _check_pair(a, b)
    v = len(a)
    for k in range(1, v):
        if int(a[: v - k] @ a[k:] + b[: v - k] @ b[k:]) != 0:
            return False
    return True


def is_periodic_golay_pair(a, b) -> bool:
    a, b = _check_pair(a, b)
    return bool(np.all((paf(a) + paf(b))[1:] == 0))


def compress(a, m: int) -> np.ndarray:
    """m-compression: ``out[i] = sum_j a[i + j*d]`` with ``d = v // m``."""
    a = np.asarray(a, dtype=np.int64)
    v = a.shape[-1]
    if m < 1 or v % m:
        raise ValueError(f"compression factor {m} does not divide length {v}")
    d = v // m
    return a.reshape(a.shape[:-1] + (m, d)).sum(axis=-2)


def is_golay_number(v: int) -> bool:
    """True iff ``v = 2**a * 10**b * 26**c``."""
    if v < 1:
        raise ValueError(f"v must be positive, got {v}")
    # 10 and 26 each carry one factor of 2, so strip 5s and 13s first
    fives = thirteens = 0
    while v % 5 == 0:
        v //= 5
        fives += 1
    while v % 13 == 0:
        v //= 13
        thirteens += 1
    while v % 2 == 0 and (fives or thirteens):
        v //= 2
        if fives:
            fives -= 1
        else:
            thirteens -= 1
    if fives or thirteens:
        return False
    return v & (v - 1) == 0


_SIGN = {"+": 1, "-": -1, "−": -1}


def from_signs(text: str) -> np.ndarray:
    """Parse ``+``/``-`` notation (also accepts U+2212) into a +-1 array."""
    text = "".join(text.split())
    try:
        return np.array([_SIGN[c] for c in text], dtype=np.int64)
    except KeyError as exc:
        raise ValueError(f"unexpected character {exc.args[0]!r} in sign sequence") from None


def to_signs(a: Sequence[int]) -> str:
    out = []
    for x in a:
        if x == 1:
            out.append("+")
        elif x == -1:
            out.append("-")
        else:
            raise ValueError(f"not a binary entry: {x}")
    return "".join(out)


def format_ternary(a: Sequence[int]) -> str:
    return ",".join(str(int(x)) for x in a)


def parse_ternary(text: str) -> np.ndarray:
    text = text.strip().strip("[]")
    return np.array([int(x) for x in text.replace(" ", "").split(",") if x], dtype=np.int64)


def parse_sequence(text: str) -> np.ndarray:
    """Sign notation if the text is only ``+``/``-``, otherwise comma-separated ints."""
    stripped = "".join(text.split())
    if stripped and set(stripped) <= set(_SIGN):
        return from_signs(stripped)
    return parse_ternary(text)
