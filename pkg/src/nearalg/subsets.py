"""Element subsets as Python int bitmasks (bit i set iff element i is present)."""

from __future__ import annotations

from typing import Iterable, Union

import numpy as np

SubsetLike = Union[int, Iterable[int]]


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << int(e)
    return m


def as_mask(s: SubsetLike) -> int:
    if isinstance(s, (int, np.integer)):
        return int(s)
    return mask_of(s)


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        out.append(i)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def to_bool(mask: int, n: int) -> np.ndarray:
    raw = mask.to_bytes((n + 7) // 8 or 1, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)


def from_bool(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(np.asarray(arr, dtype=bool), bitorder="little").tobytes(), "little")
