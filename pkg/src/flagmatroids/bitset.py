"""Subsets of {0..n-1} encoded as int bit masks."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def size_masks(n: int, k: int) -> list[int]:
    """All k-subsets of {0..n-1} as masks, in lexicographic element order."""
    return [mask_of(c) for c in combinations(range(n), k)]


def submasks(mask: int) -> Iterator[int]:
    """All subsets of mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def set_key(mask: int) -> tuple[int, ...]:
    """Sort key putting masks in lexicographic order of their element lists."""
    return elements_of(mask)


def squeeze(mask: int, removed: int) -> int:
    """Re-index mask after deleting the positions in `removed`.

    mask must be disjoint from removed; surviving elements keep their
    relative order.
    """
    out = 0
    shift = 0
    pos = 0
    rest = mask | removed
    while rest >> pos:
        bit = 1 << pos
        if removed & bit:
            shift += 1
        elif mask & bit:
            out |= 1 << (pos - shift)
        pos += 1
    return out


def unsqueeze(mask: int, removed: int) -> int:
    """Inverse of squeeze: map re-indexed positions back to original ones."""
    out = 0
    orig = 0
    pos = 0
    while mask >> pos:
        while removed & (1 << orig):
            orig += 1
        if mask & (1 << pos):
            out |= 1 << orig
        orig += 1
        pos += 1
    return out
