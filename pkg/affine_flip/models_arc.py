"""Arc permutations with holes and their flip action.

A partial arc permutation of ground size m is a sequence over [m] and a hole
marker (None) whose non-hole suffixes are cyclic intervals of Z_m (the value m
plays the role of 0), with both ends filled and k filled inner positions. The
full case k = m - 2 is an ordinary arc permutation.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from sympy.combinatorics import Permutation

from affine_flip.flip_action import OmegaState

HOLE = None
Entry = Optional[int]


@dataclass(frozen=True)
class PartialArcPermutation:
    m: int
    entries: Tuple[Entry, ...]

    def __post_init__(self) -> None:
        entries = tuple(None if e is None else int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.m:
            raise ValueError(f"Expected {self.m} entries, got {len(entries)}")

    @property
    def rank(self) -> int:
        return self.m - 2

    @property
    def k(self) -> int:
        return sum(1 for e in self.entries[1:-1] if e is not None)

    @property
    def is_full(self) -> bool:
        return all(e is not None for e in self.entries)

    def key(self) -> Tuple[int, ...]:
        return tuple(0 if e is None else e for e in self.entries)

    def __lt__(self, other: "PartialArcPermutation") -> bool:
        return (self.m, self.key()) < (other.m, other.key())

    def __str__(self) -> str:
        return "[" + ",".join("_" if e is None else str(e) for e in self.entries) + "]"


def _display(value: int, m: int) -> int:
    return value % m or m


def is_cyclic_interval(values: Iterable[int], m: int) -> bool:
    residues = {v % m for v in values}
    if len(residues) in (0, m):
        return True
    return sum(1 for v in residues if (v + 1) % m not in residues) == 1


def is_partial_arc(entries: Sequence[Entry], m: int, k: int) -> bool:
    if m < 3 or len(entries) != m or not 0 < k <= m - 2:
        return False
    filled = [e for e in entries if e is not None]
    if any(not isinstance(e, int) or not 1 <= e <= m for e in filled):
        return False
    if len(set(filled)) != len(filled):
        return False
    if entries[0] is None or entries[-1] is None:
        return False
    if sum(1 for e in entries[1:-1] if e is not None) != k:
        return False
    suffix: Set[int] = set()
    for e in reversed(entries):
        if e is None:
            continue
        suffix.add(e % m)
        if not is_cyclic_interval(suffix, m):
            return False
    return entries[0] == forced_first_entry(entries, m, k)


def forced_first_entry(entries: Sequence[Entry], m: int, k: int) -> Optional[int]:
    """Value at position 1 determined by the first filled inner entry and its suffix."""
    inner = [j for j in range(1, m - 1) if entries[j] is not None]
    if not inner:
        return None
    x = entries[inner[0]] % m
    later = {e % m for e in entries[inner[0] + 1:] if e is not None}
    if (x - 1) % m in later:
        return _display(x - k - 1, m)
    if (x + 1) % m in later:
        return _display(x + k + 1, m)
    return None


def _require_arc(pi: PartialArcPermutation) -> None:
    if not is_partial_arc(pi.entries, pi.m, pi.k):
        raise ValueError(f"{pi} is not a partial arc permutation")


# ---------------------------------------------------------------------------
# Action and involution


def rho_A(i: int, pi: PartialArcPermutation) -> PartialArcPermutation:
    """Swap positions i+1 and i+2 when the result stays a partial arc permutation.

    For i >= 1 the swap may move the first filled inner entry past an entry of
    the other direction; position 1 is then reassigned to the value the first
    entry rule forces. Otherwise pi is unchanged.
    """
    _require_arc(pi)
    if not 0 <= i <= pi.rank:
        raise ValueError(f"Generator index {i} outside [0,{pi.rank}]")
    entries = list(pi.entries)
    entries[i], entries[i + 1] = entries[i + 1], entries[i]
    if i > 0 and not is_partial_arc(entries, pi.m, pi.k):
        forced = forced_first_entry(entries, pi.m, pi.k)
        if forced is not None:
            entries[0] = forced
    if is_partial_arc(entries, pi.m, pi.k):
        return PartialArcPermutation(pi.m, tuple(entries))
    return pi


def iota_arc(pi: PartialArcPermutation) -> PartialArcPermutation:
    """x -> m - x on values other than m; holes and m stay put."""
    _require_arc(pi)
    m = pi.m
    return PartialArcPermutation(m, tuple(e if e is None or e == m else m - e for e in pi.entries))


def iota_arc_symmetric(pi: PartialArcPermutation) -> PartialArcPermutation:
    """Full arc permutations only: left multiplication by w0 = [m-1, ..., 1, m]."""
    _require_arc(pi)
    if not pi.is_full:
        raise ValueError(f"{pi} has holes; the symmetric-group form needs a full arc permutation")
    m = pi.m
    w0 = Permutation(list(range(m - 2, -1, -1)) + [m - 1])
    perm = Permutation([e - 1 for e in pi.entries])
    # sympy composes left to right: (perm * w0)(i) = w0(perm(i))
    return PartialArcPermutation(m, tuple(v + 1 for v in (perm * w0).array_form))


# ---------------------------------------------------------------------------
# Encoding into trit states


def phi_arc(pi: PartialArcPermutation) -> OmegaState:
    _require_arc(pi)
    m, n = pi.m, pi.rank
    trits = []
    for i in range(1, n + 1):
        value = pi.entries[i]
        if value is None:
            trits.append(0)
            continue
        later = {e % m for e in pi.entries[i + 1:] if e is not None}
        if (value - 1) % m in later:
            trits.append(1)
        elif (value + 1) % m in later:
            trits.append(-1)
        else:
            raise RuntimeError(f"Entry {value} of {pi} is not adjacent to its suffix")
    return OmegaState(tuple(trits), pi.entries[-1], m)


def phi_arc_inv(x: OmegaState) -> PartialArcPermutation:
    n = x.rank
    m = n + 2
    if x.modulus != m:
        raise ValueError(f"State {x} must carry modulus {m}")
    if x.zeros > n - 1:
        raise ValueError(f"State {x} has no nonzero trit")
    a, b = x.trits, x.b
    entries: List[Entry] = [None] * m
    entries[m - 1] = _display(b, m)
    for position in range(1, n + 1):
        t = a[position - 1]
        if t:
            count = sum(1 for value in a[position - 1:] if value == t)
            entries[position] = _display(b + t * count, m)
    lead = -next(t for t in a if t)
    entries[0] = _display(b + lead * (1 + a.count(lead)), m)
    pi = PartialArcPermutation(m, tuple(entries))
    if not is_partial_arc(pi.entries, m, pi.k):
        raise RuntimeError(f"Reconstruction of {x} produced invalid {pi}")
    return pi


# ---------------------------------------------------------------------------
# Enumeration


def enumerate_arc(m: int, k: int) -> List[PartialArcPermutation]:
    """All partial arc permutations of ground size m with k filled inner positions.

    Built backwards from the last entry by growing a cyclic interval one end at
    a time, independently of the trit encoding.
    """
    if not 0 < k <= m - 2:
        raise ValueError(f"k must satisfy 0 < k <= {m - 2}, got {k}")
    found: Set[Tuple[Entry, ...]] = set()

    def grow(index: int, entries: List[Entry], low: int, size: int, inner: int) -> None:
        if index == 0:
            if inner != k:
                return
            for value in {(low - 1) % m, (low + size) % m}:
                candidate = [_display(value, m)] + entries
                if is_partial_arc(candidate, m, k):
                    found.add(tuple(candidate))
            return
        remaining = index - 1  # inner slots left after this one
        if inner + remaining >= k:
            grow(index - 1, [None] + entries, low, size, inner)
        if inner < k and size < m - 1:
            grow(index - 1, [_display(low - 1, m)] + entries, (low - 1) % m, size + 1, inner + 1)
            if (low + size) % m != (low - 1) % m:
                grow(index - 1, [_display(low + size, m)] + entries, low, size + 1, inner + 1)

    for last in range(1, m + 1):
        grow(m - 2, [last], last % m, 1, 0)
    result = sorted(PartialArcPermutation(m, entries) for entries in found)
    logging.info("Enumerated %d partial arc permutations (m=%s, k=%s)", len(result), m, k)
    return result
