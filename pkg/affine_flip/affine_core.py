"""Affine permutations of type C in window notation.

An element u is an odd, (2n+1)-periodic bijection of the integers:
u(-t) = -u(t) and u(t + 2n + 1) = u(t) + 2n + 1. It is determined by its
window [u(1), ..., u(n)]. Products follow (u*v)(t) = u(v(t)) everywhere.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import config

SPECIAL_NAMES = ("c", "g", "h", "x", "e", "v")


def period(n: int) -> int:
    return 2 * n + 1


def exponent(n: int, m: int) -> int:
    """Return b with m - (2n+1)b in [-n, n]."""
    return (m + n) // period(n)


def residue(n: int, m: int) -> int:
    """Return the representative of m modulo 2n+1 in [-n, n]."""
    return m - period(n) * exponent(n, m)


def _checked(value: int) -> int:
    if abs(value) > config.WINDOW_LIMIT:
        raise OverflowError(f"Window value {value} exceeds the arithmetic guard")
    return value


@dataclass(frozen=True)
class StarValue:
    """The integer a^{*b} = a + (2n+1)b with base a in [-n, n] \\ {0}."""

    rank: int
    base: int
    exponent: int

    def __post_init__(self) -> None:
        if self.base == 0 or abs(self.base) > self.rank:
            raise ValueError(f"Star base {self.base} outside [-{self.rank},{self.rank}]\\{{0}}")

    def to_int(self) -> int:
        return _checked(self.base + period(self.rank) * self.exponent)

    @classmethod
    def from_int(cls, n: int, value: int) -> "StarValue":
        b = exponent(n, value)
        return cls(rank=n, base=value - period(n) * b, exponent=b)


@dataclass(frozen=True)
class AffinePermutation:
    rank: int
    window: Tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.rank
        if n < 2:
            raise ValueError(f"Rank must be at least 2, got {n}")
        window = tuple(int(value) for value in self.window)
        object.__setattr__(self, "window", window)
        if len(window) != n:
            raise ValueError(f"Window {list(window)} has length {len(window)}, expected {n}")
        seen = set()
        for value in window:
            _checked(value)
            r = residue(n, value)
            if r == 0:
                raise ValueError(f"Window entry {value} is divisible by {period(n)}")
            if abs(r) in seen:
                raise ValueError(f"Window {list(window)} repeats class ±{abs(r)} mod {period(n)}")
            seen.add(abs(r))

    def __call__(self, t: int) -> int:
        return apply(self, t)

    def __mul__(self, other: "AffinePermutation") -> "AffinePermutation":
        return compose(self, other)

    def inverse(self) -> "AffinePermutation":
        return inverse(self)

    def __str__(self) -> str:
        return "[" + ",".join(str(value) for value in self.window) + "]"


@dataclass(frozen=True)
class GeneratorWord:
    """A word s_{l1} s_{l2} ... in the Coxeter generators of rank n."""

    rank: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        letters = tuple(int(letter) for letter in self.letters)
        object.__setattr__(self, "letters", letters)
        for letter in letters:
            if not 0 <= letter <= self.rank:
                raise ValueError(f"Generator index {letter} outside [0,{self.rank}]")

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        if other.rank != self.rank:
            raise ValueError(f"Rank mismatch: {self.rank} vs {other.rank}")
        return GeneratorWord(self.rank, self.letters + other.letters)

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters)


# ---------------------------------------------------------------------------
# Group law


def identity(n: int) -> AffinePermutation:
    return AffinePermutation(n, tuple(range(1, n + 1)))


def generator(n: int, i: int) -> AffinePermutation:
    if n < 2:
        raise ValueError(f"Rank must be at least 2, got {n}")
    if not 0 <= i <= n:
        raise ValueError(f"Generator index {i} outside [0,{n}]")
    window = list(range(1, n + 1))
    if i == 0:
        window[0] = -1
    elif i == n:
        window[n - 1] = n + 1
    else:
        window[i - 1], window[i] = window[i], window[i - 1]
    return AffinePermutation(n, tuple(window))


def apply(u: AffinePermutation, t: int) -> int:
    n = u.rank
    b = exponent(n, t)
    a = t - period(n) * b
    if a == 0:
        value = 0
    elif a > 0:
        value = u.window[a - 1]
    else:
        value = -u.window[-a - 1]
    return _checked(value + period(n) * b)


def compose(u: AffinePermutation, v: AffinePermutation) -> AffinePermutation:
    if u.rank != v.rank:
        raise ValueError(f"Rank mismatch: {u.rank} vs {v.rank}")
    return AffinePermutation(u.rank, tuple(apply(u, value) for value in v.window))


def inverse(u: AffinePermutation) -> AffinePermutation:
    n = u.rank
    window = [0] * n
    for i, value in enumerate(u.window, start=1):
        b = exponent(n, value)
        a = value - period(n) * b
        # u(i) = a + Nb, so u^{-1}(a) = i - Nb
        if a > 0:
            window[a - 1] = i - period(n) * b
        else:
            window[-a - 1] = -(i - period(n) * b)
    return AffinePermutation(n, tuple(window))


def evaluate_word(word: GeneratorWord) -> AffinePermutation:
    """Left-to-right product of the generators in ``word``."""
    result = identity(word.rank)
    for letter in word.letters:
        result = compose(result, generator(word.rank, letter))
    return result


def power(u: AffinePermutation, exponent_: int) -> AffinePermutation:
    base = u if exponent_ >= 0 else inverse(u)
    result = identity(u.rank)
    for _ in range(abs(exponent_)):
        result = compose(result, base)
    return result


def is_involution(u: AffinePermutation) -> bool:
    return compose(u, u) == identity(u.rank)


# ---------------------------------------------------------------------------
# Named elements


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def special_element(n: int, name: str, param: Optional[int] = None) -> AffinePermutation:
    """Window of c, g(k), h(k), x(i), e(i) or v at rank n."""
    if name not in SPECIAL_NAMES:
        raise ValueError(f"Unknown special element '{name}'")
    N = period(n)
    if name == "c":
        return AffinePermutation(n, tuple(range(2, n + 1)) + (1 + N,))
    if name == "v":
        return AffinePermutation(n, tuple(-i for i in range(1, n + 1)))
    if param is None:
        raise ValueError(f"Special element '{name}' needs a parameter")
    window = list(range(1, n + 1))
    if name == "g":
        k = param
        _require(0 <= k <= n - 2, f"g(k) needs 0 <= k <= {n - 2}, got {k}")
        window = list(range(1, k + 1)) + [n - N] + list(range(k + 2, n)) + [k + 1 + N]
    elif name == "h":
        k = param
        _require(1 <= k <= n - 1, f"h(k) needs 1 <= k <= {n - 1}, got {k}")
        window[k - 1] = -k + N
    elif name in ("x", "e"):
        i = param
        _require(1 <= i <= n, f"{name}(i) needs 1 <= i <= {n}, got {i}")
        window[i - 1] = i + N if name == "x" else -i
    return AffinePermutation(n, tuple(window))


def word_for(n: int, name: str, param: Optional[int] = None) -> GeneratorWord:
    """Coxeter word whose product is ``special_element(n, name, param)``."""
    c_word = list(range(0, n + 1))
    if name == "c":
        letters = c_word
    elif name == "g":
        k = param
        middle = list(range(1, k + 1)) + [k + 1] + list(range(k, 0, -1))
        letters = c_word[::-1] + middle + c_word
    elif name == "h":
        k = param
        letters = list(range(k, n)) + [n] + list(range(n - 1, k - 1, -1))
    elif name == "e":
        letters = _e_letters(param)
    elif name == "x":
        i = param
        letters = _e_letters(i) + list(range(i, n)) + [n] + list(range(n - 1, i - 1, -1))
    elif name == "v":
        letters = [letter for i in range(1, n + 1) for letter in _e_letters(i)]
    else:
        raise ValueError(f"Unknown special element '{name}'")
    return GeneratorWord(n, tuple(letters))


def _e_letters(i: int) -> List[int]:
    return list(range(i - 1, 0, -1)) + [0] + list(range(1, i))


def translation(n: int, shifts: Sequence[int]) -> AffinePermutation:
    """x_1^{c_1} ... x_n^{c_n}, window [1^{*c_1}, ..., n^{*c_n}]."""
    if len(shifts) != n:
        raise ValueError(f"Expected {n} shifts, got {len(shifts)}")
    return AffinePermutation(n, tuple(i + period(n) * c for i, c in enumerate(shifts, start=1)))


def is_translation(u: AffinePermutation) -> bool:
    return all(residue(u.rank, value) == i for i, value in enumerate(u.window, start=1))


# ---------------------------------------------------------------------------
# Parity and relations


def parity(u: AffinePermutation) -> int:
    return sum(exponent(u.rank, value) for value in u.window) % 2


def is_in_B_subgroup(u: AffinePermutation) -> bool:
    return parity(u) == 0


def coxeter_relations(n: int) -> List[Tuple[str, GeneratorWord]]:
    """Defining relators of the type C affine Coxeter group at rank n."""
    relations: List[Tuple[str, GeneratorWord]] = []
    for i in range(n + 1):
        relations.append((f"s{i}^2", GeneratorWord(n, (i, i))))
    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            relations.append((f"(s{i}s{j})^2", GeneratorWord(n, (i, j) * 2)))
    for i in range(1, n - 1):
        relations.append((f"(s{i}s{i + 1})^3", GeneratorWord(n, (i, i + 1) * 3)))
    relations.append(("(s0s1)^4", GeneratorWord(n, (0, 1) * 4)))
    relations.append((f"(s{n - 1}s{n})^4", GeneratorWord(n, (n - 1, n) * 4)))
    return relations


def random_word(n: int, length: int, rng: random.Random) -> GeneratorWord:
    return GeneratorWord(n, tuple(rng.randint(0, n) for _ in range(length)))
