"""The flip action on trit vectors with a carry coordinate.

States are (a_1, ..., a_n; b) with trits a_i in {-1, 0, 1}. The carry b is an
unbounded integer (modulus 0) or a residue modulo m >= 1. Generator s_0 negates
a_1, s_i (0 < i < n) swaps a_i and a_{i+1}, and s_n negates a_n while adding the
old a_n to b.
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, TypeVar

import config
from affine_flip.affine_core import AffinePermutation, GeneratorWord, inverse, period

State = TypeVar("State", bound=Hashable)


@dataclass(frozen=True, order=True)
class OmegaState:
    trits: Tuple[int, ...]
    b: int
    modulus: int = 0

    def __post_init__(self) -> None:
        trits = tuple(int(a) for a in self.trits)
        if any(a not in (-1, 0, 1) for a in trits):
            raise ValueError(f"Trits must lie in {{-1,0,1}}, got {list(trits)}")
        if self.modulus < 0:
            raise ValueError(f"Modulus must be >= 0, got {self.modulus}")
        object.__setattr__(self, "trits", trits)
        if self.modulus:
            object.__setattr__(self, "b", int(self.b) % self.modulus)

    @property
    def rank(self) -> int:
        return len(self.trits)

    @property
    def zeros(self) -> int:
        return self.trits.count(0)

    def __neg__(self) -> "OmegaState":
        return OmegaState(tuple(-a for a in self.trits), -self.b, self.modulus)

    def reduce(self, modulus: int) -> "OmegaState":
        return OmegaState(self.trits, self.b, modulus)

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self.trits) + f";{self.b})"


@dataclass(frozen=True, order=True)
class SignedClass:
    """Class {x, -x}; the representative is the smaller of the two."""

    representative: OmegaState

    @classmethod
    def of(cls, state: OmegaState) -> "SignedClass":
        return cls(min(state, -state))

    @property
    def is_self_negative(self) -> bool:
        return -self.representative == self.representative

    def members(self) -> Tuple[OmegaState, ...]:
        x = self.representative
        return (x,) if self.is_self_negative else (x, -x)

    def __str__(self) -> str:
        return "±" + str(self.representative)


# ---------------------------------------------------------------------------
# Action


def rho_generator(i: int, x: OmegaState) -> OmegaState:
    n = x.rank
    if not 0 <= i <= n:
        raise ValueError(f"Generator index {i} outside [0,{n}]")
    a = list(x.trits)
    b = x.b
    if i == 0:
        a[0] = -a[0]
    elif i == n:
        b += a[n - 1]
        a[n - 1] = -a[n - 1]
    else:
        a[i - 1], a[i] = a[i], a[i - 1]
    return OmegaState(tuple(a), b, x.modulus)


def rho_word(word: GeneratorWord, x: OmegaState) -> OmegaState:
    """Apply ``word`` right to left, so rho_word(uv, x) = rho_word(u, rho_word(v, x))."""
    if word.rank != x.rank:
        raise ValueError(f"Rank mismatch: word {word.rank} vs state {x.rank}")
    for letter in reversed(word.letters):
        x = rho_generator(letter, x)
    return x


def rho_signed(i: int, cls: SignedClass) -> SignedClass:
    return SignedClass.of(rho_generator(i, cls.representative))


# ---------------------------------------------------------------------------
# Closed form of the orbit map u -> rho(u)(omega_k)


def check_k(n: int, k: int) -> None:
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must satisfy 0 <= k <= {n - 1}, got {k}")


def epsilon(n: int, k: int, t: int) -> int:
    """k-sign of t: 1 on k+1..n, 0 on -k..k, -1 on -n..-(k+1), modulo 2n+1."""
    check_k(n, k)
    r = (t + n) % period(n) - n
    if abs(r) <= k:
        return 0
    return 1 if r > 0 else -1


def upper_sum(n: int, k: int) -> int:
    return (k + n + 1) * (n - k) // 2


def _p_from_inverse(n: int, k: int, inv_values: Sequence[int]) -> int:
    low = sum(epsilon(n, k, value) * value for value in inv_values)
    numerator = upper_sum(n, k) - low
    if numerator % period(n):
        raise ArithmeticError(f"P_{k} numerator {numerator} not divisible by {period(n)}")
    return numerator // period(n)


def P_k(u: AffinePermutation, k: int) -> int:
    check_k(u.rank, k)
    return _p_from_inverse(u.rank, k, inverse(u).window)


def r_k(u: AffinePermutation, k: int, modulus: int = 0) -> OmegaState:
    """Image of omega_k under rho(u), computed from the window of u."""
    n = u.rank
    check_k(n, k)
    inv_values = inverse(u).window
    trits = tuple(epsilon(n, k, value) for value in inv_values)
    return OmegaState(trits, _p_from_inverse(n, k, inv_values), modulus)


def omega_base(n: int, k: int, modulus: int = 0) -> OmegaState:
    check_k(n, k)
    return OmegaState((0,) * k + (1,) * (n - k), 0, modulus)


# ---------------------------------------------------------------------------
# Orbits


def enumerate_orbit(n: int, k: int, m: int, b_window: Optional[int] = None) -> List[OmegaState]:
    """States with exactly k zero trits; b in [0, m) or, for m = 0, in [-b_window, b_window]."""
    check_k(n, k)
    if m < 0:
        raise ValueError(f"Modulus must be >= 0, got {m}")
    if m == 0:
        if b_window is None or b_window < 0:
            raise ValueError("The unbounded variant needs a non-negative b_window")
        carries = range(-b_window, b_window + 1)
    else:
        carries = range(m)
    states = []
    for zero_positions in itertools.combinations(range(n), k):
        free = [i for i in range(n) if i not in zero_positions]
        for signs in itertools.product((-1, 1), repeat=n - k):
            trits = [0] * n
            for position, sign in zip(free, signs):
                trits[position] = sign
            for b in carries:
                states.append(OmegaState(tuple(trits), b, m))
    states.sort()
    logging.debug("Enumerated %d states of Omega(n=%s, k=%s, m=%s)", len(states), n, k, m)
    return states


def signed_quotient(states: Iterable[OmegaState]) -> List[SignedClass]:
    pool = set(states)
    for x in pool:
        if -x not in pool:
            raise ValueError(f"State set is not closed under negation: missing {-x}")
    return sorted({SignedClass.of(x) for x in pool})


def orbit_bfs(
    start: State,
    step: Callable[[int, State], State],
    generators: Sequence[int],
    limit: Optional[int] = None,
) -> Dict[State, Tuple[int, ...]]:
    """Breadth-first orbit with a witness word per state.

    The word (i_1, ..., i_r) of a state y satisfies y = s_{i_1}(...s_{i_r}(start)).
    """
    cap = limit if limit is not None else config.NODE_CAP
    words: Dict[State, Tuple[int, ...]] = {start: ()}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for i in generators:
            image = step(i, state)
            if image in words:
                continue
            words[image] = (i,) + words[state]
            if len(words) > cap:
                raise ValueError(f"Orbit exceeds the node cap of {cap} states")
            queue.append(image)
    return words


@dataclass
class TransitivityReport:
    n: int
    k: int
    m: int
    transitive: bool
    reached: int
    expected: int
    witnesses: Dict[OmegaState, GeneratorWord] = field(default_factory=dict)


def transitivity_check(n: int, k: int, m: int) -> TransitivityReport:
    if m < 1:
        raise ValueError(f"Transitivity is checked on finite quotients, got m={m}")
    start = omega_base(n, k, m)
    words = orbit_bfs(start, rho_generator, range(n + 1))
    expected = set(enumerate_orbit(n, k, m))
    transitive = set(words) == expected
    logging.info("Orbit of %s: reached %d of %d states", start, len(words), len(expected))
    witnesses = {state: GeneratorWord(n, word) for state, word in sorted(words.items())}
    return TransitivityReport(n, k, m, transitive, len(words), len(expected), witnesses)
