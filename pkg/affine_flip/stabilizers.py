"""Stabilizers of the base states, their double covers and coset representatives.

H_k fixes omega_k, K_k = <H_k, v> fixes the signed class of omega_k, and
M_k = K_k ∩ G1 where G1 is the index 2 subgroup of elements with even
exponent sum. Representatives are involutions, one per signed class.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

import config
from affine_flip.affine_core import (
    AffinePermutation,
    GeneratorWord,
    evaluate_word,
    exponent,
    generator,
    inverse,
    is_in_B_subgroup,
    is_involution,
    period,
    special_element,
)
from affine_flip.flip_action import (
    SignedClass,
    check_k,
    enumerate_orbit,
    epsilon,
    omega_base,
    r_k,
    signed_quotient,
)


@dataclass(frozen=True)
class StabilizerSpec:
    n: int
    k: int
    names: Tuple[str, ...]
    generators: Tuple[AffinePermutation, ...]

    def __post_init__(self) -> None:
        base = omega_base(self.n, self.k)
        for name, element in zip(self.names, self.generators):
            if r_k(element, self.k) != base:
                raise RuntimeError(f"Generator {name}={element} does not fix {base}")


def stabilizer_generators(n: int, k: int) -> StabilizerSpec:
    """Generators s_0..s_{k-1}, h_k, g_k, s_{k+1}..s_{n-1} of H_k."""
    check_k(n, k)
    named: List[Tuple[str, AffinePermutation]] = [(f"s{i}", generator(n, i)) for i in range(k)]
    if k >= 1:
        named.append((f"h{k}", special_element(n, "h", k)))
    if k <= n - 2:
        named.append((f"g{k}", special_element(n, "g", k)))
    named.extend((f"s{i}", generator(n, i)) for i in range(k + 1, n))
    return StabilizerSpec(n, k, tuple(name for name, _ in named), tuple(g for _, g in named))


def is_in_Hk(u: AffinePermutation, k: int) -> bool:
    """Sign pattern of u^{-1}(1..n) is (0^k, 1^{n-k}) and the upper exponents cancel."""
    n = u.rank
    check_k(n, k)
    inv = inverse(u).window
    for i, value in enumerate(inv, start=1):
        if epsilon(n, k, value) != (0 if i <= k else 1):
            return False
    return sum(exponent(n, value) for value in inv[k:]) == 0


def split_LU(u: AffinePermutation, k: int) -> Tuple[AffinePermutation, AffinePermutation]:
    """Factor u in H_k as the commuting product of its lower and upper parts."""
    if not is_in_Hk(u, k):
        raise ValueError(f"{u} does not stabilize omega_{k}")
    n = u.rank
    lower = tuple(u.window[i - 1] if i <= k else i for i in range(1, n + 1))
    upper = tuple(i if i <= k else u.window[i - 1] for i in range(1, n + 1))
    return AffinePermutation(n, lower), AffinePermutation(n, upper)


def is_in_Kk(u: AffinePermutation, k: int) -> bool:
    base = omega_base(u.rank, k)
    return r_k(u, k) in (base, -base)


def is_in_Mk(u: AffinePermutation, k: int) -> bool:
    return is_in_Kk(u, k) and is_in_B_subgroup(u)


def B_subgroup_words(n: int) -> List[GeneratorWord]:
    if n < 2:
        raise ValueError(f"Rank must be at least 2, got {n}")
    return [GeneratorWord(n, (i,)) for i in range(n)] + [GeneratorWord(n, (n, n - 1, n))]


def B_subgroup_generators(n: int) -> List[AffinePermutation]:
    """s_0, ..., s_{n-1} and s_n s_{n-1} s_n."""
    return [evaluate_word(word) for word in B_subgroup_words(n)]


# ---------------------------------------------------------------------------
# Transversal


@dataclass(frozen=True)
class TauInvolution:
    """(i_1 j_1)...(i_t j_t) with i's increasing in [1,k] and j's increasing in [k+1,n]."""

    n: int
    k: int
    pairs: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        pairs = tuple((int(i), int(j)) for i, j in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        lows = [i for i, _ in pairs]
        highs = [j for _, j in pairs]
        if lows != sorted(set(lows)) or highs != sorted(set(highs)):
            raise ValueError(f"Pairs {pairs} are not strictly increasing")
        if any(not 1 <= i <= self.k for i in lows) or any(not self.k < j <= self.n for j in highs):
            raise ValueError(f"Pairs {pairs} do not cross the cut at k={self.k}")

    @classmethod
    def from_subset(cls, n: int, k: int, subset: Sequence[int]) -> "TauInvolution":
        chosen = set(subset)
        if len(chosen) != k or not chosen <= set(range(1, n + 1)):
            raise ValueError(f"Subset {sorted(chosen)} is not a {k}-subset of [1,{n}]")
        lower = sorted(set(range(1, k + 1)) - chosen)
        upper = sorted(chosen - set(range(1, k + 1)))
        return cls(n, k, tuple(zip(lower, upper)))

    def image(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ValueError(f"Index {i} outside [1,{self.n}]")
        return self.permutation(i - 1) + 1

    def subset(self) -> Tuple[int, ...]:
        return tuple(sorted(self.image(i) for i in range(1, self.k + 1)))

    @cached_property
    def permutation(self) -> Permutation:
        return Permutation([[i - 1, j - 1] for i, j in self.pairs], size=self.n)

    def __str__(self) -> str:
        return "".join(f"({i},{j})" for i, j in self.pairs) or "id"


def transversal_T(n: int, k: int) -> List[TauInvolution]:
    if not 0 <= k <= n:
        raise ValueError(f"k must satisfy 0 <= k <= {n}, got {k}")
    return [TauInvolution.from_subset(n, k, subset) for subset in itertools.combinations(range(1, n + 1), k)]


# ---------------------------------------------------------------------------
# Involutive representatives


@dataclass(frozen=True)
class CosetRepresentative:
    group_type: str
    tau: TauInvolution
    family: str
    signs: Tuple[int, ...]
    d: int
    realized: AffinePermutation

    def __post_init__(self) -> None:
        if not is_involution(self.realized):
            raise RuntimeError(f"Representative {self.realized} is not an involution")

    def to_dict(self) -> Dict:
        return {
            "group_type": self.group_type,
            "n": self.tau.n,
            "k": self.tau.k,
            "tau": [list(pair) for pair in self.tau.pairs],
            "params": {"family": self.family, "signs": list(self.signs), "d": self.d},
            "window": list(self.realized.window),
        }


def _sign_slots(n: int, tau: TauInvolution, skip_first: bool) -> List[Tuple[str, object]]:
    """Free sign positions in index order: singles k<i<n and pairs not ending at n."""
    partners = {j for _, j in tau.pairs}
    slots: List[Tuple[int, str, object]] = []
    for i in range(tau.k + 1, n):
        if i not in partners and not (skip_first and i == 1):
            slots.append((i, "single", i))
    for low, high in tau.pairs:
        if high != n:
            slots.append((low, "pair", (low, high)))
    return [(kind, data) for _, kind, data in sorted(slots, key=lambda slot: slot[0])]


def _window(
    n: int,
    tau: TauInvolution,
    slots: Sequence[Tuple[str, object]],
    signs: Sequence[int],
    shift_first_pair: bool = False,
) -> Dict[int, int]:
    N = period(n)
    window = {i: i for i in range(1, tau.k + 1)}
    for (kind, data), sign in zip(slots, signs):
        if kind == "single":
            window[data] = sign * data
            continue
        low, high = data
        if shift_first_pair and low == 1:
            window[1] = sign * (high - N)
            window[high] = sign + N
        else:
            window[low] = sign * high
            window[high] = sign * low
    return window


def _realize(
    group_type: str,
    tau: TauInvolution,
    family: str,
    signs: Tuple[int, ...],
    d: int,
    window: Dict[int, int],
) -> CosetRepresentative:
    n = tau.n
    element = AffinePermutation(n, tuple(window[i] for i in range(1, n + 1)))
    return CosetRepresentative(group_type, tau, family, signs, d, element)


def _reps_for_tau(group_type: str, tau: TauInvolution, d_bound: int) -> List[CosetRepresentative]:
    n, k = tau.n, tau.k
    N = period(n)
    carries = range(-d_bound, d_bound + 1)
    reps: List[CosetRepresentative] = []

    if tau.pairs and tau.pairs[-1][1] == n:
        last = tau.pairs[-1][0]
        slots = _sign_slots(n, tau, skip_first=False)
        for signs in itertools.product((1, -1), repeat=len(slots)):
            for d in carries:
                window = _window(n, tau, slots, signs)
                window[n] = last + N * d
                window[last] = n - N * d
                reps.append(_realize(group_type, tau, "paired-last", signs, d, window))
        return reps

    if group_type == "C":
        slots = _sign_slots(n, tau, skip_first=False)
        for signs in itertools.product((1, -1), repeat=len(slots)):
            for d in carries:
                window = _window(n, tau, slots, signs)
                window[n] = -n + N * d
                reps.append(_realize(group_type, tau, "negated-last", signs, d, window))
        return reps

    if tau.image(1) == 1:
        slots = _sign_slots(n, tau, skip_first=True)
        for family, first, parity_ in (("even-carry", 1, 0), ("odd-carry", -1 + N, 1)):
            for signs in itertools.product((1, -1), repeat=len(slots)):
                for d in carries:
                    if d % 2 != parity_:
                        continue
                    window = _window(n, tau, slots, signs)
                    window[1] = first
                    window[n] = -n + N * d
                    reps.append(_realize(group_type, tau, family, signs, d, window))
        return reps

    slots = _sign_slots(n, tau, skip_first=False)
    for family, shifted in (("even-carry", False), ("shifted-first", True)):
        for signs in itertools.product((1, -1), repeat=len(slots)):
            for d in carries:
                if d % 2:
                    continue
                window = _window(n, tau, slots, signs, shift_first_pair=shifted)
                window[n] = -n + N * d
                reps.append(_realize(group_type, tau, family, signs, d, window))
    return reps


def involutive_reps(n: int, k: int, group_type: str, d_bound: int = config.D_BOUND) -> List[CosetRepresentative]:
    """Involutive K_k (type C) or M_k (type B) coset representatives with |d| <= d_bound."""
    check_k(n, k)
    if group_type not in config.GROUP_TYPES:
        raise ValueError(f"Unknown group type '{group_type}'")
    if d_bound < 0:
        raise ValueError(f"d_bound must be >= 0, got {d_bound}")
    reps: List[CosetRepresentative] = []
    for tau in transversal_T(n, k):
        reps.extend(_reps_for_tau(group_type, tau, d_bound))
    logging.info("Built %d type %s representatives for n=%s k=%s", len(reps), group_type, n, k)
    return reps


@dataclass
class CosetMapReport:
    n: int
    k: int
    group_type: str
    d_bound: int
    margin: int
    representatives: int
    targets: int
    collisions: List[Tuple[SignedClass, CosetRepresentative, CosetRepresentative]] = field(default_factory=list)
    gaps: List[SignedClass] = field(default_factory=list)
    outside_group: List[CosetRepresentative] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return not (self.collisions or self.gaps or self.outside_group)

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "k": self.k,
            "group_type": self.group_type,
            "d_bound": self.d_bound,
            "margin": self.margin,
            "representatives": self.representatives,
            "targets": self.targets,
            "verdict": self.verdict,
            "collisions": [
                {"class": str(cls), "windows": [list(a.realized.window), list(b.realized.window)]}
                for cls, a, b in self.collisions
            ],
            "gaps": [str(cls) for cls in self.gaps],
            "outside_group": [list(rep.realized.window) for rep in self.outside_group],
        }


def coset_target_classes(n: int, k: int, group_type: str, bound: int) -> List[SignedClass]:
    """Signed classes with |b| <= bound reachable from [omega_k] by the chosen group.

    With no zero trit the carry parity is invariant under G1, so its orbit keeps even b.
    """
    classes = signed_quotient(enumerate_orbit(n, k, 0, b_window=max(bound, 0)))
    if group_type == "B" and k == 0:
        classes = [cls for cls in classes if cls.representative.b % 2 == 0]
    return classes


def coset_map_check(
    n: int,
    k: int,
    group_type: str,
    d_bound: int = config.D_BOUND,
    margin: Optional[int] = None,
) -> CosetMapReport:
    margin = config.COVERAGE_MARGIN if margin is None else margin
    reps = involutive_reps(n, k, group_type, d_bound)
    images: Dict[SignedClass, CosetRepresentative] = {}
    report = CosetMapReport(n, k, group_type, d_bound, margin, len(reps), 0)
    for rep in reps:
        if group_type == "B" and not is_in_B_subgroup(rep.realized):
            report.outside_group.append(rep)
        cls = SignedClass.of(r_k(rep.realized, k))
        if cls in images:
            report.collisions.append((cls, images[cls], rep))
        else:
            images[cls] = rep
    targets = coset_target_classes(n, k, group_type, d_bound - margin)
    report.targets = len(targets)
    report.gaps = [cls for cls in targets if cls not in images]
    logging.info(
        "Coset map n=%s k=%s type %s: %d reps, %d collisions, %d gaps",
        n, k, group_type, len(reps), len(report.collisions), len(report.gaps),
    )
    return report
