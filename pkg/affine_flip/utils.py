"""Text forms of windows, words, states and model objects, used by the CLI."""
from __future__ import annotations

import re
from typing import Hashable, List, Optional, Tuple

from affine_flip.affine_core import AffinePermutation, GeneratorWord, StarValue
from affine_flip.flip_action import OmegaState, SignedClass
from affine_flip.models_arc import PartialArcPermutation
from affine_flip.models_geometric import Caterpillar, DiagonalSequence, Factorization

HOLE_TOKENS = ("_", "o", "∘", "")
_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")
_STATE = re.compile(r"^\s*[±]?\(\s*([^;]*);\s*(-?\d+)\s*\)\s*$")


def _strip_brackets(text: str) -> str:
    return text.strip().lstrip("[(").rstrip("])")


def parse_window(text: str) -> AffinePermutation:
    """Parse "[1,7,3,4]"; entries may use the star form "a*b" for a + (2n+1)b."""
    items = [item.strip() for item in _strip_brackets(text).split(",") if item.strip()]
    n = len(items)
    try:
        values = []
        for item in items:
            if "*" in item:
                base, power = item.split("*", 1)
                values.append(StarValue(n, int(base), int(power)).to_int())
            else:
                values.append(int(item))
        return AffinePermutation(n, tuple(values))
    except ValueError as exc:
        raise ValueError(f"Invalid window '{text}': {exc}") from exc


def format_window(u: AffinePermutation, star: bool = False) -> str:
    if not star:
        return str(u)
    parts = []
    for value in u.window:
        sv = StarValue.from_int(u.rank, value)
        parts.append(str(sv.base) if sv.exponent == 0 else f"{sv.base}*{sv.exponent}")
    return "[" + ",".join(parts) + "]"


def parse_word(n: int, text: str) -> GeneratorWord:
    """Parse "0 1 2", "0,1,2" or "s0s1s2" into a generator word of rank n."""
    try:
        letters = [int(token) for token in re.findall(r"\d+", text or "")]
        return GeneratorWord(n, tuple(letters))
    except ValueError as exc:
        raise ValueError(f"Invalid word '{text}' for rank {n}: {exc}") from exc


def parse_state(text: str, modulus: int = 0) -> OmegaState:
    match = _STATE.match(text or "")
    if not match:
        raise ValueError(f"Invalid state '{text}', expected a form like (1,-1,0;3)")
    try:
        trits = tuple(int(item) for item in match.group(1).split(",") if item.strip())
        return OmegaState(trits, int(match.group(2)), modulus)
    except ValueError as exc:
        raise ValueError(f"Invalid state '{text}': {exc}") from exc


def parse_arc(text: str) -> PartialArcPermutation:
    items = [item.strip() for item in _strip_brackets(text).split(",")]
    try:
        entries = tuple(None if item in HOLE_TOKENS else int(item) for item in items)
    except ValueError as exc:
        raise ValueError(f"Invalid arc permutation '{text}': {exc}") from exc
    return PartialArcPermutation(len(entries), entries)


def parse_pairs(text: str) -> List[Tuple[int, int]]:
    pairs = [(int(a), int(b)) for a, b in _PAIR.findall(text or "")]
    if not pairs:
        raise ValueError(f"No pairs found in '{text}'")
    return pairs


def parse_model_state(model: str, text: str, m: int) -> Hashable:
    """Parse a state of ``model``; ``m`` is the polygon size or modulus where the text cannot carry it."""
    if model in ("omega", "omega_signed"):
        state = parse_state(text, m)
        return SignedClass.of(state) if model == "omega_signed" else state
    if model == "arc":
        return parse_arc(text)
    if model == "ctft":
        return DiagonalSequence(m, tuple(parse_pairs(text)))
    if model == "lf":
        return Factorization(m, tuple(parse_pairs(text)))
    if model == "gc":
        return Caterpillar(m, frozenset(parse_pairs(text)))
    raise ValueError(f"Unknown model '{model}'")


def ground_size(model: str, n: int, m: Optional[int] = None) -> int:
    """Ground size of a model of rank n (modulus for omega models)."""
    sizes = {"arc": n + 2, "ctft": n + 4, "lf": n + 3, "gc": n + 3}
    if model in sizes:
        return sizes[model]
    if m is None:
        raise ValueError(f"Model '{model}' needs --m")
    return m
