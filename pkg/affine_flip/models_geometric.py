"""Triangulations, factorizations and caterpillars with their flip actions.

Vertices of the m-gon are labelled 1..m clockwise. A chord is stored as a
sorted pair. Permutation products are functional: t1 t2 ... tk means
x -> t1(t2(...tk(x))).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Set, Tuple

import networkx as nx
from sympy.combinatorics import Permutation

from affine_flip.flip_action import OmegaState
from affine_flip.models_arc import is_cyclic_interval

Chord = Tuple[int, int]


def chord(a: int, b: int) -> Chord:
    return (a, b) if a < b else (b, a)


def _display(value: int, m: int) -> int:
    return value % m or m


def is_polygon_edge(c: Chord, m: int) -> bool:
    return (c[1] - c[0]) % m in (1, m - 1)


def is_proper_chord(c: Chord, m: int) -> bool:
    a, b = c
    return 1 <= a < b <= m and not is_polygon_edge(c, m)


def is_short(c: Chord, m: int) -> bool:
    return (c[1] - c[0]) % m in (2, m - 2)


def chords_cross(c1: Chord, c2: Chord, m: int) -> bool:
    """Chords cross iff exactly one endpoint of c2 lies strictly inside the arc of c1."""
    if set(c1) & set(c2):
        return False
    a, b = c1
    inside = [a < v < b for v in c2]
    return inside[0] != inside[1]


def _noncrossing(chords: Sequence[Chord], m: int) -> bool:
    return not any(
        chords_cross(chords[i], chords[j], m) for i in range(len(chords)) for j in range(i + 1, len(chords))
    )


# ---------------------------------------------------------------------------
# Triangle-free triangulations with a proper labelling


@dataclass(frozen=True)
class DiagonalSequence:
    m: int
    diagonals: Tuple[Chord, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "diagonals", tuple(chord(int(a), int(b)) for a, b in self.diagonals))

    @property
    def rank(self) -> int:
        return self.m - 4

    def __lt__(self, other: "DiagonalSequence") -> bool:
        return (self.m, self.diagonals) < (other.m, other.diagonals)

    def __str__(self) -> str:
        return "(" + ",".join(f"({a},{b})" for a, b in self.diagonals) + ")"


def is_ctft(seq: DiagonalSequence) -> bool:
    m, d = seq.m, seq.diagonals
    if m < 5 or len(d) != m - 3:
        return False
    if not all(is_proper_chord(c, m) for c in d) or len(set(d)) != len(d):
        return False
    if not _noncrossing(d, m):
        return False
    for prev, nxt in zip(d, d[1:]):
        shared = set(prev) & set(nxt)
        if len(shared) != 1:
            return False
        (p,) = set(prev) - shared
        (q,) = set(nxt) - shared
        # consecutive chords bound a common triangle
        if not is_polygon_edge(chord(p, q), m):
            return False
    return is_short(d[0], m) and is_short(d[-1], m) and sum(is_short(c, m) for c in d) == 2


def _require_ctft(seq: DiagonalSequence) -> None:
    if not is_ctft(seq):
        raise ValueError(f"{seq} is not a properly labelled triangle-free triangulation")


def _apexes(c: Chord, edges: Set[Chord], m: int) -> List[int]:
    p, q = c
    return [r for r in range(1, m + 1) if r not in c and chord(p, r) in edges and chord(q, r) in edges]


def flip_ctft(i: int, seq: DiagonalSequence) -> DiagonalSequence:
    """Flip the chord labelled i inside its quadrangle if the labelling survives."""
    _require_ctft(seq)
    m = seq.m
    if not 0 <= i <= seq.rank:
        raise ValueError(f"Generator index {i} outside [0,{seq.rank}]")
    edges = set(seq.diagonals) | {chord(v, _display(v + 1, m)) for v in range(1, m + 1)}
    apexes = _apexes(seq.diagonals[i], edges, m)
    if len(apexes) != 2:
        raise RuntimeError(f"Chord {seq.diagonals[i]} of {seq} does not sit in a quadrangle")
    diagonals = list(seq.diagonals)
    diagonals[i] = chord(*apexes)
    flipped = DiagonalSequence(m, tuple(diagonals))
    return flipped if is_ctft(flipped) else seq


def _interval_ends(vertices: Set[int], m: int) -> Tuple[int, int]:
    lows = [v for v in vertices if _display(v - 1, m) not in vertices]
    highs = [v for v in vertices if _display(v + 1, m) not in vertices]
    if len(lows) != 1 or len(highs) != 1:
        raise RuntimeError(f"Vertices {sorted(vertices)} do not form a cyclic interval")
    return lows[0], highs[0]


def phi_tft(seq: DiagonalSequence) -> OmegaState:
    _require_ctft(seq)
    m, n, d = seq.m, seq.rank, seq.diagonals
    p, q = d[n]
    b = p + 1 if q - p == 2 else _display(q + 1, m)
    vertices = {b, p, q}
    trits = [0] * n
    for j in range(n, 0, -1):
        low, high = _interval_ends(vertices, m)
        c = d[j - 1]
        if c == chord(low, _display(high + 1, m)):
            trits[j - 1] = 1
        elif c == chord(_display(low - 1, m), high):
            trits[j - 1] = -1
        else:
            raise RuntimeError(f"Chord {c} does not extend the interval [{low},{high}]")
        vertices |= set(c)
    return OmegaState(tuple(trits), b, m)


def phi_tft_inv(x: OmegaState) -> DiagonalSequence:
    n = x.rank
    m = n + 4
    if x.modulus != m or x.zeros:
        raise ValueError(f"State {x} is not in the zero-free orbit modulo {m}")
    b = _display(x.b, m)
    low, high = b - 1, b + 1
    diagonals: List[Chord] = [(0, 0)] * (n + 1)
    diagonals[n] = chord(_display(low, m), _display(high, m))
    for j in range(n, 0, -1):
        if x.trits[j - 1] == 1:
            diagonals[j - 1] = chord(_display(low, m), _display(high + 1, m))
            high += 1
        else:
            diagonals[j - 1] = chord(_display(low - 1, m), _display(high, m))
            low -= 1
    return DiagonalSequence(m, tuple(diagonals))


def iota_tft(seq: DiagonalSequence) -> DiagonalSequence:
    return phi_tft_inv(-phi_tft(seq))


def reflect_ctft(seq: DiagonalSequence) -> DiagonalSequence:
    """Reflection v -> m - v fixing vertex m, applied chord by chord."""
    _require_ctft(seq)
    m = seq.m

    def mirror(v: int) -> int:
        return v if v == m else m - v

    return DiagonalSequence(m, tuple(chord(mirror(a), mirror(b)) for a, b in seq.diagonals))


def enumerate_ctft(m: int) -> List[DiagonalSequence]:
    """Every labelled sequence, grown from a short chord one triangle at a time."""
    if m < 5:
        raise ValueError(f"Polygon size must be at least 5, got {m}")
    found: Set[DiagonalSequence] = set()

    def grow(chords: List[Chord]) -> None:
        if len(chords) == m - 3:
            candidate = DiagonalSequence(m, tuple(chords))
            if is_ctft(candidate):
                found.add(candidate)
            return
        prev = chords[-1]
        for shared in prev:
            (other,) = set(prev) - {shared}
            for step in (-1, 1):
                c = chord(shared, _display(other + step, m))
                if not is_proper_chord(c, m) or c in chords:
                    continue
                if any(chords_cross(c, e, m) for e in chords):
                    continue
                grow(chords + [c])

    for v in range(1, m + 1):
        grow([chord(_display(v - 1, m), _display(v + 1, m))])
    result = sorted(found)
    logging.info("Enumerated %d labelled triangle-free triangulations of the %d-gon", len(result), m)
    return result


# ---------------------------------------------------------------------------
# Linear factorizations of the long cycle


@dataclass(frozen=True)
class Factorization:
    m: int
    transpositions: Tuple[Chord, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "transpositions", tuple(chord(int(a), int(b)) for a, b in self.transpositions))

    @property
    def rank(self) -> int:
        return self.m - 3

    def __lt__(self, other: "Factorization") -> bool:
        return (self.m, self.transpositions) < (other.m, other.transpositions)

    def __str__(self) -> str:
        return "(" + ",".join(f"({a},{b})" for a, b in self.transpositions) + ")"


def long_cycle(m: int) -> Permutation:
    return Permutation([list(range(m))])


def cycle_product(pairs: Sequence[Chord], m: int) -> Permutation:
    """Functional product t1 t2 ... tk as a sympy permutation on 0..m-1."""
    result = Permutation(list(range(m)))
    for a, b in reversed(pairs):
        # sympy multiplies left to right: (p * q)(x) = q(p(x))
        result = result * Permutation([[a - 1, b - 1]], size=m)
    return result


def is_linear_sequence(pairs: Sequence[Chord]) -> bool:
    return all(len(set(p) & set(q)) == 1 for p, q in zip(pairs, pairs[1:]))


def is_lf(w: Factorization) -> bool:
    m, t = w.m, w.transpositions
    if m < 3 or len(t) != m - 1:
        return False
    if any(not 1 <= a < b <= m for a, b in t):
        return False
    return is_linear_sequence(t) and cycle_product(t, m) == long_cycle(m)


def _require_lf(w: Factorization) -> None:
    if not is_lf(w):
        raise ValueError(f"{w} is not a linear factorization of the long cycle")


def _conjugate(g: Chord, h: Chord) -> Chord:
    """g h g^{-1} for transpositions g, h."""

    def swap(v: int) -> int:
        return g[1] if v == g[0] else g[0] if v == g[1] else v

    return chord(swap(h[0]), swap(h[1]))


def hurwitz(i: int, pairs: Sequence[Chord]) -> Tuple[Chord, ...]:
    """b_i: (..., g_i, g_{i+1}, ...) -> (..., g_i g_{i+1} g_i^{-1}, g_i, ...), 1-based i."""
    if not 1 <= i <= len(pairs) - 1:
        raise ValueError(f"Hurwitz index {i} outside [1,{len(pairs) - 1}]")
    result = list(pairs)
    g, h = result[i - 1], result[i]
    result[i - 1], result[i] = _conjugate(g, h), g
    return tuple(result)


def hurwitz_inv(i: int, pairs: Sequence[Chord]) -> Tuple[Chord, ...]:
    if not 1 <= i <= len(pairs) - 1:
        raise ValueError(f"Hurwitz index {i} outside [1,{len(pairs) - 1}]")
    result = list(pairs)
    g, h = result[i - 1], result[i]
    result[i - 1], result[i] = h, _conjugate(h, g)
    return tuple(result)


def rho_LF(i: int, w: Factorization) -> Factorization:
    _require_lf(w)
    if not 0 <= i <= w.rank:
        raise ValueError(f"Generator index {i} outside [0,{w.rank}]")
    forward = Factorization(w.m, hurwitz(i + 1, w.transpositions))
    backward = Factorization(w.m, hurwitz_inv(i + 1, w.transpositions))
    forward_ok, backward_ok = is_lf(forward), is_lf(backward)
    if forward_ok and backward_ok:
        raise RuntimeError(f"Both Hurwitz moves at {i + 1} keep {w} linear")
    if forward_ok:
        return forward
    return backward if backward_ok else w


def _is_adjacent(c: Chord, m: int) -> bool:
    return (c[1] - c[0]) % m in (1, m - 1)


def phi_lf(w: Factorization) -> OmegaState:
    _require_lf(w)
    m, n, t = w.m, w.rank, w.transpositions
    p, q = t[0]
    if not _is_adjacent(t[0], m):
        raise RuntimeError(f"First factor {t[0]} of {w} is not adjacent")
    j = p if q - p == 1 else q
    trits = [0] * n
    for i in range(1, n + 1):
        trits[n - i] = 1 if _is_adjacent(t[i], m) else -1
    return OmegaState(tuple(trits), j, m)


def phi_lf_inv(x: OmegaState) -> Factorization:
    n = x.rank
    m = n + 3
    if x.modulus != m or x.zeros:
        raise ValueError(f"State {x} is not in the zero-free orbit modulo {m}")
    j = _display(x.b, m)
    low, high = j, j + 1
    pairs: List[Chord] = [chord(_display(low, m), _display(high, m))]
    for i in range(1, n + 1):
        if x.trits[n - i] == 1:
            pairs.append(chord(_display(high, m), _display(high + 1, m)))
            high += 1
        else:
            pairs.append(chord(_display(low - 1, m), _display(high, m)))
            low -= 1
    # last factor closes the product: (t1...t_{n+1})^{-1} gamma, in sympy order gamma * inverse
    closing = long_cycle(m) * ~cycle_product(pairs, m)
    cycles = closing.cyclic_form
    if len(cycles) != 1 or len(cycles[0]) != 2:
        raise RuntimeError(f"Closing factor {cycles} for {x} is not a transposition")
    a, b = cycles[0]
    pairs.append(chord(a + 1, b + 1))
    return Factorization(m, tuple(pairs))


def iota_lf(w: Factorization) -> Factorization:
    return phi_lf_inv(-phi_lf(w))


def enumerate_lf(m: int) -> List[Factorization]:
    """Linear factorizations by depth-first search over non-crossing linear trees."""
    if m < 3:
        raise ValueError(f"Ground size must be at least 3, got {m}")
    gamma = long_cycle(m)
    found: List[Factorization] = []

    def grow(pairs: List[Chord], visited: FrozenSet[int]) -> None:
        if len(pairs) == m - 1:
            if cycle_product(pairs, m) == gamma:
                found.append(Factorization(m, tuple(pairs)))
            return
        for shared in pairs[-1]:
            for new in range(1, m + 1):
                if new in visited:
                    continue
                c = chord(shared, new)
                if any(chords_cross(c, e, m) for e in pairs):
                    continue
                grow(pairs + [c], visited | {new})

    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            grow([(a, b)], frozenset((a, b)))
    found.sort()
    logging.info("Enumerated %d linear factorizations of the %d-cycle", len(found), m)
    return found


# ---------------------------------------------------------------------------
# Geometric caterpillars


@dataclass(frozen=True)
class Caterpillar:
    m: int
    edges: FrozenSet[Chord]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", frozenset(chord(int(a), int(b)) for a, b in self.edges))

    @property
    def rank(self) -> int:
        return self.m - 3

    def __lt__(self, other: "Caterpillar") -> bool:
        return (self.m, sorted(self.edges)) < (other.m, sorted(other.edges))

    def __str__(self) -> str:
        return "{" + ",".join(f"({a},{b})" for a, b in sorted(self.edges)) + "}"


def _tree(edges: Iterable[Chord], m: int) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(1, m + 1))
    graph.add_edges_from(edges)
    return graph


def is_caterpillar(gamma: Caterpillar) -> bool:
    m, edges = gamma.m, sorted(gamma.edges)
    if m < 2 or len(edges) != m - 1:
        return False
    if any(not 1 <= a < b <= m for a, b in edges):
        return False
    graph = _tree(edges, m)
    if not nx.is_tree(graph) or not _noncrossing(edges, m):
        return False
    internal = [v for v in graph.nodes if graph.degree(v) >= 2]
    return is_cyclic_interval(internal, m)


def gy_order(gamma: Caterpillar) -> Tuple[Chord, ...]:
    """Edges in the linear order generated by the anti-clockwise order at each vertex."""
    if not is_caterpillar(gamma):
        raise ValueError(f"{gamma} is not a geometric caterpillar")
    m = gamma.m
    order = nx.DiGraph()
    order.add_nodes_from(gamma.edges)
    for v in range(1, m + 1):
        others = sorted((b if a == v else a for a, b in gamma.edges if v in (a, b)), key=lambda x: (v - 1 - x) % m)
        for x, y in zip(others, others[1:]):
            order.add_edge(chord(v, x), chord(v, y))
    sequence = list(nx.lexicographical_topological_sort(order))
    if not all(order.has_edge(e, f) for e, f in zip(sequence, sequence[1:])):
        raise ValueError(f"Edge order of {gamma} is not linear")
    return tuple(sequence)


def psi(gamma: Caterpillar) -> Factorization:
    return Factorization(gamma.m, gy_order(gamma))


def psi_inv(w: Factorization) -> Caterpillar:
    _require_lf(w)
    return Caterpillar(w.m, frozenset(w.transpositions))


def flip_gc(i: int, gamma: Caterpillar) -> Caterpillar:
    """Replace e_i or e_{i+1} by the chord joining their free ends, if still a caterpillar."""
    edges = gy_order(gamma)
    if not 0 <= i <= gamma.rank:
        raise ValueError(f"Generator index {i} outside [0,{gamma.rank}]")
    first, second = edges[i], edges[i + 1]
    shared = set(first) & set(second)
    if len(shared) != 1:
        raise RuntimeError(f"Consecutive edges {first} and {second} share no vertex")
    (a,) = set(first) - shared
    (b,) = set(second) - shared
    new = chord(a, b)
    candidates = [
        Caterpillar(gamma.m, (gamma.edges - {old}) | {new}) for old in (first, second)
    ]
    valid = [candidate for candidate in candidates if is_caterpillar(candidate)]
    if len(valid) > 1:
        raise RuntimeError(f"Both replacements by {new} in {gamma} give caterpillars")
    return valid[0] if valid else gamma


def enumerate_gc(m: int) -> List[Caterpillar]:
    """Noncrossing spanning trees of the m-gon whose internal vertices form a cyclic interval.

    Grown chord by chord over noncrossing forests, without going through factorizations.
    """
    chords = list(itertools.combinations(range(1, m + 1), 2))
    found: List[Caterpillar] = []

    def grow(start: int, chosen: List[Chord], component: Dict[int, int]) -> None:
        if len(chosen) == m - 1:
            gamma = Caterpillar(m, frozenset(chosen))
            if is_caterpillar(gamma):
                found.append(gamma)
            return
        for j in range(start, len(chords)):
            a, b = chords[j]
            if component[a] == component[b] or any(chords_cross(chords[j], c, m) for c in chosen):
                continue
            old, new = component[b], component[a]
            grow(j + 1, chosen + [chords[j]], {v: new if c == old else c for v, c in component.items()})

    grow(0, [], {v: v for v in range(1, m + 1)})
    result = sorted(found)
    logging.info("Enumerated %d geometric caterpillars on %d vertices", len(result), m)
    return result
