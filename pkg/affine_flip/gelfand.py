"""Orbital analysis of finite permutation actions.

An action is multiplicity-free exactly when its orbital algebra is commutative,
i.e. when the structure constants p^k_ij = #{y : (x,y) in O_i, (y,z) in O_j}
are symmetric in i and j. If every orbital is self-paired the algebra is
commutative.
"""
from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

import config
from affine_flip import models_arc, models_geometric
from affine_flip.flip_action import (
    OmegaState,
    enumerate_orbit,
    omega_base,
    rho_generator,
    rho_signed,
    signed_quotient,
)
from affine_flip.stabilizers import B_subgroup_words

Step = Callable[[int, Hashable], Hashable]


@dataclass(frozen=True)
class FiniteAction:
    states: Tuple[Hashable, ...]
    generators: Tuple[Tuple[int, ...], ...]
    names: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        size = len(self.states)
        if not size:
            raise ValueError("Action has no states")
        if not self.generators:
            raise ValueError("Action has no generators")
        for images in self.generators:
            if sorted(images) != list(range(size)):
                raise ValueError("Generator image is not a permutation of the state indices")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"g{i}" for i in range(len(self.generators))))

    @property
    def size(self) -> int:
        return len(self.states)

    def index(self) -> Dict[Hashable, int]:
        return {state: j for j, state in enumerate(self.states)}


# ---------------------------------------------------------------------------
# Model adapters


def _iota_gc(gamma):
    return models_geometric.psi_inv(models_geometric.iota_lf(models_geometric.psi(gamma)))


def _phi_gc(gamma) -> OmegaState:
    return models_geometric.phi_lf(models_geometric.psi(gamma))


def _phi_gc_inv(x: OmegaState):
    return models_geometric.psi_inv(models_geometric.phi_lf_inv(x))


_STEPS: Dict[str, Step] = {
    "omega": rho_generator,
    "omega_signed": rho_signed,
    "arc": models_arc.rho_A,
    "ctft": models_geometric.flip_ctft,
    "lf": models_geometric.rho_LF,
    "gc": models_geometric.flip_gc,
}

_INVOLUTIONS: Dict[str, Callable] = {
    "omega": lambda x: -x,
    "arc": models_arc.iota_arc,
    "ctft": models_geometric.iota_tft,
    "lf": models_geometric.iota_lf,
    "gc": _iota_gc,
}

# encoding into trit states, its inverse, and whether s_i is carried to s_{n-i}
_ENCODINGS: Dict[str, Tuple[Callable, Callable, bool]] = {
    "arc": (models_arc.phi_arc, models_arc.phi_arc_inv, False),
    "ctft": (models_geometric.phi_tft, models_geometric.phi_tft_inv, False),
    "lf": (models_geometric.phi_lf, models_geometric.phi_lf_inv, True),
    "gc": (_phi_gc, _phi_gc_inv, True),
}


def model_step(model: str) -> Step:
    if model not in _STEPS:
        raise ValueError(f"Unknown model '{model}'")
    return _STEPS[model]


def model_states(model: str, n: int, k: Optional[int] = None, m: Optional[int] = None) -> List[Hashable]:
    if model in ("omega", "omega_signed"):
        if k is None or m is None:
            raise ValueError(f"Model '{model}' needs k and m")
        states = enumerate_orbit(n, k, m)
        return signed_quotient(states) if model == "omega_signed" else states
    if model == "arc":
        return models_arc.enumerate_arc(n + 2, n if k is None else k)
    if model == "ctft":
        return models_geometric.enumerate_ctft(n + 4)
    if model == "lf":
        return models_geometric.enumerate_lf(n + 3)
    if model == "gc":
        return models_geometric.enumerate_gc(n + 3)
    raise ValueError(f"Unknown model '{model}'")


def _model_spec(model: str, n: int, k: Optional[int], m: Optional[int]):
    """States, generator step and involution (for the signed quotient) of a model."""
    if model == "omega_signed":
        model = "omega"
    return model_states(model, n, k, m), model_step(model), _INVOLUTIONS[model]


def generator_words(n: int, group_type: str) -> List[Tuple[int, ...]]:
    if group_type == "C":
        return [(i,) for i in range(n + 1)]
    if group_type == "B":
        return [word.letters for word in B_subgroup_words(n)]
    raise ValueError(f"Unknown group type '{group_type}'")


def action_from_step(
    states: Sequence[Hashable],
    step: Step,
    words: Sequence[Tuple[int, ...]],
    node_cap: Optional[int] = None,
) -> FiniteAction:
    cap = config.NODE_CAP if node_cap is None else node_cap
    if len(states) > cap:
        raise ValueError(f"{len(states)} states exceed the node cap of {cap}")
    index = {state: j for j, state in enumerate(states)}
    generators = []
    for letters in words:
        images = []
        for state in states:
            image = state
            for letter in reversed(letters):
                image = step(letter, image)
            if image not in index:
                raise ValueError(f"Generator {letters} maps {state} outside the state set")
            images.append(index[image])
        generators.append(tuple(images))
    names = tuple("s" + "s".join(str(letter) for letter in letters) for letters in words)
    return FiniteAction(tuple(states), tuple(generators), names)


def build_action(
    model: str,
    n: int,
    k: Optional[int] = None,
    m: Optional[int] = None,
    group_type: str = "C",
    signed: bool = False,
    node_cap: Optional[int] = None,
) -> FiniteAction:
    states, step, involution = _model_spec(model, n, k, m)
    if model == "omega_signed":
        signed = True
    if signed:

        def canonical(x):
            return min(x, involution(x))

        base_step = step
        states = sorted({canonical(x) for x in states})

        def step(i, x):
            return canonical(base_step(i, x))

    action = action_from_step(states, step, generator_words(n, group_type), node_cap)
    logging.info(
        "Built %s action (n=%s, k=%s, m=%s, group %s, signed=%s) on %d states",
        model, n, k, m, group_type, signed, action.size,
    )
    return action


@dataclass
class BijectionReport:
    model: str
    n: int
    k: Optional[int]
    states: int
    targets: int
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.states == self.targets

    def to_dict(self) -> Dict:
        return {
            "model": self.model,
            "n": self.n,
            "k": self.k,
            "states": self.states,
            "targets": self.targets,
            "ok": self.ok,
            "failures": self.failures,
        }


def bijection_check(model: str, n: int, k: Optional[int] = None, max_failures: int = 20) -> BijectionReport:
    """Exhaustively compare a model with its trit encoding.

    Checks that the encoding is a bijection onto the expected orbit, intertwines
    the generators (index-reversed for factorizations and caterpillars) and
    carries the model involution to negation.
    """
    if model not in _ENCODINGS:
        raise ValueError(f"Model '{model}' has no trit encoding")
    phi, phi_inv, reversed_index = _ENCODINGS[model]
    step, involution = _STEPS[model], _INVOLUTIONS[model]
    states = model_states(model, n, k)
    if model == "arc":
        size = n if k is None else k
        targets = set(enumerate_orbit(n, n - size, n + 2))
    else:
        targets = set(enumerate_orbit(n, 0, n + 4 if model == "ctft" else n + 3))
    report = BijectionReport(model, n, k, len(states), len(targets))

    def fail(message: str) -> None:
        if len(report.failures) < max_failures:
            report.failures.append(message)

    images = set()
    for x in states:
        y = phi(x)
        images.add(y)
        if y not in targets:
            fail(f"{x} encodes to {y} outside the target orbit")
        if phi_inv(y) != x:
            fail(f"{x} does not survive the round trip through {y}")
        for i in range(n + 1):
            j = n - i if reversed_index else i
            if phi(step(i, x)) != rho_generator(j, y):
                fail(f"s{i} on {x} is not carried to s{j} on {y}")
        if involution(involution(x)) != x:
            fail(f"involution is not of order 2 at {x}")
        if phi(involution(x)) != -y:
            fail(f"involution at {x} is not carried to negation")
    if len(images) != len(states):
        fail(f"encoding of {model} is not injective")
    logging.info("Bijection check %s n=%s: %d states, %d failures", model, n, len(states), len(report.failures))
    return report


def restrict_to_orbit(action: FiniteAction, start: Hashable) -> FiniteAction:
    index = action.index()
    if start not in index:
        raise ValueError(f"State {start} is not in the action")
    size = action.size
    sources = np.tile(np.arange(size, dtype=np.int64), len(action.generators))
    targets = np.concatenate([np.asarray(images, dtype=np.int64) for images in action.generators])
    graph = coo_matrix((np.ones(len(sources), dtype=np.int8), (sources, targets)), shape=(size, size))
    # generators act bijectively, so weak components are orbits
    _, labels = connected_components(graph, directed=True, connection="weak")
    kept = np.flatnonzero(labels == labels[index[start]]).tolist()
    renumber = {old: new for new, old in enumerate(kept)}
    generators = tuple(tuple(renumber[images[old]] for old in kept) for images in action.generators)
    return FiniteAction(tuple(action.states[old] for old in kept), generators, action.names)


# ---------------------------------------------------------------------------
# Orbitals


@dataclass(frozen=True)
class OrbitalDecomposition:
    labels: np.ndarray
    rank: int
    pairing: Tuple[int, ...]
    first_pairs: Tuple[Tuple[int, int], ...]
    last_pairs: Tuple[Tuple[int, int], ...]

    @property
    def size(self) -> int:
        return self.labels.shape[0]

    @property
    def diagonal_orbitals(self) -> Tuple[int, ...]:
        return tuple(sorted(set(int(v) for v in np.diag(self.labels))))


def _pair_components(action: FiniteAction) -> np.ndarray:
    size = action.size
    pairs = np.arange(size * size, dtype=np.int64)
    rows, cols = pairs // size, pairs % size
    sources, targets = [], []
    for images in action.generators:
        image = np.asarray(images, dtype=np.int64)
        sources.append(pairs)
        targets.append(image[rows] * size + image[cols])
    src = np.concatenate(sources)
    dst = np.concatenate(targets)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size * size, size * size))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def _pair_bfs(action: FiniteAction) -> np.ndarray:
    size = action.size
    labels = np.full(size * size, -1, dtype=np.int64)
    current = 0
    for start in range(size * size):
        if labels[start] >= 0:
            continue
        labels[start] = current
        queue = deque([start])
        while queue:
            p = queue.popleft()
            x, y = divmod(p, size)
            for images in action.generators:
                q = images[x] * size + images[y]
                if labels[q] < 0:
                    labels[q] = current
                    queue.append(q)
        current += 1
    return labels


def orbitals(action: FiniteAction, method: str = "components") -> OrbitalDecomposition:
    """Orbits of the diagonal action on pairs, numbered by first pair in row-major order."""
    if method == "components":
        raw = _pair_components(action)
    elif method == "bfs":
        raw = _pair_bfs(action)
    else:
        raise ValueError(f"Unknown orbital method '{method}'")
    _, first = np.unique(raw, return_index=True)
    order = np.argsort(first)
    remap = np.empty_like(order)
    remap[order] = np.arange(len(order))
    flat = remap[raw]
    size = action.size
    rank = len(order)
    _, first = np.unique(flat, return_index=True)
    _, last_reversed = np.unique(flat[::-1], return_index=True)
    last = flat.size - 1 - last_reversed
    labels = flat.reshape(size, size)
    first_pairs = tuple((int(p // size), int(p % size)) for p in first)
    last_pairs = tuple((int(p // size), int(p % size)) for p in last)
    pairing = tuple(int(labels[y, x]) for x, y in first_pairs)
    logging.info("Found %d orbitals on %d states", rank, size)
    return OrbitalDecomposition(labels, rank, pairing, first_pairs, last_pairs)


# ---------------------------------------------------------------------------
# Certificates


@dataclass
class GelfandCertificate:
    rank: int
    states: int
    self_paired: bool
    commutative: bool
    transitive: bool
    orbits: int
    witness: Optional[Tuple[int, int, int]] = None
    suborbit_sizes: List[int] = field(default_factory=list)
    model: str = ""
    params: Dict = field(default_factory=dict)

    @property
    def multiplicity_free(self) -> bool:
        return self.commutative

    def signature(self) -> Tuple:
        """Invariants preserved by isomorphisms of actions."""
        return (self.states, self.rank, self.self_paired, self.commutative, tuple(sorted(self.suborbit_sizes)))

    def to_dict(self) -> Dict:
        data = {
            "model": self.model,
            "params": self.params,
            "states": self.states,
            "rank": self.rank,
            "transitive": self.transitive,
            "orbits": self.orbits,
            "self_paired": self.self_paired,
            "commutative": self.commutative,
            "multiplicity_free": self.multiplicity_free,
            "suborbit_sizes": self.suborbit_sizes,
        }
        if self.witness is not None:
            data["witness"] = list(self.witness)
        return data


def _intersection_counts(labels: np.ndarray, rank: int, x: int, z: int) -> np.ndarray:
    codes = labels[x, :].astype(np.int64) * rank + labels[:, z].astype(np.int64)
    return np.bincount(codes, minlength=rank * rank).reshape(rank, rank)


def structure_constants_commute(dec: OrbitalDecomposition, workers: Optional[int] = None) -> GelfandCertificate:
    labels, rank = dec.labels, dec.rank

    def asymmetry(k: int) -> Optional[Tuple[int, int, int]]:
        x, z = dec.first_pairs[k]
        counts = _intersection_counts(labels, rank, x, z)
        if dec.last_pairs[k] != (x, z):
            other = _intersection_counts(labels, rank, *dec.last_pairs[k])
            if not np.array_equal(counts, other):
                raise RuntimeError(f"Structure constants of orbital {k} depend on the representative")
        bad = np.argwhere(counts != counts.T)
        return None if not len(bad) else (int(bad[0][0]), int(bad[0][1]), k)

    pool_size = config.WORKERS if workers is None else max(1, workers)
    if pool_size > 1:
        with ThreadPoolExecutor(max_workers=pool_size) as pool:
            results = list(pool.map(asymmetry, range(rank)))
    else:
        results = [asymmetry(k) for k in range(rank)]
    witness = next((result for result in results if result is not None), None)

    self_paired = all(dec.pairing[i] == i for i in range(rank))
    commutative = witness is None
    if self_paired and not commutative:
        raise RuntimeError("Self-paired orbitals with a non-commutative orbital algebra")
    orbit_count = len(dec.diagonal_orbitals)
    suborbits = np.bincount(labels[0], minlength=rank)
    certificate = GelfandCertificate(
        rank=rank,
        states=dec.size,
        self_paired=self_paired,
        commutative=commutative,
        transitive=orbit_count == 1,
        orbits=orbit_count,
        witness=witness,
        suborbit_sizes=sorted(int(v) for v in suborbits if v),
    )
    logging.info(
        "Certificate: rank=%d self_paired=%s commutative=%s witness=%s",
        rank, self_paired, commutative, witness,
    )
    return certificate


def certify(action: FiniteAction, model: str = "", params: Optional[Dict] = None) -> GelfandCertificate:
    certificate = structure_constants_commute(orbitals(action))
    certificate.model = model
    certificate.params = dict(params or {})
    return certificate


@dataclass
class CosetInvolutionReport:
    base: str
    suborbits: List[Dict] = field(default_factory=list)

    @property
    def all_self_paired(self) -> bool:
        return all(entry["self_paired"] for entry in self.suborbits)

    def to_dict(self) -> Dict:
        return {"base": self.base, "all_self_paired": self.all_self_paired, "suborbits": self.suborbits}


def coset_involution_check(action: FiniteAction, base_state: Hashable) -> CosetInvolutionReport:
    """Self-pairedness of every orbital through the base point."""
    index = action.index()
    if base_state not in index:
        raise ValueError(f"Base state {base_state} not found")
    dec = orbitals(action)
    row = dec.labels[index[base_state]]
    sizes = np.bincount(row, minlength=dec.rank)
    report = CosetInvolutionReport(str(base_state))
    for orbital in sorted(set(int(v) for v in row)):
        report.suborbits.append(
            {"orbital": orbital, "size": int(sizes[orbital]), "self_paired": dec.pairing[orbital] == orbital}
        )
    return report


def b_subgroup_action_check(n: int, k: int, m: int, node_cap: Optional[int] = None) -> GelfandCertificate:
    """Certificate for the index 2 subgroup acting on the orbit of [omega_k] in the signed quotient."""
    base = omega_base(n, k, m)
    base = min(base, -base)
    full = build_action("omega_signed", n, k, m, node_cap=node_cap)
    restricted = restrict_to_orbit(build_action("omega_signed", n, k, m, group_type="B", node_cap=node_cap), base)
    g_orbit = restrict_to_orbit(full, base).size
    certificate = certify(
        restricted,
        model="omega_signed",
        params={"n": n, "k": k, "m": m, "group": "B", "g_orbit": g_orbit, "g1_orbit": restricted.size},
    )
    logging.info("G1-orbit of %s has %d of %d classes", base, restricted.size, g_orbit)
    return certificate


# ---------------------------------------------------------------------------
# Schreier graphs


def schreier_graph(action: FiniteAction, label: Callable[[Hashable], str] = str) -> nx.MultiDiGraph:
    graph = nx.MultiDiGraph()
    names = [label(state) for state in action.states]
    graph.add_nodes_from(names)
    for g, images in enumerate(action.generators):
        for j, image in enumerate(images):
            graph.add_edge(names[j], names[image], key=g, label=action.names[g])
    return graph


def schreier_diameter(graph: nx.MultiDiGraph) -> Optional[int]:
    undirected = nx.Graph(graph.to_undirected())
    if not nx.is_connected(undirected):
        return None
    return nx.diameter(undirected)
