import random

import numpy as np
import pytest

from affine_flip.flip_action import omega_base
from affine_flip.gelfand import (
    FiniteAction,
    b_subgroup_action_check,
    bijection_check,
    build_action,
    certify,
    coset_involution_check,
    orbitals,
    restrict_to_orbit,
    schreier_diameter,
    schreier_graph,
    structure_constants_commute,
)

CYCLIC = FiniteAction((0, 1, 2), ((1, 2, 0),))


def test_action_validation():
    with pytest.raises(ValueError):
        FiniteAction((), ((),))
    with pytest.raises(ValueError):
        FiniteAction((0, 1), ())
    with pytest.raises(ValueError):
        FiniteAction((0, 1), ((0, 0),))
    assert CYCLIC.names == ("g0",)


def test_regular_cyclic_action():
    dec = orbitals(CYCLIC)
    assert dec.rank == 3
    assert dec.diagonal_orbitals == (0,)
    assert sorted(dec.pairing) == [0, 1, 2]
    assert sum(1 for i, j in enumerate(dec.pairing) if i != j) == 2
    certificate = structure_constants_commute(dec)
    assert certificate.transitive
    assert certificate.commutative
    assert not certificate.self_paired
    assert certificate.suborbit_sizes == [1, 1, 1]


def test_regular_action_of_symmetric_group_is_not_multiplicity_free():
    # S3 acting on itself by left multiplication, as index maps
    elements = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    index = {p: j for j, p in enumerate(elements)}

    def left(g):
        return tuple(index[tuple(g[p[i]] for i in range(3))] for p in elements)

    action = FiniteAction(tuple(elements), (left((1, 0, 2)), left((0, 2, 1))))
    certificate = certify(action)
    assert certificate.rank == 6
    assert not certificate.commutative
    i, j, k = certificate.witness
    assert certificate.to_dict()["witness"] == [i, j, k]


def test_orbital_methods_agree():
    action = build_action("omega_signed", 2, 0, 4)
    components = orbitals(action, method="components")
    bfs = orbitals(action, method="bfs")
    assert components.rank == bfs.rank
    assert np.array_equal(components.labels, bfs.labels)
    assert components.pairing == bfs.pairing


def test_orbital_count_ignores_generator_order():
    action = build_action("omega", 3, 1, 5)
    gens = list(action.generators)
    random.Random(2).shuffle(gens)
    shuffled = FiniteAction(action.states, tuple(gens))
    assert orbitals(shuffled).rank == orbitals(action).rank


def test_build_action_sizes():
    assert build_action("omega_signed", 3, 0, 5).size == 20
    arc = build_action("arc", 2)
    assert arc.size == 16
    for images in arc.generators:
        assert all(images[images[j]] == j for j in range(arc.size))
    assert build_action("ctft", 2).size == 6 * 4
    assert build_action("lf", 2).size == 5 * 4
    assert build_action("gc", 2).size == 5 * 4
    with pytest.raises(ValueError):
        build_action("omega", 3, 0, 5, node_cap=10)
    with pytest.raises(ValueError):
        build_action("omega", 3)
    with pytest.raises(ValueError):
        build_action("tiling", 3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_signed_quotients_are_gelfand(n):
    for k in range(n):
        for m in (n + 2, n + 3, n + 4):
            certificate = certify(build_action("omega_signed", n, k, m))
            assert certificate.transitive
            assert certificate.self_paired, (n, k, m)
            assert certificate.multiplicity_free


@pytest.mark.parametrize("n", [2, 3, 4])
def test_unsigned_dichotomy(n):
    for k in range(n):
        for m in (1, 2):
            assert certify(build_action("omega", n, k, m)).multiplicity_free, (n, k, m)
        for m in range(3, n + 5):
            certificate = certify(build_action("omega", n, k, m))
            assert not certificate.multiplicity_free, (n, k, m)
            assert certificate.witness is not None


def test_signed_quotient_has_fewer_orbitals():
    for n, k, m in [(2, 0, 4), (3, 1, 5), (3, 0, 6)]:
        signed = orbitals(build_action("omega_signed", n, k, m)).rank
        unsigned = orbitals(build_action("omega", n, k, m)).rank
        assert signed <= unsigned


@pytest.mark.parametrize("n", [2, 3])
def test_models_share_certificates_with_trit_states(n):
    pairs = [("arc", n + 2), ("ctft", n + 4), ("lf", n + 3), ("gc", n + 3)]
    for model, m in pairs:
        for signed in (False, True):
            ours = certify(build_action(model, n, signed=signed))
            theirs = certify(build_action("omega", n, 0, m, signed=signed))
            assert ours.signature() == theirs.signature(), (model, signed)


def test_original_actions_are_not_multiplicity_free():
    for model in ("arc", "ctft", "lf"):
        assert not certify(build_action(model, 2)).multiplicity_free


def test_partial_arc_certificate_matches_orbit():
    ours = certify(build_action("arc", 3, k=2, signed=True))
    theirs = certify(build_action("omega_signed", 3, 1, 5))
    assert ours.signature() == theirs.signature()
    assert ours.multiplicity_free


@pytest.mark.parametrize("n", [2, 3, 4])
def test_b_subgroup_restriction(n):
    for k in range(n):
        for m in (n + 2, n + 3):
            certificate = b_subgroup_action_check(n, k, m)
            assert certificate.multiplicity_free, (n, k, m)
            assert certificate.transitive
            ratio, rest = divmod(certificate.params["g_orbit"], certificate.params["g1_orbit"])
            assert rest == 0 and ratio in (1, 2)


def test_coset_involution_check():
    base = omega_base(3, 0, 5)
    signed = coset_involution_check(build_action("omega_signed", 3, 0, 5), min(base, -base))
    assert signed.all_self_paired
    assert sum(entry["size"] for entry in signed.suborbits) == 20
    unsigned = coset_involution_check(build_action("omega", 3, 0, 5), base)
    assert not unsigned.all_self_paired
    single = coset_involution_check(FiniteAction(("x",), ((0,),)), "x")
    assert single.all_self_paired
    with pytest.raises(ValueError):
        coset_involution_check(CYCLIC, 7)


def test_restrict_to_orbit():
    action = FiniteAction(("a", "b", "c", "d"), ((1, 0, 2, 3), (0, 1, 3, 2)))
    orbit = restrict_to_orbit(action, "c")
    assert orbit.states == ("c", "d")
    assert orbit.generators == ((0, 1), (1, 0))
    assert certify(action).orbits == 2
    assert not certify(action).transitive
    interleaved = FiniteAction(("a", "b", "c", "d", "e"), ((2, 1, 0, 4, 3),))
    assert restrict_to_orbit(interleaved, "a").states == ("a", "c")
    assert restrict_to_orbit(interleaved, "e").generators == ((1, 0),)
    assert restrict_to_orbit(interleaved, "b").states == ("b",)
    with pytest.raises(ValueError):
        restrict_to_orbit(action, "z")


@pytest.mark.parametrize("model", ["arc", "ctft", "lf", "gc"])
def test_bijection_checks(model):
    for n in (2, 3):
        report = bijection_check(model, n)
        assert report.ok, report.failures
    with pytest.raises(ValueError):
        bijection_check("omega", 2)


def test_schreier_graph():
    action = build_action("arc", 2)
    graph = schreier_graph(action)
    assert graph.number_of_nodes() == 16
    assert all(degree == 3 for _, degree in graph.out_degree())
    labels = {attrs["label"] for _, _, attrs in graph.edges(data=True)}
    assert labels == {"s0", "s1", "s2"}
    diameter = schreier_diameter(graph)
    assert isinstance(diameter, int) and diameter > 0
    assert schreier_diameter(schreier_graph(build_action("ctft", 3))) == schreier_diameter(
        schreier_graph(build_action("ctft", 3))
    )
    split = FiniteAction(("a", "b"), ((0, 1),))
    assert schreier_diameter(schreier_graph(split)) is None
