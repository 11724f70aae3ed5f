import random

import pytest

from affine_flip.affine_core import (
    AffinePermutation,
    GeneratorWord,
    StarValue,
    apply,
    compose,
    coxeter_relations,
    evaluate_word,
    exponent,
    generator,
    identity,
    inverse,
    is_in_B_subgroup,
    is_involution,
    is_translation,
    power,
    random_word,
    residue,
    special_element,
    translation,
    word_for,
)


def test_generator_windows():
    assert generator(3, 0).window == (-1, 2, 3)
    assert generator(3, 1).window == (2, 1, 3)
    assert generator(3, 3).window == (1, 2, 4)
    with pytest.raises(ValueError):
        generator(3, 4)


def test_exponent_and_residue():
    assert exponent(2, 3) == 1
    assert residue(2, 3) == -2
    assert exponent(2, -3) == -1
    assert residue(2, -3) == 2
    assert exponent(3, 3) == 0


def test_star_values():
    assert StarValue(2, -2, 1).to_int() == 3
    assert StarValue.from_int(2, 3) == StarValue(2, -2, 1)
    with pytest.raises(ValueError):
        StarValue(2, 0, 1)


def test_apply_extends_window_oddly_and_periodically():
    u = AffinePermutation(4, (1, 7, 3, 4))
    assert apply(u, 2) == 7
    assert apply(u, -2) == -7
    assert apply(u, 11) == 16
    assert apply(u, 0) == 0
    assert u(9) == 9


@pytest.mark.parametrize(
    "n, window",
    [(3, (2, 3, 4)), (2, (5, 1)), (2, (1, 2, 3)), (3, (1, 1, 2))],
)
def test_invalid_windows(n, window):
    with pytest.raises(ValueError):
        AffinePermutation(n, window)


def test_window_guard():
    with pytest.raises(OverflowError):
        AffinePermutation(2, (1, 2 + 5 * 2**61))


def test_coxeter_element_window():
    for n in range(2, 7):
        N = 2 * n + 1
        c = special_element(n, "c")
        assert c.window == tuple(range(2, n + 1)) + (1 + N,)
        assert evaluate_word(word_for(n, "c")) == c
    assert special_element(2, "c").window == (2, 6)
    assert special_element(3, "c").window == (2, 3, 8)


def test_inverse_of_coxeter_element():
    for n in range(2, 6):
        c = special_element(n, "c")
        assert compose(c, inverse(c)) == identity(n)
        assert compose(inverse(c), c) == identity(n)


def test_hand_checked_special_elements():
    assert special_element(2, "h", 1).window == (4, 2)
    assert special_element(2, "g", 0).window == (-3, 6)
    assert special_element(2, "x", 2).window == (1, 7)
    assert special_element(2, "x", 1).window == (6, 2)
    assert special_element(3, "g", 1).window == (1, -4, 9)
    assert special_element(3, "x", 2).window == (1, 9, 3)
    assert special_element(3, "v").window == (-1, -2, -3)
    assert evaluate_word(GeneratorWord(2, (2, 1, 2))).window == (3, 4)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_special_elements_match_their_words(n):
    cases = [("c", None), ("v", None)]
    cases += [("g", k) for k in range(0, n - 1)]
    cases += [("h", k) for k in range(1, n)]
    cases += [("x", i) for i in range(1, n + 1)]
    cases += [("e", i) for i in range(1, n + 1)]
    for name, param in cases:
        assert evaluate_word(word_for(n, name, param)) == special_element(n, name, param), (name, param)


def test_special_element_parameter_errors():
    with pytest.raises(ValueError):
        special_element(3, "g", 2)
    with pytest.raises(ValueError):
        special_element(3, "h", 0)
    with pytest.raises(ValueError):
        special_element(3, "x")
    with pytest.raises(ValueError):
        special_element(3, "q", 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_coxeter_relations_hold(n):
    for name, word in coxeter_relations(n):
        assert evaluate_word(word) == identity(n), name


def test_generators_are_involutions():
    for n in range(2, 6):
        for i in range(n + 1):
            assert is_involution(generator(n, i))
    assert not is_involution(special_element(3, "c"))


def test_group_law_on_random_words():
    rng = random.Random(7)
    for n in range(2, 6):
        for _ in range(50):
            u = evaluate_word(random_word(n, 12, rng))
            v = evaluate_word(random_word(n, 12, rng))
            w = evaluate_word(random_word(n, 12, rng))
            assert compose(compose(u, v), w) == compose(u, compose(v, w))
            assert compose(u, inverse(u)) == identity(n)
            assert inverse(compose(u, v)) == compose(inverse(v), inverse(u))
            for t in (-20, -3, 1, 5, 17):
                assert apply(compose(u, v), t) == apply(u, apply(v, t))


def test_word_concatenation_is_product():
    rng = random.Random(11)
    for _ in range(30):
        a, b = random_word(3, 8, rng), random_word(3, 8, rng)
        assert evaluate_word(a + b) == compose(evaluate_word(a), evaluate_word(b))
    with pytest.raises(ValueError):
        GeneratorWord(2, (0, 3))
    with pytest.raises(ValueError):
        GeneratorWord(2, (0,)) + GeneratorWord(3, (0,))


def test_power():
    c = special_element(2, "c")
    assert power(c, 0) == identity(2)
    assert power(c, 2) == compose(c, c)
    assert power(c, -1) == inverse(c)


def test_translations():
    t = translation(2, (1, -1))
    assert t.window == (6, -3)
    assert is_translation(t)
    assert not is_translation(special_element(2, "c"))
    for n in range(2, 5):
        for i in range(1, n + 1):
            assert special_element(n, "x", i) == translation(n, [1 if j == i else 0 for j in range(1, n + 1)])


def test_translations_form_an_abelian_subgroup():
    rng = random.Random(3)
    for _ in range(20):
        a = translation(3, [rng.randint(-3, 3) for _ in range(3)])
        b = translation(3, [rng.randint(-3, 3) for _ in range(3)])
        assert compose(a, b) == compose(b, a)
        assert is_translation(compose(a, inverse(b)))


def test_b_subgroup_parity():
    for n in range(2, 5):
        assert is_in_B_subgroup(generator(n, 0))
        assert not is_in_B_subgroup(generator(n, n))
        assert is_in_B_subgroup(evaluate_word(GeneratorWord(n, (n, n - 1, n))))
    rng = random.Random(5)
    for _ in range(100):
        word = random_word(3, 10, rng)
        expected = word.letters.count(3) % 2 == 0
        assert is_in_B_subgroup(evaluate_word(word)) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_sign_changes_and_translations_are_permuted_by_conjugation(n):
    for j in range(1, n):
        s = generator(n, j)
        for i in range(1, n + 1):
            image = {j: j + 1, j + 1: j}.get(i, i)
            assert compose(compose(s, special_element(n, "e", i)), s) == special_element(n, "e", image)
            assert compose(compose(s, special_element(n, "x", i)), s) == special_element(n, "x", image)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            e = special_element(n, "e", j)
            x = special_element(n, "x", i)
            expected = inverse(x) if i == j else x
            assert compose(compose(e, x), e) == expected
            assert compose(e, special_element(n, "e", i)) == compose(special_element(n, "e", i), e)


def test_apply_is_bijective_on_windows():
    rng = random.Random(13)
    for n in range(2, 6):
        N = 2 * n + 1
        span = range(-3 * N, 3 * N + 1)
        for _ in range(20):
            u = evaluate_word(random_word(n, 10, rng))
            images = [apply(u, t) for t in span]
            assert len(set(images)) == len(images)
            u_inv = inverse(u)
            assert [apply(u_inv, value) for value in images] == list(span)
