import itertools

import numpy as np
import pytest

from heckecat import CartanType, build_group
from heckecat.errors import BadElement, BadGeneratorIndex, GroupTooLarge, UnsupportedType
from heckecat.oracle import bruhat_by_subword, reduced_words

from conftest import grp

TYPES = ["A1", "A2", "A3", "B2", "B3", "G2"]


def _inversions(p):
    return sum(p[i] > p[j] for i in range(len(p)) for j in range(i + 1, len(p)))


@pytest.mark.parametrize(
    "name, order, top",
    [("A1", 2, 1), ("A2", 6, 3), ("A3", 24, 6), ("A4", 120, 10), ("B2", 8, 4), ("C3", 48, 9), ("G2", 12, 6), ("D4", 192, 12)],
)
def test_order_and_longest_length(name, order, top):
    g = grp(name)
    assert g.order == order
    assert g.ell(g.w0) == top
    assert g.positive_root_count == top


def test_rank1_and_identity():
    g = grp("A1")
    assert [g.word_str(w) for w in g] == ["e", "1"]


def test_type_a_matches_permutations():
    # words act on positions: s_i swaps entries i and i+1
    g = grp("A3")
    perms = {}
    for w in g:
        p = list(range(4))
        for s in g.reduced_word(w):
            p[s - 1], p[s] = p[s], p[s - 1]
        perms[w] = tuple(p)
    assert len(set(perms.values())) == 24
    for w, p in perms.items():
        assert g.ell(w) == _inversions(p)


def test_multiply_examples(A2):
    s1, s2 = A2.gen(1), A2.gen(2)
    assert A2.multiply(s1, s1) == A2.identity
    assert A2.word_str(A2.multiply(s1, s2)) == "12"
    assert A2.multiply(A2.element("121"), A2.element("212")) == A2.identity


def test_inverse_and_length(A2):
    assert A2.inverse(A2.element("12")) == A2.element("21")
    assert A2.ell(A2.w0) == 3
    assert grp("B2").ell(grp("B2").w0) == 4


def test_descents(A2):
    assert A2.descents(A2.identity, "left") == frozenset()
    assert A2.descents(A2.element("12"), "left") == {1}
    assert A2.descents(A2.w0, "right") == {1, 2}


def test_bruhat_examples(A2):
    assert A2.bruhat_leq(A2.gen(1), A2.element("21"))
    assert not A2.bruhat_leq(A2.gen(1), A2.gen(2))
    assert all(A2.bruhat_leq(A2.identity, w) for w in A2)


def test_words(A2):
    assert A2.from_word([]) == A2.identity
    assert A2.from_word([1, 2, 1]) == A2.from_word([2, 1, 2]) == A2.w0
    assert A2.reduced_word(A2.w0) == (1, 2, 1)
    with pytest.raises(BadGeneratorIndex):
        A2.from_word([3])
    with pytest.raises(BadGeneratorIndex):
        A2.gen(0)


def test_element_parsing(A2):
    assert A2.element("e") == A2.identity
    assert A2.element("w0") == A2.w0
    assert A2.element([2, 1]) == A2.element("21")
    assert A2.element("1 2 1") == A2.w0
    with pytest.raises(BadElement):
        A2.element("12x")


def test_errors():
    with pytest.raises(UnsupportedType):
        CartanType.parse("Z9")
    with pytest.raises(UnsupportedType):
        CartanType.parse("G3")
    with pytest.raises(GroupTooLarge):
        build_group("E8")
    with pytest.raises(GroupTooLarge):
        build_group("A5", cap=100)


def test_type_c_is_b():
    assert grp("C3").order == grp("B3").order
    assert str(CartanType.parse("C2")) in ("B2", "C2")


@pytest.mark.parametrize("name", TYPES)
def test_length_changes_by_one(name):
    g = grp(name)
    for w in g:
        for s in g.generators():
            assert abs(g.ell(g.rmul(w, s)) - g.ell(w)) == 1
            assert abs(g.ell(g.lmul(s, w)) - g.ell(w)) == 1


@pytest.mark.parametrize("name", TYPES)
def test_group_laws(name):
    g = grp(name)
    e = g.identity
    ws = list(g)
    for a in ws:
        assert g.multiply(a, g.inverse(a)) == e
        assert g.ell(g.inverse(a)) == g.ell(a)
        assert g.from_word(g.reduced_word(a)) == a
        assert g.bruhat_leq(e, a) and g.bruhat_leq(a, g.w0)
    rng = np.random.default_rng(0)
    for a, b, c in rng.integers(0, g.order, size=(50, 3)):
        a, b, c = int(a), int(b), int(c)
        assert g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c))


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "G2"])
def test_bruhat_matches_subword_oracle(name):
    g = grp(name)
    for a, b in itertools.product(g, g):
        assert g.bruhat_leq(a, b) == bruhat_by_subword(g, a, b)


def test_bruhat_matrix_is_partial_order(A3):
    m = A3.bruhat_matrix().astype(bool)
    n = A3.order
    assert m.diagonal().all()
    assert not (m & m.T & ~np.eye(n, dtype=bool)).any()
    # transitivity: leq composed with leq stays inside leq
    assert ((m.astype(int) @ m.astype(int)) > 0).astype(bool).tolist() == m.tolist()


def test_reduced_word_is_shortlex_minimal(A3):
    for w in A3:
        assert A3.reduced_word(w) == min(reduced_words(A3, w))


def test_w0_reduced_word_count(A3):
    # S4 longest element has 16 reduced words
    assert len(reduced_words(A3, A3.w0)) == 16
