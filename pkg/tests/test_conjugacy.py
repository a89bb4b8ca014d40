import pytest
from hypothesis import given, strategies as st

from mrq.conjugacy import (
    are_conjugate,
    centralizer_generator,
    primitive_root,
    simultaneous_conjugator,
)
from mrq.words import Alphabet, Word, conjugate, parse_word, translation_length, words_up_to

X = Alphabet.standard(2)


def W(text):
    return parse_word(text, X)


words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=10).map(lambda s: Word(X, s))
BALL = words_up_to(X, 5)


def brute_conjugator(pairs):
    """Shortest S (ties by printed form) in the radius-5 ball solving every pair."""
    for s in sorted(BALL, key=lambda u: u.sort_key()):
        if all(conjugate(a, s) == b for a, b in pairs):
            return s
    return None


@pytest.mark.parametrize("u, root", [
    ("x1 x2 x1 x2", "x1 x2"),
    ("x1", "x1"),
    ("x1 x2^2 x1^-1", "x1 x2 x1^-1"),
])
def test_primitive_root(u, root):
    assert primitive_root(W(u)) == W(root)
    assert centralizer_generator(W(u)) == W(root)


def test_primitive_root_rejects_identity():
    with pytest.raises(ValueError):
        primitive_root(X.identity())


def test_are_conjugate_examples():
    ans = are_conjugate(W("x1 x2"), W("x2 x1"))
    assert ans.found and ans.witness == W("x1^-1")
    assert not are_conjugate(W("x1"), W("x2")).found
    assert not are_conjugate(W("x1"), W("x1^-1")).found


@given(words, words.filter(lambda u: len(u) <= 4))
def test_are_conjugate_round_trip(u, s):
    v = conjugate(u, s)
    ans = are_conjugate(u, v)
    assert ans.found
    assert conjugate(u, ans.witness) == v
    assert translation_length(u) == translation_length(v)
    # the witness is the shortest one, ties broken by printed form
    if not u.is_identity():
        best = brute_conjugator([(u, v)])
        if best is not None:
            assert ans.witness == best


@given(words.filter(lambda u: len(u) <= 5), words.filter(lambda u: len(u) <= 5))
def test_are_conjugate_matches_brute_force(u, v):
    found = are_conjugate(u, v).found
    if found:
        assert translation_length(u) == translation_length(v)
    # any conjugator between words of length <= 5 has length <= 5 after trimming
    assert found == (brute_conjugator([(u, v)]) is not None)


def test_simultaneous_examples():
    ans = simultaneous_conjugator((W("x1"), W("x2")), (W("x2 x1 x2^-1"), W("x2")))
    assert ans.found and ans.witness == W("x2")
    assert not simultaneous_conjugator((W("x1"), W("x2")), (W("x1"), W("x2 x1"))).found
    s = W("x1 x2")
    A = (W("x1 x2"), W("x2"))
    B = tuple(conjugate(a, s) for a in A)
    ans = simultaneous_conjugator(A, B)
    assert ans.found and all(conjugate(a, ans.witness) == b for a, b in zip(A, B))


def test_simultaneous_degenerate_cases():
    e = X.identity()
    assert simultaneous_conjugator((e, e), (e, e)).found
    assert not simultaneous_conjugator((e,), (W("x1"),)).found
    ans = simultaneous_conjugator((e, W("x1")), (e, W("x2 x1 x2^-1")))
    assert ans.found and ans.witness == W("x2")
    with pytest.raises(ValueError):
        simultaneous_conjugator((W("x1"),), (W("x1"), W("x2")))


@given(st.lists(words, min_size=1, max_size=3), words.filter(lambda u: len(u) <= 6))
def test_simultaneous_round_trip(A, s):
    B = [conjugate(a, s) for a in A]
    ans = simultaneous_conjugator(A, B)
    assert ans.found
    assert all(conjugate(a, ans.witness) == b for a, b in zip(A, B))


short = words.filter(lambda u: len(u) <= 3)


@given(st.tuples(short, short), st.tuples(short, short))
def test_simultaneous_matches_brute_force(A, B):
    ans = simultaneous_conjugator(A, B)
    brute = brute_conjugator(list(zip(A, B)))
    if brute is not None:
        assert ans.found
    if ans.found:
        assert all(conjugate(a, ans.witness) == b for a, b in zip(A, B))
