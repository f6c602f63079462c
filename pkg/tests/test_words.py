import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fockalg.words import (
    BasisCapExceeded,
    BasisIndexer,
    Word,
    concat,
    enumerate_words,
    reverse,
    strip_prefix,
    strip_suffix,
    word,
)

letters = st.lists(st.integers(min_value=1, max_value=3), max_size=6).map(tuple).map(Word)


def test_concat_unit():
    v = word(1, 2)
    assert concat(Word(), v) == v
    assert concat(v, Word()) == v


def test_concat_examples():
    assert str(concat(word(1), word(2))) == "z1 z2"
    assert str(concat(word(1, 2), word(1))) == "z1 z2 z1"


def test_reverse_examples():
    assert reverse(Word()) == Word()
    assert reverse(word(1, 2)) == word(2, 1)
    assert reverse(word(1, 1, 2)) == word(2, 1, 1)


def test_strip_suffix_examples():
    assert strip_suffix(word(1, 2), word(2)) == word(1)
    assert strip_suffix(word(1, 2), word(1)) is None
    w = word(2, 1, 1)
    assert strip_suffix(w, Word()) == w


def test_strip_prefix_examples():
    assert strip_prefix(word(1, 2), word(1)) == word(2)
    assert strip_prefix(word(1, 2), word(2)) is None
    assert strip_prefix(word(1, 2), word(1, 2)) == Word()


@given(u=letters, v=letters)
def test_concat_length_additive(u, v):
    assert len(concat(u, v)) == len(u) + len(v)


@given(w=letters)
def test_reverse_involution(w):
    assert reverse(reverse(w)) == w


@given(t=letters, u=letters)
def test_strip_suffix_of_concat(t, u):
    assert strip_suffix(concat(t, u), u) == t


@given(t=letters, u=letters)
def test_strip_prefix_of_concat(t, u):
    assert strip_prefix(concat(u, t), u) == t


def test_enumerate_counts_and_order():
    assert enumerate_words(2, 0) == [Word()]
    ws = enumerate_words(2, 2)
    assert [str(w) for w in ws] == ["z1 z1", "z1 z2", "z2 z1", "z2 z2"]
    assert len(enumerate_words(3, 2)) == 9


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("k", [0, 1, 3, 5, 8])
def test_enumerate_count_law(n, k):
    assert len(enumerate_words(n, k)) == n**k


def test_enumerate_cap():
    with pytest.raises(BasisCapExceeded):
        enumerate_words(10, 7, cap=10**6)


def test_indexer_roundtrip_and_order():
    for n, N in [(1, 5), (2, 5), (3, 4)]:
        idx = BasisIndexer(n, N)
        assert idx.size == sum(n**k for k in range(N + 1))
        words_in_order = list(idx.words())
        for i, w in enumerate(words_in_order):
            assert idx.index_of(w) == i
            assert idx.word_at(i) == w
        # length-then-lex ordering
        keys = [(len(w), w.letters) for w in words_in_order]
        assert keys == sorted(keys)


def test_indexer_size_formula():
    idx = BasisIndexer(2, 6)
    assert idx.size == (2**7 - 1) // (2 - 1)
    idx3 = BasisIndexer(3, 4)
    assert idx3.size == (3**5 - 1) // 2


def test_indexer_cap_and_env_override(monkeypatch):
    with pytest.raises(BasisCapExceeded):
        BasisIndexer(2, 30)
    monkeypatch.setenv("FOCKALG_BASIS_CAP", "40")
    BasisIndexer(2, 4)  # 31 entries, fits
    with pytest.raises(BasisCapExceeded):
        BasisIndexer(2, 5)  # 63 entries


def test_word_string_roundtrip():
    for w in [Word(), word(1), word(2, 1, 2), word(12, 3)]:
        assert Word.parse(str(w)) == w
    assert Word.parse("") == Word()
    with pytest.raises(ValueError):
        Word.parse("x1")


def test_word_letter_validation():
    with pytest.raises(ValueError):
        Word((0,))
    with pytest.raises(ValueError):
        Word((-1, 2))
