import pytest

from hopfiso.combinatorics import (Mark, all_ones, all_zeros, compositions, marks, omega, omega_inv, steps,
                                   subsequences)


@pytest.mark.parametrize("length", range(1, 8))
def test_composition_count(length):
    assert len(compositions(3, 3 + length)) == 2 ** (length - 1)
    assert len(marks(3, 3 + length)) == 2 ** (length - 1)


def test_compositions_are_lexicographic_and_valid():
    cs = compositions(1, 5)
    assert list(cs) == sorted(cs)
    for c in cs:
        assert c[0] == 1 and c[-1] == 5
        assert all(a < b for a, b in steps(c))
    assert cs[0] == (1, 2, 3, 4, 5)
    assert cs[-1] == (1, 5)


def test_small_cases():
    assert compositions(2, 3) == ((2, 3),)
    assert compositions(1, 3) == ((1, 2, 3), (1, 3))


@pytest.mark.parametrize("i,j", [(1, 2), (1, 3), (2, 6), (1, 8)])
def test_omega_is_bijective(i, j):
    images = {omega(c) for c in compositions(i, j)}
    assert len(images) == len(compositions(i, j))
    for c in compositions(i, j):
        assert omega_inv(omega(c)) == c
        assert omega(c).size == j - i - len(c) + 1
    for e in marks(i, j):
        assert omega(omega_inv(e)) == e


def test_distinguished_marks():
    assert omega((2, 3, 4, 5, 6)) == all_ones(2, 6)
    assert omega((2, 6)) == all_zeros(2, 6)


def test_mark_order():
    e, f = Mark(1, 5, (1, 0, 1)), Mark(1, 5, (0, 0, 1))
    assert e <= all_zeros(1, 5) and f <= all_zeros(1, 5)
    assert all_ones(1, 5) <= e
    assert e <= f and not f <= e
    assert all_ones(1, 5) < e


def test_marks_sorted_by_size():
    sizes = [e.size for e in marks(1, 6)]
    assert sizes == sorted(sizes)
    assert marks(1, 6)[0] == all_ones(1, 6)


def test_subsequences_keep_endpoints():
    seq = (2, 4, 5, 9)
    subs = list(subsequences(seq))
    assert len(subs) == 4
    assert set(subs) == {(2, 4, 5, 9), (2, 4, 9), (2, 5, 9), (2, 9)}


def test_alternating_sums():
    for i, j in [(1, 3), (1, 6), (2, 9)]:
        assert sum((-1) ** len(c) for c in compositions(i, j)) == 0
        for f in marks(i, j):
            if f != all_ones(i, j):
                assert sum((-1) ** e.size for e in marks(i, j) if e <= f) == 0
    # the all-ones mark is the one exception
    assert sum((-1) ** e.size for e in marks(1, 5) if e <= all_ones(1, 5)) == 1


def test_bad_mark_length():
    with pytest.raises(ValueError):
        Mark(1, 4, (1,))
