import pytest
from hypothesis import assume, given, settings, strategies as st

from helpers import commuting_pairs, matrices, ord3_brute, periodic_words

from synczeta import exact
from synczeta.errors import (HorizonTooSmall, InconsistentSignedSystem, InvalidInput, NotTame, NotZeroOne,
                             ShapeMismatch)
from synczeta.models import (CountSequence, FiniteMaps, counts_circle_power, counts_finite_maps,
                             counts_s_integer, counts_signed_system, counts_subshift, counts_toral,
                             counts_toral_oracle, detect_eventual_period, generate_counts, lefschetz_counts,
                             smith_diagonal, torus_homology)

SWAP_PAIR = ((0, 2, 1), (1, 0, 2))


def test_finite_maps_noncommuting_swaps():
    c = counts_finite_maps(*SWAP_PAIR, 6)
    assert c.counts[:2] == (0, 3)
    assert c.counts == (0, 3, 0, 3, 0, 3)
    assert c.meta == {"commuting": False, "bijective": True}


def test_finite_maps_identical():
    s = (1, 2, 0)
    assert counts_finite_maps(s, s, 5).counts == (3,) * 5


def test_finite_maps_three_cycle_vs_identity():
    c = counts_finite_maps((1, 2, 0), (0, 1, 2), 9)
    assert c.counts == tuple(3 if n % 3 == 0 else 0 for n in range(1, 10))


def test_finite_maps_rejects_bad_images():
    with pytest.raises(InvalidInput):
        FiniteMaps((0, 3), (0, 1))
    with pytest.raises(ShapeMismatch):
        FiniteMaps((0,), (0, 1))


def test_eventual_period_examples():
    assert detect_eventual_period(counts_finite_maps(*SWAP_PAIR, 10)) == (1, 2)
    assert detect_eventual_period(counts_finite_maps((0, 0, 1), (0, 0, 1), 10))[1] == 1
    # constant map against the identity: c_1 = 1, then c_n = 1
    assert detect_eventual_period(counts_finite_maps((2, 2, 2), (0, 1, 2), 10)) == (1, 1)


def test_eventual_period_with_tail():
    # sigma1 walks 0 -> 1 -> 2 -> 2, sigma2 fixes everything but 0 -> 2
    c = counts_finite_maps((1, 2, 2), (2, 1, 2), 12)
    n0, period = detect_eventual_period(c)
    vals = c.counts
    assert all(vals[n - 1 + period] == vals[n - 1] for n in range(n0, 10))
    if n0 > 1:
        assert vals[n0 - 2 + period] != vals[n0 - 2]


def test_eventual_period_recomputes_short_sequences():
    c = counts_finite_maps((1, 2, 3, 4, 0), (0, 1, 2, 3, 4), 2)
    assert detect_eventual_period(c) == (1, 5)


def test_eventual_period_horizon():
    big = tuple(list(range(1, 7)) + [0]) + tuple(7 + x for x in (1, 2, 3, 4, 0))
    c = counts_finite_maps(big, tuple(range(12)), 4)
    with pytest.raises(HorizonTooSmall):
        detect_eventual_period(c, max_horizon=10)


@settings(max_examples=100, deadline=None)
@given(commuting_pairs())
def test_commuting_permutations_palindrome_and_start(pair):
    c = counts_finite_maps(*pair, 200)
    n0, period = detect_eventual_period(c)
    assert n0 == 1
    for k in range(1, period // 2 + 1):
        assert c[k] == c[period - k]


@pytest.mark.parametrize("d1,d2,head", [(2, 1, (1, 3, 7, 15)), (3, 2, (1, 5, 19))])
def test_circle_power(d1, d2, head):
    assert counts_circle_power(d1, d2, len(head)).counts == head


def test_circle_power_non_tame():
    c = counts_circle_power(2, -2, 6)
    assert c.counts == (4, None, 16, None, 64, None)
    assert not c.tame
    with pytest.raises(NotTame) as e:
        c.require_tame()
    assert e.value.n == 2


def test_circle_matches_one_by_one_toral():
    for d1 in range(-10, 11):
        for d2 in range(-10, 11):
            assert counts_circle_power(d1, d2, 6).counts == counts_toral([[d1]], [[d2]], 6).counts


def test_toral_examples():
    assert counts_toral([[2]], [[1]], 5).counts == tuple(2 ** n - 1 for n in range(1, 6))
    c = counts_toral([[3, 0], [0, 1]], [[2, 0], [0, 5]], 8)
    assert c.counts == tuple((3 ** n - 2 ** n) * (5 ** n - 1) for n in range(1, 9))
    assert counts_toral([[2, 1], [1, 1]], [[1, 0], [0, 1]], 1).counts == (1,)


def test_toral_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        counts_toral([[1, 0], [0, 1]], [[1]], 2)


def test_toral_oracle_examples():
    assert counts_toral_oracle([[2]], [[1]], 3) == 7
    assert counts_toral_oracle([[2, 0], [0, 2]], [[1, 0], [0, 1]], 1) == 1
    assert counts_toral_oracle([[2, 1], [1, 1]], [[1, 0], [0, 1]], 2) == 5
    with pytest.raises(NotTame):
        counts_toral_oracle([[1]], [[1]], 1)


def test_smith_diagonal_textbook():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert smith_diagonal([[0, 0], [0, 0]]) == [0, 0]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: st.tuples(matrices(d), matrices(d))), st.integers(1, 6))
def test_toral_counts_equal_smith_oracle(ab, n):
    a, b = ab
    c = counts_toral(a, b, n)
    assume(c[n] is not None)
    assert c[n] == counts_toral_oracle(a, b, n)


def test_s_integer_solenoid():
    assert counts_s_integer(6, 3, (3,), 6).counts == (1, 1, 7, 5, 31, 7)


def test_s_integer_solenoid_against_ord3():
    c = counts_s_integer(6, 3, (3,), 60)
    for n in range(1, 61):
        x = 2 ** n - 1
        assert c[n] == x // 3 ** ord3_brute(x)


def test_s_integer_other_prime():
    assert counts_s_integer(6, 3, (2,), 10).counts == tuple(6 ** n - 3 ** n for n in range(1, 11))


def test_s_integer_empty_is_circle():
    for a in range(-6, 7):
        for b in range(-6, 7):
            if a and b:
                assert counts_s_integer(a, b, (), 8).counts == counts_circle_power(a, b, 8).counts


def test_s_integer_opposite_signs():
    c = counts_s_integer(3, -3, (), 4)
    assert c.counts == (6, None, 54, None)


def test_subshift_golden_mean():
    assert counts_subshift([[1, 1], [1, 0]], 5).counts == (1, 3, 4, 7, 11)


def test_subshift_identity_and_full():
    assert counts_subshift([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 4).counts == (3,) * 4
    assert counts_subshift([[1, 1], [1, 1]], 5).counts == (2, 4, 8, 16, 32)


def test_subshift_rejects_non_binary():
    with pytest.raises(NotZeroOne):
        counts_subshift([[2]], 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda d: matrices(d, 0, 1)))
def test_subshift_trace_equals_word_enumeration(a):
    n_max = 8 if len(a) <= 2 else (6 if len(a) == 3 else 5)
    c = counts_subshift(a, n_max)
    for n in range(1, n_max + 1):
        assert c[n] == periodic_words(a, n)


def test_signed_system():
    ones, ident2 = [[1, 1], [1, 1]], [[1, 0], [0, 1]]
    assert counts_signed_system([(ones, 1), (ident2, -1)], 5).counts == tuple(2 ** n - 2 for n in range(1, 6))
    assert counts_signed_system([([[1, 1], [1, 0]], 1)], 5).counts == counts_subshift([[1, 1], [1, 0]], 5).counts
    with pytest.raises(InconsistentSignedSystem) as e:
        counts_signed_system([([[1]], 1), (ident2, -1)], 3)
    assert e.value.n == 1


def test_lefschetz_counts():
    h = torus_homology([[2, 0], [0, 3]])
    assert lefschetz_counts(h, 5) == [(1 - 2 ** n) * (1 - 3 ** n) for n in range(1, 6)]
    assert lefschetz_counts([(0, [[1]])], 4) == [1] * 4
    assert lefschetz_counts([(0, [[1]]), (1, [[2]])], 4) == [1 - 2 ** n for n in range(1, 5)]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda d: matrices(d)))
def test_lefschetz_modulus_equals_toral_count(f):
    import numpy as np
    eig = np.linalg.eigvals(np.array(f, dtype=float))
    assume(all(abs(abs(x) - 1) > 1e-6 for x in eig))
    ident = exact.identity(len(f))
    c = counts_toral(f, ident, 8)
    assume(c.tame)
    assert [abs(x) for x in lefschetz_counts(torus_homology(f), 8)] == list(c.counts)


def test_count_sequence_rules():
    with pytest.raises(InvalidInput):
        CountSequence(FiniteMaps((0,), (0,)), (-1,))
    c = CountSequence.from_values([1, -2, 3])
    assert c[2] == -2 and c.n_max == 3
    with pytest.raises(HorizonTooSmall):
        c.require_tame(5)


def test_generate_counts_dispatch():
    from synczeta.models import CirclePower, HomologyData
    assert generate_counts(CirclePower(2, 1), 3).counts == (1, 3, 7)
    with pytest.raises(InvalidInput):
        generate_counts(HomologyData(((0, [[1]]),)), 3)
