import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from circular.lazy_core import deep_call, defer, measure
from circular.memo_fib import fast_fib
from circular.streams import (
    DuplicateDetected,
    EmptyStream,
    cons,
    fib_list,
    from_iterable,
    hamming,
    hamming_staged,
    head,
    index,
    is_empty,
    merge3,
    merge_dedup,
    merge_nodup,
    nil,
    ones,
    posints,
    powers,
    primes,
    products,
    products_inf,
    smap,
    tail,
    take,
)

HAMMING_11 = [1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15]


def multiples(k):
    return smap(lambda x: x * k, posints())


def exploding():
    raise AssertionError("tail must not be forced")


class TestCons:
    def test_head_does_not_force_tail(self):
        s = cons(1, exploding)
        assert head(s) == 1
        assert tail(s).state == "deferred"

    def test_tail_then_head(self):
        assert head(tail(cons(1, cons(2, nil())))) == 2

    def test_nil(self):
        assert is_empty(nil())
        with pytest.raises(EmptyStream):
            head(nil())
        with pytest.raises(EmptyStream):
            tail(nil())

    def test_properties_match_functions(self):
        s = cons(7, nil())
        assert s.head == 7 and s.tail.is_empty()


class TestTakeIndex:
    def test_ones(self):
        assert take(3, ones()) == [1, 1, 1]

    def test_posints(self):
        assert take(5, posints()) == [1, 2, 3, 4, 5]
        assert index(1, posints()) == 1
        assert index(100, posints()) == 100

    def test_take_zero_forces_nothing(self):
        s = smap(lambda x: x, posints())
        assert take(0, s) == []
        assert s.state == "deferred"

    def test_take_forces_exact_prefix(self):
        s = posints()
        take(3, s)
        third_tail = tail(tail(tail(s)))
        assert third_tail.state == "deferred"

    def test_runs_out(self):
        with pytest.raises(EmptyStream):
            take(2, cons(1, nil()))
        with pytest.raises(EmptyStream):
            index(3, from_iterable([1, 2]))

    def test_domain(self):
        with pytest.raises(ValueError):
            take(-1, ones())
        with pytest.raises(ValueError):
            index(0, ones())


class TestMap:
    def test_succ(self):
        assert take(3, smap(lambda x: x + 1, posints())) == [2, 3, 4]

    def test_double(self):
        assert take(4, smap(lambda x: x * 2, posints())) == [2, 4, 6, 8]

    def test_nil(self):
        assert is_empty(smap(lambda x: x, nil()))

    def test_error_surfaces_at_its_position(self):
        s = smap(lambda x: 1 // (3 - x), posints())
        assert take(2, s) == [0, 1]
        with pytest.raises(ZeroDivisionError):
            take(3, s)


class TestMerge:
    def test_dedup_golden(self):
        expected = oracles.sorted_union(range(2, 40, 2), range(3, 40, 3))[:5]
        assert expected == [2, 3, 4, 6, 8]
        assert take(5, merge_dedup(multiples(2), multiples(3))) == expected

    def test_dedup_idempotent(self):
        s = multiples(7)
        assert take(20, merge_dedup(s, s)) == take(20, s)

    def test_merge3_golden(self):
        expected = oracles.sorted_union(range(2, 30, 2), range(3, 30, 3), range(5, 30, 5))[:4]
        assert expected == [2, 3, 4, 5]
        assert take(4, merge3(multiples(2), multiples(3), multiples(5))) == expected

    def test_nodup(self):
        a = from_iterable([1, 4, 5])
        b = from_iterable([2, 3, 6])
        assert take(4, merge_nodup(a, b)) == [1, 2, 3, 4]

    def test_nodup_detects_equal_heads(self):
        with pytest.raises(DuplicateDetected):
            head(merge_nodup(multiples(2), multiples(2)))

    def test_finite_inputs(self):
        assert list(merge_dedup(from_iterable([1, 3]), from_iterable([2, 3, 4]))) == [1, 2, 3, 4]
        assert list(merge_nodup(nil(), from_iterable([5]))) == [5]

    @given(
        st.sets(st.integers(0, 300), max_size=40),
        st.sets(st.integers(0, 300), max_size=40),
    )
    def test_dedup_is_sorted_union(self, xs, ys):
        got = list(merge_dedup(from_iterable(sorted(xs)), from_iterable(sorted(ys))))
        assert got == oracles.sorted_union(xs, ys)

    @given(st.sets(st.integers(0, 300), max_size=60), st.randoms(use_true_random=False))
    def test_nodup_on_disjoint_split(self, xs, rnd):
        a = sorted(x for x in xs if rnd.random() < 0.5)
        b = sorted(set(xs) - set(a))
        assert list(merge_nodup(from_iterable(a), from_iterable(b))) == sorted(xs)


class TestSharing:
    def test_ones_is_one_cell(self):
        with measure() as cost:
            assert take(1000, ones()) == [1] * 1000
        assert cost.allocations <= 2

    def test_ones_tail_is_itself(self):
        s = ones()
        assert tail(s) is s

    def test_posints_grows(self):
        with measure() as cost:
            take(1000, posints())
        assert cost.allocations >= 1000

    @pytest.mark.parametrize("gen", [ones, posints, hamming, hamming_staged, fib_list, primes])
    def test_construction_forces_nothing(self, gen):
        with measure() as cost:
            gen()
        assert cost.forces == 0

    def test_products_construction_forces_nothing(self):
        with measure() as cost:
            products([2, 3, 5])
            products_inf(smap(lambda p: p * p, primes()))
        assert cost.forces == 0


class TestHamming:
    def test_golden(self):
        assert take(11, hamming()) == HAMMING_11
        assert index(1, hamming()) == 1

    def test_against_triple_loop(self):
        assert take(200, hamming()) == oracles.hamming_upto(10**6)[:200]

    def test_staged_golden(self):
        assert take(11, hamming_staged()) == HAMMING_11

    def test_staged_powers_of_two(self):
        assert take(4, powers(2)) == [1, 2, 4, 8]

    def test_staged_matches_merge3(self):
        assert take(1000, hamming_staged()) == take(1000, hamming())

    def test_staged_never_duplicates(self):
        assert len(take(10_000, hamming_staged())) == 10_000

    def test_big_values_are_exact(self):
        value = index(5000, hamming())
        assert value == oracles.hamming_upto(value)[-1]
        assert value > 2**32


class TestProducts:
    def test_empty_is_one(self):
        s = products([])
        assert take(1, s) == [1]
        assert is_empty(tail(s))

    def test_hamming_generalised(self):
        assert take(11, products([2, 3, 5])) == HAMMING_11

    def test_single_factor(self):
        assert take(5, products([3])) == [1, 3, 9, 27, 81]

    @pytest.mark.parametrize("factors", [[2], [2, 3], [3, 4, 5], [2, 5, 7, 11], [7, 9, 10, 11]])
    def test_against_enumeration(self, factors):
        expected = oracles.products_upto(factors, 10**4)
        assert take(len(expected), products(factors)) == expected

    def test_no_duplicates_10000(self):
        xs = take(10_000, products([2, 3, 5]))
        assert all(a < b for a, b in zip(xs, xs[1:]))


class TestProductsInf:
    def test_primes(self):
        assert take(10, primes()) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

    def test_over_primes_is_posints(self):
        assert take(10, products_inf(primes())) == list(range(1, 11))

    def test_over_primes_long(self):
        assert deep_call(take, 2000, products_inf(primes())) == list(range(1, 2001))

    def test_over_squared_primes(self):
        expected = oracles.products_upto([p * p for p in take(30, primes())], 10**4)[:50]
        # products of squared primes are exactly the perfect squares
        assert expected == [k * k for k in range(1, 51)]
        assert take(50, products_inf(smap(lambda p: p * p, primes()))) == expected

    def test_over_squared_primes_10000_no_duplicates(self):
        xs = deep_call(take, 10_000, products_inf(smap(lambda p: p * p, primes())))
        assert xs == [k * k for k in range(1, 10_001)]

    def test_head_is_one_without_touching_factors(self):
        factors = defer(exploding)
        assert head(products_inf(factors)) == 1  # type: ignore[arg-type]

    def test_finite_factor_stream(self):
        assert take(11, products_inf(from_iterable([2, 3, 5]))) == HAMMING_11
        assert list(products_inf(from_iterable([]))) == [1]


class TestFibList:
    def test_golden(self):
        assert take(5, fib_list()) == [1, 1, 2, 3, 5]
        assert index(7, fib_list()) == 13

    def test_against_fast_fib(self):
        assert index(30, fib_list()) == 832040 == fast_fib(30)
        assert take(100, fib_list()) == [fast_fib(n) for n in range(1, 101)]

    @pytest.mark.parametrize("n", [100, 200, 400])
    def test_linear_forcing(self, n):
        with measure() as cost:
            take(n, fib_list())
        assert cost.forces / n <= 3


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([hamming, hamming_staged, fib_list, posints, primes]), st.integers(0, 300))
def test_prefix_determinism(gen, n):
    assert take(n, gen()) == take(n, gen())


@settings(max_examples=20, deadline=None)
@given(
    st.sampled_from(
        [hamming, hamming_staged, lambda: products([2, 3, 5, 7]), lambda: products_inf(primes())]
    ),
    st.integers(2, 1000),
)
def test_strictly_increasing(gen, n):
    xs = take(n, gen())
    assert all(a < b for a, b in zip(xs, xs[1:]))


def test_cross_program_equivalence():
    a = take(1000, hamming())
    assert a == take(1000, hamming_staged()) == take(1000, products([2, 3, 5]))
