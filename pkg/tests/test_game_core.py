"""Exact-arithmetic game primitives: graph, stubbornness, cost, flips."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prefgames import (
    EvenN,
    Graph,
    InvalidStubbornness,
    StubbornnessProfile,
    as_bits,
    cost,
    flip,
    improving_flip,
    integer_stubbornness,
    is_equilibrium,
    is_stubborn,
    majority,
)

from conftest import (
    ALPHA_POOL,
    complete_graph,
    path_graph,
    random_graph,
    random_profile,
    star_graph,
    uniform_profile,
)


class TestGraph:
    def test_basic_shape(self):
        g = Graph(4, [(0, 1), (1, 2), (0, 2)])
        assert g.n == 4
        assert g.m == 3
        assert g.degree(1) == 2
        assert g.degree(3) == 0
        assert g.has_edge(0, 2) and g.has_edge(2, 0)
        assert not g.has_edge(0, 3)

    def test_edges_normalized_sorted(self):
        g = Graph(3, [(2, 1), (1, 0)])
        assert g.edges == ((0, 1), (1, 2))

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph(3, [(1, 1)])

    def test_rejects_duplicate(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Graph(3, [(0, 3)])
        with pytest.raises(ValueError):
            Graph(0, [])
        Graph(1, [])  # a single vertex is fine

    def test_equality_and_hash(self):
        a = Graph(3, [(0, 1)])
        b = Graph(3, [(1, 0)])
        assert a == b and hash(a) == hash(b)
        assert a != Graph(3, [(0, 2)])


class TestIntegerStubbornness:
    @pytest.mark.parametrize(
        "alpha,expected",
        [
            (Fraction(1, 2), 1),
            (Fraction(1, 3), 0),
            (Fraction(9, 10), 9),
            (Fraction(2, 3), 2),
            (Fraction(3, 5), 1),
            (Fraction(3, 4), 3),
        ],
    )
    def test_values(self, alpha, expected):
        assert integer_stubbornness(alpha) == expected

    @pytest.mark.parametrize("bad", [0, 1, Fraction(3, 2), Fraction(-1, 2)])
    def test_rejects_outside_open_interval(self, bad):
        with pytest.raises(InvalidStubbornness):
            integer_stubbornness(Fraction(bad))

    @given(
        p=st.integers(min_value=1, max_value=400),
        q=st.integers(min_value=2, max_value=400),
    )
    def test_matches_rational_floor(self, p, q):
        if p >= q:
            return
        alpha = Fraction(p, q)
        assert integer_stubbornness(alpha) == int(alpha / (1 - alpha))


class TestProfile:
    def test_caches_integer_levels(self):
        prof = StubbornnessProfile([Fraction(1, 3), Fraction(9, 10)])
        assert prof.a == (0, 9)
        assert len(prof) == 2
        assert prof[1] == Fraction(9, 10)

    def test_rejects_invalid_alpha(self):
        with pytest.raises(InvalidStubbornness):
            StubbornnessProfile([Fraction(1, 2), Fraction(1)])


class TestIsStubborn:
    def test_isolated_vertex_always_stubborn(self):
        g = Graph(5, [])
        assert is_stubborn(g, uniform_profile(5, Fraction(1, 3)), 0)

    def test_full_degree_always_stubborn(self):
        g = complete_graph(5)
        assert all(
            is_stubborn(g, uniform_profile(5, Fraction(1, 3)), v) for v in range(5)
        )

    def test_path_endpoint_low_alpha_not_stubborn(self):
        g = path_graph(5)
        prof = uniform_profile(5, Fraction(1, 3))
        assert not is_stubborn(g, prof, 0)  # degree 1, a=0, min{1,3}=1 > 0


class TestCost:
    def test_isolated_truthful_is_free(self):
        g = Graph(1, [])
        prof = uniform_profile(1, Fraction(1, 3))
        assert cost(g, prof, (0,), (0,), 0) == 0

    def test_isolated_lying_costs_alpha(self):
        g = Graph(1, [])
        prof = uniform_profile(1, Fraction(1, 3))
        assert cost(g, prof, (0,), (1,), 0) == Fraction(1, 3)

    def test_triangle_disagreeing_neighbors(self):
        g = complete_graph(3)
        prof = uniform_profile(3, Fraction(1, 2))
        assert cost(g, prof, (0, 0, 0), (0, 1, 1), 0) == 1

    @given(st.data())
    def test_bounds(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        n = rng.randrange(2, 9)
        g = random_graph(n, 0.5, rng)
        prof = random_profile(n, rng)
        beliefs = tuple(rng.randrange(2) for _ in range(n))
        state = tuple(rng.randrange(2) for _ in range(n))
        for v in range(n):
            c = cost(g, prof, beliefs, state, v)
            assert 0 <= c <= prof[v] + (1 - prof[v]) * g.degree(v)


class TestImprovingFlip:
    def test_star_center_three_disagreeing(self):
        g = star_graph(4)
        prof = uniform_profile(4, Fraction(1, 2))  # a = 1
        beliefs = (0, 0, 0, 0)
        assert improving_flip(g, prof, beliefs, (0, 1, 1, 1), 0)

    def test_star_center_tie_never_moves(self):
        g = star_graph(4)
        prof = uniform_profile(4, Fraction(1, 2))
        beliefs = (0, 0, 0, 0)
        # two disagree, one agrees: advantage 1 = a exactly, a tie
        assert not improving_flip(g, prof, beliefs, (0, 1, 1, 0), 0)

    def test_isolated_liar_returns_home(self):
        g = Graph(1, [])
        prof = uniform_profile(1, Fraction(1, 3))
        assert improving_flip(g, prof, (0,), (1,), 0)

    @given(st.data())
    def test_integer_shortcut_matches_exact_costs(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        n = rng.randrange(1, 9)
        g = random_graph(n, rng.choice([0.2, 0.5, 0.8]), rng)
        prof = random_profile(n, rng)
        beliefs = tuple(rng.randrange(2) for _ in range(n))
        state = tuple(rng.randrange(2) for _ in range(n))
        for v in range(n):
            direct = cost(g, prof, beliefs, state, v) > cost(
                g, prof, beliefs, flip(state, v), v
            )
            assert improving_flip(g, prof, beliefs, state, v) == direct


class TestEquilibrium:
    def test_complete_graph_consensus_truthful(self):
        g = complete_graph(5)
        prof = uniform_profile(5, Fraction(1, 2))
        for bits in [(0,) * 5, (1,) * 5]:
            assert is_equilibrium(g, prof, bits, bits)
        # A truthful minority believer faces 3-vs-1 disagreement; with
        # tolerance 1 the advantage of 2 exceeds it, so this is not stable.
        assert not is_equilibrium(g, prof, (1, 0, 1, 0, 1), (1, 0, 1, 0, 1))

    def test_path_truthful_not_equilibrium(self):
        g = path_graph(3)
        prof = uniform_profile(3, Fraction(1, 3))
        assert not is_equilibrium(g, prof, (0, 1, 0), (0, 1, 0))

    @given(st.data())
    def test_truthful_stubborn_profiles_property(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        n = rng.randrange(1, 8)
        g = random_graph(n, 0.5, rng)
        # Tolerance >= n makes everyone stubborn regardless of degree.
        prof = uniform_profile(n, Fraction(2 * n + 1, 2 * n + 2))
        beliefs = tuple(rng.randrange(2) for _ in range(n))
        assert all(is_stubborn(g, prof, v) for v in range(n))
        assert is_equilibrium(g, prof, beliefs, beliefs)


class TestMajorityAndBits:
    def test_values(self):
        assert majority((0, 0, 0)) == 0
        assert majority((1, 1, 0)) == 1
        assert majority((1, 0, 1, 0, 1)) == 1

    def test_even_rejected(self):
        with pytest.raises(EvenN):
            majority((0, 1))

    def test_as_bits_validation(self):
        assert as_bits([1, 0, 1]) == (1, 0, 1)
        with pytest.raises(ValueError):
            as_bits([0, 2, 0])
        with pytest.raises(ValueError):
            as_bits([0, 1], 3)

    def test_flip(self):
        assert flip((0, 1, 0), 2) == (0, 1, 1)
        assert flip((0, 1, 0), 1) == (0, 0, 0)


def test_alpha_pool_integer_levels():
    assert [integer_stubbornness(a) for a in ALPHA_POOL] == [0, 1, 1, 2, 3, 9]
