import itertools
from functools import lru_cache
from math import comb

import pytest

from quadid.grid import (
    ExtendedGrid,
    diagonal,
    enumerate_flows,
    enumerate_paths,
    flow_weight,
    grid_commutation,
    path_matrix,
    path_weight,
    pressed_corteges,
    pressed_map,
    pressed_position,
)
from quadid.ncalg import AlgebraElement
from quadid.qminor import EMPTY, Cortege, OutOfBounds, all_corteges, manin_violations, quantum_minor
from quadid.scalar import q

C = Cortege.of
SHAPES = [(m, n) for m in range(1, 4) for n in range(1, 4)]


def brute_count(m, n, i, j):
    """Count directed paths by dynamic programming over the edge set."""
    g = ExtendedGrid(m, n)
    succ = {}
    for u, v in g.h_edges() + g.v_edges():
        succ.setdefault(u, []).append(v)

    @lru_cache(None)
    def count(u):
        if u == (0, j):
            return 1
        return sum(count(v) for v in succ.get(u, []))

    return count((i, 0))


class TestPaths:
    @pytest.mark.parametrize("m, n", SHAPES + [(3, 4), (4, 4)])
    def test_counts(self, m, n):
        g = ExtendedGrid(m, n)
        for i, j in itertools.product(range(1, m + 1), range(1, n + 1)):
            got = len(enumerate_paths(g, i, j))
            assert got == comb(i + j - 2, i - 1) == brute_count(m, n, i, j)

    def test_examples(self):
        assert len(enumerate_paths(ExtendedGrid(2, 2), 2, 2)) == 2
        assert len(enumerate_paths(ExtendedGrid(3, 4), 3, 4)) == 10
        assert all(len(enumerate_paths(ExtendedGrid(3, 4), 1, j)) == 1 for j in range(1, 5))

    def test_path_shape(self):
        g = ExtendedGrid(3, 3)
        for p in enumerate_paths(g, 3, 2):
            assert p.source == (3, 0) and p.sink == (0, 2)
            for u, v in p.edges():
                assert (u[0] == v[0] and v[1] == u[1] + 1) or (u[1] == v[1] and v[0] == u[0] - 1)

    def test_out_of_bounds(self):
        with pytest.raises(OutOfBounds):
            enumerate_paths(ExtendedGrid(2, 2), 3, 1)

    def test_weight_example(self):
        g = ExtendedGrid(2, 2)
        w = g.generator
        total = AlgebraElement.zero(g.torus)
        for p in enumerate_paths(g, 2, 2):
            total = total + path_weight(g, p)
        assert total == w((2, 2)) + w((2, 1)) * w((1, 1)).inverse() * w((1, 2))

    def test_straight_path(self):
        g = ExtendedGrid(1, 3)
        (p,) = enumerate_paths(g, 1, 3)
        assert p.turns() == [(1, 3)]
        assert path_weight(g, p) == g.generator((1, 3))


class TestTorus:
    def test_commutation(self):
        assert grid_commutation((1, 1), (1, 2)) == 1
        assert grid_commutation((1, 2), (1, 1)) == -1
        assert grid_commutation((2, 1), (1, 1)) == -1
        assert grid_commutation((1, 1), (2, 1)) == 1
        assert grid_commutation((1, 1), (2, 2)) == 0
        assert grid_commutation((1, 2), (2, 1)) == 0

    def test_generators_follow_table(self):
        g = ExtendedGrid(2, 3)
        for u, v in itertools.product(g.inner, repeat=2):
            a, b = g.generator(u), g.generator(v)
            assert a * b == (b * a).scale(q(grid_commutation(u, v)))


class TestFlows:
    def test_examples(self):
        g = ExtendedGrid(2, 2)
        assert len(enumerate_flows(g, C([1, 2], [1, 2]))) == 1
        (empty,) = enumerate_flows(g, EMPTY)
        assert empty.paths == ()

    @pytest.mark.parametrize("m, n", SHAPES + [(4, 4)])
    def test_pressed_flow_is_unique_and_turns_on_diagonal(self, m, n):
        g = ExtendedGrid(m, n)
        for i, j in itertools.product(range(1, m + 1), range(1, n + 1)):
            flows = enumerate_flows(g, pressed_map(i, j))
            assert len(flows) == 1
            turns = {t for p in flows[0].paths for t in p.turns()}
            assert turns <= set(diagonal(i, j))

    def test_disjoint(self):
        g = ExtendedGrid(3, 3)
        for c in all_corteges(3, 3):
            for f in enumerate_flows(g, c):
                seen = [v for p in f.paths for v in p.vertices]
                assert len(seen) == len(set(seen))
                assert sorted(p.sink[1] for p in f.paths) == list(c.cols)

    @pytest.mark.parametrize("m, n", [(3, 3), (2, 4), (4, 3)])
    def test_pressed_flow_weight_is_diagonal_product(self, m, n):
        # diagonal vertices pairwise commute, so the order is irrelevant
        g = ExtendedGrid(m, n)
        for i, j in itertools.product(range(1, m + 1), range(1, n + 1)):
            (f,) = enumerate_flows(g, pressed_map(i, j))
            expect = g.torus.one()
            for v in diagonal(i, j):
                expect = expect * g.generator(v)
            assert flow_weight(g, f) == expect


class TestLindstrom:
    @pytest.mark.parametrize("m, n", SHAPES)
    def test_minor_equals_flow_sum(self, m, n):
        g = ExtendedGrid(m, n)
        P = path_matrix(g)
        for c in all_corteges(m, n):
            total = AlgebraElement.zero(g.torus)
            for f in enumerate_flows(g, c):
                total = total + flow_weight(g, f)
            assert quantum_minor(P, c) == total, str(c)

    @pytest.mark.parametrize("m, n", SHAPES + [(3, 4)])
    def test_path_matrix_is_quantum(self, m, n):
        assert manin_violations(path_matrix(ExtendedGrid(m, n))) == []


class TestPressedMap:
    def test_examples(self):
        assert pressed_map(2, 3) == C([1, 2], [2, 3])
        assert pressed_map(3, 2) == C([2, 3], [1, 2])
        assert pressed_map(1, 4) == C([1], [4])

    def test_bijection(self):
        for m, n in SHAPES + [(4, 4), (2, 5)]:
            cs = pressed_corteges(m, n)
            assert len(set(cs)) == m * n
            pressed = {c for c in all_corteges(m, n) if c.rows and c.is_pressed()}
            assert set(cs) == pressed
            for i, j in itertools.product(range(1, m + 1), range(1, n + 1)):
                assert pressed_position(pressed_map(i, j)) == (i, j)

    def test_rejects(self):
        with pytest.raises(OutOfBounds):
            pressed_map(0, 1)
        with pytest.raises(OutOfBounds):
            pressed_map(3, 1, m=2, n=2)
        with pytest.raises(ValueError):
            pressed_position(C([2], [2]))
