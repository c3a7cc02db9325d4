import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uppertail.hypergraph import (
    Hypergraph,
    VertexSet,
    degree,
    delta_j,
    from_text,
    induced_edge_count,
    induced_edges,
    max_degree,
    sample_vm,
    sample_vp,
    to_text,
)

TRIANGLE_PAIR = Hypergraph(3, 5, [(0, 1, 2), (2, 3, 4)])


class TestVertexSet:
    def test_roundtrip_indices(self):
        s = VertexSet.from_indices(10, [0, 3, 9])
        assert s.indices() == (0, 3, 9)
        assert len(s) == 3
        assert 3 in s and 4 not in s and 10 not in s

    def test_bool_array_roundtrip(self):
        mask = np.array([True, False, False, True, True, False, False, False, True])
        s = VertexSet.from_bool_array(mask)
        assert s.indices() == (0, 3, 4, 8)
        assert np.array_equal(s.to_bool_array(), mask)

    def test_empty(self):
        s = VertexSet(4)
        assert len(s) == 0
        assert s.indices() == ()

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            VertexSet(3, 1 << 3)
        with pytest.raises(ValueError):
            VertexSet.from_indices(3, [3])

    def test_equality_and_hash(self):
        a = VertexSet.from_indices(6, [1, 4])
        b = VertexSet(6, (1 << 1) | (1 << 4))
        assert a == b and hash(a) == hash(b)
        assert a != VertexSet(7, b.bits)


class TestHypergraph:
    def test_canonicalizes_edges(self):
        h = Hypergraph(3, 5, [(2, 1, 0), (0, 1, 2), (4, 3, 2)])
        assert h.edges == ((0, 1, 2), (2, 3, 4))
        assert h.num_edges == 2
        assert h.edge_masks == (0b00111, 0b11100)

    def test_incidence_lists(self):
        assert TRIANGLE_PAIR.incidence == ((0,), (0,), (0, 1), (1,), (1,))

    def test_rejects_bad_edges(self):
        with pytest.raises(ValueError):
            Hypergraph(3, 5, [(0, 1)])
        with pytest.raises(ValueError):
            Hypergraph(3, 5, [(0, 1, 1)])
        with pytest.raises(ValueError):
            Hypergraph(3, 5, [(0, 1, 5)])
        with pytest.raises(ValueError):
            Hypergraph(0, 5, [])

    def test_degree_helpers(self):
        assert degree(TRIANGLE_PAIR, 2) == 2
        assert degree(TRIANGLE_PAIR, 0) == 1
        assert max_degree(TRIANGLE_PAIR) == 2
        assert max_degree(Hypergraph(3, 4, [])) == 0
        with pytest.raises(ValueError):
            degree(TRIANGLE_PAIR, 5)

    def test_delta_j(self):
        h = Hypergraph(3, 6, [(0, 1, 2), (0, 1, 3), (0, 4, 5)])
        assert delta_j(h, 1) == 3
        assert delta_j(h, 2) == 2
        assert delta_j(h, 3) == 1
        with pytest.raises(ValueError):
            delta_j(h, 4)


class TestInducedEdges:
    def test_count_matches_ids(self):
        s = VertexSet.from_indices(5, [0, 1, 2, 3])
        assert induced_edges(TRIANGLE_PAIR, s) == (0,)
        assert induced_edge_count(TRIANGLE_PAIR, s) == 1

    def test_full_and_empty(self):
        full = VertexSet(5, (1 << 5) - 1)
        assert induced_edge_count(TRIANGLE_PAIR, full) == 2
        assert induced_edge_count(TRIANGLE_PAIR, VertexSet(5)) == 0

    def test_prefilter_identical(self):
        rng = np.random.default_rng(1)
        for _ in range(25):
            s = sample_vp(TRIANGLE_PAIR, 0.5, rng)
            assert induced_edge_count(TRIANGLE_PAIR, s, prefilter=True) == (
                induced_edge_count(TRIANGLE_PAIR, s)
            )

    def test_universe_mismatch(self):
        with pytest.raises(ValueError):
            induced_edge_count(TRIANGLE_PAIR, VertexSet(4))

    @given(st.integers(min_value=0, max_value=(1 << 7) - 1))
    @settings(max_examples=60, deadline=None)
    def test_matches_direct_membership(self, bits):
        h = Hypergraph(3, 7, [(0, 1, 2), (1, 2, 3), (2, 4, 6), (3, 5, 6)])
        s = VertexSet(7, bits)
        expected = sum(
            1 for e in h.edges if all((bits >> v) & 1 for v in e)
        )
        assert induced_edge_count(h, s) == expected
        assert len(induced_edges(h, s)) == expected


class TestSampling:
    def test_vp_bounds_and_determinism(self):
        a = sample_vp(TRIANGLE_PAIR, 0.5, np.random.default_rng(7))
        b = sample_vp(TRIANGLE_PAIR, 0.5, np.random.default_rng(7))
        assert a == b
        assert sample_vp(TRIANGLE_PAIR, 0.0, np.random.default_rng(0)).bits == 0
        assert len(sample_vp(TRIANGLE_PAIR, 1.0, np.random.default_rng(0))) == 5

    def test_vm_size_exact(self):
        rng = np.random.default_rng(3)
        for m in range(6):
            assert len(sample_vm(TRIANGLE_PAIR, m, rng)) == m

    def test_vm_uniformity(self):
        # Every 2-subset of 4 vertices should appear at roughly equal rates.
        h = Hypergraph(3, 4, [(0, 1, 2)])
        rng = np.random.default_rng(11)
        counts: dict[int, int] = {}
        runs = 6000
        for _ in range(runs):
            s = sample_vm(h, 2, rng)
            counts[s.bits] = counts.get(s.bits, 0) + 1
        assert len(counts) == 6
        expected = runs / 6
        assert all(abs(c - expected) < 5 * expected**0.5 for c in counts.values())

    def test_rejects_invalid(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ValueError):
            sample_vp(TRIANGLE_PAIR, 1.5, rng)
        with pytest.raises(ValueError):
            sample_vm(TRIANGLE_PAIR, 6, rng)


class TestSerialization:
    def test_roundtrip(self):
        text = to_text(TRIANGLE_PAIR)
        assert text.splitlines()[0] == "3 5 2"
        assert from_text(text) == TRIANGLE_PAIR

    def test_empty_hypergraph(self):
        h = Hypergraph(4, 3, [])
        assert from_text(to_text(h)) == h

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            from_text("")
        with pytest.raises(ValueError):
            from_text("3 5\n")
        with pytest.raises(ValueError):
            from_text("3 5 1\n0 1\n")
        with pytest.raises(ValueError):
            from_text("3 5 2\n0 1 2\n0 1 2\n")
        with pytest.raises(ValueError):
            from_text("3 5 1\n0 1 2\nstray\n")
