import numpy as np
import pytest

from emlab.algebra import CyclicGroup, GeneratingSet, generated_subgroup, make_group
from emlab.errors import InvalidSelection, NotRegular, ParseError, SizeMismatch
from emlab.graphcore import (
    EdgeSelection,
    Graph,
    build_g_of_h,
    cayley_graph,
    complete_graph,
    cycle_graph,
    deserialize,
    disjoint_union,
    is_connected,
    max_degree,
    overlay,
    path_graph,
    petersen_graph,
    read_graph,
    serialize,
    subdivide,
    write_graph,
)


def _is_cycle(g):
    return g.n >= 3 and g.is_regular(2) and is_connected(g) and set(g.w.tolist()) == {1}


class TestGraph:
    def test_canonical_storage(self):
        g = Graph.from_edges(3, [(2, 0), (0, 2), (1, 2, 3)])
        assert g.edges() == [(0, 2, 2), (1, 2, 3)]
        assert g.weight(2, 0) == g.weight(0, 2) == 2
        assert g.weight(0, 1) == 0

    def test_immutable(self):
        g = complete_graph(3)
        with pytest.raises(ValueError):
            g.w[0] = 5

    def test_adjacency_symmetric(self):
        a = petersen_graph().adjacency_matrix()
        assert np.array_equal(a, a.T)
        assert np.array_equal(a.sum(axis=1), petersen_graph().degrees())

    def test_bad_edges(self):
        with pytest.raises(ValueError):
            Graph(2, [0], [2])
        with pytest.raises(ValueError):
            Graph(2, [0], [1], [-1])

    def test_zero_weight_dropped(self):
        assert Graph(2, [0], [1], [0]).num_pairs == 0


class TestCayley:
    def test_z4_cycle(self):
        z4 = CyclicGroup(4)
        g = cayley_graph(z4, GeneratingSet.from_values(z4, [1, 3]))
        assert _is_cycle(g) and g.n == 4

    def test_units5_k4(self):
        u = make_group("units", 5)
        g = cayley_graph(u, GeneratingSet.from_values(u, [2, 3, 4]))
        assert g == complete_graph(4)

    def test_z2_single_edge(self):
        z2 = CyclicGroup(2)
        g = cayley_graph(z2, GeneratingSet.from_values(z2, [1]))
        assert g.edges() == [(0, 1, 1)]
        assert g.degrees().tolist() == [1, 1]

    def test_involutions_and_pairs(self):
        z6 = CyclicGroup(6)
        # 3 is an involution, {1,5} a pair
        g = cayley_graph(z6, GeneratingSet.from_values(z6, [1, 3, 5]))
        assert g.is_regular(3)
        assert g.weight(0, 3) == 1 and g.weight(0, 1) == 1

    def test_z3_triangle(self):
        z3 = CyclicGroup(3)
        g = cayley_graph(z3, GeneratingSet(z3, [1, 2, 1, 2]))
        assert g == complete_graph(3)

    def test_labels(self):
        aff = make_group("affine", 5)
        S = GeneratingSet.symmetric_closure(aff, [aff.translation(1)])
        g = cayley_graph(aff, S, labels=True)
        assert g.labels == aff.elements

    def test_connected_iff_generates(self):
        rng = np.random.default_rng(7)
        groups = [make_group("affine", 5), make_group("sl2", 3), CyclicGroup(12), make_group("psl2", 5)]
        for trial in range(10):
            gamma = groups[trial % len(groups)]
            picks = rng.choice(np.arange(1, gamma.order), size=rng.integers(1, 3), replace=False)
            picks = [p if p != gamma.identity else (p + 1) % gamma.order for p in picks]
            S = GeneratingSet.symmetric_closure(gamma, picks)
            g = cayley_graph(gamma, S)
            assert g.is_regular(len(S))
            assert is_connected(g) == (generated_subgroup(S).order == gamma.order)


class TestOverlay:
    def test_identity(self):
        g = petersen_graph()
        assert overlay(g, Graph(10)) == g

    def test_k2_doubles(self):
        k2 = complete_graph(2)
        assert overlay(k2, k2).edges() == [(0, 1, 2)]

    def test_degrees_add(self):
        a, b = cycle_graph(10), petersen_graph()
        assert np.array_equal(overlay(a, b).degrees(), a.degrees() + b.degrees())

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            overlay(complete_graph(3), complete_graph(4))


class TestSubdivide:
    def test_k2_to_path(self):
        g = subdivide(complete_graph(2), EdgeSelection.from_pairs([(0, 1)]), 3)
        assert g.n == 4 and g.edges() == [(0, 2, 1), (1, 3, 1), (2, 3, 1)]
        assert sorted(g.degrees().tolist()) == [1, 1, 2, 2]

    def test_m_one_unchanged(self):
        g = petersen_graph()
        assert subdivide(g, EdgeSelection.from_graph(g), 1) == g

    def test_triangle_to_hexagon(self):
        k3 = complete_graph(3)
        g = subdivide(k3, EdgeSelection.from_graph(k3), 2)
        assert g.n == 6 and _is_cycle(g)

    def test_partial_multiplicity(self):
        g = Graph.from_edges(2, [(0, 1, 3)])
        out = subdivide(g, EdgeSelection.from_pairs([(1, 0, 2)]), 4)
        assert out.n == 2 + 2 * 3
        assert out.weight(0, 1) == 1
        assert out.degrees()[:2].tolist() == [3, 3]

    def test_errors(self):
        k3 = complete_graph(3)
        with pytest.raises(InvalidSelection):
            subdivide(k3, EdgeSelection.from_pairs([(0, 1)]), 0)
        with pytest.raises(InvalidSelection):
            subdivide(k3, EdgeSelection.from_pairs([(0, 1, 2)]), 2)
        with pytest.raises(InvalidSelection):
            subdivide(Graph.from_edges(1, [(0, 0)]), EdgeSelection.from_pairs([(0, 0)]), 2)

    def test_deterministic_order(self):
        k3 = complete_graph(3).__class__(3, [0, 1, 0], [1, 2, 2], labels=["a", "b", "c"])
        g = subdivide(k3, EdgeSelection.from_graph(k3), 2)
        assert g.labels[3:] == (("path", 0, 1, 0, 1), ("path", 0, 2, 0, 1), ("path", 1, 2, 0, 1))
        assert g.weight(0, 3) == 1 and g.weight(3, 1) == 1


class TestGofH:
    def test_petersen(self):
        g = build_g_of_h(petersen_graph(), 11)
        assert g.n == (6 * 11 - 2) * 10 == 640
        assert max_degree(g) == 6 and is_connected(g)

    def test_k4(self):
        g = build_g_of_h(complete_graph(4), 2)
        assert g.n == 40
        # direct count: 16 hubs + one interior vertex per H2 edge (4 copies x 6 edges)
        assert g.n == 16 + 4 * 6

    def test_degree_profile(self):
        for ell in (2, 3, 5):
            h = petersen_graph()
            deg = build_g_of_h(h, ell).degrees()
            assert np.sum(deg == 6) == 4 * h.n
            assert np.sum(deg == 2) == 6 * h.n * (ell - 1)
            assert deg.size == 4 * h.n + 6 * h.n * (ell - 1)

    def test_ell_two_single_interior(self):
        g = build_g_of_h(petersen_graph(), 2)
        interior = np.arange(40, g.n)
        a = g.adjacency_matrix()
        assert np.all(a[interior][:, interior] == 0)
        assert np.all(a[interior][:, :40].sum(axis=1) == 2)

    def test_not_regular(self):
        with pytest.raises(NotRegular):
            build_g_of_h(path_graph(4), 11)


class TestConnectivityDegree:
    def test_path_connected(self):
        assert is_connected(path_graph(4))

    def test_two_edges_disconnected(self):
        assert not is_connected(disjoint_union(complete_graph(2), complete_graph(2)))

    def test_edge_cases(self):
        assert is_connected(Graph(1)) and is_connected(Graph(0))
        assert not is_connected(Graph(2))
        assert max_degree(Graph(0)) == 0

    def test_cayley_degree(self):
        sl2 = make_group("sl2", 3)
        S = GeneratingSet.symmetric_closure(sl2, [1, 5, 9])
        assert max_degree(cayley_graph(sl2, S)) == len(S)


class TestSerialization:
    def test_round_trip_k4(self):
        g = complete_graph(4)
        text = serialize(g)
        assert text.splitlines()[0] == "graph v1 4"
        assert deserialize(text) == g

    def test_round_trip_big(self, tmp_path):
        g = build_g_of_h(petersen_graph(), 11)
        path = tmp_path / "g.txt"
        write_graph(g, path)
        back = read_graph(path)
        assert back == g
        assert serialize(back) == path.read_text()

    def test_multigraph_round_trip(self):
        g = Graph.from_edges(3, [(0, 1, 4), (1, 2), (2, 2, 2)])
        assert deserialize(serialize(g)) == g

    @pytest.mark.parametrize(
        "text,line",
        [
            ("", 1),
            ("graph v2 3\n", 1),
            ("graph v1 x\n", 1),
            ("graph v1 3\n0 1 1\n1 2 abc\n", 3),
            ("graph v1 3\n0 1 0\n", 2),
            ("graph v1 3\n0 1 -2\n", 2),
            ("graph v1 3\n0 5 1\n", 2),
            ("graph v1 3\n0 1\n", 2),
            ("graph v1 3\n0 1 1\n1 0 1\n", 3),
        ],
    )
    def test_parse_errors(self, text, line):
        with pytest.raises(ParseError) as exc:
            deserialize(text)
        assert exc.value.line == line
