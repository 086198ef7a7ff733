from math import comb

import pytest

from steinerlab import (
    ball,
    complete_complex,
    complex_from_dfaces,
    flip,
    line_graph,
    oriented_line_graph,
    oriented_neighbors,
    read_complex,
    write_complex,
)
from conftest import random_complex


class TestConstruction:
    def test_complete_k4_triangles(self):
        X = complete_complex(4, 2)
        assert X.num_dfaces == 4
        assert all(X.degree(f) == 2 for f in X.facet_iter())

    def test_triangle_graph_degrees(self):
        X = complex_from_dfaces(3, 1, [(1, 2), (2, 3), (1, 3)])
        assert X.degree_index == {(1,): 2, (2,): 2, (3,): 2}

    def test_duplicate_face_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            complex_from_dfaces(4, 2, [(1, 2, 3), (1, 2, 3)])

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError, match="dimension"):
            complex_from_dfaces(4, 2, [(1, 2)])

    def test_vertex_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="outside"):
            complex_from_dfaces(4, 2, [(2, 3, 5)])
        with pytest.raises(ValueError, match="increasing"):
            complex_from_dfaces(4, 2, [(3, 2, 1)])

    def test_too_few_vertices_rejected(self):
        with pytest.raises(ValueError):
            complex_from_dfaces(2, 2, [])

    def test_degree_of_uncovered_face_is_zero(self):
        X = complex_from_dfaces(5, 2, [(1, 2, 3)])
        assert X.degree((4, 5)) == 0
        assert X.min_degree() == 0


class TestLineGraph:
    def test_complete_k4_edge_count(self):
        # each of the 4 triangles contributes C(3,2)=3 line-graph edges
        adj = line_graph(complete_complex(4, 2))
        assert len(adj) == comb(4, 2)
        assert sum(len(v) for v in adj.values()) // 2 == 12

    def test_no_dfaces_gives_edgeless_graph(self):
        adj = line_graph(complex_from_dfaces(5, 2, []))
        assert len(adj) == comb(5, 2)
        assert all(not nbrs for nbrs in adj.values())

    def test_d1_triangle_reduction(self):
        adj = line_graph(complex_from_dfaces(3, 1, [(1, 2), (2, 3), (1, 3)]))
        assert adj == {(1,): {(2,), (3,)}, (2,): {(1,), (3,)}, (3,): {(1,), (2,)}}

    def test_edge_count_identity(self, gen):
        for _ in range(20):
            d = int(gen.integers(1, 4))
            n = int(gen.integers(d + 2, 9))
            X = random_complex(n, d, gen)
            adj = line_graph(X)
            assert sum(len(v) for v in adj.values()) // 2 == comb(d + 1, 2) * X.num_dfaces


class TestOrientedLineGraph:
    def test_d1_path_graph(self):
        X = complex_from_dfaces(3, 1, [(1, 2), (2, 3)])
        nbs = oriented_neighbors(X, ((2,), 1))
        assert sorted(nbs) == [((1,), 1), ((3,), 1)]

    def test_single_2face_pattern(self):
        X = complex_from_dfaces(3, 2, [(1, 2, 3)])
        nbs = oriented_neighbors(X, ((1, 2), 1))
        assert sorted(nbs) == [((1, 3), 1), ((2, 3), -1)]
        olg = oriented_line_graph(X)
        assert all(len(v) == 2 * X.degree(of[0]) for of, v in olg.items())

    def test_degree_identity_random(self, gen):
        for _ in range(10):
            d = int(gen.integers(1, 4))
            n = int(gen.integers(d + 2, 9))
            X = random_complex(n, d, gen)
            olg = oriented_line_graph(X)
            for (face, sign), nbrs in olg.items():
                assert len(nbrs) == d * X.degree(face)

    def test_sign_symmetry(self, gen):
        for _ in range(10):
            d = int(gen.integers(2, 4))
            n = int(gen.integers(d + 2, 8))
            X = random_complex(n, d, gen)
            olg = oriented_line_graph(X)
            edges = {(a, b) for a, nbrs in olg.items() for b in nbrs}
            for a, b in edges:
                assert (b, a) in edges
                assert (flip(a), flip(b)) in edges

    def test_flip_involution(self):
        assert flip(flip(((1, 2), 1))) == ((1, 2), 1)
        assert flip(((1, 2), 1)) == ((1, 2), -1)
        assert flip(((3,), 1)) == ((3,), 1)  # identity on vertices


class TestBall:
    def test_radius_zero(self):
        X = complete_complex(4, 2)
        b = ball(X, (1, 2), 0)
        assert b.facet_layers == (frozenset({(1, 2)}),)
        assert b.vertex_layers == (frozenset({1, 2}),)
        assert b.total_dfaces() == 0

    def test_isolated_center_never_grows(self):
        X = complex_from_dfaces(6, 2, [(1, 2, 3)])
        b0 = ball(X, (5, 6), 0)
        b3 = ball(X, (5, 6), 3)
        assert b3.total_vertices() == b0.total_vertices() == 2
        assert b3.total_facets() == 1
        assert b3.total_dfaces() == 0

    def test_k4_radius_one_layers(self):
        X = complete_complex(4, 2)
        b = ball(X, (1, 2), 1)
        assert b.vertex_layers[1] == frozenset({3, 4})
        assert b.dface_layers[1] == frozenset({(1, 2, 3), (1, 2, 4)})

    def test_vertex_dface_layer_inequality(self, gen):
        # layered vertex count never exceeds layered d-face count (r >= 1)
        for _ in range(25):
            d = int(gen.integers(1, 3))
            n = int(gen.integers(d + 2, 9))
            X = random_complex(n, d, gen)
            centers = [f for f in X.facet_iter() if X.degree(f) >= 1]
            if not centers:
                continue
            sigma0 = centers[int(gen.integers(0, len(centers)))]
            b = ball(X, sigma0, 3)
            for rho in range(1, 4):
                nv, nd = len(b.vertex_layers[rho]), len(b.dface_layers[rho])
                assert nv <= nd
                if nv == nd and nv:
                    for tau in b.dface_layers[rho]:
                        assert len(set(tau) & b.vertex_layers[rho]) == 1

    def test_degree_monotonicity_inside_ball(self, gen):
        # a face at distance < r keeps its full degree within the ball
        for _ in range(15):
            d = int(gen.integers(1, 3))
            n = int(gen.integers(d + 2, 8))
            X = random_complex(n, d, gen)
            centers = [f for f in X.facet_iter() if X.degree(f) >= 1]
            if not centers:
                continue
            sigma0 = centers[0]
            r = 3
            b = ball(X, sigma0, r)
            ball_dfaces = set()
            for layer in b.dface_layers:
                ball_dfaces |= layer
            for face, rho in b.facet_distances().items():
                if rho < r:
                    inside = sum(1 for tau in ball_dfaces if set(face) <= set(tau))
                    assert inside == X.degree(face)


class TestTextFormat:
    def test_roundtrip(self, tmp_path, gen):
        X = random_complex(7, 2, gen)
        path = tmp_path / "cx.txt"
        write_complex(X, path)
        Y = read_complex(path)
        assert X == Y

    def test_header_required(self, tmp_path):
        p = tmp_path / "bad.txt"
        p.write_text("")
        with pytest.raises(ValueError, match="header"):
            read_complex(p)

    def test_format_shape(self, tmp_path):
        X = complex_from_dfaces(4, 2, [(1, 2, 4)])
        path = tmp_path / "cx.txt"
        write_complex(X, path)
        assert path.read_text() == "4 2\n1 2 4\n"
