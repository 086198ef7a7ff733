from itertools import permutations

import pytest

from steinerlab import (
    LimitLaw,
    SeededRng,
    arboreal_ball,
    arboreal_fraction,
    ball,
    complete_complex,
    complex_from_dfaces,
    is_arboreal_ball,
    layer_sizes,
    signed_walk_count,
    steiner_complex,
)


def cycle_graph(n):
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return complex_from_dfaces(n, 1, edges)


def simplicially_isomorphic(dfaces_a, dfaces_b):
    """Brute-force search for a vertex bijection carrying one d-face set onto the other."""
    verts_a = sorted({v for f in dfaces_a for v in f})
    verts_b = sorted({v for f in dfaces_b for v in f})
    if len(verts_a) != len(verts_b) or len(dfaces_a) != len(dfaces_b):
        return False
    target = {frozenset(f) for f in dfaces_b}
    for image in permutations(verts_b):
        lookup = dict(zip(verts_a, image))
        if {frozenset(lookup[v] for v in f) for f in dfaces_a} == target:
            return True
    return False


class TestLayerSizes:
    def test_2_3_profile(self):
        p = layer_sizes(2, 3, 2)
        assert p.new_dfaces == (0, 3, 12)
        assert p.total_vertices == (2, 5, 17)

    def test_first_layer_is_k(self):
        for d, k in [(1, 3), (2, 4), (3, 2)]:
            p = layer_sizes(d, k, 1)
            assert p.new_vertices[1] == k
            assert p.new_dfaces[1] == k
            assert p.new_facets[1] == d * k

    def test_regular_tree_layers(self):
        p = layer_sizes(1, 3, 4)
        assert p.new_vertices[1:] == (3, 6, 12, 24)

    def test_matches_explicit_construction(self):
        for d, k, r in [(1, 2, 4), (1, 4, 3), (2, 2, 3), (2, 3, 2), (3, 2, 2), (3, 3, 2)]:
            p = layer_sizes(d, k, r)
            b = arboreal_ball(d, k, r)
            for rho in range(r + 1):
                assert len(b.vertex_layers[rho]) == p.new_vertices[rho]
                assert len(b.facet_layers[rho]) == p.new_facets[rho]
                assert len(b.dface_layers[rho]) == p.new_dfaces[rho]

    def test_k1_rejected(self):
        with pytest.raises(ValueError):
            layer_sizes(2, 1, 3)


class TestArborealBall:
    def test_2_2_1_census(self):
        b = arboreal_ball(2, 2, 1)
        assert b.complex.num_dfaces == 2
        assert len(b.vertex_layers[0]) == 2 and len(b.vertex_layers[1]) == 2
        assert len(b.facet_layers[1]) == 4

    def test_radius_zero(self):
        b = arboreal_ball(3, 5, 0)
        assert b.complex.num_dfaces == 0
        assert b.vertex_layers == ((1, 2, 3),)
        assert b.facet_layers == (((1, 2, 3),),)

    def test_1_3_2_is_three_regular_tree_ball(self):
        b = arboreal_ball(1, 3, 2)
        assert b.complex.n == 10
        assert b.complex.degree(b.root) == 3

    def test_radius_guard(self):
        with pytest.raises(ValueError, match="guard"):
            arboreal_ball(2, 3, 13)
        arboreal_ball(1, 2, 13, max_radius=13)

    def test_interior_degrees_are_k(self):
        b = arboreal_ball(2, 3, 3)
        depth = b.facet_depth()
        for face, rho in depth.items():
            if rho < 3:
                assert b.complex.degree(face) == 3


class TestIsArborealBall:
    def test_self_test(self):
        for d, k, r in [(1, 3, 2), (2, 2, 2), (2, 3, 2)]:
            b = arboreal_ball(d, k, r)
            assert is_arboreal_ball(b.complex, b.root, k, r)

    def test_k4_complete(self):
        X = complete_complex(4, 2)
        assert is_arboreal_ball(X, (1, 2), 2, 1)
        assert not is_arboreal_ball(X, (1, 2), 2, 2)

    def test_cycle_locally_a_line(self):
        X = cycle_graph(12)
        assert is_arboreal_ball(X, (3,), 2, 5)
        assert not is_arboreal_ball(X, (3,), 2, 6)

    def test_radius_zero_always_true(self):
        X = complex_from_dfaces(5, 2, [(1, 2, 3)])
        assert is_arboreal_ball(X, (4, 5), 2, 0)

    def test_isolated_face_fails_positive_radius(self):
        X = complex_from_dfaces(5, 2, [(1, 2, 3)])
        assert not is_arboreal_ball(X, (4, 5), 2, 1)

    def test_true_verdict_means_actual_isomorphism(self):
        # cross-check the census criterion against an explicit bijection search
        cases = [
            (complete_complex(4, 2), (1, 2), 2, 1),
            (cycle_graph(8), (3,), 2, 3),
            (steiner_complex(9, 2, 2, SeededRng(21)), (1, 2), 2, 1),
        ]
        for X, sigma0, k, r in cases:
            nbhd = ball(X, sigma0, r)
            ball_dfaces = set()
            for layer in nbhd.dface_layers:
                ball_dfaces |= layer
            tree = arboreal_ball(X.d, k, r)
            claimed = is_arboreal_ball(X, sigma0, k, r)
            found = simplicially_isomorphic(ball_dfaces, tree.complex.d_faces)
            assert claimed == found, (sigma0, k, r, claimed, found)
            if claimed:
                assert found


class TestArborealFraction:
    def test_tree_interior_is_one(self):
        b = arboreal_ball(1, 3, 3)
        # root sees a perfect tree out to radius 2
        assert is_arboreal_ball(b.complex, b.root, 3, 2)

    def test_cycle_fraction_one(self):
        X = cycle_graph(10)
        assert arboreal_fraction(X, 2, 2) == 1.0

    def test_radius_zero_fraction_one(self, gen):
        X = steiner_complex(9, 2, 2, SeededRng(3))
        assert arboreal_fraction(X, 2, 0) == 1.0

    def test_matching_ensemble_mean(self):
        # d=1, k=3, r=2: local convergence at rate 1 - C/n with C ~ 30
        # (measured 0.72 at n=100, 0.93 at n=500 over 20 seeds)
        def mean_fraction(n, trials):
            total = 0.0
            for t in range(trials):
                X = steiner_complex(n, 1, 3, SeededRng(55, t))
                total += arboreal_fraction(X, 3, 2)
            return total / trials

        at_100 = mean_fraction(100, 20)
        assert at_100 >= 0.65
        at_500 = mean_fraction(500, 10)
        assert at_500 >= 0.9
        assert at_500 > at_100


class TestSignedWalkCount:
    def test_length_zero_and_one(self):
        for d, k in [(1, 3), (2, 3), (3, 4)]:
            assert signed_walk_count(d, k, 0) == 1
            assert signed_walk_count(d, k, 1) == 0

    def test_length_two_is_dk(self):
        for d, k in [(1, 3), (1, 5), (2, 3), (2, 5), (3, 5)]:
            assert signed_walk_count(d, k, 2) == d * k

    def test_length_three_single_cell_cycles(self):
        # closed 3-walks live inside one d-face and return orientation-flipped
        for d, k in [(1, 3), (2, 3), (2, 5), (3, 5)]:
            assert signed_walk_count(d, k, 3) == -k * d * (d - 1)

    def test_moment_identity_vs_quadrature(self):
        for d, k in [(1, 3), (2, 3)]:
            law = LimitLaw(d, k)
            for ell in range(9):
                assert signed_walk_count(d, k, ell) == pytest.approx(
                    law.adjacency_moment(ell), abs=1e-6
                )

    def test_laplacian_moment_transform(self):
        # Laplacian = k*Id - adjacency on the k-regular complex
        from math import comb

        for d, k in [(1, 3), (2, 3)]:
            law = LimitLaw(d, k)
            for ell in range(5):
                transformed = sum(
                    comb(ell, j) * k ** (ell - j) * (-1) ** j * signed_walk_count(d, k, j)
                    for j in range(ell + 1)
                )
                assert transformed == pytest.approx(law.laplacian_moment(ell), abs=1e-6)
