"""Truncations of the k-regular d-dimensional arboreal complex.

The arboreal complex generalizes the k-regular tree: start from one
(d-1)-face, attach k d-faces to it (one fresh vertex each), then keep
attaching k-1 fresh-vertex d-faces to every boundary (d-1)-face, layer by
layer.  This module builds explicit radius-r truncations, gives the closed
form layer counts, tests whether a neighborhood in an arbitrary complex is
isomorphic to such a truncation, and counts the signed closed walks on the
oriented line-graph that are the moments of the limiting adjacency law.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import comb

from .complexes import (
    Face,
    PureComplex,
    ball,
    complex_from_dfaces,
    facets_of,
    oriented_neighbors,
)

__all__ = [
    "LayerProfile",
    "ArborealBall",
    "layer_sizes",
    "arboreal_ball",
    "is_arboreal_ball",
    "arboreal_fraction",
    "signed_walk_count",
]

DEFAULT_MAX_RADIUS = 12


@dataclass(frozen=True)
class LayerProfile:
    """Closed-form layer counts for the radius-r truncation.

    new_* sequences are indexed by the layer rho = 0..r; total_vertices is
    cumulative.
    """

    d: int
    k: int
    r: int
    new_vertices: tuple[int, ...]
    new_facets: tuple[int, ...]
    new_dfaces: tuple[int, ...]
    total_vertices: tuple[int, ...]


def layer_sizes(d: int, k: int, r: int) -> LayerProfile:
    """Per-layer face counts of the k-regular arboreal complex.

    For rho >= 1 the d-face layer is k(k-1)^(rho-1) d^(rho-1); each new
    d-face brings one fresh vertex and d new (d-1)-faces.
    """
    if k < 2:
        raise ValueError("arboreal complexes need k >= 2")
    if d < 1 or r < 0:
        raise ValueError("need d >= 1 and r >= 0")
    new_dfaces = [0]
    new_vertices = [d]
    new_facets = [1]
    for rho in range(1, r + 1):
        dfaces = k * (k - 1) ** (rho - 1) * d ** (rho - 1)
        new_dfaces.append(dfaces)
        new_vertices.append(dfaces)
        new_facets.append(d * dfaces)
    totals = []
    running = 0
    for c in new_vertices:
        running += c
        totals.append(running)
    return LayerProfile(
        d=d,
        k=k,
        r=r,
        new_vertices=tuple(new_vertices),
        new_facets=tuple(new_facets),
        new_dfaces=tuple(new_dfaces),
        total_vertices=tuple(totals),
    )


@dataclass(frozen=True)
class ArborealBall:
    """Explicit radius-r truncation with its layer inventories."""

    d: int
    k: int
    r: int
    complex: PureComplex
    root: Face
    vertex_layers: tuple[tuple[int, ...], ...]
    facet_layers: tuple[tuple[Face, ...], ...]
    dface_layers: tuple[tuple[Face, ...], ...]

    def facet_depth(self) -> dict[Face, int]:
        return {f: rho for rho, layer in enumerate(self.facet_layers) for f in layer}


def arboreal_ball(d: int, k: int, r: int, max_radius: int = DEFAULT_MAX_RADIUS) -> ArborealBall:
    """Construct the radius-r truncation explicitly, fresh vertex per d-face.

    Layer 1 attaches k d-faces to the root; deeper layers attach k-1 to each
    boundary (d-1)-face.  Growth is (d(k-1))^r, hence the radius guard.
    """
    if r > max_radius:
        raise ValueError(f"radius {r} exceeds guard {max_radius}; growth is (d(k-1))^r")
    profile = layer_sizes(d, k, r)

    root: Face = tuple(range(1, d + 1))
    next_vertex = d + 1
    dfaces: list[Face] = []
    vertex_layers: list[tuple[int, ...]] = [root]
    facet_layers: list[tuple[Face, ...]] = [(root,)]
    dface_layers: list[tuple[Face, ...]] = [()]
    frontier: list[Face] = [root]

    for rho in range(1, r + 1):
        growth = k if rho == 1 else k - 1
        new_vertices: list[int] = []
        new_facets: list[Face] = []
        new_dfaces: list[Face] = []
        for sigma in frontier:
            for _ in range(growth):
                v = next_vertex
                next_vertex += 1
                tau = tuple(sorted(sigma + (v,)))
                new_vertices.append(v)
                new_dfaces.append(tau)
                for facet in facets_of(tau):
                    if facet != sigma:
                        new_facets.append(facet)
        dfaces.extend(new_dfaces)
        vertex_layers.append(tuple(new_vertices))
        facet_layers.append(tuple(new_facets))
        dface_layers.append(tuple(new_dfaces))
        frontier = new_facets

    n = next_vertex - 1 if r > 0 else d
    cx = complex_from_dfaces(max(n, d + 1), d, dfaces) if dfaces else complex_from_dfaces(d + 1, d, [])
    ball_obj = ArborealBall(
        d=d,
        k=k,
        r=r,
        complex=cx,
        root=root,
        vertex_layers=tuple(vertex_layers),
        facet_layers=tuple(facet_layers),
        dface_layers=tuple(dface_layers),
    )
    # construction must reproduce the closed-form census exactly
    for rho in range(r + 1):
        assert len(ball_obj.vertex_layers[rho]) == profile.new_vertices[rho]
        assert len(ball_obj.facet_layers[rho]) == profile.new_facets[rho]
        assert len(ball_obj.dface_layers[rho]) == profile.new_dfaces[rho]
    return ball_obj


def is_arboreal_ball(X: PureComplex, sigma0: Face, k: int, r: int) -> bool:
    """Whether the radius-r neighborhood of sigma0 matches the arboreal truncation.

    Equivalent to simplicial isomorphism with the truncation: cumulative
    vertex counts and d-face layer counts must match the closed forms, and
    every (d-1)-face within distance r-1 must have full degree k.
    """
    if len(sigma0) != X.d:
        raise ValueError(f"{sigma0} is not a (d-1)-face")
    if r == 0:
        return True
    profile = layer_sizes(X.d, k, r)
    nbhd = ball(X, sigma0, r)
    total_vertices = 0
    for rho in range(r + 1):
        total_vertices += len(nbhd.vertex_layers[rho])
        if total_vertices != profile.total_vertices[rho]:
            return False
        if len(nbhd.dface_layers[rho]) != profile.new_dfaces[rho]:
            return False
    for rho in range(r):
        for face in nbhd.facet_layers[rho]:
            if X.degree(face) != k:
                return False
    return True


def arboreal_fraction(X: PureComplex, k: int, r: int) -> float:
    """Fraction of all C(n, d) faces of dimension d-1 whose r-ball is arboreal."""
    hits = sum(1 for face in X.facet_iter() if is_arboreal_ball(X, face, k, r))
    return hits / comb(X.n, X.d)


def _signed_closed_walks(
    X: PureComplex,
    root: Face,
    length: int,
    depth: dict[Face, int] | None = None,
) -> int:
    """phi(root+, root+) - phi(root+, root-) over walks of the given length.

    Dynamic programming over the oriented line-graph; when a depth map is
    supplied, states that are provably too far from the root to return in
    the remaining steps are pruned (exact, since line-graph distance lower
    bounds oriented distance).
    """
    plus = (root, 1)
    minus = (root, -1) if len(root) > 1 else None
    state: dict[tuple[Face, int], int] = {plus: 1}
    for step in range(length):
        remaining = length - step - 1
        nxt: dict[tuple[Face, int], int] = defaultdict(int)
        for (face, sign), count in state.items():
            for nb in oriented_neighbors(X, (face, sign)):
                if depth is not None and depth[nb[0]] > remaining:
                    continue
                nxt[nb] += count
        state = dict(nxt)
    return state.get(plus, 0) - (state.get(minus, 0) if minus is not None else 0)


def signed_walk_count(
    d: int, k: int, length: int, max_radius: int = DEFAULT_MAX_RADIUS
) -> int:
    """Signed count of closed length-l walks at a (d-1)-face of the arboreal complex.

    This integer is the l-th moment of the limiting adjacency spectral law;
    walks returning with flipped orientation count negatively.  l = 1 gives 0
    (neighbors have distinct underlying faces) and l = 2 gives d*k.
    """
    if length < 0:
        raise ValueError("walk length must be >= 0")
    if length == 0:
        return 1
    radius = (length + 1) // 2 + 1
    tree = arboreal_ball(d, k, radius, max_radius=max_radius)
    return _signed_closed_walks(
        tree.complex, tree.root, length, depth=tree.facet_depth()
    )
