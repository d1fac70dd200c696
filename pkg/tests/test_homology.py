"""Z/2 homology: reduction, Betti numbers, induced maps.

Oracle notes
------------
* Betti numbers are checked against dense GF(2) Gaussian elimination
  (oracles.naive_betti) on random complexes, and against textbook values on
  closed-form complexes: cycles, spheres, the 7-vertex torus, the 6-vertex
  projective plane (whose beta_1 = beta_2 = 1 only over Z/2, a coefficient
  sensitivity check).
* induced maps: identity gives the identity matrix, a collapse kills H_1,
  composition matches matrix product, contiguous maps agree.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest

from ghbound import (SimplicialComplex, betti_numbers, build_vr,
                     check_simplicial, circle, compose_maps, distortion,
                     equispaced_circle, fundamental_class_survives, gh_exact,
                     inclusion_map, induced_map, induced_vr_map,
                     uniform_points, VertexMap)
from ghbound.homology import HomologyBasis

from oracles import naive_betti, random_complex


def closure_of(triangles, vertices, max_dim=2, scale=1.0):
    simplices = {0: {(v,) for v in range(vertices)}, 1: set(), 2: set()}
    for t in triangles:
        simplices[2].add(tuple(sorted(t)))
        for e in combinations(sorted(t), 2):
            simplices[1].add(e)
    return SimplicialComplex(vertices, scale, max_dim,
                             {k: tuple(v) for k, v in simplices.items()})


def test_cycle_graph():
    space = equispaced_circle(circle(), 6).to_metric_space()
    k = build_vr(space, 1.2, 2)
    assert betti_numbers(k, 1).values == (1, 1)


def test_two_components():
    k = SimplicialComplex(4, 1.0, 1, {0: [(0,), (1,), (2,), (3,)],
                                      1: [(0, 1), (2, 3)]})
    assert betti_numbers(k, 0).values == (2,)


def test_sphere_boundary_of_tetrahedron():
    full = {0: [(i,) for i in range(4)],
            1: list(combinations(range(4), 2)),
            2: list(combinations(range(4), 3))}
    k = SimplicialComplex(4, 1.0, 3, {**full, 3: []})
    assert betti_numbers(k, 2).values == (1, 0, 1)


def test_solid_tetrahedron_is_contractible():
    full = {0: [(i,) for i in range(4)],
            1: list(combinations(range(4), 2)),
            2: list(combinations(range(4), 3)),
            3: [(0, 1, 2, 3)]}
    k = SimplicialComplex(4, 1.0, 3, full)
    assert betti_numbers(k, 2).values == (1, 0, 0)


def test_seven_vertex_torus():
    triangles = [[(i) % 7, (i + 1) % 7, (i + 3) % 7] for i in range(7)]
    triangles += [[(i) % 7, (i + 2) % 7, (i + 3) % 7] for i in range(7)]
    k = closure_of(triangles, 7, max_dim=3)
    assert k.simplex_counts()[:3] == [7, 21, 14]
    assert betti_numbers(k, 2).values == (1, 2, 1)


def test_six_vertex_projective_plane():
    triangles = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
                 (1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5)]
    k = closure_of(triangles, 6, max_dim=3)
    assert k.simplex_counts()[:3] == [6, 15, 10]
    # over Z/2 the projective plane has beta = (1, 1, 1)
    assert betti_numbers(k, 2).values == (1, 1, 1)


def test_betti_against_dense_elimination():
    rng = np.random.default_rng(0xBE771)
    for _ in range(60):
        k = random_complex(rng)
        up_to = k.max_dim - 1
        assert list(betti_numbers(k, up_to).values) == naive_betti(k, up_to)


def test_insufficient_skeleton_error():
    space = equispaced_circle(circle(), 5).to_metric_space()
    k = build_vr(space, 1.4, 1)
    with pytest.raises(ValueError, match="insufficient skeleton"):
        betti_numbers(k, 1)
    betti_numbers(k, 0)


def test_homology_basis_coordinates():
    space = equispaced_circle(circle(), 6).to_metric_space()
    k = build_vr(space, 1.2, 2)
    basis = HomologyBasis(k, 1)
    assert basis.betti == 1
    rep = basis.representatives[0]
    assert basis.coordinates(rep) == 1
    with pytest.raises(ValueError, match="not a cycle"):
        basis.coordinates(1)  # a single edge is not a cycle here


def test_induced_identity_is_identity():
    space = equispaced_circle(circle(), 8).to_metric_space()
    k = build_vr(space, 1.0, 2)
    hm = induced_map(inclusion_map(k, k), 1)
    assert hm.source_betti == hm.target_betti == 1
    assert hm.matrix == (1,)
    assert hm.is_isomorphism()


def test_collapse_kills_the_cycle():
    space = equispaced_circle(circle(), 6).to_metric_space()
    k = build_vr(space, 1.2, 2)
    target = build_vr(space, 7.0, 2)  # the full simplex on six vertices
    collapse = VertexMap(k, target, (0,) * 6)
    assert check_simplicial(collapse)
    hm = induced_map(collapse, 1)
    assert hm.source_betti == 1 and hm.target_betti == 0
    assert hm.matrix == (0,)
    assert not hm.is_injective()


def test_induced_requires_simplicial():
    space = equispaced_circle(circle(), 6).to_metric_space()
    k = build_vr(space, 1.2, 2)
    small = build_vr(space, 0.4, 2)  # no edges at all
    shrink = VertexMap(k, small, tuple(range(6)))
    with pytest.raises(ValueError, match="not simplicial"):
        induced_map(shrink, 1)


def _roundtrip_maps(phase=0.25, eps=0.9):
    c = circle()
    space_x = equispaced_circle(c, 8).to_metric_space()
    space_y = equispaced_circle(c, 8, phase=phase).to_metric_space()
    corr = gh_exact(space_x, space_y).correspondence
    r = distortion(corr, space_x, space_y) + 1e-6
    source = build_vr(space_y, eps, 3)
    f = induced_vr_map(corr, space_x, space_y, source, r, max_dim=3)
    g = induced_vr_map(corr.transpose(), space_y, space_x, f.target, r, max_dim=3)
    return f, g, source


def test_functoriality_matches_matrix_product():
    f, g, _source = _roundtrip_maps()
    composed = compose_maps(g, f)
    direct = induced_map(composed, 1)
    factored = induced_map(g, 1).after(induced_map(f, 1))
    assert direct.matrix == factored.matrix
    assert direct.source_betti == factored.source_betti


def test_contiguous_maps_induce_equal_homology():
    f, g, source = _roundtrip_maps()
    roundtrip = compose_maps(g, f)
    include = inclusion_map(source, g.target)
    hm_round = induced_map(roundtrip, 1)
    hm_inc = induced_map(include, 1)
    assert hm_round.matrix == hm_inc.matrix
    assert hm_inc.is_isomorphism()


def test_fundamental_class_survives_below_death():
    space = equispaced_circle(circle(), 12).to_metric_space()
    base = build_vr(space, 0.6, 2)
    mid = build_vr(space, 1.8, 2)
    assert fundamental_class_survives(base, mid, 1)


def test_fundamental_class_dies_past_one_third():
    space = equispaced_circle(circle(), 12).to_metric_space()
    base = build_vr(space, 0.6, 2)
    # 4 of 12 neighbor steps per side: edge fraction 1/3, the cycle fills in
    late = build_vr(space, 2.2, 2)
    assert betti_numbers(late, 1).values[1] == 0
    assert not fundamental_class_survives(base, late, 1)


def test_survives_with_explicit_vertex_image():
    c = circle()
    sub_y = equispaced_circle(c, 6)
    extra = uniform_points(c, 3, seed=5)
    merged = np.vstack([sub_y.points, extra.points])
    from ghbound import FiniteSubset
    space_z = FiniteSubset(c, merged).to_metric_space()
    space_y = sub_y.to_metric_space()
    small = build_vr(space_y, 1.2, 2)
    big = build_vr(space_z, 1.2, 2)
    # Y sits at indices 0..5 inside Z; distances agree, so inclusion is simplicial
    assert fundamental_class_survives(small, big, 0, vertex_image=range(6))


def test_inclusion_must_be_simplicial():
    space = equispaced_circle(circle(), 6).to_metric_space()
    big = build_vr(space, 1.2, 2)
    small = build_vr(space, 0.4, 2)
    with pytest.raises(ValueError, match="must contain"):
        fundamental_class_survives(big, small, 0)
