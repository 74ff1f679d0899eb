import itertools

from psf import Complex, g2, join
from psf.build import boundary_simplex, cone, facet_subdivision, one_vertex_suspension, stacked_sphere
from psf.corpus import (
    edge_folded_instance,
    handle_instance,
    linear_chain,
    pinched_complex,
    projective_plane_6,
    suspension_instance,
    vertex_folded_instance,
)
from psf.verify import (
    classify_vertex,
    classify_vertices,
    homology_gf2,
    is_normal_pseudomanifold,
    is_pseudomanifold,
    is_pure,
    is_stacked_sphere,
    is_strongly_connected,
    optimality_check,
    singular_vertices,
)


def gf2_rank_reference(rows):
    """Row-reduction oracle over GF(2) on dense 0/1 lists."""
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    cols = len(rows[0]) if rows else 0
    pivot_col = 0
    while rows and pivot_col < cols:
        pivot = next((i for i, r in enumerate(rows) if r[pivot_col]), None)
        if pivot is None:
            pivot_col += 1
            continue
        rows[0], rows[pivot] = rows[pivot], rows[0]
        base = rows.pop(0)
        rank += 1
        rows = [
            [a ^ b for a, b in zip(r, base)] if r[pivot_col] else r for r in rows
        ]
        pivot_col += 1
    return rank


def reference_betti(k):
    """Independent reduced GF(2) Betti computation with dense matrices."""
    faces = {d: sorted(k.faces(d)) for d in range(k.dim + 1)}
    index = {d: {f: i for i, f in enumerate(faces[d])} for d in faces}
    ranks = [0] * (k.dim + 2)
    ranks[0] = 1 if faces[0] else 0
    for d in range(1, k.dim + 1):
        rows = []
        for f in faces[d]:
            row = [0] * len(faces[d - 1])
            for sub in itertools.combinations(f, d):
                row[index[d - 1][sub]] = 1
            rows.append(row)
        ranks[d] = gf2_rank_reference(rows)
    return tuple(len(faces[d]) - ranks[d] - ranks[d + 1] for d in range(k.dim + 1))


def test_purity_and_ridge_conditions():
    b5 = boundary_simplex(5)
    assert is_pure(b5)
    assert is_pseudomanifold(b5)
    assert is_strongly_connected(b5)

    solid = Complex([tuple(range(5))])
    assert is_pure(solid)
    assert not is_pseudomanifold(solid)

    two_spheres = Complex(
        list(boundary_simplex(3).maximal_faces)
        + list(boundary_simplex(3).relabel({i: i + 10 for i in range(4)}).maximal_faces)
    )
    assert not is_strongly_connected(two_spheres)


def test_normality_report_on_corpus():
    assert is_normal_pseudomanifold(boundary_simplex(5)).normal
    j = join(boundary_simplex(2), Complex([[3, 4], [4, 5], [3, 5]]))
    assert is_normal_pseudomanifold(j).normal
    assert is_normal_pseudomanifold(stacked_sphere(4, 4, 2)).normal
    assert is_normal_pseudomanifold(vertex_folded_instance(5).complex).normal


def test_pinched_complex_fails_link_connectivity():
    p = pinched_complex()
    report = is_normal_pseudomanifold(p)
    assert report.pure
    assert report.ridge_degrees_ok
    assert not report.links_connected
    assert (5,) in report.witnesses["disconnected_links"]
    assert not report.normal


def test_homology_spheres_and_cones():
    assert homology_gf2(boundary_simplex(5)) == (0, 0, 0, 0, 1)
    assert homology_gf2(boundary_simplex(3)) == (0, 0, 1)
    c = cone(10, boundary_simplex(3))
    assert homology_gf2(c) == (0, 0, 0, 0)


def test_homology_projective_plane():
    rp2 = projective_plane_6()
    assert is_normal_pseudomanifold(rp2).normal
    assert homology_gf2(rp2) == (0, 1, 1)
    assert homology_gf2(rp2) == reference_betti(rp2)


def test_homology_matches_reference_on_corpus():
    for k in (
        stacked_sphere(4, 3, 8),
        vertex_folded_instance(9).complex,
        join(boundary_simplex(2), Complex([[3, 4], [4, 5], [3, 5]])),
    ):
        assert homology_gf2(k) == reference_betti(k)


def test_is_stacked_sphere():
    assert is_stacked_sphere(stacked_sphere(4, 3, 21))
    assert not is_stacked_sphere(vertex_folded_instance(3).complex)
    j = join(boundary_simplex(2), Complex([[3, 4], [4, 5], [3, 5]]))
    assert not is_stacked_sphere(j)  # g2 = 1


def test_classify_vertices_boundary_simplex():
    verdicts = classify_vertices(boundary_simplex(5))
    assert all(v.status == "nonsingular" for v in verdicts.values())


def test_classify_fold_vertex_singular():
    record = vertex_folded_instance(12)
    k, t = record.complex, record.tracked
    verdict = classify_vertex(k, t)
    assert verdict.singular
    assert "betti" in verdict.certificate
    assert singular_vertices(k) == [t]


def test_classify_edge_fold_both_singular():
    record = edge_folded_instance(14)
    assert singular_vertices(record.complex) == [0, 1]


def test_classify_3dim_surface_links():
    base = linear_chain(3, 5, 3, fixed=(0,))
    assert singular_vertices(base) == []
    from psf.corpus import singular_base_3d

    sb = singular_base_3d(6)
    assert singular_vertices(sb.complex) == [sb.tracked]
    verdict = classify_vertex(sb.complex, sb.tracked)
    assert "euler" in verdict.certificate


def test_classify_unknown_for_uncertified_sphere_link():
    # suspension of the join of two circles: apex links are 3-spheres with
    # g2 = 1 and no missing facet, so no constructive certificate exists
    j = join(boundary_simplex(2), Complex([[3, 4], [4, 5], [3, 5]]))
    susp = one_vertex_suspension(j, 0)
    apex = max(susp.vertices)
    assert is_normal_pseudomanifold(susp).normal
    assert classify_vertex(susp, apex).status == "unknown"


def test_optimality_boundary_simplex_and_folds():
    b5 = boundary_simplex(5)
    assert optimality_check(b5, 0).optimal
    record = vertex_folded_instance(25)
    assert optimality_check(record.complex, record.tracked).optimal
    record = edge_folded_instance(26)
    assert optimality_check(record.complex, record.tracked).optimal
    assert optimality_check(record.complex, record.companion).optimal


def test_handle_added_never_optimal():
    k = handle_instance(31).complex
    assert not any(optimality_check(k, v).optimal for v in k.vertices)


def test_optimality_invariant_under_subdivision():
    record = vertex_folded_instance(33)
    k, t = record.complex, record.tracked
    before = optimality_check(k, t)
    sub = facet_subdivision(k, k.facets[0])
    after = optimality_check(sub, t)
    assert (before.g2_optimal, before.g3_optimal) == (after.g2_optimal, after.g3_optimal)


def test_suspension_optimal_at_both_poles():
    record = suspension_instance(7)
    k = record.complex
    assert optimality_check(k, record.tracked).optimal
    assert optimality_check(k, record.companion).optimal
    assert sorted(singular_vertices(k)) == sorted([record.tracked, record.companion])


def test_prop_g2_link_bound_on_corpus():
    corpus = [
        stacked_sphere(4, 3, 5),
        vertex_folded_instance(41).complex,
        edge_folded_instance(42).complex,
        handle_instance(43).complex,
        suspension_instance(44).complex,
    ]
    for k in corpus:
        bound = g2(k)
        for v in k.vertices:
            assert g2(k.link((v,))) <= bound
