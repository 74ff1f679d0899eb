"""Acceptance suite: one test per criterion, each printing a verdict line.

Everything here is exact integer arithmetic; the only tolerances are
the stated wall-clock budgets.
"""

import sys
import time

from psf import Complex, f_vector, g2, g3, h_vector, is_isomorphic, join
from psf.build import (
    boundary_simplex,
    connected_sum,
    facet_subdivision,
    find_vertex_folds,
    one_vertex_suspension,
    vertex_fold,
)
from psf.buildscript import random_script, replay
from psf.corpus import (
    cone_point_base_3d,
    edge_folded_instance,
    handle_instance,
    linear_chain,
    vertex_folded_instance,
)
from psf.decompose import MODE_EDGE, MODE_ONE, decompose, rebuild
from psf.separation import classify_missing_facet, separates_link, separates_link_poset
from psf.verify import (
    classify_vertices,
    is_stacked_sphere,
    optimality_check,
)


def report(criterion: str, ok: bool, detail: str = ""):
    verdict = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {criterion}: {verdict}"
    if detail:
        line += f" ({detail})"
    print(line, file=sys.stderr)
    assert ok, line


def test_criterion_1_enumerative_exactness():
    start = time.monotonic()
    b5 = boundary_simplex(5)
    ok = f_vector(b5).entries == (1, 6, 15, 20, 15, 6)
    ok &= h_vector(b5).h == (1, 1, 1, 1, 1, 1)
    ok &= g2(b5) == 0 and g3(b5) == 0
    j = join(boundary_simplex(2), Complex([[3, 4], [4, 5], [3, 5]]))
    ok &= f_vector(j).entries == (1, 6, 15, 18, 9)
    ok &= g2(j) == 1
    elapsed = time.monotonic() - start
    report("1 enumerative exactness", ok and elapsed < 1.0, f"{elapsed:.2f}s")


def test_criterion_2_g_vector_laws():
    start = time.monotonic()
    counts = {"connected_sum": 0, "vertex_fold": 0, "edge_fold": 0, "handle_addition": 0}
    bad = 0
    scripts = 1000
    for seed in range(scripts):
        result = replay(random_script(seed, max_ops=12))
        for row in result.ledger:
            if row.checked and row.op in counts:
                counts[row.op] += 1
                if not row.ok:
                    bad += 1
    elapsed = time.monotonic() - start
    ok = bad == 0 and all(counts[op] > 0 for op in counts) and elapsed < 60
    report(
        "2 g-vector laws",
        ok,
        f"{scripts} scripts, rows={counts}, mismatches={bad}, {elapsed:.1f}s",
    )


def test_criterion_3_suspension_identities():
    start = time.monotonic()
    bases = 100
    bad = 0
    for seed in range(bases):
        base, pole = cone_point_base_3d(seed)
        susp = one_vertex_suspension(base, pole)
        fb, fs = f_vector(base), f_vector(susp)
        star_edges = len(base.star((pole,)).faces(1))
        if fs.f(0) != fb.f(0) + 1:
            bad += 1
        elif fs.f(1) != fb.f(1) + fb.f(0):
            bad += 1
        elif fs.f(2) != fb.f(2) + 2 * fb.f(1) - star_edges:
            bad += 1
    iso = is_isomorphic(one_vertex_suspension(boundary_simplex(4), 0), boundary_simplex(5))
    elapsed = time.monotonic() - start
    ok = bad == 0 and iso is not None and elapsed < 30
    report("3 suspension identities", ok, f"{bases} bases, failures={bad}, {elapsed:.1f}s")


def _round_trip_instances():
    """Construction recipes for criterion 4: optimal instances built from
    stacked spheres by foldings, sums and subdivisions."""
    recipes = []
    for i in range(60):
        recipes.append(("vertex-1", lambda s=i: (vertex_folded_instance(s, folds=1, sums=s % 3, subdivisions=s % 2), MODE_ONE)))
    for i in range(40):
        recipes.append(("vertex-2", lambda s=i: (vertex_folded_instance(1000 + s, folds=2, sums=s % 2), MODE_ONE)))
    for i in range(60):
        recipes.append(("edge-1", lambda s=i: (edge_folded_instance(2000 + s, edge_folds=1, sums=s % 3, subdivisions=s % 2), MODE_EDGE)))
    for i in range(40):
        recipes.append(("edge-mixed", lambda s=i: (edge_folded_instance(3000 + s, edge_folds=1, vertex_folds=1, sums=s % 2), MODE_EDGE)))
    return recipes


def test_criterion_4_round_trip_decomposition():
    start = time.monotonic()
    total = 0
    classification_checks = 0
    for name, make in _round_trip_instances():
        record, mode = make()
        k, t = record.complex, record.tracked
        for expected, tau in record.fold_images:
            cls = classify_missing_facet(k, tau)
            assert cls.kind == expected, (name, tau, cls.kind)
            classification_checks += 1
        for joint in record.sum_joints:
            cls = classify_missing_facet(k, joint)
            assert cls.kind == "connected_sum_split", (name, joint)
            classification_checks += 1
        tree = decompose(k, t, mode=mode)
        assert tree.vertex_fold_count == record.vertex_folds, name
        assert tree.edge_fold_count == record.edge_folds, name
        rebuilt = rebuild(tree)
        assert rebuilt == k, name
        assert is_isomorphic(rebuilt, k) is not None if total % 20 == 0 else True
        total += 1
    elapsed = time.monotonic() - start
    ok = total >= 200 and elapsed < 300
    report(
        "4 round-trip decomposition",
        ok,
        f"{total} instances, {classification_checks} classification checks, {elapsed:.1f}s",
    )


def test_criterion_5_fold_counter_arithmetic():
    checked = 0
    for seed, m, n in ((1, 1, 0), (2, 1, 1), (3, 2, 0), (4, 1, 2), (5, 2, 1)):
        record = edge_folded_instance(4000 + seed, edge_folds=m, vertex_folds=n)
        k, t = record.complex, record.tracked
        assert g2(k) == 6 * m + 10 * n
        tree = decompose(k, t, mode=MODE_EDGE)
        assert (tree.edge_fold_count, tree.vertex_fold_count) == (m, n)
        assert 6 * tree.edge_fold_count + 10 * tree.vertex_fold_count == g2(k)
        checked += 1
    report("5 fold counter arithmetic", checked == 5, f"{checked} (m,n) combinations")


def test_criterion_6_optimality_ledger():
    checks = 0

    # invariant under facet subdivision
    for seed in range(5):
        record = vertex_folded_instance(5000 + seed)
        k, t = record.complex, record.tracked
        sub = facet_subdivision(k, k.facets[seed % len(k.facets)])
        assert optimality_check(k, t).optimal == optimality_check(sub, t).optimal
        checks += 1

    # preserved under vertex folding at the tracked vertex
    for seed in range(3):
        chain = linear_chain(4, 10, 6000 + seed, fixed=(0,))
        before = optimality_check(chain, 0).optimal
        f1, f2, mapping = next(iter(find_vertex_folds(chain, fixed_vertex=0)))
        folded = vertex_fold(chain, f1, f2, mapping)
        assert before and optimality_check(folded, 0).optimal
        checks += 1

    # preserved under edge folding at the tracked edge end
    record = edge_folded_instance(6100)
    assert optimality_check(record.complex, record.tracked).optimal
    checks += 1

    # connected sum, tracked vertex not identified: optimal iff other part stacked
    base = vertex_folded_instance(6200)
    k, t = base.complex, base.tracked
    stacked = boundary_simplex(5).relabel({i: i + 500 for i in range(6)})
    src = [f for f in k.facets if t not in f][0]
    summed = connected_sum(k, stacked, dict(zip(src, stacked.facets[0])))
    assert optimality_check(summed, t).optimal
    checks += 1

    other = vertex_folded_instance(6300).complex
    other = other.relabel({v: v + 500 for v in other.vertices})
    src = [f for f in k.facets if t not in f][0]
    tgt = [f for f in other.facets if 500 not in f][0]
    summed_bad = connected_sum(k, other, dict(zip(src, tgt)))
    assert not optimality_check(summed_bad, t).optimal
    checks += 1

    # connected sum with the tracked vertex identified: optimal iff both parts optimal
    a = vertex_folded_instance(6400)
    b = vertex_folded_instance(6500)
    kb = b.complex.relabel({v: v + 500 for v in b.complex.vertices})
    tb = b.tracked + 500
    src = [f for f in a.complex.facets if a.tracked in f][0]
    tgt = [f for f in kb.facets if tb in f][0]
    mapping = {a.tracked: tb}
    mapping.update(zip([v for v in src if v != a.tracked], [v for v in tgt if v != tb]))
    merged = connected_sum(a.complex, kb, mapping)
    assert optimality_check(merged, a.tracked).optimal
    checks += 1

    # handle additions are never optimal
    for seed in range(2):
        k = handle_instance(6600 + seed).complex
        assert not any(optimality_check(k, v).optimal for v in k.vertices)
        checks += 1

    report("6 optimality ledger", checks >= 10, f"{checks} checks")


def test_criterion_7_rigidity_inequalities(shared_corpus):
    link_checks = 0
    star_checks = 0
    for name, k in shared_corpus:
        if k.dim < 3:
            continue
        bound = g2(k)
        for v in k.vertices:
            assert g2(k.link((v,))) <= bound, (name, v)
            link_checks += 1
    for name, k in shared_corpus:
        if k.dim != 4:
            continue
        verdicts = classify_vertices(k)
        if any(s.status == "unknown" for s in verdicts.values()):
            continue
        singular = [v for v, s in verdicts.items() if s.singular]
        if not singular or len(singular) > 2:
            continue
        for t in singular:
            if g2(k) == g2(k.link((t,))):
                assert g3(k) >= g3(k.star((t,))), (name, t)
                star_checks += 1
    report(
        "7 rigidity inequalities",
        link_checks > 100 and star_checks >= 5,
        f"{link_checks} link checks, {star_checks} star checks",
    )


def test_criterion_8_separation_oracle_agreement(shared_corpus):
    pairs = 0
    for name, k in shared_corpus:
        if k.dim != 4 or len(k.maximal_faces) > 80:
            continue
        for tau in sorted(k.missing_simplices(k.dim)):
            for x in tau:
                fast = separates_link(k, x, tau)
                slow_sep, slow_comps = separates_link_poset(k, x, tau)
                assert fast.separates == slow_sep, (name, tau, x)
                assert len(slow_comps) in (1, 2), (name, tau, x)
                if fast.separates:
                    assert set(fast.sides) == set(slow_comps), (name, tau, x)
                pairs += 1
    report("8 separation oracle agreement", pairs >= 50, f"{pairs} (vertex, facet) pairs")


def test_criterion_9_optimal_manifolds_are_stacked(shared_corpus):
    manifolds = 0
    optimal_manifolds = 0
    for name, k in shared_corpus:
        if k.dim != 4:
            continue
        verdicts = classify_vertices(k)
        if any(s.status == "unknown" for s in verdicts.values()):
            # undecided links disqualify the manifold check, not the criterion
            continue
        if any(s.singular for s in verdicts.values()):
            continue
        manifolds += 1
        if any(optimality_check(k, v).optimal for v in k.vertices):
            optimal_manifolds += 1
            assert g2(k) == 0, name
            assert is_stacked_sphere(k), name
    report(
        "9 optimal manifolds are stacked",
        manifolds >= 4 and optimal_manifolds >= 3,
        f"{manifolds} manifolds, {optimal_manifolds} optimal",
    )
