"""Separation and two-sidedness analysis around missing facets.

For a missing facet tau of a normal pseudomanifold, the key question at
each vertex x of tau is whether the boundary of (tau - x) separates the
link of x.  The per-vertex answers select the inverse operation that
must have produced tau: connected-sum split, vertex unfolding or edge
unfolding.

Two implementations of the separation test exist on purpose: the fast
one cuts the facet adjacency graph of the link, and an exhaustive
face-poset sweep acts as an independent oracle in tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .complexes import Complex, ComplexError, Simplex, simplex


class SeparationError(ComplexError):
    pass


class NotMissingFacet(SeparationError):
    pass


class MoreThanTwoComponents(SeparationError):
    """Cutting a link along a missing-facet boundary left more than two
    pieces, which contradicts normality of the input."""


class PreconditionUnmet(SeparationError):
    pass


class SideAssignmentInconsistent(SeparationError):
    """The two-point side anchors cannot be oriented coherently."""


@dataclass(frozen=True)
class VertexSeparation:
    vertex: int
    separates: bool
    sides: Optional[tuple[frozenset[Simplex], frozenset[Simplex]]]


@dataclass(frozen=True)
class SeparationReport:
    missing_facet: Simplex
    per_vertex: dict[int, VertexSeparation]

    @property
    def non_separating(self) -> tuple[int, ...]:
        return tuple(v for v in self.missing_facet if not self.per_vertex[v].separates)


@dataclass(frozen=True)
class MissingFacetClass:
    kind: str  # connected_sum_split | vertex_fold | edge_fold | handle_like | unclassified
    vertex: Optional[int] = None
    edge: Optional[tuple[int, int]] = None
    report: Optional[SeparationReport] = None


def require_missing_facet(k: Complex, tau) -> Simplex:
    t = simplex(tau)
    if len(t) != k.dim + 1:
        raise NotMissingFacet(f"{t} has the wrong number of vertices for a missing facet")
    if k.has_face(t):
        raise NotMissingFacet(f"{t} is a face of the complex, not missing")
    if any(not k.has_face(sub) for sub in itertools.combinations(t, len(t) - 1)):
        raise NotMissingFacet(f"boundary of {t} is not fully present")
    return t


def _cut_components(link: Complex, barrier: set[int]) -> list[frozenset[Simplex]]:
    """Components of the link's facet graph after deleting every
    adjacency whose shared ridge lies inside ``barrier``."""
    facets = sorted(link.maximal_faces)
    parent = {f: f for f in facets}

    def find(f):
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    for ridge, fs in link.ridge_facet_map().items():
        if set(ridge) <= barrier:
            continue
        for f1, f2 in itertools.combinations(fs, 2):
            parent[find(f1)] = find(f2)

    groups: dict[Simplex, set[Simplex]] = {}
    for f in facets:
        groups.setdefault(find(f), set()).add(f)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def separates_link(k: Complex, x: int, tau) -> VertexSeparation:
    """Does the boundary of (tau - x) separate the link of x?

    One component means no; two components yields the sides; anything
    else flags corrupted input.
    """
    t = require_missing_facet(k, tau)
    if x not in t:
        raise SeparationError(f"vertex {x} is not in {t}")
    link = k.link((x,))
    barrier = set(t) - {x}
    comps = _cut_components(link, barrier)
    if len(comps) == 1:
        return VertexSeparation(x, False, None)
    if len(comps) == 2:
        return VertexSeparation(x, True, (comps[0], comps[1]))
    raise MoreThanTwoComponents(
        f"link of {x} fell into {len(comps)} pieces along {t}; input is not a normal pseudomanifold"
    )


def separates_link_poset(k: Complex, x: int, tau) -> tuple[bool, list[frozenset[Simplex]]]:
    """Independent oracle: exhaustive sweep of the face poset of the link.

    Faces inside the barrier are removed; remaining faces are connected
    whenever one covers the other.  Components are reported restricted
    to the link's facets so they are comparable with the graph cut.
    """
    t = require_missing_facet(k, tau)
    if x not in t:
        raise SeparationError(f"vertex {x} is not in {t}")
    link = k.link((x,))
    barrier = set(t) - {x}

    nodes = [f for d in range(link.dim + 1) for f in link.faces(d) if not set(f) <= barrier]
    parent = {f: f for f in nodes}

    def find(f):
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    node_set = set(nodes)
    for f in nodes:
        if len(f) == 1:
            continue
        for sub in itertools.combinations(f, len(f) - 1):
            if sub in node_set:
                parent[find(f)] = find(sub)

    groups: dict[Simplex, set[Simplex]] = {}
    for f in link.maximal_faces:
        groups.setdefault(find(f), set()).add(f)
    comps = sorted((frozenset(g) for g in groups.values()), key=min)
    return len(comps) > 1, comps


def separation_report(k: Complex, tau) -> SeparationReport:
    t = require_missing_facet(k, tau)
    return SeparationReport(t, {x: separates_link(k, x, t) for x in t})


# -- anchored side orientation -------------------------------------------


def _side_of_vertex(sides, w: int) -> int:
    """Index of the side whose facets contain the vertex ``w``.

    A vertex off the barrier has all its incident facets in one
    component, so the index is well defined.
    """
    hits = {i for i, side in enumerate(sides) for f in side if w in f}
    if len(hits) != 1:
        raise SideAssignmentInconsistent(f"vertex {w} meets sides {sorted(hits)}")
    return hits.pop()


def two_point_anchors(k: Complex, tau) -> dict[int, tuple[int, int]]:
    """For each vertex y of tau, the two facets over the ridge tau - y
    give a two-vertex link {q0, q1}; q0 is the smaller label."""
    t = simplex(tau)
    anchors = {}
    for y in t:
        ridge = tuple(v for v in t if v != y)
        pair = sorted(k.link(ridge).vertices)
        if len(pair) != 2:
            raise SeparationError(f"link of ridge {ridge} is not two points: {pair}")
        anchors[y] = (pair[0], pair[1])
    return anchors


def oriented_sides(k: Complex, tau, anchor_vertex: int, report: Optional[SeparationReport] = None):
    """Coherent plus/minus side assignment for every separating vertex of tau.

    Ridge links inside tau provide two-point anchors.  Orientations of
    all anchors and side polarities of all separating vertices are
    solved as one parity system; the anchor ridge opposite
    ``anchor_vertex`` is oriented with its smaller label positive.
    Returns ``(sides, anchors)`` where ``sides[x] = (plus, minus)``
    facet sets, or raises ``SideAssignmentInconsistent``.
    """
    t = simplex(tau)
    if anchor_vertex not in t:
        raise SeparationError(f"anchor {anchor_vertex} not in {t}")
    if report is None:
        report = separation_report(k, t)
    anchors = two_point_anchors(k, t)

    separating = [x for x in t if report.per_vertex[x].separates]
    if not separating:
        raise PreconditionUnmet("no separating vertex to orient")

    # Parity union-find over anchor orientations and vertex polarities.
    parity: dict = {}

    def find(node):
        if node not in parity:
            parity[node] = (node, 0)
            return node, 0
        root, par = parity[node]
        if root == node:
            return node, par
        r, p = find(root)
        parity[node] = (r, par ^ p)
        return r, par ^ p

    def union(a, b, rel):
        ra, pa = find(a)
        rb, pb = find(b)
        if ra == rb:
            if pa ^ pb != rel:
                raise SideAssignmentInconsistent(f"parity conflict between {a} and {b}")
            return
        parity[ra] = (rb, pa ^ pb ^ rel)

    for x in separating:
        sides = report.per_vertex[x].sides
        for y in t:
            if y == x:
                continue
            q0, q1 = anchors[y]
            s0 = _side_of_vertex(sides, q0)
            s1 = _side_of_vertex(sides, q1)
            if s0 == s1:
                raise SideAssignmentInconsistent(
                    f"anchor pair {q0},{q1} of ridge opposite {y} lies on one side of link({x})"
                )
            union(("ridge", y), ("vertex", x), s0)

    # Fix the global sign: anchor ridge oriented with q0 positive.
    _, flip = find(("ridge", anchor_vertex))

    out = {}
    for x in separating:
        _, p = find(("vertex", x))
        polarity = p ^ flip
        plus, minus = report.per_vertex[x].sides
        if polarity == 1:
            plus, minus = minus, plus
        out[x] = (plus, minus)
    oriented_anchors = {}
    for y in t:
        node = ("ridge", y)
        if node in parity:
            _, p = find(node)
            q0, q1 = anchors[y]
            oriented_anchors[y] = (q0, q1) if (p ^ flip) == 0 else (q1, q0)
    return out, oriented_anchors


def two_sided(k: Complex, tau, v: int) -> tuple[bool, str]:
    """Verify that the boundary of (tau - v) is two-sided in the link of v.

    Requires every other vertex of tau to separate its link; the
    verification is the coherence of the anchored side assignment.  A
    False return carries the witness and indicates invalid input.
    """
    t = require_missing_facet(k, tau)
    if v not in t:
        raise SeparationError(f"vertex {v} is not in {t}")
    report = separation_report(k, t)
    for x in t:
        if x != v and not report.per_vertex[x].separates:
            raise PreconditionUnmet(f"vertex {x} does not separate its link")
    try:
        oriented_sides(k, t, v, report)
    except SideAssignmentInconsistent as exc:
        return False, str(exc)
    return True, "anchored side assignment is coherent"


def classify_missing_facet(k: Complex, tau) -> MissingFacetClass:
    """Classify which operation produced the missing facet ``tau``.

    No non-separating vertex: connected sum (or handle, when the global
    facet graph stays connected after the cut).  One: vertex folding at
    that vertex.  Two forming an edge: edge folding, unless the link of
    the edge is separated too, which is the handle signature.
    """
    t = require_missing_facet(k, tau)
    report = separation_report(k, t)
    non_sep = report.non_separating

    if len(non_sep) == 0:
        comps = _cut_components(k, set(t))
        if len(comps) == 1:
            return MissingFacetClass("handle_like", report=report)
        if len(comps) == 2:
            return MissingFacetClass("connected_sum_split", report=report)
        raise MoreThanTwoComponents(
            f"global cut along {t} produced {len(comps)} pieces"
        )
    if len(non_sep) == 1:
        return MissingFacetClass("vertex_fold", vertex=non_sep[0], report=report)
    if len(non_sep) == 2:
        u, v = non_sep
        if k.has_face((u, v)):
            edge_link = k.link((u, v))
            barrier = set(t) - {u, v}
            comps = _cut_components(edge_link, barrier)
            if len(comps) == 1:
                return MissingFacetClass("edge_fold", edge=(u, v), report=report)
            if len(comps) == 2:
                return MissingFacetClass("handle_like", report=report)
            raise MoreThanTwoComponents(
                f"link of edge {u}{v} fell into {len(comps)} pieces"
            )
    return MissingFacetClass("unclassified", report=report)
