"""The inverse engine: connected-sum splitting, vertex and edge
unfolding, inverse facet subdivision, suspension recognition, and the
decomposition loop that reduces an optimal normal 4-pseudomanifold to
certified leaves.

Every inverse operation records the exact forward operation that
undoes it, so a decomposition tree replays to the input complex with
identical vertex labels, not merely up to isomorphism.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .complexes import Complex, ComplexError, Simplex, UnknownVertex, fresh_labels, simplex
from .build import (
    connected_sum,
    edge_fold,
    check_edge_fold_admissible,
    check_vertex_fold_admissible,
    facet_subdivision,
    one_vertex_suspension,
    vertex_fold,
)
from .enumeration import g2 as _g2
from .separation import (
    PreconditionUnmet,
    SeparationReport,
    SideAssignmentInconsistent,
    _cut_components,
    classify_missing_facet,
    oriented_sides,
    require_missing_facet,
    separation_report,
)
from .verify import classify_vertex, is_normal_pseudomanifold, optimality_check


class DecompositionError(ComplexError):
    pass


class LinkNotSimplexBoundary(DecompositionError):
    pass


class SimplexAlreadyPresent(DecompositionError):
    """The reinsertion target already exists; this is the contradiction
    branch of the reduction argument and signals invalid input."""


class MinimalComplex(DecompositionError):
    pass


class NotSplit(DecompositionError):
    """The global cut along the missing facet left one piece: handle case."""


class NotOptimal(DecompositionError):
    pass


class UnknownSingularity(DecompositionError):
    pass


class NoMissingFacetFound(DecompositionError):
    pass


class ModeMismatch(DecompositionError):
    pass


class MalformedTree(DecompositionError):
    pass


class CaseFallthrough(DecompositionError):
    """A facet straddles the side assignment; impossible for valid input."""


MODE_ONE = "one-singularity"
MODE_SUSPENSION = "two-singularity-suspension"
MODE_EDGE = "two-singularity-edge-fold"
MODES = (MODE_ONE, MODE_SUSPENSION, MODE_EDGE)


# -- inverse operations --------------------------------------------------


def inverse_facet_subdivision(k: Complex, u: int) -> Complex:
    """Delete a vertex whose link is a simplex boundary and restore the facet."""
    if u not in k.vertices:
        raise UnknownVertex(f"vertex {u} not in complex")
    d = k.dim
    if len(k.vertices) < d + 3:
        raise MinimalComplex("complex has no room for an inverse subdivision")
    link = k.link((u,))
    vs = tuple(sorted(link.vertices))
    if len(vs) != d + 1 or link.maximal_faces != frozenset(itertools.combinations(vs, d)):
        raise LinkNotSimplexBoundary(f"link of {u} is not the boundary of a {d}-simplex")
    if k.has_face(vs):
        raise SimplexAlreadyPresent(f"simplex {vs} already present; retriangulation case")
    facets = {f for f in k.maximal_faces if u not in f}
    facets.add(vs)
    return Complex(facets)


@dataclass(frozen=True)
class SplitResult:
    part_a: Complex
    part_b: Complex
    missing_facet: Simplex
    pairing: dict[int, int]  # vertex of the facet in part_a -> its copy in part_b

    @property
    def parts(self) -> tuple[Complex, Complex]:
        return self.part_a, self.part_b


def split_connected_sum(k: Complex, tau) -> SplitResult:
    """Undo a connected sum along the missing facet ``tau``.

    Facets are assigned to the two components of the facet graph cut
    along the boundary of tau; each part receives tau back as a facet,
    with part_b's copy on fresh labels so the parts are label-disjoint.
    """
    t = require_missing_facet(k, tau)
    comps = _cut_components(k, set(t))
    if len(comps) == 1:
        raise NotSplit(f"cut along {t} does not disconnect; handle signature")
    if len(comps) > 2:
        raise DecompositionError(f"cut along {t} produced {len(comps)} pieces")
    side_a, side_b = comps
    fresh = fresh_labels(k, len(t))
    pairing = dict(zip(t, fresh))
    part_a = Complex(set(side_a) | {t})
    part_b = Complex(
        {tuple(sorted(pairing.get(v, v) for v in f)) for f in side_b} | {tuple(fresh)}
    )
    return SplitResult(part_a, part_b, t, pairing)


@dataclass(frozen=True)
class UnfoldResult:
    complex: Complex
    source_facet: Simplex
    target_facet: Simplex
    pairs: tuple[tuple[int, int], ...]

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)


def _side_vertex_tables(sides, tau_set):
    plus, minus = sides
    v_plus = {v for f in plus for v in f} - tau_set
    v_minus = {v for f in minus for v in f} - tau_set
    return v_plus, v_minus


def _witness_side(x: int, witnesses, v_plus, v_minus) -> int:
    on_plus = [w for w in witnesses if w in v_plus]
    on_minus = [w for w in witnesses if w in v_minus]
    if on_plus and not on_minus:
        return 0
    if on_minus and not on_plus:
        return 1
    raise CaseFallthrough(
        f"witnesses {sorted(witnesses)} straddle the sides of the link of {x}"
    )


def vertex_unfold(k: Complex, tau, v: int, report: Optional[SeparationReport] = None) -> UnfoldResult:
    """Undo a vertex folding at ``v`` whose merged facet became ``tau``.

    The complement of v is rewritten: facets whose attaching edges lie
    on the negative side have their tau-vertices replaced by fresh
    copies, after which the boundary is coned back by v.  The recorded
    forward fold reproduces the input exactly.
    """
    t = require_missing_facet(k, tau)
    if v not in t:
        raise PreconditionUnmet(f"vertex {v} is not in {t}")
    if report is None:
        report = separation_report(k, t)
    if report.per_vertex[v].separates:
        raise PreconditionUnmet(f"boundary of {t} minus {v} separates the link of {v}")
    others = [x for x in t if x != v]
    for x in others:
        if not report.per_vertex[x].separates:
            raise PreconditionUnmet(f"vertex {x} does not separate its link")

    sides, _anchors = oriented_sides(k, t, v, report)
    tau_set = set(t)
    tables = {x: _side_vertex_tables(sides[x], tau_set) for x in others}

    fresh = fresh_labels(k, len(others))
    prime = dict(zip(others, fresh))

    rewritten: set[Simplex] = set()
    for f in k.maximal_faces:
        if v in f:
            continue
        overlap = [x for x in f if x in prime]
        if not overlap:
            rewritten.add(f)
            continue
        witnesses = [w for w in f if w not in tau_set]
        side_votes = {_witness_side(x, witnesses, *tables[x]) for x in overlap}
        if len(side_votes) != 1:
            raise SideAssignmentInconsistent(
                f"facet {f} is assigned to different sides by its tau-vertices"
            )
        if side_votes.pop() == 0:
            rewritten.add(f)
        else:
            rewritten.add(tuple(sorted(prime[x] if x in prime else x for x in f)))

    boundary = [r for r, fs in Complex(rewritten).ridge_facet_map().items() if len(fs) == 1]
    facets = rewritten | {tuple(sorted(r + (v,))) for r in boundary}
    unfolded = Complex(facets)

    source = t
    target = tuple(sorted([v] + fresh))
    mapping = {v: v, **prime}
    ok, reason = check_vertex_fold_admissible(unfolded, source, target, mapping)
    if not ok:
        raise DecompositionError(f"reconstructed fold is not admissible: {reason}")
    if vertex_fold(unfolded, source, target, mapping) != k:
        raise DecompositionError("folding the unfolded complex does not reproduce the input")
    return UnfoldResult(unfolded, source, target, tuple(sorted(mapping.items())))


def edge_unfold(k: Complex, tau, edge, report: Optional[SeparationReport] = None) -> UnfoldResult:
    """Undo an edge folding along ``edge`` whose merged facet became ``tau``."""
    t = require_missing_facet(k, tau)
    u, v = sorted(edge)
    if u not in t or v not in t:
        raise PreconditionUnmet(f"edge {u}{v} is not inside {t}")
    if not k.has_face((u, v)):
        raise PreconditionUnmet(f"{u}{v} is not an edge")
    if report is None:
        report = separation_report(k, t)
    others = [x for x in t if x not in (u, v)]
    for y in (u, v):
        if report.per_vertex[y].separates:
            raise PreconditionUnmet(f"boundary of {t} minus {y} separates the link of {y}")
    for x in others:
        if not report.per_vertex[x].separates:
            raise PreconditionUnmet(f"vertex {x} does not separate its link")
    edge_link = k.link((u, v))
    if len(_cut_components(edge_link, set(others))) != 1:
        raise PreconditionUnmet(
            f"link of {u}{v} is separated by the boundary of {tuple(others)}; handle case"
        )

    sides, _anchors = oriented_sides(k, t, u, report)
    tau_set = set(t)
    tables = {x: _side_vertex_tables(sides[x], tau_set) for x in others}

    fresh = fresh_labels(k, len(others))
    minus_copy = dict(zip(others, fresh))

    rewritten: set[Simplex] = set()
    for f in k.maximal_faces:
        overlap = [x for x in f if x in minus_copy]
        if not overlap:
            rewritten.add(f)
            continue
        witnesses = [w for w in f if w not in tau_set]
        side_votes = {_witness_side(x, witnesses, *tables[x]) for x in overlap}
        if len(side_votes) != 1:
            raise SideAssignmentInconsistent(
                f"facet {f} is assigned to different sides by its tau-vertices"
            )
        if side_votes.pop() == 0:
            rewritten.add(f)
        else:
            rewritten.add(tuple(sorted(minus_copy.get(x, x) for x in f)))

    source = t
    target = tuple(sorted([u, v] + fresh))
    facets = rewritten | {source, target}
    unfolded = Complex(facets)

    mapping = {u: u, v: v, **minus_copy}
    ok, reason = check_edge_fold_admissible(unfolded, source, target, mapping)
    if not ok:
        raise DecompositionError(f"reconstructed fold is not admissible: {reason}")
    if edge_fold(unfolded, source, target, mapping) != k:
        raise DecompositionError("folding the unfolded complex does not reproduce the input")
    return UnfoldResult(unfolded, source, target, tuple(sorted(mapping.items())))


def recognize_one_vertex_suspension(k: Complex, t: int, t1: int):
    """Recognise ``k`` as the one-vertex suspension of the link of ``t``
    with pole ``t1``; returns ``(base, t1)`` or None.

    The test is the facet-level containment of the two links plus an
    exact reconstruction check.
    """
    if t == t1 or t not in k.vertices or t1 not in k.vertices:
        return None
    if not k.has_face((t, t1)):
        return None
    for f in k.maximal_faces:
        if t1 in f and t not in f:
            g = tuple(x for x in f if x != t1)
            if not k.has_face(g + (t,)):
                return None
    base = k.link((t,))
    expected = {tuple(sorted(g + (t1,))) for g in base.maximal_faces if t1 not in g}
    expected |= {tuple(sorted(g + (t,))) for g in base.maximal_faces}
    if frozenset(expected) != k.maximal_faces:
        return None
    return base, t1


# -- decomposition trees ---------------------------------------------------


@dataclass
class TreeNode:
    """One decomposition step.

    Kinds: ``leaf`` (a certified terminal complex, stored verbatim),
    ``split`` (two children glued by a connected sum), ``vertex_unfold``
    and ``edge_unfold`` (child folded back with the recorded bijection),
    ``inverse_subdivision`` (child re-subdivided at the recorded facet)
    and ``suspension_base`` (terminal; the stored 3-dimensional base is
    suspended at ``vertex`` with the recorded ``apex``).
    """

    kind: str
    children: tuple[int, ...] = ()
    leaf_kind: Optional[str] = None  # boundary_simplex | stacked_sphere | irreducible_base
    facets: Optional[tuple[Simplex, ...]] = None
    n: Optional[int] = None
    missing_facet: Optional[Simplex] = None
    vertex: Optional[int] = None
    edge: Optional[tuple[int, int]] = None
    apex: Optional[int] = None
    facet: Optional[Simplex] = None
    source_facet: Optional[Simplex] = None
    target_facet: Optional[Simplex] = None
    pairs: Optional[tuple[tuple[int, int], ...]] = None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.children:
            out["children"] = list(self.children)
        for key in ("leaf_kind", "n", "vertex", "apex"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        if self.facets is not None:
            out["facets"] = [list(f) for f in self.facets]
        for key in ("missing_facet", "edge", "facet", "source_facet", "target_facet"):
            value = getattr(self, key)
            if value is not None:
                out[key] = list(value)
        if self.pairs is not None:
            out["pairs"] = [list(p) for p in self.pairs]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "TreeNode":
        def tup(x):
            return None if x is None else tuple(x)

        def tup2(x):
            return None if x is None else tuple(tuple(p) for p in x)

        try:
            return cls(
                kind=data["kind"],
                children=tuple(data.get("children", ())),
                leaf_kind=data.get("leaf_kind"),
                facets=None
                if data.get("facets") is None
                else tuple(tuple(f) for f in data["facets"]),
                n=data.get("n"),
                missing_facet=tup(data.get("missing_facet")),
                vertex=data.get("vertex"),
                edge=tup(data.get("edge")),
                apex=data.get("apex"),
                facet=tup(data.get("facet")),
                source_facet=tup(data.get("source_facet")),
                target_facet=tup(data.get("target_facet")),
                pairs=tup2(data.get("pairs")),
            )
        except (KeyError, TypeError) as exc:
            raise MalformedTree(f"bad tree node {data!r}: {exc}") from exc


@dataclass
class DecompositionTree:
    steps: list[TreeNode]
    root: int
    counters: dict[str, int] = field(default_factory=dict)

    @property
    def vertex_fold_count(self) -> int:
        return self.counters.get("vertex_folds", 0)

    @property
    def edge_fold_count(self) -> int:
        return self.counters.get("edge_folds", 0)

    def leaves(self) -> list[TreeNode]:
        return [s for s in self.steps if s.kind in ("leaf", "suspension_base")]

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "root": self.root,
            "counters": dict(self.counters),
            "steps": [s.to_dict() for s in self.steps],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DecompositionTree":
        if not isinstance(data, dict) or data.get("version") != 1:
            raise MalformedTree("tree document must carry version 1")
        steps = [TreeNode.from_dict(s) for s in data.get("steps", [])]
        root = data.get("root")
        if not isinstance(root, int):
            raise MalformedTree("missing root index")
        tree = cls(steps, root, dict(data.get("counters", {})))
        tree.validate()
        return tree

    def validate(self) -> None:
        if not (0 <= self.root < len(self.steps)):
            raise MalformedTree("root index out of range")
        for i, node in enumerate(self.steps):
            for c in node.children:
                if not (0 <= c < i):
                    raise MalformedTree(f"node {i} references child {c}")


def rebuild(tree: DecompositionTree) -> Complex:
    """Replay a decomposition tree bottom-up through the forward constructors."""
    tree.validate()
    built: list[Optional[Complex]] = [None] * len(tree.steps)
    for i, node in enumerate(tree.steps):
        kids = [built[c] for c in node.children]
        if node.kind in ("leaf",):
            if node.facets is None:
                raise MalformedTree(f"leaf node {i} lacks facets")
            built[i] = Complex(node.facets)
        elif node.kind == "suspension_base":
            if node.facets is None or node.vertex is None or node.apex is None:
                raise MalformedTree(f"suspension node {i} incomplete")
            base = Complex(node.facets)
            built[i] = one_vertex_suspension(base, node.vertex, apex=node.apex)
        elif node.kind == "inverse_subdivision":
            (child,) = kids
            built[i] = facet_subdivision(child, node.facet, new_vertex=node.vertex)
        elif node.kind == "vertex_unfold":
            (child,) = kids
            built[i] = vertex_fold(child, node.source_facet, node.target_facet, dict(node.pairs))
        elif node.kind == "edge_unfold":
            (child,) = kids
            built[i] = edge_fold(child, node.source_facet, node.target_facet, dict(node.pairs))
        elif node.kind == "split":
            a, b = kids
            built[i] = connected_sum(a, b, dict(node.pairs))
        else:
            raise MalformedTree(f"unknown node kind {node.kind!r}")
    return built[tree.root]


# -- the decomposition engine ----------------------------------------------


def _is_boundary_simplex(k: Complex) -> bool:
    vs = sorted(k.vertices)
    return len(vs) == k.dim + 2 and k.maximal_faces == frozenset(
        itertools.combinations(vs, k.dim + 1)
    )


def _debug_enabled(debug: Optional[bool]) -> bool:
    if debug is not None:
        return debug
    return os.environ.get("PSF_DEBUG_VERIFY", "") == "1"


class _Engine:
    def __init__(self, mode: str, debug: bool):
        self.mode = mode
        self.debug = debug
        self.steps: list[TreeNode] = []
        self.counters = {
            "vertex_folds": 0,
            "edge_folds": 0,
            "connected_sums": 0,
            "inverse_subdivisions": 0,
        }
        self.irreducible = False
        self.budget = 100_000

    def emit(self, node: TreeNode) -> int:
        self.steps.append(node)
        return len(self.steps) - 1

    def spend(self):
        self.budget -= 1
        if self.budget < 0:
            raise DecompositionError("step budget exhausted; decomposition does not terminate")

    def verdict(self, k: Complex, v: Optional[int]) -> Optional[str]:
        if v is None or v not in k.vertices:
            return None
        verdict = classify_vertex(k, v)
        if verdict.status == "unknown":
            raise UnknownSingularity(f"vertex {v} has an unknown link verdict")
        return verdict.status

    def check_state(self, k: Complex, t: Optional[int]):
        if not self.debug:
            return
        report = is_normal_pseudomanifold(k)
        if not report.normal:
            raise DecompositionError(f"intermediate complex is not normal: {report}")
        if t is not None and t in k.vertices:
            opt = optimality_check(k, t)
            if not opt.optimal:
                raise DecompositionError(f"optimality lost at vertex {t}")

    # -- main recursion --

    def build(self, k: Complex, t: Optional[int], t1: Optional[int]) -> int:
        self.spend()
        self.check_state(k, t)
        if _is_boundary_simplex(k):
            return self.emit(
                TreeNode("leaf", leaf_kind="boundary_simplex", n=k.dim + 1, facets=k.facets)
            )
        status = self.verdict(k, t)
        if status != "singular":
            return self.build_stacked(k, t, t1)
        return self.build_singular(k, t, t1)

    def build_stacked(self, k: Complex, t, t1) -> int:
        if _g2(k) != 0:
            self.irreducible = True
            return self.emit(TreeNode("leaf", leaf_kind="irreducible_base", facets=k.facets))
        missing = sorted(k.missing_simplices(k.dim))
        if not missing:
            raise NoMissingFacetFound(
                f"stacked complex with {len(k.vertices)} vertices has no missing facet"
            )
        cls = classify_missing_facet(k, missing[0])
        if cls.kind != "connected_sum_split":
            raise DecompositionError(
                f"missing facet {missing[0]} of a stacked complex classified as {cls.kind}"
            )
        return self.apply_split(k, missing[0], t, t1)

    def build_singular(self, k: Complex, t: int, t1) -> int:
        # reduction outside the star of t
        outside = sorted(v for v in k.vertices if v != t and v not in k.neighbors(t))
        for u in outside:
            link = k.link((u,))
            vs = tuple(sorted(link.vertices))
            if len(vs) == k.dim + 1 and link.maximal_faces == frozenset(
                itertools.combinations(vs, k.dim)
            ):
                reduced = inverse_facet_subdivision(k, u)
                self.counters["inverse_subdivisions"] += 1
                child = self.build(reduced, t, t1)
                return self.emit(
                    TreeNode(
                        "inverse_subdivision",
                        children=(child,),
                        vertex=u,
                        facet=vs,
                    )
                )
        if outside:
            u = outside[0]
            link = k.link((u,))
            if _g2(link) != 0:
                raise DecompositionError(
                    f"vertex {u} outside the star of {t} has a non-stacked link"
                )
            candidates = sorted(link.missing_simplices(link.dim))
            in_complex = [c for c in candidates if k.has_face(c)]
            if not in_complex:
                raise DecompositionError(
                    f"no reinsertable missing facet in the link of {u}; retriangulation case"
                )
            missing = tuple(sorted(in_complex[0] + (u,)))
            return self.apply_classified(k, missing, t, t1)

        # all vertices are now in the star of t; the 2-skeleton must match it
        for f2 in sorted(k.faces(2)):
            if t not in f2 and not k.has_face(f2 + (t,)):
                raise DecompositionError(
                    f"triangle {f2} lies outside the star of {t}; optimality hypotheses violated"
                )

        if self.mode == MODE_SUSPENSION and t1 is not None and t1 in k.vertices:
            if self.verdict(k, t1) == "singular":
                found = recognize_one_vertex_suspension(k, t, t1)
                if found:
                    base, pole = found
                    base_link = base.link((pole,))
                    if _g2(base) != _g2(base_link):
                        raise DecompositionError(
                            f"suspension base is not g2-minimal at {pole}"
                        )
                    return self.emit(
                        TreeNode(
                            "suspension_base",
                            vertex=pole,
                            apex=t,
                            facets=base.facets,
                        )
                    )

        interior = sorted(
            f3
            for f3 in k.faces(3)
            if t not in f3 and not k.has_face(f3 + (t,))
        )
        if not interior:
            self.irreducible = True
            return self.emit(TreeNode("leaf", leaf_kind="irreducible_base", facets=k.facets))

        tau = self.choose_interior(k, interior, t, t1)
        missing = tuple(sorted(tau + (t,)))
        return self.apply_classified(k, missing, t, t1)

    def choose_interior(self, k: Complex, interior, t, t1) -> Simplex:
        if self.mode == MODE_SUSPENSION and t1 is not None:
            preferred = [f3 for f3 in interior if t1 not in f3 and k.has_face(f3 + (t1,))]
            if preferred:
                return preferred[0]
        if t1 is not None:
            nonsingular = [f3 for f3 in interior if t1 not in f3]
            if nonsingular:
                return nonsingular[0]
        return interior[0]

    def apply_classified(self, k: Complex, missing, t, t1) -> int:
        cls = classify_missing_facet(k, missing)
        if cls.kind == "connected_sum_split":
            return self.apply_split(k, missing, t, t1)
        if cls.kind == "vertex_fold":
            unfold = vertex_unfold(k, missing, cls.vertex, report=cls.report)
            self.counters["vertex_folds"] += 1
            got = _g2(k) - _g2(unfold.complex)
            expected = comb(k.dim + 1, 2)
            if got != expected:
                raise DecompositionError(f"vertex unfold changed g2 by {got}, expected {expected}")
            child = self.build(unfold.complex, t, t1)
            return self.emit(
                TreeNode(
                    "vertex_unfold",
                    children=(child,),
                    missing_facet=simplex(missing),
                    vertex=cls.vertex,
                    source_facet=unfold.source_facet,
                    target_facet=unfold.target_facet,
                    pairs=unfold.pairs,
                )
            )
        if cls.kind == "edge_fold":
            if self.mode != MODE_EDGE:
                raise ModeMismatch(
                    f"edge-fold signature at {cls.edge} in mode {self.mode!r}"
                )
            unfold = edge_unfold(k, missing, cls.edge, report=cls.report)
            self.counters["edge_folds"] += 1
            child = self.build(unfold.complex, t, t1)
            return self.emit(
                TreeNode(
                    "edge_unfold",
                    children=(child,),
                    missing_facet=simplex(missing),
                    edge=cls.edge,
                    source_facet=unfold.source_facet,
                    target_facet=unfold.target_facet,
                    pairs=unfold.pairs,
                )
            )
        if cls.kind == "handle_like":
            raise DecompositionError(
                f"missing facet {tuple(missing)} carries a handle signature; optimal inputs cannot"
            )
        raise DecompositionError(f"missing facet {tuple(missing)} is unclassified")

    def apply_split(self, k: Complex, missing, t, t1) -> int:
        split = split_connected_sum(k, missing)
        self.counters["connected_sums"] += 1

        def locate(part: Complex, v, mapped):
            if v is None:
                return None
            w = mapped.get(v, v)
            return w if w in part.vertices else None

        child_a = self.build(
            split.part_a, locate(split.part_a, t, {}), locate(split.part_a, t1, {})
        )
        child_b = self.build(
            split.part_b,
            locate(split.part_b, t, split.pairing),
            locate(split.part_b, t1, split.pairing),
        )
        return self.emit(
            TreeNode(
                "split",
                children=(child_a, child_b),
                missing_facet=split.missing_facet,
                pairs=tuple(sorted(split.pairing.items())),
            )
        )


def decompose(
    k: Complex,
    t: int,
    mode: str = MODE_EDGE,
    debug: Optional[bool] = None,
) -> DecompositionTree:
    """Decompose an optimal normal 4-pseudomanifold into certified leaves.

    The loop exhausts inverse facet subdivisions outside the star of
    ``t``, locates a missing facet through ``t``, classifies it,
    applies the matching inverse operation and recurses.  ``mode``
    selects the route for two singularities: either termination at a
    recognised one-vertex suspension or edge unfoldings along the
    singular edge.
    """
    if mode not in MODES:
        raise ModeMismatch(f"unknown mode {mode!r}; expected one of {MODES}")
    if k.dim != 4:
        raise DecompositionError("decomposition engine requires dimension 4")
    if t not in k.vertices:
        raise UnknownVertex(f"vertex {t} not in complex")
    report = is_normal_pseudomanifold(k)
    if not report.normal:
        raise DecompositionError(f"input is not a normal pseudomanifold: {report}")
    if not optimality_check(k, t).optimal:
        raise NotOptimal(f"complex is not g2- and g3-optimal at vertex {t}")

    from .verify import classify_vertices

    verdicts = classify_vertices(k)
    unknown = [v for v, verdict in verdicts.items() if verdict.status == "unknown"]
    if unknown:
        raise UnknownSingularity(f"vertices {unknown} have unknown link verdicts")
    singular = [v for v, verdict in verdicts.items() if verdict.singular]

    limit = 1 if mode == MODE_ONE else 2
    if len(singular) > limit:
        raise ModeMismatch(f"{len(singular)} singular vertices exceed mode {mode!r}")
    if singular and t not in singular:
        raise ModeMismatch(f"tracked vertex {t} is not singular; singular set is {singular}")
    t1 = next((v for v in singular if v != t), None)

    engine = _Engine(mode, _debug_enabled(debug))
    root = engine.build(k, t, t1)
    tree = DecompositionTree(engine.steps, root, engine.counters)
    tree.counters["irreducible"] = int(engine.irreducible)
    if engine.debug and rebuild(tree) != k:
        raise DecompositionError("tree replay does not reproduce the input")
    return tree
