"""Forward constructions: simplex boundaries, cones, suspensions,
connected sums, handle additions, vertex and edge foldings, facet
subdivisions and stacked spheres.

Identifications follow one quotient convention throughout: vertices of
the target facet are relabeled to their partners in the source facet,
facets are deduplicated, and the merged facet is deleted.  Fresh
vertices introduced by an operation are ``max existing label + 1, + 2,
...`` unless the caller pins them, which keeps every construction
replayable from a script.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .complexes import Complex, ComplexError, Simplex, VertexOverlap, fresh_labels, simplex


class ConstructionError(ComplexError):
    pass


class VertexAlreadyPresent(ConstructionError):
    pass


class DimensionMismatch(ConstructionError):
    pass


class NotAFacet(ConstructionError):
    pass


class FacetsShareVertices(ConstructionError):
    pass


class InadmissibleIdentification(ConstructionError):
    """Handle addition whose identification would not stay simplicial."""


class InadmissibleFold(ConstructionError):
    pass


class SplitMix64:
    """Tiny deterministic PRNG: same seed, same stream, on any platform."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self._state = seed & self.MASK

    def next64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & self.MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange needs a positive bound")
        return self.next64() % n

    def choice(self, seq: Sequence):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]
        return items


@dataclass(frozen=True)
class FoldingMap:
    """A facet-pair bijection together with its declared flavor.

    ``pairs`` maps every vertex of ``source_facet`` to a vertex of
    ``target_facet``; flavor is one of ``vertex_fold``, ``edge_fold``,
    ``handle`` or ``connected_sum``.
    """

    source_facet: Simplex
    target_facet: Simplex
    pairs: tuple[tuple[int, int], ...]
    flavor: str

    def __post_init__(self):
        m = dict(self.pairs)
        if sorted(m) != sorted(self.source_facet) or sorted(set(m.values())) != sorted(
            self.target_facet
        ):
            raise ConstructionError("pairs are not a bijection between the two facets")

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)


def _as_mapping(pairing) -> dict[int, int]:
    if isinstance(pairing, FoldingMap):
        return pairing.mapping
    return dict(pairing)


def _require_facet(k: Complex, facet: Iterable[int]) -> Simplex:
    f = simplex(facet)
    if f not in k.maximal_faces:
        raise NotAFacet(f"{f} is not a facet")
    return f


def _identify(k: Complex, mapping: Mapping[int, int], merged: Simplex) -> Complex:
    """Relabel target vertices to source labels, dedupe, drop the merged facet."""
    rev = {t: s for s, t in mapping.items()}
    new_facets = {tuple(sorted(rev.get(v, v) for v in f)) for f in k.maximal_faces}
    new_facets.discard(merged)
    return Complex(new_facets)


# -- elementary constructions ------------------------------------------


def boundary_simplex(n: int) -> Complex:
    """Boundary complex of the n-simplex on labels 0..n: an (n-1)-sphere."""
    if n < 1:
        raise ConstructionError("boundary_simplex needs n >= 1")
    return Complex(itertools.combinations(range(n + 1), n))


def cone(v: int, k: Complex) -> Complex:
    if v in k.vertices:
        raise VertexAlreadyPresent(f"vertex {v} already present")
    return Complex([f + (v,) for f in k.maximal_faces])


def one_vertex_suspension(k: Complex, v: int, apex: Optional[int] = None) -> Complex:
    """Suspension using ``v`` as one pole and a fresh vertex as the other.

    Facets are the cones of v over the facets avoiding v, plus the cone
    of the fresh apex over everything.
    """
    if v not in k.vertices:
        raise ComplexError(f"vertex {v} not in complex")
    u = fresh_labels(k, 1)[0] if apex is None else apex
    if u in k.vertices:
        raise VertexAlreadyPresent(f"apex {u} already present")
    facets = [f + (v,) for f in k.maximal_faces if v not in f]
    facets += [f + (u,) for f in k.maximal_faces]
    return Complex(facets)


def facet_subdivision(k: Complex, facet: Iterable[int], new_vertex: Optional[int] = None) -> Complex:
    """Replace a facet by the cone over its boundary from a fresh vertex."""
    f = _require_facet(k, facet)
    u = fresh_labels(k, 1)[0] if new_vertex is None else new_vertex
    if u in k.vertices:
        raise VertexAlreadyPresent(f"subdivision vertex {u} already present")
    facets = set(k.maximal_faces)
    facets.discard(f)
    for drop in f:
        facets.add(tuple(sorted(set(f) - {drop} | {u})))
    return Complex(facets)


# -- identifications ----------------------------------------------------


def connected_sum(k1: Complex, k2: Complex, pairing) -> Complex:
    """Glue two complexes along a facet pair and delete the merged facet."""
    mapping = _as_mapping(pairing)
    if k1.dim != k2.dim:
        raise DimensionMismatch(f"dimensions differ: {k1.dim} vs {k2.dim}")
    if k1.vertices & k2.vertices:
        raise VertexOverlap(f"summands share vertices {sorted(k1.vertices & k2.vertices)}")
    source = _require_facet(k1, mapping.keys())
    _require_facet(k2, mapping.values())
    rev = {t: s for s, t in mapping.items()}
    relabeled = {tuple(sorted(rev.get(v, v) for v in f)) for f in k2.maximal_faces}
    facets = set(k1.maximal_faces) | relabeled
    facets.discard(source)
    return Complex(facets)


def check_handle_admissible(k: Complex, facet1, facet2, pairing) -> tuple[bool, str]:
    """Disjoint facets, no edge of K joining them, and no common neighbors
    for identified pairs.

    Disjoint neighborhoods are what keep the identification injective
    away from the facets themselves: a vertex adjacent to both y and
    psi(y) would turn two distinct edges into one and break the exact
    face-count arithmetic of the operation.
    """
    f1 = _require_facet(k, facet1)
    f2 = _require_facet(k, facet2)
    mapping = _as_mapping(pairing)
    if set(f1) & set(f2):
        raise FacetsShareVertices(f"facets share vertices {sorted(set(f1) & set(f2))}")
    if sorted(mapping) != list(f1) or sorted(mapping.values()) != list(f2):
        return False, "pairing is not a bijection between the two facets"
    for v in f1:
        for w in f1:
            if mapping[w] in k.neighbors(v):
                return False, f"edge {v}-{mapping[w]} links the facets"
    for v in f1:
        common = k.neighbors(v) & k.neighbors(mapping[v])
        if common:
            return False, f"{v} and {mapping[v]} share neighbors {sorted(common)}"
    return True, "admissible"


def handle_addition(k: Complex, facet1, facet2, pairing) -> Complex:
    ok, reason = check_handle_admissible(k, facet1, facet2, pairing)
    if not ok:
        raise InadmissibleIdentification(reason)
    mapping = _as_mapping(pairing)
    return _identify(k, mapping, simplex(facet1))


def check_vertex_fold_admissible(k: Complex, facet1, facet2, pairing) -> tuple[bool, str]:
    """Facets meeting in one fixed vertex x, with every other pair y, psi(y)
    non-adjacent and having x as their only common neighbor."""
    f1 = _require_facet(k, facet1)
    f2 = _require_facet(k, facet2)
    mapping = _as_mapping(pairing)
    shared = set(f1) & set(f2)
    if len(shared) != 1:
        return False, f"facets intersect in {sorted(shared)}, not a single vertex"
    x = shared.pop()
    if mapping.get(x) != x:
        return False, f"fixed vertex {x} is not mapped to itself"
    if sorted(mapping) != list(f1) or sorted(set(mapping.values())) != list(f2):
        return False, "pairing is not a bijection between the two facets"
    for y in f1:
        if y == x:
            continue
        z = mapping[y]
        if z in k.neighbors(y):
            return False, f"identified vertices {y} and {z} are adjacent"
        common = k.neighbors(y) & k.neighbors(z)
        if common != {x}:
            return False, f"common neighbors of {y} and {z} are {sorted(common)}, not [{x}]"
    return True, "admissible"


def vertex_fold(k: Complex, facet1, facet2, pairing) -> Complex:
    ok, reason = check_vertex_fold_admissible(k, facet1, facet2, pairing)
    if not ok:
        raise InadmissibleFold(reason)
    return _identify(k, _as_mapping(pairing), simplex(facet1))


def check_edge_fold_admissible(k: Complex, facet1, facet2, pairing) -> tuple[bool, str]:
    """Facets meeting in one fixed edge uv; all short paths between an
    identified pair must run through u or v."""
    f1 = _require_facet(k, facet1)
    f2 = _require_facet(k, facet2)
    mapping = _as_mapping(pairing)
    shared = set(f1) & set(f2)
    if len(shared) != 2:
        return False, f"facets intersect in {sorted(shared)}, not an edge"
    u, v = sorted(shared)
    if not k.has_face((u, v)):
        return False, f"shared vertices {u}, {v} do not span an edge"
    if mapping.get(u) != u or mapping.get(v) != v:
        return False, f"fixed edge {u}{v} is not mapped identically"
    if sorted(mapping) != list(f1) or sorted(set(mapping.values())) != list(f2):
        return False, "pairing is not a bijection between the two facets"
    for y in f1:
        if y in (u, v):
            continue
        z = mapping[y]
        if z in k.neighbors(y):
            return False, f"identified vertices {y} and {z} are adjacent"
        common = k.neighbors(y) & k.neighbors(z)
        if not common <= {u, v}:
            extra = sorted(common - {u, v})
            return False, f"{y} and {z} share neighbors {extra} outside the fixed edge"
    return True, "admissible"


def edge_fold(k: Complex, facet1, facet2, pairing) -> Complex:
    ok, reason = check_edge_fold_admissible(k, facet1, facet2, pairing)
    if not ok:
        raise InadmissibleFold(reason)
    return _identify(k, _as_mapping(pairing), simplex(facet1))


# -- admissible-pair searches -------------------------------------------


def _facet_pairs_sharing(k: Complex, count: int):
    """Facet pairs whose intersection has exactly ``count`` vertices."""
    facets = k.facets
    by_vertex: dict[int, list[Simplex]] = {}
    for f in facets:
        for v in f:
            by_vertex.setdefault(v, []).append(f)
    seen: set[tuple[Simplex, Simplex]] = set()
    for group in by_vertex.values():
        for f1, f2 in itertools.combinations(group, 2):
            key = (f1, f2) if f1 <= f2 else (f2, f1)
            if key in seen:
                continue
            seen.add(key)
            if len(set(f1) & set(f2)) == count:
                yield key


def _bijections_fixing(f1: Simplex, f2: Simplex, fixed: set[int]):
    rest1 = [v for v in f1 if v not in fixed]
    rest2 = [v for v in f2 if v not in fixed]
    for perm in itertools.permutations(rest2):
        mapping = {v: v for v in fixed}
        mapping.update(zip(rest1, perm))
        yield mapping


def find_vertex_folds(k: Complex, fixed_vertex: Optional[int] = None):
    """Yield admissible (facet1, facet2, mapping) vertex-fold triples."""
    for f1, f2 in _facet_pairs_sharing(k, 1):
        x = (set(f1) & set(f2)).pop()
        if fixed_vertex is not None and x != fixed_vertex:
            continue
        for mapping in _bijections_fixing(f1, f2, {x}):
            ok, _ = check_vertex_fold_admissible(k, f1, f2, mapping)
            if ok:
                yield f1, f2, mapping


def find_edge_folds(k: Complex, fixed_edge: Optional[tuple[int, int]] = None):
    for f1, f2 in _facet_pairs_sharing(k, 2):
        shared = tuple(sorted(set(f1) & set(f2)))
        if fixed_edge is not None and shared != tuple(sorted(fixed_edge)):
            continue
        if not k.has_face(shared):
            continue
        for mapping in _bijections_fixing(f1, f2, set(shared)):
            ok, _ = check_edge_fold_admissible(k, f1, f2, mapping)
            if ok:
                yield f1, f2, mapping


def find_handles(k: Complex, rng: Optional[SplitMix64] = None, attempts: int = 400):
    """Yield admissible (facet1, facet2, mapping) handle triples.

    With an rng, candidate pairs are sampled instead of scanned, which
    is the behaviour random build scripts want.
    """
    facets = list(k.facets)
    if rng is None:
        pairs = itertools.combinations(facets, 2)
    else:
        def sampled():
            for _ in range(attempts):
                f1 = rng.choice(facets)
                f2 = rng.choice(facets)
                if f1 < f2:
                    yield f1, f2
        pairs = sampled()
    for f1, f2 in pairs:
        if set(f1) & set(f2):
            continue
        for mapping in _bijections_fixing(f1, f2, set()):
            try:
                ok, _ = check_handle_admissible(k, f1, f2, mapping)
            except FacetsShareVertices:
                break
            if ok:
                yield f1, f2, mapping
                break


def random_admissible(kind: str, k: Complex, rng: SplitMix64, **kwargs):
    """First admissible triple for ``kind`` in seeded-random order, or None."""
    if kind == "handle":
        for triple in find_handles(k, rng=rng):
            return triple
        return None
    finder = {"vertex_fold": find_vertex_folds, "edge_fold": find_edge_folds}[kind]
    triples = list(finder(k, **kwargs))
    if not triples:
        return None
    return triples[rng.randrange(len(triples))]


# -- stacked spheres ----------------------------------------------------


def stacked_sphere(d: int, k: int, seed: int) -> Complex:
    """k-fold connected sum of boundary d+1-simplices with seeded random gluings."""
    if d < 2 or k < 1:
        raise ConstructionError("stacked_sphere needs d >= 2 and k >= 1")
    rng = SplitMix64(seed)
    current = boundary_simplex(d + 1)
    for _ in range(k - 1):
        summand = boundary_simplex(d + 1)
        offset = max(current.vertices) + 1
        summand = summand.relabel({v: v + offset for v in summand.vertices})
        source = rng.choice(current.facets)
        target = rng.choice(summand.facets)
        perm = rng.shuffle(list(target))
        current = connected_sum(current, summand, dict(zip(source, perm)))
    return current
