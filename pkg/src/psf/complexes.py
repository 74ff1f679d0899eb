"""Finite simplicial complexes stored by their maximal faces.

Vertices are bare non-negative integers and simplices are strictly
increasing tuples of vertex labels, so every operation is exact and
deterministic.  A :class:`Complex` is immutable after construction;
face tables are computed on demand and cached.

Most complexes handled here are pure (all maximal faces of equal
dimension), which is what ``from_facets`` enforces.  Induced
subcomplexes may legitimately be non-pure, so the class itself only
requires its maximal faces to form an antichain.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Optional


class ComplexError(ValueError):
    """Malformed complex data or an invalid query."""


class MixedDimension(ComplexError):
    """Facet lists of unequal length where a pure complex is required."""


class DuplicateVertexInFacet(ComplexError):
    pass


class OutOfRange(ComplexError):
    """Dimension argument outside the valid range for this complex."""


class FaceNotPresent(ComplexError):
    pass


class UnknownVertex(ComplexError):
    pass


class VertexOverlap(ComplexError):
    """Join operands share vertex labels."""


Simplex = tuple[int, ...]


def simplex(vertices: Iterable[int]) -> Simplex:
    """Normalise an iterable of labels into a sorted simplex tuple."""
    vs = tuple(sorted(vertices))
    if len(set(vs)) != len(vs):
        raise DuplicateVertexInFacet(f"repeated vertex in {vs}")
    if vs and vs[0] < 0:
        raise ComplexError(f"vertex labels must be non-negative, got {vs}")
    return vs


def _antichain(faces: Iterable[Simplex]) -> frozenset[Simplex]:
    """Drop faces contained in another face of the collection."""
    unique = sorted(set(faces), key=len, reverse=True)
    kept: list[set[int]] = []
    out: list[Simplex] = []
    for f in unique:
        fs = set(f)
        if any(fs < k for k in kept):
            continue
        kept.append(fs)
        out.append(f)
    return frozenset(out)


class Complex:
    """A simplicial complex given by its maximal faces.

    The complex owns no geometric data: it is the downward closure of
    ``maximal_faces``.  The empty simplex ``()`` is a face of every
    complex; ``Complex([()])`` is the complex containing only it.
    """

    __slots__ = ("_maximal", "_dim", "_vertices", "_faces", "_nbrs", "_ridge_map")

    def __init__(self, maximal_faces: Iterable[Iterable[int]]):
        faces = [simplex(f) for f in maximal_faces]
        if not faces:
            faces = [()]
        self._maximal = _antichain(faces)
        self._dim = max(len(f) for f in self._maximal) - 1
        self._vertices = frozenset(v for f in self._maximal for v in f)
        self._faces: dict[int, frozenset[Simplex]] = {}
        self._nbrs: Optional[dict[int, frozenset[int]]] = None
        self._ridge_map: Optional[dict[Simplex, tuple[Simplex, ...]]] = None

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]]) -> "Complex":
        """Build a pure complex from equal-length facet lists."""
        rows = [list(f) for f in facets]
        for row in rows:
            if not row:
                raise ComplexError("empty facet")
            if len(set(row)) != len(row):
                raise DuplicateVertexInFacet(f"repeated vertex in facet {row}")
        lengths = {len(r) for r in rows}
        if len(lengths) > 1:
            raise MixedDimension(f"facet lengths differ: {sorted(lengths)}")
        return cls(rows)

    # -- basic queries -------------------------------------------------

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def maximal_faces(self) -> frozenset[Simplex]:
        return self._maximal

    @property
    def facets(self) -> tuple[Simplex, ...]:
        """Maximal faces in sorted order."""
        return tuple(sorted(self._maximal))

    @property
    def is_pure(self) -> bool:
        return all(len(f) == self._dim + 1 for f in self._maximal)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Complex) and self._maximal == other._maximal

    def __hash__(self) -> int:
        return hash(self._maximal)

    def __repr__(self) -> str:
        return f"Complex(dim={self._dim}, vertices={len(self._vertices)}, maximal={len(self._maximal)})"

    def faces(self, k: int) -> frozenset[Simplex]:
        """All faces of dimension ``k``; ``faces(-1)`` is ``{()}``."""
        if k < -1 or k > self._dim:
            raise OutOfRange(f"no faces of dimension {k} in a {self._dim}-complex")
        if k == -1:
            return frozenset({()})
        cached = self._faces.get(k)
        if cached is None:
            acc: set[Simplex] = set()
            for f in self._maximal:
                if len(f) >= k + 1:
                    acc.update(itertools.combinations(f, k + 1))
            cached = frozenset(acc)
            self._faces[k] = cached
        return cached

    def f_counts(self) -> tuple[int, ...]:
        """Face counts (f_-1, f_0, ..., f_dim)."""
        return (1,) + tuple(len(self.faces(k)) for k in range(self._dim + 1))

    def has_face(self, face: Iterable[int]) -> bool:
        s = simplex(face)
        k = len(s) - 1
        if k > self._dim:
            return False
        return s in self.faces(k)

    def neighbors(self, v: int) -> frozenset[int]:
        if self._nbrs is None:
            nbrs: dict[int, set[int]] = {u: set() for u in self._vertices}
            if self._dim >= 1:
                for a, b in self.faces(1):
                    nbrs[a].add(b)
                    nbrs[b].add(a)
            self._nbrs = {u: frozenset(s) for u, s in nbrs.items()}
        if v not in self._nbrs:
            raise UnknownVertex(f"vertex {v} not in complex")
        return self._nbrs[v]

    def ridge_facet_map(self) -> dict[Simplex, tuple[Simplex, ...]]:
        """Map each codimension-1 face of a maximal face to the maximal faces containing it."""
        if self._ridge_map is None:
            acc: dict[Simplex, list[Simplex]] = {}
            for f in self._maximal:
                for r in itertools.combinations(f, len(f) - 1):
                    acc.setdefault(r, []).append(f)
            self._ridge_map = {r: tuple(sorted(fs)) for r, fs in acc.items()}
        return self._ridge_map

    # -- derived complexes ---------------------------------------------

    def link(self, face: Iterable[int]) -> "Complex":
        s = simplex(face)
        if not self.has_face(s):
            raise FaceNotPresent(f"{s} is not a face")
        ss = set(s)
        residues = [tuple(v for v in f if v not in ss)
                    for f in self._maximal if ss.issubset(f)]
        return Complex(residues)

    def star(self, face: Iterable[int]) -> "Complex":
        s = simplex(face)
        if not self.has_face(s):
            raise FaceNotPresent(f"{s} is not a face")
        ss = set(s)
        return Complex([f for f in self._maximal if ss.issubset(f)])

    def induced(self, vertex_set: Iterable[int]) -> "Complex":
        vs = set(vertex_set)
        missing = vs - self._vertices
        if missing:
            raise UnknownVertex(f"vertices {sorted(missing)} not in complex")
        candidates = [tuple(v for v in f if v in vs) for f in self._maximal]
        return Complex([c for c in candidates if c] or [()])

    def skeleton(self, k: int) -> "Complex":
        if k < 0 or k > self._dim:
            raise OutOfRange(f"skeleton dimension {k} outside [0, {self._dim}]")
        acc: set[Simplex] = set()
        for f in self._maximal:
            if len(f) <= k + 1:
                acc.add(f)
            else:
                acc.update(itertools.combinations(f, k + 1))
        return Complex(acc)

    def missing_simplices(self, k: int) -> frozenset[Simplex]:
        """All k-simplices on the vertex set whose boundary is present but which are absent.

        ``k`` may exceed the dimension by one, which finds missing
        top-dimensional simplices above the facets.
        """
        if k < 1 or k > self._dim + 1:
            raise OutOfRange(f"missing-simplex dimension {k} outside [1, {self._dim + 1}]")
        lower = self.faces(k - 1)
        present = self.faces(k) if k <= self._dim else frozenset()
        found: set[Simplex] = set()
        for base in lower:
            base_set = set(base)
            for v in self._vertices:
                if v in base_set:
                    continue
                cand = simplex(base + (v,))
                if cand in found or cand in present:
                    continue
                if all(sub in lower for sub in itertools.combinations(cand, k)):
                    found.add(cand)
        return frozenset(found)

    def relabel(self, mapping: Mapping[int, int]) -> "Complex":
        """Apply an injective vertex relabeling."""
        image = [mapping.get(v, v) for v in self._vertices]
        if len(set(image)) != len(image):
            raise ComplexError("relabeling is not injective on the vertex set")
        return Complex([tuple(mapping.get(v, v) for v in f) for f in self._maximal])


def from_facets(facets: Iterable[Iterable[int]]) -> Complex:
    return Complex.from_facets(facets)


def join(k1: Complex, k2: Complex) -> Complex:
    """Join of two complexes on disjoint vertex sets."""
    overlap = k1.vertices & k2.vertices
    if overlap:
        raise VertexOverlap(f"operands share vertices {sorted(overlap)}")
    return Complex([f + g for f in k1.maximal_faces for g in k2.maximal_faces])


def fresh_labels(k: Complex, count: int) -> list[int]:
    """Deterministic unused vertex labels: max existing + 1, + 2, ..."""
    base = max(k.vertices, default=-1) + 1
    return list(range(base, base + count))


# -- isomorphism -------------------------------------------------------


def _refined_colors(k1: Complex, k2: Complex) -> Optional[tuple[dict, dict]]:
    """Joint Weisfeiler-style color refinement over both vertex sets.

    Colors are comparable across the two complexes because signatures
    are canonicalised through one shared table.  Returns None as soon
    as the color histograms disagree.
    """

    def initial(k: Complex) -> dict[int, tuple]:
        sig = {}
        for v in k.vertices:
            profile = tuple(sorted(len(f) for f in k.maximal_faces if v in f))
            sig[v] = (len(k.neighbors(v)), profile, k.link((v,)).f_counts())
        return sig

    sigs = (initial(k1), initial(k2))
    table: dict[tuple, int] = {}
    colors = [{}, {}]
    for side in (0, 1):
        for v, s in sigs[side].items():
            colors[side][v] = table.setdefault(s, len(table))

    for _ in range(len(k1.vertices) + 1):
        table = {}
        new = [{}, {}]
        for side, k in ((0, k1), (1, k2)):
            for v in k.vertices:
                s = (colors[side][v],
                     tuple(sorted(colors[side][u] for u in k.neighbors(v))))
                new[side][v] = table.setdefault(s, len(table))
        if sorted(new[0].values()) != sorted(new[1].values()):
            return None
        stable = all(
            len(set(new[s].values())) == len(set(colors[s].values())) for s in (0, 1)
        )
        colors = new
        if stable:
            break
    if sorted(colors[0].values()) != sorted(colors[1].values()):
        return None
    return colors[0], colors[1]


def is_isomorphic(k1: Complex, k2: Complex) -> Optional[dict[int, int]]:
    """A vertex bijection carrying maximal faces onto maximal faces, or None.

    Color refinement prunes the search; a backtracking matcher finishes
    it.  Exact at the tens-of-vertices scale this library targets.
    """
    if k1.dim != k2.dim or len(k1.vertices) != len(k2.vertices):
        return None
    if sorted(map(len, k1.maximal_faces)) != sorted(map(len, k2.maximal_faces)):
        return None
    if k1.f_counts() != k2.f_counts():
        return None
    refined = _refined_colors(k1, k2)
    if refined is None:
        return None
    c1, c2 = refined

    by_color: dict[int, list[int]] = {}
    for v, c in c2.items():
        by_color.setdefault(c, []).append(v)

    verts1 = sorted(k1.vertices, key=lambda v: (len(by_color[c1[v]]), v))
    facets2 = k2.maximal_faces
    star1 = {v: [f for f in k1.maximal_faces if v in f] for v in k1.vertices}

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        nv, nw = k1.neighbors(v), k2.neighbors(w)
        for u, x in mapping.items():
            if (u in nv) != (x in nw):
                return False
        # every fully mapped maximal face through v must land on one of k2's
        for f in star1[v]:
            img = [mapping.get(u) for u in f if u != v]
            if None in img:
                continue
            if tuple(sorted(img + [w])) not in facets2:
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(verts1):
            return True
        v = verts1[i]
        for w in by_color[c1[v]]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if not extend(0):
        return None
    assert {tuple(sorted(mapping[u] for u in f)) for f in k1.maximal_faces} == set(facets2)
    return dict(mapping)
