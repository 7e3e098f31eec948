"""Exact polytope primitives over rational arithmetic.

Every quantity in this module is a Fraction or an integer; there are no
epsilon tolerances anywhere. Polytopes are immutable value objects carrying
their ambient dimension, affine-hull dimension, lexicographically sorted
extreme points, and (for full-dimensional ones) the facet structure and
exact volume computed at construction time.

Directions are integer vectors. A primitive integer normal z stands in for
the unit normal z/||z||; offsets and facet weights are stored in the
denominator-cleared form that makes all downstream formulas rational:
offset(z) = max <x, z> and normalized_volume = Vol_{n-1}(facet)/||z||.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    DegenerateInput,
    DimensionLimit,
    DimensionMismatch,
    EmptyIntersection,
    BadParams,
    Unbounded,
    ZeroVector,
)
from .hull import hull_int
from .linalg import (
    dot,
    primitive,
    primitive_from_rational,
    rank,
    rref,
    scale_to_int,
    solve,
    vsub,
)

DIM_CAP = 4  # polarization cost is 2^n - 1 volumes; keep n small


@dataclass(frozen=True)
class Halfspace:
    """Constraint <x, normal> <= bound (sense '<=') or >= bound (sense '>=')."""

    normal: tuple[int, ...]
    bound: Fraction
    sense: str = "<="

    def as_le(self) -> tuple[tuple[int, ...], Fraction]:
        if self.sense == "<=":
            return self.normal, self.bound
        return tuple(-c for c in self.normal), -self.bound


@dataclass(frozen=True)
class FacetData:
    normal: tuple[int, ...]  # primitive, outward
    offset: Fraction  # facet lies in {<x, normal> = offset}
    vertices: tuple[int, ...]  # indices into the parent vertex list
    normalized_volume: Fraction  # Vol_{n-1}(facet) / ||normal||


class Polytope:
    """Immutable convex polytope; construct via convex_hull and friends.

    adim is the affine-hull dimension: adim == dim for full-dimensional
    bodies, lower for faces and projections, -1 for the empty polytope.
    volume is the ambient-dimension volume (0 whenever adim < dim).
    """

    __slots__ = ("dim", "adim", "vertices", "facets", "volume")

    def __init__(self, dim, adim, vertices, facets, volume):
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "adim", adim)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "volume", volume)

    def __setattr__(self, name, value):
        raise AttributeError("Polytope is immutable")

    def key(self):
        return (self.dim, self.vertices)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Polytope(dim={self.dim}, adim={self.adim}, nverts={len(self.vertices)})"

    @property
    def is_empty(self):
        return self.adim < 0

    @property
    def is_full_dimensional(self):
        return self.adim == self.dim


def _as_point(p, dim) -> tuple[Fraction, ...]:
    q = tuple(Fraction(c) for c in p)
    if len(q) != dim:
        raise DimensionMismatch(f"point of length {len(q)}, expected {dim}")
    return q


def _affine_pivots(pts):
    """Rank and pivot columns of the difference space of pts."""
    diffs = [vsub(p, pts[0]) for p in pts[1:]]
    pivots, _ = rref(diffs)
    return len(pivots), pivots


_EMPTY_CACHE: dict[int, Polytope] = {}


def empty_polytope(dim: int) -> Polytope:
    if dim not in _EMPTY_CACHE:
        _EMPTY_CACHE[dim] = Polytope(dim, -1, (), (), Fraction(0))
    return _EMPTY_CACHE[dim]


def _from_points(points, dim: int) -> Polytope:
    """Hull of exact rational points; detects the affine dimension."""
    pts = sorted(set(points))
    if not pts:
        return empty_polytope(dim)
    if len(pts) == 1:
        return Polytope(dim, 0, (pts[0],), (), Fraction(0))
    r, pivots = _affine_pivots(pts)
    if r < dim:
        # chart: restriction to the pivot coordinates is injective on the
        # affine hull, so the extreme points can be found there
        chart = [tuple(p[c] for c in pivots) for p in pts]
        scaled, _ = scale_to_int(chart)
        back = dict(zip(scaled, pts))
        hd = hull_int(scaled, r)
        verts = tuple(sorted(back[hd.points[i]] for i in hd.vertex_indices))
        return Polytope(dim, r, verts, (), Fraction(0))

    scaled, s = scale_to_int(pts)
    hd = hull_int(scaled, dim)
    verts = tuple(
        tuple(Fraction(c, s) for c in hd.points[i]) for i in hd.vertex_indices
    )
    facets = []
    for hf in hd.facets:
        offset = Fraction(hf.offset, s)
        incident = tuple(
            i for i, v in enumerate(verts) if dot(hf.normal, v) == offset
        )
        facets.append(
            FacetData(hf.normal, offset, incident, hf.weight / s ** (dim - 1))
        )
    return Polytope(dim, dim, verts, tuple(facets), hd.volume / s**dim)


def convex_hull(points, dim: int, allow_lower: bool = False) -> Polytope:
    """Convex hull of rational points in R^dim.

    Raises DegenerateInput when the points do not affinely span R^dim,
    unless allow_lower is set, in which case the lower-dimensional hull is
    returned as a first-class value.
    """
    if dim < 1 or dim > DIM_CAP:
        raise DimensionLimit(f"ambient dimension {dim} outside 1..{DIM_CAP}")
    pts = [_as_point(p, dim) for p in points]
    if not pts:
        raise DegenerateInput("no points given")
    poly = _from_points(pts, dim)
    if not allow_lower and poly.adim < dim:
        raise DegenerateInput(
            f"points span affine dimension {poly.adim}, expected {dim}"
        )
    return poly


def vertex_enumeration(halfspaces, dim: int) -> Polytope:
    """Bounded intersection of halfspaces, by brute force over n-subsets.

    Guard: at most 128 halfspaces (the subset count is binomial in the
    input size).
    """
    if dim < 1 or dim > DIM_CAP:
        raise DimensionLimit(f"ambient dimension {dim} outside 1..{DIM_CAP}")
    if len(halfspaces) > 128:
        raise BadParams("more than 128 halfspaces")
    tight: dict[tuple[int, ...], Fraction] = {}
    for h in halfspaces:
        z, b = h.as_le()
        if not any(z):
            raise ZeroVector("halfspace with zero normal")
        z = primitive(z)
        if len(z) != dim:
            raise DimensionMismatch("halfspace normal length mismatch")
        b = Fraction(b)
        if z not in tight or b < tight[z]:
            tight[z] = b
    normals = sorted(tight)

    if rank(normals) < dim or not _origin_interior(normals, dim):
        raise Unbounded("constraint normals do not positively span R^n")

    candidates = set()
    for subset in combinations(normals, dim):
        x = solve(list(subset), [tight[z] for z in subset])
        if x is None:
            continue
        if all(dot(z, x) <= tight[z] for z in normals):
            candidates.add(x)
    if not candidates:
        raise EmptyIntersection("halfspace intersection is empty")
    return _from_points(candidates, dim)


def _origin_interior(normals, dim) -> bool:
    """True iff 0 is interior to conv(normals); equivalent to boundedness
    of the intersection of the halfspaces <x, normal> <= bound."""
    if len(normals) <= dim:
        return False
    r, _ = _affine_pivots(sorted(normals))
    if r < dim:
        return False
    hd = hull_int(normals, dim)
    return all(f.offset > 0 for f in hd.facets)


def facet_structure(P: Polytope):
    if not P.is_full_dimensional:
        raise DegenerateInput("facet structure requires a full-dimensional polytope")
    return P.facets


def support_value(P: Polytope, z) -> Fraction:
    """max <x, z> over P, for an integer direction z (denominator-cleared
    support function: equals ||z|| times the unit-normal support value)."""
    z = tuple(z)
    if not any(z):
        raise ZeroVector("support direction is zero")
    if P.is_empty:
        raise DegenerateInput("support of the empty polytope")
    return max(dot(z, v) for v in P.vertices)


def face_in_direction(P: Polytope, z) -> Polytope:
    """The face P ∩ {<x,z> = max}, as a (usually lower-dimensional) value."""
    h = support_value(P, z)
    pts = [v for v in P.vertices if dot(z, v) == h]
    return _from_points(pts, P.dim)


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.dim != Q.dim:
        raise DimensionMismatch(f"dim {P.dim} vs {Q.dim}")
    if P.is_empty or Q.is_empty:
        return empty_polytope(P.dim)
    pts = {
        tuple(a + b for a, b in zip(p, q))
        for p in P.vertices
        for q in Q.vertices
    }
    return _from_points(pts, P.dim)


def translate(P: Polytope, x) -> Polytope:
    if P.is_empty:
        return P
    x = _as_point(x, P.dim)
    verts = tuple(sorted(tuple(a + b for a, b in zip(v, x)) for v in P.vertices))
    facets = tuple(
        FacetData(f.normal, f.offset + dot(f.normal, x), f.vertices, f.normalized_volume)
        for f in P.facets
    )
    # translation permutes nothing: lex order of translated vertices is
    # preserved, so facet indices stay valid
    return Polytope(P.dim, P.adim, verts, facets, P.volume)


def dilate(P: Polytope, lam) -> Polytope:
    """Scale about the origin by a rational factor lam >= 0."""
    lam = Fraction(lam)
    if lam < 0:
        raise BadParams("dilation factor must be nonnegative")
    if P.is_empty:
        return P
    if lam == 0:
        origin = tuple(Fraction(0) for _ in range(P.dim))
        return Polytope(P.dim, 0, (origin,), (), Fraction(0))
    verts = tuple(sorted(tuple(lam * c for c in v) for v in P.vertices))
    facets = tuple(
        FacetData(
            f.normal,
            f.offset * lam,
            f.vertices,
            f.normalized_volume * lam ** (P.dim - 1),
        )
        for f in P.facets
    )
    return Polytope(P.dim, P.adim, verts, facets, P.volume * lam**P.dim)


def volume(P: Polytope) -> Fraction:
    return P.volume


def clip_halfspace(P: Polytope, h: Halfspace) -> Polytope:
    """Exact intersection P ∩ h; may be empty or lower-dimensional."""
    z, b = h.as_le()
    if len(z) != P.dim:
        raise DimensionMismatch("halfspace normal length mismatch")
    if not any(z):
        raise ZeroVector("halfspace with zero normal")
    if P.is_empty:
        return P
    vals = [dot(z, v) for v in P.vertices]
    if all(val <= b for val in vals):
        return P
    kept = [v for v, val in zip(P.vertices, vals) if val <= b]
    cut = [(v, val) for v, val in zip(P.vertices, vals) if val > b]
    if not kept:
        return empty_polytope(P.dim)
    pts = set(kept)
    # chord crossings suffice: every kept-to-cut segment lies in P, so its
    # crossing point is in the clip; edge crossings are among them and the
    # hull reduction removes the interior extras
    for v, val in ((v, val) for v, val in zip(P.vertices, vals) if val < b):
        for w, wal in cut:
            t = (b - val) / (wal - val)
            pts.add(tuple(a + t * (c - a) for a, c in zip(v, w)))
    return _from_points(pts, P.dim)


def project_along(P: Polytope, v):
    """Project P onto v-perp, in coordinates of a rational basis B of v-perp.

    Returns (projection, gram_correction) with gram_correction = det(B^T B);
    the true (n-1)-volume of the projection is volume(projection) times
    sqrt(gram_correction). Coordinate axes use coordinate deletion, so their
    correction is 1.
    """
    if P.is_empty:
        raise DegenerateInput("projection of the empty polytope")
    d = primitive_from_rational(tuple(Fraction(c) for c in v))
    n = P.dim
    if len(d) != n:
        raise DimensionMismatch("direction length mismatch")

    nz = [i for i, c in enumerate(d) if c]
    if len(nz) == 1:
        k = nz[0]
        pts = [tuple(x[j] for j in range(n) if j != k) for x in P.vertices]
        return _from_points(pts, n - 1), Fraction(1)

    k = nz[0]
    nrm2 = sum(c * c for c in d)
    # basis B_j = d_j e_k - d_k e_j for j != k; coordinates of the
    # orthogonal projection x' = x - (<x,d>/||d||^2) d in this basis are
    # alpha_j = ((<x,d>/||d||^2) d_j - x_j) / d_k
    pts = []
    for x in P.vertices:
        t = Fraction(dot(d, x), nrm2)
        pts.append(tuple((t * d[j] - x[j]) / d[k] for j in range(n) if j != k))
    gram = Fraction(d[k]) ** (2 * (n - 2)) * nrm2
    return _from_points(pts, n - 1), gram


def interior_point(P: Polytope) -> tuple[Fraction, ...]:
    """Vertex centroid; interior for full-dimensional P, relative interior
    otherwise."""
    if P.is_empty:
        raise DegenerateInput("interior point of the empty polytope")
    m = len(P.vertices)
    return tuple(sum(col, Fraction(0)) / m for col in zip(*P.vertices))


def contains_point(P: Polytope, x) -> bool:
    x = _as_point(x, P.dim)
    if P.is_empty:
        return False
    if P.is_full_dimensional:
        return all(dot(f.normal, x) <= f.offset for f in P.facets)
    # lower-dimensional: x must lie in the affine hull and inside the hull
    # there; test by rebuilding the hull with x adjoined
    return _from_points(list(P.vertices) + [x], P.dim).vertices == P.vertices


def vertex_adjacency(P: Polytope):
    """Edges of a full-dimensional polytope: vertex pairs whose common
    facet set has normals of rank n-1."""
    if not P.is_full_dimensional:
        raise DegenerateInput("adjacency requires a full-dimensional polytope")
    n = P.dim
    incident = [set() for _ in P.vertices]
    for fi, f in enumerate(P.facets):
        for vi in f.vertices:
            incident[vi].add(fi)
    edges = []
    for i, j in combinations(range(len(P.vertices)), 2):
        shared = incident[i] & incident[j]
        if len(shared) >= n - 1:
            normals = [P.facets[fi].normal for fi in shared]
            if rank(normals) == n - 1:
                edges.append((i, j))
    return tuple(edges)
