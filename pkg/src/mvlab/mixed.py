"""Mixed volumes by two independent exact algorithms, plus area measures.

The polarization evaluator expands n!·V(K_1,...,K_n) by inclusion-exclusion
over the n slots: sum over nonempty slot subsets S of (-1)^(n-|S|) times the
volume of the Minkowski sum over S. Repeated slots are summed as dilates
(K + K = 2K for convex K) and subset-sum volumes are memoized by the
multiset of bodies, so repeated bodies cost nothing extra.

The measure path represents V(L, K_1,...,K_{n-1}) = (1/n) sum of
h_L(z) * w(z) over the atoms of the mixed area measure of (K_1,...,K_{n-1});
atom weights are (n-1)-dimensional mixed volumes of faces, computed in a
dropped-coordinate chart. The two paths are independent oracles for each
other.

Weight convention: a stored atom weight w(z) at a primitive integer normal
z encodes true-measure(z/||z||) = w(z)·||z||, which keeps every stored value
rational. Support values are likewise denominator-cleared: h(z) = max<x,z>.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial

from .errors import (
    BadArity,
    DegenerateInput,
    DimensionLimit,
    DimensionMismatch,
    InternalCheckError,
    ZeroVector,
)
from .geometry import (
    Polytope,
    dilate,
    face_in_direction,
    facet_structure,
    minkowski_sum,
    project_along,
    support_value,
    _from_points,
)
from .linalg import cross_rows, perfect_nth_root, primitive_from_rational, rref, vsub

_volume_cache: dict = {}
_sum_cache: dict = {}


def clear_caches():
    _volume_cache.clear()
    _sum_cache.clear()


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely many atoms on primitive integer normals; weights positive."""

    dim: int
    atoms: tuple[tuple[tuple[int, ...], Fraction], ...]  # sorted by normal

    def weight(self, z) -> Fraction:
        z = tuple(z)
        for normal, w in self.atoms:
            if normal == z:
                return w
        return Fraction(0)

    def support(self) -> tuple[tuple[int, ...], ...]:
        return tuple(normal for normal, _ in self.atoms)

    def scaled(self, lam: Fraction) -> "DiscreteMeasure":
        lam = Fraction(lam)
        if lam == 0:
            return DiscreteMeasure(self.dim, ())
        return DiscreteMeasure(
            self.dim, tuple((z, w * lam) for z, w in self.atoms)
        )

    def as_dict(self):
        return dict(self.atoms)


def _make_measure(dim, weights: dict) -> DiscreteMeasure:
    atoms = tuple(sorted((z, w) for z, w in weights.items() if w != 0))
    return DiscreteMeasure(dim, atoms)


def _check_bodies(bodies, n: int, count: int):
    if len(bodies) != count:
        raise BadArity(f"expected {count} bodies, got {len(bodies)}")
    for b in bodies:
        if not isinstance(b, Polytope):
            raise DegenerateInput("inputs must be Polytope values")
        if b.dim != n:
            raise DimensionMismatch(f"body of dimension {b.dim}, expected {n}")
        if b.is_empty:
            raise DegenerateInput("mixed volume of an empty polytope")


def _multiset_key(bodies):
    return tuple(sorted(b.key() for b in bodies))


def _grouped(bodies):
    groups: dict = {}
    for b in bodies:
        groups.setdefault(b.key(), [b, 0])
        groups[b.key()][1] += 1
    return [(body, count) for body, count in (groups[k] for k in sorted(groups))]


def _subset_sum(bodies) -> Polytope:
    """Minkowski sum of a multiset of bodies, memoized; repeated bodies are
    folded as dilates."""
    key = _multiset_key(bodies)
    cached = _sum_cache.get(key)
    if cached is not None:
        return cached
    total = None
    for body, count in _grouped(bodies):
        part = dilate(body, count) if count > 1 else body
        total = part if total is None else minkowski_sum(total, part)
    _sum_cache[key] = total
    return total


def _subset_volume(bodies) -> Fraction:
    key = _multiset_key(bodies)
    cached = _volume_cache.get(key)
    if cached is not None:
        return cached
    vol = _subset_sum(bodies).volume
    _volume_cache[key] = vol
    return vol


def mixed_volume(bodies) -> Fraction:
    """Exact mixed volume of n bodies in R^n (repetitions allowed)."""
    bodies = list(bodies)
    if not bodies:
        raise BadArity("mixed volume of an empty body tuple")
    n = bodies[0].dim
    if n > 4:
        raise DimensionLimit(f"ambient dimension {n} exceeds 4")
    _check_bodies(bodies, n, n)
    total = Fraction(0)
    for size in range(1, n + 1):
        sign = (-1) ** (n - size)
        for subset in combinations(range(n), size):
            total += sign * _subset_volume([bodies[i] for i in subset])
    return total / factorial(n)


def surface_area_measure(P: Polytope) -> DiscreteMeasure:
    """Atoms at facet normals; weight = normalized facet volume."""
    facets = facet_structure(P)
    return _make_measure(
        P.dim, {f.normal: f.normalized_volume for f in facets}
    )


def _flat_normal(P: Polytope):
    """Primitive normal of the affine hull of an (n-1)-dimensional P."""
    base = P.vertices[0]
    diffs = [vsub(v, base) for v in P.vertices[1:]]
    _, rows = rref(diffs)
    basis = [tuple(r) for r in rows if any(r)]
    return primitive_from_rational(cross_rows(basis))


def _dropped_faces(bodies, z, k):
    """Faces of the bodies in direction z, with coordinate k deleted."""
    out = []
    for body in bodies:
        face = face_in_direction(body, z)
        pts = [tuple(x[j] for j in range(body.dim) if j != k) for x in face.vertices]
        out.append(_from_points(pts, body.dim - 1))
    return out


def mixed_area_measure(bodies) -> DiscreteMeasure:
    """Mixed area measure of n-1 bodies in R^n.

    Candidate normals are the facet normals of the bodies' Minkowski sum
    (the two hull-plane normals when that sum is (n-1)-dimensional); the
    atom weight at z is the (n-1)-dimensional mixed volume of the faces in
    direction z, computed in the chart that deletes a coordinate k with
    maximal |z_k| and divided by |z_k|. Atoms of zero weight are dropped.
    """
    bodies = list(bodies)
    if not bodies:
        raise BadArity("mixed area measure needs n-1 bodies")
    n = bodies[0].dim
    if n > 4:
        raise DimensionLimit(f"ambient dimension {n} exceeds 4")
    _check_bodies(bodies, n, n - 1)

    total = _subset_sum(bodies)
    if total.adim == n:
        candidates = [f.normal for f in total.facets]
    elif total.adim == n - 1:
        z0 = _flat_normal(total)
        candidates = [z0, tuple(-c for c in z0)]
    else:
        return _make_measure(n, {})

    weights = {}
    for z in candidates:
        k = max(range(n), key=lambda i: abs(z[i]))
        faces = _dropped_faces(bodies, z, k)
        if n == 2:
            # 1-dimensional mixed volume is just the length
            w = faces[0].volume if faces[0].adim == 1 else Fraction(0)
        else:
            w = mixed_volume(faces)
        if w:
            weights[z] = w / abs(z[k])
    return _make_measure(n, weights)


def mixed_volume_via_measure(L: Polytope, bodies) -> Fraction:
    """(1/n) sum of h_L(z)·w(z) over the mixed area measure of the bodies;
    the measure-based oracle for mixed_volume(L, bodies...)."""
    bodies = list(bodies)
    n = L.dim
    measure = mixed_area_measure(bodies)
    if measure.dim != n:
        raise DimensionMismatch("L dimension differs from the bodies'")
    total = Fraction(0)
    for z, w in measure.atoms:
        total += support_value(L, z) * w
    return total / n


def segment_mixed_volume(v, bodies) -> Fraction:
    """V([0,v], K_2,...,K_n) via projection: (1/n)·||v||·V^(n-1) of the
    projections onto v-perp. The irrational factors ||v|| and sqrt(gram)
    cancel exactly; their product is asserted to be a rational square."""
    bodies = list(bodies)
    if not bodies:
        raise BadArity("segment mixed volume needs n-1 bodies")
    n = bodies[0].dim
    if n > 4:
        raise DimensionLimit(f"ambient dimension {n} exceeds 4")
    _check_bodies(bodies, n, n - 1)
    vv = tuple(Fraction(c) for c in v)
    if len(vv) != n:
        raise DimensionMismatch("segment direction length mismatch")
    if not any(vv):
        raise ZeroVector("segment direction is zero")

    projected = []
    gram = None
    for body in bodies:
        proj, g = project_along(body, vv)
        gram = g if gram is None else gram
        projected.append(proj)
    if n == 2:
        inner = projected[0].volume if projected[0].adim == 1 else Fraction(0)
    else:
        inner = mixed_volume(projected)
    # ||v||·sqrt(gram) is rational: its square is asserted to be a perfect
    # square of rationals
    norm2 = sum(c * c for c in vv)
    scale2 = norm2 * gram
    scale = perfect_nth_root(scale2, 2)
    if scale is None:
        raise InternalCheckError("projection scale was not a rational square")
    return scale * inner / n
