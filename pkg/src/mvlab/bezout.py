"""Bezout-gap diagnostics on rational polytopes.

The central quantity is the gap
    gap = V(L,K[n-1])·V(M,K[n-1]) - V(L,M,K[n-2])·V_n(K)
(and its r-body generalization), which is nonnegative for every pair (L,M)
exactly when K is a simplex. This module provides the gap evaluators, the
facet-moving deformation K_{t,i} with a certified safe range, cap cuts,
measure-proportionality and homothety tests, a measure-power identity
checker, the per-facet simplex audit, and a deterministic counterexample
search.

Facet displacements are denominator-cleared: MoveSpec.t shifts the bound of
the primitive-normal inequality <x, z_i> <= c_i by t directly (a geometric
displacement of t/||z_i|| along the unit normal). All identities checked
here are stated in that scale.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import (
    BadArity,
    BadParams,
    BudgetExhausted,
    DegenerateInput,
    DimensionLimit,
    DimensionMismatch,
    EmptyIntersection,
    EmptyOrFlat,
    InternalCheckError,
    RangeViolation,
    Unbounded,
)
from .geometry import (
    Halfspace,
    Polytope,
    clip_halfspace,
    facet_structure,
    interior_point,
    project_along,
    support_value,
    vertex_adjacency,
    vertex_enumeration,
    _from_points,
)
from .linalg import dot, perfect_nth_root, primitive, primitive_from_rational, rank, solve, vsub
from .mixed import (
    DiscreteMeasure,
    mixed_area_measure,
    mixed_volume,
    surface_area_measure,
)


@dataclass(frozen=True)
class MoveSpec:
    """Facet displacement: shift the facet_index-th inequality bound by t."""

    facet_index: int
    t: Fraction


@dataclass(frozen=True)
class BezoutCertificate:
    """Gap evaluation for (L, M) against K; K is stored so the gap can be
    recomputed from the certificate alone."""

    L: Polytope
    M: Polytope
    K: Polytope
    gap: Fraction
    verdict: str  # "satisfied" or "violated"
    equality: bool

    def recompute(self) -> Fraction:
        return bezout_gap(self.L, self.M, self.K).gap


@dataclass(frozen=True)
class FacetAuditRecord:
    facet_index: int
    t: Fraction  # midpoint of the positive safe half-range
    proportional: bool  # at both t and t/2
    scale: Optional[Fraction]  # lambda at t, when proportional


@dataclass(frozen=True)
class AuditReport:
    records: tuple[FacetAuditRecord, ...]
    verdict: str  # "simplex" or "non-simplex"
    vertex_count: int


class LemmaCheck(NamedTuple):
    holds: bool
    scale: Fraction  # lambda = V(K_t,K[n-1]) / V_n(K)
    residual: tuple  # (normal, lhs weight, rhs weight) triples that differ


def bezout_gap(L: Polytope, M: Polytope, K: Polytope) -> BezoutCertificate:
    n = K.dim
    if n < 2:
        raise DimensionLimit("gap diagnostics need ambient dimension >= 2")
    if L.dim != n or M.dim != n:
        raise DimensionMismatch("L, M, K must share the ambient dimension")
    if not K.is_full_dimensional:
        raise DegenerateInput("K must be full-dimensional")
    base = [K] * (n - 2)
    vLK = mixed_volume([L] + [K] * (n - 1))
    vMK = mixed_volume([M] + [K] * (n - 1))
    vLMK = mixed_volume([L, M] + base)
    gap = vLK * vMK - vLMK * K.volume
    return BezoutCertificate(
        L, M, K, gap, "satisfied" if gap >= 0 else "violated", gap == 0
    )


def bezout_gap_general(bodies, delta: Polytope, r: int) -> Fraction:
    """gap = prod_i V(K_i, delta[n-1]) - V(K_1,..,K_r, delta[n-r])·V_n(delta)^(r-1)."""
    bodies = list(bodies)
    n = delta.dim
    if not 2 <= r <= n:
        raise BadArity(f"r={r} outside 2..{n}")
    if len(bodies) != r:
        raise BadArity(f"expected {r} bodies, got {len(bodies)}")
    if not delta.is_full_dimensional:
        raise DegenerateInput("delta must be full-dimensional")
    for b in bodies:
        if b.dim != n:
            raise DimensionMismatch("body dimension differs from delta's")
    rhs = Fraction(1)
    for b in bodies:
        rhs *= mixed_volume([b] + [delta] * (n - 1))
    lhs = mixed_volume(bodies + [delta] * (n - r)) * delta.volume ** (r - 1)
    return rhs - lhs


def _shifted(K: Polytope, facet_index: int, t: Fraction) -> Polytope:
    facets = facet_structure(K)
    halfspaces = [
        Halfspace(f.normal, f.offset + (t if j == facet_index else 0))
        for j, f in enumerate(facets)
    ]
    return vertex_enumeration(halfspaces, K.dim)


_range_cache: dict = {}


def safe_move_range(K: Polytope, facet_index: int):
    """Certified interval (t_min, 0) u (0, t_max) of bound shifts that keep
    the primitive facet-normal set of K unchanged.

    Estimate: track each vertex of the moving facet along its linear
    trajectory and find the nearest parameter at which it meets a facet
    hyperplane it does not lie on; halve, then verify the endpoints by
    explicit vertex enumeration, halving further until verification passes.
    The interval need not be maximal.
    """
    facets = facet_structure(K)
    if not 0 <= facet_index < len(facets):
        raise BadParams(f"facet index {facet_index} out of range")
    cache_key = (K.key(), facet_index)
    cached = _range_cache.get(cache_key)
    if cached is not None:
        return cached

    n = K.dim
    fi = facets[facet_index]
    pos_events: list[Fraction] = []
    neg_events: list[Fraction] = []
    for vi in fi.vertices:
        v = K.vertices[vi]
        tight = [
            g.normal
            for j, g in enumerate(facets)
            if j != facet_index and vi in g.vertices
        ]
        chosen: list = []
        for zn in tight:
            if rank(chosen + [zn]) == len(chosen) + 1:
                chosen.append(zn)
                if len(chosen) == n - 1:
                    break
        if len(chosen) < n - 1:
            continue
        d = solve([fi.normal] + chosen, [1] + [0] * (n - 1))
        if d is None:
            continue
        for j, g in enumerate(facets):
            if j == facet_index or vi in g.vertices:
                continue
            den = dot(g.normal, d)
            if den == 0:
                continue
            tstar = (g.offset - dot(g.normal, v)) / den
            (pos_events if tstar > 0 else neg_events).append(tstar)

    span = support_value(K, fi.normal) + support_value(
        K, tuple(-c for c in fi.normal)
    )
    t_max = min(pos_events) / 2 if pos_events else span
    t_min = max(neg_events) / 2 if neg_events else -span / 2

    target = frozenset(g.normal for g in facets)

    def verified(t: Fraction) -> bool:
        try:
            Kt = _shifted(K, facet_index, t)
        except (EmptyIntersection, Unbounded):
            return False
        return Kt.adim == n and frozenset(g.normal for g in Kt.facets) == target

    for _ in range(64):
        if verified(t_max):
            break
        t_max /= 2
    else:
        raise InternalCheckError("no verifiable positive move range found")
    for _ in range(64):
        if verified(t_min):
            break
        t_min /= 2
    else:
        raise InternalCheckError("no verifiable negative move range found")

    _range_cache[cache_key] = (t_min, t_max)
    return t_min, t_max


def move_facet(K: Polytope, spec: MoveSpec) -> Polytope:
    """K_{t,i}: K with the i-th facet bound shifted by t, t inside the
    certified safe range (so the facet-normal set is preserved)."""
    t = Fraction(spec.t)
    t_min, t_max = safe_move_range(K, spec.facet_index)
    if not t_min <= t <= t_max:
        raise RangeViolation(
            f"t={t} outside certified range [{t_min}, {t_max}]"
        )
    Kt = _shifted(K, spec.facet_index, t)
    target = frozenset(f.normal for f in facet_structure(K))
    if Kt.adim != K.dim or frozenset(f.normal for f in Kt.facets) != target:
        raise InternalCheckError("verified range produced a fan change")
    return Kt


def cap_cut(K: Polytope, z, eps) -> Polytope:
    """K intersected with {<x,z> <= h(z) - eps}; must stay full-dimensional."""
    eps = Fraction(eps)
    if eps <= 0:
        raise BadParams("cap depth must be positive")
    z = primitive(tuple(z))
    bound = support_value(K, z) - eps
    P = clip_halfspace(K, Halfspace(z, bound))
    if P.adim < K.dim:
        raise EmptyOrFlat("cap cut removed the interior")
    return P


def projection_preserved(K: Polytope, M: Polytope, v) -> bool:
    """True iff M and K have identical projections onto v-perp (exact
    vertex-set equality in the shared rational basis)."""
    pK, _ = project_along(K, v)
    pM, _ = project_along(M, v)
    return pK == pM


def support_drop_set(K: Polytope, M: Polytope):
    """Facet normals of K at which M ⊆ K has strictly smaller support."""
    return tuple(
        f.normal
        for f in facet_structure(K)
        if support_value(M, f.normal) < f.offset
    )


def measures_proportional(a: DiscreteMeasure, b: DiscreteMeasure):
    """lambda with a = lambda·b if supports match and weights are in a
    single ratio; None otherwise."""
    if a.support() != b.support():
        return None
    if not a.atoms:
        return Fraction(1)
    lam = None
    for (_, wa), (_, wb) in zip(a.atoms, b.atoms):
        r = wa / wb
        if lam is None:
            lam = r
        elif r != lam:
            return None
    return lam


def homothety_check(K: Polytope, P: Polytope):
    """Scale lambda with P = lambda·K + x, or None.

    Decided geometrically: the measure-proportionality factor is
    lambda^(n-1); its exact root plus vertex-centroid alignment determine
    the candidate map, confirmed by exact vertex-set equality.
    """
    if K.dim != P.dim:
        raise DimensionMismatch("ambient dimensions differ")
    if not (K.is_full_dimensional and P.is_full_dimensional):
        raise DegenerateInput("homothety check needs full-dimensional bodies")
    m = measures_proportional(surface_area_measure(P), surface_area_measure(K))
    if m is None:
        return None
    lam = perfect_nth_root(m, K.dim - 1)
    if lam is None or lam <= 0:
        return None
    cK = interior_point(K)
    cP = interior_point(P)
    x = tuple(cp - lam * ck for cp, ck in zip(cP, cK))
    mapped = tuple(
        sorted(tuple(lam * c + xi for c, xi in zip(v, x)) for v in K.vertices)
    )
    return lam if mapped == P.vertices else None


def lemma_measure_power_identity(K: Polytope, spec: MoveSpec, r: int) -> LemmaCheck:
    """Check S(K_t[r], K[n-1-r], ·) = lambda^r · S(K, ·) atom by atom,
    lambda = V(K_t,K[n-1]) / V_n(K)."""
    n = K.dim
    if not 0 <= r <= n - 1:
        raise BadArity(f"r={r} outside 0..{n - 1}")
    Kt = move_facet(K, spec)
    lam = mixed_volume([Kt] + [K] * (n - 1)) / K.volume
    lhs = mixed_area_measure([Kt] * r + [K] * (n - 1 - r))
    rhs = surface_area_measure(K).scaled(lam**r)
    support = sorted(set(lhs.support()) | set(rhs.support()))
    residual = tuple(
        (z, lhs.weight(z), rhs.weight(z))
        for z in support
        if lhs.weight(z) != rhs.weight(z)
    )
    return LemmaCheck(not residual, lam, residual)


def af_spot_check(L: Polytope, M: Polytope, rest) -> Fraction:
    """Slack V(L,M,rest)^2 - V(L,L,rest)·V(M,M,rest); nonnegative always
    (a negative value indicates an implementation bug)."""
    rest = list(rest)
    n = L.dim
    if M.dim != n or any(b.dim != n for b in rest):
        raise DimensionMismatch("bodies must share the ambient dimension")
    if len(rest) != n - 2:
        raise BadArity(f"expected {n - 2} fixed bodies, got {len(rest)}")
    a = mixed_volume([L, M] + rest)
    b = mixed_volume([L, L] + rest)
    c = mixed_volume([M, M] + rest)
    return a * a - b * c


def simplex_audit(K: Polytope) -> AuditReport:
    """Per facet: move by the midpoint t of the positive safe half-range
    (confirming at t/2) and test proportionality of S(K_t) to S(K).
    Verdict "simplex" iff every facet passes; cross-checked against the
    vertex count n+1."""
    n = K.dim
    facets = facet_structure(K)
    sK = surface_area_measure(K)
    records = []
    for i in range(len(facets)):
        _, t_max = safe_move_range(K, i)
        t = t_max / 2
        lam = measures_proportional(
            surface_area_measure(move_facet(K, MoveSpec(i, t))), sK
        )
        ok = lam is not None
        if ok:
            confirm = measures_proportional(
                surface_area_measure(move_facet(K, MoveSpec(i, t / 2))), sK
            )
            ok = confirm is not None
        records.append(FacetAuditRecord(i, t, ok, lam if ok else None))
    verdict = "simplex" if all(r.proportional for r in records) else "non-simplex"
    if (verdict == "simplex") != (len(K.vertices) == n + 1):
        raise InternalCheckError("audit verdict disagrees with vertex count")
    return AuditReport(tuple(records), verdict, len(K.vertices))


def _segment(a, b, dim: int) -> Polytope:
    pa = tuple(Fraction(c) for c in a)
    pb = tuple(Fraction(c) for c in b)
    return _from_points([pa, pb], dim)


def _canon_direction(d):
    d = primitive_from_rational(d)
    for c in d:
        if c:
            return d if c > 0 else tuple(-x for x in d)
    raise InternalCheckError("zero edge direction")


def _search_random_body(n: int, index: int) -> Polytope:
    rng = random.Random(f"mvlab-search:{n}:{index}")
    pts = [
        tuple(Fraction(rng.randrange(-6, 7), rng.randrange(1, 4)) for _ in range(n))
        for _ in range(n + 2)
    ]
    return _from_points(pts, n)


def counterexample_search(K: Polytope, budget: int) -> BezoutCertificate:
    """Deterministic staged search for (L, M) with negative gap against K.

    Stages: (a) pairs of segments along K's edge directions; (b) pairs of
    facet-moved copies of K at half the safe ranges; (c) (axis segment,
    cap cut) pairs where the cap drops support on some facet normal and
    the axis projection is preserved; (d) seeded random hull pairs.
    Raises BudgetExhausted after `budget` gap evaluations without a
    violation; exhaustion is not a simplex verdict.
    """
    if not isinstance(budget, int) or budget < 1:
        raise BadParams("budget must be a positive integer")
    n = K.dim
    if not K.is_full_dimensional:
        raise DegenerateInput("search target must be full-dimensional")

    evaluations = 0

    def attempt(L: Polytope, M: Polytope):
        nonlocal evaluations
        if evaluations >= budget:
            raise BudgetExhausted(evaluations)
        evaluations += 1
        cert = bezout_gap(L, M, K)
        return cert if cert.gap < 0 else None

    origin = tuple(Fraction(0) for _ in range(n))

    # (a) segments along edge directions, colex-ordered
    dirs = sorted(
        {
            _canon_direction(vsub(K.vertices[j], K.vertices[i]))
            for i, j in vertex_adjacency(K)
        },
        key=lambda d: tuple(reversed(d)),
    )
    segs = [_segment(origin, d, n) for d in dirs]
    for a in range(len(segs)):
        for b in range(a + 1, len(segs)):
            found = attempt(segs[a], segs[b])
            if found:
                return found

    # (b) facet-move pairs at +-half of the safe ranges
    moved = []
    for i in range(len(facet_structure(K))):
        t_min, t_max = safe_move_range(K, i)
        moved.append(move_facet(K, MoveSpec(i, t_max / 2)))
        moved.append(move_facet(K, MoveSpec(i, t_min / 2)))
    for a in range(len(moved)):
        for b in range(a + 1, len(moved)):
            found = attempt(moved[a], moved[b])
            if found:
                return found

    # (c) cap cuts at vertex directions paired with axis segments
    facets = facet_structure(K)
    for v in K.vertices:
        zsum = [0] * n
        for f in facets:
            if dot(f.normal, v) == f.offset:
                zsum = [a + b for a, b in zip(zsum, f.normal)]
        if not any(zsum):
            continue
        zv = primitive(tuple(zsum))
        span = support_value(K, zv) + support_value(K, tuple(-c for c in zv))
        for frac in (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)):
            try:
                M = cap_cut(K, zv, span * frac)
            except EmptyOrFlat:
                continue
            if not support_drop_set(K, M):
                continue
            for j in range(n):
                axis = tuple(Fraction(int(k == j)) for k in range(n))
                if projection_preserved(K, M, axis):
                    L = _segment(tuple(-c for c in axis), axis, n)
                    found = attempt(L, M)
                    if found:
                        return found

    # (d) seeded random hull pairs, until the budget runs out
    index = 0
    while True:
        L = _search_random_body(n, 2 * index)
        M = _search_random_body(n, 2 * index + 1)
        index += 1
        found = attempt(L, M)
        if found:
            return found


def facet_move_linearity_check(
    K: Polytope, P: Polytope, facet_index: int, t
) -> Fraction:
    """Residual n·V(K_t,P[n-1]) - n·V(K,P[n-1]) - t·w_P(z_i); exactly 0
    whenever P's facet normals all occur among K's (checked)."""
    t = Fraction(t)
    n = K.dim
    facets = facet_structure(K)
    if not 0 <= facet_index < len(facets):
        raise BadParams(f"facet index {facet_index} out of range")
    z = facets[facet_index].normal
    norms_K = {f.normal for f in facets}
    facets_P = facet_structure(P)
    if not {f.normal for f in facets_P} <= norms_K:
        raise BadParams("P has facet normals outside K's fan")
    wP = next(
        (f.normalized_volume for f in facets_P if f.normal == z), Fraction(0)
    )
    Kt = move_facet(K, MoveSpec(facet_index, t))
    base = [P] * (n - 1)
    return (
        n * mixed_volume([Kt] + base)
        - n * mixed_volume([K] + base)
        - t * wP
    )
