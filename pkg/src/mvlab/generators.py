"""Polytope generators for experiments.

All outputs are exact rational polytopes. The round-body approximations
(regular_polygon, ball_approx_3d) rationalize trigonometric coordinates by
continued-fraction best approximation with a denominator cap; nothing
downstream relies on exact regularity, only on convexity.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .errors import BadParams
from .geometry import Halfspace, Polytope, clip_halfspace, convex_hull

_MAX_DIM = 4


def _check_dim(n):
    if not isinstance(n, int) or not 1 <= n <= _MAX_DIM:
        raise BadParams(f"dimension {n!r} outside 1..{_MAX_DIM}")


def simplex(n: int) -> Polytope:
    """conv{0, e_1, ..., e_n}."""
    _check_dim(n)
    pts = [[0] * n] + [[int(i == j) for j in range(n)] for i in range(n)]
    return convex_hull(pts, n)


def cube(n: int) -> Polytope:
    """[0,1]^n."""
    _check_dim(n)
    pts = [[(mask >> i) & 1 for i in range(n)] for mask in range(1 << n)]
    return convex_hull(pts, n)


def cross_polytope(n: int) -> Polytope:
    """conv{+-e_1, ..., +-e_n}."""
    _check_dim(n)
    if n == 1:
        return convex_hull([[-1], [1]], 1)
    pts = []
    for i in range(n):
        for s in (1, -1):
            pts.append([s * int(i == j) for j in range(n)])
    return convex_hull(pts, n)


def prism(base: Polytope, height) -> Polytope:
    """base x [0, height] in one dimension higher."""
    h = Fraction(height)
    if h <= 0:
        raise BadParams("prism height must be positive")
    if not base.is_full_dimensional:
        raise BadParams("prism base must be full-dimensional")
    n = base.dim + 1
    _check_dim(n)
    pts = [list(v) + [lvl] for v in base.vertices for lvl in (Fraction(0), h)]
    return convex_hull(pts, n)


def random_hull(n: int, m: int, seed: int) -> Polytope:
    """Hull of m seeded random rational points, redrawn until full-dimensional."""
    _check_dim(n)
    if m < n + 1:
        raise BadParams(f"need at least {n + 1} points, got {m}")
    rng = random.Random(f"mvlab-gen:{n}:{m}:{seed}")
    for _ in range(64):
        pts = [
            tuple(Fraction(rng.randrange(-10, 11), rng.randrange(1, 5)) for _ in range(n))
            for _ in range(m)
        ]
        poly = convex_hull(pts, n, allow_lower=True)
        if poly.is_full_dimensional:
            return poly
    raise BadParams("random points kept collapsing; bad parameters")


def regular_polygon(m: int, max_denominator: int) -> Polytope:
    """m-gon with vertices rationally rounded from the unit circle."""
    if m < 3:
        raise BadParams("polygon needs at least 3 vertices")
    if max_denominator < 1:
        raise BadParams("denominator cap must be positive")
    pts = []
    for k in range(m):
        angle = 2 * math.pi * k / m
        pts.append(
            (
                Fraction(math.cos(angle)).limit_denominator(max_denominator),
                Fraction(math.sin(angle)).limit_denominator(max_denominator),
            )
        )
    return convex_hull(pts, 2)


_ICO_FACES = (
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
)


def ball_approx_3d(subdivisions: int, max_denominator: int) -> Polytope:
    """Rationalized icosphere: icosahedron faces subdivided on the unit
    sphere, coordinates rounded to denominators <= max_denominator."""
    if not 0 <= subdivisions <= 3:
        raise BadParams("subdivisions outside 0..3")
    if max_denominator < 1:
        raise BadParams("denominator cap must be positive")
    phi = (1 + math.sqrt(5)) / 2
    raw = [
        (-1, phi, 0), (1, phi, 0), (-1, -phi, 0), (1, -phi, 0),
        (0, -1, phi), (0, 1, phi), (0, -1, -phi), (0, 1, -phi),
        (phi, 0, -1), (phi, 0, 1), (-phi, 0, -1), (-phi, 0, 1),
    ]

    def unit(p):
        r = math.sqrt(sum(c * c for c in p))
        return tuple(c / r for c in p)

    verts = [unit(p) for p in raw]
    faces = list(_ICO_FACES)
    for _ in range(subdivisions):
        midpoint: dict = {}

        def mid(i, j):
            key = (min(i, j), max(i, j))
            if key not in midpoint:
                verts.append(
                    unit(tuple((a + b) / 2 for a, b in zip(verts[i], verts[j])))
                )
                midpoint[key] = len(verts) - 1
            return midpoint[key]

        nxt = []
        for a, b, c in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            nxt += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = nxt

    pts = [
        tuple(Fraction(c).limit_denominator(max_denominator) for c in p)
        for p in verts
    ]
    return convex_hull(pts, 3)


def truncated_simplex(n: int, eps) -> Polytope:
    """Standard simplex with the vertex e_1 cut off at depth eps."""
    _check_dim(n)
    e = Fraction(eps)
    if not 0 < e < 1:
        raise BadParams("truncation depth must be in (0, 1)")
    z = tuple(int(j == 0) for j in range(n))
    return clip_halfspace(simplex(n), Halfspace(z, 1 - e))


_KINDS = {
    "simplex": (simplex, 1),
    "cube": (cube, 1),
    "cross_polytope": (cross_polytope, 1),
    "prism": (prism, 2),
    "random_hull": (random_hull, 3),
    "regular_polygon": (regular_polygon, 2),
    "ball_approx_3d": (ball_approx_3d, 2),
    "truncated_simplex": (truncated_simplex, 2),
}

_PRISM_BASES = {"triangle": lambda: simplex(2), "square": lambda: cube(2)}


def generate(kind: str, params) -> Polytope:
    """Dispatch to a named generator; params is the positional argument list.

    prism accepts a Polytope base or one of the names "triangle"/"square".
    """
    if kind not in _KINDS:
        raise BadParams(f"unknown generator kind {kind!r}")
    fn, arity = _KINDS[kind]
    params = list(params)
    if len(params) != arity:
        raise BadParams(f"{kind} takes {arity} parameter(s), got {len(params)}")
    if kind == "prism" and isinstance(params[0], str):
        base = _PRISM_BASES.get(params[0])
        if base is None:
            raise BadParams(f"unknown prism base {params[0]!r}")
        params[0] = base()
    return fn(*params)
