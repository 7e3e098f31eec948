import random
from fractions import Fraction

from hypothesis import HealthCheck, settings

settings.register_profile(
    "mvlab",
    deadline=None,
    derandomize=True,
    max_examples=30,
    suppress_health_check=[
        HealthCheck.too_slow,
        HealthCheck.filter_too_much,
        HealthCheck.data_too_large,
    ],
)
settings.load_profile("mvlab")

from mvlab.geometry import convex_hull  # noqa: E402
from mvlab.linalg import det  # noqa: E402


def rand_points(rng, n, count, span=3, max_den=2):
    return [
        tuple(
            Fraction(rng.randrange(-span, span + 1), rng.randrange(1, max_den + 1))
            for _ in range(n)
        )
        for _ in range(count)
    ]


def rand_body(rng, n, count=None, span=3, max_den=2):
    """Small random body; may be lower-dimensional."""
    if count is None:
        count = n + 2
    return convex_hull(rand_points(rng, n, count, span, max_den), n, allow_lower=True)


def rand_full_body(rng, n, count=None, span=3, max_den=2):
    while True:
        P = rand_body(rng, n, count, span, max_den)
        if P.is_full_dimensional:
            return P


def rand_segment(rng, n, span=3, max_den=2):
    while True:
        a, b = rand_points(rng, n, 2, span, max_den)
        if a != b:
            return convex_hull([a, b], n, allow_lower=True)


def rand_affine_simplex(rng, n, span=3, max_den=2):
    """Image of conv{0, e_1..e_n} under a random invertible rational affine map."""
    while True:
        cols = [
            [Fraction(rng.randrange(-span, span + 1), rng.randrange(1, max_den + 1))
             for _ in range(n)]
            for _ in range(n)
        ]
        if det([[cols[j][i] for j in range(n)] for i in range(n)]) != 0:
            break
    shift = [
        Fraction(rng.randrange(-span, span + 1), rng.randrange(1, max_den + 1))
        for _ in range(n)
    ]
    verts = [tuple(shift)] + [
        tuple(c + s for c, s in zip(col, shift)) for col in cols
    ]
    return convex_hull(verts, n)


def mix_body(rng, n, segments_only=False):
    """Body mix used by the randomized gap sweeps: mostly segments, some
    triangles, occasionally a fatter hull. Segments keep Minkowski sums
    tiny, which matters in dimension 4."""
    roll = rng.random()
    if segments_only or roll < 0.5:
        return rand_segment(rng, n)
    if roll < 0.8:
        return rand_body(rng, n, count=3)
    return rand_body(rng, n, count=n + 2)
