import random
from fractions import Fraction

import pytest

from conftest import rand_body, rand_full_body, rand_segment
from mvlab.bezout import (
    MoveSpec,
    af_spot_check,
    bezout_gap,
    bezout_gap_general,
    cap_cut,
    counterexample_search,
    facet_move_linearity_check,
    homothety_check,
    lemma_measure_power_identity,
    measures_proportional,
    move_facet,
    projection_preserved,
    safe_move_range,
    simplex_audit,
    support_drop_set,
)
from mvlab.errors import (
    BadArity,
    BadParams,
    BudgetExhausted,
    DegenerateInput,
    DimensionLimit,
    DimensionMismatch,
    EmptyOrFlat,
    RangeViolation,
)
from mvlab.generators import cross_polytope, cube, simplex
from mvlab.geometry import (
    Halfspace,
    clip_halfspace,
    convex_hull,
    dilate,
    facet_structure,
    translate,
)
from mvlab.mixed import surface_area_measure, DiscreteMeasure

F = Fraction


def seg(a, b, n):
    return convex_hull([a, b], n, allow_lower=True)


def unit_segs(n):
    z = (0,) * n
    return [seg(z, tuple(int(i == j) for j in range(n)), n) for i in range(n)]


# ---------------------------------------------------------------- gaps


def test_gap_square_segments():
    L, M = unit_segs(2)
    cert = bezout_gap(L, M, cube(2))
    assert cert.gap == F(-1, 4)
    assert cert.verdict == "violated" and not cert.equality
    assert cert.recompute() == cert.gap


def test_gap_triangle_segments_equality():
    L, M = unit_segs(2)
    cert = bezout_gap(L, M, simplex(2))
    assert cert.gap == 0 and cert.equality and cert.verdict == "satisfied"


def test_gap_cube_segments():
    L, M, _ = unit_segs(3)
    assert bezout_gap(L, M, cube(3)).gap == F(-1, 18)


def test_gap_general_r3_cube():
    assert bezout_gap_general(unit_segs(3), cube(3), 3) == F(-7, 54)


def test_gap_general_r2_matches_special_form():
    rng = random.Random("gapgen")
    for _ in range(5):
        K = rand_full_body(rng, 2)
        L = rand_body(rng, 2)
        M = rand_body(rng, 2)
        assert bezout_gap_general([L, M], K, 2) == bezout_gap(L, M, K).gap


def test_gap_identity_slot():
    rng = random.Random("gapid")
    K = rand_full_body(rng, 3)
    M = rand_body(rng, 3)
    assert bezout_gap(K, M, K).gap == 0


def test_gap_errors():
    sq = cube(2)
    with pytest.raises(DimensionMismatch):
        bezout_gap(sq, cube(3), cube(3))
    with pytest.raises(DegenerateInput):
        bezout_gap(sq, sq, seg((0, 0), (1, 0), 2))
    with pytest.raises(BadArity):
        bezout_gap_general([sq], sq, 2)
    with pytest.raises(BadArity):
        bezout_gap_general([sq, sq], sq, 5)


# ---------------------------------------------------------------- facet moves


def test_safe_move_range_square():
    sq = cube(2)
    for i in range(4):
        t_min, t_max = safe_move_range(sq, i)
        assert t_min <= F(-1, 4) and t_max >= F(1, 2)
        assert t_min < 0 < t_max


def test_safe_move_range_triangle():
    tri = simplex(2)
    for i in range(3):
        t_min, t_max = safe_move_range(tri, i)
        assert t_min < 0 < t_max


def test_move_facet_square():
    sq = cube(2)
    i = next(
        j for j, f in enumerate(facet_structure(sq)) if f.normal == (0, 1)
    )
    Kt = move_facet(sq, MoveSpec(i, F(1, 2)))
    assert Kt.vertices == tuple(
        sorted([(F(0), F(0)), (F(1), F(0)), (F(0), F(3, 2)), (F(1), F(3, 2))])
    )


def test_move_facet_endpoints_allowed():
    sq = cube(2)
    t_min, t_max = safe_move_range(sq, 0)
    assert move_facet(sq, MoveSpec(0, t_max)).is_full_dimensional
    assert move_facet(sq, MoveSpec(0, t_min)).is_full_dimensional
    with pytest.raises(RangeViolation):
        move_facet(sq, MoveSpec(0, t_max * 2))


def test_move_facet_preserves_fan_random():
    rng = random.Random("fan")
    for _ in range(8):
        n = rng.choice([2, 3])
        K = rand_full_body(rng, n)
        i = rng.randrange(len(facet_structure(K)))
        t_min, t_max = safe_move_range(K, i)
        t = rng.choice([t_max / 2, t_min / 2, t_max / 3, t_min / 3])
        Kt = move_facet(K, MoveSpec(i, t))
        assert {f.normal for f in facet_structure(Kt)} == {
        f.normal for f in facet_structure(K)
        }


def test_safe_range_cached():
    tri = simplex(2)
    assert safe_move_range(tri, 0) == safe_move_range(tri, 0)


# ---------------------------------------------------------------- caps & projections


def test_cap_cut_square_diagonal():
    P = cap_cut(cube(2), (1, 1), F(1, 2))
    assert P == clip_halfspace(cube(2), Halfspace((1, 1), F(3, 2)))
    assert len(P.vertices) == 5


def test_cap_cut_errors():
    with pytest.raises(BadParams):
        cap_cut(cube(2), (1, 0), 0)
    with pytest.raises(EmptyOrFlat):
        cap_cut(cube(2), (1, 0), 2)


def test_projection_preserved():
    sq = cube(2)
    M = cap_cut(sq, (1, 1), F(1, 5))
    assert projection_preserved(sq, M, (1, 0))
    Mx = cap_cut(sq, (1, 0), F(1, 5))
    assert projection_preserved(sq, Mx, (1, 0))
    assert not projection_preserved(sq, Mx, (0, 1))


def test_support_drop_set():
    sq = cube(2)
    assert support_drop_set(sq, cap_cut(sq, (1, 1), F(1, 5))) == ()
    assert support_drop_set(sq, cap_cut(sq, (1, 0), F(1, 5))) == ((1, 0),)


# ---------------------------------------------------------------- measures & homothety


def test_measures_proportional():
    sq = cube(2)
    rect = convex_hull([(0, 0), (2, 0), (0, 1), (2, 1)], 2)
    assert measures_proportional(
        surface_area_measure(dilate(sq, 3)), surface_area_measure(sq)
    ) == 3
    assert measures_proportional(
        surface_area_measure(rect), surface_area_measure(sq)
    ) is None
    empty = DiscreteMeasure(2, ())
    assert measures_proportional(empty, empty) == 1


def test_homothety_check():
    sq = cube(2)
    P = translate(dilate(sq, F(5, 2)), (F(1, 3), -2))
    assert homothety_check(sq, P) == F(5, 2)
    rect = convex_hull([(0, 0), (2, 0), (0, 1), (2, 1)], 2)
    assert homothety_check(sq, rect) is None


def test_homothety_iff_proportional_random():
    rng = random.Random("homo")
    for _ in range(8):
        n = rng.choice([2, 3])
        K = rand_full_body(rng, n)
        if rng.random() < 0.5:
            lam = F(rng.randrange(1, 5), rng.randrange(1, 3))
            P = translate(dilate(K, lam), tuple(F(1, 2) for _ in range(n)))
        else:
            P = rand_full_body(rng, n)
        prop = measures_proportional(
            surface_area_measure(P), surface_area_measure(K)
        )
        got = homothety_check(K, P)
        assert (got is not None) == (prop is not None)


# ---------------------------------------------------------------- lemma identity


def test_lemma_holds_on_triangle():
    tri = simplex(2)
    for i in range(3):
        _, t_max = safe_move_range(tri, i)
        for t in (t_max / 2, t_max / 4):
            for r in (0, 1):
                chk = lemma_measure_power_identity(tri, MoveSpec(i, t), r)
                assert chk.holds and chk.residual == ()


def test_lemma_scale_example():
    tri = simplex(2)
    chk = lemma_measure_power_identity(tri, MoveSpec(0, F(1, 2)), 1)
    assert chk.holds and chk.scale == F(3, 2)


def test_lemma_fails_on_square():
    sq = cube(2)
    i = next(
        j for j, f in enumerate(facet_structure(sq)) if f.normal == (0, 1)
    )
    chk = lemma_measure_power_identity(sq, MoveSpec(i, F(1, 2)), 1)
    assert not chk.holds and chk.scale == F(5, 4)
    res = {z: (lhs, rhs) for z, lhs, rhs in chk.residual}
    assert res[(1, 0)] == (F(3, 2), F(5, 4))
    assert res[(-1, 0)] == (F(3, 2), F(5, 4))


def test_lemma_r_zero_is_identity():
    sq = cube(2)
    chk = lemma_measure_power_identity(sq, MoveSpec(0, F(1, 4)), 0)
    assert chk.holds


def test_lemma_bad_r():
    with pytest.raises(BadArity):
        lemma_measure_power_identity(simplex(2), MoveSpec(0, F(1, 4)), 2)


# ---------------------------------------------------------------- AF & linearity


def test_af_slack_examples():
    L, M = unit_segs(2)
    assert af_spot_check(L, M, []) == F(1, 4)
    L3, M3, _ = unit_segs(3)
    assert af_spot_check(L3, M3, [cube(3)]) == F(1, 36)


def test_af_errors():
    L, M = unit_segs(2)
    with pytest.raises(BadArity):
        af_spot_check(L, M, [cube(2)])
    with pytest.raises(DimensionMismatch):
        af_spot_check(L, cube(3), [])


def test_af_nonnegative_random():
    rng = random.Random("afmini")
    for _ in range(20):
        n = rng.choice([2, 3])
        L = rand_body(rng, n)
        M = rand_body(rng, n)
        rest = [rand_body(rng, n) for _ in range(n - 2)]
        assert af_spot_check(L, M, rest) >= 0


def test_linearity_residual_zero():
    sq = cube(2)
    for i in range(4):
        assert facet_move_linearity_check(sq, sq, i, F(1, 2)) == 0
        assert facet_move_linearity_check(sq, sq, i, F(-1, 4)) == 0


def test_linearity_requires_subfan():
    with pytest.raises(BadParams):
        facet_move_linearity_check(cube(2), simplex(2), 0, F(1, 4))


def test_linearity_random_moved_copies():
    rng = random.Random("linmove")
    for _ in range(6):
        n = rng.choice([2, 3])
        K = rand_full_body(rng, n)
        nf = len(facet_structure(K))
        j = rng.randrange(nf)
        tj_min, tj_max = safe_move_range(K, j)
        P = move_facet(K, MoveSpec(j, tj_max / 2))
        i = rng.randrange(nf)
        ti_min, ti_max = safe_move_range(K, i)
        t = rng.choice([ti_max / 2, ti_min / 2])
        assert facet_move_linearity_check(K, P, i, t) == 0


# ---------------------------------------------------------------- audit & search


def test_audit_simplices():
    for n in (2, 3):
        rep = simplex_audit(simplex(n))
        assert rep.verdict == "simplex"
        assert rep.vertex_count == n + 1
        assert all(r.proportional and r.scale is not None for r in rep.records)


def test_audit_non_simplices():
    for K in (cube(2), cross_polytope(2), cube(3)):
        rep = simplex_audit(K)
        assert rep.verdict == "non-simplex"
        assert any(not r.proportional for r in rep.records)


def test_search_square_certificate():
    cert = counterexample_search(cube(2), 10000)
    assert cert.gap == F(-1, 4)
    assert cert.L.vertices == ((F(0), F(0)), (F(1), F(0)))
    assert cert.M.vertices == ((F(0), F(0)), (F(0), F(1)))
    assert cert.verdict == "violated"


def test_search_exhaustion():
    with pytest.raises(BudgetExhausted) as exc:
        counterexample_search(simplex(2), 150)
    assert exc.value.evaluations == 150
    assert "150" in str(exc.value)


def test_search_budget_validation():
    with pytest.raises(BadParams):
        counterexample_search(cube(2), 0)


def test_search_needs_full_dim():
    with pytest.raises(DegenerateInput):
        counterexample_search(seg((0, 0), (1, 0), 2), 10)
