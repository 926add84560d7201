import pytest

from spechtvar import variety
from spechtvar.errors import InconsistentCounts, TooManyPoints
from spechtvar.ffalg import FieldCtx, MultiPoly, poly_eval
from spechtvar.spechtmod import restricted_actions
from spechtvar.variety import (CATALOGUE_P3_9, classify, classify_stable,
                               enumerate_locus, estimate_dimension,
                               homogeneous_vanishing_forms, interpolate_forms,
                               normalize_point, projective_points,
                               sweep_rank_vectors, template_check)

QUARTIC = MultiPoly(p=3, nvars=3, terms={(2, 2, 0): 1, (0, 2, 2): 1, (2, 0, 2): 1})


def test_projective_points_are_normalized_and_counted():
    ctx = FieldCtx.get(3, 1)
    pts = list(projective_points(ctx, 3))
    assert len(pts) == 13 == (3**3 - 1) // 2
    for pt in pts:
        lead = next(c for c in pt if c)
        assert lead == 1
    assert len(set(pts)) == 13
    ctx2 = FieldCtx.get(3, 2)
    assert len(list(projective_points(ctx2, 3))) == 91


def test_normalize_point():
    ctx = FieldCtx.get(3, 1)
    assert normalize_point((0, 2, 1), ctx) == (0, 1, 2)
    assert normalize_point((2, 2, 0), ctx) == (1, 1, 0)
    with pytest.raises(ValueError):
        normalize_point((0, 0, 0), ctx)


def test_frobenius_orbits_partition_points():
    ctx = FieldCtx.get(3, 3)
    seen = set()
    sizes = set()
    for pt in projective_points(ctx, 2):
        if pt in seen:
            continue
        orbit = variety._frobenius_orbit(pt, ctx)
        sizes.add(len(orbit))
        assert not seen & set(orbit)
        seen.update(orbit)
    assert seen == set(projective_points(ctx, 2))
    assert sizes <= {1, 3}
    # rational points are Galois-fixed
    assert variety._frobenius_orbit((1, 2), ctx) == [(1, 2)]


def test_locus_331_empty_everywhere_sampled():
    acts = restricted_actions((5, 3, 1), 3, 3)
    s2 = enumerate_locus(acts, 2)
    assert s2.is_empty and s2.total_projective_points == 91
    s3 = enumerate_locus(acts, 3)
    assert s3.is_empty and s3.total_projective_points == 757
    assert classify(s3).kind == "zero"
    assert classify_stable(acts).est_dim == 0


def test_locus_333_matches_quartic_zero_set():
    acts = restricted_actions((3, 3, 3), 3, 3)
    for k in (1, 2):
        sample = enumerate_locus(acts, k)
        ctx = FieldCtx.get(3, k)
        for pt in projective_points(ctx, 3):
            coords = tuple(ctx.element(c) for c in pt)
            assert (not poly_eval(QUARTIC, coords)) == (pt in sample.points)
    s1 = enumerate_locus(acts, 1)
    assert len(s1.points) == 7
    assert (1, 1, 1) in s1.points


def test_trivial_module_locus_is_full():
    acts = restricted_actions((9,), 3, 3)
    s = enumerate_locus(acts, 1)
    assert s.is_full and len(s.points) == 13
    cls = classify(s)
    assert cls.kind == "full" and cls.est_dim == 3
    # dim not divisible by p: same short-circuit
    s81 = enumerate_locus(restricted_actions((8, 1), 3, 3), 2)
    assert s81.is_full


def test_classify_axes_union_72():
    acts = restricted_actions((7, 2), 3, 3)
    cls = classify_stable(acts)
    assert cls.kind == "axes-union" and cls.est_dim == 1
    s = enumerate_locus(acts, 2)
    assert s.points == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_classify_hypersurface_333():
    acts = restricted_actions((3, 3, 3), 3, 3)
    cls = classify_stable(acts)
    assert cls.kind == "hypersurface" and cls.est_dim == 2
    assert cls.form.proportional_to(QUARTIC)
    assert template_check(cls.form, 3)


def test_conjugate_pair_loci_agree():
    a = restricted_actions((7, 2), 3, 3, use_conjugate=False)
    sa = enumerate_locus(a, 1)
    variety._LOCUS_MEMO.clear()  # force an independent sweep
    b = restricted_actions((2, 2, 1, 1, 1, 1, 1), 3, 3, use_conjugate=False)
    sb = enumerate_locus(b, 1)
    assert sa.points == sb.points


def test_interpolation_spaces():
    acts = restricted_actions((5, 3, 1), 3, 3)
    empty = enumerate_locus(acts, 2)
    lin = interpolate_forms(empty, 1)
    assert len(lin) == 3  # every linear form vanishes on nothing
    full = enumerate_locus(restricted_actions((8, 1), 3, 3), 3)
    assert full.is_full
    assert interpolate_forms(full, 4) == []
    s3 = enumerate_locus(restricted_actions((3, 3, 3), 3, 3), 3)
    quartics = homogeneous_vanishing_forms(s3, 4)
    assert len(quartics) == 1 and quartics[0].proportional_to(QUARTIC)
    assert len(interpolate_forms(s3, 4)) == 1
    for d in (1, 2, 3):
        assert homogeneous_vanishing_forms(s3, d) == []


def test_estimate_dimension_examples():
    assert estimate_dimension((3, 3, 3), 3, 3, [1, 2, 3]) == 2
    assert estimate_dimension((7, 2), 3, 3, [2, 3]) == 1
    assert estimate_dimension((9,), 3, 3, [1, 2]) == 3
    assert estimate_dimension((5, 3, 1), 3, 3, [1, 2]) == 0
    with pytest.raises(InconsistentCounts):
        estimate_dimension((9,), 3, 3, [2])


def test_point_gate():
    acts = restricted_actions((3, 3, 3), 3, 3)
    with pytest.raises(TooManyPoints):
        enumerate_locus(acts, 13)


def test_sweep_rank_vectors_333():
    acts = restricted_actions((3, 3, 3), 3, 3)
    rows = list(sweep_rank_vectors(acts, 1))
    assert len(rows) == 13
    frees = [pt for pt, free, _ in rows if free]
    assert len(frees) == 6
    for pt, free, rv in rows:
        if free:
            assert rv.ranks == (42, 28, 14, 0)
        else:
            assert rv.ranks[2] < 14


def test_template_check_shapes():
    assert template_check(QUARTIC, 3)
    assert not template_check(
        MultiPoly(p=3, nvars=3, terms={(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}), 3)
    assert not template_check(MultiPoly(p=3, nvars=3, terms={(3, 3, 3): 1}), 3)
    # n=2 with a nonzero cofactor: (x1 x2 x3)^2 * x1^2 + hatted sum
    good = MultiPoly(p=3, nvars=3, terms={(4, 2, 2): 1, (0, 4, 4): 1,
                                          (4, 0, 4): 1, (4, 4, 0): 1})
    assert template_check(good, 3)
    # remainder not divisible by (x1 x2 x3)^(p-1)
    bad = MultiPoly(p=3, nvars=3, terms={(0, 2, 2): 1, (2, 0, 2): 1,
                                         (2, 2, 0): 1, (3, 1, 0): 1})
    assert not template_check(bad, 3)
    # hatted coefficients must agree
    uneven = MultiPoly(p=3, nvars=3, terms={(0, 2, 2): 1, (2, 0, 2): 2,
                                            (2, 2, 0): 1})
    assert not template_check(uneven, 3)
    # wrong variable count
    assert not template_check(MultiPoly(p=3, nvars=2, terms={(2, 2): 1}), 3)


def test_catalogue_spot_checks():
    # the full table is exercised end to end by the acceptance run; spot
    # check the catalogue's own coherence here
    assert CATALOGUE_P3_9[(5, 3, 1)] == ("zero", 0)
    assert CATALOGUE_P3_9[(3, 3, 3)] == ("hypersurface", 2)
    kinds = [kind for kind, _ in CATALOGUE_P3_9.values()]
    assert kinds.count("full") == 11
    assert kinds.count("axes-union") == 3
    assert len(CATALOGUE_P3_9) == 16
