import numpy as np
import pytest

from spechtvar import jordan
from spechtvar.errors import (ArityMismatch, CertificationFailed,
                              RankCheckFailed, ZeroPoint)
from spechtvar.ffalg import FieldCtx
from spechtvar.jordan import (GenericTypeReport, JordanType, RankVector,
                              complementary_check, generic_type, is_free_at,
                              jordan_at_point, rank_vector_at, stable_type)
from spechtvar.partitions import p_core_weight, partitions_of
from spechtvar.phimap import find_ab
from spechtvar.spechtmod import perm_module_actions, restricted_actions


def test_rank_vector_validation():
    rv = RankVector(3, (4, 2, 1, 0))
    assert rv.dim == 4
    with pytest.raises(RankCheckFailed):
        RankVector(3, (4, 2, 1))  # wrong length
    with pytest.raises(RankCheckFailed):
        RankVector(3, (4, 2, 1, 1))  # r_p != 0
    with pytest.raises(RankCheckFailed):
        RankVector(3, (4, 1, 2, 0))  # not decreasing
    with pytest.raises(RankCheckFailed):
        RankVector(3, (4, 3, 1, 0))  # drops 1 then 2: not convex


def test_jordan_type_from_rank_vector():
    t = JordanType.from_rank_vector(RankVector(3, (4, 2, 1, 0)))
    assert t.blocks == (1, 0, 1)
    assert t.dim == 4
    assert t.pretty() == "(3,1)"
    assert t.n(3) == 1 and t.n(2) == 0
    free = JordanType.from_rank_vector(RankVector(3, (6, 4, 2, 0)))
    assert free.blocks == (0, 0, 2)
    assert free.pretty() == "(3^2)"


def test_stable_type_drops_projective_blocks():
    t = JordanType(p=3, blocks=(1, 2, 5))
    assert stable_type(t).blocks == (1, 2, 0)
    assert stable_type(t).pretty() == "(2^2,1)"


def test_complementary_check_examples():
    one = JordanType(p=3, blocks=(1, 0, 0))
    two = JordanType(p=3, blocks=(0, 1, 0))
    empty = JordanType(p=3, blocks=(0, 0, 0))
    assert complementary_check(one, two, 3)
    assert complementary_check(two, one, 3)
    assert not complementary_check(one, one, 3)
    assert complementary_check(empty, empty, 3)


def test_point_validation():
    acts = restricted_actions((3, 3, 3), 3, 3)
    with pytest.raises(ZeroPoint):
        jordan_at_point(acts, (0, 0, 0))
    with pytest.raises(ArityMismatch):
        jordan_at_point(acts, (1, 1))
    ctx = FieldCtx.get(3, 2)
    with pytest.raises(ZeroPoint):
        jordan_at_point(acts, (ctx.zero, ctx.zero, ctx.zero))


def test_333_point_values():
    acts = restricted_actions((3, 3, 3), 3, 3)
    assert acts.dim == 42
    free_pt = jordan_at_point(acts, (1, 1, 0))
    assert free_pt.blocks == (0, 0, 14)
    assert is_free_at(acts, (1, 1, 0))
    diag = jordan_at_point(acts, (1, 1, 1))
    assert not is_free_at(acts, (1, 1, 1))
    assert diag.blocks[2] < 14 and diag.dim == 42


def test_531_is_free_at_extension_points():
    # The full 757-point projective sweep lives with the variety scan;
    # here a handful of GF(27) points, including ones with zero coords.
    acts = restricted_actions((5, 3, 1), 3, 3)
    ctx = FieldCtx.get(3, 3)
    rng = np.random.default_rng(7)
    pts = [
        (ctx.one, ctx.zero, ctx.zero),
        (ctx.zero, ctx.one, ctx.zero),
        (ctx.one, ctx.one, ctx.one),
        ctx.random_point(rng, 3),
        ctx.random_point(rng, 3),
    ]
    assert all(is_free_at(acts, pt) for pt in pts)


def test_is_free_warns_when_dim_not_divisible():
    acts = restricted_actions((8, 1), 3, 3)
    assert acts.dim == 8
    with pytest.warns(RuntimeWarning):
        assert not is_free_at(acts, (1, 0, 0))


def test_generic_type_81():
    acts = restricted_actions((8, 1), 3, 3)
    rep = generic_type(acts, seed=0)
    assert rep.type.blocks == (0, 1, 2)
    assert rep.type.pretty() == "(3^2,2)"
    assert stable_type(rep.type).pretty() == "(2)"
    assert rep.certified_by_single_sample
    assert rep.mode == "randomized"
    assert rep.field.p == 3


def test_generic_type_42_p2():
    acts = restricted_actions((4, 2), 3, 2)
    rep = generic_type(acts)
    assert rep.type.blocks == (1, 4)
    assert stable_type(rep.type).blocks == (1, 0)


def test_generic_type_exact_matches_randomized():
    cases = [((8, 1), 3, 3), ((7, 2), 3, 3), ((4, 2), 2, 3),
             ((2, 2, 2), 2, 3), ((6, 2), 2, 4)]
    for mu, p, n in cases:
        acts = restricted_actions(mu, n, p)
        ex = generic_type(acts, mode="exact")
        rnd = generic_type(acts, mode="randomized", seed=3)
        assert ex.type == rnd.type, (mu, p)
        assert ex.rank_vector == rnd.rank_vector
        assert ex.mode == "exact" and ex.samples == 0 and ex.field is None


def test_perm_module_generic_types():
    pm = perm_module_actions((3, 3, 3), 3, 3)
    rep = generic_type(pm, seed=1)
    assert rep.type.blocks == (6, 0, 558)
    ex = generic_type(pm, mode="exact")
    assert ex.type.blocks == (6, 0, 558)
    # single-tabloid module: everything acts trivially
    one = perm_module_actions((9,), 3, 3)
    assert generic_type(one, mode="exact").type.blocks == (1, 0, 0)
    small = perm_module_actions((4, 2), 2, 3)
    assert (generic_type(small, mode="exact").type
            == generic_type(small, seed=5).type)


def test_scaling_invariance():
    acts = restricted_actions((4, 2), 2, 3)
    ctx = FieldCtx.get(3, 4)
    rng = np.random.default_rng(11)
    for _ in range(100):
        pt = ctx.random_point(rng, 2)
        c = ctx.random_element(rng)
        while not c:
            c = ctx.random_element(rng)
        scaled = tuple(c * x for x in pt)
        assert rank_vector_at(acts, pt) == rank_vector_at(acts, scaled)


def test_coordinate_permutation_invariance():
    # permuting the generators of E_n permutes coordinates of alpha
    acts = restricted_actions((7, 2), 3, 3)
    ctx = FieldCtx.get(3, 3)
    rng = np.random.default_rng(13)
    import itertools
    for _ in range(5):
        pt = ctx.random_point(rng, 3)
        base = rank_vector_at(acts, pt)
        for sigma in itertools.permutations(range(3)):
            moved = tuple(pt[sigma[i]] for i in range(3))
            assert rank_vector_at(acts, moved) == base


def test_sampled_ranks_dominated_by_generic():
    acts = restricted_actions((3, 3, 3), 3, 3)
    gen = generic_type(acts, seed=2).rank_vector
    ctx = FieldCtx.get(3, 3)
    rng = np.random.default_rng(17)
    for _ in range(10):
        rv = rank_vector_at(acts, ctx.random_point(rng, 3))
        assert gen.dominates(rv)


def test_nonempty_core_is_generically_free():
    for mu in partitions_of(9):
        if p_core_weight(mu, 3).core == ():
            continue
        acts = restricted_actions(mu, 3, 3)
        rep = generic_type(acts, seed=0, samples=3)
        assert rep.type.blocks[:-1] == (0, 0), mu
        assert rep.type.blocks[-1] * 3 == acts.dim


def test_observed_stable_types_for_two_row_fixed_points():
    # Observed generic stable types for mu = (np - p, p); recorded as
    # observations, not asserted ahead of the computation.
    s33 = generic_type(restricted_actions((3, 3), 2, 3), seed=0)
    assert stable_type(s33.type).blocks == (0, 1, 0)
    s63 = generic_type(restricted_actions((6, 3), 3, 3), seed=0)
    assert stable_type(s63.type).blocks == (1, 1, 0)


def test_phi_pairs_have_complementary_stable_types():
    # mu and phi(mu) restrict to modules whose stable generic types are
    # complementary; checked on the empty-core partitions of 9 in the
    # phi domain that are not fixed points.
    pairs = []
    for mu in partitions_of(9):
        if len(mu) > 3 or p_core_weight(mu, 3).core != ():
            continue
        step = find_ab(mu, 3)
        if step is not None:
            pairs.append((mu, step.result))
    assert ((8, 1), (9,)) in pairs and ((6, 2, 1), (6, 3)) in pairs
    for mu, nu in pairs:
        t1 = generic_type(restricted_actions(mu, 3, 3), seed=0).type
        t2 = generic_type(restricted_actions(nu, 3, 3), seed=0).type
        assert complementary_check(stable_type(t1), stable_type(t2), 3), (mu, nu)


def test_generic_report_seed_determinism():
    acts = restricted_actions((5, 3, 1), 3, 3)
    a = generic_type(acts, seed=42)
    b = generic_type(acts, seed=42)
    assert a == b
    assert a.type.blocks == (0, 0, 54)
