import numpy as np
import pytest

from spechtvar import gfp
from spechtvar.errors import PreconditionViolated, TooLarge
from spechtvar.spechtmod import (PermutationActions, Tabloid,
                                 enumerate_tabloids, generator_cycles,
                                 perm_action_sparse, perm_module_actions,
                                 restricted_actions, standard_basis,
                                 standard_tableaux, tabloid_count)


def test_tabloid_counts():
    assert tabloid_count((6, 3)) == 84
    assert tabloid_count((3, 3, 3)) == 1680
    assert tabloid_count((7,)) == 1
    assert tabloid_count((5, 2, 1, 1)) == 1512
    assert len(enumerate_tabloids((6, 3))) == 84


def test_tabloid_canonical_order():
    tabs = enumerate_tabloids((2, 1))
    assert [t.rows for t in tabs] == [
        ((1, 2), (3,)), ((1, 3), (2,)), ((2, 3), (1,))]
    assert tabs[0].row_of == (0, 0, 1)
    with pytest.raises(TooLarge):
        enumerate_tabloids((1,) * 11)


def test_perm_action_sparse_examples():
    ident = perm_action_sparse([1, 2, 3], (2, 1), p=3)
    assert ident.is_identity()
    # transposition (1 2): fixes {12|3}, swaps {13|2} and {23|1}
    swap = perm_action_sparse([2, 1, 3], (2, 1), p=3)
    dense = swap.to_dense()
    assert dense.entry(0, 0) == 1
    assert dense.entry(2, 1) == 1
    assert dense.entry(1, 2) == 1
    # 3-cycle sends {12|3} to {23|1}; composing with its inverse is identity
    cyc = perm_action_sparse([2, 3, 1], (2, 1), p=3)
    assert cyc.to_dense().entry(2, 0) == 1
    inv = perm_action_sparse([3, 1, 2], (2, 1), p=3)
    assert cyc.compose(inv).is_identity()
    with pytest.raises(PreconditionViolated):
        perm_action_sparse([1, 1, 2], (2, 1))


def test_standard_tableaux_order():
    tabs = standard_tableaux((2, 1))
    assert tabs == [((1, 2), (3,)), ((1, 3), (2,))]
    assert len(standard_tableaux((3, 2))) == 5
    assert standard_tableaux((3,)) == [((1, 2, 3),)]


def test_standard_basis_smallest_case():
    basis = standard_basis((2, 1), 3)
    assert basis.dim == 2
    assert basis.tabloid_count == 3
    # e_t = {t} - (column swap), written in the canonical tabloid order
    assert basis.B.tolist() == [[1, 0], [0, 1], [2, 2]]


def test_standard_basis_single_row_and_ranks():
    assert standard_basis((6,), 2).B.tolist() == [[1]]
    for mu, p in [((3, 3, 3), 3), ((4, 2), 3), ((3, 2, 1), 2), ((2, 2, 2), 5)]:
        basis = standard_basis(mu, p)
        assert gfp.rank(basis.B, p) == basis.dim  # re-check the invariant


def test_standard_basis_caps():
    with pytest.raises(TooLarge):
        standard_basis((9, 8), 3)  # dimension 4862


def test_restricted_actions_trivial_modules():
    acts = restricted_actions((9,), 3, 3)
    assert acts.dim == 1
    assert all(not a.any() for a in acts.A)
    acts = restricted_actions((4,), 2, 2)
    assert all(not a.any() for a in acts.A)


def test_restricted_actions_invariants():
    acts = restricted_actions((3, 3, 3), 3, 3)
    assert acts.dim == 42
    assert len(acts.A) == 3
    assert acts.nilpotency_checks()
    acts = restricted_actions((4, 2), 2, 3, use_conjugate=False)
    assert acts.nilpotency_checks()
    acts = restricted_actions((3, 1), 2, 2)
    assert acts.nilpotency_checks()


def test_restricted_actions_preconditions():
    with pytest.raises(PreconditionViolated):
        restricted_actions((4, 3), 2, 3)


def rank_sequence(mats, alphas, p):
    n = sum(a * m for a, m in zip(alphas, mats)) % p
    out = []
    power = n
    for _ in range(p - 1):
        out.append(gfp.rank(power, p))
        power = gfp.mod_matmul(power, n, p)
    return out


@pytest.mark.parametrize("mu,n,p", [((4, 2), 2, 3), ((3, 1), 2, 2),
                                    ((2, 2, 1, 1), 2, 3)])
def test_conjugate_duality_rank_sequences(mu, n, p):
    from spechtvar.partitions import conjugate

    left = restricted_actions(mu, n, p, use_conjugate=False)
    right = restricted_actions(conjugate(mu), n, p, use_conjugate=False)
    assert left.dim == right.dim
    rng = np.random.default_rng(17)
    for _ in range(20):
        alphas = rng.integers(0, p, n)
        if not alphas.any():
            alphas[0] = 1
        assert rank_sequence(left.A, alphas, p) == rank_sequence(right.A, alphas, p)


def test_conjugate_swap_records_flag():
    acts = restricted_actions((2, 2, 1, 1, 1, 1, 1), 3, 3)
    assert acts.conjugated
    assert acts.dim == 27  # dim of the conjugate pair (7,2)


def test_perm_module_fixed_tabloids():
    assert perm_module_actions((9,), 3, 3).fixed_point_count() == 1
    assert perm_module_actions((3, 3, 3), 3, 3).fixed_point_count() == 6
    assert perm_module_actions((6, 3), 3, 3).fixed_point_count() == 3


def test_perm_module_orbits_partition_the_tabloids():
    acts = perm_module_actions((3, 3, 3), 3, 3)
    orbits = acts.orbits()
    sizes = sorted(len(o) for o in orbits)
    assert sum(sizes) == 1680
    assert all(s in (1, 3, 9, 27) for s in sizes)
    seen = np.concatenate(orbits)
    assert len(np.unique(seen)) == 1680


def test_perm_module_sparse_matches_dense():
    acts = perm_module_actions((2, 1), 1, 3)
    sparse = acts.A[0].to_dense()
    pi = acts.perms[0]
    dense = np.zeros((3, 3), dtype=np.int64)
    for j, t in enumerate(pi.tolist()):
        dense[t, j] += 1
        dense[j, j] -= 1
    dense %= 3
    assert np.array_equal(sparse.data[:, :, 0], dense)


def test_perm_module_block_actions_reassemble():
    acts = perm_module_actions((4, 2), 2, 3)
    covered = 0
    for orbit, mats in acts.block_actions():
        covered += len(orbit)
        pos = {int(g): i for i, g in enumerate(orbit)}
        for local, pi in zip(mats, acts.perms):
            expected = np.zeros_like(local)
            for i, g in enumerate(orbit):
                expected[pos[int(pi[g])], i] += 1
                expected[i, i] -= 1
            assert np.array_equal(local, expected % 3)
    assert covered == acts.dim


def test_generator_cycles_shape():
    gens = generator_cycles(9, 3, 3)
    assert len(gens) == 3
    assert gens[0].tolist() == [2, 3, 1, 4, 5, 6, 7, 8, 9]
    assert gens[2].tolist() == [1, 2, 3, 4, 5, 6, 8, 9, 7]
    with pytest.raises(PreconditionViolated):
        generator_cycles(5, 2, 3)


def test_cache_roundtrip(tmp_path, monkeypatch):
    monkeypatch.setenv("SPECHTVAR_CACHE", str(tmp_path))
    first = restricted_actions((4, 2), 2, 3)
    files = list(tmp_path.glob("*.npz"))
    assert len(files) == 1
    second = restricted_actions((4, 2), 2, 3)
    for a, b in zip(first.A, second.A):
        assert np.array_equal(a, b)
