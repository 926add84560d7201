"""Jordan types of the nilpotent operators N = sum alpha_i A_i.

A point alpha with coordinates in GF(p^k) is handled over GF(p) through
the companion blowup kron(A_i, mul_matrix(alpha_i)); ranks over the
extension are blowup ranks divided by k.  The Jordan type is recovered
from the rank vector (r_0, ..., r_p) by the second difference
b_s = r_{s-1} - 2 r_s + r_{s+1}.

Generic types come in two modes: randomized sampling over GF(p^8) with
entrywise-max certification (retried over GF(p^12)), and exact
fraction-free elimination over the rational function field for small
dimensions.  Permutation modules decompose into orbit blocks first; rank
vectors add over blocks, and identical blocks are computed once.
"""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass

import numpy as np

from . import gfp, symrank
from .errors import (ArityMismatch, CertificationFailed, RankCheckFailed,
                     ZeroPoint)
from .ffalg import FieldCtx, FieldElement
from .partitions import format_partition
from .spechtmod import PermutationActions, RestrictedActions


@dataclass(frozen=True)
class RankVector:
    """Ranks (r_0, ..., r_p) of N^0..N^p at some point."""

    p: int
    ranks: tuple[int, ...]

    def __post_init__(self):
        r = self.ranks
        if len(r) != self.p + 1 or r[-1] != 0:
            raise RankCheckFailed(f"rank vector {r} has wrong shape for p={self.p}")
        diffs = [r[i] - r[i + 1] for i in range(self.p)]
        if any(d < 0 for d in diffs) or any(diffs[i] < diffs[i + 1]
                                            for i in range(self.p - 1)):
            raise RankCheckFailed(f"rank vector {r} is not decreasing and convex")

    @property
    def dim(self) -> int:
        return self.ranks[0]

    def dominates(self, other: "RankVector") -> bool:
        return all(a >= b for a, b in zip(self.ranks, other.ranks))


@dataclass(frozen=True)
class JordanType:
    """Block counts (b_1, ..., b_p); b_s Jordan blocks of size s."""

    p: int
    blocks: tuple[int, ...]

    @classmethod
    def from_rank_vector(cls, rv: RankVector) -> "JordanType":
        r = rv.ranks + (0,)  # pad r_{p+1} = 0
        blocks = tuple(r[s - 1] - 2 * r[s] + r[s + 1] for s in range(1, rv.p + 1))
        assert all(b >= 0 for b in blocks)
        return cls(p=rv.p, blocks=blocks)

    @property
    def dim(self) -> int:
        return sum(s * b for s, b in enumerate(self.blocks, start=1))

    def n(self, i: int) -> int:
        """Number of blocks of size i."""
        return self.blocks[i - 1]

    def pretty(self) -> str:
        bits = []
        for s in range(self.p, 0, -1):
            b = self.blocks[s - 1]
            if b == 1:
                bits.append(str(s))
            elif b > 1:
                bits.append(f"{s}^{b}")
        return "(" + ",".join(bits) + ")"


def stable_type(t: JordanType) -> JordanType:
    """Type with projective (size-p) blocks removed."""
    return JordanType(p=t.p, blocks=t.blocks[:-1] + (0,))


def complementary_check(t1: JordanType, t2: JordanType, p: int) -> bool:
    """n_{t1}(i) = n_{t2}(p - i) for all 1 <= i <= p-1."""
    return all(t1.n(i) == t2.n(p - i) for i in range(1, p))


# ---------------------------------------------------------------------------
# pointwise evaluation


def _coerce_point(alpha, n: int, p: int) -> tuple[list, int]:
    """Normalize a point to a list of coordinates plus extension degree."""
    alpha = list(alpha)
    if len(alpha) != n:
        raise ArityMismatch(f"point has {len(alpha)} coordinates, need {n}")
    if any(isinstance(a, FieldElement) for a in alpha):
        ctx = next(a.ctx for a in alpha if isinstance(a, FieldElement))
        if ctx.p != p:
            raise ArityMismatch(f"point has characteristic {ctx.p}, module has {p}")
        alpha = [ctx.element(a) for a in alpha]
        if not any(alpha):
            raise ZeroPoint("alpha = 0 has no Jordan type")
        if ctx.k == 1:
            return [a.coeffs[0] for a in alpha], 1
        return alpha, ctx.k
    alpha = [int(a) % p for a in alpha]
    if not any(alpha):
        raise ZeroPoint("alpha = 0 has no Jordan type")
    return alpha, 1


def _point_operator(mats: list[np.ndarray], alpha, p: int) -> tuple[np.ndarray, int]:
    """Blown-up GF(p) matrix of N = sum alpha_i A_i, plus the degree k."""
    coords, k = _coerce_point(alpha, len(mats), p)
    d = mats[0].shape[0]
    if k == 1:
        out = np.zeros((d, d), dtype=np.int64)
        for a, m in zip(coords, mats):
            if a:
                out += a * m
        return out % p, 1
    ctx = coords[0].ctx
    out = np.zeros((d * k, d * k), dtype=np.int64)
    for a, m in zip(coords, mats):
        if a:
            out += np.kron(m, ctx.mul_matrix(a))
    return out % p, k


def _rank_vector_of_operator(op: np.ndarray, k: int, p: int) -> RankVector:
    d = op.shape[0] // k
    ranks = [d]
    power = op
    for _ in range(1, p):
        r = gfp.rank(power, p)
        assert r % k == 0
        ranks.append(r // k)
        power = gfp.mod_matmul(power, op, p)
    ranks.append(0)
    return RankVector(p, tuple(ranks))


def rank_vector_at(acts, alpha) -> RankVector:
    """Rank vector of N at one point; permutation modules add over orbits."""
    p = acts.p
    if isinstance(acts, PermutationActions):
        total = np.zeros(p + 1, dtype=np.int64)
        for mats, mult in _distinct_blocks(acts):
            op, k = _point_operator(mats, alpha, p)
            rv = _rank_vector_of_operator(op, k, p)
            total += mult * np.array(rv.ranks)
        return RankVector(p, tuple(int(x) for x in total))
    op, k = _point_operator(acts.A, alpha, p)
    return _rank_vector_of_operator(op, k, p)


def jordan_at_point(acts, alpha) -> JordanType:
    return JordanType.from_rank_vector(rank_vector_at(acts, alpha))


def is_free_at(acts, alpha) -> bool:
    """True iff the restriction along u_alpha is free: rank(N^(p-1)) = d/p."""
    p, d = acts.p, acts.dim
    if d % p:
        warnings.warn(f"dim {d} not divisible by {p}; module cannot be free",
                      RuntimeWarning, stacklevel=2)
        return False
    if isinstance(acts, PermutationActions):
        return rank_vector_at(acts, alpha).ranks[p - 1] == d // p
    op, k = _point_operator(acts.A, alpha, p)
    power = op
    for _ in range(p - 2):
        power = gfp.mod_matmul(power, op, p)
    target = k * (d // p)
    return gfp.rank(power, p, stop_at=target) == target


# ---------------------------------------------------------------------------
# generic type


@dataclass(frozen=True)
class GenericTypeReport:
    type: JordanType
    mode: str  # "randomized" or "exact"
    samples: int
    field: FieldCtx | None
    certified_by_single_sample: bool
    rank_vector: RankVector


def _distinct_blocks(acts: PermutationActions):
    """Orbit blocks grouped by identical matrices: (mats, multiplicity)."""
    groups: dict[bytes, tuple[list[np.ndarray], int]] = {}
    for _, mats in acts.block_actions():
        key = b"|".join(m.tobytes() + str(m.shape[0]).encode() for m in mats)
        if key in groups:
            groups[key] = (groups[key][0], groups[key][1] + 1)
        else:
            groups[key] = (mats, 1)
    return list(groups.values())


def _derive_rng(acts, seed: int) -> np.random.Generator:
    text = f"{format_partition(acts.mu)}|p={acts.p}|n={acts.n}|seed={seed}"
    digest = hashlib.sha256(text.encode()).digest()
    return np.random.default_rng(int.from_bytes(digest[:8], "big"))


def _exact_rank_vector(acts) -> RankVector:
    p = acts.p
    if isinstance(acts, PermutationActions):
        total = np.zeros(p + 1, dtype=np.int64)
        for mats, mult in _distinct_blocks(acts):
            ranks = symrank.generic_power_ranks(mats, p, p - 1)
            local = [mats[0].shape[0]] + ranks + [0]
            total += mult * np.array(local)
        return RankVector(p, tuple(int(x) for x in total))
    ranks = symrank.generic_power_ranks(acts.A, p, p - 1)
    return RankVector(p, tuple([acts.dim] + ranks + [0]))


def generic_type(acts, mode: str = "randomized", seed: int = 0,
                 samples: int = 5) -> GenericTypeReport:
    """Generic Jordan type of the restricted module.

    Randomized mode samples nonzero points of GF(p^8)^n, takes the
    entrywise max of the rank vectors, and certifies only if one sample
    attains the max everywhere (retrying over GF(p^12)).
    """
    p = acts.p
    if mode == "exact":
        rv = _exact_rank_vector(acts)
        return GenericTypeReport(type=JordanType.from_rank_vector(rv),
                                 mode="exact", samples=0, field=None,
                                 certified_by_single_sample=True,
                                 rank_vector=rv)
    if mode not in ("randomized", "random"):
        raise ArityMismatch(f"unknown mode {mode!r}")
    samples = max(1, int(samples))
    rng = _derive_rng(acts, seed)
    seen: list[RankVector] = []
    for k in (8, 12):
        ctx = FieldCtx.get(p, k)
        for _ in range(samples):
            point = ctx.random_point(rng, acts.n)
            seen.append(rank_vector_at(acts, point))
        # The entrywise max of convex vectors need not be convex, so take
        # the max on raw tuples and look for a sample that attains it.
        best = tuple(max(rv.ranks[i] for rv in seen) for i in range(p + 1))
        winner = next((rv for rv in seen if rv.ranks == best), None)
        if winner is not None:
            return GenericTypeReport(type=JordanType.from_rank_vector(winner),
                                     mode="randomized", samples=len(seen),
                                     field=ctx,
                                     certified_by_single_sample=True,
                                     rank_vector=winner)
    raise CertificationFailed(
        f"no single sample attained the entrywise max for "
        f"{format_partition(acts.mu)} after {len(seen)} samples")


def generically_free(acts, **kwargs) -> bool:
    report = generic_type(acts, **kwargs)
    blocks = report.type.blocks
    return all(b == 0 for b in blocks[:-1])
