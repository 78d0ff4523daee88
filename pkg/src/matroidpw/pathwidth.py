"""Exact path-width: ordering evaluation, subset dynamic programming, and
the pruned decision procedure used as the black-box oracle by the
self-reduction.

The decision DP constructs prefixes forward over subsets, discarding any
state whose connectivity exceeds the threshold.  It is field-agnostic: all
it needs is a rank oracle, so it works unchanged for linear matroids over
any field and for stacked extension oracles.

For linear matroids the connectivity of a prefix is evaluated through the
dual representation (lambda(X) = r(X) + r*(X) - |X|), which turns the
complement-side rank into a forward span computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .matroid import LinearMatroid, MatroidError, RankOracle, lambda_mask

DEFAULT_GUARD = 24


class GuardExceeded(MatroidError):
    """Ground set too large for the exponential subset DP."""


@dataclass(frozen=True)
class PathDecomposition:
    """An ordering of the ground set with its per-prefix connectivity."""

    order: Tuple
    lambdas: Tuple[int, ...]
    width: int

    def __post_init__(self):
        assert self.width == (max(self.lambdas) if self.lambdas else 0)


def _check_guard(n: int, guard: int) -> None:
    if n > guard:
        raise GuardExceeded(
            f"ground set of size {n} exceeds the subset-DP guard ({guard}); "
            "raise the guard explicitly if you really want this"
        )


# ---------------------------------------------------------------------------
# Connectivity evaluation helpers


def _lambda_fn(m: RankOracle) -> Callable[[int], int]:
    """Return mask -> lambda(mask), choosing the cheapest route."""
    if isinstance(m, LinearMatroid):
        dual = m.dual()
        rfull = m.full_rank()

        def lam(mask: int, _m=m, _d=dual) -> int:
            return _m.rank_mask(mask) + _d.rank_mask(mask) - bin(mask).count("1")

        # sanity: lambda(E) must be 0, i.e. r + r* = n
        assert lam(m.full_mask) == 0
        return lam

    full = m.full_mask

    def lam(mask: int, _m=m) -> int:
        return _m.rank_mask(mask) + _m.rank_mask(full & ~mask) - _m.full_rank()

    return lam


# ---------------------------------------------------------------------------
# Ordering evaluation


def width_of_order(m: RankOracle, order: Sequence) -> Tuple[int, Tuple[int, ...]]:
    """Width and per-prefix lambda list of a permutation of E."""
    if sorted(order) != sorted(m.elems) or len(set(order)) != len(order):
        raise MatroidError("order is not a permutation of the ground set")
    n = len(order)
    if n <= 1:
        return 0, ()
    lam = _lambda_fn(m)
    lambdas = []
    mask = 0
    for e in order[:-1]:
        mask |= 1 << m._pos[e]
        lambdas.append(lam(mask))
    return max(lambdas), tuple(lambdas)


# ---------------------------------------------------------------------------
# Exact DP over subsets


def pathwidth_exact(m: RankOracle, guard: int = DEFAULT_GUARD) -> Tuple[int, PathDecomposition]:
    """Minimum width over all orderings, with a witness, by DP over subsets:
    f(S) = max(lambda(S), min over e in S of f(S \\ e)).

    Witness ties are broken by smallest element id of the last-removed
    element, so results are reproducible.
    """
    n = m.size
    _check_guard(n, guard)
    if n == 0:
        return 0, PathDecomposition((), (), 0)
    lam = _lambda_fn(m)
    size = 1 << n
    f = [0] * size
    choice = [0] * size
    order_by_card = sorted(range(size), key=lambda x: bin(x).count("1"))
    # element positions sorted by id, so min-id tie-break is a plain scan
    pos_by_id = sorted(range(n), key=lambda i: m.elems[i])
    for mask in order_by_card:
        if mask == 0:
            continue
        lv = lam(mask)
        best = None
        best_bit = 0
        for i in pos_by_id:
            bit = 1 << i
            if mask & bit:
                v = f[mask ^ bit]
                if best is None or v < best:
                    best = v
                    best_bit = bit
        f[mask] = max(lv, best)
        choice[mask] = best_bit
    value = f[size - 1]
    order_rev = []
    mask = size - 1
    while mask:
        bit = choice[mask]
        order_rev.append(m.elems[bit.bit_length() - 1])
        mask ^= bit
    order = tuple(reversed(order_rev))
    width, lambdas = width_of_order(m, order)
    assert width == value
    return value, PathDecomposition(order, lambdas, width)


# ---------------------------------------------------------------------------
# Pruned decision DP (the oracle P)


def decide_pw_le(m: RankOracle, t: int, guard: int = DEFAULT_GUARD) -> bool:
    """True iff pw(M) <= t.  Forward construction of prefixes; DP states S
    with lambda(S) > t are discarded."""
    if t < 0:
        raise MatroidError("threshold t must be >= 0")
    n = m.size
    _check_guard(n, guard)
    if n <= 1:
        return True
    lam = _lambda_fn(m)
    full = m.full_mask
    return _prefix_search(m, lam, 0, full, t)


def _prefix_search(m: RankOracle, lam, start_mask: int, full: int, t: int) -> bool:
    n = m.size
    frontier = {start_mask}
    seen = {start_mask}
    while frontier:
        nxt = set()
        for mask in frontier:
            rem = full & ~mask
            while rem:
                bit = rem & -rem
                rem ^= bit
                nm = mask | bit
                if nm in seen:
                    continue
                if nm == full or lam(nm) <= t:
                    if nm == full:
                        return True
                    seen.add(nm)
                    nxt.add(nm)
        frontier = nxt
    return start_mask == full


def decide_prefix_extendable(m: RankOracle, prefix: Sequence, t: int, guard: int = DEFAULT_GUARD) -> bool:
    """True iff some path-decomposition of width <= t starts with exactly
    this prefix (in this order).  Brute-force ground truth for the gadget
    equivalence statement."""
    if t < 0:
        raise MatroidError("threshold t must be >= 0")
    if len(set(prefix)) != len(prefix):
        raise MatroidError("prefix elements must be distinct")
    n = m.size
    _check_guard(n, guard)
    lam = _lambda_fn(m)
    full = m.full_mask
    mask = 0
    for e in prefix:
        mask |= 1 << m._pos[e]
        if mask != full and lam(mask) > t:
            return False
    if mask == full:
        return True
    return _prefix_search(m, lam, mask, full, t)
