"""Abstract matroid extensions as stacked rank-oracle wrappers.

Three elementary operations modify a rank oracle without touching the
underlying matroid:

* coloop:          r(X u {a}) = r(X) + 1
* free-in-closure: r(X u {b}) = r(X), if X spans Z, else r(X) + 1
* free-in-guts:    r(X u {c}) = r(X), if the guts of (Z, E \\ Z) adjoined
                   with X has rank r(X), else r(X) + 1; elements of the
                   duplicated set D_dup are counted on both sides of the
                   separation.

Each wrapper is itself a RankOracle, so wrappers stack; restriction views
delete elements without re-indexing the stack.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Tuple

from .matroid import MatroidError, RankOracle

KIND_COLOOP = "coloop"
KIND_CLOSURE = "free-in-closure"
KIND_GUTS = "free-in-guts"


class StackedOracle(RankOracle):
    """One extension layer over a base oracle; stacks by composition."""

    def __init__(self, base: RankOracle, kind: str, new_id, z: Iterable = (), d_dup: Iterable = ()):
        if new_id in base._pos:
            raise MatroidError(f"element id {new_id!r} already in ground set")
        super().__init__(base.elems + (new_id,))
        self.base = base
        self.kind = kind
        self.new_id = new_id
        self.z = frozenset(z)
        self.d_dup = frozenset(d_dup)
        self._base_full = base.full_mask
        self._new_bit = 1 << len(base.elems)
        if kind in (KIND_CLOSURE, KIND_GUTS):
            self._zmask = base.mask_of(self.z)
        else:
            self._zmask = 0
        if kind == KIND_GUTS:
            self._dmask = base.mask_of(self.d_dup)
            self._cozmask = (self._base_full & ~self._zmask) | self._dmask
            self._zdmask = self._zmask | self._dmask
        else:
            self._dmask = 0

    def layers(self) -> List["StackedOracle"]:
        out: List[StackedOracle] = []
        cur: RankOracle = self
        while isinstance(cur, StackedOracle):
            out.append(cur)
            cur = cur.base
        out.reverse()
        return out

    def _rank_mask(self, mask: int) -> int:
        base = self.base
        bm = mask & self._base_full
        if not mask & self._new_bit:
            return base.rank_mask(bm)
        rx = base.rank_mask(bm)
        if self.kind == KIND_COLOOP:
            return rx + 1
        if self.kind == KIND_CLOSURE:
            if base.rank_mask(bm | self._zmask) == rx:
                return rx
            return rx + 1
        # free-in-guts, with D_dup counted on both sides
        mu_val = (
            base.rank_mask(bm | self._zdmask)
            + base.rank_mask(bm | self._cozmask)
            - base.full_rank()
        )
        if mu_val == rx:
            return rx
        return rx + 1


class RestrictionOracle(RankOracle):
    """Deletion view: rank queries forwarded unchanged on kept subsets."""

    def __init__(self, parent: RankOracle, keep: Iterable):
        keep = frozenset(keep)
        unknown = keep - set(parent.elems)
        if unknown:
            raise MatroidError(f"elements {sorted(unknown)!r} not in ground set")
        elems = tuple(e for e in parent.elems if e in keep)
        super().__init__(elems)
        self.parent = parent
        self._bitmap = [1 << parent._pos[e] for e in elems]

    def _rank_mask(self, mask: int) -> int:
        pm = 0
        i = 0
        while mask:
            if mask & 1:
                pm |= self._bitmap[i]
            mask >>= 1
            i += 1
        return self.parent.rank_mask(pm)


def add_coloop(m: RankOracle, a) -> StackedOracle:
    return StackedOracle(m, KIND_COLOOP, a)


def add_free_in_closure(m: RankOracle, z: Iterable, b) -> StackedOracle:
    z = frozenset(z)
    if not z <= m.ground_set:
        raise MatroidError("Z is not a subset of the ground set")
    return StackedOracle(m, KIND_CLOSURE, b, z=z)


def add_free_in_guts(m: RankOracle, z: Iterable, d_dup: Iterable, c) -> StackedOracle:
    z = frozenset(z)
    d_dup = frozenset(d_dup)
    if not z <= m.ground_set or not d_dup <= m.ground_set:
        raise MatroidError("Z / D_dup not subsets of the ground set")
    return StackedOracle(m, KIND_GUTS, c, z=z, d_dup=d_dup)


def restrict(m: RankOracle, keep: Iterable) -> RestrictionOracle:
    return RestrictionOracle(m, keep)
