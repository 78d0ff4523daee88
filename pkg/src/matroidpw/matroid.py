"""Matroids as rank oracles.

Everything downstream (connectivity, closure, circuits, components, minors,
the decomposition algorithms) is computed strictly through rank queries, so
linear matroids, minors and stacked extension oracles all share one code
path.

Internally a subset of the ground set is a bitmask over ``oracle.elems``
(construction order); the public API works with element-id collections.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .fields import FieldSpec
from .linalg import MatrixOverField, SubspaceBasis, extend_basis, rref_rows


class MatroidError(ValueError):
    pass


class NoCircuitError(MatroidError):
    """Raised when a circuit is requested inside an independent set."""


# ---------------------------------------------------------------------------
# RankOracle base


class RankOracle:
    """Ground set + total rank function, with per-oracle memoization.

    The query counter counts distinct logical queries (memo misses), so the
    rank-query accounting of the self-reduction is measured at the algorithm
    layer, not the cache layer.
    """

    def __init__(self, elems: Sequence):
        self.elems = tuple(elems)
        if len(set(self.elems)) != len(self.elems):
            raise MatroidError("duplicate element ids in ground set")
        self._pos = {e: i for i, e in enumerate(self.elems)}
        self._memo: Dict[int, int] = {}
        self.query_count = 0
        self.full_mask = (1 << len(self.elems)) - 1

    # -- subset <-> mask ----------------------------------------------------

    @property
    def ground_set(self) -> FrozenSet:
        return frozenset(self.elems)

    @property
    def size(self) -> int:
        return len(self.elems)

    def mask_of(self, subset: Iterable) -> int:
        m = 0
        pos = self._pos
        for e in subset:
            try:
                m |= 1 << pos[e]
            except KeyError:
                raise MatroidError(f"element {e!r} not in ground set") from None
        return m

    def subset_of(self, mask: int) -> FrozenSet:
        return frozenset(self.elems[i] for i in range(len(self.elems)) if (mask >> i) & 1)

    # -- rank ---------------------------------------------------------------

    def rank(self, subset: Iterable) -> int:
        return self.rank_mask(self.mask_of(subset))

    def rank_mask(self, mask: int) -> int:
        r = self._memo.get(mask)
        if r is None:
            self.query_count += 1
            r = self._rank_mask(mask)
            self._memo[mask] = r
        return r

    def _rank_mask(self, mask: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def full_rank(self) -> int:
        return self.rank_mask(self.full_mask)


# ---------------------------------------------------------------------------
# Concrete oracles


class LinearMatroid(RankOracle):
    """Column matroid of a MatrixOverField; rank = linear rank."""

    def __init__(self, matrix: MatrixOverField):
        super().__init__(matrix.labels)
        self.matrix = matrix
        ops = matrix.ops
        self._cols = [matrix.columns[lab] for lab in matrix.labels]
        # interned reduced-echelon spans: span id -> basis tuple
        self._spans: List[Tuple] = [()]
        self._span_index: Dict[Tuple, int] = {(): 0}
        self._ext: Dict[Tuple[int, int], int] = {}
        self._dual: Optional["LinearMatroid"] = None

    def _extend_span(self, span_id: int, col_idx: int) -> int:
        key = (span_id, col_idx)
        out = self._ext.get(key)
        if out is None:
            basis, _ = extend_basis(self.matrix.ops, self._spans[span_id], self._cols[col_idx])
            out = self._span_index.get(basis)
            if out is None:
                out = len(self._spans)
                self._spans.append(basis)
                self._span_index[basis] = out
            self._ext[key] = out
        return out

    def span_id_of_mask(self, mask: int) -> int:
        sid = 0
        i = 0
        while mask:
            if mask & 1:
                sid = self._extend_span(sid, i)
            mask >>= 1
            i += 1
        return sid

    def span_dim(self, span_id: int) -> int:
        return len(self._spans[span_id])

    def _rank_mask(self, mask: int) -> int:
        return len(self._spans[self.span_id_of_mask(mask)])

    def span_subspace(self, subset: Iterable) -> SubspaceBasis:
        return self.matrix.span_basis(subset)

    def dual(self) -> "LinearMatroid":
        """Dual matroid, represented over the same field.

        With the matrix row-reduced to [I | B] (up to column order), the dual
        is [-B^T | I]; used to turn complement-side ranks into forward span
        computations.
        """
        if self._dual is None:
            ops = self.matrix.ops
            n = len(self._cols)
            rows = [[col[i] for col in self._cols] for i in range(self.matrix.nrows)]
            rref, pivots = rref_rows(ops, rows)
            r = len(pivots)
            free = [j for j in range(n) if j not in set(pivots)]
            dual_dim = n - r
            cols: Dict[object, Tuple[int, ...]] = {}
            for fi, j in enumerate(free):
                unit = [ops.zero] * dual_dim
                unit[fi] = ops.one
                cols[self.elems[j]] = tuple(unit)
            for pi, j in enumerate(pivots):
                col = [ops.neg(rref[pi][fj]) for fj in free]
                cols[self.elems[j]] = tuple(col)
            m = MatrixOverField(self.matrix.field, cols, dual_dim, self.elems)
            self._dual = LinearMatroid(m)
        return self._dual


class UniformOracle(RankOracle):
    """U_{r,n}: every r-subset is a basis."""

    def __init__(self, r: int, n: int, elems: Optional[Sequence] = None):
        if elems is None:
            elems = range(1, n + 1)
        super().__init__(elems)
        if not 0 <= r <= n:
            raise MatroidError("uniform matroid needs 0 <= r <= n")
        self.r = r

    def _rank_mask(self, mask: int) -> int:
        return min(bin(mask).count("1"), self.r)


class FunctionOracle(RankOracle):
    """Wrap an arbitrary rank function over subsets (spot-checked only)."""

    def __init__(self, elems: Sequence, fn):
        super().__init__(elems)
        self._fn = fn

    def _rank_mask(self, mask: int) -> int:
        return self._fn(self.subset_of(mask))


class MinorOracle(RankOracle):
    """M / contract \\ delete via the contraction rank formula."""

    def __init__(self, parent: RankOracle, delete: Iterable, contract: Iterable):
        delete = frozenset(delete)
        contract = frozenset(contract)
        if delete & contract:
            raise MatroidError("delete and contract sets overlap")
        keep = [e for e in parent.elems if e not in delete and e not in contract]
        super().__init__(keep)
        self.parent = parent
        self._cmask = parent.mask_of(contract)
        self._bitmap = [1 << parent._pos[e] for e in keep]
        self._base = parent.rank_mask(self._cmask)

    def _rank_mask(self, mask: int) -> int:
        pm = self._cmask
        i = 0
        while mask:
            if mask & 1:
                pm |= self._bitmap[i]
            mask >>= 1
            i += 1
        return self.parent.rank_mask(pm) - self._base


def minor(m: RankOracle, delete: Iterable = (), contract: Iterable = ()) -> RankOracle:
    return MinorOracle(m, delete, contract)


# ---------------------------------------------------------------------------
# Derived quantities


def lambda_(m: RankOracle, x: Iterable) -> int:
    """Connectivity lambda(X) = r(X) + r(E \\ X) - r(E)."""
    xm = m.mask_of(x)
    return lambda_mask(m, xm)


def lambda_mask(m: RankOracle, xm: int) -> int:
    return m.rank_mask(xm) + m.rank_mask(m.full_mask & ~xm) - m.full_rank()


def mu(m: RankOracle, x: Iterable, a: Iterable) -> int:
    """mu(X, A) = r(X u A) + r((E \\ X) u A) - r(E)."""
    xm = m.mask_of(x)
    am = m.mask_of(a)
    return m.rank_mask(xm | am) + m.rank_mask((m.full_mask & ~xm) | am) - m.full_rank()


def closure(m: RankOracle, x: Iterable) -> FrozenSet:
    xm = m.mask_of(x)
    rx = m.rank_mask(xm)
    out = []
    for i, e in enumerate(m.elems):
        bit = 1 << i
        if xm & bit or m.rank_mask(xm | bit) == rx:
            out.append(e)
    return frozenset(out)


def is_independent(m: RankOracle, x: Iterable) -> bool:
    xm = m.mask_of(x)
    return m.rank_mask(xm) == bin(xm).count("1")


def find_circuit(m: RankOracle, x: Iterable) -> FrozenSet:
    """A minimal dependent subset of X; error if X is independent."""
    xs = sorted(x)
    xm = m.mask_of(xs)
    if m.rank_mask(xm) == bin(xm).count("1"):
        raise NoCircuitError("set is independent, no circuit")
    cur = xm
    for e in xs:
        bit = 1 << m._pos[e]
        if not cur & bit:
            continue
        without = cur & ~bit
        if m.rank_mask(without) < bin(without).count("1"):
            cur = without
    return m.subset_of(cur)


def circuits(m: RankOracle, max_size: Optional[int] = None) -> List[FrozenSet]:
    """All circuits, by exhaustive subset enumeration (desk scale)."""
    n = m.size
    out = []
    limit = max_size if max_size is not None else n
    for mask in range(1, 1 << n):
        k = bin(mask).count("1")
        if k > limit:
            continue
        if m.rank_mask(mask) != k - 1:
            continue
        ok = True
        mm = mask
        while mm:
            bit = mm & -mm
            sub = mask & ~bit
            if m.rank_mask(sub) < bin(sub).count("1"):
                ok = False
                break
            mm ^= bit
        if ok:
            out.append(m.subset_of(mask))
    return out


def greedy_basis(m: RankOracle) -> FrozenSet:
    cur = 0
    r = 0
    for e in sorted(m.elems):
        bit = 1 << m._pos[e]
        nr = m.rank_mask(cur | bit)
        if nr > r:
            cur |= bit
            r = nr
    return m.subset_of(cur)


def fundamental_circuit(m: RankOracle, f, basis: Iterable) -> FrozenSet:
    """The unique circuit inside basis u {f}."""
    bset = frozenset(basis)
    if f in bset:
        raise MatroidError("element already belongs to the basis")
    bm = m.mask_of(bset)
    rb = m.rank_mask(bm)
    if rb != bin(bm).count("1") or rb != m.full_rank():
        raise MatroidError("given set is not a basis")
    fbit = 1 << m._pos[f]
    if m.rank_mask(bm | fbit) != rb:
        raise MatroidError("element is not spanned by the basis")
    members = [f]
    for b in bset:
        bb = 1 << m._pos[b]
        if m.rank_mask((bm & ~bb) | fbit) == rb:
            members.append(b)
    return frozenset(members)


def components(m: RankOracle) -> List[FrozenSet]:
    """Connected components (maximal parts not split by a lambda = 0
    separation), via the fundamental-circuit graph of one greedy basis.

    Needs only O(n^2) rank queries; cross-checked against brute force in the
    test suite.
    """
    parent = {e: e for e in m.elems}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    basis = greedy_basis(m)
    for f in m.elems:
        if f in basis:
            continue
        if m.rank_mask(1 << m._pos[f]) == 0:
            continue  # loops are singleton components
        circ = fundamental_circuit(m, f, basis)
        for b in circ:
            if b != f:
                union(f, b)
    groups: Dict[object, List] = {}
    for e in m.elems:
        groups.setdefault(find(e), []).append(e)
    out = [frozenset(g) for g in groups.values()]
    out.sort(key=lambda s: min(s))
    return out


def components_bruteforce(m: RankOracle) -> List[FrozenSet]:
    """Reference partition: atoms of the intersection closure of lambda-0
    sets.  Exponential; test use only."""
    n = m.size
    zero_sets = [mask for mask in range(1, 1 << n) if lambda_mask(m, mask) == 0]
    parts: List[int] = []
    remaining = m.full_mask
    while remaining:
        bit = remaining & -remaining
        atom = remaining
        for z in zero_sets:
            if z & bit:
                atom &= z
        parts.append(atom)
        remaining &= ~atom
    out = [m.subset_of(p) for p in parts]
    out.sort(key=lambda s: min(s))
    return out


# ---------------------------------------------------------------------------
# Separations


@dataclass(frozen=True)
class Separation:
    x: FrozenSet
    y: FrozenSet
    value: int
    guts: Optional[SubspaceBasis] = None


def separation(m: RankOracle, x: Iterable) -> Separation:
    xs = frozenset(x)
    ys = m.ground_set - xs
    guts = None
    if isinstance(m, LinearMatroid):
        from .linalg import subspace_intersection

        guts = subspace_intersection(m.span_subspace(xs), m.span_subspace(ys))
    return Separation(xs, ys, lambda_(m, xs), guts)


# ---------------------------------------------------------------------------
# Rank-function sanity spot checks


def spot_check_matroid(m: RankOracle, samples: int = 1000, seed: int = 0) -> None:
    """Raise MatroidError on any monotonicity / unit-increase / submodularity
    / lambda-symmetry violation over random subset samples."""
    rng = random.Random(seed)
    n = m.size
    if m.rank_mask(0) != 0:
        raise MatroidError("r(empty) != 0")
    if n == 0:
        return
    full = m.full_mask
    for _ in range(samples):
        x = rng.getrandbits(n)
        y = rng.getrandbits(n)
        rx, ry = m.rank_mask(x), m.rank_mask(y)
        if m.rank_mask(x | y) + m.rank_mask(x & y) > rx + ry:
            raise MatroidError("submodularity violated")
        if m.rank_mask(x | y) < max(rx, ry):
            raise MatroidError("monotonicity violated")
        i = rng.randrange(n)
        xe = x | (1 << i)
        if not rx <= m.rank_mask(xe) <= rx + 1:
            raise MatroidError("unit-increase violated")
        if lambda_mask(m, x) != lambda_mask(m, full & ~x):
            raise MatroidError("lambda symmetry violated")
    if lambda_mask(m, 0) != 0 or lambda_mask(m, full) != 0:
        raise MatroidError("lambda(empty)/lambda(E) nonzero")
