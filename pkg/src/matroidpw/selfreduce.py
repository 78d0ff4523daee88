"""Optimal path-decomposition by self-reduction.

Given a decision procedure for "path-width <= t", an optimal decomposition
is constructed greedily: a prefix X is extended one element at a time, and
each candidate extension X + f is certified by building a gadget matroid M'
on (E \\ X_f) plus a guts-filling point set, then asking the decision
procedure whether pw(M') <= t.  The gadget exists in two flavours:

* linear: for represented matroids.  The guts of (X_f, E \\ X_f) is padded
  to a rank-t subspace Sigma using fresh zero coordinates, all projective
  points P of Sigma over the base field are added, and a chain of t free
  extensions d_1..d_t of P + d_0 is represented over an iterated extension
  tower (one root of degree t+1 adjoined per step).

* abstract: for rank oracles.  The same point sets are emulated with the
  coloop / free-in-closure / free-in-guts wrappers of
  :mod:`matroidpw.extensions`.

Both make at most n^2 decision-oracle calls per connected component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .extensions import RestrictionOracle, add_coloop, add_free_in_closure, add_free_in_guts, restrict
from .fields import FieldSpec, embed_data, find_irreducible, get_ops, mul_data
from .linalg import (
    MatrixOverField,
    SubspaceBasis,
    extend_ambient,
    span_of_handles,
    projective_points,
    subspace_intersection,
)
from .matroid import LinearMatroid, MatroidError, RankOracle, components, lambda_
from .pathwidth import DEFAULT_GUARD, PathDecomposition, decide_pw_le, pathwidth_exact, width_of_order


class SelfReduceError(MatroidError):
    pass


DecisionOracle = Callable[[RankOracle], bool]


# ---------------------------------------------------------------------------
# Traces


@dataclass
class IterationRecord:
    index: int
    tried: List[Tuple[object, int, Optional[bool]]] = field(default_factory=list)
    chosen: object = None


@dataclass
class SelfReduceTrace:
    variant: str
    n: int
    iterations: List[IterationRecord] = field(default_factory=list)
    oracle_calls: int = 0
    rank_queries: int = 0

    def merge(self, other: "SelfReduceTrace") -> None:
        self.iterations.extend(other.iterations)
        self.oracle_calls += other.oracle_calls
        self.rank_queries += other.rank_queries


# ---------------------------------------------------------------------------
# Linear gadget


@dataclass
class GadgetLinear:
    prefix: Tuple
    t: int
    k: int
    gamma: SubspaceBasis
    sigma: SubspaceBasis
    d0_vector: Tuple[int, ...]
    p_ids: Tuple[int, ...]
    d0_set_ids: Tuple[int, ...]
    fieldspec: FieldSpec
    matroid: LinearMatroid


_FIELD_CACHE: Dict[Tuple[FieldSpec, int], Tuple[FieldSpec, List[List[object]]]] = {}


def _gadget_field(base: FieldSpec, t: int) -> Tuple[FieldSpec, List[List[object]]]:
    """The extension tower F' for (F, t) and the coordinate vectors
    (1, a_j, ..., a_j^t) of the free-extension elements; computed once per
    (F, t) and then only linearly transformed onto the current Sigma."""
    key = (base, t)
    cached = _FIELD_CACHE.get(key)
    if cached is not None:
        return cached
    spec = base
    alphas = []
    for _ in range(t):
        poly = find_irreducible(spec, t + 1)
        lower = spec
        spec = spec.extend(tuple(c.data for c in poly))
        # the adjoined root is the class of x in the new top level
        x = (lower.zero_data(), lower.one_data()) + (lower.zero_data(),) * (t + 1 - 2)
        alphas.append((spec, x))
    fprime = spec
    powers: List[List[object]] = []
    for level_spec, x in alphas:
        a = embed_data(x, level_spec, fprime)
        row = [fprime.one_data()]
        for _ in range(t):
            row.append(mul_data(fprime, row[-1], a))
        powers.append(row)
    _FIELD_CACHE[key] = (fprime, powers)
    return fprime, powers


def gadget_element_ids(n_points: int, t: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Reserved negative ids: P gets -101, -102, ...; D_0 gets -201, ..."""
    p_ids = tuple(-(101 + i) for i in range(n_points))
    d_ids = tuple(-(201 + j) for j in range(t + 1))
    return p_ids, d_ids


def build_gadget_linear(m: LinearMatroid, x_f: Sequence, t: int) -> GadgetLinear:
    """Steps: guts Gamma, rank-t superspace Sigma from fresh coordinates,
    projective point set P of Sigma, then the free-extension chain D_0 over
    the iterated extension tower; M' lives on (E \\ X_f) u P u D_0."""
    mat = m.matrix
    f_base = mat.field
    ops = mat.ops
    dim = mat.nrows
    x_seq = tuple(x_f)
    x_set = frozenset(x_seq)
    if not x_set <= m.ground_set:
        raise SelfReduceError("prefix contains unknown elements")
    # the caller must have padded the matrix with t+1 fresh zero rows
    for lab in m.elems:
        col = mat.columns[lab]
        if any(h != ops.zero for h in col[dim - (t + 1) :]):
            raise SelfReduceError("matrix is not padded with t+1 zero rows")
    k = lambda_(m, x_set)
    if k > t:
        raise SelfReduceError(f"lambda(prefix) = {k} exceeds t = {t}")
    rest = [e for e in m.elems if e not in x_set]
    gamma = subspace_intersection(m.span_subspace(x_seq), m.span_subspace(rest))
    if gamma.rank != k:
        raise SelfReduceError("guts rank does not match lambda")  # pragma: no cover

    def fresh_unit(j: int) -> Tuple[int, ...]:
        v = [ops.zero] * dim
        v[dim - (t + 1) + j] = ops.one
        return tuple(v)

    sigma_vecs = list(gamma.vectors) + [fresh_unit(j) for j in range(t - k)]
    sigma = span_of_handles(f_base, sigma_vecs, dim)
    if sigma.rank != t:
        raise SelfReduceError("Sigma rank is not t")  # pragma: no cover
    d0_vec = fresh_unit(t - k)
    points = projective_points(sigma)

    fprime, powers = _gadget_field(f_base, t)
    fops = get_ops(fprime)

    def lift(col: Sequence[int]) -> Tuple[int, ...]:
        return tuple(fops.encode(embed_data(ops.decode(h), f_base, fprime)) for h in col)

    p_ids, d_ids = gadget_element_ids(len(points), t)
    cols: Dict[object, Tuple[int, ...]] = {}
    labels: List[object] = []
    for e in rest:
        cols[e] = lift(mat.columns[e])
        labels.append(e)
    for pid, pt in zip(p_ids, points):
        cols[pid] = lift(pt)
        labels.append(pid)
    b_vectors = [lift(v) for v in sigma.vectors] + [lift(d0_vec)]
    cols[d_ids[0]] = b_vectors[-1]
    labels.append(d_ids[0])
    for j in range(1, t + 1):
        coeffs = [fops.encode(c) for c in powers[j - 1]]
        vec = [fops.zero] * dim
        for c, bv in zip(coeffs, b_vectors):
            if c != fops.zero:
                for i in range(dim):
                    vec[i] = fops.add(vec[i], fops.mul(c, bv[i]))
        cols[d_ids[j]] = tuple(vec)
        labels.append(d_ids[j])
    mprime = LinearMatroid(MatrixOverField(fprime, cols, dim, labels))
    return GadgetLinear(
        prefix=x_seq,
        t=t,
        k=k,
        gamma=gamma,
        sigma=sigma,
        d0_vector=d0_vec,
        p_ids=p_ids,
        d0_set_ids=d_ids,
        fieldspec=fprime,
        matroid=mprime,
    )


# ---------------------------------------------------------------------------
# Abstract gadget


@dataclass
class GadgetAbstract:
    prefix: Tuple
    t: int
    k: int
    p0_ids: Tuple[int, ...]
    guts_ids: Tuple[int, ...]
    p_ids: Tuple[int, ...]
    d0_set_ids: Tuple[int, ...]
    matroid: RestrictionOracle


def build_gadget_abstract(m: RankOracle, x_f: Sequence, t: int) -> GadgetAbstract:
    """Emulate the gadget with rank-oracle wrappers: t - k coloops P_0,
    then t + k elements placed freely into the guts of (X_f u P_0, rest)
    with P_0 and previously placed elements duplicated on both sides, then
    a coloop d_0 and t elements placed freely into the closure of
    P u {d_0}; finally restrict to (E \\ X_f) u P u D_0."""
    x_seq = tuple(x_f)
    x_set = frozenset(x_seq)
    if not x_set <= m.ground_set:
        raise SelfReduceError("prefix contains unknown elements")
    k = lambda_(m, x_set)
    if k > t:
        raise SelfReduceError(f"lambda(prefix) = {k} exceeds t = {t}")
    p_ids, d_ids = gadget_element_ids(2 * t, t)
    cur: RankOracle = m
    p0 = list(p_ids[: t - k])
    for a in p0:
        cur = add_coloop(cur, a)
    z = x_set | set(p0)
    placed: List[int] = []
    for c in p_ids[t - k :]:
        cur = add_free_in_guts(cur, z, set(p0) | set(placed), c)
        placed.append(c)
    cur = add_coloop(cur, d_ids[0])
    closure_target = set(p_ids) | {d_ids[0]}
    for b in d_ids[1:]:
        cur = add_free_in_closure(cur, closure_target, b)
    keep = (m.ground_set - x_set) | set(p_ids) | set(d_ids)
    mprime = restrict(cur, keep)
    return GadgetAbstract(
        prefix=x_seq,
        t=t,
        k=k,
        p0_ids=tuple(p0),
        guts_ids=tuple(placed),
        p_ids=p_ids,
        d0_set_ids=d_ids,
        matroid=mprime,
    )


# ---------------------------------------------------------------------------
# The self-reduction driver


def _default_oracle(t: int, guard: int) -> DecisionOracle:
    return lambda n_matroid: decide_pw_le(n_matroid, t, guard=guard)


def decompose_connected(
    m: RankOracle,
    t: int,
    oracle: Optional[DecisionOracle] = None,
    variant: str = "linear",
    guard: int = DEFAULT_GUARD,
) -> Tuple[PathDecomposition, SelfReduceTrace]:
    """Construct a width-t path-decomposition of a connected matroid with
    pw(M) = t by repeated gadget construction and decision-oracle calls.

    Candidates f are tried in ascending element id.  If no candidate
    succeeds in some iteration, either pw(M) != t or the external oracle is
    faulty; this is reported rather than silently producing a bad ordering.
    """
    if variant not in ("linear", "abstract"):
        raise SelfReduceError(f"unknown variant {variant!r}")
    if variant == "linear" and not isinstance(m, LinearMatroid):
        raise SelfReduceError("linear variant needs a represented matroid")
    if oracle is None:
        oracle = _default_oracle(t, guard)
    trace = SelfReduceTrace(variant=variant, n=m.size)
    n = m.size
    if n == 0:
        return PathDecomposition((), (), 0), trace
    if n == 1:
        return PathDecomposition(tuple(m.elems), (), 0), trace

    if variant == "linear":
        work: RankOracle = LinearMatroid(extend_ambient(m.matrix, t + 1))
    else:
        work = m

    x: List = []
    remaining = sorted(m.elems)
    for i in range(1, n + 1):
        rec = IterationRecord(index=i)
        trace.iterations.append(rec)
        accepted = None
        for f in list(remaining):
            x_f = x + [f]
            lam = lambda_(work, x_f)
            trace.rank_queries += 2
            if lam > t:
                rec.tried.append((f, lam, None))
                continue
            if variant == "linear":
                gadget = build_gadget_linear(work, x_f, t)  # type: ignore[arg-type]
            else:
                gadget = build_gadget_abstract(work, x_f, t)
            trace.oracle_calls += 1
            ans = bool(oracle(gadget.matroid))
            rec.tried.append((f, lam, ans))
            if ans:
                accepted = f
                break
        if accepted is None:
            raise SelfReduceError(
                f"no candidate extension succeeded at iteration {i}; "
                "either pw(M) differs from t or the decision oracle is faulty"
            )
        rec.chosen = accepted
        x.append(accepted)
        remaining.remove(accepted)

    width, lambdas = width_of_order(m, x)
    if width != t:
        raise SelfReduceError(
            f"constructed ordering has width {width}, expected {t}"
        )  # pragma: no cover
    return PathDecomposition(tuple(x), lambdas, width), trace


def _component_matroid(m: RankOracle, comp: Sequence) -> RankOracle:
    comp_sorted = sorted(comp)
    if isinstance(m, LinearMatroid):
        return LinearMatroid(m.matrix.submatrix(comp_sorted))
    return RestrictionOracle(m, comp_sorted)


def pathwidth_value(m: RankOracle, guard: int = DEFAULT_GUARD) -> int:
    """Exact path-width by linear search t = 0, 1, 2, ... with the pruned
    decision DP (the first YES is the cheapest to find)."""
    t = 0
    while True:
        if decide_pw_le(m, t, guard=guard):
            return t
        t += 1


def decompose_full(
    m: RankOracle,
    variant: str = "linear",
    oracle_factory: Optional[Callable[[int], DecisionOracle]] = None,
    guard: int = DEFAULT_GUARD,
) -> Tuple[PathDecomposition, int, SelfReduceTrace]:
    """Full driver: split into connected components, discover each
    component's path-width with the decision oracle, run the self-reduction
    per component, and concatenate the orderings in input order."""
    if variant not in ("linear", "abstract", "dp"):
        raise SelfReduceError(f"unknown variant {variant!r}")
    trace = SelfReduceTrace(variant=variant, n=m.size)
    if m.size == 0:
        return PathDecomposition((), (), 0), 0, trace
    comps = components(m)
    order: List = []
    for comp in comps:
        sub = _component_matroid(m, comp)
        if variant == "dp":
            _, dec = pathwidth_exact(sub, guard=guard)
            order.extend(dec.order)
            continue
        t = pathwidth_value(sub, guard=guard)
        oracle = oracle_factory(t) if oracle_factory is not None else None
        dec, sub_trace = decompose_connected(sub, t, oracle=oracle, variant=variant, guard=guard)
        trace.merge(sub_trace)
        order.extend(dec.order)
    width, lambdas = width_of_order(m, order)
    return PathDecomposition(tuple(order), lambdas, width), width, trace
