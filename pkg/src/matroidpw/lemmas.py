"""Property-based verification of the structural lemmas behind the
self-reduction.

Each lemma is encoded as (hypotheses, conclusion) over an explicit witness
instance; `check_lemma` first verifies the hypotheses and only then asserts
the conclusion, so vacuous instances are visible and counted separately
from real passes.  `search_hypothesis_instances` randomly samples witness
instances from a generator pool and keeps the ones whose hypotheses hold.

Lemma ids:
  circexch     circuit symmetric-difference exchange
  onesidesep   elements raising both sides of a separation lie on one side
  pwminor      path-width is minor-monotone
  circuitspan  a circuit spanning the guts of a width-t prefix crosses it
  extalpha     adjoined-root column is a free extension
  circguts     rerouting a circuit through a guts-spanning set
  getcircuitD  D_0 closes to a circuit inside the gadget
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .extensions import add_coloop, add_free_in_closure, add_free_in_guts, restrict
from .fields import FieldElement, find_irreducible, get_ops
from .linalg import MatrixOverField, rref_rows
from .matroid import (
    LinearMatroid,
    MatroidError,
    RankOracle,
    circuits,
    closure,
    components,
    lambda_,
    minor,
    mu,
)
from .pathwidth import pathwidth_exact, width_of_order
from .selfreduce import gadget_element_ids

LEMMA_IDS = (
    "circexch",
    "onesidesep",
    "pwminor",
    "circuitspan",
    "extalpha",
    "circguts",
    "getcircuitD",
)


@dataclass
class LemmaInstance:
    lemma: str
    matroid: RankOracle
    witnesses: Dict[str, object] = field(default_factory=dict)
    seed: Optional[int] = None


@dataclass
class LemmaReport:
    lemma: str
    hypotheses_held: bool
    conclusion_held: Optional[bool]  # None iff vacuous
    seed: Optional[int] = None

    def line(self) -> str:
        return (
            f"{self.lemma} seed={self.seed} hypotheses_held={self.hypotheses_held} "
            f"conclusion_held={self.conclusion_held}"
        )


# ---------------------------------------------------------------------------
# Shared helpers


def is_circuit(m: RankOracle, c) -> bool:
    cm = m.mask_of(c)
    k = bin(cm).count("1")
    if k == 0 or m.rank_mask(cm) != k - 1:
        return False
    mm = cm
    while mm:
        bit = mm & -mm
        if m.rank_mask(cm ^ bit) < k - 1:
            return False
        mm ^= bit
    return True


def guts_elements(m: RankOracle, x) -> frozenset:
    """Elements lying in the guts of (X, E \\ X): cl(X) intersect cl(E \\ X)."""
    xs = frozenset(x)
    return closure(m, xs) & closure(m, m.ground_set - xs)


# ---------------------------------------------------------------------------
# Individual lemma checks: each returns (hypotheses_held, conclusion_held)


def _check_circexch(m: RankOracle, w: Dict) -> Tuple[bool, Optional[bool]]:
    c1 = frozenset(w["c1"])
    c2 = frozenset(w["c2"])
    hyp = (
        is_circuit(m, c1)
        and is_circuit(m, c2)
        and len(c1 & c2) == 1
        and m.rank(c1) + m.rank(c2) == m.rank(c1 | c2) + 1
    )
    if not hyp:
        return False, None
    return True, is_circuit(m, c1 ^ c2)


def _check_onesidesep(m: RankOracle, w: Dict) -> Tuple[bool, Optional[bool]]:
    x = frozenset(w["x"])
    e, f = w["e"], w["f"]
    target = lambda_(m, x) + 1
    hyp = (
        e != f
        and mu(m, x, {e}) == target
        and mu(m, x, {f}) == target
        and mu(m, x, {e, f}) == target
    )
    if not hyp:
        return False, None
    return True, (e in x) == (f in x)


def _check_pwminor(m: RankOracle, w: Dict) -> Tuple[bool, Optional[bool]]:
    n = w["minor"]
    val_n, _ = pathwidth_exact(n)
    val_m, _ = pathwidth_exact(m)
    return True, val_n <= val_m


def _check_circuitspan(m: RankOracle, w: Dict) -> Tuple[bool, Optional[bool]]:
    order = tuple(w["order"])
    i = w["i"]
    c = frozenset(w["c"])
    t, _ = width_of_order(m, order)
    x = frozenset(order[:i])
    hyp = (
        0 < i < len(order)
        and lambda_(m, x) == t
        and is_circuit(m, c)
        and not (c & guts_elements(m, x))
        and mu(m, x, c) == m.rank(c)
    )
    if not hyp:
        return False, None
    y = m.ground_set - x
    return True, bool(c & x) and bool(c & y)


def _check_extalpha(m: RankOracle, w: Dict) -> Tuple[bool, Optional[bool]]:
    if not isinstance(m, LinearMatroid):
        return False, None
    r = m.full_rank()
    if r < 1 or m.matrix.nrows != r:
        return False, None
    f = m.matrix.field
    if f.tower:
        return False, None
    poly = find_irreducible(f, r)
    ext = f.extend(tuple(c.data for c in poly))
    eops = get_ops(ext)
    # alpha = class of x in the extension; b = (1, alpha, ..., alpha^{r-1})
    alpha = eops.encode((f.zero_data(), f.one_data()) + (f.zero_data(),) * (r - 2)) if r >= 2 else None
    sops = m.matrix.ops

    def lift(h):
        data = sops.decode(h)
        return eops.encode((data,) + (f.zero_data(),) * (r - 1))

    b_col = []
    acc = eops.one
    for _ in range(r):
        b_col.append(acc)
        if alpha is not None:
            acc = eops.mul(acc, alpha)
    b_label = "b*"
    cols = {lab: tuple(lift(h) for h in col) for lab, col in m.matrix.columns.items()}
    cols[b_label] = tuple(b_col)
    big = LinearMatroid(MatrixOverField(ext, cols, r, m.matrix.labels + (b_label,)))
    bbit = 1 << big._pos[b_label]
    ok = True
    for mask in range(1 << m.size):
        rs = big.rank_mask(mask)
        want = rs + 1 if rs < r else rs
        if big.rank_mask(mask | bbit) != want:
            ok = False
            break
    return True, ok


def _check_circguts(m: RankOracle, w: Dict) -> Tuple[bool, Optional[bool]]:
    y = frozenset(w["y"])
    q = frozenset(w["q"])
    c = frozenset(w["c"])
    e = w["e"]
    yp = m.ground_set - y
    hyp = (
        q <= guts_elements(m, y)
        and e not in q
        and m.rank(q) == lambda_(m, y)
        and is_circuit(m, c)
        and e in (yp & c)
    )
    if not hyp:
        return False, None
    pool = sorted((c - y) | q)
    cl_yp = closure(m, yp)
    others = [g for g in pool if g != e]
    for k in range(len(others) + 1):
        for sub in itertools.combinations(others, k):
            cand = frozenset(sub) | {e}
            if cand <= cl_yp and is_circuit(m, cand):
                return True, True
    return True, False


def _check_getcircuitD(m: RankOracle, w: Dict) -> Tuple[bool, Optional[bool]]:
    x = frozenset(w["x"])
    z = frozenset(w["z"])
    p = frozenset(w["p"])
    t = w["t"]
    e = m.ground_set
    hyp = (
        len(components(m)) == 1
        and z
        and z <= e - x
        and p <= e - x
        and m.rank(p) == t
        and t >= lambda_(m, x)
        and mu(m, x, p) == t
        and not (z & closure(m, p))
    )
    if not hyp:
        return False, None
    _, d_ids = gadget_element_ids(0, t)
    cur: RankOracle = add_coloop(m, d_ids[0])
    target = p | {d_ids[0]}
    for b in d_ids[1:]:
        cur = add_free_in_closure(cur, target, b)
    mprime = restrict(cur, (e - x) | set(d_ids))
    if lambda_(mprime, set(d_ids) | z) > t:
        return False, None
    d0 = frozenset(d_ids)
    zs = sorted(z)
    for k in range(len(zs) + 1):
        for sub in itertools.combinations(zs, k):
            if is_circuit(mprime, d0 | frozenset(sub)):
                return True, True
    return True, False


_CHECKS = {
    "circexch": _check_circexch,
    "onesidesep": _check_onesidesep,
    "pwminor": _check_pwminor,
    "circuitspan": _check_circuitspan,
    "extalpha": _check_extalpha,
    "circguts": _check_circguts,
    "getcircuitD": _check_getcircuitD,
}


def check_lemma(inst: LemmaInstance) -> LemmaReport:
    try:
        fn = _CHECKS[inst.lemma]
    except KeyError:
        raise MatroidError(f"unknown lemma id {inst.lemma!r}") from None
    hyp, concl = fn(inst.matroid, inst.witnesses)
    return LemmaReport(inst.lemma, hyp, concl, seed=inst.seed)


# ---------------------------------------------------------------------------
# Randomized instance search


@dataclass
class SearchResult:
    lemma: str
    instances: List[LemmaInstance]
    reports: List[LemmaReport]
    trials: int
    hits: int

    @property
    def hit_rate(self) -> float:
        return self.hits / self.trials if self.trials else 0.0


def _rand_subset(rng: random.Random, elems: Sequence) -> frozenset:
    return frozenset(e for e in elems if rng.random() < 0.5)


def _circuit_list(m: RankOracle, cache: Dict[int, List[frozenset]]) -> List[frozenset]:
    key = id(m)
    if key not in cache:
        cache[key] = circuits(m)
    return cache[key]


def _sample_witnesses(lemma: str, m: RankOracle, rng: random.Random, cache: Dict) -> Optional[Dict]:
    elems = list(m.elems)
    n = len(elems)
    if lemma == "circexch":
        circs = _circuit_list(m, cache)
        if len(circs) < 2:
            return None
        c1, c2 = rng.sample(circs, 2)
        return {"c1": c1, "c2": c2}
    if lemma == "onesidesep":
        if n < 2:
            return None
        e, f = rng.sample(elems, 2)
        return {"x": _rand_subset(rng, elems), "e": e, "f": f}
    if lemma == "pwminor":
        if n < 2:
            return None
        k = rng.randrange(1, n)
        removed = rng.sample(elems, k)
        cut = rng.randrange(len(removed) + 1)
        dele, con = removed[:cut], removed[cut:]
        # contracting a loop is legal; keep it simple and allow any split
        return {"minor": minor(m, delete=dele, contract=con)}
    if lemma == "circuitspan":
        key = ("pw", id(m))
        if key not in cache:
            cache[key] = pathwidth_exact(m)
        t, dec = cache[key]
        idxs = [i + 1 for i, lv in enumerate(dec.lambdas) if lv == t]
        circs = _circuit_list(m, cache)
        if not idxs or not circs:
            return None
        return {"order": dec.order, "i": rng.choice(idxs), "c": rng.choice(circs)}
    if lemma == "extalpha":
        if not isinstance(m, LinearMatroid) or m.full_rank() < 1 or m.size > 6:
            return None
        if m.matrix.nrows != m.full_rank():
            # re-represent on RREF rows so the row count equals the rank
            ops = m.matrix.ops
            rows = [[m.matrix.columns[lab][i] for lab in m.elems] for i in range(m.matrix.nrows)]
            rref, _ = rref_rows(ops, rows)
            cols = {lab: tuple(r[j] for r in rref) for j, lab in enumerate(m.elems)}
            m2 = LinearMatroid(MatrixOverField(m.matrix.field, cols, len(rref), m.elems))
            return {"replace_matroid": m2}
        return {}
    if lemma == "circguts":
        circs = _circuit_list(m, cache)
        if not circs:
            return None
        y = _rand_subset(rng, elems)
        c = rng.choice(circs)
        yp_c = sorted(c - y)
        if not yp_c:
            return None
        e = rng.choice(yp_c)
        g = sorted(guts_elements(m, y) - {e})
        rng.shuffle(g)
        lam = lambda_(m, y)
        q: List = []
        r = 0
        for cand in g:
            if r == lam:
                break
            if m.rank(q + [cand]) > r:
                q.append(cand)
                r += 1
        if r != lam:
            return None
        return {"y": y, "q": frozenset(q), "c": c, "e": e}
    if lemma == "getcircuitD":
        if n < 3 or len(components(m)) != 1:
            return None
        x = _rand_subset(rng, elems)
        if not x or x == frozenset(elems):
            return None
        t = lambda_(m, x)
        if not 1 <= t <= 2:
            return None
        # realize P as 2t elements placed freely in the guts of (X, E \ X),
        # with previously placed ones duplicated on both sides
        p_ids, _ = gadget_element_ids(2 * t, t)
        cur: RankOracle = m
        placed: List[int] = []
        for c_id in p_ids:
            cur = add_free_in_guts(cur, x, set(placed), c_id)
            placed.append(c_id)
        if len(components(cur)) != 1:
            return None
        rest = frozenset(cur.ground_set) - x - set(p_ids)
        free_z = sorted(rest - closure(cur, set(p_ids)))
        if not free_z:
            return None
        k = rng.randrange(1, min(2, len(free_z)) + 1)
        z = frozenset(rng.sample(free_z, k))
        return {
            "replace_matroid": cur,
            "x": x,
            "z": z,
            "p": frozenset(p_ids),
            "t": t,
        }
    raise MatroidError(f"unknown lemma id {lemma!r}")


def search_hypothesis_instances(
    lemma: str,
    pool: Sequence[RankOracle],
    budget: int,
    seed: int = 0,
    max_instances: Optional[int] = None,
) -> SearchResult:
    """Draw up to `budget` random witness instances from the pool and keep
    those whose hypotheses hold; hit rate makes vacuity visible."""
    if lemma not in _CHECKS:
        raise MatroidError(f"unknown lemma id {lemma!r}")
    if budget < 1:
        raise MatroidError("budget must be >= 1")
    rng = random.Random(seed)
    cache: Dict = {}
    instances: List[LemmaInstance] = []
    reports: List[LemmaReport] = []
    trials = 0
    hits = 0
    for trial in range(budget):
        trials += 1
        m = pool[rng.randrange(len(pool))]
        w = _sample_witnesses(lemma, m, rng, cache)
        if w is None:
            continue
        target = w.pop("replace_matroid", m)
        inst = LemmaInstance(lemma, target, w, seed=trial)
        rep = check_lemma(inst)
        if rep.hypotheses_held:
            hits += 1
            instances.append(inst)
            reports.append(rep)
            if max_instances is not None and hits >= max_instances:
                break
    return SearchResult(lemma, instances, reports, trials, hits)
