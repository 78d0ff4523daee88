"""Acceptance suite: one pass/fail line per criterion.

Each test prints exactly one line "CRITERION k: PASS ..." (or fails its
assertion, in which case pytest reports the failure).  The corpus and all
seeds are frozen in corpus_util, so every run checks the same instances.
"""

from __future__ import annotations

import time
from itertools import combinations

from matroidpw.extensions import StackedOracle, add_coloop, add_free_in_closure, add_free_in_guts, restrict
from matroidpw.fields import embed_data, get_ops
from matroidpw.generators import named
from matroidpw.instancefmt import (
    build_matroid,
    document_from_matrix,
    emit_instance,
    parse_instance,
)
from matroidpw.lemmas import LEMMA_IDS, search_hypothesis_instances
from matroidpw.linalg import extend_ambient, span_of_handles
from matroidpw.matroid import (
    LinearMatroid,
    components,
    lambda_,
    minor,
    spot_check_matroid,
)
from matroidpw.pathwidth import (
    decide_prefix_extendable,
    decide_pw_le,
    pathwidth_exact,
)
from matroidpw.selfreduce import (
    build_gadget_abstract,
    build_gadget_linear,
    decompose_full,
)

from corpus_util import (
    NAMED_PW,
    base_field_char,
    corpus_keys,
    corpus_matroid,
    corpus_pw,
    feasible_variants,
)


def _report(k: int, detail: str) -> None:
    print(f"CRITERION {k}: PASS {detail}")


# ---------------------------------------------------------------------------
# 1. Self-reduction equals the DP oracle on the whole corpus


def test_criterion_1_oracle_equivalence():
    t0 = time.monotonic()
    keys = corpus_keys()
    assert len(keys) >= 200
    runs = 0
    for key in keys:
        want = corpus_pw(key)
        for variant in feasible_variants(key):
            dec, width, _ = decompose_full(corpus_matroid(key), variant=variant)
            assert width == want, (key, variant, width, want)
            assert dec.width == want
            runs += 1
    elapsed = time.monotonic() - t0
    assert runs >= 2 * len(keys) * 0.8  # nearly every instance runs both ways
    assert elapsed < 600
    _report(1, f"({len(keys)} instances, {runs} decompositions, {elapsed:.1f}s)")


# ---------------------------------------------------------------------------
# 2. Statement (*): the gadget decision equals prefix extendability


def _star_keys():
    picked = ["named:c3", "named:c4", "named:c5", "named:u24", "named:k4", "named:fano", "named:u36", "named:nonfano"]
    extra = [
        k
        for k in corpus_keys()
        if not k.startswith("named:")
        and corpus_matroid(k).size <= 7
        and len(components(corpus_matroid(k))) == 1
    ]
    return picked + extra[:10]


def test_criterion_2_statement_star():
    checked = 0
    for key in _star_keys():
        m = corpus_matroid(key)
        t = corpus_pw(key)
        variants = feasible_variants(key)
        if not variants:
            continue
        padded = (
            LinearMatroid(extend_ambient(m.matrix, t + 1))
            if isinstance(m, LinearMatroid)
            else None
        )
        x: list = []
        remaining = sorted(m.elems)
        for _ in range(m.size - 1):
            chosen = None
            for f in remaining:
                x_f = x + [f]
                if lambda_(m, x_f) > t:
                    continue
                want = decide_prefix_extendable(m, x_f, t)
                if "linear" in variants:
                    gl = build_gadget_linear(padded, x_f, t)
                    assert decide_pw_le(gl.matroid, t) == want, (key, "linear", x_f)
                    checked += 1
                if "abstract" in variants:
                    ga = build_gadget_abstract(m, x_f, t)
                    assert decide_pw_le(ga.matroid, t) == want, (key, "abstract", x_f)
                    checked += 1
                if want and chosen is None:
                    chosen = f
            assert chosen is not None, key
            x.append(chosen)
            remaining.remove(chosen)
    _report(2, f"({checked} gadget decisions matched prefix extendability)")


# ---------------------------------------------------------------------------
# 3. Call complexity: <= n^2 oracle calls; driver rank queries O(n^2)


def test_criterion_3_call_complexity():
    # driver rank-query constant, excluding queries made inside the DP calls
    C_RANK = 40
    max_ratio = 0.0
    for key in list(corpus_keys())[::3]:
        variants = feasible_variants(key)
        if "abstract" not in variants:
            continue
        m = corpus_matroid(key)
        n = m.size
        internal = 0

        def oracle_factory(t):
            def oracle(mp):
                nonlocal internal
                before = m.query_count
                ans = decide_pw_le(mp, t)
                internal += m.query_count - before
                return ans

            return oracle

        _, width, trace = decompose_full(
            m, variant="abstract", oracle_factory=oracle_factory
        )
        assert width == corpus_pw(key)
        assert trace.oracle_calls <= n * n, (key, trace.oracle_calls, n)
        driver_queries = m.query_count - internal
        assert driver_queries <= C_RANK * n * n, (key, driver_queries, n)
        if n:
            max_ratio = max(max_ratio, driver_queries / (n * n))
    assert max_ratio > 0
    _report(3, f"(oracle calls <= n^2; driver rank queries <= {C_RANK} n^2, max observed {max_ratio:.1f} n^2)")


# ---------------------------------------------------------------------------
# 4. Gadget invariants


def _first_prefixes(m, t, limit):
    out = []
    for f in sorted(m.elems):
        if lambda_(m, [f]) <= t:
            out.append([f])
        if len(out) >= limit:
            break
    return out


def test_criterion_4a_abstract_p_is_uniform():
    checked = 0
    for key in corpus_keys():
        m = corpus_matroid(key)
        t = corpus_pw(key)
        if not 1 <= t <= 3:
            continue
        for prefix in _first_prefixes(m, t, 2):
            g = build_gadget_abstract(m, prefix, t)
            mp = g.matroid
            assert mp.rank(g.p_ids) == t
            for sub in combinations(g.p_ids, t):
                assert mp.rank(sub) == t, (key, prefix, sub)
            checked += 1
    assert checked >= 50
    _report(4, f"a ({checked} abstract gadgets: P induces U_t,2t, exhaustive t<=3)")


def test_criterion_4b_free_extension_circuits():
    # in N_t = M' restricted to P u D_0, every circuit through d_j spans,
    # i.e. has rank t + 1; exhaustive for t <= 2, and for t = 3 exhaustively
    # over >= 10^4 accumulated circuits (there are fewer than 10^4 circuits
    # per gadget, so sampling with replacement is replaced by the strictly
    # stronger exhaustive check over many gadgets)
    circuits_t3 = 0
    checked = 0
    for key in corpus_keys():
        if base_field_char(key) is None:
            continue
        t = corpus_pw(key)
        if "linear" not in feasible_variants(key) or t < 1:
            continue
        m = corpus_matroid(key)
        if t < 3 and checked > 120:
            continue
        padded = LinearMatroid(extend_ambient(m.matrix, t + 1))
        if t == 3:
            prefixes = _first_prefixes(m, t, m.size)
            for pair in combinations(sorted(m.elems), 2):
                if circuits_t3 >= 12000:
                    break
                if lambda_(m, pair) <= t:
                    prefixes.append(list(pair))
        else:
            prefixes = _first_prefixes(m, t, 1)
        for prefix in prefixes:
            if t == 3 and circuits_t3 >= 12000:
                break
            g = build_gadget_linear(padded, prefix, t)
            nt = restrict(g.matroid, g.p_ids + g.d0_set_ids)
            n = nt.size
            d_bits = {d: 1 << nt._pos[d] for d in g.d0_set_ids[1:]}
            for mask in range(1, 1 << n):
                k = bin(mask).count("1")
                if nt.rank_mask(mask) != k - 1:
                    continue
                mm = mask
                is_circ = True
                while mm:
                    bit = mm & -mm
                    sub = mask & ~bit
                    if nt.rank_mask(sub) < bin(sub).count("1"):
                        is_circ = False
                        break
                    mm ^= bit
                if not is_circ:
                    continue
                if any(mask & b for b in d_bits.values()):
                    assert nt.rank_mask(mask) == t + 1, (key, prefix, mask)
                    if t == 3:
                        circuits_t3 += 1
            checked += 1
    assert circuits_t3 >= 10 ** 4, circuits_t3
    _report(4, f"b ({checked} linear gadgets, {circuits_t3} rank-(t+1) circuits at t=3)")


def test_criterion_4c_sigma_d0_guts():
    # span(Sigma u {d_0}) meets span(E(M) \ X_f) exactly in Gamma
    checked = 0
    for key in corpus_keys():
        if "linear" not in feasible_variants(key):
            continue
        t = corpus_pw(key)
        if t < 1:
            continue
        m = corpus_matroid(key)
        padded = LinearMatroid(extend_ambient(m.matrix, t + 1))
        for prefix in _first_prefixes(m, t, 2):
            g = build_gadget_linear(padded, prefix, t)
            mp = g.matroid
            rest = [e for e in mp.elems if not isinstance(e, int) or e > 0]
            from matroidpw.linalg import subspace_intersection

            pd = mp.span_subspace(list(g.p_ids) + list(g.d0_set_ids))
            ee = mp.span_subspace(rest)
            inter = subspace_intersection(pd, ee)
            # lift Gamma into the gadget field for comparison
            base = padded.matrix.field
            bops = padded.matrix.ops
            fops = get_ops(g.fieldspec)
            lifted = [
                tuple(fops.encode(embed_data(bops.decode(h), base, g.fieldspec)) for h in v)
                for v in g.gamma.vectors
            ]
            want = span_of_handles(g.fieldspec, lifted, pd.ambient)
            assert inter == want, (key, prefix)
            checked += 1
    assert checked >= 30
    _report(4, f"c ({checked} linear gadgets: span(Sigma u d0) meets span(E) in Gamma)")


# ---------------------------------------------------------------------------
# 5. Lemma suite


def _lemma_pool():
    names = ("u24", "k4", "c4", "c5", "fano")
    pool = [named(n) for n in names]
    for key in corpus_keys():
        if key.startswith("named:"):
            continue
        m = corpus_matroid(key)
        if 5 <= m.size <= 7:
            pool.append(m)
        if len(pool) >= 14:
            break
    return pool


def test_criterion_5_lemma_suite():
    pool = _lemma_pool()
    lines = []
    for lemma in LEMMA_IDS:
        res = search_hypothesis_instances(lemma, pool, budget=6000, seed=0, max_instances=60)
        failures = [r for r in res.reports if r.conclusion_held is not True]
        assert not failures, (lemma, [r.line() for r in failures[:3]])
        assert res.hits >= 50, (lemma, res.hits, res.trials)
        lines.append(f"{lemma}={res.hits}/{res.trials}")
    _report(5, "(instances/trials per lemma: " + " ".join(lines) + ")")


# ---------------------------------------------------------------------------
# 6. Rank-oracle sanity spot checks


def test_criterion_6_rank_sanity():
    checked = 0
    targets = [named("fano"), named("u24"), named("u36")]
    targets.append(minor(named("fano"), delete=[1], contract=[7]))
    targets.append(minor(named("k4"), delete=[2], contract=[5]))
    base = named("u24")
    stacked = add_coloop(base, "a")
    stacked = add_free_in_closure(stacked, [1, 2], "b")
    stacked = add_free_in_guts(stacked, [1, 2, "a"], ["b"], "c")
    targets.append(stacked)
    targets.append(restrict(stacked, [1, 2, "b", "c"]))
    targets.append(build_gadget_abstract(named("u24"), [1], 2).matroid)
    for key in list(corpus_keys())[::29]:
        targets.append(corpus_matroid(key))
    for m in targets:
        spot_check_matroid(m, samples=1000, seed=0)
        checked += 1
    _report(6, f"({checked} oracles x 1000 random subset samples)")


# ---------------------------------------------------------------------------
# 7. Named regression values


def test_criterion_7_named_regression():
    for name, want in sorted(NAMED_PW.items()):
        val, dec = pathwidth_exact(named(name))
        assert val == want, (name, val, want)
        assert dec.width == want
    _report(7, f"({len(NAMED_PW)} named path-width values match the frozen table)")


# ---------------------------------------------------------------------------
# 8. CLI golden files, verify acceptance and round-trips


def test_criterion_8_cli_goldens(tmp_path):
    import io
    import os

    from matroidpw.cli import EXIT_OK, run_command

    data_dir = os.path.join(os.path.dirname(__file__), "data")

    def run(argv):
        out = io.StringIO()
        err = io.StringIO()
        code = run_command(argv, out, err)
        return code, out.getvalue(), err.getvalue()

    checked = 0
    for inst in ("u24", "c4", "c5", "k4", "i3", "fano", "gf4"):
        path = os.path.join(data_dir, f"{inst}.txt")
        # instance round-trip identity
        text = open(path).read()
        assert emit_instance(parse_instance(text)) == text
        for method in ("dp", "self-linear", "self-abstract"):
            golden = os.path.join(data_dir, f"golden_decompose_{inst}_{method}.txt")
            code, out, err = run(["decompose", "--method", method, path])
            assert code == EXIT_OK and err == ""
            assert out == open(golden).read(), (inst, method)
            # verify must accept every emitted result
            rf = tmp_path / f"{inst}_{method}.txt"
            rf.write_text(out)
            code, vout, _ = run(["verify", path, str(rf)])
            assert (code, vout) == (EXIT_OK, "ok\n"), (inst, method)
            checked += 1
    _report(8, f"({checked} golden decompose outputs bit-exact and verified)")
