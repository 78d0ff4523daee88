from __future__ import annotations

import random
from itertools import permutations

import pytest

from matroidpw.fields import GF
from matroidpw.generators import (
    free_matroid,
    graphic_matroid,
    named,
    random_linear,
    uniform_linear,
)
from matroidpw.linalg import MatrixOverField
from matroidpw.matroid import LinearMatroid, UniformOracle, lambda_, minor
from matroidpw.pathwidth import (
    GuardExceeded,
    PathDecomposition,
    decide_prefix_extendable,
    decide_pw_le,
    pathwidth_exact,
    width_of_order,
)

from corpus_util import corpus_keys, corpus_matroid


def _pw_bruteforce(m) -> int:
    best = None
    for perm in permutations(sorted(m.elems)):
        w, _ = width_of_order(m, perm)
        if best is None or w < best:
            best = w
    return best


def test_width_of_order_u24():
    m = UniformOracle(2, 4)
    w, lams = width_of_order(m, (1, 2, 3, 4))
    assert w == 2
    assert lams == (1, 2, 1)


def test_width_of_order_validates_permutation():
    m = UniformOracle(2, 4)
    with pytest.raises(Exception):
        width_of_order(m, (1, 2, 3))
    with pytest.raises(Exception):
        width_of_order(m, (1, 2, 3, 3))


def test_width_of_order_reversal_symmetry():
    rng = random.Random(12)
    for key in list(corpus_keys())[::17]:
        m = corpus_matroid(key)
        order = sorted(m.elems)
        rng.shuffle(order)
        w1, l1 = width_of_order(m, order)
        w2, l2 = width_of_order(m, list(reversed(order)))
        assert w1 == w2
        assert l2 == tuple(reversed(l1))


def test_pathwidth_exact_small_named():
    for name, want in (("i3", 0), ("c4", 1), ("u24", 2), ("k4", 2), ("fano", 3)):
        m = named(name)
        val, dec = pathwidth_exact(m)
        assert val == want
        assert frozenset(dec.order) == m.ground_set
        w, lams = width_of_order(m, dec.order)
        assert w == val and lams == dec.lambdas
        assert dec.width == val


def test_pathwidth_exact_matches_bruteforce():
    pool = [
        UniformOracle(2, 4),
        UniformOracle(2, 5),
        named("c5"),
        random_linear(3, 6, 2, seed=2),
        random_linear(2, 5, 3, seed=9),
        uniform_linear(3, 4, 3),
    ]
    for m in pool:
        val, dec = pathwidth_exact(m)
        assert val == _pw_bruteforce(m)
        assert width_of_order(m, dec.order)[0] == val


def test_pathwidth_exact_deterministic_witness():
    m = named("k4")
    v1, d1 = pathwidth_exact(m)
    v2, d2 = pathwidth_exact(m)
    assert (v1, d1.order) == (v2, d2.order)


def test_free_and_empty_edge_cases():
    val, dec = pathwidth_exact(free_matroid(4))
    assert val == 0 and len(dec.order) == 4
    empty = LinearMatroid(MatrixOverField.from_rows(GF(2), [], labels=[]))
    val, dec = pathwidth_exact(empty)
    assert val == 0 and dec.order == ()
    assert decide_pw_le(empty, 0)


def test_decide_pw_le_matches_exact():
    for key in list(corpus_keys())[::7]:
        m = corpus_matroid(key)
        val, _ = pathwidth_exact(m)
        for t in range(val + 2):
            assert decide_pw_le(corpus_matroid(key), t) == (t >= val)


def test_decide_pw_le_loops_and_coloops():
    # loops and coloops never raise lambda
    m = graphic_matroid(3, [(1, 2), (1, 1), (2, 3)])
    assert decide_pw_le(m, 0)


def test_guard():
    m = free_matroid(10)
    with pytest.raises(GuardExceeded):
        pathwidth_exact(m, guard=8)
    with pytest.raises(GuardExceeded):
        decide_pw_le(m, 1, guard=8)
    val, _ = pathwidth_exact(m, guard=10)
    assert val == 0


def test_decide_prefix_extendable_bruteforce():
    for m in (UniformOracle(2, 4), named("k4"), random_linear(3, 6, 2, seed=4)):
        t, _ = pathwidth_exact(m)
        elems = sorted(m.elems)
        for k in (1, 2):
            for prefix in permutations(elems, k):
                want = any(
                    width_of_order(m, prefix + rest)[0] <= t
                    for rest in permutations([e for e in elems if e not in prefix])
                )
                assert decide_prefix_extendable(m, prefix, t) == want


def test_path_decomposition_invariant():
    PathDecomposition((1, 2), (1,), 1)
    with pytest.raises(AssertionError):
        PathDecomposition((1, 2), (1,), 2)


def test_direct_sum_additivity():
    # path-width of a direct sum is the max over the blocks
    f2 = GF(2)
    rows = [
        [1, 0, 1, 1, 0, 0, 0],
        [0, 1, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 0, 1, 1],
    ]
    m = LinearMatroid(MatrixOverField.from_rows(f2, rows))
    left = LinearMatroid(m.matrix.submatrix([1, 2, 3, 4]))
    right = LinearMatroid(m.matrix.submatrix([5, 6, 7]))
    vl, _ = pathwidth_exact(left)
    vr, _ = pathwidth_exact(right)
    vm, _ = pathwidth_exact(m)
    assert vm == max(vl, vr)


def test_minor_monotonicity():
    rng = random.Random(21)
    for key in list(corpus_keys())[::23]:
        m = corpus_matroid(key)
        if m.size > 9:
            continue
        val, _ = pathwidth_exact(m)
        elems = sorted(m.elems)
        for _ in range(6):
            dele = frozenset(e for e in elems if rng.random() < 0.25)
            cont = frozenset(e for e in elems if e not in dele and rng.random() < 0.25)
            mm = minor(m, delete=dele, contract=cont)
            sub, _ = pathwidth_exact(mm)
            assert sub <= val
