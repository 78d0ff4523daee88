"""Deterministic instance generators and the named matroid registry.

Every generator is a pure function of its parameters (and seed), so test
corpora are reproducible by construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .fields import GF, FieldSpec
from .linalg import MatrixOverField
from .matroid import LinearMatroid, MatroidError, RankOracle, UniformOracle


@dataclass(frozen=True)
class GeneratorSpec:
    """kind in {uniform, cycle, graphic, random-linear, named}; identical
    spec + seed yields an identical instance."""

    kind: str
    params: Tuple = ()
    seed: int = 0


# ---------------------------------------------------------------------------
# Basic constructions


def free_matroid(n: int) -> LinearMatroid:
    """I_n: n coloops, represented by the identity matrix over GF(2)."""
    f2 = GF(2)
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return LinearMatroid(MatrixOverField.from_rows(f2, rows))


def uniform_linear(r: int, n: int, q: int) -> LinearMatroid:
    """U_{r,n} over GF(q), columns on the moment curve plus the point at
    infinity; needs n <= q + 1 for 2 <= r < n."""
    if not 0 <= r <= n:
        raise MatroidError("uniform matroid needs 0 <= r <= n")
    f = GF(q)
    if r == n:
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return LinearMatroid(MatrixOverField.from_rows(f, rows))
    if r == 0:
        return LinearMatroid(MatrixOverField.from_rows(f, [[0] * n]))
    if r == 1:
        return LinearMatroid(MatrixOverField.from_rows(f, [[1] * n]))
    if n > q + 1:
        raise MatroidError(f"U_{{{r},{n}}} needs a field with at least {n - 1} elements")
    cols: List[List[int]] = []
    for a in range(min(n, q)):
        cols.append([pow(a, i, q) for i in range(r)])
    if len(cols) < n:
        cols.append([0] * (r - 1) + [1])
    rows = [[cols[j][i] for j in range(n)] for i in range(r)]
    return LinearMatroid(MatrixOverField.from_rows(f, rows))


def graphic_matroid(n_vertices: int, edges: Sequence[Tuple[int, int]]) -> LinearMatroid:
    """Cycle matroid of a graph: vertex-edge incidence matrix over GF(2),
    one column per edge, labels 1..m in input order."""
    f2 = GF(2)
    for u, v in edges:
        if not (1 <= u <= n_vertices and 1 <= v <= n_vertices):
            raise MatroidError(f"edge ({u},{v}) out of vertex range")
    cols = {}
    labels = list(range(1, len(edges) + 1))
    for lab, (u, v) in zip(labels, edges):
        col = [0] * n_vertices
        if u != v:
            col[u - 1] = 1
            col[v - 1] = 1
        cols[lab] = col
    rows = [[cols[lab][i] for lab in labels] for i in range(n_vertices)]
    return LinearMatroid(MatrixOverField.from_rows(f2, rows, labels))


def cycle_edges(n: int) -> List[Tuple[int, int]]:
    return [(i, i % n + 1) for i in range(1, n + 1)]


def complete_graph_edges(k: int) -> List[Tuple[int, int]]:
    return [(u, v) for u in range(1, k + 1) for v in range(u + 1, k + 1)]


def random_linear(r: int, n: int, q: int, seed: int = 0) -> LinearMatroid:
    """Random r x n matrix over GF(q) with entries drawn uniformly."""
    f = GF(q)
    rng = random.Random((seed, r, n, q).__repr__())
    rows = [[rng.randrange(q) for _ in range(n)] for _ in range(r)]
    return LinearMatroid(MatrixOverField.from_rows(f, rows))


def fano() -> LinearMatroid:
    """F_7: all nonzero vectors of GF(2)^3."""
    f2 = GF(2)
    cols = [[0, 0, 1], [0, 1, 0], [0, 1, 1], [1, 0, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]]
    rows = [[c[i] for c in cols] for i in range(3)]
    return LinearMatroid(MatrixOverField.from_rows(f2, rows))


def nonfano() -> LinearMatroid:
    """F_7^-: the same seven points read over GF(3)."""
    f3 = GF(3)
    cols = [[0, 0, 1], [0, 1, 0], [0, 1, 1], [1, 0, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]]
    rows = [[c[i] for c in cols] for i in range(3)]
    return LinearMatroid(MatrixOverField.from_rows(f3, rows))


# ---------------------------------------------------------------------------
# Named registry


def _named_factories() -> Dict[str, object]:
    reg: Dict[str, object] = {
        "u24": lambda: uniform_linear(2, 4, 3),
        "u36": lambda: UniformOracle(3, 6),
        "k4": lambda: graphic_matroid(4, complete_graph_edges(4)),
        "fano": fano,
        "nonfano": nonfano,
    }
    for n in range(1, 5):
        reg[f"i{n}"] = (lambda k: (lambda: free_matroid(k)))(n)
    for n in range(3, 7):
        reg[f"c{n}"] = (lambda k: (lambda: graphic_matroid(k, cycle_edges(k))))(n)
    return reg


NAMED = _named_factories()


def named(name: str) -> RankOracle:
    try:
        return NAMED[name]()
    except KeyError:
        raise MatroidError(f"unknown named instance {name!r}") from None


# ---------------------------------------------------------------------------
# Dispatch


def generate(spec: GeneratorSpec) -> RankOracle:
    if spec.kind == "uniform":
        r, n = spec.params
        return UniformOracle(r, n)
    if spec.kind == "cycle":
        (n,) = spec.params
        return graphic_matroid(n, cycle_edges(n))
    if spec.kind == "graphic":
        nv, edges = spec.params
        return graphic_matroid(nv, list(edges))
    if spec.kind == "random-linear":
        r, n, q = spec.params
        return random_linear(r, n, q, seed=spec.seed)
    if spec.kind == "named":
        (name,) = spec.params
        return named(name)
    raise MatroidError(f"unknown generator kind {spec.kind!r}")
