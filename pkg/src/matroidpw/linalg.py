"""Dense linear algebra over a FieldSpec.

Matrices are stored column-wise with integer-handle entries (see
fields.get_ops); the public surface accepts and returns FieldElement values.
There are no numerical concerns over finite fields, so pivoting is purely
deterministic: leftmost column, topmost row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .fields import FieldElement, FieldSpec, embed_data, get_ops


class LinalgError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Echelon machinery on handle vectors


def reduce_vector(ops, basis: Sequence[Tuple[int, Tuple[int, ...]]], vec: Sequence[int]) -> List[int]:
    """Reduce vec against a reduced echelon basis [(pivot, row), ...]."""
    v = list(vec)
    for pivot, row in basis:
        c = v[pivot]
        if c != ops.zero:
            for i in range(pivot, len(v)):
                v[i] = ops.sub(v[i], ops.mul(c, row[i]))
    return v


def extend_basis(ops, basis: Tuple[Tuple[int, Tuple[int, ...]], ...], vec: Sequence[int]):
    """Insert vec into a reduced echelon basis.

    Returns (new_basis, grew).  The basis stays fully reduced (RREF), with
    rows sorted by pivot position, so equal subspaces have equal bases.
    """
    v = reduce_vector(ops, basis, vec)
    pivot = None
    for i, x in enumerate(v):
        if x != ops.zero:
            pivot = i
            break
    if pivot is None:
        return basis, False
    inv = ops.inv(v[pivot])
    row = tuple(ops.mul(inv, x) for x in v)
    new_rows = []
    for p, r in basis:
        c = r[pivot]
        if c != ops.zero:
            r = tuple(ops.sub(x, ops.mul(c, y)) for x, y in zip(r, row))
        new_rows.append((p, r))
    new_rows.append((pivot, row))
    new_rows.sort(key=lambda pr: pr[0])
    return tuple(new_rows), True


def rref_rows(ops, rows: Sequence[Sequence[int]]):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    basis: Tuple = ()
    for r in rows:
        basis, _ = extend_basis(ops, basis, r)
    return [list(r) for _, r in basis], [p for p, _ in basis]


# ---------------------------------------------------------------------------
# MatrixOverField


class MatrixOverField:
    """A dense r x n matrix over a FieldSpec with distinct column labels."""

    def __init__(self, fieldspec: FieldSpec, columns: Dict[object, Tuple[int, ...]], nrows: int, labels: Sequence):
        self.field = fieldspec
        self.ops = get_ops(fieldspec)
        self.nrows = nrows
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise LinalgError("column labels must be distinct")
        self.columns = dict(columns)

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_rows(fieldspec: FieldSpec, rows: Sequence[Sequence], labels: Optional[Sequence] = None) -> "MatrixOverField":
        """Rows of FieldElement (or raw canonical data)."""
        ops = get_ops(fieldspec)
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        for r in rows:
            if len(r) != ncols:
                raise LinalgError("ragged rows")
        if labels is None:
            labels = list(range(1, ncols + 1))
        cols = {}
        for j, lab in enumerate(labels):
            col = []
            for i in range(nrows):
                e = rows[i][j]
                data = e.data if isinstance(e, FieldElement) else e
                col.append(ops.encode(data))
            cols[lab] = tuple(col)
        return MatrixOverField(fieldspec, cols, nrows, labels)

    @property
    def ncols(self) -> int:
        return len(self.labels)

    def column(self, label) -> Tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, self.ops.decode(h)) for h in self.columns[label])

    def column_handles(self, label) -> Tuple[int, ...]:
        return self.columns[label]

    def entry(self, i: int, label) -> FieldElement:
        return FieldElement(self.field, self.ops.decode(self.columns[label][i]))

    def submatrix(self, labels: Sequence) -> "MatrixOverField":
        return MatrixOverField(self.field, {l: self.columns[l] for l in labels}, self.nrows, labels)

    # -- rank and spans ------------------------------------------------------

    def rank_of(self, cols: Iterable) -> int:
        basis: Tuple = ()
        ops = self.ops
        for lab in cols:
            basis, _ = extend_basis(ops, basis, self.columns[lab])
        return len(basis)

    def span_basis(self, cols: Iterable) -> "SubspaceBasis":
        basis: Tuple = ()
        ops = self.ops
        for lab in cols:
            basis, _ = extend_basis(ops, basis, self.columns[lab])
        return SubspaceBasis(self.field, self.nrows, tuple(r for _, r in basis))

    def in_span(self, vec: Sequence, cols: Iterable) -> bool:
        col = _to_handles(self.field, self.ops, vec)
        if len(col) != self.nrows:
            raise LinalgError("ambient dimension mismatch")
        basis: Tuple = ()
        for lab in cols:
            basis, _ = extend_basis(self.ops, basis, self.columns[lab])
        reduced = reduce_vector(self.ops, basis, col)
        return all(x == self.ops.zero for x in reduced)


def _to_handles(fieldspec: FieldSpec, ops, vec: Sequence) -> List[int]:
    out = []
    for e in vec:
        if isinstance(e, FieldElement):
            if e.spec != fieldspec:
                raise LinalgError("field mismatch in vector entry")
            out.append(ops.encode(e.data))
        elif isinstance(e, int) and not fieldspec.tower:
            out.append(ops.encode(e % fieldspec.p))
        else:
            out.append(ops.encode(e))
    return out


# ---------------------------------------------------------------------------
# SubspaceBasis


@dataclass(frozen=True)
class SubspaceBasis:
    """A canonical reduced-echelon basis of a subspace (handle vectors)."""

    field: FieldSpec
    ambient: int
    vectors: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def vectors_as_elements(self) -> Tuple[Tuple[FieldElement, ...], ...]:
        ops = get_ops(self.field)
        return tuple(
            tuple(FieldElement(self.field, ops.decode(h)) for h in v) for v in self.vectors
        )

    def contains(self, vec: Sequence) -> bool:
        ops = get_ops(self.field)
        col = _to_handles(self.field, ops, vec)
        basis: Tuple = ()
        for v in self.vectors:
            basis, _ = extend_basis(ops, basis, v)
        reduced = reduce_vector(ops, basis, col)
        return all(x == ops.zero for x in reduced)


def make_subspace(fieldspec: FieldSpec, vectors: Sequence[Sequence], ambient: int) -> SubspaceBasis:
    ops = get_ops(fieldspec)
    basis: Tuple = ()
    for v in vectors:
        col = _to_handles(fieldspec, ops, v)
        if len(col) != ambient:
            raise LinalgError("ambient dimension mismatch")
        basis, _ = extend_basis(ops, basis, col)
    return SubspaceBasis(fieldspec, ambient, tuple(r for _, r in basis))


def span_of_handles(fieldspec: FieldSpec, vectors: Sequence[Sequence[int]], ambient: int) -> SubspaceBasis:
    """Like make_subspace, but for vectors already in handle form."""
    ops = get_ops(fieldspec)
    basis: Tuple = ()
    for v in vectors:
        if len(v) != ambient:
            raise LinalgError("ambient dimension mismatch")
        basis, _ = extend_basis(ops, basis, v)
    return SubspaceBasis(fieldspec, ambient, tuple(r for _, r in basis))


def join_subspaces(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if a.field != b.field or a.ambient != b.ambient:
        raise LinalgError("subspaces live in different ambient spaces")
    ops = get_ops(a.field)
    basis: Tuple = ()
    for v in a.vectors + b.vectors:
        basis, _ = extend_basis(ops, basis, v)
    return SubspaceBasis(a.field, a.ambient, tuple(r for _, r in basis))


def kernel_basis(fieldspec: FieldSpec, columns: Sequence[Sequence[int]], ambient: int) -> List[List[int]]:
    """Basis of { x : sum_j x_j * col_j = 0 }, handle coefficients."""
    ops = get_ops(fieldspec)
    c = len(columns)
    # row-reduce the ambient x c matrix
    rows = [[columns[j][i] for j in range(c)] for i in range(ambient)]
    rref, pivots = rref_rows(ops, rows)
    pivot_set = set(pivots)
    free = [j for j in range(c) if j not in pivot_set]
    out = []
    for f in free:
        x = [ops.zero] * c
        x[f] = ops.one
        for row, p in zip(rref, pivots):
            x[p] = ops.neg(row[f])
        out.append(x)
    return out


def subspace_intersection(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Basis of span(A) intersect span(B), via the kernel of [A | -B]."""
    if a.field != b.field or a.ambient != b.ambient:
        raise LinalgError("subspaces live in different ambient spaces")
    ops = get_ops(a.field)
    if not a.vectors or not b.vectors:
        return SubspaceBasis(a.field, a.ambient, ())
    cols = [list(v) for v in a.vectors]
    cols += [[ops.neg(x) for x in v] for v in b.vectors]
    ker = kernel_basis(a.field, cols, a.ambient)
    ra = len(a.vectors)
    vecs = []
    for x in ker:
        v = [ops.zero] * a.ambient
        for j in range(ra):
            c = x[j]
            if c != ops.zero:
                av = a.vectors[j]
                for i in range(a.ambient):
                    v[i] = ops.add(v[i], ops.mul(c, av[i]))
        vecs.append(v)
    return span_of_handles(a.field, vecs, a.ambient)


# ---------------------------------------------------------------------------
# Projective point enumeration


def projective_points(s: SubspaceBasis, fieldspec: Optional[FieldSpec] = None) -> List[Tuple[int, ...]]:
    """One canonical representative (first nonzero coordinate = 1) per
    1-dimensional subspace of span(s).  Count is (q^d - 1)/(q - 1)."""
    spec = fieldspec if fieldspec is not None else s.field
    if spec != s.field:
        raise LinalgError("field mismatch")
    ops = get_ops(spec)
    d = s.rank
    if d == 0:
        return []
    elems = [ops.encode(e) for e in spec.iter_elements()]
    points = []
    # coefficient vectors with first nonzero coefficient 1; because the basis
    # is in RREF this also makes the first nonzero *coordinate* equal to 1
    for lead in range(d):
        tail_count = len(elems) ** (d - lead - 1)
        for idx in range(tail_count):
            coeff = [ops.zero] * d
            coeff[lead] = ops.one
            v = idx
            for j in range(lead + 1, d):
                coeff[j] = elems[v % len(elems)]
                v //= len(elems)
            vec = [ops.zero] * s.ambient
            for j in range(lead, d):
                c = coeff[j]
                if c != ops.zero:
                    bj = s.vectors[j]
                    for i in range(s.ambient):
                        vec[i] = ops.add(vec[i], ops.mul(c, bj[i]))
            points.append(tuple(vec))
    return points


# ---------------------------------------------------------------------------
# Ambient extension and field embedding of matrices


def extend_ambient(m: MatrixOverField, extra_rows: int) -> MatrixOverField:
    """Append zero coordinates; ranks of all column subsets are unchanged."""
    if extra_rows < 0:
        raise LinalgError("extra_rows must be >= 0")
    if extra_rows == 0:
        return m
    z = m.ops.zero
    cols = {lab: col + (z,) * extra_rows for lab, col in m.columns.items()}
    return MatrixOverField(m.field, cols, m.nrows + extra_rows, m.labels)


def embed_matrix(m: MatrixOverField, dst: FieldSpec) -> MatrixOverField:
    """View a matrix over a tower extension of its field."""
    src_ops = m.ops
    dst_ops = get_ops(dst)
    cols = {}
    cache: Dict[int, int] = {}
    for lab, col in m.columns.items():
        new = []
        for h in col:
            nh = cache.get(h)
            if nh is None:
                nh = dst_ops.encode(embed_data(src_ops.decode(h), m.field, dst))
                cache[h] = nh
            new.append(nh)
        cols[lab] = tuple(new)
    return MatrixOverField(dst, cols, m.nrows, m.labels)
