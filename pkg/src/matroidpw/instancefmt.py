"""Line-oriented text formats for instances and results.

Instance grammar ('#' starts a comment, blank lines ignored):
    field P                         prime field GF(P)
    field P K c0 c1 ... cK          GF(P^K), monic irreducible, ascending
                                    coefficients, cK = 1
    matrix R N                      followed by R rows of N entries;
                                    extension entries are colon-joined
                                    coefficient lists a0:a1:...:a{K-1}
    graph V M                       followed by M lines "u v"; cycle
                                    matroid over GF(2)

Result grammar:
    width T
    order i1 i2 ... iN
    lambda l1 ... l{N-1}
    stats oracle_calls=.. rank_queries=.. ms=..

Emitted text is deterministic (fixed field order, LF, ASCII), and
parse(emit(doc)) == doc on canonical documents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .fields import GF, FieldSpec, _poly_is_irreducible
from .generators import graphic_matroid
from .linalg import MatrixOverField
from .matroid import LinearMatroid


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


Entry = Tuple[int, ...]  # coefficient tuple; length 1 for prime fields


@dataclass(frozen=True)
class InstanceDocument:
    kind: str  # "matrix" | "graph"
    p: int = 0
    ext: Optional[Tuple[int, ...]] = None  # c0..cK when an extension field
    rows: Tuple[Tuple[Entry, ...], ...] = ()
    vertices: int = 0
    edges: Tuple[Tuple[int, int], ...] = ()

    @property
    def n_elements(self) -> int:
        if self.kind == "graph":
            return len(self.edges)
        return len(self.rows[0]) if self.rows else 0


@dataclass(frozen=True)
class ResultDocument:
    width: int
    order: Tuple[int, ...]
    lambdas: Tuple[int, ...]
    stats: Optional[Tuple[int, int, int]] = None  # oracle_calls, rank_queries, ms


# ---------------------------------------------------------------------------
# Instance parsing


def _logical_lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"{what}: {tok!r} is not an integer") from None


def parse_instance(text: str) -> InstanceDocument:
    lines = _logical_lines(text)
    if not lines:
        raise ParseError(1, "empty instance")
    pos = 0
    lineno, head = lines[pos]
    toks = head.split()
    if toks[0] == "graph":
        if len(toks) != 3:
            raise ParseError(lineno, "graph header needs 'graph V M'")
        v = _int(toks[1], lineno, "vertex count")
        mcount = _int(toks[2], lineno, "edge count")
        if v < 1 or mcount < 0:
            raise ParseError(lineno, "graph needs V >= 1 and M >= 0")
        edges = []
        for k in range(mcount):
            pos += 1
            if pos >= len(lines):
                raise ParseError(lineno, f"expected {mcount} edge lines, found {k}")
            eln, line = lines[pos]
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(eln, "edge line needs exactly 'u v'")
            u = _int(parts[0], eln, "vertex")
            w = _int(parts[1], eln, "vertex")
            if not (1 <= u <= v and 1 <= w <= v):
                raise ParseError(eln, f"edge ({u},{w}) outside 1..{v}")
            edges.append((u, w))
        if pos + 1 < len(lines):
            raise ParseError(lines[pos + 1][0], "trailing content after edge list")
        return InstanceDocument(kind="graph", vertices=v, edges=tuple(edges))

    if toks[0] != "field":
        raise ParseError(lineno, f"expected 'field' or 'graph' header, got {toks[0]!r}")
    if len(toks) == 2:
        p = _int(toks[1], lineno, "characteristic")
        spec = _field_spec(p, None, lineno)
        ext = None
        deg = 1
    elif len(toks) >= 4:
        p = _int(toks[1], lineno, "characteristic")
        deg = _int(toks[2], lineno, "extension degree")
        coeffs = tuple(_int(tk, lineno, "coefficient") for tk in toks[3:])
        if deg < 1 or len(coeffs) != deg + 1:
            raise ParseError(lineno, f"degree {deg} needs {deg + 1} coefficients c0..c{deg}")
        spec = _field_spec(p, coeffs, lineno)
        ext = coeffs
    else:
        raise ParseError(lineno, "field line needs 'field P' or 'field P K c0 ... cK'")

    pos += 1
    if pos >= len(lines):
        raise ParseError(lineno, "missing 'matrix R N' line")
    mln, mline = lines[pos]
    mtoks = mline.split()
    if mtoks[0] != "matrix" or len(mtoks) != 3:
        raise ParseError(mln, "expected 'matrix R N'")
    r = _int(mtoks[1], mln, "row count")
    n = _int(mtoks[2], mln, "column count")
    if r < 1 or n < 1:
        raise ParseError(mln, "matrix needs R >= 1 and N >= 1")
    rows = []
    for k in range(r):
        pos += 1
        if pos >= len(lines):
            raise ParseError(mln, f"expected {r} matrix rows, found {k}")
        rln, line = lines[pos]
        toks_row = line.split()
        if len(toks_row) != n:
            raise ParseError(rln, f"row has {len(toks_row)} entries, expected {n}")
        row = tuple(_parse_entry(tok, p, deg, rln) for tok in toks_row)
        rows.append(row)
    if pos + 1 < len(lines):
        raise ParseError(lines[pos + 1][0], "trailing content after matrix rows")
    return InstanceDocument(kind="matrix", p=p, ext=ext, rows=tuple(rows))


def _field_spec(p: int, coeffs: Optional[Tuple[int, ...]], lineno: int) -> FieldSpec:
    try:
        spec = GF(p)
    except ValueError:
        raise ParseError(lineno, f"characteristic {p} is not prime (extension fields need tower data)") from None
    if coeffs is None:
        return spec
    for c in coeffs:
        if not 0 <= c < p:
            raise ParseError(lineno, f"coefficient {c} outside [0,{p})")
    if coeffs[-1] != 1:
        raise ParseError(lineno, "extension polynomial must be monic (cK = 1)")
    if not _poly_is_irreducible(spec, coeffs):
        raise ParseError(lineno, "extension polynomial is reducible")
    return spec.extend(coeffs)


def _parse_entry(tok: str, p: int, deg: int, lineno: int) -> Entry:
    parts = tok.split(":")
    if deg == 1:
        if len(parts) != 1:
            raise ParseError(lineno, f"prime-field entry {tok!r} must be a plain integer")
    elif len(parts) != deg:
        raise ParseError(lineno, f"entry {tok!r} needs {deg} colon-joined coefficients")
    out = []
    for pt in parts:
        v = _int(pt, lineno, "entry coefficient")
        if not 0 <= v < p:
            raise ParseError(lineno, f"entry coefficient {v} outside [0,{p})")
        out.append(v)
    return tuple(out)


# ---------------------------------------------------------------------------
# Instance emission and matroid construction


def emit_instance(doc: InstanceDocument) -> str:
    lines: List[str] = []
    if doc.kind == "graph":
        lines.append(f"graph {doc.vertices} {len(doc.edges)}")
        for u, v in doc.edges:
            lines.append(f"{u} {v}")
    elif doc.kind == "matrix":
        if doc.ext is None:
            lines.append(f"field {doc.p}")
        else:
            k = len(doc.ext) - 1
            lines.append(f"field {doc.p} {k} " + " ".join(str(c) for c in doc.ext))
        r = len(doc.rows)
        n = len(doc.rows[0]) if doc.rows else 0
        lines.append(f"matrix {r} {n}")
        for row in doc.rows:
            lines.append(" ".join(":".join(str(c) for c in e) for e in row))
    else:
        raise ValueError(f"unknown document kind {doc.kind!r}")
    return "\n".join(lines) + "\n"


def instance_field(doc: InstanceDocument) -> FieldSpec:
    if doc.kind == "graph":
        return GF(2)
    spec = GF(doc.p)
    if doc.ext is not None:
        spec = spec.extend(doc.ext)
    return spec


def build_matroid(doc: InstanceDocument) -> LinearMatroid:
    """Element ids are 1..n in column / edge input order."""
    if doc.kind == "graph":
        return graphic_matroid(doc.vertices, list(doc.edges))
    spec = instance_field(doc)
    rows = []
    for row in doc.rows:
        rows.append([e[0] if doc.ext is None else e for e in row])
    return LinearMatroid(MatrixOverField.from_rows(spec, rows))


def document_from_matrix(m: MatrixOverField) -> InstanceDocument:
    """Canonical document for a matrix over GF(p) or a single extension."""
    spec = m.field
    if len(spec.tower) > 1:
        raise ValueError("only prime fields and single extensions have a document form")
    ext = None
    if spec.tower:
        ext = tuple(int(c) for c in spec.tower[0])
    rows = []
    for i in range(m.nrows):
        row = []
        for lab in m.labels:
            data = m.ops.decode(m.columns[lab][i])
            row.append((data,) if ext is None else tuple(int(c) for c in data))
        rows.append(tuple(row))
    return InstanceDocument(kind="matrix", p=spec.p, ext=ext, rows=tuple(rows))


# ---------------------------------------------------------------------------
# Result documents


def emit_result(doc: ResultDocument) -> str:
    lines = [f"width {doc.width}"]
    lines.append(("order " + " ".join(str(i) for i in doc.order)).rstrip())
    lines.append(("lambda " + " ".join(str(l) for l in doc.lambdas)).rstrip())
    if doc.stats is not None:
        oc, rq, ms = doc.stats
        lines.append(f"stats oracle_calls={oc} rank_queries={rq} ms={ms}")
    return "\n".join(lines) + "\n"


def parse_result(text: str) -> ResultDocument:
    width = None
    order: Optional[Tuple[int, ...]] = None
    lambdas: Optional[Tuple[int, ...]] = None
    stats = None
    for lineno, line in _logical_lines(text):
        toks = line.split()
        key = toks[0]
        if key == "width":
            if len(toks) != 2:
                raise ParseError(lineno, "width line needs one value")
            width = _int(toks[1], lineno, "width")
        elif key == "order":
            order = tuple(_int(tk, lineno, "order index") for tk in toks[1:])
        elif key == "lambda":
            lambdas = tuple(_int(tk, lineno, "lambda value") for tk in toks[1:])
        elif key == "stats":
            vals = {}
            for tk in toks[1:]:
                if "=" not in tk:
                    raise ParseError(lineno, f"stats token {tk!r} needs key=value")
                k, v = tk.split("=", 1)
                vals[k] = _int(v, lineno, "stats value")
            try:
                stats = (vals["oracle_calls"], vals["rank_queries"], vals["ms"])
            except KeyError as missing:
                raise ParseError(lineno, f"stats line missing {missing}") from None
        else:
            raise ParseError(lineno, f"unknown result line {key!r}")
    if width is None or order is None or lambdas is None:
        raise ParseError(1, "result needs width, order and lambda lines")
    if len(lambdas) != max(len(order) - 1, 0):
        raise ParseError(1, "lambda list length must be n - 1")
    if lambdas and max(lambdas) != width or (not lambdas and width != 0):
        raise ParseError(1, "width must equal max of lambda list")
    return ResultDocument(width, order, lambdas, stats)
