from __future__ import annotations

import pytest

from matroidpw.generators import graphic_matroid, named
from matroidpw.instancefmt import (
    InstanceDocument,
    ParseError,
    ResultDocument,
    build_matroid,
    document_from_matrix,
    emit_instance,
    emit_result,
    instance_field,
    parse_instance,
    parse_result,
)


def test_parse_matrix_prime_field():
    text = "field 3\nmatrix 2 4\n1 0 1 2\n0 1 1 1\n"
    doc = parse_instance(text)
    assert doc.kind == "matrix" and doc.p == 3 and doc.ext is None
    assert doc.n_elements == 4
    assert doc.rows[0] == ((1,), (0,), (1,), (2,))
    m = build_matroid(doc)
    assert m.size == 4 and m.full_rank() == 2
    assert m.ground_set == frozenset([1, 2, 3, 4])
    assert instance_field(doc).size == 3


def test_parse_matrix_extension_field():
    # GF(4) via x^2 + x + 1; entries are colon-joined coefficient tuples
    text = "field 2 2 1 1 1\nmatrix 2 3\n1:0 0:1 1:1\n0:0 1:0 0:1\n"
    doc = parse_instance(text)
    assert doc.ext == (1, 1, 1)
    assert doc.rows[0] == ((1, 0), (0, 1), (1, 1))
    assert instance_field(doc).size == 4
    m = build_matroid(doc)
    assert m.size == 3 and m.full_rank() == 2


def test_parse_graph():
    text = "graph 4 4\n1 2\n2 3\n3 4\n4 1\n"
    doc = parse_instance(text)
    assert doc.kind == "graph" and doc.vertices == 4
    assert doc.edges == ((1, 2), (2, 3), (3, 4), (4, 1))
    m = build_matroid(doc)
    ref = graphic_matroid(4, list(doc.edges))
    assert m.matrix.columns == ref.matrix.columns
    assert instance_field(doc).size == 2


def test_comments_and_blank_lines_ignored():
    text = "# cycle\n\ngraph 3 3  # header\n1 2\n\n2 3\n3 1\n# done\n"
    doc = parse_instance(text)
    assert len(doc.edges) == 3


@pytest.mark.parametrize(
    "text,lineno,frag",
    [
        ("", 1, "empty"),
        ("widget 1\n", 1, "expected 'field' or 'graph'"),
        ("graph 0 0\n", 1, "V >= 1"),
        ("graph 2 1\n1 3\n", 2, "outside 1..2"),
        ("graph 2 1\n1\n", 2, "exactly 'u v'"),
        ("graph 2 1\n1 2\n3 4\n", 3, "trailing content"),
        ("graph 2 2\n1 2\n", 1, "expected 2 edge lines"),
        ("field 4\nmatrix 1 1\n1\n", 1, "not prime"),
        ("field x\nmatrix 1 1\n1\n", 1, "not an integer"),
        ("field 2 2 1 1\nmatrix 1 1\n1:0\n", 1, "needs 3 coefficients"),
        ("field 2 2 1 0 1\nmatrix 1 1\n1:0\n", 1, "reducible"),
        ("field 3 1 1 2\nmatrix 1 1\n1\n", 1, "monic"),
        ("field 3 1\nmatrix 1 1\n1\n", 1, "field line needs"),
        ("field 3\n", 1, "missing 'matrix"),
        ("field 3\nmatrix 0 2\n", 2, "R >= 1"),
        ("field 3\nmatrix 2 2\n1 2\n", 2, "expected 2 matrix rows"),
        ("field 3\nmatrix 1 2\n1 2 0\n", 3, "expected 2"),
        ("field 3\nmatrix 1 2\n1 3\n", 3, "outside [0,3)"),
        ("field 3\nmatrix 1 2\n1 1:2\n", 3, "plain integer"),
        ("field 2 2 1 1 1\nmatrix 1 1\n1\n", 3, "colon-joined"),
        ("field 3\nmatrix 1 1\n1\nextra\n", 4, "trailing content"),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno, frag):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert str(exc.value).startswith(f"line {lineno}:")
    assert frag in str(exc.value)


def test_emit_parse_roundtrip():
    docs = [
        parse_instance("field 3\nmatrix 2 4\n1 0 1 2\n0 1 1 1\n"),
        parse_instance("field 2 2 1 1 1\nmatrix 2 3\n1:0 0:1 1:1\n0:0 1:0 0:1\n"),
        parse_instance("graph 4 4\n1 2\n2 3\n3 4\n4 1\n"),
    ]
    for doc in docs:
        text = emit_instance(doc)
        assert parse_instance(text) == doc
        assert emit_instance(parse_instance(text)) == text


def test_document_from_matrix_roundtrip():
    for name in ("u24", "fano", "k4"):
        m = named(name)
        doc = document_from_matrix(m.matrix)
        m2 = build_matroid(doc)
        for lab in sorted(m.elems):
            assert m2.matrix.columns[lab] == m.matrix.columns[lab]


def test_emit_result_and_parse_result():
    doc = ResultDocument(2, (1, 3, 2, 4), (1, 2, 1), stats=(7, 120, 5))
    text = emit_result(doc)
    assert text == (
        "width 2\norder 1 3 2 4\nlambda 1 2 1\n"
        "stats oracle_calls=7 rank_queries=120 ms=5\n"
    )
    assert parse_result(text) == doc
    bare = ResultDocument(0, (1,), ())
    assert parse_result(emit_result(bare)) == bare


def test_parse_result_validation():
    with pytest.raises(ParseError):
        parse_result("width 2\norder 1 2\n")
    with pytest.raises(ParseError):
        parse_result("width 2\norder 1 2 3\nlambda 1\n")
    with pytest.raises(ParseError):
        parse_result("width 2\norder 1 2 3\nlambda 1 1\n")
    with pytest.raises(ParseError):
        parse_result("width 1\norder 1 2\nlambda 1\nmystery 3\n")
    with pytest.raises(ParseError):
        parse_result("width 1\norder 1 2\nlambda 1\nstats oracle_calls=1\n")
    with pytest.raises(ParseError):
        parse_result("width 1\norder 1 2\nlambda 1\nstats bad\n")


def test_emit_instance_unknown_kind():
    with pytest.raises(ValueError):
        emit_instance(InstanceDocument(kind="widget"))
