from __future__ import annotations

import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from embedprob import linalg
from embedprob.counting import p_binom
from embedprob.shapes import (
    ModuleShape,
    PrimePower,
    ValidationError,
    ceil_log,
    floor_log,
    iter_shapes,
    parse_shape,
    render_shape,
    valid_mus,
)

vectors = st.lists(st.lists(st.integers(0, 2), min_size=4, max_size=4), max_size=5)


@given(vectors)
def test_rref_is_canonical(rows):
    basis = linalg.rref(rows, 3)
    assert linalg.rref(list(reversed(basis)), 3) == basis
    assert all(linalg.in_span(r, basis, 3) for r in rows)
    assert len(basis) == linalg.rank(rows, 3)


@given(vectors, vectors)
def test_intersection_dimension_formula(a, b):
    A, B = linalg.rref(a, 3), linalg.rref(b, 3)
    meet = linalg.intersect(A, B, 3)
    assert len(meet) == len(A) + len(B) - len(linalg.sum_space(A, B, 3))
    assert all(linalg.in_span(v, A, 3) and linalg.in_span(v, B, 3) for v in meet)


@given(vectors)
def test_kernel_vectors_annihilate(rows):
    for c in linalg.kernel(rows, 3):
        assert not any(linalg.combo(c, rows, 3, 4))
    if rows:
        assert len(linalg.kernel(rows, 3)) == len(rows) - linalg.rank(rows, 3)


@pytest.mark.parametrize("dim,k,p", [(4, 2, 2), (3, 1, 3), (5, 3, 2), (0, 0, 5)])
def test_iter_rref_counts_match_gaussian_binomial(dim, k, p):
    spaces = list(linalg.iter_rref(dim, k, p))
    assert len(spaces) == len(set(spaces)) == p_binom(dim, k, p) == linalg.gaussian_count(dim, k, p)


def test_parse_shape_examples():
    pp = PrimePower(2, 2)
    assert parse_shape("1") == ModuleShape.of({1: 1})
    assert parse_shape(" 1^2 , 2,4", pp) == ModuleShape.of({1: 2, 2: 1, 4: 1})
    assert parse_shape("0") == ModuleShape()


@pytest.mark.parametrize("text,needle", [("5", "'5'"), ("0^2", "'0^2'"), ("1,x", "'x'"), ("2^", "'2^'")])
def test_parse_shape_errors_name_the_token(text, needle):
    with pytest.raises(ValidationError, match=re.escape(needle)):
        parse_shape(text, PrimePower(2, 2))


def test_parse_shape_distinct_messages():
    msgs = set()
    for text in ("5", "0", "1,,"):
        try:
            parse_shape(text + ",1" if text == "0" else text, PrimePower(2, 2))
        except ValidationError as exc:
            msgs.add(str(exc).split(":")[-1])
    assert len(msgs) == 3


def test_render_round_trip_over_desk_shapes():
    for M in iter_shapes(9, 6):
        assert parse_shape(render_shape(M)) == M


def test_shape_stats_and_deltas():
    M = ModuleShape.of([1, 2, 4, 4])
    pp = PrimePower(2, 2)
    assert M.stats(pp) == (4, 2, 2, 11)
    assert M.deltas(4) == [4, 3, 2, 2]
    assert valid_mus(M, pp) == [1, 2, 4]


def test_primepower_validation():
    with pytest.raises(ValidationError):
        PrimePower(4, 1)
    with pytest.raises(ValidationError):
        PrimePower(3, 0)


@settings(max_examples=50)
@given(st.integers(1, 500), st.sampled_from([2, 3, 5]))
def test_log_helpers_bracket(i, p):
    assert p ** ceil_log(i, p) >= i
    assert ceil_log(i, p) == 0 or p ** (ceil_log(i, p) - 1) < i
    assert p ** floor_log(i, p) <= i < p ** (floor_log(i, p) + 1)
