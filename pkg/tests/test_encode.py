from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import positive_sets
from discretez.encode import Encoding, anchor_below, capture, choose_anchors, decode, encode
from discretez.errors import DomainError, PreconditionError, ValidationError
from discretez.numeric import DiscreteSet


def P(*xs):
    return DiscreteSet.of(xs, positive_only=True)


@pytest.mark.parametrize("D,a,expected", [
    (P(F(1, 2), F(3, 4)), 2, ()),
    (P(F(1, 2), F(3, 4)), 5, (F(1, 2), F(3, 4))),
    (P(10), 5, ()),
])
def test_capture(D, a, expected):
    assert capture(D, a).elements == expected


def test_capture_rejects_nonpositive():
    with pytest.raises(PreconditionError):
        capture(P(1), 0)


def _brute_capture(D, a):
    return tuple(d for d in D if d < a and all(e == d or abs(e - d) >= 1 / a for e in D))


@given(positive_sets(), st.fractions(F(1, 10), 80), st.fractions(F(1, 10), 80))
def test_capture_monotone(D, a, b):
    a1, a2 = min(a, b), max(a, b)
    assert capture(D, a1).elements == _brute_capture(D, a1)
    assert set(capture(D, a1)) <= set(capture(D, a2))


def test_choose_anchors():
    A = choose_anchors(P(F(1, 2), F(3, 4)))
    assert A.elements == (F(1, 2), 3, 5)
    assert choose_anchors(P(1, 2, 3)).elements == (1, 2, 3, 4)
    A = choose_anchors(P(5))
    assert A.max > 5


@given(positive_sets())
def test_choose_anchors_spacing_and_capture(D):
    A = choose_anchors(D)
    assert all(b - a >= 1 for a, b in zip(A, A.elements[1:]))
    assert capture(D, A.max) == D


def test_encode_example():
    D = P(F(1, 2), F(3, 4))
    enc = encode(D, anchors=P(2, 5))
    assert enc.payload(2) == ()
    assert enc.payload(5) == (F(51, 10), F(103, 20))
    assert enc.E.elements == (-5, -2, F(51, 10), F(103, 20))
    assert decode(enc, F(51, 10)) == F(1, 2)
    assert decode(enc, F(103, 20)) == F(3, 4)
    assert decode(enc, -2) == F(1, 2)
    with pytest.raises(DomainError):
        decode(enc, 7)


def test_encode_single_and_empty():
    enc = encode(P(1), anchors=P(2))
    assert enc.payload(2) == (F(5, 2),)
    assert enc.E.elements == (-2, F(5, 2))
    empty = encode(DiscreteSet((), positive_only=True))
    assert len(empty.F) == 0
    assert empty.E.elements == tuple(-a for a in reversed(empty.A.elements))


def test_encode_rejects_bad_anchors():
    with pytest.raises(PreconditionError):
        encode(P(1), anchors=P(2, F(5, 2)))
    with pytest.raises(PreconditionError):
        encode(P(F(1, 2), F(3, 4)), anchors=P(2))


@pytest.mark.parametrize("x,expected", [(F(51, 10), 5), (1, 0), (2, 0), (F(5, 2), 2)])
def test_anchor_below(x, expected):
    assert anchor_below(P(2, 5), x) == expected


@given(positive_sets())
def test_round_trip_and_windows(D):
    enc = encode(D)
    assert {decode(enc, x) for x in enc.E} == set(D)
    anchors = enc.A.elements
    for i, a in enumerate(anchors):
        succ = anchors[i + 1] if i + 1 < len(anchors) else None
        assert all(a < x < a + 1 for x in enc.payload(a))
        inside = [x for x in enc.E if x > a and (succ is None or x < succ)]
        assert len(inside) == len(enc.capture_map[a])
    for x in enc.F:
        owners = [a for a in anchors if a < x < a + 1]
        assert len(owners) == 1
    assert [x for x in enc.E if x > 0] == list(enc.F)
    assert sorted(-x for x in enc.E if x < 0) == list(anchors)


def test_encoding_json_round_trip():
    enc = encode(P(F(1, 2), F(3, 4), 7))
    obj = enc.to_json()
    assert Encoding.from_json(obj).to_json() == obj
    obj["F"] = obj["F"][:-1]
    with pytest.raises(ValidationError):
        Encoding.from_json(obj)
