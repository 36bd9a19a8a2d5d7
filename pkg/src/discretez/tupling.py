"""Fold ``n``-tuples from a unit-spaced positive set into single points.

``interleave(x0, xs)`` keeps ``x0`` as the integer-scale part and tucks the
coordinates in at geometrically shrinking scales, so with ``x0`` the tuple
maximum the map is injective.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import PreconditionError
from .normalize import Bijection
from .numeric import DiscreteSet, as_rational


def interleave(x0, xs: Sequence, n: int | None = None) -> Fraction:
    """``x0 + sum(xs[i-1] / (n*x0)**i for i in 1..n)``."""
    x0 = as_rational(x0)
    xs = [as_rational(x) for x in xs]
    if n is None:
        n = len(xs)
    if x0 <= 0:
        raise PreconditionError("interleave needs x0 > 0")
    if n < 1 or len(xs) != n:
        raise PreconditionError(f"expected {n} >= 1 coordinates, got {len(xs)}")
    base = n * x0
    total = x0
    scale = Fraction(1)
    for x in xs:
        scale /= base
        total += x * scale
    return total


def tuple_point(tup: Sequence) -> Fraction:
    return interleave(max(tup), tup, len(tup))


def tuple_encode(D: DiscreteSet, n: int):
    """Image of ``D**n`` under :func:`tuple_point` plus the tuple<->point record.

    Tuples are enumerated lexicographically; ``Bijection.source`` holds the
    tuples and ``target`` their points.
    """
    if n < 1:
        raise PreconditionError("tuple_encode needs n >= 1")
    if len(D) and (not D.positive_only or D.min <= 0):
        raise PreconditionError("tuple_encode needs a positive set")
    for a, b in zip(D.elements, D.elements[1:]):
        if b - a < 1:
            raise PreconditionError(
                "adjacent elements closer than 1; normalize with space_out first"
            )
    tuples = tuple(product(D.elements, repeat=n))
    points = tuple(tuple_point(t) for t in tuples)
    image = DiscreteSet.of(points, positive_only=True)
    return image, Bijection(tuples, points)
