"""Preprocessing of discrete sets: positivity shift, unit spacing, isolation.

Each map that changes a set returns a :class:`Bijection` recording the
element-wise correspondence so later stages can pull values back exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .numeric import DiscreteSet, as_rational


@dataclass(frozen=True)
class Bijection:
    """Finite element-wise map ``source[i] -> target[i]``."""

    source: tuple
    target: tuple

    @cached_property
    def _fwd(self):
        return dict(zip(self.source, self.target))

    @cached_property
    def _inv(self):
        return dict(zip(self.target, self.source))

    def forward(self, x):
        return self._fwd[x]

    def inverse(self, y):
        return self._inv[y]

    def as_dict(self) -> dict:
        return dict(self._fwd)


def shift_positive(D: DiscreteSet):
    """Move ``D`` into the positive reals, preserving order.

    Non-positive ``d`` goes to ``-1/(d - 1)`` in ``(0, 1]``; positive ``d``
    goes to ``1 + d``.
    """
    if len(D) == 0:
        raise PreconditionError("shift_positive needs a nonempty set")
    image = tuple(-1 / (d - 1) if d <= 0 else 1 + d for d in D)
    return DiscreteSet(image, positive_only=True), Bijection(D.elements, image)


def unshift(y: Fraction) -> Fraction:
    """Inverse of the :func:`shift_positive` map on a single value."""
    y = Fraction(y)
    if y <= 0:
        raise PreconditionError("shifted values are positive")
    return y - 1 if y > 1 else 1 - 1 / y


def space_out(D: DiscreteSet):
    """Rescale a positive set so that adjacent elements are at least 1 apart.

    ``d`` is multiplied by the largest inverse gap ``1/(succ(e) - e)`` over
    elements ``e < d``, or by 1 if that is larger.  The maximum element has
    no successor and contributes no gap, which costs nothing since a factor
    only consults elements below its argument.
    """
    if not D.positive_only:
        raise PreconditionError("space_out requires a positive_only set")
    factor = Fraction(1)
    image = []
    elems = D.elements
    for i, d in enumerate(elems):
        if i > 0:
            factor = max(factor, 1 / (d - elems[i - 1]))
        image.append(d * factor)
    image = tuple(image)
    return DiscreteSet(image, positive_only=True), Bijection(elems, image)


def isolate(D: DiscreteSet, eps) -> DiscreteSet:
    """Elements whose open ``eps``-neighbourhood meets ``D`` only in themselves."""
    eps = as_rational(eps)
    if eps <= 0:
        raise PreconditionError("isolate needs eps > 0")
    e = D.elements
    keep = []
    for i, d in enumerate(e):
        left_ok = i == 0 or d - e[i - 1] >= eps
        right_ok = i == len(e) - 1 or e[i + 1] - d >= eps
        if left_ok and right_ok:
            keep.append(d)
    return DiscreteSet(tuple(keep), positive_only=D.positive_only)


def spread(B: DiscreteSet) -> Fraction:
    """``max({1/(a-b), a-b : a > b in B} | {1})``, computed in one pass."""
    if len(B) < 2:
        return Fraction(1)
    widest = B.max - B.min
    narrowest = min(b - a for a, b in zip(B.elements, B.elements[1:]))
    return max(Fraction(1), widest, 1 / narrowest)


def default_schedule(eps, steps: int = 20) -> list:
    eps = as_rational(eps)
    return [eps / 2 ** (k + 1) for k in range(steps)]


def closedize(D: DiscreteSet, eps, schedule: Sequence | None = None) -> list:
    """Sample ``delta -> spread(isolate(D, delta))`` along a decreasing schedule.

    Returns ``[(delta, value), ...]`` in schedule order.
    """
    eps = as_rational(eps)
    if eps <= 0:
        raise PreconditionError("closedize needs eps > 0")
    schedule = default_schedule(eps) if schedule is None else [as_rational(s) for s in schedule]
    for s in schedule:
        if not 0 < s < eps:
            raise PreconditionError(f"schedule value {s} outside (0, {eps})")
    for a, b in zip(schedule, schedule[1:]):
        if not b < a:
            raise PreconditionError("schedule must be strictly decreasing")
    return [(delta, spread(isolate(D, delta))) for delta in schedule]
