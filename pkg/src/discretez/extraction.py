"""Asymptotic extraction of the naturals from families of near-unit rulers.

A *ruler family* is a finite list of parameter tuples ``b`` with positive
fibers ``S_b``.  A fiber is a ruler at tolerance ``eps`` when distinct points
are at least ``1 - eps`` apart and neighbours at most ``1 + eps`` apart.
``w_test`` decides membership of ``c`` in the extracted set over a finite,
decreasing tolerance schedule.
"""
from __future__ import annotations

import warnings
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import PreconditionError, ValidationError
from .numeric import DiscreteSet, as_rational, format_rational, parse_rational

HALF = Fraction(1, 2)


def _check_eps(eps) -> Fraction:
    eps = as_rational(eps)
    if not 0 < eps < HALF:
        raise PreconditionError(f"eps = {format_rational(eps)} outside (0, 1/2)")
    return eps


def is_ruler(fiber: DiscreteSet, eps) -> bool:
    eps = _check_eps(eps)
    e = fiber.elements
    for a, b in zip(e, e[1:]):
        # adjacent gaps bound every pairwise distance from below
        if b - a < 1 - eps or b - a > 1 + eps:
            return False
    return True


def normalize_ruler(fiber: DiscreteSet) -> DiscreteSet:
    """Shift ``fiber`` so its least element is 0."""
    if len(fiber) == 0:
        raise PreconditionError("cannot normalize an empty fiber")
    low = fiber.min
    return DiscreteSet(tuple(a - low for a in fiber))


@dataclass(frozen=True)
class RulerFamily:
    parameters: tuple
    fibers: tuple

    def __post_init__(self):
        if len(self.parameters) != len(self.fibers):
            raise ValidationError("parameters and fibers differ in length")
        for b, S in zip(self.parameters, self.fibers):
            if len(S) == 0 or S.min <= 0:
                raise ValidationError(f"fiber for {b} must be nonempty and positive")

    def __len__(self):
        return len(self.parameters)

    @cached_property
    def normalized(self) -> tuple:
        return tuple(normalize_ruler(S) for S in self.fibers)

    def to_json(self) -> dict:
        return {
            "parameters": [[format_rational(x) for x in b] for b in self.parameters],
            "fibers": [[format_rational(x) for x in S] for S in self.fibers],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RulerFamily":
        params = tuple(tuple(parse_rational(x) for x in b) for b in obj["parameters"])
        fibers = tuple(DiscreteSet(tuple(parse_rational(x) for x in S), positive_only=True)
                       for S in obj["fibers"])
        return cls(params, fibers)


def sliding_windows(D: DiscreteSet, min_span: int = 2) -> list:
    """All windows ``(D[i], D[k])`` with ``k - i >= min_span``, in lexicographic order."""
    e = D.elements
    return [(e[i], e[k]) for i in range(len(e)) for k in range(i + min_span, len(e))]


def gap_family(D: DiscreteSet, windows: Sequence, unit, negate: bool = False) -> RulerFamily:
    """Fibers ``{(d - low)/unit : d in D, low < d < high}`` for each window.

    With ``negate`` the set is reflected first, for sequences whose limiting
    gap is negative.  Windows with empty fibers are dropped with a warning.
    """
    unit = as_rational(unit)
    if unit <= 0:
        raise PreconditionError("unit must be positive")
    if negate:
        D = DiscreteSet.of(-d for d in D)
    params, fibers = [], []
    for low, high in windows:
        low, high = as_rational(low), as_rational(high)
        if not low < high:
            raise PreconditionError(f"window ({low}, {high}) has low >= high")
        inside = D.between(low, high, closed=False)
        if not inside:
            warnings.warn(f"window ({format_rational(low)}, {format_rational(high)}) "
                          "has no interior point; dropped", stacklevel=2)
            continue
        params.append((low, high, unit))
        fibers.append(DiscreteSet(tuple((d - low) / unit for d in inside), positive_only=True))
    return RulerFamily(tuple(params), tuple(fibers))


def _meets(S: DiscreteSet, lo: Fraction, hi: Fraction) -> bool:
    i = bisect_right(S.elements, lo)
    return i < len(S.elements) and S.elements[i] < hi


def w_test(family: RulerFamily, c, schedule: Sequence):
    """Check ``for every eps in schedule, some ruler in the family has a normalized point near c``.

    Returns ``(verdict, witnesses)`` where ``witnesses`` pairs each eps with
    the first parameter tuple that works, or None.
    """
    c = as_rational(c)
    schedule = [_check_eps(e) for e in schedule]
    witnesses = []
    verdict = True
    for eps in schedule:
        found = None
        for b, S, S0 in zip(family.parameters, family.fibers, family.normalized):
            if _meets(S0, c - eps, c + eps) and is_ruler(S, eps):
                found = b
                break
        witnesses.append((eps, found))
        if found is None:
            verdict = False
    return verdict, witnesses


def arithmetic_set(unit, count: int, perturb=None) -> DiscreteSet:
    """``{i*unit : 1 <= i <= count}``, optionally plus ``perturb(i)`` on each element."""
    unit = as_rational(unit)
    vals = [i * unit + (as_rational(perturb(i)) if perturb else 0) for i in range(1, count + 1)]
    return DiscreteSet.of(vals)
