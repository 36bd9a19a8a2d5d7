"""Exact rational arithmetic, intervals and the finite set/function containers.

Everything is built on :class:`fractions.Fraction`, which already keeps
values in lowest terms with a positive denominator.
"""
from __future__ import annotations

import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, PreconditionError, ValidationError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or an integer into a canonical Fraction."""
    token = text.strip()
    m = _RATIONAL_RE.match(token)
    if m is None:
        raise ParseError(f"malformed rational {token!r}", token=token)
    sign, num, den = m.groups()
    q = int(den) if den is not None else 1
    if q == 0:
        raise ParseError(f"zero denominator in {token!r}", token=token)
    p = int(num)
    return Fraction(-p if sign else p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_rational(x) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    return Fraction(x)


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Return the rational with least denominator strictly inside ``(lo, hi)``.

    Walks the Stern-Brocot tree via continued fractions. Among the rationals
    of least denominator the one of least absolute numerator is returned.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise PreconditionError(f"empty interval ({lo}, {hi})")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    return _simplest_positive(lo, hi)


def _simplest_positive(lo: Fraction, hi: Fraction | None) -> Fraction:
    # 0 <= lo < hi; hi None stands for +infinity
    fl = lo.numerator // lo.denominator
    if hi is None or fl + 1 < hi:
        return Fraction(fl + 1)
    # (lo, hi) sits inside [fl, fl + 1]: write x = fl + 1/y and recurse on y
    y_lo = 1 / (hi - fl)
    y_hi = None if lo == fl else 1 / (lo - fl)
    return fl + 1 / _simplest_positive(y_lo, y_hi)


@dataclass(frozen=True)
class Interval:
    """An interval with rational endpoints and per-side openness.

    ``lower == upper`` is allowed only for a closed point or, with
    ``empty=True``, for the empty interval.
    """

    lower: Fraction
    upper: Fraction
    lower_open: bool = True
    upper_open: bool = True
    empty: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lower", Fraction(self.lower))
        object.__setattr__(self, "upper", Fraction(self.upper))
        if self.empty:
            return
        if self.lower > self.upper:
            raise ValidationError(f"interval lower {self.lower} > upper {self.upper}")
        if self.lower == self.upper and (self.lower_open or self.upper_open):
            raise ValidationError("degenerate interval must be closed or flagged empty")

    @classmethod
    def open(cls, lower, upper) -> "Interval":
        return cls(as_rational(lower), as_rational(upper), True, True)

    @classmethod
    def closed(cls, lower, upper) -> "Interval":
        return cls(as_rational(lower), as_rational(upper), False, False)

    @classmethod
    def make_empty(cls) -> "Interval":
        return cls(Fraction(0), Fraction(0), True, True, empty=True)

    @property
    def width(self) -> Fraction:
        return Fraction(0) if self.empty else self.upper - self.lower

    def __contains__(self, x) -> bool:
        if self.empty:
            return False
        x = Fraction(x)
        above = x > self.lower if self.lower_open else x >= self.lower
        below = x < self.upper if self.upper_open else x <= self.upper
        return above and below

    def __str__(self):
        if self.empty:
            return "{}"
        left = "(" if self.lower_open else "["
        right = ")" if self.upper_open else "]"
        return f"{left}{format_rational(self.lower)}, {format_rational(self.upper)}{right}"


@dataclass(frozen=True)
class DiscreteSet:
    """A finite, strictly increasing tuple of rationals.

    Use :meth:`of` to build one from unsorted input; the constructor itself
    only validates.
    """

    elements: tuple = ()
    positive_only: bool = False

    def __post_init__(self):
        elems = tuple(Fraction(x) for x in self.elements)
        object.__setattr__(self, "elements", elems)
        for a, b in zip(elems, elems[1:]):
            if not a < b:
                raise ValidationError(f"elements not strictly increasing at {format_rational(b)}")
        if self.positive_only and elems and elems[0] <= 0:
            raise ValidationError(f"non-positive element {format_rational(elems[0])} in positive set")

    @classmethod
    def of(cls, values: Iterable, positive_only: bool | None = None) -> "DiscreteSet":
        """Sort ``values``; duplicates are rejected rather than merged."""
        vals = sorted(as_rational(v) for v in values)
        for a, b in zip(vals, vals[1:]):
            if a == b:
                raise ValidationError(f"duplicate element {format_rational(a)}")
        if positive_only is None:
            positive_only = bool(vals) and vals[0] > 0
        return cls(tuple(vals), positive_only)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        i = bisect_left(self.elements, x)
        return i < len(self.elements) and self.elements[i] == x

    def index(self, x) -> int:
        x = Fraction(x)
        i = bisect_left(self.elements, x)
        if i < len(self.elements) and self.elements[i] == x:
            return i
        raise ValueError(f"{format_rational(x)} not in set")

    def between(self, lo, hi, *, closed: bool = True) -> tuple:
        """Elements in ``[lo, hi]`` (or ``(lo, hi)`` when ``closed`` is False)."""
        if closed:
            i, j = bisect_left(self.elements, lo), bisect_right(self.elements, hi)
        else:
            i, j = bisect_right(self.elements, lo), bisect_left(self.elements, hi)
        return self.elements[i:j]

    def successor(self, x) -> Fraction | None:
        """Next element after ``x`` in the set order, or None for the maximum."""
        i = self.index(x)
        return self.elements[i + 1] if i + 1 < len(self.elements) else None

    @property
    def min(self) -> Fraction:
        return self.elements[0]

    @property
    def max(self) -> Fraction:
        return self.elements[-1]


@dataclass(frozen=True)
class TaggedFunction:
    """A finite exact map ``domain[i] -> values[i]``."""

    domain: DiscreteSet
    values: tuple
    _lookup: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != len(self.domain):
            raise ValidationError(
                f"function has {len(vals)} values for {len(self.domain)} domain points"
            )
        object.__setattr__(self, "_lookup", dict(zip(self.domain.elements, vals)))

    @classmethod
    def from_pairs(cls, pairs: Iterable, positive_only: bool | None = None) -> "TaggedFunction":
        pairs = sorted((as_rational(x), as_rational(y)) for x, y in pairs)
        dom = DiscreteSet.of([x for x, _ in pairs], positive_only=positive_only)
        return cls(dom, tuple(y for _, y in pairs))

    def __call__(self, x) -> Fraction:
        try:
            return self._lookup[Fraction(x)]
        except KeyError:
            raise ValidationError(f"{format_rational(Fraction(x))} not in function domain") from None

    def items(self):
        return zip(self.domain.elements, self.values)

    def image(self) -> list:
        return sorted(set(self.values))


def _content_lines(lines: Iterable[str]) -> Iterator[tuple]:
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def load_set(lines: Sequence[str]) -> DiscreteSet:
    """Read the set file format: one rational per line, ``#`` comments."""
    return DiscreteSet.of(parse_rational(line) for _, line in _content_lines(lines))


def load_function(lines: Sequence[str]) -> TaggedFunction:
    """Read the function file format: ``domain<TAB>value`` per line."""
    pairs = []
    for lineno, line in _content_lines(lines):
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError(f"expected two tab-separated rationals, got {line!r}", line=lineno, column=1)
        pairs.append((parse_rational(parts[0]), parse_rational(parts[1])))
    return TaggedFunction.from_pairs(pairs)


def dump_set(D: DiscreteSet) -> str:
    return "".join(format_rational(x) + "\n" for x in D)


def dump_function(f: TaggedFunction) -> str:
    return "".join(f"{format_rational(x)}\t{format_rational(y)}\n" for x, y in f.items())


def min_gap(D: DiscreteSet) -> Fraction:
    if len(D) < 2:
        raise PreconditionError("min_gap needs at least two elements")
    return min(b - a for a, b in zip(D.elements, D.elements[1:]))
