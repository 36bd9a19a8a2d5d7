"""Pack a positive discrete set into a set that is closed in the reals.

Anchors ``A`` are spaced at least 1 apart.  For each anchor ``a`` the points
of ``D`` below ``a`` that are isolated at radius ``1/a`` are packed into the
window ``(a, a + 1)`` as ``a + d/a``.  Negated anchors are stored alongside
so the anchors can be read back off the encoded set.
"""
from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PreconditionError, ValidationError
from .normalize import space_out
from .numeric import DiscreteSet, as_rational, format_rational, min_gap, parse_rational


def capture(D: DiscreteSet, a) -> DiscreteSet:
    """Points of ``D`` below ``a`` whose open ``1/a``-ball meets ``D`` only in themselves."""
    a = as_rational(a)
    if a <= 0:
        raise PreconditionError("capture needs a > 0")
    r = 1 / a
    e = D.elements
    out = []
    for i, d in enumerate(e):
        if not d < a:
            break
        if i > 0 and d - e[i - 1] < r:
            continue
        if i + 1 < len(e) and e[i + 1] - d < r:
            continue
        out.append(d)
    return DiscreteSet(tuple(out), positive_only=D.positive_only)


def choose_anchors(D: DiscreteSet) -> DiscreteSet:
    """``space_out(D)`` extended by integers until the top anchor captures all of ``D``."""
    if not D.positive_only or len(D) == 0:
        raise PreconditionError("choose_anchors needs a nonempty positive set")
    A = list(space_out(D)[0].elements)
    bound = max(A[-1], D.max)
    if len(D) >= 2:
        bound = max(bound, 1 / min_gap(D))
    # first integer strictly above the bound, and at least 1 above the top anchor
    nxt = max(math.floor(bound) + 1, math.ceil(A[-1] + 1))
    while len(capture(D, A[-1])) != len(D):
        A.append(Fraction(nxt))
        nxt += 1
    return DiscreteSet(tuple(A), positive_only=True)


@dataclass(frozen=True)
class Encoding:
    D: DiscreteSet
    A: DiscreteSet
    F: DiscreteSet
    E: DiscreteSet
    capture_map: dict  # anchor -> DiscreteSet B_a

    def payload(self, a) -> tuple:
        """``C_a``: the packed points of anchor ``a``."""
        a = Fraction(a)
        return tuple(a + d / a for d in self.capture_map[a])

    def to_json(self) -> dict:
        fmt = lambda xs: [format_rational(x) for x in xs]
        return {
            "D": fmt(self.D),
            "A": fmt(self.A),
            "F": fmt(self.F),
            "E": fmt(self.E),
            "capture": {format_rational(a): fmt(B) for a, B in self.capture_map.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Encoding":
        parse = lambda xs: tuple(parse_rational(x) for x in xs)
        D = DiscreteSet(parse(obj["D"]), positive_only=True)
        A = DiscreteSet(parse(obj["A"]), positive_only=True)
        cap = {parse_rational(k): DiscreteSet(parse(v), positive_only=True)
               for k, v in obj["capture"].items()}
        enc = cls(D, A, DiscreteSet(parse(obj["F"]), positive_only=True), DiscreteSet(parse(obj["E"])), cap)
        if encode(D, anchors=A).to_json() != enc.to_json():
            raise ValidationError("encoding JSON is inconsistent with its D and A")
        return enc


def _check_anchors(A: DiscreteSet):
    if len(A) == 0 or A.min <= 0:
        raise PreconditionError("anchors must be a nonempty positive set")
    for a, b in zip(A.elements, A.elements[1:]):
        if b - a < 1:
            raise PreconditionError(f"anchors {format_rational(a)} and {format_rational(b)} closer than 1")


def encode(D: DiscreteSet, anchors: DiscreteSet | None = None) -> Encoding:
    """Build ``B_a``, ``C_a``, ``F`` and ``E = F | -A`` for a positive set ``D``.

    ``anchors`` defaults to :func:`choose_anchors` (or ``{1}`` for empty ``D``).
    Supplied anchors must be spaced at least 1 apart and must capture all of
    ``D`` at the top anchor.
    """
    if len(D) and not D.positive_only:
        raise PreconditionError("encode needs a positive_only set")
    if anchors is None:
        anchors = choose_anchors(D) if len(D) else DiscreteSet((Fraction(1),), positive_only=True)
    _check_anchors(anchors)
    cap = {a: capture(D, a) for a in anchors}
    if len(cap[anchors.max]) != len(D):
        raise PreconditionError("top anchor does not capture every point of D")
    F = []
    for a in anchors:
        F.extend(a + d / a for d in cap[a])
    F = DiscreteSet(tuple(F), positive_only=True)
    E = DiscreteSet(tuple(-a for a in reversed(anchors.elements)) + F.elements)
    return Encoding(D, anchors, F, E, cap)


def anchor_below(A: DiscreteSet, x) -> Fraction:
    """Largest ``a`` in ``A`` with ``a < x``, or 0 when there is none."""
    x = as_rational(x)
    i = bisect_left(A.elements, x)
    return A.elements[i - 1] if i > 0 else Fraction(0)


def unpack(A: DiscreteSet, x) -> Fraction:
    """``h(x) * (x - h(x))`` with ``h`` = :func:`anchor_below`."""
    x = as_rational(x)
    h = anchor_below(A, x)
    return h * (x - h)


def decode(enc: Encoding, x) -> Fraction:
    """Map a point of ``E`` back to ``D``; anchor points go to ``min D``."""
    x = as_rational(x)
    if x not in enc.E:
        raise DomainError(f"{format_rational(x)} is not in E")
    if x > 0:
        return unpack(enc.A, x)
    if len(enc.D) == 0:
        raise DomainError("D is empty, so there is no default value")
    return enc.D.min
