"""Exact-arithmetic toolkit for defining the integers from discrete sets."""
from .numeric import (
    DiscreteSet,
    Interval,
    Rational,
    TaggedFunction,
    format_rational,
    load_function,
    load_set,
    min_gap,
    parse_rational,
    simplest_between,
)

__all__ = [
    "DiscreteSet",
    "Interval",
    "Rational",
    "TaggedFunction",
    "format_rational",
    "load_function",
    "load_set",
    "min_gap",
    "parse_rational",
    "simplest_between",
]
__version__ = "0.1.0"
