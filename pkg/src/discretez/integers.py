"""Defining the integers from a discrete set and a function with dense image.

Given a positive discrete ``D`` and ``f: D -> (1, 2)``, a *ladder* is an
increasing run ``d_1 < ... < d_n`` in ``D`` whose nesting intervals

    lo(d, k) = f(d) * (1 + d**-2 / (k + 1/k))
    hi(d, k) = f(d) * (1 + d**-2 / k)

shrink strictly, with ``d_k > d_{k-1}**49`` and a separation condition on
the points of ``D`` in between.  A level ``c`` inside the deepest interval
makes ``nu_c(d) = d**-2 f(d) / (c - f(d))`` land ``d_m`` in ``(m, m + 1/m)``,
and differences of ``nu_c`` values then approximate ``0, 1, ..., n``.

Seventh roots are never taken: ``u < x**(1/7)`` is decided as ``u**7 < x``.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    DependenceError,
    InsufficientDensityError,
    PreconditionError,
    SingularityError,
    ValidationError,
)
from .normalize import space_out
from .numeric import (
    DiscreteSet,
    Interval,
    TaggedFunction,
    as_rational,
    format_rational,
    parse_rational,
    simplest_between,
)
from .tupling import tuple_encode

GROWTH = 49
ROOT = 7


def lo_bound(fd: Fraction, d: Fraction, k: int) -> Fraction:
    return fd * (1 + 1 / (d * d) / (k + Fraction(1, k)))


def hi_bound(fd: Fraction, d: Fraction, k: int) -> Fraction:
    return fd * (1 + 1 / (d * d) / k)


def sandwiched(fd: Fraction, d: Fraction, c: Fraction) -> bool:
    """``f(d) < c < f(d) * (1 + d**-2)``."""
    return fd < c < fd * (1 + 1 / (d * d))


# -- phi, A_c, nu -----------------------------------------------------------

def active_points(D: DiscreteSet, f: TaggedFunction, c) -> list:
    """Points ``u`` of ``D`` whose sandwich interval contains ``c``."""
    c = as_rational(c)
    return [u for u, fu in zip(D.elements, map(f, D.elements)) if sandwiched(fu, u, c)]


def _phi_active(active: Sequence, x: Fraction, literal: bool) -> bool:
    for u in active:
        if u ** ROOT < x:
            continue
        if u > x or (not literal and u == x):
            continue
        return False
    return True


def phi(D: DiscreteSet, f: TaggedFunction, x, c, literal: bool = False) -> bool:
    """Every active ``u`` lies below ``x**(1/7)`` or at/above ``x``.

    With ``literal=True`` the last disjunct is the strict ``u > x``.  In that
    form ``u = x`` always fails once ``x`` itself is active, so no point can
    ever pass :func:`candidate_set`; the default admits ``u = x``.
    """
    x = as_rational(x)
    if x <= 0:
        raise PreconditionError("phi needs x > 0")
    return _phi_active(active_points(D, f, c), x, literal)


def candidate_set(D: DiscreteSet, f: TaggedFunction, c, literal: bool = False) -> DiscreteSet:
    """``A_c``: active points ``d`` of ``D`` with ``phi(d, c)``."""
    c = as_rational(c)
    active = active_points(D, f, c)
    keep = tuple(d for d in active if _phi_active(active, d, literal))
    return DiscreteSet(keep, positive_only=D.positive_only)


def nu(f: TaggedFunction, c, d) -> Fraction:
    c, d = as_rational(c), as_rational(d)
    fd = f(d)
    if fd == c:
        raise SingularityError(format_rational(d))
    return (fd / (d * d)) / (c - fd)


# -- ladders ----------------------------------------------------------------

@dataclass(frozen=True)
class Ladder:
    """Points ``d_1 < ... < d_n`` with their ``f``-values.

    Only the shape is validated here; the nesting, separation and growth
    conditions are checked by :func:`verify_ladder`, which must be able to
    report on broken ladders.
    """

    points: tuple
    f_values: tuple

    def __post_init__(self):
        pts = tuple(Fraction(p) for p in self.points)
        vals = tuple(Fraction(v) for v in self.f_values)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "f_values", vals)
        if len(pts) != len(vals):
            raise ValidationError("ladder points and f_values differ in length")
        for a, b in zip(pts, pts[1:]):
            if not a < b:
                raise ValidationError("ladder points must be strictly increasing")

    @property
    def depth(self) -> int:
        return len(self.points)

    def point(self, k: int) -> Fraction:
        """1-based access, ``d_k``."""
        return self.points[k - 1]

    def value(self, k: int) -> Fraction:
        return self.f_values[k - 1]

    def lo(self, k: int) -> Fraction:
        return lo_bound(self.value(k), self.point(k), k)

    def hi(self, k: int) -> Fraction:
        return hi_bound(self.value(k), self.point(k), k)

    def prefix(self, depth: int) -> "Ladder":
        return Ladder(self.points[:depth], self.f_values[:depth])

    def to_json(self) -> dict:
        return {
            "ladder": [format_rational(p) for p in self.points],
            "f_values": [format_rational(v) for v in self.f_values],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Ladder":
        return cls(tuple(map(parse_rational, obj["ladder"])),
                   tuple(map(parse_rational, obj["f_values"])))


@dataclass(frozen=True)
class Violation:
    condition: str  # "i-lo", "i-hi", "i-bound", "ii", "iii", "domain", "range"
    detail: str

    def __str__(self):
        return f"({self.condition}) {self.detail}"


@dataclass
class LadderReport:
    violations: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def conditions(self) -> set:
        return {v.condition for v in self.violations}

    def __str__(self):
        if self.valid:
            return "ladder valid"
        return "ladder invalid:\n" + "\n".join(f"  {v}" for v in self.violations)


def _separated(fe: Fraction, e: Fraction, fdn: Fraction, dn: Fraction) -> bool:
    return fe * (1 + 1 / (e * e)) < fdn or fe > fdn * (1 + 1 / (dn * dn))


def _between_open(D: DiscreteSet, lo: Fraction, hi: Fraction) -> tuple:
    return D.between(lo, hi, closed=False)


def build_ladder(D: DiscreteSet, f: TaggedFunction, n: int) -> Ladder:
    """First-accept greedy search for a ladder of depth ``n``, ascending through ``D``."""
    if n < 1:
        raise PreconditionError("ladder depth must be >= 1")
    for d, fd in f.items():
        if not 1 < fd < 2:
            raise PreconditionError(f"f({format_rational(d)}) = {format_rational(fd)} outside (1, 2)")
    pts, vals = [], []
    for d in D:
        if hi_bound(f(d), d, 1) < 2:
            pts.append(d)
            vals.append(f(d))
            break
    else:
        raise InsufficientDensityError(n, 0)
    elems = D.elements
    for k in range(2, n + 1):
        prev, fprev = pts[-1], vals[-1]
        lo_prev, hi_prev = lo_bound(fprev, prev, k - 1), hi_bound(fprev, prev, k - 1)
        floor7 = prev ** ROOT
        start = bisect_right(elems, prev ** GROWTH)
        chosen = None
        for d in elems[start:]:
            fd = f(d)
            if not (lo_bound(fd, d, k) > lo_prev and hi_bound(fd, d, k) < hi_prev):
                continue
            if all(_separated(f(e), e, fd, d) for e in _between_open(D, floor7, d)):
                chosen = d
                break
        if chosen is None:
            raise InsufficientDensityError(n, k - 1)
        pts.append(chosen)
        vals.append(f(chosen))
    return Ladder(tuple(pts), tuple(vals))


def verify_ladder(D: DiscreteSet, f: TaggedFunction, ladder: Ladder) -> LadderReport:
    """Re-check every ladder condition on all pairs, independently of the search.

    The ``< 2`` bound is checked at every level; for levels past the first
    it already follows from nesting.
    """
    rep = LadderReport()
    bad = rep.violations.append
    n = ladder.depth
    for k in range(1, n + 1):
        d, v = ladder.point(k), ladder.value(k)
        if d not in D:
            bad(Violation("domain", f"d_{k} = {format_rational(d)} is not in D"))
            return rep
        if f(d) != v:
            bad(Violation("domain", f"recorded f(d_{k}) = {format_rational(v)} but f gives {format_rational(f(d))}"))
            return rep
        if not 1 < v < 2:
            bad(Violation("range", f"f(d_{k}) = {format_rational(v)} outside (1, 2)"))
    lo = [None] + [ladder.lo(k) for k in range(1, n + 1)]
    hi = [None] + [ladder.hi(k) for k in range(1, n + 1)]
    for m in range(1, n + 1):
        if not hi[m] < 2:
            bad(Violation("i-bound", f"hi(d_{m}, {m}) = f(d_{m})(1 + d_{m}^-2/{m}) is not < 2"))
        for k in range(m + 1, n + 1):
            if not lo[m] < lo[k]:
                bad(Violation("i-lo", f"lo(d_{m}, {m}) < lo(d_{k}, {k}) fails"))
            if not hi[k] < hi[m]:
                bad(Violation("i-hi", f"hi(d_{k}, {k}) < hi(d_{m}, {m}) fails"))
    for k in range(2, n + 1):
        prev, dk = ladder.point(k - 1), ladder.point(k)
        if not dk > prev ** GROWTH:
            bad(Violation("iii", f"d_{k} > d_{k - 1}^{GROWTH} fails"))
        floor7 = prev ** ROOT
        if ladder.point(1) <= floor7:
            fdk = ladder.value(k)
            for e in _between_open(D, floor7, dk):
                if not _separated(f(e), e, fdk, dk):
                    bad(Violation("ii", f"e = {format_rational(e)} in (d_{k - 1}^7, d_{k}) is not separated from d_{k}"))
    return rep


def _dyadic_points(depth: int) -> list:
    exps = [1]
    while len(exps) < depth:
        exps.append(GROWTH * exps[-1] + 1)
    return [Fraction(2) ** e for e in exps]


def _compact_points(depth: int) -> list:
    step = Fraction(1, 50 ** (depth + 1))
    return [1 + 50 ** k * step for k in range(depth)]


def plant_ladder(depth: int, scheme: str = "dyadic"):
    """Synthesize ``(D, f, ladder)`` on which every ladder condition holds.

    ``D`` consists of the ladder points only.  Under ``"dyadic"`` they are
    ``2, 2**50, 2**2451, 2**120100, ...``; ``"compact"`` packs them just above
    1 (``1 + 50**k / 50**(depth+1)``), which keeps depths past 5 tractable.
    Each ``f(d_k)`` is the simplest rational for which the level-``k``
    interval nests strictly inside the level-``k-1`` one.
    """
    if depth < 1:
        raise PreconditionError("depth must be >= 1")
    if scheme == "dyadic":
        pts = _dyadic_points(depth)
    elif scheme == "compact":
        pts = _compact_points(depth)
    else:
        raise PreconditionError(f"unknown scheme {scheme!r}")
    for k in range(1, depth):
        if not pts[k] > pts[k - 1] ** GROWTH:
            raise AssertionError(f"planted growth fails at level {k + 1}")
    vals = []
    for k, d in enumerate(pts, 1):
        a = 1 / (d * d)
        if k == 1:
            lower, upper = Fraction(1), 2 / (1 + a)
        else:
            lower = lo_bound(vals[-1], pts[k - 2], k - 1) / (1 + a / (k + Fraction(1, k)))
            upper = hi_bound(vals[-1], pts[k - 2], k - 1) / (1 + a / k)
            lower, upper = max(lower, Fraction(1)), min(upper, Fraction(2))
        if not lower < upper:
            raise AssertionError(f"no room to nest level {k}")
        vals.append(simplest_between(lower, upper))
    D = DiscreteSet(tuple(pts), positive_only=True)
    return D, TaggedFunction(D, tuple(vals)), Ladder(tuple(pts), tuple(vals))


def pick_level(ladder: Ladder, n: int) -> Fraction:
    """Midpoint of the level-``n`` nesting interval."""
    if not 2 <= n <= ladder.depth:
        raise PreconditionError(f"level index {n} outside [2, {ladder.depth}]")
    return (ladder.lo(n) + ladder.hi(n)) / 2


# -- window checks ----------------------------------------------------------

@dataclass(frozen=True)
class Window:
    m: int
    nu: Fraction
    lo: Fraction
    hi: Fraction

    def holds(self) -> bool:
        return self.lo < self.nu < self.hi

    def to_json(self) -> dict:
        return {"m": self.m, "nu": format_rational(self.nu),
                "lo": format_rational(self.lo), "hi": format_rational(self.hi)}

    @classmethod
    def from_json(cls, obj: dict) -> "Window":
        return cls(int(obj["m"]), parse_rational(obj["nu"]),
                   parse_rational(obj["lo"]), parse_rational(obj["hi"]))


def unit_window(m: int, value: Fraction) -> Window:
    return Window(m, value, Fraction(m), m + Fraction(1, m))


@dataclass
class WindowReport:
    windows: list           # Window per ladder index m, nu evaluated at d_m
    candidates: tuple       # A_c within [d_start, d_n]
    candidate_values: list  # nu_c over candidates
    covered: bool           # every candidate value sits in some (m, m + 1/m)
    counts: dict            # m -> number of candidate values in its window
    nu_in_windows: bool           # nu_c(d_m) in (m, m + 1/m) for all m
    level_in_bounds: bool    # lo(d_m, m) < c < hi(d_m, m) for all m
    candidates_match: bool          # candidates == {d_start, ..., d_n}

    @property
    def exactly_one(self) -> bool:
        return all(v == 1 for v in self.counts.values())

    @property
    def ok(self) -> bool:
        return (self.covered and self.exactly_one and self.nu_in_windows
                and self.level_in_bounds and self.candidates_match)

    def failures(self) -> list:
        out = []
        if not self.covered:
            out.append("(coverage) some nu-value lies outside every window")
        if not self.exactly_one:
            out.append("(uniqueness) window counts " + ", ".join(f"m={m}: {k}" for m, k in self.counts.items() if k != 1))
        if not self.nu_in_windows:
            out.append("(windows) some nu_c(d_m) is outside (m, m + 1/m)")
        if not self.level_in_bounds:
            out.append("(bounds) some level bound lo(d_m, m) < c < hi(d_m, m) fails")
        if not self.candidates_match:
            out.append("(candidates) A_c on the ladder range differs from the ladder points")
        return out


def window_check(D: DiscreteSet, f: TaggedFunction, c, ladder: Ladder, n: int,
                 start: int = 2, literal: bool = False) -> WindowReport:
    """Check that ``nu_c`` sorts ``A_c`` on ``[d_start, d_n]`` into the windows ``(m, m + 1/m)``."""
    c = as_rational(c)
    if not 2 <= start <= n <= ladder.depth:
        raise PreconditionError(f"need 2 <= start <= n <= depth, got start={start}, n={n}")
    A = candidate_set(D, f, c, literal=literal)
    cands = A.between(ladder.point(start), ladder.point(n))
    values = [nu(f, c, d) for d in cands]
    ms = range(start, n + 1)
    counts = {m: sum(1 for v in values if m < v < m + Fraction(1, m)) for m in ms}
    covered = all(any(m < v < m + Fraction(1, m) for m in ms) for v in values)
    windows = [unit_window(m, nu(f, c, ladder.point(m))) for m in ms]
    nu_in_windows = all(w.holds() for w in windows)
    level_in_bounds = all(ladder.lo(m) < c < ladder.hi(m) for m in ms)
    candidates_match = cands == tuple(ladder.point(m) for m in ms)
    return WindowReport(windows, cands, values, covered, counts, nu_in_windows, level_in_bounds, candidates_match)


# -- the relation S and integer extraction -----------------------------------

def s_fiber(D: DiscreteSet, f: TaggedFunction, b1, b2, b3) -> list:
    """All ``a`` with ``S(a, b1, b2, b3)``, ascending; 0 is included when present."""
    b1, b2, b3 = map(as_rational, (b1, b2, b3))
    A = candidate_set(D, f, b1)
    if b2 not in A or b3 not in A:
        return []
    base = nu(f, b1, b2)
    return sorted({nu(f, b1, d) - base for d in A.between(b2, b3)})


def s_relation(D: DiscreteSet, f: TaggedFunction, a, b1, b2, b3) -> bool:
    """``b2, b3 in A_b1`` and ``a + nu_b1(b2)`` is a ``nu_b1``-value on ``A_b1`` within ``[b2, b3]``."""
    a = as_rational(a)
    if a < 0:
        raise PreconditionError("s_relation needs a >= 0")
    b1, b2, b3 = map(as_rational, (b1, b2, b3))
    A = candidate_set(D, f, b1)
    if b2 not in A or b3 not in A:
        return False
    target = a + nu(f, b1, b2)
    return any(nu(f, b1, d) == target for d in A.between(b2, b3))


def start_index(eps) -> int:
    """Least ``N >= 2`` with ``1/N < eps``."""
    eps = as_rational(eps)
    return max(2, math.floor(1 / eps) + 1)


@dataclass(frozen=True)
class ExtractionCertificate:
    ladder: Ladder
    level: Fraction
    N: int
    n: int
    eps: Fraction
    windows: tuple
    s_params: tuple
    fiber: tuple

    NOTE = ("s_params uses (c, d_N, d_{N+n}); s_params_literal records the "
            "triple (c, d_1, d_2) as literally indexed")

    @property
    def s_params_literal(self) -> tuple:
        pts = self.ladder.points
        return (self.level, pts[0], pts[1] if len(pts) > 1 else pts[0])

    def to_json(self) -> dict:
        fmt = format_rational
        return {
            "ladder": [fmt(p) for p in self.ladder.points],
            "f_values": [fmt(v) for v in self.ladder.f_values],
            "level": fmt(self.level),
            "N": self.N,
            "n": self.n,
            "eps": fmt(self.eps),
            "windows": [w.to_json() for w in self.windows],
            "s_params": [fmt(x) for x in self.s_params],
            "fiber": [fmt(x) for x in self.fiber],
            "s_params_literal": [fmt(x) for x in self.s_params_literal],
            "note": self.NOTE,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExtractionCertificate":
        p = parse_rational
        return cls(
            Ladder.from_json(obj),
            p(obj["level"]),
            int(obj["N"]),
            int(obj["n"]),
            p(obj["eps"]),
            tuple(Window.from_json(w) for w in obj["windows"]),
            tuple(map(p, obj["s_params"])),
            tuple(map(p, obj["fiber"])),
        )


def verify_certificate(cert: ExtractionCertificate) -> list:
    """Check a certificate from its own content; returns a list of failures (empty if valid)."""
    errs = []
    N, n, eps = cert.N, cert.n, cert.eps
    if not 0 < eps < Fraction(1, 2):
        errs.append("eps outside (0, 1/2)")
    if not (N >= 2 and Fraction(1, N) < eps):
        errs.append(f"start index N = {N} does not satisfy 1/N < eps")
    if cert.ladder.depth < N + n:
        errs.append(f"ladder depth {cert.ladder.depth} < N + n = {N + n}")
        return errs
    if [w.m for w in cert.windows] != list(range(N, N + n + 1)):
        errs.append("windows must list each m in [N, N + n] exactly once")
    for w in cert.windows:
        if w.lo != w.m or w.hi != w.m + Fraction(1, w.m):
            errs.append(f"window for m = {w.m} has wrong bounds")
        if not w.holds():
            errs.append(f"nu = {format_rational(w.nu)} not inside ({w.m}, {w.m} + 1/{w.m})")
    expect = (cert.level, cert.ladder.point(N), cert.ladder.point(N + n))
    if tuple(cert.s_params) != expect:
        errs.append("s_params differ from (level, d_N, d_{N+n})")
    if cert.level != pick_level(cert.ladder, N + n):
        errs.append("level is not the midpoint of the deepest nesting interval")
    for j in range(n + 1):
        k = sum(1 for a in cert.fiber if j - eps < a < j + eps)
        if k != 1:
            errs.append(f"fiber has {k} elements in ({j} - eps, {j} + eps)")
    strays = [a for a in cert.fiber if not any(j - eps < a < j + eps for j in range(n + 1))]
    if strays:
        errs.append("fiber has stray elements " + ", ".join(map(format_rational, strays)))
    return errs


def extract_integers(D: DiscreteSet, f: TaggedFunction, n: int, eps,
                     ladder: Ladder | None = None) -> ExtractionCertificate:
    """Exhibit the fiber ``S_(c, d_N, d_{N+n})`` with one point near each of ``0, ..., n``.

    ``N`` is the least index with ``1/N < eps``; a ladder of depth ``N + n``
    is searched for unless one is supplied.
    """
    eps = as_rational(eps)
    if not 0 < eps < Fraction(1, 2):
        raise PreconditionError("eps must lie in (0, 1/2)")
    if n < 0:
        raise PreconditionError("n must be >= 0")
    N = start_index(eps)
    depth = N + n
    if ladder is None:
        ladder = build_ladder(D, f, depth)
    elif ladder.depth < depth:
        raise PreconditionError(f"supplied ladder has depth {ladder.depth} < {depth}")
    ladder = ladder.prefix(depth)
    c = pick_level(ladder, depth)
    windows = tuple(unit_window(m, nu(f, c, ladder.point(m))) for m in range(N, depth + 1))
    params = (c, ladder.point(N), ladder.point(depth))
    fiber = tuple(s_fiber(D, f, *params))
    return ExtractionCertificate(ladder, c, N, n, eps, windows, params, fiber)


# -- dense windows and the two-subgroup instance ------------------------------

def dense_window(values: Sequence, eps) -> Interval:
    """Widest open interval on which every closed subinterval of length ``eps`` meets ``values``.

    Runs of sorted values with gaps ``<= eps`` are scanned; the widest run
    ``v_a..v_b`` yields ``(v_a - eps, v_b + eps)``.  A run needs two values,
    so the result is empty unless some window is wider than ``2*eps``.
    """
    eps = as_rational(eps)
    if eps <= 0:
        raise PreconditionError("dense_window needs eps > 0")
    vals = sorted(set(as_rational(v) for v in values))
    if not vals:
        raise PreconditionError("dense_window needs at least one value")
    best = None
    i = 0
    while i < len(vals):
        j = i
        while j + 1 < len(vals) and vals[j + 1] - vals[j] <= eps:
            j += 1
        if j > i and (best is None or vals[j] - vals[i] > best[1] - best[0]):
            best = (vals[i], vals[j])
        i = j + 1
    if best is None:
        return Interval.make_empty()
    return Interval.open(best[0] - eps, best[1] + eps)


@dataclass(frozen=True)
class AffineMap:
    scale: Fraction
    offset: Fraction

    def __call__(self, x) -> Fraction:
        return self.scale * as_rational(x) + self.offset


def compress(window: Interval) -> AffineMap:
    """Affine map carrying ``window`` onto ``(1, 2)``."""
    if window.empty or window.width == 0:
        raise PreconditionError("compress needs a nondegenerate window")
    scale = 1 / window.width
    return AffineMap(scale, 1 - window.lower * scale)


def two_subgroups(alpha, beta, exp_bound: int) -> DiscreteSet:
    """``{alpha**i} | {beta**j}`` for ``|i|, |j| <= exp_bound``.

    Raises :class:`DependenceError` if ``alpha**p == beta**(+-q)`` for some
    ``1 <= p, q <= exp_bound``, i.e. ``log_alpha(beta)`` is visibly rational.
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    if alpha <= 0 or beta <= 0 or alpha == 1 or beta == 1:
        raise PreconditionError("alpha and beta must be positive and different from 1")
    if exp_bound < 0:
        raise PreconditionError("exp_bound must be >= 0")
    bpow = {}
    x = Fraction(1)
    for q in range(1, exp_bound + 1):
        x *= beta
        bpow.setdefault(x, q)
        bpow.setdefault(1 / x, -q)
    x = Fraction(1)
    for p in range(1, exp_bound + 1):
        x *= alpha
        if x in bpow:
            q = bpow[x]
            raise DependenceError(
                f"log_alpha(beta) is rational: {format_rational(alpha)}^{p} = "
                f"{format_rational(beta)}^{q}"
            )
    vals = {Fraction(1)}
    for base in (alpha, beta):
        for i in range(1, exp_bound + 1):
            vals.add(base ** i)
            vals.add(base ** -i)
    return DiscreteSet(tuple(sorted(vals)), positive_only=True)


def subgroup_products(alpha, beta, exp_bound: int, window: Interval | None = None) -> list:
    """Sorted distinct ``alpha**i * beta**j`` for ``|i|, |j| <= exp_bound``, optionally filtered."""
    alpha, beta = as_rational(alpha), as_rational(beta)
    r = range(-exp_bound, exp_bound + 1)
    prods = {alpha ** i * beta ** j for i in r for j in r}
    if window is not None:
        prods = {p for p in prods if p in window}
    return sorted(prods)


@dataclass(frozen=True)
class TwoSubgroupInstance:
    base: DiscreteSet        # alpha^Z | beta^Z, truncated
    spaced: DiscreteSet      # unit-spaced copy
    points: DiscreteSet      # tupled pairs
    window: Interval         # dense window of the products
    f: TaggedFunction        # compressed products on the tupled points in the window


def two_subgroup_instance(alpha, beta, exp_bound: int, eps) -> TwoSubgroupInstance:
    """Reduce the product map on ``(alpha^Z | beta^Z)**2`` to a function ``D -> (1, 2)``.

    The set is spaced out, pairs are tupled into single points, the widest
    dense window of the products is found and mapped affinely onto
    ``(1, 2)``; ``f`` is the compressed product restricted to that window.
    """
    base = two_subgroups(alpha, beta, exp_bound)
    spaced, record = space_out(base)
    points, tuples = tuple_encode(spaced, 2)
    pairs = []
    for tup, pt in zip(tuples.source, tuples.target):
        pairs.append((pt, record.inverse(tup[0]) * record.inverse(tup[1])))
    window = dense_window([p for _, p in pairs], eps)
    if window.empty:
        raise PreconditionError("products are not dense at this eps")
    squash = compress(window)
    kept = [(pt, squash(prod)) for pt, prod in pairs if prod in window]
    return TwoSubgroupInstance(base, spaced, points, window,
                               TaggedFunction.from_pairs(kept, positive_only=True))
