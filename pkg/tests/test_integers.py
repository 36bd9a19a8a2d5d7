import random
from fractions import Fraction as F

import pytest

from discretez.errors import (
    DependenceError,
    InsufficientDensityError,
    PreconditionError,
    SingularityError,
)
from discretez.integers import (
    ExtractionCertificate,
    Ladder,
    build_ladder,
    candidate_set,
    compress,
    dense_window,
    extract_integers,
    hi_bound,
    lo_bound,
    nu,
    phi,
    pick_level,
    plant_ladder,
    s_fiber,
    s_relation,
    start_index,
    two_subgroup_instance,
    two_subgroups,
    verify_certificate,
    verify_ladder,
    window_check,
)
from discretez.numeric import DiscreteSet, Interval, TaggedFunction

TWO_50 = F(2) ** 50
LEVEL_2 = F(7, 4) + F(63, 80) / F(2) ** 100


def small_instance():
    D = DiscreteSet.of([2, 5], positive_only=True)
    return D, TaggedFunction(D, (F(3, 2), F(17, 10)))


def test_phi_examples():
    D, f = small_instance()
    assert phi(D, f, 200, F(8, 5))
    assert not phi(D, f, 100, F(8, 5))
    assert phi(D, f, 3, 1)


def _phi_quantified(D, f, x, c, literal):
    # direct reading of the formula: for all u, antecedent implies consequent
    def consequent(u):
        return u ** 7 < x or (u > x if literal else u >= x)
    return all(not (f(u) < c < f(u) * (1 + u ** -2)) or consequent(u) for u in D)


def test_phi_unfolding_agrees_with_quantified_form():
    rng = random.Random(7)
    for _ in range(300):
        pts = sorted(rng.sample(range(2, 40), rng.randint(1, 6)))
        D = DiscreteSet.of(pts, positive_only=True)
        f = TaggedFunction(D, tuple(1 + F(rng.randint(1, 99), 100) for _ in pts))
        x = F(rng.randint(1, 10 ** 8))
        if rng.random() < 0.3:
            x = rng.choice(pts)
        c = 1 + F(rng.randint(1, 199), 200)
        for literal in (False, True):
            assert phi(D, f, x, c, literal) == _phi_quantified(D, f, x, c, literal)


def test_candidate_set_self_exclusion_under_literal_reading():
    D = DiscreteSet.of([2], positive_only=True)
    f = TaggedFunction(D, (F(3, 2),))
    assert candidate_set(D, f, F(8, 5), literal=True).elements == ()
    assert candidate_set(D, f, F(8, 5)).elements == (2,)


def test_candidate_set_level_zero_is_empty():
    D, f, _ = plant_ladder(3)
    assert candidate_set(D, f, 0).elements == ()


def test_candidate_set_on_planted_pair():
    D, f, lad = plant_ladder(2)
    assert candidate_set(D, f, LEVEL_2).elements == (2, TWO_50)


def test_literal_reading_empties_every_candidate_set():
    D, f, lad = plant_ladder(3)
    for n in (2, 3):
        assert candidate_set(D, f, pick_level(lad, n), literal=True).elements == ()


def test_nu_examples():
    D, f = small_instance()
    assert nu(f, F(8, 5), 2) == F(15, 4)
    _, g, _ = plant_ladder(2)
    assert nu(g, LEVEL_2, TWO_50) == F(20, 9)
    with pytest.raises(SingularityError):
        nu(f, F(3, 2), 2)


def test_plant_ladder_shapes():
    D, f, lad = plant_ladder(1)
    assert D.elements == (2,) and lad.f_values == (F(3, 2),)
    assert hi_bound(F(3, 2), F(2), 1) == F(15, 8)
    D, f, lad = plant_ladder(2)
    assert D.elements == (2, TWO_50) and lad.f_values == (F(3, 2), F(7, 4))
    assert lo_bound(F(7, 4), TWO_50, 2) > F(27, 16)
    assert hi_bound(F(7, 4), TWO_50, 2) < F(15, 8)
    D, f, lad = plant_ladder(4)
    assert D.max == F(2) ** 120100
    assert D.elements[2] == F(2) ** 2451


@pytest.mark.parametrize("depth", [1, 2, 3, 4])
def test_planted_ladders_verify(depth):
    D, f, lad = plant_ladder(depth)
    assert verify_ladder(D, f, lad).valid


@pytest.mark.parametrize("depth", [1, 5, 11])
def test_compact_ladders_verify(depth):
    D, f, lad = plant_ladder(depth, "compact")
    assert verify_ladder(D, f, lad).valid
    assert all(1 < v < 2 for v in f.values)


def test_build_ladder_on_planted_instances():
    for depth, scheme in [(2, "dyadic"), (3, "dyadic"), (8, "compact")]:
        D, f, lad = plant_ladder(depth, scheme)
        built = build_ladder(D, f, depth)
        assert built == lad
        assert verify_ladder(D, f, built).valid


def test_build_ladder_insufficient_density():
    D = DiscreteSet.of([2], positive_only=True)
    f = TaggedFunction(D, (F(3, 2),))
    with pytest.raises(InsufficientDensityError) as info:
        build_ladder(D, f, 2)
    assert info.value.reached == 1


def test_build_ladder_skips_unseparated_points():
    # an extra point between d_1^7 and d_2 whose sandwich overlaps f(d_2) blocks d_2
    D0, f0, lad = plant_ladder(2)
    blocker = F(2) ** 20
    D = DiscreteSet.of([2, blocker, TWO_50], positive_only=True)
    f = TaggedFunction(D, (F(3, 2), F(7, 4), F(7, 4)))
    with pytest.raises(InsufficientDensityError):
        build_ladder(D, f, 2)
    rep = verify_ladder(D, f, lad)
    assert rep.conditions() == {"ii"}


def test_verify_ladder_growth_boundary():
    D = DiscreteSet.of([2, F(2) ** 49], positive_only=True)
    f = TaggedFunction(D, (F(3, 2), F(7, 4)))
    rep = verify_ladder(D, f, Ladder(D.elements, f.values))
    assert "iii" in rep.conditions()


def test_verify_ladder_hi_nesting_equality():
    D = DiscreteSet.of([2, TWO_50], positive_only=True)
    f = TaggedFunction(D, (F(3, 2), F(15, 8)))
    rep = verify_ladder(D, f, Ladder(D.elements, f.values))
    assert "i-hi" in rep.conditions()
    assert "i-hi" in str(rep)


def test_verify_ladder_domain():
    D, f, lad = plant_ladder(2)
    rep = verify_ladder(DiscreteSet.of([2], positive_only=True),
                        TaggedFunction(DiscreteSet.of([2], positive_only=True), (F(3, 2),)), lad)
    assert rep.conditions() == {"domain"}


def test_pick_level():
    _, _, lad = plant_ladder(2)
    assert pick_level(lad, 2) == LEVEL_2
    with pytest.raises(PreconditionError):
        pick_level(lad, 1)
    _, _, lad3 = plant_ladder(3)
    c = pick_level(lad3, 3)
    assert lad3.lo(3) < c < lad3.hi(3)


def test_window_check_depth_two():
    D, f, lad = plant_ladder(2)
    rep = window_check(D, f, LEVEL_2, lad, 2)
    assert rep.ok
    assert rep.windows[0].nu == F(20, 9)
    assert rep.counts == {2: 1}


def test_window_check_depth_three():
    D, f, lad = plant_ladder(3)
    rep = window_check(D, f, pick_level(lad, 3), lad, 3)
    assert rep.ok and rep.counts == {2: 1, 3: 1}
    assert [(w.lo, w.hi) for w in rep.windows] == [(2, F(5, 2)), (3, F(10, 3))]


def test_window_check_bad_level():
    D, f, lad = plant_ladder(3)
    rep = window_check(D, f, F(1), lad, 3)
    assert not rep.ok and rep.candidates == ()
    assert any(msg.startswith("(uniqueness)") for msg in rep.failures())


def test_s_relation_examples():
    D, f, lad = plant_ladder(3)
    c = pick_level(lad, 3)
    d2, d3 = lad.point(2), lad.point(3)
    a = nu(f, c, d3) - nu(f, c, d2)
    assert s_relation(D, f, a, c, d2, d3)
    assert not s_relation(D, f, F(1, 2), c, d2, d3)
    assert not s_relation(D, f, a, c, lad.point(1) + 1, d3)
    assert s_fiber(D, f, c, d2, d3) == [0, a]
    with pytest.raises(PreconditionError):
        s_relation(D, f, -1, c, d2, d3)


@pytest.mark.parametrize("eps,N", [(F(1, 4), 5), (F(1, 8), 9), (F(49, 100), 3), (F(1, 5), 6)])
def test_start_index(eps, N):
    assert start_index(eps) == N


@pytest.mark.parametrize("eps", [F(1, 4), F(1, 8)])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_extract_integers_compact(eps, n):
    N = start_index(eps)
    D, f, lad = plant_ladder(N + n, "compact")
    cert = extract_integers(D, f, n, eps)
    assert verify_certificate(cert) == []
    assert len(cert.fiber) == n + 1 and cert.fiber[0] == 0
    assert all(s_relation(D, f, a, *cert.s_params) for a in cert.fiber)
    assert ExtractionCertificate.from_json(cert.to_json()) == cert


def test_extract_integers_n0_trivial_window():
    D, f, lad = plant_ladder(5, "compact")
    cert = extract_integers(D, f, 0, F(1, 4))
    assert cert.fiber == (0,)
    assert cert.s_params[1] == cert.s_params[2]


def test_extract_integers_preconditions():
    D, f, lad = plant_ladder(2)
    with pytest.raises(PreconditionError):
        extract_integers(D, f, 1, F(1, 2))
    with pytest.raises(PreconditionError):
        extract_integers(D, f, 1, F(1, 4), ladder=lad)
    with pytest.raises(InsufficientDensityError):
        extract_integers(D, f, 1, F(1, 4))


def test_verify_certificate_detects_tampering():
    D, f, lad = plant_ladder(6, "compact")
    cert = extract_integers(D, f, 1, F(1, 4))
    obj = cert.to_json()
    obj["fiber"] = obj["fiber"] + ["1/2"]
    assert any("stray" in e for e in verify_certificate(ExtractionCertificate.from_json(obj)))
    obj = cert.to_json()
    obj["windows"][0]["nu"] = "100"
    assert verify_certificate(ExtractionCertificate.from_json(obj))


def _covered(values, window, eps):
    # every closed eps-subinterval of the window meets a value: test the worst
    # placements, just right of each value and at the window's left end
    vals = sorted(values)
    starts = [window.lower] + [v for v in vals if window.lower < v < window.upper - eps]
    for t in starts:
        probe = (t + (min([x for x in vals if x > t] or [t + 2 * eps]) - eps)) / 2 if t in vals else t
        probe = max(probe, t)
        if probe + eps >= window.upper:
            continue
        if not any(probe <= v <= probe + eps for v in vals):
            return False
    return True


def test_dense_window_examples():
    grid = [F(k, 16) for k in range(17, 32)]
    w = dense_window(grid, F(1, 8))
    assert (w.lower, w.upper) == (F(15, 16), F(33, 16))
    assert _covered(grid, w, F(1, 8))
    assert dense_window([F(3, 2)], F(1, 10)).empty
    assert dense_window(list(range(1, 11)), F(1, 2)).empty


def test_dense_window_is_maximal():
    vals = [F(0), F(1, 10), F(2, 10), F(1), F(11, 10)]
    w = dense_window(vals, F(1, 10))
    assert (w.lower, w.upper) == (F(-1, 10), F(3, 10))
    wider = Interval.open(w.lower - F(1, 100), w.upper)
    assert not _covered(vals, wider, F(1, 10))


@pytest.mark.parametrize("u,v,scale,offset", [
    (4, 8, F(1, 4), 0),
    (1, 2, 1, 0),
    (0, F(1, 2), 2, 1),
])
def test_compress(u, v, scale, offset):
    m = compress(Interval.open(u, v))
    assert (m.scale, m.offset) == (scale, offset)
    assert m(u) == 1 and m(v) == 2


def test_compress_degenerate():
    with pytest.raises(PreconditionError):
        compress(Interval.make_empty())


def test_two_subgroups():
    D = two_subgroups(2, 3, 2)
    assert D.elements == tuple(map(F, ["1/9", "1/4", "1/3", "1/2", "1", "2", "3", "4", "9"]))
    assert two_subgroups(2, 3, 0).elements == (1,)
    with pytest.raises(DependenceError, match=r"4\^1 = 2\^2"):
        two_subgroups(4, 2, 5)
    with pytest.raises(DependenceError):
        two_subgroups(2, F(1, 2), 3)
    with pytest.raises(PreconditionError):
        two_subgroups(1, 2, 3)


def test_two_subgroup_instance_reduces_to_unit_range():
    inst = two_subgroup_instance(2, 3, 3, F(1, 2))
    assert not inst.window.empty
    assert all(1 < v < 2 for v in inst.f.values)
    assert all(b - a >= 1 for a, b in zip(inst.spaced, inst.spaced.elements[1:]))
    assert set(inst.f.domain) <= set(inst.points)
    # the reduced instance is too sparse for deep ladders at this truncation
    try:
        lad = build_ladder(inst.f.domain, inst.f, 2)
    except InsufficientDensityError as exc:
        assert exc.reached >= 1
    else:
        assert verify_ladder(inst.f.domain, inst.f, lad).valid
