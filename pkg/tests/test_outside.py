import math
import random
from fractions import Fraction

import pytest

from kneading.errors import AmbiguousPreimage, DomainError
from kneading.height import Leaf, classify, height, lhe, nbt, rhe, word_cq
from kneading.outside import (
    B,
    B_inverse,
    B_iter,
    Estimate,
    Infinity,
    J_set,
    N_f,
    P_orbit,
    Q_orbit,
    j_equivalence_range,
    in_gamma,
    in_gamma_open,
    orbit,
    point,
    position,
    rotation_number,
    tau,
    upper_side_agreement,
    verify_thm414,
)
from kneading.symbolic import BinarySeq
from kneading.unimodal import QuadraticMap, TentMap, irrational_kneading_prefix, tent_approximating, tent_from_kneading

F = Fraction


def _random_point(m, rng, upper=None):
    x = m.a + F(rng.randrange(0, 10**6 + 1), 10**6) * (m.b - m.a)
    if upper is None:
        upper = rng.random() < 0.5
    return point(m, x, upper)


def test_B_examples(tent95):
    m = tent95
    assert B(m, point(m, m.c)) == point(m, m.b)
    assert B(m, point(m, m.b)) == point(m, m.a)
    for x in (m.a, m.c, (m.a + m.rhat) / 2, m.rhat):
        assert B(m, point(m, x, True)) == point(m, m.fa)


def test_endpoint_identification(tent95):
    m = tent95
    assert point(m, m.a, True) == point(m, m.a, False)
    assert point(m, m.b, True) == point(m, m.b, False)
    assert tau(point(m, m.c, True)) == tau(point(m, m.c)) == m.c


def test_B_well_defined_at_seams(tent95):
    # the lower-copy rule and the upper-copy rule meet at rhat_u
    m = tent95
    r = point(m, m.rhat, True)
    assert B(m, r) == point(m, m.f(m.rhat)) == point(m, m.fa)


def test_tau_commutes_off_open_gamma(tent95, fig1_map):
    rng = random.Random(11)
    for m in (tent95, fig1_map):
        checked = 0
        while checked < 1000:
            p = _random_point(m, rng)
            if in_gamma_open(m, p):
                continue
            assert tau(B(m, p)) == m.f(tau(p))
            checked += 1


def test_tau_fails_inside_open_gamma(tent95):
    m = tent95
    found = None
    for k in range(1, 50):
        p = point(m, m.a + (m.rhat - m.a) * F(k, 50), True)
        if in_gamma_open(m, p) and tau(B(m, p)) != m.f(tau(p)):
            found = p
            break
    assert found is not None
    assert tau(B(m, found)) == m.fa


def test_gamma_collapse(tent95, fig1_map):
    rng = random.Random(3)
    for m in (tent95, fig1_map):
        target = B(m, point(m, m.a))
        for _ in range(300):
            x = m.a + F(rng.randrange(0, 1001), 1000) * (m.rhat - m.a)
            p = point(m, x, True)
            assert in_gamma(m, p)
            assert B(m, p) == target


def test_B_inverse(tent95):
    rng = random.Random(5)
    m = tent95
    for _ in range(200):
        p = _random_point(m, rng)
        if p.x == m.fa and not p.upper:
            continue
        assert B(m, B_inverse(m, p)) == p
    with pytest.raises(AmbiguousPreimage):
        B_inverse(m, point(m, m.fa))


def test_degree_one_monotone(tent95, fig1_map):
    for m in (tent95, fig1_map):
        L = 2 * (m.b - m.a)
        pts = []
        for k in range(500):
            x = m.a + (m.b - m.a) * F(2 * k + 1, 1000)
            pts += [point(m, x), point(m, x, True)]
        pts.sort(key=lambda p: position(m, p))
        ys = [position(m, B(m, p)) for p in pts]
        # a degree one monotone circle map wraps exactly once around the circle
        descents = sum(1 for i in range(len(ys)) if ys[i] < ys[i - 1])
        assert descents == 1
        assert all(0 <= y < L for y in ys)


def test_quadratic_rejected():
    with pytest.raises(DomainError):
        N_f(QuadraticMap(4))


def test_N_f_examples(fig1_map):
    assert N_f(TentMap(2)) == 1
    assert N_f(fig1_map) == 3
    assert isinstance(N_f(fig1_map, cap=2), Infinity)


def test_N_f_grows_towards_irrational_height():
    q = (3 - math.sqrt(5)) / 2
    prev = 0
    for L in (20, 40, 80):
        m = tent_approximating(irrational_kneading_prefix(q, L))
        nf = N_f(m, 5000)
        assert isinstance(nf, int) and nf >= prev
        prev = nf
    assert prev > 20


def test_N_f_equals_n(sample_maps):
    for m in sample_maps:
        cls = classify(m.source, tent=True)
        if cls.height == 0 or cls.leaf == Leaf.EARLY:
            continue
        assert N_f(m) == cls.height.denominator, m


def test_J_set_examples():
    assert J_set(BinarySeq.parse("1(0)"), 30) == set()
    for q in (F(1, 3), F(2, 7), F(3, 10), F(5, 17), F(2, 9)):
        m, n = q.numerator, q.denominator
        cq = word_cq(q)
        # kappa_i read off c_q = 1 0^k1 11 0^k2 11 ... 0^km 1
        ks = [len(run) for run in cq[1:-1].split("11")]
        expected = {(2 * i - 1) + sum(ks[:i]) for i in range(1, m + 1)}
        assert J_set(nbt(q), n) == expected


def test_J_set_against_simulation(fig1_map, sample_maps):
    kap = BinarySeq.parse("(1001110)")
    assert upper_side_agreement(fig1_map, kap, 3) == (True, [])
    for m in sample_maps:
        # the identity holds up to N(f) or the first return of a to c
        rmax = j_equivalence_range(m, N_f(m), 1000)
        ok, bad = upper_side_agreement(m, m.source, rmax)
        assert ok, (m, bad)


def _lift_rotation(m, n):
    # independent oracle: average lifted displacement along the closed orbit
    L = 2 * (m.b - m.a)
    p = B(m, point(m, m.a))
    total = 0
    for _ in range(n):
        q = B(m, p)
        d = position(m, q) - position(m, p)
        total += d if d >= 0 else d + L
        p = q
    return total / (n * L)


def test_rotation_examples(fig1_map):
    assert rotation_number(fig1_map) == F(1, 3)
    assert rotation_number(TentMap(2)) == 0
    m = tent_from_kneading(nbt(F(2, 7)))
    assert rotation_number(m) == F(2, 7) == height(nbt(F(2, 7)))


def test_rotation_against_lift(sample_maps):
    for m in sample_maps[:25]:
        rho = rotation_number(m)
        if rho == 0:
            continue
        n = rho.denominator
        assert _lift_rotation(m, n) == rho


def test_rotation_start_independent(fig1_map):
    m = fig1_map
    Q = Q_orbit(m, 3)
    for start in Q:
        cyc = orbit(m, start, 2)
        ups = sum(1 for p in cyc if p.upper or p.x == m.b)
        assert F(ups, 3) == F(1, 3)


def test_rotation_estimate_for_nonclosing():
    q = (3 - math.sqrt(5)) / 2
    m = tent_approximating(irrational_kneading_prefix(q, 120), bits=200)
    rho = rotation_number(m, 50)
    assert isinstance(rho, Estimate)
    assert rho.lower < rho.value < rho.upper
    assert rho.contains(F(q).limit_denominator(10**6))


def test_endpoint_identities(sample_maps):
    q = F(2, 7)
    m = tent_from_kneading(rhe(q))
    assert B_iter(m, point(m, m.a), 7) == point(m, m.rhat, True)
    seen = set()
    for m in sample_maps:
        cls = classify(m.source, tent=True)
        if cls.height == 0:
            continue
        n = cls.height.denominator
        bn = B_iter(m, point(m, m.a), n)
        assert (bn == point(m, m.a)) == (m.source == lhe(cls.height))
        assert (bn == point(m, m.rhat, True)) == (m.source == rhe(cls.height))
        seen.add(cls.leaf)
    assert {Leaf.STRICT_TENT_LIKE, Leaf.RIGHT_ENDPOINT, Leaf.GENERAL} <= seen


def test_P_and_Q_orbits(tent95):
    P = P_orbit(tent95, F(1, 3))
    assert [str(p) for p in P] == ["126/151_u", "45/151_l", "81/151_l"]
    Q = Q_orbit(tent95, 3)
    assert B(tent95, Q[-1]) == Q[0]
    assert not set(P) & set(Q)


def test_verify_thm414_samples(sample_maps):
    for m in sample_maps:
        rep = verify_thm414(m)
        assert rep.ok, rep.to_dict()
        names = {c.name for c in rep.clauses}
        assert "(a) rotation number equals height" in names


def test_verify_thm414_irrational_spot_checks():
    q = (3 - math.sqrt(5)) / 2
    m = tent_approximating(irrational_kneading_prefix(q, 30))
    rep = verify_thm414(m, cap=2000, net=40, net_cap=400)
    assert rep.ok
