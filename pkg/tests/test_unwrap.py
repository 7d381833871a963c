import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kneading.errors import DomainError, PrefixTooShort
from kneading.outside import B, in_gamma, in_gamma_open, point, tau
from kneading.primeends import t_thread
from kneading.unwrap import (
    H,
    H_core,
    SpherePoint,
    ThreadPrefix,
    barf,
    landing_entries,
    lemma47,
    on_interval,
    phi,
    phi_inv,
    psi_entry,
    region,
    smash,
    sphere_point,
    split_s,
    u_of_y,
)

F = Fraction
HALF = F(1, 2)


def _rand_x(m, rng, lo=None, hi=None):
    lo = m.a if lo is None else lo
    hi = m.b if hi is None else hi
    return lo + F(rng.randrange(0, 10**6 + 1), 10**6) * (hi - lo)


def _rand_y(m, rng):
    return point(m, _rand_x(m, rng), rng.random() < 0.5)


def test_phi_examples(tent95):
    m = tent95
    assert phi(m, HALF) == m.fa
    assert phi(m, F(1)) == m.b
    assert phi_inv(m, phi(m, F(3, 4))) == F(3, 4)
    with pytest.raises(DomainError):
        phi(m, F(1, 4))
    with pytest.raises(DomainError):
        phi_inv(m, m.a)


def test_u_examples(tent95, fig1_map):
    for m in (tent95, fig1_map):
        assert u_of_y(m, point(m, m.c, True)) == 1
        assert u_of_y(m, point(m, m.a)) == 0
        assert u_of_y(m, point(m, m.rhat, True)) == 0
        assert u_of_y(m, point(m, m.c)) == 0
        y = point(m, (m.a + m.c) / 2, True)
        assert 0 < u_of_y(m, y) < 1


def test_sphere_identifications(tent95):
    m = tent95
    x = F(3, 5)
    assert sphere_point(m, point(m, x, True), 1) == sphere_point(m, point(m, x), 1)
    assert sphere_point(m, point(m, x, True), 0) == sphere_point(m, point(m, m.b), 0)
    with pytest.raises(DomainError):
        sphere_point(m, point(m, x), F(3, 2))


def test_H_on_interval_is_f(tent95, fig1_map):
    rng = random.Random(1)
    for m in (tent95, fig1_map):
        for _ in range(1000):
            x = _rand_x(m, rng)
            assert H(m, on_interval(m, x)) == on_interval(m, m.f(x))


def test_H_below_half_is_B_and_doubling(tent95):
    rng = random.Random(2)
    m = tent95
    for _ in range(300):
        y = _rand_y(m, rng)
        s = F(rng.randrange(1, 1000), 2000)
        assert H(m, SpherePoint(y, s)) == sphere_point(m, B(m, y), 2 * s)


def test_first_coordinate_rule(tent95, fig1_map):
    rng = random.Random(4)
    for m in (tent95, fig1_map):
        done = 0
        while done < 400:
            y = _rand_y(m, rng)
            if in_gamma_open(m, y):
                continue
            s = F(rng.randrange(1, 1000), 1000)
            img = barf(m, sphere_point(m, y, s))
            if img.s == 1:
                assert tau(img.y) == tau(B(m, y))
            else:
                assert img.y == B(m, y)
            done += 1


def test_lemma47_dichotomy(tent95, fig1_map):
    rng = random.Random(8)
    for m in (tent95, fig1_map):
        for _ in range(1000):
            y = _rand_y(m, rng)
            v = HALF + F(rng.randrange(0, 1000), 2000)
            assert H_core(m, y, v) == lemma47(m, y, v)


def test_region_seams_use_left_case(tent95):
    m = tent95
    assert region(m, point(m, m.c)) == "U2"
    assert region(m, point(m, m.rhat, True)) == "U2"
    assert region(m, point(m, m.c, True)) == "U3"
    assert region(m, point(m, m.a)) == "U4"
    assert region(m, point(m, (m.a + m.c) / 2)) == "U5"


def _circ(m, y, z):
    # arc length between circle points, the circle having length 2(b - a)
    def pos(p):
        return (m.b - m.a) + (m.b - p.x) if p.upper else p.x - m.a

    d = abs(pos(y) - pos(z))
    return min(d, 2 * (m.b - m.a) - d)


def _dist(m, p, q):
    # a metric on T: the circle factor fades out as s -> 1 where sides are glued
    return abs(p.s - q.s) + abs(tau(p.y) - tau(q.y)) + (1 - min(p.s, q.s)) * _circ(m, p.y, q.y)


def _nudge(m, y, eps, sign):
    # move eps counterclockwise (sign > 0) or clockwise along S
    x = y.x
    upper = y.upper
    step = eps * sign
    if upper:
        step = -step
    nx = x + step
    if nx > m.b:
        return point(m, 2 * m.b - nx, True)
    if nx < m.a:
        return point(m, 2 * m.a - nx, not upper)
    return point(m, nx, upper)


@pytest.mark.parametrize("which", ["c_l", "rhat_u", "c_u", "a"])
def test_barf_continuous_across_y_seams(tent95, which):
    m = tent95
    y = {
        "c_l": point(m, m.c),
        "rhat_u": point(m, m.rhat, True),
        "c_u": point(m, m.c, True),
        "a": point(m, m.a),
    }[which]
    for s in (F(1, 3), F(3, 5), F(4, 5), F(19, 20), F(1)):
        base = barf(m, sphere_point(m, y, s))
        for sign in (1, -1):
            ds = [_dist(m, barf(m, sphere_point(m, _nudge(m, y, F(1, 10**k), sign), s)), base) for k in (3, 6, 9)]
            assert ds[2] <= ds[0] and ds[2] < F(1, 10**6), (which, s, sign, ds)


def test_barf_continuous_across_s_knee(tent95, fig1_map):
    rng = random.Random(12)
    for m in (tent95, fig1_map):
        for _ in range(50):
            y = point(m, _rand_x(m, rng, m.a, m.rhat), True)
            knee = phi_inv(m, m.f(y.x))
            base = barf(m, sphere_point(m, y, knee))
            for eps in (F(1, 10**9), -F(1, 10**9)):
                s = knee + eps
                if not HALF <= s <= 1:
                    continue
                assert _dist(m, barf(m, sphere_point(m, y, s)), base) < F(1, 10**6)


def test_smash(tent95):
    m = tent95
    y = point(m, F(3, 5), True)
    assert smash(m, SpherePoint(y, F(1, 4))) == SpherePoint(y, HALF)
    assert smash(m, SpherePoint(y, F(3, 4))) == on_interval(m, F(3, 5))


@given(st.fractions(min_value=0, max_value=50))
def test_split_s(s):
    t, v = split_s(s)
    assert t <= s < t + 1
    assert HALF <= v < 1
    assert t + (2 * v - 1) == s


def _random_thread(m, rng, K=12):
    return ThreadPrefix.from_tail(m, _rand_y(m, rng), K)


def test_thread_prefix_compatibility(tent95):
    m = tent95
    th = _random_thread(m, random.Random(0))
    for i in range(th.K):
        assert B(m, th[i + 1]) == th[i]
    with pytest.raises(DomainError):
        ThreadPrefix(m, [th[1], th[0]])


def test_conjugacy_step(tent95, fig1_map):
    rng = random.Random(21)
    for m in (tent95, fig1_map):
        for _ in range(20):
            th = _random_thread(m, rng, K=rng.randrange(2, 12))
            sh = th.shifted()
            for _ in range(5):
                s = F(rng.randrange(1000, 1000 * th.K), 1000)
                t, _v = split_s(s)
                # lambda(s) = s + 1 for s >= 1: entries move one slot and H = f on I
                assert psi_entry(m, sh, s + 1, 0) == m.f(psi_entry(m, th, s, 0))
                for r in range(t):
                    assert psi_entry(m, sh, s + 1, r + 1) == psi_entry(m, th, s, r)
            # lambda(s) = 2s on [1/2, 1): entry 0 is H of the point (y_0, s)
            s = HALF + F(rng.randrange(0, 500), 1000)
            assert psi_entry(m, sh, 2 * s, 0) == H_core(m, th[0], s)


def test_constant_blocks(tent95, fig1_map):
    rng = random.Random(31)
    checked = 0
    for m in (tent95, fig1_map):
        for _ in range(50):
            th = _random_thread(m, rng, K=12)
            for r in range(1, th.K):
                k = 0
                while r + k + 1 <= th.K - 1 and not in_gamma_open(m, th[r + k + 1]):
                    k += 1
                lo, hi = r + u_of_y(m, th[r]), F(r + k + 1)
                for j in range(10):
                    s = lo + (hi - lo) * F(j, 9)
                    assert psi_entry(m, th, s, r - 1) == m.f(th[r].x)
                checked += 1
    assert checked >= 100


def test_psi_entry_errors(tent95):
    m = tent95
    th = _random_thread(m, random.Random(3), K=4)
    with pytest.raises(PrefixTooShort):
        psi_entry(m, th, F(11, 2), 0)
    with pytest.raises(DomainError):
        psi_entry(m, th, F(5, 2), 2)
    with pytest.raises(DomainError):
        psi_entry(m, th, HALF, 0)


def test_psi_last_entry_at_half(tent95):
    rng = random.Random(5)
    m = tent95
    for _ in range(100):
        th = _random_thread(m, rng, K=6)
        t = rng.randrange(1, 7)
        if in_gamma_open(m, th[t]):
            continue
        assert psi_entry(m, th, F(t), t - 1) == tau(B(m, th[t]))


def test_landing_closed_form(fig1_map, tent95):
    for m in (fig1_map, tent95):
        for x in ((m.a + m.c) / 2, (m.c + m.rhat) / 2):
            y = point(m, x, True)
            for k in (0, 1):
                for i in range(3):
                    th, N = t_thread(m, y, k, i, 14)
                    land = landing_entries(m, th, N, th.K)
                    assert land[0] == m.iterate(th[N].x, N)
                    for s in (F(N + 1), F(N + 1) + F(2, 7), F(th.K) - F(1, 5)):
                        t, _v = split_s(s)
                        assert [psi_entry(m, th, s, r) for r in range(t)] == land[:t]


def test_landing_level(fig1_map):
    m = fig1_map
    y = point(m, (m.a + m.c) / 2, True)
    th, N = t_thread(m, y, 0, 2, 8)
    assert th.landing_level() == N == 3
    assert in_gamma(m, th[N])
