from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from galoispoints.criterion import (
    check_a,
    check_b,
    check_c_inner,
    check_c_outer,
    evaluate,
    search_inner,
    search_outer,
)
from galoispoints.elliptic import EllAutGroup, FermatCubic, quotient_genus
from galoispoints.errors import UnsupportedGenus
from galoispoints.fields import GF, QQ
from galoispoints.projective import Moebius, ProjPoint, generate, projective_line

from conftest import klein


def P(x, y=1, F=QQ):
    return ProjPoint(F, x, y)


# (a) ---------------------------------------------------------------------------------

def test_check_a_genus_zero_is_automatic(scenario1):
    assert check_a(0, scenario1["G1"]).holds


def test_check_a_genus_one():
    E = FermatCubic(19)
    rot = EllAutGroup(E.sigma())
    a = check_a(1, rot)
    assert a.holds and rot.fixed_point_count() == 3

    # translation by a nonzero 3-torsion point acts freely: quotient is elliptic
    T = next(Q for Q in E.points if Q != E.O and E.translation(Q).order() == 3)
    trans = EllAutGroup(E.translation(T))
    assert trans.fixed_point_count() == 0
    a = check_a(1, trans)
    assert not a.holds and "genus 1" in a.justification


def test_check_a_rejects_higher_genus(scenario1):
    with pytest.raises(UnsupportedGenus):
        check_a(2, scenario1["G1"])


def test_quotient_genus_table():
    assert quotient_genus(3, 3) == 0
    assert quotient_genus(2, 4) == 0
    assert quotient_genus(3, 0) == 1
    assert quotient_genus(5, 0) == 1


# (b) ---------------------------------------------------------------------------------

def test_check_b(scenario1):
    b = check_b(scenario1["G1"], scenario1["G2"])
    assert b.holds and b.size == 1 and b.shared == ()
    s = scenario1["sigma"]
    b = check_b(generate([s]), generate([s @ s]))
    assert not b.holds and b.size == 2
    assert b.shared == (s @ s,)


# (c) ---------------------------------------------------------------------------------

def test_check_c_scenario1(scenario1):
    c = check_c_inner(scenario1["G1"], scenario1["G2"], scenario1["P1"], scenario1["P2"])
    assert c.holds and c.divisor.degree == 5
    assert c.divisor[scenario1["P1"]] == 1 and c.divisor[scenario1["P2"]] == 1


def test_check_c_wrong_point_has_mismatch(scenario1):
    c = check_c_inner(scenario1["G1"], scenario1["G2"], scenario1["P1"], P(0))
    assert not c.holds and c.divisor is None
    assert c.lhs.degree == c.rhs.degree == 5
    only_lhs, only_rhs = c.mismatch
    assert only_lhs.degree > 0 and only_lhs == c.lhs - c.rhs + only_rhs


def test_check_c_swapped_points_fail(scenario1):
    c = check_c_inner(scenario1["G1"], scenario1["G2"], scenario1["P2"], scenario1["P1"])
    assert not c.holds


def test_check_c_equal_points(scenario1):
    c = check_c_inner(scenario1["G1"], scenario1["G2"], scenario1["P1"], scenario1["P1"])
    assert not c.holds and c.reason


def test_check_c_klein_convention():
    G1, G2 = klein(QQ, 2), klein(QQ, 3)
    assert check_c_inner(G1, G2, P(1, 3), P(1, 2)).holds
    # the transposed reading (alpha : 1) does not satisfy (c)
    assert not check_c_inner(G1, G2, P(3, 1), P(2, 1)).holds


def test_check_c_outer():
    # G1 = G2 trivially shares every orbit
    G = generate([Moebius(QQ, -1, 0, 0, 1)])
    assert check_c_outer(G, G, P(3)).holds
    H = generate([Moebius(QQ, 0, -1, 1, 0)])  # t -> -1/t
    c = check_c_outer(G, H, P(3))
    assert not c.holds
    # 1 and -1 form an orbit of both t -> -t and t -> -1/t
    assert check_c_outer(G, H, P(1)).holds


def test_evaluate_report(scenario1):
    rep = evaluate(0, scenario1["G1"], scenario1["G2"], scenario1["P1"], scenario1["P2"])
    assert rep.holds and rep.degree_D == 5 and rep.notes == []
    js = rep.to_json()
    assert js["holds"] and js["degree_D"] == 5 and js["cond_c"]["holds"]
    with pytest.raises(ValueError):
        evaluate(0, scenario1["G1"], scenario1["G2"], mode="sideways")


# search ------------------------------------------------------------------------------

def _reduced_scenario1(p):
    F = GF(p)
    G1 = generate([Moebius(F, 1, -1, 1, 1)])
    G2 = generate([Moebius(F, 0, 1, F(-1) / F(2), 1)])
    return F, G1, G2


def test_search_finds_reduction_of_scenario1():
    F, G1, G2 = _reduced_scenario1(7)
    hits = search_inner(G1, G2, projective_line(F))
    pairs = {(a, b) for a, b, _ in hits}
    assert (P(2, 1, F), P(-1, 1, F)) in pairs
    assert all(D.degree == 5 for _, _, D in hits)


def _brute_orbit_sum(mats, pt, p):
    out = Counter()
    for a, b, c, d in mats:
        x, y = (a * pt[0] + b * pt[1]) % p, (c * pt[0] + d * pt[1]) % p
        if y:
            out[(x * pow(y, -1, p) % p, 1)] += 1
        else:
            out[(1, 0)] += 1
    return out


def _brute_points(p):
    return [(x, 1) for x in range(p)] + [(1, 0)]


def _brute_group(gen, p):
    """All 2x2 matrices (normalized up to scalar) generated by one integer matrix mod p."""

    def norm(m):
        for v in m:
            if v % p:
                inv = pow(v, -1, p)
                return tuple(x * inv % p for x in m)

    def mul(m, n):
        a, b, c, d = m
        e, f, g, h = n
        return norm(((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p))

    ident = norm((1, 0, 0, 1))
    seen, cur = {ident}, norm(gen)
    while cur not in seen:
        seen.add(cur)
        cur = mul(cur, norm(gen))
    return seen


def test_search_matches_brute_force():
    p = 7
    F, G1, G2 = _reduced_scenario1(p)
    m1 = _brute_group((1, p - 1, 1, 1), p)
    m2 = _brute_group((0, 1, (-pow(2, -1, p)) % p, 1), p)
    expected = set()
    pts = _brute_points(p)
    for a, b in product(pts, pts):
        if a == b:
            continue
        lhs = _brute_orbit_sum(m1, b, p)
        lhs[a] += 1
        rhs = _brute_orbit_sum(m2, a, p)
        rhs[b] += 1
        if lhs == rhs:
            expected.add((a, b))

    def key(Q):
        return (1, 0) if Q.is_infinity() else (int(str(Q.t())), 1)

    got = {(key(A), key(B)) for A, B, _ in search_inner(G1, G2, projective_line(F))}
    assert got == expected and expected


@pytest.mark.parametrize("p", [7, 11])
def test_search_symmetry(p):
    F, G1, G2 = _reduced_scenario1(p)
    for P1, P2, D in search_inner(G1, G2, projective_line(F)):
        a = check_c_inner(G1, G2, P1, P2)
        b = check_c_inner(G2, G1, P2, P1)
        assert a.holds and b.holds and a.divisor == b.divisor == D


def test_search_outer():
    G = generate([Moebius(QQ, -1, 0, 0, 1)])
    H = generate([Moebius(QQ, 0, -1, 1, 0)])
    hits = search_outer(G, H, [P(v) for v in (-1, 0, 1, 2)])
    assert [Q for Q, _ in hits] == [P(-1), P(1)]


def test_fraction_points_are_exact(scenario1):
    # a point with a large denominator is handled without rounding
    Q = P(Fraction(10**20 + 1, 3))
    c = check_c_inner(scenario1["G1"], scenario1["G2"], scenario1["P1"], Q)
    assert not c.holds
