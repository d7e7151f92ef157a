from itertools import product

import pytest

from galoispoints.elliptic import (
    QUARTIC_MONOMIALS,
    CubicPoint,
    EllAutGroup,
    FermatCubic,
    admissible_points,
    build_quartic_model,
    enumerate_curve,
    find_elliptic_witness,
    group_add,
    group_neg,
    omega,
    origin,
    outer_delta_check,
    projection_fibers_match,
    third_point,
    verify_theorem4,
)
from galoispoints.errors import BadCharacteristic, HypothesisViolated
from galoispoints.fields import GF

F19 = GF(19)


@pytest.fixture(scope="module")
def E():
    return FermatCubic(19)


def pt(x, y, z, F=F19):
    return CubicPoint(F, x, y, z)


def _brute_count(p):
    return sum(
        1
        for x, y, z in product(range(p), repeat=3)
        if (x, y, z) != (0, 0, 0) and (x ** 3 + y ** 3 + z ** 3) % p == 0
    ) // (p - 1)


def _rank_mod_p(rows, p):
    rows = [[v % p for v in r] for r in rows]
    rank, col, ncols = 0, 0, len(rows[0])
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


@pytest.mark.parametrize("p", [7, 13, 19])
def test_point_counts_match_brute_force(p):
    assert len(enumerate_curve(p)) == _brute_count(p)


def test_curve_sizes():
    assert len(enumerate_curve(19)) == 27
    assert len(enumerate_curve(13)) == 9


def test_characteristic_three_rejected():
    with pytest.raises(BadCharacteristic):
        FermatCubic(3)


def test_omega_is_primitive_cube_root():
    w = omega(F19)
    assert w == F19(7)
    assert w ** 3 == F19.one and w != F19.one


def test_origin_is_a_flex(E):
    O = origin(F19)
    assert O == pt(1, -1, 0)
    assert third_point(O, O) == O


def test_third_point_is_collinear(E):
    for P, Q in product(E.points, repeat=2):
        R = third_point(P, Q)
        assert R.on_curve()
        det = (
            P.X * (Q.Y * R.Z - Q.Z * R.Y)
            - P.Y * (Q.X * R.Z - Q.Z * R.X)
            + P.Z * (Q.X * R.Y - Q.Y * R.X)
        )
        assert det.is_zero()


def test_group_axioms_exhaustive(E):
    pts = E.points
    O = E.O
    idx = E.index
    table = [[idx[group_add(P, Q)] for Q in pts] for P in pts]
    for P in pts:
        assert group_add(P, O) == P
        assert group_add(P, group_neg(P)) == O
    n = len(pts)
    assert all(table[i][j] == table[j][i] for i in range(n) for j in range(n))
    assert all(
        table[table[i][j]][k] == table[i][table[j][k]]
        for i in range(n) for j in range(n) for k in range(n)
    )


def test_sigma_and_eta(E):
    s = E.sigma()
    assert s.order() == 3 and len(s.fixed_points()) == 3
    assert E.sigma(2) == s @ s
    Q = pt(1, 4, 5)
    e = E.eta(Q)
    assert (e @ e).is_identity() and e(Q) == s(Q)


def test_first_witness(E):
    cert, skipped = find_elliptic_witness(19)
    assert cert.holds and skipped == []
    assert cert.Q == pt(1, 4, 5)
    assert admissible_points(E)[0] == cert.Q
    assert cert.P1 == pt(1, 6, 5) and cert.P2 == pt(1, 9, 16)
    assert cert.fixed_sigma == cert.fixed_tau == 3
    D = cert.report.cond_c.divisor
    assert D.degree == 4
    assert set(D.support()) == {pt(1, 4, 5), pt(1, 6, 5), pt(1, 6, 17), pt(1, 9, 16)}


def test_every_admissible_point(E):
    # every admissible point either passes or raises a documented hypothesis error
    passed = 0
    for Q in admissible_points(E):
        try:
            cert = verify_theorem4(19, Q, E)
        except HypothesisViolated:
            continue
        if cert.holds:
            passed += 1
    assert passed >= 1


def test_verify_rejects_points_on_axes(E):
    with pytest.raises(HypothesisViolated):
        verify_theorem4(19, E.O, E)


def test_certificate_json(E):
    js = verify_theorem4(19, pt(1, 4, 5), E).to_json()
    assert js["holds"] and js["fixed_points"] == {"sigma": 3, "tau": 3}
    assert js["criterion"]["degree_D"] == 4


def test_quartic_model(E):
    m = build_quartic_model(19, pt(1, 4, 5), E)
    assert m.kernel_dim == 1 and m.quartic.total_degree == 4
    assert len(m.image) == 23
    coeff = {mono: int(str(c)) for mono, c in m.quartic.terms.items()}
    for x, y in m.image:
        xi, yi = int(str(x)), int(str(y))
        assert sum(c * xi ** i * yi ** j for (i, j), c in coeff.items()) % 19 == 0
    rows = [[int(str(x)) ** i * int(str(y)) ** j for i, j in QUARTIC_MONOMIALS] for x, y in m.image]
    assert _rank_mod_p(rows, 19) == len(QUARTIC_MONOMIALS) - 1


def test_outer_points(E):
    cert = outer_delta_check(19, E)
    assert cert.holds and set(cert.results) == {"R1", "R2", "R3"}


def test_outer_negative_control(E):
    G = EllAutGroup(E.coordinate_scaling(0))
    assert not projection_fibers_match(E, pt(0, -1, 1), G)
