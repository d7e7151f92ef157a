from fractions import Fraction

import pytest

from galoispoints.fields import QQ, ExtensionField, GF
from galoispoints.projective import Moebius, ProjPoint, generate


@pytest.fixture(scope="session")
def golden():
    """Q(a) with a^2 + a - 1 = 0."""
    return ExtensionField(QQ, [-1, 1, 1])


@pytest.fixture(scope="session")
def scenario1():
    sigma = Moebius(QQ, 1, -1, 1, 1)
    tau = Moebius(QQ, 0, 1, Fraction(-1, 2), 1)
    return {
        "sigma": sigma,
        "tau": tau,
        "G1": generate([sigma]),
        "G2": generate([tau]),
        "P1": ProjPoint(QQ, 2, 1),
        "P2": ProjPoint(QQ, -1, 1),
    }


def klein(F, alpha):
    alpha = F(alpha)
    return generate([Moebius(F, 0, 1, alpha, 0), Moebius(F, 1, -alpha.inv(), 1, -1)])


@pytest.fixture(scope="session")
def klein_group():
    return klein


@pytest.fixture(scope="session")
def scenario4(golden):
    a = golden.generator
    sigma = Moebius(golden, 1, -1, 1, -a)
    tau = Moebius(golden, 0, 1, a - 1, 1)
    return {
        "a": a,
        "sigma": sigma,
        "tau": tau,
        "G1": generate([sigma]),
        "G2": generate([tau]),
        "P1": ProjPoint(golden, a, 2 * a - 1),
        "P2": ProjPoint(golden, 1, 1 + a),
    }


F19 = GF(19)
