"""Degree reduction over fields and elementary matrix factorization."""

import pytest
from gmpy2 import mpq

from tame2.autmap import AutoMap, apply_factor_list, nagata
from tame2.errors import DeterminantNotOne, NotAnAutomorphism, NotSpecial
from tame2.poly import Poly2
from tame2.ring import GF, QQ, dual
from tame2.tame_field import (
    ElementaryMatrix,
    antidiagonal_swap_factors,
    diagonal_unit_factors,
    jvdk_decompose,
    jvdk_decompose_traced,
    mat_mul,
    sa_to_ea_factors,
    sl2_to_elementary,
)

from helpers import (
    random_elementary_factors,
    random_non_automorphism,
    random_sl2,
    random_tame_factors,
    seeded,
)


def X(ring):
    return Poly2.variable(ring, "X")


def Y(ring):
    return Poly2.variable(ring, "Y")


def _product(ring, factors):
    M = ((ring.one, ring.zero), (ring.zero, ring.one))
    for em in factors:
        M = mat_mul(ring, M, em.matrix())
    return M


def test_three_factor_antidiagonal_identity():
    for ring in (QQ, GF(5)):
        want = ((ring.zero, ring.one), (ring.neg(ring.one), ring.zero))
        factors = antidiagonal_swap_factors(ring)
        assert len(factors) == 3
        assert _product(ring, factors) == want


def test_five_factor_diagonal_identity():
    F5 = GF(5)
    for a in (2, 3, 4):
        factors = diagonal_unit_factors(F5, a)
        assert len(factors) == 5
        assert _product(F5, factors) == ((a, 0), (0, F5.inv(a)))
    a = mpq(7, 3)
    factors = diagonal_unit_factors(QQ, a)
    assert _product(QQ, factors) == ((a, mpq(0)), (mpq(0), mpq(3, 7)))


def test_sl2_antidiagonal_gives_paper_factors():
    M = ((QQ.zero, QQ.one), (QQ.neg(QQ.one), QQ.zero))
    factors = sl2_to_elementary(QQ, M)
    assert factors == antidiagonal_swap_factors(QQ)


def test_sl2_identity_empty():
    M = ((QQ.one, QQ.zero), (QQ.zero, QQ.one))
    assert sl2_to_elementary(QQ, M) == []


def test_sl2_rejects_other_determinants():
    with pytest.raises(DeterminantNotOne):
        sl2_to_elementary(QQ, ((mpq(2), mpq(0)), (mpq(0), mpq(2))))


def test_sl2_no_unit_entry_over_non_local_ring():
    from tame2.errors import NoUnitEntry
    from tame2.ring import ZZ

    # determinant one over ZZ with every entry a non-unit
    with pytest.raises(NoUnitEntry):
        sl2_to_elementary(ZZ, ((3, 4), (2, 3)))


def test_sl2_unit_entry_scan_branches():
    from tame2.ring import ZZ

    # over a local ring a nonunit corner forces units throughout the rest of
    # its row and column, so only the first two scan positions can fire
    D = dual(GF(3))
    t = D.t
    one = D.one
    m_b = ((t, one), (D.sub(t, one), one))  # det = t - (t - 1) = 1
    factors = sl2_to_elementary(D, m_b)
    assert _product(D, factors) == m_b

    # the later positions arise over non-local rings with unit entries
    m_c = ((2, 3), (1, 2))  # a, b nonunits in ZZ; c = 1
    factors = sl2_to_elementary(ZZ, m_c)
    assert _product(ZZ, factors) == m_c
    m_d = ((7, 2), (3, 1))  # only d is a unit
    factors = sl2_to_elementary(ZZ, m_d)
    assert _product(ZZ, factors) == m_d


def test_sl2_round_trip_random():
    rng = seeded("sl2-roundtrip")
    for ring in (GF(5), GF(7), dual(GF(3)), QQ):
        for _ in range(200):
            M = random_sl2(rng, ring)
            factors = sl2_to_elementary(ring, M)
            assert _product(ring, factors) == M


def test_jvdk_round_trip_small():
    ring = QQ
    inner = AutoMap(ring, X(ring) + Y(ring), Y(ring))
    outer = AutoMap(ring, X(ring), Y(ring) + X(ring) ** 2)
    phi = outer.compose(inner)
    cert = jvdk_decompose(phi)
    assert cert.verify()


def test_jvdk_round_trip_random():
    rng = seeded("jvdk-roundtrip")
    for ring in (QQ, GF(5)):
        for _ in range(120):
            phi = apply_factor_list(ring, random_tame_factors(rng, ring, 5, 3, comp_cap=18))
            cert = jvdk_decompose(phi)
            assert cert.verify()


def test_jvdk_equal_degree_tie_break():
    # mixing coordinates linearly produces equal top degrees with
    # proportional leading forms
    lin = __import__("tame2.autmap", fromlist=["LinearFactor"]).LinearFactor(
        QQ, mpq(1), mpq(1), mpq(1), mpq(2)
    )
    elem = AutoMap(QQ, X(QQ) + Y(QQ) ** 3, Y(QQ))
    phi = lin.as_map().compose(elem)
    assert phi.F.total_degree() == phi.G.total_degree() == 3
    cert = jvdk_decompose(phi)
    assert cert.verify()


def test_jvdk_rejects_singular():
    with pytest.raises(NotAnAutomorphism):
        jvdk_decompose(AutoMap(QQ, X(QQ) ** 2, Y(QQ)))
    with pytest.raises(NotAnAutomorphism):
        jvdk_decompose(AutoMap(QQ, X(QQ), X(QQ)))


def test_jvdk_rejects_random_non_automorphisms():
    rng = seeded("jvdk-reject")
    for ring in (QQ, GF(5)):
        for _ in range(40):
            phi = random_non_automorphism(rng, ring)
            with pytest.raises(NotAnAutomorphism):
                jvdk_decompose(phi)


def test_jvdk_nagata_over_field():
    cert = jvdk_decompose(nagata(QQ, mpq(1)))
    assert cert.verify()


def test_reduction_trace_strictly_decreasing():
    rng = seeded("trace")
    for ring in (QQ, GF(5)):
        for _ in range(40):
            phi = apply_factor_list(ring, random_tame_factors(rng, ring, 5, 3, comp_cap=18))
            cert, trace = jvdk_decompose_traced(phi)
            assert cert.verify()
            assert trace.strictly_decreasing()


def test_sa_to_ea_rotation():
    phi = AutoMap(QQ, Y(QQ), -X(QQ))
    cert = sa_to_ea_factors(phi)
    assert cert.verify()
    assert cert.is_elementary_only()
    assert len(cert.factors) == 3


def test_sa_to_ea_identity_empty():
    cert = sa_to_ea_factors(AutoMap.identity(QQ))
    assert cert.verify()
    assert cert.factors == []


def test_sa_to_ea_requires_special():
    with pytest.raises(NotSpecial):
        sa_to_ea_factors(AutoMap(QQ, X(QQ).scale(mpq(2)), Y(QQ)))


def test_sa_to_ea_random_products():
    rng = seeded("sa-ea")
    for ring in (QQ, GF(5)):
        for _ in range(80):
            phi = apply_factor_list(
                ring, random_elementary_factors(rng, ring, 6, 3, comp_cap=18)
            )
            cert = sa_to_ea_factors(phi)
            assert cert.verify()
            assert cert.is_elementary_only()


def test_elementary_matrix_as_factor():
    em = ElementaryMatrix(QQ, "upper", mpq(3))
    assert em.as_factor().as_map() == AutoMap(QQ, X(QQ) + Y(QQ).scale(mpq(3)), Y(QQ))
    em = ElementaryMatrix(QQ, "lower", mpq(-2))
    assert em.as_factor().as_map() == AutoMap(QQ, X(QQ), Y(QQ) + X(QQ).scale(mpq(-2)))
