import random

import pytest
from hypothesis import given, settings, strategies as st

from dgzgalois import projplane as pp
from dgzgalois.fieldcore import FieldError, ctx_for_q, make_ctx

CTX = ctx_for_q(3, 12)


@pytest.mark.parametrize("q,L", [(2, 12), (3, 12), (4, 6), (5, 2)])
def test_point_counts(q, L):
    ctx = ctx_for_q(q, L)
    for k in (1, 2):
        pts = pp.enumerate_points(ctx, k)
        qk = q**k
        assert len(pts) == len(set(pts)) == qk * qk + qk + 1
        assert sum(1 for P in pts if P.def_degree == 1) == q * q + q + 1


def test_enumeration_order():
    pts = pp.enumerate_points(CTX, 1)
    assert pts[0].coords == (1, 0, 0)
    assert pts[-1].coords == (0, 0, 1)
    assert all(P.coords[0] == 1 for P in pts[:9])


def test_every_line_has_q_plus_1_points():
    ctx = ctx_for_q(3, 12)
    pts = pp.enumerate_points(ctx, 1)
    for ell in pp.enumerate_lines(ctx, 1):
        on = [P for P in pts if pp.incident(ctx, P, ell)]
        assert len(on) == 4
        assert set(on) == set(pp.points_on_line(ctx, ell, 1))


def test_pencil():
    P = pp.point(CTX, (0, 1, 0))
    pencil = pp.pencil_through(CTX, P, 2)
    assert len(pencil) == len(set(pencil)) == 10
    assert all(pp.incident(CTX, P, ell) for ell in pencil)
    theta = CTX.subfield_generator(3)
    Q = pp.point(CTX, (1, theta, 0))
    with pytest.raises(FieldError):
        pp.pencil_through(CTX, Q, 2)


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        pp.point(CTX, (0, 0, 0))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_join_meet_duality(seed):
    rng = random.Random(seed)
    A = [CTX.random_element(rng) for _ in range(3)]
    B = [CTX.random_element(rng) for _ in range(3)]
    if not any(pp.cross(CTX, A, B)) or not any(A) or not any(B):
        return
    P, Q = pp.point(CTX, A), pp.point(CTX, B)
    ell = pp.line_through(CTX, P, Q)
    assert pp.incident(CTX, P, ell) and pp.incident(CTX, Q, ell)
    R = pp.other_point(CTX, ell, P)
    assert R != P and pp.incident(CTX, R, ell)
    m = pp.line_through(CTX, P, R)
    assert m == ell


def test_def_degree():
    theta = CTX.subfield_generator(4)
    P = pp.point(CTX, (1, theta, 0))
    assert P.def_degree == 4
    assert pp.point(CTX, (2, 2, 0)).def_degree == 1
    assert pp.point_from_json(CTX, P.to_json(CTX)) == P
