import random

import pytest

from dgzgalois import projplane as pp
from dgzgalois.pglgroup import (_symbolic_scalar, act, compose, enumerate_pgl, generated_subgroup,
                                identity, inverse, is_closed_group, is_projection_stabilizer, pgl,
                                pgl_order, positive_certificate, preserving_scalars, sigma, tau)


@pytest.mark.parametrize("q,order", [(2, 168), (3, 5616), (4, 60480)])
def test_pgl_order_formula(q, order):
    assert pgl_order(q) == order


@pytest.mark.parametrize("q", [2, 3])
def test_enumeration_distinct(q, curve2, curve3):
    curve = curve2 if q == 2 else curve3
    G = enumerate_pgl(curve.ctx, 1)
    assert len(G) == len(set(G)) == pgl_order(q)


def test_group_laws(curve3):
    ctx = curve3.ctx
    rng = random.Random(0)
    G = enumerate_pgl(ctx, 1)
    for _ in range(50):
        A, B, C = rng.choice(G), rng.choice(G), rng.choice(G)
        assert compose(ctx, A, compose(ctx, B, C)) == compose(ctx, compose(ctx, A, B), C)
        assert compose(ctx, A, inverse(ctx, A)) == identity(ctx)
        P = rng.choice(pp.enumerate_points(ctx, 2))
        assert act(ctx, compose(ctx, A, B), P) == act(ctx, A, act(ctx, B, P))


def test_invariance_q2(curve2):
    G = enumerate_pgl(curve2.ctx, 1)
    assert all(s is not None for s in preserving_scalars(curve2, G))


def test_grid_agrees_with_symbolic(curve3):
    ctx = curve3.ctx
    rng = random.Random(1)
    G = enumerate_pgl(ctx, 1)
    sample = [rng.choice(G) for _ in range(10)]
    # also elements over F_9 that do not preserve the curve
    els = ctx.enumerate_subfield(2)
    sample.append(pgl(ctx, (1, els[3], 0, 0, 1, 0, 0, 0, 1)))
    assert preserving_scalars(curve3, sample) == [_symbolic_scalar(curve3, A) for A in sample]
    assert preserving_scalars(curve3, sample[-1:]) == [None]


def test_sigma_tau_fix_projection(curve3):
    ctx = curve3.ctx
    P = pp.point(ctx, (0, 1, 0))
    fq = ctx.enumerate_subfield(1)
    mats = [sigma(ctx, g, b) for g in fq for b in fq] + [tau(ctx, m) for m in fq[1:]]
    for A in mats:
        assert is_projection_stabilizer(ctx, A, P)
    assert all(s is not None for s in preserving_scalars(curve3, mats))
    group = generated_subgroup(ctx, mats)
    assert len(group) == 18 and is_closed_group(ctx, list(group))


def test_positive_certificate_q3(curve3):
    ctx = curve3.ctx
    ev = positive_certificate(curve3, pp.point(ctx, (0, 1, 0)), 2)
    assert ev is not None and ev.order == 18
    assert len(generated_subgroup(ctx, ev.generators)) == 18


def test_no_certificate_at_singular_point(curve3):
    ctx = curve3.ctx
    theta = ctx.subfield_generator(2)
    assert positive_certificate(curve3, pp.point(ctx, (1, theta, 0)), 2) is None
