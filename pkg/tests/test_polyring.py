import random

import pytest
from hypothesis import given, settings, strategies as st

from dgzgalois.fieldcore import ctx_for_q, make_ctx
from dgzgalois.polyring import (NotDivisibleError, TriPoly, exact_divide, grevlex_key, interpolate,
                                local_expansion, multiplicity_profile, restrict_to_line,
                                squarefree_decompose, substitute_linear, sylvester_resultant, uderiv,
                                umul, upow, uroots, utrim)

CTX3 = make_ctx(3, 1, 2)
CTX2 = make_ctx(2, 1, 4)


def rand_poly(ctx, rng, degree, nterms, homogeneous=False):
    terms = {}
    for _ in range(nterms):
        d = degree if homogeneous else rng.randint(0, degree)
        a = rng.randint(0, d)
        b = rng.randint(0, d - a)
        terms[(a, b, d - a - b)] = ctx.random_element(rng)
    return TriPoly(ctx, terms)


def test_grevlex_order():
    # x > y > z, and degree first; among degree 2: x^2 > xy > y^2 > xz > yz > z^2
    monos = [(0, 0, 2), (0, 1, 1), (1, 0, 1), (0, 2, 0), (1, 1, 0), (2, 0, 0)]
    assert sorted(monos, key=grevlex_key) == monos
    assert grevlex_key((0, 0, 3)) > grevlex_key((2, 0, 0))


def test_arithmetic_small():
    ctx = CTX3
    x, y, z = (TriPoly.variable(ctx, i) for i in range(3))
    f = (x + y) ** 3
    assert f == x ** 3 + y ** 3  # characteristic 3
    assert (x - x).is_zero()
    assert (x * y + z * z).is_homogeneous()
    assert not (x + TriPoly.constant(ctx, 1)).is_homogeneous()
    assert f.degree == 3
    assert TriPoly.from_json(ctx, f.to_json()) == f


def test_homogeneous_guard():
    with pytest.raises(ValueError):
        TriPoly.homogeneous(CTX3, {(1, 0, 0): 1, (0, 0, 2): 1}, 2)


def test_partials_char_p():
    ctx = CTX2
    x, y, z = (TriPoly.variable(ctx, i) for i in range(3))
    f = x * x * y + x * y * z
    assert f.partial(0) == y * z  # d/dx x^2 y = 2xy = 0
    assert f.partial(1) == x * x + x * z


def test_exact_division_roundtrip_seeded():
    rng = random.Random(11)
    for i in range(200):
        ctx = CTX3 if i % 2 else CTX2
        f = rand_poly(ctx, rng, 5, 6)
        h = rand_poly(ctx, rng, 4, 4)
        if h.is_zero():
            continue
        assert exact_divide(f * h, h) == f


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 6), st.integers(1, 6))
def test_exact_division_roundtrip_property(seed, df, dh):
    rng = random.Random(seed)
    f = rand_poly(CTX3, rng, df, 5)
    h = rand_poly(CTX3, rng, dh, 4)
    if h.is_zero():
        return
    assert exact_divide(f * h, h) == f


def test_exact_division_rejects():
    ctx = CTX3
    x, y, z = (TriPoly.variable(ctx, i) for i in range(3))
    with pytest.raises(NotDivisibleError):
        exact_divide(x * x + y, x)
    with pytest.raises(ZeroDivisionError):
        exact_divide(x, TriPoly(ctx))


def _random_univariate(ctx, rng, deg):
    u = [ctx.random_element(rng) for _ in range(deg)] + [1]
    return u


def test_squarefree_reconstruction_1000_products():
    rng = random.Random(5)
    fields = [CTX3, CTX2, make_ctx(2, 2, 2), make_ctx(5, 1, 1), ctx_for_q(3, 12)]
    for i in range(1000):
        ctx = fields[i % len(fields)]
        g = [ctx.random_element(rng) or 1]
        for _ in range(rng.randint(1, 4)):
            fac = _random_univariate(ctx, rng, rng.randint(1, 3))
            g = umul(ctx, g, upow(ctx, fac, rng.choice([1, 1, 2, 3, ctx.p, 2 * ctx.p])))
        dec = squarefree_decompose(ctx, g)
        assert dec.reconstruct(ctx) == utrim(g)
        mults = [m for m, _ in dec.parts]
        assert mults == sorted(set(mults))
        for m, fac in dec.parts:
            fac = list(fac)
            assert fac[-1] == 1
            # squarefree: gcd with derivative is 1 (fac has no repeated roots)
            from dgzgalois.polyring import ugcd
            assert len(ugcd(ctx, fac, uderiv(ctx, fac))) == 1


def test_squarefree_known_case():
    ctx = CTX3
    # (t+1)^3 (t+2)^2 t over F_3
    g = umul(ctx, umul(ctx, upow(ctx, [1, 1], 3), upow(ctx, [2, 1], 2)), [0, 1])
    dec = squarefree_decompose(ctx, g)
    assert dict((m, list(f)) for m, f in dec.parts) == {1: [0, 1], 2: [2, 1], 3: [1, 1]}
    with pytest.raises(ValueError):
        squarefree_decompose(ctx, [])


def test_restrict_to_line_matches_evaluation():
    rng = random.Random(9)
    ctx = ctx_for_q(3, 12)
    for _ in range(30):
        f = rand_poly(ctx, rng, 5, 8, homogeneous=True)
        A = [ctx.random_element(rng) for _ in range(3)]
        B = [ctx.random_element(rng) for _ in range(3)]
        if A == B or not any(A) or not any(B):
            continue
        try:
            g = restrict_to_line(f, A, B)
        except ValueError:
            continue  # dependent points
        s, t = ctx.random_element(rng), ctx.random_element(rng)
        pt = [ctx.add(ctx.mul(s, a), ctx.mul(t, b)) for a, b in zip(A, B)]
        val = ctx.sum(ctx.mul(c, ctx.mul(ctx.pow(s, g.degree - i), ctx.pow(t, i)))
                      for i, c in enumerate(g.coeffs))
        assert val == f.evaluate(pt)


def test_multiplicity_profile_counts_degree():
    ctx = CTX3
    x, y, z = (TriPoly.variable(ctx, i) for i in range(3))
    f = x * x * y + y * y * y + z * z * z  # arbitrary cubic
    g = restrict_to_line(f, (1, 0, 0), (0, 1, 0))
    prof = multiplicity_profile(g)
    assert sum(e * n for e, n in prof) == 3


def test_substitute_linear_identity_and_swap():
    rng = random.Random(4)
    f = rand_poly(CTX3, rng, 4, 6, homogeneous=True)
    assert substitute_linear(f, (1, 0, 0, 0, 1, 0, 0, 0, 1)) == f
    swapped = substitute_linear(f, (0, 1, 0, 1, 0, 0, 0, 0, 1))
    assert swapped == TriPoly(CTX3, {(b, a, c): v for (a, b, c), v in f.terms.items()})


def test_local_expansion_at_origin_chart():
    ctx = CTX3
    x, y, z = (TriPoly.variable(ctx, i) for i in range(3))
    f = y * y * z - x * x * x  # cusp at (0:0:1)
    exp = local_expansion(f, (0, 0, 1), 3)
    assert min(i + j for i, j in exp) == 2


def test_uroots_and_interpolate():
    ctx = ctx_for_q(2, 12)
    rng = random.Random(1)
    roots = sorted({ctx.random_element(rng) for _ in range(6)})
    poly = [1]
    for r in roots:
        poly = umul(ctx, poly, [r, 1])
    poly = umul(ctx, poly, [1, 1, 1])  # irreducible over F_2, roots in F_4 lie in F_(2^12)
    found = uroots(ctx, poly)
    f4 = [a for a in ctx.enumerate_subfield(2) if ctx.element_degree(a) == 2]
    assert found == sorted(set(roots) | set(f4))
    xs = [ctx.exp(i) for i in range(len(poly))]
    ys = [ctx.sum(ctx.mul(c, ctx.pow(x, i)) for i, c in enumerate(poly)) for x in xs]
    assert interpolate(ctx, xs, ys) == poly


def test_sylvester_resultant():
    ctx = CTX3
    # common root t=1: (t-1)(t+1) and (t-1)
    assert sylvester_resultant(ctx, [2, 0, 1], [2, 1], 2, 1) == 0
    # t^2+1 and t: resultant = 1 (value of t^2+1 at 0, up to sign)
    assert sylvester_resultant(ctx, [1, 0, 1], [0, 1], 2, 1) in (1, 2)
