import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dgzgalois.fieldcore import (FieldError, choose_modulus, ctx_for_q, divisors, is_irreducible,
                                 make_ctx, prime_power)

SMALL = [(2, 1, 4), (3, 1, 2), (2, 2, 3), (5, 1, 2), (3, 2, 2)]


def _sympy_irreducible(coeffs, p):
    t = sympy.symbols("t")
    poly = sympy.Poly(list(reversed(coeffs)), t, modulus=p)
    return poly.is_irreducible


@pytest.mark.parametrize("p,n,expected", [
    (2, 2, (1, 1, 1)),   # t^2 + t + 1, the only irreducible quadratic over F_2
    (3, 2, (1, 0, 1)),   # t^2 + 1
])
def test_modulus_oracle(p, n, expected):
    assert choose_modulus(p, n) == expected


@pytest.mark.parametrize("p,n", [(2, 12), (3, 12), (2, 24), (2, 7), (5, 3)])
def test_modulus_irreducible_matches_sympy(p, n):
    mod = choose_modulus(p, n)
    assert len(mod) == n + 1 and mod[-1] == 1
    assert _sympy_irreducible(mod, p)


def test_is_irreducible_agrees_with_sympy():
    rng = random.Random(7)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 6)
        cand = [rng.randrange(p) for _ in range(n)] + [1]
        assert is_irreducible(cand, p) == _sympy_irreducible(cand, p), (cand, p)


@pytest.mark.parametrize("q,pm", [(2, (2, 1)), (4, (2, 2)), (9, (3, 2)), (27, (3, 3)), (7, (7, 1))])
def test_prime_power(q, pm):
    assert prime_power(q) == pm


@pytest.mark.parametrize("q", [0, 1, 6, 12, 100])
def test_prime_power_rejects(q):
    with pytest.raises(FieldError):
        prime_power(q)


@pytest.mark.parametrize("p,m,L", SMALL)
def test_generator_is_primitive(p, m, L):
    ctx = make_ctx(p, m, L)
    g = ctx.generator
    order = ctx.order
    assert ctx.pow(g, order) == 1
    for r in sympy.factorint(order):
        assert ctx.pow(g, order // r) != 1


def test_field_axioms_10k_cases():
    """Seeded randomized field axioms over several fields, 10^4 cases in total."""
    rng = random.Random(2024)
    fields = [make_ctx(*s) for s in SMALL] + [ctx_for_q(3, 12), ctx_for_q(2, 12)]
    cases = 0
    for i in range(10_000):
        ctx = fields[i % len(fields)]
        a, b, c = (ctx.random_element(rng) for _ in range(3))
        assert ctx.add(a, b) == ctx.add(b, a)
        assert ctx.mul(a, b) == ctx.mul(b, a)
        assert ctx.add(ctx.add(a, b), c) == ctx.add(a, ctx.add(b, c))
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
        assert ctx.add(a, ctx.neg(a)) == 0
        assert ctx.sub(ctx.add(a, b), b) == a
        assert ctx.mul(a, 1) == a and ctx.add(a, 0) == a
        if a:
            assert ctx.mul(a, ctx.inv(a)) == 1
            assert ctx.div(ctx.mul(a, b), a) == b
        assert ctx.mul(a, b) == ctx._slow_mul(a, b)
        cases += 1
    assert cases >= 10_000


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(SMALL), st.integers(min_value=0), st.integers(min_value=0),
       st.integers(min_value=0, max_value=50))
def test_pow_and_frobenius(field, ia, ib, e):
    ctx = make_ctx(*field)
    a = ia % ctx.size
    b = ib % ctx.size
    assert ctx.pow(a, e) == ctx._slow_pow(a, e)
    # Frobenius is additive and multiplicative
    assert ctx.frobenius(ctx.add(a, b)) == ctx.add(ctx.frobenius(a), ctx.frobenius(b))
    assert ctx.frobenius(ctx.mul(a, b)) == ctx.mul(ctx.frobenius(a), ctx.frobenius(b))
    assert ctx.frobenius(a, ctx.L) == a
    r = ctx.pth_root(a)
    assert ctx.pow(r, ctx.p) == a


@pytest.mark.parametrize("p,m,L", SMALL + [(3, 1, 12)])
def test_subfields(p, m, L):
    ctx = make_ctx(p, m, L)
    for k in divisors(L):
        els = ctx.enumerate_subfield(k)
        assert len(els) == len(set(els)) == ctx.q**k
        assert all(ctx.in_subfield(a, k) for a in els)
        assert all(ctx.element_degree(a) <= k and k % ctx.element_degree(a) == 0 for a in els)
    with pytest.raises(FieldError):
        ctx.enumerate_subfield(L + 1)


def test_fq_is_prime_field_when_m_is_1():
    ctx = ctx_for_q(3, 12)
    assert sorted(ctx.enumerate_subfield(1)) == [0, 1, 2]


def test_json_roundtrip():
    ctx = ctx_for_q(4, 3)
    for a in range(ctx.size):
        assert ctx.from_json(ctx.to_json(a)) == a
    with pytest.raises(FieldError):
        ctx.from_json([2] + [0] * (ctx.n - 1))


def test_vectorized_matches_scalar():
    import numpy as np
    rng = random.Random(3)
    for ctx in (ctx_for_q(3, 12), make_ctx(2, 2, 3)):
        a = np.array([ctx.random_element(rng) for _ in range(500)], dtype=np.int64)
        b = np.array([ctx.random_element(rng) for _ in range(500)], dtype=np.int64)
        assert list(ctx.vmul(a, b)) == [ctx.mul(int(x), int(y)) for x, y in zip(a, b)]
        assert list(ctx.vadd(a, b)) == [ctx.add(int(x), int(y)) for x, y in zip(a, b)]
