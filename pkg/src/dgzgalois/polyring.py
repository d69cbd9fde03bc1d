"""Sparse trivariate polynomials over the working field, binary forms, and
squarefree decomposition of univariate polynomials in characteristic p.

Univariate polynomials are coefficient lists, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fieldcore import Fel, FieldCtx

Exp = tuple[int, int, int]
VARS = ("x", "y", "z")


class NotDivisibleError(ArithmeticError):
    pass


def grevlex_key(e: Exp) -> tuple[int, int, int, int]:
    """Sort key for graded reverse lexicographic order with x > y > z."""
    return (e[0] + e[1] + e[2], -e[2], -e[1], -e[0])


def _coords(P) -> tuple[Fel, Fel, Fel]:
    return tuple(getattr(P, "coords", P))


def _matrix(M) -> tuple[Fel, ...]:
    return tuple(getattr(M, "matrix", M))


class TriPoly:
    """Polynomial in x, y, z stored as {exponent triple: nonzero coefficient}."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: dict[Exp, Fel] | None = None):
        self.ctx = ctx
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def variable(cls, ctx: FieldCtx, i: int) -> TriPoly:
        e = [0, 0, 0]
        e[i] = 1
        return cls(ctx, {tuple(e): 1})

    @classmethod
    def constant(cls, ctx: FieldCtx, c: Fel) -> TriPoly:
        return cls(ctx, {(0, 0, 0): c})

    @classmethod
    def homogeneous(cls, ctx: FieldCtx, terms: dict[Exp, Fel], degree: int) -> TriPoly:
        f = cls(ctx, terms)
        bad = [e for e in f.terms if sum(e) != degree]
        if bad:
            raise ValueError(f"terms {bad[:3]} are not of degree {degree}")
        return f

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    __hash__ = None

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: TriPoly) -> TriPoly:
        add = self.ctx.add
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = add(out.get(e, 0), c)
        return TriPoly(self.ctx, out)

    def __neg__(self) -> TriPoly:
        neg = self.ctx.neg
        return TriPoly(self.ctx, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: TriPoly) -> TriPoly:
        return self + (-other)

    def __mul__(self, other: TriPoly) -> TriPoly:
        ctx = self.ctx
        add, mul = ctx.add, ctx.mul
        out: dict[Exp, Fel] = {}
        for (a0, a1, a2), c in self.terms.items():
            for (b0, b1, b2), d in other.terms.items():
                e = (a0 + b0, a1 + b1, a2 + b2)
                out[e] = add(out.get(e, 0), mul(c, d))
        return TriPoly(ctx, out)

    def __pow__(self, k: int) -> TriPoly:
        result = TriPoly.constant(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scalar_mul(self, c: Fel) -> TriPoly:
        mul = self.ctx.mul
        return TriPoly(self.ctx, {e: mul(c, v) for e, v in self.terms.items()})

    def map_coeffs(self, fn) -> TriPoly:
        return TriPoly(self.ctx, {e: fn(c) for e, c in self.terms.items()})

    def sorted_terms(self) -> list[tuple[Exp, Fel]]:
        """Terms in decreasing grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exp, Fel]:
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def partial(self, i: int) -> TriPoly:
        ctx = self.ctx
        out = {}
        for e, c in self.terms.items():
            k = e[i] % ctx.p
            if k:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = ctx.mul(ctx.from_int(k), c)
        return TriPoly(ctx, out)

    def evaluate(self, pt: Sequence[Fel]) -> Fel:
        ctx = self.ctx
        x, y, z = pt
        pw = ctx.pow
        return ctx.sum(ctx.mul(c, ctx.mul(pw(x, a), ctx.mul(pw(y, b), pw(z, cc))))
                       for (a, b, cc), c in self.terms.items())

    def to_json(self) -> list:
        return [[list(e), self.ctx.to_json(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ctx: FieldCtx, data: list) -> TriPoly:
        return cls(ctx, {tuple(e): ctx.from_json(c) for e, c in data})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(VARS, e) if k)
            coef = "1" if c == 1 else f"[{c}]"
            parts.append(mono if mono and c == 1 else f"{coef}*{mono}" if mono else coef)
        return " + ".join(parts)


def exact_divide(numerator: TriPoly, divisor: TriPoly) -> TriPoly:
    """Quotient of an exact multivariate division under grevlex order.

    Raises NotDivisibleError when the remainder would be nonzero.
    """
    if divisor.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ctx = numerator.ctx
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    (l0, l1, l2), lc = divisor.leading_term()
    inv_lc = ctx.inv(lc)
    dterms = list(divisor.terms.items())
    rem = dict(numerator.terms)
    quot: dict[Exp, Fel] = {}
    while rem:
        e = max(rem, key=grevlex_key)
        s = (e[0] - l0, e[1] - l1, e[2] - l2)
        if min(s) < 0:
            raise NotDivisibleError(f"leading term {e} not divisible by {(l0, l1, l2)}")
        k = mul(rem[e], inv_lc)
        quot[s] = k
        nk = neg(k)
        for (d0, d1, d2), c in dterms:
            t = (s[0] + d0, s[1] + d1, s[2] + d2)
            v = add(rem.get(t, 0), mul(nk, c))
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return TriPoly(ctx, quot)


def substitute_linear(f: TriPoly, M) -> TriPoly:
    """f composed with the matrix M: variable i becomes sum_j M[i][j] * x_j."""
    ctx = f.ctx
    m = _matrix(M)
    forms = [TriPoly(ctx, {(1, 0, 0): m[3 * i], (0, 1, 0): m[3 * i + 1], (0, 0, 1): m[3 * i + 2]})
             for i in range(3)]
    powers: list[list[TriPoly]] = [[TriPoly.constant(ctx, 1)] for _ in range(3)]

    def power(i: int, k: int) -> TriPoly:
        lst = powers[i]
        while len(lst) <= k:
            lst.append(lst[-1] * forms[i])
        return lst[k]

    out = TriPoly(ctx)
    for (a, b, c), coef in f.terms.items():
        out = out + (power(0, a) * power(1, b) * power(2, c)).scalar_mul(coef)
    return out


def _binomial_expansion(ctx: FieldCtx, u: Fel, v: Fel, a: int, limit: int | None = None) -> list[tuple[int, Fel]]:
    """Nonzero terms (k, C(a,k) u^(a-k) v^k) of (u + v T)^a, k <= limit."""
    top = a if limit is None else min(a, limit)
    out = []
    p = ctx.p
    for k in range(top + 1):
        b = math.comb(a, k) % p
        if not b:
            continue
        c = ctx.mul(ctx.from_int(b), ctx.mul(ctx.pow(u, a - k), ctx.pow(v, k)))
        if c:
            out.append((k, c))
    return out


def local_expansion(f: TriPoly, Q: Sequence[Fel], order: int) -> dict[tuple[int, int], Fel]:
    """Truncated Taylor expansion of f at the projective point Q.

    Q must be normalized (first nonzero coordinate equal to 1).  With i0 that
    coordinate and u < w the two others, returns the terms X^i Y^j, i + j <=
    order, of f(Q + X e_u + Y e_w); this is f composed with the matrix whose
    columns are Q, e_u, e_w and dehomogenized at the first variable.
    """
    ctx = f.ctx
    Q = _coords(Q)
    i0 = next(i for i in range(3) if Q[i])
    u, w = [i for i in range(3) if i != i0]
    cache: dict[tuple[int, int], list[tuple[int, Fel]]] = {}

    def expand(idx: int, a: int) -> list[tuple[int, Fel]]:
        key = (idx, a)
        if key not in cache:
            cache[key] = _binomial_expansion(ctx, Q[idx], 1, a, order)
        return cache[key]

    add, mul = ctx.add, ctx.mul
    out: dict[tuple[int, int], Fel] = {}
    for e, c in f.terms.items():
        c = mul(c, ctx.pow(Q[i0], e[i0]))
        for i, ci in expand(u, e[u]):
            cc = mul(c, ci)
            for j, cj in expand(w, e[w]):
                if i + j > order:
                    break
                out[(i, j)] = add(out.get((i, j), 0), mul(cc, cj))
    return {k: v for k, v in out.items() if v}


# -- univariate polynomials ----------------------------------------------

def utrim(a: list[Fel]) -> list[Fel]:
    while a and not a[-1]:
        a.pop()
    return a


def uadd(ctx: FieldCtx, a: Sequence[Fel], b: Sequence[Fel]) -> list[Fel]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = ctx.add(out[i], c)
    return utrim(out)


def umul(ctx: FieldCtx, a: Sequence[Fel], b: Sequence[Fel]) -> list[Fel]:
    if not a or not b:
        return []
    add, mul = ctx.add, ctx.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return utrim(out)


def upow(ctx: FieldCtx, a: Sequence[Fel], k: int) -> list[Fel]:
    out = [1]
    for _ in range(k):
        out = umul(ctx, out, a)
    return out


def udivmod(ctx: FieldCtx, a: Sequence[Fel], b: Sequence[Fel]) -> tuple[list[Fel], list[Fel]]:
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], utrim(r)
    inv_lc = ctx.inv(b[-1])
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    quot = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        k = mul(c, inv_lc)
        quot[i - db] = k
        nk = neg(k)
        off = i - db
        for j, bj in enumerate(b):
            if bj:
                r[off + j] = add(r[off + j], mul(nk, bj))
    return utrim(quot), utrim(r[:db])


def umonic(ctx: FieldCtx, a: Sequence[Fel]) -> list[Fel]:
    if not a:
        return []
    inv = ctx.inv(a[-1])
    return [ctx.mul(inv, c) for c in a]


def ugcd(ctx: FieldCtx, a: Sequence[Fel], b: Sequence[Fel]) -> list[Fel]:
    """Monic gcd."""
    a, b = utrim(list(a)), utrim(list(b))
    while b:
        a, b = b, udivmod(ctx, a, b)[1]
    return umonic(ctx, a)


def uderiv(ctx: FieldCtx, a: Sequence[Fel]) -> list[Fel]:
    return utrim([ctx.mul(ctx.from_int(i), c) for i, c in enumerate(a)][1:])


def uexact_div(ctx: FieldCtx, a: Sequence[Fel], b: Sequence[Fel]) -> list[Fel]:
    q, r = udivmod(ctx, a, b)
    if r:
        raise NotDivisibleError("univariate division left a remainder")
    return q


def upth_root(ctx: FieldCtx, a: Sequence[Fel]) -> list[Fel]:
    """h with h(T)^p = a(T), for a a polynomial in T^p."""
    p = ctx.p
    if any(c for i, c in enumerate(a) if i % p):
        raise ValueError("polynomial is not a p-th power")
    return utrim([ctx.pth_root(a[i]) for i in range(0, len(a), p)])


@dataclass(frozen=True)
class SqfDecomp:
    """content * prod(factor ** mult), factors monic, squarefree, pairwise coprime."""

    content: Fel
    parts: tuple[tuple[int, tuple[Fel, ...]], ...]

    def reconstruct(self, ctx: FieldCtx) -> list[Fel]:
        out = [self.content]
        for mult, fac in self.parts:
            out = umul(ctx, out, upow(ctx, fac, mult))
        return out


def _sqf_monic(ctx: FieldCtx, f: list[Fel]) -> dict[int, list[Fel]]:
    out: dict[int, list[Fel]] = {}

    def put(mult: int, g: list[Fel]) -> None:
        if len(g) > 1:
            out[mult] = umul(ctx, out[mult], g) if mult in out else g

    if len(f) <= 1:
        return out
    df = uderiv(ctx, f)
    if not df:
        for mult, g in _sqf_monic(ctx, upth_root(ctx, f)).items():
            put(mult * ctx.p, g)
        return out
    c = ugcd(ctx, f, df)
    w = uexact_div(ctx, f, c)
    i = 1
    while len(w) > 1:
        y = ugcd(ctx, w, c)
        put(i, uexact_div(ctx, w, y))
        c = uexact_div(ctx, c, y)
        w = y
        i += 1
    if len(c) > 1:
        for mult, g in _sqf_monic(ctx, upth_root(ctx, c)).items():
            put(mult * ctx.p, g)
    return out


def squarefree_decompose(ctx: FieldCtx, g: Sequence[Fel]) -> SqfDecomp:
    g = utrim(list(g))
    if not g:
        raise ValueError("squarefree decomposition of the zero polynomial")
    parts = _sqf_monic(ctx, umonic(ctx, g))
    return SqfDecomp(g[-1], tuple((m, tuple(parts[m])) for m in sorted(parts)))


# -- binary forms ------------------------------------------------------------

@dataclass(frozen=True)
class BinForm:
    """sum_i coeffs[i] * s^(degree-i) * t^i."""

    ctx: FieldCtx
    degree: int
    coeffs: tuple[Fel, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def order_at_first(self) -> int:
        """Multiplicity of the root (s:t) = (1:0), i.e. the power of t dividing the form."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero form")

    def split_first_root(self) -> tuple[int, list[Fel]]:
        """(a, u): t^a divides the form, u(s) = form/t^a at t = 1, of degree d - a."""
        a = self.order_at_first()
        d = self.degree
        return a, utrim([self.coeffs[d - j] for j in range(d - a + 1)])


def restrict_to_line(f: TriPoly, A, B) -> BinForm:
    """The binary form g(s, t) = f(s*A + t*B); (1:0) corresponds to A."""
    ctx = f.ctx
    A, B = _coords(A), _coords(B)
    cross = (ctx.sub(ctx.mul(A[1], B[2]), ctx.mul(A[2], B[1])),
             ctx.sub(ctx.mul(A[2], B[0]), ctx.mul(A[0], B[2])),
             ctx.sub(ctx.mul(A[0], B[1]), ctx.mul(A[1], B[0])))
    if not any(cross):
        raise ValueError("restriction needs two distinct points")
    if not f.is_homogeneous():
        raise ValueError("restriction needs a homogeneous polynomial")
    d = max(f.degree, 0)
    add, mul = ctx.add, ctx.mul
    cache: dict[tuple[int, int], list[tuple[int, Fel]]] = {}

    def expand(j: int, a: int) -> list[tuple[int, Fel]]:
        key = (j, a)
        if key not in cache:
            cache[key] = _binomial_expansion(ctx, A[j], B[j], a)
        return cache[key]

    out = [0] * (d + 1)
    for (e0, e1, e2), c in f.terms.items():
        first = expand(0, e0)
        second = expand(1, e1)
        third = expand(2, e2)
        if not (first and second and third):
            continue
        partial: dict[int, Fel] = {}
        for i, ci in first:
            cc = mul(c, ci)
            for j, cj in second:
                k = i + j
                partial[k] = add(partial.get(k, 0), mul(cc, cj))
        for k, v in partial.items():
            if v:
                for j, cj in third:
                    out[k + j] = add(out[k + j], mul(v, cj))
    return BinForm(ctx, d, tuple(out))


def binform_from_univariate(ctx: FieldCtx, u: Sequence[Fel], degree: int) -> BinForm:
    """Homogenize u(t) to degree d as sum u[i] s^(d-i) t^i."""
    coeffs = list(u) + [0] * (degree + 1 - len(u))
    return BinForm(ctx, degree, tuple(coeffs))


def _merge(profile: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    acc: dict[int, int] = {}
    for mult, count in profile:
        if count:
            acc[mult] = acc.get(mult, 0) + count
    return sorted(acc.items())


def univariate_profile(ctx: FieldCtx, u: Sequence[Fel]) -> list[tuple[int, int]]:
    """(multiplicity, number of distinct roots) over the algebraic closure."""
    if len(utrim(list(u))) <= 1:
        return []
    dec = squarefree_decompose(ctx, u)
    return _merge((m, len(fac) - 1) for m, fac in dec.parts)


def multiplicity_profile(g: BinForm) -> list[tuple[int, int]]:
    """(multiplicity, count of distinct projective roots), ascending in multiplicity."""
    if g.is_zero():
        raise ValueError("multiplicity profile of the zero form")
    a, u = g.split_first_root()
    rest = univariate_profile(g.ctx, u)
    return _merge(([(a, 1)] if a else []) + rest)


# -- roots, interpolation, resultants --------------------------------------

def upowmod(ctx: FieldCtx, base: Sequence[Fel], e: int, mod: Sequence[Fel]) -> list[Fel]:
    result = [1]
    base = udivmod(ctx, base, mod)[1]
    while e:
        if e & 1:
            result = udivmod(ctx, umul(ctx, result, base), mod)[1]
        e >>= 1
        if e:
            base = udivmod(ctx, umul(ctx, base, base), mod)[1]
    return result


def _split_linear(ctx: FieldCtx, h: list[Fel], rng) -> list[Fel]:
    """Roots of a monic h that is a product of distinct linear factors."""
    if len(h) == 1:
        return []
    if len(h) == 2:
        return [ctx.neg(h[0])]
    while True:
        a = ctx.random_element(rng)
        if ctx.p == 2:
            term = [0, a]
            acc: list[Fel] = []
            for _ in range(ctx.n):
                acc = uadd(ctx, acc, term)
                term = upowmod(ctx, term, 2, h)
        else:
            acc = upowmod(ctx, [a, 1], (ctx.size - 1) // 2, h)
            acc = uadd(ctx, acc, [ctx.neg(1)])
        g = ugcd(ctx, h, acc)
        if 1 < len(g) < len(h):
            return (_split_linear(ctx, g, rng)
                    + _split_linear(ctx, uexact_div(ctx, h, g), rng))


def uroots(ctx: FieldCtx, g: Sequence[Fel], seed: int = 0) -> list[Fel]:
    """Distinct roots of g lying in the working field, sorted."""
    import random

    g = umonic(ctx, utrim(list(g)))
    if len(g) <= 1:
        return []
    xp = [0, 1]
    for _ in range(ctx.n):
        xp = upowmod(ctx, xp, ctx.p, g)
    h = ugcd(ctx, g, uadd(ctx, xp, [0, ctx.neg(1)]))
    return sorted(_split_linear(ctx, h, random.Random(seed)))


def interpolate(ctx: FieldCtx, xs: Sequence[Fel], ys: Sequence[Fel]) -> list[Fel]:
    """Newton interpolation through distinct nodes."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = ctx.div(ctx.sub(coef[i], coef[i - 1]), ctx.sub(xs[i], xs[i - j]))
    out: list[Fel] = [coef[-1]]
    for i in range(n - 2, -1, -1):
        out = uadd(ctx, umul(ctx, out, [ctx.neg(xs[i]), 1]), [coef[i]])
    return out


def det(ctx: FieldCtx, rows: list[list[Fel]]) -> Fel:
    """Determinant by Gaussian elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    result = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = ctx.neg(result)
        pv = a[col][col]
        result = ctx.mul(result, pv)
        inv = ctx.inv(pv)
        for r in range(col + 1, n):
            if a[r][col]:
                k = ctx.neg(ctx.mul(a[r][col], inv))
                a[r] = [ctx.add(x, ctx.mul(k, y)) for x, y in zip(a[r], a[col])]
    return result


def sylvester_resultant(ctx: FieldCtx, a: Sequence[Fel], b: Sequence[Fel], m: int, n: int) -> Fel:
    """Resultant of a and b taken with formal degrees m and n."""
    a = list(a) + [0] * (m + 1 - len(a))
    b = list(b) + [0] * (n + 1 - len(b))
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j in range(m + 1):
            row[i + j] = a[m - j]
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j in range(n + 1):
            row[i + j] = b[n - j]
        rows.append(row)
    return det(ctx, rows)
