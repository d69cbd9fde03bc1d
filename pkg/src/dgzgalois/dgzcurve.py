"""The Dickson-Guralnick-Zieve plane curve: construction, local structure,
singular locus, and the intersection-order scans on singular and smooth points.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import projplane as pp
from .fieldcore import Fel, FieldCtx, ctx_for_q
from .polyring import BinForm, TriPoly, exact_divide, local_expansion, restrict_to_line
from .projplane import ProjLine, ProjPoint

ASSUMPTIONS = {
    "irreducible": "F is taken to be absolutely irreducible; this is not machine-checked",
    "unibranch": "every curve point is unibranch (normalization bijective); "
                 "intersection multiplicities are read as branch orders",
}


class ConstructionError(RuntimeError):
    pass


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def moore_det(ctx: FieldCtx, q: int, i: int, j: int) -> TriPoly:
    """det of the matrix with rows (v, v^(q^i), v^(q^j)) for v = x, y, z."""
    exps = (1, q**i, q**j)
    terms = {}
    for perm in itertools.permutations(range(3)):
        e = tuple(exps[perm[r]] for r in range(3))
        terms[e] = ctx.from_int(_perm_sign(perm))
    return TriPoly.homogeneous(ctx, terms, sum(exps))


def dgz_quartic_closed_form(ctx: FieldCtx) -> TriPoly:
    """(x^2+xz)^2 + (x^2+xz)(y^2+yz) + (y^2+yz)^2 + z^4 over a field of characteristic 2."""
    x, y, z = (TriPoly.variable(ctx, i) for i in range(3))
    u = x * x + x * z
    v = y * y + y * z
    return u * u + u * v + v * v + z * z * z * z


@dataclass(frozen=True)
class TangentData:
    point: ProjPoint
    multiplicity: int
    cone: object  # list of (ProjLine, exponent), or the string "non-split"
    tangent_line: ProjLine | None

    def to_json(self, ctx: FieldCtx) -> dict:
        cone = self.cone if isinstance(self.cone, str) else [
            {"line": ell.to_json(ctx), "exponent": k} for ell, k in self.cone]
        return {"point": self.point.to_json(ctx), "multiplicity": self.multiplicity,
                "cone": cone,
                "tangent_line": self.tangent_line.to_json(ctx) if self.tangent_line else None}


class Curve:
    """The curve F = D1 / D2 over the working field of ``ctx``."""

    def __init__(self, ctx: FieldCtx, q: int, f: TriPoly, d1: TriPoly, d2: TriPoly):
        self.ctx = ctx
        self.q = q
        self.f = f
        self.d1 = d1
        self.d2 = d2
        self.degree = f.degree
        self._terms = [(ctx.log(c), e[0], e[1], e[2]) for e, c in f.terms.items()]
        self._grad = [f.partial(i) for i in range(3)]
        self._mult: dict[ProjPoint, tuple[int, TangentData | None]] = {}
        self._sing: dict[int, list[ProjPoint]] = {}

    # -- evaluation ----------------------------------------------------

    def evaluate(self, pt: Sequence[Fel]) -> Fel:
        ctx = self.ctx
        lg, ex, N = ctx._log, ctx._exp, ctx.order
        x, y, z = pt
        lx = lg[x] if x else -1
        ly = lg[y] if y else -1
        lz = lg[z] if z else -1
        vals = []
        for lc, a, b, c in self._terms:
            if (a and lx < 0) or (b and ly < 0) or (c and lz < 0):
                continue
            vals.append(ex[(lc + a * max(lx, 0) + b * max(ly, 0) + c * max(lz, 0)) % N])
        return ctx.sum(vals)

    def evaluate_many(self, xs: np.ndarray, ys: np.ndarray, zs: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at the points (xs[i], ys[i], zs[i])."""
        ctx = self.ctx
        lg, ex, N = ctx.np_log, ctx.np_exp, ctx.order
        logs = [lg[xs], lg[ys], lg[zs]]
        zero = [lv < 0 for lv in logs]
        logs = [np.maximum(lv, 0) for lv in logs]
        acc = np.zeros(xs.shape, dtype=np.int64)
        for lc, a, b, c in self._terms:
            e = (lc + a * logs[0] + b * logs[1] + c * logs[2]) % N
            val = ex[e]
            for k, zmask in zip((a, b, c), zero):
                if k:
                    val = np.where(zmask, 0, val)
            acc = ctx.vadd(acc, val)
        return acc

    def gradient(self, pt: Sequence[Fel]) -> tuple[Fel, Fel, Fel]:
        return tuple(g.evaluate(pt) for g in self._grad)

    def contains(self, P: ProjPoint) -> bool:
        return self.evaluate(P.coords) == 0

    def restrict(self, A: ProjPoint, B: ProjPoint) -> BinForm:
        return restrict_to_line(self.f, A, B)

    @functools.cached_property
    def grid(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray] | None:
        """(xs, ys, zs, values) on S x S x {1}, S the first deg+1 working-field elements.

        A homogeneous polynomial of degree deg vanishing on this grid is zero.
        """
        ctx = self.ctx
        if ctx.size < self.degree + 1:
            return None
        # 0 followed by the first powers of the generator, as in enumerate_subfield(L)
        s = np.array([0] + [ctx.exp(i) for i in range(self.degree)], dtype=np.int64)
        xs, ys = (a.ravel() for a in np.meshgrid(s, s, indexing="ij"))
        zs = np.ones_like(xs)
        return xs, ys, zs, self.evaluate_many(xs, ys, zs)

    def to_json(self) -> dict:
        ctx = self.ctx
        return {
            "schema_version": 1,
            "q": self.q, "p": ctx.p, "m": ctx.m,
            "field": ctx.header(),
            "degree": self.degree,
            "f": self.f.to_json(),
            "d1": self.d1.to_json(),
            "d2": self.d2.to_json(),
            "assumptions": ASSUMPTIONS,
        }


def check_construction(curve: Curve) -> dict:
    """Exact structural checks; every value must be True."""
    ctx, q, f = curve.ctx, curve.q, curve.f
    checks = {
        "d2_times_f_equals_d1": curve.d2 * f == curve.d1,
        "homogeneous": f.is_homogeneous(),
        "degree_q3_minus_q2": f.degree == q**3 - q**2,
        "coefficients_in_Fq": all(ctx.in_subfield(c, 1) for c in f.terms.values()),
    }
    if q == 2:
        checks["matches_quartic_closed_form"] = f == dgz_quartic_closed_form(ctx)
    return checks


@functools.lru_cache(maxsize=None)
def build_dgz(q: int, L: int = 12) -> Curve:
    ctx = ctx_for_q(q, L)
    d1 = moore_det(ctx, q, 1, 3)
    d2 = moore_det(ctx, q, 1, 2)
    try:
        f = exact_divide(d1, d2)
    except ArithmeticError as exc:
        raise ConstructionError(f"D1 is not divisible by D2 for q={q}") from exc
    curve = Curve(ctx, q, f, d1, d2)
    bad = [k for k, ok in check_construction(curve).items() if not ok]
    if bad:
        raise ConstructionError(f"construction checks failed for q={q}: {bad}")
    return curve


# -- local structure ---------------------------------------------------------

def _lowest_form(curve: Curve, Q: ProjPoint) -> tuple[int, list[Fel]]:
    """(m, h) with h[k] the coefficient of X^(m-k) Y^k in the lowest form at Q."""
    order = 2
    while True:
        exp = local_expansion(curve.f, Q.coords, order)
        if exp:
            m = min(i + j for i, j in exp)
            return m, [exp.get((m - k, k), 0) for k in range(m + 1)]
        if order >= curve.degree:
            raise ValueError("the defining polynomial vanishes identically near the point")
        order = min(2 * order, curve.degree)


def _split_as_power(ctx: FieldCtx, m: int, h: list[Fel]) -> tuple[Fel, Fel] | None:
    """(alpha, beta) with h = lambda * (alpha X + beta Y)^m, or None."""
    p = ctx.p
    if h[0]:
        lam = h[0]
        k = next(k for k in range(1, m + 1) if math.comb(m, k) % p) if m else 0
        beta = 0
        if k:
            bk = ctx.div(h[k], ctx.mul(lam, ctx.from_int(math.comb(m, k))))
            beta = bk
            while k > 1:  # k is a power of p
                beta = ctx.pth_root(beta)
                k //= p
        alpha = 1
    else:
        lam, alpha, beta = h[m], 0, 1
        if not lam:
            return None
    expect = [ctx.mul(lam, ctx.mul(ctx.from_int(math.comb(m, k)),
                                   ctx.mul(ctx.pow(alpha, m - k), ctx.pow(beta, k))))
              for k in range(m + 1)]
    return (alpha, beta) if expect == h else None


def multiplicity_at(curve: Curve, Q: ProjPoint) -> tuple[int, TangentData | None]:
    """Multiplicity of the curve at Q and its tangent-cone data (0, None off the curve)."""
    hit = curve._mult.get(Q)
    if hit is not None:
        return hit
    ctx = curve.ctx
    if not curve.contains(Q):
        res = (0, None)
    else:
        m, h = _lowest_form(curve, Q)
        split = _split_as_power(ctx, m, h)
        if split is None:
            res = (m, TangentData(Q, m, "non-split", None))
        else:
            alpha, beta = split
            c = Q.coords
            i0 = next(i for i in range(3) if c[i])
            u, w = [i for i in range(3) if i != i0]
            dual = [0, 0, 0]
            dual[i0] = ctx.neg(ctx.add(ctx.mul(alpha, c[u]), ctx.mul(beta, c[w])))
            dual[u], dual[w] = alpha, beta
            T = pp.line(ctx, dual)
            res = (m, TangentData(Q, m, [(T, m)], T))
    curve._mult[Q] = res
    return res


def singular_locus(curve: Curve, k: int) -> list[ProjPoint]:
    """Points of P^2(F_{q^k}) where the curve has multiplicity >= 2."""
    if k in curve._sing:
        return curve._sing[k]
    out = []
    for Q in pp.enumerate_points(curve.ctx, k):
        if not curve.contains(Q):
            continue
        if any(curve.gradient(Q.coords)):
            continue  # nonvanishing gradient: smooth point
        if multiplicity_at(curve, Q)[0] >= 2:
            out.append(Q)
    curve._sing[k] = out
    return out


def expected_singular_set(curve: Curve, k: int) -> set[ProjPoint]:
    """P^2(F_{q^gcd(k,2)}) minus P^2(F_q), as the singular locus restricted to F_{q^k}."""
    g = math.gcd(k, 2)
    big = set(pp.enumerate_points(curve.ctx, g))
    return big - set(pp.enumerate_points(curve.ctx, 1))


def line_order(curve: Curve, Q: ProjPoint, ell: ProjLine) -> int | None:
    """Intersection multiplicity of ell and the curve at Q; None when ell lies on the curve."""
    B = pp.other_point(curve.ctx, ell, Q)
    g = curve.restrict(Q, B)
    if g.is_zero():
        return None
    return g.order_at_first()


def verify_fact3(curve: Curve, k: int = 2) -> dict:
    """At each singular point of P^2(F_{q^k}), every line of the F_{q^2}-pencil
    meets the curve with order q-1 or q, and order q only along F_q-lines."""
    q, ctx = curve.q, curve.ctx
    sing = singular_locus(curve, k)
    violations = []
    histogram: dict[int, int] = {}
    pairs = 0
    for Q in sing:
        pencil_deg = max(2, Q.def_degree)
        for ell in pp.pencil_through(ctx, Q, pencil_deg):
            pairs += 1
            o = line_order(curve, Q, ell)
            if o is None:
                violations.append({"point": Q.to_json(ctx), "line": ell.to_json(ctx),
                                   "reason": "line contained in curve"})
                continue
            histogram[o] = histogram.get(o, 0) + 1
            if o not in (q - 1, q):
                violations.append({"point": Q.to_json(ctx), "line": ell.to_json(ctx),
                                   "order": o, "reason": "order not in {q-1, q}"})
            elif o == q and ell.def_degree != 1:
                violations.append({"point": Q.to_json(ctx), "line": ell.to_json(ctx),
                                   "order": o, "reason": "order q along a line not defined over F_q"})
    return {
        "check": "fact3",
        "q": q,
        "singular_points": len(sing),
        "pairs_checked": pairs,
        "order_histogram": {str(o): n for o, n in sorted(histogram.items())},
        "violations": violations,
        "pass": not violations,
        "assumptions": [ASSUMPTIONS["unibranch"]],
    }


def verify_fact4(curve: Curve, k_max: int = 2) -> dict:
    """Every smooth point over F_{q^k}, k <= k_max, meets its tangent with order >= q."""
    q, ctx = curve.q, curve.ctx
    violations = []
    per_degree = {}
    for k in range(1, k_max + 1):
        if ctx.L % k:
            continue
        checked = 0
        for Q in pp.enumerate_points(ctx, k):
            if Q.def_degree != k or not curve.contains(Q):
                continue
            m, tan = multiplicity_at(curve, Q)
            if m != 1:
                continue
            checked += 1
            o = line_order(curve, Q, tan.tangent_line)
            if o is None or o < q:
                violations.append({"point": Q.to_json(ctx),
                                   "tangent": tan.tangent_line.to_json(ctx), "order": o})
        per_degree[str(k)] = checked
    return {
        "check": "fact4",
        "q": q,
        "smooth_points_by_degree": per_degree,
        "smooth_points": sum(per_degree.values()),
        "violations": violations,
        "pass": not violations,
    }
