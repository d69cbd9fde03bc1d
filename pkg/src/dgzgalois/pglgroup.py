"""PGL(3) over subfields: enumeration, action on the curve, and positive
Galois certificates from projection-stabilizing automorphisms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import projplane as pp
from .dgzcurve import Curve, multiplicity_at
from .fieldcore import Fel, FieldCtx, FieldError
from .polyring import substitute_linear
from .projplane import ProjPoint

PGL_GUARD = 10**7
Matrix = tuple[Fel, ...]  # 9 entries, row-major


@dataclass(frozen=True)
class PglElt:
    matrix: Matrix
    def_degree: int = field(default=1, compare=False)

    def rows(self) -> list[Matrix]:
        m = self.matrix
        return [m[0:3], m[3:6], m[6:9]]

    def to_json(self, ctx: FieldCtx) -> dict:
        return {"matrix": [[ctx.to_json(c) for c in row] for row in self.rows()],
                "def_degree": self.def_degree}


def det3(ctx: FieldCtx, m: Sequence[Fel]) -> Fel:
    mul, add, sub = ctx.mul, ctx.add, ctx.sub
    a, b, c, d, e, f, g, h, i = m
    t1 = mul(a, sub(mul(e, i), mul(f, h)))
    t2 = mul(b, sub(mul(d, i), mul(f, g)))
    t3 = mul(c, sub(mul(d, h), mul(e, g)))
    return add(sub(t1, t2), t3)


def mat_mul(ctx: FieldCtx, A: Sequence[Fel], B: Sequence[Fel]) -> Matrix:
    mul, add = ctx.mul, ctx.add
    out = []
    for r in range(3):
        for c in range(3):
            out.append(add(add(mul(A[3 * r], B[c]), mul(A[3 * r + 1], B[3 + c])),
                           mul(A[3 * r + 2], B[6 + c])))
    return tuple(out)


def mat_adj(ctx: FieldCtx, m: Sequence[Fel]) -> Matrix:
    """Adjugate; A * adj(A) = det(A) * I."""
    mul, sub = ctx.mul, ctx.sub
    a, b, c, d, e, f, g, h, i = m
    return (sub(mul(e, i), mul(f, h)), sub(mul(c, h), mul(b, i)), sub(mul(b, f), mul(c, e)),
            sub(mul(f, g), mul(d, i)), sub(mul(a, i), mul(c, g)), sub(mul(c, d), mul(a, f)),
            sub(mul(d, h), mul(e, g)), sub(mul(b, g), mul(a, h)), sub(mul(a, e), mul(b, d)))


def mat_vec(ctx: FieldCtx, m: Sequence[Fel], v: Sequence[Fel]) -> tuple[Fel, Fel, Fel]:
    mul, add = ctx.mul, ctx.add
    return tuple(add(add(mul(m[3 * r], v[0]), mul(m[3 * r + 1], v[1])), mul(m[3 * r + 2], v[2]))
                 for r in range(3))


def pgl(ctx: FieldCtx, m: Sequence[Fel]) -> PglElt:
    """Normalized element: first nonzero entry in row-major order equal to 1."""
    if len(m) != 9:
        raise ValueError("a 3x3 matrix has 9 entries")
    if not det3(ctx, m):
        raise ValueError("singular matrix")
    nm = pp.normalize(ctx, m)
    return PglElt(nm, pp.coords_degree(ctx, nm))


def identity(ctx: FieldCtx) -> PglElt:
    return PglElt((1, 0, 0, 0, 1, 0, 0, 0, 1), 1)


def compose(ctx: FieldCtx, A: PglElt, B: PglElt) -> PglElt:
    return pgl(ctx, mat_mul(ctx, A.matrix, B.matrix))


def inverse(ctx: FieldCtx, A: PglElt) -> PglElt:
    return pgl(ctx, mat_adj(ctx, A.matrix))


def act(ctx: FieldCtx, A: PglElt, P: ProjPoint) -> ProjPoint:
    return pp.point(ctx, mat_vec(ctx, A.matrix, P.coords))


def sigma(ctx: FieldCtx, gamma: Fel, beta: Fel) -> PglElt:
    """Rows (1,0,0), (gamma,1,beta), (0,0,1)."""
    return pgl(ctx, (1, 0, 0, gamma, 1, beta, 0, 0, 1))


def tau(ctx: FieldCtx, mu: Fel) -> PglElt:
    """diag(1, mu, 1)."""
    return pgl(ctx, (1, 0, 0, 0, mu, 0, 0, 0, 1))


def pgl_order(qk: int) -> int:
    return (qk**3 - 1) * (qk**3 - qk) * (qk**3 - qk**2) // (qk - 1)


def enumerate_pgl(ctx: FieldCtx, k: int) -> list[PglElt]:
    """All of PGL(3, F_{q^k}), rows built so the first row is a normalized vector."""
    if k < 1 or ctx.L % k:
        raise FieldError(f"extension degree {k} does not divide L={ctx.L}")
    qk = ctx.q**k
    if pgl_order(qk) > PGL_GUARD:
        raise FieldError(f"|PGL(3, {qk})| exceeds the guard {PGL_GUARD}")
    els = ctx.enumerate_subfield(k)
    firsts = [P.coords for P in pp.enumerate_points(ctx, k)]
    vecs = list(itertools.product(els, repeat=3))
    out = []
    for r1 in firsts:
        for r2 in vecs:
            if not any(pp.cross(ctx, r1, r2)):
                continue
            for r3 in vecs:
                m = r1 + r2 + r3
                if det3(ctx, m):
                    out.append(PglElt(m, 1))
    deg = [pp.coords_degree(ctx, A.matrix) for A in out] if k > 1 else None
    if deg is not None:
        out = [PglElt(A.matrix, d) for A, d in zip(out, deg)]
    return out


# -- invariance -------------------------------------------------------------

def _transform_grid(ctx: FieldCtx, mats: Sequence[Matrix], xs, ys, zs):
    """Stack of M * (xs, ys, zs) for every matrix, flattened in matrix order."""
    n = len(xs)
    M = np.array(mats, dtype=np.int64)  # (count, 9)
    X, Y, Z = (np.tile(v, len(mats)) for v in (xs, ys, zs))
    out = []
    for r in range(3):
        coef = [np.repeat(M[:, 3 * r + c], n) for c in range(3)]
        acc = ctx.vmul(coef[0], X)
        acc = ctx.vadd(acc, ctx.vmul(coef[1], Y))
        acc = ctx.vadd(acc, ctx.vmul(coef[2], Z))
        out.append(acc)
    return out


def _symbolic_scalar(curve: Curve, A: PglElt) -> Fel | None:
    g = substitute_linear(curve.f, A)
    f = curve.f
    if set(g.terms) != set(f.terms):
        return None
    e0 = next(iter(f.terms))
    lam = curve.ctx.div(g.terms[e0], f.terms[e0])
    return lam if g == f.scalar_mul(lam) else None


def preserving_scalars(curve: Curve, elements: Sequence[PglElt], batch: int = 64) -> list[Fel | None]:
    """For each A, the scalar lambda with f(A v) = lambda f(v) identically, or None.

    Exact: both sides are homogeneous of degree deg, so agreement on the
    (deg+1) x (deg+1) affine grid of ``curve.grid`` forces equality.
    """
    grid = curve.grid
    if grid is None:
        return [_symbolic_scalar(curve, A) for A in elements]
    ctx = curve.ctx
    xs, ys, zs, fv = grid
    npts = len(xs)
    ref = int(np.flatnonzero(fv)[0])
    inv_ref = ctx.inv(int(fv[ref]))
    # cheap rejection on a few grid points first; survivors get the full grid
    probe = np.unique(np.concatenate([[ref], np.linspace(0, npts - 1, 15).astype(np.int64)]))
    pr = int(np.searchsorted(probe, ref))

    def scalars_on(idx, chunk):
        W = _transform_grid(ctx, [A.matrix for A in chunk], xs[idx], ys[idx], zs[idx])
        vals = curve.evaluate_many(*W).reshape(len(chunk), len(idx))
        res = []
        for row in vals:
            lam = ctx.mul(int(row[pr if len(idx) < npts else ref]), inv_ref)
            expect = ctx.vmul(np.full(len(idx), lam, dtype=np.int64), fv[idx])
            res.append(lam if lam and np.array_equal(row, expect) else None)
        return res

    out: list[Fel | None] = []
    full = np.arange(npts)
    for start in range(0, len(elements), batch):
        chunk = list(elements[start:start + batch])
        pre = scalars_on(probe, chunk)
        keep = [A for A, s in zip(chunk, pre) if s is not None]
        checked = iter(scalars_on(full, keep) if keep else [])
        out.extend(next(checked) if s is not None else None for s in pre)
    return out


def preserves_curve(A: PglElt, curve: Curve) -> Fel | None:
    return preserving_scalars(curve, [A])[0]


# -- projection stabilizers ------------------------------------------------

def change_of_basis(ctx: FieldCtx, P: ProjPoint) -> Matrix:
    """Columns (e_i, P, e_j), i < j the first pair giving an invertible matrix."""
    for i, j in itertools.combinations(range(3), 2):
        cols = [[0, 0, 0], list(P.coords), [0, 0, 0]]
        cols[0][i] = 1
        cols[2][j] = 1
        T = tuple(cols[c][r] for r in range(3) for c in range(3))
        if det3(ctx, T):
            return T
    raise AssertionError("unreachable")


def projection_stabilizer_candidates(ctx: FieldCtx, P: ProjPoint, e: int) -> Iterator[PglElt]:
    """All A over F_{q^e} with pi_P o A = pi_P: T C T^-1 for C in the canonical family
    rows (1,0,0), (gamma,delta,beta), (0,0,1)."""
    if e < 1 or ctx.L % e:
        raise FieldError(f"extension degree {e} does not divide L={ctx.L}")
    if e % P.def_degree:
        raise FieldError(f"point of degree {P.def_degree} is not defined over F_(q^{e})")
    T = change_of_basis(ctx, P)
    Tinv = mat_adj(ctx, T)
    els = ctx.enumerate_subfield(e)
    for gamma in els:
        for beta in els:
            for delta in els[1:]:
                C = (1, 0, 0, gamma, delta, beta, 0, 0, 1)
                yield pgl(ctx, mat_mul(ctx, mat_mul(ctx, T, C), Tinv))


def is_projection_stabilizer(ctx: FieldCtx, A: PglElt, P: ProjPoint) -> bool:
    """T^-1 A T has first row (1,0,0) and third row (0,0,1) up to scalar."""
    T = change_of_basis(ctx, P)
    C = pp.normalize(ctx, mat_mul(ctx, mat_mul(ctx, mat_adj(ctx, T), A.matrix), T))
    return C[0:3] == (1, 0, 0) and C[6:9] == (0, 0, 1)


def generated_subgroup(ctx: FieldCtx, gens: Iterable[PglElt]) -> set[PglElt]:
    gens = list(gens)
    group = {identity(ctx)}
    frontier = list(group)
    while frontier:
        nxt = []
        for A in frontier:
            for g in gens:
                B = compose(ctx, A, g)
                if B not in group:
                    group.add(B)
                    nxt.append(B)
        frontier = nxt
    return group


def is_closed_group(ctx: FieldCtx, elements: Sequence[PglElt]) -> bool:
    """Full multiplication-table check plus identity and inverses."""
    s = set(elements)
    if identity(ctx) not in s:
        return False
    for A in elements:
        if inverse(ctx, A) not in s:
            return False
        for B in elements:
            if compose(ctx, A, B) not in s:
                return False
    return True


@dataclass
class PositiveEvidence:
    order: int
    search_degree: int
    generators: list[PglElt]
    elements: list[PglElt]
    scalars: list[Fel]
    candidates_checked: int

    def to_json(self, ctx: FieldCtx) -> dict:
        return {
            "order": self.order,
            "search_degree": self.search_degree,
            "candidates_checked": self.candidates_checked,
            "generators": [g.to_json(ctx) for g in self.generators],
            "elements": [A.to_json(ctx) for A in self.elements],
            "scalars": [ctx.to_json(s) for s in self.scalars],
        }


def stabilizing_automorphisms(curve: Curve, P: ProjPoint, e: int) -> tuple[list[PglElt], list[Fel], int]:
    cands = list(projection_stabilizer_candidates(curve.ctx, P, e))
    scal = preserving_scalars(curve, cands)
    kept = [(A, s) for A, s in zip(cands, scal) if s is not None]
    return [A for A, _ in kept], [s for _, s in kept], len(cands)


def positive_certificate(curve: Curve, P: ProjPoint, e: int = 2) -> PositiveEvidence | None:
    """Linear automorphisms fixing pi_P forming a group of order deg pi_P, if found."""
    ctx = curve.ctx
    deg = curve.degree - multiplicity_at(curve, P)[0]
    elements, scalars, n = stabilizing_automorphisms(curve, P, e)
    if len(elements) != deg or not is_closed_group(ctx, elements):
        return None
    gens: list[PglElt] = []
    span = {identity(ctx)}
    for A in elements:
        if A not in span:
            gens.append(A)
            span = generated_subgroup(ctx, gens)
    return PositiveEvidence(deg, e, gens, elements, scalars, n)
