"""Points and lines of P^2 over subfields of the working field."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Sequence

from .fieldcore import Fel, FieldCtx, FieldError, divisors


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[Fel, Fel, Fel]
    def_degree: int = field(default=1, compare=False)

    def to_json(self, ctx: FieldCtx) -> dict:
        return {"coords": [ctx.to_json(c) for c in self.coords], "def_degree": self.def_degree}


@dataclass(frozen=True)
class ProjLine:
    """The line sum_i dual_coords[i] * x_i = 0."""

    dual_coords: tuple[Fel, Fel, Fel]
    def_degree: int = field(default=1, compare=False)

    @property
    def coords(self) -> tuple[Fel, Fel, Fel]:
        return self.dual_coords

    def to_json(self, ctx: FieldCtx) -> dict:
        return {"dual_coords": [ctx.to_json(c) for c in self.dual_coords],
                "def_degree": self.def_degree}


def normalize(ctx: FieldCtx, coords: Sequence[Fel]) -> tuple[Fel, Fel, Fel]:
    for c in coords:
        if c:
            inv = ctx.inv(c)
            return tuple(ctx.mul(inv, v) for v in coords)
    raise ValueError("the zero vector is not a projective point")


def coords_degree(ctx: FieldCtx, coords: Sequence[Fel]) -> int:
    for k in divisors(ctx.L):
        if all(ctx.frobenius(c, k) == c for c in coords):
            return k
    raise AssertionError("unreachable")


def point(ctx: FieldCtx, coords: Sequence[Fel]) -> ProjPoint:
    c = normalize(ctx, coords)
    return ProjPoint(c, coords_degree(ctx, c))


def line(ctx: FieldCtx, coords: Sequence[Fel]) -> ProjLine:
    c = normalize(ctx, coords)
    return ProjLine(c, coords_degree(ctx, c))


def point_from_json(ctx: FieldCtx, data: dict) -> ProjPoint:
    return point(ctx, [ctx.from_json(c) for c in data["coords"]])


def line_from_json(ctx: FieldCtx, data: dict) -> ProjLine:
    return line(ctx, [ctx.from_json(c) for c in data["dual_coords"]])


def cross(ctx: FieldCtx, a: Sequence[Fel], b: Sequence[Fel]) -> tuple[Fel, Fel, Fel]:
    m, s = ctx.mul, ctx.sub
    return (s(m(a[1], b[2]), m(a[2], b[1])),
            s(m(a[2], b[0]), m(a[0], b[2])),
            s(m(a[0], b[1]), m(a[1], b[0])))


def dot(ctx: FieldCtx, a: Sequence[Fel], b: Sequence[Fel]) -> Fel:
    m = ctx.mul
    return ctx.add(ctx.add(m(a[0], b[0]), m(a[1], b[1])), m(a[2], b[2]))


def incident(ctx: FieldCtx, P: ProjPoint, ell: ProjLine) -> bool:
    return dot(ctx, P.coords, ell.dual_coords) == 0


@functools.lru_cache(maxsize=None)
def _enumerate(ctx: FieldCtx, k: int) -> tuple[tuple[Fel, Fel, Fel], ...]:
    els = ctx.enumerate_subfield(k)
    pts = [(1, a, b) for a in els for b in els]
    pts += [(0, 1, c) for c in els]
    pts.append((0, 0, 1))
    return tuple(pts)


def enumerate_points(ctx: FieldCtx, k: int) -> list[ProjPoint]:
    """All q^{2k} + q^k + 1 points of P^2(F_{q^k}): (1:a:b), then (0:1:c), then (0:0:1)."""
    if k < 1 or ctx.L % k:
        raise FieldError(f"extension degree {k} does not divide L={ctx.L}")
    return [ProjPoint(c, coords_degree(ctx, c)) for c in _enumerate(ctx, k)]


def enumerate_lines(ctx: FieldCtx, k: int) -> list[ProjLine]:
    return [ProjLine(P.coords, P.def_degree) for P in enumerate_points(ctx, k)]


def line_through(ctx: FieldCtx, A: ProjPoint, B: ProjPoint) -> ProjLine:
    c = cross(ctx, A.coords, B.coords)
    if not any(c):
        raise ValueError("line_through needs two distinct points")
    return line(ctx, c)


def meet(ctx: FieldCtx, l1: ProjLine, l2: ProjLine) -> ProjPoint:
    c = cross(ctx, l1.dual_coords, l2.dual_coords)
    if not any(c):
        raise ValueError("the two lines coincide")
    return point(ctx, c)


def _spanning_pair(ctx: FieldCtx, ell: ProjLine) -> tuple[tuple, tuple]:
    """Two distinct points on ell, obtained as meets with coordinate lines."""
    found = []
    for i in range(3):
        e = [0, 0, 0]
        e[i] = 1
        c = cross(ctx, ell.dual_coords, e)
        if any(c):
            c = normalize(ctx, c)
            if c not in found:
                found.append(c)
        if len(found) == 2:
            return found[0], found[1]
    raise AssertionError("unreachable: every line meets two coordinate lines in distinct points")


def points_on_line(ctx: FieldCtx, ell: ProjLine, k: int) -> list[ProjPoint]:
    """The q^k + 1 points of ell over F_{q^k}; ell must be defined over F_{q^k}."""
    if k < 1 or ctx.L % k or k % ell.def_degree:
        raise FieldError(f"line of degree {ell.def_degree} has no F_(q^{k})-parametrization")
    A, B = _spanning_pair(ctx, ell)
    out = [point(ctx, A)]
    for s in ctx.enumerate_subfield(k):
        out.append(point(ctx, [ctx.add(ctx.mul(s, a), b) for a, b in zip(A, B)]))
    return out


def other_point(ctx: FieldCtx, ell: ProjLine, P: ProjPoint) -> ProjPoint:
    """Deterministic point of ell distinct from P, used to parametrize ell from P."""
    A, B = _spanning_pair(ctx, ell)
    return point(ctx, A) if normalize(ctx, A) != P.coords else point(ctx, B)


def pencil_through(ctx: FieldCtx, P: ProjPoint, k: int) -> list[ProjLine]:
    """The q^k + 1 lines over F_{q^k} through P."""
    if k < 1 or ctx.L % k:
        raise FieldError(f"extension degree {k} does not divide L={ctx.L}")
    if k % P.def_degree:
        raise FieldError(f"point of degree {P.def_degree} is not defined over F_(q^{k})")
    i = next(i for i in range(3) if P.coords[i])
    base = [0, 0, 0]
    base[i] = 1
    base_line = ProjLine(tuple(base), 1)
    return [line_through(ctx, P, R) for R in points_on_line(ctx, base_line, k)]
