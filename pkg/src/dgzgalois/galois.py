"""Fibers of the projection from a point, Galois-point decisions, and the scan
over P^2(F_{q^2}) plus sampled points of higher degree.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import projplane as pp
from .dgzcurve import ASSUMPTIONS, Curve, multiplicity_at, singular_locus
from .fieldcore import FieldCtx
from .pglgroup import (PositiveEvidence, _symbolic_scalar, is_closed_group, is_projection_stabilizer,
                       pgl, positive_certificate, preserving_scalars)
from .polyring import interpolate, sylvester_resultant, uderiv, uroots, univariate_profile
from .projplane import ProjLine, ProjPoint

LINEAR_SEARCH_NOTE = ("positive certificates search linear automorphisms only; "
                      "a failed search is never used as evidence of non-Galois")


class Verdict(str, enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    INCONCLUSIVE = "Inconclusive"


def deg_pi(curve: Curve, P: ProjPoint) -> int:
    d = curve.degree - multiplicity_at(curve, P)[0]
    if d <= 0:
        raise ValueError("projection of non-positive degree")
    return d


@dataclass(frozen=True)
class FiberProfile:
    point: ProjPoint
    line: ProjLine
    param_point: ProjPoint
    entries: tuple[tuple[int, int], ...]
    center_entry: int | None
    center_raw: int
    center_multiplicity: int
    curve_degree: int

    def indices(self) -> list[int]:
        es = [e for e, _ in self.entries]
        if self.center_entry is not None:
            es.append(self.center_entry)
        return sorted(set(es))

    def accounted_degree(self) -> int:
        return sum(e * n for e, n in self.entries) + self.center_raw

    def to_json(self, ctx: FieldCtx) -> dict:
        return {
            "point": self.point.to_json(ctx),
            "line": self.line.to_json(ctx),
            "param_point": self.param_point.to_json(ctx),
            "entries": [list(t) for t in self.entries],
            "center_entry": self.center_entry,
            "center_raw": self.center_raw,
            "center_multiplicity": self.center_multiplicity,
        }


def fiber_profile(curve: Curve, P: ProjPoint, ell: ProjLine) -> FiberProfile:
    """Ramification indices of pi_P over the direction of ell (P sits at parameter (1:0))."""
    ctx = curve.ctx
    if not pp.incident(ctx, P, ell):
        raise ValueError("the point does not lie on the line")
    B = pp.other_point(ctx, ell, P)
    g = curve.restrict(P, B)
    if g.is_zero():
        raise ValueError("the line is a component of the curve")
    a, u = g.split_first_root()
    m = multiplicity_at(curve, P)[0]
    center = a - m if a - m > 0 else None
    entries = tuple(univariate_profile(ctx, u))
    return FiberProfile(P, ell, B, entries, center, a, m, curve.degree)


def obstruction(profile: FiberProfile, degree: int) -> tuple[str, list[int]] | None:
    """Why this fiber cannot occur in a Galois covering of the given degree."""
    es = profile.indices()
    bad = [e for e in es if degree % e]
    if bad:
        return "index-not-dividing-degree", bad
    if len(es) > 1:
        return "non-uniform-ramification", es
    return None


def recheck_negative(curve: Curve, evidence: dict) -> bool:
    """Rebuild the fiber from the serialized point and line and confirm the obstruction."""
    ctx = curve.ctx
    P = pp.point_from_json(ctx, evidence["profile"]["point"])
    ell = pp.line_from_json(ctx, evidence["profile"]["line"])
    prof = fiber_profile(curve, P, ell)
    found = obstruction(prof, deg_pi(curve, P))
    return (found is not None and found[0] == evidence["kind"]
            and prof.to_json(ctx) == evidence["profile"])


def recheck_positive(curve: Curve, P: ProjPoint, evidence: dict, symbolic: bool | None = None) -> dict:
    """Re-verify a serialized Positive certificate from its element list alone.

    Preservation is re-derived by symbolic substitution (the construction of the
    certificate used grid evaluation) unless the degree makes that too slow.
    """
    ctx = curve.ctx
    elements = [pgl(ctx, [ctx.from_json(c) for row in e["matrix"] for c in row])
                for e in evidence["elements"]]
    if symbolic is None:
        symbolic = curve.degree <= 18
    if symbolic:
        scalars = [_symbolic_scalar(curve, A) for A in elements]
    else:
        scalars = preserving_scalars(curve, elements)
    checks = {
        "count_equals_deg_pi": len(set(elements)) == deg_pi(curve, P) == evidence["order"],
        "preserve_curve": all(s is not None for s in scalars),
        "scalars_match": [ctx.to_json(s) if s is not None else None for s in scalars] == evidence["scalars"],
        "fix_projection": all(is_projection_stabilizer(ctx, A, P) for A in elements),
        "closed_group": is_closed_group(ctx, elements),
    }
    checks["pass"] = all(checks.values())
    return checks


@dataclass(frozen=True)
class SearchBounds:
    pencil_degrees: tuple[int, ...] = (1, 2)
    targets: tuple[ProjPoint, ...] | None = None  # None: singular points of P^2(F_{q^2})
    branch_lines: bool = True
    branch_max_degree: int = 256  # skip when the resultant degree bound exceeds this
    random_lines: int = 8
    random_degrees: tuple[int, ...] = (3, 4)
    seed: int = 42

    def to_json(self) -> dict:
        return {"pencil_degrees": list(self.pencil_degrees),
                "targets": "singular-locus" if self.targets is None else len(self.targets),
                "branch_lines": self.branch_lines,
                "branch_max_degree": self.branch_max_degree,
                "random_lines": self.random_lines,
                "random_degrees": list(self.random_degrees),
                "seed": self.seed}


@dataclass(frozen=True)
class DecideConfig:
    bounds: SearchBounds = field(default_factory=SearchBounds)
    positive_degree: int = 2
    max_candidates: int = 10**6


@dataclass
class GaloisCertificate:
    verdict: Verdict
    point: ProjPoint
    deg_pi: int
    evidence: dict
    assumptions: list[str]

    def to_json(self, ctx: FieldCtx) -> dict:
        return {"point": self.point.to_json(ctx), "verdict": self.verdict.value,
                "deg_pi": self.deg_pi, "evidence": self.evidence,
                "assumptions": self.assumptions}


def branch_degree_bound(curve: Curve, P: ProjPoint) -> int:
    return curve.degree * (2 * deg_pi(curve, P) - 1)


def branch_lines(curve: Curve, P: ProjPoint) -> list[ProjLine]:
    """Lines through P over the working field along which pi_P may ramify.

    The pencil through P is parametrized by R(mu) = mu*A + B on a coordinate line
    missing P.  Writing f(s*P + R(mu)) as a polynomial U_mu(s) of formal degree
    n = deg pi_P, the Sylvester resultant D(mu) of U_mu and dU_mu/ds vanishes on
    every ramified direction (and where the formal degree drops).  D is recovered
    by interpolation and its roots in the working field give the lines.  The line
    P A (mu at infinity) is always included.
    """
    ctx = curve.ctx
    d = curve.degree
    n = deg_pi(curve, P)
    i = next(i for i in range(3) if P.coords[i])
    base = [0, 0, 0]
    base[i] = 1
    A, B = pp._spanning_pair(ctx, ProjLine(tuple(base), 1))
    out = [pp.line_through(ctx, P, pp.point(ctx, A))]
    if n < 2:
        return out

    def R(mu):
        return [ctx.add(ctx.mul(mu, a), b) for a, b in zip(A, B)]

    bound = branch_degree_bound(curve, P)
    nodes = [ctx.exp(j) for j in range(bound)] + [0]
    values = []
    for mu in nodes:
        g = curve.restrict(P.coords, R(mu))
        # g.coeffs[j] multiplies s^(d-j) t^j; set t = 1
        u = [0] * (n + 1)
        for j, c in enumerate(g.coeffs):
            if d - j <= n:
                u[d - j] = c
        values.append(sylvester_resultant(ctx, u, uderiv(ctx, u), n, n - 1))
    D = interpolate(ctx, nodes, values)
    while D and not D[-1]:
        D.pop()
    if not D:
        return out
    for mu in uroots(ctx, D):
        out.append(pp.line_through(ctx, P, pp.point(ctx, R(mu))))
    return out


def _candidate_lines(curve: Curve, P: ProjPoint, bounds: SearchBounds) -> Iterator[tuple[str, ProjLine]]:
    ctx = curve.ctx
    seen: set[ProjLine] = set()

    def fresh(ell: ProjLine) -> bool:
        if ell in seen:
            return False
        seen.add(ell)
        return True

    m, tan = multiplicity_at(curve, P)
    if m and tan.tangent_line is not None and fresh(tan.tangent_line):
        yield "tangent", tan.tangent_line
    for k in bounds.pencil_degrees:
        if ctx.L % k or k % P.def_degree:
            continue
        for ell in pp.pencil_through(ctx, P, k):
            if fresh(ell):
                yield f"pencil-{k}", ell
    targets = bounds.targets
    if targets is None:
        targets = tuple(singular_locus(curve, 2)) if ctx.L % 2 == 0 else ()
    for Q in targets:
        if Q != P:
            ell = pp.line_through(ctx, P, Q)
            if fresh(ell):
                yield "target", ell
    if bounds.branch_lines and branch_degree_bound(curve, P) <= bounds.branch_max_degree:
        for ell in branch_lines(curve, P):
            if fresh(ell):
                yield "branch", ell
    degrees = [k for k in bounds.random_degrees if ctx.L % k == 0]
    if not degrees or not bounds.random_lines:
        return
    rng = random.Random(f"{bounds.seed}:{P.coords}")
    made = 0
    while made < bounds.random_lines:
        k = degrees[made % len(degrees)]
        R = [ctx.random_element(rng, k) for _ in range(3)]
        if not any(R) or not any(pp.cross(ctx, P.coords, R)):
            continue
        made += 1
        ell = pp.line_through(ctx, P, pp.point(ctx, R))
        if fresh(ell):
            yield "random", ell


def negative_certificate(curve: Curve, P: ProjPoint,
                         bounds: SearchBounds = SearchBounds()) -> GaloisCertificate | None:
    ctx = curve.ctx
    degree = deg_pi(curve, P)
    examined = 0
    for source, ell in _candidate_lines(curve, P, bounds):
        examined += 1
        try:
            prof = fiber_profile(curve, P, ell)
        except ValueError:
            continue
        found = obstruction(prof, degree)
        if found:
            kind, values = found
            return GaloisCertificate(
                Verdict.NEGATIVE, P, degree,
                {"kind": kind, "indices": values, "line_source": source,
                 "lines_examined": examined, "profile": prof.to_json(ctx)},
                [ASSUMPTIONS["unibranch"], ASSUMPTIONS["irreducible"]])
    return None


def all_lines_examined(curve: Curve, P: ProjPoint, bounds: SearchBounds) -> int:
    return sum(1 for _ in _candidate_lines(curve, P, bounds))


def pencil_profiles_uniform(curve: Curve, P: ProjPoint, k: int = 2) -> bool:
    """Necessary condition at a Galois point: one ramification index per fiber, dividing deg pi_P."""
    degree = deg_pi(curve, P)
    for ell in pp.pencil_through(curve.ctx, P, max(k, P.def_degree)):
        if obstruction(fiber_profile(curve, P, ell), degree):
            return False
    return True


def _positive_degree(ctx: FieldCtx, P: ProjPoint, wanted: int) -> int | None:
    d = P.def_degree
    e = d * -(-wanted // d)
    return e if ctx.L % e == 0 else None


def decide(curve: Curve, P: ProjPoint, config: DecideConfig = DecideConfig()) -> GaloisCertificate:
    ctx = curve.ctx
    neg = negative_certificate(curve, P, config.bounds)
    pos: PositiveEvidence | None = None
    e = None
    if neg is None:
        e = _positive_degree(ctx, P, config.positive_degree)
        if e is not None:
            qe = ctx.q**e
            if qe * qe * (qe - 1) <= config.max_candidates:
                pos = positive_certificate(curve, P, e)
    assert not (pos is not None and neg is not None), "point received both certificate kinds"
    if neg is not None:
        return neg
    degree = deg_pi(curve, P)
    if pos is not None:
        ev = pos.to_json(ctx)
        ev["pencil_profiles_uniform"] = pencil_profiles_uniform(curve, P)
        return GaloisCertificate(Verdict.POSITIVE, P, degree, ev,
                                 [ASSUMPTIONS["irreducible"], LINEAR_SEARCH_NOTE])
    return GaloisCertificate(
        Verdict.INCONCLUSIVE, P, degree,
        {"negative_search": config.bounds.to_json(),
         "lines_examined": all_lines_examined(curve, P, config.bounds),
         "positive_search_degree": e},
        [ASSUMPTIONS["unibranch"], LINEAR_SEARCH_NOTE])


@dataclass(frozen=True)
class ScanConfig:
    samples: int = 50
    seed: int = 42
    sample_degrees: tuple[int, ...] = (3, 4)
    exhaustive_degree: int = 2
    decide: DecideConfig = field(default_factory=DecideConfig)


def sample_points(ctx: FieldCtx, k: int, count: int, seed: int) -> list[ProjPoint]:
    """Distinct points with definition degree exactly k, reproducible from the seed."""
    rng = random.Random(f"{seed}:sample:{k}")
    out: list[ProjPoint] = []
    seen: set[ProjPoint] = set()
    while len(out) < count:
        c = [ctx.random_element(rng, k) for _ in range(3)]
        if not any(c):
            continue
        P = pp.point(ctx, c)
        if P.def_degree == k and P not in seen:
            seen.add(P)
            out.append(P)
    return out


def theorem_scan(curve: Curve, config: ScanConfig = ScanConfig()) -> dict:
    ctx = curve.ctx
    scanned = [("exhaustive", P) for P in pp.enumerate_points(ctx, config.exhaustive_degree)]
    for k in config.sample_degrees:
        if ctx.L % k == 0 and config.samples:
            scanned += [(f"sample-{k}", P) for P in sample_points(ctx, k, config.samples, config.seed)]
    base = set(pp.enumerate_points(ctx, 1))
    per_point = []
    galois, inconclusive, misplaced = [], [], []
    for origin, P in scanned:
        cert = decide(curve, P, config.decide)
        entry = cert.to_json(ctx)
        entry["origin"] = origin
        per_point.append(entry)
        if cert.verdict is Verdict.POSITIVE:
            galois.append(P)
        elif cert.verdict is Verdict.INCONCLUSIVE:
            inconclusive.append(P)
        if (cert.verdict is Verdict.POSITIVE) != (P in base):
            misplaced.append(P)
    q = curve.q
    ok = set(galois) == base and not inconclusive and not misplaced
    return {
        "schema_version": 1,
        "q": q,
        "parameters": {"L": ctx.L, "samples": config.samples, "seed": config.seed,
                       "sample_degrees": list(config.sample_degrees),
                       "exhaustive_degree": config.exhaustive_degree,
                       "positive_degree": config.decide.positive_degree,
                       "search": config.decide.bounds.to_json()},
        "field": ctx.header(),
        "assumptions": {**ASSUMPTIONS, "linear_search": LINEAR_SEARCH_NOTE},
        "points": per_point,
        "summary": {
            "scanned": len(scanned),
            "galois_count": len(galois),
            "expected": q * q + q + 1,
            "galois_set_equals_PG2_q": set(galois) == base,
            "negative": sum(1 for e in per_point if e["verdict"] == Verdict.NEGATIVE.value),
            "inconclusive": [P.to_json(ctx) for P in inconclusive],
            "pass": ok,
        },
    }
