"""Exact construction of the Dickson-Guralnick-Zieve plane curve over small
finite fields and certificate-based verification of its Galois points."""

from .fieldcore import FieldCtx, FieldError, ctx_for_q, make_ctx, prime_power
from .polyring import TriPoly, exact_divide, squarefree_decompose
from .projplane import ProjLine, ProjPoint
from .dgzcurve import Curve, build_dgz, check_construction, singular_locus, verify_fact3, verify_fact4
from .pglgroup import PglElt, enumerate_pgl, positive_certificate, preserving_scalars
from .galois import DecideConfig, ScanConfig, SearchBounds, Verdict, decide, theorem_scan

__version__ = "0.1.0"
SCHEMA_VERSION = 1


def default_L(q: int) -> int:
    """Working degree used when none is given: 24 for q=2, 12 otherwise.

    For q=2 some points over F_16 only show a non-uniform fiber along lines
    defined over F_256, which F_(2^12) does not contain.
    """
    return 24 if q == 2 else 12


__all__ = [
    "FieldCtx", "FieldError", "ctx_for_q", "make_ctx", "prime_power",
    "TriPoly", "exact_divide", "squarefree_decompose",
    "ProjLine", "ProjPoint",
    "Curve", "build_dgz", "check_construction", "singular_locus", "verify_fact3", "verify_fact4",
    "PglElt", "enumerate_pgl", "positive_certificate", "preserving_scalars",
    "DecideConfig", "ScanConfig", "SearchBounds", "Verdict", "decide", "theorem_scan",
    "default_L", "SCHEMA_VERSION",
]
