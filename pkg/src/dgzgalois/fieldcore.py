"""Exact arithmetic in a fixed working field F_{q^L}, q = p^m.

Elements are plain Python ints.  The base-p digits of an element, least
significant first, are the coefficients of its canonical representative
modulo the context polynomial, so equality of ints is equality of field
elements.  Multiplication goes through log/exp tables; addition is XOR in
characteristic 2 and a Zech-logarithm lookup otherwise.
"""

from __future__ import annotations

import functools
import random
from array import array
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint, isprime

Fel = int

SIZE_GUARD = 2**26
_LIST_TABLE_LIMIT = 2**21


class FieldError(ValueError):
    pass


# -- polynomials over F_p used only while choosing the modulus ------------

def _pdivmod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num modulo monic den; coefficient lists low degree first."""
    r = list(num)
    dd = len(den) - 1
    for i in range(len(r) - 1, dd - 1, -1):
        c = r[i]
        if c:
            off = i - dd
            for j in range(dd + 1):
                r[off + j] = (r[off + j] - c * den[j]) % p
    return r[:dd]


def _digits(v: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        v, d = divmod(v, p)
        out.append(d)
    return out


def _monic_polys(p: int, deg: int) -> Iterable[list[int]]:
    for v in range(p**deg):
        yield _digits(v, p, deg) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = list(poly)
    n = len(poly) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if p == 2:
        f = sum(c << i for i, c in enumerate(poly))
        for dg in range(1, n // 2 + 1):
            for low in range(2**dg):
                d = low | (1 << dg)
                r = f
                for i in range(n, dg - 1, -1):
                    if (r >> i) & 1:
                        r ^= d << (i - dg)
                if r == 0:
                    return False
        return True
    for dg in range(1, n // 2 + 1):
        for d in _monic_polys(p, dg):
            if not any(_pdivmod(poly, d, p)):
                return False
    return True


def choose_modulus(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n whose (c_{n-1}, ..., c_0) is minimal in base p."""
    for v in range(p**n):
        cand = _digits(v, p, n) + [1]
        if n > 1 and cand[0] == 0:
            continue
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")


# -- vectorized constant multiplication for table construction ------------

def _gf2_reduce_tables(modulus: int, n: int) -> list[tuple[int, np.ndarray]]:
    """Byte-wise reduction tables for bit positions n .. 2n-2."""
    def reduce(v: int) -> int:
        for k in range(v.bit_length() - 1, n - 1, -1):
            if (v >> k) & 1:
                v ^= modulus << (k - n)
        return v

    tables = []
    top = 2 * n - 2
    k = n
    while k <= top:
        width = min(8, top - k + 1)
        tab = np.array([(h << k) ^ reduce(h << k) for h in range(1 << width)], dtype=np.int64)
        tables.append((k, tab))
        k += width
    return tables[::-1]


def _mulconst_gf2(vals: np.ndarray, c: int, tables, n: int) -> np.ndarray:
    acc = np.zeros_like(vals)
    for i in range(n):
        if (c >> i) & 1:
            acc ^= vals << i
    for k, tab in tables:
        acc ^= tab[(acc >> k) & (len(tab) - 1)]
    return acc


def _mulconst_digits(dig: np.ndarray, c: Sequence[int], mod: Sequence[int], p: int) -> np.ndarray:
    """Multiply elements given as a (n, rows) digit array by a constant."""
    n, rows = dig.shape
    acc = np.zeros((2 * n - 1, rows), dtype=np.int64)
    for i, ci in enumerate(c):
        if ci:
            acc[i:i + n] += ci * dig
    for k in range(2 * n - 2, n - 1, -1):
        top = acc[k] % p
        for j in range(n):
            if mod[j]:
                acc[k - n + j] -= top * mod[j]
    return acc[:n] % p


class FieldCtx:
    """The working field F_{p^{mL}} together with its base field F_q, q = p^m.

    Immutable after construction; build one through :func:`make_ctx` so that
    contexts are shared.
    """

    def __init__(self, p: int, m: int, L: int):
        if not isprime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1 or L < 1:
            raise FieldError("m and L must be positive")
        n = m * L
        if p**n > SIZE_GUARD:
            raise FieldError(f"field of size {p}^{n} exceeds the size guard 2^26")
        self.p = p
        self.m = m
        self.L = L
        self.n = n
        self.q = p**m
        self.size = p**n
        self.order = self.size - 1
        self.modulus = choose_modulus(p, n)
        self._pw = [p**i for i in range(n + 1)]
        self.generator = self._find_generator()
        self._build_tables()
        self._half = self.order // 2 if p != 2 else 0

    # -- construction helpers --------------------------------------------

    def _slow_mul(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        if p == 2:
            mod = sum(c << i for i, c in enumerate(self.modulus))
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if (a >> n) & 1:
                    a ^= mod
            return r
        da, db = _digits(a, p, n), _digits(b, p, n)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self._encode(_pdivmod(prod, list(self.modulus), p))

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        N = self.order
        if N == 1:
            return 1
        primes = list(factorint(N))
        for g in range(1, self.size):
            if all(self._slow_pow(g, N // r) != 1 for r in primes):
                return g
        raise FieldError("no primitive element found")

    def _build_tables(self) -> None:
        p, n, N = self.p, self.n, self.order
        exp = np.empty(N, dtype=np.int64)
        exp[0] = 1
        filled = 1
        if p == 2:
            mod = sum(c << i for i, c in enumerate(self.modulus))
            tables = _gf2_reduce_tables(mod, n)
            while filled < N:
                step = min(filled, N - filled)
                c = self._slow_pow(self.generator, filled)
                exp[filled:filled + step] = _mulconst_gf2(exp[:step], c, tables, n)
                filled += step
        else:
            pw = np.array(self._pw[:n], dtype=np.int64)
            while filled < N:
                step = min(filled, N - filled)
                c = _digits(self._slow_pow(self.generator, filled), p, n)
                dig = (exp[None, :step] // pw[:, None]) % p
                exp[filled:filled + step] = pw @ _mulconst_digits(dig, c, self.modulus, p)
                filled += step
        log = np.full(self.size, -1, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        if int(np.count_nonzero(log >= 0)) != N:
            raise FieldError("generator failed the order check")
        exp2 = np.concatenate([exp, exp])
        self.np_exp = exp2
        self.np_log = log
        if p != 2:
            d0 = exp % p
            one_plus = exp - d0 + (d0 + 1) % p
            self.np_zech = log[one_plus]
        else:
            self.np_zech = None
        if self.size <= _LIST_TABLE_LIMIT:
            self._exp = exp2.tolist()
            self._log = log.tolist()
            self._zech = self.np_zech.tolist() if p != 2 else None
        else:
            self._exp = array("i", exp2.astype(np.int32).tobytes())
            self._log = array("i", log.astype(np.int32).tobytes())
            self._zech = array("i", self.np_zech.astype(np.int32).tobytes()) if p != 2 else None

    def _encode(self, coeffs: Sequence[int]) -> int:
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c
        return v

    # -- element conversion ----------------------------------------------

    def coeffs(self, a: Fel) -> tuple[int, ...]:
        return tuple(_digits(a, self.p, self.n))

    def from_coeffs(self, coeffs: Sequence[int]) -> Fel:
        if len(coeffs) > self.n:
            raise FieldError("too many coefficients")
        return self._encode([c % self.p for c in coeffs])

    def from_int(self, k: int) -> Fel:
        """Image of the integer k in the prime field."""
        return k % self.p

    zero = 0
    one = 1

    # -- arithmetic --------------------------------------------------------

    def add(self, a: Fel, b: Fel) -> Fel:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        lg = self._log
        la = lg[a]
        z = self._zech[(lg[b] - la) % self.order]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: Fel) -> Fel:
        if self.p == 2 or a == 0:
            return a
        return self._exp[self._log[a] + self._half]

    def sub(self, a: Fel, b: Fel) -> Fel:
        return self.add(a, self.neg(b))

    def mul(self, a: Fel, b: Fel) -> Fel:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: Fel) -> Fel:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        la = self._log[a]
        return self._exp[self.order - la] if la else 1

    def div(self, a: Fel, b: Fel) -> Fel:
        return self.mul(a, self.inv(b))

    def pow(self, a: Fel, e: int) -> Fel:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % self.order]

    def log(self, a: Fel) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, k: int) -> Fel:
        return self._exp[k % self.order]

    def frobenius(self, a: Fel, k: int = 1) -> Fel:
        """a ** (q ** k)."""
        if a == 0:
            return 0
        return self._exp[(self._log[a] * pow(self.q, k % self.L, self.order)) % self.order]

    def pth_root(self, a: Fel) -> Fel:
        if a == 0:
            return 0
        return self._exp[(self._log[a] * self._pw[self.n - 1]) % self.order]

    def sum(self, items: Iterable[Fel]) -> Fel:
        acc = 0
        if self.p == 2:
            for x in items:
                acc ^= x
            return acc
        for x in items:
            acc = self.add(acc, x)
        return acc

    # -- subfields ---------------------------------------------------------

    def _check_divides(self, k: int) -> None:
        if k < 1 or self.L % k:
            raise FieldError(f"subfield degree {k} does not divide L={self.L}")

    def in_subfield(self, a: Fel, k: int) -> bool:
        self._check_divides(k)
        return self.frobenius(a, k) == a

    def subfield_generator(self, k: int) -> Fel:
        """Primitive element of F_{q^k} inside the working field."""
        self._check_divides(k)
        return self._exp[self.order // (self.q**k - 1)]

    @functools.lru_cache(maxsize=None)
    def enumerate_subfield(self, k: int) -> tuple[Fel, ...]:
        """0, then the powers of the subfield generator in increasing exponent order."""
        self._check_divides(k)
        step = self.order // (self.q**k - 1)
        return (0,) + tuple(self._exp[i * step] for i in range(self.q**k - 1))

    def element_degree(self, a: Fel) -> int:
        """Smallest divisor k of L with a in F_{q^k}."""
        for k in divisors(self.L):
            if self.frobenius(a, k) == a:
                return k
        raise AssertionError("unreachable: a^(q^L) = a")

    def random_element(self, rng: random.Random, k: int | None = None) -> Fel:
        if k is None:
            return rng.randrange(self.size)
        elems = self.enumerate_subfield(k)
        return elems[rng.randrange(len(elems))]

    # -- vectorized helpers (numpy int64 arrays of elements) ---------------

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        la, lb = self.np_log[a], self.np_log[b]
        out = self.np_exp[np.maximum(la, 0) + np.maximum(lb, 0)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a ^ b
        la, lb = self.np_log[a], self.np_log[b]
        z = self.np_zech[(lb - la) % self.order]
        out = np.where(z < 0, 0, self.np_exp[np.maximum(la, 0) + np.maximum(z, 0)])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    # -- serialization -----------------------------------------------------

    def header(self) -> dict:
        return {"p": self.p, "m": self.m, "L": self.L, "modulus": list(self.modulus)}

    def to_json(self, a: Fel) -> list[int]:
        return list(self.coeffs(a))

    def from_json(self, data: Sequence[int]) -> Fel:
        if len(data) != self.n or any(not 0 <= c < self.p for c in data):
            raise FieldError(f"malformed element {data!r}")
        return self._encode(data)

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m}, L={self.L})"


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p**m, raising FieldError otherwise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise FieldError(f"{q} is not a prime power")
    (p, m), = f.items()
    return p, m


@functools.lru_cache(maxsize=None)
def make_ctx(p: int, m: int = 1, L: int = 12) -> FieldCtx:
    return FieldCtx(p, m, L)


def ctx_for_q(q: int, L: int = 12) -> FieldCtx:
    p, m = prime_power(q)
    return make_ctx(p, m, L)
