"""
This file contains exact arithmetic in GF(2^m) for 2 <= m <= 16 and in the
quadratic extension GF(2^{2m}).

Elements are encoded as integers whose bits are polynomial coefficients
(bit i = coefficient of x^i). Scalar operations work on plain ints; the
*_vec operations work on numpy integer arrays and are what the exhaustive
verification kernels use. FieldCtx.array wraps the same integers in a galois
FieldArray for rank and null space computations. A FieldCtx never changes
after construction.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import galois
import numpy as np

from .errors import FieldError

logger = logging.getLogger(__name__)

MIN_M = 2
MAX_M = 16


# ------------------------------------------------------------------
# Binary polynomials (schoolbook carry-less arithmetic)
# ------------------------------------------------------------------

def clmul(a, b):
    """Carry-less product of two binary polynomials."""
    result = 0
    while b:
        if b & 1:
            result ^= a
        a <<= 1
        b >>= 1
    return result


def poly_mod(a, modulus):
    deg = modulus.bit_length() - 1
    while a.bit_length() - 1 >= deg:
        a ^= modulus << (a.bit_length() - 1 - deg)
    return a


def mulmod(a, b, modulus):
    return poly_mod(clmul(a, b), modulus)


def powmod(a, e, modulus):
    result = 1
    a = poly_mod(a, modulus)
    while e:
        if e & 1:
            result = mulmod(result, a, modulus)
        a = mulmod(a, a, modulus)
        e >>= 1
    return result


def is_irreducible(modulus):
    """Trial division by every binary polynomial of degree 1..m/2."""
    m = modulus.bit_length() - 1
    if m < 1:
        return False
    for divisor in range(2, 1 << (m // 2 + 1)):
        if poly_mod(modulus, divisor) == 0:
            return False
    return True


def irreducible_polynomials(m):
    """Yield every irreducible degree-m binary polynomial in encoding order."""
    for candidate in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(candidate):
            yield candidate


def _prime_factors(n):
    factors = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            factors.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        factors.append(n)
    return factors


def is_primitive(alpha, modulus):
    m = modulus.bit_length() - 1
    order = (1 << m) - 1
    if not 0 < alpha < (1 << m):
        return False
    if powmod(alpha, order, modulus) != 1:
        return False
    return all(powmod(alpha, order // r, modulus) != 1 for r in _prime_factors(order))


# ------------------------------------------------------------------
# GF(2^m)
# ------------------------------------------------------------------

class FieldCtx:
    """A concrete GF(2^m): modulus, primitive element and discrete-log tables."""

    def __init__(self, m, modulus, alpha):
        self.m = m
        self.modulus = modulus
        self.q = 1 << m
        self.alpha = alpha
        self.order = self.q - 1

        # antilog is stored twice over so log[a] + log[b] never needs a reduction
        antilog = [0] * (2 * self.order)
        log = [0] * self.q
        x = 1
        for i in range(self.order):
            antilog[i] = x
            log[x] = i
            x = mulmod(x, alpha, modulus)
        for i in range(self.order, 2 * self.order):
            antilog[i] = antilog[i - self.order]
        if len(set(antilog[:self.order])) != self.order:
            raise FieldError(f"alpha={alpha} does not generate GF({self.q})*")

        self.antilog_table = antilog
        self.log_table = log
        self._antilog_np = np.array(antilog, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)

    def __repr__(self):
        return f"FieldCtx(m={self.m}, modulus={bin(self.modulus)}, alpha={self.alpha})"

    def __eq__(self, other):
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return (self.m, self.modulus, self.alpha) == (other.m, other.modulus, other.alpha)

    def __hash__(self):
        return hash((self.m, self.modulus, self.alpha))

    # ---------------- scalar arithmetic ----------------

    def check(self, a):
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of GF({self.q})")
        return a

    @staticmethod
    def add(a, b):
        return a ^ b

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.antilog_table[self.log_table[a] + self.log_table[b]]

    def inv(self, a):
        if a == 0:
            raise FieldError("inverse of 0 is undefined")
        return self.antilog_table[(self.order - self.log_table[a]) % self.order]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        """a^e for e >= 0, with 0^0 = 1 and 0^e = 0 for e > 0."""
        if e < 0:
            raise FieldError(f"negative exponent {e}")
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self.antilog_table[(self.log_table[a] * e) % self.order]

    def sqrt(self, a):
        return self.pow(a, 1 << (self.m - 1))

    def trace(self, a):
        """Absolute trace a + a^2 + ... + a^{2^{m-1}}; always 0 or 1."""
        total = 0
        x = a
        for _ in range(self.m):
            total ^= x
            x = self.mul(x, x)
        return total

    def power_of_alpha(self, i):
        return self.antilog_table[i % self.order]

    # ---------------- vectorised arithmetic ----------------

    def elements(self):
        return np.arange(self.q, dtype=np.int64)

    def alpha_powers(self):
        """alpha^0, alpha^1, ..., alpha^{q-2} as an array."""
        return self._antilog_np[:self.order].copy()

    def mul_vec(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self._antilog_np[self._log_np[a] + self._log_np[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_vec(self, a, e):
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            raise FieldError(f"negative exponent {e}")
        if e == 0:
            return np.ones_like(a)
        out = self._antilog_np[(self._log_np[a] * (e % self.order)) % self.order]
        return np.where(a == 0, 0, out)

    def inv_vec(self, a):
        """Elementwise a^{q-2}: the inverse on nonzero entries, 0 at 0."""
        return self.pow_vec(a, self.q - 2)

    def sqrt_vec(self, a):
        return self.pow_vec(a, 1 << (self.m - 1))

    def scale_table(self, row):
        """Table T[c, j] = c * row[j] for every field element c."""
        return self.mul_vec(self.elements()[:, None], np.asarray(row, dtype=np.int64)[None, :])

    # ---------------- linear algebra ----------------

    def array(self, values):
        """values as a galois FieldArray over the same modulus, for rank and null spaces."""
        return galois_field(self.q, self.modulus)(np.asarray(values, dtype=np.int64))


@lru_cache(maxsize=16)
def galois_field(q, modulus):
    return galois.GF(q, irreducible_poly=modulus)


@lru_cache(maxsize=64)
def field_new(m, modulus=None, alpha=None):
    """Return the canonical GF(2^m), or one with the given modulus/alpha overrides."""
    if not isinstance(m, int) or not MIN_M <= m <= MAX_M:
        raise FieldError(f"m must be an integer in [{MIN_M}, {MAX_M}], got {m!r}")

    if modulus is None:
        modulus = next(irreducible_polynomials(m))
    elif modulus.bit_length() - 1 != m or not is_irreducible(modulus):
        raise FieldError(f"modulus {bin(modulus)} is not an irreducible polynomial of degree {m}")

    if alpha is None:
        alpha = next(a for a in range(2, 1 << m) if is_primitive(a, modulus))
    elif not is_primitive(alpha, modulus):
        raise FieldError(f"alpha={alpha} is not primitive modulo {bin(modulus)}")

    logger.debug("[FIELD] GF(2^%d) modulus=%s alpha=%d", m, bin(modulus), alpha)
    return FieldCtx(m, modulus, alpha)


# ------------------------------------------------------------------
# Bound field elements
# ------------------------------------------------------------------

@dataclass(frozen=True)
class Fe:
    ctx: FieldCtx
    value: int

    def __post_init__(self):
        self.ctx.check(self.value)

    def _same(self, other):
        if not isinstance(other, Fe):
            return Fe(self.ctx, other)
        if other.ctx != self.ctx:
            raise FieldError(f"context mismatch: {self.ctx} vs {other.ctx}")
        return other

    def __add__(self, other):
        return Fe(self.ctx, self.value ^ self._same(other).value)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other):
        return Fe(self.ctx, self.ctx.mul(self.value, self._same(other).value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Fe(self.ctx, self.ctx.div(self.value, self._same(other).value))

    def __pow__(self, e):
        return Fe(self.ctx, self.ctx.pow(self.value, e))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Fe({self.value}, GF({self.ctx.q}))"


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def inv(a):
    return Fe(a.ctx, a.ctx.inv(a.value))


def power(a, e):
    return a ** e


def trace(a):
    return Fe(a.ctx, a.ctx.trace(a.value))


# ------------------------------------------------------------------
# GF(q^2) = GF(q)[t] / (t^2 + t + c)
# ------------------------------------------------------------------

class ExtFieldCtx:
    """Quadratic extension of a FieldCtx; elements are pairs (a0, a1) = a0 + a1*t.

    With t^2 = t + c the conjugate of t is t + 1, which gives closed forms:
    x^q = (a0 + a1, a1), T(x) = x + x^q = a1 and x^{q+1} = a0^2 + a0*a1 + c*a1^2.
    """

    def __init__(self, base, c=None):
        self.base = base
        q = base.q
        xs = base.elements()
        image = set((base.mul_vec(xs, xs) ^ xs).tolist())
        if c is None:
            c = next(v for v in range(1, q) if v not in image)
        elif c in image:
            raise FieldError(f"t^2 + t + {c} has a root in GF({q})")
        self.c = c
        # coefficients of t^2 + t + c, highest degree first
        self.ext_modulus = (1, 1, c)

    def __repr__(self):
        return f"ExtFieldCtx(base={self.base!r}, c={self.c})"

    def encode(self, x):
        return x[1] * self.base.q + x[0]

    def decode(self, value):
        return (value % self.base.q, value // self.base.q)

    @staticmethod
    def embed(a):
        return (a, 0)

    @staticmethod
    def add(x, y):
        return (x[0] ^ y[0], x[1] ^ y[1])

    def mul(self, x, y):
        f = self.base
        high = f.mul(x[1], y[1])
        return (f.mul(x[0], y[0]) ^ f.mul(self.c, high),
                f.mul(x[0], y[1]) ^ f.mul(x[1], y[0]) ^ high)

    def conj(self, x):
        return (x[0] ^ x[1], x[1])

    @staticmethod
    def trace_map(x):
        """T(x) = x + x^q, an element of the base field."""
        return x[1]

    def norm(self, x):
        f = self.base
        return f.mul(x[0], x[0]) ^ f.mul(x[0], x[1]) ^ f.mul(self.c, f.mul(x[1], x[1]))

    def inv(self, x):
        n = self.norm(x)
        if n == 0:
            raise FieldError("inverse of 0 is undefined")
        n_inv = self.base.inv(n)
        cx = self.conj(x)
        return (self.base.mul(cx[0], n_inv), self.base.mul(cx[1], n_inv))

    def pow(self, x, e):
        if e < 0:
            raise FieldError(f"negative exponent {e}")
        result = (1, 0)
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def unit_circle(self):
        """Yield every beta with beta^{q+1} = 1 in encoding order."""
        f = self.base
        a0 = f.elements()
        sq0 = f.mul_vec(a0, a0)
        for a1 in range(f.q):
            tail = f.mul(self.c, f.mul(a1, a1))
            norms = sq0 ^ f.mul_vec(a0, a1) ^ tail
            for hit in np.flatnonzero(norms == 1):
                yield (int(hit), a1)

    # ---------------- vectorised arithmetic on (A0, A1) array pairs ----------------

    def mul_vec(self, x, y):
        f = self.base
        high = f.mul_vec(x[1], y[1])
        return (f.mul_vec(x[0], y[0]) ^ f.mul_vec(self.c, high),
                f.mul_vec(x[0], y[1]) ^ f.mul_vec(x[1], y[0]) ^ high)

    def pow_vec(self, x, e):
        if e < 0:
            raise FieldError(f"negative exponent {e}")
        shape = np.shape(x[0])
        result = (np.ones(shape, dtype=np.int64), np.zeros(shape, dtype=np.int64))
        while e:
            if e & 1:
                result = self.mul_vec(result, x)
            x = self.mul_vec(x, x)
            e >>= 1
        return result


def ext_field_new(base):
    return ExtFieldCtx(base)
