"""
This file contains the oval polynomial catalog and the criteria that
recognise oval polynomials.

It provides:
- The nine known families (translation, Segre, three Glynn, Cherowitzo,
  Payne, Subiaco, Adelaide) plus a monomial probe family for negative tests
- Evaluation of a polynomial at one element or over the whole field
- Four equivalent oval tests (Segre's permutation conditions, the 2-to-1
  criterion, the slope condition) and the f(x)+x+1 root check
- Witness search, so a failing check can name the elements that break it

Every criterion runs on the full value table of f, computed once per
(spec, field) pair.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import FieldError, OvalPolyError, ResourceCapError
from .gf2m import ExtFieldCtx, Fe, field_new

logger = logging.getLogger(__name__)

FAMILIES = (
    "translation",
    "segre",
    "glynn_a",
    "glynn_b",
    "glynn_c",
    "cherowitzo",
    "payne",
    "subiaco",
    "adelaide",
)
PROBE_FAMILIES = ("monomial",)

# families whose polynomial has all coefficients in GF(2)
GF2_FAMILIES = frozenset(FAMILIES[:7]) | {"monomial"}

SLOPE_MAX_M = 8
ADMISSION_MAX_M = 12


@dataclass(frozen=True)
class OvalPolySpec:
    family: str
    m: int
    params: tuple = ()
    exponents: tuple = ()

    def param(self, key, default=None):
        return dict(self.params).get(key, default)

    @property
    def gf2_coefficients(self):
        return self.family in GF2_FAMILIES

    @property
    def label(self):
        if not self.params:
            return self.family
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}({inner})"

    @property
    def slug(self):
        """Short file-friendly name, e.g. 'translation-h1' or 'segre'."""
        if self.family in ("translation", "monomial"):
            key = "h" if self.family == "translation" else "k"
            return f"{self.family}-{key}{self.param(key)}"
        return self.family

    def polynomial(self):
        """Human-readable formula (monomial-sum families only)."""
        if self.exponents:
            return " + ".join(f"x^{e}" for e in self.exponents)
        if self.family == "subiaco":
            return "(a^2(x^4+x) + a^2(1+a+a^2)(x^3+x^2))(x^4+a^2x^2+1)^(q-2) + x^(q/2)"
        return "T(b^e)(x+1)/T(b) + T((bx+b^q)^e)/(T(b)(x+T(b)x^(q/2)+1)^(e-1)) + x^(q/2)"


# ------------------------------------------------------------------
# Family constructors
# ------------------------------------------------------------------

def _require_odd(family, m):
    if m % 2 == 0:
        raise OvalPolyError(f"{family} requires m odd, got m={m}")


def _exact_div(numerator, denominator, what, m):
    value, rest = divmod(numerator, denominator)
    if rest:
        raise OvalPolyError(f"{what} = {numerator}/{denominator} is not an integer at m={m}")
    return value


def translation(m, h=1):
    if not 1 <= h < m or gcd(h, m) != 1:
        raise OvalPolyError(f"translation requires 1 <= h < m and gcd(h, m) = 1, got h={h}, m={m}")
    return OvalPolySpec("translation", m, (("h", h),), (1 << h,))


def segre(m, strict=True):
    """x^6; with strict=False the formula is also built for even m (it is then not oval)."""
    if strict:
        _require_odd("segre", m)
    return OvalPolySpec("segre", m, (), (6,))


def glynn_a(m):
    _require_odd("glynn_a", m)
    sigma = 1 << ((m + 1) // 2)
    return OvalPolySpec("glynn_a", m, (), (3 * sigma + 4,))


def glynn_b(m):
    if m % 4 != 3:
        raise OvalPolyError(f"glynn_b requires m = 3 (mod 4), got m={m}")
    return OvalPolySpec("glynn_b", m, (), ((1 << ((m + 1) // 2)) + (1 << ((m + 1) // 4)),))


def glynn_c(m):
    if m % 4 != 1:
        raise OvalPolyError(f"glynn_c requires m = 1 (mod 4), got m={m}")
    return OvalPolySpec("glynn_c", m, (), ((1 << ((m + 1) // 2)) + (1 << ((3 * m + 1) // 4)),))


def cherowitzo(m):
    _require_odd("cherowitzo", m)
    sigma = 1 << ((m + 1) // 2)
    return OvalPolySpec("cherowitzo", m, (), (sigma, sigma + 2, 3 * sigma + 4))


def payne(m):
    """x^{5/6} + x^{1/2} + x^{1/6}, exponents taken modulo q-1."""
    _require_odd("payne", m)
    half = 1 << (m - 1)
    exponents = (
        _exact_div(half + 2, 3, "payne exponent (2^(m-1)+2)/3", m),
        half,
        _exact_div(5 * half - 2, 3, "payne exponent (5*2^(m-1)-2)/3", m),
    )
    return OvalPolySpec("payne", m, (), exponents)


def monomial(m, k):
    if k < 1:
        raise OvalPolyError(f"monomial exponent must be positive, got {k}")
    return OvalPolySpec("monomial", m, (("k", k),), (k,))


def _subiaco_ok(ctx, a):
    if a == 0 or ctx.trace(ctx.inv(a)) != 1:
        return False
    # GF(4) inside GF(q) is {a : a^4 = a}
    return ctx.m % 4 != 2 or ctx.pow(a, 4) != a


def subiaco_parameter(ctx):
    """Smallest a (by encoding) with Tr(1/a) = 1, and a not in GF(4) when m = 2 mod 4."""
    return next((a for a in range(1, ctx.q) if _subiaco_ok(ctx, a)), None)


def subiaco(ctx, a=None, verify=True):
    if a is None:
        a = subiaco_parameter(ctx)
        if a is None:
            raise OvalPolyError(f"subiaco has no admissible parameter a at m={ctx.m}")
    elif not 0 < a < ctx.q or not _subiaco_ok(ctx, a):
        raise OvalPolyError(f"subiaco parameter a={a} violates Tr(1/a)=1 / a not in GF(4)")
    spec = OvalPolySpec("subiaco", ctx.m, (("a", a),))
    if verify:
        _admit(spec, ctx)
    return spec


def adelaide(ctx, beta=None, e=None, verify=True):
    m, q = ctx.m, ctx.q
    if m < 4 or m % 2:
        raise OvalPolyError(f"adelaide requires m >= 4 even, got m={m}")
    ext = ExtFieldCtx(ctx)
    third = (q - 1) // 3
    if e is None:
        e = third
    elif e < 1 or e % (q + 1) not in (third % (q + 1), (-third) % (q + 1)):
        raise OvalPolyError(f"adelaide exponent e={e} must satisfy e = +-(q-1)/3 (mod q+1)")
    if beta is None:
        beta = next(b for b in ext.unit_circle() if b != (1, 0))
    else:
        beta = tuple(int(v) for v in beta)
        if len(beta) != 2 or not all(0 <= v < q for v in beta):
            raise OvalPolyError(f"adelaide beta={beta} must be a pair of GF({q}) elements")
        if beta == (1, 0) or ext.norm(beta) != 1:
            raise OvalPolyError(f"adelaide beta={beta} must satisfy beta^(q+1) = 1, beta != 1")
    spec = OvalPolySpec("adelaide", m, (("beta", beta), ("e", e)))
    if verify:
        _admit(spec, ctx)
    return spec


def _admit(spec, ctx):
    if ctx.m > ADMISSION_MAX_M:
        logger.warning("[CATALOG] %s at m=%d admitted without verification (m > %d)",
                       spec.label, ctx.m, ADMISSION_MAX_M)
        return
    witness = find_oval_witness(spec, ctx)
    if witness is not None:
        raise OvalPolyError(f"{spec.label} at m={ctx.m} is not an oval polynomial: {witness}")


_SIMPLE = {
    "segre": segre,
    "glynn_a": glynn_a,
    "glynn_b": glynn_b,
    "glynn_c": glynn_c,
    "cherowitzo": cherowitzo,
    "payne": payne,
}


def normalize_family(name):
    family = name.strip().lower().replace("-", "_")
    if family not in FAMILIES and family not in PROBE_FAMILIES:
        raise OvalPolyError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    return family


def make_spec(family, m, ctx=None, strict=True, **params):
    """Build a spec by family name; params are the family's construction parameters.

    strict=False lets formulas that stay well defined outside their stated
    range (Segre's x^6 at even m) be built so the criteria can reject them.
    """
    family = normalize_family(family)
    ctx = ctx or field_new(m)
    params = {k: v for k, v in params.items() if v is not None}
    if family == "translation":
        return translation(m, int(params.get("h", 1)))
    if family == "monomial":
        if "k" not in params:
            raise OvalPolyError("monomial requires parameter k")
        return monomial(m, int(params["k"]))
    if family == "segre":
        return segre(m, strict)
    if family in _SIMPLE:
        return _SIMPLE[family](m)
    if family == "subiaco":
        a = params.get("a")
        return subiaco(ctx, int(a) if a is not None else None)
    e = params.get("e")
    return adelaide(ctx, params.get("beta"), int(e) if e is not None else None)


def applicable_families(m):
    names = ["translation"]
    if m % 2:
        names += ["segre", "glynn_a"]
        names.append("glynn_b" if m % 4 == 3 else "glynn_c")
        names += ["cherowitzo", "payne"]
    names.append("subiaco")
    if m >= 4 and m % 2 == 0:
        names.append("adelaide")
    return names


def catalog(m, ctx=None):
    """Every family instance applicable at m, with canonical parameters."""
    ctx = ctx or field_new(m)
    specs = [translation(m, h) for h in range(1, m) if gcd(h, m) == 1]
    for family in applicable_families(m):
        if family in _SIMPLE:
            specs.append(_SIMPLE[family](m))
    if subiaco_parameter(ctx) is not None:
        try:
            specs.append(subiaco(ctx))
        except OvalPolyError as exc:
            logger.warning("[CATALOG] rejected: %s", exc)
    if m >= 4 and m % 2 == 0:
        try:
            specs.append(adelaide(ctx))
        except OvalPolyError as exc:
            logger.warning("[CATALOG] rejected: %s", exc)
    logger.debug("[CATALOG] m=%d -> %s", m, [s.label for s in specs])
    return specs


# ------------------------------------------------------------------
# Evaluation
# ------------------------------------------------------------------

def _check_ctx(spec, ctx):
    if spec.m != ctx.m:
        raise OvalPolyError(f"{spec.label} is defined for m={spec.m}, field has m={ctx.m}")


def _subiaco_table(spec, ctx):
    a = spec.param("a")
    xs = ctx.elements()
    a2 = ctx.mul(a, a)
    k = ctx.mul(a2, 1 ^ a ^ a2)
    x2 = ctx.mul_vec(xs, xs)
    x3 = ctx.mul_vec(x2, xs)
    x4 = ctx.mul_vec(x2, x2)
    num = ctx.mul_vec(a2, x4 ^ xs) ^ ctx.mul_vec(k, x3 ^ x2)
    den = x4 ^ ctx.mul_vec(a2, x2) ^ 1
    return ctx.mul_vec(num, ctx.inv_vec(den)) ^ ctx.sqrt_vec(xs)


def _adelaide_table(spec, ctx):
    ext = ExtFieldCtx(ctx)
    beta = spec.param("beta")
    e = spec.param("e")
    xs = ctx.elements()

    tb = ext.trace_map(beta)
    beta_q = ext.conj(beta)
    lin = ext.mul_vec((xs, np.zeros_like(xs)), beta)
    lin = (lin[0] ^ beta_q[0], lin[1] ^ beta_q[1])
    t_pow = ext.trace_map(ext.pow_vec(lin, e))

    scale = ctx.div(ext.trace_map(ext.pow(beta, e)), tb)
    term1 = ctx.mul_vec(scale, xs ^ 1)
    den = xs ^ ctx.mul_vec(tb, ctx.sqrt_vec(xs)) ^ 1
    den = ctx.mul_vec(tb, ctx.pow_vec(den, e - 1))
    term2 = ctx.mul_vec(t_pow, ctx.inv_vec(den))
    return term1 ^ term2 ^ ctx.sqrt_vec(xs)


@lru_cache(maxsize=256)
def value_table(spec, ctx):
    """f(x) for every x in GF(q), indexed by encoding; read-only."""
    _check_ctx(spec, ctx)
    if spec.exponents:
        xs = ctx.elements()
        table = np.zeros(ctx.q, dtype=np.int64)
        for e in spec.exponents:
            table ^= ctx.pow_vec(xs, e)
    elif spec.family == "subiaco":
        table = _subiaco_table(spec, ctx)
    elif spec.family == "adelaide":
        table = _adelaide_table(spec, ctx)
    else:
        raise OvalPolyError(f"no evaluation rule for {spec.label}")
    table = np.asarray(table, dtype=np.int64)
    table.flags.writeable = False
    return table


def opoly_eval(spec, ctx, x):
    if isinstance(x, Fe):
        if x.ctx != ctx:
            raise FieldError(f"context mismatch: {x.ctx} vs {ctx}")
        x = x.value
    return Fe(ctx, int(value_table(spec, ctx)[ctx.check(x)]))


# ------------------------------------------------------------------
# Criteria (each predicate is "no witness found")
# ------------------------------------------------------------------

def _first_collision(values, q):
    counts = np.bincount(values, minlength=q)
    if counts.max() <= 1:
        return None
    value = int(np.argmax(counts > 1))
    hits = np.flatnonzero(values == value)
    return value, int(hits[0]), int(hits[1])


def find_permutation_witness(spec, ctx):
    hit = _first_collision(value_table(spec, ctx), ctx.q)
    if hit is None:
        return None
    value, x, y = hit
    return {"criterion": "permutation", "x": x, "y": y, "value": value}


def is_permutation(spec, ctx):
    return find_permutation_witness(spec, ctx) is None


def find_segre_witness(spec, ctx):
    """(a, x, y) with g_a(x) = g_a(y), where g_a(x) = (f(x+a) + f(a)) x^{q-2}."""
    table = value_table(spec, ctx)
    xs = ctx.elements()
    x_inv = ctx.inv_vec(xs)
    for a in range(ctx.q):
        g = ctx.mul_vec(table[xs ^ a] ^ table[a], x_inv)
        hit = _first_collision(g, ctx.q)
        if hit is not None:
            value, x, y = hit
            return {"criterion": "segre", "a": a, "x": x, "y": y, "value": value}
    return None


def segre_condition(spec, ctx):
    return find_segre_witness(spec, ctx) is None


def find_two_to_one_witness(spec, ctx):
    table = value_table(spec, ctx)
    if table[0] != 0:
        return {"criterion": "two_to_one", "reason": "f(0) != 0"}
    xs = ctx.elements()
    for u in range(1, ctx.q):
        counts = np.bincount(table ^ ctx.mul_vec(u, xs), minlength=ctx.q)
        bad = np.flatnonzero((counts != 0) & (counts != 2))
        if bad.size:
            value = int(bad[0])
            return {"criterion": "two_to_one", "u": u, "value": value, "count": int(counts[value])}
    return None


def is_two_to_one_criterion(spec, ctx):
    return find_two_to_one_witness(spec, ctx) is None


def find_slope_witness(spec, ctx, max_m=SLOPE_MAX_M):
    """Pairwise-distinct (x, y, z) whose secant slopes through x coincide."""
    if ctx.m > max_m:
        raise ResourceCapError(f"slope condition is capped at m <= {max_m} (got m={ctx.m}); raise max_m to override")
    witness = find_permutation_witness(spec, ctx)
    if witness is not None:
        return witness
    table = value_table(spec, ctx)
    xs = ctx.elements()
    for x in range(ctx.q):
        others = xs[xs != x]
        slopes = ctx.mul_vec(table[others] ^ table[x], ctx.inv_vec(others ^ x))
        counts = np.bincount(slopes, minlength=ctx.q)
        if counts.max() > 1:
            value = int(np.argmax(counts > 1))
            y, z = (int(v) for v in others[slopes == value][:2])
            return {"criterion": "slope", "x": x, "y": y, "z": z, "slope": value}
    return None


def slope_condition(spec, ctx, max_m=SLOPE_MAX_M):
    return find_slope_witness(spec, ctx, max_m) is None


def find_oval_witness(spec, ctx):
    table = value_table(spec, ctx)
    if table[0] != 0 or table[1] != 1:
        return {"criterion": "normalization", "f(0)": int(table[0]), "f(1)": int(table[1])}
    return find_permutation_witness(spec, ctx) or find_segre_witness(spec, ctx)


def is_oval_polynomial(spec, ctx):
    return find_oval_witness(spec, ctx) is None


def find_affine_root(spec, ctx):
    roots = np.flatnonzero(value_table(spec, ctx) ^ ctx.elements() ^ 1 == 0)
    return int(roots[0]) if roots.size else None


def no_affine_root(spec, ctx):
    """True iff f(x) + x + 1 has no root in GF(q)."""
    return find_affine_root(spec, ctx) is None


def frobenius_closed(spec, ctx):
    """f(x^2) = f(x)^2 for all x."""
    table = value_table(spec, ctx)
    xs = ctx.elements()
    return bool(np.array_equal(table[ctx.mul_vec(xs, xs)], ctx.mul_vec(table, table)))


# ------------------------------------------------------------------
# JSON form: {"family": str, "m": int, "params": {...}}
# ------------------------------------------------------------------

def spec_to_json(spec):
    params = {}
    for key, value in spec.params:
        params[key] = list(value) if isinstance(value, tuple) else value
    return {"family": spec.family, "m": spec.m, "params": params}


def spec_from_json(obj, ctx=None):
    try:
        family = obj["family"]
        m = int(obj["m"])
        params = dict(obj.get("params") or {})
    except (KeyError, TypeError, ValueError) as exc:
        raise OvalPolyError(f"malformed oval polynomial spec: {exc}")
    return make_spec(family, m, ctx, **params)
