"""
This file builds the concrete objects attached to an oval polynomial f.

It contains:
- The hyperoval H(f) in PG(2, q), its validation and line statistics
- The two directions hyperoval -> [q+2, 3, q] MDS code -> hyperoval
- The generator matrices B_f, its extension, G_f and its one-column
  extension (column order follows the powers of alpha)
- The closed-form weight enumerators each construction is expected to have
"""

import logging
from dataclasses import dataclass

import numpy as np

from .errors import HyperovalError, OvalPolyError
from .lincode import (
    CodeClass,
    classify,
    dual_weight_three_words,
    extend_code,
    generator_matrix,
)
from .opoly import find_oval_witness, value_table

logger = logging.getLogger(__name__)


# ------------------------------------------------------------------
# Projective plane and hyperovals
# ------------------------------------------------------------------

def normalize_point(ctx, point):
    """Scale a nonzero triple so its last nonzero coordinate is 1."""
    point = tuple(int(v) for v in point)
    last = next((v for v in reversed(point) if v), None)
    if last is None:
        raise HyperovalError("the zero vector is not a projective point")
    scale = ctx.inv(last)
    return tuple(ctx.mul(scale, v) for v in point)


def lines_of_plane(ctx):
    """All q^2 + q + 1 lines [a:b:c] of PG(2, q), normalised like points."""
    q = ctx.q
    a, b = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    affine = np.stack([a.ravel(), b.ravel(), np.ones(q * q, dtype=np.int64)], axis=1)
    at_infinity = np.stack([np.arange(q), np.ones(q, dtype=np.int64), np.zeros(q, dtype=np.int64)], axis=1)
    return np.vstack([affine, at_infinity, [[1, 0, 0]]]).astype(np.int64)


@dataclass(frozen=True)
class Hyperoval:
    ctx: object
    points: tuple

    def line_profile(self):
        """{points on the line: number of lines} over every line of PG(2, q)."""
        ctx = self.ctx
        lines = lines_of_plane(ctx)
        pts = np.array(self.points, dtype=np.int64)
        incidence = np.zeros((len(lines), len(pts)), dtype=np.int64)
        for i in range(3):
            incidence ^= ctx.mul_vec(lines[:, i][:, None], pts[:, i][None, :])
        sizes = np.count_nonzero(incidence == 0, axis=1)
        values, counts = np.unique(sizes, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def secant_count(self):
        return self.line_profile().get(2, 0)

    def validate(self):
        ctx = self.ctx
        if len(self.points) != ctx.q + 2:
            raise HyperovalError(f"a hyperoval in PG(2,{ctx.q}) has {ctx.q + 2} points, got {len(self.points)}")
        for p in self.points:
            if normalize_point(ctx, p) != tuple(p):
                raise HyperovalError(f"point {p} is not normalised")
        if len(set(self.points)) != len(self.points):
            raise HyperovalError("points are not distinct")
        triples = dual_weight_three_words(code_from_hyperoval(self, check=False))
        if triples:
            raise HyperovalError(f"{len(triples)} collinear triple(s), e.g. columns {next(iter(triples))}")
        profile = self.line_profile()
        if set(profile) - {0, 2}:
            raise HyperovalError(f"line intersection profile {profile} is not in {{0, 2}}")
        return self


def build_hyperoval(spec, ctx):
    """H(f) = {(f(c), c, 1)} U {(1,0,0), (0,1,0)}."""
    witness = find_oval_witness(spec, ctx)
    if witness is not None:
        raise OvalPolyError(f"{spec.label} is not an oval polynomial over GF({ctx.q}): {witness}")
    table = value_table(spec, ctx)
    points = tuple((int(table[c]), c, 1) for c in range(ctx.q)) + ((1, 0, 0), (0, 1, 0))
    return Hyperoval(ctx, points)


def code_from_hyperoval(H, check=True, label="hyperoval"):
    """3 x (q+2) generator matrix whose columns are the hyperoval points."""
    rows = np.array(H.points, dtype=np.int64).T
    if check:
        H.validate()
    return generator_matrix(H.ctx, rows, label)


def hyperoval_from_mds(G, budget=None):
    ctx = G.ctx
    if G.k != 3 or G.n != ctx.q + 2:
        raise HyperovalError(f"expected a 3 x {ctx.q + 2} generator matrix, got {G.k} x {G.n}")
    if not np.all(G.entries.any(axis=0)):
        raise HyperovalError("generator matrix has a zero column")
    report = classify(G, budget)
    if report.code_class is not CodeClass.MDS or report.d != ctx.q:
        raise HyperovalError(f"{G!r} is {report.summary()}, not a [q+2,3,q] MDS code")
    points = tuple(normalize_point(ctx, G.column(j)) for j in range(G.n))
    return Hyperoval(ctx, points).validate()


# ------------------------------------------------------------------
# Generator matrices
# ------------------------------------------------------------------

def _label(prefix, spec, ctx):
    return f"{prefix}/{spec.slug}/m={ctx.m}"


def _require_oval(spec, ctx):
    witness = find_oval_witness(spec, ctx)
    if witness is not None:
        raise OvalPolyError(f"{spec.label} is not an oval polynomial over GF({ctx.q}): {witness}")


def _require_normalized(spec, ctx):
    table = value_table(spec, ctx)
    if table[0] != 0 or table[1] != 1:
        raise OvalPolyError(f"{spec.label} needs f(0)=0 and f(1)=1, got f(0)={table[0]}, f(1)={table[1]}")
    return table


def _affine_columns(ctx, table):
    xs = ctx.alpha_powers()
    return np.stack([table[xs], xs, np.ones_like(xs)])


def build_Bf(spec, ctx, verify=True):
    """[f(0) f(a^0) .. f(a^{q-2}) 1 0; 0 a^0 .. a^{q-2} 0 1; 1 1 .. 1 0 0]."""
    if verify:
        _require_oval(spec, ctx)
    table = value_table(spec, ctx)
    rows = np.hstack([
        np.array([[table[0]], [0], [1]]),
        _affine_columns(ctx, table),
        np.array([[1, 0], [0, 1], [0, 0]]),
    ])
    return generator_matrix(ctx, rows, _label("Bf", spec, ctx))


def build_Bf_ext(spec, ctx, verify=True):
    extended = extend_code(build_Bf(spec, ctx, verify))
    return generator_matrix(ctx, extended.entries, _label("Bf_ext", spec, ctx))


def build_Gf(spec, ctx):
    """[f(a^0) .. f(a^{q-2}) 0 1; a^0 .. a^{q-2} 1 0; 1 .. 1 1 1]."""
    table = _require_normalized(spec, ctx)
    rows = np.hstack([
        _affine_columns(ctx, table),
        np.array([[0, 1], [1, 0], [1, 1]]),
    ])
    return generator_matrix(ctx, rows, _label("Gf", spec, ctx))


def build_Gf_bar(spec, ctx):
    """G_f with the column (f(0), 0, 1) in front."""
    table = _require_normalized(spec, ctx)
    rows = np.hstack([
        np.array([[table[0]], [0], [1]]),
        _affine_columns(ctx, table),
        np.array([[0, 1], [1, 0], [1, 1]]),
    ])
    return generator_matrix(ctx, rows, _label("Gf_bar", spec, ctx))


# ------------------------------------------------------------------
# Closed-form enumerators {weight: count}
# ------------------------------------------------------------------

def hyperoval_code_enumerator(q):
    return {0: 1, q: (q + 2) * (q * q - 1) // 2, q + 2: q * (q - 1) ** 2 // 2}


def bf_ext_enumerator(q):
    return {
        0: 1,
        q: (q - 1) * (q + 2) // 2,
        q + 1: (q - 1) * q * (q + 2) // 2,
        q + 2: (q - 1) * q // 2,
        q + 3: (q - 2) * (q - 1) * q // 2,
    }


def gf_enumerator(q):
    return {
        0: 1,
        q - 2: (q - 1) * (q - 2),
        q - 1: (q - 1) * (q * q - 5 * q + 12) // 2,
        q: (q - 1) * (4 * q - 5),
        q + 1: (q - 1) * (q * q - 3 * q + 4) // 2,
    }


def gf_bar_enumerator(q):
    return {
        0: 1,
        q - 1: (q - 1) * (q - 2),
        q: (q - 1) * (q * q - 3 * q + 14) // 2,
        q + 1: 3 * (q - 1) * (q - 2),
        q + 2: (q - 1) * (q * q - 3 * q + 4) // 2,
    }


ENUMERATOR_FORMULAS = {
    "hyperoval-mds": "1 + (q+2)(q^2-1)/2 z^q + q(q-1)^2/2 z^(q+2)",
    "extended": "1 + (q-1)(q+2)/2 z^q + (q-1)q(q+2)/2 z^(q+1) + (q-1)q/2 z^(q+2) + (q-2)(q-1)q/2 z^(q+3)",
    "cf": "1 + (q-1)(q-2) z^(q-2) + (q-1)(q^2-5q+12)/2 z^(q-1) + (q-1)(4q-5) z^q + (q-1)(q^2-3q+4)/2 z^(q+1)",
    "cfbar": "1 + (q-1)(q-2) z^(q-1) + (q-1)(q^2-3q+14)/2 z^q + 3(q-1)(q-2) z^(q+1) + (q-1)(q^2-3q+4)/2 z^(q+2)",
}

CONSTRUCTIONS = {
    "hyperoval-mds": (build_Bf, hyperoval_code_enumerator),
    "extended": (build_Bf_ext, bf_ext_enumerator),
    "cf": (build_Gf, gf_enumerator),
    "cfbar": (build_Gf_bar, gf_bar_enumerator),
}


def build_code(construction, spec, ctx):
    try:
        builder, _ = CONSTRUCTIONS[construction]
    except KeyError:
        raise OvalPolyError(f"unknown construction {construction!r}; expected one of {', '.join(CONSTRUCTIONS)}")
    G = builder(spec, ctx)
    logger.info("[BUILD] %r", G)
    return G


def expected_enumerator(construction, q):
    return CONSTRUCTIONS[construction][1](q)
