"""
This file contains the generic linear code machinery over GF(q).

It covers:
- Generator matrices (rank checks, parity-check matrices, extension by a
  parity column, JSON file format)
- Exact weight distributions by exhaustive enumeration of all codewords
- The MacWilliams transform for the dual distribution
- MDS / almost MDS / near MDS classification with Singleton and Griesmer
  diagnostics
- The closed-form weight distributions of near MDS codes
- Pairing of minimum weight codewords with dual minimum weight codewords

All counts are exact Python integers; nothing here uses floating point.
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import comb

import numpy as np

from . import enumeration_budget, worker_count
from .errors import BudgetExceededError, CodeError, FieldError, PairingError
from .gf2m import field_new

logger = logging.getLogger(__name__)

# largest span table (rows x columns) kept in memory during enumeration
TAIL_LIMIT = 1 << 25


# ------------------------------------------------------------------
# Generator matrices
# ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    ctx: object
    entries: np.ndarray
    label: str = ""

    @property
    def k(self):
        return self.entries.shape[0]

    @property
    def n(self):
        return self.entries.shape[1]

    def column(self, j):
        return tuple(int(v) for v in self.entries[:, j])

    def rows(self):
        return [[int(v) for v in row] for row in self.entries]

    def __eq__(self, other):
        if not isinstance(other, GeneratorMatrix):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self.entries, other.entries)

    def __repr__(self):
        return f"GeneratorMatrix({self.label or 'unlabelled'}, {self.k}x{self.n} over GF({self.ctx.q}))"


def rank(G):
    return int(np.linalg.matrix_rank(G.ctx.array(G.entries)))


def generator_matrix(ctx, rows, label=""):
    """Build a GeneratorMatrix and check that its rows are independent."""
    try:
        raw = np.asarray(rows)
    except (TypeError, ValueError) as exc:
        raise CodeError(f"generator matrix is not a k x n array of integers: {exc}")
    if raw.ndim != 2 or raw.size == 0:
        raise CodeError("generator matrix must be a non-empty k x n array")
    if raw.dtype.kind not in "iu":
        raise CodeError(f"generator entries must be integers, got {raw.dtype}")
    entries = np.array(raw, dtype=np.int64)
    if entries.min() < 0 or entries.max() >= ctx.q:
        raise CodeError(f"generator entries must lie in [0, {ctx.q})")
    entries.flags.writeable = False
    G = GeneratorMatrix(ctx, entries, label)
    r = rank(G)
    if r != G.k:
        raise CodeError(f"{G!r} has rank {r} < k={G.k}")
    return G


def parity_check(G):
    """Generator matrix of the dual code: a basis of the null space of G."""
    basis = G.ctx.array(G.entries).null_space()
    if basis.size == 0:
        raise CodeError(f"{G!r} is the full space; its dual is {{0}}")
    return generator_matrix(G.ctx, basis.view(np.ndarray), f"dual({G.label})" if G.label else "dual")


def extend_code(G):
    """Append an overall parity column: each new entry is the sum of its row."""
    parity = np.bitwise_xor.reduce(G.entries, axis=1)
    rows = np.hstack([G.entries, parity[:, None]])
    return generator_matrix(G.ctx, rows, f"{G.label}+parity" if G.label else "")


# ------------------------------------------------------------------
# Weight distributions
# ------------------------------------------------------------------

@dataclass(frozen=True)
class WeightDistribution:
    n: int
    counts: tuple

    @classmethod
    def from_mapping(cls, n, mapping):
        counts = [0] * (n + 1)
        for weight, count in mapping.items():
            counts[weight] = count
        return cls(n, tuple(counts))

    @property
    def total(self):
        return sum(self.counts)

    @property
    def min_distance(self):
        """Smallest nonzero weight, or None for the zero code."""
        return next((i for i in range(1, self.n + 1) if self.counts[i]), None)

    def nonzero(self):
        return {i: a for i, a in enumerate(self.counts) if a}

    def enumerator(self):
        """Render as '1 + 42z^6 + ...'."""
        parts = []
        for i, a in self.nonzero().items():
            parts.append(str(a) if i == 0 else f"{a}z^{i}")
        return " + ".join(parts)

    def to_csv(self):
        lines = ["weight,count"]
        lines += [f"{i},{a}" for i, a in enumerate(self.counts)]
        return "\n".join(lines) + "\n"

    def to_json(self):
        return list(self.counts)


class _Enumerator:
    """Walks every codeword of G block by block.

    The span of the last t rows is tabulated once (q^t rows of length n);
    each message over the first k - t rows then contributes one block
    tail ^ head_vector.
    """

    def __init__(self, G, budget=None):
        ctx = G.ctx
        q, k, n = ctx.q, G.k, G.n
        budget = budget or enumeration_budget()
        if q ** k > budget:
            raise BudgetExceededError(
                f"{G!r} has q^k = {q ** k} codewords, above the budget {budget}; "
                f"raise OVALCODES_BUDGET or --max-budget"
            )
        tables = [ctx.scale_table(row).astype(np.uint16) for row in G.entries]

        t = 1
        while t < k and q ** (t + 1) * n <= TAIL_LIMIT:
            t += 1
        tail = tables[k - 1]
        for i in range(k - 2, k - t - 1, -1):
            tail = (tables[i][:, None, :] ^ tail[None, :, :]).reshape(-1, n)

        self.q, self.n = q, n
        self.tail = tail
        self.head_tables = tables[:k - t]
        self.head_count = q ** (k - t)

    def head_vector(self, index):
        vector = np.zeros(self.n, dtype=np.uint16)
        for table in reversed(self.head_tables):
            index, digit = divmod(index, self.q)
            vector ^= table[digit]
        return vector

    def block(self, index):
        return self.tail ^ self.head_vector(index)

    def histogram(self, indices):
        hist = np.zeros(self.n + 1, dtype=np.int64)
        for index in indices:
            weights = np.count_nonzero(self.block(index), axis=1)
            hist += np.bincount(weights, minlength=self.n + 1)
        return hist


def weight_distribution(G, budget=None, workers=None):
    """Exact A_0..A_n by enumerating all q^k codewords."""
    walker = _Enumerator(G, budget)
    workers = max(1, min(workers or worker_count(), walker.head_count))
    logger.info("[WEIGHTS] %r: %d codewords on %d worker(s)", G, G.ctx.q ** G.k, workers)

    if workers == 1:
        hist = walker.histogram(range(walker.head_count))
    else:
        shards = [range(w, walker.head_count, workers) for w in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hist = sum(pool.map(walker.histogram, shards))
    return WeightDistribution(G.n, tuple(int(v) for v in hist))


def codewords_of_weight(G, weight, budget=None):
    """Every codeword of the given weight, as a list of int tuples."""
    walker = _Enumerator(G, budget)
    found = []
    for index in range(walker.head_count):
        block = walker.block(index)
        hits = np.flatnonzero(np.count_nonzero(block, axis=1) == weight)
        found.extend(tuple(int(v) for v in block[h]) for h in hits)
    return found


def krawtchouk(j, i, n, q):
    return sum((-1) ** s * (q - 1) ** (j - s) * comb(i, s) * comb(n - i, j - s) for s in range(j + 1))


def macwilliams_dual(W, q, k):
    """Weight distribution of the dual code via the MacWilliams identity."""
    size = q ** k
    if W.total != size:
        raise CodeError(f"distribution sums to {W.total}, expected q^k = {size}")
    terms = list(W.nonzero().items())
    counts = []
    for j in range(W.n + 1):
        acc = sum(a * krawtchouk(j, i, W.n, q) for i, a in terms)
        value, rest = divmod(acc, size)
        if rest or value < 0:
            raise CodeError(f"MacWilliams transform gives {acc}/{size} at weight {j}; input is not a code distribution")
        counts.append(value)
    dual = WeightDistribution(W.n, tuple(counts))
    logger.debug("[MACWILLIAMS] dual %s", dual.enumerator())
    return dual


def dual_min_distance(W_dual):
    return W_dual.min_distance


# ------------------------------------------------------------------
# Classification and bounds
# ------------------------------------------------------------------

class CodeClass(str, Enum):
    MDS = "MDS"
    AMDS = "AMDS-only"
    NMDS = "NMDS"
    OTHER = "other"


def griesmer_sum(k, d, q):
    """sum_{i=0}^{k-1} ceil(d / q^i)."""
    return sum(-(-d // q ** i) for i in range(k))


@dataclass
class CodeReport:
    n: int
    k: int
    d: int
    d_dual: object
    q: int
    code_class: CodeClass
    singleton_defect: int
    griesmer_gap: int
    distance_optimal: object
    griesmer_optimal: bool
    griesmer_almost_optimal: bool
    distribution: WeightDistribution = field(repr=False, default=None)
    dual_distribution: WeightDistribution = field(repr=False, default=None)
    label: str = ""

    @property
    def parameters(self):
        return f"[{self.n},{self.k},{self.d}]"

    def summary(self):
        text = f"{self.parameters} {self.code_class.value}"
        if self.griesmer_almost_optimal:
            text += ", Griesmer almost-optimal"
        if self.distance_optimal:
            text += ", distance-optimal"
        return text

    def to_json(self):
        return {
            "label": self.label,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "d_dual": self.d_dual,
            "q": self.q,
            "class": self.code_class.value,
            "singleton_defect": self.singleton_defect,
            "griesmer_gap": self.griesmer_gap,
            "distance_optimal": self.distance_optimal,
            "griesmer_optimal": self.griesmer_optimal,
            "griesmer_almost_optimal": self.griesmer_almost_optimal,
            "distribution": self.distribution.to_json() if self.distribution else None,
            "dual_distribution": self.dual_distribution.to_json() if self.dual_distribution else None,
        }


def classify(G, budget=None, workers=None):
    q, k, n = G.ctx.q, G.k, G.n
    W = weight_distribution(G, budget, workers)
    d = W.min_distance
    W_dual = macwilliams_dual(W, q, k)
    d_dual = dual_min_distance(W_dual)

    defect = n - k + 1 - d
    bound = griesmer_sum(k, d, q)
    if defect == 0:
        code_class = CodeClass.MDS
    elif d_dual is not None and d + d_dual == n:
        code_class = CodeClass.NMDS
    elif defect == 1:
        code_class = CodeClass.AMDS
    else:
        code_class = CodeClass.OTHER

    # d+1 ruled out by Singleton or Griesmer; otherwise left undetermined
    ruled_out = d + 1 > n - k + 1 or griesmer_sum(k, d + 1, q) > n
    report = CodeReport(
        n=n, k=k, d=d, d_dual=d_dual, q=q,
        code_class=code_class,
        singleton_defect=defect,
        griesmer_gap=n - bound,
        distance_optimal=True if ruled_out else None,
        griesmer_optimal=n == bound,
        griesmer_almost_optimal=n - 1 == bound,
        distribution=W,
        dual_distribution=W_dual,
        label=G.label,
    )
    logger.info("[WEIGHTS] %s: %s", G.label or "code", report.summary())
    return report


def nmds_closed_form(n, k, q, A_min):
    """Primal and dual distributions of an [n, k, n-k] NMDS code from A_{n-k}."""
    primal = [0] * (n + 1)
    primal[0] = 1
    primal[n - k] = A_min
    for s in range(1, k + 1):
        head = sum((-1) ** j * comb(n - k + s, j) * (q ** (s - j) - 1) for j in range(s))
        primal[n - k + s] = comb(n, k - s) * head + (-1) ** s * comb(k, s) * A_min

    dual = [0] * (n + 1)
    dual[0] = 1
    dual[k] = A_min
    for s in range(1, n - k + 1):
        head = sum((-1) ** j * comb(k + s, j) * (q ** (s - j) - 1) for j in range(s))
        dual[k + s] = comb(n, k + s) * head + (-1) ** s * comb(n - k, s) * A_min

    for name, counts, size in (("primal", primal, q ** k), ("dual", dual, q ** (n - k))):
        negative = [i for i, a in enumerate(counts) if a < 0]
        if negative:
            raise CodeError(f"A_min={A_min} gives negative {name} counts at weights {negative} for [{n},{k}] over GF({q})")
        if sum(counts) != size:
            raise CodeError(f"{name} closed form sums to {sum(counts)}, expected {size}")
    return WeightDistribution(n, tuple(primal)), WeightDistribution(n, tuple(dual))


# ------------------------------------------------------------------
# Minimum weight support pairing
# ------------------------------------------------------------------

@dataclass
class PairingReport:
    primal_words: int
    primal_projective: int
    dual_words: int
    dual_projective: int
    paired: int
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return (not self.violations
                and self.primal_words == self.dual_words
                and self.paired == self.primal_projective == self.dual_projective)

    def to_json(self):
        return {
            "primal_words": self.primal_words,
            "primal_projective": self.primal_projective,
            "dual_words": self.dual_words,
            "dual_projective": self.dual_projective,
            "paired": self.paired,
            "violations": [list(v) for v in self.violations],
            "ok": self.ok,
        }


def dual_weight_three_words(G):
    """Projective weight-3 dual codewords of a k=3 code, from dependent column triples.

    Returns {support: coefficients} with coefficients normalised so the last is 1.
    """
    if G.k != 3:
        raise CodeError(f"column-triple scan needs k = 3, got k = {G.k}")
    ctx = G.ctx
    cols = G.entries.T
    n = G.n
    found = {}
    for i in range(n - 2):
        rest = cols[i + 1:]
        jj, ll = np.triu_indices(len(rest), k=1)
        u, v, w = cols[i], rest[jj], rest[ll]
        mv = ctx.mul_vec
        det = (mv(u[0], mv(v[:, 1], w[:, 2]) ^ mv(v[:, 2], w[:, 1]))
               ^ mv(u[1], mv(v[:, 0], w[:, 2]) ^ mv(v[:, 2], w[:, 0]))
               ^ mv(u[2], mv(v[:, 0], w[:, 1]) ^ mv(v[:, 1], w[:, 0])))
        for hit in np.flatnonzero(det == 0):
            j, l = i + 1 + int(jj[hit]), i + 1 + int(ll[hit])
            triple = ctx.array(G.entries[:, [i, j, l]].T)
            if np.linalg.matrix_rank(triple) != 2:
                raise PairingError(f"columns {(i, j, l)} span a line; the dual has a word of weight <= 2")
            relation = triple.left_null_space()[0]
            if np.count_nonzero(relation.view(np.ndarray)) != 3:
                raise PairingError(f"columns {(i, j, l)} contain a dependent pair")
            relation = relation / relation[2]
            found[(i, j, l)] = tuple(int(c) for c in relation)
    return found


def min_weight_support_pairing(G, budget=None, strict=True, distribution=None):
    """Match each minimum weight codeword with its support-disjoint dual weight-3 word."""
    q = G.ctx.q
    W = distribution if distribution is not None else weight_distribution(G, budget)
    d = W.min_distance
    d_dual = dual_min_distance(macwilliams_dual(W, q, G.k))
    if d_dual is None or d + d_dual != G.n:
        raise CodeError(f"{G!r} is not NMDS (d={d}, d_dual={d_dual}); pairing needs an NMDS code")

    primal_classes = {}
    words = codewords_of_weight(G, d, budget)
    for word in words:
        zeros = tuple(i for i, v in enumerate(word) if v == 0)
        primal_classes[zeros] = primal_classes.get(zeros, 0) + 1

    dual = dual_weight_three_words(G)
    dual_supports = set(dual)
    violations = []
    matched = set()
    for zeros, count in primal_classes.items():
        if count != q - 1:
            violations.append(("non-projective class", zeros, count))
        partners = [s for s in combinations(zeros, d_dual) if s in dual_supports]
        if len(partners) != 1:
            violations.append(("partners", zeros, len(partners)))
        else:
            matched.add(partners[0])

    report = PairingReport(
        primal_words=len(words),
        primal_projective=len(primal_classes),
        dual_words=len(dual) * (q - 1),
        dual_projective=len(dual),
        paired=len(matched),
        violations=violations,
    )
    logger.info("[PAIRING] %s: %s", G.label or "code", report.to_json())
    if strict and not report.ok:
        raise PairingError(f"support pairing violated for {G!r}: {report.to_json()}")
    return report


# ------------------------------------------------------------------
# Code file format
# ------------------------------------------------------------------

def matrix_to_json(G):
    return {
        "m": G.ctx.m,
        "modulus": G.ctx.modulus,
        "q": G.ctx.q,
        "k": G.k,
        "n": G.n,
        "generator": G.rows(),
        "label": G.label,
    }


def matrix_from_json(obj):
    try:
        m = int(obj["m"])
        modulus = int(obj["modulus"])
        rows = obj["generator"]
        label = str(obj.get("label", ""))
        k, n, q = int(obj["k"]), int(obj["n"]), int(obj["q"])
    except (KeyError, TypeError, ValueError) as exc:
        raise CodeError(f"malformed code file: {exc}")
    try:
        ctx = field_new(m, modulus)
    except FieldError as exc:
        raise CodeError(f"malformed code file: {exc}")
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise CodeError("malformed code file: generator must be a list of rows")
    # bool is an int subclass; floats would be truncated by numpy
    if any(type(v) is not int for row in rows for v in row):
        raise CodeError("malformed code file: generator entries must be integers")
    if q != ctx.q or len(rows) != k or any(len(row) != n for row in rows):
        raise CodeError(f"malformed code file: declared q={q}, k={k}, n={n} do not match the generator")
    return generator_matrix(ctx, rows, label)


def dump_matrix(G):
    return json.dumps(matrix_to_json(G), indent=2) + "\n"


def load_matrix(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
    except json.JSONDecodeError as exc:
        raise CodeError(f"cannot parse {path}: {exc}")
    except OSError as exc:
        raise CodeError(f"cannot read {path}: {exc}")
    return matrix_from_json(obj)
