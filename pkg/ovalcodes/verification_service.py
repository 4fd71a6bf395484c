"""
This file contains the verification workflows shared by the command line
and the JSON API.

It lets callers:
- List the oval polynomial catalog for a field
- Run each oval criterion on one polynomial, with timings and witnesses
- Build a generator matrix and analyse any code (distribution, dual, class)
- Check one of the three NMDS theorems end to end (hypotheses, enumerator,
  closed form, optimality flags, support pairing)
- Probe a construction outside its theorem's hypotheses

Every workflow returns plain dataclasses / dicts; formatting is left to the
caller.
"""

import logging
import time
from dataclasses import dataclass, field

from .constructions import (
    CONSTRUCTIONS,
    ENUMERATOR_FORMULAS,
    build_code,
    expected_enumerator,
)
from .errors import CodeError, HypothesisError, OvalPolyError, ResourceCapError
from .gf2m import field_new
from .lincode import (
    CodeClass,
    classify,
    min_weight_support_pairing,
    nmds_closed_form,
)
from .opoly import (
    SLOPE_MAX_M,
    catalog,
    find_affine_root,
    find_oval_witness,
    find_slope_witness,
    find_two_to_one_witness,
    make_spec,
    spec_to_json,
)

logger = logging.getLogger(__name__)

# theorem id -> (construction, needs odd m and GF(2) coefficients)
THEOREMS = {
    "3.1": ("extended", False),
    "4.1": ("cf", True),
    "5.1": ("cfbar", True),
}


@dataclass
class CriterionResult:
    name: str
    passed: object  # True / False, or None when skipped
    seconds: float
    witness: dict = None
    note: str = ""

    @property
    def verdict(self):
        if self.passed is None:
            return "SKIP"
        return "PASS" if self.passed else "FAIL"

    def to_json(self):
        return {
            "criterion": self.name,
            "verdict": self.verdict,
            "seconds": round(self.seconds, 6),
            "witness": self.witness,
            "note": self.note,
        }


@dataclass
class TheoremResult:
    theorem: str
    construction: str
    spec: dict
    report: object
    expected: dict
    formula: str
    diff: list = field(default_factory=list)
    closed_form_ok: bool = False
    optimality_ok: bool = False
    pairing: object = None
    pairing_error: str = ""

    @property
    def passed(self):
        return (not self.diff
                and self.report.code_class is CodeClass.NMDS
                and self.closed_form_ok
                and self.optimality_ok
                and self.pairing is not None
                and self.pairing.ok)

    def rows(self):
        """(weight, expected, computed) for every weight either side reports."""
        computed = self.report.distribution.nonzero()
        weights = sorted(set(self.expected) | set(computed))
        return [(w, self.expected.get(w, 0), computed.get(w, 0)) for w in weights]

    def to_json(self):
        return {
            "theorem": self.theorem,
            "construction": self.construction,
            "spec": self.spec,
            "verdict": "PASS" if self.passed else "FAIL",
            "formula": self.formula,
            "rows": [{"weight": w, "expected": e, "computed": c} for w, e, c in self.rows()],
            "diff": [{"weight": w, "expected": e, "computed": c} for w, e, c in self.diff],
            "closed_form_ok": self.closed_form_ok,
            "optimality_ok": self.optimality_ok,
            "pairing": self.pairing.to_json() if self.pairing else None,
            "pairing_error": self.pairing_error,
            "report": self.report.to_json(),
        }


def _timed(name, finder):
    start = time.perf_counter()
    witness = finder()
    return CriterionResult(name, witness is None, time.perf_counter() - start, witness)


class VerificationService:

    @staticmethod
    def field(m, modulus=None, alpha=None):
        return field_new(m, modulus, alpha)

    @staticmethod
    def resolve_spec(family, m, params=None, ctx=None, strict=True):
        ctx = ctx or field_new(m)
        return make_spec(family, m, ctx, strict=strict, **(params or {})), ctx

    # ------------------------------------------------------------------
    # Oval polynomials
    # ------------------------------------------------------------------
    @staticmethod
    def list_catalog(m, ctx=None):
        ctx = ctx or field_new(m)
        rows = []
        for spec in catalog(m, ctx):
            row = spec_to_json(spec)
            row["label"] = spec.label
            row["polynomial"] = spec.polynomial()
            row["gf2_coefficients"] = spec.gf2_coefficients
            rows.append(row)
        return rows

    @staticmethod
    def verify_opoly(family, m, params=None, ctx=None, slope_max_m=SLOPE_MAX_M):
        """Run every oval criterion; formulas outside their stated range are evaluated anyway."""
        spec, ctx = VerificationService.resolve_spec(family, m, params, ctx, strict=False)
        results = [
            _timed("oval (Segre)", lambda: find_oval_witness(spec, ctx)),
            _timed("2-to-1", lambda: find_two_to_one_witness(spec, ctx)),
        ]
        try:
            results.append(_timed("slope", lambda: find_slope_witness(spec, ctx, slope_max_m)))
        except ResourceCapError as exc:
            results.append(CriterionResult("slope", None, 0.0, None, str(exc)))

        start = time.perf_counter()
        root = find_affine_root(spec, ctx)
        results.append(CriterionResult(
            "f(x)+x+1 root-free", root is None, time.perf_counter() - start,
            None if root is None else {"criterion": "affine_root", "x": root},
        ))
        for r in results:
            logger.info("[VERIFY] %s m=%d %s: %s", spec.label, m, r.name, r.verdict)
        return spec, results

    # ------------------------------------------------------------------
    # Codes
    # ------------------------------------------------------------------
    @staticmethod
    def build(construction, family, m, params=None, ctx=None):
        spec, ctx = VerificationService.resolve_spec(family, m, params, ctx)
        return build_code(construction, spec, ctx)

    @staticmethod
    def analyze(G, budget=None, workers=None):
        return classify(G, budget, workers)

    # ------------------------------------------------------------------
    # Theorems
    # ------------------------------------------------------------------
    @staticmethod
    def check_hypotheses(theorem_id, spec, ctx):
        if theorem_id not in THEOREMS:
            raise HypothesisError(f"unknown theorem {theorem_id!r}; expected one of {', '.join(THEOREMS)}")
        construction, odd_gf2 = THEOREMS[theorem_id]
        if ctx.m < 3:
            raise HypothesisError(f"theorem {theorem_id} needs m >= 3, got m={ctx.m}")
        if odd_gf2 and ctx.m % 2 == 0:
            raise HypothesisError(f"theorem {theorem_id} refused: m must be odd, got m={ctx.m}")
        if odd_gf2 and not spec.gf2_coefficients:
            raise HypothesisError(f"theorem {theorem_id} refused: {spec.label} has coefficients outside GF(2)")
        witness = find_oval_witness(spec, ctx)
        if witness is not None:
            raise HypothesisError(f"theorem {theorem_id} refused: {spec.label} is not an oval polynomial ({witness})")
        return construction

    @staticmethod
    def verify_theorem(theorem_id, family, m, params=None, ctx=None, budget=None, workers=None):
        ctx = ctx or field_new(m)
        if THEOREMS.get(theorem_id, ("", False))[1] and m % 2 == 0:
            raise HypothesisError(f"theorem {theorem_id} refused: m must be odd, got m={m}")
        try:
            spec = make_spec(family, m, ctx, strict=False, **(params or {}))
        except OvalPolyError as exc:
            raise HypothesisError(f"theorem {theorem_id} refused: {exc}")
        construction = VerificationService.check_hypotheses(theorem_id, spec, ctx)

        G = build_code(construction, spec, ctx)
        report = classify(G, budget, workers)
        expected = expected_enumerator(construction, ctx.q)
        computed = report.distribution.nonzero()
        diff = [(w, expected.get(w, 0), computed.get(w, 0))
                for w in sorted(set(expected) | set(computed))
                if expected.get(w, 0) != computed.get(w, 0)]

        result = TheoremResult(
            theorem=theorem_id,
            construction=construction,
            spec=spec_to_json(spec),
            report=report,
            expected=expected,
            formula=ENUMERATOR_FORMULAS[construction],
            diff=diff,
        )

        if report.code_class is CodeClass.NMDS:
            A_min = report.distribution.counts[report.d]
            try:
                primal, dual = nmds_closed_form(report.n, report.k, report.q, A_min)
                result.closed_form_ok = (primal == report.distribution
                                         and dual == report.dual_distribution)
            except CodeError as exc:
                logger.warning("[VERIFY] closed form rejected: %s", exc)
            try:
                result.pairing = min_weight_support_pairing(
                    G, budget, strict=False, distribution=report.distribution)
            except CodeError as exc:
                result.pairing_error = str(exc)

        if construction == "extended":
            result.optimality_ok = bool(report.distance_optimal)
        else:
            result.optimality_ok = report.griesmer_almost_optimal

        logger.info("[VERIFY] theorem %s %s m=%d: %s", theorem_id, spec.label, m,
                    "PASS" if result.passed else "FAIL")
        return result

    @staticmethod
    def probe(construction, family, m, params=None, ctx=None, budget=None, workers=None):
        """Build and classify a construction without enforcing any theorem hypothesis."""
        if construction not in CONSTRUCTIONS:
            raise OvalPolyError(f"unknown construction {construction!r}; expected one of {', '.join(CONSTRUCTIONS)}")
        spec, ctx = VerificationService.resolve_spec(family, m, params, ctx, strict=False)
        theorem_id = next((t for t, (c, _) in THEOREMS.items() if c == construction), None)

        outside = None
        if theorem_id is not None:
            try:
                VerificationService.check_hypotheses(theorem_id, spec, ctx)
                outside = False
            except HypothesisError as exc:
                outside = str(exc)

        G = build_code(construction, spec, ctx)
        report = classify(G, budget, workers)
        root = find_affine_root(spec, ctx)
        return {
            "construction": construction,
            "theorem": theorem_id,
            "spec": spec_to_json(spec),
            "outside_hypotheses": outside,
            "affine_root": root,
            "summary": report.summary(),
            "report": report.to_json(),
        }
