"""
This file defines the ovalcodes command line.

Commands:
- opoly list / opoly verify      catalog and oval criteria
- code build / code analyze      generator matrix files and their reports
- verify theorem                 end-to-end check of one NMDS theorem
- probe                          classify a construction outside its hypotheses
- serve                          run the JSON API

Exit codes: 0 ok, 1 a verification verdict was FAIL, 2 precondition or
input error, 3 enumeration budget or resource cap exceeded.
"""

import functools
import json
import logging
from dataclasses import dataclass, field

import click

from . import configure_logging, create_app, enumeration_budget, worker_count
from .constructions import CONSTRUCTIONS
from .errors import HypothesisError, OvalCodesError, OvalPolyError
from .lincode import dump_matrix, load_matrix
from .opoly import normalize_family
from .verification_service import THEOREMS, VerificationService

logger = logging.getLogger(__name__)

DEFAULT_M_RANGE = range(3, 9)
FORMATS = ("pretty", "json")


@dataclass
class RunConfig:
    command: str
    m: object = None
    family: str = None
    params: dict = field(default_factory=dict)
    modulus: int = None
    alpha: int = None
    budget: int = None
    source: str = None
    output: str = None
    format: str = "pretty"

    # fields each command cannot run without
    REQUIRED = {
        "opoly list": ("m",),
        "code build": ("m", "family", "output"),
        "code analyze": ("source",),
    }

    def validate(self):
        missing = [name for name in self.REQUIRED.get(self.command, ()) if getattr(self, name) is None]
        if missing:
            raise click.UsageError(f"{self.command} needs {', '.join('--' + n for n in missing)}")
        if self.format not in FORMATS:
            raise click.UsageError(f"unknown format {self.format!r}")
        return self

    def field_ctx(self, m):
        return VerificationService.field(m, self.modulus, self.alpha)

    def m_values(self):
        return [self.m] if self.m is not None else list(DEFAULT_M_RANGE)

    def sweep_range(self):
        values = self.m_values()
        return f"m={values[0]}" if len(values) == 1 else f"m={values[0]}..{values[-1]}"


def handle_errors(fn):
    """Translate package errors into their documented exit codes."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except OvalCodesError as exc:
            click.echo(f"error: {exc}", err=True)
            raise click.exceptions.Exit(exc.exit_code)
    return wrapper


def _int_literal(value):
    """Integers in any Python literal base: 11, 0xb, 0b1011."""
    try:
        return int(value, 0)
    except ValueError:
        raise click.BadParameter(f"{value!r} is not an integer literal")


def family_options(fn):
    fn = click.option("--beta", type=(_int_literal, _int_literal), default=None,
                      help="Adelaide unit-circle element as c0 c1 (c0 + c1*t).")(fn)
    fn = click.option("--alpha", type=_int_literal, default=None, help="Primitive element override.")(fn)
    fn = click.option("--modulus", type=_int_literal, default=None, help="Irreducible modulus override, e.g. 0b1011.")(fn)
    fn = click.option("--e", "e", type=int, default=None, help="Adelaide exponent.")(fn)
    fn = click.option("--a", "a", type=int, default=None, help="Subiaco parameter (field element encoding).")(fn)
    fn = click.option("--k", "k", type=int, default=None, help="Exponent of the monomial probe family.")(fn)
    fn = click.option("--h", "h", type=int, default=None, help="Translation exponent 2^h.")(fn)
    return fn


def _params(h, k, a, e, beta=None):
    pairs = (("h", h), ("k", k), ("a", a), ("e", e), ("beta", beta))
    return {key: value for key, value in pairs if value is not None}


def _emit_json(obj):
    click.echo(json.dumps(obj, indent=2))


@click.group()
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING ... (default OVALCODES_LOG_LEVEL or INFO).")
@click.option("--max-budget", type=int, default=None, help="Largest q^k an enumeration may visit.")
@click.pass_context
@handle_errors
def cli(ctx, log_level, max_budget):
    """Near-MDS codes from oval polynomials over GF(2^m)."""
    configure_logging(log_level)
    ctx.ensure_object(dict)
    ctx.obj["budget"] = max_budget or enumeration_budget()
    ctx.obj["workers"] = worker_count()


# ------------------------------------------------------------------
# opoly
# ------------------------------------------------------------------

@cli.group()
def opoly():
    """Oval polynomial catalog and criteria."""


@opoly.command("list")
@click.option("--m", "m", type=int, default=None)
@click.option("--modulus", type=_int_literal, default=None)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="pretty")
@handle_errors
def cmd_opoly_list(m, modulus, fmt):
    """Print every family instance applicable at m."""
    run = RunConfig("opoly list", m=m, modulus=modulus, format=fmt).validate()
    rows = VerificationService.list_catalog(m, run.field_ctx(m))
    if fmt == "json":
        _emit_json(rows)
        return
    click.echo(f"{'family':<12} {'params':<22} {'GF(2)':<6} polynomial")
    for row in rows:
        params = ", ".join(f"{k}={v}" for k, v in row["params"].items()) or "-"
        flag = "yes" if row["gf2_coefficients"] else "no"
        click.echo(f"{row['family']:<12} {params:<22} {flag:<6} {row['polynomial']}")


@opoly.command("verify")
@click.option("--family", required=True)
@click.option("--m", "m", type=int, default=None, help="Field degree; omitted runs m = 3..8.")
@family_options
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="pretty")
@handle_errors
def cmd_opoly_verify(family, m, h, k, a, e, beta, modulus, alpha, fmt):
    """Run each oval criterion and report PASS/FAIL with timing."""
    run = RunConfig("opoly verify", m=m, family=family, params=_params(h, k, a, e, beta),
                    modulus=modulus, alpha=alpha, format=fmt).validate()
    normalize_family(family)
    reports, failed = [], False
    for value in run.m_values():
        try:
            spec, results = VerificationService.verify_opoly(family, value, run.params, run.field_ctx(value))
        except OvalPolyError as exc:
            if run.m is not None:
                raise
            logger.info("[VERIFY] skipping m=%d: %s", value, exc)
            continue
        failed = failed or any(r.passed is False for r in results)
        reports.append((spec, value, results))
    if not reports:
        raise OvalPolyError(f"{family} does not apply at any of {run.sweep_range()}")

    if fmt == "json":
        _emit_json([{"label": s.label, "m": v, "criteria": [r.to_json() for r in rs]} for s, v, rs in reports])
    else:
        for spec, value, results in reports:
            click.echo(f"{spec.label}  m={value}")
            for r in results:
                line = f"  {r.verdict:<4} {r.name:<20} {r.seconds * 1000:8.2f} ms"
                if r.witness:
                    line += f"  witness {r.witness}"
                if r.note:
                    line += f"  ({r.note})"
                click.echo(line)
    if failed:
        raise click.exceptions.Exit(1)


# ------------------------------------------------------------------
# code
# ------------------------------------------------------------------

@cli.group()
def code():
    """Generator matrices and code reports."""


@code.command("build")
@click.option("--construction", type=click.Choice(sorted(CONSTRUCTIONS)), required=True)
@click.option("--family", required=True)
@click.option("--m", "m", type=int, required=True)
@family_options
@click.option("--out", "out", type=click.Path(dir_okay=False, writable=True), required=True)
@handle_errors
def cmd_code_build(construction, family, m, h, k, a, e, beta, modulus, alpha, out):
    """Write the generator matrix of a construction as JSON."""
    run = RunConfig("code build", m=m, family=family, params=_params(h, k, a, e, beta),
                    modulus=modulus, alpha=alpha, output=out).validate()
    G = VerificationService.build(construction, family, m, run.params, run.field_ctx(m))
    with open(out, "w", encoding="utf-8") as handle:
        handle.write(dump_matrix(G))
    click.echo(f"wrote {G.k}x{G.n} matrix {G.label} to {out}")


@code.command("analyze")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="pretty")
@click.pass_context
@handle_errors
def cmd_code_analyze(ctx, path, csv_path, fmt):
    """Weight distribution, dual, and classification of a code file."""
    RunConfig("code analyze", source=path, format=fmt).validate()
    G = load_matrix(path)
    report = VerificationService.analyze(G, ctx.obj["budget"], ctx.obj["workers"])
    if csv_path:
        with open(csv_path, "w", encoding="utf-8") as handle:
            handle.write(report.distribution.to_csv())
    if fmt == "json":
        _emit_json(report.to_json())
        return
    click.echo(report.summary())
    click.echo(f"  q={report.q}  d_dual={report.d_dual}  singleton defect={report.singleton_defect}"
               f"  Griesmer gap={report.griesmer_gap}")
    click.echo(f"  A(z)     = {report.distribution.enumerator()}")
    click.echo(f"  A_dual(z)= {report.dual_distribution.enumerator()}")


# ------------------------------------------------------------------
# verify / probe
# ------------------------------------------------------------------

@cli.group()
def verify():
    """End-to-end theorem checks."""


def _print_theorem(result):
    report = result.report
    click.echo(f"theorem {result.theorem}  {report.label}  {report.summary()}")
    click.echo(f"  formula: {result.formula}")
    click.echo(f"  {'weight':>6} {'expected':>10} {'computed':>10}")
    for weight, expected, computed in result.rows():
        mark = "" if expected == computed else "  <-- differs"
        click.echo(f"  {weight:>6} {expected:>10} {computed:>10}{mark}")
    click.echo(f"  closed form: {'ok' if result.closed_form_ok else 'mismatch'}")
    click.echo(f"  optimality:  {'ok' if result.optimality_ok else 'mismatch'}")
    if result.pairing is not None:
        p = result.pairing
        click.echo(f"  pairing:     {p.paired}/{p.primal_projective} supports paired"
                   f" ({'ok' if p.ok else 'violated'})")
    elif result.pairing_error:
        click.echo(f"  pairing:     {result.pairing_error}")
    click.echo("PASS" if result.passed else "FAIL")


@verify.command("theorem")
@click.argument("theorem_id", type=click.Choice(sorted(THEOREMS)))
@click.option("--family", required=True)
@click.option("--m", "m", type=int, default=None, help="Field degree; omitted runs every admissible m in 3..8.")
@family_options
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="pretty")
@click.pass_context
@handle_errors
def cmd_verify_theorem(ctx, theorem_id, family, m, h, k, a, e, beta, modulus, alpha, fmt):
    """Build the theorem's code and compare it with the closed forms."""
    run = RunConfig("verify theorem", m=m, family=family, params=_params(h, k, a, e, beta),
                    modulus=modulus, alpha=alpha, format=fmt).validate()
    normalize_family(family)
    results = []
    for value in run.m_values():
        field_ctx = run.field_ctx(value)
        try:
            results.append(VerificationService.verify_theorem(
                theorem_id, family, value, run.params, field_ctx,
                ctx.obj["budget"], ctx.obj["workers"]))
        except (HypothesisError, OvalPolyError) as exc:
            if run.m is not None:
                raise
            logger.info("[VERIFY] skipping m=%d: %s", value, exc)
    if not results:
        raise HypothesisError(f"theorem {theorem_id} applies to {family} at none of {run.sweep_range()}")

    if fmt == "json":
        _emit_json([r.to_json() for r in results])
    else:
        for result in results:
            _print_theorem(result)
    if not all(r.passed for r in results):
        raise click.exceptions.Exit(1)


@cli.command("probe")
@click.option("--construction", type=click.Choice(sorted(CONSTRUCTIONS)), required=True)
@click.option("--family", required=True)
@click.option("--m", "m", type=int, required=True)
@family_options
@click.pass_context
@handle_errors
def cmd_probe(ctx, construction, family, m, h, k, a, e, beta, modulus, alpha):
    """Classify a construction without enforcing theorem hypotheses."""
    run = RunConfig("probe", m=m, family=family, params=_params(h, k, a, e, beta),
                    modulus=modulus, alpha=alpha, format="json").validate()
    _emit_json(VerificationService.probe(construction, family, m, run.params, run.field_ctx(m),
                                         ctx.obj["budget"], ctx.obj["workers"]))


@cli.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=5000)
@click.option("--debug", is_flag=True)
@click.pass_context
@handle_errors
def cmd_serve(ctx, host, port, debug):
    """Run the JSON API."""
    app = create_app({"ENUMERATION_BUDGET": ctx.obj["budget"], "WORKERS": ctx.obj["workers"]})
    app.run(host=host, port=port, debug=debug)
