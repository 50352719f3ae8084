"""latcalc command-line front end.

Single operations (parse/eval/cert/sup/...) print line-oriented text; every
command can also emit the structured tab-separated report via --out.  The
``suite`` command runs all property suites against the built-in model set
and is byte-for-byte reproducible for a fixed seed (timing is reported on
stderr only, never in the report body).

Exit status: 0 on PASS or value, 1 on FAIL or unexpected counterexample,
2 on usage/config errors.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

import click

from . import calculus as calc
from . import suites
from .config import (
    ConfigError, model_from_file, parse_box_spec, parse_points_file,
    parse_rational, parse_vector,
)
from .expr import ExprSyntaxError, format_expr, eval_point, max_index, parse
from .growth import (
    DEFAULT_NODE_BUDGET, box_from_bounds, box_sup_bound, dm_norm_lower,
    growth_certificate, ideal_degree_upper,
)
from .homog import h_part, linearize, numeric_h_check
from .ideals import LatticeHom, f_norm, hom_contractivity_check, ia_degree
from .models import LocallyConstantModel, PointwiseModel, TwistedR2, axiom_suite
from .report import EXPECTED_FAIL_PASS, FAIL, PASS, ReportEntry, write_report
from .sampling import SamplingPlan, cube_boundary_points

seed_option = click.option(
    "--seed", type=int, default=0, envvar="LATCALC_SEED", show_default=True,
    help="Base seed (env LATCALC_SEED).",
)
out_option = click.option(
    "--out", type=click.Path(dir_okay=False), default=None,
    help="Write the tab-separated report to this path.",
)


def _fail(message: str, code: int = 2) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _finish(entries: Sequence[ReportEntry], out: Optional[str]) -> None:
    if out:
        write_report(out, entries)
    if any(e.unexpected_failure for e in entries):
        sys.exit(1)


def _load_expr(text: str, arity: Optional[int] = None):
    try:
        return parse(text, arity)
    except ExprSyntaxError as exc:
        _fail(str(exc))


def _load_model(path: str):
    try:
        return model_from_file(path)
    except (ConfigError, OSError) as exc:
        _fail(str(exc))


def _parse_elements(model, text: str):
    """Semicolon-separated list of comma-separated rational elements."""
    try:
        return tuple(model.element(parse_vector(part)) for part in text.split(";"))
    except (ConfigError, ValueError) as exc:
        _fail(str(exc))


@click.group()
@click.version_option(package_name="latcalc")
def main() -> None:
    """Exact lattice-ordered algebra toolkit."""


@main.command(name="parse")
@click.option("--expr", "expr_text", required=True, help="Expression in the DSL.")
@click.option("--arity", type=int, default=None, help="Reject variables above this index.")
@out_option
def parse_cmd(expr_text: str, arity: Optional[int], out: Optional[str]) -> None:
    """Parse an expression and print its canonical rendering."""
    e = _load_expr(expr_text, arity)
    rendered = format_expr(e)
    click.echo(rendered)
    _finish([ReportEntry("parse", rendered)], out)


@main.command(name="eval")
@click.option("--expr", "expr_text", required=True)
@click.option("--point", required=True, help="Comma-separated rationals.")
@out_option
def eval_cmd(expr_text: str, point: str, out: Optional[str]) -> None:
    """Evaluate an expression exactly at a rational point."""
    e = _load_expr(expr_text)
    try:
        t = parse_vector(point)
        value = eval_point(e, t)
    except (ConfigError, ValueError) as exc:
        _fail(str(exc))
    click.echo(str(value))
    _finish([ReportEntry("eval", str(value), witness=point)], out)


@main.command(name="cert")
@click.option("--expr", "expr_text", required=True)
@out_option
def cert_cmd(expr_text: str, out: Optional[str]) -> None:
    """Growth certificate (M, N) with |f| <= M(1 + sum|t_i|)^N."""
    e = _load_expr(expr_text)
    cert = growth_certificate(e)
    click.echo(f"M={cert.M} N={cert.N}")
    _finish([ReportEntry("cert", f"{cert.M};{cert.N}")], out)


@main.command(name="sup")
@click.option("--expr", "expr_text", required=True)
@click.option("--box", "box_text", required=True, help="Semicolon-separated 'lo,hi' pairs.")
@click.option("--tol", default="1/1000", show_default=True, help="Bracket width target.")
@click.option("--node-budget", type=int, default=DEFAULT_NODE_BUDGET, show_default=True)
@out_option
def sup_cmd(expr_text: str, box_text: str, tol: str, node_budget: int, out: Optional[str]) -> None:
    """Certified bracket of sup |f| over a box (branch-and-bound)."""
    e = _load_expr(expr_text)
    try:
        box = box_from_bounds(parse_box_spec(box_text))
        result = box_sup_bound(e, box, parse_rational(tol), node_budget)
    except (ConfigError, ValueError) as exc:
        _fail(str(exc))
    status = "budget-exhausted" if result.budget_exhausted else "ok"
    click.echo(f"lower={result.lower} upper={result.upper} status={status}")
    click.echo(f"witness={','.join(str(c) for c in result.witness)}")
    _finish(
        [ReportEntry("sup", f"{result.lower};{result.upper};{status}",
                     witness=",".join(str(c) for c in result.witness))],
        out,
    )


@main.command(name="dmnorm")
@click.option("--expr", "expr_text", required=True)
@click.option("-m", "--power", type=int, required=True, help="Filtration power m.")
@click.option("--random-points", type=int, default=256, show_default=True)
@seed_option
@out_option
def dmnorm_cmd(expr_text: str, power: int, random_points: int, seed: int, out: Optional[str]) -> None:
    """Certified lower bound for the filtration norm ||f||_{d^m}, plus the
    structural upper bound M(n+1)^N (valid when m >= N)."""
    if power < 0:
        _fail("power must be >= 0")
    e = _load_expr(expr_text)
    arity = max(max_index(e), 1)
    plan = SamplingPlan(random_points=random_points, seed=seed)
    points = list(plan.points(arity)) + list(cube_boundary_points(arity, Fraction(1, 4)))
    lower, witness = dm_norm_lower(e, power, points)
    degree = ideal_degree_upper(e, arity)
    click.echo(f"lower={lower} at t={','.join(str(c) for c in witness)}")
    click.echo(f"structural: |f| <= {degree.constant} * d^{degree.m}")
    _finish(
        [ReportEntry("dmnorm", str(lower),
                     witness=",".join(str(c) for c in witness), seed=seed)],
        out,
    )


@main.command(name="hpart")
@click.option("--expr", "expr_text", required=True)
@out_option
def hpart_cmd(expr_text: str, out: Optional[str]) -> None:
    """Homogeneous part f_h, or a divergence verdict when f(0) != 0."""
    e = _load_expr(expr_text)
    lin = linearize(e)
    phi = h_part(e)
    if phi is None:
        click.echo(f"not in PG^h: f(0) = {lin.c} != 0, f(tx)/t diverges")
        _finish([ReportEntry("hpart", "not-in-PGh", witness=str(lin.c))], out)
        return
    click.echo(format_expr(phi))
    _finish([ReportEntry("hpart", format_expr(phi))], out)


@main.command(name="hcheck")
@click.option("--expr", "expr_text", required=True)
@click.option("--dirs", "dirs_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="File with one comma-separated direction per line.")
@click.option("--tol", default="1/1024", show_default=True)
@click.option("--kmax", type=int, default=12, show_default=True)
@out_option
def hcheck_cmd(expr_text: str, dirs_path: str, tol: str, kmax: int, out: Optional[str]) -> None:
    """Exact ray-limit residuals along t = 2^-k against the homogeneous part."""
    e = _load_expr(expr_text)
    try:
        directions = parse_points_file(dirs_path)
        from .homog import default_t_sequence

        report = numeric_h_check(e, directions, default_t_sequence(kmax), parse_rational(tol))
    except (ConfigError, ValueError) as exc:
        _fail(str(exc))
    for row in report.rows:
        click.echo(f"t={row.t}\tmax-residual={row.max_residual}")
    verdict = PASS if report.passed else FAIL
    click.echo(verdict)
    _finish([ReportEntry("hcheck", verdict, witness=str(report.final_residual))], out)


@main.command(name="fnorm")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--x", "x_text", required=True, help="Comma-separated rationals.")
@click.option("--e", "e_text", required=True, help="Comma-separated rationals (positive).")
@out_option
def fnorm_cmd(model_path: str, x_text: str, e_text: str, out: Optional[str]) -> None:
    """Order-unit norm ||x||_e on a pointwise model, or not-in-ideal."""
    model = _load_model(model_path)
    if not isinstance(model, PointwiseModel):
        _fail("fnorm requires a pointwise-family model")
    x = _parse_elements(model, x_text)[0]
    e = _parse_elements(model, e_text)[0]
    try:
        result = f_norm(x, e, model)
    except ValueError as exc:
        _fail(str(exc))
    if result.in_ideal:
        click.echo(str(result.value))
        _finish([ReportEntry("fnorm", str(result.value))], out)
    else:
        click.echo(f"not-in-ideal at coordinate {result.witness_coordinate}")
        _finish([ReportEntry("fnorm", "not-in-ideal",
                             witness=str(result.witness_coordinate))], out)


@main.command(name="iadeg")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--x", "x_text", required=True)
@click.option("--e", "e_text", required=True)
@click.option("--mmax", type=int, default=8, show_default=True)
@out_option
def iadeg_cmd(model_path: str, x_text: str, e_text: str, mmax: int, out: Optional[str]) -> None:
    """Minimal m with x in I_{e^m} (scan up to mmax)."""
    model = _load_model(model_path)
    if not isinstance(model, PointwiseModel):
        _fail("iadeg requires a pointwise-family model")
    x = _parse_elements(model, x_text)[0]
    e = _parse_elements(model, e_text)[0]
    try:
        result = ia_degree(x, e, model, mmax)
    except ValueError as exc:
        _fail(str(exc))
    if result is None:
        click.echo(f"none: x not in I_(e^m) for any m <= {mmax}")
        _finish([ReportEntry("iadeg", "none")], out)
    else:
        m, norm = result
        click.echo(f"m={m} norm={norm}")
        _finish([ReportEntry("iadeg", f"{m};{norm}")], out)


@main.command(name="contract")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Source model config (pointwise family).")
@click.option("--assign", required=True, help="Comma-separated 1-based source indices, one per target coordinate.")
@click.option("--weights", default=None, help="Optional comma-separated positive weights.")
@click.option("--e", "e_text", required=True)
@click.option("--x", "x_text", required=True, help="Samples, semicolon-separated elements.")
@out_option
def contract_cmd(model_path, assign, weights, e_text, x_text, out) -> None:
    """Check lattice-homomorphism contractivity ||Tx||_Te <= ||x||_e."""
    source = _load_model(model_path)
    if not isinstance(source, PointwiseModel):
        _fail("contract requires a pointwise-family source model")
    try:
        assignment = tuple(int(a) for a in assign.split(","))
        weight_values = tuple(parse_vector(weights)) if weights else None
        target = PointwiseModel(len(assignment))
        hom = LatticeHom(source, target, assignment, weight_values)
        e = _parse_elements(source, e_text)[0]
        xs = _parse_elements(source, x_text)
        report = hom_contractivity_check(hom, e, xs)
    except (ConfigError, ValueError) as exc:
        _fail(str(exc))
    verdict = PASS if report.ok else FAIL
    click.echo(verdict if report.ok else f"{verdict}: {report.detail}")
    _finish([ReportEntry("contract", verdict, witness=report.detail)], out)


@main.command(name="apply")
@click.option("--expr", "expr_text", required=True)
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--x", "x_text", required=True,
              help="Tuple elements, semicolon-separated (one per variable).")
@out_option
def apply_cmd(expr_text: str, model_path: str, x_text: str, out: Optional[str]) -> None:
    """Apply the function calculus: evaluate the expression on model elements."""
    model = _load_model(model_path)
    e = _load_expr(expr_text)
    xs = _parse_elements(model, x_text)
    if max_index(e) > len(xs):
        _fail(f"expression uses x{max_index(e)} but only {len(xs)} elements given")
    try:
        value = calc.apply_calculus(e, calc.CalculusInstance(model, xs))
    except ValueError as exc:
        _fail(str(exc))
    click.echo(model.format_element(value))
    _finish([ReportEntry("apply", model.format_element(value))], out)


@main.command(name="compo")
@click.option("--g", "g_text", required=True, help="Outer expression over m variables.")
@click.option("--f", "f_texts", required=True, multiple=True,
              help="Inner expressions (repeat m times).")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--x", "x_text", required=True)
@out_option
def compo_cmd(g_text, f_texts, model_path, x_text, out) -> None:
    """Check the composition law on a concrete instance."""
    model = _load_model(model_path)
    g = _load_expr(g_text)
    fs = [_load_expr(t) for t in f_texts]
    xs = _parse_elements(model, x_text)
    try:
        report = calc.compo_check(g, fs, calc.CalculusInstance(model, xs))
    except ValueError as exc:
        _fail(str(exc))
    verdict = PASS if report.ok else FAIL
    click.echo(verdict if report.ok else f"{verdict}: {report.detail}")
    _finish([ReportEntry("compo", verdict, witness=report.detail)], out)


@main.command(name="birkhoff")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--x1", "x1_text", default=None)
@click.option("--x2", "x2_text", default=None)
@click.option("--search", type=click.Choice(["grid"]), default=None,
              help="Search the integer grid for a violation instead of checking a pair.")
@click.option("--radius", type=int, default=2, show_default=True)
@out_option
def birkhoff_cmd(model_path, x1_text, x2_text, search, radius, out) -> None:
    """Birkhoff f-algebra identities: check a pair or search for a violation."""
    model = _load_model(model_path)
    if search == "grid":
        witness = calc.birkhoff_grid_search(model, radius)
        if witness is None:
            click.echo("no violation found: identities held on the whole grid")
            _finish([ReportEntry("birkhoff", PASS, witness="grid-search")], out)
            return
        x1, x2 = witness
        detail = calc.birkhoff_check(model, x1, x2).detail
        click.echo(
            f"violation: x1={model.format_element(x1)} x2={model.format_element(x2)} ({detail})"
        )
        _finish([ReportEntry(
            "birkhoff", FAIL,
            witness=f"x1={model.format_element(x1)} x2={model.format_element(x2)}")], out)
        return
    if x1_text is None or x2_text is None:
        _fail("provide --x1 and --x2, or --search grid")
    x1 = _parse_elements(model, x1_text)[0]
    x2 = _parse_elements(model, x2_text)[0]
    report = calc.birkhoff_check(model, x1, x2)
    verdict = PASS if report.ok else FAIL
    click.echo(verdict if report.ok else f"{verdict}: {report.detail}")
    _finish([ReportEntry("birkhoff", verdict, witness=report.detail)], out)


@main.command(name="reconstruct")
@click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--trials", type=int, default=200, show_default=True)
@seed_option
@out_option
def reconstruct_cmd(model_path, trials, seed, out) -> None:
    """Derive order and product from the raw calculus and check the f-algebra
    identities against the native structure."""
    model = _load_model(model_path)
    if not isinstance(model, PointwiseModel):
        _fail("reconstruct requires a pointwise-family model")
    if trials < 1:
        _fail("trials must be >= 1")
    report = calc.reconstruction_suite(model, trials, seed)
    entries = []
    for name, held, witness in report.results:
        verdict = PASS if held else FAIL
        click.echo(f"{name}\t{verdict}" + (f"\t{witness}" if witness else ""))
        entries.append(ReportEntry(f"reconstruct.{name}", verdict, witness=witness, seed=seed))
    _finish(entries, out)


# ---------------------------------------------------------------------------
# Full suite
# ---------------------------------------------------------------------------

# The twisted plane is not an f-algebra: these checks must fail on it.
EXPECTED_FAILURES = frozenset({
    "axioms[twisted-r2].birkhoff_identities",
    "birkhoff-random[twisted-r2]",
    "disjoint-product[twisted-r2]",
})


def _suite_models():
    return [
        ("pointwise-1", PointwiseModel(1)),
        ("pointwise-4", PointwiseModel(4)),
        ("locally-constant-8-3", LocallyConstantModel(8, prefix=3)),
        ("twisted-r2", TwistedR2()),
    ]


def _entry(operation: str, ok: bool, witness: str, seed: int) -> ReportEntry:
    if operation in EXPECTED_FAILURES:
        if ok:
            return ReportEntry(operation, FAIL,
                               witness="expected a counterexample but none found", seed=seed)
        return ReportEntry(operation, EXPECTED_FAIL_PASS, witness=witness, seed=seed)
    return ReportEntry(operation, PASS if ok else FAIL, witness=witness, seed=seed)


def _disjoint_product_suite(model, trials, seed):
    """f-algebra expectation: disjoint positive elements multiply to zero."""
    from .sampling import rng_for

    zero = model.zero()
    for trial in range(trials):
        rng = rng_for(seed, trial)
        x = model.sample(rng)
        x1, x2 = model.pos_part(x), model.pos_part(model.neg(x))
        product = model.mul(x1, x2)
        if not model.equal(product, zero):
            return False, (
                f"trial {trial}: x1={model.format_element(x1)} x2={model.format_element(x2)} "
                f"product={model.format_element(product)}"
            )
    return True, ""


def build_suite_entries(seed: int, trials: int) -> list[ReportEntry]:
    """All property suites against the built-in model set, in a fixed order."""
    entries: list[ReportEntry] = []
    for label, model in _suite_models():
        report = axiom_suite(model, max(trials, 64), seed)
        for result in report.results:
            operation = f"axioms[{label}].{result.name}"
            entries.append(_entry(operation, result.held, result.counterexample or "", seed))
    for label, model in _suite_models()[1:]:
        # A floor on the trial count so the twisted-plane suites always get
        # enough draws to hit their expected counterexamples.
        floored = max(trials, 64)
        ok, witness = suites.birkhoff_random_suite(model, floored, seed)
        entries.append(_entry(f"birkhoff-random[{label}]", ok, witness, seed))
        ok, witness = _disjoint_product_suite(model, floored, seed)
        entries.append(_entry(f"disjoint-product[{label}]", ok, witness, seed))
        ok, witness = suites.disjointness_random_suite(model, trials, seed)
        operation = f"disjointness-mult[{label}]"
        if isinstance(model, TwistedR2):
            # (x3 x1) ^ x2 = 0 can hold or fail on the twisted plane depending
            # on the draw; the structural failure is covered by the entries
            # above, so only f-algebra models are asserted here.
            continue
        entries.append(_entry(operation, ok, witness, seed))

    expression_suites = [
        ("pointwise-oracle", lambda: suites.pointwise_oracle_suite(trials, seed)),
        ("compo-law", lambda: suites.compo_suite(trials, seed)),
        ("growth-certificates", lambda: suites.growth_cert_suite(
            max(trials // 10, 10), seed, points_per_expr=20)),
        ("homog-residuals", lambda: suites.homog_residual_suite(
            max(trials // 10, 10), seed)),
        ("lattice-linear-hpart", lambda: suites.lattice_linear_h_suite(trials, seed)),
        ("product-hpart", lambda: suites.product_h_suite(max(trials // 5, 10), seed)),
        ("ideal-norms", lambda: suites.ideal_norm_suite(trials, seed)),
        ("contractivity", lambda: suites.contractivity_suite(trials, seed)),
        ("filtration", lambda: suites.filtration_suite(max(trials // 5, 10), seed)),
        ("semantic-well-definedness", lambda: suites.semantic_well_definedness_suite(
            max(trials // 10, 10), seed)),
    ]
    for operation, runner in expression_suites:
        ok, witness = runner()
        entries.append(_entry(operation, ok, witness, seed))

    reconstruction = calc.reconstruction_suite(PointwiseModel(4), trials, seed)
    for name, held, witness in reconstruction.results:
        entries.append(_entry(f"reconstruct[pointwise-4].{name}", held, witness, seed))
    return entries


@main.command(name="suite")
@click.option("--trials", type=int, default=100, show_default=True)
@seed_option
@out_option
def suite_cmd(trials: int, seed: int, out: Optional[str]) -> None:
    """Run every property suite against the built-in model set."""
    if trials < 1:
        _fail("trials must be >= 1")
    start = time.monotonic()
    entries = build_suite_entries(seed, trials)
    elapsed = time.monotonic() - start
    for entry in entries:
        click.echo(entry.line())
    counts = {}
    for entry in entries:
        counts[entry.verdict] = counts.get(entry.verdict, 0) + 1
    summary = " ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    click.echo(f"summary: {summary}")
    click.echo(f"elapsed: {elapsed:.2f}s", err=True)
    _finish(entries, out)


if __name__ == "__main__":
    main()
