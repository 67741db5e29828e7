"""Command line front end.

Every subcommand prints a deterministic table: identical inputs (and seed,
for `selftest`) give byte-identical output.  CSV is RFC 4180 (CRLF line
ends, minimal quoting); rationals render as p/q; floating point columns use
12 significant digits.  Exit codes: 0 success, 1 for any validation or
feasibility error raised by the engine (printed module-qualified on
stderr), 2 for usage errors.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import cascades, fredholm, grading, morse, orientation, pearls, \
    profiles, selfcheck, spectrum
from .errors import CascadixError
from .model import (
    FibreFlag,
    format_rational,
    load_setup,
    parse_rational,
    validate_setup,
)


def guarded(fn):
    @functools.wraps(fn)
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CascadixError as exc:
            click.echo(f"error: {exc.qualified()}", err=True)
            sys.exit(1)
    return inner


SETUP_OPT = click.option(
    "--setup", "setup_path", required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="setup descriptor JSON")


def _load(setup_path):
    setup = load_setup(setup_path)
    validate_setup(setup)
    return setup


def _vec(v) -> str:
    return "(" + ",".join(str(int(c)) for c in v) + ")"


def _frac_vec(v) -> str:
    return "(" + ",".join(format_rational(c) for c in v) + ")"


def _emit_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _generator_by_name(setup, name):
    parts = name.rsplit("_", 2)
    if len(parts) == 3 and parts[1] in ("check", "hat") and parts[2].isdigit():
        flag = FibreFlag.CHECK if parts[1] == "check" else FibreFlag.HAT
        return grading.orbit_generator(setup, parts[0], flag, int(parts[2]))
    return grading.interior_generator(setup, name)


@click.group()
def main():
    """Exact index and cascade calculus for split symplectic homology."""


# --- validate ----------------------------------------------------------


@main.command()
@SETUP_OPT
@guarded
def validate(setup_path):
    """Check a setup file against all structural invariants."""
    setup = _load(setup_path)
    click.echo("monotone triple OK")
    click.echo(f"name: {setup.name}")
    click.echo(f"n: {setup.n}")
    click.echo(f"tau_X: {format_rational(setup.tau_x)}")
    click.echo(f"K: {format_rational(setup.k_const)}")
    click.echo(f"slope ratio: {format_rational(setup.slope_ratio)}")
    click.echo(f"surface classes: rank {setup.lattice_sigma.rank}")
    click.echo(f"filling classes: rank {setup.lattice_x.rank}")


# --- grade -------------------------------------------------------------


GEN_HEADER = ["name", "kind", "degree", "coset"]


def _generator_rows(setup, k_max, degree):
    rows = []
    for gen in grading.enumerate_generators(setup, k_max, degree):
        rows.append([gen.display_name, gen.kind,
                     format_rational(grading.grade(setup, gen)),
                     format_rational(grading.coset_label(setup, gen))])
    return rows


@main.command()
@SETUP_OPT
@click.option("--kmax", type=int, default=3, show_default=True,
              help="largest orbit multiplicity")
@click.option("--degree", default=None,
              help="keep only generators of this exact degree (e.g. 7/3)")
@click.option("--csv", "as_csv", is_flag=True, help="emit CSV instead of text")
@guarded
def grade(setup_path, kmax, degree, as_csv):
    """List generators with their degrees."""
    setup = _load(setup_path)
    wanted = parse_rational(degree) if degree is not None else None
    rows = _generator_rows(setup, kmax, wanted)
    if as_csv:
        _emit_csv(GEN_HEADER, rows)
        return
    click.echo(f"{'name':<18} {'kind':<9} {'degree':>8} {'coset':>6}")
    for name, kind, deg, coset in rows:
        click.echo(f"{name:<18} {kind:<9} {deg:>8} {coset:>6}")


# --- spectrum ----------------------------------------------------------


@main.command("spectrum")
@click.option("--C", "--c", "c_value", type=float, default=None,
              help="vertical operator parameter C >= 0")
@click.option("--complex-rank", type=int, default=None,
              help="use the complex-linear operator of this rank instead")
@click.option("--window", default="-7,7", show_default=True,
              help="eigenvalue window lo,hi")
@guarded
def spectrum_cmd(c_value, complex_rank, window):
    """Eigenvalues, multiplicities, and windings in a window."""
    try:
        lo, hi = (float(part) for part in window.split(","))
    except ValueError:
        raise click.BadParameter("window must be lo,hi", param_hint="--window")
    if (c_value is None) == (complex_rank is None):
        raise click.UsageError("give exactly one of --C or --complex-rank")
    if complex_rank is not None:
        op = spectrum.ComplexLinear(complex_rank)
    else:
        op = spectrum.VerticalC(c_value)
    click.echo(f"operator: {op.label}")
    click.echo(f"{'eigenvalue':>16} {'mode':>5} {'mult':>5} {'winding':>8}")
    for pt in spectrum.spectrum_window(op, lo, hi):
        click.echo(f"{pt.eigenvalue:>16.12g} {pt.mode:>5} "
                   f"{pt.multiplicity:>5} {pt.winding:>8}")


# --- index -------------------------------------------------------------


@main.command("index")
@click.option("--n", type=int, required=True, help="half-dimension of the filling")
@click.option("--c1", type=int, default=0, show_default=True,
              help="relative Chern number of the horizontal part")
@click.option("--bottom", type=click.Choice(["ham", "reeb"]), default="ham",
              show_default=True, help="negative-end orbit type")
@click.option("--aug", type=int, default=0, show_default=True,
              help="number of interior augmentation punctures")
@guarded
def index_cmd(n, c1, bottom, aug):
    """Fredholm index breakdown of one split cylinder."""
    vertical, horizontal = fredholm.split_cylinder_problems(
        n, c1, bottom=bottom, aug_count=aug)
    for label, prob in (("vertical", vertical), ("horizontal", horizontal)):
        click.echo(f"{label}: rank {prob.bundle_rank}, "
                   f"rel c1 {prob.rel_c1}, "
                   f"index {fredholm.index_morse_bott(prob)}")
        for punc, contrib in fredholm.per_puncture_breakdown(prob):
            where = "interior" if punc.interior else "end"
            click.echo(f"  {punc.sign.value} {where} "
                       f"{punc.operator.label}: {contrib:+d}")
    total = fredholm.split_floer_index(vertical, horizontal)
    interior = sum(1 for p in vertical.punctures if p.interior)
    click.echo(f"interior punctures: {interior}")
    click.echo(f"split index: {total}")


# --- dim ---------------------------------------------------------------


def _pearl_spec(setup, raw):
    classes = tuple(tuple(int(c) for c in a) for a in raw.get("classes", []))
    aug_classes = raw.get("aug_classes")
    if aug_classes is not None:
        aug_classes = tuple(tuple(int(c) for c in b) for b in aug_classes)
    aug_count = int(raw.get("aug_count",
                            len(aug_classes) if aug_classes else 0))
    if raw["kind"] == "pearl_in_sigma":
        variant = pearls.InSigma(setup.sigma_point(raw["lower"]),
                                 setup.sigma_point(raw["upper"]))
    else:
        variant = pearls.WithSphereInX(setup.w_point(raw["interior"]),
                                       setup.sigma_point(raw["upper"]),
                                       tuple(int(c) for c in raw["sphere"]))
    return pearls.PearlChainSpec(variant, classes, aug_count, aug_classes)


def _cascade_shape(setup, raw):
    kind = raw["kind"]
    upper = _generator_by_name(setup, raw["upper"])
    if kind == "cascade_zero":
        return pearls.ZeroCascades(upper, _generator_by_name(setup, raw["lower"]))
    if kind == "cascade_y_to_y":
        return pearls.YtoY(upper, _generator_by_name(setup, raw["lower"]),
                           int(raw["levels"]))
    return pearls.WtoY(upper, _generator_by_name(setup, raw["interior"]),
                       int(raw["levels"]))


@main.command("dim")
@SETUP_OPT
@click.option("--instance", "instance_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON describing one pearl chain or cascade")
@guarded
def dim_cmd(setup_path, instance_path):
    """Expected dimension of one configuration space."""
    setup = _load(setup_path)
    raw = json.loads(Path(instance_path).read_text())
    kind = raw.get("kind")
    if kind in ("pearl_in_sigma", "pearl_with_sphere"):
        value = pearls.pearl_dimension(setup, _pearl_spec(setup, raw))
    elif kind in ("cascade_zero", "cascade_y_to_y", "cascade_w_to_y"):
        value = pearls.cascade_dimension(setup, _cascade_shape(setup, raw))
    else:
        raise CascadixError(f"unknown instance kind {kind!r}")
    click.echo(f"kind: {kind}")
    click.echo(f"dimension: {value}")


# --- enumerate ---------------------------------------------------------


CATALOG_HEADER = [
    "target", "source", "case", "N", "N0", "N1", "aug_count",
    "k_minus", "k_plus", "multiplicities", "classes_a", "sphere_b", "aug",
    "degree_target", "degree_source",
]


def _catalog_row(setup, t):
    return [
        t.target.display_name,
        t.source.display_name,
        str(t.case_label.value),
        str(t.n_levels),
        str(t.n_constant),
        str(t.n_nonconstant),
        str(t.aug_count),
        "" if t.k_minus is None else str(t.k_minus),
        "" if t.k_plus is None else str(t.k_plus),
        ";".join(str(m) for m in t.multiplicities),
        ";".join(_vec(a) for a in t.classes_a),
        "" if t.sphere_b is None else _vec(t.sphere_b),
        ";".join(f"{a.level}:{_vec(a.class_b)}" for a in t.aug),
        format_rational(grading.grade(setup, t.target)),
        format_rational(grading.grade(setup, t.source)),
    ]


@main.command("enumerate")
@SETUP_OPT
@click.option("--target", default=None, help="one target generator by name")
@click.option("--all-targets", "all_targets", is_flag=True,
              help="every generator with winding <= kmax")
@click.option("--kmax", type=int, default=3, show_default=True)
@click.option("--classbound", type=int, default=3, show_default=True,
              help="area bound for sphere classes")
@click.option("--text", "as_text", is_flag=True,
              help="aligned text instead of CSV")
@guarded
def enumerate_cmd(setup_path, target, all_targets, kmax, classbound, as_text):
    """Catalog of feasible cascade types, one row per type."""
    if (target is None) == (not all_targets):
        raise click.UsageError("give exactly one of --target or --all-targets")
    setup = _load(setup_path)
    if all_targets:
        targets = grading.enumerate_generators(setup, kmax)
    else:
        targets = [_generator_by_name(setup, target)]
    rows, warnings = [], []
    for tgt in targets:
        result = cascades.enumerate_contributions(setup, tgt, kmax, classbound)
        rows.extend(_catalog_row(setup, t) for t in result.types)
        warnings.extend(result.warnings)
    for message in dict.fromkeys(warnings):
        click.echo(f"warning: {message}", err=True)
    if as_text:
        click.echo(" ".join(CATALOG_HEADER))
        for row in rows:
            click.echo(" ".join(cell or "-" for cell in row))
        return
    _emit_csv(CATALOG_HEADER, rows)


# --- orient ------------------------------------------------------------


def _space_from(raw) -> orientation.OrientedSpace:
    basis = tuple(tuple(Fraction(str(x)) for x in row)
                  for row in raw.get("basis") or [])
    return orientation.OrientedSpace(int(raw["dim"]), basis,
                                     int(raw.get("sign", 1)))


def _map_from(raw) -> orientation.LinearMapSpec:
    return orientation.LinearMapSpec(
        tuple(tuple(Fraction(str(x)) for x in row) for row in raw))


@main.command("orient")
@click.option("--instance", "instance_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON with spaces, maps, and signs")
@guarded
def orient_cmd(instance_path):
    """Oriented kernel of a fibre sum, or a quotient representative."""
    raw = json.loads(Path(instance_path).read_text())
    kind = raw.get("kind")
    if kind == "fibre_sum":
        frame = orientation.fibre_sum_orientation(
            _space_from(raw["v1"]), _space_from(raw["v2"]),
            _space_from(raw["w"]), _map_from(raw["f1"]), _map_from(raw["f2"]))
        click.echo("kernel of the difference map:")
    elif kind == "quotient":
        sub = orientation.IncludedSubspace(_space_from(raw["sub"]),
                                           _map_from(raw["inclusion"]))
        frame = orientation.quotient_orientation(_space_from(raw["total"]), sub)
        click.echo("complement representative:")
    else:
        raise CascadixError(f"unknown instance kind {kind!r}")
    click.echo(f"dim: {frame.dim}")
    for vec in frame.vectors:
        click.echo(f"basis: {_frac_vec(vec)}")
    click.echo(f"sign: {frame.sign:+d}")


# --- morse -------------------------------------------------------------


@main.command("morse")
@click.option("--data", "data_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Morse complex JSON (plain or lifted)")
@guarded
def morse_cmd(data_path):
    """Boundary matrices, d^2 check, homology table."""
    data = morse.load_morse_data(data_path)
    if isinstance(data, morse.LiftedMorseData):
        click.echo(f"lifted complex over {len(data.base.points)} base points")
        data = data.lifted()
    click.echo(f"points: {len(data.points)}")
    matrices = morse.differential(data)
    for d in sorted(matrices):
        cols = ",".join(p.name for p in data.points_of_degree(d))
        mat = "; ".join(_vec(row) for row in matrices[d]) or "(empty)"
        click.echo(f"boundary degree {d} [{cols}]: {mat}")
    click.echo("d^2 = 0: verified")
    click.echo(f"{'degree':>6} {'betti':>6} {'torsion':>8}")
    for d, betti, torsion in morse.homology(data):
        label = ";".join(str(t) for t in torsion) or "-"
        click.echo(f"{d:>6} {betti:>6} {label:>8}")


# --- report ------------------------------------------------------------


@main.command("report")
@SETUP_OPT
@click.option("--kmax", type=int, default=3, show_default=True)
@click.option("--classbound", type=int, default=3, show_default=True)
@click.option("--profile", "profile_spec", default="quadratic",
              show_default=True, help="Hamiltonian profile for the action table")
@click.option("--levels", type=int, default=5, show_default=True,
              help="orbit multiplicities in the action table")
@guarded
def report_cmd(setup_path, kmax, classbound, profile_spec, levels):
    """One document: generators, actions, cascade catalog, certification."""
    setup = _load(setup_path)
    click.echo(f"# report: {setup.name or Path(setup_path).stem}")
    click.echo("")
    click.echo("## setup")
    click.echo(f"n={setup.n} tau_X={format_rational(setup.tau_x)} "
               f"K={format_rational(setup.k_const)} "
               f"slope={format_rational(setup.slope_ratio)}")
    click.echo("")
    click.echo(f"## generators (kmax={kmax})")
    click.echo(" ".join(GEN_HEADER))
    for row in _generator_rows(setup, kmax, None):
        click.echo(" ".join(row))
    click.echo("")
    click.echo(f"## actions ({profile_spec}, T0={format_rational(setup.t0)})")
    prof = profiles.make_profile(profile_spec)
    admissibility = profiles.check_admissible(prof)
    if not admissibility.ok:
        raise profiles.ProfileParseError(
            f"profile {profile_spec!r} rejected: {admissibility.first_violation}")
    click.echo("k rho action vertical_C")
    for k in range(1, levels + 1):
        level = profiles.orbit_level(prof, k, setup.t0)
        click.echo(f"{k} {level.rho:.12g} {level.action:.12g} "
                   f"{level.vertical_c:.12g}")
    click.echo("")
    click.echo(f"## cascade catalog (kmax={kmax}, classbound={classbound})")
    certification = cascades.certify_classification(setup, kmax, classbound)
    click.echo(" ".join(CATALOG_HEADER))
    for t in certification.types:
        click.echo(" ".join(cell or "-" for cell in _catalog_row(setup, t)))
    click.echo("")
    click.echo("## certification")
    click.echo(certification.summary())
    for message in certification.warnings:
        click.echo(f"warning: {message}")
    for violation in certification.violations:
        click.echo(f"violation: {violation}")


# --- selftest ----------------------------------------------------------


@main.command("selftest")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--instances", type=int, default=50, show_default=True)
@guarded
def selftest_cmd(seed, instances):
    """Exhaustive crossing identity plus randomized orientation properties."""
    problems = []
    bad_ops = selfcheck.crossing_identity_failures()
    if bad_ops:
        problems.append(f"crossing identity: {len(bad_ops)} operator(s)")
    checks = [
        ("associativity",
         selfcheck.run_associativity_trials(seed, instances)),
        ("basis independence",
         selfcheck.run_basis_independence_trials(seed + 1, instances)),
    ]
    for i, which in enumerate(("v1", "v2", "w")):
        checks.append((f"{which} sign flip",
                       selfcheck.run_flip_trials(seed + 2 + i, instances,
                                                 which)))
    for name, failures in checks:
        if failures:
            problems.append(f"{name}: {len(failures)} failing instance(s)")
    if problems:
        raise CascadixError("; ".join(problems))
    click.echo(f"selftest OK: crossing identity exhaustive, "
               f"{instances} instances per randomized property (seed={seed})")


if __name__ == "__main__":
    main()
