#!/usr/bin/env python

"""Build, check and simulate Poisson-Lie sigma models.

The model is a Lie bialgebra: structure constants c and a cocommutator f,
given either as a JSON config (--config) or as a built-in catalog entry
(--model).  From it we build the Drinfel'd double and, in the product-of-
exponentials chart, the Poisson-Lie bivector Pi on the group.

Commands:
  verify     Check every algebraic identity of the construction at seeded
             sample points; write verify.json.
  construct  Tabulate Pi, the coordinate bivector P and the frame e at
             sample points, grid points or given points; write
             construct.csv.
  simulate   Solve the equations of motion on a sequence of lattices and
             measure how the residuals converge; write simulate.json and
             fields_<nx>.csv.
  catalog    List, show or export the built-in models.

Exit status is 0 if every check passed, 1 if some check failed, and 2 if
the input could not be understood.
"""
import argparse
import itertools
import sys

import numpy as np

from . import bialgebra
from . import catalog
from . import checks
from . import config
from . import geometry
from . import lattice
from . import lie
from . import report
from . import util


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2

# Lower bounds on the observed convergence orders.  Pure-gauge flatness is
# measured near fourth order and the cross residual near second order.
FLATNESS_ORDER = 1.8
INTEGRATION_ORDER = 0.9

CHECKPOINT_TOLERANCE = 1e-10


def _check(name, value, tolerance, witness=()):
    return checks.DefectReport(name, float(value), float(tolerance),
                               bool(value <= tolerance), witness)


def _build_geometry(model_config, result):
    """The DoubleGeometry, or None after recording why there is none."""
    tols = model_config.tolerances
    try:
        c = config.structure_constants(model_config)
        f = config.cocommutator(model_config)
    except util.Error as e:
        result.add_failure('structure_constants', e)
        return None
    result.add_checks([checks.defect_report(
        'base_jacobi_input', lie.jacobiator(c),
        tols.tol * util.scale(c.coeffs) ** 2)])
    try:
        double = bialgebra.build_double(c, f, tols)
    except bialgebra.DoubleJacobiFailure as e:
        result.add_checks([checks.defect_report(
            'cocycle', bialgebra.cocycle_defect(c, f),
            tols.tol * util.scale(c.coeffs, f.coeffs) ** 2)])
        result.add_failure('double_jacobi', e)
        return None
    return geometry.DoubleGeometry(double, tols)


def _coboundary_data(model_config, geom, result):
    """CoboundaryData if the bialgebra is coboundary, else None."""
    tols = model_config.tolerances
    c = geom.algebra.coeffs
    f = geom.double.cocommutator.coeffs
    r = config.r_matrix(model_config)
    if r is not None:
        defect = bialgebra.coboundary_cocommutator(c, r).coeffs - f
        result.add_checks([checks.defect_report(
            'r_matrix_reproduces_cocommutator',
            lie.Defect(*util.max_defect(defect)),
            tols.tol * util.scale(c, f, r) ** 2)])
    solved = bialgebra.solve_r_matrix(c, f, tols)
    if isinstance(solved, bialgebra.NoSolution):
        result.notes.append("not coboundary (relative residual %s)"
                            % util.format_float(solved.residual))
        return None
    result.notes.append("coboundary; the classical Yang-Baxter equation "
                        "for r is not checked")
    return solved


def cmd_verify(model_config, checkpoints=(), output_dir='.', jobs=1,
               verbose=False):
    """Run the whole battery; returns the Report."""
    def log(msg):
        if verbose:
            report.emit(msg)

    seed = model_config.sampling.seed
    result = report.Report('verify', config.to_dict(model_config), seed)
    log("===== Building the double for %s =====" % model_config.name)
    geom = _build_geometry(model_config, result)
    if geom is not None:
        coboundary = _coboundary_data(model_config, geom, result)
        log("===== Checking at %s points =====" % model_config.sampling.points)
        result.add_checks(checks.run_battery(
            geom, seed=seed, points=model_config.sampling.points,
            derivative_points=min(20, model_config.sampling.points),
            coboundary=coboundary, jobs=jobs, verbose=verbose))
        for checkpoint in checkpoints:
            try:
                value = catalog.evaluate_checkpoint(geom, checkpoint)
            except util.Error as e:
                result.add_failure('checkpoint_%s' % checkpoint.name, e)
                continue
            result.add_checks([_check(
                'checkpoint_%s' % checkpoint.name,
                abs(value - checkpoint.value),
                CHECKPOINT_TOLERANCE * util.scale(checkpoint.value),
                {'point': list(checkpoint.coords),
                 'index': list(checkpoint.index),
                 'expected': checkpoint.value, 'actual': value})])

    reporter = report.Reporter(output_dir, verbose)
    reporter.write_json('verify.json', result.to_dict())
    reporter.handle_report(result)
    return result


def _construct_points(model_config, grid=None, at=None):
    n = model_config.dimension
    box = model_config.tolerances.box
    if at:
        return np.array(at, dtype=float)
    if grid:
        axis = np.linspace(-box, box, grid)
        return np.array(list(itertools.product(axis, repeat=n)))
    return util.sample_box(model_config.sampling.seed,
                           model_config.sampling.points, n, box)


def cmd_construct(model_config, grid=None, at=None, output_dir='.', jobs=1,
                  verbose=False):
    """Tabulate Pi, P and e; returns True if every point was in the chart."""
    n = model_config.dimension
    reporter = report.Reporter(output_dir, verbose)
    result = report.Report('construct', config.to_dict(model_config),
                           model_config.sampling.seed)
    geom = _build_geometry(model_config, result)
    if geom is None:
        reporter.handle_report(result)
        return False
    points = _construct_points(model_config, grid, at)
    for point in points:
        if len(point) != n:
            raise config.ConfigError('--at', "expected %s coordinates, got "
                                     "%s" % (n, len(point)))

    def row(coords):
        try:
            p = geom.point(coords)
            pi = geom.pi_matrix(p)
            frame = geom.frame(p)
        except (geometry.ChartBoundary, lie.ExpOverflow) as e:
            return e
        bivector = frame.f.dot(pi).dot(frame.f.T)
        upper = np.triu_indices(n, 1)
        return np.concatenate([coords, pi[upper], bivector[upper],
                               frame.e.ravel()])

    rows = util.batch_map(row, points, jobs, verbose, desc='Tabulating')
    good = []
    for coords, values in zip(points, rows):
        if isinstance(values, util.Error):
            reporter.handle_error(values, "point %s" % coords.tolist())
        else:
            good.append(values)

    pairs = ['%s%s' % (i, j) for i, j in zip(*np.triu_indices(n, 1))]
    header = (['y%s' % k for k in range(n)] +
              ['pi_%s' % p for p in pairs] +
              ['P_%s' % p for p in pairs] +
              ['e_%s%s' % (i, j) for i in range(n) for j in range(n)])
    if good:
        reporter.write_csv('construct.csv', header, good)
    report.emit("construct %s: %s of %s points tabulated"
                % (model_config.name, len(good), len(rows)))
    return len(good) == len(rows)


def refined_sizes(base, refine):
    """base, 2 base - 1, ...: each grid halves the previous spacing."""
    sizes = [base]
    for _ in range(refine):
        sizes.append(2 * sizes[-1] - 1)
    return sizes


def cmd_simulate(model_config, output_dir='.', jobs=1, verbose=False):
    """The convergence study, plus the exact lattice identities."""
    def log(msg):
        if verbose:
            report.emit(msg)

    seed = model_config.sampling.seed
    spec = model_config.lattice
    result = report.Report('simulate', config.to_dict(model_config), seed)
    reporter = report.Reporter(output_dir, verbose)
    geom = _build_geometry(model_config, result)
    if geom is None:
        reporter.write_json('simulate.json', result.to_dict())
        reporter.handle_report(result)
        return result

    try:
        rows, orders, fields = lattice.convergence_study(
            geom, spec.sizes, spec.x0, spec.gauge_amplitude, seed, jobs,
            verbose, config.representation(model_config))
    except (geometry.ChartBoundary, geometry.LogSolveFailure,
            lie.ExpOverflow) as e:
        result.add_failure('solve', e)
        reporter.write_json('simulate.json', result.to_dict())
        reporter.handle_report(result)
        return result

    result.convergence = {'rows': rows, 'orders': orders}
    finest = fields[spec.sizes[-1]]
    tol = model_config.tolerances.tol
    moved = util.max_defect(finest.X - np.asarray(spec.x0))[0]
    if (moved <= tol * util.scale(finest.X) and
            util.scale(finest.Ax, finest.Ay) - 1.0 > tol):
        result.notes.append(
            "the group field stays at x0 = %s although the dual field is "
            "not zero: Pi vanishes along the solution and the integration "
            "tests nothing" % list(spec.x0))
    if orders['flatness']:
        result.add_checks([
            _check('flatness_order', -min(orders['flatness']),
                   -FLATNESS_ORDER, {'orders': orders['flatness']}),
            _check('integration_order', -min(orders['cross_residual']),
                   -INTEGRATION_ORDER, {'orders': orders['cross_residual']}),
        ])
    else:
        result.notes.append("one lattice size only: no convergence orders")

    log("===== Checking the exact lattice identities =====")
    ws = lattice.Worldsheet(spec.sizes[0])
    X = fields[spec.sizes[0]].X
    zero_x = np.zeros_like(fields[spec.sizes[0]].Ax)
    zero_y = np.zeros_like(fields[spec.sizes[0]].Ay)
    constant = np.broadcast_to(np.asarray(spec.x0), X.shape).copy()
    trivial = lattice.residual_maxima(lattice.eom_residual_invariant(
        geom, ws, constant, zero_x, zero_y, jobs))
    result.add_checks([_check('trivial_fields', max(trivial), 0.0)])

    Ax, Ay = fields[spec.sizes[0]].Ax, fields[spec.sizes[0]].Ay
    before = lattice.eom_residual_intrinsic(geom, ws, X, Ax, Ay, jobs).eq2
    after = lattice.eom_residual_intrinsic(
        geom, ws, X + 0.01 * np.sin(X), Ax, Ay, jobs).eq2
    result.add_checks([_check('curvature_ignores_x',
                              float(np.max(np.abs(before - after))), 0.0)])

    invariant = lattice.eom_residual_invariant(geom, ws, X, Ax, Ay, jobs)
    intrinsic = lattice.eom_residual_intrinsic(geom, ws, X, Ax, Ay, jobs)
    correction = lattice.invariant_correction(geom, X, Ax, Ay, jobs)
    scale = util.scale(Ax, Ay, X)
    result.add_checks([
        _check('invariant_intrinsic_eq1',
               max(util.max_defect(invariant.eq1_x - intrinsic.eq1_x)[0],
                   util.max_defect(invariant.eq1_y - intrinsic.eq1_y)[0]),
               model_config.tolerances.tol * scale),
        _check('invariant_intrinsic_eq2',
               util.max_defect(invariant.eq2 - intrinsic.eq2 -
                               correction)[0],
               model_config.tolerances.tol * scale),
    ])

    components = range(geom.n)
    for nx in spec.sizes:
        ws = lattice.Worldsheet(nx)
        X, Ax, Ay = fields[nx]
        reporter.write_csv(
            'fields_%s.csv' % nx,
            ['i', 'j', 'sigma1', 'sigma2'] + ['X%s' % k for k in components],
            lattice.snapshot_array(ws, X))
        residuals = lattice.eom_residual_invariant(geom, ws, X, Ax, Ay, jobs)
        reporter.write_csv(
            'edges_%s.csv' % nx,
            ['axis', 'i', 'j'] + ['A%s' % k for k in components] +
            ['eq1_%s' % k for k in components],
            lattice.edge_array(Ax, Ay, residuals.eq1_x, residuals.eq1_y))
        reporter.write_csv(
            'plaquettes_%s.csv' % nx,
            ['i', 'j', 'sigma1', 'sigma2'] +
            ['eq2_%s' % k for k in components],
            lattice.plaquette_array(ws, residuals.eq2))
    reporter.write_json('simulate.json', result.to_dict())
    reporter.handle_report(result)
    return result


def cmd_catalog(action, name=None, output_dir=None, beta=None):
    if action == 'list':
        for entry in catalog.entries():
            report.emit("%-14s %s" % (entry.name, entry.doc))
        return
    if name is None:
        raise config.ConfigError('catalog', "'%s' needs an entry name"
                                 % action)
    entry = catalog.get(name, catalog.DEFAULT_BETA if beta is None else beta)
    if action == 'show':
        report.emit(entry.doc)
        report.emit(report.canonical_json(
            {'config': entry.to_config(), 'checkpoints': entry.checkpoints}))
    elif output_dir:
        path = report.Reporter(output_dir).write_json(
            '%s.json' % entry.name, entry.to_config())
        report.emit("Wrote %s" % path)
    else:
        report.emit(report.canonical_json(entry.to_config()))


def _load_model(parsed_args):
    """(ModelConfig, checkpoints) from --config or --model."""
    if parsed_args.config:
        model_config = config.load_config(parsed_args.config)
        checkpoints = ()
    elif parsed_args.model:
        beta = (catalog.DEFAULT_BETA if parsed_args.beta is None
                else parsed_args.beta)
        entry = catalog.get(parsed_args.model, beta)
        model_config = entry.model_config()
        checkpoints = entry.checkpoints
    else:
        raise config.ConfigError('<args>', "give --config or --model")
    sizes = None
    if parsed_args.command == 'simulate' and parsed_args.grid:
        sizes = refined_sizes(parsed_args.grid, parsed_args.refine)
    model_config = config.apply_overrides(
        model_config, tolerance=parsed_args.tolerance, seed=parsed_args.seed,
        points=parsed_args.points, sizes=sizes)
    return model_config, checkpoints


def _parse_point(text):
    try:
        return [float(v) for v in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated numbers, "
                                         "got %r" % text)


def make_parser():
    parser = argparse.ArgumentParser(
        description='Poisson-Lie groups on Drinfel\'d doubles, checked '
                    'numerically, and their sigma models on a lattice.')
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument('--config', metavar='PATH',
                        help='JSON model config (see README)')
    source.add_argument('--model', metavar='NAME',
                        help=('built-in model: one of %s'
                              % ', '.join(catalog.names())))
    common.add_argument('--beta', type=float, default=None,
                        help='beta for --model example_beta (default 1.0)')
    common.add_argument('--tolerance', type=float, default=None,
                        help='generic identity tolerance (default 1e-10)')
    common.add_argument('--seed', type=int, default=None,
                        help='seed for sample points and gauge fields')
    common.add_argument('--points', type=int, default=None,
                        help='number of sample points (default 100)')
    common.add_argument('--output-dir', default='.',
                        help='where to write reports (default: cwd)')
    common.add_argument('--jobs', type=int, default=1,
                        help='threads for per-point work (default 1)')
    common.add_argument('-v', '--verbose', action='store_true',
                        help="Print some information about what we're doing.")

    commands = parser.add_subparsers(dest='command')
    commands.required = True
    commands.add_parser('verify', parents=[common],
                        help='check the construction; write verify.json')
    construct = commands.add_parser(
        'construct', parents=[common],
        help='tabulate Pi, P and e; write construct.csv')
    construct.add_argument('--grid', type=int, default=None,
                           help='tabulate on a regular grid, N per axis')
    construct.add_argument('--at', type=_parse_point, action='append',
                           metavar='Y0,Y1,...',
                           help='tabulate at this point (repeatable)')
    simulate = commands.add_parser(
        'simulate', parents=[common],
        help='lattice convergence study; write simulate.json')
    simulate.add_argument('--grid', type=int, default=None,
                          help='nodes per side of the coarsest lattice')
    simulate.add_argument('--refine', type=int, default=2,
                          help=('number of refinements of --grid '
                                '(default %(default)s)'))
    cat = commands.add_parser('catalog', help='list/show/export models')
    cat.add_argument('action', choices=['list', 'show', 'export'])
    cat.add_argument('name', nargs='?', default=None)
    cat.add_argument('--beta', type=float, default=None)
    cat.add_argument('--output-dir', default=None)
    return parser


def main(argv=None):
    parsed_args = make_parser().parse_args(argv)
    try:
        if parsed_args.command == 'catalog':
            cmd_catalog(parsed_args.action, parsed_args.name,
                        parsed_args.output_dir, parsed_args.beta)
            return EXIT_OK
        model_config, checkpoints = _load_model(parsed_args)
        if parsed_args.command == 'verify':
            result = cmd_verify(model_config, checkpoints,
                                parsed_args.output_dir, parsed_args.jobs,
                                parsed_args.verbose)
            return EXIT_OK if result.passed else EXIT_FAILED
        if parsed_args.command == 'construct':
            ok = cmd_construct(model_config, parsed_args.grid, parsed_args.at,
                               parsed_args.output_dir, parsed_args.jobs,
                               parsed_args.verbose)
            return EXIT_OK if ok else EXIT_FAILED
        result = cmd_simulate(model_config, parsed_args.output_dir,
                              parsed_args.jobs, parsed_args.verbose)
        return EXIT_OK if result.passed else EXIT_FAILED
    except config.ConfigError as e:
        report.emit("ERROR:%s" % e)
        return EXIT_BAD_INPUT


if __name__ == '__main__':
    # Note that pip-installed plsigma calls main() directly, rather than
    # running this file as a script; this is just included for completeness.
    sys.exit(main())
