"""
Haystack Command Line Entry Point

Subcommands:
    sweep      run an experiment grid from a config file, write the result CSV
    train      train one network, save its weights and optionally its history
    transfer   two-phase local-to-global weight-transfer experiment
    fit        log-log slope of a loss column against d or n_total
    sparsity   pooled |W1| map of a weight snapshot (CSV or PGM)
    bounds     evaluate the closed-form bound expressions
    residuals  residual second-moment summary of a local network

Usage:
    haystack sweep --config grid.toml --workers 4
    haystack transfer --d 20 --n 1000 --epochs 1000 --out transfer.csv
    haystack fit --csv sweep.csv --x dim --y test_mse_orig
    haystack sparsity --weights gn_d20.hswt --pool 10 --out map.pgm

Errors are reported as one '(error) PREFIX message' line on stderr with
exit status 1.
"""

import argparse
import logging
import sys

from haystack import __version__
from haystack.analysis.bounds import (
    UP_TO_CONSTANT, BoundInputs, evaluate_all, gamma_rate, lambda_threshold, local_error_estimate,
    required_width, sample_complexity,
)
from haystack.analysis.residuals import residual_correlation, residual_summary
from haystack.analysis.scaling import Aggregate, XAxis, fit_scaling
from haystack.analysis.sparsity import sparsity_map
from haystack.config import Config, load_config
from haystack.core.constants import (
    DEFAULT_ALPHA, DEFAULT_BARRON, DEFAULT_EPOCHS, DEFAULT_GAP_RATIO, DEFAULT_LR,
    DEFAULT_POOL, TRANSFER_DECAY,
)
from haystack.core.rng import Rng, derive_seed, STREAM_PROBE
from haystack.dataset.generate import Split, generate
from haystack.dataset.targets import TargetKind
from haystack.harness.experiment import ExperimentSpec
from haystack.harness.sweep import run_sweep
from haystack.harness.transfer import transfer_experiment
from haystack.network.embed import embed
from haystack.network.params import ArchKind, Architecture
from haystack.persistence.images import write_map
from haystack.persistence.records import (
    read_records, write_dataset, write_history, write_trajectories,
)
from haystack.persistence.weights import load_params, save_params
from haystack.training.regularizers import Regularizer
from haystack.training.trainer import BatchPolicy, TrainConfig, evaluate, train
from haystack.exceptions import HaystackError, ParameterError
from haystack.utils import LOG_LEVELS, VERBOSE, configure_logging, format_float

logger = logging.getLogger(__name__)

DEFAULT_PROBES = 100000


def _print_pairs(pairs, out):
    for key, value in pairs:
        if isinstance(value, float):
            value = format_float(value)
        print(f'{key}={value}', file=out)


def _batch_policy(args):
    if args.batch == 'fixed':
        return BatchPolicy.fixed(args.batch_value) if args.batch_value else BatchPolicy.fixed()
    return BatchPolicy.ratio(args.batch_value) if args.batch_value else BatchPolicy.ratio()


def _train_config(args, decay):
    return TrainConfig(
        epochs=args.epochs,
        batch_policy=_batch_policy(args),
        regularizer=Regularizer.parse(args.reg, args.lam),
        lr=args.lr,
        decay=decay,
        seed=args.seed,
        record_history=True,
        record_path_norm=args.record_path_norm,
    )


# ============================================================================
# Command handlers
# ============================================================================

def cmd_sweep(args, out):
    config = load_config(args.config) if args.config else Config()
    overrides = {
        'archs': args.archs, 'target': args.target, 'd_list': args.d_list,
        'n_total_list': args.n_list, 'seeds_per_cell': args.seeds,
        'epochs': args.epochs, 'alpha': args.alpha, 'workers': args.workers,
        'output': args.out,
    }
    for key, value in overrides.items():
        if value is not None:
            config.set(key, value)
    if args.loglevel is None:
        configure_logging(config.get('loglevel'))
    for key, value in sorted(config.get_all().items()):
        logger.log(VERBOSE, '[Config] %s = %r', key, value)

    spec = ExperimentSpec.from_config(config)
    records = run_sweep(spec)
    print(f'wrote {len(records)} records to {spec.output}', file=out)
    return 0


def cmd_train(args, out):
    arch = Architecture(ArchKind.parse(args.arch), args.d, args.alpha)
    target = TargetKind.parse(args.target)
    dataset = generate(args.d, args.n, target, derive_seed(args.data_seed, args.d, args.n))
    if args.export_data:
        write_dataset(args.export_data, dataset)

    config = _train_config(args, args.decay)
    result = train(dataset, arch, config)

    if args.weights:
        save_params(result.best_params, args.weights)
    if args.history:
        write_history(args.history, result)

    pairs = [('arch', arch.kind.value), ('d', arch.d), ('n_total', args.n), ('seed', args.seed),
             ('best_epoch', result.best_epoch)]
    for split in Split:
        scaled, original = evaluate(result.best_params, dataset, split)
        pairs.append((f'{split.value}_mse_scaled', scaled))
        pairs.append((f'{split.value}_mse_orig', original))
    pairs.append(('path_norm', result.final_path_norm))
    _print_pairs(pairs, out)
    return 0


def cmd_transfer(args, out):
    config = _train_config(args, args.decay)
    result = transfer_experiment(args.d, args.n, config, alpha=args.alpha,
                                 target=TargetKind.parse(args.target), data_seed=args.data_seed)
    if args.out:
        write_trajectories(args.out, result.trajectories())
    pairs = [(f'{name}_test_mse_orig', value) for name, value in result.test_mse_orig.items()]
    pairs.append(('handoff_gap', result.handoff_gap))
    _print_pairs(pairs, out)
    return 0


def _record_filter(args):
    arch = ArchKind.parse(args.arch).value if args.arch else None
    reg = args.reg

    def where(record):
        if arch is not None and record.arch != arch:
            return False
        if reg is not None and record.reg != reg:
            return False
        return True
    return where


def cmd_fit(args, out):
    where = _record_filter(args)
    min_gap = args.gap_ratio if args.filter == 'gap' else None
    aggregate = Aggregate(args.aggregate)
    fit = fit_scaling(read_records(args.csv), XAxis(args.x), args.y, where=where,
                      min_gap_ratio=min_gap, aggregate=aggregate)

    _print_pairs([('slope', fit.slope), ('intercept', fit.intercept),
                  ('aggregate', fit.aggregate.value), ('points', len(fit.points))], out)
    for p in fit.points:
        print(f'x={format_float(p.x)} count={p.count} geometric={format_float(p.geometric_mean)} '
              f'arithmetic={format_float(p.arithmetic_mean)} gap_ratio={format_float(p.gap_ratio)}',
              file=out)

    if args.gamma_against:
        if XAxis(args.x) is not XAxis.DIMENSION:
            raise ParameterError('--gamma-against needs the primary fit to use --x dim')
        samples = fit_scaling(read_records(args.gamma_against), XAxis.SAMPLES, args.y, where=where,
                              min_gap_ratio=args.gap_ratio, aggregate=aggregate)
        beta2 = -samples.slope
        _print_pairs([('beta1', fit.slope), ('beta2', beta2),
                      ('gamma', gamma_rate(fit.slope, beta2))], out)
    return 0


def cmd_sparsity(args, out):
    params = load_params(args.weights)
    if params.arch.kind is not ArchKind.GLOBAL:
        params = embed(params)
    smap = sparsity_map(params['w1'], args.pool)
    if args.out:
        write_map(args.out, smap)
        print(f'wrote {smap.shape[0]}x{smap.shape[1]} map to {args.out}', file=out)
    else:
        for row in smap:
            print(','.join(format_float(v) for v in row), file=out)
    return 0


def cmd_bounds(args, out):
    m = args.m if args.m is not None else float(args.d * DEFAULT_ALPHA)
    lam = args.lam if args.lam is not None else lambda_threshold(args.d, args.n)
    inputs = BoundInputs(path_norm=args.path_norm, barron=args.barron, d=args.d, n=args.n,
                         m=m, lam=lam, delta=args.delta)
    print(f'# values {UP_TO_CONSTANT}', file=out)
    pairs = list(evaluate_all(inputs).items())
    if args.eps is not None:
        pairs.append(('sample_complexity', sample_complexity(args.d, args.eps)))
        pairs.append(('required_width', required_width(args.d, args.eps)))
    if args.beta1 is not None and args.beta2 is not None:
        pairs.append(('gamma', gamma_rate(args.beta1, args.beta2)))
    _print_pairs(pairs, out)
    return 0


def cmd_residuals(args, out):
    params = load_params(args.weights)
    rng = Rng(derive_seed(args.seed, STREAM_PROBE))
    C = residual_correlation(params, args.probes, rng, TargetKind.parse(args.target))
    summary = residual_summary(C)
    pairs = list(summary.items())
    pairs.append(('local_error_estimate', local_error_estimate(summary['mean_diagonal'], params.arch.d)))
    _print_pairs(pairs, out)
    return 0


COMMANDS = {
    'sweep': cmd_sweep,
    'train': cmd_train,
    'transfer': cmd_transfer,
    'fit': cmd_fit,
    'sparsity': cmd_sparsity,
    'bounds': cmd_bounds,
    'residuals': cmd_residuals,
}


# ============================================================================
# Argument parsing
# ============================================================================

def _add_training_args(p, epochs=DEFAULT_EPOCHS, decay=0.0):
    p.add_argument('--alpha', type=int, default=DEFAULT_ALPHA, help='channels per coordinate')
    p.add_argument('--epochs', type=int, default=epochs)
    p.add_argument('--lr', type=float, default=DEFAULT_LR)
    p.add_argument('--decay', type=float, default=decay, help='inverse-time learning-rate decay')
    p.add_argument('--reg', choices=('none', 'l1', 'l2', 'path'), default='none')
    p.add_argument('--lambda', dest='lam', type=float, default=None,
                   help='penalty constant (tuned default per regularizer)')
    p.add_argument('--batch', choices=('ratio', 'fixed'), default='ratio')
    p.add_argument('--batch-value', type=int, default=None,
                   help='divisor for ratio batches, size for fixed batches')
    p.add_argument('--seed', type=int, default=0, help='optimizer seed')
    p.add_argument('--data-seed', type=int, default=1234)
    p.add_argument('--target', default='square', choices=[t.value for t in TargetKind])
    p.add_argument('--record-path-norm', action='store_true')


def build_parser():
    parser = argparse.ArgumentParser(prog='haystack', description='Sample-complexity experiments '
                                     'for global, locally connected and local ReLU networks.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--loglevel', choices=tuple(LOG_LEVELS), default=None)
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('sweep', help='run an experiment grid')
    p.add_argument('--config', help='flat TOML config file')
    p.add_argument('--archs', help='comma list of global, lcn, local')
    p.add_argument('--target', choices=[t.value for t in TargetKind])
    p.add_argument('--d-list', help="'4,8,16' or '4:60:4'")
    p.add_argument('--n-list', help='sample counts, same forms as --d-list')
    p.add_argument('--seeds', type=int, help='seeds per cell')
    p.add_argument('--epochs', type=int)
    p.add_argument('--alpha', type=int)
    p.add_argument('--workers', type=int)
    p.add_argument('--out', help='result CSV')

    p = sub.add_parser('train', help='train one network')
    p.add_argument('--arch', default='global', help='global, lcn or local')
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--n', type=int, required=True, help='n_total before splitting')
    _add_training_args(p)
    p.add_argument('--weights', help='write best params to this snapshot')
    p.add_argument('--history', help='write the per-epoch history CSV')
    p.add_argument('--export-data', help='write the generated dataset CSV')

    p = sub.add_parser('transfer', help='local-to-global weight transfer')
    p.add_argument('--d', type=int, default=20)
    p.add_argument('--n', type=int, default=1000)
    _add_training_args(p, decay=TRANSFER_DECAY)
    p.add_argument('--out', help='trajectory CSV (series column)')

    p = sub.add_parser('fit', help='log-log slope fit over a result CSV')
    p.add_argument('--csv', required=True)
    p.add_argument('--x', choices=[a.value for a in XAxis], default='dim')
    p.add_argument('--y', default='test_mse_orig', help='loss or path_norm column')
    p.add_argument('--filter', choices=('none', 'gap'), default='none',
                   help='gap: keep x values with a visible generalization gap')
    p.add_argument('--gap-ratio', type=float, default=DEFAULT_GAP_RATIO,
                   help='minimum test/train ratio for --filter gap')
    p.add_argument('--aggregate', choices=[a.value for a in Aggregate], default='geometric')
    p.add_argument('--arch', help='keep only this architecture')
    p.add_argument('--reg', help='keep only this regularizer tag')
    p.add_argument('--gamma-against', metavar='CSV',
                   help='sample-count sweep; prints gamma = beta1 / beta2')

    p = sub.add_parser('sparsity', help='pooled |W1| map of a snapshot')
    p.add_argument('--weights', required=True)
    p.add_argument('--pool', type=int, default=DEFAULT_POOL)
    p.add_argument('--out', help='.csv or .pgm (stdout CSV when omitted)')

    p = sub.add_parser('bounds', help='evaluate bound expressions')
    p.add_argument('--path-norm', type=float, default=0.0)
    p.add_argument('--barron', type=float, default=DEFAULT_BARRON)
    p.add_argument('--d', type=int, default=16)
    p.add_argument('--n', type=int, default=100000)
    p.add_argument('--m', type=float, help='width (inf allowed; default d * alpha)')
    p.add_argument('--lam', type=float, help='penalty constant (default: the regime threshold)')
    p.add_argument('--delta', type=float, default=0.1)
    p.add_argument('--eps', type=float, help='target error for sample complexity and width')
    p.add_argument('--beta1', type=float)
    p.add_argument('--beta2', type=float)

    p = sub.add_parser('residuals', help='residual second moments of a local network')
    p.add_argument('--weights', required=True)
    p.add_argument('--probes', type=int, default=DEFAULT_PROBES)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--target', default='square', choices=[t.value for t in TargetKind])

    return parser


def main(argv=None, out=None):
    """
    Run the CLI.

    Args:
        argv: list[str] - Arguments (default: sys.argv[1:])
        out: file - Report stream (default: stdout)

    Returns:
        int: Exit status
    """
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    configure_logging(args.loglevel or 'notice')

    try:
        return COMMANDS[args.command](args, out)
    except HaystackError as e:
        print(e.to_line(), file=sys.stderr)
    except ValueError as e:
        print(f'(error) ERR {e}', file=sys.stderr)
    except OSError as e:
        print(f'(error) ERR {e.filename or ""}: {e.strerror}', file=sys.stderr)
    return 1


if __name__ == '__main__':
    sys.exit(main())
