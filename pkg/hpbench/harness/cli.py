import json
import logging
import sys
from argparse import ArgumentParser, Namespace
from dataclasses import asdict
from pathlib import Path
from typing import List, Optional

from hpbench.configs.building_config import BuildingConfig
from hpbench.controllers.heating_curve import HeatingCurve
from hpbench.controllers.mpc import MpcConfig, MpcController
from hpbench.crl.checkpoint import load_checkpoint
from hpbench.crl.training import PolicyController
from hpbench.disturbances.disturbance_series import DisturbanceSeries
from hpbench.disturbances.weather import load_weather_csv, synth_weather
from hpbench.environment.env_config import EnvConfig
from hpbench.environment.episode_log import log_episode
from hpbench.exceptions import (
    ConfigError, SimulationBlowupError, TrainingDivergenceError
)
from hpbench.harness.experiment import run_experiment
from hpbench.harness.kpis import KpiReport, compute_kpis
from hpbench.harness.simulation import simulate

logger = logging.getLogger('hpbench')

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_DIVERGED = 2
NOISE_LEVELS = (0.0, 0.5)
DEFAULT_DAYS = 7


class _ArgumentParser(ArgumentParser):

    def error(self, message: str):

        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f'{self.prog}: error: {message}\n')


def _add_weather_args(parser: ArgumentParser):

    parser.add_argument('--weather', type=Path, default=None,
                        help='weather CSV (timestamp,t_amb_c,solar_wm2); '
                             'synthetic weather if omitted')
    parser.add_argument('--days', type=int, default=DEFAULT_DAYS,
                        help='days of synthetic weather and of the '
                             'evaluation episode')


def build_parser() -> ArgumentParser:

    parser = _ArgumentParser(
        prog='hpbench',
        description='Simulate, train and evaluate heat-pump controllers.'
    )
    parser.add_argument('--verbose', '-v', action='store_true',
                        help='log at DEBUG level')
    commands = parser.add_subparsers(dest='command', required=True)

    simulate_parser = commands.add_parser(
        'simulate', help='run a rule-based controller on a building'
    )
    simulate_parser.add_argument(
        '--config', required=True,
        help='building config JSON or builtin name (building1, building2)'
    )
    simulate_parser.add_argument(
        '--controller', choices=('heating_curve', 'mpc'),
        default='heating_curve'
    )
    _add_weather_args(simulate_parser)

    train_parser = commands.add_parser(
        'train', help='run the scenario matrix of an experiment config'
    )
    train_parser.add_argument('--config', required=True, type=Path,
                              help='experiment config JSON')
    train_parser.add_argument('--workers', type=int, default=None)

    evaluate_parser = commands.add_parser(
        'evaluate', help='evaluate a trained checkpoint on a building'
    )
    evaluate_parser.add_argument('--checkpoint', required=True, type=Path)
    evaluate_parser.add_argument(
        '--config', required=True,
        help='building config JSON or builtin name'
    )
    _add_weather_args(evaluate_parser)

    report_parser = commands.add_parser(
        'report', help='summarize the run directories of an experiment'
    )
    report_parser.add_argument('--no-figures', action='store_true',
                               help='only write the CSV files')

    for sub in (simulate_parser, train_parser, evaluate_parser):
        sub.add_argument('--seed', type=int, default=None)
        sub.add_argument('--noise', type=float, choices=NOISE_LEVELS,
                         default=None, help='observation noise std, K')
    for sub in (simulate_parser, train_parser, evaluate_parser,
                report_parser):
        sub.add_argument('--out', type=Path, required=True,
                         help='output directory')
    return parser


def _weather(args: Namespace) -> DisturbanceSeries:

    if args.weather is not None:
        return load_weather_csv(args.weather)
    return synth_weather(args.seed or 0, args.days)


def _write_episode(out_dir: Path, transitions, env_config: EnvConfig
                   ) -> KpiReport:

    out_dir.mkdir(parents=True, exist_ok=True)
    log_episode(transitions, out_dir / 'episode.csv')
    report = compute_kpis(transitions, env_config.t_ref, env_config.dt)
    with open(out_dir / 'kpis.json', 'w') as f:
        json.dump(asdict(report), f, indent=2)
    print(report)
    return report


def _episode_config(args: Namespace) -> EnvConfig:

    return EnvConfig(
        noise_sigma=args.noise or 0.0,
        rng_seed=args.seed or 0,
        eval_episode_len=args.days * 96
    )


def _simulate(args: Namespace) -> int:

    building = BuildingConfig.resolve(args.config)
    env_config = _episode_config(args)
    env = building.make_env(_weather(args), env_config)
    if args.controller == 'mpc':
        controller = MpcController(
            MpcConfig(), building.params, building.heat_pump,
            env_config.dt, env_config.substep
        )
    else:
        controller = HeatingCurve()
    _write_episode(args.out, simulate(controller, env), env_config)
    return EXIT_OK


def _train(args: Namespace) -> int:

    seeds = [args.seed] if args.seed is not None else None
    run_experiment(args.config, args.out, seeds=seeds, noise=args.noise,
                   workers=args.workers)
    return EXIT_OK


def _evaluate(args: Namespace) -> int:

    if not args.checkpoint.with_suffix('.json').is_file():
        raise FileNotFoundError(f'checkpoint not found: {args.checkpoint}')
    agent = load_checkpoint(args.checkpoint)
    building = BuildingConfig.resolve(args.config)
    env_config = _episode_config(args)
    env = building.make_env(_weather(args), env_config)
    _write_episode(args.out, simulate(PolicyController(agent), env),
                   env_config)
    return EXIT_OK


def _report(args: Namespace) -> int:

    from matplotlib import use
    use('Agg')
    from hpbench.harness.report import write_report
    for name, path in write_report(args.out,
                                   figures=not args.no_figures).items():
        print(f'{name}: {path}')
    return EXIT_OK


COMMANDS = {
    'simulate': _simulate,
    'train': _train,
    'evaluate': _evaluate,
    'report': _report,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the hpbench command.

    :return: 0 on success, 1 for invalid input or missing files, 2 when a
             simulation or training run diverged.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s'
    )
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, ValueError, FileNotFoundError) as error:
        logger.error('%s', error)
        return EXIT_INVALID
    except (SimulationBlowupError, TrainingDivergenceError) as error:
        logger.error('run diverged: %s', error)
        return EXIT_DIVERGED


if __name__ == '__main__':

    sys.exit(main())
