"""
Scenario-matrix runner.

An experiment directory has the layout

    runs.csv        one row of KPIs per run
    summary.csv     mean and std over seeds, one row per controller
    runs/<building>/noise_<sigma>/<controller>/seed_<seed>/
        run.json    what was run
        kpis.json   KPIs of the final evaluation episode
        episode.csv log of the final evaluation episode
        metrics.csv evaluation KPIs during training (learned controllers)
        checkpoint.npz, checkpoint.json  trained agent (learned controllers)
"""
import json
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import asdict, replace
from pathlib import Path
from typing import Dict, Iterable, Optional, Union

from pandas import DataFrame
from tqdm import tqdm

from hpbench.configs.experiment_config import ExperimentConfig, RunSpec
from hpbench.controllers.mpc import MpcController
from hpbench.crl.training import train
from hpbench.disturbances.disturbance_series import DisturbanceSeries
from hpbench.environment.episode_log import log_episode
from hpbench.environment.vector_env import spawn_generators
from hpbench.harness.kpis import compute_kpis
from hpbench.harness.simulation import simulate

logger = logging.getLogger(__name__)

SUMMARY_METRICS = ['energy_kwh', 'avg_dev_k', 'max_dev_k']
RUN_COLUMNS = [
    'building', 'noise', 'controller', 'label', 'seed', 'energy_kwh',
    'avg_dev_k', 'max_dev_k', 'violation_steps', 'pass_comfort',
    'max_underheat_k', 'avg_underheat_k', 'run_dir'
]
RULE_LABELS = {'heating_curve': 'Heating curve', 'mpc': 'MPC'}


def controller_label(config: ExperimentConfig, controller: str) -> str:

    if controller in RULE_LABELS:
        return RULE_LABELS[controller]
    return config.trainer_config(controller, 0).label


def execute_run(config: ExperimentConfig, run_spec: RunSpec,
                weather: DisturbanceSeries,
                out_dir: Union[str, Path]) -> Dict[str, object]:
    """
    Run one cell of the scenario matrix and write its artifacts.

    :param config: The experiment.
    :param run_spec: Building, noise, controller and seed of the run.
    :param weather: Weather shared by every run of the experiment.
    :param out_dir: Experiment output directory.
    :return: The run's row of runs.csv.
    """
    run_dir = Path(out_dir) / run_spec.relative_dir
    run_dir.mkdir(parents=True, exist_ok=True)
    building = config.buildings[run_spec.building]
    env_config = config.env_config(run_spec.noise, run_spec.seed)
    train_rng, eval_rng = spawn_generators(run_spec.seed, 2)
    eval_env = building.make_env(weather, env_config, eval_rng)
    run_info = {
        'experiment': config.name,
        'building': run_spec.building,
        'noise': run_spec.noise,
        'controller': run_spec.controller,
        'label': controller_label(config, run_spec.controller),
        'seed': run_spec.seed,
        'environment': asdict(env_config),
    }
    if run_spec.controller == 'heating_curve':
        transitions = simulate(config.heating_curve, eval_env)
        run_info['heating_curve'] = asdict(config.heating_curve)
    elif run_spec.controller == 'mpc':
        controller = MpcController(
            config.mpc, building.params, building.heat_pump,
            env_config.dt, env_config.substep
        )
        transitions = simulate(controller, eval_env)
        run_info['mpc'] = asdict(config.mpc)
    else:
        trainer_config = config.trainer_config(run_spec.controller,
                                               run_spec.seed)
        penalty = trainer_config.penalty \
            if trainer_config.algorithm == 'sac' else None
        train_env = building.make_env(weather, env_config, train_rng, penalty)
        run_info['training'] = dict(
            asdict(trainer_config), episodes=config.episodes
        )
        result = train(
            trainer_config, train_env, config.episodes, eval_env=eval_env,
            out_dir=run_dir, disable_progress=True
        )
        transitions = result.final_transitions
    log_episode(transitions, run_dir / 'episode.csv')
    report = compute_kpis(transitions, env_config.t_ref, env_config.dt)
    with open(run_dir / 'kpis.json', 'w') as f:
        json.dump(asdict(report), f, indent=2)
    with open(run_dir / 'run.json', 'w') as f:
        json.dump(run_info, f, indent=2)
    logger.info('%s %s noise=%g seed=%d: %s', run_spec.building,
                run_info['label'], run_spec.noise, run_spec.seed, report)
    row = {key: run_info[key] for key in
           ('building', 'noise', 'controller', 'label', 'seed')}
    row.update(asdict(report))
    row['run_dir'] = str(run_spec.relative_dir)
    return row


def summarize(runs: DataFrame) -> DataFrame:
    """
    Aggregate runs over seeds.

    One row per controller label; for every scenario and metric a mean and
    a std column named '<building>/noise=<sigma>/<metric>_<mean|std>'. The
    std is the population std over seeds (0 for a single seed).

    :param runs: Frame with the columns of runs.csv.
    """
    keys = ['label', 'building', 'noise']
    grouped = runs.groupby(keys, sort=False)[SUMMARY_METRICS]
    means = grouped.mean()
    stds = grouped.std(ddof=0)
    columns = []
    rows: Dict[str, Dict[str, float]] = {}
    for (label, building, noise), mean_row in means.iterrows():
        std_row = stds.loc[(label, building, noise)]
        for metric in SUMMARY_METRICS:
            for stat, value in (('mean', mean_row[metric]),
                                ('std', std_row[metric])):
                column = f'{building}/noise={noise:g}/{metric}_{stat}'
                if column not in columns:
                    columns.append(column)
                rows.setdefault(label, {})[column] = float(value)
    summary = DataFrame.from_dict(rows, orient='index').reindex(
        columns=columns
    )
    summary.index.name = 'controller'
    return summary


def _override(config: ExperimentConfig,
              seeds: Optional[Iterable[int]],
              noise: Optional[float],
              workers: Optional[int]) -> ExperimentConfig:

    if seeds is not None:
        config = replace(config, seeds=tuple(int(s) for s in seeds))
    if noise is not None:
        config = replace(config, scenarios=tuple(
            replace(scenario, noise=(float(noise),))
            for scenario in config.scenarios
        ))
    if workers is not None:
        config = replace(config, workers=int(workers))
    return config


def run_experiment(config: Union[ExperimentConfig, str, Path],
                   out_dir: Union[str, Path],
                   seeds: Optional[Iterable[int]] = None,
                   noise: Optional[float] = None,
                   workers: Optional[int] = None,
                   disable_progress: bool = False) -> Path:
    """
    Execute every run of an experiment and write runs.csv and summary.csv.

    Runs are independent and each writes only below its own directory, so
    with more than one worker they execute in separate processes.

    :param config: Experiment, or the path of its JSON config.
    :param out_dir: Output directory, created if missing.
    :param seeds: Replace the config's seeds.
    :param noise: Run every scenario at this noise level only.
    :param workers: Replace the config's worker count.
    :param disable_progress: Hide the progress bar.
    :return: The output directory.
    """
    if not isinstance(config, ExperimentConfig):
        config = ExperimentConfig.from_json(config)
    config = _override(config, seeds, noise, workers)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    weather = config.weather.load()
    run_specs = config.runs()
    logger.info('experiment %s: %d runs on %d worker(s)',
                config.name, len(run_specs), config.workers)
    rows = [None] * len(run_specs)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            futures = {
                executor.submit(execute_run, config, run_spec, weather,
                                out_dir): i
                for i, run_spec in enumerate(run_specs)
            }
            for future in tqdm(as_completed(futures), total=len(futures),
                               disable=disable_progress):
                rows[futures[future]] = future.result()
    else:
        for i, run_spec in enumerate(tqdm(run_specs,
                                          disable=disable_progress)):
            rows[i] = execute_run(config, run_spec, weather, out_dir)
    runs = DataFrame(rows, columns=RUN_COLUMNS)
    runs.to_csv(out_dir / 'runs.csv', index=False, float_format='%.17g')
    summarize(runs).to_csv(out_dir / 'summary.csv')
    logger.info('wrote %s and %s', out_dir / 'runs.csv',
                out_dir / 'summary.csv')
    return out_dir
