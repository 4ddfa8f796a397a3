import json
import logging
from pathlib import Path
from typing import Dict, Optional, Union

from mpl_format.axes import AxesFormatter
from mpl_format.figures import FigureFormatter
from numpy import ndarray
from pandas import DataFrame, concat, read_csv
from seaborn import lineplot, scatterplot

from hpbench.harness.experiment import RUN_COLUMNS, summarize

logger = logging.getLogger(__name__)

PARETO_COLUMNS = [
    'label', 'building', 'noise', 'seed', 'episode', 'env_steps',
    'energy_kwh', 'max_dev_k', 'avg_dev_k', 'non_dominated'
]
CURVE_METRICS = ['energy_kwh', 'avg_dev_k', 'max_dev_k']
METRIC_TEXT = {
    'energy_kwh': 'electrical energy (kWh)',
    'avg_dev_k': 'average deviation (K)',
    'max_dev_k': 'maximum deviation (K)',
}
REFERENCE_LABELS = ('MPC', 'Heating curve')


def _run_dirs(out_dir: Path):

    return sorted(path.parent for path in out_dir.glob('runs/**/run.json'))


def collect_runs(out_dir: Union[str, Path]) -> DataFrame:
    """
    Rebuild the runs table of an experiment from its run directories.
    """
    out_dir = Path(out_dir)
    rows = []
    for run_dir in _run_dirs(out_dir):
        with open(run_dir / 'run.json') as f:
            row = json.load(f)
        with open(run_dir / 'kpis.json') as f:
            row.update(json.load(f))
        row['run_dir'] = str(run_dir.relative_to(out_dir))
        rows.append(row)
    if not rows:
        raise FileNotFoundError(f'no run directories below {out_dir}')
    return DataFrame(rows).reindex(columns=RUN_COLUMNS)


def non_dominated(energy: ndarray, deviation: ndarray) -> ndarray:
    """
    Flag the points no other point beats in both energy and deviation.
    """
    e = energy[:, None]
    d = deviation[:, None]
    dominates = (
        (energy[None, :] <= e) & (deviation[None, :] <= d) &
        ((energy[None, :] < e) | (deviation[None, :] < d))
    )
    return ~dominates.any(axis=1)


def pareto_series(out_dir: Union[str, Path]) -> DataFrame:
    """
    Collect every evaluation of every learned run: energy against maximum
    deviation with the training step it was taken at.

    non_dominated is computed within each building and noise level.
    """
    out_dir = Path(out_dir)
    frames = []
    for run_dir in _run_dirs(out_dir):
        if not (run_dir / 'metrics.csv').is_file():
            continue
        with open(run_dir / 'run.json') as f:
            info = json.load(f)
        metrics = read_csv(run_dir / 'metrics.csv')
        for key in ('label', 'building', 'noise', 'seed'):
            metrics[key] = info[key]
        frames.append(metrics)
    if not frames:
        return DataFrame(columns=PARETO_COLUMNS)
    pareto = concat(frames, ignore_index=True)
    pareto['non_dominated'] = False
    for _, group in pareto.groupby(['building', 'noise']):
        flags = non_dominated(
            group['energy_kwh'].to_numpy(), group['max_dev_k'].to_numpy()
        )
        pareto.loc[group.index, 'non_dominated'] = flags
    return pareto[PARETO_COLUMNS]


def learning_curves(pareto: DataFrame) -> DataFrame:
    """
    Mean and std over seeds of the evaluation KPIs at each episode.
    """
    keys = ['label', 'building', 'noise', 'episode']
    if len(pareto) == 0:
        return DataFrame(columns=keys + ['env_steps'] + [
            f'{metric}_{stat}'
            for metric in CURVE_METRICS for stat in ('mean', 'std')
        ])
    grouped = pareto.groupby(keys, sort=False)
    curves = grouped[['env_steps']].mean()
    for metric in CURVE_METRICS:
        curves[f'{metric}_mean'] = grouped[metric].mean()
        curves[f'{metric}_std'] = grouped[metric].std(ddof=0)
    return curves.reset_index()


def plot_pareto(pareto: DataFrame, references: Optional[DataFrame] = None,
                axf: Optional[AxesFormatter] = None) -> AxesFormatter:
    """
    Scatter evaluation energy against maximum deviation, coloured by
    training step, with non-dominated points ringed and rule-based
    references drawn as stars.

    :param pareto: Output of pareto_series for one building and noise.
    :param references: Rows of the runs table for the references.
    :param axf: Optional AxesFormatter instance.
    """
    axf = axf or AxesFormatter()
    scatterplot(data=pareto, x='max_dev_k', y='energy_kwh',
                hue='env_steps', style='label', ax=axf.axes)
    front = pareto.loc[pareto['non_dominated']]
    axf.axes.scatter(front['max_dev_k'], front['energy_kwh'], s=120,
                     facecolors='none', edgecolors='k', label='non-dominated')
    if references is not None:
        for i, (label, rows) in enumerate(references.groupby('label')):
            axf.axes.scatter(rows['max_dev_k'], rows['energy_kwh'],
                             marker='*', s=250, color=f'C{i + 3}',
                             edgecolors='k', label=label)
    axf.axes.legend()
    axf.set_text(title='evaluation energy vs maximum deviation',
                 x_label=METRIC_TEXT['max_dev_k'],
                 y_label=METRIC_TEXT['energy_kwh'])
    return axf


def plot_curves(curves: DataFrame, metric: str,
                axf: Optional[AxesFormatter] = None) -> AxesFormatter:
    """
    Plot the mean of a KPI over training steps per controller with a ±1 std
    band.
    """
    axf = axf or AxesFormatter()
    lineplot(data=curves, x='env_steps', y=f'{metric}_mean', hue='label',
             ax=axf.axes)
    for i, (_, rows) in enumerate(curves.groupby('label', sort=False)):
        mean = rows[f'{metric}_mean']
        std = rows[f'{metric}_std']
        axf.axes.fill_between(rows['env_steps'], mean - std, mean + std,
                              color=f'C{i}', alpha=0.2)
    axf.set_text(x_label='environment steps', y_label=METRIC_TEXT[metric])
    return axf


def _scenario_figures(out_dir: Path, pareto: DataFrame, curves: DataFrame,
                      runs: DataFrame) -> Dict[str, Path]:

    written = {}
    for (building, noise), scenario in pareto.groupby(['building', 'noise']):
        stem = f'{building}_noise_{noise:g}'
        references = runs.loc[
            (runs['building'] == building) & (runs['noise'] == noise) &
            runs['label'].isin(REFERENCE_LABELS)
        ]
        axf = plot_pareto(scenario, references)
        path = out_dir / f'pareto_{stem}.png'
        axf.axes.figure.savefig(path, dpi=120, bbox_inches='tight')
        axf.axes.figure.clf()
        written[f'pareto_{stem}'] = path
        scenario_curves = curves.loc[
            (curves['building'] == building) & (curves['noise'] == noise)
        ]
        ff = FigureFormatter(n_rows=1, n_cols=len(CURVE_METRICS))
        for axf, metric in zip(ff.axes.flat, CURVE_METRICS):
            plot_curves(scenario_curves, metric, axf)
        path = out_dir / f'curves_{stem}.png'
        ff.figure.savefig(path, dpi=120, bbox_inches='tight')
        ff.figure.clf()
        written[f'curves_{stem}'] = path
    return written


def write_report(out_dir: Union[str, Path],
                 figures: bool = True) -> Dict[str, Path]:
    """
    Summarize the run directories of an experiment.

    Writes summary.csv (one row per controller), pareto.csv (evaluation
    energy and maximum deviation with training step), curves.csv (mean and
    std over seeds per evaluation) and, if figures is set, a Pareto and a
    curves PNG per scenario.

    :param out_dir: Experiment output directory.
    :param figures: Render the PNG figures.
    :return: Paths of the written files by name.
    """
    out_dir = Path(out_dir)
    runs = collect_runs(out_dir)
    pareto = pareto_series(out_dir)
    curves = learning_curves(pareto)
    written = {
        'summary': out_dir / 'summary.csv',
        'pareto': out_dir / 'pareto.csv',
        'curves': out_dir / 'curves.csv',
    }
    summarize(runs).to_csv(written['summary'])
    pareto.to_csv(written['pareto'], index=False)
    curves.to_csv(written['curves'], index=False)
    if figures and len(pareto) > 0:
        written.update(_scenario_figures(out_dir, pareto, curves, runs))
    logger.info('wrote report of %d runs to %s', len(runs), out_dir)
    return written
