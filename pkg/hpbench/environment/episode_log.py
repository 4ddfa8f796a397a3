import logging
from pathlib import Path
from typing import Sequence, Union

from pandas import DataFrame, read_csv

from hpbench.environment.transition import Transition

logger = logging.getLogger(__name__)

LOG_COLUMNS = ['step', 't_amb', 't_room', 't_wall', 't_hp_ret', 't_hp_sup',
               'p_el_w', 'cop', 'reward', 'cost']


def episode_frame(transitions: Sequence[Transition]) -> DataFrame:
    """
    Return one row per transition with the columns of an episode log.

    Temperatures are the true state at the end of each step; t_amb is the
    ambient temperature the step acted under.
    """
    rows = []
    for transition in transitions:
        info = transition.info
        state = info['state']
        rows.append({
            'step': int(info['step']),
            't_amb': info['t_amb'],
            't_room': state.t_room,
            't_wall': state.t_wall,
            't_hp_ret': state.t_hp_ret,
            't_hp_sup': info['t_hp_sup'],
            'p_el_w': info['p_el'],
            'cop': info['cop'],
            'reward': transition.reward,
            'cost': transition.cost,
        })
    return DataFrame(rows, columns=LOG_COLUMNS)


def log_episode(transitions: Sequence[Transition],
                path: Union[str, Path]) -> DataFrame:
    """
    Write an episode to CSV with 17 significant digits so every float
    reads back unchanged.

    :param transitions: Steps of the episode in order.
    :param path: Destination file. Its directory must exist.
    """
    frame = episode_frame(transitions)
    frame.to_csv(path, index=False, float_format='%.17g')
    logger.info('wrote %d-step episode log to %s', len(frame), path)
    return frame


def read_episode_log(path: Union[str, Path]) -> DataFrame:
    """
    Read an episode log written by log_episode.
    """
    frame = read_csv(path, float_precision='round_trip')
    missing = [c for c in LOG_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError(f'{path} is not an episode log, missing {missing}')
    return frame[LOG_COLUMNS]
