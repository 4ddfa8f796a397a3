import json
import logging
from dataclasses import asdict
from pathlib import Path
from typing import Union

from numpy import array, load, savez

from hpbench.crl.sac_agent import SacAgent
from hpbench.crl.trainer_config import TrainerConfig

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


def _stem(path: Union[str, Path]) -> Path:

    path = Path(path)
    if path.suffix in ('.npz', '.json'):
        return path.with_suffix('')
    return path


def save_checkpoint(agent: SacAgent, path: Union[str, Path]) -> Path:
    """
    Write the agent to `<path>.npz` (every parameter and optimizer moment)
    and `<path>.json` (config, optimizer step counts and generator state).

    :return: The path of the parameter archive.
    """
    stem = _stem(path)
    arrays = {'format_version': array(FORMAT_VERSION)}
    for name, net in agent.networks().items():
        for i, param in enumerate(net.params):
            arrays[f'{name}__{i}'] = param
    arrays['log_alpha'] = agent.log_alpha
    arrays['beta_raw'] = agent.beta_raw
    steps = {}
    for name, optimizer in agent.optimizers.items():
        for i, moment in enumerate(optimizer.moments):
            arrays[f'adam_{name}__{i}'] = moment
        steps[name] = optimizer.t
    npz_path = stem.with_suffix('.npz')
    savez(npz_path, **arrays)
    sidecar = {
        'format_version': FORMAT_VERSION,
        'config': asdict(agent.config),
        'obs_dim': agent.obs_dim,
        'optimizer_steps': steps,
        'rng_state': agent.rng.bit_generator.state,
    }
    with open(stem.with_suffix('.json'), 'w') as f:
        json.dump(sidecar, f, indent=2)
    logger.info('wrote checkpoint %s', npz_path)
    return npz_path


def load_checkpoint(path: Union[str, Path]) -> SacAgent:
    """
    Rebuild an agent saved by save_checkpoint, ready to resume training or
    to be evaluated.
    """
    stem = _stem(path)
    with open(stem.with_suffix('.json')) as f:
        sidecar = json.load(f)
    if sidecar.get('format_version') != FORMAT_VERSION:
        raise ValueError(
            f'unsupported checkpoint format {sidecar.get("format_version")}'
        )
    raw_config = sidecar['config']
    raw_config['hidden'] = tuple(raw_config['hidden'])
    agent = SacAgent(TrainerConfig(**raw_config), obs_dim=sidecar['obs_dim'])
    with load(stem.with_suffix('.npz')) as arrays:
        if int(arrays['format_version']) != FORMAT_VERSION:
            raise ValueError('checkpoint archive and sidecar versions differ')
        for name, net in agent.networks().items():
            for i, param in enumerate(net.params):
                param[...] = arrays[f'{name}__{i}']
        agent.log_alpha[...] = arrays['log_alpha']
        agent.beta_raw[...] = arrays['beta_raw']
        for name, optimizer in agent.optimizers.items():
            moments = [
                arrays[f'adam_{name}__{i}']
                for i in range(len(optimizer.moments))
            ]
            optimizer.load_moments(moments, sidecar['optimizer_steps'][name])
    agent.rng.bit_generator.state = sidecar['rng_state']
    return agent
