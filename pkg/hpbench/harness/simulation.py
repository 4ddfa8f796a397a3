import logging
from typing import List

from hpbench.controllers.controller_mixin import ControllerMixin
from hpbench.environment.building_env import BuildingEnv
from hpbench.environment.transition import Transition

logger = logging.getLogger(__name__)


def simulate(controller: ControllerMixin, env: BuildingEnv,
             mode: str = 'eval') -> List[Transition]:
    """
    Run one full episode of env under controller and return its
    transitions.

    :param controller: Any controller exposing act(observation, env).
    :param env: Environment to reset and step.
    :param mode: Reset mode, 'eval' for the fixed evaluation episode.
    """
    controller.reset()
    obs = env.reset(mode)
    transitions = []
    while not env.done:
        transition = env.step(controller.act(obs, env))
        transitions.append(transition)
        obs = transition.obs
    logger.debug('simulated %d steps with %s', len(transitions),
                 controller.name)
    return transitions
