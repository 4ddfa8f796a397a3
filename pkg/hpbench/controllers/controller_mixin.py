from numpy import ndarray


class ControllerMixin(object):
    """
    Interface of controllers that pick a supply temperature from an
    observation of a BuildingEnv.
    """
    name: str = 'controller'

    def reset(self):
        """
        Forget any state carried between steps.
        """
        pass

    def supply_temperature(self, observation: ndarray, env) -> float:
        """
        Return the requested supply temperature, °C.

        :param observation: [t_amb, t_room, t_wall, t_hp_ret, q_gain_kw].
        :param env: The environment being controlled.
        """
        raise NotImplementedError

    def act(self, observation: ndarray, env) -> float:
        """
        Return the normalized action of env requesting supply_temperature.
        """
        return env.config.action_for(
            self.supply_temperature(observation, env)
        )
