from typing import List, Optional


class ParameterError(ValueError):
    """
    A physical or algorithmic parameter is outside its valid range.
    """


class HeatingRegimeError(ValueError):
    """
    The heat pump was asked for a COP outside heating mode.
    """


class WeatherFormatError(ValueError):
    """
    A weather file is malformed.
    """


class InvalidActionError(ValueError):
    """
    An environment received an action it cannot apply.
    """


class EnvironmentStateError(RuntimeError):
    """
    An environment was used out of order (no reset, stepped after done).
    """


class SimulationBlowupError(RuntimeError):
    """
    The building simulation left the plausible temperature band.
    """
    def __init__(self, component: str, value: float,
                 lower: float, upper: float):

        self.component: str = component
        self.value: float = value
        super().__init__(
            f'{component} = {value} °C is outside [{lower}, {upper}] °C'
        )


class TrainingDivergenceError(RuntimeError):
    """
    A network output or loss became non-finite during training.
    """


class ConfigError(ValueError):
    """
    A configuration document failed validation.

    Carries every field-level problem found, not just the first one.
    """
    def __init__(self, messages: List[str], source: Optional[str] = None):

        self.messages: List[str] = list(messages)
        header = 'invalid config' if source is None else f'invalid config {source}'
        super().__init__(header + ':\n' + '\n'.join(
            f'  - {message}' for message in self.messages
        ))
