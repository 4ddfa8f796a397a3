from numpy import array, ndarray

# temperatures (x − 20)/20, gains in kW /5
OBS_OFFSET = array([20.0, 20.0, 20.0, 20.0, 0.0])
OBS_SCALE = array([20.0, 20.0, 20.0, 20.0, 5.0])


def normalize_observation(obs: ndarray) -> ndarray:
    """
    Scale raw observations, single or batched, to roughly unit range.
    """
    return (obs - OBS_OFFSET) / OBS_SCALE
