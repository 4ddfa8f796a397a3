from typing import List

from numpy import ndarray, sqrt, zeros_like


class Adam(object):
    """
    Adaptive-moment gradient descent over a list of parameter arrays,
    updated in place.
    """
    def __init__(self, params: List[ndarray], lr: float = 1e-3,
                 beta_1: float = 0.9, beta_2: float = 0.999,
                 eps: float = 1e-8):

        self._params: List[ndarray] = params
        self._lr: float = lr
        self._beta_1: float = beta_1
        self._beta_2: float = beta_2
        self._eps: float = eps
        self._m: List[ndarray] = [zeros_like(p) for p in params]
        self._v: List[ndarray] = [zeros_like(p) for p in params]
        self._t: int = 0

    @property
    def lr(self) -> float:
        return self._lr

    @property
    def t(self) -> int:
        return self._t

    @property
    def moments(self) -> List[ndarray]:
        """
        First and second moments, [m_0, ..., m_n, v_0, ..., v_n].
        """
        return self._m + self._v

    def load_moments(self, moments: List[ndarray], t: int):

        n = len(self._params)
        for target, source in zip(self._m + self._v, moments):
            target[...] = source
        assert len(moments) == 2 * n
        self._t = int(t)

    def step(self, grads: List[ndarray]):
        """
        Apply one update from the gradients of the parameters.
        """
        self._t += 1
        correction_1 = 1 - self._beta_1 ** self._t
        correction_2 = 1 - self._beta_2 ** self._t
        for p, g, m, v in zip(self._params, grads, self._m, self._v):
            m *= self._beta_1
            m += (1 - self._beta_1) * g
            v *= self._beta_2
            v += (1 - self._beta_2) * g * g
            p -= self._lr * (m / correction_1) / (
                sqrt(v / correction_2) + self._eps
            )
