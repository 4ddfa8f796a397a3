from typing import List, Optional, Sequence, Tuple

from numpy import concatenate, maximum, ndarray, sqrt, zeros_like
from numpy.random import Generator, default_rng

from hpbench.exceptions import ParameterError

# inputs of each layer and the ReLU masks of the hidden layers
MlpCache = Tuple[List[ndarray], List[ndarray]]


class Mlp(object):
    """
    Feed-forward network with ReLU hidden layers and a linear output layer.

    Parameters and their gradient buffers are kept as parallel lists
    [W0, b0, W1, b1, ...] with W of shape (inputs, outputs). backward
    accumulates into the gradient buffers until zero_grad is called.
    """
    def __init__(self, sizes: Sequence[int], rng: Optional[Generator] = None):
        """
        Create a new Mlp with weights and biases drawn uniformly from
        ±1/sqrt(fan_in).

        :param sizes: Layer widths [inputs, hidden..., outputs].
        :param rng: Generator for the initial parameters.
        """
        if len(sizes) < 2 or any(s < 1 for s in sizes):
            raise ParameterError('an Mlp needs at least 2 positive layer sizes')
        rng = rng if rng is not None else default_rng()
        self._sizes: Tuple[int, ...] = tuple(int(s) for s in sizes)
        self._params: List[ndarray] = []
        for fan_in, fan_out in zip(self._sizes[:-1], self._sizes[1:]):
            bound = 1 / sqrt(fan_in)
            self._params.append(rng.uniform(-bound, bound, (fan_in, fan_out)))
            self._params.append(rng.uniform(-bound, bound, fan_out))
        self._grads: List[ndarray] = [zeros_like(p) for p in self._params]

    @property
    def sizes(self) -> Tuple[int, ...]:
        return self._sizes

    @property
    def params(self) -> List[ndarray]:
        return self._params

    @property
    def grads(self) -> List[ndarray]:
        return self._grads

    @property
    def num_layers(self) -> int:
        return len(self._sizes) - 1

    def zero_grad(self):

        for grad in self._grads:
            grad.fill(0.0)

    def forward(self, x: ndarray) -> Tuple[ndarray, MlpCache]:
        """
        Return the output for a batch of inputs and the cache backward needs.

        :param x: Inputs of shape (batch, sizes[0]).
        """
        inputs = []
        masks = []
        a = x
        for layer in range(self.num_layers):
            w, b = self._params[2 * layer], self._params[2 * layer + 1]
            inputs.append(a)
            z = a @ w + b
            if layer < self.num_layers - 1:
                mask = z > 0
                masks.append(mask)
                a = z * mask
            else:
                a = z
        return a, (inputs, masks)

    def predict(self, x: ndarray) -> ndarray:

        a = x
        for layer in range(self.num_layers):
            a = a @ self._params[2 * layer] + self._params[2 * layer + 1]
            if layer < self.num_layers - 1:
                a = maximum(a, 0.0)
        return a

    def backward(self, cache: MlpCache, d_out: ndarray,
                 accumulate: bool = True) -> ndarray:
        """
        Back-propagate the gradient of a scalar loss w.r.t. the outputs.

        :param cache: Cache returned by the forward pass.
        :param d_out: dLoss/dOutput of shape (batch, sizes[-1]).
        :param accumulate: Add the parameter gradients to the buffers; when
                           False only the input gradient is computed.
        :return: dLoss/dInput of shape (batch, sizes[0]).
        """
        inputs, masks = cache
        d_z = d_out
        for layer in reversed(range(self.num_layers)):
            w = self._params[2 * layer]
            if accumulate:
                self._grads[2 * layer] += inputs[layer].T @ d_z
                self._grads[2 * layer + 1] += d_z.sum(axis=0)
            d_a = d_z @ w.T
            if layer > 0:
                d_z = d_a * masks[layer - 1]
            else:
                return d_a

    def get_flat(self) -> ndarray:
        """
        Return all parameters concatenated into one vector.
        """
        return concatenate([p.ravel() for p in self._params])

    def set_flat(self, flat: ndarray):

        start = 0
        for p in self._params:
            p[...] = flat[start: start + p.size].reshape(p.shape)
            start += p.size
        if start != len(flat):
            raise ParameterError('flat vector does not match the parameters')

    def copy(self) -> 'Mlp':

        clone = Mlp.__new__(Mlp)
        clone._sizes = self._sizes
        clone._params = [p.copy() for p in self._params]
        clone._grads = [zeros_like(p) for p in self._params]
        return clone

    def polyak_update(self, source: 'Mlp', tau: float):
        """
        Move parameters towards source: p ← (1 − τ)·p + τ·p_source.
        """
        for p, q in zip(self._params, source.params):
            p *= 1 - tau
            p += tau * q

    def __str__(self):

        return f'Mlp({" → ".join(str(s) for s in self._sizes)})'

    def __repr__(self):

        return str(self)
