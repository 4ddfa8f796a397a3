import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from numpy import asarray, clip, full_like, ndarray, where, zeros_like

from hpbench.building.building_params import BuildingParams
from hpbench.custom_types.array_types import (
    FloatOrFloatArray1d, PolyCoefficients
)
from hpbench.exceptions import HeatingRegimeError, ParameterError
from hpbench.utils import clamp, num_format

logger = logging.getLogger(__name__)

KELVIN = 273.15
SOURCES = ('air', 'ground')


@dataclass(frozen=True)
class HeatPumpModel(object):
    """
    Efficiency model of a heat pump.

    The COP is a fixed share eta_wp of the Carnot COP between the supply
    temperature and the source temperature, clamped to [cop_min, cop_max].
    A second-order polynomial in (T_hp,sup, T_source) replaces the Carnot
    expression when poly is given.

    :param eta_wp: Exergetic efficiency, in (0, 1].
    :param cop_min: Lower COP clamp, ≥ 1.
    :param cop_max: Upper COP clamp, > cop_min.
    :param poly: Coefficients c0..c5 of
                 c0 + c1·s + c2·a + c3·s² + c4·s·a + c5·a².
    :param source: 'air' uses the ambient temperature as source, 'ground'
                   uses the constant t_ground.
    :param t_ground: Ground source temperature, °C.
    """
    eta_wp: float = 0.45
    cop_min: float = 1.0
    cop_max: float = 8.0
    poly: Optional[PolyCoefficients] = None
    source: str = 'air'
    t_ground: float = 10.0

    def __post_init__(self):

        if not 0 < self.eta_wp <= 1:
            raise ParameterError('eta_wp must lie in (0, 1]')
        if not 1 <= self.cop_min < self.cop_max:
            raise ParameterError('need 1 ≤ cop_min < cop_max')
        if self.poly is not None:
            if len(self.poly) != 6:
                raise ParameterError('poly needs exactly 6 coefficients')
            object.__setattr__(
                self, 'poly', tuple(float(c) for c in self.poly)
            )
        if self.source not in SOURCES:
            raise ParameterError(f'source must be one of {SOURCES}')

    def source_temperature(self, t_amb: float) -> float:
        """
        Return the temperature of the heat source, °C.
        """
        if self.source == 'ground':
            return self.t_ground
        return t_amb

    def _unclamped(self, t_hp_sup: ndarray,
                   t_source: ndarray) -> Tuple[ndarray, ndarray]:
        """
        Return the unclamped COP and its derivative w.r.t. the supply
        temperature. Requires t_hp_sup > t_source on the Carnot path.
        """
        if self.poly is not None:
            c0, c1, c2, c3, c4, c5 = self.poly
            s, a = t_hp_sup, t_source
            value = c0 + c1 * s + c2 * a + c3 * s * s + c4 * s * a + c5 * a * a
            return value, c1 + 2 * c3 * s + c4 * a
        t_sup_k = t_hp_sup + KELVIN
        t_src_k = t_source + KELVIN
        lift = t_sup_k - t_src_k
        return (
            self.eta_wp * t_sup_k / lift,
            -self.eta_wp * t_src_k / (lift * lift)
        )

    def cop(self, t_hp_sup: float, t_amb: float) -> float:
        """
        Return the clamped COP in heating mode.

        :param t_hp_sup: Supply temperature, °C.
        :param t_amb: Ambient temperature, °C.
        """
        t_source = self.source_temperature(t_amb)
        if not t_hp_sup > t_source:
            raise HeatingRegimeError(
                f'supply {t_hp_sup} °C is not above source {t_source} °C'
            )
        value, _ = self._unclamped(float(t_hp_sup), float(t_source))
        return clamp(value, self.cop_min, self.cop_max)

    def cop_with_derivative(self, t_hp_sup: FloatOrFloatArray1d,
                            t_amb: FloatOrFloatArray1d
                            ) -> Tuple[ndarray, ndarray]:
        """
        Return the clamped COP and dCOP/dT_hp,sup elementwise.

        Where the supply is not above the source temperature the COP takes
        cop_max with zero derivative, the value hp_power uses in that regime.
        """
        s = asarray(t_hp_sup, dtype=float)
        a = asarray(t_amb, dtype=float)
        if self.source == 'ground':
            a = full_like(a, self.t_ground)
        heating = s > a
        s_safe = where(heating, s, a + 1.0)
        value, derivative = self._unclamped(s_safe, a)
        inside = (value > self.cop_min) & (value < self.cop_max)
        value = where(heating, clip(value, self.cop_min, self.cop_max),
                      self.cop_max)
        derivative = where(heating & inside, derivative,
                           zeros_like(derivative))
        return value, derivative

    def hp_power(self, p: BuildingParams, t_hp_sup: float,
                 t_hp_ret: float, t_amb: float) -> Tuple[float, float]:
        """
        Return (q_th, p_el) in W for one operating point.

        The unit is off, drawing no power, when the supply does not exceed
        the return temperature.

        :param p: Building parameters supplying the loop mass flow.
        :param t_hp_sup: Supply temperature, °C.
        :param t_hp_ret: Return temperature, °C.
        :param t_amb: Ambient temperature, °C.
        """
        q_th = max(0.0, p.mdot_cp * (t_hp_sup - t_hp_ret))
        if q_th == 0:
            return 0.0, 0.0
        t_source = self.source_temperature(t_amb)
        if t_hp_sup > t_source:
            cop = self.cop(t_hp_sup, t_amb)
        else:
            logger.warning(
                'heating with supply %.2f °C at or below source %.2f °C, '
                'using cop_max', t_hp_sup, t_source
            )
            cop = self.cop_max
        return q_th, q_th / cop

    def power_gradient(self, p: BuildingParams, t_hp_sup: ndarray,
                       t_hp_ret: ndarray, t_amb: ndarray
                       ) -> Tuple[ndarray, ndarray, ndarray]:
        """
        Return p_el and its partial derivatives w.r.t. the supply and return
        temperatures, elementwise over arrays of operating points.
        """
        s = asarray(t_hp_sup, dtype=float)
        r = asarray(t_hp_ret, dtype=float)
        cop, d_cop = self.cop_with_derivative(s, t_amb)
        on = s > r
        q_th = where(on, p.mdot_cp * (s - r), 0.0)
        p_el = q_th / cop
        dp_ds = where(on, p.mdot_cp / cop - q_th * d_cop / (cop * cop), 0.0)
        dp_dr = where(on, -p.mdot_cp / cop, 0.0)
        return p_el, dp_ds, dp_dr

    def __str__(self):

        if self.poly is not None:
            kind = 'poly'
        else:
            kind = f'η={num_format(self.eta_wp, 3)}'
        return (
            f'HeatPumpModel({kind}, source={self.source}, '
            f'COP∈[{num_format(self.cop_min, 2)}, '
            f'{num_format(self.cop_max, 2)}])'
        )


def cop(model: HeatPumpModel, t_hp_sup: float, t_amb: float) -> float:
    """
    Return the clamped COP of model in heating mode.
    """
    return model.cop(t_hp_sup, t_amb)


def hp_power(model: HeatPumpModel, p: BuildingParams, t_hp_sup: float,
             t_hp_ret: float, t_amb: float) -> Tuple[float, float]:
    """
    Return (q_th, p_el) in W of model at one operating point.
    """
    return model.hp_power(p, t_hp_sup, t_hp_ret, t_amb)
