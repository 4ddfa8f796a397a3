from dataclasses import dataclass
from typing import Mapping, Any

from hpbench.exceptions import ParameterError
from hpbench.utils import all_positive, num_format

RHO_WATER = 998.0  # kg/m³
CP_WATER = 4186.0  # J/(kg·K)

VARIANTS = ('two_state', 'three_state')


@dataclass(frozen=True)
class BuildingParams(object):
    """
    Coefficients and capacities of the single-zone RC building model.

    Heat-transfer coefficients are in W/K, capacities in J/K.
    """
    h_ve_tr: float
    c_bldg_specific: float
    a_floor: float
    h_room: float
    cap_bldg: float
    cap_water: float
    h_rad_con: float
    mdot_hp: float
    cp_water: float = CP_WATER
    wall_split: float = 0.5
    h_wall: float = 2000.0
    gain_wall_fraction: float = 0.0
    variant: str = 'two_state'

    def __post_init__(self):

        if not all_positive(
            self.h_ve_tr, self.c_bldg_specific, self.a_floor, self.h_room,
            self.cap_bldg, self.cap_water, self.h_rad_con, self.mdot_hp,
            self.cp_water, self.h_wall
        ):
            raise ParameterError(
                'capacities, heat-transfer coefficients and geometry '
                'must be strictly positive'
            )
        if abs(self.cap_bldg - self.c_bldg_specific * self.a_floor) > \
                1e-9 * self.cap_bldg:
            raise ParameterError('cap_bldg must equal c_bldg_specific·a_floor')
        if not 0 < self.wall_split < 1:
            raise ParameterError('wall_split must lie in (0, 1)')
        if not 0 <= self.gain_wall_fraction <= 1:
            raise ParameterError('gain_wall_fraction must lie in [0, 1]')
        if self.variant not in VARIANTS:
            raise ParameterError(f'variant must be one of {VARIANTS}')

    @property
    def is_three_state(self) -> bool:
        return self.variant == 'three_state'

    @property
    def cap_zone(self) -> float:
        """
        Capacity of the zone node in the three-state model.
        """
        return (1 - self.wall_split) * self.cap_bldg

    @property
    def cap_wall(self) -> float:
        """
        Capacity of the wall node in the three-state model.
        """
        return self.wall_split * self.cap_bldg

    @property
    def mdot_cp(self) -> float:
        """
        Heat-capacity flow of the heating loop, W/K.
        """
        return self.mdot_hp * self.cp_water

    @property
    def volume(self) -> float:
        """
        Conditioned air volume, m³.
        """
        return self.a_floor * self.h_room

    def __str__(self):

        return (
            f'BuildingParams({self.variant}, '
            f'H_ve,tr={num_format(self.h_ve_tr, 1)} W/K, '
            f'C_bldg={self.cap_bldg:.3g} J/K, '
            f'C_water={self.cap_water:.3g} J/K, '
            f'H_rad,con={num_format(self.h_rad_con, 1)} W/K)'
        )


def derive_params(raw: Mapping[str, Any]) -> BuildingParams:
    """
    Derive the full parameter set from the input parameters of a building.

    :param raw: Mapping with h_ve_tr, c_bldg_specific, a_floor, h_room,
                water_volume, h_rad_con and mdot_hp, plus the optional
                cp_water, wall_split, h_wall, gain_wall_fraction and variant.
    """
    required = ('h_ve_tr', 'c_bldg_specific', 'a_floor', 'h_room',
                'water_volume', 'h_rad_con', 'mdot_hp')
    missing = [key for key in required if key not in raw.keys()]
    if missing:
        raise ParameterError(f'missing building parameters: {missing}')
    values = {key: float(raw[key]) for key in required}
    non_positive = [key for key, value in values.items()
                    if not all_positive(value)]
    if non_positive:
        raise ParameterError(
            f'building parameters must be positive: {non_positive}'
        )
    optional = {
        key: raw[key]
        for key in ('cp_water', 'wall_split', 'h_wall',
                    'gain_wall_fraction', 'variant')
        if key in raw.keys()
    }
    return BuildingParams(
        h_ve_tr=values['h_ve_tr'],
        c_bldg_specific=values['c_bldg_specific'],
        a_floor=values['a_floor'],
        h_room=values['h_room'],
        cap_bldg=values['c_bldg_specific'] * values['a_floor'],
        cap_water=values['water_volume'] * RHO_WATER * CP_WATER,
        h_rad_con=values['h_rad_con'],
        mdot_hp=values['mdot_hp'],
        **optional
    )
