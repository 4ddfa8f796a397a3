"""
Right-hand sides and time integration of the RC building models.

Two-state model, state (T_room, T_hp,ret):

    C_bldg  · dT_room/dt   = Q_gain + H_rad,con·(T_hp,ret − T_room)
                                    − H_ve,tr·(T_room − T_amb)
    C_water · dT_hp,ret/dt = ṁ·c_p·(T_hp,sup − T_hp,ret)
                                    − H_rad,con·(T_hp,ret − T_room)

Three-state model, state (T_room, T_wall, T_hp,ret), with the wall node in
series between the zone and the ambient:

    C_zone  · dT_room/dt = (1 − f)·Q_gain + H_rad,con·(T_hp,ret − T_room)
                                          − H_wall·(T_room − T_wall)
    C_wall  · dT_wall/dt = f·Q_gain + H_wall·(T_room − T_wall)
                                    − H_ve,tr·(T_wall − T_amb)

where C_zone = (1 − wall_split)·C_bldg, C_wall = wall_split·C_bldg and f is
the share of the gains absorbed by the wall. The return-flow equation is
shared by both variants.
"""
from typing import Tuple

from numba import jit
from numpy import array, ndarray, zeros
from scipy.linalg import eigvals, solve

from hpbench.building.building_params import BuildingParams
from hpbench.building.building_state import BuildingState
from hpbench.building.disturbance_sample import DisturbanceSample
from hpbench.custom_types.array_types import Derivative
from hpbench.exceptions import ParameterError

DT_CONTROL = 900.0
DT_SUBSTEP = 60.0


def _coefficients(p: BuildingParams) -> ndarray:
    """
    Pack the parameters in the order the kernels index them.
    """
    return array([
        p.cap_bldg, p.cap_zone, p.cap_wall, p.cap_water,
        p.h_ve_tr, p.h_rad_con, p.h_wall, p.mdot_cp, p.gain_wall_fraction
    ])


@jit(nopython=True)
def _rhs_kernel(t_room, t_wall, t_hp_ret, t_amb, q_gain, t_hp_sup,
                c, three_state):

    if three_state:
        d_room = (
            (1.0 - c[8]) * q_gain + c[5] * (t_hp_ret - t_room)
            - c[6] * (t_room - t_wall)
        ) / c[1]
        d_wall = (
            c[8] * q_gain + c[6] * (t_room - t_wall)
            - c[4] * (t_wall - t_amb)
        ) / c[2]
    else:
        d_room = (
            q_gain + c[5] * (t_hp_ret - t_room) - c[4] * (t_room - t_amb)
        ) / c[0]
        d_wall = d_room
    d_ret = (
        c[7] * (t_hp_sup - t_hp_ret) - c[5] * (t_hp_ret - t_room)
    ) / c[3]
    return d_room, d_wall, d_ret


@jit(nopython=True)
def _euler_substep(t_room, t_wall, t_hp_ret, t_amb, q_gain, t_hp_sup,
                   c, three_state, h):

    d_room, d_wall, d_ret = _rhs_kernel(
        t_room, t_wall, t_hp_ret, t_amb, q_gain, t_hp_sup, c, three_state
    )
    t_room_next = t_room + h * d_room
    if three_state:
        t_wall_next = t_wall + h * d_wall
    else:
        t_wall_next = t_room_next
    return t_room_next, t_wall_next, t_hp_ret + h * d_ret


@jit(nopython=True)
def _euler_kernel(t_room, t_wall, t_hp_ret, t_amb, q_gain, t_hp_sup,
                  c, three_state, dt, substep):

    num_full = int(dt // substep)
    remainder = dt - num_full * substep
    for _ in range(num_full):
        t_room, t_wall, t_hp_ret = _euler_substep(
            t_room, t_wall, t_hp_ret, t_amb, q_gain, t_hp_sup,
            c, three_state, substep
        )
    if remainder > 1e-9 * substep:
        t_room, t_wall, t_hp_ret = _euler_substep(
            t_room, t_wall, t_hp_ret, t_amb, q_gain, t_hp_sup,
            c, three_state, remainder
        )
    return t_room, t_wall, t_hp_ret


def rhs_two_state(state: BuildingState, dist: DisturbanceSample,
                  t_hp_sup: float, p: BuildingParams) -> Derivative:
    """
    Return (dT_room/dt, dT_hp,ret/dt) of the two-state model in K/s.

    :param state: Current temperatures; t_wall is ignored.
    :param dist: Ambient temperature and gains.
    :param t_hp_sup: Heat-pump supply temperature, °C.
    :param p: Building parameters.
    """
    d_room, _, d_ret = _rhs_kernel(
        float(state.t_room), float(state.t_wall), float(state.t_hp_ret),
        float(dist.t_amb), float(dist.q_gain), float(t_hp_sup),
        _coefficients(p), False
    )
    return d_room, d_ret


def rhs_three_state(state: BuildingState, dist: DisturbanceSample,
                    t_hp_sup: float, p: BuildingParams) -> Derivative:
    """
    Return (dT_room/dt, dT_wall/dt, dT_hp,ret/dt) of the three-state model
    in K/s.

    :param state: Current temperatures.
    :param dist: Ambient temperature and gains.
    :param t_hp_sup: Heat-pump supply temperature, °C.
    :param p: Building parameters; wall_split, h_wall and
              gain_wall_fraction shape the wall node.
    """
    return _rhs_kernel(
        float(state.t_room), float(state.t_wall), float(state.t_hp_ret),
        float(dist.t_amb), float(dist.q_gain), float(t_hp_sup),
        _coefficients(p), True
    )


def rhs(state: BuildingState, dist: DisturbanceSample,
        t_hp_sup: float, p: BuildingParams) -> Derivative:
    """
    Return the derivative of all three nodes for the configured variant.
    """
    return _rhs_kernel(
        float(state.t_room), float(state.t_wall), float(state.t_hp_ret),
        float(dist.t_amb), float(dist.q_gain), float(t_hp_sup),
        _coefficients(p), p.is_three_state
    )


def integrate_step(state: BuildingState, dist: DisturbanceSample,
                   t_hp_sup: float, p: BuildingParams,
                   dt: float = DT_CONTROL,
                   substep: float = DT_SUBSTEP) -> BuildingState:
    """
    Advance the building over one control interval with sub-stepped
    explicit Euler, holding the disturbance and supply temperature constant.

    :param state: Temperatures at the start of the interval.
    :param dist: Disturbance held over the interval.
    :param t_hp_sup: Supply temperature held over the interval, °C.
    :param p: Building parameters.
    :param dt: Control interval, s.
    :param substep: Euler step, s. A final partial step covers any
                    remainder of dt.
    """
    if not dt > 0 or not substep > 0:
        raise ParameterError('dt and substep must be positive')
    t_room, t_wall, t_hp_ret = _euler_kernel(
        float(state.t_room), float(state.t_wall), float(state.t_hp_ret),
        float(dist.t_amb), float(dist.q_gain), float(t_hp_sup),
        _coefficients(p), p.is_three_state, float(dt), float(substep)
    )
    return BuildingState(t_room, t_wall, t_hp_ret).check_plausible()


def discretize(p: BuildingParams, dt: float = DT_CONTROL,
               substep: float = DT_SUBSTEP) -> Tuple[ndarray, ndarray]:
    """
    Return (Φ, Γ) with x_next = Φ·x + Γ·w reproducing integrate_step, where
    x = (t_room, t_wall, t_hp_ret) and w = (t_amb, t_hp_sup, q_gain).

    :param p: Building parameters.
    :param dt: Control interval, s.
    :param substep: Euler step, s.
    """
    c = _coefficients(p)
    phi = zeros((3, 3))
    gamma = zeros((3, 3))
    for i in range(3):
        x = [0.0, 0.0, 0.0]
        x[i] = 1.0
        phi[:, i] = _euler_kernel(
            x[0], x[1], x[2], 0.0, 0.0, 0.0,
            c, p.is_three_state, float(dt), float(substep)
        )
        w = [0.0, 0.0, 0.0]
        w[i] = 1.0
        gamma[:, i] = _euler_kernel(
            0.0, 0.0, 0.0, w[0], w[2], w[1],
            c, p.is_three_state, float(dt), float(substep)
        )
    return phi, gamma


def system_matrices(p: BuildingParams) -> Tuple[ndarray, ndarray]:
    """
    Return the continuous-time pair (A, B) of dx/dt = A·x + B·w with
    w = (t_amb, t_hp_sup, q_gain).

    The state is (t_room, t_hp_ret) for the two-state model and
    (t_room, t_wall, t_hp_ret) for the three-state model.
    """
    h_rc = p.h_rad_con
    mcp = p.mdot_cp
    if p.is_three_state:
        cz, cw, cwat = p.cap_zone, p.cap_wall, p.cap_water
        f = p.gain_wall_fraction
        a = array([
            [-(h_rc + p.h_wall) / cz, p.h_wall / cz, h_rc / cz],
            [p.h_wall / cw, -(p.h_wall + p.h_ve_tr) / cw, 0.0],
            [h_rc / cwat, 0.0, -(mcp + h_rc) / cwat],
        ])
        b = array([
            [0.0, 0.0, (1 - f) / cz],
            [p.h_ve_tr / cw, 0.0, f / cw],
            [0.0, mcp / cwat, 0.0],
        ])
    else:
        cb, cwat = p.cap_bldg, p.cap_water
        a = array([
            [-(h_rc + p.h_ve_tr) / cb, h_rc / cb],
            [h_rc / cwat, -(mcp + h_rc) / cwat],
        ])
        b = array([
            [p.h_ve_tr / cb, 0.0, 1 / cb],
            [0.0, mcp / cwat, 0.0],
        ])
    return a, b


def system_eigenvalues(p: BuildingParams) -> ndarray:
    """
    Return the eigenvalues of the continuous-time system matrix, 1/s.
    """
    a, _ = system_matrices(p)
    return eigvals(a)


def steady_state(p: BuildingParams, t_amb: float, t_hp_sup: float,
                 q_gain: float = 0.0) -> BuildingState:
    """
    Return the equilibrium temperatures under constant forcing.
    """
    a, b = system_matrices(p)
    x = solve(a, -b @ array([t_amb, t_hp_sup, q_gain]))
    if p.is_three_state:
        return BuildingState(float(x[0]), float(x[1]), float(x[2]))
    return BuildingState(float(x[0]), float(x[0]), float(x[1]))
