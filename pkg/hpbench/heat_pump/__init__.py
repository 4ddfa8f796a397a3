from hpbench.heat_pump.heat_pump_model import HeatPumpModel, cop, hp_power
