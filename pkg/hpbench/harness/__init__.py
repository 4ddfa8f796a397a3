from hpbench.harness.kpis import KpiReport, compute_kpis
from hpbench.harness.simulation import simulate
