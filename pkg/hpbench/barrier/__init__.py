from hpbench.barrier.actor_terms import (
    ActorTerm, beta_loss, csac_lb_actor_term, inverse_softplus,
    sac_lag_actor_term, softplus
)
from hpbench.barrier.log_barrier import BarrierParams, psi_star, psi_tilde
