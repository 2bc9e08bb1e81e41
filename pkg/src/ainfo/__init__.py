"""Alpha-mutual information and alpha-capacity for finite channels."""

from ainfo._backend import BACKEND
from ainfo.ao import AOConfig, AOTrace, Init, Termination
from ainfo.capacity import (
    AlgorithmId,
    CapacityResult,
    IncompatibleAlpha,
    capacity_c,
    capacity_jo,
    capacity_lp,
    capacity_s1,
    run_capacity,
)
from ainfo.core import (
    AlphaParam,
    Channel,
    Distribution,
    DomainError,
    JointDistribution,
    ValidationError,
    arimoto_conditional_entropy,
    gallager_e0,
    joint_from,
    kl_divergence,
    marginal_x,
    marginal_y,
    posterior,
    renyi_divergence,
    renyi_entropy,
    shannon_entropy,
    shannon_mi,
    tilted_distribution,
)
from ainfo.mi import (
    MIResult,
    ac_mi,
    arimoto_mi_closed,
    arimoto_mi_entropy_difference,
    lp_mi_def_ao,
    lp_mi_vc_ao,
    sibson_mi_closed,
    sibson_minimizer_qy,
)

__version__ = "0.1.0"
