from .aggregate import aggregate
from .base import EXACT, INTERVAL, Certificate, Construction, check_epsilon, default_epsilon, required_exponent
from .blocks import BlockSpec, assemble
from .generators import gen_grid2, gen_grid3_perturbed, gen_hypergrid, gen_quad4, gen_quint5
from .metric import TEMPLATES, apply_metric, default_metric_epsilon, epsilon_bound, l1_separator
from .planner import Plan, decompose, plan, plan_kflat
from .solve import NoRootError, certified_root

__all__ = [
    "EXACT",
    "INTERVAL",
    "TEMPLATES",
    "BlockSpec",
    "Certificate",
    "Construction",
    "NoRootError",
    "Plan",
    "aggregate",
    "apply_metric",
    "assemble",
    "certified_root",
    "check_epsilon",
    "decompose",
    "default_epsilon",
    "default_metric_epsilon",
    "epsilon_bound",
    "gen_grid2",
    "gen_grid3_perturbed",
    "gen_hypergrid",
    "gen_quad4",
    "gen_quint5",
    "l1_separator",
    "plan",
    "plan_kflat",
    "required_exponent",
]
