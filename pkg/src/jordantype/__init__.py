"""Jordan types of generic nilpotent matrices commuting with a nilpotent
Jordan matrix J_P, and the poset invariants that bound them."""

from .greene import brute_force_profile, chain_cover_profile, greene_lambda
from .partitions import Partition, conjugate, dominates, ob, parse_partition, partitions_of, r_P
from .poset import PosetDiagram, Vertex, build_diagram, longest_chain
from .uchains import SUChain, UChainSpec, lambda_U, oblak_recursion, s_uchain, u_sequence
from .verify import CheckConfig, check_partition, estimate_Q, exhaustive_Q, sweep

__all__ = [
    "CheckConfig", "Partition", "PosetDiagram", "SUChain", "UChainSpec", "Vertex",
    "brute_force_profile", "build_diagram", "chain_cover_profile", "check_partition",
    "conjugate", "dominates", "estimate_Q", "exhaustive_Q", "greene_lambda", "lambda_U",
    "longest_chain", "ob", "oblak_recursion", "parse_partition", "partitions_of", "r_P",
    "s_uchain", "sweep", "u_sequence",
]
