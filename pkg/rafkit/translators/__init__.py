"""
Simulations of AFs, CAFs and twofold extensions, their oracles, and hardness generators.
"""

from .hardness import HardnessInstance, cred_hardness_instance, hardness_instance, hardness_td
from .oracles import TwofoldQuery, caf_oracle, twofold_oracle
from .simulations import af_to_raf, caf_query_semantics, caf_to_raf, twofold_to_raf

__all__ = [
    "HardnessInstance",
    "TwofoldQuery",
    "af_to_raf",
    "caf_oracle",
    "caf_query_semantics",
    "caf_to_raf",
    "cred_hardness_instance",
    "hardness_instance",
    "hardness_td",
    "twofold_oracle",
    "twofold_to_raf",
]
