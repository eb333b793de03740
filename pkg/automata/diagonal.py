"""The diagonal map T(x) = F(x || x) of a bipermutive CA."""
from typing import Optional

import numpy as np

from rules.bipermutive import BipermutiveRule, expand
from rules.errors import ContractViolation

from .configs import BitConfig
from .pbca import PbcaMap, apply_rule, check_cap, is_bijective_images, nbca_eval


def diagonal_map(rule: BipermutiveRule, config: BitConfig) -> BitConfig:
    if config.length != rule.window:
        raise ContractViolation(
            f"The diagonal map of a diameter-{rule.diameter} rule takes {rule.window} cells, "
            f"got {config.length}."
        )
    return nbca_eval(expand(rule), config.concat(config))


def concatenation_images(rule: BipermutiveRule, shift: int = 0) -> np.ndarray:
    """Images of x -> F(x || x ^ shift) for every x in F_2^(d-1)."""
    n = rule.window
    left = np.arange(1 << n, dtype=np.int64)
    values = (left << n) | (left ^ shift)
    return apply_rule(expand(rule), values, 2 * n, np.arange(n), wrap=False)


def diagonal_is_permutation(rule: BipermutiveRule, cap: Optional[int] = None) -> bool:
    check_cap('Diagonal length', rule.window, cap)
    return is_bijective_images(concatenation_images(rule), rule.window)


def generator_pbca(rule: BipermutiveRule) -> PbcaMap:
    """The size-(d-1) periodic CA whose local rule is the generating function."""
    return PbcaMap(rule.generator, rule.window)
