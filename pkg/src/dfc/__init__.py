"""Discrete delta, nabla and diamond-gamma fractional sums with exact verification."""

from .errors import (
    DFCError,
    DomainMismatch,
    GammaMismatch,
    IndexOutOfRange,
    InsufficientSamples,
    ModeError,
    OrderError,
    PoleError,
)
from .fracops import (
    DiamondParams,
    compose_diamond_lhs,
    compose_diamond_rhs,
    delta_fractional_sum,
    diamond_fractional_sum,
    nabla_fractional_sum,
)
from .grid import GridFunction, add, backward_difference, cumulative_sum, multiply, scale
from .identities import (
    Theorem,
    VerificationReport,
    leibniz_rhs,
    verify_coincidence,
    verify_composition,
    verify_constant,
    verify_leibniz,
    verify_linearity,
    verify_reduction,
)
from .kernelmath import (
    WeightSequence,
    constant_sum_closed_form,
    falling_power,
    generalized_binomial,
    inject_weight_fault,
    kernel_weights,
    rising_power,
)
from .numeric import Mode

__version__ = "0.1.0"
