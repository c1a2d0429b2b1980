"""Delta, nabla and diamond-gamma fractional sums on unit grids.

On a unit grid both the delta sum (read at ``t + alpha``) and the nabla sum
(read at ``t``) reduce to the same lower-triangular convolution with the
kernel ``c_j(order)``; they differ only in where the output grid starts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GammaMismatch
from .grid import GridFunction
from .kernelmath import kernel_weights
from .numeric import Number, check_gamma, check_order, coerce, mode_of


@dataclass(frozen=True)
class DiamondParams:
    alpha: Number
    beta: Number
    gamma: Number

    def __post_init__(self):
        check_order(self.alpha, "alpha")
        check_order(self.beta, "beta")
        check_gamma(self.gamma)


def triangular_convolution(samples, weights) -> list:
    """``out[m] = sum_{j=0..m} weights[m-j] * samples[j]``, summed left to right."""
    out = []
    for m in range(len(samples)):
        acc = weights[m] * samples[0]
        for j in range(1, m + 1):
            acc = acc + weights[m - j] * samples[j]
        out.append(acc)
    return out


def _fractional_values(f: GridFunction, order: Number):
    mode = mode_of(order, f.base, *f.samples)
    order = coerce(order, mode)
    f = f.to_mode(mode)
    weights = kernel_weights(order, len(f))
    return f, order, triangular_convolution(f.samples, weights)


def delta_fractional_sum(f: GridFunction, alpha: Number) -> GridFunction:
    """Delta fractional sum of order ``alpha``; output lives on ``base + alpha + j``."""
    check_order(alpha, "alpha")
    f, alpha, values = _fractional_values(f, alpha)
    return GridFunction(f.base + alpha, tuple(values))


def nabla_fractional_sum(f: GridFunction, beta: Number) -> GridFunction:
    """Nabla fractional sum of order ``beta``; output shares the input grid."""
    check_order(beta, "beta")
    f, _, values = _fractional_values(f, beta)
    return GridFunction(f.base, tuple(values))


def diamond_fractional_sum(f: GridFunction, p: DiamondParams) -> GridFunction:
    """``gamma * (delta sum)(t + alpha) + (1 - gamma) * (nabla sum)(t)`` on the input grid.

    Both branches are evaluated in full and blended pointwise.
    """
    mode = mode_of(p.alpha, p.beta, p.gamma, f.base, *f.samples)
    f = f.to_mode(mode)
    gamma = coerce(p.gamma, mode)
    delta = delta_fractional_sum(f, coerce(p.alpha, mode))
    nabla = nabla_fractional_sum(f, coerce(p.beta, mode))
    rest = 1 - gamma
    values = tuple(gamma * d + rest * v for d, v in zip(delta.samples, nabla.samples))
    return GridFunction(f.base, values)


def _shared_gamma(p1: DiamondParams, p2: DiamondParams) -> Number:
    if p1.gamma != p2.gamma:
        raise GammaMismatch(f"composed operators need one gamma, got {p1.gamma} and {p2.gamma}")
    return p1.gamma


def compose_diamond_lhs(f: GridFunction, p1: DiamondParams, p2: DiamondParams) -> GridFunction:
    """Apply the ``p2`` diamond sum, then the ``p1`` diamond sum."""
    _shared_gamma(p1, p2)
    return diamond_fractional_sum(diamond_fractional_sum(f, p2), p1)


def compose_diamond_rhs(f: GridFunction, p1: DiamondParams, p2: DiamondParams) -> GridFunction:
    """Single-operator form of the composed diamond sum.

    ``gamma * D(a1+a2, b1+a2) f + (1-gamma) * D(a1+b2, b1+b2) f`` with every
    ``D`` sharing ``gamma``.
    """
    gamma = _shared_gamma(p1, p2)
    first = diamond_fractional_sum(
        f, DiamondParams(p1.alpha + p2.alpha, p1.beta + p2.alpha, gamma)
    )
    second = diamond_fractional_sum(
        f, DiamondParams(p1.alpha + p2.beta, p1.beta + p2.beta, gamma)
    )
    mode = mode_of(gamma, first.base, *first.samples)
    g = coerce(gamma, mode)
    rest = 1 - g
    values = tuple(g * x + rest * y for x, y in zip(first.samples, second.samples))
    return GridFunction(first.base, values)

