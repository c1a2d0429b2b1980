"""Executable checks of the diamond-gamma identities.

Each ``verify_*`` function evaluates two independent sides of an identity on a
finite grid and returns a :class:`VerificationReport`. In exact mode every
check must report zero error; in float mode the error is compared against
``rtol * (1 + max |lhs|)``.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from .errors import DomainMismatch, IndexOutOfRange
from .fracops import (
    DiamondParams,
    compose_diamond_lhs,
    compose_diamond_rhs,
    delta_fractional_sum,
    diamond_fractional_sum,
    nabla_fractional_sum,
)
from .grid import GridFunction, add, backward_difference, multiply
from .kernelmath import constant_sum_closed_form, falling_power, generalized_binomial
from .numeric import (
    Mode,
    Number,
    Scalar,
    check_order,
    coerce,
    is_integer,
    json_scalar,
    mode_of,
    mode_of_all,
)

DEFAULT_FLOAT_RTOL = 1e-10


class Theorem(str, enum.Enum):
    LINEARITY = "linearity"
    CONSTANT = "constant"
    COINCIDENCE = "coincidence"
    COMPOSITION = "composition"
    LEIBNIZ = "leibniz"
    REDUCTION_GAMMA0 = "reduction_gamma0"
    REDUCTION_GAMMA1 = "reduction_gamma1"


@dataclass(frozen=True)
class Witness:
    index: int
    lhs: Scalar
    rhs: Scalar


@dataclass(frozen=True)
class VerificationReport:
    theorem: Theorem
    params: dict
    max_abs_error: Scalar
    tolerance: Scalar
    passed: bool
    witness: Optional[Witness] = None

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "max_abs_error": json_scalar(self.max_abs_error),
            "tolerance": json_scalar(self.tolerance),
            "passed": self.passed,
            "witness": None
            if self.witness is None
            else {
                "index": self.witness.index,
                "lhs": json_scalar(self.witness.lhs),
                "rhs": json_scalar(self.witness.rhs),
            },
        }


def _jsonable(value: Any) -> Any:
    if value is None or isinstance(value, (str, bool)):
        return value
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, int):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return json_scalar(value)


def _compare(
    theorem: Theorem,
    lhs: Sequence[Scalar],
    rhs: Sequence[Scalar],
    params: dict,
    rtol: Optional[float],
) -> VerificationReport:
    mode = mode_of_all((*lhs, *rhs))
    worst, where = coerce(0, mode), 0
    for i, (x, y) in enumerate(zip(lhs, rhs)):
        d = abs(x - y)
        if d > worst:
            worst, where = d, i
    if mode is Mode.EXACT:
        tolerance = Fraction(0)
    else:
        rtol = DEFAULT_FLOAT_RTOL if rtol is None else rtol
        tolerance = rtol * (1.0 + max(abs(x) for x in lhs))
    passed = worst <= tolerance
    witness = Witness(where, lhs[where], rhs[where]) if worst > 0 else None
    params = dict(params, mode=mode.value)
    return VerificationReport(theorem, params, worst, tolerance, passed, witness)


def _params(p: Optional[DiamondParams], n: int, seed: Optional[int], **over) -> dict:
    out = {
        "alpha": p.alpha if p else None,
        "beta": p.beta if p else None,
        "gamma": p.gamma if p else None,
        "n": n,
        "seed": seed,
    }
    out.update(over)
    return out


# ---------------------------------------------------------------------------
# checks


def verify_linearity(
    f: GridFunction,
    g: GridFunction,
    p: DiamondParams,
    *,
    rtol: Optional[float] = None,
    seed: Optional[int] = None,
) -> VerificationReport:
    lhs = diamond_fractional_sum(add(f, g), p)
    rhs = add(diamond_fractional_sum(f, p), diamond_fractional_sum(g, p))
    return _compare(Theorem.LINEARITY, lhs.samples, rhs.samples, _params(p, len(f), seed), rtol)


def verify_constant(
    k: Number,
    p: DiamondParams,
    n: int,
    *,
    base: Number = 0,
    rtol: Optional[float] = None,
    seed: Optional[int] = None,
) -> VerificationReport:
    """Diamond sum of ``f = k`` against the closed-form gamma ratio at each offset."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    mode = mode_of(k, base, p.alpha, p.beta, p.gamma)
    k = coerce(k, mode)
    gamma = coerce(p.gamma, mode)
    lhs = diamond_fractional_sum(GridFunction.constant(k, n, base), p).samples
    rhs = [
        gamma * constant_sum_closed_form(coerce(p.alpha, mode), m, k)
        + (1 - gamma) * constant_sum_closed_form(coerce(p.beta, mode), m, k)
        for m in range(n)
    ]
    return _compare(Theorem.CONSTANT, lhs, rhs, _params(p, n, seed), rtol)


def delta_sum_by_definition(f: GridFunction, nu: Number) -> GridFunction:
    """Delta fractional sum evaluated term by term from its defining sum.

    At ``T = a + nu + m`` the value is ``sum_{s=a}^{T-nu} (T - s - 1)^{(nu-1)} f(s) / Gamma(nu)``.
    Float mode uses the gamma-ratio falling power. Exact mode uses the
    normalized form ``binom(T - s - 1, T - nu - s)``, which is a finite product
    for each integer offset. Neither path touches the kernel recurrence.
    """
    check_order(nu, "nu")
    mode = mode_of(nu, f.base, *f.samples)
    f = f.to_mode(mode)
    nu = coerce(nu, mode)
    a = f.base
    out = []
    if mode is Mode.FLOAT:
        inv_gamma = 1.0 / math.gamma(nu)
    for m in range(len(f)):
        t = a + nu + m
        acc = coerce(0, mode)
        for j in range(m + 1):
            s = a + j
            x = t - (s + 1)
            if mode is Mode.EXACT:
                offset = t - nu - s
                assert is_integer(offset)
                kernel = generalized_binomial(x, int(offset))
            else:
                kernel = falling_power(x, nu - 1) * inv_gamma
            acc = acc + kernel * f[j]
        out.append(acc)
    return GridFunction(a + nu, tuple(out))


def verify_coincidence(
    f: GridFunction,
    nu: Number,
    *,
    rtol: Optional[float] = None,
    seed: Optional[int] = None,
) -> VerificationReport:
    """Delta sum read at ``t + nu`` (from the definition) against the nabla sum at ``t``."""
    lhs = delta_sum_by_definition(f, nu).samples
    rhs = nabla_fractional_sum(f, nu).samples
    params = _params(None, len(f), seed, alpha=nu, beta=nu)
    return _compare(Theorem.COINCIDENCE, lhs, rhs, params, rtol)


def verify_composition(
    f: GridFunction,
    p1: DiamondParams,
    p2: DiamondParams,
    *,
    rtol: Optional[float] = None,
    seed: Optional[int] = None,
) -> VerificationReport:
    lhs = compose_diamond_lhs(f, p1, p2).samples
    rhs = compose_diamond_rhs(f, p1, p2).samples
    params = _params(
        p1, len(f), seed, alpha=[p1.alpha, p2.alpha], beta=[p1.beta, p2.beta]
    )
    return _compare(Theorem.COMPOSITION, lhs, rhs, params, rtol)


def verify_reduction(
    f: GridFunction,
    p: DiamondParams,
    gamma: int,
    *,
    seed: Optional[int] = None,
) -> VerificationReport:
    """Diamond sum at ``gamma`` in {0, 1} against the pure nabla or delta sum.

    The comparison is bitwise in both modes (tolerance zero).
    """
    if gamma not in (0, 1):
        raise ValueError("reduction checks need gamma 0 or 1")
    q = DiamondParams(p.alpha, p.beta, coerce(gamma, mode_of(p.alpha, p.beta, p.gamma)))
    lhs = diamond_fractional_sum(f, q).samples
    if gamma == 1:
        theorem, rhs = Theorem.REDUCTION_GAMMA1, delta_fractional_sum(f, p.alpha).samples
    else:
        theorem, rhs = Theorem.REDUCTION_GAMMA0, nabla_fractional_sum(f, p.beta).samples
    return _compare(theorem, lhs, rhs, _params(q, len(f), seed), 0.0)


# ---------------------------------------------------------------------------
# Leibniz series


def _leibniz_branch(f: GridFunction, g: GridFunction, order: Scalar, extra: int) -> list:
    """``sum_{k=0}^{m+extra} binom(-order, k) (nabla^k g)(t) (delta^{-(order+k)} f)(t + order)``.

    The delta factor at ``t + order`` is index ``m - k`` of the order-``order+k``
    sum; for ``k > m`` its defining sum is empty, so the term is zero.
    """
    n = len(f)
    mode = mode_of(order, *f.samples, *g.samples)
    zero = coerce(0, mode)
    diffs = [g.samples]
    for _ in range(1, n):
        diffs.append(backward_difference(GridFunction(g.base, diffs[-1]), 1).samples)
    sums = [
        delta_fractional_sum(GridFunction(f.base, f.samples[: n - k]), order + k).samples
        for k in range(n)
    ]
    binoms = [generalized_binomial(-order, k) for k in range(n + extra)]
    out = []
    for m in range(n):
        acc = zero
        for k in range(m + extra + 1):
            if k > m:
                term = binoms[k] * zero
            else:
                term = binoms[k] * diffs[k][m - k] * sums[k][m - k]
            acc = acc + term
        out.append(acc)
    return out


def _leibniz_all(
    f: GridFunction, g: GridFunction, p: DiamondParams, extra: int = 0
) -> list:
    if len(f) != len(g) or f.base != g.base:
        raise DomainMismatch("Leibniz operands must share a grid")
    mode = mode_of(p.alpha, p.beta, p.gamma, f.base, g.base, *f.samples, *g.samples)
    f, g = f.to_mode(mode), g.to_mode(mode)
    gamma = coerce(p.gamma, mode)
    rest = 1 - gamma
    zero = [coerce(0, mode)] * len(f)
    # a zero-weight branch contributes exactly 0 in either mode
    left = _leibniz_branch(f, g, coerce(p.alpha, mode), extra) if gamma != 0 else zero
    right = _leibniz_branch(f, g, coerce(p.beta, mode), extra) if rest != 0 else zero
    return [gamma * x + rest * y for x, y in zip(left, right)]


def leibniz_rhs(
    f: GridFunction,
    g: GridFunction,
    p: DiamondParams,
    m: int,
    cap: Optional[int] = None,
) -> Scalar:
    """Right side of the fractional Leibniz rule at grid offset ``m``.

    The series is summed for ``k = 0 .. cap`` (default ``cap = m``); every term
    past ``k = m`` is exactly zero.
    """
    if not 0 <= m < min(len(f), len(g)):
        raise IndexOutOfRange(f"index {m} outside grid of length {min(len(f), len(g))}")
    cap = m if cap is None else cap
    if cap < m:
        raise ValueError(f"cap {cap} would drop nonzero terms below index {m}")
    head_f = GridFunction(f.base, f.samples[: m + 1])
    head_g = GridFunction(g.base, g.samples[: m + 1])
    return _leibniz_all(head_f, head_g, p, extra=cap - m)[m]


def verify_leibniz(
    f: GridFunction,
    g: GridFunction,
    p: DiamondParams,
    *,
    rtol: Optional[float] = None,
    seed: Optional[int] = None,
    extra_terms: int = 0,
) -> VerificationReport:
    lhs = diamond_fractional_sum(multiply(f, g), p).samples
    rhs = _leibniz_all(f, g, p, extra=extra_terms)
    return _compare(Theorem.LEIBNIZ, lhs, rhs, _params(p, len(f), seed), rtol)


# ---------------------------------------------------------------------------
# seeded batch runner


def random_rational_grid(
    rng: random.Random, n: int, base: Number = 0, mode: Mode = Mode.EXACT
) -> GridFunction:
    """Samples ``p/q`` with ``p`` in [-9, 9] and ``q`` in {1, 2, 3}."""
    values = [Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3))) for _ in range(n)]
    return GridFunction.of(values, base).to_mode(mode)


@dataclass(frozen=True)
class SuiteConfig:
    alpha: Number
    beta: Number
    gamma: Number
    n: int
    seed: int = 0
    mode: Mode = Mode.EXACT
    rtol: Optional[float] = None
    base: Number = 0
    alpha2: Optional[Number] = None
    beta2: Optional[Number] = None
    theorems: tuple = field(default_factory=lambda: tuple(Theorem))


def run_suite(cfg: SuiteConfig) -> list:
    """Run the selected checks on seeded random inputs; reports come back in a fixed order.

    The second operator of the composition check defaults to the first one with
    its orders swapped.
    """
    rng = random.Random(cfg.seed)
    mode = cfg.mode

    def cast(v):
        return coerce(v, mode)

    p = DiamondParams(cast(cfg.alpha), cast(cfg.beta), cast(cfg.gamma))
    p2 = DiamondParams(
        cast(cfg.beta if cfg.alpha2 is None else cfg.alpha2),
        cast(cfg.alpha if cfg.beta2 is None else cfg.beta2),
        p.gamma,
    )
    base = cast(cfg.base)
    f = random_rational_grid(rng, cfg.n, base, mode)
    g = random_rational_grid(rng, cfg.n, base, mode)
    k = cast(Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3))))
    common = dict(rtol=cfg.rtol, seed=cfg.seed)
    selected = set(cfg.theorems)
    reports = []
    if Theorem.LINEARITY in selected:
        reports.append(verify_linearity(f, g, p, **common))
    if Theorem.CONSTANT in selected:
        reports.append(verify_constant(k, p, cfg.n, base=base, **common))
    if Theorem.COINCIDENCE in selected:
        reports.append(verify_coincidence(f, p.alpha, **common))
    if Theorem.COMPOSITION in selected:
        reports.append(verify_composition(f, p, p2, **common))
    if Theorem.LEIBNIZ in selected:
        reports.append(verify_leibniz(f, g, p, **common))
    if Theorem.REDUCTION_GAMMA0 in selected:
        reports.append(verify_reduction(f, p, 0, seed=cfg.seed))
    if Theorem.REDUCTION_GAMMA1 in selected:
        reports.append(verify_reduction(f, p, 1, seed=cfg.seed))
    return reports


def all_passed(reports: Iterable[VerificationReport]) -> bool:
    return all(r.passed for r in reports)
