"""Factorial powers, normalized gamma-ratio kernels and binomials.

Every fractional-order quantity here is a normalized gamma ratio that reduces
to a finite product for grid offsets, so the same product recurrences serve
both numeric modes. Raw gamma values are only needed by :func:`falling_power`
and :func:`rising_power` at non-integer orders, which is float-only.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import ModeError, PoleError
from .numeric import Mode, Number, Scalar, check_order, coerce, is_integer, mode_of


@dataclass(frozen=True)
class WeightSequence(Sequence):
    """Kernel coefficients ``c_j(order) = Gamma(j+order) / (Gamma(order) j!)``."""

    order: Scalar
    weights: tuple

    def __getitem__(self, j):
        return self.weights[j]

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.weights)


# ---------------------------------------------------------------------------
# gamma helpers (float mode only)


def _is_pole(x: Number) -> bool:
    return is_integer(x) and x <= 0


def _gamma_ratio(x: float, y: float) -> float:
    """Gamma(x) / Gamma(y) for pole-free real x, y."""
    mag = math.exp(math.lgamma(x) - math.lgamma(y))
    return _gamma_sign(x) * _gamma_sign(y) * mag


def _gamma_sign(x: float) -> int:
    if x > 0:
        return 1
    return -1 if math.floor(x) % 2 else 1


def _integer_falling(t: Scalar, n: int, one: Scalar) -> Scalar:
    """Gamma(t+1)/Gamma(t+1-n) for integer n via finite products."""
    acc = one
    if n >= 0:
        for i in range(n):
            acc = acc * (t - i)
        return acc
    for i in range(1, -n + 1):
        factor = t + i
        if factor == 0:
            raise PoleError(f"falling power pole at t={t}, order={n}")
        acc = acc / factor
    return acc


def falling_power(t: Number, alpha: Number) -> Scalar:
    """Falling factorial power ``Gamma(t+1) / Gamma(t+1-alpha)``.

    Integer orders use the finite product ``t (t-1) ... (t-n+1)`` and work in
    both modes. Non-integer orders need the gamma function and are available
    in float mode only.
    """
    mode = mode_of(t, alpha)
    t = coerce(t, mode)
    one = coerce(1, mode)
    if is_integer(alpha):
        return _integer_falling(t, int(alpha), one)
    if mode is Mode.EXACT:
        raise ModeError(f"non-integer order {alpha} has no exact falling power")
    alpha = float(alpha)
    top, bottom = t + 1.0, t + 1.0 - alpha
    if _is_pole(top) or _is_pole(bottom):
        raise PoleError(f"falling power pole at t={t}, order={alpha}")
    return _gamma_ratio(top, bottom)


def rising_power(t: Number, alpha: Number) -> Scalar:
    """Rising factorial power ``Gamma(t+alpha) / Gamma(t)``; ``t^(0 rising) = 1``."""
    mode = mode_of(t, alpha)
    t = coerce(t, mode)
    one = coerce(1, mode)
    if is_integer(alpha):
        n = int(alpha)
        acc = one
        if n >= 0:
            for i in range(n):
                acc = acc * (t + i)
            return acc
        for i in range(1, -n + 1):
            factor = t - i
            if factor == 0:
                raise PoleError(f"rising power pole at t={t}, order={n}")
            acc = acc / factor
        return acc
    if mode is Mode.EXACT:
        raise ModeError(f"non-integer order {alpha} has no exact rising power")
    alpha = float(alpha)
    if _is_pole(t) or _is_pole(t + alpha):
        raise PoleError(f"rising power pole at t={t}, order={alpha}")
    return _gamma_ratio(t + alpha, t)


# ---------------------------------------------------------------------------
# fault injection, used to show the verification harness is not vacuous


@dataclass(frozen=True)
class WeightFault:
    index: int
    order: Optional[Scalar] = None
    delta: Optional[Scalar] = None
    ulps: int = 0

    def apply(self, order: Scalar, weights: list) -> None:
        if self.order is not None and self.order != order:
            return
        if self.index >= len(weights):
            return
        w = weights[self.index]
        if self.delta is not None:
            w = w + coerce(self.delta, mode_of(w))
        if self.ulps:
            if not isinstance(w, float):
                raise ModeError("ulp perturbation needs float weights")
            direction = math.inf if self.ulps > 0 else -math.inf
            for _ in range(abs(self.ulps)):
                w = math.nextafter(w, direction)
        weights[self.index] = w


_FAULT: contextvars.ContextVar[Optional[WeightFault]] = contextvars.ContextVar(
    "dfc_weight_fault", default=None
)


@contextlib.contextmanager
def inject_weight_fault(
    index: int,
    *,
    order: Optional[Number] = None,
    delta: Optional[Number] = None,
    ulps: int = 0,
):
    """Perturb one kernel weight inside the ``with`` block (context-local).

    ``order=None`` perturbs that index for every order requested.
    """
    token = _FAULT.set(WeightFault(index=index, order=order, delta=delta, ulps=ulps))
    try:
        yield
    finally:
        _FAULT.reset(token)


# ---------------------------------------------------------------------------
# normalized kernels


def kernel_weights(alpha: Number, count: int) -> WeightSequence:
    """Return ``[c_0(alpha), ..., c_{count-1}(alpha)]``.

    Uses ``c_0 = 1``, ``c_j = c_{j-1} (j-1+alpha) / j``; exact for rational alpha.
    """
    check_order(alpha, "alpha")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    mode = mode_of(alpha)
    alpha = coerce(alpha, mode)
    c = coerce(1, mode)
    weights = [c]
    for j in range(1, count):
        c = c * ((j - 1) + alpha) / j
        weights.append(c)
    fault = _FAULT.get()
    if fault is not None:
        fault.apply(alpha, weights)
    return WeightSequence(order=alpha, weights=tuple(weights))


def generalized_binomial(u: Number, k: int) -> Scalar:
    """``binom(u, k) = prod_{i=1..k} (u-i+1)/i`` for integer ``k >= 0``.

    The product form has no poles. ``generalized_binomial(-a, k)`` equals
    ``(-1)**k * kernel_weights(a)[k]`` bit for bit in both modes.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    mode = mode_of(u)
    u = coerce(u, mode)
    acc = coerce(1, mode)
    for i in range(1, k + 1):
        # u - (i-1) mirrors the kernel recurrence's (i-1) + a under negation
        acc = acc * (u - (i - 1)) / i
    return acc


def constant_sum_closed_form(alpha: Number, n: int, k: Number) -> Scalar:
    """Fractional sum of the constant ``k`` at grid offset ``n``.

    ``Gamma(n+1+alpha) k / (Gamma(alpha+1) Gamma(n+1))`` rewritten as
    ``k * prod_{j=1..n} (j+alpha)/j``.
    """
    check_order(alpha, "alpha")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    mode = mode_of(alpha, k)
    alpha = coerce(alpha, mode)
    acc = coerce(1, mode)
    for j in range(1, n + 1):
        acc = acc * (j + alpha) / j
    return coerce(k, mode) * acc


__all__ = [
    "WeightSequence",
    "WeightFault",
    "constant_sum_closed_form",
    "falling_power",
    "generalized_binomial",
    "inject_weight_fault",
    "kernel_weights",
    "rising_power",
]
