"""Finitely sampled functions on unit-spaced grids ``{base, base+1, ...}``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import DomainMismatch, InsufficientSamples
from .numeric import Mode, Number, Scalar, coerce, mode_of, mode_of_all


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function at ``base + j`` for ``j = 0 .. n-1``.

    Construct with :meth:`of` to get mode-consistent scalars; the raw
    constructor trusts its arguments.
    """

    base: Scalar
    samples: tuple

    def __post_init__(self):
        if len(self.samples) < 1:
            raise InsufficientSamples("a grid function needs at least one sample")

    @classmethod
    def of(cls, samples: Iterable[Number], base: Number = 0) -> "GridFunction":
        samples = list(samples)
        mode = mode_of(base, *samples)
        return cls(coerce(base, mode), tuple(coerce(v, mode) for v in samples))

    @classmethod
    def tabulate(cls, fn: Callable[[int], Number], n: int, base: Number = 0) -> "GridFunction":
        """Sample ``fn(j)`` at offsets ``j = 0 .. n-1``."""
        return cls.of((fn(j) for j in range(n)), base)

    @classmethod
    def constant(cls, k: Number, n: int, base: Number = 0) -> "GridFunction":
        return cls.of([k] * n, base)

    @property
    def mode(self) -> Mode:
        return mode_of(self.base, *self.samples)

    def __len__(self) -> int:
        return len(self.samples)

    def __getitem__(self, j):
        return self.samples[j]

    def points(self) -> list:
        return [self.base + j for j in range(len(self.samples))]

    def rebased(self, base: Number) -> "GridFunction":
        return GridFunction(coerce(base, mode_of(base, self.base)), self.samples)

    def to_mode(self, mode: Mode) -> "GridFunction":
        return GridFunction(coerce(self.base, mode), tuple(coerce(v, mode) for v in self.samples))


def _check_same_domain(f: GridFunction, g: GridFunction) -> None:
    if f.base != g.base or len(f) != len(g):
        raise DomainMismatch(
            f"grids differ: base {f.base} (n={len(f)}) vs base {g.base} (n={len(g)})"
        )


def _aligned(f: GridFunction, g: GridFunction):
    _check_same_domain(f, g)
    mode = mode_of_all((f.base, g.base, *f.samples, *g.samples))
    return f.to_mode(mode), g.to_mode(mode)


def add(f: GridFunction, g: GridFunction) -> GridFunction:
    f, g = _aligned(f, g)
    return GridFunction(f.base, tuple(x + y for x, y in zip(f.samples, g.samples)))


def multiply(f: GridFunction, g: GridFunction) -> GridFunction:
    f, g = _aligned(f, g)
    return GridFunction(f.base, tuple(x * y for x, y in zip(f.samples, g.samples)))


def scale(f: GridFunction, c: Number) -> GridFunction:
    mode = mode_of(c, f.base, *f.samples)
    f = f.to_mode(mode)
    c = coerce(c, mode)
    return GridFunction(f.base, tuple(c * x for x in f.samples))


def backward_difference(g: GridFunction, k: int) -> GridFunction:
    """k-th backward difference; output starts at ``g.base + k``.

    Computed as ``k`` passes of ``g(t) - g(t-1)``, which equals
    ``sum_{i=0..k} (-1)^i C(k, i) g(t-i)``.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    n = len(g)
    if k >= n:
        raise InsufficientSamples(f"backward difference of order {k} needs more than {n} samples")
    s = g.samples
    for _ in range(k):
        s = tuple(s[i] - s[i - 1] for i in range(1, len(s)))
    return GridFunction(g.base + k, s)


def cumulative_sum(f: GridFunction) -> GridFunction:
    out = []
    acc = None
    for x in f.samples:
        acc = x if acc is None else acc + x
        out.append(acc)
    return GridFunction(f.base, tuple(out))

