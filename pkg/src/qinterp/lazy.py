"""Pointwise-evaluable maps that need not be finitely piecewise affine.

Conjugators between piecewise-affine maps usually leave the finite
class (doubling and tripling are conjugate, but no finitely
piecewise-affine map conjugates one to the other), so they are kept as
expression trees and evaluated exactly one point at a time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import IterationBudgetExceeded
from .intervals import Interval
from .plmap import PLMap, invert

DEFAULT_BUDGET = 10**6


class LazyMap:
    def __call__(self, x) -> Fraction:
        raise NotImplementedError

    def inverse_value(self, y) -> Fraction:
        raise NotImplementedError

    def inverse(self) -> "LazyMap":
        return Inverse(self)

    def __matmul__(self, other) -> "LazyMap":
        return Compose(self, lift(other))


def lift(m) -> LazyMap:
    """Wrap a PLMap as a lazy node; lazy nodes pass through."""
    return m if isinstance(m, LazyMap) else PLLiteral(m)


@dataclass(frozen=True, eq=False)
class PLLiteral(LazyMap):
    plmap: PLMap

    def __call__(self, x):
        return self.plmap(x)

    def inverse_value(self, y):
        x = self.plmap.preimage(y)
        if x is None:
            raise ValueError(f"{y} is not in the image")
        return x


@dataclass(frozen=True, eq=False)
class Compose(LazyMap):
    outer: LazyMap
    inner: LazyMap

    def __call__(self, x):
        return self.outer(self.inner(x))

    def inverse_value(self, y):
        return self.inner.inverse_value(self.outer.inverse_value(y))


@dataclass(frozen=True, eq=False)
class Inverse(LazyMap):
    node: LazyMap

    def __call__(self, x):
        return self.node.inverse_value(x)

    def inverse_value(self, y):
        return self.node(y)

    def inverse(self):
        return self.node


@dataclass(frozen=True)
class FixedBlock:
    """An order-isomorphism between two fixed regions, given by an affine seed."""

    src: Interval
    dst: Interval
    seed: PLMap

    def apply(self, x, budget):
        return self.seed(x)

    def inverted(self) -> "FixedBlock":
        return FixedBlock(self.dst, self.src, invert(self.seed))


def _end_translation(m, x, down: bool) -> Fraction:
    """Step ``c`` if ``m`` is the translation ``x + c`` beyond its outermost break on the side ``x`` is on, else 0."""
    if not isinstance(m, PLMap):
        return Fraction(0)
    if m.breaks and (x <= m.breaks[-1] if down else x >= m.breaks[0]):
        return Fraction(0)
    s, c = m.laws[-1] if down else m.laws[0]
    return c if s == 1 and (c < 0) == down and c else Fraction(0)


def iterate(m, x, n: int) -> Fraction:
    """``m^n(x)``, in closed form once the orbit enters an outer affine piece."""
    for done in range(n):
        y = m(x)
        if isinstance(m, PLMap) and y != x:
            bs = m.breaks
            if not bs or (y > x and x > bs[-1]) or (y < x and x < bs[0]):
                # the rest of the orbit stays in this piece
                s, c = m.laws[-1] if y > x else m.laws[0]
                r = n - done
                if s == 1:
                    return x + r * c
                p = c / (1 - s)
                return p + s**r * (x - p)
        x = y
    return x


@dataclass(frozen=True)
class BumpBlock:
    """Equivariant extension ``g^n . seed . f^-n`` across a bump orbital.

    ``seed`` is used only on the fundamental domain of ``f`` with
    endpoints ``x0`` and ``f(x0)``, which it must carry onto the
    fundamental domain of ``g`` at ``seed(x0)``.
    """

    src: Interval
    dst: Interval
    f: Callable
    f_inv: Callable
    g: Callable
    g_inv: Callable
    x0: Fraction
    seed: PLMap
    parity: int

    def apply(self, x, budget):
        a, b = sorted((self.x0, self.f(self.x0)))
        n, steps = 0, 0
        while not (a <= x < b):
            steps += 1
            if steps > budget:
                raise IterationBudgetExceeded(f"no fundamental domain reached from {x} in {budget} steps")
            m, dn = (self.f_inv, 1) if (x >= b) == (self.parity > 0) else (self.f, -1)
            down = x >= b
            c = _end_translation(m, x, down)
            if c:
                # whole translation steps that stay outside the domain and the breaks
                thr = max(b, m.breaks[-1]) if down and m.breaks else b if down else min(a, m.breaks[0]) if m.breaks else a
                j = math.floor((thr - x) / c)
                if j > 1:
                    x, n = x + (j - 1) * c, n + dn * (j - 1)
                    continue
            x, n = m(x), n + dn
        y = self.seed(x)
        return iterate(self.g if n > 0 else self.g_inv, y, abs(n))

    def inverted(self) -> "BumpBlock":
        return BumpBlock(self.dst, self.src, self.g, self.g_inv, self.f, self.f_inv,
                         self.seed(self.x0), invert(self.seed), self.parity)


@dataclass(frozen=True, eq=False)
class EquivariantGlue(LazyMap):
    blocks: Sequence
    budget: int = DEFAULT_BUDGET

    def __call__(self, x):
        for blk in self.blocks:
            if x in blk.src:
                return blk.apply(x, self.budget)
        raise ValueError(f"{x} is not covered by any block")

    def inverse(self) -> "EquivariantGlue":
        return EquivariantGlue(tuple(b.inverted() for b in self.blocks), self.budget)

    def inverse_value(self, y):
        return self.inverse()(y)
