"""Group rings Z[C_{p^r}] of cyclic p-groups and matrices over them.

An element is a dense coefficient vector: entry ``i`` is the coefficient of
sigma^i.  A matrix stores its coefficients as an object array of shape
``(rows, cols, p^r)``.  Expanding to the underlying free abelian group uses the
basis 1, sigma, sigma^2, ... of each summand and left multiplication, so the
column of sigma^j in the block of ``x`` is the coefficient vector of x * sigma^j.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .linalg import matmul, zeros

MAX_ORDER = int(os.environ.get("CYCLIC_MACKEY_MAX_ORDER", "4096"))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class CyclicGroupCtx:
    """The cyclic group C_{p^r} with a fixed generator sigma."""

    p: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.r < 0:
            raise ValueError(f"r = {self.r} must be nonnegative")
        if self.p ** self.r > MAX_ORDER:
            raise ValueError(f"group order {self.p}^{self.r} exceeds the limit {MAX_ORDER}")

    @property
    def order(self) -> int:
        return self.p ** self.r

    def quotient(self) -> "CyclicGroupCtx":
        if self.r == 0:
            raise ValueError("the trivial group has no C_p quotient")
        return CyclicGroupCtx(self.p, self.r - 1)

    def trivial(self) -> "CyclicGroupCtx":
        return CyclicGroupCtx(self.p, 0)

    def __str__(self):
        return f"C_{self.p}^{self.r}"


@dataclass(frozen=True)
class GroupRingElt:
    ctx: CyclicGroupCtx
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.ctx.order:
            raise ValueError(f"expected {self.ctx.order} coefficients, got {len(self.coeffs)}")

    @classmethod
    def scalar(cls, ctx: CyclicGroupCtx, c: int) -> "GroupRingElt":
        return cls(ctx, (c,) + (0,) * (ctx.order - 1))

    @classmethod
    def group_element(cls, ctx: CyclicGroupCtx, k: int) -> "GroupRingElt":
        v = [0] * ctx.order
        v[k % ctx.order] = 1
        return cls(ctx, tuple(v))

    def _check(self, other: "GroupRingElt"):
        if self.ctx != other.ctx:
            raise ValueError(f"group ring mismatch: {self.ctx} vs {other.ctx}")

    def __add__(self, other):
        if isinstance(other, int):
            other = GroupRingElt.scalar(self.ctx, other)
        self._check(other)
        return GroupRingElt(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElt(self.ctx, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = GroupRingElt.scalar(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElt(self.ctx, tuple(other * a for a in self.coeffs))
        return ring_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def augmentation(self) -> int:
        return sum(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*s^{i}")
        return " + ".join(terms) if terms else "0"


def norm_elt(ctx: CyclicGroupCtx) -> GroupRingElt:
    """The norm element: the sum of all group elements."""
    return GroupRingElt(ctx, (1,) * ctx.order)


def one_minus_sigma(ctx: CyclicGroupCtx) -> GroupRingElt:
    return GroupRingElt.scalar(ctx, 1) - GroupRingElt.group_element(ctx, 1)


def ring_mul(a: GroupRingElt, b: GroupRingElt) -> GroupRingElt:
    a._check(b)
    m = a.ctx.order
    out = [0] * m
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    out[(i + j) % m] += x * y
    return GroupRingElt(a.ctx, tuple(out))


def quotient_map(x: GroupRingElt) -> GroupRingElt:
    """The ring map Z[C_{p^r}] -> Z[C_{p^{r-1}}] sending sigma to the quotient generator."""
    q = x.ctx.quotient()
    m = q.order
    out = [0] * m
    for i, c in enumerate(x.coeffs):
        out[i % m] += c
    return GroupRingElt(q, tuple(out))


def _circulant_index(m: int) -> np.ndarray:
    k = np.arange(m).reshape(m, 1)
    l = np.arange(m).reshape(1, m)
    return (k - l) % m


class GroupRingMatrix:
    """A rows x cols matrix over Z[C_{p^r}]."""

    def __init__(self, ctx: CyclicGroupCtx, coeffs: np.ndarray):
        if coeffs.ndim != 3 or coeffs.shape[2] != ctx.order:
            raise ValueError(f"coefficient array of shape {coeffs.shape} does not fit {ctx}")
        self.ctx = ctx
        self.coeffs = coeffs

    @property
    def rows(self) -> int:
        return self.coeffs.shape[0]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[:2]

    @classmethod
    def zero(cls, ctx: CyclicGroupCtx, rows: int, cols: int) -> "GroupRingMatrix":
        c = np.empty((rows, cols, ctx.order), dtype=object)
        c.fill(0)
        return cls(ctx, c)

    @classmethod
    def from_entries(cls, ctx: CyclicGroupCtx, entries) -> "GroupRingMatrix":
        """Build from a nested list of GroupRingElt or int entries."""
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        out = cls.zero(ctx, rows, cols)
        for i, row in enumerate(entries):
            for j, e in enumerate(row):
                if isinstance(e, int):
                    out.coeffs[i, j, 0] = e
                else:
                    if e.ctx != ctx:
                        raise ValueError("entry from a different group ring")
                    out.coeffs[i, j, :] = e.coeffs
        return out

    @classmethod
    def from_int(cls, ctx: CyclicGroupCtx, m: np.ndarray) -> "GroupRingMatrix":
        """Scalar matrix: integer entries placed on the identity coefficient."""
        out = cls.zero(ctx, m.shape[0], m.shape[1])
        out.coeffs[:, :, 0] = m
        return out

    @classmethod
    def identity(cls, ctx: CyclicGroupCtx, n: int, scale: int = 1) -> "GroupRingMatrix":
        out = cls.zero(ctx, n, n)
        for i in range(n):
            out.coeffs[i, i, 0] = scale
        return out

    def entry(self, i: int, j: int) -> GroupRingElt:
        return GroupRingElt(self.ctx, tuple(self.coeffs[i, j, :]))

    def __matmul__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        if self.ctx != other.ctx:
            raise ValueError(f"group ring mismatch: {self.ctx} vs {other.ctx}")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        m = self.ctx.order
        if m == 1:
            return GroupRingMatrix(self.ctx, _dot(self.coeffs[:, :, 0], other.coeffs[:, :, 0])[:, :, None])
        # the coefficient vector of a*b is circulant(a) @ coeffs(b)
        stacked = other.coeffs.transpose(0, 2, 1).reshape(other.rows * m, other.cols)
        prod = _dot(expand_to_Z(self), stacked)
        return GroupRingMatrix(self.ctx, prod.reshape(self.rows, m, other.cols).transpose(0, 2, 1).copy())

    def __add__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        if self.ctx != other.ctx or self.shape != other.shape:
            raise ValueError("incompatible matrices")
        return GroupRingMatrix(self.ctx, self.coeffs + other.coeffs)

    def __sub__(self, other: "GroupRingMatrix") -> "GroupRingMatrix":
        return self + (-other)

    def __neg__(self) -> "GroupRingMatrix":
        return GroupRingMatrix(self.ctx, -self.coeffs)

    def scale(self, c: int) -> "GroupRingMatrix":
        return GroupRingMatrix(self.ctx, self.coeffs * c)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    def __eq__(self, other):
        if not isinstance(other, GroupRingMatrix):
            return NotImplemented
        return (self.ctx == other.ctx and self.shape == other.shape
                and not np.any(self.coeffs != other.coeffs))

    __hash__ = None

    def map_entries(self, fn, ctx: CyclicGroupCtx) -> "GroupRingMatrix":
        out = GroupRingMatrix.zero(ctx, self.rows, self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out.coeffs[i, j, :] = fn(self.entry(i, j)).coeffs
        return out

    def __repr__(self):
        return f"GroupRingMatrix({self.ctx}, {self.rows}x{self.cols})"


def _dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return matmul(a, b)


def expand_to_Z(m) -> np.ndarray:
    """Underlying integer matrix of a group-ring matrix (or of a single element)."""
    if isinstance(m, GroupRingElt):
        m = GroupRingMatrix.from_entries(m.ctx, [[m]])
    k = m.ctx.order
    if k == 1:
        return m.coeffs[:, :, 0].copy()
    blocks = m.coeffs[:, :, _circulant_index(k)]  # (rows, cols, k, k)
    return blocks.transpose(0, 2, 1, 3).reshape(m.rows * k, m.cols * k).copy()


def sigma_action(ctx: CyclicGroupCtx, rank: int) -> np.ndarray:
    """Integer matrix of left multiplication by sigma on Z[C_{p^r}]^rank."""
    return expand_to_Z(GroupRingMatrix.from_entries(
        ctx, [[GroupRingElt.group_element(ctx, 1) if i == j else 0 for j in range(rank)] for i in range(rank)]
    ))


def quotient_matrix(ctx: CyclicGroupCtx) -> np.ndarray:
    """Integer matrix of the quotient map on coordinates: sigma^j goes to sigma-bar^j."""
    q = ctx.quotient()
    out = zeros(q.order, ctx.order)
    for j in range(ctx.order):
        out[j % q.order, j] = 1
    return out


def orbit_sum_matrix(ctx: CyclicGroupCtx) -> np.ndarray:
    """Integer matrix sending sigma-bar^j to sigma^j times the orbit sum of the order-p subgroup."""
    q = ctx.quotient()
    out = zeros(ctx.order, q.order)
    for j in range(q.order):
        for t in range(ctx.p):
            out[j + t * q.order, j] = 1
    return out
