"""Picard group of genuine C_{p^n}-Z-modules and the map from virtual representations.

Coordinates ``(beta, gamma)`` live in

    P~ = Z^{n+1} (+) (Z/p^n)^x (+) (Z/p^{n-1})^x (+) ... (+) (Z/p)^x,

with gamma_s taken modulo p^{n-s+1}.  The Picard group is P~ modulo the sign
subgroup {+-1} in each unit slot.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd

from .complexes import FinGenAb


class OddPrimeRequired(ValueError):
    """Raised for p = 2: the Picard and representation formulas assume p odd."""


def _require_odd(p: int):
    if p == 2:
        raise OddPrimeRequired("p = 2 is not supported: the Picard group description assumes p odd")


def slot_modulus(p: int, n: int, s: int) -> int:
    """Modulus p^{n-s+1} of the s-th unit slot (1 <= s <= n)."""
    return p ** (n - s + 1)


@dataclass(frozen=True)
class PicCoord:
    p: int
    n: int
    beta: tuple
    gamma: tuple

    def __post_init__(self):
        _require_odd(self.p)
        beta = tuple(int(b) for b in self.beta)
        if len(beta) != self.n + 1:
            raise ValueError(f"beta needs {self.n + 1} entries, got {len(beta)}")
        if len(self.gamma) != self.n:
            raise ValueError(f"gamma needs {self.n} entries, got {len(self.gamma)}")
        gamma = []
        for s, g in enumerate(self.gamma, start=1):
            mod = slot_modulus(self.p, self.n, s)
            g = int(g) % mod
            if gcd(g, self.p) != 1:
                raise ValueError(f"gamma_{s} = {g} is not a unit modulo {mod}")
            gamma.append(g)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", tuple(gamma))

    @classmethod
    def unit(cls, p: int, n: int) -> "PicCoord":
        return cls(p, n, (0,) * (n + 1), (1,) * n)

    @classmethod
    def suspension(cls, p: int, n: int, k: int = 1) -> "PicCoord":
        """The coordinates of the k-fold suspension of the unit (beta_0 = k)."""
        return cls(p, n, (k,) + (0,) * n, (1,) * n)

    def beta_le(self, i: int) -> int:
        """beta_0 + 2 (beta_1 + ... + beta_i)."""
        return self.beta[0] + 2 * sum(self.beta[1:i + 1])

    def __str__(self):
        return format_pic(self)


def _check_same(a: PicCoord, b: PicCoord):
    if (a.p, a.n) != (b.p, b.n):
        raise ValueError(f"coordinates for different groups: (p,n) = {(a.p, a.n)} vs {(b.p, b.n)}")


def pic_add(a: PicCoord, b: PicCoord) -> PicCoord:
    _check_same(a, b)
    return PicCoord(a.p, a.n, tuple(x + y for x, y in zip(a.beta, b.beta)),
                    tuple(x * y for x, y in zip(a.gamma, b.gamma)))


def pic_neg(a: PicCoord) -> PicCoord:
    return PicCoord(a.p, a.n, tuple(-x for x in a.beta),
                    tuple(pow(g, -1, slot_modulus(a.p, a.n, s)) for s, g in enumerate(a.gamma, start=1)))


def reduce_to_P(a: PicCoord) -> PicCoord:
    """Canonical representative modulo gamma_s -> -gamma_s: the smaller residue wins."""
    gamma = []
    for s, g in enumerate(a.gamma, start=1):
        mod = slot_modulus(a.p, a.n, s)
        gamma.append(min(g, mod - g))
    return PicCoord(a.p, a.n, a.beta, tuple(gamma))


def pic_equal(a: PicCoord, b: PicCoord) -> bool:
    """Whether two coordinates present the same Picard element."""
    return reduce_to_P(a) == reduce_to_P(b)


def format_pic(a: PicCoord) -> str:
    return ",".join(str(b) for b in a.beta) + ";" + ",".join(str(g) for g in a.gamma)


def parse_pic(text: str, p: int, n: int) -> PicCoord:
    """Parse ``"b0,b1,...,bn;g1,...,gn"``."""
    if ";" not in text:
        raise ValueError(f"expected 'b0,...,bn;g1,...,gn', got {text!r}")
    left, right = text.split(";", 1)
    beta = [int(x) for x in left.split(",") if x.strip()]
    gamma = [int(x) for x in right.split(",") if x.strip()]
    return PicCoord(p, n, tuple(beta), tuple(gamma))


def pic_structure(p: int, n: int) -> tuple[str, FinGenAb]:
    """The Picard group as a formal sum and as invariant factors."""
    _require_odd(p)
    slots = [f"(Z/{p ** (n - s + 1)})^×/{{±1}}" for s in range(1, n + 1)]
    orders = [p ** (n - s) * (p - 1) // 2 for s in range(1, n + 1)]
    group = FinGenAb.from_orders(n + 1, orders)
    formal = " ⊕ ".join([f"Z^{n + 1}"] + slots)
    parts = [f"Z^{n + 1}"] + [f"Z/{d}" for d in group.torsion]
    return f"{formal} ≅ {' ⊕ '.join(parts)}", group


# ---------------------------------------------------------------------------
# representations


def vp_split(j: int, p: int, n: int) -> tuple[int, int]:
    """(k, gamma) with j = p^k gamma, p not dividing gamma; gamma is read modulo p^{n-k}."""
    if not 1 <= j < p ** n:
        raise ValueError(f"rho_j needs 1 <= j < {p ** n}, got j = {j}")
    k = 0
    while j % p == 0:
        j //= p
        k += 1
    return k, j % p ** (n - k)


@dataclass(frozen=True)
class VirtualRep:
    """m_triv copies of the trivial real line plus m[j] copies of each rho_j."""

    p: int
    n: int
    m_triv: int = 0
    m: tuple = field(default_factory=tuple)  # sorted (j, multiplicity) pairs

    def __post_init__(self):
        merged: dict[int, int] = {}
        for j, mult in self.m:
            vp_split(j, self.p, self.n)
            merged[j] = merged.get(j, 0) + int(mult)
        object.__setattr__(self, "m", tuple(sorted((j, c) for j, c in merged.items() if c)))

    @property
    def dim(self) -> int:
        return self.m_triv + 2 * sum(c for _, c in self.m)

    def is_actual(self) -> bool:
        return self.m_triv >= 0 and all(c >= 0 for _, c in self.m)

    def __add__(self, other: "VirtualRep") -> "VirtualRep":
        return VirtualRep(self.p, self.n, self.m_triv + other.m_triv, self.m + other.m)

    def __str__(self):
        parts = []
        if self.m_triv:
            parts.append(f"triv*{self.m_triv}")
        parts += [f"rho({j})*{c}" for j, c in self.m]
        return ", ".join(parts) if parts else "0"


_TERM = re.compile(r"^\s*(triv|rho\(\s*(\d+)\s*\))\s*(?:\*\s*(-?\d+))?\s*$")


def parse_rep(text: str, p: int, n: int) -> VirtualRep:
    """Parse ``"triv*m, rho(j)*m, ..."``; a missing ``*m`` means multiplicity one."""
    m_triv = 0
    m = []
    if text.strip() in ("", "0"):
        return VirtualRep(p, n)
    for term in text.split(","):
        hit = _TERM.match(term)
        if not hit:
            raise ValueError(f"cannot parse representation term {term.strip()!r}")
        mult = int(hit.group(3)) if hit.group(3) is not None else 1
        if hit.group(1) == "triv":
            m_triv += mult
        else:
            m.append((int(hit.group(2)), mult))
    return VirtualRep(p, n, m_triv, tuple(m))


def rep_to_pic(V: VirtualRep) -> PicCoord:
    p, n = V.p, V.n
    _require_odd(p)
    beta = [V.m_triv] + [0] * n
    gamma = [1] * n
    for j, mult in V.m:
        k, g = vp_split(j, p, n)
        mod = slot_modulus(p, n, k + 1)
        beta[0] += 2 * mult
        beta[k + 1] -= mult
        gamma[k] = gamma[k] * pow(g, mult, mod) % mod
    return PicCoord(p, n, tuple(beta), tuple(gamma))


# ---------------------------------------------------------------------------
# the monoid of potential Picard elements


@dataclass(frozen=True)
class MonoidElt:
    """(alpha, gamma) with alpha in Z^{n+1}, gamma_s in Z/p^{n-s+1}; alpha_s odd forces gamma_s = 0.

    The law adds alphas and multiplies gammas.
    """

    p: int
    n: int
    alpha: tuple
    gamma: tuple

    def __post_init__(self):
        if len(self.alpha) != self.n + 1 or len(self.gamma) != self.n:
            raise ValueError("wrong number of coordinates")
        gamma = tuple(int(g) % slot_modulus(self.p, self.n, s) for s, g in enumerate(self.gamma, start=1))
        object.__setattr__(self, "gamma", gamma)
        for s in range(1, self.n + 1):
            if self.alpha[s] % 2 and gamma[s - 1]:
                raise ValueError(f"alpha_{s} is odd, so gamma_{s} must vanish")

    def __add__(self, other: "MonoidElt") -> "MonoidElt":
        return MonoidElt(self.p, self.n, tuple(a + b for a, b in zip(self.alpha, other.alpha)),
                         tuple(a * b for a, b in zip(self.gamma, other.gamma)))

    def is_invertible(self) -> bool:
        """Invertible exactly when every alpha_s (s >= 1) is even and every gamma_s is a unit."""
        return all(a % 2 == 0 for a in self.alpha[1:]) and all(
            gcd(g, self.p) == 1 for g in self.gamma)
