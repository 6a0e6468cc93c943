"""Brute-force oracle: Bredon cohomology of representation spheres with constant Z coefficients.

The reduced cellular chains of S^V are built as complexes of permutation
modules.  Every cell's stabilizer fixes it pointwise, so the chains of the
orbit space X/C_{p^a} are the C_{p^a}-coinvariants, obtained by summing basis
elements over orbits.  Bredon cohomology with constant coefficients is the
cohomology of the orbit space.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .complexes import (ChainMap, FinGenAb, Homomorphism, LazyComplex, homology_at,
                        induced_on_homology)
from .groupring import CyclicGroupCtx, GroupRingMatrix
from .linalg import zeros
from .picard import VirtualRep, vp_split


@dataclass(frozen=True)
class EqCellComplex:
    """A bounded complex of permutation Z[C_{p^n}]-modules.

    Per degree ``k``: ``perm[k][b]`` is the image of basis cell ``b`` under the
    generator sigma, and ``stab[k][b]`` is the exponent e with stabilizer
    C_{p^e}.  ``diff[k]`` is the integer differential out of degree ``k``.
    """

    p: int
    n: int
    top: int
    perm: tuple
    stab: tuple
    diff: tuple

    def rank(self, k: int) -> int:
        return len(self.perm[k]) if 0 <= k <= self.top else 0

    def d(self, k: int) -> np.ndarray:
        """Differential out of degree k as a rank(k-1) x rank(k) integer matrix."""
        if 1 <= k <= self.top:
            return self.diff[k]
        return zeros(self.rank(k - 1), self.rank(k))

    def underlying(self) -> LazyComplex:
        return _as_lazy(self.p, lambda k: self.rank(k), self.d, 0, self.top, "S^V")

    def check_equivariant(self) -> None:
        """d commutes with the permutation action and squares to zero."""
        for k in range(1, self.top + 1):
            D = self.d(k)
            P_src, P_tgt = _perm_matrix(self.perm[k]), _perm_matrix(self.perm[k - 1])
            if any(x != 0 for x in (P_tgt.dot(D) - D.dot(P_src)).flat):
                raise ArithmeticError(f"differential out of degree {k} is not equivariant")
            if k >= 2 and any(x != 0 for x in self.d(k - 1).dot(D).flat):
                raise ArithmeticError(f"d^2 != 0 out of degree {k}")

    def fixed_subcomplex(self, a: int) -> LazyComplex:
        """Cells fixed by C_{p^a}: those with stabilizer exponent >= a."""
        keep = [[b for b, e in enumerate(self.stab[k]) if e >= a] for k in range(self.top + 1)]

        def d(k):
            D = self.d(k)
            return D[np.ix_(keep[k - 1], keep[k])]

        return _as_lazy(self.p, lambda k: len(keep[k]) if 0 <= k <= self.top else 0, d, 0, self.top,
                        f"(S^V)^C_{self.p}^{a}")


def _perm_matrix(perm) -> np.ndarray:
    m = len(perm)
    out = zeros(m, m)
    for b, c in enumerate(perm):
        out[c, b] = 1
    return out


def _as_lazy(p, rank, diff, lo, hi, name) -> LazyComplex:
    z = CyclicGroupCtx(p, 0)
    return LazyComplex(z, rank, lambda k: GroupRingMatrix.from_int(z, diff(k)), lo, hi, name=name)


def _sphere_of_line(p: int, n: int, j: int) -> EqCellComplex:
    """Reduced chains of S^{rho_j}: Z[C_m] -> Z[C_m] -> Z in degrees 2, 1, 0 with m = p^{n-k}.

    Vertices v_t and arcs a_t (from v_t to v_{t+1}) are indexed by t mod m;
    sigma rotates by gamma, so the arc-shift t -> t+1 is sigma^{gamma^{-1}}.
    """
    k, gamma = vp_split(j, p, n)
    m = p ** (n - k)
    perm = tuple((t + gamma) % m for t in range(m))
    d2 = zeros(m, m)
    for t in range(m):
        d2[(t + 1) % m, t] += 1
        d2[t, t] -= 1
    d1 = zeros(1, m)
    d1[0, :] = 1
    return EqCellComplex(p, n, 2, ((0,), perm, perm), ((n,), (k,) * m, (k,) * m),
                         (None, d1, d2))


def _trivial_sphere(p: int, n: int, dim: int) -> EqCellComplex:
    """Z concentrated in degree ``dim`` with trivial action."""
    perm = tuple(() for _ in range(dim)) + ((0,),)
    stab = tuple(() for _ in range(dim)) + ((n,),)
    diff = tuple([None] + [zeros(0, 1 if k == dim else 0) for k in range(1, dim + 1)])
    return EqCellComplex(p, n, dim, perm, stab, diff)


def smash(X: EqCellComplex, Y: EqCellComplex) -> EqCellComplex:
    """Tensor product of reduced chains with diagonal action and Koszul signs."""
    if (X.p, X.n) != (Y.p, Y.n):
        raise ValueError("smash of complexes for different groups")
    top = X.top + Y.top
    index = []   # per degree: list of (i, x, y) with x in X_i, y in Y_{deg-i}
    for deg in range(top + 1):
        cells = []
        for i in range(max(0, deg - Y.top), min(X.top, deg) + 1):
            for x in range(X.rank(i)):
                for y in range(Y.rank(deg - i)):
                    cells.append((i, x, y))
        index.append(cells)
    lookup = [{c: b for b, c in enumerate(cells)} for cells in index]
    perm = tuple(tuple(lookup[deg][(i, X.perm[i][x], Y.perm[deg - i][y])] for (i, x, y) in index[deg])
                 for deg in range(top + 1))
    stab = tuple(tuple(min(X.stab[i][x], Y.stab[deg - i][y]) for (i, x, y) in index[deg])
                 for deg in range(top + 1))
    diff = [None]
    for deg in range(1, top + 1):
        D = zeros(len(index[deg - 1]), len(index[deg]))
        for col, (i, x, y) in enumerate(index[deg]):
            if i >= 1:
                dx = X.d(i)
                for x2 in range(X.rank(i - 1)):
                    if dx[x2, x]:
                        D[lookup[deg - 1][(i - 1, x2, y)], col] += dx[x2, x]
            q = deg - i
            if q >= 1:
                dy = Y.d(q)
                sign = -1 if i % 2 else 1
                for y2 in range(Y.rank(q - 1)):
                    if dy[y2, y]:
                        D[lookup[deg - 1][(i, x, y2)], col] += sign * dy[y2, y]
        diff.append(D)
    return EqCellComplex(X.p, X.n, top, perm, stab, tuple(diff))


def _require_actual(V: VirtualRep):
    if not V.is_actual():
        raise ValueError(f"the oracle needs an actual representation, got {V}")


@lru_cache(maxsize=None)
def rep_sphere_chains(p: int, n: int, V: VirtualRep) -> EqCellComplex:
    """Reduced cellular chains of the representation sphere S^V."""
    if (V.p, V.n) != (p, n):
        raise ValueError("representation belongs to a different group")
    _require_actual(V)
    out = _trivial_sphere(p, n, V.m_triv)
    for j, mult in V.m:
        for _ in range(mult):
            out = smash(out, _sphere_of_line(p, n, j))
    return out


# ---------------------------------------------------------------------------
# orbit spaces


def _orbits(perm: tuple, step: int) -> tuple[list, list]:
    """Orbits of perm^step on the basis: (orbit id per cell, representatives)."""
    label = [-1] * len(perm)
    reps = []
    for b in range(len(perm)):
        if label[b] >= 0:
            continue
        c = b
        while label[c] < 0:
            label[c] = len(reps)
            for _ in range(step):
                c = perm[c]
        reps.append(b)
    return label, reps


@lru_cache(maxsize=None)
def _orbit_data(p: int, n: int, V: VirtualRep, a: int):
    X = rep_sphere_chains(p, n, V)
    step = p ** (n - a)
    labels, reps = zip(*[_orbits(X.perm[k], step) for k in range(X.top + 1)])
    return X, labels, reps


def orbit_chains(p: int, n: int, a: int, V: VirtualRep) -> tuple[list, list]:
    """Chains of S^V / C_{p^a}: per-degree ranks and differentials."""
    if not 0 <= a <= n:
        raise ValueError(f"need 0 <= a <= n, got a = {a}")
    X, labels, reps = _orbit_data(p, n, V, a)
    ranks = [len(r) for r in reps]
    diffs = [None]
    for k in range(1, X.top + 1):
        D = X.d(k)
        Dq = zeros(ranks[k - 1], ranks[k])
        for o, b in enumerate(reps[k]):
            for c in range(X.rank(k - 1)):
                if D[c, b]:
                    Dq[labels[k - 1][c], o] += D[c, b]
        diffs.append(Dq)
    return ranks, diffs


@lru_cache(maxsize=None)
def orbit_cochains(p: int, n: int, a: int, V: VirtualRep) -> LazyComplex:
    """Cochains of the orbit space placed in degree -i, so H^i = H_{-i}."""
    ranks, diffs = orbit_chains(p, n, a, V)
    top = len(ranks) - 1

    def d(deg):
        i = -deg   # out of degree -i into degree -i-1: transpose of d_{i+1}
        return diffs[i + 1].T.copy()

    return _as_lazy(p, lambda deg: ranks[-deg] if 0 <= -deg <= top else 0, d, -top, 0,
                    f"C^*(S^V/C_{p}^{a})")


def orbit_cohomology(p: int, n: int, a: int, V: VirtualRep, i: int) -> FinGenAb:
    """Reduced H^i of the orbit space S^V / C_{p^a}."""
    return homology_at(orbit_cochains(p, n, a, V), -i)


@lru_cache(maxsize=None)
def _orbit_projection(p: int, n: int, a: int, V: VirtualRep) -> ChainMap:
    """Pullback along X/C_{p^a} -> X/C_{p^{a+1}} on cochains."""
    X, lab_small, reps_small = _orbit_data(p, n, V, a)
    _, lab_big, reps_big = _orbit_data(p, n, V, a + 1)
    src = orbit_cochains(p, n, a + 1, V)
    dst = orbit_cochains(p, n, a, V)

    def comp(deg):
        i = -deg
        P = zeros(len(reps_big[i]), len(reps_small[i]))
        for o, b in enumerate(reps_small[i]):
            P[lab_big[i][b], o] = 1
        return GroupRingMatrix.from_int(src.ctx, P.T.copy())

    return ChainMap(src, dst, comp, name="orbit-pullback")


def oracle_inclusion(p: int, n: int, a: int, V: VirtualRep, i: int) -> Homomorphism:
    """Restriction H^i(S^V / C_{p^{a+1}}) -> H^i(S^V / C_{p^a})."""
    if not 0 <= a < n:
        raise ValueError(f"inclusion needs 0 <= a < n, got a = {a}, n = {n}")
    return induced_on_homology(_orbit_projection(p, n, a, V), -i)


def fixed_dimension(V: VirtualRep, a: int) -> int:
    """dim V^{C_{p^a}}: rho_j is fixed exactly when C_{p^a} lies in its kernel C_{p^k}."""
    out = V.m_triv
    for j, mult in V.m:
        k, _ = vp_split(j, V.p, V.n)
        if a <= k:
            out += 2 * mult
    return out


def oracle_table(p: int, n: int, V: VirtualRep, window: tuple) -> dict:
    """{(a, i): FinGenAb} for every level and degree in the window."""
    lo, hi = window
    keys = [(a, i) for a in range(n + 1) for i in range(lo, hi + 1)]
    rep_sphere_chains(p, n, V)
    from .cohomology import _threads
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        values = list(pool.map(lambda key: orbit_cohomology(p, n, key[0], V, key[1]), keys))
    return dict(zip(keys, values))
