"""Explicit chain complexes over Z[C_{p^r}] and the chain-level maps between them.

Every complex here has rank 0 or 1 in each degree, so differentials and map
components are single group-ring elements:

=========  ==================  ==========================================
name       support             differential out of degree n
=========  ==================  ==========================================
Z^a_r      n <= 0              1 - sigma (n even), p^a N (n odd)
C^i_r      all n               1 - sigma (n even), p^{i+1} N (n odd > 0),
                               p^i N (n odd <= 0)
T^i_r      all n               1 - sigma (n even), p^{i+1} N (n odd)
_iS_r      n >= 0              1 - sigma (n odd), p^i N (n even)
=========  ==================  ==========================================

Complexes are memoized, so asking twice for the same one returns the same
object; zigzag assembly relies on this identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .complexes import (ChainHomotopy, ChainMap, LazyComplex, compose, cone, cp_fixedpoints,
                        shift, triv)
from .groupring import (CyclicGroupCtx, GroupRingElt, GroupRingMatrix, norm_elt, one_minus_sigma,
                        orbit_sum_matrix, quotient_matrix)
from .linalg import zeros

KINDS = ("Z", "C", "T", "S", "Ctilde")


@dataclass(frozen=True)
class CatalogId:
    kind: str
    index: int
    p: int
    r: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown catalog complex {self.kind!r}; expected one of {KINDS}")
        if self.index < 0 or self.r < 0:
            raise ValueError("catalog indices must be nonnegative")


def _one(ctx, x) -> GroupRingMatrix:
    return GroupRingMatrix.from_entries(ctx, [[x]])


def _scalar_map(source: LazyComplex, target: LazyComplex, fn, name: str) -> ChainMap:
    """Map between rank <= 1 complexes whose degree-n component is the integer ``fn(n)``."""
    return ChainMap(source, target, lambda n: _one(source.ctx, fn(n)), name=name)


def build_complex(cid: CatalogId) -> LazyComplex:
    return _build(cid.kind, cid.index, cid.p, cid.r)


@lru_cache(maxsize=None)
def _build(kind: str, index: int, p: int, r: int) -> LazyComplex:
    ctx = CyclicGroupCtx(p, r)
    if kind == "Ctilde":
        return cone(gen_norm(p, r))
    d = one_minus_sigma(ctx)
    N = norm_elt(ctx)
    label = f"{kind}^{index}_{r}"
    if kind == "Z":
        def diff(n):
            return _one(ctx, d if n % 2 == 0 else N * p ** index)
        return LazyComplex(ctx, lambda n: 1, diff, hi=0, name=label)
    if kind == "C":
        def diff(n):
            if n % 2 == 0:
                return _one(ctx, d)
            return _one(ctx, N * p ** (index + 1 if n > 0 else index))
        return LazyComplex(ctx, lambda n: 1, diff, name=label)
    if kind == "T":
        def diff(n):
            return _one(ctx, d if n % 2 == 0 else N * p ** (index + 1))
        return LazyComplex(ctx, lambda n: 1, diff, name=label)
    # kind == "S"
    def diff(n):
        return _one(ctx, d if n % 2 else N * p ** index)
    return LazyComplex(ctx, lambda n: 1, diff, lo=0, name=f"_{index}S_{r}")


def Zc(a, p, r):
    return _build("Z", a, p, r)


def Cc(i, p, r):
    return _build("C", i, p, r)


def Tc(i, p, r):
    return _build("T", i, p, r)


def Sc(i, p, r):
    return _build("S", i, p, r)


def Chat(p, r):
    return _build("Ctilde", 0, p, r)


# ---------------------------------------------------------------------------
# maps


def map_q(a: int, p: int, r: int) -> ChainMap:
    """Z^a_r -> T^{a-1}_r, the identity in nonpositive degrees."""
    if a < 1:
        raise ValueError("map_q needs a >= 1")
    return _scalar_map(Zc(a, p, r), Tc(a - 1, p, r), lambda n: 1, f"q^{a - 1}_{r}")


def map_e(i: int, p: int, r: int) -> ChainMap:
    """C^i_r -> T^i_r: 1 in positive degrees, p^{floor(j/2)} in degree -j."""
    return _scalar_map(Cc(i, p, r), Tc(i, p, r),
                       lambda n: 1 if n > 0 else p ** ((-n) // 2), f"e^{i}_{r}")


def map_g(i: int, p: int, r: int) -> ChainMap:
    """C^{i+1}_r -> T^i_r: 1 in negative degrees, p^{ceil(j/2)} in degree j >= 0."""
    return _scalar_map(Cc(i + 1, p, r), Tc(i, p, r),
                       lambda n: 1 if n < 0 else p ** ((n + 1) // 2), f"g^{i}_{r}")


def map_c(i: int, p: int, r: int, power: int = 1) -> ChainMap:
    """T^i_r -> shift(T^i_r, 2*power), the identity in every degree.

    T^i_r is 2-periodic and an even shift does not change signs, so the identity
    components form an isomorphism for every integer ``power``.
    """
    T = Tc(i, p, r)
    return _scalar_map(T, shift(T, 2 * power), lambda n: 1, f"c^{power}")


def gen_norm(p: int, r: int) -> ChainMap:
    """_1S_r -> _0S_r with component p^{floor(m/2)+1} in degree m.

    This presents the norm Z_{hC_p} -> Z, which is multiplication by p on H_0.
    """
    return _scalar_map(Sc(1, p, r), Sc(0, p, r), lambda m: p ** (m // 2 + 1), "genNm")


def map_i(p: int, r: int) -> ChainMap:
    """_0S_r -> Z^0_r, the norm element in degree 0 and zero elsewhere."""
    ctx = CyclicGroupCtx(p, r)
    N = norm_elt(ctx)
    return _scalar_map(Sc(0, p, r), Zc(0, p, r), lambda n: N if n == 0 else 0, "i")


def cone_map(a: ChainMap, b: ChainMap, source: LazyComplex, target: LazyComplex) -> ChainMap:
    """Cone(f) -> Cone(f2) induced by a commutative square f2 a = b f.

    ``source`` and ``target`` are the two cones; the components are a (+) b.
    """
    def comp(n):
        am, bm = a.comp(n - 1), b.comp(n)
        out = GroupRingMatrix.zero(a.ctx, am.rows + bm.rows, am.cols + bm.cols)
        out.coeffs[:am.rows, :am.cols, :] = am.coeffs
        out.coeffs[am.rows:, am.cols:, :] = bm.coeffs
        return out

    return ChainMap(source, target, comp, name="cone-map")


@lru_cache(maxsize=None)
def cone_dictionary(p: int, r: int) -> ChainMap:
    """The identification Cone(i o genNm) = C^0_r, identity in every degree.

    Cone(i o genNm) has the summand _1S_{n-1} in degrees n >= 1 and Z^0_n in
    degrees n <= 0, each of rank one, and its differentials coincide with those
    of C^0_r; the chain-map check on this map is what certifies that.
    """
    composite = compose(map_i(p, r), gen_norm(p, r), name="i o genNm")
    K = cone(composite)
    return _scalar_map(K, Cc(0, p, r), lambda n: 1, "dict")


@lru_cache(maxsize=None)
def map_k(p: int, r: int) -> ChainMap:
    """Chat_r -> C^0_r, induced on cones by (id, i) and then the dictionary."""
    S1 = Sc(1, p, r)
    ident = _scalar_map(S1, S1, lambda n: 1, "id")
    dictionary = cone_dictionary(p, r)
    induced = cone_map(ident, map_i(p, r), Chat(p, r), dictionary.source)
    return compose(dictionary, induced, name=f"k_{r}")


# ---------------------------------------------------------------------------
# transfer, inclusion and the nullhomotopy


def _blockdiag(block, copies: int):
    rows, cols = block.shape
    out = zeros(rows * copies, cols * copies)
    for t in range(copies):
        out[t * rows:(t + 1) * rows, t * cols:(t + 1) * cols] = block
    return out


def trf_map(X: LazyComplex, Y: LazyComplex | None = None) -> ChainMap:
    """X -> triv(X^{C_p}): coordinatewise sigma^j -> sigma-bar^j.

    ``Y`` may name the level r-1 complex that plays the role of X^{C_p} (for
    instance the catalog complex with raised superscript); the chain-map check
    confirms it agrees with the fixed points.
    """
    Y = Y if Y is not None else cp_fixedpoints(X)
    target = triv(Y, X.ctx)
    z = target.ctx
    Q = quotient_matrix(X.ctx)
    return ChainMap(X.underlying(), target,
                    lambda n: GroupRingMatrix.from_int(z, _blockdiag(Q, X.rank(n))), name="trf")


def inc_map(X: LazyComplex, Y: LazyComplex | None = None) -> ChainMap:
    """triv(X^{C_p}) -> X: coordinatewise sigma-bar^j -> sigma^j N_1."""
    Y = Y if Y is not None else cp_fixedpoints(X)
    source = triv(Y, X.ctx)
    z = source.ctx
    M = orbit_sum_matrix(X.ctx)
    return ChainMap(source, X.underlying(),
                    lambda n: GroupRingMatrix.from_int(z, _blockdiag(M, X.rank(n))), name="inc")


@lru_cache(maxsize=None)
def transfer_composite(p: int, r: int) -> ChainMap:
    """g^0_{r-1} o trf o k : Chat_r -> triv(T^0_{r-1}) on underlying integer complexes."""
    k = map_k(p, r)
    trf = trf_map(Cc(0, p, r), Cc(1, p, r - 1))
    return compose(map_g(0, p, r - 1).underlying(), compose(trf, k.underlying()), name="g trf k")


@lru_cache(maxsize=None)
def homotopy_h(p: int, r: int) -> ChainHomotopy:
    """Nullhomotopy of g^0_{r-1} o trf o k.

    h_n = 0 for n < 0; in degree n >= 0 it projects Chat_n = _1S_{n-1} + _0S_n
    to the second summand and applies the quotient map, with sign (-1)^n.
    """
    if r < 1:
        raise ValueError("the nullhomotopy needs r >= 1")
    f = transfer_composite(p, r)
    ctx = CyclicGroupCtx(p, r)
    z = ctx.trivial()
    Q = quotient_matrix(ctx)
    m = ctx.quotient().order

    def h(n):
        sign = -1 if n % 2 else 1
        if n == 0:
            return GroupRingMatrix.from_int(z, Q * sign)
        out = zeros(m, 2 * ctx.order)
        out[:, ctx.order:] = Q * sign
        return GroupRingMatrix.from_int(z, out)

    return ChainHomotopy(f, None, h, name=f"h_{r}")


@lru_cache(maxsize=None)
def homotopy_h_orbits(p: int, r: int) -> ChainHomotopy:
    """Nullhomotopy of q^0_{r-1} o trf o i on _0S_r: (-1)^n times the quotient map."""
    i = map_i(p, r)
    trf = trf_map(Zc(0, p, r), Zc(1, p, r - 1))
    f = compose(map_q(1, p, r - 1).underlying(), compose(trf, i.underlying()), name="q trf i")
    ctx = CyclicGroupCtx(p, r)
    z = ctx.trivial()
    Q = quotient_matrix(ctx)
    return ChainHomotopy(f, None, lambda n: GroupRingMatrix.from_int(z, Q * (-1 if n % 2 else 1)),
                         name=f"h^S_{r}")
