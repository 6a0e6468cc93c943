"""Lazy unbounded chain complexes of free Z[C_{p^r}]-modules and their homology.

Conventions:

* differentials lower degree, ``diff(n): X_n -> X_{n-1}``;
* ``shift(X, k)_n = X_{n-k}`` with every differential multiplied by ``(-1)^k``;
* ``Cone(f)_n = M_{n-1} + N_n`` with differential
  ``[[d^M_{n-1}, 0], [(-1)^(n-1) f_{n-1}, d^N_n]]``;
* ``fiber(f) = shift(Cone(f), -1)``;
* a homotopy ``h`` from ``f`` to ``g`` raises degree by one and satisfies
  ``d h + h d = f - g``.

Homology is always taken of the underlying complex of free abelian groups.
Complexes over the trivial group ring (``r = 0``) double as plain integer
complexes, which is how homotopy limits mixing several levels are represented.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .groupring import CyclicGroupCtx, GroupRingMatrix, expand_to_Z, quotient_map
from .linalg import kernel_basis, matmul, smith_normal_form, zeros


class ChainComplexError(ArithmeticError):
    """A chain-level identity (d^2 = 0, a chain-map square, a homotopy) failed."""


class LazyComplex:
    """Unbounded complex queried degree by degree.

    ``rank_fn(n)`` gives the rank of the free module in degree ``n`` and
    ``diff_fn(n)`` the differential out of degree ``n`` as a
    ``rank(n-1) x rank(n)`` matrix.  ``lo``/``hi`` are advisory support bounds:
    outside them the complex is taken to be zero without calling the functions.
    """

    def __init__(self, ctx: CyclicGroupCtx, rank_fn: Callable[[int], int],
                 diff_fn: Callable[[int], GroupRingMatrix],
                 lo: Optional[int] = None, hi: Optional[int] = None, name: str = ""):
        self.ctx = ctx
        self._rank_fn = rank_fn
        self._diff_fn = diff_fn
        self.lo = lo
        self.hi = hi
        self.name = name
        self._ranks: dict[int, int] = {}
        self._diffs: dict[int, GroupRingMatrix] = {}
        self._zdiffs: dict[int, np.ndarray] = {}
        self._homology: dict[int, "HomologyData"] = {}
        self._underlying: Optional[LazyComplex] = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"LazyComplex({self.name or '?'}, {self.ctx})"

    def in_support(self, n: int) -> bool:
        return (self.lo is None or n >= self.lo) and (self.hi is None or n <= self.hi)

    def rank(self, n: int) -> int:
        if not self.in_support(n):
            return 0
        if n not in self._ranks:
            self._ranks[n] = int(self._rank_fn(n))
        return self._ranks[n]

    def diff(self, n: int) -> GroupRingMatrix:
        if n not in self._diffs:
            rows, cols = self.rank(n - 1), self.rank(n)
            if rows == 0 or cols == 0:
                d = GroupRingMatrix.zero(self.ctx, rows, cols)
            else:
                d = self._diff_fn(n)
                if d.shape != (rows, cols) or d.ctx != self.ctx:
                    raise ChainComplexError(
                        f"{self!r}: differential out of degree {n} has shape {d.shape}, "
                        f"expected {(rows, cols)}")
            self._diffs[n] = d
        return self._diffs[n]

    def zrank(self, n: int) -> int:
        return self.rank(n) * self.ctx.order

    def zdiff(self, n: int) -> np.ndarray:
        if n not in self._zdiffs:
            self._zdiffs[n] = expand_to_Z(self.diff(n))
        return self._zdiffs[n]

    def check_dd(self, n: int) -> None:
        """Hard check that d_{n-1} d_n = 0."""
        if not (self.diff(n - 1) @ self.diff(n)).is_zero():
            raise ChainComplexError(f"{self!r}: d^2 != 0 out of degree {n}")

    def underlying(self) -> "LazyComplex":
        """The same complex viewed over Z (each generator becomes p^r generators)."""
        if self.ctx.r == 0:
            return self
        if self._underlying is None:
            z = self.ctx.trivial()
            self._underlying = LazyComplex(
                z, self.zrank, lambda n: GroupRingMatrix.from_int(z, self.zdiff(n)),
                self.lo, self.hi, name=f"U({self.name})")
        return self._underlying

    def homology_data(self, k: int) -> "HomologyData":
        with self._lock:
            if k not in self._homology:
                self._homology[k] = _compute_homology(self, k)
            return self._homology[k]


def triv(Y: LazyComplex, acting: CyclicGroupCtx) -> LazyComplex:
    """``Y`` (at level r-1) with its action pulled back along C_{p^r} -> C_{p^{r-1}}.

    The result is the underlying integer complex of ``Y``; the acting group is
    recorded so that equivariance of maps into it can be checked explicitly.
    """
    if acting.p != Y.ctx.p or acting.r != Y.ctx.r + 1:
        raise ValueError(f"cannot pull back from {Y.ctx} along {acting}")
    U = Y.underlying()
    out = LazyComplex(U.ctx, U.rank, U.diff, U.lo, U.hi, name=f"triv({Y.name})")
    out.acting = acting
    out.base = Y
    return out


# ---------------------------------------------------------------------------
# maps and homotopies


class ChainMap:
    """Degree-preserving map; ``comp(n): source_n -> target_n``.

    With ``verify=True`` every queried component is checked against the
    chain-map square out of that degree.
    """

    def __init__(self, source: LazyComplex, target: LazyComplex,
                 comp_fn: Callable[[int], GroupRingMatrix], name: str = "", verify: bool = True):
        if source.ctx != target.ctx:
            raise ValueError(f"chain map between different group rings: {source.ctx} vs {target.ctx}")
        self.source = source
        self.target = target
        self.ctx = source.ctx
        self._comp_fn = comp_fn
        self.name = name
        self.verify = verify
        self._comps: dict[int, GroupRingMatrix] = {}
        self._checked: set[int] = set()
        self._underlying: Optional[ChainMap] = None

    def __repr__(self):
        return f"ChainMap({self.name or '?'}: {self.source!r} -> {self.target!r})"

    def raw(self, n: int) -> GroupRingMatrix:
        if n not in self._comps:
            rows, cols = self.target.rank(n), self.source.rank(n)
            if rows == 0 or cols == 0:
                c = GroupRingMatrix.zero(self.ctx, rows, cols)
            else:
                c = self._comp_fn(n)
                if c.shape != (rows, cols):
                    raise ChainComplexError(f"{self!r}: component in degree {n} has shape "
                                            f"{c.shape}, expected {(rows, cols)}")
            self._comps[n] = c
        return self._comps[n]

    def comp(self, n: int) -> GroupRingMatrix:
        c = self.raw(n)
        if self.verify and n not in self._checked:
            self.check(n)
        return c

    def check(self, n: int) -> None:
        """Verify d^T_n f_n = f_{n-1} d^S_n."""
        lhs = self.target.diff(n) @ self.raw(n)
        rhs = self.raw(n - 1) @ self.source.diff(n)
        if lhs != rhs:
            raise ChainComplexError(f"{self!r} is not a chain map out of degree {n}")
        self._checked.add(n)

    def zcomp(self, n: int) -> np.ndarray:
        return expand_to_Z(self.comp(n))

    def underlying(self) -> "ChainMap":
        if self.ctx.r == 0:
            return self
        if self._underlying is None:
            z = self.ctx.trivial()
            self._underlying = ChainMap(self.source.underlying(), self.target.underlying(),
                                        lambda n: GroupRingMatrix.from_int(z, self.zcomp(n)),
                                        name=self.name, verify=self.verify)
        return self._underlying

    def scale(self, c: int) -> "ChainMap":
        return ChainMap(self.source, self.target, lambda n: self.raw(n).scale(c),
                        name=f"{c}*{self.name}", verify=self.verify)


def identity_map(X: LazyComplex) -> ChainMap:
    return ChainMap(X, X, lambda n: GroupRingMatrix.identity(X.ctx, X.rank(n)), name="id")


def zero_map(X: LazyComplex, Y: LazyComplex) -> ChainMap:
    return ChainMap(X, Y, lambda n: GroupRingMatrix.zero(X.ctx, Y.rank(n), X.rank(n)), name="0")


def compose(g: ChainMap, f: ChainMap, name: str = "") -> ChainMap:
    """``g o f``; falls back to underlying integer complexes when the rings differ."""
    if f.ctx != g.ctx:
        f, g = f.underlying(), g.underlying()
    return ChainMap(f.source, g.target, lambda n: g.raw(n) @ f.raw(n),
                    name=name or f"{g.name}o{f.name}", verify=f.verify or g.verify)


@dataclass
class ChainHomotopy:
    """``h(n): source_n -> target_{n+1}`` with ``d h + h d = f - g`` (``g = None`` means zero)."""

    f: ChainMap
    g: Optional[ChainMap]
    h_fn: Callable[[int], GroupRingMatrix]
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def source(self) -> LazyComplex:
        return self.f.source

    @property
    def target(self) -> LazyComplex:
        return self.f.target

    def h(self, n: int) -> GroupRingMatrix:
        if n not in self._cache:
            rows, cols = self.target.rank(n + 1), self.source.rank(n)
            if rows == 0 or cols == 0:
                m = GroupRingMatrix.zero(self.f.ctx, rows, cols)
            else:
                m = self.h_fn(n)
                if m.shape != (rows, cols):
                    raise ChainComplexError(f"homotopy {self.name}: degree {n} shape {m.shape}, "
                                            f"expected {(rows, cols)}")
            self._cache[n] = m
        return self._cache[n]

    def check(self, n: int) -> None:
        lhs = self.target.diff(n + 1) @ self.h(n) + self.h(n - 1) @ self.source.diff(n)
        rhs = self.f.raw(n) if self.g is None else self.f.raw(n) - self.g.raw(n)
        if lhs != rhs:
            raise ChainComplexError(f"homotopy identity for {self.name or '?'} fails in degree {n}")

    def underlying(self) -> "ChainHomotopy":
        if self.f.ctx.r == 0:
            return self
        z = self.f.ctx.trivial()
        return ChainHomotopy(self.f.underlying(), None if self.g is None else self.g.underlying(),
                             lambda n: GroupRingMatrix.from_int(z, expand_to_Z(self.h(n))),
                             name=self.name)


# ---------------------------------------------------------------------------
# constructions


def shift(X: LazyComplex, k: int) -> LazyComplex:
    if k == 0:
        return X
    sign = -1 if k % 2 else 1
    return LazyComplex(
        X.ctx, lambda n: X.rank(n - k), lambda n: X.diff(n - k).scale(sign),
        None if X.lo is None else X.lo + k, None if X.hi is None else X.hi + k,
        name=f"S^{k}{X.name}")


def shift_map(f: ChainMap, k: int, source: Optional[LazyComplex] = None,
              target: Optional[LazyComplex] = None) -> ChainMap:
    if k == 0 and source is None and target is None:
        return f
    return ChainMap(source or shift(f.source, k), target or shift(f.target, k),
                    lambda n: f.raw(n - k), name=f"S^{k}{f.name}", verify=f.verify)


def shift_homotopy(H: ChainHomotopy, k: int, f: ChainMap, g: Optional[ChainMap]) -> ChainHomotopy:
    """Shift of a homotopy; ``f``/``g`` are the already shifted maps it relates."""
    sign = -1 if k % 2 else 1
    return ChainHomotopy(f, g, lambda n: H.h(n - k).scale(sign), name=f"S^{k}{H.name}")


def _block(ctx, row_ranks, col_ranks, blocks) -> GroupRingMatrix:
    """Assemble a block matrix; ``blocks`` maps (i, j) to a GroupRingMatrix."""
    out = GroupRingMatrix.zero(ctx, sum(row_ranks), sum(col_ranks))
    r_off = np.cumsum([0] + list(row_ranks))
    c_off = np.cumsum([0] + list(col_ranks))
    for (i, j), m in blocks.items():
        if m.rows and m.cols:
            out.coeffs[r_off[i]:r_off[i + 1], c_off[j]:c_off[j + 1], :] = m.coeffs
    return out


def direct_sum(parts: Sequence[LazyComplex], name: str = "") -> LazyComplex:
    ctx = parts[0].ctx
    if any(P.ctx != ctx for P in parts):
        raise ValueError("direct sum of complexes over different group rings")

    def diff(n):
        return _block(ctx, [P.rank(n - 1) for P in parts], [P.rank(n) for P in parts],
                      {(i, i): P.diff(n) for i, P in enumerate(parts)})

    los = [P.lo for P in parts]
    his = [P.hi for P in parts]
    lo = None if any(v is None for v in los) else min(los)
    hi = None if any(v is None for v in his) else max(his)
    return LazyComplex(ctx, lambda n: sum(P.rank(n) for P in parts), diff, lo, hi,
                       name=name or "+".join(P.name for P in parts))


def cone(f: ChainMap) -> LazyComplex:
    M, N = f.source, f.target

    def diff(n):
        sign = 1 if (n - 1) % 2 == 0 else -1
        return _block(f.ctx, [M.rank(n - 2), N.rank(n - 1)], [M.rank(n - 1), N.rank(n)],
                      {(0, 0): M.diff(n - 1), (1, 0): f.comp(n - 1).scale(sign), (1, 1): N.diff(n)})

    lo = None if M.lo is None or N.lo is None else min(M.lo + 1, N.lo)
    hi = None if M.hi is None or N.hi is None else max(M.hi + 1, N.hi)
    return LazyComplex(f.ctx, lambda n: M.rank(n - 1) + N.rank(n), diff, lo, hi,
                       name=f"Cone({f.name})")


def fiber(f: ChainMap) -> LazyComplex:
    return shift(cone(f), -1)


def cp_fixedpoints(X: LazyComplex) -> LazyComplex:
    """C_p-fixed points of a levelwise free complex, in the orbit-sum basis."""
    q = X.ctx.quotient()
    return LazyComplex(q, X.rank, lambda n: X.diff(n).map_entries(quotient_map, q),
                       X.lo, X.hi, name=f"({X.name})^Cp")


# ---------------------------------------------------------------------------
# zigzags and their homotopy limits


@dataclass
class ZigzagDiagram:
    """T_0 -> B_1 <- T_1 -> B_2 <- ... <- T_a.

    ``diag[s-1]: T_{s-1} -> B_s`` and ``vert[s-1]: T_s -> B_s`` for s = 1..a.
    """

    a: int
    top: list
    bottom: list
    diag: list
    vert: list

    def __post_init__(self):
        a = self.a
        if len(self.top) != a + 1 or len(self.bottom) != a or len(self.diag) != a or len(self.vert) != a:
            raise ValueError(f"zigzag of length {a} needs {a + 1} top and {a} bottom objects")
        for s in range(1, a + 1):
            if self.diag[s - 1].source is not self.top[s - 1] or self.diag[s - 1].target is not self.bottom[s - 1]:
                raise ValueError(f"diagonal arrow {s} does not connect T_{s - 1} to B_{s}")
            if self.vert[s - 1].source is not self.top[s] or self.vert[s - 1].target is not self.bottom[s - 1]:
                raise ValueError(f"vertical arrow {s} does not connect T_{s} to B_{s}")


@dataclass
class FiberPresentation:
    """The two-row fiber of a zigzag, kept with the data needed to map out of it."""

    diagram: ZigzagDiagram
    top: list        # underlying integer complexes T_s
    bottom: list     # underlying integer complexes B_s
    phi: ChainMap
    complex: LazyComplex


def zigzag_fiber(Z: ZigzagDiagram) -> FiberPresentation:
    top = [T.underlying() for T in Z.top]
    bottom = [B.underlying() for B in Z.bottom]
    diag = [f.underlying() for f in Z.diag]
    vert = [g.underlying() for g in Z.vert]
    z = top[0].ctx
    S = direct_sum(top, name="T")
    if Z.a == 0:
        B = LazyComplex(z, lambda n: 0, lambda n: None, name="0")
    else:
        B = direct_sum(bottom, name="B")

    def phi(n):
        blocks = {}
        for s in range(1, Z.a + 1):
            blocks[(s - 1, s - 1)] = diag[s - 1].comp(n)
            blocks[(s - 1, s)] = -vert[s - 1].comp(n)
        return _block(z, [Bs.rank(n) for Bs in bottom], [T.rank(n) for T in top], blocks)

    Phi = ChainMap(S, B, phi, name="Phi")
    return FiberPresentation(Z, top, bottom, Phi, fiber(Phi))


def holim_zigzag(Z: ZigzagDiagram) -> LazyComplex:
    """Homotopy limit of a zigzag over Z: the fiber of Phi (T_0 itself when a = 0)."""
    if Z.a == 0:
        return Z.top[0].underlying()
    return zigzag_fiber(Z).complex


def _sign_twist(X: LazyComplex, Y: LazyComplex) -> ChainMap:
    """The isomorphism (-1)^n between a complex and its copy with negated differential."""
    return ChainMap(X, Y, lambda n: GroupRingMatrix.identity(X.ctx, X.rank(n), -1 if n % 2 else 1),
                    name="twist")


def lax_map_on_holim(src: ZigzagDiagram, dst: ZigzagDiagram, objmaps: dict,
                     homotopies: Optional[dict] = None) -> ChainMap:
    """Map of homotopy limits induced by a homotopy-coherent map of zigzags.

    ``objmaps`` sends keys ``("T", s)`` / ``("B", s)`` to chain maps from the
    source object to the target object with the same key; missing keys mean the
    zero map (used for columns present in only one of the diagrams).
    ``homotopies`` sends ``("diag", s)`` / ``("vert", s)`` to a ChainHomotopy
    ``H`` with ``dH + Hd = (arrow' o phi) - (phi o arrow)``; squares without an
    entry must commute strictly.  On the fiber, degree ``n`` element ``(t, b)``
    goes to ``(phi t, phi b + c_n H t)`` with ``c_n = (-1)^(n+1)`` times the sign
    of the arrow inside Phi (+1 for diagonals, -1 for verticals).
    """
    homotopies = homotopies or {}
    F, G = zigzag_fiber(src), zigzag_fiber(dst)
    z = F.complex.ctx
    maps = {key: m.underlying() for key, m in objmaps.items()}
    htpys = {key: H.underlying() for key, H in homotopies.items()}
    nT, nB = len(F.top), len(F.bottom)
    mT, mB = len(G.top), len(G.bottom)

    def comp(n):
        row_ranks = [T.rank(n) for T in G.top] + [B.rank(n + 1) for B in G.bottom]
        col_ranks = [T.rank(n) for T in F.top] + [B.rank(n + 1) for B in F.bottom]
        blocks = {}
        for s in range(min(nT, mT)):
            if ("T", s) in maps:
                blocks[(s, s)] = maps[("T", s)].comp(n)
        for s in range(1, min(nB, mB) + 1):
            if ("B", s) in maps:
                blocks[(mT + s - 1, nT + s - 1)] = maps[("B", s)].comp(n + 1)
        for (kind, s), H in htpys.items():
            H.check(n)
            t_index = s - 1 if kind == "diag" else s
            sign = (-1) ** (n + 1) * (1 if kind == "diag" else -1)
            key = (mT + s - 1, t_index)
            term = H.h(n).scale(sign)
            blocks[key] = blocks[key] + term if key in blocks else term
        return _block(z, row_ranks, col_ranks, blocks)

    core = ChainMap(F.complex, G.complex, comp, name="holim-map")
    # the a = 0 holim is T_0 itself, whose differential differs from the fiber's by a sign
    src_holim, dst_holim = holim_zigzag(src), holim_zigzag(dst)
    if src.a == 0:
        core = compose(core, _sign_twist(src_holim, F.complex))
    if dst.a == 0:
        core = compose(_sign_twist(G.complex, dst_holim), core)
    return core


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class FinGenAb:
    """Free rank plus invariant factors d_1 | d_2 | ... (each > 1)."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d <= 1:
                raise ValueError(f"invariant factor {d} must exceed 1")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")

    @classmethod
    def from_orders(cls, free_rank: int, orders) -> "FinGenAb":
        """Normalize an arbitrary list of cyclic orders into invariant factors."""
        orders = [abs(int(d)) for d in orders if abs(int(d)) != 1]
        if any(d == 0 for d in orders):
            raise ValueError("use free_rank for infinite cyclic summands")
        if not orders:
            return cls(free_rank, ())
        from .linalg import zmat
        sf = smith_normal_form(zmat([[orders[i] if i == j else 0 for j in range(len(orders))]
                                     for i in range(len(orders))]))
        return cls(free_rank, tuple(d for d in sf.diagonal if d != 1))

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    def orders(self) -> tuple:
        """Order of each canonical generator (0 for free generators)."""
        return self.torsion + (0,) * self.free_rank

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass
class HomologyData:
    """H_k of an integer complex together with canonical generators.

    ``gens`` holds cycle representatives as columns (torsion generators in
    ascending order, then free ones).  ``coords`` expresses any cycle in them.
    """

    group: FinGenAb
    gens: np.ndarray
    _kinv: np.ndarray
    _left: np.ndarray
    _keep: tuple

    def coords(self, cycle: np.ndarray) -> np.ndarray:
        y = matmul(self._left, matmul(self._kinv, cycle.reshape(-1, 1)))
        out = np.empty(len(self._keep), dtype=object)
        for idx, i in enumerate(self._keep):
            v = y[i, 0]
            d = self.group.orders()[idx]
            out[idx] = v % d if d else v
        return out


def _compute_homology(X: LazyComplex, k: int) -> HomologyData:
    U = X.underlying()
    B = U.zdiff(k)
    A = U.zdiff(k + 1)
    dim = U.rank(k)
    K, Kinv = kernel_basis(B) if B.shape[0] else (_eye(dim), _eye(dim))
    Ap = matmul(Kinv, A)
    if any(x != 0 for x in (matmul(K, Ap) - A).flat):
        raise ChainComplexError(f"{X!r}: d^2 != 0 around degree {k}")
    z = K.shape[1]
    if z == 0:
        return HomologyData(FinGenAb(), zeros(dim, 0), zeros(0, dim), zeros(0, 0), ())
    sf = smith_normal_form(Ap)
    diag = list(sf.diagonal) + [0] * (z - len(sf.diagonal))
    torsion = [i for i in range(z) if diag[i] > 1]
    free = [i for i in range(z) if diag[i] == 0]
    keep = tuple(torsion + free)
    gens = matmul(K, sf.left_inv[:, list(keep)]) if keep else zeros(dim, 0)
    group = FinGenAb(len(free), tuple(diag[i] for i in torsion))
    return HomologyData(group, gens, Kinv, sf.left, keep)


def _eye(n):
    from .linalg import identity
    return identity(n)


def homology_at(X: LazyComplex, k: int) -> FinGenAb:
    return X.homology_data(k).group


@dataclass(frozen=True)
class Homomorphism:
    """A map of finitely generated abelian groups on their canonical generators."""

    source: FinGenAb
    target: FinGenAb
    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.shape != (self.target.ngens, self.source.ngens):
            raise ValueError("matrix shape does not match the groups")
        m = self.matrix.copy()
        for i, d in enumerate(self.target.orders()):
            if d:
                for j in range(m.shape[1]):
                    m[i, j] %= d
        object.__setattr__(self, "matrix", m)

    def __eq__(self, other):
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and all(a == b for a, b in zip(self.matrix.flat, other.matrix.flat)))

    __hash__ = None

    def __matmul__(self, other: "Homomorphism") -> "Homomorphism":
        if other.target != self.source:
            raise ValueError("cannot compose homomorphisms with mismatched groups")
        return Homomorphism(other.source, self.target, matmul(self.matrix, other.matrix))

    @classmethod
    def scalar(cls, G: FinGenAb, c: int) -> "Homomorphism":
        m = zeros(G.ngens, G.ngens)
        for i in range(G.ngens):
            m[i, i] = c
        return cls(G, G, m)

    def is_scalar(self, c: int) -> bool:
        return self.source == self.target and self == Homomorphism.scalar(self.source, c)

    def tolist(self) -> list:
        return [[int(x) for x in row] for row in self.matrix]

    def invariants(self) -> tuple:
        """Isomorphism types of (kernel, image, cokernel); unchanged by automorphisms of either side."""
        return hom_invariants(self)

    def inverse(self) -> "Homomorphism":
        """Inverse of an isomorphism (raises if the map is not invertible)."""
        from .linalg import solve_integer
        rel = _relations(self.target)
        big = np.concatenate([self.matrix, rel], axis=1) if rel.shape[1] else self.matrix
        cols = []
        for i in range(self.target.ngens):
            e = zeros(self.target.ngens, 1)
            e[i, 0] = 1
            x = solve_integer(big, e)
            if x is None:
                raise ValueError("homomorphism is not surjective")
            cols.append(x[: self.source.ngens, 0])
        inv = zeros(self.source.ngens, self.target.ngens)
        for j, c in enumerate(cols):
            inv[:, j] = c
        out = Homomorphism(self.target, self.source, inv)
        if not (out @ self).is_scalar(1):
            raise ValueError("homomorphism is not injective")
        return out


def _relations(G: FinGenAb) -> np.ndarray:
    cols = [i for i, d in enumerate(G.orders()) if d]
    rel = zeros(G.ngens, len(cols))
    for j, i in enumerate(cols):
        rel[i, j] = G.orders()[i]
    return rel


def hom_invariants(f: Homomorphism) -> tuple:
    M = f.matrix
    m, n = M.shape
    Rt, Rs = _relations(f.target), _relations(f.source)
    # cokernel: Z^m modulo image and target relations
    coker = FinGenAb.from_orders(*_quot(np.concatenate([M, Rt], axis=1), m))
    # lattice L = {x : M x in span(Rt)}; image = Z^n / L, kernel = L / span(Rs)
    big = np.concatenate([M, -Rt], axis=1) if Rt.shape[1] else M
    Kb, _ = kernel_basis(big) if m else (_eye(n), None)
    L = Kb[:n, :]
    image = FinGenAb.from_orders(*_quot(L, n))
    # express source relations in a basis of L
    if L.shape[1] == 0:
        kernel = FinGenAb()
    else:
        from .linalg import solve_integer
        coords = solve_integer(L, Rs) if Rs.shape[1] else zeros(L.shape[1], 0)
        kernel = FinGenAb.from_orders(*_quot(coords, L.shape[1]))
    return kernel, image, coker


def _torsion_elements(orders):
    from itertools import product
    return product(*[range(d) for d in orders])


def automorphisms(G: FinGenAb):
    """Every automorphism of G as a matrix on canonical generators.

    Only free rank at most one is supported: then an automorphism is
    [[alpha, x], [0, u]] with alpha in Aut(T), x in T and u = +-1.
    """
    from itertools import product
    if G.free_rank > 1:
        raise NotImplementedError("automorphisms of Z^f with f > 1 are not enumerated")
    tors = list(G.torsion)
    t = len(tors)
    # candidate images of each torsion generator: elements whose order divides its order
    columns = []
    for j, dj in enumerate(tors):
        columns.append([c for c in _torsion_elements(tors)
                        if all((dj * c[i]) % tors[i] == 0 for i in range(t))])
    elements = list(_torsion_elements(tors))
    for cols in product(*columns):
        images = set()
        for e in elements:
            images.add(tuple(sum(e[j] * cols[j][i] for j in range(t)) % tors[i] for i in range(t)))
        if len(images) != len(elements):
            continue
        for extra in (product(elements, (1, -1)) if G.free_rank else [None]):
            m = zeros(G.ngens, G.ngens)
            for j in range(t):
                for i in range(t):
                    m[i, j] = cols[j][i]
            if extra is not None:
                x, u = extra
                for i in range(t):
                    m[i, t] = x[i]
                m[t, t] = u
            yield Homomorphism(G, G, m)


def _quot(gens: np.ndarray, dim: int):
    from .linalg import quotient_invariants
    free, tors = quotient_invariants(gens, dim)
    return free, tors


def induced_on_homology(f: ChainMap, k: int) -> Homomorphism:
    fu = f.underlying()
    S = fu.source.homology_data(k)
    T = fu.target.homology_data(k)
    image = matmul(fu.zcomp(k), S.gens)
    m = zeros(T.group.ngens, S.group.ngens)
    for j in range(S.group.ngens):
        m[:, j] = T.coords(image[:, j])
    return Homomorphism(S.group, T.group, m)
