"""Values, restrictions and transfers of the Picard-graded cohomology of a point.

For a Picard element with coordinates (beta, gamma) and a subgroup C_{p^a}, the
value is read off a zigzag at level r = n - a:

    top      T_0 = S^{b_0} Z^a_r,   T_s = S^{b_s} C^{a-s}_r          (s = 1..a)
    bottom   B_s = S^{b_{s-1}} T^{a-s}_r
    arrows   T_0 -> B_1 is q, T_{s-1} -> B_s is g (s >= 2),
             T_s -> B_s is gamma_s * c^{-beta_s} o e

where b_s = beta_0 + 2 (beta_1 + ... + beta_s).  Group ``i`` of the table is
H_{-i} of the homotopy limit over Z.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .catalog import (Cc, Chat, Sc, Tc, Zc, homotopy_h, homotopy_h_orbits, inc_map, map_c, map_e,
                      map_g, map_i, map_k, map_q, trf_map)
from .complexes import (ChainComplexError, ChainMap, FinGenAb, Homomorphism, ZigzagDiagram,
                        automorphisms, compose, holim_zigzag, homology_at, identity_map,
                        induced_on_homology, lax_map_on_holim, shift, shift_homotopy, shift_map)
from .picard import PicCoord, slot_modulus


def default_lifts(coords: PicCoord) -> tuple:
    """Integer lifts of the unit coordinates: their least positive residues."""
    return tuple(coords.gamma)


def _check_lifts(coords: PicCoord, lifts: tuple):
    if len(lifts) != coords.n:
        raise ValueError(f"need {coords.n} lifts, got {len(lifts)}")
    for s, (g, lift) in enumerate(zip(coords.gamma, lifts), start=1):
        if (lift - g) % slot_modulus(coords.p, coords.n, s):
            raise ValueError(f"lift {lift} does not reduce to gamma_{s} = {g}")


@lru_cache(maxsize=None)
def build_value_zigzag(p: int, n: int, a: int, coords: PicCoord,
                       lifts: Optional[tuple] = None) -> ZigzagDiagram:
    if (coords.p, coords.n) != (p, n):
        raise ValueError("coordinates belong to a different group")
    if not 0 <= a <= n:
        raise ValueError(f"need 0 <= a <= n, got a = {a}, n = {n}")
    lifts = default_lifts(coords) if lifts is None else tuple(lifts)
    _check_lifts(coords, lifts)
    r = n - a
    b = [coords.beta_le(s) for s in range(a + 1)]
    top = [shift(Zc(a, p, r), b[0])] + [shift(Cc(a - s, p, r), b[s]) for s in range(1, a + 1)]
    bottom = [shift(Tc(a - s, p, r), b[s - 1]) for s in range(1, a + 1)]
    diag, vert = [], []
    for s in range(1, a + 1):
        base = map_q(a, p, r) if s == 1 else map_g(a - s, p, r)
        diag.append(shift_map(base, b[s - 1], source=top[s - 1], target=bottom[s - 1]))
        vert.append(_vertical(p, r, a - s, b[s], b[s - 1], coords.beta[s], lifts[s - 1],
                              top[s], bottom[s - 1]))
    return ZigzagDiagram(a, top, bottom, diag, vert)


def _vertical(p, r, i, b_s, b_prev, beta_s, lift, source, target) -> ChainMap:
    """gamma * c^{-beta_s} o e : S^{b_s} C^i_r -> S^{b_{s-1}} T^i_r."""
    middle = shift(Tc(i, p, r), b_s)
    e = shift_map(map_e(i, p, r), b_s, source=source, target=middle)
    c = shift_map(map_c(i, p, r, power=-beta_s), b_s, source=middle, target=target)
    return compose(c, e, name=f"{lift}*c^{-beta_s}e").scale(lift)


@lru_cache(maxsize=None)
def value_holim(p: int, n: int, a: int, coords: PicCoord, lifts: Optional[tuple] = None):
    return holim_zigzag(build_value_zigzag(p, n, a, coords, lifts))


def mackey_value(p: int, n: int, a: int, coords: PicCoord, i: int,
                 lifts: Optional[tuple] = None) -> FinGenAb:
    return homology_at(value_holim(p, n, a, coords, lifts), -i)


# ---------------------------------------------------------------------------
# inclusion


@lru_cache(maxsize=None)
def build_inclusion(p: int, n: int, a: int, coords: PicCoord,
                    lifts: Optional[tuple] = None) -> ChainMap:
    """Restriction from C_{p^{a+1}} to C_{p^a} as a map of homotopy limits."""
    if not 0 <= a < n:
        raise ValueError(f"inclusion needs 0 <= a < n, got a = {a}, n = {n}")
    src = build_value_zigzag(p, n, a + 1, coords, lifts)
    dst = build_value_zigzag(p, n, a, coords, lifts)
    objmaps = {("T", s): inc_map(dst.top[s], src.top[s]) for s in range(a + 1)}
    objmaps.update({("B", s): inc_map(dst.bottom[s - 1], src.bottom[s - 1]) for s in range(1, a + 1)})
    return lax_map_on_holim(src, dst, objmaps)


def inclusion_on_homology(p, n, a, coords, i, lifts=None) -> Homomorphism:
    return induced_on_homology(build_inclusion(p, n, a, coords, lifts), -i)


# ---------------------------------------------------------------------------
# transfer


@dataclass
class TransferData:
    source: ZigzagDiagram       # level-a zigzag with its last top object made cofibrant
    comparison: ChainMap        # holim(source) -> holim(value zigzag at level a)
    transfer: ChainMap          # holim(source) -> holim(value zigzag at level a+1)


@lru_cache(maxsize=None)
def build_transfer_data(p: int, n: int, a: int, coords: PicCoord,
                        lifts: Optional[tuple] = None) -> TransferData:
    """Transfer from C_{p^a} to C_{p^{a+1}}.

    The last top object of the level-a zigzag is replaced by a cofibrant model
    (Chat_r along k when a >= 1, _0S_r along i when a = 0); the transfer is then
    a homotopy-coherent map whose only non-strict square is filled by h.
    """
    if not 0 <= a < n:
        raise ValueError(f"transfer needs 0 <= a < n, got a = {a}, n = {n}")
    r = n - a
    val = build_value_zigzag(p, n, a, coords, lifts)
    dst = build_value_zigzag(p, n, a + 1, coords, lifts)
    ba = coords.beta_le(a)
    if a >= 1:
        model, resolve, h = shift(Chat(p, r), ba), map_k(p, r), homotopy_h(p, r)
    else:
        model, resolve, h = shift(Sc(0, p, r), ba), map_i(p, r), homotopy_h_orbits(p, r)
    resolve = shift_map(resolve, ba, source=model, target=val.top[a])
    top = list(val.top[:a]) + [model]
    vert = list(val.vert)
    if a >= 1:
        vert[a - 1] = compose(val.vert[a - 1], resolve)
    src = ZigzagDiagram(a, top, list(val.bottom), list(val.diag), vert)

    comparison_maps = {("T", s): identity_map(val.top[s]) for s in range(a)}
    comparison_maps[("T", a)] = resolve
    comparison_maps.update({("B", s): identity_map(val.bottom[s - 1]) for s in range(1, a + 1)})
    comparison = lax_map_on_holim(src, val, comparison_maps)

    objmaps = {("T", s): trf_map(src.top[s], dst.top[s]) for s in range(a)}
    trf_last = trf_map(val.top[a], dst.top[a])
    objmaps[("T", a)] = compose(trf_last, resolve.underlying())
    objmaps.update({("B", s): trf_map(src.bottom[s - 1], dst.bottom[s - 1]) for s in range(1, a + 1)})
    # the square T_a -> B'_{a+1} commutes only up to the shifted nullhomotopy
    f = compose(dst.diag[a].underlying(), objmaps[("T", a)])
    H = shift_homotopy(h, ba, f, None)
    transfer = lax_map_on_holim(src, dst, objmaps, {("diag", a + 1): H})
    return TransferData(src, comparison, transfer)


def transfer_on_homology(p, n, a, coords, i, lifts=None) -> Homomorphism:
    data = build_transfer_data(p, n, a, coords, lifts)
    through = induced_on_homology(data.transfer, -i)
    compare = induced_on_homology(data.comparison, -i)
    return through @ compare.inverse()


# ---------------------------------------------------------------------------
# tables


@dataclass
class MackeyTable:
    p: int
    n: int
    pic: PicCoord
    window: tuple
    values: dict = field(default_factory=dict)   # (a, i) -> FinGenAb
    inc: dict = field(default_factory=dict)      # (a, i) -> Homomorphism, level a+1 -> level a
    trf: dict = field(default_factory=dict)      # (a, i) -> Homomorphism, level a -> level a+1

    def to_json(self) -> dict:
        lo, hi = self.window
        levels = []
        for a in range(self.n + 1):
            entry = {"a": a,
                     "groups": {str(i): self.values[(a, i)].to_json() for i in range(lo, hi + 1)}}
            if a < self.n:
                entry["inc"] = {str(i): self.inc[(a, i)].tolist() for i in range(lo, hi + 1)}
                entry["trf"] = {str(i): self.trf[(a, i)].tolist() for i in range(lo, hi + 1)}
            levels.append(entry)
        return {"schema": 1, "p": self.p, "n": self.n,
                "pic": {"beta": list(self.pic.beta), "gamma": list(self.pic.gamma)},
                "window": [lo, hi], "levels": levels}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CYCLIC_MACKEY_THREADS", "1")))
    except ValueError:
        return 1


def mackey_table(p: int, n: int, coords: PicCoord, window: tuple = (-20, 20),
                 lifts: Optional[tuple] = None) -> MackeyTable:
    lo, hi = window
    if lo > hi:
        raise ValueError(f"empty window [{lo}, {hi}]")
    table = MackeyTable(p, n, coords, (lo, hi))

    def level(a):
        vals = {i: mackey_value(p, n, a, coords, i, lifts) for i in range(lo, hi + 1)}
        inc, trf = {}, {}
        if a < n:
            for i in range(lo, hi + 1):
                inc[i] = inclusion_on_homology(p, n, a, coords, i, lifts)
                trf[i] = transfer_on_homology(p, n, a, coords, i, lifts)
        return a, vals, inc, trf

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(level, range(n + 1)))
    for a, vals, inc, trf in results:
        for i in vals:
            table.values[(a, i)] = vals[i]
        for i in inc:
            table.inc[(a, i)] = inc[i]
            table.trf[(a, i)] = trf[i]
    for (a, i), res in table.inc.items():
        if not (table.trf[(a, i)] @ res).is_scalar(p):
            raise ChainComplexError(f"transfer after restriction is not multiplication by {p} "
                                    f"at a = {a}, i = {i}")
    return table


# ---------------------------------------------------------------------------
# comparing tables


def ladder_isomorphic(groups_a: list, inc_a: list, groups_b: list, inc_b: list,
                      trf_a: Optional[list] = None, trf_b: Optional[list] = None) -> bool:
    """Whether level-wise automorphisms carry one restriction/transfer ladder to the other.

    ``groups_*[a]`` is the value at level a, ``inc_*[a]`` maps level a+1 to
    level a and ``trf_*[a]`` maps level a to level a+1.  Canonical generators
    are only defined up to automorphism, so this is the basis-free comparison.
    """
    if list(groups_a) != list(groups_b):
        return False
    levels = len(groups_a)
    use_trf = trf_a is not None and trf_b is not None
    autos = [list(automorphisms(G)) for G in groups_a]

    def extend(a, chosen):
        if a == levels:
            return True
        for phi in autos[a]:
            if a:
                prev = chosen[-1]
                if prev @ inc_a[a - 1] != inc_b[a - 1] @ phi:
                    continue
                if use_trf and phi @ trf_a[a - 1] != trf_b[a - 1] @ prev:
                    continue
            if extend(a + 1, chosen + [phi]):
                return True
        return False

    return extend(0, [])


def tables_isomorphic(A: MackeyTable, B: MackeyTable, shift: int = 0) -> bool:
    """Degree-wise isomorphism of Mackey functors, with B read at degree i - shift.

    Degrees where the shifted window falls outside B are skipped; at least one
    degree must be compared.
    """
    if (A.p, A.n) != (B.p, B.n):
        return False
    compared = 0
    for i in range(A.window[0], A.window[1] + 1):
        j = i - shift
        if not B.window[0] <= j <= B.window[1]:
            continue
        compared += 1
        levels = range(A.n + 1)
        if not ladder_isomorphic([A.values[(a, i)] for a in levels], [A.inc[(a, i)] for a in levels[:-1]],
                                 [B.values[(a, j)] for a in levels], [B.inc[(a, j)] for a in levels[:-1]],
                                 [A.trf[(a, i)] for a in levels[:-1]], [B.trf[(a, j)] for a in levels[:-1]]):
            return False
    return compared > 0
