"""The acceptance criteria as runnable checks, shared by the test suite and ``verify``.

Each check returns a list of failure descriptions (empty means pass) and has a
wall-clock limit; exceeding the limit is itself a failure.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .bredon import oracle_inclusion, orbit_cohomology
from .catalog import (Cc, Chat, Sc, Tc, Zc, cone_dictionary, gen_norm, homotopy_h, homotopy_h_orbits,
                      inc_map, map_c, map_e, map_g, map_i, map_k, map_q, trf_map)
from .cohomology import (inclusion_on_homology, ladder_isomorphic, mackey_table, mackey_value,
                         tables_isomorphic, transfer_on_homology)
from .complexes import FinGenAb, compose, cp_fixedpoints, homology_at
from .groupring import GroupRingMatrix
from .picard import PicCoord, parse_rep, pic_add, pic_neg, rep_to_pic, slot_modulus
from .stratcomb import parse_group, stratification_table, verify_group

Z = FinGenAb(1, ())
ZERO = FinGenAb()


def _cyclic(d: int) -> FinGenAb:
    return FinGenAb(0, (d,)) if d > 1 else ZERO


# ---------------------------------------------------------------------------
# 1-3: homology of the catalog complexes over the trivial group


def tate_ring() -> list:
    bad = []
    for p in (3, 5):
        for i in (0, 1, 2):
            X = Tc(i, p, 0)
            for k in range(-40, 41):
                want = _cyclic(p ** (i + 1)) if k % 2 == 0 else ZERO
                got = homology_at(X, k)
                if got != want:
                    bad.append(f"H_{k}(T^{i}_0), p={p}: {got}, expected {want}")
    return bad


def group_cohomology() -> list:
    bad = []
    for p in (3, 5):
        for a in (1, 2, 3):
            X = Zc(a, p, 0)
            for k in range(-40, 41):
                if k == 0:
                    want = Z
                elif k < 0 and k % 2 == 0:
                    want = _cyclic(p ** a)
                else:
                    want = ZERO
                got = homology_at(X, k)
                if got != want:
                    bad.append(f"H_{k}(Z^{a}_0), p={p}: {got}, expected {want}")
    return bad


def thh_fp() -> list:
    bad = []
    for p in (3, 5):
        X = Cc(0, p, 0)
        for k in range(-40, 41):
            want = _cyclic(p) if k >= 0 and k % 2 == 0 else ZERO
            got = homology_at(X, k)
            if got != want:
                bad.append(f"H_{k}(C^0_0), p={p}: {got}, expected {want}")
    return bad


# ---------------------------------------------------------------------------
# 4: the unit Mackey functor


def unit_mackey() -> list:
    bad = []
    for p, n in ((3, 1), (3, 2), (3, 3), (5, 2)):
        unit = PicCoord.unit(p, n)
        for a in range(n + 1):
            for i in range(-20, 21):
                want = Z if i == 0 else ZERO
                got = mackey_value(p, n, a, unit, i)
                if got != want:
                    bad.append(f"unit ({p},{n}) a={a} i={i}: {got}")
        for a in range(n):
            inc = inclusion_on_homology(p, n, a, unit, 0)
            trf = transfer_on_homology(p, n, a, unit, 0)
            if not inc.is_scalar(1):
                bad.append(f"unit ({p},{n}) inclusion at a={a} is {inc.tolist()}")
            if not trf.is_scalar(p):
                bad.append(f"unit ({p},{n}) transfer at a={a} is {trf.tolist()}")
    return bad


# ---------------------------------------------------------------------------
# 5: the orbit-space oracle

ORACLE_REPS = ("triv", "rho(1)", "rho(3)", "rho(1), rho(3)", "rho(1)*2", "triv, rho(1)")


def oracle_equivalence(p: int = 3, n: int = 2, reps=ORACLE_REPS) -> list:
    bad = []
    for text in reps:
        V = parse_rep(text, p, n)
        coords = pic_neg(rep_to_pic(V))
        for i in range(0, 2 * V.dim + 3):
            oracle = [orbit_cohomology(p, n, a, V, i) for a in range(n + 1)]
            engine = [mackey_value(p, n, a, coords, i) for a in range(n + 1)]
            if oracle != engine:
                bad.append(f"{text} i={i}: oracle {[str(g) for g in oracle]}, "
                           f"engine {[str(g) for g in engine]}")
                continue
            o_inc = [oracle_inclusion(p, n, a, V, i) for a in range(n)]
            e_inc = [inclusion_on_homology(p, n, a, coords, i) for a in range(n)]
            if not ladder_isomorphic(oracle, o_inc, engine, e_inc):
                bad.append(f"{text} i={i}: inclusions differ, oracle {[m.tolist() for m in o_inc]}, "
                           f"engine {[m.tolist() for m in e_inc]}")
    return bad


# ---------------------------------------------------------------------------
# 6-7: Picard well-definedness and suspension

PICARD_SAMPLES = (
    (5, 1, (1, -1), (2,)),
    (5, 1, (-4, 2), (2,)),
    (5, 1, (0, 1), (3,)),
    (3, 2, (-2, 1, 0), (2, 1)),
    (3, 2, (0, -1, 1), (4, 2)),
    (3, 2, (-4, 1, 1), (7, 2)),
)
WINDOW = (-8, 8)


def _samples():
    for p, n, beta, gamma in PICARD_SAMPLES:
        yield PicCoord(p, n, beta, gamma)


def picard_well_defined() -> list:
    bad = []
    for c in _samples():
        p, n = c.p, c.n
        base = mackey_table(p, n, c, WINDOW)
        for mask in range(1, 2 ** n):
            gamma = tuple(-g if mask >> s & 1 else g for s, g in enumerate(c.gamma))
            other = mackey_table(p, n, PicCoord(p, n, c.beta, gamma), WINDOW)
            if not tables_isomorphic(base, other):
                bad.append(f"{c}: table changes when gamma becomes {gamma}")
        for s in range(1, n + 1):
            lifts = tuple(g + (slot_modulus(p, n, t) if t == s else 0)
                          for t, g in enumerate(c.gamma, start=1))
            other = mackey_table(p, n, c, WINDOW, lifts)
            if not tables_isomorphic(base, other):
                bad.append(f"{c}: table changes when the lift of gamma_{s} becomes {lifts[s - 1]}")
    return bad


def suspension_coherence() -> list:
    bad = []
    lo, hi = WINDOW
    for c in _samples():
        p, n = c.p, c.n
        base = mackey_table(p, n, c, WINDOW)
        for step, shift_by in ((PicCoord.suspension(p, n, 2), 2), (rep_to_pic(parse_rep("triv", p, n)), 1)):
            moved = mackey_table(p, n, pic_add(c, step), (lo - shift_by, hi - shift_by))
            if not tables_isomorphic(base, moved, shift=shift_by):
                bad.append(f"{c}: adding {step} does not shift the table by {shift_by}")
    return bad


# ---------------------------------------------------------------------------
# 8: catalog validators

CATALOG_DEGREES = range(-10, 13)


def _check_map(f, label, bad):
    try:
        for n in CATALOG_DEGREES:
            f.check(n)
    except ArithmeticError as exc:
        bad.append(f"{label}: {exc}")


def catalog_validators() -> list:
    bad = []
    for p in (3, 5):
        for r in range(0, 4):
            complexes = ([Zc(a, p, r) for a in range(3)] + [Cc(i, p, r) for i in range(3)]
                         + [Tc(i, p, r) for i in range(3)] + [Sc(i, p, r) for i in range(3)]
                         + [Chat(p, r)])
            for X in complexes:
                try:
                    for n in CATALOG_DEGREES:
                        X.check_dd(n)
                except ArithmeticError as exc:
                    bad.append(str(exc))
            maps = [map_q(a, p, r) for a in (1, 2)] + [map_e(i, p, r) for i in range(3)]
            maps += [map_g(i, p, r) for i in range(2)]
            maps += [map_c(i, p, r, k) for i in range(2) for k in (-1, 1, 2)]
            maps += [gen_norm(p, r), map_i(p, r), cone_dictionary(p, r), map_k(p, r)]
            for f in maps:
                _check_map(f, f"{f.name} p={p} r={r}", bad)
            if r == 0:
                continue
            for H in (homotopy_h(p, r), homotopy_h_orbits(p, r)):
                try:
                    for n in CATALOG_DEGREES:
                        H.check(n)
                except ArithmeticError as exc:
                    bad.append(f"p={p} r={r}: {exc}")
            for build, idx in ((Zc, range(3)), (Cc, range(2)), (Tc, range(2)), (Sc, range(2))):
                for i in idx:
                    X, Y = build(i, p, r), build(i + 1, p, r - 1)
                    fixed = cp_fixedpoints(X)
                    for n in CATALOG_DEGREES:
                        if fixed.rank(n) != Y.rank(n) or fixed.diff(n) != Y.diff(n):
                            bad.append(f"({X.name})^Cp differs from {Y.name} in degree {n}")
                    trf, inc = trf_map(X, Y), inc_map(X, Y)
                    _check_map(trf, f"trf {X.name}", bad)
                    _check_map(inc, f"inc {X.name}", bad)
                    both = compose(trf, inc)
                    for n in CATALOG_DEGREES:
                        k = both.target.rank(n)
                        if both.comp(n) != GroupRingMatrix.identity(both.ctx, k, p):
                            bad.append(f"trf o inc is not {p} on {Y.name} in degree {n}")
    return bad


# ---------------------------------------------------------------------------
# 9: stratification combinatorics

A4_EXPECTED = {
    (1, 2): ["C2"], (1, 3): ["C3"], (1, 4): ["C2 x C2"], (1, 12): ["nonabelian of order 12"],
    (2, 4): ["C2"], (2, 12): [], (3, 12): [], (4, 12): ["C3"],
}


def stratification() -> list:
    bad = []
    for name in ("S3", "A4", "C27", "D4"):
        try:
            verify_group(parse_group(name))
        except ArithmeticError as exc:
            bad.append(f"{name}: {exc}")
    table = {(len(H), len(K)): [d.tate_quotient for d in data]
             for H, K, data in stratification_table(parse_group("A4"))}
    if table != A4_EXPECTED:
        bad.append(f"A4 table {table}")
    return bad


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Criterion:
    number: int
    suite: str
    title: str
    limit: float
    check: Callable[[], list]


CRITERIA = (
    Criterion(1, "tate", "Tate ring homology of T^i_0", 1.0, tate_ring),
    Criterion(2, "tate", "group cohomology from Z^a_0", 1.0, group_cohomology),
    Criterion(3, "tate", "THH(F_p) from C^0_0", 1.0, thh_fp),
    Criterion(4, "unit", "unit Mackey functor", 30.0, unit_mackey),
    Criterion(5, "oracle", "orbit-space oracle equivalence", 120.0, oracle_equivalence),
    Criterion(6, "unit", "Picard well-definedness", 60.0, picard_well_defined),
    Criterion(7, "unit", "suspension coherence", 60.0, suspension_coherence),
    Criterion(8, "catalog", "catalog validators", 10.0, catalog_validators),
    Criterion(9, "stratcomb", "stratification combinatorics", 30.0, stratification),
)
SUITES = ("catalog", "tate", "unit", "oracle", "stratcomb", "all")


@dataclass(frozen=True)
class Outcome:
    criterion: Criterion
    failures: tuple
    seconds: float

    @property
    def passed(self) -> bool:
        return not self.failures and self.seconds <= self.criterion.limit

    def line(self) -> str:
        c = self.criterion
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} criterion {c.number} ({c.title}): {self.seconds:.2f}s of {c.limit:g}s"
        if self.failures:
            text += f"; {len(self.failures)} failure(s), first: {self.failures[0]}"
        elif not self.passed:
            text += "; over the time limit"
        return text


def clear_caches() -> None:
    """Drop every memoized complex, map and table so timings start cold."""
    from . import bredon, catalog, cohomology
    for module in (catalog, cohomology, bredon):
        for obj in vars(module).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()


def run_criterion(c: Criterion, cold: bool = True) -> Outcome:
    if cold:
        clear_caches()
    start = time.perf_counter()
    try:
        failures = tuple(c.check())
    except Exception as exc:  # report, never crash the report
        failures = (f"{type(exc).__name__}: {exc}",)
    return Outcome(c, failures, time.perf_counter() - start)


def select(suite: str) -> list:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
    return [c for c in CRITERIA if suite == "all" or c.suite == suite]
