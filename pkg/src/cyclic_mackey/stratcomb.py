"""Finite-group combinatorics behind the gluing functors of genuine G-objects.

For subgroups H, K of a finite group G the set

    C(H, K) = { gK in G/K : H <= g K g^-1 <= N(H) }

carries commuting actions of W(H) = N(H)/H on the left and W(K) on the right.
Each class [g] of W(H) \\ C(H, K) / W(K) contributes one summand, indexed by the
Tate quotient gKg^-1/H and induced from (N(H) n N(gKg^-1)) / gKg^-1.

Groups are small permutation groups enumerated densely; every structural
claim is checked by brute force.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property

DEFAULT_MAX_ORDER = 200


class GroupTooLarge(ValueError):
    """The closure of the generators exceeded the configured order bound."""


class FiniteGroup:
    """A permutation group on ``degree`` points, elements indexed 0..|G|-1.

    Permutations are tuples of 0-based images; the product ``a * b`` applies
    ``b`` first.  Subgroups are frozensets of element indices.
    """

    def __init__(self, generators, degree: int | None = None, name: str = "",
                 max_order: int = DEFAULT_MAX_ORDER):
        gens = [tuple(g) for g in generators]
        if degree is None:
            degree = len(gens[0]) if gens else 1
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"{g} is not a permutation of {degree} points")
        self.degree = degree
        self.name = name
        identity = tuple(range(degree))
        elements = [identity]
        index = {identity: 0}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = tuple(x[g[i]] for i in range(degree))
                if y not in index:
                    if len(elements) >= max_order:
                        raise GroupTooLarge(f"group exceeds the order bound {max_order}")
                    index[y] = len(elements)
                    elements.append(y)
                    queue.append(y)
        self.elements = elements
        self._index = index
        self.generators = [index[g] for g in gens]
        m = len(elements)
        self.mul_table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elements]
                          for a in elements]
        self.inv_table = [row.index(0) for row in self.mul_table]
        self._check_closure()

    def _check_closure(self):
        for row in self.mul_table:
            if len(set(row)) != len(row):
                raise ArithmeticError("multiplication table is not a Latin square")

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order {self.order})"

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    @property
    def whole(self) -> frozenset:
        return frozenset(range(self.order))

    @property
    def trivial(self) -> frozenset:
        return frozenset([0])

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def element(self, perm) -> int:
        return self._index[tuple(perm)]

    # subgroups -------------------------------------------------------------

    def closure(self, gens) -> frozenset:
        seen = {0}
        queue = deque([0])
        gens = list(gens)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    @cached_property
    def subgroups(self) -> list:
        """Every subgroup, ordered by size and then by sorted elements."""
        found = {self.trivial: [0]}
        queue = deque([self.trivial])
        while queue:
            S = queue.popleft()
            gens = found[S]
            for g in range(self.order):
                if g in S:
                    continue
                T = self.closure(gens + [g])
                if T not in found:
                    found[T] = gens + [g]
                    queue.append(T)
        return sorted(found, key=lambda S: (len(S), sorted(S)))

    def conjugate(self, S: frozenset, g: int) -> frozenset:
        return frozenset(self.conj(g, x) for x in S)

    def normalizer(self, S: frozenset) -> frozenset:
        return frozenset(g for g in range(self.order) if self.conjugate(S, g) == S)

    def are_conjugate(self, A: frozenset, B: frozenset, within=None) -> bool:
        within = range(self.order) if within is None else within
        return len(A) == len(B) and any(self.conjugate(A, g) == B for g in within)

    @cached_property
    def conjugacy_classes_of_subgroups(self) -> list:
        classes = []
        for S in self.subgroups:
            for cls in classes:
                if self.are_conjugate(cls[0], S):
                    cls.append(S)
                    break
            else:
                classes.append([S])
        return classes

    def class_representatives(self) -> list:
        return [cls[0] for cls in self.conjugacy_classes_of_subgroups]

    def is_subgroup(self, S: frozenset) -> bool:
        return 0 in S and all(self.mul(a, self.inv(b)) in S for a in S for b in S)

    def left_coset(self, g: int, S: frozenset) -> frozenset:
        return frozenset(self.mul(g, s) for s in S)

    def left_cosets(self, S: frozenset) -> list:
        seen, out = set(), []
        for g in range(self.order):
            if g not in seen:
                c = self.left_coset(g, S)
                seen |= c
                out.append(c)
        return out


# ---------------------------------------------------------------------------
# named groups and cycle notation


def _cycle_perm(degree: int, cycle) -> tuple:
    img = list(range(degree))
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        img[a] = b
    return tuple(img)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([_cycle_perm(n, list(range(n)))] if n > 1 else [], degree=n, name=f"C{n}")


def symmetric_group(n: int) -> FiniteGroup:
    gens = [_cycle_perm(n, list(range(n))), _cycle_perm(n, [0, 1])] if n > 1 else []
    return FiniteGroup(gens, degree=n, name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    gens = [_cycle_perm(n, [0, 1, k]) for k in range(2, n)]
    return FiniteGroup(gens, degree=n, name=f"A{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, of order 2n."""
    if n < 3:
        raise ValueError("dihedral groups are named by the polygon, which needs n >= 3")
    rotation = _cycle_perm(n, list(range(n)))
    reflection = tuple((-i) % n for i in range(n))
    return FiniteGroup([rotation, reflection], degree=n, name=f"D{n}")


_NAMED = {"C": cyclic_group, "S": symmetric_group, "A": alternating_group, "D": dihedral_group}


def parse_cycles(text: str, degree: int | None = None) -> list:
    """Parse generators in 1-based cycle notation, separated by ';'.

    ``"(1,2,3);(1,2)"`` gives two generators; ``"(1 2)(3 4)"`` one.
    """
    gens_cycles = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        cycles = re.findall(r"\(([^()]*)\)", chunk)
        if not cycles or re.sub(r"\([^()]*\)", "", chunk).strip():
            raise ValueError(f"cannot parse cycle notation {chunk!r}")
        gens_cycles.append([[int(x) - 1 for x in re.split(r"[,\s]+", c.strip()) if x] for c in cycles])
    points = [x for g in gens_cycles for c in g for x in c]
    if any(x < 0 for x in points):
        raise ValueError("points are numbered from 1")
    need = max(points) + 1 if points else 1
    degree = need if degree is None else degree
    if need > degree:
        raise ValueError(f"cycle notation mentions point {need} beyond degree {degree}")
    out = []
    for g in gens_cycles:
        img = list(range(degree))
        for c in g:
            if len(set(c)) != len(c):
                raise ValueError(f"repeated point in cycle {c}")
            perm = _cycle_perm(degree, c)
            img = [perm[img[i]] for i in range(degree)]
        out.append(tuple(img))
    return out


def parse_group(text: str, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """A group by name (Cn, Sn, An, Dn) or by generators in cycle notation."""
    text = text.strip()
    hit = re.fullmatch(r"([CSAD])(\d+)", text)
    if hit:
        return _NAMED[hit.group(1)](int(hit.group(2)))
    return FiniteGroup(parse_cycles(text), name=text, max_order=max_order)


def parse_subgroup(G: FiniteGroup, text: str) -> frozenset:
    """``e`` (trivial), ``G`` (whole group) or generators in cycle notation."""
    text = text.strip()
    if text in ("e", "1", "{e}"):
        return G.trivial
    if text == "G":
        return G.whole
    try:
        gens = [G.element(g) for g in parse_cycles(text, G.degree)]
    except KeyError as exc:
        raise ValueError(f"{text!r} is not inside {G.name}") from exc
    return G.closure(gens)


# ---------------------------------------------------------------------------
# quotient groups


def quotient_structure(G: FiniteGroup, L: frozenset, H: frozenset) -> str:
    """Name of L/H (H normal in L): ``Cm``, a product of cyclic groups, or its order."""
    cosets = {}
    for x in L:
        c = G.left_coset(x, H)
        cosets.setdefault(c, x)
    reps = list(cosets.values())
    m = len(reps)
    if m == 1:
        return "1"

    def power_in_H(x, k):
        y = 0
        for _ in range(k):
            y = G.mul(y, x)
        return y in H

    abelian = all(G.mul(G.mul(a, b), G.inv(G.mul(b, a))) in H for a in reps for b in reps)
    if not abelian:
        return f"nonabelian of order {m}"
    factors = []
    for q in _primes(m):
        # elements of order dividing q^k count q^{sum_i min(k, e_i)}
        logs, k = [0], 1
        while True:
            count = sum(1 for x in reps if power_in_H(x, q ** k))
            logs.append(_ilog(count, q))
            if logs[-1] == logs[-2]:
                break
            k += 1
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs) - 1)]
        exps = [sum(1 for t in at_least if t > i) for i in range(at_least[0])] if at_least else []
        factors.append([q ** e for e in exps])
    width = max(len(f) for f in factors)
    invariant = []
    for i in range(width):
        d = 1
        for f in factors:
            if i < len(f):
                d *= f[i]
        invariant.append(d)
    return " x ".join(f"C{d}" for d in sorted(invariant))


def _primes(m: int) -> list:
    out, q = [], 2
    while m > 1:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    return out


def _ilog(x: int, q: int) -> int:
    k = 0
    while x > 1:
        x //= q
        k += 1
    return k


def is_prime_power(m: int) -> bool:
    return m > 1 and len(_primes(m)) == 1


# ---------------------------------------------------------------------------
# C(H, K), double cosets and the gluing index


def c_set(G: FiniteGroup, H: frozenset, K: frozenset) -> list:
    """The cosets gK with H <= gKg^-1 <= N(H), in a deterministic order."""
    NH = G.normalizer(H)
    out = []
    for coset in G.left_cosets(K):
        g = min(coset)
        L = G.conjugate(K, g)
        if H <= L <= NH:
            out.append(coset)
    return sorted(out, key=lambda c: min(c))


def _coset_of(G: FiniteGroup, g: int, K: frozenset) -> frozenset:
    return G.left_coset(g, K)


def check_actions(G: FiniteGroup, H: frozenset, K: frozenset) -> None:
    """C(H, K) is stable under N(H) on the left and N(K) on the right, and H acts trivially."""
    cs = set(c_set(G, H, K))
    NH, NK = G.normalizer(H), G.normalizer(K)
    for coset in cs:
        g = min(coset)
        for x in NH:
            if _coset_of(G, G.mul(x, g), K) not in cs:
                raise ArithmeticError("C(H,K) is not stable under N(H)")
        for h in H:
            if _coset_of(G, G.mul(h, g), K) != coset:
                raise ArithmeticError("H does not act trivially on C(H,K)")
        for y in NK:
            if _coset_of(G, G.mul(g, y), K) not in cs:
                raise ArithmeticError("C(H,K) is not stable under N(K)")


def double_cosets(G: FiniteGroup, H: frozenset, K: frozenset) -> list:
    """Partition of C(H, K) into W(H) \\ C(H, K) / W(K) classes, each a sorted list of cosets.

    The stabilizer-conjugacy bijection is verified on the way: the class of gK
    goes to the N(H)-conjugacy class of gKg^-1, and these classes are exactly
    the subgroups between H and N(H) that are G-conjugate to K.
    """
    cs = c_set(G, H, K)
    NH, NK = G.normalizer(H), G.normalizer(K)
    remaining = set(cs)
    classes = []
    for coset in cs:
        if coset not in remaining:
            continue
        g = min(coset)
        orbit = {_coset_of(G, G.mul(G.mul(x, g), y), K) for x in NH for y in NK}
        if not orbit <= remaining:
            raise ArithmeticError("double coset class leaves C(H,K)")
        remaining -= orbit
        classes.append(sorted(orbit, key=lambda c: min(c)))
    _verify_stabilizer_bijection(G, H, K, classes)
    return classes


def _verify_stabilizer_bijection(G, H, K, classes) -> None:
    NH = G.normalizer(H)
    stab_classes = []
    for cls in classes:
        subgroups = set()
        for coset in cls:
            g = min(coset)
            L = G.conjugate(K, g)
            stab = frozenset(x for x in NH if _coset_of(G, G.mul(x, g), K) == coset)
            if stab != L:
                raise ArithmeticError("stabilizer of gK in N(H) differs from gKg^-1")
            subgroups.add(L)
        first = next(iter(subgroups))
        if not all(G.are_conjugate(first, L, within=NH) for L in subgroups):
            raise ArithmeticError("one double coset class meets two W(H)-conjugacy classes")
        stab_classes.append(first)
    for i, A in enumerate(stab_classes):
        for B in stab_classes[i + 1:]:
            if G.are_conjugate(A, B, within=NH):
                raise ArithmeticError("two double coset classes share a W(H)-conjugacy class")
    targets = [L for L in G.subgroups if H <= L <= NH and G.are_conjugate(L, K)]
    for L in targets:
        if not any(G.are_conjugate(L, A, within=NH) for A in stab_classes):
            raise ArithmeticError("a subgroup conjugate to K between H and N(H) is missed")


@dataclass(frozen=True)
class GluingIndexDatum:
    representative: int
    conjugate: frozenset          # L = g K g^-1
    induction: frozenset          # N(H) n N(L), taken modulo L
    induction_order: int          # |(N(H) n N(L)) / L|
    tate_quotient: str            # structure of L / H
    tate_order: int
    class_size: int               # number of cosets in the double coset class

    @property
    def vanishes_for_spectra(self) -> bool:
        """Proper Tate constructions of groups that are not p-groups vanish."""
        return not is_prime_power(self.tate_order)

    def to_json(self, G: FiniteGroup) -> dict:
        return {"representative": _cycle_string(G.elements[self.representative]),
                "conjugate_order": len(self.conjugate),
                "induction_order": self.induction_order,
                "tate_quotient": self.tate_quotient,
                "tate_order": self.tate_order,
                "class_size": self.class_size}


def _cycle_string(perm) -> str:
    seen, parts = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        parts.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(parts) or "e"


def verify_product_decomposition(G: FiniteGroup, H: frozenset, L: frozenset) -> int:
    """Check N(H) x_{N(H) n N(L)} N(L)/L -> N(H) N(L) / L, [x, yL] -> xyL, is a bijection.

    Returns the common size |N(H)| |N(L)| / (|L| |N(H) n N(L)|).
    """
    NH, NL = G.normalizer(H), G.normalizer(L)
    both = NH & NL
    target = {G.left_coset(G.mul(x, y), L) for x in NH for y in NL}
    nl_cosets = [c for c in G.left_cosets(L) if c <= NL]
    classes = {}
    for x in NH:
        for c in nl_cosets:
            y = min(c)
            key = min((G.mul(x, t), min(G.left_coset(G.mul(G.inv(t), y), L))) for t in both)
            image = G.left_coset(G.mul(x, y), L)
            if classes.setdefault(key, image) != image:
                raise ArithmeticError("the balanced-product map is not well defined")
    if len(set(classes.values())) != len(classes) or set(classes.values()) != target:
        raise ArithmeticError("the balanced-product map is not a bijection")
    size = len(NH) * len(NL) // (len(L) * len(both))
    if size != len(target):
        raise ArithmeticError("orbit size disagrees with |N(H)||N(L)| / (|L||N(H) n N(L)|)")
    return size


def gluing_index(G: FiniteGroup, H: frozenset, K: frozenset) -> list:
    """One datum per double coset class of C(H, K), with the product lemma verified."""
    data = []
    for cls in double_cosets(G, H, K):
        g = min(cls[0])
        L = G.conjugate(K, g)
        size = verify_product_decomposition(G, H, L)
        if size != len(cls):
            raise ArithmeticError("double coset class differs in size from N(H)N(L)/L")
        both = G.normalizer(H) & G.normalizer(L)
        data.append(GluingIndexDatum(g, L, both, len(both) // len(L),
                                     quotient_structure(G, L, H), len(L) // len(H), len(cls)))
    return data


def verify_group(G: FiniteGroup) -> int:
    """Run every check on every ordered pair of subgroups; returns the number of pairs."""
    pairs = 0
    for H in G.subgroups:
        for K in G.subgroups:
            check_actions(G, H, K)
            data = gluing_index(G, H, K)
            if sum(d.class_size for d in data) != len(c_set(G, H, K)):
                raise ArithmeticError("classes do not exhaust C(H,K)")
            pairs += 1
    return pairs


def stratification_table(G: FiniteGroup) -> list:
    """Rows (|H|, |K|, data) over conjugacy class representatives with H below a conjugate of K."""
    reps = G.class_representatives()
    rows = []
    for H in reps:
        for K in reps:
            if len(K) % len(H) or not any(H <= G.conjugate(K, g) for g in range(G.order)):
                continue
            if H == K:
                continue
            rows.append((H, K, gluing_index(G, H, K)))
    return rows
