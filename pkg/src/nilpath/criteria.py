"""Existence criteria for p-th roots and for general analytic preimages.

An analytic right-hand side enters only through the multiplicities of its
zeros (:class:`ZeroSpec`).  Solvability reduces to membership of the target
profile in the semigroup generated by ``(p - r) e_a + r e_(a+1)`` over the
finite zero multiplicities p, plus e_1 when some zero has infinite
multiplicity; the witness search is an exact dynamic program over
sub-profiles.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Optional

from .errors import SizeCapExceededError
from .profiles import Profile, enumerate_preimages, profile_power, size_cap


@dataclass(frozen=True)
class ZeroSpec:
    """Zero multiplicities of the analytic function, nothing else."""

    finite_multiplicities: tuple[int, ...]
    has_infinite_zero: bool = False

    def __post_init__(self):
        mults = tuple(sorted(self.finite_multiplicities))
        if any(p < 1 for p in mults):
            raise ValueError("zero multiplicities must be positive")
        object.__setattr__(self, "finite_multiplicities", mults)


@dataclass(frozen=True)
class SemigroupWitness:
    """Generator decomposition summing exactly to the queried profile.

    Each finite generator (p, a, r) contributes (p - r) cells of size a and
    r cells of size a+1 (size-0 cells dropped); ``e1_count`` counts uses of
    the infinite-multiplicity generator e_1.
    """

    generators: tuple[tuple[int, int, int], ...]
    e1_count: int = 0

    def total_profile(self) -> Profile:
        total = Profile({1: self.e1_count} if self.e1_count else {})
        for p, a, r in self.generators:
            counts = {}
            if a and p - r:
                counts[a] = p - r
            if r:
                counts[a + 1] = r
            total = total + Profile(counts)
        return total


def has_pth_root(m: Profile, p: int) -> bool:
    """Remainder criterion: wherever R_k = (sum of m_j for j > k) mod p is
    nonzero, the count m_k must be at least p - R_k."""
    if p < 1:
        raise ValueError("power must be positive")
    top = m.max_index()
    tail = 0  # running sum of m_j for j > k, built from the top down
    for k in range(top, 0, -1):
        rem = tail % p
        if rem and p - m.get(k) > rem:
            return False
        tail += m.get(k)
    return True


def find_root_profile(m: Profile, p: int, cap: Optional[int] = None) -> Optional[Profile]:
    """Some profile whose p-th power image is m, or None.

    Greedy pass: repeatedly merge the largest remaining cells into one root
    cell (p cells of equal size a+1 make a root cell of size p*(a+1);
    otherwise r < p cells of size a+1 join p - r cells of size a into a
    root cell of size p*a + r).  The result is verified; on any failure the
    exhaustive preimage enumeration decides.
    """
    if not has_pth_root(m, p):
        return None
    parts = []
    remaining = m
    ok = True
    while not remaining.is_empty():
        a1 = remaining.max_index()
        c = remaining.get(a1)
        if c >= p:
            parts.append(p * a1)
            remaining = remaining.plus(a1, -p)
            continue
        r = c
        a = a1 - 1
        if a and remaining.get(a) < p - r:
            ok = False
            break
        parts.append(p * a + r)
        remaining = remaining.plus(a1, -r)
        if a:
            remaining = remaining.plus(a, -(p - r))
    if ok:
        candidate = Profile.from_partition(parts)
        if profile_power(candidate, p) == m:
            return candidate
    pre = enumerate_preimages(m, p, cap=cap)
    if not pre:
        return None
    return min(pre, key=lambda q: q.partition())


def _finite_generators(spec: ZeroSpec, m: Profile) -> list[tuple[tuple[int, int, int], Profile]]:
    """All usable finite generators (p, a, r), smallest keys first.

    Generators touching sizes above the support of m can never appear in a
    witness, which bounds a; for multiplicities above size(m) only the
    a = 0 forms (pure e_1 bundles) survive.
    """
    top = m.max_index()
    total = m.size()
    gens = []
    seen = set()
    for p in spec.finite_multiplicities:
        max_a = top if p <= total else 0
        for a in range(0, max_a + 1):
            for r in range(0, p + 1):
                if a == 0 and r == 0:
                    continue  # the zero profile generates nothing
                counts = {}
                if a and p - r:
                    counts[a] = p - r
                if r:
                    counts[a + 1] = r
                g = Profile(counts)
                if g.is_empty() or g.size() > total:
                    continue
                if any(c > m.get(k) for k, c in g.items()):
                    continue
                key = (p, a, r)
                if key in seen:
                    continue
                seen.add(key)
                gens.append((key, g))
    gens.sort(key=lambda item: item[0])
    return gens


def is_f_solvable(
    spec: ZeroSpec, m: Profile, cap: Optional[int] = None
) -> Optional[SemigroupWitness]:
    """Witness that m lies in the zero-multiplicity semigroup, or None.

    Dijkstra-style dynamic program over sub-profiles of m (count vectors on
    the support), ordered by generator count with the lexicographically
    smallest generator multiset breaking ties.  Witnesses are therefore
    stable across runs.  Finite generators are keyed (0, p, a, r); the
    infinite-multiplicity e_1 generator is keyed (1, 0, 0, 0).
    """
    if cap is None:
        cap = size_cap()
    if m.size() > cap:
        raise SizeCapExceededError(f"size {m.size()} exceeds cap {cap}")

    support = sorted(m.support())
    index = {k: i for i, k in enumerate(support)}
    limits = tuple(m.get(k) for k in support)
    target = limits

    gens: list[tuple[tuple[int, int, int, int], tuple[int, ...]]] = []
    for (p, a, r), g in _finite_generators(spec, m):
        vec = [0] * len(support)
        for k, c in g.items():
            vec[index[k]] = c
        gens.append(((0, p, a, r), tuple(vec)))
    if spec.has_infinite_zero and 1 in index:
        vec = [0] * len(support)
        vec[index[1]] = 1
        gens.append(((1, 0, 0, 0), tuple(vec)))

    start = tuple([0] * len(support))
    best: dict[tuple[int, ...], tuple] = {start: ()}
    heap: list[tuple] = [(0, (), start)]
    while heap:
        count, witness, state = heapq.heappop(heap)
        if best.get(state) != witness:
            continue  # stale entry
        if state == target:
            break
        for key, vec in gens:
            nxt = tuple(s + v for s, v in zip(state, vec))
            if any(a > b for a, b in zip(nxt, limits)):
                continue
            cand = tuple(sorted(witness + (key,)))
            known = best.get(nxt)
            if known is None or (len(cand), cand) < (len(known), known):
                best[nxt] = cand
                heapq.heappush(heap, (count + 1, cand, nxt))
    hit = best.get(target)
    if hit is None:
        return None
    finite = tuple((p, a, r) for tag, p, a, r in hit if tag == 0)
    e1_count = sum(1 for key in hit if key[0] == 1)
    return SemigroupWitness(finite, e1_count)


def special_two_three(m: Profile) -> bool:
    """Closed-form test for zero multiplicities {2, 3}.

    Returns False exactly when some run m_(k+1) = ... = m_(k+2l-1) = 1 of
    odd length is flanked by zeros at k and k+2l (k, l positive).
    """
    top = m.max_index()
    for k in range(1, top):
        if m.get(k):
            continue
        max_l = (top + 1 - k) // 2 + 1
        for l in range(1, max_l + 1):
            if m.get(k + 2 * l):
                continue
            if all(m.get(k + i) == 1 for i in range(1, 2 * l)):
                return False
    return True
