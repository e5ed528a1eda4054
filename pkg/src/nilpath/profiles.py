"""Profile combinatorics: multiplicity sequences of Jordan cell sizes.

A profile maps cell size k >= 1 to a positive count; absent keys mean zero.
Profiles of the same size are related by the power map and by adjacency
moves, which trade a pair of cells (k, l) inside a window
``p*a <= k < l <= p*(a+1)`` for the pair (k+1, l-1).  Size-0 cells are
dropped everywhere (the empty-cell convention).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Mapping, Optional

from .errors import InputFormatError, InvalidMoveError, SizeCapExceededError

DEFAULT_SIZE_CAP = 24
_SIZE_CAP_ENV = "NILPATH_SIZE_CAP"

#: Signed multiplicity vectors (differences of profiles).
ProfileDelta = dict


def size_cap() -> int:
    value = os.environ.get(_SIZE_CAP_ENV)
    if value is None:
        return DEFAULT_SIZE_CAP
    try:
        return int(value)
    except ValueError:
        raise InputFormatError(f"{_SIZE_CAP_ENV} must be an integer") from None


class Profile:
    """Immutable finite-support multiplicity sequence, canonically stored."""

    __slots__ = ("_counts", "_hash")

    def __init__(self, counts: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = counts.items() if isinstance(counts, Mapping) else counts
        store = {}
        for k, c in items:
            if k < 1:
                raise ValueError(f"cell size must be positive, got {k}")
            if c < 0:
                raise ValueError(f"negative multiplicity at size {k}")
            if c:
                store[int(k)] = store.get(int(k), 0) + int(c)
        self._counts = store
        self._hash = hash(frozenset(store.items()))

    @staticmethod
    def single(k: int) -> "Profile":
        """Profile of a single size-k cell; k = 0 gives the empty profile."""
        return Profile({k: 1}) if k > 0 else Profile()

    @staticmethod
    def from_partition(parts: Iterable[int]) -> "Profile":
        counts: dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        return Profile(counts)

    # -- queries ---------------------------------------------------------

    def get(self, k: int) -> int:
        return self._counts.get(k, 0)

    def items(self) -> list[tuple[int, int]]:
        """(size, count) pairs in descending size order."""
        return sorted(self._counts.items(), reverse=True)

    def support(self) -> list[int]:
        return sorted(self._counts, reverse=True)

    def max_index(self) -> int:
        return max(self._counts) if self._counts else 0

    def size(self) -> int:
        return sum(k * c for k, c in self._counts.items())

    def total_cells(self) -> int:
        return sum(self._counts.values())

    def is_empty(self) -> bool:
        return not self._counts

    def partition(self) -> tuple[int, ...]:
        """Descending list of parts, one per cell."""
        out = []
        for k, c in self.items():
            out.extend([k] * c)
        return tuple(out)

    # -- arithmetic -------------------------------------------------------

    def plus(self, k: int, c: int = 1) -> "Profile":
        """Profile with the count at size k shifted by c (k = 0 is a no-op)."""
        if k == 0 or c == 0:
            return self
        new = self.get(k) + c
        if new < 0:
            raise InvalidMoveError(f"count at size {k} would become negative")
        counts = dict(self._counts)
        if new:
            counts[k] = new
        else:
            counts.pop(k, None)
        return Profile(counts)

    def __add__(self, other: "Profile") -> "Profile":
        counts = dict(self._counts)
        for k, c in other._counts.items():
            counts[k] = counts.get(k, 0) + c
        return Profile(counts)

    def delta(self, other: "Profile") -> ProfileDelta:
        """Signed difference self - other as a plain dict."""
        out = dict(self._counts)
        for k, c in other._counts.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return out

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Profile({self.to_text()!r})"

    # -- text and JSON -----------------------------------------------------

    def to_text(self) -> str:
        """Canonical ``k:count`` pairs, descending; empty profile is ''."""
        return ",".join(f"{k}:{c}" for k, c in self.items())

    @staticmethod
    def from_text(text: str) -> "Profile":
        text = text.strip()
        if not text:
            return Profile()
        counts = {}
        for piece in text.split(","):
            try:
                k_str, c_str = piece.split(":")
                k, c = int(k_str), int(c_str)
            except ValueError:
                raise InputFormatError(f"bad profile fragment {piece!r}") from None
            if k < 1 or c < 1:
                raise InputFormatError(f"bad profile fragment {piece!r}")
            if k in counts:
                raise InputFormatError(f"duplicate size {k} in profile text")
            counts[k] = c
        return Profile(counts)

    def to_json_obj(self) -> dict:
        return {str(k): c for k, c in self.items()}

    @staticmethod
    def from_json_obj(obj) -> "Profile":
        if not isinstance(obj, dict):
            raise InputFormatError("profile JSON must be an object")
        try:
            return Profile({int(k): int(c) for k, c in obj.items()})
        except (ValueError, TypeError) as exc:
            raise InputFormatError(f"bad profile JSON: {exc}") from None


@dataclass(frozen=True)
class AdjacencyMove:
    """Witness of an adjacency step inside the window [p*a, p*(a+1)].

    Applied forward to m it yields ``m - e_k - e_l + e_(k+1) + e_(l-1)``;
    backward is the inverse.  The degenerate solution l = k+1 is excluded.
    """

    a: int
    k: int
    l: int
    direction: str  # "forward" | "backward"
    p: int

    def __post_init__(self):
        if self.direction not in ("forward", "backward"):
            raise ValueError("direction must be 'forward' or 'backward'")
        if not (0 <= self.p * self.a <= self.k < self.l <= self.p * (self.a + 1)):
            raise InvalidMoveError(
                f"window violation: need {self.p}*{self.a} <= {self.k} < {self.l}"
                f" <= {self.p}*({self.a}+1)"
            )
        if self.l == self.k + 1:
            raise InvalidMoveError("degenerate move l = k+1")

    def flipped(self) -> "AdjacencyMove":
        other = "backward" if self.direction == "forward" else "forward"
        return replace(self, direction=other)

    def to_json_obj(self) -> dict:
        return {
            "a": self.a,
            "k": self.k,
            "l": self.l,
            "direction": self.direction,
            "p": self.p,
        }

    @staticmethod
    def from_json_obj(obj) -> "AdjacencyMove":
        try:
            return AdjacencyMove(
                int(obj["a"]), int(obj["k"]), int(obj["l"]), obj["direction"], int(obj["p"])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"bad move JSON: {exc}") from None


def size(m: Profile) -> int:
    """Total dimension sum(k * m_k) of any matrix realizing the profile."""
    return m.size()


def cell_power_profile(k: int, p: int) -> Profile:
    """Profile of the p-th power of a single size-k cell.

    With a = k // p and r = k % p the power splits into r chains of length
    a+1 and p - r chains of length a; empty chains are dropped.
    """
    if k < 0:
        raise ValueError("cell size must be non-negative")
    if p < 1:
        raise ValueError("power must be positive")
    if k == 0:
        return Profile()
    a, r = divmod(k, p)
    counts = {}
    if r:
        counts[a + 1] = r
    if a and p - r:
        counts[a] = p - r
    return Profile(counts)


def profile_power(m: Profile, p: int) -> Profile:
    """Image of the profile under the p-th power map.

    Entry a >= 1 of the image is ``sum_(|j| < p) (p - |j|) * m_(p*a + j)``,
    the triangular-weighted window sum around p*a.
    """
    if p < 1:
        raise ValueError("power must be positive")
    if m.is_empty():
        return Profile()
    top = m.max_index()
    counts = {}
    for a in range(1, top // p + 2):
        total = 0
        for j in range(-p + 1, p):
            idx = p * a + j
            if idx >= 1:
                total += (p - abs(j)) * m.get(idx)
        if total:
            counts[a] = total
    return Profile(counts)


def _move_delta(k: int, l: int) -> ProfileDelta:
    """Signed dict of e_k + e_l - e_(k+1) - e_(l-1) with e_0 dropped."""
    out: dict[int, int] = {}
    for idx, sgn in ((k, 1), (l, 1), (k + 1, -1), (l - 1, -1)):
        if idx >= 1:
            v = out.get(idx, 0) + sgn
            if v:
                out[idx] = v
            else:
                out.pop(idx, None)
    return out


def _window_a(k: int, l: int, p: int) -> Optional[int]:
    """Least a with p*a <= k < l <= p*(a+1), or None."""
    a = -(-l // p) - 1  # ceil(l/p) - 1
    if a < 0:
        a = 0
    if p * a <= k < l <= p * (a + 1):
        return a
    return None


def is_p_adjacent(m: Profile, m2: Profile, p: int) -> Optional[AdjacencyMove]:
    """Witnessing move from m to m2 when the two are p-adjacent, else None.

    Candidate (k, l) pairs are read off the support of the difference: the
    positive part of the signed pattern is e_k + e_l (just e_l when k = 0),
    so at most two candidates exist per sign.
    """
    if p < 1:
        raise ValueError("power must be positive")
    if m == m2:
        return None
    diff = m.delta(m2)
    for sign, direction in ((1, "forward"), (-1, "backward")):
        signed = {idx: sign * c for idx, c in diff.items()}
        pos = sorted(idx for idx, c in signed.items() if c > 0)
        if len(pos) == 2 and all(signed[idx] == 1 for idx in pos):
            k, l = pos
        elif len(pos) == 1 and signed[pos[0]] == 1:
            k, l = 0, pos[0]
        else:
            continue
        if l < k + 2:
            continue
        if signed != _move_delta(k, l):
            continue
        a = _window_a(k, l, p)
        if a is None:
            continue
        return AdjacencyMove(a, k, l, direction, p)
    return None


def apply_move(m: Profile, move: AdjacencyMove) -> Profile:
    """Apply an adjacency move; InvalidMove if a count would go negative."""
    k, l = move.k, move.l
    if move.direction == "forward":
        return m.plus(k, -1).plus(l, -1).plus(k + 1, 1).plus(l - 1, 1)
    return m.plus(k + 1, -1).plus(l - 1, -1).plus(k, 1).plus(l, 1)


def partitions(n: int, max_part: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """All partitions of n with parts descending, largest part first."""
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def profiles_of_size(n: int) -> Iterator[Profile]:
    for parts in partitions(n):
        yield Profile.from_partition(parts)


def enumerate_preimages(target: Profile, p: int, cap: Optional[int] = None) -> set[Profile]:
    """All profiles m of matching size with ``profile_power(m, p) == target``.

    Walks partitions of size(target) by descending parts, accumulating the
    power image and pruning as soon as some entry overshoots the target.
    """
    if p < 1:
        raise ValueError("power must be positive")
    if cap is None:
        cap = size_cap()
    n = target.size()
    if n > cap:
        raise SizeCapExceededError(f"size {n} exceeds cap {cap}")
    target_counts = {k: c for k, c in target.items()}
    found: set[Profile] = set()

    def overshoot(acc: dict[int, int]) -> bool:
        return any(c > target_counts.get(k, 0) for k, c in acc.items())

    def walk(remaining: int, max_part: int, parts: list[int], acc: dict[int, int]):
        if remaining == 0:
            if acc == target_counts:
                found.add(Profile.from_partition(parts))
            return
        for part in range(min(max_part, remaining), 0, -1):
            contrib = cell_power_profile(part, p)
            for k, c in contrib.items():
                acc[k] = acc.get(k, 0) + c
            if not overshoot(acc):
                parts.append(part)
                walk(remaining - part, part, parts, acc)
                parts.pop()
            for k, c in contrib.items():
                v = acc[k] - c
                if v:
                    acc[k] = v
                else:
                    del acc[k]

    walk(n, n if n else 1, [], {})
    return found
