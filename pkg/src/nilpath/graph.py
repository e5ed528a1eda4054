"""The adjacency graph of root profiles over a fixed target profile.

Vertices are the profiles whose p-th power image equals the target; edges
are adjacency moves.  Chains between any two vertices follow the inductive
construction: strip common cells, otherwise walk the largest cell upward
inside its window until the supports meet.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ChainGuardError, PowerMismatchError
from .profiles import (
    AdjacencyMove,
    Profile,
    apply_move,
    enumerate_preimages,
    is_p_adjacent,
    profile_power,
)


@dataclass(frozen=True)
class ProfileGraph:
    p: int
    target: Profile
    vertices: tuple[Profile, ...]
    edges: tuple[tuple[Profile, Profile, AdjacencyMove], ...]

    def to_report_obj(self) -> dict:
        return {
            "p": self.p,
            "target": self.target.to_text(),
            "vertexCount": len(self.vertices),
            "edgeCount": len(self.edges),
            "connected": is_connected(self),
            "vertices": [v.to_text() for v in self.vertices],
            "edges": [
                {"from": u.to_text(), "to": v.to_text(), "move": mv.to_json_obj()}
                for u, v, mv in self.edges
            ],
        }


@dataclass(frozen=True)
class ProfileChain:
    steps: tuple[Profile, ...]
    moves: tuple[AdjacencyMove, ...]

    def __post_init__(self):
        if len(self.moves) != len(self.steps) - 1:
            raise ValueError("chain needs exactly one move per consecutive pair")

    def to_json_obj(self) -> dict:
        return {
            "steps": [s.to_text() for s in self.steps],
            "moves": [mv.to_json_obj() for mv in self.moves],
        }


def _sort_key(profile: Profile):
    return profile.partition()


def build_graph(target: Profile, p: int, cap: Optional[int] = None) -> ProfileGraph:
    """Graph on all preimage profiles with every adjacent pair as an edge."""
    vertices = sorted(enumerate_preimages(target, p, cap=cap), key=_sort_key, reverse=True)
    edges = []
    for i, u in enumerate(vertices):
        for v in vertices[i + 1 :]:
            move = is_p_adjacent(u, v, p)
            if move is not None:
                edges.append((u, v, move))
    return ProfileGraph(p, target, tuple(vertices), tuple(edges))


def is_connected(g: ProfileGraph) -> bool:
    """Breadth-first reachability; empty and singleton graphs count as connected."""
    if len(g.vertices) <= 1:
        return True
    adj: dict[Profile, list[Profile]] = {v: [] for v in g.vertices}
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(g.vertices)


def _chain(m: Profile, m2: Profile, p: int) -> tuple[list[Profile], list[AdjacencyMove]]:
    if m == m2:
        return [m], []

    common = [k for k in m.support() if m2.get(k) > 0]
    if common:
        k = max(common)
        sub_steps, sub_moves = _chain(m.plus(k, -1), m2.plus(k, -1), p)
        return [s.plus(k, 1) for s in sub_steps], sub_moves

    # Disjoint supports: raise the top of the side missing the overall
    # largest cell size q, one window step at a time, until q is reached.
    q = max(m.max_index(), m2.max_index())
    swapped = m2.get(q) == 0
    if swapped:
        m, m2 = m2, m
    a = -(-q // p) - 1  # least a with q in [p*a, p*(a+1)]; then q > p*a

    steps = [m]
    moves: list[AdjacencyMove] = []
    cur = m
    guard = m.size() + m.max_index() + q + 8
    while cur.get(q) == 0:
        window = [i for i in range(p * a + 1, p * (a + 1) + 1) if cur.get(i) > 0]
        if not window:
            raise ChainGuardError("no cell available inside the window")
        k = max(window)
        if cur.get(k) > 1:
            move = AdjacencyMove(a, k - 1, k + 1, "backward", p)
        else:
            lower = [i for i in range(p * a + 1, k) if cur.get(i) > 0]
            if not lower:
                raise ChainGuardError("no partner cell below the window top")
            l = max(lower)
            move = AdjacencyMove(a, l - 1, k + 1, "backward", p)
        cur = apply_move(cur, move)
        steps.append(cur)
        moves.append(move)
        guard -= 1
        if guard < 0:
            raise ChainGuardError("window walk failed to terminate")

    rest_steps, rest_moves = _chain(cur, m2, p)
    steps = steps[:-1] + rest_steps
    moves = moves + rest_moves
    if swapped:
        steps.reverse()
        moves = [mv.flipped() for mv in reversed(moves)]
    return steps, moves


def profile_chain(m: Profile, m2: Profile, p: int) -> ProfileChain:
    """Chain of pairwise-adjacent profiles from m to m2.

    Requires equal p-th power images; the construction recurses on common
    support and otherwise walks the largest cell upward, so chain length is
    bounded by the profile size.
    """
    if profile_power(m, p) != profile_power(m2, p):
        raise PowerMismatchError("profiles have different power images")
    steps, moves = _chain(m, m2, p)
    return ProfileChain(tuple(steps), tuple(moves))


def export_dot(g: ProfileGraph) -> str:
    """GraphViz DOT: nodes labeled by canonical profile text, edges (a,k,l)."""
    lines = [f"graph profiles_p{g.p} {{"]
    for v in g.vertices:
        lines.append(f'  "{v.to_text()}";')
    for u, v, mv in g.edges:
        lines.append(
            f'  "{u.to_text()}" -- "{v.to_text()}" [label="({mv.a},{mv.k},{mv.l})"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
