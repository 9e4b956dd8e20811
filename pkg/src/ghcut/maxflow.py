"""Exact s-t maximum flow / minimum cut via blocking flows.

Undirected edges become paired residual arcs (arc i and arc i^1 are mutual
reverses, both starting at the edge weight).  The reported cut side is the
set of vertices NOT reachable from the source in the final residual network,
so the complement is the unique minimal source side among minimum cuts.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import ContractionMap, Cut, Graph, contract


@dataclass(frozen=True)
class FlowResult:
    """Max-flow value plus the canonical minimum cut (sink side stored)."""

    value: int
    mincut: Cut


class _Dinic:
    __slots__ = ("n", "adj", "to", "cap")

    def __init__(self, g: Graph):
        self.n = g.n
        self.adj: list[list[int]] = [[] for _ in range(g.n)]
        to: list[int] = []
        cap: list[int] = []
        for u, v, w in g.edges:
            self.adj[u].append(len(to))
            to.append(v)
            cap.append(w)
            self.adj[v].append(len(to))
            to.append(u)
            cap.append(w)
        self.to = to
        self.cap = cap

    def _levels(self, s: int) -> list[int]:
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        to, cap, adj = self.to, self.cap, self.adj
        while q:
            u = q.popleft()
            lu = level[u]
            for a in adj[u]:
                v = to[a]
                if cap[a] > 0 and level[v] < 0:
                    level[v] = lu + 1
                    q.append(v)
        return level

    def solve(self, s: int, t: int) -> int:
        to, cap, adj = self.to, self.cap, self.adj
        flow = 0
        while True:
            level = self._levels(s)
            if level[t] < 0:
                return flow
            it = [0] * self.n
            while True:
                path: list[int] | None = []
                v = s
                while v != t:
                    advanced = False
                    arcs = adj[v]
                    i = it[v]
                    while i < len(arcs):
                        a = arcs[i]
                        w = to[a]
                        if cap[a] > 0 and level[w] == level[v] + 1:
                            it[v] = i
                            path.append(a)
                            v = w
                            advanced = True
                            break
                        i += 1
                    if not advanced:
                        it[v] = i
                        if v == s:
                            path = None
                            break
                        level[v] = -1  # dead end inside this phase
                        a = path.pop()
                        v = to[a ^ 1]
                        it[v] += 1
                if path is None:
                    break
                bott = min(cap[a] for a in path)
                for a in path:
                    cap[a] -= bott
                    cap[a ^ 1] += bott
                flow += bott

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        stack = [s]
        to, cap, adj = self.to, self.cap, self.adj
        while stack:
            u = stack.pop()
            for a in adj[u]:
                v = to[a]
                if cap[a] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen


def max_flow(g: Graph, s: int, t: int) -> FlowResult:
    """Minimum s-t cut value and the cut with the minimal source side.

    Disconnected s and t yield value 0 with the component of s as the source
    side.  s == t is rejected.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError(f"terminal out of range: s={s}, t={t}, n={g.n}")
    if s == t:
        raise ValueError("source and sink must differ")
    # Contraction drives most recursive calls down to two or three vertices,
    # where the minimal source side has a closed form; skip the solver there.
    if g.n == 2:
        value = g.edges[0][2] if g.edges else 0
        return FlowResult(value, Cut(frozenset((t,)), value))
    if g.n == 3:
        x = 3 - s - t
        a = b = c = 0
        for u, v, w in g.edges:
            if {u, v} == {s, t}:
                a = w
            elif {u, v} == {s, x}:
                b = w
            else:
                c = w
        value = a + min(b, c)
        side = frozenset((t,)) if c < b else frozenset((t, x))
        return FlowResult(value, Cut(side, value))
    solver = _Dinic(g)
    value = solver.solve(s, t)
    reach = solver.residual_reachable(s)
    side = frozenset(v for v in range(g.n) if v not in reach)
    return FlowResult(value, Cut(side, value))


def max_flow_multi(g: Graph, s: int, sinks) -> FlowResult:
    """Minimum cut separating s from every vertex in `sinks` at once.

    Equivalent to contracting `sinks` to one vertex; the cut is lifted back
    to original vertex ids.
    """
    sink_set = frozenset(sinks)
    if not sink_set:
        raise ValueError("need at least one sink")
    if s in sink_set:
        raise ValueError("source may not be a sink")
    quotient, cmap = contract(g, [sink_set])
    res = max_flow(quotient, cmap.forward[s], cmap.forward[min(sink_set)])
    side = cmap.lift_side(res.mincut.side)
    return FlowResult(res.value, Cut(side, res.value))
