"""Steiner trees over graph vertices and their centroid decomposition.

A Steiner tree here is any tree whose nodes are vertex ids of some graph;
its edges do NOT need to be graph edges.  Trees guide the recursive min-cut
search: the decomposition splits a tree at a centroid into the parts used by
the search, and `prune_sample` draws the random subtrees kept by one pruning
round.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Cut, Graph, GraphFormatError


class SteinerTree:
    """Immutable tree on integer vertex ids with a designated source."""

    __slots__ = ("vertices", "edges", "source")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]], source: int):
        vs = tuple(sorted(set(vertices)))
        vset = set(vs)
        if source not in vset:
            raise ValueError(f"source {source} not among tree vertices")
        norm = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"tree edge ({u},{v}) is a self-loop")
            if u not in vset or v not in vset:
                raise ValueError(f"tree edge ({u},{v}) leaves the vertex set")
            norm.append((u, v) if u < v else (v, u))
        es = tuple(sorted(norm))
        if len(set(es)) != len(es):
            raise ValueError("duplicate tree edge")
        if len(es) != len(vs) - 1:
            raise ValueError(f"{len(vs)} vertices need {len(vs) - 1} tree edges, got {len(es)}")
        adj: dict[int, list[int]] = {v: [] for v in vs}
        for u, v in es:
            adj[u].append(v)
            adj[v].append(u)
        seen = {source}
        stack = [source]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != len(vs):
            raise ValueError("tree edges do not connect the vertex set")
        self.vertices = vs
        self.edges = es
        self.source = source

    @property
    def size(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for u, w in self.edges if v in (u, w))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SteinerTree)
            and self.vertices == other.vertices
            and self.edges == other.edges
            and self.source == other.source
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges, self.source))

    def __repr__(self) -> str:
        return f"SteinerTree(size={self.size}, source={self.source})"


@dataclass(frozen=True)
class Decomposition:
    """Split of a tree at its centroid, seen from the source.

    `path` runs from the source to the centroid.  `side_trees` are the
    components of the tree minus the centroid that do not contain the
    source.  `forest` holds the subtrees hanging off the source away from
    the path, and `trunk` is everything else: the path interior with its
    hanging subtrees, plus the centroid itself.  When source == centroid the
    forest and trunk are empty and every component is a side tree.
    """

    centroid: int
    path: tuple[int, ...]
    forest: frozenset[int]
    trunk: frozenset[int]
    side_trees: tuple[frozenset[int], ...]


def centroid(t: SteinerTree) -> int:
    """Vertex minimising the largest component left by its removal.

    Ties break to the lowest id; every remaining component has at most
    floor(2/3 * size) vertices.
    """
    n = t.size
    if n == 1:
        return t.vertices[0]
    adj = t.adjacency()
    root = t.source
    order: list[int] = []
    parent: dict[int, int | None] = {root: None}
    stack = [root]
    while stack:
        u = stack.pop()
        order.append(u)
        for v in adj[u]:
            if v != parent[u]:
                parent[v] = u
                stack.append(v)
    sub = {v: 1 for v in t.vertices}
    for u in reversed(order):
        p = parent[u]
        if p is not None:
            sub[p] += sub[u]
    best_v = -1
    best = n + 1
    for v in t.vertices:
        worst = n - sub[v]
        for w in adj[v]:
            if w != parent[v]:
                worst = max(worst, sub[w])
        if worst < best:
            best, best_v = worst, v
    return best_v


def _components_without(t: SteinerTree, removed: int) -> list[frozenset[int]]:
    adj = t.adjacency()
    seen = {removed}
    comps: list[frozenset[int]] = []
    for start in t.vertices:
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    comp.add(v)
                    stack.append(v)
        comps.append(frozenset(comp))
    comps.sort(key=min)
    return comps


def decompose(t: SteinerTree) -> Decomposition:
    """Centroid split of `t`; see `Decomposition` for the part semantics."""
    c = centroid(t)
    s = t.source
    if s == c:
        return Decomposition(
            centroid=c,
            path=(s,),
            forest=frozenset(),
            trunk=frozenset(),
            side_trees=tuple(_components_without(t, c)),
        )
    adj = t.adjacency()
    parent: dict[int, int | None] = {s: None}
    stack = [s]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in parent:
                parent[v] = u
                stack.append(v)
    path = [c]
    while path[-1] != s:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    path.reverse()
    r1 = path[1]

    comps = _components_without(t, c)
    side: list[frozenset[int]] = []
    source_comp: frozenset[int] = frozenset()
    for comp in comps:
        if s in comp:
            source_comp = comp
        else:
            side.append(comp)

    # forest: the source's own hanging subtrees, i.e. what stays with the
    # source once its path edge is removed
    forest = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v != r1 and v not in forest and v in source_comp:
                forest.add(v)
                stack.append(v)
    forest.discard(s)
    trunk = frozenset(t.vertices) - {s} - forest - frozenset().union(*side)
    return Decomposition(
        centroid=c,
        path=tuple(path),
        forest=frozenset(forest),
        trunk=trunk,
        side_trees=tuple(side),
    )


def respects_count(t: SteinerTree, cut: Cut) -> int:
    """Number of tree edges crossing the cut."""
    side = cut.side
    return sum(1 for u, v in t.edges if (u in side) != (v in side))


def prune_sample(
    t: SteinerTree, parts: Sequence[Iterable[int]], rng: random.Random
) -> SteinerTree:
    """Remove each part independently with probability 1/2.

    Parts must be disjoint vertex sets not containing the source, and each
    part must hang off the rest of the tree, so that removing any subset
    leaves a tree.  One coin is drawn per part, in the given order.
    """
    psets = [frozenset(p) for p in parts]
    taken: set[int] = set()
    vset = set(t.vertices)
    for p in psets:
        if not p:
            raise ValueError("prunable part may not be empty")
        if t.source in p:
            raise ValueError("prunable part contains the source")
        if not p <= vset:
            raise ValueError("prunable part leaves the tree")
        if p & taken:
            raise ValueError("prunable parts overlap")
        taken |= p
    removed: set[int] = set()
    for p in psets:
        if rng.random() < 0.5:
            removed |= p
    if not removed:
        return t
    kept = [v for v in t.vertices if v not in removed]
    edges = [e for e in t.edges if e[0] not in removed and e[1] not in removed]
    try:
        return SteinerTree(kept, edges, t.source)
    except ValueError as exc:
        raise RuntimeError(f"pruning disconnected the tree; bad part list: {exc}") from exc


def random_steiner_tree(vertices: Iterable[int], source: int, rng: random.Random) -> SteinerTree:
    """Random tree shape over the given vertex ids (edges need not exist in
    any graph): each vertex attaches to a uniformly chosen earlier one."""
    vs = sorted(set(vertices))
    if source not in vs:
        raise ValueError(f"source {source} not among vertices")
    others = [v for v in vs if v != source]
    rng.shuffle(others)
    seq = [source] + others
    edges = [(seq[rng.randrange(i)], seq[i]) for i in range(1, len(seq))]
    return SteinerTree(vs, edges, source)


def random_spanning_tree(g: Graph, source: int, rng: random.Random) -> SteinerTree:
    """Random DFS spanning tree of a connected graph; edges are graph edges."""
    if not (0 <= source < g.n):
        raise ValueError(f"source {source} out of range")
    adj = g.adjacency()
    seen = {source}
    edges: list[tuple[int, int]] = []
    stack = [source]
    while stack:
        u = stack[-1]
        nxt = [v for v, _ in adj[u] if v not in seen]
        if not nxt:
            stack.pop()
            continue
        v = nxt[rng.randrange(len(nxt))]
        seen.add(v)
        edges.append((u, v))
        stack.append(v)
    if len(seen) != g.n:
        raise ValueError("graph is not connected; no spanning tree exists")
    return SteinerTree(range(g.n), edges, source)


# ---------------------------------------------------------------------------
# serialisation


def format_tree(t: SteinerTree) -> str:
    lines = [f"t {t.size}"]
    lines += [f"e {u} {v}" for u, v in t.edges]
    lines.append(f"s {t.source}")
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> SteinerTree:
    size = None
    source = None
    edges: list[tuple[int, int]] = []
    single_vertex: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "t":
            if size is not None:
                raise GraphFormatError("duplicate tree header", lineno)
            if len(fields) != 2:
                raise GraphFormatError("tree header must be 't <k>'", lineno)
            try:
                size = int(fields[1])
            except ValueError as exc:
                raise GraphFormatError(f"bad tree header: {exc}", lineno) from exc
        elif fields[0] == "e":
            if size is None:
                raise GraphFormatError("edge before tree header", lineno)
            if len(fields) != 3:
                raise GraphFormatError("tree edge must be 'e <u> <v>'", lineno)
            try:
                edges.append((int(fields[1]), int(fields[2])))
            except ValueError as exc:
                raise GraphFormatError(f"bad tree edge: {exc}", lineno) from exc
        elif fields[0] == "s":
            if len(fields) != 2:
                raise GraphFormatError("source line must be 's <vertex>'", lineno)
            try:
                source = int(fields[1])
            except ValueError as exc:
                raise GraphFormatError(f"bad source: {exc}", lineno) from exc
        else:
            raise GraphFormatError(f"unknown record {fields[0]!r}", lineno)
    if size is None:
        raise GraphFormatError("missing 't <k>' header")
    if source is None:
        raise GraphFormatError("missing 's <source>' line")
    vertices = {source}
    for u, v in edges:
        vertices.add(u)
        vertices.add(v)
    if len(vertices) != size:
        raise GraphFormatError(
            f"header declares {size} vertices but edges and source mention {len(vertices)}"
        )
    try:
        return SteinerTree(vertices, edges, source)
    except ValueError as exc:
        raise GraphFormatError(f"not a tree: {exc}") from exc


def save_tree(t: SteinerTree, path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_tree(t))


def load_tree(path: str) -> SteinerTree:
    with open(path, "r", encoding="ascii") as fh:
        return parse_tree(fh.read())
