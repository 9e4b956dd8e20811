"""Guided single-source minimum cuts over a Steiner tree.

`tree_mincuts` estimates, for every tree vertex t other than the source s,
the minimum weight of an (s, t)-cut, searching only cuts that cross few
tree edges.  Every reported value is the weight of an actual (s, t)-cut in
the input graph, so estimates never undershoot the true minimum; with high
probability over the seed they do not exceed the cheapest cut crossing at
most k tree edges.  `leaf_mincuts` is the companion routine for a leaf
source, restricted to cuts that also cross the leaf's own tree edge.

The recursion alternates three devices: random pruning of whole subtrees
(lowering the crossing budget k), isolating cuts that split the instance
into disjoint contracted subinstances (same budget, smaller trees), and a
reduced tree in which the source is reattached next to the centroid.
Results computed on contracted graphs are lifted back through the
contraction maps, so all writes land on original vertex ids.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import ContractionMap, Cut, Graph, contract
from .isolating import isolating_cuts
from .maxflow import max_flow, max_flow_multi
from .steiner import SteinerTree, decompose, prune_sample

# Trees at most this large are handled by one exact max-flow per terminal.
BASE_TREE_SIZE = 6


class CandidateCuts:
    """Best cut value found so far for each terminal.

    Values only move down.  Every stored witness is a cut of the graph the
    table was created for, with the terminal inside `side` and the source
    outside; witness tracking can be disabled for measurement runs.
    """

    __slots__ = ("values", "witnesses", "track_witnesses")

    def __init__(self, terminals: Iterable[int], track_witnesses: bool = True):
        self.values: dict[int, float] = {t: math.inf for t in terminals}
        self.witnesses: dict[int, Cut | None] = dict.fromkeys(self.values)
        self.track_witnesses = track_witnesses

    def ensure(self, terminals: Iterable[int]) -> None:
        for t in terminals:
            self.values.setdefault(t, math.inf)
            self.witnesses.setdefault(t, None)

    def offer(self, t: int, value: int, witness: Cut | None = None) -> bool:
        """Record a candidate; ignored unless strictly better and t is known."""
        cur = self.values.get(t)
        if cur is None or value >= cur:
            return False
        self.values[t] = value
        if self.track_witnesses:
            self.witnesses[t] = witness
        return True

    def value(self, t: int) -> float:
        return self.values[t]

    def witness(self, t: int) -> Cut | None:
        return self.witnesses[t]

    def terminals(self) -> list[int]:
        return sorted(self.values)

    def __repr__(self) -> str:
        done = sum(1 for v in self.values.values() if v != math.inf)
        return f"CandidateCuts({done}/{len(self.values)} terminals bounded)"


class RecursionStats:
    """Per-(procedure, k) call totals accumulated over one run.

    Tracks call count, instance vertices, tree sizes, and live edges (edges
    whose endpoints are both ordinary vertices rather than contracted
    supernodes); every call records itself on entry, including k = 0.
    """

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: dict[tuple[str, int], list[int]] = {}

    def record(self, procedure: str, k: int, n: int, tree_size: int, live_edges: int) -> None:
        row = self.rows.setdefault((procedure, k), [0, 0, 0, 0])
        row[0] += 1
        row[1] += n
        row[2] += tree_size
        row[3] += live_edges

    def totals(self) -> dict[str, int]:
        agg = [0, 0, 0, 0]
        for row in self.rows.values():
            for i in range(4):
                agg[i] += row[i]
        return {"calls": agg[0], "vertices": agg[1], "tree_vertices": agg[2], "edges": agg[3]}

    def as_dict(self) -> dict[str, dict[str, dict[str, int]]]:
        out: dict[str, dict[str, dict[str, int]]] = {}
        for (proc, k), (calls, sn, st, sm) in sorted(self.rows.items()):
            out.setdefault(proc, {})[str(k)] = {
                "calls": calls,
                "vertices": sn,
                "tree_vertices": st,
                "edges": sm,
            }
        return out

    def __repr__(self) -> str:
        t = self.totals()
        return f"RecursionStats(calls={t['calls']}, vertices={t['vertices']})"


# Repeated pruning rounds rebuild identical contracted instances, so the
# deterministic flow work repeats too; one cache per top-level run collapses
# it.  Large graphs are left uncached: few repeats, costly keys.
_CACHE_MAX_N = 64


@dataclass(frozen=True)
class _Cfg:
    reps_coeff: float
    cache: dict = field(default_factory=dict)


def _flow_cached(cfg: _Cfg, g: Graph, s: int, t: int):
    if g.n > _CACHE_MAX_N:
        return max_flow(g, s, t)
    key = (g, s, t)
    res = cfg.cache.get(key)
    if res is None:
        res = cfg.cache[key] = max_flow(g, s, t)
    return res


def _multi_cached(cfg: _Cfg, g: Graph, s: int, sinks: Sequence[int]):
    if g.n > _CACHE_MAX_N:
        return max_flow_multi(g, s, sinks)
    key = (g, s, tuple(sinks))
    res = cfg.cache.get(key)
    if res is None:
        res = cfg.cache[key] = max_flow_multi(g, s, sinks)
    return res


def _iso_cached(cfg: _Cfg, g: Graph, groups: Sequence[frozenset[int]]):
    if g.n > _CACHE_MAX_N:
        return isolating_cuts(g, groups)
    key = (g, tuple(groups))
    res = cfg.cache.get(key)
    if res is None:
        res = cfg.cache[key] = isolating_cuts(g, groups)
    return res


def _seed_string(rng: random.Random | int | str) -> str:
    if isinstance(rng, random.Random):
        return f"r{rng.getrandbits(64):016x}"
    return f"s{rng}"


def _rounds(cfg: _Cfg, n: int) -> int:
    return max(1, math.ceil(cfg.reps_coeff * math.log2(max(2, n))))


def _live_edges(g: Graph, contracted: frozenset[int]) -> int:
    if not contracted:
        return g.m
    return sum(1 for u, v, _ in g.edges if u not in contracted and v not in contracted)


def _child_contracted(cm: ContractionMap, contracted: frozenset[int]) -> frozenset[int]:
    return frozenset(cm.forward[v] for v in contracted) | cm.contracted_nodes


def _base_case(g: Graph, tree: SteinerTree, cuts: CandidateCuts,
               cfg: _Cfg) -> None:
    s = tree.source
    for t in tree.vertices:
        if t != s:
            res = _flow_cached(cfg, g, s, t)
            cuts.offer(t, res.value, res.mincut)


def _subtree(tree: SteinerTree, verts: Iterable[int], source: int,
             extra_edges: Sequence[tuple[int, int]] = ()) -> SteinerTree:
    """Subtree induced on `verts` (which must include `source`), plus any
    explicitly added edges."""
    vset = set(verts)
    edges = [(u, v) for u, v in tree.edges if u in vset and v in vset]
    edges.extend(extra_edges)
    return SteinerTree(vset, edges, source)


def _mapped_subtree(tree: SteinerTree, part: Iterable[int], attach: int,
                    cm: ContractionMap) -> SteinerTree:
    """Child tree for a contracted instance: the subtree induced on
    part plus its attachment vertex, with ids mapped through `cm` and the
    attachment's image (the supernode) as the new source."""
    keep = set(part)
    keep.add(attach)
    verts = {cm.forward[v] for v in keep}
    edges = [(cm.forward[u], cm.forward[v]) for u, v in tree.edges if u in keep and v in keep]
    return SteinerTree(verts, edges, cm.forward[attach])


def _fresh_view(child_tree: SteinerTree, cuts: CandidateCuts) -> CandidateCuts:
    return CandidateCuts(
        (v for v in child_tree.vertices if v != child_tree.source),
        cuts.track_witnesses,
    )


def _merge_child(cuts: CandidateCuts, child: CandidateCuts, cm: ContractionMap,
                 remap: Mapping[int, int] | None = None) -> None:
    """Lift a contracted child's results into the parent table.

    A child terminal that is the image of a single original vertex lands on
    that vertex; `remap` overrides the target for supernode terminals that
    carry a real vertex's identity, and any other supernode result is
    dropped.
    """
    pre = cm.preimage_lists()
    for q, val in child.values.items():
        if val == math.inf:
            continue
        if remap is not None and q in remap:
            target = remap[q]
        elif len(pre[q]) == 1:
            target = pre[q][0]
        else:
            continue
        wit = child.witnesses[q]
        lifted = Cut(cm.lift_side(wit.side), wit.value) if wit is not None else None
        cuts.offer(target, int(val), lifted)


def _validate(g: Graph, tree: SteinerTree, k: int) -> None:
    if k < 0:
        raise ValueError(f"crossing budget k must be non-negative, got {k}")
    if tree.vertices[0] < 0 or tree.vertices[-1] >= g.n:
        raise ValueError("tree vertices leave the graph's vertex range")


def tree_mincuts(
    g: Graph,
    tree: SteinerTree,
    k: int,
    cuts: CandidateCuts,
    rng: random.Random | int | str,
    stats: RecursionStats | None = None,
    *,
    reps_coeff: float = 3.0,
) -> None:
    """Bound the source-to-terminal cut values guided by `tree`.

    Mutates `cuts`: for every tree vertex t other than the source, the
    final value is the weight of a real (source, t)-cut, and with high
    probability it is at most the cheapest such cut crossing at most k tree
    edges.  `reps_coeff` scales the number of random pruning repetitions
    per level; `stats`, when given, accumulates per-level call totals.
    """
    _validate(g, tree, k)
    cuts.ensure(v for v in tree.vertices if v != tree.source)
    if stats is None:
        stats = RecursionStats()
    _tree_rec(g, tree, k, cuts, _seed_string(rng), stats, _Cfg(reps_coeff), frozenset())


def leaf_mincuts(
    g: Graph,
    tree: SteinerTree,
    k: int,
    cuts: CandidateCuts,
    rng: random.Random | int | str,
    stats: RecursionStats | None = None,
    *,
    reps_coeff: float = 3.0,
) -> None:
    """Variant of `tree_mincuts` for a source that is a leaf of the tree.

    Only cuts crossing the source's single tree edge are targeted: with
    high probability each terminal's value is at most the cheapest cut that
    crosses at most k tree edges, one of them being the source's edge.
    """
    _validate(g, tree, k)
    if tree.degree(tree.source) != 1:
        raise ValueError("the leaf variant needs the source to be a tree leaf")
    cuts.ensure(v for v in tree.vertices if v != tree.source)
    if stats is None:
        stats = RecursionStats()
    _leaf_rec(g, tree, k, cuts, _seed_string(rng), stats, _Cfg(reps_coeff), frozenset())


def _tree_rec(
    g: Graph,
    tree: SteinerTree,
    k: int,
    cuts: CandidateCuts,
    seed: str,
    stats: RecursionStats,
    cfg: _Cfg,
    contracted: frozenset[int],
) -> None:
    stats.record("tree", k, g.n, tree.size, _live_edges(g, contracted))
    if k == 0:
        return
    if tree.size <= BASE_TREE_SIZE:
        _base_case(g, tree, cuts, cfg)
        return

    s = tree.source
    dec = decompose(tree)
    c = dec.centroid
    parts: list[frozenset[int]] = []
    if dec.forest:
        parts.append(dec.forest)
    parts.extend(dec.side_trees)

    # Random pruning lowers the budget: any cut whose extra tree crossings
    # sit inside pruned parts is caught by a k-1 call on the thinned tree.
    # At budget 1 those calls would be no-ops, so skip the rounds outright.
    if k > 1:
        rounds = _rounds(cfg, g.n) if parts else 1
        for r in range(rounds):
            coin = random.Random(f"{seed}/p{r}#coins")
            pruned = prune_sample(tree, parts, coin)
            _tree_rec(g, pruned, k - 1, cuts, f"{seed}/p{r}", stats, cfg,
                      contracted)

        # The source-side forest on its own, one budget lower.
        if dec.forest:
            t2 = _subtree(tree, dec.forest | {s}, s)
            _tree_rec(g, t2, k - 1, cuts, f"{seed}/f", stats, cfg, contracted)

    # Isolating cuts split the rest of the work into disjoint contracted
    # children, each recursed at the same budget: one child per tree part,
    # with everything outside that part's isolating side merged into the
    # child's new source.
    trunk_inner = dec.trunk - {c}
    groups: list[frozenset[int]] = [frozenset([s])]
    if c != s:
        groups.append(frozenset([c]))
    group_parts: list[tuple[frozenset[int], int]] = []
    if trunk_inner:
        group_parts.append((trunk_inner, c))
    for side in dec.side_trees:
        group_parts.append((side, c))
    if dec.forest:
        group_parts.append((dec.forest, s))
    groups.extend(part for part, _ in group_parts)

    iso = _iso_cached(cfg, g, groups)
    for gc in iso:
        # each isolating side is itself a cut separating its group from s
        if s not in gc.group:
            for t in sorted(gc.group):
                cuts.offer(t, gc.value, gc.as_cut())

    offset = len(groups) - len(group_parts)
    part_cut = {part: iso[offset + j] for j, (part, _) in enumerate(group_parts)}
    # Per-part children pin the centroid to the source supernode, which is
    # wrong for cuts that keep the centroid with the terminal.  Side trees
    # only ever need the pinned version (a cut claiming the centroid would
    # cross their root edge and pruning owns that case); the trunk and the
    # forest instead go to the folded child below, where the centroid's
    # node is free to land on either side.
    sideset = set(dec.side_trees)
    for j, (part, attach) in enumerate(group_parts):
        if c != s and part not in sideset:
            continue
        rest = frozenset(range(g.n)) - iso[offset + j].side
        child_g, cm = contract(g, [rest])
        child_tree = _mapped_subtree(tree, part, attach, cm)
        view = _fresh_view(child_tree, cuts)
        _tree_rec(child_g, child_tree, k, view, f"{seed}/i{j}", stats, cfg,
                  _child_contracted(cm, contracted))
        _merge_child(cuts, view, cm)

    # One child for the source's whole component of the tree minus the
    # centroid: the centroid and every side region fold into a single node
    # that stands in for the centroid, so cuts may take it or leave it.
    # The centroid bound keeps this child at roughly two thirds of the
    # tree.
    if c != s:
        merge = frozenset((c,)).union(*(part_cut[sd].side for sd in dec.side_trees))
        own = {s} | dec.forest | trunk_inner
        child_g, cm = contract(g, [merge])
        y = cm.forward[c]
        verts = {cm.forward[v] for v in own} | {y}
        edges = [(cm.forward[u], cm.forward[v])
                 for u, v in tree.edges if u in own and v in own]
        edges.append((cm.forward[dec.path[-2]], y))
        yt = SteinerTree(verts, edges, cm.forward[s])
        if yt.size < tree.size:
            view = _fresh_view(yt, cuts)
            _tree_rec(child_g, yt, k, view, f"{seed}/y", stats, cfg,
                      _child_contracted(cm, contracted))
            _merge_child(cuts, view, cm, remap={y: c})

    # Reduced tree: drop the forest and the trunk interior, reattach the
    # source directly at the centroid.  The leaf variant hunts cuts through
    # the new source edge at full budget; everything else has lost at least
    # one crossing, so a k-1 pass completes the coverage.
    if c != s:
        t4_vertices = {s, c}.union(*dec.side_trees)
        sc = (s, c) if s < c else (c, s)
        extra = () if sc in tree.edges else (sc,)
        t4 = _subtree(tree, t4_vertices, s, extra)
        _leaf_rec(g, t4, k, cuts, f"{seed}/l", stats, cfg, contracted)
        if k > 1:
            _tree_rec(g, t4, k - 1, cuts, f"{seed}/r", stats, cfg, contracted)


def _leaf_rec(
    g: Graph,
    tree: SteinerTree,
    k: int,
    cuts: CandidateCuts,
    seed: str,
    stats: RecursionStats,
    cfg: _Cfg,
    contracted: frozenset[int],
) -> None:
    stats.record("leaf", k, g.n, tree.size, _live_edges(g, contracted))
    if k == 0:
        return
    if tree.size <= BASE_TREE_SIZE:
        _base_case(g, tree, cuts, cfg)
        return

    s = tree.source
    # a leaf source has no forest of its own: its component of the tree
    # minus the centroid is exactly the trunk, and the side trees are the
    # prunable parts
    dec = decompose(tree)
    c = dec.centroid
    own_branch = dec.trunk - {c}
    sides = dec.side_trees

    if k > 1:
        rounds = _rounds(cfg, g.n) if sides else 1
        for r in range(rounds):
            coin = random.Random(f"{seed}/p{r}#coins")
            pruned = prune_sample(tree, sides, coin)
            _leaf_rec(g, pruned, k - 1, cuts, f"{seed}/p{r}", stats, cfg,
                      contracted)

        # Drop the source's own branch and reattach the source at the
        # centroid; cuts through the old source edge that stay out of the
        # branch lose a crossing, so the unrestricted variant at k-1 covers
        # them.
        t2_vertices = {s, c}.union(*sides)
        sc = (s, c) if s < c else (c, s)
        extra = () if sc in tree.edges else (sc,)
        t2 = _subtree(tree, t2_vertices, s, extra)
        _tree_rec(g, t2, k - 1, cuts, f"{seed}/b", stats, cfg, contracted)

    groups: list[frozenset[int]] = [frozenset([s]), frozenset([c])]
    groups.extend(sides)
    if own_branch:
        groups.append(own_branch)
    iso = _iso_cached(cfg, g, groups)
    for gc in iso:
        if s not in gc.group:
            for t in sorted(gc.group):
                cuts.offer(t, gc.value, gc.as_cut())
    side_cuts = [iso[2 + i] for i in range(len(sides))]

    # Source-branch child at the same budget: the centroid and the side
    # regions collapse into a single node hanging off the branch, free to
    # land on either side of a cut, so both centroid placements survive.
    if own_branch:
        merge = frozenset((c,)).union(*(gc.side for gc in side_cuts))
        own = {s} | own_branch
        child_g, cm = contract(g, [merge])
        y = cm.forward[c]
        verts = {cm.forward[v] for v in own} | {y}
        edges = [(cm.forward[u], cm.forward[v])
                 for u, v in tree.edges if u in own and v in own]
        edges.append((cm.forward[dec.path[-2]], y))
        yt = SteinerTree(verts, edges, cm.forward[s])
        if yt.size < tree.size:
            view = _fresh_view(yt, cuts)
            _leaf_rec(child_g, yt, k, view, f"{seed}/y", stats, cfg,
                      _child_contracted(cm, contracted))
            _merge_child(cuts, view, cm, remap={y: c})

    # One exact cut from the source to everything at or beyond the
    # centroid; its value is shared by all those terminals at once.
    far = sorted({c}.union(*sides))
    res = _multi_cached(cfg, g, s, far)
    for t in far:
        cuts.offer(t, res.value, res.mincut)

    # Single side-tree branch: recurse only where the current estimate is
    # weakest, merging the centroid and every other side region into one
    # node.  Descending into all side trees would blow up the recursion;
    # the shared cut above pays for the branches we skip.
    if sides:
        pool = sorted(set().union(*sides))
        z = max(pool, key=lambda t: (cuts.value(t), -t))
        i_star = next(i for i, side in enumerate(sides) if z in side)
        merge = {c}
        for i, gc in enumerate(side_cuts):
            if i != i_star:
                merge |= gc.side
        if own_branch:
            merge |= iso[-1].side
        part = sides[i_star]
        if len(merge) > 1 or len(part) + 2 < tree.size:
            child_g, cm = contract(g, [merge])
            cnode = cm.forward[c]
            root = None
            for u, v in tree.edges:
                if u == c and v in part:
                    root = v
                    break
                if v == c and u in part:
                    root = u
                    break
            verts = {cm.forward[s], cnode} | {cm.forward[v] for v in part}
            edges = [(cm.forward[u], cm.forward[v])
                     for u, v in tree.edges if u in part and v in part]
            edges += [(cm.forward[s], cnode), (cnode, cm.forward[root])]
            t4 = SteinerTree(verts, edges, cm.forward[s])
            view = _fresh_view(t4, cuts)
            _leaf_rec(child_g, t4, k, view, f"{seed}/z", stats, cfg,
                      _child_contracted(cm, contracted))
            _merge_child(cuts, view, cm, remap={cnode: c})


def sstcv_verify(
    g: Graph,
    terminals: Iterable[int],
    s: int,
    estimates: Mapping[int, int],
    guide_trees: Sequence[SteinerTree],
    k: int,
    rng: random.Random | int | str,
    *,
    reps_coeff: float = 6.0,
    stats: RecursionStats | None = None,
) -> dict[int, str]:
    """Classify per-terminal cut estimates as tight or loose.

    Runs the guided search over every guide tree into one shared table and
    reports, for each terminal, "tight" when the pooled search matched its
    estimate and "loose" otherwise.  The verdict
    is reliable (with high probability) whenever the estimates are upper
    bounds on the true cut values and every terminal whose estimate is
    tight has some guide tree crossing one of its minimum cuts at most k
    times.
    """
    tset = sorted(set(terminals) - {s})
    if not tset:
        raise ValueError("need at least one terminal besides the source")
    if not guide_trees:
        raise ValueError("need at least one guide tree")
    for tr in guide_trees:
        if tr.source != s:
            raise ValueError(f"guide tree source {tr.source} differs from s={s}")
        if not set(tset) <= set(tr.vertices):
            raise ValueError("guide tree does not span the terminals")
    missing = [t for t in tset if t not in estimates]
    if missing:
        raise ValueError(f"missing estimates for terminals {missing}")

    cuts = CandidateCuts([])
    if stats is None:
        stats = RecursionStats()
    seed = _seed_string(rng)
    for i, tr in enumerate(guide_trees):
        tree_mincuts(g, tr, k, cuts, f"{seed}/g{i}", stats, reps_coeff=reps_coeff)
    return {t: ("tight" if cuts.value(t) == estimates[t] else "loose") for t in tset}
