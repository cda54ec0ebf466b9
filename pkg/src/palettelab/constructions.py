"""Randomized constructions and exact density audits.

The sampler colors the C(n,2) vertex pairs of a complete graph
uniformly at random, in lexicographic pair order, from the pinned
generator; a vertex triple u < v < w becomes an edge exactly when
(color(uv), color(uw), color(vw)) is admissible.  The two audits
measure how far a 3-graph deviates from a target edge density, one
against vertex subsets, one against subset-times-pair-family counts.
The walk tools analyze the first-to-last color digraph of a palette and
drive the chain construction: a random sparse (k+2)-uniform hypergraph
is pruned to a linear one, each hyperedge is replaced by its k
consecutive vertex triples, and any palette carrying a long enough walk
colors the result.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    AdmissionWitness,
    LimitError,
    Palette,
    ThreeGraph,
    Triple,
    admission_witness,
    palette,
    three_graph,
    validate,
)
from .rng import SplitMix64

DOT_AUDIT_EXACT_LIMIT = 22
VERTEXPAIR_AUDIT_EXACT_LIMIT = 18
COVERAGE_EXACT_LIMIT = 10


# ---------------------------------------------------------------------------
# fixed palettes and fixed graphs

def make_chain_palette(k: int) -> Palette:
    """k colors; a triple is admissible iff its first color is smaller
    than its last.  Density is 1/2 - 1/(2k)."""
    if k < 1:
        raise ValueError(f"need at least one color, got {k}")
    triples = [
        (x, y, z) for x, y, z in itertools.product(range(k), repeat=3) if x < z
    ]
    return palette(k, triples)


def make_rainbow() -> Palette:
    """Three colors, one admissible triple."""
    return palette(3, [(0, 1, 2)])


def make_alternating_palette() -> Palette:
    """Two colors; the outer pair must agree and differ from the middle."""
    return palette(2, [(0, 1, 0), (1, 0, 1)])


def complete_three_graph(n: int) -> ThreeGraph:
    return three_graph(n, itertools.combinations(range(n), 3))


def k4_minus() -> ThreeGraph:
    """Complete 3-graph on four vertices with one edge removed."""
    return three_graph(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])


# ---------------------------------------------------------------------------
# random palette-generated hypergraphs

def sample_hypergraph(p: Palette, n: int, seed: int) -> ThreeGraph:
    """Color all vertex pairs uniformly, lexicographic order, one bounded
    draw per pair; keep the triples whose ordered colors are admissible."""
    errs = validate(p)
    if errs:
        raise ValueError("; ".join(errs))
    if n < 0:
        raise ValueError(f"negative vertex count {n}")
    rng = SplitMix64(seed)
    color: dict[tuple[int, int], int] = {}
    for u in range(n):
        for v in range(u + 1, n):
            color[(u, v)] = rng.below(p.colors)
    edges = [
        (u, v, w)
        for u, v, w in itertools.combinations(range(n), 3)
        if (color[(u, v)], color[(u, w)], color[(v, w)]) in p.triples
    ]
    return three_graph(n, edges)


# ---------------------------------------------------------------------------
# density audits

@dataclass(frozen=True)
class DensityAuditReport:
    kind: str                 # "dot" or "vertexpair"
    mode: str                 # "exact" or "sampled"
    density: Fraction
    epsilon: float
    slack: Fraction           # worst observed value of the audited form
    threshold: Fraction       # audit passes iff slack >= threshold
    passed: bool
    worst_set: tuple[int, ...]
    worst_pairs: tuple[tuple[int, int], ...] | None = None
    samples: int | None = None
    seed: int | None = None


def _gray_vertex_order(h: ThreeGraph) -> list[int]:
    # bit 0 flips most often; give it the lowest-degree vertex
    deg = {v: 0 for v in range(h.vertices)}
    for e in h.edges:
        for v in e:
            deg[v] += 1
    return sorted(range(h.vertices), key=lambda v: (deg[v], v))


def audit_dot_density(
    h: ThreeGraph,
    density: Fraction,
    epsilon: float,
    mode: str = "exact",
    samples: int | None = None,
    seed: int | None = None,
    exact_limit: int = DOT_AUDIT_EXACT_LIMIT,
) -> DensityAuditReport:
    """Minimize e(S) - density * C(|S|, 3) over vertex subsets S.

    Exact mode walks all 2^n subsets in Gray-code order, maintaining the
    edge count under single-vertex toggles.  Sampled mode draws subsets
    uniformly.  The audit passes iff the minimum is at least
    -epsilon * n^3.
    """
    errs = validate(h)
    if errs:
        raise ValueError("; ".join(errs))
    density = Fraction(density)
    n = h.vertices
    threshold = -Fraction(epsilon) * n**3
    num, den = density.numerator, density.denominator
    choose3 = [math.comb(s, 3) for s in range(n + 1)]

    if mode == "exact":
        if n > exact_limit:
            raise LimitError(f"exact dot audit limited to {exact_limit} vertices, got {n}")
        verts = _gray_vertex_order(h)
        bit_of = {v: i for i, v in enumerate(verts)}
        # pair masks of the two co-vertices for every edge at v
        link: list[list[int]] = [[] for _ in range(n)]
        for a, b, c in h.edges:
            link[bit_of[a]].append((1 << bit_of[b]) | (1 << bit_of[c]))
            link[bit_of[b]].append((1 << bit_of[a]) | (1 << bit_of[c]))
            link[bit_of[c]].append((1 << bit_of[a]) | (1 << bit_of[b]))
        mask = 0
        count = 0
        size = 0
        best = 0  # scaled slack den*e - num*C(s,3); empty set gives 0
        best_mask = 0
        for g in range(1, 1 << n):
            bit = (g & -g).bit_length() - 1
            flip = 1 << bit
            if mask & flip:
                mask ^= flip
                size -= 1
                count -= sum(1 for pm in link[bit] if mask & pm == pm)
            else:
                mask ^= flip
                size += 1
                count += sum(1 for pm in link[bit] if mask & pm == pm)
            scaled = den * count - num * choose3[size]
            if scaled < best:
                best = scaled
                best_mask = mask
        slack = Fraction(best, den)
        worst = tuple(sorted(verts[i] for i in range(n) if best_mask >> i & 1))
        return DensityAuditReport(
            "dot", "exact", density, epsilon, slack, threshold,
            slack >= threshold, worst,
        )

    if mode != "sampled":
        raise ValueError(f"unknown audit mode {mode!r}")
    if samples is None or seed is None:
        raise ValueError("sampled mode needs samples and seed")
    rng = SplitMix64(seed)
    edge_sets = [frozenset(e) for e in h.sorted_edges()]
    best_slack: Fraction | None = None
    worst: tuple[int, ...] = ()
    for _ in range(samples):
        chosen = frozenset(v for v in range(n) if rng.below(2))
        e_count = sum(1 for e in edge_sets if e <= chosen)
        slack = e_count - density * choose3[len(chosen)]
        if best_slack is None or slack < best_slack:
            best_slack = slack
            worst = tuple(sorted(chosen))
    assert best_slack is not None
    return DensityAuditReport(
        "dot", "sampled", density, epsilon, Fraction(best_slack), threshold,
        best_slack >= threshold, worst, samples=samples, seed=seed,
    )


def audit_vertexpair_density(
    h: ThreeGraph,
    density: Fraction,
    epsilon: float,
    mode: str = "exact",
    samples: int | None = None,
    seed: int | None = None,
    exact_limit: int = VERTEXPAIR_AUDIT_EXACT_LIMIT,
) -> DensityAuditReport:
    """Minimize sum over pairs b in B of (deg_A(b) - density * |A|) over
    vertex subsets A and pair families B.

    For fixed A the optimal B is exactly the pairs with degree below
    density * |A|, so only A is enumerated (Gray-code order, degrees
    maintained incrementally).  Passes iff the minimum is at least
    -epsilon * n^3.
    """
    errs = validate(h)
    if errs:
        raise ValueError("; ".join(errs))
    density = Fraction(density)
    n = h.vertices
    threshold = -Fraction(epsilon) * n**3
    num, den = density.numerator, density.denominator
    all_pairs = list(itertools.combinations(range(n), 2))
    pair_id = {pr: i for i, pr in enumerate(all_pairs)}

    def pairs_of(edge: Triple) -> list[int]:
        a, b, c = edge
        return [pair_id[(b, c)], pair_id[(a, c)], pair_id[(a, b)]]

    if mode == "exact":
        if n > exact_limit:
            raise LimitError(
                f"exact vertex-pair audit limited to {exact_limit} vertices, got {n}"
            )
        verts = _gray_vertex_order(h)
        bit_of = {v: i for i, v in enumerate(verts)}
        # pair ids completed by vertex v (v plays the "a" role)
        link: list[list[int]] = [[] for _ in range(n)]
        for e in h.edges:
            a, b, c = e
            link[bit_of[a]].append(pair_id[(b, c)])
            link[bit_of[b]].append(pair_id[(a, c)])
            link[bit_of[c]].append(pair_id[(a, b)])
        deg = [0] * len(all_pairs)
        hist = [0] * n  # degrees never exceed n-2
        hist[0] = len(all_pairs)
        mask = 0
        size = 0
        best = 0
        best_mask = 0
        for g in range(1 << n):
            if g:
                bit = (g & -g).bit_length() - 1
                flip = 1 << bit
                delta = -1 if mask & flip else 1
                mask ^= flip
                size += delta
                for pid in link[bit]:
                    hist[deg[pid]] -= 1
                    deg[pid] += delta
                    hist[deg[pid]] += 1
            bar = num * size  # pair joins B iff den*deg < num*|A|
            scaled = 0
            for d in range(n):
                if den * d >= bar:
                    break
                if hist[d]:
                    scaled += hist[d] * (den * d - bar)
            if scaled < best:
                best = scaled
                best_mask = mask
        slack = Fraction(best, den)
        worst_a = tuple(sorted(verts[i] for i in range(n) if best_mask >> i & 1))
        # recompute the optimal family for the recorded A
        deg_a = [0] * len(all_pairs)
        chosen = set(worst_a)
        for e in h.edges:
            a, b, c = e
            if a in chosen:
                deg_a[pair_id[(b, c)]] += 1
            if b in chosen:
                deg_a[pair_id[(a, c)]] += 1
            if c in chosen:
                deg_a[pair_id[(a, b)]] += 1
        bar = num * len(worst_a)
        worst_b = tuple(
            all_pairs[i] for i, d in enumerate(deg_a) if den * d < bar
        )
        return DensityAuditReport(
            "vertexpair", "exact", density, epsilon, slack, threshold,
            slack >= threshold, worst_a, worst_b,
        )

    if mode != "sampled":
        raise ValueError(f"unknown audit mode {mode!r}")
    if samples is None or seed is None:
        raise ValueError("sampled mode needs samples and seed")
    rng = SplitMix64(seed)
    best_slack: Fraction | None = None
    worst_a = ()
    worst_b: tuple = ()
    for _ in range(samples):
        chosen = {v for v in range(n) if rng.below(2)}
        deg_a = [0] * len(all_pairs)
        for e in h.edges:
            a, b, c = e
            if a in chosen:
                deg_a[pair_id[(b, c)]] += 1
            if b in chosen:
                deg_a[pair_id[(a, c)]] += 1
            if c in chosen:
                deg_a[pair_id[(a, b)]] += 1
        bar = density * len(chosen)
        family = [i for i, d in enumerate(deg_a) if d < bar]
        slack = sum((Fraction(deg_a[i]) - bar for i in family), Fraction(0))
        if best_slack is None or slack < best_slack:
            best_slack = slack
            worst_a = tuple(sorted(chosen))
            worst_b = tuple(all_pairs[i] for i in family)
    assert best_slack is not None
    return DensityAuditReport(
        "vertexpair", "sampled", density, epsilon, best_slack, threshold,
        best_slack >= threshold, worst_a, worst_b, samples=samples, seed=seed,
    )


# ---------------------------------------------------------------------------
# walks in the first-to-last color digraph

@dataclass(frozen=True)
class WalkReport:
    """Longest walk in the digraph with an arc u -> v whenever some
    admissible triple starts at u and ends at v.  steps lists
    (from, middle, to) triples along one maximal walk, or around one
    cycle when walks are unbounded."""
    unbounded: bool
    length: int | None
    steps: tuple[Triple, ...]


def longest_walk(p: Palette) -> WalkReport:
    errs = validate(p)
    if errs:
        raise ValueError("; ".join(errs))
    middle: dict[tuple[int, int], int] = {}
    for x, y, z in sorted(p.triples):
        middle.setdefault((x, z), y)
    adj: dict[int, list[int]] = {u: [] for u in range(p.colors)}
    for u, v in sorted(middle):
        adj[u].append(v)

    # cycle detection, iterative three-color DFS
    state = [0] * p.colors  # 0 new, 1 active, 2 done
    parent: dict[int, int] = {}
    for root in range(p.colors):
        if state[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        state[root] = 1
        while stack:
            node, idx = stack[-1]
            if idx < len(adj[node]):
                stack[-1] = (node, idx + 1)
                nxt = adj[node][idx]
                if state[nxt] == 1:
                    cycle = [nxt]
                    cur = node
                    while cur != nxt:
                        cycle.append(cur)
                        cur = parent[cur]
                    cycle.reverse()  # nxt -> ... -> node
                    steps = tuple(
                        (a, middle[(a, b)], b)
                        for a, b in zip(cycle, cycle[1:] + cycle[:1])
                    )
                    return WalkReport(True, None, steps)
                if state[nxt] == 0:
                    state[nxt] = 1
                    parent[nxt] = node
                    stack.append((nxt, 0))
            else:
                state[node] = 2
                stack.pop()

    # acyclic: dist[v] = longest walk out of v, computed in postorder
    dist = [0] * p.colors
    succ: dict[int, int] = {}
    seen = [False] * p.colors
    topo: list[int] = []
    for root in range(p.colors):
        if seen[root]:
            continue
        seen[root] = True
        stack = [(root, 0)]
        while stack:
            node, idx = stack[-1]
            if idx < len(adj[node]):
                stack[-1] = (node, idx + 1)
                nxt = adj[node][idx]
                if not seen[nxt]:
                    seen[nxt] = True
                    stack.append((nxt, 0))
            else:
                topo.append(node)
                stack.pop()
    for v in topo:  # successors pop before v, so their dist is final
        for u in adj[v]:
            if dist[u] + 1 > dist[v]:
                dist[v] = dist[u] + 1
                succ[v] = u
    if not any(dist):
        return WalkReport(False, 0, ())
    start = max(range(p.colors), key=lambda v: (dist[v], -v))
    path = [start]
    while path[-1] in succ:
        path.append(succ[path[-1]])
    steps = tuple((a, middle[(a, b)], b) for a, b in zip(path, path[1:]))
    return WalkReport(False, len(steps), steps)


def walk_level_sets(p: Palette) -> list[list[int]] | None:
    """Colors grouped by longest incoming walk length, or None when the
    walk digraph has a cycle."""
    report = longest_walk(p)
    if report.unbounded:
        return None
    starts = {(x, z) for x, _, z in p.triples}
    adj: dict[int, list[int]] = {u: [] for u in range(p.colors)}
    for u, v in sorted(starts):
        adj[u].append(v)
    incoming = [0] * p.colors
    changed = True
    while changed:  # acyclic, so settles in at most |colors| rounds
        changed = False
        for u in range(p.colors):
            for v in adj[u]:
                if incoming[u] + 1 > incoming[v]:
                    incoming[v] = incoming[u] + 1
                    changed = True
    levels: dict[int, list[int]] = {}
    for v in range(p.colors):
        levels.setdefault(incoming[v], []).append(v)
    return [levels[k] for k in sorted(levels)]


def walk_chain(p: Palette, k: int) -> list[Triple] | None:
    """k consecutive walk steps as admissible triples, or None when every
    walk is shorter than k.  Unbounded palettes loop their cycle."""
    if k < 1:
        raise ValueError(f"need a positive length, got {k}")
    report = longest_walk(p)
    if report.unbounded:
        cycle = report.steps
        return [cycle[i % len(cycle)] for i in range(k)]
    if report.length is None or report.length < k:
        return None
    return list(report.steps[:k])


# ---------------------------------------------------------------------------
# linear hypergraphs and the chain construction

@dataclass(frozen=True)
class LinearKGraph:
    """A (uniformity)-uniform hypergraph in which any two edges share at
    most one vertex."""
    uniformity: int
    vertices: int
    edges: frozenset[tuple[int, ...]]

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted(self.edges)


def linear_k_graph(uniformity: int, vertices: int, edges) -> LinearKGraph:
    return LinearKGraph(uniformity, vertices, frozenset(tuple(sorted(e)) for e in edges))


def check_linear(h: LinearKGraph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """First pair of edges sharing two or more vertices, or None."""
    edges = h.sorted_edges()
    for e in edges:
        if len(e) != h.uniformity or len(set(e)) != h.uniformity:
            raise ValueError(f"edge {e} is not a {h.uniformity}-set")
        if any(not 0 <= v < h.vertices for v in e):
            raise ValueError(f"edge {e} out of vertex range")
    for i, e1 in enumerate(edges):
        s1 = set(e1)
        for e2 in edges[i + 1:]:
            if len(s1.intersection(e2)) >= 2:
                return (e1, e2)
    return None


@dataclass(frozen=True)
class LinearBuildReport:
    sampled: int
    removed: int
    removal_bound: float      # n ** 1.25
    within_bound: bool
    probability: float
    seed: int


def _unrank_combination(index: int, n: int, r: int) -> tuple[int, ...]:
    # lexicographic unranking of r-subsets of range(n)
    out = []
    x = 0
    for slot in range(r, 0, -1):
        while math.comb(n - x - 1, slot - 1) <= index:
            index -= math.comb(n - x - 1, slot - 1)
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def build_linear_monotone(k: int, n: int, seed: int) -> tuple[LinearKGraph, LinearBuildReport]:
    """Sample a (k+2)-uniform hypergraph with edge probability
    n ** (3/2 - (k+2)), then delete every edge sharing two or more
    vertices with another.  The report records how many edges the
    deletion removed against the n ** 5/4 reference bound."""
    if k < 1:
        raise ValueError(f"need k at least 1, got {k}")
    if n < k + 2:
        return (
            linear_k_graph(k + 2, n, []),
            LinearBuildReport(0, 0, n**1.25, True, 0.0, seed),
        )
    r = k + 2
    total = math.comb(n, r)
    prob = float(n) ** (1.5 - r)
    rng = SplitMix64(seed)
    # sparse Bernoulli process via geometric gaps
    log_keep = math.log1p(-prob)
    position = -1
    picked: list[tuple[int, ...]] = []
    while True:
        u = rng.unit()
        gap = int(math.log1p(-u) / log_keep) + 1
        position += gap
        if position >= total:
            break
        picked.append(_unrank_combination(position, n, r))
    doomed: set[int] = set()
    sets = [set(e) for e in picked]
    for i in range(len(picked)):
        for j in range(i + 1, len(picked)):
            if len(sets[i] & sets[j]) >= 2:
                doomed.add(i)
                doomed.add(j)
    kept = [e for i, e in enumerate(picked) if i not in doomed]
    graph = linear_k_graph(r, n, kept)
    assert check_linear(graph) is None
    report = LinearBuildReport(
        sampled=len(picked),
        removed=len(doomed),
        removal_bound=n**1.25,
        within_bound=len(doomed) <= n**1.25,
        probability=prob,
        seed=seed,
    )
    return graph, report


def build_fk(h: LinearKGraph) -> ThreeGraph:
    """Replace each hyperedge v_1 < ... < v_{k+2} by its k consecutive
    vertex triples.  Linearity keeps the triples of distinct hyperedges
    disjoint, so the edge count is exactly k per hyperedge."""
    violation = check_linear(h)
    if violation is not None:
        raise ValueError(f"input is not linear: edges {violation[0]} and {violation[1]}")
    k = h.uniformity - 2
    if k < 1:
        raise ValueError(f"uniformity {h.uniformity} leaves no triples")
    edges = []
    for e in h.sorted_edges():
        for i in range(k):
            edges.append((e[i], e[i + 1], e[i + 2]))
    return three_graph(h.vertices, edges)


def chain_coloring_witness(fk: ThreeGraph, h: LinearKGraph, p: Palette) -> AdmissionWitness | None:
    """Color fk = build_fk(h) under the natural vertex order using k walk
    steps: consecutive pairs carry the walk's endpoint colors, skip pairs
    the middle colors.  None when every walk of p is shorter than k."""
    if build_fk(h) != fk:
        raise ValueError("graph does not match the linear input")
    k = h.uniformity - 2
    chain = walk_chain(p, k)
    if chain is None:
        return None
    heads = [t[0] for t in chain] + [chain[-1][2]]
    middles = [t[1] for t in chain]
    coloring: dict[tuple[int, int], int] = {}
    for e in h.sorted_edges():
        for i in range(k + 1):
            coloring[(e[i], e[i + 1])] = heads[i]
        for i in range(k):
            coloring[(e[i], e[i + 2])] = middles[i]
    return admission_witness(tuple(range(fk.vertices)), coloring)


# ---------------------------------------------------------------------------
# monotone coverage

@dataclass(frozen=True)
class CoverageReport:
    """Fraction of vertex permutations that are monotone on at least one
    hyperedge, with one violating permutation when coverage is not
    full."""
    mode: str
    fraction: Fraction
    violating: tuple[int, ...] | None
    samples: int | None = None
    seed: int | None = None


def _monotone_on_some_edge(ranks: tuple[int, ...], edges: list[tuple[int, ...]]) -> bool:
    for e in edges:
        seq = [ranks[v] for v in e]
        if all(a < b for a, b in zip(seq, seq[1:])) or all(
            a > b for a, b in zip(seq, seq[1:])
        ):
            return True
    return False


def monotone_coverage(
    h: LinearKGraph,
    mode: str = "exact",
    samples: int | None = None,
    seed: int | None = None,
    exact_limit: int = COVERAGE_EXACT_LIMIT,
) -> CoverageReport:
    """Exact mode enumerates rank assignments in lexicographic order with
    two subtree prunings: a completed monotone edge covers the whole
    subtree, and a state where every edge is broken rules the whole
    subtree out (recording the lexicographically first violator)."""
    n = h.vertices
    edges = h.sorted_edges()
    for e in edges:
        if len(e) != h.uniformity or len(set(e)) != len(e):
            raise ValueError(f"edge {e} is not a {h.uniformity}-set")
        if any(not 0 <= v < n for v in e):
            raise ValueError(f"edge {e} out of vertex range")
    if edges and h.uniformity < 2:
        raise ValueError("edges need at least two vertices")
    if mode == "sampled":
        if samples is None or seed is None:
            raise ValueError("sampled mode needs samples and seed")
        rng = SplitMix64(seed)
        covered = 0
        violating: tuple[int, ...] | None = None
        for _ in range(samples):
            ranks = rng.permutation(n)
            if _monotone_on_some_edge(ranks, edges):
                covered += 1
            elif violating is None:
                violating = ranks
        return CoverageReport(
            "sampled", Fraction(covered, samples), violating, samples, seed
        )
    if mode != "exact":
        raise ValueError(f"unknown coverage mode {mode!r}")
    if n > exact_limit:
        raise LimitError(f"exact coverage limited to {exact_limit} vertices, got {n}")

    factorial = [math.factorial(i) for i in range(n + 1)]
    at_vertex: dict[int, list[int]] = {v: [] for v in range(n)}
    for ei, e in enumerate(edges):
        for v in e:
            at_vertex[v].append(ei)
    # per edge: stack of (last rank, direction) after each assignment;
    # direction 0 undecided, +1/-1 monotone so far, None broken
    trail: list[list[tuple[int, int | None]]] = [[] for _ in edges]
    broken = 0
    complete = 0  # edges fully assigned and still monotone
    ranks: list[int] = []
    free: set[int] = set(range(n))
    covered_total = 0
    first_violating: tuple[int, ...] | None = None

    def descend(depth: int) -> None:
        nonlocal covered_total, first_violating, broken, complete
        if complete:
            covered_total += factorial[n - depth]
            return
        if broken == len(edges):  # vacuously true for no edges
            if first_violating is None:
                rest = sorted(free)
                first_violating = tuple(ranks + rest)
            return
        for r in sorted(free):
            ranks.append(r)
            free.remove(r)
            touched = at_vertex[depth]
            for ei in touched:
                st = trail[ei]
                if not st:
                    st.append((r, 0))
                else:
                    last, dirn = st[-1]
                    if dirn is None:
                        st.append((r, None))
                    else:
                        step = 1 if r > last else -1
                        if dirn == 0 or dirn == step:
                            st.append((r, step))
                            if len(st) == len(edges[ei]):
                                complete += 1
                        else:
                            st.append((r, None))
                            broken += 1
            descend(depth + 1)
            for ei in touched:
                st = trail[ei]
                _, dirn = st.pop()
                if dirn is None and (not st or st[-1][1] is not None):
                    broken -= 1
                elif dirn is not None and len(st) + 1 == len(edges[ei]):
                    complete -= 1
            free.add(r)
            ranks.pop()

    descend(0)
    return CoverageReport("exact", Fraction(covered_total, factorial[n]), first_violating)


def find_full_coverage_linear(k: int, max_vertices: int = 10) -> tuple[LinearKGraph | None, list[str]]:
    """Bounded search for a linear (k+2)-uniform hypergraph on at most
    max_vertices vertices on which every permutation is monotone on some
    edge.  A packing bound rules every candidate size out at desk scale:
    a linear graph on n vertices has at most C(n,2)/C(k+2,2) edges, each
    covering a 2/(k+2)! share of permutations, so coverage stays below 1
    whenever that product does.  Returns (None, reasons) in that case."""
    reasons = []
    r = k + 2
    found = None
    for n in range(r, max_vertices + 1):
        cap = math.comb(n, 2) // math.comb(r, 2)
        share = Fraction(2 * cap, math.factorial(r))
        if share < 1:
            reasons.append(
                f"n={n}: at most {cap} edges, union coverage <= {share} < 1"
            )
            continue
        # packing-feasible size; look at pinned random builds
        for seed in range(1, 6):
            g, _ = build_linear_monotone(k, n, seed)
            if g.edges and monotone_coverage(g).fraction == 1:
                return g, reasons
        reasons.append(f"n={n}: sampled builds left coverage below 1")
    return found, reasons
