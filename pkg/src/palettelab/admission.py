"""Decision procedures: palette admission and reduced-hypergraph embedding.

admits() searches for a vertex order and a pair coloring under which
every edge's ordered color triple is admissible.  The search places
vertices into the order one at a time; an edge whose three vertices are
all placed becomes active and its pairs acquire color domains filtered
through positional membership tables of the admissible triple set.
Active pairs are colored fail-first (smallest domain) before the next
vertex is placed, with chronological backtracking across both decision
kinds.  Two symmetry quotients keep the tree small: the first placed
vertex ranges over one representative per vertex-relabeling orbit of the
graph, and the first assigned color over one representative per
color-relabeling orbit of the palette.

embeds() runs the same engine against a reduced hypergraph, except that
vertices are assigned concrete indices instead of order positions and
each active edge filters through its own constituent's tables.  The pair
map is total: a pair covered by no edge still needs a nonempty class
(its image is the class's vertex 0).

Both searches are deterministic, complete within their caps, and raise
BudgetExhaustedError when a node budget runs out, which is deliberately
distinct from a definitive None.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    AdmissionWitness,
    BudgetExhaustedError,
    EmbeddingWitness,
    LimitError,
    Pair,
    Palette,
    ReducedHypergraph,
    ThreeGraph,
    Triple,
    WitnessError,
    admission_witness,
    canonical_palette_with_map,
    canonical_three_graph_with_map,
    color_orbits,
    embedding_witness,
    pair,
    reduced_hypergraph,
    three_graph_orbit_reps,
    validate,
)

_EMPTY: frozenset[int] = frozenset()


@dataclass(frozen=True)
class SearchLimits:
    max_vertices: int = 12
    max_nodes: int | None = None


class _SlotIndex:
    """Per-slot membership tables for one admissible triple set."""

    def __init__(self, triples: frozenset[Triple]) -> None:
        self.proj: list[set[int]] = [set(), set(), set()]
        self.one: dict[tuple[int, int], dict[int, set[int]]] = {}
        self.two: dict[int, dict[tuple[int, int], set[int]]] = {}
        for t in triples:
            for k in range(3):
                self.proj[k].add(t[k])
                a, b = (i for i in range(3) if i != k)
                for j in (a, b):
                    self.one.setdefault((k, j), {}).setdefault(t[j], set()).add(t[k])
                self.two.setdefault(k, {}).setdefault((t[a], t[b]), set()).add(t[k])

    def allowed(self, k: int, siblings: list[int | None]) -> frozenset[int] | set[int]:
        """Values possible at slot k given the other slots' assignments."""
        a, b = (i for i in range(3) if i != k)
        va, vb = siblings[a], siblings[b]
        if va is None and vb is None:
            return self.proj[k]
        if vb is None:
            return self.one.get((k, a), {}).get(va, _EMPTY)  # type: ignore[arg-type]
        if va is None:
            return self.one.get((k, b), {}).get(vb, _EMPTY)  # type: ignore[arg-type]
        return self.two.get(k, {}).get((va, vb), _EMPTY)


def _check_valid(obj) -> None:
    errs = validate(obj)
    if errs:
        raise ValueError("; ".join(errs))


def admits(
    f: ThreeGraph,
    p: Palette,
    limits: SearchLimits | None = None,
    cache=None,
) -> AdmissionWitness | None:
    """One vertex order plus pair coloring admitting f, or None.

    With a cache, verdicts are shared between color- and vertex-relabeled
    instances: records are keyed by canonical forms and witnesses are
    stored in canonical coordinates, so a hit performs no search.
    """
    _check_valid(f)
    _check_valid(p)
    limits = limits or SearchLimits()
    if f.vertices > limits.max_vertices:
        raise LimitError(
            f"admission search limited to {limits.max_vertices} vertices, got {f.vertices}"
        )
    if cache is not None and cache.accepts(f, p):
        return _admits_cached(f, p, limits, cache)
    return _admit_search(f, p, limits)


def _admits_cached(f, p, limits, cache) -> AdmissionWitness | None:
    cf, vperm = canonical_three_graph_with_map(f)
    cp, cperm = canonical_palette_with_map(p)
    key = cache.key(cf, cp)
    record = cache.get(key, cf, cp)
    if record is not None:
        if not record["admitted"]:
            return None
        inv_v = _invert(vperm)
        inv_c = _invert(cperm)
        stored = record["witness"]
        order = tuple(inv_v[x] for x in stored["order"])
        coloring = {}
        for key_uv, col in stored["coloring"].items():
            u, v = (int(x) for x in key_uv.split(","))
            coloring[pair(inv_v[u], inv_v[v])] = inv_c[col]
        return admission_witness(order, coloring)
    cache.searches += 1
    result = _admit_search(f, p, limits)
    if result is None:
        stored_witness = None
    else:
        col = {}
        for (u, v), c in result.coloring:
            a, b = pair(vperm[u], vperm[v])
            col[f"{a},{b}"] = cperm[c]
        stored_witness = {
            "order": [vperm[v] for v in result.order],
            "coloring": col,
        }
    cache.put(key, cf, cp, {"admitted": result is not None, "witness": stored_witness})
    return result


def _invert(perm: tuple[int, ...]) -> list[int]:
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    return inv


def _admit_search(f: ThreeGraph, p: Palette, limits: SearchLimits) -> AdmissionWitness | None:
    n = f.vertices
    edges = f.sorted_edges()
    if not edges:
        return admission_witness(tuple(range(n)), {})
    if not p.triples:
        return None
    index = _SlotIndex(p.triples)
    edges_at: dict[int, list[int]] = {v: [] for v in range(n)}
    for ei, e in enumerate(edges):
        for v in e:
            edges_at[v].append(ei)
    covering: dict[Pair, list[int]] = {}
    for ei, (a, b, c) in enumerate(edges):
        for pr in ((a, b), (a, c), (b, c)):
            covering.setdefault(pr, []).append(ei)

    first_candidates = three_graph_orbit_reps(f)
    orbits = color_orbits(p)

    pos: dict[int, int] = {}
    order: list[int] = []
    coloring: dict[Pair, int] = {}
    complete: list[bool] = [False] * len(edges)
    active_pairs: set[Pair] = set()
    nodes = 0
    budget = limits.max_nodes

    def ordered_pairs(ei: int) -> tuple[Pair, Pair, Pair]:
        u, v, w = sorted(edges[ei], key=pos.__getitem__)
        return (pair(u, v), pair(u, w), pair(v, w))

    def pair_domain(pr: Pair) -> set[int]:
        dom: set[int] | None = None
        for ei in covering[pr]:
            if not complete[ei]:
                continue
            slots = ordered_pairs(ei)
            k = slots.index(pr)
            siblings: list[int | None] = [coloring.get(s) for s in slots]
            siblings[k] = None
            allowed = index.allowed(k, siblings)
            dom = set(allowed) if dom is None else dom & allowed
            if not dom:
                return set()
        return dom if dom is not None else set()

    def place(v: int) -> list[int]:
        pos[v] = len(order)
        order.append(v)
        newly = [ei for ei in edges_at[v] if all(u in pos for u in edges[ei])]
        for ei in newly:
            complete[ei] = True
            active_pairs.update(ordered_pairs(ei))
        return newly

    def unplace(v: int, newly: list[int]) -> None:
        for ei in newly:
            complete[ei] = False
        order.pop()
        del pos[v]
        # an active pair stays active iff some complete edge still covers it
        stale = [
            pr for pr in active_pairs if not any(complete[ei] for ei in covering[pr])
        ]
        active_pairs.difference_update(stale)

    def step() -> AdmissionWitness | None:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExhaustedError(f"admission search budget of {budget} nodes exhausted")
        pending = sorted(pr for pr in active_pairs if pr not in coloring)
        if pending:
            scored = [(pair_domain(pr), pr) for pr in pending]
            dom, pr = min(scored, key=lambda item: (len(item[0]), item[1]))
            if not dom:
                return None
            if not coloring:
                values = sorted(
                    min(members) for orbit in orbits if (members := set(orbit) & dom)
                )
            else:
                values = sorted(dom)
            for val in values:
                coloring[pr] = val
                found = step()
                if found is not None:
                    return found
                del coloring[pr]
            return None
        if len(order) < n:
            if order:
                unplaced = [v for v in range(n) if v not in pos]
                unplaced.sort(
                    key=lambda v: (
                        -sum(
                            1
                            for ei in edges_at[v]
                            if sum(u in pos for u in edges[ei]) == 2
                        ),
                        v,
                    )
                )
            else:
                unplaced = first_candidates
            for v in unplaced:
                newly = place(v)
                found = step()
                if found is not None:
                    return found
                unplace(v, newly)
            return None
        return admission_witness(tuple(order), coloring)

    return step()


def verify_admission(f: ThreeGraph, p: Palette, w: AdmissionWitness) -> bool:
    """Check a witness against the definition.  A missing color on a pair
    covered by some edge is a witness defect and raises, never False."""
    _check_valid(f)
    _check_valid(p)
    if sorted(w.order) != list(range(f.vertices)):
        raise WitnessError(f"order {w.order} is not a permutation of 0..{f.vertices - 1}")
    posn = {v: i for i, v in enumerate(w.order)}
    colors = w.color_map()
    for key, c in colors.items():
        if not 0 <= c < p.colors:
            raise WitnessError(f"color {c} on pair {key} out of range")
    for e in f.sorted_edges():
        u, v, x = sorted(e, key=posn.__getitem__)
        triple = []
        for pr in (pair(u, v), pair(u, x), pair(v, x)):
            if pr not in colors:
                raise WitnessError(f"no color on covered pair {pr}")
            triple.append(colors[pr])
        if tuple(triple) not in p.triples:
            return False
    return True


# ---------------------------------------------------------------------------
# reduced hypergraphs

def build_reduced(p: Palette, n: int) -> ReducedHypergraph:
    """The reduced hypergraph with one copy of the color set per index
    pair and one positional copy of the admissible triples per index
    triple."""
    _check_valid(p)
    if n < 0:
        raise ValueError(f"negative index count {n}")
    sizes = {pr: p.colors for pr in itertools.combinations(range(n), 2)}
    cons = {tr: p.triples for tr in itertools.combinations(range(n), 3)}
    return reduced_hypergraph(n, sizes, cons)


def embeds(
    f: ThreeGraph,
    h: ReducedHypergraph,
    limits: SearchLimits | None = None,
) -> EmbeddingWitness | None:
    """An injective index map plus total pair map embedding f in h, or None."""
    _check_valid(f)
    _check_valid(h)
    limits = limits or SearchLimits()
    n = f.vertices
    if n > limits.max_vertices:
        raise LimitError(
            f"embedding search limited to {limits.max_vertices} vertices, got {n}"
        )
    if n > h.index_count:
        return None
    edges = f.sorted_edges()
    sizes = h.size_map()
    cons = h.constituent_map()
    slot_indexes: dict[Triple, _SlotIndex] = {}

    def constituent_index(key: Triple) -> _SlotIndex:
        idx = slot_indexes.get(key)
        if idx is None:
            idx = _SlotIndex(cons.get(key, _EMPTY))  # type: ignore[arg-type]
            slot_indexes[key] = idx
        return idx

    edges_at: dict[int, list[int]] = {v: [] for v in range(n)}
    for ei, e in enumerate(edges):
        for v in e:
            edges_at[v].append(ei)
    covering: dict[Pair, list[int]] = {}
    for ei, (a, b, c) in enumerate(edges):
        for pr in ((a, b), (a, c), (b, c)):
            covering.setdefault(pr, []).append(ei)

    degree = {v: len(edges_at[v]) for v in range(n)}
    vertex_order = sorted(range(n), key=lambda v: (-degree[v], v))

    tau: dict[int, int] = {}
    used: set[int] = set()
    pairval: dict[Pair, int] = {}
    complete: list[bool] = [False] * len(edges)
    active_pairs: set[Pair] = set()
    nodes = 0
    budget = limits.max_nodes

    def edge_slots(ei: int) -> tuple[tuple[Pair, int], ...]:
        """(graph pair, constituent slot) for a complete edge."""
        a, b, c = edges[ei]
        idx = sorted((tau[a], tau[b], tau[c]))
        key = (idx[0], idx[1], idx[2])
        out = []
        for pr in ((a, b), (a, c), (b, c)):
            cls = pair(tau[pr[0]], tau[pr[1]])
            slot = ((idx[0], idx[1]), (idx[0], idx[2]), (idx[1], idx[2])).index(cls)
            out.append((pair(*pr), slot))
        return tuple(out)

    def pair_domain(pr: Pair) -> set[int]:
        cls = pair(tau[pr[0]], tau[pr[1]])
        dom: set[int] = set(range(sizes.get(cls, 0)))
        for ei in covering.get(pr, ()):
            if not complete[ei]:
                continue
            a, b, c = edges[ei]
            key = tuple(sorted((tau[a], tau[b], tau[c])))
            index = constituent_index(key)  # type: ignore[arg-type]
            slots = edge_slots(ei)
            k = next(s for q, s in slots if q == pr)
            siblings: list[int | None] = [None, None, None]
            for q, s in slots:
                if q != pr:
                    siblings[s] = pairval.get(q)
            dom &= index.allowed(k, siblings)
            if not dom:
                return set()
        return dom

    def place(v: int, i: int) -> list[int] | None:
        # every pair with a placed vertex needs a nonempty class
        for u in tau:
            if sizes.get(pair(tau[u], i), 0) < 1:
                return None
        tau[v] = i
        used.add(i)
        newly = [ei for ei in edges_at[v] if all(u in tau for u in edges[ei])]
        for ei in newly:
            complete[ei] = True
            active_pairs.update(q for q, _ in edge_slots(ei))
        return newly

    def unplace(v: int, newly: list[int]) -> None:
        for ei in newly:
            complete[ei] = False
        used.discard(tau[v])
        del tau[v]
        stale = [
            pr for pr in active_pairs if not any(complete[ei] for ei in covering[pr])
        ]
        active_pairs.difference_update(stale)

    def step(depth: int) -> EmbeddingWitness | None:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExhaustedError(f"embedding search budget of {budget} nodes exhausted")
        pending = sorted(pr for pr in active_pairs if pr not in pairval)
        if pending:
            scored = [(pair_domain(pr), pr) for pr in pending]
            dom, pr = min(scored, key=lambda item: (len(item[0]), item[1]))
            if not dom:
                return None
            for val in sorted(dom):
                pairval[pr] = val
                found = step(depth)
                if found is not None:
                    return found
                del pairval[pr]
            return None
        if depth < n:
            v = vertex_order[depth]
            for i in range(h.index_count):
                if i in used:
                    continue
                newly = place(v, i)
                if newly is None:
                    continue
                found = step(depth + 1)
                if found is not None:
                    return found
                unplace(v, newly)
            return None
        full_pairs = dict(pairval)
        for u, v in itertools.combinations(range(n), 2):
            full_pairs.setdefault(pair(u, v), 0)
        return embedding_witness(tau, full_pairs)

    return step(0)


def verify_embedding(f: ThreeGraph, h: ReducedHypergraph, w: EmbeddingWitness) -> bool:
    """Check an embedding witness.  Structural defects (non-injective or
    incomplete maps, references outside a class) raise; a triple landing
    outside its constituent returns False."""
    _check_valid(f)
    _check_valid(h)
    tau = w.indices()
    if set(tau) != set(range(f.vertices)):
        raise WitnessError("index map does not cover the vertex set")
    if len(set(tau.values())) != len(tau):
        raise WitnessError("index map not injective")
    for v, i in tau.items():
        if not 0 <= i < h.index_count:
            raise WitnessError(f"index {i} for vertex {v} out of range")
    sizes = h.size_map()
    pairs = w.pairs()
    for u, v in itertools.combinations(range(f.vertices), 2):
        pr = pair(u, v)
        if pr not in pairs:
            raise WitnessError(f"no class vertex on pair {pr}")
        cls = pair(tau[u], tau[v])
        if not 0 <= pairs[pr] < sizes.get(cls, 0):
            raise WitnessError(f"pair {pr} mapped outside class {cls}")
    cons = h.constituent_map()
    for e in f.sorted_edges():
        a, b, c = e
        idx = sorted((tau[a], tau[b], tau[c]))
        key = (idx[0], idx[1], idx[2])
        triple = [0, 0, 0]
        for pr in ((a, b), (a, c), (b, c)):
            cls = pair(tau[pr[0]], tau[pr[1]])
            slot = ((idx[0], idx[1]), (idx[0], idx[2]), (idx[1], idx[2])).index(cls)
            triple[slot] = pairs[pair(*pr)]
        if tuple(triple) not in cons.get(key, _EMPTY):  # type: ignore[operator]
            return False
    return True
