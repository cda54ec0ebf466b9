"""Brute-force oracles and deterministic instance generators.

Everything here recomputes answers from definitions, independently of
the package's search engines, so engine output is checked against first
principles rather than against itself.
"""
import itertools

from palettelab.core import pair, palette, three_graph
from palettelab.rng import SplitMix64


def naive_admits(f, p):
    """Try every vertex order and every coloring of the covered pairs."""
    cov = f.covered_pairs()
    slot = {pr: i for i, pr in enumerate(cov)}
    edges = f.sorted_edges()
    if not edges:
        return True
    for order in itertools.permutations(range(f.vertices)):
        posn = {v: i for i, v in enumerate(order)}
        probes = []
        for e in edges:
            u, v, w = sorted(e, key=posn.__getitem__)
            probes.append((slot[pair(u, v)], slot[pair(u, w)], slot[pair(v, w)]))
        for colors in itertools.product(range(p.colors), repeat=len(cov)):
            if all((colors[i], colors[j], colors[k]) in p.triples for i, j, k in probes):
                return True
    return False


def naive_layered(f, degenerate):
    """Try every order and every label tuple over a bounded label range.

    Nine labels cover the instance sizes used in tests: a witness on at
    most nine covered pairs can always be relabeled into 1..9.
    """
    edges = f.sorted_edges()
    if not edges:
        return True
    cap = min(9, len(f.covered_pairs()))
    seen = set()
    for order in itertools.permutations(range(f.vertices)):
        posn = {v: i for i, v in enumerate(order)}
        prof = tuple(sorted(tuple(sorted(posn[v] for v in e)) for e in edges))
        if prof in seen:
            continue
        seen.add(prof)
        ppairs = sorted({pp for i, j, k in prof for pp in ((i, j), (i, k), (j, k))})
        idx = {pp: x for x, pp in enumerate(ppairs)}
        probes = [(idx[(i, j)], idx[(i, k)], idx[(j, k)]) for i, j, k in prof]
        for labs in itertools.product(range(1, cap + 1), repeat=len(ppairs)):
            ts = {(labs[a], labs[b], labs[c]) for a, b, c in probes}
            if degenerate(ts)[0]:
                return True
    return False


def random_three_graph(rnd: SplitMix64, max_vertices: int = 5, keep_in: int = 3):
    n = 3 + rnd.below(max_vertices - 2)
    edges = [e for e in itertools.combinations(range(n), 3) if rnd.below(keep_in) == 0]
    return three_graph(n, edges)


def random_palette(rnd: SplitMix64, max_colors: int = 3, keep_in: int = 3):
    c = 1 + rnd.below(max_colors)
    triples = [t for t in itertools.product(range(c), repeat=3) if rnd.below(keep_in) == 0]
    return palette(c, triples)


def all_two_color_palettes():
    """All 256 palettes on two colors, in slot-mask order."""
    slots = sorted(itertools.product(range(2), repeat=3))
    for bits in range(256):
        yield palette(2, [t for i, t in enumerate(slots) if bits >> i & 1])


def graph_classes_by_orbit(n):
    """Canonical edge lists of the isolated-vertex-free graphs on n
    vertices, found by minimizing each edge set over all permutations."""
    slots = list(itertools.combinations(range(n), 3))
    perms = list(itertools.permutations(range(n)))
    reps = set()
    for bits in range(1, 1 << len(slots)):
        edges = [slots[i] for i in range(len(slots)) if bits >> i & 1]
        if len({v for e in edges for v in e}) != n:
            continue
        best = None
        for perm in perms:
            img = tuple(sorted(tuple(sorted((perm[a], perm[b], perm[c]))) for a, b, c in edges))
            if best is None or img < best:
                best = img
        reps.add(best)
    return reps
