"""Sweeps over palettes and small 3-graphs.

Palette enumeration yields one representative per color-relabeling
class, which keeps density sweeps honest: the admission verdict and
the density are both relabeling invariants.  The bound computed here
is a restricted-width certificate, a maximum over palettes with a
fixed color budget, never a claim about the unrestricted supremum.

The structural verifier for the broken tetrahedron builds the two
auxiliary digraphs (first-to-middle and last-to-middle), hunts the
three-arc pattern whose presence forces admission, and evaluates the
counting chain that bounds pattern-free palettes at density 1/4.

The separating search decides the easy direction of the one-on-one
comparison theorem exactly (a color map into the target or its
reverse rules every separator out), and otherwise tries small graphs
exhaustively up to isomorphism.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .admission import SearchLimits, admits, verify_admission
from .cache import MemoryCache
from .constructions import k4_minus
from .core import (
    AdmissionWitness,
    BudgetExhaustedError,
    LimitError,
    Palette,
    PaletteLabError,
    ThreeGraph,
    admission_witness,
    canonical_palette,
    palette,
    three_graph,
    validate,
)
from .metrics import density, reverse, subpalette
from .rng import SplitMix64

ENUMERATION_COLOR_LIMIT = 3
ENUMERATION_VERTEX_LIMIT = 6


# ---------------------------------------------------------------------------
# palette enumeration

def enumerate_palettes(
    colors: int,
    min_density: Fraction | None = None,
    min_degree: Fraction | None = None,
):
    """Yield canonical palettes on the given color count, one per
    color-relabeling class, in subset order.

    Filters are inclusive lower bounds on density and minimum degree.
    Beyond three colors the subset space is astronomically large, so
    exhaustive mode refuses; use random_palettes there.
    """
    if colors < 1:
        raise ValueError(f"need at least one color, got {colors}")
    if colors > ENUMERATION_COLOR_LIMIT:
        raise LimitError(
            f"exhaustive enumeration limited to {ENUMERATION_COLOR_LIMIT} colors, got {colors}"
        )
    from .metrics import min_degree as degree_of

    slots = sorted(itertools.product(range(colors), repeat=3))
    for mask in range(1 << len(slots)):
        triples = [slots[i] for i in range(len(slots)) if mask >> i & 1]
        p = palette(colors, triples)
        if canonical_palette(p) != p:
            continue
        if min_density is not None and density(p) < min_density:
            continue
        if min_degree is not None and degree_of(p) < min_degree:
            continue
        yield p


def random_palettes(colors: int, count: int, seed: int) -> list[Palette]:
    """Uniformly random triple subsets, one fair coin per slot."""
    if colors < 1:
        raise ValueError(f"need at least one color, got {colors}")
    rng = SplitMix64(seed)
    slots = sorted(itertools.product(range(colors), repeat=3))
    out = []
    for _ in range(count):
        out.append(palette(colors, [t for t in slots if rng.below(2)]))
    return out


# ---------------------------------------------------------------------------
# 3-graph enumeration

def enumerate_three_graphs(vertices: int):
    """Canonical 3-graphs on exactly this many vertices, every vertex in
    some edge, connected ones first, subset order within each half.

    Candidates are edge-set masks; a mask survives when no vertex
    relabeling produces a smaller one.  Transpositions are tried first
    since they reject almost all non-canonical masks cheaply.
    """
    if vertices < 3:
        return
    if vertices > ENUMERATION_VERTEX_LIMIT:
        raise LimitError(
            f"exhaustive listing limited to {ENUMERATION_VERTEX_LIMIT} vertices, got {vertices}"
        )
    slots = list(itertools.combinations(range(vertices), 3))
    slot_id = {e: i for i, e in enumerate(slots)}
    perm_tables = []
    for perm in itertools.permutations(range(vertices)):
        moved = sum(1 for v in range(vertices) if perm[v] != v)
        if moved == 0:
            continue
        perm_tables.append(
            (moved, tuple(slot_id[tuple(sorted((perm[a], perm[b], perm[c])))] for a, b, c in slots))
        )
    perm_tables.sort(key=lambda mt: mt[0])
    perm_tables = [t for _, t in perm_tables]
    vertex_mask = []
    for v in range(vertices):
        m = 0
        for i, e in enumerate(slots):
            if v in e:
                m |= 1 << i
        vertex_mask.append(m)

    def canonical_bits(bits: list[int]) -> bool:
        # orbit members share the edge count, so plain list order is the
        # lexicographic order on sorted edge lists
        for table in perm_tables:
            if sorted(table[i] for i in bits) < bits:
                return False
        return True

    def connected(mask: int) -> bool:
        parent = list(range(vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, e in enumerate(slots):
            if mask >> i & 1:
                a, b, c = e
                for u, v in ((a, b), (b, c)):
                    ru, rv = find(u), find(v)
                    if ru != rv:
                        parent[ru] = rv
        return len({find(v) for v in range(vertices)}) == 1

    first: list[tuple[list[int], ThreeGraph]] = []
    second: list[tuple[list[int], ThreeGraph]] = []
    for mask in range(1, 1 << len(slots)):
        if any(mask & vm == 0 for vm in vertex_mask):
            continue  # isolated vertex: same graph already seen smaller
        bits = [i for i in range(len(slots)) if mask >> i & 1]
        if not canonical_bits(bits):
            continue
        g = three_graph(vertices, [slots[i] for i in bits])
        (first if connected(mask) else second).append((bits, g))
    for bucket in (first, second):
        bucket.sort(key=lambda bg: bg[0])
        for _, g in bucket:
            yield g


# ---------------------------------------------------------------------------
# restricted-width density bound

def palette_turan_lower_bound(
    f: ThreeGraph,
    colors: int,
    limits: SearchLimits | None = None,
    cache=None,
) -> tuple[Fraction, Palette | None]:
    """Maximum density among enumerated palettes the graph does not
    admit, with the first maximizing palette.  (0, None) when every
    palette is admitted (edgeless graphs).  An exhausted admission
    budget aborts the sweep: a guessed non-admission could overstate
    the bound.
    """
    errs = validate(f)
    if errs:
        raise ValueError("; ".join(errs))
    if cache is None:
        cache = MemoryCache()
    best: Fraction = Fraction(0)
    witness: Palette | None = None
    for p in enumerate_palettes(colors):
        try:
            verdict = admits(f, p, limits=limits, cache=cache)
        except BudgetExhaustedError as exc:
            raise BudgetExhaustedError(
                f"admission budget exhausted on palette {p.sorted_triples()}: {exc}"
            ) from None
        if verdict is not None:
            continue
        d = density(p)
        if witness is None or d > best:
            best, witness = d, p
    return best, witness


# ---------------------------------------------------------------------------
# broken tetrahedron structure

@dataclass(frozen=True)
class K4MinusReport:
    """Structural analysis of one palette against the broken tetrahedron.

    Arcs go first-to-middle (left digraph) and last-to-middle (right).
    A three-arc pattern a->b, a->c, b->c in either digraph, endpoints
    not necessarily distinct, yields an explicit admission witness.
    Pattern-free palettes obey the counting chain
    triple_count <= codegree_sum <= half_square_sum <= cube_quarter,
    hence density at most 1/4.
    """
    left_arcs: tuple[tuple[int, int], ...]
    right_arcs: tuple[tuple[int, int], ...]
    pattern_side: str | None
    pattern: tuple[int, int, int] | None
    completions: tuple[int, int, int] | None
    witness: AdmissionWitness | None
    triple_count: int
    codegree_sum: int
    half_square_sum: Fraction
    cube_quarter: Fraction
    density_bounded: bool | None


def _arc_pattern(arcs: set[tuple[int, int]], colors: int):
    for a, b, c in itertools.product(range(colors), repeat=3):
        if (a, b) in arcs and (a, c) in arcs and (b, c) in arcs:
            return (a, b, c)
    return None


def verify_k4minus_structure(p: Palette) -> K4MinusReport:
    errs = validate(p)
    if errs:
        raise ValueError("; ".join(errs))
    left = {(x, y) for x, y, _ in p.triples}
    right = {(z, y) for _, y, z in p.triples}
    in_left = [0] * p.colors
    in_right = [0] * p.colors
    for _, v in left:
        in_left[v] += 1
    for _, v in right:
        in_right[v] += 1
    codegree = sum(l * r for l, r in zip(in_left, in_right))
    half = sum(Fraction(l * l + r * r, 2) for l, r in zip(in_left, in_right))
    quarter = Fraction(p.colors**3, 4)

    side = None
    pat = None
    completions = None
    witness = None
    pat_l = _arc_pattern(left, p.colors)
    if pat_l is not None:
        side, pat = "L", pat_l
        source = p
    else:
        pat_r = _arc_pattern(right, p.colors)
        if pat_r is not None:
            # the right digraph of p is the left digraph of its reverse
            side, pat = "R", pat_r
            source = reverse(p)
    if pat is not None:
        a, b, c = pat
        x = min(w for u, v, w in source.triples if (u, v) == (a, b))
        y = min(w for u, v, w in source.triples if (u, v) == (a, c))
        z = min(w for u, v, w in source.triples if (u, v) == (b, c))
        completions = (x, y, z)
        coloring = {
            (0, 1): a, (0, 2): b, (0, 3): c,
            (1, 2): x, (1, 3): y, (2, 3): z,
        }
        order = (0, 1, 2, 3) if side == "L" else (3, 2, 1, 0)
        witness = admission_witness(order, coloring)
        if not verify_admission(k4_minus(), p, witness):
            raise PaletteLabError("pattern produced a bad witness")

    bounded: bool | None = None
    if pat is None:
        bounded = density(p) <= Fraction(1, 4)
        if not bounded:
            raise PaletteLabError(
                "pattern-free palette above density 1/4 contradicts the counting bound"
            )
    return K4MinusReport(
        left_arcs=tuple(sorted(left)),
        right_arcs=tuple(sorted(right)),
        pattern_side=side,
        pattern=pat,
        completions=completions,
        witness=witness,
        triple_count=len(p.triples),
        codegree_sum=codegree,
        half_square_sum=half,
        cube_quarter=quarter,
        density_bounded=bounded,
    )


# ---------------------------------------------------------------------------
# separating graphs

@dataclass(frozen=True)
class SeparationResult:
    """Outcome of the bounded hunt for a graph admitting one palette
    but not the other.  none-by-theorem carries the color map that
    rules every separator out; exhausted carries the enumeration
    cursor so a later run can resume."""
    status: str  # "found" | "none-by-theorem" | "exhausted"
    graph: ThreeGraph | None = None
    theorem_map: tuple[tuple[int, int], ...] | None = None
    theorem_target: str | None = None  # "target" | "reversed-target"
    examined: int = 0
    skipped_budget: int = 0
    max_vertices: int = 0


def search_separating_graph(
    p: Palette,
    q: Palette,
    max_vertices: int = 6,
    limits: SearchLimits | None = None,
    cache=None,
    resume_examined: int = 0,
) -> SeparationResult:
    """Find a 3-graph admitting p but not q, or rule one out.

    A color map from p into q (or into q's reverse) transfers every
    admission, so no separator exists at any size; that check is exact.
    Otherwise canonical graphs are tried in enumeration order.  An
    admission budget blown on a candidate skips it (recorded), never
    produces a verdict.
    """
    for pal in (p, q):
        errs = validate(pal)
        if errs:
            raise ValueError("; ".join(errs))
    m = subpalette(p, q)
    if m is not None:
        return SeparationResult(
            "none-by-theorem",
            theorem_map=tuple(sorted(m.items())),
            theorem_target="target",
            max_vertices=max_vertices,
        )
    m = subpalette(p, reverse(q))
    if m is not None:
        return SeparationResult(
            "none-by-theorem",
            theorem_map=tuple(sorted(m.items())),
            theorem_target="reversed-target",
            max_vertices=max_vertices,
        )
    if cache is None:
        cache = MemoryCache()
    examined = 0
    skipped = 0
    for n in range(3, max_vertices + 1):
        for g in enumerate_three_graphs(n):
            examined += 1
            if examined <= resume_examined:
                continue
            try:
                if admits(g, p, limits=limits, cache=cache) is None:
                    continue
                if admits(g, q, limits=limits, cache=cache) is None:
                    return SeparationResult(
                        "found",
                        graph=g,
                        examined=examined,
                        skipped_budget=skipped,
                        max_vertices=max_vertices,
                    )
            except BudgetExhaustedError:
                skipped += 1
    return SeparationResult(
        "exhausted",
        examined=examined,
        skipped_budget=skipped,
        max_vertices=max_vertices,
    )
