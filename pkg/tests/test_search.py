"""Bounded enumerations and the structural sweeps built on them.

Class counts asserted here (2 and 136 palette classes on one and two
colors; 1, 3, and 29 graph classes on three to five vertices) were
frozen from the orbit-exhausting oracle in oracles.py.
"""
import itertools
from fractions import Fraction

import pytest

from palettelab.core import (
    BudgetExhaustedError,
    LimitError,
    canonical_palette,
    canonical_three_graph,
    palette,
    three_graph,
)
from palettelab.metrics import density, reverse, subpalette, verify_subpalette
from palettelab.admission import SearchLimits, admits, verify_admission
from palettelab.cache import MemoryCache
from palettelab.constructions import make_chain_palette
from palettelab.rng import SplitMix64
from palettelab.search import (
    enumerate_palettes,
    enumerate_three_graphs,
    palette_turan_lower_bound,
    random_palettes,
    search_separating_graph,
    verify_k4minus_structure,
)

from oracles import (
    all_two_color_palettes,
    graph_classes_by_orbit,
    random_palette,
    random_three_graph,
)


# --- palette enumeration ---


def test_palette_class_counts():
    assert sum(1 for _ in enumerate_palettes(1)) == 2
    assert sum(1 for _ in enumerate_palettes(2)) == 136


def test_enumerated_palettes_are_canonical_and_distinct():
    seen = set()
    for p in enumerate_palettes(2):
        assert canonical_palette(p) == p
        assert p not in seen
        seen.add(p)
    # every palette lands in exactly one enumerated class
    reps = {canonical_palette(p) for p in all_two_color_palettes()}
    assert reps == seen


def test_palette_enumeration_filters():
    min_d = Fraction(1, 4)
    filtered = list(enumerate_palettes(2, min_density=min_d))
    assert all(density(p) >= min_d for p in filtered)
    assert filtered == [p for p in enumerate_palettes(2) if density(p) >= min_d]
    deg = list(enumerate_palettes(2, min_degree=Fraction(1, 4)))
    assert 0 < len(deg) < 136


def test_palette_enumeration_limit():
    with pytest.raises(LimitError):
        next(enumerate_palettes(4))


def test_random_palettes():
    first = list(random_palettes(3, 10, seed=5))
    again = list(random_palettes(3, 10, seed=5))
    assert first == again
    assert len(first) == 10
    assert all(p.colors == 3 for p in first)
    assert first != list(random_palettes(3, 10, seed=6))


# --- graph enumeration ---


def test_graph_class_counts(single_edge):
    n3 = list(enumerate_three_graphs(3))
    assert n3 == [single_edge]
    assert len(list(enumerate_three_graphs(4))) == 3
    assert len(list(enumerate_three_graphs(5))) == 29


@pytest.mark.parametrize("n", [3, 4, 5])
def test_graph_classes_match_orbit_oracle(n):
    got = {tuple(g.sorted_edges()) for g in enumerate_three_graphs(n)}
    assert got == graph_classes_by_orbit(n)


def test_enumerated_graphs_are_canonical():
    for n in (4, 5):
        for g in enumerate_three_graphs(n):
            assert g.vertices == n
            assert canonical_three_graph(g) == g


def test_graph_enumeration_limit():
    with pytest.raises(LimitError):
        next(enumerate_three_graphs(7))


# --- turan-style lower bound ---


def test_bound_on_named_graphs(single_edge, k4m, k4, alternating):
    bound, witness = palette_turan_lower_bound(k4m, 2)
    assert bound == Fraction(1, 4)
    assert witness == alternating

    bound, witness = palette_turan_lower_bound(single_edge, 2)
    assert bound == 0 and witness == palette(2, [])

    edgeless = three_graph(3, [])
    bound, witness = palette_turan_lower_bound(edgeless, 2)
    assert bound == 0 and witness is None

    bound, witness = palette_turan_lower_bound(k4, 2)
    assert bound == Fraction(1, 2)
    assert witness == palette(2, [(0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1)])
    assert admits(k4, witness) is None


def test_bound_is_max_over_non_admitted(k4):
    best = max(
        (density(p) for p in all_two_color_palettes() if admits(k4, p) is None),
        default=Fraction(0),
    )
    assert palette_turan_lower_bound(k4, 2)[0] == best


def test_bound_budget_propagates(k4m):
    with pytest.raises(BudgetExhaustedError):
        palette_turan_lower_bound(k4m, 2, limits=SearchLimits(max_nodes=1))


def test_bound_uses_cache(k4m):
    cache = MemoryCache()
    palette_turan_lower_bound(k4m, 2, cache=cache)
    first = cache.searches
    assert first == 136
    palette_turan_lower_bound(k4m, 2, cache=cache)
    assert cache.searches == first
    assert cache.hits == 136


# --- structure reports ---


def test_structure_report_on_pattern_free(alternating):
    r = verify_k4minus_structure(alternating)
    assert r.pattern_side is None and r.pattern is None and r.witness is None
    assert set(r.left_arcs) == {(0, 1), (1, 0)}
    assert set(r.right_arcs) == {(0, 1), (1, 0)}
    assert r.triple_count == 2
    assert r.codegree_sum == 2
    assert r.half_square_sum == 2
    assert r.cube_quarter == 2
    assert r.density_bounded is True


def test_structure_report_rainbow(rainbow):
    r = verify_k4minus_structure(rainbow)
    assert r.pattern_side is None
    assert r.left_arcs == ((0, 1),)
    assert r.right_arcs == ((2, 1),)
    assert r.triple_count == 1 and r.codegree_sum == 1 and r.half_square_sum == 1
    assert r.density_bounded is True


def test_structure_report_finds_patterns(k4m):
    full = palette(2, itertools.product(range(2), repeat=3))
    r = verify_k4minus_structure(full)
    assert r.pattern_side == "L" and r.pattern == (0, 0, 0)
    assert r.witness is not None
    assert verify_admission(k4m, full, r.witness)

    r = verify_k4minus_structure(palette(2, [(0, 0, 1)]))
    assert r.pattern_side == "L"
    assert r.completions == (1, 1, 1)
    assert verify_admission(k4m, palette(2, [(0, 0, 1)]), r.witness)

    r = verify_k4minus_structure(palette(2, [(1, 0, 0)]))
    assert r.pattern_side == "R"
    assert r.witness.order == (3, 2, 1, 0)
    assert verify_admission(k4m, palette(2, [(1, 0, 0)]), r.witness)


def test_structure_sweep_two_colors(k4m, alternating):
    """Pattern implies admission; no pattern caps the triple count."""
    non_admitted = []
    for p in all_two_color_palettes():
        r = verify_k4minus_structure(p)
        admitted = admits(k4m, p) is not None
        if r.pattern_side is not None:
            assert admitted
            assert verify_admission(k4m, p, r.witness)
        else:
            assert r.density_bounded is True
            assert len(p.triples) <= 2
        if not admitted:
            non_admitted.append(p)
    assert len(non_admitted) == 4
    assert set(non_admitted) == {
        palette(2, []),
        palette(2, [(0, 1, 0)]),
        palette(2, [(1, 0, 1)]),
        alternating,
    }
    # the two singletons are color-isomorphic, leaving three classes
    assert len({canonical_palette(p) for p in non_admitted}) == 3
    # at two colors the converse happens to hold as well
    for p in all_two_color_palettes():
        if verify_k4minus_structure(p).pattern_side is None:
            assert admits(k4m, p) is None


# --- separating-graph search ---


def test_separation_blocked_by_direct_map(alternating):
    r = search_separating_graph(alternating, alternating)
    assert r.status == "none-by-theorem"
    assert r.theorem_target == "target"
    assert verify_subpalette(alternating, alternating, dict(r.theorem_map))
    assert r.graph is None


def test_separation_blocked_by_direct_map_across_reversal(rainbow):
    # a single-triple palette maps directly into any nonempty target
    r = search_separating_graph(rainbow, reverse(rainbow))
    assert r.status == "none-by-theorem"
    assert r.theorem_target == "target"
    assert dict(r.theorem_map) == {0: 2, 1: 1, 2: 0}


def test_separation_blocked_by_reversed_map():
    p = palette(2, [(0, 0, 1)])
    q = palette(2, [(1, 0, 0)])
    assert subpalette(p, q) is None
    r = search_separating_graph(p, q)
    assert r.status == "none-by-theorem"
    assert r.theorem_target == "reversed-target"
    assert verify_subpalette(p, reverse(q), dict(r.theorem_map))


def test_separation_found(alternating, rainbow):
    r = search_separating_graph(alternating, rainbow, max_vertices=5)
    assert r.status == "found"
    assert r.examined == 31
    assert r.graph == three_graph(
        5, [(0, 1, 2), (0, 1, 3), (0, 2, 4), (1, 3, 4), (2, 3, 4)]
    )
    assert admits(r.graph, alternating) is not None
    assert admits(r.graph, rainbow) is None


def test_separation_resume(alternating, rainbow):
    r = search_separating_graph(alternating, rainbow, max_vertices=5, resume_examined=30)
    assert r.status == "found" and r.examined == 31
    skipped = search_separating_graph(alternating, rainbow, max_vertices=5, resume_examined=31)
    assert skipped.status == "exhausted"


def test_separation_exhausts():
    p5 = palette(5, [(0, 3, 1), (1, 4, 2)])
    chain2 = make_chain_palette(2)
    assert subpalette(p5, chain2) is None
    assert subpalette(p5, reverse(chain2)) is None
    r = search_separating_graph(p5, chain2, max_vertices=4)
    assert r.status == "exhausted" and r.examined == 4
    r = search_separating_graph(p5, chain2, max_vertices=5)
    assert r.status == "exhausted" and r.examined == 33
    assert r.skipped_budget == 0


def test_separation_budget_counts_skips(alternating, rainbow):
    r = search_separating_graph(
        alternating, rainbow, max_vertices=4, limits=SearchLimits(max_nodes=1)
    )
    assert r.status == "exhausted"
    assert r.skipped_budget > 0


def test_subpalette_transfers_admission():
    """When a color map lands one palette in another, admission follows it."""
    rnd = SplitMix64(55)
    transfers = 0
    while transfers < 40:
        p = random_palette(rnd)
        q = random_palette(rnd)
        found = subpalette(p, q)
        if found is None:
            continue
        f = random_three_graph(rnd, max_vertices=5)
        if admits(f, p) is None:
            continue
        assert admits(f, q) is not None, (f, p, q, found)
        transfers += 1
