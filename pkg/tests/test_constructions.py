"""Palette families, seeded samplers, density audits, walks, and the
linear-hypergraph pipeline."""
import itertools
import math
from fractions import Fraction

import pytest

from palettelab.core import palette, three_graph
from palettelab.metrics import density
from palettelab.admission import admits, verify_admission
from palettelab.constructions import (
    audit_dot_density,
    audit_vertexpair_density,
    build_fk,
    build_linear_monotone,
    chain_coloring_witness,
    check_linear,
    complete_three_graph,
    find_full_coverage_linear,
    linear_k_graph,
    longest_walk,
    make_alternating_palette,
    make_chain_palette,
    make_rainbow,
    monotone_coverage,
    sample_hypergraph,
    walk_chain,
    walk_level_sets,
)
from palettelab.rng import SplitMix64


# --- palette families ---


def test_chain_palette_values():
    assert make_chain_palette(2).triples == frozenset({(0, 0, 1), (0, 1, 1)})
    for k in range(2, 9):
        assert density(make_chain_palette(k)) == Fraction(1, 2) - Fraction(1, 2 * k)


def test_named_palettes(alternating, rainbow):
    assert alternating.triples == frozenset({(0, 1, 0), (1, 0, 1)})
    assert rainbow == palette(3, [(0, 1, 2)])


# --- seeded sampler ---


def test_sampler_extremes():
    full = palette(2, itertools.product(range(2), repeat=3))
    assert sample_hypergraph(full, 8, 5).edges == complete_three_graph(8).edges
    assert sample_hypergraph(palette(2, []), 8, 5).edges == frozenset()


def test_sampler_determinism_and_rate(alternating):
    h = sample_hypergraph(alternating, 60, 12345)
    assert sample_hypergraph(alternating, 60, 12345).edges == h.edges
    assert sample_hypergraph(alternating, 60, 12346).edges != h.edges
    rate = len(h.edges) / math.comb(60, 3)
    sigma = math.sqrt(0.25 * 0.75 / math.comb(60, 3))
    assert abs(rate - 0.25) < 3 * sigma + 0.01


# --- subset-density audit ---


def test_dot_audit_examples():
    r = audit_dot_density(complete_three_graph(8), Fraction(1), 0.0)
    assert r.passed and r.slack == 0
    r = audit_dot_density(three_graph(4, [(0, 1, 2)]), Fraction(1), 0.0)
    assert not r.passed and r.slack == -3 and r.worst_set == (0, 1, 2, 3)
    r = audit_dot_density(three_graph(6, []), Fraction(0), 0.0)
    assert r.passed and r.slack == 0


def test_dot_audit_matches_brute_force():
    rnd = SplitMix64(99)
    for _ in range(25):
        n = 4 + rnd.below(5)
        edges = [e for e in itertools.combinations(range(n), 3) if rnd.below(3) == 0]
        h = three_graph(n, edges)
        d = Fraction(1 + rnd.below(3), 2 + rnd.below(4))
        es = [frozenset(e) for e in edges]
        best = min(
            sum(1 for e in es if e <= frozenset(s)) - d * math.comb(sz, 3)
            for sz in range(n + 1)
            for s in itertools.combinations(range(n), sz)
        )
        r = audit_dot_density(h, d, 0.01)
        assert r.slack == min(best, Fraction(0))


def test_vertexpair_audit_examples():
    # taking every vertex and every pair drives the slack to -n(n-1)
    r = audit_vertexpair_density(complete_three_graph(7), Fraction(1), 0.0)
    assert not r.passed and r.slack == -42
    assert audit_vertexpair_density(complete_three_graph(7), Fraction(1), 0.2).passed
    r = audit_vertexpair_density(three_graph(5, []), Fraction(1, 2), 0.0)
    assert not r.passed and r.slack == -Fraction(1, 2) * 5 * 10


def test_vertexpair_audit_matches_brute_force():
    rnd = SplitMix64(98)
    for _ in range(15):
        n = 4 + rnd.below(3)
        edges = [e for e in itertools.combinations(range(n), 3) if rnd.below(3) == 0]
        h = three_graph(n, edges)
        d = Fraction(1 + rnd.below(3), 2 + rnd.below(4))
        best = Fraction(0)
        for sz in range(n + 1):
            for s in itertools.combinations(range(n), sz):
                ss = set(s)
                val = Fraction(0)
                for a, b in itertools.combinations(range(n), 2):
                    deg = sum(
                        1
                        for e in edges
                        if a in e and b in e and (set(e) - {a, b}) <= ss
                    )
                    contrib = deg - d * sz
                    if contrib < 0:
                        val += contrib
                best = min(best, val)
        r = audit_vertexpair_density(h, d, 0.01)
        assert r.slack == best


def test_sampled_audit_agrees(alternating):
    h = sample_hypergraph(alternating, 16, 4)
    exact = audit_dot_density(h, Fraction(1, 4), 0.05)
    sampled = audit_dot_density(
        h, Fraction(1, 4), 0.05, mode="sampled", samples=300, seed=6
    )
    assert sampled.mode == "sampled" and sampled.samples == 300
    assert exact.slack <= sampled.slack  # a sample can only miss the minimum


# --- walks ---


def test_walk_lengths(alternating, rainbow):
    for k in range(1, 7):
        rep = longest_walk(make_chain_palette(k))
        assert not rep.unbounded and rep.length == k - 1
    rep = longest_walk(alternating)
    assert rep.unbounded and len(rep.steps) == 1
    rep = longest_walk(rainbow)
    assert rep.length == 1 and rep.steps == ((0, 1, 2),)
    assert longest_walk(palette(3, [])).length == 0


def test_walk_level_sets(alternating):
    assert walk_level_sets(make_chain_palette(4)) == [[0], [1], [2], [3]]
    assert walk_level_sets(alternating) is None


def test_walk_chain(alternating):
    assert walk_chain(alternating, 5) == [(0, 1, 0)] * 5
    assert walk_chain(make_chain_palette(3), 2) == [(0, 0, 1), (1, 0, 2)]
    assert walk_chain(make_chain_palette(3), 3) is None


def test_level_sets_bound_triple_count():
    # bounded walks force the triples through cross-level pairs
    rnd = SplitMix64(97)
    checked = 0
    while checked < 150:
        c = 2 + rnd.below(3)
        trs = [t for t in itertools.product(range(c), repeat=3) if rnd.below(4) == 0]
        p = palette(c, trs)
        if longest_walk(p).unbounded:
            continue
        sizes = [len(g) for g in walk_level_sets(p)]
        cross = sum(
            sizes[i] * sizes[j]
            for i in range(len(sizes))
            for j in range(i + 1, len(sizes))
        )
        assert len(p.triples) <= c * cross or not p.triples
        checked += 1


# --- linear hypergraphs and their triple graphs ---


def test_linear_builder():
    g, rep = build_linear_monotone(2, 40, 3)
    assert check_linear(g) is None
    assert rep.sampled >= len(g.edges)
    assert rep.removed == rep.sampled - len(g.edges)
    g0, rep0 = build_linear_monotone(2, 3, 1)
    assert not g0.edges and rep0.sampled == 0


def test_check_linear_flags_shared_pairs():
    bad = linear_k_graph(4, 6, [(0, 1, 2, 3), (0, 1, 4, 5)])
    assert check_linear(bad) == ((0, 1, 2, 3), (0, 1, 4, 5))


def test_triple_graph_of_one_hyperedge():
    single = linear_k_graph(4, 4, [(0, 1, 2, 3)])
    fk = build_fk(single)
    assert fk.edges == frozenset({(0, 1, 2), (1, 2, 3)})
    two = linear_k_graph(4, 8, [(0, 1, 2, 3), (4, 5, 6, 7)])
    assert len(build_fk(two).edges) == 4
    with pytest.raises(ValueError):
        build_fk(linear_k_graph(4, 6, [(0, 1, 2, 3), (0, 1, 4, 5)]))


def test_chain_coloring_witness(alternating):
    single = linear_k_graph(4, 4, [(0, 1, 2, 3)])
    fk = build_fk(single)
    w = chain_coloring_witness(fk, single, alternating)
    assert w is not None and verify_admission(fk, alternating, w)
    assert chain_coloring_witness(fk, single, palette(2, [])) is None
    # a two-color chain has walks of length one, too short for the rungs
    assert chain_coloring_witness(fk, single, make_chain_palette(2)) is None
    w3 = chain_coloring_witness(fk, single, make_chain_palette(3))
    assert w3 is not None and verify_admission(fk, make_chain_palette(3), w3)


def test_chain_coloring_witness_at_scale(alternating):
    g, _ = build_linear_monotone(2, 30, 11)
    assert g.edges
    fk = build_fk(g)
    w = chain_coloring_witness(fk, g, alternating)
    assert w is not None and verify_admission(fk, alternating, w)


# --- monotone coverage ---


def brute_coverage(h):
    edges = h.sorted_edges()
    covered = 0
    first_violating = None
    for ranks in itertools.permutations(range(h.vertices)):
        mono = False
        for e in edges:
            seq = [ranks[v] for v in e]
            ups = all(a < b for a, b in zip(seq, seq[1:]))
            downs = all(a > b for a, b in zip(seq, seq[1:]))
            if ups or downs:
                mono = True
                break
        if mono:
            covered += 1
        elif first_violating is None:
            first_violating = ranks
    return Fraction(covered, math.factorial(h.vertices)), first_violating


def test_coverage_examples():
    r = monotone_coverage(linear_k_graph(4, 4, [(0, 1, 2, 3)]))
    assert r.fraction == Fraction(2, 24) and r.violating is not None
    r = monotone_coverage(linear_k_graph(4, 5, []))
    assert r.fraction == 0 and r.violating == (0, 1, 2, 3, 4)


def test_coverage_matches_brute_force():
    rnd = SplitMix64(96)
    for _ in range(12):
        n = 4 + rnd.below(4)
        target = 1 + rnd.below(3)
        es = set()
        guard = 0
        while len(es) < target and guard < 50:
            guard += 1
            cand = tuple(sorted(rnd.permutation(n)[:4]))
            if all(len(set(cand) & set(e)) <= 1 for e in es):
                es.add(cand)
        h = linear_k_graph(4, n, es)
        want, want_violating = brute_coverage(h)
        got = monotone_coverage(h)
        assert got.fraction == want
        assert got.violating == want_violating


def test_coverage_sampled_mode():
    h = linear_k_graph(4, 7, [(0, 1, 2, 3), (3, 4, 5, 6)])
    exact = float(monotone_coverage(h).fraction)
    sampled = monotone_coverage(h, mode="sampled", samples=4000, seed=9)
    assert sampled.samples == 4000
    band = 3 * math.sqrt(exact * (1 - exact) / 4000) + 0.01
    assert abs(float(sampled.fraction) - exact) < band


def test_full_coverage_search_reports_reasons():
    found, reasons = find_full_coverage_linear(2, 10)
    assert found is None
    assert len(reasons) == 7
    assert all(isinstance(r, str) and r for r in reasons)
