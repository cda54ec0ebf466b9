"""Degeneracy predicates, layering searches, free-group labels, and the
greedy coloring they support."""
import itertools

import pytest

from palettelab.core import BudgetExhaustedError, WitnessError, palette, three_graph
from palettelab.metrics import min_degree
from palettelab.admission import verify_admission
from palettelab.layered import (
    LayeredLimits,
    fg_inverse,
    fg_labelling_to_layering,
    fg_multiply,
    fg_reduce,
    fg_word,
    greedy_admission,
    induced_triples,
    is_max_degenerate,
    is_max_layered,
    is_min_degenerate,
    is_min_layered,
    verify_fg_labelling,
)
from palettelab.rng import SplitMix64

from oracles import naive_layered, random_palette


def test_degeneracy_predicates():
    assert is_min_degenerate([(1, 2, 3)]) == (True, None)
    ok, violation = is_min_degenerate([(1, 4, 2), (3, 4, 5)])
    assert not ok and violation[0] == 4
    assert is_min_degenerate([(1, 2, 3), (2, 4, 5)])[0]
    ok, violation = is_min_degenerate([(1, 2, 2)])
    assert not ok and violation[1] == violation[2]

    assert is_max_degenerate([(1, 2, 3)])[0]
    assert not is_max_degenerate([(1, 3, 3)])[0]
    ok, violation = is_max_degenerate([(1, 2, 5), (3, 4, 5)])
    assert not ok and violation[0] == 5


def test_degeneracy_collapses_duplicates():
    assert is_min_degenerate([(1, 2, 3), (1, 2, 3)])[0]
    assert is_max_degenerate([(2, 1, 3), (2, 1, 3)])[0]


def test_layered_named_graphs(single_edge, tight_path, k4):
    for f in (single_edge, tight_path):
        w = is_min_layered(f)
        assert w is not None
        assert is_min_degenerate(w.induced)[0]
        assert induced_triples(f, w.order, w.label_map()) == w.induced
        w = is_max_layered(f)
        assert w is not None
        assert is_max_degenerate(w.induced)[0]
    assert is_min_layered(k4) is None


def test_layered_budget(k4):
    with pytest.raises(BudgetExhaustedError):
        is_min_layered(k4, LayeredLimits(max_nodes=5))


def test_layered_matches_oracle():
    rnd = SplitMix64(2024)
    for _ in range(30):
        n = 3 + rnd.below(2)
        edges = [e for e in itertools.combinations(range(n), 3) if rnd.below(2) == 0]
        f = three_graph(n, edges)
        for predicate, engine in (
            (is_min_degenerate, is_min_layered),
            (is_max_degenerate, is_max_layered),
        ):
            want = naive_layered(f, predicate)
            got = engine(f)
            assert (got is not None) == want, (f, predicate.__name__)
            if got is not None:
                assert predicate(got.induced)[0]


def test_fg_arithmetic():
    assert fg_reduce("aA").letters == ()
    assert str(fg_multiply(fg_word("ab"), fg_word("Ba"))) == "aa"
    assert str(fg_inverse(fg_word("abA"))) == "aBA"


def test_fg_laws():
    rnd = SplitMix64(77)
    words = [
        fg_reduce("".join("abAB"[rnd.below(4)] for _ in range(rnd.below(6))))
        for _ in range(60)
    ]
    empty = fg_word("")
    for u in words:
        assert fg_multiply(u, fg_inverse(u)) == empty
        assert fg_multiply(fg_inverse(u), u) == empty
        assert fg_multiply(u, empty) == u
    for u in words[:12]:
        for v in words[:12]:
            for x in words[:6]:
                assert fg_multiply(fg_multiply(u, v), x) == fg_multiply(u, fg_multiply(v, x))


def test_fg_labelling(single_edge, tight_path):
    empty, a, b = fg_word(""), fg_word("a"), fg_word("b")
    assert verify_fg_labelling(single_edge, (0, 1, 2), {(0, 1): empty, (0, 2): a, (1, 2): b})
    assert not verify_fg_labelling(single_edge, (0, 1, 2), {(0, 1): empty, (0, 2): b, (1, 2): a})
    psi = {
        (0, 1): empty,
        (0, 2): a,
        (1, 2): b,
        (1, 3): fg_word("ba"),
        (2, 3): fg_word("bb"),
    }
    assert verify_fg_labelling(tight_path, (0, 1, 2, 3), psi)
    with pytest.raises(WitnessError):
        verify_fg_labelling(tight_path, (0, 1, 2, 3), {(0, 1): empty})


def test_fg_labelling_to_layering(tight_path):
    empty, a, b = fg_word(""), fg_word("a"), fg_word("b")
    psi = {
        (0, 1): empty,
        (0, 2): a,
        (1, 2): b,
        (1, 3): fg_word("ba"),
        (2, 3): fg_word("bb"),
    }
    w = fg_labelling_to_layering(tight_path, (0, 1, 2, 3), psi)
    assert is_min_degenerate(w.induced)[0]
    assert induced_triples(tight_path, w.order, w.label_map()) == w.induced


def test_greedy_admission(single_edge, tight_path, alternating, rainbow):
    one = palette(1, [(0, 0, 0)])
    w = is_min_layered(single_edge)
    aw = greedy_admission(w, one)
    assert verify_admission(single_edge, one, aw)
    assert all(c == 0 for _, c in aw.coloring)

    wp = is_min_layered(tight_path)
    aw = greedy_admission(wp, alternating)
    assert verify_admission(tight_path, alternating, aw)

    with pytest.raises(ValueError, match="minimum degree"):
        greedy_admission(wp, rainbow)


def test_greedy_admission_randomized():
    rnd = SplitMix64(88)
    graphs = [
        three_graph(3, [(0, 1, 2)]),
        three_graph(4, [(0, 1, 2), (1, 2, 3)]),
        three_graph(5, [(0, 1, 2), (2, 3, 4)]),
        three_graph(5, [(0, 1, 2), (1, 2, 3), (2, 3, 4)]),
    ]
    pool = []
    guard = 0
    while len(pool) < 12 and guard < 4000:
        guard += 1
        p = random_palette(rnd)
        if min_degree(p) > 0:
            pool.append(p)
    assert len(pool) == 12
    verified = 0
    for f in graphs:
        w = is_min_layered(f)
        if w is None:
            continue
        for p in pool:
            aw = greedy_admission(w, p)
            assert verify_admission(f, p, aw)
            verified += 1
    assert verified >= 36
