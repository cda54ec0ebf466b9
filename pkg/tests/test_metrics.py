"""Density, degree statistics, reversal, and the subpalette relation.

The brute-force checks recompute each statistic straight from its
definition so the packaged implementations are never their own judge.
"""
import itertools
from fractions import Fraction

from palettelab.core import palette
from palettelab.metrics import (
    density,
    min_codegree,
    min_degree,
    reverse,
    subpalette,
    verify_subpalette,
)
from palettelab.constructions import make_chain_palette
from palettelab.rng import SplitMix64

from oracles import all_two_color_palettes, random_palette


FULL2 = palette(2, itertools.product(range(2), repeat=3))


def brute_min_degree(p):
    worst = None
    for pos in range(3):
        for x in range(p.colors):
            n = sum(1 for t in p.triples if t[pos] == x)
            if worst is None or n < worst:
                worst = n
    return Fraction(worst, p.colors ** 2)


def brute_min_codegree(p):
    worst = None
    completions = (
        lambda t: (t[0], t[1]),
        lambda t: (t[0], t[2]),
        lambda t: (t[1], t[2]),
    )
    for slot, key in enumerate(completions):
        for a in range(p.colors):
            for b in range(p.colors):
                n = sum(1 for t in p.triples if key(t) == (a, b))
                if worst is None or n < worst:
                    worst = n
    return Fraction(worst, p.colors)


def test_named_values(alternating, rainbow):
    assert density(alternating) == Fraction(1, 4)
    assert min_degree(alternating) == Fraction(1, 4)
    assert min_codegree(alternating) == 0
    assert density(rainbow) == Fraction(1, 27)
    assert min_degree(rainbow) == 0
    assert density(FULL2) == 1
    assert min_degree(FULL2) == 1
    assert min_codegree(FULL2) == 1
    assert density(palette(3, [])) == 0


def test_statistics_match_definitions():
    rnd = SplitMix64(21)
    for _ in range(80):
        p = random_palette(rnd, max_colors=4)
        assert density(p) == Fraction(len(p.triples), p.colors ** 3)
        assert min_degree(p) == brute_min_degree(p)
        assert min_codegree(p) == brute_min_codegree(p)


def test_reverse_involution_and_invariants(alternating, rainbow):
    assert reverse(alternating) == alternating
    assert reverse(rainbow) == palette(3, [(2, 1, 0)])
    rnd = SplitMix64(22)
    for _ in range(100):
        p = random_palette(rnd, max_colors=4)
        r = reverse(p)
        assert reverse(r) == p
        assert density(r) == density(p)
        assert min_degree(r) == min_degree(p)
        assert min_codegree(r) == min_codegree(p)


def test_subpalette_reflexive():
    rnd = SplitMix64(23)
    for _ in range(40):
        p = random_palette(rnd)
        found = subpalette(p, p)
        assert found is not None
        assert verify_subpalette(p, p, found)


def test_subpalette_examples(alternating, rainbow):
    # one admissible triple maps onto any admissible triple of the target
    assert subpalette(rainbow, reverse(rainbow)) == {0: 2, 1: 1, 2: 0}
    assert subpalette(alternating, FULL2) is not None
    # constant triples have nowhere to go in the alternating palette
    assert subpalette(FULL2, alternating) is None
    for k in range(2, 6):
        found = subpalette(make_chain_palette(k), make_chain_palette(k + 1))
        assert found is not None
        assert verify_subpalette(make_chain_palette(k), make_chain_palette(k + 1), found)


def test_subpalette_into_nonempty_target(rainbow):
    hits = 0
    for p in all_two_color_palettes():
        found = subpalette(rainbow, p)
        assert (found is not None) == bool(p.triples)
        if found is not None:
            assert verify_subpalette(rainbow, p, found)
            hits += 1
    assert hits == 255


def test_subpalette_composes():
    rnd = SplitMix64(24)
    composed = 0
    while composed < 25:
        p = random_palette(rnd)
        q = random_palette(rnd)
        r = random_palette(rnd)
        pq = subpalette(p, q)
        qr = subpalette(q, r)
        if pq is None or qr is None:
            continue
        comp = {x: qr[y] for x, y in pq.items()}
        assert verify_subpalette(p, r, comp)
        composed += 1


def test_verify_subpalette_rejects_bad_maps(alternating, rainbow):
    assert not verify_subpalette(rainbow, reverse(rainbow), {0: 0, 1: 1, 2: 2})
    assert not verify_subpalette(rainbow, rainbow, {0: 0})
    assert not verify_subpalette(alternating, FULL2, {0: 0, 1: 9})
