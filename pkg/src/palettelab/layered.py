"""Layered structure recognition and the greedy admission procedure.

A vertex order and positive-integer pair labels turn each edge into a
label triple; the triple set decides everything.  Min-degenerate sets
(distinct entries, shared values minimal somewhere) admit every palette
of positive minimum degree through a greedy pass, so a min-layered
graph places no constraint at all on such palettes.  Max-degenerate
sets mirror the condition at the maximum.  Free-group labellings are
the infinite-alphabet view of the same structure: edge labels of the
form (x, xa, xb) compress to integers by word length.

The layered searches enumerate vertex orders and label order-patterns
exhaustively, so a none verdict is a proof at the given caps, while a
blown node budget raises instead of guessing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    AdmissionWitness,
    BudgetExhaustedError,
    FreeGroupWord,
    LayeringWitness,
    LimitError,
    Pair,
    Palette,
    ThreeGraph,
    Triple,
    WitnessError,
    admission_witness,
    layering_witness,
    pair,
    validate,
)
from .metrics import min_degree

LAYERED_VERTEX_LIMIT = 8


@dataclass(frozen=True)
class LayeredLimits:
    max_vertices: int = LAYERED_VERTEX_LIMIT
    max_nodes: int | None = None


# ---------------------------------------------------------------------------
# degeneracy predicates

def is_min_degenerate(triples) -> tuple[bool, tuple | None]:
    """True iff every triple has three distinct entries and any value
    shared by two distinct triples is the minimum of at least one.

    On failure the second component is (value, triple, other_triple);
    an internal repeat lists the same triple twice.
    """
    ts = sorted(frozenset(tuple(t) for t in triples))
    for t in ts:
        if len(set(t)) != 3:
            dup = next(v for v in t if t.count(v) > 1)
            return False, (dup, t, t)
    for i, t1 in enumerate(ts):
        for t2 in ts[i + 1:]:
            shared = set(t1) & set(t2)
            for v in sorted(shared):
                if v != min(t1) and v != min(t2):
                    return False, (v, t1, t2)
    return True, None


def is_max_degenerate(triples) -> tuple[bool, tuple | None]:
    """True iff every triple has a unique maximal entry and distinct
    triples have distinct maxima."""
    ts = sorted(frozenset(tuple(t) for t in triples))
    for t in ts:
        if t.count(max(t)) > 1:
            return False, (max(t), t, t)
    for i, t1 in enumerate(ts):
        for t2 in ts[i + 1:]:
            if max(t1) == max(t2):
                return False, (max(t1), t1, t2)
    return True, None


def induced_triples(f: ThreeGraph, order, labels) -> frozenset[Triple]:
    """Label triples of the edges under the given order, as a set."""
    posn = {v: i for i, v in enumerate(order)}
    lab = dict(labels)
    out = set()
    for e in f.sorted_edges():
        u, v, w = sorted(e, key=posn.__getitem__)
        out.add((lab[pair(u, v)], lab[pair(u, w)], lab[pair(v, w)]))
    return frozenset(out)


# ---------------------------------------------------------------------------
# layered search

def _layered_search(f: ThreeGraph, limits: LayeredLimits, degenerate) -> LayeringWitness | None:
    """Exhaust vertex orders and label order-patterns.

    Labels are searched as order-patterns: each new pair either reuses
    an existing value or lands in a gap, tracked with exact rationals
    and compressed to 1..m at the end.  Any integer labeling collapses
    to such a pattern with at most one distinct value per pair, so the
    search is complete despite the bounded alphabet.
    """
    errs = validate(f)
    if errs:
        raise ValueError("; ".join(errs))
    n = f.vertices
    if n > limits.max_vertices:
        raise LimitError(
            f"layered search limited to {limits.max_vertices} vertices, got {n}"
        )
    edges = f.sorted_edges()
    if not edges:
        return layering_witness(range(n), {}, [])
    cap = min(3 * len(edges), len(f.covered_pairs()))
    nodes = 0
    covered = sorted({v for e in edges for v in e})
    isolated = [v for v in range(n) if v not in set(covered)]
    seen_profiles: set[tuple[Triple, ...]] = set()

    for perm in itertools.permutations(covered):
        posn = {v: i for i, v in enumerate(perm)}
        # the label search depends only on edges in position space, so
        # orders inducing the same position edges are interchangeable
        oriented = sorted(tuple(sorted(posn[v] for v in e)) for e in edges)
        profile = tuple(oriented)
        if profile in seen_profiles:
            continue
        seen_profiles.add(profile)
        order = perm + tuple(isolated)
        # pair assignment sequence: walk edges, then their pairs
        seq: list[Pair] = []
        seen_pairs: dict[Pair, int] = {}
        edge_slots = []
        for i, j, k in oriented:
            slots = []
            for pp in ((i, j), (i, k), (j, k)):
                if pp not in seen_pairs:
                    seen_pairs[pp] = len(seq)
                    seq.append(pp)
                slots.append(seen_pairs[pp])
            edge_slots.append(tuple(slots))
        completes_at: dict[int, list[int]] = {}
        for ei, slots in enumerate(edge_slots):
            completes_at.setdefault(max(slots), []).append(ei)

        values: list[Fraction] = [Fraction(0)] * len(seq)
        done_triples: list[Triple] = []

        def admissible(depth: int) -> bool:
            for ei in completes_at.get(depth, ()):
                a, b, c = edge_slots[ei]
                t = (values[a], values[b], values[c])
                if t in done_triples:
                    continue  # set collapse: duplicates are one element
                ok, _ = degenerate(done_triples + [t])
                if not ok:
                    return False
                done_triples.append(t)
            return True

        def undo(depth: int, before: int) -> None:
            del done_triples[before:]

        def assign(depth: int, distinct: list[Fraction]) -> LayeringWitness | None:
            nonlocal nodes
            if depth == len(seq):
                ranked = {v: i + 1 for i, v in enumerate(sorted(set(distinct)))}
                labels = {
                    pair(order[i], order[j]): ranked[values[s]]
                    for s, (i, j) in enumerate(seq)
                }
                return layering_witness(
                    order, labels, induced_triples(f, order, labels)
                )
            nodes += 1
            if limits.max_nodes is not None and nodes > limits.max_nodes:
                raise BudgetExhaustedError(f"layered search exceeded {limits.max_nodes} nodes")
            slots = sorted(set(distinct))
            choices: list[Fraction] = []
            if len(slots) < cap:
                if slots:
                    choices.append(slots[0] - 1)
                else:
                    choices.append(Fraction(1))
            for i, s in enumerate(slots):
                choices.append(s)
                if len(slots) < cap:
                    if i + 1 < len(slots):
                        choices.append((s + slots[i + 1]) / 2)
                    else:
                        choices.append(s + 1)
            for value in choices:
                values[depth] = value
                before = len(done_triples)
                if admissible(depth):
                    found = assign(depth + 1, distinct + [value])
                    if found is not None:
                        return found
                undo(depth, before)
            return None

        found = assign(0, [])
        if found is not None:
            return found
    return None


def is_min_layered(f: ThreeGraph, limits: LayeredLimits | None = None) -> LayeringWitness | None:
    """Search for an order and labeling whose induced triples are
    min-degenerate.  None is exhaustive at the caps."""
    return _layered_search(f, limits or LayeredLimits(), is_min_degenerate)


def is_max_layered(f: ThreeGraph, limits: LayeredLimits | None = None) -> LayeringWitness | None:
    return _layered_search(f, limits or LayeredLimits(), is_max_degenerate)


# ---------------------------------------------------------------------------
# free group words

def fg_reduce(letters) -> FreeGroupWord:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[str] = []
    for ch in letters:
        if stack and stack[-1] == ch.swapcase():
            stack.pop()
        else:
            stack.append(ch)
    return FreeGroupWord(tuple(stack))


def fg_word(text: str) -> FreeGroupWord:
    """Parse a string like 'abA' into a reduced word."""
    return fg_reduce(text)


def fg_multiply(u: FreeGroupWord, v: FreeGroupWord) -> FreeGroupWord:
    return fg_reduce(u.letters + v.letters)


def fg_inverse(u: FreeGroupWord) -> FreeGroupWord:
    return FreeGroupWord(tuple(ch.swapcase() for ch in reversed(u.letters)))


_FG_A = FreeGroupWord(("a",))
_FG_B = FreeGroupWord(("b",))


def verify_fg_labelling(f: ThreeGraph, order, psi) -> bool:
    """Check that every edge u, v, w (in order position) satisfies
    psi(uw) = psi(uv) * a and psi(vw) = psi(uv) * b."""
    errs = validate(f)
    if errs:
        raise ValueError("; ".join(errs))
    posn = {v: i for i, v in enumerate(order)}
    psi = dict(psi)
    for e in f.sorted_edges():
        u, v, w = sorted(e, key=posn.__getitem__)
        for pr in (pair(u, v), pair(u, w), pair(v, w)):
            if pr not in psi:
                raise WitnessError(f"pair {pr} has no word")
        x = psi[pair(u, v)]
        if psi[pair(u, w)] != fg_multiply(x, _FG_A):
            return False
        if psi[pair(v, w)] != fg_multiply(x, _FG_B):
            return False
    return True


def fg_labelling_to_layering(f: ThreeGraph, order, psi) -> LayeringWitness:
    """Compress a verified word labelling to integer labels.

    Words rank by (length, letters); shorter words get smaller labels,
    which is what makes the induced triples min-degenerate.
    """
    if not verify_fg_labelling(f, order, psi):
        raise WitnessError("word labelling does not satisfy the edge relations")
    psi = dict(psi)
    ranked = {
        w: i + 1
        for i, w in enumerate(
            sorted(set(psi.values()), key=lambda w: (len(w.letters), w.letters))
        )
    }
    labels = {pr: ranked[w] for pr, w in psi.items()}
    return layering_witness(order, labels, induced_triples(f, order, labels))


# ---------------------------------------------------------------------------
# greedy admission

def greedy_admission(witness: LayeringWitness, p: Palette) -> AdmissionWitness:
    """Color the labels of a min-degenerate witness greedily.

    Triples are processed by ascending (minimum, triple).  The minimum
    label keeps its color (default 0); the other two labels are always
    fresh, and take the lexicographically least completing triple with
    the minimum's color at the minimum's position.
    """
    errs = validate(p)
    if errs:
        raise ValueError("; ".join(errs))
    ok, violation = is_min_degenerate(witness.induced)
    if not ok:
        raise ValueError(f"witness is not min-degenerate: shared value {violation[0]}")
    if min_degree(p) == 0:
        raise ValueError("positive minimum degree required")
    ordered = p.sorted_triples()
    psi: dict[int, int] = {}
    for t in sorted(witness.induced, key=lambda t: (min(t), t)):
        pos = t.index(min(t))
        anchor = psi.setdefault(t[pos], 0)
        # positive minimum degree guarantees a completion at every slot
        completion = next(c for c in ordered if c[pos] == anchor)
        for i in range(3):
            if i == pos:
                continue
            if t[i] in psi:  # impossible for min-degenerate input
                raise WitnessError(f"label {t[i]} colored before its turn")
            psi[t[i]] = completion[i]
    coloring = {
        pr: psi[lab] for pr, lab in witness.labels if lab in psi
    }
    return admission_witness(witness.order, coloring)
