"""Exact palette statistics and palette-to-palette relations."""
from __future__ import annotations

import itertools
from fractions import Fraction

from .core import LimitError, Palette, Triple, validate

SUBPALETTE_CAP = 10**8


def density(p: Palette) -> Fraction:
    """|triples| / colors^3."""
    return Fraction(len(p.triples), p.colors**3)


def min_degree(p: Palette) -> Fraction:
    """Minimum over colors and the three positions of the number of
    ordered pairs completing the color at that position, over colors^2."""
    counts = [[0] * p.colors for _ in range(3)]
    for t in p.triples:
        for pos in range(3):
            counts[pos][t[pos]] += 1
    worst = min(min(row) for row in counts)
    return Fraction(worst, p.colors**2)


def min_codegree(p: Palette) -> Fraction:
    """Minimum over ordered color pairs (a, b) and the three positional
    completion sets {c: (a,b,c)}, {c: (a,c,b)}, {c: (c,a,b)} of the set
    size over colors."""
    counts: dict[tuple[int, int, int], int] = {}
    for x, y, z in p.triples:
        for slot, key in enumerate(((x, y), (x, z), (y, z))):
            k = (slot, *key)
            counts[k] = counts.get(k, 0) + 1
    worst = p.colors
    for slot in range(3):
        for a in range(p.colors):
            for b in range(p.colors):
                worst = min(worst, counts.get((slot, a, b), 0))
    return Fraction(worst, p.colors)


def reverse(p: Palette) -> Palette:
    """Reverse every triple: (x, y, z) becomes (z, y, x)."""
    return Palette(p.colors, frozenset((z, y, x) for x, y, z in p.triples))


def _occupied_positions(triples: frozenset[Triple]) -> dict[int, set[int]]:
    out: dict[int, set[int]] = {}
    for t in triples:
        for pos, x in enumerate(t):
            out.setdefault(x, set()).add(pos)
    return out


class _TripleIndex:
    """Membership tables for one triple set keyed by assigned positions."""

    def __init__(self, triples: frozenset[Triple]) -> None:
        self.full = triples
        self.by: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
        for positions in ((0,), (1,), (2,), (0, 1), (0, 2), (1, 2)):
            table = self.by.setdefault(positions, set())
            for t in triples:
                table.add(tuple(t[i] for i in positions))

    def compatible(self, t: tuple[int | None, int | None, int | None]) -> bool:
        positions = tuple(i for i in range(3) if t[i] is not None)
        if not positions:
            return bool(self.full)
        if len(positions) == 3:
            return t in self.full  # type: ignore[comparison-overlap]
        return tuple(t[i] for i in positions) in self.by[positions]


def subpalette(p: Palette, q: Palette, cap: int = SUBPALETTE_CAP) -> dict[int, int] | None:
    """Search for a color map f with every triple of p landing, entrywise,
    in the triples of q.  Returns one witnessing map or None.

    Backtracking assigns the most-constrained colors first with forward
    checking against q's positional membership tables.  The estimated
    search size after unary position propagation must stay within cap.
    """
    for pal in (p, q):
        errs = validate(pal)
        if errs:
            raise ValueError("; ".join(errs))
    occupied = _occupied_positions(p.triples)
    if p.triples and not q.triples:
        return None
    proj = [set() for _ in range(3)]
    for t in q.triples:
        for pos in range(3):
            proj[pos].add(t[pos])
    domains: dict[int, list[int]] = {}
    for x, positions in occupied.items():
        dom = set(range(q.colors))
        for pos in positions:
            dom &= proj[pos]
        if not dom:
            return None
        domains[x] = sorted(dom)
    size = 1
    for dom in domains.values():
        size *= len(dom)
        if size > cap:
            raise LimitError(f"subpalette search size exceeds cap {cap}")

    # most-constrained first: high occurrence count, then small domain
    occurrence = {x: 0 for x in domains}
    for t in p.triples:
        for x in t:
            occurrence[x] += 1
    variables = sorted(domains, key=lambda x: (-occurrence[x], len(domains[x]), x))
    index = _TripleIndex(q.triples)
    constraints = sorted(p.triples)
    assignment: dict[int, int] = {}

    def consistent() -> bool:
        for t in constraints:
            mapped = tuple(assignment.get(x) for x in t)
            if not index.compatible(mapped):  # type: ignore[arg-type]
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(variables):
            return True
        x = variables[i]
        for value in domains[x]:
            assignment[x] = value
            if consistent() and extend(i + 1):
                return True
            del assignment[x]
        return False

    if not extend(0):
        return None
    # colors absent from every triple are unconstrained; map them to 0
    return {x: assignment.get(x, 0) for x in range(p.colors)}


def verify_subpalette(p: Palette, q: Palette, mapping: dict[int, int]) -> bool:
    if set(mapping) != set(range(p.colors)):
        return False
    if any(not 0 <= v < q.colors for v in mapping.values()):
        return False
    return all((mapping[x], mapping[y], mapping[z]) in q.triples for x, y, z in p.triples)
