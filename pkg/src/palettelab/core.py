"""Core objects of the palette calculus.

A palette is a finite set of colors together with a set of ordered
admissible color triples.  A 3-graph is a 3-uniform hypergraph on dense
0-based integer vertices.  A reduced hypergraph carries one vertex class
per unordered index pair and one tripartite constituent per index
triple.  This module owns validation, canonical forms under color or
vertex relabeling, and the JSON wire formats used everywhere else.

Conventions: colors and vertices are dense 0-based integers, triples are
position-sensitive, unordered pairs are keyed smaller-first, and all
objects are immutable after construction.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Triple = tuple[int, int, int]
Pair = tuple[int, int]

ExactRatio = Fraction

# Brute-force relabeling searches stay below these by default.
CANONICAL_COLOR_LIMIT = 8
CANONICAL_VERTEX_LIMIT = 8
ORBIT_VERTEX_LIMIT = 6


class PaletteLabError(Exception):
    """Base class for errors raised by this package."""


class ParseError(PaletteLabError):
    """Malformed serialized input; message carries position info."""


class LimitError(PaletteLabError):
    """An input exceeds a configured size cap."""


class BudgetExhaustedError(PaletteLabError):
    """A bounded search ran out of budget before reaching a verdict.

    Deliberately distinct from a definitive "no witness" result.
    """


class WitnessError(PaletteLabError):
    """A witness object is structurally unusable (not merely invalid)."""


def pair(u: int, v: int) -> Pair:
    if u == v:
        raise ValueError(f"degenerate pair ({u},{v})")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Palette:
    colors: int
    triples: frozenset[Triple]

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples)


def palette(colors: int, triples: Iterable[Iterable[int]]) -> Palette:
    """Build a palette, normalizing triples to tuples. No validation."""
    return Palette(colors, frozenset(tuple(t) for t in triples))


@dataclass(frozen=True)
class ThreeGraph:
    vertices: int
    edges: frozenset[Triple]

    def sorted_edges(self) -> list[Triple]:
        return sorted(self.edges)

    def covered_pairs(self) -> list[Pair]:
        """Vertex pairs contained in at least one edge, sorted."""
        out: set[Pair] = set()
        for e in self.edges:
            a, b, c = e
            out.update(((a, b), (a, c), (b, c)))
        return sorted(out)


def three_graph(vertices: int, edges: Iterable[Iterable[int]]) -> ThreeGraph:
    """Build a 3-graph, sorting each edge ascending. No validation."""
    return ThreeGraph(vertices, frozenset(tuple(sorted(e)) for e in edges))


@dataclass(frozen=True, eq=True)
class ReducedHypergraph:
    """Vertex classes indexed by unordered pairs from [0, index_count),
    plus one tripartite constituent per index triple.

    Constituent edges for index triple a < b < c are stored positionally:
    (vertex in class {a,b}, vertex in class {a,c}, vertex in class {b,c}),
    each coordinate a 0-based offset within its class.
    """
    index_count: int
    class_sizes: tuple[tuple[Pair, int], ...]
    constituents: tuple[tuple[Triple, frozenset[Triple]], ...]

    def class_size(self, a: int, b: int) -> int:
        return dict(self.class_sizes)[pair(a, b)]

    def size_map(self) -> dict[Pair, int]:
        return dict(self.class_sizes)

    def constituent_map(self) -> dict[Triple, frozenset[Triple]]:
        return dict(self.constituents)


def reduced_hypergraph(
    index_count: int,
    class_sizes: Mapping[Pair, int],
    constituents: Mapping[Triple, Iterable[Iterable[int]]],
) -> ReducedHypergraph:
    sizes = tuple(sorted(class_sizes.items()))
    cons = tuple(
        sorted(
            (key, frozenset(tuple(t) for t in edges))
            for key, edges in constituents.items()
        )
    )
    return ReducedHypergraph(index_count, sizes, cons)


@dataclass(frozen=True, eq=True)
class AdmissionWitness:
    """A vertex order plus a pair coloring certifying admission.

    order lists the vertices from least to greatest.  coloring maps
    covered vertex pairs (smaller id first) to colors; pairs covered by
    no edge may be absent, meaning unconstrained.
    """
    order: tuple[int, ...]
    coloring: tuple[tuple[Pair, int], ...]

    def color_map(self) -> dict[Pair, int]:
        return dict(self.coloring)


def admission_witness(order: Iterable[int], coloring: Mapping[Pair, int]) -> AdmissionWitness:
    return AdmissionWitness(tuple(order), tuple(sorted(coloring.items())))


@dataclass(frozen=True, eq=True)
class EmbeddingWitness:
    """An injective index map plus a pair-to-class-vertex map."""
    index_map: tuple[tuple[int, int], ...]
    pair_map: tuple[tuple[Pair, int], ...]

    def indices(self) -> dict[int, int]:
        return dict(self.index_map)

    def pairs(self) -> dict[Pair, int]:
        return dict(self.pair_map)


def embedding_witness(index_map: Mapping[int, int], pair_map: Mapping[Pair, int]) -> EmbeddingWitness:
    return EmbeddingWitness(tuple(sorted(index_map.items())), tuple(sorted(pair_map.items())))


@dataclass(frozen=True, eq=True)
class LayeringWitness:
    """A vertex order plus positive-integer pair labels.

    induced is the set of label triples read off the edges: for an edge
    u, v, w listed in order position, the triple
    (label(uv), label(uw), label(vw)).  Duplicate triples collapse.
    """
    order: tuple[int, ...]
    labels: tuple[tuple[Pair, int], ...]
    induced: frozenset[Triple]

    def label_map(self) -> dict[Pair, int]:
        return dict(self.labels)


def layering_witness(
    order: Iterable[int], labels: Mapping[Pair, int], induced: Iterable[Triple]
) -> LayeringWitness:
    return LayeringWitness(
        tuple(order), tuple(sorted(labels.items())), frozenset(induced)
    )


# Free group words over two generators.  Lowercase letters are the
# generators, uppercase their inverses.
FG_LETTERS = ("a", "b", "A", "B")


@dataclass(frozen=True, eq=True)
class FreeGroupWord:
    letters: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for ch in self.letters:
            if ch not in FG_LETTERS:
                raise ValueError(f"bad letter {ch!r}")
        for x, y in zip(self.letters, self.letters[1:]):
            if x == y.swapcase():
                raise ValueError(f"word not reduced at {x}{y}")

    def __str__(self) -> str:
        return "".join(self.letters)


# ---------------------------------------------------------------------------
# validation

def validate(obj: object) -> list[str]:
    """Return all invariant violations with locations; valid iff empty."""
    if isinstance(obj, Palette):
        return _validate_palette(obj)
    if isinstance(obj, ThreeGraph):
        return _validate_three_graph(obj)
    if isinstance(obj, ReducedHypergraph):
        return _validate_reduced(obj)
    raise TypeError(f"no validator for {type(obj).__name__}")


def _validate_palette(p: Palette) -> list[str]:
    errs = []
    if p.colors < 1:
        errs.append(f"colors: must be at least 1, got {p.colors}")
    for t in p.sorted_triples():
        if len(t) != 3:
            errs.append(f"triples{list(t)}: not a triple")
            continue
        for i, x in enumerate(t):
            if not isinstance(x, int) or isinstance(x, bool):
                errs.append(f"triples{list(t)}[{i}]: not an integer")
            elif not 0 <= x < p.colors:
                errs.append(
                    f"triples{list(t)}[{i}]: color {x} out of range 0..{p.colors - 1}"
                )
    return errs


def _validate_three_graph(f: ThreeGraph) -> list[str]:
    errs = []
    if f.vertices < 0:
        errs.append(f"vertices: negative count {f.vertices}")
    for e in f.sorted_edges():
        if len(e) != 3:
            errs.append(f"edges{list(e)}: not a 3-set")
            continue
        if len(set(e)) != 3:
            errs.append(f"edges{list(e)}: repeated vertex")
        for v in e:
            if not isinstance(v, int) or isinstance(v, bool):
                errs.append(f"edges{list(e)}: vertex {v!r} not an integer")
            elif not 0 <= v < f.vertices:
                errs.append(f"edges{list(e)}: vertex {v} out of range 0..{f.vertices - 1}")
    return errs


def _validate_reduced(h: ReducedHypergraph) -> list[str]:
    errs = []
    n = h.index_count
    if n < 0:
        errs.append(f"indices: negative count {n}")
    sizes = h.size_map()
    expected_pairs = set(itertools.combinations(range(n), 2))
    for key, size in sorted(sizes.items()):
        if key not in expected_pairs:
            errs.append(f"classSizes[{key[0]},{key[1]}]: not an index pair of 0..{n - 1}")
        elif size < 0:
            errs.append(f"classSizes[{key[0]},{key[1]}]: negative size {size}")
    for key in sorted(expected_pairs - set(sizes)):
        errs.append(f"classSizes: missing pair {key[0]},{key[1]}")
    expected_triples = set(itertools.combinations(range(n), 3))
    for key, edges in h.constituents:
        a, b, c = key
        name = f"constituents[{a},{b},{c}]"
        if key not in expected_triples:
            errs.append(f"{name}: not an index triple of 0..{n - 1}")
            continue
        bounds = (sizes.get((a, b), 0), sizes.get((a, c), 0), sizes.get((b, c), 0))
        for t in sorted(edges):
            if len(t) != 3:
                errs.append(f"{name}{list(t)}: not a triple")
                continue
            for slot, (x, bound) in enumerate(zip(t, bounds)):
                if not isinstance(x, int) or isinstance(x, bool):
                    errs.append(f"{name}{list(t)}[{slot}]: not an integer")
                elif not 0 <= x < bound:
                    errs.append(
                        f"{name}{list(t)}[{slot}]: vertex {x} outside class of size {bound}"
                    )
    return errs


# ---------------------------------------------------------------------------
# canonical forms

def apply_color_map(p: Palette, perm: tuple[int, ...]) -> Palette:
    return Palette(p.colors, frozenset((perm[x], perm[y], perm[z]) for x, y, z in p.triples))


def canonical_palette_with_map(
    p: Palette, limit: int = CANONICAL_COLOR_LIMIT
) -> tuple[Palette, tuple[int, ...]]:
    """Canonical relabeling plus one permutation achieving it (old -> new)."""
    if p.colors > limit:
        raise LimitError(f"canonical form limited to {limit} colors, got {p.colors}")
    best: list[Triple] | None = None
    best_perm = tuple(range(p.colors))
    for perm in itertools.permutations(range(p.colors)):
        cand = sorted((perm[x], perm[y], perm[z]) for x, y, z in p.triples)
        if best is None or cand < best:
            best = cand
            best_perm = perm
    return Palette(p.colors, frozenset(best if best is not None else [])), best_perm


def canonical_palette(p: Palette, limit: int = CANONICAL_COLOR_LIMIT) -> Palette:
    """Lexicographically least relabeling of the triple set over all
    color permutations.  Identical for color-isomorphic palettes."""
    return canonical_palette_with_map(p, limit)[0]


def palette_color_automorphisms(p: Palette, limit: int = CANONICAL_COLOR_LIMIT) -> list[tuple[int, ...]]:
    """Color permutations preserving the triple set.  Above the limit only
    the identity is reported (sound for symmetry breaking)."""
    if p.colors > limit:
        return [tuple(range(p.colors))]
    out = []
    for perm in itertools.permutations(range(p.colors)):
        if all((perm[x], perm[y], perm[z]) in p.triples for x, y, z in p.triples):
            out.append(perm)
    return out


def color_orbits(p: Palette, limit: int = CANONICAL_COLOR_LIMIT) -> list[tuple[int, ...]]:
    """Orbits of colors under the palette's color automorphisms."""
    parent = list(range(p.colors))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in palette_color_automorphisms(p, limit):
        for a, b in enumerate(perm):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in range(p.colors):
        groups.setdefault(find(v), []).append(v)
    return [tuple(groups[k]) for k in sorted(groups)]


def relabel_three_graph(f: ThreeGraph, perm: tuple[int, ...]) -> ThreeGraph:
    return ThreeGraph(
        f.vertices,
        frozenset(tuple(sorted((perm[a], perm[b], perm[c]))) for a, b, c in f.edges),
    )


def canonical_three_graph_with_map(
    f: ThreeGraph, limit: int = CANONICAL_VERTEX_LIMIT
) -> tuple[ThreeGraph, tuple[int, ...]]:
    """Canonical relabeling plus one permutation achieving it (old -> new)."""
    if f.vertices > limit:
        raise LimitError(f"canonical form limited to {limit} vertices, got {f.vertices}")
    best: list[Triple] | None = None
    best_perm = tuple(range(f.vertices))
    for perm in itertools.permutations(range(f.vertices)):
        cand = sorted(tuple(sorted((perm[a], perm[b], perm[c]))) for a, b, c in f.edges)
        if best is None or cand < best:
            best = cand
            best_perm = perm
    return ThreeGraph(f.vertices, frozenset(best if best is not None else [])), best_perm


def canonical_three_graph(f: ThreeGraph, limit: int = CANONICAL_VERTEX_LIMIT) -> ThreeGraph:
    return canonical_three_graph_with_map(f, limit)[0]


def three_graph_orbit_reps(f: ThreeGraph, limit: int = ORBIT_VERTEX_LIMIT) -> list[int]:
    """One representative vertex per automorphism orbit.  Above the limit
    every vertex is its own representative (no symmetry breaking)."""
    n = f.vertices
    if n > limit:
        return list(range(n))
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in itertools.permutations(range(n)):
        if all(tuple(sorted((perm[a], perm[b], perm[c]))) in f.edges for a, b, c in f.edges):
            for a, b in enumerate(perm):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    return sorted({find(v) for v in range(n)})


# ---------------------------------------------------------------------------
# exact ratio codec

def ratio_to_str(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


def ratio_from_str(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# JSON wire formats
#
# Palette        {"colors": c, "triples": [[x, y, z], ...]}
# ThreeGraph     {"vertices": n, "edges": [[u, v, w], ...]}
# Reduced        {"indices": n, "classSizes": {"a,b": size, ...},
#                 "constituents": {"a,b,c": [[i, j, k], ...], ...}}
#
# Lists are sorted, pair keys are smaller-first, missing constituent keys
# mean empty constituents.  Serialization is byte-deterministic.

def _expect(cond: bool, path: str, msg: str) -> None:
    if not cond:
        raise ParseError(f"{path}: {msg}")


def _expect_int(value: object, path: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), path, "expected an integer")
    return value  # type: ignore[return-value]


def _expect_triple_list(value: object, path: str) -> list[Triple]:
    _expect(isinstance(value, list), path, "expected a list")
    out: list[Triple] = []
    seen: set[Triple] = set()
    for i, item in enumerate(value):  # type: ignore[union-attr]
        here = f"{path}[{i}]"
        _expect(isinstance(item, list) and len(item) == 3, here, "expected a 3-element list")
        t = tuple(_expect_int(x, f"{here}[{j}]") for j, x in enumerate(item))
        _expect(t not in seen, here, f"duplicate entry {list(t)}")
        seen.add(t)
        out.append(t)  # type: ignore[arg-type]
    return out


def palette_to_dict(p: Palette) -> dict:
    return {"colors": p.colors, "triples": [list(t) for t in p.sorted_triples()]}


def palette_from_dict(data: object, path: str = "$") -> Palette:
    _expect(isinstance(data, dict), path, "expected an object")
    _expect(set(data) == {"colors", "triples"}, path, "expected keys colors, triples")  # type: ignore[arg-type]
    colors = _expect_int(data["colors"], f"{path}.colors")  # type: ignore[index]
    triples = _expect_triple_list(data["triples"], f"{path}.triples")  # type: ignore[index]
    p = Palette(colors, frozenset(triples))
    errs = validate(p)
    if errs:
        raise ParseError(f"{path}: " + "; ".join(errs))
    return p


def three_graph_to_dict(f: ThreeGraph) -> dict:
    return {"vertices": f.vertices, "edges": [list(e) for e in f.sorted_edges()]}


def three_graph_from_dict(data: object, path: str = "$") -> ThreeGraph:
    _expect(isinstance(data, dict), path, "expected an object")
    _expect(set(data) == {"vertices", "edges"}, path, "expected keys vertices, edges")  # type: ignore[arg-type]
    vertices = _expect_int(data["vertices"], f"{path}.vertices")  # type: ignore[index]
    edges = _expect_triple_list(data["edges"], f"{path}.edges")  # type: ignore[index]
    for i, e in enumerate(edges):
        _expect(tuple(sorted(e)) == e, f"{path}.edges[{i}]", "edge not sorted ascending")
    f = ThreeGraph(vertices, frozenset(edges))
    errs = validate(f)
    if errs:
        raise ParseError(f"{path}: " + "; ".join(errs))
    return f


def _pair_key(p_: Pair) -> str:
    return f"{p_[0]},{p_[1]}"


def _parse_index_key(key: str, parts: int, path: str) -> tuple[int, ...]:
    bits = key.split(",")
    _expect(len(bits) == parts, path, f"expected {parts} comma-separated indices")
    try:
        t = tuple(int(b) for b in bits)
    except ValueError:
        raise ParseError(f"{path}: non-integer index in key {key!r}") from None
    _expect(tuple(sorted(t)) == t and len(set(t)) == parts, path, "indices must be strictly increasing")
    return t


def reduced_to_dict(h: ReducedHypergraph) -> dict:
    return {
        "indices": h.index_count,
        "classSizes": {_pair_key(k): v for k, v in sorted(h.class_sizes)},
        "constituents": {
            f"{a},{b},{c}": [list(t) for t in sorted(edges)]
            for (a, b, c), edges in h.constituents
            if edges
        },
    }


def reduced_from_dict(data: object, path: str = "$") -> ReducedHypergraph:
    _expect(isinstance(data, dict), path, "expected an object")
    _expect(
        set(data) == {"indices", "classSizes", "constituents"},  # type: ignore[arg-type]
        path,
        "expected keys indices, classSizes, constituents",
    )
    n = _expect_int(data["indices"], f"{path}.indices")  # type: ignore[index]
    raw_sizes = data["classSizes"]  # type: ignore[index]
    _expect(isinstance(raw_sizes, dict), f"{path}.classSizes", "expected an object")
    sizes: dict[Pair, int] = {}
    for key, value in raw_sizes.items():  # type: ignore[union-attr]
        here = f"{path}.classSizes[{key!r}]"
        kp = _parse_index_key(key, 2, here)
        sizes[kp] = _expect_int(value, here)  # type: ignore[index]
    raw_cons = data["constituents"]  # type: ignore[index]
    _expect(isinstance(raw_cons, dict), f"{path}.constituents", "expected an object")
    cons: dict[Triple, list[Triple]] = {}
    for key, value in raw_cons.items():  # type: ignore[union-attr]
        here = f"{path}.constituents[{key!r}]"
        kt = _parse_index_key(key, 3, here)
        cons[kt] = _expect_triple_list(value, here)  # type: ignore[index]
    h = reduced_hypergraph(n, sizes, cons)
    errs = validate(h)
    if errs:
        raise ParseError(f"{path}: " + "; ".join(errs))
    return h


def admission_witness_to_dict(w: AdmissionWitness) -> dict:
    return {
        "order": list(w.order),
        "coloring": {_pair_key(k): v for k, v in w.coloring},
    }


def admission_witness_from_dict(data: object, path: str = "$") -> AdmissionWitness:
    _expect(isinstance(data, dict), path, "expected an object")
    _expect(set(data) == {"order", "coloring"}, path, "expected keys order, coloring")  # type: ignore[arg-type]
    raw_order = data["order"]  # type: ignore[index]
    _expect(isinstance(raw_order, list), f"{path}.order", "expected a list")
    order = tuple(_expect_int(v, f"{path}.order[{i}]") for i, v in enumerate(raw_order))  # type: ignore[union-attr]
    raw_col = data["coloring"]  # type: ignore[index]
    _expect(isinstance(raw_col, dict), f"{path}.coloring", "expected an object")
    coloring: dict[Pair, int] = {}
    for key, value in raw_col.items():  # type: ignore[union-attr]
        here = f"{path}.coloring[{key!r}]"
        kp = _parse_index_key(key, 2, here)
        coloring[kp] = _expect_int(value, here)
    return admission_witness(order, coloring)


def embedding_witness_to_dict(w: EmbeddingWitness) -> dict:
    return {
        "indexMap": {str(k): v for k, v in w.index_map},
        "pairMap": {_pair_key(k): v for k, v in w.pair_map},
    }


def embedding_witness_from_dict(data: object, path: str = "$") -> EmbeddingWitness:
    _expect(isinstance(data, dict), path, "expected an object")
    _expect(set(data) == {"indexMap", "pairMap"}, path, "expected keys indexMap, pairMap")  # type: ignore[arg-type]
    raw_idx = data["indexMap"]  # type: ignore[index]
    _expect(isinstance(raw_idx, dict), f"{path}.indexMap", "expected an object")
    index_map: dict[int, int] = {}
    for key, value in raw_idx.items():  # type: ignore[union-attr]
        here = f"{path}.indexMap[{key!r}]"
        (k,) = _parse_index_key(key, 1, here)
        index_map[k] = _expect_int(value, here)
    raw_pm = data["pairMap"]  # type: ignore[index]
    _expect(isinstance(raw_pm, dict), f"{path}.pairMap", "expected an object")
    pair_map: dict[Pair, int] = {}
    for key, value in raw_pm.items():  # type: ignore[union-attr]
        here = f"{path}.pairMap[{key!r}]"
        pair_map[_parse_index_key(key, 2, here)] = _expect_int(value, here)
    return embedding_witness(index_map, pair_map)


def layering_witness_to_dict(w: LayeringWitness) -> dict:
    return {
        "order": list(w.order),
        "labels": {_pair_key(k): v for k, v in w.labels},
        "induced": [list(t) for t in sorted(w.induced)],
    }


def layering_witness_from_dict(data: object, path: str = "$") -> LayeringWitness:
    _expect(isinstance(data, dict), path, "expected an object")
    _expect(
        set(data) == {"order", "labels", "induced"},  # type: ignore[arg-type]
        path,
        "expected keys order, labels, induced",
    )
    raw_order = data["order"]  # type: ignore[index]
    _expect(isinstance(raw_order, list), f"{path}.order", "expected a list")
    order = tuple(_expect_int(v, f"{path}.order[{i}]") for i, v in enumerate(raw_order))  # type: ignore[union-attr]
    raw_lab = data["labels"]  # type: ignore[index]
    _expect(isinstance(raw_lab, dict), f"{path}.labels", "expected an object")
    labels: dict[Pair, int] = {}
    for key, value in raw_lab.items():  # type: ignore[union-attr]
        here = f"{path}.labels[{key!r}]"
        labels[_parse_index_key(key, 2, here)] = _expect_int(value, here)
    induced = _expect_triple_list(data["induced"], f"{path}.induced")  # type: ignore[index]
    return layering_witness(order, labels, induced)


def loads(text: str, from_dict) -> object:
    """Parse JSON text through one of the *_from_dict codecs, reporting
    the byte position on malformed JSON."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_dict(data)


def dumps(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))
