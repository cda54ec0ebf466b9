"""Command-line surface.

Every subcommand prints a human summary, or one canonical JSON object
with --json.  Exit codes: 0 the computed property holds or the object
was produced, 1 it fails or nothing was found, 2 usage or input error,
3 inconclusive (a search budget ran out).

Passing -o writes the JSON payload to a file, plus a run manifest
alongside (<out>.manifest.json) recording the command line, a digest of
the resolved inputs, seeds with the generator identifier, the package
version, wall time, and a digest of the payload bytes.  Payload bytes
for a fixed seed are identical across reruns; the manifest's wall time
is not.

Long sweeps (bound pturan, separate) accept --cursor FILE and write
their progress there, keyed by a digest of the inputs; a rerun with the
same inputs resumes, anything else starts fresh.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .admission import SearchLimits, admits, build_reduced, embeds
from .cache import MemoryCache, VerdictCache
from .constructions import (
    audit_dot_density,
    audit_vertexpair_density,
    build_fk,
    build_linear_monotone,
    longest_walk,
    make_alternating_palette,
    make_chain_palette,
    make_rainbow,
    sample_hypergraph,
    walk_level_sets,
)
from .core import (
    BudgetExhaustedError,
    PaletteLabError,
    ParseError,
    admission_witness_to_dict,
    canonical_palette_with_map,
    dumps,
    embedding_witness_to_dict,
    layering_witness_to_dict,
    loads,
    palette_from_dict,
    palette_to_dict,
    ratio_from_str,
    ratio_to_str,
    reduced_from_dict,
    reduced_to_dict,
    three_graph_from_dict,
    three_graph_to_dict,
)
from .layered import (
    LayeredLimits,
    fg_labelling_to_layering,
    fg_word,
    is_max_layered,
    is_min_layered,
    verify_fg_labelling,
)
from .metrics import density, min_codegree, min_degree, reverse, subpalette
from .rng import GENERATOR_ID
from .search import (
    enumerate_palettes,
    search_separating_graph,
    verify_k4minus_structure,
)

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


# ---------------------------------------------------------------------------
# plumbing

def _read(path: str, from_dict):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    try:
        return loads(text, from_dict)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _ratio_arg(text: str) -> Fraction:
    try:
        return ratio_from_str(text)
    except PaletteLabError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _digest(data: dict) -> str:
    return hashlib.sha256(dumps(data).encode()).hexdigest()


def _finish(
    args,
    code: int,
    payload: dict,
    human: list[str],
    seeds: list[int] | None = None,
    artifact: dict | None = None,
) -> int:
    """Print the result and, with -o, write the artifact plus manifest.

    The written artifact defaults to the payload; commands producing a
    reusable object (a palette, a graph, a reduced hypergraph) write
    that object bare so the file feeds straight into other commands.
    """
    text = dumps(payload) if args.json else "\n".join(human)
    print(text)
    out = getattr(args, "out", None)
    if out:
        body = dumps(artifact if artifact is not None else payload) + "\n"
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body)
        manifest = {
            "commandLine": args.run_argv,
            "configDigest": _digest(args.run_config),
            "seeds": seeds or [],
            "generator": GENERATOR_ID if seeds else None,
            "version": __version__,
            "wallTimeSeconds": round(time.time() - args.run_start, 6),
            "resultDigest": hashlib.sha256(body.encode()).hexdigest(),
        }
        with open(out + ".manifest.json", "w", encoding="utf-8") as fh:
            fh.write(dumps(manifest) + "\n")
    return code


def _open_cache(args, required: bool = False):
    directory = getattr(args, "cache", None) or os.environ.get("PALETTELAB_CACHE")
    if directory:
        return VerdictCache(directory)
    if required:
        raise ParseError("no cache directory: pass --cache or set PALETTELAB_CACHE")
    return None


def _resolve_jobs(args) -> int:
    raw = getattr(args, "jobs", None)
    if raw is None:
        raw = os.environ.get("PALETTELAB_JOBS", "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise ParseError(f"jobs must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise ParseError(f"jobs must be positive, got {jobs}")
    return jobs  # accepted and recorded; execution is serial in this version


def _search_limits(args) -> SearchLimits:
    kw = {}
    if getattr(args, "max_vertices", None) is not None:
        kw["max_vertices"] = args.max_vertices
    if getattr(args, "max_nodes", None) is not None:
        kw["max_nodes"] = args.max_nodes
    return SearchLimits(**kw)


def _load_cursor(path: str | None, config_digest: str) -> dict | None:
    if not path or not os.path.exists(path):
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            record = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if not isinstance(record, dict) or record.get("configDigest") != config_digest:
        return None
    return record


def _store_cursor(path: str | None, record: dict) -> None:
    if not path:
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(record) + "\n")


def _ratio_lines(**named: Fraction) -> list[str]:
    return [f"{k}: {ratio_to_str(v)}" for k, v in named.items()]


# ---------------------------------------------------------------------------
# palette group

def cmd_palette_stats(args) -> int:
    p = _read(args.palette, palette_from_dict)
    args.run_config = {"command": "palette-stats", "palette": palette_to_dict(p)}
    canonical, _ = canonical_palette_with_map(p)
    payload = {
        "colors": p.colors,
        "tripleCount": len(p.triples),
        "density": ratio_to_str(density(p)),
        "minDegree": ratio_to_str(min_degree(p)),
        "minCodegree": ratio_to_str(min_codegree(p)),
        "canonical": canonical == p,
        "palindromic": reverse(p) == p,
    }
    human = [
        f"colors: {p.colors}",
        f"triples: {len(p.triples)}",
        f"density: {payload['density']}",
        f"min degree: {payload['minDegree']}",
        f"min codegree: {payload['minCodegree']}",
        f"canonical: {payload['canonical']}",
        f"palindromic: {payload['palindromic']}",
    ]
    return _finish(args, EXIT_HOLDS, payload, human)


def cmd_palette_canon(args) -> int:
    p = _read(args.palette, palette_from_dict)
    args.run_config = {"command": "palette-canon", "palette": palette_to_dict(p)}
    canonical, perm = canonical_palette_with_map(p)
    payload = {
        "palette": palette_to_dict(canonical),
        "colorMap": {str(i): perm[i] for i in range(p.colors)},
        "changed": canonical != p,
    }
    human = [
        f"canonical triples: {sorted(canonical.triples)}",
        f"color map: {list(perm)}",
        f"changed: {payload['changed']}",
    ]
    return _finish(args, EXIT_HOLDS, payload, human, artifact=payload["palette"])


def cmd_palette_enum(args) -> int:
    args.run_config = {
        "command": "palette-enum",
        "colors": args.colors,
        "minDensity": ratio_to_str(args.min_density) if args.min_density is not None else None,
        "minDegree": ratio_to_str(args.min_degree) if args.min_degree is not None else None,
        "countOnly": args.count_only,
    }
    stream = enumerate_palettes(args.colors, min_density=args.min_density, min_degree=args.min_degree)
    if args.count_only:
        classes = sum(1 for _ in stream)
        payload: dict = {"classes": classes}
        human = [f"classes: {classes}"]
    else:
        palettes = [palette_to_dict(p) for p in stream]
        payload = {"classes": len(palettes), "palettes": palettes}
        human = [f"classes: {len(palettes)}"] + [str(d["triples"]) for d in palettes]
    return _finish(args, EXIT_HOLDS, payload, human)


def cmd_palette_relate(args) -> int:
    p = _read(args.palette, palette_from_dict)
    q = _read(args.other, palette_from_dict)
    args.run_config = {
        "command": "palette-relate",
        "palette": palette_to_dict(p),
        "other": palette_to_dict(q),
    }
    direct = subpalette(p, q)
    reversed_ = subpalette(p, reverse(q))
    payload = {
        "subpalette": {str(k): v for k, v in direct.items()} if direct is not None else None,
        "reversedSubpalette": {str(k): v for k, v in reversed_.items()} if reversed_ is not None else None,
    }
    human = [
        f"subpalette map: {dict(sorted(direct.items())) if direct is not None else 'none'}",
        f"into reverse: {dict(sorted(reversed_.items())) if reversed_ is not None else 'none'}",
    ]
    return _finish(args, EXIT_HOLDS if direct is not None else EXIT_FAILS, payload, human)


# ---------------------------------------------------------------------------
# admission and embedding

def cmd_admits(args) -> int:
    f = _read(args.graph, three_graph_from_dict)
    p = _read(args.palette, palette_from_dict)
    args.run_config = {
        "command": "admits",
        "graph": three_graph_to_dict(f),
        "palette": palette_to_dict(p),
    }
    w = admits(f, p, limits=_search_limits(args), cache=_open_cache(args))
    if w is None:
        return _finish(args, EXIT_FAILS, {"admitted": False, "witness": None}, ["not admitted"])
    payload = {"admitted": True, "witness": admission_witness_to_dict(w)}
    human = [
        "admitted",
        f"order: {list(w.order)}",
        f"coloring: {dict(w.coloring)}",
    ]
    return _finish(args, EXIT_HOLDS, payload, human)


def cmd_embeds(args) -> int:
    f = _read(args.graph, three_graph_from_dict)
    h = _read(args.reduced, reduced_from_dict)
    args.run_config = {
        "command": "embeds",
        "graph": three_graph_to_dict(f),
        "reduced": reduced_to_dict(h),
    }
    w = embeds(f, h, limits=_search_limits(args))
    if w is None:
        return _finish(args, EXIT_FAILS, {"embedded": False, "witness": None}, ["no embedding"])
    payload = {"embedded": True, "witness": embedding_witness_to_dict(w)}
    human = [
        "embedded",
        f"index map: {dict(w.index_map)}",
        f"pair map: {dict(w.pair_map)}",
    ]
    return _finish(args, EXIT_HOLDS, payload, human)


def cmd_reduced_build(args) -> int:
    p = _read(args.palette, palette_from_dict)
    args.run_config = {
        "command": "reduced-build",
        "palette": palette_to_dict(p),
        "indices": args.indices,
    }
    h = build_reduced(p, args.indices)
    payload = {"reduced": reduced_to_dict(h)}
    human = [
        f"indices: {h.index_count}",
        f"classes: {len(h.class_sizes)}",
        f"constituents: {len(h.constituents)}",
    ]
    return _finish(args, EXIT_HOLDS, payload, human, artifact=payload["reduced"])


# ---------------------------------------------------------------------------
# sampling and audits

def cmd_sample(args) -> int:
    p = _read(args.palette, palette_from_dict)
    args.run_config = {
        "command": "sample",
        "palette": palette_to_dict(p),
        "vertices": args.vertices,
        "seed": args.seed,
    }
    g = sample_hypergraph(p, args.vertices, args.seed)
    payload = {"graph": three_graph_to_dict(g), "edgeCount": len(g.edges), "seed": args.seed}
    human = [
        f"vertices: {g.vertices}",
        f"edges: {len(g.edges)}",
        f"seed: {args.seed}",
    ]
    return _finish(args, EXIT_HOLDS, payload, human, seeds=[args.seed], artifact=payload["graph"])


def _audit_payload(report) -> dict:
    return {
        "kind": report.kind,
        "mode": report.mode,
        "density": ratio_to_str(report.density),
        "epsilon": report.epsilon,
        "slack": ratio_to_str(report.slack),
        "threshold": ratio_to_str(report.threshold),
        "passed": report.passed,
        "worstSet": list(report.worst_set),
        "worstPairs": [list(pr) for pr in report.worst_pairs] if report.worst_pairs is not None else None,
        "samples": report.samples,
        "seed": report.seed,
    }


def _run_audit(args, audit) -> int:
    g = _read(args.graph, three_graph_from_dict)
    args.run_config = {
        "command": f"audit-{args.audit_kind}",
        "graph": three_graph_to_dict(g),
        "density": ratio_to_str(args.density),
        "epsilon": args.epsilon,
        "mode": args.mode,
        "samples": args.samples,
        "seed": args.seed,
    }
    report = audit(
        g, args.density, args.epsilon,
        mode=args.mode, samples=args.samples, seed=args.seed,
    )
    payload = _audit_payload(report)
    human = [
        f"{report.kind} audit ({report.mode}): {'pass' if report.passed else 'FAIL'}",
        f"slack: {ratio_to_str(report.slack)}",
        f"threshold: {ratio_to_str(report.threshold)}",
        f"worst set: {list(report.worst_set)}",
    ]
    if report.worst_pairs is not None:
        human.append(f"worst pairs: {[tuple(pr) for pr in report.worst_pairs]}")
    seeds = [args.seed] if args.seed is not None else None
    return _finish(args, EXIT_HOLDS if report.passed else EXIT_FAILS, payload, human, seeds=seeds)


def cmd_audit_uniform(args) -> int:
    return _run_audit(args, audit_dot_density)


def cmd_audit_vertexpair(args) -> int:
    return _run_audit(args, audit_vertexpair_density)


# ---------------------------------------------------------------------------
# walks and constructions

def cmd_walk(args) -> int:
    p = _read(args.palette, palette_from_dict)
    args.run_config = {"command": "walk", "palette": palette_to_dict(p)}
    report = longest_walk(p)
    levels = walk_level_sets(p)
    payload = {
        "unbounded": report.unbounded,
        "length": report.length,
        "steps": [list(t) for t in report.steps],
        "levelSets": [list(g) for g in levels] if levels is not None else None,
    }
    human = [
        f"walk: {'unbounded (cycle)' if report.unbounded else report.length}",
        f"steps: {[tuple(t) for t in report.steps]}",
    ]
    if levels is not None:
        human.append(f"level sets: {[list(g) for g in levels]}")
    return _finish(args, EXIT_HOLDS, payload, human)


_PALETTE_KINDS = {
    "chain": lambda args: make_chain_palette(args.k),
    "rainbow": lambda args: make_rainbow(),
    "alternating": lambda args: make_alternating_palette(),
}


def cmd_construct_palette(args) -> int:
    if args.kind == "chain" and args.k is None:
        raise ParseError("chain palettes need --k")
    p = _PALETTE_KINDS[args.kind](args)
    args.run_config = {"command": "construct-palette", "kind": args.kind, "k": args.k}
    payload = {"palette": palette_to_dict(p), "density": ratio_to_str(density(p))}
    human = [
        f"colors: {p.colors}",
        f"triples: {sorted(p.triples)}",
        f"density: {payload['density']}",
    ]
    return _finish(args, EXIT_HOLDS, payload, human, artifact=payload["palette"])


def cmd_construct_fk(args) -> int:
    args.run_config = {
        "command": "construct-fk",
        "k": args.k,
        "vertices": args.vertices,
        "seed": args.seed,
    }
    h, report = build_linear_monotone(args.k, args.vertices, args.seed)
    g = build_fk(h)
    payload = {
        "uniformity": h.uniformity,
        "vertices": h.vertices,
        "hyperedges": [list(e) for e in sorted(h.edges)],
        "graph": three_graph_to_dict(g),
        "sampled": report.sampled,
        "removed": report.removed,
        "removalBound": report.removal_bound,
        "withinBound": report.within_bound,
        "seed": args.seed,
    }
    human = [
        f"hyperedges kept: {len(h.edges)} of {report.sampled} sampled (removed {report.removed})",
        f"removal bound {report.removal_bound:.1f}: {'ok' if report.within_bound else 'exceeded'}",
        f"triples: {len(g.edges)}",
    ]
    return _finish(args, EXIT_HOLDS, payload, human, seeds=[args.seed], artifact=payload["graph"])


# ---------------------------------------------------------------------------
# layered recognizers

def _run_layered(args, recognizer, which: str) -> int:
    f = _read(args.graph, three_graph_from_dict)
    args.run_config = {
        "command": f"layered-{which}",
        "graph": three_graph_to_dict(f),
        "maxVertices": args.max_vertices,
        "maxNodes": args.max_nodes,
    }
    limits = LayeredLimits(
        max_vertices=args.max_vertices if args.max_vertices is not None else LayeredLimits.max_vertices,
        max_nodes=args.max_nodes,
    )
    w = recognizer(f, limits=limits)
    if w is None:
        return _finish(args, EXIT_FAILS, {"layered": False, "witness": None}, [f"not {which}-layered"])
    payload = {"layered": True, "witness": layering_witness_to_dict(w)}
    human = [
        f"{which}-layered",
        f"order: {list(w.order)}",
        f"labels: {dict(w.labels)}",
        f"induced: {sorted(w.induced)}",
    ]
    return _finish(args, EXIT_HOLDS, payload, human)


def cmd_layered_min(args) -> int:
    return _run_layered(args, is_min_layered, "min")


def cmd_layered_max(args) -> int:
    return _run_layered(args, is_max_layered, "max")


def cmd_fg_verify(args) -> int:
    f = _read(args.graph, three_graph_from_dict)
    try:
        with open(args.labelling, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{args.labelling}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{args.labelling}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(raw, dict) or set(raw) != {"order", "labels"} or not isinstance(raw.get("labels"), dict):
        raise ParseError(f"{args.labelling}: expected keys order, labels")
    order = raw["order"]
    if not isinstance(order, list) or not all(isinstance(v, int) for v in order):
        raise ParseError(f"{args.labelling}: order must be a list of integers")
    if sorted(order) != list(range(f.vertices)):
        raise ParseError(f"{args.labelling}: order must permute 0..{f.vertices - 1}")
    psi = {}
    for key, word in raw["labels"].items():
        bits = key.split(",")
        if len(bits) != 2 or not all(b.isdigit() for b in bits):
            raise ParseError(f"{args.labelling}: bad pair key {key!r}")
        if not isinstance(word, str):
            raise ParseError(f"{args.labelling}: word for {key!r} must be a string")
        try:
            psi[tuple(int(b) for b in bits)] = fg_word(word)
        except ValueError as exc:
            raise ParseError(f"{args.labelling}: {key}: {exc}") from None
    args.run_config = {
        "command": "fg-verify",
        "graph": three_graph_to_dict(f),
        "order": order,
        "labels": {k: str(w) for k, w in sorted(psi.items())},
    }
    ok = verify_fg_labelling(f, order, psi)
    if not ok:
        return _finish(args, EXIT_FAILS, {"valid": False, "layering": None}, ["labelling does not satisfy the edge relations"])
    w = fg_labelling_to_layering(f, order, psi)
    payload = {"valid": True, "layering": layering_witness_to_dict(w)}
    human = [
        "labelling valid",
        f"labels: {dict(w.labels)}",
        f"induced: {sorted(w.induced)}",
    ]
    return _finish(args, EXIT_HOLDS, payload, human)


# ---------------------------------------------------------------------------
# sweeps

def cmd_bound_pturan(args) -> int:
    f = _read(args.graph, three_graph_from_dict)
    args.run_config = {
        "command": "bound-pturan",
        "graph": three_graph_to_dict(f),
        "colors": args.colors,
    }
    config_digest = _digest(args.run_config)
    limits = _search_limits(args)
    cache = _open_cache(args) or MemoryCache()

    start = 0
    best = Fraction(0)
    witness = None
    cursor = _load_cursor(args.cursor, config_digest)
    if cursor and not cursor.get("done"):
        resumed_witness = (
            palette_from_dict(cursor["witness"]) if cursor.get("witness") is not None else None
        )
        # trust but verify: the cursor's witness must still be non-admitted
        if resumed_witness is None or admits(f, resumed_witness, limits=limits, cache=cache) is None:
            start = int(cursor.get("classes", 0))
            best = ratio_from_str(cursor["bound"])
            witness = resumed_witness

    classes = start

    def checkpoint(done: bool) -> None:
        _store_cursor(args.cursor, {
            "configDigest": config_digest,
            "classes": classes,
            "bound": ratio_to_str(best),
            "witness": palette_to_dict(witness) if witness is not None else None,
            "done": done,
        })

    try:
        for i, p in enumerate(enumerate_palettes(args.colors)):
            if i < start:
                continue
            verdict = admits(f, p, limits=limits, cache=cache)
            classes = i + 1
            if verdict is None:
                d = density(p)
                if witness is None or d > best:
                    best, witness = d, p
            if args.cursor and classes % 64 == 0:
                checkpoint(False)
    except BudgetExhaustedError:
        checkpoint(False)
        raise
    checkpoint(True)

    payload = {
        "bound": ratio_to_str(best),
        "witness": palette_to_dict(witness) if witness is not None else None,
        "classes": classes,
        "searches": cache.searches,
        "cacheHits": cache.hits,
    }
    human = [
        f"bound: {ratio_to_str(best)}",
        f"witness: {sorted(witness.triples) if witness is not None else 'none (every palette admitted)'}",
        f"classes swept: {classes}",
        f"searches: {cache.searches} (cache hits: {cache.hits})",
    ]
    return _finish(args, EXIT_HOLDS, payload, human)


def cmd_verify_k4minus(args) -> int:
    p = _read(args.palette, palette_from_dict)
    args.run_config = {"command": "verify-k4minus", "palette": palette_to_dict(p)}
    report = verify_k4minus_structure(p)
    payload = {
        "leftArcs": [list(a) for a in report.left_arcs],
        "rightArcs": [list(a) for a in report.right_arcs],
        "patternSide": report.pattern_side,
        "pattern": list(report.pattern) if report.pattern is not None else None,
        "completions": list(report.completions) if report.completions is not None else None,
        "witness": admission_witness_to_dict(report.witness) if report.witness is not None else None,
        "tripleCount": report.triple_count,
        "codegreeSum": report.codegree_sum,
        "halfSquareSum": ratio_to_str(report.half_square_sum),
        "cubeQuarter": ratio_to_str(report.cube_quarter),
        "densityBounded": report.density_bounded,
    }
    if report.pattern is not None:
        human = [
            f"pattern {tuple(report.pattern)} in {report.pattern_side} digraph, completions {tuple(report.completions)}",
            "admission witness built and checked",
        ]
    else:
        human = [
            "no pattern in either digraph",
            f"counting chain: {report.triple_count} <= {report.codegree_sum} <= "
            f"{ratio_to_str(report.half_square_sum)} <= {ratio_to_str(report.cube_quarter)}",
            f"density bounded by 1/4: {report.density_bounded}",
        ]
    return _finish(args, EXIT_HOLDS, payload, human)


def cmd_separate(args) -> int:
    p = _read(args.palette, palette_from_dict)
    q = _read(args.other, palette_from_dict)
    args.run_config = {
        "command": "separate",
        "palette": palette_to_dict(p),
        "other": palette_to_dict(q),
        "maxVertices": args.max_vertices,
    }
    config_digest = _digest(args.run_config)
    cursor = _load_cursor(args.cursor, config_digest)
    resume = int(cursor.get("examined", 0)) if cursor and not cursor.get("done") else 0
    result = search_separating_graph(
        p, q,
        max_vertices=args.max_vertices,
        limits=_search_limits(args),
        cache=_open_cache(args),
        resume_examined=resume,
    )
    _store_cursor(args.cursor, {
        "configDigest": config_digest,
        "examined": result.examined,
        "done": result.status != "exhausted",
    })
    payload = {
        "status": result.status,
        "graph": three_graph_to_dict(result.graph) if result.graph is not None else None,
        "theoremMap": {str(k): v for k, v in result.theorem_map} if result.theorem_map is not None else None,
        "theoremTarget": result.theorem_target,
        "examined": result.examined,
        "skippedBudget": result.skipped_budget,
        "maxVertices": result.max_vertices,
    }
    if result.status == "found":
        human = [
            f"separating graph found: {result.graph.vertices} vertices, edges {sorted(result.graph.edges)}",
            f"examined: {result.examined}",
        ]
        code = EXIT_HOLDS
    elif result.status == "none-by-theorem":
        human = [
            f"no separating graph exists: color map into the {result.theorem_target.replace('-', ' ')} "
            f"transfers every admission",
            f"map: {dict(result.theorem_map)}",
        ]
        code = EXIT_FAILS
    else:
        human = [
            f"exhausted {result.examined} graphs up to {result.max_vertices} vertices"
            + (f" ({result.skipped_budget} skipped on budget)" if result.skipped_budget else ""),
        ]
        code = EXIT_INCONCLUSIVE
    return _finish(args, code, payload, human)


# ---------------------------------------------------------------------------
# cache management

def cmd_cache_stats(args) -> int:
    cache = _open_cache(args, required=True)
    stats = cache.stats()
    args.run_config = {"command": "cache-stats"}
    return _finish(args, EXIT_HOLDS, stats, [f"records: {stats['records']}", f"bytes: {stats['bytes']}"])


def cmd_cache_clear(args) -> int:
    cache = _open_cache(args, required=True)
    removed = cache.clear()
    args.run_config = {"command": "cache-clear"}
    return _finish(args, EXIT_HOLDS, {"cleared": removed}, [f"cleared: {removed}"])


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-o", "--out", metavar="FILE", help="write the result JSON here, with a run manifest alongside")
    common.add_argument("--jobs", metavar="N", help="worker budget (accepted; this version runs serially)")

    cached = argparse.ArgumentParser(add_help=False)
    cached.add_argument("--cache", metavar="DIR", help="verdict cache directory (or PALETTELAB_CACHE)")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-nodes", type=int, metavar="N", help="search node budget")

    parser = argparse.ArgumentParser(prog="palettelab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("palette", help="palette inspection and enumeration").add_subparsers(
        dest="subcommand", required=True
    )
    s = grp.add_parser("stats", parents=[common], help="density, degrees, canonical flag")
    s.add_argument("--palette", required=True, metavar="FILE")
    s.set_defaults(func=cmd_palette_stats)
    s = grp.add_parser("canon", parents=[common], help="canonical form under color relabeling")
    s.add_argument("--palette", required=True, metavar="FILE")
    s.set_defaults(func=cmd_palette_canon)
    s = grp.add_parser("enum", parents=[common], help="one palette per color class")
    s.add_argument("--colors", type=int, required=True)
    s.add_argument("--min-density", type=_ratio_arg, metavar="P/Q")
    s.add_argument("--min-degree", type=_ratio_arg, metavar="P/Q")
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_palette_enum)
    s = grp.add_parser("relate", parents=[common], help="subpalette maps into another palette")
    s.add_argument("--palette", required=True, metavar="FILE")
    s.add_argument("--other", required=True, metavar="FILE")
    s.set_defaults(func=cmd_palette_relate)

    s = sub.add_parser("admits", parents=[common, cached, budget], help="does the graph admit the palette")
    s.add_argument("--graph", required=True, metavar="FILE")
    s.add_argument("--palette", required=True, metavar="FILE")
    s.add_argument("--max-vertices", type=int, metavar="N", help="refuse larger graphs")
    s.set_defaults(func=cmd_admits)

    s = sub.add_parser("embeds", parents=[common, budget], help="embed a graph into a reduced hypergraph")
    s.add_argument("--graph", required=True, metavar="FILE")
    s.add_argument("--reduced", required=True, metavar="FILE")
    s.add_argument("--max-vertices", type=int, metavar="N")
    s.set_defaults(func=cmd_embeds)

    grp = sub.add_parser("reduced", help="reduced hypergraphs").add_subparsers(dest="subcommand", required=True)
    s = grp.add_parser("build", parents=[common], help="palette to reduced hypergraph")
    s.add_argument("--palette", required=True, metavar="FILE")
    s.add_argument("--indices", type=int, required=True, metavar="N")
    s.set_defaults(func=cmd_reduced_build)

    s = sub.add_parser("sample", parents=[common], help="seeded palette hypergraph")
    s.add_argument("--palette", required=True, metavar="FILE")
    s.add_argument("-n", "--vertices", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.set_defaults(func=cmd_sample)

    grp = sub.add_parser("audit", help="density audits").add_subparsers(dest="subcommand", required=True)
    for name, handler in (("uniform", cmd_audit_uniform), ("vertexpair", cmd_audit_vertexpair)):
        s = grp.add_parser(name, parents=[common], help=f"{name} density audit")
        s.add_argument("--graph", required=True, metavar="FILE")
        s.add_argument("--density", type=_ratio_arg, required=True, metavar="P/Q")
        s.add_argument("--epsilon", type=float, required=True)
        s.add_argument("--mode", choices=["exact", "sampled"], default="exact")
        s.add_argument("--samples", type=int)
        s.add_argument("--seed", type=int)
        s.set_defaults(func=handler, audit_kind=name)

    s = sub.add_parser("walk", parents=[common], help="longest color walk and level sets")
    s.add_argument("--palette", required=True, metavar="FILE")
    s.set_defaults(func=cmd_walk)

    grp = sub.add_parser("construct", help="named palettes and sparse graphs").add_subparsers(
        dest="subcommand", required=True
    )
    s = grp.add_parser("palette", parents=[common], help="chain, rainbow, or alternating palette")
    s.add_argument("--kind", choices=sorted(_PALETTE_KINDS), required=True)
    s.add_argument("--k", type=int, help="chain length parameter")
    s.set_defaults(func=cmd_construct_palette)
    s = grp.add_parser("fk", parents=[common], help="sparse linear graph and its triple blowdown")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("-n", "--vertices", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.set_defaults(func=cmd_construct_fk)

    grp = sub.add_parser("layered", help="layering recognizers").add_subparsers(dest="subcommand", required=True)
    for name, handler in (("min", cmd_layered_min), ("max", cmd_layered_max)):
        s = grp.add_parser(name, parents=[common], help=f"{name}-layered witness search")
        s.add_argument("--graph", required=True, metavar="FILE")
        s.add_argument("--max-vertices", type=int, metavar="N")
        s.add_argument("--max-nodes", type=int, metavar="N")
        s.set_defaults(func=handler)

    grp = sub.add_parser("fg", help="free-group labellings").add_subparsers(dest="subcommand", required=True)
    s = grp.add_parser("verify", parents=[common], help="check a word labelling and derive its layering")
    s.add_argument("--graph", required=True, metavar="FILE")
    s.add_argument("--labelling", required=True, metavar="FILE")
    s.set_defaults(func=cmd_fg_verify)

    grp = sub.add_parser("bound", help="density bounds").add_subparsers(dest="subcommand", required=True)
    s = grp.add_parser("pturan", parents=[common, cached, budget], help="best non-admitted density at fixed colors")
    s.add_argument("--graph", required=True, metavar="FILE")
    s.add_argument("--colors", type=int, required=True)
    s.add_argument("--cursor", metavar="FILE", help="progress file for resumable sweeps")
    s.set_defaults(func=cmd_bound_pturan)

    grp = sub.add_parser("verify", help="structural verifiers").add_subparsers(dest="subcommand", required=True)
    s = grp.add_parser("k4minus", parents=[common], help="arc pattern and counting chain")
    s.add_argument("--palette", required=True, metavar="FILE")
    s.set_defaults(func=cmd_verify_k4minus)

    s = sub.add_parser("separate", parents=[common, cached, budget], help="graph admitting one palette but not the other")
    s.add_argument("--palette", required=True, metavar="FILE")
    s.add_argument("--other", required=True, metavar="FILE")
    s.add_argument("--max-vertices", type=int, default=6, metavar="N")
    s.add_argument("--cursor", metavar="FILE", help="progress file for resumable sweeps")
    s.set_defaults(func=cmd_separate)

    grp = sub.add_parser("cache", help="verdict cache").add_subparsers(dest="subcommand", required=True)
    for name, handler in (("stats", cmd_cache_stats), ("clear", cmd_cache_clear)):
        s = grp.add_parser(name, parents=[common, cached], help=f"{name} the configured cache")
        s.set_defaults(func=handler)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    args.run_argv = argv
    args.run_start = time.time()
    args.run_config = {}
    try:
        _resolve_jobs(args)
        return args.func(args)
    except BudgetExhaustedError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (PaletteLabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
