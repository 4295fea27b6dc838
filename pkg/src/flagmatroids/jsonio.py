"""Canonical JSON encoding of every external interface.

Sets are sorted integer arrays, objects carry a versioned "schema" field,
and `dumps` is byte-deterministic so identical invocations of the CLI
produce identical output.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from . import flag_core as fl
from . import gf_linalg as gl
from . import graphic as gr
from . import matroid_core as mc
from .bitset import elements_of, mask_of
from .errors import InvalidInput
from .lifts_majors import LiftWitnessSequence, MajorStructure
from .representability import FlagRepresentation, ForbiddenMinorWitness


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _int_list(xs) -> list[int]:
    return [int(x) for x in xs]


def _mask_family(masks) -> list[list[int]]:
    return [list(elements_of(m)) for m in masks]


def _require(doc: Any, keys: tuple[str, ...], kind: str) -> None:
    if not isinstance(doc, dict):
        raise InvalidInput(f"{kind}: expected an object")
    for k in keys:
        if k not in doc:
            raise InvalidInput(f"{kind}: missing field {k!r}")


# --- matroids -----------------------------------------------------------------

def matroid_json(m: mc.Matroid) -> dict:
    return {"schema": "matroid/1", "n": m.n, "bases": _mask_family(m.bases)}


def load_matroid(doc: Any) -> mc.Matroid:
    _require(doc, ("n", "bases"), "matroid")
    return mc.matroid_from_bases(int(doc["n"]), [_int_list(b) for b in doc["bases"]])


# --- flag matroids -------------------------------------------------------------

def flag_json(fm: fl.FlagMatroid) -> dict:
    return {"schema": "flag-matroid/1", "n": fm.n, "feasible": _mask_family(fm.feasible)}


def load_flag(doc: Any) -> fl.FlagMatroid:
    _require(doc, ("n", "feasible"), "flag matroid")
    return fl.flag_matroid(int(doc["n"]), [_int_list(s) for s in doc["feasible"]])


def load_raw_family(doc: Any) -> tuple[int, list[int]]:
    """Ground size and mask family without flag validation (for `axioms`)."""
    _require(doc, ("n", "feasible"), "set family")
    n = int(doc["n"])
    fam = [mask_of(_int_list(s)) for s in doc["feasible"]]
    if any(m >> n for m in fam):
        raise InvalidInput("feasible set outside the ground set")
    return n, fam


# --- matrices and representations ------------------------------------------------

def matrix_json(a: gl.GFMatrix) -> dict:
    return {
        "schema": "gf-matrix/1",
        "p": a.p,
        "rows": a.rows,
        "cols": a.cols,
        "entries": a.row_lists(),
    }


def load_matrix(doc: Any) -> gl.GFMatrix:
    _require(doc, ("p", "rows", "cols", "entries"), "matrix")
    entries = [_int_list(r) for r in doc["entries"]]
    if len(entries) != int(doc["rows"]) or any(
        len(r) != int(doc["cols"]) for r in entries
    ):
        raise InvalidInput("matrix: entries do not match the declared shape")
    return gl.matrix(int(doc["p"]), entries, cols=int(doc["cols"]))


def representation_json(rep: FlagRepresentation) -> dict:
    return {
        "schema": "flag-representation/1",
        "matrix": matrix_json(rep.matrix),
        "levels": list(rep.levels),
    }


def load_representation(doc: Any) -> FlagRepresentation:
    _require(doc, ("matrix", "levels"), "representation")
    return FlagRepresentation(load_matrix(doc["matrix"]), tuple(_int_list(doc["levels"])))


# --- majors and witnesses ----------------------------------------------------------

def major_json(major: MajorStructure) -> dict:
    doc = {
        "schema": "major/1",
        "matroid": matroid_json(major.matroid),
        "blocks": [list(b) for b in major.blocks],
    }
    if major.matrix is not None:
        doc["matrix"] = matrix_json(major.matrix)
    return doc


def load_major(doc: Any) -> MajorStructure:
    _require(doc, ("matroid", "blocks"), "major")
    matrix = load_matrix(doc["matrix"]) if "matrix" in doc else None
    return MajorStructure(
        load_matroid(doc["matroid"]),
        tuple(tuple(_int_list(b)) for b in doc["blocks"]),
        matrix=matrix,
    )


def witnesses_json(seq: LiftWitnessSequence) -> dict:
    return {
        "schema": "lift-witness-sequence/1",
        "witnesses": [
            {"matroid": matroid_json(q), "element": x} for q, x in seq.witnesses
        ],
    }


# --- graphs ---------------------------------------------------------------------

def graph_json(g: gr.MultiGraph, colors: Optional[dict] = None) -> dict:
    doc = {
        "schema": "multigraph/1",
        "vertices": g.vertices,
        "edges": [list(e) for e in g.edges],
    }
    if colors:
        doc["colors"] = {k: _int_list(v) for k, v in sorted(colors.items())}
    return doc


def load_graph(doc: Any) -> tuple[gr.MultiGraph, dict]:
    _require(doc, ("vertices", "edges"), "graph")
    g = gr.multigraph(int(doc["vertices"]), [_int_list(e) for e in doc["edges"]])
    colors = {k: _int_list(v) for k, v in doc.get("colors", {}).items()}
    return g, colors


def chain_json(chain: gr.PartitionChain) -> dict:
    return {
        "schema": "partition-chain/1",
        "partitions": [[list(cell) for cell in part] for part in chain.partitions],
    }


def load_chain(doc: Any, n: int) -> gr.PartitionChain:
    _require(doc, ("partitions",), "partition chain")
    return gr.chain_of(n, [[_int_list(c) for c in part] for part in doc["partitions"]])


def graphic_bundle_json(g: gr.MultiGraph, chain: gr.PartitionChain) -> dict:
    return {
        "schema": "graphic-flag/1",
        "graph": graph_json(g),
        "chain": chain_json(chain),
    }


def load_graphic_bundle(doc: Any) -> tuple[gr.MultiGraph, gr.PartitionChain]:
    _require(doc, ("graph", "chain"), "graphic bundle")
    g, _ = load_graph(doc["graph"])
    return g, load_chain(doc["chain"], g.vertices)


def config_json(cfg: gr.CounterexampleConfig) -> dict:
    return {
        "schema": "counterexample-config/1",
        "bottom": graph_json(cfg.bottom),
        "middle": graph_json(cfg.middle, {"red": cfg.middle_reds}),
        "top_merged": graph_json(cfg.top_merged, {"yellow": cfg.top_merged_yellows}),
        "top": graph_json(cfg.top, {"red": cfg.top_reds}),
        "bb_pair": list(cfg.bb_pair),
        "rb_pair": list(cfg.rb_pair),
    }


def load_config(doc: Any) -> gr.CounterexampleConfig:
    _require(
        doc, ("bottom", "middle", "top_merged", "top", "bb_pair", "rb_pair"), "config"
    )
    bottom, _ = load_graph(doc["bottom"])
    middle, mid_colors = load_graph(doc["middle"])
    top_merged, merged_colors = load_graph(doc["top_merged"])
    top, top_colors = load_graph(doc["top"])
    for name, colors in (("middle", mid_colors), ("top", top_colors)):
        if len(colors.get("red", ())) != 2:
            raise InvalidInput(f"config: {name} graph needs exactly two red vertices")
    return gr.CounterexampleConfig(
        bottom=bottom,
        middle=middle,
        middle_reds=tuple(mid_colors["red"]),
        top_merged=top_merged,
        top_merged_yellows=tuple(merged_colors.get("yellow", (0, 0))),
        top=top,
        top_reds=tuple(top_colors["red"]),
        bb_pair=tuple(_int_list(doc["bb_pair"])),
        rb_pair=tuple(_int_list(doc["rb_pair"])),
    )


# --- certificates ------------------------------------------------------------------

def representation_certificate(fm: fl.FlagMatroid, rep: FlagRepresentation) -> dict:
    return {
        "schema": "certificate/representation/1",
        "p": rep.p,
        "flag": flag_json(fm),
        "matrix": matrix_json(rep.matrix),
        "levels": list(rep.levels),
    }


def forbidden_minor_certificate(
    p: int, fm: fl.FlagMatroid, witness: ForbiddenMinorWitness
) -> dict:
    return {
        "schema": "certificate/forbidden-minor/1",
        "p": p,
        "flag": flag_json(fm),
        "target_name": witness.target_name,
        "target": flag_json(witness.target),
        "contract": list(witness.contract),
        "delete": list(witness.delete),
        "chops": list(witness.chops),
        "bijection": list(witness.bijection),
    }


# --- generic loading -----------------------------------------------------------------

_LOADERS = {
    "matroid/1": ("matroid", load_matroid),
    "flag-matroid/1": ("flag", load_flag),
    "gf-matrix/1": ("matrix", load_matrix),
    "flag-representation/1": ("representation", load_representation),
    "major/1": ("major", load_major),
    "multigraph/1": ("graph", lambda d: load_graph(d)[0]),
    "graphic-flag/1": ("graphic-bundle", load_graphic_bundle),
    "counterexample-config/1": ("config", load_config),
}


def load_by_kind(kind: str, doc: Any):
    for name, fn in _LOADERS.values():
        if name == kind:
            return fn(doc)
    raise InvalidInput(f"no loader for kind {kind!r}")


def detect_kind(doc: Any) -> str:
    if isinstance(doc, dict) and "schema" in doc:
        schema = doc["schema"]
        if schema in _LOADERS:
            return _LOADERS[schema][0]
        if schema == "certificate/representation/1":
            return "certificate-representation"
        if schema == "certificate/forbidden-minor/1":
            return "certificate-forbidden-minor"
        if schema == "partition-chain/1":
            return "chain"
        raise InvalidInput(f"unknown schema {schema!r}")
    if isinstance(doc, dict):
        if "bases" in doc:
            return "matroid"
        if "feasible" in doc:
            return "flag"
        if "entries" in doc:
            return "matrix"
        if "levels" in doc and "matrix" in doc:
            return "representation"
        if "graph" in doc and "chain" in doc:
            return "graphic-bundle"
        if "edges" in doc:
            return "graph"
    raise InvalidInput("cannot determine document kind")
