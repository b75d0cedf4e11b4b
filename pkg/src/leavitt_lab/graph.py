"""Finite presentations of countable directed graphs and their classification.

A graph is given by finite vertex/edge lists plus ``omega`` pairs, each pair
(src, dst) standing for countably many parallel edges src -> dst.  The k-th
parallel edge of a pair is addressable on demand under the id ``src~dst^k``.
Vertices and edges iterate in input order; every operation here is a pure
function of immutable values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional, Union

from .errors import (
    EmptyGraph,
    FormatError,
    FrontierPresent,
    OmegaUnsupported,
    UnknownVertex,
)


def omega_edge_id(src: str, dst: str, k: int) -> str:
    """Id of the k-th (k >= 1) parallel edge of the omega pair (src, dst)."""
    return f"{src}~{dst}^{k}"


def omega_exit_marker(src: str, dst: str) -> str:
    """Marker standing in for the countably many exits an omega pair provides."""
    return f"ω({src}->{dst})"


@dataclass(frozen=True, slots=True)
class Edge:
    id: str
    src: str
    dst: str


@dataclass(frozen=True, slots=True)
class Path:
    """A finite path: a source vertex plus a composable edge-id sequence.

    Length-0 paths carry only their vertex.  Paths compare and hash by value;
    the edge sequence determines the path whenever it is nonempty.
    """

    source: str
    edges: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        if not self.edges:
            return f"<{self.source}>"
        return "<" + "·".join(self.edges) + ">"


@dataclass(frozen=True)
class Graph:
    """Immutable directed multigraph with optional omega (countable) edge families."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    omega_pairs: tuple[tuple[str, str], ...] = ()
    frontier: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        seen: list[tuple[str, str]] = []
        for pair in self.omega_pairs:
            pair = (pair[0], pair[1])
            if pair not in seen:
                seen.append(pair)
        object.__setattr__(self, "omega_pairs", tuple(seen))
        object.__setattr__(self, "frontier", frozenset(self.frontier))
        self._validate()

    def _validate(self) -> None:
        vset = set()
        for v in self.vertices:
            if v in vset:
                raise ValueError(f"duplicate vertex id {v!r}")
            vset.add(v)
        eset = set()
        for e in self.edges:
            if e.id in eset:
                raise ValueError(f"duplicate edge id {e.id!r}")
            eset.add(e.id)
            if e.src not in vset or e.dst not in vset:
                raise ValueError(f"edge {e.id!r} has an endpoint outside the vertex list")
        for src, dst in self.omega_pairs:
            if src not in vset or dst not in vset:
                raise ValueError(f"omega pair ({src!r}, {dst!r}) has an endpoint outside the vertex list")
        for e in self.edges:
            if self._parse_omega_id(e.id) is not None:
                raise ValueError(f"edge id {e.id!r} collides with a generated omega edge id")
        if not self.frontier <= vset:
            raise ValueError("frontier vertices must be listed vertices")

    # -- derived lookup tables ------------------------------------------------

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[Edge, ...]]:
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.dst].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def omega_by_src(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for src, dst in self.omega_pairs:
            out[src].append(dst)
        return {v: tuple(ds) for v, ds in out.items()}

    @cached_property
    def omega_by_dst(self) -> dict[str, tuple[str, ...]]:
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for src, dst in self.omega_pairs:
            inc[dst].append(src)
        return {v: tuple(ss) for v, ss in inc.items()}

    @cached_property
    def designated_edge(self) -> dict[str, str]:
        """Lexicographically least outgoing edge id of each regular vertex."""
        return {
            v: min(e.id for e in self.out_edges[v])
            for v in self.vertices
            if self.is_regular(v)
        }

    @cached_property
    def designated_ids(self) -> frozenset[str]:
        return frozenset(self.designated_edge.values())

    # -- vertex kinds ----------------------------------------------------------

    def is_infinite_emitter(self, v: str) -> bool:
        return bool(self.omega_by_src.get(v, ()))

    def is_sink(self, v: str) -> bool:
        return not self.out_edges.get(v, ()) and not self.is_infinite_emitter(v)

    def is_regular(self, v: str) -> bool:
        return bool(self.out_edges.get(v, ())) and not self.is_infinite_emitter(v)

    def is_source(self, v: str) -> bool:
        return not self.in_edges.get(v, ()) and not self.omega_by_dst.get(v, ())

    @property
    def is_row_finite(self) -> bool:
        return not self.omega_pairs

    def require_vertex(self, v: str) -> None:
        if v not in self.out_edges:
            raise UnknownVertex(f"vertex {v!r} is not in the graph")

    # -- edge resolution (explicit ids and generated omega ids) ----------------

    def _parse_omega_id(self, edge_id: str) -> Optional[tuple[str, str, int]]:
        for src, dst in self.omega_pairs:
            prefix = f"{src}~{dst}^"
            if edge_id.startswith(prefix):
                tail = edge_id[len(prefix):]
                if tail.isdigit() and not tail.startswith("0"):
                    return src, dst, int(tail)
        return None

    def edge_endpoints(self, edge_id: str) -> tuple[str, str]:
        """(source, range) of an explicit or generated omega edge id."""
        e = self.edge_by_id.get(edge_id)
        if e is not None:
            return e.src, e.dst
        parsed = self._parse_omega_id(edge_id)
        if parsed is not None:
            return parsed[0], parsed[1]
        raise ValueError(f"unknown edge id {edge_id!r}")

    # -- paths ------------------------------------------------------------------

    def path(self, source: str, edges: Iterable[str] = ()) -> Path:
        """Validated path constructor; raises ValueError on a non-composable sequence."""
        self.require_vertex(source)
        at = source
        edges = tuple(edges)
        for eid in edges:
            src, dst = self.edge_endpoints(eid)
            if src != at:
                raise ValueError(f"edge {eid!r} does not depart {at!r}")
            at = dst
        return Path(source, edges)

    def range_of(self, p: Path) -> str:
        if not p.edges:
            return p.source
        return self.edge_endpoints(p.edges[-1])[1]

    def concat(self, p: Path, q: Path) -> Optional[Path]:
        """Concatenation p·q, or None when ranges and sources do not match."""
        if self.range_of(p) != q.source:
            return None
        return Path(p.source, p.edges + q.edges)

    def path_ge(self, p: Path, q: Path) -> bool:
        """Path order: p >= q iff q = p·t for some path t."""
        return (
            q.source == p.source
            and len(q.edges) >= len(p.edges)
            and q.edges[: len(p.edges)] == p.edges
        )

    def path_power(self, p: Path, k: int) -> Path:
        if k < 0:
            raise ValueError("path powers need k >= 0")
        if k > 0 and self.range_of(p) != p.source:
            raise ValueError("only closed paths can be iterated")
        return Path(p.source, p.edges * k)


# ---------------------------------------------------------------------------
# vertex partition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexClasses:
    sinks: tuple[str, ...]
    infinite_emitters: tuple[str, ...]
    regular: tuple[str, ...]


def classify_vertices(g: Graph) -> VertexClasses:
    """Partition the vertices into sinks, infinite emitters and regular vertices."""
    return VertexClasses(
        sinks=tuple(v for v in g.vertices if g.is_sink(v)),
        infinite_emitters=tuple(v for v in g.vertices if g.is_infinite_emitter(v)),
        regular=tuple(v for v in g.vertices if g.is_regular(v)),
    )


# ---------------------------------------------------------------------------
# path enumeration
# ---------------------------------------------------------------------------


def enumerate_paths(g: Graph, n: int, end: Optional[str] = None) -> list[Path]:
    """All paths of length n (optionally with range ``end``), lexicographic by edge ids.

    Length-0 paths are the vertices, in input order.  Graphs with omega pairs
    only admit n = 0, since longer enumerations would be infinite.
    """
    if n < 0:
        raise ValueError("path length must be >= 0")
    if end is not None:
        g.require_vertex(end)
    if n == 0:
        return [Path(v) for v in g.vertices if end is None or v == end]
    if g.omega_pairs:
        raise OmegaUnsupported("path enumeration of positive length needs a row-finite finite graph")
    level: list[tuple[str, tuple[str, ...]]] = [(v, ()) for v in g.vertices]
    for _ in range(n):
        nxt = []
        for src, edges in level:
            at = g.edge_endpoints(edges[-1])[1] if edges else src
            for e in g.out_edges[at]:
                nxt.append((src, edges + (e.id,)))
        level = nxt
    paths = [Path(src, edges) for src, edges in level]
    if end is not None:
        paths = [p for p in paths if g.range_of(p) == end]
    paths.sort(key=lambda p: p.edges)
    return paths


def paths_into(g: Graph, v: str, max_length: int) -> list[Path]:
    """Paths of every length <= max_length with range v, ordered by (length, lex)."""
    out: list[Path] = []
    for r in range(max_length + 1):
        out.extend(enumerate_paths(g, r, end=v))
    return out


# ---------------------------------------------------------------------------
# cycles
# ---------------------------------------------------------------------------


def _cycle_alphabet(g: Graph) -> dict[str, list[tuple[str, str]]]:
    """Outgoing (edge id, dst) per vertex, with one representative per omega pair."""
    out: dict[str, list[tuple[str, str]]] = {v: [] for v in g.vertices}
    for e in g.edges:
        out[e.src].append((e.id, e.dst))
    for src, dst in g.omega_pairs:
        out[src].append((omega_edge_id(src, dst, 1), dst))
    for v in out:
        out[v].sort()
    return out


def _canonical_rotation(edges: tuple[str, ...]) -> tuple[str, ...]:
    return min(edges[i:] + edges[:i] for i in range(len(edges)))


def find_cycles(g: Graph) -> list[tuple[Path, tuple[str, ...]]]:
    """All cycles up to rotation, each with its complete exit list.

    Cycles are returned in canonical rotation (lexicographically least edge
    sequence) and sorted by that sequence.  When the graph has omega pairs,
    one representative per parallel family (the ^1 edge) is enumerated and
    omega exits appear as ``ω(src->dst)`` markers.
    """
    alphabet = _cycle_alphabet(g)
    found: set[tuple[str, ...]] = set()

    def walk(start: str, at: str, edges: list[str], sources: set[str]) -> None:
        for eid, dst in alphabet[at]:
            if dst == start:
                found.add(_canonical_rotation(tuple(edges + [eid])))
            if dst not in sources and dst != start:
                sources.add(dst)
                edges.append(eid)
                walk(start, dst, edges, sources)
                edges.pop()
                sources.remove(dst)

    for v in g.vertices:
        walk(v, v, [], {v})

    result = []
    for edges in sorted(found):
        source = g.edge_endpoints(edges[0])[0]
        cycle = Path(source, edges)
        exits: list[str] = []
        for eid in edges:
            u = g.edge_endpoints(eid)[0]
            for e in sorted(g.out_edges[u], key=lambda e: e.id):
                if e.id != eid:
                    exits.append(e.id)
            for dst in sorted(g.omega_by_src[u]):
                exits.append(omega_exit_marker(u, dst))
        result.append((cycle, tuple(exits)))
    return result


def cycle_base_vertices(g: Graph) -> frozenset[str]:
    """Vertices lying on at least one cycle."""
    bases: set[str] = set()
    for cycle, _ in find_cycles(g):
        for eid in cycle.edges:
            bases.add(g.edge_endpoints(eid)[0])
    return frozenset(bases)


# ---------------------------------------------------------------------------
# hereditary saturated closure and the classifier
# ---------------------------------------------------------------------------


def hereditary_saturated_closure(g: Graph, seed: Iterable[str]) -> frozenset[str]:
    """Smallest hereditary and saturated vertex set containing the seed.

    Hereditary: ranges of outgoing edges (omega pairs included) stay inside.
    Saturated: a regular vertex all of whose edge ranges lie inside is pulled in.
    """
    closure = set()
    for v in seed:
        g.require_vertex(v)
        closure.add(v)
    changed = True
    while changed:
        changed = False
        for v in list(closure):
            for e in g.out_edges[v]:
                if e.dst not in closure:
                    closure.add(e.dst)
                    changed = True
            for dst in g.omega_by_src[v]:
                if dst not in closure:
                    closure.add(dst)
                    changed = True
        for v in g.vertices:
            if v in closure or not g.is_regular(v):
                continue
            if all(e.dst in closure for e in g.out_edges[v]):
                closure.add(v)
                changed = True
    return frozenset(closure)


def reachable_from(g: Graph, start: str) -> frozenset[str]:
    """Vertices reachable from ``start`` by paths (omega pairs traversed)."""
    g.require_vertex(start)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for e in g.out_edges[v]:
            if e.dst not in seen:
                seen.add(e.dst)
                stack.append(e.dst)
        for dst in g.omega_by_src[v]:
            if dst not in seen:
                seen.add(dst)
                stack.append(dst)
    return frozenset(seen)


def is_cycle_cofinal(g: Graph) -> bool:
    """Cofinality relative to cycles: every vertex reaches every cycle.

    This is vacuously true for acyclic graphs, which is why the classifier
    below decides simplicity through hereditary saturated sets instead.
    """
    cycles = find_cycles(g)
    if not cycles:
        return True
    cycle_vertex_sets = [
        {g.edge_endpoints(eid)[0] for eid in cycle.edges} for cycle, _ in cycles
    ]
    for v in g.vertices:
        reach = reachable_from(g, v)
        if any(not (reach & cvs) for cvs in cycle_vertex_sets):
            return False
    return True


class Verdict(Enum):
    NOT_SIMPLE = "NotSimple"
    SIMPLE_ACYCLIC = "SimpleAcyclic"
    SIMPLE_PURELY_INFINITE = "SimplePurelyInfinite"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    witness: Union[Path, frozenset[str], str]


def classify_graph(g: Graph, frontier: str = "refuse") -> Classification:
    """Decide the NotSimple / SimpleAcyclic / SimplePurelyInfinite trichotomy.

    Simplicity is decided as: every cycle has an exit, and the only hereditary
    saturated vertex sets are the empty and the full one (checked from every
    singleton seed).  The witness is a cycle without exit or a proper nontrivial
    hereditary saturated set for NotSimple, a cycle for SimplePurelyInfinite,
    and the token "acyclic" otherwise.

    ``frontier`` controls graphs carrying desingularization truncation markers:
    "refuse" raises, "sink" classifies with frontier vertices understood as
    truncation stubs (they are kept in the graph but not used as closure seeds,
    since in the untruncated graph their tails continue).
    """
    if not g.vertices:
        raise EmptyGraph("cannot classify the empty graph")
    if g.frontier:
        if frontier == "refuse":
            raise FrontierPresent(
                "graph has truncation-frontier vertices; classify with frontier='sink' to treat them as stubs"
            )
        if frontier != "sink":
            raise ValueError("frontier must be 'refuse' or 'sink'")

    cycles = find_cycles(g)
    for cycle, exits in cycles:
        if not exits:
            return Classification(Verdict.NOT_SIMPLE, cycle)

    full = frozenset(g.vertices)
    for v in g.vertices:
        if v in g.frontier:
            continue
        closure = hereditary_saturated_closure(g, [v])
        if closure != full:
            return Classification(Verdict.NOT_SIMPLE, closure)

    if cycles:
        return Classification(Verdict.SIMPLE_PURELY_INFINITE, cycles[0][0])
    return Classification(Verdict.SIMPLE_ACYCLIC, "acyclic")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def graph_to_json_obj(g: Graph) -> dict:
    vertices: list = []
    for v in g.vertices:
        if v in g.frontier:
            vertices.append({"id": v, "frontier": True})
        else:
            vertices.append(v)
    obj: dict = {
        "vertices": vertices,
        "edges": [{"id": e.id, "src": e.src, "dst": e.dst} for e in g.edges],
    }
    if g.omega_pairs:
        obj["omega"] = [{"src": s, "dst": d} for s, d in g.omega_pairs]
    return obj


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_json_obj(g), separators=(",", ":"), ensure_ascii=False)


def graph_from_json_obj(obj) -> Graph:
    if not isinstance(obj, dict):
        raise FormatError("graph JSON must be an object")
    try:
        vertices = []
        frontier = []
        for entry in obj["vertices"]:
            if isinstance(entry, str):
                vertices.append(entry)
            else:
                vertices.append(entry["id"])
                if entry.get("frontier"):
                    frontier.append(entry["id"])
        edges = [Edge(e["id"], e["src"], e["dst"]) for e in obj.get("edges", [])]
        omega = [(o["src"], o["dst"]) for o in obj.get("omega", [])]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad graph JSON: {exc}") from exc
    unknown = set(obj) - {"vertices", "edges", "omega"}
    if unknown:
        raise FormatError(f"unknown graph JSON fields: {sorted(unknown)}")
    try:
        return Graph(tuple(vertices), tuple(edges), tuple(omega), frozenset(frontier))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def graph_from_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return graph_from_json_obj(obj)


def graph_to_dot(g: Graph) -> str:
    """One digraph; edge labels are edge ids, omega pairs are dashed with label ω."""
    lines = ["digraph G {"]
    for v in g.vertices:
        attrs = ' [peripheries=2]' if v in g.frontier else ""
        lines.append(f'  "{v}"{attrs};')
    for e in g.edges:
        lines.append(f'  "{e.src}" -> "{e.dst}" [label="{e.id}"];')
    for src, dst in g.omega_pairs:
        lines.append(f'  "{src}" -> "{dst}" [label="ω", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
