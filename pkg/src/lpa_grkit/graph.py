"""Finite directed multigraphs.

A graph is a list of vertex names in declaration order plus a list of
named edges. Parallel edges and loops are allowed. The declaration order
fixes the row and column order of every matrix built from the graph.

Text format::

    # the Leavitt algebra L(1,2)
    vertex v
    edge e1 v v
    edge e2 v v

JSON format (used when the file name ends in ``.json``)::

    {"vertices": ["v"], "edges": [["e1", "v", "v"], ["e2", "v", "v"]]}
"""

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path as FsPath


class GraphError(ValueError):
    """Raised for malformed or inconsistent graph data."""


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    range: str


@dataclass(frozen=True)
class Path:
    """A path given by its edge sequence. The empty path sits at a vertex."""

    edges: tuple
    source: str
    range: str

    @property
    def length(self):
        return len(self.edges)


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "edges", tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        )
        seen = set()
        for v in self.vertices:
            if not isinstance(v, str) or not v:
                raise GraphError(f"bad vertex identifier {v!r}")
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            seen.add(v)
        edge_ids = set()
        for e in self.edges:
            if e.id in edge_ids:
                raise GraphError(f"duplicate edge {e.id!r}")
            edge_ids.add(e.id)
            for end in (e.source, e.range):
                if end not in seen:
                    raise GraphError(f"edge {e.id!r} uses undeclared vertex {end!r}")

    @cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _out(self):
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def _in(self):
        inc = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.range].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def out_edges(self, v):
        return self._out[v]

    def in_edges(self, v):
        return self._in[v]

    def successors(self, v):
        """Ranges of the edges leaving v, with multiplicity."""
        return [e.range for e in self._out[v]]

    def __len__(self):
        return len(self.vertices)


def parse_graph(text):
    """Parse the line-based text format."""
    vertices, edges, where = [], [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "edge" and len(parts) == 4:
            edges.append(Edge(*parts[1:]))
            where.setdefault(parts[1], lineno)
        else:
            raise GraphError(f"line {lineno}: cannot parse {raw.strip()!r}")
    declared = set(vertices)
    for e in edges:
        for v in (e.source, e.range):
            if v not in declared:
                raise GraphError(f"line {where[e.id]}: edge {e.id!r} uses undeclared vertex {v!r}")
    return Graph(vertices, edges)


def parse_graph_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "vertices" not in data:
        raise GraphError("JSON graph needs a 'vertices' list")
    edges = []
    for item in data.get("edges", []):
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            raise GraphError(f"bad edge entry {item!r}")
        edges.append(Edge(*(str(x) for x in item)))
    return Graph([str(v) for v in data["vertices"]], edges)


def load_graph(path):
    path = FsPath(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        return parse_graph_json(text)
    return parse_graph(text)


def format_graph(g):
    """Inverse of parse_graph."""
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.id} {e.source} {e.range}" for e in g.edges]
    return "\n".join(lines) + "\n"


def sinks(g):
    return frozenset(v for v in g.vertices if not g.out_edges(v))


def reachable_from(g, v):
    """All w with v >= w, v included."""
    seen = {v}
    stack = [v]
    while stack:
        for w in g.successors(stack.pop()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def ancestors(g, v):
    """All u with u >= v, v included."""
    seen = {v}
    stack = [v]
    while stack:
        for e in g.in_edges(stack.pop()):
            if e.source not in seen:
                seen.add(e.source)
                stack.append(e.source)
    return frozenset(seen)


def _has_cycle(g, allowed):
    # Kahn's algorithm restricted to the vertices in `allowed`
    indeg = {v: 0 for v in allowed}
    for e in g.edges:
        if e.source in allowed and e.range in allowed:
            indeg[e.range] += 1
    queue = [v for v, d in indeg.items() if d == 0]
    removed = 0
    while queue:
        v = queue.pop()
        removed += 1
        for w in g.successors(v):
            if w in allowed:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
    return removed < len(allowed)


def is_acyclic(g):
    return not _has_cycle(g, set(g.vertices))


def _check_no_cycle_above(g, v):
    if _has_cycle(g, ancestors(g, v)):
        raise GraphError(f"a cycle reaches {v!r}; its set of incoming paths is infinite")


def path_length_counts(g, v):
    """Counter {length: number of paths of that length ending at v}."""
    _check_no_cycle_above(g, v)
    memo = {}

    def counts(w):
        if w not in memo:
            c = Counter({0: 1})
            for e in g.in_edges(w):
                for length, k in counts(e.source).items():
                    c[length + 1] += k
            memo[w] = c
        return memo[w]

    return Counter(counts(v))


def path_lengths(g, v):
    """Sorted tuple of lengths of all paths ending at v."""
    c = path_length_counts(g, v)
    return tuple(length for length in sorted(c) for _ in range(c[length]))


def paths_into(g, v):
    """All paths with range v, the trivial one first."""
    _check_no_cycle_above(g, v)
    memo = {}

    def build(w):
        if w not in memo:
            out = [Path((), w, w)]
            for e in g.in_edges(w):
                for p in build(e.source):
                    out.append(Path(p.edges + (e.id,), p.source, w))
            memo[w] = out
        return memo[w]

    return list(build(v))


def simple_cycles(g):
    """Every cycle once, starting at its vertex of least declaration index.

    A cycle is an edge sequence returning to its start with pairwise distinct
    sources. Parallel edges give distinct cycles and a loop is a cycle of
    length one.
    """
    idx = g.index
    found = []
    for start in g.vertices:
        lo = idx[start]

        def extend(v, trail, visited):
            for e in g.out_edges(v):
                w = e.range
                if w == start:
                    found.append(Path(trail + (e.id,), start, start))
                elif idx[w] > lo and w not in visited:
                    extend(w, trail + (e.id,), visited | {w})

        extend(start, (), frozenset([start]))
    return found


def cycle_vertices(g, cycle):
    """Sources of the edges of a cycle, in order."""
    by_id = {e.id: e for e in g.edges}
    return tuple(by_id[eid].source for eid in cycle.edges)


def weak_components(g):
    """Weakly connected components as tuples, in declaration order."""
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        a, b = find(e.source), find(e.range)
        if a != b:
            parent[max(a, b, key=g.index.get)] = min(a, b, key=g.index.get)
    groups = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    return [tuple(vs) for vs in groups.values()]


DEFAULT_SUBSET_CAP = 20


def is_hereditary(g, H):
    return all(w in H for v in H for w in g.successors(v))


def is_saturated(g, H):
    for v in g.vertices:
        succ = g.successors(v)
        if v not in H and succ and all(w in H for w in succ):
            return False
    return True


def hereditary_saturated_sets(g, cap=DEFAULT_SUBSET_CAP):
    """All hereditary saturated vertex sets, by checking every subset.

    Sets are bitmasks internally; the result is sorted by size and then by
    declaration order.
    """
    n = len(g.vertices)
    if n > cap:
        raise GraphError(f"{n} vertices exceeds the subset enumeration cap of {cap}")
    idx = g.index
    succ = [0] * n
    for e in g.edges:
        succ[idx[e.source]] |= 1 << idx[e.range]
    full = (1 << n) - 1
    result = []
    for mask in range(1 << n):
        outside = full & ~mask
        ok = True
        for i in range(n):
            bit = 1 << i
            if mask & bit:
                if succ[i] & outside:
                    ok = False
                    break
            elif succ[i] and not succ[i] & outside:
                ok = False
                break
        if ok:
            result.append(frozenset(g.vertices[i] for i in range(n) if mask >> i & 1))
    result.sort(key=lambda H: (len(H), sorted(idx[v] for v in H)))
    return result
