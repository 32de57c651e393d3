"""Polycephaly graphs and their block decomposition.

A polycephaly graph is one where every cycle and every rose is exit free.
Its heads are the sinks, the exit-free cycles (comets) and the vertices
carrying two or more loops and nothing else (roses). Removing one edge from
each comet cycle and all rose loops leaves an acyclic graph E1, and the
algebra splits into one graded matrix block per head, sized by the paths of
E1 that end at the head vertex.
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from .graph import (
    Graph,
    GraphError,
    cycle_vertices,
    is_acyclic,
    path_lengths,
    reachable_from,
    simple_cycles,
    weak_components,
)


class HeadKind(str, Enum):
    SINK = "AcyclicSink"
    COMET = "Comet"
    ROSE = "Rose"


@dataclass(frozen=True)
class Head:
    """One head of a polycephaly graph.

    ``vertex`` is the sink, the rose vertex or the chosen comet base.
    ``cycle`` lists the comet cycle vertices starting at the base.
    ``lengths`` is the sorted multiset of lengths of paths in E1 ending at
    ``vertex``.
    """

    kind: HeadKind
    vertex: str
    lengths: tuple
    cycle: tuple = ()
    petals: int = 0
    component: int = 0

    @property
    def cycle_length(self):
        return len(self.cycle)

    @property
    def size(self):
        return len(self.lengths)

    def to_json(self):
        out = {"kind": self.kind.value, "vertex": self.vertex,
               "lengths": list(self.lengths), "component": self.component}
        if self.kind is HeadKind.COMET:
            out["cycle"] = list(self.cycle)
        if self.kind is HeadKind.ROSE:
            out["petals"] = self.petals
        return out


class Reason(str, Enum):
    CYCLE_WITH_EXIT = "cycle has exit"
    ROSE_WITH_EXIT = "rose has exit"
    OVERLAPPING_CYCLES = "overlapping cycles"
    NO_HEAD = "vertex reaches no head"


@dataclass(frozen=True)
class NotPolycephaly:
    reason: Reason
    detail: str = ""

    def __str__(self):
        return f"not a polycephaly graph: {self.reason.value}" + (
            f" ({self.detail})" if self.detail else "")

    def to_json(self):
        return {"reason": self.reason.value, "detail": self.detail}


@dataclass(frozen=True)
class PolycephalyDecomposition:
    graph: Graph
    heads: tuple
    reduced_graph: Graph = field(repr=False)


def _find_heads(g):
    """Head skeletons (no lengths yet) or a NotPolycephaly value."""
    loops = Counter(e.source for e in g.edges if e.source == e.range)
    roses = []
    for v in g.vertices:
        if loops[v] >= 2:
            others = [e.id for e in g.out_edges(v) if e.range != v]
            if others:
                return NotPolycephaly(Reason.ROSE_WITH_EXIT,
                                      f"vertex {v} has loops and also edge {others[0]}")
            roses.append(v)
    rose_set = set(roses)

    comets = []
    on_cycle = {}
    for cyc in simple_cycles(g):
        verts = cycle_vertices(g, cyc)
        if verts[0] in rose_set:
            continue
        used = set(cyc.edges)
        for v in verts:
            exits = [e for e in g.out_edges(v) if e.id not in used]
            if exits:
                e = exits[0]
                detail = f"edge {e.id} leaves the cycle through {v}"
                if any(w in on_cycle for w in verts):
                    detail += "; the cycle shares a vertex with another cycle"
                return NotPolycephaly(Reason.CYCLE_WITH_EXIT, detail)
        for v in verts:
            if v in on_cycle:
                # only reachable if two exit-free cycles met, which cannot happen
                return NotPolycephaly(Reason.OVERLAPPING_CYCLES, f"vertex {v}")
            on_cycle[v] = len(comets)
        comets.append(verts)

    head_vertices = set(rose_set) | set(on_cycle)
    head_vertices |= {v for v in g.vertices if not g.out_edges(v)}
    for v in g.vertices:
        if not reachable_from(g, v) & head_vertices:
            return NotPolycephaly(Reason.NO_HEAD, f"vertex {v}")
    return roses, comets


def classify(g, bases=()):
    """Decompose g, or say why it is not a polycephaly graph.

    Each comet uses as base its cycle vertex of least declaration index,
    unless one of its vertices appears in ``bases``.
    """
    found = _find_heads(g)
    if isinstance(found, NotPolycephaly):
        return found
    roses, comets = found
    bases = set(bases)
    idx = g.index

    comp_of = {}
    for k, comp in enumerate(weak_components(g)):
        for v in comp:
            comp_of[v] = k

    skeleton = []
    for v in g.vertices:
        if not g.out_edges(v):
            skeleton.append((idx[v], HeadKind.SINK, v, (), 0))
        elif v in roses:
            skeleton.append((idx[v], HeadKind.ROSE, v, (), len(g.out_edges(v))))
    for verts in comets:
        chosen = [v for v in verts if v in bases]
        base = chosen[0] if chosen else min(verts, key=idx.get)
        k = verts.index(base)
        rotated = verts[k:] + verts[:k]
        skeleton.append((min(idx[v] for v in verts), HeadKind.COMET, base, rotated, 0))
    skeleton.sort(key=lambda s: s[0])

    reduced = reduce_to_e1(g, [(kind, v, cyc) for _, kind, v, cyc, _ in skeleton])
    heads = tuple(
        Head(kind, v, path_lengths(reduced, v), cyc, petals, comp_of[v])
        for _, kind, v, cyc, petals in skeleton
    )
    return PolycephalyDecomposition(g, heads, reduced)


def reduce_to_e1(g, heads):
    """Drop the comet edges leaving each base vertex and all rose loops.

    ``heads`` may be Head objects or (kind, vertex, cycle) triples.
    """
    drop = set()
    for h in heads:
        kind, v, cyc = (h.kind, h.vertex, h.cycle) if isinstance(h, Head) else h
        if kind is HeadKind.ROSE:
            drop |= {e.id for e in g.out_edges(v)}
        elif kind is HeadKind.COMET:
            nxt = cyc[1] if len(cyc) > 1 else cyc[0]
            leaving = [e for e in g.out_edges(v) if e.range == nxt]
            if len(leaving) != 1:
                raise GraphError(f"comet base {v} does not have a unique cycle edge")
            drop.add(leaving[0].id)
    reduced = Graph(g.vertices, [e for e in g.edges if e.id not in drop])
    if not is_acyclic(reduced):
        raise RuntimeError("reduced graph still has a cycle; classification is inconsistent")
    return reduced


@dataclass(frozen=True)
class BlockDescriptor:
    """M_size(ring)(shifts) with ring K, K[x^m,x^-m] or L(1,n)."""

    kind: HeadKind
    size: int
    shifts: tuple
    period: int = 0
    petals: int = 0
    vertex: str = ""
    component: int = 0

    @property
    def ring(self):
        if self.kind is HeadKind.SINK:
            return "K"
        if self.kind is HeadKind.ROSE:
            return f"L(1,{self.petals})"
        if self.period == 1:
            return "K[x,x^-1]"
        return f"K[x^{self.period},x^-{self.period}]"

    def __str__(self):
        return f"M_{self.size}({self.ring})({','.join(map(str, self.shifts))})"

    def to_json(self):
        return {"kind": self.kind.value, "ring": self.ring, "size": self.size,
                "shifts": list(self.shifts), "vertex": self.vertex,
                "component": self.component}


def decomposition_report(d):
    return [
        BlockDescriptor(h.kind, h.size, h.lengths, h.cycle_length, h.petals,
                        h.vertex, h.component)
        for h in d.heads
    ]


def format_report(blocks):
    return " ⊕ ".join(str(b) for b in blocks) if blocks else "0"
