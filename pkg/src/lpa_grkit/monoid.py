"""The graph monoid and bounded searches in it.

The graph monoid is the free commutative monoid on the vertices modulo
v = r(e_1) + ... + r(e_k), where e_1..e_k are the edges leaving the
non-sink v. Elements are multisets of vertices, stored as tuples of
multiplicities in declaration order.
"""

import os
from collections import deque
from dataclasses import dataclass
from enum import Enum

from .graph import GraphError, is_hereditary, is_saturated
from .intlin import FinAbGroup, IntMatrix, invariant_factors_by_minors

DEFAULT_BUDGET = 10 ** 5


def default_budget():
    """The search budget, overridable through LPA_GRKIT_BUDGET."""
    raw = os.environ.get("LPA_GRKIT_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"LPA_GRKIT_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("LPA_GRKIT_BUDGET must be positive")
    return value


@dataclass(frozen=True)
class MonoidElement:
    counts: tuple

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        if any(c < 0 for c in self.counts):
            raise ValueError("multiplicities must be nonnegative")

    @classmethod
    def of(cls, g, vertices):
        counts = [0] * len(g.vertices)
        for v in vertices:
            if v not in g.index:
                raise GraphError(f"unknown vertex {v!r}")
            counts[g.index[v]] += 1
        return cls(tuple(counts))

    @classmethod
    def parse(cls, g, text):
        """Read 'u+v+v' (or '0' for the empty multiset)."""
        text = text.strip()
        if text in ("", "0"):
            return cls((0,) * len(g.vertices))
        return cls.of(g, [t.strip() for t in text.split("+")])

    def format(self, g):
        parts = [v for v, c in zip(g.vertices, self.counts) for _ in range(c)]
        return "+".join(parts) if parts else "0"

    def support(self, g):
        return frozenset(v for v, c in zip(g.vertices, self.counts) if c)


def _rhs(g, v):
    counts = [0] * len(g.vertices)
    for w in g.successors(v):
        counts[g.index[w]] += 1
    return counts


def rewrite_step(g, m, v, direction="forward"):
    """Replace one v by the ranges of its edges, or undo such a replacement."""
    i = g.index[v]
    if not g.out_edges(v):
        raise GraphError(f"{v!r} is a sink and cannot be rewritten")
    rhs = _rhs(g, v)
    c = list(m.counts)
    if direction == "forward":
        if c[i] < 1:
            raise GraphError(f"{v!r} does not occur in the element")
        c[i] -= 1
        c = [a + b for a, b in zip(c, rhs)]
    elif direction == "backward":
        if any(a < b for a, b in zip(c, rhs)):
            raise GraphError(f"element does not contain the right-hand side for {v!r}")
        c = [a - b for a, b in zip(c, rhs)]
        c[i] += 1
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return MonoidElement(tuple(c))


def _neighbours(g, counts, forward_only=False):
    for i, v in enumerate(g.vertices):
        if not g.out_edges(v):
            continue
        rhs = _rhs(g, v)
        if counts[i]:
            c = list(counts)
            c[i] -= 1
            yield tuple(a + b for a, b in zip(c, rhs))
        if not forward_only and all(a >= b for a, b in zip(counts, rhs)):
            c = [a - b for a, b in zip(counts, rhs)]
            c[i] += 1
            yield tuple(c)


class MonoidVerdict(str, Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqualWithinBudget"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class MonoidSearch:
    verdict: MonoidVerdict
    explored: int
    meeting: MonoidElement = None


def monoid_equal(g, a, b, budget=None):
    """Search the equivalence classes of a and b from both ends at once.

    Each side expands by forward and backward rewriting steps. The answer
    is Equal when the two explored sets meet, NotEqualWithinBudget when one
    class has been exhausted without meeting the other, and Unknown when the
    budget of explored states runs out.
    """
    budget = default_budget() if budget is None else budget
    if a == b:
        return MonoidSearch(MonoidVerdict.EQUAL, 1, a)
    seen = [{a.counts}, {b.counts}]
    frontier = [deque([a.counts]), deque([b.counts])]
    explored = 2
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        other = seen[1 - side]
        for _ in range(len(frontier[side])):
            state = frontier[side].popleft()
            for nxt in _neighbours(g, state):
                if nxt in other:
                    return MonoidSearch(MonoidVerdict.EQUAL, explored, MonoidElement(nxt))
                if nxt not in seen[side]:
                    seen[side].add(nxt)
                    frontier[side].append(nxt)
                    explored += 1
                    if explored > budget:
                        return MonoidSearch(MonoidVerdict.UNKNOWN, explored)
    return MonoidSearch(MonoidVerdict.NOT_EQUAL, explored)


def forward_common_reduct(g, a, b, budget=None):
    """An element reachable from both a and b by forward steps only, or None."""
    budget = default_budget() if budget is None else budget
    seen = [{a.counts}, {b.counts}]
    if a == b:
        return a
    frontier = [deque([a.counts]), deque([b.counts])]
    explored = 2
    while (frontier[0] or frontier[1]) and explored <= budget:
        for side in (0, 1):
            for _ in range(len(frontier[side])):
                state = frontier[side].popleft()
                for nxt in _neighbours(g, state, forward_only=True):
                    if nxt in seen[1 - side]:
                        return MonoidElement(nxt)
                    if nxt not in seen[side]:
                        seen[side].add(nxt)
                        frontier[side].append(nxt)
                        explored += 1
    return None


def k0_from_monoid(g):
    """Group completion of the graph monoid.

    The relations v - (ranges of edges out of v) generate the kernel of
    Z^vertices onto the completion. Invariant factors are read off from
    gcds of minors, so this route shares no elimination code with the
    Smith normal form used elsewhere.
    """
    n = len(g.vertices)
    relations = []
    for v in g.vertices:
        if g.out_edges(v):
            start = MonoidElement.of(g, [v])
            after = rewrite_step(g, start, v)
            relations.append([x - y for x, y in zip(after.counts, start.counts)])
    if not relations:
        return FinAbGroup(n)
    # columns are relations
    M = IntMatrix(n, len(relations), [[r[i] for r in relations] for i in range(n)])
    factors = invariant_factors_by_minors(M)
    return FinAbGroup(n - len(factors), tuple(d for d in factors if d > 1))


@dataclass(frozen=True)
class IdealSupport:
    members: frozenset
    unknown: frozenset = frozenset()

    @property
    def conclusive(self):
        return not self.unknown


def _reaches_support(g, v, H, budget):
    """Whether v rewrites forward to an element supported in H.

    Forward derivations of a sum split into derivations of its summands,
    so only the set of vertices outside H matters, not multiplicities.
    States are therefore subsets of the complement of H, which keeps the
    search finite. Returns True, False or None when the budget runs out.
    """
    start = frozenset([v]) - H
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if not state:
            return True
        for w in state:
            nxt = (state - {w}) | frozenset(u for u in g.successors(w) if u not in H)
            if nxt not in seen:
                if len(seen) >= budget:
                    return None
                seen.add(nxt)
                queue.append(nxt)
    return False


def ideal_vertex_support(g, H, budget=None):
    """Vertices v with [v] + [delta] = [gamma] for some gamma supported in H.

    If such gamma and delta exist, the confluence of forward rewriting gives
    a forward reduct of v supported in H, so the search looks for one.
    """
    budget = default_budget() if budget is None else budget
    H = frozenset(H)
    if not (H <= set(g.vertices)):
        raise GraphError("H contains unknown vertices")
    if any(not g.out_edges(v) for v in g.vertices):
        raise GraphError("ideal_vertex_support expects a graph without sinks")
    if not is_hereditary(g, H) or not is_saturated(g, H):
        raise GraphError("H must be hereditary and saturated")
    members, unknown = set(), set()
    for v in g.vertices:
        hit = _reaches_support(g, v, H, budget)
        if hit is None:
            unknown.add(v)
        elif hit:
            members.add(v)
    return IdealSupport(frozenset(members), frozenset(unknown))
