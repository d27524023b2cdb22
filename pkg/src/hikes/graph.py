"""Digraphs and enumeration of their hikes, cycles and self-avoiding hikes."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import DuplicateEdge, ParseError, VertexOutOfRange
from .multiset import Edge, EdgeMultiset
from .poset import classify, stats

_EDGE_LINE = re.compile(r"^(\d+) (\d+)$")


@dataclass(frozen=True)
class Digraph:
    """Directed graph on vertices 1..n_vertices; loops allowed, no parallel edges."""

    n_vertices: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError("a digraph needs at least one vertex")
        object.__setattr__(self, "edges", frozenset((int(i), int(j)) for i, j in self.edges))
        for i, j in self.edges:
            if not (1 <= i <= self.n_vertices and 1 <= j <= self.n_vertices):
                raise ValueError(f"edge ({i},{j}) outside 1..{self.n_vertices}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Digraph":
        return cls(n, frozenset(edges))

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def successors(self) -> dict[int, tuple[int, ...]]:
        succ: dict[int, list[int]] = {v: [] for v in range(1, self.n_vertices + 1)}
        for i, j in self.sorted_edges:
            succ[i].append(j)
        return {v: tuple(ws) for v, ws in succ.items()}

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges

    def contains(self, m: EdgeMultiset) -> bool:
        return all(e in self.edges for e in m.edges())

    def to_text(self) -> str:
        lines = [str(self.n_vertices)] + [f"{i} {j}" for i, j in self.sorted_edges]
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {"n_vertices": self.n_vertices, "edges": [list(e) for e in self.sorted_edges]}


def parse_digraph(text: str) -> Digraph:
    """Read the edge-list format: first line N, then one ``"i j"`` per edge.

    Lines starting with ``#`` and blank lines are skipped.
    """
    n = None
    edges: set[Edge] = set()
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if n is None:
            if not line.isdigit() or int(line) < 1:
                raise ParseError(lineno, f"expected a positive vertex count, got {line!r}")
            n = int(line)
            continue
        m = _EDGE_LINE.match(line)
        if not m:
            raise ParseError(lineno, f"expected 'i j', got {line!r}")
        i, j = int(m.group(1)), int(m.group(2))
        for v in (i, j):
            if not 1 <= v <= n:
                raise VertexOutOfRange(lineno, f"vertex {v} not in 1..{n}")
        if (i, j) in edges:
            raise DuplicateEdge(lineno, f"edge ({i},{j}) declared twice")
        edges.add((i, j))
    if n is None:
        raise ParseError(lineno + 1, "missing vertex count")
    return Digraph(n, frozenset(edges))


def load_digraph(path) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_digraph(fh.read())


# -- simple cycles -----------------------------------------------------------------


def _cycle_from_vertices(vs: list[int]) -> EdgeMultiset:
    return EdgeMultiset.from_edges(zip(vs, vs[1:] + vs[:1]))


def simple_cycles(g: Digraph) -> list[EdgeMultiset]:
    """All elementary circuits, loops included, via Johnson's algorithm.

    Circuits are rooted at their smallest vertex: the search from root ``s``
    only visits vertices >= s, so each circuit is produced exactly once.
    """
    succ = g.successors
    found: list[EdgeMultiset] = []
    for s in range(1, g.n_vertices + 1):
        blocked: set[int] = set()
        bmap: dict[int, set[int]] = {}
        path: list[int] = []

        def unblock(u: int) -> None:
            blocked.discard(u)
            for w in bmap.pop(u, set()):
                if w in blocked:
                    unblock(w)

        def circuit(v: int) -> bool:
            closed = False
            path.append(v)
            blocked.add(v)
            for w in succ[v]:
                if w < s:
                    continue
                if w == s:
                    found.append(_cycle_from_vertices(list(path)))
                    closed = True
                elif w not in blocked and circuit(w):
                    closed = True
            if closed:
                unblock(v)
            else:
                for w in succ[v]:
                    if w >= s:
                        bmap.setdefault(w, set()).add(v)
            path.pop()
            return closed

        circuit(s)
    found.sort(key=EdgeMultiset.text)
    return found


# -- self-avoiding structures -----------------------------------------------------


def _mask(vs) -> int:
    out = 0
    for v in vs:
        out |= 1 << v
    return out


def disjoint_cycle_sets(
    cycles: list[EdgeMultiset], length: int, forbidden: int = 0
) -> Iterator[tuple[EdgeMultiset, int]]:
    """Yield (product, number_of_cycles) for every set of vertex-disjoint cycles.

    Only sets with total length ``length`` avoiding the vertex bitmask
    ``forbidden`` are produced.  The empty set is produced when length == 0.
    """
    info = [(c, _mask(c.vertices()), c.degree) for c in cycles]

    def rec(start: int, used: int, left: int, prod: EdgeMultiset, k: int):
        if left == 0:
            yield prod, k
            return
        for idx in range(start, len(info)):
            c, mask, deg = info[idx]
            if deg <= left and not (mask & used):
                yield from rec(idx + 1, used | mask, left - deg, prod * c, k + 1)

    yield from rec(0, forbidden, length, EdgeMultiset.one(), 0)


def simple_paths(g: Digraph, i: int, j: int, max_len: int | None = None) -> list[list[int]]:
    """Vertex sequences of the simple paths from v_i to v_j (i != j)."""
    out: list[list[int]] = []
    limit = g.n_vertices - 1 if max_len is None else max_len

    def rec(path, seen):
        v = path[-1]
        if v == j:
            out.append(list(path))
            return
        if len(path) - 1 >= limit:
            return
        for w in g.successors[v]:
            if w not in seen:
                path.append(w)
                seen.add(w)
                rec(path, seen)
                seen.discard(w)
                path.pop()

    rec([i], {i})
    return out


def enumerate_self_avoiding_hikes(g: Digraph, ell: int, i: int, j: int) -> list[EdgeMultiset]:
    """Self-avoiding hikes of length ``ell`` from v_i to v_j.

    For i != j: a simple path times vertex-disjoint simple cycles off the
    path.  For i == j: self-avoiding closed hikes with one cycle through v_i.
    """
    if ell < 0:
        raise ValueError("length must be non-negative")
    if ell > g.n_vertices:
        return []
    cycles = simple_cycles(g)
    out: list[EdgeMultiset] = []
    if i != j:
        for path in simple_paths(g, i, j, max_len=ell):
            plen = len(path) - 1
            p = EdgeMultiset.from_edges(zip(path, path[1:]))
            for prod, _ in disjoint_cycle_sets(cycles, ell - plen, _mask(path)):
                out.append(p * prod)
    else:
        through = [c for c in cycles if i in c.vertices()]
        for c in through:
            if c.degree > ell:
                continue
            for prod, _ in disjoint_cycle_sets(cycles, ell - c.degree, _mask(c.vertices())):
                out.append(c * prod)
    out.sort(key=EdgeMultiset.text)
    return out


# -- hikes ----------------------------------------------------------------------


def enumerate_hikes(
    g: Digraph, ell: int, endpoints: tuple[int, int] | None = None
) -> list[EdgeMultiset]:
    """All hikes of length ``ell`` on ``g``, optionally restricted to endpoints.

    Walks the edge multisets of size ``ell`` depth-first and prunes any
    partial choice whose degree imbalance can no longer be repaired by the
    edges left to place.  For endpoints (i, i) every closed hike qualifies.
    """
    if ell < 0:
        raise ValueError("length must be non-negative")
    edges = g.sorted_edges
    n = g.n_vertices
    target = [0] * (n + 1)
    if endpoints is not None and endpoints[0] != endpoints[1]:
        target[endpoints[0]] = 1
        target[endpoints[1]] = -1
    slack = 2 if endpoints is None else 0
    out: list[EdgeMultiset] = []
    imb = [0] * (n + 1)
    chosen: list[tuple[Edge, int]] = []

    def defect() -> int:
        return sum(abs(imb[v] - target[v]) for v in range(1, n + 1))

    def rec(idx: int, left: int):
        if defect() > slack + 2 * left:
            return
        if left == 0:
            m = EdgeMultiset._raw(tuple(chosen))
            cls = classify(m)
            if not cls.is_hike:
                return
            if endpoints is not None:
                i, j = endpoints
                if i == j and not cls.is_closed:
                    return
                if i != j and not (cls.is_open and (cls.source, cls.target) == (i, j)):
                    return
            out.append(m)
            return
        if idx == len(edges):
            return
        a, b = edges[idx]
        for k in range(left, -1, -1):
            if k:
                imb[a] += k
                imb[b] -= k
                chosen.append(((a, b), k))
            rec(idx + 1, left - k)
            if k:
                chosen.pop()
                imb[a] -= k
                imb[b] += k

    rec(0, ell)
    out.sort(key=EdgeMultiset.text)
    return out


def hike_stats_ok(g: Digraph, m: EdgeMultiset) -> bool:
    """Host-edge and hike-class sanity check used by tests and the verifier."""
    return g.contains(m) and classify(m).is_hike and stats(m).length == m.degree
