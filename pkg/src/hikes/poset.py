"""Hike classification and the incidence algebra on closed divisors.

Every function that takes a hike works on an :class:`EdgeMultiset`.  The
arithmetic functions (``mu``, ``mu_ij``, ``beta_*``, ``count_representations``)
are plain callables so they can be handed to :func:`dirichlet_convolve`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .errors import EmptyHikeError, NotAHikeError, NotClosedError
from .multiset import EdgeMultiset

_CACHE = 1 << 18


@dataclass(frozen=True)
class HikeClass:
    """One of NotAHike, ClosedHike, or OpenHike(source, target)."""

    kind: str
    source: int | None = None
    target: int | None = None

    @property
    def is_hike(self) -> bool:
        return self.kind != "not-a-hike"

    @property
    def is_closed(self) -> bool:
        return self.kind == "closed"

    @property
    def is_open(self) -> bool:
        return self.kind == "open"

    def __str__(self) -> str:
        if self.kind == "open":
            return f"OpenHike({self.source},{self.target})"
        return "ClosedHike" if self.kind == "closed" else "NotAHike"


NOT_A_HIKE = HikeClass("not-a-hike")
CLOSED = HikeClass("closed")


@dataclass(frozen=True)
class HikeStats:
    length: int
    components: int
    vertex_set: frozenset[int]
    self_avoiding: bool

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_set)


@lru_cache(maxsize=_CACHE)
def classify(m: EdgeMultiset) -> HikeClass:
    """Classify an edge multiset by its out-minus-in degree vector.

    Balanced everywhere means a product of simple cycles.  A single +1/-1
    pair means a simple walk from the +1 vertex to the -1 vertex times
    simple cycles.  Anything else is not a hike.
    """
    imb = m.imbalance()
    if not imb:
        return CLOSED
    if len(imb) != 2:
        return NOT_A_HIKE
    (a, da), (b, db) = imb.items()
    if da == 1 and db == -1:
        return HikeClass("open", a, b)
    if da == -1 and db == 1:
        return HikeClass("open", b, a)
    return NOT_A_HIKE


def _components(m: EdgeMultiset) -> int:
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), _ in m:
        parent.setdefault(i, i)
        parent.setdefault(j, j)
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    return sum(1 for v in parent if find(v) == v)


def _require_hike(m: EdgeMultiset) -> HikeClass:
    cls = classify(m)
    if not cls.is_hike:
        raise NotAHikeError(f"{m.text()} is not a hike")
    return cls


def _require_closed(c: EdgeMultiset) -> None:
    cls = classify(c)
    if not cls.is_closed:
        raise NotClosedError(f"{c.text()} is not a closed hike ({cls})")


@lru_cache(maxsize=_CACHE)
def stats(m: EdgeMultiset) -> HikeStats:
    """Length, weak component count, vertex set and self-avoidance of a hike."""
    cls = _require_hike(m)
    length = m.degree
    vs = m.vertices()
    if cls.is_closed:
        sa = len(vs) == length
    else:
        sa = len(vs) == length + 1
    return HikeStats(length, _components(m), vs, sa)


def is_self_avoiding(m: EdgeMultiset) -> bool:
    return stats(m).self_avoiding


def is_connected(m: EdgeMultiset) -> bool:
    return _components(m) <= 1


# -- arithmetic functions on the poset ------------------------------------------


def delta(c: EdgeMultiset) -> int:
    """Identity of the Dirichlet convolution."""
    return 1 if c.is_one() else 0


@lru_cache(maxsize=_CACHE)
def mu(c: EdgeMultiset) -> int:
    """Moebius function of closed hikes: (-1)^n(c) on self-avoiding ones, else 0."""
    _require_closed(c)
    if c.is_one():
        return 1
    st = stats(c)
    return (-1) ** st.components if st.self_avoiding else 0


def mu_ij(h: EdgeMultiset, i: int, j: int) -> int:
    """Extension of ``mu`` to hikes from v_i to v_j."""
    cls = _require_hike(h)
    st = stats(h)
    if i != j:
        if cls.is_open and (cls.source, cls.target) == (i, j) and st.self_avoiding:
            return (-1) ** (st.components + 1)
        return 0
    if cls.is_closed and st.self_avoiding and i not in st.vertex_set:
        return (-1) ** st.components
    return 0


def mu_ij_fn(i: int, j: int) -> Callable[[EdgeMultiset], int]:
    return lambda h: mu_ij(h, i, j)


@lru_cache(maxsize=_CACHE)
def beta_closed_form(c: EdgeMultiset) -> int:
    """Number of ways to travel a closed hike: a product of multinomials.

    For each vertex, the edges leaving it can be ordered in
    tau_i! / prod_j tau_ij! distinguishable ways.
    """
    _require_closed(c)
    by_tail: dict[int, list[int]] = {}
    for (i, _), m in c:
        by_tail.setdefault(i, []).append(m)
    result = 1
    for mults in by_tail.values():
        coeff = math.factorial(sum(mults))
        for m in mults:
            coeff //= math.factorial(m)
        result *= coeff
    return result


@lru_cache(maxsize=_CACHE)
def beta_by_inversion(c: EdgeMultiset) -> int:
    """Dirichlet inverse of ``mu`` computed by the defining recursion."""
    _require_closed(c)
    if c.is_one():
        return 1
    total = 0
    for d in self_avoiding_closed_divisors(c):
        if d.is_one():
            continue
        total -= mu(d) * beta_by_inversion(c / d)
    return total


@lru_cache(maxsize=_CACHE)
def beta_by_decompositions(c: EdgeMultiset) -> int:
    """Signed count of ordered factorisations into non-empty self-avoiding closed hikes.

    Each factor s contributes (-1)^(n(s)+1); beta(1) = 1 (the empty tuple).
    """
    _require_closed(c)
    if c.is_one():
        return 1
    total = 0
    for s in self_avoiding_closed_divisors(c):
        if s.is_one():
            continue
        total += (-1) ** (stats(s).components + 1) * beta_by_decompositions(c / s)
    return total


# -- divisors and convolution ---------------------------------------------------


@lru_cache(maxsize=_CACHE)
def closed_divisors(h: EdgeMultiset) -> tuple[EdgeMultiset, ...]:
    """All closed hikes d with d | h, including 1 (and h itself when closed).

    Walks the sub-multiplicity vectors edge by edge and keeps the balanced
    ones.  A branch is cut as soon as some vertex carries more surplus than
    the edges still to be decided could cancel.
    """
    _require_hike(h)
    items = h.items
    n_items = len(items)
    # suffix capacities: in/out multiplicity still available at each vertex
    rem_in: list[dict[int, int]] = [{} for _ in range(n_items + 1)]
    rem_out: list[dict[int, int]] = [{} for _ in range(n_items + 1)]
    for idx in range(n_items - 1, -1, -1):
        (a, b), m = items[idx]
        rin, rout = dict(rem_in[idx + 1]), dict(rem_out[idx + 1])
        if a != b:
            rout[a] = rout.get(a, 0) + m
            rin[b] = rin.get(b, 0) + m
        rem_in[idx], rem_out[idx] = rin, rout

    out: list[EdgeMultiset] = []
    imb: dict[int, int] = {}
    chosen: list = []

    def feasible(idx: int) -> bool:
        rin, rout = rem_in[idx], rem_out[idx]
        for v, d in imb.items():
            if d > 0 and d > rin.get(v, 0):
                return False
            if d < 0 and -d > rout.get(v, 0):
                return False
        return True

    def rec(idx: int) -> None:
        if not feasible(idx):
            return
        if idx == n_items:
            out.append(EdgeMultiset._raw(tuple(chosen)))
            return
        (a, b), m = items[idx]
        rec(idx + 1)
        for k in range(1, m + 1):
            if a != b:
                imb[a] = imb.get(a, 0) + 1
                imb[b] = imb.get(b, 0) - 1
            chosen.append(((a, b), k))
            rec(idx + 1)
            chosen.pop()
        if a != b:
            imb[a] -= m
            imb[b] += m

    rec(0)
    out.sort(key=EdgeMultiset.sort_key)
    return tuple(out)


@lru_cache(maxsize=_CACHE)
def self_avoiding_closed_divisors(h: EdgeMultiset) -> tuple[EdgeMultiset, ...]:
    return tuple(d for d in closed_divisors(h) if stats(d).self_avoiding)


@lru_cache(maxsize=_CACHE)
def divisor_pairs(h: EdgeMultiset) -> tuple[tuple[EdgeMultiset, EdgeMultiset], ...]:
    """(d, h/d) for every closed divisor d of h."""
    return tuple((d, h / d) for d in closed_divisors(h))


def dirichlet_convolve(
    F: Callable[[EdgeMultiset], int],
    G: Callable[[EdgeMultiset], int],
    h: EdgeMultiset,
) -> int:
    """(F * G)(h): sum of F(d) G(h/d) over closed divisors d of h.

    F is evaluated on closed hikes only; G sees h/d, which has the same
    class as h.  The arguments do not commute when h is open.
    """
    _require_hike(h)
    total = 0
    for d, q in divisor_pairs(h):
        fd = F(d)
        if fd:
            total += fd * G(q)
    return total


def dirichlet_convolve_many(
    F: Callable[[EdgeMultiset], int],
    Gs: dict,
    h: EdgeMultiset,
) -> dict:
    """(F * G)(h) for every G in ``Gs`` (a dict of label -> function).

    Same sum as :func:`dirichlet_convolve`; the non-zero F(d) terms are
    found once and reused for every G.
    """
    _require_hike(h)
    terms = []
    for d, q in divisor_pairs(h):
        fd = F(d)
        if fd:
            terms.append((fd, q))
    return {key: sum(fd * G(q) for fd, q in terms) for key, G in Gs.items()}


# -- contiguous representations -----------------------------------------------


@lru_cache(maxsize=_CACHE)
def count_representations(h: EdgeMultiset, i: int, j: int) -> int:
    """f_ij(h): number of distinct edge sequences from v_i to v_j using h exactly.

    Copies of the same edge are indistinguishable.  Zero for non-hikes,
    disconnected hikes, and wrong endpoints; f_ii(1) = 1.
    """
    if h.is_one():
        return 1 if i == j else 0
    cls = classify(h)
    if cls.is_closed:
        if i != j or i not in h.vertices():
            return 0
    elif cls.is_open:
        if (cls.source, cls.target) != (i, j):
            return 0
    else:
        return 0
    if not is_connected(h):
        return 0

    edges = h.edges()
    out_edges: dict[int, list[int]] = {}
    for idx, (a, _) in enumerate(edges):
        out_edges.setdefault(a, []).append(idx)

    @lru_cache(maxsize=None)
    def walk(v: int, remaining: tuple[int, ...]) -> int:
        if not any(remaining):
            return 1 if v == j else 0
        total = 0
        for idx in out_edges.get(v, ()):
            if remaining[idx]:
                rest = remaining[:idx] + (remaining[idx] - 1,) + remaining[idx + 1 :]
                total += walk(edges[idx][1], rest)
        return total

    return walk(i, tuple(m for _, m in h))


@lru_cache(maxsize=_CACHE)
def representation_counts(h: EdgeMultiset) -> dict[tuple[int, int], int]:
    """Every non-zero f_ij(h), keyed by (i, j).

    Only pairs compatible with the class of h are tried: (i, i) for
    i in V(h) when h is closed, the single endpoint pair when h is open.
    The empty hike is handled by callers, since f_ii(1) = 1 for every i.
    """
    cls = classify(h)
    if h.is_one() or not cls.is_hike:
        return {}
    if cls.is_closed:
        cands = [(v, v) for v in sorted(h.vertices())]
    else:
        cands = [(cls.source, cls.target)]
    out = {}
    for i, j in cands:
        v = count_representations(h, i, j)
        if v:
            out[(i, j)] = v
    return out


def mu_ij_support(h: EdgeMultiset, n: int) -> dict[tuple[int, int], int]:
    """Every non-zero mu_ij(h) for vertices 1..n, keyed by (i, j)."""
    cls = _require_hike(h)
    st = stats(h)
    if not st.self_avoiding:
        return {}
    if cls.is_open:
        return {(cls.source, cls.target): (-1) ** (st.components + 1)}
    sign = (-1) ** st.components
    return {(i, i): sign for i in range(1, n + 1) if i not in st.vertex_set}


def f_ij_fn(i: int, j: int) -> Callable[[EdgeMultiset], int]:
    return lambda h: count_representations(h, i, j)


def _in_s_ij(p: EdgeMultiset, i: int, j: int) -> bool:
    """Membership in S_ij: self-avoiding hikes from v_i to v_j.

    For i == j these are the non-empty self-avoiding closed hikes that
    cross v_i.
    """
    cls = classify(p)
    if not cls.is_hike or not stats(p).self_avoiding:
        return False
    if i != j:
        return cls.is_open and (cls.source, cls.target) == (i, j)
    return cls.is_closed and i in stats(p).vertex_set


def self_avoiding_decomposition_sum(h: EdgeMultiset, i: int, j: int) -> int:
    """Signed count of ordered decompositions h = s_1 ... s_k p.

    The s_m are non-empty self-avoiding closed hikes and p lies in S_ij;
    each factor x contributes (-1)^(n(x)+1).
    """
    _require_hike(h)
    if h.is_one():
        raise EmptyHikeError("the decomposition sum is defined for non-empty hikes")
    return _decomposition_total(h, i, j)


@lru_cache(maxsize=_CACHE)
def _decomposition_total(rest: EdgeMultiset, i: int, j: int) -> int:
    # p in S_ij times closed factors has the degree imbalance of a hike
    # from v_i to v_j, and crosses v_i; otherwise no decomposition exists
    cls = classify(rest)
    if i == j:
        if not cls.is_closed or i not in rest.vertices():
            return 0
    elif not (cls.is_open and (cls.source, cls.target) == (i, j)):
        return 0
    acc = 0
    if _in_s_ij(rest, i, j):
        acc += (-1) ** (stats(rest).components + 1)
    for s in self_avoiding_closed_divisors(rest):
        if s.is_one() or s == rest:
            continue
        acc += (-1) ** (stats(s).components + 1) * _decomposition_total(rest / s, i, j)
    return acc


def clear_caches() -> None:
    for fn in (
        classify, stats, mu, beta_closed_form, beta_by_inversion,
        beta_by_decompositions, closed_divisors, self_avoiding_closed_divisors,
        count_representations, divisor_pairs, representation_counts, _decomposition_total,
    ):
        fn.cache_clear()
