"""Edge multisets: the monomials in the formal edge variables w[i,j].

An ``EdgeMultiset`` is the exponent vector of a monomial.  Order of the
factors is forgotten, so two walks built from the same edges with the same
multiplicities are the same object.
"""

from __future__ import annotations

import re
from collections import Counter
from typing import Iterable, Mapping

from .errors import HikeLiteralError

Edge = tuple[int, int]


class EdgeMultiset:
    """Immutable multiset of directed edges ``(tail, head)``.

    Items are kept sorted by ``(tail, head)`` with strictly positive
    multiplicities, which makes equality and hashing structural.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, counts: Mapping[Edge, int] | Iterable[tuple[Edge, int]] = ()):
        if isinstance(counts, Mapping):
            pairs = counts.items()
        else:
            pairs = counts
        merged: dict[Edge, int] = {}
        for edge, m in pairs:
            if m < 0:
                raise ValueError(f"negative multiplicity {m} for edge {edge}")
            if m:
                e = (int(edge[0]), int(edge[1]))
                merged[e] = merged.get(e, 0) + m
        self._items = tuple(sorted(merged.items()))
        self._hash = hash(self._items)

    @classmethod
    def _raw(cls, items: tuple[tuple[Edge, int], ...]) -> "EdgeMultiset":
        # items must already be sorted and positive
        obj = cls.__new__(cls)
        obj._items = items
        obj._hash = hash(items)
        return obj

    @classmethod
    def from_edges(cls, edges: Iterable[Edge]) -> "EdgeMultiset":
        return cls(Counter((int(i), int(j)) for i, j in edges))

    @classmethod
    def one(cls) -> "EdgeMultiset":
        return _ONE

    # -- basic views -----------------------------------------------------

    @property
    def items(self) -> tuple[tuple[Edge, int], ...]:
        return self._items

    def counts(self) -> dict[Edge, int]:
        return dict(self._items)

    def edges(self) -> tuple[Edge, ...]:
        """Distinct edges in canonical order."""
        return tuple(e for e, _ in self._items)

    def multiplicity(self, edge: Edge) -> int:
        for e, m in self._items:
            if e == edge:
                return m
        return 0

    @property
    def degree(self) -> int:
        return sum(m for _, m in self._items)

    def vertices(self) -> frozenset[int]:
        vs = set()
        for (i, j), _ in self._items:
            vs.add(i)
            vs.add(j)
        return frozenset(vs)

    def is_one(self) -> bool:
        return not self._items

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __iter__(self):
        return iter(self._items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeMultiset):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "EdgeMultiset") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.degree, self.text())

    # -- monoid operations -----------------------------------------------

    def __mul__(self, other: "EdgeMultiset") -> "EdgeMultiset":
        if not isinstance(other, EdgeMultiset):
            return NotImplemented
        if not other._items:
            return self
        if not self._items:
            return other
        c = dict(self._items)
        for e, m in other._items:
            c[e] = c.get(e, 0) + m
        return EdgeMultiset._raw(tuple(sorted(c.items())))

    def divides(self, other: "EdgeMultiset") -> bool:
        """True when every multiplicity of ``self`` is <= the one in ``other``."""
        oc = dict(other._items)
        return all(oc.get(e, 0) >= m for e, m in self._items)

    def __truediv__(self, other: "EdgeMultiset") -> "EdgeMultiset":
        if not other._items:
            return self
        oc = dict(other._items)
        out = []
        for e, m in self._items:
            left = m - oc.pop(e, 0)
            if left > 0:
                out.append((e, left))
            elif left < 0:
                raise ValueError(f"{other.text()} does not divide {self.text()}")
        if oc:
            raise ValueError(f"{other.text()} does not divide {self.text()}")
        return EdgeMultiset._raw(tuple(out))

    def __pow__(self, k: int) -> "EdgeMultiset":
        if k < 0:
            raise ValueError("negative power")
        return EdgeMultiset._raw(tuple((e, m * k) for e, m in self._items)) if k else _ONE

    # -- degree bookkeeping ------------------------------------------------

    def imbalance(self) -> dict[int, int]:
        """out-degree minus in-degree at every touched vertex (zeros dropped)."""
        b: dict[int, int] = {}
        for (i, j), m in self._items:
            if i != j:
                b[i] = b.get(i, 0) + m
                b[j] = b.get(j, 0) - m
        return {v: d for v, d in b.items() if d}

    def out_degrees(self) -> dict[int, int]:
        """tau_i: number of edges leaving each vertex, with multiplicity."""
        out: dict[int, int] = {}
        for (i, _), m in self._items:
            out[i] = out.get(i, 0) + m
        return out

    # -- text ----------------------------------------------------------------

    def text(self) -> str:
        """Canonical monomial text, e.g. ``w[1,2]^2*w[2,3]``; ``1`` for the empty hike."""
        if not self._items:
            return "1"
        return "*".join(
            f"w[{i},{j}]" if m == 1 else f"w[{i},{j}]^{m}" for (i, j), m in self._items
        )

    def literal(self) -> str:
        """Hike literal accepted by :func:`parse_hike`."""
        return ",".join(
            f"{i}>{j}" if m == 1 else f"{i}>{j}^{m}" for (i, j), m in self._items
        )

    def __repr__(self) -> str:
        return f"EdgeMultiset({self.text()})"


_ONE = EdgeMultiset()

_FACTOR = re.compile(r"^(\d+)>(\d+)(?:\^(\d+))?$")


def parse_hike(literal: str) -> EdgeMultiset:
    """Parse a literal like ``"1>2,2>3,3>1,2>5^2"``; whitespace is ignored.

    Repeated factors accumulate.  An empty literal (or ``"1"``) is the
    trivial hike.
    """
    s = re.sub(r"\s+", "", literal)
    if s in ("", "1"):
        return _ONE
    counts: Counter = Counter()
    for part in s.split(","):
        m = _FACTOR.match(part)
        if not m:
            raise HikeLiteralError(f"bad factor {part!r} in hike literal {literal!r}")
        i, j = int(m.group(1)), int(m.group(2))
        if i < 1 or j < 1:
            raise HikeLiteralError(f"vertex ids are 1-based: {part!r}")
        mult = int(m.group(3)) if m.group(3) is not None else 1
        if mult < 1:
            raise HikeLiteralError(f"multiplicity must be positive: {part!r}")
        counts[(i, j)] += mult
    return EdgeMultiset(counts)


def mono(*edges: Edge) -> EdgeMultiset:
    """Shorthand: ``mono((1, 2), (2, 3))`` is w[1,2]*w[2,3]."""
    return EdgeMultiset.from_edges(edges)
