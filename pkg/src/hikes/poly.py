"""Exact polynomials in the edge variables and dense matrices of them.

Coefficients are Python ints, so nothing overflows and nothing is rounded.
All matrix products accept ``max_degree`` for degree truncation, which is
exact because every identity in this package is graded.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping

from .errors import DimensionTooLarge
from .multiset import EdgeMultiset

MAX_DIM = 10


class Polynomial:
    """Finite integer combination of edge monomials; zero terms are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[EdgeMultiset, int] | Iterable[tuple[EdgeMultiset, int]] = ()):
        acc: dict[EdgeMultiset, int] = {}
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in pairs:
            if c:
                acc[mono] = acc.get(mono, 0) + c
        self._terms = {m: c for m, c in acc.items() if c}

    @classmethod
    def _wrap(cls, terms: dict[EdgeMultiset, int]) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._wrap({})

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls._wrap({EdgeMultiset.one(): c} if c else {})

    @classmethod
    def monomial(cls, m: EdgeMultiset, c: int = 1) -> "Polynomial":
        return cls._wrap({m: c} if c else {})

    @classmethod
    def variable(cls, i: int, j: int) -> "Polynomial":
        return cls.monomial(EdgeMultiset({(i, j): 1}))

    @property
    def terms(self) -> dict[EdgeMultiset, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, m: EdgeMultiset) -> int:
        return self._terms.get(m, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Largest term degree; -1 for the zero polynomial."""
        return max((m.degree for m in self._terms), default=-1)

    def is_homogeneous(self, k: int) -> bool:
        return all(m.degree == k for m in self._terms)

    def homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial._wrap({m: c for m, c in self._terms.items() if m.degree == k})

    def truncate(self, max_degree: int) -> "Polynomial":
        return Polynomial._wrap({m: c for m, c in self._terms.items() if m.degree <= max_degree})

    def sorted_terms(self) -> list[tuple[EdgeMultiset, int]]:
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    # -- ring operations ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap({m: -c for m, c in self._terms.items()})

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._wrap(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def scale(self, k: int) -> "Polynomial":
        if not k:
            return Polynomial.zero()
        return Polynomial._wrap({m: c * k for m, c in self._terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def exact_div(self, k: int) -> "Polynomial | None":
        """Divide every coefficient by ``k``; None if any division leaves a remainder."""
        out = {}
        for m, c in self._terms.items():
            q, r = divmod(c, k)
            if r:
                return None
            out[m] = q
        return Polynomial._wrap(out)

    # -- text --------------------------------------------------------------------

    def text(self) -> str:
        return canonical_text(self)

    def __str__(self) -> str:
        return canonical_text(self)

    def __repr__(self) -> str:
        return f"Polynomial({canonical_text(self)!r})"

    def to_json(self) -> dict:
        return {
            "terms": [
                {"coeff": str(c), "factors": [[i, j, k] for (i, j), k in m]}
                for m, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        return cls(
            (EdgeMultiset({(int(i), int(j)): int(k) for i, j, k in t["factors"]}), int(t["coeff"]))
            for t in data["terms"]
        )


def poly_mul(a: Polynomial, b: Polynomial, max_degree: int | None = None) -> Polynomial:
    """Exact product, dropping every term of degree above ``max_degree``."""
    out: dict[EdgeMultiset, int] = {}
    if max_degree is None:
        for ma, ca in a._terms.items():
            for mb, cb in b._terms.items():
                m = ma * mb
                out[m] = out.get(m, 0) + ca * cb
    else:
        bl = [(mb, cb, mb.degree) for mb, cb in b._terms.items()]
        for ma, ca in a._terms.items():
            room = max_degree - ma.degree
            if room < 0:
                continue
            for mb, cb, db in bl:
                if db <= room:
                    m = ma * mb
                    out[m] = out.get(m, 0) + ca * cb
    return Polynomial._wrap({m: c for m, c in out.items() if c})


def canonical_text(p: Polynomial) -> str:
    """Deterministic rendering, e.g. ``+1 -1*w[1,2]*w[2,1]``.

    Terms are ordered by (degree, monomial text); each carries an explicit
    sign and its absolute coefficient.  The zero polynomial prints ``0``.
    """
    if p.is_zero():
        return "0"
    parts = []
    for m, c in p.sorted_terms():
        sign = "+" if c > 0 else "-"
        if m.is_one():
            parts.append(f"{sign}{abs(c)}")
        else:
            parts.append(f"{sign}{abs(c)}*{m.text()}")
    return " ".join(parts)


def poly_to_json(p: Polynomial) -> str:
    return json.dumps(p.to_json(), sort_keys=True)


# -- matrices -----------------------------------------------------------------------


class PolyMatrix:
    """Dense n x n matrix of polynomials, indexed 1..n from the outside."""

    __slots__ = ("n", "_rows")

    def __init__(self, rows):
        rows = tuple(tuple(p if isinstance(p, Polynomial) else Polynomial.constant(p) for p in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("PolyMatrix must be square")
        self.n = n
        self._rows = rows

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        one, zero = Polynomial.constant(1), Polynomial.zero()
        return cls([[one if a == b else zero for b in range(n)] for a in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "PolyMatrix":
        zero = Polynomial.zero()
        return cls([[zero] * n for _ in range(n)])

    @classmethod
    def adjacency(cls, g) -> "PolyMatrix":
        """Weighted adjacency matrix W of a digraph: w[i,j] where the edge exists."""
        n = g.n_vertices
        zero = Polynomial.zero()
        return cls(
            [
                [Polynomial.variable(i, j) if (i, j) in g.edges else zero for j in range(1, n + 1)]
                for i in range(1, n + 1)
            ]
        )

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        i, j = ij
        return self._rows[i - 1][j - 1]

    def rows(self):
        return self._rows

    def entries(self):
        """Yield ((i, j), polynomial) in row-major order, 1-based."""
        for a, row in enumerate(self._rows, start=1):
            for b, p in enumerate(row, start=1):
                yield (a, b), p

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)])

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._rows, other._rows)])

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix([[-a for a in r] for r in self._rows])

    def scale(self, p: Polynomial) -> "PolyMatrix":
        """Multiply every entry by the scalar polynomial ``p``."""
        return PolyMatrix([[poly_mul(p, a) for a in r] for r in self._rows])

    def matmul(self, other: "PolyMatrix", max_degree: int | None = None) -> "PolyMatrix":
        n = self.n
        cols = list(zip(*other._rows))
        out = []
        for r in self._rows:
            row = []
            for col in cols:
                acc = Polynomial.zero()
                for a, b in zip(r, col):
                    if a and b:
                        acc = acc + poly_mul(a, b, max_degree)
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self.matmul(other)

    def trace(self) -> Polynomial:
        acc = Polynomial.zero()
        for a in range(self.n):
            acc = acc + self._rows[a][a]
        return acc

    def truncate(self, max_degree: int) -> "PolyMatrix":
        return PolyMatrix([[a.truncate(max_degree) for a in r] for r in self._rows])

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self._rows for a in r)

    def text(self) -> str:
        return "\n".join(f"({i},{j}): {canonical_text(p)}" for (i, j), p in self.entries())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": [[p.to_json() for p in r] for r in self._rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyMatrix":
        return cls([[Polynomial.from_json(p) for p in r] for r in data["entries"]])

    def __repr__(self) -> str:
        return f"PolyMatrix(n={self.n})"


def mat_power(W: PolyMatrix, ell: int, max_degree: int | None = None) -> PolyMatrix:
    """W^ell by repeated multiplication; W^0 is the identity."""
    if ell < 0:
        raise ValueError("power must be non-negative")
    out = PolyMatrix.identity(W.n)
    for _ in range(ell):
        out = out.matmul(W, max_degree)
    return out


def mat_powers(W: PolyMatrix, upto: int) -> list[PolyMatrix]:
    """[W^0, W^1, ..., W^upto]."""
    out = [PolyMatrix.identity(W.n)]
    for _ in range(upto):
        out.append(out[-1].matmul(W))
    return out


def _check_dim(B: PolyMatrix, unsafe_large: bool) -> None:
    if B.n > MAX_DIM and not unsafe_large:
        raise DimensionTooLarge(f"dimension {B.n} exceeds the desk-scale guard of {MAX_DIM}")


def determinant(B: PolyMatrix, unsafe_large: bool = False) -> Polynomial:
    """Exact determinant by Laplace expansion, memoised on the set of used columns.

    Row r is expanded against every column not yet consumed by rows < r;
    the memo key is the bitmask of consumed columns.
    """
    _check_dim(B, unsafe_large)
    n = B.n
    if n == 0:
        return Polynomial.constant(1)
    rows = B.rows()
    memo: dict[int, Polynomial] = {}

    def minor(used: int) -> Polynomial:
        r = bin(used).count("1")
        if r == n:
            return Polynomial.constant(1)
        if used in memo:
            return memo[used]
        acc = Polynomial.zero()
        free_before = 0
        for c in range(n):
            if used >> c & 1:
                continue
            entry = rows[r][c]
            if entry:
                sub = minor(used | 1 << c)
                if sub:
                    term = poly_mul(entry, sub)
                    acc = acc - term if free_before % 2 else acc + term
            free_before += 1
        memo[used] = acc
        return acc

    return minor(0)


def adjugate(B: PolyMatrix, unsafe_large: bool = False) -> PolyMatrix:
    """Adjugate built entry by entry: (i, j) is det(B^(ji)).

    B^(ji) keeps B but sets b_ji = 1, clears the rest of column i and
    the rest of row j.
    """
    _check_dim(B, unsafe_large)
    n = B.n
    rows = B.rows()
    one, zero = Polynomial.constant(1), Polynomial.zero()
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            mod = []
            for k in range(n):
                if k == j:
                    mod.append([one if c == i else zero for c in range(n)])
                else:
                    mod.append([zero if c == i else rows[k][c] for c in range(n)])
            row.append(determinant(PolyMatrix(mod), unsafe_large))
        out.append(row)
    return PolyMatrix(out)
