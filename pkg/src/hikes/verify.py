"""Identity-verification driver.

Each suite checks one family of identities on a digraph, exhaustively over
all hikes (or all degrees) up to a maximum length, and returns an
:class:`IdentityReport` carrying the first counterexample it met.

The arithmetic functions a suite relies on come from a :class:`Kernel`.
The default kernel is the real library; :func:`kernel` can return a
deliberately broken one so tests can confirm that the suites catch errors.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import charpoly as cp
from .errors import GuardViolation
from .graph import Digraph, enumerate_hikes, enumerate_self_avoiding_hikes
from .multiset import EdgeMultiset
from .poly import PolyMatrix, Polynomial, adjugate, mat_powers
from .poset import (
    beta_by_decompositions,
    beta_by_inversion,
    beta_closed_form,
    count_representations,
    delta,
    dirichlet_convolve,
    divisor_pairs,
    mu_ij_support,
    representation_counts,
    mu,
    mu_ij,
    self_avoiding_decomposition_sum,
    stats,
)

MAX_N = 10
MAX_LEN = 10
MAX_EDGES = 20

SUITES = (
    "cayley-hamilton",
    "commutation",
    "corollary1",
    "lemma1",
    "theorem1",
    "theorem2",
    "theorem3",
    "trace-recursion",
)

CORRUPTIONS = ("mu-sign", "beta-multinomial", "phi-sign")


# -- random graphs ----------------------------------------------------------------

_LCG_A = 6364136223846793005
_LCG_C = 1442695040888963407
_MASK64 = (1 << 64) - 1


class LCG:
    """64-bit linear congruential generator (Knuth's MMIX constants).

    state <- (A * state + C) mod 2^64, seeded with state = seed mod 2^64.
    ``uniform()`` returns the top 53 bits of the new state divided by 2^53.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (_LCG_A * self.state + _LCG_C) & _MASK64
        return self.state

    def uniform(self) -> float:
        return (self.next() >> 11) / float(1 << 53)


def random_digraph(n: int, p: float, seed: int) -> Digraph:
    """Each ordered pair (i, j), loops included, visited in lexicographic order,
    is an edge when the next uniform draw is below ``p``."""
    rng = LCG(seed)
    edges = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if rng.uniform() < p]
    return Digraph.from_edges(n, edges)


# -- kernels -----------------------------------------------------------------------


@dataclass(frozen=True)
class Kernel:
    mu: Callable[[EdgeMultiset], int]
    beta: Callable[[EdgeMultiset], int]
    phi_sign: int = -1
    label: str = "exact"


def _mu_flipped(c: EdgeMultiset) -> int:
    return 1 if c.is_one() else -mu(c)


def _beta_no_denominator(c: EdgeMultiset) -> int:
    out = 1
    for t in c.out_degrees().values():
        out *= math.factorial(t)
    return out


def kernel(corrupt: str | None = None) -> Kernel:
    if corrupt is None:
        return Kernel(mu, beta_closed_form)
    if corrupt == "mu-sign":
        return Kernel(_mu_flipped, beta_closed_form, label=corrupt)
    if corrupt == "beta-multinomial":
        return Kernel(mu, _beta_no_denominator, label=corrupt)
    if corrupt == "phi-sign":
        return Kernel(mu, beta_closed_form, phi_sign=1, label=corrupt)
    raise ValueError(f"unknown corruption {corrupt!r}; choose from {CORRUPTIONS}")


# -- reports ------------------------------------------------------------------------


@dataclass
class IdentityReport:
    name: str
    passed: bool
    checked: int
    counterexample: dict | None = None
    seconds: float = 0.0


@dataclass
class VerifyReport:
    graph: dict
    max_len: int
    identities: list[IdentityReport] = field(default_factory=list)
    corrupt: str | None = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.identities)

    def failures(self) -> list[IdentityReport]:
        return [r for r in self.identities if not r.passed]

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "max_len": self.max_len,
            "corrupt": self.corrupt,
            "passed": self.passed,
            "identities": [asdict(r) for r in self.identities],
        }

    @classmethod
    def from_json(cls, data: dict) -> "VerifyReport":
        return cls(
            graph=data["graph"],
            max_len=data["max_len"],
            corrupt=data.get("corrupt"),
            identities=[IdentityReport(**r) for r in data["identities"]],
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def text(self) -> str:
        g = self.graph
        lines = [f"graph: N={g['n_vertices']} |E|={len(g['edges'])} max_len={self.max_len}"]
        if self.corrupt:
            lines.append(f"corruption: {self.corrupt}")
        for r in self.identities:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{status} {r.name:<16} checked={r.checked} time={r.seconds:.3f}s")
            if r.counterexample:
                lines.append(f"     counterexample: {json.dumps(r.counterexample, sort_keys=True)}")
        lines.append("all identities hold" if self.passed else f"{len(self.failures())} identity suite(s) failed")
        return "\n".join(lines)


class _Fail(Exception):
    def __init__(self, payload: dict):
        self.payload = payload


class Context:
    """Per-graph caches shared by the suites."""

    def __init__(self, g: Digraph, max_len: int, kern: Kernel):
        self.g = g
        self.L = max_len
        self.kernel = kern
        self.n = g.n_vertices
        self._hikes: dict[int, list[EdgeMultiset]] = {}
        self._psi = None
        self._powers = None

    def hikes(self, ell: int) -> list[EdgeMultiset]:
        if ell not in self._hikes:
            self._hikes[ell] = enumerate_hikes(self.g, ell)
        return self._hikes[ell]

    def all_hikes(self):
        for ell in range(self.L + 1):
            yield from self.hikes(ell)

    def closed_hikes(self):
        for h in self.all_hikes():
            if not h.imbalance():
                yield h

    @property
    def psi(self):
        if self._psi is None:
            self._psi = cp.psi_sequence_by_cycles(self.g)
        return self._psi

    def powers(self, upto: int) -> list[PolyMatrix]:
        if self._powers is None or len(self._powers) <= upto:
            self._powers = mat_powers(PolyMatrix.adjacency(self.g), upto)
        return self._powers

    def pairs(self):
        r = range(1, self.n + 1)
        return [(i, j) for i in r for j in r]


def _hike_witness(h: EdgeMultiset, entry=None, **extra) -> dict:
    out = {"monomial": h.text(), "degree": h.degree}
    if entry is not None:
        out["entry"] = list(entry)
    out.update(extra)
    return out


def _mismatch_payload(what: str, mm, degree=None) -> dict:
    d = mm.as_dict()
    d["identity"] = what
    if degree is not None:
        d["ell"] = degree
    return d


# -- suites ---------------------------------------------------------------------------


def _sparse_convolve(F, G_support, h: EdgeMultiset) -> dict:
    """(F * G_ij)(h) for all (i, j) at once, given G's non-zero entries per hike."""
    acc: dict = {}
    for d, q in divisor_pairs(h):
        fd = F(d)
        if fd:
            for ij, g in G_support(q).items():
                acc[ij] = acc.get(ij, 0) + fd * g
    return acc


def suite_theorem1(ctx: Context) -> int:
    """mu_ij = mu * f_ij on every hike and every (i, j).

    On hikes that are not self-avoiding mu_ij vanishes, so this includes the
    zero-sum identity for them.
    """
    checked = 0
    n = ctx.n

    def f_support(q):
        if q.is_one():
            return {(v, v): 1 for v in range(1, n + 1)}
        return representation_counts(q)

    for h in ctx.all_hikes():
        conv = _sparse_convolve(ctx.kernel.mu, f_support, h)
        expected = mu_ij_support(h, n)
        checked += n * n
        if {ij: v for ij, v in conv.items() if v} != expected:
            for ij in ctx.pairs():
                lhs, rhs = conv.get(ij, 0), mu_ij(h, *ij)
                if lhs != rhs:
                    raise _Fail(_hike_witness(h, ij, convolution=lhs, mu_ij=rhs,
                                              self_avoiding=stats(h).self_avoiding))
    return checked


def suite_theorem2(ctx: Context) -> int:
    """beta * mu = delta, three routes to beta agree, and f_ij = beta * mu_ij."""
    k = ctx.kernel
    n = ctx.n
    checked = 0
    for c in ctx.closed_hikes():
        conv = dirichlet_convolve(k.beta, k.mu, c)
        if conv != delta(c):
            raise _Fail(_hike_witness(c, check="beta*mu=delta", got=conv, expected=delta(c)))
        b = k.beta(c)
        inv = beta_by_inversion(c)
        if b != inv:
            raise _Fail(_hike_witness(c, check="beta closed form vs inversion", closed_form=b, inversion=inv))
        dec = beta_by_decompositions(c)
        if b != dec:
            raise _Fail(_hike_witness(c, check="beta closed form vs decompositions", closed_form=b, decompositions=dec))
        checked += 3
    for h in ctx.all_hikes():
        conv = _sparse_convolve(k.beta, lambda q: mu_ij_support(q, n), h)
        expected = {(v, v): 1 for v in range(1, n + 1)} if h.is_one() else representation_counts(h)
        checked += n * n
        if {ij: v for ij, v in conv.items() if v} != expected:
            for ij in ctx.pairs():
                lhs, rhs = conv.get(ij, 0), count_representations(h, *ij)
                if lhs != rhs:
                    raise _Fail(_hike_witness(h, ij, check="f_ij = beta*mu_ij", convolution=lhs, f_ij=rhs))
    return checked


def suite_theorem3(ctx: Context) -> int:
    """Self-avoiding decomposition sum equals the backtracking count f_ij."""
    checked = 0
    for h in ctx.all_hikes():
        if h.is_one():
            continue
        for i, j in ctx.pairs():
            lhs = self_avoiding_decomposition_sum(h, i, j)
            rhs = count_representations(h, i, j)
            checked += 1
            if lhs != rhs:
                raise _Fail(_hike_witness(h, (i, j), decomposition_sum=lhs, f_ij=rhs))
    return checked


def _brute_m(ctx: Context, ell: int) -> PolyMatrix:
    acc = {ij: {} for ij in ctx.pairs()}
    for h in ctx.hikes(ell):
        for ij in ctx.pairs():
            v = mu_ij(h, *ij)
            if v:
                acc[ij][h] = v
    return PolyMatrix([[Polynomial(acc[(i, j)]) for j in range(1, ctx.n + 1)] for i in range(1, ctx.n + 1)])


def _brute_m_tilde(ctx: Context, ell: int) -> PolyMatrix:
    rows = []
    for i in range(1, ctx.n + 1):
        row = []
        for j in range(1, ctx.n + 1):
            hs = enumerate_self_avoiding_hikes(ctx.g, ell, i, j)
            row.append(Polynomial((h, (-1) ** stats(h).components) for h in hs))
        rows.append(row)
    return PolyMatrix(rows)


def suite_lemma1(ctx: Context) -> int:
    """sum_l M^(l) = adj(I - W) to degree L; M^(l), M~^(l) match brute-force sums."""
    g, L = ctx.g, ctx.L
    checked = 0
    adj = adjugate(PolyMatrix.identity(ctx.n) - PolyMatrix.adjacency(g)).truncate(L)
    total = PolyMatrix.zeros(ctx.n)
    for ell in range(L + 1):
        M = cp.m_ell(g, ell, ctx.psi)
        total = total + M
        mm = cp.matrix_mismatch(M, _brute_m(ctx, ell))
        if mm:
            raise _Fail(_mismatch_payload("M^(l) vs brute-force mu_ij sum", mm, ell))
        checked += ctx.n ** 2
        if ell >= 1:
            Mt = cp.m_tilde_ell(g, ell, ctx.psi)
            mm = cp.matrix_mismatch(Mt, _brute_m_tilde(ctx, ell))
            if mm:
                raise _Fail(_mismatch_payload("M~^(l) vs signed self-avoiding hikes", mm, ell))
            psi_l = ctx.psi[ell] if ell < len(ctx.psi) else Polynomial.zero()
            mm = cp.poly_mismatch(Mt.trace(), psi_l.scale(ell))
            if mm:
                raise _Fail(_mismatch_payload("tr M~^(l) = l psi_l", mm, ell))
            checked += ctx.n ** 2 + 1
    mm = cp.matrix_mismatch(total, adj)
    if mm:
        raise _Fail(_mismatch_payload("sum M^(l) vs adj(I-W)", mm))
    return checked + ctx.n ** 2


def suite_corollary1(ctx: Context) -> int:
    """W^l = sum_k phi_k M^(l-k); phi by compositions (literal and recursive) = phi by beta."""
    g, L, k = ctx.g, ctx.L, ctx.kernel
    phi = cp.phi_sequence(ctx.psi, L, sign=k.phi_sign)
    checked = 0
    for deg in range(L + 1):
        by_beta = Polynomial((c, k.beta(c)) for c in ctx.hikes(deg) if not c.imbalance())
        mm = cp.poly_mismatch(phi[deg], by_beta)
        if mm:
            raise _Fail(_mismatch_payload("phi_k compositions vs sum beta(c) c", mm, deg))
        if deg <= 8:
            literal = cp.phi_by_compositions(ctx.psi, deg, literal=True, sign=k.phi_sign)
            mm = cp.poly_mismatch(literal, phi[deg])
            if mm:
                raise _Fail(_mismatch_payload("phi_k literal compositions vs recursion", mm, deg))
        checked += 2
    powers = ctx.powers(L)
    ms = [cp.m_ell(g, d, ctx.psi) for d in range(L + 1)]
    for ell in range(L + 1):
        rhs = PolyMatrix.zeros(ctx.n)
        for d in range(ell + 1):
            if phi[d]:
                rhs = rhs + ms[ell - d].scale(phi[d])
        mm = cp.matrix_mismatch(powers[ell], rhs)
        if mm:
            raise _Fail(_mismatch_payload("W^l = sum phi_k M^(l-k)", mm, ell))
        checked += ctx.n ** 2
    return checked


def suite_cayley_hamilton(ctx: Context) -> int:
    """M^(l) vanishes for every l >= N (l = N is Cayley-Hamilton)."""
    checked = 0
    for ell in range(ctx.n, max(ctx.n, ctx.L) + 1):
        M = cp.m_ell(ctx.g, ell, ctx.psi)
        mm = cp.matrix_mismatch(M, PolyMatrix.zeros(ctx.n))
        if mm:
            raise _Fail(_mismatch_payload("sum psi_k W^(l-k) = 0", mm, ell))
        checked += ctx.n ** 2
    return checked


def suite_commutation(ctx: Context) -> int:
    W = PolyMatrix.adjacency(ctx.g)
    checked = 0
    for ell in range(ctx.n + 1):
        M = cp.m_ell(ctx.g, ell, ctx.psi)
        mm = cp.matrix_mismatch(M @ W, W @ M)
        if mm:
            raise _Fail(_mismatch_payload("M^(l) W = W M^(l)", mm, ell))
        checked += ctx.n ** 2
    return checked


def suite_trace_recursion(ctx: Context) -> int:
    """psi_k by cycles, by det(I - W), and by the trace recursion agree."""
    by_cycles = ctx.psi
    by_det = cp.psi_by_determinant(ctx.g)
    by_trace = cp.psi_by_trace_recursion(ctx.g)
    for k in range(ctx.n + 1):
        for label, other in (("determinant", by_det), ("trace recursion", by_trace)):
            mm = cp.poly_mismatch(by_cycles[k], other[k])
            if mm:
                raise _Fail(_mismatch_payload(f"psi_k cycles vs {label}", mm, k))
    return 2 * (ctx.n + 1)


_SUITE_FUNCS: dict[str, Callable[[Context], int]] = {
    "cayley-hamilton": suite_cayley_hamilton,
    "commutation": suite_commutation,
    "corollary1": suite_corollary1,
    "lemma1": suite_lemma1,
    "theorem1": suite_theorem1,
    "theorem2": suite_theorem2,
    "theorem3": suite_theorem3,
    "trace-recursion": suite_trace_recursion,
}


def resolve_suites(selector) -> list[str]:
    """Accept "all", a comma-separated string, or an iterable of names."""
    if isinstance(selector, str):
        selector = [s.strip() for s in selector.split(",") if s.strip()]
    names = set()
    for s in selector:
        if s == "all":
            names.update(SUITES)
        elif s in _SUITE_FUNCS:
            names.add(s)
        else:
            raise ValueError(f"unknown identity suite {s!r}; choose from {', '.join(SUITES)} or all")
    return sorted(names)


def check_guards(g: Digraph, max_len: int, unsafe_large: bool = False) -> None:
    if unsafe_large:
        return
    if g.n_vertices > MAX_N:
        raise GuardViolation(f"N={g.n_vertices} exceeds {MAX_N}")
    if max_len > MAX_LEN:
        raise GuardViolation(f"max length {max_len} exceeds {MAX_LEN}")
    if len(g.edges) > MAX_EDGES:
        raise GuardViolation(f"|E|={len(g.edges)} exceeds {MAX_EDGES}")


def run_suite(name: str, ctx: Context) -> IdentityReport:
    start = time.perf_counter()
    try:
        checked = _SUITE_FUNCS[name](ctx)
        return IdentityReport(name, True, checked, None, time.perf_counter() - start)
    except _Fail as fail:
        return IdentityReport(name, False, 0, fail.payload, time.perf_counter() - start)


def verify(
    g: Digraph,
    max_len: int,
    identities="all",
    *,
    corrupt: str | None = None,
    unsafe_large: bool = False,
) -> VerifyReport:
    """Run the selected suites on ``g`` over all hikes of length <= ``max_len``."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    check_guards(g, max_len, unsafe_large)
    ctx = Context(g, max_len, kernel(corrupt))
    reports = [run_suite(name, ctx) for name in resolve_suites(identities)]
    return VerifyReport(g.summary(), max_len, reports, corrupt)
