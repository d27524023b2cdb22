"""Characteristic-polynomial coefficients psi_k, their series inverse phi_k,
and the matrices M^(l), M~^(l) built from them.

psi_k is computed three independent ways (disjoint cycle sets, the
determinant of I - W, the trace recursion) so each can audit the others.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionTooLarge, InexactDivision
from .graph import Digraph, disjoint_cycle_sets, enumerate_hikes, simple_cycles
from .multiset import EdgeMultiset
from .poly import PolyMatrix, Polynomial, determinant, mat_powers, poly_mul
from .poset import beta_closed_form

PsiSequence = list  # list[Polynomial], index k holds psi_k
PhiSequence = list


def psi_by_cycles(g: Digraph, k: int) -> Polynomial:
    """Signed sum over sets of vertex-disjoint simple cycles of total length k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return Polynomial.constant(1)
    if k > g.n_vertices:
        return Polynomial.zero()
    terms: dict[EdgeMultiset, int] = {}
    for prod, count in disjoint_cycle_sets(simple_cycles(g), k):
        terms[prod] = terms.get(prod, 0) + (-1) ** count
    return Polynomial(terms)


def psi_sequence_by_cycles(g: Digraph) -> PsiSequence:
    return [psi_by_cycles(g, k) for k in range(g.n_vertices + 1)]


def psi_by_determinant(g: Digraph, unsafe_large: bool = False) -> PsiSequence:
    """Split det(I - W) into its homogeneous parts."""
    W = PolyMatrix.adjacency(g)
    d = determinant(PolyMatrix.identity(g.n_vertices) - W, unsafe_large)
    return [d.homogeneous_part(k) for k in range(g.n_vertices + 1)]


def psi_by_trace_recursion(g: Digraph, unsafe_large: bool = False) -> PsiSequence:
    """psi_l = -(1/l) sum_{k<l} psi_k tr(W^(l-k)), every division checked exact."""
    n = g.n_vertices
    if n > 10 and not unsafe_large:
        raise DimensionTooLarge(f"dimension {n} exceeds the desk-scale guard of 10")
    W = PolyMatrix.adjacency(g)
    traces = [p.trace() for p in mat_powers(W, n)]
    psi = [Polynomial.constant(1)]
    for ell in range(1, n + 1):
        acc = Polynomial.zero()
        for k in range(ell):
            acc = acc + poly_mul(psi[k], traces[ell - k])
        q = (-acc).exact_div(ell)
        if q is None:
            raise InexactDivision(f"trace recursion: psi_{ell} numerator not divisible by {ell}")
        psi.append(q)
    return psi


def _psi_at(psi: PsiSequence, k: int) -> Polynomial:
    return psi[k] if k < len(psi) else Polynomial.zero()


def phi_sequence(psi: PsiSequence, K: int, *, sign: int = -1) -> PhiSequence:
    """phi_0..phi_K by the recursion phi_k = -sum_{m=1..k} psi_m phi_{k-m}.

    ``sign`` is the per-factor sign of the composition expansion; only the
    negative-control harness changes it.
    """
    phi = [Polynomial.constant(1)]
    for k in range(1, K + 1):
        acc = Polynomial.zero()
        for m in range(1, k + 1):
            pm = _psi_at(psi, m)
            if pm:
                acc = acc + poly_mul(pm, phi[k - m])
        phi.append(acc.scale(sign))
    return phi


def _compositions(k: int):
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in _compositions(k - first):
            yield (first,) + rest


def phi_by_compositions(psi: PsiSequence, k: int, *, literal: bool = False, sign: int = -1) -> Polynomial:
    """phi_k = sum over ordered compositions (k_1..k_p) of k of (-1)^p psi_k1...psi_kp.

    With ``literal=True`` every composition is expanded term by term (the
    slow reference path); otherwise the equivalent recursion is used.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if not literal:
        return phi_sequence(psi, k, sign=sign)[k]
    total = Polynomial.zero()
    for comp in _compositions(k):
        term = Polynomial.constant(sign ** len(comp))
        for part in comp:
            term = poly_mul(term, _psi_at(psi, part))
            if not term:
                break
        total = total + term
    return total


def phi_by_beta(g: Digraph, k: int) -> Polynomial:
    """Sum of beta(c) c over the closed hikes c of length k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return Polynomial((c, beta_closed_form(c)) for c in enumerate_hikes(g, k, endpoints=(1, 1)))


def m_ell(g: Digraph, ell: int, psi: PsiSequence | None = None) -> PolyMatrix:
    """M^(l) = sum_{k=0..l} psi_k W^(l-k)."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    psi = psi_sequence_by_cycles(g) if psi is None else psi
    powers = mat_powers(PolyMatrix.adjacency(g), ell)
    out = PolyMatrix.zeros(g.n_vertices)
    for k in range(ell + 1):
        pk = _psi_at(psi, k)
        if pk:
            out = out + powers[ell - k].scale(pk)
    return out


def m_tilde_ell(g: Digraph, ell: int, psi: PsiSequence | None = None) -> PolyMatrix:
    """M~^(l) = psi_l I - M^(l) = -sum_{k<l} psi_k W^(l-k)."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    psi = psi_sequence_by_cycles(g) if psi is None else psi
    powers = mat_powers(PolyMatrix.adjacency(g), ell)
    out = PolyMatrix.zeros(g.n_vertices)
    for k in range(ell):
        pk = _psi_at(psi, k)
        if pk:
            out = out - powers[ell - k].scale(pk)
    return out


# -- structured comparisons ---------------------------------------------------------


@dataclass
class Mismatch:
    entry: tuple[int, int] | None
    monomial: str
    degree: int
    left: int
    right: int

    def as_dict(self) -> dict:
        return {
            "entry": list(self.entry) if self.entry else None,
            "monomial": self.monomial,
            "degree": self.degree,
            "left": self.left,
            "right": self.right,
        }


def poly_mismatch(a: Polynomial, b: Polynomial, entry=None) -> Mismatch | None:
    """First monomial (in canonical order) where two polynomials differ."""
    diff = a - b
    if diff.is_zero():
        return None
    m, _ = diff.sorted_terms()[0]
    return Mismatch(entry, m.text(), m.degree, a.coefficient(m), b.coefficient(m))


def matrix_mismatch(A: PolyMatrix, B: PolyMatrix) -> Mismatch | None:
    for (ij, pa), (_, pb) in zip(A.entries(), B.entries()):
        mm = poly_mismatch(pa, pb, ij)
        if mm:
            return mm
    return None


@dataclass
class IdentityCheck:
    """Outcome of one symbolic identity: equality plus the first witness on failure."""

    name: str
    equal: bool
    checked: int = 0
    witness: Mismatch | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.equal


def inverse_power_identity(g: Digraph, ell: int, psi: PsiSequence | None = None) -> IdentityCheck:
    """Compare W^l with sum_{k<=l} phi_k M^(l-k) entry by entry."""
    if ell < 0:
        raise ValueError("ell must be non-negative")
    psi = psi_sequence_by_cycles(g) if psi is None else psi
    phi = phi_sequence(psi, ell)
    powers = mat_powers(PolyMatrix.adjacency(g), ell)
    rhs = PolyMatrix.zeros(g.n_vertices)
    for k in range(ell + 1):
        if phi[k]:
            rhs = rhs + m_ell(g, ell - k, psi).scale(phi[k])
    mm = matrix_mismatch(powers[ell], rhs)
    return IdentityCheck(f"corollary1[l={ell}]", mm is None, g.n_vertices ** 2, mm)
