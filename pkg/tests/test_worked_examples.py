"""Small hand-checkable input/output pairs for each public operation."""

import pytest

from hikes import charpoly as cp
from hikes.cli import main
from hikes.graph import Digraph, enumerate_hikes, enumerate_self_avoiding_hikes, parse_digraph, simple_cycles
from hikes.multiset import EdgeMultiset, mono
from hikes.poly import PolyMatrix, Polynomial, adjugate, canonical_text, determinant, mat_power, poly_mul
from hikes.poset import (
    beta_closed_form,
    classify,
    closed_divisors,
    count_representations,
    mu,
    mu_ij,
    stats,
)

from conftest import cycle, path

TRIANGLE = Digraph.from_edges(3, [(1, 2), (2, 3), (3, 1)])
# one path edge and a disjoint triangle
PATH_AND_CYCLE = Digraph.from_edges(5, [(1, 2), (3, 4), (4, 5), (5, 3)])
H = mono((1, 2), (3, 4), (4, 5), (5, 3))


def P(m, c=1):
    return Polynomial.monomial(m, c)


def test_parse_triangle():
    assert parse_digraph("3\n1 2\n2 3\n3 1\n") == TRIANGLE


def test_cycles_with_loops_and_backtrack():
    g = Digraph.from_edges(2, [(1, 2), (2, 1), (1, 1), (2, 2)])
    assert set(simple_cycles(g)) == {mono((1, 1)), mono((2, 2)), cycle(1, 2)}
    assert simple_cycles(TRIANGLE) == [cycle(1, 2, 3)]


def test_enumerate_small_cases(two_cycles):
    assert enumerate_hikes(TRIANGLE, 0) == [EdgeMultiset.one()]
    assert enumerate_hikes(two_cycles, 7, (1, 1)) == [cycle(1, 2, 3, 4) * cycle(5, 6, 7)]
    assert enumerate_hikes(TRIANGLE, 2, (1, 3)) == [path(1, 2, 3)]


def test_self_avoiding_small_cases(bowtie):
    assert enumerate_self_avoiding_hikes(bowtie, 3, 1, 1) == [cycle(1, 2, 3)]
    assert enumerate_self_avoiding_hikes(PATH_AND_CYCLE, 4, 1, 2) == [H]
    assert enumerate_self_avoiding_hikes(bowtie, 6, 2, 2) == []


def test_products_and_truncation():
    w11 = Polynomial.variable(1, 1)
    assert Polynomial.variable(1, 2) * Polynomial.variable(2, 3) == P(path(1, 2, 3))
    assert (Polynomial.variable(1, 2) + Polynomial.variable(1, 3)) * 0 == 0
    assert poly_mul(1 - w11, 1 + w11 + w11 ** 2, max_degree=2) == 1


def test_walk_matrix_entries():
    assert mat_power(PolyMatrix.adjacency(TRIANGLE), 3)[1, 1] == P(cycle(1, 2, 3))
    assert mat_power(PolyMatrix.adjacency(TRIANGLE), 1) == PolyMatrix.adjacency(TRIANGLE)
    g = Digraph.from_edges(9, [(1, 9), (9, 3), (3, 2), (2, 9), (9, 5), (5, 4), (4, 9), (9, 7), (7, 6), (6, 9), (9, 8)])
    w = EdgeMultiset.from_edges(g.sorted_edges)
    assert mat_power(PolyMatrix.adjacency(g), 11)[1, 8].coefficient(w) == 6


def test_determinants_and_adjugates(two_cycles):
    assert determinant(PolyMatrix.identity(3)) == 1
    I_W = PolyMatrix.identity(3) - PolyMatrix.adjacency(TRIANGLE)
    assert determinant(I_W) == 1 - P(cycle(1, 2, 3))
    c1, c2 = cycle(1, 2, 3, 4), cycle(5, 6, 7)
    B = PolyMatrix.identity(7) - PolyMatrix.adjacency(two_cycles)
    assert determinant(B) == 1 - P(c2) - P(c1) + P(c1 * c2)
    assert adjugate(PolyMatrix.identity(2)) == PolyMatrix.identity(2)
    assert adjugate(I_W) @ I_W == PolyMatrix.identity(3).scale(determinant(I_W))
    A = adjugate(PolyMatrix.identity(5) - PolyMatrix.adjacency(PATH_AND_CYCLE))
    assert A[1, 2] == P(mono((1, 2))) - P(H)


def test_canonical_text_examples():
    assert canonical_text(Polynomial.zero()) == "0"
    # coefficients are always written out, including 1
    assert canonical_text(-Polynomial.variable(1, 1)) == "-1*w[1,1]"
    assert canonical_text(P(mono((1, 2), (1, 2), (2, 3)), 2)) == "+2*w[1,2]^2*w[2,3]"


def test_classification_examples(two_cycles):
    assert not classify(mono((1, 2), (3, 4))).is_hike
    assert classify(cycle(1, 2, 3, 4) * cycle(5, 6, 7)).is_closed
    c = classify(H)
    assert c.is_open and (c.source, c.target) == (1, 2)
    s = stats(H)
    assert (s.length, s.components, s.self_avoiding) == (4, 2, True)
    h2 = cycle(1, 2, 3) * cycle(2, 4, 5)
    assert not stats(h2).self_avoiding and len(h2.vertices()) == 5
    e = stats(EdgeMultiset.one())
    assert (e.length, e.components, e.self_avoiding) == (0, 0, True)


def test_poset_values():
    h2 = cycle(1, 2, 3) * cycle(2, 4, 5)
    assert mu(EdgeMultiset.one()) == 1 and mu(h2) == 0
    assert mu_ij(EdgeMultiset.one(), 3, 3) == 1
    assert mu_ij(path(1, 2, 3), 1, 3) == 1
    assert beta_closed_form(cycle(1, 2) * cycle(3, 4, 5)) == 1
    h3 = mono((1, 2), (2, 3), (3, 4), (4, 1), (6, 2), (2, 5), (5, 4), (4, 6))
    assert count_representations(h3, 2, 2) == count_representations(h3, 4, 4) == 4
    assert count_representations(h3, 1, 1) == 2
    assert count_representations(mono((1, 2), (3, 4)), 1, 4) == 0


def test_mu_ij_vanishes_at_length_n():
    g = Digraph.from_edges(3, [(i, j) for i in range(1, 4) for j in range(1, 4)])
    for ell in (3, 4):
        for h in enumerate_hikes(g, ell):
            for i in range(1, 4):
                for j in range(1, 4):
                    assert mu_ij(h, i, j) == 0


def test_closed_divisor_examples():
    c1, c2 = cycle(1, 2, 3, 4), cycle(5, 6, 7)
    assert set(closed_divisors(c1 * c2)) == {EdgeMultiset.one(), c1, c2, c1 * c2}
    h3 = mono((1, 2), (2, 3), (3, 4), (4, 1), (6, 2), (2, 5), (5, 4), (4, 6))
    assert {cycle(1, 2, 3, 4), cycle(2, 5, 4, 6), cycle(1, 2, 5, 4), cycle(2, 3, 4, 6)} <= set(closed_divisors(h3))


def test_psi_phi_small_cases(two_cycles):
    psi = cp.psi_sequence_by_cycles(TRIANGLE)
    assert psi[3] == -P(cycle(1, 2, 3)) and psi[1] == psi[2] == 0 and psi[0] == 1
    assert cp.psi_by_cycles(two_cycles, 7) == P(cycle(1, 2, 3, 4) * cycle(5, 6, 7))
    assert cp.psi_by_trace_recursion(Digraph.from_edges(2, [(1, 2), (2, 1)]))[2] == -P(cycle(1, 2))
    g = Digraph.from_edges(2, [(1, 1), (1, 2), (2, 1), (2, 2)])
    psi = cp.psi_sequence_by_cycles(g)
    assert cp.phi_by_compositions(psi, 1, literal=True) == -psi[1]
    assert cp.phi_by_compositions(psi, 2, literal=True) == psi[1] * psi[1] - psi[2]
    assert cp.phi_by_beta(TRIANGLE, 0) == 1
    assert cp.phi_by_beta(TRIANGLE, 6) == P(cycle(1, 2, 3) ** 2)


def test_m_matrices_small_cases():
    assert cp.m_ell(TRIANGLE, 0) == PolyMatrix.identity(3)
    assert cp.m_ell(TRIANGLE, 3).is_zero()
    assert cp.m_tilde_ell(PATH_AND_CYCLE, 4)[1, 2].coefficient(H) == 1
    assert cp.m_tilde_ell(TRIANGLE, 4).is_zero()


def test_walk_identity_edge_cases():
    assert cp.inverse_power_identity(TRIANGLE, 0)
    assert cp.inverse_power_identity(Digraph.from_edges(3, []), 4)


def test_cli_examples(tmp_path, capsys, two_cycles):
    g = tmp_path / "two_cycles.txt"
    g.write_text(two_cycles.to_text())
    assert main(["psi", str(g), "--k", "7"]) == 0
    assert capsys.readouterr().out == "+1*w[1,2]*w[2,3]*w[3,4]*w[4,1]*w[5,6]*w[6,7]*w[7,5]\n"
    assert main(["psi", str(g), "--k", "0"]) == 0
    assert capsys.readouterr().out == "+1\n"
    assert main(["eval", "beta", "1>2,2>3,3>5,5>6,6>4,4>1,2>5,5>4,4>2"]) == 0
    assert capsys.readouterr().out == "8\n"
    assert main(["eval", "mu", "1>2,2>1"]) == 0
    assert capsys.readouterr().out == "-1\n"
    pc = tmp_path / "pc.txt"
    pc.write_text(PATH_AND_CYCLE.to_text())
    main(["mell", str(pc), "--tilde", "--ell", "4"])
    assert "(1,2): +1*w[1,2]*w[3,4]*w[4,5]*w[5,3]" in capsys.readouterr().out
    main(["mell", str(g), "--ell", "0"])
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "(1,1): +1" and lines[1] == "(1,2): 0"
    assert main(["verify", str(g), "--max-len", "7"]) == 0
    capsys.readouterr()


def test_verify_crossing_backtracks(tmp_path, capsys):
    n = 4
    edges = sorted({(k, k % n + 1) for k in range(1, n + 1)} | {(k % n + 1, k) for k in range(1, n + 1)})
    g = tmp_path / "crossing.txt"
    g.write_text(Digraph.from_edges(n, edges).to_text())
    assert main(["verify", str(g), "--max-len", "8", "--identities", "theorem3"]) == 0
    capsys.readouterr()
    assert main(["eval", "f", ",".join(f"{i}>{j}" for i, j in edges), "--from", "1", "--to", "1"]) == 0
    assert capsys.readouterr().out == "8\n"
