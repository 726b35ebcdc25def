import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holoq import io
from holoq.groups import find_automorphisms, inverse_automorphism
from holoq.chartable import character_table, inner_product, lattice_character, trivial_character
from holoq.zlattice import (GroupMismatch, NotStable, RankMismatch, change_basis_check,
                            character_lattice, det, direct_sum, elementary_divisors, hnf,
                            integer_kernel, is_pure, isotypic_projection, lattice_basis, matmul,
                            permutation_module, rank, saturate, snf, solve_in_basis,
                            swap_lattice, trivial_lattice, twist_by_automorphism)

from conftest import BUNDLE, fixture_group

small_mats = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


def test_snf_diag_2_3():
    S, U, V = snf([[2, 0], [0, 3]])
    assert S == [[1, 0], [0, 6]]
    assert matmul(matmul(U, [[2, 0], [0, 3]]), V) == S
    assert elementary_divisors([[2, 4], [6, 8]]) == [2, 4]


@settings(max_examples=80, deadline=None)
@given(small_mats)
def test_hnf_properties(A):
    H, U = hnf(A)
    assert matmul(U, A) == H
    assert abs(det(U)) == 1
    r = rank(A)
    assert all(not any(row) for row in H[r:])
    pivots = [next(j for j, x in enumerate(row) if x) for row in H[:r]]
    assert pivots == sorted(set(pivots))
    for i, p in enumerate(pivots):
        assert H[i][p] > 0
        assert all(0 <= H[k][p] < H[i][p] for k in range(i))


@settings(max_examples=80, deadline=None)
@given(small_mats)
def test_snf_properties(A):
    S, U, V = snf(A)
    assert matmul(matmul(U, A), V) == S
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    d = [S[i][i] for i in range(min(len(S), len(S[0])))]
    off = [S[i][j] for i in range(len(S)) for j in range(len(S[0])) if i != j]
    assert not any(off) and all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == rank(A)


@settings(max_examples=60, deadline=None)
@given(small_mats)
def test_saturation_and_kernel(A):
    sat = saturate(A)
    assert is_pure(sat)
    assert len(sat) == rank(A)
    # the Z-span of A sits inside the saturation
    for row in A:
        if any(row):
            assert solve_in_basis(sat, row) is not None
    K = integer_kernel(A, ncols=len(A[0]))
    assert all(not any(sum(a * k for a, k in zip(row, kr)) for row in A) for kr in K)
    assert len(K) == len(A[0]) - rank(A)


def test_impure_lattice():
    assert not is_pure([[2, 0], [0, 1]])
    assert saturate([[2, 4]]) == [[1, 2]]
    assert lattice_basis([[2, 4], [1, 2]]) == [[1, 2]]


def test_module_check_rejects_bad_action():
    G = fixture_group("c2")
    assert character_lattice(G, {"x": -1}).module_check()
    assert not io.module_from_dict({"rank": 1, "action": {"x": [[1]]}}, G) is None
    bad = io.module_from_dict({"rank": 2, "action": {"x": [[0, 1], [1, 1]]}}, G)
    assert not bad.module_check()
    sing = io.module_from_dict({"rank": 1, "action": {"x": [[2]]}}, G)
    assert not sing.module_check()


def test_permutation_module_cases():
    G = fixture_group("s3")
    reg = permutation_module(G, [0])
    assert reg.rank == 6 and reg.module_check() and reg.is_faithful()
    assert lattice_character(G, permutation_module(G, range(G.order))) == trivial_character(G)
    sub = [g for g in range(G.order) if G.element_order(g) in (1, 2)][:2]
    L = permutation_module(G, sub)
    assert L.rank == 3 and L.module_check() and L.fixed_rank() == 1


def test_g64_projection(g64):
    G, S1 = g64["G"], g64["S1"]
    chi1 = g64["chi"][0]
    P = isotypic_projection(G, S1, chi1, scale=2)
    assert P.rank == 16
    n = len(P.B)
    B2 = [[sum(P.B[i][k] * P.B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert all(B2[i][j] == 4 * P.B[i][j] for i in range(n) for j in range(n))
    assert P.lattice.module_check()
    assert lattice_character(G, P.lattice) == 4 * chi1
    # other quaternionic components are zero in S1
    for chi in g64["chi"][1:]:
        assert inner_product(lattice_character(G, S1), chi) == 0
        assert isotypic_projection(G, S1, chi, scale=2).rank == 0


def test_reconciliation_with_printed_action(g64):
    G, S1, M = g64["G"], g64["S1"], g64["M"]
    emb = io.read_json(BUNDLE / "module.json")["embedding"]
    basis = emb["basis"]
    assert change_basis_check(S1, basis, M.action)
    P = isotypic_projection(G, S1, g64["chi"][0], scale=2)
    assert lattice_basis(basis) == P.basis
    flipped = {k: v.copy() for k, v in M.action.items()}
    row = next(i for i in range(M.rank) if flipped["a"][i].any())
    flipped["a"][row] *= -1
    assert not change_basis_check(S1, basis, flipped)


def test_change_basis_errors():
    G = fixture_group("c2")
    L = swap_lattice(G, {"x": -1})
    with pytest.raises(RankMismatch):
        change_basis_check(L, [[1, 1], [2, 2]], {"x": [[1, 0], [0, 1]]})
    with pytest.raises(RankMismatch):
        change_basis_check(L, [[2, 2]], {"x": [[1]]})
    with pytest.raises(NotStable):
        change_basis_check(L, [[1, 0]], {"x": [[1]]})
    assert change_basis_check(L, [[1, 1]], {"x": [[1]]})
    assert change_basis_check(L, [[1, -1]], {"x": [[-1]]})


def test_twist(g64):
    G, M, f2 = g64["G"], g64["M"], g64["f2"]
    gens = [G.gen_index(n) for n in G.names]
    ident = find_automorphisms(G, [(g, g) for g in gens], first_only=True)[0]
    assert twist_by_automorphism(M, ident).same_action(M)
    back = twist_by_automorphism(twist_by_automorphism(M, f2), inverse_automorphism(G, f2))
    assert back.same_action(M)
    M2 = g64["M2"]
    assert M2.module_check()
    chi1, chi2, _ = g64["chi"]
    assert lattice_character(G, M2) == 4 * chi2


def test_direct_sum(g64):
    W = g64["W"]
    assert W.rank == 48 and W.module_check() and W.is_faithful() and W.fixed_rank() == 0
    assert not g64["M"].is_faithful()
    with pytest.raises(GroupMismatch):
        direct_sum(trivial_lattice(fixture_group("c2")), trivial_lattice(fixture_group("c3")))


def test_traces_are_character():
    G = fixture_group("s4")
    L = permutation_module(G, [0])
    T = character_table(G)
    chi = lattice_character(G, L)
    assert list(L.traces()) == [int(chi(g).to_fraction()) for g in range(G.order)]
    assert [inner_product(chi, c) for c in T.irreducibles] == [c.degree for c in T.irreducibles]
    assert np.all(L.matrices[0] == np.eye(24))
