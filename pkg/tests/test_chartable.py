from fractions import Fraction

import numpy as np
import pytest

from holoq.chartable import (ClassMismatch, NegativeMultiplicity, NotIrreducible,
                             character_table, classify_type, decompose, dixon_prime,
                             fs_count_formula, fs_indicator, indicator_by_summation, inner_product,
                             involution_count, is_skew, lattice_character, module_type_verdict,
                             principal_block_membership, regular_character, trivial_character)
from holoq.cyclotomic import Cyclotomic
from holoq.groups import prime_divisors
from holoq.zlattice import permutation_module, trivial_lattice

from conftest import GROUP_NAMES, fixture_group, load_example


def table(name):
    return character_table(fixture_group(name))


def values_at(chi, G, words):
    return [int(chi(G.evaluate(w)).to_fraction()) for w in words]


def test_c2():
    T = table("c2")
    assert [[str(v) for v in chi.values] for chi in T.irreducibles] == [["1", "1"], ["1", "-1"]]


def test_dixon_prime():
    assert dixon_prime(64, 4) == 17
    assert dixon_prime(24, 12) == 13
    assert dixon_prime(1, 1) == 3


def burnside_float_table(G):
    """Characters from eigenvectors of class matrices in floating point (independent route)."""
    classes = G.conjugacy_classes
    r = len(classes)
    sizes = np.array([c.size for c in classes], dtype=float)
    rng = np.random.default_rng(7)
    M = np.zeros((r, r))
    for j, cj in enumerate(classes):
        w = rng.normal()
        for i, ci in enumerate(classes):
            for k, ck in enumerate(classes):
                z = ck.representative
                cnt = sum(1 for x in cj.members if G.class_index[G.mul[G.inv[x], z]] == i)
                M[i, k] += w * cnt
    _, vecs = np.linalg.eig(M)
    chars = []
    inv_cls = [G.class_index[G.inv[c.representative]] for c in classes]
    for v in vecs.T:
        omega = v / v[0]
        s = sum(omega[i] * omega[inv_cls[i]] / sizes[i] for i in range(r))
        deg = np.sqrt(G.order / s)
        chars.append(omega * deg / sizes)
    return chars


@pytest.mark.parametrize("name", [n for n in GROUP_NAMES if n != "g64"])
def test_table_matches_float_oracle(name):
    G = fixture_group(name)
    T = character_table(G)
    exact = [np.array([v.to_complex() for v in chi.values]) for chi in T.irreducibles]
    approx = burnside_float_table(G)
    # each float character matches exactly one exact character
    for ch in approx:
        hits = [i for i, e in enumerate(exact) if np.allclose(e, ch, atol=1e-6)]
        assert len(hits) == 1


def test_s3_degrees_by_regular_representation():
    G = fixture_group("s3")
    T = character_table(G)
    assert sorted(chi.degree for chi in T.irreducibles) == [1, 1, 2]
    reg = lattice_character(G, permutation_module(G, [0]))
    assert decompose(T, reg) == [chi.degree for chi in T.irreducibles]


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_table_properties(name):
    G = fixture_group(name)
    T = character_table(G)
    assert len(T.irreducibles) == len(G.conjugacy_classes)
    assert sum(chi.degree ** 2 for chi in T.irreducibles) == G.order
    for i, chi in enumerate(T.irreducibles):
        for j, psi in enumerate(T.irreducibles):
            assert inner_product(chi, psi) == (1 if i == j else 0)
    assert T.irreducibles[0] == trivial_character(G)
    for chi, nu in zip(T.irreducibles, T.indicators):
        assert nu in (-1, 0, 1)
        if nu == -1:
            assert chi.degree % 2 == 0
        assert indicator_by_summation(G, chi) == nu
    assert involution_count(G) == fs_count_formula(T)


def test_q8_indicator():
    G = fixture_group("q8")
    T = character_table(G)
    two = [chi for chi in T.irreducibles if chi.degree == 2][0]
    # direct sum over the eight squares: 1 + 1 + 6 * (-2) / 2 ... computed literally
    direct = sum((two(int(G.power_map[g])) for g in range(8)), Cyclotomic.rational(0)) / 8
    assert direct == -1 == fs_indicator(T, two)
    assert classify_type(T, two) == "H"
    assert involution_count(G) == 2 == fs_count_formula(T)


def test_c3_faithful_linear_is_complex():
    T = table("c3")
    assert classify_type(T, T.irreducibles[0]) == "R"
    faithful = [chi for chi in T.irreducibles if not chi.is_rational()]
    assert len(faithful) == 2
    assert all(classify_type(T, chi) == "C" for chi in faithful)


def test_g64_group_table(g64):
    G, T = g64["G"], g64["T"]
    assert len(T) == 19
    h = [chi for chi, t in zip(T.irreducibles, T.types) if t == "H"]
    assert len(h) == 3 and all(chi.degree == 4 for chi in h)
    central = ["1", "a^2", "b^2", "a^2*b^2"]
    patterns = sorted(values_at(chi, G, central) for chi in h)
    assert patterns == sorted([[4, 4, -4, -4], [4, -4, 4, -4], [4, -4, -4, 4]])
    Z = G.center()
    assert all(chi(g) == 0 for chi in h for g in range(G.order) if g not in Z)
    assert is_skew(T)
    assert involution_count(G) == fs_count_formula(T) == 4
    chi1, chi2, chi3 = g64["chi"]
    assert values_at(chi1, G, central) == [4, 4, -4, -4]
    assert chi1.kernel() == frozenset({0, g64["a2"]})
    assert chi1.compose(g64["f2"]) == chi2 and chi1.compose(g64["f3"]) == chi3


def test_inner_products_with_s1(g64):
    chi = lattice_character(g64["G"], g64["S1"])
    assert chi.degree == 32
    assert [inner_product(chi, c) for c in g64["chi"]] == [4, 0, 0]
    one = trivial_character(g64["G"])
    assert inner_product(one, one) == 1


def test_lattice_characters(g64):
    G = g64["G"]
    M = lattice_character(G, g64["M"])
    assert M(g64["a2"]) == 16
    assert lattice_character(G, trivial_lattice(G)) == trivial_character(G)
    W = lattice_character(G, g64["W"])
    chi1, chi2, chi3 = g64["chi"]
    assert W == 4 * (chi1 + chi2 + chi3)
    T = g64["T"]
    mult = decompose(T, W)
    assert [mult[T.index(c)] for c in g64["chi"]] == [4, 4, 4] and sum(mult) == 12
    assert module_type_verdict(T, W) == "HT"


def test_module_type_verdicts():
    for name, want in (("hantzsche-wendt", "RT"), ("m2", "CT")):
        G, L, _ = load_example(name)
        T = character_table(G)
        assert module_type_verdict(T, lattice_character(G, L)) == want
    G = fixture_group("c3")
    T = character_table(G)
    assert module_type_verdict(T, regular_character(G)) == "mixed"


def test_regular_character_decomposition():
    for name in ("s4", "sl23", "q8d8"):
        T = table(name)
        G = T.group
        assert decompose(T, regular_character(G)) == [chi.degree for chi in T.irreducibles]


def test_errors():
    T = table("s3")
    G = T.group
    sign = T.irreducibles[0] if T.irreducibles[0] != trivial_character(G) else T.irreducibles[1]
    with pytest.raises(NegativeMultiplicity):
        decompose(T, trivial_character(G) + (-1) * T.irreducibles[1])
    with pytest.raises(NotIrreducible):
        classify_type(T, regular_character(G))
    other = trivial_character(fixture_group("c2"))
    with pytest.raises(ClassMismatch):
        inner_product(trivial_character(G), other)
    assert sign.degree == 1


def test_skew_flags():
    assert is_skew(table("c4")) and is_skew(table("c2xc2xc2"))
    assert not is_skew(table("s3"))
    assert is_skew(table("q8")) and not is_skew(table("d8"))


def test_principal_blocks_of_p_groups(g64):
    T = g64["T"]
    assert all(principal_block_membership(T, chi, 2) for chi in T.irreducibles)
    for name in ("q8", "d8", "c3xc3"):
        T = table(name)
        p = prime_divisors(T.group.order)[0]
        assert all(principal_block_membership(T, chi, p) for chi in T.irreducibles)


def test_s3_blocks_bruteforce():
    T = table("s3")
    G = T.group
    for p in (2, 3):
        for chi in T.irreducibles:
            # all values rational: compare central characters as integers mod p
            omega = [Fraction(c.size) * chi.values[k].to_fraction() / chi.degree
                     for k, c in enumerate(G.conjugacy_classes)]
            want = all((int(w) - c.size) % p == 0 for w, c in zip(omega, G.conjugacy_classes))
            assert principal_block_membership(T, chi, p) == want
    sign = [chi for chi in T.irreducibles if chi.degree == 1 and chi != trivial_character(G)][0]
    assert principal_block_membership(T, sign, 3)
    two = [chi for chi in T.irreducibles if chi.degree == 2][0]
    assert not principal_block_membership(T, two, 2)


def test_sl23_blocks():
    T = table("sl23")
    # degree-3 character has defect zero at p = 3
    three = [chi for chi in T.irreducibles if chi.degree == 3][0]
    assert not principal_block_membership(T, three, 3)
    assert principal_block_membership(T, T.irreducibles[0], 3)
