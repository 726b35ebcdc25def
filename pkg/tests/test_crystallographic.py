import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from holoq import crystallographic, io
from holoq.chartable import inner_product, lattice_character, trivial_character
from holoq.cohomology import (InvalidCocycle, cocycle_direct_sum, h2, is_special,
                              prime_order_class_reps, pullback, zero_cocycle)
from holoq.crystallographic import (AffineElement, TestDisagreement, assemble, first_betti,
                                    is_torsion_free_direct, report)
from holoq.groups import sign_homomorphisms
from holoq.zlattice import (character_lattice, direct_sum, permutation_module, swap_lattice,
                            trivial_lattice)

from conftest import EXAMPLES, fixture_group, load_example, small_groups


def signed_perm(n, perm, signs):
    M = np.zeros((n, n), dtype=np.int64)
    for i, (j, s) in enumerate(zip(perm, signs)):
        M[i, j] = s
    return M


affine3 = st.builds(
    lambda p, s, t: AffineElement(signed_perm(3, p, s), t),
    st.permutations(range(3)), st.lists(st.sampled_from([1, -1]), min_size=3, max_size=3),
    st.lists(st.builds(Fraction, st.integers(-4, 4), st.integers(1, 4)), min_size=3, max_size=3))


@settings(max_examples=60, deadline=None)
@given(affine3, affine3, affine3)
def test_affine_group_laws(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert (x * x.inverse()).is_identity() and (x.inverse() * x).is_identity()
    assert x.power(3) == x * x * x
    assert x.power(0).is_identity()


def test_affine_composition_rule():
    A = AffineElement([[0, -1], [1, 0]], (Fraction(1, 2), 0))
    B = AffineElement([[1, 0], [0, -1]], (0, Fraction(1, 3)))
    AB = A * B
    assert AB.linear.tolist() == [[0, 1], [1, 0]]
    assert AB.translation == (Fraction(1, 2) - Fraction(1, 3), 0)


def test_lifts_multiply_up_to_lattice():
    G, L, c = load_example("hantzsche-wendt")
    gamma = assemble(G, L, c)
    for g in range(G.order):
        for h in range(G.order):
            prod = gamma.lift(g) * gamma.lift(h)
            ref = gamma.lift(int(G.mul[g, h]))
            assert np.array_equal(prod.linear, ref.linear)
            assert all((a - b).denominator == 1 for a, b in zip(prod.translation, ref.translation))


def has_finite_lift(gamma, g, box=2):
    """Brute force over small integer shifts: some lift of g has order |g|."""
    p = gamma.group.element_order(g)
    n = gamma.dimension
    for m in itertools.product(range(-box, box + 1), repeat=n):
        if gamma.lift(g, m).power(p).is_identity():
            return True
    return False


def test_split_extension_has_torsion():
    G, L, _ = load_example("hantzsche-wendt")
    gamma = assemble(G, L, zero_cocycle(L))
    res = is_torsion_free_direct(gamma)
    assert not res.torsion_free
    g, shift = res.witness
    assert gamma.lift(g, shift).power(G.element_order(g)).is_identity()
    assert not report(gamma).torsion_free


def torsion_cases():
    out = []
    for name in small_groups(8):
        G = fixture_group(name)
        if G.order == 1:
            continue
        mods = [trivial_lattice(G), permutation_module(G, [0, G.power_map[0]])]
        for val in sign_homomorphisms(G)[1:3]:
            s = {n: int(val[G.gen_index(n)]) for n in G.names}
            mods += [character_lattice(G, s), swap_lattice(G, s)]
        for k, L in enumerate(mods):
            if L.rank <= 4:
                out.append(pytest.param(L, id=f"{name}-{k}"))
    return out


@pytest.mark.parametrize("L", torsion_cases())
def test_direct_test_agrees_with_restrictions(L):
    G = L.group
    H = h2(G, L)
    classes = [zero_cocycle(L)]
    for coeffs in itertools.product(*[range(d) for d in H.invariants]):
        c = zero_cocycle(L)
        for k, b in zip(coeffs, H.basis):
            c = c + k * b
        classes.append(c)
    for c in classes[:8]:
        gamma = assemble(G, L, c)
        direct = is_torsion_free_direct(gamma)
        assert direct.torsion_free == is_special(c).special
        if direct.witness:
            g, shift = direct.witness
            assert gamma.lift(g, shift).power(G.element_order(g)).is_identity()
        elif L.rank <= 2:
            assert not any(has_finite_lift(gamma, z) for z in prime_order_class_reps(G))


def test_first_betti_is_trivial_multiplicity():
    for name in ("s3", "d8", "q8", "s4"):
        G = fixture_group(name)
        cyclic = G.subgroup_generated([G.gen_indices[0]])
        for L in (permutation_module(G, [0]), permutation_module(G, cyclic)):
            chi = lattice_character(G, L)
            assert first_betti(L) == inner_product(chi, trivial_character(G))
    for name in ("hantzsche-wendt", "klein-bottle", "m2"):
        G, L, _ = load_example(name)
        assert first_betti(L) == inner_product(lattice_character(G, L), trivial_character(G))


@pytest.mark.parametrize("name", ["hantzsche-wendt", "klein-bottle", "m2"])
def test_example_reports(name):
    G, L, c = load_example(name)
    exp = io.read_json(EXAMPLES / name / "expected.json")
    out = report(assemble(G, L, c)).as_dict()
    for k, v in exp.items():
        assert out[k] == v
    assert out["holonomy_faithful"]


def test_invalid_cocycle_rejected():
    G, L, c = load_example("klein-bottle")
    bad = io.cocycle_from_dict({"values": {n: ["1/3"] * L.rank for n in G.names}}, L)
    with pytest.raises(InvalidCocycle):
        assemble(G, L, bad)
    other = trivial_lattice(G, L.rank)
    with pytest.raises(InvalidCocycle):
        assemble(G, other, c)


def test_disagreement_raises(monkeypatch):
    G, L, c = load_example("klein-bottle")
    gamma = assemble(G, L, c)
    real = crystallographic.is_special

    def flipped(cc):
        r = real(cc)
        r.special = not r.special
        return r

    monkeypatch.setattr(crystallographic, "is_special", flipped)
    with pytest.raises(TestDisagreement):
        report(gamma)


@pytest.fixture(scope="module")
def g64_gamma(g64):
    G, W, alpha = g64["G"], g64["W"], g64["alpha"]
    c = cocycle_direct_sum(W, alpha, pullback(alpha, g64["f2"], g64["M2"]),
                           pullback(alpha, g64["f3"], g64["M3"]))
    return assemble(G, W, c)


def test_g64_report(g64, g64_gamma):
    rep = report(g64_gamma, g64["T"])
    assert rep.dimension == 48 and rep.torsion_free and rep.holonomy_faithful
    assert rep.first_betti == 0 and rep.type_verdict == "HT" and rep.holonomy_order == 64


def test_g64_powering_spot_check(g64, g64_gamma):
    G = g64["G"]
    rng = np.random.default_rng(11)
    for g in range(1, G.order):
        o = G.element_order(g)
        for _ in range(3):
            m = rng.integers(-2, 3, size=48)
            x = g64_gamma.lift(g, m)
            assert not x.power(o).is_identity()


def test_g64_single_summands_have_torsion(g64):
    G, M, alpha = g64["G"], g64["M"], g64["alpha"]
    gamma = assemble(G, M, alpha)
    res = is_torsion_free_direct(gamma)
    assert not res.torsion_free
    g, shift = res.witness
    assert gamma.lift(g, shift).power(2).is_identity()


def test_direct_sum_of_examples_betti():
    G, L, c = load_example("klein-bottle")
    W = direct_sum(L, trivial_lattice(G))
    assert first_betti(W) == 2
