"""The numba kernels and their numpy fallbacks must agree exactly."""
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from holoq import _kernels as K
from holoq._accel import HAS_NUMBA
from holoq.zlattice import elementary_divisors

from conftest import GROUP_NAMES, fixture_group

pytestmark = pytest.mark.skipif(not HAS_NUMBA, reason="numba not installed")


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_group_kernels_agree(name):
    G = fixture_group(name)
    args = (G.gen_mul, G.parent, G.parent_gen)
    assert np.array_equal(K.mul_table_nb(*args), K.mul_table_np(*args))
    assert np.array_equal(K.inverses_nb(G.mul), K.inverses_np(G.mul))
    cl_args = (G.mul, G.inv, G.gen_indices)
    assert np.array_equal(K.class_labels_nb(*cl_args), K.class_labels_np(*cl_args))
    cl = G.conjugacy_classes
    members = np.concatenate([np.array(c.members) for c in cl]).astype(np.int64)
    offsets = np.cumsum([0] + [c.size for c in cl]).astype(np.int64)
    reps = np.array([c.representative for c in cl], dtype=np.int64)
    cc = (G.mul, G.inv, G.class_index, reps, members, offsets)
    a_nb, a_np = K.class_constants_nb(*cc), K.class_constants_np(*cc)
    assert np.array_equal(a_nb, a_np)
    # K_j K_i is a sum of class sums of total size |K_j| |K_i|
    sizes = np.array([c.size for c in cl])
    assert (np.einsum("jik,k->ji", a_nb, sizes) == np.outer(sizes, sizes)).all()


mats = st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(
    lambda s: arrays(np.int64, s, elements=st.integers(-40, 40)))


@settings(max_examples=60, deadline=None)
@given(mats, st.sampled_from([2, 3, 5, 7, 101]))
def test_rref_agrees(A, p):
    R1, p1 = K.rref_mod_nb(A.copy(), p)
    R2, p2 = K.rref_mod_np(A.copy(), p)
    assert np.array_equal(R1, R2) and np.array_equal(p1, p2)
    null = K.nullspace_mod(A, p)
    assert not ((A @ null.T) % p).any()
    assert len(null) + len(p1) == A.shape[1]


@settings(max_examples=60, deadline=None)
@given(mats, st.sampled_from([4, 8, 12, 16, 64, 4096]))
def test_modular_normal_forms(A, N):
    H1 = K.hnf_mod_nb(A.copy(), N)
    H2 = K.hnf_mod_np(A.copy(), N)
    assert np.array_equal(H1, H2)
    d1, Q1 = K.snf_mod_nb(H1.copy(), N)
    d2, Q2 = K.snf_mod_np(H1.copy(), N)
    assert np.array_equal(d1, d2) and np.array_equal(Q1, Q2)
    # invariants of the lattice rowspan(A) + N Z^c, computed exactly
    c = A.shape[1]
    stacked = np.vstack([A, N * np.eye(c, dtype=np.int64)]).tolist()
    assert sorted(d1.tolist()) == sorted(elementary_divisors(stacked))
    # invariants form a divisibility chain
    assert all(y % x == 0 for x, y in zip(d1, d1[1:]))


def _run(code, flag):
    env = dict(os.environ)
    if flag:
        env["HOLOQ_DISABLE_NUMBA"] = "1"
    else:
        env.pop("HOLOQ_DISABLE_NUMBA", None)
    return subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                          text=True, check=True).stdout.strip()


def test_environment_flag_selects_path():
    code = "from holoq._accel import USE_NUMBA; print(USE_NUMBA)"
    assert _run(code, flag=False) == "True"
    assert _run(code, flag=True) == "False"


def test_both_paths_give_identical_tables():
    code = ("from holoq.catalog import sl2_3; from holoq.chartable import character_table;"
            "T = character_table(sl2_3());"
            "print([[str(v) for v in c.values] for c in T.irreducibles])")
    assert _run(code, flag=False) == _run(code, flag=True)
