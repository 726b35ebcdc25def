#!/usr/bin/env python3
"""Time the compiled kernels against their numpy fallbacks.

Both variants are called directly, so the HOLOQ_DISABLE_NUMBA flag does
not matter here.  The first compiled call is timed separately because it
includes JIT compilation (cached on disk after the first run).
"""
import time

import numpy as np

from holoq import _kernels as K
from holoq._accel import HAS_NUMBA
from holoq.catalog import extraspecial32, g64_group, sl2_3
from holoq.cohomology import relation_matrix
from holoq.io import load_module
from holoq.pipeline import data_dir


def best_of(fn, *args, repeat=3):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t)
    return min(times), out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases():
    for name, G in (("sl23", sl2_3()), ("q8d8", extraspecial32("minus")), ("g64", g64_group())):
        yield f"mul_table[{name}]", K.mul_table_nb, K.mul_table_np, (G.gen_mul, G.parent, G.parent_gen)
        yield f"inverses[{name}]", K.inverses_nb, K.inverses_np, (G.mul,)
        yield f"class_labels[{name}]", K.class_labels_nb, K.class_labels_np, (G.mul, G.inv, G.gen_indices)
        cl = G.conjugacy_classes
        members = np.concatenate([np.array(c.members) for c in cl]).astype(np.int64)
        offsets = np.cumsum([0] + [c.size for c in cl]).astype(np.int64)
        reps = np.array([c.representative for c in cl], dtype=np.int64)
        yield (f"class_constants[{name}]", K.class_constants_nb, K.class_constants_np,
               (G.mul, G.inv, G.class_index, reps, members, offsets))

    G = g64_group()
    M = load_module(data_dir() / "paper-thm1" / "module.json", G)
    N = G.order ** 2
    F = relation_matrix(G, M, N)
    yield "hnf_mod[cocycle relations, g64]", K.hnf_mod_nb, K.hnf_mod_np, (F, N)
    H = K.hnf_mod_np(F, N)
    yield "snf_mod[64x64]", K.snf_mod_nb, K.snf_mod_np, (H, N)
    rng = np.random.default_rng(0)
    A = rng.integers(0, 101, size=(120, 160)).astype(np.int64)
    yield "rref_mod[120x160 mod 101]", K.rref_mod_nb, K.rref_mod_np, (A, 101)


def main():
    if not HAS_NUMBA:
        print("numba is not installed; only the numpy path is available")
    print("times in milliseconds")
    print(f"{'kernel':34s} {'numpy':>10s} {'numba 1st':>10s} {'numba':>10s} {'speedup':>8s}  agree")
    for label, nb, np_fn, args in cases():
        t_np, r_np = best_of(np_fn, *[np.copy(a) if isinstance(a, np.ndarray) else a for a in args])
        t0 = time.perf_counter()
        nb(*[np.copy(a) if isinstance(a, np.ndarray) else a for a in args])
        first = time.perf_counter() - t0
        t_nb, r_nb = best_of(nb, *[np.copy(a) if isinstance(a, np.ndarray) else a for a in args])
        print(f"{label:34s} {1e3 * t_np:10.3f} {1e3 * first:10.3f} {1e3 * t_nb:10.3f} {t_np / t_nb:8.1f}  {same(r_np, r_nb)}")


if __name__ == "__main__":
    main()
