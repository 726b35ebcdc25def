"""Integer kernels on index tables and small modular matrices.

Every kernel exists twice: ``*_nb`` (explicit loops, compiled by numba when
available) and ``*_np`` (vectorised numpy).  The unsuffixed name dispatches
on :data:`holoq._accel.USE_NUMBA`.  Both flavours must return identical
arrays; ``tests/test_kernels.py`` checks this and ``benchmarks/`` times them.

All matrices are ``int64``.  Modular kernels keep entries in ``[0, N)`` and
assume ``N**2`` fits in an int64.
"""
import numpy as np

from ._accel import USE_NUMBA, njit

INT = np.int64


# ---------------------------------------------------------------- helpers

@njit
def _xgcd(a, b):
    # returns (g, x, y) with x*a + y*b == g >= 0
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b != 0:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@njit
def _gcd(a, b):
    while b != 0:
        a, b = b, a % b
    return a if a >= 0 else -a


def _xgcd_py(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b != 0:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


# ------------------------------------------------------ multiplication table

@njit
def mul_table_nb(gen_mul, parent, parent_gen):
    n = gen_mul.shape[0]
    mul = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        mul[i, 0] = i
    for j in range(1, n):
        pj = parent[j]
        s = parent_gen[j]
        for i in range(n):
            mul[i, j] = gen_mul[mul[i, pj], s]
    return mul


def mul_table_np(gen_mul, parent, parent_gen):
    n = gen_mul.shape[0]
    mul = np.empty((n, n), dtype=INT)
    mul[:, 0] = np.arange(n)
    for j in range(1, n):
        mul[:, j] = gen_mul[mul[:, parent[j]], parent_gen[j]]
    return mul


def mul_table(gen_mul, parent, parent_gen):
    """Full Cayley table from right-multiplication-by-generator data.

    ``gen_mul[i, s]`` is the index of ``g_i * s``; element ``j > 0`` was
    discovered as ``g_parent[j] * s_parent_gen[j]`` with ``parent[j] < j``.
    """
    args = (np.ascontiguousarray(gen_mul, dtype=INT), np.asarray(parent, dtype=INT),
            np.asarray(parent_gen, dtype=INT))
    return mul_table_nb(*args) if USE_NUMBA else mul_table_np(*args)


@njit
def inverses_nb(mul):
    n = mul.shape[0]
    inv = np.empty(n, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if mul[i, j] == 0:
                inv[i] = j
                break
    return inv


def inverses_np(mul):
    return np.argmax(mul == 0, axis=1).astype(INT)


def inverses(mul):
    return inverses_nb(mul) if USE_NUMBA else inverses_np(mul)


# ---------------------------------------------------------- conjugacy classes

@njit
def class_labels_nb(mul, inv, gens):
    n = mul.shape[0]
    label = -np.ones(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    for x in range(n):
        if label[x] >= 0:
            continue
        label[x] = x
        top = 0
        stack[0] = x
        top = 1
        while top > 0:
            top -= 1
            y = stack[top]
            for k in range(gens.shape[0]):
                s = gens[k]
                z = mul[mul[inv[s], y], s]
                if label[z] < 0:
                    label[z] = x
                    stack[top] = z
                    top += 1
    return label


def class_labels_np(mul, inv, gens):
    n = mul.shape[0]
    conj = [mul[mul[inv[s], :], s] for s in gens]
    label = np.arange(n, dtype=INT)
    while True:
        new = label.copy()
        for c in conj:
            np.minimum(new, new[c], out=new)
            # propagate backwards along the same permutation
            np.minimum.at(new, c, label)
        if np.array_equal(new, label):
            return label
        label = new


def class_labels(mul, inv, gens):
    """Label each element by the smallest index in its conjugacy class."""
    gens = np.asarray(gens, dtype=INT)
    return class_labels_nb(mul, inv, gens) if USE_NUMBA else class_labels_np(mul, inv, gens)


@njit
def class_constants_nb(mul, inv, cls, reps, members, offsets):
    r = reps.shape[0]
    a = np.zeros((r, r, r), dtype=np.int64)
    for j in range(r):
        for t in range(offsets[j], offsets[j + 1]):
            xi = inv[members[t]]
            for k in range(r):
                a[j, cls[mul[xi, reps[k]]], k] += 1
    return a


def class_constants_np(mul, inv, cls, reps, members, offsets):
    r = reps.shape[0]
    a = np.zeros((r, r, r), dtype=INT)
    for j in range(r):
        xs = inv[members[offsets[j]:offsets[j + 1]]]
        ys = cls[mul[np.ix_(xs, reps)]]            # |K_j| x r
        ks = np.broadcast_to(np.arange(r), ys.shape)
        np.add.at(a[j], (ys.ravel(), ks.ravel()), 1)
    return a


def class_constants(mul, inv, cls, reps, members, offsets):
    """``a[j, i, k] = #{x in K_j : x^-1 z_k in K_i}`` for class reps ``z_k``.

    Equivalently the structure constants of the class sums,
    ``K_j K_i = sum_k a[j, i, k] K_k``.
    """
    args = tuple(np.asarray(v, dtype=INT) for v in (mul, inv, cls, reps, members, offsets))
    return class_constants_nb(*args) if USE_NUMBA else class_constants_np(*args)


# -------------------------------------------------------- linear algebra mod p

@njit
def rref_mod_nb(A, p):
    A = A % p
    m, n = A.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(n):
                tmp = A[r, k]
                A[r, k] = A[piv, k]
                A[piv, k] = tmp
        g, x, _ = _xgcd(A[r, c], p)
        x %= p
        for k in range(n):
            A[r, k] = (A[r, k] * x) % p
        for i in range(m):
            f = A[i, c]
            if i != r and f != 0:
                for k in range(n):
                    A[i, k] = (A[i, k] - f * A[r, k]) % p
        pivots[r] = c
        r += 1
    return A, pivots[:r].copy()


def rref_mod_np(A, p):
    A = np.array(A, dtype=INT) % p
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        f = A[:, c].copy()
        f[r] = 0
        A -= np.outer(f, A[r])
        A %= p
        pivots.append(c)
        r += 1
    return A, np.array(pivots, dtype=INT)


def rref_mod(A, p):
    """Reduced row echelon form over GF(p); returns ``(R, pivot_columns)``."""
    A = np.ascontiguousarray(A, dtype=INT)
    return rref_mod_nb(A, p) if USE_NUMBA else rref_mod_np(A, p)


def nullspace_mod(A, p):
    """Basis (as rows) of ``{x : A x = 0}`` over GF(p)."""
    A = np.asarray(A, dtype=INT)
    n = A.shape[1]
    R, piv = rref_mod(A, p)
    free = [c for c in range(n) if c not in set(piv.tolist())]
    basis = np.zeros((len(free), n), dtype=INT)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, c in enumerate(piv):
            basis[t, c] = (-R[i, f]) % p
    return basis


# ------------------------------------------------- lattice reduction mod N

@njit
def hnf_mod_nb(A, N):
    m, c = A.shape
    H = np.zeros((c, c), dtype=np.int64)
    for j in range(c):
        H[j, j] = N
    row = np.empty(c, dtype=np.int64)
    for r in range(m):
        nz = False
        for t in range(c):
            row[t] = A[r, t] % N
            if row[t] != 0:
                nz = True
        if not nz:
            continue
        for j in range(c):
            v = row[j]
            if v == 0:
                continue
            p = H[j, j]
            g, x, y = _xgcd(p, v)
            pg = p // g
            vg = v // g
            for t in range(j, c):
                h = H[j, t]
                w = row[t]
                H[j, t] = (x * h + y * w) % N
                row[t] = (vg * h - pg * w) % N
            if H[j, j] == 0:
                H[j, j] = N
    return H


def hnf_mod_np(A, N):
    A = np.asarray(A, dtype=INT) % N
    c = A.shape[1]
    H = np.diag(np.full(c, N, dtype=INT))
    for r in np.nonzero(A.any(axis=1))[0]:
        row = A[r].copy()
        for j in range(c):
            v = int(row[j])
            if v == 0:
                continue
            p = int(H[j, j])
            g, x, y = _xgcd_py(p, v)
            h = H[j, j:].copy()
            w = row[j:]
            H[j, j:] = (x * h + y * w) % N
            row[j:] = ((v // g) * h - (p // g) * w) % N
            if H[j, j] == 0:
                H[j, j] = N
            if not row[j + 1:].any():
                break
    return H


def hnf_mod(A, N):
    """Upper-triangular ``c x c`` matrix ``H`` with rowspan(H) + N Z^c equal
    to rowspan(A) + N Z^c.  Rows of ``A`` are streamed, so tall inputs are cheap.
    """
    A = np.ascontiguousarray(A, dtype=INT)
    return hnf_mod_nb(A, INT(N)) if USE_NUMBA else hnf_mod_np(A, int(N))


@njit
def snf_mod_nb(A, N):
    A = A % N
    m, c = A.shape
    Q = np.zeros((c, c), dtype=np.int64)
    for i in range(c):
        Q[i, i] = 1
    k = min(m, c)
    diag = np.full(k, N, dtype=np.int64)
    t = 0
    while t < k:
        best = -1
        bi = -1
        bj = -1
        for i in range(t, m):
            for j in range(t, c):
                if A[i, j] != 0:
                    gg = _gcd(A[i, j], N)
                    if best < 0 or gg < best:
                        best = gg
                        bi = i
                        bj = j
        if best < 0:
            break
        if bi != t:
            for j in range(c):
                tmp = A[t, j]
                A[t, j] = A[bi, j]
                A[bi, j] = tmp
        if bj != t:
            for i in range(m):
                tmp = A[i, t]
                A[i, t] = A[i, bj]
                A[i, bj] = tmp
            for i in range(c):
                tmp = Q[i, t]
                Q[i, t] = Q[i, bj]
                Q[i, bj] = tmp
        while True:
            for i in range(t + 1, m):
                y = A[i, t]
                if y != 0:
                    x = A[t, t]
                    g, s, u = _xgcd(x, y)
                    xg = x // g
                    yg = y // g
                    for j in range(t, c):
                        a1 = A[t, j]
                        a2 = A[i, j]
                        A[t, j] = (s * a1 + u * a2) % N
                        A[i, j] = (yg * a1 - xg * a2) % N
            for j in range(t + 1, c):
                y = A[t, j]
                if y != 0:
                    x = A[t, t]
                    g, s, u = _xgcd(x, y)
                    xg = x // g
                    yg = y // g
                    for i in range(t, m):
                        a1 = A[i, t]
                        a2 = A[i, j]
                        A[i, t] = (s * a1 + u * a2) % N
                        A[i, j] = (yg * a1 - xg * a2) % N
                    for i in range(c):
                        a1 = Q[i, t]
                        a2 = Q[i, j]
                        Q[i, t] = (s * a1 + u * a2) % N
                        Q[i, j] = (yg * a1 - xg * a2) % N
            dirty = False
            for i in range(t + 1, m):
                if A[i, t] != 0:
                    dirty = True
                    break
            if dirty:
                continue
            G = _gcd(A[t, t], N)
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, c):
                    if A[i, j] % G != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            for j in range(t, c):
                A[t, j] = (A[t, j] + A[bad, j]) % N
        diag[t] = _gcd(A[t, t], N)
        t += 1
    return diag, Q


def snf_mod_np(A, N):
    A = np.asarray(A, dtype=INT) % N
    m, c = A.shape
    Q = np.eye(c, dtype=INT)
    k = min(m, c)
    diag = np.full(k, N, dtype=INT)
    for t in range(k):
        sub = A[t:, t:]
        nz = np.argwhere(sub != 0)
        if nz.size == 0:
            break
        gg = np.gcd(sub[nz[:, 0], nz[:, 1]], N)
        bi, bj = nz[np.argmin(gg)] + t
        A[[t, bi]] = A[[bi, t]]
        A[:, [t, bj]] = A[:, [bj, t]]
        Q[:, [t, bj]] = Q[:, [bj, t]]
        while True:
            for i in np.nonzero(A[t + 1:, t])[0] + t + 1:
                x, y = int(A[t, t]), int(A[i, t])
                g, s, u = _xgcd_py(x, y)
                r1, r2 = A[t, t:].copy(), A[i, t:].copy()
                A[t, t:] = (s * r1 + u * r2) % N
                A[i, t:] = ((y // g) * r1 - (x // g) * r2) % N
            for j in np.nonzero(A[t, t + 1:])[0] + t + 1:
                x, y = int(A[t, t]), int(A[t, j])
                g, s, u = _xgcd_py(x, y)
                for M, lo in ((A, t), (Q, 0)):
                    c1, c2 = M[lo:, t].copy(), M[lo:, j].copy()
                    M[lo:, t] = (s * c1 + u * c2) % N
                    M[lo:, j] = ((y // g) * c1 - (x // g) * c2) % N
            if A[t + 1:, t].any():
                continue
            G = int(np.gcd(A[t, t], N))
            bad = np.argwhere(A[t + 1:, t + 1:] % G != 0)
            if bad.size == 0:
                break
            A[t, t:] = (A[t, t:] + A[t + 1 + bad[0, 0], t:]) % N
        diag[t] = np.gcd(A[t, t], N)
    return diag, Q


def snf_mod(A, N):
    """Smith form of ``A`` over Z/N.

    Returns ``(d, Q)``: invariants ``d`` (divisors of N, chained, with ``N``
    standing for a zero invariant) and a column transform ``Q`` invertible
    mod N with ``U A Q = diag(units * d)`` for some invertible ``U``.
    """
    A = np.ascontiguousarray(A, dtype=INT)
    return snf_mod_nb(A, INT(N)) if USE_NUMBA else snf_mod_np(A, int(N))
