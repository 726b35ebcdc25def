"""Integer matrices and G-lattices.

Matrices in the exact routines are lists of lists of Python ints (any
sequence of sequences is accepted on input).  HNF is row style: pivots
positive, entries above a pivot reduced into ``[0, pivot)``.

A :class:`GLattice` is ``Z^n`` with one invertible integer matrix per group
generator, acting on column vectors: ``rho(g*h) = rho(g) @ rho(h)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .groups import GroupError


class LatticeError(ValueError):
    pass


class NotAModule(LatticeError):
    pass


class NotStable(LatticeError):
    pass


class RankMismatch(LatticeError):
    pass


class GroupMismatch(LatticeError):
    pass


class NonRationalCharacter(LatticeError):
    pass


class NonIntegralInducedAction(LatticeError):
    pass


def _mat(A):
    return [[int(x) for x in row] for row in A]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)]


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


# -------------------------------------------------------------------- HNF

def hnf(A, transform=True):
    """Row Hermite normal form.  Returns ``(H, U)`` with ``H = U A``."""
    H = _mat(A)
    m = len(H)
    n = len(H[0]) if m else 0
    U = identity(m) if transform else None
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                if transform:
                    U[r], U[piv] = U[piv], U[r]
            done = True
            p = H[r][c]
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // p
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                    if transform:
                        U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            if transform:
                U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                if transform:
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def rank(A):
    H, _ = hnf(A, transform=False)
    return sum(1 for row in H if any(row))


def det(A):
    """Determinant by fraction-free (Bareiss) elimination."""
    M = _mat(A)
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# -------------------------------------------------------------------- SNF

def snf(A):
    """Smith normal form.  Returns ``(S, U, V)`` with ``S = U A V``.

    ``S`` is diagonal with nonnegative entries ``d1 | d2 | ...``.
    """
    S = _mat(A)
    m = len(S)
    n = len(S[0]) if m else 0
    U, V = identity(m), identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        S[dst] = [x - q * y for x, y in zip(S[dst], S[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for M in (S, V):
            for row in M:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        nz = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    add_row(i, t, q)
                    if S[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    add_col(j, t, q)
                    if S[t][j]:
                        clean = False
            if not clean:
                nz = [(abs(S[i][t]), i, t) for i in range(t, m) if S[i][t]]
                nz += [(abs(S[t][j]), t, j) for j in range(t, n) if S[t][j]]
                _, i, j = min(nz)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            p = S[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return S, U, V


def elementary_divisors(A):
    S, _, _ = snf(A)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i]]


# ------------------------------------------------------------ sublattices

def integer_kernel(A, ncols=None):
    """Rows spanning ``{x in Z^c : A x = 0}``; the span is always pure."""
    A = _mat(A)
    c = len(A[0]) if A else ncols
    if not A:
        return identity(c)
    H, U = hnf(transpose(A))
    return [U[i] for i in range(c) if not any(H[i])]


def saturate(vectors, n=None):
    """HNF basis (rows) of ``(Q-span of vectors) ∩ Z^n``."""
    vectors = [list(v) for v in vectors if any(v)]
    if not vectors:
        return []
    ann = integer_kernel(vectors)  # y with <v, y> = 0 for all v
    basis = integer_kernel(ann, ncols=len(vectors[0])) if ann else identity(len(vectors[0]))
    H, _ = hnf(basis, transform=False)
    return [row for row in H if any(row)]


def lattice_basis(vectors):
    """HNF basis (rows) of the Z-span of ``vectors``."""
    H, _ = hnf(vectors, transform=False)
    return [row for row in H if any(row)]


def is_pure(vectors):
    return lattice_basis(vectors) == saturate(vectors)


def solve_in_basis(H, v, integral=True):
    """Coordinates of ``v`` in the row-HNF basis ``H`` or None if not in span.

    With ``integral=False`` rational coordinates are allowed.
    """
    v = [Fraction(x) for x in v]
    coords = []
    for row in H:
        p = next(j for j, x in enumerate(row) if x)
        q = v[p] / row[p]
        if integral and q.denominator != 1:
            return None
        coords.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return [int(q) for q in coords] if integral else coords


def solve_rational(B, v):
    """Rational ``x`` with ``sum x_i B[i] = v`` for independent rows ``B``, or None."""
    k = len(B)
    n = len(v)
    # solve B^T x = v by Gaussian elimination over Q
    M = [[Fraction(B[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(n):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(M[i][k] for i in range(r, n)):
        return None
    x = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        x[c] = M[i][k]
    return x


def in_span_plus_lattice(C, t, annihilator=None):
    """Decide ``t ∈ C Q^c + Z^m`` for an integer ``m x c`` matrix ``C``.

    ``annihilator`` may pass a precomputed :func:`integer_kernel` of ``C^T``.
    """
    Y = integer_kernel(transpose(_mat(C))) if annihilator is None else annihilator
    t = [Fraction(x) for x in t]
    return all(sum((y * x for y, x in zip(row, t)), Fraction(0)).denominator == 1 for row in Y)


# -------------------------------------------------------------- G-lattices

class GLattice:
    """``Z^n`` with a left action of a :class:`~holoq.groups.PermGroup`."""

    def __init__(self, group, action):
        self.group = group
        self.action = {}
        for name in group.names:
            if name not in action:
                raise NotAModule(f"no matrix for generator {name!r}")
            self.action[name] = np.array(action[name], dtype=np.int64)
        shapes = {a.shape for a in self.action.values()}
        if len(shapes) != 1 or any(len(s) != 2 or s[0] != s[1] for s in shapes):
            raise NotAModule("action matrices must be square of a common size")
        self.rank = shapes.pop()[0]

    def __repr__(self):
        return f"GLattice(rank={self.rank}, group order={self.group.order})"

    @cached_property
    def matrices(self):
        """``rho(g)`` for every element index, built along the BFS tree."""
        G = self.group
        gens = [self.action[n] for n in G.names]
        mats = np.empty((G.order, self.rank, self.rank), dtype=np.int64)
        mats[0] = np.eye(self.rank, dtype=np.int64)
        for j in range(1, G.order):
            m = mats[G.parent[j]] @ gens[G.parent_gen[j]]
            if np.abs(m).max() > 2**40:
                raise NotAModule("matrix entries blow up; action is not of finite order")
            mats[j] = m
        return mats

    def module_check(self):
        """True iff the generator matrices define a representation of the group."""
        for a in self.action.values():
            if abs(det(a.tolist())) != 1:
                return False
        try:
            mats = self.matrices
        except NotAModule:
            return False
        G = self.group
        for k, name in enumerate(G.names):
            img = mats[G.gen_mul[:, k]]
            if not (img == mats @ self.action[name]).all():
                return False
        return True

    def require_module(self):
        if not self.module_check():
            raise NotAModule("action matrices do not satisfy the group relations")
        return self

    def is_faithful(self):
        eye = np.eye(self.rank, dtype=np.int64)
        return int((self.matrices == eye).all(axis=(1, 2)).sum()) == 1

    def image_order(self):
        return len({m.tobytes() for m in self.matrices})

    def traces(self):
        return np.trace(self.matrices, axis1=1, axis2=2)

    @cached_property
    def coboundary_annihilator(self):
        """Integer kernel of ``C^T`` where ``C`` stacks ``rho(s) - I`` over generators."""
        C = np.vstack([self.action[n] - np.eye(self.rank, dtype=np.int64) for n in self.group.names])
        return integer_kernel(C.T.tolist(), ncols=C.shape[0])

    def fixed_rank(self):
        C = np.vstack([self.action[n] - np.eye(self.rank, dtype=np.int64) for n in self.group.names])
        return self.rank - rank(C.tolist())

    def same_action(self, other):
        return all((self.action[n] == other.action[n]).all() for n in self.group.names)


def trivial_lattice(G, n=1):
    return GLattice(G, {name: np.eye(n, dtype=np.int64) for name in G.names})


def character_lattice(G, signs):
    """Rank-one lattice where generator ``s`` acts by ``signs[s]`` (+1 or -1)."""
    return GLattice(G, {name: [[int(signs[name])]] for name in G.names})


def swap_lattice(G, signs):
    """Rank-two lattice swapping the coordinates wherever ``signs`` is -1."""
    sw = [[0, 1], [1, 0]]
    return GLattice(G, {name: (sw if signs[name] < 0 else identity(2)) for name in G.names})


def signed_permutation_matrix(n, cycles, negated_rows):
    """``D @ P`` with ``P[i, i^s] = 1`` and ``D`` negating the 1-based rows given."""
    M = np.zeros((n, n), dtype=np.int64)
    images = list(range(n))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            images[x - 1] = cyc[(i + 1) % len(cyc)] - 1
    for i, j in enumerate(images):
        M[i, j] = 1
    for r in negated_rows:
        M[r - 1] *= -1
    return M


def permutation_action_lattice(G, perms):
    """Permutation lattice of a homomorphism G -> S_n given on generators.

    ``perms`` maps generator names to image tuples (0-based).  The basis
    vector of point ``i`` is sent to that of ``i^(g^-1)``, matching
    :func:`signed_permutation_matrix` with no signs.
    """
    action = {}
    for name, img in perms.items():
        M = np.zeros((len(img), len(img)), dtype=np.int64)
        for i, j in enumerate(img):
            M[i, j] = 1
        action[name] = M
    return GLattice(G, action)


def permutation_module(G, H):
    """Lattice on the left cosets ``xH`` with ``g . e_{xH} = e_{gxH}``.

    Cosets are ordered by their smallest element index.
    """
    H = sorted(int(h) for h in H)
    if not G.is_subgroup(H):
        raise GroupError("not a subgroup")
    coset_of = -np.ones(G.order, dtype=np.int64)
    n = 0
    for x in range(G.order):
        if coset_of[x] < 0:
            coset_of[G.mul[x, H]] = n
            n += 1
    reps = [int(np.nonzero(coset_of == k)[0][0]) for k in range(n)]
    action = {}
    for name in G.names:
        g = G.gen_index(name)
        M = np.zeros((n, n), dtype=np.int64)
        for k, x in enumerate(reps):
            M[coset_of[G.mul[g, x]], k] = 1
        action[name] = M
    return GLattice(G, action)


def direct_sum(*lattices):
    if not lattices:
        raise LatticeError("empty direct sum")
    G = lattices[0].group
    for L in lattices[1:]:
        if L.group is not G:
            raise GroupMismatch("summands live over different groups")
    n = sum(L.rank for L in lattices)
    action = {}
    for name in G.names:
        M = np.zeros((n, n), dtype=np.int64)
        o = 0
        for L in lattices:
            M[o:o + L.rank, o:o + L.rank] = L.action[name]
            o += L.rank
        action[name] = M
    return GLattice(G, action)


def twist_by_automorphism(L, f):
    """``L^f``: generator ``s`` acts as ``rho(f(s))``."""
    G = L.group
    return GLattice(G, {name: L.matrices[f.full_map[G.gen_index(name)]] for name in G.names})


@dataclass
class Projection:
    B: list            # rational n x n matrix
    basis: list        # k x n integer rows, HNF, spanning a pure sublattice
    lattice: GLattice  # induced action on the basis
    rank: int


def isotypic_projection(G, L, chi, scale=1):
    """Pure sublattice of ``L`` cut out by a rational multiple of ``chi``.

    ``B = (s chi(1)/|G|) sum_g conj(s chi(g)) rho(g)`` with ``s = scale``;
    ``B / s^2`` is the central idempotent of ``chi``.  The returned basis
    spans ``(column space of B) ∩ Z^n``.
    """
    if L.group is not G:
        raise GroupMismatch("lattice lives over a different group")
    vals = []
    for k in range(len(G.conjugacy_classes)):
        v = chi.values[k] * scale
        if not v.is_rational():
            raise NonRationalCharacter(f"value {v} is not rational")
        vals.append(v.to_fraction())
    deg = chi.values[0].to_fraction() * scale
    weights = [vals[G.class_index[g]] for g in range(G.order)]
    den = 1
    for w in weights:
        den = den * w.denominator // np.gcd(den, w.denominator)
    iw = np.array([int(w * den) for w in weights], dtype=np.int64)
    S = np.tensordot(iw, L.matrices, axes=1)
    factor = deg / G.order / den
    B = [[factor * int(x) for x in row] for row in S]
    cols = transpose(S.tolist())
    basis = saturate(cols)
    action = {}
    for name in G.names:
        rho = L.action[name]
        X = np.zeros((len(basis), len(basis)), dtype=np.int64)
        for j, b in enumerate(basis):
            c = solve_in_basis(basis, (rho @ np.array(b, dtype=np.int64)).tolist())
            if c is None:
                raise NonIntegralInducedAction(f"generator {name} leaves the sublattice")
            X[:, j] = c
        action[name] = X
    return Projection(B, basis, GLattice(G, action), len(basis))


def induced_action(L, basis):
    """Matrices of the action on the sublattice spanned by ``basis`` rows.

    Raises :class:`NotStable` when some generator leaves the rational span
    and :class:`NonIntegralInducedAction` when it leaves the lattice.
    """
    k = len(basis)
    action = {}
    for name in L.group.names:
        rho = L.action[name]
        X = [[0] * k for _ in range(k)]
        for j, b in enumerate(basis):
            img = (rho @ np.array(b, dtype=np.int64)).tolist()
            c = solve_rational(basis, img)
            if c is None:
                raise NotStable(f"generator {name} does not preserve the span")
            if any(x.denominator != 1 for x in c):
                raise NonIntegralInducedAction(f"generator {name} leaves the sublattice")
            for i in range(k):
                X[i][j] = int(c[i])
        action[name] = X
    return action


def change_basis_check(L, claimed_basis, claimed_action):
    """True iff ``claimed_basis`` spans a G-stable pure sublattice whose
    induced action equals ``claimed_action`` entry for entry."""
    k = len(claimed_basis)
    if rank(claimed_basis) != k:
        raise RankMismatch("claimed basis vectors are dependent")
    if not is_pure(claimed_basis):
        raise RankMismatch("claimed basis does not span a pure sublattice")
    for name, X in claimed_action.items():
        if np.asarray(X).shape != (k, k):
            raise RankMismatch(f"claimed matrix for {name} is not {k}x{k}")
    try:
        action = induced_action(L, claimed_basis)
    except NonIntegralInducedAction:
        return False
    return all(np.array_equal(np.array(action[n]), np.asarray(claimed_action[n]))
               for n in L.group.names)
