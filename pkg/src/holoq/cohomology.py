"""Second cohomology of G-lattices through ``H^1(G, Q^n/Z^n)``.

A class in ``H^2(G, L)`` is represented by a 1-cocycle ``f: G -> Q^n/Z^n``
(a vector system), ``f(gh) = f(g) + rho(g) f(h)``.  Such a cocycle is fixed
by its values on the generators; these satisfy one linear condition per
non-tree edge of the Cayley graph.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import _kernels
from .zlattice import in_span_plus_lattice, snf, twist_by_automorphism


class CohomologyError(ValueError):
    pass


class InvalidCocycle(CohomologyError):
    pass


class NotPrimeOrder(CohomologyError):
    pass


class GroupTooLarge(CohomologyError):
    pass


def _frac_mod1(x):
    x = Fraction(x)
    return x - math.floor(x)


class Cocycle1:
    """1-cocycle with values in ``Q^n/Z^n``, stored by its generator values."""

    def __init__(self, lattice, values, check=True):
        self.lattice = lattice
        G = lattice.group
        self.values = {}
        for name in G.names:
            v = values.get(name)
            if v is None or len(v) != lattice.rank:
                raise InvalidCocycle(f"value for generator {name!r} missing or of wrong length")
            self.values[name] = tuple(_frac_mod1(x) for x in v)
        if check and not self.is_valid():
            raise InvalidCocycle("generator values violate the cocycle condition")

    def __repr__(self):
        return f"Cocycle1(rank={self.lattice.rank}, denominator={self.denominator})"

    @property
    def group(self):
        return self.lattice.group

    @property
    def denominator(self):
        return math.lcm(1, *(x.denominator for v in self.values.values() for x in v))

    def vector(self):
        """Generator values concatenated in generator order."""
        return [x for name in self.group.names for x in self.values[name]]

    @cached_property
    def _table(self):
        """Numerators mod ``D`` of ``f(g)`` for every element, built along the BFS tree."""
        G, L, D = self.group, self.lattice, self.denominator
        gens = [np.array([int(x * D) for x in self.values[n]], dtype=np.int64) for n in G.names]
        F = np.zeros((G.order, L.rank), dtype=np.int64)
        mats = L.matrices
        for j in range(1, G.order):
            p = G.parent[j]
            F[j] = (F[p] + mats[p] @ gens[G.parent_gen[j]]) % D
        return F, gens

    def is_valid(self):
        G, L, D = self.group, self.lattice, self.denominator
        F, gens = self._table
        mats = L.matrices
        for k in range(len(G.names)):
            lhs = (F + mats @ gens[k]) % D
            if not (lhs == F[G.gen_mul[:, k]]).all():
                return False
        return True

    def all_values(self):
        F, _ = self._table
        return F, self.denominator

    def __add__(self, other):
        if other.lattice is not self.lattice:
            raise CohomologyError("cocycles on different lattices")
        return Cocycle1(self.lattice, {n: [a + b for a, b in zip(self.values[n], other.values[n])]
                                       for n in self.group.names}, check=False)

    def __rmul__(self, k):
        return Cocycle1(self.lattice, {n: [k * a for a in v] for n, v in self.values.items()},
                        check=False)

    def __neg__(self):
        return (-1) * self

    def __sub__(self, other):
        return self + (-other)


def zero_cocycle(L):
    return Cocycle1(L, {n: [0] * L.rank for n in L.group.names})


def evaluate(c, g):
    """``f(g)`` reduced into ``[0, 1)^n``."""
    F, D = c.all_values()
    return tuple(Fraction(int(x), D) for x in F[g])


def evaluate_word(c, word):
    """``f`` along an explicit word of generator names (expansion of the cocycle rule)."""
    L = c.lattice
    v = [Fraction(0)] * L.rank
    acc = np.eye(L.rank, dtype=np.int64)
    for name in word:
        t = c.values[name]
        v = [a + sum(int(acc[i, j]) * t[j] for j in range(L.rank)) for i, a in enumerate(v)]
        acc = acc @ L.action[name]
    return tuple(_frac_mod1(x) for x in v)


def is_coboundary(c):
    """True iff ``c(s) = (rho(s) - 1) m`` mod ``Z^n`` for one ``m`` in ``Q^n``."""
    L = c.lattice
    return in_span_plus_lattice(None, c.vector(), annihilator=L.coboundary_annihilator)


def cohomologous(c1, c2):
    return is_coboundary(c1 - c2)


def restriction_nonzero(c, z):
    """True iff the restriction of the class of ``c`` to ``<z>`` is nonzero."""
    G, L = c.group, c.lattice
    o = G.element_order(z)
    if o < 2 or any(o % q == 0 for q in range(2, int(o**0.5) + 1)):
        raise NotPrimeOrder(f"element has order {o}")
    C = L.matrices[z] - np.eye(L.rank, dtype=np.int64)
    return not in_span_plus_lattice(C.tolist(), evaluate(c, z))


def prime_order_class_reps(G):
    out = []
    for cl in G.conjugacy_classes:
        o = G.element_order(cl.representative)
        if o > 1 and all(o % q for q in range(2, int(o**0.5) + 1)):
            out.append(cl.representative)
    return out


@dataclass
class SpecialReport:
    special: bool
    restrictions: list  # (word, order, nonzero)

    def __bool__(self):
        return self.special


def is_special(c):
    G = c.group
    rows = []
    for z in prime_order_class_reps(G):
        rows.append((G.word_name(z), G.element_order(z), restriction_nonzero(c, z)))
    return SpecialReport(all(r[2] for r in rows), rows)


def pullback(c, f, twisted=None):
    """``f^* c``, a cocycle for the twisted lattice ``L^f``."""
    L = c.lattice
    G = L.group
    Lf = twist_by_automorphism(L, f) if twisted is None else twisted
    vals = {n: evaluate(c, f.full_map[G.gen_index(n)]) for n in G.names}
    return Cocycle1(Lf, vals)


def cocycle_direct_sum(lattice, *cocycles):
    """Concatenate cocycles on the summands of ``lattice``."""
    G = lattice.group
    vals = {n: [x for c in cocycles for x in c.values[n]] for n in G.names}
    return Cocycle1(lattice, vals)


@dataclass
class CohomologyGroup:
    invariants: list
    basis: list

    @property
    def order(self):
        return math.prod(self.invariants)

    def __str__(self):
        if not self.invariants:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariants)


# ------------------------------------------------------------- H^2 via H^1

def relation_matrix(G, L, modulus):
    """Rows of ``A_g + rho(g) E_s - A_{gs}`` over the non-tree Cayley edges.

    ``A_g`` expresses ``f(g)`` linearly in the stacked generator values.
    Entries are reduced modulo ``modulus``.
    """
    n, k = L.rank, len(G.names)
    mats = L.matrices % modulus
    A = np.zeros((G.order, n, k * n), dtype=np.int64)
    for j in range(1, G.order):
        p, s = G.parent[j], G.parent_gen[j]
        A[j] = A[p]
        A[j][:, s * n:(s + 1) * n] += mats[p]
        A[j] %= modulus
    blocks = []
    for g in range(G.order):
        for s in range(k):
            h = G.gen_mul[g, s]
            if G.parent[h] == g and G.parent_gen[h] == s:
                continue
            R = A[g] - A[h]
            R[:, s * n:(s + 1) * n] += mats[g]
            blocks.append(R % modulus)
    if not blocks:
        return np.zeros((0, k * n), dtype=np.int64)
    return np.vstack(blocks)


def h2(G, L):
    """Invariants and representative cocycles of ``H^2(G, L) ≅ H^1(G, Q^n/Z^n)``.

    Cocycle classes have representatives with values in ``(1/|G|) Z^n``; the
    relation system is solved over ``Z/N`` with ``N = |G|^2`` so that a
    genuine ``Z/|G|`` summand of ``H^1`` stays distinguishable from the
    divisible part coming from coboundaries (which shows up as zero
    invariants, i.e. ``N``).
    """
    if L.group is not G:
        raise CohomologyError("lattice lives over a different group")
    if G.order == 1:
        return CohomologyGroup([], [])
    n, k = L.rank, len(G.names)
    N = G.order ** 2
    F = relation_matrix(G, L, N)
    H = _kernels.hnf_mod(F, N) if len(F) else np.zeros((k * n, k * n), dtype=np.int64)
    diag, Q = _kernels.snf_mod(H, N)
    diag = [int(d) for d in diag]
    free = sum(1 for d in diag if d == N)
    if free != n - L.fixed_rank():
        raise CohomologyError("relation system does not have the expected coboundary rank")
    invariants, basis = [], []
    for i, d in enumerate(diag):
        if 1 < d < N:
            t = [Fraction(int(x), d) for x in Q[:, i]]
            vals = {name: t[s * n:(s + 1) * n] for s, name in enumerate(G.names)}
            invariants.append(d)
            basis.append(Cocycle1(L, vals))
    order = sorted(range(len(invariants)), key=lambda i: invariants[i])
    return CohomologyGroup([invariants[i] for i in order], [basis[i] for i in order])


def bar_h2_oracle(G, L, max_order=16):
    """``H^2`` as the torsion of the cokernel of the bar differential ``C^1 -> C^2``."""
    if G.order > max_order:
        raise GroupTooLarge(f"|G| = {G.order} exceeds {max_order}")
    n, m = L.rank, G.order
    mats = L.matrices
    # (d phi)(g, h) = g.phi(h) - phi(gh) + phi(g)
    D = [[0] * (m * n) for _ in range(m * m * n)]
    for g in range(m):
        for h in range(m):
            gh = int(G.mul[g, h])
            base = (g * m + h) * n
            for i in range(n):
                row = D[base + i]
                for j in range(n):
                    row[h * n + j] += int(mats[g][i, j])
                row[gh * n + i] -= 1
                row[g * n + i] += 1
    S, _, _ = snf(D)
    divs = [S[i][i] for i in range(min(len(S), len(S[0])))]
    return CohomologyGroup(sorted(d for d in divs if d > 1), [])
