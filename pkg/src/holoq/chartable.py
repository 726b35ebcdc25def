"""Character tables by the Dixon–Schneider method, with indicator tools.

Central characters are found as common eigenvectors of the class-sum
matrices over a prime field ``F_l`` with ``l ≡ 1 (mod exponent)``; the
character values are then lifted to ``Z[zeta_e]`` by recovering the
eigenvalue multiplicities of each group element from the values on its
powers.  Every table is checked against both orthogonality relations in
exact arithmetic before it is returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import isprime
from sympy.ntheory import primitive_root

from . import _kernels
from .cyclotomic import Cyclotomic, _power_table
from .groups import GroupError, prime_divisors


class CharTableError(ValueError):
    pass


class LiftVerificationFailed(CharTableError):
    pass


class NonIntegralIndicator(CharTableError):
    pass


class ClassMismatch(CharTableError):
    pass


class NegativeMultiplicity(CharTableError):
    pass


class NotIrreducible(CharTableError):
    pass


class NonIntegralCentralCharacter(CharTableError):
    pass


@dataclass(frozen=True, eq=False)
class Character:
    """Class function on ``group``; ``values[k]`` is the value on class ``k``."""

    group: object = field(repr=False)
    values: tuple

    @property
    def degree(self):
        return int(self.values[0].to_fraction())

    def __call__(self, g):
        return self.values[int(self.group.class_index[g])]

    def _check(self, other):
        if other.group is not self.group or len(other.values) != len(self.values):
            raise ClassMismatch("characters live on different class lists")

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return other.group is self.group and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __add__(self, other):
        self._check(other)
        return Character(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __rmul__(self, k):
        return Character(self.group, tuple(v * k for v in self.values))

    def conjugate(self):
        return Character(self.group, tuple(v.conjugate() for v in self.values))

    def compose(self, f):
        """``chi ∘ f`` for an automorphism ``f`` of the group."""
        G = self.group
        reps = [c.representative for c in G.conjugacy_classes]
        return Character(G, tuple(self(f.full_map[r]) for r in reps))

    def kernel(self):
        deg = self.values[0]
        return frozenset(g for g in range(self.group.order) if self(g) == deg)

    def is_rational(self):
        return all(v.is_rational() for v in self.values)


@dataclass
class CharacterTable:
    group: object
    classes: list
    irreducibles: list
    prime: int
    conductor: int

    def __len__(self):
        return len(self.irreducibles)

    @cached_property
    def indicators(self):
        return [fs_indicator(self, chi) for chi in self.irreducibles]

    @cached_property
    def types(self):
        return ["R" if v == 1 else "C" if v == 0 else "H" for v in self.indicators]

    def index(self, chi):
        return self.irreducibles.index(chi)


# ------------------------------------------------------------------ helpers

def dixon_prime(order, exponent):
    """Smallest prime ``l ≡ 1 (mod exponent)`` with ``l > 2 sqrt(order)``."""
    l = exponent + 1
    while not (l * l > 4 * order and isprime(l)):
        l += exponent
    return l


def _rref(A, p):
    R, piv = _kernels.rref_mod(np.asarray(A, dtype=np.int64) % p, p)
    return R[:len(piv)], piv


def _split(W, piv, M, p):
    """Eigenspaces of ``M`` restricted to the invariant subspace with RREF rows ``W``."""
    d = W.shape[0]
    X = ((M @ W.T) % p)[piv, :]        # X[:, t] = coords of M w_t
    pieces = []
    found = 0
    for lam in range(p):
        if found == d:
            break
        K = _kernels.nullspace_mod((X - lam * np.eye(d, dtype=np.int64)) % p, p)
        if len(K):
            pieces.append(_rref((K @ W) % p, p))
            found += len(K)
    if found != d:
        raise LiftVerificationFailed("class matrix does not split over the chosen prime")
    return pieces


def _central_characters(G, p):
    classes = G.conjugacy_classes
    r = len(classes)
    members = np.concatenate([np.array(c.members, dtype=np.int64) for c in classes])
    offsets = np.cumsum([0] + [c.size for c in classes])
    reps = np.array([c.representative for c in classes], dtype=np.int64)
    a = _kernels.class_constants(G.mul, G.inv, G.class_index, reps, members, offsets)
    spaces = [(np.eye(r, dtype=np.int64), np.arange(r))]
    for j in range(1, r):
        if all(W.shape[0] == 1 for W, _ in spaces):
            break
        M = a[j] % p
        nxt = []
        for W, piv in spaces:
            nxt.extend([(W, piv)] if W.shape[0] == 1 else _split(W, piv, M, p))
        spaces = nxt
    if any(W.shape[0] != 1 for W, _ in spaces) or len(spaces) != r:
        raise LiftVerificationFailed("class matrices do not separate the characters")
    out = []
    for W, _ in spaces:
        w = W[0]
        out.append((w * pow(int(w[0]), -1, p)) % p)
    return out


def _modsqrt_small(x, p):
    for d in range(1, (p + 1) // 2):
        if d * d % p == x % p:
            return d
    raise LiftVerificationFailed("degree square has no small root")


def _gram(V, weights, e, axis):
    """Exact Hermitian Gram matrix of integer value arrays ``V[row, col, power]``.

    ``axis=0`` pairs rows (summing over columns with ``weights``), ``axis=1``
    pairs columns (summing over rows).  Returns integer coordinates of each
    entry in the power basis.
    """
    if axis == 0:
        T = np.einsum("k,xka,ykb->xyab", weights, V, V)
    else:
        T = np.einsum("xka,xlb->klab", V, V)
    n1, n2 = T.shape[:2]
    folded = np.zeros((n1, n2, e), dtype=object)
    for a in range(e):
        for b in range(e):
            folded[:, :, (a - b) % e] += T[:, :, a, b].astype(object)
    table = np.array(_power_table(e)[:e], dtype=object)
    return folded.dot(table)


def _verify(G, irr, e):
    classes = G.conjugacy_classes
    sizes = np.array([c.size for c in classes], dtype=np.int64)
    V = np.array([[[int(x) for x in v.lift(e).padded()] for v in chi.values] for chi in irr],
                 dtype=np.int64)
    r = len(classes)
    rows = _gram(V, sizes, e, 0)
    cols = _gram(V, None, e, 1)
    for i in range(r):
        for j in range(r):
            want_r = G.order if i == j else 0
            want_c = G.order // sizes[i] if i == j else 0
            if rows[i, j, 0] != want_r or any(rows[i, j, 1:]):
                raise LiftVerificationFailed(f"row orthogonality fails at ({i}, {j})")
            if cols[i, j, 0] != want_c or any(cols[i, j, 1:]):
                raise LiftVerificationFailed(f"column orthogonality fails at ({i}, {j})")
    if sum(chi.degree ** 2 for chi in irr) != G.order:
        raise LiftVerificationFailed("degrees do not square-sum to the group order")


def _sort_key(chi):
    # trivial character first among the linear ones
    return (chi.degree, tuple(tuple(-c for c in v.padded()) for v in chi.values))


# --------------------------------------------------------------- the table

def character_table(G):
    """Exact character table of ``G``, rows sorted by degree then values."""
    cached = getattr(G, "_holoq_char_table", None)
    if cached is not None:
        return cached
    classes = G.conjugacy_classes
    e = G.exponent
    p = dixon_prime(G.order, e)
    z = pow(primitive_root(p), (p - 1) // e, p)
    sizes = [c.size for c in classes]
    inv_cls = [int(G.class_index[G.inv[c.representative]]) for c in classes]
    # class of rep^j for j = 0..e-1
    pow_cls = []
    for c in classes:
        row, x = [], 0
        for _ in range(e):
            row.append(int(G.class_index[x]))
            x = int(G.mul[x, c.representative])
        pow_cls.append(row)
    e_inv = pow(e, -1, p)
    irr = []
    for w in _central_characters(G, p):
        s = sum(int(w[i]) * int(w[inv_cls[i]]) * pow(sizes[i], -1, p) for i in range(len(classes))) % p
        deg = _modsqrt_small(G.order * pow(s, -1, p) % p, p)
        if G.order % deg:
            raise LiftVerificationFailed(f"degree {deg} does not divide |G|")
        chi_mod = [int(w[i]) * deg * pow(sizes[i], -1, p) % p for i in range(len(classes))]
        values = []
        for k_cls in range(len(classes)):
            mult = []
            for k in range(e):
                t = sum(chi_mod[pow_cls[k_cls][j]] * pow(z, (-j * k) % e, p) for j in range(e))
                mu = t * e_inv % p
                if mu > deg:
                    raise LiftVerificationFailed("eigenvalue multiplicity out of range")
                mult.append(mu)
            values.append(Cyclotomic.from_powers(e, mult))
        irr.append(Character(G, tuple(values)))
    irr.sort(key=_sort_key)
    _verify(G, irr, e)
    table = CharacterTable(G, list(classes), irr, p, e)
    G._holoq_char_table = table
    return table


def trivial_character(G):
    one = Cyclotomic.rational(1)
    return Character(G, tuple(one for _ in G.conjugacy_classes))


def regular_character(G):
    vals = [Cyclotomic.rational(G.order)] + [Cyclotomic.rational(0)] * (len(G.conjugacy_classes) - 1)
    return Character(G, tuple(vals))


# -------------------------------------------------------- character tools

def fs_indicator(table, chi):
    G = table.group
    total = Cyclotomic.rational(0)
    for c in G.conjugacy_classes:
        sq = int(G.mul[c.representative, c.representative])
        total = total + chi(sq) * c.size
    total = total / G.order
    if not total.is_rational() or total.to_fraction().denominator != 1:
        raise NonIntegralIndicator(f"indicator {total} is not an integer")
    return int(total.to_fraction())


def inner_product(chi, psi):
    chi._check(psi)
    G = chi.group
    total = Cyclotomic.rational(0)
    for c, a, b in zip(G.conjugacy_classes, chi.values, psi.values):
        total = total + a * b.conjugate() * c.size
    total = total / G.order
    if not total.is_rational():
        raise ClassMismatch("inner product is not rational; inputs are not class functions")
    return total.to_fraction()


def lattice_character(G, L):
    from .zlattice import NotAModule

    if L.group is not G:
        raise ClassMismatch("lattice lives over a different group")
    if not L.module_check():
        raise NotAModule("action matrices do not define a module")
    tr = L.traces()
    return Character(G, tuple(Cyclotomic.rational(int(tr[c.representative]))
                              for c in G.conjugacy_classes))


def decompose(table, chi):
    """Multiplicities of the irreducibles in ``chi`` (checked to reassemble ``chi``)."""
    mults = []
    for psi in table.irreducibles:
        m = inner_product(chi, psi)
        if m < 0 or m.denominator != 1:
            raise NegativeMultiplicity(f"multiplicity {m} of {psi.degree}-dimensional constituent")
        mults.append(int(m))
    total = 0 * trivial_character(table.group)
    for m, psi in zip(mults, table.irreducibles):
        if m:
            total = total + m * psi
    if total != chi:
        raise NegativeMultiplicity("input is not a character")
    return mults


def classify_type(table, chi):
    if inner_product(chi, chi) != 1:
        raise NotIrreducible("character has norm different from 1")
    return {1: "R", 0: "C", -1: "H"}[fs_indicator(table, chi)]


def module_type_verdict(table, chi):
    """``RT``, ``CT`` or ``HT`` when all constituents share one type, else ``mixed``."""
    kinds = {table.types[i] for i, m in enumerate(decompose(table, chi)) if m}
    if len(kinds) == 1:
        return kinds.pop() + "T"
    return "mixed"


def is_skew(table):
    return all(chi.degree == 1 or nu == -1 for chi, nu in zip(table.irreducibles, table.indicators))


def involution_count(G):
    """``#{g : g^2 = 1}``, the identity included."""
    return int((G.power_map == 0).sum())


def fs_count_formula(table):
    return sum(nu * chi.degree for chi, nu in zip(table.irreducibles, table.indicators))


def central_character(table, chi):
    G = table.group
    out = []
    for c, v in zip(G.conjugacy_classes, chi.values):
        w = v * c.size / chi.degree
        if not w.is_integral():
            raise NonIntegralCentralCharacter(f"central character value {w} is not integral")
        out.append(w)
    return out


def principal_block_membership(table, chi, p):
    """True iff ``chi`` lies in the principal ``p``-block.

    Central character values are compared with those of the trivial
    character modulo a fixed prime ideal over ``p`` in ``Z[zeta_e]``.
    """
    G = table.group
    if p not in prime_divisors(G.order):
        raise GroupError(f"{p} is not a prime divisor of {G.order}")
    e = table.conductor
    for w, c in zip(central_character(table, chi), G.conjugacy_classes):
        if w.lift(e).reduce_mod(p) != Cyclotomic.rational(c.size, e).reduce_mod(p):
            return False
    return True


def degree_sum(table):
    return sum(chi.degree for chi in table.irreducibles)


def indicator_by_summation(G, chi):
    """Elementwise ``(1/|G|) sum_g chi(g^2)``, kept separate as a cross-check."""
    total = Cyclotomic.rational(0)
    for g in range(G.order):
        total = total + chi(int(G.power_map[g]))
    return total / G.order
