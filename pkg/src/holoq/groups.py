"""Permutation groups by full enumeration.

Groups handled here are small (a few thousand elements at most), so every
group is stored as an explicit element list with an index-based Cayley
table.  Element 0 is always the identity and elements are numbered in the
order a breadth-first search over generator words discovers them, so
indices, canonical words and everything derived from them are reproducible.

Products follow the permutation convention ``(g * h)(i) = h(g(i))``: apply
``g`` first.  Matrix representations built on top of a group satisfy
``rho(g * h) = rho(g) @ rho(h)``.
"""
from __future__ import annotations

import math
import os
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from . import _kernels

DEFAULT_MAX_ORDER = 10**6


class GroupError(ValueError):
    pass


class MalformedPermutation(GroupError):
    pass


class EnumerationBoundExceeded(GroupError):
    pass


class UnknownGeneratorName(GroupError):
    pass


class PrimeDoesNotDivideOrder(GroupError):
    pass


def max_group_order():
    return int(os.environ.get("HOLOQ_MAX_GROUP_ORDER", DEFAULT_MAX_ORDER))


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored by its image tuple."""

    images: tuple

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise MalformedPermutation(f"not a bijection: {self.images}")

    @classmethod
    def identity(cls, degree):
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree, cycles):
        """Build from 1-based cycles; fixed points may be omitted."""
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                if not 1 <= x <= degree or x in seen:
                    raise MalformedPermutation(f"bad point {x} in cycle {cyc}")
                seen.add(x)
                images[x - 1] = cyc[(i + 1) % len(cyc)] - 1
        return cls(tuple(images))

    @property
    def degree(self):
        return len(self.images)

    def __mul__(self, other):
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self):
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        out, seen = [], set()
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j + 1)
                j = self.images[j]
            out.append(cyc)
        return out

    def order(self):
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def sign(self):
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self):
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"


@dataclass(frozen=True)
class ConjClass:
    representative: int
    members: tuple
    size: int


@dataclass(frozen=True)
class Automorphism:
    generator_images: dict
    full_map: tuple

    def __call__(self, g):
        return self.full_map[g]


class PermGroup:
    """Finite group generated by named permutations of a common degree."""

    def __init__(self, degree, generators, max_order=None):
        if degree < 1:
            raise MalformedPermutation("degree must be positive")
        for name, p in generators.items():
            if not isinstance(p, Permutation) or p.degree != degree:
                raise MalformedPermutation(f"generator {name!r} is not a permutation of degree {degree}")
        self.degree = degree
        self.generators = dict(generators)
        self.names = list(self.generators)
        self.max_order = max_group_order() if max_order is None else max_order
        self._enumerate()

    # ------------------------------------------------------------ enumeration

    def _enumerate(self):
        gens = [np.array(p.images, dtype=np.int64) for p in self.generators.values()]
        ident = np.arange(self.degree, dtype=np.int64)
        index = {ident.tobytes(): 0}
        elements = [ident]
        parent, parent_gen = [-1], [-1]
        gen_mul = []
        queue = deque([0])
        while queue:
            i = queue.popleft()
            g = elements[i]
            row = []
            for k, s in enumerate(gens):
                h = s[g]  # apply g, then s
                key = h.tobytes()
                j = index.get(key)
                if j is None:
                    j = len(elements)
                    if j >= self.max_order:
                        raise EnumerationBoundExceeded(
                            f"group has more than {self.max_order} elements")
                    index[key] = j
                    elements.append(h)
                    parent.append(i)
                    parent_gen.append(k)
                    queue.append(j)
                row.append(j)
            gen_mul.append(row)
        self._index = index
        self.perm_array = np.array(elements, dtype=np.int64).reshape(len(elements), self.degree)
        self.parent = np.array(parent, dtype=np.int64)
        self.parent_gen = np.array(parent_gen, dtype=np.int64)
        self.gen_mul = np.array(gen_mul, dtype=np.int64).reshape(len(elements), len(gens))

    @property
    def order(self):
        return len(self.perm_array)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order}, gens={self.names})"

    @cached_property
    def gen_indices(self):
        return np.array([self.index_of(p) for p in self.generators.values()], dtype=np.int64)

    def gen_index(self, name):
        try:
            return int(self.gen_indices[self.names.index(name)])
        except ValueError:
            raise UnknownGeneratorName(name) from None

    def element(self, i):
        return Permutation(tuple(int(x) for x in self.perm_array[i]))

    def index_of(self, perm):
        key = np.asarray(perm.images if isinstance(perm, Permutation) else perm,
                         dtype=np.int64).tobytes()
        try:
            return self._index[key]
        except KeyError:
            raise GroupError("permutation is not in the group") from None

    @cached_property
    def mul(self):
        return _kernels.mul_table(self.gen_mul, self.parent, self.parent_gen)

    @cached_property
    def inv(self):
        return _kernels.inverses(self.mul)

    def product(self, *elts):
        out = 0
        for e in elts:
            out = int(self.mul[out, e])
        return out

    def power(self, g, k):
        if k < 0:
            g, k = int(self.inv[g]), -k
        out = 0
        for _ in range(k):
            out = int(self.mul[out, g])
        return out

    @cached_property
    def words(self):
        """BFS-minimal generator word (list of generator positions) per element."""
        words = [()]
        for j in range(1, self.order):
            words.append(words[self.parent[j]] + (int(self.parent_gen[j]),))
        return words

    def word_name(self, g):
        w = self.words[g]
        if not w:
            return "1"
        parts, i = [], 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.names[w[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)

    # ---------------------------------------------------------------- orders

    @cached_property
    def element_orders(self):
        orders = np.zeros(self.order, dtype=np.int64)
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = int(self.mul[x, g])
                k += 1
            orders[g] = k
        return orders

    def element_order(self, g):
        return int(self.element_orders[g])

    @cached_property
    def power_map(self):
        """Array sending ``g`` to ``g^2``."""
        return self.mul[np.arange(self.order), np.arange(self.order)].copy()

    @cached_property
    def exponent(self):
        return math.lcm(*map(int, self.element_orders))

    def is_abelian(self):
        g = self.gen_indices
        return bool((self.mul[np.ix_(g, g)] == self.mul[np.ix_(g, g)].T).all())

    # --------------------------------------------------------------- classes

    @cached_property
    def class_label(self):
        """Representative (minimal index) of each element's conjugacy class."""
        return _kernels.class_labels(self.mul, self.inv, self.gen_indices)

    @cached_property
    def conjugacy_classes(self):
        reps = np.unique(self.class_label)
        classes = []
        for r in reps:
            members = tuple(int(x) for x in np.nonzero(self.class_label == r)[0])
            classes.append(ConjClass(int(r), members, len(members)))
        classes.sort(key=lambda c: (self.element_order(c.representative), c.representative))
        return classes

    @cached_property
    def class_index(self):
        """Position in :attr:`conjugacy_classes` for every element."""
        idx = np.empty(self.order, dtype=np.int64)
        for k, c in enumerate(self.conjugacy_classes):
            idx[list(c.members)] = k
        return idx

    def center(self):
        g = self.gen_indices
        ok = (self.mul[:, g] == self.mul[g, :].T).all(axis=1)
        return frozenset(int(x) for x in np.nonzero(ok)[0])

    def subgroup_generated(self, elts):
        """Closure of ``elts`` under multiplication, as a frozenset of indices."""
        elts = [int(e) for e in elts]
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for e in elts:
                y = int(self.mul[x, e])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def is_subgroup(self, elts):
        s = set(elts)
        if 0 not in s:
            return False
        arr = np.array(sorted(s))
        return set(np.unique(self.mul[np.ix_(arr, arr)]).tolist()) <= s

    # --------------------------------------------------------------- words

    def evaluate(self, word):
        """Element index of a word such as ``"[a,b]*c^-1"``."""
        return _WordParser(self, word).parse()

    def verify_relations(self, relations):
        """Check word equalities.

        ``relations`` is a list of ``(lhs, rhs)`` pairs or ``"lhs = rhs"``
        strings.  Returns ``(ok, first_failure)``.
        """
        for rel in relations:
            lhs, rhs = (rel.split("=") if isinstance(rel, str) else rel)
            if self.evaluate(lhs) != self.evaluate(rhs):
                return False, f"{lhs.strip()} = {rhs.strip()}"
        return True, None


class _WordParser:
    _token = re.compile(r"\s*(?:(\[)|(\])|(,)|(\()|(\))|(\^)\s*(-?\d+)|(\*)|(1)(?![\w])|([A-Za-z_]\w*))")

    def __init__(self, group, text):
        self.group = group
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = self._token.match(text, pos)
            if not m:
                raise GroupError(f"cannot parse word {text!r} at {pos}")
            pos = m.end()
            kinds = ["[", "]", ",", "(", ")", "^", None, "*", "1", "name"]
            for k, v in zip(kinds, m.groups()):
                if v is not None and k is not None:
                    self.tokens.append((k, m.group(7) if k == "^" else v))
                    break
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind):
        if self.peek() != kind:
            raise GroupError(f"expected {kind!r} in word")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok[1]

    def parse(self):
        out = self.product()
        if self.pos != len(self.tokens):
            raise GroupError("trailing tokens in word")
        return out

    def product(self):
        g = self.factor()
        while self.peek() in ("*", "[", "(", "1", "name"):
            if self.peek() == "*":
                self.take("*")
            g = self.group.mul[g, self.factor()]
        return int(g)

    def factor(self):
        G = self.group
        kind = self.peek()
        if kind == "[":
            self.take("[")
            x = self.product()
            self.take(",")
            y = self.product()
            self.take("]")
            g = G.product(int(G.inv[x]), int(G.inv[y]), x, y)
        elif kind == "(":
            self.take("(")
            g = self.product()
            self.take(")")
        elif kind == "1":
            self.take("1")
            g = 0
        elif kind == "name":
            name = self.take("name")
            if name not in G.names:
                raise UnknownGeneratorName(name)
            g = G.gen_index(name)
        else:
            raise GroupError("unexpected token in word")
        while self.peek() == "^":
            g = G.power(g, int(self.take("^")))
        return g


# ------------------------------------------------------------------ builders

def group_from_generators(degree, gens, max_order=None):
    """``gens`` maps names to :class:`Permutation` or to lists of 1-based cycles."""
    perms = {}
    for name, g in gens.items():
        perms[name] = g if isinstance(g, Permutation) else Permutation.from_cycles(degree, g)
    return PermGroup(degree, perms, max_order=max_order)


def regular_group(elements, multiply, names):
    """Right-regular permutation group of an abstract group.

    ``elements`` lists hashable elements (identity first), ``multiply`` is the
    group law and ``names`` maps generator names to elements.
    """
    pos = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    gens = {name: Permutation(tuple(pos[multiply(e, g)] for e in elements))
            for name, g in names.items()}
    return PermGroup(n, gens)


def pc_group(gen_names, squares, commutators, centre_names):
    """Central extension of an elementary abelian 2-group by one.

    Elements are pairs ``(v, w)`` with ``v`` over the generators and ``w``
    over a basis of the central subgroup.  ``squares[x]`` and
    ``commutators[(x, y)]`` (for ``x`` after ``y`` in ``gen_names``) give
    central elements as 0/1 tuples over ``centre_names``.  The normal form is
    ``x1^v1 ... xk^vk * z^w``; the product of two normal forms picks up the
    bilinear correction below, so the result is always a group of order
    ``2^(k + len(centre_names))``.
    """
    k, c = len(gen_names), len(centre_names)
    zero = (0,) * c

    def comm(i, j):
        return commutators.get((gen_names[i], gen_names[j]), zero)

    def multiply(x, y):
        (v, w), (v2, w2) = x, y
        corr = [0] * c
        for i in range(k):
            if v[i] and v2[i]:
                corr = [a ^ b for a, b in zip(corr, squares[gen_names[i]])]
            for j in range(i):
                if v[i] and v2[j]:
                    corr = [a ^ b for a, b in zip(corr, comm(i, j))]
        return (tuple(a ^ b for a, b in zip(v, v2)),
                tuple(a ^ b ^ e for a, b, e in zip(w, w2, corr)))

    elements = [(v, w) for w in product((0, 1), repeat=c) for v in product((0, 1), repeat=k)]
    elements.sort(key=lambda e: (sum(e[0]) + sum(e[1]), e))
    gens = {}
    for i, name in enumerate(gen_names):
        v = tuple(int(j == i) for j in range(k))
        gens[name] = (v, zero)
    return regular_group(elements, multiply, gens)


# ---------------------------------------------------------------- predicates

def _p_part(n, p):
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return p ** a


def _check_prime(G, p):
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)) or G.order % p:
        raise PrimeDoesNotDivideOrder(f"{p} is not a prime dividing |G| = {G.order}")


def has_normal_p_complement(G, p):
    """True iff the p'-elements form a subgroup of index |G|_p.

    When |G| is a power of p the trivial subgroup is the complement.
    """
    _check_prime(G, p)
    target = G.order // _p_part(G.order, p)
    pprime = np.nonzero(G.element_orders % p != 0)[0]
    if len(pprime) != target:
        return False
    return G.is_subgroup(pprime.tolist())


def sylow_is_cyclic(G, p):
    _check_prime(G, p)
    return bool((G.element_orders == _p_part(G.order, p)).any())


def prime_divisors(n):
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def find_automorphisms(G, constraints=(), first_only=False):
    """Automorphisms of ``G`` meeting ``constraints`` (pairs ``(x, f(x))``).

    Backtracks over generator images in increasing index order, restricted
    to elements of matching order and class size; each partial assignment
    is checked as a homomorphism on the subgroup its generators span.
    """
    constraints = [(int(x), int(y)) for x, y in constraints]
    orders = G.element_orders
    csize = np.array([len(G.conjugacy_classes[G.class_index[g]].members) for g in range(G.order)])
    gens = [int(g) for g in G.gen_indices]
    cands = [[h for h in range(G.order) if orders[h] == orders[g] and csize[h] == csize[g]]
             for g in gens]
    out = []

    def extend(assigned):
        # homomorphism on <gens[:len(assigned)]> or None
        fmap = {0: 0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            fx = fmap[x]
            for g, img in zip(gens, assigned):
                y = int(G.mul[x, g])
                fy = int(G.mul[fx, img])
                if y in fmap:
                    if fmap[y] != fy:
                        return None
                else:
                    fmap[y] = fy
                    queue.append(y)
        if len(set(fmap.values())) != len(fmap):
            return None
        for x, y in constraints:
            if x in fmap and fmap[x] != y:
                return None
        return fmap

    def search(assigned):
        if first_only and out:
            return
        fmap = extend(assigned)
        if fmap is None:
            return
        if len(assigned) == len(gens):
            if len(fmap) != G.order:
                return
            full = tuple(fmap[g] for g in range(G.order))
            if not _is_automorphism(G, full):
                return
            out.append(Automorphism(
                {n: img for n, img in zip(G.names, assigned)}, full))
            return
        for h in cands[len(assigned)]:
            search(assigned + [h])
            if first_only and out:
                return

    search([])
    return out


def _is_automorphism(G, full):
    f = np.asarray(full)
    if len(set(full)) != G.order:
        return False
    return bool((f[G.mul] == G.mul[np.ix_(f, f)]).all())


def compose_automorphisms(G, f, g):
    """``f`` after ``g``."""
    full = tuple(f.full_map[g.full_map[x]] for x in range(G.order))
    return Automorphism({n: full[int(i)] for n, i in zip(G.names, G.gen_indices)}, full)


def inverse_automorphism(G, f):
    full = [0] * G.order
    for x, y in enumerate(f.full_map):
        full[y] = x
    full = tuple(full)
    return Automorphism({n: full[int(i)] for n, i in zip(G.names, G.gen_indices)}, full)


def sign_homomorphisms(G):
    """All maps G -> {+1, -1} as arrays over elements, in generator-sign order."""
    out = []
    for signs in product((1, -1), repeat=len(G.names)):
        val = np.zeros(G.order, dtype=np.int64)
        val[0] = 1
        for j in range(1, G.order):
            val[j] = val[G.parent[j]] * signs[G.parent_gen[j]]
        s = np.array(signs)
        if (val[G.mul[:, G.gen_indices]] == val[:, None] * s[None, :]).all():
            out.append(val)
    return out
