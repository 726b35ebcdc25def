"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Values are stored in the power basis ``1, z, ..., z^(phi(m)-1)`` after
reduction modulo the m-th cyclotomic polynomial, so equality is coefficient
equality.  Values with different conductors are compared and combined in
the field of the lcm conductor.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from sympy import ZZ, Poly, cyclotomic_poly, symbols
from sympy.polys.galoistools import gf_factor

_x = symbols("x")


@lru_cache(maxsize=None)
def _phi_coeffs(m):
    """Coefficients of the m-th cyclotomic polynomial, constant term first."""
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(m, _x), _x).all_coeffs()))


@lru_cache(maxsize=None)
def _power_table(m):
    """Reduced coordinates of z^k for k = 0 .. 2m-1."""
    phi = _phi_coeffs(m)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(2 * m):
        rows.append(tuple(cur))
        # multiply by z, then eliminate z^d = -sum phi[i] z^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


def _reduce(m, full):
    """Reduce a coefficient list over z^0..z^(len-1) into the power basis."""
    table = _power_table(m)
    d = len(table[0])
    out = [Fraction(0)] * d
    for k, c in enumerate(full):
        if c:
            row = table[k % m]
            for i in range(d):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


class Cyclotomic:
    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m, coeffs):
        self.m = int(m)
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != len(_phi_coeffs(self.m)) - 1:
            raise ValueError("coefficient length must be phi(m)")
        self._hash = None

    # ------------------------------------------------------------ builders

    @classmethod
    def from_powers(cls, m, full):
        """``sum full[k] * z^k`` for arbitrary k (taken mod m)."""
        return cls(m, _reduce(m, full))

    @classmethod
    def rational(cls, q, m=1):
        d = len(_phi_coeffs(m)) - 1
        return cls(m, (Fraction(q),) + (Fraction(0),) * (d - 1))

    @classmethod
    def root_of_unity(cls, m, k=1):
        full = [0] * m
        full[k % m] = 1
        return cls.from_powers(m, full)

    # --------------------------------------------------------------- basics

    def lift(self, L):
        """Same number written in Q(zeta_L); ``m`` must divide ``L``."""
        if L == self.m:
            return self
        if L % self.m:
            raise ValueError(f"{self.m} does not divide {L}")
        step = L // self.m
        full = [Fraction(0)] * L
        for k, c in enumerate(self.coeffs):
            full[k * step] = c
        return Cyclotomic.from_powers(L, full)

    def _common(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(other, self.m)
        L = math.lcm(self.m, other.m)
        return self.lift(L), other.lift(L)

    def __add__(self, other):
        a, b = self._common(other)
        return Cyclotomic(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            q = Fraction(other)
            return Cyclotomic(self.m, [c * q for c in self.coeffs])
        a, b = self._common(other)
        full = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        full[i + j] += x * y
        return Cyclotomic.from_powers(a.m, full)

    __rmul__ = __mul__

    def __truediv__(self, q):
        if isinstance(q, Cyclotomic):
            if not q.is_rational():
                raise ValueError("division by irrational cyclotomic not supported")
            q = q.to_fraction()
        q = Fraction(q)
        return Cyclotomic(self.m, [c / q for c in self.coeffs])

    def conjugate(self):
        full = [Fraction(0)] * self.m
        for k, c in enumerate(self.coeffs):
            full[(-k) % self.m] += c
        return Cyclotomic.from_powers(self.m, full)

    def galois(self, k):
        """Image under z -> z^k (k coprime to m)."""
        full = [Fraction(0)] * self.m
        for i, c in enumerate(self.coeffs):
            full[(i * k) % self.m] += c
        return Cyclotomic.from_powers(self.m, full)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def is_real(self):
        return self == self.conjugate()

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def to_complex(self):
        import cmath
        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    def padded(self):
        """Coefficients over z^0..z^(m-1), zero past phi(m)."""
        return self.coeffs + (Fraction(0),) * (self.m - len(self.coeffs))

    # ----------------------------------------------------------- comparison

    def __eq__(self, other):
        if not isinstance(other, Cyclotomic):
            try:
                other = Cyclotomic.rational(other, self.m)
            except (TypeError, ValueError):
                return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            # equal values may carry different conductors
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash("irrational")
        return self._hash

    def sort_key(self):
        return self.coeffs

    def __repr__(self):
        return f"Cyclotomic({self.m}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            base = "" if k == 0 else (f"z{self.m}" if k == 1 else f"z{self.m}^{k}")
            if not base:
                terms.append(str(c))
            elif c == 1:
                terms.append(base)
            elif c == -1:
                terms.append("-" + base)
            else:
                terms.append(f"{c}*{base}")
        return "+".join(terms).replace("+-", "-")

    # ------------------------------------------------------ reduction mod p

    def reduce_mod(self, p):
        """Image in GF(p)[x]/(h) for the prime ideal chosen by :func:`prime_ideal_factor`.

        Returns a tuple of residues (constant first).  Requires integral
        coefficients.
        """
        if not self.is_integral():
            raise ValueError("non-integral cyclotomic has no reduction")
        h = prime_ideal_factor(self.m, p)
        coeffs = [int(c) % p for c in self.coeffs]
        return _poly_rem_mod(coeffs, h, p)


@lru_cache(maxsize=None)
def prime_ideal_factor(m, p):
    """Lexicographically smallest monic irreducible factor of Phi_m mod p.

    Factors are compared by their coefficient lists (leading coefficient
    first, residues in ``[0, p)``).  Returned constant term first.
    """
    phi = [c % p for c in reversed(_phi_coeffs(m))]
    _, facs = gf_factor(phi, p, ZZ)
    cands = [tuple(int(c) % p for c in f) for f, _ in facs]  # monic, leading first
    best = min(cands)
    return tuple(reversed(best))


def _poly_rem_mod(a, h, p):
    a = list(a)
    dh = len(h) - 1
    for k in range(len(a) - 1, dh - 1, -1):
        c = a[k] % p
        if c:
            for i in range(dh + 1):
                a[k - dh + i] = (a[k - dh + i] - c * h[i]) % p
    out = [c % p for c in a[:dh]]
    return tuple(out + [0] * (dh - len(out)))
