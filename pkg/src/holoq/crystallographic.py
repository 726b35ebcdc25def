"""Crystallographic groups assembled from a lattice and a vector system."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .chartable import character_table, lattice_character, module_type_verdict
from .cohomology import (Cocycle1, InvalidCocycle, evaluate, is_special,
                         prime_order_class_reps)
from .zlattice import hnf, solve_in_basis, transpose


class TestDisagreement(RuntimeError):
    __test__ = False  # keep pytest from collecting it


@dataclass(frozen=True)
class AffineElement:
    """``x -> linear @ x + translation`` with ``(A, s)(B, t) = (AB, At + s)``."""

    linear: np.ndarray = field(compare=False)
    translation: tuple

    def __post_init__(self):
        object.__setattr__(self, "linear", np.asarray(self.linear, dtype=np.int64))
        object.__setattr__(self, "translation", tuple(Fraction(x) for x in self.translation))

    def __eq__(self, other):
        return (np.array_equal(self.linear, other.linear)
                and self.translation == other.translation)

    def __hash__(self):
        return hash((self.linear.tobytes(), self.translation))

    def __mul__(self, other):
        A, s = self.linear, self.translation
        t = other.translation
        n = len(s)
        At = [sum(int(A[i, j]) * t[j] for j in range(n)) for i in range(n)]
        return AffineElement(A @ other.linear, tuple(a + b for a, b in zip(At, s)))

    def inverse(self):
        A = self.linear
        Ai = np.rint(np.linalg.inv(A)).astype(np.int64)
        if not np.array_equal(Ai @ A, np.eye(len(A), dtype=np.int64)):
            raise ValueError("linear part is not unimodular")
        n = len(self.translation)
        return AffineElement(Ai, tuple(-sum(int(Ai[i, j]) * self.translation[j] for j in range(n))
                                       for i in range(n)))

    def is_identity(self):
        return (np.array_equal(self.linear, np.eye(len(self.linear), dtype=np.int64))
                and not any(self.translation))

    def power(self, k):
        out = AffineElement(np.eye(len(self.linear), dtype=np.int64), (0,) * len(self.translation))
        for _ in range(k):
            out = out * self
        return out


@dataclass
class CrystGroupData:
    group: object
    lattice: object
    cocycle: Cocycle1

    @property
    def dimension(self):
        return self.lattice.rank

    @property
    def vector_system(self):
        return dict(self.cocycle.values)

    def lift(self, g, shift=None):
        """Affine element over ``g`` with translation ``f(g) + shift``."""
        t = evaluate(self.cocycle, g)
        if shift is not None:
            t = tuple(a + int(b) for a, b in zip(t, shift))
        return AffineElement(self.lattice.matrices[g], t)


def assemble(G, L, c):
    if c.lattice is not L or L.group is not G:
        raise InvalidCocycle("cocycle does not belong to this lattice")
    if not c.is_valid():
        raise InvalidCocycle("vector system violates the cocycle condition")
    return CrystGroupData(G, L, c)


@dataclass
class TorsionResult:
    torsion_free: bool
    witness: tuple | None = None  # (element, integer shift m)

    def __bool__(self):
        return self.torsion_free


def is_torsion_free_direct(gamma):
    """Look for an element of finite order over each prime-order class representative.

    Over ``g`` of prime order ``p`` the lifts ``(rho(g), f(g) + m)`` have
    ``p``-th power ``(1, N_g (f(g) + m))`` with ``N_g = 1 + rho(g) + ...``;
    one of them has finite order iff ``N_g f(g)`` lies in ``N_g Z^n``.
    """
    G, L = gamma.group, gamma.lattice
    n = L.rank
    for g in prime_order_class_reps(G):
        p = G.element_order(g)
        R = L.matrices[g]
        Ng = np.zeros((n, n), dtype=np.int64)
        P = np.eye(n, dtype=np.int64)
        for _ in range(p):
            Ng += P
            P = P @ R
        t = evaluate(gamma.cocycle, g)
        Nt = [sum(int(Ng[i, j]) * t[j] for j in range(n)) for i in range(n)]
        if any(x.denominator != 1 for x in Nt):
            continue
        H, U = hnf(transpose(Ng.tolist()))
        k = sum(1 for row in H if any(row))
        x = solve_in_basis(H[:k], Nt)
        if x is None:
            continue
        # N_g (U^T x) = N_g t, so the shift -U^T x gives a lift of order p
        m0 = [sum(x[i] * U[i][j] for i in range(k)) for j in range(n)]
        return TorsionResult(False, (g, tuple(-v for v in m0)))
    return TorsionResult(True)


def first_betti(L):
    """Rank of the fixed sublattice."""
    return L.fixed_rank()


@dataclass
class FlatManifoldReport:
    dimension: int
    torsion_free: bool
    holonomy_faithful: bool
    first_betti: int
    type_verdict: str
    holonomy_order: int
    restrictions: list
    witness: tuple | None = None

    def as_dict(self):
        return {
            "dimension": self.dimension,
            "torsion_free": self.torsion_free,
            "holonomy_faithful": self.holonomy_faithful,
            "first_betti": self.first_betti,
            "type_verdict": self.type_verdict,
            "holonomy_order": self.holonomy_order,
            "restrictions": [{"element": w, "order": o, "nonzero": nz} for w, o, nz in self.restrictions],
        }


def report(gamma, table=None):
    G, L = gamma.group, gamma.lattice
    table = character_table(G) if table is None else table
    special = is_special(gamma.cocycle)
    direct = is_torsion_free_direct(gamma)
    if special.special != direct.torsion_free:
        raise TestDisagreement("restriction test and direct torsion test disagree")
    return FlatManifoldReport(
        dimension=L.rank,
        torsion_free=direct.torsion_free,
        holonomy_faithful=L.is_faithful(),
        first_betti=first_betti(L),
        type_verdict=module_type_verdict(table, lattice_character(G, L)),
        holonomy_order=L.image_order(),
        restrictions=special.restrictions,
        witness=direct.witness,
    )
