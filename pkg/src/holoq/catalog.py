"""Constructors for the small groups used as fixtures."""
from __future__ import annotations

from itertools import product

from .groups import group_from_generators, pc_group, regular_group

G64_RELATIONS = [
    "a^4 = 1", "b^4 = 1", "c^4 = 1", "d^4 = 1",
    "a^2 = c^2", "b^2 = d^2",
    "[a,b] = a^2", "[a,c] = a^2*b^2", "[a,d] = b^2",
    "[b,c] = a^2", "[b,d] = a^2*b^2", "[c,d] = 1",
    "[a^2,a] = 1", "[a^2,b] = 1", "[a^2,c] = 1", "[a^2,d] = 1",
    "[b^2,a] = 1", "[b^2,b] = 1", "[b^2,c] = 1", "[b^2,d] = 1",
]


def cyclic(n):
    if n == 1:
        return group_from_generators(1, {"x": []})
    return group_from_generators(n, {"x": [list(range(1, n + 1))]})


def elementary_abelian(p, k):
    gens = {}
    for i in range(k):
        gens[f"x{i + 1}"] = [list(range(i * p + 1, (i + 1) * p + 1))]
    return group_from_generators(p * k, gens)


def symmetric(n):
    return group_from_generators(n, {"x": [list(range(1, n + 1))], "y": [[1, 2]]})


def dihedral8():
    return group_from_generators(4, {"r": [[1, 2, 3, 4]], "s": [[1, 3]]})


def quaternion8():
    return group_from_generators(8, {"i": [[1, 2, 3, 4], [5, 6, 7, 8]],
                                     "j": [[1, 5, 3, 7], [2, 8, 4, 6]]})


def sl2_3():
    """SL(2, 3) in its regular representation of degree 24."""
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)

    elts = [m for m in product(range(3), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % 3 == 1]
    elts.remove((1, 0, 0, 1))
    elts.insert(0, (1, 0, 0, 1))
    return regular_group(elts, mul, {"s": (0, 2, 1, 0), "t": (1, 1, 0, 1)})


def extraspecial32(kind):
    """``"plus"``: central product of two D8; ``"minus"``: of Q8 and D8."""
    names = ["x1", "y1", "x2", "y2"]
    z, one = (1,), (0,)
    squares = {"x1": one, "y1": one, "x2": one, "y2": one}
    if kind == "minus":
        squares.update(x1=z, y1=z)
    elif kind != "plus":
        raise ValueError(kind)
    comms = {("y1", "x1"): z, ("y2", "x2"): z}
    return pc_group(names, squares, comms, ["z"])


def g64_group():
    """Order-64 group with center ``<a^2, b^2>`` given by squares and commutators."""
    squares = {"a": (1, 0), "b": (0, 1), "c": (1, 0), "d": (0, 1)}
    comms = {("b", "a"): (1, 0), ("c", "a"): (1, 1), ("d", "a"): (0, 1),
             ("c", "b"): (1, 0), ("d", "b"): (1, 1)}
    return pc_group(["a", "b", "c", "d"], squares, comms, ["a2", "b2"])


FIXTURE_GROUPS = {
    "c1": lambda: cyclic(1),
    "c2": lambda: cyclic(2),
    "c3": lambda: cyclic(3),
    "c4": lambda: cyclic(4),
    "c6": lambda: cyclic(6),
    "c8": lambda: cyclic(8),
    "c2xc2": lambda: elementary_abelian(2, 2),
    "c2xc2xc2": lambda: elementary_abelian(2, 3),
    "c3xc3": lambda: elementary_abelian(3, 2),
    "s3": lambda: symmetric(3),
    "s4": lambda: symmetric(4),
    "d8": dihedral8,
    "q8": quaternion8,
    "sl23": sl2_3,
    "d8d8": lambda: extraspecial32("plus"),
    "q8d8": lambda: extraspecial32("minus"),
    "g64": g64_group,
}
