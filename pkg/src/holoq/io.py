"""JSON formats for groups, lattices and cocycles.

Group file::

    {"name": "...", "degree": n, "generators": {"a": [[1, 2], [3, 4, 5]], ...},
     "relations": ["[a,b] = a^2", ...]}

Generators are 1-based cycle lists.  Module file::

    {"rank": n, "action": {"a": [[row], ...], ...}}

or, equivalently, ``"signed_permutations": {"a": {"cycles": [...], "negate": [...]}}``
for matrices ``D P`` with ``P[i, i^s] = 1`` and ``D`` negating the listed
rows.  An optional ``"embedding": {"ambient": "<module file>", "basis": [...]}``
records the module as a sublattice of another one.  Cocycle file::

    {"module": "module.json", "values": {"a": ["0", "1/2", ...], ...}}
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .cohomology import Cocycle1
from .groups import GroupError, group_from_generators
from .zlattice import GLattice, NotAModule, signed_permutation_matrix


class InputError(ValueError):
    pass


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def parse_rational(x):
    try:
        return Fraction(x) if not isinstance(x, float) else Fraction(str(x))
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"not a rational number: {x!r}") from None


def rational_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def digest(obj):
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


# ------------------------------------------------------------------ groups

def group_from_dict(data, max_order=None):
    try:
        degree = int(data["degree"])
        gens = data["generators"]
        if not isinstance(gens, dict) or not gens:
            raise InputError("'generators' must be a non-empty object")
        return group_from_generators(degree, {k: [list(c) for c in v] for k, v in gens.items()},
                                     max_order=max_order)
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from None
    except GroupError as exc:
        raise InputError(str(exc)) from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed group description: {exc}") from None


def load_group(path, with_meta=False, max_order=None):
    data = read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    G = group_from_dict(data, max_order=max_order)
    return (G, data) if with_meta else G


def group_to_dict(G, name, relations=None, note=None):
    out = {
        "name": name,
        "degree": G.degree,
        "order": G.order,
        "generators": {n: G.generators[n].cycles() for n in G.names},
    }
    if relations:
        out["relations"] = list(relations)
    if note:
        out["note"] = note
    return out


# ----------------------------------------------------------------- modules

def module_from_dict(data, G):
    try:
        n = int(data["rank"])
        if "action" in data:
            action = {k: np.array(v, dtype=np.int64) for k, v in data["action"].items()}
        elif "signed_permutations" in data:
            action = {k: signed_permutation_matrix(n, v.get("cycles", []), v.get("negate", []))
                      for k, v in data["signed_permutations"].items()}
        elif "permutations" in data:
            action = {k: signed_permutation_matrix(n, v, []) for k, v in data["permutations"].items()}
        else:
            raise InputError("module needs 'action', 'signed_permutations' or 'permutations'")
        for k, a in action.items():
            if a.shape != (n, n):
                raise InputError(f"matrix for {k!r} is not {n}x{n}")
        extra = set(action) - set(G.names)
        if extra:
            raise InputError(f"unknown generator(s) {sorted(extra)}")
        return GLattice(G, action)
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from None
    except NotAModule as exc:
        raise InputError(str(exc)) from None
    except (TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed module description: {exc}") from None


def load_module(path, G, with_meta=False):
    data = read_json(path)
    L = module_from_dict(data, G)
    return (L, data) if with_meta else L


def module_to_dict(L):
    return {"rank": L.rank, "action": {n: L.action[n].tolist() for n in L.group.names}}


# ---------------------------------------------------------------- cocycles

def cocycle_from_dict(data, L):
    try:
        vals = {k: [parse_rational(x) for x in v] for k, v in data["values"].items()}
    except (KeyError, AttributeError, TypeError):
        raise InputError("cocycle needs a 'values' object of rational lists") from None
    for k, v in vals.items():
        if k not in L.group.names:
            raise InputError(f"unknown generator {k!r}")
        if len(v) != L.rank:
            raise InputError(f"value for {k!r} has length {len(v)}, expected {L.rank}")
    missing = [n for n in L.group.names if n not in vals]
    if missing:
        raise InputError(f"no value for generator(s) {missing}")
    return Cocycle1(L, vals, check=False)


def load_cocycle(path, L):
    return cocycle_from_dict(read_json(path), L)


def cocycle_to_dict(c, module_ref=None):
    out = {"values": {n: [rational_str(x) for x in c.values[n]] for n in c.group.names}}
    if module_ref:
        out["module"] = module_ref
    return out


def cyclotomic_to_dict(v):
    return {"conductor": v.m, "coeffs": [rational_str(x) for x in v.coeffs]}


def resolve(base, ref):
    p = Path(ref)
    return p if p.is_absolute() else Path(base).parent / p
