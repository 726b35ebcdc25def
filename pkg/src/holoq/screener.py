"""Necessary conditions for a group to be the holonomy of a quaternionic-type flat manifold.

Every condition is evaluated and recorded; ``first_failure`` is the lowest
numbered condition that fails.  The verdict is ``candidate`` only when all
evaluated conditions pass.  Passing is never proof of membership.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .chartable import (character_table, degree_sum, fs_count_formula, involution_count,
                        is_skew, principal_block_membership)
from .groups import has_normal_p_complement, prime_divisors, sylow_is_cyclic

CONDITION_NAMES = {
    1: "even order",
    2: "non-abelian",
    3: "center is an elementary abelian 2-group",
    4: "no normal p-complement for cyclic Sylow p-subgroups",
    5: "non-cyclic Sylow 2-subgroup",
    6: "involution bounds",
    7: "at least two quaternionic irreducibles",
    8: "central involutions separated by quaternionic irreducibles",
    9: "quaternionic irreducible in every principal block",
}


@dataclass
class Condition:
    number: int
    name: str
    passed: bool
    detail: str

    def as_dict(self):
        return {"number": self.number, "name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class ScreenVerdict:
    group_id: str
    order: int
    conditions: list
    skew: bool
    primitive_obstruction: int | None = None

    @property
    def failures(self):
        return [c.number for c in self.conditions if not c.passed]

    @property
    def first_failure(self):
        f = self.failures
        return f[0] if f else None

    @property
    def overall(self):
        return "excluded" if self.failures else "candidate"

    def condition(self, k):
        return next(c for c in self.conditions if c.number == k)

    def as_dict(self):
        return {
            "group": self.group_id,
            "order": self.order,
            "overall": self.overall,
            "first_failure": self.first_failure,
            "failures": self.failures,
            "skew": self.skew,
            "primitive_obstruction": self.primitive_obstruction,
            "conditions": [c.as_dict() for c in self.conditions],
        }


def screen(G, group_id="G", blocks=False, table=None):
    table = character_table(G) if table is None else table
    n = G.order
    conds = []

    def add(k, ok, detail):
        conds.append(Condition(k, CONDITION_NAMES[k], bool(ok), detail))

    add(1, n % 2 == 0, f"|G| = {n}")
    add(2, not G.is_abelian(), "abelian" if G.is_abelian() else "non-abelian")

    Z = sorted(G.center())
    bad = [g for g in Z if G.power_map[g] != 0]
    add(3, not bad, f"|Z(G)| = {len(Z)}" + (f"; {G.word_name(bad[0])} has order "
                                             f"{G.element_order(bad[0])}" if bad else ""))

    obstruction = None
    cyclic_primes = [p for p in prime_divisors(n) if sylow_is_cyclic(G, p)]
    for p in cyclic_primes:
        if has_normal_p_complement(G, p):
            obstruction = p
            break
    if obstruction is not None:
        add(4, False, f"p = {obstruction}: cyclic Sylow subgroup with a normal complement")
    else:
        add(4, True, f"cyclic Sylow primes {cyclic_primes}: none has a normal complement")

    if n % 2:
        add(5, False, "order is odd, Sylow 2-subgroup is trivial")
    else:
        cyc = sylow_is_cyclic(G, 2)
        add(5, not cyc, "cyclic" if cyc else "non-cyclic")

    inv = involution_count(G)
    fs = fs_count_formula(table)
    if inv != fs:
        raise RuntimeError(f"involution count {inv} disagrees with indicator formula {fs}")
    total = degree_sum(table)
    ok6 = inv < total and 2 * inv <= n
    add(6, ok6, f"I(G) = {inv}, sum of degrees = {total}, |G|/2 = {n // 2}")

    h_chars = [chi for chi, t in zip(table.irreducibles, table.types) if t == "H"]
    add(7, len(h_chars) >= 2, f"{len(h_chars)} quaternionic irreducible(s)")

    central_inv = [z for z in Z if z != 0 and G.power_map[z] == 0]
    missing = []
    for z in central_inv:
        plus = any(chi(z) == chi.degree for chi in h_chars)
        minus = any(chi(z) == -chi.degree for chi in h_chars)
        if not (plus and minus):
            missing.append(G.word_name(z))
    add(8, not missing, "all central involutions separated" if not missing
        else "not separated: " + ", ".join(missing))

    if blocks:
        lacking = [p for p in prime_divisors(n)
                   if not any(principal_block_membership(table, chi, p) for chi in h_chars)]
        add(9, not lacking, "every principal block meets a quaternionic irreducible" if not lacking
            else "no quaternionic irreducible in the principal block for p in " + str(lacking))

    return ScreenVerdict(group_id, n, conds, is_skew(table), obstruction)


@dataclass
class CatalogReport:
    verdicts: list
    errors: list = field(default_factory=list)  # (path, message)

    @property
    def summary(self):
        cand = [v.group_id for v in self.verdicts if v.overall == "candidate"]
        return {"screened": len(self.verdicts), "candidates": cand,
                "excluded": len(self.verdicts) - len(cand), "errors": len(self.errors)}

    def as_dict(self):
        return {"verdicts": [v.as_dict() for v in self.verdicts],
                "errors": [{"file": p, "error": m} for p, m in self.errors],
                "summary": self.summary}


def catalog_files(path):
    path = Path(path)
    if path.is_dir():
        return sorted(p for p in path.glob("*.json"))
    return [path]


def screen_catalog(paths, blocks=False):
    from .io import load_group, InputError

    verdicts, errors = [], []
    for p in paths:
        try:
            G, meta = load_group(p, with_meta=True)
        except (InputError, OSError) as exc:
            errors.append((str(p), str(exc)))
            continue
        verdicts.append(screen(G, meta.get("name", Path(p).stem), blocks=blocks))
    return CatalogReport(verdicts, errors)
