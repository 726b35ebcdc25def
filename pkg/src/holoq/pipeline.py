"""End-to-end verification runs over the bundled fixtures."""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import io
from .chartable import character_table, inner_product, lattice_character
from .cohomology import (InvalidCocycle, cocycle_direct_sum, cohomologous, evaluate, h2,
                         is_coboundary, is_special, pullback, restriction_nonzero)
from .crystallographic import assemble, report
from .groups import find_automorphisms
from .zlattice import (change_basis_check, direct_sum, isotypic_projection, lattice_basis,
                       permutation_module, twist_by_automorphism)


class StageFailure(Exception):
    def __init__(self, stage, message):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.message = message


@dataclass
class Stage:
    name: str
    ok: bool
    detail: dict

    def as_dict(self):
        return {"stage": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class PipelineReport:
    stages: list = field(default_factory=list)
    digests: dict = field(default_factory=dict)
    result: dict = field(default_factory=dict)
    failure: StageFailure | None = None

    @property
    def ok(self):
        return self.failure is None

    def as_dict(self):
        out = {"ok": self.ok, "stages": [s.as_dict() for s in self.stages],
               "digests": self.digests, "result": self.result}
        if self.failure:
            out["failure"] = {"stage": self.failure.stage, "message": self.failure.message}
        return out


def data_dir():
    return Path(str(resources.files("holoq") / "data"))


class _Runner:
    def __init__(self):
        self.report = PipelineReport()

    def stage(self, name, detail, ok=True, why=""):
        self.report.stages.append(Stage(name, bool(ok), detail))
        if not ok:
            raise StageFailure(name, why or "check failed")


def _rat(v):
    return [io.rational_str(x) for x in v]


def verify_quaternionic(fixtures=None):
    """Rebuild the quaternionic-type flat manifold from the bundled data."""
    base = Path(fixtures) if fixtures else data_dir() / "paper-thm1"
    run = _Runner()
    try:
        _verify_quaternionic(base, run)
    except StageFailure as exc:
        run.report.failure = exc
    except io.InputError as exc:
        run.report.failure = StageFailure("input", str(exc))
    return run.report


def _verify_quaternionic(base, run):
    for f in ("group.json", "s1.json", "module.json", "cocycle.json", "expected.json"):
        if not (base / f).exists():
            raise io.InputError(f"{base}: missing {f}")
    exp = io.read_json(base / "expected.json")

    G, gmeta = io.load_group(base / "group.json", with_meta=True)
    rel_ok, bad = G.verify_relations(gmeta.get("relations", []))
    run.stage("group", {"order": G.order, "classes": len(G.conjugacy_classes),
                        "relations_checked": len(gmeta.get("relations", []))},
              rel_ok and G.order == exp["order"] and len(G.conjugacy_classes) == exp["classes"],
              f"relation {bad} fails" if not rel_ok else "order or class count differs")

    T = character_table(G)
    central = [G.evaluate(w) for w in exp["central_elements"]]
    h_chars = [chi for chi, t in zip(T.irreducibles, T.types) if t == "H"]
    found = []
    for pattern in exp["central_patterns"]:
        match = [chi for chi in h_chars if [chi(z) for z in central] == pattern]
        found.append(match[0] if len(match) == 1 else None)
    off_centre = [g for g in range(G.order) if g not in G.center()]
    vanish = all(chi(g) == 0 for chi in h_chars for g in off_centre)
    run.stage("table", {"irreducibles": len(T), "quaternionic": len(h_chars),
                        "indicators": T.indicators, "vanish_off_center": vanish},
              len(h_chars) == 3 and None not in found and vanish,
              "quaternionic characters do not match the central patterns")
    chi1, chi2, chi3 = found

    S1, _ = io.load_module(base / "s1.json", G, with_meta=True)
    if not S1.module_check():
        run.stage("projection", {}, False, "permutation action on s1 is not a module")
    kernel = sorted(g for g in range(G.order) if (S1.matrices[g] == S1.matrices[0]).all())
    induced = permutation_module(G, chi1.kernel())
    chi_s1 = lattice_character(G, S1)
    mults = [int(inner_product(chi_s1, c)) for c in (chi1, chi2, chi3)]
    P = isotypic_projection(G, S1, chi1, exp["projection_scale"])
    s = exp["projection_scale"]
    B2 = [[sum(P.B[i][k] * P.B[k][j] for k in range(len(P.B))) for j in range(len(P.B))]
          for i in range(len(P.B))]
    idem = all(B2[i][j] == s * s * P.B[i][j] for i in range(len(P.B)) for j in range(len(P.B)))
    proj_char = lattice_character(G, P.lattice)
    run.stage("projection", {
        "s1_rank": S1.rank, "kernel": [G.word_name(g) for g in kernel],
        "kernel_is_ker_chi1": frozenset(kernel) == chi1.kernel(),
        "matches_induced_module": lattice_character(G, induced) == chi_s1,
        "multiplicities": mults, "rank": P.rank, "B_squared_is_scalar_multiple": idem,
    }, (mults == exp["multiplicities_in_s1"] and P.rank == exp["projection_rank"] and idem
        and frozenset(kernel) == chi1.kernel() and lattice_character(G, induced) == chi_s1
        and proj_char == 4 * chi1),
        "projection data differ from the expected values")

    M, mmeta = io.load_module(base / "module.json", G, with_meta=True)
    emb = mmeta.get("embedding", {})
    basis = emb.get("basis")
    same_lattice = basis is not None and lattice_basis(basis) == P.basis
    try:
        agrees = basis is not None and change_basis_check(S1, basis, M.action)
    except Exception as exc:  # NotStable / RankMismatch
        agrees = False
        why = str(exc)
    else:
        why = "printed action differs from the induced action"
    run.stage("reconciliation", {"same_lattice": same_lattice, "action_agrees": agrees},
              same_lattice and agrees and M.module_check(), why)
    run.report.digests["module"] = io.digest(io.module_to_dict(M))

    H = h2(G, M)
    run.stage("cohomology", {"invariants": H.invariants}, H.invariants == exp["h2_invariants"],
              f"H^2 has invariants {H.invariants}")

    alpha = io.load_cocycle(base / "cocycle.json", M)
    valid = alpha.is_valid()
    if not valid:
        run.stage("cocycle", {"valid": False}, False, "printed cocycle violates the cocycle condition")
    a2 = central[1]
    nonzero = not is_coboundary(alpha)
    same = cohomologous(alpha, H.basis[0])
    res = restriction_nonzero(alpha, a2)
    run.stage("cocycle", {"valid": valid, "nonzero_class": nonzero, "matches_h2_generator": same,
                          "value_at_a2": _rat(evaluate(alpha, a2)), "restriction_nonzero": res},
              nonzero and same and res, "printed cocycle does not give the expected class")
    run.report.digests["cocycle"] = io.digest(io.cocycle_to_dict(alpha))

    auts, images = [], {}
    for (src, dst), chi in zip(exp["automorphism_targets"], (chi2, chi3)):
        hits = find_automorphisms(G, [(G.evaluate(src), G.evaluate(dst))], first_only=True)
        f = hits[0] if hits else None
        auts.append(f)
        if f is None or chi1.compose(f) != chi:
            run.stage("automorphisms", {}, False, f"no automorphism sending {src} to {dst}")
        images[src] = G.word_name(f(G.evaluate(src)))
    f2, f3 = auts
    run.stage("automorphisms", {
        "f2": {n: G.word_name(g) for n, g in f2.generator_images.items()},
        "f3": {n: G.word_name(g) for n, g in f3.generator_images.items()},
        "images": images,
    })

    M2 = twist_by_automorphism(M, f2)
    M3 = twist_by_automorphism(M, f3)
    W = direct_sum(M, M2, M3)
    c = cocycle_direct_sum(W, alpha, pullback(alpha, f2, M2), pullback(alpha, f3, M3))
    sp = is_special(c)
    run.stage("specialness", {"special": sp.special,
                              "restrictions": [list(r) for r in sp.restrictions]},
              sp.special, "the summed class is not special")

    gamma = assemble(G, W, c)
    run.stage("assembly", {"dimension": gamma.dimension})

    rep = report(gamma, T)
    out = rep.as_dict()
    want = exp["report"]
    run.report.result = out
    run.report.digests["report"] = io.digest(out)
    run.stage("verdict", out, all(out[k] == v for k, v in want.items()),
              "report differs from the expected verdict")


def verify_examples(fixtures=None):
    """Check the low-dimensional example manifolds, one bundle per subdirectory."""
    base = Path(fixtures) if fixtures else data_dir() / "examples"
    bundles = sorted(p for p in base.iterdir() if p.is_dir()) if base.is_dir() else []
    if not bundles:
        raise io.InputError(f"{base}: no example bundles found")
    run = _Runner()
    try:
        for b in bundles:
            G = io.load_group(b / "group.json")
            L = io.load_module(b / "module.json", G)
            c = io.load_cocycle(b / "cocycle.json", L)
            exp = io.read_json(b / "expected.json")
            if not L.module_check():
                run.stage(b.name, {}, False, "action matrices do not define a module")
            try:
                gamma = assemble(G, L, c)
            except InvalidCocycle as exc:
                run.stage(b.name, {}, False, str(exc))
            out = report(gamma).as_dict()
            run.report.result[b.name] = out
            run.report.digests[b.name] = io.digest(out)
            run.stage(b.name, out, all(out[k] == v for k, v in exp.items()),
                      "report differs from the expected values")
    except StageFailure as exc:
        run.report.failure = exc
    except io.InputError as exc:
        run.report.failure = StageFailure("input", str(exc))
    return run.report
