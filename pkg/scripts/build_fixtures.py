"""Regenerate the JSON fixtures shipped in src/holoq/data."""
import json
from pathlib import Path

from holoq.catalog import FIXTURE_GROUPS, G64_RELATIONS, g64_group
from holoq.io import group_to_dict

DATA = Path(__file__).resolve().parents[1] / "src" / "holoq" / "data"

NOTES = {
    "g64": "central extension of C2^2 by C2^4, regular permutation representation",
    "d8d8": "extraspecial group of order 32, plus type",
    "q8d8": "extraspecial group of order 32, minus type",
    "sl23": "SL(2,3), regular permutation representation",
}

RHO1 = {
    "a": [[1, 13], [2, 14], [3, 9], [4, 10], [5, 21], [6, 22], [7, 11], [8, 12], [15, 24],
          [16, 23], [17, 26], [18, 25], [19, 27], [20, 28], [29, 31], [30, 32]],
    "b": [[1, 3, 2, 4], [5, 18, 6, 17], [7, 15, 8, 16], [9, 14, 10, 13], [11, 24, 12, 23],
          [19, 30, 20, 29], [21, 25, 22, 26], [27, 32, 28, 31]],
    "c": [[1, 5], [2, 6], [3, 18], [4, 17], [7, 20], [8, 19], [9, 26], [10, 25], [11, 27],
          [12, 28], [13, 22], [14, 21], [15, 29], [16, 30], [23, 31], [24, 32]],
    "d": [[1, 8, 2, 7], [3, 15, 4, 16], [5, 19, 6, 20], [9, 23, 10, 24], [11, 14, 12, 13],
          [17, 30, 18, 29], [21, 28, 22, 27], [25, 32, 26, 31]],
}

RHO_M = {
    "a": {"cycles": [[1, 7], [2, 5], [3, 11], [4, 6], [8, 12], [9, 13], [10, 14], [15, 16]],
          "negate": [8, 9, 12, 13]},
    "b": {"cycles": [[1, 2], [3, 9], [4, 8], [5, 7], [6, 12], [10, 15], [11, 13], [14, 16]],
          "negate": [2, 3, 5, 6, 8, 10, 13, 14]},
    "c": {"cycles": [[1, 3], [2, 9], [4, 10], [5, 13], [6, 14], [7, 11], [8, 15], [12, 16]],
          "negate": [2, 4, 5, 7, 9, 10, 11, 13]},
    "d": {"cycles": [[1, 4], [2, 8], [3, 10], [5, 12], [6, 7], [9, 15], [11, 14], [13, 16]],
          "negate": [1, 6, 8, 9, 10, 11, 12, 13]},
}

H = "1/2"
ALPHA = {
    "a": ["0", H, "0", "0", "0", H, H, H, H, "0", H, "0", "0", H, H, "0"],
    "b": ["0", "0", "0", H, "0", H, "0", H, "0", H, "0", H, "0", H, H, H],
    "c": ["0", H, H, "0", "0", H, H, H, "0", H, "0", "0", H, "0", "0", H],
    "d": ["0"] * 16,
}


def write(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=1) + "\n")  # generator order is significant


def diag(*entries):
    n = len(entries)
    return [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]


def block_diag(*blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    o = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[o + i][o:o + len(row)] = row
        o += len(b)
    return out


def main():
    for name, build in FIXTURE_GROUPS.items():
        G = build()
        rel = G64_RELATIONS if name == "g64" else None
        write(DATA / "groups" / f"{name}.json", group_to_dict(G, name, rel, NOTES.get(name)))

    bundle = DATA / "paper-thm1"
    G = g64_group()
    write(bundle / "group.json", group_to_dict(G, "g64", G64_RELATIONS, NOTES["g64"]))
    write(bundle / "s1.json", {"rank": 32, "permutations": RHO1,
                               "note": "permutation lattice on 32 points; kernel of the action is <a^2>"})
    basis = []
    for k in range(16):
        v = [0] * 32
        v[2 * k], v[2 * k + 1] = 1, -1
        basis.append(v)
    write(bundle / "module.json", {
        "rank": 16, "signed_permutations": RHO_M,
        "embedding": {"ambient": "s1.json", "basis": basis},
        "note": "rows listed under 'negate' are multiplied by -1 after permuting",
    })
    write(bundle / "cocycle.json", {"module": "module.json", "values": ALPHA})
    write(bundle / "expected.json", {
        "order": 64, "classes": 19,
        "central_elements": ["1", "a^2", "b^2", "a^2*b^2"],
        "central_patterns": [[4, 4, -4, -4], [4, -4, 4, -4], [4, -4, -4, 4]],
        "multiplicities_in_s1": [4, 0, 0],
        "projection_scale": 2, "projection_rank": 16,
        "h2_invariants": [2],
        "automorphism_targets": [["b^2", "a^2"], ["a^2*b^2", "a^2"]],
        "report": {"dimension": 48, "torsion_free": True, "holonomy_faithful": True,
                   "first_betti": 0, "type_verdict": "HT"},
    })

    ex = DATA / "examples"
    write(ex / "hantzsche-wendt" / "group.json",
          {"name": "c2xc2", "degree": 4, "generators": {"x": [[1, 2]], "y": [[3, 4]]}})
    write(ex / "hantzsche-wendt" / "module.json",
          {"rank": 3, "action": {"x": diag(1, -1, -1), "y": diag(-1, 1, -1)}})
    write(ex / "hantzsche-wendt" / "cocycle.json",
          {"module": "module.json", "values": {"x": [H, H, "0"], "y": ["0", H, H]}})
    write(ex / "hantzsche-wendt" / "expected.json",
          {"dimension": 3, "torsion_free": True, "type_verdict": "RT", "first_betti": 0,
           "holonomy_order": 4})

    write(ex / "klein-bottle" / "group.json",
          {"name": "c2", "degree": 2, "generators": {"x": [[1, 2]]}})
    write(ex / "klein-bottle" / "module.json", {"rank": 2, "action": {"x": diag(1, -1)}})
    write(ex / "klein-bottle" / "cocycle.json", {"module": "module.json", "values": {"x": [H, "0"]}})
    write(ex / "klein-bottle" / "expected.json",
          {"dimension": 2, "torsion_free": True, "type_verdict": "RT", "first_betti": 1,
           "holonomy_order": 2})

    C = [[-1, -1], [1, 0]]
    C2 = [[0, 1], [-1, -1]]
    I2 = [[1, 0], [0, 1]]
    t, o = "-2/3", "1/3"
    write(ex / "m2" / "group.json",
          {"name": "c3xc3", "degree": 6, "generators": {"x": [[1, 2, 3]], "y": [[4, 5, 6]]}})
    write(ex / "m2" / "module.json",
          {"rank": 8, "action": {"x": block_diag(I2, C, C, C), "y": block_diag(C, I2, C, C2)}})
    write(ex / "m2" / "cocycle.json",
          {"module": "module.json",
           "values": {"x": [t, o, "0", "0", t, o, t, o], "y": ["0", "0", t, o, "0", "0", "0", "0"]}})
    write(ex / "m2" / "expected.json",
          {"dimension": 8, "torsion_free": True, "type_verdict": "CT", "first_betti": 0,
           "holonomy_order": 9})


if __name__ == "__main__":
    main()
