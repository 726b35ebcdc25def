import functools

import pytest

from holoq import io
from holoq.chartable import character_table
from holoq.pipeline import data_dir

DATA = data_dir()
BUNDLE = DATA / "paper-thm1"
EXAMPLES = DATA / "examples"
GROUP_FILES = sorted((DATA / "groups").glob("*.json"))
GROUP_NAMES = [p.stem for p in GROUP_FILES]

ACCEPTANCE_LINES = {}  # criterion number -> result line, filled by test_acceptance


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


@functools.lru_cache(maxsize=None)
def fixture_group(name):
    return io.load_group(DATA / "groups" / f"{name}.json")


def small_groups(limit):
    return [n for n in GROUP_NAMES if fixture_group(n).order <= limit]


@functools.lru_cache(maxsize=None)
def g64_objects():
    """Group, tables and lattices of the quaternionic example, built once per session."""
    from holoq.groups import find_automorphisms
    from holoq.zlattice import direct_sum, twist_by_automorphism

    G = io.load_group(BUNDLE / "group.json")
    T = character_table(G)
    S1 = io.load_module(BUNDLE / "s1.json", G)
    M = io.load_module(BUNDLE / "module.json", G)
    alpha = io.load_cocycle(BUNDLE / "cocycle.json", M)
    a2, b2, ab = (G.evaluate(w) for w in ("a^2", "b^2", "a^2*b^2"))
    h = [chi for chi, t in zip(T.irreducibles, T.types) if t == "H"]
    chi1, chi2, chi3 = sorted(h, key=lambda c: (c(b2) != -4 or c(a2) != 4, c(a2) == 4, c(b2) != 4))
    f2 = find_automorphisms(G, [(b2, a2)], first_only=True)[0]
    f3 = find_automorphisms(G, [(ab, a2)], first_only=True)[0]
    M2, M3 = twist_by_automorphism(M, f2), twist_by_automorphism(M, f3)
    W = direct_sum(M, M2, M3)
    return dict(G=G, T=T, S1=S1, M=M, alpha=alpha, a2=a2, b2=b2, ab=ab, chi=(chi1, chi2, chi3),
                f2=f2, f3=f3, M2=M2, M3=M3, W=W)


@pytest.fixture(scope="session")
def g64():
    return g64_objects()


def load_example(name):
    b = EXAMPLES / name
    G = io.load_group(b / "group.json")
    L = io.load_module(b / "module.json", G)
    return G, L, io.load_cocycle(b / "cocycle.json", L)
