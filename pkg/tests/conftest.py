import random

import pytest

from xenoclass import Partition, RootedTree, parse_newick

# The worked examples used throughout: two classes A = {a, a'} and
# B = {b, b'} on five small trees covering every compatibility regime.
#
#   TREE_C  binary, compatible, a unique separating set
#   TREE_Q  binary, compatible, three separating sets
#   TREE_M  polytomy at the root, compatible
#   TREE_P  polytomy, incompatible but r-compatible
#   TREE_X  binary, not even r-compatible
TREE_C = "(((b,b')Y,a)Z,a')R;"
TREE_Q = "((a,a')X,(b,b')Y)R;"
TREE_M = "((b,b')Y,a,a')R;"
TREE_P = "((a,a',b)U,b')R;"
TREE_X = "((a,b)X,(a',b')Y)R;"

A, B = 0, 1  # class ids in P2 (line order)


@pytest.fixture
def p2() -> Partition:
    return Partition.from_classes([["a", "a'"], ["b", "b'"]])


@pytest.fixture
def tree_c() -> RootedTree:
    return parse_newick(TREE_C)


@pytest.fixture
def tree_q() -> RootedTree:
    return parse_newick(TREE_Q)


@pytest.fixture
def tree_m() -> RootedTree:
    return parse_newick(TREE_M)


@pytest.fixture
def tree_p() -> RootedTree:
    return parse_newick(TREE_P)


@pytest.fixture
def tree_x() -> RootedTree:
    return parse_newick(TREE_X)


def random_binary_tree(n: int, rng: random.Random,
                       prefix: str = "x") -> RootedTree:
    """Uniform-ish random binary tree grown by splitting random leaves."""
    parent = [-1]
    children: list[list[int]] = [[]]
    labels: list[str | None] = [None]
    leaves = [0]
    while len(leaves) < n:
        v = leaves.pop(rng.randrange(len(leaves)))
        for _ in range(2):
            parent.append(v)
            children[v].append(len(parent) - 1)
            children.append([])
            labels.append(None)
            leaves.append(len(parent) - 1)
    for i, v in enumerate(leaves):
        labels[v] = f"{prefix}{i}"
    return RootedTree(parent, children, labels)


# ---------------------------------------------------------------------- #
# Acceptance reporting: one line per criterion in the terminal summary
# ---------------------------------------------------------------------- #

_ACCEPTANCE_RESULTS: dict[str, str] = {}


def record_acceptance(name: str, line: str) -> None:
    _ACCEPTANCE_RESULTS[name] = line


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call":
        name = marker.args[0]
        if report.failed:
            _ACCEPTANCE_RESULTS[name] = f"FAIL ({report.longreprtext.splitlines()[-1][:120]})"
        elif name not in _ACCEPTANCE_RESULTS:
            _ACCEPTANCE_RESULTS[name] = "PASS" if report.passed else report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{name}] {_ACCEPTANCE_RESULTS[name]}")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): top-level acceptance criterion")
