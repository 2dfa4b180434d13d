import pytest

from tedpoly.transform import build_point_set


@pytest.fixture(scope="session")
def point_sets():
    cache = {}

    def get(n, eps):
        key = (n, eps)
        if key not in cache:
            cache[key] = build_point_set(n, eps)
        return cache[key]

    return get


@pytest.fixture
def k4():
    from tedpoly.hamilton import Digraph
    return Digraph.from_rows([[0 if i == j else 1 for j in range(4)] for i in range(4)])


@pytest.fixture
def two_two_cycles():
    from tedpoly.hamilton import Digraph
    return Digraph.from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2)])


_CRITERIA: dict = {}


@pytest.fixture
def criterion():
    """Record one acceptance-criterion outcome; several records per criterion are AND-ed."""

    def record(num, title, ok, detail=""):
        entry = _CRITERIA.setdefault(num, {"title": title, "ok": True, "details": []})
        entry["ok"] = entry["ok"] and bool(ok)
        if detail:
            entry["details"].append(("ok  " if ok else "FAIL") + " " + detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        e = _CRITERIA[num]
        tr.write_line(f"criterion {num}: {'PASS' if e['ok'] else 'FAIL'}  {e['title']}")
        for d in e["details"]:
            tr.write_line(f"    {d}")
