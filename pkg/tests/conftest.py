import pytest

from colourful.core import ColouredGraph

_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, detail: str):
        _CRITERIA[number] = (ok, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        ok, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")


FIGURE_COLOURS = ["Four", "Five", "Seven", "Eight", "Nine", "Twelve"]


def figure_caterpillar() -> ColouredGraph:
    """The 7-coloured cyclic caterpillar of the running example (optimum 7)."""
    ids = {name: i for i, name in enumerate(FIGURE_COLOURS)}
    cycle = ["Seven", "Twelve", "Nine", "Seven", "Eight", "Five", "Nine"]
    leaves = {
        0: ["Four", "Four"],
        1: ["Eight"],
        3: ["Five", "Four", "Seven"],
        4: ["Nine"],
        5: ["Twelve", "Seven"],
        6: ["Eight", "Twelve", "Four", "Eight"],
    }
    colours = [ids[c] for c in cycle]
    edges = [(i, (i + 1) % 7) for i in range(7)]
    for centre, names in leaves.items():
        for name in names:
            edges.append((centre, len(colours)))
            colours.append(ids[name])
    return ColouredGraph(colours, edges)


@pytest.fixture
def figure_graph():
    return figure_caterpillar()


@pytest.fixture
def p5():
    return ColouredGraph([1, 2, 1, 2, 3], [(0, 1), (1, 2), (2, 3), (3, 4)])


@pytest.fixture
def c4():
    return ColouredGraph([1, 2, 1, 2], [(0, 1), (1, 2), (2, 3), (0, 3)])
