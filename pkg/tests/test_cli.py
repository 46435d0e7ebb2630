import subprocess
import sys

import pytest

from colourful import cli
from colourful.formats import parse_graph, parse_solution

P5 = "p ccg 5 4\nv 0 0\nv 1 1\nv 2 0\nv 3 1\nv 4 2\ne 0 1\ne 1 2\ne 2 3\ne 3 4\n"


def run(*argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture
def p5_file(tmp_path):
    path = tmp_path / "p5.ccg"
    path.write_text(P5)
    return path


def test_solve_and_verify(tmp_path, p5_file):
    out = tmp_path / "s.sol"
    dot = tmp_path / "s.dot"
    assert run("solve", "--input", p5_file, "--problem", "cc", "--out", out, "--emit-dot", dot) == 0
    sol = parse_solution(out.read_text())
    assert sol.kind == "cc" and sol.size == 1
    assert "style=dashed" in dot.read_text()
    assert run("verify", "--graph", p5_file, "--solution", out) == 0
    assert run("verify", "--graph", p5_file, "--solution", out, "--budget", 0) == 1
    out.write_text("s cc 0\n")
    assert run("verify", "--graph", p5_file, "--solution", out) == 1


def test_solve_cp_and_classes(tmp_path, p5_file):
    for cls in ("caterpillar", "necklace", "auto"):
        out = tmp_path / f"{cls}.sol"
        assert run("solve", "--input", p5_file, "--problem", "cp", "--class", cls, "--out", out) == 0
        assert parse_solution(out.read_text()).size == 2
        assert run("verify", "--graph", p5_file, "--solution", out) == 0


def test_oracle(tmp_path, p5_file):
    out = tmp_path / "o.sol"
    assert run("oracle", "--input", p5_file, "--problem", "cc", "--out", out) == 0
    assert parse_solution(out.read_text()).size == 1
    assert run("oracle", "--input", p5_file, "--problem", "cc", "--max-depth", 0) == 1
    assert run("oracle", "--input", p5_file, "--problem", "cp", "--out", out) == 0
    assert parse_solution(out.read_text()).size == 2


def test_generate_and_solve_necklace(tmp_path):
    g = tmp_path / "n.ccg"
    assert run("generate", "--kind", "necklace", "--n", 12, "--colours", 6, "--seed", 3, "--out", g) == 0
    gf = parse_graph(g.read_text())
    assert gf.hint is not None and gf.graph.n == 12
    out = tmp_path / "n.sol"
    assert run("solve", "--input", g, "--problem", "cc", "--out", out) == 0
    assert run("verify", "--graph", g, "--solution", out) == 0


def test_reduce(tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 3 3\n1 2 3 0\n-1 -2 0\n2 -3 0\n")
    out, wit, dot = tmp_path / "t.ccg", tmp_path / "t.wit", tmp_path / "t.dot"
    assert run("reduce", "--cnf", cnf, "--family", "binary4", "--out", out, "--witness-out", wit, "--emit-dot", dot) == 0
    assert "# budget 7" in out.read_text() and "var1.root" in wit.read_text()
    assert run("reduce", "--cnf", cnf, "--family", "planar-a4", "--out", out) == 1
    cnf.write_text("p cnf 3 1\n1 -2 3 0\n")
    assert run("reduce", "--cnf", cnf, "--family", "planar-a3", "--out", out) == 0
    assert parse_graph(out.read_text()).graph.n == 22
    cnf.write_text("p cnf 1 2\n1 0\n-1 0\n")
    assert run("reduce", "--cnf", cnf, "--family", "ternary3", "--out", out) == 1


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.ccg"
    bad.write_text("p ccg 1 1\nv 0 0\ne 0 0\n")
    assert run("solve", "--input", bad, "--problem", "cc") == 3
    cnf = tmp_path / "big.cnf"
    cnf.write_text("p cnf 4 1\n1 2 3 4 0\n")
    assert run("reduce", "--cnf", cnf, "--family", "binary4") == 3
    assert run("solve", "--input", tmp_path / "missing", "--problem", "cc") == 2
    with pytest.raises(SystemExit) as info:
        run("solve", "--problem", "cc")
    assert info.value.code == 2
    spider = tmp_path / "spider.ccg"
    spider.write_text("p ccg 7 6\n" + "".join(f"v {i} {i}\n" for i in range(7)) + "e 0 1\ne 1 2\ne 0 3\ne 3 4\ne 0 5\ne 5 6\n")
    assert run("solve", "--input", spider, "--problem", "cc", "--class", "caterpillar") == 1
    assert run("bench", "--sizes", "2^3..5") == 2


def test_parse_sizes():
    assert cli.parse_sizes("2^14..2^20", 2) == [2**14, 2**16, 2**18, 2**20]
    assert cli.parse_sizes("2^2..2^4") == [4, 8, 16]
    assert cli.parse_sizes("10,2^5") == [10, 32]


def _outputs(tmp_path, tag):
    d = tmp_path / tag
    d.mkdir()
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 3 3\n1 2 3 0\n-1 -2 0\n2 -3 0\n")
    files = {}
    for kind in ("caterpillar", "cyclic", "necklace"):
        g = d / f"{kind}.ccg"
        run("generate", "--kind", kind, "--n", 13, "--colours", 6, "--seed", 42, "--out", g)
        for problem in ("cc", "cp"):
            run("solve", "--input", g, "--problem", problem, "--out", d / f"{kind}.{problem}", "--emit-dot", d / f"{kind}.{problem}.dot")
            run("oracle", "--input", g, "--problem", problem, "--out", d / f"{kind}.{problem}.oracle")
    for family in ("binary4", "ternary3", "quaternary2"):
        run("reduce", "--cnf", cnf, "--family", family, "--out", d / f"{family}.ccg", "--witness-out", d / f"{family}.wit")
    run("bench", "--sizes", "2^6..2^8", "--step", 1, "--seed", 5, "--repeats", 2, "--csv", d / "bench.csv")
    for p in sorted(d.iterdir()):
        text = p.read_text()
        if p.name == "bench.csv":
            # timings vary run to run; everything else must not
            text = "\n".join(",".join(r.split(",")[i] for i in (0, 1, 3)) for r in text.splitlines())
        files[p.name] = text
    return files


def test_determinism(tmp_path):
    a = _outputs(tmp_path, "a")
    b = _outputs(tmp_path, "b")
    assert len(a) == 28 and a == b


def test_console_entry_point(tmp_path, p5_file):
    res = subprocess.run(
        [sys.executable, "-m", "colourful.cli", "solve", "--input", str(p5_file), "--problem", "cc"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0 and res.stdout.startswith("s cc 1")
