import io
import json

import pytest

from cogkernel import __version__
from cogkernel.cli import main, thread_cap
from cogkernel.metagraph import read_graph

GRAPH = """cogkernel-graph v1
N 0 Observation sti=1.0
N 1 Observation
N 2 Observation
N 3 Observation
E 4 Similarity (0 1) tv=0.9,0.8
N 5 Concept
E 6 Member (0 5)
E 7 Member (1 5)
"""

EMPTY4 = "cogkernel-graph v1\n" + "".join(f"N {i} Observation\n" for i in range(4))

SYSTEM = """entity a base=1
entity b base=1
entity ab
entity abab
op 0 a b -> ab cost=0.5
op 0 ab ab -> abab cost=0.5
"""

TRIANGLES = "cogkernel-graph v1\n" + "".join(
    f"N {3*k} C\nN {3*k+1} C\nN {3*k+2} C\nE {100+3*k} L ({3*k} {3*k+1})\nE {101+3*k} L ({3*k+1} {3*k+2})\nE {102+3*k} L ({3*k+2} {3*k})\n"
    for k in range(3)
)


def run(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    if env is not None:
        import os

        saved = os.environ.get("COGKERNEL_THREADS")
        os.environ["COGKERNEL_THREADS"] = env
        try:
            code = main(list(argv), out, err)
        finally:
            if saved is None:
                del os.environ["COGKERNEL_THREADS"]
            else:
                os.environ["COGKERNEL_THREADS"] = saved
    else:
        code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def records(text):
    rows = []
    for line in text.splitlines()[1:]:
        rows.append(dict(tok.split("=", 1) for tok in line.split()))
    return rows


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in (("g.graph", GRAPH), ("empty4.graph", EMPTY4), ("s.sys", SYSTEM), ("tri.graph", TRIANGLES)):
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    pts = tmp_path / "pts.txt"
    pts.write_text("0 0\n0 1\n10 10\n10 11\n")
    paths["pts"] = str(pts)
    snaps = tmp_path / "snaps"
    snaps.mkdir()
    (snaps / "000.graph").write_text(EMPTY4)
    (snaps / "001.graph").write_text(EMPTY4 + "E 4 Similarity (0 1)\nE 5 Similarity (2 3)\n")
    paths["snaps"] = str(snaps)
    paths["tmp"] = tmp_path
    return paths


class TestGraph:
    def test_header_and_stats(self, files):
        code, out, _ = run("graph", "stats", "--graph", files["g.graph"])
        assert code == 0
        header = out.splitlines()[0]
        assert header.startswith(f"# cogkernel {__version__} ") and "command=graph_stats" in header
        assert {"label": "Observation", "count": "4"} in records(out)

    def test_graphtropy_empty_fixture(self, files):
        code, out, _ = run("graph", "graphtropy", "--graph", files["empty4.graph"])
        assert code == 0 and records(out)[0]["graphtropy"] == "1.0"

    def test_graphtropy_threshold(self, files):
        _, out, _ = run("graph", "graphtropy", "--graph", files["g.graph"])
        assert records(out)[0]["links"] == "1"
        _, out, _ = run("graph", "graphtropy", "--graph", files["g.graph"], "--threshold", "0.95")
        assert records(out)[0]["links"] == "0"

    def test_negate_writes_graph(self, files):
        target = files["tmp"] / "neg.graph"
        code, _, _ = run("graph", "negate", "--graph", files["g.graph"], "--nodes", "0", "--output", str(target))
        assert code == 0
        g = read_graph(target)
        assert 0 < len(g) < len(read_graph(files["g.graph"]))


class TestOtherCommands:
    def test_logic_table(self):
        code, out, _ = run("logic", "table")
        rows = records(out)
        assert code == 0 and {r["connective"] for r in rows} == {"and", "or", "not"}
        assert {"connective": "and", "row": "B,B,B,F,F"} in rows

    def test_cosm(self, files):
        code, out, _ = run("cosm", "solve", "--system", files["s.sys"])
        rows = records(out)
        assert code == 0
        sigma = {r["entity"]: float(r["sigma"]) for r in rows if "entity" in r}
        assert sigma == {"a": 1.0, "b": 1.0, "ab": 2.5, "abab": 5.5}
        assert float(rows[-1]["residual"]) == 0.0
        for cmd in (["patterns", "--min-intensity", "-1"], ["hierarchy"], ["check-assoc"]):
            assert run("cosm", *cmd, "--system", files["s.sys"])[0] == 0

    def test_check_thm2(self):
        code, out, _ = run("cosm", "check-thm2", "--trials", "5", "--seed", "3")
        assert code == 0 and records(out)[-1]["violations"] == "0"

    @pytest.mark.parametrize("mode", ["greedy", "dp", "mc"])
    def test_dds(self, mode):
        code, out, _ = run("dds", "run", "--mode", mode, "--problem", "deceptive-chain", "--seed", "1", "--rollouts", "8")
        assert code == 0 and "total_reward" in records(out)[-1]

    def test_cofo(self):
        code, out, _ = run("cofo", "run", "--objective", "onemax", "--budget", "30", "--seed", "2")
        assert code == 0 and int(records(out)[-1]["evaluations"]) <= 30

    def test_ecan(self, files):
        out_path = files["tmp"] / "ecan.graph"
        code, out, _ = run("ecan", "run", "--graph", files["g.graph"], "--iters", "3", "--output", str(out_path))
        assert code == 0 and float(records(out)[-1]["total_sti"]) == pytest.approx(1.0)
        assert read_graph(out_path)

    def test_cluster(self, files):
        code, out, _ = run("cluster", "run", "--points", files["pts"], "--k", "2")
        rows = records(out)
        assert code == 0 and rows[-1]["clusters"] == "2"
        assignment = {r["point"]: r["cluster"] for r in rows[:-1]}
        assert assignment["0"] == assignment["1"] != assignment["2"] == assignment["3"]

    def test_mine(self, files):
        code, out, _ = run("mine", "run", "--graph", files["tri.graph"], "--max-size", "3")
        assert code == 0 and any(r["matches"] == "3" and r["size"] == "3" for r in records(out))

    def test_intel(self, files):
        code, out, _ = run("intel", "bench", "--agent", "random", "--trials", "300", "--seed", "5", "--horizon", "4")
        assert code == 0 and [r["metric"] for r in records(out)] == ["universal", "pragmatic", "efficient", "breadth"]
        code, out, _ = run("intel", "jgc", "--snapshots", files["snaps"])
        assert code == 0 and float(records(out)[0]["choice"]) == pytest.approx(1 / 3)


class TestFormatsAndErrors:
    def test_json_lines(self, files):
        for argv in (
            ["--format", "json-lines", "graph", "graphtropy", "--graph", files["empty4.graph"]],
            ["graph", "graphtropy", "--graph", files["empty4.graph"], "--format", "json-lines"],
        ):
            code, out, _ = run(*argv)
            lines = [json.loads(x) for x in out.splitlines()]
            assert code == 0 and lines[0]["cogkernel"] == __version__ and lines[1]["graphtropy"] == 1.0

    def test_repeatable(self):
        argv = ("cosm", "check-thm2", "--trials", "4", "--seed", "18446744073709551615")
        assert run(*argv)[1] == run(*argv)[1]

    @pytest.mark.parametrize(
        "argv",
        [
            ["nope"],
            ["graph", "nope"],
            ["dds", "run", "--mode", "dp", "--problem", "gridworld"],
            ["cosm", "check-thm2", "--trials", "3", "--seed", "-1"],
            ["cosm", "check-thm2", "--trials", "3", "--seed", str(2**64)],
            ["intel", "bench", "--agent", "random", "--trials", "0", "--seed", "1"],
        ],
    )
    def test_usage_errors(self, argv):
        code, _, err = run(*argv)
        assert code == 2 and "usage" in err

    def test_bad_metric(self):
        code, _, err = run("intel", "bench", "--agent", "random", "--trials", "5", "--seed", "1", "--metrics", "iq")
        assert code == 2 and "iq" in err

    def test_runtime_errors(self, files):
        code, _, err = run("graph", "stats", "--graph", str(files["tmp"] / "missing.graph"))
        assert code == 1 and err.startswith("cogkernel: error:")
        bad = files["tmp"] / "bad.graph"
        bad.write_text("cogkernel-graph v1\nE 0 R (5)\n")
        code, _, err = run("graph", "stats", "--graph", str(bad))
        assert code == 1 and "ParseError" in err
        code, _, err = run("intel", "jgc", "--snapshots", str(files["tmp"] / "nodir"))
        assert code == 1

    @pytest.mark.parametrize("value", ["0", "-3", "many"])
    def test_bad_threads(self, value):
        code, _, err = run("logic", "table", env=value)
        assert code == 2 and "COGKERNEL_THREADS" in err

    def test_thread_cap(self):
        assert thread_cap({}) is None and thread_cap({"COGKERNEL_THREADS": "4"}) == 4
