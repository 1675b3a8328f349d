import pytest

from trpq.bundled import data_text
from trpq.cli import main


@pytest.fixture
def workdir(tmp_path):
    for name in ("running.tg", "running_dense.tg", "parallelogram.tg", "q3.trpq"):
        (tmp_path / name).write_text(data_text(name), encoding="utf-8")
    (tmp_path / "sweep_query.tg").write_text(
        "mode discrete\ndomain [0,8]\nn loop n [0,0]\n", encoding="utf-8"
    )
    (tmp_path / "sweep_graph.tg").write_text(
        "mode discrete\ndomain [0,8]\na e b [0,1]\n", encoding="utf-8"
    )
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_t_coalesced(workdir, capsys):
    code, out, _ = run(
        capsys, "eval", "--graph", workdir / "running.tg",
        "--query", workdir / "q3.trpq", "--repr", "t", "--coalesce",
    )
    assert code == 0
    assert out == (
        "t ICDT ISWC [100,101] 5\n"
        "t ICDT ISWC [100,102] 4\n"
        "t ICDT ISWC [101,102] 3\n"
        "count: 3\n"
    )


def test_eval_point_seven_tuples(workdir, capsys):
    code, out, _ = run(
        capsys, "eval", "--graph", workdir / "running.tg",
        "--query", workdir / "q3.trpq", "--repr", "point",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "count: 7"
    assert len(lines) == 8


def test_count_line_matches_tuples(workdir, capsys):
    for repr_name in ("point", "t", "d", "td", "c"):
        code, out, _ = run(
            capsys, "eval", "--graph", workdir / "running.tg",
            "--query", workdir / "q3.trpq", "--repr", repr_name,
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[-1] == f"count: {len(lines) - 1}"


def test_eval_query_inline(workdir, capsys):
    code, out, _ = run(
        capsys, "eval", "--graph", workdir / "running.tg",
        "--query", "(=Bob)/attends", "--repr", "point",
    )
    assert code == 0
    assert out.strip().splitlines()[-1] == "count: 6"


def test_dense_td_exits_2(workdir, capsys):
    code, out, err = run(
        capsys, "eval", "--graph", workdir / "parallelogram.tg",
        "--query", "e1/T[0,2]/e2", "--repr", "td",
    )
    assert code == 2
    assert "dense time" in err


def test_dense_point_exits_2(workdir, capsys):
    code, _, err = run(
        capsys, "eval", "--graph", workdir / "running_dense.tg",
        "--query", "attends", "--repr", "point",
    )
    assert code == 2


def test_parse_error_exits_1(workdir, capsys):
    code, _, err = run(
        capsys, "eval", "--graph", workdir / "running.tg",
        "--query", "attends//", "--repr", "t",
    )
    assert code == 1
    assert "error" in err


def test_missing_graph_exits_1(workdir, capsys):
    code, _, _ = run(
        capsys, "eval", "--graph", workdir / "nope.tg", "--query", "e", "--repr", "t"
    )
    assert code == 1


def test_eval_minimize_exact(workdir, capsys):
    code, out, _ = run(
        capsys, "eval", "--graph", workdir / "running.tg",
        "--query", workdir / "q3.trpq", "--repr", "td", "--minimize", "exact",
    )
    assert code == 0
    assert out.strip().splitlines()[-1] == "count: 2"
    code, out, _ = run(
        capsys, "eval", "--graph", workdir / "running.tg",
        "--query", workdir / "q3.trpq", "--repr", "td", "--minimize", "exact",
        "--disjoint",
    )
    assert out.strip().splitlines()[-1] == "count: 3"


def test_eval_deterministic(workdir, capsys):
    args = (
        "eval", "--graph", workdir / "running.tg",
        "--query", workdir / "q3.trpq", "--repr", "c",
    )
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_stats_query_scaling(workdir, capsys):
    code, out, _ = run(
        capsys, "stats", "--graph", workdir / "sweep_query.tg", "--query", "T[0,1]",
        "--scale", "query", "--factors", "1,2,3,4", "--reprs", "t,d,c",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "factor,repr,tuple_count"
    rows = {tuple(line.split(",")[:2]): int(line.split(",")[2]) for line in lines[1:]}
    for i in (1, 2, 3, 4):
        assert rows[(str(i), "t")] == i + 1
        assert rows[(str(i), "d")] == 9
        assert rows[(str(i), "c")] == 1


def test_stats_graph_scaling(workdir, capsys):
    code, out, _ = run(
        capsys, "stats", "--graph", workdir / "sweep_graph.tg", "--query", "e",
        "--scale", "graph", "--factors", "1,2,3,4", "--reprs", "t,d,c",
    )
    assert code == 0
    rows = {
        tuple(line.split(",")[:2]): int(line.split(",")[2])
        for line in out.strip().splitlines()[1:]
    }
    for i in (1, 2, 3, 4):
        assert rows[(str(i), "t")] == 1
        assert rows[(str(i), "d")] == i + 1
        assert rows[(str(i), "c")] == 1


def test_stats_empty_factor_list(workdir, capsys):
    code, out, _ = run(
        capsys, "stats", "--graph", workdir / "sweep_graph.tg", "--query", "e",
        "--scale", "graph", "--factors", "",
    )
    assert code == 0
    assert out == "factor,repr,tuple_count\n"


def test_plot_svg_deterministic(workdir, capsys):
    args = (
        "plot", "--graph", workdir / "running.tg", "--query", workdir / "q3.trpq",
        "--repr", "c", "--pair", "ICDT", "ISWC",
    )
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert first.startswith("<svg ")
    assert first.rstrip().endswith("</svg>")
    assert ">t</text>" in first and ">d</text>" in first


def test_plot_rectangle_reprs(workdir, capsys):
    code, out, _ = run(
        capsys, "plot", "--graph", workdir / "running.tg",
        "--query", workdir / "q3.trpq", "--repr", "t", "--coalesce",
        "--pair", "ICDT", "ISWC",
    )
    assert code == 0
    assert out.count('<rect class="box"') == 3
    code, out, _ = run(
        capsys, "plot", "--graph", workdir / "running.tg",
        "--query", workdir / "q3.trpq", "--repr", "td", "--minimize", "exact",
        "--pair", "ICDT", "ISWC",
    )
    assert code == 0
    assert out.count('<rect class="box"') == 2


def test_plot_point_cells(workdir, capsys):
    code, out, _ = run(
        capsys, "plot", "--graph", workdir / "running.tg",
        "--query", workdir / "q3.trpq", "--repr", "point", "--pair", "ICDT", "ISWC",
    )
    assert code == 0
    assert out.count('<rect class="cell"') == 7


def test_plot_empty_answers_axes_only(workdir, capsys):
    code, out, _ = run(
        capsys, "plot", "--graph", workdir / "running.tg",
        "--query", "missing", "--repr", "t", "--pair", "ICDT", "ISWC",
    )
    assert code == 0
    assert "<rect" not in out
    assert out.count('<line class="axis"') == 2


def test_plot_unknown_pair_exits_1(workdir, capsys):
    code, _, err = run(
        capsys, "plot", "--graph", workdir / "running.tg",
        "--query", workdir / "q3.trpq", "--repr", "t", "--pair", "ICDT", "Nobody",
    )
    assert code == 1
    assert "Nobody" in err


def test_plot_dense_non_c_exits_2(workdir, capsys):
    code, _, _ = run(
        capsys, "plot", "--graph", workdir / "parallelogram.tg",
        "--query", "e1", "--repr", "t", "--pair", "n1", "n2",
    )
    assert code == 2


def test_plot_dense_c_polygon(workdir, capsys):
    code, out, _ = run(
        capsys, "plot", "--graph", workdir / "parallelogram.tg",
        "--query", "e1/T[0,2]/e2", "--repr", "c", "--pair", "n1", "n3",
    )
    assert code == 0
    assert "<polygon" in out


def test_plot_out_file(workdir, capsys):
    target = workdir / "plot.svg"
    code, out, _ = run(
        capsys, "plot", "--graph", workdir / "running.tg",
        "--query", workdir / "q3.trpq", "--repr", "c", "--pair", "ICDT", "ISWC",
        "--out", target,
    )
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").startswith("<svg ")


def test_max_iter_env_var(workdir, capsys, monkeypatch):
    (workdir / "closure.tg").write_text(data_text("closure.tg"), encoding="utf-8")
    monkeypatch.setenv("TRPQ_MAX_ITER", "1")
    code, _, err = run(
        capsys, "eval", "--graph", workdir / "closure.tg",
        "--query", "e/(T[2,2])[1,_]", "--repr", "t",
    )
    assert code == 1
    assert "stabilise" in err
    monkeypatch.setenv("TRPQ_MAX_ITER", "100")
    code, out, _ = run(
        capsys, "eval", "--graph", workdir / "closure.tg",
        "--query", "e/(T[2,2])[1,_]", "--repr", "t", "--coalesce",
    )
    assert code == 0
    assert out.strip().splitlines()[-1] == "count: 10"


def test_usage_error_exits_1(workdir, capsys):
    code, _, err = run(capsys, "eval", "--graph", workdir / "running.tg")
    assert code == 1
