"""JSON reports, text rendering and DOT export for the worked example."""

from coxcent.api.schemas import AnalysisReport
from coxcent.export.dot import render_dot, write_dot
from coxcent.services.analysis import build_report, render_text, run_pipeline


def test_report_sections(worked):
    report = build_report(worked)
    assert report.subset == ["s1", "s3", "s4"]
    c = report.cgraph
    assert len(c.vertices) == 10
    assert c.loop_count == 6
    assert [len(cell) for cell in c.cells] == [4, 4]
    kinds = [t.kind for t in c.tours]
    assert kinds.count("circular") == 2
    assert kinds.count("shuttling") == 6
    assert sorted(t.order for t in c.tours if t.kind == "shuttling") == [1, 1, 1, 1, 2, 2]

    assert list(report.pi1.generator_edges) == ["a"]
    assert report.pi1.presentation.free_rank == 1
    assert len(report.pi1.tree_edges) == 9

    w = report.wperp
    assert all(component.verdict == "infinite" for component in w.components)
    assert all(m == 2 for _, _, m in w.finite_orders)
    assert w.symbolic is not None and len(w.symbolic) == 2
    assert set(map(tuple, w.rank_data.values())) == {(0, 2, 3)}

    z = report.centralizer
    assert z.center == ["g[1]"]
    assert z.a_basis == ["g[2,3]"]
    assert z.splits is True
    assert z.nontrivial_cocycles == []
    assert z.b_presentation.dihedral is not None
    assert set(z.actions) == {"a", "g[2,3]"}

    n = report.normalizer
    assert n.generators == ["h[1,3,2]"]
    assert n.splits is True
    assert report.orders is None


def test_report_round_trips_through_json(worked):
    report = build_report(worked)
    assert AnalysisReport.model_validate_json(report.model_dump_json()) == report


def test_report_is_deterministic(worked_problem, worked_config, worked):
    again = run_pipeline(worked_problem, worked_config)
    assert build_report(again).model_dump_json() == build_report(worked).model_dump_json()


def test_normalizer_only_report(worked):
    report = build_report(worked, centralizer=False)
    assert report.centralizer is None
    assert report.normalizer is not None
    assert "Z(W_I)" not in render_text(report)


def test_render_text(worked):
    text = render_text(build_report(worked))
    assert text.startswith("rank-6 worked example: I = (s1, s3, s4)")
    assert "graph C: 10 vertices, 6 loops, 12 edges" in text
    assert "free of rank 1" in text
    assert "infinite dihedral" in text
    assert "A_N: " in text


def test_dot_sources(worked):
    report = build_report(worked)
    sources = render_dot(report)
    assert set(sources) == {"cgraph.dot", "ycomplex.dot", "wperp.dot"}
    assert "graph cgraph {" in sources["cgraph.dot"]
    assert sources["ycomplex.dot"].count("// 2-cell on") == 2
    assert "legend" in sources["wperp.dot"]
    for source in sources.values():
        assert source.rstrip().endswith("}")


def test_write_dot(worked, tmp_path):
    target = tmp_path / "dot"
    write_dot(build_report(worked), target)
    assert sorted(p.name for p in target.iterdir()) == ["cgraph.dot", "wperp.dot", "ycomplex.dot"]
