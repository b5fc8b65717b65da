import pytest

from xenoplot import PlotSpec, SchemaError, load_scenarios, load_summary, \
    render

PAIRS_CSV = """\
rates,essential,forbidden,ambiguous_present,ambiguous_absent,included_pct,n
"1,1,0.5",0.600000,0.350000,0.030000,0.020000,98.00,294
"1,1,1",0.550000,0.380000,0.040000,0.030000,97.00,291
"""

EDGES_CSV = """\
rates,essential,ambiguous_in_h,ambiguous_not_in_h,forbidden,included_pct,n
"1,1,1",0.070000,0.020000,0.010000,0.900000,100.00,300
"""

PAIRS_SCEN_CSV = """\
rates,essential,forbidden,ambiguous_present,ambiguous_absent
"1,1,0.5",0.700000,0.300000,0.000000,0.000000
"1,1,0.5",0.500000,0.400000,0.060000,0.040000
"1,1,1",0.550000,0.380000,0.040000,0.030000
"""


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


class TestSchema:
    def test_load_summary(self, files):
        table = load_summary(files("p.csv", PAIRS_CSV), "pairs")
        assert [r.rates for r in table.rows] == ["1,1,0.5", "1,1,1"]
        assert table.rows[0].means["essential"] == 0.6
        assert table.rows[1].n == 291

    def test_kind_mismatch(self, files):
        with pytest.raises(SchemaError, match="header"):
            load_summary(files("p.csv", PAIRS_CSV), "edges")

    def test_missing_file(self, tmp_path):
        with pytest.raises(SchemaError):
            load_summary(str(tmp_path / "nope.csv"), "pairs")

    def test_bad_value(self, files):
        bad = PAIRS_CSV.replace("0.350000", "x")
        with pytest.raises(SchemaError, match="bad value"):
            load_summary(files("p.csv", bad), "pairs")

    def test_bad_sum(self, files):
        bad = PAIRS_CSV.replace("0.350000", "0.990000")
        with pytest.raises(SchemaError, match="sum"):
            load_summary(files("p.csv", bad), "pairs")

    def test_no_rows(self, files):
        header = PAIRS_CSV.splitlines()[0] + "\n"
        with pytest.raises(SchemaError, match="no data"):
            load_summary(files("p.csv", header), "pairs")

    def test_load_scenarios(self, files):
        dist = load_scenarios(files("s.csv", PAIRS_SCEN_CSV), "pairs")
        assert set(dist) == {"1,1,0.5", "1,1,1"}
        assert dist["1,1,0.5"]["essential"] == [0.7, 0.5]


class TestPlotSpec:
    def test_bad_kind(self):
        with pytest.raises(ValueError, match="kind"):
            PlotSpec("a.csv", "nope", "a.png")

    def test_bad_color_class(self):
        with pytest.raises(ValueError, match="unknown classes"):
            PlotSpec("a.csv", "pairs", "a.png",
                     colors={"ambiguous_in_h": "#000"})


class TestRender:
    def test_pairs_figure(self, files, tmp_path):
        out = tmp_path / "fig7.png"
        render(PlotSpec(files("p.csv", PAIRS_CSV), "pairs", str(out),
                        scenario_csv=files("s.csv", PAIRS_SCEN_CSV)))
        data = out.read_bytes()
        assert data[:8] == b"\x89PNG\r\n\x1a\n"
        assert len(data) > 10_000

    def test_edges_figure_without_scenarios(self, files, tmp_path):
        out = tmp_path / "fig6.png"
        render(PlotSpec(files("e.csv", EDGES_CSV), "edges", str(out)))
        assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_deterministic_rerender(self, files, tmp_path):
        spec1 = PlotSpec(files("p.csv", PAIRS_CSV), "pairs",
                         str(tmp_path / "a.png"))
        spec2 = PlotSpec(files("p.csv", PAIRS_CSV), "pairs",
                         str(tmp_path / "b.png"))
        render(spec1)
        render(spec2)
        assert (tmp_path / "a.png").read_bytes() == \
            (tmp_path / "b.png").read_bytes()


class TestCli:
    def test_end_to_end(self, files, tmp_path, capsys):
        from xenoplot.cli import main
        out = tmp_path / "fig.png"
        rc = main(["--table", "pairs", "--in", files("p.csv", PAIRS_CSV),
                   "--out", str(out)])
        assert rc == 0
        assert out.exists()

    def test_schema_error_exit(self, files, tmp_path, capsys):
        from xenoplot.cli import main
        rc = main(["--table", "edges", "--in", files("p.csv", PAIRS_CSV),
                   "--out", str(tmp_path / "fig.png")])
        assert rc == 2
        assert "schema" in capsys.readouterr().err
