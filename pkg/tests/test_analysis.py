from ire.analysis import analyze
from ire.converters.text import parse_scheme_text


def test_analyze_worked_scheme():
    """Test the report on the four-label exchange"""
    report = analyze(parse_scheme_text("(a.b b.b g.b d.b a.e b.e g.e d.e)"))

    assert (report.d, report.N, report.P) == (4, 1, 1)
    assert report.turns_back == ("a.e",)
    assert report.turns_forward == ("a.b",)
    assert (report.T, report.dual_T, report.twists_total, report.genus) == (0, 2, 2, 2)
    assert report.dual == "(a.b b.e g.b d.e a.e b.b g.e d.b)"
    assert (report.endpoint_dim, report.length_dim, report.dual_length_dim) == (5, 4, 4)
    assert report.positive and report.dual_positive
    assert report.is_iet and not report.dual_is_iet


def test_analyze_collapsed_dual():
    """Test a scheme whose dual has only one-element cycles"""
    report = analyze(parse_scheme_text("(a.b a.e)"))

    assert report.dual == "(a.b)(a.e)"
    assert report.dual_per_cycle_twists == (-1, -1)
    assert report.dual_length_dim == 0
    assert report.positive
    assert not report.dual_positive
    assert report.genus == 0


def test_report_rendering():
    """Test the dictionary and text forms of a report"""
    report = analyze(parse_scheme_text("(a.b b.b a.e b.e)"))
    data = report.to_dict()

    assert data["alphabet"] == ["a", "b"]
    assert data["components"] == [["a", "b"]]
    assert data["genus"] == 1
    assert "Twists total: 0, genus: 1" in report.lines()
    assert "Interval exchange: yes, dual: yes" in report.lines()
