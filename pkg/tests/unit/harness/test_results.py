"""Tests for harness.results module."""

import io
import json
import math

import pytest

from gmrf_greedy._core.errors import InvalidParameter
from gmrf_greedy.harness import SweepResult, SweepRow, emit, parse_csv, render, spearman_by_method, summary_table

HEADER = "family,p,d,n,beta,method,successes,trials,success_prob"


def _row(method="global-greedy", beta=1.0, successes=3, trials=4):
    return SweepRow("chain", 36, 2, 502, beta, method, successes, trials, successes / trials)


class TestRender:
    """Test CSV and JSONL rendering."""

    def test_header_only(self):
        assert render(SweepResult()) == HEADER + "\n"

    def test_single_row(self):
        text = render(SweepResult((_row(),)))
        assert text == HEADER + "\nchain,36,2,502,1.0,global-greedy,3,4,0.75\n"
        assert text.count("\n") == 2

    def test_floats_round_trip(self):
        row = SweepRow("star", 36, 4, 994, 0.1 + 0.2, "glasso", 1, 3, 1 / 3)
        parsed = parse_csv(render(SweepResult((row,))))
        assert parsed.rows == (row,)

    def test_sorted_output(self):
        rows = (_row("nbd-greedy", 0.5), _row("glasso", 2.0), _row("glasso", 0.5))
        methods = [line.split(",")[5] + line.split(",")[4] for line in render(SweepResult(rows)).splitlines()[1:]]
        assert methods == ["glasso0.5", "glasso2.0", "nbd-greedy0.5"]

    def test_jsonl(self):
        lines = render(SweepResult((_row(), _row(beta=2.0))), "jsonl").splitlines()
        assert len(lines) == 2
        assert json.loads(lines[0])["success_prob"] == 0.75

    def test_bad_header(self):
        with pytest.raises(InvalidParameter):
            parse_csv("a,b\n1,2\n")

    def test_malformed_value(self):
        with pytest.raises(InvalidParameter):
            parse_csv(HEADER + "\nchain,x,2,502,1.0,glasso,3,4,0.75\n")


class TestEmit:
    def test_to_file(self, tmp_path):
        out = tmp_path / "results" / "sweep.csv"
        emit(SweepResult((_row(),)), out=out)
        assert out.read_text().startswith(HEADER)

    def test_to_stream(self):
        stream = io.StringIO()
        emit(SweepResult((_row(),)), "jsonl", stream=stream)
        assert stream.getvalue().endswith("\n")


class TestSummaries:
    """Test the rank correlation and summary table."""

    def test_spearman_increasing(self):
        rows = tuple(_row(beta=b, successes=s) for b, s in [(0.5, 0), (1.0, 1), (2.0, 4)])
        assert spearman_by_method(SweepResult(rows))["global-greedy"] == pytest.approx(1.0)

    def test_spearman_degenerate(self):
        rows = (_row(beta=0.5, successes=4), _row(beta=1.0, successes=4))
        assert math.isnan(spearman_by_method(SweepResult(rows))["global-greedy"])

    def test_table(self):
        table = summary_table(SweepResult((_row(), _row("glasso"))))
        assert table.row_count == 2
        assert [c.header for c in table.columns] == ["method", "n", "beta", "success"]
