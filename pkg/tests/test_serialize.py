from __future__ import annotations

import io
import json

import pytest

from spancores import maximal_span_cores, naive_span_cores, span_cores
from spancores.serialize import (
    cores_to_csv,
    cores_to_jsonl,
    metrics_to_json,
    read_cores_csv,
    read_cores_jsonl,
    table_to_csv,
)
from .conftest import as_triples


class TestCsv:
    def test_fixture_bytes(self, g_ex):
        text = cores_to_csv(span_cores(g_ex))
        assert text.splitlines() == [
            "k,t_s,t_e,size,members",
            "1,0,0,4,a;b;c;d",
            "2,0,0,3,a;b;c",
            "1,0,1,3,a;b;c",
            "2,0,1,3,a;b;c",
            "1,0,2,2,a;b",
            "1,1,1,3,a;b;c",
            "2,1,1,3,a;b;c",
            "1,1,2,2,a;b",
            "1,2,2,2,a;b",
        ]

    def test_round_trip(self, g_ex):
        result = span_cores(g_ex)
        loaded = read_cores_csv(io.StringIO(cores_to_csv(result)))
        assert as_triples(loaded) == as_triples(result)
        assert cores_to_csv(loaded) == cores_to_csv(result)

    def test_empty_result_keeps_header(self, g_ex):
        from spancores import DecompositionResult, RunMetrics
        empty = DecompositionResult((), (), RunMetrics())
        assert cores_to_csv(empty) == "k,t_s,t_e,size,members\n"

    def test_reader_rejects_wrong_header(self):
        with pytest.raises(ValueError, match="header"):
            read_cores_csv(io.StringIO("a,b,c\n"))

    def test_reader_rejects_inconsistent_size(self):
        text = "k,t_s,t_e,size,members\n1,0,0,3,a;b\n"
        with pytest.raises(ValueError, match="disagrees"):
            read_cores_csv(io.StringIO(text))


class TestJsonl:
    def test_fixture_records(self, g_ex):
        lines = cores_to_jsonl(maximal_span_cores(g_ex), maximal=True).splitlines()
        records = [json.loads(line) for line in lines]
        assert records == [
            {"k": 2, "t_s": 0, "t_e": 1, "members": ["a", "b", "c"], "maximal": True},
            {"k": 1, "t_s": 0, "t_e": 2, "members": ["a", "b"], "maximal": True},
        ]

    def test_full_results_omit_the_maximal_flag(self, g_ex):
        lines = cores_to_jsonl(span_cores(g_ex)).splitlines()
        assert all("maximal" not in json.loads(line) for line in lines)

    def test_round_trip(self, g_ex):
        result = naive_span_cores(g_ex)
        loaded = read_cores_jsonl(io.StringIO(cores_to_jsonl(result)))
        assert as_triples(loaded) == as_triples(result)


class TestMetrics:
    def test_shape(self, g_ex):
        payload = json.loads(metrics_to_json(span_cores(g_ex).metrics))
        assert set(payload) == {"processed_vertices", "cores", "elapsed_ms"}
        assert payload["processed_vertices"] == 19
        assert payload["cores"] == 9
        assert payload["elapsed_ms"] >= 0


class TestTables:
    def test_float_rendering_is_stable(self):
        text = table_to_csv(["k", "count", "mean_size"], [(1, 6, 16 / 6)])
        assert text == "k,count,mean_size\n1,6,2.666666667\n"

    def test_header_only_when_empty(self):
        assert table_to_csv(["t", "purity"], []) == "t,purity\n"
