import json

import pytest

from parkbetti import (
    CheckResult,
    VerificationReport,
    canonical_form,
    export_figure,
    generate_corpus,
    parse_graph,
    verify_corpus,
    verify_graph,
)
from parkbetti.cli import main

from conftest import KITE_TEXT


class TestCorpusGeneration:
    def test_simple_counts(self):
        corpus = generate_corpus(6, max_edges=15)
        by_n = {}
        for G in corpus:
            by_n[G.n] = by_n.get(G.n, 0) + 1
        assert by_n == {2: 1, 3: 2, 4: 6, 5: 21, 6: 112}

    def test_bananas(self):
        corpus = generate_corpus(2, max_edges=3, include_multi=True)
        assert [len(G.edges) for G in corpus] == [1, 2, 3]

    def test_three_vertex_multis(self):
        corpus = generate_corpus(3, max_edges=9, include_multi=True)
        paths = [G for G in corpus if G.n == 3 and len({(e.tail, e.head) for e in G.edges}) == 2]
        triangles = [G for G in corpus if G.n == 3 and len({(e.tail, e.head) for e in G.edges}) == 3]
        # multiplicity multisets: 6 for the path (unordered pair), 10 for the triangle
        assert len(paths) == 6
        assert len(triangles) == 10

    def test_edge_budget_respected(self):
        corpus = generate_corpus(4, max_edges=5, include_multi=True)
        assert all(len(G.edges) <= 5 for G in corpus)

    def test_deterministic(self):
        a = generate_corpus(4, max_edges=6, include_multi=True)
        b = generate_corpus(4, max_edges=6, include_multi=True)
        assert a == b

    def test_bounds(self):
        with pytest.raises(ValueError):
            generate_corpus(1, max_edges=3)
        with pytest.raises(ValueError):
            generate_corpus(8, max_edges=3)

    def test_canonical_form_invariance(self):
        G1 = parse_graph("v:3; a 1 2; b 2 3")
        G2 = parse_graph("v:3; p 1 3; q 2 3")
        assert canonical_form(G1) == canonical_form(G2)
        G3 = parse_graph("v:3; a 1 2; b 2 3; c 1 3")
        assert canonical_form(G1) != canonical_form(G3)


class TestVerifyGraph:
    def test_kite_passes(self, kite):
        report = verify_graph(kite)
        assert report.passed
        assert {c.name for c in report.checks} == {
            "cuts-vs-atoms", "pf-count-vs-trees", "mpf-sink-invariance",
            "mobius-vs-mpf", "cutset-lattice-duality", "parking-specialization",
            "cutset-specialization", "betti-methods-agree", "homology-concentration",
        }
        assert all(vec == [6, 9, 4] for vec in report.betti.values())

    def test_small_graphs_pass(self, k3, banana):
        assert verify_graph(k3).passed
        assert verify_graph(banana(2)).passed

    def test_report_determinism(self, kite):
        a = json.dumps(verify_graph(kite).to_json_dict(), sort_keys=True)
        b = json.dumps(verify_graph(kite).to_json_dict(), sort_keys=True)
        assert a == b

    def test_report_failure_shape(self):
        report = VerificationReport(
            graph="g", checks=[CheckResult("x", False, "bad")], betti={}
        )
        assert not report.passed
        doc = report.to_json_dict()
        assert doc["checks"][0]["witness"] == "bad"
        assert "timings" not in doc

    def test_verify_corpus_parallel(self, k3, p3):
        reports = verify_corpus([k3, p3], jobs=2)
        assert [r.graph for r in reports] == [
            "v:3; a 1 2; b 1 3; c 2 3; sink:3",
            "v:3; a 1 2; b 2 3; sink:3",
        ]
        assert all(r.passed for r in reports)

    def test_single_vertex_rejected(self):
        with pytest.raises(ValueError):
            verify_graph(parse_graph("v:1"))

    def test_audit_rows_included_on_request(self, k3):
        report = verify_graph(k3, audit=True)
        assert report.audit
        assert {row["rank"] for row in report.audit} == {1, 2}

    def test_six_vertex_tree(self):
        G = parse_graph("v:6; a 1 2; b 2 3; c 3 4; d 4 5; e 5 6")
        assert verify_graph(G).passed


class TestFigureExport:
    def test_kite_dot(self, kite):
        dot = export_figure(kite, format="dot")
        assert dot.count("[label=") == 13
        assert "x1^3" in dot and "y_a*y_b*y_c" in dot and "z1_a*z1_b*z1_c" in dot
        assert "mu=-4" in dot

    def test_kite_json(self, kite):
        doc = json.loads(export_figure(kite, format="json"))
        assert doc["mobius_by_rank"][0] == [1]
        assert doc["mobius_by_rank"][1] == [-1] * 6
        assert sorted(doc["mobius_by_rank"][2]) == [1, 2, 2, 2, 2]
        assert doc["mobius_by_rank"][3] == [-4]
        assert len(doc["atom_generators"]) == 6

    def test_single_edge_json(self):
        doc = json.loads(export_figure(parse_graph("v:2; a 1 2"), format="json"))
        assert len(doc["elements"]) == 2

    def test_bad_format(self, kite):
        with pytest.raises(ValueError):
            export_figure(kite, format="svg")


class TestCli:
    def write(self, tmp_path, text=KITE_TEXT):
        path = tmp_path / "graph.txt"
        path.write_text(text)
        return str(path)

    def test_parse(self, tmp_path, capsys):
        assert main(["parse", self.write(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert out.strip() == "v:4; a 1 2; b 1 3; c 1 4; d 2 3; e 3 4; sink:4"

    def test_parse_json_input(self, tmp_path, capsys):
        path = tmp_path / "graph.json"
        path.write_text('{"vertices": 2, "edges": [["a", 1, 2]]}')
        assert main(["parse", str(path)]) == 0
        assert "a 1 2" in capsys.readouterr().out

    def test_parse_error_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("v:3; a 1 1")
        assert main(["parse", str(path)]) == 2
        assert "loop" in capsys.readouterr().err

    def test_ideal(self, tmp_path, capsys):
        assert main(["ideal", self.write(tmp_path), "--which", "I"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert "x1^3" in out and "x1*x3" in out

    def test_ideal_json(self, tmp_path, capsys):
        assert main(["ideal", self.write(tmp_path), "--which", "J", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["generators"]) == 6

    def test_mpf(self, tmp_path, capsys):
        assert main(["mpf", self.write(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "count: 4" in out

    def test_mpf_sink_override(self, tmp_path, capsys):
        assert main(["mpf", self.write(tmp_path), "--sink", "1"]) == 0
        assert "count: 4" in capsys.readouterr().out

    def test_betti_methods(self, tmp_path, capsys):
        path = self.write(tmp_path)
        for method in ("wilmes", "gpw", "koszul", "mobius"):
            args = ["betti", path, "--method", method]
            if method in ("gpw", "koszul"):
                args += ["--ideal", "I"]
            assert main(args) == 0
            assert json.loads(capsys.readouterr().out) == [6, 9, 4]

    def test_betti_char_zero(self, tmp_path, capsys):
        assert main(["betti", self.write(tmp_path), "--method", "gpw", "--ideal", "J", "--char", "0"]) == 0
        assert json.loads(capsys.readouterr().out) == [6, 9, 4]

    def test_lattice_text(self, tmp_path, capsys):
        assert main(["lattice", self.write(tmp_path), "--dual", "--mobius"]) == 0
        out = capsys.readouterr().out
        assert "mu=-4" in out and out.count("rank") == 13

    def test_lattice_json(self, tmp_path, capsys):
        assert main(["lattice", self.write(tmp_path), "--dual", "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["elements"]) == 13

    def test_verify_single(self, tmp_path, capsys):
        assert main(["verify", self.write(tmp_path)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["all_passed"] is True

    def test_verify_pretty(self, tmp_path, capsys):
        assert main(["verify", self.write(tmp_path), "--pretty"]) == 0
        assert "PASS" in capsys.readouterr().out

    def test_verify_corpus_small(self, capsys):
        assert main(["verify", "--corpus", "3", "--max-edges", "4"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["graphs"] > 0 and doc["all_passed"] is True

    def test_verify_needs_input(self, capsys):
        with pytest.raises(SystemExit):
            main(["verify"])

    def test_figure(self, tmp_path, capsys):
        assert main(["figure", self.write(tmp_path), "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["mobius_by_rank"][-1] == [-4]
