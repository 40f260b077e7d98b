import csv
import json
import os

import pytest

from chromacert.cli import main
from chromacert.graphs import encode_graph6, petersen_graph

GOLDEN = os.path.join(os.path.dirname(__file__), "data", "table1_golden.csv")


def run(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report


def test_property_p_exit_codes(tmp_path):
    code, rep = run(["property-p", "certify", "--delta0", "524", "--ell", "8",
                     "--t", "1", "--k", "half"], tmp_path)
    assert code == 0
    assert rep["results"]["verdict"] == "certified-true"
    code, rep = run(["property-p", "certify", "--delta0", "523", "--ell", "8",
                     "--t", "1", "--k", "half"], tmp_path)
    assert code == 1
    assert rep["results"]["certificate"]["witness"]["first_failing_delta"] == 523


def test_property_p_usage_error():
    assert main(["property-p", "certify", "--delta0", "0", "--ell", "8",
                 "--t", "1", "--k", "half"]) == 64
    assert main(["property-p", "certify", "--delta0", "5", "--ell", "8",
                 "--t", "1", "--k", "bogus"]) == 64
    assert main(["property-p"]) == 64
    assert main(["nonsense"]) == 64


def test_property_p_search_min(tmp_path):
    code, rep = run(["property-p", "certify", "--delta0", "524", "--ell", "8",
                     "--t", "1", "--k", "half", "--search-min", "1000"], tmp_path)
    assert code == 0
    assert rep["results"]["search_min"]["minimal_delta0"] == 524


def test_bip_table1_matches_golden(tmp_path):
    csv_path = tmp_path / "table.csv"
    code, rep = run(["bip", "table1", "--csv", str(csv_path)], tmp_path)
    assert code == 0
    rows = {r[0]: r[1] for r in rep["results"]["rows"]}
    with open(GOLDEN) as fh:
        golden = {int(r["delta_a"]): int(r["value"]) for r in csv.DictReader(fh)}
    assert rows == golden
    with open(csv_path) as fh:
        got = {int(r["delta_a"]): int(r["value"]) for r in csv.DictReader(fh)}
    assert got == golden


def test_bip_table1_reproducible(tmp_path):
    _, _ = run(["bip", "table1"], tmp_path, "a.json")
    _, _ = run(["bip", "table1"], tmp_path, "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_bip_certify(tmp_path):
    code, rep = run(["bip", "certify", "--da", "165", "--db", "56"], tmp_path)
    assert code == 0 and rep["results"]["condition"] == "coupon"
    code, rep = run(["bip", "certify", "--da", "5", "--db", "5"], tmp_path)
    assert code == 1
    assert main(["bip", "certify", "--da", "1", "--db", "10"]) == 64  # precondition


def test_bip_scan_small(tmp_path):
    csv_path = tmp_path / "pairs.csv"
    code, rep = run(["bip", "scan", "--window", "25", "--csv", str(csv_path)], tmp_path)
    assert code == 0
    res = rep["results"]
    assert res["unordered_count"] == len(res["uncovered_pairs"])
    assert [1, 1] in res["uncovered_pairs"]
    assert res["undecided_pairs"] == []
    with open(csv_path) as fh:
        n_rows = sum(1 for _ in csv.DictReader(fh))
    assert n_rows == res["unordered_count"]


def test_graph_chi(tmp_path):
    code, rep = run(["graph", "chi", "--zoo", "chvatal"], tmp_path)
    assert code == 0
    assert rep["results"] == {"bound": 4, "chi": 4, "max_degree": 4,
                              "sharp": True, "within_bound": True}


def test_graph_chi_list(tmp_path):
    code, rep = run(["graph", "chi-list", "--zoo", "k33"], tmp_path)
    assert code == 0 and rep["results"]["chi_list"] == 3


def test_graph_ratio(tmp_path):
    code, rep = run(["graph", "ratio", "--zoo", "c5", "--lists", "uniform:3",
                     "--vertex", "0"], tmp_path)
    assert code == 0 and rep["results"]["ratio"] == "5/4"


def test_graph_count_and_lists_file(tmp_path):
    lists_path = tmp_path / "lists.json"
    lists_path.write_text(json.dumps(
        {"lists": {"0": [1, 2, 3], "1": [1, 2, 3], "2": [1, 2, 3],
                   "3": [1, 2, 3], "4": [1, 2, 3]}}))
    code, rep = run(["graph", "count", "--zoo", "c5", "--lists", str(lists_path)],
                    tmp_path)
    assert code == 0 and rep["results"]["count"] == "30"


def test_graph_in_file_graph6(tmp_path):
    g6 = tmp_path / "g.g6"
    g6.write_text(encode_graph6(petersen_graph()) + "\n")
    code, rep = run(["graph", "chi", "--in", str(g6)], tmp_path)
    assert code == 0 and rep["results"]["chi"] == 3


def test_graph_sample_deterministic(tmp_path):
    a = run(["graph", "sample", "--zoo", "c4", "--lists", "uniform:2",
             "--seed", "9"], tmp_path, "a.json")[1]
    b = run(["graph", "sample", "--zoo", "c4", "--lists", "uniform:2",
             "--seed", "9"], tmp_path, "b.json")[1]
    assert a == b
    assert a["seeds"] == {"seed": 9}


def test_graph_sample_no_coloring(tmp_path):
    code, rep = run(["graph", "sample", "--zoo", "k33", "--lists", "uniform:1",
                     "--seed", "0"], tmp_path)
    assert code == 1 and "error" in rep["results"]


def test_graph_orient_and_at(tmp_path):
    code, rep = run(["graph", "orient", "--zoo", "petersen"], tmp_path)
    assert code == 0 and rep["results"]["bound_holds"] is True
    code, rep = run(["graph", "at", "--zoo", "c4"], tmp_path)
    assert code == 0 and rep["results"]["alon_tarsi_difference"] == "2"


def test_graph_at_size_cap():
    assert main(["graph", "at", "--zoo", "k66"]) == 3


def test_graph_size_cap_exit():
    assert main(["graph", "chi-list", "--zoo", "clebsch"]) == 3


def test_unknown_zoo_name():
    assert main(["graph", "chi", "--zoo", "nonesuch"]) == 64


def test_missing_input():
    assert main(["graph", "chi"]) == 64
    assert main(["graph", "chi", "--in", "/nonexistent/file.g6"]) == 64


def test_reports_carry_version(tmp_path):
    _, rep = run(["graph", "chi", "--zoo", "c5"], tmp_path)
    from chromacert import __version__

    assert rep["tool_version"] == __version__
    assert set(rep) >= {"command", "parameters", "results", "seeds", "tool_version"}
