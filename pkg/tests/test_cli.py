import json
import re
import subprocess
import sys

import pytest

from beauville.charpoly import GradedCharPoly
from beauville.cli import main
from beauville.surface import CohomologyRanks, K, cohomology_S, parse_bundle


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cohomology_text(capsys):
    assert run(capsys, "cohomology", "K(1,3)") == (0, "h = 3+3q\n", "")


def test_cohomology_json_round_trip(capsys):
    code, out, _ = run(capsys, "--format", "json", "cohomology", "O(2,2)[2,0]")
    data = json.loads(out)
    assert code == 0
    assert parse_bundle(data["bundle"]) == K(2, 2)
    assert CohomologyRanks(data["h0"], data["h1"], data["h2"]) == cohomology_S(K(2, 2))


def test_parse_error_exits_2(capsys):
    code, out, err = run(capsys, "cohomology", "K(1,1)[9,9")
    assert code == 2 and out == ""
    assert "position 6" in err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["--range", "oops", "table"])
    assert exc.value.code == 2


def test_curve(capsys):
    code, out, _ = run(capsys, "curve", "C", "1")
    assert code == 0
    assert GradedCharPoly.parse(out.strip()) == GradedCharPoly.parse("1+x+y+q*x^4*y^4+q*x^4*y^3+q*x^3*y^4")
    code, out, _ = run(capsys, "--format", "json", "curve", "Cprime", "2", "--basis", "K")
    assert code == 0
    data = json.loads(out)
    assert data["exponents"] == [[2, 4, 0], [1, 3, 0]]
    assert GradedCharPoly.from_json(json.dumps(data["poly"])).dims_by_degree() == [6, 1]


def test_table_text_and_json(capsys):
    code, out, _ = run(capsys, "--range", "0:1,0:1", "table")
    assert code == 0
    assert out.splitlines()[1].split() == ["1", "0", "0"]
    code, out, _ = run(capsys, "--range", "-1:4,-2:4", "--format", "json", "table")
    rows = json.loads(out)
    assert len(rows) == 6 * 7
    for row in rows:
        L = parse_bundle(row["bundle"])
        assert cohomology_S(L) == (row["h0"], row["h1"], row["h2"])


def test_table_markdown(capsys):
    code, out, _ = run(capsys, "--range", "0:2,0:0", "--format", "markdown", "table")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("|") and set(lines[1]) <= set("|- :")


def test_empty_range_gives_empty_table(capsys):
    code, out, _ = run(capsys, "--range", "1:0,0:0", "table")
    assert code == 0 and out.strip() == ""
    code, out, _ = run(capsys, "--range", "1:0,0:0", "--format", "json", "table")
    assert json.loads(out) == []


def test_acyclic(capsys):
    code, out, _ = run(capsys, "--format", "json", "acyclic")
    data = json.loads(out)
    assert code == 0
    assert len(data["acyclic_sets"]) == 11
    assert data["count"] == len(data["acyclic_bundles"]) == 39
    assert all(cohomology_S(parse_bundle(b)).is_zero() for b in data["acyclic_bundles"])


def test_acyclic_small_range_exits_2(capsys):
    code, _, err = run(capsys, "--range", "0:3,0:3", "acyclic")
    assert code == 2 and "box" in err


def test_search_published_order(capsys):
    code, out, _ = run(capsys, "search")
    types = [line.split()[0] for line in out.splitlines()[1:]]
    assert code == 0
    assert types == ["I_1", "IV_1", "I_-1", "IV_-1", "II_0", "I_0"]


def test_search_json_and_certificates(capsys):
    code, out, _ = run(capsys, "--format", "json", "search", "--certificates")
    data = json.loads(out)
    assert code == 0 and len(data) == 6
    for cert in data:
        assert all(parse_bundle(e) for e in cert["entries"])
        assert cert["exceptional_by_acyclic_sets"] and cert["exceptional_by_cohomology"]


def test_helices(capsys):
    code, out, _ = run(capsys, "helices")
    assert code == 0
    assert out == "H1: I_1 -> IV_1 -> I_-1 -> IV_-1 -> I_1\nH2: I_0 -> II_0 -> I_0\n"


def test_ext_matrix(capsys):
    code, out, _ = run(capsys, "--format", "json", "ext-matrix", "--helix", "H2")
    assert code == 0
    data = json.loads(out)
    assert data["H2"] == [["1", "3q^2+q", "4q^2", "6q^2"]] * 4
    code, out, _ = run(capsys, "ext-matrix", "--collection", "I_-1")
    assert code == 0 and "8q^2" in out
    code, _, _ = run(capsys, "ext-matrix", "--collection", "V_1")
    assert code == 2


def test_height(capsys):
    assert run(capsys, "height") == (0, "h(H1) = 2\nh(H2) = 1\n", "")
    code, out, _ = run(capsys, "--format", "json", "height", "--helix", "H1")
    assert json.loads(out) == {"H1": 2}


def test_hochschild(capsys):
    assert run(capsys, "hochschild") == (0, "1,0,0,6,9\n", "")
    _, out, _ = run(capsys, "--format", "json", "hochschild")
    assert json.loads(out) == {"HH": [1, 0, 0, 6, 9]}


def test_phantom(capsys):
    code, out, _ = run(capsys, "--format", "json", "phantom")
    data = json.loads(out)
    assert code == 0 and set(data) == {"H1", "H2"}
    for lines in data.values():
        by_name = {line["quantity"]: line for line in lines}
        assert by_name["K0(A)"]["value"] == "(Z/5)^2"
        assert by_name["dim HH_*(A)"]["value"] == "0"
        assert by_name["HH^0(A)"]["value"] == "C"


def test_paper_check_passes(capsys):
    code, out, _ = run(capsys, "paper-check")
    assert code == 0
    assert out.rstrip().endswith("all facts pass")
    assert "FAIL" not in out


def test_paper_check_json(capsys):
    code, out, _ = run(capsys, "paper-check", "--json")
    data = json.loads(out)
    assert code == 0 and data["failed"] == 0
    assert all(r["passed"] and r["citation"] for r in data["results"])


@pytest.mark.parametrize("fault", ["canonical-character", "k-offset", "restriction"])
def test_paper_check_detects_faults(capsys, fault):
    code, out, _ = run(capsys, "paper-check", "--inject-fault", fault)
    assert code == 1
    assert "expected:" in out and "computed:" in out
    # the fault is scoped: a later run is clean again
    assert run(capsys, "paper-check")[0] == 0


def test_canonical_fault_breaks_serre_symmetric_pairs(capsys):
    _, out, _ = run(capsys, "paper-check", "--json", "--inject-fault", "canonical-character")
    results = json.loads(out)["results"]
    table = {r["id"]: r["passed"] for r in results if r["id"].startswith("cohKK.")}
    cells = {tuple(map(int, re.findall(r"-?\d+", k))): ok for k, ok in table.items()}
    failed = {c for c, ok in cells.items() if not ok}
    assert failed
    for i, j in failed:
        partner = (2 - i, 2 - j)
        assert partner not in cells or partner in failed


def test_unknown_fault_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["paper-check", "--inject-fault", "nonsense"])
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["--format", "json", "search"],
        ["--format", "json", "--range", "-5:7,-5:7", "table"],
        ["--format", "markdown", "ext-matrix"],
        ["paper-check", "--json"],
    ],
    ids=lambda a: " ".join(a),
)
def test_output_is_byte_identical_across_runs(capsys, argv):
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first


def test_search_output_independent_of_jobs(capsys):
    outs = {run(capsys, "--format", "json", "search", "--jobs", str(n))[1] for n in (1, 2, 8)}
    assert len(outs) == 1


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "beauville", "cohomology", "K(-3,-1)"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == "h = 8q^2\n"
