import csv
import io
import subprocess
import sys

import pytest

from orthologic.cli import EXIT_INPUT, EXIT_NO, EXIT_OK, EXIT_RESOURCE, run

EXAMPLE = "axiom |- x & (~x | u)\ngoal |- u\n"
PATH = """predicates edge/2, path/2
axiom |- edge(a,b)
axiom |- edge(b,c)
axiom edge(X,Y) |- path(X,Y)
axiom path(X,Y) & edge(Y,Z) |- path(X,Z)
"""


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p
    return write


def test_prove_and_check_round_trip(files, tmp_path):
    prob = files("p.txt", EXAMPLE)
    proof = tmp_path / "p.proof"
    code, out = call("prove", prob, "--proof", proof, "--stats", "--oracle")
    assert code == EXIT_OK and out.splitlines()[0] == "PROVABLE"
    stats = dict(line.split("=", 1) for line in out.splitlines()[1:])
    assert int(stats["visitedCount"]) <= int(stats["sizeBound"])
    assert int(stats["maxParents"]) <= int(stats["parentBound"])
    assert stats["classical"] == "holds"
    code, out = call("check", proof, prob)
    assert (code, out.strip()) == (EXIT_OK, "VALID")


def test_not_provable(files):
    code, out = call("prove", files("q.txt", "goal |- u\n"), "--engine", "backward")
    assert (code, out.strip()) == (EXIT_NO, "NOT-PROVABLE")


def test_tampered_proof_names_the_node(files, tmp_path):
    prob = files("p.txt", EXAMPLE)
    proof = tmp_path / "p.proof"
    call("prove", prob, "--proof", proof)
    lines = proof.read_text().splitlines()
    # turn the first axiom leaf into a bogus axiom
    i = next(k for k, line in enumerate(lines) if " ; Ax ; " in line)
    idx, rule, concl, prem = (s.strip() for s in (lines[i] + " ").split(";"))
    lines[i] = f"{idx} ; Ax ; |- y ; "
    proof.write_text("\n".join(lines) + "\n")
    code, out = call("check", proof, prob)
    assert code == EXIT_NO and out.startswith("INVALID: root")


def test_merged_proofs_are_accepted(files, tmp_path):
    prob = files("m.txt", "axiom x |- y\naxiom x |- u\ngoal x |- y & u\n")
    proof = tmp_path / "m.proof"
    assert call("prove", prob, "--merge-axioms", "--proof", proof)[0] == EXIT_OK
    code, out = call("check", proof, prob)
    assert code == EXIT_OK and out.startswith("VALID")


def test_input_errors(files):
    assert call("prove", files("bad.txt", "goal |- (x\n"))[0] == EXIT_INPUT
    assert call("prove", "/nonexistent/file")[0] == EXIT_INPUT
    assert call("bogus")[0] == EXIT_INPUT
    assert call("--version")[0] == EXIT_OK


def test_resource_limit(files):
    chain = "goal x1 & x2 & x3 & x4 |- y1 | y2 | y3 | y4\n"
    assert call("prove", files("c.txt", chain), "--max-nodes", "5")[0] == EXIT_RESOURCE


def test_encode(files):
    code, out = call("encode", "--dimacs", files("f.cnf", "p cnf 3 2\n1 2 3 0\n-1 2 0\n"))
    assert code == EXIT_OK
    assert "# classes: RenamedHorn" in out and "# horn renaming:" in out
    assert "axiom |- x1 | x2 | x3" in out and out.rstrip().endswith("goal |-")


def test_ground_and_datalog(files):
    prog = files("path.txt", PATH)
    code, out = call("ground", prog)
    assert code == EXIT_OK and "axiom |- edge(a,b)" in out and "ground axioms (bound" in out
    assert call("datalog", prog, "--query", "path(a,c)", "--oracle") == (EXIT_OK, "naive=true\ntrue\n")
    assert call("datalog", prog, "--query", "path(c,a)")[0] == EXIT_NO
    assert call("datalog", prog, "--query", "x & y")[0] == EXIT_INPUT


def test_bench_csv():
    code, out = call("bench", "--family", "chain", "--n-min", "8", "--n-max", "32")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == EXIT_OK and [r["n"] for r in rows] == ["8", "16", "32"]
    assert all(int(r["visited"]) > 0 for r in rows)
    code, out = call("bench", "--family", "cnf", "--n-max", "8", "--seed", "3")
    assert code == EXIT_OK and len(out.splitlines()) == 3


def test_module_entry_point(files):
    r = subprocess.run([sys.executable, "-m", "orthologic.cli", "prove", str(files("p.txt", EXAMPLE))],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "PROVABLE"
