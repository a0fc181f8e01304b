import pytest
from hypothesis import given, settings

from orthologic.core import EMPTY, One, Zero, L, R, And, Atom, Not, Or, Problem, Sequent, Var
from orthologic.epr import EprProblem
from orthologic.errors import InputError, ProofError
from orthologic.io import (
    PROOF_HEADER, ParseError, emit_proof, format_dimacs, format_formula, format_problem,
    format_sequent, parse_dimacs, parse_document, parse_formula, parse_problem, parse_proof,
    parse_sequent,
)
from orthologic.generators import random_problem, random_proof
from orthologic.proofkit import check_proof, same_proof
from orthologic.prover import prove
from strategies import formulas, problems, sequents

x, y, u = Var("x"), Var("y"), Var("u")


def test_precedence_and_associativity():
    assert parse_formula("x | y & ~u") is Or(x, And(y, Not(u)))
    assert parse_formula("x & y & u") is And(x, And(y, u))
    assert parse_formula("(x & y) & u") is And(And(x, y), u)
    assert parse_formula("~~x") is Not(Not(x))
    assert parse_formula("0 | 1") is Or(Zero, One)


def test_printing_is_minimal():
    assert format_formula(And(And(x, y), u)) == "(x & y) & u"
    assert format_formula(Or(x, And(y, u))) == "x | y & u"
    assert format_formula(Not(Or(x, y))) == "~(x | y)"
    assert format_sequent(EMPTY) == "|-"
    assert format_sequent(Sequent([(x, L), (y, R)])) == "x |- y"


@given(formulas())
def test_formula_round_trip(f):
    assert parse_formula(format_formula(f)) is f


@given(sequents())
def test_sequent_round_trip(s):
    assert parse_sequent(format_sequent(s)) == s


@settings(max_examples=50)
@given(problems())
def test_problem_round_trip(p):
    assert parse_problem(format_problem(p, ["a comment"])) == p


def test_document_with_atoms_is_epr():
    doc = parse_document("predicates edge/2\nconstants a, b\naxiom |- edge(a,b)\ngoal |- edge(a,b)\n")
    assert doc.is_epr and doc.predicates == {"edge": 2} and doc.constants == {"a", "b"}
    assert isinstance(doc.problem, EprProblem)
    again = parse_problem(format_problem(doc.problem))
    assert again == doc.problem


def test_missing_goal_means_empty_goal():
    doc = parse_document("axiom |- x\naxiom x |-\n")
    assert not doc.has_goal and doc.problem.goal == EMPTY


@pytest.mark.parametrize("text, where", [
    ("goal |- (x & y", (1, 9)),
    ("axiom x |- x", (1, 1)),
    ("goal x, y |- u", (1, 6)),
    ("goal |- _v0", (1, 9)),
    ("goal |- x\ngoal |- y", (2, 1)),
    ("prove |- x", (1, 1)),
])
def test_parse_errors_have_positions(text, where):
    with pytest.raises(ParseError) as e:
        parse_problem(text)
    assert (e.value.line, e.value.column) == where


def test_arity_clash_is_an_input_error():
    with pytest.raises(InputError):
        parse_problem("axiom |- p(a)\ngoal |- p(a,b)")


def test_dimacs_round_trip():
    text = "c hello\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n"
    inst = parse_dimacs(text)
    assert inst.num_vars == 3 and set(inst.clauses) == {frozenset({1, -2}), frozenset({2, 3, -1})}
    assert parse_dimacs(format_dimacs(inst)) == inst


@pytest.mark.parametrize("text", [
    "1 2 0\n", "p cnf 2 1\n1 3 0\n", "p cnf 2 2\n1 0\n", "p cnf 2 1\n1 2\n", "p cnf x 1\n",
])
def test_bad_dimacs(text):
    with pytest.raises(ParseError):
        parse_dimacs(text)


def test_tautology_warning():
    with pytest.warns(UserWarning):
        inst = parse_dimacs("p cnf 1 2\n1 -1 0\n1 0\n")
    assert inst.clauses == (frozenset({1}),)


def test_proof_file_round_trip():
    lhs = And(x, Or(Not(x), u))
    p = Problem((Sequent([(lhs, R)]),), Sequent([(u, R)]))
    pr = prove(p).proof
    text = emit_proof(pr)
    assert text.startswith(PROOF_HEADER + "\n")
    back = parse_proof(text)
    assert same_proof(pr, back) and check_proof(back, p.axioms)


@pytest.mark.parametrize("seed", range(10))
def test_random_proofs_round_trip(seed):
    pr = random_proof(seed, [], names=("x", "y"))
    assert same_proof(parse_proof(emit_proof(pr)), pr)


@pytest.mark.parametrize("text", [
    "", "0 ; Hyp ; x |- x ; 1", "1 ; Hyp ; x |- x", "0 ; Bogus ; x |- x", "0 ; Cut ; |- ; ",
    "0 ; Hyp x ; x |- x", "0 ; Hyp ; x |- x\n1 ; Weaken ; x |- x, y ; 0 0",
])
def test_bad_proof_files(text):
    with pytest.raises(ProofError):
        parse_proof(text)
