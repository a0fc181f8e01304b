"""Text formats: problem documents, DIMACS CNF and proof files.

See docs/formats.md for the grammars.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field

from orthologic.core import (
    AND, ATOM, NOT, ONE, OR, VAR, ZERO, EMPTY, L, R, And, Atom, Formula, Not, One, Or,
    Problem, Sequent, SequentError, SignatureError, Var, Zero,
)
from orthologic.core.terms import RESERVED_PREFIX
from orthologic.errors import InputError, ProofError
from orthologic.proofkit.proofs import ARITY, Proof, Rule, iter_nodes

PROOF_HEADER = "# orthologic proof v1"


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


# -- printing -----------------------------------------------------------------

_PREC = {OR: 1, AND: 2}


def format_formula(f: Formula) -> str:
    memo: dict[int, str] = {}
    # iterative post-order so long chains do not hit the recursion limit
    from orthologic.core import iter_subformulas

    for g in iter_subformulas(f):
        k = g.kind
        if k == VAR:
            memo[g.id] = g.args[0]
        elif k == ATOM:
            memo[g.id] = f"{g.args[0]}({','.join(g.args[1])})"
        elif k == ZERO:
            memo[g.id] = "0"
        elif k == ONE:
            memo[g.id] = "1"
        elif k == NOT:
            c = g.args[0]
            s = memo[c.id]
            memo[g.id] = f"~({s})" if c.kind in _PREC else f"~{s}"
        else:
            op = " & " if k == AND else " | "
            a, b = g.args
            sa, sb = memo[a.id], memo[b.id]
            # right-associative: a left operand of equal or lower precedence needs parens
            if a.kind in _PREC and _PREC[a.kind] <= _PREC[k]:
                sa = f"({sa})"
            if b.kind in _PREC and _PREC[b.kind] < _PREC[k]:
                sb = f"({sb})"
            memo[g.id] = sa + op + sb
    return memo[f.id]


def format_sequent(s: Sequent) -> str:
    left = [format_formula(f) for f, side in s if side == L]
    right = [format_formula(f) for f, side in s if side == R]
    out = ", ".join(left)
    out = (out + " |-") if out else "|-"
    if right:
        out += " " + ", ".join(right)
    return out


def format_problem(p, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    sig = getattr(p, "signature", None)
    if sig is not None:
        preds = getattr(sig, "predicates", {})
        consts = getattr(sig, "constants", ())
        if preds:
            lines.append("predicates " + ", ".join(f"{k}/{v}" for k, v in sorted(preds.items())))
        if consts:
            lines.append("constants " + ", ".join(sorted(consts)))
    for a in p.axioms:
        lines.append("axiom " + format_sequent(a))
    lines.append("goal " + format_sequent(p.goal))
    return "\n".join(lines) + "\n"


# -- tokenizing ---------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<turnstile>\|-)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<num>[0-9]+)
  | (?P<op>[~&|(),./])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            out.append(Token("nl", "\n", line, pos - start + 1))
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            t = m.group()
            out.append(Token(t if kind == "op" else kind, t, line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# -- problem documents --------------------------------------------------------

@dataclass
class ProblemDocument:
    problem: object
    has_goal: bool
    predicates: dict = field(default_factory=dict)
    constants: set = field(default_factory=set)
    comments: list = field(default_factory=list)

    @property
    def is_epr(self) -> bool:
        from orthologic.epr import EprProblem

        return isinstance(self.problem, EprProblem)


class _Parser:
    def __init__(self, text: str, allow_reserved: bool):
        self.toks = tokenize(text)
        self.i = 0
        self.allow_reserved = allow_reserved
        self.opens: list[Token] = []
        self.predicates: dict[str, int] = {}
        self.saw_atom = False

    # token helpers; newlines inside parentheses are whitespace
    def peek(self) -> Token:
        while self.opens and self.toks[self.i].kind == "nl":
            self.i += 1
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        if tok.kind in ("eof", "nl", ".") and self.opens:
            o = self.opens[-1]
            raise ParseError("unclosed '('", o.line, o.col)
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            self.fail(f"expected {kind!r}, found {t.text or t.kind!r}", t)
        return self.take()

    def ident(self, tok: Token) -> str:
        if tok.text.startswith(RESERVED_PREFIX) and not self.allow_reserved:
            raise ParseError(f"identifier {tok.text!r} is in the reserved namespace", tok.line, tok.col)
        return tok.text

    # grammar
    def formula(self) -> Formula:
        left = self.conj()
        if self.peek().kind == "|":
            self.take()
            return Or(left, self.formula())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        if self.peek().kind == "&":
            self.take()
            return And(left, self.conj())
        return left

    def unary(self) -> Formula:
        t = self.peek()
        if t.kind == "~":
            self.take()
            return Not(self.unary())
        if t.kind == "(":
            self.opens.append(self.take())
            f = self.formula()
            if self.peek().kind != ")":
                self.fail(f"expected ')', found {self.peek().text or self.peek().kind!r}")
            self.take()
            self.opens.pop()
            return f
        if t.kind == "num":
            self.take()
            if t.text == "0":
                return Zero
            if t.text == "1":
                return One
            self.fail(f"only 0 and 1 are constants, found {t.text}", t)
        if t.kind == "ident":
            self.take()
            name = self.ident(t)
            if self.toks[self.i].kind == "(":
                return self.atom(name, t)
            return Var(name)
        self.fail(f"expected a formula, found {t.text or t.kind!r}", t)

    def atom(self, pred: str, tok: Token) -> Formula:
        self.opens.append(self.take())
        args = []
        if self.peek().kind != ")":
            while True:
                a = self.peek()
                if a.kind not in ("ident", "num"):
                    self.fail(f"expected an atom argument, found {a.text or a.kind!r}", a)
                self.take()
                args.append(self.ident(a))
                if self.peek().kind == ",":
                    self.take()
                    continue
                break
        if self.peek().kind != ")":
            self.fail(f"expected ')' after atom arguments, found {self.peek().text or self.peek().kind!r}")
        self.take()
        self.opens.pop()
        known = self.predicates.get(pred)
        if known is not None and known != len(args):
            raise SignatureError(
                f"line {tok.line}, column {tok.col}: {pred} has arity {known}, got {len(args)}")
        self.predicates[pred] = len(args)
        self.saw_atom = True
        return Atom(pred, args)

    def side_list(self, stop: set) -> list[Formula]:
        out = []
        if self.peek().kind in stop:
            return out
        out.append(self.formula())
        while self.peek().kind == ",":
            self.take()
            out.append(self.formula())
        return out

    def sequent(self) -> Sequent:
        start = self.peek()
        ends = {"nl", ".", "eof"}
        left = self.side_list({"turnstile"} | ends)
        self.expect("turnstile")
        right = self.side_list(ends)
        if len(left) + len(right) > 2:
            raise ParseError("a sequent has at most two formulas", start.line, start.col)
        try:
            return Sequent([(f, L) for f in left] + [(f, R) for f in right])
        except SequentError as e:
            raise ParseError(str(e), start.line, start.col) from None

    def end_statement(self):
        t = self.peek()
        if t.kind in ("nl", "."):
            self.take()
        elif t.kind != "eof":
            self.fail(f"unexpected {t.text!r} after statement", t)

    def declarations(self, kind: str, sink):
        while True:
            t = self.expect("ident")
            name = self.ident(t)
            if kind == "predicates":
                self.expect("/")
                n = self.expect("num")
                sink(name, int(n.text), t)
            else:
                sink(name, None, t)
            if self.peek().kind != ",":
                break
            self.take()


def parse_document(text: str, allow_reserved: bool = False) -> ProblemDocument:
    ps = _Parser(text, allow_reserved)
    axioms: list[Sequent] = []
    goal = None
    declared: dict[str, int] = {}
    constants: set[str] = set()
    comments = [line.lstrip("#").strip() for line in text.splitlines() if line.lstrip().startswith("#")]

    def declare_pred(name, arity, tok):
        if name in declared and declared[name] != arity:
            raise SignatureError(f"line {tok.line}: predicate {name} declared twice with different arities")
        if name in ps.predicates and ps.predicates[name] != arity:
            raise SignatureError(f"line {tok.line}: predicate {name} used with arity {ps.predicates[name]}")
        declared[name] = arity
        ps.predicates[name] = arity

    def declare_const(name, _, tok):
        if name[:1].isupper():
            raise ParseError(f"constant {name!r} must not start with an uppercase letter", tok.line, tok.col)
        constants.add(name)

    while True:
        t = ps.peek()
        if t.kind == "eof":
            break
        if t.kind in ("nl", "."):
            ps.take()
            continue
        if t.kind != "ident" or t.text not in ("axiom", "goal", "predicates", "constants"):
            ps.fail(f"expected 'axiom', 'goal', 'predicates' or 'constants', found {t.text or t.kind!r}", t)
        ps.take()
        if t.text == "axiom":
            s = ps.sequent()
            if s.is_trivial:
                raise ParseError(f"trivial axiom {format_sequent(s)} is not allowed", t.line, t.col)
            axioms.append(s)
        elif t.text == "goal":
            if goal is not None:
                raise ParseError("more than one goal", t.line, t.col)
            goal = ps.sequent()
        elif t.text == "predicates":
            ps.declarations("predicates", declare_pred)
        else:
            ps.declarations("constants", declare_const)
        ps.end_statement()

    has_goal = goal is not None
    goal = goal if has_goal else EMPTY
    if ps.saw_atom or declared:
        from orthologic.epr import EprProblem, Signature

        sig = Signature(dict(ps.predicates), frozenset(constants))
        problem = EprProblem(sig, tuple(axioms), goal)
    else:
        problem = Problem(tuple(axioms), goal)
    return ProblemDocument(problem, has_goal, dict(ps.predicates), constants, comments)


def parse_problem(text: str, allow_reserved: bool = False):
    """Parse a problem document into a Problem (or an EprProblem when atoms occur)."""
    return parse_document(text, allow_reserved).problem


def parse_formula(text: str, allow_reserved: bool = False) -> Formula:
    ps = _Parser(text, allow_reserved)
    f = ps.formula()
    t = ps.peek()
    while t.kind == "nl":
        ps.take()
        t = ps.peek()
    if t.kind != "eof":
        ps.fail(f"unexpected {t.text!r} after formula", t)
    return f


def parse_sequent(text: str, allow_reserved: bool = False) -> Sequent:
    ps = _Parser(text, allow_reserved)
    s = ps.sequent()
    ps.end_statement()
    if ps.peek().kind != "eof":
        ps.fail("unexpected input after sequent")
    return s


# -- DIMACS -------------------------------------------------------------------

def parse_dimacs(text: str):
    """Parse DIMACS CNF.  Tautological clauses are dropped with a warning."""
    from orthologic.encoders import CnfInstance

    header = None
    clauses: list[frozenset[int]] = []
    current: list[int] = []
    raw_count = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("c"):
            continue
        if s.startswith("%"):
            break
        if s.startswith("p"):
            parts = s.split()
            if header is not None:
                raise ParseError("duplicate header", lineno, 1)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("header must read 'p cnf VARS CLAUSES'", lineno, 1)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("header counts must be integers", lineno, 1) from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError("header counts must be non-negative", lineno, 1)
            continue
        if header is None:
            raise ParseError("clause before 'p cnf' header", lineno, 1)
        for tok in s.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno, line.index(tok) + 1) from None
            if lit == 0:
                raw_count += 1
                c = frozenset(current)
                current = []
                if any(-x in c for x in c):
                    warnings.warn(f"line {lineno}: dropping tautological clause", stacklevel=2)
                    continue
                clauses.append(c)
            else:
                if abs(lit) > header[0]:
                    raise ParseError(f"variable {abs(lit)} exceeds declared count {header[0]}",
                                     lineno, line.index(tok) + 1)
                current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if raw_count != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {raw_count}")
    return CnfInstance(header[0], tuple(clauses))


def format_dimacs(inst) -> str:
    lines = [f"p cnf {inst.num_vars} {len(inst.clauses)}"]
    for c in inst.clauses:
        lits = sorted(c, key=lambda x: (abs(x), x))
        lines.append(" ".join(map(str, lits + [0])))
    return "\n".join(lines) + "\n"


# -- proof files --------------------------------------------------------------

def emit_proof(pr: Proof) -> str:
    """One record per distinct node, premises first; the root is the last record."""
    index: dict[int, int] = {}
    lines = [PROOF_HEADER]
    for node in iter_nodes(pr):
        i = index[id(node)] = len(index)
        rule = str(node.rule)
        if node.rule == Rule.CUT:
            rule += " " + format_formula(node.cut_formula)
        prem = " ".join(str(index[id(p)]) for p in node.premises)
        lines.append(f"{i} ; {rule} ; {format_sequent(node.conclusion)} ; {prem}".rstrip())
    return "\n".join(lines) + "\n"


def parse_proof(text: str, allow_reserved: bool = True) -> Proof:
    nodes: list[Proof] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = [p.strip() for p in s.split(";")]
        if len(parts) == 3:
            parts.append("")
        if len(parts) != 4:
            raise ProofError(f"line {lineno}: expected 'idx ; rule ; conclusion ; premises'")
        idx, rule_text, concl, prem = parts
        if not idx.isdigit() or int(idx) != len(nodes):
            raise ProofError(f"line {lineno}: record index {idx!r} out of sequence (expected {len(nodes)})")
        name, _, cut_text = rule_text.partition(" ")
        try:
            rule = Rule(name)
        except ValueError:
            raise ProofError(f"line {lineno}: unknown rule tag {name!r}") from None
        cut_formula = None
        if rule == Rule.CUT:
            if not cut_text.strip():
                raise ProofError(f"line {lineno}: Cut record lacks its cut formula")
            try:
                cut_formula = parse_formula(cut_text, allow_reserved)
            except ParseError as e:
                raise ProofError(f"line {lineno}: bad cut formula: {e}") from None
        elif cut_text.strip():
            raise ProofError(f"line {lineno}: unexpected text after rule tag {name!r}")
        try:
            conclusion = parse_sequent(concl, allow_reserved)
        except (ParseError, SignatureError) as e:
            raise ProofError(f"line {lineno}: bad conclusion: {e}") from None
        refs = []
        for tok in prem.split():
            if not tok.isdigit():
                raise ProofError(f"line {lineno}: bad premise index {tok!r}")
            j = int(tok)
            if j >= len(nodes):
                raise ProofError(f"line {lineno}: dangling premise index {j}")
            refs.append(nodes[j])
        if len(refs) != ARITY[rule]:
            raise ProofError(f"line {lineno}: {rule} takes {ARITY[rule]} premises, got {len(refs)}")
        nodes.append(Proof(conclusion, rule, tuple(refs), cut_formula))
    if not nodes:
        raise ProofError("proof file has no records")
    return nodes[-1]
