"""Function-free predicate orthologic: grounding, unification, congruence axioms, Datalog."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from orthologic.core import (
    AND, ATOM, NOT, OR, VAR, EMPTY, L, R, And, Atom, Formula, Not, Or, Problem, Sequent,
    SignatureError, Var, iter_subformulas, map_leaves,
)
from orthologic.core.terms import RESERVED_PREFIX
from orthologic.errors import ShapeError

INJECTED_CONSTANT = RESERVED_PREFIX + "c0"


def is_variable(term: str) -> bool:
    """Term variables start with an uppercase letter; everything else is a constant."""
    return term[:1].isupper()


@dataclass(frozen=True)
class Signature:
    predicates: Mapping[str, int] = field(default_factory=dict)
    constants: frozenset = frozenset()

    def __post_init__(self):
        preds = dict(self.predicates)
        for name, arity in preds.items():
            if not isinstance(arity, int) or arity < 0:
                raise SignatureError(f"predicate {name} needs a non-negative arity, got {arity!r}")
        consts = frozenset(self.constants)
        for c in consts:
            if is_variable(c):
                raise SignatureError(f"constant {c!r} must not start with an uppercase letter")
        object.__setattr__(self, "predicates", preds)
        object.__setattr__(self, "constants", consts)

    def __hash__(self):
        return hash((tuple(sorted(self.predicates.items())), self.constants))

    def arity(self, pred: str) -> int:
        if pred not in self.predicates:
            raise SignatureError(f"undeclared predicate {pred}")
        return self.predicates[pred]


def _atoms_in(sequents: Iterable[Sequent]):
    seen = set()
    for s in sequents:
        for f, _ in s:
            for g in iter_subformulas(f):
                if g.kind == ATOM and g not in seen:
                    seen.add(g)
                    yield g


def terms_of(x) -> set[str]:
    """All term arguments occurring in a formula, sequent or sequence of sequents."""
    if isinstance(x, Formula):
        x = [Sequent(((x, L),))]
    elif isinstance(x, Sequent):
        x = [x]
    return {t for a in _atoms_in(x) for t in a.args[1]}


@dataclass(frozen=True)
class EprProblem:
    """Axioms and goal over predicate atoms.  The signature is completed from the atoms."""

    signature: Signature
    axioms: tuple
    goal: Sequent = EMPTY

    def __post_init__(self):
        axioms = tuple(dict.fromkeys(self.axioms))
        for a in axioms:
            if a.is_trivial:
                raise SignatureError(f"trivial axiom {a} is not allowed")
        preds = dict(self.signature.predicates)
        consts = set(self.signature.constants)
        for atom in _atoms_in(axioms + (self.goal,)):
            name, args = atom.args
            known = preds.setdefault(name, len(args))
            if known != len(args):
                raise SignatureError(f"{name} has arity {known}, used with {len(args)} arguments")
            consts.update(t for t in args if not is_variable(t))
        object.__setattr__(self, "axioms", axioms)
        object.__setattr__(self, "signature", Signature(preds, frozenset(consts)))

    def sequents(self) -> tuple:
        return self.axioms + (self.goal,)

    def formulas(self) -> list[Formula]:
        return [f for s in self.sequents() for f, _ in s]

    def with_goal(self, goal: Sequent) -> "EprProblem":
        return EprProblem(self.signature, self.axioms, goal)

    def with_axioms(self, axioms) -> "EprProblem":
        return EprProblem(self.signature, tuple(axioms), self.goal)


def term_variables(x) -> set[str]:
    return {t for t in terms_of(x) if is_variable(t)}


def degree(x) -> int:
    """Distinct term variables of a formula or sequent; the maximum over axioms for a problem."""
    if isinstance(x, EprProblem):
        return max((degree(a) for a in x.axioms), default=0)
    if isinstance(x, (Formula, Sequent)):
        return len(term_variables(x))
    return max((degree(s) for s in x), default=0)


def epr_size(sequents: Iterable[Sequent]) -> int:
    """Distinct subformulas plus atom argument occurrences."""
    subs = set()
    for s in sequents:
        for f, _ in s:
            subs.update(iter_subformulas(f))
    return len(subs) + sum(len(g.args[1]) for g in subs if g.kind == ATOM)


def ground_bound(p: EprProblem) -> int:
    """``|A| * (|S| + ||A||) ** d(A)``, sizes counted by :func:`epr_size`."""
    return len(p.axioms) * (epr_size([p.goal]) + epr_size(p.axioms)) ** degree(p)


# -- substitutions ---------------------------------------------------------------

@dataclass(frozen=True)
class Substitution:
    bindings: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        b = dict(self.bindings)
        for k, v in b.items():
            if v in b:
                raise ValueError(f"substitution is not idempotent: {k} -> {v} -> {b[v]}")
        object.__setattr__(self, "bindings", b)

    def __hash__(self):
        return hash(tuple(sorted(self.bindings.items())))

    def term(self, t: str) -> str:
        return self.bindings.get(t, t)

    def apply(self, f: Formula) -> Formula:
        def leaf(g):
            if g.kind == ATOM:
                return Atom(g.args[0], tuple(self.term(t) for t in g.args[1]))
            return g
        return map_leaves(f, leaf)

    def apply_sequent(self, s: Sequent) -> Sequent:
        return Sequent((self.apply(f), side) for f, side in s)

    def compose(self, other: "Substitution") -> "Substitution":
        """``self`` after ``other``: first apply ``other``, then ``self``."""
        out = {k: self.term(v) for k, v in other.bindings.items()}
        for k, v in self.bindings.items():
            out.setdefault(k, v)
        return Substitution({k: v for k, v in out.items() if k != v})


def mgu(a: Formula, b: Formula,
        is_var: Callable[[str], bool] = is_variable) -> Substitution | None:
    """Most general unifier of two atoms, or None when they do not unify."""
    if a.kind != ATOM or b.kind != ATOM:
        raise TypeError("mgu expects two atoms")
    (pa, xs), (pb, ys) = a.args, b.args
    if pa != pb or len(xs) != len(ys):
        return None
    parent: dict[str, str] = {}

    def find(t):
        while t in parent:
            t = parent[t]
        return t

    for x, y in zip(xs, ys):
        x, y = find(x), find(y)
        if x == y:
            continue
        if is_var(x):
            parent[x] = y
        elif is_var(y):
            parent[y] = x
        else:
            return None
    return Substitution({v: find(v) for v in parent})


def instantiate(s: Sequent, theta: Substitution) -> Sequent:
    """Apply a substitution to a sequent (the instantiation step of the calculus)."""
    return theta.apply_sequent(s)


# -- grounding ---------------------------------------------------------------------

def ground_name(atom: Formula) -> str:
    return f"{atom.args[0]}({','.join(atom.args[1])})"


def _propositional(f: Formula) -> Formula:
    return map_leaves(f, lambda g: Var(ground_name(g)) if g.kind == ATOM else g)


def universe(p: EprProblem, extra: Iterable[str] = ()) -> list[str]:
    """Constants of the axioms and goal, plus the goal's variables held rigid.

    Falls back to one signature constant, or an injected reserved one, so the
    universe is never empty.
    """
    u = {t for t in terms_of(p.sequents()) if not is_variable(t)}
    u |= term_variables(p.goal)
    u |= set(extra)
    if not u:
        u = {min(p.signature.constants)} if p.signature.constants else {INJECTED_CONSTANT}
    return sorted(u)


def ground_instances(p: EprProblem, extra: Iterable[str] = ()) -> list[Sequent]:
    u = universe(p, extra)
    out: dict[Sequent, None] = {}
    for a in p.axioms:
        vs = sorted(term_variables(a))
        for combo in itertools.product(u, repeat=len(vs)):
            s = Substitution({v: c for v, c in zip(vs, combo) if v != c}) if vs else Substitution()
            inst = s.apply_sequent(a)
            if not inst.is_trivial:
                out.setdefault(inst, None)
    return list(out)


def ground(p: EprProblem, extra_constants: Iterable[str] = ()) -> Problem:
    """Propositional problem whose variables are named by printed ground atoms."""
    if isinstance(p, Problem):
        return p
    def prop(s: Sequent) -> Sequent:
        return Sequent((_propositional(f), side) for f, side in s)
    axioms = []
    for inst in ground_instances(p, extra_constants):
        s = prop(inst)
        if not s.is_trivial:
            axioms.append(s)
    return Problem(tuple(axioms), prop(p.goal))


# -- congruence ----------------------------------------------------------------

def congruence_axioms(sig: Signature, eq: str = "eq") -> list[Sequent]:
    """Reflexivity, symmetry, transitivity of ``eq`` and one congruence sequent per argument."""
    if sig.predicates.get(eq) != 2:
        raise SignatureError(f"{eq} must be a binary predicate of the signature")

    def e(a, b):
        return Atom(eq, (a, b))
    out = [
        Sequent(((e("X", "X"), R),)),
        Sequent(((e("X", "Y"), L), (e("Y", "X"), R))),
        Sequent(((And(e("X", "Y"), e("Y", "Z")), L), (e("X", "Z"), R))),
    ]
    for name in sorted(sig.predicates):
        if name == eq:
            continue
        n = sig.predicates[name]
        zs = [f"Z{i}" for i in range(1, n + 1)]
        for j in range(n):
            before = zs[:j] + ["X"] + zs[j + 1:]
            after = zs[:j] + ["Y"] + zs[j + 1:]
            out.append(Sequent(((And(e("X", "Y"), Atom(name, before)), L), (Atom(name, after), R))))
    return out


# -- Datalog -------------------------------------------------------------------

def _conjuncts(f: Formula) -> list[Formula] | None:
    out, stack = [], [f]
    while stack:
        g = stack.pop()
        if g.kind == AND:
            stack.append(g.args[1])
            stack.append(g.args[0])
        elif g.kind == ATOM:
            out.append(g)
        else:
            return None
    return out


def horn_rule(s: Sequent):
    """``(body atoms, head atom)`` for a Horn-shaped sequent, else None."""
    lefts = [f for f, side in s if side == L]
    rights = [f for f, side in s if side == R]
    if len(rights) != 1 or rights[0].kind != ATOM or len(lefts) > 1:
        return None
    body = _conjuncts(lefts[0]) if lefts else []
    if body is None:
        return None
    return body, rights[0]


def check_datalog(program: EprProblem):
    rules = []
    for a in program.axioms:
        r = horn_rule(a)
        if r is None:
            raise ShapeError(f"axiom {a} is not a Datalog rule (body atoms |- head atom)")
        rules.append(r)
    return rules


def datalog_solve(program: EprProblem, query, engine: str = "fixpoint"):
    """Decide ground queries by grounding the program and running the prover.

    ``query`` is one atom (returns a bool) or a sequence of atoms (returns a
    list).  A batch is grounded once over the constants of all queries and
    decided with one shared search.
    """
    from orthologic.prover import decide_many, is_provable

    check_datalog(program)
    single = isinstance(query, Formula)
    queries = [query] if single else list(query)
    for q in queries:
        if not isinstance(q, Formula) or q.kind != ATOM or term_variables(q):
            raise ShapeError("the query must be a ground atom")
    if single:
        p = program.with_goal(Sequent(((query, R),)))
        return is_provable(ground(p), engine=engine)
    extra = sorted({t for q in queries for t in q.args[1]})
    g = ground(program, extra)
    goals = [Sequent(((_propositional(q), R),)) for q in queries]
    return decide_many(g.axioms, goals, engine=engine)[0]
