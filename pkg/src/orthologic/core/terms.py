"""Hash-consed formulas over the ortholattice signature.

Every structurally distinct formula is interned exactly once and receives a
dense integer id.  Children are always interned before their parent, so a
child's id is strictly smaller than its parent's.  Because of interning,
structural equality is object identity and ``==`` is never recursive.
"""

from __future__ import annotations

import threading
from typing import Iterable, Iterator, Mapping, Sequence

from orthologic.errors import InputError

VAR = "var"
ATOM = "atom"
NOT = "not"
AND = "and"
OR = "or"
ZERO = "zero"
ONE = "one"

KINDS = (VAR, ATOM, NOT, AND, OR, ZERO, ONE)

RESERVED_PREFIX = "_"


class SignatureError(InputError):
    """An atom does not respect the arity declared for its predicate."""


class Formula:
    """An interned formula node.  Build instances with the constructors below."""

    __slots__ = ("kind", "args", "id", "__weakref__")

    def __init__(self, kind: str, args: tuple, id: int):
        self.kind = kind
        self.args = args
        self.id = id

    # identity semantics are exactly structural equality thanks to interning
    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return self.id

    def __lt__(self, other: "Formula"):
        return self.id < other.id

    def __reduce__(self):
        return (_rebuild, (self.kind, self.args))

    @property
    def name(self) -> str:
        if self.kind not in (VAR, ATOM):
            raise AttributeError(f"{self.kind} node has no name")
        return self.args[0]

    @property
    def children(self) -> tuple["Formula", ...]:
        if self.kind in (NOT, AND, OR):
            return self.args
        return ()

    @property
    def is_literal(self) -> bool:
        return self.kind in (VAR, ATOM) or (
            self.kind == NOT and self.args[0].kind in (VAR, ATOM))

    def __repr__(self):
        from orthologic.io import format_formula

        return f"<{format_formula(self)}>"

    def __str__(self):
        from orthologic.io import format_formula

        return format_formula(self)


def _rebuild(kind, args):
    return _intern(kind, args)


_lock = threading.Lock()
_table: dict[tuple, Formula] = {}
_nodes: list[Formula] = []


def _key(kind: str, args: tuple) -> tuple:
    if kind in (NOT, AND, OR):
        return (kind,) + tuple(a.id for a in args)
    return (kind,) + args


def _intern(kind: str, args: tuple) -> Formula:
    key = _key(kind, args)
    node = _table.get(key)
    if node is not None:
        return node
    with _lock:
        node = _table.get(key)
        if node is None:
            node = Formula(kind, args, len(_nodes))
            _nodes.append(node)
            _table[key] = node
    return node


def node_count() -> int:
    """Number of formulas interned so far."""
    return len(_nodes)


def by_id(fid: int) -> Formula:
    return _nodes[fid]


def Var(name: str) -> Formula:
    if not isinstance(name, str) or not name:
        raise ValueError(f"variable name must be a non-empty string, got {name!r}")
    return _intern(VAR, (name,))


def Atom(predicate: str, args: Sequence[str] = (),
         signature: Mapping[str, int] | None = None) -> Formula:
    args = tuple(args)
    if signature is not None and predicate in signature and signature[predicate] != len(args):
        raise SignatureError(
            f"{predicate} has arity {signature[predicate]}, got {len(args)} arguments")
    for a in args:
        if not isinstance(a, str) or not a:
            raise ValueError(f"atom arguments must be identifiers, got {a!r}")
    return _intern(ATOM, (predicate, args))


def Not(f: Formula) -> Formula:
    return _intern(NOT, (f,))


def And(left: Formula, right: Formula) -> Formula:
    return _intern(AND, (left, right))


def Or(left: Formula, right: Formula) -> Formula:
    return _intern(OR, (left, right))


Zero = _intern(ZERO, ())
One = _intern(ONE, ())


def conj(fs: Iterable[Formula]) -> Formula:
    """Right-folded conjunction ``f1 & (f2 & (...))``; the empty conjunction is 1."""
    fs = list(fs)
    if not fs:
        return One
    acc = fs[-1]
    for f in reversed(fs[:-1]):
        acc = And(f, acc)
    return acc


def disj(fs: Iterable[Formula]) -> Formula:
    """Right-folded disjunction; the empty disjunction is 0."""
    fs = list(fs)
    if not fs:
        return Zero
    acc = fs[-1]
    for f in reversed(fs[:-1]):
        acc = Or(f, acc)
    return acc


def intern(description) -> Formula:
    """Intern a nested tuple description such as ``("and", "x", ("not", "y"))``.

    Strings are variables, ``0``/``1`` are the bounds, already interned
    formulas pass through, and ``("atom", "p", ("a", "X"))`` builds an atom.
    """
    if isinstance(description, Formula):
        return description
    if isinstance(description, str):
        return Var(description)
    if description == 0 and not isinstance(description, tuple):
        return Zero
    if description == 1 and not isinstance(description, tuple):
        return One
    kind, *rest = description
    if kind == VAR:
        return Var(rest[0])
    if kind == ATOM:
        return Atom(rest[0], rest[1] if len(rest) > 1 else ())
    if kind == NOT:
        return Not(intern(rest[0]))
    if kind == AND:
        return And(intern(rest[0]), intern(rest[1]))
    if kind == OR:
        return Or(intern(rest[0]), intern(rest[1]))
    if kind == ZERO:
        return Zero
    if kind == ONE:
        return One
    raise ValueError(f"unknown formula kind {kind!r}")


def iter_subformulas(f: Formula) -> Iterator[Formula]:
    """Yield every distinct subformula of ``f`` once, children before parents."""
    seen: set[int] = set()
    stack = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if node.id in seen:
            continue
        if expanded or not node.children:
            seen.add(node.id)
            yield node
            continue
        stack.append((node, True))
        for c in reversed(node.children):
            if c.id not in seen:
                stack.append((c, False))


def subformulas(f: Formula) -> set[Formula]:
    return set(iter_subformulas(f))


def variables(f: Formula) -> set[str]:
    return {g.args[0] for g in iter_subformulas(f) if g.kind == VAR}


def atoms(f: Formula) -> set[Formula]:
    return {g for g in iter_subformulas(f) if g.kind == ATOM}


def has_bounds(f: Formula) -> bool:
    return any(g.kind in (ZERO, ONE) for g in iter_subformulas(f))


def has_atoms(f: Formula) -> bool:
    return any(g.kind == ATOM for g in iter_subformulas(f))


def height(f: Formula) -> int:
    """Literals (variables, atoms, negated ones, bounds) have height 1."""
    memo: dict[int, int] = {}
    for g in iter_subformulas(f):
        if g.is_literal or not g.children:
            memo[g.id] = 1
        else:
            memo[g.id] = 1 + max(memo[c.id] for c in g.children)
    return memo[f.id]


def substitute(f: Formula, mapping: Mapping[Formula, Formula]) -> Formula:
    """Replace whole subformulas according to ``mapping`` (outermost match wins)."""
    memo: dict[int, Formula] = {}
    for g in iter_subformulas(f):
        hit = mapping.get(g)
        if hit is not None:
            memo[g.id] = hit
        elif g.kind == NOT:
            memo[g.id] = Not(memo[g.args[0].id])
        elif g.kind == AND:
            memo[g.id] = And(memo[g.args[0].id], memo[g.args[1].id])
        elif g.kind == OR:
            memo[g.id] = Or(memo[g.args[0].id], memo[g.args[1].id])
        else:
            memo[g.id] = g
    return memo[f.id]


def map_leaves(f: Formula, fn) -> Formula:
    """Rebuild ``f`` with every VAR/ATOM leaf replaced by ``fn(leaf)``."""
    memo: dict[int, Formula] = {}
    for g in iter_subformulas(f):
        if g.kind in (VAR, ATOM):
            memo[g.id] = fn(g)
        elif g.kind == NOT:
            memo[g.id] = Not(memo[g.args[0].id])
        elif g.kind == AND:
            memo[g.id] = And(memo[g.args[0].id], memo[g.args[1].id])
        elif g.kind == OR:
            memo[g.id] = Or(memo[g.args[0].id], memo[g.args[1].id])
        else:
            memo[g.id] = g
    return memo[f.id]
