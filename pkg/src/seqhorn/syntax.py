"""Surface syntax: parsing and printing of programs and queries.

Grammar:

    rule   :  Head :- B1, ..., Bk.    |   Head.
    query  :  ?- A1, ..., Ak.
    term   :  variable | constant | functor(t1,...,tn) | [] | [a,b] | [H|T]

Variables start with an uppercase letter or ``_``; constants and functors
start with a lowercase letter or a digit.  Numerals are plain constants
(``0``, ``s(0)``), never machine integers, so mixed terms like ``s([])``
parse and print without any typing involved.  ``%`` starts a comment that
runs to the end of the line.

Printing canonical programs renames nothing: canonical variables ``v1``,
``v2``, ... are displayed as ``V1``, ``V2``, ... so that printed text
re-parses to an equal program.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .programs import Program, Rule, make_rule
from .terms import Atom, Compound, Const, Term, Var

NIL = Const("[]")
CONS = "."


class ParseError(Exception):
    def __init__(self, line: int, column: int, message: str, path: str = "<string>"):
        self.line = line
        self.column = column
        self.message = message
        self.path = path
        super().__init__(f"{path}:{line}:{column}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<arrow>:-)
  | (?P<qmark>\?-)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<ident>[a-z0-9][A-Za-z0-9_]*)
  | (?P<punct>[()\[\],|.])
    """,
    re.VERBOSE,
)


def _tokenize(text: str, path: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(line, pos - line_start + 1,
                             f"unexpected character {text[pos]!r}", path)
        kind = m.lastgroup or ""
        val = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, val, line, pos - line_start + 1))
        nl = val.count("\n")
        if nl:
            line += nl
            line_start = pos + val.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, path: str):
        self.path = path
        self.tokens = _tokenize(text, path)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(tok.line, tok.column, message, self.path)

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            got = tok.text or "end of input"
            raise self.error(f"expected {want!r}, found {got!r}")
        return self.next()

    # terms ---------------------------------------------------------------

    def term(self) -> Term:
        tok = self.peek()
        if tok.kind == "var":
            self.next()
            return Var(tok.text)
        if tok.kind == "ident":
            self.next()
            if self.peek().kind == "punct" and self.peek().text == "(":
                return Compound(tok.text, self.paren_args())
            return Const(tok.text)
        if tok.kind == "punct" and tok.text == "[":
            return self.list_term()
        raise self.error(f"expected a term, found {tok.text or 'end of input'!r}")

    def paren_args(self) -> tuple[Term, ...]:
        self.expect("punct", "(")
        args = [self.term()]
        while self.peek().kind == "punct" and self.peek().text == ",":
            self.next()
            args.append(self.term())
        self.expect("punct", ")")
        return tuple(args)

    def list_term(self) -> Term:
        self.expect("punct", "[")
        if self.peek().kind == "punct" and self.peek().text == "]":
            self.next()
            return NIL
        elems = [self.term()]
        tail: Term = NIL
        while self.peek().kind == "punct" and self.peek().text == ",":
            self.next()
            elems.append(self.term())
        if self.peek().kind == "punct" and self.peek().text == "|":
            self.next()
            tail = self.term()
        self.expect("punct", "]")
        for e in reversed(elems):
            tail = Compound(CONS, (e, tail))
        return tail

    # atoms and rules -------------------------------------------------------

    def atom(self) -> Atom:
        tok = self.expect("ident")
        if self.peek().kind == "punct" and self.peek().text == "(":
            return Atom(tok.text, self.paren_args())
        return Atom(tok.text)

    def atoms(self) -> list[Atom]:
        out = [self.atom()]
        while self.peek().kind == "punct" and self.peek().text == ",":
            self.next()
            out.append(self.atom())
        return out

    def rule(self) -> Rule:
        head = self.atom()
        body: list[Atom] = []
        if self.peek().kind == "arrow":
            self.next()
            body = self.atoms()
        self.expect("punct", ".")
        return make_rule(head, body)

    def program(self) -> Program:
        rules: list[Rule] = []
        while self.peek().kind != "eof":
            if self.peek().kind == "qmark":
                raise self.error("queries are not allowed in a program")
            rules.append(self.rule())
        return Program(rules)

    def query(self) -> list[Atom]:
        self.expect("qmark")
        goals = self.atoms()
        self.expect("punct", ".")
        self.expect("eof")
        return goals


def parse_program(text: str, path: str = "<string>") -> Program:
    """Parse program text; duplicate rules collapse under set semantics."""
    return _Parser(text, path).program()


def parse_query(text: str, path: str = "<string>"):
    """Parse a single query of the form ``?- A1, ..., Ak.``"""
    from .sld import Query

    return Query(tuple(_Parser(text, path).query()))


# ---------------------------------------------------------------------------
# Printing


def _display_var(name: str) -> str:
    if name[0].isupper() or name[0] == "_":
        return name
    return name[0].upper() + name[1:]


def term_to_text(t: Term) -> str:
    if isinstance(t, Var):
        return _display_var(t.name)
    if isinstance(t, Const):
        return t.name
    if t.functor == CONS and len(t.args) == 2:
        elems: list[str] = []
        cur: Term = t
        while isinstance(cur, Compound) and cur.functor == CONS and len(cur.args) == 2:
            elems.append(term_to_text(cur.args[0]))
            cur = cur.args[1]
        if cur == NIL:
            return "[" + ",".join(elems) + "]"
        return "[" + ",".join(elems) + "|" + term_to_text(cur) + "]"
    return t.functor + "(" + ",".join(term_to_text(a) for a in t.args) + ")"


def atom_to_text(a: Atom) -> str:
    if not a.args:
        return a.pred
    return a.pred + "(" + ",".join(term_to_text(t) for t in a.args) + ")"


def rule_to_text(r: Rule) -> str:
    if r.is_fact:
        return atom_to_text(r.head) + "."
    return atom_to_text(r.head) + " :- " + ", ".join(atom_to_text(a) for a in r.body) + "."


def program_to_text(p: Program) -> str:
    """Deterministic canonical rendering, one rule per line."""
    return "".join(rule_to_text(r) + "\n" for r in p.sorted_rules())


def goals_to_text(goals) -> str:
    return ", ".join(atom_to_text(a) for a in goals)


def query_to_text(q) -> str:
    return "?- " + goals_to_text(q.goals) + "."
