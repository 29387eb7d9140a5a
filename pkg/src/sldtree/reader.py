"""Tokenizer and parser for the supported Prolog subset.

The operator inventory is fixed: ':-', ',', ';', '\\+', '!', the four
integer comparisons, and 'true'/'fail'/'false'. Precedence, loosest
first: ';' then ',' then '\\+' then comparisons. 'not(G)' is read as
negation. '%' starts a line comment, clauses end with '.'.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import PrologError
from .kb import (Call, Clause, Compare, Cut, Disjunction, FailGoal, Goal,
                 GoalSeq, Negation, Program, TrueGoal)
from .terms import (Atom, Compound, Integer, Term, Variable, is_callable,
                    list_term)


@dataclass(frozen=True)
class SourcePosition:
    line: int  # 1-based
    column: int  # 1-based

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class ParseError(PrologError):
    def __init__(self, message: str, position: SourcePosition):
        super().__init__(f"{position}: {message}")
        self.message = message
        self.position = position


# token kinds
_ATOM, _VAR, _INT, _PUNCT, _EOF = "atom", "var", "int", "punct", "eof"

_PUNCTUATION = (":-", "=<", ">=", "\\+", "(", ")", "[", "]",
                ",", "|", ";", "!", ".", "<", ">")


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    pos: SourcePosition


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def here() -> SourcePosition:
        return SourcePosition(line, col)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start = here()
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token(_INT, text[i:j], start))
            col += j - i
            i = j
            continue
        if ch.islower():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token(_ATOM, text[i:j], start))
            col += j - i
            i = j
            continue
        if ch.isupper() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token(_VAR, text[i:j], start))
            col += j - i
            i = j
            continue
        if ch == "'":
            j = i + 1
            buf: list[str] = []
            while True:
                if j >= n or text[j] == "\n":
                    raise ParseError("unterminated quoted atom", start)
                if text[j] == "'":
                    if j + 1 < n and text[j + 1] == "'":  # '' is a literal quote
                        buf.append("'")
                        j += 2
                        continue
                    j += 1
                    break
                buf.append(text[j])
                j += 1
            tokens.append(_Token(_ATOM, "".join(buf), start))
            col += j - i
            i = j
            continue
        for p in _PUNCTUATION:
            if text.startswith(p, i):
                tokens.append(_Token(_PUNCT, p, start))
                col += len(p)
                i += len(p)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", start)
    tokens.append(_Token(_EOF, "", here()))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.scope: dict[str, Variable] = {}

    # -- token plumbing ----------------------------------------------

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        t = self.tok
        self.i += 1
        return t

    def at_punct(self, value: str) -> bool:
        return self.tok.kind == _PUNCT and self.tok.value == value

    def expect(self, value: str) -> _Token:
        if not self.at_punct(value):
            raise ParseError(f"expected {value!r}", self.tok.pos)
        return self.advance()

    def fail(self, message: str) -> ParseError:
        return ParseError(message, self.tok.pos)

    # -- terms --------------------------------------------------------

    def variable(self, name: str) -> Variable:
        if name == "_":
            return Variable("_")  # each occurrence is fresh
        if name not in self.scope:
            self.scope[name] = Variable(name)
        return self.scope[name]

    def term(self) -> Term:
        t = self.tok
        if t.kind == _VAR:
            self.advance()
            return self.variable(t.value)
        if t.kind == _INT:
            self.advance()
            return Integer(int(t.value))
        if t.kind == _ATOM:
            self.advance()
            if self.at_punct("("):
                self.advance()
                args = [self.term()]
                while self.at_punct(","):
                    self.advance()
                    args.append(self.term())
                self.expect(")")
                return Compound(t.value, tuple(args))
            return Atom(t.value)
        if self.at_punct("["):
            return self.list_tail()
        raise self.fail("expected a term")

    def list_tail(self) -> Term:
        self.expect("[")
        if self.at_punct("]"):
            self.advance()
            return Atom("[]")
        items = [self.term()]
        while self.at_punct(","):
            self.advance()
            items.append(self.term())
        tail: Term = Atom("[]")
        if self.at_punct("|"):
            self.advance()
            tail = self.term()
        self.expect("]")
        return list_term(items, tail)

    # -- goals --------------------------------------------------------

    def goal_seq(self) -> GoalSeq:
        """Disjunction level: ';' binds loosest and associates right."""
        left = self.conjunction()
        if self.at_punct(";"):
            self.advance()
            right = self.goal_seq()
            return (Disjunction(left, right),)
        return left

    def conjunction(self) -> GoalSeq:
        goals = list(self.negation())
        while self.at_punct(","):
            self.advance()
            goals.extend(self.negation())
        return tuple(goals)

    def negation(self) -> GoalSeq:
        if self.at_punct("\\+"):
            self.advance()
            return (Negation(self.negation()),)
        return (self.primary_goal(),)

    def primary_goal(self) -> Goal:
        if self.at_punct("!"):
            self.advance()
            return Cut()
        if self.at_punct("("):
            self.advance()
            inner = self.goal_seq()
            self.expect(")")
            if len(inner) == 1:
                return inner[0]
            # a parenthesised conjunction stays one unit under '\+';
            # elsewhere it flattens, so wrap only when needed
            return _Group(inner)
        pos = self.tok.pos
        if (self.tok.kind == _ATOM and self.tok.value == "not"
                and self.tokens[self.i + 1].kind == _PUNCT
                and self.tokens[self.i + 1].value == "("):
            self.advance()
            self.advance()
            inner = self.goal_seq()
            self.expect(")")
            return Negation(inner)
        term = self.term()
        if self.tok.kind == _PUNCT and self.tok.value in ("<", ">", "=<", ">="):
            op = self.advance().value
            rhs = self.term()
            return Compare(op, term, rhs)
        if isinstance(term, Atom):
            if term.name == "true":
                return TrueGoal()
            if term.name in ("fail", "false"):
                return FailGoal()
        if not is_callable(term):
            raise ParseError("goal must be an atom or compound term", pos)
        return Call(term)

    # -- clauses and entry points --------------------------------------

    def clause(self) -> Clause:
        self.scope = {}
        pos = self.tok.pos
        head = self.term()
        if not is_callable(head):
            raise ParseError("clause head must be an atom or compound term", pos)
        if self.at_punct(":-"):
            self.advance()
            body = _flatten(self.goal_seq())
            self.expect(".")
            return Clause(head, body)
        self.expect(".")
        return Clause(head)

    def program(self) -> Program:
        prog = Program()
        while self.tok.kind != _EOF:
            prog.add(self.clause())
        return prog

    def query(self) -> GoalSeq:
        self.scope = {}
        goals = _flatten(self.goal_seq())
        if self.at_punct("."):
            self.advance()
        if self.tok.kind != _EOF:
            raise self.fail("unexpected input after query")
        return goals


@dataclass(frozen=True)
class _Group:
    """Parenthesised conjunction; dissolved by _flatten."""
    goals: GoalSeq


def _flatten(goals: tuple) -> GoalSeq:
    out: list[Goal] = []
    for g in goals:
        if isinstance(g, _Group):
            out.extend(_flatten(g.goals))
        elif isinstance(g, Disjunction):
            out.append(Disjunction(_flatten(g.left), _flatten(g.right)))
        elif isinstance(g, Negation):
            out.append(Negation(_flatten(g.inner)))
        else:
            out.append(g)
    return tuple(out)


def parse_program(text: str) -> Program:
    return _Parser(text).program()


def parse_query(text: str) -> GoalSeq:
    goals = _Parser(text).query()
    if not goals:
        raise ParseError("empty query", SourcePosition(1, 1))
    return goals


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok.kind != _EOF:
        raise p.fail("unexpected input after term")
    return t
