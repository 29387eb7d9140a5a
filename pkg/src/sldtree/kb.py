"""Goals, clauses and programs.

A conjunction is not a goal variant: the engine works on goal sequences
(tuples), so "a, b, c" is just three goals in a row. Disjunction and
negation hold whole sequences for the same reason.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .terms import Term, atom_text, indicator, is_callable, term_text, variables_of, Variable

COMPARE_OPS = ("<", ">", "=<", ">=")


@dataclass(frozen=True)
class Call:
    term: Term  # must satisfy is_callable

    def __post_init__(self) -> None:
        if not is_callable(self.term):
            raise ValueError(f"goal is not callable: {self.term!r}")


@dataclass(frozen=True)
class Disjunction:
    left: tuple["Goal", ...]
    right: tuple["Goal", ...]


@dataclass(frozen=True)
class Negation:
    inner: tuple["Goal", ...]


@dataclass(frozen=True)
class Cut:
    # barrier is stamped by the engine when a rule body is spliced in;
    # parsed cuts start out unscoped.
    barrier: int | None = None


@dataclass(frozen=True)
class TrueGoal:
    pass


@dataclass(frozen=True)
class FailGoal:
    pass


@dataclass(frozen=True)
class Compare:
    op: str
    lhs: Term
    rhs: Term

    def __post_init__(self) -> None:
        if self.op not in COMPARE_OPS:
            raise ValueError(f"unsupported comparison operator: {self.op}")


Goal = Union[Call, Disjunction, Negation, Cut, TrueGoal, FailGoal, Compare]
GoalSeq = tuple[Goal, ...]


@dataclass(frozen=True)
class Clause:
    head: Term
    body: GoalSeq = ()

    def __post_init__(self) -> None:
        if not is_callable(self.head):
            raise ValueError(f"clause head is not callable: {self.head!r}")

    @property
    def is_fact(self) -> bool:
        return not self.body


class Program:
    """Clauses grouped by (name, arity), source order preserved."""

    def __init__(self, clauses: list[Clause] | tuple[Clause, ...] = ()):
        self._by_pred: dict[tuple[str, int], list[Clause]] = {}
        self._order: list[Clause] = []
        for c in clauses:
            self.add(c)

    def add(self, clause: Clause) -> None:
        self._by_pred.setdefault(indicator(clause.head), []).append(clause)
        self._order.append(clause)

    def clauses_for(self, key: tuple[str, int]) -> list[Clause]:
        return list(self._by_pred.get(key, ()))

    def defines(self, key: tuple[str, int]) -> bool:
        return key in self._by_pred

    @property
    def clauses(self) -> list[Clause]:
        return list(self._order)

    def __len__(self) -> int:
        return len(self._order)


def goal_text(g: Goal) -> str:
    """One goal, written the way the parser reads it."""
    if isinstance(g, Call):
        return term_text(g.term)
    if isinstance(g, TrueGoal):
        return "true"
    if isinstance(g, FailGoal):
        return "fail"
    if isinstance(g, Cut):
        return "!"
    if isinstance(g, Compare):
        return f"{term_text(g.lhs)} {g.op} {term_text(g.rhs)}"
    if isinstance(g, Disjunction):
        return f"({seq_text(g.left)};{seq_text(g.right)})"
    if isinstance(g, Negation):
        if len(g.inner) == 1 and isinstance(g.inner[0], Call):
            return f"\\+ {goal_text(g.inner[0])}"
        return f"\\+ ({seq_text(g.inner)})"
    raise TypeError(f"not a goal: {g!r}")


def seq_text(goals: GoalSeq) -> str:
    return ",".join(goal_text(g) for g in goals)


def goal_variables(goals: GoalSeq) -> list[Variable]:
    """Variables of a goal sequence, first occurrence first."""
    seen: dict[Variable, None] = {}

    def take(term: Term) -> None:
        for v in variables_of(term):
            seen.setdefault(v)

    def walk(g: Goal) -> None:
        if isinstance(g, Call):
            take(g.term)
        elif isinstance(g, Compare):
            take(g.lhs)
            take(g.rhs)
        elif isinstance(g, Disjunction):
            for sub in g.left + g.right:
                walk(sub)
        elif isinstance(g, Negation):
            for sub in g.inner:
                walk(sub)

    for g in goals:
        walk(g)
    return list(seen)


def clause_text(c: Clause) -> str:
    head = term_text(c.head)
    if c.is_fact:
        return f"{head}."
    return f"{head} :- {seq_text(c.body)}."


__all__ = [
    "COMPARE_OPS", "Call", "Disjunction", "Negation", "Cut", "TrueGoal",
    "FailGoal", "Compare", "Goal", "GoalSeq", "Clause", "Program",
    "goal_text", "seq_text", "goal_variables", "clause_text", "atom_text",
]
