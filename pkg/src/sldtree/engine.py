"""Exhaustive SLD search-tree construction.

The tree is built depth-first, always expanding the leftmost goal, with
one child per clause in source order. Failed unifications, branches cut
away by '!', and negation probes all stay in the tree; that is the
point of the exercise.

Cut works through barriers: expanding a call allocates a barrier id and
stamps it on the cuts of the spliced-in clause body. Reaching such a
cut prunes every unexplored sibling branch between the cut and the node
that introduced its barrier, inclusive.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .errors import InstantiationError, UnknownPredicateError
from .kb import (Call, Compare, Cut, Disjunction, FailGoal, GoalSeq,
                 Negation, Program, TrueGoal, goal_text, goal_variables)
from .terms import Integer, Term, Variable, indicator, term_text, variables_of
from .unify import (EMPTY, RenameCounter, Substitution, clause_variables,
                    rename_clause, unify)


class NodeStatus(Enum):
    OPEN = "open"
    SUCCESS = "success"
    FAIL = "fail"
    PRUNED = "pruned"
    TRUNCATED = "truncated"


@dataclass(frozen=True)
class EdgeLabel:
    """Bindings of the parent's selected-goal variables, shown on the edge."""
    bindings: tuple[tuple[Variable, Term], ...] = ()

    def lines(self) -> list[str]:
        return [f"{v.name}={term_text(t)}" for v, t in self.bindings]

    @property
    def is_empty(self) -> bool:
        return not self.bindings


EMPTY_LABEL = EdgeLabel()


@dataclass(eq=False)
class SearchNode:
    goals: GoalSeq
    status: NodeStatus = NodeStatus.OPEN
    label: EdgeLabel = EMPTY_LABEL
    children: list["SearchNode"] = field(default_factory=list)
    # mgu of the edge leading here; composed along a path it yields answers
    subst: Substitution = EMPTY
    # variable display names visible on the path so far, for renaming
    names: frozenset[str] | None = None
    # barriers attached before expansion (negation probes)
    pre_barriers: frozenset[int] = frozenset()
    # barriers this node's expansion introduced; cut targets
    frame_barriers: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.names is None:
            self.names = frozenset(
                v.name for v in goal_variables(self.goals) if not v.is_anonymous)

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class Limits:
    max_depth: int = 500
    max_nodes: int = 10000

    def __post_init__(self) -> None:
        if self.max_depth < 1 or self.max_nodes < 1:
            raise ValueError("limits must be at least 1")


@dataclass(frozen=True)
class EngineOptions:
    unknown: str = "fail"  # or "error"
    rename: str = "prime"  # or "numeric"

    def __post_init__(self) -> None:
        if self.unknown not in ("fail", "error"):
            raise ValueError(f"unknown-predicate policy: {self.unknown}")
        if self.rename not in ("prime", "numeric"):
            raise ValueError(f"rename style: {self.rename}")


@dataclass
class SearchTree:
    root: SearchNode
    truncated: bool
    query_vars: tuple[Variable, ...]


@dataclass(frozen=True)
class Answer:
    bindings: tuple[tuple[Variable, Term], ...]
    path: tuple[int, ...]

    @property
    def mapping(self) -> dict[Variable, Term]:
        return dict(self.bindings)

    def text(self) -> str:
        if not self.bindings:
            return "true"
        return ", ".join(f"{v.name} = {term_text(t)}" for v, t in self.bindings)


def _tag_cuts(goals: GoalSeq, barrier: int) -> GoalSeq:
    """Scope unowned cuts to barrier. Negations keep theirs until expanded."""
    out = []
    for g in goals:
        if isinstance(g, Cut) and g.barrier is None:
            out.append(Cut(barrier))
        elif isinstance(g, Disjunction):
            out.append(Disjunction(_tag_cuts(g.left, barrier),
                                   _tag_cuts(g.right, barrier)))
        else:
            out.append(g)
    return tuple(out)


def _names_of(goals: GoalSeq, label: EdgeLabel) -> frozenset[str]:
    names = {v.name for v in goal_variables(goals) if not v.is_anonymous}
    for v, t in label.bindings:
        names.add(v.name)
        names.update(w.name for w in variables_of(t) if not w.is_anonymous)
    return frozenset(names)


def _label_for(goal_term: Term, sigma: Substitution) -> EdgeLabel:
    pairs = tuple((v, sigma.apply(v)) for v in variables_of(goal_term)
                  if not v.is_anonymous and sigma.binds(v))
    return EdgeLabel(pairs)


def _fail_leaf() -> SearchNode:
    return SearchNode((), status=NodeStatus.FAIL, names=frozenset())


def _compare_holds(g: Compare) -> bool:
    for side in (g.lhs, g.rhs):
        if not isinstance(side, Integer):
            raise InstantiationError(
                f"comparison needs two integers: {goal_text(g)}")
    table = {"<": int.__lt__, ">": int.__gt__,
             "=<": int.__le__, ">=": int.__ge__}
    return table[g.op](g.lhs.value, g.rhs.value)


def apply_cut(path: list[tuple[SearchNode, int]], barrier: int) -> None:
    """Prune unexplored branches up to the node owning `barrier`.

    `path` holds (node, index-of-active-child) pairs from the root down
    to the parent of the cut. Walking upward, every sibling after the
    active child that is still open becomes Pruned; the walk stops at
    the barrier's node. Already-failed siblings keep their x.
    """
    for node, index in reversed(path):
        for child in node.children[index + 1:]:
            if child.status is NodeStatus.OPEN:
                child.status = NodeStatus.PRUNED
        if barrier in node.frame_barriers:
            break


@dataclass
class _Frame:
    node: SearchNode
    depth: int
    index: int = -1


class _Builder:
    def __init__(self, program: Program, limits: Limits, options: EngineOptions):
        self.program = program
        self.limits = limits
        self.options = options
        self.ctr = RenameCounter(1, options.rename)
        self.issued: set[str] = set()
        self._barrier = itertools.count(1)
        self.node_count = 1  # the root
        self.truncated = False

    def run(self, root: SearchNode) -> None:
        frames: list[_Frame] = []
        self._visit(root, 0, frames)
        while frames:
            f = frames[-1]
            f.index += 1
            if f.index >= len(f.node.children):
                frames.pop()
                continue
            child = f.node.children[f.index]
            if child.status is NodeStatus.OPEN:
                self._visit(child, f.depth + 1, frames)

    def _visit(self, node: SearchNode, depth: int, frames: list[_Frame]) -> None:
        if not node.goals:
            node.status = NodeStatus.SUCCESS
            return
        if depth > self.limits.max_depth or self.node_count >= self.limits.max_nodes:
            node.status = NodeStatus.TRUNCATED
            self.truncated = True
            return
        children = self.expand(node, frames)
        node.children = children
        self.node_count += len(children)
        frames.append(_Frame(node, depth))

    # -- expansion ------------------------------------------------------

    def expand(self, node: SearchNode,
               frames: list[_Frame] | None = None) -> list[SearchNode]:
        g, rest = node.goals[0], node.goals[1:]
        barriers = set(node.pre_barriers)
        children: list[SearchNode]

        if isinstance(g, Call):
            b = next(self._barrier)
            barriers.add(b)
            key = indicator(g.term)
            if not self.program.defines(key):
                if self.options.unknown == "error":
                    raise UnknownPredicateError(
                        f"unknown predicate {key[0]}/{key[1]} in goal "
                        f"{term_text(g.term)}")
                children = [_fail_leaf()]
            else:
                children = [self._clause_child(node, g, rest, c, b)
                            for c in self.program.clauses_for(key)]
        elif isinstance(g, TrueGoal):
            children = [self._plain_child(node, rest)]
        elif isinstance(g, FailGoal):
            children = [_fail_leaf()]
        elif isinstance(g, Cut):
            barrier = 0 if g.barrier is None else g.barrier
            apply_cut([(f.node, f.index) for f in (frames or [])], barrier)
            children = [self._plain_child(node, rest)]
        elif isinstance(g, Compare):
            children = ([self._plain_child(node, rest)]
                        if _compare_holds(g) else [_fail_leaf()])
        elif isinstance(g, Disjunction):
            children = [self._plain_child(node, g.left + rest),
                        self._plain_child(node, g.right + rest)]
        elif isinstance(g, Negation):
            b_neg = next(self._barrier)
            barriers.add(b_neg)
            b_inner = next(self._barrier)
            inner = _tag_cuts(g.inner, b_inner)
            probe = self._plain_child(node, inner + (Cut(b_neg), FailGoal()))
            probe.pre_barriers = frozenset((b_inner,))
            children = [probe, self._plain_child(node, rest)]
        else:
            raise TypeError(f"cannot expand goal {g!r}")

        node.frame_barriers = frozenset(barriers)
        return children

    def _plain_child(self, node: SearchNode, goals: GoalSeq) -> SearchNode:
        return SearchNode(goals, names=node.names | _names_of(goals, EMPTY_LABEL))

    def _clause_child(self, node: SearchNode, call: Call, rest: GoalSeq,
                      clause, barrier: int) -> SearchNode:
        # facts only need fresh ids; display renaming is for rule bodies,
        # whose variables survive into the child node
        if clause.is_fact:
            renamed, self.ctr = rename_clause(clause, self.ctr, frozenset())
        else:
            avoid = frozenset(node.names | self.issued)
            before = {v.name for v in clause_variables(clause)}
            renamed, self.ctr = rename_clause(clause, self.ctr, avoid)
            self.issued.update(
                v.name for v in clause_variables(renamed)
                if not v.is_anonymous and v.name not in before)
        sigma = unify(call.term, renamed.head)
        if sigma is None:
            return _fail_leaf()
        body = _tag_cuts(renamed.body, barrier)
        goals = sigma.apply_goals(body + rest)
        label = _label_for(call.term, sigma)
        return SearchNode(goals, label=label, subst=sigma,
                          names=node.names | _names_of(goals, label))


def build_tree(program: Program, query: GoalSeq,
               limits: Limits | None = None,
               options: EngineOptions | None = None) -> SearchTree:
    """Run `query` against `program`, materialising the whole search tree."""
    if not query:
        raise ValueError("query must contain at least one goal")
    limits = limits or Limits()
    options = options or EngineOptions()
    qvars = tuple(v for v in goal_variables(query) if not v.is_anonymous)
    root = SearchNode(_tag_cuts(query, 0), pre_barriers=frozenset((0,)))
    builder = _Builder(program, limits, options)
    builder.run(root)
    return SearchTree(root, builder.truncated, qvars)


def expand(node: SearchNode, program: Program,
           counter: RenameCounter = RenameCounter(),
           options: EngineOptions | None = None
           ) -> tuple[list[SearchNode], RenameCounter]:
    """One expansion step on its own, mainly for poking at the rules."""
    builder = _Builder(program, Limits(), options or EngineOptions())
    builder.ctr = counter
    children = builder.expand(node)
    node.children = children
    return children, builder.ctr


def solutions(tree: SearchTree) -> list[Answer]:
    """Success-leaf answers in depth-first (left-to-right) order."""
    out: list[Answer] = []
    stack: list[tuple[SearchNode, Substitution, tuple[int, ...]]] = [
        (tree.root, EMPTY, ())]
    while stack:
        node, sigma, path = stack.pop()
        if node.status is NodeStatus.SUCCESS:
            resolved = ((v, sigma.apply(v)) for v in tree.query_vars)
            # a query variable left unbound is not an answer binding
            out.append(Answer(
                tuple((v, t) for v, t in resolved if t != v), path))
        for i in range(len(node.children) - 1, -1, -1):
            child = node.children[i]
            s2 = sigma if child.subst.is_empty else sigma.compose(child.subst)
            stack.append((child, s2, path + (i,)))
    return out
