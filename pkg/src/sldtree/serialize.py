"""Canonical text form of a search tree.

The format is a fixed-shape JSON document: stable key order, two-space
indent, no ASCII escaping, one trailing newline. Identical trees
serialize to identical bytes, which is what golden tests and graders
diff against. deserialize() gives back a render-level view (goals and
labels as text) and is the exact inverse on serialize's output.
"""
from __future__ import annotations

import json
import sys
from contextlib import contextmanager
from dataclasses import dataclass

from .engine import SearchNode, SearchTree
from .errors import PrologError
from .kb import goal_text
from .terms import term_text

FORMAT_NAME = "sld-search-tree/1"

_STATUSES = ("open", "success", "fail", "pruned", "truncated")


class FormatError(PrologError):
    def __init__(self, message: str, where: str):
        super().__init__(f"{where}: {message}")
        self.message = message
        self.where = where


@dataclass(frozen=True)
class ViewNode:
    goals: tuple[str, ...]
    status: str
    children: tuple["ViewEdge", ...] = ()


@dataclass(frozen=True)
class ViewEdge:
    label: tuple[tuple[str, str], ...]
    node: ViewNode


@dataclass(frozen=True)
class ViewTree:
    root: ViewNode
    truncated: bool = False


def _tree_height(tree: SearchTree | ViewTree) -> int:
    if isinstance(tree, ViewTree):
        def edges(n): return [e.node for e in n.children]
    else:
        def edges(n): return n.children
    height = 0
    stack = [(tree.root, 1)]
    while stack:
        node, depth = stack.pop()
        if depth > height:
            height = depth
        stack.extend((c, depth + 1) for c in edges(node))
    return height


@contextmanager
def _stack_room(levels: int):
    """Tree walks and the json module recurse a handful of frames per
    nesting level; a deep chain (a left-recursive program stopped only
    by the depth limit) outgrows the default interpreter stack."""
    need = 16 * levels + 1000
    old = sys.getrecursionlimit()
    if need > old:
        sys.setrecursionlimit(need)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


def _node_view(node: SearchNode) -> ViewNode:
    children = tuple(
        ViewEdge(tuple((v.name, term_text(t)) for v, t in c.label.bindings),
                 _node_view(c))
        for c in node.children)
    return ViewNode(tuple(goal_text(g) for g in node.goals),
                    node.status.value, children)


def to_view(tree: SearchTree | ViewTree) -> ViewTree:
    if isinstance(tree, ViewTree):
        return tree
    with _stack_room(_tree_height(tree)):
        return ViewTree(_node_view(tree.root), tree.truncated)


def _node_obj(node: ViewNode) -> dict:
    return {
        "goals": list(node.goals),
        "status": node.status,
        "children": [{"label": [[n, t] for n, t in e.label],
                      "node": _node_obj(e.node)}
                     for e in node.children],
    }


def serialize(tree: SearchTree | ViewTree) -> str:
    view = to_view(tree)
    with _stack_room(_tree_height(view)):
        doc = {
            "format": FORMAT_NAME,
            "truncated": view.truncated,
            "root": _node_obj(view.root),
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _expect(cond: bool, message: str, where: str) -> None:
    if not cond:
        raise FormatError(message, where)


def _parse_node(obj: object, where: str) -> ViewNode:
    _expect(isinstance(obj, dict), "node must be an object", where)
    assert isinstance(obj, dict)
    _expect(set(obj) == {"goals", "status", "children"},
            "node needs exactly goals/status/children", where)
    goals = obj["goals"]
    _expect(isinstance(goals, list) and all(isinstance(g, str) for g in goals),
            "goals must be a list of strings", where)
    status = obj["status"]
    _expect(status in _STATUSES, f"unknown status {status!r}", where)
    raw_children = obj["children"]
    _expect(isinstance(raw_children, list), "children must be a list", where)
    children = []
    for i, edge in enumerate(raw_children):
        ewhere = f"{where}.children[{i}]"
        _expect(isinstance(edge, dict) and set(edge) == {"label", "node"},
                "edge needs exactly label/node", ewhere)
        label = edge["label"]
        _expect(isinstance(label, list), "label must be a list", ewhere)
        pairs = []
        for p in label:
            _expect(isinstance(p, list) and len(p) == 2
                    and all(isinstance(x, str) for x in p),
                    "label entries are [name, term] string pairs", ewhere)
            pairs.append((p[0], p[1]))
        children.append(ViewEdge(tuple(pairs),
                                 _parse_node(edge["node"], f"{ewhere}.node")))
    return ViewNode(tuple(goals), status, tuple(children))


def deserialize(text: str) -> ViewTree:
    with _stack_room(text.count("{")):
        return _deserialize(text)


def _deserialize(text: str) -> ViewTree:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"not well-formed: {e.msg}",
                          f"line {e.lineno}, column {e.colno}") from e
    _expect(isinstance(doc, dict), "document must be an object", "document")
    _expect(set(doc) == {"format", "truncated", "root"},
            "document needs exactly format/truncated/root", "document")
    _expect(doc["format"] == FORMAT_NAME,
            f"unsupported format {doc['format']!r}", "format")
    _expect(isinstance(doc["truncated"], bool),
            "truncated must be a boolean", "truncated")
    return ViewTree(_parse_node(doc["root"], "root"), doc["truncated"])
