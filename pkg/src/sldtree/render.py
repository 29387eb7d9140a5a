"""ASCII layout for search trees.

Each node becomes a block of text lines with an anchor column (the
center of its top line). A parent block is built bottom-up: lay out the
children, place them side by side, then draw connector runs from the
parent's anchor down to each child's anchor using /, | and \\ glyphs at
integer-interpolated columns. Binding labels sit beside the runs; when
a label does not fit it walks down its run, flips sides, and as a last
resort the connector rows are made taller. Nothing is ever truncated.

When a row of children is wider than the width budget, the widest
children are dropped out of the row one by one and drawn below the
remaining ones, each on its own band with a long connector run. The
budget is a soft target: a single over-wide leaf still renders whole.
"""
from __future__ import annotations

from dataclasses import dataclass

from .engine import SearchTree
from .serialize import (ViewEdge, ViewNode, ViewTree, _stack_room,
                        _tree_height, to_view)

MIN_WIDTH = 40


@dataclass(frozen=True)
class RenderOptions:
    max_width: int = 120
    show_boxes: bool = True
    success_glyph: str = "[]"
    fail_glyph: str = "x"
    pruned_glyph: str = "X"
    truncated_glyph: str = "..."

    def __post_init__(self):
        if self.max_width < MIN_WIDTH:
            raise ValueError(f"max_width must be at least {MIN_WIDTH}")


@dataclass
class _Block:
    lines: list[str]
    anchor: int

    @property
    def width(self) -> int:
        return max((len(ln) for ln in self.lines), default=0)

    @property
    def height(self) -> int:
        return len(self.lines)


class _Canvas:
    """Grow-on-write character grid. Columns are offset so the layout
    code may go temporarily negative; lines() strips the slack."""

    def __init__(self, offset: int):
        self.off = offset
        self.rows: list[list[str]] = []

    def _row(self, r: int) -> list[str]:
        while len(self.rows) <= r:
            self.rows.append([])
        return self.rows[r]

    def write(self, r: int, c: int, text: str) -> None:
        row = self._row(r)
        c += self.off
        end = c + len(text)
        if len(row) < end:
            row.extend(" " * (end - len(row)))
        for k, ch in enumerate(text):
            row[c + k] = ch

    def free(self, r: int, c0: int, c1: int) -> bool:
        # half-open column range, offset-adjusted
        if r < 0:
            return False
        if r >= len(self.rows):
            return True
        row = self.rows[r]
        for c in range(c0 + self.off, c1 + self.off):
            if 0 <= c < len(row) and row[c] != " ":
                return False
        return True

    def lines(self) -> list[str]:
        return ["".join(r).rstrip() for r in self.rows]


def _node_text(node: ViewNode, opts: RenderOptions) -> str:
    if node.status == "fail":
        return opts.fail_glyph
    if node.status == "pruned":
        return opts.pruned_glyph
    if node.status == "truncated":
        return opts.truncated_glyph
    body = ",".join(node.goals)
    if node.status == "success":
        return opts.success_glyph
    return f"[{body}]" if opts.show_boxes else (body or "[]")


def _label_lines(edge: ViewEdge) -> list[str]:
    if edge.node.status == "pruned":
        return []
    return [f"{name}={text}" for name, text in edge.label]


def _leaf_block(text: str) -> _Block:
    return _Block([text], len(text) // 2)


def _run_col(parent: int, anchor: int, row: int, height: int) -> int:
    return parent + ((anchor - parent) * row) // height


def _run_glyph(parent: int, anchor: int) -> str:
    if anchor < parent:
        return "/"
    if anchor > parent:
        return "\\"
    return "|"


def _place_label(canvas: _Canvas, lines: list[str], parent: int, anchor: int,
                 height: int, prefer_left: bool,
                 prefer_bottom: bool = False) -> bool:
    if not lines:
        return True
    start_rows = list(range(max(1, (height + 1 - len(lines)) // 2),
                            height - len(lines) + 2))
    if not start_rows:
        start_rows = [1]
    if prefer_bottom:
        start_rows = sorted(set(start_rows) | {max(1, r) for r in
                            (height - len(lines), height - len(lines) + 1)},
                            reverse=True)
    sides = (True, False) if prefer_left else (False, True)
    for start in start_rows:
        if start + len(lines) - 1 > height:
            continue
        rows = range(start, start + len(lines))
        for left in sides:
            cols = [_run_col(parent, anchor, r, height) for r in rows]
            if left:
                # one shared left edge, lines never crossing their run
                base = min(c - 1 - len(t) for c, t in zip(cols, lines))
                spots = [(r, base, t) for r, t in zip(rows, lines)]
            else:
                base = max(cols) + 2
                spots = [(r, base, t) for r, t in zip(rows, lines)]
            if all(canvas.free(r, c - 1, c + len(t) + 1)
                   for r, c, t in spots):
                for r, c, t in spots:
                    canvas.write(r, c, t)
                return True
    return False


def _draw_run(canvas: _Canvas, parent: int, anchor: int,
              top: int, bottom: int, total: int,
              clearance: int = 0) -> None:
    glyph = _run_glyph(parent, anchor)
    step = -1 if anchor < parent else 1
    for r in range(top, bottom + 1):
        col = _run_col(parent, anchor, r, total)
        if glyph != "|":
            while not canvas.free(r, col - clearance, col + 1 + clearance):
                col += step
        canvas.write(r, col, glyph)


def _paste(canvas: _Canvas, block: _Block, top: int, left: int) -> None:
    for i, line in enumerate(block.lines):
        if line:
            canvas.write(top + i, left, line)


def _compose(text: str, edges: tuple[ViewEdge, ...],
             blocks: list[_Block], opts: RenderOptions) -> _Block:
    n = len(blocks)
    labels = [_label_lines(e) for e in edges]
    max_label = max((len(t) for ls in labels for t in ls), default=0)

    kept = list(range(n))
    dropped: list[int] = []
    while len(kept) > 1:
        gap = 3 * (len(kept) - 1)
        if sum(blocks[i].width for i in kept) + gap <= opts.max_width:
            break
        widest = max(kept, key=lambda i: (blocks[i].width, i))
        kept.remove(widest)
        dropped.append(widest)
    dropped.sort()

    base_h = max(2, max((len(labels[i]) for i in kept + dropped),
                        default=0) + 1)
    gutter = 3
    for attempt in range(6):
        h = base_h + attempt % 3
        if attempt >= 3:
            gutter = 3 + max_label
        result = _try_compose(text, blocks, labels, kept, dropped,
                              h, gutter, max_label, opts)
        if result is not None:
            return result
    return _try_compose(text, blocks, labels, kept, dropped,
                        base_h, 3 + max_label, max_label, opts,
                        force=True)  # type: ignore[return-value]


def _try_compose(text: str, blocks: list[_Block], labels: list[list[str]],
                 kept: list[int], dropped: list[int], h: int, gutter: int,
                 max_label: int, opts: RenderOptions,
                 force: bool = False) -> _Block | None:
    offs: dict[int, int] = {}
    x = 0
    for i in kept:
        offs[i] = x
        x += blocks[i].width + gutter
    anchors = {i: offs[i] + blocks[i].anchor for i in kept}
    first, last = kept[0], kept[-1]
    parent = (anchors[first] + anchors[last]) // 2

    canvas = _Canvas(len(text) + max_label + 8)
    canvas.write(0, parent - len(text) // 2, text)

    for i in kept:
        _draw_run(canvas, parent, anchors[i], 1, h, h)
    for i in kept:
        prefer_left = anchors[i] < parent
        if not _place_label(canvas, labels[i], parent, anchors[i], h,
                            prefer_left) and not force:
            return None
    bottom = h
    for i in kept:
        _paste(canvas, blocks[i], h + 1, offs[i])
        bottom = max(bottom, h + blocks[i].height)

    for i in dropped:
        top = bottom + 2
        left = 2
        anchor = left + blocks[i].anchor
        _draw_run(canvas, parent, anchor, 1, top - 1, top, clearance=1)
        if not _place_label(canvas, labels[i], parent, anchor, top - 1,
                            anchor < parent,
                            prefer_bottom=True) and not force:
            return None
        _paste(canvas, blocks[i], top, left)
        bottom = top + blocks[i].height - 1

    lines = canvas.lines()
    indent = min((len(ln) - len(ln.lstrip()) for ln in lines if ln),
                 default=0)
    return _Block([ln[indent:] for ln in lines],
                  parent + canvas.off - indent)


def _layout(node: ViewNode, opts: RenderOptions) -> _Block:
    text = _node_text(node, opts)
    if not node.children:
        return _leaf_block(text)
    blocks = [_layout(e.node, opts) for e in node.children]
    return _compose(text, node.children, blocks, opts)


def render_text(tree: SearchTree | ViewTree,
                options: RenderOptions | None = None) -> str:
    opts = options or RenderOptions()
    view = to_view(tree)
    with _stack_room(_tree_height(view)):
        block = _layout(view.root, opts)
    return "\n".join(block.lines) + "\n"
