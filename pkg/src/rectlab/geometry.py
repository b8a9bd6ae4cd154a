"""Integer-coordinate rectangulation drawings and their equivalence classes.

A drawing tiles the rectangle [0,W]x[0,H] with axis-parallel rectangles so
that no four of them meet in a point.  Two drawings are equivalent when one
can be turned into the other by sliding maximal segments without any segment
endpoint crossing another segment; the canonical code computed here is a
complete invariant of that relation (it serialises the rectangle/segment
incidence structure, which is exactly what segment slides preserve).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

# Boundary pseudo-segment ids.  The four sides of R take part in side lists
# and junction bookkeeping like ordinary segments; fixed negative labels keep
# them canonical without entering the BFS relabelling.
B_EAST, B_SOUTH, B_WEST, B_NORTH = -1, -2, -3, -4
BOUNDARY_IDS = (B_EAST, B_SOUTH, B_WEST, B_NORTH)


@dataclass(frozen=True)
class Drawing:
    """A concrete tiling of [0,width]x[0,height] by integer rectangles.

    Rectangles are (x_lo, y_lo, x_hi, y_hi) tuples; the rectangle id is its
    index in the tuple.
    """

    width: int
    height: int
    rects: tuple

    @property
    def size(self):
        return len(self.rects)

    def to_json(self):
        return json.dumps(
            {"width": self.width, "height": self.height,
             "rects": [list(r) for r in self.rects]}
        )

    @staticmethod
    def from_json(text):
        obj = json.loads(text)
        return Drawing(obj["width"], obj["height"],
                       tuple(tuple(r) for r in obj["rects"]))


def drawing(width, height, rects):
    return Drawing(width, height, tuple(tuple(r) for r in rects))


UNIT_SQUARE = Drawing(1, 1, ((0, 0, 1, 1),))


# ---------------------------------------------------------------------------
# validation

def validate_drawing(d):
    """Check the Drawing invariants; returns a list of violation strings.

    An empty list means the drawing is a valid rectangulation: rectangles are
    nondegenerate, tile [0,W]x[0,H] exactly, and no grid point is a corner of
    four distinct rectangles.
    """
    violations = []
    W, H = d.width, d.height
    if W < 1 or H < 1:
        return ["empty bounding rectangle"]
    if not d.rects:
        return ["no rectangles"]
    for i, (x1, y1, x2, y2) in enumerate(d.rects):
        if not (0 <= x1 < x2 <= W and 0 <= y1 < y2 <= H):
            violations.append(f"rect {i} degenerate or out of bounds: {(x1, y1, x2, y2)}")
    if violations:
        return violations

    owner = [[-1] * H for _ in range(W)]
    for i, (x1, y1, x2, y2) in enumerate(d.rects):
        for x in range(x1, x2):
            for y in range(y1, y2):
                if owner[x][y] != -1:
                    violations.append(
                        f"rects {owner[x][y]} and {i} overlap at cell ({x},{y})")
                else:
                    owner[x][y] = i
    for x in range(W):
        for y in range(H):
            if owner[x][y] == -1:
                violations.append(f"cell ({x},{y}) uncovered")
    if violations:
        return violations

    corners = {}
    for i, (x1, y1, x2, y2) in enumerate(d.rects):
        for p in ((x1, y1), (x2, y1), (x1, y2), (x2, y2)):
            corners.setdefault(p, []).append(i)
    for (x, y), ids in corners.items():
        if 0 < x < W and 0 < y < H and len(ids) == 4:
            violations.append(f"four rectangles meet at ({x},{y}): {sorted(ids)}")
    return violations


def is_valid(d):
    return not validate_drawing(d)


# ---------------------------------------------------------------------------
# segment structure

@dataclass(frozen=True)
class Segment:
    """A maximal segment: fixed coordinate `pos`, span [lo, hi]."""

    orientation: str  # "v" or "h"
    pos: int
    lo: int
    hi: int


class SegmentStructure:
    """Maximal segments of a drawing, with ordered side lists and junctions.

    For a vertical segment side lists run bottom-to-top, for a horizontal one
    left-to-right.  A side list alternates rectangle incidences ('R', rect_id)
    with attached perpendicular segment endpoints ('E', seg_id).  `sides[s]`
    holds (negative_side, positive_side) where the negative side of a vertical
    segment is its left side and of a horizontal segment its bottom side.
    Boundary pseudo-segments carry side lists for their inner side only.
    """

    def __init__(self, d):
        self.drawing = d
        W, H = d.width, d.height
        owner = [[-1] * H for _ in range(W)]
        for i, (x1, y1, x2, y2) in enumerate(d.rects):
            for x in range(x1, x2):
                for y in range(y1, y2):
                    owner[x][y] = i
        self.owner = owner

        segs = []
        vcover = {}  # (x, y_unit) -> seg id, for walls only
        hcover = {}
        for x in range(1, W):
            y = 0
            while y < H:
                if owner[x - 1][y] != owner[x][y]:
                    y0 = y
                    while y < H and owner[x - 1][y] != owner[x][y]:
                        y += 1
                    sid = len(segs)
                    segs.append(Segment("v", x, y0, y))
                    for yy in range(y0, y):
                        vcover[(x, yy)] = sid
                else:
                    y += 1
        for y in range(1, H):
            x = 0
            while x < W:
                if owner[x][y - 1] != owner[x][y]:
                    x0 = x
                    while x < W and owner[x][y - 1] != owner[x][y]:
                        x += 1
                    sid = len(segs)
                    segs.append(Segment("h", y, x0, x))
                    for xx in range(x0, x):
                        hcover[(y, xx)] = sid
                else:
                    x += 1
        self.segments = segs
        self._vcover = vcover
        self._hcover = hcover

        # endpoint junctions: seg id -> (low_end_host, high_end_host) where a
        # host is a boundary id or the id of the perpendicular segment whose
        # interior contains the endpoint.
        self.junctions = {}
        for sid, s in enumerate(segs):
            self.junctions[sid] = (self._host(s, s.lo), self._host(s, s.hi))

        self.sides = {}
        for sid, s in enumerate(segs):
            self.sides[sid] = (self._side_list(s, -1), self._side_list(s, +1))
        for bid in BOUNDARY_IDS:
            self.sides[bid] = (self._boundary_side_list(bid),)

        # merged attachment order along each segment: the relative order of
        # T-junction feet on the two sides is preserved by segment slides
        # (their endpoints lie on this segment and can never pass each other),
        # and distinguishes classes that per-side lists alone do not.
        self.merged = {}
        for sid, s in enumerate(segs):
            events = []
            perp = self._hcover if s.orientation == "v" else self._vcover
            for u in range(s.lo + 1, s.hi):
                neg = perp.get((u, s.pos - 1))
                pos = perp.get((u, s.pos))
                if neg is not None:
                    events.append(("-", neg))
                if pos is not None:
                    events.append(("+", pos))
            self.merged[sid] = tuple(events)

    def _host(self, s, endpoint):
        """Boundary id or perpendicular segment whose interior holds endpoint."""
        d = self.drawing
        if s.orientation == "v":
            if endpoint == 0:
                return B_SOUTH
            if endpoint == d.height:
                return B_NORTH
            a = self._hcover.get((endpoint, s.pos - 1))
            b = self._hcover.get((endpoint, s.pos))
            if a is None or a != b:
                raise ValueError(f"segment {s} endpoint y={endpoint} not on a perpendicular segment")
            return a
        else:
            if endpoint == 0:
                return B_WEST
            if endpoint == d.width:
                return B_EAST
            a = self._vcover.get((endpoint, s.pos - 1))
            b = self._vcover.get((endpoint, s.pos))
            if a is None or a != b:
                raise ValueError(f"segment {s} endpoint x={endpoint} not on a perpendicular segment")
            return a

    def _side_list(self, s, side):
        owner = self.owner
        if s.orientation == "v":
            col = s.pos - 1 if side < 0 else s.pos
            cover = self._hcover
            items, prev = [], None
            for y in range(s.lo, s.hi):
                if y > s.lo:
                    # a perpendicular wall ending here attaches from this side
                    sid = cover.get((y, col))
                    if sid is not None:
                        end = "hi" if side < 0 else "lo"
                        items.append(("E", sid, end))
                r = owner[col][y]
                if r != prev:
                    items.append(("R", r))
                    prev = r
            return tuple(items)
        else:
            row = s.pos - 1 if side < 0 else s.pos
            cover = self._vcover
            items, prev = [], None
            for x in range(s.lo, s.hi):
                if x > s.lo:
                    sid = cover.get((x, row))
                    if sid is not None:
                        end = "hi" if side < 0 else "lo"
                        items.append(("E", sid, end))
                r = owner[x][row]
                if r != prev:
                    items.append(("R", r))
                    prev = r
            return tuple(items)

    def _boundary_side_list(self, bid):
        d, owner = self.drawing, self.owner
        W, H = d.width, d.height
        items, prev = [], None
        if bid == B_SOUTH:  # along y=0, left to right
            for x in range(W):
                if x > 0 and (x, 0) in self._vcover:
                    items.append(("E", self._vcover[(x, 0)], "lo"))
                if owner[x][0] != prev:
                    prev = owner[x][0]
                    items.append(("R", prev))
        elif bid == B_NORTH:
            for x in range(W):
                if x > 0 and (x, H - 1) in self._vcover:
                    items.append(("E", self._vcover[(x, H - 1)], "hi"))
                if owner[x][H - 1] != prev:
                    prev = owner[x][H - 1]
                    items.append(("R", prev))
        elif bid == B_WEST:  # along x=0, bottom to top
            for y in range(H):
                if y > 0 and (y, 0) in self._hcover:
                    items.append(("E", self._hcover[(y, 0)], "lo"))
                if owner[0][y] != prev:
                    prev = owner[0][y]
                    items.append(("R", prev))
        else:  # B_EAST
            for y in range(H):
                if y > 0 and (y, W - 1) in self._hcover:
                    items.append(("E", self._hcover[(y, W - 1)], "hi"))
                if owner[W - 1][y] != prev:
                    prev = owner[W - 1][y]
                    items.append(("R", prev))
        return tuple(items)

    # convenience views used by the pattern module -------------------------

    def vertical_segments(self):
        return [i for i, s in enumerate(self.segments) if s.orientation == "v"]

    def horizontal_segments(self):
        return [i for i, s in enumerate(self.segments) if s.orientation == "h"]

    def attachments(self, sid, side):
        """Perpendicular segments attached to side (-1 or +1) of segment sid,
        as (position_along_host, attached_seg_id) pairs."""
        s = self.segments[sid]
        out = []
        for item in self.sides[sid][0 if side < 0 else 1]:
            if item[0] == "E":
                other = self.segments[item[1]]
                pos = other.pos
                out.append((pos, item[1]))
        return out

    def wall_at_v(self, x, y_unit):
        return (x, y_unit) in self._vcover

    def wall_at_h(self, y, x_unit):
        return (y, x_unit) in self._hcover

    def vseg_id_at(self, x, y_unit):
        return self._vcover.get((x, y_unit))

    def hseg_id_at(self, y, x_unit):
        return self._hcover.get((y, x_unit))


def extract_segments(d):
    """Build the SegmentStructure of a valid drawing."""
    bad = validate_drawing(d)
    if bad:
        raise ValueError("invalid drawing: " + "; ".join(bad))
    return SegmentStructure(d)


# ---------------------------------------------------------------------------
# canonical code

def _rect_sides(d, struct):
    """For each rect: its (top, right, bottom, left) containing segment ids,
    boundary pseudo-ids included."""
    out = []
    for (x1, y1, x2, y2) in d.rects:
        top = B_NORTH if y2 == d.height else struct.hseg_id_at(y2, x1)
        right = B_EAST if x2 == d.width else struct.vseg_id_at(x2, y1)
        bottom = B_SOUTH if y1 == 0 else struct.hseg_id_at(y1, x1)
        left = B_WEST if x1 == 0 else struct.vseg_id_at(x1, y1)
        out.append((top, right, bottom, left))
    return out


def _neighbors_clockwise(d, struct, r):
    """Rect ids adjacent to r, ordered clockwise starting at its top-left
    corner: across the top (left to right), right (top to bottom), bottom
    (right to left), left (bottom to top)."""
    x1, y1, x2, y2 = d.rects[r]
    owner = struct.owner
    W, H = d.width, d.height
    out = []
    if y2 < H:
        prev = None
        for x in range(x1, x2):
            o = owner[x][y2]
            if o != prev:
                out.append(o)
                prev = o
    if x2 < W:
        prev = None
        for y in range(y2 - 1, y1 - 1, -1):
            o = owner[x2][y]
            if o != prev:
                out.append(o)
                prev = o
    if y1 > 0:
        prev = None
        for x in range(x2 - 1, x1 - 1, -1):
            o = owner[x][y1 - 1]
            if o != prev:
                out.append(o)
                prev = o
    if x1 > 0:
        prev = None
        for y in range(y1, y2):
            o = owner[x1 - 1][y]
            if o != prev:
                out.append(o)
                prev = o
    return out


def canonicalize(d, struct=None):
    """Canonical code of a drawing's equivalence class, as a string.

    Rectangles and segments are relabelled by a BFS that starts at the
    rectangle containing the NW corner and explores neighbours in clockwise
    order; the relabelled incidence structure (rect side segments plus full
    segment side lists) is then serialised.  Coordinates never enter the code,
    only incidence order does, so the code is invariant under segment slides.
    """
    if struct is None:
        struct = extract_segments(d)
    owner = struct.owner
    start = owner[0][d.height - 1]

    rect_label = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        r = queue.popleft()
        for o in _neighbors_clockwise(d, struct, r):
            if o not in rect_label:
                rect_label[o] = len(order)
                order.append(o)
                queue.append(o)
    if len(order) != d.size:
        raise AssertionError("adjacency graph of a tiling must be connected")

    sides_of = _rect_sides(d, struct)
    seg_label = {b: b for b in BOUNDARY_IDS}
    seg_order = []
    for r in order:
        for sid in sides_of[r]:
            if sid not in seg_label:
                seg_label[sid] = len(seg_order)
                seg_order.append(sid)

    parts = [f"n{d.size}"]
    for r in order:
        t, rt, b, lf = sides_of[r]
        parts.append(f"r{seg_label[t]},{seg_label[rt]},{seg_label[b]},{seg_label[lf]}")
    for sid in seg_order:
        s = struct.segments[sid]
        lo_host, hi_host = struct.junctions[sid]
        chunk = [s.orientation, str(seg_label[lo_host]), str(seg_label[hi_host])]
        for side_list in struct.sides[sid]:
            items = []
            for item in side_list:
                if item[0] == "R":
                    items.append(f"R{rect_label[item[1]]}")
                else:
                    items.append(f"E{seg_label[item[1]]}{item[2]}")
            chunk.append(".".join(items))
        chunk.append(".".join(f"{side}{seg_label[other]}"
                              for side, other in struct.merged[sid]))
        parts.append("s" + "|".join(chunk))
    for bid in BOUNDARY_IDS:
        items = []
        for item in struct.sides[bid][0]:
            if item[0] == "R":
                items.append(f"R{rect_label[item[1]]}")
            else:
                items.append(f"E{seg_label[item[1]]}{item[2]}")
        parts.append(f"b{bid}:" + ".".join(items))
    return ";".join(parts)


def equivalent(d1, d2):
    return canonicalize(d1) == canonicalize(d2)


# ---------------------------------------------------------------------------
# transforms

def rotate90(d):
    """Rotate a drawing counterclockwise by 90 degrees."""
    H = d.height
    rects = tuple((H - y2, x1, H - y1, x2) for (x1, y1, x2, y2) in d.rects)
    return Drawing(H, d.width, rects)


def mirror(d):
    """Reflect a drawing horizontally (swap left and right)."""
    W = d.width
    rects = tuple((W - x2, y1, W - x1, y2) for (x1, y1, x2, y2) in d.rects)
    return Drawing(W, d.height, rects)


def compress(d):
    """Re-embed tightly: drop grid lines supporting no rectangle side."""
    xs = sorted({0, d.width} | {r[0] for r in d.rects} | {r[2] for r in d.rects})
    ys = sorted({0, d.height} | {r[1] for r in d.rects} | {r[3] for r in d.rects})
    xm = {v: i for i, v in enumerate(xs)}
    ym = {v: i for i, v in enumerate(ys)}
    rects = tuple((xm[x1], ym[y1], xm[x2], ym[y2]) for (x1, y1, x2, y2) in d.rects)
    return Drawing(len(xs) - 1, len(ys) - 1, rects)


def internal_segment_count(d):
    return len(extract_segments(d).segments)


def render_ascii(d, cell=2):
    """Small ASCII picture of a drawing (debug aid)."""
    W, H = d.width, d.height
    gw, gh = W * cell + 1, H * cell + 1
    grid = [[" "] * gw for _ in range(gh)]
    for (x1, y1, x2, y2) in d.rects:
        for x in range(x1 * cell, x2 * cell + 1):
            grid[(H - y1) * cell][x] = "-"
            grid[(H - y2) * cell][x] = "-"
        for y in range((H - y2) * cell, (H - y1) * cell + 1):
            grid[y][x1 * cell] = "|"
            grid[y][x2 * cell] = "|"
    for (x1, y1, x2, y2) in d.rects:
        for p in ((x1, y1), (x2, y1), (x1, y2), (x2, y2)):
            grid[(H - p[1]) * cell][p[0] * cell] = "+"
    return "\n".join("".join(row) for row in grid)
