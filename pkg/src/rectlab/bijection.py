"""Recursive bijection between guillotine diagonal rectangulations and
separable permutations, plus the pattern-translation table.

Convention (calibrated so that the translation checks below hold, and frozen):
splitting at all vertical cuts maps the bands left to right to a direct sum;
splitting at all horizontal cuts maps the bands top to bottom to a skew sum.
Positions of the image permutation then follow the NW-SE diagonal order of
the rectangles and values the SW-NE order.
"""

from __future__ import annotations

from .geometry import Drawing, compress, validate_drawing
from .patterns import cut_bands, is_diagonal, is_guillotine
from .permutations import (
    SeparableTree, LEAF, VincularPattern, classical, decompose, flatten,
    contains_vincular,
)

# table rows: row id -> (extra geometric patterns beyond P1..P4,
#                        vincular patterns on the separable side)
TABLE_ROWS = {
    "1234": ((), ()),
    "12345": ((5,), ("2[14]3",)),
    "12347": ((7,), ("21354",)),
    "123456": ((5, 6), ("2[14]3", "3[41]2")),
    "123457": ((5, 7), ("2143",)),
    "123458": ((5, 8), ("2[14]3", "45312")),
    "123478": ((7, 8), ("21354", "45312")),
    "1234567": ((5, 6, 7), ("2143", "3[41]2")),
    "1234578": ((5, 7, 8), ("2143", "45312")),
    "12345678": ((5, 6, 7, 8), ("2143", "3412")),
}


def row_patterns(row):
    """(geometric pattern ids beyond 1234, vincular patterns) for a table row."""
    geo, vinc = TABLE_ROWS[row]
    return frozenset(geo), tuple(VincularPattern.parse(v) for v in vinc)


# ---------------------------------------------------------------------------
# delta

def _delta_rec(rects, x1, y1, x2, y2):
    if len(rects) == 1:
        return (1,)
    split = cut_bands(rects, x1, y1, x2, y2)
    if split is None:
        raise ValueError("sub-box without a cut: input is not guillotine")
    o, bands, bounds = split
    parts = []
    for i, band in enumerate(bands):
        if o == "v":
            parts.append(_delta_rec(band, bounds[i], y1, bounds[i + 1], y2))
        else:
            parts.append(_delta_rec(band, x1, bounds[i], x2, bounds[i + 1]))
    if o == "v":
        out, off = [], 0
        for p in parts:
            out.extend(v + off for v in p)
            off += len(p)
        return tuple(out)
    # horizontal cuts: top band first, skew sum
    parts.reverse()
    out, off = [], sum(len(p) for p in parts)
    for p in parts:
        off -= len(p)
        out.extend(v + off for v in p)
    return tuple(out)


def delta(d, check=True):
    """Map a guillotine diagonal drawing to its separable permutation."""
    if check:
        if not is_guillotine(d):
            raise ValueError("delta requires a guillotine rectangulation")
        if not is_diagonal(d):
            raise ValueError("delta requires a diagonal rectangulation")
    return _delta_rec(list(d.rects), 0, 0, d.width, d.height)


def cut_tree_depth(d):
    """Depth of the cut decomposition, splitting at all parallel cuts at once."""
    def rec(rects, x1, y1, x2, y2):
        if len(rects) == 1:
            return 0
        o, bands, bounds = cut_bands(rects, x1, y1, x2, y2)
        deep = 0
        for i, band in enumerate(bands):
            if o == "v":
                deep = max(deep, rec(band, bounds[i], y1, bounds[i + 1], y2))
            else:
                deep = max(deep, rec(band, x1, bounds[i], x2, bounds[i + 1]))
        return 1 + deep

    return rec(list(d.rects), 0, 0, d.width, d.height)


# ---------------------------------------------------------------------------
# delta inverse

def _layout(tree):
    """Recursive tight layout; returns (w, h, rect list).

    Ascending nodes become vertical bands left to right, each band's internal
    horizontal grid lines packed top-down so the structure descends NW-SE;
    descending nodes are the transpose.
    """
    if tree.kind == "leaf":
        return 1, 1, [(0, 0, 1, 1)]
    parts = [_layout(c) for c in tree.children]
    if tree.kind == "asc":
        w = sum(p[0] for p in parts)
        h = 1 + sum(p[1] - 1 for p in parts)
        rects, xoff, used = [], 0, 0
        for wi, hi, rs in parts:
            # child's internal lines land in the band just below the previous
            shift = h - used - hi
            for (a, b, c, dd) in rs:
                rects.append((xoff + a,
                              0 if b == 0 else shift + b,
                              xoff + c,
                              h if dd == hi else shift + dd))
            xoff += wi
            used += hi - 1
        return w, h, rects
    w = 1 + sum(p[0] - 1 for p in parts)
    h = sum(p[1] for p in parts)
    rects, used_x, yoff = [], 0, h
    for wi, hi, rs in parts:
        yoff -= hi
        for (a, b, c, dd) in rs:
            rects.append((0 if a == 0 else used_x + a,
                          yoff + b,
                          w if c == wi else used_x + c,
                          yoff + dd))
        used_x += wi - 1
    return w, h, rects


def delta_inv(p):
    """The tight guillotine diagonal drawing whose delta image is p."""
    tree = decompose(p)  # raises for non-separable input
    w, h, rects = _layout(tree)
    d = Drawing(w, h, tuple(rects))
    return d


# ---------------------------------------------------------------------------
# translation checks

def check_translation(row, n, classes=None):
    """Verify, over every guillotine diagonal class of size n, that geometric
    avoidance of the row's pattern set matches vincular avoidance of its
    permutation set under delta.  Returns (ok, witness)."""
    from .patterns import avoids
    from .permutations import generate_separable

    geo, vinc = row_patterns(row)
    if classes is None:
        classes = [(delta_inv(p), p) for p in generate_separable(n)]
    for d, p in classes:
        g = avoids(d, geo)
        v = not any(contains_vincular(p, q) for q in vinc)
        if g != v:
            return False, {"perm": p, "drawing": d.to_json(),
                           "geometric_avoids": g, "vincular_avoids": v}
    return True, None
