"""Object generators: the brute-force oracle over all equivalence classes,
pattern-filtered class streams, and the simple-whirl machinery (generating
tree, geometric builder, peeling, signatures).

The oracle enumerates tight grid tilings.  In a tight drawing every internal
grid line carries at least one of the n-1 maximal segments, so W-1 vertical
plus H-1 horizontal lines are covered by n-1 segments and W+H <= n+1; that
bound keeps the search small.  Tilings are deduplicated by canonical code.
"""

from __future__ import annotations

from collections import Counter, deque

from .geometry import (
    Drawing, canonicalize, compress, extract_segments, validate_drawing,
)
from .patterns import (
    avoids, pattern_profile, windmill_occurrences, WINDMILL_CW,
)

ORACLE_DEFAULT_CEILING = 8

VORTEX_AVOID = frozenset((1, 3, 4, 5, 6, 7, 8))


class OracleLimitError(RuntimeError):
    """Raised when an exhaustive enumeration exceeds its configured ceiling."""


# ---------------------------------------------------------------------------
# brute-force oracle

def _tight_tilings(W, H, n):
    """Yield rect tuples tiling the W x H grid with exactly n rectangles,
    no four meeting in a point, every grid line used (tight)."""
    total = W * H
    if total < n:
        return
    free = [[True] * H for _ in range(W)]
    rects = []
    corner_count = Counter()

    def interior_corners(x1, y1, x2, y2):
        return [p for p in ((x1, y1), (x2, y1), (x1, y2), (x2, y2))
                if 0 < p[0] < W and 0 < p[1] < H]

    def first_free():
        for y in range(H):
            for x in range(W):
                if free[x][y]:
                    return x, y
        return None

    def rec(remaining_cells):
        k = len(rects)
        if k == n:
            if remaining_cells == 0:
                xs, ys = set(), set()
                for (x1, y1, x2, y2) in rects:
                    xs.add(x1); xs.add(x2); ys.add(y1); ys.add(y2)
                if len(xs) == W + 1 and len(ys) == H + 1:
                    yield tuple(rects)
            return
        if remaining_cells < n - k:
            return
        x, y = first_free()
        maxw = 0
        while x + maxw < W and free[x + maxw][y]:
            maxw += 1
        for w in range(1, maxw + 1):
            maxh = H - y
            for h in range(1, maxh + 1):
                if any(not free[xx][y + h - 1] for xx in range(x, x + w)):
                    break
                x2, y2 = x + w, y + h
                pts = interior_corners(x, y, x2, y2)
                if any(corner_count[p] == 3 for p in pts):
                    continue
                for p in pts:
                    corner_count[p] += 1
                for xx in range(x, x2):
                    for yy in range(y, y2):
                        free[xx][yy] = False
                rects.append((x, y, x2, y2))
                yield from rec(remaining_cells - w * h)
                rects.pop()
                for xx in range(x, x2):
                    for yy in range(y, y2):
                        free[xx][yy] = True
                for p in pts:
                    corner_count[p] -= 1

    yield from rec(total)


def gen_all_rectangulations(n, ceiling=ORACLE_DEFAULT_CEILING):
    """All strong-equivalence classes of size n as {code: representative}.

    Deterministic: grids are scanned in increasing (W, H), tilings in the
    fixed backtracking order, so reruns are byte-for-byte identical.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > ceiling:
        raise OracleLimitError(
            f"oracle ceiling is {ceiling}; size {n} would enumerate too much")
    classes = {}
    for W in range(1, n + 1):
        for H in range(1, n + 2 - W):
            for rects in _tight_tilings(W, H, n):
                d = Drawing(W, H, rects)
                code = canonicalize(d)
                if code not in classes:
                    classes[code] = d
    return classes


def gen_class(n, avoid, ceiling=ORACLE_DEFAULT_CEILING, classes=None):
    """Stream of class representatives of size n avoiding the pattern set.

    Sets containing P1..P4 go through the bijection (delta images of
    separable permutations, geometrically filtered); anything else filters
    the brute-force oracle.
    """
    from .bijection import delta_inv
    from .permutations import generate_separable

    avoid = frozenset(avoid)
    if avoid >= {1, 2, 3, 4}:
        extra = avoid - {1, 2, 3, 4}
        for p in generate_separable(n):
            d = delta_inv(p)
            if avoids(d, extra):
                yield d
        return
    if classes is None:
        classes = gen_all_rectangulations(n, ceiling)
    for d in classes.values():
        if avoids(d, avoid):
            yield d


# ---------------------------------------------------------------------------
# generating tree for simple whirls

ROOT_SIGNATURE = (1, 1, 1, 1)


def signature_children(sig):
    """Children of a signature node, as (rule, parameter, child) triples.

    Rule i adds a corner rectangle to region R_i; a literal 1 in the paper's
    left-hand patterns is a constraint, letters match any value.
    """
    a, b, c, d = sig
    out = []
    if c == 1 and d == 1:
        out.append((1, 1, (1, b + 1, 1, 1)))
    if a == 1 and d == 1:
        for t in range(1, b + 1):
            out.append((2, t, (1, t, c + 1, 1)))
    if a == 1:
        for t in range(1, c + 1):
            out.append((3, t, (1, b, t, d + 1)))
    for t in range(1, d + 1):
        out.append((4, t, (a + 1, b, c, t)))
    return out


def whirl_tree(depth):
    """BFS the signature tree; returns a list of per-level dicts with
    'count' and 'signatures' (a Counter)."""
    levels = []
    level = [ROOT_SIGNATURE]
    for _ in range(depth + 1):
        levels.append({"count": len(level), "signatures": Counter(level)})
        nxt = []
        for sig in level:
            nxt.extend(ch for _, _, ch in signature_children(sig))
        level = nxt
    return levels


def iter_tree_paths(depth):
    """Yield (path, signature) for every node at exactly the given depth,
    path being the (rule, parameter) list from the root."""
    stack = [((), ROOT_SIGNATURE)]
    for _ in range(depth):
        nxt = []
        for path, sig in stack:
            for rule, t, child in signature_children(sig):
                nxt.append((path + ((rule, t),), child))
        stack = nxt
    yield from stack


# ---------------------------------------------------------------------------
# geometric builder

PINWHEEL = Drawing(3, 3, (
    (0, 1, 1, 3),    # west column
    (1, 2, 3, 3),    # north slab
    (2, 0, 3, 2),    # east column
    (0, 0, 2, 1),    # south slab
    (1, 1, 2, 2),    # centre
))


def _add_east(d, t):
    """New SE corner column; the t top slabs at the east side extend over it."""
    W, H = d.width, d.height
    east = [r for r in d.rects if r[2] == W]
    if not 1 <= t <= len(east) - 1:
        raise ValueError(f"rule parameter {t} out of range")
    y_cut = H - t
    if any(r[1] < y_cut < r[3] for r in east):
        raise ValueError("east side does not split at the requested height")
    rects = []
    for (x1, y1, x2, y2) in d.rects:
        if x2 == W and y1 >= y_cut:
            rects.append((x1, y1, x2 + 1, y2))
        else:
            rects.append((x1, y1, x2, y2))
    rects.append((W, 0, W + 1, y_cut))
    return Drawing(W + 1, H, tuple(rects))


def _rotations(d, k):
    from .geometry import rotate90
    for _ in range(k % 4):
        d = rotate90(d)
    return d


def apply_rule(d, rule, t):
    """Grow a normalized simple whirl by one corner rectangle.

    Rule 1 adds at the SE corner (east side), rules 2..4 at the SW, NW and NE
    corners; each is the east-side operation conjugated by rotation.
    """
    if rule == 1:
        return _add_east(d, t)
    # rotate the target corner onto the SE, add, rotate back
    k = rule - 1
    return _rotations(_add_east(_rotations(d, k), t), 4 - k)


def build_simple_whirl(path):
    """Drawing for a root-to-node rule path of the generating tree."""
    d = PINWHEEL
    sig = ROOT_SIGNATURE
    for rule, t in path:
        legal = {(r, tt): ch for r, tt, ch in signature_children(sig)}
        if (rule, t) not in legal:
            raise ValueError(f"rule {rule} with parameter {t} not applicable at {sig}")
        sig = legal[(rule, t)]
        d = apply_rule(d, rule, t)
    return d


# ---------------------------------------------------------------------------
# whirls: peeling, regions, signatures

def is_vortex(d):
    return avoids(d, VORTEX_AVOID)


def is_whirl(d):
    """Vortex containing at least one windmill (necessarily clockwise)."""
    return is_vortex(d) and bool(windmill_occurrences(d, WINDMILL_CW))


def peel(d):
    """Delete side-to-side rectangles until none remain (input: a whirl)."""
    if not is_whirl(d):
        raise ValueError("peel expects a whirl")
    cur = d
    while True:
        full = [i for i, r in enumerate(cur.rects)
                if (r[0] == 0 and r[2] == cur.width)
                or (r[1] == 0 and r[3] == cur.height)]
        if not full:
            return cur
        i = full[0]
        rest = tuple(r for j, r in enumerate(cur.rects) if j != i)
        cur = compress(Drawing(cur.width, cur.height, rest))
        bad = validate_drawing(cur)
        if bad:
            raise AssertionError(f"peeling broke the drawing: {bad}")


def is_peelable(d):
    return any((r[0] == 0 and r[2] == d.width) or (r[1] == 0 and r[3] == d.height)
               for r in d.rects)


def is_simple_whirl(d):
    """Non-peelable whirl with exactly one windmill whose interior is one tile."""
    if not is_whirl(d) or is_peelable(d):
        return False
    occ = windmill_occurrences(d, WINDMILL_CW)
    if len(occ) != 1:
        return False
    box = occ[0][4]
    return box in set(d.rects)


def alternating_paths(st, occurrence):
    """The four alternating paths of a windmill occurrence, as sets of unit
    wall pieces.  Paths: SE (right/down from the box SE corner), SW
    (down/left), NW (left/up), NE (up/right)."""
    segs, junc = st.segments, st.junctions
    vL, hT, vR, hB, box = occurrence
    x1, y1, x2, y2 = box

    def walk(sid, direction, enter_at):
        """Walk segment sid from coordinate enter_at to its endpoint in the
        given direction; returns (pieces, host_at_end, entry_for_next) where
        entry_for_next is this segment's fixed coordinate."""
        s = segs[sid]
        if direction in ("right", "up"):
            pieces = [(s.orientation, s.pos, u) for u in range(enter_at, s.hi)]
            return pieces, junc[sid][1], s.pos
        pieces = [(s.orientation, s.pos, u) for u in range(s.lo, enter_at)]
        return pieces, junc[sid][0], s.pos

    def path(start_sid, start_coord, dirs):
        out = set()
        sid, coord = start_sid, start_coord
        step = 0
        while sid >= 0:
            pieces, host, coord = walk(sid, dirs[step % 2], coord)
            out.update(pieces)
            sid = host
            step += 1
        return out

    se = path(hB, x2, ("right", "down"))
    sw = path(vL, y1, ("down", "left"))
    nw = path(hT, x1, ("left", "up"))
    ne = path(vR, y2, ("up", "right"))
    return se, sw, nw, ne


def whirl_regions(d, occurrence=None):
    """Partition the rectangles outside the windmill interior into the four
    regions cut out by the alternating paths.

    Returns (regions, box) where regions[i] is the rect-id set of R_{i+1}:
    R1 holds the SE corner rectangle, R2 the SW, R3 the NW, R4 the NE.
    Raises ValueError when the decomposition does not have four regions.
    """
    st = extract_segments(d)
    if occurrence is None:
        occ = windmill_occurrences(st, WINDMILL_CW)
        if len(occ) != 1:
            raise ValueError(f"expected exactly one windmill, found {len(occ)}")
        occurrence = occ[0]
    box = occurrence[4]
    x1, y1, x2, y2 = box
    cut = set()
    for p in alternating_paths(st, occurrence):
        cut |= p

    inside = [i for i, r in enumerate(d.rects)
              if x1 <= r[0] and r[2] <= x2 and y1 <= r[1] and r[3] <= y2]
    outside = [i for i in range(d.size) if i not in set(inside)]

    # adjacency between outside rects through wall pieces not on the paths
    owner = st.owner
    adj = {i: set() for i in outside}
    W, H = d.width, d.height
    outs = set(outside)
    for x in range(1, W):
        for y in range(H):
            a, b = owner[x - 1][y], owner[x][y]
            if a != b and a in outs and b in outs and ("v", x, y) not in cut:
                adj[a].add(b)
                adj[b].add(a)
    for y in range(1, H):
        for x in range(W):
            a, b = owner[x][y - 1], owner[x][y]
            if a != b and a in outs and b in outs and ("h", y, x) not in cut:
                adj[a].add(b)
                adj[b].add(a)

    comps = []
    seen = set()
    for i in outside:
        if i in seen:
            continue
        comp, queue = set(), deque([i])
        seen.add(i)
        while queue:
            j = queue.popleft()
            comp.add(j)
            for k in adj[j]:
                if k not in seen:
                    seen.add(k)
                    queue.append(k)
        comps.append(comp)
    if len(comps) != 4:
        raise ValueError(f"alternating paths cut {len(comps)} regions, not 4")

    corners = {
        "SE": owner[W - 1][0], "SW": owner[0][0],
        "NW": owner[0][H - 1], "NE": owner[W - 1][H - 1],
    }
    if len(set(corners.values())) != 4:
        raise ValueError("corner rectangles are not distinct (peelable input?)")
    regions = []
    for name in ("SE", "SW", "NW", "NE"):
        rid = corners[name]
        comp = next((c for c in comps if rid in c), None)
        if comp is None:
            raise ValueError(f"{name} corner rectangle inside the windmill box")
        regions.append(comp)
    if any(regions[i] is regions[j] for i in range(4) for j in range(i + 1, 4)):
        raise ValueError("two corner rectangles share a region")
    return regions, box


def signature_of(d):
    """Signature (s1..s4) of a simple whirl: s_i counts the rectangles of
    R_{i-1} touching side S_i (S1..S4 = east, south, west, north)."""
    regions, _ = whirl_regions(d)
    r1, r2, r3, r4 = regions
    W, H = d.width, d.height
    rects = d.rects
    s1 = sum(1 for i in r4 if rects[i][2] == W)
    s2 = sum(1 for i in r1 if rects[i][1] == 0)
    s3 = sum(1 for i in r2 if rects[i][0] == 0)
    s4 = sum(1 for i in r3 if rects[i][3] == H)
    return (s1, s2, s3, s4)


def windmill_interiors_nested(d):
    """True iff the interior boxes of all clockwise windmills form a chain."""
    boxes = [occ[4] for occ in windmill_occurrences(d, WINDMILL_CW)]

    def contains(a, b):
        return a[0] <= b[0] and a[1] <= b[1] and b[2] <= a[2] and b[3] <= a[3]

    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if not (contains(boxes[i], boxes[j]) or contains(boxes[j], boxes[i])):
                return False
    return True


def substitute_interior(d, rect_id, sub):
    """Replace one tile of d by a whole drawing, refining the grid."""
    x1, y1, x2, y2 = d.rects[rect_id]
    if (x2 - x1, y2 - y1) != (1, 1):
        raise ValueError("substitution target must be a unit tile")
    dx, dy = sub.width - 1, sub.height - 1
    rects = []
    for i, (a, b, c, e) in enumerate(d.rects):
        if i == rect_id:
            continue
        rects.append((a + dx if a > x1 else a, b + dy if b > y1 else b,
                      c + dx if c > x1 else c, e + dy if e > y1 else e))
    for (a, b, c, e) in sub.rects:
        rects.append((x1 + a, y1 + b, x1 + c, y1 + e))
    return Drawing(d.width + dx, d.height + dy, tuple(rects))
