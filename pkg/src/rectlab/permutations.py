"""Separable permutations and (vincular) pattern containment.

Permutations are tuples of 1..n in one-line notation.  Separable
permutations decompose uniquely into a maximal-block tree whose ascending
nodes are direct sums of singletons and descending blocks and vice versa;
the generator enumerates these trees directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

try:
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None


def perm_from_string(text):
    """Parse one-line notation, '2143' or '10,2,1,...' for n > 9."""
    if "," in text:
        vals = tuple(int(v) for v in text.split(","))
    else:
        vals = tuple(int(c) for c in text)
    if sorted(vals) != list(range(1, len(vals) + 1)):
        raise ValueError(f"not a permutation: {text!r}")
    return vals


def perm_to_string(p):
    if len(p) > 9:
        return ",".join(str(v) for v in p)
    return "".join(str(v) for v in p)


def reverse_complement(p):
    n = len(p)
    return tuple(n + 1 - v for v in reversed(p))


def complement(p):
    n = len(p)
    return tuple(n + 1 - v for v in p)


# ---------------------------------------------------------------------------
# vincular patterns

@dataclass(frozen=True)
class VincularPattern:
    """A permutation pattern with adjacency constraints.

    ``adjacent`` lists pattern positions i (0-based) whose match must be
    immediately followed by the match of position i+1.
    """

    pattern: tuple
    adjacent: frozenset = frozenset()

    def __post_init__(self):
        k = len(self.pattern)
        if sorted(self.pattern) != list(range(1, k + 1)):
            raise ValueError(f"not a pattern permutation: {self.pattern}")
        if any(not (0 <= i < k - 1) for i in self.adjacent):
            raise ValueError("adjacency index out of range")

    @staticmethod
    def parse(text):
        """Parse '2[14]3': brackets mark blocks matched by adjacent positions."""
        vals, adjacent = [], set()
        in_block = first_in_block = False
        for ch in text:
            if ch == "[":
                if in_block:
                    raise ValueError(f"nested brackets in {text!r}")
                in_block = first_in_block = True
            elif ch == "]":
                if not in_block:
                    raise ValueError(f"unbalanced brackets in {text!r}")
                in_block = False
            elif ch.isdigit():
                if in_block and not first_in_block:
                    adjacent.add(len(vals) - 1)
                first_in_block = False
                vals.append(int(ch))
            else:
                raise ValueError(f"bad character {ch!r} in pattern {text!r}")
        if in_block:
            raise ValueError(f"unbalanced brackets in {text!r}")
        return VincularPattern(tuple(vals), frozenset(adjacent))

    def __str__(self):
        out, i = [], 0
        k = len(self.pattern)
        while i < k:
            j = i
            while j < k - 1 and j in self.adjacent:
                j += 1
            if j > i:
                out.append("[" + "".join(str(v) for v in self.pattern[i:j + 1]) + "]")
            else:
                out.append(str(self.pattern[i]))
            i = j + 1
        return "".join(out)


def classical(text):
    return VincularPattern(perm_from_string(text))


def contains_vincular(p, q):
    """True iff permutation p contains the vincular pattern q.

    Backtracking over occurrence positions left to right, keeping the order
    isomorphism and the adjacency constraints.
    """
    pat, adj = q.pattern, q.adjacent
    k, n = len(pat), len(p)
    if k > n:
        return False

    def extend(chosen):
        i = len(chosen)
        if i == k:
            return True
        lo = chosen[-1] + 1 if chosen else 0
        hi = n - (k - i) + 1
        if chosen and (i - 1) in adj:
            candidates = range(lo, min(lo + 1, hi))
        else:
            candidates = range(lo, hi)
        for pos in candidates:
            v = p[pos]
            ok = True
            for j, cpos in enumerate(chosen):
                if (pat[j] < pat[i]) != (p[cpos] < v):
                    ok = False
                    break
            if ok and extend(chosen + [pos]):
                return True
        return False

    return extend([])


def contains_classical(p, pattern_values):
    return contains_vincular(p, VincularPattern(tuple(pattern_values)))


# ---------------------------------------------------------------------------
# separable decomposition

@dataclass(frozen=True)
class SeparableTree:
    kind: str           # "leaf", "asc", "desc"
    children: tuple = ()

    @property
    def size(self):
        if self.kind == "leaf":
            return 1
        return sum(c.size for c in self.children)

    def depth(self):
        if self.kind == "leaf":
            return 0
        return 1 + max(c.depth() for c in self.children)


LEAF = SeparableTree("leaf")


def _sum_split(p):
    """Maximal direct-sum components of p, as index bounds."""
    bounds, top, start = [], 0, 0
    for i, v in enumerate(p):
        top = max(top, v)
        if top == i + 1:
            bounds.append((start, i + 1))
            start = i + 1
    return bounds


def _skew_split(p):
    n = len(p)
    bounds, bot, start = [], n + 1, 0
    for i, v in enumerate(p):
        bot = min(bot, v)
        if bot == n - i:
            bounds.append((start, i + 1))
            start = i + 1
    return bounds


def _normalize(vals):
    ranks = {v: i + 1 for i, v in enumerate(sorted(vals))}
    return tuple(ranks[v] for v in vals)


def decompose(p):
    """The unique maximal-block tree of a separable permutation.

    Raises ValueError naming the stuck block when p is not separable.
    """
    if len(p) == 1:
        return LEAF
    sums = _sum_split(p)
    if len(sums) > 1:
        kids = tuple(decompose(_normalize(p[a:b])) for a, b in sums)
        if any(k.kind == "asc" for k in kids):
            raise AssertionError("maximal sum components cannot be ascending")
        return SeparableTree("asc", kids)
    skews = _skew_split(p)
    if len(skews) > 1:
        kids = tuple(decompose(_normalize(p[a:b])) for a, b in skews)
        if any(k.kind == "desc" for k in kids):
            raise AssertionError("maximal skew components cannot be descending")
        return SeparableTree("desc", kids)
    raise ValueError(f"not separable: block {perm_to_string(p)} is simple")


def flatten(tree):
    """One-line permutation of a SeparableTree."""
    if tree.kind == "leaf":
        return (1,)
    parts = [flatten(c) for c in tree.children]
    if tree.kind == "asc":
        out, off = [], 0
        for part in parts:
            out.extend(v + off for v in part)
            off += len(part)
        return tuple(out)
    out, off = [], sum(len(part) for part in parts)
    for part in parts:
        off -= len(part)
        out.extend(v + off for v in part)
    return tuple(out)


def is_separable(p):
    try:
        decompose(p)
        return True
    except ValueError:
        return False


# ---------------------------------------------------------------------------
# generation

@lru_cache(maxsize=None)
def _blocks(n, kind):
    """All separable perms of size n that are `kind` ('asc'/'desc') at the top,
    as value tuples; singletons excluded."""
    out = []
    other = "desc" if kind == "asc" else "asc"
    for first in range(1, n):
        for rest_parts in _compositions(n - first):
            parts = (first,) + rest_parts
            if len(parts) < 2:
                continue
            choices = []
            for part in parts:
                opts = [(1,)] if part == 1 else _blocks(part, other)
                choices.append(opts)
            for combo in itertools.product(*choices):
                out.append(_assemble(combo, kind))
    # single composition loop above already covers all part counts >= 2
    return tuple(sorted(set(out)))


@lru_cache(maxsize=None)
def _compositions(n):
    """All compositions of n as tuples (including the empty one for n=0)."""
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            out.append((first,) + rest)
    return tuple(out)


def _assemble(parts, kind):
    if kind == "asc":
        out, off = [], 0
        for part in parts:
            out.extend(v + off for v in part)
            off += len(part)
        return tuple(out)
    out, off = [], sum(len(p) for p in parts)
    for part in parts:
        off -= len(part)
        out.extend(v + off for v in part)
    return tuple(out)


def generate_separable(n):
    """All separable permutations of size n, sorted lexicographically."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return [(1,)]
    return sorted(set(_blocks(n, "asc")) | set(_blocks(n, "desc")))


# ---------------------------------------------------------------------------
# counting avoiders

def _contains_many_numpy(perms, q, chunk=8192):
    """Vectorised containment of one vincular pattern over many permutations.

    perms: int array of shape (B, n); returns boolean array of length B.
    """
    B, n = perms.shape
    k = len(q.pattern)
    if k > n:
        return _np.zeros(B, dtype=bool)
    combos = _np.array(list(itertools.combinations(range(n), k)), dtype=_np.int64)
    for i in sorted(q.adjacent):
        combos = combos[combos[:, i + 1] == combos[:, i] + 1]
    if combos.size == 0:
        return _np.zeros(B, dtype=bool)
    order = sorted(range(k), key=lambda i: q.pattern[i])
    out = _np.zeros(B, dtype=bool)
    for start in range(0, B, chunk):
        vals = perms[start:start + chunk][:, combos]  # (b, m, k)
        ok = vals[:, :, order[0]] < vals[:, :, order[1]]
        for a, b in zip(order[1:], order[2:]):
            ok &= vals[:, :, a] < vals[:, :, b]
        out[start:start + chunk] = ok.any(axis=1)
    return out


def count_avoiders(n, patterns, perms=None):
    """Number of separable permutations of size n avoiding all the patterns.

    Pure exhaustive filter over the separable permutations; a vectorised
    scanner is used when numpy is available, the backtracking matcher
    otherwise (both are generic occurrence scanners).
    """
    patterns = list(patterns)
    if perms is None:
        perms = generate_separable(n)
    if not patterns:
        return len(perms)
    if _np is not None and n >= 2:
        arr = _np.array(perms, dtype=_np.int8)
        contains_any = _np.zeros(len(perms), dtype=bool)
        for q in patterns:
            contains_any |= _contains_many_numpy(arr, q)
        return int((~contains_any).sum())
    count = 0
    for p in perms:
        if not any(contains_vincular(p, q) for q in patterns):
            count += 1
    return count


def filter_avoiders(n, patterns, perms=None):
    """The avoiding permutations themselves (same routes as count_avoiders)."""
    if perms is None:
        perms = generate_separable(n)
    patterns = list(patterns)
    if not patterns:
        return list(perms)
    if _np is not None and n >= 2:
        arr = _np.array(perms, dtype=_np.int8)
        contains_any = _np.zeros(len(perms), dtype=bool)
        for q in patterns:
            contains_any |= _contains_many_numpy(arr, q)
        return [p for p, c in zip(perms, contains_any) if not c]
    return [p for p in perms
            if not any(contains_vincular(p, q) for q in patterns)]
