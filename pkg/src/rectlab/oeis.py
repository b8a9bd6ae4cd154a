"""OEIS b-file access with a swappable transport.

Offline mode (the default) reads snapshots bundled under data/oeis.  Fetch
mode downloads b-files and caches them on disk.  Comparisons search a small
range of index offsets, since OEIS offsets rarely agree with size-indexed
combinatorial counts.
"""

from __future__ import annotations

import os
import urllib.request
from importlib import resources

# sequences cited for the ten table rows, the vortex row, whirl levels and
# the total class counts
ROW_SEQUENCES = {
    "1234": "A006318",
    "12345": "A106228",
    "12347": "A363809",
    "123456": "A078482",
    "123457": "A033321",
    "123458": "A363810",
    "123478": "A363811",
    "1234567": "A363812",
    "1234578": "A363813",
    "12345678": "A006012",
    "1345678": "A026029",
}
EXTRA_SEQUENCES = {
    "whirl-levels": "A002057",
    "all-classes": "A342141",
}
KNOWN_SEQUENCES = sorted(set(ROW_SEQUENCES.values()) | set(EXTRA_SEQUENCES.values()))


class OfflineViolation(RuntimeError):
    """Raised by the null transport if anything tries to touch the network."""


class SnapshotTransport:
    """Reads bundled b-file snapshots; never opens a connection."""

    def get(self, seq_id):
        name = f"b{seq_id[1:]}.txt"
        path = resources.files("rectlab.data.oeis").joinpath(name)
        if not path.is_file():
            raise FileNotFoundError(f"no bundled snapshot for {seq_id}")
        return path.read_text()


class HttpTransport:
    """Fetches b-files from oeis.org, caching under cache_dir."""

    def __init__(self, cache_dir=None, timeout=30):
        self.cache_dir = cache_dir or os.environ.get("RECTLAB_CACHE", ".rectlab-cache")
        self.timeout = timeout

    def get(self, seq_id):
        name = f"b{seq_id[1:]}.txt"
        cached = os.path.join(self.cache_dir, name)
        if os.path.exists(cached):
            with open(cached) as fh:
                return fh.read()
        url = f"https://oeis.org/{seq_id}/{name}"
        with urllib.request.urlopen(url, timeout=self.timeout) as resp:
            text = resp.read().decode()
        os.makedirs(self.cache_dir, exist_ok=True)
        with open(cached, "w") as fh:
            fh.write(text)
        return text


class NullTransport:
    def get(self, seq_id):
        raise OfflineViolation(f"network access attempted for {seq_id}")


def parse_bfile(text):
    """b-file lines 'n a(n)' -> {n: value}; comments and blanks skipped."""
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        n_str, v_str = line.split()[:2]
        out[int(n_str)] = int(v_str)
    return out


def compare(seq_id, values, transport=None, first_index=1, max_shift=3,
            min_overlap=4):
    """Compare local values (values[i] is the term at index first_index + i)
    against the sequence, searching shifts in [-max_shift, max_shift].

    Returns a report dict: {'sequence', 'match', 'shift', 'overlap'} plus a
    witness on mismatch.  A shift s means local index n corresponds to OEIS
    index n + s.
    """
    transport = transport or SnapshotTransport()
    table = parse_bfile(transport.get(seq_id))
    best = None
    for shift in range(-max_shift, max_shift + 1):
        overlap = 0
        witness = None
        for i, v in enumerate(values):
            n = first_index + i + shift
            if n in table:
                if table[n] != v:
                    witness = {"local_index": first_index + i,
                               "oeis_index": n, "local": v, "oeis": table[n]}
                    break
                overlap += 1
        else:
            if overlap >= min_overlap:
                return {"sequence": seq_id, "match": True, "shift": shift,
                        "overlap": overlap}
        if best is None or (witness is None and overlap > best.get("overlap", 0)):
            best = {"sequence": seq_id, "match": False, "shift": shift,
                    "overlap": overlap, "witness": witness}
    return best
