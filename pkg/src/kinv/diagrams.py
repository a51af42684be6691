"""Braid words, the bundled knot table, and long-knot bead traversals.

A braid on ``n`` strands is closed on strands ``2..n``; strand 1 stays open
and becomes the long knot. Walking the open strand from its bottom end we
meet each crossing twice and one pivot bead per closure arc.

Bead placement convention: at every crossing the *over* strand carries the
first tensor leg of ``R`` (positive crossing) or ``R^-1`` (negative
crossing), the under strand carries the second leg.  With generator ``s_i``
the strand at position ``i`` passes over to position ``i+1``; for ``s_i^-1``
the strand at position ``i+1`` passes over to position ``i``.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path


class BraidSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]
    name: str | None = None

    def __post_init__(self):
        if self.strands < 1:
            raise DiagramError("strand count must be positive")
        for g in self.letters:
            if g == 0 or abs(g) > self.strands - 1:
                raise DiagramError(f"generator {g} out of range for {self.strands} strands")

    @property
    def writhe(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.letters)

    def permutation(self) -> list[int]:
        """``perm[i]`` is the top position reached from bottom position ``i`` (0-based)."""
        perm = []
        for start in range(self.strands):
            pos = start
            for g in self.letters:
                i = abs(g) - 1
                if pos == i:
                    pos = i + 1
                elif pos == i + 1:
                    pos = i
            perm.append(pos)
        return perm

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-g for g in self.letters), None if self.name is None else self.name + "*")

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-g for g in reversed(self.letters)))

    def __str__(self) -> str:
        body = f"braid[{','.join(str(g) for g in self.letters)}]"
        return f"{self.name}: {body}" if self.name else body


_NAME = re.compile(r"\s*([\w.*+-]+)\s*:")
_TOKEN = re.compile(r"\s*(?:(?P<int>[+-]?\d+)|(?P<word>[A-Za-z_][\w.*]*)|(?P<sym>[:\[\],]))")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``name: braid[1,-2,1]``, ``braid[...]`` or a bare ``[...]``.

    Without an explicit ``strands`` the strand count is one more than the
    largest generator index (1 for the empty word).
    """
    toks = []
    pos = 0
    name = None
    m = _NAME.match(text)
    if m:
        name = m.group(1)
        pos = m.end()
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise BraidSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))

    i = 0

    def expect(kind, value=None):
        nonlocal i
        k, v, p = toks[i]
        if k != kind or (value is not None and v != value):
            want = value or kind
            raise BraidSyntaxError(f"expected {want!r}, found {v or 'end of input'!r}", p)
        i += 1
        return v

    if toks[i][0] == "word":
        expect("word", "braid")
    expect("sym", "[")
    letters = []
    if toks[i][1] != "]":
        letters.append(int(expect("int")))
        while toks[i][1] == ",":
            i += 1
            letters.append(int(expect("int")))
    expect("sym", "]")
    expect("end")
    for g, (_, v, p) in zip(letters, [t for t in toks if t[0] == "int"]):
        if g == 0:
            raise BraidSyntaxError("generator 0 is not allowed", p)
    if strands is None:
        strands = max((abs(g) for g in letters), default=0) + 1
    return BraidWord(strands, tuple(letters), name)


# --- knot table ---------------------------------------------------------------


def table_path() -> Path:
    env = os.environ.get("KINV_TABLE")
    if env:
        return Path(env)
    return Path(str(resources.files("kinv") / "data" / "knots.txt"))


def load_table(path: str | os.PathLike | None = None) -> dict[str, list[BraidWord]]:
    """Read the knot table; a name may appear on several lines (alternative presentations).

    Lines are ``name: braid[...]`` with an optional ``@n`` strand-count
    suffix for words that do not use the last strand (``unknot: braid[] @1``).
    """
    p = Path(path) if path is not None else table_path()
    out: dict[str, list[BraidWord]] = {}
    with open(p, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            strands = None
            if "@" in line:
                line, _, n = line.rpartition("@")
                strands = int(n)
            try:
                b = parse_braid(line.strip(), strands)
            except (BraidSyntaxError, DiagramError) as exc:
                raise DiagramError(f"{p}:{lineno}: {exc}") from exc
            if b.name is None:
                raise DiagramError(f"{p}:{lineno}: table entries need a name")
            out.setdefault(b.name, []).append(b)
    return out


def resolve_knot(name: str, table: dict[str, list[BraidWord]] | None = None, presentation: int = 0) -> BraidWord:
    table = load_table() if table is None else table
    if name not in table:
        raise KeyError(name)
    return table[name][presentation]


# --- long knots -----------------------------------------------------------------


@dataclass(frozen=True)
class BeadSlot:
    kind: str  # "R_over", "R_under", "Rinv_over", "Rinv_under", "pivot"
    crossing: int | None = None
    power: int = 0

    @property
    def is_over(self) -> bool:
        return self.kind.endswith("_over")

    @property
    def positive(self) -> bool:
        return self.kind.startswith("R_")


# pivot power carried by every closure arc (calibrated: unknot -> 1, the
# trefoil gets a single kappa)
CLOSURE_PIVOT = 1


@dataclass(frozen=True)
class LongKnotDiagram:
    braid: BraidWord
    traversal: tuple[BeadSlot, ...]
    writhe: int
    rotation_counts: tuple[int, ...] = field(default=())

    @property
    def crossings(self) -> int:
        return len(self.braid.letters)

    def to_json(self) -> str:
        data = {
            "strands": self.braid.strands,
            "letters": list(self.braid.letters),
            "name": self.braid.name,
            "writhe": self.writhe,
            "rotation_counts": list(self.rotation_counts),
            "traversal": [[s.kind, s.crossing, s.power] for s in self.traversal],
        }
        return json.dumps(data, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "LongKnotDiagram":
        d = json.loads(text)
        b = BraidWord(d["strands"], tuple(d["letters"]), d["name"])
        trav = tuple(BeadSlot(k, c, p) for k, c, p in d["traversal"])
        return cls(b, trav, d["writhe"], tuple(d["rotation_counts"]))


def braid_to_long_knot(b: BraidWord) -> LongKnotDiagram:
    perm = b.permutation()
    slots: list[BeadSlot] = []
    rotations = []
    pos = 0
    visited = {0}
    while True:
        for c, g in enumerate(b.letters):
            i = abs(g) - 1
            if pos == i:
                over = g > 0
                pos = i + 1
            elif pos == i + 1:
                over = g < 0
                pos = i
            else:
                continue
            base = "R" if g > 0 else "Rinv"
            slots.append(BeadSlot(f"{base}_{'over' if over else 'under'}", c))
        if pos == 0:
            break
        if pos in visited:
            raise DiagramError("closure is not a single component")
        visited.add(pos)
        slots.append(BeadSlot("pivot", None, CLOSURE_PIVOT))
        rotations.append(CLOSURE_PIVOT)
    if len(visited) != b.strands:
        raise DiagramError(f"closure of {b} has more than one component (permutation {perm})")
    return LongKnotDiagram(b, tuple(slots), b.writhe, tuple(rotations))


def bead_word(d: LongKnotDiagram) -> tuple[BeadSlot, ...]:
    """Beads in the order met along the strand (the first one acts first)."""
    return d.traversal


def format_bead_word(d: LongKnotDiagram) -> str:
    """Render as a product, leftmost factor = last bead, e.g. ``b3 a2 b1 k a3 b2 a1``."""
    names = []
    for s in d.traversal:
        if s.kind == "pivot":
            names.append("k" if s.power == 1 else f"k^{s.power}")
        else:
            leg = "a" if s.is_over else "b"
            bar = "" if s.positive else "~"
            names.append(f"{leg}{bar}{s.crossing + 1}")
    return " ".join(reversed(names))
