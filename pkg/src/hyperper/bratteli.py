"""Ordered Bratteli diagram of the tower system and the Vershik successor.

Each level t >= 1 has two vertices, L_t and R_t, rooted at L_0.  L-vertices
chain by single edges; the ordered incoming list of R_{t+1} transcribes the
level-t winding: C_t left-edges then one right-edge, repeated (t+1)! times,
then a final left-edge.  (One reading of the construction repeats left
edges C_{t+1} times; that count contradicts the winding and the heights,
so the C_t reading is used here.)  Root-to-vertex path counts then satisfy
height(L_t) = 1, height(R_t) = |V_t|, and the lexicographic successor on
paths realizes the tower dynamics one chain per terminal vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .covers import ATMTower, build_atm, winding_word
from .errors import CapExceeded

EXPLICIT_CAP = 1 << 16


@dataclass(frozen=True)
class BVDiagram:
    """Vertices "L0", "L1", "R1", ...; ordered incoming source lists per vertex."""

    depth: int
    incoming: dict
    constants: tuple[int, ...]

    def __post_init__(self):
        for t in range(1, self.depth + 1):
            for v in (f"L{t}", f"R{t}"):
                if not self.incoming.get(v):
                    raise ValueError(f"vertex {v} lacks incoming edges")
        for t in range(self.depth):
            sources = set()
            for v in (f"L{t + 1}", f"R{t + 1}"):
                sources.update(self.incoming[v])
            for v in ({"L0"} if t == 0 else {f"L{t}", f"R{t}"}):
                if v not in sources:
                    raise ValueError(f"vertex {v} lacks outgoing edges")

    def vertices(self, t: int) -> list[str]:
        return ["L0"] if t == 0 else [f"L{t}", f"R{t}"]


@dataclass(frozen=True)
class BVPath:
    """Finite path from the root: per level, the target kind and the index
    of the chosen edge within the target's ordered incoming list."""

    kinds: tuple[str, ...]
    indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.kinds) != len(self.indices):
            raise ValueError("kinds and indices must align")
        if any(k not in ("L", "R") for k in self.kinds):
            raise ValueError("kinds must be 'L' or 'R'")

    @property
    def depth(self) -> int:
        return len(self.kinds)

    def vertex(self, t: int) -> str:
        return "L0" if t == 0 else f"{self.kinds[t - 1]}{t}"

    def to_json(self) -> list:
        return [[k, i] for k, i in zip(self.kinds, self.indices)]

    @classmethod
    def from_json(cls, obj) -> "BVPath":
        if not isinstance(obj, list):
            raise ValueError("path JSON must be a list of [kind, index] pairs")
        kinds, indices = [], []
        for entry in obj:
            if (not isinstance(entry, list) or len(entry) != 2
                    or not isinstance(entry[1], int)):
                raise ValueError("path JSON entries must be [kind, index]")
            kinds.append(entry[0])
            indices.append(entry[1])
        return cls(tuple(kinds), tuple(indices))


def build_atm_bv(depth: int, tower: Optional[ATMTower] = None) -> BVDiagram:
    """Bratteli diagram matching the tower of the same depth."""
    if depth < 1:
        raise ValueError("diagram depth must be >= 1")
    if tower is None:
        tower = build_atm(depth)
    if tower.depth < depth:
        raise ValueError("tower shallower than the requested diagram")
    incoming: dict[str, tuple[str, ...]] = {}
    incoming["L1"] = ("L0",)
    incoming["R1"] = ("L0",) * tower.sizes[1]
    for t in range(1, depth):
        incoming[f"L{t + 1}"] = (f"L{t}",)
        block = (f"L{t}",) * tower.constants[t] + (f"R{t}",)
        incoming[f"R{t + 1}"] = block * math.factorial(t + 1) + (f"L{t}",)
    return BVDiagram(depth, incoming, tower.constants[:depth])


def validate_path(diag: BVDiagram, path: BVPath) -> None:
    """Raise unless consecutive edge sources and targets agree."""
    if path.depth > diag.depth:
        raise ValueError("path deeper than the diagram")
    for t in range(1, path.depth + 1):
        target = path.vertex(t)
        sources = diag.incoming[target]
        idx = path.indices[t - 1]
        if not 0 <= idx < len(sources):
            raise ValueError(f"edge index {idx} out of range at level {t}")
        if sources[idx] != path.vertex(t - 1):
            raise ValueError(f"edge at level {t} starts at {sources[idx]}, "
                             f"but the path passes {path.vertex(t - 1)}")


def minimal_path(diag: BVDiagram, vertex: str) -> BVPath:
    """The all-minimal-edges path into a vertex."""
    return _extreme_path(diag, vertex, lambda sources: 0)


def maximal_path(diag: BVDiagram, vertex: str) -> BVPath:
    """The all-maximal-edges path into a vertex."""
    return _extreme_path(diag, vertex, lambda sources: len(sources) - 1)


def _extreme_path(diag, vertex, pick) -> BVPath:
    level = int(vertex[1:])
    if level > diag.depth:
        raise ValueError("vertex deeper than the diagram")
    kinds: list[str] = []
    indices: list[int] = []
    v = vertex
    for _ in range(level, 0, -1):
        sources = diag.incoming[v]
        idx = pick(sources)
        kinds.append(v[0])
        indices.append(idx)
        v = sources[idx]
    return BVPath(tuple(reversed(kinds)), tuple(reversed(indices)))


def is_minimal(diag: BVDiagram, path: BVPath) -> bool:
    return all(i == 0 for i in path.indices)

def is_maximal(diag: BVDiagram, path: BVPath) -> bool:
    return all(path.indices[t - 1] == len(diag.incoming[path.vertex(t)]) - 1
               for t in range(1, path.depth + 1))


def vershik_successor(diag: BVDiagram, path: BVPath) -> Optional[BVPath]:
    """Lexicographic successor: bump the lowest non-maximal edge, reset below.

    The levels below the bumped edge are replaced by the unique minimal
    path into the new edge's source; the terminal vertex never changes.
    All-maximal paths have no successor.
    """
    validate_path(diag, path)
    for t in range(1, path.depth + 1):
        target = path.vertex(t)
        sources = diag.incoming[target]
        idx = path.indices[t - 1]
        if idx < len(sources) - 1:
            prefix = minimal_path(diag, sources[idx + 1])
            return BVPath(prefix.kinds + (target[0],) + path.kinds[t:],
                          prefix.indices + (idx + 1,) + path.indices[t:])
    return None


def successor_chain(diag: BVDiagram, vertex: str,
                    limit: int = 1 << 20) -> list[BVPath]:
    """All paths into a vertex, in successor order from the minimal path."""
    out = [minimal_path(diag, vertex)]
    while True:
        nxt = vershik_successor(diag, out[-1])
        if nxt is None:
            return out
        out.append(nxt)
        if len(out) > limit:
            raise CapExceeded(len(out), limit, f"successor chain into {vertex}")


def all_paths_into(diag: BVDiagram, vertex: str) -> list[BVPath]:
    """Every path into a vertex, by brute recursive enumeration."""
    level = int(vertex[1:])
    if level == 0:
        return [BVPath((), ())]
    out = []
    for idx, src in enumerate(diag.incoming[vertex]):
        for prefix in all_paths_into(diag, src):
            out.append(BVPath(prefix.kinds + (vertex[0],),
                              prefix.indices + (idx,)))
    return out


def tower_heights(diag: BVDiagram, t: int) -> dict[str, int]:
    """Root-to-vertex path counts at level t."""
    if t > diag.depth:
        raise ValueError("level beyond the diagram depth")
    h = {"L0": 1}
    for level in range(1, t + 1):
        for v in diag.vertices(level):
            h[v] = sum(h[src] for src in diag.incoming[v])
    return {v: h[v] for v in diag.vertices(t)}


def cross_check_covers(diag: BVDiagram, tower: ATMTower, t: int,
                       cap: int = EXPLICIT_CAP) -> bool:
    """Compare R_{t+1}'s incoming source word against the level-t winding.

    Each idle letter e0 contracts to one L; each full cycle block
    f1..f|V_t| contracts to one R.  At level 0 every letter is the loop,
    so the whole word contracts to L's.
    """
    if t + 1 > diag.depth or t + 1 > tower.depth:
        raise ValueError("both structures must be built past the level")
    word = winding_word(tower, t, cap)
    if t == 0:
        contracted = ["L"] * len(word)
    else:
        block = [f"f{j}" for j in range(1, tower.sizes[t] + 1)]
        contracted = []
        i = 0
        while i < len(word):
            if word[i] == "e0":
                contracted.append("L")
                i += 1
            else:
                if word[i:i + len(block)] != block:
                    return False
                contracted.append("R")
                i += len(block)
    sources = [src[0] for src in diag.incoming[f"R{t + 1}"]]
    return contracted == sources


def bv_json(diag: BVDiagram) -> dict:
    """Incoming-source words per vertex."""
    out: dict[str, list[str]] = {}
    for t in range(1, diag.depth + 1):
        for v in diag.vertices(t):
            out[v] = list(diag.incoming[v])
    return out


def bv_dot(diag: BVDiagram) -> str:
    """DOT rendering with edges labeled by target kind and order index."""
    lines = ["digraph bv {", "  rankdir=TB;", "  L0;"]
    for t in range(1, diag.depth + 1):
        for v in diag.vertices(t):
            lines.append(f"  {v};")
    for t in range(1, diag.depth + 1):
        for v in diag.vertices(t):
            for idx, src in enumerate(diag.incoming[v]):
                tag = f"e{t}_1" if v[0] == "L" else f"f{t}_{idx + 1}"
                lines.append(f'  {src} -> {v} [label="{tag}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
