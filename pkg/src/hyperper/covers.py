"""Directed-graph covers and the minimal-dynamics tower built from them.

The tower stacks one graph per level: a distinguished vertex 0 carrying a
self-loop, plus all vertices arranged in one big cycle 0 -> 1 -> ... -> 0.
Level i+1 winds (i+1)! times over level i after idling C_i steps on the
loop per revolution, where C_i keeps |V_i| + C_i coprime to (i+1)!.  Graphs
are kept implicit (pure index arithmetic) because the sizes outgrow
explicit storage around depth 5 and machine words around depth 8.

Points of the limit dynamics appear here at finite resolution as threads:
one vertex index per level, consistent under the covers.  A forward or
backward step consumes one level of resolution.  Because every vertex
other than 0 has a unique outgoing edge, a thread whose level-w coordinate
stays inside 1..|V_w|-1 moves one vertex per step at that level; `advance`,
`rewind` and `level_trajectory` exploit that for exact long-range motion
without deep towers, and tests cross-check them against single stepping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import CapExceeded, InsufficientDepth
from .rng import SeedStream

EXPLICIT_CAP = 1 << 16


# ---------------------------------------------------------------------------
# explicit graphs and covers

@dataclass(frozen=True)
class DiGraph:
    """Finite directed graph; every vertex needs an in-edge and an out-edge."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("graph needs at least one vertex")
        outs = set()
        ins = set()
        for v, w in self.edges:
            if not (0 <= v < self.vertex_count and 0 <= w < self.vertex_count):
                raise ValueError(f"edge ({v},{w}) out of range")
            outs.add(v)
            ins.add(w)
        missing = [v for v in range(self.vertex_count) if v not in outs or v not in ins]
        if missing:
            raise ValueError(f"vertices without in- and out-edges: {missing[:5]}")


@dataclass(frozen=True)
class CoverMap:
    """Vertex map between two graphs; validity is checked, never assumed."""

    source: DiGraph
    target: DiGraph
    vertex_map: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertex_map) != self.source.vertex_count:
            raise ValueError("vertex map must cover every source vertex")
        for v in self.vertex_map:
            if not 0 <= v < self.target.vertex_count:
                raise ValueError(f"mapped vertex {v} outside the target")


@dataclass(frozen=True)
class CoverReport:
    homomorphism: bool
    plus_directional: bool
    bidirectional: bool
    edge_surjective: bool

    @property
    def all_ok(self) -> bool:
        return (self.homomorphism and self.plus_directional
                and self.bidirectional and self.edge_surjective)

    def to_json(self) -> dict:
        return {
            "homomorphism": self.homomorphism,
            "plus_directional": self.plus_directional,
            "bidirectional": self.bidirectional,
            "edge_surjective": self.edge_surjective,
        }


def validate_cover(cover: CoverMap) -> CoverReport:
    """Check the four cover conditions exhaustively over the source edges.

    homomorphism: edges map to edges.  plus-directional: out-neighbors of a
    common vertex share their image.  bidirectional: additionally
    in-neighbors of a common vertex share their image.  edge-surjective:
    every target edge is the image of some source edge.
    """
    phi = cover.vertex_map
    hom = all((phi[v], phi[w]) in cover.target.edges for v, w in cover.source.edges)
    out_images: dict[int, set[int]] = {}
    in_images: dict[int, set[int]] = {}
    image_edges = set()
    for v, w in cover.source.edges:
        out_images.setdefault(v, set()).add(phi[w])
        in_images.setdefault(w, set()).add(phi[v])
        image_edges.add((phi[v], phi[w]))
    plus = all(len(s) <= 1 for s in out_images.values())
    minus = all(len(s) <= 1 for s in in_images.values())
    return CoverReport(
        homomorphism=hom,
        plus_directional=plus,
        bidirectional=plus and minus,
        edge_surjective=image_edges == set(cover.target.edges),
    )


# ---------------------------------------------------------------------------
# the tower

@dataclass(frozen=True)
class ATMTower:
    """Sizes and winding constants of the almost-totally-minimal tower."""

    sizes: tuple[int, ...]
    constants: tuple[int, ...]
    custom_constants: bool = False

    @property
    def depth(self) -> int:
        return len(self.constants)

    def to_json(self) -> dict:
        out = {"sizes": list(self.sizes), "constants": list(self.constants)}
        if self.custom_constants:
            out["constants_overridden"] = True
        return out


def build_atm(depth: int, constants: Optional[Iterable[int]] = None) -> ATMTower:
    """Build the tower: |V_0| = 1, |V_{i+1}| = (|V_i| + C_i) * (i+1)! + 1.

    C_i is the minimal positive integer making |V_i| + C_i coprime to
    (i+1)!, unless an override list supplies it (still checked).
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    override = list(constants) if constants is not None else None
    if override is not None and len(override) != depth:
        raise ValueError(f"override needs exactly {depth} constants")
    sizes = [1]
    consts: list[int] = []
    for i in range(depth):
        fact = math.factorial(i + 1)
        if override is not None:
            c = override[i]
            if c < 1 or math.gcd(sizes[i] + c, fact) != 1:
                raise ValueError(
                    f"constant {c} at level {i} violates coprimality with {i + 1}!")
        else:
            c = 1
            while math.gcd(sizes[i] + c, fact) != 1:
                c += 1
        consts.append(c)
        sizes.append((sizes[i] + c) * fact + 1)
    return ATMTower(tuple(sizes), tuple(consts), custom_constants=override is not None)


def cover_index(tower: ATMTower, i: int, k: int) -> int:
    """Image of level-(i+1) vertex k in level i.

    Working modulo |V_i| + C_i (one revolution: C_i idle steps on the loop,
    then the full cycle), residues 0..C_i all land on vertex 0 and residue
    r > C_i lands on vertex r - C_i.
    """
    if not 0 <= i < tower.depth:
        raise ValueError(f"level {i} outside 0..{tower.depth - 1}")
    if not 0 <= k < tower.sizes[i + 1]:
        raise ValueError(f"vertex {k} outside level {i + 1}")
    c = tower.constants[i]
    r = k % (tower.sizes[i] + c)
    return 0 if r <= c else r - c


def winding_word(tower: ATMTower, i: int, cap: int = EXPLICIT_CAP) -> list[str]:
    """Edge word traced in level i by level i+1's big cycle.

    Pattern: (e0^C_i f1 .. f|V_i|) repeated (i+1)! times, then a final e0;
    the length is |V_{i+1}|.  At level 0 every edge is the loop.
    """
    if not 0 <= i < tower.depth:
        raise ValueError(f"level {i} outside 0..{tower.depth - 1}")
    length = tower.sizes[i + 1]
    if length > cap:
        raise CapExceeded(length, cap, f"winding word at level {i}")
    if i == 0:
        return ["e0"] * length
    block = ["e0"] * tower.constants[i] + [f"f{j}" for j in range(1, tower.sizes[i] + 1)]
    return block * math.factorial(i + 1) + ["e0"]


def atm_graph(tower: ATMTower, level: int, cap: int = EXPLICIT_CAP) -> DiGraph:
    """Explicit graph at a level: the loop at 0 plus the big cycle."""
    if not 0 <= level <= tower.depth:
        raise ValueError(f"level {level} outside 0..{tower.depth}")
    n = tower.sizes[level]
    if n + 1 > cap:
        raise CapExceeded(n + 1, cap, f"explicit graph at level {level}")
    edges = {(0, 0)} | {(j, (j + 1) % n) for j in range(n)}
    return DiGraph(n, frozenset(edges))


def atm_cover(tower: ATMTower, level: int, cap: int = EXPLICIT_CAP) -> CoverMap:
    """Explicit cover from level+1 down to level."""
    src = atm_graph(tower, level + 1, cap)
    tgt = atm_graph(tower, level, cap)
    table = tuple(cover_index(tower, level, k) for k in range(src.vertex_count))
    return CoverMap(src, tgt, table)


def edge_label(tower: ATMTower, level: int, edge: tuple[int, int]) -> str:
    """Name of a level edge: the loop is e0, cycle edge into vertex w is fw (f|V| into 0)."""
    v, w = edge
    n = tower.sizes[level]
    if v == 0 and w == 0:
        return "e0"
    if w == (v + 1) % n:
        return f"f{n if w == 0 else w}"
    raise ValueError(f"({v},{w}) is not an edge at level {level}")


def minimality_witness(tower: ATMTower, m: int) -> bool:
    """Number-theoretic coverage scan behind minimality at level m.

    For every residue r mod (m+1)!, the arithmetic progression
    s*(m+1)! + r must project onto all of level m as s runs over one
    revolution 0..|V_m|+C_m-1.  This is where the coprimality of
    |V_m| + C_m and (m+1)! earns its keep.
    """
    if m + 1 > tower.depth:
        raise InsufficientDepth(f"witness at level {m} needs tower depth >= {m + 1}")
    fact = math.factorial(m + 1)
    revolution = tower.sizes[m] + tower.constants[m]
    want = set(range(tower.sizes[m]))
    for r in range(fact):
        got = {cover_index(tower, m, (s * fact + r) % tower.sizes[m + 1])
               for s in range(revolution)}
        if got != want:
            return False
    return True


# ---------------------------------------------------------------------------
# threads

@dataclass(frozen=True)
class Thread:
    """A point at finite resolution: one vertex index per level, cover-consistent."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if not self.coords:
            raise ValueError("thread needs at least the level-0 coordinate")
        object.__setattr__(self, "coords", tuple(self.coords))

    @property
    def depth(self) -> int:
        return len(self.coords) - 1

    @property
    def is_fixed(self) -> bool:
        """All-zero threads are the distinguished fixed point at this resolution."""
        return not any(self.coords)


def validate_thread(tower: ATMTower, thread: Thread) -> None:
    """Raise unless coordinates are in range and consistent under the covers."""
    if thread.depth > tower.depth:
        raise ValueError("thread deeper than the tower")
    for i, p in enumerate(thread.coords):
        if not 0 <= p < tower.sizes[i]:
            raise ValueError(f"coordinate {p} outside level {i}")
    for i in range(thread.depth):
        if thread.coords[i] != cover_index(tower, i, thread.coords[i + 1]):
            raise ValueError(f"coordinates at levels {i},{i + 1} are inconsistent")


def thread_from_top(tower: ATMTower, depth: int, top: int) -> Thread:
    """The unique consistent thread of the given depth with this deepest coordinate."""
    if not 0 <= depth <= tower.depth:
        raise ValueError(f"depth {depth} outside 0..{tower.depth}")
    if not 0 <= top < tower.sizes[depth]:
        raise ValueError(f"vertex {top} outside level {depth}")
    coords = [0] * (depth + 1)
    coords[depth] = top
    for i in range(depth - 1, -1, -1):
        coords[i] = cover_index(tower, i, coords[i + 1])
    return Thread(tuple(coords))


def minimal_extension(tower: ATMTower, level: int, vertex: int, depth: int) -> Thread:
    """Deepen a level vertex to a thread, taking the smallest consistent
    coordinate at every new level (v + C_i above a nonzero v, 0 above 0)."""
    if depth < level:
        raise ValueError("extension depth below the given level")
    if not 0 <= vertex < tower.sizes[level]:
        raise ValueError(f"vertex {vertex} outside level {level}")
    if depth > tower.depth:
        raise ValueError("extension deeper than the tower")
    up = [vertex]
    for i in range(level, depth):
        v = up[-1]
        up.append(0 if v == 0 else v + tower.constants[i])
    coords = [0] * level + up
    for i in range(level - 1, -1, -1):
        coords[i] = cover_index(tower, i, coords[i + 1])
    return Thread(tuple(coords))


def _succ(tower: ATMTower, level: int, k: int) -> int:
    n = tower.sizes[level]
    if k == 0:
        return 1 if n > 1 else 0
    return (k + 1) % n


def _pred(tower: ATMTower, level: int, k: int) -> int:
    n = tower.sizes[level]
    if k >= 2:
        return k - 1
    if k == 1:
        return 0
    return n - 1


def thread_step(tower: ATMTower, thread: Thread) -> Thread:
    """One forward step of the limit dynamics; costs one level of resolution.

    Coordinate i of the result is the cover image of the successor at level
    i+1.  At vertex 0 the successor is ambiguous (loop vs cycle) but the
    choice is image-invariant because I(i, 0) = I(i, 1).
    """
    if thread.depth < 1:
        raise InsufficientDepth("forward step needs depth >= 1")
    coords = tuple(
        cover_index(tower, i, _succ(tower, i + 1, thread.coords[i + 1]))
        for i in range(thread.depth)
    )
    return Thread(coords)


def thread_back(tower: ATMTower, thread: Thread) -> Thread:
    """One backward step; costs one level.  Predecessors are image-invariant
    at vertex 0 for the same reason successors are (bidirectionality)."""
    if thread.depth < 1:
        raise InsufficientDepth("backward step needs depth >= 1")
    coords = tuple(
        cover_index(tower, i, _pred(tower, i + 1, thread.coords[i + 1]))
        for i in range(thread.depth)
    )
    return Thread(coords)


def _forward_anchor(tower: ATMTower, thread: Thread, t: int) -> Optional[int]:
    """Deepest level whose coordinate provably moves one-per-step for t steps.

    Valid when the coordinate starts off the distinguished vertex and does
    not complete the cycle: the walk then never passes the ambiguous loop.
    """
    for w in range(thread.depth, -1, -1):
        p = thread.coords[w]
        if p >= 1 and p + t <= tower.sizes[w] - 1:
            return w
    return None


def advance(tower: ATMTower, thread: Thread, t: int) -> Thread:
    """Exact t-step forward motion via the unique-successor shortcut.

    Unlike `thread_step`, resolution is only lost when the deepest levels
    would wrap past the ambiguous vertex; the result is bit-exact equal to
    t repeated steps on their common levels.
    """
    if t < 0:
        raise ValueError("advance takes t >= 0; use rewind for backward motion")
    if t == 0 or thread.is_fixed:
        return thread
    w = _forward_anchor(tower, thread, t)
    if w is None:
        raise InsufficientDepth(
            f"no level of this depth-{thread.depth} thread survives {t} forward steps")
    return thread_from_top(tower, w, thread.coords[w] + t)


def rewind(tower: ATMTower, thread: Thread, t: int) -> Thread:
    """Exact t-step backward motion; valid while the anchor coordinate stays >= 0."""
    if t < 0:
        raise ValueError("rewind takes t >= 0")
    if t == 0 or thread.is_fixed:
        return thread
    for w in range(thread.depth, -1, -1):
        if thread.coords[w] >= t:
            return thread_from_top(tower, w, thread.coords[w] - t)
    raise InsufficientDepth(
        f"no level of this depth-{thread.depth} thread survives {t} backward steps")


def coordinate_after(tower: ATMTower, thread: Thread, t: int, level: int) -> int:
    """Level coordinate of the orbit point at signed time t, computed exactly."""
    if level > thread.depth:
        raise InsufficientDepth(f"thread has no level-{level} coordinate")
    if thread.is_fixed:
        return 0
    if t == 0:
        return thread.coords[level]
    for w in range(level, thread.depth + 1):
        p = thread.coords[w]
        ok = (p >= 1 and p + t <= tower.sizes[w] - 1) if t > 0 else p >= -t
        if ok:
            k = p + t
            for i in range(w - 1, level - 1, -1):
                k = cover_index(tower, i, k)
            return k
    raise InsufficientDepth(
        f"time offset {t} is out of range for this depth-{thread.depth} thread")


def level_trajectory(tower: ATMTower, thread: Thread, level: int, steps: int) -> list[int]:
    """Level coordinates of the orbit at times 0..steps, exactly.

    Equivalent to reading coordinate `level` after repeated `thread_step`,
    but anchored once at a deep enough level, so no resolution is consumed.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if level > thread.depth:
        raise InsufficientDepth(f"thread has no level-{level} coordinate")
    if thread.is_fixed:
        return [0] * (steps + 1)
    for w in range(level, thread.depth + 1):
        p = thread.coords[w]
        if p >= 1 and p + steps <= tower.sizes[w] - 1:
            out = []
            for s in range(steps + 1):
                k = p + s
                for i in range(w - 1, level - 1, -1):
                    k = cover_index(tower, i, k)
                out.append(k)
            return out
    raise InsufficientDepth(
        f"depth-{thread.depth} thread cannot be tracked for {steps} steps")


def orbit_coverage(tower: ATMTower, start: Thread, level: int, m: int,
                   budget: int) -> set[int]:
    """Level vertices visited by every m-th forward step, budget+1 samples.

    Full coverage of 0..|V_level|-1 witnesses density of the m-step orbit
    at this resolution.  Uses honest stepping, so the start must carry
    level + m*budget levels.
    """
    if m < 1 or budget < 0:
        raise ValueError("modulus must be >= 1 and budget >= 0")
    if start.depth < level + m * budget:
        raise InsufficientDepth(
            f"coverage needs depth >= {level + m * budget}, thread has {start.depth}")
    visited = set()
    cur = start
    for j in range(budget + 1):
        visited.add(cur.coords[level])
        if j < budget:
            for _ in range(m):
                cur = thread_step(tower, cur)
    return visited


# ---------------------------------------------------------------------------
# preimage enumeration and seeded threads

def preimage_count(tower: ATMTower, i: int, v: int) -> int:
    """Number of level-(i+1) vertices covering level-i vertex v."""
    if not 0 <= v < tower.sizes[i]:
        raise ValueError(f"vertex {v} outside level {i}")
    fact = math.factorial(i + 1)
    if v == 0:
        return fact * (tower.constants[i] + 1) + 1
    return fact


def nth_preimage(tower: ATMTower, i: int, v: int, idx: int) -> int:
    """idx-th smallest level-(i+1) vertex covering level-i vertex v."""
    if not 0 <= idx < preimage_count(tower, i, v):
        raise ValueError("preimage index out of range")
    c = tower.constants[i]
    revolution = tower.sizes[i] + c
    if v == 0:
        j, r = divmod(idx, c + 1)
        return j * revolution + r
    return v + c + idx * revolution


def random_thread(tower: ATMTower, depth: int, stream: SeedStream) -> Thread:
    """Thread of the given depth with a uniformly drawn deepest coordinate."""
    return thread_from_top(tower, depth, stream.below(tower.sizes[depth]))


def cylinder_threads(tower: ATMTower, level: int, vertex: int, depth: int,
                     count: int, seed: int = 0) -> list[Thread]:
    """Distinct threads through a level cylinder: the minimal extension first,
    then seeded random consistent extensions."""
    out = [minimal_extension(tower, level, vertex, depth)]
    seen = {out[0].coords}
    stream = SeedStream(seed)
    attempts = 0
    while len(out) < count and attempts < 20 * count:
        attempts += 1
        up = [vertex]
        for i in range(level, depth):
            up.append(nth_preimage(tower, i, up[-1],
                                   stream.below(preimage_count(tower, i, up[-1]))))
        full = [0] * level + up
        for i in range(level - 1, -1, -1):
            full[i] = cover_index(tower, i, full[i + 1])
        candidate = Thread(tuple(full))
        if candidate.coords not in seen:
            seen.add(candidate.coords)
            out.append(candidate)
    return out


# ---------------------------------------------------------------------------
# export

def tower_dot(tower: ATMTower, upto: int, cap: int = EXPLICIT_CAP) -> str:
    """DOT rendering of the explicit levels 0..upto with edge labels."""
    lines = ["digraph tower {"]
    for level in range(upto + 1):
        g = atm_graph(tower, level, cap)
        lines.append(f"  subgraph cluster_level_{level} {{")
        lines.append(f'    label="level {level}";')
        for v in range(g.vertex_count):
            lines.append(f"    v{level}_{v};")
        for v, w in sorted(g.edges):
            lab = edge_label(tower, level, (v, w))
            lines.append(f'    v{level}_{v} -> v{level}_{w} [label="{lab}"];')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
