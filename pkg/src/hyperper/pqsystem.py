"""Skew product over the tower dynamics with a mod-p visit counter, and its
mod-q labelled quotient.

The counter tracks time elapsed since the orbit last visited a chosen
clopen set B (a union of level cylinders avoiding the fixed vertex); the
labelled system glues the states over the fixed thread across labels.  The
finite-depth reports here witness the period structure of that system: a
p-cycle on the fixed fiber, a q-cycle of label slices, orbit coverage at a
chosen resolution, and least-invariance of the forward closure of B x {0}.

Long simulations ride the exact unique-successor shortcut from `covers`
(`level_trajectory`), which single-step cross-checks in the tests confirm;
the public `skew_step`/`label_step`/`visit_count` operations keep the
honest one-level-per-step contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .covers import (ATMTower, Thread, cylinder_threads, level_trajectory,
                     minimal_extension, thread_back, thread_step,
                     thread_from_top)
from .errors import InsufficientDepth, InvariantViolation
from .rng import SeedStream


@dataclass(frozen=True)
class ClopenSet:
    """Union of cylinders at one level, given by their vertices."""

    level: int
    vertices: frozenset[int]

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be >= 0")
        if not self.vertices:
            raise ValueError("clopen set must be nonempty")
        object.__setattr__(self, "vertices", frozenset(self.vertices))


@dataclass(frozen=True)
class SkewState:
    thread: Thread
    counter: int


@dataclass(frozen=True)
class LabelState:
    skew: SkewState
    label: int


@dataclass(frozen=True)
class PQSystem:
    """Tower dynamics, reset set B, counter modulus p, label modulus q."""

    tower: ATMTower
    b: ClopenSet
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("p and q must be >= 1")
        if self.b.level > self.tower.depth:
            raise ValueError("B lives deeper than the tower")
        top = self.tower.sizes[self.b.level]
        for v in self.b.vertices:
            if not 0 <= v < top:
                raise ValueError(f"B vertex {v} outside level {self.b.level}")
        if 0 in self.b.vertices:
            raise ValueError("B must avoid the fixed vertex's cylinder")


def make_pq(tower: ATMTower, p: int, q: int, level: int = 1,
            vertices: Optional[Iterable[int]] = None) -> PQSystem:
    """PQSystem with B defaulting to every non-fixed cylinder at the level."""
    if vertices is None:
        vertices = range(1, tower.sizes[level])
    return PQSystem(tower, ClopenSet(level, frozenset(vertices)), p, q)


def in_b(sys: PQSystem, thread: Thread) -> bool:
    if thread.depth < sys.b.level:
        raise InsufficientDepth(
            f"membership in B needs a level-{sys.b.level} coordinate")
    return thread.coords[sys.b.level] in sys.b.vertices


def skew_step(sys: PQSystem, s: SkewState) -> SkewState:
    """Step the thread; reset the counter on landing in B, else count mod p."""
    need = max(sys.b.level, 1) + 1
    if s.thread.depth < need:
        raise InsufficientDepth(f"skew step needs thread depth >= {need}")
    nxt = thread_step(sys.tower, s.thread)
    counter = 0 if in_b(sys, nxt) else (s.counter + 1) % sys.p
    return SkewState(nxt, counter)


def visit_count(sys: PQSystem, thread: Thread, budget: int) -> Optional[int]:
    """Steps back to the latest B-visit; None when the budget can't see one.

    The fixed thread never visits B (vertex 0 is excluded), so it answers
    None at every budget.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if budget > thread.depth - sys.b.level:
        raise InsufficientDepth(
            f"budget {budget} exceeds thread depth minus B level")
    cur = thread
    for k in range(budget + 1):
        if in_b(sys, cur):
            return k
        if k < budget:
            cur = thread_back(sys.tower, cur)
    return None


def glue(sys: PQSystem, s: LabelState) -> LabelState:
    """Canonical representative: states over the fixed thread share label 0."""
    if s.skew.thread.is_fixed and s.label != 0:
        return LabelState(s.skew, 0)
    return s


def label_step(sys: PQSystem, s: LabelState) -> LabelState:
    """Skew step plus label rotation, normalized through the gluing."""
    s = glue(sys, s)
    nxt = skew_step(sys, s.skew)
    return glue(sys, LabelState(nxt, (s.label + 1) % sys.q))


def reachable_states(sys: PQSystem, depth: int, steps: int, *,
                     reps: int = 4, stride: int = 1,
                     seed: int = 0) -> frozenset[tuple[int, int]]:
    """(level-cylinder, counter) pairs hit by skew orbits seeded in B x {0}.

    Seeds cover every B-cylinder (the minimal extension plus seeded random
    extensions, `reps` each); pairs are recorded every `stride` steps.
    Honest stepping, so `depth` must fund all `steps`.
    """
    lvl = sys.b.level
    if steps < 0 or stride < 1:
        raise ValueError("steps must be >= 0 and stride >= 1")
    if depth < steps + max(lvl, 1):
        raise InsufficientDepth(
            f"reachable_states needs depth >= {steps + max(lvl, 1)}")
    if depth > sys.tower.depth:
        raise InsufficientDepth("tower is shallower than the requested depth")
    pairs = set()
    for v in sorted(sys.b.vertices):
        for thread in cylinder_threads(sys.tower, lvl, v, depth, reps, seed):
            state = SkewState(thread, 0)
            if 0 % stride == 0:
                pairs.add((state.thread.coords[lvl], state.counter))
            for t in range(1, steps + 1):
                state = skew_step(sys, state)
                if t % stride == 0:
                    pairs.add((state.thread.coords[lvl], state.counter))
    return frozenset(pairs)


# ---------------------------------------------------------------------------
# verification report

@dataclass(frozen=True)
class PQReport:
    p_cycle: bool
    q_cycle: bool
    coverage: tuple[tuple[int, int, int], ...]  # (m, covered, of)
    least_invariance: bool

    @property
    def all_ok(self) -> bool:
        return (self.p_cycle and self.q_cycle and self.least_invariance
                and all(c == of for _, c, of in self.coverage))

    def to_json(self) -> dict:
        return {
            "p_cycle": self.p_cycle,
            "q_cycle": self.q_cycle,
            "coverage": [{"m": m, "covered": c, "of": of}
                         for m, c, of in self.coverage],
            "least_invariance": self.least_invariance,
        }


def _anchored_thread(tower: ATMTower, level: int, vertex: Optional[int],
                     anchor: int, window: int, stream: SeedStream) -> Thread:
    """Thread whose anchor coordinate tracks `window` steps exactly; when
    `vertex` is given, rejection-sample until the thread lies in its cylinder."""
    span = tower.sizes[anchor] - window - 2
    if span < 1:
        raise InsufficientDepth(f"level {anchor} cannot anchor {window} steps")
    for _ in range(10000):
        thread = thread_from_top(tower, anchor, 1 + stream.below(span))
        if vertex is None or thread.coords[level] == vertex:
            return thread
    raise InvariantViolation(f"cylinder {vertex} rejected 10000 anchored draws")


def _counters(sys: PQSystem, reset_coords: Sequence[int],
              start_counter: Optional[int]) -> list[Optional[int]]:
    """Counter sequence along a coordinate trajectory at B's level.

    None entries mark the transient before the first B-visit when the
    starting counter is undefined.
    """
    out: list[Optional[int]] = []
    cur = start_counter
    for t, c in enumerate(reset_coords):
        if t == 0:
            cur = 0 if c in sys.b.vertices and cur is None else cur
        else:
            cur = 0 if c in sys.b.vertices else (
                None if cur is None else (cur + 1) % sys.p)
        out.append(cur)
    return out


def pq_verify(sys: PQSystem, level: Optional[int] = None,
              depth: Optional[int] = None, budget: int = 200, *,
              m_values: Sequence[int] = (1, 2, 3, 4, 5, 6),
              starts: int = 5, reps: int = 3, seed: int = 2026) -> PQReport:
    """Finite-depth witnesses for the period structure of the labelled system.

    (a) the fixed fiber carries a p-cycle (honest stepping);
    (b) label slices of seeded non-fixed orbits form a q-cycle: all q
        slices of (cylinder, counter) pairs are nonempty and equal;
    (c) per modulus m, the cylinders visited by every (m*q)-th step within
        `budget` samples, reported as the worst coverage over the starts;
    (d) the forward closure of B x {0} sampled every m steps equals the
        full forward closure, at the report resolution.

    `budget` counts samples per start (matching orbit_coverage), so orbits
    run for budget*q*max(m) steps; those long runs use the exact anchored
    trajectories.  `depth` picks the anchor level and defaults to the
    shallowest level that funds the longest run.
    """
    lvl = sys.b.level if level is None else level
    if lvl > sys.tower.depth:
        raise InsufficientDepth("report level deeper than the tower")
    if budget < 1 or starts < 1:
        raise ValueError("budget and starts must be >= 1")
    if not m_values or any(m < 1 for m in m_values):
        raise ValueError("moduli must be positive")
    window = budget * sys.q * max(m_values)
    if depth is None:
        depth = next((w for w in range(max(lvl, sys.b.level) + 1,
                                       sys.tower.depth + 1)
                      if sys.tower.sizes[w] >= window + 4), None)
        if depth is None:
            raise InsufficientDepth(
                f"tower cannot anchor {window}-step trajectories")
    stream = SeedStream(seed)

    # (a) the p-cycle over the fixed fiber, by honest label stepping
    fix_depth = sys.p + max(sys.b.level, 1) + 2
    if fix_depth > sys.tower.depth:
        raise InsufficientDepth(
            f"p-cycle check needs tower depth >= {fix_depth}")
    state = LabelState(SkewState(thread_from_top(sys.tower, fix_depth, 0), 0), 0)
    fiber = [state]
    for _ in range(sys.p):
        state = label_step(sys, state)
        fiber.append(state)
    p_cycle = (
        all(st.skew.thread.is_fixed and st.label == 0 for st in fiber)
        and [st.skew.counter for st in fiber] == list(range(sys.p)) + [0]
    )

    # (b) + (c): seeded non-fixed starts
    q_cycle = True
    worst: dict[int, int] = {m: sys.tower.sizes[lvl] for m in m_values}
    for _ in range(starts):
        thread = _anchored_thread(sys.tower, lvl, None, depth, window, stream)
        coords = level_trajectory(sys.tower, thread, lvl, window)
        reset = (coords if lvl == sys.b.level else
                 level_trajectory(sys.tower, thread, sys.b.level, window))
        counters = _counters(sys, reset, None)
        slices: list[set[tuple[int, int]]] = [set() for _ in range(sys.q)]
        for t, c in enumerate(counters):
            if c is not None:
                slices[t % sys.q].add((coords[t], c))
        if not all(s and s == slices[0] for s in slices):
            q_cycle = False
        for m in m_values:
            hit = {coords[j * m * sys.q] for j in range(budget + 1)}
            worst[m] = min(worst[m], len(hit))

    # (d) least invariance of the forward closure of B x {0}
    inv_window = budget * max(m_values)
    closures: dict[int, set[tuple[int, int]]] = {m: set() for m in m_values}
    closure_full: set[tuple[int, int]] = set()
    for v in sorted(sys.b.vertices):
        for r in range(reps):
            thread = (_anchored_thread(sys.tower, sys.b.level, v, depth,
                                       inv_window, stream)
                      if r else _minimal_anchored(sys, v, depth, inv_window))
            coords = level_trajectory(sys.tower, thread, sys.b.level, inv_window)
            counters = _counters(sys, coords, 0)
            at_lvl = (coords if lvl == sys.b.level else
                      level_trajectory(sys.tower, thread, lvl, inv_window))
            for t in range(inv_window + 1):
                pair = (at_lvl[t], counters[t])
                closure_full.add(pair)
                for m in m_values:
                    if t % m == 0:
                        closures[m].add(pair)
    least_invariance = all(closures[m] == closure_full for m in m_values)

    coverage = tuple((m, worst[m], sys.tower.sizes[lvl]) for m in m_values)
    return PQReport(p_cycle, q_cycle, coverage, least_invariance)


def _minimal_anchored(sys: PQSystem, vertex: int, depth: int,
                      window: int) -> Thread:
    """Smallest-coordinate thread of the cylinder that still anchors the window."""
    thread = minimal_extension(sys.tower, sys.b.level, vertex, depth)
    if thread.coords[depth] + window <= sys.tower.sizes[depth] - 1:
        return thread
    raise InsufficientDepth(f"minimal extension cannot anchor {window} steps")
