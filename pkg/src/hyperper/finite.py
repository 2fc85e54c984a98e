"""Finite dynamical systems: total self-maps of {0..n-1} and their orbit structure."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .rng import SeedStream


@dataclass(frozen=True)
class FiniteSystem:
    """A total self-map of {0..n-1}; table[i] is the image of state i."""

    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("state count must be >= 1")
        table = tuple(self.table)
        if len(table) != self.n:
            raise ValueError(f"table length {len(table)} != state count {self.n}")
        for v in table:
            if not isinstance(v, int) or not 0 <= v < self.n:
                raise ValueError(f"table entry {v!r} outside 0..{self.n - 1}")
        object.__setattr__(self, "table", table)

    def to_json(self) -> dict:
        return {"n": self.n, "map": list(self.table)}

    @classmethod
    def from_json(cls, obj) -> "FiniteSystem":
        if not isinstance(obj, dict):
            raise ValueError("system JSON must be an object")
        n = obj.get("n")
        table = obj.get("map")
        if not isinstance(n, int) or not isinstance(table, list):
            raise ValueError("system JSON needs integer 'n' and list 'map'")
        return cls(n, tuple(table))

    @classmethod
    def loads(cls, text: str) -> "FiniteSystem":
        return cls.from_json(json.loads(text))


def system(table: Iterable[int]) -> FiniteSystem:
    """Build a FiniteSystem from its image table alone."""
    t = tuple(table)
    return FiniteSystem(len(t), t)


def disjoint_cycles(lengths: Iterable[int]) -> FiniteSystem:
    """Disjoint union of cycles with the given lengths."""
    table: list[int] = []
    base = 0
    for length in lengths:
        if length < 1:
            raise ValueError("cycle length must be >= 1")
        table.extend(base + (j + 1) % length for j in range(length))
        base += length
    return system(table)


def iterate(sys: FiniteSystem, x: int, k: int) -> int:
    """k-fold image of state x."""
    if not 0 <= x < sys.n:
        raise ValueError(f"state {x} outside 0..{sys.n - 1}")
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    for _ in range(k):
        x = sys.table[x]
    return x


def core(sys: FiniteSystem) -> frozenset[int]:
    """The eventual image: states lying on cycles."""
    cur = frozenset(range(sys.n))
    while True:
        nxt = frozenset(sys.table[x] for x in cur)
        if nxt == cur:
            return cur
        cur = nxt


@dataclass
class CycleStructure:
    """Cycles in orbit order plus tail lengths of the transient states."""

    cycles: tuple[tuple[int, ...], ...]
    transients: dict[int, int]
    core: frozenset[int]

    @property
    def periods(self) -> frozenset[int]:
        return frozenset(len(c) for c in self.cycles)


def cycle_structure(sys: FiniteSystem) -> CycleStructure:
    """Decompose the system into cycles and transient tails."""
    cyc_states = core(sys)
    seen: set[int] = set()
    cycles: list[tuple[int, ...]] = []
    for s in range(sys.n):
        if s not in cyc_states or s in seen:
            continue
        orbit = [s]
        x = sys.table[s]
        while x != s:
            orbit.append(x)
            x = sys.table[x]
        seen.update(orbit)
        cycles.append(tuple(orbit))
    transients: dict[int, int] = {}
    for s in range(sys.n):
        if s in cyc_states:
            continue
        steps = 0
        x = s
        while x not in cyc_states:
            x = sys.table[x]
            steps += 1
        transients[s] = steps
    return CycleStructure(tuple(cycles), transients, cyc_states)


def periods(sys: FiniteSystem) -> frozenset[int]:
    """Fundamental periods of the system's periodic states."""
    return cycle_structure(sys).periods


def full_orbit(sys: FiniteSystem, x: int) -> Optional[tuple[int, ...]]:
    """The cycle through x, starting at x, or None when x is transient."""
    if not 0 <= x < sys.n:
        raise ValueError(f"state {x} outside 0..{sys.n - 1}")
    if x not in core(sys):
        return None
    orbit = [x]
    y = sys.table[x]
    while y != x:
        orbit.append(y)
        y = sys.table[y]
    return tuple(orbit)


def random_system(seed: int, n: int) -> FiniteSystem:
    """Seeded random self-map on n states."""
    stream = SeedStream(seed)
    return FiniteSystem(n, tuple(stream.below(n) for _ in range(n)))


def random_permutation(seed: int, n: int) -> FiniteSystem:
    """Seeded random permutation of n states."""
    stream = SeedStream(seed)
    table = list(range(n))
    stream.shuffle(table)
    return FiniteSystem(n, tuple(table))
