"""Tri-state calculus of elementary periods of a single orbit.

k is an elementary period when some point far enough back along the orbit,
at an index divisible by k, stays out of the closure of all points at
indices not divisible by k.  Finite budgets (resolution depth, witness
horizon) cannot decide that for arbitrary orbits, so oracles answer
Yes/No/Unknown and a No is only issued when the orbit's structure makes
deeper witnesses redundant.  Each provided instance encodes exact
knowledge of its own closure geometry; nothing here materializes the
infinite index sets.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from . import covers
from .errors import InsufficientDepth, InvariantViolation
from .finite import FiniteSystem, full_orbit


class TriState(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class SymbolicOrbit:
    """Oracle interface over a two-sided orbit x_l, l ranging over all integers.

    in_closure answers whether x_{l0} lies in the closure of
    {x_l : k does not divide l}, distinguished at the given resolution
    depth.  index_shift(t) re-bases the orbit at x_t.  stable_horizon(k)
    returns a bound past which in_closure answers repeat (None when the
    instance cannot bound them); limit_set_separated reports a certified
    separation of x_0 from the orbit's limit set at the given depth.
    """

    def in_closure(self, l0: int, k: int, depth: int) -> TriState:
        raise NotImplementedError

    def index_shift(self, t: int) -> "SymbolicOrbit":
        raise NotImplementedError

    def stable_horizon(self, k: int) -> Optional[int]:
        return None

    def limit_set_separated(self, depth: int) -> bool:
        return False


def per_test(orbit: SymbolicOrbit, k: int, depth: int, horizon: int) -> TriState:
    """Whether k is an elementary period of the orbit, at finite budgets."""
    state, _ = _per_test_with_witness(orbit, k, depth, horizon)
    return state


def _per_test_with_witness(orbit: SymbolicOrbit, k: int, depth: int,
                           horizon: int) -> tuple[TriState, Optional[int]]:
    if k < 1 or depth < 1 or horizon < 1:
        raise ValueError("period, depth and horizon must be positive")
    saw_unknown = False
    for n0 in range(horizon + 1):
        answer = orbit.in_closure(-n0 * k, k, depth)
        if answer is TriState.NO:
            return TriState.YES, n0
        if answer is TriState.UNKNOWN:
            saw_unknown = True
    if saw_unknown:
        return TriState.UNKNOWN, None
    bound = orbit.stable_horizon(k)
    if bound is not None and bound <= horizon:
        return TriState.NO, None
    return TriState.UNKNOWN, None


def per_profile(orbit: SymbolicOrbit, k_max: int, depth: int,
                horizon: int) -> dict[int, TriState]:
    """per_test for every k up to k_max, with witness monotonicity enforced.

    A separation witness at lag N_0 must persist at N_0 + 1; a Yes whose
    witness evaporates indicates a broken oracle, not a property of the
    orbit, and raises.
    """
    profile: dict[int, TriState] = {}
    for k in range(1, k_max + 1):
        state, witness = _per_test_with_witness(orbit, k, depth, horizon)
        if state is TriState.YES and witness is not None:
            again = orbit.in_closure(-(witness + 1) * k, k, depth)
            if again is TriState.YES:
                raise InvariantViolation(
                    f"witness at lag {witness} for k={k} did not persist")
        profile[k] = state
    return profile


def closure_property_check(profile: dict[int, TriState]) -> bool:
    """Yes-set must be divisor-closed and lcm-closed within the profile range."""
    if not profile:
        raise ValueError("empty profile")
    k_max = max(profile)
    if any(v is TriState.UNKNOWN for v in profile.values()):
        raise ValueError("profile has Unknown entries in the checked range")
    yes = {k for k, v in profile.items() if v is TriState.YES}
    for k in yes:
        for d in range(1, k + 1):
            if k % d == 0 and d not in yes:
                return False
    for a in yes:
        for b in yes:
            l = math.lcm(a, b)
            if l <= k_max and l not in yes:
                return False
    return True


def nonrecurrence_certificate(orbit: SymbolicOrbit, depth: int, *,
                              check_up_to: int = 12, horizon: int = 8) -> bool:
    """Certified separation of x_0 from the orbit's limit set.

    When the oracle certifies it, every k must test Yes; that implication
    is cross-checked and a violation raises rather than returning.
    """
    separated = orbit.limit_set_separated(depth)
    if separated:
        profile = per_profile(orbit, check_up_to, depth, horizon)
        bad = [k for k, v in profile.items() if v is not TriState.YES]
        if bad:
            raise InvariantViolation(
                f"separated orbit failed to test Yes at k={bad[:3]}")
    return separated


# ---------------------------------------------------------------------------
# instances

@dataclass(frozen=True)
class PeriodicOrbit(SymbolicOrbit):
    """Orbit of a point on a finite cycle; all answers are exact.

    x_{l0} avoids the closure of the off-k indices exactly when every index
    congruent to l0 mod the cycle length is divisible by k, i.e. when k
    divides both l0 and the period.
    """

    cycle: tuple
    start: int = 0

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must be nonempty")
        if len(set(self.cycle)) != len(self.cycle):
            raise ValueError("cycle points must be distinct")

    @classmethod
    def from_system(cls, sys: FiniteSystem, x: int) -> "PeriodicOrbit":
        orbit = full_orbit(sys, x)
        if orbit is None:
            raise ValueError(f"state {x} is transient, not on a cycle")
        return cls(orbit)

    @property
    def period(self) -> int:
        return len(self.cycle)

    def in_closure(self, l0: int, k: int, depth: int) -> TriState:
        p = len(self.cycle)
        if l0 % k == 0 and p % k == 0:
            return TriState.NO
        return TriState.YES

    def index_shift(self, t: int) -> "PeriodicOrbit":
        return PeriodicOrbit(self.cycle, (self.start + t) % len(self.cycle))

    def stable_horizon(self, k: int) -> Optional[int]:
        # answers depend on l0 only through l0 mod k, and per-test lags
        # are all multiples of k, so every lag answers alike
        return 0


@dataclass(frozen=True)
class OdometerOrbit(SymbolicOrbit):
    """Binary odometer orbit truncated to `digits` binary digits.

    x_l = base + l with carry propagation, cut to the first `digits` bits;
    depth-d cylinders are agreement of the first min(d, digits) bits.  A
    power of two k = 2^a separates exactly the indices divisible by it,
    and only resolutions of at least a bits can see that; any other k has
    multiples arbitrarily deep in every cylinder, so membership holds.
    """

    digits: int
    base: int = 0

    def __post_init__(self):
        if self.digits < 1:
            raise ValueError("odometer needs at least one digit")
        if not 0 <= self.base < (1 << self.digits):
            raise ValueError("base point outside the digit range")

    def point(self, l: int) -> tuple[int, ...]:
        """Bits of x_l, least significant first."""
        v = (self.base + l) % (1 << self.digits)
        return tuple((v >> i) & 1 for i in range(self.digits))

    def in_closure(self, l0: int, k: int, depth: int) -> TriState:
        eff = min(depth, self.digits)
        a = (k & -k).bit_length() - 1
        if (k >> a) > 1:
            return TriState.YES
        if a > eff:
            return TriState.UNKNOWN
        return TriState.NO if l0 % k == 0 else TriState.YES

    def index_shift(self, t: int) -> "OdometerOrbit":
        return OdometerOrbit(self.digits, (self.base + t) % (1 << self.digits))

    def stable_horizon(self, k: int) -> Optional[int]:
        return 0


@dataclass(frozen=True)
class WanderingOrbit(SymbolicOrbit):
    """Abstract orbit with pairwise-separated points and a disjoint limit set.

    Closures of index sets reduce to the index sets themselves, so
    membership holds exactly when the index is hit, and x_0 is certified
    away from the limit set at every resolution.
    """

    origin: int = 0

    def in_closure(self, l0: int, k: int, depth: int) -> TriState:
        return TriState.NO if l0 % k == 0 else TriState.YES

    def index_shift(self, t: int) -> "WanderingOrbit":
        return WanderingOrbit(self.origin + t)

    def stable_horizon(self, k: int) -> Optional[int]:
        return 0

    def limit_set_separated(self, depth: int) -> bool:
        return True


class ThreadOrbit(SymbolicOrbit):
    """Orbit of a tower thread, answered at cylinder resolution.

    Membership scans a finite index window for a cylinder match, so Yes
    answers are certified but absences stay Unknown: a non-fixed thread
    orbit is recurrent at every resolution and no finite window can rule
    membership out.  Only the fixed thread, whose orbit is a single point,
    supports exact No answers.
    """

    def __init__(self, tower: covers.ATMTower, start: covers.Thread,
                 window: int = 48):
        covers.validate_thread(tower, start)
        self.tower = tower
        self.start = start
        self.window = window

    def _coordinate(self, t: int, level: int) -> Optional[int]:
        try:
            return covers.coordinate_after(self.tower, self.start, t, level)
        except InsufficientDepth:
            return None

    def in_closure(self, l0: int, k: int, depth: int) -> TriState:
        if k == 1:
            # no index escapes divisibility by 1: the closure is empty
            return TriState.NO
        level = min(depth, self.start.depth)
        target = self._coordinate(l0, level)
        if target is None:
            return TriState.UNKNOWN
        for l in range(l0 - self.window, l0 + self.window + 1):
            if l % k == 0:
                continue
            got = self._coordinate(l, level)
            if got is not None and got == target:
                return TriState.YES
        # a non-fixed thread orbit recurs at every resolution; a finite
        # window that saw no match proves nothing
        return TriState.NO if self.start.is_fixed else TriState.UNKNOWN

    def index_shift(self, t: int) -> "ThreadOrbit":
        if t >= 0:
            moved = covers.advance(self.tower, self.start, t)
        else:
            moved = covers.rewind(self.tower, self.start, -t)
        return ThreadOrbit(self.tower, moved, self.window)

    def stable_horizon(self, k: int) -> Optional[int]:
        return 0 if self.start.is_fixed else None
