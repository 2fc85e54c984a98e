"""Induced dynamics on spaces of nonempty subsets and of tuples.

Subsets are enumerated as bit vectors (numeric order), so the full subset
space of an n-state system costs 2**n - 1 nodes; every enumeration checks a
configurable cap first and fails loudly instead of thrashing.  Period sets
of the induced maps are found by exhaustive functional-graph cycle
detection, which is the ground truth the closed-form period formulas are
tested against.
"""

from __future__ import annotations

import math
from typing import Callable, Hashable, Iterable

from .errors import CapExceeded
from .finite import FiniteSystem, core, periods
from .algebra import PeriodSet, per_product_formula

DEFAULT_CAP = 1 << 16

_MODES = ("full", "symmetric", "product")


def _as_mask(sys: FiniteSystem, members: Iterable[int]) -> int:
    mask = 0
    for x in members:
        if not 0 <= x < sys.n:
            raise ValueError(f"state {x} outside 0..{sys.n - 1}")
        mask |= 1 << x
    if mask == 0:
        raise ValueError("subset must be nonempty")
    return mask


def _members(mask: int) -> frozenset[int]:
    out = set()
    while mask:
        low = mask & -mask
        out.add(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def _mask_image(sys: FiniteSystem, mask: int) -> int:
    img = 0
    while mask:
        low = mask & -mask
        img |= 1 << sys.table[low.bit_length() - 1]
        mask ^= low
    return img


def image_subset(sys: FiniteSystem, members: Iterable[int]) -> frozenset[int]:
    """Pointwise image of a nonempty subset."""
    return _members(_mask_image(sys, _as_mask(sys, members)))


def subset_cycle(sys: FiniteSystem, members: Iterable[int]) -> tuple[int, int]:
    """(preperiod, period) of a subset under the induced subset map."""
    mask = _as_mask(sys, members)
    seen: dict[int, int] = {}
    t = 0
    while mask not in seen:
        seen[mask] = t
        mask = _mask_image(sys, mask)
        t += 1
    return seen[mask], t - seen[mask]


def is_periodic_subset(sys: FiniteSystem, members: Iterable[int]) -> bool:
    return subset_cycle(sys, members)[0] == 0


def _graph_periods(nodes: Iterable[Hashable], step: Callable) -> set[int]:
    """Fundamental periods of cycles in a functional graph, by iterate-and-mark."""
    done: set[Hashable] = set()
    found: set[int] = set()
    for start in nodes:
        if start in done:
            continue
        pos: dict[Hashable, int] = {}
        path = []
        x = start
        while x not in pos and x not in done:
            pos[x] = len(path)
            path.append(x)
            x = step(x)
        if x not in done:
            found.add(len(path) - pos[x])
        done.update(path)
    return found


def per_full(sys: FiniteSystem, cap: int = DEFAULT_CAP) -> PeriodSet:
    """Period set of the induced map on all nonempty subsets (exhaustive)."""
    count = (1 << sys.n) - 1
    if count > cap:
        raise CapExceeded(count, cap, f"full subset space of {sys.n} states")
    img = [0] * (1 << sys.n)
    bit_img = [1 << sys.table[i] for i in range(sys.n)]
    for mask in range(1, 1 << sys.n):
        low = mask & -mask
        img[mask] = img[mask ^ low] | bit_img[low.bit_length() - 1]
    return PeriodSet.finite(_graph_periods(range(1, 1 << sys.n), img.__getitem__))


def _bounded_masks(n: int, size: int) -> list[int]:
    """Masks of nonempty subsets with at most `size` members, numeric order."""
    out = [m for m in range(1, 1 << n) if m.bit_count() <= size]
    return out


def per_symmetric(sys: FiniteSystem, size: int, cap: int = DEFAULT_CAP) -> PeriodSet:
    """Period set of the induced map on nonempty subsets of at most `size` states."""
    if size is None or size < 1:
        raise ValueError("symmetric mode needs a size bound >= 1")
    count = sum(math.comb(sys.n, j) for j in range(1, min(size, sys.n) + 1))
    if count > cap:
        raise CapExceeded(count, cap, f"subsets of <= {size} of {sys.n} states")
    nodes = _bounded_masks(sys.n, size)
    return PeriodSet.finite(_graph_periods(nodes, lambda m: _mask_image(sys, m)))


def per_product(sys: FiniteSystem, size: int, cap: int = DEFAULT_CAP) -> tuple[PeriodSet, str]:
    """Period set of the coordinatewise map on `size`-tuples.

    Enumerates when the tuple space fits under the cap; otherwise falls back
    to the exact lcm formula over the base periods.  The second return value
    says which route produced the answer ("enumeration" or "formula").
    """
    if size is None or size < 1:
        raise ValueError("product mode needs a tuple length >= 1")
    count = sys.n ** size
    if count <= cap:
        table = sys.table

        def step(t: tuple) -> tuple:
            return tuple(table[x] for x in t)

        nodes = _product_tuples(sys.n, size)
        return PeriodSet.finite(_graph_periods(nodes, step)), "enumeration"
    return per_product_formula(periods(sys), size), "formula"


def _product_tuples(n: int, size: int):
    if size == 1:
        for x in range(n):
            yield (x,)
        return
    for rest in _product_tuples(n, size - 1):
        for x in range(n):
            yield rest + (x,)


def per_induced(sys: FiniteSystem, mode: str, size: int | None = None,
                cap: int = DEFAULT_CAP) -> PeriodSet:
    """Period set of an induced dynamics: mode full, symmetric(size), or product(size)."""
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}")
    if mode == "full":
        return per_full(sys, cap)
    if mode == "symmetric":
        return per_symmetric(sys, size, cap)
    return per_product(sys, size, cap)[0]


def containment_check(sys: FiniteSystem, members: Iterable[int]) -> bool:
    """For a periodic subset, whether no proper iterate is contained in it.

    Subsets violating this would have a smaller fundamental period than
    their orbit length suggests; periodic subsets of induced maps never do,
    because images of a k-periodic set have equal cardinality along the
    whole cycle.  Rejects non-periodic input.
    """
    mask = _as_mask(sys, members)
    pre, k = subset_cycle(sys, members)
    if pre != 0:
        raise ValueError("containment check requires a periodic subset")
    cur = mask
    for _ in range(1, k):
        cur = _mask_image(sys, cur)
        if cur & ~mask == 0:
            return False
    return True


def prime_power_closure_check(s) -> bool:
    """Whether a finite period set is closed under prime-power divisors.

    For every member k and every prime power p**a dividing k (a >= 1), the
    prime power itself must be a member.
    """
    if isinstance(s, PeriodSet):
        if not s.is_finite:
            raise ValueError("prime power closure is a finite-set check")
        vals = s.values
    else:
        vals = frozenset(s)
    for k in vals:
        for p in _prime_factors(k):
            q = p
            while k % q == 0:
                if q not in vals:
                    return False
                q *= p
    return True


def _prime_factors(k: int) -> list[int]:
    out = []
    d = 2
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            while k % d == 0:
                k //= d
        d += 1 if d == 2 else 2
    if k > 1:
        out.append(k)
    return out


def hausdorff_distance(a: Iterable[int], b: Iterable[int], ground):
    """Hausdorff distance between two nonempty subsets under a ground metric table.

    Returns whatever number type the table holds (ints stay ints)."""
    sa, sb = list(a), list(b)
    if not sa or not sb:
        raise ValueError("hausdorff distance needs nonempty sets")
    d_ab = max(min(ground[x][y] for y in sb) for x in sa)
    d_ba = max(min(ground[y][x] for x in sa) for y in sb)
    return max(d_ab, d_ba)


def periodic_subsets_in_core(sys: FiniteSystem, cap: int = DEFAULT_CAP) -> bool:
    """Every periodic subset of the induced map consists of core states only."""
    count = (1 << sys.n) - 1
    if count > cap:
        raise CapExceeded(count, cap, f"full subset space of {sys.n} states")
    core_mask = 0
    for x in core(sys):
        core_mask |= 1 << x
    for mask in range(1, 1 << sys.n):
        if subset_cycle(sys, _members(mask))[0] == 0 and mask & ~core_mask:
            return False
    return True
