"""Period-set algebra.

Finite sets of fundamental periods are closed under divisors when passing
to subset dynamics and under least common multiples when passing to tuple
dynamics; the functions here compute those closures exactly, together with
the cost-bounded variants that govern size-restricted subset spaces, the
forcing order on periods of interval maps, and the interval trichotomy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

FINITE = "finite"
ALL = "all"
SHARKOVSKII_TAIL = "sharkovskii_tail"


@dataclass(frozen=True)
class PeriodSet:
    """A set of fundamental periods: finite, all naturals, or a forcing tail.

    ``finite`` carries an explicit nonempty frozenset; ``all`` denotes every
    positive integer; ``sharkovskii_tail`` denotes the set of periods forced
    by ``head`` in the interval-map order (head neither 3 nor a power of two,
    those canonicalize to ``all`` and ``finite`` respectively).
    """

    kind: str
    values: frozenset[int] | None = None
    head: int | None = None

    def __post_init__(self):
        if self.kind == FINITE:
            if self.head is not None:
                raise ValueError("finite period set takes no head")
            if not self.values:
                raise ValueError("finite period set must be nonempty")
            vals = frozenset(int(v) for v in self.values)
            if any(v < 1 for v in vals):
                raise ValueError("periods must be positive integers")
            object.__setattr__(self, "values", vals)
        elif self.kind == ALL:
            if self.values is not None or self.head is not None:
                raise ValueError("'all' period set takes no data")
        elif self.kind == SHARKOVSKII_TAIL:
            if self.values is not None:
                raise ValueError("tail period set takes no explicit values")
            if self.head is None or self.head < 1:
                raise ValueError("tail head must be a positive integer")
        else:
            raise ValueError(f"unknown period set kind {self.kind!r}")

    @classmethod
    def finite(cls, values: Iterable[int]) -> "PeriodSet":
        return cls(FINITE, values=frozenset(values))

    @classmethod
    def all_naturals(cls) -> "PeriodSet":
        return cls(ALL)

    @classmethod
    def forcing_tail(cls, head: int) -> "PeriodSet":
        return cls(SHARKOVSKII_TAIL, head=head)

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def __contains__(self, k: int) -> bool:
        if k < 1:
            return False
        if self.kind == FINITE:
            return k in self.values
        if self.kind == ALL:
            return True
        return sharkovskii_forces(self.head, k)

    def sorted_values(self) -> list[int]:
        if self.kind != FINITE:
            raise ValueError("only finite period sets enumerate their values")
        return sorted(self.values)

    def truncate(self, n: int) -> list[int]:
        """Sorted members that are <= n."""
        if self.kind == FINITE:
            return sorted(v for v in self.values if v <= n)
        if self.kind == ALL:
            return list(range(1, n + 1))
        return [k for k in range(1, n + 1) if sharkovskii_forces(self.head, k)]

    def to_json(self) -> dict:
        if self.kind == FINITE:
            return {"kind": FINITE, "values": self.sorted_values()}
        if self.kind == ALL:
            return {"kind": ALL}
        return {"kind": SHARKOVSKII_TAIL, "head": self.head}

    @classmethod
    def from_json(cls, obj: dict) -> "PeriodSet":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("period set JSON must be an object with a 'kind'")
        kind = obj["kind"]
        if kind == FINITE:
            vals = obj.get("values")
            if not isinstance(vals, list):
                raise ValueError("finite period set JSON needs a 'values' list")
            return cls.finite(vals)
        if kind == ALL:
            return cls.all_naturals()
        if kind == SHARKOVSKII_TAIL:
            head = obj.get("head")
            if not isinstance(head, int):
                raise ValueError("tail period set JSON needs an integer 'head'")
            return cls.forcing_tail(head)
        raise ValueError(f"unknown period set kind {kind!r}")


PeriodSetLike = Union[PeriodSet, Iterable[int]]


def _finite_values(s: PeriodSetLike) -> frozenset[int]:
    """Coerce to a plain value set, rejecting non-finite period sets."""
    if isinstance(s, PeriodSet):
        if not s.is_finite:
            raise ValueError("a finite period set is required here")
        return s.values
    vals = frozenset(int(v) for v in s)
    if not vals:
        raise ValueError("period set must be nonempty")
    if any(v < 1 for v in vals):
        raise ValueError("periods must be positive integers")
    return vals


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted."""
    if n < 1:
        raise ValueError("n must be positive")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def divisor_closure(s: PeriodSetLike) -> PeriodSet:
    """Close a finite period set under taking divisors."""
    vals = _finite_values(s)
    out: set[int] = set()
    for v in vals:
        out.update(divisors(v))
    return PeriodSet.finite(out)


def lcm_closure(s: PeriodSetLike) -> PeriodSet:
    """Close a finite period set under least common multiples."""
    vals = set(_finite_values(s))
    frontier = set(vals)
    while frontier:
        fresh = set()
        for a in frontier:
            for b in vals:
                l = math.lcm(a, b)
                if l not in vals and l not in fresh:
                    fresh.add(l)
        vals |= fresh
        frontier = fresh
    return PeriodSet.finite(vals)


def per_finite_formula(s: PeriodSetLike) -> PeriodSet:
    """Period set of the finite-subsets dynamics: lcm closure of the divisor closure.

    The divisor closure survives the lcm closure unchanged: for d dividing
    lcm(a, b) with a, b in the set, d = lcm(gcd(d, a), gcd(d, b)) exhibits d
    as an lcm of divisors already present.
    """
    return lcm_closure(divisor_closure(s))


def per_symmetric_formula(s: PeriodSetLike, n: int) -> PeriodSet:
    """Period set of the subsets-of-size-at-most-n dynamics.

    A period is any lcm(d_1, ..., d_l) where each d_i divides some member
    m_i and the total orbit budget sum(m_i / d_i) stays within n.  Computed
    as cost-bounded reachability: carrying a divisor d of m costs m/d
    points, and costs add when combining via lcm.
    """
    if n < 1:
        raise ValueError("size bound must be >= 1")
    vals = _finite_values(s)
    pair_cost: dict[int, int] = {}
    for m in vals:
        for d in divisors(m):
            c = m // d
            if c <= n and c < pair_cost.get(d, n + 1):
                pair_cost[d] = c
    best = dict(pair_cost)
    frontier = list(pair_cost.items())
    while frontier:
        fresh = []
        for v, cv in frontier:
            for d, cd in pair_cost.items():
                w = math.lcm(v, d)
                cw = cv + cd
                if cw <= n and cw < best.get(w, n + 1):
                    best[w] = cw
                    fresh.append((w, cw))
        frontier = fresh
    if not best:
        # unreachable for valid input: every m in s admits d = m at cost 1
        raise ValueError("empty symmetric period set")
    return PeriodSet.finite(best)


def per_product_formula(s: PeriodSetLike, n: int) -> PeriodSet:
    """Period set of the n-fold product dynamics: lcms of n members (with repetition)."""
    if n < 1:
        raise ValueError("tuple length must be >= 1")
    vals = _finite_values(s)
    cur = set(vals)
    for _ in range(n - 1):
        nxt = {math.lcm(a, m) for a in cur for m in vals}
        if nxt == cur:
            break
        cur = nxt
    return PeriodSet.finite(cur)


def _odd_split(k: int) -> tuple[int, int]:
    """k = 2**a * m with m odd; returns (a, m)."""
    a = (k & -k).bit_length() - 1
    return a, k >> a


def sharkovskii_forces(p: int, q: int) -> bool:
    """Whether a period-p point of a continuous interval map forces period q."""
    if p < 1 or q < 1:
        raise ValueError("periods must be positive")
    if p == q:
        return True
    a, m = _odd_split(p)
    b, u = _odd_split(q)
    if m == 1:
        return u == 1 and b < a
    if u == 1:
        return True
    return a < b or (a == b and m < u)


def sharkovskii_forced(p: int) -> PeriodSet:
    """All periods forced by p.  Finite only when p is a power of two; total only for p = 3."""
    if p < 1:
        raise ValueError("period must be positive")
    a, m = _odd_split(p)
    if m == 1:
        return PeriodSet.finite(1 << j for j in range(a + 1))
    if p == 3:
        return PeriodSet.all_naturals()
    return PeriodSet.forcing_tail(p)


def interval_classifier(identity: bool, square_identity: bool) -> PeriodSet:
    """Period trichotomy for a continuous interval self-map.

    ``identity`` means the map is the identity, ``square_identity`` means its
    square is.  Identity maps have exactly the fixed period; involutions add
    period two; everything else realizes an infinite forced set, reported as
    all naturals.
    """
    if identity and not square_identity:
        raise ValueError("the identity map also has identity square")
    if identity:
        return PeriodSet.finite({1})
    if square_identity:
        return PeriodSet.finite({1, 2})
    return PeriodSet.all_naturals()
