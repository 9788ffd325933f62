"""Newton polygons over exact rationals.

Points are ``(i, v(a_i))`` for a polynomial ``sum a_i z^i``.  A segment of
slope ``s`` and width ``w`` accounts for ``w`` roots of valuation ``-s``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from .valcore import INF, ValExt, fmt_val, is_infinite

__all__ = ["NewtonPolygon", "ValMultiset", "lower_hull", "root_valuations"]


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: Tuple[Tuple[int, Fraction], ...]
    segments: Tuple[Tuple[Fraction, int], ...]

    @property
    def slopes(self) -> List[Fraction]:
        return [s for s, _ in self.segments]

    def value_at(self, x) -> Fraction:
        """Height of the polygon above abscissa x (x within the hull's range)."""
        vs = self.vertices
        if not vs[0][0] <= x <= vs[-1][0]:
            raise ValueError(f"{x} outside [{vs[0][0]}, {vs[-1][0]}]")
        for (x0, y0), (x1, y1) in zip(vs, vs[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * Fraction(x - x0, x1 - x0)
        return vs[0][1]

    def to_json(self) -> dict:
        return {
            "vertices": [[x, fmt_val(y)] for x, y in self.vertices],
            "segments": [[fmt_val(s), w] for s, w in self.segments],
        }


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Iterable[Tuple[int, ValExt]]) -> NewtonPolygon:
    """Lower convex hull (monotone chain) of the finite points.

    Points with y = inf are dropped.  Colinear interior points are not
    vertices.
    """
    pts = []
    seen = set()
    for x, y in points:
        if x in seen:
            raise ValueError(f"duplicate abscissa {x}")
        seen.add(x)
        if not is_infinite(y):
            pts.append((int(x), Fraction(y)))
    if len(pts) < 2:
        raise ValueError("need at least two points with finite ordinate")
    pts.sort()
    hull: List[Tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    segs = tuple(
        ((y1 - y0) / (x1 - x0), x1 - x0)
        for (x0, y0), (x1, y1) in zip(hull, hull[1:])
    )
    return NewtonPolygon(tuple(hull), segs)


@dataclass(frozen=True)
class ValMultiset:
    """Multiset of root valuations.

    ``counts`` maps valuation -> multiplicity (roots equal to 0 appear under
    ``INF``).  ``rational`` holds the valuations coming from width-1
    segments; such a root lies in the coefficient field.
    """

    counts: Dict[ValExt, int]
    rational: FrozenSet[ValExt] = field(default_factory=frozenset)

    @classmethod
    def from_iterable(cls, vals: Iterable[ValExt]) -> "ValMultiset":
        return cls(dict(Counter(vals)))

    def __getitem__(self, v) -> int:
        return self.counts.get(v, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, ValMultiset):
            return self.counts == other.counts
        if isinstance(other, dict):
            return self.counts == other
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.counts.items()))

    def __len__(self) -> int:
        return sum(self.counts.values())

    def items(self):
        return sorted(self.counts.items(), key=lambda kv: kv[0])

    def values(self) -> List[ValExt]:
        return [v for v, _ in self.items()]

    @property
    def zero_roots(self) -> int:
        return self.counts.get(INF, 0)

    def finite_sum(self) -> Fraction:
        return sum((v * m for v, m in self.counts.items() if not is_infinite(v)),
                   Fraction(0))

    def count_where(self, pred) -> int:
        return sum(m for v, m in self.counts.items() if pred(v))

    def to_json(self) -> dict:
        return {fmt_val(v): m for v, m in self.items()}


def root_valuations(points: Sequence[Tuple[int, ValExt]]) -> ValMultiset:
    """Root valuation multiset from ``(i, v(a_i))`` points of a polynomial.

    Trailing coefficients of valuation inf (a_0 = ... = a_{k-1} = 0) give k
    roots equal to zero, recorded under ``INF``.
    """
    pts = sorted((int(i), v) for i, v in points)
    finite = [(i, v) for i, v in pts if not is_infinite(v)]
    if not finite:
        raise ValueError("zero polynomial")
    deg = finite[-1][0]
    low = finite[0][0]
    counts: Counter = Counter()
    rational = set()
    if low > 0:
        counts[INF] += low
    if deg > low:
        poly = lower_hull(finite)
        for slope, width in poly.segments:
            counts[-slope] += width
            if width == 1:
                rational.add(-slope)
    return ValMultiset(dict(counts), frozenset(rational))
