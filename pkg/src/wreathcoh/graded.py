"""Graded abelian groups described by periodic families of cyclic summands.

A :class:`Family` stands for ``multiplicity`` copies of ``Z/order`` in each
of the degrees ``first_degree + k * period`` for ``0 <= k < count``
(``count=None`` means the family never stops).  Order 0 is the infinite
cyclic group.

Two groups are compared as abstract graded groups, i.e. after splitting
every order into prime powers, so ``Z/6`` in one description matches
``Z/2 + Z/3`` in another.
"""
from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from math import gcd
from typing import Iterable, Iterator, Mapping, Optional, Sequence


class MalformedGroupError(ValueError):
    """Raised for group descriptions that violate the family invariants."""


def prime_power_parts(n: int) -> list[int]:
    """Split ``n`` into its prime-power factors; ``0`` stays ``[0]`` and ``1`` gives ``[]``."""
    if n == 0:
        return [0]
    if n < 0:
        raise MalformedGroupError(f"negative order {n}")
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            pp = 1
            while n % q == 0:
                n //= q
                pp *= q
            out.append(pp)
        q += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    """Largest power of ``p`` dividing ``n`` (``n > 0``)."""
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def is_power_of(n: int, p: int) -> bool:
    return n >= 1 and p_part(n, p) == n


@dataclass(frozen=True, order=True)
class Family:
    first_degree: int
    order: int
    period: int = 1
    count: Optional[int] = 1  # None means infinitely many
    multiplicity: int = 1
    provenance: Optional[str] = None

    def __post_init__(self):
        if self.order < 0 or self.order == 1:
            raise MalformedGroupError(f"invalid summand order {self.order}")
        if self.multiplicity < 1:
            raise MalformedGroupError(f"multiplicity must be positive, got {self.multiplicity}")
        if self.count is not None and self.count < 1:
            raise MalformedGroupError(f"count must be positive, got {self.count}")
        if self.count == 1:
            if self.period != 1:
                object.__setattr__(self, "period", 1)
        elif self.period < 1:
            raise MalformedGroupError(
                f"family starting in degree {self.first_degree} has period {self.period}"
            )

    @property
    def infinite(self) -> bool:
        return self.count is None

    @property
    def last_degree(self) -> Optional[int]:
        return None if self.count is None else self.first_degree + (self.count - 1) * self.period

    def degrees(self, lo: Optional[int] = None, hi: Optional[int] = None) -> Iterator[int]:
        """Degrees of this family inside ``[lo, hi]``; ``hi`` is required for infinite families."""
        last = self.last_degree
        if last is None:
            if hi is None:
                raise MalformedGroupError("cannot enumerate an infinite family without an upper bound")
            last = hi
        elif hi is not None:
            last = min(last, hi)
        start = self.first_degree
        if lo is not None and lo > start:
            k = -((start - lo) // self.period)
            start += k * self.period
        d = start
        while d <= last:
            yield d
            d += self.period

    def restrict(self, lo: int, hi: int) -> Optional["Family"]:
        degs = list(self.degrees(lo, hi))
        if not degs:
            return None
        return replace(self, first_degree=degs[0], count=len(degs),
                       period=self.period if len(degs) > 1 else 1)

    def to_dict(self) -> dict:
        out = {
            "first_degree": self.first_degree,
            "period": self.period,
            "count": "inf" if self.count is None else self.count,
            "order": self.order,
            "multiplicity": self.multiplicity,
        }
        if self.provenance is not None:
            out["provenance"] = self.provenance
        return out

    @classmethod
    def from_dict(cls, d: Mapping) -> "Family":
        try:
            count = d.get("count", 1)
            if count == "inf":
                count = None
            elif not isinstance(count, int):
                raise MalformedGroupError(f"bad count {count!r}")
            return cls(
                first_degree=int(d["first_degree"]),
                order=int(d["order"]),
                period=int(d.get("period", 1)),
                count=count,
                multiplicity=int(d.get("multiplicity", 1)),
                provenance=d.get("provenance"),
            )
        except KeyError as exc:
            raise MalformedGroupError(f"family is missing field {exc}") from None


def _sort_key(f: Family):
    return (f.first_degree, f.order, f.period, f.count is None, f.count or 0,
            f.multiplicity, f.provenance or "")


def _canonical(families: Iterable[Family]) -> tuple[Family, ...]:
    # merge families that differ only in multiplicity
    merged: dict = {}
    for f in families:
        key = (f.first_degree, f.order, f.period, f.count, f.provenance)
        merged[key] = merged.get(key, 0) + f.multiplicity
    fams = [Family(a, o, per, c, m, prov) for (a, o, per, c, prov), m in merged.items()]
    # chain families that continue one another with the same step
    changed = True
    while changed:
        changed = False
        fams.sort(key=_sort_key)
        for x in range(len(fams)):
            f = fams[x]
            if f.count is None:
                continue
            for y in range(len(fams)):
                g = fams[y]
                if x == y or g.order != f.order or g.multiplicity != f.multiplicity \
                        or g.provenance != f.provenance:
                    continue
                step = None
                if f.count > 1 and (g.count == 1 or g.period == f.period):
                    step = f.period
                elif f.count == 1 and g.count != 1 and g.first_degree > f.first_degree:
                    step = g.period
                if step is None or g.first_degree != f.last_degree + step:
                    continue
                if f.count == 1 and g.count == 1:
                    continue
                new_count = None if g.count is None else f.count + g.count
                new = Family(f.first_degree, f.order, step, new_count, f.multiplicity, f.provenance)
                fams = [h for k, h in enumerate(fams) if k not in (x, y)] + [new]
                changed = True
                break
            if changed:
                break
    fams.sort(key=_sort_key)
    return tuple(fams)


@dataclass(frozen=True)
class GradedAbelianGroup:
    families: tuple[Family, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "families", _canonical(self.families))

    # construction ---------------------------------------------------------
    @classmethod
    def from_table(cls, table: Mapping[int, Iterable[int]], provenance: Optional[str] = None) -> "GradedAbelianGroup":
        """Build a finite group from ``{degree: [orders]}``; orders equal to 1 are dropped."""
        fams = []
        for deg, orders in table.items():
            for o, m in Counter(o for o in orders if o != 1).items():
                fams.append(Family(deg, o, 1, 1, m, provenance))
        return cls(tuple(fams))

    @classmethod
    def single(cls, degree: int, order: int, multiplicity: int = 1) -> "GradedAbelianGroup":
        return cls((Family(degree, order, 1, 1, multiplicity),))

    def __add__(self, other: "GradedAbelianGroup") -> "GradedAbelianGroup":
        return GradedAbelianGroup(self.families + other.families)

    def shift(self, k: int) -> "GradedAbelianGroup":
        return GradedAbelianGroup(tuple(replace(f, first_degree=f.first_degree + k) for f in self.families))

    def without_provenance(self) -> "GradedAbelianGroup":
        return GradedAbelianGroup(tuple(replace(f, provenance=None) for f in self.families))

    # queries --------------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return all(f.count is not None for f in self.families)

    def is_zero(self) -> bool:
        return not self.families

    def min_degree(self) -> Optional[int]:
        return min((f.first_degree for f in self.families), default=None)

    def max_degree(self) -> Optional[int]:
        """Largest degree carrying a summand; ``None`` if empty or unbounded."""
        if not self.is_finite or not self.families:
            return None
        return max(f.last_degree for f in self.families)

    def restrict(self, lo: int, hi: int) -> "GradedAbelianGroup":
        fams = [r for f in self.families if (r := f.restrict(lo, hi)) is not None]
        return GradedAbelianGroup(tuple(fams))

    def degree_table(self, lo: int, hi: int) -> dict[int, list[int]]:
        """``{degree: sorted orders}`` for the nonzero degrees in ``[lo, hi]``."""
        table: dict[int, list[int]] = defaultdict(list)
        for f in self.families:
            for d in f.degrees(lo, hi):
                table[d].extend([f.order] * f.multiplicity)
        return {d: sorted(v) for d, v in sorted(table.items())}

    def primary_table(self, lo: int, hi: int) -> dict[int, list[int]]:
        """Like :meth:`degree_table` but with every order split into prime powers."""
        out = {}
        for d, orders in self.degree_table(lo, hi).items():
            parts = sorted(q for o in orders for q in prime_power_parts(o))
            if parts:
                out[d] = parts
        return out

    def summands(self, degree: int) -> list[int]:
        return self.degree_table(degree, degree).get(degree, [])

    def order_in_degree(self, degree: int) -> int:
        """Order of the degree-``degree`` part; 0 if it is infinite."""
        out = 1
        for o in self.summands(degree):
            if o == 0:
                return 0
            out *= o
        return out

    def same_on_window(self, other: "GradedAbelianGroup", lo: int, hi: int) -> bool:
        return self.primary_table(lo, hi) == other.primary_table(lo, hi)

    def equivalent(self, other: "GradedAbelianGroup") -> bool:
        """Isomorphism as graded groups, decided on a window that covers the periodic tails."""
        fams = self.families + other.families
        if not fams:
            return True
        lo = min(f.first_degree for f in fams)
        hi = max(f.first_degree if f.count is None else f.last_degree for f in fams)
        per = 1
        for f in fams:
            if f.count is None:
                per = per * f.period // gcd(per, f.period)
        return self.same_on_window(other, lo, hi + per)

    def window_diff(self, other: "GradedAbelianGroup", lo: int, hi: int) -> list[dict]:
        """Per-degree differences between the primary decompositions on ``[lo, hi]``."""
        a, b = self.primary_table(lo, hi), other.primary_table(lo, hi)
        out = []
        for d in sorted(set(a) | set(b)):
            if a.get(d, []) != b.get(d, []):
                out.append({"degree": d, "left": a.get(d, []), "right": b.get(d, [])})
        return out

    # serialization -------------------------------------------------------------
    def to_dict(self) -> dict:
        return {"families": [f.to_dict() for f in self.families]}

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d: Mapping) -> "GradedAbelianGroup":
        if not isinstance(d, Mapping) or "families" not in d:
            raise MalformedGroupError("group JSON must be an object with a 'families' list")
        fams = d["families"]
        if not isinstance(fams, list):
            raise MalformedGroupError("'families' must be a list")
        return cls(tuple(Family.from_dict(f) for f in fams))

    @classmethod
    def from_json(cls, text: str) -> "GradedAbelianGroup":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedGroupError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    def describe(self, lo: Optional[int] = None, hi: Optional[int] = None) -> str:
        """Human-readable table, one line per degree."""
        if lo is None:
            lo = self.min_degree() or 0
        if hi is None:
            hi = self.max_degree()
            if hi is None:
                hi = lo + 20
        lines = []
        for d, orders in self.degree_table(lo, hi).items():
            lines.append(f"{d:>4}  {format_orders(orders)}")
        return "\n".join(lines) if lines else "(zero)"


def format_orders(orders: Sequence[int]) -> str:
    if not orders:
        return "0"
    parts = []
    for o, m in sorted(Counter(orders).items(), key=lambda t: (t[0] == 0, t[0])):
        name = "Z" if o == 0 else f"Z/{o}"
        parts.append(name if m == 1 else f"({name})^{m}")
    return " + ".join(parts)
