"""Closed-form answers: multiplicity functions, page tables and wreath cohomology.

Everything here is pure bookkeeping on integers; nothing builds a complex.
The brute-force side lives in :mod:`wreathcoh.equivariant` and
:mod:`wreathcoh.spectral`, and :mod:`wreathcoh.verify` compares the two.

Page tables describe the pages of ``Hom_{C_p}(W, D(n, d))`` with rows in
absolute cohomological degree, so ``D(n, 0)`` occupies rows ``-p..0``.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from itertools import combinations_with_replacement
from math import comb, factorial, gcd
from typing import Iterable, Optional, Sequence

from .equivariant import UnsupportedCaseError, require_prime
from .exactlin import PreconditionError
from .graded import (Family, GradedAbelianGroup, MalformedGroupError, is_power_of, p_part,
                     prime_power_parts)


# ---------------------------------------------------------------------------
# multiplicity functions


def g(p: int, j: int) -> int:
    """Number of copies of ``Z/n`` in row ``-j`` of the type-II ``E_2`` column."""
    if not 0 <= j <= p - 1:
        return 0
    num = (p - 1) * (-1) ** j + comb(p - 1, j)
    if num % p:
        raise PreconditionError(f"g is only integral for prime p; got p={p}")
    return num // p


def f(p: int, j: int) -> int:
    """Rank of the ``C_p``-invariants of ``D(1, 0)`` in degree ``-j``."""
    if j == 0 or j == p:
        return 1
    if 0 < j < p:
        return comb(p, j) // p
    return 0


# ---------------------------------------------------------------------------
# page tables


@dataclass(frozen=True)
class IndexSet:
    """The arithmetic progression ``start, start+step, ...`` stopping at ``stop`` (inclusive)."""

    start: int
    stop: Optional[int] = None  # None: unbounded
    step: int = 1

    @classmethod
    def point(cls, v: int) -> "IndexSet":
        return cls(v, v, 1)

    def contains(self, x: int) -> bool:
        if x < self.start or (self.stop is not None and x > self.stop):
            return False
        return (x - self.start) % self.step == 0

    def values(self, lo: int, hi: int) -> list[int]:
        return [x for x in range(max(lo, self.start), hi + 1) if self.contains(x)]

    def shift(self, k: int) -> "IndexSet":
        return IndexSet(self.start + k, None if self.stop is None else self.stop + k, self.step)

    def __str__(self) -> str:
        if self.stop == self.start:
            return str(self.start)
        stop = "inf" if self.stop is None else str(self.stop)
        return f"{self.start}:{stop}:{self.step}"

    @classmethod
    def parse(cls, text: str) -> "IndexSet":
        parts = str(text).split(":")
        if len(parts) == 1:
            return cls.point(int(parts[0]))
        start, stop, step = parts
        return cls(int(start), None if stop == "inf" else int(stop), int(step))


@dataclass(frozen=True)
class Pattern:
    i: IndexSet
    j: IndexSet
    group: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"i": str(self.i), "j": str(self.j), "group": list(self.group)}


@dataclass(frozen=True)
class Extension:
    """A nonsplit extension between two entries of the same total degree."""

    kernel: tuple[int, int]
    quotient: tuple[int, int]


@dataclass(frozen=True)
class Differential:
    """A family of nonzero ``d_r`` with sources ``(i, source_j)`` for ``i`` in ``source_i``."""

    r: int
    source_i: IndexSet
    source_j: int
    target_shift: tuple[int, int]

    def sources(self, lo: int, hi: int) -> list[tuple[int, int]]:
        return [(i, self.source_j) for i in self.source_i.values(lo, hi)]

    def target(self, i: int, j: int) -> tuple[int, int]:
        return (i + self.target_shift[0], j + self.target_shift[1])


@dataclass(frozen=True)
class PageTable:
    page: int
    kind: str
    patterns: tuple[Pattern, ...]
    collapse_page: Optional[int] = None
    extensions: tuple[Extension, ...] = ()
    differentials: tuple[Differential, ...] = ()
    e_infinity: Optional["PageTable"] = None

    def __post_init__(self):
        # patterns must not overlap on any cell; checked on a generous sample
        seen = {}
        for k, pat in enumerate(self.patterns):
            for i in pat.i.values(0, 60):
                for j in pat.j.values(-200, 200):
                    if (i, j) in seen:
                        raise PreconditionError(f"patterns {seen[(i, j)]} and {k} overlap at {(i, j)}")
                    seen[(i, j)] = k

    def group(self, i: int, j: int) -> tuple[int, ...]:
        for pat in self.patterns:
            if pat.i.contains(i) and pat.j.contains(j):
                return pat.group
        return ()

    def entries(self, cols: tuple[int, int], rows: tuple[int, int]) -> dict:
        """Nonzero cells in the given column and row ranges, as primary decompositions."""
        out = {}
        for i in range(cols[0], cols[1] + 1):
            for j in range(rows[0], rows[1] + 1):
                grp = primary(self.group(i, j))
                if grp:
                    out[(i, j)] = grp
        return out

    def shift_rows(self, k: int) -> "PageTable":
        pats = tuple(Pattern(p.i, p.j.shift(k), p.group) for p in self.patterns)
        ext = tuple(Extension((e.kernel[0], e.kernel[1] + k), (e.quotient[0], e.quotient[1] + k))
                    for e in self.extensions)
        dif = tuple(replace(d, source_j=d.source_j + k) for d in self.differentials)
        inf = self.e_infinity.shift_rows(k) if self.e_infinity is not None else None
        return PageTable(self.page, self.kind, pats, self.collapse_page, ext, dif, inf)

    def to_dict(self) -> dict:
        out = {
            "page": self.page,
            "kind": self.kind,
            "patterns": [p.to_dict() for p in self.patterns],
            "collapse_page": self.collapse_page,
            "extensions": [{"kernel": list(e.kernel), "quotient": list(e.quotient)} for e in self.extensions],
        }
        if self.e_infinity is not None:
            out["e_infinity"] = self.e_infinity.to_dict()
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "PageTable":
        pats = tuple(Pattern(IndexSet.parse(p["i"]), IndexSet.parse(p["j"]), tuple(p["group"]))
                     for p in d["patterns"])
        ext = tuple(Extension(tuple(e["kernel"]), tuple(e["quotient"])) for e in d.get("extensions", []))
        inf = cls.from_dict(d["e_infinity"]) if d.get("e_infinity") else None
        return cls(d.get("page", 2), d.get("kind", "II"), pats, d.get("collapse_page"), ext, (), inf)


def primary(orders: Iterable[int]) -> tuple[int, ...]:
    """Sorted prime-power parts of a list of cyclic orders (0 for Z)."""
    return tuple(sorted(q for o in orders for q in prime_power_parts(o)))


def _grp(*parts: tuple[int, int]) -> tuple[int, ...]:
    """``_grp((order, copies), ...)`` with unit orders dropped."""
    out = []
    for o, k in parts:
        if o != 1 and k > 0:
            out.extend([o] * k)
    return tuple(sorted(out))


def _pt(v: int) -> IndexSet:
    return IndexSet.point(v)


def _check_parity(parity: str) -> None:
    if parity not in ("even", "odd"):
        raise PreconditionError(f"parity must be 'even' or 'odd', got {parity!r}")


def _check_n(n: int) -> None:
    if n < 1:
        raise PreconditionError(f"n must be a positive integer, got {n}")


def row_shift(p: int, d: int) -> tuple[str, int]:
    """Parity class and row shift taking the base table to ``D(n, d)``."""
    if p == 2 and d % 2:
        return "odd", p * (d - 1)
    return ("even", p * d)


def predict_typeII_E2(p: int, n: int, parity: str = "even") -> PageTable:
    """Type-II ``E_2`` for ``D(n, 0)`` (even) or, when ``p = 2``, ``D(n, 1)`` (odd)."""
    require_prime(p)
    _check_n(n)
    _check_parity(parity)
    if p == 2:
        return _typeII_p2(n, parity)
    if parity == "odd":
        raise UnsupportedCaseError("for odd p every D(n, d) is a shift of D(n, 0); use parity 'even'")
    divides = n % p == 0
    pats = []
    inf = []
    for j in range(0, p + 1):
        gj = g(p, j)
        if j % 2 == 0 and j <= p - 3:
            grp = _grp((p * n, 1), (n, gj - 1)) if divides else _grp((p, 1), (n, gj))
        else:
            grp = _grp((n, gj))
        if grp:
            pats.append(Pattern(_pt(0), _pt(-j), grp))
        if _grp((n, gj)):
            inf.append(Pattern(_pt(0), _pt(-j), _grp((n, gj))))
    pats.append(Pattern(IndexSet(2, None, 2), _pt(0), (p,)))
    pats.append(Pattern(IndexSet(2, None, 2), _pt(-p), (p,)))
    if divides:
        return PageTable(2, "II", tuple(pats), 2)
    difs = [Differential(2 * k + 1, _pt(2 * k), -p, (-2 * k, 2 * k + 1)) for k in range(1, (p - 1) // 2 + 1)]
    difs.append(Differential(p, IndexSet(p + 1, None, 2), -p, (1 - p, p)))
    e_inf = PageTable(p + 1, "II", tuple(inf))
    return PageTable(2, "II", tuple(pats), p + 1, (), tuple(difs), e_inf)


def _typeII_p2(n: int, parity: str) -> PageTable:
    even_n = n % 2 == 0
    if parity == "even":
        pats = (Pattern(_pt(0), _pt(0), _grp((2 * n, 1))),
                Pattern(IndexSet(2, None, 2), _pt(0), (2,)),
                Pattern(IndexSet(1, None, 2), _pt(-2), (2,)))
        corner = (_pt(0), _pt(0))
        dif = Differential(2, IndexSet(1, None, 2), -2, (-1, 2))
    else:
        pats = (Pattern(_pt(0), _pt(1), _grp((n, 1))),
                Pattern(IndexSet(1, None, 2), _pt(2), (2,)),
                Pattern(IndexSet(2, None, 2), _pt(0), (2,)))
        corner = (_pt(0), _pt(1))
        dif = Differential(2, IndexSet(2, None, 2), 0, (-1, 2))
    pats = tuple(p for p in pats if p.group)
    if even_n:
        return PageTable(2, "II", pats, 2)
    inf = tuple(p for p in [Pattern(corner[0], corner[1], _grp((n, 1)))] if p.group)
    return PageTable(2, "II", pats, 3, (), (dif,), PageTable(3, "II", inf))


def predict_typeII(p: int, n: int, d: int) -> PageTable:
    """Type-II ``E_2`` for ``D(n, d)`` in absolute row degrees."""
    parity, shift = row_shift(p, d)
    return predict_typeII_E2(p, n, parity).shift_rows(shift)


@dataclass(frozen=True)
class TypeIPrediction:
    E2: PageTable
    E3: PageTable
    extensions: tuple[Extension, ...]

    def shift_rows(self, k: int) -> "TypeIPrediction":
        return TypeIPrediction(self.E2.shift_rows(k), self.E3.shift_rows(k),
                               tuple(Extension((e.kernel[0], e.kernel[1] + k), (e.quotient[0], e.quotient[1] + k))
                                     for e in self.extensions))

    def to_dict(self) -> dict:
        return {"E2": self.E2.to_dict(), "E3": self.E3.to_dict(),
                "extensions": [{"kernel": list(e.kernel), "quotient": list(e.quotient)}
                               for e in self.extensions]}


def predict_typeI_pages(p: int, n: int, parity: str = "even") -> TypeIPrediction:
    """Type-I ``E_2``, ``E_3`` and the nonsplit extensions for ``D(n, 0)`` (or ``D(n, 1)`` at ``p = 2``)."""
    require_prime(p)
    _check_n(n)
    _check_parity(parity)
    if p == 2:
        return _typeI_p2(n, parity)
    if parity == "odd":
        raise UnsupportedCaseError("for odd p every D(n, d) is a shift of D(n, 0); use parity 'even'")
    base = [Pattern(_pt(0), _pt(-j), _grp((n, g(p, j)))) for j in range(p + 1) if _grp((n, g(p, j)))]
    if n % p:
        t = PageTable(2, "I", tuple(base), 2)
        return TypeIPrediction(t, replace(t, page=3), ())
    e2 = []
    for j in range(0, p):
        gj = g(p, j)
        extra = (p, 1) if (j % 2 == 1 and 0 < j < p - 1) else (p, 0)
        grp = _grp((n, gj), extra)
        if grp:
            e2.append(Pattern(_pt(0), _pt(-j), grp))
        e2.append(Pattern(IndexSet(1), _pt(-j), (p,)))
    e3 = list(base)
    e3.append(Pattern(IndexSet(2, None, 2), _pt(0), (p,)))
    e3.append(Pattern(IndexSet(1, None, 2), _pt(1 - p), (p,)))
    for j in range(1, p - 1, 2):
        e3.append(Pattern(_pt(1), _pt(-j), (p,)))
    exts = tuple(Extension((1, -j), (0, 1 - j)) for j in range(1, p - 1, 2))
    difs = []
    for j in range(0, p - 1):
        # d_2 is nonzero out of (i, -j) exactly when i - j is odd
        difs.append(Differential(2, IndexSet(1 if j % 2 == 0 else 0, None, 2), -j, (2, -1)))
    return TypeIPrediction(PageTable(2, "I", tuple(e2), 3, exts, tuple(difs)),
                           PageTable(3, "I", tuple(e3), 3, exts), exts)


def _typeI_p2(n: int, parity: str) -> TypeIPrediction:
    top = 0 if parity == "even" else 1
    if n % 2:
        t = PageTable(2, "I", (Pattern(_pt(0), _pt(top), (n,)),) if n > 1 else (), 2)
        return TypeIPrediction(t, replace(t, page=3), ())
    if parity == "even":
        e2 = (Pattern(_pt(0), _pt(0), (n,)),
              Pattern(IndexSet(0), _pt(-1), (2,)),
              Pattern(IndexSet(1), _pt(0), (2,)))
        e3 = (Pattern(_pt(0), _pt(0), (n,)),
              Pattern(_pt(0), _pt(-1), (2,)),
              Pattern(_pt(1), _pt(-1), (2,)),
              Pattern(IndexSet(2, None, 2), _pt(0), (2,)),
              Pattern(IndexSet(2, None, 2), _pt(-1), (2,)))
        exts = (Extension((1, -1), (0, 0)),)
        difs = (Differential(2, IndexSet(1, None, 2), 0, (2, -1)),)
    else:
        e2 = (Pattern(_pt(0), _pt(1), (n,)),
              Pattern(IndexSet(0), _pt(2), (2,)),
              Pattern(IndexSet(1), _pt(1), (2,)))
        e3 = (Pattern(_pt(0), _pt(1), (n,)),
              Pattern(IndexSet(1, None, 2), _pt(1), (2,)),
              Pattern(IndexSet(1, None, 2), _pt(2), (2,)))
        exts = ()
        difs = (Differential(2, IndexSet(0, None, 2), 2, (2, -1)),)
    return TypeIPrediction(PageTable(2, "I", e2, 3, exts, difs), PageTable(3, "I", e3, 3, exts), exts)


def predict_typeI(p: int, n: int, d: int) -> TypeIPrediction:
    """Type-I prediction for ``D(n, d)`` in absolute row degrees."""
    parity, shift = row_shift(p, d)
    return predict_typeI_pages(p, n, parity).shift_rows(shift)


def predict_sigma_p(p: int, n: int, parity: str = "even") -> PageTable:
    """``E_2`` for the symmetric group ``S_p`` acting on ``C(n, *)^{⊗p}``, ``n`` a power of ``p``.

    Collapses at ``E_2`` with no extension problems.  For ``p = 2`` this is the
    cyclic case.
    """
    require_prime(p)
    _check_parity(parity)
    if not is_power_of(n, p):
        raise PreconditionError(f"n = {n} must be a power of p = {p}")
    if p == 2:
        return predict_typeII_E2(2, n, parity)
    step = 2 * (p - 1)
    if parity == "even":
        pats = (Pattern(_pt(0), _pt(0), _grp((p * n, 1))),
                Pattern(IndexSet(step, None, step), _pt(0), (p,)),
                Pattern(IndexSet(p - 1, None, step), _pt(-p), (p,)))
    else:
        pats = tuple(x for x in (Pattern(_pt(0), _pt(1), _grp((n, 1))),) if x.group) + (
            Pattern(IndexSet(step, None, step), _pt(0), (p,)),
            Pattern(IndexSet(p - 1, None, step), _pt(p), (p,)))
    return PageTable(2, "II", pats, 2)


# ---------------------------------------------------------------------------
# wreath cohomology


@dataclass(frozen=True)
class WreathPrediction:
    result: GradedAbelianGroup
    p: int
    max_degree: int

    def restrict(self, lo: int, hi: int) -> GradedAbelianGroup:
        return self.result.restrict(lo, hi)

    def to_dict(self) -> dict:
        return {"p": self.p, "max_degree": self.max_degree, "result": self.result.to_dict()}


def normalize(H: GradedAbelianGroup, p: int) -> GradedAbelianGroup:
    """Split every order into its ``p``-part and the part prime to ``p``."""
    fams = []
    for fam in H.families:
        if fam.order == 0:
            fams.append(replace(fam, provenance=None))
            continue
        pp = p_part(fam.order, p)
        for o in (pp, fam.order // pp):
            if o > 1:
                fams.append(replace(fam, order=o, provenance=None))
    return GradedAbelianGroup(tuple(fams))


def _tail(start: int, p: int, tag: str) -> Family:
    return Family(start, p, 2 if p > 2 else 1, None, 1, tag)


def _diagonal_odd(n: int, d: int, p: int) -> list[Family]:
    """Summands contributed by one instance ``Z/n`` (``Z`` if 0) in degree ``d``, odd ``p``."""
    out = []
    if n == 0:
        out.append(Family(p * d, 0, provenance="integral"))
        out.append(_tail(p * d + 2, p, "integral"))
    elif n % p:
        for j in range(p):
            if g(p, j):
                out.append(Family(p * d - j, n, multiplicity=g(p, j), provenance="coprime"))
    else:
        for j in range(p):
            gj = g(p, j)
            if j % 2 == 0 and j <= p - 3:
                out.append(Family(p * d - j, p * n, provenance="p-power"))
                gj -= 1
            if gj:
                out.append(Family(p * d - j, n, multiplicity=gj, provenance="p-power"))
        out.append(_tail(p * d + 2, p, "p-power"))
        out.append(_tail(p * (d - 1) + 2, p, "p-power"))
    return out


def _diagonal_two(n: int, d: int) -> list[Family]:
    even = d % 2 == 0
    if n == 0:
        if even:
            return [Family(2 * d, 0, provenance="integral-even"),
                    Family(2 * d + 2, 2, 2, None, 1, "integral-even")]
        return [Family(2 * d + 1, 2, 2, None, 1, "integral-odd")]
    if n % 2:
        if even:
            return [Family(2 * d, n, provenance="odd-order-even")]
        return [Family(2 * d - 1, n, provenance="odd-order-odd")]
    if even:
        return [Family(2 * d, 2 * n, provenance="2-power-even"),
                Family(2 * d - 1, 2, provenance="2-power-even"),
                Family(2 * d + 1, 2, 1, None, 1, "2-power-even")]
    return [Family(2 * d - 1, n, provenance="2-power-odd"),
            Family(2 * d, 2, 1, None, 1, "2-power-odd")]


def diagonal_contribution(n: int, d: int, p: int) -> GradedAbelianGroup:
    """Cohomology of ``Hom_{C_p}(W, D(n, d))``: the contribution of one diagonal cube."""
    require_prime(p)
    if n == 1:
        return GradedAbelianGroup()
    if n < 0:
        raise MalformedGroupError(f"negative order {n}")
    if n and not (is_power_of(n, p) or gcd(n, p) == 1):
        return GradedAbelianGroup(tuple(
            fam for part in (p_part(n, p), n // p_part(n, p))
            for fam in diagonal_contribution(part, d, p).families))
    fams = _diagonal_two(n, d) if p == 2 else _diagonal_odd(n, d, p)
    return GradedAbelianGroup(tuple(fams))


def _instances(H: GradedAbelianGroup, bound: int) -> list[tuple[int, int]]:
    """Summand instances ``(degree, order)`` with degree at most ``bound``, one per copy."""
    out = []
    for fam in H.families:
        for d in fam.degrees(None, bound):
            out.extend([(d, fam.order)] * fam.multiplicity)
    return out


def free_orbit_contribution(H: GradedAbelianGroup, p: int, max_degree: int) -> GradedAbelianGroup:
    """Summands from the cubes that ``C_p`` permutes freely, through ``max_degree``."""
    H = normalize(H, p)
    lo = H.min_degree()
    if lo is None:
        return GradedAbelianGroup()
    # a p-tuple whose other entries sit at the minimum degree bounds each entry
    bound = max_degree + p - 1 - (p - 1) * lo
    inst = _instances(H, bound)
    fams = []
    for combo in combinations_with_replacement(range(len(inst)), p):
        if len(set(combo)) == 1:
            continue
        total = sum(inst[k][0] for k in combo)
        if total - (p - 1) > max_degree:
            continue
        mult = factorial(p)
        for c in Counter(combo).values():
            mult //= factorial(c)
        mult //= p
        orders = [inst[k][1] for k in combo]
        r = sum(1 for o in orders if o)
        gg = 0
        for o in orders:
            gg = gcd(gg, o)
        if gg == 1:
            continue
        if r == 0:
            fams.append(Family(total, 0, multiplicity=mult, provenance="free-orbit"))
            continue
        for j in range(r):
            deg = total - j
            if deg <= max_degree:
                fams.append(Family(deg, gg, multiplicity=mult * comb(r - 1, j), provenance="free-orbit"))
    return GradedAbelianGroup(tuple(fams))


def _split_by_parity(fam: Family) -> list[Family]:
    """Split a family with odd period into two with even period (degree parity then fixed)."""
    if fam.count == 1 or fam.period % 2 == 0:
        return [fam]
    out = []
    for k in (0, 1):
        if fam.count is None:
            cnt = None
        else:
            cnt = (fam.count - k + 1) // 2
            if cnt <= 0:
                continue
        out.append(replace(fam, first_degree=fam.first_degree + k * fam.period,
                           period=2 * fam.period, count=cnt))
    return out


def diagonal_part(H: GradedAbelianGroup, p: int, max_degree: int) -> GradedAbelianGroup:
    """All diagonal-cube contributions, with periodic input families kept periodic."""
    H = normalize(H, p)
    fams = []
    for fam0 in H.families:
        for fam in (_split_by_parity(fam0) if p == 2 else [fam0]):
            local = diagonal_contribution(fam.order, fam.first_degree, p)
            for lf in local.families:
                if lf.count is None:
                    # tails: one per instance whose tail starts in range
                    for d in fam.degrees(None, max_degree):
                        start = lf.first_degree + p * (d - fam.first_degree)
                        if start > max_degree:
                            break
                        fams.append(replace(lf, first_degree=start,
                                            multiplicity=lf.multiplicity * fam.multiplicity))
                else:
                    fams.append(Family(lf.first_degree, lf.order,
                                       p * fam.period if fam.count != 1 else 1, fam.count,
                                       lf.multiplicity * fam.multiplicity, lf.provenance))
    out = [x for x in fams if x.first_degree <= max_degree]
    return GradedAbelianGroup(tuple(out))


def predict_wreath_cohomology(H: GradedAbelianGroup, p: int, max_degree: int) -> WreathPrediction:
    """Additive cohomology of ``Hom_{C_p}(W, C^{⊗p})`` where ``C`` realizes ``H``.

    Exact in every degree up to ``max_degree``; families starting later are
    omitted, and per-instance tails are only produced for instances whose
    tail starts by ``max_degree``.
    """
    require_prime(p)
    if not isinstance(H, GradedAbelianGroup):
        raise MalformedGroupError("input must be a GradedAbelianGroup")
    res = diagonal_part(H, p, max_degree) + free_orbit_contribution(H, p, max_degree)
    return WreathPrediction(res, p, max_degree)


def detection_kernel(H: GradedAbelianGroup, p: int, max_degree: int) -> GradedAbelianGroup:
    """Kernel of restriction to the base group, per finite summand of ``H`` divisible by ``p``."""
    require_prime(p)
    fams = []
    for fam0 in H.families:
        if fam0.order == 0 or fam0.order % p:
            continue
        for fam in (_split_by_parity(fam0) if p == 2 else [fam0]):
            i = fam.first_degree
            per = p * fam.period if fam.count != 1 else 1
            if p == 2:
                if i % 2:
                    continue
                degs = [2 * i]
            else:
                degs = list(range(p * i, p * (i - 1) + 2, -2))
            for deg in degs:
                if deg <= max_degree:
                    fams.append(Family(deg, p, per, fam.count, fam.multiplicity, "detection"))
    return GradedAbelianGroup(tuple(fams))


def detection_kernel_sigma_p(H: GradedAbelianGroup, p: int, max_degree: int) -> GradedAbelianGroup:
    """The symmetric-group analogue: one ``Z/p`` in degree ``2pi`` per summand of ``H^{2i}`` divisible by ``p``."""
    require_prime(p)
    if p == 2:
        return detection_kernel(H, 2, max_degree)
    fams = []
    for fam0 in H.families:
        if fam0.order == 0 or fam0.order % p:
            continue
        for fam in _split_by_parity(fam0):
            if fam.first_degree % 2:
                continue
            deg = p * fam.first_degree
            per = p * fam.period if fam.count != 1 else 1
            if deg <= max_degree:
                fams.append(Family(deg, p, per, fam.count, fam.multiplicity, "detection"))
    return GradedAbelianGroup(tuple(fams))


def coprime_witness(p: int) -> int:
    """Smallest integer above 1 that is prime to ``p``."""
    q = 2
    while gcd(q, p) != 1:
        q += 1
    return q
