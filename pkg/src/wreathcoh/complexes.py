"""Cochain complexes of finitely generated free abelian groups.

A :class:`CochainComplex` stores one rank and one differential per degree
of a finite support ``[lo, hi]``.  Everything outside the support is the
zero module.  Complexes obtained by truncating something infinite carry a
``valid`` range, and :func:`cohomology` refuses to answer outside it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Hashable, Mapping, Optional, Sequence

from .exactlin import (
    IntegerMatrix,
    PreconditionError,
    Subquotient,
    kernel_basis,
)
from .graded import Family, GradedAbelianGroup, MalformedGroupError


@dataclass(frozen=True)
class CochainComplex:
    lo: int
    ranks: tuple[int, ...]
    diffs: tuple[IntegerMatrix, ...]
    labels: tuple[tuple[Hashable, ...], ...]
    valid: Optional[tuple[Optional[int], Optional[int]]] = None
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "diffs", tuple(self.diffs))
        object.__setattr__(self, "labels", tuple(tuple(l) for l in self.labels))
        n = len(self.ranks)
        if len(self.diffs) != n or len(self.labels) != n:
            raise PreconditionError("ranks, diffs and labels must have one entry per degree")
        for k in range(n):
            nxt = self.ranks[k + 1] if k + 1 < n else 0
            if self.diffs[k].shape != (nxt, self.ranks[k]):
                raise PreconditionError(
                    f"differential in degree {self.lo + k} has shape {self.diffs[k].shape}, "
                    f"expected {(nxt, self.ranks[k])}"
                )
            if len(self.labels[k]) != self.ranks[k]:
                raise PreconditionError(f"wrong number of labels in degree {self.lo + k}")
        if self.check:
            for k in range(n - 1):
                if not (self.diffs[k + 1] @ self.diffs[k]).is_zero():
                    raise PreconditionError(f"d∘d is nonzero starting in degree {self.lo + k}")

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def rank(self, m: int) -> int:
        k = m - self.lo
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0

    def differential(self, m: int) -> IntegerMatrix:
        """The matrix of ``d: C^m -> C^{m+1}``."""
        k = m - self.lo
        if 0 <= k < len(self.ranks):
            return self.diffs[k]
        return IntegerMatrix.zeros(self.rank(m + 1), self.rank(m))

    def basis_labels(self, m: int) -> tuple:
        k = m - self.lo
        return self.labels[k] if 0 <= k < len(self.ranks) else ()

    def euler_characteristic(self) -> int:
        return sum((-1) ** m * self.rank(m) for m in self.degrees())

    def is_valid_in(self, lo: int, hi: int) -> bool:
        if self.valid is None:
            return True
        vlo, vhi = self.valid
        return (vlo is None or lo >= vlo) and (vhi is None or hi <= vhi)

    def scaled(self, k: int) -> "CochainComplex":
        """Same groups, differential multiplied by ``k``."""
        return CochainComplex(self.lo, self.ranks, tuple(d.scale(k) for d in self.diffs),
                              self.labels, self.valid, check=False)

    @classmethod
    def zero(cls) -> "CochainComplex":
        return cls(0, (), (), ())

    @classmethod
    def from_maps(cls, lo: int, ranks: Sequence[int], maps: Mapping[int, IntegerMatrix],
                  labels: Optional[Sequence[Sequence[Hashable]]] = None, valid=None,
                  check: bool = True) -> "CochainComplex":
        """Build from a dict ``{degree: d^degree}``; missing differentials are zero."""
        diffs = []
        for k, r in enumerate(ranks):
            nxt = ranks[k + 1] if k + 1 < len(ranks) else 0
            diffs.append(maps.get(lo + k, IntegerMatrix.zeros(nxt, r)))
        if labels is None:
            labels = [tuple(range(r)) for r in ranks]
        return cls(lo, tuple(ranks), tuple(diffs), tuple(tuple(l) for l in labels), valid, check)


@dataclass(frozen=True)
class Cocycle:
    degree: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    def scale(self, k: int) -> "Cocycle":
        return Cocycle(self.degree, tuple(k * c for c in self.coefficients))


def build_cyclic_complex(n: int, i: int) -> CochainComplex:
    """The two-term complex ``Z --n--> Z`` in degrees ``i-1, i`` (just ``Z`` in degree ``i`` if ``n == 0``)."""
    if n < 0:
        raise PreconditionError("order must be nonnegative")
    if n == 0:
        return CochainComplex(i, (1,), (IntegerMatrix.zeros(0, 1),), (("top",),))
    return CochainComplex(
        i - 1, (1, 1),
        (IntegerMatrix.from_rows([[n]]), IntegerMatrix.zeros(0, 1)),
        (("lower",), ("top",)),
    )


def direct_sum(parts: Sequence[CochainComplex]) -> CochainComplex:
    parts = [c for c in parts]
    nonempty = [c for c in parts if c.ranks]
    if not nonempty:
        return CochainComplex.zero()
    if any(c.valid is not None for c in parts):
        raise PreconditionError("direct sums of truncated complexes are not supported")
    lo = min(c.lo for c in nonempty)
    hi = max(c.hi for c in nonempty)
    ranks, diffs, labels = [], [], []
    for m in range(lo, hi + 1):
        ranks.append(sum(c.rank(m) for c in parts))
        labels.append(tuple((k, lab) for k, c in enumerate(parts) for lab in c.basis_labels(m)))
    for m in range(lo, hi + 1):
        rows = [[0] * ranks[m - lo] for _ in range(ranks[m + 1 - lo] if m < hi else 0)]
        r0 = c0 = 0
        for c in parts:
            d = c.differential(m)
            for a in range(d.rows):
                for b in range(d.cols):
                    if d[a, b]:
                        rows[r0 + a][c0 + b] = d[a, b]
            r0 += c.rank(m + 1)
            c0 += c.rank(m)
        diffs.append(IntegerMatrix.from_rows(rows, ranks[m - lo]))
    return CochainComplex(lo, tuple(ranks), tuple(diffs), tuple(labels), check=False)


def _tensor_layout(A: CochainComplex, B: CochainComplex, m: int):
    """Basis of (A⊗B)^m as a list of (a, i, k) plus the offset of each block."""
    basis = []
    offsets = {}
    for a in range(A.lo, A.hi + 1):
        b = m - a
        ra, rb = A.rank(a), B.rank(b)
        if ra and rb:
            offsets[a] = len(basis)
            basis.extend((a, i, k) for i in range(ra) for k in range(rb))
    return basis, offsets


def tensor(A: CochainComplex, B: CochainComplex) -> CochainComplex:
    """Tensor product with ``d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy``."""
    if A.valid is not None or B.valid is not None:
        raise PreconditionError("tensor products of truncated complexes are not supported")
    if not A.ranks or not B.ranks:
        return CochainComplex.zero()
    lo, hi = A.lo + B.lo, A.hi + B.hi
    layouts = {m: _tensor_layout(A, B, m) for m in range(lo, hi + 2)}
    ranks, diffs, labels = [], [], []
    for m in range(lo, hi + 1):
        basis, _ = layouts[m]
        ranks.append(len(basis))
        labels.append(tuple((A.basis_labels(a)[i], B.basis_labels(m - a)[k]) for a, i, k in basis))
    for m in range(lo, hi + 1):
        src, src_off = layouts[m]
        tgt, tgt_off = layouts[m + 1]
        rows = [[0] * len(src) for _ in range(len(tgt) if m < hi else 0)]
        if m < hi:
            for col, (a, i, k) in enumerate(src):
                b = m - a
                rb = B.rank(b)
                dA = A.differential(a)
                if a + 1 in tgt_off:
                    base = tgt_off[a + 1]
                    for i2 in range(dA.rows):
                        c = dA[i2, i]
                        if c:
                            rows[base + i2 * rb + k][col] += c
                dB = B.differential(b)
                if a in tgt_off:
                    base = tgt_off[a]
                    rb1 = B.rank(b + 1)
                    sign = -1 if a % 2 else 1
                    for k2 in range(dB.rows):
                        c = dB[k2, k]
                        if c:
                            rows[base + i * rb1 + k2][col] += sign * c
        diffs.append(IntegerMatrix.from_rows(rows, len(src)))
    return CochainComplex(lo, tuple(ranks), tuple(diffs), tuple(labels))


def tensor_power_basis(C: CochainComplex, p: int, m: int) -> list[tuple[tuple[int, int], ...]]:
    """Basis of (C^{⊗p})^m as tuples of (degree, index) per factor, in lexicographic order."""
    out = []

    def rec(prefix, remaining, k):
        if k == p:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for a in C.degrees():
            # the remaining factors must be able to absorb the rest
            rest = remaining - a
            if rest < (p - k - 1) * C.lo or rest > (p - k - 1) * C.hi:
                continue
            for i in range(C.rank(a)):
                prefix.append((a, i))
                rec(prefix, rest, k + 1)
                prefix.pop()

    if C.ranks:
        rec([], m, 0)
    return out


def tensor_power(C: CochainComplex, p: int) -> tuple[CochainComplex, dict[int, list]]:
    """The ``p``-fold tensor power, with factor bases per degree.

    Basis order and signs agree with ``tensor(C, tensor(C, ...))`` nested to
    the right; labels are flat tuples of the factor labels.
    """
    if p < 1:
        raise PreconditionError("tensor power needs p >= 1")
    if C.valid is not None:
        raise PreconditionError("tensor powers of truncated complexes are not supported")
    if not C.ranks:
        return CochainComplex.zero(), {}
    lo, hi = p * C.lo, p * C.hi
    bases = {m: tensor_power_basis(C, p, m) for m in range(lo, hi + 1)}
    index = {m: {b: k for k, b in enumerate(bs)} for m, bs in bases.items()}
    ranks, diffs, labels = [], [], []
    for m in range(lo, hi + 1):
        ranks.append(len(bases[m]))
        labels.append(tuple(tuple(C.basis_labels(a)[i] for a, i in b) for b in bases[m]))
    for m in range(lo, hi + 1):
        nxt = index.get(m + 1, {})
        rows = [[0] * len(bases[m]) for _ in range(len(nxt))]
        for col, b in enumerate(bases[m]):
            sign = 1
            for pos, (a, i) in enumerate(b):
                d = C.differential(a)
                for i2 in range(d.rows):
                    c = d[i2, i]
                    if c:
                        nb = b[:pos] + ((a + 1, i2),) + b[pos + 1:]
                        rows[nxt[nb]][col] += sign * c
                if a % 2:
                    sign = -sign
        diffs.append(IntegerMatrix.from_rows(rows, len(bases[m])))
    return CochainComplex(lo, tuple(ranks), tuple(diffs), tuple(labels)), bases


def cohomology_subquotient(C: CochainComplex, m: int) -> Subquotient:
    """H^m(C) as a subquotient of C^m with explicit cyclic generators."""
    Z = kernel_basis(C.differential(m))
    B = C.differential(m - 1)
    return Subquotient(Z, B)


def _check_window(C: CochainComplex, lo: int, hi: int) -> None:
    if not C.is_valid_in(lo, hi):
        raise PreconditionError(
            f"window [{lo}, {hi}] leaves the range {C.valid} where this truncated complex is exact"
        )


def cohomology(C: CochainComplex, window: Optional[tuple[int, int]] = None) -> GradedAbelianGroup:
    """Invariant-factor decomposition of H^m(C) for each m in the window."""
    if window is None:
        if C.valid is not None:
            raise PreconditionError("a truncated complex needs an explicit window")
        window = (C.lo, C.hi)
    lo, hi = window
    _check_window(C, lo, hi)
    table = {}
    for m in range(lo, hi + 1):
        if C.rank(m) == 0:
            continue
        table[m] = list(cohomology_subquotient(C, m).factors)
    return GradedAbelianGroup.from_table(table)


def is_cocycle(C: CochainComplex, z: Cocycle) -> bool:
    if len(z.coefficients) != C.rank(z.degree):
        raise PreconditionError(
            f"cocycle has {len(z.coefficients)} coefficients, degree {z.degree} has rank {C.rank(z.degree)}"
        )
    return not any(C.differential(z.degree).apply(z.coefficients))


def cocycle_order(C: CochainComplex, z: Cocycle) -> int:
    """Order of the class of ``z`` in H(C); 0 for infinite order.

    The set of k with ``k·z`` a coboundary is an ideal of Z; its generator is
    read off from the kernel of ``[d^{m-1} | -z]``.
    """
    if not is_cocycle(C, z):
        raise PreconditionError(f"vector in degree {z.degree} is not a cocycle")
    _check_window(C, z.degree, z.degree)
    B = C.differential(z.degree - 1)
    aug = B.hstack(IntegerMatrix.from_columns([[-c for c in z.coefficients]], C.rank(z.degree)))
    K = kernel_basis(aug)
    g = 0
    for j in range(K.cols):
        g = gcd(g, K[K.rows - 1, j])
    return g


def class_coordinates(C: CochainComplex, z: Cocycle) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(factors, coords)`` of the class of ``z`` in the invariant-factor basis of H^m."""
    if not is_cocycle(C, z):
        raise PreconditionError(f"vector in degree {z.degree} is not a cocycle")
    sq = cohomology_subquotient(C, z.degree)
    return sq.factors, sq.coords(z.coefficients)


@dataclass(frozen=True)
class SummandRef:
    """Which summand of a graded group a generator of the split model came from."""

    degree: int
    order: int
    index: int


def expand_summands(H: GradedAbelianGroup, max_degree: int) -> list[SummandRef]:
    """One :class:`SummandRef` per cyclic summand in degrees ``<= max_degree``."""
    out = []
    seen: dict = {}
    for f in H.families:
        for d in f.degrees(None, max_degree):
            for _ in range(f.multiplicity):
                key = (d, f.order)
                k = seen.get(key, 0)
                seen[key] = k + 1
                out.append(SummandRef(d, f.order, k))
    out.sort(key=lambda s: (s.degree, s.order, s.index))
    return out


def complex_from_graded(H: GradedAbelianGroup, max_degree: int) -> CochainComplex:
    """Split model: one ``C(order, degree)`` per summand in degrees up to ``max_degree + 1``."""
    for f in H.families:
        if f.count is None and f.period < 1:
            raise MalformedGroupError("infinite family with nonpositive period")
    refs = expand_summands(H, max_degree + 1)
    parts = [build_cyclic_complex(s.order, s.degree) for s in refs]
    C = direct_sum(parts)
    if not C.ranks:
        return C
    labels = tuple(tuple((refs[k], lab) for k, lab in degree_labels) for degree_labels in C.labels)
    return CochainComplex(C.lo, C.ranks, C.diffs, labels, check=False)


@dataclass(frozen=True)
class ChainMap:
    source: CochainComplex
    target: CochainComplex
    maps: Mapping[int, IntegerMatrix]

    def component(self, m: int) -> IntegerMatrix:
        f = self.maps.get(m)
        if f is None:
            return IntegerMatrix.zeros(self.target.rank(m), self.source.rank(m))
        if f.shape != (self.target.rank(m), self.source.rank(m)):
            raise PreconditionError(f"chain map component in degree {m} has shape {f.shape}")
        return f

    def first_failure(self) -> Optional[int]:
        """First degree where ``f d != d f``, or None for a chain map."""
        lo = min(self.source.lo, self.target.lo) - 1
        hi = max(self.source.hi, self.target.hi)
        for m in range(lo, hi + 1):
            left = self.component(m + 1) @ self.source.differential(m)
            right = self.target.differential(m) @ self.component(m)
            if left != right:
                return m
        return None

    @classmethod
    def identity(cls, C: CochainComplex) -> "ChainMap":
        return cls(C, C, {m: IntegerMatrix.identity(C.rank(m)) for m in C.degrees()})

    @classmethod
    def scalar(cls, C: CochainComplex, k: int) -> "ChainMap":
        return cls(C, C, {m: IntegerMatrix.identity(C.rank(m)).scale(k) for m in C.degrees()})


def induced_map_on_cohomology(f: ChainMap, m: int) -> IntegerMatrix:
    """Matrix of H^m(f) between the invariant-factor bases of :func:`cohomology`."""
    bad = f.first_failure()
    if bad is not None:
        raise PreconditionError(f"not a chain map: fails commuting with d in degree {bad}")
    _check_window(f.source, m, m)
    _check_window(f.target, m, m)
    src = cohomology_subquotient(f.source, m)
    tgt = cohomology_subquotient(f.target, m)
    F = f.component(m)
    cols = [tgt.coords(F.apply(src.generator(k))) for k in range(len(src.factors))]
    return IntegerMatrix.from_columns(cols, len(tgt.factors))
