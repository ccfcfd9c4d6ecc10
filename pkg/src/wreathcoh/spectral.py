"""Spectral sequences of a double complex, computed page by page on lattices.

Both spectral sequences come from filtrations of the total complex: by row
``j`` for type II (``d_0`` is the horizontal map) and by column ``i`` for
type I (``d_0`` is the vertical map).  For filtration degree ``s`` and
total degree ``m`` the page ``E_r`` is the subquotient of the blocks of
``Tot^m`` with filtration in ``[s, s + r)``::

    Z = { x : the part of dx with filtration < s + r vanishes }
    B = (Z_{r-1} of filtration s + 1) + d(elements of filtration >= s - r + 1
        whose boundary has filtration >= s)

Nothing is reduced modulo a prime, so torsion is exact.  Entries are only
computed where the truncated double complex agrees with the infinite one
in the three total degrees involved, so every reported entry is exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .complexes import CochainComplex
from .equivariant import DoubleComplex, cyclic_power, hom_double_complex
from .exactlin import (IntegerMatrix, PreconditionError, Subquotient, cyclic_homology, image_basis,
                       kernel_basis)


KINDS = ("I", "II")


@dataclass(frozen=True)
class PageEntry:
    i: int
    j: int
    factors: tuple[int, ...]
    target: Optional[tuple[int, int]] = None
    matrix: Optional[IntegerMatrix] = None
    target_factors: tuple[int, ...] = ()

    def order(self) -> int:
        out = 1
        for f in self.factors:
            if f == 0:
                return 0
            out *= f
        return out

    def is_zero(self) -> bool:
        return not self.factors

    def differential_is_zero(self) -> bool:
        if self.matrix is None:
            return True
        for a, f in enumerate(self.target_factors):
            for b in range(self.matrix.cols):
                v = self.matrix[a, b]
                if (v % f if f else v) != 0:
                    return False
        return True


@dataclass(frozen=True)
class SpectralSequencePage:
    r: int
    kind: str
    window: tuple[int, int]  # column range
    entries: dict  # (i, j) -> PageEntry
    certified_region: tuple[int, int]

    def group(self, i: int, j: int) -> tuple[int, ...]:
        e = self.entries.get((i, j))
        return e.factors if e is not None else ()

    def nonzero(self) -> dict:
        return {k: e.factors for k, e in sorted(self.entries.items()) if e.factors}

    def nonzero_differentials(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        out = []
        for (i, j), e in sorted(self.entries.items()):
            if e.factors and e.target is not None and not e.differential_is_zero():
                out.append(((i, j), e.target))
        return out

    def to_dict(self) -> dict:
        ents = []
        for (i, j), e in sorted(self.entries.items()):
            if not e.factors:
                continue
            d = {"i": i, "j": j, "factors": list(e.factors)}
            if e.matrix is not None and e.target is not None and e.matrix.rows:
                d["d_r"] = {"target": list(e.target), "target_factors": list(e.target_factors),
                            "matrix": e.matrix.to_lists()}
            ents.append(d)
        return {"r": self.r, "kind": self.kind, "entries": ents}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict, window=None) -> "SpectralSequencePage":
        entries = {}
        for e in d["entries"]:
            dr = e.get("d_r")
            entries[(e["i"], e["j"])] = PageEntry(
                e["i"], e["j"], tuple(e["factors"]),
                tuple(dr["target"]) if dr else None,
                IntegerMatrix.from_rows(dr["matrix"], len(e["factors"])) if dr else None,
                tuple(dr["target_factors"]) if dr else (),
            )
        cols = [k[0] for k in entries] or [0]
        w = window or (min(cols), max(cols))
        return cls(d["r"], d["kind"], w, entries, w)


class SpectralSequence:
    """Lazily computed pages of one spectral sequence of a double complex."""

    def __init__(self, D: DoubleComplex, kind: str):
        if kind not in KINDS:
            raise PreconditionError(f"kind must be 'I' or 'II', got {kind!r}")
        self.D = D
        self.kind = kind
        self._blocks: dict = {}
        self._diff: dict = {}
        self._pages: dict = {}

    # filtration bookkeeping ------------------------------------------------
    def filtration(self, i: int, j: int) -> int:
        return j if self.kind == "II" else i

    def bidegree(self, s: int, m: int) -> tuple[int, int]:
        return (m - s, s) if self.kind == "II" else (s, m - s)

    def blocks(self, m: int):
        b = self._blocks.get(m)
        if b is None:
            b = self.D.total_blocks(m)
            self._blocks[m] = b
        return b

    def indices(self, m: int, a: int, b: int) -> list[int]:
        """Basis indices of Tot^m with filtration in ``[a, b)``."""
        out = []
        for i, j, off, r in self.blocks(m):
            if a <= self.filtration(i, j) < b:
                out.extend(range(off, off + r))
        return out

    def total_differential(self, m: int) -> IntegerMatrix:
        d = self._diff.get(m)
        if d is None:
            d = self.D.total_differential(m)
            self._diff[m] = d
        return d

    def height(self) -> int:
        """Number of filtration degrees meeting any single total degree."""
        return self.D.row_hi - self.D.row_lo + 1

    def exact_through(self) -> int:
        """Largest total degree whose Tot^{m-1}, Tot^m, Tot^{m+1} are all complete."""
        return self.D.complete_through() - 1

    # the page entries ------------------------------------------------------------
    def subquotient(self, r: int, s: int, m: int) -> tuple[Subquotient, list[int]]:
        key = (r, s, m)
        hit = self._pages.get(key)
        if hit is not None:
            return hit
        if m > self.exact_through():
            raise PreconditionError(
                f"total degree {m} is beyond the certified range (exact through {self.exact_through()}); "
                "increase the truncation column"
            )
        d_m = self.total_differential(m)
        d_prev = self.total_differential(m - 1)
        V = self.indices(m, s, s + r)
        nV = len(V)
        if nV == 0:
            sq = Subquotient(IntegerMatrix.zeros(0, 0), IntegerMatrix.zeros(0, 0))
            self._pages[key] = (sq, V)
            return sq, V
        rows_next = self.indices(m + 1, s, s + r)
        num = kernel_basis(d_m.submatrix(rows_next, V))
        gens = []
        # cycles one filtration deeper
        W1 = self.indices(m, s + 1, s + r)
        if W1:
            K1 = kernel_basis(d_m.submatrix(self.indices(m + 1, s + 1, s + r), W1))
            pos = {g: a for a, g in enumerate(V)}
            for c in range(K1.cols):
                v = [0] * nV
                for a, g in enumerate(W1):
                    v[pos[g]] = K1[a, c]
                gens.append(v)
        # boundaries from below that land in filtration >= s
        low = self.indices(m - 1, s - r + 1, s)
        if low:
            K2 = kernel_basis(d_prev.submatrix(self.indices(m, s - r + 1, s), low))
            if K2.cols:
                img = d_prev.submatrix(V, low) @ K2
                gens.extend(img.columns())
        same = self.indices(m - 1, s, s + r)
        if same:
            gens.extend(d_prev.submatrix(V, same).columns())
        den = IntegerMatrix.from_columns(gens, nV) if gens else IntegerMatrix.zeros(nV, 0)
        if den.cols > nV:
            den = image_basis(den)
        sq = Subquotient(num, den)
        self._pages[key] = (sq, V)
        return sq, V

    def lift(self, m: int, V: list[int], x) -> list[int]:
        v = [0] * self.D.total_rank(m)
        for a, g in enumerate(V):
            v[g] = x[a]
        return v

    def differential_matrix(self, r: int, s: int, m: int) -> tuple[IntegerMatrix, tuple[int, ...]]:
        """Matrix of ``d_r: E_r^{s}(m) -> E_r^{s+r}(m+1)`` and the target factors."""
        src, V = self.subquotient(r, s, m)
        tgt, V2 = self.subquotient(r, s + r, m + 1)
        if not src.factors or not tgt.factors:
            return IntegerMatrix.zeros(len(tgt.factors), len(src.factors)), tgt.factors
        d_m = self.total_differential(m)
        cols = []
        for k in range(len(src.factors)):
            y = d_m.apply(self.lift(m, V, src.generator(k)))
            cols.append(tgt.coords([y[g] for g in V2]))
        return IntegerMatrix.from_columns(cols, len(tgt.factors)), tgt.factors

    def target_bidegree(self, r: int, i: int, j: int) -> tuple[int, int]:
        return (i - r + 1, j + r) if self.kind == "II" else (i + r, j - r + 1)

    def page(self, r: int, window: tuple[int, int], with_differentials: bool = True) -> SpectralSequencePage:
        if r < 1:
            raise PreconditionError("pages start at r = 1")
        c_lo, c_hi = window
        need = required_columns(self.D.row_lo, self.D.row_hi, c_hi)
        if self.D.last_column < need:
            raise PreconditionError(
                f"columns {c_lo}..{c_hi} need the double complex through column {need}, "
                f"it stops at {self.D.last_column}"
            )
        entries = {}
        for i in range(max(0, c_lo), c_hi + 1):
            for j in range(self.D.row_lo, self.D.row_hi + 1):
                m = i + j
                s = self.filtration(i, j)
                sq, _ = self.subquotient(r, s, m)
                target = mat = None
                tf: tuple[int, ...] = ()
                if with_differentials and sq.factors and self._target_has_blocks(r, s, m):
                    target = self.target_bidegree(r, i, j)
                    mat, tf = self.differential_matrix(r, s, m)
                entries[(i, j)] = PageEntry(i, j, sq.factors, target, mat, tf)
        return SpectralSequencePage(r, self.kind, (c_lo, c_hi), entries, (c_lo, c_hi))

    def _target_has_blocks(self, r, s, m) -> bool:
        return bool(self.indices(m + 1, s + r, s + 2 * r))


def required_columns(D_row_lo: int, D_row_hi: int, window_hi: int) -> int:
    """Truncation column needed to compute pages on columns up to ``window_hi``."""
    return max(1, window_hi + (D_row_hi - D_row_lo) + 2)


def pages(D: DoubleComplex, kind: str, r_max: int, window: tuple[int, int],
          r_min: int = 1) -> list[SpectralSequencePage]:
    ss = SpectralSequence(D, kind)
    return [ss.page(r, window) for r in range(r_min, r_max + 1)]


def e_infinity(D: DoubleComplex, kind: str, window: tuple[int, int]) -> SpectralSequencePage:
    """The stable page; every differential from page ``height + 1`` on leaves the filtration range."""
    ss = SpectralSequence(D, kind)
    r = ss.height() + 1
    return ss.page(r, window, with_differentials=False)


def page_homology(ss: SpectralSequence, r: int, i: int, j: int) -> tuple[int, ...]:
    """Homology of ``E_r`` at ``(i, j)`` under ``d_r``, computed from the differential matrices."""
    s = ss.filtration(i, j)
    m = i + j
    middle = ss.subquotient(r, s, m)[0].factors
    if not middle:
        return ()
    out_mat, tgt_f = ss.differential_matrix(r, s, m)
    in_mat, _ = ss.differential_matrix(r, s - r, m - 1)
    src_f = ss.subquotient(r, s - r, m - 1)[0].factors
    return cyclic_homology(in_mat, src_f, middle, out_mat, tgt_f).factors


# ---------------------------------------------------------------------------
# Scaled differentials


@dataclass
class ScaledDifferentialReport:
    n: int
    r: int
    verified: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        if self.inconclusive and not self.verified:
            return "inconclusive"
        return "pass"

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "status": self.status,
                "verified": [list(b) for b in self.verified],
                "failures": self.failures,
                "inconclusive": [list(b) for b in self.inconclusive]}


def check_scaled_pair(base: DoubleComplex, scaled: DoubleComplex, n: int, r: int,
                      window: tuple[int, int]) -> ScaledDifferentialReport:
    """Compare type-II ``d_r`` of ``base`` and of ``scaled`` (vertical maps times ``n``).

    For each generator ``x`` of ``E_r`` of the base, its row components form
    a zig-zag ``x_1, …, x_r``; ``y = sum n^{k-1} x_k`` must survive to page
    ``r`` of the scaled complex and satisfy ``d~_r(y) = n^r d_r(x)`` both as
    vectors and as classes.
    """
    if (base.row_lo, base.row_hi, base.last_column) != (scaled.row_lo, scaled.row_hi, scaled.last_column):
        raise PreconditionError("the two double complexes have different shapes")
    for j in range(base.row_lo, base.row_hi + 1):
        for par in (0, 1):
            if base.horizontal(par, j) != scaled.horizontal(par, j):
                raise PreconditionError(f"horizontal maps differ in row {j}")
        if base.vertical(0, j).scale(n) != scaled.vertical(0, j):
            raise PreconditionError(f"vertical map in row {j} is not {n} times the base one")
    A = SpectralSequence(base, "II")
    B = SpectralSequence(scaled, "II")
    report = ScaledDifferentialReport(n, r)
    c_lo, c_hi = window
    for i in range(max(0, c_lo), c_hi + 1):
        for j in range(base.row_lo, base.row_hi + 1):
            m = i + j
            if m + 1 > A.exact_through():
                report.inconclusive.append((i, j))
                continue
            sq, V = A.subquotient(r, j, m)
            if not sq.factors:
                continue
            sq2, V2 = B.subquotient(r, j, m)
            tsq, TV = B.subquotient(r, j + r, m + 1)
            ok = True
            dA = A.total_differential(m)
            dB = B.total_differential(m)
            # row-position of each basis index of Tot^m
            row_of = {}
            for bi, bj, off, rk in A.blocks(m):
                for k in range(off, off + rk):
                    row_of[k] = bj
            for k in range(len(sq.factors)):
                x = A.lift(m, V, sq.generator(k))
                y = [c * n ** (row_of[g] - j) if c else 0 for g, c in enumerate(x)]
                dy = dB.apply(y)
                dx = dA.apply(x)
                low = A.indices(m + 1, j, j + r)
                if any(dy[g] for g in low):
                    ok = False
                    report.failures.append({"bidegree": [i, j], "reason": "scaled zig-zag does not close"})
                    break
                top = A.indices(m + 1, j + r, j + r + 1)
                if any(dy[g] != n ** r * dx[g] for g in top):
                    ok = False
                    report.failures.append({"bidegree": [i, j], "reason": "d~_r(y) != n^r d_r(x)"})
                    break
                # class level: the engine's matrix agrees with the zig-zag value
                if tsq.factors:
                    mat, tf = B.differential_matrix(r, j, m)
                    cy = sq2.coords([y[g] for g in V2])
                    via_matrix = [sum(mat[a, b] * cy[b] for b in range(mat.cols)) for a in range(mat.rows)]
                    via_matrix = [v % f if f else v for v, f in zip(via_matrix, tf)]
                    direct = tsq.coords([dy[g] for g in TV])
                    if tuple(via_matrix) != tuple(direct):
                        ok = False
                        report.failures.append({"bidegree": [i, j], "reason": "class-level mismatch"})
                        break
            if ok:
                report.verified.append((i, j))
    return report


def check_scaled_differential(C: CochainComplex, n: int, r: int, window: tuple[int, int],
                              p: int = 3) -> ScaledDifferentialReport:
    """Run :func:`check_scaled_pair` for ``C^{⊗p}`` against ``(C scaled by n)^{⊗p}``.

    ``C`` should have unit differentials (for example ``C(1, i)``), so that
    scaling by ``n`` gives ``C(n, i)``.
    """
    base_E = cyclic_power(C, p)
    scaled_E = cyclic_power(C.scaled(n), p)
    lo, hi = C.lo * p, C.hi * p
    last = required_columns(lo, hi, window[1])
    base = hom_double_complex(base_E, last)
    scaled = hom_double_complex(scaled_E, last)
    return check_scaled_pair(base, scaled, n, r, window)
