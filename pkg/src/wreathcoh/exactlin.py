"""Exact integer linear algebra.

Everything here works with Python ints, so there is no overflow and no
modular shortcut anywhere on the reference path.  Matrices are immutable
:class:`IntegerMatrix` values; the algorithms copy them into lists of lists,
mutate the copies and wrap the result again.

The Smith normal form pivots on the entry of smallest absolute value in the
remaining block (ties broken by lowest row, then lowest column), so the
transforms it returns are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional, Sequence


class PreconditionError(ValueError):
    """An input violates the documented contract of an operation."""


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]  # row-major

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise PreconditionError("matrix shape must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise PreconditionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise PreconditionError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntegerMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls.diagonal([1] * n)

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None) -> "IntegerMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for k, v in enumerate(values):
            data[k][k] = v
        return cls.from_rows(data, cols)

    # access --------------------------------------------------------------
    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [list(self.column(j)) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    # arithmetic ------------------------------------------------------------
    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise PreconditionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append([sum(a * b for a, b in zip(r, c) if a and b) for c in ocols])
        return IntegerMatrix.from_rows(out, other.cols)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.cols:
            raise PreconditionError(f"vector of length {len(vector)} for {self.shape} matrix")
        return tuple(
            sum(a * b for a, b in zip(self.row(i), vector) if a and b) for i in range(self.rows)
        )

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.shape != other.shape:
            raise PreconditionError("shape mismatch in addition")
        return IntegerMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "IntegerMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(self.columns(), self.rows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(
            [[self.entries[i * self.cols + j] for j in col_idx] for i in row_idx], len(col_idx)
        )

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.rows != other.rows:
            raise PreconditionError("row count mismatch in hstack")
        return IntegerMatrix.from_rows(
            [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)], self.cols + other.cols
        )

    def vstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.cols:
            raise PreconditionError("column count mismatch in vstack")
        return IntegerMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise PreconditionError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_lists()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.to_lists()!r})" if self.rows else f"IntegerMatrix.zeros(0, {self.cols})"


@dataclass(frozen=True)
class CyclicDecomposition:
    """Invariant factors of a finitely generated abelian group.

    ``0`` stands for an infinite cyclic factor.  Finite factors come first,
    each dividing the next; the infinite ones follow.
    """

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        finite = [f for f in self.factors if f]
        if any(f < 0 for f in self.factors):
            raise PreconditionError("factors must be nonnegative")
        if any(f == 1 for f in self.factors):
            raise PreconditionError("trivial factor 1 in a cyclic decomposition")
        if any(b % a for a, b in zip(finite, finite[1:])):
            raise PreconditionError(f"finite factors {finite} not in divisibility order")
        if list(self.factors) != finite + [0] * (len(self.factors) - len(finite)):
            raise PreconditionError("infinite factors must follow the finite ones")

    @property
    def rank(self) -> int:
        return sum(1 for f in self.factors if f == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f)

    def order(self) -> int:
        """Group order; 0 when the group is infinite."""
        if self.rank:
            return 0
        out = 1
        for f in self.factors:
            out *= f
        return out

    def is_trivial(self) -> bool:
        return not self.factors

    def __len__(self) -> int:
        return len(self.factors)


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class _SmithResult:
    diag: list[int]
    rank: int
    u: Optional[list[list[int]]]
    u_inv: Optional[list[list[int]]]
    vt: Optional[list[list[int]]]  # V stored by columns
    vt_inv: Optional[list[list[int]]]  # V^{-1} stored by columns
    s: list[list[int]] = field(repr=False, default_factory=list)


def _identity_lists(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _smith(a: list[list[int]], m: int, n: int, want_u: bool = True, want_v: bool = True,
           want_inverses: bool = False) -> _SmithResult:
    """Reduce ``a`` (mutated in place) to Smith form, tracking U and V."""
    u = _identity_lists(m) if want_u else None
    ui = _identity_lists(m) if (want_u and want_inverses) else None
    vt = _identity_lists(n) if want_v else None
    vti = _identity_lists(n) if (want_v and want_inverses) else None

    def row_add(dst: int, src: int, c: int) -> None:
        # row_dst += c * row_src
        rd, rs = a[dst], a[src]
        for j in range(n):
            if rs[j]:
                rd[j] += c * rs[j]
        if u is not None:
            ud, us = u[dst], u[src]
            for j in range(m):
                if us[j]:
                    ud[j] += c * us[j]
        if ui is not None:
            # inverse: column_src -= c * column_dst
            for row in ui:
                if row[dst]:
                    row[src] -= c * row[dst]

    def row_swap(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        if u is not None:
            u[i], u[k] = u[k], u[i]
        if ui is not None:
            for row in ui:
                row[i], row[k] = row[k], row[i]

    def row_neg(i: int) -> None:
        a[i] = [-x for x in a[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]
        if ui is not None:
            for row in ui:
                row[i] = -row[i]

    def col_add(dst: int, src: int, c: int) -> None:
        # col_dst += c * col_src
        for row in a:
            if row[src]:
                row[dst] += c * row[src]
        if vt is not None:
            vd, vs = vt[dst], vt[src]
            for j in range(n):
                if vs[j]:
                    vd[j] += c * vs[j]
        if vti is not None:
            # V^{-1}: row_src -= c * row_dst, stored by columns
            for col in vti:
                if col[dst]:
                    col[src] -= c * col[dst]

    def col_swap(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        if vt is not None:
            vt[j], vt[k] = vt[k], vt[j]
        if vti is not None:
            for col in vti:
                col[j], col[k] = col[k], col[j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            piv = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // piv
                    if q:
                        row_add(i, t, -q)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // piv
                    if q:
                        col_add(j, t, -q)
                    if a[t][j]:
                        clean = False
            if not clean:
                # smallest remainder becomes the new pivot
                cand = [(abs(a[i][t]), 0, i) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), 1, j) for j in range(t + 1, n) if a[t][j]]
                _, kind, k = min(cand)
                if kind == 0:
                    row_swap(k, t)
                else:
                    col_swap(k, t)
                continue
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            row_neg(t)
        t += 1
    diag = [a[k][k] for k in range(t)]
    return _SmithResult(diag=diag, rank=t, u=u, u_inv=ui, vt=vt, vt_inv=vti, s=a)


def smith_normal_form(M: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(U, S, V)`` with ``U @ M @ V == S`` and S in Smith form."""
    m, n = M.shape
    res = _smith(M.to_lists(), m, n)
    U = IntegerMatrix.from_rows(res.u, m)
    V = IntegerMatrix.from_columns(res.vt, n)
    S = IntegerMatrix.diagonal(res.diag, m, n)
    return U, S, V


def invariant_factors(M: IntegerMatrix) -> list[int]:
    """Nonzero Smith diagonal entries of ``M``, in divisibility order."""
    return _smith(M.to_lists(), M.rows, M.cols, want_u=False, want_v=False).diag


# ---------------------------------------------------------------------------
# Column echelon form: kernels, images, Hermite normal form


def _column_echelon(M: IntegerMatrix, track: bool = True):
    """Column-reduce ``M``.

    Returns ``(cols, transform, pivots)``: ``cols`` are the reduced columns,
    ``transform`` the unimodular column transform (as a list of columns),
    ``pivots`` the pivot row of each of the leading nonzero columns.  The
    columns after ``len(pivots)`` are zero.
    """
    m, n = M.shape
    cols = M.columns()
    vt = _identity_lists(n) if track else None
    pivots: list[int] = []
    k = 0
    for r in range(m):
        if k == n:
            break
        while True:
            nz = [c for c in range(k, n) if cols[c][r]]
            if not nz:
                break
            c0 = min(nz, key=lambda c: (abs(cols[c][r]), c))
            if len(nz) == 1:
                if c0 != k:
                    cols[c0], cols[k] = cols[k], cols[c0]
                    if vt is not None:
                        vt[c0], vt[k] = vt[k], vt[c0]
                pivots.append(r)
                k += 1
                break
            piv_col, piv = cols[c0], cols[c0][r]
            for c in nz:
                if c == c0:
                    continue
                q = cols[c][r] // piv
                col = cols[c]
                for i in range(r, m):
                    if piv_col[i]:
                        col[i] -= q * piv_col[i]
                if vt is not None:
                    vc, vp = vt[c], vt[c0]
                    for i in range(n):
                        if vp[i]:
                            vc[i] -= q * vp[i]
    return cols, vt, pivots


def kernel_basis(M: IntegerMatrix) -> IntegerMatrix:
    """Basis (as columns) of the integer kernel of ``M``; the lattice is saturated."""
    _, vt, pivots = _column_echelon(M)
    return IntegerMatrix.from_columns(vt[len(pivots):], M.cols)


def image_basis(M: IntegerMatrix) -> IntegerMatrix:
    """Basis (as columns) of the lattice spanned by the columns of ``M``."""
    cols, _, pivots = _column_echelon(M, track=False)
    return IntegerMatrix.from_columns(cols[:len(pivots)], M.rows)


def hermite_normal_form(M: IntegerMatrix) -> IntegerMatrix:
    """Canonical column Hermite form of the lattice spanned by the columns of ``M``.

    Two generator matrices span the same lattice iff their Hermite forms are
    equal.
    """
    cols, _, pivots = _column_echelon(M, track=False)
    cols = cols[:len(pivots)]
    for k, r in enumerate(pivots):
        if cols[k][r] < 0:
            cols[k] = [-x for x in cols[k]]
        piv = cols[k][r]
        for c in range(k):
            q = cols[c][r] // piv
            if q:
                cols[c] = [a - q * b for a, b in zip(cols[c], cols[k])]
    return IntegerMatrix.from_columns(cols, M.rows)


def same_lattice(A: IntegerMatrix, B: IntegerMatrix) -> bool:
    return hermite_normal_form(A) == hermite_normal_form(B)


def rank_mod_p(M: IntegerMatrix, p: int) -> int:
    """Rank of ``M`` reduced modulo the prime ``p``."""
    a = [[x % p for x in row] for row in M.to_lists()]
    m, n = M.shape
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, m) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        a[rank] = [(x * inv) % p for x in a[rank]]
        for i in range(m):
            if i != rank and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Lattice membership and subquotients


class LatticeCoordinates:
    """Coordinates with respect to a basis of a lattice (full column rank)."""

    def __init__(self, basis: IntegerMatrix):
        self.basis = basis
        n, k = basis.shape
        res = _smith(basis.to_lists(), n, k)
        if res.rank != k:
            raise PreconditionError("lattice basis columns are linearly dependent")
        self._u = res.u
        self._vt = res.vt
        self._diag = res.diag
        self._n = n
        self._k = k

    def coords(self, x: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Integer ``c`` with ``basis @ c == x``, or ``None`` if ``x`` is not in the lattice."""
        if len(x) != self._n:
            raise PreconditionError(f"vector of length {len(x)} for ambient dimension {self._n}")
        y = [sum(a * b for a, b in zip(row, x) if a and b) for row in self._u]
        if any(y[self._k:]):
            return None
        z = []
        for yi, s in zip(y, self._diag):
            if yi % s:
                return None
            z.append(yi // s)
        c = [0] * self._k
        for j, zj in enumerate(z):
            if zj:
                col = self._vt[j]
                for i in range(self._k):
                    if col[i]:
                        c[i] += zj * col[i]
        return tuple(c)


def solve_in_lattice(M: IntegerMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Integer solution of ``M @ x == b``, or ``None`` if none exists."""
    if len(b) != M.rows:
        raise PreconditionError(f"right-hand side has length {len(b)}, matrix has {M.rows} rows")
    m, n = M.shape
    res = _smith(M.to_lists(), m, n)
    y = [sum(a * v for a, v in zip(row, b) if a and v) for row in res.u]
    if any(y[res.rank:]):
        return None
    x = [0] * n
    for j in range(res.rank):
        if y[j] % res.diag[j]:
            return None
        z = y[j] // res.diag[j]
        if z:
            col = res.vt[j]
            for i in range(n):
                if col[i]:
                    x[i] += z * col[i]
    return tuple(x)


class Subquotient:
    """The group ``L / N`` for lattices ``N`` inside ``L`` inside ``Z^d``.

    ``numerator`` is a basis of L (columns), ``denominator`` any generating
    set of N.  After construction, :attr:`factors` lists the nontrivial
    invariant factors (0 for Z), :attr:`generators` holds one vector of L per
    factor, and :meth:`coords` writes any element of L in that cyclic basis.
    """

    def __init__(self, numerator: IntegerMatrix, denominator: IntegerMatrix):
        if numerator.rows != denominator.rows:
            raise PreconditionError("numerator and denominator live in different ambient spaces")
        self.ambient = numerator.rows
        self.numerator = numerator
        self._lat = LatticeCoordinates(numerator)
        k = numerator.cols
        rel = []
        for j in range(denominator.cols):
            c = self._lat.coords(denominator.column(j))
            if c is None:
                raise PreconditionError(
                    f"denominator generator {j} = {list(denominator.column(j))} is not in the numerator lattice"
                )
            rel.append(c)
        A = [[rel[j][i] for j in range(len(rel))] for i in range(k)]
        res = _smith(A, k, len(rel), want_u=True, want_v=False, want_inverses=True)
        full = res.diag + [0] * (k - res.rank)
        keep = [i for i, f in enumerate(full) if f != 1]
        self.factors: tuple[int, ...] = tuple(full[i] for i in keep)
        self._rows = [res.u[i] for i in keep]
        gens = []
        for i in keep:
            c = [row[i] for row in res.u_inv]
            gens.append(numerator.apply(c))
        self.generators = IntegerMatrix.from_columns(gens, self.ambient)

    @property
    def decomposition(self) -> CyclicDecomposition:
        return CyclicDecomposition(self.factors)

    def is_trivial(self) -> bool:
        return not self.factors

    def order(self) -> int:
        return self.decomposition.order()

    def contains(self, x: Sequence[int]) -> bool:
        return self._lat.coords(x) is not None

    def coords(self, x: Sequence[int]) -> tuple[int, ...]:
        """Class of ``x`` (an element of L) in the cyclic basis, reduced modulo each factor."""
        c = self._lat.coords(x)
        if c is None:
            raise PreconditionError("vector is not in the numerator lattice")
        out = []
        for row, f in zip(self._rows, self.factors):
            v = sum(a * b for a, b in zip(row, c) if a and b)
            out.append(v % f if f else v)
        return tuple(out)

    def generator(self, k: int) -> tuple[int, ...]:
        return self.generators.column(k)


def subquotient_decomposition(ker_basis: IntegerMatrix, img_basis: IntegerMatrix) -> CyclicDecomposition:
    """Invariant factors of (lattice of ``ker_basis``) / (lattice of ``img_basis``)."""
    return Subquotient(ker_basis, img_basis).decomposition


def zero_columns(rows: int) -> IntegerMatrix:
    return IntegerMatrix.zeros(rows, 0)


def cyclic_map_kernel(M: IntegerMatrix, source: Sequence[int], target: Sequence[int]) -> Subquotient:
    """Kernel of the homomorphism ``⊕ Z/source_k -> ⊕ Z/target_l`` given by ``M``.

    The result is a subquotient of ``Z^len(source)``: the lattice of integer
    vectors whose image vanishes modulo ``target``, over ``diag(source)``.
    """
    k, l = len(source), len(target)
    if M.shape != (l, k):
        raise PreconditionError(f"matrix shape {M.shape} does not match {l}x{k}")
    big = M.hstack(IntegerMatrix.diagonal(target, l, l).scale(-1)) if l else IntegerMatrix.zeros(0, k)
    K = kernel_basis(big)
    lat = [K.column(j)[:k] for j in range(K.cols)]
    L = image_basis(IntegerMatrix.from_columns(lat, k)) if lat else IntegerMatrix.zeros(k, 0)
    den = [[source[i] if r == i else 0 for r in range(k)] for i in range(k) if source[i]]
    return Subquotient(L, IntegerMatrix.from_columns(den, k) if den else IntegerMatrix.zeros(k, 0))


def cyclic_homology(incoming: IntegerMatrix, source: Sequence[int], middle: Sequence[int],
                    outgoing: IntegerMatrix, target: Sequence[int]) -> CyclicDecomposition:
    """Homology at the middle of ``⊕Z/source -> ⊕Z/middle -> ⊕Z/target``."""
    ker = cyclic_map_kernel(outgoing, middle, target)
    k = len(middle)
    gens = [incoming.column(j) for j in range(incoming.cols)]
    gens += [[middle[i] if r == i else 0 for r in range(k)] for i in range(k) if middle[i]]
    den = IntegerMatrix.from_columns(gens, k) if gens else IntegerMatrix.zeros(k, 0)
    return Subquotient(ker.numerator, den).decomposition


def lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        if v == 0:
            return 0
        out = out * v // gcd(out, v)
    return out
