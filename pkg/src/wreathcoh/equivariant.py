"""Complexes with an action of the cyclic group of prime order.

The generator ``t`` of ``C_p`` acts on each degree by a signed permutation
of the basis.  :func:`cyclic_power` builds the ``p``-fold tensor power with
the Koszul-signed cyclic shift, :func:`periodic_resolution` the rank-one
periodic resolution, and :func:`equivariant_hom_double_complex` combines
the two into the double complex whose total cohomology is the answer.

Conventions
-----------
* ``t(c_1⊗…⊗c_p) = (-1)^{|c_p|(|c_1|+…+|c_{p-1}|)} c_p⊗c_1⊗…⊗c_{p-1}``.
* ``W_i -> W_{i-1}`` is ``t-1`` for odd ``i`` and the norm for even ``i``.
* ``Hom(W_i, D^j)`` is identified with ``D^j`` by evaluating at the
  generator of ``W_i``; the horizontal map from column ``i`` to ``i+1``
  is then the action of ``t-1`` (``i`` even) or of the norm (``i`` odd).
* The total differential on the ``(i, j)`` block is ``d_h + (-1)^i d_v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence

from .complexes import (
    CochainComplex,
    Cocycle,
    build_cyclic_complex,
    cohomology,
    cohomology_subquotient,
    tensor_power,
)
from .exactlin import (
    CyclicDecomposition,
    IntegerMatrix,
    PreconditionError,
    Subquotient,
    kernel_basis,
)
from .graded import GradedAbelianGroup


class UnsupportedCaseError(PreconditionError):
    """The requested construction exists only with twisted coefficients."""


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def require_prime(p: int) -> None:
    if not _is_prime(p):
        raise PreconditionError(f"{p} is not a prime")


@dataclass(frozen=True)
class SignedPermutation:
    """``t(e_k) = signs[k] * e_{perm[k]}``."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        object.__setattr__(self, "signs", tuple(self.signs))
        n = len(self.perm)
        if len(self.signs) != n or sorted(self.perm) != list(range(n)):
            raise PreconditionError("not a signed permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise PreconditionError("signs must be +1 or -1")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def sign_module(cls) -> "SignedPermutation":
        return cls((0,), (-1,))

    @classmethod
    def regular(cls, p: int) -> "SignedPermutation":
        """The free rank-one module: ``t`` shifts the basis ``1, t, …, t^{p-1}``."""
        return cls(tuple((k + 1) % p for k in range(p)), (1,) * p)

    @property
    def size(self) -> int:
        return len(self.perm)

    def then(self, other: "SignedPermutation") -> "SignedPermutation":
        """Apply ``self`` first, then ``other``."""
        perm = tuple(other.perm[self.perm[k]] for k in range(self.size))
        signs = tuple(self.signs[k] * other.signs[self.perm[k]] for k in range(self.size))
        return SignedPermutation(perm, signs)

    def power(self, k: int) -> "SignedPermutation":
        out = SignedPermutation.identity(self.size)
        for _ in range(k):
            out = out.then(self)
        return out

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.size)) and all(s == 1 for s in self.signs)

    def matrix(self) -> IntegerMatrix:
        n = self.size
        rows = [[0] * n for _ in range(n)]
        for k in range(n):
            rows[self.perm[k]][k] = self.signs[k]
        return IntegerMatrix.from_rows(rows, n)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.size
        for k, x in enumerate(v):
            if x:
                out[self.perm[k]] += self.signs[k] * x
        return tuple(out)

    def group_ring_matrix(self, coeffs: Sequence[int]) -> IntegerMatrix:
        """Matrix of ``sum_k coeffs[k] t^k`` acting on this module."""
        n = self.size
        rows = [[0] * n for _ in range(n)]
        g = SignedPermutation.identity(n)
        for c in coeffs:
            if c:
                for k in range(n):
                    rows[g.perm[k]][k] += c * g.signs[k]
            g = g.then(self)
        return IntegerMatrix.from_rows(rows, n)


@dataclass(frozen=True)
class SignedPermutationAction:
    p: int
    per_degree: Mapping[int, SignedPermutation]

    def __post_init__(self):
        require_prime(self.p)
        for m, t in self.per_degree.items():
            if not t.power(self.p).is_identity():
                raise PreconditionError(f"t^{self.p} is not the identity in degree {m}")

    def at(self, m: int) -> SignedPermutation:
        t = self.per_degree.get(m)
        return t if t is not None else SignedPermutation.identity(0)


@dataclass(frozen=True)
class EquivariantComplex:
    underlying: CochainComplex
    p: int
    action: SignedPermutationAction
    factor_bases: Optional[Mapping[int, list]] = field(default=None, compare=False, repr=False)
    base: Optional[CochainComplex] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.action.p != self.p:
            raise PreconditionError("action and complex disagree about p")
        C = self.underlying
        for m in C.degrees():
            if self.action.at(m).size != C.rank(m):
                raise PreconditionError(f"action in degree {m} has the wrong size")
        for m in C.degrees():
            T0 = self.action.at(m).matrix()
            T1 = self.action.at(m + 1).matrix()
            d = C.differential(m)
            if T1 @ d != d @ T0:
                raise PreconditionError(f"action does not commute with d in degree {m}")

    def action_matrix(self, m: int, coeffs: Sequence[int]) -> IntegerMatrix:
        return self.action.at(m).group_ring_matrix(coeffs)

    def restrict(self, keep: Mapping[int, Sequence[int]]) -> "EquivariantComplex":
        """Subcomplex on the given basis indices (must be stable under d and t)."""
        C = self.underlying
        degs = list(C.degrees())
        idx = {m: list(keep.get(m, [])) for m in degs}
        pos = {m: {k: a for a, k in enumerate(idx[m])} for m in degs}
        diffs, perms = [], {}
        for m in degs:
            d = C.differential(m)
            nxt = idx.get(m + 1, [])
            for k in idx[m]:
                for r in range(d.rows):
                    if d[r, k] and r not in pos.get(m + 1, {}):
                        raise PreconditionError(f"subset is not closed under d in degree {m}")
            diffs.append(d.submatrix(nxt, idx[m]))
            t = self.action.at(m)
            try:
                perms[m] = SignedPermutation(tuple(pos[m][t.perm[k]] for k in idx[m]),
                                             tuple(t.signs[k] for k in idx[m]))
            except KeyError:
                raise PreconditionError(f"subset is not stable under t in degree {m}") from None
        sub = CochainComplex(C.lo, tuple(len(idx[m]) for m in degs), tuple(diffs),
                             tuple(tuple(C.basis_labels(m)[k] for k in idx[m]) for m in degs))
        fb = None
        if self.factor_bases is not None:
            fb = {m: [self.factor_bases[m][k] for k in idx[m]] for m in degs}
        return EquivariantComplex(sub, self.p, SignedPermutationAction(self.p, perms), fb, self.base)


def cyclic_power(C: CochainComplex, p: int) -> EquivariantComplex:
    """``C^{⊗p}`` with the generator acting by the Koszul-signed cyclic shift."""
    require_prime(p)
    D, bases = tensor_power(C, p)
    perms = {}
    for m, basis in bases.items():
        index = {b: k for k, b in enumerate(basis)}
        perm, signs = [], []
        for b in basis:
            last = b[-1][0]
            rest = sum(a for a, _ in b[:-1])
            perm.append(index[(b[-1],) + b[:-1]])
            signs.append(-1 if (last * rest) % 2 else 1)
        perms[m] = SignedPermutation(tuple(perm), tuple(signs))
    return EquivariantComplex(D, p, SignedPermutationAction(p, perms), bases, C)


def wreath_building_block(n: int, i: int, p: int) -> EquivariantComplex:
    """``D(n, i)``: the cyclic power of ``C(n, i)``."""
    return cyclic_power(build_cyclic_complex(n, i), p)


def t_minus_one(p: int) -> tuple[int, ...]:
    return (-1, 1) + (0,) * (p - 2)


def norm_element(p: int) -> tuple[int, ...]:
    return (1,) * p


@dataclass(frozen=True)
class Resolution:
    p: int
    length: int

    def __post_init__(self):
        require_prime(self.p)
        if self.length < 1:
            raise PreconditionError("resolution length must be at least 1")

    def boundary(self, i: int) -> tuple[int, ...]:
        """Group-ring element of ``W_i -> W_{i-1}`` (``1 <= i <= length``)."""
        if not 1 <= i <= self.length:
            raise PreconditionError(f"no boundary map in degree {i}")
        return t_minus_one(self.p) if i % 2 else norm_element(self.p)

    def horizontal(self, i: int) -> tuple[int, ...]:
        """Element acting on ``Hom(W_i, M) -> Hom(W_{i+1}, M)``."""
        return self.boundary(i + 1)

    def augmented_chain_complex(self) -> CochainComplex:
        """``W_length -> … -> W_0 -> Z`` written cohomologically (W_i sits in degree -i)."""
        reg = SignedPermutation.regular(self.p)
        maps = {}
        ranks = [self.p] * (self.length + 1) + [1]
        for i in range(self.length, 0, -1):
            maps[-i] = reg.group_ring_matrix(self.boundary(i))
        maps[0] = IntegerMatrix.from_rows([[1] * self.p])
        return CochainComplex.from_maps(-self.length, ranks, maps)

    def is_exact(self) -> bool:
        """Exactness of the augmented complex below the top degree."""
        H = cohomology(self.augmented_chain_complex(), (-self.length + 1, 1))
        return H.is_zero()


def periodic_resolution(p: int, length: int) -> Resolution:
    return Resolution(p, length)


@dataclass(frozen=True)
class DoubleComplex:
    """Bigraded blocks on columns ``0..last_column`` and rows ``row_lo..row_hi``.

    ``rank(i, j)``, ``horizontal(i, j): (i,j)->(i+1,j)`` and
    ``vertical(i, j): (i,j)->(i,j+1)`` describe a commuting double complex.
    """

    last_column: int
    row_lo: int
    row_hi: int
    row_ranks: Mapping[int, int]
    row_vertical: Mapping[int, IntegerMatrix]
    column_horizontal: Mapping[tuple[int, int], IntegerMatrix]
    p: Optional[int] = None
    source: Optional[EquivariantComplex] = field(default=None, compare=False, repr=False)
    resolution: Optional[Resolution] = field(default=None, compare=False, repr=False)

    def rank(self, i: int, j: int) -> int:
        if not (0 <= i <= self.last_column and self.row_lo <= j <= self.row_hi):
            return 0
        return self.row_ranks.get(j, 0)

    def horizontal(self, i: int, j: int) -> IntegerMatrix:
        if i + 1 > self.last_column or self.rank(i, j) == 0:
            return IntegerMatrix.zeros(self.rank(i + 1, j), self.rank(i, j))
        return self.column_horizontal[(i % 2, j)]

    def vertical(self, i: int, j: int) -> IntegerMatrix:
        if self.rank(i, j) == 0 or self.rank(i, j + 1) == 0:
            return IntegerMatrix.zeros(self.rank(i, j + 1), self.rank(i, j))
        return self.row_vertical[j]

    def check(self) -> None:
        for i in range(self.last_column + 1):
            for j in range(self.row_lo, self.row_hi + 1):
                if not (self.horizontal(i + 1, j) @ self.horizontal(i, j)).is_zero():
                    raise PreconditionError(f"d_h∘d_h != 0 at {(i, j)}")
                if not (self.vertical(i, j + 1) @ self.vertical(i, j)).is_zero():
                    raise PreconditionError(f"d_v∘d_v != 0 at {(i, j)}")
                if self.horizontal(i, j + 1) @ self.vertical(i, j) != self.vertical(i + 1, j) @ self.horizontal(i, j):
                    raise PreconditionError(f"squares do not commute at {(i, j)}")

    def total_blocks(self, m: int) -> list[tuple[int, int, int, int]]:
        """``(i, j, offset, rank)`` for the blocks of Tot^m, ordered by column."""
        out, off = [], 0
        for i in range(max(0, m - self.row_hi), min(self.last_column, m - self.row_lo) + 1):
            j = m - i
            r = self.rank(i, j)
            if r:
                out.append((i, j, off, r))
                off += r
        return out

    def total_rank(self, m: int) -> int:
        return sum(b[3] for b in self.total_blocks(m))

    def complete_through(self) -> int:
        """Largest m such that Tot^m contains every block of the untruncated complex."""
        return self.last_column + self.row_lo

    def cohomology_valid_through(self) -> int:
        return self.complete_through() - 1

    def total_differential(self, m: int) -> IntegerMatrix:
        src = self.total_blocks(m)
        tgt = self.total_blocks(m + 1)
        toff = {(i, j): off for i, j, off, _ in tgt}
        rows = [[0] * sum(b[3] for b in src) for _ in range(sum(b[3] for b in tgt))]
        for i, j, off, r in src:
            if (i + 1, j) in toff:
                H = self.horizontal(i, j)
                o2 = toff[(i + 1, j)]
                for a in range(H.rows):
                    row = rows[o2 + a]
                    for b in range(H.cols):
                        if H[a, b]:
                            row[off + b] += H[a, b]
            if (i, j + 1) in toff:
                V = self.vertical(i, j)
                o2 = toff[(i, j + 1)]
                sign = -1 if i % 2 else 1
                for a in range(V.rows):
                    row = rows[o2 + a]
                    for b in range(V.cols):
                        if V[a, b]:
                            row[off + b] += sign * V[a, b]
        return IntegerMatrix.from_rows(rows, sum(b[3] for b in src))

    def with_vertical_scaled(self, n: int) -> "DoubleComplex":
        return DoubleComplex(self.last_column, self.row_lo, self.row_hi, self.row_ranks,
                             {j: v.scale(n) for j, v in self.row_vertical.items()},
                             self.column_horizontal, self.p, None, self.resolution)

    def truncated(self, last_column: int) -> "DoubleComplex":
        if last_column > self.last_column:
            raise PreconditionError("cannot extend a double complex by truncating it")
        return DoubleComplex(last_column, self.row_lo, self.row_hi, self.row_ranks,
                             self.row_vertical, self.column_horizontal, self.p, self.source,
                             self.resolution)


def single_row_double_complex(M: SignedPermutation, p: int, row: int, last_column: int) -> DoubleComplex:
    """``Hom_{C_p}(W, M)`` for a module concentrated in one degree."""
    W = periodic_resolution(p, last_column)
    horiz = {(0, row): M.group_ring_matrix(t_minus_one(p)),
             (1, row): M.group_ring_matrix(norm_element(p))}
    return DoubleComplex(last_column, row, row, {row: M.size}, {}, horiz, p, None, W)


def equivariant_hom_double_complex(W: Resolution, D: EquivariantComplex) -> DoubleComplex:
    if W.p != D.p:
        raise PreconditionError(f"resolution is for C_{W.p} but the complex carries a C_{D.p} action")
    C = D.underlying
    if not C.ranks:
        return DoubleComplex(W.length, 0, 0, {}, {}, {}, W.p, D, W)
    ranks = {j: C.rank(j) for j in C.degrees()}
    vert = {j: C.differential(j) for j in C.degrees() if j < C.hi}
    horiz = {}
    for j in C.degrees():
        horiz[(0, j)] = D.action_matrix(j, t_minus_one(W.p))
        horiz[(1, j)] = D.action_matrix(j, norm_element(W.p))
    return DoubleComplex(W.length, C.lo, C.hi, ranks, vert, horiz, W.p, D, W)


def required_last_column(row_lo: int, safe_hi: int) -> int:
    """Truncation column that certifies cohomology through ``safe_hi``."""
    return max(1, safe_hi - row_lo + 2)


def totalize(D: DoubleComplex, safe_window: tuple[int, int]) -> CochainComplex:
    """Total complex on degrees ``row_lo .. last_column + row_hi``.

    Cohomology is exact in degrees up to ``last_column + row_lo - 1``; the
    caller must leave a margin so that ``safe_window`` sits inside it.
    """
    lo, hi = safe_window
    need = required_last_column(D.row_lo, hi)
    if D.last_column < need:
        raise PreconditionError(
            f"double complex truncated at column {D.last_column}; the window ending at {hi} "
            f"needs columns through {need} (margin of {need - hi} beyond the window)"
        )
    m_lo, m_hi = D.row_lo, D.last_column + D.row_hi
    ranks = [D.total_rank(m) for m in range(m_lo, m_hi + 1)]
    diffs = {m: D.total_differential(m) for m in range(m_lo, m_hi + 1)}
    labels = [tuple((i, j, k) for i, j, _, r in D.total_blocks(m) for k in range(r))
              for m in range(m_lo, m_hi + 1)]
    return CochainComplex.from_maps(m_lo, ranks, diffs, labels,
                                    valid=(None, D.cohomology_valid_through()), check=False)


def hom_double_complex(E: EquivariantComplex, last_column: int) -> DoubleComplex:
    return equivariant_hom_double_complex(periodic_resolution(E.p, last_column), E)


def wreath_class_cocycle(c: Cocycle, D: DoubleComplex) -> Cocycle:
    """The cocycle ``w -> ε(w)·c⊗…⊗c`` of the total complex, supported in column 0."""
    E = D.source
    if E is None or E.base is None or E.factor_bases is None:
        raise PreconditionError("double complex does not remember the complex it was built from")
    C, p = E.base, E.p
    if len(c.coefficients) != C.rank(c.degree):
        raise PreconditionError("cocycle does not match the base complex")
    if any(C.differential(c.degree).apply(c.coefficients)):
        raise PreconditionError("vector is not a cocycle of the base complex")
    if p == 2 and c.degree % 2:
        raise UnsupportedCaseError(
            "for p = 2 an odd-degree class only gives a cocycle with sign-twisted coefficients"
        )
    m = p * c.degree
    vec = []
    for b in E.factor_bases.get(m, []):
        v = 1
        for a, i in b:
            if a != c.degree:
                v = 0
                break
            v *= c.coefficients[i]
        vec.append(v)
    blocks = D.total_blocks(m)
    total = [0] * sum(b[3] for b in blocks)
    for i, j, off, r in blocks:
        if i == 0:
            total[off:off + r] = vec
    # closedness in the total complex
    if any(D.total_differential(m).apply(total)):
        raise UnsupportedCaseError("c⊗…⊗c is not invariant under the cyclic action")
    return Cocycle(m, tuple(total))


def cp_cohomology(p: int, M: SignedPermutation, i: int) -> CyclicDecomposition:
    """H^i(C_p; M) for a signed permutation module, via the periodic resolution."""
    require_prime(p)
    if i < 0:
        return CyclicDecomposition(())
    if not M.power(p).is_identity():
        raise PreconditionError(f"module is not a C_{p}-module")
    D = single_row_double_complex(M, p, 0, i + 2)
    T = totalize(D, (0, i))
    return CyclicDecomposition(cohomology_subquotient(T, i).factors)


def total_cohomology(E: EquivariantComplex, window: tuple[int, int]) -> GradedAbelianGroup:
    """H^*(Tot Hom_{C_p}(W, E)) on the window, with an automatically chosen truncation."""
    lo, hi = window
    C = E.underlying
    if not C.ranks:
        return GradedAbelianGroup()
    last = required_last_column(C.lo, hi)
    D = hom_double_complex(E, last)
    T = totalize(D, window)
    return cohomology(T, window)


def column_zero_projection(D: DoubleComplex, m: int) -> IntegerMatrix:
    """Matrix of Tot^m -> E^m (the column-0 component), a chain map to the underlying complex."""
    blocks = D.total_blocks(m)
    E = D.source
    rank = E.underlying.rank(m) if E is not None else D.rank(0, m)
    rows = [[0] * sum(b[3] for b in blocks) for _ in range(rank)]
    for i, j, off, r in blocks:
        if i == 0:
            for k in range(r):
                rows[k][off + k] = 1
    return IntegerMatrix.from_rows(rows, sum(b[3] for b in blocks))


def orbit_decomposition(E: EquivariantComplex, key) -> dict:
    """Split a cyclic power into sub-complexes by the C_p-orbit of the summand tuple.

    ``key`` maps a base basis label to the summand it belongs to.  Returns
    ``{orbit representative: EquivariantComplex}``; the representative is the
    lexicographically least rotation of the tuple of summand keys.
    """
    C = E.underlying
    groups: dict = {}
    for m in C.degrees():
        for k, lab in enumerate(C.basis_labels(m)):
            t = tuple(key(x) for x in lab)
            rep = min(t[s:] + t[:s] for s in range(len(t)))
            groups.setdefault(rep, {}).setdefault(m, []).append(k)
    return {rep: E.restrict(keep) for rep, keep in sorted(groups.items(), key=lambda kv: repr(kv[0]))}
